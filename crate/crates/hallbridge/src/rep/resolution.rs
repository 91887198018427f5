//! Indecomposable projectives (path bases), projective covers, and minimal
//! projective resolutions  0 -> Ω_M -> P_M -> M -> 0.
//!
//! Over the path algebra of an acyclic quiver every module has such a
//! two-term resolution with Ω_M projective; the constructor verifies both
//! facts and fails loudly if either is violated.

use crate::linalg::FpMat;
use crate::quiver::dims_to_i64;
use crate::{Error, Result};

use super::{kernel_subrep, Engine, IsoKey, Rep, RepMor};

/// A minimal projective resolution of a module.
#[derive(Debug, Clone)]
pub struct Resolution {
    /// Multiplicity of each indecomposable projective in the cover.
    pub p_mult: Vec<u32>,
    /// The cover itself.
    pub p_rep: Rep,
    /// The surjection onto the module.
    pub pi: RepMor,
    /// The kernel of the surjection, as a representation.
    pub omega: Rep,
    pub omega_key: IsoKey,
    /// Multiplicities of the kernel as a projective.
    pub omega_mult: Vec<u32>,
    /// The inclusion of the kernel into the cover.
    pub incl: RepMor,
}

impl Resolution {
    pub fn p_dims_i64(&self) -> Vec<i64> {
        dims_to_i64(&self.p_rep.dims)
    }

    pub fn omega_dims_i64(&self) -> Vec<i64> {
        dims_to_i64(&self.omega.dims)
    }
}

impl Engine {
    /// The indecomposable projective at a vertex, with the path basis:
    /// coordinate r at vertex j is the r-th path from `vertex` to j.
    pub fn projective_rep(&self, vertex: usize) -> Rep {
        let n = self.num_vertices();
        let dims: Vec<u32> = (0..n)
            .map(|j| self.paths_by_pair[vertex][j].len() as u32)
            .collect();
        let mats = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let src = &self.paths_by_pair[vertex][a.from];
                let dst = &self.paths_by_pair[vertex][a.to];
                let mut m = FpMat::zeros(dst.len(), src.len());
                for (c, p) in src.iter().enumerate() {
                    let mut longer = p.clone();
                    longer.arrows.push(k);
                    longer.end = a.to;
                    let r = dst
                        .iter()
                        .position(|cand| *cand == longer)
                        .expect("extended path must be in the path list");
                    m.set(r, c, 1);
                }
                m
            })
            .collect();
        Rep { dims, mats }
    }

    /// Direct sum of indecomposable projectives with the given
    /// multiplicities.
    pub fn projective_of_mult(&self, mult: &[u32]) -> Rep {
        let mut acc = Rep::zero(&self.quiver);
        for (i, &t) in mult.iter().enumerate() {
            for _ in 0..t {
                acc = acc.direct_sum(&self.projective_rep(i));
            }
        }
        acc
    }

    /// Dimension vector of the projective with the given multiplicities.
    pub fn projective_dims(&self, mult: &[u32]) -> Vec<u32> {
        let n = self.num_vertices();
        let mut d = vec![0u32; n];
        for (i, &t) in mult.iter().enumerate() {
            for j in 0..n {
                d[j] += t * self.paths_by_pair[i][j].len() as u32;
            }
        }
        d
    }

    pub fn projective_dims_i64(&self, mult: &[u32]) -> Vec<i64> {
        dims_to_i64(&self.projective_dims(mult))
    }

    /// Canonical key of the projective with the given multiplicities.
    pub fn projective_key(&self, mult: &[u32]) -> Result<IsoKey> {
        self.canonical_key(&self.projective_of_mult(mult))
    }

    /// Canonical key of a single indecomposable projective.
    pub fn indec_projective_key(&self, vertex: usize) -> Result<IsoKey> {
        self.canonical_key(&self.projective_rep(vertex))
    }

    /// dim Hom(P, N) for P the projective with the given multiplicities,
    /// using additivity in the first argument (avoids canonicalizing large
    /// direct sums).
    pub fn hom_dim_from_projective(&self, mult: &[u32], n: &IsoKey) -> Result<usize> {
        let mut total = 0usize;
        for (i, &t) in mult.iter().enumerate() {
            if t > 0 {
                total += t as usize * self.hom_dim(&self.indec_projective_key(i)?, n)?;
            }
        }
        Ok(total)
    }

    /// Is this class a projective module?  (Its projective cover has the
    /// same dimension exactly when the covering map is an isomorphism.)
    pub fn is_projective(&self, key: &IsoKey) -> Result<bool> {
        let top = self.rep_of(key).top_dims(&self.quiver, self.q);
        Ok(self.projective_dims(&top) == self.dim_of(key))
    }

    /// All projective multiplicity vectors whose total dimension vector is
    /// componentwise ≤ `max`, in lexicographic order.
    pub fn projective_mults_up_to(&self, max: &[u32]) -> Vec<Vec<u32>> {
        // each indecomposable projective has dimension ≥ 1 at its own
        // vertex, so multiplicities are bounded by max
        crate::quiver::dim_vectors_up_to(max)
            .into_iter()
            .filter(|t| {
                self.projective_dims(t)
                    .iter()
                    .zip(max)
                    .all(|(&d, &m)| d <= m)
            })
            .collect()
    }

    /// Minimal projective resolution of a class.
    pub fn resolution(&self, key: &IsoKey) -> Result<Resolution> {
        if let Some(hit) = self.resol.read().unwrap().get(key) {
            return Ok(hit.clone());
        }
        let m = self.rep_of(key);
        let top = m.top_dims(&self.quiver, self.q);
        let p_rep = self.projective_of_mult(&top);

        // lift a basis of the top: at each vertex the standard vectors at
        // the non-pivot columns of the radical span generate the module
        let mut lifts: Vec<Vec<Vec<u8>>> = Vec::new(); // per vertex, list of lift vectors
        for i in 0..self.num_vertices() {
            let d = m.dims[i] as usize;
            let mut rad_rows = Vec::new();
            for (k, a) in self.quiver.arrows.iter().enumerate() {
                if a.to == i {
                    let mat = &m.mats[k];
                    for c in 0..mat.cols {
                        rad_rows.push((0..mat.rows).map(|r| mat.entry(r, c)).collect::<Vec<u8>>());
                    }
                }
            }
            let pivots = if rad_rows.is_empty() {
                Vec::new()
            } else {
                FpMat::from_rows(rad_rows, d).rref(self.q).1
            };
            let mut vs = Vec::new();
            for j in 0..d {
                if !pivots.contains(&j) {
                    let mut v = vec![0u8; d];
                    v[j] = 1;
                    vs.push(v);
                }
            }
            debug_assert_eq!(vs.len(), top[i] as usize);
            lifts.push(vs);
        }

        // the covering map: the copy of P_i generated by lift vector w sends
        // the basis path r: i -> j to (action of r on M)(w) at vertex j
        let mut pi_mats: Vec<FpMat> = (0..self.num_vertices())
            .map(|j| FpMat::zeros(m.dims[j] as usize, p_rep.dims[j] as usize))
            .collect();
        let mut col_offset = vec![0usize; self.num_vertices()];
        for i in 0..self.num_vertices() {
            for w in &lifts[i] {
                for j in 0..self.num_vertices() {
                    for (r, path) in self.paths_by_pair[i][j].iter().enumerate() {
                        let img = self.path_action(&m, path).apply(w, self.q);
                        for (row, &val) in img.iter().enumerate() {
                            pi_mats[j].set(row, col_offset[j] + r, val);
                        }
                    }
                    col_offset[j] += self.paths_by_pair[i][j].len();
                }
            }
        }
        let pi = RepMor { mats: pi_mats };
        if !pi.is_valid(&self.quiver, &p_rep, &m, self.q) {
            return Err(Error::Internal("covering map is not a morphism".into()));
        }
        for (j, mat) in pi.mats.iter().enumerate() {
            if mat.rank(self.q) != m.dims[j] as usize {
                return Err(Error::Internal(format!(
                    "covering map is not surjective at vertex {j}"
                )));
            }
        }

        let (omega, bases) = kernel_subrep(&self.quiver, &p_rep, &pi, self.q);
        let incl = RepMor {
            mats: bases.iter().map(|b| b.transpose()).collect(),
        };
        if !incl.is_valid(&self.quiver, &omega, &p_rep, self.q) {
            return Err(Error::Internal("kernel inclusion is not a morphism".into()));
        }
        let omega_key = self.canonical_key(&omega)?;
        let omega_mult = omega.top_dims(&self.quiver, self.q);
        // the cover of Ω surjects onto it, so dimension equality already
        // forces the cover to be an isomorphism, i.e. Ω projective
        if self.projective_dims(&omega_mult) != omega.dims {
            return Err(Error::Internal(
                "resolution kernel is not projective — hereditarity violated".into(),
            ));
        }
        let res = Resolution {
            p_mult: top,
            p_rep,
            pi,
            omega,
            omega_key,
            omega_mult,
            incl,
        };
        self.resol.write().unwrap().insert(key.clone(), res.clone());
        Ok(res)
    }
}
