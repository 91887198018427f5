//! Finite-dimensional quiver representations over F_p and the engine that
//! counts with them.
//!
//! A representation assigns a vector space F_p^{d_i} to each vertex and a
//! matrix to each arrow.  Everything downstream (Hall numbers, automorphism
//! counts, projective resolutions, complexes) is built from the exact
//! enumeration primitives in this module.

mod canon;
mod counts;
mod decomp;
mod engine;
mod resolution;
mod store;

pub use engine::{Counters, Engine};
pub use resolution::Resolution;
pub use store::HallStore;

use crate::linalg::{coordinates_in_rref, FpMat};
use crate::quiver::Quiver;

/// A concrete representation: `dims[i]` is the dimension at vertex `i`,
/// `mats[k]` is the matrix of arrow `k` (shape `dims[to] x dims[from]`,
/// acting on column vectors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<u32>,
    pub mats: Vec<FpMat>,
}

/// Canonical identifier of an isomorphism class: the lexicographically
/// smallest byte encoding in the GL-orbit of a representation.  Keys are
/// self-describing relative to a fixed quiver and decode back to a
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoKey(pub Vec<u8>);

/// A morphism of representations: one matrix per vertex, commuting with the
/// arrow actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMor {
    pub mats: Vec<FpMat>,
}

impl Rep {
    pub fn zero(quiver: &Quiver) -> Rep {
        let n = quiver.num_vertices();
        Rep {
            dims: vec![0; n],
            mats: quiver.arrows.iter().map(|_| FpMat::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(quiver: &Quiver, vertex: usize) -> Rep {
        let n = quiver.num_vertices();
        let mut dims = vec![0; n];
        dims[vertex] = 1;
        let mats = quiver
            .arrows
            .iter()
            .map(|a| FpMat::zeros(dims[a.to] as usize, dims[a.from] as usize))
            .collect();
        Rep { dims, mats }
    }

    pub fn is_zero_dim(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn total_dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    /// Validate matrix shapes against the quiver.
    pub fn check_shapes(&self, quiver: &Quiver) -> bool {
        self.dims.len() == quiver.num_vertices()
            && self.mats.len() == quiver.arrows.len()
            && quiver.arrows.iter().zip(&self.mats).all(|(a, m)| {
                m.rows == self.dims[a.to] as usize && m.cols == self.dims[a.from] as usize
            })
    }

    /// Raw byte encoding: dimensions, then each arrow matrix row-major.
    pub fn encode(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.dims.iter().map(|&d| d as u8).collect();
        for m in &self.mats {
            out.extend_from_slice(m.data());
        }
        out
    }

    /// Inverse of `encode` for a known quiver.
    pub fn decode(quiver: &Quiver, bytes: &[u8]) -> Rep {
        let n = quiver.num_vertices();
        let dims: Vec<u32> = bytes[..n].iter().map(|&b| b as u32).collect();
        let mut pos = n;
        let mats = quiver
            .arrows
            .iter()
            .map(|a| {
                let rows = dims[a.to] as usize;
                let cols = dims[a.from] as usize;
                let mut m = FpMat::zeros(rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        m.set(i, j, bytes[pos]);
                        pos += 1;
                    }
                }
                m
            })
            .collect();
        Rep { dims, mats }
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(&a, &b)| a + b)
            .collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Rep { dims, mats }
    }

    /// Dimensions of the top (head) `M / rad M`: at each vertex, quotient by
    /// the span of all incoming arrow images.
    pub fn top_dims(&self, quiver: &Quiver, p: u32) -> Vec<u32> {
        (0..quiver.num_vertices())
            .map(|i| {
                let d = self.dims[i] as usize;
                let mut cols = Vec::new();
                for (k, a) in quiver.arrows.iter().enumerate() {
                    if a.to == i {
                        let m = &self.mats[k];
                        for c in 0..m.cols {
                            cols.push((0..m.rows).map(|r| m.entry(r, c)).collect::<Vec<u8>>());
                        }
                    }
                }
                let rad_rank = if cols.is_empty() {
                    0
                } else {
                    FpMat::from_rows(cols, d).rank(p)
                };
                (d - rad_rank) as u32
            })
            .collect()
    }
}

impl RepMor {
    pub fn zero(m: &Rep, n: &Rep) -> RepMor {
        RepMor {
            mats: m
                .dims
                .iter()
                .zip(&n.dims)
                .map(|(&dm, &dn)| FpMat::zeros(dn as usize, dm as usize))
                .collect(),
        }
    }

    /// Does this morphism have invertible components (i.e. is it an
    /// isomorphism)?
    pub fn is_iso(&self, p: u32) -> bool {
        self.mats.iter().all(|m| m.is_invertible(p))
    }

    /// Verify the intertwining condition `f_to . M_a = N_a . f_from`.
    pub fn is_valid(&self, quiver: &Quiver, m: &Rep, n: &Rep, p: u32) -> bool {
        quiver.arrows.iter().enumerate().all(|(k, a)| {
            self.mats[a.to].mul(&m.mats[k], p) == n.mats[k].mul(&self.mats[a.from], p)
        })
    }

    pub fn compose(&self, inner: &RepMor, p: u32) -> RepMor {
        RepMor {
            mats: self
                .mats
                .iter()
                .zip(&inner.mats)
                .map(|(f, g)| f.mul(g, p))
                .collect(),
        }
    }
}

/// Basis of the morphism space Hom(M, N): solve the intertwining equations
/// for all vertex matrices simultaneously.
pub fn hom_basis(quiver: &Quiver, m: &Rep, n: &Rep, p: u32) -> Vec<RepMor> {
    let nv = quiver.num_vertices();
    // variable layout: for vertex i, entries of f_i (shape n.dims[i] x m.dims[i])
    let mut offsets = vec![0usize; nv + 1];
    for i in 0..nv {
        offsets[i + 1] = offsets[i] + (n.dims[i] * m.dims[i]) as usize;
    }
    let nvars = offsets[nv];
    let mut rows = Vec::new();
    for (k, a) in quiver.arrows.iter().enumerate() {
        let (s, t) = (a.from, a.to);
        let ma = &m.mats[k]; // m.dims[t] x m.dims[s]
        let na = &n.mats[k]; // n.dims[t] x n.dims[s]
                             // equation (r, c) over r < n.dims[t], c < m.dims[s]:
                             //   sum_j f_t[r, j] ma[j, c] - sum_j na[r, j] f_s[j, c] = 0
        for r in 0..n.dims[t] as usize {
            for c in 0..m.dims[s] as usize {
                let mut row = vec![0u8; nvars];
                for j in 0..m.dims[t] as usize {
                    let var = offsets[t] + r * m.dims[t] as usize + j;
                    row[var] = (row[var] as u32 + ma.entry(j, c) as u32) as u8 % p as u8;
                }
                for j in 0..n.dims[s] as usize {
                    let var = offsets[s] + j * m.dims[s] as usize + c;
                    let cur = row[var] as u32;
                    row[var] = ((cur + p - na.entry(r, j) as u32 % p) % p) as u8;
                }
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        FpMat::identity(nvars)
    } else {
        FpMat::from_rows(rows, nvars).kernel_basis(p)
    };
    (0..kernel.rows)
        .map(|b| {
            let x = kernel.row(b);
            let mats = (0..nv)
                .map(|i| {
                    let (rs, cs) = (n.dims[i] as usize, m.dims[i] as usize);
                    let mut f = FpMat::zeros(rs, cs);
                    for r in 0..rs {
                        for c in 0..cs {
                            f.set(r, c, x[offsets[i] + r * cs + c]);
                        }
                    }
                    f
                })
                .collect();
            RepMor { mats }
        })
        .collect()
}

/// Given a tuple of subspaces (one rref basis per vertex), check that they
/// form a subrepresentation of `l` and if so return `(sub, quotient)` with
/// the induced actions.
pub fn sub_quot(quiver: &Quiver, l: &Rep, bases: &[FpMat], p: u32) -> Option<(Rep, Rep)> {
    let nv = quiver.num_vertices();
    let sub_dims: Vec<u32> = bases.iter().map(|b| b.rows as u32).collect();
    // change of basis per vertex: columns = sub basis vectors, then the
    // standard vectors at non-pivot coordinates
    let mut change = Vec::with_capacity(nv);
    let mut change_inv = Vec::with_capacity(nv);
    for i in 0..nv {
        let d = l.dims[i] as usize;
        let b = &bases[i];
        let (_, pivots) = b.rref(p);
        debug_assert_eq!(pivots.len(), b.rows, "basis rows must be independent");
        let mut c = FpMat::zeros(d, d);
        for (col, r) in (0..b.rows).enumerate() {
            for row in 0..d {
                c.set(row, col, b.entry(r, row));
            }
        }
        let mut col = b.rows;
        for j in 0..d {
            if !pivots.contains(&j) {
                c.set(j, col, 1);
                col += 1;
            }
        }
        let inv = c.inverse(p)?;
        change.push(c);
        change_inv.push(inv);
    }
    let mut sub_mats = Vec::new();
    let mut quot_mats = Vec::new();
    for (k, a) in quiver.arrows.iter().enumerate() {
        let transformed = change_inv[a.to].mul(&l.mats[k], p).mul(&change[a.from], p);
        let ks = sub_dims[a.from] as usize;
        let kt = sub_dims[a.to] as usize;
        let (dt, ds) = (l.dims[a.to] as usize, l.dims[a.from] as usize);
        // invariance: the block below the sub columns must vanish
        for r in kt..dt {
            for c in 0..ks {
                if transformed.entry(r, c) != 0 {
                    return None;
                }
            }
        }
        let mut sm = FpMat::zeros(kt, ks);
        for r in 0..kt {
            for c in 0..ks {
                sm.set(r, c, transformed.entry(r, c));
            }
        }
        let mut qm = FpMat::zeros(dt - kt, ds - ks);
        for r in kt..dt {
            for c in ks..ds {
                qm.set(r - kt, c - ks, transformed.entry(r, c));
            }
        }
        sub_mats.push(sm);
        quot_mats.push(qm);
    }
    let sub = Rep {
        dims: sub_dims.clone(),
        mats: sub_mats,
    };
    let quot = Rep {
        dims: l.dims.iter().zip(&sub_dims).map(|(&d, &k)| d - k).collect(),
        mats: quot_mats,
    };
    Some((sub, quot))
}

/// The kernel of a morphism `f: M -> N` as a subrepresentation of `M`,
/// returned as (kernel rep, inclusion bases per vertex).
pub fn kernel_subrep(quiver: &Quiver, m: &Rep, f: &RepMor, p: u32) -> (Rep, Vec<FpMat>) {
    let nv = quiver.num_vertices();
    let bases: Vec<FpMat> = (0..nv)
        .map(|i| {
            let (r, _) = f.mats[i].kernel_basis(p).rref(p);
            r
        })
        .collect();
    let (sub, _) =
        sub_quot(quiver, m, &bases, p).expect("kernel of a morphism is always a subrepresentation");
    (sub, bases)
}

/// Express the image of each sub-basis vector of `src` under `mat` in the
/// coordinates of `dst_basis` (rref rows).  None if the image leaves the
/// span.
pub fn restrict_map(mat: &FpMat, src_basis: &FpMat, dst_basis: &FpMat, p: u32) -> Option<FpMat> {
    let mut cols = Vec::new();
    for r in 0..src_basis.rows {
        let img = mat.apply(src_basis.row(r), p);
        cols.push(coordinates_in_rref(dst_basis, &img, p)?);
    }
    let mut out = FpMat::zeros(dst_basis.rows, src_basis.rows);
    for (c, col) in cols.iter().enumerate() {
        for r in 0..dst_basis.rows {
            out.set(r, c, col[r]);
        }
    }
    Some(out)
}


#[cfg(test)]
mod tests {
    use super::testutil::*;
    use super::*;

    #[test]
    fn encode_decode_round_trip() {
        let q = a2();
        let r = a2_big(&q);
        let bytes = r.encode();
        assert_eq!(Rep::decode(&q, &bytes), r);
        let s = Rep::simple(&q, 0);
        assert_eq!(Rep::decode(&q, &s.encode()), s);
    }

    #[test]
    fn hom_dims_of_small_reps() {
        let q = a2();
        let p = 3;
        let s1 = Rep::simple(&q, 0);
        let s2 = Rep::simple(&q, 1);
        let p1 = a2_big(&q);
        assert_eq!(hom_basis(&q, &s1, &s1, p).len(), 1);
        assert_eq!(hom_basis(&q, &s1, &s2, p).len(), 0);
        assert_eq!(hom_basis(&q, &s2, &s1, p).len(), 0);
        // the projective cover maps onto its top but not backwards
        assert_eq!(hom_basis(&q, &p1, &s1, p).len(), 1);
        assert_eq!(hom_basis(&q, &s1, &p1, p).len(), 0);
        assert_eq!(hom_basis(&q, &s2, &p1, p).len(), 1);
        assert_eq!(hom_basis(&q, &p1, &p1, p).len(), 1);
    }

    #[test]
    fn hom_basis_members_are_valid() {
        let q = a3();
        let p = 2;
        let mut m = Rep::simple(&q, 0).direct_sum(&Rep::simple(&q, 1));
        m.mats[0].set(0, 0, 1);
        let n = Rep::simple(&q, 1).direct_sum(&Rep::simple(&q, 2));
        let mut n = n;
        n.mats[1].set(0, 0, 1);
        for f in hom_basis(&q, &m, &n, p) {
            assert!(f.is_valid(&q, &m, &n, p));
        }
    }

    #[test]
    fn sub_quot_detects_invariance() {
        let q = a2();
        let p = 3;
        let l = a2_big(&q);
        // the vertex-2 line is invariant (socle)
        let socle = vec![FpMat::zeros(0, 1), FpMat::identity(1)];
        let (sub, quot) = sub_quot(&q, &l, &socle, p).unwrap();
        assert_eq!(sub.dims, vec![0, 1]);
        assert_eq!(quot.dims, vec![1, 0]);
        // the vertex-1 line maps out of itself, so it is not invariant
        let top = vec![FpMat::identity(1), FpMat::zeros(0, 1)];
        assert!(sub_quot(&q, &l, &top, p).is_none());
    }

    #[test]
    fn top_dims_examples() {
        let q = a2();
        let p1 = a2_big(&q);
        assert_eq!(p1.top_dims(&q, 3), vec![1, 0]);
        let s = Rep::simple(&q, 0).direct_sum(&Rep::simple(&q, 1));
        assert_eq!(s.top_dims(&q, 3), vec![1, 1]);
    }

    #[test]
    fn kernel_subrep_of_projective_cover() {
        let q = a2();
        let p = 3;
        let p1 = a2_big(&q);
        let s1 = Rep::simple(&q, 0);
        let f = &hom_basis(&q, &p1, &s1, p)[0];
        let (ker, _) = kernel_subrep(&q, &p1, f, p);
        assert_eq!(ker.dims, vec![0, 1]);
    }
}
