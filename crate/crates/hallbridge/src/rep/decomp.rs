//! Direct-sum structure: peeling indecomposable summands off a concrete
//! representation, and the automorphism-order formula built on it.
//!
//! The orbit machinery in `canon` classifies a whole dimension vector at
//! once, which is only affordable while the base-change group product stays
//! small.  For larger representations we instead split off indecomposable
//! summands one at a time: if X is indecomposable, End(X) is local, so X is
//! a direct summand of L exactly when some composite g∘f of hom-space basis
//! elements f: X → L, g: L → X is invertible (were every composite in the
//! radical, bilinearity would put the identity there too).  Each successful
//! split peels one copy of X and strictly shrinks L, so the decomposition is
//! reached after finitely many cheap linear solves, and Krull–Schmidt makes
//! the resulting multiset of summands independent of the peel order.

use std::collections::BTreeMap;

use crate::quiver::dim_vectors_up_to;
use crate::{Error, Result};

use super::{hom_basis, kernel_subrep, Engine, IsoKey, Rep, RepMor};

impl Engine {
    /// Can `classes_of_dim` classify this dimension vector by exhaustive
    /// orbit enumeration?  Mirrors the budgets that enumeration checks, so
    /// callers can choose a strategy without triggering an error.
    pub(crate) fn class_enum_feasible(&self, dims: &[u32]) -> bool {
        let q = self.q as u128;
        let mut raw: u128 = 1;
        for a in &self.quiver.arrows {
            raw = raw.saturating_mul(q.saturating_pow(dims[a.to] * dims[a.from]));
        }
        if raw > self.enum_budget as u128 {
            return false;
        }
        let mut gl_total: u128 = 1;
        for &d in dims {
            // materializing GL(d) scans q^(d^2) matrices
            if q.saturating_pow(d * d) > (1u128 << 20) {
                return false;
            }
            let mut order: u128 = 1;
            for k in 0..d {
                order = order.saturating_mul(q.pow(d) - q.pow(k));
            }
            gl_total = gl_total.saturating_mul(order);
        }
        gl_total <= self.orbit_budget as u128
    }

    /// The indecomposable classes with exactly this dimension vector.  A
    /// class is decomposable exactly when it is the direct sum of two
    /// nonzero classes of complementary dimensions.
    pub fn indecs_of_dim(&self, dims: &[u32]) -> Result<Vec<IsoKey>> {
        if let Some(hit) = self.indec.read().unwrap().get(dims) {
            return Ok(hit.clone());
        }
        let all = self.classes_of_dim(dims)?;
        let mut out = Vec::new();
        'cls: for k in &all {
            if self.is_zero_key(k) {
                continue;
            }
            for d1 in dim_vectors_up_to(dims) {
                let d2: Vec<u32> = dims.iter().zip(&d1).map(|(&a, &b)| a - b).collect();
                if d1.iter().all(|&x| x == 0) || d2.iter().all(|&x| x == 0) {
                    continue;
                }
                for a in self.classes_of_dim(&d1)? {
                    for b in self.classes_of_dim(&d2)? {
                        if self.sum_key(&[&a, &b])? == *k {
                            continue 'cls;
                        }
                    }
                }
            }
            out.push(k.clone());
        }
        self.indec
            .write()
            .unwrap()
            .insert(dims.to_vec(), out.clone());
        Ok(out)
    }

    /// If the indecomposable class `x` is a direct summand of `rep`, split
    /// one copy off and return the complementary summand.
    fn split_off_summand(&self, rep: &Rep, x: &IsoKey) -> Result<Option<Rep>> {
        let xrep = self.rep_of(x);
        let into = hom_basis(&self.quiver, &xrep, rep, self.q);
        if into.is_empty() {
            return Ok(None);
        }
        let back = hom_basis(&self.quiver, rep, &xrep, self.q);
        for f in &into {
            for g in &back {
                let u = g.compose(f, self.q);
                if !u.is_iso(self.q) {
                    continue;
                }
                // π = u⁻¹∘g retracts rep onto the copy of x cut out by f;
                // its kernel is a complementary subrepresentation.
                let uinv = RepMor {
                    mats: u.mats.iter().map(|m| m.inverse(self.q).unwrap()).collect(),
                };
                let pi = uinv.compose(g, self.q);
                let (rest, _) = kernel_subrep(&self.quiver, rep, &pi, self.q);
                return Ok(Some(rest));
            }
        }
        Ok(None)
    }

    /// Krull–Schmidt decomposition of a concrete representation: the indec
    /// summand classes with multiplicities, sorted by key.  Fails (honestly)
    /// if some summand is too large for the classification budgets.
    pub fn decompose_rep(&self, rep: &Rep) -> Result<Vec<(IsoKey, u32)>> {
        let mut parts: BTreeMap<IsoKey, u32> = BTreeMap::new();
        let mut current = rep.clone();
        'peel: while !current.is_zero_dim() {
            let mut dims: Vec<Vec<u32>> = dim_vectors_up_to(&current.dims)
                .into_iter()
                .filter(|d| d.iter().any(|&x| x > 0) && self.class_enum_feasible(d))
                .collect();
            // small candidates first: summands are usually tiny
            dims.sort_by_key(|d| (d.iter().sum::<u32>(), d.clone()));
            for d in dims {
                for x in self.indecs_of_dim(&d)? {
                    while let Some(rest) = self.split_off_summand(&current, &x)? {
                        *parts.entry(x.clone()).or_insert(0) += 1;
                        current = rest;
                    }
                    if current.is_zero_dim() {
                        break 'peel;
                    }
                }
            }
            if !current.is_zero_dim() {
                return Err(Error::Resource(format!(
                    "direct-sum decomposition stuck: no summand of enumerable size \
                     in a representation of dimension {:?}",
                    current.dims
                )));
            }
        }
        Ok(parts.into_iter().collect())
    }

    /// The canonical representative of the class of `rep` assembled from its
    /// decomposition: summands in key order, repeated by multiplicity.
    pub(crate) fn assembled_from_parts(&self, parts: &[(IsoKey, u32)]) -> Rep {
        let mut acc = Rep::zero(&self.quiver);
        for (k, mult) in parts {
            let part = self.rep_of(k);
            for _ in 0..*mult {
                acc = acc.direct_sum(&part);
            }
        }
        acc
    }

    /// (residue degree, radical dimension) of the local algebra End(X) for
    /// an indecomposable class: End(X)/rad is a finite division ring, hence
    /// the field F_{q^d}, and the radical is exactly the non-invertible
    /// elements.
    fn local_endo_shape(&self, x: &IsoKey) -> Result<(usize, usize)> {
        let rep = self.rep_of(x);
        let basis = hom_basis(&self.quiver, &rep, &rep, self.q);
        let n = basis.len();
        let total = self.guard_enum(
            (self.q as u128)
                .checked_pow(n as u32)
                .ok_or_else(|| Error::Resource("endomorphism scan overflow".into()))?,
            "local endomorphism scan",
        )?;
        let mut singular_rows = Vec::new();
        let mut coeffs = vec![0u8; n];
        for _ in 0..total {
            let mut f = RepMor::zero(&rep, &rep);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    for (fm, bm) in f.mats.iter_mut().zip(&b.mats) {
                        *fm = fm.add(&bm.scale(*c, self.q), self.q);
                    }
                }
            }
            if !f.is_iso(self.q) {
                singular_rows.push(coeffs.clone());
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if (*c as u32) < self.q {
                    break;
                }
                *c = 0;
            }
        }
        let r = if singular_rows.is_empty() {
            0
        } else {
            crate::linalg::FpMat::from_rows(singular_rows.clone(), n).rank(self.q)
        };
        // locality check: the non-units of a local algebra are a subspace
        if singular_rows.len() as u128 != (self.q as u128).pow(r as u32) {
            return Err(Error::Internal(
                "endomorphism algebra of a declared indecomposable is not local".into(),
            ));
        }
        Ok((n - r, r))
    }

    /// |Aut| from the decomposition: for L = ⊕ X_i^{m_i} with End(X_i) of
    /// residue degree d_i and radical dimension r_i,
    /// |Aut L| = Π_i |GL_{m_i}(F_{q^{d_i}})| · q^{m_i² r_i}
    ///           · q^{Σ_{i≠j} m_i m_j dim Hom(X_i, X_j)}.
    pub(crate) fn aut_count_by_parts(&self, rep: &Rep) -> Result<u64> {
        let parts = self.decompose_rep(rep)?;
        let q = self.q as u128;
        let mut total: u128 = 1;
        let mut mul = |f: u128| -> Result<()> {
            total = total
                .checked_mul(f)
                .ok_or_else(|| Error::Resource("automorphism order overflow".into()))?;
            Ok(())
        };
        for (x, m) in &parts {
            let (d, r) = self.local_endo_shape(x)?;
            for k in 0..*m {
                mul(q.pow(d as u32 * m) - q.pow(d as u32 * k))?;
            }
            mul(q.pow(m * m * r as u32))?;
        }
        for (x, mx) in &parts {
            for (y, my) in &parts {
                if x != y {
                    mul(q.pow(mx * my * self.hom_dim(x, y)? as u32))?;
                }
            }
        }
        u64::try_from(total).map_err(|_| Error::Resource("automorphism order exceeds u64".into()))
    }
}
