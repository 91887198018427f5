//! Isomorphism classes via exhaustive base-change orbits.
//!
//! Two representations are isomorphic exactly when their matrix tuples lie
//! in one orbit of the product of the vertex base-change groups acting by
//! `M_a  ->  g_{t(a)} M_a g_{s(a)}^{-1}`.  The canonical key of a class is
//! the lexicographically least byte encoding in the orbit.  Enumerating all
//! tuples in encoding order and spreading each newly seen orbit gives every
//! class exactly once, keyed by its canonical member.

use std::collections::HashSet;

use crate::linalg::{all_matrices, general_linear_group, FpMat};
use crate::{Error, Result};

use super::{Engine, IsoKey, Rep};

impl Engine {
    /// All isomorphism classes with exactly this dimension vector, in
    /// canonical-key order.  Fills the canonicalization cache for every raw
    /// encoding of this dimension as a side effect.
    pub fn classes_of_dim(&self, dims: &[u32]) -> Result<Vec<IsoKey>> {
        if let Some(hit) = self.classes.read().unwrap().get(dims) {
            return Ok(hit.clone());
        }
        let q = self.q;
        let mut raw_size: u128 = 1;
        for a in &self.quiver.arrows {
            raw_size = raw_size.saturating_mul((q as u128).pow(dims[a.to] * dims[a.from]));
        }
        self.guard_enum(raw_size, "representation enumeration")?;

        let gl = self.base_change_groups(dims)?;
        let per_arrow: Vec<Vec<FpMat>> = self
            .quiver
            .arrows
            .iter()
            .map(|a| all_matrices(dims[a.to] as usize, dims[a.from] as usize, q))
            .collect();

        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let mut found = Vec::new();
        let mut canon_updates: Vec<(Vec<u8>, IsoKey)> = Vec::new();
        // iterate the product of the per-arrow matrix lists in lexicographic
        // order of the concatenated encoding
        let mut idx = vec![0usize; per_arrow.len()];
        loop {
            let rep = Rep {
                dims: dims.to_vec(),
                mats: idx
                    .iter()
                    .zip(&per_arrow)
                    .map(|(&i, l)| l[i].clone())
                    .collect(),
            };
            let enc = rep.encode();
            if !seen.contains(&enc) {
                // first encodings in lex order are canonical for their orbit
                let key = IsoKey(enc.clone());
                for other in self.orbit_of(&rep, &gl) {
                    if seen.insert(other.clone()) {
                        canon_updates.push((other, key.clone()));
                    }
                }
                found.push(key);
            }
            // advance the multi-index (last arrow fastest)
            let mut k = idx.len();
            let mut done = idx.is_empty();
            while k > 0 {
                k -= 1;
                idx[k] += 1;
                if idx[k] < per_arrow[k].len() {
                    break;
                }
                idx[k] = 0;
                if k == 0 {
                    done = true;
                }
            }
            if done {
                break;
            }
        }
        if idx.is_empty() {
            // no arrows: a single representation per dimension vector
            let rep = Rep {
                dims: dims.to_vec(),
                mats: vec![],
            };
            let key = IsoKey(rep.encode());
            canon_updates.push((rep.encode(), key.clone()));
            found.push(key);
        }
        found.sort();
        found.dedup();
        {
            let mut canon = self.canon.write().unwrap();
            for (raw, key) in canon_updates {
                canon.insert(raw, key);
            }
        }
        self.classes
            .write()
            .unwrap()
            .insert(dims.to_vec(), found.clone());
        Ok(found)
    }

    /// The canonical key of an arbitrary representation.  Small dimension
    /// vectors are resolved through the exhaustive orbit enumeration; when
    /// that is over budget, the class is identified by its direct-sum
    /// decomposition instead, and the key is the assembled representative
    /// (summands in key order).  The choice depends only on the dimension
    /// vector, so each class always maps to one key.
    pub fn canonical_key(&self, rep: &Rep) -> Result<IsoKey> {
        debug_assert!(rep.check_shapes(&self.quiver), "malformed representation");
        let raw = rep.encode();
        if let Some(hit) = self.canon.read().unwrap().get(&raw) {
            return Ok(hit.clone());
        }
        if !self.class_enum_feasible(&rep.dims) {
            let parts = self.decompose_rep(rep)?;
            let assembled = self.assembled_from_parts(&parts);
            let key = IsoKey(assembled.encode());
            let mut canon = self.canon.write().unwrap();
            canon.insert(assembled.encode(), key.clone());
            canon.insert(raw, key.clone());
            return Ok(key);
        }
        self.classes_of_dim(&rep.dims)?;
        self.canon
            .read()
            .unwrap()
            .get(&raw)
            .cloned()
            .ok_or_else(|| Error::Internal("orbit enumeration missed a representation".into()))
    }

    /// Every class with dimension vector componentwise ≤ `max`, ordered by
    /// dimension vector (lexicographically) and then by canonical key.
    pub fn enumerate_up_to(&self, max: &[u32]) -> Result<Vec<IsoKey>> {
        let mut out = Vec::new();
        for d in crate::quiver::dim_vectors_up_to(max) {
            out.extend(self.classes_of_dim(&d)?);
        }
        Ok(out)
    }

    /// Per-vertex base-change groups with inverses, guarded by the orbit
    /// budget.
    fn base_change_groups(&self, dims: &[u32]) -> Result<Vec<Vec<(FpMat, FpMat)>>> {
        let gl: Vec<Vec<(FpMat, FpMat)>> = dims
            .iter()
            .map(|&d| general_linear_group(d as usize, self.q))
            .collect::<Result<_>>()?;
        let total: u128 = gl.iter().map(|g| g.len() as u128).product();
        if total > self.orbit_budget as u128 {
            return Err(Error::Resource(format!(
                "base-change orbit of size {total} exceeds budget {}",
                self.orbit_budget
            )));
        }
        Ok(gl)
    }

    /// All encodings in the base-change orbit of `rep` (with repetition
    /// removed by the caller).
    fn orbit_of(&self, rep: &Rep, gl: &[Vec<(FpMat, FpMat)>]) -> Vec<Vec<u8>> {
        let n = gl.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            let mats = self
                .quiver
                .arrows
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    let g_to = &gl[a.to][idx[a.to]].0;
                    let g_from_inv = &gl[a.from][idx[a.from]].1;
                    g_to.mul(&rep.mats[k], self.q).mul(g_from_inv, self.q)
                })
                .collect();
            out.push(
                Rep {
                    dims: rep.dims.clone(),
                    mats,
                }
                .encode(),
            );
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < gl[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}
