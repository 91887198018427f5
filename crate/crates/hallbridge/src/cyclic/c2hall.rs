//! The twisted Hall algebra of 2-periodic complexes of projectives.
//!
//! Because every level is projective, an extension of complexes is split on
//! each level, so the middle of any extension of `quot` by `sub` is
//! (sub ⊕ quot, [[d_sub, f],[0, d_quot]]) for a degree-shifting pair
//! f = (f1, f0) of morphisms satisfying two linear compatibility equations.
//! Extension classes are cosets of the null-homotopic pairs inside the
//! solution space, so counting and classifying extensions reduces to finite
//! linear algebra plus `decompose`.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::linalg::FpMat;
use crate::rep::{hom_basis, Engine, Rep, RepMor};
use crate::scalar::Scalar;
use crate::{Error, Result};

use super::{chain_hom_dim, decompose, reassemble, validate, C2Key, Complex2};

/// A finite linear combination of complex classes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct C2Element {
    pub terms: BTreeMap<C2Key, Scalar>,
}

impl C2Element {
    pub fn zero() -> C2Element {
        C2Element::default()
    }

    pub fn term(key: C2Key, c: Scalar) -> C2Element {
        let mut out = C2Element::zero();
        out.add_term(key, c);
        out
    }

    pub fn add_term(&mut self, key: C2Key, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&mut self, other: &C2Element) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> C2Element {
        let mut out = C2Element::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &C2Element) -> C2Element {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn format(&self, e: &Engine) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (key, c) in &self.terms {
            parts.push(format!(
                "({}) [H0={} H1={} K{:?} K*{:?}]",
                c,
                e.describe(&key.h0),
                e.describe(&key.h1),
                key.k,
                key.kstar
            ));
        }
        parts.join(" + ")
    }
}

/// Extension classes of `quot` by `sub`, tallied by the decomposition key of
/// their middle term.  Returns the tally and the total number of classes.
pub fn ext_middles(
    e: &Engine,
    quot: &Complex2,
    sub: &Complex2,
) -> Result<(BTreeMap<C2Key, u64>, u64)> {
    let q = &e.quiver;
    let p = e.q;
    let nv = q.num_vertices();

    // variable layout: f1 : quot.p1 → sub.p0 blocks, then f0 : quot.p0 → sub.p1
    let mut offsets = vec![0usize; 2 * nv + 1];
    for i in 0..nv {
        offsets[i + 1] = offsets[i] + (sub.p0.dims[i] * quot.p1.dims[i]) as usize;
    }
    for i in 0..nv {
        offsets[nv + i + 1] = offsets[nv + i] + (sub.p1.dims[i] * quot.p0.dims[i]) as usize;
    }
    let nvars = offsets[2 * nv];
    let var1 = |i: usize, r: usize, c: usize| offsets[i] + r * quot.p1.dims[i] as usize + c;
    let var0 = |i: usize, r: usize, c: usize| offsets[nv + i] + r * quot.p0.dims[i] as usize + c;

    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut push = |row: Vec<u8>| {
        if row.iter().any(|&v| v != 0) {
            rows.push(row);
        }
    };

    // each component must itself be a morphism of representations
    for (k, a) in q.arrows.iter().enumerate() {
        let (u, w) = (a.from, a.to);
        for level in 0..2 {
            let (from, to, var): (&Rep, &Rep, &dyn Fn(usize, usize, usize) -> usize) = if level == 0
            {
                (&quot.p1, &sub.p0, &var1)
            } else {
                (&quot.p0, &sub.p1, &var0)
            };
            let fm = &from.mats[k];
            let tm = &to.mats[k];
            for r in 0..to.dims[w] as usize {
                for c in 0..from.dims[u] as usize {
                    let mut row = vec![0u8; nvars];
                    for j in 0..from.dims[w] as usize {
                        let idx = var(w, r, j);
                        row[idx] = ((row[idx] as u32 + fm.entry(j, c) as u32) % p) as u8;
                    }
                    for j in 0..to.dims[u] as usize {
                        let idx = var(u, j, c);
                        row[idx] = ((row[idx] as u32 + (p - tm.entry(r, j) as u32) % p) % p) as u8;
                    }
                    push(row);
                }
            }
        }
    }
    // compatibility with the differentials:
    //   d0_sub ∘ f1 + f0 ∘ d1_quot = 0   (quot.p1 → sub.p1)
    //   d1_sub ∘ f0 + f1 ∘ d0_quot = 0   (quot.p0 → sub.p0)
    for i in 0..nv {
        let (q1, q0) = (quot.p1.dims[i] as usize, quot.p0.dims[i] as usize);
        let (s1, s0) = (sub.p1.dims[i] as usize, sub.p0.dims[i] as usize);
        for r in 0..s1 {
            for c in 0..q1 {
                let mut row = vec![0u8; nvars];
                for j in 0..s0 {
                    let idx = var1(i, j, c);
                    let v = sub.d0.mats[i].entry(r, j) as u32;
                    row[idx] = ((row[idx] as u32 + v) % p) as u8;
                }
                for j in 0..q0 {
                    let idx = var0(i, r, j);
                    let v = quot.d1.mats[i].entry(j, c) as u32;
                    row[idx] = ((row[idx] as u32 + v) % p) as u8;
                }
                push(row);
            }
        }
        for r in 0..s0 {
            for c in 0..q0 {
                let mut row = vec![0u8; nvars];
                for j in 0..s1 {
                    let idx = var0(i, j, c);
                    let v = sub.d1.mats[i].entry(r, j) as u32;
                    row[idx] = ((row[idx] as u32 + v) % p) as u8;
                }
                for j in 0..q1 {
                    let idx = var1(i, r, j);
                    let v = quot.d0.mats[i].entry(j, c) as u32;
                    row[idx] = ((row[idx] as u32 + v) % p) as u8;
                }
                push(row);
            }
        }
    }

    let solution_space = FpMat::from_rows(rows, nvars).kernel_basis(p);

    // null-homotopic pairs: f1 = u0 d1_quot − d1_sub u1, f0 = u1 d0_quot − d0_sub u0
    // for morphisms u1 : quot.p1 → sub.p1, u0 : quot.p0 → sub.p0
    let mut homotopy_rows: Vec<Vec<u8>> = Vec::new();
    let flatten = |f1: &[FpMat], f0: &[FpMat]| -> Vec<u8> {
        let mut v = vec![0u8; nvars];
        for i in 0..nv {
            for r in 0..f1[i].rows {
                for c in 0..f1[i].cols {
                    v[var1(i, r, c)] = f1[i].entry(r, c);
                }
            }
            for r in 0..f0[i].rows {
                for c in 0..f0[i].cols {
                    v[var0(i, r, c)] = f0[i].entry(r, c);
                }
            }
        }
        v
    };
    for u1 in hom_basis(q, &quot.p1, &sub.p1, p) {
        let f1: Vec<FpMat> = (0..nv)
            .map(|i| sub.d1.mats[i].mul(&u1.mats[i], p).neg(p))
            .collect();
        let f0: Vec<FpMat> = (0..nv)
            .map(|i| u1.mats[i].mul(&quot.d0.mats[i], p))
            .collect();
        homotopy_rows.push(flatten(&f1, &f0));
    }
    for u0 in hom_basis(q, &quot.p0, &sub.p0, p) {
        let f1: Vec<FpMat> = (0..nv)
            .map(|i| u0.mats[i].mul(&quot.d1.mats[i], p))
            .collect();
        let f0: Vec<FpMat> = (0..nv)
            .map(|i| sub.d0.mats[i].mul(&u0.mats[i], p).neg(p))
            .collect();
        homotopy_rows.push(flatten(&f1, &f0));
    }
    let homotopy = FpMat::from_rows(homotopy_rows.clone(), nvars).row_basis(p);

    // the homotopy image must lie inside the solution space
    {
        let mut all = Vec::new();
        for r in 0..solution_space.rows {
            all.push(solution_space.row(r).to_vec());
        }
        all.extend(homotopy_rows);
        let rank = FpMat::from_rows(all, nvars).rank(p);
        if rank != solution_space.rows {
            return Err(Error::Internal(
                "null-homotopic pairs violate the extension equations".into(),
            ));
        }
    }

    // a complement of the homotopy image inside the solution space meets
    // every coset exactly once
    let mut complement: Vec<Vec<u8>> = Vec::new();
    {
        let mut span: Vec<Vec<u8>> = (0..homotopy.rows)
            .map(|r| homotopy.row(r).to_vec())
            .collect();
        let mut rank = homotopy.rows;
        for r in 0..solution_space.rows {
            let cand = solution_space.row(r).to_vec();
            let mut trial = span.clone();
            trial.push(cand.clone());
            let new_rank = FpMat::from_rows(trial.clone(), nvars).rank(p);
            if new_rank > rank {
                rank = new_rank;
                span = trial;
                complement.push(cand);
            }
        }
    }

    let classes = e.guard_enum(
        (p as u128)
            .checked_pow(complement.len() as u32)
            .ok_or_else(|| Error::Resource("extension class count overflows".into()))?,
        "extension class enumeration",
    )?;

    let mut tally: BTreeMap<C2Key, u64> = BTreeMap::new();
    let mut coeffs = vec![0u8; complement.len()];
    loop {
        let mut vecf = vec![0u8; nvars];
        for (b, &c) in complement.iter().zip(&coeffs) {
            if c != 0 {
                for (slot, &x) in vecf.iter_mut().zip(b) {
                    *slot = ((*slot as u32 + c as u32 * x as u32) % p) as u8;
                }
            }
        }
        // assemble the middle complex, with the sub in the leading block
        let mut d1_mats = Vec::with_capacity(nv);
        let mut d0_mats = Vec::with_capacity(nv);
        for i in 0..nv {
            let (q1, q0) = (quot.p1.dims[i] as usize, quot.p0.dims[i] as usize);
            let (s1, s0) = (sub.p1.dims[i] as usize, sub.p0.dims[i] as usize);
            let mut f1 = FpMat::zeros(s0, q1);
            for r in 0..s0 {
                for c in 0..q1 {
                    f1.set(r, c, vecf[var1(i, r, c)]);
                }
            }
            let mut f0 = FpMat::zeros(s1, q0);
            for r in 0..s1 {
                for c in 0..q0 {
                    f0.set(r, c, vecf[var0(i, r, c)]);
                }
            }
            d1_mats.push(FpMat::upper_block(&sub.d1.mats[i], &f1, &quot.d1.mats[i]));
            d0_mats.push(FpMat::upper_block(&sub.d0.mats[i], &f0, &quot.d0.mats[i]));
        }
        let middle = Complex2 {
            p1: sub.p1.direct_sum(&quot.p1),
            p0: sub.p0.direct_sum(&quot.p0),
            d1: RepMor { mats: d1_mats },
            d0: RepMor { mats: d0_mats },
        };
        validate(e, &middle)?;
        *tally.entry(decompose(e, &middle)?).or_insert(0) += 1;

        let mut done = true;
        for slot in coeffs.iter_mut() {
            *slot += 1;
            if (*slot as u32) < p {
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            break;
        }
    }
    debug_assert_eq!(tally.values().sum::<u64>(), classes);
    Ok((tally, classes))
}

/// The twisted Hall algebra of complex classes, with a shared product cache.
pub struct C2Algebra<'e> {
    pub engine: &'e Engine,
    cache: RwLock<HashMap<(C2Key, C2Key), C2Element>>,
}

impl<'e> C2Algebra<'e> {
    pub fn new(engine: &'e Engine) -> C2Algebra<'e> {
        C2Algebra {
            engine,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn unit_key(&self) -> C2Key {
        let n = self.engine.num_vertices();
        C2Key {
            h0: self.engine.zero_key(),
            h1: self.engine.zero_key(),
            k: vec![0; n],
            kstar: vec![0; n],
        }
    }

    /// [m] * [n] = v^{<m1,n1>+<m0,n0>} Σ_L |Ext(m,n)_L| / |Hom(m,n)| [L].
    pub fn product_keys(&self, m: &C2Key, n: &C2Key) -> Result<C2Element> {
        if let Some(hit) = self.cache.read().unwrap().get(&(m.clone(), n.clone())) {
            return Ok(hit.clone());
        }
        let e = self.engine;
        let mc = reassemble(e, m)?;
        let nc = reassemble(e, n)?;
        let dims = |r: &Rep| crate::quiver::dims_to_i64(&r.dims);
        let twist = e.quiver.euler_form(&dims(&mc.p1), &dims(&nc.p1))
            + e.quiver.euler_form(&dims(&mc.p0), &dims(&nc.p0));
        let hom = chain_hom_dim(e, &mc, &nc) as i64;
        let (tally, _) = ext_middles(e, &mc, &nc)?;
        let mut out = C2Element::zero();
        for (key, count) in tally {
            out.add_term(key, &e.scalar_int(count as i64) * &e.v_pow(twist - 2 * hom));
        }
        self.cache
            .write()
            .unwrap()
            .insert((m.clone(), n.clone()), out.clone());
        Ok(out)
    }

    /// Bilinear extension of the key product.
    pub fn product(&self, x: &C2Element, y: &C2Element) -> Result<C2Element> {
        let mut out = C2Element::zero();
        for (mk, mc) in &x.terms {
            for (nk, nc) in &y.terms {
                let prod = self.product_keys(mk, nk)?;
                out.add(&prod.scale(&(mc * nc)));
            }
        }
        Ok(out)
    }
}

/// All decomposition keys whose two level dimension vectors are bounded by
/// `max` componentwise, in deterministic order.
pub fn keys_up_to(e: &Engine, max: &[u32]) -> Result<Vec<C2Key>> {
    let modules = e.enumerate_up_to(max)?;
    let mults = e.projective_mults_up_to(max);
    let mut out = Vec::new();
    for h0 in &modules {
        for h1 in &modules {
            for k in &mults {
                for kstar in &mults {
                    let key = C2Key {
                        h0: h0.clone(),
                        h1: h1.clone(),
                        k: k.clone(),
                        kstar: kstar.clone(),
                    };
                    let (d1, d0) = super::key_level_dims(e, &key)?;
                    let fits = d1.iter().zip(max).all(|(&d, &m)| d <= m)
                        && d0.iter().zip(max).all(|(&d, &m)| d <= m);
                    if fits {
                        out.push(key);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Every complex on the two given projective levels: all pairs of morphisms
/// (d1, d0) composing to zero in both orders.
pub fn all_complexes_on_levels(e: &Engine, mult1: &[u32], mult0: &[u32]) -> Result<Vec<Complex2>> {
    let p = e.q;
    let p1 = e.projective_of_mult(mult1);
    let p0 = e.projective_of_mult(mult0);
    let b1 = hom_basis(&e.quiver, &p1, &p0, p);
    let b0 = hom_basis(&e.quiver, &p0, &p1, p);
    let total = (p as u128)
        .checked_pow((b1.len() + b0.len()) as u32)
        .ok_or_else(|| Error::Resource("differential enumeration overflows".into()))?;
    e.guard_enum(total, "differential pair enumeration")?;
    let nv = e.num_vertices();
    let combine = |basis: &[RepMor], coeffs: &[u8], to: &Rep, from: &Rep| -> RepMor {
        let mut m = RepMor::zero(from, to);
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                for i in 0..nv {
                    m.mats[i] = m.mats[i].add(&b.mats[i].scale(c, p), p);
                }
            }
        }
        m
    };
    let mut out = Vec::new();
    let mut coeffs = vec![0u8; b1.len() + b0.len()];
    loop {
        let d1 = combine(&b1, &coeffs[..b1.len()], &p0, &p1);
        let d0 = combine(&b0, &coeffs[b1.len()..], &p1, &p0);
        let zero10 = d1
            .compose(&d0, p)
            .mats
            .iter()
            .all(|m| m.data().iter().all(|&v| v == 0));
        let zero01 = d0
            .compose(&d1, p)
            .mats
            .iter()
            .all(|m| m.data().iter().all(|&v| v == 0));
        if zero10 && zero01 {
            out.push(Complex2 {
                p1: p1.clone(),
                p0: p0.clone(),
                d1,
                d0,
            });
        }
        let mut done = true;
        for slot in coeffs.iter_mut() {
            *slot += 1;
            if (*slot as u32) < p {
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            break;
        }
    }
    Ok(out)
}
