//! The localized algebra of complex classes, in normal form.
//!
//! Every product of complex classes can be rewritten as a combination of
//! monomials K_α K*_β [C_X ⊕ C*_Y] with α, β ranging over the full
//! Grothendieck lattice: the contractible parts of any middle term are
//! peeled off (with an explicit twist) and absorbed into the K-classes.
//! This module implements that normal form, the distinguished generators
//! E_M and F_M, the embeddings of the extended module Hall algebra, the
//! closed product formulas for [C_A][C*_B] and [C*_B][C_A], and the
//! commutator identity that those closed forms verify.

use std::collections::BTreeMap;

use crate::hall::{Conventions, HallAlgebra, HallElement, HallKey};
use crate::quiver::dim_vectors_up_to;
use crate::rep::{Engine, IsoKey};
use crate::scalar::Scalar;
use crate::Result;

use super::c2hall::C2Algebra;
use super::C2Key;

/// A normal-form monomial K_α K*_β [C_X ⊕ C*_Y].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalMonomial {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub x: IsoKey,
    pub y: IsoKey,
}

/// A finite linear combination of normal monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DHElement {
    pub terms: BTreeMap<NormalMonomial, Scalar>,
}

impl DHElement {
    pub fn zero() -> DHElement {
        DHElement::default()
    }

    pub fn term(m: NormalMonomial, c: Scalar) -> DHElement {
        let mut out = DHElement::zero();
        out.add_term(m, c);
        out
    }

    pub fn add_term(&mut self, m: NormalMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&mut self, other: &DHElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> DHElement {
        let mut out = DHElement::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &DHElement) -> DHElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
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
        for (m, c) in &self.terms {
            parts.push(format!(
                "({}) K{:?} K*{:?} [X={} Y={}]",
                c,
                m.alpha,
                m.beta,
                e.describe(&m.x),
                e.describe(&m.y)
            ));
        }
        parts.join(" + ")
    }
}

/// The four components of a commutator-relation check: both first-principles
/// sides and both closed-form evaluations.
pub struct CommutatorReport {
    pub lhs: DHElement,
    pub rhs: DHElement,
    pub closed_lhs: DHElement,
    pub closed_rhs: DHElement,
}

impl CommutatorReport {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs && self.lhs == self.closed_lhs && self.rhs == self.closed_rhs
    }
}

/// The normal-form algebra built on the complex Hall product.
pub struct DhAlgebra<'e> {
    pub engine: &'e Engine,
    pub conv: Conventions,
    pub c2: C2Algebra<'e>,
    pub hall: HallAlgebra<'e>,
}

impl<'e> DhAlgebra<'e> {
    pub fn new(engine: &'e Engine) -> DhAlgebra<'e> {
        DhAlgebra::with_conventions(engine, Conventions::default())
    }

    pub fn with_conventions(engine: &'e Engine, conv: Conventions) -> DhAlgebra<'e> {
        DhAlgebra {
            engine,
            conv,
            c2: C2Algebra::new(engine),
            hall: HallAlgebra::with_conventions(engine, conv),
        }
    }

    fn nv(&self) -> usize {
        self.engine.num_vertices()
    }

    pub fn mono(&self, alpha: Vec<i64>, beta: Vec<i64>, x: IsoKey, y: IsoKey) -> NormalMonomial {
        NormalMonomial { alpha, beta, x, y }
    }

    pub fn unit(&self) -> DHElement {
        let e = self.engine;
        DHElement::term(
            self.mono(
                vec![0; self.nv()],
                vec![0; self.nv()],
                e.zero_key(),
                e.zero_key(),
            ),
            e.scalar_one(),
        )
    }

    /// The complex class carried by a monomial, with the K-parts stripped.
    fn bare_key(&self, m: &NormalMonomial) -> C2Key {
        C2Key {
            h0: m.x.clone(),
            h1: m.y.clone(),
            k: vec![0; self.nv()],
            kstar: vec![0; self.nv()],
        }
    }

    /// Peel the contractible parts off a complex class:
    ///   [C_X ⊕ C*_Y ⊕ K_T ⊕ K*_W] = v^{<W−T, X−Y>} K_T K*_W [C_X ⊕ C*_Y].
    pub fn peel_key(&self, key: &C2Key) -> (Scalar, NormalMonomial) {
        let e = self.engine;
        let t = e.projective_dims_i64(&key.k);
        let w = e.projective_dims_i64(&key.kstar);
        let cx = e.dim_of_i64(&key.h0);
        let cy = e.dim_of_i64(&key.h1);
        let diff_wt: Vec<i64> = w.iter().zip(&t).map(|(&a, &b)| a - b).collect();
        let class: Vec<i64> = cx.iter().zip(&cy).map(|(&a, &b)| a - b).collect();
        let scalar = e.v_pow(e.quiver.euler_form(&diff_wt, &class));
        (scalar, self.mono(t, w, key.h0.clone(), key.h1.clone()))
    }

    /// Product of two normal monomials: commute the right factor's K-classes
    /// past the left complex part, multiply the complex parts, and normalize
    /// every resulting class.
    pub fn multiply_mono(&self, m: &NormalMonomial, n: &NormalMonomial) -> Result<DHElement> {
        let e = self.engine;
        let cm: Vec<i64> = e
            .dim_of_i64(&m.x)
            .iter()
            .zip(&e.dim_of_i64(&m.y))
            .map(|(&a, &b)| a - b)
            .collect();
        let f = self.conv.kcomm;
        let kexp = f.apply(&e.quiver, &n.beta, &cm) - f.apply(&e.quiver, &n.alpha, &cm);
        let kscalar = e.v_pow(kexp);
        let prod = self.c2.product_keys(&self.bare_key(m), &self.bare_key(n))?;
        let mut out = DHElement::zero();
        for (key, c) in &prod.terms {
            let (s, nm) = self.peel_key(key);
            let alpha: Vec<i64> = m
                .alpha
                .iter()
                .zip(&n.alpha)
                .zip(&nm.alpha)
                .map(|((&a, &b), &c)| a + b + c)
                .collect();
            let beta: Vec<i64> = m
                .beta
                .iter()
                .zip(&n.beta)
                .zip(&nm.beta)
                .map(|((&a, &b), &c)| a + b + c)
                .collect();
            out.add_term(self.mono(alpha, beta, nm.x, nm.y), &(&kscalar * c) * &s);
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &DHElement, y: &DHElement) -> Result<DHElement> {
        let mut out = DHElement::zero();
        for (m, cm) in &x.terms {
            for (n, cn) in &y.terms {
                out.add(&self.multiply_mono(m, n)?.scale(&(cm * cn)));
            }
        }
        Ok(out)
    }

    /// The grading-swap involution: exchange the K- and K*-classes and the
    /// two module slots.
    pub fn shift_elem(&self, x: &DHElement) -> DHElement {
        let mut out = DHElement::zero();
        for (m, c) in &x.terms {
            out.add_term(
                self.mono(m.beta.clone(), m.alpha.clone(), m.y.clone(), m.x.clone()),
                c.clone(),
            );
        }
        out
    }

    /// E_M = v^{<Ω_M, M>} K_{−Ω_M} [C_M].
    pub fn e_gen(&self, m: &IsoKey) -> Result<DHElement> {
        let e = self.engine;
        let res = e.resolution(m)?;
        let omega = res.omega_dims_i64();
        let scalar = e.v_pow(e.quiver.euler_form(&omega, &e.dim_of_i64(m)));
        let neg: Vec<i64> = omega.iter().map(|&v| -v).collect();
        Ok(DHElement::term(
            self.mono(neg, vec![0; self.nv()], m.clone(), e.zero_key()),
            scalar,
        ))
    }

    /// F_M: the shift image of E_M.
    pub fn f_gen(&self, m: &IsoKey) -> Result<DHElement> {
        Ok(self.shift_elem(&self.e_gen(m)?))
    }

    /// A pure K-class (or starred K-class) monomial.
    pub fn kclass(&self, alpha: &[i64], starred: bool) -> DHElement {
        let e = self.engine;
        let (a, b) = if starred {
            (vec![0; self.nv()], alpha.to_vec())
        } else {
            (alpha.to_vec(), vec![0; self.nv()])
        };
        DHElement::term(self.mono(a, b, e.zero_key(), e.zero_key()), e.scalar_one())
    }

    /// The embedding of one extended-algebra basis monomial [M]K_γ.
    pub fn embed_basis(&self, key: &HallKey, positive: bool) -> Result<DHElement> {
        let (m, gamma) = key;
        let gen = if positive {
            self.e_gen(m)?
        } else {
            self.f_gen(m)?
        };
        self.multiply(&gen, &self.kclass(gamma, !positive))
    }

    /// Linear extension of the embedding to arbitrary elements.
    pub fn embed(&self, x: &HallElement, positive: bool) -> Result<DHElement> {
        let mut out = DHElement::zero();
        for (key, c) in &x.terms {
            out.add(&self.embed_basis(key, positive)?.scale(c));
        }
        Ok(out)
    }

    /// The product of the two embeddings on a basis pair (positive then
    /// negative), realizing the multiplication map of the triangular basis.
    pub fn m_expand(&self, pos: &HallKey, neg: &HallKey) -> Result<DHElement> {
        let left = self.embed_basis(pos, true)?;
        let right = self.embed_basis(neg, false)?;
        self.multiply(&left, &right)
    }

    /// Both sides of the contractible-peeling identity on one instance: the
    /// brute-force triple product of the classes as complexes, and the
    /// predicted single term.
    pub fn peel_identity_sides(
        &self,
        x: &IsoKey,
        y: &IsoKey,
        t: &[u32],
        w: &[u32],
    ) -> Result<(super::c2hall::C2Element, super::c2hall::C2Element)> {
        let e = self.engine;
        let n = self.nv();
        let kt = C2Key {
            h0: e.zero_key(),
            h1: e.zero_key(),
            k: t.to_vec(),
            kstar: vec![0; n],
        };
        let kw = C2Key {
            h0: e.zero_key(),
            h1: e.zero_key(),
            k: vec![0; n],
            kstar: w.to_vec(),
        };
        let cxy = C2Key {
            h0: x.clone(),
            h1: y.clone(),
            k: vec![0; n],
            kstar: vec![0; n],
        };
        let acyclic = self.c2.product_keys(&kt, &kw)?;
        let lhs = self.c2.product(
            &acyclic,
            &super::c2hall::C2Element::term(cxy, e.scalar_one()),
        )?;
        let full = C2Key {
            h0: x.clone(),
            h1: y.clone(),
            k: t.to_vec(),
            kstar: w.to_vec(),
        };
        let tdims = e.projective_dims_i64(t);
        let wdims = e.projective_dims_i64(w);
        let class: Vec<i64> = e
            .dim_of_i64(x)
            .iter()
            .zip(&e.dim_of_i64(y))
            .map(|(&a, &b)| a - b)
            .collect();
        let diff: Vec<i64> = tdims.iter().zip(&wdims).map(|(&a, &b)| a - b).collect();
        let expected =
            super::c2hall::C2Element::term(full, e.v_pow(e.quiver.euler_form(&diff, &class)));
        Ok((lhs, expected))
    }

    /// Convenience wrapper around [`Self::peel_identity_sides`].
    pub fn peel_identity_holds(
        &self,
        x: &IsoKey,
        y: &IsoKey,
        t: &[u32],
        w: &[u32],
    ) -> Result<bool> {
        let (lhs, rhs) = self.peel_identity_sides(x, y, t, w)?;
        Ok(lhs == rhs)
    }

    /// Closed form for [C_A][C*_B] (part 1) or [C*_B][C_A] (part 2): a sum
    /// over exact sequences 0 → X → A → B → Y → 0 counted by Hall numbers.
    pub fn closed_product(&self, part: u8, a: &IsoKey, b: &IsoKey) -> Result<DHElement> {
        let e = self.engine;
        let ra = e.resolution(a)?;
        let rb = e.resolution(b)?;
        let (pa, oa) = (ra.p_dims_i64(), ra.omega_dims_i64());
        let (pb, ob) = (rb.p_dims_i64(), rb.omega_dims_i64());
        let da = e.dim_of(a);
        let db = e.dim_of(b);
        let sub =
            |u: &[i64], v: &[i64]| -> Vec<i64> { u.iter().zip(v).map(|(&p, &q)| p - q).collect() };
        let add =
            |u: &[i64], v: &[i64]| -> Vec<i64> { u.iter().zip(v).map(|(&p, &q)| p + q).collect() };
        let mut out = DHElement::zero();
        let min: Vec<u32> = da.iter().zip(&db).map(|(&p, &q)| p.min(q)).collect();
        for dl in dim_vectors_up_to(&min) {
            let dx: Vec<u32> = da.iter().zip(&dl).map(|(&p, &q)| p - q).collect();
            let dy: Vec<u32> = db.iter().zip(&dl).map(|(&p, &q)| p - q).collect();
            for l in e.classes_of_dim(&dl)? {
                let al = e.scalar_int(e.aut_count(&l)? as i64);
                for x in e.classes_of_dim(&dx)? {
                    let g1 = match part {
                        1 => e.hall_number(a, &l, &x)?, // g^A_{L X}
                        _ => e.hall_number(a, &x, &l)?, // g^A_{X L}
                    };
                    if g1 == 0 {
                        continue;
                    }
                    let rx = e.resolution(&x)?;
                    for y in e.classes_of_dim(&dy)? {
                        let g2 = match part {
                            1 => e.hall_number(b, &y, &l)?, // g^B_{Y L}
                            _ => e.hall_number(b, &l, &y)?, // g^B_{L Y}
                        };
                        if g2 == 0 {
                            continue;
                        }
                        let ry = e.resolution(&y)?;
                        let class = sub(&e.dim_of_i64(&x), &e.dim_of_i64(&y));
                        let (exp, alpha, beta) = if part == 1 {
                            let exp = e.quiver.euler_form(&pa, &ob) - e.quiver.euler_form(&oa, &pb)
                                + e.quiver.euler_form(
                                    &sub(
                                        &add(&pb, &rx.omega_dims_i64()),
                                        &add(&oa, &ry.p_dims_i64()),
                                    ),
                                    &class,
                                );
                            (
                                exp,
                                sub(&oa, &rx.omega_dims_i64()),
                                sub(&pb, &ry.p_dims_i64()),
                            )
                        } else {
                            let exp = e.quiver.euler_form(&pb, &oa) - e.quiver.euler_form(&ob, &pa)
                                + e.quiver.euler_form(
                                    &sub(
                                        &add(&rx.p_dims_i64(), &ob),
                                        &add(&pa, &ry.omega_dims_i64()),
                                    ),
                                    &class,
                                );
                            (
                                exp,
                                sub(&pa, &rx.p_dims_i64()),
                                sub(&ob, &ry.omega_dims_i64()),
                            )
                        };
                        let coeff = &(&e.v_pow(exp) * &al) * &e.scalar_int((g1 * g2) as i64);
                        out.add_term(self.mono(alpha, beta, x.clone(), y.clone()), coeff);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The closed-form quadruple sum that both sides of the commutator
    /// relation reduce to: over filtrations of A with successive quotients
    /// (W, X, U) and of B with successive quotients (U, Y, W), top to bottom.
    /// The two reductions produce this same sum with the summation variables
    /// swapped, so a single evaluation serves for both sides.
    fn main_closed(&self, a: &IsoKey, b: &IsoKey) -> Result<DHElement> {
        let e = self.engine;
        let da = e.dim_of(a);
        let db = e.dim_of(b);
        let sub =
            |u: &[i64], v: &[i64]| -> Vec<i64> { u.iter().zip(v).map(|(&p, &q)| p - q).collect() };
        let min: Vec<u32> = da.iter().zip(&db).map(|(&p, &q)| p.min(q)).collect();
        let mut out = DHElement::zero();
        for du in dim_vectors_up_to(&min) {
            let rem_a: Vec<u32> = da.iter().zip(&du).map(|(&p, &q)| p - q).collect();
            let rem_b: Vec<u32> = db.iter().zip(&du).map(|(&p, &q)| p - q).collect();
            let minw: Vec<u32> = rem_a.iter().zip(&rem_b).map(|(&p, &q)| p.min(q)).collect();
            for dw in dim_vectors_up_to(&minw) {
                let dx: Vec<u32> = rem_a.iter().zip(&dw).map(|(&p, &q)| p - q).collect();
                let dy: Vec<u32> = rem_b.iter().zip(&dw).map(|(&p, &q)| p - q).collect();
                for u in e.classes_of_dim(&du)? {
                    let au = e.scalar_int(e.aut_count(&u)? as i64);
                    let uhat = e.dim_of_i64(&u);
                    for w in e.classes_of_dim(&dw)? {
                        let aw = e.scalar_int(e.aut_count(&w)? as i64);
                        let what = e.dim_of_i64(&w);
                        for x in e.classes_of_dim(&dx)? {
                            let ga = e.hall_triple(a, &w, &x, &u)?; // g^A_{W X U}
                            if ga == 0 {
                                continue;
                            }
                            let ox = e.resolution(&x)?.omega_dims_i64();
                            for y in e.classes_of_dim(&dy)? {
                                let gb = e.hall_triple(b, &u, &y, &w)?; // g^B_{U Y W}
                                if gb == 0 {
                                    continue;
                                }
                                let oy = e.resolution(&y)?.omega_dims_i64();
                                let class = sub(&e.dim_of_i64(&x), &e.dim_of_i64(&y));
                                // exponent <W + Ω_X − Ω_Y − U, X − Y>
                                let evec: Vec<i64> = (0..what.len())
                                    .map(|i| what[i] + ox[i] - oy[i] - uhat[i])
                                    .collect();
                                let exp = e.quiver.euler_form(&evec, &class);
                                let coeff = &(&(&e.v_pow(exp) * &au) * &aw)
                                    * &e.scalar_int((ga * gb) as i64);
                                out.add_term(
                                    self.mono(
                                        sub(&uhat, &ox),
                                        sub(&what, &oy),
                                        x.clone(),
                                        y.clone(),
                                    ),
                                    coeff,
                                );
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Check the commutator relation for a = [A], b = [B]: expand both sides
    /// from the coproduct and pairing, and also evaluate the two closed-form
    /// quadruple sums; all four must agree.
    pub fn commutator_relation(&self, a: &IsoKey, b: &IsoKey) -> Result<CommutatorReport> {
        let e = self.engine;
        let zero = vec![0i64; self.nv()];
        let da = self.hall.coproduct_basis(a, &zero)?;
        let db = self.hall.coproduct_basis(b, &zero)?;
        let single = |k: &HallKey| HallElement::term(k.0.clone(), k.1.clone(), e.scalar_one());
        let mut lhs = DHElement::zero();
        let mut rhs = DHElement::zero();
        for ((a1, a2), ca) in &da.terms {
            for ((b1, b2), cb) in &db.terms {
                let c = ca * cb;
                let phi_l = self.hall.pairing(&single(a2), &single(b1))?;
                if !phi_l.is_zero() {
                    let prod =
                        self.multiply(&self.embed_basis(a1, true)?, &self.embed_basis(b2, false)?)?;
                    lhs.add(&prod.scale(&(&c * &phi_l)));
                }
                let phi_r = self.hall.pairing(&single(a1), &single(b2))?;
                if !phi_r.is_zero() {
                    let prod =
                        self.multiply(&self.embed_basis(b1, false)?, &self.embed_basis(a2, true)?)?;
                    rhs.add(&prod.scale(&(&c * &phi_r)));
                }
            }
        }
        let closed = self.main_closed(a, b)?;
        Ok(CommutatorReport {
            lhs,
            rhs,
            closed_lhs: closed.clone(),
            closed_rhs: closed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::testutil::a2;
    use crate::rep::Engine;

    fn dh(q: u32) -> (Engine, ()) {
        (Engine::new(a2(), q).unwrap(), ())
    }

    #[test]
    fn peeling_desk_values() {
        let (e, _) = dh(2);
        let d = DhAlgebra::new(&e);
        let s1 = e.simple_key(0);

        // a bare contractible pair: no twist, classes are the projective dims
        let key = C2Key {
            h0: e.zero_key(),
            h1: e.zero_key(),
            k: vec![1, 0],
            kstar: vec![0, 1],
        };
        let (s, m) = d.peel_key(&key);
        assert_eq!(s, e.scalar_one());
        assert_eq!(
            m,
            d.mono(vec![1, 1], vec![0, 1], e.zero_key(), e.zero_key())
        );

        // a module part plus one starred contractible at the sink: still no
        // twist, because <P2, dim S1> = 0
        let key = C2Key {
            h0: s1.clone(),
            h1: e.zero_key(),
            k: vec![0, 0],
            kstar: vec![0, 1],
        };
        let (s, m) = d.peel_key(&key);
        assert_eq!(s, e.scalar_one());
        assert_eq!(m, d.mono(vec![0, 0], vec![0, 1], s1.clone(), e.zero_key()));

        // <P1, dim S1> = 1 produces a twist
        let key = C2Key {
            h0: s1.clone(),
            h1: e.zero_key(),
            k: vec![0, 0],
            kstar: vec![1, 0],
        };
        let (s, m) = d.peel_key(&key);
        assert_eq!(s, e.v_pow(1));
        assert_eq!(m, d.mono(vec![0, 0], vec![1, 1], s1, e.zero_key()));
    }

    #[test]
    fn peeled_product_of_the_two_standard_classes() {
        for q in [2u32, 3] {
            let e = Engine::new(a2(), q).unwrap();
            let d = DhAlgebra::new(&e);
            let s1 = e.simple_key(0);
            let left = d.mono(vec![0, 0], vec![0, 0], s1.clone(), e.zero_key());
            let right = d.mono(vec![0, 0], vec![0, 0], e.zero_key(), s1.clone());
            let got = d.multiply_mono(&left, &right).unwrap();

            let mut want = DHElement::zero();
            want.add_term(
                d.mono(vec![0, 0], vec![0, 0], s1.clone(), s1.clone()),
                e.v_pow(-1),
            );
            want.add_term(
                d.mono(vec![0, 1], vec![1, 1], e.zero_key(), e.zero_key()),
                &e.v_pow(-1) * &e.scalar_int(q as i64 - 1),
            );
            assert_eq!(got, want, "q={q}: {}", got.format(&e));
        }
    }

    #[test]
    fn generators_have_single_normal_terms() {
        let (e, _) = dh(3);
        let d = DhAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let p1 = e.indec_projective_key(0).unwrap();

        let es1 = d.e_gen(&s1).unwrap();
        assert_eq!(
            es1,
            DHElement::term(
                d.mono(vec![0, -1], vec![0, 0], s1.clone(), e.zero_key()),
                e.scalar_one()
            )
        );
        let fs1 = d.f_gen(&s1).unwrap();
        assert_eq!(
            fs1,
            DHElement::term(
                d.mono(vec![0, 0], vec![0, -1], e.zero_key(), s1.clone()),
                e.scalar_one()
            )
        );
        // projectives have no syzygy, so no K-correction at all
        let ep1 = d.e_gen(&p1).unwrap();
        assert_eq!(
            ep1,
            DHElement::term(
                d.mono(vec![0, 0], vec![0, 0], p1.clone(), e.zero_key()),
                e.scalar_one()
            )
        );
    }

    #[test]
    fn unit_is_neutral_and_k_classes_add() {
        let (e, _) = dh(2);
        let d = DhAlgebra::new(&e);
        let s2 = e.simple_key(1);
        let x = DHElement::term(
            d.mono(vec![1, 0], vec![0, -1], s2, e.zero_key()),
            e.v_pow(3),
        );
        assert_eq!(d.multiply(&d.unit(), &x).unwrap(), x);
        assert_eq!(d.multiply(&x, &d.unit()).unwrap(), x);

        let a = d.kclass(&[1, -1], false);
        let b = d.kclass(&[0, 2], true);
        let ab = d.multiply(&a, &b).unwrap();
        let ba = d.multiply(&b, &a).unwrap();
        let want = DHElement::term(
            d.mono(vec![1, -1], vec![0, 2], e.zero_key(), e.zero_key()),
            e.scalar_one(),
        );
        assert_eq!(ab, want);
        assert_eq!(ba, want);
    }

    #[test]
    fn commutator_of_the_simple_generators_is_a_k_difference() {
        for q in [2u32, 3] {
            let e = Engine::new(a2(), q).unwrap();
            let d = DhAlgebra::new(&e);
            let s1 = e.simple_key(0);
            let ef = d
                .multiply(&d.e_gen(&s1).unwrap(), &d.f_gen(&s1).unwrap())
                .unwrap();
            let fe = d
                .multiply(&d.f_gen(&s1).unwrap(), &d.e_gen(&s1).unwrap())
                .unwrap();
            let got = fe.sub(&ef);

            let qm1 = e.scalar_int(q as i64 - 1);
            let mut want = DHElement::zero();
            want.add_term(
                d.mono(vec![1, 0], vec![0, 0], e.zero_key(), e.zero_key()),
                qm1.clone(),
            );
            want.add_term(
                d.mono(vec![0, 0], vec![1, 0], e.zero_key(), e.zero_key()),
                -&qm1,
            );
            assert_eq!(got, want, "q={q}: {}", got.format(&e));
        }
    }

    #[test]
    fn closed_form_matches_the_bare_product() {
        for q in [2u32, 3] {
            let e = Engine::new(a2(), q).unwrap();
            let d = DhAlgebra::new(&e);
            let classes = e.enumerate_up_to(&[1, 1]).unwrap();
            for a in &classes {
                for b in &classes {
                    let left = d.mono(vec![0; 2], vec![0; 2], a.clone(), e.zero_key());
                    let right = d.mono(vec![0; 2], vec![0; 2], e.zero_key(), b.clone());
                    let prod = d.multiply_mono(&left, &right).unwrap();
                    let closed = d.closed_product(1, a, b).unwrap();
                    assert_eq!(prod, closed, "q={q} part 1 A={a:?} B={b:?}");

                    let prod2 = d.multiply_mono(&right, &left).unwrap();
                    let closed2 = d.closed_product(2, a, b).unwrap();
                    assert_eq!(prod2, closed2, "q={q} part 2 A={a:?} B={b:?}");

                    // the two parts are exchanged by the grading-swap involution
                    assert_eq!(
                        d.shift_elem(&d.closed_product(1, a, b).unwrap()),
                        d.closed_product(2, b, a).unwrap(),
                        "q={q} involution A={a:?} B={b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn peeling_agrees_with_brute_force_products() {
        let (e, _) = dh(2);
        let d = DhAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);
        let cases: Vec<(IsoKey, IsoKey, Vec<u32>, Vec<u32>)> = vec![
            (s1.clone(), s2.clone(), vec![1, 0], vec![0, 1]),
            (s1.clone(), e.zero_key(), vec![0, 1], vec![1, 0]),
            (e.zero_key(), s1.clone(), vec![1, 0], vec![1, 0]),
            (s2.clone(), s1.clone(), vec![0, 1], vec![0, 1]),
        ];
        for (x, y, t, w) in cases {
            assert!(d.peel_identity_holds(&x, &y, &t, &w).unwrap());
        }
    }

    #[test]
    fn shift_is_a_multiplicative_involution_on_samples() {
        let (e, _) = dh(2);
        let d = DhAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);
        let xs = [
            d.mono(vec![0, 0], vec![0, 0], s1.clone(), s2.clone()),
            d.mono(vec![1, 0], vec![0, -1], s2.clone(), e.zero_key()),
            d.mono(vec![0, 0], vec![0, 0], e.zero_key(), s1.clone()),
        ];
        for m in &xs {
            for n in &xs {
                let x = DHElement::term(m.clone(), e.scalar_one());
                let y = DHElement::term(n.clone(), e.scalar_one());
                let lhs = d.shift_elem(&d.multiply(&x, &y).unwrap());
                let rhs = d.multiply(&d.shift_elem(&x), &d.shift_elem(&y)).unwrap();
                assert_eq!(lhs, rhs);
                assert_eq!(d.shift_elem(&d.shift_elem(&x)), x);
            }
        }
    }

    #[test]
    fn embeddings_respect_a_sample_product() {
        let (e, _) = dh(2);
        let d = DhAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);
        for positive in [true, false] {
            let a = HallElement::term(s2.clone(), vec![0, 0], e.scalar_one());
            let b = HallElement::term(s1.clone(), vec![0, 0], e.scalar_one());
            let prod = d.hall.twisted(&a, &b).unwrap();
            let lhs = d.embed(&prod, positive).unwrap();
            let rhs = d
                .multiply(
                    &d.embed(&a, positive).unwrap(),
                    &d.embed(&b, positive).unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs, "positive={positive}");
        }
    }

    #[test]
    fn commutator_relation_desk_instances() {
        let (e, _) = dh(2);
        let d = DhAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);
        for (a, b) in [(&s1, &s1), (&s1, &s2), (&s2, &s1)] {
            let rep = d.commutator_relation(a, b).unwrap();
            assert!(
                rep.equal(),
                "A={a:?} B={b:?}\nlhs = {}\nrhs = {}\nclosed = {}",
                rep.lhs.format(&e),
                rep.rhs.format(&e),
                rep.closed_lhs.format(&e)
            );
        }
    }
}
