//! The double construction on the twisted extended Hall algebra.
//!
//! Elements are combinations of normal-form monomials: a basis monomial of
//! the positive copy on the left, one of the negative copy on the right.
//! Reversed products (negative factor first) are rewritten into normal form
//! by solving the cross relation
//!
//!   Σ φ(a₍₂₎, b₍₁₎) a₍₁₎⁺ b₍₂₎⁻  =  Σ φ(a₍₁₎, b₍₂₎) b₍₁₎⁻ a₍₂₎⁺
//!
//! for the extremal right-hand term: the full pair (b, a) appears there
//! exactly once, with an invertible v-power coefficient, and every other
//! term has strictly smaller module parts on both sides, so the rewriting
//! recurses and terminates.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use crate::cyclic::dh::{DHElement, DhAlgebra};
use crate::hall::{Conventions, HallAlgebra, HallElement, HallKey};
use crate::rep::Engine;
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Positive-copy factor on the left, negative-copy factor on the right.
pub type DoubleMonomial = (HallKey, HallKey);

/// A finite linear combination of normal-form monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DoubleElement {
    pub terms: BTreeMap<DoubleMonomial, Scalar>,
}

impl DoubleElement {
    pub fn zero() -> DoubleElement {
        DoubleElement::default()
    }

    pub fn term(m: DoubleMonomial, c: Scalar) -> DoubleElement {
        let mut out = DoubleElement::zero();
        out.add_term(m, c);
        out
    }

    pub fn add_term(&mut self, m: DoubleMonomial, c: Scalar) {
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

    pub fn add(&mut self, other: &DoubleElement) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> DoubleElement {
        let mut out = DoubleElement::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &DoubleElement) -> DoubleElement {
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
        for (((a, al), (b, be)), c) in &self.terms {
            parts.push(format!(
                "({}) [{} K{:?}]+ [{} K{:?}]-",
                c,
                e.describe(a),
                al,
                e.describe(b),
                be
            ));
        }
        parts.join(" + ")
    }
}

/// The double algebra: two copies of the twisted extended Hall algebra glued
/// along the bilinear pairing.
pub struct DoubleAlgebra<'e> {
    pub engine: &'e Engine,
    pub hall: HallAlgebra<'e>,
    memo: RwLock<HashMap<(HallKey, HallKey), DoubleElement>>,
}

impl<'e> DoubleAlgebra<'e> {
    pub fn new(engine: &'e Engine) -> DoubleAlgebra<'e> {
        DoubleAlgebra::with_conventions(engine, Conventions::default())
    }

    pub fn with_conventions(engine: &'e Engine, conv: Conventions) -> DoubleAlgebra<'e> {
        DoubleAlgebra {
            engine,
            hall: HallAlgebra::with_conventions(engine, conv),
            memo: RwLock::new(HashMap::new()),
        }
    }

    fn nv(&self) -> usize {
        self.engine.num_vertices()
    }

    pub fn unit_key(&self) -> HallKey {
        (self.engine.zero_key(), vec![0; self.nv()])
    }

    pub fn unit(&self) -> DoubleElement {
        DoubleElement::term((self.unit_key(), self.unit_key()), self.engine.scalar_one())
    }

    fn single(&self, k: &HallKey) -> HallElement {
        HallElement::term(k.0.clone(), k.1.clone(), self.engine.scalar_one())
    }

    /// Expand both sides of the cross relation for the pair (a, b): the
    /// left side is returned already in normal form; the right side as raw
    /// (coefficient, negative factor, positive factor) triples.
    pub fn cross_relation_sides(
        &self,
        a: &HallKey,
        b: &HallKey,
    ) -> Result<(DoubleElement, Vec<(Scalar, HallKey, HallKey)>)> {
        let da = self.hall.coproduct_basis(&a.0, &a.1)?;
        let db = self.hall.coproduct_basis(&b.0, &b.1)?;
        let mut lhs = DoubleElement::zero();
        let mut rhs = Vec::new();
        for ((a1, a2), ca) in &da.terms {
            for ((b1, b2), cb) in &db.terms {
                let c = ca * cb;
                let phi_l = self.hall.pairing(&self.single(a2), &self.single(b1))?;
                if !phi_l.is_zero() {
                    lhs.add_term((a1.clone(), b2.clone()), &c * &phi_l);
                }
                let phi_r = self.hall.pairing(&self.single(a1), &self.single(b2))?;
                if !phi_r.is_zero() {
                    rhs.push((&c * &phi_r, b1.clone(), a2.clone()));
                }
            }
        }
        Ok((lhs, rhs))
    }

    /// Rewrite the reversed product (negative factor)·(positive factor) into
    /// normal form by extremal-term extraction from the cross relation.
    pub fn normal_order(&self, neg: &HallKey, pos: &HallKey) -> Result<DoubleElement> {
        let total: u32 = self
            .engine
            .dim_of(&neg.0)
            .iter()
            .chain(self.engine.dim_of(&pos.0).iter())
            .sum();
        self.normal_order_inner(neg, pos, total as usize + 1)
    }

    fn normal_order_inner(
        &self,
        neg: &HallKey,
        pos: &HallKey,
        fuel: usize,
    ) -> Result<DoubleElement> {
        if let Some(hit) = self.memo.read().unwrap().get(&(neg.clone(), pos.clone())) {
            return Ok(hit.clone());
        }
        if fuel == 0 {
            return Err(Error::Internal(
                "normal ordering recursed past its dimension bound".into(),
            ));
        }
        let e = self.engine;
        let (lhs, rhs_raw) = self.cross_relation_sides(pos, neg)?;
        // coefficient of the extremal term: the pairing of the two unit
        // pieces left over when nothing is split off
        let ahat = e.dim_of_i64(&pos.0);
        let shifted: Vec<i64> = pos.1.iter().zip(&ahat).map(|(&a, &b)| a + b).collect();
        let extremal = e.v_pow(self.hall.conv.pairing.apply(&e.quiver, &shifted, &neg.1));
        let mut acc = lhs;
        let mut seen = false;
        for (c, n1, p2) in rhs_raw {
            if &n1 == neg && &p2 == pos {
                if seen || c != extremal {
                    return Err(Error::Internal(
                        "cross relation's extremal term is not as predicted".into(),
                    ));
                }
                seen = true;
            } else {
                let rec = self.normal_order_inner(&n1, &p2, fuel - 1)?;
                acc = acc.sub(&rec.scale(&c));
            }
        }
        if !seen {
            return Err(Error::Internal(
                "cross relation lost its extremal term".into(),
            ));
        }
        let out = acc.scale(&e.v_pow(-self.hall.conv.pairing.apply(&e.quiver, &shifted, &neg.1)));
        self.memo
            .write()
            .unwrap()
            .insert((neg.clone(), pos.clone()), out.clone());
        Ok(out)
    }

    /// Multiply two normal-form monomials:
    ///   (a⁺ b⁻)(c⁺ d⁻) = a⁺ · normal_order(b⁻, c⁺) · d⁻,
    /// absorbing the inner factors into each copy's twisted product.
    pub fn multiply_mono(&self, x: &DoubleMonomial, y: &DoubleMonomial) -> Result<DoubleElement> {
        let (a, b) = x;
        let (c, d) = y;
        let inner = self.normal_order(b, c)?;
        let mut out = DoubleElement::zero();
        for ((cp, bp), s) in &inner.terms {
            let left = self.hall.twisted_basis(&a.0, &a.1, &cp.0, &cp.1)?;
            let right = self.hall.twisted_basis(&bp.0, &bp.1, &d.0, &d.1)?;
            for ((lm, la), cl) in &left.terms {
                for ((rm, ra), cr) in &right.terms {
                    out.add_term(
                        ((lm.clone(), la.clone()), (rm.clone(), ra.clone())),
                        &(s * cl) * cr,
                    );
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &DoubleElement, y: &DoubleElement) -> Result<DoubleElement> {
        let mut out = DoubleElement::zero();
        for (m, cm) in &x.terms {
            for (n, cn) in &y.terms {
                out.add(&self.multiply_mono(m, n)?.scale(&(cm * cn)));
            }
        }
        Ok(out)
    }

    /// The realization of a normal-form monomial inside the complex algebra:
    /// positive factor through the simple-side embedding, negative through
    /// the shifted one.
    pub fn realize(&self, dh: &DhAlgebra, x: &DoubleElement) -> Result<DHElement> {
        let mut out = DHElement::zero();
        for ((pos, neg), c) in &x.terms {
            out.add(&dh.m_expand(pos, neg)?.scale(c));
        }
        Ok(out)
    }

    /// All normal-form monomial pairs with module parts bounded by `max` and
    /// zero K-classes; the generating family used for structure-constant
    /// exports.
    pub fn module_monomials_up_to(&self, max: &[u32]) -> Result<Vec<DoubleMonomial>> {
        let e = self.engine;
        let zero = vec![0i64; self.nv()];
        let classes = e.enumerate_up_to(max)?;
        let mut out = Vec::new();
        for a in &classes {
            for b in &classes {
                out.push(((a.clone(), zero.clone()), (b.clone(), zero.clone())));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::testutil::a2;
    use crate::rep::IsoKey;

    fn k_of(e: &Engine, alpha: &[i64]) -> HallKey {
        (e.zero_key(), alpha.to_vec())
    }

    fn mod_of(e: &Engine, m: &IsoKey) -> HallKey {
        (m.clone(), vec![0; e.num_vertices()])
    }

    #[test]
    fn cross_relation_desk_values() {
        let e = Engine::new(a2(), 2).unwrap();
        let d = DoubleAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);

        // hom-orthogonal simples: both sides are the bare exchanged pair
        let (lhs, rhs) = d
            .cross_relation_sides(&mod_of(&e, &s2), &mod_of(&e, &s1))
            .unwrap();
        assert_eq!(
            lhs,
            DoubleElement::term((mod_of(&e, &s2), mod_of(&e, &s1)), e.scalar_one())
        );
        assert_eq!(rhs.len(), 1);
        assert_eq!(rhs[0], (e.scalar_one(), mod_of(&e, &s1), mod_of(&e, &s2)));

        // pure K-classes are grouplike: a single scalar on both sides
        let alpha = vec![1, 0];
        let beta = vec![0, 1];
        let (lhs, rhs) = d
            .cross_relation_sides(&k_of(&e, &alpha), &k_of(&e, &beta))
            .unwrap();
        let scale = e.v_pow(e.quiver.sym_form(&alpha, &beta));
        assert_eq!(
            lhs,
            DoubleElement::term((k_of(&e, &alpha), k_of(&e, &beta)), scale.clone())
        );
        assert_eq!(rhs, vec![(scale, k_of(&e, &beta), k_of(&e, &alpha))]);
    }

    #[test]
    fn cross_relation_for_the_self_paired_simple() {
        for q in [2u32, 3] {
            let e = Engine::new(a2(), q).unwrap();
            let d = DoubleAlgebra::new(&e);
            let s1 = e.simple_key(0);
            let (lhs, rhs) = d
                .cross_relation_sides(&mod_of(&e, &s1), &mod_of(&e, &s1))
                .unwrap();
            let qm1 = e.scalar_int(q as i64 - 1);
            let mut want = DoubleElement::term((mod_of(&e, &s1), mod_of(&e, &s1)), e.scalar_one());
            want.add_term((k_of(&e, &[1, 0]), d.unit_key()), qm1.clone());
            assert_eq!(lhs, want, "q={q}");

            assert_eq!(rhs.len(), 2);
            assert!(rhs.contains(&(e.scalar_one(), mod_of(&e, &s1), mod_of(&e, &s1))));
            assert!(rhs.contains(&(qm1, k_of(&e, &[1, 0]), d.unit_key())));
        }
    }

    #[test]
    fn normal_order_desk_values() {
        for q in [2u32, 3] {
            let e = Engine::new(a2(), q).unwrap();
            let d = DoubleAlgebra::new(&e);
            let s1 = e.simple_key(0);
            let s2 = e.simple_key(1);

            // commuting pair: plain exchange
            let got = d.normal_order(&mod_of(&e, &s1), &mod_of(&e, &s2)).unwrap();
            assert_eq!(
                got,
                DoubleElement::term((mod_of(&e, &s2), mod_of(&e, &s1)), e.scalar_one())
            );

            // grouplike pair: plain exchange
            let got = d
                .normal_order(&k_of(&e, &[0, 1]), &k_of(&e, &[1, 0]))
                .unwrap();
            assert_eq!(
                got,
                DoubleElement::term((k_of(&e, &[1, 0]), k_of(&e, &[0, 1])), e.scalar_one())
            );

            // the self-paired simple picks up the K-class correction
            let got = d.normal_order(&mod_of(&e, &s1), &mod_of(&e, &s1)).unwrap();
            let qm1 = e.scalar_int(q as i64 - 1);
            let mut want = DoubleElement::term((mod_of(&e, &s1), mod_of(&e, &s1)), e.scalar_one());
            want.add_term((k_of(&e, &[1, 0]), d.unit_key()), qm1.clone());
            want.add_term((d.unit_key(), k_of(&e, &[1, 0])), -&qm1);
            assert_eq!(got, want, "q={q}: {}", got.format(&e));
        }
    }

    #[test]
    fn normal_ordering_solves_its_own_relation() {
        // substituting the normal-ordered reversed products back into the
        // right side must reproduce the left side exactly
        let e = Engine::new(a2(), 2).unwrap();
        let d = DoubleAlgebra::new(&e);
        let classes = e.enumerate_up_to(&[2, 2]).unwrap();
        for a in &classes {
            for b in &classes {
                let (lhs, rhs_raw) = d
                    .cross_relation_sides(&mod_of(&e, a), &mod_of(&e, b))
                    .unwrap();
                let mut resolved = DoubleElement::zero();
                for (c, n1, p2) in rhs_raw {
                    resolved.add(&d.normal_order(&n1, &p2).unwrap().scale(&c));
                }
                assert_eq!(lhs, resolved, "A={a:?} B={b:?}");
            }
        }
    }

    #[test]
    fn unit_is_neutral_and_small_products_associate() {
        let e = Engine::new(a2(), 2).unwrap();
        let d = DoubleAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);
        let monos = [
            (mod_of(&e, &s1), mod_of(&e, &s1)),
            (mod_of(&e, &s2), mod_of(&e, &s1)),
            (k_of(&e, &[1, -1]), mod_of(&e, &s2)),
        ];
        for m in &monos {
            let x = DoubleElement::term(m.clone(), e.scalar_one());
            assert_eq!(d.multiply(&d.unit(), &x).unwrap(), x);
            assert_eq!(d.multiply(&x, &d.unit()).unwrap(), x);
        }
        for m in &monos {
            for n in &monos {
                for p in &monos {
                    let x = DoubleElement::term(m.clone(), e.scalar_one());
                    let y = DoubleElement::term(n.clone(), e.scalar_one());
                    let z = DoubleElement::term(p.clone(), e.scalar_one());
                    let xy_z = d.multiply(&d.multiply(&x, &y).unwrap(), &z).unwrap();
                    let x_yz = d.multiply(&x, &d.multiply(&y, &z).unwrap()).unwrap();
                    assert_eq!(xy_z, x_yz);
                }
            }
        }
    }

    #[test]
    fn commuting_pair_multiplies_the_same_in_both_orders() {
        let e = Engine::new(a2(), 2).unwrap();
        let d = DoubleAlgebra::new(&e);
        let s1 = e.simple_key(0);
        let s2 = e.simple_key(1);
        // [S2]+ placed against [S1]-, in both multiplication orders
        let x = DoubleElement::term((mod_of(&e, &s2), d.unit_key()), e.scalar_one());
        let y = DoubleElement::term((d.unit_key(), mod_of(&e, &s1)), e.scalar_one());
        let xy = d.multiply(&x, &y).unwrap();
        let yx = d.multiply(&y, &x).unwrap();
        assert_eq!(xy, yx);
        assert_eq!(
            xy,
            DoubleElement::term((mod_of(&e, &s2), mod_of(&e, &s1)), e.scalar_one())
        );
    }

    #[test]
    fn realization_intertwines_the_products_on_a_sample() {
        for q in [2u32, 3] {
            let e = Engine::new(a2(), q).unwrap();
            let d = DoubleAlgebra::new(&e);
            let dh = DhAlgebra::new(&e);
            let s1 = e.simple_key(0);
            let x = (mod_of(&e, &s1), mod_of(&e, &s1));
            let y = (mod_of(&e, &s1), d.unit_key());
            let xe = DoubleElement::term(x.clone(), e.scalar_one());
            let ye = DoubleElement::term(y.clone(), e.scalar_one());
            let prod = d.multiply(&xe, &ye).unwrap();
            let lhs = d.realize(&dh, &prod).unwrap();
            let rhs = dh
                .multiply(&d.realize(&dh, &xe).unwrap(), &d.realize(&dh, &ye).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "q={q}");
        }
    }
}
