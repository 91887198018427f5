//! The Hall algebra of a quiver over F_q: the plain convolution product,
//! its v-twisted form, the extension by grading-group symbols K_α, the
//! comultiplication, counit, and the bilinear pairing that makes the twisted
//! algebra self-dual.
//!
//! Three exponent sites are configurable between the two Euler-form
//! variants (see `Conventions`); defaults follow the internally consistent
//! symmetric choice, and the harness's audit verifies that choice.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::quiver::{dim_vectors_up_to, dims_to_i64, Quiver};
use crate::rep::{Engine, IsoKey};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Which bilinear form a configurable exponent site uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketForm {
    /// The (non-symmetric) Euler form ⟨d, e⟩.
    Angle,
    /// The symmetrized form (d, e) = ⟨d, e⟩ + ⟨e, d⟩.
    Symmetric,
}

impl BracketForm {
    pub fn apply(self, quiver: &Quiver, d: &[i64], e: &[i64]) -> i64 {
        match self {
            BracketForm::Angle => quiver.euler_form(d, e),
            BracketForm::Symmetric => quiver.sym_form(d, e),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BracketForm::Angle => "angle",
            BracketForm::Symmetric => "symmetric",
        }
    }
}

impl FromStr for BracketForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<BracketForm> {
        match s {
            "angle" => Ok(BracketForm::Angle),
            "symmetric" | "sym" => Ok(BracketForm::Symmetric),
            other => Err(Error::Usage(format!(
                "unknown bracket form {other:?} (expected angle or symmetric)"
            ))),
        }
    }
}

/// The three configurable exponent sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conventions {
    /// Exponent when a K-symbol moves past a module class.
    pub kcomm: BracketForm,
    /// Exponent on K-classes inside the bilinear pairing.
    pub pairing: BracketForm,
    /// Exponent twisting the tensor-square product.
    pub twist: BracketForm,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            kcomm: BracketForm::Symmetric,
            pairing: BracketForm::Symmetric,
            twist: BracketForm::Symmetric,
        }
    }
}

impl Conventions {
    /// Parse comma-separated overrides like `kcomm=angle,twist=symmetric`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Conventions> {
        for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let (site, form) = part.split_once('=').ok_or_else(|| {
                Error::Usage(format!("convention override {part:?} is not site=form"))
            })?;
            let form: BracketForm = form.trim().parse()?;
            match site.trim() {
                "kcomm" => self.kcomm = form,
                "pairing" => self.pairing = form,
                "twist" => self.twist = form,
                other => {
                    return Err(Error::Usage(format!(
                        "unknown convention site {other:?} (expected kcomm, pairing, or twist)"
                    )))
                }
            }
        }
        Ok(self)
    }

    pub fn describe(&self) -> String {
        format!(
            "kcomm={},pairing={},twist={}",
            self.kcomm.name(),
            self.pairing.name(),
            self.twist.name()
        )
    }

    /// All eight assignments, for the audit.
    pub fn all() -> Vec<Conventions> {
        let forms = [BracketForm::Angle, BracketForm::Symmetric];
        let mut out = Vec::new();
        for &kcomm in &forms {
            for &pairing in &forms {
                for &twist in &forms {
                    out.push(Conventions {
                        kcomm,
                        pairing,
                        twist,
                    });
                }
            }
        }
        out
    }
}

/// A basis monomial [M]·K_α of the extended algebra.
pub type HallKey = (IsoKey, Vec<i64>);

/// A finite linear combination of monomials [M]K_α.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HallElement {
    pub terms: BTreeMap<HallKey, Scalar>,
}

/// A finite linear combination of pure tensors of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    pub terms: BTreeMap<(HallKey, HallKey), Scalar>,
}

impl HallElement {
    pub fn zero() -> HallElement {
        HallElement::default()
    }

    pub fn term(m: IsoKey, alpha: Vec<i64>, c: Scalar) -> HallElement {
        let mut e = HallElement::zero();
        e.add_term(m, alpha, c);
        e
    }

    pub fn add_term(&mut self, m: IsoKey, alpha: Vec<i64>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (m, alpha);
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

    pub fn add(&mut self, other: &HallElement) {
        for ((m, a), c) in &other.terms {
            self.add_term(m.clone(), a.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &Scalar) -> HallElement {
        let mut out = HallElement::zero();
        for ((m, a), x) in &self.terms {
            out.add_term(m.clone(), a.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &HallElement) -> HallElement {
        let mut out = self.clone();
        for ((m, a), c) in &other.terms {
            out.add_term(m.clone(), a.clone(), -c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Replace every K-class by zero (projection used by the compatibility
    /// checks that work in the unextended coalgebra).
    pub fn strip_k(&self, n: usize) -> HallElement {
        let mut out = HallElement::zero();
        for ((m, _), c) in &self.terms {
            out.add_term(m.clone(), vec![0; n], c.clone());
        }
        out
    }

    pub fn format(&self, engine: &Engine) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for ((m, a), c) in &self.terms {
            if !s.is_empty() {
                s.push_str("  +  ");
            }
            let _ = write!(s, "({c})·[{}]", engine.describe(m));
            if a.iter().any(|&x| x != 0) {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                let _ = write!(s, "K({})", parts.join(","));
            }
        }
        s
    }
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement::default()
    }

    pub fn add_term(&mut self, left: HallKey, right: HallKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
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

    pub fn add(&mut self, other: &TensorElement) {
        for ((l, r), c) in &other.terms {
            self.add_term(l.clone(), r.clone(), c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Drop the K-classes in both tensor factors.
    pub fn strip_k(&self, n: usize) -> TensorElement {
        let mut out = TensorElement::zero();
        for (((ml, _), (mr, _)), c) in &self.terms {
            out.add_term(
                (ml.clone(), vec![0; n]),
                (mr.clone(), vec![0; n]),
                c.clone(),
            );
        }
        out
    }

    pub fn format(&self, engine: &Engine) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (((ml, al), (mr, ar)), c) in &self.terms {
            parts.push(format!(
                "({c})·[{}]K{:?} ⊗ [{}]K{:?}",
                engine.describe(ml),
                al,
                engine.describe(mr),
                ar
            ));
        }
        parts.join("  +  ")
    }
}

/// The algebra operations, parametrized by an engine and a convention
/// assignment.
pub struct HallAlgebra<'e> {
    pub engine: &'e Engine,
    pub conv: Conventions,
}

impl<'e> HallAlgebra<'e> {
    pub fn new(engine: &'e Engine) -> HallAlgebra<'e> {
        HallAlgebra {
            engine,
            conv: Conventions::default(),
        }
    }

    pub fn with_conventions(engine: &'e Engine, conv: Conventions) -> HallAlgebra<'e> {
        HallAlgebra { engine, conv }
    }

    fn nv(&self) -> usize {
        self.engine.num_vertices()
    }

    fn zero_alpha(&self) -> Vec<i64> {
        vec![0; self.nv()]
    }

    /// [M] as an element (no K-symbol).
    pub fn module(&self, m: &IsoKey) -> HallElement {
        HallElement::term(m.clone(), self.zero_alpha(), self.engine.scalar_one())
    }

    /// K_α as an element.
    pub fn kclass(&self, alpha: &[i64]) -> HallElement {
        HallElement::term(
            self.engine.zero_key(),
            alpha.to_vec(),
            self.engine.scalar_one(),
        )
    }

    pub fn unit(&self) -> HallElement {
        self.module(&self.engine.zero_key())
    }

    /// The plain convolution product on module classes:
    /// [M]⋄[N] = Σ_L (|Ext(M,N) with middle L| / |Hom(M,N)|)·[L].
    /// Defined only on the unextended algebra: K-symbols are rejected.
    pub fn diamond(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        for (_, a) in x.terms.keys().chain(y.terms.keys()) {
            if a.iter().any(|&c| c != 0) {
                return Err(Error::Contract(
                    "plain product is defined on module classes only".into(),
                ));
            }
        }
        let mut out = HallElement::zero();
        for ((m, _), cx) in &x.terms {
            for ((n, _), cy) in &y.terms {
                let c = cx * cy;
                for (l, s) in self.diamond_basis(m, n)? {
                    out.add_term(l, self.zero_alpha(), &s * &c);
                }
            }
        }
        Ok(out)
    }

    fn diamond_basis(&self, m: &IsoKey, n: &IsoKey) -> Result<Vec<(IsoKey, Scalar)>> {
        let e = self.engine;
        let dsum: Vec<u32> = e
            .dim_of(m)
            .iter()
            .zip(&e.dim_of(n))
            .map(|(&a, &b)| a + b)
            .collect();
        let hom = e.hom_count(m, n)?;
        let mut out = Vec::new();
        for l in e.classes_of_dim(&dsum)? {
            let ext = e.ext_count_middle(m, n, &l)?;
            if ext == 0 {
                continue;
            }
            out.push((l, Scalar::count_ratio(ext, hom, e.q)));
        }
        Ok(out)
    }

    /// Twisted product of two basis monomials:
    ///   ([M]K_α)·([N]K_β)
    ///     = v^{kcomm(α, N̂)} · v^{⟨M̂, N̂⟩} · Σ_L c_L [L] K_{α+β}.
    pub fn twisted_basis(
        &self,
        m: &IsoKey,
        alpha: &[i64],
        n: &IsoKey,
        beta: &[i64],
    ) -> Result<HallElement> {
        let e = self.engine;
        let ndims = e.dim_of_i64(n);
        let mdims = e.dim_of_i64(m);
        let k_exp = self.conv.kcomm.apply(&e.quiver, alpha, &ndims);
        let twist = e.quiver.euler_form(&mdims, &ndims);
        let scale = e.v_pow(k_exp + twist);
        let gamma: Vec<i64> = alpha.iter().zip(beta).map(|(&a, &b)| a + b).collect();
        let mut out = HallElement::zero();
        for (l, s) in self.diamond_basis(m, n)? {
            out.add_term(l, gamma.clone(), &s * &scale);
        }
        Ok(out)
    }

    /// Twisted product, bilinear in both arguments.
    pub fn twisted(&self, x: &HallElement, y: &HallElement) -> Result<HallElement> {
        let mut out = HallElement::zero();
        for ((m, alpha), cx) in &x.terms {
            for ((n, beta), cy) in &y.terms {
                let prod = self.twisted_basis(m, alpha, n, beta)?;
                out.add(&prod.scale(&(cx * cy)));
            }
        }
        Ok(out)
    }

    /// Comultiplication on a basis monomial:
    ///   Δ([L]K_α) = Σ_{M,N} v^{⟨M̂,N̂⟩} g^L_{MN} · [M]K_{α+N̂} ⊗ [N]K_α.
    pub fn coproduct_basis(&self, l: &IsoKey, alpha: &[i64]) -> Result<TensorElement> {
        let e = self.engine;
        let dl = e.dim_of(l);
        let mut out = TensorElement::zero();
        for dm in dim_vectors_up_to(&dl) {
            let dn: Vec<u32> = dl.iter().zip(&dm).map(|(&a, &b)| a - b).collect();
            for m in e.classes_of_dim(&dm)? {
                for n in e.classes_of_dim(&dn)? {
                    let g = e.hall_number(l, &m, &n)?;
                    if g == 0 {
                        continue;
                    }
                    let exp = e.quiver.euler_form(&dims_to_i64(&dm), &dims_to_i64(&dn));
                    let coeff = &e.scalar_int(g as i64) * &e.v_pow(exp);
                    let left_alpha: Vec<i64> =
                        alpha.iter().zip(&dn).map(|(&a, &b)| a + b as i64).collect();
                    out.add_term((m.clone(), left_alpha), (n.clone(), alpha.to_vec()), coeff);
                }
            }
        }
        Ok(out)
    }

    pub fn coproduct(&self, x: &HallElement) -> Result<TensorElement> {
        let mut out = TensorElement::zero();
        for ((l, alpha), c) in &x.terms {
            let t = self.coproduct_basis(l, alpha)?;
            for ((left, right), s) in &t.terms {
                out.add_term(left.clone(), right.clone(), s * c);
            }
        }
        Ok(out)
    }

    /// ε([L]K_α) = 1 if L = 0 (any α), else 0; extended linearly.
    pub fn counit(&self, x: &HallElement) -> Scalar {
        let mut out = Scalar::zero(self.engine.q);
        for ((l, _), c) in &x.terms {
            if self.engine.is_zero_key(l) {
                out += c;
            }
        }
        out
    }

    /// The bilinear pairing
    ///   φ([M]K_α, [N]K_β) = δ_{[M],[N]} · |Aut M| · v^{pairing(α, β)}.
    pub fn pairing(&self, x: &HallElement, y: &HallElement) -> Result<Scalar> {
        let e = self.engine;
        let mut out = Scalar::zero(e.q);
        for ((m, alpha), cx) in &x.terms {
            for ((n, beta), cy) in &y.terms {
                if m != n {
                    continue;
                }
                let exp = self.conv.pairing.apply(&e.quiver, alpha, beta);
                let val = &(&e.scalar_int(e.aut_count(m)? as i64) * &e.v_pow(exp)) * &(cx * cy);
                out += &val;
            }
        }
        Ok(out)
    }

    /// Product on the tensor square.  With `twisted_square` true this is
    ///   (u₁⊗u₂)·(w₁⊗w₂) = v^{twist(û₂, ŵ₁)} (u₁w₁)⊗(u₂w₂)
    /// (the exponent reads the module parts only); with it false the plain
    /// componentwise product.
    pub fn tensor_mult(
        &self,
        x: &TensorElement,
        y: &TensorElement,
        twisted_square: bool,
    ) -> Result<TensorElement> {
        let e = self.engine;
        let mut out = TensorElement::zero();
        for (((m1, a1), (m2, a2)), cx) in &x.terms {
            for (((n1, b1), (n2, b2)), cy) in &y.terms {
                let mut c = cx * cy;
                if twisted_square {
                    let exp =
                        self.conv
                            .twist
                            .apply(&e.quiver, &e.dim_of_i64(m2), &e.dim_of_i64(n1));
                    c = &c * &e.v_pow(exp);
                }
                let left = self.twisted_basis(m1, a1, n1, b1)?;
                let right = self.twisted_basis(m2, a2, n2, b2)?;
                for ((lk, la), lc) in &left.terms {
                    for ((rk, ra), rc) in &right.terms {
                        out.add_term(
                            (lk.clone(), la.clone()),
                            (rk.clone(), ra.clone()),
                            &(&c * lc) * rc,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pairing on the tensor square (componentwise product of pairings),
    /// used by the pairing-multiplicativity checks.
    pub fn pairing_tensor(
        &self,
        x: &TensorElement,
        a: &HallElement,
        b: &HallElement,
    ) -> Result<Scalar> {
        // φ⊗φ of x against a⊗b
        let mut out = Scalar::zero(self.engine.q);
        for ((l, r), c) in &x.terms {
            let le = HallElement::term(l.0.clone(), l.1.clone(), self.engine.scalar_one());
            let re = HallElement::term(r.0.clone(), r.1.clone(), self.engine.scalar_one());
            let p = &self.pairing(&le, a)? * &self.pairing(&re, b)?;
            out += &(&p * c);
        }
        Ok(out)
    }
}
