//! Cochains of the relative Lie algebra complex `C_V` and of the face
//! complex `A_P`, the special cocycles, and the maps among them.
//!
//! A [`Cochain`] is a finite sum of `u_1^j ⊗ f ⊗ ω ⊗ e_I`, where `f` is a
//! Weil-representation vector (a Gaussian-times-polynomial in the
//! Schrödinger model, a polynomial in the Fock model), `ω` a sorted
//! [`Wedge`] of cotangent labels and `e_I` a basis tensor of `T^k(V)`.
//! Terms are grouped by `(ω, I)` with the Weil part as one polynomial.
//! The `U`-power `j` is a grading only, since `U` is one-dimensional.
//!
//! A [`CochainHom`] is the Hom picture: it assigns a cochain to every
//! basis tensor `ε_I` of `T^k(C^n)`.

mod boundary;
mod differential;
mod forms;
pub mod verify;

pub use boundary::{iota_p, restrict_rp, tau_labels, TauOrder};
pub use differential::{
    coadjoint_on_label, k_action, nilpotent_differential, rel_differential, tau, NilCochain,
};
pub use forms::{
    operator_d, operator_t, phi_0k, phi_nq, phi_p_nl, project_harmonic, project_schur,
    project_schur_pre,
};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::liegeom::{CotLabel, ParabolicData, QuadSpace};
use crate::multitensor::{MultiIndex, Space, SparseTensor};
use crate::scalars::Scalar;
use crate::weil::{to_fock, GaussPoly, Poly};

/// Realization of the Weil representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Model {
    Schrodinger,
    Fock,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::Schrodinger => write!(f, "schrodinger"),
            Model::Fock => write!(f, "fock"),
        }
    }
}

/// Which complex a cochain belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Complex {
    /// `C_V` for the quadratic space `space` and genus `n`.
    Global { space: QuadSpace, n: usize },
    /// `A_P` for the face of `pd`: Weil vectors on `W^n`, labels `omega`
    /// of `p_W` and `nu` of `n_W`, coefficients in `T^k(V)`.
    Face { pd: ParabolicData, n: usize },
}

impl Complex {
    pub fn n(&self) -> usize {
        match *self {
            Complex::Global { n, .. } | Complex::Face { n, .. } => n,
        }
    }

    /// Number of rows of the Weil variables.
    pub fn weil_rows(&self) -> usize {
        match *self {
            Complex::Global { space, .. } => space.m(),
            Complex::Face { pd, .. } => pd.m() - 2 * pd.l,
        }
    }

    /// Number of positive rows of the Weil variables.
    pub fn weil_positive_rows(&self) -> usize {
        match *self {
            Complex::Global { space, .. } => space.p,
            Complex::Face { pd, .. } => pd.space.p - pd.l,
        }
    }

    /// Space of the coefficient tensors.
    pub fn coefficient_space(&self) -> Space {
        match *self {
            Complex::Global { space, .. } => space.space(),
            Complex::Face { pd, .. } => pd.space.space(),
        }
    }

    fn nvars(&self) -> usize {
        self.weil_rows() * self.n()
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complex::Global { space, n } => write!(f, "C_V({},{}; n={n})", space.p, space.q),
            Complex::Face { pd, n } => write!(f, "A_P({},{}; l={}; n={n})", pd.space.p, pd.space.q, pd.l),
        }
    }
}

/// Strictly increasing sequence of cotangent labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Wedge(Vec<CotLabel>);

impl Wedge {
    pub fn empty() -> Self {
        Wedge(Vec::new())
    }

    /// Sorts `labels`, returning the permutation sign, or `None` on a repeat.
    pub fn from_labels(labels: &[CotLabel]) -> Option<(Wedge, i64)> {
        let mut v = labels.to_vec();
        let mut sign = 1;
        for i in 1..v.len() {
            let mut k = i;
            while k > 0 && v[k - 1] > v[k] {
                v.swap(k - 1, k);
                sign = -sign;
                k -= 1;
            }
            if k > 0 && v[k - 1] == v[k] {
                return None;
            }
        }
        Some((Wedge(v), sign))
    }

    pub fn labels(&self) -> &[CotLabel] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, l: &CotLabel) -> bool {
        self.0.binary_search(l).is_ok()
    }

    /// `self ∧ o`.
    pub fn wedge(&self, o: &Wedge) -> Option<(Wedge, i64)> {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Wedge::from_labels(&v)
    }

    /// `l ∧ self`.
    pub fn prepend(&self, l: CotLabel) -> Option<(Wedge, i64)> {
        let pos = match self.0.binary_search(&l) {
            Ok(_) => return None,
            Err(p) => p,
        };
        let mut v = self.0.clone();
        v.insert(pos, l);
        Some((Wedge(v), if pos % 2 == 0 { 1 } else { -1 }))
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// Homogeneous element of `C_V^{j,r,k}` or `A_P^{j,r,k}` in one model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    complex: Complex,
    model: Model,
    j: usize,
    r: usize,
    k: usize,
    terms: BTreeMap<(Wedge, MultiIndex), Poly>,
}

impl Cochain {
    pub fn zero(complex: Complex, model: Model, j: usize, r: usize, k: usize) -> Self {
        Cochain { complex, model, j, r, k, terms: BTreeMap::new() }
    }

    /// `u_1^j ⊗ 1 ⊗ 1 ⊗ 1` (the Gaussian in the Schrödinger model).
    pub fn one(complex: Complex, model: Model, j: usize) -> Self {
        let mut c = Cochain::zero(complex, model, j, 0, 0);
        c.add_term(Wedge::empty(), MultiIndex::empty(), &Poly::one(complex.nvars()), &Scalar::one());
        c
    }

    pub fn complex(&self) -> Complex {
        self.complex
    }

    pub fn model(&self) -> Model {
        self.model
    }

    /// `(j, r, k)`: `U`-power, form degree, coefficient degree.
    pub fn degrees(&self) -> (usize, usize, usize) {
        (self.j, self.r, self.k)
    }

    pub fn terms(&self) -> &BTreeMap<(Wedge, MultiIndex), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of scalar terms `(monomial, wedge, index)`.
    pub fn len(&self) -> usize {
        self.terms.values().map(Poly::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c * poly ⊗ wedge ⊗ e_idx`.
    pub fn add_term(&mut self, wedge: Wedge, idx: MultiIndex, poly: &Poly, c: &Scalar) {
        debug_assert_eq!(wedge.degree(), self.r, "form degree");
        debug_assert_eq!(idx.len(), self.k, "coefficient degree");
        debug_assert_eq!(poly.nvars(), self.complex.nvars(), "Weil variables");
        if c.is_zero() || poly.is_zero() {
            return;
        }
        let key = (wedge, idx);
        match self.terms.get_mut(&key) {
            Some(p) => {
                p.add_scaled(c, poly);
                if p.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, poly.scale(c));
            }
        }
    }

    fn check_compatible(&self, o: &Cochain) -> Result<()> {
        if self.model != o.model {
            return Err(Error::ModelMismatch(format!("{} vs {}", self.model, o.model)));
        }
        if self.complex != o.complex {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.complex, o.complex)));
        }
        if self.degrees() != o.degrees() {
            return Err(Error::ShapeMismatch(format!("degrees {:?} vs {:?}", self.degrees(), o.degrees())));
        }
        Ok(())
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, c: &Scalar, o: &Cochain) -> Result<()> {
        self.check_compatible(o)?;
        for ((w, i), p) in &o.terms {
            self.add_term(w.clone(), *i, p, c);
        }
        Ok(())
    }

    pub fn add(&self, o: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), o)?;
        Ok(out)
    }

    pub fn sub(&self, o: &Cochain) -> Result<Cochain> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), o)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero(self.complex, self.model, self.j, self.r, self.k);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, p)| (k.clone(), p.scale(c))).collect();
        }
        out
    }

    /// Product in the graded algebra: `U`-powers add, Fock polynomials
    /// multiply, wedges wedge with sign, coefficient tensors concatenate.
    pub fn dga_mul(&self, o: &Cochain) -> Result<Cochain> {
        if self.model != Model::Fock || o.model != Model::Fock {
            return Err(Error::ModelMismatch("the product is defined in the Fock model".into()));
        }
        if self.complex != o.complex {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.complex, o.complex)));
        }
        let mut out = Cochain::zero(self.complex, Model::Fock, self.j + o.j, self.r + o.r, self.k + o.k);
        for ((w1, i1), p1) in &self.terms {
            for ((w2, i2), p2) in &o.terms {
                if let Some((w, s)) = w1.wedge(w2) {
                    out.add_term(w, i1.concat(i2), &p1.mul(p2), &Scalar::from_int(s));
                }
            }
        }
        Ok(out)
    }

    /// Applies a linear map to the coefficient slot, given on basis tensors.
    /// The image degree is `k_out`.
    pub fn map_coefficients(&self, k_out: usize, mut f: impl FnMut(&MultiIndex) -> Result<SparseTensor>) -> Result<Cochain> {
        let mut out = Cochain::zero(self.complex, self.model, self.j, self.r, k_out);
        let mut cache: BTreeMap<MultiIndex, SparseTensor> = BTreeMap::new();
        for ((w, i), p) in &self.terms {
            if !cache.contains_key(i) {
                let t = f(i)?;
                if t.degree() != k_out {
                    return Err(Error::DegreeMismatch { expected: k_out, found: t.degree() });
                }
                cache.insert(*i, t);
            }
            for (j, c) in cache[i].terms() {
                out.add_term(w.clone(), *j, p, c);
            }
        }
        Ok(out)
    }

    /// The Fock-model image of a Schrödinger-model cochain.
    pub fn to_fock(&self) -> Result<Cochain> {
        if self.model != Model::Schrodinger {
            return Err(Error::ModelMismatch("to_fock expects a Schrodinger-model cochain".into()));
        }
        let (rows, n, p) = (self.complex.weil_rows(), self.complex.n(), self.complex.weil_positive_rows());
        let mut out = Cochain::zero(self.complex, Model::Fock, self.j, self.r, self.k);
        for ((w, i), poly) in &self.terms {
            let f = to_fock(&GaussPoly::new(rows, n, poly.clone())?, p);
            out.add_term(w.clone(), *i, f.poly(), &Scalar::one());
        }
        Ok(out)
    }

    /// Describes the first term where `self` and `o` differ.
    pub fn first_difference(&self, o: &Cochain) -> Option<String> {
        if self.complex != o.complex || self.model != o.model || self.degrees() != o.degrees() {
            return Some(format!(
                "{} {} {:?} vs {} {} {:?}",
                self.complex,
                self.model,
                self.degrees(),
                o.complex,
                o.model,
                o.degrees()
            ));
        }
        let diff = self.sub(o).ok()?;
        let ((w, i), p) = diff.terms.iter().next()?;
        let (e, c) = p.terms().iter().next()?;
        let lhs = self.terms.get(&(w.clone(), *i)).map(|q| q.coeff(e)).unwrap_or_default();
        let rhs = o.terms.get(&(w.clone(), *i)).map(|q| q.coeff(e)).unwrap_or_default();
        Some(format!(
            "{} ⊗ {w} ⊗ e{i}: {lhs} vs {rhs} (difference {c})",
            self.render_monomial(e)
        ))
    }

    fn var_prefix(&self) -> &'static str {
        match self.model {
            Model::Schrodinger => "x",
            Model::Fock => "z",
        }
    }

    fn render_monomial(&self, e: &[u8]) -> String {
        let mono = Poly::monomial(e.to_vec(), Scalar::one());
        let n = self.complex.n();
        let prefix = self.var_prefix();
        mono.render(|v| format!("{prefix}{}_{}", v / n + 1, v % n + 1))
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.complex.n();
        let prefix = self.var_prefix();
        let mut first = true;
        for ((w, i), p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let poly = p.render(|v| format!("{prefix}{}_{}", v / n + 1, v % n + 1));
            write!(f, "u^{} [{poly}] ⊗ {w} ⊗ e{i}", self.j)?;
        }
        Ok(())
    }
}

/// Linear map `T^k(C^n) -> ` cochains, given on the basis `ε_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainHom {
    n: usize,
    k: usize,
    zero: Cochain,
    values: BTreeMap<MultiIndex, Cochain>,
}

impl CochainHom {
    /// Builds the map from its values on all `n^k` basis tensors, in parallel.
    pub fn from_fn(
        zero: Cochain,
        k: usize,
        f: impl Fn(&MultiIndex) -> Result<Cochain> + Sync,
    ) -> Result<CochainHom> {
        let n = zero.complex.n();
        let inputs = MultiIndex::all(n, k);
        let values: Vec<(MultiIndex, Cochain)> = inputs
            .par_iter()
            .map(|i| f(i).map(|c| (*i, c)))
            .collect::<Result<_>>()?;
        for (_, c) in &values {
            zero.check_compatible(c)?;
        }
        let values = values.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(CochainHom { n, k, zero, values })
    }

    /// The zero map with values of the shape of `zero`.
    pub fn zero_map(zero: Cochain, k: usize) -> CochainHom {
        CochainHom { n: zero.complex.n(), k, zero, values: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree of the input tensors.
    pub fn input_degree(&self) -> usize {
        self.k
    }

    /// The zero cochain of the target degrees.
    pub fn zero_value(&self) -> &Cochain {
        &self.zero
    }

    pub fn value(&self, i: &MultiIndex) -> &Cochain {
        self.values.get(i).unwrap_or(&self.zero)
    }

    /// Nonzero values.
    pub fn values(&self) -> &BTreeMap<MultiIndex, Cochain> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Value on an arbitrary tensor of `T^k(C^n)`.
    pub fn eval(&self, x: &SparseTensor) -> Result<Cochain> {
        if x.degree() != self.k || x.space() != (Space::Cn { n: self.n }) {
            return Err(Error::ShapeMismatch(format!("input {} of degree {}", x.space(), x.degree())));
        }
        let mut out = self.zero.clone();
        for (i, c) in x.terms() {
            if let Some(v) = self.values.get(i) {
                out.add_scaled(c, v)?;
            }
        }
        Ok(out)
    }

    /// Applies `f` to every value (and to the zero value, for the shape).
    pub fn map(&self, f: impl Fn(&Cochain) -> Result<Cochain> + Sync) -> Result<CochainHom> {
        let zero = f(&self.zero)?;
        let values: Vec<(MultiIndex, Cochain)> = self
            .values
            .par_iter()
            .map(|(i, c)| f(c).map(|v| (*i, v)))
            .collect::<Result<_>>()?;
        for (_, c) in &values {
            zero.check_compatible(c)?;
        }
        let values = values.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(CochainHom { n: self.n, k: self.k, zero, values })
    }

    /// `(a·b)(ε_{I_1} ⊗ ε_{I_2}) = a(ε_{I_1}) · b(ε_{I_2})`.
    pub fn hom_mul(&self, o: &CochainHom) -> Result<CochainHom> {
        let zero = self.zero.dga_mul(&o.zero)?;
        let k = self.k + o.k;
        CochainHom::from_fn(zero, k, |i| {
            let (i1, i2) = i.split(self.k);
            self.value(&i1).dga_mul(o.value(&i2))
        })
    }

    pub fn sub(&self, o: &CochainHom) -> Result<CochainHom> {
        if self.k != o.k || self.n != o.n {
            return Err(Error::ShapeMismatch("maps on different domains".into()));
        }
        self.zero.check_compatible(&o.zero)?;
        let mut values = BTreeMap::new();
        for i in self.values.keys().chain(o.values.keys()) {
            let d = self.value(i).sub(o.value(i))?;
            if !d.is_zero() {
                values.insert(*i, d);
            }
        }
        Ok(CochainHom { n: self.n, k: self.k, zero: self.zero.clone(), values })
    }

    /// Describes the first basis input where `self` and `o` differ.
    pub fn first_difference(&self, o: &CochainHom) -> Option<String> {
        if self.k != o.k || self.n != o.n {
            return Some(format!("domains T^{}(C^{}) vs T^{}(C^{})", self.k, self.n, o.k, o.n));
        }
        if let Some(d) = self.zero.first_difference(&o.zero) {
            return Some(d);
        }
        for i in self.values.keys().chain(o.values.keys()) {
            if let Some(d) = self.value(i).first_difference(o.value(i)) {
                return Some(format!("at ε{i}: {d}"));
            }
        }
        None
    }

    /// Compares `self` and `o` on the given inputs only.
    pub fn first_difference_on(&self, o: &CochainHom, inputs: &[SparseTensor]) -> Result<Option<String>> {
        for x in inputs {
            let (a, b) = (self.eval(x)?, o.eval(x)?);
            if let Some(d) = a.first_difference(&b) {
                return Ok(Some(format!("at {x}: {d}")));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::Filling;
    use crate::weil::FockPoly;
    use proptest::prelude::*;

    fn fock_var(m: usize, n: usize, r: usize, j: usize) -> Poly {
        FockPoly::var(m, n, r, j).into_poly()
    }

    fn omega(a: u8, b: u8) -> Wedge {
        Wedge::from_labels(&[CotLabel::Omega(a, b)]).unwrap().0
    }

    /// `1 / (2√2 π i)`, built without the library's `(2πi)^{-1}` helper.
    fn c_one() -> Scalar {
        (Scalar::sqrt2_pow(3) * Scalar::pi_pow(1) * Scalar::i()).inv().unwrap()
    }

    #[test]
    fn phi_fock_rank_one() {
        let v = QuadSpace::new(1, 1).unwrap();
        let phi = phi_nq(v, 1, 0, Model::Fock).unwrap();
        let mut expected = Cochain::zero(Complex::Global { space: v, n: 1 }, Model::Fock, 1, 1, 0);
        expected.add_term(omega(1, 2), MultiIndex::empty(), &fock_var(2, 1, 1, 1), &c_one());
        assert_eq!(phi.value(&MultiIndex::empty()), &expected);
    }

    #[test]
    fn phi_fock_two_positive_rows() {
        let v = QuadSpace::new(2, 1).unwrap();
        let phi = phi_nq(v, 1, 0, Model::Fock).unwrap();
        let mut expected = Cochain::zero(Complex::Global { space: v, n: 1 }, Model::Fock, 1, 1, 0);
        expected.add_term(omega(1, 3), MultiIndex::empty(), &fock_var(3, 1, 1, 1), &c_one());
        expected.add_term(omega(2, 3), MultiIndex::empty(), &fock_var(3, 1, 2, 1), &c_one());
        assert_eq!(phi.value(&MultiIndex::empty()), &expected);
    }

    #[test]
    fn phi_rejects_large_genus() {
        assert!(phi_nq(QuadSpace::new(1, 1).unwrap(), 2, 0, Model::Fock).is_err());
    }

    #[test]
    fn phi_0_one() {
        let v = QuadSpace::new(2, 1).unwrap();
        let phi = phi_0k(v, 1, 1).unwrap();
        let c = (Scalar::from_int(4) * Scalar::pi_pow(1) * Scalar::i()).inv().unwrap();
        let mut expected = Cochain::zero(Complex::Global { space: v, n: 1 }, Model::Fock, 0, 0, 1);
        expected.add_term(Wedge::empty(), MultiIndex::new(&[1]), &fock_var(3, 1, 1, 1), &c);
        expected.add_term(Wedge::empty(), MultiIndex::new(&[2]), &fock_var(3, 1, 2, 1), &c);
        assert_eq!(phi.value(&MultiIndex::new(&[1])), &expected);
        assert!(phi_0k(v, 1, 0).unwrap().value(&MultiIndex::empty()) == &Cochain::one(Complex::Global { space: v, n: 1 }, Model::Fock, 0));
    }

    #[test]
    fn phi_0_two_is_symmetric() {
        let v = QuadSpace::new(2, 1).unwrap();
        assert!(verify::equivariance(&phi_0k(v, 2, 2).unwrap()).unwrap().holds);
    }

    #[test]
    fn phi_p_examples() {
        let pd = ParabolicData::new(QuadSpace::new(2, 2).unwrap(), 1).unwrap();
        let c = (Scalar::from_int(4) * Scalar::pi_pow(1) * Scalar::i()).inv().unwrap();
        let mut expected = Cochain::zero(Complex::Face { pd, n: 1 }, Model::Fock, 1, 1, 0);
        let nu = Wedge::from_labels(&[CotLabel::Nu(2, 1)]).unwrap().0;
        expected.add_term(nu, MultiIndex::empty(), &fock_var(2, 1, 1, 1), &c);
        assert_eq!(phi_p_nl(pd, 1).unwrap(), expected);

        let pd = ParabolicData::new(QuadSpace::new(1, 1).unwrap(), 1).unwrap();
        assert!(phi_p_nl(pd, 1).unwrap().is_zero());
    }

    #[test]
    fn phi_0_one_is_not_closed() {
        let v = QuadSpace::new(2, 1).unwrap();
        let complex = Complex::Global { space: v, n: 1 };
        let s = operator_t(&MultiIndex::new(&[1]), &Cochain::one(complex, Model::Schrodinger, 0)).unwrap();
        assert_eq!(&s.to_fock().unwrap(), phi_0k(v, 1, 1).unwrap().value(&MultiIndex::new(&[1])));
        assert!(!rel_differential(&s).unwrap().is_zero());
    }

    #[test]
    fn operator_t_of_empty_index_is_identity() {
        let v = QuadSpace::new(2, 1).unwrap();
        let d = operator_d(v, 1).unwrap();
        assert_eq!(operator_t(&MultiIndex::empty(), &d).unwrap(), d);
    }

    #[test]
    fn unit_is_neutral_for_the_product() {
        let v = QuadSpace::new(2, 1).unwrap();
        let a = phi_nq(v, 1, 1, Model::Fock).unwrap();
        let one = Cochain::one(Complex::Global { space: v, n: 1 }, Model::Fock, 0);
        let x = a.value(&MultiIndex::new(&[1]));
        assert_eq!(&one.dga_mul(x).unwrap(), x);
        assert!(one.to_fock().is_err());
    }

    #[test]
    fn schur_projections() {
        let v = QuadSpace::new(2, 1).unwrap();
        let phi = phi_nq(v, 2, 2, Model::Fock).unwrap();
        for rows in [vec![vec![1, 2]], vec![vec![1], vec![2]]] {
            let a = Filling::new(rows).unwrap();
            let post = project_schur(&phi, &a).unwrap();
            assert_eq!(project_schur(&post, &a).unwrap(), post);
            assert_eq!(project_schur_pre(&phi, &a).unwrap(), post);
        }
        assert!(project_schur(&phi, &Filling::new(vec![vec![1]]).unwrap()).is_err());
    }

    #[test]
    fn harmonic_projection_is_traceless() {
        let v = QuadSpace::new(2, 1).unwrap();
        let phi = phi_nq(v, 1, 2, Model::Fock).unwrap();
        let a = Filling::new(vec![vec![1, 2]]).unwrap();
        let h = project_harmonic(&phi, &a).unwrap();
        assert!(!h.is_zero());
        let space = v.space();
        for c in h.values().values() {
            // Per (wedge, monomial), gather the coefficient tensor and contract it.
            let mut tensors: BTreeMap<(Wedge, Vec<u8>), SparseTensor> = BTreeMap::new();
            for ((w, i), poly) in c.terms() {
                for (e, x) in poly.terms() {
                    tensors
                        .entry((w.clone(), e.clone()))
                        .or_insert_with(|| SparseTensor::zero(space, 2))
                        .add_term(*i, x);
                }
            }
            for t in tensors.values() {
                assert!(t.contract(0, 1).unwrap().is_zero());
            }
        }
        let k1 = phi_nq(v, 1, 1, Model::Fock).unwrap();
        let one = Filling::new(vec![vec![1]]).unwrap();
        assert_eq!(project_harmonic(&k1, &one).unwrap(), project_schur(&k1, &one).unwrap());
    }

    #[test]
    fn iota_vanishes_below_the_block_degree() {
        let pd = ParabolicData::new(QuadSpace::new(3, 2).unwrap(), 1).unwrap();
        let h = phi_nq(pd.w_space(), 2, 1, Model::Fock).unwrap();
        let out = iota_p(&h, pd).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.input_degree(), 0);
    }

    #[test]
    fn tau_single_factor() {
        let pd = ParabolicData::new(QuadSpace::new(2, 1).unwrap(), 1).unwrap();
        let w = SparseTensor::basis(pd.w_space().space(), &[1]);
        let t = tau(pd, 1, &w, TauOrder::Ascending).unwrap();
        let mut expected = NilCochain::zero(pd, 1, 0);
        expected.add_term(Wedge::from_labels(&[CotLabel::Nu(2, 1)]).unwrap().0, MultiIndex::empty(), &Scalar::one());
        assert_eq!(t, expected);
        assert_eq!(tau_labels(&pd, &MultiIndex::new(&[1]), TauOrder::Descending).unwrap().1, 1);
    }

    #[test]
    fn coadjoint_vanishes_on_k_for_p_labels() {
        // [k, p] ⊂ p, so the coadjoint image of a p-label is again a p-label.
        let v = QuadSpace::new(2, 1).unwrap();
        let y = crate::liegeom::LieElement::wedge_basis(1, 2);
        for (x, _) in coadjoint_on_label(&y, &v, &CotLabel::Omega(1, 3)).unwrap() {
            assert!(matches!(x, CotLabel::Omega(..)));
        }
    }

    fn nil_labels(pd: &ParabolicData) -> Vec<CotLabel> {
        let (m, l) = (pd.m(), pd.l);
        let mut out = Vec::new();
        for a in l + 1..=m - l {
            for i in 1..=l {
                out.push(CotLabel::Nu(a as u8, i as u8));
            }
        }
        for i in 1..=l {
            for j in i + 1..=l {
                out.push(CotLabel::Zeta(i as u8, j as u8));
            }
        }
        out
    }

    fn labels_strategy(count: usize) -> impl Strategy<Value = Vec<(usize, u8, i64)>> {
        prop::collection::vec((0..count, 1u8..=5, -3i64..=3), 1..6)
    }

    proptest! {
        #[test]
        fn wedge_signs_anticommute(a in 0usize..6, b in 0usize..6) {
            let labels = [
                CotLabel::Omega(1, 3), CotLabel::Omega(2, 3), CotLabel::Omega(1, 4),
                CotLabel::Nu(2, 1), CotLabel::Nu(3, 1), CotLabel::Zeta(1, 2),
            ];
            let (x, y) = (labels[a], labels[b]);
            match (Wedge::from_labels(&[x, y]), Wedge::from_labels(&[y, x])) {
                (Some((w1, s1)), Some((w2, s2))) => {
                    prop_assert_eq!(w1, w2);
                    prop_assert_eq!(s1, -s2);
                }
                (None, None) => prop_assert_eq!(x, y),
                _ => prop_assert!(false, "asymmetric repeat detection"),
            }
        }

        #[test]
        fn nilpotent_differential_squares_to_zero(
            l in 1usize..=2,
            terms in labels_strategy(16),
            r in 0usize..=2,
        ) {
            let pd = ParabolicData::new(QuadSpace::new(3, 2).unwrap(), l).unwrap();
            let labels = nil_labels(&pd);
            let mut c = NilCochain::zero(pd, r, 1);
            for (start, coeff_label, c0) in terms {
                let picked: Vec<CotLabel> = (0..r).map(|s| labels[(start + 3 * s) % labels.len()]).collect();
                if let Some((w, s)) = Wedge::from_labels(&picked) {
                    c.add_term(w, MultiIndex::new(&[coeff_label]), &Scalar::from_int(c0 * s));
                }
            }
            let dd = nilpotent_differential(&nilpotent_differential(&c).unwrap()).unwrap();
            prop_assert!(dd.is_zero(), "d^2 = {}", dd);
        }

        #[test]
        fn tau_is_equivariant_under_block_permutations(a in 1u8..=3, b in 1u8..=3) {
            // For l = 1 every slot pairs with u'_1, so swapping the two
            // tensor factors flips the sign of the wedge.
            let pd = ParabolicData::new(QuadSpace::new(3, 2).unwrap(), 1).unwrap();
            let space = pd.w_space().space();
            let t1 = tau(pd, 2, &SparseTensor::basis(space, &[a, b]), TauOrder::Ascending).unwrap();
            let t2 = tau(pd, 2, &SparseTensor::basis(space, &[b, a]), TauOrder::Ascending).unwrap();
            prop_assert_eq!(t1, t2.scale(&Scalar::from_int(-1)));
        }
    }
}
