//! The quadratic space `V` of signature `(p, q)`, its Witt basis relative to
//! a standard isotropic subspace `E = span(u_1..u_l)`, the Lie algebra
//! `g = so(V)` realized as `Lambda^2 V`, and the pullback `sigma*` of
//! cotangent vectors at the base point to horospherical coordinates.
//!
//! Conventions:
//! - `(w ^ w')(v) = (w, v) w' - (w', v) w`.
//! - `e_a = (u_a - u'_a)/sqrt2`, `e_{m+1-a} = (u_a + u'_a)/sqrt2` for `a <= l`,
//!   so `u_a = (e_a + e_{m+1-a})/sqrt2`, `u'_a = (e_{m+1-a} - e_a)/sqrt2` and
//!   `(u_a, u'_b) = -delta_ab`.
//! - Cotangent labels other than `omega` are identified with elements of
//!   `Lambda^2 V` through the pairing
//!   `<a ^ b, c ^ d> = (a, c)(b, d) - (a, d)(b, c)`:
//!   `nu_{a,i} = +-e_a ^ u'_i` (sign `+` for positive `a`) and
//!   `zeta_{i,j} = u'_i ^ u'_j`. With these, `<nu, X> = -1` and `<zeta, Z> = +1`
//!   on the matching basis vectors of `n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::multitensor::{MultiIndex, Space, SparseTensor};
use crate::scalars::Scalar;

/// Quadratic space with `p` positive and `q` negative basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct QuadSpace {
    pub p: usize,
    pub q: usize,
}

impl QuadSpace {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p + q == 0 {
            return Err(Error::InvalidParameters("dimension must be positive".into()));
        }
        if p + q > 15 {
            return Err(Error::InvalidParameters("dimension above 15 is not supported".into()));
        }
        Ok(QuadSpace { p, q })
    }

    pub fn m(&self) -> usize {
        self.p + self.q
    }

    pub fn space(&self) -> Space {
        Space::Quad { p: self.p, q: self.q }
    }

    /// `(e_a, e_a)`.
    pub fn sign(&self, a: usize) -> i64 {
        if a <= self.p {
            1
        } else {
            -1
        }
    }

    /// The `pq` elements `X_{a,mu} = e_a ^ e_mu` in lexicographic order.
    pub fn p_basis(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.p {
            for mu in self.p + 1..=self.m() {
                out.push((a, mu));
            }
        }
        out
    }

    /// Basis of `k`: `e_a ^ e_b` with both indices positive or both negative.
    pub fn k_basis(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 1..=self.m() {
            for b in a + 1..=self.m() {
                if (a <= self.p) == (b <= self.p) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Bilinear form on vectors given in standard coordinates.
    pub fn form(&self, v: &Vector, w: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, x) in v {
            if let Some(y) = w.get(a) {
                let t = x * y;
                acc += if self.sign(*a as usize) < 0 { -t } else { t };
            }
        }
        acc
    }
}

/// Vector in standard coordinates, 1-based labels.
pub type Vector = BTreeMap<u8, Scalar>;

pub fn basis_vector(a: usize) -> Vector {
    BTreeMap::from([(a as u8, Scalar::one())])
}

fn vec_add(acc: &mut Vector, c: &Scalar, v: &Vector) {
    for (k, x) in v {
        let e = acc.entry(*k).or_default();
        *e += c * x;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

/// Element of `so(V) = Lambda^2 V`, stored as coefficients of `e_a ^ e_b`, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    coeffs: BTreeMap<(u8, u8), Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_a ^ e_b`, normalized so that `e_b ^ e_a = -(e_a ^ e_b)`.
    pub fn wedge_basis(a: usize, b: usize) -> Self {
        let mut out = Self::zero();
        out.add_wedge(a, b, &Scalar::one());
        out
    }

    fn add_wedge(&mut self, a: usize, b: usize, c: &Scalar) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a < b { ((a as u8, b as u8), c.clone()) } else { ((b as u8, a as u8), -c) };
        let e = self.coeffs.entry(key).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// `v ^ w` for arbitrary vectors.
    pub fn wedge(v: &Vector, w: &Vector) -> Self {
        let mut out = Self::zero();
        for (a, x) in v {
            for (b, y) in w {
                out.add_wedge(*a as usize, *b as usize, &(x * y));
            }
        }
        out
    }

    pub fn coeffs(&self) -> &BTreeMap<(u8, u8), Scalar> {
        &self.coeffs
    }

    /// Coefficient of `e_a ^ e_b` for `a < b`.
    pub fn coeff(&self, a: usize, b: usize) -> Scalar {
        self.coeffs.get(&(a as u8, b as u8)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (&(a, b), c) in &o.coeffs {
            out.add_wedge(a as usize, b as usize, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.coeffs {
            out.add_wedge(a as usize, b as usize, &(x * c));
        }
        out
    }

    /// `X v` with `(e_a ^ e_b)(e_c) = (e_a, e_c) e_b - (e_b, e_c) e_a`.
    pub fn act(&self, space: &QuadSpace, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&(a, b), x) in &self.coeffs {
            if let Some(va) = v.get(&a) {
                let c = x * va * Scalar::from_int(space.sign(a as usize));
                vec_add(&mut out, &c, &basis_vector(b as usize));
            }
            if let Some(vb) = v.get(&b) {
                let c = -(x * vb * Scalar::from_int(space.sign(b as usize)));
                vec_add(&mut out, &c, &basis_vector(a as usize));
            }
        }
        out
    }

    /// Matrix column `X e_c`, as a sparse vector.
    pub fn column(&self, space: &QuadSpace, c: usize) -> Vector {
        self.act(space, &basis_vector(c))
    }

    /// Commutator of actions, read back through `c_ab = (e_a, e_a) (K e_a)_b`.
    pub fn bracket(&self, o: &LieElement, space: &QuadSpace) -> LieElement {
        let mut out = LieElement::zero();
        for a in 1..=space.m() {
            let ea = basis_vector(a);
            let xy = self.act(space, &o.act(space, &ea));
            let yx = o.act(space, &self.act(space, &ea));
            let mut k = xy;
            vec_add(&mut k, &Scalar::from_int(-1), &yx);
            for (b, c) in k {
                if (b as usize) > a {
                    out.add_wedge(a, b as usize, &(c * Scalar::from_int(space.sign(a))));
                }
            }
        }
        out
    }

    /// Derivation action on a tensor over `V`.
    pub fn act_on_tensor(&self, space: &QuadSpace, t: &SparseTensor) -> SparseTensor {
        let mut out = SparseTensor::zero(t.space(), t.degree());
        let mut columns: BTreeMap<u8, Vector> = BTreeMap::new();
        for (idx, c) in t.terms() {
            for pos in 0..idx.len() {
                let l = idx.get(pos);
                let col = columns.entry(l).or_insert_with(|| self.column(space, l as usize));
                for (b, x) in col.iter() {
                    let mut j: MultiIndex = *idx;
                    j.set(pos, *b);
                    out.add_term(j, &(c * x));
                }
            }
        }
        out
    }

    /// `<X, Y> = sum_{a<b} X_ab Y_ab (e_a,e_a)(e_b,e_b)`.
    pub fn pair(&self, o: &LieElement, space: &QuadSpace) -> Scalar {
        let mut acc = Scalar::zero();
        for (&(a, b), x) in &self.coeffs {
            if let Some(y) = o.coeffs.get(&(a, b)) {
                let t = x * y;
                acc += if space.sign(a as usize) * space.sign(b as usize) < 0 { -t } else { t };
            }
        }
        acc
    }
}

/// Parabolic data: `E = span(u_1..u_l)`, `E' = span(u'_1..u'_l)`,
/// `W = span(e_{l+1}..e_{m-l})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ParabolicData {
    pub space: QuadSpace,
    pub l: usize,
}

impl ParabolicData {
    pub fn new(space: QuadSpace, l: usize) -> Result<Self> {
        if l == 0 || l > space.p.min(space.q) {
            return Err(Error::InvalidParameters(format!(
                "isotropic dimension {l} outside 1..={} for signature ({},{})",
                space.p.min(space.q),
                space.p,
                space.q
            )));
        }
        let pd = ParabolicData { space, l };
        pd.check_witt_gram()?;
        Ok(pd)
    }

    pub fn m(&self) -> usize {
        self.space.m()
    }

    /// Signature of `W`.
    pub fn w_space(&self) -> QuadSpace {
        QuadSpace { p: self.space.p - self.l, q: self.space.q - self.l }
    }

    /// Range of `V`-labels spanning `W`.
    pub fn w_range(&self) -> std::ops::RangeInclusive<usize> {
        self.l + 1..=self.m() - self.l
    }

    pub fn u(&self, i: usize) -> Vector {
        let s = Scalar::sqrt2_pow(-1);
        BTreeMap::from([(i as u8, s.clone()), ((self.m() + 1 - i) as u8, s)])
    }

    pub fn u_prime(&self, i: usize) -> Vector {
        let s = Scalar::sqrt2_pow(-1);
        BTreeMap::from([(i as u8, -&s), ((self.m() + 1 - i) as u8, s)])
    }

    /// Witt basis `u_1..u_l, e_{l+1}..e_{m-l}, u'_l..u'_1`.
    pub fn witt_basis(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = (1..=self.l).map(|i| self.u(i)).collect();
        out.extend(self.w_range().map(basis_vector));
        out.extend((1..=self.l).rev().map(|i| self.u_prime(i)));
        out
    }

    /// Checks the Witt Gram matrix: `diag(1_{p-l}, -1_{q-l})` on `W`, zero on
    /// `E x E`, `E' x E'` and `E x W`, and `(u_i, u'_j) = -delta_ij`.
    pub fn check_witt_gram(&self) -> Result<()> {
        let b = self.witt_basis();
        let m = self.m();
        let l = self.l;
        for (x, v) in b.iter().enumerate() {
            for (y, w) in b.iter().enumerate() {
                let g = self.space.form(v, w);
                let expected = if x < l && y == m - 1 - x || y < l && x == m - 1 - y {
                    Scalar::from_int(-1)
                } else if x == y && x >= l && x < m - l {
                    Scalar::from_int(self.space.sign(x + 1))
                } else {
                    Scalar::zero()
                };
                if g != expected {
                    return Err(Error::InvalidParameters(format!("Witt Gram entry ({x},{y}) is {g}, expected {expected}")));
                }
            }
        }
        Ok(())
    }

    /// `n_u(w) = w ^ u`.
    pub fn n_u(&self, w: &Vector, i: usize) -> LieElement {
        LieElement::wedge(w, &self.u(i))
    }

    /// Basis of `n = n_W + z`: `X_{a,i} = e_a ^ u_i` for `a` in `W` and
    /// `Z_{i,j} = u_i ^ u_j`, `i < j`, paired with their labels.
    pub fn n_basis(&self) -> Vec<(CotLabel, LieElement)> {
        let mut out = Vec::new();
        for a in self.w_range() {
            for i in 1..=self.l {
                out.push((CotLabel::Nu(a as u8, i as u8), self.n_u(&basis_vector(a), i)));
            }
        }
        for i in 1..=self.l {
            for j in i + 1..=self.l {
                out.push((CotLabel::Zeta(i as u8, j as u8), LieElement::wedge(&self.u(i), &self.u(j))));
            }
        }
        out
    }

    /// The element of `Lambda^2 V` representing a `nu` or `zeta` label.
    pub fn label_element(&self, label: &CotLabel) -> Result<LieElement> {
        match *label {
            CotLabel::Nu(a, i) => {
                let e = LieElement::wedge(&basis_vector(a as usize), &self.u_prime(i as usize));
                Ok(if self.space.sign(a as usize) < 0 { e.scale(&Scalar::from_int(-1)) } else { e })
            }
            CotLabel::Zeta(i, j) => Ok(LieElement::wedge(&self.u_prime(i as usize), &self.u_prime(j as usize))),
            _ => Err(Error::Unsupported(format!("{label} has no Lambda^2 representative"))),
        }
    }

    /// `sigma*` on `omega_{a,mu}`: a formal combination of labels.
    pub fn sigma_pullback(&self, label: &CotLabel) -> Result<Vec<(CotLabel, Scalar)>> {
        let CotLabel::Omega(a, mu) = *label else {
            return Err(Error::Unsupported(format!("sigma* is defined on omega labels, got {label}")));
        };
        let (a, mu) = (a as usize, mu as usize);
        let (p, m, l) = (self.space.p, self.m(), self.l);
        if a == 0 || a > p || mu <= p || mu > m {
            return Err(Error::InvalidParameters(format!("{label} is not a p* label for ({p},{})", self.space.q)));
        }
        let r = Scalar::sqrt2_pow(-1);
        if a > l {
            if mu <= m - l {
                return Ok(vec![(*label, Scalar::one())]);
            }
            let i = m + 1 - mu;
            return Ok(vec![(CotLabel::Nu(a as u8, i as u8), -r)]);
        }
        // a = i <= l.
        let in_nu_range = mu <= m + 1 - l;
        let in_gl_range = mu >= m + 1 - l;
        match (in_nu_range, in_gl_range) {
            (true, true) => Err(Error::AmbiguousLabel(label.to_string())),
            (true, false) => Ok(vec![(CotLabel::Nu(mu as u8, a as u8), r)]),
            _ => Ok(vec![(CotLabel::Gl(a as u8, mu as u8), Scalar::one())]),
        }
    }
}

/// Cotangent labels. The derived order (`Omega < Nu < Zeta < Gl < A`, then
/// indices) fixes every wedge sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CotLabel {
    /// `omega_{a,mu}`, the dual basis of `p*`.
    Omega(u8, u8),
    /// `nu_{a,i}` on `n_W`, `a` a `V`-label in the `W` range.
    Nu(u8, u8),
    /// `zeta_{i,j}` on `z = Lambda^2 E`.
    Zeta(u8, u8),
    /// Opaque `gl(E)*` component (killed by restriction).
    Gl(u8, u8),
    /// `a*_i`.
    A(u8),
}

impl CotLabel {
    /// Shifts all `V`-labels (not `E`-indices) by `d`.
    pub fn shift_v(&self, d: u8) -> CotLabel {
        match *self {
            CotLabel::Omega(a, b) => CotLabel::Omega(a + d, b + d),
            CotLabel::Nu(a, i) => CotLabel::Nu(a + d, i),
            other => other,
        }
    }
}

impl fmt::Display for CotLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CotLabel::Omega(a, b) => write!(f, "w{a},{b}"),
            CotLabel::Nu(a, i) => write!(f, "nu{a},{i}"),
            CotLabel::Zeta(i, j) => write!(f, "zeta{i},{j}"),
            CotLabel::Gl(a, b) => write!(f, "gl{a},{b}"),
            CotLabel::A(i) => write!(f, "a{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: usize, q: usize) -> QuadSpace {
        QuadSpace::new(p, q).unwrap()
    }

    fn vec_of(entries: &[(usize, i64)]) -> Vector {
        entries.iter().map(|&(a, c)| (a as u8, Scalar::from_int(c))).collect()
    }

    #[test]
    fn lie_act_examples() {
        let s = v(2, 1);
        let x = LieElement::wedge_basis(1, 3);
        assert_eq!(x.act(&s, &basis_vector(1)), basis_vector(3));
        assert!(x.act(&s, &basis_vector(2)).is_empty());
        assert_eq!(x.act(&s, &basis_vector(3)), basis_vector(1));
    }

    #[test]
    fn p_basis_enumeration() {
        assert_eq!(v(1, 1).p_basis(), vec![(1, 2)]);
        assert_eq!(v(2, 1).p_basis(), vec![(1, 3), (2, 3)]);
        assert_eq!(v(3, 2).p_basis().len(), 6);
    }

    #[test]
    fn p_basis_acts_by_isometries() {
        let s = v(3, 2);
        let a = vec_of(&[(1, 2), (3, -1), (5, 4)]);
        let b = vec_of(&[(2, 1), (4, 3), (5, -2)]);
        for (x, y) in s.p_basis().into_iter().chain(s.k_basis()) {
            let xe = LieElement::wedge_basis(x, y);
            let lhs = s.form(&xe.act(&s, &a), &b) + s.form(&a, &xe.act(&s, &b));
            assert!(lhs.is_zero());
        }
    }

    #[test]
    fn bracket_properties() {
        let s = v(2, 2);
        let x = LieElement::wedge_basis(1, 3).add(&LieElement::wedge_basis(2, 4).scale(&Scalar::from_int(2)));
        let y = LieElement::wedge_basis(1, 2).add(&LieElement::wedge_basis(3, 4));
        let z = LieElement::wedge_basis(2, 3);
        assert!(x.bracket(&x, &s).is_zero());
        let jac = x
            .bracket(&y.bracket(&z, &s), &s)
            .add(&y.bracket(&z.bracket(&x, &s), &s))
            .add(&z.bracket(&x.bracket(&y, &s), &s));
        assert!(jac.is_zero());
        // The bracket realizes the commutator of actions.
        let w = vec_of(&[(1, 1), (2, -3), (4, 5)]);
        let lhs = x.bracket(&y, &s).act(&s, &w);
        let mut rhs = x.act(&s, &y.act(&s, &w));
        vec_add(&mut rhs, &Scalar::from_int(-1), &y.act(&s, &x.act(&s, &w)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn witt_basis_gram() {
        for (p, q) in [(1, 1), (2, 2), (3, 2), (2, 3)] {
            for l in 1..=p.min(q) {
                assert!(ParabolicData::new(v(p, q), l).is_ok());
            }
        }
        assert!(ParabolicData::new(v(2, 1), 2).is_err());
    }

    #[test]
    fn n_w_equivariance() {
        let pd = ParabolicData::new(v(3, 2), 1).unwrap();
        let s = pd.space;
        let w_idx: Vec<usize> = pd.w_range().collect();
        for (ai, &a) in w_idx.iter().enumerate() {
            for &b in &w_idx[ai + 1..] {
                let x = LieElement::wedge_basis(a, b);
                for &c in &w_idx {
                    let wv = basis_vector(c);
                    let lhs = x.bracket(&pd.n_u(&wv, 1), &s);
                    let rhs = pd.n_u(&x.act(&s, &wv), 1);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn label_pairings() {
        let pd = ParabolicData::new(v(3, 2), 2).unwrap();
        for (label, y) in pd.n_basis() {
            let el = pd.label_element(&label).unwrap();
            let expected = if matches!(label, CotLabel::Nu(..)) { -1 } else { 1 };
            assert_eq!(el.pair(&y, &pd.space), Scalar::from_int(expected));
            for (other, y2) in pd.n_basis() {
                if other != label {
                    assert!(el.pair(&y2, &pd.space).is_zero());
                }
            }
        }
    }

    #[test]
    fn sigma_pullback_examples() {
        let pd = ParabolicData::new(v(2, 2), 1).unwrap();
        let r = Scalar::sqrt2_pow(-1);
        assert_eq!(pd.sigma_pullback(&CotLabel::Omega(2, 4)).unwrap(), vec![(CotLabel::Nu(2, 1), -&r)]);
        assert_eq!(pd.sigma_pullback(&CotLabel::Omega(2, 3)).unwrap(), vec![(CotLabel::Omega(2, 3), Scalar::one())]);
        assert_eq!(pd.sigma_pullback(&CotLabel::Omega(1, 3)).unwrap(), vec![(CotLabel::Nu(3, 1), r)]);
        assert!(matches!(pd.sigma_pullback(&CotLabel::Omega(1, 4)), Err(Error::AmbiguousLabel(_))));
    }

    /// `sigma* omega (Y) = omega(projection of Y to p)` for `Y` in `n_W`,
    /// converted to labels through `<nu, X> = -1`.
    #[test]
    fn sigma_pullback_from_projection() {
        for (p, q, l) in [(2, 2, 1), (3, 2, 1), (3, 2, 2), (3, 3, 2)] {
            let pd = ParabolicData::new(v(p, q), l).unwrap();
            let s = pd.space;
            for (a, mu) in s.p_basis() {
                let label = CotLabel::Omega(a as u8, mu as u8);
                let Ok(image) = pd.sigma_pullback(&label) else { continue };
                for (nl, y) in pd.n_basis() {
                    if !matches!(nl, CotLabel::Nu(..)) {
                        continue;
                    }
                    // omega_{a,mu} picks the coefficient of e_a ^ e_mu.
                    let direct = y.coeff(a, mu);
                    let via: Scalar = image
                        .iter()
                        .filter(|(lab, _)| *lab == nl)
                        .map(|(_, c)| -c)
                        .sum();
                    if image.iter().all(|(lab, _)| !matches!(lab, CotLabel::Gl(..))) {
                        assert_eq!(direct, via, "({p},{q},{l}) {label} on {nl}");
                    }
                }
            }
        }
    }
}
