//! The relative Lie algebra differential on `C_V`, the `k`-action used for
//! invariance checks, and the nilpotent complex `Λ(n_P)* ⊗ T(V)` with its
//! differential and the map `τ`.

use std::collections::BTreeMap;

use super::{Cochain, Complex, Model, Wedge};
use crate::error::{Error, Result};
use crate::liegeom::{CotLabel, LieElement, ParabolicData, QuadSpace};
use crate::multitensor::{MultiIndex, SparseTensor};
use crate::scalars::Scalar;
use crate::weil::{geometric_action, GaussPoly};

use super::boundary::{tau_labels, TauOrder};

/// `Y·ω_b = -Σ_c ω_b([Y, X_c]) ω_c` on a `p*` label. The `p`-coefficient of
/// `[Y, X_c]` in the basis `X_{a,μ} = e_a ∧ e_μ` is read off directly.
pub fn coadjoint_on_label(y: &LieElement, space: &QuadSpace, label: &CotLabel) -> Result<Vec<(CotLabel, Scalar)>> {
    let CotLabel::Omega(a, mu) = *label else {
        return Err(Error::Unsupported(format!("coadjoint action on {label}")));
    };
    let mut out = Vec::new();
    for (b, nu) in space.p_basis() {
        let br = y.bracket(&LieElement::wedge_basis(b, nu), space);
        let c = br.coeff(a as usize, mu as usize);
        if !c.is_zero() {
            out.push((CotLabel::Omega(b as u8, nu as u8), -c));
        }
    }
    Ok(out)
}

/// Derivation extension of a label action to a wedge.
fn wedge_derivation(
    w: &Wedge,
    mut act: impl FnMut(&CotLabel) -> Result<Vec<(CotLabel, Scalar)>>,
) -> Result<Vec<(Wedge, Scalar)>> {
    let mut out = Vec::new();
    for pos in 0..w.degree() {
        for (l, c) in act(&w.labels()[pos])? {
            let mut labels = w.labels().to_vec();
            labels[pos] = l;
            if let Some((w2, s)) = Wedge::from_labels(&labels) {
                out.push((w2, c * Scalar::from_int(s)));
            }
        }
    }
    Ok(out)
}

fn global_space(c: &Cochain) -> Result<(QuadSpace, usize)> {
    match c.complex() {
        Complex::Global { space, n } => Ok((space, n)),
        other => Err(Error::Unsupported(format!("expected a C_V cochain, got {other}"))),
    }
}

/// `Y` acting on the Weil slot (geometric action) and on the coefficient
/// slot (derivation), leaving the wedge fixed.
fn act_weil_and_coefficients(y: &LieElement, space: &QuadSpace, c: &Cochain, out: &mut Cochain, prefix: Option<&CotLabel>) -> Result<()> {
    let (m, n) = (space.m(), c.complex().n());
    let tspace = space.space();
    for ((w, i), poly) in c.terms() {
        let (w2, s) = match prefix {
            Some(l) => match w.prepend(*l) {
                Some(x) => x,
                None => continue,
            },
            None => (w.clone(), 1),
        };
        let sign = Scalar::from_int(s);
        let g = geometric_action(y, space, &GaussPoly::new(m, n, poly.clone())?);
        out.add_term(w2.clone(), *i, g.poly(), &sign);
        if c.k > 0 {
            let t = y.act_on_tensor(space, &SparseTensor::from_index(tspace, *i));
            for (j, x) in t.terms() {
                out.add_term(w2.clone(), *j, poly, &(&sign * x));
            }
        }
    }
    Ok(())
}

/// The relative Lie algebra differential
/// `d = Σ_a A(ω_a) ⊗ π(X_a) + ½ Σ_a A(ω_a) ad*(X_a) ⊗ 1`
/// on a Schrödinger-model cochain of `C_V`, with `π` the geometric action on
/// the Weil slot and the derivation action on coefficients.
pub fn rel_differential(c: &Cochain) -> Result<Cochain> {
    if c.model() != Model::Schrodinger {
        return Err(Error::ModelMismatch("the differential is computed in the Schrodinger model".into()));
    }
    let (space, _) = global_space(c)?;
    let mut out = Cochain::zero(c.complex(), c.model(), c.j, c.r + 1, c.k);
    let half = Scalar::from_frac(1, 2);
    for (a, mu) in space.p_basis() {
        let x = LieElement::wedge_basis(a, mu);
        let omega = CotLabel::Omega(a as u8, mu as u8);
        act_weil_and_coefficients(&x, &space, c, &mut out, Some(&omega))?;
        for ((w, i), poly) in c.terms() {
            for (w2, coeff) in wedge_derivation(w, |l| coadjoint_on_label(&x, &space, l))? {
                if let Some((w3, s)) = w2.prepend(omega) {
                    out.add_term(w3, *i, poly, &(&half * &coeff * Scalar::from_int(s)));
                }
            }
        }
    }
    Ok(out)
}

/// Combined action of `Y` on the Weil, wedge and coefficient slots of a
/// Schrödinger-model `C_V` cochain. Vanishes on `K`-invariant elements
/// when `Y` lies in `k`.
pub fn k_action(y: &LieElement, c: &Cochain) -> Result<Cochain> {
    if c.model() != Model::Schrodinger {
        return Err(Error::ModelMismatch("the action is computed in the Schrodinger model".into()));
    }
    let (space, _) = global_space(c)?;
    let mut out = Cochain::zero(c.complex(), c.model(), c.j, c.r, c.k);
    act_weil_and_coefficients(y, &space, c, &mut out, None)?;
    for ((w, i), poly) in c.terms() {
        for (w2, coeff) in wedge_derivation(w, |l| coadjoint_on_label(y, &space, l))? {
            out.add_term(w2, *i, poly, &coeff);
        }
    }
    Ok(out)
}

/// Element of `Λ^r(n_P)* ⊗ T^k(V)`; labels are `nu` and `zeta`,
/// coefficients use `V`-labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilCochain {
    pd: ParabolicData,
    r: usize,
    k: usize,
    terms: BTreeMap<(Wedge, MultiIndex), Scalar>,
}

impl NilCochain {
    pub fn zero(pd: ParabolicData, r: usize, k: usize) -> Self {
        NilCochain { pd, r, k, terms: BTreeMap::new() }
    }

    pub fn parabolic(&self) -> ParabolicData {
        self.pd
    }

    /// `(r, k)`: form degree and coefficient degree.
    pub fn degrees(&self) -> (usize, usize) {
        (self.r, self.k)
    }

    pub fn terms(&self) -> &BTreeMap<(Wedge, MultiIndex), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Wedge, idx: MultiIndex, c: &Scalar) {
        debug_assert_eq!(w.degree(), self.r);
        debug_assert_eq!(idx.len(), self.k);
        if c.is_zero() {
            return;
        }
        let key = (w, idx);
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `self += c * ω ⊗ t`.
    pub fn add_form_tensor(&mut self, w: &Wedge, t: &SparseTensor, c: &Scalar) {
        for (i, x) in t.terms() {
            self.add_term(w.clone(), *i, &(c * x));
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &NilCochain) -> Result<()> {
        if (self.pd, self.r, self.k) != (o.pd, o.r, o.k) {
            return Err(Error::ShapeMismatch(format!("({},{}) vs ({},{})", self.r, self.k, o.r, o.k)));
        }
        for ((w, i), x) in &o.terms {
            self.add_term(w.clone(), *i, &(c * x));
        }
        Ok(())
    }

    pub fn sub(&self, o: &NilCochain) -> Result<NilCochain> {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), o)?;
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> NilCochain {
        let mut out = NilCochain::zero(self.pd, self.r, self.k);
        out.add_scaled(c, self).expect("same shape");
        out
    }

    /// `self ∧ o`, with coefficient tensors concatenated.
    pub fn wedge(&self, o: &NilCochain) -> Result<NilCochain> {
        if self.pd != o.pd {
            return Err(Error::ShapeMismatch("different parabolics".into()));
        }
        let mut out = NilCochain::zero(self.pd, self.r + o.r, self.k + o.k);
        for ((w1, i1), a) in &self.terms {
            for ((w2, i2), b) in &o.terms {
                if let Some((w, s)) = w1.wedge(w2) {
                    out.add_term(w, i1.concat(i2), &(a * b * Scalar::from_int(s)));
                }
            }
        }
        Ok(out)
    }

    pub fn first_difference(&self, o: &NilCochain) -> Option<String> {
        if (self.r, self.k) != (o.r, o.k) {
            return Some(format!("degrees ({},{}) vs ({},{})", self.r, self.k, o.r, o.k));
        }
        let d = self.sub(o).ok()?;
        let ((w, i), c) = d.terms.iter().next()?;
        let key = (w.clone(), *i);
        Some(format!(
            "{w} ⊗ e{i}: {} vs {} (difference {c})",
            self.terms.get(&key).cloned().unwrap_or_default(),
            o.terms.get(&key).cloned().unwrap_or_default()
        ))
    }
}

impl std::fmt::Display for NilCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((w, i), c)| format!("({c}) {w} ⊗ e{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Basis `X_b` of `n`, its label and `κ_b = <label_b, X_b>`; the dual basis
/// is `label_b / κ_b`.
struct NilBasis {
    items: Vec<(CotLabel, LieElement, Scalar)>,
    reps: BTreeMap<CotLabel, LieElement>,
}

impl NilBasis {
    fn new(pd: &ParabolicData) -> Result<Self> {
        let space = pd.space;
        let mut items = Vec::new();
        let mut reps = BTreeMap::new();
        for (label, x) in pd.n_basis() {
            let rep = pd.label_element(&label)?;
            let kappa = rep.pair(&x, &space);
            items.push((label, x, kappa));
            reps.insert(label, rep);
        }
        Ok(NilBasis { items, reps })
    }

    /// `ad*(Y) λ = -Σ_d λ([Y, X_d]) θ_d` with `θ_d = label_d / κ_d`.
    fn coadjoint(&self, y: &LieElement, space: &QuadSpace, l: &CotLabel) -> Result<Vec<(CotLabel, Scalar)>> {
        let rep = self.reps.get(l).ok_or_else(|| Error::Unsupported(format!("{l} is not an n* label")))?;
        let mut out = Vec::new();
        for (ld, xd, kd) in &self.items {
            let v = rep.pair(&y.bracket(xd, space), space);
            if !v.is_zero() {
                out.push((*ld, -(v * kd.inv()?)));
            }
        }
        Ok(out)
    }
}

/// Chevalley-Eilenberg differential of `n_P` with coefficients in `T^k(V)`:
/// `d = Σ_b θ_b ∧ X_b + ½ Σ_b θ_b ∧ ad*(X_b)`.
pub fn nilpotent_differential(c: &NilCochain) -> Result<NilCochain> {
    let pd = c.pd;
    let space = pd.space;
    let basis = NilBasis::new(&pd)?;
    let tspace = space.space();
    let half = Scalar::from_frac(1, 2);
    let mut out = NilCochain::zero(pd, c.r + 1, c.k);
    for (lb, xb, kb) in &basis.items {
        let inv = kb.inv()?;
        for ((w, i), x) in &c.terms {
            let Some((w2, s)) = w.prepend(*lb) else { continue };
            let coeff = x * &inv * Scalar::from_int(s);
            if c.k > 0 {
                let t = xb.act_on_tensor(&space, &SparseTensor::from_index(tspace, *i));
                out.add_form_tensor(&w2, &t, &coeff);
            }
        }
        for ((w, i), x) in &c.terms {
            for (w2, y) in wedge_derivation(w, |l| basis.coadjoint(xb, &space, l))? {
                if let Some((w3, s)) = w2.prepend(*lb) {
                    out.add_term(w3, *i, &(x * &y * &inv * &half * Scalar::from_int(s)));
                }
            }
        }
    }
    Ok(out)
}

/// `τ_{nℓ,ℓ'}`: the first `nℓ` factors of a tensor over `W` (with
/// `W`-labels `1..=dim W`) become `(w_s ⊗ u'_{t(s)})` wedge factors, the rest
/// stays as coefficients in `V`-labels. `order` fixes `t(s)` within each
/// block of `ℓ` slots.
pub fn tau(pd: ParabolicData, n: usize, w: &SparseTensor, order: TauOrder) -> Result<NilCochain> {
    let l = pd.l;
    let k = w.degree();
    if k < n * l {
        return Err(Error::DegreeMismatch { expected: n * l, found: k });
    }
    let mut out = NilCochain::zero(pd, n * l, k - n * l);
    for (idx, c) in w.terms() {
        let (w1, w2) = idx.split(n * l);
        if let Some((wedge, s)) = tau_labels(&pd, &w1, order) {
            out.add_term(wedge, w2.shift(l as i32), &(c * Scalar::from_int(s)));
        }
    }
    Ok(out)
}
