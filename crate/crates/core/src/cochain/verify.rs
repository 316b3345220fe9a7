//! Exact verification routines. Each returns a [`Verdict`]: whether the
//! identity holds and, if not, the first differing term.

use serde::Serialize;

use super::{
    iota_p, k_action, nilpotent_differential, operator_d, operator_t, phi_0k, phi_nq, phi_p_nl,
    project_schur, rel_differential, restrict_rp, tau, CochainHom, Model, NilCochain, TauOrder, Wedge,
};
use super::boundary::iota_sign;
use super::forms::phi_nq_formula;
use crate::error::{Error, Result};
use crate::liegeom::{CotLabel, LieElement, ParabolicData, QuadSpace};
use crate::multitensor::{MultiIndex, Space, SparseTensor};
use crate::scalars::Scalar;
use crate::tableaux::{factorial, Filling, Permutation};

/// Outcome of one exact check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// First differing term, or a short description of what was compared.
    pub detail: String,
}

impl Verdict {
    fn from_difference(diff: Option<String>, ok: impl Into<String>) -> Verdict {
        match diff {
            Some(d) => Verdict { holds: false, detail: d },
            None => Verdict { holds: true, detail: ok.into() },
        }
    }
}

fn space(p: usize, q: usize) -> Result<QuadSpace> {
    QuadSpace::new(p, q)
}

/// `d φ_{nq,ℓ'}(ε_I) = 0` for every `I` (Schrödinger model).
pub fn closedness(p: usize, q: usize, n: usize, lp: usize) -> Result<Verdict> {
    let phi = phi_nq(space(p, q)?, n, lp, Model::Schrodinger)?;
    let d = phi.map(rel_differential)?;
    let diff = d.values().iter().next().map(|(i, c)| {
        let ((w, idx), poly) = c.terms().iter().next().expect("nonzero value");
        format!("d φ(ε{i}) has the term [{}] ⊗ {w} ⊗ e{idx}", poly.render(|v| format!("x{v}")))
    });
    Ok(Verdict::from_difference(diff, format!("d φ(ε_I) = 0 on all {} inputs", n.pow(lp as u32))))
}

/// Combined `k`-action on `φ_{nq,ℓ'}` vanishes for every basis element of `k`.
pub fn k_invariance(p: usize, q: usize, n: usize, lp: usize) -> Result<Verdict> {
    let v = space(p, q)?;
    let phi = phi_nq(v, n, lp, Model::Schrodinger)?;
    for (a, b) in v.k_basis() {
        let y = LieElement::wedge_basis(a, b);
        let img = phi.map(|c| k_action(&y, c))?;
        if let Some((i, c)) = img.values().iter().next() {
            return Ok(Verdict { holds: false, detail: format!("e{a}^e{b} · φ(ε{i}) = {c}") });
        }
    }
    Ok(Verdict { holds: true, detail: format!("{} basis elements of k", v.k_basis().len()) })
}

/// `to_fock ∘ (Schrödinger φ_{nq,ℓ'}) = Fock φ_{nq,ℓ'}`.
pub fn intertwiner(p: usize, q: usize, n: usize, lp: usize) -> Result<Verdict> {
    let v = space(p, q)?;
    let s = phi_nq(v, n, lp, Model::Schrodinger)?.map(|c| c.to_fock())?;
    let f = phi_nq(v, n, lp, Model::Fock)?;
    Ok(Verdict::from_difference(s.first_difference(&f), "Fock images agree"))
}

/// `𝒯_{ℓ'}(ε_I) 𝒟(φ_0) = φ_{nq,ℓ'}(ε_I)` (Schrödinger model).
pub fn operator_forms(p: usize, q: usize, n: usize, lp: usize) -> Result<Verdict> {
    let v = space(p, q)?;
    let d = operator_d(v, n)?;
    let phi = phi_nq(v, n, lp, Model::Schrodinger)?;
    let ops = CochainHom::from_fn(phi.zero_value().clone(), lp, |i| operator_t(i, &d))?;
    Ok(Verdict::from_difference(ops.first_difference(&phi), "operator and formula constructions agree"))
}

/// `h(σ x) = σ h(x)` for all transpositions `σ` of adjacent slots and all
/// basis `x`.
pub fn equivariance(h: &CochainHom) -> Result<Verdict> {
    let k = h.input_degree();
    let space = h.zero_value().complex().coefficient_space();
    for t in 0..k.saturating_sub(1) {
        let sigma = Permutation::transposition(k, t, t + 1);
        for i in MultiIndex::all(h.n(), k) {
            let lhs = h.value(&i.permute(&sigma));
            let rhs = h.value(&i).map_coefficients(k, |j| Ok(SparseTensor::from_index(space, j.permute(&sigma))))?;
            if let Some(d) = lhs.first_difference(&rhs) {
                return Ok(Verdict { holds: false, detail: format!("σ = ({t} {}), ε{i}: {d}", t + 1) });
            }
        }
    }
    Ok(Verdict { holds: true, detail: format!("adjacent transpositions on T^{k}") })
}

/// `φ_{nq,ℓ'} = φ_{nq,0} · φ_{0,ℓ'}` in the Fock model.
pub fn first_product_rule(p: usize, q: usize, n: usize, lp: usize) -> Result<Verdict> {
    let v = space(p, q)?;
    let lhs = phi_nq(v, n, lp, Model::Fock)?;
    let rhs = phi_nq(v, n, 0, Model::Fock)?.hom_mul(&phi_0k(v, n, lp)?)?;
    Ok(Verdict::from_difference(lhs.first_difference(&rhs), "equal on all basis inputs"))
}

/// `φ_{0,k_1} · φ_{0,k_2} = φ_{0,k_1+k_2}`.
pub fn phi0_product(p: usize, q: usize, n: usize, k1: usize, k2: usize) -> Result<Verdict> {
    let v = space(p, q)?;
    let lhs = phi_0k(v, n, k1)?.hom_mul(&phi_0k(v, n, k2)?)?;
    let rhs = phi_0k(v, n, k1 + k2)?;
    Ok(Verdict::from_difference(lhs.first_difference(&rhs), "equal on all basis inputs"))
}

/// The inputs `s(A) ε_I` spanning `S_A(C^n)`.
pub fn schur_inputs(a: &Filling, n: usize) -> Result<Vec<SparseTensor>> {
    let s = a.symmetrizer(false);
    let space = Space::Cn { n };
    let mut out = Vec::new();
    for i in MultiIndex::all(n, a.size()) {
        let x = s.apply(&SparseTensor::from_index(space, i))?;
        if !x.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

/// `φ^W_{0,B} · φ^W_{0,A} = φ^W_{0,B|A}` on `S_{B|A}(C^n)`, with
/// `φ_{0,A} = π_A φ_{0,|A|}`.
pub fn product_rule(w: QuadSpace, n: usize, l: usize, a: &Filling) -> Result<Verdict> {
    let b = Filling::rectangle(n, l);
    let ba = Filling::abut(&b, a)?;
    let phi_b = project_schur(&phi_0k(w, n, n * l)?, &b)?;
    let phi_a = project_schur(&phi_0k(w, n, a.size())?, a)?;
    let lhs = phi_b.hom_mul(&phi_a)?;
    let rhs = project_schur(&phi_0k(w, n, ba.size())?, &ba)?;
    let inputs = schur_inputs(&ba, n)?;
    let diff = lhs.first_difference_on(&rhs, &inputs)?;
    Ok(Verdict::from_difference(diff, format!("equal on {} spanning inputs of S_(B|A)", inputs.len())))
}

fn parabolic(p: usize, q: usize, l: usize) -> Result<ParabolicData> {
    ParabolicData::new(space(p, q)?, l)
}

/// The two sides `r_P(φ_{nq,ℓ'})` and `ι_P(φ^W_{n(q-ℓ),nℓ+ℓ'})`.
pub fn restriction_sides(p: usize, q: usize, n: usize, l: usize, lp: usize) -> Result<(CochainHom, CochainHom)> {
    let pd = parabolic(p, q, l)?;
    let lhs = restrict_rp(&phi_nq(pd.space, n, lp, Model::Fock)?, pd)?;
    let rhs = iota_p(&phi_nq_formula(pd.w_space(), n, n * l + lp, Model::Fock)?, pd)?;
    Ok((lhs, rhs))
}

/// `r_P(φ_{nq,ℓ'}) = ι_P(φ^W_{n(q-ℓ),nℓ+ℓ'})` on all basis inputs.
pub fn restriction(p: usize, q: usize, n: usize, l: usize, lp: usize) -> Result<Verdict> {
    let (lhs, rhs) = restriction_sides(p, q, n, l, lp)?;
    let what = if lhs.is_zero() { "both sides vanish" } else { "equal on all basis inputs" };
    Ok(Verdict::from_difference(lhs.first_difference(&rhs), what))
}

/// `r_P(φ_{nq,A}) = ι_P(φ^W_{n(q-ℓ),B|A})`, compared on `S_A(C^n)`.
pub fn restriction_schur(p: usize, q: usize, n: usize, l: usize, a: &Filling) -> Result<Verdict> {
    let pd = parabolic(p, q, l)?;
    let lp = a.size();
    let b = Filling::rectangle(n, l);
    let ba = Filling::abut(&b, a)?;
    let lhs = restrict_rp(&project_schur(&phi_nq(pd.space, n, lp, Model::Fock)?, a)?, pd)?;
    let rhs = iota_p(&project_schur(&phi_nq_formula(pd.w_space(), n, n * l + lp, Model::Fock)?, &ba)?, pd)?;
    let inputs = schur_inputs(a, n)?;
    let diff = lhs.first_difference_on(&rhs, &inputs)?;
    let what = if lhs.is_zero() && rhs.is_zero() { "both sides vanish" } else { "equal on S_A(C^n)" };
    Ok(Verdict::from_difference(diff, what))
}

/// `r_P(φ_{nq,ℓ'}) = 0`.
pub fn vanishing(p: usize, q: usize, n: usize, l: usize, lp: usize) -> Result<Verdict> {
    let pd = parabolic(p, q, l)?;
    let lhs = restrict_rp(&phi_nq(pd.space, n, lp, Model::Fock)?, pd)?;
    let diff = lhs.values().iter().next().map(|(i, c)| format!("r_P φ(ε{i}) = {c}"));
    Ok(Verdict::from_difference(diff, "r_P φ = 0"))
}

/// `ι_P(φ^W_{0,B}) = sign · φ_{P,nℓ}`.
pub fn iota_of_phi_b(p: usize, q: usize, n: usize, l: usize) -> Result<Verdict> {
    let pd = parabolic(p, q, l)?;
    let b = Filling::rectangle(n, l);
    let phi_b = project_schur(&phi_0k(pd.w_space(), n, n * l)?, &b)?;
    let lhs = iota_p(&phi_b, pd)?.value(&MultiIndex::empty()).clone();
    let rhs = phi_p_nl(pd, n)?.scale(&Scalar::from_int(iota_sign(&pd, n)));
    Ok(Verdict::from_difference(lhs.first_difference(&rhs), "ι_P(φ_0,B) = sign · φ_P"))
}

/// `ι_P(a·h) = a·ι_P(h)` for `a = φ^W_{n(q-ℓ),0}` and `h = φ^W_{0,k}`.
pub fn iota_module_property(p: usize, q: usize, n: usize, l: usize, k: usize) -> Result<Verdict> {
    let pd = parabolic(p, q, l)?;
    let w = pd.w_space();
    let a = phi_nq_formula(w, n, 0, Model::Fock)?;
    let h = phi_0k(w, n, k)?;
    let lhs = iota_p(&a.hom_mul(&h)?, pd)?;
    let transported = transport_to_face(a.value(&MultiIndex::empty()), pd)?;
    let ih = iota_p(&h, pd)?;
    let rhs = ih.map(|c| transported.dga_mul(c))?;
    Ok(Verdict::from_difference(lhs.first_difference(&rhs), "module property holds"))
}

/// A `C_W` cochain with `k = 0` viewed in `A_P`: labels and Weil slot
/// unchanged up to the shift of `W`-labels into `V`-labels.
pub fn transport_to_face(c: &super::Cochain, pd: ParabolicData) -> Result<super::Cochain> {
    let n = c.complex().n();
    let (j, r, k) = c.degrees();
    if k != 0 {
        return Err(Error::Unsupported("only coefficient degree 0 is transported".into()));
    }
    let mut out = super::Cochain::zero(super::Complex::Face { pd, n }, c.model(), j, r, 0);
    for ((w, i), poly) in c.terms() {
        let labels: Vec<CotLabel> = w.labels().iter().map(|x| x.shift_v(pd.l as u8)).collect();
        let (wd, s) = Wedge::from_labels(&labels).expect("shift preserves distinctness");
        out.add_term(wd, *i, poly, &Scalar::from_int(s));
    }
    Ok(out)
}

/// `d_n τ(s_{B|A}(w)) = 0` for every basis tensor `w` of `T^{nℓ+ℓ'}(W)`.
pub fn nilpotent_cocycle(p: usize, q: usize, n: usize, l: usize, a: &Filling) -> Result<Verdict> {
    let pd = parabolic(p, q, l)?;
    let wdim = pd.m() - 2 * l;
    if wdim == 0 {
        return Ok(Verdict { holds: true, detail: "W = 0: T(W) has no tensors of positive degree".into() });
    }
    let b = Filling::rectangle(n, l);
    let ba = Filling::abut(&b, a)?;
    let s = ba.symmetrizer(false);
    let wsp = pd.w_space().space();
    let mut checked = 0;
    for idx in MultiIndex::all(wdim, ba.size()) {
        let x = s.apply(&SparseTensor::from_index(wsp, idx))?;
        if x.is_zero() {
            continue;
        }
        checked += 1;
        let t = tau(pd, n, &x, TauOrder::Ascending)?;
        let d = nilpotent_differential(&t)?;
        if !d.is_zero() {
            return Ok(Verdict { holds: false, detail: format!("w = e{idx}: d τ = {d}") });
        }
    }
    Ok(Verdict { holds: true, detail: format!("{checked} nonzero symmetrized basis tensors") })
}

fn sym_tensor(space: Space, labels: &[u8]) -> SparseTensor {
    let b = labels.len();
    let mut out = SparseTensor::zero(space, b);
    let base = SparseTensor::basis(space, labels);
    let c = Scalar::from_bigint(factorial(b)).inv().expect("nonzero");
    for sigma in Permutation::all(b) {
        out.add_assign(&base.permute(&sigma).scale(&c));
    }
    out
}

fn subsets(n: usize, a: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, a, cur, out);
            cur.pop();
        }
    }
    rec(0, n, a, &mut cur, &mut out);
    out
}

/// `τ` with the `u'` slots given explicitly (ascending, some omitted) on a
/// tensor over `W`; the result is a form with constant coefficient.
fn tau_partial(pd: &ParabolicData, w: &SparseTensor, slots: &[usize]) -> NilCochain {
    let l = pd.l;
    let mut out = NilCochain::zero(*pd, slots.len(), 0);
    for (idx, c) in w.terms() {
        let mut sign = 1;
        let labels: Vec<CotLabel> = (0..idx.len())
            .map(|s| {
                let a = idx.get(s) as usize + l;
                if a > pd.space.p {
                    sign = -sign;
                }
                CotLabel::Nu(a as u8, slots[s] as u8)
            })
            .collect();
        if let Some((wd, s)) = Wedge::from_labels(&labels) {
            out.add_term(wd, MultiIndex::empty(), &(c * Scalar::from_int(s * sign)));
        }
    }
    out
}

/// `g*` on `W` as a tensor in `W`-labels, or on `V` in `V`-labels.
fn metric(space: Space) -> SparseTensor {
    let mut g = SparseTensor::zero(space, 2);
    for a in 1..=space.dim() as u8 {
        g.add_term(MultiIndex::new(&[a, a]), &Scalar::from_int(space.sign(a)));
    }
    g
}

fn coefficient_form(pd: &ParabolicData, t: &SparseTensor) -> NilCochain {
    let mut out = NilCochain::zero(*pd, 0, t.degree());
    out.add_form_tensor(&Wedge::empty(), t, &Scalar::one());
    out
}

/// The exactness identity for `n = 1`: with `w ∈ T^{ℓ+ℓ'-2}(W)` a basis
/// tensor (given by `W`-labels), returns `(d(primitive), expression)` where
/// expression `= C(ℓ+ℓ', ℓ) τ_{ℓ,ℓ'}(s_{B|A}(E_{12}(g_W*) w)) - Σ_K τ_ℓ(s_B(w_K)) ⊗ s_A(g_V* ⊗ w_K̄)`
/// and the primitive is the recorded combination of `(u'_{s1} ∧ u'_{s2}) ∧ τ^{(s1,s2)}`
/// and `τ^{(s)} ⊗ s_A(u'_s ⊗ ⋯)` terms. Here `A` is the one-row filling of
/// size `ℓ'`, `B` the one-row filling of size `ℓ`.
pub fn nilpotent_primitive_sides(p: usize, q: usize, l: usize, lp: usize, w: &[u8]) -> Result<(NilCochain, NilCochain)> {
    let pd = parabolic(p, q, l)?;
    if l < 2 {
        return Err(Error::InvalidParameters("the primitive needs l >= 2".into()));
    }
    if w.len() + 2 != l + lp {
        return Err(Error::DegreeMismatch { expected: l + lp - 2, found: w.len() });
    }
    let wsp = pd.w_space().space();
    let vsp = pd.space.space();
    let to_v = |t: &SparseTensor| {
        let mut out = SparseTensor::zero(vsp, t.degree());
        for (i, c) in t.terms() {
            out.add_term(i.shift(l as i32), c);
        }
        out
    };
    let sym_a = |t: &SparseTensor| -> Result<SparseTensor> {
        if t.degree() == 0 {
            return Ok(t.clone());
        }
        Filling::new(vec![(1..=t.degree()).collect()])?.symmetrizer(false).apply(t)
    };
    let wt = SparseTensor::basis(wsp, w);
    let nw = w.len();

    // Left side of the identity.
    let inserted = metric(wsp).tensor(&wt);
    let sym_all = Filling::new(vec![(1..=l + lp).collect()])?.symmetrizer(false).apply(&inserted)?;
    let binom = Scalar::from_bigint(factorial(l + lp) / (factorial(l) * factorial(lp)));
    let mut expr = tau(pd, 1, &sym_all, TauOrder::Ascending)?.scale(&binom);
    for k in subsets(nw, l) {
        let wk: Vec<u8> = k.iter().map(|&i| w[i]).collect();
        let rest: Vec<u8> = (0..nw).filter(|i| !k.contains(i)).map(|i| w[i]).collect();
        let tk = tau(pd, 1, &sym_tensor(wsp, &wk), TauOrder::Ascending)?;
        let coeff = sym_a(&metric(vsp).tensor(&to_v(&SparseTensor::basis(wsp, &rest))))?;
        expr.add_scaled(&Scalar::from_int(-1), &tk.wedge(&coefficient_form(&pd, &coeff))?)?;
    }

    // The primitive.
    let mut prim = NilCochain::zero(pd, l - 1, lp);
    let c1 = Scalar::from_frac(2, (l * (l - 1)) as i64);
    for i in subsets(nw, l - 2) {
        let wi: Vec<u8> = i.iter().map(|&x| w[x]).collect();
        let rest: Vec<u8> = (0..nw).filter(|x| !i.contains(x)).map(|x| w[x]).collect();
        let coeff = sym_a(&to_v(&SparseTensor::basis(wsp, &rest)))?;
        for s1 in 1..=l {
            for s2 in s1 + 1..=l {
                let slots: Vec<usize> = (1..=l).filter(|&s| s != s1 && s != s2).collect();
                let t = tau_partial(&pd, &sym_tensor(wsp, &wi), &slots);
                let mut z = NilCochain::zero(pd, 1, 0);
                z.add_term(Wedge::from_labels(&[CotLabel::Zeta(s1 as u8, s2 as u8)]).unwrap().0, MultiIndex::empty(), &Scalar::one());
                let sign = if (s1 + s2) % 2 == 0 { 1 } else { -1 };
                let term = z.wedge(&t)?.wedge(&coefficient_form(&pd, &coeff))?;
                prim.add_scaled(&(&c1 * Scalar::from_int(sign)), &term)?;
            }
        }
    }
    let c2 = Scalar::from_frac(2, l as i64);
    for j in subsets(nw, l - 1) {
        let wj: Vec<u8> = j.iter().map(|&x| w[x]).collect();
        let rest: Vec<u8> = (0..nw).filter(|x| !j.contains(x)).map(|x| w[x]).collect();
        for s in 1..=l {
            let slots: Vec<usize> = (1..=l).filter(|&x| x != s).collect();
            let t = tau_partial(&pd, &sym_tensor(wsp, &wj), &slots);
            let mut us = SparseTensor::zero(vsp, 1);
            for (a, c) in pd.u_prime(s) {
                us.add_term(MultiIndex::new(&[a]), &c);
            }
            let coeff = sym_a(&us.tensor(&to_v(&SparseTensor::basis(wsp, &rest))))?;
            let sign = if s % 2 == 0 { 1 } else { -1 };
            let term = t.wedge(&coefficient_form(&pd, &coeff))?;
            prim.add_scaled(&(&c2 * Scalar::from_int(sign)), &term)?;
        }
    }
    Ok((nilpotent_differential(&prim)?, expr))
}

/// `d(primitive) = expression` for the recorded `n = 1` primitive.
pub fn nilpotent_primitive(p: usize, q: usize, l: usize, lp: usize, w: &[u8]) -> Result<Verdict> {
    let (dp, expr) = nilpotent_primitive_sides(p, q, l, lp, w)?;
    Ok(Verdict::from_difference(dp.first_difference(&expr), format!("d(primitive) = {expr}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(k: usize) -> Filling {
        Filling::new(vec![(1..=k).collect()]).unwrap()
    }

    #[test]
    fn closedness_holds_on_small_spaces() {
        for (p, q, n) in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (2, 2, 2)] {
            assert!(closedness(p, q, n, 0).unwrap().holds, "({p},{q},{n})");
        }
        assert!(closedness(2, 1, 1, 1).unwrap().holds);
    }

    #[test]
    fn restriction_examples() {
        assert!(restriction(2, 2, 1, 1, 0).unwrap().holds);
        assert!(restriction(3, 1, 1, 1, 0).unwrap().holds);
        let both_zero = restriction(2, 2, 2, 1, 0).unwrap();
        assert!(both_zero.holds);
        assert_eq!(both_zero.detail, "both sides vanish");
        assert!(vanishing(2, 2, 2, 1, 1).unwrap().holds);
        assert!(!vanishing(2, 2, 1, 1, 0).unwrap().holds);
    }

    #[test]
    fn restriction_on_schur_images() {
        assert!(restriction_schur(3, 1, 2, 1, &row(1)).unwrap().holds);
        assert!(restriction_schur(3, 2, 1, 2, &row(1)).unwrap().holds);
    }

    #[test]
    fn restriction_sides_match_hand_value() {
        // (p,q,n,l,l') = (2,2,1,1,0): W has the single positive row 2 and
        // negative row 3; both sides are -2^{-3/2} (2πi)^{-2} z_{11}^2 ⊗ w2,3 ∧ nu2,1.
        let (lhs, rhs) = restriction_sides(2, 2, 1, 1, 0).unwrap();
        assert_eq!(lhs, rhs);
        let v = lhs.value(&MultiIndex::empty());
        assert_eq!(v.terms().len(), 1);
        let ((w, _), poly) = v.terms().iter().next().unwrap();
        assert_eq!(w.labels(), &[CotLabel::Omega(2, 3), CotLabel::Nu(2, 1)]);
        let expected = -(Scalar::sqrt2_pow(3) * Scalar::two_pi_i() * Scalar::two_pi_i()).inv().unwrap();
        assert_eq!(poly.coeff(&[2, 0]), expected);
    }

    #[test]
    fn operator_and_fock_cross_checks() {
        assert!(intertwiner(2, 1, 1, 1).unwrap().holds);
        assert!(operator_forms(1, 1, 1, 0).unwrap().holds);
        assert!(operator_forms(2, 1, 1, 1).unwrap().holds);
        assert!(k_invariance(2, 1, 1, 1).unwrap().holds);
    }

    #[test]
    fn product_rules_small() {
        assert!(first_product_rule(2, 1, 1, 1).unwrap().holds);
        assert!(phi0_product(2, 1, 1, 1, 1).unwrap().holds);
        assert!(product_rule(QuadSpace::new(2, 1).unwrap(), 2, 1, &row(1)).unwrap().holds);
    }

    #[test]
    fn iota_properties() {
        assert!(iota_of_phi_b(2, 2, 1, 1).unwrap().holds);
        assert!(iota_of_phi_b(3, 2, 1, 1).unwrap().holds);
        assert!(iota_module_property(3, 2, 1, 1, 2).unwrap().holds);
    }

    #[test]
    fn nilpotent_checks() {
        assert!(nilpotent_cocycle(2, 2, 1, 1, &row(1)).unwrap().holds);
        let v = nilpotent_primitive(3, 2, 2, 0, &[]).unwrap();
        assert!(v.holds, "{}", v.detail);
        let (dp, expr) = nilpotent_primitive_sides(3, 2, 2, 0, &[]).unwrap();
        assert!(!expr.is_zero());
        assert_eq!(dp, expr);
    }

    #[test]
    fn primitive_rejects_bad_degrees() {
        assert!(nilpotent_primitive(3, 2, 2, 0, &[1]).is_err());
        assert!(nilpotent_primitive(3, 2, 1, 1, &[]).is_err());
    }
}
