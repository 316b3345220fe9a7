//! The boundary maps: `r_P` from `C_V` to `A_P` and `ι_P` from `C_W` to `A_P`.

use super::{Cochain, CochainHom, Complex, Model, Wedge};
use crate::error::{Error, Result};
use crate::liegeom::{CotLabel, ParabolicData};
use crate::multitensor::{MultiIndex, Space, SparseTensor};
use crate::scalars::Scalar;
use crate::tableaux::Filling;
use crate::weil::{fock_restrict, FockPoly};

/// Which `u'_i` the slots of a length-`ℓ` block are paired with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TauOrder {
    /// Slot `t` of a block (1-based) pairs with `u'_t`.
    Ascending,
    /// Slot `t` pairs with `u'_{ℓ+1-t}`, matching `ν_{·,ℓ} ∧ ⋯ ∧ ν_{·,1}`.
    Descending,
}

/// Wedge of the `ν`-labels of `(e_{w_1} ⊗ u'_{t_1}) ∧ ⋯`, with `W`-labels
/// `w_s` and `e_a ⊗ u'_i = ±ν_{a,i}` (`+` for positive `a`). `None` when
/// two factors coincide.
pub fn tau_labels(pd: &ParabolicData, w: &MultiIndex, order: TauOrder) -> Option<(Wedge, i64)> {
    let l = pd.l;
    let mut sign = 1;
    let labels: Vec<CotLabel> = (0..w.len())
        .map(|s| {
            let a = w.get(s) as usize + l;
            if a > pd.space.p {
                sign = -sign;
            }
            let t = s % l;
            let i = match order {
                TauOrder::Ascending => t + 1,
                TauOrder::Descending => l - t,
            };
            CotLabel::Nu(a as u8, i as u8)
        })
        .collect();
    Wedge::from_labels(&labels).map(|(wd, s)| (wd, s * sign))
}

/// `(-1)^{nℓ((q-ℓ)(n-1)/2 + 1)}`.
pub(crate) fn iota_sign(pd: &ParabolicData, n: usize) -> i64 {
    let (l, q) = (pd.l, pd.space.q);
    let e = n * l * (q - l) * (n - 1) / 2 + n * l;
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `ι_P`: for `h` on `C_W^{j,r,k}` (over `W` with its own labels),
/// `ι_P(h)(ε_y) = sign · (τ_{nℓ} ⊗ 1)(h(s(B)ε_B ⊗ ε_y))` in `A_P^{j+ℓ,r+nℓ,k-nℓ}`.
/// The `p_W` labels and the remaining coefficients are rewritten in
/// `V`-labels. For `k < nℓ` the result is the zero map on `T^0`.
pub fn iota_p(h: &CochainHom, pd: ParabolicData) -> Result<CochainHom> {
    let zero = h.zero_value();
    let Complex::Global { space, n } = zero.complex() else {
        return Err(Error::Unsupported("ι_P is defined on C_W".into()));
    };
    if space != pd.w_space() {
        return Err(Error::SpaceMismatch(format!("{space:?} is not W = {:?}", pd.w_space())));
    }
    let l = pd.l;
    let (j, r, k) = zero.degrees();
    let face = Complex::Face { pd, n };
    if k < n * l {
        return Ok(CochainHom::zero_map(Cochain::zero(face, zero.model(), j + l, r + n * l, 0), 0));
    }
    let sign = Scalar::from_int(iota_sign(&pd, n));
    let b = Filling::rectangle(n, l);
    let s_eps_b = b.symmetrizer(false).apply(&b.epsilon(n))?;
    let cn = Space::Cn { n };
    let target = Cochain::zero(face, zero.model(), j + l, r + n * l, k - n * l);
    CochainHom::from_fn(target.clone(), k - n * l, |y| {
        let v = h.eval(&s_eps_b.tensor(&SparseTensor::from_index(cn, *y)))?;
        let mut out = target.clone();
        for ((w, idx), poly) in v.terms() {
            let (w1, w2) = idx.split(n * l);
            let Some((nu, s1)) = tau_labels(&pd, &w1, TauOrder::Descending) else { continue };
            let omega: Vec<CotLabel> = w.labels().iter().map(|x| x.shift_v(l as u8)).collect();
            let Some((om, s2)) = Wedge::from_labels(&omega) else { continue };
            let Some((wd, s3)) = om.wedge(&nu) else { continue };
            out.add_term(wd, w2.shift(l as i32), poly, &(&sign * Scalar::from_int(s1 * s2 * s3)));
        }
        Ok(out)
    })
}

/// `r_P`: Fock restriction on the Weil slot, `σ*` on every label with the
/// `gl(E)*` and `a*` components dropped, coefficients unchanged.
pub fn restrict_rp(h: &CochainHom, pd: ParabolicData) -> Result<CochainHom> {
    let zero = h.zero_value();
    let Complex::Global { space, n } = zero.complex() else {
        return Err(Error::Unsupported("r_P is defined on C_V".into()));
    };
    if space != pd.space {
        return Err(Error::SpaceMismatch(format!("{space:?} vs {:?}", pd.space)));
    }
    if zero.model() != Model::Fock {
        return Err(Error::ModelMismatch("r_P is computed in the Fock model".into()));
    }
    let face = Complex::Face { pd, n };
    let m = space.m();
    h.map(|c| {
        let (j, r, k) = c.degrees();
        let mut out = Cochain::zero(face, Model::Fock, j, r, k);
        for ((w, idx), poly) in c.terms() {
            let f = fock_restrict(&FockPoly::new(m, n, poly.clone())?, &pd)?;
            if f.is_zero() {
                continue;
            }
            let mut combos: Vec<(Vec<CotLabel>, Scalar)> = vec![(Vec::new(), Scalar::one())];
            for label in w.labels() {
                let images: Vec<(CotLabel, Scalar)> = pd
                    .sigma_pullback(label)?
                    .into_iter()
                    .filter(|(x, _)| matches!(x, CotLabel::Omega(..) | CotLabel::Nu(..) | CotLabel::Zeta(..)))
                    .collect();
                let mut next = Vec::with_capacity(combos.len() * images.len());
                for (ls, c0) in &combos {
                    for (x, c1) in &images {
                        let mut v = ls.clone();
                        v.push(*x);
                        next.push((v, c0 * c1));
                    }
                }
                combos = next;
            }
            for (ls, c0) in combos {
                if let Some((wd, s)) = Wedge::from_labels(&ls) {
                    out.add_term(wd, *idx, f.poly(), &(c0 * Scalar::from_int(s)));
                }
            }
        }
        Ok(out)
    })
}
