//! The special forms `φ_{nq,ℓ'}`, `φ_{0,k}` and `φ_{P,nℓ}`, the operator
//! construction through `𝒟` and `𝒯`, and the Schur-Weyl projections.

use std::collections::HashMap;

use super::{Cochain, CochainHom, Complex, Model, Wedge};
use crate::error::{Error, Result};
use crate::liegeom::{CotLabel, ParabolicData, QuadSpace};
use crate::multitensor::{HarmonicProjector, MultiIndex, Space, SparseTensor};
use crate::scalars::Scalar;
use crate::tableaux::Filling;
use crate::weil::{phi_delta, raise, var_index, DeltaMatrix, GaussPoly, Poly};

fn inv_two_pi_i_pow(k: usize) -> Scalar {
    Scalar::two_pi_i().inv().expect("2 pi i is invertible").pow(k as u32)
}

/// One summand of the `α`-sum: the sorted wedge, its sign and the
/// exponents contributed by `α`.
struct AlphaTerm {
    wedge: Wedge,
    sign: i64,
    exps: Vec<u8>,
}

fn alpha_terms(space: &QuadSpace, n: usize) -> Vec<AlphaTerm> {
    let (p, q, m) = (space.p, space.q, space.m());
    let mut out = Vec::new();
    for alpha in MultiIndex::all(p, n * q) {
        let labels: Vec<CotLabel> = (0..n * q)
            .map(|s| CotLabel::Omega(alpha.get(s), (p + 1 + s % q) as u8))
            .collect();
        let Some((wedge, sign)) = Wedge::from_labels(&labels) else { continue };
        let mut exps = vec![0u8; m * n];
        for s in 0..n * q {
            exps[var_index(n, alpha.get(s) as usize, s / q + 1)] += 1;
        }
        out.push(AlphaTerm { wedge, sign, exps });
    }
    out
}

/// `φ_{nq,ℓ'}` on `V`: for each `ε_I`,
/// `2^{-(nq/2+ℓ')} Σ_{α,β} φ_{Δ(α,β,I)} ⊗ ω_α ⊗ e_β` in the Schrödinger
/// model, and the same sum with `(2πi)^{-(nq+ℓ')} z_{α} z_{β,I}` in the
/// Fock model. `α` runs over `n x q` matrices and `β` over `ℓ'`-tuples
/// with entries in `1..=p`.
pub fn phi_nq(space: QuadSpace, n: usize, lp: usize, model: Model) -> Result<CochainHom> {
    if n == 0 || n > space.p {
        return Err(Error::InvalidParameters(format!("genus n = {n} outside 1..={}", space.p)));
    }
    phi_nq_formula(space, n, lp, model)
}

/// The defining sum without the range check `n <= p`; for `n > p` it is
/// simply evaluated (and typically vanishes).
pub(crate) fn phi_nq_formula(space: QuadSpace, n: usize, lp: usize, model: Model) -> Result<CochainHom> {
    let (p, q, m) = (space.p, space.q, space.m());
    let complex = Complex::Global { space, n };
    let alphas = alpha_terms(&space, n);
    let betas = MultiIndex::all(p, lp);
    let mut prefactor = Scalar::sqrt2_pow(-((n * q + 2 * lp) as i64));
    if model == Model::Fock {
        prefactor = prefactor * inv_two_pi_i_pow(n * q + lp);
    }
    let zero = Cochain::zero(complex, model, q, n * q, lp);
    CochainHom::from_fn(zero.clone(), lp, |i| {
        let mut out = zero.clone();
        let mut cache: HashMap<Vec<u8>, Poly> = HashMap::new();
        for a in &alphas {
            let c = &prefactor * Scalar::from_int(a.sign);
            for beta in &betas {
                let mut exps = a.exps.clone();
                for s in 0..lp {
                    exps[var_index(n, beta.get(s) as usize, i.get(s) as usize)] += 1;
                }
                let poly = match model {
                    Model::Fock => Poly::monomial(exps, Scalar::one()),
                    Model::Schrodinger => cache
                        .entry(exps)
                        .or_insert_with_key(|e| {
                            let d = DeltaMatrix::from_exponents(m, n, e.clone()).expect("shape");
                            phi_delta(&d).into_poly()
                        })
                        .clone(),
                };
                out.add_term(a.wedge.clone(), *beta, &poly, &c);
            }
        }
        Ok(out)
    })
}

/// `φ_{0,k}(ε_I) = 2^{-k} (2πi)^{-k} Σ_β z_{β,I} ⊗ e_β` (Fock model).
pub fn phi_0k(space: QuadSpace, n: usize, k: usize) -> Result<CochainHom> {
    if n == 0 {
        return Err(Error::InvalidParameters("genus must be positive".into()));
    }
    let complex = Complex::Global { space, n };
    let m = space.m();
    let c = Scalar::from_frac(1, 1 << k) * inv_two_pi_i_pow(k);
    let zero = Cochain::zero(complex, Model::Fock, 0, 0, k);
    let betas = MultiIndex::all(space.p, k);
    CochainHom::from_fn(zero.clone(), k, |i| {
        let mut out = zero.clone();
        for beta in &betas {
            let mut exps = vec![0u8; m * n];
            for s in 0..k {
                exps[var_index(n, beta.get(s) as usize, i.get(s) as usize)] += 1;
            }
            out.add_term(Wedge::empty(), *beta, &Poly::monomial(exps, Scalar::one()), &c);
        }
        Ok(out)
    })
}

/// `φ_{P,nℓ} = 2^{-nℓ} (2πi)^{-nℓ} Σ_γ u_1^ℓ ⊗ z_{γ_1,1} ⋯ z_{γ_n,n} ⊗ ν_{γ_1} ∧ ⋯ ∧ ν_{γ_n}`
/// with `ν_{γ_j} = ν_{γ_{j1},ℓ} ∧ ⋯ ∧ ν_{γ_{jℓ},1}` and `γ_{jt}` in `ℓ+1..=p`.
pub fn phi_p_nl(pd: ParabolicData, n: usize) -> Result<Cochain> {
    if n == 0 {
        return Err(Error::InvalidParameters("genus must be positive".into()));
    }
    let (p, l) = (pd.space.p, pd.l);
    let complex = Complex::Face { pd, n };
    let mw = complex.weil_rows();
    let mut out = Cochain::zero(complex, Model::Fock, l, n * l, 0);
    if p <= l {
        return Ok(out);
    }
    let c = Scalar::from_frac(1, 1 << (n * l)) * inv_two_pi_i_pow(n * l);
    for gamma in MultiIndex::all(p - l, n * l) {
        let labels: Vec<CotLabel> =
            (0..n * l).map(|s| CotLabel::Nu(gamma.get(s) + l as u8, (l - s % l) as u8)).collect();
        let Some((wedge, sign)) = Wedge::from_labels(&labels) else { continue };
        let mut exps = vec![0u8; mw * n];
        for s in 0..n * l {
            exps[var_index(n, gamma.get(s) as usize, s / l + 1)] += 1;
        }
        out.add_term(wedge, MultiIndex::empty(), &Poly::monomial(exps, Scalar::one()), &(&c * Scalar::from_int(sign)));
    }
    Ok(out)
}

/// Replaces each term `f ⊗ ω ⊗ e_I` by `Σ_α ℋ_{α,col}(f) ⊗ (extra(α) applied to ω, I)`.
fn apply_raising(
    c: &Cochain,
    col: usize,
    r_out: usize,
    k_out: usize,
    extra: impl Fn(usize, &Wedge, &MultiIndex) -> Option<(Wedge, MultiIndex, i64)>,
) -> Result<Cochain> {
    let Complex::Global { space, n } = c.complex() else {
        return Err(Error::Unsupported("operator forms are defined on C_V".into()));
    };
    let m = space.m();
    let mut out = Cochain::zero(c.complex(), c.model(), c.j, r_out, k_out);
    for ((w, i), poly) in c.terms() {
        let g = GaussPoly::new(m, n, poly.clone())?;
        for alpha in 1..=space.p {
            if let Some((w2, i2, s)) = extra(alpha, w, i) {
                out.add_term(w2, i2, raise(&g, alpha, col).poly(), &Scalar::from_int(s));
            }
        }
    }
    Ok(out)
}

/// `𝒟(φ_0)`: the product over `i = 1..n`, `μ = p+1..p+q` of
/// `Σ_α ℋ_{α i} ⊗ A(ω_{αμ})`, times `2^{-nq/2}` and `u_1^q`
/// (Schrödinger model). The rightmost factor acts first.
pub fn operator_d(space: QuadSpace, n: usize) -> Result<Cochain> {
    let (p, q) = (space.p, space.q);
    let complex = Complex::Global { space, n };
    let mut c = Cochain::one(complex, Model::Schrodinger, q);
    let mut deg = 0;
    for i in (1..=n).rev() {
        for mu in (p + 1..=p + q).rev() {
            deg += 1;
            c = apply_raising(&c, i, deg, 0, |alpha, w, idx| {
                w.prepend(CotLabel::Omega(alpha as u8, mu as u8)).map(|(w2, s)| (w2, *idx, s))
            })?;
        }
    }
    Ok(c.scale(&Scalar::sqrt2_pow(-((n * q) as i64))))
}

/// `𝒯_{ℓ'}(ε_I) c = 𝒟'_{i_1} ∘ ⋯ ∘ 𝒟'_{i_ℓ'} c` with
/// `𝒟'_i = ½ Σ_α ℋ_{αi} ⊗ 1 ⊗ A(e_α)` (Schrödinger model).
pub fn operator_t(idx: &MultiIndex, c: &Cochain) -> Result<Cochain> {
    let mut out = c.clone();
    let half = Scalar::from_frac(1, 2);
    for s in (0..idx.len()).rev() {
        let k = out.k + 1;
        out = apply_raising(&out, idx.get(s) as usize, out.r, k, |alpha, w, i| {
            Some((w.clone(), MultiIndex::new(&[alpha as u8]).concat(i), 1))
        })?
        .scale(&half);
    }
    Ok(out)
}

fn check_filling(h: &CochainHom, a: &Filling) -> Result<()> {
    if a.size() != h.zero_value().degrees().2 {
        return Err(Error::DegreeMismatch { expected: h.zero_value().degrees().2, found: a.size() });
    }
    Ok(())
}

/// `π_A`: post-composition with `s(A)` on the coefficient slot.
pub fn project_schur(h: &CochainHom, a: &Filling) -> Result<CochainHom> {
    check_filling(h, a)?;
    let s = a.symmetrizer(false);
    let space = h.zero_value().complex().coefficient_space();
    h.map(|c| c.map_coefficients(c.degrees().2, |i| s.apply(&SparseTensor::from_index(space, *i))))
}

/// `π_A` realized as pre-composition with `s(A)` on `T^k(C^n)`. Agrees with
/// [`project_schur`] on `S_k`-equivariant maps.
pub fn project_schur_pre(h: &CochainHom, a: &Filling) -> Result<CochainHom> {
    if a.size() != h.input_degree() {
        return Err(Error::DegreeMismatch { expected: h.input_degree(), found: a.size() });
    }
    let s = a.symmetrizer(false);
    let space = Space::Cn { n: h.n() };
    CochainHom::from_fn(h.zero_value().clone(), h.input_degree(), |i| {
        h.eval(&s.apply(&SparseTensor::from_index(space, *i))?)
    })
}

/// `π_[A] = (1 ⊗ ⋯ ⊗ ℋ) ∘ π_A`.
pub fn project_harmonic(h: &CochainHom, a: &Filling) -> Result<CochainHom> {
    let projected = project_schur(h, a)?;
    let space = h.zero_value().complex().coefficient_space();
    let k = a.size();
    let hp = HarmonicProjector::new(space, k)?;
    projected.map(|c| c.map_coefficients(k, |i| hp.project(&SparseTensor::from_index(space, *i))))
}
