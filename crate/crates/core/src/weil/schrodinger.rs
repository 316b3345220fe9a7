//! Schrödinger model: Hermite raising operators, the geometric Lie algebra
//! action, the one-variable Fourier transform and the local restriction.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{var_index, DeltaMatrix, GaussPoly, Poly};
use crate::error::Result;
use crate::liegeom::{LieElement, ParabolicData, QuadSpace};
use crate::scalars::Scalar;

fn inv_two_pi() -> Scalar {
    Scalar::from_frac(1, 2) * Scalar::pi_pow(-1)
}

/// `H_k` normalized by `H_{k+1} = 2y H_k - (1/2pi) H_k'`, `H_0 = 1`, as a
/// polynomial in one variable.
pub fn hermite(k: usize) -> Poly {
    let mut h = Poly::one(1);
    for _ in 0..k {
        h = raise_poly(&h, 0);
    }
    h
}

fn raise_poly(p: &Poly, i: usize) -> Poly {
    let mut out = p.mul_var(i).scale(&Scalar::from_int(2));
    out.add_scaled(&-inv_two_pi(), &p.deriv(i));
    out
}

/// `(x_{rj} - (1/2pi) d/dx_{rj})` applied to `p * gaussian`.
pub fn raise(phi: &GaussPoly, r: usize, j: usize) -> GaussPoly {
    let i = var_index(phi.n, r, j);
    GaussPoly { m: phi.m, n: phi.n, poly: raise_poly(&phi.poly, i) }
}

/// `prod_{r,j} H_{delta_rj}(x_rj)`.
pub fn phi_delta(delta: &DeltaMatrix) -> GaussPoly {
    let (m, n) = (delta.rows(), delta.cols());
    let mut poly = Poly::one(m * n);
    for (i, &d) in delta.entries().iter().enumerate() {
        if d > 0 {
            let h = hermite(d as usize);
            poly = poly.mul(&Poly::univariate(m * n, i, &h.univariate_coeffs(0)));
        }
    }
    GaussPoly { m, n, poly }
}

/// Lie algebra action `-(sum_{r,j} (X x_j)_r d/dx_{rj})` on `p * gaussian`,
/// the derivative of `phi(g^{-1} x)`.
pub fn geometric_action(x: &LieElement, space: &QuadSpace, phi: &GaussPoly) -> GaussPoly {
    let (m, n) = (phi.m, phi.n);
    let two_pi = Scalar::from_int(2) * Scalar::pi();
    let mut out = Poly::zero(m * n);
    for s in 1..=m {
        for (r, k) in x.column(space, s) {
            let r = r as usize;
            for j in 1..=n {
                let rj = var_index(n, r, j);
                let sj = var_index(n, s, j);
                // d/dx_{rj} (p G) = (dp - 2 pi x_{rj} p) G
                let mut dp = phi.poly.deriv(rj);
                dp.add_scaled(&-&two_pi, &phi.poly.mul_var(rj));
                out.add_scaled(&-&k, &dp.mul_var(sj));
            }
        }
    }
    GaussPoly { m, n, poly: out }
}

/// Fourier transform of `p(y) exp(-pi y^2)` with kernel `exp(-2 pi i y xi)`,
/// returned as the polynomial part in `xi`.
pub fn fourier_1d(f: &Poly) -> Poly {
    assert_eq!(f.nvars(), 1, "fourier_1d takes a one-variable polynomial");
    // FT(y^k G) = P_k G with P_{k+1} = (i/2pi)(P_k' - 2 pi xi P_k).
    let coeffs = f.univariate_coeffs(0);
    let factor = Scalar::i() * inv_two_pi();
    let two_pi = Scalar::from_int(2) * Scalar::pi();
    let mut pk = Poly::one(1);
    let mut out = Poly::zero(1);
    for (k, c) in coeffs.iter().enumerate() {
        out.add_scaled(c, &pk);
        if k + 1 < coeffs.len() {
            let mut next = pk.deriv(0);
            next.add_scaled(&-&two_pi, &pk.mul_var(0));
            pk = next.scale(&factor);
        }
    }
    out
}

/// `int y^k exp(-pi y^2) dy = (k-1)!! / (2 pi)^{k/2}` for even `k`, else 0.
pub fn moment(k: usize) -> Scalar {
    if k % 2 == 1 {
        return Scalar::zero();
    }
    let mut dfact = BigInt::from(1);
    let mut t = 1;
    while t < k {
        dfact *= t;
        t += 2;
    }
    let j = (k / 2) as i64;
    Scalar::from_ratio(BigRational::new(dfact, BigInt::from(2).pow(j as u32))) * Scalar::pi_pow(-j)
}

/// Local restriction to `W^n`: pass to Witt coordinates, Fourier transform
/// in the `E`-coordinates, evaluate at `xi = 0` and `u' = 0`.
///
/// At `u' = 0` both `x_r` and `x_{m+1-r}` (for `r <= l`) equal `y_r/sqrt2`,
/// and the Fourier transform at `0` is the Gaussian moment, so each
/// monomial is handled in closed form.
pub fn weil_restrict(phi: &GaussPoly, pd: &ParabolicData) -> Result<GaussPoly> {
    let (m, n, l) = (pd.m(), phi.n, pd.l);
    if phi.m != m {
        return Err(crate::Error::ShapeMismatch(format!("{} rows for a {m}-dimensional space", phi.m)));
    }
    let mw = m - 2 * l;
    let poly = phi.poly.remap(mw * n, |e| {
        let mut factor = Scalar::one();
        for r in 1..=l {
            for j in 1..=n {
                let k = (e[var_index(n, r, j)] + e[var_index(n, m + 1 - r, j)]) as usize;
                if k % 2 == 1 {
                    return None;
                }
                factor = factor * Scalar::sqrt2_pow(-(k as i64)) * moment(k);
            }
        }
        let mut out = vec![0u8; mw * n];
        for r in l + 1..=m - l {
            for j in 1..=n {
                out[var_index(n, r - l, j)] = e[var_index(n, r, j)];
            }
        }
        Some((out, factor))
    });
    Ok(GaussPoly { m: mw, n, poly })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn eval_re_im(p: &Poly, x: f64) -> (f64, f64) {
        p.eval_f64(&[(x, 0.0)])
    }

    #[test]
    fn hermite_low_degrees() {
        assert_eq!(hermite(0), Poly::one(1));
        assert_eq!(hermite(1), Poly::var(1, 0).scale(&s(2)));
        let h2 = hermite(2);
        assert_eq!(h2.univariate_coeffs(0), vec![-Scalar::pi_pow(-1), Scalar::zero(), s(4)]);
    }

    #[test]
    fn raise_examples() {
        let one = GaussPoly::one(2, 2);
        let r1 = raise(&one, 1, 1);
        assert_eq!(r1, GaussPoly::var(2, 2, 1, 1).scale(&s(2)));
        let r2 = raise(&r1, 1, 1);
        let mut d = DeltaMatrix::zero(2, 2);
        d.set(1, 1, 2);
        assert_eq!(r2, phi_delta(&d));
        assert_eq!(raise(&raise(&one, 1, 1), 2, 2), raise(&raise(&one, 2, 2), 1, 1));
    }

    #[test]
    fn phi_delta_examples() {
        let mut d = DeltaMatrix::zero(2, 1);
        assert_eq!(phi_delta(&d), GaussPoly::one(2, 1));
        d.set(1, 1, 1);
        d.set(2, 1, 1);
        let expected = GaussPoly::new(2, 1, Poly::monomial(vec![1, 1], s(4))).unwrap();
        assert_eq!(phi_delta(&d), expected);
    }

    /// Quadrature oracle for the Fourier transform of `p(y) exp(-pi y^2)`.
    fn numeric_ft(p: &Poly, xi: f64) -> (f64, f64) {
        let (a, b, steps) = (-8.0, 8.0, 16000);
        let h = (b - a) / steps as f64;
        let mut acc = (0.0, 0.0);
        for k in 0..=steps {
            let y: f64 = a + h * k as f64;
            let w = if k == 0 || k == steps { 0.5 } else { 1.0 };
            let (pr, pi) = eval_re_im(p, y);
            let g = (-std::f64::consts::PI * y * y).exp();
            let ang = -2.0 * std::f64::consts::PI * y * xi;
            let (c, sn) = (ang.cos(), ang.sin());
            acc.0 += w * h * g * (pr * c - pi * sn);
            acc.1 += w * h * g * (pr * sn + pi * c);
        }
        acc
    }

    #[test]
    fn fourier_matches_quadrature() {
        let p = Poly::univariate(1, 0, &[s(1), s(-2), Scalar::pi(), s(3)]);
        let ft = fourier_1d(&p);
        for xi in [-0.7, 0.0, 0.3, 1.1] {
            let g = (-std::f64::consts::PI * xi * xi).exp();
            let (er, ei) = eval_re_im(&ft, xi);
            let (nr, ni) = numeric_ft(&p, xi);
            assert!((er * g - nr).abs() < 1e-9 && (ei * g - ni).abs() < 1e-9);
        }
    }

    #[test]
    fn gaussian_is_self_dual_and_hermite_eigen() {
        assert_eq!(fourier_1d(&Poly::one(1)), Poly::one(1));
        for k in 0..=8 {
            let h = hermite(k);
            let ev = (-Scalar::i()).pow(k as u32);
            assert_eq!(fourier_1d(&h), h.scale(&ev), "k = {k}");
        }
    }

    #[test]
    fn fourier_of_rescaled_hermite() {
        // g_1(y) = H_1(-y/sqrt2) e^{-pi y^2} = -sqrt2 y e^{-pi y^2}.
        let g1 = hermite(1).substitute(&[Poly::var(1, 0).scale(&-Scalar::sqrt2_pow(-1))]);
        let ft = fourier_1d(&g1);
        assert_eq!(ft, Poly::var(1, 0).scale(&(Scalar::sqrt2() * Scalar::i())));
        let (nr, ni) = numeric_ft(&g1, 0.4);
        let g = (-std::f64::consts::PI * 0.16f64).exp();
        assert!(nr.abs() < 1e-9 && (ni - 2f64.sqrt() * 0.4 * g).abs() < 1e-9);
    }

    #[test]
    fn fourier_is_reflection_involution() {
        let p = Poly::univariate(1, 0, &[s(2), s(-1), s(5), Scalar::pi_pow(-1), s(0), s(7), s(-3)]);
        let twice = fourier_1d(&fourier_1d(&p));
        let reflected = p.substitute(&[Poly::var(1, 0).scale(&s(-1))]);
        assert_eq!(twice, reflected);
    }

    #[test]
    fn moments_match_fourier_at_zero() {
        for k in 0..8 {
            let ft = fourier_1d(&Poly::monomial(vec![k as u8], Scalar::one()));
            assert_eq!(ft.coeff(&[0]), moment(k));
        }
    }

    #[test]
    fn restrict_gaussian_and_vanishing() {
        let pd = ParabolicData::new(QuadSpace::new(2, 2).unwrap(), 1).unwrap();
        let g = GaussPoly::one(4, 1);
        assert_eq!(weil_restrict(&g, &pd).unwrap(), GaussPoly::one(2, 1));
        let mut d = DeltaMatrix::zero(4, 1);
        d.set(1, 1, 2);
        assert!(weil_restrict(&phi_delta(&d), &pd).unwrap().is_zero());
        let mut d = DeltaMatrix::zero(4, 1);
        d.set(2, 1, 2);
        d.set(3, 1, 1);
        let mut dw = DeltaMatrix::zero(2, 1);
        dw.set(1, 1, 2);
        dw.set(2, 1, 1);
        assert_eq!(weil_restrict(&phi_delta(&d), &pd).unwrap(), phi_delta(&dw));
    }

    #[test]
    fn geometric_action_kills_gaussian_for_compact_part() {
        let v = QuadSpace::new(2, 1).unwrap();
        let g = GaussPoly::one(3, 2);
        let k = LieElement::wedge_basis(1, 2);
        assert!(geometric_action(&k, &v, &g).is_zero());
        let p = LieElement::wedge_basis(1, 3);
        assert!(!geometric_action(&p, &v, &g).is_zero());
    }
}
