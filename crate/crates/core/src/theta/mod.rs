//! Numerical theta series over lattice cosets.
//!
//! Sums run over the points of a coset `L + h` inside a ball, enumerated in
//! integer coordinates with pruning on `|k + B^{-1}h|`. Every value carries
//! a rigorous bound for the omitted points, obtained from a polynomial
//! majorant of the summand, a lattice point count per spherical shell and
//! the Gaussian decay.

mod zlattice;

pub use zlattice::hat_lw;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::weil::{fourier_1d, GaussPoly, Poly};

/// `weight · (L + h)` with `L` spanned by the rows of `basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCoset {
    basis: Vec<Vec<BigRational>>,
    shift: Vec<BigRational>,
    weight: BigRational,
}

pub(crate) fn det(rows: &[Vec<BigRational>]) -> BigRational {
    let d = rows.len();
    let mut a = rows.to_vec();
    let mut out = BigRational::one();
    for c in 0..d {
        let Some(p) = (c..d).find(|&r| !a[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            out = -out;
        }
        let pivot_row = a[c].clone();
        out *= &pivot_row[c];
        for row in a.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot_row[c];
            if f.is_zero() {
                continue;
            }
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * y;
            }
        }
    }
    out
}

/// Exact inverse of the matrix whose columns are `cols`.
fn inverse_of_columns(cols: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let d = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..d).map(|j| cols[j][i].clone()).collect();
            row.extend((0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero()).expect("nonsingular basis");
        a.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|row| row[d..].to_vec()).collect()
}

impl LatticeCoset {
    pub fn new(basis: Vec<Vec<BigRational>>, shift: Vec<BigRational>, weight: BigRational) -> Result<Self> {
        let d = shift.len();
        if basis.len() != d || basis.iter().any(|b| b.len() != d) {
            return Err(Error::ShapeMismatch(format!("basis must be {d} x {d}")));
        }
        if d > 0 && det(&basis).is_zero() {
            return Err(Error::InvalidParameters("lattice basis is singular".into()));
        }
        Ok(LatticeCoset { basis, shift, weight })
    }

    /// `s Z^d + h` with weight 1.
    pub fn scaled_integer(d: usize, s: BigRational, shift: Vec<BigRational>) -> Result<Self> {
        let basis = (0..d)
            .map(|i| (0..d).map(|j| if i == j { s.clone() } else { BigRational::zero() }).collect())
            .collect();
        LatticeCoset::new(basis, shift, BigRational::one())
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn shift(&self) -> &[BigRational] {
        &self.shift
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    /// `|det L|`.
    pub fn covolume(&self) -> BigRational {
        if self.dim() == 0 {
            return BigRational::one();
        }
        det(&self.basis).abs()
    }

    /// Basis of the dual lattice `{ξ : (ξ, L) ⊂ Z}` for the standard form.
    pub fn dual_basis(&self) -> Vec<Vec<BigRational>> {
        // Rows of B^{-1} (B with basis columns) are the dual basis vectors.
        inverse_of_columns(&self.basis)
    }
}

fn rat_str(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl Serialize for LatticeCoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let basis: Vec<Vec<String>> = self.basis.iter().map(|b| b.iter().map(rat_str).collect()).collect();
        let shift: Vec<String> = self.shift.iter().map(rat_str).collect();
        let mut st = s.serialize_struct("LatticeCoset", 3)?;
        st.serialize_field("basis", &basis)?;
        st.serialize_field("shift", &shift)?;
        st.serialize_field("weight", &rat_str(&self.weight))?;
        st.end()
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Floating-point data for enumeration.
struct Geometry {
    d: usize,
    cols: Vec<Vec<f64>>,
    shift: Vec<f64>,
    center: Vec<f64>,
    inv_frobenius: f64,
}

impl Geometry {
    fn new(c: &LatticeCoset) -> Geometry {
        let d = c.dim();
        let inv = inverse_of_columns(&c.basis);
        let center = (0..d)
            .map(|i| to_f64(&(0..d).map(|j| &inv[i][j] * &c.shift[j]).fold(BigRational::zero(), |a, b| a + b)))
            .collect();
        let inv_frobenius = inv.iter().flatten().map(|x| to_f64(x).powi(2)).sum::<f64>().sqrt();
        Geometry {
            d,
            cols: c.basis.iter().map(|b| b.iter().map(to_f64).collect()).collect(),
            shift: c.shift.iter().map(to_f64).collect(),
            center,
            inv_frobenius,
        }
    }

    /// Upper bound for the number of points with `|x| <= r`.
    fn count_bound(&self, r: f64) -> f64 {
        (2.0 * self.inv_frobenius * r + 1.0).powi(self.d as i32)
    }
}

/// Neumaier-compensated complex sum.
#[derive(Clone, Copy, Default)]
struct CompensatedSum {
    sum: Complex64,
    err: Complex64,
}

impl CompensatedSum {
    fn add(&mut self, x: Complex64) {
        fn step(s: &mut f64, e: &mut f64, x: f64) {
            let t = *s + x;
            if s.abs() >= x.abs() {
                *e += (*s - t) + x;
            } else {
                *e += (x - t) + *s;
            }
            *s = t;
        }
        step(&mut self.sum.re, &mut self.err.re, x.re);
        step(&mut self.sum.im, &mut self.err.im, x.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.err
    }
}

/// Sums `f(k, x)` over the coset points with `|x| <= radius`, partitioned by
/// the first integer coordinate and reduced in a fixed order.
fn enumerate_sum(g: &Geometry, radius: f64, f: &(impl Fn(&[i64], &[f64]) -> Complex64 + Sync)) -> (Complex64, usize) {
    if g.d == 0 {
        return (f(&[], &[]), 1);
    }
    let bound = g.inv_frobenius * radius * (1.0 + 1e-12) + 1e-12;
    let lo = (-g.center[0] - bound).ceil() as i64;
    let hi = (-g.center[0] + bound).floor() as i64;
    let parts: Vec<(CompensatedSum, usize)> = (lo..=hi)
        .into_par_iter()
        .map(|k0| {
            let mut acc = (CompensatedSum::default(), 0usize);
            let mut k = vec![0i64; g.d];
            k[0] = k0;
            let s0 = (k0 as f64 + g.center[0]).powi(2);
            if s0 <= bound * bound {
                descend(g, radius, bound, 1, s0, &mut k, f, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = CompensatedSum::default();
    let mut count = 0;
    for (s, c) in parts {
        total.add(s.value());
        count += c;
    }
    (total.value(), count)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    g: &Geometry,
    radius: f64,
    bound: f64,
    i: usize,
    partial: f64,
    k: &mut Vec<i64>,
    f: &(impl Fn(&[i64], &[f64]) -> Complex64 + Sync),
    acc: &mut (CompensatedSum, usize),
) {
    if i == g.d {
        let mut x = g.shift.clone();
        for (ki, col) in k.iter().zip(&g.cols) {
            for (xj, cj) in x.iter_mut().zip(col) {
                *xj += *ki as f64 * cj;
            }
        }
        if x.iter().map(|v| v * v).sum::<f64>() <= radius * radius {
            acc.0.add(f(k, &x));
            acc.1 += 1;
        }
        return;
    }
    let rem = (bound * bound - partial).max(0.0).sqrt();
    let lo = (-g.center[i] - rem).ceil() as i64;
    let hi = (-g.center[i] + rem).floor() as i64;
    for ki in lo..=hi {
        let s = partial + (ki as f64 + g.center[i]).powi(2);
        if s <= bound * bound {
            k[i] = ki;
            descend(g, radius, bound, i + 1, s, k, f, acc);
        }
    }
}

/// Coefficients `M_j = Σ_{|e| = j} |c_e|`, so that `|p(x)| <= Σ_j M_j |x|^j`.
fn majorant(p: &Poly) -> Vec<f64> {
    let mut out = vec![0.0; p.degree() + 1];
    for (e, c) in p.terms() {
        let (re, im) = c.to_f64_pair();
        out[e.iter().map(|&x| x as usize).sum::<usize>()] += re.hypot(im);
    }
    out
}

fn eval_majorant(m: &[f64], r: f64) -> f64 {
    m.iter().rev().fold(0.0, |acc, c| acc * r + c)
}

/// Bound for `Σ_{|x| > radius} |p(x)| e^{-π t |x|^2}` over the coset,
/// summing shell by shell until consecutive shell bounds shrink by half.
fn tail_bound(g: &Geometry, maj: &[f64], t: f64, radius: f64) -> f64 {
    if g.d == 0 || maj.iter().all(|&c| c == 0.0) {
        return 0.0;
    }
    let delta = 0.25 / t.sqrt();
    let exponent = (g.d + maj.len()) as i32;
    let mut total = 0.0;
    let mut a = radius.max(0.0) * (1.0 - 1e-12);
    for _ in 0..1_000_000 {
        let b = a + delta;
        let term = g.count_bound(b) * eval_majorant(maj, b) * (-std::f64::consts::PI * t * a * a).exp();
        let ratio = ((b + delta) / b).powi(exponent) * (-std::f64::consts::PI * t * (2.0 * a * delta + delta * delta)).exp();
        if ratio <= 0.5 {
            return total + 2.0 * term;
        }
        total += term;
        a = b;
    }
    f64::INFINITY
}

/// A truncated lattice sum with a bound for the omitted terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaValue {
    pub re: f64,
    pub im: f64,
    /// Upper bound for the absolute truncation error.
    pub tail_bound: f64,
    /// Number of lattice points summed.
    pub terms: usize,
}

impl ThetaValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `|value| > tail_bound`, i.e. the true sum is certainly nonzero.
    pub fn certainly_nonzero(&self) -> bool {
        self.value().norm() > self.tail_bound
    }
}

fn check_t_radius(t: f64, radius: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) || !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameters(format!("need t > 0 and radius >= 0, got t = {t}, radius = {radius}")));
    }
    Ok(())
}

fn poly_at(p: &Poly, x: &[f64]) -> Complex64 {
    let pt: Vec<(f64, f64)> = x.iter().map(|&v| (v, 0.0)).collect();
    let (re, im) = p.eval_f64(&pt);
    Complex64::new(re, im)
}

/// `weight · Σ_{x ∈ L + h, |x| <= radius} p(x) e^{-π t |x|^2}` for
/// `φ = p · e^{-π |x|^2}`, with a bound for the points outside the ball.
pub fn theta_eval(coset: &LatticeCoset, phi: &GaussPoly, t: f64, radius: f64) -> Result<ThetaValue> {
    check_t_radius(t, radius)?;
    let p = phi.poly();
    if p.nvars() != coset.dim() {
        return Err(Error::ShapeMismatch(format!("{} variables on a lattice of rank {}", p.nvars(), coset.dim())));
    }
    let g = Geometry::new(coset);
    let w = to_f64(&coset.weight);
    let (s, count) = enumerate_sum(&g, radius, &|_, x| {
        poly_at(p, x) * (-std::f64::consts::PI * t * x.iter().map(|v| v * v).sum::<f64>()).exp()
    });
    let tail = tail_bound(&g, &majorant(p), t, radius);
    Ok(ThetaValue { re: w * s.re, im: w * s.im, tail_bound: w.abs() * tail, terms: count })
}

/// Largest radius tried by [`theta_eval_to`].
pub const MAX_RADIUS: f64 = 64.0;

/// [`theta_eval`] with the radius doubled until the tail bound is at most `tol`.
pub fn theta_eval_to(coset: &LatticeCoset, phi: &GaussPoly, t: f64, tol: f64) -> Result<ThetaValue> {
    check_t_radius(t, 0.0)?;
    let mut radius = ((1.0 / tol.min(0.5)).ln() / (std::f64::consts::PI * t)).sqrt() + 1.0;
    loop {
        let v = theta_eval(coset, phi, t, radius)?;
        if v.tail_bound <= tol {
            return Ok(v);
        }
        if radius >= MAX_RADIUS {
            return Err(Error::RadiusTooSmall(format!("tail bound {} > {tol} at radius {radius}", v.tail_bound)));
        }
        radius = (2.0 * radius).min(MAX_RADIUS);
    }
}

/// Weighted sum of [`theta_eval`] over a family of cosets.
pub fn theta_eval_family(family: &[LatticeCoset], phi: &GaussPoly, t: f64, radius: f64) -> Result<ThetaValue> {
    let mut out = ThetaValue { re: 0.0, im: 0.0, tail_bound: 0.0, terms: 0 };
    for c in family {
        let v = theta_eval(c, phi, t, radius)?;
        out.re += v.re;
        out.im += v.im;
        out.tail_bound += v.tail_bound;
        out.terms += v.terms;
    }
    Ok(out)
}

/// `|Σ_{x ∈ L+h} φ(x) - covol(L)^{-1} Σ_{ξ ∈ L^#} e^{2πi ξ h} φ̂(ξ)|` for a
/// one-variable `φ`, with `φ̂` the exact transform; both sides are summed
/// until their tail bounds are below `1e-15`.
pub fn poisson_check(coset: &LatticeCoset, phi: &GaussPoly) -> Result<f64> {
    if coset.dim() != 1 || phi.poly().nvars() != 1 {
        return Err(Error::ShapeMismatch("the Poisson check is one-dimensional".into()));
    }
    let tol = 1e-15;
    let unit = LatticeCoset { weight: BigRational::one(), ..coset.clone() };
    let lhs = theta_eval_to(&unit, phi, 1.0, tol)?;

    let hat = fourier_1d(phi.poly());
    let dual = LatticeCoset::new(coset.dual_basis(), vec![BigRational::zero()], BigRational::one())?;
    let g = Geometry::new(&dual);
    let h = to_f64(&coset.shift[0]);
    let maj = majorant(&hat);
    let mut radius = ((1.0 / tol).ln() / std::f64::consts::PI).sqrt() + 1.0;
    while tail_bound(&g, &maj, 1.0, radius) > tol {
        if radius >= MAX_RADIUS {
            return Err(Error::RadiusTooSmall("dual sum does not converge to tolerance".into()));
        }
        radius *= 2.0;
    }
    let (dual_sum, _) = enumerate_sum(&g, radius, &|_, xi| {
        let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * xi[0] * h);
        phase * poly_at(&hat, xi) * (-std::f64::consts::PI * xi[0] * xi[0]).exp()
    });
    let rhs = dual_sum / to_f64(&coset.covolume());
    Ok((lhs.value() - rhs).norm())
}

/// Proof that `Σ_{x ∈ h + N Z^d} φ(x) ≠ 0` with `N = n1 · n2`: the term at
/// `x = h` dominates the sum of absolute values of all others.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonvanishingCertificate {
    /// Components of `h ∈ (1/n1) Z^d`, as exact fractions.
    pub h: Vec<String>,
    pub n1: u32,
    pub n2: u32,
    /// `|φ(h)|`.
    pub phi_at_h: f64,
    /// Upper bound for `Σ_{x ≠ h} |φ(x)|`: enumerated part plus tail bound.
    pub rest_bound: f64,
    pub radius: f64,
}

impl NonvanishingCertificate {
    pub fn holds(&self) -> bool {
        self.rest_bound < self.phi_at_h
    }
}

/// Search limits for [`nonvanishing_search`].
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub max_n1: u32,
    pub max_n2: u32,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_n1: 8, max_n2: 64 }
    }
}

/// Threshold below which `|φ(h)|` is treated as rounding noise.
const MIN_WITNESS: f64 = 1e-6;

fn abs_phi(p: &Poly, x: &[f64]) -> f64 {
    poly_at(p, x).norm() * (-std::f64::consts::PI * x.iter().map(|v| v * v).sum::<f64>()).exp()
}

fn rest_bound(p: &Poly, h: &[BigRational], n: u32, radius: f64) -> Result<f64> {
    let coset = LatticeCoset::scaled_integer(h.len(), BigRational::from_integer(n.into()), h.to_vec())?;
    let g = Geometry::new(&coset);
    let (s, _) = enumerate_sum(&g, radius, &|k, x| {
        if k.iter().all(|&v| v == 0) {
            Complex64::zero()
        } else {
            Complex64::new(abs_phi(p, x), 0.0)
        }
    });
    Ok(s.re + tail_bound(&g, &majorant(p), 1.0, radius))
}

/// Finds `h ∈ (1/n1) Z^d` with `φ(h) ≠ 0`, then the least `n2` for which
/// `|φ(h)|` exceeds the sum of `|φ|` over the other points of `h + n1 n2 Z^d`.
pub fn nonvanishing_search(phi: &GaussPoly, budget: SearchLimits) -> Result<NonvanishingCertificate> {
    let p = phi.poly();
    if p.is_zero() {
        return Err(Error::InvalidParameters("φ is identically zero".into()));
    }
    let d = p.nvars();
    let radius = 8.0;
    for n1 in 1..=budget.max_n1 {
        // Candidates in [-1, 1]^d, nearest to the origin first.
        let side = 2 * n1 as i64 + 1;
        let mut cands: Vec<Vec<i64>> = (0..side.pow(d as u32))
            .map(|mut c| {
                (0..d)
                    .map(|_| {
                        let v = c % side - n1 as i64;
                        c /= side;
                        v
                    })
                    .collect()
            })
            .collect();
        cands.sort_by_key(|v| (v.iter().map(|x| x * x).sum::<i64>(), v.clone()));
        for num in cands {
            let h: Vec<BigRational> = num.iter().map(|&a| BigRational::new(a.into(), n1.into())).collect();
            let hf: Vec<f64> = h.iter().map(to_f64).collect();
            let at_h = abs_phi(p, &hf);
            if at_h < MIN_WITNESS {
                continue;
            }
            for n2 in 1..=budget.max_n2 {
                let rest = rest_bound(p, &h, n1 * n2, radius)?;
                if rest < at_h {
                    return Ok(NonvanishingCertificate {
                        h: h.iter().map(rat_str).collect(),
                        n1,
                        n2,
                        phi_at_h: at_h,
                        rest_bound: rest,
                        radius,
                    });
                }
            }
        }
    }
    Err(Error::SearchBudget(format!("no certificate with n1 <= {}, n2 <= {}", budget.max_n1, budget.max_n2)))
}

/// Recomputes a certificate's bound at twice its radius.
pub fn verify_certificate(phi: &GaussPoly, cert: &NonvanishingCertificate) -> Result<bool> {
    let h: Vec<BigRational> = cert
        .h
        .iter()
        .map(|s| s.parse::<BigRational>().map_err(|e| Error::Config(format!("bad fraction {s}: {e}"))))
        .collect::<Result<_>>()?;
    let hf: Vec<f64> = h.iter().map(to_f64).collect();
    let at_h = abs_phi(phi.poly(), &hf);
    let rest = rest_bound(phi.poly(), &h, cert.n1 * cert.n2, 2.0 * cert.radius)?;
    Ok(rest < at_h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::hermite;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn gauss(p: Poly) -> GaussPoly {
        GaussPoly::new(p.nvars(), 1, p).unwrap()
    }

    fn z1(shift: BigRational) -> LatticeCoset {
        LatticeCoset::scaled_integer(1, q(1, 1), vec![shift]).unwrap()
    }

    /// Direct summation over |k| <= 40, independent of the enumeration code.
    fn direct_1d(f: impl Fn(f64) -> f64, h: f64) -> f64 {
        (-40..=40).map(|k| f(k as f64 + h)).sum()
    }

    #[test]
    fn jacobi_theta_value() {
        let v = theta_eval_to(&z1(q(0, 1)), &gauss(Poly::one(1)), 1.0, 1e-14).unwrap();
        let oracle = direct_1d(|x| (-std::f64::consts::PI * x * x).exp(), 0.0);
        assert!((v.re - oracle).abs() < 1e-14);
        assert!((v.re - 1.086_434_811_213_308).abs() < 1e-12);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn zero_function_sums_to_zero() {
        let v = theta_eval(&z1(q(0, 1)), &gauss(Poly::zero(1)), 1.0, 3.0).unwrap();
        assert_eq!((v.re, v.im, v.tail_bound), (0.0, 0.0, 0.0));
    }

    #[test]
    fn quarter_shift_with_linear_weight_is_nonzero() {
        let v = theta_eval_to(&z1(q(1, 4)), &gauss(Poly::var(1, 0)), 1.0, 1e-12).unwrap();
        let oracle = direct_1d(|x| x * (-std::f64::consts::PI * x * x).exp(), 0.25);
        assert!((v.re - oracle).abs() < 1e-12);
        assert!(v.certainly_nonzero());
    }

    #[test]
    fn doubling_radius_stays_within_tail_bound() {
        let phi = gauss(Poly::var(2, 0).mul(&Poly::var(2, 1)).add(&Poly::one(2)));
        let c = LatticeCoset::new(vec![vec![q(1, 1), q(1, 2)], vec![q(0, 1), q(3, 2)]], vec![q(1, 3), q(-1, 5)], q(1, 1)).unwrap();
        let small = theta_eval(&c, &phi, 0.7, 2.5).unwrap();
        let large = theta_eval(&c, &phi, 0.7, 5.0).unwrap();
        assert!((small.value() - large.value()).norm() <= small.tail_bound);
        assert!(small.tail_bound > 0.0);
    }

    #[test]
    fn radius_cap_is_reported() {
        let e = theta_eval_to(&z1(q(0, 1)), &gauss(Poly::one(1)), 1e-4, 1e-30);
        assert!(matches!(e, Err(Error::RadiusTooSmall(_))));
    }

    #[test]
    fn poisson_examples() {
        assert!(poisson_check(&z1(q(0, 1)), &gauss(Poly::one(1))).unwrap() < 1e-12);
        let two = LatticeCoset::scaled_integer(1, q(2, 1), vec![q(0, 1)]).unwrap();
        assert!(poisson_check(&two, &gauss(Poly::one(1))).unwrap() < 1e-12);
        assert!(poisson_check(&z1(q(1, 4)), &gauss(hermite(1))).unwrap() < 1e-10);
    }

    #[test]
    fn certificate_for_linear_weight() {
        let phi = gauss(Poly::var(1, 0));
        let cert = nonvanishing_search(&phi, SearchLimits::default()).unwrap();
        assert!(cert.holds());
        assert_ne!(cert.h, vec!["0".to_string()]);
        assert!(verify_certificate(&phi, &cert).unwrap());
        // The witness is genuine: the full theta sum is bounded away from zero.
        let h: BigRational = cert.h[0].parse().unwrap();
        let c = LatticeCoset::scaled_integer(1, BigRational::from_integer((cert.n1 * cert.n2).into()), vec![h]).unwrap();
        assert!(theta_eval_to(&c, &phi, 1.0, 1e-12).unwrap().certainly_nonzero());
    }

    #[test]
    fn certificate_for_gaussian_needs_no_shift() {
        let cert = nonvanishing_search(&gauss(Poly::one(1)), SearchLimits::default()).unwrap();
        assert_eq!(cert.h, vec!["0".to_string()]);
        assert_eq!((cert.n1, cert.n2), (1, 1));
    }

    #[test]
    fn odd_function_forces_a_shift() {
        let p = Poly::var(2, 0).mul(&Poly::var(2, 1));
        let cert = nonvanishing_search(&gauss(p), SearchLimits::default()).unwrap();
        assert!(cert.h.iter().all(|s| s != "0"));
        assert!(cert.holds());
        let e = nonvanishing_search(&gauss(Poly::zero(1)), SearchLimits::default());
        assert!(e.is_err());
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        let c = LatticeCoset::new(vec![vec![q(2, 1), q(1, 1)], vec![q(0, 1), q(3, 1)]], vec![q(0, 1); 2], q(1, 1)).unwrap();
        let dual = c.dual_basis();
        for (i, d) in dual.iter().enumerate() {
            for (j, b) in c.basis().iter().enumerate() {
                let ip: BigRational = d.iter().zip(b).map(|(x, y)| x * y).fold(BigRational::zero(), |a, b| a + b);
                assert_eq!(ip, if i == j { q(1, 1) } else { q(0, 1) });
            }
        }
        assert_eq!(c.covolume(), q(6, 1));
    }

    #[test]
    fn singular_basis_is_rejected() {
        let e = LatticeCoset::new(vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]], vec![q(0, 1); 2], q(1, 1));
        assert!(e.is_err());
    }

    mod boundary {
        use super::*;
        use crate::liegeom::{ParabolicData, QuadSpace};

        fn witt_lattice(basis: Vec<Vec<BigRational>>, shift: Vec<BigRational>) -> LatticeCoset {
            LatticeCoset::new(basis, shift, q(1, 1)).unwrap()
        }

        #[test]
        fn hyperbolic_plane_gives_a_point() {
            let pd = ParabolicData::new(QuadSpace::new(1, 1).unwrap(), 1).unwrap();
            let l = witt_lattice(vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]], vec![q(0, 1); 2]);
            let out = hat_lw(&[l], &pd).unwrap();
            assert_eq!(out.len(), 1);
            assert_eq!(out[0].dim(), 0);
            assert_eq!(out[0].weight(), &q(1, 1));
        }

        #[test]
        fn scaling_e_scales_the_weight() {
            let pd = ParabolicData::new(QuadSpace::new(2, 1).unwrap(), 1).unwrap();
            for (nn, genus) in [(3, 1), (3, 2), (5, 1)] {
                let l = witt_lattice(
                    vec![vec![q(nn, 1), q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]],
                    vec![q(0, 1); 3],
                );
                let out = hat_lw(&vec![l; genus], &pd).unwrap();
                assert_eq!(out.len(), 1);
                assert_eq!(out[0].weight(), &q(1, nn.pow(genus as u32)));
                assert_eq!(out[0].dim(), genus);
            }
        }

        #[test]
        fn shift_in_e_keeps_the_support() {
            let pd = ParabolicData::new(QuadSpace::new(2, 1).unwrap(), 1).unwrap();
            let basis = vec![vec![q(1, 1), q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]];
            let a = hat_lw(&[witt_lattice(basis.clone(), vec![q(0, 1), q(1, 3), q(0, 1)])], &pd).unwrap();
            let b = hat_lw(&[witt_lattice(basis, vec![q(1, 2), q(1, 3), q(0, 1)])], &pd).unwrap();
            assert_eq!(a, b);
        }

        #[test]
        fn nonsplit_lattice_decomposes_into_cosets() {
            // Λ = span(u1, u1/2 + e2, u'1): M_E = Z u1, M_W = 2Z e2, index 2.
            let pd = ParabolicData::new(QuadSpace::new(2, 1).unwrap(), 1).unwrap();
            let basis = vec![vec![q(1, 1), q(0, 1), q(0, 1)], vec![q(1, 2), q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]];
            let out = hat_lw(&[witt_lattice(basis, vec![q(0, 1); 3])], &pd).unwrap();
            assert_eq!(out.len(), 2);
            let mut shifts: Vec<BigRational> = out.iter().map(|c| c.shift()[0].clone()).collect();
            shifts.sort();
            assert_eq!(shifts, vec![q(0, 1), q(1, 1)]);
            for c in &out {
                assert_eq!(c.basis()[0][0].abs(), q(2, 1));
                assert_eq!(c.weight(), &q(1, 1));
            }
        }

        #[test]
        fn coset_missing_e_perp_is_empty() {
            let pd = ParabolicData::new(QuadSpace::new(2, 1).unwrap(), 1).unwrap();
            let basis = vec![vec![q(1, 1), q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]];
            let out = hat_lw(&[witt_lattice(basis, vec![q(0, 1), q(0, 1), q(1, 2)])], &pd).unwrap();
            assert!(out.is_empty());
        }
    }
}
