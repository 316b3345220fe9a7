//! Mixed model: partial Fourier transform in the `E`-coordinates and the
//! action of the parabolic subgroups in that model.
//!
//! A mixed-model vector is `c * p(v) * exp(-pi v^T Q v)` where `v` runs over
//! `(xi, x_W, u')`. Rows are laid out like `V`: row `i <= l` holds `xi_i`
//! (dual to `u_i`), rows `l+1..=m-l` hold `x_W`, and row `m+1-i` holds the
//! coordinate of `u'_i`. `E` and `E'` are identified with `R^l` through the
//! bases `u_i`, `u'_i`, so the pairing `<u, xi>` is `sum_i y_i xi_i`; the
//! reversal matrix `J` of the Witt ordering never appears.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{fourier_1d, var_index, GaussPoly, Poly};
use crate::error::{Error, Result};
use crate::liegeom::ParabolicData;
use crate::scalars::Scalar;

type Matrix = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedElement {
    pd: ParabolicData,
    n: usize,
    prefactor: Scalar,
    poly: Poly,
    quad: Matrix,
}

/// The six families of group elements with an explicit mixed-model formula.
#[derive(Clone, Debug)]
pub enum MixedGroupElement {
    /// Unipotent `n` in the unipotent radical, as an `m x m` matrix on the
    /// Witt coordinates `(y, x_W, y')` (rows/columns ordered like the layout).
    Unipotent(Matrix),
    /// `g` in `SL(E)`, an `l x l` matrix in the basis `u_i`.
    SlE(Matrix),
    /// `a(t)`, acting on `u_i` by `t_i`.
    Torus(Vec<BigRational>),
    /// `h` in `SO(W)`, in the basis `e_{l+1}..e_{m-l}`.
    OrthogonalW(Matrix),
    /// `m'(a)` for `a` in `GL_n^+`.
    LeviPrime(Matrix),
    /// `n'(b)` for symmetric `b`.
    UnipotentPrime(Matrix),
}

fn identity(k: usize) -> Matrix {
    (0..k).map(|i| (0..k).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

fn transpose(a: &Matrix) -> Matrix {
    let (r, c) = (a.len(), a.first().map_or(0, |x| x.len()));
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |x| x.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn check_square(a: &Matrix, k: usize, what: &str) -> Result<()> {
    if a.len() != k || a.iter().any(|r| r.len() != k) {
        return Err(Error::ShapeMismatch(format!("{what} must be {k}x{k}")));
    }
    Ok(())
}

/// Inverse and determinant by Gauss-Jordan elimination.
fn inverse_det(a: &Matrix) -> Result<(Matrix, Scalar)> {
    let k = a.len();
    let mut m: Matrix = a.clone();
    let mut inv = identity(k);
    let mut det = Scalar::one();
    for col in 0..k {
        let piv = (col..k).find(|&r| !m[r][col].is_zero()).ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
        if piv != col {
            m.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let pinv = p.inv()?;
        for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = &*x * &pinv;
        }
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..k {
                    let d = &f * &m[col][c];
                    m[r][c] -= &d;
                    let d = &f * &inv[col][c];
                    inv[r][c] -= &d;
                }
            }
        }
    }
    Ok((inv, det))
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// `d^(e/2)` for a positive rational `d`, when it lies in `Q(sqrt2)`.
fn half_power(d: &Scalar, e: i64) -> Result<Scalar> {
    let r = d.as_rational().ok_or_else(|| Error::Unsupported(format!("non-rational determinant {d}")))?;
    if !r.is_positive() {
        return Err(Error::Unsupported(format!("determinant {r} is not positive")));
    }
    let whole = Scalar::from_ratio(r.clone()).powi(e.div_euclid(2))?;
    if e.rem_euclid(2) == 0 {
        return Ok(whole);
    }
    let root = if let Some(s) = rational_sqrt(&r) {
        Scalar::from_ratio(s)
    } else if let Some(s) = rational_sqrt(&(&r / BigRational::from_integer(BigInt::from(2)))) {
        Scalar::from_ratio(s) * Scalar::sqrt2()
    } else {
        return Err(Error::Unsupported(format!("sqrt of {r} is outside Q(sqrt2)")));
    };
    Ok(whole * root)
}

impl MixedElement {
    pub fn parabolic(&self) -> &ParabolicData {
        &self.pd
    }

    pub fn prefactor(&self) -> &Scalar {
        &self.prefactor
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// Matrix `Q` of the exponent `-pi v^T Q v`.
    pub fn quad(&self) -> &Matrix {
        &self.quad
    }

    fn dim(&self) -> usize {
        self.pd.m() * self.n
    }

    /// Returns `v -> self(L v)` for a linear map `L` on all variables.
    fn compose_linear(&self, l: &Matrix) -> MixedElement {
        let d = self.dim();
        let images: Vec<Poly> = (0..d)
            .map(|i| {
                let mut p = Poly::zero(d);
                for (k, c) in l[i].iter().enumerate() {
                    if !c.is_zero() {
                        p.add_scaled(c, &Poly::var(d, k));
                    }
                }
                p
            })
            .collect();
        MixedElement {
            pd: self.pd,
            n: self.n,
            prefactor: self.prefactor.clone(),
            poly: self.poly.substitute(&images),
            quad: matmul(&transpose(l), &matmul(&self.quad, l)),
        }
    }

    /// Multiplies by `e(v^T B v) = exp(-pi v^T (-2i B) v)`.
    fn times_phase(mut self, b: &Matrix) -> MixedElement {
        let f = Scalar::from_int(-2) * Scalar::i();
        for (qr, br) in self.quad.iter_mut().zip(b) {
            for (q, x) in qr.iter_mut().zip(br) {
                *q += &f * x;
            }
        }
        self
    }

    /// Numerical value at a real point `v`.
    pub fn eval_f64(&self, v: &[f64]) -> (f64, f64) {
        let pt: Vec<(f64, f64)> = v.iter().map(|&x| (x, 0.0)).collect();
        let (pr, pi) = self.poly.eval_f64(&pt);
        let (cr, ci) = self.prefactor.to_f64_pair();
        let (mut qr, mut qi) = (0.0, 0.0);
        for (a, row) in self.quad.iter().enumerate() {
            for (b, q) in row.iter().enumerate() {
                let (x, y) = q.to_f64_pair();
                qr += x * v[a] * v[b];
                qi += y * v[a] * v[b];
            }
        }
        let mag = (-std::f64::consts::PI * qr).exp();
        let ang = -std::f64::consts::PI * qi;
        let (gr, gi) = (mag * ang.cos(), mag * ang.sin());
        let (ar, ai) = (cr * pr - ci * pi, cr * pi + ci * pr);
        (ar * gr - ai * gi, ar * gi + ai * gr)
    }

    /// Value on `W^n` (`xi = 0`, `u' = 0`) as a Schrödinger vector of `W`;
    /// requires the `W`-block of `Q` to be the identity.
    pub fn at_w(&self) -> Result<GaussPoly> {
        let (m, n, l) = (self.pd.m(), self.n, self.pd.l);
        let mw = m - 2 * l;
        for r in l + 1..=m - l {
            for j in 1..=n {
                for s in l + 1..=m - l {
                    for k in 1..=n {
                        let q = &self.quad[var_index(n, r, j)][var_index(n, s, k)];
                        let expected = if (r, j) == (s, k) { Scalar::one() } else { Scalar::zero() };
                        if *q != expected {
                            return Err(Error::Unsupported("W-block of the Gaussian is not standard".into()));
                        }
                    }
                }
            }
        }
        let poly = self.poly.remap(mw * n, |e| {
            let outside = (1..=l).chain(m + 1 - l..=m).any(|r| (1..=n).any(|j| e[var_index(n, r, j)] > 0));
            if outside {
                return None;
            }
            let mut ew = vec![0u8; mw * n];
            for r in l + 1..=m - l {
                for j in 1..=n {
                    ew[var_index(n, r - l, j)] = e[var_index(n, r, j)];
                }
            }
            Some((ew, self.prefactor.clone()))
        });
        GaussPoly::new(mw, n, poly)
    }
}

/// Partial Fourier transform over `E^n` of a Schrödinger vector, with kernel
/// `exp(-2 pi i sum_i y_i xi_i)` and `y_i` the `u_i`-coordinate.
pub fn to_mixed(phi: &GaussPoly, pd: &ParabolicData) -> Result<MixedElement> {
    let (m, n, l) = (pd.m(), phi.cols(), pd.l);
    if phi.rows() != m {
        return Err(Error::ShapeMismatch(format!("{} rows for a {m}-dimensional space", phi.rows())));
    }
    let d = m * n;
    let r2 = Scalar::sqrt2_pow(-1);
    // x_r = (y - y')/sqrt2, x_{m+1-r} = (y + y')/sqrt2, y in row r, y' in row m+1-r.
    let images: Vec<Poly> = (0..d)
        .map(|i| {
            let (r, j) = (i / n + 1, i % n + 1);
            if r <= l {
                Poly::var(d, var_index(n, r, j)).sub(&Poly::var(d, var_index(n, m + 1 - r, j))).scale(&r2)
            } else if r > m - l {
                let s = m + 1 - r;
                Poly::var(d, var_index(n, s, j)).add(&Poly::var(d, var_index(n, r, j))).scale(&r2)
            } else {
                Poly::var(d, i)
            }
        })
        .collect();
    let witt = phi.poly().substitute(&images);
    let max_k = witt.degree();
    let transforms: Vec<Vec<crate::Scalar>> = (0..=max_k)
        .map(|k| {
            let mut e = vec![0u8; 1];
            e[0] = k as u8;
            fourier_1d(&Poly::monomial(e, Scalar::one())).univariate_coeffs(0)
        })
        .collect();
    let mut out = Poly::zero(d);
    for (e, c) in witt.terms() {
        let mut term = Poly::constant(d, c.clone());
        let mut base = e.clone();
        for r in 1..=l {
            for j in 1..=n {
                let i = var_index(n, r, j);
                let k = e[i] as usize;
                base[i] = 0;
                if k > 0 {
                    term = term.mul(&Poly::univariate(d, i, &transforms[k]));
                }
            }
        }
        out.add_assign(&term.mul(&Poly::monomial(base, Scalar::one())));
    }
    Ok(MixedElement { pd: *pd, n, prefactor: Scalar::one(), poly: out, quad: identity(d) })
}

/// `(g phi)^` expressed through `phi^`.
pub fn mixed_action(g: &MixedGroupElement, phi: &MixedElement) -> Result<MixedElement> {
    let (m, n, l) = (phi.pd.m(), phi.n, phi.pd.l);
    let mw = m - 2 * l;
    let d = m * n;
    let xi = |i: usize, j: usize| var_index(n, i, j);
    let up = |i: usize, j: usize| var_index(n, m + 1 - i, j);
    let w = |a: usize, j: usize| var_index(n, l + a, j);
    let mut lin = identity(d);
    match g {
        MixedGroupElement::Unipotent(nm) => {
            check_square(nm, m, "unipotent element")?;
            // With n^{-1}(y, x_W, y') = (y + A x_W + C y', x_W + B y', y'):
            // (n phi)^ = e(<A x_W + C y', xi>) phi^(xi, x_W + B y', y').
            let (ninv, _) = inverse_det(nm)?;
            let mut b = vec![vec![Scalar::zero(); d]; d];
            for j in 1..=n {
                for a in 1..=mw {
                    for i in 1..=l {
                        let c = &ninv[l + a - 1][m - i];
                        if !c.is_zero() {
                            lin[w(a, j)][up(i, j)] += c;
                        }
                    }
                }
                for i in 1..=l {
                    for col in l + 1..=m {
                        let c = &ninv[i - 1][col - 1];
                        if c.is_zero() {
                            continue;
                        }
                        let v = var_index(n, col, j);
                        let half = c * Scalar::from_frac(1, 2);
                        b[xi(i, j)][v] += &half;
                        b[v][xi(i, j)] += &half;
                    }
                }
            }
            Ok(phi.compose_linear(&lin).times_phase(&b))
        }
        MixedGroupElement::SlE(gm) => {
            check_square(gm, l, "SL(E) element")?;
            let (_, det) = inverse_det(gm)?;
            if !det.is_one() {
                return Err(Error::Unsupported(format!("determinant {det} is not 1")));
            }
            // g^{-1} acts on E-coordinates by g^{-1} and on E'-coordinates by
            // g^T; the Fourier transform turns the former into g^T on xi.
            for j in 1..=n {
                for i in 1..=l {
                    for k in 1..=l {
                        lin[xi(i, j)][xi(k, j)] = gm[k - 1][i - 1].clone();
                        lin[up(i, j)][up(k, j)] = gm[k - 1][i - 1].clone();
                    }
                }
            }
            Ok(phi.compose_linear(&lin))
        }
        MixedGroupElement::Torus(t) => {
            if t.len() != l {
                return Err(Error::ShapeMismatch(format!("torus element needs {l} entries")));
            }
            let mut abs = BigRational::one();
            for (i, ti) in t.iter().enumerate() {
                if ti.is_zero() {
                    return Err(Error::NotInvertible("zero torus entry".into()));
                }
                abs *= ti.abs();
                for j in 1..=n {
                    lin[xi(i + 1, j)][xi(i + 1, j)] = Scalar::from_ratio(ti.clone());
                    lin[up(i + 1, j)][up(i + 1, j)] = Scalar::from_ratio(ti.clone());
                }
            }
            let mut out = phi.compose_linear(&lin);
            out.prefactor = &out.prefactor * &Scalar::from_ratio(abs).pow(n as u32);
            Ok(out)
        }
        MixedGroupElement::OrthogonalW(h) => {
            check_square(h, mw, "SO(W) element")?;
            let (inv, det) = inverse_det(h)?;
            if !det.is_one() {
                return Err(Error::Unsupported(format!("determinant {det} is not 1")));
            }
            let ws = phi.pd.w_space();
            for a in 1..=mw {
                for b in 1..=mw {
                    let mut g = Scalar::zero();
                    for c in 1..=mw {
                        g += Scalar::from_int(ws.sign(c)) * &h[c - 1][a - 1] * &h[c - 1][b - 1];
                    }
                    let expected = if a == b { Scalar::from_int(ws.sign(a)) } else { Scalar::zero() };
                    if g != expected {
                        return Err(Error::Unsupported("element does not preserve the form on W".into()));
                    }
                }
            }
            for j in 1..=n {
                for a in 1..=mw {
                    for b in 1..=mw {
                        lin[w(a, j)][w(b, j)] = inv[a - 1][b - 1].clone();
                    }
                }
            }
            Ok(phi.compose_linear(&lin))
        }
        MixedGroupElement::LeviPrime(a) => {
            check_square(a, n, "GL_n element")?;
            let (inv, det) = inverse_det(a)?;
            let factor = half_power(&det, mw as i64)?;
            let astar = transpose(&inv);
            // Row vectors times a: (x a)_{r,j} = sum_k x_{r,k} a_{k,j}.
            for r in 1..=m {
                let mat = if r <= l { &astar } else { a };
                for j in 1..=n {
                    for k in 1..=n {
                        lin[var_index(n, r, j)][var_index(n, r, k)] = mat[k - 1][j - 1].clone();
                    }
                }
            }
            let mut out = phi.compose_linear(&lin);
            out.prefactor = &out.prefactor * &factor;
            Ok(out)
        }
        MixedGroupElement::UnipotentPrime(b) => {
            check_square(b, n, "symmetric matrix")?;
            if *b != transpose(b) {
                return Err(Error::Unsupported("n'(b) needs symmetric b".into()));
            }
            // xi -> xi + u' b; the sign reflects (u_i, u'_i) = -1.
            for i in 1..=l {
                for j in 1..=n {
                    for k in 1..=n {
                        lin[xi(i, j)][up(i, k)] += &b[k - 1][j - 1];
                    }
                }
            }
            // e(tr(b (x_W, x_W))/2).
            let ws = phi.pd.w_space();
            let mut ph = vec![vec![Scalar::zero(); d]; d];
            for j in 1..=n {
                for k in 1..=n {
                    for a in 1..=mw {
                        ph[w(a, j)][w(a, k)] += Scalar::from_int(ws.sign(a)) * &b[j - 1][k - 1] * Scalar::from_frac(1, 2);
                    }
                }
            }
            Ok(phi.compose_linear(&lin).times_phase(&ph))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegeom::QuadSpace;
    use crate::weil::{phi_delta, weil_restrict, DeltaMatrix};

    fn pd(p: usize, q: usize, l: usize) -> ParabolicData {
        ParabolicData::new(QuadSpace::new(p, q).unwrap(), l).unwrap()
    }

    fn frac(a: i64, b: i64) -> Scalar {
        Scalar::from_frac(a, b)
    }

    #[test]
    fn restriction_through_mixed_model() {
        let data = pd(3, 2, 1);
        for entries in [vec![0, 2, 1, 0, 0], vec![1, 0, 0, 0, 1], vec![0, 1, 2, 1, 0], vec![2, 0, 0, 0, 0]] {
            let d = DeltaMatrix::from_exponents(5, 1, entries).unwrap();
            let phi = phi_delta(&d);
            let via_mixed = to_mixed(&phi, &data).unwrap().at_w().unwrap();
            assert_eq!(via_mixed, weil_restrict(&phi, &data).unwrap());
        }
    }

    #[test]
    fn torus_scaling() {
        let data = pd(1, 1, 1);
        let phi = to_mixed(&GaussPoly::var(2, 1, 1, 1), &data).unwrap();
        let t = BigRational::new(BigInt::from(-3), BigInt::from(2));
        let out = mixed_action(&MixedGroupElement::Torus(vec![t]), &phi).unwrap();
        assert_eq!(out.prefactor(), &frac(3, 2));
        // Gaussian exp(-pi (xi^2 + u'^2)) becomes exp(-pi t^2 (xi^2 + u'^2)).
        assert_eq!(out.quad()[0][0], frac(9, 4));
        assert_eq!(out.quad()[1][1], frac(9, 4));
        let mut expected = phi.poly().substitute(&[Poly::var(2, 0).scale(&frac(-3, 2)), Poly::var(2, 1).scale(&frac(-3, 2))]);
        expected = expected.scale(&Scalar::one());
        assert_eq!(out.poly(), &expected);
    }

    /// Group elements preserving the standard Gaussian act on Schrödinger
    /// vectors by `phi(g^{-1} x)`; the mixed-model formulas must agree.
    #[test]
    fn orthogonal_w_matches_schrodinger() {
        let data = pd(4, 1, 1);
        // Rotation of (e_2, e_3) by (3/5, 4/5).
        let (c, s) = (frac(3, 5), frac(4, 5));
        let h = vec![
            vec![c.clone(), -s.clone(), Scalar::zero()],
            vec![s.clone(), c.clone(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let d = DeltaMatrix::from_exponents(5, 1, vec![1, 2, 1, 0, 1]).unwrap();
        let phi = phi_delta(&d);
        // phi(h^{-1} x) with h^{-1} = h^T on e_2, e_3.
        let mut images: Vec<Poly> = (0..5).map(|i| Poly::var(5, i)).collect();
        images[1] = Poly::var(5, 1).scale(&c).add(&Poly::var(5, 2).scale(&s));
        images[2] = Poly::var(5, 1).scale(&-s.clone()).add(&Poly::var(5, 2).scale(&c));
        let moved = GaussPoly::new(5, 1, phi.poly().substitute(&images)).unwrap();
        let lhs = to_mixed(&moved, &data).unwrap();
        let rhs = mixed_action(&MixedGroupElement::OrthogonalW(h), &to_mixed(&phi, &data).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sl_e_matches_schrodinger() {
        let data = pd(2, 2, 2);
        let (c, s) = (frac(3, 5), frac(4, 5));
        let g = vec![vec![c.clone(), -s.clone()], vec![s.clone(), c.clone()]];
        let d = DeltaMatrix::from_exponents(4, 1, vec![1, 0, 2, 1]).unwrap();
        let phi = phi_delta(&d);
        // g acts on u by g and on u' by g^* = g; in standard coordinates
        // this is the rotation by g on (e_1, e_2) and on (e_4, e_3).
        let mut images: Vec<Poly> = (0..4).map(|i| Poly::var(4, i)).collect();
        images[0] = Poly::var(4, 0).scale(&c).add(&Poly::var(4, 1).scale(&s));
        images[1] = Poly::var(4, 0).scale(&-s.clone()).add(&Poly::var(4, 1).scale(&c));
        images[3] = Poly::var(4, 3).scale(&c).add(&Poly::var(4, 2).scale(&s));
        images[2] = Poly::var(4, 3).scale(&-s.clone()).add(&Poly::var(4, 2).scale(&c));
        let moved = GaussPoly::new(4, 1, phi.poly().substitute(&images)).unwrap();
        let lhs = to_mixed(&moved, &data).unwrap();
        let rhs = mixed_action(&MixedGroupElement::SlE(g), &to_mixed(&phi, &data).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn levi_prime_determinant_power() {
        let data = pd(2, 1, 1);
        let phi = to_mixed(&GaussPoly::one(3, 2), &data).unwrap();
        let a = vec![vec![Scalar::from_int(2), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]];
        let out = mixed_action(&MixedGroupElement::LeviPrime(a), &phi).unwrap();
        // (det a)^{m/2 - l} = 2^{1/2}.
        assert_eq!(out.prefactor(), &Scalar::sqrt2());
        let bad = vec![vec![Scalar::from_int(3), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]];
        assert!(matches!(mixed_action(&MixedGroupElement::LeviPrime(bad), &phi), Err(Error::Unsupported(_))));
    }

    #[test]
    fn unipotent_prime_shift_and_phase() {
        let data = pd(2, 1, 1);
        let phi = to_mixed(&GaussPoly::var(3, 1, 1, 1), &data).unwrap();
        let b = vec![vec![Scalar::from_int(2)]];
        let out = mixed_action(&MixedGroupElement::UnipotentPrime(b), &phi).unwrap();
        // Phase e(x_W^2) enters Q as -2i on the W diagonal.
        assert_eq!(out.quad()[1][1], Scalar::one() - Scalar::from_int(2) * Scalar::i());
        // xi -> xi + 2 u'.
        assert_eq!(out.quad()[0][2], Scalar::from_int(2));
    }

    /// Numerical partial Fourier transform for `l = n = 1`: `f` takes the
    /// Witt coordinates `(y, x_W, y')` of a point of `V`.
    fn numeric_mixed(f: &dyn Fn(f64, &[f64], f64) -> (f64, f64), xi: f64, xw: &[f64], yp: f64) -> (f64, f64) {
        let (a, b, steps) = (-9.0, 9.0, 18000);
        let h = (b - a) / steps as f64;
        let mut acc = (0.0, 0.0);
        for k in 0..=steps {
            let y = a + h * k as f64;
            let wt = if k == 0 || k == steps { 0.5 } else { 1.0 };
            let (fr, fi) = f(y, xw, yp);
            let ang = -2.0 * std::f64::consts::PI * y * xi;
            let (c, s) = (ang.cos(), ang.sin());
            acc.0 += wt * h * (fr * c - fi * s);
            acc.1 += wt * h * (fr * s + fi * c);
        }
        acc
    }

    /// `phi(x) = p(x) exp(-pi |x|^2)` at Witt coordinates, `m = 3`, `l = 1`.
    fn schrodinger_at(phi: &GaussPoly, y: f64, xw: f64, yp: f64) -> (f64, f64) {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let x = [(y - yp) * r, xw, (y + yp) * r];
        let g = (-std::f64::consts::PI * x.iter().map(|t| t * t).sum::<f64>()).exp();
        let (pr, pi) = phi.poly().eval_f64(&x.map(|t| (t, 0.0)));
        (pr * g, pi * g)
    }

    fn witt_to_std(v: [f64; 3]) -> [f64; 3] {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        [(v[0] - v[2]) * r, v[1], (v[0] + v[2]) * r]
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-8 && (a.1 - b.1).abs() < 1e-8
    }

    fn sample_phi() -> GaussPoly {
        phi_delta(&DeltaMatrix::from_exponents(3, 1, vec![1, 1, 2]).unwrap())
    }

    #[test]
    fn unipotent_matches_quadrature() {
        let data = pd(2, 1, 1);
        let phi = sample_phi();
        // n(u) = u, n(e_2) = e_2 + u, n(u') = u' + e_2 + u/2 in Witt
        // coordinates (y, x_W, y'); it preserves the form since (u, u') = -1.
        let nm = vec![
            vec![Scalar::one(), Scalar::one(), frac(1, 2)],
            vec![Scalar::zero(), Scalar::one(), Scalar::one()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let out = mixed_action(&MixedGroupElement::Unipotent(nm), &to_mixed(&phi, &data).unwrap()).unwrap();
        let f = |y: f64, xw: &[f64], yp: f64| {
            // n^{-1}(y, w, y') = (y - w + y'/2, w - y', y').
            let v = [y - xw[0] + yp / 2.0, xw[0] - yp, yp];
            schrodinger_at(&phi, v[0], v[1], v[2])
        };
        for (xi, xw, yp) in [(0.3, 0.2, -0.4), (-0.5, 0.7, 0.1), (0.0, -0.3, 0.6)] {
            assert!(close(numeric_mixed(&f, xi, &[xw], yp), out.eval_f64(&[xi, xw, yp])));
        }
    }

    #[test]
    fn unipotent_prime_matches_quadrature() {
        let data = pd(2, 1, 1);
        let phi = sample_phi();
        let b = frac(3, 4);
        let out = mixed_action(&MixedGroupElement::UnipotentPrime(vec![vec![b.clone()]]), &to_mixed(&phi, &data).unwrap()).unwrap();
        let f = |y: f64, xw: &[f64], yp: f64| {
            let x = witt_to_std([y, xw[0], yp]);
            let q = x[0] * x[0] + x[1] * x[1] - x[2] * x[2];
            let ang = 2.0 * std::f64::consts::PI * 0.75 * q / 2.0;
            let (r, i) = schrodinger_at(&phi, y, xw[0], yp);
            (r * ang.cos() - i * ang.sin(), r * ang.sin() + i * ang.cos())
        };
        for (xi, xw, yp) in [(0.3, 0.2, -0.4), (-0.5, 0.7, 0.1)] {
            assert!(close(numeric_mixed(&f, xi, &[xw], yp), out.eval_f64(&[xi, xw, yp])));
        }
    }

    #[test]
    fn levi_prime_matches_quadrature() {
        let data = pd(2, 1, 1);
        let phi = sample_phi();
        let a = 2.0f64;
        let out = mixed_action(&MixedGroupElement::LeviPrime(vec![vec![Scalar::from_int(2)]]), &to_mixed(&phi, &data).unwrap()).unwrap();
        // m'(a) phi(x) = a^{m/2} phi(x a) for n = 1.
        let f = |y: f64, xw: &[f64], yp: f64| {
            let (r, i) = schrodinger_at(&phi, y * a, xw[0] * a, yp * a);
            let c = a.powf(1.5);
            (c * r, c * i)
        };
        for (xi, xw, yp) in [(0.3, 0.2, -0.4), (-0.5, 0.7, 0.1)] {
            assert!(close(numeric_mixed(&f, xi, &[xw], yp), out.eval_f64(&[xi, xw, yp])));
        }
    }
}
