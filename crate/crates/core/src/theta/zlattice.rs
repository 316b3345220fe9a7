//! Exact integer lattice algebra: column Hermite reduction, kernels, integer
//! solutions, and the boundary lattice datum `L̂_W`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LatticeCoset;
use crate::error::{Error, Result};
use crate::liegeom::ParabolicData;

type Mat = Vec<Vec<BigInt>>;

/// Column-echelon form `A U = H` with `U` unimodular. `pivots[j]` is the row
/// of the leading entry of column `j < rank`; columns `rank..` of `H` vanish.
pub(crate) struct Echelon {
    pub h: Mat,
    pub u: Mat,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `U` spanning the integer kernel of `A`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let r = self.u.len();
        (self.rank()..r).map(|j| (0..r).map(|i| self.u[i][j].clone()).collect()).collect()
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col_a, col_b <- (x col_a + y col_b, u col_a + v col_b)`.
fn combine(m: &mut Mat, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    for row in m.iter_mut() {
        let (ca, cb) = (row[a].clone(), row[b].clone());
        row[a] = x * &ca + y * &cb;
        row[b] = u * &ca + v * &cb;
    }
}

pub(crate) fn echelon(a: &Mat, ncols: usize) -> Echelon {
    let mut h = a.clone();
    let mut u: Mat = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut pc = 0;
    for row in 0..h.len() {
        if pc == ncols {
            break;
        }
        for j in pc + 1..ncols {
            if h[row][j].is_zero() {
                continue;
            }
            if h[row][pc].is_zero() {
                swap_cols(&mut h, pc, j);
                swap_cols(&mut u, pc, j);
                continue;
            }
            let (a0, b0) = (h[row][pc].clone(), h[row][j].clone());
            let e = a0.extended_gcd(&b0);
            let (x, y) = (e.x, e.y);
            let (p, q) = (&b0 / &e.gcd, &a0 / &e.gcd);
            // [x  -p; y  q] has determinant xq + yp = 1.
            let mp = -p;
            combine(&mut h, pc, j, &x, &y, &mp, &q);
            combine(&mut u, pc, j, &x, &y, &mp, &q);
        }
        if !h[row][pc].is_zero() {
            if h[row][pc].is_negative() {
                for r in h.iter_mut().chain(u.iter_mut()) {
                    r[pc] = -&r[pc];
                }
            }
            pivots.push(row);
            pc += 1;
        }
    }
    Echelon { h, u, pivots }
}

/// An integer `k` with `A k = b`, or `None`.
pub(crate) fn solve(a: &Mat, b: &[BigInt], ncols: usize) -> Option<Vec<BigInt>> {
    let e = echelon(a, ncols);
    let mut y = Vec::with_capacity(e.rank());
    for (j, &row) in e.pivots.iter().enumerate() {
        let mut rhs = b[row].clone();
        for (i, yi) in y.iter().enumerate() {
            rhs -= &e.h[row][i] * yi;
        }
        let (q, r) = rhs.div_rem(&e.h[row][j]);
        if !r.is_zero() {
            return None;
        }
        y.push(q);
    }
    for (row, brow) in b.iter().enumerate() {
        let lhs: BigInt = y.iter().enumerate().map(|(i, yi)| &e.h[row][i] * yi).sum();
        if &lhs != brow {
            return None;
        }
    }
    Some((0..ncols).map(|i| y.iter().enumerate().map(|(j, yj)| &e.u[i][j] * yj).sum()).collect())
}

fn lcm_of_denominators(v: impl Iterator<Item = BigInt>) -> BigInt {
    v.fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

/// Rows of rational equations scaled to integers, one common factor per row.
fn integer_rows(rows: &[Vec<BigRational>], rhs: Option<&[BigRational]>) -> (Mat, Vec<BigInt>) {
    let mut out = Vec::new();
    let mut out_rhs = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let extra = rhs.map(|b| b[i].denom().clone());
        let f = lcm_of_denominators(row.iter().map(|x| x.denom().clone()).chain(extra));
        let fr = BigRational::from_integer(f.clone());
        out.push(row.iter().map(|x| (x * &fr).to_integer()).collect());
        if let Some(b) = rhs {
            out_rhs.push((&b[i] * &fr).to_integer());
        }
    }
    (out, out_rhs)
}

fn mat_vec(cols: &[Vec<BigRational>], k: &[BigInt]) -> Vec<BigRational> {
    let d = cols.first().map_or(0, Vec::len);
    let mut out = vec![BigRational::zero(); d];
    for (c, ki) in cols.iter().zip(k) {
        let ki = BigRational::from_integer(ki.clone());
        for (o, x) in out.iter_mut().zip(c) {
            *o += x * &ki;
        }
    }
    out
}

/// Integer combinations of `cols` whose coordinates in `rows` vanish.
fn sub_kernel(cols: &[Vec<BigRational>], rows: std::ops::Range<usize>) -> Vec<Vec<BigInt>> {
    let eqs: Vec<Vec<BigRational>> = rows.map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let (a, _) = integer_rows(&eqs, None);
    echelon(&a, cols.len()).kernel()
}

/// Largest number of product cosets `hat_lw` will produce.
const MAX_COSETS: usize = 100_000;

/// `L̂_W`: for `L = Π_j (Λ + h_j)` given as `n` cosets of one lattice `Λ ⊂ V`
/// in Witt coordinates `(u_1..u_ℓ, e_{ℓ+1}..e_{m-ℓ}, u'_1..u'_ℓ)`, splits
/// `L ∩ (E^⊥)^n` into product cosets `(M_E + a_E) × (M_W + a_W)` and returns
/// the `W^n` cosets weighted by `|det M_E|^{-n}` (determinant in the basis
/// `u_1..u_ℓ`) times the input weights. The output uses the `(row, column)`
/// variable layout of the Weil representation on `W^n`.
pub fn hat_lw(cosets: &[LatticeCoset], pd: &ParabolicData) -> Result<Vec<LatticeCoset>> {
    let n = cosets.len();
    let m = pd.m();
    let l = pd.l;
    let mw = m - 2 * l;
    let Some(first) = cosets.first() else {
        return Err(Error::InvalidParameters("at least one column coset is required".into()));
    };
    for c in cosets {
        if c.dim() != m {
            return Err(Error::ShapeMismatch(format!("coset of dimension {} in a space of dimension {m}", c.dim())));
        }
        if c.basis() != first.basis() {
            return Err(Error::InvalidParameters("all columns must share one lattice".into()));
        }
    }
    let basis = first.basis();

    // M = Λ ∩ E^⊥: integer kernel of the E'-coordinates.
    let mk = sub_kernel(basis, m - l..m);
    let mcols: Vec<Vec<BigRational>> = mk.iter().map(|k| mat_vec(basis, k)).collect();
    let ke = sub_kernel(&mcols, l..m - l);
    let kw = sub_kernel(&mcols, 0..l);
    if ke.len() != l || kw.len() != mw {
        return Err(Error::DegenerateDecomposition(format!(
            "ranks of the E- and W-parts are {} and {}, expected {l} and {mw}",
            ke.len(),
            kw.len()
        )));
    }
    let me: Vec<Vec<BigRational>> = ke.iter().map(|k| mat_vec(&mcols, k)).collect();
    let mwb: Vec<Vec<BigRational>> = kw.iter().map(|k| mat_vec(&mcols, k)).collect();
    let det_e = super::det(&me.iter().map(|v| v[..l].to_vec()).collect::<Vec<_>>()).abs();
    let weight_base = (BigRational::one() / det_e).pow(n as i32);

    // Representatives of M / (M_E ⊕ M_W): the box of the triangular basis.
    let r = mcols.len();
    let s: Mat = (0..r).map(|i| ke.iter().chain(kw.iter()).map(|c| c[i].clone()).collect()).collect();
    let hs = echelon(&s, r);
    let diag: Vec<BigInt> = (0..r).map(|j| hs.h[hs.pivots[j]][j].clone()).collect();
    let count = diag.iter().try_fold(1usize, |acc, d| {
        let d: usize = d.try_into().ok()?;
        acc.checked_mul(d).filter(|&c| c <= MAX_COSETS)
    });
    let Some(count) = count else {
        return Err(Error::Unsupported(format!("more than {MAX_COSETS} product cosets")));
    };
    let mut reps: Vec<Vec<BigRational>> = Vec::with_capacity(count);
    let mut y = vec![BigInt::zero(); r];
    loop {
        reps.push(mat_vec(&mcols, &y));
        let mut i = 0;
        while i < r {
            y[i] += 1;
            if y[i] < diag[i] {
                break;
            }
            y[i] = BigInt::zero();
            i += 1;
        }
        if i == r {
            break;
        }
    }

    // Base point of each column in L_j ∩ E^⊥, if any.
    let eprime: Vec<Vec<BigRational>> = (m - l..m).map(|row| basis.iter().map(|c| c[row].clone()).collect()).collect();
    let mut column_shifts: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(n);
    for c in cosets {
        let target: Vec<BigRational> = c.shift()[m - l..].iter().map(|x| -x).collect();
        let (a, b) = integer_rows(&eprime, Some(&target));
        let Some(k0) = solve(&a, &b, m) else {
            return Ok(Vec::new());
        };
        let x0: Vec<BigRational> = mat_vec(basis, &k0).iter().zip(c.shift()).map(|(a, b)| a + b).collect();
        column_shifts.push(reps.iter().map(|rep| (l..m - l).map(|i| &x0[i] + &rep[i]).collect()).collect());
    }

    // Product over columns, in the (row, column) layout.
    let mut wbasis = Vec::with_capacity(mw * n);
    for j in 0..n {
        for b in &mwb {
            let mut v = vec![BigRational::zero(); mw * n];
            for row in 0..mw {
                v[row * n + j] = b[l + row].clone();
            }
            wbasis.push(v);
        }
    }
    let weight = cosets.iter().fold(weight_base, |acc, c| acc * c.weight());
    let mut out = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let mut shift = vec![BigRational::zero(); mw * n];
        for (j, &ci) in choice.iter().enumerate() {
            for row in 0..mw {
                shift[row * n + j] = column_shifts[j][ci][row].clone();
            }
        }
        out.push(LatticeCoset::new(wbasis.clone(), shift, weight.clone())?);
        let mut j = 0;
        while j < n {
            choice[j] += 1;
            if choice[j] < reps.len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        if out.len() > MAX_COSETS {
            return Err(Error::Unsupported(format!("more than {MAX_COSETS} product cosets")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn echelon_is_unimodular_and_exact() {
        let a: Mat = vec![z(&[4, 6, 10]), z(&[1, 1, 1])];
        let e = echelon(&a, 3);
        assert_eq!(e.rank(), 2);
        for (row, arow) in a.iter().enumerate() {
            for j in 0..3 {
                let v: BigInt = (0..3).map(|i| &arow[i] * &e.u[i][j]).sum();
                assert_eq!(v, e.h[row][j]);
            }
        }
        let k = e.kernel();
        assert_eq!(k.len(), 1);
        for arow in &a {
            let v: BigInt = (0..3).map(|i| &arow[i] * &k[0][i]).sum();
            assert!(v.is_zero());
        }
    }

    #[test]
    fn solve_detects_divisibility() {
        let a: Mat = vec![z(&[2, 4])];
        assert!(solve(&a, &z(&[3]), 2).is_none());
        let k = solve(&a, &z(&[6]), 2).unwrap();
        assert_eq!(&k[0] * 2 + &k[1] * 4, BigInt::from(6));
    }
}
