//! Fock model: the intertwiner from the Schrödinger model and the local
//! restriction of Fock polynomials.

use std::collections::BTreeMap;

use super::{phi_delta, var_index, DeltaMatrix, FockPoly, GaussPoly, Poly};
use crate::error::{Error, Result};
use crate::liegeom::ParabolicData;
use crate::scalars::Scalar;

/// Coordinates of `phi` in the basis `phi_Delta`.
///
/// `phi_Delta = 2^{|Delta|} x^Delta + (lower degree)`, so the expansion is
/// a triangular solve from the top degree down.
pub fn to_delta_basis(phi: &GaussPoly) -> BTreeMap<DeltaMatrix, Scalar> {
    let (m, n) = (phi.rows(), phi.cols());
    let mut rest = phi.poly().clone();
    let mut out = BTreeMap::new();
    while let Some(top) = rest
        .terms()
        .iter()
        .max_by_key(|(e, _)| (e.iter().map(|&x| x as usize).sum::<usize>(), (*e).clone()))
        .map(|(e, c)| (e.clone(), c.clone()))
    {
        let (e, c) = top;
        let deg: usize = e.iter().map(|&x| x as usize).sum();
        let coeff = c * Scalar::sqrt2_pow(-2 * deg as i64);
        let delta = DeltaMatrix::from_exponents(m, n, e).expect("shape is consistent");
        rest.add_scaled(&-&coeff, phi_delta(&delta).poly());
        out.insert(delta, coeff);
    }
    out
}

/// The intertwiner `phi_0 -> 1`, `phi_Delta -> prod (z_{rj}/2pi i)^{delta_rj}`
/// with an extra sign `-1` per power of a variable in a negative row.
pub fn to_fock(phi: &GaussPoly, p: usize) -> FockPoly {
    let (m, n) = (phi.rows(), phi.cols());
    let inv = Scalar::two_pi_i().inv().expect("2 pi i is invertible");
    let mut poly = Poly::zero(m * n);
    for (delta, c) in to_delta_basis(phi) {
        let total = delta.total();
        let negative: usize = (p + 1..=m).flat_map(|r| (1..=n).map(move |j| (r, j))).map(|(r, j)| delta.get(r, j) as usize).sum();
        let mut coeff = c * inv.pow(total as u32);
        if negative % 2 == 1 {
            coeff = -coeff;
        }
        poly.add_term(delta.entries().to_vec(), &coeff);
    }
    FockPoly { m, n, poly }
}

/// Local restriction in the Fock model. For each `r <= l` and column `j`,
/// the pair `z_{r,j}, z_{m+1-r,j}` decides the fate of a monomial: both
/// absent keeps it, exactly one present deletes it, both present is
/// rejected. Surviving variables are relabelled to rows of `W`.
pub fn fock_restrict(psi: &FockPoly, pd: &ParabolicData) -> Result<FockPoly> {
    let (m, n, l) = (pd.m(), psi.cols(), pd.l);
    if psi.rows() != m {
        return Err(Error::ShapeMismatch(format!("{} rows for a {m}-dimensional space", psi.rows())));
    }
    let mw = m - 2 * l;
    let mut out = Poly::zero(mw * n);
    for (e, c) in psi.poly().terms() {
        let mut keep = true;
        for r in 1..=l {
            for j in 1..=n {
                let a = e[var_index(n, r, j)];
                let b = e[var_index(n, m + 1 - r, j)];
                if a > 0 && b > 0 {
                    return Err(Error::MixedRestriction(format!(
                        "z{r}_{j}^{a} z{}_{j}^{b}",
                        m + 1 - r
                    )));
                }
                if a > 0 || b > 0 {
                    keep = false;
                }
            }
        }
        if keep {
            let mut ew = vec![0u8; mw * n];
            for r in l + 1..=m - l {
                for j in 1..=n {
                    ew[var_index(n, r - l, j)] = e[var_index(n, r, j)];
                }
            }
            out.add_term(ew, c);
        }
    }
    Ok(FockPoly { m: mw, n, poly: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liegeom::QuadSpace;
    use crate::weil::{raise, weil_restrict};
    use proptest::prelude::*;

    #[test]
    fn intertwiner_examples() {
        assert_eq!(to_fock(&GaussPoly::one(3, 1), 2), FockPoly::one(3, 1));
        let inv = Scalar::two_pi_i().inv().unwrap();
        let mut d = DeltaMatrix::zero(3, 1);
        d.set(1, 1, 1);
        assert_eq!(to_fock(&phi_delta(&d), 2), FockPoly::var(3, 1, 1, 1).scale(&inv));
        let mut d = DeltaMatrix::zero(3, 1);
        d.set(3, 1, 1);
        assert_eq!(to_fock(&phi_delta(&d), 2), FockPoly::var(3, 1, 3, 1).scale(&-inv));
    }

    #[test]
    fn delta_expansion_roundtrip() {
        let x = Poly::var(4, 0);
        let y = Poly::var(4, 3);
        let p = x.pow(3).add(&x.mul(&y)).add(&Poly::constant(4, Scalar::pi()));
        let phi = GaussPoly::new(2, 2, p.clone()).unwrap();
        let mut back = Poly::zero(4);
        for (d, c) in to_delta_basis(&phi) {
            back.add_scaled(&c, phi_delta(&d).poly());
        }
        assert_eq!(back, p);
    }

    #[test]
    fn restriction_examples() {
        let pd = ParabolicData::new(QuadSpace::new(3, 1).unwrap(), 1).unwrap();
        assert!(fock_restrict(&FockPoly::var(4, 1, 1, 1), &pd).unwrap().is_zero());
        let z = FockPoly::var(4, 1, 2, 1).mul(&FockPoly::var(4, 1, 3, 1)).unwrap();
        let zw = FockPoly::var(2, 1, 1, 1).mul(&FockPoly::var(2, 1, 2, 1)).unwrap();
        assert_eq!(fock_restrict(&z, &pd).unwrap(), zw);
        assert_eq!(fock_restrict(&FockPoly::one(4, 1), &pd).unwrap(), FockPoly::one(2, 1));
        let mixed = FockPoly::var(4, 1, 1, 1).mul(&FockPoly::var(4, 1, 4, 1)).unwrap();
        assert!(matches!(fock_restrict(&mixed, &pd), Err(Error::MixedRestriction(_))));
    }

    fn delta_strategy(m: usize, n: usize) -> impl Strategy<Value = DeltaMatrix> {
        proptest::collection::vec(0u8..3, m * n)
            .prop_map(move |e| DeltaMatrix::from_exponents(m, n, e).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn restriction_commutes_with_intertwiner(
            (p, q, l, delta) in prop_oneof![
                Just((1usize, 1usize, 1usize)), Just((2, 1, 1)), Just((2, 2, 1)), Just((3, 2, 2)), Just((3, 3, 2))
            ]
            .prop_flat_map(|(p, q, l)| {
                (1usize..=2).prop_flat_map(move |n| (Just(p), Just(q), Just(l), delta_strategy(p + q, n)))
            })
        ) {
            let pd = ParabolicData::new(QuadSpace::new(p, q).unwrap(), l).unwrap();
            let phi = phi_delta(&delta);
            match fock_restrict(&to_fock(&phi, p), &pd) {
                Ok(r) => {
                    let s = weil_restrict(&phi, &pd).unwrap();
                    prop_assert_eq!(to_fock(&s, p - l), r);
                }
                Err(Error::MixedRestriction(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }

        #[test]
        fn raising_is_multiplication(delta in delta_strategy(3, 2), r in 1usize..=3, j in 1usize..=2) {
            let p = 2;
            let phi = phi_delta(&delta);
            let lhs = to_fock(&raise(&phi, r, j), p);
            let inv = Scalar::two_pi_i().inv().unwrap();
            let factor = if r <= p { inv } else { -inv };
            let rhs = to_fock(&phi, p).mul(&FockPoly::var(3, 2, r, j)).unwrap().scale(&factor);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
