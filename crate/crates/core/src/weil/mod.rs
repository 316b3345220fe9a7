//! Polynomial-times-Gaussian vectors of the Weil representation in the
//! Schrödinger, Fock and mixed models, and the maps between them.
//!
//! Variables are laid out row-major: the variable of row `r` (a basis
//! vector of the quadratic space, 1-based) and column `j` (1-based) has
//! index `(r - 1) * n + (j - 1)`.

mod fock;
mod mixed;
mod poly;
mod schrodinger;

pub use fock::{fock_restrict, to_delta_basis, to_fock};
pub use mixed::{mixed_action, to_mixed, MixedElement, MixedGroupElement};
pub use poly::{Exponents, Poly};
pub use schrodinger::{
    fourier_1d, geometric_action, hermite, moment, phi_delta, raise, weil_restrict,
};

use std::fmt;

use crate::error::{Error, Result};

/// Index of the variable `(r, j)`.
pub fn var_index(n: usize, r: usize, j: usize) -> usize {
    (r - 1) * n + (j - 1)
}

/// `p(x) * exp(-pi tr(x, x)_0)` in the variables `x_{rj}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussPoly {
    m: usize,
    n: usize,
    poly: Poly,
}

/// A polynomial in the Fock variables `z_{rj}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockPoly {
    m: usize,
    n: usize,
    poly: Poly,
}

macro_rules! model_poly {
    ($t:ident, $var:literal) => {
        impl $t {
            pub fn new(m: usize, n: usize, poly: Poly) -> Result<Self> {
                if poly.nvars() != m * n {
                    return Err(Error::ShapeMismatch(format!(
                        "polynomial has {} variables, expected {m} x {n}",
                        poly.nvars()
                    )));
                }
                Ok($t { m, n, poly })
            }

            pub fn one(m: usize, n: usize) -> Self {
                $t { m, n, poly: Poly::one(m * n) }
            }

            pub fn zero(m: usize, n: usize) -> Self {
                $t { m, n, poly: Poly::zero(m * n) }
            }

            pub fn var(m: usize, n: usize, r: usize, j: usize) -> Self {
                $t { m, n, poly: Poly::var(m * n, var_index(n, r, j)) }
            }

            pub fn rows(&self) -> usize {
                self.m
            }

            pub fn cols(&self) -> usize {
                self.n
            }

            pub fn poly(&self) -> &Poly {
                &self.poly
            }

            pub fn into_poly(self) -> Poly {
                self.poly
            }

            pub fn is_zero(&self) -> bool {
                self.poly.is_zero()
            }

            fn check_shape(&self, o: &$t) -> Result<()> {
                if (self.m, self.n) != (o.m, o.n) {
                    return Err(Error::ShapeMismatch(format!(
                        "{}x{} vs {}x{}",
                        self.m, self.n, o.m, o.n
                    )));
                }
                Ok(())
            }

            pub fn add(&self, o: &$t) -> Result<$t> {
                self.check_shape(o)?;
                Ok($t { m: self.m, n: self.n, poly: self.poly.add(&o.poly) })
            }

            pub fn scale(&self, c: &crate::Scalar) -> $t {
                $t { m: self.m, n: self.n, poly: self.poly.scale(c) }
            }

            /// Name of the variable with index `i`.
            pub fn var_name(n: usize, i: usize) -> String {
                format!(concat!($var, "{}_{}"), i / n + 1, i % n + 1)
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let n = self.n;
                write!(f, "{}", self.poly.render(|i| $t::var_name(n, i)))
            }
        }
    };
}

model_poly!(GaussPoly, "x");
model_poly!(FockPoly, "z");

impl FockPoly {
    pub fn mul(&self, o: &FockPoly) -> Result<FockPoly> {
        self.check_shape(o)?;
        Ok(FockPoly { m: self.m, n: self.n, poly: self.poly.mul(&o.poly) })
    }
}

/// Exponent matrix `Delta = (delta_{rj})` indexing the Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaMatrix {
    m: usize,
    n: usize,
    entries: Vec<u8>,
}

impl DeltaMatrix {
    pub fn zero(m: usize, n: usize) -> Self {
        DeltaMatrix { m, n, entries: vec![0; m * n] }
    }

    pub fn from_exponents(m: usize, n: usize, entries: Exponents) -> Result<Self> {
        if entries.len() != m * n {
            return Err(Error::ShapeMismatch(format!("{} entries for a {m}x{n} matrix", entries.len())));
        }
        Ok(DeltaMatrix { m, n, entries })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, j: usize) -> u8 {
        self.entries[var_index(self.n, r, j)]
    }

    pub fn set(&mut self, r: usize, j: usize, v: u8) {
        let i = var_index(self.n, r, j);
        self.entries[i] = v;
    }

    pub fn increment(&mut self, r: usize, j: usize) {
        let i = var_index(self.n, r, j);
        self.entries[i] += 1;
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn total(&self) -> usize {
        self.entries.iter().map(|&e| e as usize).sum()
    }

    fn row_block(&self, rows: impl Iterator<Item = usize>) -> Vec<Vec<u8>> {
        rows.map(|r| (1..=self.n).map(|j| self.get(r, j)).collect()).collect()
    }

    /// Rows `1..=p`.
    pub fn delta_plus(&self, p: usize) -> Vec<Vec<u8>> {
        self.row_block(1..=p.min(self.m))
    }

    /// Rows `p+1..=m`.
    pub fn delta_minus(&self, p: usize) -> Vec<Vec<u8>> {
        self.row_block(p + 1..=self.m)
    }

    /// Middle rows `l+1..=m-l`.
    pub fn delta_prime(&self, l: usize) -> Vec<Vec<u8>> {
        self.row_block(l + 1..=self.m - l)
    }

    /// First and last `l` rows.
    pub fn delta_double_prime(&self, l: usize) -> Vec<Vec<u8>> {
        self.row_block((1..=l).chain(self.m + 1 - l..=self.m))
    }
}
