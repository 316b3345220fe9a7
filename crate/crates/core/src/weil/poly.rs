//! Sparse multivariate polynomials with [`Scalar`] coefficients.

use std::collections::BTreeMap;

use crate::scalars::Scalar;

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    pub fn monomial(exps: Exponents, c: Scalar) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, &c);
        p
    }

    /// `sum_k coeffs[k] * x_i^k`.
    pub fn univariate(nvars: usize, i: usize, coeffs: &[Scalar]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as u8;
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u8]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    /// Coefficients of a polynomial in at most one variable, indexed by power.
    pub fn univariate_coeffs(&self, i: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.degree() + 1];
        for (e, c) in &self.terms {
            out[e[i] as usize] += c;
        }
        out
    }

    pub fn add_term(&mut self, exps: Exponents, c: &Scalar) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c);
        }
    }

    /// `self += c * o`.
    pub fn add_scaled(&mut self, c: &Scalar, o: &Poly) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &o.terms {
            self.add_term(e.clone(), &(c * x));
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), o);
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        out.add_scaled(c, self);
        out
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `x_i * self`.
    pub fn mul_var(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] += 1;
                (e, c.clone())
            })
            .collect();
        Poly { nvars: self.nvars, terms }
    }

    /// `d/dx_i self`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let k = e[i];
                let mut e = e.clone();
                e[i] -= 1;
                out.add_term(e, &(c * Scalar::from_int(k as i64)));
            }
        }
        out
    }

    /// Substitutes `x_i -> images[i]`; the images share a variable count.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            out.add_assign(&term);
        }
        out
    }

    /// Maps every exponent vector through `f`, dropping `None`; the
    /// surviving coefficients are multiplied by the returned factor.
    pub fn remap(&self, nvars: usize, mut f: impl FnMut(&[u8]) -> Option<(Exponents, Scalar)>) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            if let Some((e2, s)) = f(e) {
                out.add_term(e2, &(c * &s));
            }
        }
        out
    }

    /// Evaluation with all variables replaced by complex numbers.
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for (e, c) in &self.terms {
            let mut v = c.to_f64_pair();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v = (v.0 * point[i].0 - v.1 * point[i].1, v.0 * point[i].1 + v.1 * point[i].0);
                }
            }
            acc.0 += v.0;
            acc.1 += v.1;
        }
        acc
    }

    /// Human-readable form with caller-supplied variable names.
    pub fn render(&self, name: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{k}", name(i)) })
                .collect();
            if mono.is_empty() {
                parts.push(format!("({c})"));
            } else {
                parts.push(format!("({c})*{}", mono.join("*")));
            }
        }
        parts.join(" + ")
    }
}
