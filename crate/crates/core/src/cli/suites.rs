//! The checks behind each subcommand, built from a [`RunConfig`] as a flat,
//! ordered list.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use super::{Finding, RunConfig, Suite, ThetaConfig};
use crate::cochain::verify;
use crate::error::Result;
use crate::liegeom::QuadSpace;
use crate::multitensor::{pair, schur_image, MultiIndex, Space, SparseTensor};
use crate::scalars::Scalar;
use crate::tableaux::{factorial, Filling, Partition};
use crate::theta::{
    hat_lw, nonvanishing_search, poisson_check, theta_eval, theta_eval_to, verify_certificate, LatticeCoset,
    SearchLimits,
};
use crate::weil::{fourier_1d, hermite, GaussPoly, Poly};

type Job = Box<dyn Fn() -> Result<Finding> + Send + Sync>;

/// One scheduled check.
pub struct Check {
    pub suite: &'static str,
    pub claim: &'static str,
    pub params: Value,
    pub job: Job,
}

fn check(suite: &'static str, claim: &'static str, params: Value, job: impl Fn() -> Result<Finding> + Send + Sync + 'static) -> Check {
    Check { suite, claim, params, job: Box::new(job) }
}

fn verdict(v: Result<verify::Verdict>) -> Result<Finding> {
    v.map(|v| Finding { holds: v.holds, witness: v.detail })
}

const CLOSED_SPACES: [(usize, usize); 5] = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)];
const RESTRICTION_SPACES: [(usize, usize); 3] = [(2, 2), (3, 1), (3, 2)];
const PRODUCT_SPACES: [(usize, usize); 3] = [(1, 1), (2, 1), (2, 2)];
const NILPOTENT_SPACES: [(usize, usize); 2] = [(2, 2), (3, 2)];

/// `(p, q, l, l')` instances of the recorded primitive.
pub const PRIMITIVE_INSTANCES: [(usize, usize, usize, usize); 5] =
    [(3, 2, 2, 0), (4, 3, 2, 1), (5, 3, 3, 0), (5, 3, 2, 1), (4, 3, 2, 2)];

fn spaces(cfg: &RunConfig, default: &[(usize, usize)]) -> Vec<(usize, usize)> {
    cfg.spaces.clone().unwrap_or_else(|| default.to_vec())
}

fn or_range(v: &Option<Vec<usize>>, lo: usize, hi: usize) -> Vec<usize> {
    v.clone().unwrap_or_else(|| (lo..=hi).collect())
}

/// Shapes for the Schur-level sweeps: configured partitions, or all
/// partitions of `lo..=hi` boxes; only those with at most `rows` rows.
fn shapes(cfg: &RunConfig, lo: usize, hi: usize, rows: usize) -> Vec<Partition> {
    let all = match &cfg.partitions {
        Some(ps) => ps.clone(),
        None => (lo..=hi).flat_map(Partition::all_of).collect(),
    };
    all.into_iter().filter(|p| p.rows() <= rows).collect()
}

fn shape_str(p: &Partition) -> String {
    format!("{:?}", p.parts())
}

pub fn build(cfg: &RunConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let all = cfg.suite == Suite::All;
    if all || cfg.suite == Suite::Closed {
        closed(cfg, &mut out);
    }
    if all || cfg.suite == Suite::Restriction {
        restriction(cfg, &mut out);
    }
    if all || cfg.suite == Suite::Product {
        product(cfg, &mut out);
    }
    if all || cfg.suite == Suite::Tableaux {
        tableaux(cfg, &mut out);
    }
    if all || cfg.suite == Suite::Hermite {
        hermite_suite(cfg, &mut out);
    }
    if all || cfg.suite == Suite::Nilpotent {
        nilpotent(cfg, &mut out);
    }
    if all {
        theta_suite(cfg, &mut out);
    }
    if cfg.suite == Suite::Theta {
        theta_eval_checks(&cfg.theta, cfg.precision, &mut out);
    }
    out
}

fn closed(cfg: &RunConfig, out: &mut Vec<Check>) {
    let deg = cfg.max_degree.unwrap_or(2);
    for (p, q) in spaces(cfg, &CLOSED_SPACES) {
        for n in or_range(&cfg.n, 1, p.min(2)) {
            for lp in or_range(&cfg.lp, 0, deg) {
                let prm = json!({"p": p, "q": q, "n": n, "lp": lp});
                out.push(check("closed", "closedness", prm.clone(), move || verdict(verify::closedness(p, q, n, lp))));
                out.push(check("closed", "intertwiner", prm.clone(), move || verdict(verify::intertwiner(p, q, n, lp))));
                out.push(check("closed", "k-invariance", prm.clone(), move || verdict(verify::k_invariance(p, q, n, lp))));
                out.push(check("closed", "operator-form", prm, move || verdict(verify::operator_forms(p, q, n, lp))));
            }
        }
    }
}

fn default_levels(p: usize, q: usize) -> Vec<usize> {
    if (p, q) == (3, 2) {
        vec![1, 2]
    } else {
        vec![1]
    }
}

fn restriction(cfg: &RunConfig, out: &mut Vec<Check>) {
    let deg = cfg.max_degree.unwrap_or(2);
    for (p, q) in spaces(cfg, &RESTRICTION_SPACES) {
        let levels = cfg.l.clone().unwrap_or_else(|| default_levels(p, q));
        for l in levels {
            for n in or_range(&cfg.n, 1, 2) {
                for lp in or_range(&cfg.lp, 0, deg) {
                    let prm = json!({"p": p, "q": q, "n": n, "l": l, "lp": lp});
                    out.push(check("restriction", "local-restriction", prm.clone(), move || {
                        verdict(verify::restriction(p, q, n, l, lp))
                    }));
                    if n + l > p {
                        out.push(check("restriction", "vanishing-range", prm, move || {
                            verdict(verify::vanishing(p, q, n, l, lp))
                        }));
                    }
                }
                for shape in shapes(cfg, 1, deg, n) {
                    let prm = json!({"p": p, "q": q, "n": n, "l": l, "shape": shape_str(&shape)});
                    let a = Filling::canonical(&shape);
                    out.push(check("restriction", "local-restriction-schur", prm, move || {
                        verdict(verify::restriction_schur(p, q, n, l, &a))
                    }));
                }
                if n + l <= p {
                    let prm = json!({"p": p, "q": q, "n": n, "l": l});
                    out.push(check("restriction", "iota-of-phi-b", prm, move || verdict(verify::iota_of_phi_b(p, q, n, l))));
                }
            }
        }
    }
}

fn product(cfg: &RunConfig, out: &mut Vec<Check>) {
    let deg = cfg.max_degree.unwrap_or(2);
    for (p, q) in spaces(cfg, &PRODUCT_SPACES) {
        let w = QuadSpace::new(p, q).expect("validated space");
        for n in or_range(&cfg.n, 1, 2) {
            for l in or_range(&cfg.l, 1, 2) {
                for shape in shapes(cfg, 1, deg, n) {
                    let prm = json!({"p": p, "q": q, "n": n, "l": l, "shape": shape_str(&shape)});
                    let a = Filling::canonical(&shape);
                    out.push(check("product", "product-rule", prm, move || verdict(verify::product_rule(w, n, l, &a))));
                }
            }
        }
    }
    for (p, q) in spaces(cfg, &CLOSED_SPACES) {
        for n in or_range(&cfg.n, 1, p.min(2)) {
            for lp in or_range(&cfg.lp, 0, deg) {
                let prm = json!({"p": p, "q": q, "n": n, "lp": lp});
                out.push(check("product", "first-product-rule", prm, move || {
                    verdict(verify::first_product_rule(p, q, n, lp))
                }));
            }
        }
    }
}

/// A tensor in `T^k(C^n)` with three random basis terms and small integer
/// coefficients.
fn random_tensor(rng: &mut StdRng, n: usize, k: usize) -> SparseTensor {
    let space = Space::Cn { n };
    let mut t = SparseTensor::zero(space, k);
    for _ in 0..3 {
        let idx: Vec<u8> = (0..k).map(|_| rng.gen_range(1..=n as u8)).collect();
        t.add_term(MultiIndex::new(&idx), &Scalar::from_int(rng.gen_range(-5..=5)));
    }
    t
}

fn tableaux(cfg: &RunConfig, out: &mut Vec<Check>) {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for f in Filling::all_standard_up_to(6).into_iter().filter(|f| f.size() > 0) {
        let t = random_tensor(&mut rng, 3, f.size());
        let prm = json!({"filling": f.to_string()});
        out.push(check("tableaux", "symmetrizer-idempotent", prm, move || {
            let s = f.symmetrizer(false);
            let once = s.apply(&t)?;
            let twice = s.apply(&once)?;
            Ok(Finding { holds: twice == once, witness: format!("{} terms in s(A)t", once.len()) })
        }));
    }
    for f in Filling::all_standard_up_to(5).into_iter().filter(|f| f.size() > 0) {
        let prm = json!({"filling": f.to_string()});
        out.push(check("tableaux", "symmetrizer-pairing", prm, move || {
            let n = f.shape().rows();
            let eps = f.epsilon(n);
            let value = pair(&f.symmetrizer(true).apply(&eps)?, &f.symmetrizer(false).apply(&eps)?)?;
            let rows: BigInt = f.shape().parts().iter().map(|&r| factorial(r)).product();
            let expected = Scalar::from_ratio(BigRational::new(rows, f.hook_product()));
            Ok(Finding { holds: value == expected, witness: format!("pairing = {value}, |R|/h = {expected}") })
        }));
    }
    for (n, l) in [(1, 1), (2, 1), (2, 2)] {
        for a in Filling::all_standard_up_to(2).into_iter().filter(|a| a.shape().rows() <= n) {
            let prm = json!({"b_rows": n, "b_cols": l, "a": a.to_string()});
            out.push(check("tableaux", "abutment-constant", prm, move || {
                let b = Filling::rectangle(n, l);
                let ba = Filling::abut(&b, &a)?;
                let lhs = b.symmetrizer(false).apply(&b.epsilon(n))?.tensor(&a.symmetrizer(false).apply(&a.epsilon(n))?);
                let c = Filling::abut_constant(&a, &b)?;
                let rhs = ba.symmetrizer(false).apply(&ba.epsilon(n))?.scale(&c);
                Ok(Finding { holds: lhs == rhs, witness: format!("c(A,B) = {c}") })
            }));
        }
    }
    for k in 1..=5 {
        for n in 1..=3 {
            let prm = json!({"k": k, "n": n});
            out.push(check("tableaux", "schur-weyl-dimension", prm, move || {
                let mut total = BigInt::from(0);
                let mut mismatch = None;
                for shape in Partition::all_of(k) {
                    let dim = schur_image(&Filling::canonical(&shape), Space::Cn { n }).dim();
                    if BigInt::from(dim) != shape.gl_dimension(n) {
                        mismatch.get_or_insert(format!("shape {:?}: rank {dim}, formula {}", shape.parts(), shape.gl_dimension(n)));
                    }
                    total += shape.num_standard() * BigInt::from(dim);
                }
                let expected = BigInt::from(n).pow(k as u32);
                let holds = total == expected && mismatch.is_none();
                let witness = mismatch.unwrap_or_else(|| format!("sum = {total}, n^k = {expected}"));
                Ok(Finding { holds, witness })
            }));
        }
    }
}

/// `H_k(-y/√2)`.
pub fn rescaled_hermite(k: usize) -> Poly {
    hermite(k).substitute(&[Poly::var(1, 0).scale(&-Scalar::sqrt2_pow(-1))])
}

fn hermite_suite(cfg: &RunConfig, out: &mut Vec<Check>) {
    let name = |_: usize| "xi".to_string();
    for k in 0..=cfg.max_degree.unwrap_or(8) {
        out.push(check("hermite", "hermite-fourier", json!({"k": k}), move || {
            let ft = fourier_1d(&rescaled_hermite(k));
            let expected = Poly::var(1, 0).pow(k as u32).scale(&(-(Scalar::sqrt2() * Scalar::i())).pow(k as u32));
            Ok(Finding { holds: ft == expected, witness: format!("transform {}, claimed {}", ft.render(name), expected.render(name)) })
        }));
        out.push(check("hermite", "hermite-eigenfunction", json!({"k": k}), move || {
            let h = hermite(k);
            let ft = fourier_1d(&h);
            let expected = h.scale(&(-Scalar::i()).pow(k as u32));
            Ok(Finding { holds: ft == expected, witness: format!("transform {}", ft.render(name)) })
        }));
    }
}

fn nilpotent(cfg: &RunConfig, out: &mut Vec<Check>) {
    let deg = cfg.max_degree.unwrap_or(1);
    for (p, q) in spaces(cfg, &NILPOTENT_SPACES) {
        for l in or_range(&cfg.l, 1, 2) {
            for n in or_range(&cfg.n, 1, 1) {
                for shape in shapes(cfg, 0, deg, n) {
                    let prm = json!({"p": p, "q": q, "n": n, "l": l, "shape": shape_str(&shape)});
                    let a = Filling::canonical(&shape);
                    out.push(check("nilpotent", "nilpotent-cocycle", prm, move || {
                        verdict(verify::nilpotent_cocycle(p, q, n, l, &a))
                    }));
                }
            }
        }
    }
    for (p, q, l, lp) in PRIMITIVE_INSTANCES {
        let prm = json!({"p": p, "q": q, "l": l, "lp": lp});
        out.push(check("nilpotent", "nilpotent-primitive", prm, move || {
            let wdim = p + q - 2 * l;
            let mut count = 0;
            for w in MultiIndex::all(wdim, l + lp - 2) {
                let v = verify::nilpotent_primitive(p, q, l, lp, &w.to_vec())?;
                if !v.holds {
                    return Ok(Finding { holds: false, witness: format!("w = e{w}: {}", v.detail) });
                }
                count += 1;
            }
            Ok(Finding { holds: true, witness: format!("{count} basis tensors w") })
        }));
    }
}

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn gauss(p: Poly) -> GaussPoly {
    GaussPoly::new(p.nvars(), 1, p).expect("one column")
}

/// A random one-variable polynomial of degree at most 3 with small rational
/// coefficients, a lattice `sZ` and a shift with denominator at most 8.
pub fn random_poisson_case(rng: &mut StdRng) -> (LatticeCoset, Poly) {
    let deg = rng.gen_range(0..=3);
    let coeffs: Vec<Scalar> = (0..=deg)
        .map(|_| Scalar::from_frac(rng.gen_range(-6..=6), rng.gen_range(1..=4)))
        .collect();
    let mut p = Poly::univariate(1, 0, &coeffs);
    if p.is_zero() {
        p = Poly::one(1);
    }
    let scales = [q(1, 1), q(2, 1), q(1, 2), q(3, 2), q(3, 1)];
    let s = scales[rng.gen_range(0..scales.len())].clone();
    let den = rng.gen_range(1..=8);
    let h = q(rng.gen_range(-2 * den..=2 * den), den);
    (LatticeCoset::scaled_integer(1, s, vec![h]).expect("rank one"), p)
}

/// Number of random cases in the Poisson suite.
pub const POISSON_CASES: usize = 64;

fn theta_suite(cfg: &RunConfig, out: &mut Vec<Check>) {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for case in 0..POISSON_CASES {
        let (coset, p) = random_poisson_case(&mut rng);
        let prm = json!({"case": case, "lattice": coset, "poly": p.render(|_| "x".into())});
        out.push(check("theta", "poisson", prm, move || {
            let r = poisson_check(&coset, &gauss(p.clone()))?;
            Ok(Finding { holds: r < 1e-10, witness: format!("residual {r:e}") })
        }));
    }
    out.push(check("theta", "theta-nonzero", json!({"lattice": "Z + 1/4", "poly": "x", "t": 4}), || {
        let coset = LatticeCoset::scaled_integer(1, q(1, 1), vec![q(1, 4)])?;
        let v = theta_eval_to(&coset, &gauss(Poly::var(1, 0)), 4.0, 1e-12)?;
        Ok(Finding {
            holds: v.certainly_nonzero(),
            witness: format!("value {:e} with tail bound {:e} over {} terms", v.re, v.tail_bound, v.terms),
        })
    }));
    out.push(check("theta", "nonvanishing-certificate", json!({"poly": "x"}), || {
        let phi = gauss(Poly::var(1, 0));
        let cert = nonvanishing_search(&phi, SearchLimits::default())?;
        let again = verify_certificate(&phi, &cert)?;
        Ok(Finding { holds: cert.holds() && again, witness: serde_json::to_string(&cert).unwrap_or_default() })
    }));
    out.push(check("theta", "boundary-lattice", json!({"p": 1, "q": 1, "l": 1}), || {
        let pd = crate::liegeom::ParabolicData::new(QuadSpace::new(1, 1)?, 1)?;
        let unit = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let l = LatticeCoset::new(unit, vec![q(0, 1); 2], BigRational::one())?;
        let v = hat_lw(&[l], &pd)?;
        let holds = v.len() == 1 && v[0].dim() == 0 && v[0].weight().is_one();
        Ok(Finding { holds, witness: format!("{} cosets", v.len()) })
    }));
}

fn theta_eval_checks(t: &ThetaConfig, precision: u32, out: &mut Vec<Check>) {
    let tol = 2f64.powi(-(precision as i32));
    let prm = json!({"lattice": t.coset, "poly": t.poly.render(|i| format!("x{i}")), "t": t.t, "tolerance": tol});
    let (coset, poly, tt) = (t.coset.clone(), t.poly.clone(), t.t);
    let radius = t.radius;
    out.push(check("theta", "theta-value", prm, move || {
        let phi = gauss(poly.clone());
        let v = match radius {
            Some(r) => theta_eval(&coset, &phi, tt, r)?,
            None => theta_eval_to(&coset, &phi, tt, tol)?,
        };
        Ok(Finding {
            holds: v.tail_bound <= tol,
            witness: serde_json::to_string(&v).unwrap_or_default(),
        })
    }));
    if t.certify {
        let poly = t.poly.clone();
        out.push(check("theta", "nonvanishing-certificate", json!({"poly": poly.render(|i| format!("x{i}"))}), move || {
            let phi = gauss(poly.clone());
            let cert = nonvanishing_search(&phi, SearchLimits::default())?;
            let again = verify_certificate(&phi, &cert)?;
            Ok(Finding { holds: cert.holds() && again, witness: serde_json::to_string(&cert).unwrap_or_default() })
        }));
    }
}
