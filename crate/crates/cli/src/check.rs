//! Identity checks run by `tenseig check` at seeded random points.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tenseig::norms::{p_norm, p_norm_gradient};
use tenseig::{Norm, Tensor};

const POINTS: usize = 20;
const FD_STEP: f64 = 1e-5;
const FD_TOLERANCE: f64 = 1e-6;
const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Outcome,
    /// Largest relative error seen.
    pub worst: f64,
}

impl CheckResult {
    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    fn measured(name: impl Into<String>, worst: f64, tol: f64) -> Self {
        let outcome = if worst <= tol { Outcome::Pass } else { Outcome::Fail };
        Self { name: name.into(), outcome, worst }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.outcome {
            Outcome::Pass => write!(f, "PASS {} (max rel err {:.3e})", self.name, self.worst),
            Outcome::Fail => write!(f, "FAIL {} (max rel err {:.3e})", self.name, self.worst),
            Outcome::Skip(why) => write!(f, "SKIP {} ({why})", self.name),
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Coordinates in `[0.2, 1]` in absolute value, with random signs.
fn away_from_zero(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let x: f64 = rng.random_range(0.2..1.0);
            if rng.random::<bool>() {
                x
            } else {
                -x
            }
        })
        .collect()
}

fn abs_scale(t: &Tensor, vs: &[Vec<f64>]) -> f64 {
    let refs: Vec<&[f64]> = vs.iter().map(Vec::as_slice).collect();
    1.0 + t.abs_evaluate(&refs).unwrap_or(f64::INFINITY)
}

fn gradient_check(t: &Tensor, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst = 0.0f64;
    for _ in 0..POINTS {
        let vs: Vec<Vec<f64>> = t.dims().iter().map(|&n| uniform(rng, n)).collect();
        let scale = abs_scale(t, &vs);
        for mode in 0..t.order() {
            let refs: Vec<&[f64]> = vs.iter().map(Vec::as_slice).collect();
            let g = t.mode_gradient(&refs, mode).expect("shapes match");
            for (j, &gj) in g.iter().enumerate() {
                let mut plus = vs.clone();
                let mut minus = vs.clone();
                plus[mode][j] += FD_STEP;
                minus[mode][j] -= FD_STEP;
                let eval = |w: &Vec<Vec<f64>>| {
                    let r: Vec<&[f64]> = w.iter().map(Vec::as_slice).collect();
                    t.evaluate(&r).expect("shapes match")
                };
                let fd = (eval(&plus) - eval(&minus)) / (2.0 * FD_STEP);
                worst = worst.max((fd - gj).abs() / scale);
            }
        }
    }
    CheckResult::measured("gradient vs finite differences", worst, FD_TOLERANCE)
}

fn euler_check(t: &Tensor, rng: &mut ChaCha8Rng) -> CheckResult {
    let name = "euler identity v.grad f = k f";
    if !t.is_square() {
        return CheckResult { name: name.into(), outcome: Outcome::Skip("tensor is not square"), worst: 0.0 };
    }
    if !t.is_symmetric() {
        return CheckResult { name: name.into(), outcome: Outcome::Skip("tensor is not symmetric"), worst: 0.0 };
    }
    let n = t.dims()[0];
    let mut worst = 0.0f64;
    for _ in 0..POINTS {
        let v = uniform(rng, n);
        let scale = abs_scale(t, &vec![v.clone(); t.order()]) * t.order() as f64;
        let r = t.euler_residual(&v).expect("square tensor");
        worst = worst.max(r / scale);
    }
    CheckResult::measured(name, worst, IDENTITY_TOLERANCE)
}

/// `x_i . grad_i f(x) = f(x)` for every mode `i`.
fn contraction_check(t: &Tensor, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut worst = 0.0f64;
    for _ in 0..POINTS {
        let vs: Vec<Vec<f64>> = t.dims().iter().map(|&n| uniform(rng, n)).collect();
        let refs: Vec<&[f64]> = vs.iter().map(Vec::as_slice).collect();
        let f = t.evaluate(&refs).expect("shapes match");
        let scale = abs_scale(t, &vs);
        for (mode, v) in vs.iter().enumerate() {
            let g = t.mode_gradient(&refs, mode).expect("shapes match");
            let c: f64 = g.iter().zip(v).map(|(a, b)| a * b).sum();
            worst = worst.max((c - f).abs() / scale);
        }
    }
    CheckResult::measured("per-mode contraction identity", worst, IDENTITY_TOLERANCE)
}

fn p_norm_check(n: usize, p: f64, rng: &mut ChaCha8Rng) -> CheckResult {
    let norm = Norm::new(p).expect("valid p");
    let mut worst = 0.0f64;
    for _ in 0..POINTS {
        let x = away_from_zero(rng, n);
        let g = p_norm_gradient(&x, norm).expect("nonzero point");
        for j in 0..n {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[j] += FD_STEP;
            minus[j] -= FD_STEP;
            let fd = (p_norm(&plus, norm) - p_norm(&minus, norm)) / (2.0 * FD_STEP);
            worst = worst.max((fd - g[j]).abs() / g[j].abs().max(1e-3));
        }
    }
    CheckResult::measured(format!("p-norm gradient, p = {p}"), worst, FD_TOLERANCE)
}

pub fn run_checks(t: &Tensor, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![gradient_check(t, &mut rng), euler_check(t, &mut rng), contraction_check(t, &mut rng)];
    let n = t.dims().iter().copied().max().unwrap_or(1);
    for p in [1.5, 2.0, 3.0] {
        out.push(p_norm_check(n, p, &mut rng));
    }
    out
}
