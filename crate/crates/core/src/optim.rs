//! Deterministic small-dimension constrained minimization.
//!
//! Multi-start reflection/contraction simplex search over a box, with
//! inequality constraints handled by projection onto the box plus a penalty
//! on residual violations. Start points come from a bit-reversal
//! (radical-inverse) low-discrepancy sequence so identical configurations
//! reproduce bit-for-bit.

use crate::error::{Error, Result};

/// Search configuration.
#[derive(Debug, Clone)]
pub struct OptConfig {
    /// Number of multi-start points.
    pub starts: usize,
    /// Maximum objective evaluations per start.
    pub max_evals: usize,
    /// Simplex-diameter stopping tolerance.
    pub tol: f64,
    /// Seed mixed into the start sequence.
    pub seed: u64,
}

impl Default for OptConfig {
    fn default() -> Self {
        Self { starts: 64, max_evals: 2000, tol: 1e-10, seed: 0 }
    }
}

impl OptConfig {
    /// A cheaper profile for inner loops that are called many times.
    pub fn light(seed: u64) -> Self {
        Self { starts: 16, max_evals: 700, tol: 1e-9, seed }
    }
}

/// Outcome of a search. `argmin` always satisfies the box and every
/// inequality constraint within 1e-9 (it is the best feasible evaluated
/// point, not a raw simplex vertex).
#[derive(Debug, Clone)]
pub struct OptResult {
    pub argmin: Vec<f64>,
    pub value: f64,
    pub converged: bool,
    pub evals: usize,
}

/// Axis-aligned feasible box.
#[derive(Debug, Clone)]
pub struct BoxBounds {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Infeasible("box bounds must be non-empty and same length".into()));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if !l.is_finite() || !h.is_finite() || l > h {
                return Err(Error::Infeasible(format!("empty box interval [{l}, {h}]")));
            }
        }
        Ok(Self { lo, hi })
    }

    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn clamp(&self, x: &mut [f64]) {
        for i in 0..x.len() {
            x[i] = x[i].clamp(self.lo[i], self.hi[i]);
        }
    }
}

/// Inequality constraint `g(x) <= 0`.
pub type Constraint<'a> = &'a dyn Fn(&[f64]) -> f64;

const PENALTY_WEIGHT: f64 = 1e6;
const PENALTY_BASE: f64 = 1e9;
const FEAS_TOL: f64 = 1e-12;

fn violation(constraints: &[Constraint<'_>], x: &[f64]) -> f64 {
    constraints.iter().map(|g| g(x).max(0.0)).sum()
}

/// Radical inverse of `i` in base `base` (van der Corput).
fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let b = base as f64;
    while i > 0 {
        f /= b;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

const PRIMES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Low-discrepancy start point `k` in the box, rotated by the seed.
fn start_point(bounds: &BoxBounds, k: u64, seed: u64) -> Vec<f64> {
    let dim = bounds.dim();
    (0..dim)
        .map(|j| {
            let base = PRIMES[j % PRIMES.len()];
            let rot = (splitmix(seed ^ (j as u64).wrapping_mul(0x9e37)) >> 11) as f64
                / (1u64 << 53) as f64;
            let u = (radical_inverse(k + 1, base) + rot).fract();
            bounds.lo[j] + u * (bounds.hi[j] - bounds.lo[j])
        })
        .collect()
}

struct Tracker<'a, 'b> {
    f: &'a dyn Fn(&[f64]) -> f64,
    constraints: &'a [Constraint<'b>],
    bounds: &'a BoxBounds,
    best: Option<(f64, Vec<f64>)>,
    evals: usize,
}

impl Tracker<'_, '_> {
    /// Projects onto the box, then either evaluates the objective (feasible)
    /// or returns the penalty surface (never calling the objective, whose
    /// domain may end exactly at the constraint boundary).
    fn eval(&mut self, x: &[f64]) -> f64 {
        let mut p = x.to_vec();
        self.bounds.clamp(&mut p);
        self.evals += 1;
        let viol = violation(self.constraints, &p);
        if viol > FEAS_TOL {
            return PENALTY_BASE + PENALTY_WEIGHT * viol;
        }
        let v = (self.f)(&p);
        if v.is_finite() {
            let better = match &self.best {
                None => true,
                Some((bv, bx)) => v < *bv || (v == *bv && p.as_slice() < bx.as_slice()),
            };
            if better {
                self.best = Some((v, p));
            }
            v
        } else {
            PENALTY_BASE
        }
    }
}

/// Nelder-Mead from one start; returns whether the simplex collapsed below
/// the tolerance within the evaluation budget.
fn simplex_search(tracker: &mut Tracker<'_, '_>, x0: &[f64], cfg: &OptConfig) -> bool {
    let dim = x0.len();
    let (alpha, gamma_e, rho, sigma) = (1.0, 2.0, 0.5, 0.5);

    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(dim + 1);
    let f0 = tracker.eval(x0);
    simplex.push((f0, x0.to_vec()));
    for j in 0..dim {
        let mut xj = x0.to_vec();
        let span = tracker.bounds.hi[j] - tracker.bounds.lo[j];
        let step = if span > 0.0 { 0.08 * span } else { 0.05 };
        xj[j] = if xj[j] + step <= tracker.bounds.hi[j] { xj[j] + step } else { xj[j] - step };
        let fj = tracker.eval(&xj);
        simplex.push((fj, xj));
    }

    let budget = tracker.evals + cfg.max_evals;
    loop {
        simplex.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        let diameter = {
            let b = &simplex[0].1;
            simplex[1..]
                .iter()
                .map(|(_, v)| {
                    v.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0f64, f64::max)
                })
                .fold(0.0f64, f64::max)
        };
        if diameter < cfg.tol {
            return true;
        }
        if tracker.evals >= budget {
            return false;
        }

        let worst = simplex.len() - 1;
        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..worst].iter().map(|(_, v)| v[j]).sum::<f64>() / worst as f64)
            .collect();
        let xr: Vec<f64> = (0..dim)
            .map(|j| centroid[j] + alpha * (centroid[j] - simplex[worst].1[j]))
            .collect();
        let fr = tracker.eval(&xr);

        if fr < simplex[0].0 {
            let xe: Vec<f64> = (0..dim)
                .map(|j| centroid[j] + gamma_e * (xr[j] - centroid[j]))
                .collect();
            let fe = tracker.eval(&xe);
            simplex[worst] = if fe < fr { (fe, xe) } else { (fr, xr) };
        } else if fr < simplex[worst - 1].0 {
            simplex[worst] = (fr, xr);
        } else {
            let (fbase, xbase) = if fr < simplex[worst].0 {
                (fr, xr.clone())
            } else {
                (simplex[worst].0, simplex[worst].1.clone())
            };
            let xc: Vec<f64> =
                (0..dim).map(|j| centroid[j] + rho * (xbase[j] - centroid[j])).collect();
            let fc = tracker.eval(&xc);
            if fc < fbase {
                simplex[worst] = (fc, xc);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].1.clone();
                for item in simplex.iter_mut().skip(1) {
                    let xs: Vec<f64> = (0..dim)
                        .map(|j| best[j] + sigma * (item.1[j] - best[j]))
                        .collect();
                    let fs = tracker.eval(&xs);
                    *item = (fs, xs);
                }
            }
        }
    }
}

/// Minimizes a black-box objective over a box with inequality constraints
/// `g(x) <= 0`.
///
/// The returned point is the best feasible point evaluated anywhere in the
/// search, so it satisfies the constraints regardless of where the simplex
/// wandered. Errors if the box is empty or no feasible point was found.
pub fn minimize(
    f: &dyn Fn(&[f64]) -> f64,
    bounds: &BoxBounds,
    constraints: &[Constraint<'_>],
    cfg: &OptConfig,
) -> Result<OptResult> {
    minimize_with_seeds(f, bounds, constraints, &[], cfg)
}

/// [`minimize`] with additional caller-supplied start points, searched before
/// the low-discrepancy ones.
pub fn minimize_with_seeds(
    f: &dyn Fn(&[f64]) -> f64,
    bounds: &BoxBounds,
    constraints: &[Constraint<'_>],
    seeds: &[Vec<f64>],
    cfg: &OptConfig,
) -> Result<OptResult> {
    if cfg.starts == 0 && seeds.is_empty() {
        return Err(Error::Infeasible("starts must be >= 1".into()));
    }
    let mut tracker = Tracker { f, constraints, bounds, best: None, evals: 0 };
    let mut any_converged = false;

    for seed in seeds {
        if simplex_search(&mut tracker, seed, cfg) {
            any_converged = true;
        }
    }

    let mut launched = 0u64;
    let mut k = 0u64;
    let attempts_cap = cfg.starts as u64 * 8;
    while launched < cfg.starts as u64 && k < attempts_cap {
        let x0 = start_point(bounds, splitmix(cfg.seed).wrapping_add(k), cfg.seed);
        k += 1;
        // Prefer feasible starts; fall back to penalized ones once the
        // candidate budget is spent.
        if violation(constraints, &x0) > FEAS_TOL && k + (cfg.starts as u64 - launched) < attempts_cap
        {
            continue;
        }
        launched += 1;
        if simplex_search(&mut tracker, &x0, cfg) {
            any_converged = true;
        }
    }

    // Polish from the incumbent with a tighter tolerance.
    if let Some((_, xbest)) = tracker.best.clone() {
        let polish = OptConfig { tol: cfg.tol.min(1e-11), max_evals: cfg.max_evals, ..cfg.clone() };
        if simplex_search(&mut tracker, &xbest, &polish) {
            any_converged = true;
        }
    }

    match tracker.best {
        Some((value, argmin)) => Ok(OptResult { argmin, value, converged: any_converged, evals: tracker.evals }),
        None => Err(Error::Infeasible("no feasible point found".into())),
    }
}

/// Nested uniform grids on an interval; returns the refined minimizer.
pub fn grid_refine_1d(
    f: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    levels: usize,
    pts: usize,
) -> OptResult {
    assert!(lo.is_finite() && hi.is_finite() && hi >= lo && pts >= 2 && levels >= 1);
    let (mut a, mut b) = (lo, hi);
    let mut best_x = lo;
    let mut best_v = f64::INFINITY;
    let mut evals = 0;
    for _ in 0..levels {
        let step = (b - a) / (pts - 1) as f64;
        let mut level_best = (f64::INFINITY, a);
        for i in 0..pts {
            let x = a + step * i as f64;
            let v = f(x);
            evals += 1;
            if v < level_best.0 {
                level_best = (v, x);
            }
        }
        if level_best.0 < best_v {
            best_v = level_best.0;
            best_x = level_best.1;
        }
        a = (best_x - step).max(lo);
        b = (best_x + step).min(hi);
        if b - a <= 0.0 {
            break;
        }
    }
    OptResult { argmin: vec![best_x], value: best_v, converged: true, evals }
}

/// Nested uniform grids on a rectangle.
pub fn grid_refine_2d(
    f: &dyn Fn(f64, f64) -> f64,
    dom1: (f64, f64),
    dom2: (f64, f64),
    levels: usize,
    pts: usize,
) -> OptResult {
    assert!(pts >= 2 && levels >= 1);
    let (mut a1, mut b1) = dom1;
    let (mut a2, mut b2) = dom2;
    let mut best = (f64::INFINITY, a1, a2);
    let mut evals = 0;
    for _ in 0..levels {
        let s1 = (b1 - a1) / (pts - 1) as f64;
        let s2 = (b2 - a2) / (pts - 1) as f64;
        let mut level_best = (f64::INFINITY, a1, a2);
        for i in 0..pts {
            let x = a1 + s1 * i as f64;
            for j in 0..pts {
                let y = a2 + s2 * j as f64;
                let v = f(x, y);
                evals += 1;
                if v < level_best.0 {
                    level_best = (v, x, y);
                }
            }
        }
        if level_best.0 < best.0 {
            best = level_best;
        }
        a1 = (best.1 - s1).max(dom1.0);
        b1 = (best.1 + s1).min(dom1.1);
        a2 = (best.2 - s2).max(dom2.0);
        b2 = (best.2 + s2).min(dom2.1);
    }
    OptResult { argmin: vec![best.1, best.2], value: best.0, converged: true, evals }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_minimum() {
        let f = |x: &[f64]| (x[0] - 0.3) * (x[0] - 0.3);
        let bounds = BoxBounds::new(vec![0.0], vec![1.0]).unwrap();
        let r = minimize(&f, &bounds, &[], &OptConfig::default()).unwrap();
        assert!((r.argmin[0] - 0.3).abs() < 1e-8, "argmin {}", r.argmin[0]);
        assert!(r.value < 1e-15);
    }

    #[test]
    fn active_constraint() {
        // min x+y subject to x+y >= 1 on the unit box.
        let f = |x: &[f64]| x[0] + x[1];
        let g = |x: &[f64]| 1.0 - x[0] - x[1];
        let bounds = BoxBounds::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let r = minimize(&f, &bounds, &[&g], &OptConfig::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-7, "value {}", r.value);
        assert!(g(&r.argmin) <= 1e-9);
    }

    #[test]
    fn multistart_finds_global_basin() {
        // Two basins; the global one is narrow and off to the right.
        let f = |x: &[f64]| {
            let t = x[0];
            let left = (t - 0.2) * (t - 0.2) + 0.05;
            let right = 40.0 * (t - 0.85) * (t - 0.85);
            left.min(right)
        };
        let bounds = BoxBounds::new(vec![0.0], vec![1.0]).unwrap();
        let r = minimize(&|x: &[f64]| f(x), &bounds, &[], &OptConfig::default()).unwrap();

        // Oracle: dense grid scan.
        let mut oracle = f64::INFINITY;
        for i in 0..1_000_000u64 {
            let t = i as f64 / 999_999.0;
            oracle = oracle.min(f(&[t]));
        }
        assert!((r.value - oracle).abs() < 1e-6, "value {} oracle {}", r.value, oracle);
        assert!((r.argmin[0] - 0.85).abs() < 1e-4);
    }

    #[test]
    fn determinism_and_seed_stability() {
        let f = |x: &[f64]| (x[0] - 0.4).powi(2) + (x[1] - 0.6).powi(2) + (x[0] * x[1]).sin() * 0.1;
        let bounds = BoxBounds::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let r1 = minimize(&f, &bounds, &[], &OptConfig::default()).unwrap();
        let r2 = minimize(&f, &bounds, &[], &OptConfig::default()).unwrap();
        assert_eq!(r1.value, r2.value);
        assert_eq!(r1.argmin, r2.argmin);

        let r3 = minimize(&f, &bounds, &[], &OptConfig { seed: 1, ..OptConfig::default() }).unwrap();
        assert!((r1.value - r3.value).abs() < 1e-6);
    }

    #[test]
    fn infeasible_box_rejected() {
        assert!(BoxBounds::new(vec![1.0], vec![0.0]).is_err());
    }

    #[test]
    fn infeasible_constraints_reported() {
        let f = |_: &[f64]| 0.0;
        let g = |_: &[f64]| 1.0; // never satisfiable
        let bounds = BoxBounds::new(vec![0.0], vec![1.0]).unwrap();
        assert!(minimize(&f, &bounds, &[&g], &OptConfig::light(0)).is_err());
    }

    #[test]
    fn grid_refine_linear_hits_endpoint() {
        let r = grid_refine_1d(&|x| 2.0 * x, 0.0, 1.0, 3, 101);
        assert_eq!(r.argmin[0], 0.0);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn grid_refine_unimodal_matches_golden_section() {
        let f = |x: f64| (x - 0.31742).powi(2) + 0.1 * (3.0 * x).cos();
        let r = grid_refine_1d(&f, 0.0, 1.0, 4, 101);

        // Golden-section oracle.
        let phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (0.0f64, 1.0f64);
        while b - a > 1e-12 {
            let c = b - phi * (b - a);
            let d = a + phi * (b - a);
            if f(c) < f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let golden = f(0.5 * (a + b));
        assert!((r.value - golden).abs() < 1e-6);
    }

    #[test]
    fn grid_refine_constant() {
        let r = grid_refine_1d(&|_| 4.25, 0.0, 1.0, 3, 11);
        assert_eq!(r.value, 4.25);
    }

    #[test]
    fn grid_refine_2d_quadratic() {
        let f = |x: f64, y: f64| (x - 0.2).powi(2) + (y - 0.7).powi(2);
        let r = grid_refine_2d(&f, (0.0, 1.0), (0.0, 1.0), 4, 51);
        assert!((r.argmin[0] - 0.2).abs() < 1e-5);
        assert!((r.argmin[1] - 0.7).abs() < 1e-5);
    }
}
