//! Outer bounds on the capacity region.
//!
//! * Strong interference: the exact capacity region.
//! * Kramer: intersection of the two one-sided broadcast-style sweeps.
//! * ETW: the genie-aided half-plane list.
//! * Sato: the one-sided broadcast sweep with its closed-form support.
//! * New weak/mixed bounds: support-function programs over auxiliary
//!   two-antenna receiver channels whose outputs degrade to the original
//!   ones; each evaluation is a small deterministic minimization.

use crate::channel::{gam, ChannelParams};
use crate::error::{Error, Result};
use crate::extremal::{half_log2_2pie, max_entropy_difference};
use crate::geometry::{
    direction_grid, BoundCurve, CurveFamily, Direction, HalfPlane, PolyRegion,
};
use crate::optim::{self, BoxBounds, OptConfig};

/// Capacity region of the strong channel (`a >= 1`, `b >= 1`).
pub fn strong_region(params: &ChannelParams) -> Result<PolyRegion> {
    if !params.is_strong() {
        return Err(Error::Dispatch(format!(
            "strong region requires a >= 1 and b >= 1, got a={}, b={}",
            params.a(),
            params.b()
        )));
    }
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let sum = gam(p1 + a * p2).min(gam(b * p1 + p2));
    PolyRegion::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, gam(p1)),
        HalfPlane::new(0.0, 1.0, gam(p2)),
        HalfPlane::new(1.0, 1.0, sum),
    ])
}

/// Maximum of `dir . corner(t)` over `t in [lo, hi]`.
fn sweep_support(corner: impl Fn(f64) -> (f64, f64), lo: f64, hi: f64, dir: Direction) -> f64 {
    if hi <= lo {
        let (x, y) = corner(lo);
        return dir.c1() * x + dir.c2() * y;
    }
    let f = |t: f64| {
        let (x, y) = corner(t);
        -(dir.c1() * x + dir.c2() * y)
    };
    -optim::grid_refine_1d(&f, lo, hi, 4, 129).value
}

/// Boundary corner of the broadcast-style sweep obtained by pooling the
/// powers of the one-sided channel that remains when the link into
/// receiver 2 is removed: `P_eff = P1/gain + P2`.
///
/// Across `beta in [0, 1]` the corner runs from `(gamma(P1 + gain*P2), 0)`
/// to `(0, gamma(P_eff))`; it crosses `R1 = gamma(P1)` exactly at
/// `beta_max = P2 / (P_eff (1 + P1))`, which is also returned.
fn bc_sweep_corner(p1: f64, p2: f64, gain: f64) -> (impl Fn(f64) -> (f64, f64), f64) {
    let p_eff = p1 / gain + p2;
    let beta_max = p2 / (p_eff * (1.0 + p1));
    (
        move |beta: f64| {
            (gam((1.0 - beta) * p_eff / (beta * p_eff + 1.0 / gain)), gam(beta * p_eff))
        },
        beta_max,
    )
}

fn require_weak(params: &ChannelParams, what: &str) -> Result<()> {
    if !params.is_weak() {
        return Err(Error::Dispatch(format!(
            "{what} requires a weak channel (0 < a < 1, 0 < b < 1), got a={}, b={}; \
             one-sided channels use the dedicated sweep bound",
            params.a(),
            params.b()
        )));
    }
    Ok(())
}

/// Outer polygon of one full broadcast sweep (the region under the corner
/// arc), reconstructed from sweep supports on a direction grid.
fn bc_sweep_region(p1: f64, p2: f64, gain: f64, n_dirs: usize) -> Result<PolyRegion> {
    let (corner, _) = bc_sweep_corner(p1, p2, gain);
    let samples: Vec<(Direction, f64)> = direction_grid(n_dirs, 1e3)
        .into_iter()
        .map(|d| (d, sweep_support(&corner, 0.0, 1.0, d)))
        .collect();
    PolyRegion::from_supports(&samples)
}

fn rate_rectangle(params: &ChannelParams) -> Result<PolyRegion> {
    PolyRegion::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, gam(params.p1())),
        HalfPlane::new(0.0, 1.0, gam(params.p2())),
    ])
}

/// Kramer outer region: both one-sided broadcast sweeps intersected with the
/// single-user rectangle, on a direction grid of `n` values per family.
pub fn kramer_region(params: &ChannelParams, n_dirs: usize) -> Result<PolyRegion> {
    require_weak(params, "the two-sided sweep bound")?;
    let e1 = bc_sweep_region(params.p1(), params.p2(), params.a(), n_dirs)?;
    // Mirror roles for the sweep that removes the other link.
    let e2_m = bc_sweep_region(params.p2(), params.p1(), params.b(), n_dirs)?;
    let e2_hps: Vec<HalfPlane> = e2_m
        .halfplanes()
        .iter()
        .map(|hp| HalfPlane::new(hp.c2, hp.c1, hp.d))
        .collect();
    let e2 = PolyRegion::from_halfplanes(&e2_hps)?;
    PolyRegion::intersect(&[e1, e2, rate_rectangle(params)?])
}

/// The genie-aided half-plane list for the weak channel.
pub fn etw_halfplanes(params: &ChannelParams) -> Result<Vec<HalfPlane>> {
    require_weak(params, "the genie-aided bound")?;
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    Ok(vec![
        HalfPlane::new(1.0, 0.0, gam(p1)),
        HalfPlane::new(0.0, 1.0, gam(p2)),
        HalfPlane::new(1.0, 1.0, gam(p1) + gam(p2 / (1.0 + b * p1))),
        HalfPlane::new(1.0, 1.0, gam(p2) + gam(p1 / (1.0 + a * p2))),
        HalfPlane::new(
            1.0,
            1.0,
            gam(a * p2 + p1 / (1.0 + b * p1)) + gam(b * p1 + p2 / (1.0 + a * p2)),
        ),
        HalfPlane::new(
            2.0,
            1.0,
            gam(p1 + a * p2)
                + gam(b * p1 + p2 / (1.0 + a * p2))
                + 0.5 * ((1.0 + p1) / (1.0 + b * p1)).log2(),
        ),
        HalfPlane::new(
            1.0,
            2.0,
            gam(b * p1 + p2)
                + gam(a * p2 + p1 / (1.0 + b * p1))
                + 0.5 * ((1.0 + p2) / (1.0 + a * p2)).log2(),
        ),
    ])
}

pub fn etw_region(params: &ChannelParams) -> Result<PolyRegion> {
    PolyRegion::from_halfplanes(&etw_halfplanes(params)?)
}

/// Noise layout of the auxiliary receiver in the `(mu, 1)` program, derived
/// from the free variables `(s, g2)`.
fn split_receiver(s: f64, g2: f64, gain: f64) -> (f64, f64, f64) {
    let n_far = (1.0 - s) / g2;
    let n_near = s / (1.0 - g2.sqrt()).powi(2);
    (n_far, n_near, gain / g2)
}

/// Objective of the first weighted-rate program: variables
/// `x = [mu1, s, g2]` with `mu2 = mu - mu1` eliminated.
fn w1_objective(params: &ChannelParams, mu: f64, x: &[f64]) -> f64 {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let (mu1, s, g2) = (x[0], x[1], x[2]);
    let mu2 = (mu - mu1).max(0.0);
    let (n21, n22, b_eff) = split_receiver(s, g2, b);

    let lead = mu1 * half_log2_2pie(p1 + a * p2 + 1.0);
    let bracket = 0.5 * (n21 / n22 + b_eff * p1 / n22 + p2 / (p2 + n22)).log2();
    // mu2 * f(P1, 1, N21, b', 1/mu2) - (mu2/2) log2(2pie): for small mu2 the
    // inner maximization is in its zero-variance piece and the pair
    // collapses to -0.5*log2(2pie*N21) exactly.
    let tail = if mu2 <= 1e-11 {
        -half_log2_2pie(n21)
    } else {
        match max_entropy_difference(p1, 1.0, n21, b_eff, 1.0 / mu2) {
            Ok(v) => mu2 * v - mu2 * half_log2_2pie(1.0),
            Err(_) => return f64::INFINITY,
        }
    };
    let last = match max_entropy_difference(p2, n22, 1.0, a, mu1) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    lead + bracket + tail + last
}

/// First weighted-rate bound `W1(mu)` on `max mu*R1 + R2` for the weak
/// channel. Requires `b < 1`: the constraint `s <= 1 - b` has no interior
/// otherwise.
pub fn weak_w1(params: &ChannelParams, mu: f64, cfg: &OptConfig) -> Result<f64> {
    require_weak(params, "the split-receiver bound")?;
    if mu < 1.0 {
        return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
    }
    let a = params.a();
    let b = params.b();
    if b >= 1.0 - 1e-9 {
        return Err(Error::Infeasible("b too close to 1: s <= 1-b leaves no room".into()));
    }
    let bounds = BoxBounds::new(vec![0.0, 1e-9, 1e-9], vec![mu, 1.0 - b, 1.0 - 1e-9])?;
    let con = |x: &[f64]| a * x[1] - (1.0 - x[2].sqrt()).powi(2);
    let f = |x: &[f64]| w1_objective(params, mu, x);
    let seeds = vec![
        vec![mu, (0.5 * (1.0 - b)).min(0.25 / a), b.clamp(1e-6, 1.0 - 1e-6)],
        vec![0.5 * mu, (0.25 * (1.0 - b)).min(0.1 / a), (0.5 * b).clamp(1e-6, 1.0 - 1e-6)],
    ];
    Ok(optim::minimize_with_seeds(&f, &bounds, &[&con], &seeds, cfg)?.value)
}

/// Objective of the second weighted-rate program: variables
/// `x = [g1, g2, s1, s2]`.
fn w2_objective(params: &ChannelParams, mu: f64, x: &[f64]) -> f64 {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let (g1, g2, s1, s2) = (x[0], x[1], x[2], x[3]);
    let n12 = s1 / g1;
    let n11 = (1.0 - s1) / (1.0 - g1.sqrt()).powi(2);
    let n21 = s2 / g2;
    let n22 = (1.0 - s2) / (1.0 - g2.sqrt()).powi(2);
    let a_eff = a / g1;
    let b_eff = b / g2;

    let fh = match max_entropy_difference(p2, n22, n12, a_eff, mu) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    mu * gam(p1 / n11 + p1 / (a_eff * p2 + n12))
        + gam(p2 / n22 + p2 / (b_eff * p1 + n21))
        + fh
        + mu * half_log2_2pie(a_eff * p2 + n12)
        - half_log2_2pie(p2 + n22)
}

/// Second weighted-rate bound `W2(mu)` on `max mu*R1 + R2` for the weak
/// channel (two split receivers).
pub fn weak_w2(params: &ChannelParams, mu: f64, cfg: &OptConfig) -> Result<f64> {
    require_weak(params, "the double-split-receiver bound")?;
    if mu < 1.0 {
        return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
    }
    let (a, b) = (params.a(), params.b());
    let eps = 1e-9;
    let bounds =
        BoxBounds::new(vec![eps, eps, eps, eps], vec![1.0 - eps, 1.0 - eps, 1.0 - eps, 1.0 - eps])?;
    let c1 = move |x: &[f64]| b * (1.0 - x[2]) / (1.0 - x[0].sqrt()).powi(2) - x[3];
    let c2 = move |x: &[f64]| a * (1.0 - x[3]) / (1.0 - x[1].sqrt()).powi(2) - x[2];
    let f = |x: &[f64]| w2_objective(params, mu, x);
    let seeds = vec![
        vec![0.25, 0.25, 0.9, 0.9],
        vec![0.05, 0.05, 0.7, 0.7],
        vec![0.5, 0.5, 0.95, 0.95],
    ];
    Ok(optim::minimize_with_seeds(&f, &bounds, &[&c1, &c2], &seeds, cfg)?.value)
}

/// `min(W1, W2)` along `(mu, 1)`; the `(1, mu)` family is the same pair of
/// programs on the role-swapped channel.
pub fn weak_outer_support(params: &ChannelParams, dir: Direction, cfg: &OptConfig) -> Result<f64> {
    require_weak(params, "the weighted-rate bound")?;
    let (c1, c2) = (dir.c1(), dir.c2());
    if c1 <= 0.0 || c2 <= 0.0 {
        return Err(Error::Domain("bound is defined on the (mu,1)/(1,mu) families".into()));
    }
    if c1 >= c2 {
        let mu = c1 / c2;
        let w1 = weak_w1(params, mu, cfg)?;
        let w2 = weak_w2(params, mu, cfg)?;
        Ok(c2 * w1.min(w2))
    } else {
        let swapped = params.swapped();
        let mu = c2 / c1;
        let w1 = weak_w1(&swapped, mu, cfg)?;
        let w2 = weak_w2(&swapped, mu, cfg)?;
        Ok(c1 * w1.min(w2))
    }
}

/// Sampled bound curves for both direction families.
pub fn weak_outer_curves(
    params: &ChannelParams,
    mus: &[f64],
    cfg: &OptConfig,
) -> Result<(BoundCurve, BoundCurve)> {
    let mut fwd = Vec::with_capacity(mus.len());
    let mut bwd = Vec::with_capacity(mus.len());
    for &mu in mus {
        fwd.push((mu, weak_outer_support(params, Direction::mu_one(mu)?, cfg)?));
        bwd.push((mu, weak_outer_support(params, Direction::one_mu(mu)?, cfg)?));
    }
    Ok((BoundCurve::new(CurveFamily::MuOne, fwd)?, BoundCurve::new(CurveFamily::OneMu, bwd)?))
}

/// Sum-rate bound assembled from the two weighted-rate families:
/// `min over (mu1, mu2) of [(mu2-1) W(mu1) + (mu1-1) W~(mu2)] / (mu1 mu2 - 1)`
/// over the grid `mus x mus`, skipping pairs with `mu1 * mu2 <= 1`.
pub fn weak_sum_upper(params: &ChannelParams, mus: &[f64], cfg: &OptConfig) -> Result<f64> {
    require_weak(params, "the combined sum-rate bound")?;
    if mus.is_empty() {
        return Err(Error::Domain("empty mu grid".into()));
    }
    let mut w = Vec::with_capacity(mus.len());
    let mut w_tilde = Vec::with_capacity(mus.len());
    let swapped = params.swapped();
    for &mu in mus {
        if mu < 1.0 {
            return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
        }
        w.push(weak_w1(params, mu, cfg)?.min(weak_w2(params, mu, cfg)?));
        w_tilde.push(weak_w1(&swapped, mu, cfg)?.min(weak_w2(&swapped, mu, cfg)?));
    }
    let mut best = f64::INFINITY;
    for (i, &mu1) in mus.iter().enumerate() {
        for (j, &mu2) in mus.iter().enumerate() {
            if mu1 * mu2 <= 1.0 {
                continue;
            }
            let v = ((mu2 - 1.0) * w[i] + (mu1 - 1.0) * w_tilde[j]) / (mu1 * mu2 - 1.0);
            best = best.min(v);
        }
    }
    if !best.is_finite() {
        return Err(Error::Domain("mu grid contains no pair with mu1*mu2 > 1".into()));
    }
    Ok(best)
}

/// Inner minimization over the combining weight of the one-receiver sum-rate
/// term: treat-as-noise when the slack allows, otherwise the boundary point.
fn sum_part(p_own: f64, p_other: f64, g_own: f64, g_other: f64, s_own: f64, s_other: f64) -> f64 {
    // Unconstrained optimum is treating interference as noise.
    if g_own.sqrt() * (1.0 + g_other * p_other) <= (s_other * (1.0 - s_own)).sqrt() {
        return gam(p_own / (1.0 + g_other * p_other));
    }
    let r = g_own * (1.0 - s_own) / s_other;
    let t = if r <= 1.0 { 1.0 - r.sqrt() } else { 1.0 + r.sqrt() };
    gam(g_own * p_own / s_other + t * t * p_own / (g_other * p_other + s_own))
}

/// Sum-rate upper bound from the pair of split receivers, minimized in
/// closed form over the combining weights and numerically over the noise
/// splits. Tight (equal to treating interference as noise) exactly in the
/// noisy-interference regime.
pub fn weak_noisy_sum_upper(params: &ChannelParams) -> Result<f64> {
    require_weak(params, "the split-receiver sum bound")?;
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let f = |s1: f64, s2: f64| {
        sum_part(p1, p2, b, a, s1, s2) + sum_part(p2, p1, a, b, s2, s1)
    };
    let eps = 1e-7;
    let coarse = optim::grid_refine_2d(&f, (eps, 1.0 - eps), (eps, 1.0 - eps), 4, 101);
    // One simplex polish from the refined grid point.
    let bounds = BoxBounds::new(vec![eps, eps], vec![1.0 - eps, 1.0 - eps])?;
    let obj = |x: &[f64]| f(x[0], x[1]);
    let polished = optim::minimize_with_seeds(
        &obj,
        &bounds,
        &[],
        &[coarse.argmin.clone()],
        &OptConfig { starts: 8, ..OptConfig::light(0) },
    )?;
    Ok(coarse.value.min(polished.value))
}

fn require_one_sided_weak(params: &ChannelParams) -> Result<f64> {
    if params.b() != 0.0 {
        return Err(Error::Dispatch(format!(
            "one-sided sweep bound requires b = 0, got b = {}",
            params.b()
        )));
    }
    let a = params.a();
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::Dispatch(format!(
            "one-sided sweep bound requires 0 < a < 1, got a = {a}"
        )));
    }
    Ok(a)
}

fn sato_corner(params: &ChannelParams) -> impl Fn(f64) -> (f64, f64) + '_ {
    let a = params.a();
    let p_eff = params.p1() / a + params.p2();
    move |beta: f64| {
        (gam((1.0 - beta) * p_eff / (1.0 / a + beta * p_eff)), gam(beta * p_eff))
    }
}

/// Support of the one-sided broadcast-style sweep bound (`b = 0`,
/// `0 < a < 1`), maximized numerically over the split.
pub fn sato_support(params: &ChannelParams, dir: Direction) -> Result<f64> {
    require_one_sided_weak(params)?;
    Ok(sweep_support(sato_corner(params), 0.0, 1.0, dir))
}

/// Closed-form support along `(mu, 1)` on the interval
/// `(P2 + 1/a)/(P2 + 1) < mu <= 1/a`, where the maximizing split is
/// interior: `beta* = (1/a - mu) / (P (mu - 1))`.
pub fn sato_support_closed_form(params: &ChannelParams, mu: f64) -> Result<f64> {
    let a = require_one_sided_weak(params)?;
    let p_eff = params.p1() / a + params.p2();
    let lo = (params.p2() + 1.0 / a) / (params.p2() + 1.0);
    if !(mu > lo && mu <= 1.0 / a) {
        return Err(Error::Domain(format!(
            "closed form holds on ({lo}, {}] only, got mu = {mu}",
            1.0 / a
        )));
    }
    Ok(0.5 * mu * ((a * p_eff + 1.0) * (mu - 1.0) / (mu * (1.0 - a))).log2()
        + 0.5 * ((1.0 / a - 1.0) / (mu - 1.0)).log2())
}

/// The maximizing split of the sweep on the closed-form interval.
pub fn sato_optimal_split(params: &ChannelParams, mu: f64) -> Result<f64> {
    let a = require_one_sided_weak(params)?;
    let p_eff = params.p1() / a + params.p2();
    Ok((1.0 / a - mu) / (p_eff * (mu - 1.0)))
}

/// One-sided sweep outer region on a direction grid.
pub fn sato_region(params: &ChannelParams, n_dirs: usize) -> Result<PolyRegion> {
    require_one_sided_weak(params)?;
    let samples: Vec<(Direction, f64)> = direction_grid(n_dirs, 1e3)
        .into_iter()
        .map(|d| Ok((d, sato_support(params, d)?)))
        .collect::<Result<_>>()?;
    PolyRegion::from_supports(&samples)
}

fn require_mixed(params: &ChannelParams) -> Result<()> {
    if !params.is_mixed_standard() {
        return Err(Error::Dispatch(format!(
            "mixed bound requires 0 < a < 1 <= b, got a={}, b={}; swap the users first",
            params.a(),
            params.b()
        )));
    }
    Ok(())
}

/// Region part of the mixed outer bound: the weak-side sweep intersected
/// with the strong one-sided capacity region.
pub fn mixed_outer_region(params: &ChannelParams, n_dirs: usize) -> Result<PolyRegion> {
    require_mixed(params)?;
    let (p1, p2, b) = (params.p1(), params.p2(), params.b());
    let (corner, beta_max) = kramer_e1_corner(params);
    let e1_samples: Vec<(Direction, f64)> = direction_grid(n_dirs, 1e3)
        .into_iter()
        .map(|d| (d, sweep_support(&corner, 0.0, beta_max, d)))
        .collect();
    let e1 = PolyRegion::from_supports(&e1_samples)?;
    let e2 = PolyRegion::from_halfplanes(&[
        HalfPlane::new(1.0, 0.0, gam(b * p1)),
        HalfPlane::new(0.0, 1.0, gam(p2)),
        HalfPlane::new(1.0, 1.0, gam(b * p1 + p2)),
    ])?;
    PolyRegion::intersect(&[e1, e2])
}

/// Objective of the mixed weighted-rate program: variables `x = [s, g2]`.
fn mixed_w_objective(params: &ChannelParams, mu: f64, x: &[f64]) -> f64 {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let (s, g2) = (x[0], x[1]);
    let (n21, n22, b_eff) = split_receiver(s, g2, b);
    let fh = match max_entropy_difference(p2, n22, 1.0, a, mu - 1.0) {
        Ok(v) => v,
        Err(_) => return f64::INFINITY,
    };
    (mu - 1.0) * half_log2_2pie(p1 + a * p2 + 1.0)
        + half_log2_2pie(p2 * n22 / (p2 + n22) + b_eff * p1 + n21)
        - half_log2_2pie(n21)
        - half_log2_2pie(n22)
        + fh
}

/// Weighted-rate bound `W(mu)` on `max mu*R1 + R2` for the mixed channel,
/// `mu >= 1`.
pub fn mixed_w(params: &ChannelParams, mu: f64, cfg: &OptConfig) -> Result<f64> {
    require_mixed(params)?;
    if mu < 1.0 {
        return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
    }
    let a = params.a();
    let eps = 1e-9;
    let bounds = BoxBounds::new(vec![eps, eps], vec![1.0 - eps, 1.0 - eps])?;
    let con = move |x: &[f64]| a * (1.0 - x[0]) - (1.0 - x[1].sqrt()).powi(2);
    let f = |x: &[f64]| mixed_w_objective(params, mu, x);
    let seeds = vec![vec![0.9, 0.05], vec![0.99, 0.3], vec![0.5, 0.01]];
    Ok(optim::minimize_with_seeds(&f, &bounds, &[&con], &seeds, cfg)?.value)
}

/// Region and weighted-rate parts of the mixed outer bound together.
pub fn mixed_outer(
    params: &ChannelParams,
    mu: f64,
    n_dirs: usize,
    cfg: &OptConfig,
) -> Result<(PolyRegion, f64)> {
    Ok((mixed_outer_region(params, n_dirs)?, mixed_w(params, mu, cfg)?))
}

/// The outer bounds applicable to one channel.
#[derive(Debug, Clone, Default)]
pub struct OuterBoundSet {
    pub kramer: Option<PolyRegion>,
    pub etw: Option<PolyRegion>,
    pub new_weak: Option<(BoundCurve, BoundCurve)>,
    pub sato: Option<PolyRegion>,
    pub mixed: Option<(PolyRegion, BoundCurve)>,
}

/// Assembles every outer bound defined for the channel's class. `mus` drives
/// the sampled curves; `n_dirs` the region reconstructions.
pub fn outer_bounds_for(
    params: &ChannelParams,
    mus: &[f64],
    n_dirs: usize,
    cfg: &OptConfig,
) -> Result<OuterBoundSet> {
    let mut set = OuterBoundSet::default();
    if params.is_weak() {
        set.kramer = Some(kramer_region(params, n_dirs)?);
        set.etw = Some(etw_region(params)?);
        set.new_weak = Some(weak_outer_curves(params, mus, cfg)?);
    } else if params.b() == 0.0 && params.a() > 0.0 && params.a() < 1.0 {
        set.sato = Some(sato_region(params, n_dirs)?);
    } else if params.is_mixed_standard() {
        let region = mixed_outer_region(params, n_dirs)?;
        let samples: Vec<(f64, f64)> =
            mus.iter().map(|&mu| Ok((mu, mixed_w(params, mu, cfg)?))).collect::<Result<_>>()?;
        set.mixed = Some((region, BoundCurve::new(CurveFamily::MuOne, samples)?));
    }
    Ok(set)
}
