//! Gaussian Han-Kobayashi inner bounds.
//!
//! For a fixed private-power split `(alpha, beta)` the single-letter region
//! is the pentagon `A R <= Psi` with constraint rows
//! `(1,0), (0,1), (1,1), (2,1), (1,2)` and offsets `psi1..psi5`. Enlarging it
//! by sweeping the split gives the union region; enlarging by
//! time/frequency-division over at most three bands under an average power
//! budget gives the full Gaussian HK region.

use crate::channel::{gam, ChannelParams};
use crate::error::{Error, Result};
use crate::geometry::{Direction, HalfPlane, PolyRegion, RatePair};
use crate::optim::{self, BoxBounds, OptConfig};

/// Private-power fractions of the two users, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    alpha: f64,
    beta: f64,
}

impl PowerSplit {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParam {
                    name: if name == "alpha" { "alpha" } else { "beta" },
                    reason: format!("must lie in [0, 1], got {v}"),
                });
            }
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// The seven single-letter bound values for one power split, bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiVector {
    pub psi1: f64,
    pub psi2: f64,
    pub psi31: f64,
    pub psi32: f64,
    pub psi33: f64,
    pub psi4: f64,
    pub psi5: f64,
}

impl PsiVector {
    pub fn psi3(&self) -> f64 {
        self.psi31.min(self.psi32).min(self.psi33)
    }

    /// Offsets in constraint-row order `(1,0),(0,1),(1,1),(2,1),(1,2)`.
    pub fn offsets(&self) -> [f64; 5] {
        [self.psi1, self.psi2, self.psi3(), self.psi4, self.psi5]
    }
}

/// Constraint rows of the single-split pentagon.
pub fn g0_constraint_rows() -> [(f64, f64); 5] {
    [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (1.0, 2.0)]
}

/// Evaluates the seven bound values for a split. Private powers
/// `alpha*P1, beta*P2` are treated as noise at the other receiver; common
/// powers are decodable at both.
pub fn psi_vector(params: &ChannelParams, split: &PowerSplit) -> PsiVector {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let (alpha, beta) = (split.alpha, split.beta);
    let n1 = 1.0 + a * beta * p2; // noise floor at receiver 1
    let n2 = 1.0 + b * alpha * p1; // noise floor at receiver 2

    let t_a = gam((p1 + a * (1.0 - beta) * p2) / n1);
    let t_b = gam(alpha * p1 / n1);
    let t_c = gam((beta * p2 + b * (1.0 - alpha) * p1) / n2);
    let t_d = gam(beta * p2 / n2);
    let t_e = gam((p2 + b * (1.0 - alpha) * p1) / n2);
    let t_f = gam((alpha * p1 + a * (1.0 - beta) * p2) / n1);

    PsiVector {
        psi1: gam(p1 / n1),
        psi2: gam(p2 / n2),
        psi31: t_a + t_d,
        psi32: t_b + t_e,
        psi33: t_f + t_c,
        psi4: t_a + t_b + t_c,
        psi5: t_d + t_e + t_f,
    }
}

/// The single-split pentagon `A R <= Psi` as a region.
pub fn g0_region(params: &ChannelParams, split: &PowerSplit) -> Result<PolyRegion> {
    let psis = psi_vector(params, split);
    let offs = psis.offsets();
    let hps: Vec<HalfPlane> = g0_constraint_rows()
        .iter()
        .zip(offs.iter())
        .map(|(&(c1, c2), &d)| HalfPlane::new(c1, c2, d))
        .collect();
    PolyRegion::from_halfplanes(&hps)
}

/// Exact support of the pentagon (first quadrant included) in any
/// nonnegative direction, with the attaining vertex.
///
/// This scans the feasible pairwise line intersections plus the axis
/// intercepts; it agrees with the two-piece closed form whenever all four
/// interior extreme points exist, and stays valid (achievable) when the
/// pentagon degenerates.
pub(crate) fn pentagon_support(psis: &PsiVector, dir: Direction) -> (f64, RatePair) {
    let offs = psis.offsets();
    let rows = g0_constraint_rows();
    let x_max = offs[0].min(offs[2]).min(offs[3] / 2.0).min(offs[4]);
    let y_max = offs[1].min(offs[2]).min(offs[3]).min(offs[4] / 2.0);

    let mut best = (0.0f64, RatePair::new(0.0, 0.0));
    let mut consider = |x: f64, y: f64| {
        if x < -1e-12 || y < -1e-12 {
            return;
        }
        for k in 0..5 {
            let (c1, c2) = rows[k];
            if c1 * x + c2 * y > offs[k] + 1e-9 {
                return;
            }
        }
        let v = dir.c1() * x + dir.c2() * y;
        if v > best.0 {
            best = (v, RatePair::new(x.max(0.0), y.max(0.0)));
        }
    };

    consider(x_max, 0.0);
    consider(0.0, y_max);
    for i in 0..5 {
        for j in (i + 1)..5 {
            let (a1, a2) = rows[i];
            let (b1, b2) = rows[j];
            let det = a1 * b2 - a2 * b1;
            if det.abs() < 1e-12 {
                continue;
            }
            let x = (offs[i] * b2 - offs[j] * a2) / det;
            let y = (a1 * offs[j] - b1 * offs[i]) / det;
            consider(x, y);
        }
    }
    best
}

/// Closed-form support of a non-degenerate weak-IC pentagon along the two
/// canonical direction families.
///
/// For `(mu, 1)`: `(mu-2)*psi1 + psi4` when `mu > 2`, else
/// `(2-mu)*psi3 + (mu-1)*psi4`. For `(1, mu)` the mirror with `psi2, psi5`.
/// The direction must lie in one of the families with `mu >= 1`.
pub fn g0_support_closed_form(psis: &PsiVector, dir: Direction) -> Result<f64> {
    let (c1, c2) = (dir.c1(), dir.c2());
    if c1 <= 0.0 || c2 <= 0.0 {
        return Err(Error::Domain(
            "closed-form support is defined on the (mu,1)/(1,mu) families only".into(),
        ));
    }
    let psi3 = psis.psi3();
    if c1 >= c2 {
        let mu = c1 / c2;
        let v = if mu > 2.0 {
            (mu - 2.0) * psis.psi1 + psis.psi4
        } else {
            (2.0 - mu) * psi3 + (mu - 1.0) * psis.psi4
        };
        Ok(c2 * v)
    } else {
        let mu = c2 / c1;
        let v = if mu > 2.0 {
            (mu - 2.0) * psis.psi2 + psis.psi5
        } else {
            (2.0 - mu) * psi3 + (mu - 1.0) * psis.psi5
        };
        Ok(c1 * v)
    }
}

/// Corner of the split-union region of a one-sided channel (`b = 0`, all of
/// user 1's power private) at private fraction `beta` for user 2.
pub(crate) fn private_sweep_corner(p1: f64, p2: f64, a: f64, beta: f64) -> RatePair {
    let x = gam(p1 / (1.0 + a * beta * p2));
    let y = gam(beta * p2) + gam(a * (1.0 - beta) * p2 / (1.0 + p1 + a * beta * p2));
    RatePair::new(x, y)
}

fn private_sweep_points(p1: f64, p2: f64, a: f64, lo: f64, hi: f64, samples: usize) -> Vec<RatePair> {
    let n = samples.max(2);
    (0..n)
        .map(|i| {
            let beta = lo + (hi - lo) * i as f64 / (n - 1) as f64;
            private_sweep_corner(p1, p2, a, beta)
        })
        .collect()
}

/// Split-union region of the weak one-sided channel (`b = 0`, `0 < a < 1`):
/// the envelope of the boxes
/// `R1 <= gamma(P1/(1+a*beta*P2))`,
/// `R2 <= gamma(beta*P2) + gamma(a*(1-beta)*P2/(1+P1+a*beta*P2))`
/// over `beta in [0, 1]`, returned as the corner polyline converted to
/// half-planes. The region is convex, so the polyline is an inner hull.
pub fn g1_one_sided_region(params: &ChannelParams, beta_samples: usize) -> Result<PolyRegion> {
    if params.b() != 0.0 {
        return Err(Error::Dispatch(format!(
            "split-union one-sided region requires b = 0, got b = {}",
            params.b()
        )));
    }
    if params.a() >= 1.0 {
        return Err(Error::Dispatch(
            "a >= 1: the one-sided channel is strong; use the strong-interference capacity region"
                .into(),
        ));
    }
    if params.a() == 0.0 {
        return Err(Error::Dispatch(
            "a = 0: interference-free channel; the region is the power rectangle".into(),
        ));
    }
    let pts = private_sweep_points(params.p1(), params.p2(), params.a(), 0.0, 1.0, beta_samples);
    PolyRegion::from_achievable_points(&pts)
}

/// One time/frequency band of an allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lambda: f64,
    pub p1: f64,
    pub p2: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// A TD/FD allocation over at most a few bands; fractions sum to one and the
/// averaged powers respect the budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct BandAllocation {
    pub bands: Vec<Band>,
}

impl BandAllocation {
    pub fn validate(&self, params: &ChannelParams) -> Result<()> {
        let lam_sum: f64 = self.bands.iter().map(|b| b.lambda).sum();
        if (lam_sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParam {
                name: "lambda",
                reason: format!("band fractions sum to {lam_sum}, expected 1"),
            });
        }
        let p1_avg: f64 = self.bands.iter().map(|b| b.lambda * b.p1).sum();
        let p2_avg: f64 = self.bands.iter().map(|b| b.lambda * b.p2).sum();
        if p1_avg > params.p1() * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::InvalidParam {
                name: "p1",
                reason: format!("average band power {p1_avg} exceeds budget {}", params.p1()),
            });
        }
        if p2_avg > params.p2() * (1.0 + 1e-9) + 1e-12 {
            return Err(Error::InvalidParam {
                name: "p2",
                reason: format!("average band power {p2_avg} exceeds budget {}", params.p2()),
            });
        }
        for b in &self.bands {
            if b.lambda < -1e-12 || b.p1 < -1e-12 || b.p2 < -1e-12 {
                return Err(Error::InvalidParam {
                    name: "bands",
                    reason: "negative band entry".into(),
                });
            }
            if !(0.0..=1.0).contains(&b.alpha) || !(0.0..=1.0).contains(&b.beta) {
                return Err(Error::InvalidParam {
                    name: "bands",
                    reason: "split outside [0, 1]".into(),
                });
            }
        }
        Ok(())
    }
}

/// Result of the banded support maximization.
#[derive(Debug, Clone)]
pub struct G2Support {
    /// Maximized weighted rate, bits. When `converged` is false this is still
    /// a valid achievable value, just possibly not the maximum.
    pub value: f64,
    /// The rate pair attaining `value`.
    pub rate_point: RatePair,
    pub allocation: BandAllocation,
    pub converged: bool,
}

struct BandProblem<'p> {
    params: &'p ChannelParams,
    dir: Direction,
    bands: usize,
}

impl BandProblem<'_> {
    fn dim(&self) -> usize {
        5 * self.bands - 3
    }

    fn decode(&self, x: &[f64]) -> BandAllocation {
        let q = self.bands;
        let mut lam = Vec::with_capacity(q);
        let mut rem = 1.0f64;
        for i in 0..q - 1 {
            let l = x[i].clamp(0.0, 1.0) * rem;
            lam.push(l);
            rem -= l;
        }
        lam.push(rem.max(0.0));

        let share = |off: usize, budget: f64| -> Vec<f64> {
            let mut out = Vec::with_capacity(q);
            let mut rem = budget;
            for i in 0..q - 1 {
                let u = x[off + i].clamp(0.0, 1.0) * rem;
                out.push(u);
                rem -= u;
            }
            out.push(rem.max(0.0));
            out
        };
        let u1 = share(q - 1, self.params.p1());
        let u2 = share(2 * (q - 1), self.params.p2());

        let bands = (0..q)
            .map(|i| {
                let l = lam[i];
                let (p1, p2) = if l > 1e-12 { (u1[i] / l, u2[i] / l) } else { (0.0, 0.0) };
                Band {
                    lambda: l,
                    p1,
                    p2,
                    alpha: x[3 * (q - 1) + i].clamp(0.0, 1.0),
                    beta: x[3 * (q - 1) + q + i].clamp(0.0, 1.0),
                }
            })
            .collect();
        BandAllocation { bands }
    }

    fn encode(&self, alloc: &BandAllocation) -> Vec<f64> {
        let q = self.bands;
        let mut x = vec![0.0; self.dim()];
        let mut rem = 1.0f64;
        for i in 0..q - 1 {
            let l = alloc.bands.get(i).map_or(0.0, |b| b.lambda);
            x[i] = if rem > 1e-15 { (l / rem).clamp(0.0, 1.0) } else { 0.0 };
            rem -= l;
        }
        for (off, pick) in [(q - 1, 0usize), (2 * (q - 1), 1usize)] {
            let budget = if pick == 0 { self.params.p1() } else { self.params.p2() };
            let mut rem = budget;
            for i in 0..q - 1 {
                let u = alloc
                    .bands
                    .get(i)
                    .map_or(0.0, |b| b.lambda * if pick == 0 { b.p1 } else { b.p2 });
                x[off + i] = if rem > 1e-15 { (u / rem).clamp(0.0, 1.0) } else { 0.0 };
                rem -= u;
            }
        }
        for i in 0..q {
            x[3 * (q - 1) + i] = alloc.bands.get(i).map_or(0.5, |b| b.alpha);
            x[3 * (q - 1) + q + i] = alloc.bands.get(i).map_or(0.5, |b| b.beta);
        }
        x
    }

    fn value(&self, alloc: &BandAllocation) -> f64 {
        alloc
            .bands
            .iter()
            .filter(|b| b.lambda > 1e-12)
            .map(|b| {
                let band_params = ChannelParams::new(b.p1, b.p2, self.params.a(), self.params.b())
                    .expect("band powers are nonnegative by construction");
                let split = PowerSplit { alpha: b.alpha, beta: b.beta };
                let psis = psi_vector(&band_params, &split);
                b.lambda * pentagon_support(&psis, self.dir).0
            })
            .sum()
    }

    fn rate_point(&self, alloc: &BandAllocation) -> RatePair {
        let mut r = RatePair::new(0.0, 0.0);
        for b in alloc.bands.iter().filter(|b| b.lambda > 1e-12) {
            let band_params = ChannelParams::new(b.p1, b.p2, self.params.a(), self.params.b())
                .expect("band powers are nonnegative by construction");
            let split = PowerSplit { alpha: b.alpha, beta: b.beta };
            let psis = psi_vector(&band_params, &split);
            let (_, v) = pentagon_support(&psis, self.dir);
            r.r1 += b.lambda * v.r1;
            r.r2 += b.lambda * v.r2;
        }
        r
    }
}

/// Best single-band value: the split grid-refined at full powers.
fn single_band_best(params: &ChannelParams, dir: Direction) -> (f64, PowerSplit) {
    let f = |alpha: f64, beta: f64| {
        let psis = psi_vector(params, &PowerSplit { alpha, beta });
        -pentagon_support(&psis, dir).0
    };
    let r = optim::grid_refine_2d(&f, (0.0, 1.0), (0.0, 1.0), 3, 41);
    (-r.value, PowerSplit { alpha: r.argmin[0], beta: r.argmin[1] })
}

/// Maximized weighted rate over three-band TD/FD allocations.
pub fn g2_support(params: &ChannelParams, dir: Direction, cfg: &OptConfig) -> Result<G2Support> {
    g2_support_with_bands(params, dir, cfg, 3, None)
}

/// [`g2_support`] with an explicit band count and optional warm-start
/// allocation (used to verify that more than three bands do not help).
pub fn g2_support_with_bands(
    params: &ChannelParams,
    dir: Direction,
    cfg: &OptConfig,
    bands: usize,
    warm: Option<&BandAllocation>,
) -> Result<G2Support> {
    if !(1..=6).contains(&bands) {
        return Err(Error::Domain(format!("band count must be in 1..=6, got {bands}")));
    }
    if params.a() >= 1.0 || params.b() >= 1.0 {
        return Err(Error::Dispatch(
            "banded support maximization is for weak or one-sided-weak channels".into(),
        ));
    }
    let problem = BandProblem { params, dir, bands };
    let (base_value, base_split) = single_band_best(params, dir);
    let single = BandAllocation {
        bands: vec![Band {
            lambda: 1.0,
            p1: params.p1(),
            p2: params.p2(),
            alpha: base_split.alpha,
            beta: base_split.beta,
        }],
    };
    if bands == 1 {
        let rate_point = problem.rate_point(&single);
        return Ok(G2Support { value: base_value, rate_point, allocation: single, converged: true });
    }

    let mut seeds = vec![problem.encode(&single)];
    // Pure TDM: each user alone in its own band at boosted power.
    let tdm = BandAllocation {
        bands: vec![
            Band { lambda: 0.5, p1: 2.0 * params.p1(), p2: 0.0, alpha: 1.0, beta: 1.0 },
            Band { lambda: 0.5, p1: 0.0, p2: 2.0 * params.p2(), alpha: 1.0, beta: 1.0 },
        ],
    };
    seeds.push(problem.encode(&tdm));
    let uniform = BandAllocation {
        bands: (0..bands)
            .map(|_| Band {
                lambda: 1.0 / bands as f64,
                p1: params.p1(),
                p2: params.p2(),
                alpha: base_split.alpha,
                beta: base_split.beta,
            })
            .collect(),
    };
    seeds.push(problem.encode(&uniform));
    if let Some(w) = warm {
        seeds.push(problem.encode(w));
    }

    let objective = |x: &[f64]| -problem.value(&problem.decode(x));
    let dim = problem.dim();
    let bounds = BoxBounds::new(vec![0.0; dim], vec![1.0; dim])?;
    let result = optim::minimize_with_seeds(&objective, &bounds, &[], &seeds, cfg)?;

    // Per-band split refinement around the incumbent, then one more polish.
    let mut alloc = problem.decode(&result.argmin);
    for i in 0..alloc.bands.len() {
        if alloc.bands[i].lambda <= 1e-9 {
            continue;
        }
        let trial = alloc.clone();
        let f = |al: f64, be: f64| {
            let mut t = trial.clone();
            t.bands[i].alpha = al;
            t.bands[i].beta = be;
            -problem.value(&t)
        };
        let r = optim::grid_refine_2d(&f, (0.0, 1.0), (0.0, 1.0), 3, 25);
        alloc.bands[i].alpha = r.argmin[0];
        alloc.bands[i].beta = r.argmin[1];
    }
    let polished = optim::minimize_with_seeds(
        &objective,
        &bounds,
        &[],
        &[problem.encode(&alloc)],
        &OptConfig { starts: 0, ..cfg.clone() },
    )?;

    let mut best_value = base_value;
    let mut best_alloc = single;
    for cand in [&result, &polished] {
        let v = -cand.value;
        if v > best_value + 1e-15 {
            best_value = v;
            best_alloc = problem.decode(&cand.argmin);
        }
    }
    best_alloc.validate(params)?;
    let rate_point = problem.rate_point(&best_alloc);
    Ok(G2Support {
        value: best_value,
        rate_point,
        allocation: best_alloc,
        converged: result.converged,
    })
}

/// Which structure the mixed-channel split-union region takes
/// (`0 < a < 1 <= b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedHkRegime {
    /// `1 + P2 <= b + a*b*P2`: decoding user 1 at receiver 2 never binds and
    /// the region is a single private-power sweep, identical in form to the
    /// one-sided region.
    FullPrivateSweep,
    /// `1 + P2 > b + a*b*P2` and `1 - a <= a*b*P1`: past the sweep break the
    /// boundary is limited by the cross-link rate of user 1.
    CrossRateLimited,
    /// `1 + P2 > b + a*b*P2` and `1 - a > a*b*P1`: past the break the direct
    /// rate of user 1 limits the boundary.
    DirectRateLimited,
}

pub fn mixed_hk_regime(params: &ChannelParams) -> Result<MixedHkRegime> {
    if !params.is_mixed_standard() {
        return Err(Error::Dispatch(format!(
            "mixed-channel region requires 0 < a < 1 <= b, got a={}, b={}",
            params.a(),
            params.b()
        )));
    }
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    if 1.0 + p2 <= b + a * b * p2 {
        Ok(MixedHkRegime::FullPrivateSweep)
    } else if 1.0 - a <= a * b * p1 {
        Ok(MixedHkRegime::CrossRateLimited)
    } else {
        Ok(MixedHkRegime::DirectRateLimited)
    }
}

fn clamp_or(v: f64, lo: f64, hi: f64, fallback: f64) -> f64 {
    if v.is_finite() {
        v.clamp(lo, hi)
    } else {
        fallback
    }
}

/// Split-union inner region of the mixed channel (`0 < a < 1 <= b`), as the
/// convex hull of the achievable corner points of its segments.
pub fn mixed_hk_region(params: &ChannelParams, beta_samples: usize) -> Result<PolyRegion> {
    let regime = mixed_hk_regime(params)?;
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let n = beta_samples.max(2);

    let mut pts: Vec<RatePair> = Vec::new();
    match regime {
        MixedHkRegime::FullPrivateSweep => {
            pts.extend(private_sweep_points(p1, p2, a, 0.0, 1.0, n));
        }
        MixedHkRegime::CrossRateLimited => {
            let beta_break = clamp_or((b - 1.0) / ((1.0 - a * b) * p2), 0.0, 1.0, 1.0);
            let beta_stop = clamp_or(
                ((b - 1.0) * p1 + (1.0 - a) * p2) / ((1.0 - a * b) * p1 * p2 + (1.0 - a) * p2),
                beta_break,
                1.0,
                1.0,
            );
            pts.extend(private_sweep_points(p1, p2, a, 0.0, beta_break, n));
            for i in 0..n {
                let beta = beta_break + (beta_stop - beta_break) * i as f64 / (n - 1) as f64;
                let x = gam(b * p1 / (1.0 + beta * p2));
                let y =
                    gam((p1 + a * (1.0 - beta) * p2) / (1.0 + a * beta * p2)) + gam(beta * p2) - x;
                pts.push(RatePair::new(x, y.max(0.0)));
            }
            let sum = gam(b * p1 + p2);
            let x3 = gam(b * p1 * (1.0 + (1.0 - a * b) * p1 / (1.0 - a)) / (1.0 + b * p1 + p2));
            push_pentagon_corners(&mut pts, x3, gam(p2), sum);
        }
        MixedHkRegime::DirectRateLimited => {
            let beta_break = clamp_or((b - 1.0) / ((1.0 - a * b) * p2), 0.0, 1.0, 1.0);
            pts.extend(private_sweep_points(p1, p2, a, 0.0, beta_break, n));
            for i in 0..n {
                let beta = beta_break + (1.0 - beta_break) * i as f64 / (n - 1) as f64;
                let x = gam(p1 / (1.0 + a * beta * p2));
                let y = gam(a * (1.0 - beta) * p2 / (1.0 + a * beta * p2))
                    + gam(beta * p2 + b * p1)
                    - x;
                pts.push(RatePair::new(x, y.max(0.0)));
            }
            let sum = gam(b * p1 + p2);
            let x3 = gam(p1 / (1.0 + a * p2));
            push_pentagon_corners(&mut pts, x3, gam(p2), sum);
        }
    }
    PolyRegion::from_achievable_points(&pts)
}

fn push_pentagon_corners(pts: &mut Vec<RatePair>, x_cap: f64, y_cap: f64, sum: f64) {
    pts.push(RatePair::new(x_cap, (sum - x_cap).min(y_cap).max(0.0)));
    pts.push(RatePair::new((sum - y_cap).max(0.0).min(x_cap), y_cap));
    pts.push(RatePair::new(x_cap, 0.0));
    pts.push(RatePair::new(0.0, y_cap));
}

/// Per-direction outcome of the constant-dual-support check.
#[derive(Debug, Clone)]
pub struct DirectionFinding {
    pub c1: f64,
    pub c2: f64,
    pub passes: bool,
    /// Dual bases (constraint-row index pairs) optimal for every sample.
    pub common_bases: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct UniqueMinimizerReport {
    pub passes: bool,
    pub directions: Vec<DirectionFinding>,
}

/// Checks whether a constraint family `{ A R <= Psi(sample) }` keeps a
/// direction-only optimal dual basis: for each direction, enumerates the
/// basic dual solutions `y` of `min y.Psi, A' y = c, y >= 0` over all row
/// pairs and reports whether one optimal basis is shared by every sample.
pub fn unique_minimizer_check(
    rows: &[(f64, f64)],
    offset_samples: &[Vec<f64>],
    dirs: &[Direction],
) -> Result<UniqueMinimizerReport> {
    if rows.len() < 2 {
        return Err(Error::Domain("need at least two constraint rows".into()));
    }
    for s in offset_samples {
        if s.len() != rows.len() {
            return Err(Error::Domain(format!(
                "offset sample of length {} does not match {} rows",
                s.len(),
                rows.len()
            )));
        }
    }

    let mut findings = Vec::with_capacity(dirs.len());
    let mut all_pass = true;
    for dir in dirs {
        let c = (dir.c1(), dir.c2());
        let mut common: Option<std::collections::BTreeSet<(usize, usize)>> = None;
        for sample in offset_samples {
            let mut best = f64::INFINITY;
            let mut arg: Vec<((usize, usize), f64)> = Vec::new();
            for i in 0..rows.len() {
                for j in (i + 1)..rows.len() {
                    let (a1, a2) = rows[i];
                    let (b1, b2) = rows[j];
                    let det = a1 * b2 - a2 * b1;
                    if det.abs() < 1e-12 {
                        continue;
                    }
                    // Solve y_i * row_i + y_j * row_j = c.
                    let yi = (c.0 * b2 - c.1 * b1) / det;
                    let yj = (a1 * c.1 - a2 * c.0) / det;
                    if yi < -1e-9 || yj < -1e-9 {
                        continue;
                    }
                    let value = yi * sample[i] + yj * sample[j];
                    arg.push(((i, j), value));
                    if value < best {
                        best = value;
                    }
                }
            }
            if !best.is_finite() {
                return Err(Error::Domain(format!(
                    "direction ({}, {}) has no feasible dual basis",
                    c.0, c.1
                )));
            }
            let tol = 1e-9 * (1.0 + best.abs());
            let optimal: std::collections::BTreeSet<(usize, usize)> =
                arg.into_iter().filter(|(_, v)| *v <= best + tol).map(|(b, _)| b).collect();
            common = Some(match common {
                None => optimal,
                Some(prev) => prev.intersection(&optimal).copied().collect(),
            });
        }
        let common = common.unwrap_or_default();
        let passes = !common.is_empty();
        all_pass &= passes;
        findings.push(DirectionFinding {
            c1: c.0,
            c2: c.1,
            passes,
            common_bases: common.into_iter().collect(),
        });
    }
    Ok(UniqueMinimizerReport { passes: all_pass, directions: findings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::gamma;

    fn params(p1: f64, p2: f64, a: f64, b: f64) -> ChannelParams {
        ChannelParams::new(p1, p2, a, b).unwrap()
    }

    fn split(alpha: f64, beta: f64) -> PowerSplit {
        PowerSplit::new(alpha, beta).unwrap()
    }

    /// All four interior extreme points of the pentagon exist strictly.
    fn pentagon_nondegenerate(psis: &PsiVector) -> bool {
        let p3 = psis.psi3();
        psis.psi4 - 2.0 * psis.psi1 > 1e-9
            && 2.0 * p3 - psis.psi4 > 1e-9
            && 2.0 * p3 - psis.psi5 > 1e-9
            && psis.psi5 - 2.0 * psis.psi2 > 1e-9
            && psis.psi4 - p3 > 1e-9
            && psis.psi5 - p3 > 1e-9
    }

    #[test]
    fn psi_identity_and_positivity() {
        let mut state = 1u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let p = params(20.0 * next(), 20.0 * next(), next(), next());
            let s = split(next(), next());
            let psis = psi_vector(&p, &s);
            let lhs = psis.psi31 + psis.psi32 + psis.psi33;
            let rhs = psis.psi4 + psis.psi5;
            assert!((lhs - rhs).abs() < 1e-9, "identity violated: {lhs} vs {rhs}");
            for v in
                [psis.psi1, psis.psi2, psis.psi31, psis.psi32, psis.psi33, psis.psi4, psis.psi5]
            {
                assert!(v >= 0.0 && v.is_finite());
            }
        }
    }

    #[test]
    fn psi_interference_free() {
        let p = params(3.0, 5.0, 0.0, 0.0);
        let s = split(0.3, 0.8);
        let psis = psi_vector(&p, &s);
        assert!((psis.psi1 - gamma(3.0).unwrap()).abs() < 1e-15);
        assert!((psis.psi2 - gamma(5.0).unwrap()).abs() < 1e-15);
        let region = g0_region(&p, &s).unwrap();
        assert_eq!(region.vertices().len(), 4, "interference-free region is the rectangle");
    }

    #[test]
    fn psi_one_sided_identities() {
        let p = params(1.0, 7.0, 0.4, 0.0);
        let s = split(1.0, 0.35);
        let psis = psi_vector(&p, &s);
        assert!((psis.psi3() - psis.psi31).abs() < 1e-12);
        assert!((psis.psi31 + psis.psi1 - psis.psi4).abs() < 1e-12);
        assert!((psis.psi31 + psis.psi2 - psis.psi5).abs() < 1e-12);
    }

    #[test]
    fn g0_vertices_include_corner_point() {
        let p = params(7.0, 7.0, 0.2, 0.2);
        let s = split(0.5, 0.5);
        let psis = psi_vector(&p, &s);
        assert!(pentagon_nondegenerate(&psis));
        let region = g0_region(&p, &s).unwrap();
        let r1 = RatePair::new(psis.psi1, psis.psi4 - 2.0 * psis.psi1);
        assert!(
            region
                .vertices()
                .iter()
                .any(|v| (v.r1 - r1.r1).abs() < 1e-9 && (v.r2 - r1.r2).abs() < 1e-9),
            "corner {r1:?} missing from {:?}",
            region.vertices()
        );
        assert_eq!(region.vertices().len(), 7);
    }

    #[test]
    fn false_corner_is_excluded() {
        let p = params(7.0, 7.0, 0.2, 0.2);
        let s = split(0.5, 0.5);
        let psis = psi_vector(&p, &s);
        let region = g0_region(&p, &s).unwrap();
        let r6 = RatePair::new(
            (2.0 * psis.psi4 - psis.psi5) / 3.0,
            (2.0 * psis.psi5 - psis.psi4) / 3.0,
        );
        assert!(!region.contains(r6));
    }

    #[test]
    fn exclusion_identities_hold_for_weak() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let (p1, p2) = (20.0 * next(), 20.0 * next());
            let (a, b) = (0.999 * next(), 0.999 * next());
            let (alpha, beta) = (next(), next());
            // Slack of psi4 <= psi3i + psi1 in closed form.
            assert!((1.0 - alpha) * (1.0 - b + beta * (1.0 - a * b) * p2) >= -1e-12);
            assert!((1.0 - beta) * (1.0 - a + (1.0 - a * b) * p1) >= -1e-12);
            assert!((1.0 - alpha) * (1.0 - beta) * a * p2 >= -1e-12);
            // And numerically on the psi values for both corner families.
            let psis = psi_vector(&params(p1, p2, a, b), &split(alpha, beta));
            assert!(psis.psi4 <= psis.psi3() + psis.psi1 + 1e-9);
            assert!(psis.psi5 <= psis.psi3() + psis.psi2 + 1e-9);
        }
    }

    #[test]
    fn closed_form_matches_region_support() {
        let mut state = 3u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut checked = 0;
        while checked < 25 {
            let p = params(
                0.5 + 25.0 * next(),
                0.5 + 25.0 * next(),
                0.02 + 0.95 * next(),
                0.02 + 0.95 * next(),
            );
            let s = split(next(), next());
            let psis = psi_vector(&p, &s);
            if !pentagon_nondegenerate(&psis) {
                continue;
            }
            checked += 1;
            let region = g0_region(&p, &s).unwrap();
            for mu in [1.0, 1.3, 2.0, 2.7, 5.0, 40.0] {
                for dir in [Direction::mu_one(mu).unwrap(), Direction::one_mu(mu).unwrap()] {
                    let cf = g0_support_closed_form(&psis, dir).unwrap();
                    let lp = region.support(dir);
                    assert!(
                        (cf - lp).abs() <= 1e-9 * (1.0 + lp.abs()),
                        "closed form {cf} vs LP {lp} at mu={mu}"
                    );
                    let (pent, _) = pentagon_support(&psis, dir);
                    assert!((pent - lp).abs() <= 1e-9 * (1.0 + lp.abs()));
                }
            }
        }
    }

    #[test]
    fn closed_form_at_mu_one_is_sum_bound() {
        let p = params(7.0, 7.0, 0.2, 0.2);
        let psis = psi_vector(&p, &split(0.4, 0.6));
        let v = g0_support_closed_form(&psis, Direction::mu_one(1.0).unwrap()).unwrap();
        assert!((v - psis.psi3()).abs() < 1e-12);
        let v = g0_support_closed_form(&psis, Direction::one_mu(3.0).unwrap()).unwrap();
        assert!((v - (psis.psi2 + psis.psi5)).abs() < 1e-12);
    }

    #[test]
    fn closed_form_rejects_axis_directions() {
        let psis = psi_vector(&params(1.0, 1.0, 0.5, 0.5), &split(0.5, 0.5));
        assert!(g0_support_closed_form(&psis, Direction::new(1.0, 0.0).unwrap()).is_err());
    }

    #[test]
    fn one_sided_region_endpoints() {
        let p = params(1.0, 7.0, 0.4, 0.0);
        let region = g1_one_sided_region(&p, 201).unwrap();
        let c1 = private_sweep_corner(1.0, 7.0, 0.4, 1.0);
        assert!((c1.r1 - gamma(1.0 / 3.8).unwrap()).abs() < 1e-12);
        assert!((c1.r2 - gamma(7.0).unwrap()).abs() < 1e-12);
        assert!(region.contains(c1));
        let c0 = private_sweep_corner(1.0, 7.0, 0.4, 0.0);
        assert!((c0.r1 - gamma(1.0).unwrap()).abs() < 1e-12);
        assert!((c0.r2 - gamma(0.4 * 7.0 / 2.0).unwrap()).abs() < 1e-12);
        assert!(region.contains(c0));
    }

    #[test]
    fn one_sided_region_is_convex_along_boundary() {
        let p = params(1.0, 7.0, 0.4, 0.0);
        let region = g1_one_sided_region(&p, 401).unwrap();
        for i in 0..40 {
            let b1 = i as f64 / 40.0;
            let b2 = (i + 1) as f64 / 40.0;
            let q1 = private_sweep_corner(1.0, 7.0, 0.4, b1);
            let q2 = private_sweep_corner(1.0, 7.0, 0.4, b2);
            let mid = RatePair::new(0.5 * (q1.r1 + q2.r1), 0.5 * (q1.r2 + q2.r2));
            assert!(region.contains(mid), "midpoint {mid:?} escaped");
        }
    }

    #[test]
    fn one_sided_region_dispatch() {
        assert!(g1_one_sided_region(&params(1.0, 1.0, 1.5, 0.0), 10).is_err());
        assert!(g1_one_sided_region(&params(1.0, 1.0, 0.5, 0.1), 10).is_err());
    }

    #[test]
    fn banded_support_interference_free_is_exact() {
        // With no interference the weighted rate is concave in the powers, so
        // banding cannot improve on the single band.
        let p = params(4.0, 9.0, 0.0, 0.0);
        let dir = Direction::mu_one(3.0).unwrap();
        let got = g2_support(&p, dir, &OptConfig::light(0)).unwrap();
        let expect = 3.0 * gamma(4.0).unwrap() + gamma(9.0).unwrap();
        assert!((got.value - expect).abs() < 1e-6, "got {}, expected {expect}", got.value);
    }

    #[test]
    fn banded_support_dominates_single_band() {
        let p = params(7.0, 7.0, 0.2, 0.2);
        for mu in [1.0, 1.5, 2.5] {
            let dir = Direction::mu_one(mu).unwrap();
            let (base, _) = single_band_best(&p, dir);
            let got = g2_support(&p, dir, &OptConfig::light(1)).unwrap();
            assert!(got.value >= base - 1e-12);
            got.allocation.validate(&p).unwrap();
            // The reported rate point must attain the value.
            let attained = dir.c1() * got.rate_point.r1 + dir.c2() * got.rate_point.r2;
            assert!((attained - got.value).abs() < 1e-9);
        }
    }

    #[test]
    fn banded_support_matches_one_sided_union_region() {
        let p = params(1.0, 7.0, 0.4, 0.0);
        let region = g1_one_sided_region(&p, 801).unwrap();
        for mu in [1.0, 1.8, 3.0] {
            let dir = Direction::mu_one(mu).unwrap();
            let banded = g2_support(&p, dir, &OptConfig::light(2)).unwrap().value;
            let union = region.support(dir);
            assert!((banded - union).abs() < 1e-4, "banded {banded} vs union {union} at mu={mu}");
        }
    }

    #[test]
    fn mixed_regime_dispatch() {
        assert_eq!(
            mixed_hk_regime(&params(7.0, 7.0, 0.6, 2.0)).unwrap(),
            MixedHkRegime::FullPrivateSweep
        );
        assert_eq!(
            mixed_hk_regime(&params(7.0, 7.0, 0.4, 1.5)).unwrap(),
            MixedHkRegime::CrossRateLimited
        );
        assert_eq!(
            mixed_hk_regime(&params(7.0, 700.0, 0.01, 1.5)).unwrap(),
            MixedHkRegime::DirectRateLimited
        );
        assert!(mixed_hk_regime(&params(1.0, 1.0, 0.5, 0.5)).is_err());
    }

    #[test]
    fn mixed_high_gain_product_equals_one_sided() {
        // a*b >= 1 keeps the full private sweep for all powers, which is the
        // one-sided union region with the extra link ignored.
        let p = params(7.0, 7.0, 0.6, 2.0);
        let mixed = mixed_hk_region(&p, 401).unwrap();
        let one_sided = g1_one_sided_region(&params(7.0, 7.0, 0.6, 0.0), 401).unwrap();
        for mu in [1.0, 1.5, 2.0, 4.0, 10.0] {
            for dir in [Direction::mu_one(mu).unwrap(), Direction::one_mu(mu).unwrap()] {
                let d = (mixed.support(dir) - one_sided.support(dir)).abs();
                assert!(d < 1e-6, "supports differ by {d} at mu={mu}");
            }
        }
    }

    #[test]
    fn mixed_cross_limited_cap_is_sane() {
        // The fixed facet's R1 cap must stay below the strong one-sided caps.
        let p = params(7.0, 7.0, 0.4, 1.5);
        let region = mixed_hk_region(&p, 201).unwrap();
        let x_cap = region.support(Direction::new(1.0, 0.0).unwrap());
        assert!(x_cap <= gamma(1.5 * 7.0).unwrap() + 1e-9);
        assert!(x_cap <= gamma(1.5 * 7.0 + 7.0).unwrap());
    }

    #[test]
    fn unique_minimizer_weak_family_passes() {
        let rows = g0_constraint_rows().to_vec();
        let mut samples = Vec::new();
        for &p1 in &[0.5, 2.0, 10.0] {
            for &p2 in &[0.5, 2.0, 10.0] {
                for &alpha in &[0.0, 0.5, 1.0] {
                    for &beta in &[0.0, 0.5, 1.0] {
                        let psis = psi_vector(&params(p1, p2, 0.3, 0.6), &split(alpha, beta));
                        samples.push(psis.offsets().to_vec());
                    }
                }
            }
        }
        let dirs: Vec<Direction> = [1.0, 1.5, 2.0, 3.0, 10.0]
            .iter()
            .flat_map(|&mu| [Direction::mu_one(mu).unwrap(), Direction::one_mu(mu).unwrap()])
            .collect();
        let report = unique_minimizer_check(&rows, &samples, &dirs).unwrap();
        assert!(report.passes, "{:#?}", report.directions);
    }

    #[test]
    fn unique_minimizer_counterexample_fails() {
        // Family R1 <= 1+t, R2 <= 1+t, R1+R2 <= 3+t: the sum constraint is
        // active only for t > 1, so the optimal dual basis at (1,1) moves.
        let rows = vec![(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
        let samples: Vec<Vec<f64>> =
            [0.1, 0.5, 2.0, 5.0].iter().map(|&t| vec![1.0 + t, 1.0 + t, 3.0 + t]).collect();
        let dirs = vec![Direction::new(1.0, 1.0).unwrap()];
        let report = unique_minimizer_check(&rows, &samples, &dirs).unwrap();
        assert!(!report.passes);
    }

    #[test]
    fn unique_minimizer_polymatroid_passes() {
        // MAC-style polymatroid: f1, f2, f12 with submodular structure.
        let rows = vec![(1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
        let samples: Vec<Vec<f64>> = [(1.0, 1.0), (3.0, 0.5), (0.2, 8.0), (5.0, 5.0)]
            .iter()
            .map(|&(p1, p2)| {
                vec![gamma(p1).unwrap(), gamma(p2).unwrap(), gamma(p1 + p2).unwrap()]
            })
            .collect();
        let dirs = vec![
            Direction::mu_one(1.5).unwrap(),
            Direction::mu_one(4.0).unwrap(),
            Direction::one_mu(2.0).unwrap(),
        ];
        let report = unique_minimizer_check(&rows, &samples, &dirs).unwrap();
        assert!(report.passes, "{:#?}", report.directions);
    }

    #[test]
    fn unique_minimizer_primal_dual_agreement() {
        // The enumerated dual minimum must equal the region support (the
        // first-quadrant restriction is inactive for this configuration).
        let p = params(7.0, 7.0, 0.2, 0.2);
        let s = split(0.5, 0.5);
        let psis = psi_vector(&p, &s);
        let region = g0_region(&p, &s).unwrap();
        let rows = g0_constraint_rows();
        for mu in [1.0, 1.7, 3.5] {
            let dir = Direction::mu_one(mu).unwrap();
            let c = (dir.c1(), dir.c2());
            let mut best = f64::INFINITY;
            for i in 0..5 {
                for j in (i + 1)..5 {
                    let (a1, a2) = rows[i];
                    let (b1, b2) = rows[j];
                    let det = a1 * b2 - a2 * b1;
                    if det.abs() < 1e-12 {
                        continue;
                    }
                    let yi = (c.0 * b2 - c.1 * b1) / det;
                    let yj = (a1 * c.1 - a2 * c.0) / det;
                    if yi < -1e-12 || yj < -1e-12 {
                        continue;
                    }
                    best = best.min(yi * psis.offsets()[i] + yj * psis.offsets()[j]);
                }
            }
            assert!((best - region.support(dir)).abs() < 1e-9);
        }
    }
}
