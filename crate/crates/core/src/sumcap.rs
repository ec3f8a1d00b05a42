//! Exact sum capacities and their validity conditions.

use crate::channel::{gam, ChannelParams};
use crate::error::{Error, Result};
use crate::geometry::RatePair;
use serde::{Deserialize, Serialize};

/// Which result produced a sum-capacity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SumCapacityRegime {
    /// Weak channel inside the noisy-interference region: treating
    /// interference as noise is sum-optimal.
    NoisyInterference,
    /// Mixed channel, weak-side branch of the min.
    MixedWeakSide,
    /// Mixed channel, strong-side branch of the min.
    MixedStrongSide,
    /// One-sided weak channel (corner point of the region).
    OneSidedWeak,
    /// One-sided strong channel (capacity region known).
    OneSidedStrong,
    /// Strong channel (capacity region known).
    Strong,
    /// No interference at all.
    InterferenceFree,
    /// No exact result applies; only bounds are available.
    Unknown,
}

/// A sum-capacity answer: the value is present exactly when some exact
/// result applies.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SumCapacityResult {
    pub value: Option<f64>,
    pub regime: SumCapacityRegime,
    /// Short description of the achieving strategy, when known.
    pub witness: Option<String>,
}

impl SumCapacityResult {
    fn known(value: f64, regime: SumCapacityRegime, witness: &str) -> Self {
        Self { value: Some(value), regime, witness: Some(witness.to_string()) }
    }

    fn unknown() -> Self {
        Self { value: None, regime: SumCapacityRegime::Unknown, witness: None }
    }
}

/// Sum rate of Gaussian codebooks with single-user decoding:
/// `gamma(P1/(1+a*P2)) + gamma(P2/(1+b*P1))`.
pub fn treat_as_noise_sum(params: &ChannelParams) -> f64 {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    gam(p1 / (1.0 + a * p2)) + gam(p2 / (1.0 + b * p1))
}

/// Noisy-interference condition for the weak channel:
/// `sqrt(b) P1 + sqrt(a) P2 <= (1 - sqrt(a) - sqrt(b)) / sqrt(a*b)`.
///
/// The right side is positive only when `sqrt(a) + sqrt(b) < 1`; otherwise
/// the regime is empty and the condition is false.
pub fn weak_noisy_condition(params: &ChannelParams) -> Result<bool> {
    if !params.is_weak() {
        return Err(Error::Dispatch(format!(
            "noisy-interference condition applies to weak channels, got a={}, b={}",
            params.a(),
            params.b()
        )));
    }
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let (sa, sb) = (a.sqrt(), b.sqrt());
    if sa + sb >= 1.0 {
        return Ok(false);
    }
    Ok(sb * p1 + sa * p2 <= (1.0 - sa - sb) / (sa * sb))
}

/// Sum capacity of the weak channel where known.
pub fn weak_sum_capacity(params: &ChannelParams) -> Result<SumCapacityResult> {
    if weak_noisy_condition(params)? {
        Ok(SumCapacityResult::known(
            treat_as_noise_sum(params),
            SumCapacityRegime::NoisyInterference,
            "Gaussian codebooks, interference treated as noise",
        ))
    } else {
        Ok(SumCapacityResult::unknown())
    }
}

/// Membership of `(P1, P2)` in the noisy-interference power region, tested
/// two ways: by searching the split grid `(S1, S2) in (0,1)^2` at the given
/// resolution for a witness, and by the closed-form inequality. Returns
/// `(grid, closed_form)`.
pub fn d_region_feasible(params: &ChannelParams, grid: usize) -> Result<(bool, bool)> {
    if !params.is_weak() {
        return Err(Error::Dispatch("power-region test applies to weak channels".into()));
    }
    let closed = weak_noisy_condition(params)?;
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let n = grid.max(2);

    // Witness search for: P1 <= sqrt(S1(1-S2))/(b sqrt(a)) - 1/b and
    // P2 <= sqrt(S2(1-S1))/(a sqrt(b)) - 1/a.
    let lhs1 = b * sa * (p1 + 1.0 / b);
    let lhs2 = a * sb * (p2 + 1.0 / a);
    let roots: Vec<f64> = (1..n).map(|i| (i as f64 / n as f64).sqrt()).collect();
    let co_roots: Vec<f64> = (1..n).map(|i| (1.0 - i as f64 / n as f64).sqrt()).collect();
    let mut found = false;
    'outer: for i in 0..roots.len() {
        for j in 0..roots.len() {
            // S1 = (i+1)/n, S2 = (j+1)/n.
            if roots[i] * co_roots[j] >= lhs1 && roots[j] * co_roots[i] >= lhs2 {
                found = true;
                break 'outer;
            }
        }
    }
    Ok((found, closed))
}

/// Which branch of the mixed sum capacity attains the min.
fn mixed_branches(params: &ChannelParams) -> (f64, f64) {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    (gam(p1 / (1.0 + a * p2)), gam(b * p1 / (1.0 + p2)))
}

/// Exact sum capacity of the mixed channel (`0 < a < 1 <= b`):
/// `gamma(P2) + min(gamma(P1/(1+a*P2)), gamma(b*P1/(1+P2)))`.
pub fn mixed_sum_capacity(params: &ChannelParams) -> Result<SumCapacityResult> {
    if !params.is_mixed_standard() {
        return Err(Error::Dispatch(format!(
            "mixed sum capacity requires 0 < a < 1 <= b, got a={}, b={}; swap the users first",
            params.a(),
            params.b()
        )));
    }
    let (weak_side, strong_side) = mixed_branches(params);
    let base = gam(params.p2());
    if weak_side <= strong_side {
        Ok(SumCapacityResult::known(
            base + weak_side,
            SumCapacityRegime::MixedWeakSide,
            "user 2 at full rate; user 1 decoded at receiver 2, interference as noise at receiver 1",
        ))
    } else {
        Ok(SumCapacityResult::known(
            base + strong_side,
            SumCapacityRegime::MixedStrongSide,
            "user 2 at full rate; user 1 limited by the cross link into receiver 2",
        ))
    }
}

/// The corner point attaining the one-sided weak sum capacity
/// (`b = 0`, `0 < a < 1`).
pub fn one_sided_sason_point(params: &ChannelParams) -> Result<RatePair> {
    if params.b() != 0.0 {
        return Err(Error::Dispatch(format!(
            "one-sided corner point requires b = 0, got b = {}",
            params.b()
        )));
    }
    if params.a() >= 1.0 {
        return Err(Error::Dispatch(format!(
            "one-sided corner point requires a < 1, got a = {}",
            params.a()
        )));
    }
    let (p1, p2, a) = (params.p1(), params.p2(), params.a());
    Ok(RatePair::new(gam(p1 / (1.0 + a * p2)), gam(p2)))
}

/// Exact sum capacity of the strong channel (`a >= 1`, `b >= 1`), including
/// the individual-rate cap that binds in the very strong regime.
pub fn strong_sum_capacity(params: &ChannelParams) -> Result<f64> {
    if !params.is_strong() {
        return Err(Error::Dispatch(format!(
            "strong sum capacity requires a >= 1 and b >= 1, got a={}, b={}",
            params.a(),
            params.b()
        )));
    }
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    Ok(gam(p1 + a * p2).min(gam(b * p1 + p2)).min(gam(p1) + gam(p2)))
}

/// Dispatches to the exact result for the channel's class, or reports
/// unknown (weak channels outside the noisy-interference regime).
pub fn sum_capacity(params: &ChannelParams) -> Result<SumCapacityResult> {
    let (p1, p2, a, b) = (params.p1(), params.p2(), params.a(), params.b());
    if a == 0.0 && b == 0.0 {
        return Ok(SumCapacityResult::known(
            gam(p1) + gam(p2),
            SumCapacityRegime::InterferenceFree,
            "independent point-to-point links",
        ));
    }
    if params.is_strong() {
        return Ok(SumCapacityResult::known(
            strong_sum_capacity(params)?,
            SumCapacityRegime::Strong,
            "both messages decoded at both receivers",
        ));
    }
    // One-sided channels, possibly after a swap.
    let oriented = if params.b() == 0.0 { *params } else { params.swapped() };
    if oriented.b() == 0.0 && oriented.a() > 0.0 {
        if oriented.a() < 1.0 {
            let point = one_sided_sason_point(&oriented)?;
            return Ok(SumCapacityResult::known(
                point.r1 + point.r2,
                SumCapacityRegime::OneSidedWeak,
                "interfered user treats interference as noise; other user at full rate",
            ));
        }
        let (p1o, p2o, ao) = (oriented.p1(), oriented.p2(), oriented.a());
        return Ok(SumCapacityResult::known(
            gam(p1o + ao * p2o).min(gam(p1o) + gam(p2o)),
            SumCapacityRegime::OneSidedStrong,
            "interference decoded at the interfered receiver",
        ));
    }
    if params.is_mixed() {
        let oriented = if params.is_mixed_standard() { *params } else { params.swapped() };
        return mixed_sum_capacity(&oriented);
    }
    weak_sum_capacity(params)
}
