//! Closed convex 2-D rate regions in the first quadrant.
//!
//! A region is an intersection of half-planes `c1*R1 + c2*R2 <= d` with
//! nonnegative coefficients, implicitly intersected with `R1 >= 0`,
//! `R2 >= 0`. Every region is required to be bounded and to contain the
//! origin; the constructor rejects half-plane sets that do not bound the
//! quadrant. Vertices are enumerated counterclockwise starting at the
//! origin, and the support function is evaluated by scanning them.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Absolute tolerance for vertex deduplication.
const VERTEX_TOL: f64 = 1e-12;
/// Absolute tolerance for containment tests.
const CONTAIN_TOL: f64 = 1e-9;

/// A point in the rate plane, bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }
}

/// A weighting direction `(c1, c2)` with nonnegative components.
///
/// The boundary of a region in the interior of the first quadrant is swept
/// by the two canonical families `(mu, 1)` and `(1, mu)` with `mu >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    c1: f64,
    c2: f64,
}

impl Direction {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if !c1.is_finite() || !c2.is_finite() || c1 < 0.0 || c2 < 0.0 {
            return Err(Error::Domain(format!(
                "direction components must be finite and nonnegative, got ({c1}, {c2})"
            )));
        }
        if c1 == 0.0 && c2 == 0.0 {
            return Err(Error::Domain("direction must be nonzero".into()));
        }
        Ok(Self { c1, c2 })
    }

    /// The `(mu, 1)` family, `mu >= 1`.
    pub fn mu_one(mu: f64) -> Result<Self> {
        if !(mu >= 1.0) {
            return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
        }
        Self::new(mu, 1.0)
    }

    /// The `(1, mu)` family, `mu >= 1`.
    pub fn one_mu(mu: f64) -> Result<Self> {
        if !(mu >= 1.0) {
            return Err(Error::Domain(format!("mu must be >= 1, got {mu}")));
        }
        Self::new(1.0, mu)
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }
    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn dot(&self, p: RatePair) -> f64 {
        self.c1 * p.r1 + self.c2 * p.r2
    }

    /// Swaps the two components (the role swap of the users).
    pub fn transposed(&self) -> Self {
        Self { c1: self.c2, c2: self.c1 }
    }
}

/// Log-spaced `mu` grid on `[lo, hi]`, endpoints included.
pub fn log_spaced_mu(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo >= 1.0 && hi >= lo && n >= 1);
    if n == 1 {
        return vec![lo];
    }
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// The default direction grid used for dual reconstructions: 257 log-spaced
/// `mu` in `[1, 1e3]` for each of the `(mu, 1)` and `(1, mu)` families plus
/// the two axis directions.
pub fn default_direction_grid() -> Vec<Direction> {
    direction_grid(257, 1e3)
}

/// Direction grid with `n` log-spaced `mu` per family on `[1, mu_max]`.
pub fn direction_grid(n: usize, mu_max: f64) -> Vec<Direction> {
    let mut dirs = vec![Direction { c1: 1.0, c2: 0.0 }, Direction { c1: 0.0, c2: 1.0 }];
    for mu in log_spaced_mu(1.0, mu_max, n) {
        dirs.push(Direction { c1: mu, c2: 1.0 });
        dirs.push(Direction { c1: 1.0, c2: mu });
    }
    dirs
}

/// One constraint `c1*R1 + c2*R2 <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub c1: f64,
    pub c2: f64,
    pub d: f64,
}

impl HalfPlane {
    pub fn new(c1: f64, c2: f64, d: f64) -> Self {
        Self { c1, c2, d }
    }
}

#[derive(Serialize, Deserialize)]
struct RegionDoc {
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<[f64; 2]>,
}

/// A bounded closed convex region in the first quadrant.
#[derive(Debug, Clone)]
pub struct PolyRegion {
    halfplanes: Vec<HalfPlane>,
    vertices: Vec<RatePair>,
}

impl PolyRegion {
    /// Builds the region from a half-plane list, removing duplicates and
    /// redundant constraints and enumerating the vertices.
    ///
    /// Errors if any half-plane is malformed (negative coefficient, negative
    /// offset, or no direction) or if the set fails to bound the region.
    pub fn from_halfplanes(halfplanes: &[HalfPlane]) -> Result<Self> {
        let mut clean: Vec<HalfPlane> = Vec::with_capacity(halfplanes.len());
        for hp in halfplanes {
            if !hp.c1.is_finite() || !hp.c2.is_finite() || !hp.d.is_finite() {
                return Err(Error::InvalidRegion(format!("non-finite half-plane {hp:?}")));
            }
            if hp.c1 < 0.0 || hp.c2 < 0.0 {
                return Err(Error::InvalidRegion(format!(
                    "half-plane coefficients must be nonnegative: {hp:?}"
                )));
            }
            let norm = hp.c1.hypot(hp.c2);
            if norm == 0.0 {
                return Err(Error::InvalidRegion("half-plane with zero direction".into()));
            }
            let mut d = hp.d;
            if d < 0.0 {
                if d / norm > -1e-9 {
                    d = 0.0;
                } else {
                    return Err(Error::InvalidRegion(format!(
                        "offset must be nonnegative (region contains the origin): {hp:?}"
                    )));
                }
            }
            // Deduplicate against the normalized form of what we already have.
            let (nc1, nc2, nd) = (hp.c1 / norm, hp.c2 / norm, d / norm);
            let dup = clean.iter().any(|q| {
                let qn = q.c1.hypot(q.c2);
                (q.c1 / qn - nc1).abs() <= VERTEX_TOL
                    && (q.c2 / qn - nc2).abs() <= VERTEX_TOL
                    && (q.d / qn - nd).abs() <= VERTEX_TOL
            });
            if !dup {
                clean.push(HalfPlane { c1: hp.c1, c2: hp.c2, d });
            }
        }
        if clean.is_empty() {
            return Err(Error::Unbounded("no half-planes supplied".into()));
        }

        let vertices = vertex_chain(&clean)?;

        // A constraint is kept when it supports an edge of the boundary;
        // touching a single vertex leaves the region unchanged. Degenerate
        // regions (fewer than three vertices) keep everything.
        let kept: Vec<HalfPlane> = if vertices.len() < 3 {
            clean
        } else {
            let kept: Vec<HalfPlane> = clean
                .iter()
                .copied()
                .filter(|hp| {
                    let norm = hp.c1.hypot(hp.c2);
                    let on_line = vertices
                        .iter()
                        .filter(|v| (hp.c1 * v.r1 + hp.c2 * v.r2 - hp.d).abs() <= 1e-9 * norm.max(1.0))
                        .count();
                    on_line >= 2
                })
                .collect();
            if kept.is_empty() {
                clean
            } else {
                kept
            }
        };

        Ok(Self { halfplanes: kept, vertices })
    }

    /// Inner polygon spanned by achievable corner points: the convex hull of
    /// the points together with their axis projections and the origin,
    /// converted back to half-planes.
    pub fn from_achievable_points(points: &[RatePair]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidRegion("no points supplied".into()));
        }
        let mut cloud: Vec<RatePair> = Vec::with_capacity(points.len() + 3);
        let (mut xmax, mut ymax) = (0.0f64, 0.0f64);
        for p in points {
            if !p.r1.is_finite() || !p.r2.is_finite() {
                return Err(Error::InvalidRegion(format!("non-finite point {p:?}")));
            }
            let q = RatePair::new(p.r1.max(0.0), p.r2.max(0.0));
            xmax = xmax.max(q.r1);
            ymax = ymax.max(q.r2);
            cloud.push(q);
        }
        cloud.push(RatePair::new(0.0, 0.0));
        cloud.push(RatePair::new(xmax, 0.0));
        cloud.push(RatePair::new(0.0, ymax));

        if xmax <= VERTEX_TOL && ymax <= VERTEX_TOL {
            // The origin alone.
            return Self::from_halfplanes(&[HalfPlane::new(1.0, 1.0, 0.0)]);
        }

        let hull = convex_hull(&mut cloud);
        let mut hps: Vec<HalfPlane> = Vec::new();
        let n = hull.len();
        for i in 0..n {
            let p = hull[i];
            let q = hull[(i + 1) % n];
            let (dx, dy) = (q.r1 - p.r1, q.r2 - p.r2);
            // Outward normal of a CCW edge.
            let (nx, ny) = (dy, -dx);
            let norm = nx.hypot(ny);
            if norm <= VERTEX_TOL {
                continue;
            }
            if nx < -1e-12 * norm || ny < -1e-12 * norm {
                continue; // axis-side edge, covered by the implicit quadrant
            }
            let d = nx * p.r1 + ny * p.r2;
            hps.push(HalfPlane::new((nx / norm).max(0.0), (ny / norm).max(0.0), d.max(0.0) / norm));
        }
        if hps.is_empty() {
            // Degenerate cloud along an axis.
            hps.push(HalfPlane::new(1.0, 0.0, xmax));
            hps.push(HalfPlane::new(0.0, 1.0, ymax));
        } else {
            // The hull may lack a vertical or horizontal cap when the extreme
            // edge is exactly axis-parallel; add the box caps, redundancy
            // removal keeps whichever bind.
            hps.push(HalfPlane::new(1.0, 0.0, xmax));
            hps.push(HalfPlane::new(0.0, 1.0, ymax));
        }
        Self::from_halfplanes(&hps)
    }

    /// Dual reconstruction from sampled support values: the intersection of
    /// the half-planes `c . R <= sigma(c)`. Contains the true region.
    pub fn from_supports(samples: &[(Direction, f64)]) -> Result<Self> {
        let hps: Vec<HalfPlane> =
            samples.iter().map(|(dir, s)| HalfPlane::new(dir.c1, dir.c2, *s)).collect();
        Self::from_halfplanes(&hps)
    }

    pub fn halfplanes(&self) -> &[HalfPlane] {
        &self.halfplanes
    }

    /// Extreme points in counterclockwise order starting at the origin,
    /// axis intercepts included, deduplicated within 1e-12.
    pub fn vertices(&self) -> &[RatePair] {
        &self.vertices
    }

    /// Support function `max { c . R : R in region }`; attained at a vertex.
    pub fn support(&self, dir: Direction) -> f64 {
        self.vertices
            .iter()
            .map(|v| dir.dot(*v))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// True iff every inequality holds within 1e-9.
    pub fn contains(&self, p: RatePair) -> bool {
        if p.r1 < -CONTAIN_TOL || p.r2 < -CONTAIN_TOL {
            return false;
        }
        self.halfplanes
            .iter()
            .all(|hp| hp.c1 * p.r1 + hp.c2 * p.r2 <= hp.d + CONTAIN_TOL)
    }

    /// Intersection of several regions (concatenated constraint sets with
    /// redundancy removal).
    pub fn intersect(regions: &[PolyRegion]) -> Result<PolyRegion> {
        if regions.is_empty() {
            return Err(Error::InvalidRegion("intersection of an empty list".into()));
        }
        let hps: Vec<HalfPlane> =
            regions.iter().flat_map(|r| r.halfplanes.iter().copied()).collect();
        Self::from_halfplanes(&hps)
    }

    /// JSON document `{"halfplanes":[{"c1","c2","d"}...],"vertices":[[r1,r2]...]}`.
    pub fn to_json(&self) -> String {
        let doc = RegionDoc {
            halfplanes: self.halfplanes.clone(),
            vertices: self.vertices.iter().map(|v| [v.r1, v.r2]).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("region serialization cannot fail")
    }

    /// Parses the JSON document and rebuilds the region from its half-planes.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RegionDoc = serde_json::from_str(text)?;
        Self::from_halfplanes(&doc.halfplanes)
    }

    /// Vertex polyline as CSV rows `r1,r2` in CCW order, 17 significant digits.
    pub fn polyline_csv(&self) -> String {
        let mut out = String::from("r1,r2\n");
        for v in &self.vertices {
            out.push_str(&format!("{:.16e},{:.16e}\n", v.r1, v.r2));
        }
        out
    }
}

/// Andrew monotone chain; returns hull vertices in CCW order.
fn convex_hull(points: &mut Vec<RatePair>) -> Vec<RatePair> {
    points.sort_by(|p, q| p.r1.partial_cmp(&q.r1).unwrap().then(p.r2.partial_cmp(&q.r2).unwrap()));
    points.dedup_by(|p, q| (p.r1 - q.r1).abs() <= VERTEX_TOL && (p.r2 - q.r2).abs() <= VERTEX_TOL);
    let n = points.len();
    if n < 3 {
        return points.clone();
    }
    let cross = |o: RatePair, a: RatePair, b: RatePair| {
        (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
    };
    let mut hull: Vec<RatePair> = Vec::with_capacity(2 * n);
    for &p in points.iter() {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-15 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in points.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-15
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Enumerates the vertex chain of the half-plane intersection inside the
/// first quadrant via the lower envelope of the boundary lines.
///
/// Constraints with `c2 > 0` become lines `y = h + s*x` with slope `s <= 0`;
/// constraints with `c2 = 0` become vertical cuts. The envelope is concave
/// and nonincreasing, so the boundary runs from `(0, E(0))` down to where it
/// meets the x-axis or the tightest vertical cut.
fn vertex_chain(hps: &[HalfPlane]) -> Result<Vec<RatePair>> {
    #[derive(Clone, Copy)]
    struct Line {
        s: f64,
        h: f64,
    }

    let mut x_cut = f64::INFINITY;
    let mut lines: Vec<Line> = Vec::new();
    for hp in hps {
        let norm = hp.c1.hypot(hp.c2);
        if hp.c2 / norm <= 1e-12 {
            x_cut = x_cut.min(hp.d / hp.c1);
        } else {
            lines.push(Line { s: -hp.c1 / hp.c2, h: hp.d / hp.c2 });
        }
    }
    if lines.is_empty() {
        return Err(Error::Unbounded("no constraint bounds R2".into()));
    }

    // Min-envelope of the lines: sort by slope descending (leftmost piece
    // first), ties keep the lowest intercept.
    lines.sort_by(|p, q| q.s.partial_cmp(&p.s).unwrap().then(p.h.partial_cmp(&q.h).unwrap()));
    struct Piece {
        s: f64,
        h: f64,
        from: f64,
    }
    let mut pieces: Vec<Piece> = Vec::with_capacity(lines.len());
    for line in lines {
        if let Some(top) = pieces.last() {
            if (top.s - line.s).abs() <= 1e-14 * (1.0 + top.s.abs() + line.s.abs()) {
                continue; // parallel and at least as high
            }
        }
        loop {
            match pieces.last() {
                None => {
                    pieces.push(Piece { s: line.s, h: line.h, from: f64::NEG_INFINITY });
                    break;
                }
                Some(top) => {
                    // New line is lower for x > xi.
                    let xi = (line.h - top.h) / (top.s - line.s);
                    if xi <= top.from {
                        pieces.pop();
                    } else {
                        pieces.push(Piece { s: line.s, h: line.h, from: xi });
                        break;
                    }
                }
            }
        }
    }

    let eval = |x: f64| -> f64 {
        let mut idx = 0;
        for (i, p) in pieces.iter().enumerate() {
            if p.from <= x {
                idx = i;
            } else {
                break;
            }
        }
        pieces[idx].h + pieces[idx].s * x
    };

    // Where the envelope drops below zero; a flat piece lying exactly on the
    // axis keeps the region going along it.
    let mut x_zero = f64::INFINITY;
    for (i, p) in pieces.iter().enumerate() {
        let start = p.from.max(0.0);
        let end = if i + 1 < pieces.len() { pieces[i + 1].from } else { f64::INFINITY };
        if end < 0.0 {
            continue;
        }
        let v_start = p.h + p.s * start;
        if v_start < 0.0 {
            x_zero = start;
            break;
        }
        if p.s < 0.0 {
            let root = -p.h / p.s;
            if root >= start && root <= end {
                x_zero = root;
                break;
            }
        }
    }

    let x_end = x_cut.min(x_zero);
    if !x_end.is_finite() {
        return Err(Error::Unbounded("no constraint bounds R1".into()));
    }

    let mut verts: Vec<RatePair> = vec![RatePair::new(0.0, 0.0)];
    if x_end > VERTEX_TOL {
        verts.push(RatePair::new(x_end, 0.0));
    }
    let top_end = eval(x_end).max(0.0);
    if top_end > VERTEX_TOL {
        verts.push(RatePair::new(x_end, top_end));
    }
    // Envelope breakpoints strictly inside (0, x_end), walked right to left.
    for p in pieces.iter().rev() {
        if p.from > VERTEX_TOL && p.from < x_end - VERTEX_TOL {
            verts.push(RatePair::new(p.from, eval(p.from)));
        }
    }
    let top0 = eval(0.0).max(0.0);
    if top0 > VERTEX_TOL {
        verts.push(RatePair::new(0.0, top0));
    }
    verts.dedup_by(|p, q| (p.r1 - q.r1).abs() <= VERTEX_TOL && (p.r2 - q.r2).abs() <= VERTEX_TOL);
    Ok(verts)
}

/// A sampled bound curve `mu -> value` along one direction family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveFamily {
    /// Directions `(mu, 1)`.
    MuOne,
    /// Directions `(1, mu)`.
    OneMu,
}

impl CurveFamily {
    pub fn direction(&self, mu: f64) -> Result<Direction> {
        match self {
            CurveFamily::MuOne => Direction::mu_one(mu),
            CurveFamily::OneMu => Direction::one_mu(mu),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundCurve {
    family: CurveFamily,
    samples: Vec<(f64, f64)>,
}

impl BoundCurve {
    /// `samples` must have strictly increasing `mu >= 1` and finite values.
    pub fn new(family: CurveFamily, samples: Vec<(f64, f64)>) -> Result<Self> {
        let mut prev = 1.0 - 1e-12;
        for &(mu, v) in &samples {
            if !(mu >= 1.0) || mu <= prev {
                return Err(Error::Domain(format!(
                    "curve mu values must be strictly increasing and >= 1, got {mu}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::Domain(format!("curve value at mu={mu} is not finite")));
            }
            prev = mu;
        }
        Ok(Self { family, samples })
    }

    pub fn family(&self) -> CurveFamily {
        self.family
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    /// Half-planes `c(mu) . R <= value` induced by the samples.
    pub fn halfplanes(&self) -> Vec<HalfPlane> {
        self.samples
            .iter()
            .map(|&(mu, v)| match self.family {
                CurveFamily::MuOne => HalfPlane::new(mu, 1.0, v),
                CurveFamily::OneMu => HalfPlane::new(1.0, mu, v),
            })
            .collect()
    }

    /// CSV with header `mu,value_bits`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("mu,value_bits\n");
        for &(mu, v) in &self.samples {
            out.push_str(&format!("{mu:.16e},{v:.16e}\n"));
        }
        out
    }
}
