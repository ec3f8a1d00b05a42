//! Standard-form channel parameters, validation, and the class taxonomy.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// The rate function `0.5 * log2(1 + x)` in bits.
///
/// Errors on negative or non-finite input.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma argument must be finite, got {x}")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("gamma argument must be nonnegative, got {x}")));
    }
    Ok(gam(x))
}

/// Unchecked `0.5 * log2(1 + x)` for internal use on arguments that are
/// nonnegative by construction.
#[inline]
pub(crate) fn gam(x: f64) -> f64 {
    debug_assert!(x >= 0.0, "gam argument must be nonnegative, got {x}");
    0.5 * (1.0 + x).log2()
}

/// Powers and cross gains of a standard-form two-user Gaussian IC.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    p1: f64,
    p2: f64,
    a: f64,
    b: f64,
}

impl ChannelParams {
    /// Validates and builds the parameter tuple. Every field must be finite
    /// and nonnegative; the error names the first offending field.
    pub fn new(p1: f64, p2: f64, a: f64, b: f64) -> Result<Self> {
        for (name, v) in [("p1", p1), ("p2", p2), ("a", a), ("b", b)] {
            if !v.is_finite() {
                return Err(Error::InvalidParam {
                    name: match name {
                        "p1" => "p1",
                        "p2" => "p2",
                        "a" => "a",
                        _ => "b",
                    },
                    reason: format!("must be finite, got {v}"),
                });
            }
            if v < 0.0 {
                return Err(Error::InvalidParam {
                    name: match name {
                        "p1" => "p1",
                        "p2" => "p2",
                        "a" => "a",
                        _ => "b",
                    },
                    reason: format!("must be nonnegative, got {v}"),
                });
            }
        }
        Ok(Self { p1, p2, a, b })
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }
    pub fn p2(&self) -> f64 {
        self.p2
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }

    /// The same channel with the two users' roles exchanged:
    /// `(P1, P2, a, b) -> (P2, P1, b, a)`.
    pub fn swapped(&self) -> Self {
        Self { p1: self.p2, p2: self.p1, a: self.b, b: self.a }
    }

    pub fn classify(&self) -> ChannelClass {
        classify(self)
    }

    pub fn is_weak(&self) -> bool {
        self.a > 0.0 && self.a < 1.0 && self.b > 0.0 && self.b < 1.0
    }

    pub fn is_strong(&self) -> bool {
        self.a >= 1.0 && self.b >= 1.0
    }

    pub fn is_one_sided(&self) -> bool {
        self.a == 0.0 || self.b == 0.0
    }

    /// Mixed in the orientation used throughout the crate: `0 < a < 1 <= b`.
    pub fn is_mixed_standard(&self) -> bool {
        self.a > 0.0 && self.a < 1.0 && self.b >= 1.0
    }

    /// Mixed in either orientation.
    pub fn is_mixed(&self) -> bool {
        self.is_mixed_standard() || self.swapped().is_mixed_standard()
    }
}

/// One taxonomy label. A channel may carry several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassLabel {
    Weak,
    Strong,
    Mixed,
    OneSided,
    Degraded,
    Symmetric,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLabel::Weak => "weak",
            ClassLabel::Strong => "strong",
            ClassLabel::Mixed => "mixed",
            ClassLabel::OneSided => "one_sided",
            ClassLabel::Degraded => "degraded",
            ClassLabel::Symmetric => "symmetric",
        };
        f.write_str(s)
    }
}

/// The set of labels that apply to a channel. Never empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelClass {
    labels: BTreeSet<ClassLabel>,
}

impl ChannelClass {
    pub fn contains(&self, label: ClassLabel) -> bool {
        self.labels.contains(&label)
    }

    pub fn labels(&self) -> impl Iterator<Item = ClassLabel> + '_ {
        self.labels.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Labels a channel by the class predicates on `(a, b)` (and the powers for
/// symmetry). Boundaries are closed comparisons on the raw inputs; several
/// labels may co-occur (a degraded channel is also weak, mixed, or strong
/// depending on its gains).
///
/// Interference-free channels (`a = b = 0`) are reported as one-sided only;
/// the symmetric label is reserved for channels with actual interference.
pub fn classify(params: &ChannelParams) -> ChannelClass {
    let mut labels = BTreeSet::new();
    let (a, b) = (params.a, params.b);
    if a == 0.0 || b == 0.0 {
        labels.insert(ClassLabel::OneSided);
    }
    if a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0 {
        labels.insert(ClassLabel::Weak);
    }
    if a >= 1.0 && b >= 1.0 {
        labels.insert(ClassLabel::Strong);
    }
    if (a > 0.0 && a < 1.0 && b >= 1.0) || (b > 0.0 && b < 1.0 && a >= 1.0) {
        labels.insert(ClassLabel::Mixed);
    }
    if a * b == 1.0 {
        labels.insert(ClassLabel::Degraded);
    }
    if a == b && a > 0.0 && params.p1 == params.p2 {
        labels.insert(ClassLabel::Symmetric);
    }
    ChannelClass { labels }
}
