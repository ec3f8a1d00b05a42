//! Rate-region machinery for the two-user Gaussian interference channel in
//! standard form: direct gains one, unit noise, cross gains `a` and `b`,
//! transmit powers `P1` and `P2`.
//!
//! The crate provides
//!
//! * channel parameterization and the weak / strong / mixed / one-sided /
//!   degraded taxonomy ([`channel`]),
//! * the closed-form solution of the trace-constrained weighted
//!   entropy-difference maximization used by the converse arguments
//!   ([`extremal`]),
//! * convex 2-D rate-region geometry: half-plane regions, support functions,
//!   vertex enumeration, dual reconstruction ([`geometry`]),
//! * Gaussian Han-Kobayashi inner bounds, including the three-band
//!   time/frequency-division enlargement ([`hk`]),
//! * outer bounds: the strong-interference capacity region, Kramer, ETW,
//!   Sato, and the admissible-channel bounds for weak and mixed channels
//!   ([`outer`]),
//! * exact sum capacities where known ([`sumcap`]),
//! * a small deterministic multi-start derivative-free optimizer shared by
//!   the bound evaluations ([`optim`]).
//!
//! All rates and bounds are in bits (logarithms base 2).

pub mod channel;
pub mod error;
pub mod extremal;
pub mod geometry;
pub mod hk;
pub mod optim;
pub mod outer;
pub mod sumcap;

pub use channel::{classify, gamma, ChannelClass, ChannelParams, ClassLabel};
pub use error::{Error, Result};
pub use geometry::{BoundCurve, CurveFamily, Direction, HalfPlane, PolyRegion, RatePair};
