//! Seeded random sampling of small rational inputs.
//!
//! Randomized identity checks draw coordinates whose numerators and
//! denominators lie in [-9, 9]; exact arithmetic keeps every derived
//! quantity representable no matter how the samples combine.

use rand::Rng;

use crate::aut::{KParams, MParams};
use crate::coadjoint::Covector;
use crate::lie::{H1Point, NPoint, NVector};
use crate::scalar::Scalar;

/// A rational with numerator in [-9, 9] and denominator in [1, 9].
pub fn rational(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// Like [`rational`] but never zero.
pub fn nonzero_rational(rng: &mut impl Rng) -> Scalar {
    loop {
        let v = rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// A strictly positive rational with numerator and denominator in [1, 9].
pub fn positive_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

pub fn nvector(rng: &mut impl Rng) -> NVector {
    NVector::new(
        rational(rng),
        rational(rng),
        rational(rng),
        rational(rng),
    )
}

pub fn npoint(rng: &mut impl Rng) -> NPoint {
    NPoint::new(
        rational(rng),
        rational(rng),
        rational(rng),
        rational(rng),
    )
}

pub fn h1point(rng: &mut impl Rng) -> H1Point {
    H1Point::new(rational(rng), rational(rng), rational(rng))
}

pub fn covector(rng: &mut impl Rng) -> Covector {
    Covector::new(
        rational(rng),
        rational(rng),
        rational(rng),
        rational(rng),
    )
}

pub fn kparams(rng: &mut impl Rng) -> KParams {
    KParams::new(rational(rng), rational(rng))
}

pub fn mparams(rng: &mut impl Rng) -> MParams {
    MParams::new(
        rational(rng),
        rational(rng),
        rational(rng),
        rational(rng),
        rational(rng),
    )
}

#[cfg(test)]
pub use strategies::*;

#[cfg(test)]
mod strategies {
    use super::*;
    use proptest::prelude::*;

    pub fn strategy_scalar() -> impl Strategy<Value = Scalar> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Scalar::new(n, d))
    }

    pub fn strategy_nvector() -> impl Strategy<Value = NVector> {
        (
            strategy_scalar(),
            strategy_scalar(),
            strategy_scalar(),
            strategy_scalar(),
        )
            .prop_map(|(s, x, y, t)| NVector { s, x, y, t })
    }

    pub fn strategy_npoint() -> impl Strategy<Value = NPoint> {
        (
            strategy_scalar(),
            strategy_scalar(),
            strategy_scalar(),
            strategy_scalar(),
        )
            .prop_map(|(s, x, y, t)| NPoint { s, x, y, t })
    }
}
