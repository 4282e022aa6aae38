//! Phase-shift operators and the orbit representations they carry.
//!
//! A phase-shift operator acts on functions of one variable by
//! (T f)(u) = exp(i p(u)) f(u - a) with a real shift a and a real
//! quadratic phase p. These operators form a group:
//!
//! ```text
//! (a, p)(b, q) = (a + b, p(u) + q(u - a))      (a, p)^-1 = (-a, -p(u + a))
//! ```
//!
//! and all phase arithmetic stays in exact rationals; nothing is
//! reduced mod 2 pi.
//!
//! Each coadjoint orbit yields a representation n -> rho(n) by
//! phase-shift operators, and each k in K a twisting operator
//! omega(k), with the intertwining law rho(k n) omega(k) = omega(k) rho(n).
//! The closed forms are
//!
//! ```text
//! generic (alpha, lambda):
//!   rho(s,x,y,t) = (x; alpha s + lambda t + lambda x y / 2
//!                       - lambda s x^2 / 2,
//!                   lambda (s x - y),  -lambda s / 2)
//!   omega(k1,k2) = (0; 0, lambda k2, -lambda k1 / 2)
//! non-generic (nu):
//!   rho(s,x,y,t) = (x; nu (y - s x), nu s, 0)
//!   omega(k1,k2) = (0; 0, nu k1, 0)
//! trivial: everything is the identity operator.
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::aut::KParams;
use crate::coadjoint::OrbitId;
use crate::lie::NPoint;
use crate::scalar::Scalar;
use crate::Error;

/// A real quadratic c0 + c1 u + c2 u^2 with exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QuadPoly {
    pub c0: Scalar,
    pub c1: Scalar,
    pub c2: Scalar,
}

impl QuadPoly {
    pub fn new(c0: impl Into<Scalar>, c1: impl Into<Scalar>, c2: impl Into<Scalar>) -> Self {
        QuadPoly {
            c0: c0.into(),
            c1: c1.into(),
            c2: c2.into(),
        }
    }

    pub fn zero() -> Self {
        QuadPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn eval(&self, u: &Scalar) -> Scalar {
        &self.c0 + &self.c1 * u + &self.c2 * &(u * u)
    }

    /// The polynomial u -> p(u - a).
    pub fn shifted(&self, a: &Scalar) -> QuadPoly {
        QuadPoly {
            c0: &self.c0 - &self.c1 * a + &self.c2 * &(a * a),
            c1: &self.c1 - &(&Scalar::from_int(2) * &self.c2) * a,
            c2: self.c2.clone(),
        }
    }

    pub fn add(&self, other: &QuadPoly) -> QuadPoly {
        QuadPoly {
            c0: &self.c0 + &other.c0,
            c1: &self.c1 + &other.c1,
            c2: &self.c2 + &other.c2,
        }
    }

    pub fn neg(&self) -> QuadPoly {
        QuadPoly {
            c0: -&self.c0,
            c1: -&self.c1,
            c2: -&self.c2,
        }
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let term = |coeff: &Scalar, power: &str| {
            let mag = coeff.abs();
            if power.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                power.to_string()
            } else {
                format!("{mag} {power}")
            }
        };
        let mut first = true;
        for (coeff, power) in [(&self.c0, ""), (&self.c1, "u"), (&self.c2, "u^2")] {
            if coeff.is_zero() {
                continue;
            }
            if first {
                if coeff.is_negative() {
                    write!(f, "-{}", term(coeff, power))?;
                } else {
                    write!(f, "{}", term(coeff, power))?;
                }
                first = false;
            } else if coeff.is_negative() {
                write!(f, " - {}", term(coeff, power))?;
            } else {
                write!(f, " + {}", term(coeff, power))?;
            }
        }
        Ok(())
    }
}

/// The operator f(u) -> exp(i phase(u)) f(u - shift).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhaseShiftOp {
    pub shift: Scalar,
    pub phase: QuadPoly,
}

impl PhaseShiftOp {
    pub fn new(shift: impl Into<Scalar>, phase: QuadPoly) -> Self {
        PhaseShiftOp {
            shift: shift.into(),
            phase,
        }
    }

    pub fn identity() -> Self {
        PhaseShiftOp::new(0, QuadPoly::zero())
    }

    pub fn translation(a: impl Into<Scalar>) -> Self {
        PhaseShiftOp::new(a, QuadPoly::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.shift.is_zero() && self.phase.is_zero()
    }

    /// Operator product; `other` acts first.
    pub fn compose(&self, other: &PhaseShiftOp) -> PhaseShiftOp {
        PhaseShiftOp {
            shift: &self.shift + &other.shift,
            phase: self.phase.add(&other.phase.shifted(&self.shift)),
        }
    }

    pub fn inverse(&self) -> PhaseShiftOp {
        let minus = -&self.shift;
        PhaseShiftOp {
            phase: self.phase.shifted(&minus).neg(),
            shift: minus,
        }
    }

    /// Largest absolute difference across shift and phase coefficients.
    pub fn max_abs_diff(&self, other: &PhaseShiftOp) -> Scalar {
        let diffs = [
            (&self.shift - &other.shift).abs(),
            (&self.phase.c0 - &other.phase.c0).abs(),
            (&self.phase.c1 - &other.phase.c1).abs(),
            (&self.phase.c2 - &other.phase.c2).abs(),
        ];
        let mut max = Scalar::zero();
        for d in diffs {
            if (&d - &max).is_positive() {
                max = d;
            }
        }
        max
    }
}

impl fmt::Display for PhaseShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "id")
        } else if self.phase.is_zero() {
            write!(f, "T_{{{}}}", self.shift)
        } else if self.shift.is_zero() {
            write!(f, "e^{{i({})}}", self.phase)
        } else {
            write!(f, "e^{{i({})}} T_{{{}}}", self.phase, self.shift)
        }
    }
}

/// Which orbit representation is in play.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RepCase {
    Generic { alpha: Scalar, lambda: Scalar },
    NonGeneric { nu: Scalar },
    Trivial,
}

impl RepCase {
    /// Requires lambda != 0.
    pub fn generic(alpha: impl Into<Scalar>, lambda: impl Into<Scalar>) -> Result<Self, Error> {
        let lambda = lambda.into();
        if lambda.is_zero() {
            return Err(Error::ZeroLambda);
        }
        Ok(RepCase::Generic {
            alpha: alpha.into(),
            lambda,
        })
    }

    pub fn non_generic(nu: impl Into<Scalar>) -> Self {
        RepCase::NonGeneric { nu: nu.into() }
    }

    pub fn trivial() -> Self {
        RepCase::Trivial
    }

    /// The representation attached to an orbit. Point orbits carry
    /// only their nu = 0 stratum data, so they land on the nu = 0
    /// non-generic case; the zero orbit is the trivial one.
    pub fn from_orbit(orbit: &OrbitId) -> Self {
        match orbit {
            OrbitId::Generic { alpha, lambda } => RepCase::Generic {
                alpha: alpha.clone(),
                lambda: lambda.clone(),
            },
            OrbitId::NonGeneric { nu, .. } => RepCase::NonGeneric { nu: nu.clone() },
            OrbitId::Zero => RepCase::Trivial,
        }
    }

    /// Short machine-friendly name used in reports.
    pub fn label(&self) -> String {
        match self {
            RepCase::Generic { alpha, lambda } => format!("generic({},{})", alpha, lambda),
            RepCase::NonGeneric { nu } => format!("nongeneric({})", nu),
            RepCase::Trivial => "trivial".to_string(),
        }
    }
}

impl fmt::Display for RepCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepCase::Generic { alpha, lambda } => write!(f, "rho_{{{},{}}}", alpha, lambda),
            RepCase::NonGeneric { nu } => write!(f, "rho_{{nu={}}}", nu),
            RepCase::Trivial => write!(f, "rho_{{triv}}"),
        }
    }
}

/// The representation operator rho(n).
pub fn rho(case: &RepCase, n: &NPoint) -> PhaseShiftOp {
    let half = Scalar::new(1, 2);
    match case {
        RepCase::Generic { alpha, lambda } => {
            let c0 = alpha * &n.s + lambda * &n.t + &half * &(lambda * &(&n.x * &n.y))
                - &half * &(lambda * &(&n.s * &(&n.x * &n.x)));
            let c1 = lambda * &(&n.s * &n.x - &n.y);
            let c2 = -&(&half * &(lambda * &n.s));
            PhaseShiftOp::new(n.x.clone(), QuadPoly { c0, c1, c2 })
        }
        RepCase::NonGeneric { nu } => {
            let c0 = nu * &(&n.y - &(&n.s * &n.x));
            let c1 = nu * &n.s;
            PhaseShiftOp::new(
                n.x.clone(),
                QuadPoly {
                    c0,
                    c1,
                    c2: Scalar::zero(),
                },
            )
        }
        RepCase::Trivial => PhaseShiftOp::identity(),
    }
}

/// The twisting operator omega(k); satisfies
/// omega(k) omega(k') = omega(k + k') with no shift part.
pub fn omega(case: &RepCase, k: &KParams) -> PhaseShiftOp {
    let half = Scalar::new(1, 2);
    match case {
        RepCase::Generic { lambda, .. } => PhaseShiftOp::new(
            0,
            QuadPoly {
                c0: Scalar::zero(),
                c1: lambda * &k.k2,
                c2: -&(&half * &(lambda * &k.k1)),
            },
        ),
        RepCase::NonGeneric { nu } => PhaseShiftOp::new(
            0,
            QuadPoly {
                c0: Scalar::zero(),
                c1: nu * &k.k1,
                c2: Scalar::zero(),
            },
        ),
        RepCase::Trivial => PhaseShiftOp::identity(),
    }
}

/// The image of n under k composed with the representation:
/// rho(k . n) where k sends (s, x, y, t) to (s, x, y + k1 x, t + k2 x).
pub fn rho_twisted(case: &RepCase, k: &KParams, n: &NPoint) -> PhaseShiftOp {
    let moved = NPoint {
        s: n.s.clone(),
        x: n.x.clone(),
        y: &n.y + &k.k1 * &n.x,
        t: &n.t + &k.k2 * &n.x,
    };
    rho(case, &moved)
}

/// Both sides of the intertwining law rho(k n) omega(k) = omega(k) rho(n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntertwineReport {
    pub lhs: PhaseShiftOp,
    pub rhs: PhaseShiftOp,
}

impl IntertwineReport {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn discrepancy(&self) -> Scalar {
        self.lhs.max_abs_diff(&self.rhs)
    }
}

pub fn intertwine_defect(case: &RepCase, k: &KParams, n: &NPoint) -> IntertwineReport {
    IntertwineReport {
        lhs: rho_twisted(case, k, n).compose(&omega(case, k)),
        rhs: omega(case, k).compose(&rho(case, n)),
    }
}
