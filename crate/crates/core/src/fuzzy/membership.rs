use std::fmt;

use serde::{Deserialize, Serialize};

use super::FuzzyError;

/// Piecewise-linear membership function.
///
/// Zero-width ramps (`a == b`, `c == d`) are vertical edges; the plateau value
/// is taken at the shared point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum MembershipFunction {
    Trapezoid { a: f64, b: f64, c: f64, d: f64 },
    Triangle { a: f64, b: f64, c: f64 },
}

/// Which linear piece of a membership function covers an open interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Region {
    Outside,
    Rise,
    Plateau,
    Fall,
}

impl MembershipFunction {
    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self, FuzzyError> {
        let mf = MembershipFunction::Trapezoid { a, b, c, d };
        mf.check()?;
        Ok(mf)
    }

    pub fn triangle(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        let mf = MembershipFunction::Triangle { a, b, c };
        mf.check()?;
        Ok(mf)
    }

    pub(crate) fn check(&self) -> Result<(), FuzzyError> {
        let p = self.corners();
        let ordered = p.windows(2).all(|w| w[0] <= w[1]);
        if p.iter().all(|x| x.is_finite()) && ordered {
            Ok(())
        } else {
            Err(FuzzyError::InvalidShape(self.to_string()))
        }
    }

    /// `[a, b, c, d]`; a triangle reports its peak twice.
    pub fn corners(&self) -> [f64; 4] {
        match *self {
            MembershipFunction::Trapezoid { a, b, c, d } => [a, b, c, d],
            MembershipFunction::Triangle { a, b, c } => [a, b, b, c],
        }
    }

    /// Closed support `[a, d]`.
    pub fn support(&self) -> (f64, f64) {
        let p = self.corners();
        (p[0], p[3])
    }

    /// Degree of membership of `x`, in `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.corners();
        if x < a || x > d {
            0.0
        } else if x >= b && x <= c {
            1.0
        } else if x < b {
            (x - a) / (b - a)
        } else {
            (d - x) / (d - c)
        }
    }

    pub(crate) fn region(&self, x: f64) -> Region {
        let [a, b, c, d] = self.corners();
        if x < a || x > d {
            Region::Outside
        } else if x < b {
            Region::Rise
        } else if x <= c {
            Region::Plateau
        } else {
            Region::Fall
        }
    }

    /// Value of the linear piece `region` at `x`, without clamping. Used for
    /// one-sided limits at vertical edges.
    pub(crate) fn eval_piece(&self, region: Region, x: f64) -> f64 {
        let [a, b, c, d] = self.corners();
        match region {
            Region::Outside => 0.0,
            Region::Plateau => 1.0,
            Region::Rise => (x - a) / (b - a),
            Region::Fall => (d - x) / (d - c),
        }
    }

    /// Image under `x -> alpha * x + beta` with `alpha > 0`.
    pub fn affine(&self, alpha: f64, beta: f64) -> Self {
        let t = |x: f64| alpha * x + beta;
        match *self {
            MembershipFunction::Trapezoid { a, b, c, d } => MembershipFunction::Trapezoid {
                a: t(a),
                b: t(b),
                c: t(c),
                d: t(d),
            },
            MembershipFunction::Triangle { a, b, c } => MembershipFunction::Triangle {
                a: t(a),
                b: t(b),
                c: t(c),
            },
        }
    }

    /// Reflection about the midpoint of `[lo, hi]`.
    pub fn mirror(&self, lo: f64, hi: f64) -> Self {
        let m = |x: f64| lo + hi - x;
        match *self {
            MembershipFunction::Trapezoid { a, b, c, d } => MembershipFunction::Trapezoid {
                a: m(d),
                b: m(c),
                c: m(b),
                d: m(a),
            },
            MembershipFunction::Triangle { a, b, c } => MembershipFunction::Triangle {
                a: m(c),
                b: m(b),
                c: m(a),
            },
        }
    }
}

impl fmt::Display for MembershipFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipFunction::Trapezoid { a, b, c, d } => {
                write!(f, "Trapezoid({a}, {b}, {c}, {d})")
            }
            MembershipFunction::Triangle { a, b, c } => write!(f, "Triangle({a}, {b}, {c})"),
        }
    }
}
