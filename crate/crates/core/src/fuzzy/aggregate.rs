//! Exact max-of-clipped aggregation and centroid defuzzification.
//!
//! The aggregate is kept as a list of linear segments whose breakpoints are
//! computed analytically (clip crossings and pairwise line crossings), so
//! the centroid integral is exact up to floating point.

use super::membership::MembershipFunction;
use super::FuzzyError;

/// Areas below this are treated as "nothing fired".
pub const ZERO_AREA: f64 = 1e-12;

/// One linear piece over `[x0, x1]`; `y0`/`y1` are the one-sided limits at
/// the ends, so jumps between neighbouring segments are represented exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Segment {
    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y0 + self.y1) / 2.0
    }

    /// Integral of `x * y(x)` over the segment.
    pub fn moment(&self) -> f64 {
        let w = self.x1 - self.x0;
        w * (self.x0 * (2.0 * self.y0 + self.y1) + self.x1 * (self.y0 + 2.0 * self.y1)) / 6.0
    }
}

/// Pointwise max of membership functions clipped at their firing levels.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedOutput {
    universe: (f64, f64),
    clips: Vec<(MembershipFunction, f64)>,
    segments: Vec<Segment>,
}

impl AggregatedOutput {
    /// Builds `max_k min(level_k, mf_k(x))` over `universe`. Clips with a
    /// non-positive level contribute nothing.
    pub fn from_clips(universe: (f64, f64), clips: Vec<(MembershipFunction, f64)>) -> Self {
        let clips: Vec<_> = clips
            .into_iter()
            .filter(|(_, h)| *h > 0.0)
            .map(|(mf, h)| (mf, h.min(1.0)))
            .collect();
        let segments = envelope(universe, &clips);
        Self {
            universe,
            clips,
            segments,
        }
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    pub fn clips(&self) -> &[(MembershipFunction, f64)] {
        &self.clips
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Aggregate membership at `x`.
    pub fn eval(&self, x: f64) -> f64 {
        self.clips
            .iter()
            .map(|(mf, h)| mf.eval(x).min(*h))
            .fold(0.0, f64::max)
    }

    pub fn area(&self) -> f64 {
        self.segments.iter().map(Segment::area).sum()
    }

    /// Exact centroid `∫x·μ / ∫μ`.
    pub fn centroid(&self) -> Result<f64, FuzzyError> {
        centroid_of(&self.segments)
    }

    /// Centroid of the aggregate sampled on a uniform grid with spacing
    /// `step` and linearly interpolated between samples, the way grid-based
    /// toolkits evaluate it.
    pub fn centroid_sampled(&self, step: f64) -> Result<f64, FuzzyError> {
        let (lo, hi) = self.universe;
        if !(step > 0.0 && step.is_finite()) {
            return Err(FuzzyError::InvalidStep(step));
        }
        let n = ((hi - lo) / step).round().max(1.0) as usize;
        let xs: Vec<f64> = (0..=n).map(|i| (lo + i as f64 * step).min(hi)).collect();
        let segments: Vec<Segment> = xs
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| Segment {
                x0: w[0],
                x1: w[1],
                y0: self.eval(w[0]),
                y1: self.eval(w[1]),
            })
            .collect();
        centroid_of(&segments)
    }
}

pub(crate) fn centroid_of(segments: &[Segment]) -> Result<f64, FuzzyError> {
    let (mut area, mut moment) = (0.0, 0.0);
    for s in segments {
        area += s.area();
        moment += s.moment();
    }
    if area < ZERO_AREA {
        return Err(FuzzyError::ZeroArea);
    }
    Ok(moment / area)
}

/// A line over one base interval, as values at its two ends.
#[derive(Clone, Copy)]
struct Line {
    y0: f64,
    y1: f64,
}

impl Line {
    fn at(&self, t: f64) -> f64 {
        if t == 0.0 {
            self.y0
        } else if t == 1.0 {
            self.y1
        } else {
            self.y0 + (self.y1 - self.y0) * t
        }
    }
}

/// Parameter `t` in `(0, 1)` where two lines cross, if any.
fn crossing(p: Line, q: Line) -> Option<f64> {
    let denom = (p.y1 - p.y0) - (q.y1 - q.y0);
    if denom == 0.0 {
        return None;
    }
    let t = (q.y0 - p.y0) / denom;
    (t > 0.0 && t < 1.0).then_some(t)
}

fn envelope(universe: (f64, f64), clips: &[(MembershipFunction, f64)]) -> Vec<Segment> {
    let (lo, hi) = universe;
    if clips.is_empty() {
        return vec![Segment {
            x0: lo,
            x1: hi,
            y0: 0.0,
            y1: 0.0,
        }];
    }

    let mut xs = vec![lo, hi];
    for (mf, _) in clips {
        xs.extend(mf.corners().iter().copied().filter(|x| *x > lo && *x < hi));
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut segments = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        if x1 <= x0 {
            continue;
        }
        let mid = 0.5 * (x0 + x1);
        // Each clip is min(level, line) on this interval; the envelope only
        // bends where two of these atoms cross.
        let mut atoms: Vec<Line> = Vec::with_capacity(clips.len() * 2);
        let pieces: Vec<(Line, f64)> = clips
            .iter()
            .map(|(mf, h)| {
                let region = mf.region(mid);
                let line = Line {
                    y0: mf.eval_piece(region, x0),
                    y1: mf.eval_piece(region, x1),
                };
                atoms.push(line);
                atoms.push(Line { y0: *h, y1: *h });
                (line, *h)
            })
            .collect();

        let mut ts = vec![0.0, 1.0];
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if let Some(t) = crossing(atoms[i], atoms[j]) {
                    ts.push(t);
                }
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup();

        let value = |t: f64| {
            pieces
                .iter()
                .map(|(line, h)| line.at(t).min(*h))
                .fold(0.0, f64::max)
        };
        let x_at = |t: f64| {
            if t == 0.0 {
                x0
            } else if t == 1.0 {
                x1
            } else {
                x0 + (x1 - x0) * t
            }
        };
        for tw in ts.windows(2) {
            segments.push(Segment {
                x0: x_at(tw[0]),
                x1: x_at(tw[1]),
                y0: value(tw[0]),
                y1: value(tw[1]),
            });
        }
    }
    segments
}
