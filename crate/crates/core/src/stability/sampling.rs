use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{futaki_of, l_functional, norm, DHData, StabilityError};
use crate::algebra::{rat, PiecewiseLinear, Rational};
use crate::variety::{Kind, SphericalData};

const GRID: i64 = 48;
const MAX_INTERIOR: usize = 6;

/// A random rational convex piecewise-linear function on `[lo, hi]`:
/// at most six interior breakpoints on a 1/48 grid of the segment and sorted
/// slopes from a bounded quarter-integer grid (non-negative when
/// `non_decreasing`).
pub fn random_convex_pl<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational, non_decreasing: bool) -> PiecewiseLinear {
    let k = rng.gen_range(0..=MAX_INTERIOR);
    let mut ticks: Vec<i64> = (0..k).map(|_| rng.gen_range(1..GRID)).collect();
    ticks.sort_unstable();
    ticks.dedup();
    let width = hi - lo;
    let mut breakpoints = vec![lo.clone()];
    breakpoints.extend(ticks.iter().map(|&j| lo + &width * rat(j, GRID)));
    breakpoints.push(hi.clone());

    let slope_min = if non_decreasing { 0 } else { -40 };
    let mut slopes: Vec<Rational> = (0..breakpoints.len() - 1).map(|_| rat(rng.gen_range(slope_min..=40), 4)).collect();
    slopes.sort();
    let mut values = vec![rat(rng.gen_range(-20..=20), 2)];
    for (w, m) in breakpoints.windows(2).zip(&slopes) {
        let next = values.last().expect("nonempty") + m * (&w[1] - &w[0]);
        values.push(next);
    }
    PiecewiseLinear::new(breakpoints, values).expect("strictly increasing by construction")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub g: PiecewiseLinear,
    pub l: Rational,
    pub norm: Rational,
}

impl Sample {
    pub fn margin(&self) -> Rational {
        &self.l / &self.norm
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginReport {
    pub kind: Kind,
    pub samples: usize,
    pub skipped: usize,
    /// Sample attaining the smallest `𝓛(g)/‖g‖`, if any sample was evaluated.
    pub argmin: Option<Sample>,
    /// Samples with `𝓛(g) ≤ 0` (and `‖g‖ > 0`).
    pub counterexamples: Vec<Sample>,
    pub identity_futaki: Rational,
}

impl MarginReport {
    pub fn evaluated(&self) -> usize {
        self.samples - self.skipped
    }

    pub fn min_margin(&self) -> Option<Rational> {
        self.argmin.as_ref().map(Sample::margin)
    }

    /// The identity function is a destabilizing direction: negative Futaki
    /// value for non-horospherical data, nonzero for horospherical data.
    pub fn identity_destabilizes(&self) -> bool {
        match self.kind {
            Kind::NonHorospherical => self.identity_futaki.is_negative(),
            Kind::Horospherical => !self.identity_futaki.is_zero(),
        }
    }

    pub fn to_json(&self) -> Value {
        let sample = |s: &Sample| json!({"g": s.g.to_string(), "L": s.l.to_string(), "norm": s.norm.to_string()});
        json!({
            "samples": self.samples,
            "evaluated": self.evaluated(),
            "skipped": self.skipped,
            "min_margin": self.min_margin().map(|m| m.to_string()),
            "argmin": self.argmin.as_ref().map(sample),
            "counterexamples": self.counterexamples.iter().map(sample).collect::<Vec<_>>(),
            "identity_futaki": self.identity_futaki.to_string(),
            "identity_destabilizes": self.identity_destabilizes(),
        })
    }
}

/// Evaluates `𝓛(g)/‖g‖` on `count` seeded random admissible test functions.
/// Functions with `‖g‖ = 0` are skipped. Generation is sequential from the
/// seed and evaluation parallel, so the report does not depend on scheduling.
pub fn sample_uniform_check(data: &SphericalData, count: usize, seed: u64) -> Result<MarginReport, StabilityError> {
    let dh = DHData::from_data(data)?;
    let kind = data.kind();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions: Vec<PiecewiseLinear> = (0..count)
        .map(|_| random_convex_pl(&mut rng, &dh.lower, &dh.upper, kind == Kind::NonHorospherical))
        .collect();
    let evaluated: Vec<Option<Sample>> = functions
        .into_par_iter()
        .map(|g| -> Result<Option<Sample>, StabilityError> {
            let n = norm(kind, &g, &dh)?;
            if n.is_zero() {
                return Ok(None);
            }
            let l = l_functional(&g, &dh)?;
            Ok(Some(Sample { g, l, norm: n }))
        })
        .collect::<Result<_, _>>()?;

    let skipped = evaluated.iter().filter(|s| s.is_none()).count();
    let mut argmin: Option<Sample> = None;
    let mut counterexamples = Vec::new();
    for s in evaluated.into_iter().flatten() {
        if !s.l.is_positive() {
            counterexamples.push(s.clone());
        }
        if argmin.as_ref().is_none_or(|b| s.margin() < b.margin()) {
            argmin = Some(s);
        }
    }
    Ok(MarginReport {
        kind,
        samples: count,
        skipped,
        argmin,
        counterexamples,
        identity_futaki: futaki_of(&dh)?,
    })
}
