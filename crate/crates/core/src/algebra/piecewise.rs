use std::fmt;

use num_traits::Zero;

use super::polynomial::Polynomial;
use super::rational::{parse_rational_lenient, Rational};
use super::AlgebraError;

/// Continuous piecewise-linear function given by its values at a strictly
/// increasing list of breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl PiecewiseLinear {
    pub fn new(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self, AlgebraError> {
        if breakpoints.len() < 2 {
            return Err(AlgebraError::InvalidPiecewise("need at least two breakpoints".into()));
        }
        if breakpoints.len() != values.len() {
            return Err(AlgebraError::InvalidPiecewise(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::InvalidPiecewise("breakpoints must be strictly increasing".into()));
        }
        Ok(Self { breakpoints, values })
    }

    pub fn constant(low: Rational, high: Rational, c: Rational) -> Result<Self, AlgebraError> {
        Self::new(vec![low, high], vec![c.clone(), c])
    }

    /// `g(t) = t` on `[low, high]`.
    pub fn identity(low: Rational, high: Rational) -> Result<Self, AlgebraError> {
        Self::new(vec![low.clone(), high.clone()], vec![low, high])
    }

    /// Parses `"b0,b1,...:v0,v1,..."`.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let (bps, vals) = text
            .split_once(':')
            .ok_or_else(|| AlgebraError::InvalidPiecewise(format!("expected BREAKPOINTS:VALUES, got {text:?}")))?;
        let list = |s: &str| -> Result<Vec<Rational>, AlgebraError> {
            s.split(',').map(parse_rational_lenient).collect()
        };
        Self::new(list(bps)?, list(vals)?)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (&self.breakpoints[0], self.breakpoints.last().expect("at least two"))
    }

    pub fn covers(&self, a: &Rational, b: &Rational) -> bool {
        let (lo, hi) = self.domain();
        lo <= a && b <= hi
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.breakpoints
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| (&y[1] - &y[0]) / (&x[1] - &x[0]))
            .collect()
    }

    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    pub fn is_affine(&self) -> bool {
        let s = self.slopes();
        s.iter().all(|m| *m == s[0])
    }

    /// Minimum value; attained at a breakpoint.
    pub fn min_value(&self) -> Rational {
        self.values.iter().min().expect("nonempty").clone()
    }

    pub fn evaluate(&self, x: &Rational) -> Result<Rational, AlgebraError> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return Err(AlgebraError::OutsideDomain { x: x.clone(), low: lo.clone(), high: hi.clone() });
        }
        let i = self.breakpoints.partition_point(|b| b <= x).clamp(1, self.breakpoints.len() - 1);
        Ok(self.piece(i - 1).evaluate(x))
    }

    /// The affine polynomial agreeing with `g` on segment `i`.
    fn piece(&self, i: usize) -> Polynomial {
        let (x0, x1) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
        let (y0, y1) = (&self.values[i], &self.values[i + 1]);
        let slope = (y1 - y0) / (x1 - x0);
        Polynomial::linear(y0 - &slope * x0, slope)
    }

    /// `g + c` for a constant `c`.
    pub fn add_constant(&self, c: &Rational) -> Self {
        Self { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| v + c).collect() }
    }

    /// `g + c t`.
    pub fn add_linear(&self, c: &Rational) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            values: self.breakpoints.iter().zip(&self.values).map(|(b, v)| v + c * b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }
}

impl fmt::Display for PiecewiseLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{}:{}", join(&self.breakpoints), join(&self.values))
    }
}

/// Exact `∫_a^b g(t) p(t) dt`, one polynomial integral per linear piece of `g`.
pub fn integrate_pl_times_poly(
    g: &PiecewiseLinear,
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
) -> Result<Rational, AlgebraError> {
    if a > b {
        return Err(AlgebraError::InvalidInterval { low: a.clone(), high: b.clone() });
    }
    if !g.covers(a, b) {
        let (lo, hi) = g.domain();
        return Err(AlgebraError::DomainMismatch {
            low: a.clone(),
            high: b.clone(),
            domain_low: lo.clone(),
            domain_high: hi.clone(),
        });
    }
    let mut total = Rational::zero();
    for i in 0..g.breakpoints.len() - 1 {
        let lo = (&g.breakpoints[i]).max(a);
        let hi = (&g.breakpoints[i + 1]).min(b);
        if lo < hi {
            total += (&g.piece(i) * p).definite_integral(lo, hi)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn rejects_bad_shapes() {
        assert!(PiecewiseLinear::new(vec![int(0)], vec![int(0)]).is_err());
        assert!(PiecewiseLinear::new(vec![int(0), int(0)], vec![int(0), int(1)]).is_err());
        assert!(PiecewiseLinear::new(vec![int(0), int(1)], vec![int(0)]).is_err());
    }

    #[test]
    fn evaluation_and_shape() {
        let g = PiecewiseLinear::parse("0,1/2,1:0,0,1/2").unwrap();
        assert_eq!(g.evaluate(&rat(3, 4)).unwrap(), rat(1, 4));
        assert_eq!(g.evaluate(&int(1)).unwrap(), rat(1, 2));
        assert_eq!(g.evaluate(&int(0)).unwrap(), int(0));
        assert!(g.evaluate(&int(2)).is_err());
        assert!(g.is_convex() && g.is_non_decreasing() && !g.is_affine());
        let concave = PiecewiseLinear::parse("0,1,2:0,1,1").unwrap();
        assert!(!concave.is_convex());
        assert_eq!(g.to_string(), "0,1/2,1:0,0,1/2");
    }

    #[test]
    fn integration_examples() {
        let one = Polynomial::one();
        let id = PiecewiseLinear::identity(int(0), int(1)).unwrap();
        assert_eq!(integrate_pl_times_poly(&id, &one, &int(0), &int(1)).unwrap(), rat(1, 2));
        let kink = PiecewiseLinear::parse("0,1/2,1:0,0,1/2").unwrap();
        assert_eq!(integrate_pl_times_poly(&kink, &one, &int(0), &int(1)).unwrap(), rat(1, 8));
        // Constant g reduces to a plain integral.
        let p = Polynomial::from_ints(&[0, 9, 0, -10, 0, 1]).scale(&rat(288, 5));
        let c = PiecewiseLinear::constant(int(0), rat(1, 2), int(1)).unwrap();
        assert_eq!(
            integrate_pl_times_poly(&c, &p, &int(0), &rat(1, 2)).unwrap(),
            p.definite_integral(&int(0), &rat(1, 2)).unwrap()
        );
    }

    #[test]
    fn integration_needs_full_domain() {
        let g = PiecewiseLinear::identity(int(0), int(1)).unwrap();
        let err = integrate_pl_times_poly(&g, &Polynomial::one(), &int(0), &int(2)).unwrap_err();
        assert!(matches!(err, AlgebraError::DomainMismatch { .. }));
    }
}
