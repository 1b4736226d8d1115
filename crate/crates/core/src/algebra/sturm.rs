//! Real root counting and isolation with exact Sturm sequences.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::polynomial::Polynomial;
use super::rational::{midpoint, sign, to_decimal_rounded, Rational};
use super::AlgebraError;

/// An open interval `(low, high)` known to contain exactly one real root
/// of the polynomial it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    low: Rational,
    high: Rational,
}

impl IsolatingInterval {
    pub fn new(low: Rational, high: Rational) -> Result<Self, AlgebraError> {
        if low >= high {
            return Err(AlgebraError::InvalidInterval { low, high });
        }
        Ok(Self { low, high })
    }

    pub fn low(&self) -> &Rational {
        &self.low
    }

    pub fn high(&self) -> &Rational {
        &self.high
    }

    pub fn width(&self) -> Rational {
        &self.high - &self.low
    }
}

/// A real root located either exactly or inside an isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Exact(Rational),
    Isolated(IsolatingInterval),
}

/// A root bracketed to a requested precision. `low == high` when the root
/// was hit exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedRoot {
    pub low: Rational,
    pub high: Rational,
    pub approx: Rational,
}

impl RefinedRoot {
    pub fn exact(root: Rational) -> Self {
        Self { low: root.clone(), high: root.clone(), approx: root }
    }

    pub fn is_exact(&self) -> bool {
        self.low == self.high
    }

    /// `approx` rounded to `digits` fractional digits.
    pub fn decimal(&self, digits: usize) -> String {
        to_decimal_rounded(&self.approx, digits)
    }

    /// `{"bracket": ["p/q", "p/q"], "approx": "<decimal>"}`.
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "bracket": [self.low.to_string(), self.high.to_string()],
            "approx": self.decimal(digits),
        })
    }
}

/// Sturm sequence of a nonzero polynomial, built on its square-free part so
/// that the sign-variation difference counts distinct roots.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Polynomial>,
}

impl SturmSequence {
    pub fn new(p: &Polynomial) -> Result<Self, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let sf = p.square_free_part();
        let mut chain = vec![sf.clone(), sf.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            chain.push(-r);
        }
        chain.pop();
        Ok(Self { chain })
    }

    pub fn square_free(&self) -> &Polynomial {
        &self.chain[0]
    }

    /// Sign changes of the chain at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let s = sign(&p.evaluate(x));
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }

    /// Distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count(a, b);
        if self.square_free().evaluate(b).is_zero() {
            n - 1
        } else {
            n
        }
    }
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn sturm_count(p: &Polynomial, a: &Rational, b: &Rational) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if a >= b {
        return Err(AlgebraError::InvalidInterval { low: a.clone(), high: b.clone() });
    }
    Ok(SturmSequence::new(p)?.count(a, b))
}

/// True iff `p(t) > 0` on the whole open interval `(a, b)`. A root of even
/// multiplicity inside the interval makes the answer false.
pub fn is_positive_on(p: &Polynomial, a: &Rational, b: &Rational) -> Result<bool, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if a >= b {
        return Err(AlgebraError::InvalidInterval { low: a.clone(), high: b.clone() });
    }
    let sturm = SturmSequence::new(p)?;
    Ok(sturm.count_open(a, b) == 0 && p.evaluate(&midpoint(a, b)).is_positive())
}

/// Isolates every distinct real root of `p` in the open interval `(a, b)`,
/// in increasing order.
pub fn isolate_roots(p: &Polynomial, a: &Rational, b: &Rational) -> Result<Vec<RootLocation>, AlgebraError> {
    if a >= b {
        return Err(AlgebraError::InvalidInterval { low: a.clone(), high: b.clone() });
    }
    let sturm = SturmSequence::new(p)?;
    let mut roots = Vec::new();
    isolate_into(&sturm, a.clone(), b.clone(), sturm.count_open(a, b), &mut roots);
    Ok(roots)
}

fn isolate_into(sturm: &SturmSequence, lo: Rational, hi: Rational, n: usize, out: &mut Vec<RootLocation>) {
    match n {
        0 => {}
        1 => out.push(RootLocation::Isolated(IsolatingInterval { low: lo, high: hi })),
        _ => {
            let mid = midpoint(&lo, &hi);
            let left = sturm.count_open(&lo, &mid);
            let right = sturm.count_open(&mid, &hi);
            isolate_into(sturm, lo, mid.clone(), left, out);
            if sturm.square_free().evaluate(&mid).is_zero() {
                out.push(RootLocation::Exact(mid.clone()));
            }
            isolate_into(sturm, mid, hi, right, out);
        }
    }
}

/// Bisects `bracket` on sign changes of `p` until the root is known to within
/// `precision`; returns the final bracket and its midpoint.
pub fn refine_bracket(
    p: &Polynomial,
    bracket: &IsolatingInterval,
    precision: &Rational,
) -> Result<RefinedRoot, AlgebraError> {
    if !precision.is_positive() {
        return Err(AlgebraError::NonPositivePrecision(precision.clone()));
    }
    let (mut lo, mut hi) = (bracket.low.clone(), bracket.high.clone());
    let s_lo = sign(&p.evaluate(&lo));
    let s_hi = sign(&p.evaluate(&hi));
    if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
        return Err(AlgebraError::InvalidBracket { low: lo, high: hi });
    }
    while &hi - &lo >= *precision {
        let mid = midpoint(&lo, &hi);
        let s = sign(&p.evaluate(&mid));
        if s == 0 {
            return Ok(RefinedRoot::exact(mid));
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let approx = midpoint(&lo, &hi);
    Ok(RefinedRoot { low: lo, high: hi, approx })
}

/// A rational within `precision` of the unique root in `bracket`.
pub fn refine_root(p: &Polynomial, bracket: &IsolatingInterval, precision: &Rational) -> Result<Rational, AlgebraError> {
    refine_bracket(p, bracket, precision).map(|r| r.approx)
}

/// Refines an isolated or exact root location of the square-free part `sf`.
pub fn refine_location(sf: &Polynomial, loc: &RootLocation, precision: &Rational) -> Result<RefinedRoot, AlgebraError> {
    match loc {
        RootLocation::Exact(r) => Ok(RefinedRoot::exact(r.clone())),
        RootLocation::Isolated(iv) => {
            // Endpoints of an isolating interval can themselves be roots of sf
            // lying outside the open interval; shrink until they are not.
            let mut iv = iv.clone();
            let sturm = SturmSequence::new(sf)?;
            while sf.evaluate(&iv.low).is_zero() || sf.evaluate(&iv.high).is_zero() {
                let mid = midpoint(&iv.low, &iv.high);
                if sf.evaluate(&mid).is_zero() {
                    return Ok(RefinedRoot::exact(mid));
                }
                if sturm.count_open(&iv.low, &mid) == 1 {
                    iv.high = mid;
                } else {
                    iv.low = mid;
                }
            }
            refine_bracket(sf, &iv, precision)
        }
    }
}

/// Distinct roots of a nonzero polynomial in an open interval, refined to a
/// precision, with the constant sign of the polynomial on each of the
/// `roots.len() + 1` open pieces between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPartition {
    pub roots: Vec<RefinedRoot>,
    pub signs: Vec<i8>,
}

pub fn sign_partition(
    p: &Polynomial,
    a: &Rational,
    b: &Rational,
    precision: &Rational,
) -> Result<SignPartition, AlgebraError> {
    let sf = p.square_free_part();
    let roots = isolate_roots(p, a, b)?
        .iter()
        .map(|loc| refine_location(&sf, loc, precision))
        .collect::<Result<Vec<_>, _>>()?;
    let mut signs = Vec::with_capacity(roots.len() + 1);
    for i in 0..=roots.len() {
        let left = if i == 0 { a } else { &roots[i - 1].high };
        let right = if i == roots.len() { b } else { &roots[i].low };
        signs.push(sign(&p.evaluate(&midpoint(left, right))));
    }
    Ok(SignPartition { roots, signs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn poly(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn g2_octic() -> Polynomial {
        poly(&[5103, 0, -9072, 1260, 3123, -240, -348, 20, 11])
    }

    fn x1_tilde_octic() -> Polynomial {
        poly(&[2646, 0, -5292, 1764, 2135, -378, -266, 42, 9])
    }

    #[test]
    fn counts() {
        let (zero, one) = (int(0), int(1));
        assert_eq!(sturm_count(&x1_tilde_octic(), &zero, &one).unwrap(), 0);
        assert_eq!(sturm_count(&g2_octic(), &zero, &one).unwrap(), 1);
        assert_eq!(sturm_count(&poly(&[-2, 0, 1]), &zero, &one).unwrap(), 0);
        assert_eq!(sturm_count(&poly(&[-2, 0, 1]), &int(-2), &int(2)).unwrap(), 2);
        // (a, b] is half-open
        assert_eq!(sturm_count(&poly(&[-1, 1]), &zero, &one).unwrap(), 1);
        assert_eq!(sturm_count(&poly(&[-1, 1]), &one, &int(2)).unwrap(), 0);
        assert!(matches!(sturm_count(&Polynomial::zero(), &zero, &one), Err(AlgebraError::ZeroPolynomial)));
    }

    #[test]
    fn repeated_roots_count_once() {
        let p = poly(&[-1, 2]).pow(3) * poly(&[-3, 4]);
        assert_eq!(sturm_count(&p, &int(0), &int(1)).unwrap(), 2);
    }

    #[test]
    fn positivity() {
        let (zero, one) = (int(0), int(1));
        assert!(is_positive_on(&x1_tilde_octic(), &zero, &one).unwrap());
        assert!(!is_positive_on(&g2_octic(), &zero, &one).unwrap());
        assert!(is_positive_on(&Polynomial::one(), &zero, &one).unwrap());
        // tangency at 1/2 is not positivity
        let touching = poly(&[-1, 2]).pow(2);
        assert!(!is_positive_on(&touching, &zero, &one).unwrap());
        // roots exactly at the endpoints are allowed
        assert!(is_positive_on(&poly(&[0, 1, -1]), &zero, &one).unwrap());
        assert!(!is_positive_on(&-Polynomial::one(), &zero, &one).unwrap());
    }

    #[test]
    fn isolation_in_order() {
        // roots -1, 0, 1/2 (double), 3
        let p = poly(&[1, 1]) * poly(&[0, 1]) * poly(&[-1, 2]).pow(2) * poly(&[-3, 1]);
        let roots = isolate_roots(&p, &int(-2), &int(4)).unwrap();
        assert_eq!(roots.len(), 4);
        let sf = p.square_free_part();
        let refined: Vec<_> = roots.iter().map(|r| refine_location(&sf, r, &rat(1, 1000)).unwrap()).collect();
        let expected = [int(-1), int(0), rat(1, 2), int(3)];
        for (r, e) in refined.iter().zip(&expected) {
            assert!((&r.approx - e).abs() < rat(1, 1000), "{} vs {}", r.approx, e);
        }
        for w in refined.windows(2) {
            assert!(w[0].approx < w[1].approx);
        }
    }

    #[test]
    fn refine_examples() {
        let eps = rat(1, 1_000_000);
        let half = refine_root(&poly(&[-1, 2]), &IsolatingInterval::new(int(0), int(1)).unwrap(), &eps).unwrap();
        assert_eq!(half, rat(1, 2));
        let sqrt2 = refine_root(&poly(&[-2, 0, 1]), &IsolatingInterval::new(int(1), int(2)).unwrap(), &eps).unwrap();
        // |x - sqrt 2| < eps  <=>  (x - eps)^2 < 2 < (x + eps)^2 for x > eps
        assert!((&sqrt2 - &eps) * (&sqrt2 - &eps) < int(2));
        assert!((&sqrt2 + &eps) * (&sqrt2 + &eps) > int(2));
        assert!((crate::algebra::rational::to_f64(&sqrt2) - 2f64.sqrt()).abs() < 1e-6);
    }

    #[test]
    fn g2_threshold_root() {
        let bracket = IsolatingInterval::new(rat(1, 2), int(1)).unwrap();
        let s0 = refine_root(&g2_octic(), &bracket, &rat(1, 100_000)).unwrap();
        assert!((&s0 - rat(97202, 100_000)).abs() < rat(1, 100_000), "{s0}");
    }

    #[test]
    fn partition_signs() {
        // (t − 1/3)(t − 2/3)^2 on (0, 1): −, +, +
        let p = poly(&[-1, 3]) * poly(&[-2, 3]).pow(2);
        let part = sign_partition(&p, &int(0), &int(1), &rat(1, 1 << 20)).unwrap();
        assert_eq!(part.roots.len(), 2);
        assert_eq!(part.signs, vec![-1, 1, 1]);
        for (r, e) in part.roots.iter().zip([rat(1, 3), rat(2, 3)]) {
            assert!(r.low <= e && e <= r.high);
        }
    }

    #[test]
    fn refine_errors() {
        let p = poly(&[-2, 0, 1]);
        let no_change = IsolatingInterval::new(int(2), int(3)).unwrap();
        assert!(matches!(refine_root(&p, &no_change, &rat(1, 10)), Err(AlgebraError::InvalidBracket { .. })));
        let ok = IsolatingInterval::new(int(1), int(2)).unwrap();
        assert!(matches!(refine_root(&p, &ok, &int(0)), Err(AlgebraError::NonPositivePrecision(_))));
        assert!(IsolatingInterval::new(int(1), int(1)).is_err());
    }
}
