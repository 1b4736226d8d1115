use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{DHData, StabilityError};
use crate::algebra::{rational::digits_for, sign_partition, Rational, RefinedRoot};

/// The segment `[t₋, t₊]` on which `aP − Q` is non-negative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignLocus {
    pub t_minus: RefinedRoot,
    pub t_plus: RefinedRoot,
    /// Sign changes of `aP − Q` inside the open segment.
    pub sign_changes: usize,
}

impl SignLocus {
    pub fn to_json(&self, precision: &Rational) -> Value {
        let digits = digits_for(precision);
        json!({
            "t_minus": self.t_minus.to_json(digits),
            "t_plus": self.t_plus.to_json(digits),
            "sign_changes": self.sign_changes,
        })
    }
}

/// Locates the non-negative locus of `aP − Q` on `[s₋, s₊]` and checks that
/// it is a single segment.
///
/// The sign of `aP − Q` is that of `a − Σ⟨α,ϖ⟩/⟨α,χ+tσ⟩`, which tends to
/// `−∞` at an endpoint where `P` vanishes; such an endpoint is never part of
/// the locus even when `aP − Q` itself vanishes there.
pub fn nonneg_locus(dh: &DHData, precision: &Rational) -> Result<SignLocus, StabilityError> {
    let (lo, hi) = (&dh.lower, &dh.upper);
    let f = dh.weight();
    if f.is_zero() {
        return Ok(SignLocus {
            t_minus: RefinedRoot::exact(lo.clone()),
            t_plus: RefinedRoot::exact(hi.clone()),
            sign_changes: 0,
        });
    }
    let part = sign_partition(&f, lo, hi, precision)?;
    let endpoint_in = |t: &Rational| !dh.p.evaluate(t).is_zero() && !f.evaluate(t).is_negative();

    // Elements in order: [lo] I0 r1 I1 ... rk Ik [hi]; a root is a zero of f
    // and so always belongs to the closed non-negative set.
    #[derive(Clone)]
    enum Elem {
        Point(RefinedRoot),
        Piece(usize),
    }
    let mut seq = vec![(Elem::Point(RefinedRoot::exact(lo.clone())), endpoint_in(lo))];
    for (i, s) in part.signs.iter().enumerate() {
        if i > 0 {
            seq.push((Elem::Point(part.roots[i - 1].clone()), true));
        }
        seq.push((Elem::Piece(i), *s > 0));
    }
    seq.push((Elem::Point(RefinedRoot::exact(hi.clone())), endpoint_in(hi)));

    let flagged: Vec<usize> = seq.iter().enumerate().filter(|(_, (_, on))| *on).map(|(i, _)| i).collect();
    let (first, last) = match (flagged.first(), flagged.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(StabilityError::EmptyLocus),
    };
    if last - first + 1 != flagged.len() {
        return Err(StabilityError::DisconnectedLocus);
    }
    let left_end = |i: usize| -> RefinedRoot {
        match &seq[i].0 {
            Elem::Point(r) => r.clone(),
            Elem::Piece(0) => RefinedRoot::exact(lo.clone()),
            Elem::Piece(k) => part.roots[k - 1].clone(),
        }
    };
    let right_end = |i: usize| -> RefinedRoot {
        match &seq[i].0 {
            Elem::Point(r) => r.clone(),
            Elem::Piece(k) if *k == part.roots.len() => RefinedRoot::exact(hi.clone()),
            Elem::Piece(k) => part.roots[*k].clone(),
        }
    };
    let sign_changes = part.signs.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(SignLocus { t_minus: left_end(first), t_plus: right_end(last), sign_changes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, Polynomial};

    #[test]
    fn torus_locus_is_whole_segment() {
        let dh = DHData::new(Polynomial::one(), Polynomial::zero(), int(0), int(1)).unwrap();
        let locus = nonneg_locus(&dh, &rat(1, 1000)).unwrap();
        assert_eq!(locus.t_minus, RefinedRoot::exact(int(0)));
        assert_eq!(locus.t_plus, RefinedRoot::exact(int(1)));
    }

    #[test]
    fn negative_everywhere_is_empty() {
        // not normalized on purpose: aP − Q = −4
        let dh = DHData { p: Polynomial::one(), q: Polynomial::constant(int(5)), a: int(1), lower: int(0), upper: int(1) };
        assert!(matches!(nonneg_locus(&dh, &rat(1, 100)), Err(StabilityError::EmptyLocus)));
    }

    #[test]
    fn two_bumps_are_disconnected() {
        // aP − Q = (t − 1/4)(t − 1/2)(t − 3/4) on [0,1]: positive on (1/4,1/2) and (3/4,1]
        let f = Polynomial::from_ints(&[-3, 22, -48, 32]);
        let dh = DHData { p: Polynomial::one(), q: -&f, a: int(0), lower: int(0), upper: int(1) };
        assert!(matches!(nonneg_locus(&dh, &rat(1, 100)), Err(StabilityError::DisconnectedLocus)));
    }
}
