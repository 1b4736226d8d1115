//! Root systems of products of simple factors, in simple-root coordinates.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("unsupported Cartan type {0:?} (supported: A, B, C, D, G2, F4, T)")]
    UnsupportedType(String),
    #[error("invalid rank {rank} for type {cartan_type}")]
    InvalidRank { cartan_type: CartanType, rank: usize },
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error("weight has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Cartan type of a simple factor. `T` is a central torus factor: it adds
/// coordinates but no roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G2,
    F4,
    T,
}

impl CartanType {
    pub fn label(self) -> &'static str {
        match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G2 => "G2",
            CartanType::F4 => "F4",
            CartanType::T => "T",
        }
    }

    fn rank_ok(self, rank: usize) -> bool {
        match self {
            CartanType::A | CartanType::T => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 3,
            CartanType::G2 => rank == 2,
            CartanType::F4 => rank == 4,
        }
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(self, n: usize) -> usize {
        match self {
            CartanType::A => n * (n + 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
            CartanType::G2 => 6,
            CartanType::F4 => 24,
            CartanType::T => 0,
        }
    }

    /// Symmetrized Cartan form at scale 1: short roots have squared
    /// length 2, Bourbaki numbering. Torus factors get the identity.
    fn base_gram(self, n: usize) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0i64; n]; n];
        let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
            g[i][j] = v;
            g[j][i] = v;
        };
        match self {
            CartanType::T => (0..n).for_each(|i| g[i][i] = 1),
            CartanType::A => {
                (0..n).for_each(|i| g[i][i] = 2);
                (0..n - 1).for_each(|i| link(&mut g, i, i + 1, -1));
            }
            CartanType::B => {
                (0..n).for_each(|i| g[i][i] = if i < n - 1 { 4 } else { 2 });
                (0..n - 1).for_each(|i| link(&mut g, i, i + 1, -2));
            }
            CartanType::C => {
                (0..n).for_each(|i| g[i][i] = if i < n - 1 { 2 } else { 4 });
                (0..n - 1).for_each(|i| link(&mut g, i, i + 1, if i == n - 2 { -2 } else { -1 }));
            }
            CartanType::D => {
                (0..n).for_each(|i| g[i][i] = 2);
                (0..n - 2).for_each(|i| link(&mut g, i, i + 1, -1));
                link(&mut g, n - 3, n - 1, -1);
            }
            CartanType::G2 => {
                g = vec![vec![2, -3], vec![-3, 6]];
            }
            CartanType::F4 => {
                g = vec![vec![4, -2, 0, 0], vec![-2, 4, -2, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]];
            }
        }
        g
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "G2" | "G" => CartanType::G2,
            "F4" | "F" => CartanType::F4,
            "T" => CartanType::T,
            _ => return Err(RootSystemError::UnsupportedType(s.to_string())),
        })
    }
}

/// One simple factor of a product root system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub scale: Rational,
}

impl Component {
    pub fn new(cartan_type: CartanType, rank: usize, scale: Rational) -> Self {
        Self { cartan_type, rank, scale }
    }
}

/// A vector in simple-root coordinates of the ambient product system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if *c == int(1) { format!("a{i}") } else { format!("{c}*a{i}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    components: Vec<Component>,
    positive_roots: Vec<Weight>,
    gram: Vec<Vec<Rational>>,
}

impl RootSystem {
    /// Builds the product of the given factors. Coordinates are concatenated
    /// in the order given; each factor's form is `scale` times its base form.
    pub fn build(components: &[Component]) -> Result<Self, RootSystemError> {
        let dim: usize = components.iter().map(|c| c.rank).sum();
        let mut gram = vec![vec![Rational::zero(); dim]; dim];
        let mut positive_roots = Vec::new();
        let mut offset = 0;
        for comp in components {
            if !comp.cartan_type.rank_ok(comp.rank) {
                return Err(RootSystemError::InvalidRank { cartan_type: comp.cartan_type, rank: comp.rank });
            }
            if !comp.scale.is_positive() {
                return Err(RootSystemError::NonPositiveScale(comp.scale.clone()));
            }
            let base = comp.cartan_type.base_gram(comp.rank);
            for (i, row) in base.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    gram[offset + i][offset + j] = int(*v) * &comp.scale;
                }
            }
            if comp.cartan_type != CartanType::T {
                for root in positive_roots_of(&base) {
                    let mut coords = vec![Rational::zero(); dim];
                    for (i, c) in root.iter().enumerate() {
                        coords[offset + i] = int(*c);
                    }
                    positive_roots.push(Weight(coords));
                }
            }
            offset += comp.rank;
        }
        Ok(Self { components: components.to_vec(), positive_roots, gram })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Total number of coordinates (semisimple rank plus torus factors).
    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn check_dim(&self, w: &Weight) -> Result<(), RootSystemError> {
        if w.dim() != self.dim() {
            return Err(RootSystemError::DimensionMismatch { expected: self.dim(), found: w.dim() });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &Weight, v: &Weight) -> Result<Rational, RootSystemError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        let mut total = Rational::zero();
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.0.iter().enumerate() {
                if !vj.is_zero() && !self.gram[i][j].is_zero() {
                    total += ui * &self.gram[i][j] * vj;
                }
            }
        }
        Ok(total)
    }

    /// ϖ, half the sum of the positive roots.
    pub fn half_sum_positive_roots(&self) -> Weight {
        let half = Rational::new(1.into(), 2.into());
        self.positive_roots
            .iter()
            .fold(Weight::zero(self.dim()), |acc, r| acc.add(r))
            .scale(&half)
    }

    /// Same system with every factor's form multiplied by `c`.
    pub fn scaled(&self, c: &Rational) -> Result<Self, RootSystemError> {
        let comps: Vec<Component> = self
            .components
            .iter()
            .map(|k| Component::new(k.cartan_type, k.rank, &k.scale * c))
            .collect();
        Self::build(&comps)
    }
}

/// Positive roots of an irreducible system given its symmetrized form, by
/// increasing height through root strings: for a root β and simple αᵢ with
/// β − pαᵢ, …, β − αᵢ roots, β + αᵢ is a root iff p − ⟨β, αᵢ^∨⟩ > 0.
fn positive_roots_of(gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = gram.len();
    // cartan[j][i] = ⟨αⱼ, αᵢ^∨⟩
    let cartan: Vec<Vec<i64>> =
        (0..n).map(|j| (0..n).map(|i| 2 * gram[j][i] / gram[i][i]).collect()).collect();
    let simple = |i: usize| -> Vec<i64> { (0..n).map(|k| i64::from(k == i)).collect() };
    let mut seen: HashSet<Vec<i64>> = (0..n).map(simple).collect();
    let mut all: Vec<Vec<i64>> = (0..n).map(simple).collect();
    let mut layer = all.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let coroot_pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - coroot_pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn g2() -> RootSystem {
        RootSystem::build(&[Component::new(CartanType::G2, 2, int(1))]).unwrap()
    }

    #[test]
    fn g2_roots_and_half_sum() {
        let rs = g2();
        let mut roots: Vec<_> = rs.positive_roots().to_vec();
        roots.sort();
        let mut expected: Vec<_> =
            [[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]].iter().map(|c| Weight::from_ints(c)).collect();
        expected.sort();
        assert_eq!(roots, expected);
        assert_eq!(rs.half_sum_positive_roots(), Weight::from_ints(&[5, 3]));
        assert_eq!(rs.gram()[0][0], int(2));
        assert_eq!(rs.gram()[0][1], int(-3));
        assert_eq!(rs.gram()[1][1], int(6));
    }

    #[test]
    fn g2_pairing_table() {
        // ⟨3α₁+2α₂, x₁α₁+x₂α₂⟩ = 3x₂ and ⟨α₁, ·⟩ = 2x₁ − 3x₂
        let rs = g2();
        let x = Weight(vec![rat(7, 3), rat(-5, 2)]);
        assert_eq!(rs.pairing(&Weight::from_ints(&[3, 2]), &x).unwrap(), int(3) * rat(-5, 2));
        assert_eq!(rs.pairing(&Weight::from_ints(&[1, 0]), &x).unwrap(), int(2) * rat(7, 3) - int(3) * rat(-5, 2));
        assert_eq!(rs.pairing(&Weight::zero(2), &x).unwrap(), int(0));
    }

    #[test]
    fn f4_matches_reference_matrix_at_half_scale() {
        let rs = RootSystem::build(&[Component::new(CartanType::F4, 4, rat(1, 2))]).unwrap();
        assert_eq!(rs.positive_roots().len(), 24);
        let expected = [
            [int(2), int(-1), int(0), int(0)],
            [int(-1), int(2), int(-1), int(0)],
            [int(0), int(-1), int(1), rat(-1, 2)],
            [int(0), int(0), rat(-1, 2), int(1)],
        ];
        for (row, exp) in rs.gram().iter().zip(expected.iter()) {
            assert_eq!(row.as_slice(), exp.as_slice());
        }
        assert!(rs.positive_roots().contains(&Weight::from_ints(&[2, 3, 4, 2])));
        assert!(rs.positive_roots().contains(&Weight::from_ints(&[0, 1, 2, 1])));
    }

    #[test]
    fn a1_half_sum() {
        let rs = RootSystem::build(&[Component::new(CartanType::A, 1, rat(1, 2))]).unwrap();
        assert_eq!(rs.positive_roots(), &[Weight::from_ints(&[1])]);
        assert_eq!(rs.gram()[0][0], int(1));
        assert_eq!(rs.half_sum_positive_roots(), Weight(vec![rat(1, 2)]));
    }

    #[test]
    fn product_is_orthogonal_and_concatenated() {
        let rs = RootSystem::build(&[
            Component::new(CartanType::A, 1, rat(1, 2)),
            Component::new(CartanType::G2, 2, int(1)),
        ])
        .unwrap();
        assert_eq!(rs.dim(), 3);
        assert_eq!(rs.positive_roots().len(), 7);
        assert_eq!(rs.pairing(&Weight::from_ints(&[1, 0, 0]), &Weight::from_ints(&[0, 1, 0])).unwrap(), int(0));
        assert_eq!(rs.half_sum_positive_roots(), Weight(vec![rat(1, 2), int(5), int(3)]));
    }

    #[test]
    fn closed_form_counts() {
        let cases = [
            (CartanType::A, 1..=7),
            (CartanType::B, 2..=6),
            (CartanType::C, 2..=6),
            (CartanType::D, 3..=7),
            (CartanType::G2, 2..=2),
            (CartanType::F4, 4..=4),
        ];
        for (ty, ranks) in cases {
            for n in ranks {
                let rs = RootSystem::build(&[Component::new(ty, n, int(1))]).unwrap();
                assert_eq!(rs.positive_roots().len(), ty.positive_root_count(n), "{ty}{n}");
            }
        }
    }

    #[test]
    fn torus_factor_has_no_roots() {
        let rs = RootSystem::build(&[Component::new(CartanType::T, 2, int(3))]).unwrap();
        assert!(rs.positive_roots().is_empty());
        assert_eq!(rs.dim(), 2);
        assert_eq!(rs.half_sum_positive_roots(), Weight::zero(2));
        let empty = RootSystem::build(&[]).unwrap();
        assert_eq!(empty.dim(), 0);
    }

    #[test]
    fn errors() {
        assert!(matches!("E8".parse::<CartanType>(), Err(RootSystemError::UnsupportedType(_))));
        assert!(matches!(
            RootSystem::build(&[Component::new(CartanType::G2, 3, int(1))]),
            Err(RootSystemError::InvalidRank { .. })
        ));
        assert!(matches!(
            RootSystem::build(&[Component::new(CartanType::A, 2, int(0))]),
            Err(RootSystemError::NonPositiveScale(_))
        ));
        let rs = g2();
        assert!(matches!(
            rs.pairing(&Weight::zero(3), &Weight::zero(2)),
            Err(RootSystemError::DimensionMismatch { .. })
        ));
    }
}
