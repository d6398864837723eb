//! Exact linear and homological algebra for graded free modules over F₂[U],
//! with U of degree −2.
//!
//! Grading homogeneity forces every matrix entry to be a single monomial
//! U^k whose exponent is recomputed from the gradings, so matrices are
//! stored as F₂ bit matrices plus grading vectors ([`MonomialMatrix`]).
//! On top of that sit a graded Smith-style normal form, kernel bases in
//! Hermite form, exact linear solving, homology as a [`GradedModule`], and
//! an independent U-truncation oracle used to cross-check the Smith path.

mod bits;
mod homology;
mod matrix;

pub(crate) use homology::{slice_basis, slice_matrix};

pub use bits::BitMatrix;
pub use homology::{
    coker_module, homology, truncated_homology_oracle, truncated_module_oracle, HomologyClass,
    HomologyPresentation,
};
pub use matrix::{ColumnVector, Hnf, MonomialMatrix, SmithForm, Solver};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

/// Errors raised by the F₂[U] algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UfuError {
    /// d∘d ≠ 0; carries a witness entry (row, col) of d².
    #[error("not a chain complex: d^2 has a nonzero entry at ({0}, {1})")]
    NotAComplex(usize, usize),
    /// Gradings span more than one ℤ-coset.
    #[error("gradings lie in more than one Z-coset: {0} vs {1}")]
    MixedCoset(Grading, Grading),
    /// A matrix entry was requested at a position its gradings forbid.
    #[error("entry ({0}, {1}) is not admissible for these gradings")]
    NotAdmissible(usize, usize),
    /// Shape or grading mismatch between operands.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    /// The truncation parameter was too small for a stable answer.
    #[error("truncation too small: result changes between N = {0} and N = {1}")]
    TruncationTooSmall(u32, u32),
}

/// An exact rational grading. Arithmetic never leaves ℚ.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grading(Ratio<i64>);

impl Grading {
    pub fn new(numer: i64, denom: i64) -> Self {
        Grading(Ratio::new(numer, denom))
    }

    pub fn from_int(n: i64) -> Self {
        Grading(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn zero() -> Self {
        Grading(Ratio::zero())
    }

    /// The difference `self - other` as an integer, if it is one.
    pub fn integer_diff(&self, other: &Grading) -> Option<i64> {
        let d = self.0 - other.0;
        if d.is_integer() {
            Some(d.to_integer())
        } else {
            None
        }
    }

    /// Whether `self - other` is an even integer (same U-tower coset).
    pub fn even_diff(&self, other: &Grading) -> bool {
        matches!(self.integer_diff(other), Some(d) if d % 2 == 0)
    }

    /// Shift the grading by an integer amount.
    pub fn shift(&self, by: i64) -> Self {
        Grading(self.0 + Ratio::from_integer(by))
    }

    pub fn as_ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Parse "p/q" or a bare integer.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Grading::new(p, q))
        } else {
            s.parse::<i64>().ok().map(Grading::from_int)
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else if self.0.is_negative() {
            write!(f, "-{}/{}", self.0.numer().abs(), self.0.denom())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for Grading {
    type Output = Grading;
    fn add(self, rhs: Grading) -> Grading {
        Grading(self.0 + rhs.0)
    }
}

impl Sub for Grading {
    type Output = Grading;
    fn sub(self, rhs: Grading) -> Grading {
        Grading(self.0 - rhs.0)
    }
}

impl Neg for Grading {
    type Output = Grading;
    fn neg(self) -> Grading {
        Grading(-self.0)
    }
}

/// The isomorphism type of a finitely generated graded F₂[U]-module:
/// free summands F[U] (recorded by the grading of their generator) and
/// torsion towers 𝒯_a(n) = F[U]/Uⁿ with generator in grading a.
///
/// Both lists are kept in a canonical order (descending; towers by
/// (top, length) descending), so `==` on values is isomorphism of graded
/// modules.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GradedModule {
    free: Vec<Grading>,
    towers: Vec<(Grading, u32)>,
}

impl GradedModule {
    pub fn new(mut free: Vec<Grading>, mut towers: Vec<(Grading, u32)>) -> Self {
        towers.retain(|&(_, n)| n > 0);
        free.sort_by(|a, b| b.cmp(a));
        towers.sort_by(|a, b| b.cmp(a));
        GradedModule { free, towers }
    }

    pub fn zero() -> Self {
        GradedModule::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_empty() && self.towers.is_empty()
    }

    pub fn free_parts(&self) -> &[Grading] {
        &self.free
    }

    pub fn towers(&self) -> &[(Grading, u32)] {
        &self.towers
    }

    pub fn free_rank(&self) -> usize {
        self.free.len()
    }

    /// Total dimension over F₂ in grading `g`.
    pub fn dim_at(&self, g: Grading) -> usize {
        let mut dim = 0;
        for a in &self.free {
            if let Some(d) = a.integer_diff(&g) {
                if d >= 0 && d % 2 == 0 {
                    dim += 1;
                }
            }
        }
        for &(a, n) in &self.towers {
            if let Some(d) = a.integer_diff(&g) {
                if d >= 0 && d % 2 == 0 && (d / 2) < i64::from(n) {
                    dim += 1;
                }
            }
        }
        dim
    }

    /// The torsion part alone.
    pub fn torsion(&self) -> GradedModule {
        GradedModule::new(Vec::new(), self.towers.clone())
    }

    /// All gradings shifted upward by the integer `by`.
    pub fn shifted_up(&self, by: i64) -> GradedModule {
        GradedModule::new(
            self.free.iter().map(|a| a.shift(by)).collect(),
            self.towers.iter().map(|&(a, n)| (a.shift(by), n)).collect(),
        )
    }

    /// All gradings shifted by a rational amount.
    pub fn shifted_by(&self, delta: Grading) -> GradedModule {
        GradedModule::new(
            self.free.iter().map(|&a| a + delta).collect(),
            self.towers.iter().map(|&(a, n)| (a + delta, n)).collect(),
        )
    }

    /// Multiset union (direct sum).
    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut free = self.free.clone();
        free.extend_from_slice(&other.free);
        let mut towers = self.towers.clone();
        towers.extend_from_slice(&other.towers);
        GradedModule::new(free, towers)
    }

    /// Longest tower, or 0 when there is no torsion.
    pub fn max_tower_length(&self) -> u32 {
        self.towers.iter().map(|&(_, n)| n).max().unwrap_or(0)
    }

    /// Total F₂-dimension of the torsion part.
    pub fn torsion_dim(&self) -> u64 {
        self.towers.iter().map(|&(_, n)| u64::from(n)).sum()
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for a in &self.free {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "F[U]_({})", a)?;
            first = false;
        }
        for (a, n) in &self.towers {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "T_({})({})", a, n)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Check that all gradings in the slice lie in a single ℤ-coset.
pub fn check_single_coset(gradings: &[Grading]) -> Result<(), UfuError> {
    if let Some(first) = gradings.first() {
        for g in &gradings[1..] {
            if g.integer_diff(first).is_none() {
                return Err(UfuError::MixedCoset(*first, *g));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grading_parse_and_display() {
        assert_eq!(Grading::parse("3"), Some(Grading::from_int(3)));
        assert_eq!(Grading::parse("-9/4"), Some(Grading::new(-9, 4)));
        assert_eq!(Grading::parse("6/4"), Some(Grading::new(3, 2)));
        assert_eq!(Grading::new(-9, 4).to_string(), "-9/4");
        assert_eq!(Grading::from_int(-2).to_string(), "-2");
        assert_eq!(Grading::parse("1/0"), None);
    }

    #[test]
    fn grading_coset_checks() {
        let a = Grading::new(1, 2);
        let b = Grading::new(-5, 2);
        assert_eq!(a.integer_diff(&b), Some(3));
        assert!(!a.even_diff(&b));
        assert!(a.even_diff(&Grading::new(-3, 2)));
        assert!(check_single_coset(&[a, b]).is_ok());
        assert!(check_single_coset(&[a, Grading::from_int(0)]).is_err());
    }

    #[test]
    fn module_canonical_order_is_isomorphism() {
        let m1 = GradedModule::new(
            vec![Grading::from_int(-2), Grading::from_int(0)],
            vec![(Grading::from_int(-2), 1), (Grading::from_int(-2), 2)],
        );
        let m2 = GradedModule::new(
            vec![Grading::from_int(0), Grading::from_int(-2)],
            vec![(Grading::from_int(-2), 2), (Grading::from_int(-2), 1)],
        );
        assert_eq!(m1, m2);
        assert_eq!(m1.max_tower_length(), 2);
        assert_eq!(m1.dim_at(Grading::from_int(-2)), 4);
        assert_eq!(m1.dim_at(Grading::from_int(-4)), 3);
    }
}
