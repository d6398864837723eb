//! Grading-forced monomial matrices over F₂[U].
//!
//! A homogeneous map of degree δ between graded free modules can only have
//! U^k in position (r, c) with k = (gr_row − gr_col − δ)/2, so a matrix is
//! a bit pattern plus grading vectors. Row and column operations that
//! respect gradings are plain bit XORs; exponents never need storing.

use super::bits::BitMatrix;
use super::{Grading, UfuError};

/// A homogeneous element of a graded free F₂[U]-module: its grading plus
/// the set of generators it touches (the U-powers are forced).
#[derive(Clone, PartialEq, Eq)]
pub struct ColumnVector {
    pub grading: Grading,
    pub bits: Vec<bool>,
}

impl ColumnVector {
    pub fn zero(grading: Grading, len: usize) -> Self {
        ColumnVector {
            grading,
            bits: vec![false; len],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| !b)
    }

    pub fn xor(&mut self, other: &ColumnVector) {
        debug_assert_eq!(self.bits.len(), other.bits.len());
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= *b;
        }
    }

    /// The same element viewed after multiplication by U^t.
    pub fn mul_u(&self, t: i64) -> ColumnVector {
        ColumnVector {
            grading: self.grading.shift(-2 * t),
            bits: self.bits.clone(),
        }
    }

    /// Exponent of the component on generator `r` of grading `g_r`, when set.
    pub fn exponent_at(&self, g_r: Grading) -> Option<i64> {
        let d = g_r.integer_diff(&self.grading)?;
        if d >= 0 && d % 2 == 0 {
            Some(d / 2)
        } else {
            None
        }
    }
}

impl std::fmt::Debug for ColumnVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[gr {}]", self.grading)?;
        for b in &self.bits {
            write!(f, "{}", if *b { '1' } else { '.' })?;
        }
        Ok(())
    }
}

/// A matrix over F₂[U] whose entries are forced monomials.
///
/// `degree` is the homological degree of the map: −1 for differentials,
/// 0 for chain maps and involutions, +1 for homotopies. Position (r, c)
/// can be nonzero only when k(r, c) = (row_gr[r] − col_gr[c] − degree)/2
/// is a non-negative integer, and then holds U^{k(r,c)}.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    row_gr: Vec<Grading>,
    col_gr: Vec<Grading>,
    degree: i64,
    bits: BitMatrix,
}

impl MonomialMatrix {
    pub fn zero(row_gr: Vec<Grading>, col_gr: Vec<Grading>, degree: i64) -> Self {
        let bits = BitMatrix::zeros(row_gr.len(), col_gr.len());
        MonomialMatrix {
            row_gr,
            col_gr,
            degree,
            bits,
        }
    }

    pub fn identity(gradings: Vec<Grading>) -> Self {
        let bits = BitMatrix::identity(gradings.len());
        MonomialMatrix {
            row_gr: gradings.clone(),
            col_gr: gradings,
            degree: 0,
            bits,
        }
    }

    /// Rewrap raw bits with grading data. Debug builds verify that every
    /// set bit sits at an admissible position.
    pub(crate) fn with_bits(
        row_gr: Vec<Grading>,
        col_gr: Vec<Grading>,
        degree: i64,
        bits: BitMatrix,
    ) -> Self {
        let m = MonomialMatrix {
            row_gr,
            col_gr,
            degree,
            bits,
        };
        #[cfg(debug_assertions)]
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                if m.bits.get(r, c) {
                    debug_assert!(m.exponent(r, c).is_some(), "bit at inadmissible ({r},{c})");
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.row_gr.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_gr.len()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn row_gradings(&self) -> &[Grading] {
        &self.row_gr
    }

    pub fn col_gradings(&self) -> &[Grading] {
        &self.col_gr
    }

    pub fn bits(&self) -> &BitMatrix {
        &self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_zero()
    }

    /// The forced exponent at (r, c), if the position is admissible.
    pub fn exponent(&self, r: usize, c: usize) -> Option<i64> {
        let d = self.row_gr[r].integer_diff(&self.col_gr[c])?;
        let num = d - self.degree;
        if num >= 0 && num % 2 == 0 {
            Some(num / 2)
        } else {
            None
        }
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits.get(r, c)
    }

    /// Set entry (r, c) to U^{k(r,c)}; errors when the position is not
    /// grading-admissible.
    pub fn set(&mut self, r: usize, c: usize) -> Result<(), UfuError> {
        if self.exponent(r, c).is_none() {
            return Err(UfuError::NotAdmissible(r, c));
        }
        self.bits.set(r, c, true);
        Ok(())
    }

    pub fn clear(&mut self, r: usize, c: usize) {
        self.bits.set(r, c, false);
    }

    /// Matrix product self ∘ other (apply `other` first).
    pub fn compose(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(
            self.col_gr, other.row_gr,
            "compose: inner gradings disagree"
        );
        MonomialMatrix {
            row_gr: self.row_gr.clone(),
            col_gr: other.col_gr.clone(),
            degree: self.degree + other.degree,
            bits: self.bits.mul(&other.bits),
        }
    }

    /// Sum of two matrices of identical shape and degree.
    pub fn add(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(self.row_gr, other.row_gr);
        assert_eq!(self.col_gr, other.col_gr);
        assert_eq!(self.degree, other.degree);
        MonomialMatrix {
            row_gr: self.row_gr.clone(),
            col_gr: self.col_gr.clone(),
            degree: self.degree,
            bits: self.bits.add(&other.bits),
        }
    }

    /// Apply to a homogeneous vector.
    pub fn apply(&self, v: &ColumnVector) -> ColumnVector {
        assert_eq!(v.bits.len(), self.ncols());
        let mut out = ColumnVector::zero(v.grading.shift(self.degree), self.nrows());
        for c in 0..self.ncols() {
            if v.bits[c] {
                for r in 0..self.nrows() {
                    if self.bits.get(r, c) {
                        out.bits[r] = !out.bits[r];
                    }
                }
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> ColumnVector {
        let mut bits = vec![false; self.nrows()];
        for (r, b) in bits.iter_mut().enumerate() {
            *b = self.bits.get(r, c);
        }
        ColumnVector {
            grading: self.col_gr[c].shift(self.degree),
            bits,
        }
    }

    pub fn set_column(&mut self, c: usize, v: &ColumnVector) {
        assert_eq!(v.bits.len(), self.nrows());
        for r in 0..self.nrows() {
            self.bits.set(r, c, v.bits[r]);
            if v.bits[r] {
                debug_assert!(self.exponent(r, c).is_some(), "inadmissible column entry");
            }
        }
    }

    /// Assemble a matrix from explicit columns.
    pub fn from_columns(row_gr: Vec<Grading>, degree: i64, cols: &[ColumnVector]) -> Self {
        let col_gr: Vec<Grading> = cols.iter().map(|v| v.grading.shift(-degree)).collect();
        let mut m = MonomialMatrix::zero(row_gr, col_gr, degree);
        for (c, v) in cols.iter().enumerate() {
            m.set_column(c, v);
        }
        m
    }

    /// Rank over F₂[U]. Homogeneity lets the fraction-field rank coincide
    /// with the rank of the underlying bit matrix.
    pub fn rank(&self) -> usize {
        self.bits.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.bits.swap_rows(a, b);
        self.row_gr.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.bits.swap_cols(a, b);
        self.col_gr.swap(a, b);
    }

    /// Graded Smith-style normal form. Pivots are chosen with minimal
    /// U-exponent, ties broken by (row, col), which makes the output
    /// deterministic. Returns the diagonalized matrix together with the
    /// invertible transforms: d = row_t ∘ self ∘ col_t.
    pub fn smith(&self) -> SmithForm {
        let mut d = self.clone();
        let (n, m) = (d.nrows(), d.ncols());
        let mut row_t = MonomialMatrix::identity(d.row_gr.clone());
        let mut row_t_inv = MonomialMatrix::identity(d.row_gr.clone());
        let mut col_t = MonomialMatrix::identity(d.col_gr.clone());
        let mut pivots = Vec::new();

        for k in 0..n.min(m) {
            let mut best: Option<(i64, usize, usize)> = None;
            for r in k..n {
                for c in k..m {
                    if d.bits.get(r, c) {
                        let e = d.exponent(r, c).expect("set entry must be admissible");
                        if best.is_none_or(|(be, br, bc)| (e, r, c) < (be, br, bc)) {
                            best = Some((e, r, c));
                        }
                    }
                }
            }
            let Some((e, r, c)) = best else { break };

            d.swap_rows(k, r);
            row_t.swap_rows(k, r);
            row_t_inv.swap_cols(k, r);
            d.swap_cols(k, c);
            col_t.swap_cols(k, c);

            for r2 in 0..n {
                if r2 != k && d.bits.get(r2, k) {
                    d.bits.xor_row(r2, k);
                    row_t.bits.xor_row(r2, k);
                    row_t_inv.bits.xor_col(k, r2);
                }
            }
            for c2 in 0..m {
                if c2 != k && d.bits.get(k, c2) {
                    d.bits.xor_col(c2, k);
                    col_t.bits.xor_col(c2, k);
                }
            }
            pivots.push(e as u32);
        }

        SmithForm {
            d,
            pivots,
            row_t,
            row_t_inv,
            col_t,
        }
    }

    /// Echelonized column basis (Hermite form) of the kernel of this map,
    /// viewed as a free submodule of the domain.
    pub fn kernel_basis(&self) -> Hnf {
        let smith = self.smith();
        let rank = smith.pivots.len();
        let cols: Vec<ColumnVector> = (rank..self.ncols())
            .map(|j| smith.col_t.column(j))
            .collect();
        Hnf::from_columns(self.col_gr.clone(), &cols)
    }

    /// Deterministic solve of self · x = b over F₂[U]; `None` when no
    /// solution exists. For repeated solves against one matrix use
    /// [`Solver`].
    pub fn solve(&self, b: &ColumnVector) -> Option<ColumnVector> {
        Solver::new(self.clone()).solve(b)
    }
}

impl std::fmt::Debug for MonomialMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "deg {} [{} x {}]", self.degree, self.nrows(), self.ncols())?;
        for r in 0..self.nrows() {
            write!(f, "  {} |", self.row_gr[r])?;
            for c in 0..self.ncols() {
                if self.bits.get(r, c) {
                    write!(f, " U^{}", self.exponent(r, c).unwrap())?;
                } else {
                    write!(f, " .")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of the graded Smith reduction: d = row_t ∘ a ∘ col_t with the
/// pivots U^{e_i} sitting at (i, i), e_i non-decreasing.
pub struct SmithForm {
    pub d: MonomialMatrix,
    pub pivots: Vec<u32>,
    pub row_t: MonomialMatrix,
    pub row_t_inv: MonomialMatrix,
    pub col_t: MonomialMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reusable exact solver backed by a Smith form.
pub struct Solver {
    smith: SmithForm,
}

impl Solver {
    pub fn new(a: MonomialMatrix) -> Self {
        Solver { smith: a.smith() }
    }

    pub fn matrix_rank(&self) -> usize {
        self.smith.rank()
    }

    /// Solve a · x = b. The answer is deterministic (the free coordinates
    /// of the solution space are set to zero).
    pub fn solve(&self, b: &ColumnVector) -> Option<ColumnVector> {
        let s = &self.smith;
        let y1 = s.row_t.apply(b);
        // y1 must be supported on pivot rows with divisible exponents.
        let mut y = ColumnVector::zero(y1.grading, s.d.ncols());
        for r in 0..y1.bits.len() {
            if !y1.bits[r] {
                continue;
            }
            if r >= s.pivots.len() {
                return None;
            }
            let e_have = y1
                .exponent_at(s.d.row_gradings()[r])
                .expect("homogeneous image");
            if e_have < i64::from(s.pivots[r]) {
                return None;
            }
            y.bits[r] = true;
        }
        // y has grading of the preimage: shift back by the map degree.
        y.grading = b.grading.shift(-s.d.degree());
        let x = s.col_t.apply(&y);
        Some(x)
    }

    /// Solve for every column of a matrix, assembling the solution matrix
    /// X with a · X = B.
    pub fn solve_matrix(&self, b: &MonomialMatrix) -> Option<MonomialMatrix> {
        let mut cols = Vec::with_capacity(b.ncols());
        for c in 0..b.ncols() {
            cols.push(self.solve(&b.column(c))?);
        }
        let row_gr = self.smith.col_t.row_gradings().to_vec();
        let degree = b.degree() - self.smith.d.degree();
        let mut out = MonomialMatrix::zero(row_gr, b.col_gradings().to_vec(), degree);
        for (c, v) in cols.iter().enumerate() {
            out.set_column(c, v);
        }
        Some(out)
    }
}

/// Canonical (Hermite) column basis of a free submodule of a graded free
/// module: one pivot row per column, pivot exponents minimal, every other
/// frozen column reduced at pivot rows. Equality of `Hnf` values is
/// equality of submodules.
#[derive(Clone, PartialEq, Eq)]
pub struct Hnf {
    ambient_gr: Vec<Grading>,
    /// (pivot row, pivot exponent) per basis column, sorted by pivot row.
    pivots: Vec<(usize, u32)>,
    columns: Vec<ColumnVector>,
}

impl Hnf {
    /// Reduce a spanning set of homogeneous columns to the canonical basis.
    pub fn from_columns(ambient_gr: Vec<Grading>, cols: &[ColumnVector]) -> Self {
        let n = ambient_gr.len();
        let mut active: Vec<ColumnVector> = cols.iter().filter(|v| !v.is_zero()).cloned().collect();
        let mut frozen: Vec<(usize, u32, ColumnVector)> = Vec::new();

        for r in 0..n {
            // Active columns whose topmost nonzero row is r.
            let mut tops: Vec<usize> = Vec::new();
            for (i, v) in active.iter().enumerate() {
                if v.bits.iter().position(|&b| b) == Some(r) {
                    tops.push(i);
                }
            }
            if tops.is_empty() {
                continue;
            }
            // Pivot: minimal exponent at row r, ties by bit pattern.
            let exp_of = |v: &ColumnVector| v.exponent_at(ambient_gr[r]).expect("homogeneous");
            tops.sort_by(|&a, &b| {
                (exp_of(&active[a]), &active[a].bits).cmp(&(exp_of(&active[b]), &active[b].bits))
            });
            let piv_idx = tops[0];
            let pivot = active[piv_idx].clone();
            for &i in &tops[1..] {
                active[i].xor(&pivot);
            }
            active.swap_remove(piv_idx);
            active.retain(|v| !v.is_zero());
            frozen.push((r, exp_of(&pivot) as u32, pivot));
        }
        debug_assert!(active.is_empty());

        frozen.sort_by_key(|&(r, _, _)| r);
        // Reduction pass: clear divisible entries at pivot rows.
        for i in 0..frozen.len() {
            let (r, e, pivot) = (frozen[i].0, frozen[i].1, frozen[i].2.clone());
            for (j, other) in frozen.iter_mut().enumerate() {
                if j == i || !other.2.bits[r] {
                    continue;
                }
                let e_other = other
                    .2
                    .exponent_at(ambient_gr[r])
                    .expect("homogeneous entry");
                if e_other >= i64::from(e) {
                    other.2.xor(&pivot);
                }
            }
        }

        Hnf {
            ambient_gr,
            pivots: frozen.iter().map(|&(r, e, _)| (r, e)).collect(),
            columns: frozen.into_iter().map(|(_, _, v)| v).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn ambient_gradings(&self) -> &[Grading] {
        &self.ambient_gr
    }

    pub fn columns(&self) -> &[ColumnVector] {
        &self.columns
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    /// The basis as a matrix (degree 0 map from the span into the ambient).
    pub fn as_matrix(&self) -> MonomialMatrix {
        MonomialMatrix::from_columns(self.ambient_gr.clone(), 0, &self.columns)
    }

    /// Does the span contain this element?
    pub fn contains_vector(&self, v: &ColumnVector) -> bool {
        let mut v = v.clone();
        loop {
            let Some(top) = v.bits.iter().position(|&b| b) else {
                return true;
            };
            let Some(i) = self.pivots.iter().position(|&(r, _)| r == top) else {
                return false;
            };
            let e_v = v.exponent_at(self.ambient_gr[top]).expect("homogeneous");
            if e_v < i64::from(self.pivots[i].1) {
                return false;
            }
            v.xor(&self.columns[i]);
        }
    }

    /// Does this span contain the span of `other`?
    pub fn contains(&self, other: &Hnf) -> bool {
        other.columns.iter().all(|v| self.contains_vector(v))
    }

    /// Deterministic total order used for tie-breaking between kernels of
    /// equal rank: lexicographic on (pivot rows, exponents, bit columns).
    pub fn lex_key(&self) -> (Vec<(usize, u32)>, Vec<Vec<bool>>) {
        (
            self.pivots.clone(),
            self.columns.iter().map(|v| v.bits.clone()).collect(),
        )
    }
}

impl std::fmt::Debug for Hnf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hnf(rank {}, pivots {:?})", self.rank(), self.pivots)
    }
}
