//! Homology of monomial complexes over F₂[U], two independent ways.
//!
//! The production path runs through the graded Smith machinery: a kernel
//! basis of d, the image expressed in kernel coordinates, and the Smith
//! form of that presentation. The oracle path forgets the module structure
//! and row-reduces finite F₂ grading slices, which is what the
//! cross-validation tests compare against.

use super::matrix::{ColumnVector, MonomialMatrix, Solver};
use super::{check_single_coset, BitMatrix, GradedModule, Grading, UfuError};
use std::collections::BTreeMap;

fn check_differential(d: &MonomialMatrix) -> Result<(), UfuError> {
    if d.nrows() != d.ncols() {
        return Err(UfuError::ShapeMismatch(format!(
            "differential must be square, got {} x {}",
            d.nrows(),
            d.ncols()
        )));
    }
    check_single_coset(d.row_gradings())?;
    let dd = d.compose(d);
    for r in 0..dd.nrows() {
        for c in 0..dd.ncols() {
            if dd.get(r, c) {
                return Err(UfuError::NotAComplex(r, c));
            }
        }
    }
    Ok(())
}

/// The graded isomorphism type of ker d / im d for a square degree −1
/// monomial matrix with d² = 0.
pub fn homology(d: &MonomialMatrix) -> Result<GradedModule, UfuError> {
    Ok(HomologyPresentation::new(d)?.module().clone())
}

/// Homology of a complex together with enough structure to answer
/// class-level questions: explicit free-generator cycles, canonical
/// coordinates for arbitrary cycles, and boundary tests.
pub struct HomologyPresentation {
    module: GradedModule,
    /// Echelon kernel basis K of d (columns span ker d).
    kernel: MonomialMatrix,
    kernel_solver: Solver,
    /// Smith data of W, where K·W = d presents im d inside ker d.
    w_row_t: MonomialMatrix,
    w_row_t_inv: MonomialMatrix,
    /// Pivot exponents of W; pivot i sits at row i of the transformed basis.
    w_pivots: Vec<u32>,
    /// Rows of the transformed kernel basis without a pivot: free summands.
    free_rows: Vec<usize>,
}

impl HomologyPresentation {
    pub fn new(d: &MonomialMatrix) -> Result<Self, UfuError> {
        check_differential(d)?;
        let kernel = d.kernel_basis().as_matrix();
        let kernel_solver = Solver::new(kernel.clone());
        let w = kernel_solver
            .solve_matrix(d)
            .expect("im d lies in ker d for a complex");
        let smith = w.smith();
        let rank = smith.pivots.len();
        let m = kernel.ncols();

        let mut free = Vec::new();
        let mut towers = Vec::new();
        let mut free_rows = Vec::new();
        for i in 0..m {
            let g = smith.d.row_gradings()[i];
            if i < rank {
                let e = smith.pivots[i];
                if e > 0 {
                    towers.push((g, e));
                }
            } else {
                free.push(g);
                free_rows.push(i);
            }
        }

        Ok(HomologyPresentation {
            module: GradedModule::new(free, towers),
            kernel,
            kernel_solver,
            w_row_t: smith.row_t,
            w_row_t_inv: smith.row_t_inv,
            w_pivots: smith.pivots,
            free_rows,
        })
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    /// Cycle representatives of the free homology summands, in chain
    /// coordinates, returned as (top grading, cycle).
    pub fn free_generator_cycles(&self) -> Vec<(Grading, ColumnVector)> {
        self.free_rows
            .iter()
            .map(|&i| {
                let coords = self.w_row_t_inv.column(i);
                let chain = self.kernel.apply(&coords);
                (self.w_row_t_inv.col_gradings()[i], chain)
            })
            .collect()
    }

    /// Tower-top representatives (grading, length, cycle) of the torsion
    /// summands.
    pub fn tower_cycles(&self) -> Vec<(Grading, u32, ColumnVector)> {
        let mut out = Vec::new();
        for (i, &e) in self.w_pivots.iter().enumerate() {
            if e > 0 {
                let coords = self.w_row_t_inv.column(i);
                let chain = self.kernel.apply(&coords);
                out.push((self.w_row_t_inv.col_gradings()[i], e, chain));
            }
        }
        out
    }

    /// Canonical homology coordinates of a cycle: one slot per transformed
    /// kernel-basis row, torsion slots reduced modulo U^{pivot}.
    ///
    /// Returns `None` when the vector is not a cycle of this complex.
    pub fn class_of(&self, cycle: &ColumnVector) -> Option<HomologyClass> {
        let y = self.kernel_solver.solve(cycle)?;
        let mut coords = self.w_row_t.apply(&y);
        for (i, &e) in self.w_pivots.iter().enumerate() {
            if coords.bits[i] {
                let have = coords
                    .exponent_at(self.w_row_t.row_gradings()[i])
                    .expect("homogeneous class");
                if have >= i64::from(e) {
                    coords.bits[i] = false;
                }
            }
        }
        Some(HomologyClass { coords })
    }

    pub fn is_boundary(&self, cycle: &ColumnVector) -> Option<bool> {
        self.class_of(cycle).map(|c| c.is_zero())
    }

    /// Does the class of `cycle` have a nonzero free component? (i.e. is it
    /// U-nontorsion in homology)
    pub fn has_free_component(&self, cycle: &ColumnVector) -> Option<bool> {
        let class = self.class_of(cycle)?;
        Some(self.free_rows.iter().any(|&i| class.coords.bits[i]))
    }

    /// Free coordinates (bit per free summand, in canonical order) of a
    /// cycle's class.
    pub fn free_coordinates(&self, cycle: &ColumnVector) -> Option<Vec<bool>> {
        let class = self.class_of(cycle)?;
        Some(self.free_rows.iter().map(|&i| class.coords.bits[i]).collect())
    }
}

/// Canonical coordinates of a homology class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyClass {
    coords: ColumnVector,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

/// The quotient of the ambient graded free module (on the row gradings)
/// by the column span: towers from the Smith pivots, free summands from
/// pivotless rows.
pub fn coker_module(m: &MonomialMatrix) -> GradedModule {
    let smith = m.smith();
    let rank = smith.pivots.len();
    let mut free = Vec::new();
    let mut towers = Vec::new();
    for i in 0..m.nrows() {
        let g = smith.d.row_gradings()[i];
        if i < rank {
            if smith.pivots[i] > 0 {
                towers.push((g, smith.pivots[i]));
            }
        } else {
            free.push(g);
        }
    }
    GradedModule::new(free, towers)
}

/// Independent truncation oracle: per-grading F₂ homology dimensions.
///
/// The complex is treated one grading slice at a time as a plain F₂ vector
/// space; U^N = 0 never actually bites because the reported window — from
/// the top generator grading down to 2(N−1) below the bottom generator
/// grading — only involves U-powers below N. Gradings with dimension zero
/// are omitted.
///
/// Errors with `TruncationTooSmall` when the interval reconstruction at N
/// and at N+1 disagree.
pub fn truncated_homology_oracle(
    d: &MonomialMatrix,
    n_trunc: u32,
) -> Result<BTreeMap<Grading, usize>, UfuError> {
    check_differential(d)?;
    let at_n = truncated_module_oracle(d, n_trunc)?;
    let at_n1 = truncated_module_oracle(d, n_trunc + 1)?;
    if at_n != at_n1 {
        return Err(UfuError::TruncationTooSmall(n_trunc, n_trunc + 1));
    }
    let mut dims = BTreeMap::new();
    for g in window(d, n_trunc) {
        let dim = slice_homology_dim(d, g);
        if dim > 0 {
            dims.insert(g, dim);
        }
    }
    Ok(dims)
}

fn window(d: &MonomialMatrix, n_trunc: u32) -> Vec<Grading> {
    let Some(&top) = d.row_gradings().iter().max() else {
        return Vec::new();
    };
    let low = *d.row_gradings().iter().min().unwrap();
    let depth = top.integer_diff(&low).unwrap() + 2 * (i64::from(n_trunc) - 1);
    (0..=depth).map(|s| top.shift(-s)).collect()
}

/// Basis of the grading-g slice: generator indices whose U-power lands in g.
pub(crate) fn slice_basis(gradings: &[Grading], g: Grading) -> Vec<usize> {
    gradings
        .iter()
        .enumerate()
        .filter(|(_, gr)| matches!(gr.integer_diff(&g), Some(k) if k >= 0 && k % 2 == 0))
        .map(|(i, _)| i)
        .collect()
}

/// F₂ matrix of a monomial map restricted to the slice in grading g of the
/// domain (targets land in g + degree), with explicit slice bases.
pub(crate) fn slice_matrix(m: &MonomialMatrix, g: Grading) -> (Vec<usize>, Vec<usize>, BitMatrix) {
    let dom = slice_basis(m.col_gradings(), g);
    let tgt = slice_basis(m.row_gradings(), g.shift(m.degree()));
    let mut bits = BitMatrix::zeros(tgt.len(), dom.len());
    for (cj, &c) in dom.iter().enumerate() {
        for (ri, &r) in tgt.iter().enumerate() {
            if m.get(r, c) {
                bits.set(ri, cj, true);
            }
        }
    }
    (tgt, dom, bits)
}

fn slice_homology_dim(d: &MonomialMatrix, g: Grading) -> usize {
    let (_, dom_g, out) = slice_matrix(d, g);
    let (_, _, into) = slice_matrix(d, g.shift(1));
    dom_g.len() - out.rank() - into.rank()
}

/// Strong form of the oracle: reconstruct the full graded module (free tops
/// and towers) from F₂ slice ranks of the maps U^t between homology slices,
/// never touching the Smith path.
pub fn truncated_module_oracle(
    d: &MonomialMatrix,
    n_trunc: u32,
) -> Result<GradedModule, UfuError> {
    check_differential(d)?;
    let gradings = window(d, n_trunc);
    if gradings.is_empty() {
        return Ok(GradedModule::zero());
    }
    let len = gradings.len();
    let n_gens = d.row_gradings().len();

    // Cycles and boundaries per slice, as gen-indexed F₂ vectors. U^t acts
    // as the identity on these coordinates, so rank computations across
    // slices are joint ranks of these spans.
    let mut cycles: Vec<Vec<Vec<bool>>> = Vec::with_capacity(len);
    let mut boundaries: Vec<Vec<Vec<bool>>> = Vec::with_capacity(len);
    for &g in &gradings {
        let (_, dom, out) = slice_matrix(d, g);
        cycles.push(
            out.kernel()
                .into_iter()
                .map(|v| expand_slice_vec(&v, &dom, n_gens))
                .collect(),
        );
        let (tgt, dom_up, into) = slice_matrix(d, g.shift(1));
        let mut b = Vec::new();
        for cj in 0..dom_up.len() {
            let mut v = vec![false; tgt.len()];
            for (ri, slot) in v.iter_mut().enumerate() {
                *slot = into.get(ri, cj);
            }
            let v = expand_slice_vec(&v, &tgt, n_gens);
            if v.iter().any(|&x| x) {
                b.push(v);
            }
        }
        boundaries.push(b);
    }

    // rank(U^t : H_i -> H_j), window indices, j ≥ i, j ≡ i (mod 2);
    // rank_u(i, i) = dim H_i.
    let rank_u = |i: usize, j: usize| -> i64 {
        let b_rank = rank_of(&boundaries[j]) as i64;
        let mut vecs = boundaries[j].clone();
        vecs.extend(cycles[i].iter().cloned());
        rank_of(&vecs) as i64 - b_rank
    };

    let mut free = Vec::new();
    let mut towers = Vec::new();
    for i in 0..len {
        let bot = if (len - 1 - i).is_multiple_of(2) { len - 1 } else { len - 2 };
        // Bars born at i surviving to the window bottom: free summands.
        let reach_i = rank_u(i, bot);
        let reach_above = if i >= 2 { rank_u(i - 2, bot) } else { 0 };
        for _ in 0..(reach_i - reach_above).max(0) {
            free.push(gradings[i]);
        }
        // Bars [i, j] closing strictly above the bottom: towers.
        let mut j = i;
        while j + 2 <= bot {
            let r = |a: i64, b: usize| -> i64 {
                if a < 0 {
                    0
                } else {
                    rank_u(a as usize, b)
                }
            };
            let a = i as i64;
            let mult = r(a, j) - r(a - 2, j) - r(a, j + 2) + r(a - 2, j + 2);
            debug_assert!(mult >= 0, "negative bar multiplicity");
            let tower_len = ((j - i) / 2 + 1) as u32;
            for _ in 0..mult.max(0) {
                towers.push((gradings[i], tower_len));
            }
            j += 2;
        }
    }
    Ok(GradedModule::new(free, towers))
}

fn expand_slice_vec(v: &[bool], basis: &[usize], n_gens: usize) -> Vec<bool> {
    let mut out = vec![false; n_gens];
    for (slot, &gen) in basis.iter().enumerate() {
        if v[slot] {
            out[gen] = true;
        }
    }
    out
}

fn rank_of(vecs: &[Vec<bool>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let cols = vecs[0].len();
    let mut m = BitMatrix::zeros(vecs.len(), cols);
    for (r, v) in vecs.iter().enumerate() {
        for (c, &b) in v.iter().enumerate() {
            if b {
                m.set(r, c, true);
            }
        }
    }
    m.rank()
}
