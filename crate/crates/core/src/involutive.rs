//! The involutive mapping cone Cone(Q(1+ι)) and the correction terms
//! d̲ and d̄.
//!
//! For an ι-complex C the cone carries each generator x twice: once in
//! grading gr(x)+1 and once as Qx in grading gr(x). Its homology has two
//! U-nontorsion towers; the one whose deep part falls into Im(Q) yields
//! d̄ = top + 2, the other d̲ = top + 1.

use crate::iota_complex::{IotaComplex, IotaError};
use crate::ufu_algebra::{
    coker_module, slice_basis, slice_matrix, BitMatrix, ColumnVector, GradedModule, Grading, Hnf,
    HomologyPresentation, MonomialMatrix, Solver, UfuError,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvolutiveError {
    #[error("localized cone homology has rank {0}, expected 2")]
    NotLocal(usize),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error(transparent)]
    Iota(#[from] IotaError),
    #[error(transparent)]
    Ufu(#[from] UfuError),
}

/// The involutive cone: for each generator x of C a generator x (grading
/// gr(x)+1) and Qx (grading gr(x)), with ∂x = dx + Q(x + ιx), ∂(Qx) = Q dx.
pub struct InvolutiveCone {
    names: Vec<String>,
    d: MonomialMatrix,
    q: MonomialMatrix,
}

impl InvolutiveCone {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn differential(&self) -> &MonomialMatrix {
        &self.d
    }

    /// The Q-action (degree −1, Q² = 0).
    pub fn q_action(&self) -> &MonomialMatrix {
        &self.q
    }

    pub fn gradings(&self) -> &[Grading] {
        self.d.row_gradings()
    }

    pub fn homology(&self) -> Result<GradedModule, UfuError> {
        crate::ufu_algebra::homology(&self.d)
    }
}

/// Build the involutive mapping cone of a (valid) ι-complex.
pub fn involutive_cone(a: &IotaComplex) -> InvolutiveCone {
    let n = a.len();
    let mut gradings: Vec<Grading> = a.gradings().iter().map(|g| g.shift(1)).collect();
    gradings.extend_from_slice(a.gradings());
    let mut names: Vec<String> = a.names().to_vec();
    names.extend(a.names().iter().map(|name| format!("Q{name}")));

    let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
    let mut q = MonomialMatrix::zero(gradings.clone(), gradings, -1);
    let da = a.differential();
    let iota = a.involution();
    for c in 0..n {
        for r in 0..n {
            if da.get(r, c) {
                d.set(r, c).expect("cone d on x-block");
                d.set(n + r, n + c).expect("cone d on Q-block");
            }
        }
        // Q(1 + ι): from x_c into the Q-block.
        d.set(n + c, c).expect("cone d: Q·x term");
        for r in 0..n {
            if iota.get(r, c) {
                // F₂: if ι has the diagonal entry this cancels the 1.
                if d.get(n + r, c) {
                    d.clear(n + r, c);
                } else {
                    d.set(n + r, c).expect("cone d: Q·ιx term");
                }
            }
        }
        q.set(n + c, c).expect("Q action");
    }
    InvolutiveCone { names, d, q }
}

/// The involutive correction terms of an ι-complex, exact rationals with
/// d̲ ≤ d ≤ d̄ and d̲ ≡ d ≡ d̄ (mod 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectionTerms {
    pub d_lower: Grading,
    pub d: Grading,
    pub d_upper: Grading,
}

/// Compute (d̲, d, d̄) through the involutive cone. The two U-nontorsion
/// towers of the cone homology are classified by whether some U^m multiple
/// of the tower generator lands in Im(Q); m runs up to the total tower
/// length of the cone homology plus one, past which tower classes are
/// stable.
pub fn correction_terms(a: &IotaComplex) -> Result<CorrectionTerms, InvolutiveError> {
    let d_inv = a.d_invariant()?;
    let cone = involutive_cone(a);
    let pres = HomologyPresentation::new(&cone.d)?;
    let frees = pres.free_generator_cycles();
    if frees.len() != 2 {
        return Err(InvolutiveError::NotLocal(frees.len()));
    }
    let bound = pres.module().torsion_dim() + 1;

    let mut d_upper = None;
    let mut d_lower = None;
    for (top, cycle) in &frees {
        if eventually_in_im_q(&cone, cycle, bound) {
            if d_upper.replace(top.shift(2)).is_some() {
                return Err(InvolutiveError::ParityViolation(
                    "both U-nontorsion towers eventually land in Im(Q)".into(),
                ));
            }
        } else if d_lower.replace(top.shift(1)).is_some() {
            return Err(InvolutiveError::ParityViolation(
                "no U-nontorsion tower lands in Im(Q)".into(),
            ));
        }
    }
    let (d_lower, d_upper) = (d_lower.unwrap(), d_upper.unwrap());
    if !d_lower.even_diff(&d_inv) || !d_upper.even_diff(&d_inv) {
        return Err(InvolutiveError::ParityViolation(format!(
            "correction terms ({}, {}, {}) break the mod-2 congruences",
            d_lower, d_inv, d_upper
        )));
    }
    if d_inv < d_lower || d_upper < d_inv {
        return Err(InvolutiveError::ParityViolation(format!(
            "expected {} <= {} <= {}",
            d_lower, d_inv, d_upper
        )));
    }
    Ok(CorrectionTerms {
        d_lower,
        d: d_inv,
        d_upper,
    })
}

/// Is [U^m z] ∈ Im(Q_*) for some 0 ≤ m ≤ bound? Decided at chain level:
/// U^m z = Q u + d w with d u = 0, solved slice by slice over F₂.
fn eventually_in_im_q(cone: &InvolutiveCone, z: &ColumnVector, bound: u64) -> bool {
    (0..=bound).any(|m| in_im_q(cone, &z.mul_u(m as i64)))
}

fn in_im_q(cone: &InvolutiveCone, v: &ColumnVector) -> bool {
    let grs = cone.gradings();
    let up = v.grading.shift(1);
    let (d_tgt, d_dom, d_slice) = slice_matrix(&cone.d, up);
    let (q_tgt, q_dom, q_slice) = slice_matrix(&cone.q, up);
    debug_assert_eq!(d_dom, q_dom);
    debug_assert_eq!(d_tgt, q_tgt);
    let s_dom = d_dom.len();
    // Equation rows: d u = 0 over slice(v.grading); Q u + d w = v.
    let rows_zero = d_tgt.len();
    let mut sys = BitMatrix::zeros(2 * rows_zero, 2 * s_dom);
    let mut rhs = vec![false; 2 * rows_zero];
    for c in 0..s_dom {
        for r in 0..rows_zero {
            if d_slice.get(r, c) {
                sys.set(r, c, true); // d u = 0
                sys.set(rows_zero + r, s_dom + c, true); // d w part
            }
            if q_slice.get(r, c) {
                sys.set(rows_zero + r, c, true); // Q u part
            }
        }
    }
    let v_slice = slice_basis(grs, v.grading);
    debug_assert_eq!(v_slice, d_tgt);
    for (ri, &gen) in v_slice.iter().enumerate() {
        rhs[rows_zero + ri] = v.bits[gen];
    }
    // Components of v outside its slice cannot occur (homogeneous).
    sys.solve(&rhs).is_some()
}

/// Fast path for complexes whose homology sits in a single grading parity:
/// HFI ≅ ker(1+ι_*)[−1] ⊕ coker(1+ι_*), so d̲ and d̄ come from the top
/// U-nontorsion gradings of kernel and cokernel of the induced involution.
/// Returns `None` when the parity hypothesis fails.
pub fn correction_terms_single_parity(
    a: &IotaComplex,
) -> Result<Option<CorrectionTerms>, InvolutiveError> {
    let d_inv = a.d_invariant()?;
    let pres = HomologyPresentation::new(a.differential())?;
    let h = pres.module();
    let mut support: Vec<Grading> = h.free_parts().to_vec();
    support.extend(h.towers().iter().map(|&(g, _)| g));
    let Some(&anchor) = support.first() else {
        return Ok(None);
    };
    if !support.iter().all(|g| g.even_diff(&anchor)) {
        return Ok(None);
    }

    let (one_plus_iota, kernel) = induced_involution_data(a)?;
    let coker = induced_coker(&one_plus_iota, &kernel)?;
    let ker = induced_ker(&one_plus_iota, &kernel)?;
    let top_free = |m: &GradedModule| m.free_parts().iter().max().copied();
    let (Some(ker_top), Some(coker_top)) = (top_free(&ker), top_free(&coker)) else {
        return Err(InvolutiveError::ParityViolation(
            "induced 1+iota has no U-nontorsion kernel/cokernel".into(),
        ));
    };
    Ok(Some(CorrectionTerms {
        d_lower: ker_top.shift(2),
        d: d_inv,
        d_upper: coker_top.shift(2),
    }))
}

/// The matrix of 1 + ι_* on homology coordinates: homology is presented as
/// coker(W) over the kernel basis K of d, and ι maps ker d to itself.
fn induced_involution_data(
    a: &IotaComplex,
) -> Result<(MonomialMatrix, MonomialMatrix), InvolutiveError> {
    let kernel = a.differential().kernel_basis().as_matrix();
    let solver = Solver::new(kernel.clone());
    let w = solver
        .solve_matrix(a.differential())
        .expect("im d inside ker d");
    let iota_k = a.involution().compose(&kernel);
    let phi = solver
        .solve_matrix(&iota_k)
        .expect("iota preserves ker d");
    let one = MonomialMatrix::identity(kernel.col_gradings().to_vec());
    Ok((phi.add(&one), w))
}

fn hstack(a: &MonomialMatrix, b: &MonomialMatrix) -> MonomialMatrix {
    assert_eq!(a.row_gradings(), b.row_gradings());
    assert_eq!(a.degree(), b.degree());
    let mut cols: Vec<ColumnVector> = Vec::new();
    for c in 0..a.ncols() {
        cols.push(a.column(c));
    }
    for c in 0..b.ncols() {
        cols.push(b.column(c));
    }
    MonomialMatrix::from_columns(a.row_gradings().to_vec(), a.degree(), &cols)
}

/// coker of the map induced by `f` on coker(w): coker([f | w]).
fn induced_coker(f: &MonomialMatrix, w: &MonomialMatrix) -> Result<GradedModule, InvolutiveError> {
    // Degrees: f has degree 0, w degree −1; rebuild w as degree-0 columns
    // of shifted grading is wrong — instead take coker of the stacked
    // column span, which only depends on the spanned submodule.
    let mut cols: Vec<ColumnVector> = Vec::new();
    for c in 0..f.ncols() {
        cols.push(f.column(c));
    }
    for c in 0..w.ncols() {
        cols.push(w.column(c));
    }
    let stacked = MonomialMatrix::from_columns(f.row_gradings().to_vec(), 0, &cols);
    Ok(coker_module(&stacked))
}

/// ker of the map induced by `f` on coker(w): {y : f y ∈ im w} / im w.
fn induced_ker(f: &MonomialMatrix, w: &MonomialMatrix) -> Result<GradedModule, InvolutiveError> {
    let joint = hstack(f, &{
        // match degrees: f degree 0, w degree −1; spans are degree-free, so
        // rewrap w's columns at degree 0.
        let cols: Vec<ColumnVector> = (0..w.ncols()).map(|c| w.column(c)).collect();
        MonomialMatrix::from_columns(w.row_gradings().to_vec(), 0, &cols)
    });
    let ker = joint.kernel_basis();
    // Project kernel vectors to the f-block: their f-part y satisfies
    // f y ∈ im w.
    let m = f.ncols();
    let mut pre_cols = Vec::new();
    for v in ker.columns() {
        let bits = v.bits[..m].to_vec();
        if bits.iter().all(|&b| !b) {
            continue;
        }
        pre_cols.push(ColumnVector {
            grading: v.grading,
            bits,
        });
    }
    let p = Hnf::from_columns(f.col_gradings().to_vec(), &pre_cols);
    let p_matrix = p.as_matrix();
    let solver = Solver::new(p_matrix);
    // Express im w in P coordinates; im w ⊆ P because f descends.
    let mut w_in_p = Vec::new();
    for c in 0..w.ncols() {
        let col = w.column(c);
        if col.is_zero() {
            continue;
        }
        let y = solver
            .solve(&col)
            .expect("im w lies inside the preimage submodule");
        w_in_p.push(y);
    }
    if p.rank() == 0 {
        return Ok(GradedModule::zero());
    }
    let expr = MonomialMatrix::from_columns(
        p.columns().iter().map(|v| v.grading).collect(),
        0,
        &w_in_p,
    );
    Ok(coker_module(&expr))
}

/// Per-grading dimension data of the cone homology, for the exact-triangle
/// cross-checks in tests.
pub fn cone_homology(a: &IotaComplex) -> Result<GradedModule, InvolutiveError> {
    Ok(involutive_cone(a).homology()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> Grading {
        Grading::from_int(n)
    }

    fn sigma237() -> IotaComplex {
        IotaComplex::build(
            &[("a", gr(-2)), ("b", gr(-2)), ("c", gr(-3))],
            &[("c", "a"), ("c", "b")],
            &[("a", "b"), ("b", "a"), ("c", "c")],
        )
        .unwrap()
    }

    fn c_n(n: i64) -> IotaComplex {
        IotaComplex::build(
            &[("x1", gr(-2)), ("x2", gr(-2)), ("y", gr(-2 * n - 1))],
            &[("y", "x1"), ("y", "x2")],
            &[("x1", "x2"), ("x2", "x1"), ("y", "y")],
        )
        .unwrap()
    }

    #[test]
    fn cone_of_identity_complex() {
        let cone = involutive_cone(&IotaComplex::identity());
        // ι = id makes Q(1+ι) vanish: homology is two free towers, with Q
        // carrying the top one onto the bottom one.
        let h = cone.homology().unwrap();
        assert_eq!(h, GradedModule::new(vec![gr(-1), gr(-2)], vec![]));
        let pres = HomologyPresentation::new(cone.differential()).unwrap();
        let frees = pres.free_generator_cycles();
        let top = frees.iter().find(|(g, _)| *g == gr(-1)).unwrap();
        let image = cone.q_action().apply(&top.1);
        assert_eq!(pres.is_boundary(&image), Some(false));
        assert_eq!(pres.has_free_component(&image), Some(true));
        let ct = correction_terms(&IotaComplex::identity()).unwrap();
        assert_eq!((ct.d_lower, ct.d, ct.d_upper), (gr(0), gr(0), gr(0)));
    }

    #[test]
    fn sigma237_correction_terms() {
        let ct = correction_terms(&sigma237()).unwrap();
        assert_eq!((ct.d_lower, ct.d, ct.d_upper), (gr(-2), gr(0), gr(0)));
    }

    #[test]
    fn sigma237_cone_has_dlower_tower_at_minus_three() {
        let cone = involutive_cone(&sigma237());
        let pres = HomologyPresentation::new(cone.differential()).unwrap();
        let mut tops: Vec<Grading> = pres
            .free_generator_cycles()
            .iter()
            .map(|(g, _)| *g)
            .collect();
        tops.sort();
        assert_eq!(tops, vec![gr(-3), gr(-2)]);
    }

    #[test]
    fn c2_correction_terms() {
        let ct = correction_terms(&c_n(2)).unwrap();
        assert_eq!((ct.d_lower, ct.d, ct.d_upper), (gr(-4), gr(0), gr(0)));
    }

    #[test]
    fn c_v0_correction_terms_follow_minus_two_v0() {
        for v0 in 1..=3 {
            let ct = correction_terms(&c_n(v0)).unwrap();
            assert_eq!(ct.d_lower, gr(-2 * v0));
            assert_eq!(ct.d, gr(0));
            assert_eq!(ct.d_upper, gr(0));
        }
    }

    #[test]
    fn duality_flips_correction_terms() {
        for c in [sigma237(), c_n(2), c_n(3)] {
            let ct = correction_terms(&c).unwrap();
            let dual_ct = correction_terms(&c.dual()).unwrap();
            assert_eq!(dual_ct.d_lower, -ct.d_upper);
            assert_eq!(dual_ct.d_upper, -ct.d_lower);
            assert_eq!(dual_ct.d, -ct.d);
        }
    }

    #[test]
    fn dual_sigma237_terms() {
        let ct = correction_terms(&sigma237().dual()).unwrap();
        assert_eq!((ct.d_lower, ct.d, ct.d_upper), (gr(0), gr(0), gr(2)));
    }

    #[test]
    fn fast_path_agrees_with_cone_on_single_parity() {
        for c in [IotaComplex::identity(), sigma237(), c_n(2), c_n(3)] {
            let fast = correction_terms_single_parity(&c).unwrap();
            let slow = correction_terms(&c).unwrap();
            assert_eq!(fast, Some(slow));
        }
    }

    #[test]
    fn exact_triangle_dimension_count() {
        // dim HFI_g = dim ker(1+ι_*)_g + dim coker(1+ι_*)_{g-1}, per grading.
        for c in [sigma237(), c_n(2), sigma237().tensor(&c_n(1))] {
            let cone_h = cone_homology(&c).unwrap();
            let (one_plus, w) = induced_involution_data(&c).unwrap();
            let ker = induced_ker(&one_plus, &w).unwrap();
            let coker = induced_coker(&one_plus, &w).unwrap();
            let top = c.gradings().iter().map(|g| g.shift(1)).max().unwrap();
            for s in 0..40 {
                let g = top.shift(-s);
                assert_eq!(
                    cone_h.dim_at(g),
                    ker.dim_at(g.shift(-1)) + coker.dim_at(g),
                    "triangle mismatch at {} for cone dims",
                    g
                );
            }
        }
    }

    #[test]
    fn connected_sum_chain_on_small_pairs() {
        let pairs = [
            (sigma237(), c_n(1)),
            (c_n(2), sigma237().dual()),
            (c_n(1).dual(), c_n(2)),
        ];
        for (a, b) in pairs {
            let ca = correction_terms(&a).unwrap();
            let cb = correction_terms(&b).unwrap();
            let cab = correction_terms(&a.tensor(&b)).unwrap();
            assert!(ca.d_lower + cb.d_lower <= cab.d_lower);
            assert!(cab.d_lower <= ca.d_lower + cb.d_upper);
            assert!(ca.d_lower + cb.d_upper <= cab.d_upper);
            assert!(cab.d_upper <= ca.d_upper + cb.d_upper);
        }
    }
}
