//! Self-local-equivalence search and connected homology.
//!
//! A self-local equivalence is a grading-preserving chain map f: C → C that
//! homotopy-commutes with ι and is an isomorphism after inverting U. These
//! form an affine F₂-space (the solutions of a linear system intersected
//! with one affine locality condition), which always contains the identity.
//! A maximal one — maximal kernel under inclusion — cuts out the connected
//! complex (im f, ι_f), whose reduced homology is the connected homology.
//!
//! The search enumerates the space outright when its dimension is small,
//! and otherwise descends by composing kernel-enlarging members, certifying
//! maximality by exhausting the subspace of members vanishing on ker f.

use crate::involutive::{correction_terms, InvolutiveError};
use crate::iota_complex::{solve_homotopy_equation, IotaComplex, IotaError};
use crate::ufu_algebra::{
    BitMatrix, ColumnVector, GradedModule, Grading, Hnf, HomologyPresentation, MonomialMatrix,
    Solver, UfuError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use thiserror::Error;

/// Exhaustive enumeration is attempted up to this affine dimension
/// (2^20 ≈ 10⁶ candidates), both for the full space and for the
/// certification subspace.
pub const ENUMERATION_CAP: usize = 20;
const GREEDY_RESTARTS: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectedError {
    #[error("search cap exceeded: certification subspace has dimension {0}")]
    SearchCapExceeded(usize),
    #[error(transparent)]
    Iota(#[from] IotaError),
    #[error(transparent)]
    Ufu(#[from] UfuError),
    #[error(transparent)]
    Involutive(#[from] InvolutiveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

/// The affine space of all self-local equivalences of one complex:
/// base point (the identity) plus an F₂ basis of directions.
pub struct SelfLocalSpace {
    base: MonomialMatrix,
    basis: Vec<MonomialMatrix>,
}

impl SelfLocalSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn base(&self) -> &MonomialMatrix {
        &self.base
    }

    pub fn basis(&self) -> &[MonomialMatrix] {
        &self.basis
    }

    /// The member base + Σ coeffs·basis.
    pub fn member(&self, coeffs: u64) -> MonomialMatrix {
        let mut bits = self.base.bits().clone();
        for (i, b) in self.basis.iter().enumerate() {
            if coeffs >> i & 1 == 1 {
                bits.xor_in(b.bits());
            }
        }
        MonomialMatrix::with_bits(
            self.base.row_gradings().to_vec(),
            self.base.col_gradings().to_vec(),
            0,
            bits,
        )
    }

    /// All members; only sensible for small dimensions.
    pub fn enumerate(&self) -> impl Iterator<Item = MonomialMatrix> + '_ {
        (0u64..1 << self.dimension()).map(|c| self.member(c))
    }
}

/// Solve the joint linear system for (f, H): f d + d f = 0 and
/// f ι + ι f + d H + H d = 0, project to f, then slice with the affine
/// locality condition (the induced map keeps the free homology generator's
/// coefficient equal to 1). The identity is always a member.
pub fn admissible_space(a: &IotaComplex) -> Result<SelfLocalSpace, ConnectedError> {
    let n = a.len();
    let grs = a.gradings().to_vec();
    let d = a.differential();
    let iota = a.involution();

    let f_pos = admissible_positions(&grs, 0);
    let h_pos = admissible_positions(&grs, 1);
    let eq1_pos = admissible_positions(&grs, -1);
    let eq2_pos = admissible_positions(&grs, 0);
    let f_index = position_index(&f_pos, n);
    let h_index = position_index(&h_pos, n);
    let nv = f_pos.len() + h_pos.len();

    let mut sys = BitMatrix::zeros(eq1_pos.len() + eq2_pos.len(), nv);
    // (f d + d f)_{rc} = Σ_b f_{rb} d_{bc} + Σ_a d_{ra} f_{ac}
    for (ei, &(r, c)) in eq1_pos.iter().enumerate() {
        for b in 0..n {
            if d.get(b, c) {
                if let Some(v) = f_index[r * n + b] {
                    sys.flip(ei, v);
                }
            }
        }
        for aa in 0..n {
            if d.get(r, aa) {
                if let Some(v) = f_index[aa * n + c] {
                    sys.flip(ei, v);
                }
            }
        }
    }
    // (f ι + ι f + d H + H d)_{rc}
    let off = eq1_pos.len();
    let nf = f_pos.len();
    for (ei, &(r, c)) in eq2_pos.iter().enumerate() {
        for b in 0..n {
            if iota.get(b, c) {
                if let Some(v) = f_index[r * n + b] {
                    sys.flip(off + ei, v);
                }
            }
            if d.get(b, c) {
                if let Some(v) = h_index[r * n + b] {
                    sys.flip(off + ei, nf + v);
                }
            }
        }
        for aa in 0..n {
            if iota.get(r, aa) {
                if let Some(v) = f_index[aa * n + c] {
                    sys.flip(off + ei, v);
                }
            }
            if d.get(r, aa) {
                if let Some(v) = h_index[aa * n + c] {
                    sys.flip(off + ei, nf + v);
                }
            }
        }
    }

    // Nullspace, projected to the f block and re-echelonized.
    let kernel = sys.kernel();
    let mut projected: Vec<Vec<bool>> = kernel.into_iter().map(|v| v[..nf].to_vec()).collect();
    let directions = echelonize(&mut projected);

    // Locality functional: the free-part coefficient of [f·z].
    let pres = HomologyPresentation::new(d)?;
    let frees = pres.free_generator_cycles();
    if frees.len() != 1 {
        return Err(ConnectedError::Iota(IotaError::NotLocal(frees.len())));
    }
    let z = &frees[0].1;
    let lambda = |dir: &[bool]| -> bool {
        let m = matrix_from_f_bits(&grs, &f_pos, dir);
        let image = m.apply(z);
        pres.free_coordinates(&image).expect("f z is a cycle")[0]
    };

    // Split directions into λ = 0 (kept) and pick one λ = 1 pivot to fold.
    let mut null_dirs = Vec::new();
    let mut unit_dir: Option<Vec<bool>> = None;
    for dir in directions {
        if lambda(&dir) {
            match &unit_dir {
                None => unit_dir = Some(dir),
                Some(u) => {
                    let folded: Vec<bool> = dir.iter().zip(u).map(|(a, b)| a ^ b).collect();
                    null_dirs.push(folded);
                }
            }
        } else {
            null_dirs.push(dir);
        }
    }
    let directions = echelonize(&mut null_dirs);

    let basis: Vec<MonomialMatrix> = directions
        .iter()
        .map(|dir| matrix_from_f_bits(&grs, &f_pos, dir))
        .collect();
    Ok(SelfLocalSpace {
        base: MonomialMatrix::identity(grs),
        basis,
    })
}

fn admissible_positions(grs: &[Grading], degree: i64) -> Vec<(usize, usize)> {
    let n = grs.len();
    let probe = MonomialMatrix::zero(grs.to_vec(), grs.to_vec(), degree);
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if probe.exponent(r, c).is_some() {
                out.push((r, c));
            }
        }
    }
    out
}

fn position_index(pos: &[(usize, usize)], n: usize) -> Vec<Option<usize>> {
    let mut idx = vec![None; n * n];
    for (v, &(r, c)) in pos.iter().enumerate() {
        idx[r * n + c] = Some(v);
    }
    idx
}

fn matrix_from_f_bits(grs: &[Grading], f_pos: &[(usize, usize)], bits: &[bool]) -> MonomialMatrix {
    let mut m = MonomialMatrix::zero(grs.to_vec(), grs.to_vec(), 0);
    for (v, &(r, c)) in f_pos.iter().enumerate() {
        if bits[v] {
            m.set(r, c).expect("admissible by construction");
        }
    }
    m
}

/// Row-echelonize a set of F₂ vectors in place, dropping zero rows;
/// returns the reduced basis.
fn echelonize(rows: &mut Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let mut basis: Vec<Vec<bool>> = Vec::new();
    'outer: for row in rows.drain(..) {
        let mut row = row;
        loop {
            let Some(lead) = row.iter().position(|&b| b) else {
                continue 'outer;
            };
            match basis.iter().find(|b| b.iter().position(|&x| x) == Some(lead)) {
                None => {
                    basis.push(row);
                    continue 'outer;
                }
                Some(b) => {
                    let b = b.clone();
                    for (x, y) in row.iter_mut().zip(&b) {
                        *x ^= y;
                    }
                }
            }
        }
    }
    basis.sort_by_key(|b| b.iter().position(|&x| x));
    basis
}

/// A self-local equivalence with its cached kernel and a homotopy witness
/// for f∘ι ≃ ι∘f.
pub struct SelfLocalEquivalence {
    pub matrix: MonomialMatrix,
    pub kernel: Hnf,
    pub homotopy: MonomialMatrix,
}

pub struct MaximalSearch {
    pub equivalence: SelfLocalEquivalence,
    /// True when maximality was certified by exhausting the relevant
    /// (sub)space; a greedy fixed point alone is never reported certified.
    pub certified: bool,
    pub space_dimension: usize,
}

/// Find a maximal self-local equivalence.
///
/// Exhaustive mode enumerates the whole space when its dimension is within
/// the cap, which certifies by construction; above the cap it degrades to
/// the deterministic descent. Greedy mode descends from seeded random
/// members (64 restarts). Both finish with the certification pass:
/// exhaust {g : g·ker f = 0} and accept only if no member enlarges the
/// kernel, improving f and repeating whenever one does.
pub fn maximal_self_local_equivalence(
    a: &IotaComplex,
    mode: SearchMode,
    seed: u64,
) -> Result<MaximalSearch, ConnectedError> {
    let space = admissible_space(a)?;
    let dim = space.dimension();
    let n = a.len();

    let mut best: MonomialMatrix;
    let mut certified_by_enumeration = false;
    if mode == SearchMode::Exhaustive && dim <= ENUMERATION_CAP {
        best = enumerate_max_kernel(&space, None);
        certified_by_enumeration = true;
    } else {
        best = descend(&space, a, mode, seed);
    }
    // Power-stabilize so that f restricted to its image is invertible
    // (per-grading Fitting decompositions settle by the n-th power), and
    // pick up any kernel growth from the squaring for free.
    best = stabilize(&best, n);

    // Certification / improvement loop.
    let mut certified = certified_by_enumeration;
    if !certified {
        loop {
            let kernel = best.kernel_basis();
            if kernel.rank() == n {
                unreachable!("self-local equivalence cannot vanish");
            }
            match certification_subspace(&space, &kernel) {
                None => break, // cap exceeded: leave uncertified
                Some(sub) => {
                    let candidate = enumerate_max_kernel(&sub, Some(&best));
                    if candidate.rank() < best.rank() {
                        best = stabilize(&candidate, n);
                        continue;
                    }
                    certified = true;
                    break;
                }
            }
        }
    }

    let kernel = best.kernel_basis();
    let target = best
        .compose(a.involution())
        .add(&a.involution().compose(&best));
    let homotopy = solve_homotopy_equation(a.differential(), &target)
        .expect("members homotopy-commute with iota by construction");
    Ok(MaximalSearch {
        equivalence: SelfLocalEquivalence {
            matrix: best,
            kernel,
            homotopy,
        },
        certified,
        space_dimension: dim,
    })
}

/// Enumerate an affine space of candidate maps and return the member with
/// maximal kernel, deterministically: smallest matrix rank first, then
/// lexicographically smallest kernel echelon basis, then smallest
/// coefficient vector. `at_least` short-circuits kernels that cannot beat
/// an existing candidate.
fn enumerate_max_kernel(space: &SelfLocalSpace, at_least: Option<&MonomialMatrix>) -> MonomialMatrix {
    let dim = space.dimension();
    assert!(dim <= ENUMERATION_CAP, "enumeration beyond cap");
    let total: u64 = 1 << dim;
    let chunk: u64 = 1 << dim.saturating_sub(6).min(14);

    let best = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|block| {
            let start = block * chunk;
            let end = (start + chunk).min(total);
            let mut acc = space.member(gray(start));
            let mut local_best: Option<(usize, u64)> = None;
            for i in start..end {
                if i != start {
                    let flip = (i.trailing_zeros()) as usize;
                    let mut bits = acc.bits().clone();
                    bits.xor_in(space.basis()[flip].bits());
                    acc = MonomialMatrix::with_bits(
                        acc.row_gradings().to_vec(),
                        acc.col_gradings().to_vec(),
                        0,
                        bits,
                    );
                }
                let r = acc.rank();
                if local_best.is_none_or(|(br, _)| r < br) {
                    local_best = Some((r, gray(i)));
                }
            }
            local_best.expect("nonempty block")
        })
        .reduce_with(|a, b| if (a.0, a.1) <= (b.0, b.1) { a } else { b })
        .expect("nonempty space");

    // Collect all coefficient vectors achieving the minimal rank, then
    // apply the kernel-lexicographic tie-break.
    let min_rank = best.0.min(at_least.map_or(usize::MAX, |m| m.rank()));
    let winners: Vec<u64> = (0..total)
        .into_par_iter()
        .map(gray)
        .filter(|&c| space.member(c).rank() == min_rank)
        .collect();
    let mut chosen: Option<(Vec<(usize, u32)>, Vec<Vec<bool>>, u64, MonomialMatrix)> = None;
    for c in winners {
        let m = space.member(c);
        if let Some((_, _, _, prev)) = &chosen {
            // Same kernel as the current choice? Then only the coefficient
            // order matters, and lower c would have come earlier only if
            // kernels differ; skip the expensive HNF when spans agree.
            let prev_kernel = prev.kernel_basis();
            if m.compose(&prev_kernel.as_matrix()).is_zero() {
                continue;
            }
        }
        let k = m.kernel_basis();
        let key = k.lex_key();
        let replace = match &chosen {
            None => true,
            Some((pk, pv, pc, _)) => (&key.0, &key.1, c) < (pk, pv, *pc),
        };
        if replace {
            chosen = Some((key.0, key.1, c, m));
        }
    }
    match chosen {
        Some((_, _, _, m)) => m,
        None => at_least.expect("space contains its base point").clone(),
    }
}

fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// f^K for K ≥ max(n, 2), by repeated squaring. Past that power the
/// per-grading Fitting decompositions have stabilized, so the result is
/// injective and surjective on its own image — and its kernel contains
/// ker f, making this a free improvement move as well.
fn stabilize(f: &MonomialMatrix, n: usize) -> MonomialMatrix {
    let mut g = f.clone();
    let mut k = 1usize;
    while k < n.max(2) {
        g = g.compose(&g);
        k *= 2;
    }
    g
}

/// Deterministic-or-seeded descent: compose kernel-enlarging members onto
/// the current candidate until no tried candidate improves it.
fn descend(space: &SelfLocalSpace, a: &IotaComplex, mode: SearchMode, seed: u64) -> MonomialMatrix {
    let dim = space.dimension();
    let n = a.len();
    let mut overall: Option<(usize, MonomialMatrix)> = None;

    let consider = |f: MonomialMatrix, overall: &mut Option<(usize, MonomialMatrix)>| {
        let f = stabilize(&f, n);
        let r = f.rank();
        if overall.as_ref().is_none_or(|(br, _)| r < *br) {
            *overall = Some((r, f));
        }
    };

    // Deterministic sweep from the identity: single directions with a
    // stabilization step between passes, repeated until stable.
    let mut f = space.base().clone();
    let mut f_rank = f.rank();
    loop {
        let mut improved = false;
        for b in space.basis() {
            let mut bits = space.base().bits().clone();
            bits.xor_in(b.bits());
            let g = MonomialMatrix::with_bits(
                f.row_gradings().to_vec(),
                f.col_gradings().to_vec(),
                0,
                bits,
            );
            let gf = g.compose(&f);
            let r = gf.rank();
            if r < f_rank {
                f = gf;
                f_rank = r;
                improved = true;
            }
        }
        let squared = stabilize(&f, n);
        let r = squared.rank();
        if r < f_rank {
            f = squared;
            f_rank = r;
            improved = true;
        }
        if !improved {
            break;
        }
    }
    consider(f, &mut overall);

    if mode == SearchMode::Greedy && n > 0 && dim > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let budget = 192 + dim / 4;
        for _restart in 0..GREEDY_RESTARTS {
            let mut f = stabilize(&random_member(&mut rng, space), n);
            let mut f_rank = f.rank();
            let mut stale = 0;
            while stale < budget {
                let g = random_member(&mut rng, space);
                let gf = stabilize(&g.compose(&f), n);
                let r = gf.rank();
                if r < f_rank {
                    f = gf;
                    f_rank = r;
                    stale = 0;
                } else {
                    stale += 1;
                }
            }
            consider(f, &mut overall);
        }
    }

    overall.expect("descent always yields a candidate").1
}

/// A random member: the base point plus a few basis directions, with an
/// occasional denser draw to escape sparse-move plateaus.
fn random_member(rng: &mut ChaCha8Rng, space: &SelfLocalSpace) -> MonomialMatrix {
    let dim = space.dimension();
    let picks = if rng.gen_bool(0.25) {
        (dim / 8).clamp(1, 48)
    } else {
        rng.gen_range(1..=4usize.min(dim))
    };
    let mut bits = space.base().bits().clone();
    for _ in 0..picks {
        let i = rng.gen_range(0..dim);
        bits.xor_in(space.basis()[i].bits());
    }
    MonomialMatrix::with_bits(
        space.base().row_gradings().to_vec(),
        space.base().col_gradings().to_vec(),
        0,
        bits,
    )
}

/// The affine subspace {g in the space : g·K = 0}, i.e. all members whose
/// kernel contains the span of K. Returns `None` when its dimension
/// exceeds the enumeration cap (certification impossible at desk scale).
fn certification_subspace(space: &SelfLocalSpace, kernel: &Hnf) -> Option<SelfLocalSpace> {
    let dim = space.dimension();
    let k = kernel.as_matrix();
    if kernel.rank() == 0 {
        // No constraint: the subspace is the whole space.
        return if dim <= ENUMERATION_CAP {
            Some(SelfLocalSpace {
                base: space.base.clone(),
                basis: space.basis.clone(),
            })
        } else {
            None
        };
    }
    let rows = space.base.nrows() * kernel.rank();
    let mut sys = BitMatrix::zeros(rows, dim);
    let mut rhs = vec![false; rows];
    let base_k = space.base.compose(&k);
    for r in 0..base_k.nrows() {
        for c in 0..base_k.ncols() {
            if base_k.get(r, c) {
                rhs[r * kernel.rank() + c] = true;
            }
        }
    }
    for (i, b) in space.basis.iter().enumerate() {
        let bk = b.compose(&k);
        for r in 0..bk.nrows() {
            for c in 0..bk.ncols() {
                if bk.get(r, c) {
                    sys.set(r * kernel.rank() + c, i, true);
                }
            }
        }
    }
    let particular = sys.solve(&rhs)?;
    let null = sys.kernel();
    if null.len() > ENUMERATION_CAP {
        return None;
    }
    // Base: space base + particular combination; basis: null directions.
    let mut bits = space.base.bits().clone();
    for (i, b) in space.basis.iter().enumerate() {
        if particular[i] {
            bits.xor_in(b.bits());
        }
    }
    let base = MonomialMatrix::with_bits(
        space.base.row_gradings().to_vec(),
        space.base.col_gradings().to_vec(),
        0,
        bits,
    );
    let basis = null
        .iter()
        .map(|dir| {
            let mut bits = BitMatrix::zeros(space.base.nrows(), space.base.ncols());
            for (i, b) in space.basis.iter().enumerate() {
                if dir[i] {
                    bits.xor_in(b.bits());
                }
            }
            MonomialMatrix::with_bits(
                space.base.row_gradings().to_vec(),
                space.base.col_gradings().to_vec(),
                0,
                bits,
            )
        })
        .collect();
    Some(SelfLocalSpace { base, basis })
}

/// Like [`maximal_self_local_equivalence`], but demands a certificate:
/// errors with `SearchCapExceeded` when neither enumeration nor the
/// certification subspace fits under the cap.
pub fn certified_maximal_self_local_equivalence(
    a: &IotaComplex,
    mode: SearchMode,
    seed: u64,
) -> Result<MaximalSearch, ConnectedError> {
    let search = maximal_self_local_equivalence(a, mode, seed)?;
    if !search.certified {
        return Err(ConnectedError::SearchCapExceeded(search.space_dimension));
    }
    Ok(search)
}

/// The connected complex (im f, ι_f) of a maximal self-local equivalence,
/// with provenance.
pub struct ConnectedComplex {
    pub complex: IotaComplex,
    pub certified: bool,
    pub search: MaximalSearch,
}

/// Compute the connected complex: an echelon basis of im f, the restricted
/// differential, and ι_f = f∘ι∘(f|_{im f})⁻¹, validated as an ι-complex.
pub fn connected_complex(
    a: &IotaComplex,
    mode: SearchMode,
    seed: u64,
) -> Result<ConnectedComplex, ConnectedError> {
    let search = maximal_self_local_equivalence(a, mode, seed)?;
    let f = &search.equivalence.matrix;

    let image_cols: Vec<ColumnVector> = (0..f.ncols()).map(|c| f.column(c)).collect();
    let image = Hnf::from_columns(f.row_gradings().to_vec(), &image_cols);
    let ki = image.as_matrix();
    let ki_solver = Solver::new(ki.clone());

    // d restricted to im f: solve Ki · D = d · Ki.
    let d_im = ki_solver
        .solve_matrix(&a.differential().compose(&ki))
        .expect("im f is a subcomplex");
    // ι_f columnwise: preimage through f|_{im f}, then f∘ι, back in Ki coords.
    let f_ki = f.compose(&ki);
    let f_ki_solver = Solver::new(f_ki);
    let mut iota_cols = Vec::with_capacity(ki.ncols());
    for j in 0..ki.ncols() {
        let b_j = ki.column(j);
        let y = f_ki_solver
            .solve(&b_j)
            .expect("f restricted to its image is injective for maximal f");
        let v = f.apply(&a.involution().apply(&ki.apply(&y)));
        let z = ki_solver
            .solve(&v)
            .expect("iota_f lands in im f");
        iota_cols.push(z);
    }
    let iota_im = MonomialMatrix::from_columns(ki.col_gradings().to_vec(), 0, &iota_cols);

    let names = (0..ki.ncols()).map(|i| format!("c{i}")).collect();
    let complex = IotaComplex::from_parts(names, d_im, iota_im)?;
    complex.ensure_valid()?;
    Ok(ConnectedComplex {
        complex,
        certified: search.certified,
        search,
    })
}

/// Connected homology: torsion towers of H_*(im f), gradings shifted up
/// by one. The flag reports whether maximality was certified.
pub fn connected_homology_with_certificate(
    a: &IotaComplex,
    mode: SearchMode,
    seed: u64,
) -> Result<(GradedModule, bool), ConnectedError> {
    let conn = connected_complex(a, mode, seed)?;
    let h = conn.complex.homology()?;
    Ok((h.torsion().shifted_up(1), conn.certified))
}

/// Connected homology with the default exhaustive search.
pub fn connected_homology(a: &IotaComplex) -> Result<GradedModule, ConnectedError> {
    connected_homology_with_certificate(a, SearchMode::Exhaustive, 0).map(|(m, _)| m)
}

/// ω: the minimal n with Uⁿ·H_conn = 0, i.e. the longest tower.
pub fn omega(a: &IotaComplex) -> Result<u32, ConnectedError> {
    Ok(connected_homology(a)?.max_tower_length())
}

/// A set of permitted tower lengths: finite, or all of ℕ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerLengthSet {
    Finite(BTreeSet<u32>),
    All,
}

impl TowerLengthSet {
    pub fn contains(&self, n: u32) -> bool {
        match self {
            TowerLengthSet::Finite(s) => s.contains(&n),
            TowerLengthSet::All => true,
        }
    }
}

/// Membership in the filtration family F_P: every connected-homology tower
/// length lies in P.
pub fn filtration_member(a: &IotaComplex, p: &TowerLengthSet) -> Result<bool, ConnectedError> {
    if matches!(p, TowerLengthSet::All) {
        return Ok(true);
    }
    let h = connected_homology(a)?;
    Ok(h.towers().iter().all(|&(_, n)| p.contains(n)))
}

/// The two sufficient conditions for infinite order in the homology
/// cobordism group, checked on the ι-complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfiniteOrderVerdict {
    /// dim_F H_conn = 1; reports the dichotomy of the deviating side.
    RankOneCase {
        element_grading: Grading,
        also_d_negative: bool,
        dichotomy: RankOneDichotomy,
    },
    /// Every reduced tower top sits strictly below d and d̲ < d.
    DNegativeCase,
    Inconclusive,
}

/// Which correction term deviates in the one-dimensional case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankOneDichotomy {
    /// element in grading d − 1, with d = d̄ = d̲ + 2
    LowerDeviates,
    /// element in grading d, with d = d̲ = d̄ − 2
    UpperDeviates,
}

pub fn infinite_order_certificate(
    a: &IotaComplex,
) -> Result<InfiniteOrderVerdict, ConnectedError> {
    let ct = correction_terms(a)?;
    let h = a.homology()?;
    let d_negative = h.towers().iter().all(|&(top, _)| top < ct.d) && ct.d_lower < ct.d;

    let conn = connected_homology(a)?;
    if conn.torsion_dim() == 1 {
        let (top, _) = conn.towers()[0];
        let dichotomy = if ct.d_upper == ct.d && ct.d_lower == ct.d.shift(-2) {
            RankOneDichotomy::LowerDeviates
        } else {
            RankOneDichotomy::UpperDeviates
        };
        return Ok(InfiniteOrderVerdict::RankOneCase {
            element_grading: top,
            also_d_negative: d_negative,
            dichotomy,
        });
    }
    if d_negative && !conn.is_zero() {
        return Ok(InfiniteOrderVerdict::DNegativeCase);
    }
    Ok(InfiniteOrderVerdict::Inconclusive)
}
