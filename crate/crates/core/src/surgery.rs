//! Negative surgeries on L-space knots: V-sequences and their staircase
//! models, the modules M(V⃗, n) with the reflection involution J₀, the
//! truncated mapping cone computing HF⁻(S³₋ₙ(K), [0]), local-equivalence
//! representatives C_{V₀}, and the closed forms for connected sums.

use crate::graded_roots::{RootError, SymmetricGradedRoot};
use crate::iota_complex::{IotaComplex, IotaError};
use crate::ufu_algebra::{coker_module, GradedModule, Grading, MonomialMatrix, UfuError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("residue {0} is not in 0..{1}")]
    BadResidue(i64, i64),
    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),
    #[error("surgery weights must be sorted non-increasing and positive")]
    Unsorted,
    #[error("truncation unstable: cokernels differ between N = {0} and N = {1}")]
    TruncationUnstable(i64, i64),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Iota(#[from] IotaError),
    #[error(transparent)]
    Ufu(#[from] UfuError),
}

/// d(L(n,1), [i]) = ((2i − n)² − n) / 4n, with the spin^c labeling of
/// n-surgery on the unknot.
pub fn lens_d(n: i64, i: i64) -> Result<Grading, SurgeryError> {
    if n <= 0 {
        return Err(SurgeryError::BadResidue(i, n));
    }
    if i < 0 || i >= n {
        return Err(SurgeryError::BadResidue(i, n));
    }
    Ok(Grading::new((2 * i - n) * (2 * i - n) - n, 4 * n))
}

/// The sequence V₀ ≥ V₁ ≥ … ≥ 0 of surgery correction numbers, extended to
/// all integers by V₋ₛ = Vₛ + s; Hₛ = V₋ₛ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VSequence {
    values: Vec<u64>,
}

impl VSequence {
    pub fn new(mut values: Vec<u64>) -> Result<Self, SurgeryError> {
        if values.windows(2).any(|w| w[1] > w[0]) {
            return Err(SurgeryError::InvalidStaircase(
                "V-sequence must be non-increasing".into(),
            ));
        }
        while values.last() == Some(&0) {
            values.pop();
        }
        Ok(VSequence { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// V_s for any integer s.
    pub fn v(&self, s: i64) -> u64 {
        if s < 0 {
            self.v(-s) + (-s) as u64
        } else {
            self.values.get(s as usize).copied().unwrap_or(0)
        }
    }

    /// H_s = V_s + s = V_{−s}.
    pub fn h(&self, s: i64) -> u64 {
        self.v(-s)
    }

    /// max{s : V_s ≠ 0}; zero for the trivial sequence.
    pub fn genus_bound(&self) -> i64 {
        self.values.len() as i64
    }

    pub fn is_trivial(&self) -> bool {
        self.values.is_empty()
    }
}

/// A staircase: the step-length sequence of an L-space knot's CFK∞
/// staircase, alternating horizontal/vertical, symmetric, all positive.
/// The empty staircase is the unknot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    steps: Vec<u64>,
}

impl Staircase {
    pub fn new(steps: Vec<u64>) -> Result<Self, SurgeryError> {
        if !steps.len().is_multiple_of(2) {
            return Err(SurgeryError::InvalidStaircase(
                "staircase needs an even number of steps".into(),
            ));
        }
        if steps.contains(&0) {
            return Err(SurgeryError::InvalidStaircase(
                "staircase steps must be positive".into(),
            ));
        }
        let k = steps.len();
        for i in 0..k / 2 {
            if steps[i] != steps[k - 1 - i] {
                return Err(SurgeryError::InvalidStaircase(
                    "staircase must be symmetric".into(),
                ));
            }
        }
        Ok(Staircase { steps })
    }

    /// The torus knot T(2, q) for odd q ≥ 1: all steps of length one.
    pub fn torus_2q(q: u64) -> Result<Self, SurgeryError> {
        if q.is_multiple_of(2) || q == 0 {
            return Err(SurgeryError::InvalidStaircase(format!(
                "T(2,{q}) is not a knot with a staircase; q must be odd"
            )));
        }
        Staircase::new(vec![1; (q - 1) as usize])
    }

    pub fn steps(&self) -> &[u64] {
        &self.steps
    }

    /// Seifert genus: the sum of the horizontal steps.
    pub fn genus(&self) -> u64 {
        self.steps.iter().step_by(2).sum()
    }

    /// Staircase corner positions in the (i, j)-plane, from (0, g) to
    /// (g, 0); odd indices are the differential sources.
    fn positions(&self) -> Vec<(i64, i64)> {
        let g = self.genus() as i64;
        let mut pos = vec![(0, g)];
        let (mut x, mut y) = (0, g);
        for (k, &s) in self.steps.iter().enumerate() {
            if k % 2 == 0 {
                x += s as i64;
            } else {
                y -= s as i64;
            }
            pos.push((x, y));
        }
        pos
    }

    /// Relative Maslov gradings of the staircase generators (inner corners
    /// at 0, outer corners at 1); only differences matter downstream.
    fn relative_gradings(len: usize) -> Vec<i64> {
        (0..len).map(|k| (k % 2) as i64).collect()
    }

    /// The subquotient model A⁻_s = C{i ≤ 0, j ≤ s} as a monomial complex,
    /// returning (gradings, differential).
    fn a_complex(&self, s: i64) -> MonomialMatrix {
        let pos = self.positions();
        let rel = Self::relative_gradings(pos.len());
        let pull = |k: usize| -> i64 { std::cmp::max(pos[k].0, pos[k].1 - s) };
        let grs: Vec<Grading> = (0..pos.len())
            .map(|k| Grading::from_int(rel[k] - 2 * pull(k)))
            .collect();
        let mut d = MonomialMatrix::zero(grs.clone(), grs, -1);
        for o in (1..pos.len()).step_by(2) {
            d.set(o - 1, o).expect("staircase arrow admissible");
            d.set(o + 1, o).expect("staircase arrow admissible");
        }
        d
    }

    /// The inclusion v_s: A⁻_s → B⁻ = C{i ≤ 0} as a monomial matrix.
    fn v_map(&self, s: i64) -> MonomialMatrix {
        let pos = self.positions();
        let rel = Self::relative_gradings(pos.len());
        let pull_a = |k: usize| -> i64 { std::cmp::max(pos[k].0, pos[k].1 - s) };
        let a_grs: Vec<Grading> = (0..pos.len())
            .map(|k| Grading::from_int(rel[k] - 2 * pull_a(k)))
            .collect();
        let b_grs: Vec<Grading> = (0..pos.len())
            .map(|k| Grading::from_int(rel[k] - 2 * pos[k].0))
            .collect();
        let mut v = MonomialMatrix::zero(b_grs, a_grs, 0);
        for k in 0..pos.len() {
            v.set(k, k).expect("inclusion is U-power diagonal");
        }
        v
    }
}

/// Read the V-sequence off a staircase by computing, for each s, the image
/// exponent of v_{s,*}: H(A⁻_s) → H(B⁻), both homologies being F[U].
pub fn vs_from_staircase(st: &Staircase) -> Result<VSequence, SurgeryError> {
    if st.steps.is_empty() {
        return VSequence::new(vec![]);
    }
    let g = st.genus() as i64;
    let b_hom = crate::ufu_algebra::HomologyPresentation::new(&st.a_complex(g))?;
    let b_top = free_top(&b_hom, "B-")?;

    let mut values = Vec::new();
    for s in 0..=g {
        let a = st.a_complex(s);
        let pres = crate::ufu_algebra::HomologyPresentation::new(&a)?;
        let _ = free_top(&pres, "A_s")?;
        // v_s is the identity on bit patterns; the image of the A-side free
        // cycle is a nonzero class of H(B) (v_{s,*} is injective for
        // L-space staircases), so V_s is the grading gap.
        let z = &pres.free_generator_cycles()[0].1;
        let image = st.v_map(s).apply(z);
        if b_hom.is_boundary(&image) != Some(false) {
            return Err(SurgeryError::InvalidStaircase(format!(
                "v_{s} kills the localized generator"
            )));
        }
        let diff = b_top.integer_diff(&z.grading).expect("same coset");
        if diff < 0 || diff % 2 != 0 {
            return Err(SurgeryError::InvalidStaircase(format!(
                "image of v_{s} sits above the B-tower top"
            )));
        }
        values.push((diff / 2) as u64);
    }
    VSequence::new(values)
}

fn free_top(
    pres: &crate::ufu_algebra::HomologyPresentation,
    what: &str,
) -> Result<Grading, SurgeryError> {
    let m = pres.module();
    if m.free_rank() != 1 || !m.towers().is_empty() {
        return Err(SurgeryError::InvalidStaircase(format!(
            "{what} model must have homology F[U], got {m}"
        )));
    }
    Ok(m.free_parts()[0])
}

/// The module M(V⃗, n) with its involution, as a symmetric graded root and
/// as a graded module. Generators x_t, x'_t in grading −nt(t+1) − 2 for
/// every t ≥ 0 with V_{nt} ≠ 0, related by
/// U^{V_{nt}} x_t = U^{V_{nt}} x'_t = U^{V_{nt} + nt(t+1)/2} x₀.
pub fn m_module(v: &VSequence, n: i64) -> Result<(SymmetricGradedRoot, GradedModule), SurgeryError> {
    assert!(n > 0, "framing parameter must be positive");
    let grading_of = |t: i64| -> Grading { Grading::from_int(-n * t * (t + 1) - 2) };
    let t_max = (0..)
        .take_while(|&t| v.v(n * t) != 0)
        .last();
    let root = match t_max {
        None => SymmetricGradedRoot::from_leaf_merges(&[Grading::from_int(-2)], &[])?,
        Some(t_max) => {
            let mut leaves = Vec::new();
            let mut merges = Vec::new();
            for t in (1..=t_max).rev() {
                leaves.push(grading_of(t));
                merges.push(grading_of(t).shift(-2 * v.v(n * t) as i64));
            }
            leaves.push(grading_of(0));
            merges.push(Grading::from_int(-2 - 2 * v.v(0) as i64));
            leaves.push(grading_of(0));
            for t in 1..=t_max {
                merges.push(grading_of(t).shift(-2 * v.v(n * t) as i64));
                leaves.push(grading_of(t));
            }
            SymmetricGradedRoot::from_leaf_merges(&leaves, &merges)?
        }
    };
    let (module, _) = root.hminus()?;
    Ok((root, module))
}

/// Result of the truncated-cone computation: the graded module of
/// HF⁻(S³₋ₙ(K), [0]) in absolute gradings, plus the J₀ symmetric root
/// carrying the involution data at the same gradings.
pub struct SurgeryHomology {
    pub module: GradedModule,
    pub root: SymmetricGradedRoot,
    pub truncation: i64,
}

/// Build the truncated mapping cone 𝔠^N for the spin^c structure [0] on
/// S³₋ₙ(K), compute coker D^N on homology, pin gradings through
/// d(L(n,1), ·), and cross-check against M(V⃗, n) and N-stability.
pub fn surgery_homology(
    v: &VSequence,
    n: i64,
    truncation: Option<i64>,
) -> Result<SurgeryHomology, SurgeryError> {
    assert!(n > 0, "negative surgeries only; pass the positive n of -n");
    let n_default = n + v.genus_bound() + 1;
    let big_n = truncation.unwrap_or(n_default).max(n);

    let first = truncated_coker(v, n, big_n)?;
    let second = truncated_coker(v, n, big_n + 1)?;
    if first != second {
        return Err(SurgeryError::TruncationUnstable(big_n, big_n + 1));
    }

    let (root, plain_module) = m_module(v, n)?;
    let shift = lens_d(n, 0)?;
    let shifted_module = plain_module.shifted_by(-shift);
    assert_eq!(
        first, shifted_module,
        "cone cokernel must agree with M(V,n) shifted by d(L(n,1),[0])"
    );
    Ok(SurgeryHomology {
        module: first,
        root: root.shifted_by(-shift),
        truncation: big_n,
    })
}

/// coker D^N on homology for the [0]-subcone: A_t = H(A⁻_{nt}) for
/// |nt| ≤ N, B_t for −N−n ≤ nt ≤ N, D(α_t) = U^{V_{nt}} β_t +
/// U^{H_{nt}} β_{t−1}.
fn truncated_coker(v: &VSequence, n: i64, big_n: i64) -> Result<GradedModule, SurgeryError> {
    let t_a = big_n / n;
    let (b_lo, b_hi) = (-t_a - 1, t_a);
    let shift = lens_d(n, 0)?;
    // gr(β_t) = −nt(t+1) − 2 − d(L(n,1),[0]) for all t (x'_t side for t ≥ 0,
    // x_{−t−1} side for t < 0).
    let beta_grading = |t: i64| -> Grading {
        let m = if t >= 0 { t } else { -t - 1 };
        Grading::from_int(-n * m * (m + 1) - 2) - shift
    };
    let b_range: Vec<i64> = (b_lo..=b_hi).collect();
    let a_range: Vec<i64> = (-t_a..=t_a).collect();
    let b_grs: Vec<Grading> = b_range.iter().map(|&t| beta_grading(t)).collect();
    let a_grs: Vec<Grading> = a_range
        .iter()
        .map(|&t| {
            let e = v.v(n * t) as i64;
            beta_grading(t).shift(-2 * e + 1)
        })
        .collect();
    let mut d = MonomialMatrix::zero(b_grs, a_grs, -1);
    for (col, &t) in a_range.iter().enumerate() {
        let row_v = b_range.iter().position(|&b| b == t).expect("v target");
        let row_h = b_range.iter().position(|&b| b == t - 1).expect("h target");
        d.set(row_v, col).expect("v_s entry admissible");
        d.set(row_h, col).expect("h_s entry admissible");
    }
    // D is injective on homology for L-space V-sequences.
    debug_assert_eq!(d.rank(), a_range.len());
    Ok(coker_module(&d))
}

/// The local-equivalence representative C_{V₀} of S³₋₁ of an L-space knot:
/// x₁, x₂ in grading −2, y in −2V₀−1, ∂y = U^{V₀}(x₁+x₂), ι the swap.
pub fn surgery_local_rep(v0: u32) -> IotaComplex {
    assert!(v0 >= 1);
    let g = Grading::from_int(-2);
    let gy = Grading::from_int(-2 * i64::from(v0) - 1);
    IotaComplex::build(
        &[("x1", g), ("x2", g), ("y", gy)],
        &[("y", "x1"), ("y", "x2")],
        &[("x1", "x2"), ("x2", "x1"), ("y", "y")],
    )
    .expect("C_n is well-formed")
}

/// The complex C_{n₁,…,n_m} (weights sorted non-increasing), locally
/// equivalent to the tensor product of the C_{nᵢ}.
pub fn sum_surgeries_complex(weights: &[u32]) -> Result<IotaComplex, SurgeryError> {
    if weights.is_empty()
        || weights.contains(&0)
        || weights.windows(2).any(|w| w[1] > w[0])
    {
        return Err(SurgeryError::Unsorted);
    }
    let m = weights.len();
    let a = |i: usize| -> i64 { weights[..i].iter().map(|&w| i64::from(w)).sum() };
    let mut gens: Vec<(String, Grading)> = Vec::new();
    for j in 1..=m {
        let g = if j == 1 {
            Grading::from_int(-2)
        } else {
            Grading::from_int(-2 * a(j - 1) + (j as i64 - 3))
        };
        gens.push((format!("x1_{j}"), g));
        gens.push((format!("x2_{j}"), g));
    }
    gens.push((
        "y".to_string(),
        Grading::from_int(-2 * a(m) + m as i64 - 2),
    ));
    let mut d_arrows: Vec<(String, String)> = Vec::new();
    for j in 2..=m {
        for i in ["x1", "x2"] {
            d_arrows.push((format!("{i}_{j}"), format!("x1_{}", j - 1)));
            d_arrows.push((format!("{i}_{j}"), format!("x2_{}", j - 1)));
        }
    }
    d_arrows.push(("y".to_string(), format!("x1_{m}")));
    d_arrows.push(("y".to_string(), format!("x2_{m}")));
    let mut iota_arrows: Vec<(String, String)> = Vec::new();
    for j in 1..=m {
        iota_arrows.push((format!("x1_{j}"), format!("x2_{j}")));
        iota_arrows.push((format!("x2_{j}"), format!("x1_{j}")));
    }
    iota_arrows.push(("y".to_string(), "y".to_string()));

    let gen_refs: Vec<(&str, Grading)> = gens.iter().map(|(s, g)| (s.as_str(), *g)).collect();
    let d_refs: Vec<(&str, &str)> = d_arrows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let i_refs: Vec<(&str, &str)> =
        iota_arrows.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Ok(IotaComplex::build(&gen_refs, &d_refs, &i_refs)?)
}

/// Closed form for the connected homology of # S³₋₁(Kᵢ):
/// ⊕ᵢ 𝒯_{i−2−2a_{i−1}}(nᵢ) with aᵢ the partial sums.
pub fn sum_surgeries_connected(weights: &[u32]) -> Result<GradedModule, SurgeryError> {
    if weights.is_empty()
        || weights.contains(&0)
        || weights.windows(2).any(|w| w[1] > w[0])
    {
        return Err(SurgeryError::Unsorted);
    }
    let mut towers = Vec::new();
    let mut partial: i64 = 0;
    for (idx, &w) in weights.iter().enumerate() {
        let i = idx as i64 + 1;
        towers.push((Grading::from_int(i - 2 - 2 * partial), w));
        partial += i64::from(w);
    }
    Ok(GradedModule::new(vec![], towers))
}

/// Lower bound d̲(S³₋ₙ(K), [0]) ≥ −2V₀ − d(L(n,1),[0]); an equality for
/// L-space knots.
pub fn dunder_lower_bound(v0: u64, n: i64) -> Result<Grading, SurgeryError> {
    Ok(Grading::from_int(-2 * v0 as i64) - lens_d(n, 0)?)
}
