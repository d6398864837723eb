//! ι-complexes: finitely generated ℚ-graded free chain complexes over
//! F₂[U] with localized homology of rank one, carrying a grading-preserving
//! chain involution ι with ι² homotopic to the identity.
//!
//! These form a group under tensor product (connected sum) with inverse
//! given by duality; the operations here are the group structure plus a
//! minimal-model reduction and the d invariant.

use crate::ufu_algebra::{
    check_single_coset, homology, ColumnVector, GradedModule, Grading, HomologyPresentation,
    MonomialMatrix, UfuError,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IotaError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("complex failed validation: {0}")]
    Invalid(String),
    #[error("localized homology has free rank {0}, expected 1")]
    NotLocal(usize),
    #[error(transparent)]
    Ufu(#[from] UfuError),
}

/// One named failure of an ι-complex invariant, with a witness where a
/// witness makes sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    /// d² ≠ 0; witness generators (source, target).
    NotAComplex { from: String, to: String },
    /// gradings span more than one ℤ-coset.
    MixedCoset { a: Grading, b: Grading },
    /// ι∘d ≠ d∘ι; witness generators (source, target).
    IotaNotChainMap { from: String, to: String },
    /// no homotopy H with ι² + id = dH + Hd exists.
    IotaSquareNotHomotopicToIdentity,
    /// U⁻¹H_* has free rank ≠ 1.
    NotLocal { free_rank: usize },
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationFailure::NotAComplex { from, to } => {
                write!(f, "d^2 != 0 (witness {} -> {})", from, to)
            }
            ValidationFailure::MixedCoset { a, b } => {
                write!(f, "gradings {} and {} lie in different Z-cosets", a, b)
            }
            ValidationFailure::IotaNotChainMap { from, to } => {
                write!(f, "iota.d != d.iota (witness {} -> {})", from, to)
            }
            ValidationFailure::IotaSquareNotHomotopicToIdentity => {
                write!(f, "iota^2 is not homotopic to the identity")
            }
            ValidationFailure::NotLocal { free_rank } => {
                write!(f, "localized homology has rank {} instead of 1", free_rank)
            }
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A free graded complex over F₂[U] with involution. The differential has
/// degree −1 and ι degree 0; both are stored as strict maps (ι must be an
/// honest chain map, which always represents the homotopy class).
#[derive(Clone, PartialEq, Eq)]
pub struct IotaComplex {
    names: Vec<String>,
    d: MonomialMatrix,
    iota: MonomialMatrix,
}

impl IotaComplex {
    pub fn from_parts(
        names: Vec<String>,
        d: MonomialMatrix,
        iota: MonomialMatrix,
    ) -> Result<Self, IotaError> {
        let n = names.len();
        if d.nrows() != n || d.ncols() != n || iota.nrows() != n || iota.ncols() != n {
            return Err(IotaError::Shape("matrices must be n x n".into()));
        }
        if d.row_gradings() != d.col_gradings()
            || iota.row_gradings() != iota.col_gradings()
            || d.row_gradings() != iota.row_gradings()
        {
            return Err(IotaError::Shape("grading vectors disagree".into()));
        }
        if d.degree() != -1 || iota.degree() != 0 {
            return Err(IotaError::Shape(
                "d must have degree -1 and iota degree 0".into(),
            ));
        }
        Ok(IotaComplex { names, d, iota })
    }

    /// Convenience constructor from generator/arrow lists. Arrows are
    /// (from, to) generator names; the U-exponents are grading-forced.
    pub fn build(
        gens: &[(&str, Grading)],
        d_arrows: &[(&str, &str)],
        iota_arrows: &[(&str, &str)],
    ) -> Result<Self, IotaError> {
        let names: Vec<String> = gens.iter().map(|(n, _)| n.to_string()).collect();
        let gradings: Vec<Grading> = gens.iter().map(|&(_, g)| g).collect();
        let idx = |name: &str| -> Result<usize, IotaError> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| IotaError::Shape(format!("unknown generator {name}")))
        };
        let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
        for &(from, to) in d_arrows {
            d.set(idx(to)?, idx(from)?)
                .map_err(|_| IotaError::Shape(format!("d arrow {from} -> {to} inadmissible")))?;
        }
        let mut iota = MonomialMatrix::zero(gradings.clone(), gradings, 0);
        for &(from, to) in iota_arrows {
            iota.set(idx(to)?, idx(from)?)
                .map_err(|_| IotaError::Shape(format!("iota arrow {from} -> {to} inadmissible")))?;
        }
        IotaComplex::from_parts(names, d, iota)
    }

    /// The group identity: one generator in grading −2 with ι = id.
    pub fn identity() -> Self {
        let g = vec![Grading::from_int(-2)];
        IotaComplex {
            names: vec!["u".to_string()],
            d: MonomialMatrix::zero(g.clone(), g.clone(), -1),
            iota: MonomialMatrix::identity(g),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gradings(&self) -> &[Grading] {
        self.d.row_gradings()
    }

    pub fn differential(&self) -> &MonomialMatrix {
        &self.d
    }

    pub fn involution(&self) -> &MonomialMatrix {
        &self.iota
    }

    /// Check every ι-complex invariant, reporting each failure by name.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let grs = self.gradings();

        if let Err(UfuError::MixedCoset(a, b)) = check_single_coset(grs) {
            failures.push(ValidationFailure::MixedCoset { a, b });
        }

        let dd = self.d.compose(&self.d);
        'dd: for c in 0..dd.ncols() {
            for r in 0..dd.nrows() {
                if dd.get(r, c) {
                    failures.push(ValidationFailure::NotAComplex {
                        from: self.names[c].clone(),
                        to: self.names[r].clone(),
                    });
                    break 'dd;
                }
            }
        }

        let comm = self.iota.compose(&self.d).add(&self.d.compose(&self.iota));
        'comm: for c in 0..comm.ncols() {
            for r in 0..comm.nrows() {
                if comm.get(r, c) {
                    failures.push(ValidationFailure::IotaNotChainMap {
                        from: self.names[c].clone(),
                        to: self.names[r].clone(),
                    });
                    break 'comm;
                }
            }
        }

        if failures.is_empty() {
            let target = self
                .iota
                .compose(&self.iota)
                .add(&MonomialMatrix::identity(grs.to_vec()));
            if solve_homotopy_equation(&self.d, &target).is_none() {
                failures.push(ValidationFailure::IotaSquareNotHomotopicToIdentity);
            }
            match homology(&self.d) {
                Ok(h) => {
                    if h.free_rank() != 1 {
                        failures.push(ValidationFailure::NotLocal {
                            free_rank: h.free_rank(),
                        });
                    }
                }
                Err(_) => unreachable!("d^2 and coset already checked"),
            }
        }

        ValidationReport { failures }
    }

    pub fn ensure_valid(&self) -> Result<(), IotaError> {
        let report = self.validate();
        match report.failures.first() {
            None => Ok(()),
            Some(ValidationFailure::NotLocal { free_rank }) => {
                Err(IotaError::NotLocal(*free_rank))
            }
            Some(f) => Err(IotaError::Invalid(f.to_string())),
        }
    }

    pub fn homology(&self) -> Result<GradedModule, IotaError> {
        Ok(homology(&self.d)?)
    }

    pub fn homology_presentation(&self) -> Result<HomologyPresentation, IotaError> {
        Ok(HomologyPresentation::new(&self.d)?)
    }

    /// d invariant: the top grading of the unique free homology summand,
    /// plus 2.
    pub fn d_invariant(&self) -> Result<Grading, IotaError> {
        let h = self.homology()?;
        if h.free_rank() != 1 {
            return Err(IotaError::NotLocal(h.free_rank()));
        }
        Ok(h.free_parts()[0].shift(2))
    }

    /// Tensor product over F₂[U] with the connected-sum grading shift:
    /// gr(a⊗b) = gr(a) + gr(b) + 2, d = d⊗1 + 1⊗d, ι = ι⊗ι'.
    /// Generators are ordered row-major in (self index, other index).
    pub fn tensor(&self, other: &IotaComplex) -> IotaComplex {
        let (na, nb) = (self.len(), other.len());
        let mut names = Vec::with_capacity(na * nb);
        let mut gradings = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                names.push(format!("{}⊗{}", self.names[i], other.names[j]));
                gradings.push(self.gradings()[i] + other.gradings()[j] + Grading::from_int(2));
            }
        }
        let pair = |i: usize, j: usize| i * nb + j;

        let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
        let mut iota = MonomialMatrix::zero(gradings.clone(), gradings, 0);
        for i in 0..na {
            for j in 0..nb {
                let col = pair(i, j);
                // d ⊗ 1
                for r in 0..na {
                    if self.d.get(r, i) {
                        d.set(pair(r, j), col).expect("tensor entry admissible");
                    }
                }
                // 1 ⊗ d (no signs over F₂)
                for s in 0..nb {
                    if other.d.get(s, j) {
                        d.set(pair(i, s), col).expect("tensor entry admissible");
                    }
                }
                // ι ⊗ ι'
                for r in 0..na {
                    if self.iota.get(r, i) {
                        for s in 0..nb {
                            if other.iota.get(s, j) {
                                iota.set(pair(r, s), col).expect("tensor entry admissible");
                            }
                        }
                    }
                }
            }
        }
        IotaComplex { names, d, iota }
    }

    /// Orientation reversal: transpose d and ι, regrade x* in −gr(x) − 4.
    pub fn dual(&self) -> IotaComplex {
        let n = self.len();
        let names = self
            .names
            .iter()
            .map(|s| format!("{s}*"))
            .collect::<Vec<_>>();
        let gradings: Vec<Grading> = self
            .gradings()
            .iter()
            .map(|g| -*g - Grading::from_int(4))
            .collect();
        let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
        let mut iota = MonomialMatrix::zero(gradings.clone(), gradings, 0);
        for r in 0..n {
            for c in 0..n {
                if self.d.get(r, c) {
                    d.set(c, r).expect("dual differential entry admissible");
                }
                if self.iota.get(r, c) {
                    iota.set(c, r).expect("dual involution entry admissible");
                }
            }
        }
        IotaComplex { names, d, iota }
    }

    /// Homological-perturbation reduction to a minimal model: cancels
    /// exponent-0 differential entries until im(d) ⊆ U·C, transporting ι
    /// through each cancellation. Invariants downstream are unchanged.
    ///
    /// Cancellation order: source grading descending, then source index,
    /// then target index.
    pub fn reduce(&self) -> IotaComplex {
        let mut cur = self.clone();
        loop {
            let mut unit: Option<(usize, usize)> = None; // (target r, source c)
            for c in 0..cur.len() {
                for r in 0..cur.len() {
                    if cur.d.get(r, c) && cur.d.exponent(r, c) == Some(0) {
                        let better = match unit {
                            None => true,
                            Some((br, bc)) => {
                                let key = (std::cmp::Reverse(cur.gradings()[c]), c, r);
                                let bkey = (std::cmp::Reverse(cur.gradings()[bc]), bc, br);
                                key < bkey
                            }
                        };
                        if better {
                            unit = Some((r, c));
                        }
                    }
                }
            }
            let Some((r, c)) = unit else {
                return cur;
            };
            cur = cur.cancel_pair(r, c);
        }
    }

    /// One Gaussian cancellation of the acyclic pair ∂(gen c) = gen r + ...
    /// with unit coefficient.
    fn cancel_pair(&self, r: usize, c: usize) -> IotaComplex {
        debug_assert_eq!(self.d.exponent(r, c), Some(0));
        debug_assert!(self.d.get(r, c));
        let n = self.len();
        let grs = self.gradings().to_vec();

        // h: degree +1, h(gen r) = gen c.
        let mut h = MonomialMatrix::zero(grs.clone(), grs.clone(), 1);
        h.set(c, r).expect("cancellation homotopy admissible");

        let kept: Vec<usize> = (0..n).filter(|&i| i != r && i != c).collect();
        let kept_names: Vec<String> = kept.iter().map(|&i| self.names[i].clone()).collect();
        let kept_grs: Vec<Grading> = kept.iter().map(|&i| grs[i]).collect();

        // Inclusion C' -> C: z ↦ z + h(dz); projection C -> C': 1 + dh, rows kept.
        let one = MonomialMatrix::identity(grs.clone());
        let incl_full = one.add(&h.compose(&self.d));
        let proj_full = one.add(&self.d.compose(&h));

        let mut incl = MonomialMatrix::zero(grs.clone(), kept_grs.clone(), 0);
        for (j, &z) in kept.iter().enumerate() {
            for row in 0..n {
                if incl_full.get(row, z) {
                    incl.set(row, j).expect("inclusion admissible");
                }
            }
        }
        let mut proj = MonomialMatrix::zero(kept_grs.clone(), grs, 0);
        for (i, &z) in kept.iter().enumerate() {
            for col in 0..n {
                if proj_full.get(z, col) {
                    proj.set(i, col).expect("projection admissible");
                }
            }
        }

        let d_new = proj.compose(&self.d).compose(&incl);
        let iota_new = proj.compose(&self.iota).compose(&incl);
        debug_assert!(d_new.compose(&d_new).is_zero());
        IotaComplex {
            names: kept_names,
            d: d_new,
            iota: iota_new,
        }
    }
}

impl std::fmt::Debug for IotaComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IotaComplex ({} generators)", self.len())?;
        for (i, name) in self.names.iter().enumerate() {
            write!(f, "  {} [{}]: d -> ", name, self.gradings()[i])?;
            for r in 0..self.len() {
                if self.d.get(r, i) {
                    write!(f, "U^{}·{} ", self.d.exponent(r, i).unwrap(), self.names[r])?;
                }
            }
            write!(f, "; iota -> ")?;
            for r in 0..self.len() {
                if self.iota.get(r, i) {
                    write!(
                        f,
                        "U^{}·{} ",
                        self.iota.exponent(r, i).unwrap(),
                        self.names[r]
                    )?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Solve d∘H + H∘d = target for H of degree target.degree() + 1.
/// Returns a deterministic solution or `None`.
pub fn solve_homotopy_equation(
    d: &MonomialMatrix,
    target: &MonomialMatrix,
) -> Option<MonomialMatrix> {
    let n = d.nrows();
    let h_deg = target.degree() + 1;
    let grs = d.row_gradings();

    // Unknowns: admissible positions for H.
    let mut h_pos: Vec<(usize, usize)> = Vec::new();
    let probe = MonomialMatrix::zero(grs.to_vec(), grs.to_vec(), h_deg);
    for r in 0..n {
        for c in 0..n {
            if probe.exponent(r, c).is_some() {
                h_pos.push((r, c));
            }
        }
    }
    // Equations: admissible positions for the target degree.
    let mut eq_pos: Vec<(usize, usize)> = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if target.exponent(r, c).is_some() {
                eq_pos.push((r, c));
            }
        }
    }

    let mut sys = crate::ufu_algebra::BitMatrix::zeros(eq_pos.len(), h_pos.len());
    let mut rhs = vec![false; eq_pos.len()];
    for (ei, &(r, c)) in eq_pos.iter().enumerate() {
        rhs[ei] = target.get(r, c);
        for (vi, &(a, b)) in h_pos.iter().enumerate() {
            // (dH)_{rc} picks up H_{ab} when d_{ra} and b = c.
            let mut coeff = b == c && d.get(r, a);
            // (Hd)_{rc} picks up H_{ab} when a = r and d_{bc}.
            if a == r && d.get(b, c) {
                coeff = !coeff;
            }
            if coeff {
                sys.set(ei, vi, true);
            }
        }
    }
    let x = sys.solve(&rhs)?;
    let mut h = MonomialMatrix::zero(grs.to_vec(), grs.to_vec(), h_deg);
    for (vi, &(r, c)) in h_pos.iter().enumerate() {
        if x[vi] {
            h.set(r, c).expect("admissible by construction");
        }
    }
    Some(h)
}

/// A pair of local-equivalence maps f: A → B and g: B → A, with the
/// homotopy-commutation witnesses solved on demand.
pub struct LocalMapPair {
    pub f: MonomialMatrix,
    pub g: MonomialMatrix,
}

impl LocalMapPair {
    /// Verify that f and g are grading-preserving chain maps that
    /// homotopy-commute with the involutions and hit the free homology
    /// generator on both sides.
    pub fn verify(&self, a: &IotaComplex, b: &IotaComplex) -> Result<(), IotaError> {
        let check_chain = |m: &MonomialMatrix, da: &MonomialMatrix, db: &MonomialMatrix| {
            m.compose(da).add(&db.compose(m)).is_zero()
        };
        if self.f.degree() != 0 || self.g.degree() != 0 {
            return Err(IotaError::Shape("local maps must preserve grading".into()));
        }
        if !check_chain(&self.f, &a.d, &b.d) || !check_chain(&self.g, &b.d, &a.d) {
            return Err(IotaError::Invalid("local map is not a chain map".into()));
        }
        // f ι_A + ι_B f ≃ 0: fold the rectangle into the square complex on
        // A ⊕ B and reuse the homotopy solver there.
        for (m, src, tgt) in [(&self.f, a, b), (&self.g, b, a)] {
            let comm = m.compose(&src.iota).add(&tgt.iota.compose(m));
            if solve_rect_homotopy(&src.d, &tgt.d, &comm).is_none() {
                return Err(IotaError::Invalid(
                    "local map does not homotopy-commute with iota".into(),
                ));
            }
        }
        for (m, src, tgt) in [(&self.f, a, b), (&self.g, b, a)] {
            let pres = tgt.homology_presentation()?;
            let (_, z) = src
                .homology_presentation()?
                .free_generator_cycles()
                .pop()
                .ok_or(IotaError::NotLocal(0))?;
            let image = m.apply(&z);
            if pres.has_free_component(&image) != Some(true) {
                return Err(IotaError::Invalid(
                    "local map kills the localized homology".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Solve d_tgt∘H + H∘d_src = target for a rectangular H (degree +1).
pub fn solve_rect_homotopy(
    d_src: &MonomialMatrix,
    d_tgt: &MonomialMatrix,
    target: &MonomialMatrix,
) -> Option<MonomialMatrix> {
    let (nt, ns) = (target.nrows(), target.ncols());
    let h_deg = target.degree() + 1;
    let mut h_pos: Vec<(usize, usize)> = Vec::new();
    let probe = MonomialMatrix::zero(
        target.row_gradings().to_vec(),
        target.col_gradings().to_vec(),
        h_deg,
    );
    for r in 0..nt {
        for c in 0..ns {
            if probe.exponent(r, c).is_some() {
                h_pos.push((r, c));
            }
        }
    }
    let mut eq_pos: Vec<(usize, usize)> = Vec::new();
    for r in 0..nt {
        for c in 0..ns {
            if target.exponent(r, c).is_some() {
                eq_pos.push((r, c));
            }
        }
    }
    let mut sys = crate::ufu_algebra::BitMatrix::zeros(eq_pos.len(), h_pos.len());
    let mut rhs = vec![false; eq_pos.len()];
    for (ei, &(r, c)) in eq_pos.iter().enumerate() {
        rhs[ei] = target.get(r, c);
        for (vi, &(a, b)) in h_pos.iter().enumerate() {
            let mut coeff = b == c && d_tgt.get(r, a);
            if a == r && d_src.get(b, c) {
                coeff = !coeff;
            }
            if coeff {
                sys.set(ei, vi, true);
            }
        }
    }
    let x = sys.solve(&rhs)?;
    let mut h = MonomialMatrix::zero(
        target.row_gradings().to_vec(),
        target.col_gradings().to_vec(),
        h_deg,
    );
    for (vi, &(r, c)) in h_pos.iter().enumerate() {
        if x[vi] {
            h.set(r, c).expect("admissible by construction");
        }
    }
    Some(h)
}

/// The image of a cycle under ι, for tests that track induced maps.
pub fn apply_to_cycle(m: &MonomialMatrix, v: &ColumnVector) -> ColumnVector {
    m.apply(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(n: i64) -> Grading {
        Grading::from_int(n)
    }

    /// Σ(2,3,7) = C₁: a, b at −2, c at −3, ∂c = U(a+b), ι = swap(a,b), fix c.
    pub fn sigma237() -> IotaComplex {
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
    fn identity_complex_is_valid() {
        let id = IotaComplex::identity();
        assert!(id.validate().is_valid());
        assert_eq!(id.d_invariant().unwrap(), gr(0));
    }

    #[test]
    fn sigma237_is_valid_with_d_zero() {
        let s = sigma237();
        assert!(s.validate().is_valid());
        assert_eq!(s.d_invariant().unwrap(), gr(0));
    }

    #[test]
    fn c1_with_identity_involution_is_still_valid() {
        let c = IotaComplex::build(
            &[("x1", gr(-2)), ("x2", gr(-2)), ("y", gr(-3))],
            &[("y", "x1"), ("y", "x2")],
            &[("x1", "x1"), ("x2", "x2"), ("y", "y")],
        )
        .unwrap();
        assert!(c.validate().is_valid());
    }

    #[test]
    fn invalid_differential_is_named() {
        // d(a) = b, d(b) = c with unit coefficients: d² = unit ≠ 0.
        let c = IotaComplex::build(
            &[("a", gr(0)), ("b", gr(-1)), ("c", gr(-2))],
            &[("a", "b"), ("b", "c")],
            &[("a", "a"), ("b", "b"), ("c", "c")],
        )
        .unwrap();
        let report = c.validate();
        assert!(matches!(
            report.failures.first(),
            Some(ValidationFailure::NotAComplex { from, to }) if from == "a" && to == "c"
        ));
    }

    #[test]
    fn non_chain_involution_rejected() {
        // ι(y) = y but ι mixes x1 -> x1 only on one side of the swap.
        let c = IotaComplex::build(
            &[("x1", gr(-2)), ("x2", gr(-2)), ("y", gr(-3))],
            &[("y", "x1")],
            &[("x1", "x2"), ("x2", "x1"), ("y", "y")],
        )
        .unwrap();
        let report = c.validate();
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::IotaNotChainMap { .. })));
    }

    #[test]
    fn tensor_with_identity_preserves_invariants() {
        let s = sigma237();
        let t = s.tensor(&IotaComplex::identity());
        assert!(t.validate().is_valid());
        assert_eq!(t.homology().unwrap(), s.homology().unwrap());
        assert_eq!(t.gradings()[0], s.gradings()[0]);
    }

    #[test]
    fn d_invariant_additive_on_tensor() {
        let s = sigma237();
        let c2 = c_n(2);
        let t = s.tensor(&c2);
        assert!(t.validate().is_valid());
        assert_eq!(
            t.d_invariant().unwrap(),
            s.d_invariant().unwrap() + c2.d_invariant().unwrap()
        );
    }

    #[test]
    fn iterated_sigma_tensors_keep_d_zero() {
        let s = sigma237();
        let two = s.tensor(&s);
        let three = two.tensor(&s);
        assert_eq!(two.d_invariant().unwrap(), gr(0));
        assert_eq!(three.d_invariant().unwrap(), gr(0));
    }

    #[test]
    fn dual_of_identity_is_identity() {
        let d = IotaComplex::identity().dual();
        assert_eq!(d.gradings(), IotaComplex::identity().gradings());
        assert!(d.validate().is_valid());
    }

    #[test]
    fn dual_is_an_involution() {
        let s = sigma237();
        let dd = s.dual().dual();
        assert_eq!(dd.gradings(), s.gradings());
        assert_eq!(dd.differential().bits(), s.differential().bits());
        assert_eq!(dd.involution().bits(), s.involution().bits());
    }

    #[test]
    fn reduce_is_identity_on_minimal_complexes() {
        let s = sigma237();
        let r = s.reduce();
        assert_eq!(r.len(), 3);
        assert_eq!(r.differential().bits(), s.differential().bits());
    }

    #[test]
    fn reduce_cancels_acyclic_pair() {
        // ∂y = x with unit coefficient: reduces to the empty complex,
        // which then fails locality downstream.
        let c = IotaComplex::build(
            &[("x", gr(-1)), ("y", gr(0))],
            &[("y", "x")],
            &[("x", "x"), ("y", "y")],
        )
        .unwrap();
        let r = c.reduce();
        assert_eq!(r.len(), 0);
        assert!(matches!(
            r.validate().failures.first(),
            Some(ValidationFailure::NotLocal { free_rank: 0 })
        ));
    }

    #[test]
    fn reduce_fixes_minimal_tensor_and_preserves_homology() {
        // C₁ ⊗ dual(C₁) has im(d) ⊆ U·C already, so it is a fixed point.
        let c1 = c_n(1);
        let t = c1.tensor(&c1.dual());
        let r = t.reduce();
        assert_eq!(r.len(), 9);
        assert_eq!(r.homology().unwrap(), t.homology().unwrap());
        assert!(r.validate().is_valid());
    }

    #[test]
    fn reduce_shrinks_non_minimal_complex_preserving_homology() {
        // Σ(2,3,7) padded with an acyclic unit pair reduces back to 3
        // generators with the same homology.
        let c = IotaComplex::build(
            &[
                ("a", gr(-2)),
                ("b", gr(-2)),
                ("c", gr(-3)),
                ("p", gr(-4)),
                ("q", gr(-5)),
            ],
            &[("c", "a"), ("c", "b"), ("p", "q")],
            &[("a", "b"), ("b", "a"), ("c", "c"), ("p", "p"), ("q", "q")],
        )
        .unwrap();
        assert!(c.validate().is_valid());
        let r = c.reduce();
        assert_eq!(r.len(), 3);
        assert_eq!(r.homology().unwrap(), c.homology().unwrap());
        assert!(r.validate().is_valid());
    }

    #[test]
    fn homotopy_solver_finds_iota_squared_witness() {
        // An ι with ι² = id + d-exact correction: build ι on C₂ that adds
        // U·y to ι(x1) — wait, degree forbids; use the strict swap and the
        // zero homotopy instead.
        let c = c_n(2);
        let target = c
            .involution()
            .compose(c.involution())
            .add(&MonomialMatrix::identity(c.gradings().to_vec()));
        let h = solve_homotopy_equation(c.differential(), &target).unwrap();
        // ι² = id exactly here, so the zero homotopy works.
        assert!(h.is_zero() || {
            let lhs = c
                .differential()
                .compose(&h)
                .add(&h.compose(c.differential()));
            lhs.bits() == target.bits()
        });
    }

    #[test]
    fn local_map_pair_identity_verifies() {
        let s = sigma237();
        let pair = LocalMapPair {
            f: MonomialMatrix::identity(s.gradings().to_vec()),
            g: MonomialMatrix::identity(s.gradings().to_vec()),
        };
        pair.verify(&s, &s).unwrap();
    }
}
