//! Property tests for the self-local-equivalence search and the connected
//! homology invariants it feeds.

use iota_forge_core::connected::{
    connected_complex, connected_homology, connected_homology_with_certificate,
    maximal_self_local_equivalence, omega, SearchMode,
};
use iota_forge_core::involutive::correction_terms;
use iota_forge_core::iota_complex::IotaComplex;
use iota_forge_core::samples::{enumerate_small_iota_complexes, random_iota_complex};
use iota_forge_core::ufu_algebra::{Grading, Hnf};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gr(n: i64) -> Grading {
    Grading::from_int(n)
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
fn trivial_connected_homology_iff_equal_correction_terms() {
    // Prop 4.1 biconditional, exhaustively over the small family.
    let family = enumerate_small_iota_complexes();
    assert!(family.len() >= 100);
    let mut nontrivial = 0;
    for (i, c) in family.iter().enumerate() {
        let ct = correction_terms(c).unwrap();
        let (h, certified) =
            connected_homology_with_certificate(c, SearchMode::Exhaustive, 0).unwrap();
        assert!(certified, "family member {i} not certified");
        let flat = ct.d_lower == ct.d && ct.d == ct.d_upper;
        assert_eq!(h.is_zero(), flat, "family member {i}: H_conn = {h}, ct = {ct:?}");
        if !h.is_zero() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 10, "family too degenerate: {nontrivial}");
}

#[test]
fn omega_dominates_the_correction_term_gaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    for _ in 0..20 {
        let c = random_iota_complex(&mut rng, 6);
        let ct = correction_terms(&c).unwrap();
        let w = i64::from(omega(&c).unwrap());
        let lower_gap = ct.d.integer_diff(&ct.d_lower).unwrap();
        let upper_gap = ct.d_upper.integer_diff(&ct.d).unwrap();
        assert_eq!(lower_gap % 2, 0);
        assert_eq!(upper_gap % 2, 0);
        assert!(lower_gap / 2 <= w, "(d - d_lower)/2 > omega");
        assert!(upper_gap / 2 <= w, "(d_upper - d)/2 > omega");
    }
}

#[test]
fn omega_is_subadditive_with_kunneth_torsion_lengths() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let a = random_iota_complex(&mut rng, 4);
        let b = random_iota_complex(&mut rng, 4);
        let t = a.tensor(&b);
        let wa = omega(&a).unwrap();
        let wb = omega(&b).unwrap();
        let wt = omega(&t).unwrap();
        assert!(wt <= wa.max(wb), "omega({wt}) > max({wa}, {wb})");

        // Künneth for the torsion lengths of H(A ⊗ B): towers of A, towers
        // of B, and min(n_i, m_j) twice (once from ⊗, once from Tor).
        let ha = a.homology().unwrap();
        let hb = b.homology().unwrap();
        let mut expected: Vec<u32> = Vec::new();
        expected.extend(ha.towers().iter().map(|&(_, n)| n));
        expected.extend(hb.towers().iter().map(|&(_, n)| n));
        for &(_, n) in ha.towers() {
            for &(_, m) in hb.towers() {
                expected.push(n.min(m));
                expected.push(n.min(m));
            }
        }
        expected.sort_unstable();
        let mut actual: Vec<u32> = t
            .homology()
            .unwrap()
            .towers()
            .iter()
            .map(|&(_, n)| n)
            .collect();
        actual.sort_unstable();
        assert_eq!(actual, expected, "Künneth torsion lengths");
    }
}

#[test]
fn connected_homology_is_a_submultiset_of_reduced_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for _ in 0..15 {
        let c = random_iota_complex(&mut rng, 6);
        let conn = connected_homology(&c).unwrap();
        let red = c.homology().unwrap().torsion().shifted_up(1);
        for tower in conn.towers() {
            let in_conn = conn.towers().iter().filter(|&t| t == tower).count();
            let in_red = red.towers().iter().filter(|&t| t == tower).count();
            assert!(
                in_conn <= in_red,
                "tower {tower:?} has multiplicity {in_conn} > {in_red}"
            );
        }
    }
}

#[test]
fn image_and_kernel_split_the_complex() {
    let mut rng = ChaCha8Rng::seed_from_u64(31337);
    for _ in 0..15 {
        let c = random_iota_complex(&mut rng, 6);
        let search = maximal_self_local_equivalence(&c, SearchMode::Exhaustive, 0).unwrap();
        let f = &search.equivalence.matrix;
        let cols: Vec<_> = (0..f.ncols()).map(|j| f.column(j)).collect();
        let image = Hnf::from_columns(f.row_gradings().to_vec(), &cols);
        assert_eq!(image.rank() + search.equivalence.kernel.rank(), c.len());
    }
}

#[test]
fn distinct_maximal_equivalences_share_image_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    for _ in 0..8 {
        let c = random_iota_complex(&mut rng, 6);
        let baseline = connected_complex(&c, SearchMode::Exhaustive, 0).unwrap();
        let base_h = baseline.complex.homology().unwrap();
        for seed in [1, 9, 117] {
            let other = connected_complex(&c, SearchMode::Greedy, seed).unwrap();
            assert_eq!(other.complex.homology().unwrap(), base_h);
        }
    }
}

#[test]
fn dimension_one_connected_homology_is_sigma_or_its_dual() {
    // Cor 4.7: the reduced connected complex is C₁ or dual(C₁) up to an
    // overall grading shift.
    let family = enumerate_small_iota_complexes();
    let mut seen = 0;
    for c in &family {
        let conn = connected_complex(c, SearchMode::Exhaustive, 0).unwrap();
        let h = conn.complex.homology().unwrap();
        if h.torsion_dim() != 1 {
            continue;
        }
        seen += 1;
        // Up to a grading shift, H(conn) must be H(C₁) = F[U]_a ⊕ 𝒯_a(1)
        // or H(dual C₁) = F[U]_a ⊕ 𝒯_{a+1}(1), with the matching Prop 4.3
        // dichotomy of correction terms.
        assert_eq!(h.free_rank(), 1);
        assert_eq!(h.towers().len(), 1);
        let a = h.free_parts()[0];
        let (t, n) = h.towers()[0];
        assert_eq!(n, 1);
        let ct = correction_terms(c).unwrap();
        if t == a {
            assert_eq!(ct.d_upper, ct.d, "C₁-like must have d̄ = d");
            assert_eq!(ct.d_lower, ct.d.shift(-2), "C₁-like must have d̲ = d − 2");
        } else if t == a.shift(1) {
            assert_eq!(ct.d_lower, ct.d, "dual-like must have d̲ = d");
            assert_eq!(ct.d_upper, ct.d.shift(2), "dual-like must have d̄ = d + 2");
        } else {
            panic!("tower top {t} is neither at nor one above the free top {a}");
        }
        // The minimal model has exactly three generators either way.
        assert_eq!(conn.complex.reduce().len(), 3);
    }
    assert!(seen >= 2, "family has too few dim-1 members: {seen}");
}

#[test]
fn asymptotic_sandwich_for_iterated_sums() {
    // d(A) − 2ω/k ≤ d̲(kA)/k ≤ d̄(kA)/k ≤ d(A) + 2ω/k for k ≤ 4.
    for base in [c_n(1), c_n(2)] {
        let d = base.d_invariant().unwrap().as_ratio();
        let w = i64::from(omega(&base).unwrap());
        let mut power = base.clone();
        for k in 1..=4i64 {
            let ct = correction_terms(&power).unwrap();
            let lo = ct.d_lower.as_ratio() / num_rational::Ratio::from_integer(k);
            let hi = ct.d_upper.as_ratio() / num_rational::Ratio::from_integer(k);
            let slack = num_rational::Ratio::new(2 * w, k);
            assert!(d - slack <= lo, "k = {k}: lower sandwich");
            assert!(lo <= hi, "k = {k}: ordering");
            assert!(hi <= d + slack, "k = {k}: upper sandwich");
            if k < 4 {
                power = power.tensor(&base);
            }
        }
    }
}
