//! Acceptance suite: the ten exit criteria, one test each, every check
//! exact (rational arithmetic end to end). Each test prints a PASS line
//! once its criterion is fully verified.

use iota_forge::commands::run_pipeline;
use iota_forge::formats::ComplexFile;
use iota_forge_core::connected::{
    connected_homology_with_certificate, SearchMode,
};
use iota_forge_core::graded_roots::root_connected_homology;
use iota_forge_core::involutive::correction_terms;
use iota_forge_core::samples::{
    enumerate_small_iota_complexes, enumerate_symmetric_roots, random_differential,
    random_iota_complex, safe_truncation,
};
use iota_forge_core::surgery::{
    lens_d, m_module, sum_surgeries_complex, sum_surgeries_connected, surgery_homology,
    surgery_local_rep, vs_from_staircase, Staircase, VSequence,
};
use iota_forge_core::ufu_algebra::{
    homology, truncated_homology_oracle, truncated_module_oracle, GradedModule,
};
use iota_forge_core::{Grading, IotaComplex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gr(n: i64) -> Grading {
    Grading::from_int(n)
}

fn tower(top: i64, len: u32) -> GradedModule {
    GradedModule::new(vec![], vec![(gr(top), len)])
}

fn sigma_fixture() -> IotaComplex {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/sigma237.json");
    ComplexFile::parse(&std::fs::read_to_string(path).unwrap())
        .unwrap()
        .complex
}

#[test]
fn acceptance_01_sigma237_both_routes() {
    // Via the explicit C₁ file.
    let report = run_pipeline(&sigma_fixture(), SearchMode::Exhaustive, 0, false).unwrap();
    assert_eq!(
        (report.d_lower, report.d, report.d_upper),
        (gr(-2), gr(0), gr(0))
    );
    assert_eq!(report.towers, vec![(gr(-1), 1)]);
    assert_eq!(report.omega, 1);
    assert!(report.certificate);

    // Via the surgery pipeline with V = (1).
    let v = VSequence::new(vec![1]).unwrap();
    let s = surgery_homology(&v, 1, None).unwrap();
    let complex = s.root.realize().unwrap();
    let report2 = run_pipeline(&complex, SearchMode::Exhaustive, 0, false).unwrap();
    assert_eq!(
        (report2.d_lower, report2.d, report2.d_upper),
        (gr(-2), gr(0), gr(0))
    );
    assert_eq!(report2.towers, vec![(gr(-1), 1)]);
    assert_eq!(report2.omega, 1);
    println!("ACCEPTANCE 01 PASS: Sigma(2,3,7) gives (-2, 0, 0) with HF_conn = T_(-1)(1) on both routes");
}

#[test]
fn acceptance_02_negative_one_surgeries_on_t2_knots() {
    for n in 1u32..=3 {
        let q = 4 * u64::from(n) + 1;
        let st = Staircase::torus_2q(q).unwrap();
        let v = vs_from_staircase(&st).unwrap();
        assert_eq!(v.v(0), u64::from(n), "V0(T_(2,{q}))");
        let s = surgery_homology(&v, 1, None).unwrap();
        let complex = s.root.realize().unwrap();
        let (h, _) =
            connected_homology_with_certificate(&complex, SearchMode::Exhaustive, 0).unwrap();
        assert_eq!(h, tower(-1, n), "T(2,{q})");
    }
    println!("ACCEPTANCE 02 PASS: staircase ingestion gives HF_conn = T_(-1)(n) for T(2,4n+1), n = 1, 2, 3");
}

#[test]
fn acceptance_03_connected_sums_three_ways() {
    for weights in [vec![1u32, 1], vec![2, 1], vec![3, 2, 2, 1]] {
        let closed = sum_surgeries_connected(&weights).unwrap();
        let template = sum_surgeries_complex(&weights).unwrap();
        let (via_template, template_cert) =
            connected_homology_with_certificate(&template, SearchMode::Exhaustive, 0).unwrap();
        assert!(template_cert, "template search certified for {weights:?}");
        assert_eq!(via_template, closed, "template route for {weights:?}");

        let mut tensor = surgery_local_rep(weights[0]);
        for &w in &weights[1..] {
            tensor = tensor.tensor(&surgery_local_rep(w));
        }
        let (via_tensor, _) =
            connected_homology_with_certificate(&tensor, SearchMode::Greedy, 0).unwrap();
        assert_eq!(via_tensor, closed, "full tensor route for {weights:?}");
    }
    println!("ACCEPTANCE 03 PASS: connected sums (1,1), (2,1), (3,2,2,1) agree across closed form, template complex, and full tensor search");
}

#[test]
fn acceptance_04_omega_of_iterated_tensors() {
    for n in [1u32, 2] {
        let base = surgery_local_rep(n);
        let mut power = base.clone();
        for k in 1..=3u32 {
            let mode = if power.len() <= 9 {
                SearchMode::Exhaustive
            } else {
                SearchMode::Greedy
            };
            let (h, _) = connected_homology_with_certificate(&power, mode, 0).unwrap();
            assert_eq!(h.max_tower_length(), n, "omega({k}-fold C_{n})");
            if k < 3 {
                power = power.tensor(&base);
            }
        }
    }
    println!("ACCEPTANCE 04 PASS: omega(k-fold C_n) = n for k = 1, 2, 3 and n = 1, 2");
}

#[test]
fn acceptance_05_duality_laws_on_random_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(20240813);
    for case in 0..100 {
        let c = random_iota_complex(&mut rng, 6);
        let ct = correction_terms(&c).unwrap();
        let dual = c.dual();
        let ct_dual = correction_terms(&dual).unwrap();
        assert_eq!(ct_dual.d_lower, -ct.d_upper, "case {case}");

        let (h, cert) =
            connected_homology_with_certificate(&c, SearchMode::Exhaustive, 0).unwrap();
        let (h_dual, cert_dual) =
            connected_homology_with_certificate(&dual, SearchMode::Exhaustive, 0).unwrap();
        assert!(cert && cert_dual, "case {case} uncertified");
        let expected = GradedModule::new(
            vec![],
            h.towers()
                .iter()
                .map(|&(a, n)| (-a + gr(2 * i64::from(n) - 3), n))
                .collect(),
        );
        assert_eq!(h_dual, expected, "case {case}");
    }
    println!("ACCEPTANCE 05 PASS: d_lower(C*) = -d_upper(C) and H_conn(C*) = {{T_(-a+2n-3)(n)}} on 100 random complexes");
}

#[test]
fn acceptance_06_trivial_connected_homology_iff_flat_correction_terms() {
    let family = enumerate_small_iota_complexes();
    assert!(family.len() >= 100, "family size {}", family.len());
    for (i, c) in family.iter().enumerate() {
        let ct = correction_terms(c).unwrap();
        let (h, cert) =
            connected_homology_with_certificate(c, SearchMode::Exhaustive, 0).unwrap();
        assert!(cert, "member {i}");
        assert_eq!(
            h.is_zero(),
            ct.d_lower == ct.d && ct.d == ct.d_upper,
            "member {i}"
        );
    }
    println!(
        "ACCEPTANCE 06 PASS: H_conn = 0 iff d_lower = d = d_upper on {} exhaustively enumerated complexes",
        family.len()
    );
}

#[test]
fn acceptance_07_surgery_cone_matches_closed_form() {
    for vals in [vec![1u64], vec![2, 1, 1]] {
        for n in 1i64..=3 {
            let v = VSequence::new(vals.clone()).unwrap();
            // surgery_homology internally requires coker D^N to equal the
            // shifted M(V, n) and to be stable from N to N+1.
            let s = surgery_homology(&v, n, None).unwrap();
            let (_, plain) = m_module(&v, n).unwrap();
            assert_eq!(s.module, plain.shifted_by(-lens_d(n, 0).unwrap()));
            let again = surgery_homology(&v, n, Some(s.truncation + 1)).unwrap();
            assert_eq!(s.module, again.module, "stability at N+1");
        }
    }
    println!("ACCEPTANCE 07 PASS: coker D^N = M(V,n)[d(L(n,1))] for V in {{(1), (2,1,1)}}, n = 1, 2, 3, stable in N");
}

#[test]
fn acceptance_08_graded_roots_cross_validation() {
    let roots = enumerate_symmetric_roots(6, 3);
    assert!(roots.len() >= 500);
    for (i, root) in roots.iter().enumerate() {
        let via_subroot = root_connected_homology(root).unwrap();
        let complex = root.realize().unwrap();
        let (via_search, cert) =
            connected_homology_with_certificate(&complex, SearchMode::Exhaustive, 0).unwrap();
        assert!(cert, "root {i}");
        assert_eq!(via_subroot, via_search, "root {i}");

        // Corollary parity law: odd-multiplicity reduced towers survive.
        let (h, _) = root.hminus().unwrap();
        let red = h.torsion().shifted_up(1);
        let mut kept = Vec::new();
        let mut towers = red.towers().to_vec();
        while let Some(&t) = towers.first() {
            let count = towers.iter().filter(|&&x| x == t).count();
            towers.retain(|&x| x != t);
            if count % 2 == 1 {
                kept.push(t);
            }
        }
        assert_eq!(via_subroot, GradedModule::new(vec![], kept), "parity law at root {i}");
    }
    println!(
        "ACCEPTANCE 08 PASS: subroot route = search route and the parity law holds on {} symmetric roots",
        roots.len()
    );
}

#[test]
fn acceptance_09_inequality_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(1728);
    // Ordering and the four-term connected-sum chain.
    for _ in 0..25 {
        let a = random_iota_complex(&mut rng, 4);
        let b = random_iota_complex(&mut rng, 4);
        let ca = correction_terms(&a).unwrap();
        let cb = correction_terms(&b).unwrap();
        assert!(ca.d_lower <= ca.d && ca.d <= ca.d_upper);
        let cab = correction_terms(&a.tensor(&b)).unwrap();
        assert!(ca.d_lower + cb.d_lower <= cab.d_lower);
        assert!(cab.d_lower <= ca.d_lower + cb.d_upper);
        assert!(ca.d_lower + cb.d_upper <= cab.d_upper);
        assert!(cab.d_upper <= ca.d_upper + cb.d_upper);
    }
    // ω bounds and subadditivity.
    for _ in 0..10 {
        let a = random_iota_complex(&mut rng, 4);
        let b = random_iota_complex(&mut rng, 4);
        let (ha, _) = connected_homology_with_certificate(&a, SearchMode::Exhaustive, 0).unwrap();
        let (hb, _) = connected_homology_with_certificate(&b, SearchMode::Exhaustive, 0).unwrap();
        let (hab, _) = connected_homology_with_certificate(&a.tensor(&b), SearchMode::Exhaustive, 0)
            .unwrap();
        let (wa, wb, wab) = (
            ha.max_tower_length(),
            hb.max_tower_length(),
            hab.max_tower_length(),
        );
        assert!(wab <= wa.max(wb));
        let ca = correction_terms(&a).unwrap();
        let gap_low = ca.d.integer_diff(&ca.d_lower).unwrap() / 2;
        let gap_up = ca.d_upper.integer_diff(&ca.d).unwrap() / 2;
        assert!(gap_low <= i64::from(wa));
        assert!(gap_up <= i64::from(wa));
    }
    // Asymptotic sandwich, exact, for C₁ and C₂ up to the fourfold sum.
    for n in [1u32, 2] {
        let base = surgery_local_rep(n);
        let d = base.d_invariant().unwrap().as_ratio();
        let w = i64::from(n);
        let mut power = base.clone();
        for k in 1..=4i64 {
            let ct = correction_terms(&power).unwrap();
            let lo = ct.d_lower.as_ratio() / num_rational::Ratio::from_integer(k);
            let hi = ct.d_upper.as_ratio() / num_rational::Ratio::from_integer(k);
            let slack = num_rational::Ratio::new(2 * w, k);
            assert!(d - slack <= lo && lo <= hi && hi <= d + slack, "k = {k}, n = {n}");
            if k < 4 {
                power = power.tensor(&base);
            }
        }
    }
    println!("ACCEPTANCE 09 PASS: ordering, connected-sum chain, omega bounds, subadditivity, and the asymptotic sandwich all hold");
}

#[test]
fn acceptance_10_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    for case in 0..200 {
        let d = random_differential(&mut rng, 10, 4);
        let n = safe_truncation(&d);
        let h = homology(&d).unwrap();
        assert_eq!(
            h,
            truncated_module_oracle(&d, n).unwrap(),
            "module reconstruction, case {case}"
        );
        for (g, dim) in truncated_homology_oracle(&d, n).unwrap() {
            assert_eq!(h.dim_at(g), dim, "dims at {g}, case {case}");
        }
    }
    println!("ACCEPTANCE 10 PASS: graded-Smith homology equals the U-truncated F2 oracle on 200 random complexes");
}
