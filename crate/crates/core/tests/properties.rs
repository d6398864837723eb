//! Randomized and exhaustive property tests for the algebra layer, the
//! ι-complex group operations, and the involutive correction terms.

use iota_forge_core::involutive::{correction_terms, correction_terms_single_parity};
use iota_forge_core::iota_complex::IotaComplex;
use iota_forge_core::samples::{
    random_differential, random_iota_complex, safe_truncation, shuffled,
};
use iota_forge_core::ufu_algebra::{
    homology, truncated_homology_oracle, truncated_module_oracle, ColumnVector, GradedModule,
    Grading, MonomialMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gr(n: i64) -> Grading {
    Grading::from_int(n)
}

#[test]
fn oracle_agrees_with_smith_homology_on_200_random_differentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..200 {
        let d = random_differential(&mut rng, 10, 4);
        let n = safe_truncation(&d);
        let h = homology(&d).unwrap();
        let reconstructed = truncated_module_oracle(&d, n).unwrap();
        assert_eq!(h, reconstructed, "case {case}");
        let dims = truncated_homology_oracle(&d, n).unwrap();
        for (g, &dim) in &dims {
            assert_eq!(h.dim_at(*g), dim, "case {case} at {g}");
        }
    }
}

#[test]
fn homology_is_additive_on_block_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let a = random_differential(&mut rng, 6, 3);
        let b = random_differential(&mut rng, 6, 3);
        let mut gradings = a.row_gradings().to_vec();
        gradings.extend_from_slice(b.row_gradings());
        // Keep everything in one Z-coset: both generators use integers.
        let (na, nb) = (a.nrows(), b.nrows());
        let mut d = MonomialMatrix::zero(gradings.clone(), gradings, -1);
        for c in 0..na {
            for r in 0..na {
                if a.get(r, c) {
                    d.set(r, c).unwrap();
                }
            }
        }
        for c in 0..nb {
            for r in 0..nb {
                if b.get(r, c) {
                    d.set(na + r, na + c).unwrap();
                }
            }
        }
        assert_eq!(
            homology(&d).unwrap(),
            homology(&a).unwrap().direct_sum(&homology(&b).unwrap())
        );
    }
}

#[test]
fn solve_roundtrip_exhaustive_on_two_generator_systems() {
    // Every 2x2 monomial system with exponents ≤ 2: solve() must agree
    // with brute force over the four homogeneous candidate vectors.
    let gradings = [-4i64, -3, -2, -1, 0];
    for &g0 in &gradings {
        for &g1 in &gradings {
            for degree in [-1i64, 0] {
                let grs = vec![gr(g0), gr(g1)];
                let probe = MonomialMatrix::zero(grs.clone(), grs.clone(), degree);
                let positions: Vec<(usize, usize)> = (0..2)
                    .flat_map(|r| (0..2).map(move |c| (r, c)))
                    .filter(|&(r, c)| matches!(probe.exponent(r, c), Some(e) if e <= 2))
                    .collect();
                for mask in 0u32..(1 << positions.len()) {
                    let mut a = MonomialMatrix::zero(grs.clone(), grs.clone(), degree);
                    for (i, &(r, c)) in positions.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            a.set(r, c).unwrap();
                        }
                    }
                    for &bg in &[-6i64, -5, -4, -3, -2, -1, 0] {
                        for bbits in 1u8..4 {
                            let b = ColumnVector {
                                grading: gr(bg),
                                bits: vec![bbits & 1 == 1, bbits & 2 == 2],
                            };
                            // b must be homogeneous-admissible to be an
                            // element at all.
                            if b.bits[0] && b.exponent_at(gr(g0)).is_none() {
                                continue;
                            }
                            if b.bits[1] && b.exponent_at(gr(g1)).is_none() {
                                continue;
                            }
                            let solved = a.solve(&b);
                            // Brute force over homogeneous x of the forced
                            // grading.
                            let xg = gr(bg - degree);
                            let mut any = false;
                            for xbits in 0u8..4 {
                                let x = ColumnVector {
                                    grading: xg,
                                    bits: vec![xbits & 1 == 1, xbits & 2 == 2],
                                };
                                if x.bits[0] && x.exponent_at(gr(g0)).is_none() {
                                    continue;
                                }
                                if x.bits[1] && x.exponent_at(gr(g1)).is_none() {
                                    continue;
                                }
                                let ax = a.apply(&x);
                                if ax.bits == b.bits {
                                    any = true;
                                }
                            }
                            match solved {
                                Some(x) => {
                                    assert!(any, "solver found a ghost solution");
                                    assert_eq!(a.apply(&x).bits, b.bits, "A·x != b");
                                }
                                None => assert!(!any, "solver missed a solution"),
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_basis_spans_exactly_the_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let f = random_differential(&mut rng, 8, 3);
        let kernel = f.kernel_basis();
        // Every basis column really is in the kernel.
        for col in kernel.columns() {
            assert!(f.apply(col).is_zero());
        }
        // Random homogeneous vectors: in span iff killed by f.
        let grs = f.col_gradings().to_vec();
        if grs.is_empty() {
            continue;
        }
        for _ in 0..20 {
            let anchor = grs[rng.gen_range(0..grs.len())];
            let g = anchor.shift(-2 * rng.gen_range(0..3i64));
            let bits: Vec<bool> = grs
                .iter()
                .map(|x| {
                    matches!(x.integer_diff(&g), Some(d) if d >= 0 && d % 2 == 0)
                        && rng.gen_bool(0.5)
                })
                .collect();
            let v = ColumnVector { grading: g, bits };
            assert_eq!(
                f.apply(&v).is_zero(),
                kernel.contains_vector(&v),
                "span mismatch"
            );
        }
    }
}

#[test]
fn d_invariant_is_additive_on_random_tensors() {
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    for _ in 0..25 {
        let a = random_iota_complex(&mut rng, 5);
        let b = random_iota_complex(&mut rng, 5);
        let t = a.tensor(&b);
        assert_eq!(
            t.d_invariant().unwrap(),
            a.d_invariant().unwrap() + b.d_invariant().unwrap()
        );
    }
}

#[test]
fn dual_homology_follows_the_regrading_law() {
    // Free parts a ↦ −a−4; torsion towers (t, n) ↦ (−t + 2n − 5, n).
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..40 {
        let a = random_iota_complex(&mut rng, 6);
        let h = a.homology().unwrap();
        let expected = GradedModule::new(
            h.free_parts().iter().map(|&x| -x - gr(4)).collect(),
            h.towers()
                .iter()
                .map(|&(t, n)| (-t + gr(2 * i64::from(n) - 5), n))
                .collect(),
        );
        assert_eq!(a.dual().homology().unwrap(), expected);
    }
}

#[test]
fn reduce_preserves_all_computed_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(555);
    for _ in 0..15 {
        let base = random_iota_complex(&mut rng, 4);
        let padded = shuffled(&pad_with_unit_pair(&base), &mut rng, 4);
        assert!(padded.validate().is_valid());
        let reduced = padded.reduce();
        assert!(reduced.len() < padded.len());
        assert_eq!(reduced.homology().unwrap(), padded.homology().unwrap());
        let ct_a = correction_terms(&padded).unwrap();
        let ct_b = correction_terms(&reduced).unwrap();
        assert_eq!(ct_a, ct_b);
        let ha = iota_forge_core::connected_homology(&padded).unwrap();
        let hb = iota_forge_core::connected_homology(&reduced).unwrap();
        assert_eq!(ha, hb);
    }
}

/// Append an acyclic pair ∂p = q with unit coefficient.
fn pad_with_unit_pair(c: &IotaComplex) -> IotaComplex {
    let mut gens: Vec<(String, Grading)> = c
        .names()
        .iter()
        .cloned()
        .zip(c.gradings().iter().copied())
        .collect();
    let anchor = c.gradings()[0];
    gens.push(("pad_q".into(), anchor.shift(-1)));
    gens.push(("pad_p".into(), anchor));
    let names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
    let gradings: Vec<Grading> = gens.iter().map(|&(_, g)| g).collect();
    let n = names.len();
    let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
    let mut iota = MonomialMatrix::zero(gradings.clone(), gradings, 0);
    for col in 0..c.len() {
        for row in 0..c.len() {
            if c.differential().get(row, col) {
                d.set(row, col).unwrap();
            }
            if c.involution().get(row, col) {
                iota.set(row, col).unwrap();
            }
        }
    }
    d.set(n - 2, n - 1).unwrap(); // ∂p = q
    iota.set(n - 2, n - 2).unwrap();
    iota.set(n - 1, n - 1).unwrap();
    IotaComplex::from_parts(names, d, iota).unwrap()
}

#[test]
fn correction_terms_are_ordered_and_flip_under_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..30 {
        let a = random_iota_complex(&mut rng, 6);
        let ct = correction_terms(&a).unwrap();
        assert!(ct.d_lower <= ct.d && ct.d <= ct.d_upper);
        let dual = correction_terms(&a.dual()).unwrap();
        assert_eq!(dual.d_lower, -ct.d_upper);
        assert_eq!(dual.d_upper, -ct.d_lower);
    }
}

#[test]
fn connected_sum_chain_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99112);
    for _ in 0..15 {
        let a = random_iota_complex(&mut rng, 4);
        let b = random_iota_complex(&mut rng, 4);
        let ca = correction_terms(&a).unwrap();
        let cb = correction_terms(&b).unwrap();
        let cab = correction_terms(&a.tensor(&b)).unwrap();
        assert!(ca.d_lower + cb.d_lower <= cab.d_lower);
        assert!(cab.d_lower <= ca.d_lower + cb.d_upper);
        assert!(ca.d_lower + cb.d_upper <= cab.d_upper);
        assert!(cab.d_upper <= ca.d_upper + cb.d_upper);
    }
}

#[test]
fn fast_path_matches_cone_whenever_it_applies() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut hits = 0;
    for _ in 0..60 {
        let a = random_iota_complex(&mut rng, 5);
        if let Some(fast) = correction_terms_single_parity(&a).unwrap() {
            hits += 1;
            assert_eq!(fast, correction_terms(&a).unwrap());
        }
    }
    assert!(hits >= 10, "single-parity cases too rare: {hits}");
}
