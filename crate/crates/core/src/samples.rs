//! Deterministic generators of random and exhaustively enumerated test
//! instances: valid differentials, valid ι-complexes, and small symmetric
//! graded roots. Used by the property and acceptance suites; seeded RNG
//! keeps every run reproducible.

use crate::graded_roots::SymmetricGradedRoot;
use crate::iota_complex::IotaComplex;
use crate::ufu_algebra::{Grading, MonomialMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random transvection 1 + U^t·e_{rc} at an admissible degree-0
/// position, or the identity when none exists.
fn random_transvection(rng: &mut ChaCha8Rng, gradings: &[Grading]) -> MonomialMatrix {
    let n = gradings.len();
    let mut positions = Vec::new();
    let probe = MonomialMatrix::zero(gradings.to_vec(), gradings.to_vec(), 0);
    for r in 0..n {
        for c in 0..n {
            if r != c && probe.exponent(r, c).is_some() {
                positions.push((r, c));
            }
        }
    }
    let mut m = MonomialMatrix::identity(gradings.to_vec());
    if positions.is_empty() {
        return m;
    }
    let (r, c) = positions[rng.gen_range(0..positions.len())];
    m.set(r, c).expect("admissible");
    m
}

/// Conjugate (d, ι) by a product of random transvections; transvections
/// are self-inverse over F₂, so the inverse is the reversed product.
fn conjugate(
    rng: &mut ChaCha8Rng,
    gradings: &[Grading],
    matrices: &mut [&mut MonomialMatrix],
    count: usize,
) {
    for _ in 0..count {
        let t = random_transvection(rng, gradings);
        for m in matrices.iter_mut() {
            **m = t.compose(m).compose(&t);
        }
    }
}

/// A random valid differential (d² = 0): free generators plus U-power
/// pairs, base-changed by random transvections. Homology is F[U]^f ⊕ the
/// chosen towers, unchanged by the base change.
pub fn random_differential(
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_exp: u32,
) -> MonomialMatrix {
    let free = rng.gen_range(0..=2usize.min(max_gens));
    let pairs = if max_gens > free {
        rng.gen_range(0..=(max_gens - free) / 2)
    } else {
        0
    };
    let mut gradings = Vec::new();
    for _ in 0..free {
        gradings.push(Grading::from_int(rng.gen_range(-4..=4)));
    }
    let mut arrows = Vec::new();
    for _ in 0..pairs {
        let n = rng.gen_range(1..=max_exp) as i64;
        let gz = rng.gen_range(-4..=4);
        let z = gradings.len();
        gradings.push(Grading::from_int(gz));
        let y = gradings.len();
        gradings.push(Grading::from_int(gz - 2 * n + 1));
        arrows.push((z, y));
    }
    let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
    for (z, y) in arrows {
        d.set(z, y).expect("pair arrow admissible");
    }
    let count = rng.gen_range(0..=6);
    let mut refs = [&mut d];
    conjugate(rng, &gradings, &mut refs, count);
    d
}

/// A truncation level safely above every tower length and entry exponent
/// of this differential.
pub fn safe_truncation(d: &MonomialMatrix) -> u32 {
    let mut total: i64 = 2;
    for r in 0..d.nrows() {
        for c in 0..d.ncols() {
            if d.get(r, c) {
                total += d.exponent(r, c).unwrap_or(0);
            }
        }
    }
    total.clamp(2, 64) as u32
}

/// A random valid ι-complex with at most `max_gens` generators: a local
/// core (the identity block or a C_n block with the swap involution),
/// optional acyclic pairs, optionally a swapped twin pair, all conjugated
/// by random transvections.
pub fn random_iota_complex(rng: &mut ChaCha8Rng, max_gens: usize) -> IotaComplex {
    assert!(max_gens >= 1);
    let mut gradings: Vec<Grading> = Vec::new();
    let mut d_arrows: Vec<(usize, usize)> = Vec::new(); // (target, source)
    let mut iota_arrows: Vec<(usize, usize)> = Vec::new();

    let core_cn = max_gens >= 3 && rng.gen_bool(0.6);
    if core_cn {
        let n = rng.gen_range(1..=3i64);
        gradings.extend([
            Grading::from_int(-2),
            Grading::from_int(-2),
            Grading::from_int(-2 * n - 1),
        ]);
        d_arrows.extend([(0, 2), (1, 2)]);
        iota_arrows.extend([(1, 0), (0, 1), (2, 2)]);
    } else {
        gradings.push(Grading::from_int(-2));
        iota_arrows.push((0, 0));
    }

    let mut remaining = max_gens - gradings.len();
    if remaining >= 4 && rng.gen_bool(0.4) {
        // A twin pair swapped by ι.
        let n = rng.gen_range(1..=3i64);
        let gz = rng.gen_range(-6..=2);
        let base = gradings.len();
        for _ in 0..2 {
            gradings.push(Grading::from_int(gz));
            gradings.push(Grading::from_int(gz - 2 * n + 1));
        }
        d_arrows.push((base, base + 1));
        d_arrows.push((base + 2, base + 3));
        iota_arrows.extend([
            (base + 2, base),
            (base, base + 2),
            (base + 3, base + 1),
            (base + 1, base + 3),
        ]);
        remaining -= 4;
    }
    while remaining >= 2 && rng.gen_bool(0.7) {
        let n = rng.gen_range(1..=3i64);
        let gz = rng.gen_range(-6..=2);
        let z = gradings.len();
        gradings.push(Grading::from_int(gz));
        let y = gradings.len();
        gradings.push(Grading::from_int(gz - 2 * n + 1));
        d_arrows.push((z, y));
        iota_arrows.extend([(z, z), (y, y)]);
        remaining -= 2;
    }

    let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
    for (t, s) in d_arrows {
        d.set(t, s).expect("admissible");
    }
    let mut iota = MonomialMatrix::zero(gradings.clone(), gradings.clone(), 0);
    for (t, s) in iota_arrows {
        iota.set(t, s).expect("admissible");
    }
    let count = rng.gen_range(0..=6);
    let mut refs = [&mut d, &mut iota];
    conjugate(rng, &gradings, &mut refs, count);

    let names = (0..gradings.len()).map(|i| format!("g{i}")).collect();
    let complex = IotaComplex::from_parts(names, d, iota).expect("well-formed by construction");
    debug_assert!(complex.validate().is_valid());
    complex
}

/// The same complex conjugated by random transvections: an isomorphic
/// ι-complex whose matrices look nothing like the original.
pub fn shuffled(c: &IotaComplex, rng: &mut ChaCha8Rng, count: usize) -> IotaComplex {
    let gradings = c.gradings().to_vec();
    let mut d = c.differential().clone();
    let mut iota = c.involution().clone();
    let mut refs = [&mut d, &mut iota];
    conjugate(rng, &gradings, &mut refs, count);
    IotaComplex::from_parts(c.names().to_vec(), d, iota).expect("conjugation preserves shape")
}

/// An exhaustively enumerated family of small ι-complexes: for each shape
/// (identity generator plus up to two U-power pairs with exponents and
/// offsets from small sets), every strict chain involution ι with ι² = id
/// that fixes the localized generator class.
pub fn enumerate_small_iota_complexes() -> Vec<IotaComplex> {
    let mut shapes: Vec<(Vec<Grading>, Vec<(usize, usize)>)> = Vec::new();
    let x = Grading::from_int(-2);
    shapes.push((vec![x], vec![]));
    for n in 1..=2i64 {
        for off in [-2, 0, 2] {
            let gz = Grading::from_int(-2 + off);
            shapes.push((
                vec![x, gz, gz.shift(1 - 2 * n)],
                vec![(1, 2)],
            ));
            for n2 in 1..=2i64 {
                for off2 in [-2, 0] {
                    let gz2 = Grading::from_int(-2 + off2);
                    shapes.push((
                        vec![x, gz, gz.shift(1 - 2 * n), gz2, gz2.shift(1 - 2 * n2)],
                        vec![(1, 2), (3, 4)],
                    ));
                }
            }
        }
    }

    let mut out = Vec::new();
    for (gradings, arrows) in shapes {
        let n = gradings.len();
        let mut d = MonomialMatrix::zero(gradings.clone(), gradings.clone(), -1);
        for &(t, s) in &arrows {
            d.set(t, s).expect("admissible");
        }
        // All admissible positions for a degree-0 map.
        let probe = MonomialMatrix::zero(gradings.clone(), gradings.clone(), 0);
        let mut positions = Vec::new();
        for r in 0..n {
            for c in 0..n {
                if probe.exponent(r, c).is_some() {
                    positions.push((r, c));
                }
            }
        }
        if positions.len() > 16 {
            continue; // keep the enumeration desk-sized
        }
        for mask in 0u32..(1 << positions.len()) {
            let mut iota = MonomialMatrix::zero(gradings.clone(), gradings.clone(), 0);
            for (i, &(r, c)) in positions.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    iota.set(r, c).expect("admissible");
                }
            }
            // Strict involution and chain map; fuller validity below.
            if !iota.compose(&iota).add(&MonomialMatrix::identity(gradings.clone())).is_zero() {
                continue;
            }
            if !iota.compose(&d).add(&d.compose(&iota)).is_zero() {
                continue;
            }
            let names = (0..n).map(|i| format!("g{i}")).collect();
            let complex = IotaComplex::from_parts(names, d.clone(), iota).expect("shape ok");
            if complex.validate().is_valid() {
                out.push(complex);
            }
        }
    }
    out
}

/// Every symmetric graded root with at most `max_leaves` leaves, leaf
/// gradings in {0, −2, −4} (relative), and merge depth at most
/// `max_depth` U-steps below the adjacent leaves.
pub fn enumerate_symmetric_roots(max_leaves: usize, max_depth: i64) -> Vec<SymmetricGradedRoot> {
    let grades = [
        Grading::from_int(0),
        Grading::from_int(-2),
        Grading::from_int(-4),
    ];
    let mut out = Vec::new();
    for k in 1..=max_leaves {
        // Palindromic leaf gradings: free choice of the first ceil(k/2).
        let half_l = k.div_ceil(2);
        let half_m = (k - 1).div_ceil(2);
        let l_combos = grades.len().pow(half_l as u32);
        let m_combos = if k == 1 {
            1
        } else {
            (max_depth as usize).pow(half_m as u32)
        };
        for li in 0..l_combos {
            let mut leaf = Vec::with_capacity(k);
            let mut rem = li;
            for _ in 0..half_l {
                leaf.push(grades[rem % grades.len()]);
                rem /= grades.len();
            }
            for i in (0..k - half_l).rev() {
                leaf.push(leaf[i]);
            }
            for mi in 0..m_combos {
                let mut depth = Vec::with_capacity(k.saturating_sub(1));
                let mut rem = mi;
                for _ in 0..half_m {
                    depth.push(1 + (rem % max_depth as usize) as i64);
                    rem /= max_depth as usize;
                }
                for i in (0..(k - 1) - half_m).rev() {
                    depth.push(depth[i]);
                }
                let merges: Vec<Grading> = (0..k.saturating_sub(1))
                    .map(|i| {
                        let cap = std::cmp::min(leaf[i], leaf[i + 1]);
                        cap.shift(-2 * depth[i])
                    })
                    .collect();
                if let Ok(root) = SymmetricGradedRoot::from_leaf_merges(&leaf, &merges) {
                    out.push(root);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_complexes_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let c = random_iota_complex(&mut rng, 6);
            assert!(c.len() <= 6);
            assert!(c.validate().is_valid());
        }
    }

    #[test]
    fn random_differentials_square_to_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let d = random_differential(&mut rng, 10, 4);
            assert!(d.compose(&d).is_zero());
        }
    }

    #[test]
    fn small_family_is_large_enough_and_valid() {
        let family = enumerate_small_iota_complexes();
        assert!(family.len() >= 100, "family has {} members", family.len());
        for c in family.iter().step_by(7) {
            assert!(c.validate().is_valid());
        }
    }

    #[test]
    fn root_family_has_expected_shape() {
        let roots = enumerate_symmetric_roots(3, 2);
        assert!(!roots.is_empty());
        for r in &roots {
            assert!(r.root().leaves().len() <= 3);
        }
    }
}
