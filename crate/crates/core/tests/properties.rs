//! Property suites: solver invariants against independent oracles, checker
//! agreement with brute-force unit-cell coverage, pattern and slat
//! invariants, and enumeration completeness.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sirtp::analysis::{
    check_isomorphism, check_tiling, extract_pattern, is_slat, pattern_module_dims,
    patterns_equal, slat_refine,
};
use sirtp::geom::{area, isqrt, Dims, PairingMode, Partition, PlacedRect, SirtpInstance};
use sirtp::oracle::{enumerate_tilings, Budget};
use sirtp::solver;

/// Independent validity oracle: per-unit-cell coverage counting.
fn brute_force_valid(part: &Partition) -> bool {
    let w = part.parent.width as usize;
    let h = part.parent.height as usize;
    let mut cover = vec![0u32; w * h];
    for m in &part.modules {
        if m.right() > part.parent.width || m.top() > part.parent.height {
            return false;
        }
        for y in m.y..m.top() {
            for x in m.x..m.right() {
                cover[y as usize * w + x as usize] += 1;
            }
        }
    }
    cover.iter().all(|&c| c == 1)
}

/// Random guillotine partition of `parent`: recursive splits at random
/// integer offsets.
fn random_partition(parent: Dims, rng: &mut StdRng) -> Partition {
    fn split(x: u64, y: u64, d: Dims, rng: &mut StdRng, out: &mut Vec<PlacedRect>) {
        let splittable_w = d.width >= 2;
        let splittable_h = d.height >= 2;
        let stop = rng.gen_bool(0.3) || (!splittable_w && !splittable_h);
        if stop {
            out.push(PlacedRect::new(x, y, d));
            return;
        }
        let vertical = if splittable_w && splittable_h { rng.gen_bool(0.5) } else { splittable_w };
        if vertical {
            let cut = rng.gen_range(1..d.width);
            split(x, y, Dims::new(cut, d.height), rng, out);
            split(x + cut, y, Dims::new(d.width - cut, d.height), rng, out);
        } else {
            let cut = rng.gen_range(1..d.height);
            split(x, y, Dims::new(d.width, cut), rng, out);
            split(x, y + cut, Dims::new(d.width, d.height - cut), rng, out);
        }
    }
    let mut modules = Vec::new();
    split(0, 0, parent, rng, &mut modules);
    Partition::new(parent, modules)
}

proptest! {
    #[test]
    fn isqrt_bracket(n in any::<u128>()) {
        let r = isqrt(n);
        prop_assert!(r.checked_mul(r).map(|rr| rr <= n).unwrap_or(false) || r * r <= n);
        // (r+1)^2 > n, guarding overflow at the top of the range
        if let Some(next) = (r + 1).checked_mul(r + 1) {
            prop_assert!(next > n);
        }
    }

    #[test]
    fn solver_geometry_matches_size(p in 1u64..400, q in 1u64..400) {
        let inst = SirtpInstance::new(p, q);
        let (size, trace) = solver::algsirtp_size(inst);
        let pair = solver::algsirtp_partition(inst);
        prop_assert_eq!(pair.size() as u128, size);
        prop_assert_eq!(trace.total(), size);
        prop_assert!(check_tiling(&pair.a).ok());
        prop_assert!(check_tiling(&pair.b).ok());
        prop_assert!(check_isomorphism(&pair, PairingMode::Strict).ok());
        prop_assert!(size >= solver::lower_bound(inst) as u128);
    }

    #[test]
    fn euclid_geometry_is_valid(p in 1u64..200, q in 1u64..200) {
        let inst = SirtpInstance::new(p, q);
        let pair = solver::euclid_sirtp(inst);
        prop_assert_eq!(pair.size() as u128, solver::euclid_sirtp_size(inst));
        prop_assert!(check_tiling(&pair.a).ok());
        prop_assert!(check_tiling(&pair.b).ok());
        prop_assert!(check_isomorphism(&pair, PairingMode::Strict).ok());
        prop_assert!(pair.a.modules.iter().all(|m| m.dims.is_square()));
    }

    #[test]
    fn size_is_scale_invariant(p in 1u64..150, q in 1u64..150, c in 1u64..10) {
        let base = solver::algsirtp_size(SirtpInstance::new(p, q)).0;
        let scaled = solver::algsirtp_size(SirtpInstance::new(c * p, c * q)).0;
        prop_assert_eq!(base, scaled);
    }

    #[test]
    fn shorter_side_halves_every_two_rounds(p in 2u64..5000, q in 2u64..5000) {
        let (_, trace) = solver::algsirtp_size(SirtpInstance::new(p, q));
        let ps: Vec<u64> = trace.rounds.iter().map(|r| r.p).collect();
        for i in 0..ps.len().saturating_sub(2) {
            prop_assert!(ps[i + 2] <= ps[i] / 2);
        }
        let (np, _) = SirtpInstance::new(p, q).normalized();
        prop_assert!(trace.depth() <= solver::depth_bound(np));
    }

    #[test]
    fn divisibility_is_optimal(p in 1u64..100, k in 1u64..100) {
        let inst = SirtpInstance::new(p, p * k);
        let expected = k as u128;
        prop_assert_eq!(solver::algsirtp_size(inst).0, expected);
        prop_assert_eq!(solver::euclid_sirtp_size(inst), expected);
        prop_assert_eq!(solver::lower_bound(inst) as u128, expected);
    }

    #[test]
    fn square_transfer_verified(p in 2u64..200) {
        let pair = solver::square_transfer_pair(p).unwrap();
        prop_assert!(check_tiling(&pair.a).ok());
        prop_assert!(check_tiling(&pair.b).ok());
        prop_assert!(check_isomorphism(&pair, PairingMode::Strict).ok());
        let f = isqrt(p as u128) as u64;
        if f * f == p {
            prop_assert_eq!(pair.size() as u64, 2 * f + 2);
        } else {
            prop_assert!((pair.size() as f64) <= 4.0 * (p as f64).sqrt() + 1.0);
        }
    }

    #[test]
    fn checker_agrees_with_brute_force(seed in any::<u64>(), w in 1u64..20, h in 1u64..20) {
        let mut rng = StdRng::seed_from_u64(seed);
        let parent = Dims::new(w, h);
        let part = random_partition(parent, &mut rng);
        prop_assert!(area(parent) <= 400);
        prop_assert!(check_tiling(&part).ok());
        prop_assert!(brute_force_valid(&part));

        // Dropping a module must trip both checkers the same way.
        if part.size() >= 2 {
            let mut broken = part.clone();
            let i = rng.gen_range(0..broken.modules.len());
            broken.modules.remove(i);
            prop_assert_eq!(check_tiling(&broken).ok(), brute_force_valid(&broken));
            prop_assert!(!check_tiling(&broken).ok());
        }
        // Duplicating a module overlaps; checkers must agree.
        let mut doubled = part.clone();
        doubled.modules.push(part.modules[rng.gen_range(0..part.modules.len())]);
        prop_assert_eq!(check_tiling(&doubled).ok(), brute_force_valid(&doubled));
        prop_assert!(!check_tiling(&doubled).ok());
    }

    #[test]
    fn pattern_roundtrip_and_size_bound(seed in any::<u64>(), w in 1u64..30, h in 1u64..30) {
        let mut rng = StdRng::seed_from_u64(seed);
        let part = random_partition(Dims::new(w, h), &mut rng);
        let pat = extract_pattern(&part);
        let k = part.size();
        prop_assert!(pat.rows <= 2 * k - 1);
        prop_assert!(pat.cols <= 2 * k - 1);
        prop_assert_eq!(pat.alpha.iter().sum::<u64>(), w);
        prop_assert_eq!(pat.beta.iter().sum::<u64>(), h);
        let dims = pattern_module_dims(&pat);
        let expected: Vec<Dims> = part.modules.iter().map(|m| m.dims).collect();
        prop_assert_eq!(dims, expected);
        // Blocks partition the grid: per-cell ownership count is exactly 1.
        let mut cover = vec![0u32; pat.rows * pat.cols];
        for &(r0, r1, c0, c1) in &pat.blocks {
            for r in r0..r1 {
                for c in c0..c1 {
                    cover[r * pat.cols + c] += 1;
                }
            }
        }
        prop_assert!(cover.iter().all(|&c| c == 1));
    }

    #[test]
    fn scaled_instances_share_patterns(p in 1u64..80, q in 1u64..80, c in 2u64..4) {
        let pair1 = solver::algsirtp_partition(SirtpInstance::new(p, q));
        let pair2 = solver::algsirtp_partition(SirtpInstance::new(c * p, c * q));
        prop_assert!(patterns_equal(&extract_pattern(&pair1.a), &extract_pattern(&pair2.a)));
        prop_assert!(patterns_equal(&extract_pattern(&pair1.b), &extract_pattern(&pair2.b)));
        prop_assert!(sirtp::analysis::check_ratio_lemma(&pair1, &pair2).ok());
    }

    #[test]
    fn slat_refine_properties(p in 1u64..60, q in 1u64..60) {
        let pair = solver::algsirtp_partition(SirtpInstance::new(p, q));
        let refined = slat_refine(&pair);
        prop_assert!(is_slat(&refined.a));
        prop_assert!(check_tiling(&refined.a).ok());
        prop_assert!(check_tiling(&refined.b).ok());
        prop_assert!(check_isomorphism(&refined, PairingMode::Strict).ok());
        prop_assert!(refined.size() >= pair.size());
    }

    #[test]
    fn irtp_rules_all_verify(a in 1u64..60, b in 1u64..60, c in 1u64..60) {
        // Build a valid instance from (a*c, b) vs (a*b, c) style products.
        let (w1, h1) = (a * c, b);
        let (w2, h2) = (a * b, c);
        let mut sides = [(w1, h1), (w2, h2)];
        sides.sort_by_key(|&(w, h)| std::cmp::Reverse(w.max(h)));
        let (m1, m2) = (sides[0], sides[1]);
        let big = m1.0.max(m1.1);
        let small = m1.0.min(m1.1);
        let (lo, hi) = (m2.0.min(m2.1), m2.0.max(m2.1));
        if let Ok(inst) = sirtp::geom::IrtpInstance::new(big, small, hi, lo) {
            for rule in [
                solver::AlignmentRule::Greedy,
                solver::AlignmentRule::AlignLong,
                solver::AlignmentRule::AlignShort,
            ] {
                let (size, pair) = solver::euclid_irtp(inst, rule);
                prop_assert_eq!(pair.size() as u128, size);
                prop_assert!(check_tiling(&pair.a).ok());
                prop_assert!(check_tiling(&pair.b).ok());
                prop_assert!(check_isomorphism(&pair, PairingMode::Rotational).ok());
            }
        }
    }
}

/// Independent tiling counter: same search space as the oracle's enumerator
/// but scanning column-major, so agreement is a real cross-check.
fn count_tilings_column_major(w: u64, h: u64) -> u64 {
    fn first_empty(cover: &[bool], w: u64, h: u64) -> Option<(u64, u64)> {
        for x in 0..w {
            for y in 0..h {
                if !cover[(y * w + x) as usize] {
                    return Some((x, y));
                }
            }
        }
        None
    }
    fn rec(cover: &mut Vec<bool>, w: u64, h: u64) -> u64 {
        let Some((x, y)) = first_empty(cover, w, h) else {
            return 1;
        };
        let mut total = 0;
        for rw in 1..=(w - x) {
            for rh in 1..=(h - y) {
                let cells: Vec<usize> = (0..rh)
                    .flat_map(|dy| (0..rw).map(move |dx| ((y + dy) * w + x + dx) as usize))
                    .collect();
                if cells.iter().any(|&c| cover[c]) {
                    continue;
                }
                for &c in &cells {
                    cover[c] = true;
                }
                total += rec(cover, w, h);
                for &c in &cells {
                    cover[c] = false;
                }
            }
        }
        total
    }
    rec(&mut vec![false; (w * h) as usize], w, h)
}

#[test]
fn enumeration_complete_on_small_parents() {
    for w in 1..=6u64 {
        for h in 1..=6u64 {
            if w * h > 12 {
                continue;
            }
            let mut n = 0u64;
            enumerate_tilings(Dims::new(w, h), (w * h) as usize, &Budget::default(), |t| {
                assert!(brute_force_valid(t));
                n += 1;
            })
            .unwrap();
            assert_eq!(n, count_tilings_column_major(w, h), "parent {w}x{h}");
        }
    }
}

#[test]
fn tiling_counts_frozen() {
    // Values computed by the independent column-major counter.
    assert_eq!(count_tilings_column_major(1, 1), 1);
    assert_eq!(count_tilings_column_major(1, 4), 8); // compositions: 2^(n-1)
    assert_eq!(count_tilings_column_major(2, 2), 8);
    assert_eq!(count_tilings_column_major(2, 3), 34);
    assert_eq!(count_tilings_column_major(3, 3), 322);
}

#[test]
fn reduction_feeds_solver() {
    // 6x2 vs 4x3 reduces to SIRTP(2,3); the solved geometry stretches back.
    let r = |n: u128| solver::Rat::from_integer(n);
    let red = solver::reduce_srtp(r(6), r(2), r(4), r(3)).unwrap();
    assert_eq!(red.instance, SirtpInstance::new(2, 3));
    let pair = solver::algsirtp_partition(red.instance);
    assert!(check_tiling(&pair.a).ok());
    // stretch factors map the reduced rects onto the originals exactly
    let fw = red.first_stretch.0 * r(red.first_rect.width as u128);
    let fh = red.first_stretch.1 * r(red.first_rect.height as u128);
    assert_eq!((fw, fh), (r(6), r(2)));
    let sw = red.second_stretch.0 * r(red.second_rect.width as u128);
    let sh = red.second_stretch.1 * r(red.second_rect.height as u128);
    assert_eq!((sw, sh), (r(4), r(3)));
}
