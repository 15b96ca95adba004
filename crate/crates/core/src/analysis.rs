//! Verification and structural analysis: exact-tiling and isomorphism
//! checks, grid-pattern extraction, pattern equality, the cross-instance
//! ratio check, and slat predicates and refinement.

use crate::geom::{area, Dims, PairingMode, Partition, PartitionPair, PlacedRect};
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    OutOfBounds,
    Overlap,
    Coverage,
    SizeMismatch,
    PairingNotBijective,
    DimsMismatch,
    RatioMismatch,
    /// The ratio check requires equivalent pairs; these are not.
    NotApplicable,
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub kind: ViolationKind,
    pub modules: Vec<usize>,
    pub description: String,
}

/// Outcome of a check: `ok` iff no violations were recorded.
#[derive(Clone, Debug, Default)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, modules: Vec<usize>, description: String) {
        self.violations.push(Violation { kind, modules, description });
    }
}

/// Checks that the modules tile the parent exactly: in bounds, pairwise
/// interior-disjoint, total area matching, and every vertical slab between
/// consecutive x-coordinates covered top to bottom without gaps.
pub fn check_tiling(part: &Partition) -> CheckReport {
    let mut report = CheckReport::default();
    let parent = part.parent;
    for (i, m) in part.modules.iter().enumerate() {
        if m.right() > parent.width || m.top() > parent.height {
            report.push(
                ViolationKind::OutOfBounds,
                vec![i],
                format!("module {i} at ({},{}) size {} exceeds parent {}", m.x, m.y, m.dims, parent),
            );
        }
    }
    if !report.ok() {
        return report;
    }

    let total: u128 = part.modules.iter().map(|m| area(m.dims)).sum();
    if total != area(parent) {
        report.push(
            ViolationKind::Coverage,
            Vec::new(),
            format!("module areas sum to {total}, parent area is {}", area(parent)),
        );
    }

    // Sweep over the distinct x-intervals; each slab's y-intervals must be an
    // exact disjoint cover of [0, height].
    let mut xs = BTreeSet::new();
    xs.insert(0);
    xs.insert(parent.width);
    for m in &part.modules {
        xs.insert(m.x);
        xs.insert(m.right());
    }
    let xs: Vec<u64> = xs.into_iter().collect();
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let mut spans: Vec<(u64, u64, usize)> = part
            .modules
            .iter()
            .enumerate()
            .filter(|(_, m)| m.x <= x0 && m.right() >= x1)
            .map(|(i, m)| (m.y, m.top(), i))
            .collect();
        spans.sort_unstable();
        let mut cursor = 0;
        for &(y0, y1, i) in &spans {
            if y0 < cursor {
                report.push(
                    ViolationKind::Overlap,
                    vec![i],
                    format!("module {i} overlaps another in slab x=[{x0},{x1})"),
                );
                return report;
            }
            if y0 > cursor {
                report.push(
                    ViolationKind::Coverage,
                    vec![i],
                    format!("gap at y=[{cursor},{y0}) in slab x=[{x0},{x1})"),
                );
                return report;
            }
            cursor = y1;
        }
        if cursor != parent.height {
            report.push(
                ViolationKind::Coverage,
                Vec::new(),
                format!("slab x=[{x0},{x1}) covered only up to y={cursor}"),
            );
            return report;
        }
    }
    report
}

/// Checks the declared pairing: a bijection mapping each module of `a` to a
/// module of `b` with equal dims (oriented in strict mode, up to swap in
/// rotational mode).
pub fn check_isomorphism(pair: &PartitionPair, mode: PairingMode) -> CheckReport {
    let mut report = CheckReport::default();
    let n = pair.a.size();
    if pair.b.size() != n || pair.pairing.len() != n {
        report.push(
            ViolationKind::SizeMismatch,
            Vec::new(),
            format!(
                "module counts differ: a={}, b={}, pairing={}",
                n,
                pair.b.size(),
                pair.pairing.len()
            ),
        );
        return report;
    }
    let mut hit = vec![false; n];
    for (i, &j) in pair.pairing.iter().enumerate() {
        if j >= n || hit[j] {
            report.push(
                ViolationKind::PairingNotBijective,
                vec![i],
                format!("pairing entry {i} -> {j} is out of range or repeated"),
            );
            return report;
        }
        hit[j] = true;
        let da = pair.a.modules[i].dims;
        let db = pair.b.modules[j].dims;
        let matches = match mode {
            PairingMode::Strict => da == db,
            PairingMode::Rotational => da == db || da == db.swapped(),
        };
        if !matches {
            report.push(
                ViolationKind::DimsMismatch,
                vec![i, j],
                format!("paired modules differ: a[{i}]={da}, b[{j}]={db}"),
            );
        }
    }
    report
}

/// Decides whether any valid pairing exists, by multiset comparison of
/// (oriented or rotation-normalized) dims.
pub fn isomorphism_exists(a: &Partition, b: &Partition, mode: PairingMode) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let key = |d: Dims| match mode {
        PairingMode::Strict => d,
        PairingMode::Rotational => Dims::new(d.width.min(d.height), d.width.max(d.height)),
    };
    let mut counts: HashMap<Dims, i64> = HashMap::new();
    for m in &a.modules {
        *counts.entry(key(m.dims)).or_default() += 1;
    }
    for m in &b.modules {
        *counts.entry(key(m.dims)).or_default() -= 1;
    }
    counts.values().all(|&c| c == 0)
}

/// Grid-extension description of a partition: extend every partition line
/// face to face, then record each module as the block of grid cells it
/// covers. Rows index y-intervals bottom-up, columns index x-intervals left
/// to right; blocks store half-open index ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub rows: usize,
    pub cols: usize,
    /// Per module: (row_lo, row_hi, col_lo, col_hi), half-open.
    pub blocks: Vec<(usize, usize, usize, usize)>,
    /// Column widths, summing to the parent width.
    pub alpha: Vec<u64>,
    /// Row heights, summing to the parent height.
    pub beta: Vec<u64>,
}

pub fn extract_pattern(part: &Partition) -> Pattern {
    let mut xs = BTreeSet::new();
    let mut ys = BTreeSet::new();
    xs.insert(0);
    xs.insert(part.parent.width);
    ys.insert(0);
    ys.insert(part.parent.height);
    for m in &part.modules {
        xs.insert(m.x);
        xs.insert(m.right());
        ys.insert(m.y);
        ys.insert(m.top());
    }
    let xs: Vec<u64> = xs.into_iter().collect();
    let ys: Vec<u64> = ys.into_iter().collect();
    let col_of: BTreeMap<u64, usize> = xs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let row_of: BTreeMap<u64, usize> = ys.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let blocks = part
        .modules
        .iter()
        .map(|m| (row_of[&m.y], row_of[&m.top()], col_of[&m.x], col_of[&m.right()]))
        .collect();
    Pattern {
        rows: ys.len() - 1,
        cols: xs.len() - 1,
        blocks,
        alpha: xs.windows(2).map(|w| w[1] - w[0]).collect(),
        beta: ys.windows(2).map(|w| w[1] - w[0]).collect(),
    }
}

/// Pattern equality is combinatorial: grid shape and blocks only, the length
/// vectors are ignored.
pub fn patterns_equal(p1: &Pattern, p2: &Pattern) -> bool {
    p1.rows == p2.rows && p1.cols == p2.cols && p1.blocks == p2.blocks
}

/// Reconstructs module dims from a pattern via the length vectors:
/// width is the sum of covered column widths, height of covered row heights.
pub fn pattern_module_dims(p: &Pattern) -> Vec<Dims> {
    p.blocks
        .iter()
        .map(|&(r0, r1, c0, c1)| {
            let w: u64 = p.alpha[c0..c1].iter().sum();
            let h: u64 = p.beta[r0..r1].iter().sum();
            Dims::new(w, h)
        })
        .collect()
}

/// Reorders the B side by the pairing so the correspondence becomes the
/// identity map.
fn reindexed_b(pair: &PartitionPair) -> Partition {
    let mut modules = vec![PlacedRect::new(0, 0, Dims::new(1, 1)); pair.b.size()];
    for (i, &j) in pair.pairing.iter().enumerate() {
        modules[i] = pair.b.modules[j];
    }
    Partition::new(pair.b.parent, modules)
}

/// If the two pairs are equivalent (identity correspondence after
/// reindexing, equal A-side patterns, equal B-side patterns), the instances
/// must have the same side ratio: `p * q' == p' * q`. Non-equivalent pairs
/// report `NotApplicable`.
pub fn check_ratio_lemma(pair1: &PartitionPair, pair2: &PartitionPair) -> CheckReport {
    let mut report = CheckReport::default();
    let a1 = extract_pattern(&pair1.a);
    let a2 = extract_pattern(&pair2.a);
    let b1 = extract_pattern(&reindexed_b(pair1));
    let b2 = extract_pattern(&reindexed_b(pair2));
    if pair1.size() != pair2.size() || !patterns_equal(&a1, &a2) || !patterns_equal(&b1, &b2) {
        report.push(
            ViolationKind::NotApplicable,
            Vec::new(),
            "pairs are not equivalent (patterns differ); the ratio lemma does not apply".into(),
        );
        return report;
    }
    let (p, q) = (pair1.a.parent.width as u128, pair1.a.parent.height as u128);
    let (p2, q2) = (pair2.a.parent.width as u128, pair2.a.parent.height as u128);
    if p * q2 != p2 * q {
        report.push(
            ViolationKind::RatioMismatch,
            Vec::new(),
            format!("equivalent pairs with different ratios: {p}/{q} vs {p2}/{q2}"),
        );
    }
    report
}

/// Horizontal side segments of every module, keyed by y.
fn horizontal_sides(part: &Partition) -> BTreeMap<u64, Vec<(u64, u64)>> {
    let mut sides: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    for m in &part.modules {
        sides.entry(m.y).or_default().push((m.x, m.right()));
        sides.entry(m.top()).or_default().push((m.x, m.right()));
    }
    sides
}

/// A partition is slat iff any two overlapping horizontal module sides are
/// identical segments: vertical cut lines run uninterrupted top to bottom.
pub fn is_slat(part: &Partition) -> bool {
    for (_, segs) in horizontal_sides(part) {
        for (i, &(a0, a1)) in segs.iter().enumerate() {
            for &(b0, b1) in &segs[i + 1..] {
                let overlap = a0.max(b0) < a1.min(b1);
                if overlap && (a0, a1) != (b0, b1) {
                    return false;
                }
            }
        }
    }
    true
}

/// Refines side A to slat form by extending every vertical module side to
/// full height; every cut applied to an A-module is mirrored at the same
/// horizontal offset in the paired B-module, so the pair stays strictly
/// isomorphic. Sub-pieces are emitted left to right.
pub fn slat_refine(pair: &PartitionPair) -> PartitionPair {
    let mut cuts = BTreeSet::new();
    for m in &pair.a.modules {
        cuts.insert(m.x);
        cuts.insert(m.right());
    }
    let mut a_mods = Vec::new();
    let mut b_mods = Vec::new();
    let mut pairing = Vec::new();
    for (i, ma) in pair.a.modules.iter().enumerate() {
        let mb = pair.b.modules[pair.pairing[i]];
        debug_assert_eq!(ma.dims, mb.dims);
        // Relative offsets of the global cut lines crossing this module.
        let mut offsets: Vec<u64> =
            cuts.range(ma.x..=ma.right()).map(|&x| x - ma.x).collect();
        if *offsets.first().unwrap() != 0 {
            offsets.insert(0, 0);
        }
        if *offsets.last().unwrap() != ma.dims.width {
            offsets.push(ma.dims.width);
        }
        for w in offsets.windows(2) {
            let dims = Dims::new(w[1] - w[0], ma.dims.height);
            a_mods.push(PlacedRect::new(ma.x + w[0], ma.y, dims));
            b_mods.push(PlacedRect::new(mb.x + w[0], mb.y, dims));
            pairing.push(pairing.len());
        }
    }
    PartitionPair {
        a: Partition::new(pair.a.parent, a_mods),
        b: Partition::new(pair.b.parent, b_mods),
        pairing,
    }
}

/// Applies [`slat_refine`] to side A, then the symmetric refinement driven by
/// side B's vertical sides. The second pass can re-cut side A, so only the
/// final B side is guaranteed slat.
pub fn slat_refine_both(pair: &PartitionPair) -> PartitionPair {
    let once = slat_refine(pair);
    let swapped = PartitionPair {
        a: once.b.clone(),
        b: once.a.clone(),
        pairing: invert_pairing(&once.pairing),
    };
    let refined = slat_refine(&swapped);
    PartitionPair {
        a: refined.b.clone(),
        b: refined.a.clone(),
        pairing: invert_pairing(&refined.pairing),
    }
}

fn invert_pairing(pairing: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pairing.len()];
    for (i, &j) in pairing.iter().enumerate() {
        inv[j] = i;
    }
    inv
}
