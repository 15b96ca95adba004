//! Constructive algorithms: the trivial lower bound, the Euclidean baselines
//! for the strict and rotational variants, the square-transfer construction,
//! the hybrid recursion (size and full geometry) and the stretch reduction
//! from rational inputs.
//!
//! All arithmetic is exact; the branch test `delta >= p/4` is evaluated as
//! `4*delta >= p` and `floor(sqrt(p/delta - 1))` as `isqrt((p-delta)/delta)`.

use crate::geom::{
    area, isqrt, Branch, Dims, IrtpInstance, Partition, PartitionPair, PlacedRect, SirtpInstance,
    SolveTrace, TraceRound,
};
use num_integer::Integer;
use num_rational::Ratio;

/// Exact rational used by the stretch reduction.
pub type Rat = Ratio<u128>;

/// Side-alignment rule for the rotational Euclidean transform. The choice is
/// free; no single rule is best on every instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlignmentRule {
    /// Always align the longest side with the other rectangle's long side.
    AlignLong,
    /// Always align the longest side with the other rectangle's short side.
    AlignShort,
    /// Per round, pick the alignment that identifies the fewest common
    /// modules in this round (ties break toward the long side).
    Greedy,
}

/// Trivial lower bound `ceil(q/p)`: no module wider than `p` fits the
/// transposed rectangle's short side.
pub fn lower_bound(inst: SirtpInstance) -> u64 {
    let (p, q) = inst.normalized();
    q.div_ceil(p)
}

/// Size of the hybrid recursion, with the per-round trace.
pub fn algsirtp_size(inst: SirtpInstance) -> (u128, SolveTrace) {
    let (mut p, mut q) = inst.normalized();
    let mut rounds = Vec::new();
    loop {
        let delta = q % p;
        if delta == 0 {
            rounds.push(TraceRound { p, q, delta: 0, branch: Branch::Base, added: (q / p) as u128 });
            break;
        }
        let k0 = q / p;
        if 4 * (delta as u128) >= p as u128 {
            let t = p / delta - 1;
            rounds.push(TraceRound {
                p,
                q,
                delta,
                branch: Branch::EuclidStep,
                added: (k0 + t) as u128,
            });
            q = p - t * delta;
            p = delta;
        } else {
            let m = transfer_count(p, delta);
            rounds.push(TraceRound {
                p,
                q,
                delta,
                branch: Branch::SquareTransfer,
                added: (k0 + 2 * m + 1) as u128,
            });
            q = p - m * m * delta;
            p = delta;
        }
        debug_assert!(p <= q);
    }
    let trace = SolveTrace { rounds };
    (trace.total(), trace)
}

/// `floor(sqrt(p/delta - 1))` in exact integers. The floor commutes with the
/// square root here, asserted at runtime.
fn transfer_count(p: u64, delta: u64) -> u64 {
    let f = (p - delta) / delta;
    let m = isqrt(f as u128) as u64;
    assert!((m as u128) * (m as u128) <= f as u128);
    m
}

/// Full geometry of the hybrid recursion: a strictly isomorphic pair whose
/// module count equals [`algsirtp_size`].
pub fn algsirtp_partition(inst: SirtpInstance) -> PartitionPair {
    let (p, q) = inst.normalized();
    let (a_mods, b_mods, pairing) = hybrid_tiles(p, q);
    PartitionPair {
        a: Partition::new(Dims::new(p, q), a_mods),
        b: Partition::new(Dims::new(q, p), b_mods),
        pairing,
    }
}

/// Tiles `s x l` (tall, `s <= l`) and `l x s` (wide) recursively. Returns the
/// two module lists and the strict pairing from tall indices to wide indices.
fn hybrid_tiles(s: u64, l: u64) -> (Vec<PlacedRect>, Vec<PlacedRect>, Vec<usize>) {
    debug_assert!(s <= l);
    let square = Dims::new(s, s);
    let delta = l % s;
    let k0 = l / s;
    if delta == 0 {
        let a = (0..k0).map(|j| PlacedRect::new(0, j * s, square)).collect();
        let b = (0..k0).map(|j| PlacedRect::new(j * s, 0, square)).collect();
        let pairing = (0..k0 as usize).collect();
        return (a, b, pairing);
    }

    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut pairing = Vec::new();

    // Remaining strips after the Euclid squares: s x delta on top of the tall
    // side, delta x s at the right of the wide side.
    let strip_a_y = k0 * s;
    let strip_b_x = k0 * s;

    let sub_l; // long side of the next round's subproblem
    let sub_a_origin; // where the tall sub-tiling lands inside side B
    let sub_b_origin; // where the wide sub-tiling lands inside side A

    if 4 * (delta as u128) >= s as u128 {
        for j in 0..k0 {
            a.push(PlacedRect::new(0, j * s, square));
            b.push(PlacedRect::new(j * s, 0, square));
            pairing.push(pairing.len());
        }
        // delta-squares pack from the low end of each strip.
        let t = s / delta - 1;
        let dsq = Dims::new(delta, delta);
        for j in 0..t {
            a.push(PlacedRect::new(j * delta, strip_a_y, dsq));
            b.push(PlacedRect::new(strip_b_x, j * delta, dsq));
            pairing.push(pairing.len());
        }
        sub_l = s - t * delta;
        sub_b_origin = (t * delta, strip_a_y);
        sub_a_origin = (strip_b_x, t * delta);
    } else {
        // Square transfer: route m strip pieces of each side through an
        // si x si corner carved out of the first Euclid square.
        let m = transfer_count(s, delta);
        let si = m * delta;
        debug_assert!(si < s);
        // Carved square pieces: corner fill, then the L-remainder split as a
        // full-height right slab plus a top slab.
        for j in 0..m {
            a.push(PlacedRect::new(j * delta, 0, Dims::new(delta, si)));
            b.push(PlacedRect::new(0, j * delta, Dims::new(si, delta)));
        }
        a.push(PlacedRect::new(si, 0, Dims::new(s - si, s)));
        b.push(PlacedRect::new(si, 0, Dims::new(s - si, s)));
        a.push(PlacedRect::new(0, si, Dims::new(si, s - si)));
        b.push(PlacedRect::new(0, si, Dims::new(si, s - si)));
        for j in 1..k0 {
            a.push(PlacedRect::new(0, j * s, square));
            b.push(PlacedRect::new(j * s, 0, square));
        }
        let strip_base = a.len();
        for j in 0..m {
            a.push(PlacedRect::new(j * si, strip_a_y, Dims::new(si, delta)));
            b.push(PlacedRect::new(strip_b_x, j * si, Dims::new(delta, si)));
        }
        // A's corner fills match B's strip pieces and vice versa; everything
        // else pairs positionally.
        let mu = m as usize;
        for j in 0..mu {
            pairing.push(strip_base + j);
        }
        pairing.push(mu); // right slab
        pairing.push(mu + 1); // top slab
        for j in 0..(k0 as usize - 1) {
            pairing.push(mu + 2 + j);
        }
        for j in 0..mu {
            pairing.push(j);
        }
        debug_assert_eq!(pairing.len(), a.len());
        sub_l = s - m * m * delta;
        sub_b_origin = (m * m * delta, strip_a_y);
        sub_a_origin = (strip_b_x, m * m * delta);
    }

    embed_subproblem(
        delta,
        sub_l,
        sub_a_origin,
        sub_b_origin,
        &mut a,
        &mut b,
        &mut pairing,
        hybrid_tiles,
    );
    (a, b, pairing)
}

/// Solves the subproblem `SIRTP(short, long)` and embeds it: its tall side
/// lands inside side B's residual strip, its wide side inside side A's.
/// Swapping roles keeps orientations consistent, so the parent pairing is the
/// inverse of the subproblem pairing, shifted by the modules already placed.
fn embed_subproblem(
    short: u64,
    long: u64,
    a_origin_in_b: (u64, u64),
    b_origin_in_a: (u64, u64),
    a: &mut Vec<PlacedRect>,
    b: &mut Vec<PlacedRect>,
    pairing: &mut Vec<usize>,
    tiles: fn(u64, u64) -> (Vec<PlacedRect>, Vec<PlacedRect>, Vec<usize>),
) {
    debug_assert!(short <= long);
    let (sub_a, sub_b, sub_pairing) = tiles(short, long);
    let offset = a.len();
    for r in &sub_b {
        a.push(r.translated(b_origin_in_a.0, b_origin_in_a.1));
    }
    for r in &sub_a {
        b.push(r.translated(a_origin_in_b.0, a_origin_in_b.1));
    }
    pairing.resize(offset + sub_b.len(), usize::MAX);
    for (i, &j) in sub_pairing.iter().enumerate() {
        pairing[offset + j] = offset + i;
    }
    debug_assert!(pairing.iter().all(|&j| j != usize::MAX));
}

/// Pure Euclidean construction for the strict problem: every module is a
/// square, cut by successive division.
pub fn euclid_sirtp(inst: SirtpInstance) -> PartitionPair {
    let (p, q) = inst.normalized();
    let (a_mods, b_mods, pairing) = euclid_tiles(p, q);
    PartitionPair {
        a: Partition::new(Dims::new(p, q), a_mods),
        b: Partition::new(Dims::new(q, p), b_mods),
        pairing,
    }
}

/// Size of the Euclidean construction: the sum of the continued-fraction
/// quotients of `q/p`.
pub fn euclid_sirtp_size(inst: SirtpInstance) -> u128 {
    let (mut p, mut q) = inst.normalized();
    let mut total = 0u128;
    loop {
        total += (q / p) as u128;
        let r = q % p;
        if r == 0 {
            return total;
        }
        q = p;
        p = r;
    }
}

fn euclid_tiles(s: u64, l: u64) -> (Vec<PlacedRect>, Vec<PlacedRect>, Vec<usize>) {
    debug_assert!(s <= l);
    let square = Dims::new(s, s);
    let k0 = l / s;
    let delta = l % s;
    let mut a: Vec<PlacedRect> = (0..k0).map(|j| PlacedRect::new(0, j * s, square)).collect();
    let mut b: Vec<PlacedRect> = (0..k0).map(|j| PlacedRect::new(j * s, 0, square)).collect();
    let mut pairing: Vec<usize> = (0..k0 as usize).collect();
    if delta != 0 {
        embed_subproblem(delta, s, (k0 * s, 0), (0, k0 * s), &mut a, &mut b, &mut pairing, euclid_tiles);
    }
    (a, b, pairing)
}

/// Square-transfer construction for `SIRTP(p, p+1)`. Exactly `2*sqrt(p)+2`
/// modules when `p` is a perfect square, at most `4*sqrt(p)+1` otherwise.
pub fn square_transfer_pair(p: u64) -> Result<PartitionPair, crate::Error> {
    if p < 2 {
        return Err(crate::Error::InvalidInstance(
            "square transfer needs p >= 2 (p = 1 has no interior square to host it)".into(),
        ));
    }
    let f = isqrt(p as u128) as u64;
    let rem = p - f * f;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut pairing = Vec::new();

    // The carved p x p square: f corner fills, then the L-remainder as a
    // full-height right slab plus a top slab.
    for j in 0..f {
        a.push(PlacedRect::new(j, 0, Dims::new(1, f)));
        b.push(PlacedRect::new(0, j, Dims::new(f, 1)));
    }
    a.push(PlacedRect::new(f, 0, Dims::new(p - f, p)));
    b.push(PlacedRect::new(f, 0, Dims::new(p - f, p)));
    a.push(PlacedRect::new(0, f, Dims::new(f, p - f)));
    b.push(PlacedRect::new(0, f, Dims::new(f, p - f)));

    // The slim strip: f transferred segments, then unit squares for the
    // leftover p - f^2 cells.
    let strip_base = a.len();
    for j in 0..f {
        a.push(PlacedRect::new(j * f, p, Dims::new(f, 1)));
        b.push(PlacedRect::new(p, j * f, Dims::new(1, f)));
    }
    let unit = Dims::new(1, 1);
    for j in 0..rem {
        a.push(PlacedRect::new(f * f + j, p, unit));
        b.push(PlacedRect::new(p, f * f + j, unit));
    }

    let fu = f as usize;
    for j in 0..fu {
        pairing.push(strip_base + j); // corner fill <-> strip segment
    }
    pairing.push(fu); // right slab
    pairing.push(fu + 1); // top slab
    for j in 0..fu {
        pairing.push(j); // strip segment <-> corner fill
    }
    for j in 0..rem as usize {
        pairing.push(strip_base + fu + j); // unit squares
    }

    Ok(PartitionPair {
        a: Partition::new(Dims::new(p, p + 1), a),
        b: Partition::new(Dims::new(p + 1, p), b),
        pairing,
    })
}

/// Rotational Euclidean transform between `a x b` and `c x d`.
pub fn euclid_irtp(inst: IrtpInstance, rule: AlignmentRule) -> (u128, PartitionPair) {
    let mut side1 = Vec::new();
    let mut side2 = Vec::new();
    let mut pairs = Vec::new();
    irtp_rec(
        Region { x: 0, y: 0, dims: Dims::new(inst.a, inst.b) },
        Region { x: 0, y: 0, dims: Dims::new(inst.c, inst.d) },
        rule,
        &mut side1,
        &mut side2,
        &mut pairs,
        false,
    );
    let mut pairing = vec![usize::MAX; side1.len()];
    for (i, j) in pairs {
        pairing[i] = j;
    }
    debug_assert!(pairing.iter().all(|&j| j != usize::MAX));
    let size = side1.len() as u128;
    (
        size,
        PartitionPair {
            a: Partition::new(Dims::new(inst.a, inst.b), side1),
            b: Partition::new(Dims::new(inst.c, inst.d), side2),
            pairing,
        },
    )
}

#[derive(Clone, Copy)]
struct Region {
    x: u64,
    y: u64,
    dims: Dims,
}

impl Region {
    fn rect(&self) -> PlacedRect {
        PlacedRect::new(self.x, self.y, self.dims)
    }

    fn long(&self) -> u64 {
        self.dims.width.max(self.dims.height)
    }

    fn short(&self) -> u64 {
        self.dims.width.min(self.dims.height)
    }

    /// Splits off `n` pieces of `seg` length along the long axis and `cross`
    /// along the short axis, starting from the low end. `cross` must equal
    /// the short side. Returns the pieces and the residual (if nonempty).
    fn cut_long_axis(&self, n: u64, seg: u64) -> (Vec<PlacedRect>, Option<Region>) {
        let horizontal = self.dims.width >= self.dims.height;
        let cross = self.short();
        let mut pieces = Vec::with_capacity(n as usize);
        for j in 0..n {
            let r = if horizontal {
                PlacedRect::new(self.x + j * seg, self.y, Dims::new(seg, cross))
            } else {
                PlacedRect::new(self.x, self.y + j * seg, Dims::new(cross, seg))
            };
            pieces.push(r);
        }
        let rest = self.long() - n * seg;
        let residual = (rest > 0).then(|| {
            if horizontal {
                Region { x: self.x + n * seg, y: self.y, dims: Dims::new(rest, cross) }
            } else {
                Region { x: self.x, y: self.y + n * seg, dims: Dims::new(cross, rest) }
            }
        });
        (pieces, residual)
    }

    /// Splits off `n` pieces spanning the full long axis, each `seg` thick
    /// along the short axis, from the low end.
    fn cut_short_axis(&self, n: u64, seg: u64) -> (Vec<PlacedRect>, Option<Region>) {
        let horizontal = self.dims.width >= self.dims.height;
        let full = self.long();
        let mut pieces = Vec::with_capacity(n as usize);
        for j in 0..n {
            let r = if horizontal {
                PlacedRect::new(self.x, self.y + j * seg, Dims::new(full, seg))
            } else {
                PlacedRect::new(self.x + j * seg, self.y, Dims::new(seg, full))
            };
            pieces.push(r);
        }
        let rest = self.short() - n * seg;
        let residual = (rest > 0).then(|| {
            if horizontal {
                Region { x: self.x, y: self.y + n * seg, dims: Dims::new(full, rest) }
            } else {
                Region { x: self.x + n * seg, y: self.y, dims: Dims::new(rest, full) }
            }
        });
        (pieces, residual)
    }
}

/// One Euclidean round on two regions of equal area. `flip` tracks whether
/// `ra` is physically the instance's second rectangle, so that recorded pairs
/// keep their (side1, side2) orientation.
#[allow(clippy::too_many_arguments)]
fn irtp_rec(
    ra: Region,
    rb: Region,
    rule: AlignmentRule,
    out_a: &mut Vec<PlacedRect>,
    out_b: &mut Vec<PlacedRect>,
    pairs: &mut Vec<(usize, usize)>,
    flip: bool,
) {
    debug_assert_eq!(area(ra.dims), area(rb.dims));
    if ra.dims == rb.dims || ra.dims == rb.dims.swapped() {
        out_a.push(ra.rect());
        out_b.push(rb.rect());
        let pair = (out_a.len() - 1, out_b.len() - 1);
        pairs.push(if flip { (pair.1, pair.0) } else { pair });
        return;
    }
    if rb.long() > ra.long() {
        return irtp_rec(rb, ra, rule, out_b, out_a, pairs, !flip);
    }

    // ra holds the longest side a; its mate is b. rb has sides c >= d.
    let a_len = ra.long();
    let b_len = ra.short();
    let c_len = rb.long();
    let d_len = rb.short();
    debug_assert!(a_len >= c_len && c_len >= d_len && d_len >= b_len);

    let align_long = match rule {
        AlignmentRule::AlignLong => true,
        AlignmentRule::AlignShort => false,
        AlignmentRule::Greedy => a_len / c_len <= a_len / d_len,
    };
    let (n, pieces_b, res_b) = if align_long {
        // Common modules c x b: cut rb's short axis into b-thick slices.
        let n = a_len / c_len;
        let (pieces, res) = rb.cut_short_axis(n, b_len);
        (n, pieces, res)
    } else {
        // Common modules d x b: cut rb's long axis into b-long segments.
        let n = a_len / d_len;
        let (pieces, res) = rb.cut_long_axis(n, b_len);
        (n, pieces, res)
    };
    let divisor = if align_long { c_len } else { d_len };
    let (pieces_a, res_a) = ra.cut_long_axis(n, divisor);

    for (pa, pb) in pieces_a.into_iter().zip(pieces_b) {
        debug_assert!(pa.dims == pb.dims || pa.dims == pb.dims.swapped());
        out_a.push(pa);
        out_b.push(pb);
        let pair = (out_a.len() - 1, out_b.len() - 1);
        pairs.push(if flip { (pair.1, pair.0) } else { pair });
    }

    match (res_a, res_b) {
        (Some(na), Some(nb)) => irtp_rec(na, nb, rule, out_a, out_b, pairs, flip),
        (None, None) => {}
        _ => unreachable!("residual areas must vanish together"),
    }
}

/// Result of reducing a rational strict instance to integer form: the
/// integer instance plus, per side, the solved rectangle it corresponds to
/// and the rational stretch factors mapping solved geometry back onto the
/// original rectangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrtpReduction {
    pub instance: SirtpInstance,
    /// Integer rectangle whose solution maps to the first input `a x b`.
    pub first_rect: Dims,
    /// `(x, y)` stretch factors from `first_rect` back to `a x b`.
    pub first_stretch: (Rat, Rat),
    /// Integer rectangle whose solution maps to the second input `c x d`.
    pub second_rect: Dims,
    pub second_stretch: (Rat, Rat),
}

/// Reduces the rational strict instance `a x b` vs `c x d` (widths `a` and
/// `c` parallel, `ab = cd`) to an equivalent integer instance: shrink the
/// parallel sides by `d/a`, then scale by the least common multiple of the
/// denominators and drop the common factor.
pub fn reduce_srtp(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<SrtpReduction, crate::Error> {
    for v in [a, b, c, d] {
        if v <= Rat::from_integer(0) {
            return Err(crate::Error::InvalidInstance("sides must be positive".into()));
        }
    }
    if a * b != c * d {
        return Err(crate::Error::InvalidInstance(format!("areas differ: {a}*{b} != {c}*{d}")));
    }
    // After the d/a shrink the rectangles are (d x b) and (b x d). Scale both
    // sides to coprime integers B and D.
    let lcm_den = b.denom().lcm(d.denom());
    let b0 = b.numer() * (lcm_den / b.denom());
    let d0 = d.numer() * (lcm_den / d.denom());
    let g = b0.gcd(&d0);
    let (bi, di) = (b0 / g, d0 / g);
    if bi > u64::MAX as u128 || di > u64::MAX as u128 {
        return Err(crate::Error::InvalidInstance("reduced sides exceed 64 bits".into()));
    }
    let first_rect = Dims::new(di as u64, bi as u64);
    let second_rect = Dims::new(bi as u64, di as u64);
    Ok(SrtpReduction {
        instance: SirtpInstance::new(bi.min(di) as u64, bi.max(di) as u64),
        first_rect,
        first_stretch: (a / Rat::from_integer(di), b / Rat::from_integer(bi)),
        second_rect,
        second_stretch: (c / Rat::from_integer(bi), d / Rat::from_integer(di)),
    })
}

/// Right-hand side of the per-instance recursion bound:
/// `floor(q/p) + 8*sqrt(p) + log2(p) + 4*depth`, evaluated in reals.
pub fn lemma_bound(inst: SirtpInstance, depth: usize) -> f64 {
    let (p, q) = inst.normalized();
    (q / p) as f64 + 8.0 * (p as f64).sqrt() + (p as f64).log2() + 4.0 * depth as f64
}

/// Depth bound `2*ceil(log2(p)) + 1`, valid for `p >= 2`.
pub fn depth_bound(p: u64) -> usize {
    debug_assert!(p >= 2);
    let ceil_log2 = (64 - (p - 1).leading_zeros()) as usize;
    2 * ceil_log2 + 1
}
