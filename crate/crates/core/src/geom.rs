//! Domain types shared by every other module: oriented dimensions, placed
//! rectangles, partitions, partition pairs and solve traces. All geometry is
//! exact integer arithmetic; products are computed in 128-bit intermediates.

use serde::{Deserialize, Serialize};

/// Oriented width x height. Orientation is semantic: `Dims(w, h)` and
/// `Dims(h, w)` are different modules unless `w == h`, and the strict
/// isomorphism check compares oriented dims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dims {
    pub width: u64,
    pub height: u64,
}

impl Dims {
    pub fn new(width: u64, height: u64) -> Self {
        assert!(width >= 1 && height >= 1, "degenerate dims {width}x{height}");
        Dims { width, height }
    }

    /// The same rectangle rotated a quarter turn.
    pub fn swapped(self) -> Self {
        Dims { width: self.height, height: self.width }
    }

    pub fn is_square(self) -> bool {
        self.width == self.height
    }
}

impl std::fmt::Display for Dims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

/// Exact area with a 128-bit intermediate; `u64 * u64` cannot overflow `u128`.
pub fn area(d: Dims) -> u128 {
    d.width as u128 * d.height as u128
}

/// Floor of the integer square root, by Newton iteration on `u128`.
/// No floating point is involved anywhere.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Initial guess from the bit length, then Newton steps downward.
    let mut x = 1u128 << (n.ilog2() / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(x * x <= n && (x + 1) * (x + 1) > n);
    x
}

/// A module placed inside a parent rectangle. Origin is the bottom-left
/// corner of the parent; y grows upward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlacedRect {
    pub x: u64,
    pub y: u64,
    pub dims: Dims,
}

impl PlacedRect {
    pub fn new(x: u64, y: u64, dims: Dims) -> Self {
        PlacedRect { x, y, dims }
    }

    pub fn right(&self) -> u64 {
        self.x + self.dims.width
    }

    pub fn top(&self) -> u64 {
        self.y + self.dims.height
    }

    pub fn translated(&self, dx: u64, dy: u64) -> Self {
        PlacedRect { x: self.x + dx, y: self.y + dy, dims: self.dims }
    }
}

/// A rectangle partition: a parent rectangle together with the modules that
/// tile it exactly. Construction does not validate the tiling; use
/// `analysis::check_tiling`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parent: Dims,
    pub modules: Vec<PlacedRect>,
}

impl Partition {
    pub fn new(parent: Dims, modules: Vec<PlacedRect>) -> Self {
        Partition { parent, modules }
    }

    pub fn size(&self) -> usize {
        self.modules.len()
    }
}

/// How a pairing identifies modules across the two partitions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairingMode {
    /// Oriented dims must match exactly; rotation is not allowed.
    Strict,
    /// Dims may match up to swapping width and height per module.
    Rotational,
}

/// Two partitions with a module correspondence: the solution object of a
/// rectangle transformation. `pairing[i]` is the index in `b.modules` of the
/// module identified with `a.modules[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionPair {
    pub a: Partition,
    pub b: Partition,
    pub pairing: Vec<usize>,
}

impl PartitionPair {
    pub fn size(&self) -> usize {
        self.a.size()
    }
}

/// A `p x q` to `q x p` transformation instance. `p` and `q` need not be
/// coprime or ordered; solvers normalize to `p <= q` internally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SirtpInstance {
    pub p: u64,
    pub q: u64,
}

impl SirtpInstance {
    pub fn new(p: u64, q: u64) -> Self {
        assert!(p >= 1 && q >= 1, "sides must be positive");
        SirtpInstance { p, q }
    }

    /// `(short, long)` with `short <= long`.
    pub fn normalized(self) -> (u64, u64) {
        if self.p <= self.q {
            (self.p, self.q)
        } else {
            (self.q, self.p)
        }
    }
}

/// An `a x b` to `c x d` instance with rotation allowed, `a >= c >= d >= b`
/// and `ab = cd`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrtpInstance {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl IrtpInstance {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self, crate::Error> {
        if a < 1 || b < 1 || c < 1 || d < 1 {
            return Err(crate::Error::InvalidInstance("sides must be positive".into()));
        }
        if !(a >= c && c >= d && d >= b) {
            return Err(crate::Error::InvalidInstance(format!(
                "side ordering violated: need a >= c >= d >= b, got ({a},{b},{c},{d})"
            )));
        }
        if a as u128 * b as u128 != c as u128 * d as u128 {
            return Err(crate::Error::InvalidInstance(format!(
                "areas differ: {a}*{b} != {c}*{d}"
            )));
        }
        Ok(IrtpInstance { a, b, c, d })
    }
}

/// Which step a recursion round performed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `p | q`: cut `q/p` squares and stop.
    Base,
    /// `4*delta >= p`: Euclid squares plus delta squares.
    EuclidStep,
    /// `4*delta < p`: Euclid squares plus a square transfer.
    SquareTransfer,
}

/// One round of the recursion: the subproblem sides, the remainder, the
/// branch taken and how many modules the round contributed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRound {
    pub p: u64,
    pub q: u64,
    pub delta: u64,
    pub branch: Branch,
    pub added: u128,
}

/// Per-round record of a solver run. The base round is included, so the
/// recursion depth is `rounds.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub rounds: Vec<TraceRound>,
}

impl SolveTrace {
    /// Recursion depth: number of non-base rounds.
    pub fn depth(&self) -> usize {
        self.rounds.len().saturating_sub(1)
    }

    /// Total module count: sum of per-round contributions.
    pub fn total(&self) -> u128 {
        self.rounds.iter().map(|r| r.added).sum()
    }
}
