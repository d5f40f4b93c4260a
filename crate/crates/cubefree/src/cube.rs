//! Cube primitives: vertices of `Q_n`, bitset-backed point sets, Hamming
//! spheres, layers, and the sphere-count functions `h_l`.
//!
//! A vertex is an `n`-bit word; bit `i` of the word stores coordinate `i + 1`
//! (0-indexed words, 1-indexed coordinates). This convention is fixed here and
//! used by every other module, including the text format where coordinate 1 is
//! the leftmost character.

use crate::{Error, Result, DIM_MAX, DIM_MAX_STREAM};
use std::fmt;

// ============================================================================
// Small combinatorial helpers
// ============================================================================

/// Binomial coefficient `C(n, k)` for `n <= 63` (largest value fits in `u64`).
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    debug_assert!(acc <= u64::MAX as u128);
    acc as u64
}

/// Calls `f` with every mask formed by OR-ing exactly `k` of the given bit
/// positions, in lexicographic order of the chosen index lists.
pub(crate) fn for_each_position_subset(positions: &[u32], k: u32, f: &mut impl FnMut(u64)) {
    let k = k as usize;
    if k > positions.len() {
        return;
    }
    if k == 0 {
        f(0);
        return;
    }
    // Iterative lexicographic combinations over indices into `positions`.
    let n = positions.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut mask = 0u64;
        for &i in &idx {
            mask |= 1u64 << positions[i];
        }
        f(mask);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Calls `f` with every `n`-bit mask of popcount `k`, in lexicographic order
/// of the support index lists.
pub(crate) fn for_each_weight_mask(n: u32, k: u32, f: &mut impl FnMut(u64)) {
    let positions: Vec<u32> = (0..n).collect();
    for_each_position_subset(&positions, k, f);
}

// ============================================================================
// Vertex
// ============================================================================

/// A vertex of `Q_n`: the dimension and an `n`-bit coordinate word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    dim: u32,
    bits: u64,
}

impl Vertex {
    pub fn new(dim: u32, bits: u64) -> Result<Self> {
        if dim < 1 || dim > DIM_MAX_STREAM {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: DIM_MAX_STREAM,
            });
        }
        if dim < 64 && bits >> dim != 0 {
            return Err(Error::BitsOutOfRange { bits, dim });
        }
        Ok(Vertex { dim, bits })
    }

    /// The all-zeros vertex of `Q_n`.
    pub fn zero(dim: u32) -> Result<Self> {
        Vertex::new(dim, 0)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of coordinates equal to 1.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// 1-indexed coordinates where the vertex is 1.
    pub fn support(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        let mut b = self.bits;
        while b != 0 {
            out.push(b.trailing_zeros() + 1);
            b &= b - 1;
        }
        out
    }

    /// The coordinate-wise complement within `Q_n`.
    pub fn complement(&self) -> Vertex {
        let mask = if self.dim == 64 {
            u64::MAX
        } else {
            (1u64 << self.dim) - 1
        };
        Vertex {
            dim: self.dim,
            bits: self.bits ^ mask,
        }
    }

    /// Parses an `n`-character binary string, coordinate 1 leftmost.
    pub fn parse(text: &str) -> Result<Self> {
        let mut bits = 0u64;
        let mut dim = 0u32;
        for (i, ch) in text.trim().chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1u64 << i,
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("invalid character {ch:?} in vertex string"),
                    })
                }
            }
            dim += 1;
            if dim > DIM_MAX_STREAM {
                return Err(Error::DimensionOutOfRange {
                    dim,
                    min: 1,
                    max: DIM_MAX_STREAM,
                });
            }
        }
        Vertex::new(dim, bits)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "{}", (self.bits >> i) & 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Hamming distance between two vertices of the same cube.
pub fn hamming(x: Vertex, y: Vertex) -> Result<u32> {
    if x.dim != y.dim {
        return Err(Error::DimensionMismatch {
            left: x.dim,
            right: y.dim,
        });
    }
    Ok((x.bits ^ y.bits).count_ones())
}

/// All vertices at distance exactly `radius` from `x`, in ascending order of
/// their coordinate words.
pub fn sphere(x: Vertex, radius: u32) -> Result<Vec<Vertex>> {
    if radius > x.dim {
        return Err(Error::RadiusOutOfRange {
            radius,
            dim: x.dim,
        });
    }
    let mut out = Vec::with_capacity(binomial(x.dim, radius) as usize);
    for_each_weight_mask(x.dim, radius, &mut |mask| {
        out.push(Vertex {
            dim: x.dim,
            bits: x.bits ^ mask,
        });
    });
    out.sort_unstable_by_key(|v| v.bits);
    Ok(out)
}

// ============================================================================
// PointSet
// ============================================================================

/// A subset of `V_n` as a `2^n`-bit membership table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: u32,
    words: Vec<u64>,
    count: u64,
}

impl PointSet {
    fn word_count(dim: u32) -> usize {
        if dim >= 6 {
            1usize << (dim - 6)
        } else {
            1
        }
    }

    fn check_dim(dim: u32) -> Result<()> {
        if dim < 1 || dim > DIM_MAX {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: DIM_MAX,
            });
        }
        Ok(())
    }

    pub fn empty(dim: u32) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(PointSet {
            dim,
            words: vec![0; Self::word_count(dim)],
            count: 0,
        })
    }

    pub fn full(dim: u32) -> Result<Self> {
        Self::check_dim(dim)?;
        let mut words = vec![u64::MAX; Self::word_count(dim)];
        if dim < 6 {
            words[0] = (1u64 << (1u64 << dim)) - 1;
        }
        Ok(PointSet {
            dim,
            words,
            count: 1u64 << dim,
        })
    }

    /// Union of the layers with the given weights.
    pub fn from_layers(dim: u32, weights: &[u32]) -> Result<Self> {
        let mut set = Self::empty(dim)?;
        let mut seen = vec![false; dim as usize + 1];
        for &w in weights {
            if w > dim {
                return Err(Error::WeightOutOfRange { weight: w, dim });
            }
            if seen[w as usize] {
                continue;
            }
            seen[w as usize] = true;
            for_each_weight_mask(dim, w, &mut |mask| {
                set.insert_bits(mask);
            });
        }
        Ok(set)
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(dim: u32, vertices: I) -> Result<Self> {
        let mut set = Self::empty(dim)?;
        for v in vertices {
            if v.dim != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: v.dim,
                });
            }
            set.insert_bits(v.bits);
        }
        Ok(set)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline(always)]
    pub fn contains_bits(&self, bits: u64) -> bool {
        let idx = bits as usize;
        (self.words[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        debug_assert_eq!(v.dim, self.dim);
        self.contains_bits(v.bits)
    }

    /// Inserts a point; returns true if it was absent.
    pub fn insert_bits(&mut self, bits: u64) -> bool {
        let idx = bits as usize;
        let w = &mut self.words[idx >> 6];
        let mask = 1u64 << (idx & 63);
        if *w & mask == 0 {
            *w |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    /// Removes a point; returns true if it was present.
    pub fn remove_bits(&mut self, bits: u64) -> bool {
        let idx = bits as usize;
        let w = &mut self.words[idx >> 6];
        let mask = 1u64 << (idx & 63);
        if *w & mask != 0 {
            *w &= !mask;
            self.count -= 1;
            true
        } else {
            false
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        let dim = self.dim;
        self.iter_bits().map(move |bits| Vertex { dim, bits })
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = (wi as u64) << 6;
            BitIter { word: w, base }
        })
    }

    /// Complement within `V_n`.
    pub fn complement(&self) -> PointSet {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.dim < 6 {
            words[0] &= (1u64 << (1u64 << self.dim)) - 1;
        }
        PointSet {
            dim: self.dim,
            words,
            count: (1u64 << self.dim) - self.count,
        }
    }

    /// Image of the set under the cube automorphism that sends coordinate `i`
    /// to coordinate `perm[i]` and then flips the coordinates in `flip`.
    pub fn apply_automorphism(&self, perm: &[u32], flip: u64) -> PointSet {
        debug_assert_eq!(perm.len(), self.dim as usize);
        let mut out = PointSet::empty(self.dim).expect("dim already validated");
        for bits in self.iter_bits() {
            out.insert_bits(permute_bits(bits, perm) ^ flip);
        }
        out
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(n={}, |S|={})", self.dim, self.count)
    }
}

struct BitIter {
    word: u64,
    base: u64,
}

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let tz = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(self.base + tz)
    }
}

/// Applies a coordinate permutation to a coordinate word: bit `i` of the input
/// lands on bit `perm[i]` of the output.
pub fn permute_bits(bits: u64, perm: &[u32]) -> u64 {
    let mut out = 0u64;
    let mut b = bits;
    while b != 0 {
        let i = b.trailing_zeros() as usize;
        b &= b - 1;
        out |= 1u64 << perm[i];
    }
    out
}

// ============================================================================
// Sphere counts
// ============================================================================

/// `h_l(x)`: the number of members of `S` at distance exactly `l` from `x`.
pub fn count_at_distance(s: &PointSet, x: Vertex, l: u32) -> Result<u64> {
    if x.dim != s.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: x.dim,
        });
    }
    if l > x.dim {
        return Err(Error::RadiusOutOfRange { radius: l, dim: x.dim });
    }
    let mut count = 0u64;
    for_each_weight_mask(x.dim, l, &mut |mask| {
        if s.contains_bits(x.bits ^ mask) {
            count += 1;
        }
    });
    Ok(count)
}

/// `h_l(x, z)`: the number of members of `S` at distance exactly `l` from both
/// `x` and `z`. Zero whenever `dist(x, z)` is odd or exceeds `2l`.
pub fn count_at_distance_pair(s: &PointSet, x: Vertex, z: Vertex, l: u32) -> Result<u64> {
    if x.dim != s.dim() || z.dim != s.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim,
            right: z.dim,
        });
    }
    if l > x.dim {
        return Err(Error::RadiusOutOfRange { radius: l, dim: x.dim });
    }
    let diff = x.bits ^ z.bits;
    let d = diff.count_ones();
    if d % 2 == 1 || d > 2 * l {
        return Ok(0);
    }
    // y is at distance l from both x and z exactly when it flips half of the
    // differing coordinates of x and l - d/2 of the agreeing ones.
    let half = d / 2;
    let inside: Vec<u32> = (0..x.dim).filter(|&i| diff >> i & 1 == 1).collect();
    let outside: Vec<u32> = (0..x.dim).filter(|&i| diff >> i & 1 == 0).collect();
    let mut count = 0u64;
    for_each_position_subset(&inside, half, &mut |in_mask| {
        for_each_position_subset(&outside, l - half, &mut |out_mask| {
            if s.contains_bits(x.bits ^ in_mask ^ out_mask) {
                count += 1;
            }
        });
    });
    Ok(count)
}

// ============================================================================
// Tests
// ============================================================================
