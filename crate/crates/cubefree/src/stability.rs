//! Local-stability statistics: how closely a set resembles the
//! two-of-three-layers structure around each vertex.
//!
//! For a threshold `delta` the report counts, exactly,
//!
//! * `bad_a`: non-members whose neighbourhood misses more than a `delta`
//!   fraction of `S` (`h_1(x) < (1 - delta) n`),
//! * `bad_b`: members whose in-set degree strays from `n/2` by more than
//!   `delta * n`,
//! * `bad_c`: members whose distance-two flip pairs differ from "all pairs
//!   minus the pairs inside the distance-one flips" by more than
//!   `delta * C(n, 2)` elements.
//!
//! All threshold comparisons cross-multiply exact integers.

use crate::cube::{binomial, PointSet, Vertex};
use crate::rational::Rational;
use crate::{Error, Result};

/// The local picture of `S` around a base vertex: which single flips and
/// which double flips land in `S`.
#[derive(Clone, Debug)]
pub struct LocalView {
    pub base: Vertex,
    /// Singleton flip masks into `S`; size `h_1(base)`.
    pub ones: Vec<u64>,
    /// Pair flip masks into `S`; size `h_2(base)`.
    pub twos: Vec<u64>,
}

impl LocalView {
    pub fn new(s: &PointSet, base: Vertex) -> Result<Self> {
        Ok(LocalView {
            base,
            ones: flip_sets(s, base, 1)?,
            twos: flip_sets(s, base, 2)?,
        })
    }
}

/// `S^l(x)`: the masks (popcount `l`) whose flip from `x` lands in `S`,
/// sorted ascending. The size equals `h_l(x)`.
pub fn flip_sets(s: &PointSet, x: Vertex, l: u32) -> Result<Vec<u64>> {
    if x.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: x.dim(),
        });
    }
    if l > s.dim() {
        return Err(Error::RadiusOutOfRange {
            radius: l,
            dim: s.dim(),
        });
    }
    let mut out = Vec::new();
    crate::cube::for_each_weight_mask(s.dim(), l, &mut |mask| {
        if s.contains_bits(x.bits() ^ mask) {
            out.push(mask);
        }
    });
    out.sort_unstable();
    Ok(out)
}

/// Exceptional-set sizes for the three local-stability conditions at a given
/// threshold, with the in-set/out-of-set degree histograms.
#[derive(Clone, Debug, serde::Serialize)]
pub struct StabilityReport {
    pub n: u32,
    pub set_size: u64,
    pub delta: Rational,
    pub bad_a: u64,
    pub bad_b: u64,
    pub bad_c: u64,
    /// Size of the smallest single exceptional set covering all three
    /// conditions: `bad_a` plus the union of the (b) and (c) offenders.
    pub exceptional_union: u64,
    /// `max(0, 2/3 - |S| / 2^n)`, the density shortfall the calibration
    /// `delta = 4 * epsilon^(1/6)` is stated in terms of.
    pub epsilon: Rational,
    pub hist_in: Vec<u64>,
    pub hist_out: Vec<u64>,
}

impl StabilityReport {
    /// `4 * epsilon^(1/6)`, for display next to the exact counts.
    pub fn calibrated_delta(&self) -> f64 {
        4.0 * self.epsilon.as_f64().powf(1.0 / 6.0)
    }
}

/// Computes the report for `S` at threshold `delta` (a rational in `[0, 1]`).
pub fn stability_report(s: &PointSet, delta: Rational) -> Result<StabilityReport> {
    if delta.cmp_ratio(1, 1) == std::cmp::Ordering::Greater {
        return Err(Error::BadRational(format!("delta {delta} exceeds 1")));
    }
    let n = s.dim();
    let num = delta.numer();
    let den = delta.denom();
    let pairs = binomial(n, 2);
    let mut bad_a = 0u64;
    let mut bad_b = 0u64;
    let mut bad_c = 0u64;
    let mut bad_bc_union = 0u64;
    let mut hist_in = vec![0u64; n as usize + 1];
    let mut hist_out = vec![0u64; n as usize + 1];
    for bits in 0..1u64 << n {
        // Distance-one flips into S as a mask over the coordinates.
        let mut ones_mask = 0u64;
        for i in 0..n {
            if s.contains_bits(bits ^ (1u64 << i)) {
                ones_mask |= 1u64 << i;
            }
        }
        let h1 = ones_mask.count_ones() as u64;
        if !s.contains_bits(bits) {
            hist_out[h1 as usize] += 1;
            // (a): h1 < (1 - delta) * n, exactly.
            let lhs = h1 as u128 * den as u128;
            let rhs = n as u128 * (den - num.min(den)) as u128;
            if lhs < rhs {
                bad_a += 1;
            }
            continue;
        }
        hist_in[h1 as usize] += 1;
        // (b): |h1 - n/2| > delta * n, doubled to stay integral.
        let spread = (2 * h1 as i128 - n as i128).unsigned_abs();
        let b_bad = spread * den as u128 > 2 * num as u128 * n as u128;
        if b_bad {
            bad_b += 1;
        }
        // (c): symmetric difference between the distance-two flip pairs and
        // "all pairs minus the pairs inside the distance-one flips".
        let mut h2 = 0i128;
        let mut both_in = 0i128;
        for i in 0..n {
            for j in i + 1..n {
                let pair = (1u64 << i) | (1u64 << j);
                if s.contains_bits(bits ^ pair) {
                    h2 += 1;
                    if ones_mask & pair == pair {
                        both_in += 1;
                    }
                }
            }
        }
        let defect = pairs as i128 - binomial(h1 as u32, 2) as i128 - h2 + 2 * both_in;
        debug_assert!(defect >= 0);
        let c_bad = defect as u128 * den as u128 > num as u128 * pairs as u128;
        if c_bad {
            bad_c += 1;
        }
        if b_bad || c_bad {
            bad_bc_union += 1;
        }
    }
    let space = 1u64 << n;
    let epsilon = if 3 * s.len() >= 2 * space {
        Rational::zero()
    } else {
        Rational::new(2 * space - 3 * s.len(), 3 * space)?
    };
    Ok(StabilityReport {
        n,
        set_size: s.len(),
        delta,
        bad_a,
        bad_b,
        bad_c,
        exceptional_union: bad_a + bad_bc_union,
        epsilon,
        hist_in,
        hist_out,
    })
}

// ============================================================================
// Tests
// ============================================================================
