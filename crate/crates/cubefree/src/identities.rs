//! Exact verification of the double-counting identities behind the sphere
//! counts `h_l`, plus the triangle diagnostic for the distance-two graph.
//!
//! Both identities count walks of two `l`-steps whose endpoints lie in `S`,
//! grouped either by the walk's midpoint or by its endpoint pair:
//!
//! * over all midpoints:   `sum_{v in V_n} h_l(v)^2
//!                            = sum_{x in S} sum_{k<=l} C(2k,k) C(n-2k,l-k) h_2k(x)`
//! * over midpoints in S:  `sum_{v in S} h_l(v)^2
//!                            = sum_{x in S} sum_{z in S, dist even <= 2l} h_l(x,z)`
//!
//! They hold for every set exactly; any mismatch is an implementation bug, so
//! the verifiers compute both sides along genuinely different routes.

use crate::cube::{binomial, count_at_distance, for_each_position_subset, PointSet, Vertex};
use crate::{Error, Result};
use num_bigint::BigUint;

// ============================================================================
// Big-integer accumulation
// ============================================================================

/// Accumulates `u128` partials into a `BigUint`, flushing before overflow.
struct Accumulator {
    partial: u128,
    total: BigUint,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            partial: 0,
            total: BigUint::from(0u32),
        }
    }

    fn add(&mut self, value: u128) {
        match self.partial.checked_add(value) {
            Some(sum) => self.partial = sum,
            None => {
                self.total += self.partial;
                self.partial = value;
            }
        }
    }

    fn finish(mut self) -> BigUint {
        self.total += self.partial;
        self.total
    }
}

// ============================================================================
// Identity reports
// ============================================================================

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub n: u32,
    pub l: u32,
    pub set_size: u64,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub matches: bool,
}

fn check_radius(s: &PointSet, l: u32) -> Result<()> {
    if l < 1 || l > s.dim() / 2 {
        return Err(Error::RadiusOutOfRange {
            radius: l,
            dim: s.dim(),
        });
    }
    Ok(())
}

/// Verifies `sum_{v in V_n} h_l(v)^2` against the convolution over `S`.
///
/// The left side scans every vertex of the cube; the right side scans only
/// members of `S`, counting members at even distances `2k` weighted by the
/// number of two-step walks across that distance.
pub fn verify_square_identity_over_cube(s: &PointSet, l: u32) -> Result<IdentityReport> {
    check_radius(s, l)?;
    let n = s.dim();
    let mut lhs = Accumulator::new();
    for bits in 0..1u64 << n {
        let h = count_at_distance(s, Vertex::new(n, bits)?, l)?;
        lhs.add(h as u128 * h as u128);
    }
    let coeff: Vec<u128> = (0..=l)
        .map(|k| binomial(2 * k, k) as u128 * binomial(n - 2 * k, l - k) as u128)
        .collect();
    let mut rhs = Accumulator::new();
    for x in s.iter() {
        for k in 0..=l {
            let h2k = count_at_distance(s, x, 2 * k)?;
            rhs.add(coeff[k as usize] * h2k as u128);
        }
    }
    let lhs = lhs.finish();
    let rhs = rhs.finish();
    Ok(IdentityReport {
        n,
        l,
        set_size: s.len(),
        matches: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Verifies `sum_{v in S} h_l(v)^2` against the pair counts `h_l(x, z)`
/// summed over member pairs at even distance at most `2l` (the triple count
/// over walks with all three points in `S`).
pub fn verify_square_identity_over_set(s: &PointSet, l: u32) -> Result<IdentityReport> {
    check_radius(s, l)?;
    let n = s.dim();
    let mut lhs = Accumulator::new();
    for bits in 0..1u64 << n {
        if !s.contains_bits(bits) {
            continue;
        }
        let h = count_at_distance(s, Vertex::new(n, bits)?, l)?;
        lhs.add(h as u128 * h as u128);
    }
    let mut rhs = Accumulator::new();
    let mut inside: Vec<u32> = Vec::with_capacity(n as usize);
    let mut outside: Vec<u32> = Vec::with_capacity(n as usize);
    let mut in_masks: Vec<u64> = Vec::new();
    let mut out_masks: Vec<u64> = Vec::new();
    for x_bits in 0..1u64 << n {
        if !s.contains_bits(x_bits) {
            continue;
        }
        for a in 0..=l {
            // z runs over members at distance exactly 2a from x.
            crate::cube::for_each_weight_mask(n, 2 * a, &mut |dmask| {
                if !s.contains_bits(x_bits ^ dmask) {
                    return;
                }
                inside.clear();
                outside.clear();
                for p in 0..n {
                    if dmask >> p & 1 == 1 {
                        inside.push(p);
                    } else {
                        outside.push(p);
                    }
                }
                in_masks.clear();
                for_each_position_subset(&inside, a, &mut |m| in_masks.push(m));
                out_masks.clear();
                for_each_position_subset(&outside, l - a, &mut |m| out_masks.push(m));
                let mut pair_count = 0u64;
                for &im in &in_masks {
                    for &om in &out_masks {
                        if s.contains_bits(x_bits ^ im ^ om) {
                            pair_count += 1;
                        }
                    }
                }
                rhs.add(pair_count as u128);
            });
        }
    }
    let lhs = lhs.finish();
    let rhs = rhs.finish();
    Ok(IdentityReport {
        n,
        l,
        set_size: s.len(),
        matches: lhs == rhs,
        lhs,
        rhs,
    })
}

// ============================================================================
// Triangle diagnostic
// ============================================================================

/// Edge count and triangle status of the graph on the coordinates whose edges
/// are the distance-two flip pairs from `x` into `S`.
#[derive(Clone, Debug)]
pub struct MantelReport {
    pub n: u32,
    pub edge_count: u64,
    /// 1-indexed coordinates of the first triangle found, if any.
    pub triangle: Option<(u32, u32, u32)>,
}

impl MantelReport {
    pub fn triangle_found(&self) -> bool {
        self.triangle.is_some()
    }

    /// Upper bound `n^2 / 4` that triangle-free graphs obey.
    pub fn edge_bound(&self) -> u64 {
        (self.n as u64 * self.n as u64) / 4
    }
}

/// Builds the graph on `[n]` whose edges are the coordinate pairs `{i, j}`
/// with `x` flipped at `i` and `j` landing in `S`, and checks it for
/// triangles. A triangle here is exactly an embedded copy of the distance-two
/// configuration `F2` through `x`.
pub fn mantel_diagnostic(s: &PointSet, x: Vertex) -> Result<MantelReport> {
    if x.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: x.dim(),
        });
    }
    if !s.contains(x) {
        return Err(Error::NotAMember {
            vertex: x.to_string(),
        });
    }
    let n = s.dim();
    let mut adj = vec![0u64; n as usize];
    let mut edge_count = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            let y = x.bits() ^ (1u64 << i) ^ (1u64 << j);
            if s.contains_bits(y) {
                adj[i as usize] |= 1u64 << j;
                adj[j as usize] |= 1u64 << i;
                edge_count += 1;
            }
        }
    }
    let mut triangle = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            if adj[i as usize] >> j & 1 == 0 {
                continue;
            }
            let common = adj[i as usize] & adj[j as usize];
            if common != 0 {
                let k = common.trailing_zeros();
                triangle = Some((i + 1, j + 1, k + 1));
                break 'outer;
            }
        }
    }
    Ok(MantelReport {
        n,
        edge_count,
        triangle,
    })
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Construction;
    use crate::cube::sphere;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_set(rng: &mut ChaCha8Rng, dim: u32, density: f64) -> PointSet {
        let mut s = PointSet::empty(dim).unwrap();
        for bits in 0..1u64 << dim {
            if rng.random_bool(density) {
                s.insert_bits(bits);
            }
        }
        s
    }

    /// The common walk count both identities bracket, computed by a third,
    /// fully direct route for cross-checking the two verifier sides.
    fn walk_sum_direct(s: &PointSet, l: u32, midpoints_in_s: bool) -> u128 {
        let mut total = 0u128;
        for x in s.iter() {
            for y in sphere(x, l).unwrap() {
                if midpoints_in_s && !s.contains(y) {
                    continue;
                }
                total += count_at_distance(s, y, l).unwrap() as u128;
            }
        }
        total
    }

    #[test]
    fn empty_set_gives_zero_on_both_sides() {
        let s = PointSet::empty(8).unwrap();
        for l in 1..=4 {
            let r = verify_square_identity_over_cube(&s, l).unwrap();
            assert!(r.matches);
            assert_eq!(r.lhs, BigUint::from(0u32));
            let r = verify_square_identity_over_set(&s, l).unwrap();
            assert!(r.matches);
            assert_eq!(r.rhs, BigUint::from(0u32));
        }
    }

    #[test]
    fn full_cube_closed_form() {
        // Both sides equal 2^n * n^2 at l = 1 on the full cube.
        let n = 7u32;
        let s = PointSet::full(n).unwrap();
        let r = verify_square_identity_over_cube(&s, 1).unwrap();
        assert!(r.matches);
        let expect = BigUint::from((1u128 << n) * (n as u128) * (n as u128));
        assert_eq!(r.lhs, expect);
    }

    #[test]
    fn singleton_has_no_walks() {
        let mut s = PointSet::empty(6).unwrap();
        s.insert_bits(0b010010);
        for l in 1..=3 {
            let r = verify_square_identity_over_set(&s, l).unwrap();
            assert!(r.matches);
            assert_eq!(r.lhs, BigUint::from(0u32));
        }
    }

    #[test]
    fn radius_preconditions() {
        let s = PointSet::full(6).unwrap();
        assert!(verify_square_identity_over_cube(&s, 0).is_err());
        assert!(verify_square_identity_over_cube(&s, 4).is_err());
        assert!(verify_square_identity_over_set(&s, 4).is_err());
    }

    #[test]
    fn identities_hold_on_random_sets_and_match_direct_walks() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..10 {
            let s = random_set(&mut rng, 8, 0.4 + 0.02 * trial as f64);
            for l in 1..=3u32 {
                let r1 = verify_square_identity_over_cube(&s, l).unwrap();
                assert!(r1.matches, "cube identity failed: {r1:?}");
                assert_eq!(r1.lhs, BigUint::from(walk_sum_direct(&s, l, false)));
                let r2 = verify_square_identity_over_set(&s, l).unwrap();
                assert!(r2.matches, "set identity failed: {r2:?}");
                assert_eq!(r2.lhs, BigUint::from(walk_sum_direct(&s, l, true)));
            }
        }
    }

    #[test]
    fn top_convolution_term_never_exceeds_the_sum() {
        // Dropping every k < l term of the convolution leaves a lower bound.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_set(&mut rng, 9, 0.5);
        for l in 1..=3u32 {
            let r = verify_square_identity_over_cube(&s, l).unwrap();
            let mut top = BigUint::from(0u32);
            let c = binomial(2 * l, l);
            for x in s.iter() {
                top += BigUint::from(c * count_at_distance(&s, x, 2 * l).unwrap());
            }
            assert!(top <= r.rhs);
        }
    }

    #[test]
    fn mantel_on_distance_two_free_construction() {
        // Weights 0,1 mod 4 never admit a triangle in the distance-two graph.
        let s = Construction::mod4_zero_one().build(8).unwrap();
        for x in s.iter() {
            let r = mantel_diagnostic(&s, x).unwrap();
            assert!(!r.triangle_found(), "triangle at {x}");
            assert!(r.edge_count <= r.edge_bound());
            assert_eq!(r.edge_count, count_at_distance(&s, x, 2).unwrap());
        }
    }

    #[test]
    fn mantel_on_full_cube_finds_triangle() {
        let s = PointSet::full(4).unwrap();
        let r = mantel_diagnostic(&s, Vertex::zero(4).unwrap()).unwrap();
        assert!(r.triangle_found());
        assert_eq!(r.edge_count, binomial(4, 2));
    }

    #[test]
    fn mantel_on_singleton() {
        let mut s = PointSet::empty(5).unwrap();
        s.insert_bits(7);
        let r = mantel_diagnostic(&s, Vertex::new(5, 7).unwrap()).unwrap();
        assert_eq!(r.edge_count, 0);
        assert!(!r.triangle_found());
        assert!(mantel_diagnostic(&s, Vertex::zero(5).unwrap()).is_err());
    }
}
