//! Embeddings of `Q_d` into `Q_n`: subcube enumeration, configuration orbits
//! under the automorphism group of `Q_d`, and freeness decisions with
//! witnesses.
//!
//! Every embedding factors as the increasing bijection from a subcube's
//! varying coordinates onto `[d]`, composed with an automorphism of `Q_d`.
//! Containment of a configuration copy is therefore decided per subcube
//! against the orbit of the configuration, never by enumerating raw maps.

use crate::config::{Configuration, ConfigurationFamily};
use crate::cube::{permute_bits, PointSet, Vertex};
use crate::{Error, Result, DIM_MAX};
use std::collections::HashSet;
use std::fmt;

/// Orbit enumeration walks images under generators; past this dimension the
/// orbit of a generic configuration no longer fits in memory.
pub const ORBIT_DIM_MAX: u32 = 10;

/// Materialising every placement is capped to keep the hypergraph in memory.
pub const PLACEMENT_DIM_MAX: u32 = 16;

// ============================================================================
// Subcubes
// ============================================================================

/// A `d`-dimensional subcube of `Q_n`: a set of varying coordinates plus a
/// fixed assignment on the complement.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subcube {
    ambient: u32,
    varying: u64,
    fixed: u64,
}

impl Subcube {
    pub fn new(ambient: u32, varying: u64, fixed: u64) -> Result<Self> {
        if ambient < 1 || ambient > 63 {
            return Err(Error::DimensionOutOfRange {
                dim: ambient,
                min: 1,
                max: 63,
            });
        }
        if varying >> ambient != 0 || fixed >> ambient != 0 || varying & fixed != 0 {
            return Err(Error::BitsOutOfRange {
                bits: varying | fixed,
                dim: ambient,
            });
        }
        Ok(Subcube {
            ambient,
            varying,
            fixed,
        })
    }

    pub fn ambient_dim(&self) -> u32 {
        self.ambient
    }

    pub fn dim(&self) -> u32 {
        self.varying.count_ones()
    }

    pub fn varying_mask(&self) -> u64 {
        self.varying
    }

    pub fn fixed_bits(&self) -> u64 {
        self.fixed
    }

    /// Ascending positions of the varying coordinates.
    pub fn positions(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.dim() as usize);
        let mut b = self.varying;
        while b != 0 {
            out.push(b.trailing_zeros());
            b &= b - 1;
        }
        out
    }

    /// Maps a point of the local cube `V_d` into the ambient cube, sending
    /// local bit `j` to the `j`-th smallest varying coordinate.
    pub fn expand(&self, local: u64, positions: &[u32]) -> u64 {
        let mut out = self.fixed;
        let mut b = local;
        while b != 0 {
            let j = b.trailing_zeros() as usize;
            b &= b - 1;
            out |= 1u64 << positions[j];
        }
        out
    }

    pub fn contains_bits(&self, bits: u64) -> bool {
        bits & !self.varying == self.fixed
    }
}

impl fmt::Debug for Subcube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subcube(n={}, varying={:#b}, fixed={:#b})",
            self.ambient, self.varying, self.fixed
        )
    }
}

/// Streams every `d`-dimensional subcube of `Q_n`: varying sets in
/// lexicographic order of their index lists, and for each varying set the
/// fixed assignments in ascending numeric order.
pub fn enumerate_subcubes(n: u32, d: u32) -> Result<SubcubeIter> {
    if d < 1 || d > n {
        return Err(Error::DimensionOutOfRange { dim: d, min: 1, max: n });
    }
    if n > DIM_MAX {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: DIM_MAX,
        });
    }
    Ok(SubcubeIter {
        n,
        d,
        combo: (0..d).collect(),
        fixed_counter: 0,
        done: false,
    })
}

pub struct SubcubeIter {
    n: u32,
    d: u32,
    combo: Vec<u32>,
    fixed_counter: u64,
    done: bool,
}

impl SubcubeIter {
    fn varying_mask(&self) -> u64 {
        self.combo.iter().fold(0u64, |m, &p| m | (1u64 << p))
    }

    fn advance_combo(&mut self) -> bool {
        let d = self.d as usize;
        let n = self.n;
        let mut i = d;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.combo[i] != i as u32 + n - self.d {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        self.combo[i] += 1;
        for j in i + 1..d {
            self.combo[j] = self.combo[j - 1] + 1;
        }
        true
    }
}

impl Iterator for SubcubeIter {
    type Item = Subcube;

    fn next(&mut self) -> Option<Subcube> {
        if self.done {
            return None;
        }
        let varying = self.varying_mask();
        // Scatter the counter onto the complement positions (ascending).
        let mut fixed = 0u64;
        let mut k = self.fixed_counter;
        if k != 0 {
            let mut comp = Vec::with_capacity((self.n - self.d) as usize);
            for p in 0..self.n {
                if varying >> p & 1 == 0 {
                    comp.push(p);
                }
            }
            let mut j = 0;
            while k != 0 {
                if k & 1 == 1 {
                    fixed |= 1u64 << comp[j];
                }
                k >>= 1;
                j += 1;
            }
        }
        let item = Subcube {
            ambient: self.n,
            varying,
            fixed,
        };
        self.fixed_counter += 1;
        if self.fixed_counter == 1u64 << (self.n - self.d) {
            self.fixed_counter = 0;
            if !self.advance_combo() {
                self.done = true;
            }
        }
        Some(item)
    }
}

// ============================================================================
// Orbits under Aut(Q_d)
// ============================================================================

/// The distinct images of a configuration under all coordinate permutations
/// and bit flips of its cube, in discovery order (the seed comes first).
#[derive(Clone, Debug)]
pub struct Orbit {
    dim: u32,
    members: Vec<Configuration>,
}

impl Orbit {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn members(&self) -> &[Configuration] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// One `2^d`-bit membership mask per orbit member.
    pub(crate) fn local_masks(&self) -> Vec<Vec<u64>> {
        let words = local_mask_words(self.dim);
        self.members
            .iter()
            .map(|m| {
                let mut mask = vec![0u64; words];
                for &p in m.points() {
                    mask[(p >> 6) as usize] |= 1u64 << (p & 63);
                }
                mask
            })
            .collect()
    }
}

fn local_mask_words(d: u32) -> usize {
    if d >= 6 {
        1usize << (d - 6)
    } else {
        1
    }
}

/// Enumerates the orbit of a configuration under the full automorphism group
/// of its cube (adjacent transpositions and single-coordinate flips generate
/// it), breadth-first from the given configuration.
pub fn config_orbit(f: &Configuration) -> Result<Orbit> {
    let d = f.dim();
    if d > ORBIT_DIM_MAX {
        return Err(Error::OrbitDimTooLarge {
            dim: d,
            max: ORBIT_DIM_MAX,
        });
    }
    let seed: Vec<u64> = f.points().to_vec();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(seed.clone());
    let mut order: Vec<Vec<u64>> = vec![seed];
    let mut head = 0usize;
    let mut scratch: Vec<u64> = Vec::with_capacity(f.len());
    while head < order.len() {
        let current = order[head].clone();
        head += 1;
        // Adjacent transpositions, then the flip of coordinate 1.
        for g in 0..d {
            scratch.clear();
            if g + 1 < d {
                for &p in &current {
                    let x = ((p >> g) ^ (p >> (g + 1))) & 1;
                    scratch.push(p ^ ((x << g) | (x << (g + 1))));
                }
            } else {
                for &p in &current {
                    scratch.push(p ^ 1);
                }
            }
            scratch.sort_unstable();
            if !seen.contains(&scratch) {
                seen.insert(scratch.clone());
                order.push(scratch.clone());
            }
        }
    }
    let members = order
        .into_iter()
        .map(|points| Configuration::new(d, points).expect("orbit image stays valid"))
        .collect();
    Ok(Orbit { dim: d, members })
}

// ============================================================================
// Placements and freeness
// ============================================================================

/// The image of one embedding of a configuration: a small list of vertices of
/// the host cube, all inside one subcube.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    dim: u32,
    points: Vec<u64>, // sorted
}

impl Placement {
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // images of nonempty configurations
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.points
            .iter()
            .map(|&p| Vertex::new(self.dim, p).expect("placement points validated"))
            .collect()
    }
}

impl fmt::Debug for Placement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        write!(f, "Placement[{}]", strings.join(", "))
    }
}

fn check_config_fits(s: &PointSet, d: u32) -> Result<()> {
    if d > s.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: d,
        });
    }
    Ok(())
}

/// Extracts the membership pattern of `S` inside a subcube as a `2^d`-bit mask.
fn induced_mask(s: &PointSet, sc: &Subcube, positions: &[u32], out: &mut [u64]) -> u32 {
    out.fill(0);
    let d = sc.dim();
    let mut count = 0u32;
    for local in 0..1u64 << d {
        if s.contains_bits(sc.expand(local, positions)) {
            out[(local >> 6) as usize] |= 1u64 << (local & 63);
            count += 1;
        }
    }
    count
}

fn mask_subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().zip(big).all(|(a, b)| a & !b == 0)
}

/// Finds the first embedded copy of `F` inside `S` in deterministic scan
/// order, or `None` when `S` is `F`-free.
pub fn find_witness(s: &PointSet, f: &Configuration) -> Result<Option<Placement>> {
    let orbit = config_orbit(f)?;
    find_witness_with_orbit(s, &orbit)
}

/// Same as [`find_witness`] with a precomputed orbit.
pub fn find_witness_with_orbit(s: &PointSet, orbit: &Orbit) -> Result<Option<Placement>> {
    let d = orbit.dim();
    check_config_fits(s, d)?;
    let masks = orbit.local_masks();
    let sizes: Vec<u32> = orbit.members().iter().map(|m| m.len() as u32).collect();
    let min_size = *sizes.iter().min().expect("orbit is nonempty");
    let mut induced = vec![0u64; local_mask_words(d)];
    for sc in enumerate_subcubes(s.dim(), d)? {
        let positions = sc.positions();
        let count = induced_mask(s, &sc, &positions, &mut induced);
        if count < min_size {
            continue;
        }
        for (i, mask) in masks.iter().enumerate() {
            if sizes[i] <= count && mask_subset(mask, &induced) {
                let mut points: Vec<u64> = orbit.members()[i]
                    .points()
                    .iter()
                    .map(|&p| sc.expand(p, &positions))
                    .collect();
                points.sort_unstable();
                return Ok(Some(Placement {
                    dim: s.dim(),
                    points,
                }));
            }
        }
    }
    Ok(None)
}

/// True when no embedding maps `F` into `S`.
pub fn is_free(s: &PointSet, f: &Configuration) -> Result<bool> {
    Ok(find_witness(s, f)?.is_none())
}

/// True when `S` is free of every member of the family.
pub fn is_family_free(s: &PointSet, fam: &ConfigurationFamily) -> Result<bool> {
    for f in fam.members() {
        if !is_free(s, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Materialises every placement of every family member in `Q_n`, deduplicated
/// as point sets, in deterministic scan order (family order, then subcube
/// order, then orbit order).
pub fn all_placements(n: u32, fam: &ConfigurationFamily) -> Result<Vec<Placement>> {
    if n > PLACEMENT_DIM_MAX {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: PLACEMENT_DIM_MAX,
        });
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out: Vec<Placement> = Vec::new();
    for f in fam.members() {
        let d = f.dim();
        if d > n {
            return Err(Error::DimensionMismatch { left: n, right: d });
        }
        let orbit = config_orbit(f)?;
        for sc in enumerate_subcubes(n, d)? {
            let positions = sc.positions();
            for member in orbit.members() {
                let mut points: Vec<u64> = member
                    .points()
                    .iter()
                    .map(|&p| sc.expand(p, &positions))
                    .collect();
                points.sort_unstable();
                if seen.insert(points.clone()) {
                    out.push(Placement { dim: n, points });
                }
            }
        }
    }
    Ok(out)
}

// ============================================================================
// Automorphisms of the host cube
// ============================================================================

/// All permutations of `0..n` in a fixed deterministic order.
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut items: Vec<u32> = (0..n).collect();
    let mut out = Vec::new();
    heap_permute(&mut items, n as usize, &mut out);
    out
}

fn heap_permute(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// Canonical representative of a point set under the full automorphism group
/// of its cube (the image whose membership mask is numerically least). Capped
/// at `n <= 6` where the group has at most `2^6 * 6!` elements.
pub fn canonicalize(s: &PointSet) -> Result<PointSet> {
    let n = s.dim();
    if n > 6 {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: 6,
        });
    }
    let points: Vec<u64> = s.iter_bits().collect();
    let mut best: Option<u64> = None;
    for perm in permutations(n) {
        for flip in 0..1u64 << n {
            let mut mask = 0u64;
            for &p in &points {
                mask |= 1u64 << (permute_bits(p, &perm) ^ flip);
            }
            if best.is_none_or(|b| mask < b) {
                best = Some(mask);
            }
        }
    }
    let mut out = PointSet::empty(n)?;
    if let Some(mask) = best {
        let mut m = mask;
        while m != 0 {
            let p = m.trailing_zeros() as u64;
            m &= m - 1;
            out.insert_bits(p);
        }
    }
    Ok(out)
}

// ============================================================================
// Tests
// ============================================================================
