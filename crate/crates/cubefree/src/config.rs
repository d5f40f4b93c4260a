//! Generators for the named forbidden configurations and the layer-based
//! constructions used throughout the crate.
//!
//! Configurations live in a small cube `Q_d`; constructions are subsets of a
//! host cube `Q_n` picked out by weight residues (plus one two-piece set that
//! is layer-like only within each piece).

use crate::cube::{for_each_weight_mask, PointSet, Vertex};
use crate::{Error, Result};
use std::fmt;

// ============================================================================
// Configuration
// ============================================================================

/// A forbidden configuration: a nonempty set of points of `V_d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    dim: u32,
    points: Vec<u64>, // sorted, deduplicated
}

impl Configuration {
    pub fn new(dim: u32, mut points: Vec<u64>) -> Result<Self> {
        if dim < 1 || dim > 63 {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: 63,
            });
        }
        if points.is_empty() {
            return Err(Error::EmptyConfiguration);
        }
        for &p in &points {
            if dim < 64 && p >> dim != 0 {
                return Err(Error::BitsOutOfRange { bits: p, dim });
            }
        }
        points.sort_unstable();
        points.dedup();
        Ok(Configuration { dim, points })
    }

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
        false // enforced nonempty at construction
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.points
            .iter()
            .map(|&p| Vertex::new(self.dim, p).expect("validated at construction"))
            .collect()
    }

    /// Bitmask over `0..=d` of the weights occurring among the points.
    pub fn weight_profile(&self) -> u64 {
        let mut mask = 0u64;
        for &p in &self.points {
            mask |= 1u64 << p.count_ones();
        }
        mask
    }

    /// The whole vertex set `V_d`.
    pub fn full(dim: u32) -> Result<Self> {
        if dim > 20 {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: 20,
            });
        }
        Configuration::new(dim, (0..1u64 << dim).collect())
    }

    /// `G_d`: all points of weight 0 or 1, plus the weight-2 points whose two
    /// support coordinates have opposite parity (a complete-bipartite set of
    /// pairs). `G_2` is all of `V_2`.
    pub fn g(dim: u32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 2,
                max: 63,
            });
        }
        let mut points = vec![0u64];
        for i in 0..dim {
            points.push(1u64 << i);
        }
        for i in 0..dim {
            for j in i + 1..dim {
                // 1-indexed coordinates i+1 and j+1 must differ in parity,
                // which is the same condition on the 0-indexed positions.
                if (i + j) % 2 == 1 {
                    points.push((1u64 << i) | (1u64 << j));
                }
            }
        }
        Configuration::new(dim, points)
    }

    /// `F1`: the origin of `Q_3` together with its three neighbours (a star).
    pub fn f1() -> Self {
        Configuration::new(3, vec![0b000, 0b001, 0b010, 0b100]).unwrap()
    }

    /// `F2`: the origin of `Q_3` together with the three points at distance
    /// two from it.
    pub fn f2() -> Self {
        Configuration::new(3, vec![0b000, 0b011, 0b101, 0b110]).unwrap()
    }

    /// `F3`: an antipodal pair in `Q_3`.
    pub fn f3() -> Self {
        Configuration::new(3, vec![0b000, 0b111]).unwrap()
    }

    /// `F1d`: the origin of `Q_d` and all weight-1 points (a `d`-star).
    pub fn f1_general(dim: u32) -> Result<Self> {
        if dim < 3 {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 3,
                max: 63,
            });
        }
        let mut points = vec![0u64];
        for i in 0..dim {
            points.push(1u64 << i);
        }
        Configuration::new(dim, points)
    }

    /// `F2d`: the origin of `Q_d` plus the opposite-parity weight-2 points.
    pub fn f2_general(dim: u32) -> Result<Self> {
        if dim < 3 {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 3,
                max: 63,
            });
        }
        let mut points = vec![0u64];
        for i in 0..dim {
            for j in i + 1..dim {
                if (i + j) % 2 == 1 {
                    points.push((1u64 << i) | (1u64 << j));
                }
            }
        }
        Configuration::new(dim, points)
    }

    /// `Fdd`: an antipodal pair in `Q_d`.
    pub fn antipodal(dim: u32) -> Result<Self> {
        if dim < 3 {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 3,
                max: 63,
            });
        }
        let top = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
        Configuration::new(dim, vec![0, top])
    }

    /// The transversal configuration of a complete multipartite hypergraph:
    /// `parts` partitions the `d` coordinates into consecutive blocks, and the
    /// points are those whose support picks exactly one coordinate from each
    /// block. Yields `p_1 * p_2 * ... * p_r` points of weight `r`.
    pub fn multipartite(dim: u32, parts: &[u32]) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.iter().sum::<u32>() != dim {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} do not sum to {dim}"
            )));
        }
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidPartition(format!(
                    "parts {parts:?} not sorted descending"
                )));
            }
        }
        if parts.iter().any(|&p| !(2..=3).contains(&p)) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} must each be 2 or 3"
            )));
        }
        let mut points = vec![0u64];
        let mut offset = 0u32;
        for &p in parts {
            let mut next = Vec::with_capacity(points.len() * p as usize);
            for base in &points {
                for i in 0..p {
                    next.push(base | (1u64 << (offset + i)));
                }
            }
            points = next;
            offset += p;
        }
        Configuration::new(dim, points)
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration(d={}, {} points)", self.dim, self.points.len())
    }
}

/// Parses a built-in configuration name. Returns `Ok(None)` when the text does
/// not match any built-in scheme (the caller may then treat it as a path).
///
/// Recognised names: `V2`, `Gd:<d>`, `F1`, `F2`, `F3`, `F1d:<d>`, `F2d:<d>`,
/// `Fdd:<d>`, `K:<d>:<p1,p2,...>`.
pub fn parse_named(name: &str) -> Result<Option<Configuration>> {
    let parse_dim = |txt: &str| -> Result<u32> {
        txt.parse::<u32>()
            .map_err(|_| Error::UnknownName(name.to_string()))
    };
    let cfg = match name {
        "V2" => Some(Configuration::full(2)?),
        "F1" => Some(Configuration::f1()),
        "F2" => Some(Configuration::f2()),
        "F3" => Some(Configuration::f3()),
        _ => {
            if let Some(rest) = name.strip_prefix("Gd:") {
                Some(Configuration::g(parse_dim(rest)?)?)
            } else if let Some(rest) = name.strip_prefix("F1d:") {
                Some(Configuration::f1_general(parse_dim(rest)?)?)
            } else if let Some(rest) = name.strip_prefix("F2d:") {
                Some(Configuration::f2_general(parse_dim(rest)?)?)
            } else if let Some(rest) = name.strip_prefix("Fdd:") {
                Some(Configuration::antipodal(parse_dim(rest)?)?)
            } else if let Some(rest) = name.strip_prefix("K:") {
                let (d_txt, parts_txt) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::UnknownName(name.to_string()))?;
                let d = parse_dim(d_txt)?;
                let parts = parts_txt
                    .split(',')
                    .map(|p| parse_dim(p.trim()))
                    .collect::<Result<Vec<u32>>>()?;
                Some(Configuration::multipartite(d, &parts)?)
            } else {
                None
            }
        }
    };
    Ok(cfg)
}

// ============================================================================
// ConfigurationFamily
// ============================================================================

/// A nonempty family of forbidden configurations (dimensions may differ).
#[derive(Clone, Debug)]
pub struct ConfigurationFamily {
    members: Vec<Configuration>,
}

impl ConfigurationFamily {
    pub fn new(members: Vec<Configuration>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(ConfigurationFamily { members })
    }

    pub fn single(member: Configuration) -> Self {
        ConfigurationFamily {
            members: vec![member],
        }
    }

    pub fn members(&self) -> &[Configuration] {
        &self.members
    }

    pub fn max_dim(&self) -> u32 {
        self.members.iter().map(|m| m.dim()).max().unwrap()
    }
}

// ============================================================================
// t-values and the standard transversal partition
// ============================================================================

/// The pair `(t_2(d), t_3(d))`:
/// `t_2(d)` is 0 when `ceil(d/3)` is odd and 1 otherwise;
/// `t_3(d)` is `3^(d/3)`, `4*3^((d-4)/3)` or `2*3^((d-2)/3)` according to
/// `d mod 3`.
pub fn t_values(d: u32) -> Result<(u64, u64)> {
    if d < 2 {
        return Err(Error::DimensionOutOfRange {
            dim: d,
            min: 2,
            max: 63,
        });
    }
    let t2 = if d.div_ceil(3) % 2 == 1 { 0 } else { 1 };
    let t3 = match d % 3 {
        0 => 3u64.pow(d / 3),
        1 => 4 * 3u64.pow((d - 4) / 3),
        _ => 2 * 3u64.pow((d - 2) / 3),
    };
    Ok((t2, t3))
}

/// The partition of `d` into `ceil(d/3)` parts of size 2 or 3 (threes first)
/// whose multipartite transversal has exactly `t_3(d)` points.
pub fn transversal_partition(d: u32) -> Result<Vec<u32>> {
    if d < 2 {
        return Err(Error::DimensionOutOfRange {
            dim: d,
            min: 2,
            max: 63,
        });
    }
    let mut parts = Vec::new();
    match d % 3 {
        0 => parts.extend(std::iter::repeat_n(3, (d / 3) as usize)),
        1 => {
            parts.extend(std::iter::repeat_n(3, ((d - 4) / 3) as usize));
            parts.extend([2, 2]);
        }
        _ => {
            parts.extend(std::iter::repeat_n(3, ((d - 2) / 3) as usize));
            parts.push(2);
        }
    }
    Ok(parts)
}

// ============================================================================
// Constructions
// ============================================================================

/// A named large free set inside `Q_n`.
///
/// All constructions except [`Construction::NonStability`] are unions of full
/// layers selected by a weight residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `{x : |x| mod modulus in residues}`.
    LayerResidues { modulus: u32, residues: Vec<u32> },
    /// The two-piece set `{|x| <= n/2, |x| not 0 mod 3}` united with
    /// `{|x| >= n/2 + 3, |x Delta [n/2]| not 0 mod 3}`; requires `n` even.
    /// Near-extremal but not obtainable from a layer set by a small edit.
    NonStability,
}

impl Construction {
    fn residues(modulus: u32, residues: &[u32]) -> Self {
        let mut rs: Vec<u32> = residues.iter().map(|&r| r % modulus).collect();
        rs.sort_unstable();
        rs.dedup();
        Construction::LayerResidues {
            modulus,
            residues: rs,
        }
    }

    /// `S_i`: keep the two layer classes other than `i` modulo 3. The
    /// classical largest `V2`-free sets.
    pub fn kostochka(i: u32) -> Self {
        let rs: Vec<u32> = (0..3).filter(|&r| r != i % 3).collect();
        Construction::residues(3, &rs)
    }

    /// Even-weight layers; free of the star `F1` and the antipodal pair `F3`.
    pub fn even_weights() -> Self {
        Construction::residues(2, &[0])
    }

    /// Weights 0 or 1 modulo 4; free of `F2`.
    pub fn mod4_zero_one() -> Self {
        Construction::residues(4, &[0, 1])
    }

    /// Weights divisible by 3; free of `{F1, F2}`.
    pub fn mod3_zero() -> Self {
        Construction::residues(3, &[0])
    }

    /// Weights divisible by 4; free of `{F1, F2, F3}`.
    pub fn mod4_zero() -> Self {
        Construction::residues(4, &[0])
    }

    /// Weights divisible by `d + 1`; meets at most one layer of any
    /// `d`-dimensional subcube.
    pub fn spaced(d: u32) -> Self {
        Construction::residues(d + 1, &[0])
    }

    /// Parses a construction name:
    /// `S0`/`S1`/`S2`, `even`, `mod:<m>:<r1,r2,...>`, `spaced:<d>`, `nonstab`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "S0" => return Ok(Construction::kostochka(0)),
            "S1" => return Ok(Construction::kostochka(1)),
            "S2" => return Ok(Construction::kostochka(2)),
            "even" => return Ok(Construction::even_weights()),
            "nonstab" => return Ok(Construction::NonStability),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("spaced:") {
            let d = rest
                .parse::<u32>()
                .map_err(|_| Error::UnknownName(name.to_string()))?;
            return Ok(Construction::spaced(d));
        }
        if let Some(rest) = name.strip_prefix("mod:") {
            let (m_txt, rs_txt) = rest
                .split_once(':')
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            let m = m_txt
                .parse::<u32>()
                .map_err(|_| Error::UnknownName(name.to_string()))?;
            if m == 0 {
                return Err(Error::UnknownName(name.to_string()));
            }
            let rs = rs_txt
                .split(',')
                .map(|r| {
                    r.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::UnknownName(name.to_string()))
                })
                .collect::<Result<Vec<u32>>>()?;
            return Ok(Construction::residues(m, &rs));
        }
        Err(Error::UnknownName(name.to_string()))
    }

    /// Materialises the construction inside `Q_n`.
    pub fn build(&self, n: u32) -> Result<PointSet> {
        match self {
            Construction::LayerResidues { modulus, residues } => {
                let weights: Vec<u32> =
                    (0..=n).filter(|w| residues.contains(&(w % modulus))).collect();
                PointSet::from_layers(n, &weights)
            }
            Construction::NonStability => {
                if n % 2 != 0 {
                    return Err(Error::OddDimension { dim: n });
                }
                let half = n / 2;
                let low_mask = (1u64 << half) - 1;
                let mut set = PointSet::empty(n)?;
                // Bottom piece: full layers below the equator.
                for w in 0..=half {
                    if w % 3 != 0 {
                        for_each_weight_mask(n, w, &mut |mask| {
                            set.insert_bits(mask);
                        });
                    }
                }
                // Top piece: weight taken relative to the flipped lower half.
                // The two layers just above the equator stay empty.
                for bits in 0..1u64 << n {
                    let w = bits.count_ones();
                    if w >= half + 3 && (bits ^ low_mask).count_ones() % 3 != 0 {
                        set.insert_bits(bits);
                    }
                }
                Ok(set)
            }
        }
    }
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::binomial;

    #[test]
    fn g2_is_the_whole_square() {
        let g2 = Configuration::g(2).unwrap();
        assert_eq!(g2.points(), &[0b00, 0b01, 0b10, 0b11]);
        assert_eq!(g2, Configuration::full(2).unwrap());
    }

    #[test]
    fn g3_explicit_points() {
        // (0,0,0),(1,0,0),(0,1,0),(0,0,1),(1,1,0),(0,1,1)
        let g3 = Configuration::g(3).unwrap();
        assert_eq!(g3.points(), &[0b000, 0b001, 0b010, 0b011, 0b100, 0b110]);
        assert_eq!(g3.len(), 6);
    }

    #[test]
    fn g_size_formula() {
        // |G_d| = 1 + d + ceil(d/2)*floor(d/2)
        for d in 2..=12u32 {
            let expect = 1 + d as usize + (d.div_ceil(2) * (d / 2)) as usize;
            assert_eq!(Configuration::g(d).unwrap().len(), expect, "d={d}");
        }
        assert!(Configuration::g(1).is_err());
    }

    #[test]
    fn f_configurations_literal() {
        assert_eq!(Configuration::f1().points(), &[0b000, 0b001, 0b010, 0b100]);
        assert_eq!(Configuration::f2().points(), &[0b000, 0b011, 0b101, 0b110]);
        assert_eq!(Configuration::f3().points(), &[0b000, 0b111]);
    }

    #[test]
    fn generalised_f_configurations() {
        assert_eq!(Configuration::f1_general(4).unwrap().len(), 5);
        assert_eq!(
            Configuration::antipodal(5).unwrap().points(),
            &[0, 0b11111]
        );
        // 1 + ceil(d/2)*floor(d/2) points for F2d.
        assert_eq!(Configuration::f2_general(4).unwrap().len(), 5);
        assert!(Configuration::f1_general(2).is_err());
    }

    #[test]
    fn multipartite_counts() {
        assert_eq!(Configuration::multipartite(3, &[3]).unwrap().len(), 3);
        assert_eq!(Configuration::multipartite(4, &[2, 2]).unwrap().len(), 4);
        assert_eq!(Configuration::multipartite(6, &[3, 3]).unwrap().len(), 9);
        assert!(Configuration::multipartite(5, &[2, 2]).is_err());
        assert!(Configuration::multipartite(5, &[2, 3]).is_err()); // not descending
        assert!(Configuration::multipartite(5, &[4, 1]).is_err());
    }

    #[test]
    fn multipartite_matches_t3_for_standard_partition() {
        for d in 2..=9u32 {
            let parts = transversal_partition(d).unwrap();
            let cfg = Configuration::multipartite(d, &parts).unwrap();
            let (_, t3) = t_values(d).unwrap();
            assert_eq!(cfg.len() as u64, t3, "d={d}, parts={parts:?}");
            // All points have weight r = number of parts.
            let r = parts.len() as u32;
            assert!(cfg.points().iter().all(|p| p.count_ones() == r));
        }
    }

    #[test]
    fn t_value_table() {
        assert_eq!(t_values(2).unwrap(), (0, 2));
        assert_eq!(t_values(3).unwrap(), (0, 3));
        assert_eq!(t_values(4).unwrap(), (1, 4));
        assert_eq!(t_values(6).unwrap(), (1, 9));
        assert!(t_values(1).is_err());
    }

    #[test]
    fn kostochka_sizes() {
        // Weights {1,2} at n=3: six points.
        let s0 = Construction::kostochka(0).build(3).unwrap();
        assert_eq!(s0.len(), 6);
        assert!(s0.iter().all(|v| v.weight() % 3 != 0));
    }

    #[test]
    fn kostochka_size_closed_form_on_multiples_of_six() {
        // Independent oracle via the roots-of-unity filter: the number of
        // points with weight divisible by 3 is (2^n + c(n)) / 3 where c(n)
        // cycles through [2, 1, -1, -2, -1, 1] with n mod 6.
        let cycle: [i64; 6] = [2, 1, -1, -2, -1, 1];
        for n in [6u32, 12] {
            let s0 = Construction::kostochka(0).build(n).unwrap();
            let killed = ((1i64 << n) + cycle[(n % 6) as usize]) / 3;
            assert_eq!(s0.len() as i64, (1i64 << n) - killed);
            if n % 6 == 0 {
                assert_eq!(s0.len(), ((1u64 << (n + 1)) - 2) / 3);
            }
        }
    }

    #[test]
    fn residue_construction_sizes() {
        // Weights {0,4,8} at n=8.
        let s = Construction::mod4_zero().build(8).unwrap();
        assert_eq!(s.len(), 1 + binomial(8, 4) + 1);
        // Weights {0,4} at n=4 for spacing 3+1.
        let sp = Construction::spaced(3).build(4).unwrap();
        assert_eq!(sp.len(), 2);
        let even = Construction::even_weights().build(6).unwrap();
        assert_eq!(even.len(), 32);
    }

    #[test]
    fn constructions_are_layer_unions() {
        for c in [
            Construction::kostochka(1),
            Construction::even_weights(),
            Construction::mod4_zero_one(),
            Construction::mod3_zero(),
        ] {
            let s = c.build(7).unwrap();
            // Every layer is all-in or all-out.
            for w in 0..=7u32 {
                let layer = PointSet::from_layers(7, &[w]).unwrap();
                let inside = layer.iter().filter(|v| s.contains(*v)).count() as u64;
                assert!(inside == 0 || inside == layer.len());
            }
        }
    }

    #[test]
    fn nonstab_shape() {
        let s = Construction::NonStability.build(12).unwrap();
        assert!(Construction::NonStability.build(11).is_err());
        let half = 6u32;
        let low_mask = (1u64 << half) - 1;
        for bits in 0..1u64 << 12 {
            let w = bits.count_ones();
            let expected = if w <= half {
                w % 3 != 0
            } else if w >= half + 3 {
                (bits ^ low_mask).count_ones() % 3 != 0
            } else {
                false // the gap layers are excluded outright
            };
            assert_eq!(s.contains_bits(bits), expected, "bits={bits:b}");
        }
    }

    #[test]
    fn named_configuration_parsing() {
        assert_eq!(parse_named("V2").unwrap().unwrap().len(), 4);
        assert_eq!(parse_named("Gd:4").unwrap().unwrap().len(), 9);
        assert_eq!(parse_named("F2").unwrap().unwrap(), Configuration::f2());
        assert_eq!(parse_named("Fdd:5").unwrap().unwrap().len(), 2);
        assert_eq!(parse_named("K:6:3,3").unwrap().unwrap().len(), 9);
        assert!(parse_named("sets/my_file.pts").unwrap().is_none());
        assert!(parse_named("Gd:x").is_err());
    }

    #[test]
    fn construction_parsing() {
        assert_eq!(Construction::parse("S0").unwrap(), Construction::kostochka(0));
        assert_eq!(Construction::parse("even").unwrap(), Construction::even_weights());
        assert_eq!(
            Construction::parse("mod:4:0,1").unwrap(),
            Construction::mod4_zero_one()
        );
        assert_eq!(Construction::parse("spaced:3").unwrap(), Construction::spaced(3));
        assert_eq!(Construction::parse("nonstab").unwrap(), Construction::NonStability);
        assert!(Construction::parse("bogus").is_err());
        assert!(Construction::parse("mod:0:1").is_err());
    }
}
