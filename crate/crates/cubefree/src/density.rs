//! Density tables, periodic layer-pattern search, and the max-points-per-
//! subcube analysis.
//!
//! A layer pattern `(m, I)` realizes, in every host cube, the set of vertices
//! whose weight lies in the residue classes `I` modulo `m`. Freeness of that
//! set for *all* host dimensions reduces to a finite check: a `d`-subcube
//! whose fixed part has weight `k` meets the realized set exactly in the local
//! layers `{w : (w + k) mod m in I}`, and whether a configuration copy fits in
//! a union of layers of `Q_d` depends only on the weight profiles of its
//! orbit.

use crate::config::{t_values, Configuration, ConfigurationFamily};
use crate::cube::{binomial, PointSet};
use crate::embed::{config_orbit, enumerate_subcubes, Subcube};
use crate::rational::Rational;
use crate::solver::{extremal_number, SolveOptions};
use crate::{Error, Result};
use std::fmt;
use std::io::Write;

/// Pattern search enumerates `2^m` residue sets per period.
pub const PERIOD_MAX: u32 = 24;

// ============================================================================
// Layer patterns
// ============================================================================

/// A periodic selection of layers: keep weight `w` when `w mod period` lies
/// in `residues`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPattern {
    period: u32,
    residues: Vec<u32>, // sorted, deduplicated, all < period
}

impl LayerPattern {
    pub fn new(period: u32, mut residues: Vec<u32>) -> Result<Self> {
        if period < 1 || period > 64 {
            return Err(Error::PeriodOutOfRange { period, max: 64 });
        }
        residues.sort_unstable();
        residues.dedup();
        if residues.iter().any(|&r| r >= period) {
            return Err(Error::WeightOutOfRange {
                weight: *residues.last().unwrap(),
                dim: period,
            });
        }
        Ok(LayerPattern { period, residues })
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// Asymptotic density `|I| / m` of the realized sets.
    pub fn density(&self) -> Rational {
        Rational::new(self.residues.len() as u64, self.period as u64)
            .expect("period is positive")
    }

    /// The realized point set inside `Q_n`.
    pub fn realize(&self, n: u32) -> Result<PointSet> {
        let weights: Vec<u32> = (0..=n)
            .filter(|w| self.residues.contains(&(w % self.period)))
            .collect();
        PointSet::from_layers(n, &weights)
    }
}

impl fmt::Display for LayerPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "m={} I={{{}}}", self.period, rs.join(","))
    }
}

// ============================================================================
// Pattern freeness
// ============================================================================

/// The distinct weight profiles (bitmask over `0..=d` of occurring weights)
/// across the orbit of a configuration.
fn orbit_weight_profiles(f: &Configuration) -> Result<Vec<u64>> {
    let orbit = config_orbit(f)?;
    let mut profiles: Vec<u64> = orbit
        .members()
        .iter()
        .map(|m| m.weight_profile())
        .collect();
    profiles.sort_unstable();
    profiles.dedup();
    Ok(profiles)
}

/// Residue masks that a pattern must avoid containing: one per orbit weight
/// profile and shift.
fn forbidden_residue_masks(profiles: &[u64], d: u32, period: u32) -> Vec<u64> {
    let mut masks = Vec::new();
    for &profile in profiles {
        for shift in 0..period {
            let mut mask = 0u64;
            for w in 0..=d {
                if profile >> w & 1 == 1 {
                    mask |= 1u64 << ((w + shift) % period);
                }
            }
            masks.push(mask);
        }
    }
    masks.sort_unstable();
    masks.dedup();
    masks
}

/// Decides whether the realized sets of a pattern are free of `F` in every
/// host cube: no shifted weight profile of the orbit may fit inside the
/// residue set.
pub fn pattern_is_free(f: &Configuration, pattern: &LayerPattern) -> Result<bool> {
    let profiles = orbit_weight_profiles(f)?;
    let masks = forbidden_residue_masks(&profiles, f.dim(), pattern.period());
    let residue_mask = pattern
        .residues()
        .iter()
        .fold(0u64, |m, &r| m | (1u64 << r));
    Ok(masks.iter().all(|&m| m & !residue_mask != 0))
}

/// Searches every period up to `max_period` for the free pattern of maximum
/// density. Ties prefer the smaller period, then the lexicographically least
/// residue list. Returns the pattern and its exact density.
pub fn best_pattern(
    fam: &ConfigurationFamily,
    max_period: u32,
) -> Result<(LayerPattern, Rational)> {
    if max_period < 1 || max_period > PERIOD_MAX {
        return Err(Error::PeriodOutOfRange {
            period: max_period,
            max: PERIOD_MAX,
        });
    }
    let profiles: Vec<(u32, Vec<u64>)> = fam
        .members()
        .iter()
        .map(|f| Ok((f.dim(), orbit_weight_profiles(f)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(LayerPattern, Rational)> = None;
    for period in 1..=max_period {
        let forbidden: Vec<u64> = {
            let mut all = Vec::new();
            for (d, ps) in &profiles {
                all.extend(forbidden_residue_masks(ps, *d, period));
            }
            all.sort_unstable();
            all.dedup();
            all
        };
        let mut best_here: Option<u64> = None;
        for residue_mask in 0u64..1 << period {
            if forbidden.iter().any(|&m| m & !residue_mask == 0) {
                continue;
            }
            let better = match best_here {
                None => true,
                Some(cur) => {
                    let pop = residue_mask.count_ones();
                    let cur_pop = cur.count_ones();
                    pop > cur_pop || (pop == cur_pop && mask_residues(residue_mask) < mask_residues(cur))
                }
            };
            if better {
                best_here = Some(residue_mask);
            }
        }
        if let Some(mask) = best_here {
            let pattern = LayerPattern::new(period, mask_residues(mask))?;
            let density = pattern.density();
            let improves = match &best {
                None => true,
                Some((_, cur)) => density > *cur,
            };
            if improves {
                best = Some((pattern, density));
            }
        }
    }
    Ok(best.expect("the empty pattern is always free"))
}

fn mask_residues(mask: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

// ============================================================================
// Subcube point counts
// ============================================================================

/// Maximum of `|S ∩ C|` over all `d`-dimensional subcubes `C`, with the first
/// maximizing subcube in scan order.
pub fn max_points_in_subcube(s: &PointSet, d: u32) -> Result<(u64, Subcube)> {
    if d > s.dim() {
        return Err(Error::DimensionMismatch {
            left: s.dim(),
            right: d,
        });
    }
    let mut best = 0u64;
    let mut witness = None;
    for sc in enumerate_subcubes(s.dim(), d)? {
        let positions = sc.positions();
        let mut count = 0u64;
        for local in 0..1u64 << d {
            if s.contains_bits(sc.expand(local, &positions)) {
                count += 1;
            }
        }
        if count > best || witness.is_none() {
            best = count;
            witness = Some(sc);
        }
    }
    Ok((best, witness.expect("at least one subcube exists")))
}

/// Lower and upper bounds for the largest number of points that a positive-
/// density set must place in some `d`-dimensional subcube: `t_2(d) + t_3(d)`
/// from the multipartite transversal witnesses, and the largest layer
/// `C(d, floor(d/2))` from the spaced layer construction.
pub fn mu_bounds(d: u32) -> Result<(u64, u64)> {
    let (t2, t3) = t_values(d)?;
    Ok((t2 + t3, binomial(d, d / 2)))
}

// ============================================================================
// Density tables
// ============================================================================

#[derive(Clone, Debug)]
pub struct DensityRow {
    pub n: u32,
    pub exc: u64,
    pub ratio: Rational,
    pub optimal: bool,
    pub nodes: u64,
}

/// Extremal values and exact ratios for every host dimension from the largest
/// member dimension up to `n_max`. Rows where the solver ran out of budget
/// carry the best lower bound and `optimal = false`.
pub fn density_table(
    fam: &ConfigurationFamily,
    n_max: u32,
    opts: &SolveOptions,
) -> Result<Vec<DensityRow>> {
    let start = fam.max_dim();
    if n_max < start {
        return Err(Error::DimensionOutOfRange {
            dim: n_max,
            min: start,
            max: crate::embed::PLACEMENT_DIM_MAX,
        });
    }
    let mut rows = Vec::new();
    for n in start..=n_max {
        let result = extremal_number(n, fam, opts)?;
        rows.push(DensityRow {
            n,
            exc: result.value,
            ratio: Rational::new(result.value, 1u64 << n)?,
            optimal: result.optimal,
            nodes: result.nodes,
        });
    }
    Ok(rows)
}

/// CSV with columns `n, exc, ratio_num, ratio_den, optimal`.
pub fn write_density_csv(rows: &[DensityRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "n,exc,ratio_num,ratio_den,optimal")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.n,
            row.exc,
            row.ratio.numer(),
            row.ratio.denom(),
            row.optimal
        )?;
    }
    Ok(())
}

// ============================================================================
// Tests
// ============================================================================
