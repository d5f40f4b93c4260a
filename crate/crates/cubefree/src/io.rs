//! Text formats for point sets and configurations.
//!
//! A point-set file starts with `n=<dim>`; a configuration file with
//! `d=<dim>`. Every following line is one vertex as an `n`-character binary
//! string, coordinate 1 leftmost. Lines starting with `#` and blank lines are
//! ignored. Duplicate vertices are rejected.

use crate::config::Configuration;
use crate::cube::PointSet;
use crate::{Error, Result};
use std::io::Write;
use std::path::Path;

fn parse_body(text: &str, header_key: &str) -> Result<(u32, Vec<u64>)> {
    let mut dim: Option<u32> = None;
    let mut points: Vec<u64> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match dim {
            None => {
                let value = line
                    .strip_prefix(header_key)
                    .and_then(|rest| rest.strip_prefix('='))
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: format!("expected header `{header_key}=<dim>`"),
                    })?;
                let d = value.trim().parse::<u32>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid dimension {value:?}"),
                })?;
                dim = Some(d);
            }
            Some(d) => {
                if line.len() != d as usize || !line.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected a {d}-character binary string, got {line:?}"),
                    });
                }
                let mut bits = 0u64;
                for (i, b) in line.bytes().enumerate() {
                    if b == b'1' {
                        bits |= 1u64 << i;
                    }
                }
                if !seen.insert(bits) {
                    return Err(Error::DuplicateVertex { line: line_no });
                }
                points.push(bits);
            }
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse {
        line: 0,
        message: format!("missing `{header_key}=<dim>` header"),
    })?;
    Ok((dim, points))
}

fn vertex_line(dim: u32, bits: u64) -> String {
    (0..dim)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

// ============================================================================
// Point sets
// ============================================================================

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let (dim, points) = parse_body(text, "n")?;
    let mut set = PointSet::empty(dim)?;
    for bits in points {
        if dim < 64 && bits >> dim != 0 {
            return Err(Error::BitsOutOfRange { bits, dim });
        }
        set.insert_bits(bits);
    }
    Ok(set)
}

pub fn load_point_set(path: impl AsRef<Path>) -> Result<PointSet> {
    parse_point_set(&std::fs::read_to_string(path)?)
}

pub fn write_point_set(s: &PointSet, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "n={}", s.dim())?;
    for bits in s.iter_bits() {
        writeln!(out, "{}", vertex_line(s.dim(), bits))?;
    }
    Ok(())
}

pub fn save_point_set(s: &PointSet, path: impl AsRef<Path>) -> Result<()> {
    let mut buffer = Vec::new();
    write_point_set(s, &mut buffer)?;
    std::fs::write(path, buffer)?;
    Ok(())
}

// ============================================================================
// Configurations
// ============================================================================

pub fn parse_configuration(text: &str) -> Result<Configuration> {
    let (dim, points) = parse_body(text, "d")?;
    Configuration::new(dim, points)
}

pub fn load_configuration(path: impl AsRef<Path>) -> Result<Configuration> {
    parse_configuration(&std::fs::read_to_string(path)?)
}

pub fn write_configuration(c: &Configuration, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "d={}", c.dim())?;
    for &bits in c.points() {
        writeln!(out, "{}", vertex_line(c.dim(), bits))?;
    }
    Ok(())
}

// ============================================================================
// Tests
// ============================================================================
