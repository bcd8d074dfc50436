//! Status of the m-canonical map: base-point freeness, the two separation
//! criteria, and the remaining birationality rules.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chevalley_weil::curve_character;
use crate::covering::{curve_genera, AlgebraicDatum, GeneratingVector};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::galois::CharTuple;

/// Stable identifiers of the rules that decide a status.
pub mod reasons {
    /// Constituents separate the Galois group and the points of every factor.
    pub const SEPARATION_CRITERIA: &str = "separation-criteria";
    /// Constituents fail to separate some element of the Galois group.
    pub const NECESSARY_CRITERION_FAILS: &str = "necessary-criterion-fails";
    /// Bicanonical map with a genus-2 curve among the factors.
    pub const GENUS_2_FACTOR: &str = "genus-2-factor";
    /// Four-canonical map of a threefold with `p_g ≥ 5`.
    pub const FOUR_CANONICAL_PG5: &str = "four-canonical-pg5";
    /// `m ≥ 5` on a threefold.
    pub const M_AT_LEAST_5: &str = "m-at-least-5";
    /// `m ≥ 3` on a surface, where the map is an embedding.
    pub const SURFACE_M_AT_LEAST_3: &str = "surface-m-at-least-3";
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum MapStatus {
    Birational(String),
    NonBirational(String),
    Unknown,
}

impl MapStatus {
    pub fn is_birational(&self) -> bool {
        matches!(self, MapStatus::Birational(_))
    }

    pub fn is_non_birational(&self) -> bool {
        matches!(self, MapStatus::NonBirational(_))
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            MapStatus::Birational(r) | MapStatus::NonBirational(r) => Some(r),
            MapStatus::Unknown => None,
        }
    }
}

impl fmt::Display for MapStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapStatus::Birational(r) => write!(f, "Birational ({r})"),
            MapStatus::NonBirational(r) => write!(f, "NonBirational ({r})"),
            MapStatus::Unknown => write!(f, "Unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapAnalysis {
    pub m: u32,
    pub pluri_dimension: u64,
    pub bpf: bool,
    pub separates_group: bool,
    pub separates_base: bool,
    #[serde(flatten)]
    pub status: MapStatus,
    pub normalization_flag: bool,
}

/// The constituents `χ` (all `r^j ≥ 0`) generate, by their differences,
/// the whole character group of `Ḡ`. Equivalently every nonidentity
/// element of `Ḡ` takes two different values on some pair of constituents.
pub fn separates_group_with(dec: &Decomposition, m: u32) -> Result<bool> {
    let constituents = dec.constituents(m)?;
    let Some((first, _)) = constituents.first() else {
        return Ok(false);
    };
    let galois = dec.galois();
    let base = galois.char_neg(&dec.character(*first));
    let gens: Vec<CharTuple> = constituents
        .iter()
        .map(|(c, _)| galois.char_add(&dec.character(*c), &base))
        .filter(|d| *d != galois.trivial_character())
        .collect();
    let mut span: BTreeSet<CharTuple> = [galois.trivial_character()].into();
    let mut frontier = vec![galois.trivial_character()];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = galois.char_add(&x, g);
            if span.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(span.len() == galois.order())
}

/// Every factor carries a constituent with `r^j ≥ 1`.
pub fn separates_base_with(dec: &Decomposition, m: u32) -> Result<bool> {
    let constituents = dec.constituents(m)?;
    Ok((0..dec.n()).all(|j| constituents.iter().any(|(_, d)| d[j] >= 1)))
}

pub fn separates_group(d: &AlgebraicDatum, m: u32) -> Result<bool> {
    separates_group_with(&Decomposition::new(d)?, m)
}

pub fn separates_base(d: &AlgebraicDatum, m: u32) -> Result<bool> {
    separates_base_with(&Decomposition::new(d)?, m)
}

/// Runs the rules in order: the separation criteria, the necessary
/// criterion, the genus-2 rule for `m = 2`, then the unconditional
/// results for large `m`.
pub fn map_status_with(d: &AlgebraicDatum, dec: &Decomposition, m: u32) -> Result<MapAnalysis> {
    if m == 0 {
        return Err(Error::Scope("m must be at least 1".into()));
    }
    let genera = curve_genera(d)?;
    let n = d.n();
    let pluri_dimension = dec.pluri_dimension(m)?;
    let bpf = dec.base_point_free(m)?;
    let a = separates_group_with(dec, m)?;
    let b = separates_base_with(dec, m)?;
    let genus_two = m == 2 && genera.contains(&2);
    if a && b && genus_two {
        return Err(Error::Consistency(
            "separation criteria hold for a bicanonical map with a genus-2 factor".into(),
        ));
    }
    let status = if a && b {
        MapStatus::Birational(reasons::SEPARATION_CRITERIA.into())
    } else if !a {
        MapStatus::NonBirational(reasons::NECESSARY_CRITERION_FAILS.into())
    } else if genus_two {
        MapStatus::NonBirational(reasons::GENUS_2_FACTOR.into())
    } else if n == 3 && m == 4 && dec.pluri_dimension(1)? >= 5 {
        MapStatus::Birational(reasons::FOUR_CANONICAL_PG5.into())
    } else if n == 3 && m >= 5 {
        MapStatus::Birational(reasons::M_AT_LEAST_5.into())
    } else if n == 2 && m >= 3 {
        MapStatus::Birational(reasons::SURFACE_M_AT_LEAST_3.into())
    } else {
        MapStatus::Unknown
    };
    let normalization_flag = bpf && status.is_birational();
    Ok(MapAnalysis {
        m,
        pluri_dimension,
        bpf,
        separates_group: a,
        separates_base: b,
        status,
        normalization_flag,
    })
}

pub fn map_status(d: &AlgebraicDatum, m: u32) -> Result<MapAnalysis> {
    map_status_with(d, &Decomposition::new(d)?, m)
}

/// Certifies that the curve of `v` is not hyperelliptic: no group element
/// acts as `−1` on all holomorphic forms, and the group cannot act
/// faithfully on `P¹` (the abelian finite subgroups of `PGL(2)` are cyclic
/// or `(ℤ/2)²`). `false` means "no certificate", never "hyperelliptic".
pub fn non_hyperelliptic_certificate(v: &GeneratingVector) -> Result<bool> {
    let g = v.group();
    let fits_in_pgl2 = g.rank() <= 1 || g.invariant_factors() == [2, 2];
    if fits_in_pgl2 {
        return Ok(false);
    }
    let canonical = curve_character(1, v)?;
    let half = crate::groups::QZValue::new(1, 2);
    let minus_identity = g
        .elements()
        .any(|x| canonical.iter().all(|(chi, _)| g.eval(chi, &x) == half));
    Ok(!minus_identity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serialization_is_stable() {
        let s = MapStatus::Birational(reasons::SEPARATION_CRITERIA.into());
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"status":"birational","reason":"separation-criteria"}"#
        );
        assert_eq!(serde_json::to_string(&MapStatus::Unknown).unwrap(), r#"{"status":"unknown"}"#);
        assert_eq!(s.to_string(), "Birational (separation-criteria)");
    }
}
