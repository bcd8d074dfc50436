//! JSON datum files.
//!
//! ```json
//! {
//!   "group": [2, 2, 2],
//!   "n": 3,
//!   "coords": "ambient",
//!   "kernels": [[], [], []],
//!   "vectors": [
//!     {"type": "[0; 2,2,2,2,2,2]", "elements": [[1,0,0], [1,0,0], ...]},
//!     ...
//!   ]
//! }
//! ```
//!
//! Kernels are lists of generators in coordinates of `G`. Entries of the
//! vectors are in coordinates of `G` and get projected, unless `coords` is
//! `"quotient"`, in which case they are coordinates of `G/K_i` in the
//! invariant-factor form reported by [`crate::groups::quotient`].
//! Vectors of non-spherical types list the `2g'` hyperbolic entries under
//! `"hyperbolic"`.

use serde::{Deserialize, Serialize};

use crate::covering::{AlgebraicDatum, BranchingType, DatumViolation, GeneratingVector};
use crate::error::{Error, Result};
use crate::groups::{quotient, subgroup_generated, AbelianGroup, GroupElement};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coords {
    #[default]
    Ambient,
    Quotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorEntry {
    #[serde(rename = "type")]
    pub btype: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hyperbolic: Vec<Vec<u32>>,
    pub elements: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub group: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub coords: Coords,
    pub kernels: Vec<Vec<Vec<u32>>>,
    pub vectors: Vec<VectorEntry>,
}

fn at(field: String) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::InvalidDatum(_) | Error::Consistency(_) => e,
        other => Error::Parse(format!("{field}: {}", strip_parse(&other))),
    }
}

fn strip_parse(e: &Error) -> String {
    match e {
        Error::Parse(s) => s.clone(),
        other => other.to_string(),
    }
}

fn element(group: &AbelianGroup, coords: &[u32], field: String) -> Result<GroupElement> {
    if coords.len() != group.rank() {
        return Err(Error::Parse(format!(
            "{field}: expected {} coordinates for {group}, got {}",
            group.rank(),
            coords.len()
        )));
    }
    let g = GroupElement(coords.to_vec());
    group.check(&g).map_err(at(field))?;
    Ok(g)
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("datum files serialize")
    }

    /// The datum, with every condition of a minimal realization checked.
    pub fn to_datum(&self) -> Result<AlgebraicDatum> {
        self.build(true)
    }

    fn build(&self, minimal: bool) -> Result<AlgebraicDatum> {
        let group = AbelianGroup::new(&self.group).map_err(at("group".into()))?;
        let n = self.kernels.len();
        if let Some(declared) = self.n {
            if declared != n {
                return Err(Error::Parse(format!("n: declared {declared} but {n} kernels are listed")));
            }
        }
        if self.vectors.len() != n {
            return Err(Error::Parse(format!(
                "vectors: {} vectors for {n} kernels",
                self.vectors.len()
            )));
        }
        let mut kernels = Vec::with_capacity(n);
        let mut vectors = Vec::with_capacity(n);
        for (i, (gens, entry)) in self.kernels.iter().zip(&self.vectors).enumerate() {
            let gens = gens
                .iter()
                .enumerate()
                .map(|(j, c)| element(&group, c, format!("kernels[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()?;
            let kernel = subgroup_generated(&group, &gens)?;
            let q = quotient(&group, &kernel)?;
            let btype: BranchingType = entry.btype.parse().map_err(at(format!("vectors[{i}].type")))?;
            let read = |list: &[Vec<u32>], name: &str| -> Result<Vec<GroupElement>> {
                list.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let field = format!("vectors[{i}].{name}[{j}]");
                        match self.coords {
                            Coords::Ambient => Ok(q.project(&element(&group, c, field)?)),
                            Coords::Quotient => element(q.target(), c, field),
                        }
                    })
                    .collect()
            };
            let v = GeneratingVector::new(
                q.target().clone(),
                btype,
                read(&entry.hyperbolic, "hyperbolic")?,
                read(&entry.elements, "elements")?,
            )
            .map_err(|e| match e {
                Error::InvalidVector(violation) => DatumViolation::Vector { slot: i, violation }.into(),
                other => at(format!("vectors[{i}]"))(other),
            })?;
            kernels.push(kernel);
            vectors.push(v);
        }
        if minimal {
            AlgebraicDatum::new(group, kernels, vectors)
        } else {
            AlgebraicDatum::new_relaxed(group, kernels, vectors)
        }
    }

    /// Ambient coordinates; each entry is written as its least preimage.
    pub fn from_datum(d: &AlgebraicDatum) -> Self {
        let lift = |i: usize, xs: &[GroupElement]| -> Vec<Vec<u32>> {
            xs.iter()
                .map(|x| d.projections()[i].lift(x).expect("projections are onto").0)
                .collect()
        };
        DatumFile {
            group: d.group().invariant_factors().to_vec(),
            n: Some(d.n()),
            coords: Coords::Ambient,
            kernels: d
                .kernels()
                .iter()
                .map(|k| k.generators().iter().map(|g| g.0.clone()).collect())
                .collect(),
            vectors: d
                .vectors()
                .iter()
                .enumerate()
                .map(|(i, v)| VectorEntry {
                    btype: v.btype().to_string(),
                    hyperbolic: lift(i, v.hyperbolic()),
                    elements: lift(i, v.branch()),
                })
                .collect(),
        }
    }
}

impl From<AlgebraicDatum> for DatumFile {
    fn from(d: AlgebraicDatum) -> Self {
        DatumFile::from_datum(&d)
    }
}

// records may carry non-minimal representatives, so serde skips that check
impl TryFrom<DatumFile> for AlgebraicDatum {
    type Error = Error;
    fn try_from(f: DatumFile) -> Result<Self> {
        f.build(false)
    }
}

pub fn parse_datum(text: &str) -> Result<AlgebraicDatum> {
    DatumFile::parse(text)?.to_datum()
}

pub fn write_datum(d: &AlgebraicDatum) -> String {
    DatumFile::from_datum(d).to_json()
}
