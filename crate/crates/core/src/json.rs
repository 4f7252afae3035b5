//! JSON forms of complexes, maps, simplices and resolution objects.
//!
//! Integers that fit in `i64` are written as numbers and larger ones as
//! decimal strings; both forms are accepted on input. Degree-keyed tables
//! are ordered numerically.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::complex::{homology, ChainComplex, Degree, GradedMap};
use crate::error::{Error, Result};
use crate::frames::FrameObject;
use crate::linalg::IntMatrix;
use crate::nerve::NerveSimplex;
use crate::simplicial::{join, parse_indices};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(x: &BigInt) -> Self {
        x.to_i64().map_or_else(|| JsonInt::Big(x.to_string()), JsonInt::Small)
    }

    fn to_big(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.trim().parse().map_err(|_| Error::Parse(format!("`{s}` is not an integer"))),
        }
    }
}

pub type JsonMatrix = Vec<Vec<JsonInt>>;

fn matrix_to_json(m: &IntMatrix) -> JsonMatrix {
    m.to_rows().iter().map(|r| r.iter().map(JsonInt::from_big).collect()).collect()
}

fn matrix_from_json(rows: &JsonMatrix, shape: (usize, usize), what: &str) -> Result<IntMatrix> {
    let (r, c) = shape;
    if (r == 0 || c == 0) && rows.iter().all(|row| row.is_empty()) && (rows.is_empty() || rows.len() == r) {
        return Ok(IntMatrix::zeros(r, c));
    }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::Parse(format!("{what}: expected a {r}x{c} matrix")));
    }
    let big: Vec<Vec<BigInt>> = rows.iter().map(|row| row.iter().map(JsonInt::to_big).collect()).collect::<Result<_>>()?;
    IntMatrix::from_rows(&big, c)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub name: String,
    pub degrees: BTreeMap<Degree, usize>,
    #[serde(default)]
    pub differentials: BTreeMap<Degree, JsonMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<Degree, Vec<String>>>,
}

impl ComplexJson {
    pub fn from_complex(x: &ChainComplex) -> Self {
        ComplexJson {
            name: x.name().to_string(),
            degrees: x.ranks().clone(),
            differentials: x.nonzero_diffs().iter().map(|(&d, m)| (d, matrix_to_json(m))).collect(),
            labels: Some(x.all_labels().clone()),
        }
    }

    pub fn to_complex(&self) -> Result<ChainComplex> {
        let rank = |d: Degree| self.degrees.get(&d).copied().unwrap_or(0);
        let mut diffs = BTreeMap::new();
        for (&d, rows) in &self.differentials {
            let what = format!("complex `{}`, differential out of degree {d}", self.name);
            diffs.insert(d, matrix_from_json(rows, (rank(d - 1), rank(d)), &what)?);
        }
        ChainComplex::new(self.name.clone(), self.degrees.clone(), diffs, self.labels.clone().unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub source: String,
    pub target: String,
    pub degree: Degree,
    #[serde(default)]
    pub matrices: BTreeMap<Degree, JsonMatrix>,
}

impl MapJson {
    pub fn from_map(f: &GradedMap) -> Self {
        MapJson {
            source: f.source().name().to_string(),
            target: f.target().name().to_string(),
            degree: f.degree(),
            matrices: f.blocks().iter().map(|(&d, m)| (d, matrix_to_json(m))).collect(),
        }
    }

    /// Reads the map between the given complexes, checking the names.
    pub fn to_map(&self, source: &Arc<ChainComplex>, target: &Arc<ChainComplex>) -> Result<GradedMap> {
        if self.source != source.name() || self.target != target.name() {
            return Err(Error::Parse(format!(
                "map {} → {} given where {} → {} is expected",
                self.source,
                self.target,
                source.name(),
                target.name()
            )));
        }
        let mut blocks = BTreeMap::new();
        for (&d, rows) in &self.matrices {
            let what = format!("map {} → {} at source degree {d}", self.source, self.target);
            blocks.insert(d, matrix_from_json(rows, (target.rank(d + self.degree), source.rank(d)), &what)?);
        }
        GradedMap::new(source.clone(), target.clone(), self.degree, blocks)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexJson {
    pub n: usize,
    pub objects: Vec<ComplexJson>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapJson>,
}

impl SimplexJson {
    pub fn from_simplex(s: &NerveSimplex) -> Self {
        SimplexJson {
            n: s.n(),
            objects: s.objects().iter().map(|x| ComplexJson::from_complex(x)).collect(),
            maps: s.maps().iter().map(|(k, f)| (join(k), MapJson::from_map(f))).collect(),
        }
    }

    pub fn to_simplex(&self) -> Result<NerveSimplex> {
        if self.objects.len() != self.n + 1 {
            return Err(Error::Parse(format!("{} objects given for a {}-simplex", self.objects.len(), self.n)));
        }
        let objects: Vec<Arc<ChainComplex>> =
            self.objects.iter().map(|c| c.to_complex().map(Arc::new)).collect::<Result<_>>()?;
        let mut maps = BTreeMap::new();
        for (key, m) in &self.maps {
            let seq = parse_indices(key)?;
            let (Some(&a), Some(&b)) = (seq.first(), seq.last()) else {
                return Err(Error::Parse(format!("empty map key `{key}`")));
            };
            if a > self.n || b > self.n {
                return Err(Error::Parse(format!("map key `{key}` leaves [{}]", self.n)));
            }
            let f = m.to_map(&objects[a], &objects[b]).map_err(|e| Error::Parse(format!("map `{key}`: {e}")))?;
            maps.insert(seq, f);
        }
        NerveSimplex::new(objects, maps)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameJson {
    pub alpha: String,
    pub complex: ComplexJson,
    pub homology: BTreeMap<Degree, String>,
}

impl FrameJson {
    pub fn from_frame(o: &FrameObject) -> Self {
        let h = homology(o.complex());
        FrameJson {
            alpha: o.alpha().to_string(),
            complex: ComplexJson::from_complex(o.complex()),
            homology: h.groups.iter().map(|(&d, g)| (d, g.to_string())).collect(),
        }
    }
}

pub fn parse_simplex(text: &str) -> Result<NerveSimplex> {
    let j: SimplexJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_simplex()
}

pub fn parse_complex(text: &str) -> Result<ChainComplex> {
    let j: ComplexJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_complex()
}

pub fn simplex_to_string(s: &NerveSimplex) -> String {
    serde_json::to_string_pretty(&SimplexJson::from_simplex(s)).expect("simplices serialize")
}
