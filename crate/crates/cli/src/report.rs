//! Run reports: one JSON document per command, numbers at 12 significant
//! digits, `"inf"` for infinite values.

use std::collections::BTreeMap;

use fairfan_core::partition::FanOrigin;
use fairfan_core::search::{Candidate, MinimumKind};
use fairfan_core::{CandidateSet, FanPartition, Minimum, Polygon};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::polygon_file::polygon_hash;

/// A number rounded to 12 significant digits on construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn new(v: f64) -> Self {
        if v.is_finite() {
            Num(format!("{v:.11e}").parse().expect("formatted float"))
        } else {
            Num(v)
        }
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num::new(v)
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            v if v.is_finite() => s.serialize_f64(v),
            v if v.is_nan() => s.serialize_str("nan"),
            v if v > 0.0 => s.serialize_str("inf"),
            _ => s.serialize_str("-inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(v) => Ok(Num(v)),
            Raw::Text(t) => match t.as_str() {
                "inf" => Ok(Num(f64::INFINITY)),
                "-inf" => Ok(Num(f64::NEG_INFINITY)),
                "nan" => Ok(Num(f64::NAN)),
                _ => Err(de::Error::custom(format!("not a number: {t:?}"))),
            },
        }
    }
}

/// Fairness values as printed on the command line.
pub fn fmt_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.12}")
    } else {
        "inf".into()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolygonInfo {
    pub name: String,
    pub hash: String,
    pub vertices: Vec<[Num; 2]>,
    pub area: Num,
    pub perimeter: Num,
}

impl PolygonInfo {
    pub fn new(name: &str, polygon: &Polygon) -> Self {
        Self {
            name: name.to_string(),
            hash: polygon_hash(polygon),
            vertices: polygon.vertices().iter().map(|p| [p.x.into(), p.y.into()]).collect(),
            area: polygon.area().into(),
            perimeter: polygon.perimeter().into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimumEntry {
    pub x: Num,
    pub y: Num,
    pub value: Num,
    pub kind: String,
}

impl From<&Minimum> for MinimumEntry {
    fn from(m: &Minimum) -> Self {
        Self {
            x: m.location.x.into(),
            y: m.location.y.into(),
            value: m.value.get().into(),
            kind: match m.kind {
                MinimumKind::Grid => "grid",
                MinimumKind::Refined => "refined",
            }
            .into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PieceEntry {
    pub area: Num,
    pub perimeter: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OriginEntry {
    Point { x: Num, y: Num },
    AtInfinity { direction: Num },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub origin: OriginEntry,
    /// Ray angles, or cut offsets for an origin at infinity.
    pub rays: Vec<Num>,
    pub closed: bool,
    pub fairness: Num,
    pub pieces: Vec<PieceEntry>,
}

impl From<&FanPartition> for WitnessEntry {
    fn from(p: &FanPartition) -> Self {
        let per = p.perimeters();
        let ratio = fairfan_core::fairness::ratio_of(&per);
        Self {
            origin: match p.fan.origin {
                FanOrigin::Finite(o) => OriginEntry::Point {
                    x: o.x.into(),
                    y: o.y.into(),
                },
                FanOrigin::AtInfinity { direction } => OriginEntry::AtInfinity {
                    direction: direction.into(),
                },
            },
            rays: p.fan.rays.iter().map(|&r| r.into()).collect(),
            closed: p.fan.closed,
            fairness: ratio.into(),
            pieces: p
                .pieces
                .iter()
                .map(|pc| PieceEntry {
                    area: pc.area.into(),
                    perimeter: pc.perimeter.into(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateEntry {
    pub kind: String,
    pub x: Num,
    pub y: Num,
    pub asymptotic_value: Num,
}

pub fn candidate_entries(set: &CandidateSet) -> Vec<CandidateEntry> {
    let entry = |kind: &str, c: &Candidate<f64>| CandidateEntry {
        kind: kind.into(),
        x: c.point.x.into(),
        y: c.point.y.into(),
        asymptotic_value: c.value.get().into(),
    };
    let mut out: Vec<CandidateEntry> = Vec::with_capacity(set.len());
    out.extend(set.vertices.iter().map(|c| entry("vertex", c)));
    out.extend(set.edge_midpoints.iter().map(|c| entry("edge_midpoint", c)));
    out.extend(set.exterior_intersections.iter().map(|c| entry("edge_line_intersection", c)));
    out.push(entry("interior_minimum", &set.interior_minimum));
    out
}

/// Everything one command produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub polygon: PolygonInfo,
    /// Command parameters as given or defaulted, as text.
    pub parameters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Num>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub minima: Vec<MinimumEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<bool>,
    pub elapsed_seconds: Num,
}

impl RunReport {
    pub fn new(command: &str, name: &str, polygon: &Polygon) -> Self {
        Self {
            tool: "fairfan".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            polygon: PolygonInfo::new(name, polygon),
            parameters: BTreeMap::new(),
            value: None,
            minima: Vec::new(),
            witness: None,
            candidates: Vec::new(),
            found: None,
            elapsed_seconds: Num(0.0),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
