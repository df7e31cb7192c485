//! JSON documents for patterns: `"1d"`, `"rect"` and `"poly"`.
//!
//! Every number is an exact-number string (`"3"`, `"3/2"`, `"1.5"`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gadgets::{PartInfo, PolyPattern};
use crate::model::{Assignment, Crease, CreasePattern1D};
use crate::rational::Rational;
use crate::rect::{Axis, RectCrease, RectPattern};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Crease1DJson {
    pos: Rational,
    mv: Assignment,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SegmentJson {
    pub axis: Axis,
    pub coord: Rational,
    pub from: Rational,
    pub to: Rational,
    pub mv: Assignment,
}

impl From<&RectCrease> for SegmentJson {
    fn from(c: &RectCrease) -> Self {
        SegmentJson { axis: c.axis, coord: c.coord.clone(), from: c.from.clone(), to: c.to.clone(), mv: c.mv }
    }
}

impl From<SegmentJson> for RectCrease {
    fn from(s: SegmentJson) -> Self {
        RectCrease { axis: s.axis, coord: s.coord, from: s.from, to: s.to, mv: s.mv }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type")]
enum DocumentJson {
    #[serde(rename = "1d")]
    OneD { length: Rational, creases: Vec<Crease1DJson> },
    #[serde(rename = "rect")]
    Rect { width: Rational, height: Rational, creases: Vec<SegmentJson> },
    #[serde(rename = "poly")]
    Poly {
        vertices: Vec<[Rational; 2]>,
        creases: Vec<SegmentJson>,
        #[serde(default)]
        parts: BTreeMap<String, PartInfo>,
    },
}

/// Any pattern document accepted on input.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    OneD(CreasePattern1D),
    Rect(RectPattern),
    Poly(PolyPattern),
}

pub fn parse_document(text: &str) -> Result<Document> {
    let raw: DocumentJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(match raw {
        DocumentJson::OneD { length, creases } => Document::OneD(CreasePattern1D::new(
            length,
            creases.into_iter().map(|c| Crease { pos: c.pos, mv: c.mv }).collect(),
        )?),
        DocumentJson::Rect { width, height, creases } => {
            Document::Rect(RectPattern::new(width, height, creases.into_iter().map(Into::into).collect())?)
        }
        DocumentJson::Poly { vertices, creases, parts } => Document::Poly(PolyPattern {
            vertices: vertices.into_iter().map(|[x, y]| (x, y)).collect(),
            creases: creases.into_iter().map(Into::into).collect(),
            parts,
        }),
    })
}

pub fn parse_pattern_1d(text: &str) -> Result<CreasePattern1D> {
    match parse_document(text)? {
        Document::OneD(p) => Ok(p),
        _ => Err(Error::Parse("expected a \"1d\" pattern".into())),
    }
}

pub fn pattern_1d_to_json(p: &CreasePattern1D) -> Value {
    to_value(&DocumentJson::OneD {
        length: p.length().clone(),
        creases: p.creases().iter().map(|c| Crease1DJson { pos: c.pos.clone(), mv: c.mv }).collect(),
    })
}

pub fn rect_to_json(p: &RectPattern) -> Value {
    to_value(&DocumentJson::Rect {
        width: p.width().clone(),
        height: p.height().clone(),
        creases: p.creases().iter().map(SegmentJson::from).collect(),
    })
}

pub fn poly_to_json(p: &PolyPattern) -> Value {
    to_value(&DocumentJson::Poly {
        vertices: p.vertices.iter().map(|(x, y)| [x.clone(), y.clone()]).collect(),
        creases: p.creases.iter().map(SegmentJson::from).collect(),
        parts: p.parts.clone(),
    })
}

pub fn document_to_json(doc: &Document) -> Value {
    match doc {
        Document::OneD(p) => pattern_1d_to_json(p),
        Document::Rect(p) => rect_to_json(p),
        Document::Poly(p) => poly_to_json(p),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("pattern documents always serialize")
}
