//! Structured-text documents for paths, kite words, signatures, complexes
//! and decision reports.
//!
//! All documents are JSON with a `version` field and a `dim` field.
//! Rationals are strings `p` or `p/q` in lowest terms; every map is emitted
//! in a deterministic key order, so identical inputs produce byte-identical
//! documents. Parsing then printing a canonical document reproduces it.

use crate::currents::PolyCurrent;
use crate::decide::{DecisionReport, Verdict, Witness};
use crate::linalg::RatVec;
use crate::plpath::PlWord;
use crate::plsurface::{Kite, KiteWord, SurfaceSignature};
use crate::rat::{format_rat, parse_rat};
use crate::tensor::TruncatedTensor;
use crate::triangulate::Plsc;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u32 = 1;

fn default_version() -> u32 {
    FORMAT_VERSION
}

/// A path as a word of rational vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub dim: usize,
    pub word: Vec<Vec<String>>,
}

impl PathDoc {
    pub fn from_word(w: &PlWord) -> Self {
        PathDoc {
            version: FORMAT_VERSION,
            dim: w.dim(),
            word: w.letters().iter().map(vec_to_strings).collect(),
        }
    }

    pub fn to_word(&self) -> Result<PlWord> {
        let letters = self
            .word
            .iter()
            .map(|v| strings_to_vec(self.dim, v))
            .collect::<Result<Vec<_>>>()?;
        PlWord::new(self.dim, letters)
    }
}

fn vec_to_strings(v: &RatVec) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn strings_to_vec(dim: usize, ss: &[String]) -> Result<RatVec> {
    if ss.len() != dim {
        return Err(Error::DimMismatch {
            expected: dim,
            found: ss.len(),
        });
    }
    Ok(RatVec(
        ss.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?,
    ))
}

/// One kite: tail word, loop word, sign.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KiteDoc {
    pub tail: Vec<Vec<String>>,
    #[serde(rename = "loop")]
    pub loop_word: Vec<Vec<String>>,
    #[serde(default = "default_sign")]
    pub sign: i8,
}

fn default_sign() -> i8 {
    1
}

/// A kite word. Kites compose left to right in list order (the free-monoid
/// convention; recorded in the `composition` field).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KiteWordDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub dim: usize,
    #[serde(default = "default_composition")]
    pub composition: String,
    pub kites: Vec<KiteDoc>,
}

fn default_composition() -> String {
    "left-to-right".into()
}

impl KiteWordDoc {
    pub fn from_word(x: &KiteWord) -> Self {
        KiteWordDoc {
            version: FORMAT_VERSION,
            dim: x.dim(),
            composition: default_composition(),
            kites: x
                .kites()
                .iter()
                .map(|k| KiteDoc {
                    tail: k.tail.letters().iter().map(vec_to_strings).collect(),
                    loop_word: k.loop_word.letters().iter().map(vec_to_strings).collect(),
                    sign: k.sign,
                })
                .collect(),
        }
    }

    pub fn to_word(&self) -> Result<KiteWord> {
        if self.composition != "left-to-right" {
            return Err(Error::Parse(format!(
                "unsupported composition order {:?}",
                self.composition
            )));
        }
        let kites = self
            .kites
            .iter()
            .map(|k| {
                let tail = PlWord::new(
                    self.dim,
                    k.tail
                        .iter()
                        .map(|v| strings_to_vec(self.dim, v))
                        .collect::<Result<Vec<_>>>()?,
                )?;
                let lw = PlWord::new(
                    self.dim,
                    k.loop_word
                        .iter()
                        .map(|v| strings_to_vec(self.dim, v))
                        .collect::<Result<Vec<_>>>()?,
                )?;
                Kite::signed(tail, lw, k.sign)
            })
            .collect::<Result<Vec<_>>>()?;
        KiteWord::new(self.dim, kites)
    }
}

/// Index word of a tensor component as 1-based digits (`""` for the scalar).
pub fn tensor_key(word: &[u8], dim: usize) -> String {
    if dim <= 9 {
        word.iter().map(|&i| (i + 1).to_string()).collect()
    } else {
        word.iter()
            .map(|&i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_tensor_key(s: &str, dim: usize) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    if s.is_empty() {
        return Ok(out);
    }
    if dim <= 9 && !s.contains(',') {
        for ch in s.chars() {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("bad index word {s:?}")))?;
            if d == 0 || d as usize > dim {
                return Err(Error::Parse(format!("index out of range in {s:?}")));
            }
            out.push((d - 1) as u8);
        }
    } else {
        for part in s.split(',') {
            let d: usize = part
                .parse()
                .map_err(|_| Error::Parse(format!("bad index word {s:?}")))?;
            if d == 0 || d > dim {
                return Err(Error::Parse(format!("index out of range in {s:?}")));
            }
            out.push((d - 1) as u8);
        }
    }
    Ok(out)
}

/// Sparse tensor map in graded lexicographic key order.
pub fn tensor_to_map(t: &TruncatedTensor) -> BTreeMap<String, String> {
    let mut entries: Vec<(&Vec<u8>, String)> = t
        .iter()
        .map(|(w, c)| (w, format_rat(c)))
        .collect();
    entries.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
    entries
        .into_iter()
        .map(|(w, c)| (tensor_key(w, t.dim()), c))
        .collect()
}

pub fn map_to_tensor(
    dim: usize,
    level: usize,
    map: &BTreeMap<String, String>,
) -> Result<TruncatedTensor> {
    let mut t = TruncatedTensor::zero(dim, level);
    for (k, v) in map {
        let word = parse_tensor_key(k, dim)?;
        let c = parse_rat(v)?;
        t = t.add(&TruncatedTensor::monomial(dim, level, &word, c))?;
    }
    Ok(t)
}

/// Key of a current component: `α=(a₁,…,a_n);(i,j)` with 1-based wedge
/// indices.
pub fn current_key(alpha: &[u32], wedge: &[u8]) -> String {
    let a = alpha
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let w = wedge
        .iter()
        .map(|&i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("α=({a});({w})")
}

fn parse_current_key(s: &str, dim: usize) -> Result<(Vec<u32>, Vec<u8>)> {
    let bad = || Error::Parse(format!("bad current key {s:?}"));
    let rest = s.strip_prefix("α=(").ok_or_else(bad)?;
    let (alpha_str, rest) = rest.split_once(");(").ok_or_else(bad)?;
    let wedge_str = rest.strip_suffix(')').ok_or_else(bad)?;
    let alpha: Vec<u32> = if alpha_str.is_empty() {
        Vec::new()
    } else {
        alpha_str
            .split(',')
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?
    };
    if alpha.len() != dim {
        return Err(bad());
    }
    let wedge: Vec<u8> = wedge_str
        .split(',')
        .map(|p| {
            let d: usize = p.parse().map_err(|_| bad())?;
            if d == 0 || d > dim {
                return Err(bad());
            }
            Ok((d - 1) as u8)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((alpha, wedge))
}

pub fn current_to_map(c: &PolyCurrent) -> BTreeMap<String, String> {
    c.iter()
        .map(|((alpha, wedge), x)| (current_key(alpha, wedge), format_rat(x)))
        .collect()
}

pub fn map_to_current(
    dim: usize,
    grade: usize,
    map: &BTreeMap<String, String>,
) -> Result<PolyCurrent> {
    let mut c = PolyCurrent::zero(dim, grade);
    for (k, v) in map {
        let (alpha, wedge) = parse_current_key(k, dim)?;
        if wedge.len() != grade {
            return Err(Error::Parse(format!("wrong wedge grade in {k:?}")));
        }
        c.insert((alpha, wedge), parse_rat(v)?);
    }
    Ok(c)
}

/// A path signature document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathSigDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub dim: usize,
    pub level: usize,
    pub signature: BTreeMap<String, String>,
}

impl PathSigDoc {
    pub fn from_tensor(t: &TruncatedTensor) -> Self {
        PathSigDoc {
            version: FORMAT_VERSION,
            dim: t.dim(),
            level: t.level(),
            signature: tensor_to_map(t),
        }
    }
}

/// A surface signature document: boundary tensor plus gamma current.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceSigDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub dim: usize,
    pub level: usize,
    pub weight: usize,
    pub boundary: BTreeMap<String, String>,
    pub gamma: BTreeMap<String, String>,
}

impl SurfaceSigDoc {
    pub fn from_signature(dim: usize, level: usize, weight: usize, s: &SurfaceSignature) -> Self {
        SurfaceSigDoc {
            version: FORMAT_VERSION,
            dim,
            level,
            weight,
            boundary: tensor_to_map(&s.boundary),
            gamma: current_to_map(&s.gamma),
        }
    }
}

/// A simplicial complex document (vertex coordinates plus index tuples).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlscDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<[usize; 3]>,
}

impl PlscDoc {
    pub fn from_plsc(p: &Plsc) -> Self {
        PlscDoc {
            version: FORMAT_VERSION,
            dim: p.dim(),
            vertices: p.vertices().iter().map(vec_to_strings).collect(),
            edges: p.edges().iter().map(|&(a, b)| [a, b]).collect(),
            faces: p.faces().iter().map(|&(a, b, c)| [a, b, c]).collect(),
        }
    }
}

/// One nonzero face multiplicity of a decision chain.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainEntryDoc {
    pub face: Vec<Vec<String>>,
    pub multiplicity: i64,
}

/// A decision report document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    #[serde(default = "default_version")]
    pub version: u32,
    pub dim: usize,
    pub verdict: String,
    pub boundary_x: Vec<Vec<String>>,
    pub boundary_y: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub chain: Vec<ChainEntryDoc>,
    pub signature: SurfaceSigDoc,
}

impl ReportDoc {
    pub fn from_report(dim: usize, r: &DecisionReport, rep_chain: &[ChainEntryDoc]) -> Self {
        ReportDoc {
            version: FORMAT_VERSION,
            dim,
            verdict: match r.verdict {
                Verdict::Equal => "equal".into(),
                Verdict::NotEqual => "not_equal".into(),
            },
            boundary_x: r.boundary_x.letters().iter().map(vec_to_strings).collect(),
            boundary_y: r.boundary_y.letters().iter().map(vec_to_strings).collect(),
            witness: r.witness.as_ref().map(|w| match w {
                Witness::BoundaryMismatch => "boundary_mismatch".into(),
                Witness::NonzeroFace { multiplicity, .. } => {
                    format!("nonzero_face(multiplicity={multiplicity})")
                }
            }),
            chain: rep_chain.to_vec(),
            signature: SurfaceSigDoc::from_signature(
                dim,
                crate::decide::REPORT_TENSOR_LEVEL,
                crate::decide::REPORT_WEIGHT_CAP,
                &r.signature,
            ),
        }
    }
}

/// Serializes any document deterministically, with a trailing newline.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
