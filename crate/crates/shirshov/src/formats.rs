//! Serialized forms shared by the CLI and the fixture tests.
//!
//! Words always travel as text together with an explicit alphabet size.

use std::hash::Hasher;

use fnv::FnvHasher;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use shirshov_core::bounds::{external_bounds, phi_bound, psi_bound, upsilon_bound, BoundParams, LadderBase};
use shirshov_core::dilworth::{selector_trace, ChainDecomposition, SelectorTuple, TailPoset};
use shirshov_core::divisibility::{NDivisionWitness, TailDivisionWitness};
use shirshov_core::height::{ExcisionTrace, HeightDecomposition};
use shirshov_core::periodicity::PowerOccurrence;
use shirshov_core::search::{AvoiderQuery, Gate, SearchReport};
use shirshov_core::{Alphabet, SelectorEntry, Word};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerJson {
    pub start: usize,
    pub root: String,
    pub exponent: usize,
}

impl From<&PowerOccurrence> for PowerJson {
    fn from(p: &PowerOccurrence) -> Self {
        PowerJson { start: p.start, root: p.root.to_text(), exponent: p.exponent }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub prefix_len: usize,
    pub cut_points: Vec<usize>,
}

impl From<&NDivisionWitness> for WitnessJson {
    fn from(w: &NDivisionWitness) -> Self {
        WitnessJson { prefix_len: w.prefix_len, cut_points: w.cut_points.clone() }
    }
}

impl WitnessJson {
    pub fn into_witness(self, word_len: usize) -> NDivisionWitness {
        NDivisionWitness { prefix_len: self.prefix_len, cut_points: self.cut_points, word_len }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailWitnessJson {
    pub starts: Vec<usize>,
}

impl From<&TailDivisionWitness> for TailWitnessJson {
    fn from(w: &TailDivisionWitness) -> Self {
        TailWitnessJson { starts: w.starts.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateJson {
    Ordinary,
    Tail,
}

impl From<Gate> for GateJson {
    fn from(g: Gate) -> Self {
        match g {
            Gate::Ordinary => GateJson::Ordinary,
            Gate::Tail => GateJson::Tail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub max_len: usize,
    pub gate: GateJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReportJson {
    pub params: SearchParams,
    pub extremal_length: usize,
    pub witness: String,
    pub counts: Vec<u64>,
    pub nodes: u64,
    /// The search reached `max_len`; `extremal_length` is then only a
    /// lower bound.
    pub lower_bound_only: bool,
    pub seconds: Option<f64>,
}

impl SearchReportJson {
    pub fn new(q: &AvoiderQuery, r: &SearchReport, seconds: Option<f64>) -> Result<Self> {
        let witness = Word::new(Alphabet::new(q.l)?, r.witness.clone())?;
        Ok(SearchReportJson {
            params: SearchParams { n: q.n, d: q.d, l: q.l, max_len: q.max_len, gate: q.gate.into() },
            extremal_length: r.extremal_length,
            witness: witness.to_text(),
            counts: r.counts.clone(),
            nodes: r.nodes,
            lower_bound_only: r.ceiling_hit,
            seconds,
        })
    }
}

/// One row of a search grid export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchGridRow {
    pub n: usize,
    pub d: usize,
    pub l: usize,
    pub max_len: usize,
    pub extremal_length: usize,
    pub witness: String,
    pub nodes: u64,
    pub lower_bound_only: bool,
}

impl From<&SearchReportJson> for SearchGridRow {
    fn from(r: &SearchReportJson) -> Self {
        SearchGridRow {
            n: r.params.n,
            d: r.params.d,
            l: r.params.l,
            max_len: r.params.max_len,
            extremal_length: r.extremal_length,
            witness: r.witness.clone(),
            nodes: r.nodes,
            lower_bound_only: r.lower_bound_only,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub root: String,
    pub exponent: usize,
}

pub fn height_factors(h: &HeightDecomposition) -> Vec<FactorJson> {
    h.factors.iter().map(|(root, k)| FactorJson { root: root.to_text(), exponent: *k }).collect()
}

/// One excision step; a trace is written one step per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcisionStepJson {
    pub step: usize,
    pub u: String,
    pub f: String,
    pub y: String,
    pub root: String,
    pub exponent: usize,
    pub r1: usize,
    pub r2: usize,
    pub f_original: Vec<usize>,
}

pub fn excision_steps(trace: &ExcisionTrace) -> Vec<ExcisionStepJson> {
    trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| ExcisionStepJson {
            step: i + 1,
            u: s.u.to_text(),
            f: s.f.to_text(),
            y: s.y.to_text(),
            root: s.root.to_text(),
            exponent: s.exponent(),
            r1: s.r1,
            r2: s.r2,
            f_original: s.f_original.clone(),
        })
        .collect()
}

pub fn excision_jsonl(trace: &ExcisionTrace) -> Result<String> {
    let mut out = String::new();
    for step in excision_steps(trace) {
        out.push_str(&serde_json::to_string(&step)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_excision_jsonl(text: &str) -> Result<Vec<ExcisionStepJson>> {
    text.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| serde_json::from_str(line).map_err(Error::from))
        .collect()
}

/// Replays serialized steps against `original`: every step must splice
/// `u f y` into the previous word and cut `f` away. Returns the final word.
pub fn replay_excision(original: &Word, steps: &[ExcisionStepJson]) -> Result<Word> {
    let alphabet = original.alphabet();
    let mut current = original.to_text();
    for (i, s) in steps.iter().enumerate() {
        if s.step != i + 1 {
            return Err(Error::format("excision trace", format!("step {} out of order", s.step)));
        }
        let before = Word::parse(&format!("{}{}{}", s.u, s.f, s.y), alphabet)?;
        if before.to_text() != current {
            return Err(Error::format("excision trace", format!("step {} does not start from the previous word", s.step)));
        }
        let root = Word::parse(&s.root, alphabet)?;
        let f = Word::parse(&s.f, alphabet)?;
        if root.is_empty() || f != root.pow(s.exponent) {
            return Err(Error::format("excision trace", format!("step {}: f is not root^exponent", s.step)));
        }
        current = Word::parse(&format!("{}{}", s.u, s.y), alphabet)?.to_text();
    }
    Ok(Word::parse(&current, alphabet)?)
}

/// 64-bit FNV-1a over the tuple: each tail's letter ranks followed by a
/// zero byte, θ as a lone zero byte.
pub fn tuple_hash(t: &SelectorTuple) -> u64 {
    let mut h = FnvHasher::default();
    for e in &t.entries {
        if let SelectorEntry::Tail(letters) = e {
            h.write(letters);
        }
        h.write_u8(0);
    }
    h.finish()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectorRow {
    pub position: usize,
    pub color: usize,
    pub tuple_hash: String,
}

pub fn selector_rows(poset: &TailPoset, dec: &ChainDecomposition, p: usize) -> Result<Vec<SelectorRow>> {
    Ok(selector_trace(poset, dec, p, None)?
        .into_iter()
        .map(|(i, t)| SelectorRow { position: i, color: dec.color_of(i), tuple_hash: format!("{:016x}", tuple_hash(&t)) })
        .collect())
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::format("csv", e.to_string()))
}

pub fn from_csv<T: for<'de> Deserialize<'de>>(text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes()).deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Bounds at one parameter point. Real-valued display forms are given by
/// the upper end of their certified bracket.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: u64,
    pub d: u64,
    pub l: u64,
    pub psi_exact: String,
    pub psi_display: String,
    pub phi_display: String,
    pub upsilon: String,
    pub lopatin: String,
    pub kuzmin_lower: String,
    pub gk_lower: String,
}

pub fn bounds_row(n: u64, d: u64, l: u64, base: LadderBase) -> Result<BoundsRow> {
    let psi = psi_bound(BoundParams { n, d, l, base })?;
    let phi = phi_bound(n, l, base)?;
    let ext = external_bounds(n, l)?;
    let gk = ext.gk_lower;
    let gk = if *gk.denom() == 1 { gk.numer().to_string() } else { format!("{}/{}", gk.numer(), gk.denom()) };
    Ok(BoundsRow {
        n,
        d,
        l,
        psi_exact: psi.exact.to_string(),
        psi_display: psi.display.upper.to_string(),
        phi_display: phi.display.upper.to_string(),
        upsilon: upsilon_bound(n, l)?.to_string(),
        lopatin: ext.lopatin.upper.to_string(),
        kuzmin_lower: ext.kuzmin_lower.to_string(),
        gk_lower: gk,
    })
}

impl BoundsRow {
    pub fn psi_exact_value(&self) -> Result<BigUint> {
        self.psi_exact.parse().map_err(|_| Error::format("bounds row", "psi_exact is not an integer"))
    }
}
