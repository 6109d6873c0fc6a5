//! Input file parsing: JSON for links, matrices, enhanced spaces, models,
//! and cubic forms, plus DIMACS CNF.  All component and variable indices
//! in JSON are 1-based; conversion happens here and nowhere else.

use crate::CliError;
use serde::Deserialize;
use std::collections::BTreeMap;
use tau4::enhanced::EnhancedSpace;
use tau4::gf2::BitMatrix;
use tau4::invariants::LinkInvariantModel;
use tau4::pd::{Crossing, PDLink};
use tau4::reduction::{parse_dimacs, CubicForm, CNF3};
use tau4::SymIntMatrix;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingJson {
    arcs: [usize; 4],
    sign: i8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkJson {
    #[serde(default)]
    crossings: Vec<CrossingJson>,
    #[serde(default)]
    free_loops: Vec<usize>,
    #[serde(default)]
    framings: Option<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    matrix: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpaceJson {
    form: Vec<Vec<u8>>,
    values: Vec<u8>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairJson {
    i: usize,
    j: usize,
    value: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleJson {
    i: usize,
    j: usize,
    k: usize,
    value: u8,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    components: usize,
    arf: Vec<u8>,
    lk: Vec<Vec<i64>>,
    #[serde(default)]
    sato_levine: Vec<PairJson>,
    #[serde(default)]
    quarter_sl: Vec<PairJson>,
    #[serde(default)]
    triple: Vec<TripleJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubicJson {
    n: usize,
    #[serde(default)]
    linear: Vec<usize>,
    #[serde(default)]
    quadratic: Vec<[usize; 2]>,
    #[serde(default)]
    cubic: Vec<[usize; 3]>,
}

pub enum SurgeryInput {
    Link(PDLink),
    Matrix(SymIntMatrix),
    Model(LinkInvariantModel),
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::validation(format!("JSON parse error: {}", e)))
}

fn one_based(i: usize, field: &str) -> Result<usize, CliError> {
    i.checked_sub(1)
        .ok_or_else(|| CliError::validation(format!("{} index 0: indices are 1-based", field)))
}

fn build_link(parsed: LinkJson) -> Result<PDLink, CliError> {
    let crossings = parsed
        .crossings
        .into_iter()
        .map(|c| Crossing::new(c.arcs, c.sign))
        .collect::<tau4::Result<Vec<_>>>()?;
    let link = PDLink::from_parts(crossings, parsed.free_loops)?;
    Ok(match parsed.framings {
        Some(f) => link.with_framings(f)?,
        None => link,
    })
}

pub fn parse_link(text: &str) -> Result<PDLink, CliError> {
    build_link(from_json(text)?)
}

fn build_matrix(rows: Vec<Vec<i64>>) -> Result<SymIntMatrix, CliError> {
    Ok(SymIntMatrix::from_i64(&rows)?)
}

pub fn parse_space(text: &str) -> Result<EnhancedSpace, CliError> {
    let parsed: SpaceJson = from_json(text)?;
    for (i, row) in parsed.form.iter().enumerate() {
        if let Some(j) = row.iter().position(|&b| b > 1) {
            return Err(CliError::validation(format!(
                "form[{}][{}] = {} is not a GF(2) entry",
                i + 1,
                j + 1,
                row[j]
            )));
        }
    }
    let form = BitMatrix::from_bits(&parsed.form)?;
    Ok(EnhancedSpace::new(form, parsed.values)?)
}

fn build_model(parsed: ModelJson) -> Result<LinkInvariantModel, CliError> {
    let n = parsed.components;
    let lk = build_matrix(parsed.lk)?;
    let mut quarter = BTreeMap::new();
    for e in &parsed.quarter_sl {
        let key = (one_based(e.i, "quarter_sl")?, one_based(e.j, "quarter_sl")?);
        let v = u8::try_from(e.value).map_err(|_| {
            CliError::validation(format!("quarter_sl({}, {}) = {} is not a bit", e.i, e.j, e.value))
        })?;
        quarter.insert(key, v);
    }
    let mut sato = BTreeMap::new();
    for e in &parsed.sato_levine {
        sato.insert((one_based(e.i, "sato_levine")?, one_based(e.j, "sato_levine")?), e.value);
    }
    let mut triple = BTreeMap::new();
    for e in &parsed.triple {
        let key = (
            one_based(e.i, "triple")?,
            one_based(e.j, "triple")?,
            one_based(e.k, "triple")?,
        );
        triple.insert(key, e.value);
    }
    Ok(LinkInvariantModel::new(n, parsed.arf, quarter, sato, triple, lk)?)
}

/// A surgery input is a link (key "crossings" or "free_loops"), a bare
/// linking matrix (key "matrix"), or an invariant model (key "components").
pub fn parse_surgery(text: &str) -> Result<SurgeryInput, CliError> {
    let value: serde_json::Value = from_json(text)?;
    let Some(obj) = value.as_object() else {
        return Err(CliError::validation("input must be a JSON object".into()));
    };
    if obj.contains_key("matrix") {
        let parsed: MatrixJson = from_json(text)?;
        Ok(SurgeryInput::Matrix(build_matrix(parsed.matrix)?))
    } else if obj.contains_key("components") {
        Ok(SurgeryInput::Model(build_model(from_json(text)?)?))
    } else if obj.contains_key("crossings") || obj.contains_key("free_loops") {
        Ok(SurgeryInput::Link(build_link(from_json(text)?)?))
    } else {
        Err(CliError::validation(
            "surgery input needs \"crossings\"/\"free_loops\" (link), \"matrix\", or \"components\" (model)".into(),
        ))
    }
}

pub fn parse_cubic(text: &str) -> Result<CubicForm, CliError> {
    let parsed: CubicJson = from_json(text)?;
    let mut linear = std::collections::BTreeSet::new();
    for &i in &parsed.linear {
        linear.insert(one_based(i, "linear")?);
    }
    let mut quadratic = std::collections::BTreeSet::new();
    for &[i, j] in &parsed.quadratic {
        quadratic.insert((one_based(i, "quadratic")?, one_based(j, "quadratic")?));
    }
    let mut cubic = std::collections::BTreeSet::new();
    for &[i, j, k] in &parsed.cubic {
        cubic.insert((
            one_based(i, "cubic")?,
            one_based(j, "cubic")?,
            one_based(k, "cubic")?,
        ));
    }
    Ok(CubicForm::new(parsed.n, linear, quadratic, cubic)?)
}

pub fn parse_cnf(text: &str) -> Result<CNF3, CliError> {
    Ok(parse_dimacs(text)?)
}
