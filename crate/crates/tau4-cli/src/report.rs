//! Rendering of computation results as plain text or compact JSON.
//! All numeric output and all map key orderings are deterministic, so a
//! given input always produces byte-identical output.

use crate::{CliError, Format};
use serde_json::json;
use tau4::conway::ConwayPoly;
use tau4::enhanced::{BrownValue, ClassTuple, NormalForm};
use tau4::reduction::{CubicForm, GF2Poly};
use tau4::surgery::Tau4Result;
use tau4::CycloInt;

fn to_json(v: &serde_json::Value) -> String {
    serde_json::to_string(v).expect("serializing a finite JSON value")
}

fn brown_json(b: BrownValue) -> serde_json::Value {
    match b {
        BrownValue::Finite(v) => json!(v),
        BrownValue::Infinite => json!("infinity"),
    }
}

fn coeff_array(value: &CycloInt) -> Result<Vec<i64>, CliError> {
    value
        .coeffs()
        .iter()
        .map(|&c| {
            i64::try_from(c).map_err(|_| {
                CliError::validation("tau4 coefficient exceeds the 64-bit output range".into())
            })
        })
        .collect()
}

pub fn tau4_report(
    primary: &Tau4Result,
    cross: Option<(&Tau4Result, &Tau4Result)>,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Text => {
            let mut out = format!(
                "tau4 {}\nmethod {}\nterms {}",
                primary.value, primary.method, primary.terms
            );
            if cross.is_some() {
                out.push_str("\ncross-check agree");
            }
            Ok(out)
        }
        Format::Json => {
            let integer = primary
                .value
                .as_integer()
                .map(|n| {
                    i64::try_from(n).map_err(|_| {
                        CliError::validation("tau4 value exceeds the 64-bit output range".into())
                    })
                })
                .transpose()?;
            let mut v = json!({
                "tau4": coeff_array(&primary.value)?,
                "integer": integer,
                "method": primary.method.to_string(),
                "terms": primary.terms,
            });
            if let Some((e, s)) = cross {
                v["cross_check"] = json!({
                    "agree": true,
                    "exponential_terms": e.terms,
                    "spin_sum_terms": s.terms,
                });
            }
            Ok(to_json(&v))
        }
    }
}

fn normal_form_text(nf: &NormalForm) -> String {
    let parts = [
        (nf.p1, "P1"),
        (nf.pm1, "P-1"),
        (nf.t0, "T0"),
        (nf.t4, "T4"),
        (nf.a0, "A0"),
        (nf.ainf, "Ainf"),
    ];
    let rendered: Vec<String> = parts
        .iter()
        .filter(|&&(k, _)| k > 0)
        .map(|&(k, name)| if k == 1 { name.to_string() } else { format!("{}{}", k, name) })
        .collect();
    if rendered.is_empty() {
        "empty".to_string()
    } else {
        rendered.join(" + ")
    }
}

pub fn classify_report(tuple: &ClassTuple, nf: &NormalForm, format: Format) -> String {
    match format {
        Format::Text => format!(
            "dim {}\nradical {}\neven {}\nproper {}\nbrown {}\nnormal-form {}",
            tuple.dim, tuple.radical_dim, tuple.even, tuple.proper, tuple.brown,
            normal_form_text(nf)
        ),
        Format::Json => to_json(&json!({
            "dim": tuple.dim,
            "radical": tuple.radical_dim,
            "even": tuple.even,
            "proper": tuple.proper,
            "brown": brown_json(tuple.brown),
            "normal_form": {
                "p1": nf.p1,
                "pm1": nf.pm1,
                "t0": nf.t0,
                "t4": nf.t4,
                "a0": nf.a0,
                "ainf": nf.ainf,
            },
        })),
    }
}

pub fn brown_report(b: BrownValue, format: Format) -> String {
    match format {
        Format::Text => format!("brown {}", b),
        Format::Json => to_json(&json!({ "brown": brown_json(b) })),
    }
}

pub fn conway_report(p: &ConwayPoly, format: Format) -> String {
    match format {
        Format::Text => {
            if p.is_zero() {
                "conway 0".to_string()
            } else {
                let terms: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                format!("conway {}", terms.join(" "))
            }
        }
        Format::Json => to_json(&json!({ "coeffs": p.coeffs() })),
    }
}

pub fn arf_report(a: u8, format: Format) -> String {
    match format {
        Format::Text => format!("arf {}", a),
        Format::Json => to_json(&json!({ "arf": a })),
    }
}

/// Rows are (sorted 1-based component indices, mu), already sorted.
pub fn mu_report(rows: &[(Vec<usize>, u8)], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("count {}", rows.len());
            for (comps, mu) in rows {
                let label = if comps.is_empty() {
                    "none".to_string()
                } else {
                    comps.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
                };
                out.push_str(&format!("\nsublink {} mu {}", label, mu));
            }
            out
        }
        Format::Json => {
            let sublinks: Vec<serde_json::Value> = rows
                .iter()
                .map(|(comps, mu)| json!({ "components": comps, "mu": mu }))
                .collect();
            to_json(&json!({ "count": rows.len(), "sublinks": sublinks }))
        }
    }
}

pub struct VerifyBlock {
    pub m: usize,
    pub k: usize,
    pub models: u64,
    pub zeros: u64,
    pub holds: bool,
}

fn verify_text(v: &VerifyBlock) -> String {
    format!(
        "\nmodels {}\nzeros {}\nidentity {}",
        v.models,
        v.zeros,
        if v.holds { "holds" } else { "fails" }
    )
}

fn verify_json(v: &VerifyBlock) -> serde_json::Value {
    json!({
        "m": v.m,
        "k": v.k,
        "models": v.models,
        "zeros": v.zeros,
        "holds": v.holds,
    })
}

fn monomial_text(mono: &[usize]) -> String {
    if mono.is_empty() {
        "1".to_string()
    } else {
        mono.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join("*")
    }
}

fn monomials_json(polys: &[GF2Poly]) -> serde_json::Value {
    let rendered: Vec<Vec<Vec<usize>>> = polys
        .iter()
        .map(|p| {
            p.monomials()
                .iter()
                .map(|m| m.iter().map(|i| i + 1).collect())
                .collect()
        })
        .collect();
    json!(rendered)
}

pub fn polys_report(
    vars: usize,
    polys: &[GF2Poly],
    verify: Option<&VerifyBlock>,
    format: Format,
) -> String {
    match format {
        Format::Text => {
            let mut out = format!("vars {}\npolys {}", vars, polys.len());
            for (idx, p) in polys.iter().enumerate() {
                let terms: Vec<String> = p.monomials().iter().map(|m| monomial_text(m)).collect();
                let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                out.push_str(&format!("\npoly {} {}", idx + 1, body));
            }
            if let Some(v) = verify {
                out.push_str(&verify_text(v));
            }
            out
        }
        Format::Json => {
            let mut v = json!({ "vars": vars, "polys": monomials_json(polys) });
            if let Some(vb) = verify {
                v["verify"] = verify_json(vb);
            }
            to_json(&v)
        }
    }
}

pub fn cubic_report(c: &CubicForm, verify: Option<&VerifyBlock>, format: Format) -> String {
    let linear: Vec<usize> = c.linear().iter().map(|&i| i + 1).collect();
    let quadratic: Vec<[usize; 2]> = c.quadratic().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
    let cubic: Vec<[usize; 3]> =
        c.cubic().iter().map(|&(i, j, k)| [i + 1, j + 1, k + 1]).collect();
    match format {
        Format::Text => {
            let row = |items: Vec<String>| {
                if items.is_empty() { "none".to_string() } else { items.join(" ") }
            };
            let mut out = format!(
                "vars {}\nlinear {}\nquadratic {}\ncubic {}",
                c.n(),
                row(linear.iter().map(|i| i.to_string()).collect()),
                row(quadratic.iter().map(|p| format!("{},{}", p[0], p[1])).collect()),
                row(cubic.iter().map(|t| format!("{},{},{}", t[0], t[1], t[2])).collect()),
            );
            if let Some(v) = verify {
                out.push_str(&verify_text(v));
            }
            out
        }
        Format::Json => {
            let mut v = json!({
                "n": c.n(),
                "linear": linear,
                "quadratic": quadratic,
                "cubic": cubic,
            });
            if let Some(vb) = verify {
                v["verify"] = verify_json(vb);
            }
            to_json(&v)
        }
    }
}

pub fn count_report(models: u64, format: Format) -> String {
    match format {
        Format::Text => format!("models {}", models),
        Format::Json => to_json(&json!({ "models": models })),
    }
}
