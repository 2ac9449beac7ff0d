//! Plain-text value tables, rendered identically from reference strings and
//! from fresh computation so the two can be compared byte for byte.

use serde_json::Value;
use weightsys_core::lie::{bipartite_partial_fractions, projection_egf, w_gl_diagram, w_sl2, w_sl_diagram};
use weightsys_core::{parse_poly, ChordDiagram, MPoly};

use crate::error::CliError;

/// Reference values shipped with the core crate.
pub const REFERENCE_JSON: &str = include_str!("../../core/goldens/lie_tables.json");

pub struct Section {
    pub title: String,
    pub rows: Vec<(String, String)>,
}

pub fn render(sections: &[Section]) -> String {
    let mut out = String::new();
    for (i, s) in sections.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("# {}\n", s.title));
        for (k, v) in &s.rows {
            out.push_str(&format!("{k}: {v}\n"));
        }
    }
    out
}

fn fractions(terms: &[(MPoly, MPoly)]) -> String {
    terms
        .iter()
        .map(|(a, b)| format!("({a})/(1 - ({b})*t)"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn parse(s: &Value) -> Result<MPoly, CliError> {
    let s = s.as_str().ok_or_else(|| CliError::Usage("table entry is not a string".into()))?;
    parse_poly(s).map_err(|e| CliError::Usage(format!("bad table entry {s:?}: {e}")))
}

fn keyed(v: &Value, key: &str) -> Result<Vec<(usize, Value)>, CliError> {
    let obj = v[key]
        .as_object()
        .ok_or_else(|| CliError::Usage(format!("missing table {key}")))?;
    let mut rows = obj
        .iter()
        .map(|(k, v)| {
            k.parse::<usize>()
                .map(|n| (n, v.clone()))
                .map_err(|_| CliError::Usage(format!("bad key {k} in {key}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by_key(|r| r.0);
    Ok(rows)
}

const TITLES: [(&str, &str); 5] = [
    ("w_sl2_complete", "w_sl2(K_n)"),
    ("w_gl_complete", "w_gl(K_n)"),
    ("w_sl_complete", "w_sl(K_n)"),
    ("bipartite_partial_fractions", "G_m = sum_n w_sl2(K_{m,n}) t^n"),
    ("projection_egf", "w_sl2(pi(K_n))"),
];

/// Sections built from the reference strings.
pub fn reference_sections(json: &str) -> Result<Vec<Section>, CliError> {
    let v: Value = serde_json::from_str(json)?;
    let mut out = Vec::new();
    for (key, title) in TITLES {
        let rows = match key {
            "bipartite_partial_fractions" => keyed(&v, key)?
                .into_iter()
                .map(|(m, terms)| {
                    let pairs = terms
                        .as_array()
                        .ok_or_else(|| CliError::Usage("bad partial fraction table".into()))?
                        .iter()
                        .map(|p| Ok((parse(&p[0])?, parse(&p[1])?)))
                        .collect::<Result<Vec<_>, CliError>>()?;
                    Ok((format!("G_{m}"), fractions(&pairs)))
                })
                .collect::<Result<Vec<_>, CliError>>()?,
            "projection_egf" => v[key]
                .as_array()
                .ok_or_else(|| CliError::Usage("missing table projection_egf".into()))?
                .iter()
                .enumerate()
                .map(|(k, s)| Ok((format!("n={}", k + 1), parse(s)?.to_string())))
                .collect::<Result<Vec<_>, CliError>>()?,
            _ => keyed(&v, key)?
                .into_iter()
                .map(|(n, s)| Ok((format!("n={n}"), parse(&s)?.to_string())))
                .collect::<Result<Vec<_>, CliError>>()?,
        };
        out.push(Section {
            title: title.into(),
            rows,
        });
    }
    Ok(out)
}

/// The same sections, computed from scratch over the reference key ranges.
pub fn computed_sections() -> Result<Vec<Section>, CliError> {
    let v: Value = serde_json::from_str(REFERENCE_JSON)?;
    let mut out = Vec::new();
    for (key, title) in TITLES {
        let rows = match key {
            "bipartite_partial_fractions" => keyed(&v, key)?
                .into_iter()
                .map(|(m, _)| {
                    let terms = bipartite_partial_fractions(m)?
                        .ok_or_else(|| CliError::Failed(format!("G_{m} has no partial fraction form")))?;
                    Ok((format!("G_{m}"), fractions(&terms)))
                })
                .collect::<Result<Vec<_>, CliError>>()?,
            "projection_egf" => {
                let len = v[key].as_array().map_or(0, |a| a.len());
                projection_egf(len)
                    .into_iter()
                    .enumerate()
                    .map(|(k, p)| (format!("n={}", k + 1), p.to_string()))
                    .collect()
            }
            _ => {
                let f: fn(&ChordDiagram) -> MPoly = match key {
                    "w_sl2_complete" => w_sl2,
                    "w_gl_complete" => w_gl_diagram,
                    _ => w_sl_diagram,
                };
                keyed(&v, key)?
                    .into_iter()
                    .map(|(n, _)| (format!("n={n}"), f(&ChordDiagram::complete(n)).to_string()))
                    .collect()
            }
        };
        out.push(Section {
            title: title.into(),
            rows,
        });
    }
    Ok(out)
}
