//! Table, JSON and CSV renderings of the reports.

use nilzeta::report::{
    ChamberRow, ConeSuite, IdentityReport, OrbitRow, ResidueRow, ResidueTable, VERSION,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

fn to_json<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn to_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Left-aligned columns separated by two spaces.
fn to_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', w - c.chars().count() + 2));
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.to_vec());
    out.push_str(&line(
        widths
            .iter()
            .map(|&w| "-".repeat(w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    ));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn tabular(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Csv => to_csv(header, rows),
        _ => to_table(header, rows),
    }
}

/// A JSON scalar as plain text.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn factor(a: u32, b: u32) -> String {
    if b == 1 {
        format!("xi({a}+s)")
    } else {
        format!("xi({a}+{b}s)")
    }
}

pub fn orbits(n: usize, rows: &[OrbitRow], format: Format) -> String {
    if format == Format::Json {
        return to_json(&json!({ "version": VERSION, "n": n, "rows": rows }));
    }
    let header = ["partition", "diagram", "hooks", "factors", "z", "classes"];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.partition.to_string(),
                r.diagram.clone(),
                r.cells
                    .iter()
                    .map(|c| c.hook.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                r.factors
                    .iter()
                    .map(|&[a, b]| factor(a, b))
                    .collect::<Vec<_>>()
                    .join(" "),
                r.z.clone(),
                r.class_count.to_string(),
            ]
        })
        .collect();
    tabular(format, &header, &body)
}

fn cancellation(r: &ResidueRow) -> String {
    r.principal
        .iter()
        .filter(|c| c.k >= 2)
        .map(|c| {
            let verdict = if c.formally_zero {
                "formal-zero".to_string()
            } else {
                plain(&serde_json::to_value(c.numeric).expect("verdict serializes"))
            };
            format!("s^-{}:{verdict}", c.k)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict(pass: bool) -> String {
    if pass { "pass" } else { "FAIL" }.to_string()
}

pub fn residues(t: &ResidueTable, format: Format) -> String {
    match format {
        Format::Json => to_json(t),
        Format::Csv => {
            let header = [
                "partition",
                "h",
                "higher_poles",
                "pole_order",
                "residue",
                "residue_error",
                "anchor",
                "anchor_deviation",
                "gated",
                "pass",
            ];
            let body: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.partition.to_string(),
                        r.h.clone(),
                        cancellation(r),
                        plain(&r.pole_order),
                        r.residue.clone(),
                        format!("{:e}", r.residue_error),
                        r.anchor.as_ref().map_or(String::new(), |a| a.label.clone()),
                        r.anchor
                            .as_ref()
                            .map_or(String::new(), |a| format!("{:e}", a.deviation)),
                        r.gated.to_string(),
                        r.pass.to_string(),
                    ]
                })
                .collect();
            to_csv(&header, &body)
        }
        Format::Table => {
            let header = [
                "orbit",
                "pole",
                "residue",
                "error",
                "higher poles",
                "anchor",
                "verdict",
            ];
            let body: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.partition.to_string(),
                        plain(&r.pole_order),
                        r.residue.clone(),
                        format!("{:.1e}", r.residue_error),
                        cancellation(r),
                        r.anchor.as_ref().map_or(String::new(), |a| {
                            format!("{} ({:.1e})", a.label, a.deviation)
                        }),
                        if r.gated {
                            verdict(r.pass)
                        } else {
                            "report".into()
                        },
                    ]
                })
                .collect();
            let mut out = format!(
                "nilzeta {} | n = {} | {} digits, K = {}, radius {}, {} nodes\n",
                t.version,
                t.n,
                t.precision.working_digits,
                t.precision.expansion_order,
                t.precision.contour_radius,
                t.precision.contour_nodes
            );
            out.push_str(&to_table(&header, &body));
            for r in &t.rows {
                out.push_str(&format!("H({}) = {}\n", r.partition, r.h));
            }
            out.push_str(&format!("overall: {}\n", verdict(t.pass)));
            out
        }
    }
}

pub fn identity(r: &IdentityReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        _ => {
            let header = ["identity", "n", "checked", "failures", "pass"];
            let row = vec![
                r.identity.to_string(),
                r.n.to_string(),
                r.checked.to_string(),
                r.failures.len().to_string(),
                r.pass.to_string(),
            ];
            let mut out = tabular(format, &header, &[row]);
            if format == Format::Table {
                for f in &r.failures {
                    out.push_str(&format!(
                        "{}: log gives {} but H = {}\n",
                        f.orbit, f.log_coefficient, f.h_orbit
                    ));
                }
            }
            out
        }
    }
}

pub fn cones(s: &ConeSuite, format: Format) -> String {
    if format == Format::Json {
        return to_json(s);
    }
    let header = ["identity", "n", "samples", "skipped", "failures", "pass"];
    let body: Vec<Vec<String>> = s
        .checks
        .iter()
        .map(|c| {
            vec![
                c.identity.to_string(),
                c.n.to_string(),
                c.samples.to_string(),
                c.skipped.to_string(),
                c.failures.len().to_string(),
                c.pass().to_string(),
            ]
        })
        .collect();
    let mut out = String::new();
    if format == Format::Table {
        out.push_str(&format!(
            "nilzeta {} | n = {} | seed {}\n",
            s.version, s.n, s.seed
        ));
    }
    out.push_str(&tabular(format, &header, &body));
    if format == Format::Table {
        for c in &s.checks {
            for f in &c.failures {
                out.push_str(&format!("{} at H = {}: {}\n", c.identity, f.h, f.details));
            }
        }
        out.push_str(&format!("overall: {}\n", verdict(s.pass)));
    }
    out
}

pub fn chambers(n: usize, rows: &[ChamberRow], format: Format) -> String {
    if format == Format::Json {
        return to_json(&json!({ "version": VERSION, "n": n, "rows": rows }));
    }
    let header = [
        "H",
        "canonical",
        "degree",
        "cone",
        "extremal",
        "e_g",
        "f_g",
        "langlands_borel",
    ];
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.h.clone(),
                r.canonical.clone(),
                r.degree.clone(),
                r.cone.clone(),
                r.extremal.clone(),
                r.e_g.to_string(),
                r.f_g.to_string(),
                r.langlands_borel.to_string(),
            ]
        })
        .collect();
    tabular(format, &header, &body)
}

pub fn expansion(doc: &Value, format: Format) -> String {
    if format == Format::Json {
        return to_json(doc);
    }
    let series = &doc["series"];
    let min = series["min_degree"].as_i64().unwrap_or(0);
    let body: Vec<Vec<String>> = series["coefficients"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .enumerate()
                .map(|(i, c)| {
                    vec![
                        (min + i as i64).to_string(),
                        plain(&c["value"]),
                        plain(&c["error"]),
                    ]
                })
                .collect()
        })
        .unwrap_or_default();
    let header = ["degree", "value", "error"];
    let mut out = String::new();
    if format == Format::Table {
        out.push_str(&format!(
            "H({}) = {}\npole order {}, residue {}\n",
            plain(&doc["partition"]),
            plain(&doc["h"]),
            plain(&series["pole_order"]),
            plain(&series["residue"]["value"])
        ));
    }
    out.push_str(&tabular(format, &header, &body));
    out
}
