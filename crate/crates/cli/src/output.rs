use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

use hermitian_core::curve::Place;
use hermitian_core::engine::GenusReport;
use hermitian_core::gf::FieldTower;

/// One row of a `table` run.
#[derive(Debug, Clone, Serialize)]
pub struct TableRecord {
    pub case: String,
    pub q: u64,
    pub m: String,
    pub expected: String,
    pub computed: u64,
    pub status: String,
    pub deg_diff: u64,
    pub group_order: usize,
    pub runtime_ms: u128,
}

impl TableRecord {
    pub fn from_report(r: &GenusReport, case: &str, m: Option<u64>, runtime_ms: u128) -> Self {
        let (expected, status) = match &r.formula {
            Some(f) => (f.expected.clone().unwrap_or_default(), f.status.clone()),
            None => (String::new(), String::new()),
        };
        TableRecord {
            case: case.to_string(),
            q: r.q,
            m: m.map(|m| m.to_string()).unwrap_or_default(),
            expected,
            computed: r.genus,
            status,
            deg_diff: r.deg_diff,
            group_order: r.group.order,
            runtime_ms,
        }
    }
}

pub fn write_csv(w: &mut dyn Write, rows: &[TableRecord]) -> io::Result<()> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(["case", "q", "m", "expected", "computed", "status", "deg_diff", "group_order", "runtime_ms"])?;
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()
}

pub fn write_table_text(w: &mut dyn Write, rows: &[TableRecord]) -> io::Result<()> {
    writeln!(
        w,
        "{:<8} {:>5} {:>6} {:>9} {:>9} {:<20} {:>9} {:>6} {:>8}",
        "case", "q", "m", "expected", "computed", "status", "deg_diff", "|G|", "ms"
    )?;
    for r in rows {
        writeln!(
            w,
            "{:<8} {:>5} {:>6} {:>9} {:>9} {:<20} {:>9} {:>6} {:>8}",
            r.case, r.q, r.m, r.expected, r.computed, r.status, r.deg_diff, r.group_order, r.runtime_ms
        )?;
    }
    Ok(())
}

pub fn write_report_text(w: &mut dyn Write, r: &GenusReport) -> io::Result<()> {
    writeln!(w, "q = {}, |G| = {}", r.q, r.group.order)?;
    if !r.group.generators.is_empty() {
        writeln!(w, "generators: {}", r.group.generators.join(", "))?;
    }
    writeln!(w, "{:<40} {:>6} {:>3} {:>6} {:>3} {:>8}", "orbit rep", "size", "deg", "e", "f", "d")?;
    for o in &r.orbits {
        writeln!(w, "{:<40} {:>6} {:>3} {:>6} {:>3} {:>8}", o.rep, o.size, o.degree, o.e, o.f, o.d)?;
    }
    writeln!(w, "degree-3 places: {}", serde_json::to_value(r.degree3).unwrap_or(Value::Null).as_str().unwrap_or(""))?;
    writeln!(w, "deg Diff = {}", r.deg_diff)?;
    writeln!(w, "genus = {}", r.genus)?;
    writeln!(
        w,
        "rational places of the quotient = {}{}",
        r.n_rational_quotient,
        if r.maximal { " (maximal)" } else { "" }
    )?;
    if let Some(f) = &r.formula {
        writeln!(w, "formula {}: expected {}, {}", f.name, f.expected.as_deref().unwrap_or("-"), f.status)?;
    }
    Ok(())
}

pub fn place_json(t: &FieldTower, p: &Place) -> Value {
    match p {
        Place::Infinity => json!({ "kind": "infinity" }),
        Place::Rational { alpha, beta } => json!({
            "kind": "rational",
            "alpha": t.f2().fmt_elem(*alpha),
            "beta": t.f2().fmt_elem(*beta),
        }),
        Place::Degree3 { orbit } => {
            let f6 = t.f6();
            let pts: Vec<Vec<String>> = orbit.iter().map(|pt| pt.iter().map(|&x| f6.fmt_elem(x)).collect()).collect();
            json!({ "kind": "degree3", "orbit": pts })
        }
    }
}
