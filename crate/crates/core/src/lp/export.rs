//! CPLEX-LP and MPS text formats, model re-import and solution import.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::model::{Bound, LpModel, Sense, Tag, Variant, Q};
use super::simplex::Solution;
use crate::error::{parse_err, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    LpText,
    Mps,
}

const TERMS_PER_LINE: usize = 6;

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn export_model(model: &LpModel, format: Format) -> String {
    match format {
        Format::LpText => export_lp(model),
        Format::Mps => export_mps(model),
    }
}

fn write_terms(out: &mut String, model: &LpModel, terms: &[(usize, Q)]) {
    for (k, (v, c)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if c.is_negative() { '-' } else { '+' };
        let _ = write!(out, " {sign} {} {}", num(c.abs().to_f64().unwrap()), model.variables()[*v].name);
    }
}

fn export_lp(model: &LpModel) -> String {
    let mut out = format!("\\ variant {}\n\\ n {}\nMaximize\n obj:", model.variant, model.n);
    write_terms(&mut out, model, model.objective());
    out.push_str("\nSubject To\n");
    for c in model.constraints() {
        let _ = write!(out, " {}:", c.tag.row_name());
        write_terms(&mut out, model, &c.terms);
        let _ = writeln!(out, " {} {}", c.sense.symbol(), num(c.rhs.to_f64().unwrap()));
    }
    out.push_str("Bounds\n");
    for v in model.variables() {
        match v.bound {
            Bound::Free => {
                let _ = writeln!(out, " {} free", v.name);
            }
            Bound::NonNeg => {
                let _ = writeln!(out, " {} >= 0", v.name);
            }
        }
    }
    out.push_str("End\n");
    out
}

fn col_code(v: usize) -> String {
    format!("C{:07}", v + 1)
}

fn row_code(r: usize) -> String {
    format!("R{:07}", r + 1)
}

fn export_mps(model: &LpModel) -> String {
    let mut out = format!("* variant {}\n* n {}\n", model.variant, model.n);
    for (v, var) in model.variables().iter().enumerate() {
        let _ = writeln!(out, "* col {} {}", col_code(v), var.name);
    }
    for (r, c) in model.constraints().iter().enumerate() {
        let _ = writeln!(out, "* row {} {}", row_code(r), c.tag.row_name());
    }
    let _ = writeln!(out, "NAME          {}", format!("{}{}", model.variant, model.n).to_uppercase());
    out.push_str("OBJSENSE\n    MAX\nROWS\n N  OBJ\n");
    for (r, c) in model.constraints().iter().enumerate() {
        let kind = match c.sense {
            Sense::Le => "L",
            Sense::Ge => "G",
            Sense::Eq => "E",
        };
        let _ = writeln!(out, " {kind}  {}", row_code(r));
    }
    let mut columns: Vec<Vec<(String, f64)>> = vec![Vec::new(); model.variables().len()];
    for (v, c) in model.objective() {
        columns[*v].push(("OBJ".into(), c.to_f64().unwrap()));
    }
    for (r, c) in model.constraints().iter().enumerate() {
        for (v, a) in &c.terms {
            columns[*v].push((row_code(r), a.to_f64().unwrap()));
        }
    }
    out.push_str("COLUMNS\n");
    for (v, entries) in columns.iter().enumerate() {
        for (row, a) in entries {
            let _ = writeln!(out, "    {:<8}  {:<8}  {}", col_code(v), row, num(*a));
        }
    }
    out.push_str("RHS\n");
    for (r, c) in model.constraints().iter().enumerate() {
        if !c.rhs.is_zero() {
            let _ = writeln!(out, "    {:<8}  {:<8}  {}", "RHS", row_code(r), num(c.rhs.to_f64().unwrap()));
        }
    }
    out.push_str("BOUNDS\n");
    for (v, var) in model.variables().iter().enumerate() {
        if var.bound == Bound::Free {
            let _ = writeln!(out, " FR {:<8}  {}", "BND", col_code(v));
        }
    }
    out.push_str("ENDATA\n");
    out
}

/// Simplest fraction whose nearest double is exactly `x`.
pub fn recover_rational(x: f64) -> Option<Q> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = x.abs();
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            return None;
        }
        let a = a as i128;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 > i64::MAX as i128 / 4 || p2 > i64::MAX as i128 / 4 {
            return None;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if p1 as f64 / q1 as f64 == x.abs() {
            let v = Q::new(p1 as i64, q1 as i64);
            return Some(if x < 0.0 { -v } else { v });
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn parse_q(tok: &str, line: usize) -> Result<Q> {
    let x: f64 = tok.parse().map_err(|_| parse_err(line, format!("bad number {tok}")))?;
    recover_rational(x).ok_or_else(|| parse_err(line, format!("no small rational for {tok}")))
}

/// Reads a model written by [`export_model`] in either format.
pub fn parse_model(text: &str) -> Result<LpModel> {
    let is_mps = text.lines().any(|l| l.starts_with("ROWS") || l.starts_with("NAME"));
    if is_mps {
        parse_mps(text)
    } else {
        parse_lp(text)
    }
}

fn header(text: &str, comment: &str) -> (Variant, usize) {
    let mut variant = Variant::Custom;
    let mut n = 0;
    for l in text.lines() {
        if let Some(rest) = l.strip_prefix(comment) {
            let mut it = rest.split_whitespace();
            match (it.next(), it.next()) {
                (Some("variant"), Some(v)) => variant = v.parse().unwrap_or(Variant::Custom),
                (Some("n"), Some(v)) => n = v.parse().unwrap_or(0),
                _ => {}
            }
        }
    }
    (variant, n)
}

struct Statement {
    line: usize,
    name: String,
    body: Vec<String>,
}

fn parse_lp(text: &str) -> Result<LpModel> {
    let (variant, n) = header(text, "\\");
    #[derive(PartialEq)]
    enum Section {
        None,
        Objective,
        Rows,
        Bounds,
    }
    let mut section = Section::None;
    let mut objective: Option<Statement> = None;
    let mut rows: Vec<Statement> = Vec::new();
    let mut bounds: Vec<(usize, String, Bound)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split('\\').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        match l.to_ascii_lowercase().as_str() {
            "maximize" | "maximum" | "max" => {
                section = Section::Objective;
                continue;
            }
            "subject to" | "st" | "s.t." => {
                section = Section::Rows;
                continue;
            }
            "bounds" => {
                section = Section::Bounds;
                continue;
            }
            "end" => break,
            _ => {}
        }
        match section {
            Section::None => return Err(parse_err(line, "content before Maximize")),
            Section::Objective | Section::Rows => {
                let (name, rest) = match l.split_once(':') {
                    Some((a, b)) => (Some(a.trim().to_string()), b),
                    None => (None, l),
                };
                let target = if section == Section::Objective { None } else { Some(&mut rows) };
                let toks = rest.split_whitespace().map(String::from);
                match (name, target) {
                    (Some(name), Some(rows)) => rows.push(Statement { line, name, body: toks.collect() }),
                    (Some(name), None) => objective = Some(Statement { line, name, body: toks.collect() }),
                    (None, Some(rows)) => {
                        rows.last_mut().ok_or_else(|| parse_err(line, "continuation without a row"))?.body.extend(toks)
                    }
                    (None, None) => {
                        objective.as_mut().ok_or_else(|| parse_err(line, "continuation without objective"))?.body.extend(toks)
                    }
                }
            }
            Section::Bounds => {
                let toks: Vec<&str> = l.split_whitespace().collect();
                let bound = match toks.as_slice() {
                    [_, "free"] => Bound::Free,
                    [_, ">=", z] if z.parse::<f64>() == Ok(0.0) => Bound::NonNeg,
                    _ => return Err(parse_err(line, format!("unsupported bound {l}"))),
                };
                bounds.push((line, toks[0].to_string(), bound));
            }
        }
    }
    let mut model = LpModel::new(variant, n);
    for (_, name, bound) in &bounds {
        model.var(name, *bound);
    }
    let lookup = |model: &LpModel, name: &str, line: usize| {
        model.id(name).ok_or_else(|| parse_err(line, format!("variable {name} missing from Bounds")))
    };
    if let Some(obj) = objective {
        let terms = parse_terms(&obj.body, obj.line)?;
        let ids = terms.into_iter().map(|(c, name)| lookup(&model, &name, obj.line).map(|v| (v, c))).collect::<Result<Vec<_>>>()?;
        model.set_objective(ids);
    }
    for row in rows {
        let pos = row
            .body
            .iter()
            .position(|t| t == "<=" || t == ">=" || t == "=")
            .ok_or_else(|| parse_err(row.line, "row without relation"))?;
        let sense = match row.body[pos].as_str() {
            "<=" => Sense::Le,
            ">=" => Sense::Ge,
            _ => Sense::Eq,
        };
        let rhs_tok = row.body.get(pos + 1).ok_or_else(|| parse_err(row.line, "missing right-hand side"))?;
        let rhs = parse_q(rhs_tok, row.line)?;
        let terms = parse_terms(&row.body[..pos], row.line)?;
        let ids = terms.into_iter().map(|(c, name)| lookup(&model, &name, row.line).map(|v| (v, c))).collect::<Result<Vec<_>>>()?;
        model.add(Tag::from_row_name(&row.name), ids, sense, rhs);
    }
    Ok(model)
}

/// `[+|-] [coef] name ...`.
fn parse_terms(toks: &[String], line: usize) -> Result<Vec<(Q, String)>> {
    let mut out = Vec::new();
    let mut sign = Q::from_integer(1);
    let mut coef: Option<Q> = None;
    for t in toks {
        match t.as_str() {
            "+" => sign = Q::from_integer(1),
            "-" => sign = Q::from_integer(-1),
            _ if t.parse::<f64>().is_ok() => coef = Some(parse_q(t, line)?),
            name => {
                out.push((sign * coef.take().unwrap_or(Q::from_integer(1)), name.to_string()));
                sign = Q::from_integer(1);
            }
        }
    }
    Ok(out)
}

fn parse_mps(text: &str) -> Result<LpModel> {
    let (variant, n) = header(text, "*");
    let mut col_names: BTreeMap<String, String> = BTreeMap::new();
    let mut row_names: BTreeMap<String, String> = BTreeMap::new();
    for l in text.lines() {
        let toks: Vec<&str> = l.split_whitespace().collect();
        match toks.as_slice() {
            ["*", "col", code, name] => {
                col_names.insert(code.to_string(), name.to_string());
            }
            ["*", "row", code, name] => {
                row_names.insert(code.to_string(), name.to_string());
            }
            _ => {}
        }
    }
    let mut section = "";
    let mut rows: Vec<(String, Sense)> = Vec::new();
    let mut row_index: BTreeMap<String, usize> = BTreeMap::new();
    let mut entries: Vec<(String, String, Q)> = Vec::new();
    let mut col_order: Vec<String> = Vec::new();
    let mut rhs: BTreeMap<String, Q> = BTreeMap::new();
    let mut free: Vec<String> = Vec::new();
    let mut objsense_max = false;
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        if l.starts_with('*') || l.trim().is_empty() {
            continue;
        }
        if !l.starts_with(' ') {
            section = l.split_whitespace().next().unwrap_or("");
            if section == "ENDATA" {
                break;
            }
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        match (section, toks.as_slice()) {
            ("OBJSENSE", [s]) => objsense_max = s.eq_ignore_ascii_case("MAX"),
            ("ROWS", ["N", _]) => {}
            ("ROWS", [kind, name]) => {
                let sense = match *kind {
                    "L" => Sense::Le,
                    "G" => Sense::Ge,
                    "E" => Sense::Eq,
                    _ => return Err(parse_err(line, format!("unknown row type {kind}"))),
                };
                row_index.insert(name.to_string(), rows.len());
                rows.push((name.to_string(), sense));
            }
            ("COLUMNS", [col, row, val]) => {
                if col_order.last().is_none_or(|c| c != col) {
                    col_order.push(col.to_string());
                }
                entries.push((col.to_string(), row.to_string(), parse_q(val, line)?));
            }
            ("RHS", [_, row, val]) => {
                rhs.insert(row.to_string(), parse_q(val, line)?);
            }
            ("BOUNDS", ["FR", _, col]) => free.push(col.to_string()),
            _ => return Err(parse_err(line, format!("unsupported MPS line in {section}: {l}"))),
        }
    }
    if !objsense_max {
        return Err(Error::InvalidParameter("MPS import expects OBJSENSE MAX".into()));
    }
    let display = |m: &BTreeMap<String, String>, code: &str| m.get(code).cloned().unwrap_or_else(|| code.to_string());
    let mut model = LpModel::new(variant, n);
    for code in &col_order {
        let bound = if free.contains(code) { Bound::Free } else { Bound::NonNeg };
        model.var(&display(&col_names, code), bound);
    }
    let mut row_terms: Vec<Vec<(usize, Q)>> = vec![Vec::new(); rows.len()];
    let mut objective = Vec::new();
    for (col, row, val) in entries {
        let v = model.id(&display(&col_names, &col)).unwrap();
        if row == "OBJ" {
            objective.push((v, val));
        } else {
            let r = *row_index.get(&row).ok_or_else(|| Error::InvalidParameter(format!("unknown row {row}")))?;
            row_terms[r].push((v, val));
        }
    }
    model.set_objective(objective);
    for ((code, sense), terms) in rows.iter().zip(row_terms) {
        let tag = Tag::from_row_name(&display(&row_names, code));
        model.add(tag, terms, *sense, rhs.get(code).copied().unwrap_or_else(Q::zero));
    }
    Ok(model)
}

/// Parses `name value` lines; `#` starts a comment.
pub fn parse_solution(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.split('#').next().unwrap().trim();
        if l.is_empty() {
            continue;
        }
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [name, value] = toks.as_slice() else {
            return Err(parse_err(i + 1, "expected `name value`"));
        };
        let x: f64 = value.parse().map_err(|_| parse_err(i + 1, format!("bad value {value}")))?;
        out.insert(name.to_string(), x);
    }
    Ok(out)
}

/// Writes a solution in the format read by [`parse_solution`].
pub fn write_solution(solution: &Solution) -> String {
    let mut out = format!("# status {:?}\n# objective {}\n", solution.status, num(solution.objective_value));
    for (name, x) in &solution.assignment {
        let _ = writeln!(out, "{name} {}", num(*x));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::factory::{build_franking_lp, build_tightened_ranking_lp};

    #[test]
    fn rational_recovery() {
        for (a, b) in [(1, 3), (-7, 12), (0, 1), (5, 1), (1, 144), (-143, 1440)] {
            let x = Q::new(a, b);
            assert_eq!(recover_rational(x.to_f64().unwrap()), Some(x));
        }
    }

    #[test]
    fn round_trips() {
        for m in [build_franking_lp(2).unwrap(), build_tightened_ranking_lp(2).unwrap()] {
            for f in [Format::LpText, Format::Mps] {
                let text = export_model(&m, f);
                assert_eq!(parse_model(&text).unwrap(), m, "{f:?}");
                assert_eq!(export_model(&m, f), text);
            }
        }
    }

    #[test]
    fn solution_lines() {
        let s = parse_solution("# c\nx 1.5\n\ny -2 # tail\n").unwrap();
        assert_eq!(s["x"], 1.5);
        assert_eq!(s["y"], -2.0);
        assert!(matches!(parse_solution("x"), Err(Error::Parse { line: 1, .. })));
    }
}
