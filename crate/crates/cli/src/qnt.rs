//! The `.qnt` text format and the line-oriented topology format.
//!
//! ```text
//! quantale c3l
//! elements: bot a top
//! order: bot<a a<top
//! mult: a: a top
//! mult: top: a top
//! unit: none
//! involution: none
//! ```
//!
//! Rows and columns of `mult` skip the bottom element; an explicit bottom row or column is
//! accepted and must be all bottom. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use qlab_core::topology::QTopology;
use qlab_core::{Elem, FiniteLattice, Quantale};

use crate::error::CliError;

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

type InvolutionLine = (usize, Option<Vec<(String, String)>>);

#[derive(Default)]
struct Draft {
    name: Option<String>,
    elements: Option<(usize, Vec<String>)>,
    order: Vec<(usize, String, String)>,
    rows: Vec<(usize, String, Vec<String>)>,
    unit: Option<(usize, Option<String>)>,
    involution: Option<InvolutionLine>,
}

/// Parses `.qnt` text, reporting the first problem with its line number.
pub fn parse(text: &str, max_elements: usize) -> Result<Quantale, CliError> {
    let mut d = Draft::default();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("quantale") {
            let name = rest.trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(parse_err(ln, "expected `quantale <name>`"));
            }
            d.name = Some(name.into());
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(parse_err(ln, format!("unrecognized line `{line}`")));
        };
        let value = value.trim();
        match key.trim() {
            "elements" => {
                if d.elements.is_some() {
                    return Err(parse_err(ln, "duplicate `elements`"));
                }
                let names: Vec<String> = value.split_whitespace().map(String::from).collect();
                if names.len() > max_elements {
                    return Err(parse_err(ln, format!("{} elements exceed --max-elements {max_elements}", names.len())));
                }
                d.elements = Some((ln, names));
            }
            "order" => {
                for pair in value.split_whitespace() {
                    let (a, b) = pair.split_once('<').ok_or_else(|| parse_err(ln, format!("expected `a<b`, found `{pair}`")))?;
                    d.order.push((ln, a.into(), b.into()));
                }
            }
            "mult" => {
                let (row, vals) = value.split_once(':').ok_or_else(|| parse_err(ln, "expected `mult: <row>: v1 v2 ...`"))?;
                d.rows.push((ln, row.trim().into(), vals.split_whitespace().map(String::from).collect()));
            }
            "unit" => d.unit = Some((ln, (value != "none").then(|| value.to_string()))),
            "involution" => {
                let map = if value == "none" {
                    None
                } else {
                    let pairs = value
                        .split_whitespace()
                        .map(|p| p.split_once("->").map(|(a, b)| (a.to_string(), b.to_string())).ok_or_else(|| parse_err(ln, format!("expected `a->b`, found `{p}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    Some(pairs)
                };
                d.involution = Some((ln, map));
            }
            other => return Err(parse_err(ln, format!("unknown key `{other}`"))),
        }
    }
    build(d, last)
}

fn build(d: Draft, last: usize) -> Result<Quantale, CliError> {
    let name = d.name.ok_or_else(|| parse_err(1, "missing `quantale <name>`"))?;
    let (eln, names) = d.elements.ok_or_else(|| parse_err(last, "missing `elements:`"))?;
    let order: Vec<(String, String)> = d.order.iter().map(|(_, a, b)| (a.clone(), b.clone())).collect();
    let order_line = d.order.first().map_or(eln, |o| o.0);
    let lattice = FiniteLattice::from_pairs(&names, &order).map_err(|e| parse_err(order_line, e.to_string()))?;
    let n = names.len();
    let bot = lattice.bottom();
    let idx = |ln: usize, s: &str| lattice.index(s).map_err(|_| parse_err(ln, format!("unknown element `{s}`")));
    let mut mult = vec![bot; n * n];
    let mut seen = vec![false; n];
    seen[bot] = true;
    for (ln, row, vals) in &d.rows {
        let r = idx(*ln, row)?;
        let cols: Vec<Elem> = match vals.len() {
            k if k == n => (0..n).collect(),
            k if k + 1 == n => (0..n).filter(|&c| c != bot).collect(),
            k => return Err(parse_err(*ln, format!("row `{row}` has {k} values, expected {}", n - 1))),
        };
        for (&c, v) in cols.iter().zip(vals) {
            let v = idx(*ln, v)?;
            if (r == bot || c == bot) && v != bot {
                return Err(parse_err(*ln, format!("{row}*{} must be {}", names[c], names[bot])));
            }
            mult[r * n + c] = v;
        }
        if std::mem::replace(&mut seen[r], true) && r != bot {
            return Err(parse_err(*ln, format!("duplicate row `{row}`")));
        }
    }
    if let Some(r) = seen.iter().position(|s| !s) {
        return Err(parse_err(last, format!("missing mult row `{}`", names[r])));
    }
    let unit = match &d.unit {
        Some((ln, Some(u))) => Some(idx(*ln, u)?),
        _ => None,
    };
    let involution = match &d.involution {
        Some((ln, Some(pairs))) => {
            let mut inv: Vec<Elem> = (0..n).collect();
            for (a, b) in pairs {
                inv[idx(*ln, a)?] = idx(*ln, b)?;
            }
            Some(inv)
        }
        _ => None,
    };
    let line_of = |e: &qlab_core::Error| match e {
        qlab_core::Error::BadUnit(_) => d.unit.as_ref().map_or(last, |u| u.0),
        qlab_core::Error::BadInvolution(..) => d.involution.as_ref().map_or(last, |u| u.0),
        _ => d.rows.first().map_or(last, |r| r.0),
    };
    Quantale::new(name, lattice, mult, unit, involution).map_err(|e| parse_err(line_of(&e), e.to_string()))
}

/// Canonical `.qnt` text; [`parse`] reads it back to the same quantale.
pub fn export(q: &Quantale) -> String {
    let l = q.lattice();
    let nm = |a: Elem| q.elem_name(a);
    let bot = q.bottom();
    let mut s = String::new();
    writeln!(s, "quantale {}", q.name()).unwrap();
    writeln!(s, "elements: {}", l.names().join(" ")).unwrap();
    let edges: Vec<String> = l.hasse().into_iter().map(|(a, b)| format!("{}<{}", nm(a), nm(b))).collect();
    writeln!(s, "order: {}", edges.join(" ")).unwrap();
    for r in q.elements().filter(|&r| r != bot) {
        let vals: Vec<&str> = q.elements().filter(|&c| c != bot).map(|c| nm(q.mul(r, c))).collect();
        writeln!(s, "mult: {}: {}", nm(r), vals.join(" ")).unwrap();
    }
    writeln!(s, "unit: {}", q.unit().map_or("none", nm)).unwrap();
    match q.involution() {
        Some(inv) => {
            let pairs: Vec<String> = q.elements().map(|a| format!("{}->{}", nm(a), nm(inv[a]))).collect();
            writeln!(s, "involution: {}", pairs.join(" ")).unwrap();
        }
        None => writeln!(s, "involution: none").unwrap(),
    }
    s
}

/// One open per line, values by element name in the order of the points.
pub fn export_topology(name: &str, t: &QTopology) -> String {
    let a = t.ambient();
    let mut s = String::new();
    writeln!(s, "topology {name}").unwrap();
    writeln!(s, "ambient {}", a.name()).unwrap();
    writeln!(s, "points: {}", t.points().join(" ")).unwrap();
    for f in t.opens() {
        let vals: Vec<&str> = f.iter().map(|&v| a.elem_name(v)).collect();
        writeln!(s, "{}", vals.join(" ")).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qlab_core::catalog;

    #[test]
    fn catalog_round_trips() {
        for name in catalog::NAMES {
            let q = catalog::catalog(name).unwrap();
            let text = export(&q);
            let back = parse(&text, 64).unwrap();
            assert_eq!(back, q, "{name}");
            assert_eq!(export(&back), text, "{name}");
        }
    }

    #[test]
    fn explicit_bottom_row_is_accepted() {
        let text = "quantale c3l\nelements: bot a top\norder: bot<a a<top\nmult: bot: bot bot bot\nmult: a: a top\nmult: top: a top\n";
        assert_eq!(parse(text, 64).unwrap(), catalog::c3l());
    }

    #[test]
    fn diagnostics_carry_lines() {
        let bad = "quantale x\nelements: bot a b top\norder: bot<a bot<b a<top b<top\nmult: a: a bot a\nmult: b: top b top\nmult: top: top top top\n";
        match parse(bad, 64).unwrap_err() {
            CliError::Parse { line, message } => {
                assert_eq!(line, 4);
                assert!(message.contains("associative"), "{message}");
            }
            e => panic!("{e}"),
        }
        let unknown = "quantale x\nelements: bot top\norder: bot<top\nmult: top: nope\n";
        assert!(matches!(parse(unknown, 64), Err(CliError::Parse { line: 4, .. })));
        assert!(matches!(parse("elements: a\n", 64), Err(CliError::Parse { line: 1, .. })));
        let big = "quantale x\nelements: a b c\n";
        assert!(parse(big, 2).unwrap_err().to_string().contains("max-elements"));
    }
}
