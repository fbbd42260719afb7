//! Line-oriented move scripts.
//!
//! ```text
//! crossflip I=1 anchor=0,v1,2
//! bistellar A=0,1 B=v0
//! shell F=0,1,2 A=0,1 R=2
//! inverse-shell F=0,1,2 A=0,1 R=2
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;

use crate::complex::{Coloring, Complex};
use crate::diamond::IndexSet;
use crate::moves::{apply_move, site_from_anchor, BistellarFlip, Move, MoveError};
use crate::vertex::{parse_vertex_list, Face, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Step {
        line: usize,
        #[source]
        source: MoveError,
    },
}

/// One parsed script line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    CrossFlip { indices: Vec<usize>, anchor: Vec<Vertex> },
    Bistellar { a: Face, b: Face },
    Shell { f: Face, a: Face, r: Face },
    InverseShell { f: Face, a: Face, r: Face },
}

fn fields(rest: &str, keys: &[&str]) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found {tok:?}"))?;
        if !keys.contains(&k) {
            return Err(format!("unknown key {k:?}"));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(format!("repeated key {k:?}"));
        }
    }
    if let Some(k) = keys.iter().find(|k| !out.contains_key(**k)) {
        return Err(format!("missing key {k:?}"));
    }
    Ok(out)
}

fn face(s: &str) -> Result<Face, String> {
    parse_vertex_list(s)
        .map(Face::new)
        .map_err(|e| e.to_string())
}

fn parse_line(text: &str) -> Result<Option<Step>, String> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let (cmd, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let step = match cmd {
        "crossflip" => {
            let m = fields(rest, &["I", "anchor"])?;
            let indices = m["I"]
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|e| format!("index {t:?}: {e}")))
                .collect::<Result<_, _>>()?;
            let anchor = parse_vertex_list(&m["anchor"]).map_err(|e| e.to_string())?;
            Step::CrossFlip { indices, anchor }
        }
        "bistellar" => {
            let m = fields(rest, &["A", "B"])?;
            Step::Bistellar {
                a: face(&m["A"])?,
                b: face(&m["B"])?,
            }
        }
        "shell" | "inverse-shell" => {
            let m = fields(rest, &["F", "A", "R"])?;
            let (f, a, r) = (face(&m["F"])?, face(&m["A"])?, face(&m["R"])?);
            if cmd == "shell" {
                Step::Shell { f, a, r }
            } else {
                Step::InverseShell { f, a, r }
            }
        }
        other => return Err(format!("unknown command {other:?}")),
    };
    Ok(Some(step))
}

/// Parse a whole script, keeping 1-based line numbers.
pub fn parse_script(text: &str) -> Result<Vec<(usize, Step)>, ScriptError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match parse_line(line) {
            Ok(Some(step)) => out.push((i + 1, step)),
            Ok(None) => {}
            Err(message) => return Err(ScriptError::Parse { line: i + 1, message }),
        }
    }
    Ok(out)
}

fn to_move(c: &Complex, kappa: Option<&Coloring>, step: &Step) -> Result<Move, MoveError> {
    Ok(match step {
        Step::CrossFlip { indices, anchor } => {
            let d = c.dim().max(0) as usize;
            let i = IndexSet::new(d, indices.iter().copied())?;
            let site = site_from_anchor(c, kappa, &i, anchor).ok_or_else(|| {
                MoveError::NotApplicable(format!("no induced {i} site at the given anchor"))
            })?;
            Move::CrossFlip(site)
        }
        Step::Bistellar { a, b } => Move::Bistellar(BistellarFlip {
            a: a.clone(),
            b: b.clone(),
        }),
        Step::Shell { f, a, r } => Move::Shell {
            f: f.clone(),
            a: a.clone(),
            r: r.clone(),
        },
        Step::InverseShell { f, a, r } => Move::InverseShell {
            f: f.clone(),
            a: a.clone(),
            r: r.clone(),
        },
    })
}

/// Apply the script top to bottom; the first failing line aborts.
pub fn run_script(
    c: &Complex,
    kappa: Option<&Coloring>,
    text: &str,
) -> Result<(Complex, Option<Coloring>), ScriptError> {
    let mut cur = c.clone();
    let mut col = kappa.cloned();
    for (line, step) in parse_script(text)? {
        let mv = to_move(&cur, col.as_ref(), &step).map_err(|source| ScriptError::Step { line, source })?;
        let (next, k) =
            apply_move(&cur, col.as_ref(), &mv).map_err(|source| ScriptError::Step { line, source })?;
        cur = next;
        col = k;
    }
    Ok((cur, col))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diamond::cross_polytope;
    use crate::iso::are_isomorphic;

    #[test]
    fn parses_all_commands() {
        let s = parse_script(
            "# demo\ncrossflip I=0,2 anchor=v0,1,2\n\nbistellar A=0,1 B=w0\nshell F=0,1,2 A=0,1 R=2\ninverse-shell F=0,1,2 A=0 R=1,2\n",
        )
        .unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0].0, 2);
        assert!(matches!(&s[0].1, Step::CrossFlip { indices, .. } if indices == &vec![0, 2]));
        assert_eq!(s[3].0, 6);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_script("shell F=0,1,2 A=0,1\n").unwrap_err();
        assert!(matches!(e, ScriptError::Parse { line: 1, .. }));
        let e = parse_script("\nfrobnicate X=1").unwrap_err();
        assert!(matches!(e, ScriptError::Parse { line: 2, .. }));
    }

    #[test]
    fn trivial_move_script() {
        let o = cross_polytope(2);
        let k = Coloring::by_index(&o).unwrap();
        let (out, col) = run_script(&o, Some(&k), "crossflip I=0 anchor=v0,1,2\n").unwrap();
        assert!(are_isomorphic(&out, &o, None).is_some());
        assert!(crate::complex::is_proper_coloring(&out, &col.unwrap(), 3));
    }

    #[test]
    fn failing_step_reports_line() {
        let o = cross_polytope(2);
        let e = run_script(&o, None, "bistellar A=0,1 B=2,v2\nbistellar A=0,1 B=2,v2\n").unwrap_err();
        assert!(matches!(e, ScriptError::Step { line: 2, .. }));
    }
}
