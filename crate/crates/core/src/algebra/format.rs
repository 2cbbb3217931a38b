//! The line-based `.qalg` text format.
//!
//! ```text
//! qalg 1
//! name mq2
//! gens 4
//! names a b c d
//! rel 4 1 : 1q^0 ; -1q^1+1q^-1 * 2 3
//! ```

use std::fmt::Write as _;

use super::spec::{AlgebraSpec, Relation};
use crate::error::{Error, Result};
use crate::ring::QCoeff;
use crate::syntax::Cursor;
use crate::tensor::{TensorElement, Word};

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '*')
}

fn perr(line: usize, column: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: msg.into(),
    }
}

fn parse_rel(body: &str, n_gens: usize, relaxed: bool) -> Result<(usize, usize, Relation)> {
    let mut cur = Cursor::new(body);
    let ci = cur.column();
    let i = cur.usize()?;
    let cj = cur.column();
    let j = cur.usize()?;
    if i > n_gens || i == 0 {
        return Err(Error::parse(ci, format!("generator {i} out of range 1..={n_gens}")));
    }
    if j >= i || j == 0 {
        return Err(Error::parse(cj, "relation indices must satisfy i > j >= 1"));
    }
    cur.expect(':')?;
    let cb = cur.column();
    let b = QCoeff::parse_from(&mut cur)?;
    let alpha = match b.as_monomial() {
        Some((r, e)) if r.is_one() => e,
        _ => return Err(Error::parse(cb, "commutation factor must be a single term 1q^<int>")),
    };
    let mut tail = TensorElement::zero();
    if cur.eat(';') && !cur.at_end() {
        loop {
            let c = QCoeff::parse_from(&mut cur)?;
            let mut letters = Vec::new();
            if cur.eat('*') {
                while cur.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                    let col = cur.column();
                    let a = cur.usize()?;
                    if a == 0 || a > n_gens {
                        return Err(Error::parse(col, format!("generator {a} out of range 1..={n_gens}")));
                    }
                    letters.push(a as u8);
                }
            }
            if letters.len() != 2 && !relaxed {
                return Err(cur.error("tail term must be '<coeff> * <a> <b>'"));
            }
            if letters.len() > 2 {
                return Err(cur.error("tail term has more than two letters"));
            }
            tail.add_term(Word::new(&letters), &c);
            if !cur.eat(',') {
                break;
            }
        }
    }
    cur.expect_end()?;
    Ok((i, j, Relation { alpha, tail }))
}

impl AlgebraSpec {
    /// Parses a homogeneous `.qalg` document.
    pub fn from_qalg(text: &str) -> Result<Self> {
        Self::parse_qalg(text, false)
    }

    /// Parses a `.qalg` document whose tails may also have degree 0 or 1.
    pub fn from_qalg_relaxed(text: &str) -> Result<Self> {
        Self::parse_qalg(text, true)
    }

    fn parse_qalg(text: &str, relaxed: bool) -> Result<Self> {
        let mut header = false;
        let mut name: Option<String> = None;
        let mut spec: Option<AlgebraSpec> = None;
        let mut last_line = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if trimmed.trim().is_empty() {
                continue;
            }
            let indent = content.len() - trimmed.len();
            let (kw, rest) = trimmed
                .split_once(char::is_whitespace)
                .unwrap_or((trimmed, ""));
            let rest_offset = indent + kw.len() + 1;
            let rest_t = rest.trim();
            if !header {
                if kw != "qalg" || rest_t != "1" {
                    return Err(perr(line, indent + 1, "expected header 'qalg 1'"));
                }
                header = true;
                continue;
            }
            match kw {
                "name" => {
                    if !is_identifier(rest_t) {
                        return Err(perr(line, rest_offset + 1, "invalid name"));
                    }
                    name = Some(rest_t.to_string());
                }
                "gens" => {
                    if spec.is_some() {
                        return Err(perr(line, indent + 1, "duplicate 'gens' line"));
                    }
                    let n: usize = rest_t
                        .parse()
                        .map_err(|_| perr(line, rest_offset + 1, "expected generator count"))?;
                    let mut s = AlgebraSpec::new(name.clone().unwrap_or_else(|| "unnamed".into()), n)
                        .map_err(|e| perr(line, rest_offset + 1, e.to_string()))?;
                    if relaxed {
                        s = s.relaxed();
                    }
                    spec = Some(s);
                }
                "names" => {
                    let s = spec
                        .as_mut()
                        .ok_or_else(|| perr(line, indent + 1, "'names' before 'gens'"))?;
                    let names: Vec<String> = rest_t.split_whitespace().map(String::from).collect();
                    if let Some(bad) = names.iter().find(|n| !is_identifier(n)) {
                        return Err(perr(line, rest_offset + 1, format!("invalid generator name '{bad}'")));
                    }
                    s.set_names(names)
                        .map_err(|e| perr(line, rest_offset + 1, e.to_string()))?;
                }
                "rel" => {
                    let s = spec
                        .as_mut()
                        .ok_or_else(|| perr(line, indent + 1, "'rel' before 'gens'"))?;
                    let (i, j, rel) = parse_rel(rest, s.n_gens(), relaxed)
                        .map_err(|e| e.at_line(line, rest_offset))?;
                    if s.relation(i, j).is_ok() {
                        return Err(perr(line, rest_offset + 1, format!("duplicate relation ({i}, {j})")));
                    }
                    s.set_relation(i, j, rel)
                        .map_err(|e| perr(line, rest_offset + 1, e.to_string()))?;
                }
                other => {
                    return Err(perr(line, indent + 1, format!("unknown keyword '{other}'")));
                }
            }
        }
        if !header {
            return Err(perr(last_line.max(1), 1, "missing header 'qalg 1'"));
        }
        let mut spec = spec.ok_or_else(|| perr(last_line, 1, "missing 'gens' line"))?;
        if let Some(n) = name {
            spec.set_name(n);
        }
        spec.ensure_complete()?;
        Ok(spec)
    }

    /// Canonical `.qalg` text; parsing it back yields an equal spec.
    pub fn to_qalg(&self) -> String {
        let mut out = String::new();
        writeln!(out, "qalg 1").unwrap();
        writeln!(out, "name {}", self.name()).unwrap();
        writeln!(out, "gens {}", self.n_gens()).unwrap();
        if let Some(names) = self.names() {
            writeln!(out, "names {}", names.join(" ")).unwrap();
        }
        for (i, j, rel) in self.relations() {
            write!(out, "rel {i} {j} : {} ;", QCoeff::q_pow(rel.alpha)).unwrap();
            for (k, (w, c)) in rel.tail.sorted_terms().into_iter().enumerate() {
                out.push_str(if k == 0 { " " } else { ", " });
                write!(out, "{c}").unwrap();
                if !w.is_empty() {
                    out.push_str(" *");
                    for l in w.letters() {
                        write!(out, " {l}").unwrap();
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}
