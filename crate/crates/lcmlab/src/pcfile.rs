//! The line-oriented pc-presentation text format.
//!
//! ```text
//! pcgroup
//! ngens 4
//! o 1 3
//! o 2 3
//! o 3 3
//! o 4 3
//! c 2 1 : g2^1 g3^1
//! c 3 1 : g3^1 g4^1
//! meta xref 81.7
//! ```
//!
//! Generators are numbered from 1. `p <i> : <word>` gives `g_i^{m_i}` and
//! `c <j> <i> : <word>` gives `g_j` conjugated by `g_i`; omitted relations
//! are trivial. `#` starts a comment.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use lcmlab_core::constructors::{PcPresentation, Word};

use crate::error::{Error, Result};

/// A parsed pc file: the presentation plus its `meta` lines in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcFile {
    pub presentation: PcPresentation,
    pub meta: Vec<(String, String)>,
}

impl PcFile {
    pub fn new(presentation: PcPresentation) -> Self {
        PcFile {
            presentation,
            meta: Vec::new(),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

struct LineError(usize, String);

fn parse_index(tok: &str, ngens: usize, line: usize) -> Result<usize, LineError> {
    let i: usize = tok
        .parse()
        .map_err(|_| LineError(line, format!("expected a generator number, found {tok:?}")))?;
    if i == 0 || i > ngens {
        return Err(LineError(line, format!("generator {i} outside 1..={ngens}")));
    }
    Ok(i - 1)
}

fn parse_word(tokens: &[&str], ngens: usize, line: usize) -> Result<Word, LineError> {
    if tokens == ["1"] {
        return Ok(Vec::new());
    }
    if tokens.is_empty() {
        return Err(LineError(line, "missing word after ':'".into()));
    }
    let mut word = Vec::new();
    for tok in tokens {
        let body = tok
            .strip_prefix('g')
            .ok_or_else(|| LineError(line, format!("bad word token {tok:?}")))?;
        let (g, e) = match body.split_once('^') {
            Some((g, e)) => (g, e),
            None => (body, "1"),
        };
        let g = parse_index(g, ngens, line)?;
        let e: u32 = e
            .parse()
            .map_err(|_| LineError(line, format!("bad exponent in {tok:?}")))?;
        if let Some(&(last, _)) = word.last() {
            if g <= last {
                return Err(LineError(line, "generators in a word must increase".into()));
            }
        }
        word.push((g, e));
    }
    Ok(word)
}

fn parse_inner(text: &str) -> Result<PcFile, LineError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "pcgroup")) => {}
        Some((n, other)) => return Err(LineError(n, format!("expected \"pcgroup\", found {other:?}"))),
        None => return Err(LineError(1, "empty file".into())),
    }
    let ngens = match lines.next() {
        Some((n, l)) => {
            let rest = l
                .strip_prefix("ngens")
                .ok_or_else(|| LineError(n, "expected \"ngens <n>\"".into()))?;
            rest.trim()
                .parse::<usize>()
                .map_err(|_| LineError(n, "bad generator count".into()))?
        }
        None => return Err(LineError(1, "missing ngens line".into())),
    };

    let mut orders: Vec<Option<u32>> = vec![None; ngens];
    let mut powers: Vec<(usize, usize, Word)> = Vec::new();
    let mut conjugates: Vec<(usize, usize, usize, Word)> = Vec::new();
    let mut meta = Vec::new();

    for (n, l) in lines {
        if let Some(rest) = l.strip_prefix("meta ") {
            let rest = rest.trim_start();
            let (key, value) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            meta.push((key.to_string(), value.trim().to_string()));
            continue;
        }
        let (head, word) = match l.split_once(':') {
            Some((h, w)) => (h, Some(w)),
            None => (l, None),
        };
        let toks: Vec<&str> = head.split_whitespace().collect();
        let word_toks: Vec<&str> = word.map(|w| w.split_whitespace().collect()).unwrap_or_default();
        match (toks.as_slice(), word) {
            (["o", i, m], None) => {
                let i = parse_index(i, ngens, n)?;
                let m: u32 = m
                    .parse()
                    .map_err(|_| LineError(n, format!("bad relative order {m:?}")))?;
                if orders[i].replace(m).is_some() {
                    return Err(LineError(n, format!("relative order of g{} given twice", i + 1)));
                }
            }
            (["p", i], Some(_)) => {
                let i = parse_index(i, ngens, n)?;
                powers.push((n, i, parse_word(&word_toks, ngens, n)?));
            }
            (["c", j, i], Some(_)) => {
                let j = parse_index(j, ngens, n)?;
                let i = parse_index(i, ngens, n)?;
                conjugates.push((n, j, i, parse_word(&word_toks, ngens, n)?));
            }
            _ => return Err(LineError(n, format!("unrecognised line {l:?}"))),
        }
    }

    let orders: Vec<u32> = orders
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| LineError(0, format!("missing relative order for g{}", i + 1))))
        .collect::<Result<_, _>>()?;
    let mut pres = PcPresentation::new(orders).map_err(|e| LineError(0, e.to_string()))?;
    for (n, i, w) in powers {
        pres.set_power(i, w).map_err(|e| LineError(n, e.to_string()))?;
    }
    for (n, j, i, w) in conjugates {
        pres.set_conjugate(j, i, w).map_err(|e| LineError(n, e.to_string()))?;
    }
    Ok(PcFile {
        presentation: pres,
        meta,
    })
}

/// Parses pc text; `path` is only used in error messages.
pub fn parse_pc(text: &str, path: &Path) -> Result<PcFile> {
    parse_inner(text).map_err(|LineError(line, message)| Error::Format {
        path: path.to_path_buf(),
        line,
        message,
    })
}

pub fn read_pc(path: &Path) -> Result<PcFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_pc(&text, path)
}

fn write_word(out: &mut String, word: &[(usize, u32)]) {
    if word.is_empty() {
        out.push('1');
        return;
    }
    for (k, &(g, e)) in word.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "g{}^{}", g + 1, e);
    }
}

/// Canonical text: orders, then non-trivial powers, then non-trivial
/// conjugates ordered by `(i, j)`, then meta lines.
pub fn print_pc(file: &PcFile) -> String {
    let p = &file.presentation;
    let mut out = String::from("pcgroup\n");
    let _ = writeln!(out, "ngens {}", p.ngens());
    for (i, m) in p.relative_orders().iter().enumerate() {
        let _ = writeln!(out, "o {} {}", i + 1, m);
    }
    for i in 0..p.ngens() {
        if !p.power(i).is_empty() {
            let _ = write!(out, "p {} : ", i + 1);
            write_word(&mut out, p.power(i));
            out.push('\n');
        }
    }
    let mut conj: Vec<(&(usize, usize), &Word)> = p.conjugates().iter().collect();
    conj.sort_by_key(|((j, i), _)| (*i, *j));
    for ((j, i), w) in conj {
        let _ = write!(out, "c {} {} : ", j + 1, i + 1);
        write_word(&mut out, w);
        out.push('\n');
    }
    for (k, v) in &file.meta {
        let _ = writeln!(out, "meta {k} {v}");
    }
    out
}

pub fn write_pc(path: &Path, file: &PcFile) -> Result<()> {
    std::fs::write(path, print_pc(file)).map_err(|e| Error::io(PathBuf::from(path), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcmlab_core::constructors::pc_group;

    const G81: &str = "pcgroup\nngens 4\no 1 3\no 2 3\no 3 3\no 4 3\n# b^a = bc, c^a = cd\nc 2 1 : g2^1 g3^1\nc 3 1 : g3^1 g4^1\nmeta xref 81.7\nmeta name C3^2:C2\n";

    #[test]
    fn parse_and_compile() {
        let f = parse_pc(G81, Path::new("g81.pc")).unwrap();
        assert_eq!(f.meta("xref"), Some("81.7"));
        assert_eq!(f.meta("name"), Some("C3^2:C2"));
        let g = pc_group(&f.presentation).unwrap();
        assert_eq!(g.order(), 81);
        assert_eq!(g.max_element_order(), 9);
    }

    #[test]
    fn round_trip() {
        let f = parse_pc(G81, Path::new("g81.pc")).unwrap();
        let text = print_pc(&f);
        assert_eq!(text, G81.replace("# b^a = bc, c^a = cd\n", ""));
        assert_eq!(parse_pc(&text, Path::new("x")).unwrap(), f);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("pcgroup\nngens 1\no 1 4\n", 0),
            ("pcgroup\nngens 2\no 1 2\no 2 2\nc 1 2 : g2^1\n", 5),
            ("pcgroup\nngens 2\no 1 2\no 2 2\np 1 : g3^1\n", 5),
            ("pcgroup\nngens 2\no 1 2\no 2 2\nq 1\n", 5),
            ("pcgroup\nngens 2\no 1 2\n", 0),
        ];
        for (text, line) in cases {
            match parse_pc(text, Path::new("t.pc")) {
                Err(Error::Format { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
