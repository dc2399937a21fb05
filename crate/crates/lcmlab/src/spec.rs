//! Group-spec strings such as `D:8 x C:4`, `pc:g81.pc` or
//! `catalog:16:9`.
//!
//! ```text
//! atom := FAMILY ":" INT | "pc:" PATH | "catalog:" INT ":" INT
//! expr := atom { "x" atom }
//! ```
//!
//! Whitespace between tokens is ignored. A `pc:` path runs to the next
//! whitespace character. `E` also accepts its order as `p^k`.

use std::fmt;
use std::path::{Path, PathBuf};

use lcmlab_core::constructors::{direct_product, family_group, pc_group, Family};
use lcmlab_core::cover::CatalogId;
use lcmlab_core::GroupTable;

use crate::error::{Error, Result};
use crate::pcfile::read_pc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Family(Family, u64),
    Pc(PathBuf),
    Catalog(CatalogId),
}

/// A direct product of atoms, evaluated left to right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub atoms: Vec<Atom>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Family(kind, n) => write!(f, "{}:{n}", kind.tag()),
            Atom::Pc(path) => write!(f, "pc:{}", path.display()),
            Atom::Catalog(id) => write!(f, "catalog:{}:{}", id.order, id.index),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected {c:?}"))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a family tag, \"pc\" or \"catalog\"");
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Ok(s)
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected an integer");
        }
        let s = &self.rest()[..len];
        match s.parse() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.err("integer too large"),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let start = self.pos;
        let tag = self.ident()?;
        self.expect(':')?;
        match tag {
            "pc" => {
                self.skip_ws();
                let len = self
                    .rest()
                    .find(char::is_whitespace)
                    .unwrap_or(self.rest().len());
                if len == 0 {
                    return self.err("expected a path");
                }
                let path = PathBuf::from(&self.rest()[..len]);
                self.pos += len;
                Ok(Atom::Pc(path))
            }
            "catalog" => {
                let order = self.int()?;
                self.expect(':')?;
                let index = self.int()?;
                match (u32::try_from(order), u32::try_from(index)) {
                    (Ok(order), Ok(index)) => Ok(Atom::Catalog(CatalogId { order, index })),
                    _ => self.err("catalog id out of range"),
                }
            }
            _ => {
                let Some(kind) = Family::from_tag(tag) else {
                    self.pos = start;
                    return self.err(format!("unknown family {tag:?}"));
                };
                let mut n = self.int()?;
                if kind == Family::Elementary && self.eat('^') {
                    let k = self.int()?;
                    n = u32::try_from(k)
                        .ok()
                        .and_then(|k| n.checked_pow(k))
                        .map_or_else(|| self.err("power too large"), Ok)?;
                }
                Ok(Atom::Family(kind, n))
            }
        }
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut p = Parser { text, pos: 0 };
    let mut atoms = vec![p.atom()?];
    loop {
        p.skip_ws();
        if p.rest().is_empty() {
            break;
        }
        if !p.eat('x') {
            return p.err("expected \"x\" or end of input");
        }
        atoms.push(p.atom()?);
    }
    Ok(GroupSpec { atoms })
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

/// Where `catalog:` atoms are resolved.
#[derive(Clone, Debug)]
pub struct BuildContext {
    pub catalog_dir: PathBuf,
}

impl Default for BuildContext {
    fn default() -> Self {
        BuildContext {
            catalog_dir: crate::catalog::bundled_catalog_dir(),
        }
    }
}

fn build_pc(path: &Path) -> Result<GroupTable> {
    let file = read_pc(path)?;
    pc_group(&file.presentation).map_err(|e| Error::group(path.display().to_string(), e))
}

pub fn build_atom(atom: &Atom, ctx: &BuildContext) -> Result<GroupTable> {
    let g = match atom {
        Atom::Family(kind, n) => family_group(*kind, *n).map_err(|e| Error::group(atom.to_string(), e))?,
        Atom::Pc(path) => build_pc(path)?,
        Atom::Catalog(id) => {
            let path = ctx
                .catalog_dir
                .join(id.order.to_string())
                .join(format!("{}.pc", id.index));
            if !path.exists() {
                return Err(Error::Catalog(format!("no catalog entry {id} under {}", ctx.catalog_dir.display())));
            }
            build_pc(&path)?
        }
    };
    Ok(g.with_label(atom.to_string()))
}

/// Builds the left-associated direct product of the atoms.
pub fn build(spec: &GroupSpec, ctx: &BuildContext) -> Result<GroupTable> {
    let mut acc = build_atom(&spec.atoms[0], ctx)?;
    for atom in &spec.atoms[1..] {
        let g = build_atom(atom, ctx)?;
        acc = direct_product(&acc, &g).map_err(|e| Error::group(spec.to_string(), e))?;
    }
    Ok(acc.with_label(spec.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let ctx = BuildContext::default();
        let g = build(&parse_group_spec("D:8 x C:4").unwrap(), &ctx).unwrap();
        assert_eq!(g.order(), 32);
        let err = build(&parse_group_spec("Q:12").unwrap(), &ctx).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!(build(&parse_group_spec("C:1").unwrap(), &ctx).unwrap().order(), 1);
    }

    #[test]
    fn whitespace_and_canonical_form() {
        for (text, canon) in [
            ("D:8xC:4", "D:8 x C:4"),
            ("  QD : 16   x  E:2^3 ", "QD:16 x E:8"),
            ("catalog:16:9", "catalog:16:9"),
            ("pc:data/g81.pc x C:3", "pc:data/g81.pc x C:3"),
            ("Heis:3 x S:3 x A:4", "Heis:3 x S:3 x A:4"),
        ] {
            let spec = parse_group_spec(text).unwrap();
            assert_eq!(spec.to_string(), canon);
            assert_eq!(parse_group_spec(canon).unwrap(), spec);
        }
    }

    #[test]
    fn syntax_errors() {
        for (text, pos) in [("", 0), ("D:", 2), ("Z:3", 0), ("C:3 y C:2", 4), ("C:3 x", 5), ("catalog:16", 10)] {
            match parse_group_spec(text) {
                Err(Error::Syntax { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
