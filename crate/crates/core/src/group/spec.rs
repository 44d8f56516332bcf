//! Group specifications and their text grammar.
//!
//! Grammar: `A<n> | B<n> | D<n> | I2(<m>) | S<n> | G(<r>,<p>,<n>) | file:<path>`,
//! with products joined by `×` (or `*`). Aliases normalize: `A3` = `S4`,
//! `B3` = `G(2,1,3)`, `D4` = `G(2,2,4)`, `I2(m)` = `G(m,m,2)`. Canonical
//! printed forms are `S<n>`, `G(r,p,n)`, and `file:<path>`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One irreducible-family factor of a group specification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    /// Symmetric group S_n in its (n-1)-dimensional reflection representation.
    Symmetric(u32),
    /// The imprimitive family G(r,p,n) in its monomial representation on C^n.
    Grpn { r: u32, p: u32, n: u32 },
    /// Generators ingested from a JSON file.
    External(String),
}

/// A group specification: a product of one or more factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<GroupKind>,
}

impl GroupSpec {
    pub fn single(kind: GroupKind) -> Self {
        GroupSpec { factors: vec![kind] }
    }

    pub fn symmetric(n: u32) -> Self {
        Self::single(GroupKind::Symmetric(n))
    }

    pub fn grpn(r: u32, p: u32, n: u32) -> Self {
        Self::single(GroupKind::Grpn { r, p, n })
    }

    pub fn is_product(&self) -> bool {
        self.factors.len() > 1
    }

    /// Parses the spec grammar; errors carry the byte position of the
    /// offending token.
    pub fn parse(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for (offset, token) in split_product(s) {
            let trimmed = token.trim();
            let offset = offset + (token.len() - token.trim_start().len());
            if trimmed.is_empty() {
                return Err(Error::SpecParse {
                    position: offset,
                    message: "empty factor".into(),
                });
            }
            factors.push(parse_factor(trimmed, offset)?);
        }
        if factors.is_empty() {
            return Err(Error::SpecParse {
                position: 0,
                message: "empty spec".into(),
            });
        }
        Ok(GroupSpec { factors })
    }
}

/// Splits on product separators, keeping each segment's byte offset.
fn split_product(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if ch == '×' || ch == '*' {
            out.push((start, &s[start..i]));
            start = i + ch.len_utf8();
        }
    }
    out.push((start, &s[start..]));
    out
}

fn parse_factor(s: &str, pos: usize) -> Result<GroupKind> {
    let err = |message: String| Error::SpecParse { position: pos, message };
    if let Some(path) = s.strip_prefix("file:") {
        if path.is_empty() {
            return Err(err("file: needs a path".into()));
        }
        return Ok(GroupKind::External(path.to_string()));
    }
    if let Some(rest) = s.strip_prefix("I2(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| err("I2 spec missing ')'".into()))?;
        let m: u32 = inner
            .parse()
            .map_err(|_| err(format!("bad I2 parameter {inner:?}")))?;
        if m < 1 {
            return Err(err("I2(m) needs m >= 1".into()));
        }
        return Ok(GroupKind::Grpn { r: m, p: m, n: 2 });
    }
    if let Some(rest) = s.strip_prefix("G(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| err("G spec missing ')'".into()))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(err("G(r,p,n) needs three parameters".into()));
        }
        let nums: Vec<u32> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| err(format!("bad parameter {p:?}"))))
            .collect::<Result<_>>()?;
        let (r, p, n) = (nums[0], nums[1], nums[2]);
        if r < 1 || p < 1 || n < 1 {
            return Err(err("G(r,p,n) needs r,p,n >= 1".into()));
        }
        if r % p != 0 {
            return Err(err(format!("p does not divide r in G({r},{p},{n})")));
        }
        return Ok(GroupKind::Grpn { r, p, n });
    }
    let (family, numtext) = s.split_at(1);
    let parse_n = |what: &str| -> Result<u32> {
        numtext
            .parse()
            .map_err(|_| err(format!("bad {what} rank {numtext:?}")))
    };
    match family {
        "S" => {
            let n = parse_n("S")?;
            if n < 1 {
                return Err(err("S<n> needs n >= 1".into()));
            }
            Ok(GroupKind::Symmetric(n))
        }
        "A" => {
            let n = parse_n("A")?;
            Ok(GroupKind::Symmetric(n + 1))
        }
        "B" => {
            let n = parse_n("B")?;
            if n < 1 {
                return Err(err("B<n> needs n >= 1".into()));
            }
            Ok(GroupKind::Grpn { r: 2, p: 1, n })
        }
        "D" => {
            let n = parse_n("D")?;
            if n < 1 {
                return Err(err("D<n> needs n >= 1".into()));
            }
            Ok(GroupKind::Grpn { r: 2, p: 2, n })
        }
        _ => Err(err(format!("unknown group family {s:?}"))),
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Symmetric(n) => write!(f, "S{n}"),
            GroupKind::Grpn { r, p, n } => write!(f, "G({r},{p},{n})"),
            GroupKind::External(path) => write!(f, "file:{path}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, k) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alias_table() {
        assert_eq!(
            GroupSpec::parse("B3").unwrap(),
            GroupSpec::grpn(2, 1, 3)
        );
        assert_eq!(
            GroupSpec::parse("G(4,4,2)").unwrap(),
            GroupSpec::grpn(4, 4, 2)
        );
        assert_eq!(GroupSpec::parse("A3").unwrap(), GroupSpec::symmetric(4));
        assert_eq!(
            GroupSpec::parse("I2(6)").unwrap(),
            GroupSpec::grpn(6, 6, 2)
        );
        assert_eq!(GroupSpec::parse("D4").unwrap(), GroupSpec::grpn(2, 2, 4));
    }

    #[test]
    fn p_must_divide_r() {
        assert!(matches!(
            GroupSpec::parse("G(4,3,2)"),
            Err(Error::SpecParse { .. })
        ));
    }

    #[test]
    fn products_parse_with_both_separators() {
        let a = GroupSpec::parse("S3×S3").unwrap();
        let b = GroupSpec::parse("S3*S3").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.factors.len(), 2);
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["S4", "G(2,1,3)", "G(6,6,2)", "S3×G(2,1,2)", "file:/tmp/g.json"] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(GroupSpec::parse(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn unknown_family_errors_with_position() {
        match GroupSpec::parse("S3×Q8") {
            Err(Error::SpecParse { position, .. }) => assert!(position >= 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
