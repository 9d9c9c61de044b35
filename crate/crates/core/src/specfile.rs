//! Cipher spec files.
//!
//! A spec is a small TOML document:
//!
//! ```toml
//! n = 8
//! m = 2
//! delta = 4
//! r = 3
//! sboxes = [[0x2, 0x0, 0x3, 0x1], [0, 1, 2, 3], [3, 2, 1, 0], [1, 3, 0, 2]]
//! ```
//!
//! `sboxes` lists `delta` tables of `2^m` entries, brick 1 (least significant)
//! first; entries are decimal or `0x` hex. `sboxes` may be omitted, in which
//! case only parameter validation is possible.

use std::fmt::Write as _;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use toml::Spanned;

use crate::cipher::{CipherParams, CipherSpec, SBoxSet};
use crate::error::{Error, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    n: Spanned<i64>,
    m: Spanned<i64>,
    delta: Spanned<i64>,
    r: Spanned<i64>,
    #[serde(default)]
    sboxes: Option<Vec<Spanned<Vec<Spanned<i64>>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub params: CipherParams,
    pub sboxes: Option<SBoxSet>,
    /// Hex SHA-256 of the source text.
    pub digest: String,
}

fn line_col(text: &str, span: &Range<usize>) -> (usize, usize) {
    let before = &text[..span.start.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.len(), |p| before.len() - p - 1) + 1;
    (line, col)
}

fn positioned(text: &str, span: &Range<usize>, msg: impl AsRef<str>) -> Error {
    let (line, col) = line_col(text, span);
    Error::MalformedSpec(format!("line {line}, column {col}: {}", msg.as_ref()))
}

fn field_u32(text: &str, v: &Spanned<i64>, name: &str) -> Result<u32> {
    u32::try_from(*v.get_ref())
        .map_err(|_| positioned(text, &v.span(), format!("{name} = {} is out of range", v.get_ref())))
}

pub fn digest(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| match e.span() {
            Some(span) => positioned(text, &span, e.message()),
            None => Error::MalformedSpec(e.message().to_string()),
        })?;
        let n = field_u32(text, &raw.n, "n")?;
        let m = field_u32(text, &raw.m, "m")?;
        let delta = field_u32(text, &raw.delta, "delta")?;
        let r = field_u32(text, &raw.r, "r")?;
        let params = CipherParams::new(n, m, delta, r).map_err(|e| positioned(text, &raw.n.span(), e.to_string()))?;

        let sboxes = match raw.sboxes {
            None => None,
            Some(tables) => {
                if tables.len() != delta as usize {
                    let span = tables.first().map_or(raw.n.span(), |t| t.span());
                    return Err(positioned(
                        text,
                        &span,
                        format!("expected {delta} S-box tables, found {}", tables.len()),
                    ));
                }
                let size = 1i64 << m;
                let mut out = Vec::with_capacity(tables.len());
                for (j, table) in tables.iter().enumerate() {
                    let entries = table.get_ref();
                    if entries.len() as i64 != size {
                        return Err(positioned(
                            text,
                            &table.span(),
                            format!("S-box {} has {} entries, expected {size}", j + 1, entries.len()),
                        ));
                    }
                    let mut row = Vec::with_capacity(entries.len());
                    for e in entries {
                        let v = *e.get_ref();
                        if !(0..size).contains(&v) {
                            return Err(positioned(
                                text,
                                &e.span(),
                                format!("S-box {} entry {v} outside [0, {size})", j + 1),
                            ));
                        }
                        row.push(v as u32);
                    }
                    out.push(row);
                }
                Some(SBoxSet::new(m, out)?)
            }
        };
        Ok(SpecFile {
            params,
            sboxes,
            digest: digest(text),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<SpecFile> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        SpecFile::parse(&text)
    }

    /// The full cipher; fails when the file carries no S-boxes.
    pub fn cipher(&self) -> Result<CipherSpec> {
        let sboxes = self
            .sboxes
            .clone()
            .ok_or_else(|| Error::MalformedSpec("this command needs S-box tables but the spec has none".into()))?;
        CipherSpec::new(self.params, sboxes)
    }
}

/// Renders a spec in the file format accepted by [`SpecFile::parse`].
pub fn render(params: &CipherParams, sboxes: Option<&SBoxSet>, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "n = {}", params.n);
    let _ = writeln!(out, "m = {}", params.m);
    let _ = writeln!(out, "delta = {}", params.delta);
    let _ = writeln!(out, "r = {}", params.r);
    if let Some(s) = sboxes {
        out.push_str("sboxes = [\n");
        for t in s.tables() {
            let row: Vec<String> = t.iter().map(|v| format!("0x{v:x}")).collect();
            let _ = writeln!(out, "  [{}],", row.join(", "));
        }
        out.push_str("]\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_hex() {
        let text = "n = 4\nm = 2\ndelta = 2\nr = 2\nsboxes = [[0x1, 0, 3, 2], [0, 1, 2, 3]]\n";
        let spec = SpecFile::parse(text).unwrap();
        assert_eq!(spec.params, CipherParams::new(4, 2, 2, 2).unwrap());
        assert_eq!(spec.sboxes.unwrap().tables()[0], vec![1, 0, 3, 2]);
        assert_eq!(spec.digest.len(), 64);
    }

    #[test]
    fn header_only() {
        let spec = SpecFile::parse("n = 32\nm = 4\ndelta = 8\nr = 11\n").unwrap();
        assert!(spec.sboxes.is_none());
        assert!(spec.cipher().is_err());
    }

    #[test]
    fn render_round_trip() {
        let params = CipherParams::new(4, 2, 2, 2).unwrap();
        let sb = SBoxSet::new(2, vec![vec![3, 1, 0, 2], vec![2, 3, 1, 0]]).unwrap();
        let text = render(&params, Some(&sb), Some("test"));
        let back = SpecFile::parse(&text).unwrap();
        assert_eq!(back.params, params);
        assert_eq!(back.sboxes.as_ref(), Some(&sb));
    }

    #[test]
    fn errors_are_positioned() {
        let err = SpecFile::parse("n = 4\nm = 2\ndelta = 2\nr = 2\nsboxes = [[0, 1, 2], [0, 1, 2, 3]]\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 5"), "{err}");
        assert!(err.contains("3 entries"), "{err}");

        let err = SpecFile::parse("n = 4\nm = 2\ndelta = 2\nr = 2\nsboxes = [[0, 1, 2, 3], [0, 1, 2, 9]]\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 5") && err.contains("entry 9"), "{err}");

        let err = SpecFile::parse("n = 4\nm = 2\ndelta = 2\nr = \n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 4"), "{err}");

        let err = SpecFile::parse("n = 8\nm = 3\ndelta = 2\nr = 1\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 1"), "{err}");

        assert!(SpecFile::parse("n = 4\nm = 2\ndelta = 2\nr = 1\nextra = 1\n").is_err());
    }
}
