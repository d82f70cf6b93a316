//! Line-oriented text formats for algebras and maps.
//!
//! Algebra files:
//!
//! ```text
//! algebra heisenberg3
//! dim 3
//! kind lie
//! c 1 2 3 = 1
//! c 2 1 3 = -1
//! ```
//!
//! Map files start with `map bilinear|polyright|polyleft` and `dim n`, followed by
//! `t i j k = v` (bilinear) or `m (a1,...,an) r c = v` (polynomial) lines. Indices
//! are 1-based, omitted entries are zero and `#` starts a comment.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::algebra::{Algebra, Kind};
use crate::bilinear::BilinearTensor;
use crate::brackets::{Frozen, PolyLeftMap, PolyMap, PolyRightMap};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Rational, RationalMatrix};
use crate::poly::MultiIndex;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// Splits `lhs = value` and parses the value.
fn split_value(line_no: usize, line: &str) -> Result<(String, Rational)> {
    let (lhs, rhs) = line
        .split_once('=')
        .ok_or_else(|| err(line_no, format!("expected `... = value`, found `{line}`")))?;
    let value = parse_rational(rhs.trim()).map_err(|m| err(line_no, m))?;
    Ok((lhs.trim().to_string(), value))
}

fn parse_index(line_no: usize, token: &str, dim: usize) -> Result<usize> {
    let v: usize = token
        .parse()
        .map_err(|_| err(line_no, format!("expected an index, found `{token}`")))?;
    if v == 0 || v > dim {
        return Err(err(line_no, format!("index {v} out of range 1..={dim}")));
    }
    Ok(v - 1)
}

fn parse_dim(line_no: usize, rest: &str) -> Result<usize> {
    match rest.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(err(line_no, format!("invalid dimension `{rest}`"))),
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| err(0, format!("missing `{what}` header")))
}

fn set_once<T>(slot: &mut Option<T>, value: T, line_no: usize, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(err(line_no, format!("duplicate `{what}` header")));
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_algebra(text: &str) -> Result<Algebra> {
    let (mut name, mut dim, mut kind) = (None, None, None);
    let mut algebra: Option<Algebra> = None;
    let mut seen = HashSet::new();
    for (line_no, line) in content_lines(text) {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "algebra" | "dim" | "kind" if algebra.is_some() => {
                return Err(err(
                    line_no,
                    format!("`{head}` header after the body started"),
                ));
            }
            "algebra" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err(line_no, format!("invalid algebra name `{rest}`")));
                }
                set_once(&mut name, rest.to_string(), line_no, "algebra")?;
            }
            "dim" => set_once(&mut dim, parse_dim(line_no, rest)?, line_no, "dim")?,
            "kind" => {
                let k: Kind = rest.parse().map_err(|m: String| err(line_no, m))?;
                set_once(&mut kind, k, line_no, "kind")?;
            }
            "c" => {
                if algebra.is_none() {
                    let (Some(name), Some(dim), Some(kind)) = (name.clone(), dim, kind) else {
                        return Err(err(
                            line_no,
                            "body line before the `algebra`, `dim` and `kind` headers",
                        ));
                    };
                    algebra = Some(Algebra::new(name, dim, kind));
                }
                let a = algebra.as_mut().expect("just created");
                let n = a.dim();
                let (lhs, value) = split_value(line_no, rest)?;
                let idx: Vec<&str> = lhs.split_whitespace().collect();
                if idx.len() != 3 {
                    return Err(err(line_no, "expected `c i j k = value`"));
                }
                let (i, j, k) = (
                    parse_index(line_no, idx[0], n)?,
                    parse_index(line_no, idx[1], n)?,
                    parse_index(line_no, idx[2], n)?,
                );
                if !seen.insert((i, j, k)) {
                    return Err(err(
                        line_no,
                        format!("duplicate entry c {} {} {}", i + 1, j + 1, k + 1),
                    ));
                }
                a.set_constant(i, j, k, value);
            }
            _ => return Err(err(line_no, format!("unrecognised line `{line}`"))),
        }
    }
    match algebra {
        Some(a) => Ok(a),
        None => Ok(Algebra::new(
            require(name, "algebra")?,
            require(dim, "dim")?,
            require(kind, "kind")?,
        )),
    }
}

/// Canonical text: headers, then nonzero constants in index order.
pub fn serialize_algebra(a: &Algebra) -> String {
    let n = a.dim();
    let mut out = format!("algebra {}\ndim {n}\nkind {}\n", a.name(), a.kind());
    for (i, j, k) in crate::algebra::triples(n) {
        let c = a.constant(i, j, k);
        if !c.is_zero() {
            let _ = writeln!(
                out,
                "c {} {} {} = {}",
                i + 1,
                j + 1,
                k + 1,
                format_rational(c)
            );
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapDocument {
    Bilinear(BilinearTensor),
    PolyRight(PolyRightMap),
    PolyLeft(PolyLeftMap),
}

impl MapDocument {
    pub fn dim(&self) -> usize {
        match self {
            MapDocument::Bilinear(b) => b.dim(),
            MapDocument::PolyRight(p) => p.dim(),
            MapDocument::PolyLeft(p) => p.dim(),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            MapDocument::Bilinear(_) => "bilinear",
            MapDocument::PolyRight(_) => "polyright",
            MapDocument::PolyLeft(_) => "polyleft",
        }
    }

    /// The map read as right-polynomial data; a bilinear tensor is converted.
    pub fn into_right(self) -> Option<PolyRightMap> {
        match self {
            MapDocument::Bilinear(b) => Some(PolyRightMap::from_tensor(&b)),
            MapDocument::PolyRight(p) => Some(p),
            MapDocument::PolyLeft(_) => None,
        }
    }

    /// The map read as left-polynomial data; a bilinear tensor is converted.
    pub fn into_left(self) -> Option<PolyLeftMap> {
        match self {
            MapDocument::Bilinear(b) => Some(PolyLeftMap::from_tensor(&b)),
            MapDocument::PolyLeft(p) => Some(p),
            MapDocument::PolyRight(_) => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum MapKind {
    Bilinear,
    PolyRight,
    PolyLeft,
}

pub fn parse_map(text: &str) -> Result<MapDocument> {
    let (mut kind, mut dim) = (None, None);
    let mut entries: Vec<(usize, String, Rational)> = Vec::new();
    for (line_no, line) in content_lines(text) {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "map" | "dim" if !entries.is_empty() => {
                return Err(err(
                    line_no,
                    format!("`{head}` header after the body started"),
                ));
            }
            "map" => {
                let k = match rest {
                    "bilinear" => MapKind::Bilinear,
                    "polyright" => MapKind::PolyRight,
                    "polyleft" => MapKind::PolyLeft,
                    _ => return Err(err(line_no, format!("unknown map kind `{rest}`"))),
                };
                set_once(&mut kind, k, line_no, "map")?;
            }
            "dim" => set_once(&mut dim, parse_dim(line_no, rest)?, line_no, "dim")?,
            "t" | "m" => {
                let Some(k) = kind else {
                    return Err(err(line_no, "body line before the `map` header"));
                };
                if dim.is_none() {
                    return Err(err(line_no, "body line before the `dim` header"));
                }
                let expected = if k == MapKind::Bilinear { "t" } else { "m" };
                if head != expected {
                    return Err(err(
                        line_no,
                        format!("`{head}` line in a {} map", kind_label(k)),
                    ));
                }
                let (lhs, value) = split_value(line_no, rest)?;
                entries.push((line_no, lhs, value));
            }
            _ => return Err(err(line_no, format!("unrecognised line `{line}`"))),
        }
    }
    let k = require(kind, "map")?;
    let n = require(dim, "dim")?;
    match k {
        MapKind::Bilinear => {
            let mut b = BilinearTensor::zero(n);
            let mut seen = HashSet::new();
            for (line_no, lhs, value) in entries {
                let idx: Vec<&str> = lhs.split_whitespace().collect();
                if idx.len() != 3 {
                    return Err(err(line_no, "expected `t i j k = value`"));
                }
                let (i, j, kk) = (
                    parse_index(line_no, idx[0], n)?,
                    parse_index(line_no, idx[1], n)?,
                    parse_index(line_no, idx[2], n)?,
                );
                if !seen.insert((i, j, kk)) {
                    return Err(err(
                        line_no,
                        format!("duplicate entry t {} {} {}", i + 1, j + 1, kk + 1),
                    ));
                }
                b.set(i, j, kk, value);
            }
            Ok(MapDocument::Bilinear(b))
        }
        MapKind::PolyRight => Ok(MapDocument::PolyRight(poly_from_entries(n, entries)?)),
        MapKind::PolyLeft => Ok(MapDocument::PolyLeft(poly_from_entries(n, entries)?)),
    }
}

fn kind_label(k: MapKind) -> &'static str {
    match k {
        MapKind::Bilinear => "bilinear",
        MapKind::PolyRight => "polyright",
        MapKind::PolyLeft => "polyleft",
    }
}

fn poly_from_entries<S: Frozen>(
    n: usize,
    entries: Vec<(usize, String, Rational)>,
) -> Result<PolyMap<S>> {
    let mut terms: BTreeMap<MultiIndex, RationalMatrix> = BTreeMap::new();
    let mut seen = HashSet::new();
    for (line_no, lhs, value) in entries {
        let open = lhs
            .find('(')
            .ok_or_else(|| err(line_no, "expected `m (a1,...,an) r c = value`"))?;
        let close = lhs
            .find(')')
            .ok_or_else(|| err(line_no, "unclosed exponent vector"))?;
        if open != 0 || close < open {
            return Err(err(line_no, "expected `m (a1,...,an) r c = value`"));
        }
        let exps = lhs[open + 1..close]
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>()
                    .map_err(|_| err(line_no, format!("invalid exponent `{t}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if exps.len() != n {
            return Err(err(
                line_no,
                format!("exponent vector has {} entries, expected {n}", exps.len()),
            ));
        }
        let idx: Vec<&str> = lhs[close + 1..].split_whitespace().collect();
        if idx.len() != 2 {
            return Err(err(line_no, "expected `m (a1,...,an) r c = value`"));
        }
        let (r, c) = (
            parse_index(line_no, idx[0], n)?,
            parse_index(line_no, idx[1], n)?,
        );
        let a = MultiIndex::new(exps);
        if !seen.insert((a.clone(), r, c)) {
            return Err(err(
                line_no,
                format!("duplicate entry m {a} {} {}", r + 1, c + 1),
            ));
        }
        terms
            .entry(a)
            .or_insert_with(|| RationalMatrix::zeros(n, n))
            .set(r, c, value);
    }
    PolyMap::from_terms(n, terms)
}

pub fn serialize_tensor(b: &BilinearTensor) -> String {
    let mut out = format!("map bilinear\ndim {}\n", b.dim());
    for (i, j, k, v) in b.nonzero_entries() {
        let _ = writeln!(
            out,
            "t {} {} {} = {}",
            i + 1,
            j + 1,
            k + 1,
            format_rational(v)
        );
    }
    out
}

fn serialize_poly<S: Frozen>(label: &str, p: &PolyMap<S>) -> String {
    let n = p.dim();
    let mut out = format!("map {label}\ndim {n}\n");
    for (a, m) in p.terms() {
        for r in 0..n {
            for c in 0..n {
                let v = m.get(r, c);
                if !v.is_zero() {
                    let _ = writeln!(out, "m {a} {} {} = {}", r + 1, c + 1, format_rational(v));
                }
            }
        }
    }
    out
}

pub fn serialize_poly_right(p: &PolyRightMap) -> String {
    serialize_poly("polyright", p)
}

pub fn serialize_poly_left(p: &PolyLeftMap) -> String {
    serialize_poly("polyleft", p)
}

pub fn serialize_map(doc: &MapDocument) -> String {
    match doc {
        MapDocument::Bilinear(b) => serialize_tensor(b),
        MapDocument::PolyRight(p) => serialize_poly_right(p),
        MapDocument::PolyLeft(p) => serialize_poly_left(p),
    }
}
