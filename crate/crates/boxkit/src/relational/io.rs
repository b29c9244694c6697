//! Text formats: relation files (.rel), ordering files (.ord), box dumps.
//!
//! Relation file: first non-comment line `<name> <d> <attr>...`, then one
//! tuple of space-separated decimal values per line. `#` starts a comment.
//! Ordering file: per line `order <attr>: v0 v1 ... v_{2^d-1}` listing old
//! values in new order. Box dump: `box <relation-name> <prefix>...` where a
//! prefix is a bit string or `*`.

use super::{DomainOrdering, Relation};
use crate::error::{Error, Result};
use crate::geometry::{BitWidth, DyadicBox};
use std::collections::{BTreeMap, HashSet};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_relation(text: &str) -> Result<Relation> {
    let mut header: Option<(String, BitWidth, Vec<String>)> = None;
    let mut tuples: Vec<Vec<u64>> = Vec::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match &header {
            None => {
                if fields.len() < 3 {
                    return Err(parse_err(lineno, "header needs `<name> <d> <attr>...`"));
                }
                let name = fields[0].to_string();
                let d: u32 = fields[1]
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad bit width `{}`", fields[1])))?;
                let width = BitWidth::new(d)
                    .map_err(|_| parse_err(lineno, format!("bit width {d} out of range 1..=62")))?;
                let attrs: Vec<String> = fields[2..].iter().map(|s| s.to_string()).collect();
                header = Some((name, width, attrs));
            }
            Some((_, width, attrs)) => {
                if fields.len() != attrs.len() {
                    return Err(parse_err(
                        lineno,
                        format!("expected {} values, found {}", attrs.len(), fields.len()),
                    ));
                }
                let mut t = Vec::with_capacity(fields.len());
                for f in &fields {
                    let v: u64 = f
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("bad value `{f}`")))?;
                    if v >= width.domain_size() {
                        return Err(parse_err(
                            lineno,
                            format!("value {v} out of domain (d={})", width.get()),
                        ));
                    }
                    t.push(v);
                }
                if !seen.insert(t.clone()) {
                    return Err(parse_err(lineno, "duplicate tuple"));
                }
                tuples.push(t);
            }
        }
    }
    let Some((name, width, attrs)) = header else {
        return Err(parse_err(0, "empty relation file"));
    };
    Relation::new(name, attrs, width, tuples)
}

/// Canonical form: header line, then tuples in sorted order.
pub fn serialize_relation(r: &Relation) -> String {
    let mut out = String::new();
    out.push_str(r.name());
    out.push(' ');
    out.push_str(&r.width().get().to_string());
    for a in r.attrs() {
        out.push(' ');
        out.push_str(a);
    }
    out.push('\n');
    for t in r.tuples() {
        let row: Vec<String> = t.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_ordering(text: &str, width: BitWidth) -> Result<DomainOrdering> {
    let mut listings: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some(rest) = line.strip_prefix("order ") else {
            return Err(parse_err(lineno, "expected `order <attr>: v0 v1 ...`"));
        };
        let Some((attr, values)) = rest.split_once(':') else {
            return Err(parse_err(lineno, "missing `:` after attribute name"));
        };
        let attr = attr.trim().to_string();
        if attr.is_empty() {
            return Err(parse_err(lineno, "empty attribute name"));
        }
        let listing = values
            .split_whitespace()
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| parse_err(lineno, format!("bad value `{f}`")))
            })
            .collect::<Result<Vec<u64>>>()?;
        if listing.len() as u64 != width.domain_size() {
            return Err(parse_err(
                lineno,
                format!(
                    "ordering for `{attr}` lists {} values, expected {}",
                    listing.len(),
                    width.domain_size()
                ),
            ));
        }
        if listings.insert(attr.clone(), listing).is_some() {
            return Err(parse_err(lineno, format!("repeated attribute `{attr}`")));
        }
    }
    DomainOrdering::from_listings(width, listings)
}

pub fn serialize_ordering(ordering: &DomainOrdering) -> String {
    let mut out = String::new();
    for attr in ordering.attrs() {
        let listing = ordering.listing_for(attr).expect("attr present");
        let vals: Vec<String> = listing.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("order {attr}: {}\n", vals.join(" ")));
    }
    out
}

/// One `box <relation-name> <prefix>...` line per box, attribute order
/// following the relation's declared schema.
pub fn emit_box_dump<'a>(entries: impl IntoIterator<Item = (&'a str, &'a DyadicBox)>) -> String {
    let mut out = String::new();
    for (rel, b) in entries {
        out.push_str("box ");
        out.push_str(rel);
        for p in b.prefixes() {
            out.push(' ');
            out.push_str(&p.render());
        }
        out.push('\n');
    }
    out
}

pub fn parse_box_dump(text: &str) -> Result<Vec<(String, DyadicBox)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 3 || fields[0] != "box" {
            return Err(parse_err(lineno, "expected `box <relation> <prefix>...`"));
        }
        let b =
            DyadicBox::parse_tokens(&fields[2..]).map_err(|e| parse_err(lineno, e.to_string()))?;
        out.push((fields[1].to_string(), b));
    }
    Ok(out)
}
