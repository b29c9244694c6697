//! Relations, queries, domain orderings, hyperplanes, and semi-join
//! reduction, plus the on-disk formats (`io`).

mod io;

pub use io::{
    emit_box_dump, parse_box_dump, parse_ordering, parse_relation, serialize_ordering,
    serialize_relation,
};

use crate::error::{Error, Result};
use crate::geometry::BitWidth;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// A named relation over `d`-bit attributes with a duplicate-free tuple set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    name: String,
    attrs: Vec<String>,
    width: BitWidth,
    tuples: Vec<Vec<u64>>,
}

impl Relation {
    /// Tuples are sorted and deduplicated; attribute names must be distinct
    /// and every value must fit the domain.
    pub fn new(
        name: impl Into<String>,
        attrs: Vec<String>,
        width: BitWidth,
        mut tuples: Vec<Vec<u64>>,
    ) -> Result<Relation> {
        let name = name.into();
        let mut seen = HashSet::new();
        for a in &attrs {
            if !seen.insert(a.clone()) {
                return Err(Error::SchemaMismatch(format!(
                    "relation {name}: repeated attribute `{a}`"
                )));
            }
        }
        for t in &tuples {
            if t.len() != attrs.len() {
                return Err(Error::SchemaMismatch(format!(
                    "relation {name}: tuple arity {} vs schema arity {}",
                    t.len(),
                    attrs.len()
                )));
            }
            for &v in t {
                width.check_value(v)?;
            }
        }
        tuples.sort();
        tuples.dedup();
        Ok(Relation {
            name,
            attrs,
            width,
            tuples,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn attrs(&self) -> &[String] {
        &self.attrs
    }

    pub fn arity(&self) -> usize {
        self.attrs.len()
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn tuples(&self) -> &[Vec<u64>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn attr_index(&self, attr: &str) -> Option<usize> {
        self.attrs.iter().position(|a| a == attr)
    }

    pub fn contains_tuple(&self, t: &[u64]) -> bool {
        self.tuples
            .binary_search_by(|probe| probe.as_slice().cmp(t))
            .is_ok()
    }

    pub fn with_tuples(&self, tuples: Vec<Vec<u64>>) -> Result<Relation> {
        Relation::new(self.name.clone(), self.attrs.clone(), self.width, tuples)
    }
}

/// An equi-join: relations sharing attribute names are joined on them.
#[derive(Clone, Debug)]
pub struct Query {
    relations: Vec<Relation>,
    attrs: Vec<String>,
    width: BitWidth,
}

impl Query {
    /// Attribute universe is the union, in first-appearance order.
    pub fn new(relations: Vec<Relation>) -> Result<Query> {
        let Some(first) = relations.first() else {
            return Err(Error::Invalid("query needs at least one relation".into()));
        };
        let width = first.width();
        let mut names = HashSet::new();
        let mut attrs: Vec<String> = Vec::new();
        for r in &relations {
            if r.width() != width {
                return Err(Error::SchemaMismatch(format!(
                    "relation {} has d={} but the query uses d={}",
                    r.name(),
                    r.width().get(),
                    width.get()
                )));
            }
            if !names.insert(r.name().to_string()) {
                return Err(Error::SchemaMismatch(format!(
                    "duplicate relation name `{}`",
                    r.name()
                )));
            }
            for a in r.attrs() {
                if !attrs.iter().any(|x| x == a) {
                    attrs.push(a.clone());
                }
            }
        }
        Ok(Query {
            relations,
            attrs,
            width,
        })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name() == name)
    }

    pub fn attrs(&self) -> &[String] {
        &self.attrs
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn attr_index(&self, attr: &str) -> Option<usize> {
        self.attrs.iter().position(|a| a == attr)
    }

    /// For each relation, the positions of its attributes in the query universe.
    pub fn relation_positions(&self) -> Vec<Vec<usize>> {
        self.relations
            .iter()
            .map(|r| {
                r.attrs()
                    .iter()
                    .map(|a| self.attr_index(a).expect("relation attr in universe"))
                    .collect()
            })
            .collect()
    }

    /// Total number of input tuples.
    pub fn input_size(&self) -> usize {
        self.relations.iter().map(|r| r.len()).sum()
    }

    /// Maximum relation arity.
    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.arity()).max().unwrap_or(0)
    }
}

/// Project a full universe point onto relation positions.
pub fn project(point: &[u64], positions: &[usize]) -> Vec<u64> {
    positions.iter().map(|&i| point[i]).collect()
}

/// Per-attribute bijections on the domain, stored as dense old-to-new maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainOrdering {
    width: BitWidth,
    maps: BTreeMap<String, Vec<u64>>,
}

impl DomainOrdering {
    pub fn identity(attrs: &[String], width: BitWidth) -> DomainOrdering {
        let id: Vec<u64> = (0..width.domain_size()).collect();
        DomainOrdering {
            width,
            maps: attrs.iter().map(|a| (a.clone(), id.clone())).collect(),
        }
    }

    /// Build from a dense old-to-new map per attribute; validates bijectivity.
    pub fn from_maps(width: BitWidth, maps: BTreeMap<String, Vec<u64>>) -> Result<DomainOrdering> {
        let n = width.domain_size() as usize;
        for (a, m) in &maps {
            if m.len() != n {
                return Err(Error::Invalid(format!(
                    "ordering for `{a}` has {} entries, expected {n}",
                    m.len()
                )));
            }
            let mut seen = vec![false; n];
            for &v in m {
                if v as usize >= n || seen[v as usize] {
                    return Err(Error::Invalid(format!(
                        "ordering for `{a}` is not a permutation"
                    )));
                }
                seen[v as usize] = true;
            }
        }
        Ok(DomainOrdering { width, maps })
    }

    /// Build from listings of old values in new order (one per attribute).
    pub fn from_listings(
        width: BitWidth,
        listings: BTreeMap<String, Vec<u64>>,
    ) -> Result<DomainOrdering> {
        let n = width.domain_size() as usize;
        let mut maps = BTreeMap::new();
        for (a, listing) in listings {
            if listing.len() != n {
                return Err(Error::Invalid(format!(
                    "ordering for `{a}` lists {} values, expected {n}",
                    listing.len()
                )));
            }
            let mut map = vec![u64::MAX; n];
            for (new, &old) in listing.iter().enumerate() {
                if old as usize >= n || map[old as usize] != u64::MAX {
                    return Err(Error::Invalid(format!(
                        "ordering for `{a}` is not a permutation"
                    )));
                }
                map[old as usize] = new as u64;
            }
            maps.insert(a, map);
        }
        Ok(DomainOrdering { width, maps })
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn attrs(&self) -> impl Iterator<Item = &String> {
        self.maps.keys()
    }

    pub fn map_for(&self, attr: &str) -> Option<&[u64]> {
        self.maps.get(attr).map(|v| v.as_slice())
    }

    pub fn set_map(&mut self, attr: &str, map: Vec<u64>) {
        self.maps.insert(attr.to_string(), map);
    }

    /// Old values in new order, the display convention of ordering files.
    pub fn listing_for(&self, attr: &str) -> Option<Vec<u64>> {
        let map = self.maps.get(attr)?;
        let mut listing = vec![0u64; map.len()];
        for (old, &new) in map.iter().enumerate() {
            listing[new as usize] = old as u64;
        }
        Some(listing)
    }

    pub fn invert(&self) -> DomainOrdering {
        let maps = self
            .maps
            .iter()
            .map(|(a, m)| {
                let mut inv = vec![0u64; m.len()];
                for (old, &new) in m.iter().enumerate() {
                    inv[new as usize] = old as u64;
                }
                (a.clone(), inv)
            })
            .collect();
        DomainOrdering {
            width: self.width,
            maps,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.maps
            .values()
            .all(|m| m.iter().enumerate().all(|(i, &v)| i as u64 == v))
    }
}

/// Rename every tuple value through the ordering; errors if the ordering is
/// missing an attribute of the query.
pub fn apply_ordering(q: &Query, ordering: &DomainOrdering) -> Result<Query> {
    if ordering.width() != q.width() {
        return Err(Error::SchemaMismatch(format!(
            "ordering d={} vs query d={}",
            ordering.width().get(),
            q.width().get()
        )));
    }
    for a in q.attrs() {
        if ordering.map_for(a).is_none() {
            return Err(Error::UnknownAttribute(a.clone()));
        }
    }
    let relations = q
        .relations()
        .iter()
        .map(|r| apply_ordering_to_relation(r, ordering))
        .collect::<Result<Vec<_>>>()?;
    Query::new(relations)
}

pub fn apply_ordering_to_relation(r: &Relation, ordering: &DomainOrdering) -> Result<Relation> {
    let maps: Vec<&[u64]> = r
        .attrs()
        .iter()
        .map(|a| {
            ordering
                .map_for(a)
                .ok_or_else(|| Error::UnknownAttribute(a.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let tuples = r
        .tuples()
        .iter()
        .map(|t| {
            t.iter()
                .enumerate()
                .map(|(i, &v)| maps[i][v as usize])
                .collect()
        })
        .collect();
    r.with_tuples(tuples)
}

/// Rename the values of a set of universe points through the ordering.
pub fn apply_ordering_to_points(
    points: &BTreeSet<Vec<u64>>,
    attrs: &[String],
    ordering: &DomainOrdering,
) -> Result<BTreeSet<Vec<u64>>> {
    let maps: Vec<&[u64]> = attrs
        .iter()
        .map(|a| {
            ordering
                .map_for(a)
                .ok_or_else(|| Error::UnknownAttribute(a.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(points
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(i, &v)| maps[i][v as usize])
                .collect()
        })
        .collect())
}

/// A slice of a relation at `attr = value`, projected onto the remaining
/// attributes; a bare count for unary relations. Canonically sorted so that
/// equality and ordering are structural.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hyperplane {
    Tuples(Vec<Vec<u64>>),
    Count(usize),
}

/// The `attr`-hyperplane of `r` at `value`, with projection components in
/// schema order.
pub fn hyperplane(r: &Relation, attr: &str, value: u64) -> Result<Hyperplane> {
    let Some(idx) = r.attr_index(attr) else {
        return Err(Error::UnknownAttribute(attr.to_string()));
    };
    if r.arity() == 1 {
        let count = r.tuples().iter().filter(|t| t[0] == value).count();
        return Ok(Hyperplane::Count(count));
    }
    let mut rows: Vec<Vec<u64>> = r
        .tuples()
        .iter()
        .filter(|t| t[idx] == value)
        .map(|t| {
            t.iter()
                .enumerate()
                .filter(|&(i, _)| i != idx)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect();
    rows.sort();
    Ok(Hyperplane::Tuples(rows))
}

/// Remove every tuple that does not extend to an output tuple of the join.
/// Desk-scale only: evaluates the join exactly.
pub fn semijoin_reduce(q: &Query, limits: &crate::oracle::OracleLimits) -> Result<Query> {
    let output = crate::oracle::brute_join(q, limits)?;
    let positions = q.relation_positions();
    let relations = q
        .relations()
        .iter()
        .zip(&positions)
        .map(|(r, pos)| {
            let keep: BTreeSet<Vec<u64>> = output.iter().map(|o| project(o, pos)).collect();
            let tuples = r
                .tuples()
                .iter()
                .filter(|t| keep.contains(*t))
                .cloned()
                .collect();
            r.with_tuples(tuples)
        })
        .collect::<Result<Vec<_>>>()?;
    Query::new(relations)
}
