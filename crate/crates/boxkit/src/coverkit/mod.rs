//! Gap-box cover generation and incremental maintenance: the
//! all-maximal-boxes generator, the maximality filter, per-query covers, and
//! an insert/delete-maintained index that always holds every maximal dyadic
//! gap box and never a box containing a tuple.

use crate::error::{Error, Result};
use crate::geometry::{BitWidth, DyadicBox, DyadicBoxIndex};
use crate::relational::{Query, Relation};
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// The set of every dyadic box that contains at least one tuple of a
/// relation, giving O(arity) "does this box contain a tuple" probes.
pub struct TupleCoveredBoxes {
    set: HashSet<DyadicBox>,
}

impl TupleCoveredBoxes {
    pub fn build(r: &Relation) -> TupleCoveredBoxes {
        let mut set = HashSet::new();
        for t in r.tuples() {
            for b in DyadicBox::unit(t, r.width()).superboxes() {
                set.insert(b);
            }
        }
        TupleCoveredBoxes { set }
    }

    /// True iff `b` contains some tuple of the relation this was built from.
    pub fn contains_tuple(&self, b: &DyadicBox) -> bool {
        self.set.contains(b)
    }
}

/// Generate a superset of the maximal dyadic gap boxes of `r`: for every
/// dyadic box covering a tuple, emit each last-bit-flip neighbour, then
/// subtract all tuple-covering boxes by sorting both sides and merging.
/// Output contains only gap boxes and every maximal one; the empty relation
/// yields the empty set.
pub fn gamb(r: &Relation) -> BTreeSet<DyadicBox> {
    let width = r.width();
    let mut flips: Vec<DyadicBox> = Vec::new();
    let mut covering: Vec<DyadicBox> = Vec::new();
    for t in r.tuples() {
        for b in DyadicBox::unit(t, width).superboxes() {
            for attr in 0..r.arity() {
                if let Some(sib) = b.prefix(attr).sibling() {
                    flips.push(b.with_prefix(attr, sib));
                }
            }
            covering.push(b);
        }
    }
    flips.sort();
    flips.dedup();
    covering.sort();
    covering.dedup();

    let mut out = BTreeSet::new();
    let mut i = 0;
    for b in flips {
        while i < covering.len() && covering[i] < b {
            i += 1;
        }
        if i >= covering.len() || covering[i] != b {
            out.insert(b);
        }
    }
    out
}

/// Keep exactly the maximal boxes: `b` survives iff every one-bit truncation
/// on a non-`*` attribute would cover a tuple. Errors if some input box is
/// not a gap box.
pub fn maximality_filter(boxes: &BTreeSet<DyadicBox>, r: &Relation) -> Result<BTreeSet<DyadicBox>> {
    let covered = TupleCoveredBoxes::build(r);
    maximality_filter_with(boxes, r, &covered)
}

pub fn maximality_filter_with(
    boxes: &BTreeSet<DyadicBox>,
    r: &Relation,
    covered: &TupleCoveredBoxes,
) -> Result<BTreeSet<DyadicBox>> {
    let mut out = BTreeSet::new();
    for b in boxes {
        if b.arity() != r.arity() {
            return Err(Error::SchemaMismatch(format!(
                "box arity {} vs relation arity {}",
                b.arity(),
                r.arity()
            )));
        }
        if covered.contains_tuple(b) {
            return Err(Error::Invalid(format!(
                "non-gap box {b:?} passed to the maximality filter"
            )));
        }
        let maximal = (0..b.arity()).all(|attr| match b.prefix(attr).parent() {
            Some(parent) => covered.contains_tuple(&b.with_prefix(attr, parent)),
            None => true,
        });
        if maximal {
            out.insert(b.clone());
        }
    }
    Ok(out)
}

/// Per-relation sets of gap boxes covering each relation's complement.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoxCover {
    per_relation: BTreeMap<String, BTreeSet<DyadicBox>>,
}

impl BoxCover {
    pub fn new() -> BoxCover {
        BoxCover::default()
    }

    pub fn insert(&mut self, relation: &str, b: DyadicBox) {
        self.per_relation
            .entry(relation.to_string())
            .or_default()
            .insert(b);
    }

    pub fn set_relation(&mut self, relation: &str, boxes: BTreeSet<DyadicBox>) {
        self.per_relation.insert(relation.to_string(), boxes);
    }

    pub fn boxes_for(&self, relation: &str) -> Option<&BTreeSet<DyadicBox>> {
        self.per_relation.get(relation)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&String, &BTreeSet<DyadicBox>)> {
        self.per_relation.iter()
    }

    pub fn total_boxes(&self) -> usize {
        self.per_relation.values().map(|s| s.len()).sum()
    }

    /// Flat `(relation, box)` view in canonical order.
    pub fn entries(&self) -> Vec<(String, DyadicBox)> {
        self.per_relation
            .iter()
            .flat_map(|(r, set)| set.iter().map(move |b| (r.clone(), b.clone())))
            .collect()
    }

    /// Every box must be a gap box of its relation.
    pub fn validate_gap_boxes(&self, q: &Query) -> Result<()> {
        for (name, boxes) in &self.per_relation {
            let Some(r) = q.relation(name) else {
                return Err(Error::SchemaMismatch(format!(
                    "cover names unknown relation `{name}`"
                )));
            };
            let covered = TupleCoveredBoxes::build(r);
            for b in boxes {
                if b.arity() != r.arity() {
                    return Err(Error::SchemaMismatch(format!(
                        "cover box arity {} vs relation `{name}` arity {}",
                        b.arity(),
                        r.arity()
                    )));
                }
                if covered.contains_tuple(b) {
                    return Err(Error::Invalid(format!(
                        "cover box {b:?} contains a tuple of `{name}`"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Maximal-box cover per relation. An empty relation gets the single all-`*`
/// box: the generator has no tuples to walk, but its complement is the whole
/// cube and still needs covering.
pub fn build_query_cover(q: &Query) -> BoxCover {
    let mut cover = BoxCover::new();
    for r in q.relations() {
        cover.set_relation(r.name(), relation_cover(r));
    }
    cover
}

pub fn relation_cover(r: &Relation) -> BTreeSet<DyadicBox> {
    if r.is_empty() {
        let mut set = BTreeSet::new();
        set.insert(DyadicBox::all_star(r.arity()));
        return set;
    }
    let covered = TupleCoveredBoxes::build(r);
    let raw = gamb(r);
    maximality_filter_with(&raw, r, &covered).expect("gamb emits only gap boxes")
}

/// Probe/mutation work performed by one maintenance operation.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProbeStats {
    pub probes: u64,
}

/// A maintained index of dyadic gap boxes for one relation: contains every
/// maximal dyadic gap box, never a box covering a tuple, and possibly some
/// non-maximal gap boxes.
pub struct Mdbci {
    index: DyadicBoxIndex,
    width: BitWidth,
}

impl Mdbci {
    /// Seed from the generator output (plus the all-`*` box for an empty
    /// relation, whose complement is the whole cube).
    pub fn build(r: &Relation) -> Mdbci {
        let mut index = DyadicBoxIndex::new(r.arity());
        if r.is_empty() {
            index
                .insert(DyadicBox::all_star(r.arity()))
                .expect("arity matches");
        } else {
            for b in gamb(r) {
                index.insert(b).expect("arity matches");
            }
        }
        Mdbci {
            index,
            width: r.width(),
        }
    }

    pub fn index(&self) -> &DyadicBoxIndex {
        &self.index
    }

    pub fn boxes(&self) -> BTreeSet<DyadicBox> {
        self.index.iter_sorted().into_iter().collect()
    }

    /// Update after `t` was inserted; `r` is the relation with `t` already
    /// present. Every box containing `t` is removed and replaced by the
    /// one-bit extensions (of its sub-boxes around `t`) that avoid `t`.
    pub fn insert_tuple(&mut self, r: &Relation, t: &[u64]) -> Result<ProbeStats> {
        if !r.contains_tuple(t) {
            return Err(Error::Invalid(
                "insert maintenance expects the post-insert relation".into(),
            ));
        }
        let before = self.index.probe_count();
        let unit = DyadicBox::unit(t, self.width);
        let hit = self.index.query_superboxes(&unit)?;
        if hit.is_empty() {
            // a valid index covers every non-tuple point, so nothing
            // containing t means t was already a tuple
            return Err(Error::Invalid(format!(
                "tuple {t:?} was already indexed as a tuple"
            )));
        }
        for b in hit {
            self.index.delete(&b);
            for sub in b.subboxes_containing(t, self.width) {
                for attr in 0..sub.arity() {
                    let p = sub.prefix(attr);
                    if (p.len() as u32) < self.width.get() {
                        let t_bit = t[attr] >> (self.width.get() - 1 - p.len() as u32) & 1;
                        let ext = sub.with_prefix(attr, p.child(t_bit ^ 1));
                        self.index.insert(ext)?;
                    }
                }
            }
        }
        Ok(ProbeStats {
            probes: self.index.probe_count() - before,
        })
    }

    /// Update after `t` was deleted; `r` is the relation with `t` already
    /// removed. A box `b` around `t` is added iff every last-bit-flip
    /// neighbour of every strict sub-box around `t` is contained in some
    /// indexed box, flipping only attributes where the sub-box strictly
    /// extends `b` so the neighbour stays inside `b`. The neighbours then
    /// tile `b` minus the deleted point, so all-covered means `b` is
    /// tuple-free.
    pub fn delete_tuple(&mut self, r: &Relation, t: &[u64]) -> Result<ProbeStats> {
        if r.contains_tuple(t) {
            return Err(Error::Invalid(
                "delete maintenance expects the post-delete relation".into(),
            ));
        }
        let before = self.index.probe_count();
        let unit = DyadicBox::unit(t, self.width);
        if self.index.contains_superbox_of(&unit)? {
            // t's unit box was a gap box already, so t was not a tuple
            return Err(Error::Invalid(format!(
                "tuple {t:?} was not previously a tuple"
            )));
        }
        let mut to_add: Vec<DyadicBox> = Vec::new();
        let mut contained_memo: std::collections::HashMap<DyadicBox, bool> =
            std::collections::HashMap::new();
        for b in unit.superboxes() {
            let mut addb = true;
            'outer: for sub in b.subboxes_containing(t, self.width) {
                if sub == b {
                    continue;
                }
                for attr in 0..sub.arity() {
                    if sub.prefix(attr).len() <= b.prefix(attr).len() {
                        continue;
                    }
                    let sib = sub.prefix(attr).sibling().expect("longer than b's prefix");
                    let flip = sub.with_prefix(attr, sib);
                    let covered = match contained_memo.get(&flip) {
                        Some(&v) => v,
                        None => {
                            let v = self.index.contains_superbox_of(&flip)?;
                            contained_memo.insert(flip, v);
                            v
                        }
                    };
                    if !covered {
                        addb = false;
                        break 'outer;
                    }
                }
            }
            if addb {
                to_add.push(b);
            }
        }
        for b in to_add {
            self.index.insert(b)?;
        }
        Ok(ProbeStats {
            probes: self.index.probe_count() - before,
        })
    }
}
