//! Domain-ordering approximation: equivalence classes of domain values by
//! hyperplane equality, the per-attribute grouping sort, the full ordering,
//! the grid-box cover of a reordered query, and switch counting.

use crate::error::{Error, Result};
use crate::geometry::{DyadicBox, GeneralBox};
use crate::relational::{DomainOrdering, Hyperplane, Query, Relation};
use std::collections::BTreeMap;

/// Attributes of `r` other than `attr`, in the order that places `attr`
/// first and keeps the rest in query-universe order.
fn phi_projection(q: &Query, r: &Relation, attr: &str) -> Vec<usize> {
    let mut others: Vec<usize> = (0..r.arity()).filter(|&i| r.attrs()[i] != attr).collect();
    others.sort_by_key(|&i| q.attr_index(&r.attrs()[i]).expect("attr in universe"));
    others
}

/// Per appearing value, the hyperplanes across the relations containing the
/// attribute, components ordered under the attribute-first ordering.
fn hyperplane_table(q: &Query, attr: &str) -> Result<BTreeMap<u64, Vec<Hyperplane>>> {
    if q.attr_index(attr).is_none() {
        return Err(Error::UnknownAttribute(attr.to_string()));
    }
    let mut table: BTreeMap<u64, Vec<Hyperplane>> = BTreeMap::new();
    let holders: Vec<&Relation> = q
        .relations()
        .iter()
        .filter(|r| r.attr_index(attr).is_some())
        .collect();
    // collect the appearing values first so every value gets one entry per
    // relation, including empty slices
    for r in &holders {
        let idx = r.attr_index(attr).expect("holder");
        for t in r.tuples() {
            table.entry(t[idx]).or_default();
        }
    }
    for r in &holders {
        let idx = r.attr_index(attr).expect("holder");
        let proj = phi_projection(q, r, attr);
        if r.arity() == 1 {
            let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
            for t in r.tuples() {
                *counts.entry(t[0]).or_insert(0) += 1;
            }
            for (value, planes) in table.iter_mut() {
                planes.push(Hyperplane::Count(counts.get(value).copied().unwrap_or(0)));
            }
        } else {
            let mut slices: BTreeMap<u64, Vec<Vec<u64>>> = BTreeMap::new();
            for t in r.tuples() {
                let row: Vec<u64> = proj.iter().map(|&i| t[i]).collect();
                slices.entry(t[idx]).or_default().push(row);
            }
            for rows in slices.values_mut() {
                rows.sort();
            }
            for (value, planes) in table.iter_mut() {
                planes.push(Hyperplane::Tuples(
                    slices.get(value).cloned().unwrap_or_default(),
                ));
            }
        }
    }
    Ok(table)
}

/// The equivalence classes of one attribute: appearing values partitioned by
/// hyperplane-vector equality, plus the values appearing in no relation
/// (which form one further all-empty class when present).
#[derive(Clone, Debug)]
pub struct AttrClasses {
    pub classes: Vec<Vec<u64>>,
    pub non_appearing: Vec<u64>,
}

impl AttrClasses {
    /// Classes among appearing values.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Classes over the whole domain.
    pub fn class_count_full_domain(&self) -> usize {
        self.classes.len() + usize::from(!self.non_appearing.is_empty())
    }

    /// Per value, a class id; non-appearing values share one id.
    pub fn class_ids(&self, domain_size: u64) -> Vec<usize> {
        let mut ids = vec![self.classes.len(); domain_size as usize];
        for (ci, class) in self.classes.iter().enumerate() {
            for &v in class {
                ids[v as usize] = ci;
            }
        }
        ids
    }
}

pub fn equivalence_classes(q: &Query, attr: &str) -> Result<AttrClasses> {
    let table = hyperplane_table(q, attr)?;
    let mut groups: BTreeMap<&Vec<Hyperplane>, Vec<u64>> = BTreeMap::new();
    for (&value, planes) in &table {
        groups.entry(planes).or_default().push(value);
    }
    let mut classes: Vec<Vec<u64>> = groups.into_values().collect();
    classes.sort();
    let non_appearing = (0..q.width().domain_size())
        .filter(|v| !table.contains_key(v))
        .collect();
    Ok(AttrClasses {
        classes,
        non_appearing,
    })
}

/// One attribute's ordering: appearing values stably sorted by their
/// hyperplane vectors (ties stay in ascending value order), then the
/// non-appearing values ascending. Every equivalence class lands in one
/// consecutive run. Returns old values in new order.
pub fn order_attr(q: &Query, attr: &str) -> Result<Vec<u64>> {
    let table = hyperplane_table(q, attr)?;
    let mut appearing: Vec<u64> = table.keys().copied().collect();
    appearing.sort_unstable();
    appearing.sort_by(|a, b| table[a].cmp(&table[b]));
    let mut listing = appearing;
    listing.extend((0..q.width().domain_size()).filter(|v| !table.contains_key(v)));
    Ok(listing)
}

/// The full ordering: `order_attr` for every attribute of the query.
pub fn adora(q: &Query) -> Result<DomainOrdering> {
    let mut listings = BTreeMap::new();
    for attr in q.attrs() {
        listings.insert(attr.clone(), order_attr(q, attr)?);
    }
    DomainOrdering::from_listings(q.width(), listings)
}

/// Number of adjacent pairs in the ordering of `attr` whose values are not
/// equivalent.
pub fn count_class_switches(q: &Query, ordering: &DomainOrdering, attr: &str) -> Result<usize> {
    let classes = equivalence_classes(q, attr)?;
    let ids = classes.class_ids(q.width().domain_size());
    let listing = ordering
        .listing_for(attr)
        .ok_or_else(|| Error::UnknownAttribute(attr.to_string()))?;
    Ok(listing
        .windows(2)
        .filter(|w| ids[w[0] as usize] != ids[w[1] as usize])
        .count())
}

/// The gap grid boxes of one relation of a reordered query.
#[derive(Clone, Debug)]
pub struct RelationGridCover {
    pub relation: String,
    pub gap_boxes: Vec<GeneralBox>,
    pub dyadic_boxes: Vec<DyadicBox>,
    pub grid_cells: usize,
}

#[derive(Clone, Debug)]
pub struct GridCover {
    pub per_relation: Vec<RelationGridCover>,
}

impl GridCover {
    pub fn total_general_boxes(&self) -> usize {
        self.per_relation.iter().map(|r| r.gap_boxes.len()).sum()
    }

    pub fn total_dyadic_boxes(&self) -> usize {
        self.per_relation.iter().map(|r| r.dyadic_boxes.len()).sum()
    }
}

/// Build the grid cover of an already-reordered query: per attribute the
/// maximal runs of equally-classed values, per relation the product cells,
/// each cell classified by probing its minimal corner (cells are homogeneous
/// once classes are consecutive). Errors if some class is not consecutive,
/// i.e. the query was not reordered by a class-grouping ordering.
pub fn grid_cover(q: &Query) -> Result<GridCover> {
    let domain = q.width().domain_size();
    let mut runs_by_attr: BTreeMap<String, Vec<(u64, u64)>> = BTreeMap::new();
    for attr in q.attrs() {
        let classes = equivalence_classes(q, attr)?;
        let ids = classes.class_ids(domain);
        let mut runs: Vec<(u64, u64)> = Vec::new();
        let mut start = 0u64;
        for v in 1..domain {
            if ids[v as usize] != ids[(v - 1) as usize] {
                runs.push((start, v - 1));
                start = v;
            }
        }
        runs.push((start, domain - 1));
        let mut seen = std::collections::HashSet::new();
        for &(lo, _) in &runs {
            if !seen.insert(ids[lo as usize]) {
                return Err(Error::Invalid(format!(
                    "values of one equivalence class of `{attr}` are not consecutive; \
                     apply a class-grouping ordering first"
                )));
            }
        }
        runs_by_attr.insert(attr.clone(), runs);
    }
    let mut per_relation = Vec::new();
    for r in q.relations() {
        let attr_runs: Vec<&Vec<(u64, u64)>> = r.attrs().iter().map(|a| &runs_by_attr[a]).collect();
        let mut gap_boxes = Vec::new();
        let mut cells = 1usize;
        for runs in &attr_runs {
            cells *= runs.len();
        }
        let mut idx = vec![0usize; r.arity()];
        loop {
            let intervals: Vec<(u64, u64)> = idx
                .iter()
                .enumerate()
                .map(|(i, &k)| attr_runs[i][k])
                .collect();
            let corner: Vec<u64> = intervals.iter().map(|&(lo, _)| lo).collect();
            if !r.contains_tuple(&corner) {
                gap_boxes.push(GeneralBox::new(intervals));
            }
            // advance the cell index
            let mut i = 0;
            loop {
                if i == idx.len() {
                    break;
                }
                idx[i] += 1;
                if idx[i] < attr_runs[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
        let dyadic_boxes = gap_boxes
            .iter()
            .flat_map(|g| g.decompose(q.width()))
            .collect();
        per_relation.push(RelationGridCover {
            relation: r.name().to_string(),
            gap_boxes,
            dyadic_boxes,
            grid_cells: cells,
        });
    }
    Ok(GridCover { per_relation })
}
