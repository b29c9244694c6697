//! Exhaustive reference implementations used to verify everything else on
//! small instances: the join itself, maximal gap-box enumerations, exact
//! minimum covers and certificates, ordering searches, witness independence,
//! and consecutive-block counting for boolean matrices.

mod bits;
mod matrix_orders;
mod setcover;

pub use matrix_orders::{matrix_min_cover_fixed, matrix_min_cover_over_orders};

use crate::error::{Error, Result};
use crate::geometry::{DyadicBox, GeneralBox};
use crate::instances::BoolMatrix;
use crate::relational::{project, Query, Relation};
use bits::Bits;
use setcover::SetCoverInstance;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Guard rails checked before any exponential search starts.
#[derive(Clone, Debug)]
pub struct OracleLimits {
    pub max_d: u32,
    pub max_attrs: usize,
    pub max_tuples: usize,
    /// Cap on the product of per-attribute permutation counts in ordering
    /// searches.
    pub max_perm_space: u64,
    pub time_budget: Duration,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_d: 3,
            max_attrs: 4,
            max_tuples: 4096,
            max_perm_space: 40_000_000,
            time_budget: Duration::from_secs(600),
        }
    }
}

impl OracleLimits {
    pub fn deadline(&self) -> Instant {
        Instant::now() + self.time_budget
    }

    pub fn check_relation(&self, r: &Relation) -> Result<()> {
        if r.width().get() > self.max_d {
            return Err(Error::LimitExceeded(format!(
                "relation {} has d={}, limit max_d={}",
                r.name(),
                r.width().get(),
                self.max_d
            )));
        }
        if r.arity() > self.max_attrs {
            return Err(Error::LimitExceeded(format!(
                "relation {} has arity {}, limit max_attrs={}",
                r.name(),
                r.arity(),
                self.max_attrs
            )));
        }
        if r.len() > self.max_tuples {
            return Err(Error::LimitExceeded(format!(
                "relation {} has {} tuples, limit max_tuples={}",
                r.name(),
                r.len(),
                self.max_tuples
            )));
        }
        Ok(())
    }

    pub fn check_query(&self, q: &Query) -> Result<()> {
        if q.attrs().len() > self.max_attrs {
            return Err(Error::LimitExceeded(format!(
                "query has {} attributes, limit max_attrs={}",
                q.attrs().len(),
                self.max_attrs
            )));
        }
        if q.width().get() > self.max_d {
            return Err(Error::LimitExceeded(format!(
                "query has d={}, limit max_d={}",
                q.width().get(),
                self.max_d
            )));
        }
        if q.input_size() > self.max_tuples {
            return Err(Error::LimitExceeded(format!(
                "query has {} tuples, limit max_tuples={}",
                q.input_size(),
                self.max_tuples
            )));
        }
        Ok(())
    }
}

fn decode_point(idx: u64, n: usize, domain: u64) -> Vec<u64> {
    let mut p = vec![0u64; n];
    let mut rest = idx;
    for i in (0..n).rev() {
        p[i] = rest % domain;
        rest /= domain;
    }
    p
}

/// Enumerate the full output-space cube in lexicographic point order.
pub fn cube_points(q: &Query) -> impl Iterator<Item = Vec<u64>> + '_ {
    let n = q.attrs().len();
    let domain = q.width().domain_size();
    let total = domain.pow(n as u32);
    (0..total).map(move |idx| decode_point(idx, n, domain))
}

/// Nested-loop natural join over shared attribute names.
pub fn brute_join(q: &Query, limits: &OracleLimits) -> Result<BTreeSet<Vec<u64>>> {
    limits.check_query(q)?;
    let positions = q.relation_positions();
    let mut out = BTreeSet::new();
    for p in cube_points(q) {
        let hit = q
            .relations()
            .iter()
            .zip(&positions)
            .all(|(r, pos)| r.contains_tuple(&project(&p, pos)));
        if hit {
            out.insert(p);
        }
    }
    Ok(out)
}

fn relation_has_tuple_in(r: &Relation, g: &GeneralBox) -> bool {
    r.tuples().iter().any(|t| g.contains_point(t))
}

/// All maximal general gap boxes: every interval product that is tuple-free
/// and cannot be extended by one step along any axis.
pub fn enumerate_maximal_general_gap_boxes(
    r: &Relation,
    limits: &OracleLimits,
) -> Result<Vec<GeneralBox>> {
    limits.check_relation(r)?;
    let n = r.arity();
    let domain = r.width().domain_size();
    let full_cube = GeneralBox::new(vec![(0, domain - 1); n]);
    if r.is_empty() {
        return Ok(vec![full_cube]);
    }
    if r.len() as u64 == domain.pow(n as u32) {
        return Ok(Vec::new());
    }
    let intervals: Vec<(u64, u64)> = (0..domain)
        .flat_map(|lo| (lo..domain).map(move |hi| (lo, hi)))
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![Vec::with_capacity(n)];
    while let Some(acc) = stack.pop() {
        if acc.len() == n {
            let g = GeneralBox::new(acc);
            if relation_has_tuple_in(r, &g) {
                continue;
            }
            let maximal = (0..n).all(|axis| {
                let (lo, hi) = g.interval(axis);
                let blocked_lo = lo == 0 || {
                    let mut iv = g.intervals().to_vec();
                    iv[axis] = (lo - 1, lo - 1);
                    relation_has_tuple_in(r, &GeneralBox::new(iv))
                };
                let blocked_hi = hi == domain - 1 || {
                    let mut iv = g.intervals().to_vec();
                    iv[axis] = (hi + 1, hi + 1);
                    relation_has_tuple_in(r, &GeneralBox::new(iv))
                };
                blocked_lo && blocked_hi
            });
            if maximal {
                out.push(g);
            }
            continue;
        }
        for &iv in intervals.iter().rev() {
            let mut next = acc.clone();
            next.push(iv);
            stack.push(next);
        }
    }
    out.sort();
    Ok(out)
}

/// All maximal dyadic gap boxes, by enumerating every dyadic box.
pub fn enumerate_maximal_dyadic_gap_boxes(r: &Relation) -> BTreeSet<DyadicBox> {
    let width = r.width();
    let n = r.arity();
    let mut all = Vec::new();
    for len in 0..=width.get() {
        for v in 0..(1u64 << len) {
            let bits = if len == 0 { 0 } else { v << (64 - len) };
            all.push(crate::geometry::Prefix::from_bits(bits, len as u8));
        }
    }
    let mut boxes = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(boxes.len() * all.len());
        for acc in &boxes {
            for &p in &all {
                let mut a = acc.clone();
                a.push(p);
                next.push(a);
            }
        }
        boxes = next;
    }
    let gap = |b: &DyadicBox| {
        !r.tuples()
            .iter()
            .any(|t| b.contains_point_unchecked(t, width))
    };
    boxes
        .into_iter()
        .map(DyadicBox::new)
        .filter(|b| gap(b))
        .filter(|b| {
            (0..n).all(|attr| match b.prefix(attr).parent() {
                Some(parent) => !gap(&b.with_prefix(attr, parent)),
                None => true,
            })
        })
        .collect()
}

/// Exact minimum box cover of the relation's complement, using maximal
/// general gap boxes as candidates (any cover box can be grown to a maximal
/// one without uncovering anything).
pub fn min_box_cover(r: &Relation, limits: &OracleLimits) -> Result<(usize, Vec<GeneralBox>)> {
    limits.check_relation(r)?;
    let n = r.arity();
    let domain = r.width().domain_size();
    let total = domain.pow(n as u32);
    let complement: Vec<Vec<u64>> = (0..total)
        .map(|idx| decode_point(idx, n, domain))
        .filter(|p| !r.contains_tuple(p))
        .collect();
    if complement.is_empty() {
        return Ok((0, Vec::new()));
    }
    let candidates = enumerate_maximal_general_gap_boxes(r, limits)?;
    let masks: Vec<Bits> = candidates
        .iter()
        .map(|g| {
            let mut b = Bits::zeros(complement.len());
            for (i, p) in complement.iter().enumerate() {
                if g.contains_point(p) {
                    b.set(i);
                }
            }
            b
        })
        .collect();
    let inst = SetCoverInstance::new(complement.len(), masks);
    let (k, chosen) = inst.solve(Some(limits.deadline()))?;
    Ok((
        k,
        chosen.into_iter().map(|i| candidates[i].clone()).collect(),
    ))
}

/// Minimum cover size of a whole query: covers are per relation, so the
/// minimum is the per-relation sum.
pub fn min_query_cover(q: &Query, limits: &OracleLimits) -> Result<usize> {
    let mut total = 0;
    for r in q.relations() {
        total += min_box_cover(r, limits)?.0;
    }
    Ok(total)
}

fn permutations(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut items: Vec<u64> = (0..n as u64).collect();
    fn heap(k: usize, items: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out.sort();
    out
}

/// Exhaustive search over per-attribute domain orderings for the minimum
/// summed per-relation cover. `fast_symmetry` pins value 0 in place for each
/// attribute: a big speedup that is not sound in general, so it is off by
/// default and never used by verification suites.
pub fn min_cover_over_orderings(
    q: &Query,
    limits: &OracleLimits,
    fast_symmetry: bool,
) -> Result<(usize, crate::relational::DomainOrdering)> {
    limits.check_query(q)?;
    let domain = q.width().domain_size();
    if domain > 4 {
        return Err(Error::LimitExceeded(format!(
            "ordering search needs 2^d <= 4 per attribute, got {domain}"
        )));
    }
    let mut perms = permutations(domain as usize);
    if fast_symmetry {
        perms.retain(|p| p[0] == 0);
    }
    let n_attrs = q.attrs().len();
    let space = (perms.len() as u64).checked_pow(n_attrs as u32);
    match space {
        Some(s) if s <= limits.max_perm_space => {}
        _ => {
            return Err(Error::LimitExceeded(format!(
                "ordering search space {}^{} exceeds max_perm_space={}",
                perms.len(),
                n_attrs,
                limits.max_perm_space
            )));
        }
    }
    let deadline = limits.deadline();

    // memoize the per-relation cover under the projection of the ordering
    // onto that relation's attributes
    let mut memo: std::collections::HashMap<(usize, Vec<u64>), usize> =
        std::collections::HashMap::new();
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut choice = vec![0usize; n_attrs];
    let mut iterations = 0u64;
    loop {
        iterations += 1;
        if iterations % 512 == 0 && Instant::now() > deadline {
            return Err(Error::LimitExceeded(
                "time budget exhausted in ordering search".into(),
            ));
        }
        let mut total = 0usize;
        for (ri, r) in q.relations().iter().enumerate() {
            let mut key = Vec::with_capacity(r.arity() * domain as usize);
            for a in r.attrs() {
                let ai = q.attr_index(a).expect("attr in universe");
                key.extend_from_slice(&perms[choice[ai]]);
            }
            let entry = match memo.get(&(ri, key.clone())) {
                Some(&v) => v,
                None => {
                    let mut ordering =
                        crate::relational::DomainOrdering::identity(r.attrs(), q.width());
                    for a in r.attrs() {
                        let ai = q.attr_index(a).expect("attr in universe");
                        ordering.set_map(a, perms[choice[ai]].clone());
                    }
                    let renamed = crate::relational::apply_ordering_to_relation(r, &ordering)?;
                    let v = min_box_cover(&renamed, limits)?.0;
                    memo.insert((ri, key), v);
                    v
                }
            };
            total += entry;
        }
        match &best {
            Some((b, _)) if *b <= total => {}
            _ => best = Some((total, choice.clone())),
        }
        // advance the per-attribute choice vector
        let mut i = 0;
        loop {
            if i == n_attrs {
                let (k, choice) = best.expect("at least one ordering evaluated");
                let mut ordering =
                    crate::relational::DomainOrdering::identity(q.attrs(), q.width());
                for (ai, a) in q.attrs().iter().enumerate() {
                    ordering.set_map(a, perms[choice[ai]].clone());
                }
                return Ok((k, ordering));
            }
            choice[i] += 1;
            if choice[i] < perms.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Exact minimum certificate: the smallest subset of `(relation, box)` pairs
/// whose universe extensions cover every non-output point. Pairs with equal
/// extensions collapse to one candidate.
pub fn min_certificate(
    q: &Query,
    boxes: &[(String, DyadicBox)],
    limits: &OracleLimits,
) -> Result<(usize, Vec<(String, DyadicBox)>)> {
    limits.check_query(q)?;
    let output = brute_join(q, limits)?;
    let gaps: Vec<Vec<u64>> = cube_points(q).filter(|p| !output.contains(p)).collect();
    if gaps.is_empty() {
        return Ok((0, Vec::new()));
    }
    let positions = q.relation_positions();
    let rel_pos = |name: &str| -> Result<&Vec<usize>> {
        q.relations()
            .iter()
            .position(|r| r.name() == name)
            .map(|i| &positions[i])
            .ok_or_else(|| Error::SchemaMismatch(format!("unknown relation `{name}` in cover")))
    };
    let width = q.width();
    let mut masks: Vec<Bits> = Vec::new();
    let mut reps: Vec<(String, DyadicBox)> = Vec::new();
    let mut seen: std::collections::HashMap<Bits, usize> = std::collections::HashMap::new();
    for (name, b) in boxes {
        let pos = rel_pos(name)?;
        let mut mask = Bits::zeros(gaps.len());
        for (i, p) in gaps.iter().enumerate() {
            if b.contains_point_unchecked(&project(p, pos), width) {
                mask.set(i);
            }
        }
        if seen.contains_key(&mask) {
            continue;
        }
        seen.insert(mask.clone(), masks.len());
        masks.push(mask);
        reps.push((name.clone(), b.clone()));
    }
    let inst = SetCoverInstance::new(gaps.len(), masks);
    let (k, chosen) = inst.solve(Some(limits.deadline()))?;
    Ok((k, chosen.into_iter().map(|i| reps[i].clone()).collect()))
}

/// Exact minimum certificate over every possible cover: the smallest set of
/// general gap boxes (drawn from any relation, extended over the universe)
/// covering every non-output point. Maximal general gap boxes suffice as
/// candidates since growing a gap box never uncovers anything.
pub fn min_general_certificate(
    q: &Query,
    limits: &OracleLimits,
) -> Result<(usize, Vec<(String, GeneralBox)>)> {
    limits.check_query(q)?;
    let output = brute_join(q, limits)?;
    let gaps: Vec<Vec<u64>> = cube_points(q).filter(|p| !output.contains(p)).collect();
    if gaps.is_empty() {
        return Ok((0, Vec::new()));
    }
    let positions = q.relation_positions();
    let mut masks: Vec<Bits> = Vec::new();
    let mut reps: Vec<(String, GeneralBox)> = Vec::new();
    let mut seen: std::collections::HashMap<Bits, usize> = std::collections::HashMap::new();
    for (r, pos) in q.relations().iter().zip(&positions) {
        for g in enumerate_maximal_general_gap_boxes(r, limits)? {
            let mut mask = Bits::zeros(gaps.len());
            for (i, p) in gaps.iter().enumerate() {
                if g.contains_point(&project(p, pos)) {
                    mask.set(i);
                }
            }
            if seen.contains_key(&mask) {
                continue;
            }
            seen.insert(mask.clone(), masks.len());
            masks.push(mask);
            reps.push((r.name().to_string(), g));
        }
    }
    let inst = SetCoverInstance::new(gaps.len(), masks);
    let (k, chosen) = inst.solve(Some(limits.deadline()))?;
    Ok((k, chosen.into_iter().map(|i| reps[i].clone()).collect()))
}

/// True iff no extended box of the cover contains both points.
pub fn independent(q: &Query, boxes: &[(String, DyadicBox)], o1: &[u64], o2: &[u64]) -> bool {
    let positions = q.relation_positions();
    let width = q.width();
    for (name, b) in boxes {
        let Some(ri) = q.relations().iter().position(|r| r.name() == name) else {
            continue;
        };
        let pos = &positions[ri];
        if b.contains_point_unchecked(&project(o1, pos), width)
            && b.contains_point_unchecked(&project(o2, pos), width)
        {
            return false;
        }
    }
    true
}

/// Total number of maximal 1-runs over all rows.
pub fn consecutive_blocks(m: &BoolMatrix) -> usize {
    let mut total = 0;
    for r in 0..m.rows() {
        let mut in_run = false;
        for c in 0..m.cols() {
            let one = m.get(r, c);
            if one && !in_run {
                total += 1;
            }
            in_run = one;
        }
    }
    total
}

/// Exhaustive minimum of `consecutive_blocks` over column orders.
pub fn min_cb_over_columns(m: &BoolMatrix, limits: &OracleLimits) -> Result<(usize, Vec<usize>)> {
    if m.cols() > 8 {
        return Err(Error::LimitExceeded(format!(
            "column-order search needs <= 8 columns, got {}",
            m.cols()
        )));
    }
    let deadline = limits.deadline();
    let row_order: Vec<usize> = (0..m.rows()).collect();
    let mut best = usize::MAX;
    let mut best_order = Vec::new();
    let mut count = 0u64;
    for perm in permutations(m.cols()) {
        count += 1;
        if count % 4096 == 0 && Instant::now() > deadline {
            return Err(Error::LimitExceeded(
                "time budget exhausted in column-order search".into(),
            ));
        }
        let order: Vec<usize> = perm.iter().map(|&v| v as usize).collect();
        let cb = consecutive_blocks(&m.permuted(&row_order, &order));
        if cb < best {
            best = cb;
            best_order = order;
        }
    }
    Ok((best, best_order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BitWidth;
    use crate::instances;

    fn rel(name: &str, attrs: &[&str], d: u32, tuples: &[&[u64]]) -> Relation {
        Relation::new(
            name,
            attrs.iter().map(|s| s.to_string()).collect(),
            BitWidth::new(d).unwrap(),
            tuples.iter().map(|t| t.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn brute_join_basics() {
        let limits = OracleLimits::default();
        let r = rel("R", &["A"], 1, &[&[0], &[1]]);
        let s = rel("S", &["A"], 1, &[&[1]]);
        let q = Query::new(vec![r, s]).unwrap();
        let out = brute_join(&q, &limits).unwrap();
        assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![vec![1]]);
    }

    #[test]
    fn checkerboard_join_is_empty() {
        let limits = OracleLimits::default();
        for d in 1..=3 {
            let (q, _) = instances::checkerboard(BitWidth::new(d).unwrap());
            assert!(brute_join(&q, &limits).unwrap().is_empty(), "d={d}");
        }
    }

    #[test]
    fn lifting_preserves_join_structure() {
        let limits = OracleLimits::default();
        let q =
            instances::random_query(3, BitWidth::new(2).unwrap(), 3, &[2, 2], &[0.4, 0.5]).unwrap();
        let base = brute_join(&q, &limits).unwrap();
        let lifted_q = instances::lift_query(&q, 1).unwrap();
        let lifted_out = brute_join(&lifted_q, &limits).unwrap();
        let want = instances::lift_points(&base, q.attrs().len(), 2, 1);
        assert_eq!(lifted_out, want);
        assert_eq!(lifted_out.len(), base.len() << q.attrs().len());
    }

    #[test]
    fn maximal_general_boxes_degenerate_cases() {
        let limits = OracleLimits::default();
        let empty = rel("R", &["A", "B"], 2, &[]);
        assert_eq!(
            enumerate_maximal_general_gap_boxes(&empty, &limits).unwrap(),
            vec![GeneralBox::new(vec![(0, 3), (0, 3)])]
        );
        let full_tuples: Vec<Vec<u64>> = (0..4)
            .flat_map(|a| (0..4).map(move |b| vec![a, b]))
            .collect();
        let full = Relation::new(
            "R",
            vec!["A".into(), "B".into()],
            BitWidth::new(2).unwrap(),
            full_tuples,
        )
        .unwrap();
        assert!(enumerate_maximal_general_gap_boxes(&full, &limits)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn many_maximal_growth() {
        let limits = OracleLimits::default();
        let r8 = instances::many_maximal(8).unwrap();
        let general = enumerate_maximal_general_gap_boxes(&r8, &limits).unwrap();
        assert!(general.len() >= 20, "got {}", general.len());
        let dyadic = enumerate_maximal_dyadic_gap_boxes(&r8);
        assert!(dyadic.len() as u64 <= 8 * 4 * 4, "got {}", dyadic.len());

        let r4 = instances::many_maximal(4).unwrap();
        let general4 = enumerate_maximal_general_gap_boxes(&r4, &limits).unwrap();
        assert!(general4.len() >= 6, "got {}", general4.len());
    }

    #[test]
    fn min_cover_single_tuple() {
        let limits = OracleLimits::default();
        let r = rel("R", &["A", "B"], 1, &[&[0, 0]]);
        let (k, cover) = min_box_cover(&r, &limits).unwrap();
        assert_eq!(k, 2);
        assert_eq!(cover.len(), 2);
    }

    #[test]
    fn min_cover_witness_is_a_valid_cover() {
        let limits = OracleLimits::default();
        for seed in 0..8u64 {
            let q =
                crate::instances::random_query(seed, BitWidth::new(2).unwrap(), 2, &[2], &[0.4])
                    .unwrap();
            let r = &q.relations()[0];
            let (k, cover) = min_box_cover(r, &limits).unwrap();
            assert_eq!(cover.len(), k);
            let domain = r.width().domain_size();
            for a in 0..domain {
                for b in 0..domain {
                    let p = vec![a, b];
                    let covered = cover.iter().any(|g| g.contains_point(&p));
                    if r.contains_tuple(&p) {
                        assert!(!covered, "tuple {p:?} covered (seed={seed})");
                    } else {
                        assert!(covered, "gap {p:?} uncovered (seed={seed})");
                    }
                }
            }
        }
    }

    #[test]
    fn cb_worked_example() {
        // two runs in the first row, one in the second
        let m = BoolMatrix::parse("1010\n0011\n").unwrap();
        assert_eq!(consecutive_blocks(&m), 3);
        assert_eq!(consecutive_blocks(&BoolMatrix::new(3, 4)), 0);
        let limits = OracleLimits::default();
        let (k, order) = min_cb_over_columns(&m, &limits).unwrap();
        assert_eq!(k, 2);
        let permuted = m.permuted(&[0, 1], &order);
        assert_eq!(consecutive_blocks(&permuted), 2);
    }

    #[test]
    fn certificate_oracle_degenerate_cases() {
        let limits = OracleLimits::default();
        // full-cube output needs no certificate
        let full_tuples: Vec<Vec<u64>> = (0..2).map(|a| vec![a]).collect();
        let r = Relation::new(
            "R",
            vec!["A".into()],
            BitWidth::new(1).unwrap(),
            full_tuples,
        )
        .unwrap();
        let q = Query::new(vec![r]).unwrap();
        let (c, chosen) = min_certificate(&q, &[], &limits).unwrap();
        assert_eq!(c, 0);
        assert!(chosen.is_empty());
        let (cg, _) = min_general_certificate(&q, &limits).unwrap();
        assert_eq!(cg, 0);
    }

    #[test]
    fn independence_oracle_examples() {
        let r = rel("R", &["A", "B"], 1, &[&[0, 0]]);
        let q = Query::new(vec![r]).unwrap();
        let b1 = DyadicBox::parse_tokens(&["1", "*"]).unwrap();
        let b2 = DyadicBox::parse_tokens(&["*", "1"]).unwrap();
        let cover = vec![("R".to_string(), b1), ("R".to_string(), b2)];
        // a point is never independent of itself once some box covers it
        assert!(!independent(&q, &cover, &[1, 0], &[1, 0]));
        // points covered only by disjoint boxes are independent
        assert!(independent(&q, &cover, &[1, 0], &[0, 1]));
    }

    #[test]
    fn hyperplane_equal_pairs_on_the_two_band_relation() {
        // two bands of tuples: values 0,1 share a slice, as do 2,3
        let r = rel(
            "R",
            &["A", "B"],
            2,
            &[&[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 1], &[3, 1]],
        );
        use crate::relational::hyperplane;
        let h0 = hyperplane(&r, "A", 0).unwrap();
        let h1 = hyperplane(&r, "A", 1).unwrap();
        let h2 = hyperplane(&r, "A", 2).unwrap();
        let h3 = hyperplane(&r, "A", 3).unwrap();
        assert_eq!(h0, h1);
        assert_eq!(h2, h3);
        assert_ne!(h0, h2);
        let q = Query::new(vec![r]).unwrap();
        let classes = crate::ordering::equivalence_classes(&q, "A").unwrap();
        assert_eq!(classes.classes, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn limits_are_enforced() {
        let limits = OracleLimits {
            max_tuples: 1,
            ..OracleLimits::default()
        };
        let r = rel("R", &["A"], 1, &[&[0], &[1]]);
        let q = Query::new(vec![r]).unwrap();
        let err = brute_join(&q, &limits).unwrap_err();
        assert!(err.to_string().contains("max_tuples"), "{err}");
    }
}
