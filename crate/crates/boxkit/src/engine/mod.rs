//! Witness-search join with certificate extraction, plus the
//! reorder-generate-join pipeline that runs the join under the grouping
//! ordering and maps results back to the original domain.

use crate::coverkit::{build_query_cover, BoxCover};
use crate::error::Result;
use crate::geometry::{geometric_resolution, BitWidth, DyadicBox, DyadicBoxIndex, Prefix};
use crate::ordering::adora;
use crate::relational::{apply_ordering, apply_ordering_to_points, project, DomainOrdering, Query};
use std::collections::{BTreeSet, HashSet};

/// Optional geometric-resolution pass; a performance feature, off by default.
#[derive(Clone, Copy, Debug)]
pub struct ResolutionConfig {
    pub enabled: bool,
    /// Maximum resolutions per witness round.
    pub budget: usize,
}

impl Default for ResolutionConfig {
    fn default() -> Self {
        ResolutionConfig {
            enabled: false,
            budget: 64,
        }
    }
}

/// Gap boxes over the full output space, extended with `*` on attributes a
/// box's relation does not carry, plus unit boxes of already-emitted output
/// tuples. Fully-covered subcubes are memoized: the box set only grows, so
/// coverage is monotone.
pub struct KnowledgeBase {
    index: DyadicBoxIndex,
    covered: HashSet<DyadicBox>,
    width: BitWidth,
    arity: usize,
}

impl KnowledgeBase {
    pub fn new(arity: usize, width: BitWidth) -> KnowledgeBase {
        KnowledgeBase {
            index: DyadicBoxIndex::new(arity),
            covered: HashSet::new(),
            width,
            arity,
        }
    }

    pub fn insert(&mut self, b: DyadicBox) -> Result<bool> {
        self.index.insert(b)
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn boxes(&self) -> Vec<DyadicBox> {
        self.index.iter_sorted()
    }

    pub fn width(&self) -> BitWidth {
        self.width
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn covered_now(&mut self, cube: &DyadicBox) -> bool {
        if self.covered.contains(cube) {
            return true;
        }
        if self
            .index
            .contains_superbox_of(cube)
            .expect("cube arity matches")
        {
            self.covered.insert(cube.clone());
            return true;
        }
        false
    }
}

/// The lexicographically least point not covered by the knowledge base, or
/// `None` when the boxes cover the whole cube. Recursive subcube descent:
/// split on the first attribute with a free bit, 0-branch first; a subcube
/// whose two halves are covered is recorded as covered itself.
pub fn find_witness(kb: &mut KnowledgeBase) -> Option<Vec<u64>> {
    fn search(kb: &mut KnowledgeBase, cube: &DyadicBox) -> Option<Vec<u64>> {
        if kb.covered_now(cube) {
            return None;
        }
        let Some(attr) = cube.first_free_attr(kb.width) else {
            let point = cube
                .prefixes()
                .iter()
                .map(|p| p.interval(kb.width).0)
                .collect();
            return Some(point);
        };
        let p = *cube.prefix(attr);
        for bit in [0, 1] {
            let child = cube.with_prefix(attr, p.child(bit));
            if let Some(found) = search(kb, &child) {
                return Some(found);
            }
        }
        kb.covered.insert(cube.clone());
        None
    }
    let root = DyadicBox::all_star(kb.arity);
    search(kb, &root)
}

/// Opportunistic sibling resolutions between indexed boxes, up to the budget.
/// Resolvents cover only points already covered, so the witness search result
/// is unchanged.
pub fn resolve_step(kb: &mut KnowledgeBase, cfg: &ResolutionConfig) -> usize {
    if !cfg.enabled {
        return 0;
    }
    let boxes = kb.boxes();
    let mut added = 0;
    'outer: for i in 0..boxes.len() {
        for j in (i + 1)..boxes.len() {
            for attr in 0..kb.arity {
                if added >= cfg.budget {
                    break 'outer;
                }
                if let Some(r) =
                    geometric_resolution(&boxes[i], &boxes[j], attr).expect("same arity")
                {
                    if !kb.index.contains_exact(&r) {
                        kb.insert(r).expect("arity matches");
                        added += 1;
                    }
                }
            }
        }
    }
    added
}

/// The join output together with the extracted certificate and witnesses.
#[derive(Clone, Debug)]
pub struct JoinResult {
    pub output: BTreeSet<Vec<u64>>,
    pub certificate: BTreeSet<(String, DyadicBox)>,
    pub witnesses: Vec<Vec<u64>>,
}

fn extend_to_universe(b: &DyadicBox, positions: &[usize], arity: usize) -> DyadicBox {
    let mut prefixes = vec![Prefix::EMPTY; arity];
    for (i, &pos) in positions.iter().enumerate() {
        prefixes[pos] = *b.prefix(i);
    }
    DyadicBox::new(prefixes)
}

/// Run the witness loop until the knowledge base covers the output space:
/// each witness either is a gap point, in which case the cover boxes that
/// contain it join the knowledge base and the certificate, or it is an output
/// tuple, emitted and inserted as a unit gap box. Requires every cover box to
/// be a gap box of its relation, and assumes the cover is complete.
pub fn tetris_join(q: &Query, cover: &BoxCover, cfg: &ResolutionConfig) -> Result<JoinResult> {
    cover.validate_gap_boxes(q)?;
    let width = q.width();
    let arity = q.attrs().len();
    let positions = q.relation_positions();
    let mut rel_indexes: Vec<(String, DyadicBoxIndex)> = Vec::new();
    for r in q.relations() {
        let mut ix = DyadicBoxIndex::new(r.arity());
        if let Some(boxes) = cover.boxes_for(r.name()) {
            for b in boxes {
                ix.insert(b.clone())?;
            }
        }
        rel_indexes.push((r.name().to_string(), ix));
    }

    let mut kb = KnowledgeBase::new(arity, width);
    let mut output = BTreeSet::new();
    let mut certificate = BTreeSet::new();
    let mut witnesses = Vec::new();

    while let Some(o) = find_witness(&mut kb) {
        let mut hit_any = false;
        for ((name, ix), pos) in rel_indexes.iter().zip(&positions) {
            let proj = project(&o, pos);
            let unit = DyadicBox::unit(&proj, width);
            for b in ix.query_superboxes(&unit)? {
                hit_any = true;
                kb.insert(extend_to_universe(&b, pos, arity))?;
                certificate.insert((name.clone(), b));
            }
        }
        if hit_any {
            witnesses.push(o);
            if cfg.enabled {
                resolve_step(&mut kb, cfg);
            }
        } else {
            kb.insert(DyadicBox::unit(&o, width))?;
            output.insert(o);
        }
    }
    Ok(JoinResult {
        output,
        certificate,
        witnesses,
    })
}

/// The full pipeline result: output mapped back to the original domain, the
/// reordered-space join result, and the ordering used.
#[derive(Clone, Debug)]
pub struct ReorderedJoin {
    pub output: BTreeSet<Vec<u64>>,
    pub inner: JoinResult,
    pub ordering: DomainOrdering,
}

/// Compute the grouping ordering, rename the query, build the maximal-box
/// cover, join, and map the output back through the inverse ordering.
pub fn tetris_reordered(q: &Query) -> Result<ReorderedJoin> {
    let ordering = adora(q)?;
    let renamed = apply_ordering(q, &ordering)?;
    let cover = build_query_cover(&renamed);
    let inner = tetris_join(&renamed, &cover, &ResolutionConfig::default())?;
    let output = apply_ordering_to_points(&inner.output, q.attrs(), &ordering.invert())?;
    Ok(ReorderedJoin {
        output,
        inner,
        ordering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BitWidth;
    use crate::instances;
    use crate::oracle;
    use crate::relational::Relation;

    fn w(d: u32) -> BitWidth {
        BitWidth::new(d).unwrap()
    }

    fn bx(tokens: &[&str]) -> DyadicBox {
        DyadicBox::parse_tokens(tokens).unwrap()
    }

    #[test]
    fn witness_search_examples() {
        let mut kb = KnowledgeBase::new(2, w(1));
        kb.insert(DyadicBox::all_star(2)).unwrap();
        assert_eq!(find_witness(&mut kb), None);

        let mut kb = KnowledgeBase::new(2, w(1));
        assert_eq!(find_witness(&mut kb), Some(vec![0, 0]));

        let mut kb = KnowledgeBase::new(2, w(1));
        kb.insert(bx(&["0", "*"])).unwrap();
        assert_eq!(find_witness(&mut kb), Some(vec![1, 0]));
    }

    #[test]
    fn witness_is_least_uncovered_point() {
        // cover everything except (1,0) and (1,1) at d=1
        let mut kb = KnowledgeBase::new(2, w(1));
        kb.insert(bx(&["0", "*"])).unwrap();
        assert_eq!(find_witness(&mut kb), Some(vec![1, 0]));
        kb.insert(bx(&["1", "0"])).unwrap();
        assert_eq!(find_witness(&mut kb), Some(vec![1, 1]));
        kb.insert(bx(&["1", "1"])).unwrap();
        assert_eq!(find_witness(&mut kb), None);
    }

    #[test]
    fn single_relation_single_tuple() {
        let r = Relation::new("R", vec!["A".into()], w(1), vec![vec![0]]).unwrap();
        let q = Query::new(vec![r]).unwrap();
        let mut cover = BoxCover::new();
        cover.insert("R", bx(&["1"]));
        let res = tetris_join(&q, &cover, &ResolutionConfig::default()).unwrap();
        assert_eq!(res.output.iter().collect::<Vec<_>>(), vec![&vec![0u64]]);
        assert_eq!(res.certificate.len(), 1);
        assert_eq!(res.witnesses.len(), 1);
    }

    #[test]
    fn rejects_non_gap_cover() {
        let r = Relation::new("R", vec!["A".into()], w(1), vec![vec![0]]).unwrap();
        let q = Query::new(vec![r]).unwrap();
        let mut cover = BoxCover::new();
        cover.insert("R", bx(&["0"]));
        assert!(tetris_join(&q, &cover, &ResolutionConfig::default()).is_err());
    }

    #[test]
    fn reordered_checkerboard_is_empty_with_small_certificate() {
        let (q, _) = instances::checkerboard(w(3));
        let res = tetris_reordered(&q).unwrap();
        assert!(res.output.is_empty());
        assert!(
            res.inner.certificate.len() <= 6,
            "certificate uses {} source boxes",
            res.inner.certificate.len()
        );
    }

    #[test]
    fn single_relation_join_returns_the_relation() {
        let r = Relation::new(
            "R",
            vec!["A".into(), "B".into()],
            w(2),
            vec![vec![0, 1], vec![3, 2]],
        )
        .unwrap();
        let q = Query::new(vec![r.clone()]).unwrap();
        let res = tetris_reordered(&q).unwrap();
        let want: BTreeSet<Vec<u64>> = r.tuples().iter().cloned().collect();
        assert_eq!(res.output, want);
    }

    #[test]
    fn matches_brute_force_on_random_queries() {
        let limits = oracle::OracleLimits::default();
        for seed in 0..40u64 {
            let q = instances::random_query(seed, w(2), 3, &[2, 2], &[0.3, 0.5]).unwrap();
            let want = oracle::brute_join(&q, &limits).unwrap();
            let cover = build_query_cover(&q);
            let res = tetris_join(&q, &cover, &ResolutionConfig::default()).unwrap();
            assert_eq!(res.output, want, "seed={seed}");
            let res2 = tetris_reordered(&q).unwrap();
            assert_eq!(res2.output, want, "seed={seed} (reordered)");
        }
    }

    #[test]
    fn certificate_covers_every_gap_and_witnesses_are_independent() {
        for seed in 100..120u64 {
            let q = instances::random_query(seed, w(2), 3, &[2, 2], &[0.4, 0.4]).unwrap();
            let cover = build_query_cover(&q);
            let res = tetris_join(&q, &cover, &ResolutionConfig::default()).unwrap();
            let positions = q.relation_positions();
            for p in oracle::cube_points(&q) {
                if res.output.contains(&p) {
                    continue;
                }
                let covered = res.certificate.iter().any(|(name, b)| {
                    let ri = q.relations().iter().position(|r| r.name() == name).unwrap();
                    b.contains_point_unchecked(&project(&p, &positions[ri]), q.width())
                });
                assert!(covered, "gap point {p:?} uncovered (seed={seed})");
            }
            let entries = cover.entries();
            for (i, o1) in res.witnesses.iter().enumerate() {
                for o2 in res.witnesses.iter().skip(i + 1) {
                    assert!(
                        oracle::independent(&q, &entries, o1, o2),
                        "witnesses {o1:?}, {o2:?} share a box (seed={seed})"
                    );
                }
            }
        }
    }

    #[test]
    fn resolution_adds_the_parent_of_sibling_boxes() {
        let mut kb = KnowledgeBase::new(2, w(1));
        kb.insert(bx(&["0", "*"])).unwrap();
        kb.insert(bx(&["1", "*"])).unwrap();
        let added = resolve_step(
            &mut kb,
            &ResolutionConfig {
                enabled: true,
                budget: 8,
            },
        );
        assert_eq!(added, 1);
        assert!(kb.boxes().contains(&DyadicBox::all_star(2)));

        // no sibling pairs: nothing to add
        let mut kb = KnowledgeBase::new(2, w(2));
        kb.insert(bx(&["00", "*"])).unwrap();
        kb.insert(bx(&["11", "*"])).unwrap();
        let added = resolve_step(
            &mut kb,
            &ResolutionConfig {
                enabled: true,
                budget: 8,
            },
        );
        assert_eq!(added, 0);
    }

    #[test]
    fn reordered_join_commutes_with_lifting() {
        let limits = oracle::OracleLimits::default();
        let q = instances::random_query(21, w(2), 3, &[2, 2], &[0.45, 0.5]).unwrap();
        let base_out = oracle::brute_join(&q, &limits).unwrap();
        let lifted = instances::lift_query(&q, 1).unwrap();
        let res = tetris_reordered(&lifted).unwrap();
        let want = instances::lift_points(&base_out, q.attrs().len(), 2, 1);
        assert_eq!(res.output.len(), base_out.len() << q.attrs().len());
        assert_eq!(res.output, want);
    }

    #[test]
    fn resolution_preserves_the_covered_region() {
        let d = w(2);
        let mut rng = instances::SplitMix64::new(77);
        for _ in 0..20 {
            let mut plain = KnowledgeBase::new(2, d);
            let mut resolved = KnowledgeBase::new(2, d);
            for _ in 0..(2 + rng.next_below(6)) {
                let prefix = |rng: &mut instances::SplitMix64| {
                    let len = rng.next_below(3) as u8;
                    let bits = rng.next_below(4) << 62;
                    crate::geometry::Prefix::from_bits(bits, len)
                };
                let b = DyadicBox::new(vec![prefix(&mut rng), prefix(&mut rng)]);
                plain.insert(b.clone()).unwrap();
                resolved.insert(b).unwrap();
            }
            resolve_step(
                &mut resolved,
                &ResolutionConfig {
                    enabled: true,
                    budget: 32,
                },
            );
            // same covered points, and the same next witness
            for a in 0..4u64 {
                for b in 0..4u64 {
                    let unit = DyadicBox::unit(&[a, b], d);
                    assert_eq!(
                        plain.index.contains_superbox_of(&unit).unwrap(),
                        resolved.index.contains_superbox_of(&unit).unwrap(),
                        "covered regions differ at ({a},{b})"
                    );
                }
            }
            assert_eq!(find_witness(&mut plain), find_witness(&mut resolved));
        }
    }

    #[test]
    fn resolution_never_changes_the_witness() {
        for seed in 0..20u64 {
            let q = instances::random_query(seed, w(2), 3, &[2, 2], &[0.5, 0.5]).unwrap();
            let cover = build_query_cover(&q);
            let plain = tetris_join(&q, &cover, &ResolutionConfig::default()).unwrap();
            let resolved = tetris_join(
                &q,
                &cover,
                &ResolutionConfig {
                    enabled: true,
                    budget: 16,
                },
            )
            .unwrap();
            assert_eq!(plain.output, resolved.output, "seed={seed}");
        }
    }
}
