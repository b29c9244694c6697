//! Property tests for the geometric and relational invariants.

use boxkit::geometry::{BitWidth, DyadicBox, GeneralBox, Prefix};
use boxkit::relational::{
    apply_ordering, parse_relation, serialize_relation, DomainOrdering, Hyperplane, Query, Relation,
};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn width3() -> BitWidth {
    BitWidth::new(3).unwrap()
}

fn arb_prefix(d: u32) -> impl Strategy<Value = Prefix> {
    (0..=d, any::<u64>()).prop_map(move |(len, bits)| {
        let bits = if len == 0 {
            0
        } else {
            (bits % (1 << len)) << (64 - len)
        };
        Prefix::from_bits(bits, len as u8)
    })
}

fn arb_box(d: u32, arity: usize) -> impl Strategy<Value = DyadicBox> {
    proptest::collection::vec(arb_prefix(d), arity).prop_map(DyadicBox::new)
}

fn arb_point(d: u32, arity: usize) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0..(1u64 << d), arity)
}

proptest! {
    #[test]
    fn containment_agrees_with_superbox_membership(
        b in arb_box(3, 2),
        p in arb_point(3, 2),
    ) {
        let d = width3();
        let unit = DyadicBox::unit(&p, d);
        let by_contains = b.contains_point(&p, d).unwrap();
        let by_superbox = unit.superboxes().contains(&b);
        prop_assert_eq!(by_contains, by_superbox);
    }

    #[test]
    fn superbox_count_matches_the_length_product(b in arb_box(3, 3)) {
        let sup = b.superboxes();
        let want: u64 = b.prefixes().iter().map(|p| p.len() as u64 + 1).product();
        prop_assert_eq!(sup.len() as u64, want);
        prop_assert!(want <= 4u64.pow(3));
        let mut dedup = sup.clone();
        dedup.sort();
        dedup.dedup();
        prop_assert_eq!(dedup.len(), sup.len());
    }

    #[test]
    fn decomposition_is_a_partition(
        lo1 in 0u64..8, hi1 in 0u64..8,
        lo2 in 0u64..8, hi2 in 0u64..8,
    ) {
        let d = width3();
        let g = GeneralBox::new(vec![
            (lo1.min(hi1), lo1.max(hi1)),
            (lo2.min(hi2), lo2.max(hi2)),
        ]);
        let parts = g.decompose(d);
        let vol: u64 = parts.iter().map(|b| b.volume(d)).sum();
        prop_assert_eq!(vol, g.volume());
        for (i, a) in parts.iter().enumerate() {
            prop_assert!(a.prefixes().iter().all(|p| p.len() as u32 <= 3));
            for b in parts.iter().skip(i + 1) {
                // pairwise disjoint: no common point, checked via prefix logic
                let overlap = a.prefixes().iter().zip(b.prefixes()).all(|(x, y)| {
                    x.is_prefix_of(y) || y.is_prefix_of(x)
                });
                prop_assert!(!overlap, "{a:?} overlaps {b:?}");
            }
        }
    }

    #[test]
    fn ordering_roundtrips_through_inverse(perm in Just(()).prop_perturb(|_, mut rng| {
        let mut v: Vec<u64> = (0..8).collect();
        for i in (1..8usize).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            v.swap(i, j);
        }
        v
    })) {
        let d = width3();
        let mut maps = BTreeMap::new();
        maps.insert("A".to_string(), perm.clone());
        maps.insert("B".to_string(), perm);
        let ordering = DomainOrdering::from_maps(d, maps).unwrap();
        let r = Relation::new(
            "R",
            vec!["A".into(), "B".into()],
            d,
            vec![vec![0, 1], vec![5, 5], vec![7, 2]],
        )
        .unwrap();
        let q = Query::new(vec![r]).unwrap();
        let back = apply_ordering(&apply_ordering(&q, &ordering).unwrap(), &ordering.invert()).unwrap();
        prop_assert_eq!(back.relations()[0].clone(), q.relations()[0].clone());
        prop_assert_eq!(ordering.invert().invert(), ordering);
    }

    #[test]
    fn relation_files_roundtrip(tuples in proptest::collection::btree_set(
        arb_point(2, 2), 0..20)
    ) {
        let d = BitWidth::new(2).unwrap();
        let r = Relation::new(
            "R",
            vec!["A".into(), "B".into()],
            d,
            tuples.into_iter().collect(),
        )
        .unwrap();
        let text = serialize_relation(&r);
        let parsed = parse_relation(&text).unwrap();
        prop_assert_eq!(&parsed, &r);
        // canonical form is a fixed point
        prop_assert_eq!(serialize_relation(&parsed), text);
    }
}

#[test]
fn hyperplane_multisets_survive_reordering() {
    // the multiset {H(R,A,a)} maps to {H(sigma(R),A,sigma_A(a))}
    let d = BitWidth::new(2).unwrap();
    let r = Relation::new(
        "R",
        vec!["A".into(), "B".into()],
        d,
        vec![vec![0, 0], vec![0, 1], vec![2, 1], vec![3, 3]],
    )
    .unwrap();
    let mut maps = BTreeMap::new();
    maps.insert("A".to_string(), vec![2, 0, 3, 1]);
    maps.insert("B".to_string(), vec![1, 3, 0, 2]);
    let ordering = DomainOrdering::from_maps(d, maps).unwrap();
    let renamed = boxkit::relational::apply_ordering_to_relation(&r, &ordering).unwrap();
    let sigma_b = ordering.map_for("B").unwrap();
    for a in 0..4u64 {
        let h = boxkit::relational::hyperplane(&r, "A", a).unwrap();
        let renamed_h = match h {
            Hyperplane::Tuples(rows) => {
                let mut rows: Vec<Vec<u64>> = rows
                    .into_iter()
                    .map(|row| row.iter().map(|&v| sigma_b[v as usize]).collect())
                    .collect();
                rows.sort();
                Hyperplane::Tuples(rows)
            }
            c => c,
        };
        let sigma_a = ordering.map_for("A").unwrap();
        let got = boxkit::relational::hyperplane(&renamed, "A", sigma_a[a as usize]).unwrap();
        assert_eq!(got, renamed_h, "a={a}");
    }
}
