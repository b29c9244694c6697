//! Instance generators: the checkerboard triangle family, bit-prefix query
//! lifting, the reordering-sensitive single-relation family, the
//! many-maximal-general-boxes family, the boolean-matrix reduction bridge,
//! and seeded random queries.

mod matrix;

pub use matrix::BoolMatrix;

use crate::error::{Error, Result};
use crate::geometry::BitWidth;
use crate::relational::{DomainOrdering, Query, Relation};
use std::collections::BTreeMap;

/// SplitMix64: tiny deterministic generator so instances are reproducible
/// across platforms without an RNG dependency.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`; `bound` must be positive.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        self.next_u64() % bound
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// The parity-grouping ordering: even values move to the low half of the
/// domain, odd values to the high half, preserving relative order.
pub fn parity_grouping(width: BitWidth) -> Vec<u64> {
    let half = width.domain_size() / 2;
    (0..width.domain_size())
        .map(|v| if v % 2 == 0 { v / 2 } else { half + v / 2 })
        .collect()
}

/// Triangle query R(A,B), S(B,C), T(A,C) whose relations hold exactly the
/// pairs with odd coordinate sum, plus the parity-grouping ordering that
/// turns each relation into two full quadrant blocks.
pub fn checkerboard(width: BitWidth) -> (Query, DomainOrdering) {
    let schemas = [("R", "A", "B"), ("S", "B", "C"), ("T", "A", "C")];
    let relations = schemas
        .iter()
        .map(|&(name, x, y)| {
            let mut tuples = Vec::new();
            for a in 0..width.domain_size() {
                for b in 0..width.domain_size() {
                    if (a + b) % 2 == 1 {
                        tuples.push(vec![a, b]);
                    }
                }
            }
            Relation::new(name, vec![x.to_string(), y.to_string()], width, tuples)
                .expect("valid checkerboard relation")
        })
        .collect();
    let q = Query::new(relations).expect("valid checkerboard query");
    let map = parity_grouping(width);
    let maps: BTreeMap<String, Vec<u64>> =
        q.attrs().iter().map(|a| (a.clone(), map.clone())).collect();
    let ordering = DomainOrdering::from_maps(width, maps).expect("parity map is a permutation");
    (q, ordering)
}

/// Widen every attribute by `p` prefix bits and replace each tuple by all
/// `2^(arity*p)` prefix combinations. An arity-`r` relation grows by `2^(rp)`.
pub fn lift_query(q: &Query, p: u32) -> Result<Query> {
    if p == 0 {
        return Err(Error::Invalid("lift requires p >= 1".into()));
    }
    let d = q.width().get();
    let new_width = BitWidth::new(d + p).map_err(|_| {
        Error::Invalid(format!(
            "lifted width {} exceeds the supported range",
            d + p
        ))
    })?;
    let relations = q
        .relations()
        .iter()
        .map(|r| {
            let arity = r.arity();
            let combos = 1u64 << (arity as u32 * p);
            let mut tuples = Vec::with_capacity(r.len() * combos as usize);
            for t in r.tuples() {
                for combo in 0..combos {
                    let tuple: Vec<u64> = t
                        .iter()
                        .enumerate()
                        .map(|(i, &v)| {
                            let prefix = (combo >> (i as u32 * p)) & ((1u64 << p) - 1);
                            (prefix << d) | v
                        })
                        .collect();
                    tuples.push(tuple);
                }
            }
            Relation::new(r.name(), r.attrs().to_vec(), new_width, tuples)
        })
        .collect::<Result<Vec<_>>>()?;
    Query::new(relations)
}

/// Lift a set of output points the same way a query lift does.
pub fn lift_points(
    points: &std::collections::BTreeSet<Vec<u64>>,
    n_attrs: usize,
    d: u32,
    p: u32,
) -> std::collections::BTreeSet<Vec<u64>> {
    let combos = 1u64 << (n_attrs as u32 * p);
    let mut out = std::collections::BTreeSet::new();
    for t in points {
        for combo in 0..combos {
            let tuple: Vec<u64> = t
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    let prefix = (combo >> (i as u32 * p)) & ((1u64 << p) - 1);
                    (prefix << d) | v
                })
                .collect();
            out.insert(tuple);
        }
    }
    out
}

/// The interleaving ordering: the low half of the domain moves to the even
/// positions, the high half to the odd positions. Inverse of
/// [`parity_grouping`].
pub fn half_interleaving(width: BitWidth) -> Vec<u64> {
    let half = width.domain_size() / 2;
    (0..width.domain_size())
        .map(|v| if v < half { 2 * v } else { 2 * (v - half) + 1 })
        .collect()
}

/// The two-block relation whose rows and columns are pairwise distinct, with
/// the interleaving ordering under which its minimum cover blows up
/// quadratically (the two tuple blocks shatter into a checkered diagonal
/// band).
pub fn adora_tight(width: BitWidth) -> Result<(Relation, DomainOrdering)> {
    let d = width.get();
    if d < 2 {
        return Err(Error::Invalid("adora-tight requires d >= 2".into()));
    }
    let half = 1u64 << (d - 1);
    let mut tuples = Vec::new();
    for a in 0..half {
        for b in 0..half {
            if a != b {
                tuples.push(vec![a, b]);
                tuples.push(vec![half + a, half + b]);
            }
        }
    }
    let rel = Relation::new("R", vec!["A".to_string(), "B".to_string()], width, tuples)?;
    let map = half_interleaving(width);
    let mut maps = BTreeMap::new();
    maps.insert("A".to_string(), map.clone());
    maps.insert("B".to_string(), map);
    let ordering = DomainOrdering::from_maps(width, maps)?;
    Ok((rel, ordering))
}

/// Two anti-diagonal stripes over an `N = 2^d` domain; its maximal general
/// gap boxes grow quadratically in `N` while the dyadic ones stay linear.
pub fn many_maximal(n: u64) -> Result<Relation> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Invalid(format!(
            "many-maximal requires N to be a power of two >= 2, got {n}"
        )));
    }
    let d = n.trailing_zeros();
    let width = BitWidth::new(d)?;
    let half = n / 2;
    let mut tuples = Vec::new();
    for i in 0..half {
        tuples.push(vec![i, half - i - 1]);
        tuples.push(vec![half + i, n - i - 1]);
    }
    Relation::new("R", vec!["A".to_string(), "B".to_string()], width, tuples)
}

/// The four-rows-per-row padding construction: each input row `i` with column
/// support `S_i` becomes rows `p_{i,1} = e_{m+2i}`, `r_{i,1} = e_{S_i + m+2i}`,
/// `r_{i,2} = e_{S_i + m+2i+1}`, `p_{i,2} = e_{m+2i+1}` of a `(4n) x (m+2n)`
/// matrix. Also returns the relation whose tuples are the 0-cells, with both
/// domains padded to the next power of two (padding adds tuples only).
pub fn reduce_2cbmp(m: &BoolMatrix) -> Result<(BoolMatrix, Relation)> {
    let (n_rows, n_cols) = (m.rows(), m.cols());
    for i in 0..n_rows {
        let ones = m.row_ones(i).len();
        if ones > 2 {
            return Err(Error::Invalid(format!(
                "row {i} has {ones} ones; the reduction needs at most 2 per row"
            )));
        }
    }
    let mut mp = BoolMatrix::new(4 * n_rows, n_cols + 2 * n_rows);
    for i in 0..n_rows {
        let base = 4 * i;
        let pad1 = n_cols + 2 * i;
        let pad2 = n_cols + 2 * i + 1;
        mp.set(base, pad1, true);
        for c in m.row_ones(i) {
            mp.set(base + 1, c, true);
            mp.set(base + 2, c, true);
        }
        mp.set(base + 1, pad1, true);
        mp.set(base + 2, pad2, true);
        mp.set(base + 3, pad2, true);
    }
    let rel = matrix_to_relation(&mp, "Rprime")?;
    Ok((mp, rel))
}

/// Embed a matrix as a relation: tuple `(a, b)` present iff cell (row `b`,
/// column `a`) is 0. Domains are padded to a shared power of two; padded
/// cells are tuples, so they add nothing that needs covering.
pub fn matrix_to_relation(m: &BoolMatrix, name: &str) -> Result<Relation> {
    let need = m.rows().max(m.cols()).max(2) as u64;
    let d = need.next_power_of_two().trailing_zeros();
    let width = BitWidth::new(d)?;
    let size = width.domain_size();
    let mut tuples = Vec::new();
    for a in 0..size {
        for b in 0..size {
            let one =
                (a as usize) < m.cols() && (b as usize) < m.rows() && m.get(b as usize, a as usize);
            if !one {
                tuples.push(vec![a, b]);
            }
        }
    }
    Relation::new(name, vec!["A".to_string(), "B".to_string()], width, tuples)
}

fn attr_name(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("X{i}")
    }
}

/// Reproducible random query: `arities[k]` distinct attributes are drawn for
/// relation `k` and each possible tuple is kept with probability
/// `densities[k]`.
pub fn random_query(
    seed: u64,
    width: BitWidth,
    n_attrs: usize,
    arities: &[usize],
    densities: &[f64],
) -> Result<Query> {
    if arities.len() != densities.len() || arities.is_empty() {
        return Err(Error::Invalid(
            "arities and densities must be non-empty and of equal length".into(),
        ));
    }
    if arities.iter().any(|&a| a == 0 || a > n_attrs) {
        return Err(Error::Invalid("arity out of range".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let attrs: Vec<String> = (0..n_attrs).map(attr_name).collect();
    let mut relations = Vec::new();
    for (k, (&arity, &density)) in arities.iter().zip(densities).enumerate() {
        let mut pool: Vec<usize> = (0..n_attrs).collect();
        rng.shuffle(&mut pool);
        let mut chosen: Vec<usize> = pool[..arity].to_vec();
        chosen.sort();
        let schema: Vec<String> = chosen.iter().map(|&i| attrs[i].clone()).collect();
        let total = width.domain_size().pow(arity as u32);
        let mut tuples = Vec::new();
        for idx in 0..total {
            if rng.next_f64() < density {
                let mut t = Vec::with_capacity(arity);
                let mut rest = idx;
                for _ in 0..arity {
                    t.push(rest % width.domain_size());
                    rest /= width.domain_size();
                }
                tuples.push(t);
            }
        }
        relations.push(Relation::new(format!("R{k}"), schema, width, tuples)?);
    }
    Query::new(relations)
}

/// Random relation with a target tuple count, for benchmark-scale inputs.
pub fn random_relation_sampled(
    seed: u64,
    width: BitWidth,
    name: &str,
    attrs: &[String],
    count: usize,
) -> Result<Relation> {
    let mut rng = SplitMix64::new(seed);
    let mut tuples = Vec::with_capacity(count);
    for _ in 0..count {
        let t: Vec<u64> = attrs
            .iter()
            .map(|_| rng.next_below(width.domain_size()))
            .collect();
        tuples.push(t);
    }
    Relation::new(name, attrs.to_vec(), width, tuples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: u32) -> BitWidth {
        BitWidth::new(d).unwrap()
    }

    #[test]
    fn checkerboard_shapes() {
        let (q, ordering) = checkerboard(w(3));
        assert_eq!(q.relations().len(), 3);
        for r in q.relations() {
            assert_eq!(r.len(), 32);
        }
        assert_eq!(q.attrs(), &["A", "B", "C"]);
        // parity grouping: evens first, odds second
        assert_eq!(
            ordering.listing_for("A").unwrap(),
            vec![0, 2, 4, 6, 1, 3, 5, 7]
        );

        let (q1, o1) = checkerboard(w(1));
        for r in q1.relations() {
            assert_eq!(r.tuples(), &[vec![0, 1], vec![1, 0]]);
        }
        assert!(o1.is_identity());
    }

    #[test]
    fn lift_sizes() {
        let (q, _) = checkerboard(w(2));
        let lifted = lift_query(&q, 1).unwrap();
        assert_eq!(lifted.width().get(), 3);
        for (r, l) in q.relations().iter().zip(lifted.relations()) {
            assert_eq!(l.len(), r.len() * 4); // 2^(2*1)
        }
        assert!(lift_query(&q, 0).is_err());
        assert!(lift_query(&q, 61).is_err());
    }

    #[test]
    fn adora_tight_shape() {
        let (r, ordering) = adora_tight(w(3)).unwrap();
        assert_eq!(r.len(), 24);
        assert!(r.contains_tuple(&[0, 1]));
        assert!(!r.contains_tuple(&[0, 0]));
        assert!(!r.contains_tuple(&[0, 4]));
        assert!(r.contains_tuple(&[4, 5]));
        // the halves interleave: low half to even positions
        assert_eq!(
            ordering.listing_for("A").unwrap(),
            vec![0, 4, 1, 5, 2, 6, 3, 7]
        );
        assert!(adora_tight(w(1)).is_err());
    }

    #[test]
    fn many_maximal_matches_the_stripe_layout() {
        let r = many_maximal(8).unwrap();
        let want: Vec<Vec<u64>> = vec![
            vec![0, 3],
            vec![1, 2],
            vec![2, 1],
            vec![3, 0],
            vec![4, 7],
            vec![5, 6],
            vec![6, 5],
            vec![7, 4],
        ];
        let mut want = want;
        want.sort();
        assert_eq!(r.tuples(), &want[..]);
        assert!(many_maximal(6).is_err());
    }

    #[test]
    fn reduce_2cbmp_matches_the_worked_example() {
        // M = [1 0 1 0; 0 0 1 1] maps to the 8x8 matrix with unit padding
        // columns 4..8.
        let m = BoolMatrix::parse("1010\n0011\n").unwrap();
        let (mp, rel) = reduce_2cbmp(&m).unwrap();
        let want = "\
00001000\n\
10101000\n\
10100100\n\
00000100\n\
00000010\n\
00110010\n\
00110001\n\
00000001\n";
        assert_eq!(mp.render(), want);
        assert_eq!(rel.width().get(), 3);
        assert_eq!(rel.len(), 64 - 16);

        // all-zero rows: only the 4n padding ones remain
        let z = BoolMatrix::parse("000\n000\n").unwrap();
        let (zp, _) = reduce_2cbmp(&z).unwrap();
        assert_eq!((zp.rows(), zp.cols()), (4 * 2, 3 + 2 * 2));
        assert_eq!(zp.count_ones(), 8);

        let bad = BoolMatrix::parse("111\n").unwrap();
        assert!(reduce_2cbmp(&bad).is_err());
    }

    #[test]
    fn random_query_is_reproducible() {
        let a = random_query(7, w(2), 3, &[2, 2], &[0.5, 0.5]).unwrap();
        let b = random_query(7, w(2), 3, &[2, 2], &[0.5, 0.5]).unwrap();
        for (x, y) in a.relations().iter().zip(b.relations()) {
            assert_eq!(x, y);
        }
        let empty = random_query(7, w(2), 3, &[2], &[0.0]).unwrap();
        assert!(empty.relations()[0].is_empty());
        let full = random_query(7, w(2), 3, &[2], &[1.0]).unwrap();
        assert_eq!(full.relations()[0].len(), 16);
    }
}
