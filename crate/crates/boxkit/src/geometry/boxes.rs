use super::prefix::{BitWidth, Prefix};
use crate::error::{Error, Result};

/// An axis-aligned box encoded as one bit prefix per attribute of its schema.
///
/// Attributes are positional; callers keep the schema (attribute names) on the
/// owning relation. The all-`*` box spans the whole cube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicBox {
    prefixes: Vec<Prefix>,
}

impl DyadicBox {
    pub fn new(prefixes: Vec<Prefix>) -> DyadicBox {
        DyadicBox { prefixes }
    }

    /// The box spanning the whole cube over `arity` attributes.
    pub fn all_star(arity: usize) -> DyadicBox {
        DyadicBox {
            prefixes: vec![Prefix::EMPTY; arity],
        }
    }

    /// The unit box containing exactly `point`.
    pub fn unit(point: &[u64], width: BitWidth) -> DyadicBox {
        DyadicBox {
            prefixes: point
                .iter()
                .map(|&v| Prefix::from_value(v, width))
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.prefixes.len()
    }

    pub fn prefix(&self, attr: usize) -> &Prefix {
        &self.prefixes[attr]
    }

    pub fn prefixes(&self) -> &[Prefix] {
        &self.prefixes
    }

    pub fn with_prefix(&self, attr: usize, p: Prefix) -> DyadicBox {
        let mut out = self.clone();
        out.prefixes[attr] = p;
        out
    }

    pub fn is_unit(&self, width: BitWidth) -> bool {
        self.prefixes.iter().all(|p| p.is_full(width))
    }

    fn check_arity(&self, len: usize, what: &str) -> Result<()> {
        if self.arity() == len {
            Ok(())
        } else {
            Err(Error::SchemaMismatch(format!(
                "{what}: box arity {} vs {len}",
                self.arity()
            )))
        }
    }

    /// True iff the box contains `point`; errors on arity mismatch.
    pub fn contains_point(&self, point: &[u64], width: BitWidth) -> Result<bool> {
        self.check_arity(point.len(), "contains_point")?;
        Ok(self.contains_point_unchecked(point, width))
    }

    pub fn contains_point_unchecked(&self, point: &[u64], width: BitWidth) -> bool {
        self.prefixes
            .iter()
            .zip(point)
            .all(|(p, &v)| p.matches_value(v, width))
    }

    /// True iff `self` contains `other` as a region (per-attribute prefix containment).
    pub fn contains_box(&self, other: &DyadicBox) -> bool {
        self.arity() == other.arity()
            && self
                .prefixes
                .iter()
                .zip(&other.prefixes)
                .all(|(a, b)| a.is_prefix_of(b))
    }

    /// Number of per-attribute truncations, `prod(len_i + 1)`.
    pub fn superbox_count(&self) -> u64 {
        self.prefixes.iter().map(|p| p.len() as u64 + 1).product()
    }

    /// Every dyadic box containing this one: all per-attribute prefix
    /// truncations, including the box itself and the all-`*` box.
    pub fn superboxes(&self) -> Vec<DyadicBox> {
        let chains: Vec<Vec<Prefix>> = self
            .prefixes
            .iter()
            .map(|p| {
                let mut chain = Vec::with_capacity(p.len() as usize + 1);
                let mut cur = *p;
                chain.push(cur);
                while let Some(up) = cur.parent() {
                    chain.push(up);
                    cur = up;
                }
                chain
            })
            .collect();
        let mut out = Vec::with_capacity(self.superbox_count() as usize);
        let mut acc = Vec::with_capacity(self.arity());
        fn rec(chains: &[Vec<Prefix>], acc: &mut Vec<Prefix>, out: &mut Vec<DyadicBox>) {
            if acc.len() == chains.len() {
                out.push(DyadicBox::new(acc.clone()));
                return;
            }
            for p in &chains[acc.len()] {
                acc.push(*p);
                rec(chains, acc, out);
                acc.pop();
            }
        }
        rec(&chains, &mut acc, &mut out);
        out
    }

    /// Sub-boxes of `self` that contain `point`: per attribute, every
    /// extension of the prefix toward the point's full encoding.
    pub fn subboxes_containing(&self, point: &[u64], width: BitWidth) -> Vec<DyadicBox> {
        debug_assert!(self.contains_point_unchecked(point, width));
        DyadicBox::unit(point, width)
            .superboxes()
            .into_iter()
            .filter(|b| self.contains_box(b))
            .collect()
    }

    /// First attribute whose prefix is shorter than `d`, if any.
    pub fn first_free_attr(&self, width: BitWidth) -> Option<usize> {
        self.prefixes.iter().position(|p| !p.is_full(width))
    }

    /// Number of values contained, `prod 2^(d - len_i)`.
    pub fn volume(&self, width: BitWidth) -> u64 {
        self.prefixes
            .iter()
            .map(|p| 1u64 << (width.get() - p.len() as u32))
            .product()
    }

    pub fn to_general(&self, width: BitWidth) -> GeneralBox {
        GeneralBox::new(self.prefixes.iter().map(|p| p.interval(width)).collect())
    }

    pub fn render(&self) -> String {
        self.prefixes
            .iter()
            .map(|p| p.render())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_tokens(tokens: &[&str]) -> Result<DyadicBox> {
        let prefixes = tokens
            .iter()
            .map(|t| Prefix::parse(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(DyadicBox::new(prefixes))
    }
}

impl std::fmt::Debug for DyadicBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{}>", self.render())
    }
}

/// Merge two boxes adjacent along `attr`: the union of their intervals on
/// `attr`, the intersection everywhere else. Defined when the `attr` prefixes
/// are siblings and every other attribute pair is comparable; returns `None`
/// otherwise.
pub fn geometric_resolution(
    b1: &DyadicBox,
    b2: &DyadicBox,
    attr: usize,
) -> Result<Option<DyadicBox>> {
    if b1.arity() != b2.arity() {
        return Err(Error::SchemaMismatch(format!(
            "resolution: box arity {} vs {}",
            b1.arity(),
            b2.arity()
        )));
    }
    if attr >= b1.arity() {
        return Err(Error::SchemaMismatch(format!(
            "resolution: attribute {attr} out of range"
        )));
    }
    if !b1.prefix(attr).is_sibling_of(b2.prefix(attr)) {
        return Ok(None);
    }
    let mut prefixes = Vec::with_capacity(b1.arity());
    for i in 0..b1.arity() {
        if i == attr {
            prefixes.push(b1.prefix(i).parent().expect("sibling implies len >= 1"));
        } else {
            let (p, q) = (b1.prefix(i), b2.prefix(i));
            if p.is_prefix_of(q) {
                prefixes.push(*q);
            } else if q.is_prefix_of(p) {
                prefixes.push(*p);
            } else {
                return Ok(None);
            }
        }
    }
    Ok(Some(DyadicBox::new(prefixes)))
}

/// A product of closed integer intervals inside the `d`-bit cube.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GeneralBox {
    intervals: Vec<(u64, u64)>,
}

impl GeneralBox {
    pub fn new(intervals: Vec<(u64, u64)>) -> GeneralBox {
        debug_assert!(intervals.iter().all(|&(lo, hi)| lo <= hi));
        GeneralBox { intervals }
    }

    pub fn validate(&self, width: BitWidth) -> Result<()> {
        for &(lo, hi) in &self.intervals {
            if lo > hi {
                return Err(Error::Invalid(format!("empty interval [{lo}, {hi}]")));
            }
            width.check_value(hi)?;
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, attr: usize) -> (u64, u64) {
        self.intervals[attr]
    }

    pub fn intervals(&self) -> &[(u64, u64)] {
        &self.intervals
    }

    pub fn contains_point(&self, point: &[u64]) -> bool {
        self.intervals
            .iter()
            .zip(point)
            .all(|(&(lo, hi), &v)| lo <= v && v <= hi)
    }

    pub fn contains_box(&self, other: &GeneralBox) -> bool {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .all(|(&(alo, ahi), &(blo, bhi))| alo <= blo && bhi <= ahi)
    }

    pub fn volume(&self) -> u64 {
        self.intervals.iter().map(|&(lo, hi)| hi - lo + 1).product()
    }

    /// Partition into pairwise-disjoint dyadic boxes whose union equals the
    /// box: the per-attribute canonical interval decomposition, producted.
    pub fn decompose(&self, width: BitWidth) -> Vec<DyadicBox> {
        let chains: Vec<Vec<Prefix>> = self
            .intervals
            .iter()
            .map(|&(lo, hi)| interval_prefixes(lo, hi, width))
            .collect();
        let mut out = Vec::new();
        let mut acc = Vec::with_capacity(self.arity());
        fn rec(chains: &[Vec<Prefix>], acc: &mut Vec<Prefix>, out: &mut Vec<DyadicBox>) {
            if acc.len() == chains.len() {
                out.push(DyadicBox::new(acc.clone()));
                return;
            }
            for p in &chains[acc.len()] {
                acc.push(*p);
                rec(chains, acc, out);
                acc.pop();
            }
        }
        rec(&chains, &mut acc, &mut out);
        out
    }
}

/// Canonical decomposition of `[lo, hi]` into aligned prefixes: greedily take
/// the largest aligned block starting at the left end. At most `2d` prefixes.
pub fn interval_prefixes(lo: u64, hi: u64, width: BitWidth) -> Vec<Prefix> {
    debug_assert!(lo <= hi && hi < width.domain_size());
    let mut out = Vec::new();
    let mut x = lo;
    loop {
        let align = if x == 0 {
            width.get()
        } else {
            x.trailing_zeros().min(width.get())
        };
        let mut k = align;
        while k > 0 && x + (1u64 << k) - 1 > hi {
            k -= 1;
        }
        let len = (width.get() - k) as u8;
        out.push(Prefix::from_bits(x << (64 - width.get()), len));
        let next = x + (1u64 << k);
        if next > hi {
            break;
        }
        x = next;
    }
    out
}
