use super::boxes::DyadicBox;
use crate::error::{Error, Result};
use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

/// An indexed set of dyadic boxes over a fixed schema.
///
/// Membership is by exact per-attribute prefix equality. Superbox queries
/// enumerate the `prod(len_i + 1)` truncations of the probe box and test each
/// for membership, so they run in time independent of the stored set size.
///
/// Single-writer: mutation requires `&mut self`; concurrent read-only queries
/// are fine once mutation quiesces. Every membership probe and mutation bumps
/// an internal counter so callers can assert per-operation work ceilings.
#[derive(Debug)]
pub struct DyadicBoxIndex {
    arity: usize,
    set: HashSet<DyadicBox>,
    probes: AtomicU64,
}

impl DyadicBoxIndex {
    pub fn new(arity: usize) -> DyadicBoxIndex {
        DyadicBoxIndex {
            arity,
            set: HashSet::new(),
            probes: AtomicU64::new(0),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    fn check(&self, b: &DyadicBox) -> Result<()> {
        if b.arity() == self.arity {
            Ok(())
        } else {
            Err(Error::SchemaMismatch(format!(
                "index arity {} vs box arity {}",
                self.arity,
                b.arity()
            )))
        }
    }

    fn bump(&self, n: u64) {
        self.probes.fetch_add(n, Ordering::Relaxed);
    }

    /// Total membership probes and mutations performed so far.
    pub fn probe_count(&self) -> u64 {
        self.probes.load(Ordering::Relaxed)
    }

    /// True iff the exact box is a member.
    pub fn contains(&self, b: &DyadicBox) -> bool {
        self.bump(1);
        self.set.contains(b)
    }

    pub fn insert(&mut self, b: DyadicBox) -> Result<bool> {
        self.check(&b)?;
        self.bump(1);
        Ok(self.set.insert(b))
    }

    pub fn delete(&mut self, b: &DyadicBox) -> bool {
        self.bump(1);
        self.set.remove(b)
    }

    /// The stored boxes that contain `b`, found by probing each truncation.
    pub fn query_superboxes(&self, b: &DyadicBox) -> Result<Vec<DyadicBox>> {
        self.check(b)?;
        let mut out = Vec::new();
        for cand in b.superboxes() {
            self.bump(1);
            if self.set.contains(&cand) {
                out.push(cand);
            }
        }
        out.sort();
        Ok(out)
    }

    /// True iff some stored box contains `b`. Early-exits on the first hit.
    pub fn contains_superbox_of(&self, b: &DyadicBox) -> Result<bool> {
        self.check(b)?;
        for cand in b.superboxes() {
            self.bump(1);
            if self.set.contains(&cand) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Members in canonical order.
    pub fn iter_sorted(&self) -> Vec<DyadicBox> {
        let mut v: Vec<DyadicBox> = self.set.iter().cloned().collect();
        v.sort();
        v
    }

    pub fn contains_exact(&self, b: &DyadicBox) -> bool {
        self.set.contains(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BitWidth;

    fn bx(tokens: &[&str]) -> DyadicBox {
        DyadicBox::parse_tokens(tokens).unwrap()
    }

    #[test]
    fn membership_after_insert_delete() {
        let mut ix = DyadicBoxIndex::new(2);
        let b = bx(&["1", "0"]);
        assert!(ix.insert(b.clone()).unwrap());
        assert!(ix.contains(&b));
        assert!(ix.delete(&b));
        assert!(!ix.contains(&b));
        assert!(ix.insert(bx(&["1"])).is_err());
    }

    #[test]
    fn superbox_query_examples() {
        let mut ix = DyadicBoxIndex::new(2);
        ix.insert(bx(&["1", "*"])).unwrap();
        ix.insert(bx(&["*", "1"])).unwrap();
        let hits = ix.query_superboxes(&bx(&["1", "0"])).unwrap();
        assert_eq!(hits, vec![bx(&["1", "*"])]);

        let empty = DyadicBoxIndex::new(2);
        assert!(empty.query_superboxes(&bx(&["1", "0"])).unwrap().is_empty());
    }

    #[test]
    fn agrees_with_linear_scan_after_random_ops() {
        let d = BitWidth::new(3).unwrap();
        let mut ix = DyadicBoxIndex::new(2);
        let mut mirror: Vec<DyadicBox> = Vec::new();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        let rand_box = |r: u64| {
            let la = (r % 4) as u8;
            let lb = ((r >> 2) % 4) as u8;
            let va = (r >> 4) % 8;
            let vb = (r >> 7) % 8;
            DyadicBox::new(vec![
                crate::geometry::Prefix::from_bits(va << 61, la),
                crate::geometry::Prefix::from_bits(vb << 61, lb),
            ])
        };
        for _ in 0..100 {
            let r = next();
            let b = rand_box(r);
            if r % 3 == 0 {
                ix.delete(&b);
                mirror.retain(|m| m != &b);
            } else {
                ix.insert(b.clone()).unwrap();
                if !mirror.contains(&b) {
                    mirror.push(b);
                }
            }
            let probe = rand_box(next());
            let got = ix.query_superboxes(&probe).unwrap();
            let mut want: Vec<DyadicBox> = mirror
                .iter()
                .filter(|m| m.contains_box(&probe))
                .cloned()
                .collect();
            want.sort();
            assert_eq!(got, want);
        }
        let _ = d;
    }
}
