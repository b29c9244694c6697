/// Fixed-capacity bitset over `Vec<u64>` words, sized at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn zeros(n_bits: usize) -> Bits {
        Bits {
            words: vec![0; n_bits.div_ceil(64)],
        }
    }

    pub fn ones(n_bits: usize) -> Bits {
        let mut b = Bits::zeros(n_bits);
        for i in 0..n_bits {
            b.set(i);
        }
        b
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[cfg(test)]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_set(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn intersection_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let mut b = Bits::zeros(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert_eq!(b.count_ones(), 3);
        assert_eq!(b.first_set(), Some(0));
        assert_eq!(b.iter_set().collect::<Vec<_>>(), vec![0, 64, 129]);

        let mut c = Bits::zeros(130);
        c.set(64);
        assert!(b.intersects(&c));
        assert_eq!(b.intersection_count(&c), 1);
        b.and_not_assign(&c);
        assert_eq!(b.iter_set().collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(Bits::ones(70).count_ones(), 70);
    }
}
