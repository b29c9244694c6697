use crate::error::{Error, Result};

/// Attribute width in bits. All attributes of one query share the same width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitWidth(u32);

impl BitWidth {
    pub fn new(d: u32) -> Result<Self> {
        if (1..=62).contains(&d) {
            Ok(BitWidth(d))
        } else {
            Err(Error::InvalidBitWidth(d))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of values in the domain, `2^d`.
    pub fn domain_size(self) -> u64 {
        1u64 << self.0
    }

    pub fn check_value(self, value: u64) -> Result<()> {
        if value < self.domain_size() {
            Ok(())
        } else {
            Err(Error::ValueOutOfDomain { value, d: self.0 })
        }
    }
}

/// A bit prefix denoting the interval of all `d`-bit values that start with it.
///
/// Bits are stored left-aligned in the word so truncation, sibling tests and
/// lexicographic comparison are single integer operations. The empty prefix
/// (written `*`) spans the whole domain.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prefix {
    bits: u64,
    len: u8,
}

impl Prefix {
    pub const EMPTY: Prefix = Prefix { bits: 0, len: 0 };

    fn mask(len: u8) -> u64 {
        if len == 0 {
            0
        } else {
            !0u64 << (64 - len as u32)
        }
    }

    /// Full-length prefix encoding a single value.
    pub fn from_value(value: u64, width: BitWidth) -> Prefix {
        debug_assert!(value < width.domain_size());
        Prefix {
            bits: value << (64 - width.get()),
            len: width.get() as u8,
        }
    }

    pub fn from_bits(bits_top_aligned: u64, len: u8) -> Prefix {
        Prefix {
            bits: bits_top_aligned & Self::mask(len),
            len,
        }
    }

    pub fn len(&self) -> u8 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self, width: BitWidth) -> bool {
        self.len as u32 == width.get()
    }

    /// True iff `value` starts with this prefix. The empty prefix matches all.
    pub fn matches_value(&self, value: u64, width: BitWidth) -> bool {
        let full = value << (64 - width.get());
        (full ^ self.bits) & Self::mask(self.len) == 0
    }

    /// True iff every value matched by `other` is matched by `self`.
    pub fn is_prefix_of(&self, other: &Prefix) -> bool {
        self.len <= other.len && (self.bits ^ other.bits) & Self::mask(self.len) == 0
    }

    /// Drop the last bit. `None` on the empty prefix.
    pub fn parent(&self) -> Option<Prefix> {
        if self.len == 0 {
            None
        } else {
            Some(Prefix::from_bits(self.bits, self.len - 1))
        }
    }

    /// Append one bit.
    pub fn child(&self, bit: u64) -> Prefix {
        debug_assert!(bit <= 1);
        let pos = 63 - self.len as u32;
        Prefix {
            bits: self.bits | (bit << pos),
            len: self.len + 1,
        }
    }

    /// Flip the last bit. `None` on the empty prefix.
    pub fn sibling(&self) -> Option<Prefix> {
        if self.len == 0 {
            None
        } else {
            let pos = 64 - self.len as u32;
            Some(Prefix {
                bits: self.bits ^ (1u64 << pos),
                len: self.len,
            })
        }
    }

    /// Two prefixes of equal positive length differing only in the last bit.
    pub fn is_sibling_of(&self, other: &Prefix) -> bool {
        self.len == other.len
            && self.len > 0
            && (self.bits ^ other.bits) == 1u64 << (64 - self.len as u32)
    }

    /// The last bit of the prefix.
    pub fn last_bit(&self) -> Option<u64> {
        if self.len == 0 {
            None
        } else {
            Some((self.bits >> (64 - self.len as u32)) & 1)
        }
    }

    /// Closed value interval `[lo, hi]` spanned in a `d`-bit domain.
    pub fn interval(&self, width: BitWidth) -> (u64, u64) {
        debug_assert!(self.len as u32 <= width.get());
        let lo = self.bits >> (64 - width.get());
        let free = width.get() - self.len as u32;
        let hi = lo | ((1u64 << free) - 1);
        (lo, hi)
    }

    pub fn render(&self) -> String {
        if self.len == 0 {
            return "*".to_string();
        }
        (0..self.len)
            .map(|i| {
                if self.bits >> (63 - i as u32) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn parse(token: &str) -> Result<Prefix> {
        if token == "*" {
            return Ok(Prefix::EMPTY);
        }
        if token.is_empty() || token.len() > 62 {
            return Err(Error::Invalid(format!("bad prefix token `{token}`")));
        }
        let mut p = Prefix::EMPTY;
        for c in token.chars() {
            match c {
                '0' => p = p.child(0),
                '1' => p = p.child(1),
                _ => return Err(Error::Invalid(format!("bad prefix token `{token}`"))),
            }
        }
        Ok(p)
    }
}

impl std::fmt::Debug for Prefix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: u32) -> BitWidth {
        BitWidth::new(d).unwrap()
    }

    #[test]
    fn width_bounds() {
        assert!(BitWidth::new(0).is_err());
        assert!(BitWidth::new(63).is_err());
        assert!(BitWidth::new(1).is_ok());
        assert!(BitWidth::new(62).is_ok());
    }

    #[test]
    fn matches_and_interval() {
        let d = w(3);
        let p = Prefix::parse("01").unwrap();
        assert!(p.matches_value(2, d));
        assert!(p.matches_value(3, d));
        assert!(!p.matches_value(4, d));
        assert_eq!(p.interval(d), (2, 3));
        assert_eq!(Prefix::EMPTY.interval(d), (0, 7));
    }

    #[test]
    fn parent_child_sibling() {
        let p = Prefix::parse("01").unwrap();
        assert_eq!(p.parent().unwrap().render(), "0");
        assert_eq!(p.child(1).render(), "011");
        assert_eq!(p.sibling().unwrap().render(), "00");
        assert!(p.is_sibling_of(&Prefix::parse("00").unwrap()));
        assert!(!p.is_sibling_of(&Prefix::parse("11").unwrap()));
        assert!(Prefix::EMPTY.parent().is_none());
        assert_eq!(p.last_bit(), Some(1));
    }

    #[test]
    fn prefix_of() {
        let a = Prefix::parse("0").unwrap();
        let b = Prefix::parse("01").unwrap();
        assert!(a.is_prefix_of(&b));
        assert!(!b.is_prefix_of(&a));
        assert!(Prefix::EMPTY.is_prefix_of(&a));
        assert!(a.is_prefix_of(&a));
    }

    #[test]
    fn render_parse_roundtrip() {
        for s in ["*", "0", "1", "010", "111000"] {
            assert_eq!(Prefix::parse(s).unwrap().render(), s);
        }
        assert!(Prefix::parse("01x").is_err());
        assert!(Prefix::parse("").is_err());
    }
}
