use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite string over `{0,1}`.
///
/// Position 0 is the leftmost bit. The derived ordering is lexicographic with
/// a proper prefix sorting first, so on strings of one fixed length it agrees
/// with numeric order of [`BitString::to_index`].
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![true; len])
    }

    /// The length-`len` binary representation of `index`, most significant
    /// bit first.
    pub fn from_index(index: u64, len: usize) -> Self {
        debug_assert!(len >= 64 || index >> len == 0, "index does not fit");
        Self(
            (0..len)
                .map(|i| {
                    let shift = len - 1 - i;
                    shift < 64 && (index >> shift) & 1 == 1
                })
                .collect(),
        )
    }

    /// Inverse of [`BitString::from_index`]. Only meaningful for strings of
    /// at most 64 bits.
    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn extend_from(&mut self, other: &BitString) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn slice(&self, from: usize, to: usize) -> BitString {
        BitString(self.0[from..to].to_vec())
    }

    pub fn is_all_zeros(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    pub fn starts_with(&self, prefix: &[bool]) -> bool {
        self.0.starts_with(prefix)
    }

    /// The lexicographic successor among strings of the same length, or
    /// `None` after `1^len`.
    pub fn successor(&self) -> Option<BitString> {
        let mut bits = self.0.clone();
        for i in (0..bits.len()).rev() {
            if bits[i] {
                bits[i] = false;
            } else {
                bits[i] = true;
                return Some(BitString(bits));
            }
        }
        None
    }

    /// All strings of length `len` in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 64, "enumerating 2^{len} strings");
        (0..1u64 << len).map(move |i| BitString::from_index(i, len))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Syntax {
                    offset: i,
                    message: format!("expected 0 or 1, found {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitString)
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self(bits)
    }
}

/// Parses a bit-string literal, panicking on malformed input. Test helper.
#[doc(hidden)]
pub fn bs(s: &str) -> BitString {
    s.parse().expect("valid bit-string literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip_and_order() {
        for len in 0..6 {
            let all: Vec<_> = BitString::all_of_length(len).collect();
            assert_eq!(all.len(), 1 << len);
            for (i, s) in all.iter().enumerate() {
                assert_eq!(s.to_index(), i as u64);
                assert_eq!(s.len(), len);
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn successor_walks_length() {
        let mut s = BitString::zeros(3);
        let mut seen = 1;
        while let Some(next) = s.successor() {
            assert!(next > s);
            s = next;
            seen += 1;
        }
        assert_eq!(seen, 8);
        assert!(s.is_all_ones());
    }

    #[test]
    fn parse_rejects_other_chars() {
        assert_eq!(bs("0110").to_string(), "0110");
        assert!(matches!(
            "01a".parse::<BitString>(),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!("".parse::<BitString>().unwrap().is_empty());
    }
}
