//! Length-uniform, linear-time invertible pairings of bit-strings.
//!
//! Both versions spell `x` out as `0x₁0x₂…0xₙ` followed by a separator and
//! then `y` verbatim: `V1` uses the separator `1`, `V2` uses `11`. Output
//! length depends only on `(|x|, |y|)`. `V1` never produces a string in `0*`;
//! `V2` additionally never produces a string in `0*1 ∪ 10*`.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairingVersion {
    V1,
    V2,
}

impl PairingVersion {
    fn separator_len(self) -> usize {
        match self {
            PairingVersion::V1 => 1,
            PairingVersion::V2 => 2,
        }
    }

    /// Length of `pair(self, x, y)` for `|x| = x_len`, `|y| = y_len`.
    pub fn paired_len(self, x_len: usize, y_len: usize) -> usize {
        2 * x_len + self.separator_len() + y_len
    }
}

impl fmt::Display for PairingVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairingVersion::V1 => "v1",
            PairingVersion::V2 => "v2",
        })
    }
}

impl FromStr for PairingVersion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "v1" | "V1" => Ok(PairingVersion::V1),
            "v2" | "V2" => Ok(PairingVersion::V2),
            _ => Err(Error::invalid(format!("unknown pairing version `{s}`"))),
        }
    }
}

pub fn pair(version: PairingVersion, x: &BitString, y: &BitString) -> BitString {
    let mut bits = Vec::with_capacity(version.paired_len(x.len(), y.len()));
    for &b in x.bits() {
        bits.push(false);
        bits.push(b);
    }
    bits.extend(std::iter::repeat_n(true, version.separator_len()));
    bits.extend_from_slice(y.bits());
    BitString::from_bits(bits)
}

/// Inverts [`pair`] in a single left-to-right scan; `None` when `s` is not in
/// the range of the pairing.
pub fn unpair(version: PairingVersion, s: &BitString) -> Option<(BitString, BitString)> {
    let bits = s.bits();
    let mut x = BitString::new();
    let mut pos = 0;
    loop {
        match bits.get(pos)? {
            false => {
                x.push(*bits.get(pos + 1)?);
                pos += 2;
            }
            true => {
                let y_start = match version {
                    PairingVersion::V1 => pos + 1,
                    PairingVersion::V2 => {
                        if !*bits.get(pos + 1)? {
                            return None;
                        }
                        pos + 2
                    }
                };
                return Some((x, s.slice(y_start, bits.len())));
            }
        }
    }
}
