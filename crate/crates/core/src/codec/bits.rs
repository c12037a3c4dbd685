//! Bit strings with big-endian packing.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        BitString::default()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_uint(&mut self, value: u128, width: usize) {
        debug_assert!(width >= 128 || value >> width == 0);
        for i in (0..width).rev() {
            self.bits.push(i < 128 && (value >> i) & 1 == 1);
        }
    }

    pub fn extend(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Packs eight bits per byte, first bit in the most significant position; the
    /// last byte is zero-padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |b, (i, &bit)| b | (u8::from(bit) << (7 - i)))
            })
            .collect()
    }

    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if len > bytes.len() * 8 {
            return Err(Error::Decode(format!("{len} bits requested from {} bytes", bytes.len())));
        }
        Ok(BitString {
            bits: (0..len).map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1).collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format(format!("bit string contains `{other}`"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(|bits| BitString { bits })
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: &self.bits, pos: 0 }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub struct BitReader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl BitReader<'_> {
    pub fn read(&mut self) -> Result<bool> {
        let b = *self
            .bits
            .get(self.pos)
            .ok_or_else(|| Error::Decode(format!("bit stream ended at bit {}", self.pos)))?;
        self.pos += 1;
        Ok(b)
    }

    pub fn read_uint(&mut self, width: usize) -> Result<u128> {
        let mut v = 0u128;
        for _ in 0..width {
            v = (v << 1) | u128::from(self.read()?);
        }
        Ok(v)
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }
}

/// Bits needed to write any integer below `count`.
pub fn width_for(count: u128) -> usize {
    if count <= 1 {
        0
    } else {
        (128 - (count - 1).leading_zeros()) as usize
    }
}
