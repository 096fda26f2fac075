//! Extended alphabet: input bytes plus an ordered family of separator symbols.

use std::fmt;

/// Character class of an [`ExtChar`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharClass {
    Sentinel,
    Byte,
}

/// A character of the extended alphabet.
///
/// Every sentinel compares below every byte; sentinels are ordered by their
/// index and bytes by their value. The packed representation keeps the
/// derived `Ord` equal to that order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtChar(u64);

const BYTE_BASE: u64 = 1 << 32;

impl ExtChar {
    pub const fn sentinel(index: u32) -> Self {
        ExtChar(index as u64)
    }

    pub const fn byte(b: u8) -> Self {
        ExtChar(BYTE_BASE + b as u64)
    }

    pub const fn class(self) -> CharClass {
        if self.0 >= BYTE_BASE {
            CharClass::Byte
        } else {
            CharClass::Sentinel
        }
    }

    /// Sentinel index or byte value, depending on [`ExtChar::class`].
    pub const fn value(self) -> u32 {
        if self.0 >= BYTE_BASE {
            (self.0 - BYTE_BASE) as u32
        } else {
            self.0 as u32
        }
    }

    pub const fn is_sentinel(self) -> bool {
        self.0 < BYTE_BASE
    }

    pub const fn as_byte(self) -> Option<u8> {
        if self.0 >= BYTE_BASE {
            Some((self.0 - BYTE_BASE) as u8)
        } else {
            None
        }
    }
}

impl From<u8> for ExtChar {
    fn from(b: u8) -> Self {
        ExtChar::byte(b)
    }
}

impl fmt::Debug for ExtChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_byte() {
            Some(b) if b.is_ascii_graphic() => write!(f, "{}", b as char),
            Some(b) => write!(f, "\\x{b:02x}"),
            None => write!(f, "${}", self.value()),
        }
    }
}

/// Lifts a byte string into the extended alphabet.
pub fn lift(s: &[u8]) -> Vec<ExtChar> {
    s.iter().copied().map(ExtChar::byte).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentinels_sort_below_bytes() {
        assert!(ExtChar::sentinel(u32::MAX) < ExtChar::byte(0));
        assert!(ExtChar::sentinel(0) < ExtChar::sentinel(1));
        assert!(ExtChar::byte(b'a') < ExtChar::byte(b'b'));
        assert_eq!(ExtChar::byte(7).class(), CharClass::Byte);
        assert_eq!(ExtChar::sentinel(70_000).value(), 70_000);
        assert_eq!(ExtChar::sentinel(3).as_byte(), None);
        assert_eq!(ExtChar::byte(200).as_byte(), Some(200));
    }
}
