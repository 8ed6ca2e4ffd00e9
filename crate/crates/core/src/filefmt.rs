//! File framing for keys, ciphertexts, and messages written by the CLI.
//!
//! Every framed file starts with an 8-byte header: the 7-byte magic
//! "PQCLAB\0" followed by one scheme/level byte. Raw (headerless) mode
//! writes the bit-exact payload only.

use crate::kyber::KyberLevel;
use crate::mceliece::{McElieceLevel, Variant};
use thiserror::Error;

pub const MAGIC: &[u8; 7] = b"PQCLAB\0";
pub const HEADER_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileFmtError {
    #[error("file too short for header")]
    TooShort,
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unknown scheme/level byte {0:#04x}")]
    UnknownTag(u8),
    #[error("header says {found}, expected {expected}")]
    TagMismatch { expected: String, found: String },
}

/// The scheme/level byte: low nibble picks the level, bit 6 marks the code
/// scheme, bit 7 marks the systematic variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeTag {
    Kyber(KyberLevel),
    McEliece(McElieceLevel, Variant),
}

const MCELIECE_BIT: u8 = 0x40;
const SYSTEMATIC_BIT: u8 = 0x80;

impl SchemeTag {
    pub fn to_byte(self) -> u8 {
        match self {
            SchemeTag::Kyber(level) => match level {
                KyberLevel::Kyber512 => 0x01,
                KyberLevel::Kyber768 => 0x02,
                KyberLevel::Kyber1024 => 0x03,
            },
            SchemeTag::McEliece(level, variant) => {
                let low = match level {
                    McElieceLevel::M348864 => 0x01,
                    McElieceLevel::M460896 => 0x02,
                    McElieceLevel::M6688128 => 0x03,
                    McElieceLevel::Toy16 => 0x04,
                    McElieceLevel::Toy32 => 0x05,
                    McElieceLevel::Toy64 => 0x06,
                };
                let var = match variant {
                    Variant::Textbook => 0,
                    Variant::Systematic => SYSTEMATIC_BIT,
                };
                MCELIECE_BIT | var | low
            }
        }
    }

    pub fn from_byte(b: u8) -> Result<Self, FileFmtError> {
        if b & MCELIECE_BIT == 0 {
            let level = match b {
                0x01 => KyberLevel::Kyber512,
                0x02 => KyberLevel::Kyber768,
                0x03 => KyberLevel::Kyber1024,
                _ => return Err(FileFmtError::UnknownTag(b)),
            };
            Ok(SchemeTag::Kyber(level))
        } else {
            let level = match b & 0x0F {
                0x01 => McElieceLevel::M348864,
                0x02 => McElieceLevel::M460896,
                0x03 => McElieceLevel::M6688128,
                0x04 => McElieceLevel::Toy16,
                0x05 => McElieceLevel::Toy32,
                0x06 => McElieceLevel::Toy64,
                _ => return Err(FileFmtError::UnknownTag(b)),
            };
            let variant = if b & SYSTEMATIC_BIT != 0 {
                Variant::Systematic
            } else {
                Variant::Textbook
            };
            Ok(SchemeTag::McEliece(level, variant))
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SchemeTag::Kyber(level) => level.name().to_string(),
            SchemeTag::McEliece(level, variant) => {
                format!("{} ({})", level.name(), variant.name())
            }
        }
    }
}

/// Prepends the 8-byte header to a payload.
pub fn frame(tag: SchemeTag, payload: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + payload.len());
    out.extend_from_slice(MAGIC);
    out.push(tag.to_byte());
    out.extend_from_slice(payload);
    out
}

/// Strips and validates the header, returning the tag and payload.
pub fn unframe(bytes: &[u8]) -> Result<(SchemeTag, &[u8]), FileFmtError> {
    if bytes.len() < HEADER_LEN {
        return Err(FileFmtError::TooShort);
    }
    if &bytes[..7] != MAGIC {
        return Err(FileFmtError::BadMagic);
    }
    let tag = SchemeTag::from_byte(bytes[7])?;
    Ok((tag, &bytes[HEADER_LEN..]))
}

/// Strips the header and checks it carries the expected tag.
pub fn unframe_expecting(bytes: &[u8], expected: SchemeTag) -> Result<&[u8], FileFmtError> {
    let (tag, payload) = unframe(bytes)?;
    if tag != expected {
        return Err(FileFmtError::TagMismatch {
            expected: expected.describe(),
            found: tag.describe(),
        });
    }
    Ok(payload)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_bytes_roundtrip() {
        let mut tags = vec![
            SchemeTag::Kyber(KyberLevel::Kyber512),
            SchemeTag::Kyber(KyberLevel::Kyber768),
            SchemeTag::Kyber(KyberLevel::Kyber1024),
        ];
        for level in [
            McElieceLevel::M348864,
            McElieceLevel::M460896,
            McElieceLevel::M6688128,
            McElieceLevel::Toy16,
            McElieceLevel::Toy32,
            McElieceLevel::Toy64,
        ] {
            for variant in [Variant::Textbook, Variant::Systematic] {
                tags.push(SchemeTag::McEliece(level, variant));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for tag in tags {
            let b = tag.to_byte();
            assert!(seen.insert(b), "tag byte collision at {b:#04x}");
            assert_eq!(SchemeTag::from_byte(b).unwrap(), tag);
        }
    }

    #[test]
    fn frame_unframe_roundtrip() {
        let tag = SchemeTag::Kyber(KyberLevel::Kyber512);
        let framed = frame(tag, b"payload");
        assert_eq!(framed.len(), HEADER_LEN + 7);
        let (t, p) = unframe(&framed).unwrap();
        assert_eq!(t, tag);
        assert_eq!(p, b"payload");
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(matches!(unframe(b"short"), Err(FileFmtError::TooShort)));
        assert!(matches!(
            unframe(b"WRONGMAGIC"),
            Err(FileFmtError::BadMagic)
        ));
        let mut framed = frame(SchemeTag::Kyber(KyberLevel::Kyber512), b"x");
        framed[7] = 0x3F;
        assert!(matches!(
            unframe(&framed),
            Err(FileFmtError::UnknownTag(0x3F))
        ));
        let framed = frame(SchemeTag::Kyber(KyberLevel::Kyber512), b"x");
        assert!(unframe_expecting(&framed, SchemeTag::Kyber(KyberLevel::Kyber768)).is_err());
    }
}
