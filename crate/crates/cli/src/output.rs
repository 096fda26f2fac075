//! Output encodings.

use std::io::{self, Write};

use lgbwt::RleString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    /// Raw bytes.
    Plain,
    /// One run per line: `<byte> <count>`.
    RleText,
    /// Little-endian (u8 byte, u64 count) pairs.
    RleBinary,
}

pub fn write_bwt(out: &mut impl Write, bwt: &RleString<u8>, format: OutputFormat) -> io::Result<()> {
    match format {
        OutputFormat::Plain => {
            let mut buf = Vec::with_capacity(1 << 16);
            for &(b, n) in bwt.runs() {
                for _ in 0..n {
                    buf.push(b);
                    if buf.len() == buf.capacity() {
                        out.write_all(&buf)?;
                        buf.clear();
                    }
                }
            }
            out.write_all(&buf)
        }
        OutputFormat::RleText => {
            for &(b, n) in bwt.runs() {
                writeln!(out, "{b} {n}")?;
            }
            Ok(())
        }
        OutputFormat::RleBinary => {
            for &(b, n) in bwt.runs() {
                out.write_all(&[b])?;
                out.write_all(&n.to_le_bytes())?;
            }
            Ok(())
        }
    }
}
