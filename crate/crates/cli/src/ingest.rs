//! Input parsing.

use lgbwt::{Record, SequenceCollection};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InputFormat {
    Fasta,
    Raw,
    Lines,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("input is empty")]
    EmptyFile,
    #[error("malformed FASTA at line {line}: {reason}")]
    MalformedFasta { line: usize, reason: &'static str },
    #[error("empty record at line {0}")]
    EmptyLine(usize),
}

pub fn ingest(data: &[u8], format: InputFormat) -> Result<SequenceCollection, IngestError> {
    if data.is_empty() {
        return Err(IngestError::EmptyFile);
    }
    let records = match format {
        InputFormat::Raw => vec![Record {
            id: "0".into(),
            data: data.to_vec(),
        }],
        InputFormat::Lines => lines(data)?,
        InputFormat::Fasta => fasta(data)?,
    };
    Ok(SequenceCollection::new(records).expect("records are non-empty"))
}

/// Splits on `\n`; a missing final newline still ends a record.
fn split_lines(data: &[u8]) -> impl Iterator<Item = &[u8]> {
    let body = data.strip_suffix(b"\n").unwrap_or(data);
    body.split(|&b| b == b'\n')
}

fn lines(data: &[u8]) -> Result<Vec<Record>, IngestError> {
    split_lines(data)
        .enumerate()
        .map(|(k, line)| {
            if line.is_empty() {
                return Err(IngestError::EmptyLine(k + 1));
            }
            Ok(Record {
                id: k.to_string(),
                data: line.to_vec(),
            })
        })
        .collect()
}

fn fasta(data: &[u8]) -> Result<Vec<Record>, IngestError> {
    let mut out: Vec<Record> = Vec::new();
    let mut header_line = 0;
    for (k, line) in split_lines(data).enumerate() {
        let line = line.strip_suffix(b"\r").unwrap_or(line);
        if let Some(name) = line.strip_prefix(b">") {
            close_record(&out, header_line)?;
            header_line = k + 1;
            out.push(Record {
                id: String::from_utf8_lossy(name).trim().to_string(),
                data: Vec::new(),
            });
        } else if line.is_empty() {
            continue;
        } else if let Some(rec) = out.last_mut() {
            rec.data.extend_from_slice(line);
        } else {
            return Err(IngestError::MalformedFasta {
                line: k + 1,
                reason: "sequence data before the first header",
            });
        }
    }
    close_record(&out, header_line)?;
    if out.is_empty() {
        return Err(IngestError::EmptyFile);
    }
    Ok(out)
}

fn close_record(out: &[Record], header_line: usize) -> Result<(), IngestError> {
    match out.last() {
        Some(r) if r.data.is_empty() => Err(IngestError::MalformedFasta {
            line: header_line,
            reason: "record without sequence",
        }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(c: &SequenceCollection) -> Vec<&[u8]> {
        c.iter().collect()
    }

    #[test]
    fn fasta_records() {
        let c = ingest(b">x\nAB\nBA\n>y\nC\n", InputFormat::Fasta).unwrap();
        assert_eq!(data(&c), [&b"ABBA"[..], b"C"]);
        assert_eq!(c.records()[0].id, "x");
        let crlf = ingest(b">x\r\nAB\r\n\r\nC", InputFormat::Fasta).unwrap();
        assert_eq!(data(&crlf), [&b"ABC"[..]]);
    }

    #[test]
    fn fasta_errors() {
        assert!(matches!(
            ingest(b"AB\n>x\nC\n", InputFormat::Fasta),
            Err(IngestError::MalformedFasta { line: 1, .. })
        ));
        assert!(matches!(
            ingest(b">x\n>y\nC\n", InputFormat::Fasta),
            Err(IngestError::MalformedFasta { line: 1, .. })
        ));
        assert!(matches!(
            ingest(b">x\nA\n>y\n", InputFormat::Fasta),
            Err(IngestError::MalformedFasta { line: 3, .. })
        ));
        assert_eq!(ingest(b"\n\n", InputFormat::Fasta), Err(IngestError::EmptyFile));
        assert_eq!(ingest(b"", InputFormat::Fasta), Err(IngestError::EmptyFile));
    }

    #[test]
    fn raw_and_lines() {
        let raw = ingest(b"abbabcbcabb", InputFormat::Raw).unwrap();
        assert_eq!(raw.total_len(), 11);
        assert_eq!(raw.len(), 1);
        let l = ingest(b"ab\nab\nb\n", InputFormat::Lines).unwrap();
        assert_eq!(data(&l), [&b"ab"[..], b"ab", b"b"]);
        assert_eq!(data(&ingest(b"ab\nc", InputFormat::Lines).unwrap()), [&b"ab"[..], b"c"]);
        assert_eq!(ingest(b"ab\n\nc\n", InputFormat::Lines), Err(IngestError::EmptyLine(2)));
        // a lone newline in raw mode is a one-byte text
        assert_eq!(ingest(b"\n", InputFormat::Raw).unwrap().total_len(), 1);
    }
}
