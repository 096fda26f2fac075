use crate::error::{Error, Result};

/// One named input sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub id: String,
    pub data: Vec<u8>,
}

/// Ordered multiset of non-empty byte strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SequenceCollection {
    records: Vec<Record>,
}

impl SequenceCollection {
    pub fn new(records: Vec<Record>) -> Result<Self> {
        if let Some(k) = records.iter().position(|r| r.data.is_empty()) {
            return Err(Error::EmptyRecord(k));
        }
        Ok(SequenceCollection { records })
    }

    /// Builds a collection with ids "0", "1", ...
    pub fn from_strings<I, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let records = items
            .into_iter()
            .enumerate()
            .map(|(k, s)| Record {
                id: k.to_string(),
                data: s.as_ref().to_vec(),
            })
            .collect();
        Self::new(records)
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn total_len(&self) -> u64 {
        self.records.iter().map(|r| r.data.len() as u64).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.records.iter().map(|r| r.data.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_records_are_rejected() {
        assert_eq!(
            SequenceCollection::from_strings(["ab", "", "c"]),
            Err(Error::EmptyRecord(1))
        );
        let c = SequenceCollection::from_strings(["ab", "c"]).unwrap();
        assert_eq!(c.total_len(), 3);
        assert_eq!(c.records()[1].id, "1");
    }
}
