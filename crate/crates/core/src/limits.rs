use crate::error::{Error, Result};

/// Size caps for the exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest supported `n` (so at most `n - 1` simple coroots).
    pub max_rank: usize,
    /// Largest supported length `|alpha|`.
    pub max_length: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_rank: 8,
            max_length: 12,
        }
    }
}

impl Limits {
    pub(crate) fn check_rank(&self, n: usize) -> Result<()> {
        if n > self.max_rank {
            return Err(Error::CapExceeded {
                what: "rank n",
                value: n as u64,
                cap: self.max_rank as u64,
            });
        }
        Ok(())
    }

    pub(crate) fn check_length(&self, length: u64) -> Result<()> {
        if length > self.max_length {
            return Err(Error::CapExceeded {
                what: "length |alpha|",
                value: length,
                cap: self.max_length,
            });
        }
        Ok(())
    }
}
