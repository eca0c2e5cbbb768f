use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Rows per fidelity file.
pub const SPLIT_TOTAL: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitKind {
    /// 200-row training pool, 800-row test set.
    Hf200_800,
    /// 500-row training pool, 500-row test set.
    Mf500_500,
}

impl SplitKind {
    pub fn train_size(self) -> usize {
        match self {
            SplitKind::Hf200_800 => 200,
            SplitKind::Mf500_500 => 500,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplitKind::Hf200_800 => "hf_200_800",
            SplitKind::Mf500_500 => "mf_500_500",
        }
    }
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hf_200_800" => Ok(SplitKind::Hf200_800),
            "mf_500_500" => Ok(SplitKind::Mf500_500),
            other => Err(Error::Config(format!("unknown split kind `{other}`"))),
        }
    }
}

/// Fixed disjoint train pool and test set over one file's rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitPlan {
    pub kind: SplitKind,
    pub train_pool: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
}

impl SplitPlan {
    /// First `n` rows of the training pool.
    pub fn train_rows(&self, n: usize) -> Result<&[usize]> {
        if n > self.train_pool.len() {
            return Err(Error::Allocation {
                what: format!("{} training", self.kind),
                requested: n,
                available: self.train_pool.len(),
            });
        }
        Ok(&self.train_pool[..n])
    }
}

/// Seeded random partition of `0..n_total` into a training pool and a test set.
pub fn make_split(n_total: usize, kind: SplitKind, seed: u64) -> Result<SplitPlan> {
    if n_total != SPLIT_TOTAL {
        return Err(Error::shape(format!("{SPLIT_TOTAL} rows"), n_total));
    }
    let mut idx: Vec<usize> = (0..n_total).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = idx.split_off(kind.train_size());
    Ok(SplitPlan {
        kind,
        train_pool: idx,
        test,
        seed,
    })
}

/// Seeded permutation of `0..n`, used for draws that need no test set.
pub fn permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn splits_are_disjoint_and_cover() {
        for kind in [SplitKind::Hf200_800, SplitKind::Mf500_500] {
            let p = make_split(1000, kind, 4).unwrap();
            assert_eq!(p.train_pool.len(), kind.train_size());
            assert_eq!(p.test.len(), 1000 - kind.train_size());
            let a: HashSet<_> = p.train_pool.iter().collect();
            assert!(p.test.iter().all(|i| !a.contains(i)));
            let all: HashSet<_> = p.train_pool.iter().chain(&p.test).collect();
            assert_eq!(all.len(), 1000);
            assert_eq!(p, make_split(1000, kind, 4).unwrap());
        }
        assert_ne!(
            make_split(1000, SplitKind::Hf200_800, 1).unwrap(),
            make_split(1000, SplitKind::Hf200_800, 2).unwrap()
        );
    }

    #[test]
    fn wrong_size_and_overdraw() {
        assert!(matches!(make_split(999, SplitKind::Hf200_800, 0), Err(Error::Shape { .. })));
        let p = make_split(1000, SplitKind::Hf200_800, 0).unwrap();
        assert!(matches!(p.train_rows(201), Err(Error::Allocation { .. })));
        assert_eq!(p.train_rows(25).unwrap().len(), 25);
    }
}
