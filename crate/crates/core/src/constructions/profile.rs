use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// The binary expansion `n = n_1 + .. + n_l` with `n_1 > .. > n_l` powers of
/// two, laid out as consecutive blocks of points.
///
/// For odd `n` the blocks cover `0..n-1` and the last point is fixed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoAdicProfile {
    n: usize,
    parts: Vec<usize>,
    exponents: Vec<u32>,
    offsets: Vec<usize>,
}

/// Which family of cases a degree belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    N3,
    N4,
    N6,
    Odd,
    TwoPower,
    NlGt2,
    Nl2L2,
    Nl2L3,
    Nl2Lge4,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::N3 => "n3",
            CaseTag::N4 => "n4",
            CaseTag::N6 => "n6",
            CaseTag::Odd => "odd",
            CaseTag::TwoPower => "two_power",
            CaseTag::NlGt2 => "nl_gt2",
            CaseTag::Nl2L2 => "nl2_l2",
            CaseTag::Nl2L3 => "nl2_l3",
            CaseTag::Nl2Lge4 => "nl2_lge4",
        }
    }
}

pub fn two_adic_profile(n: usize) -> Result<TwoAdicProfile> {
    if n < 2 {
        return Err(Error::Domain(format!("degree {n} is below 2")));
    }
    let even = n & !1;
    let exponents: Vec<u32> = (1..usize::BITS).rev().filter(|&b| even >> b & 1 == 1).collect();
    let parts: Vec<usize> = exponents.iter().map(|&e| 1usize << e).collect();
    let offsets = parts
        .iter()
        .scan(0, |acc, &p| {
            let start = *acc;
            *acc += p;
            Some(start)
        })
        .collect();
    Ok(TwoAdicProfile { n, parts, exponents, offsets })
}

impl TwoAdicProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Number of blocks `l`.
    pub fn l(&self) -> usize {
        self.parts.len()
    }

    /// Size of the last block `n_l`.
    pub fn last_part(&self) -> usize {
        *self.parts.last().expect("a profile has at least one block")
    }

    pub fn is_two_power(&self) -> bool {
        self.n.is_multiple_of(2) && self.l() == 1
    }

    /// Points of block `j` (0-based).
    pub fn block(&self, j: usize) -> Range<usize> {
        self.offsets[j]..self.offsets[j] + self.parts[j]
    }

    /// The two halves of block `j`, each moved as a unit by the top generator.
    pub fn halves(&self, j: usize) -> (Range<usize>, Range<usize>) {
        let b = self.block(j);
        let mid = b.start + self.parts[j] / 2;
        (b.start..mid, mid..b.end)
    }

    /// Index of the block containing point `p`, if any.
    pub fn block_of(&self, p: usize) -> Option<usize> {
        (0..self.l()).find(|&j| self.block(j).contains(&p))
    }

    pub fn case_tag(&self) -> CaseTag {
        match self.n {
            3 => CaseTag::N3,
            4 => CaseTag::N4,
            6 => CaseTag::N6,
            n if n % 2 == 1 => CaseTag::Odd,
            _ if self.l() == 1 => CaseTag::TwoPower,
            _ if self.last_part() > 2 => CaseTag::NlGt2,
            _ => match self.l() {
                2 => CaseTag::Nl2L2,
                3 => CaseTag::Nl2L3,
                _ => CaseTag::Nl2Lge4,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(two_adic_profile(14).unwrap().parts(), &[8, 4, 2]);
        assert_eq!(two_adic_profile(8).unwrap().parts(), &[8]);
        assert_eq!(two_adic_profile(12).unwrap().parts(), &[8, 4]);
        assert_eq!(two_adic_profile(9).unwrap().parts(), &[8]);
        assert!(two_adic_profile(1).is_err());
    }

    #[test]
    fn blocks_partition_the_even_part() {
        for n in 2..=40 {
            let p = two_adic_profile(n).unwrap();
            let mut covered = Vec::new();
            for j in 0..p.l() {
                covered.extend(p.block(j));
                let (a, b) = p.halves(j);
                assert_eq!(a.len(), b.len());
                assert_eq!(a.end, b.start);
            }
            assert_eq!(covered, (0..n & !1).collect::<Vec<_>>());
            assert!(p.parts().windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn case_tags() {
        let tag = |n| two_adic_profile(n).unwrap().case_tag().as_str();
        assert_eq!(tag(3), "n3");
        assert_eq!(tag(8), "two_power");
        assert_eq!(tag(12), "nl_gt2");
        assert_eq!(tag(10), "nl2_l2");
        assert_eq!(tag(18), "nl2_l2");
        assert_eq!(tag(14), "nl2_l3");
        assert_eq!(tag(22), "nl2_l3");
        assert_eq!(tag(30), "nl2_lge4");
        assert_eq!(tag(11), "odd");
    }
}
