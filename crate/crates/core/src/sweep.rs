//! Parameter sweeps over coprime `(r, d)` and genus ranges.
//!
//! Each instance is independent, so the grid is mapped with the requested
//! [`Execution`] policy; results come back in grid order either way.

use std::ops::RangeInclusive;

use num_integer::Integer;

use crate::arith::{rat, ModuliSetup, Rational};
use crate::error::Result;
use crate::par::{self, Execution};
use crate::vanishing::{acm_verdict, acm_wrt_power, embed_coverage, AcmVerdict};
use crate::walls::{enumerate_walls_with, first_wall};

/// All `(r, d)` with `r` in range, `0 < d < r` and `gcd(r, d) = 1`.
pub fn coprime_pairs(ranks: RangeInclusive<i64>) -> Vec<(i64, i64)> {
    ranks.flat_map(|r| (1..r).filter(move |d| r.gcd(d) == 1).map(move |d| (r, d))).collect()
}

pub fn grid(pairs: &[(i64, i64)], genera: RangeInclusive<i64>) -> Vec<(i64, i64, i64)> {
    pairs.iter().flat_map(|&(r, d)| genera.clone().map(move |g| (r, d, g))).collect()
}

fn collect<T, U, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    par::map(exec, items, f).into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstWallRecord {
    pub r: i64,
    pub d: i64,
    pub ell: i64,
    /// Smallest value among the enumerated interior walls, if any.
    pub min_enumerated: Option<Rational>,
    pub first_wall: Rational,
    pub hecke_boundary: bool,
}

impl FirstWallRecord {
    /// The minimum is `1/ℓ`, realised by an interior wall unless `ℓ = 1`.
    pub fn matches_closed_form(&self) -> bool {
        let expected = rat(1, self.ell);
        let interior_ok = if self.ell == 1 {
            self.hecke_boundary && self.min_enumerated.is_none()
        } else {
            !self.hecke_boundary && self.min_enumerated.as_ref() == Some(&expected)
        };
        interior_ok && self.first_wall == expected
    }
}

pub fn first_wall_sweep(ranks: RangeInclusive<i64>, exec: Execution) -> Result<Vec<FirstWallRecord>> {
    collect(exec, &coprime_pairs(ranks), |&(r, d)| {
        let setup = ModuliSetup::one_point(r, d, 2)?;
        let fw = first_wall(r, d)?;
        let min_enumerated =
            enumerate_walls_with(&setup, Execution::Sequential).iter().filter_map(|w| w.value()).min();
        Ok(FirstWallRecord {
            r,
            d,
            ell: fw.ell,
            min_enumerated,
            first_wall: fw.value,
            hecke_boundary: fw.hecke_boundary,
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbedRecord {
    pub r: i64,
    pub d: i64,
    pub g: i64,
    pub fully_faithful: bool,
}

pub fn embed_sweep(
    ranks: RangeInclusive<i64>,
    genera: RangeInclusive<i64>,
    exec: Execution,
) -> Result<Vec<EmbedRecord>> {
    let cells = grid(&coprime_pairs(ranks), genera);
    collect(exec, &cells, |&(r, d, g)| {
        Ok(EmbedRecord { r, d, g, fully_faithful: embed_coverage(r, d, g)?.fully_faithful })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcmRecord {
    pub r: i64,
    pub d: i64,
    pub g: i64,
    pub verdict: AcmVerdict,
    /// `(k, acm_wrt_power)` for the requested powers.
    pub powers: Vec<(i64, bool)>,
}

/// ACM verdicts plus `acm_wrt_power` for `k` in `r−1 ..= r−1+extra_powers`.
pub fn acm_sweep(
    ranks: RangeInclusive<i64>,
    genera: RangeInclusive<i64>,
    extra_powers: i64,
    exec: Execution,
) -> Result<Vec<AcmRecord>> {
    let cells = grid(&coprime_pairs(ranks), genera);
    collect(exec, &cells, |&(r, d, g)| {
        let verdict = acm_verdict(r, d, g)?;
        let powers = ((r - 1).max(1)..=(r - 1).max(1) + extra_powers)
            .map(|k| acm_wrt_power(r, d, g, k).map(|ok| (k, ok)))
            .collect::<Result<Vec<_>>>()?;
        Ok(AcmRecord { r, d, g, verdict, powers })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(coprime_pairs(2..=4), vec![(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)]);
        assert_eq!(grid(&[(2, 1)], 2..=3), vec![(2, 1, 2), (2, 1, 3)]);
    }

    #[test]
    fn policies_agree() {
        let a = first_wall_sweep(2..=9, Execution::Sequential).unwrap();
        let b = first_wall_sweep(2..=9, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(FirstWallRecord::matches_closed_form));
        let a = embed_sweep(2..=6, 2..=10, Execution::Sequential).unwrap();
        assert_eq!(a, embed_sweep(2..=6, 2..=10, Execution::Parallel).unwrap());
        assert!(a.iter().all(|e| e.fully_faithful == (e.g >= e.r + 3)));
    }

    #[test]
    fn acm_records() {
        let recs = acm_sweep(2..=4, 3..=4, 1, Execution::Parallel).unwrap();
        assert!(recs.iter().all(|rec| rec.verdict.is_acm() && rec.powers.iter().all(|p| p.1)));
    }
}
