//! Exact rationals, the `(ℓ, e)` normalization and the closed-form
//! dimension counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let q = Rational::from_str(text).map_err(|_| Error::Parse(format!("not a fraction: {text:?}")))?;
    Ok(q)
}

/// Fixed-point rendering with exactly `digits` decimals, rounding half away
/// from zero.
pub fn fmt_decimal(q: &Rational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = q * Rational::from_integer(scale.clone());
    let magnitude = scaled.abs();
    let floor = magnitude.floor().to_integer();
    let frac = &magnitude - Rational::from_integer(floor.clone());
    let rounded = if frac * int(2) >= Rational::one() { floor + 1 } else { floor };
    let (whole, rest) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded_is_zero(&whole, &rest) { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{:0>width$}", rest.to_string(), width = digits as usize)
}

fn rounded_is_zero(whole: &BigInt, rest: &BigInt) -> bool {
    whole.is_zero() && rest.is_zero()
}

/// The pair `(ℓ, e)` with `ℓ·d − r·e = 1` and `0 < ℓ < r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalizedPair {
    pub ell: i64,
    pub e: i64,
}

fn check_rank_degree(r: i64, d: i64) -> Result<()> {
    if r < 2 {
        return Err(Error::InvalidSetup(format!("rank must be at least 2, got {r}")));
    }
    if d <= 0 || d >= r {
        return Err(Error::InvalidSetup(format!("degree must satisfy 0 < d < r, got d = {d}, r = {r}")));
    }
    if r.gcd(&d) != 1 {
        return Err(Error::InvalidSetup(format!("rank and degree must be coprime, got ({r}, {d})")));
    }
    Ok(())
}

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidSetup(format!("genus must be at least 2, got {g}")));
    }
    Ok(())
}

/// Solves `ℓ·d ≡ 1 (mod r)` with `0 < ℓ < r` by the extended Euclidean
/// algorithm and returns `e = (ℓ·d − 1)/r`.
pub fn normalize_pair(r: i64, d: i64) -> Result<NormalizedPair> {
    check_rank_degree(r, d)?;
    let egcd = d.extended_gcd(&r);
    debug_assert_eq!(egcd.gcd, 1);
    let ell = egcd.x.rem_euclid(r);
    let e = (ell * d - 1) / r;
    debug_assert_eq!(ell * d - r * e, 1);
    Ok(NormalizedPair { ell, e })
}

/// Lower bound `(r−1)(g−1) + 1` on the codimension of every wall-crossing centre.
pub fn codim_bound(r: i64, g: i64) -> i64 {
    (r - 1) * (g - 1) + 1
}

/// Smallest genus with `(r−1)(g−1) ≥ r²`.
pub fn genus_bound_embedding(r: i64) -> i64 {
    let r2 = r * r;
    let step = r - 1;
    (r2 + step - 1) / step + 1
}

fn flag_contribution(r: i64, mult: &[i64]) -> i64 {
    mult.iter().map(|&m| m * (r - m)).sum()
}

/// Dimension of the moduli space of rank-`r` parabolic bundles with the
/// given flag multiplicities.
pub fn moduli_dim_for(r: i64, g: i64, mult: &[i64], fixed_determinant: bool) -> i64 {
    let flags = flag_contribution(r, mult);
    if fixed_determinant {
        (r * r - 1) * (g - 1) + flags
    } else {
        r * r * (g - 1) + 1 + flags
    }
}

pub fn moduli_dim(setup: &ModuliSetup, fixed_determinant: bool) -> i64 {
    moduli_dim_for(setup.r, setup.g, &setup.mult, fixed_determinant)
}

/// A supported problem instance: one marked point with multiplicity `r−1`,
/// or two marked points with multiplicities `(r−1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuliSetup {
    r: i64,
    d: i64,
    g: i64,
    points: Vec<String>,
    mult: Vec<i64>,
    pair: NormalizedPair,
}

impl ModuliSetup {
    pub fn new(r: i64, d: i64, g: i64, points: Vec<String>, mult: Vec<i64>) -> Result<Self> {
        let pair = normalize_pair(r, d)?;
        check_genus(g)?;
        if points.len() != mult.len() {
            return Err(Error::InvalidSetup(format!(
                "{} point labels but {} multiplicities",
                points.len(),
                mult.len()
            )));
        }
        if let Some(&m) = mult.iter().find(|&&m| m < 0 || m > r) {
            return Err(Error::InvalidSetup(format!("multiplicity {m} outside [0, {r}]")));
        }
        let supported = match mult.as_slice() {
            [m] => *m == r - 1,
            [mx, my] => *mx == r - 1 && *my == 1,
            _ => false,
        };
        if !supported {
            return Err(Error::InvalidSetup(format!(
                "unsupported configuration: multiplicities {mult:?} (expected [{}] or [{}, 1])",
                r - 1,
                r - 1
            )));
        }
        let mut seen = points.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != points.len() {
            return Err(Error::InvalidSetup("point labels must be distinct".into()));
        }
        Ok(Self { r, d, g, points, mult, pair })
    }

    pub fn one_point(r: i64, d: i64, g: i64) -> Result<Self> {
        Self::new(r, d, g, vec!["x".into()], vec![r - 1])
    }

    pub fn two_point(r: i64, d: i64, g: i64) -> Result<Self> {
        Self::new(r, d, g, vec!["x".into(), "y".into()], vec![r - 1, 1])
    }

    /// Builds the one- or two-point configuration.
    pub fn with_points(r: i64, d: i64, g: i64, k: usize) -> Result<Self> {
        match k {
            1 => Self::one_point(r, d, g),
            2 => Self::two_point(r, d, g),
            _ => Err(Error::InvalidSetup(format!("number of points must be 1 or 2, got {k}"))),
        }
    }

    pub fn rank(&self) -> i64 {
        self.r
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn genus(&self) -> i64 {
        self.g
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn mult(&self) -> &[i64] {
        &self.mult
    }

    /// Number of marked points.
    pub fn k(&self) -> usize {
        self.mult.len()
    }

    pub fn ell(&self) -> i64 {
        self.pair.ell
    }

    pub fn e(&self) -> i64 {
        self.pair.e
    }

    pub fn normalized(&self) -> NormalizedPair {
        self.pair
    }

    /// Dimension `(r²−1)(g−1)` of the fixed-determinant moduli space without flags.
    pub fn base_dim(&self) -> i64 {
        (self.r * self.r - 1) * (self.g - 1)
    }
}

/// An exact point of the weight cube `[0,1]^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational>);

impl Weight {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        if let Some(c) = coords.iter().find(|c| **c < zero || **c > one) {
            return Err(Error::Domain(format!("weight coordinate {c} outside [0, 1]")));
        }
        Ok(Self(coords))
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn unchecked(coords: Vec<Rational>) -> Self {
        Self(coords)
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses comma-separated fractions such as `1/3,1/2`.
    fn from_str(text: &str) -> Result<Self> {
        let coords = text.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        Weight::new(coords)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force_pair(r: i64, d: i64) -> (i64, i64) {
        for ell in 1..r {
            if (ell * d - 1) % r == 0 {
                return (ell, (ell * d - 1) / r);
            }
        }
        unreachable!()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_pair(2, 1).unwrap(), NormalizedPair { ell: 1, e: 0 });
        assert_eq!(normalize_pair(5, 2).unwrap(), NormalizedPair { ell: 3, e: 1 });
        assert_eq!(normalize_pair(3, 2).unwrap(), NormalizedPair { ell: 2, e: 1 });
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(matches!(normalize_pair(4, 2), Err(Error::InvalidSetup(_))));
        assert!(matches!(normalize_pair(5, 5), Err(Error::InvalidSetup(_))));
        assert!(matches!(normalize_pair(5, 0), Err(Error::InvalidSetup(_))));
        assert!(matches!(normalize_pair(1, 1), Err(Error::InvalidSetup(_))));
    }

    #[test]
    fn normalize_matches_brute_force() {
        for r in 2..=100 {
            for d in 1..r {
                if r.gcd(&d) != 1 {
                    continue;
                }
                let pair = normalize_pair(r, d).unwrap();
                assert_eq!((pair.ell, pair.e), brute_force_pair(r, d), "r={r} d={d}");
                assert_eq!(pair.ell * d - r * pair.e, 1);
                assert!(0 < pair.ell && pair.ell < r);
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(moduli_dim_for(2, 2, &[], true), 3);
        let s = ModuliSetup::two_point(5, 2, 3).unwrap();
        assert_eq!(moduli_dim(&s, true), 56);
        let s = ModuliSetup::two_point(2, 1, 2).unwrap();
        assert_eq!(moduli_dim(&s, false), 7);
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim_bound(2, 2), 2);
        assert_eq!(codim_bound(5, 3), 9);
        assert_eq!(codim_bound(2, 5), 5);
    }

    #[test]
    fn genus_bound_examples_and_search() {
        assert_eq!(genus_bound_embedding(2), 5);
        assert_eq!(genus_bound_embedding(3), 6);
        assert_eq!(genus_bound_embedding(7), 10);
        for r in 2..=100 {
            let searched = (2..).find(|g| (r - 1) * (g - 1) >= r * r).unwrap();
            assert_eq!(genus_bound_embedding(r), searched);
            assert_eq!(searched, r + 3);
        }
    }

    #[test]
    fn setup_validation() {
        assert!(ModuliSetup::two_point(5, 2, 2).is_ok());
        assert!(ModuliSetup::one_point(5, 2, 2).is_ok());
        assert!(ModuliSetup::two_point(5, 2, 1).is_err());
        assert!(ModuliSetup::new(5, 2, 2, vec!["x".into()], vec![2]).is_err());
        assert!(ModuliSetup::new(5, 2, 2, vec!["x".into(), "y".into()], vec![1, 4]).is_err());
        assert!(ModuliSetup::new(5, 2, 2, vec!["x".into(), "x".into()], vec![4, 1]).is_err());
        assert!(ModuliSetup::new(5, 2, 2, vec![], vec![]).is_err());
        assert!(ModuliSetup::with_points(5, 2, 2, 3).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(fmt_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(fmt_decimal(&rat(2, 3), 6), "0.666667");
        assert_eq!(fmt_decimal(&rat(-1, 2), 6), "-0.500000");
        assert_eq!(fmt_decimal(&int(1), 6), "1.000000");
        assert_eq!(fmt_decimal(&rat(-1, 10_000_000), 6), "0.000000");
    }

    #[test]
    fn weight_parsing() {
        let w: Weight = "1/3, 1/2".parse().unwrap();
        assert_eq!(w.coords(), &[rat(1, 3), rat(1, 2)]);
        assert!("3/2,0".parse::<Weight>().is_err());
        assert!("a,b".parse::<Weight>().is_err());
    }

    proptest! {
        #[test]
        fn dimension_monotone_in_genus(r in 2i64..30, g in 2i64..30) {
            let m = [r - 1, 1];
            prop_assert!(moduli_dim_for(r, g + 1, &m, true) > moduli_dim_for(r, g, &m, true));
            prop_assert!(moduli_dim_for(r, g + 1, &m, false) > moduli_dim_for(r, g, &m, false));
        }

        #[test]
        fn flag_term_symmetric(r in 2i64..30, g in 2i64..10, a in 0i64..30, b in 0i64..30) {
            let m = [a.min(r), b.min(r)];
            let flipped = [r - m[0], r - m[1]];
            prop_assert_eq!(moduli_dim_for(r, g, &m, true), moduli_dim_for(r, g, &flipped, true));
        }
    }
}
