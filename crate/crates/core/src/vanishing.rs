//! Bookkeeping of the vanishing ranges for `H^i(M(r, L), E_x ⊗ Θ^j)` and
//! `H^i(M(r, L), E_x ⊗ E_y^*)`.
//!
//! Regions are conjunctions of half-planes in the `(i, j)` lattice. Their
//! thresholds are kept as exact rationals and turned into integer bounds
//! once, so that strict inequalities at integral `j` are decided exactly.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{fmt_rational, int, normalize_pair, rat, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cell {
    pub i: i64,
    pub j: i64,
}

impl Cell {
    pub fn new(i: i64, j: i64) -> Self {
        Self { i, j }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

impl std::str::FromStr for Cell {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [i, j] => {
                let i = i.parse().map_err(|_| Error::Parse(format!("bad degree in cell {s:?}")))?;
                let j = j.parse().map_err(|_| Error::Parse(format!("bad twist in cell {s:?}")))?;
                Ok(Cell::new(i, j))
            }
            _ => Err(Error::Parse(format!("cell must look like i,j; got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionName {
    Kodaira,
    Lepotier,
    Flip,
    SerreDualSide,
    Step3Kollar,
}

impl RegionName {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionName::Kodaira => "kodaira",
            RegionName::Lepotier => "lepotier",
            RegionName::Flip => "flip",
            RegionName::SerreDualSide => "serre_dual_side",
            RegionName::Step3Kollar => "step3_kollar",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Var {
    I,
    J,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// `var rel bound`, with `bound` rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub var: Var,
    pub rel: Relation,
    pub bound: Rational,
    lo: Option<i64>,
    hi: Option<i64>,
}

impl Constraint {
    pub fn new(var: Var, rel: Relation, bound: Rational) -> Self {
        let floor = bound.floor().to_integer();
        let ceil = bound.ceil().to_integer();
        let as_i64 = |b: num_bigint::BigInt| i64::try_from(b).expect("threshold fits in i64");
        let (lo, hi) = match rel {
            Relation::Ge => (Some(as_i64(ceil)), None),
            Relation::Gt => (Some(as_i64(floor) + 1), None),
            Relation::Le => (None, Some(as_i64(floor))),
            Relation::Eq if bound.is_integer() => (Some(as_i64(ceil.clone())), Some(as_i64(ceil))),
            // an equation with a fractional right-hand side has no integral solution
            Relation::Eq => (Some(1), Some(0)),
        };
        Self { var, rel, bound, lo, hi }
    }

    fn int(var: Var, rel: Relation, bound: i64) -> Self {
        Self::new(var, rel, int(bound))
    }

    pub fn holds(&self, cell: Cell) -> bool {
        let v = match self.var {
            Var::I => cell.i,
            Var::J => cell.j,
        };
        self.lo.is_none_or(|lo| v >= lo) && self.hi.is_none_or(|hi| v <= hi)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.var {
            Var::I => "i",
            Var::J => "j",
        };
        let rel = match self.rel {
            Relation::Ge => ">=",
            Relation::Gt => ">",
            Relation::Le => "<=",
            Relation::Eq => "=",
        };
        write!(f, "{var} {rel} {}", fmt_rational(&self.bound))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingRegion {
    pub name: RegionName,
    pub constraints: Vec<Constraint>,
}

impl VanishingRegion {
    pub fn contains(&self, cell: Cell) -> bool {
        self.constraints.iter().all(|c| c.holds(cell))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.constraints.iter().map(|c| c.to_string()).collect();
        parts.join(" and ")
    }
}

/// Parameters of one side of the duality: rank, normalization `ℓ`, genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SideParams {
    r: i64,
    ell: i64,
    g: i64,
}

impl SideParams {
    fn dual(self) -> Self {
        Self { ell: self.r - self.ell, ..self }
    }

    fn regions(self) -> Vec<VanishingRegion> {
        let mut out = vec![kodaira(self.ell), lepotier(self.r), flip(self.r, self.ell, self.g)];
        if self.ell == 1 {
            out.push(step3(self.r));
        }
        out
    }

    /// Coverage is constant in `j` from here upward.
    fn j_max(self) -> i64 {
        (self.ell - 1).max(0)
    }
}

fn kodaira(ell: i64) -> VanishingRegion {
    VanishingRegion {
        name: RegionName::Kodaira,
        constraints: vec![Constraint::int(Var::I, Relation::Ge, 1), Constraint::int(Var::J, Relation::Ge, ell - 1)],
    }
}

fn lepotier(r: i64) -> VanishingRegion {
    VanishingRegion {
        name: RegionName::Lepotier,
        constraints: vec![Constraint::int(Var::I, Relation::Ge, r), Constraint::int(Var::J, Relation::Ge, -1)],
    }
}

fn flip(r: i64, ell: i64, g: i64) -> VanishingRegion {
    VanishingRegion {
        name: RegionName::Flip,
        constraints: vec![
            Constraint::int(Var::I, Relation::Ge, 1),
            Constraint::int(Var::I, Relation::Le, (r - 1) * (g - 1) - 1),
            Constraint::new(Var::J, Relation::Gt, int(-1) + rat(1 - ell, r)),
        ],
    }
}

fn step3(r: i64) -> VanishingRegion {
    VanishingRegion {
        name: RegionName::Step3Kollar,
        constraints: vec![
            Constraint::int(Var::J, Relation::Eq, -1),
            Constraint::int(Var::I, Relation::Ge, 1),
            Constraint::int(Var::I, Relation::Le, r - 1),
        ],
    }
}

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidSetup(format!("genus must be at least 2, got {g}")));
    }
    Ok(())
}

fn side(r: i64, d: i64, g: i64) -> Result<SideParams> {
    let ell = normalize_pair(r, d)?.ell;
    check_genus(g)?;
    Ok(SideParams { r, ell, g })
}

/// Dimension `n = (r² − 1)(g − 1)` of the fixed-determinant moduli space.
pub fn moduli_dimension(r: i64, g: i64) -> i64 {
    (r * r - 1) * (g - 1)
}

pub fn kodaira_region(r: i64, d: i64) -> Result<VanishingRegion> {
    Ok(kodaira(normalize_pair(r, d)?.ell))
}

pub fn lepotier_region(r: i64, d: i64) -> Result<VanishingRegion> {
    normalize_pair(r, d)?;
    Ok(lepotier(r))
}

pub fn flip_region(r: i64, d: i64, g: i64) -> Result<VanishingRegion> {
    let p = side(r, d, g)?;
    Ok(flip(p.r, p.ell, p.g))
}

/// `None` unless `ℓ = 1`.
pub fn step3_region(r: i64, d: i64) -> Result<Option<VanishingRegion>> {
    let ell = normalize_pair(r, d)?.ell;
    Ok((ell == 1).then(|| step3(r)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SerreImage {
    pub cell: Cell,
    /// Normalization of the side on which the image is to be tested.
    pub ell: i64,
    pub dual_side: bool,
}

/// `(i, j) ↦ (n − i, −j − 3)`, switching to the side with `ℓ′ = r − ℓ`.
pub fn serre_reduce(cell: Cell, r: i64, d: i64, g: i64) -> Result<SerreImage> {
    let p = side(r, d, g)?;
    let n = moduli_dimension(r, g);
    if !(0..=n).contains(&cell.i) {
        return Err(Error::Domain(format!("degree {} outside 0..={n}", cell.i)));
    }
    Ok(SerreImage { cell: Cell::new(n - cell.i, -cell.j - 3), ell: r - p.ell, dual_side: true })
}

/// Both sides' regions, built once per `(r, d, g)`.
struct Coverer {
    n: i64,
    direct: Vec<VanishingRegion>,
    dual: Vec<VanishingRegion>,
}

impl Coverer {
    fn new(p: SideParams) -> Self {
        Self { n: moduli_dimension(p.r, p.g), direct: p.regions(), dual: p.dual().regions() }
    }

    fn cover(&self, cell: Cell) -> CoverageRow {
        let names = |regions: &[VanishingRegion], c: Cell| -> Vec<RegionName> {
            regions.iter().filter(|reg| reg.contains(c)).map(|reg| reg.name).collect()
        };
        if cell.j >= -1 {
            return CoverageRow { cell, covered_by: names(&self.direct, cell), via: None };
        }
        let image = Cell::new(self.n - cell.i, -cell.j - 3);
        let found = names(&self.dual, image);
        let covered_by = if found.is_empty() {
            found
        } else {
            std::iter::once(RegionName::SerreDualSide).chain(found).collect()
        };
        CoverageRow { cell, covered_by, via: Some(image) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub cell: Cell,
    pub covered_by: Vec<RegionName>,
    /// Set when the cell was decided through its Serre-dual image.
    pub via: Option<Cell>,
}

impl CoverageRow {
    pub fn is_covered(&self) -> bool {
        !self.covered_by.is_empty()
    }
}

/// Coverage of `1 ≤ i ≤ n − 1` over a finite twist window.
///
/// Direct rows span `−1 ≤ j ≤ j_max`; each region is upward closed in `j`
/// beyond `j_max = max(ℓ − 1, 0)`, so the last row stands for all larger
/// twists. Serre rows span `−3 − j′_max ≤ j ≤ −2` with `j′_max` taken on
/// the dual side, and likewise stand for all smaller twists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageTable {
    pub r: i64,
    pub d: i64,
    pub g: i64,
    pub ell: i64,
    pub n: i64,
    pub j_max: i64,
    pub dual_ell: i64,
    pub dual_j_max: i64,
    pub rows: Vec<CoverageRow>,
    pub serre_rows: Vec<CoverageRow>,
}

impl CoverageTable {
    /// Uncovered cells with `j ≥ −1`.
    pub fn uncovered(&self) -> Vec<Cell> {
        self.rows.iter().filter(|r| !r.is_covered()).map(|r| r.cell).collect()
    }

    /// Uncovered cells with `j ≤ −2`, in original coordinates.
    pub fn uncovered_serre(&self) -> Vec<Cell> {
        self.serre_rows.iter().filter(|r| !r.is_covered()).map(|r| r.cell).collect()
    }

    pub fn row(&self, cell: Cell) -> Option<&CoverageRow> {
        self.rows.iter().chain(&self.serre_rows).find(|r| r.cell == cell)
    }
}

pub fn acm_coverage(r: i64, d: i64, g: i64) -> Result<CoverageTable> {
    let p = side(r, d, g)?;
    let q = p.dual();
    let n = moduli_dimension(r, g);
    let (j_max, dual_j_max) = (p.j_max(), q.j_max());
    let cov = Coverer::new(p);
    let mut rows = Vec::new();
    let mut serre_rows = Vec::new();
    for i in 1..n {
        for j in -1..=j_max {
            rows.push(cov.cover(Cell::new(i, j)));
        }
        for j in (-3 - dual_j_max)..=-2 {
            serre_rows.push(cov.cover(Cell::new(i, j)));
        }
    }
    Ok(CoverageTable { r, d, g, ell: p.ell, n, j_max, dual_ell: q.ell, dual_j_max, rows, serre_rows })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "cells", rename_all = "snake_case")]
pub enum AcmVerdict {
    Acm,
    Gap(Vec<Cell>),
}

impl AcmVerdict {
    pub fn is_acm(&self) -> bool {
        matches!(self, AcmVerdict::Acm)
    }
}

/// `Acm` when no cell of either window is left uncovered; otherwise the
/// gap, direct cells first.
pub fn acm_verdict(r: i64, d: i64, g: i64) -> Result<AcmVerdict> {
    let table = acm_coverage(r, d, g)?;
    let mut gap = table.uncovered();
    gap.extend(table.uncovered_serre());
    Ok(if gap.is_empty() { AcmVerdict::Acm } else { AcmVerdict::Gap(gap) })
}

/// Uncovered cells `(i, −1 + k·j′)`, one representative per residue beyond
/// the finite windows.
pub fn acm_wrt_power_gaps(r: i64, d: i64, g: i64, k: i64) -> Result<Vec<Cell>> {
    let p = side(r, d, g)?;
    if k < 1 {
        return Err(Error::Domain(format!("power must be positive, got {k}")));
    }
    let n = moduli_dimension(r, g);
    // twists −1 + k·m from the first one past the dual window (j ≤ −3 − j′_max)
    // to the first one at or above j_max; coverage is constant outside
    let hi = p.j_max();
    let lo = -3 - p.dual().j_max();
    let m_lo = Integer::div_floor(&(lo + 1), &k);
    let m_hi = Integer::div_ceil(&(hi + 1), &k);
    let twists: Vec<i64> = (m_lo..=m_hi).map(|m| -1 + k * m).collect();
    let cov = Coverer::new(p);
    let mut gaps = Vec::new();
    for i in 1..n {
        for &j in &twists {
            let cell = Cell::new(i, j);
            if !cov.cover(cell).is_covered() {
                gaps.push(cell);
            }
        }
    }
    gaps.sort();
    Ok(gaps)
}

/// Whether `E_x ⊗ Θ^{-1}` has no intermediate cohomology against `Θ^k`
/// according to the tracked regions.
pub fn acm_wrt_power(r: i64, d: i64, g: i64, k: i64) -> Result<bool> {
    Ok(acm_wrt_power_gaps(r, d, g, k)?.is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedRange {
    /// `i < (r − 1)(g − 1)`: wall-crossing to the Hecke side.
    BelowCodimension,
    /// `i ≥ r²`: Le Potier type vanishing.
    AtLeastRankSquared,
}

/// Degrees `from..=to` sharing the same covering ranges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedRun {
    pub from: i64,
    pub to: i64,
    pub covered_by: Vec<EmbedRange>,
}

/// Bondal–Orlov hypotheses that are taken as known input.
pub const EMBED_ASSUMPTIONS: [&str; 2] = [
    "Hom(E_x, E_x) is one-dimensional for every x",
    "Ext^i(E_x, E_x) vanishes for i outside [0, 1]",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbedCoverage {
    pub r: i64,
    pub d: i64,
    pub g: i64,
    pub n: i64,
    pub runs: Vec<EmbedRun>,
    pub uncovered: Vec<i64>,
    pub fully_faithful: bool,
    pub assumptions: Vec<&'static str>,
}

/// Coverage of `H^i(E_x ⊗ E_y^*) = 0`, `0 ≤ i ≤ n`, for `x ≠ y`.
pub fn embed_coverage(r: i64, d: i64, g: i64) -> Result<EmbedCoverage> {
    side(r, d, g)?;
    let n = moduli_dimension(r, g);
    let low = (r - 1) * (g - 1);
    let square = r * r;
    let covered = |i: i64| {
        let mut by = Vec::new();
        if i < low {
            by.push(EmbedRange::BelowCodimension);
        }
        if i >= square {
            by.push(EmbedRange::AtLeastRankSquared);
        }
        by
    };
    let mut cuts = vec![0, low.clamp(0, n + 1), square.clamp(0, n + 1), n + 1];
    cuts.sort_unstable();
    cuts.dedup();
    let runs: Vec<EmbedRun> =
        cuts.windows(2).map(|w| EmbedRun { from: w[0], to: w[1] - 1, covered_by: covered(w[0]) }).collect();
    let uncovered: Vec<i64> = runs.iter().filter(|r| r.covered_by.is_empty()).flat_map(|r| r.from..=r.to).collect();
    Ok(EmbedCoverage {
        r,
        d,
        g,
        n,
        fully_faithful: uncovered.is_empty(),
        runs,
        uncovered,
        assumptions: EMBED_ASSUMPTIONS.to_vec(),
    })
}

/// Smallest genus `g` with `(r − 1)(g − 1) ≥ r²`.
pub fn embed_genus_threshold(r: i64) -> i64 {
    Integer::div_ceil(&(r * r), &(r - 1)) + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(v: &[(i64, i64)]) -> Vec<Cell> {
        v.iter().map(|&(i, j)| Cell::new(i, j)).collect()
    }

    #[test]
    fn region_examples() {
        let k = kodaira_region(5, 2).unwrap();
        assert!(k.contains(Cell::new(1, 2)));
        assert!(!k.contains(Cell::new(1, 1)));
        assert!(kodaira_region(2, 1).unwrap().contains(Cell::new(3, 0)));

        let l = lepotier_region(5, 2).unwrap();
        assert!(l.contains(Cell::new(5, -1)));
        assert!(!l.contains(Cell::new(4, -1)));
        assert!(lepotier_region(2, 1).unwrap().contains(Cell::new(2, 7)));

        let f = flip_region(5, 2, 3).unwrap();
        assert!(f.contains(Cell::new(1, -1)));
        assert!(!f.contains(Cell::new(8, 0)));
        assert!(f.contains(Cell::new(7, 0)));
        assert!(!flip_region(2, 1, 3).unwrap().contains(Cell::new(1, -1)));
        assert!(flip_region(2, 1, 3).unwrap().contains(Cell::new(1, 0)));
        assert_eq!(f.describe(), "i >= 1 and i <= 7 and j > -7/5");

        assert!(step3_region(5, 2).unwrap().is_none());
        let s = step3_region(3, 1).unwrap().unwrap();
        assert!(s.contains(Cell::new(2, -1)) && !s.contains(Cell::new(3, -1)) && !s.contains(Cell::new(2, 0)));
    }

    #[test]
    fn strict_threshold_is_exact() {
        // ℓ = 1 puts the threshold exactly at −1
        for r in 2..12 {
            let f = flip_region(r, 1, 4).unwrap();
            assert!(!f.contains(Cell::new(1, -1)));
            assert!(f.contains(Cell::new(1, 0)));
        }
        let c = Constraint::new(Var::J, Relation::Gt, rat(-7, 5));
        assert!(c.holds(Cell::new(0, -1)) && !c.holds(Cell::new(0, -2)));
        let e = Constraint::new(Var::J, Relation::Eq, rat(1, 2));
        assert!(!e.holds(Cell::new(0, 0)) && !e.holds(Cell::new(0, 1)));
    }

    #[test]
    fn serre_examples() {
        let a = serre_reduce(Cell::new(1, -2), 2, 1, 2).unwrap();
        assert_eq!((a.cell, a.ell), (Cell::new(2, -1), 1));
        let b = serre_reduce(Cell::new(10, -4), 5, 2, 3).unwrap();
        assert_eq!((b.cell, b.ell), (Cell::new(38, 1), 2));
        assert!(serre_reduce(Cell::new(49, 0), 5, 2, 3).is_err());
    }

    #[test]
    fn serre_is_an_involution() {
        for (r, d, g) in [(2, 1, 2), (5, 2, 3), (7, 3, 2)] {
            let n = moduli_dimension(r, g);
            for i in 0..=n {
                for j in -12..12 {
                    let once = serre_reduce(Cell::new(i, j), r, d, g).unwrap();
                    let dual_d = r - d;
                    let twice = serre_reduce(once.cell, r, dual_d, g).unwrap();
                    assert_eq!(twice.cell, Cell::new(i, j));
                    assert_eq!(twice.ell, normalize_pair(r, d).unwrap().ell);
                }
            }
        }
    }

    #[test]
    fn higher_genus_is_acm() {
        assert!(acm_verdict(2, 1, 3).unwrap().is_acm());
        assert!(acm_coverage(2, 1, 3).unwrap().uncovered().is_empty());
        assert!(acm_verdict(7, 4, 3).unwrap().is_acm());
    }

    #[test]
    fn genus_two_gaps() {
        assert!(acm_verdict(2, 1, 2).unwrap().is_acm());
        // ℓ = 3: the degree r − 1 row is reached only by Kodaira from j = 2
        let t = acm_coverage(5, 2, 2).unwrap();
        assert_eq!(t.uncovered(), cells(&[(4, -1), (4, 0), (4, 1)]));
        // dual side ℓ′ = 2 leaves (4, −1), (4, 0) there, i.e. (20, −2), (20, −3) here
        assert_eq!(t.uncovered_serre(), cells(&[(20, -3), (20, -2)]));
        // ℓ = 1: Step 3 closes j = −1, the dual side (ℓ′ = 2) does not
        let t = acm_coverage(3, 1, 2).unwrap();
        assert!(t.uncovered().is_empty());
        assert_eq!(t.uncovered_serre(), cells(&[(6, -3), (6, -2)]));
        assert_eq!(acm_verdict(3, 1, 2).unwrap(), AcmVerdict::Gap(cells(&[(6, -3), (6, -2)])));
    }

    #[test]
    fn serre_rows_are_tagged() {
        let t = acm_coverage(5, 2, 3).unwrap();
        let row = t.row(Cell::new(10, -4)).unwrap();
        assert_eq!(row.via, Some(Cell::new(38, 1)));
        assert_eq!(row.covered_by[0], RegionName::SerreDualSide);
        assert!(t.row(Cell::new(10, 0)).unwrap().via.is_none());
    }

    #[test]
    fn power_examples() {
        assert!(!acm_wrt_power(5, 2, 2, 1).unwrap());
        assert!(acm_wrt_power(2, 1, 2, 1).unwrap());
        assert!(acm_wrt_power(5, 2, 3, 1).unwrap());
        // twist −1 itself is uncovered at (4, −1)
        assert_eq!(acm_wrt_power_gaps(5, 2, 2, 4).unwrap(), cells(&[(4, -1)]));
        assert!(acm_wrt_power(5, 2, 2, 0).is_err());
    }

    #[test]
    fn power_agrees_with_explicit_window() {
        for (r, d) in [(2, 1), (3, 1), (3, 2), (5, 2), (5, 4), (7, 3)] {
            for g in 2..=4 {
                for k in 1..=8 {
                    let table = acm_coverage(r, d, g).unwrap();
                    let n = table.n;
                    let cov = Coverer::new(side(r, d, g).unwrap());
                    let mut expected = false;
                    for m in -40i64..=40 {
                        let j = -1 + k * m;
                        for i in 1..n {
                            expected |= !cov.cover(Cell::new(i, j)).is_covered();
                        }
                    }
                    assert_eq!(acm_wrt_power(r, d, g, k).unwrap(), !expected, "{r} {d} {g} {k}");
                }
            }
        }
    }

    #[test]
    fn table_window_suffices() {
        // rows above j_max repeat the coverage of j_max
        for (r, d, g) in [(5, 2, 2), (7, 2, 2), (7, 6, 2), (4, 3, 2)] {
            let p = side(r, d, g).unwrap();
            let cov = Coverer::new(p);
            for i in 1..cov.n {
                let top = cov.cover(Cell::new(i, p.j_max())).is_covered();
                for j in p.j_max()..p.j_max() + 10 {
                    assert_eq!(cov.cover(Cell::new(i, j)).is_covered(), top);
                }
            }
        }
    }

    #[test]
    fn embed_examples() {
        let e = embed_coverage(2, 1, 5).unwrap();
        assert!(e.fully_faithful && e.uncovered.is_empty());
        assert_eq!(embed_coverage(2, 1, 4).unwrap().uncovered, vec![3]);
        assert_eq!(embed_coverage(5, 2, 7).unwrap().uncovered, vec![24]);
        assert_eq!(embed_coverage(5, 2, 8).unwrap().uncovered, Vec::<i64>::new());
        assert_eq!(e.assumptions.len(), 2);
        let runs = &embed_coverage(5, 2, 7).unwrap().runs;
        assert_eq!(runs.iter().map(|r| (r.from, r.to)).collect::<Vec<_>>(), vec![(0, 23), (24, 24), (25, 144)]);
        for r in 2..30 {
            assert_eq!(embed_genus_threshold(r), r + 3);
        }
    }

    #[test]
    fn coverage_grows_with_genus() {
        for (r, d) in [(3, 1), (5, 2), (4, 1)] {
            let f2 = flip_region(r, d, 2).unwrap();
            let f3 = flip_region(r, d, 3).unwrap();
            for i in 0..40 {
                for j in -3..6 {
                    let c = Cell::new(i, j);
                    assert!(!f2.contains(c) || f3.contains(c));
                }
            }
        }
    }

    #[test]
    fn cell_parsing() {
        assert_eq!("4,-1".parse::<Cell>().unwrap(), Cell::new(4, -1));
        assert_eq!("(4, 2)".parse::<Cell>().unwrap(), Cell::new(4, 2));
        assert!("4".parse::<Cell>().is_err());
    }
}
