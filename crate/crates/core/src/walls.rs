//! Walls `Δ(s, e, n)` in the weight cube.
//!
//! A destabilizing triple `(s, e, n)` (rank, degree and flag multiplicities of
//! a subbundle) cuts out the hyperplane
//!
//! ```text
//! Σ (n_i·r − s·m_i) a_i = s·d − r·e
//! ```
//!
//! Only triples whose quotient `(r−s, d−e, m−n)` is again a valid triple are
//! considered, so every wall is the locus of a split polystable bundle, and
//! only hyperplanes meeting the open cube are kept.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{int, normalize_pair, rat, ModuliSetup, Rational, Weight};
use crate::error::Result;
use crate::par::{self, Execution};

/// Rank, degree and flag multiplicities of a destabilizing subbundle.
/// Ordered lexicographically by `(s, e, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub s: i64,
    pub e: i64,
    pub n: Vec<i64>,
}

impl Triple {
    pub fn new(s: i64, e: i64, n: Vec<i64>) -> Self {
        Self { s, e, n }
    }

    /// The quotient triple `(r−s, d−e, m−n)`.
    pub fn dual(&self, setup: &ModuliSetup) -> Triple {
        Triple {
            s: setup.rank() - self.s,
            e: setup.degree() - self.e,
            n: setup.mult().iter().zip(&self.n).map(|(m, n)| m - n).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Triple {
        Triple { s: k * self.s, e: k * self.e, n: self.n.iter().map(|n| k * n).collect() }
    }

    /// Rank and flag bounds for the subbundle and for its quotient.
    pub fn is_admissible(&self, setup: &ModuliSetup) -> bool {
        let r = setup.rank();
        if self.s <= 0 || self.s >= r || self.n.len() != setup.k() {
            return false;
        }
        let q = r - self.s;
        self.n.iter().zip(setup.mult()).all(|(&n, &m)| {
            (0..=self.s.min(m)).contains(&n) && (0..=q.min(m)).contains(&(m - n))
        })
    }

    /// The coprimality test `gcd(s, e, n) = gcd(r−s, d−e, m−n) = 1`.
    pub fn passes_coprime_test(&self, setup: &ModuliSetup) -> bool {
        fn gcd_all(t: &Triple) -> i64 {
            t.n.iter().fold(t.s.gcd(&t.e), |acc, n| acc.gcd(n))
        }
        gcd_all(self) == 1 && gcd_all(&self.dual(setup)) == 1
    }

    pub fn label(&self) -> String {
        let n: Vec<String> = self.n.iter().map(|n| n.to_string()).collect();
        format!("Δ({}, {}, ({}))", self.s, self.e, n.join(", "))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `Σ coeffs[i]·a_i = constant` with integer coefficients of gcd one and a
/// positive leading (first nonzero) coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl Hyperplane {
    fn raw(triple: &Triple, setup: &ModuliSetup) -> (Vec<i64>, i64) {
        let r = setup.rank();
        let coeffs = triple.n.iter().zip(setup.mult()).map(|(n, m)| n * r - triple.s * m).collect();
        (coeffs, triple.s * setup.degree() - r * triple.e)
    }

    pub fn from_triple(triple: &Triple, setup: &ModuliSetup) -> Self {
        let (coeffs, constant) = Self::raw(triple, setup);
        Self::normalized(coeffs, constant)
    }

    pub fn normalized(mut coeffs: Vec<i64>, mut constant: i64) -> Self {
        let g = coeffs.iter().fold(constant, |acc, c| acc.gcd(c));
        if g > 1 {
            coeffs.iter_mut().for_each(|c| *c /= g);
            constant /= g;
        }
        if coeffs.iter().find(|c| **c != 0).is_some_and(|c| *c < 0) {
            coeffs.iter_mut().for_each(|c| *c = -*c);
            constant = -constant;
        }
        Self { coeffs, constant }
    }

    /// `Σ coeffs[i]·a_i − constant`.
    pub fn eval(&self, a: &[Rational]) -> Rational {
        let lhs: Rational = self.coeffs.iter().zip(a).map(|(c, x)| int(*c) * x).sum();
        lhs - int(self.constant)
    }

    pub fn meets_open_cube(&self) -> bool {
        let lo: i64 = self.coeffs.iter().map(|c| (*c).min(0)).sum();
        let hi: i64 = self.coeffs.iter().map(|c| (*c).max(0)).sum();
        lo < self.constant && self.constant < hi
    }

    /// Endpoints of the hyperplane clipped to `[0,1]²`, sorted.
    pub fn clip_to_square(&self) -> Option<[(Rational, Rational); 2]> {
        if self.coeffs.len() != 2 {
            return None;
        }
        let (cx, cy, c) = (int(self.coeffs[0]), int(self.coeffs[1]), int(self.constant));
        let unit = |q: &Rational| *q >= Rational::zero() && *q <= Rational::one();
        let mut pts = Vec::new();
        for fixed in [Rational::zero(), Rational::one()] {
            if !cy.is_zero() {
                let y = (&c - &cx * &fixed) / &cy;
                if unit(&y) {
                    pts.push((fixed.clone(), y));
                }
            }
            if !cx.is_zero() {
                let x = (&c - &cy * &fixed) / &cx;
                if unit(&x) {
                    pts.push((x, fixed.clone()));
                }
            }
        }
        pts.sort();
        pts.dedup();
        match pts.as_slice() {
            [p, q] => Some([p.clone(), q.clone()]),
            _ => None,
        }
    }

    /// Human-readable equation such as `3a_x+2a_y=1`.
    pub fn equation(&self, names: &[&str]) -> String {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(names) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}{name}"));
            } else {
                out.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        format!("{out}={}", self.constant)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeKind {
    Negative,
    Positive,
    OnePoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityKind {
    Simple,
    Multiple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallClassification {
    pub slope_kind: SlopeKind,
    pub multiplicity_kind: MultiplicityKind,
    pub canonical_rep: Triple,
}

/// A wall together with its hyperplane and classification. The representative
/// triple is the canonical one for enumerated walls and may be its dual after
/// [`dual_wall`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    triple: Triple,
    canonical: Triple,
    hyperplane: Hyperplane,
    slope_kind: SlopeKind,
    multiple: bool,
    generators: Vec<Triple>,
    coprime_test: bool,
}

impl Wall {
    pub fn triple(&self) -> &Triple {
        &self.triple
    }

    pub fn canonical(&self) -> &Triple {
        &self.canonical
    }

    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    pub fn slope_kind(&self) -> SlopeKind {
        self.slope_kind
    }

    pub fn is_multiple(&self) -> bool {
        self.multiple
    }

    /// Every admissible triple (duals included) cutting out this hyperplane.
    pub fn generators(&self) -> &[Triple] {
        &self.generators
    }

    /// Informational only: the gcd criterion does not agree with the scaling
    /// definition of multiple walls (see `Δ(2,1,(2,0))` for `r = 5, d = 2`).
    pub fn passes_coprime_test(&self) -> bool {
        self.coprime_test
    }

    pub fn classification(&self) -> WallClassification {
        WallClassification {
            slope_kind: self.slope_kind,
            multiplicity_kind: if self.multiple { MultiplicityKind::Multiple } else { MultiplicityKind::Simple },
            canonical_rep: self.canonical.clone(),
        }
    }

    pub fn dual(&self, setup: &ModuliSetup) -> Wall {
        Wall { triple: self.triple.dual(setup), ..self.clone() }
    }

    pub fn eval(&self, a: &Weight) -> Rational {
        self.hyperplane.eval(a.coords())
    }

    /// Wall value for a one-point setup, i.e. the solution of `c·a = constant`.
    pub fn value(&self) -> Option<Rational> {
        match self.hyperplane.coeffs.as_slice() {
            [c] if *c != 0 => Some(rat(self.hyperplane.constant, *c)),
            _ => None,
        }
    }
}

/// Whether some scaling `(k·s, k·e, k·n)`, `k > 1`, of the triple or of its
/// dual is again admissible.
pub fn is_multiple(triple: &Triple, setup: &ModuliSetup) -> bool {
    let r = setup.rank();
    [triple.clone(), triple.dual(setup)]
        .iter()
        .any(|t| (2..).take_while(|k| k * t.s < r).any(|k| t.scaled(k).is_admissible(setup)))
}

pub fn dual_wall(w: &Wall, setup: &ModuliSetup) -> Wall {
    w.dual(setup)
}

fn slope_kind(h: &Hyperplane) -> SlopeKind {
    match h.coeffs.as_slice() {
        [_] => SlopeKind::OnePoint,
        [cx, cy] if cx.signum() * cy.signum() > 0 => SlopeKind::Negative,
        _ => SlopeKind::Positive,
    }
}

/// All admissible triples with rank `s` whose hyperplane meets the open cube.
fn triples_of_rank(setup: &ModuliSetup, s: i64) -> Vec<Triple> {
    let r = setup.rank();
    let d = setup.degree();
    let ranges: Vec<(i64, i64)> =
        setup.mult().iter().map(|&m| ((m - (r - s)).max(0), s.min(m))).collect();
    let mut flags: Vec<Vec<i64>> = vec![vec![]];
    for (lo, hi) in ranges {
        flags = flags
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |n| {
                    let mut v = prefix.clone();
                    v.push(n);
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for n in flags {
        let coeffs: Vec<i64> = n.iter().zip(setup.mult()).map(|(n, m)| n * r - s * m).collect();
        let lo: i64 = coeffs.iter().map(|c| (*c).min(0)).sum();
        let hi: i64 = coeffs.iter().map(|c| (*c).max(0)).sum();
        // lo < s·d − r·e < hi
        let e_min = Integer::div_floor(&(s * d - hi), &r) + 1;
        let e_max = Integer::div_ceil(&(s * d - lo), &r) - 1;
        for e in e_min..=e_max {
            let t = Triple::new(s, e, n.clone());
            debug_assert!(Hyperplane::from_triple(&t, setup).meets_open_cube());
            if t.is_admissible(setup) {
                out.push(t);
            }
        }
    }
    out
}

pub fn enumerate_walls(setup: &ModuliSetup) -> Vec<Wall> {
    enumerate_walls_with(setup, Execution::default())
}

/// Enumerates every wall exactly once, keyed by its hyperplane, and returns
/// them sorted by canonical triple.
pub fn enumerate_walls_with(setup: &ModuliSetup, exec: Execution) -> Vec<Wall> {
    let ranks: Vec<i64> = (1..setup.rank()).collect();
    let triples = par::flat_map(exec, &ranks, |&s| triples_of_rank(setup, s));
    let mut groups: BTreeMap<Hyperplane, Vec<Triple>> = BTreeMap::new();
    for t in triples {
        groups.entry(Hyperplane::from_triple(&t, setup)).or_default().push(t);
    }
    let mut walls: Vec<Wall> = groups
        .into_iter()
        .map(|(hyperplane, mut generators)| {
            generators.sort();
            let canonical = generators
                .iter()
                .find(|t| t.n[0] == t.s)
                .unwrap_or(&generators[0])
                .clone();
            Wall {
                triple: canonical.clone(),
                slope_kind: slope_kind(&hyperplane),
                multiple: is_multiple(&canonical, setup),
                coprime_test: canonical.passes_coprime_test(setup),
                canonical,
                hyperplane,
                generators,
            }
        })
        .collect();
    walls.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    walls
}

/// The smallest one-point wall value together with the rank/degree unit of
/// its destabilizing family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstWall {
    pub value: Rational,
    pub destabilizer_rank_unit: i64,
    pub destabilizer_degree_unit: i64,
    /// Set when the value is 1: the first contraction is then the Hecke
    /// boundary rather than an interior wall.
    pub hecke_boundary: bool,
    pub ell: i64,
}

/// Scans every admissible one-point triple for wall values in `(0, 1]` and
/// returns the minimum.
pub fn first_wall(r: i64, d: i64) -> Result<FirstWall> {
    let pair = normalize_pair(r, d)?;
    let setup = ModuliSetup::one_point(r, d, 2)?;
    let zero = Rational::zero();
    let one = Rational::one();
    let mut best: Option<(Rational, Triple)> = None;
    for s in 1..r {
        for n in [s - 1, s] {
            let c = n * r - s * (r - 1);
            // e bounded by 0 < (s·d − r·e)/c ≤ 1
            for e in -1..=s + 1 {
                let t = Triple::new(s, e, vec![n]);
                if !t.is_admissible(&setup) || c == 0 {
                    continue;
                }
                let value = rat(s * d - r * e, c);
                if value <= zero || value > one {
                    continue;
                }
                let better = match &best {
                    None => true,
                    Some((v, bt)) => value < *v || (value == *v && t < *bt),
                };
                if better {
                    best = Some((value, t));
                }
            }
        }
    }
    let (value, _) = best.expect("the one-point problem always has a wall value in (0, 1]");
    Ok(FirstWall {
        hecke_boundary: value == one,
        value,
        destabilizer_rank_unit: pair.ell,
        destabilizer_degree_unit: pair.e,
        ell: pair.ell,
    })
}

/// Dimension of the image `M(s, e, n) ×_Pic M(r−s, d−e, m−n)` of the
/// wall-crossing centre.
pub fn wall_center_dim(triple: &Triple, setup: &ModuliSetup) -> i64 {
    let g = setup.genus();
    let part = |t: &Triple| {
        let flags: i64 = t.n.iter().map(|n| n * (t.s - n)).sum();
        t.s * t.s * (g - 1) + 1 + flags
    };
    part(triple) + part(&triple.dual(setup)) - g
}
