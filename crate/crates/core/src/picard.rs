//! Divisor classes `O(c_x, c_y) ⊗ Θ^t` in the rank-3 lattice spanned by
//! `O(1,0)`, `O(0,1)` and `Θ`, together with the cones the weight square
//! maps onto.
//!
//! The one-point models live on the coordinate planes: `P(E_x)` uses
//! `(c_x, 0, t)` and `P(E_y^*)` uses `(0, c_y, t)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{int, normalize_pair, ModuliSetup, Rational, Weight};
use crate::chambers::ChamberDecomposition;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    pub c_x: Rational,
    pub c_y: Rational,
    pub t: Rational,
}

impl DivisorClass {
    pub fn new(c_x: Rational, c_y: Rational, t: Rational) -> Self {
        Self { c_x, c_y, t }
    }

    pub fn from_ints(c_x: i64, c_y: i64, t: i64) -> Self {
        Self::new(int(c_x), int(c_y), int(t))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0)
    }

    pub fn theta() -> Self {
        Self::from_ints(0, 0, 1)
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.c_x, &self.c_y, &self.t]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.c_x * k, &self.c_y * k, &self.t * k)
    }

    pub fn dot(&self, other: &DivisorClass) -> Rational {
        &self.c_x * &other.c_x + &self.c_y * &other.c_y + &self.t * &other.t
    }

    pub fn cross(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass::new(
            &self.c_y * &other.t - &self.t * &other.c_y,
            &self.t * &other.c_x - &self.c_x * &other.t,
            &self.c_x * &other.c_y - &self.c_y * &other.c_x,
        )
    }

    /// Projective normal form: divided by the absolute value of the first
    /// nonzero coordinate.
    pub fn ray_normal_form(&self) -> Option<DivisorClass> {
        let lead = self.coords().into_iter().find(|c| !c.is_zero())?.abs();
        Some(self.scale(&(Rational::one() / lead)))
    }

    /// Whether `self = λ·other` for some `λ > 0`.
    pub fn is_positive_multiple_of(&self, other: &DivisorClass) -> bool {
        match (self.ray_normal_form(), other.ray_normal_form()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }

    /// Primitive integer vector on the same ray.
    pub fn primitive(&self) -> DivisorClass {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.coords().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coords().iter().map(|c| (*c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let q: Vec<Rational> = ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect();
        DivisorClass::new(q[0].clone(), q[1].clone(), q[2].clone())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({}, {}) ⊗ Θ^{}", self.c_x, self.c_y, self.t)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.c_x + &o.c_x, &self.c_y + &o.c_y, &self.t + &o.t)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        &self + &o
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.c_x - &o.c_x, &self.c_y - &o.c_y, &self.t - &o.t)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-&self.c_x, -&self.c_y, -&self.t)
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, o: &DivisorClass) -> DivisorClass {
        o.scale(self)
    }
}

/// A polyhedral cone given by generating rays (primitive, deduplicated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    rays: Vec<DivisorClass>,
    label: Option<&'static str>,
}

impl Cone {
    pub fn new(rays: Vec<DivisorClass>) -> Result<Self> {
        let mut out: Vec<DivisorClass> = Vec::new();
        for r in rays {
            if r.is_zero() {
                return Err(Error::UnsupportedCone("zero ray".into()));
            }
            let p = r.primitive();
            if !out.contains(&p) {
                out.push(p);
            }
        }
        Ok(Self { rays: out, label: None })
    }

    pub fn with_label(mut self, label: &'static str) -> Self {
        self.label = Some(label);
        self
    }

    pub fn rays(&self) -> &[DivisorClass] {
        &self.rays
    }

    pub fn label(&self) -> Option<&'static str> {
        self.label
    }

    pub fn contains(&self, v: &DivisorClass, strict: bool) -> Result<bool> {
        cone_contains(self, v, strict)
    }
}

fn rank(vectors: &[DivisorClass]) -> usize {
    let nonzero: Vec<&DivisorClass> = vectors.iter().filter(|v| !v.is_zero()).collect();
    let Some(first) = nonzero.first() else { return 0 };
    let Some(second) = nonzero.iter().find(|v| !first.cross(v).is_zero()) else { return 1 };
    let normal = first.cross(second);
    if nonzero.iter().any(|v| !normal.dot(v).is_zero()) {
        3
    } else {
        2
    }
}

/// Inward facet normals: oriented normals `n` with `n·ray ≥ 0` for every ray,
/// taken from pairwise cross products (in-plane for a 2-dimensional cone).
fn facet_normals(rays: &[DivisorClass], plane: Option<&DivisorClass>) -> Vec<DivisorClass> {
    let mut normals: Vec<DivisorClass> = Vec::new();
    let mut push = |n: DivisorClass| {
        if n.is_zero() {
            return;
        }
        let dots: Vec<Rational> = rays.iter().map(|r| n.dot(r)).collect();
        let oriented = if dots.iter().all(|d| !d.is_negative()) {
            n
        } else if dots.iter().all(|d| !d.is_positive()) {
            -&n
        } else {
            return;
        };
        let key = oriented.ray_normal_form().expect("nonzero");
        if !normals.contains(&key) {
            normals.push(key);
        }
    };
    match plane {
        None => {
            for (i, a) in rays.iter().enumerate() {
                for b in &rays[i + 1..] {
                    push(a.cross(b));
                }
            }
        }
        Some(p) => rays.iter().for_each(|a| push(p.cross(a))),
    }
    normals
}

/// Exact (strict = relative interior) membership in a pointed cone.
pub fn cone_contains(cone: &Cone, v: &DivisorClass, strict: bool) -> Result<bool> {
    let rays = cone.rays();
    match rank(rays) {
        0 => Err(Error::UnsupportedCone("no rays".into())),
        1 => {
            let r = &rays[0];
            if rays.iter().any(|s| !s.is_positive_multiple_of(r)) {
                return Err(Error::UnsupportedCone("rays span a line".into()));
            }
            if v.is_zero() {
                return Ok(!strict);
            }
            Ok(v.is_positive_multiple_of(r))
        }
        2 => {
            let a = &rays[0];
            let b = rays.iter().find(|s| !a.cross(s).is_zero()).expect("rank 2");
            let plane = a.cross(b);
            let normals = facet_normals(rays, Some(&plane));
            if normals.len() < 2 || rank(&normals) < 2 {
                return Err(Error::UnsupportedCone("two-dimensional cone is not pointed".into()));
            }
            if !plane.dot(v).is_zero() {
                return Ok(false);
            }
            Ok(satisfies(&normals, v, strict))
        }
        _ => {
            let normals = facet_normals(rays, None);
            if rank(&normals) < 3 {
                return Err(Error::UnsupportedCone("cone is not pointed".into()));
            }
            Ok(satisfies(&normals, v, strict))
        }
    }
}

fn satisfies(normals: &[DivisorClass], v: &DivisorClass, strict: bool) -> bool {
    normals.iter().all(|n| {
        let d = n.dot(v);
        if strict {
            d.is_positive()
        } else {
            !d.is_negative()
        }
    })
}

/// The affine map from the weight cube to divisor classes:
/// `Θ ⊗ (O(r,0) ⊗ Θ^{−ℓ})^{a_x} ⊗ (O(0,r) ⊗ Θ^{ℓ})^{a_y}` for two points and
/// `Θ ⊗ (O(r) ⊗ Θ^{−ℓ})^{a}` for one.
pub fn weight_to_divisor(a: &Weight, setup: &ModuliSetup) -> Result<DivisorClass> {
    if a.dim() != setup.k() {
        return Err(Error::Domain(format!("weight {a} does not match {} points", setup.k())));
    }
    let r = int(setup.rank());
    let ell = int(setup.ell());
    let c = a.coords();
    Ok(match c {
        [ax] => DivisorClass::new(&r * ax, Rational::zero(), Rational::one() - &ell * ax),
        [ax, ay] => DivisorClass::new(&r * ax, &r * ay, Rational::one() - &ell * ax + &ell * ay),
        _ => unreachable!("setups have one or two points"),
    })
}

fn require_two_points(setup: &ModuliSetup) -> Result<()> {
    if setup.k() != 2 {
        return Err(Error::Precondition("this operation needs the two-point setup".into()));
    }
    Ok(())
}

/// Rays `Θ`, `O(r,0)⊗Θ^{1−ℓ}`, `O(0,r)⊗Θ^{1+ℓ}` and `O(r,r)⊗Θ`.
pub fn effective_cone(setup: &ModuliSetup) -> Result<Cone> {
    require_two_points(setup)?;
    let (r, ell) = (setup.rank(), setup.ell());
    Cone::new(vec![
        DivisorClass::from_ints(0, 0, 1),
        DivisorClass::from_ints(r, 0, 1 - ell),
        DivisorClass::from_ints(0, r, 1 + ell),
        DivisorClass::from_ints(r, r, 1),
    ])
    .map(|c| c.with_label("effective"))
}

/// Nef cone of `P(E_x)` (side x) or `P(E_x^*)` (side y).
pub fn nef_cone_one_point(side: Side, setup: &ModuliSetup) -> Result<Cone> {
    let _ = setup;
    let rays = match side {
        Side::X => vec![DivisorClass::from_ints(0, 0, 1), DivisorClass::from_ints(1, 0, 0)],
        Side::Y => vec![DivisorClass::from_ints(0, 0, 1), DivisorClass::from_ints(0, 1, 1)],
    };
    Cone::new(rays).map(|c| c.with_label("nef"))
}

pub fn canonical_class(setup: &ModuliSetup) -> DivisorClass {
    match setup.k() {
        2 => DivisorClass::from_ints(-setup.rank(), -setup.rank(), -2),
        _ => canonical_class_one_point(Side::X, setup.rank(), setup.ell()),
    }
}

/// `ω_{P(E_x)} = O(−r) ⊗ Θ^{ℓ−2}` and `ω_{P(E_x^*)} = O(−r) ⊗ Θ^{−ℓ−2}`.
pub fn canonical_class_one_point(side: Side, r: i64, ell: i64) -> DivisorClass {
    match side {
        Side::X => DivisorClass::from_ints(-r, 0, ell - 2),
        Side::Y => DivisorClass::from_ints(0, -r, -ell - 2),
    }
}

/// Exponent of `Θ` in `det(Rq_* E^*)^{-1}`.
pub fn det_dual_theta_exponent(r: i64, d: i64, g: i64) -> Result<i64> {
    let p = normalize_pair(r, d)?;
    if g < 2 {
        return Err(Error::Domain(format!("genus must be at least 2, got {g}")));
    }
    Ok(p.ell * (1 - g) - p.e)
}

/// The gcd `k` and the ambient class equal to the pull-back of `Θ^k` from
/// the Hecke target on the given side.
pub fn hecke_pullback_identity(side: Side, r: i64, d: i64) -> Result<(i64, DivisorClass)> {
    let ell = normalize_pair(r, d)?.ell;
    Ok(match side {
        Side::X => (r.gcd(&(d - 1)), DivisorClass::from_ints(r, 0, 1 - ell)),
        Side::Y => (r.gcd(&(d - (r - 1))), DivisorClass::from_ints(0, r, 1 + ell)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Edge {
    #[serde(rename = "a_x=0")]
    AxZero,
    #[serde(rename = "a_x=1")]
    AxOne,
    #[serde(rename = "a_y=0")]
    AyZero,
    #[serde(rename = "a_y=1")]
    AyOne,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::AxZero, Edge::AxOne, Edge::AyZero, Edge::AyOne];

    pub fn parse(text: &str) -> Result<Edge> {
        match text.replace(' ', "").as_str() {
            "a_x=0" | "x0" => Ok(Edge::AxZero),
            "a_x=1" | "x1" => Ok(Edge::AxOne),
            "a_y=0" | "y0" => Ok(Edge::AyZero),
            "a_y=1" | "y1" => Ok(Edge::AyOne),
            other => Err(Error::Parse(format!("unknown edge {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Edge::AxZero => "a_x=0",
            Edge::AxOne => "a_x=1",
            Edge::AyZero => "a_y=0",
            Edge::AyOne => "a_y=1",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContractionKind {
    Forgetful,
    Hecke,
    Base,
}

/// `M(rank, L(twist·p), remaining points with multiplicities)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliLabel {
    pub rank: i64,
    /// Multiple of the marked point the determinant is twisted by (≤ 0).
    pub determinant_twist: i64,
    pub twist_point: Option<String>,
    pub points: Vec<String>,
    pub mult: Vec<i64>,
}

impl fmt::Display for ModuliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let det = match (&self.twist_point, self.determinant_twist) {
            (Some(p), -1) => format!("L(-{p})"),
            (Some(p), t) if t != 0 => format!("L({t}{p})"),
            _ => "L".to_string(),
        };
        if self.points.is_empty() {
            write!(f, "M({}, {det})", self.rank)
        } else {
            let m: Vec<String> = self.mult.iter().map(|m| m.to_string()).collect();
            write!(f, "M_({})({}, {det}, ({}))", self.points.join(","), self.rank, m.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionDescriptor {
    pub edge: Edge,
    pub kind: ContractionKind,
    pub target: ModuliLabel,
}

/// The contraction attached to a boundary edge of the weight cube: weight
/// going to 0 forgets the flag, weight going to 1 is the Hecke modification
/// twisting the determinant by `−(r − m)·p`.
pub fn boundary_contraction(edge: Edge, setup: &ModuliSetup) -> Result<ContractionDescriptor> {
    let r = setup.rank();
    let idx = match edge {
        Edge::AxZero | Edge::AxOne => 0,
        Edge::AyZero | Edge::AyOne => 1,
    };
    if idx >= setup.k() {
        return Err(Error::Precondition(format!("edge {} needs two marked points", edge.name())));
    }
    let point = setup.points()[idx].clone();
    let m = setup.mult()[idx];
    let (points, mult): (Vec<String>, Vec<i64>) = setup
        .points()
        .iter()
        .zip(setup.mult())
        .enumerate()
        .filter(|(i, _)| *i != idx)
        .map(|(_, (p, m))| (p.clone(), *m))
        .unzip();
    let to_one = matches!(edge, Edge::AxOne | Edge::AyOne);
    let kind = match (to_one, points.is_empty()) {
        (true, _) => ContractionKind::Hecke,
        (false, true) => ContractionKind::Base,
        (false, false) => ContractionKind::Forgetful,
    };
    let target = ModuliLabel {
        rank: r,
        determinant_twist: if to_one { -(r - m) } else { 0 },
        twist_point: to_one.then_some(point),
        points,
        mult,
    };
    Ok(ContractionDescriptor { edge, kind, target })
}

/// Image of a chamber closure under [`weight_to_divisor`].
///
/// This is the variation-of-GIT guess for the nef cone of the model at that
/// chamber; it is not a proven statement and is labelled accordingly.
pub fn heuristic_nef_cone(decomposition: &ChamberDecomposition, chamber: usize) -> Result<Cone> {
    let setup = &decomposition.setup;
    let rays = decomposition
        .closure_vertices(chamber)
        .iter()
        .map(|v| weight_to_divisor(v, setup))
        .collect::<Result<Vec<_>>>()?;
    Cone::new(rays).map(|c| c.with_label("VGIT-heuristic"))
}
