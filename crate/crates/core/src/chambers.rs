//! Chamber decomposition of the weight square by the wall arrangement.
//!
//! Chambers are identified by their sign vectors: the complement of the walls
//! in the open square is cut by lines, so each sign vector that occurs
//! describes one convex open region.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{int, rat, ModuliSetup, Rational, Weight};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::walls::{enumerate_walls_with, Triple, Wall};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_negative() {
            Sign::Negative
        } else if q.is_zero() {
            Sign::Zero
        } else {
            Sign::Positive
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

/// One sign per wall, in canonical wall order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn is_generic(&self) -> bool {
        !self.0.contains(&Sign::Zero)
    }

    pub fn hamming(&self, other: &SignVector) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

type Point = (Rational, Rational);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub id: usize,
    pub signs: SignVector,
    /// An exact interior point.
    pub sample: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberDecomposition {
    pub setup: ModuliSetup,
    pub walls: Vec<Wall>,
    /// Sorted by sign vector; `chambers[i].id == i`.
    pub chambers: Vec<Chamber>,
    /// Unordered pairs `(a, b)`, `a < b`, of chambers sharing a wall facet.
    pub adjacency: BTreeSet<(usize, usize)>,
    /// Vertices of the induced subdivision of the closed cube, sorted.
    pub vertices: Vec<Weight>,
    /// Number of edges of the induced subdivision, boundary included.
    pub edge_count: usize,
}

impl ChamberDecomposition {
    pub fn chamber_of(&self, signs: &SignVector) -> Option<usize> {
        self.chambers.binary_search_by(|c| c.signs.cmp(signs)).ok()
    }

    /// `V − E + F` for the subdivision of the square (or `V − E` on the
    /// interval when k = 1). Equals one for a valid subdivision.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices.len() as i64;
        let e = self.edge_count as i64;
        if self.setup.k() == 2 {
            v - e + self.chambers.len() as i64
        } else {
            v - e
        }
    }

    /// The vertices of the subdivision lying in the closure of a chamber.
    pub fn closure_vertices(&self, id: usize) -> Vec<Weight> {
        let signs = &self.chambers[id].signs.0;
        self.vertices
            .iter()
            .filter(|v| {
                self.walls.iter().zip(signs).all(|(w, s)| {
                    let here = Sign::of(&w.eval(v));
                    here == Sign::Zero || here == *s
                })
            })
            .cloned()
            .collect()
    }
}

/// A straight segment between two generic weights and the walls it crosses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipPath {
    pub start: Weight,
    pub end: Weight,
    pub crossings: Vec<Crossing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Index into the canonical wall list.
    pub wall: usize,
    pub triple: Triple,
    /// Segment parameter in `(0, 1)`.
    pub t: Rational,
    pub point: Weight,
}

/// The walls of one setup, with point location, decomposition and paths.
#[derive(Debug, Clone)]
pub struct Arrangement {
    setup: ModuliSetup,
    walls: Vec<Wall>,
}

impl Arrangement {
    pub fn new(setup: &ModuliSetup) -> Self {
        Self::with_execution(setup, Execution::default())
    }

    pub fn with_execution(setup: &ModuliSetup, exec: Execution) -> Self {
        Self { setup: setup.clone(), walls: enumerate_walls_with(setup, exec) }
    }

    pub fn setup(&self) -> &ModuliSetup {
        &self.setup
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    fn check_weight(&self, a: &Weight) -> Result<()> {
        if a.dim() != self.setup.k() {
            return Err(Error::Domain(format!(
                "weight {a} has {} coordinates, setup has {} points",
                a.dim(),
                self.setup.k()
            )));
        }
        Ok(())
    }

    fn signs(&self, a: &Weight) -> SignVector {
        SignVector(self.walls.iter().map(|w| Sign::of(&w.eval(a))).collect())
    }

    pub fn locate(&self, a: &Weight) -> Result<SignVector> {
        self.check_weight(a)?;
        Ok(self.signs(a))
    }

    pub fn decompose(&self) -> ChamberDecomposition {
        self.decompose_with(Execution::default())
    }

    pub fn decompose_with(&self, exec: Execution) -> ChamberDecomposition {
        match self.setup.k() {
            1 => self.decompose_interval(),
            _ => self.decompose_square(exec),
        }
    }

    fn decompose_interval(&self) -> ChamberDecomposition {
        let mut cuts: Vec<Rational> = self.walls.iter().filter_map(Wall::value).collect();
        cuts.push(Rational::zero());
        cuts.push(Rational::one());
        cuts.sort();
        cuts.dedup();
        let samples: Vec<Weight> = cuts
            .windows(2)
            .map(|w| Weight::unchecked(vec![(&w[0] + &w[1]) / int(2)]))
            .collect();
        let mut found: BTreeMap<SignVector, Weight> = BTreeMap::new();
        let mut order = Vec::new();
        for s in &samples {
            let signs = self.signs(s);
            order.push(signs.clone());
            found.entry(signs).or_insert_with(|| s.clone());
        }
        let chambers = into_chambers(found);
        let id_of = |s: &SignVector| chambers.binary_search_by(|c| c.signs.cmp(s)).unwrap();
        let adjacency = order
            .windows(2)
            .map(|p| {
                let (a, b) = (id_of(&p[0]), id_of(&p[1]));
                (a.min(b), a.max(b))
            })
            .collect();
        ChamberDecomposition {
            setup: self.setup.clone(),
            walls: self.walls.clone(),
            edge_count: cuts.len() - 1,
            vertices: cuts.into_iter().map(|c| Weight::unchecked(vec![c])).collect(),
            chambers,
            adjacency,
        }
    }

    fn lines(&self) -> Vec<(Rational, Rational, Rational)> {
        self.walls
            .iter()
            .map(|w| {
                let h = w.hyperplane();
                (int(h.coeffs[0]), int(h.coeffs[1]), int(h.constant))
            })
            .collect()
    }

    fn square_vertices(&self) -> BTreeSet<Point> {
        let lines = self.lines();
        let mut pts: BTreeSet<Point> = BTreeSet::new();
        for x in [Rational::zero(), Rational::one()] {
            for y in [Rational::zero(), Rational::one()] {
                pts.insert((x.clone(), y));
            }
        }
        for w in &self.walls {
            if let Some([p, q]) = w.hyperplane().clip_to_square() {
                pts.insert(p);
                pts.insert(q);
            }
        }
        let unit = |q: &Rational| *q >= Rational::zero() && *q <= Rational::one();
        for (i, (a1, b1, c1)) in lines.iter().enumerate() {
            for (a2, b2, c2) in &lines[i + 1..] {
                let det = a1 * b2 - a2 * b1;
                if det.is_zero() {
                    continue;
                }
                let x = (c1 * b2 - c2 * b1) / &det;
                let y = (a1 * c2 - a2 * c1) / &det;
                if unit(&x) && unit(&y) {
                    pts.insert((x, y));
                }
            }
        }
        pts
    }

    fn decompose_square(&self, exec: Execution) -> ChamberDecomposition {
        let lines = self.lines();
        let vertices = self.square_vertices();
        let xs: Vec<Rational> =
            vertices.iter().map(|(x, _)| x.clone()).collect::<BTreeSet<_>>().into_iter().collect();
        let slabs: Vec<Rational> = xs.windows(2).map(|w| (&w[0] + &w[1]) / int(2)).collect();

        // Each chamber's x-projection is an open interval between vertex
        // abscissae, so it meets the midline of at least one slab.
        let samples: Vec<(SignVector, Weight)> = par::flat_map(exec, &slabs, |xm| {
            let mut ys: Vec<Rational> = vec![Rational::zero(), Rational::one()];
            for (a, b, c) in &lines {
                if !b.is_zero() {
                    let y = (c - a * xm) / b;
                    if y > Rational::zero() && y < Rational::one() {
                        ys.push(y);
                    }
                }
            }
            ys.sort();
            ys.dedup();
            ys.windows(2)
                .map(|w| {
                    let p = Weight::unchecked(vec![xm.clone(), (&w[0] + &w[1]) / int(2)]);
                    (self.signs(&p), p)
                })
                .collect()
        });
        let mut found: BTreeMap<SignVector, Weight> = BTreeMap::new();
        for (signs, p) in samples {
            debug_assert!(signs.is_generic());
            found.entry(signs).or_insert(p);
        }
        let chambers = into_chambers(found);
        let id_of = |s: &SignVector| chambers.binary_search_by(|c| c.signs.cmp(s)).ok();

        let wall_ids: Vec<usize> = (0..self.walls.len()).collect();
        let vertex_list: Vec<Point> = vertices.iter().cloned().collect();
        let facets: Vec<(usize, (SignVector, SignVector))> = par::flat_map(exec, &wall_ids, |&wi| {
            let on_wall: Vec<&Point> = vertex_list
                .iter()
                .filter(|(x, y)| {
                    let (a, b, c) = &lines[wi];
                    (a * x + b * y - c).is_zero()
                })
                .collect();
            on_wall
                .windows(2)
                .map(|seg| {
                    let mid = ((&seg[0].0 + &seg[1].0) / int(2), (&seg[0].1 + &seg[1].1) / int(2));
                    (wi, self.facet_sides(wi, &mid))
                })
                .collect()
        });
        let mut adjacency = BTreeSet::new();
        let mut wall_edges = 0usize;
        for (_, (minus, plus)) in &facets {
            wall_edges += 1;
            let a = id_of(minus).expect("facet side is a chamber");
            let b = id_of(plus).expect("facet side is a chamber");
            adjacency.insert((a.min(b), a.max(b)));
        }

        let sides: [fn(&Point) -> bool; 4] = [
            |p: &Point| p.0.is_zero(),
            |p: &Point| p.0.is_one(),
            |p: &Point| p.1.is_zero(),
            |p: &Point| p.1.is_one(),
        ];
        let boundary_edges: usize = sides
            .iter()
            .map(|on_side| vertex_list.iter().filter(|p| on_side(p)).count() - 1)
        .sum();

        ChamberDecomposition {
            setup: self.setup.clone(),
            walls: self.walls.clone(),
            chambers,
            adjacency,
            vertices: vertex_list.into_iter().map(|(x, y)| Weight::unchecked(vec![x, y])).collect(),
            edge_count: wall_edges + boundary_edges,
        }
    }

    /// Sign vectors on either side of wall `wi` near a point of it that lies
    /// on no other wall.
    fn facet_sides(&self, wi: usize, mid: &Point) -> (SignVector, SignVector) {
        let h = self.walls[wi].hyperplane();
        let normal = (int(h.coeffs[0]), int(h.coeffs[1]));
        let base = self.signs(&Weight::unchecked(vec![mid.0.clone(), mid.1.clone()]));
        let inside = |q: &Rational| *q > Rational::zero() && *q < Rational::one();
        let mut step = rat(1, 2);
        loop {
            let side = |sign: i64| {
                let t = &step * int(sign);
                Weight::unchecked(vec![&mid.0 + &t * &normal.0, &mid.1 + &t * &normal.1])
            };
            let (pm, pp) = (side(-1), side(1));
            let ok = [&pm, &pp].iter().all(|p| p.coords().iter().all(inside));
            if ok {
                let (sm, sp) = (self.signs(&pm), self.signs(&pp));
                let stable = |s: &SignVector| {
                    s.0.iter().zip(&base.0).enumerate().all(|(j, (a, b))| j == wi || a == b)
                };
                if stable(&sm) && stable(&sp) {
                    return (sm, sp);
                }
            }
            step /= int(2);
        }
    }

    pub fn path(&self, a: &Weight, b: &Weight) -> Result<FlipPath> {
        let sa = self.locate(a)?;
        let sb = self.locate(b)?;
        if !sa.is_generic() {
            return Err(Error::NonGeneric(a.to_string()));
        }
        if !sb.is_generic() {
            return Err(Error::NonGeneric(b.to_string()));
        }
        let dir: Vec<Rational> = b.coords().iter().zip(a.coords()).map(|(x, y)| x - y).collect();
        let mut crossings: Vec<Crossing> = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            if sa.0[i] == sb.0[i] {
                continue;
            }
            let h = w.hyperplane();
            let rate: Rational = h.coeffs.iter().zip(&dir).map(|(c, x)| int(*c) * x).sum();
            let t = -w.eval(a) / rate;
            let point = a.coords().iter().zip(&dir).map(|(x, v)| x + &t * v).collect();
            crossings.push(Crossing { wall: i, triple: w.canonical().clone(), t, point: Weight::unchecked(point) });
        }
        crossings.sort_by(|x, y| x.t.cmp(&y.t).then(x.wall.cmp(&y.wall)));
        if let Some(pair) = crossings.windows(2).find(|p| p[0].t == p[1].t) {
            return Err(Error::DegeneratePath(pair[0].t.to_string()));
        }
        Ok(FlipPath { start: a.clone(), end: b.clone(), crossings })
    }
}

fn into_chambers(found: BTreeMap<SignVector, Weight>) -> Vec<Chamber> {
    found
        .into_iter()
        .enumerate()
        .map(|(id, (signs, sample))| Chamber { id, signs, sample })
        .collect()
}

pub fn locate(a: &Weight, setup: &ModuliSetup) -> Result<SignVector> {
    Arrangement::new(setup).locate(a)
}

pub fn decompose(setup: &ModuliSetup) -> ChamberDecomposition {
    Arrangement::new(setup).decompose()
}

pub fn path(a: &Weight, b: &Weight, setup: &ModuliSetup) -> Result<FlipPath> {
    Arrangement::new(setup).path(a, b)
}
