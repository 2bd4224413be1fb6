//! Exact rational drawings with the boundary pinned to the unit square and
//! every condition vertex on one line.

mod svg;

pub use svg::render_svg;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Triangulation, VertexId};
use crate::poly::{MultiPoly, PolyError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawError {
    #[error("no non-degenerate drawing after {attempts} attempts (seed {seed})")]
    DegenerateAfterRetries { seed: u64, attempts: u32 },
    #[error("condition is separating")]
    NotNonSeparating,
    #[error("expected a quadrilateral boundary, found {0} corners")]
    NotAQuadrilateral(usize),
    #[error("drawing has {found} vertices, triangulation has {expected}")]
    VertexCountMismatch { found: usize, expected: usize },
    #[error("binding has {found} entries for {expected} variables")]
    BindingMismatch { found: usize, expected: usize },
    #[error("variable {variable} is bound to triangle {triangle}, which does not exist")]
    NoSuchTriangle { variable: String, triangle: usize },
    #[error("bad drawing file: {0}")]
    Parse(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    /// `t·a + (1-t)·b`.
    pub fn affine(a: &Point, b: &Point, t: &Rational) -> Point {
        let s = Rational::one() - t;
        Point::new(t * &a.x + &s * &b.x, t * &a.y + &s * &b.y)
    }
}

/// Signed area of the triangle `p1 p2 p3`, positive when counterclockwise.
pub fn area(p1: &Point, p2: &Point, p3: &Point) -> Rational {
    let det = (&p2.x - &p1.x) * (&p3.y - &p1.y) - (&p3.x - &p1.x) * (&p2.y - &p1.y);
    det / Rational::from_integer(2.into())
}

/// A placement of every vertex, plus the condition line when `C` is nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub placement: Vec<Point>,
    pub line: Option<(Point, Point)>,
}

impl Drawing {
    pub fn new(placement: Vec<Point>, line: Option<(Point, Point)>) -> Self {
        Drawing { placement, line }
    }

    pub fn point(&self, v: VertexId) -> &Point {
        &self.placement[v as usize]
    }

    /// True iff every condition vertex lies exactly on the stored line.
    pub fn is_collinear(&self, t: &Triangulation) -> bool {
        match &self.line {
            None => t.condition().is_empty(),
            Some((a, b)) => t.condition().members().iter().all(|&v| area(a, b, self.point(v)).is_zero()),
        }
    }

    pub fn to_json(&self) -> String {
        let file = DrawingFile {
            vertices: self
                .placement
                .iter()
                .enumerate()
                .map(|(v, p)| (v as VertexId, [fmt_rational(&p.x), fmt_rational(&p.y)]))
                .collect(),
            line: self
                .line
                .as_ref()
                .map(|(a, b)| [[fmt_rational(&a.x), fmt_rational(&a.y)], [fmt_rational(&b.x), fmt_rational(&b.y)]]),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, DrawError> {
        let file: DrawingFile = serde_json::from_str(text).map_err(|e| DrawError::Parse(e.to_string()))?;
        let count = file.vertices.len();
        let mut placement = Vec::with_capacity(count);
        for (i, (v, [x, y])) in file.vertices.iter().enumerate() {
            if *v as usize != i {
                return Err(DrawError::Parse(format!("vertex ids must be 0..{count}")));
            }
            placement.push(Point::new(parse_rational(x)?, parse_rational(y)?));
        }
        let line = match &file.line {
            None => None,
            Some([[ax, ay], [bx, by]]) => Some((
                Point::new(parse_rational(ax)?, parse_rational(ay)?),
                Point::new(parse_rational(bx)?, parse_rational(by)?),
            )),
        };
        Ok(Drawing { placement, line })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingFile {
    vertices: BTreeMap<VertexId, [String; 2]>,
    line: Option<[[String; 2]; 2]>,
}

/// Reduced `p/q`, always with an explicit denominator.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, DrawError> {
    let bad = || DrawError::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Signed areas of the triangles outside `Triangles(C)`, keyed by triangle
/// index. Triangles of the condition are degenerate and absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AreaVector {
    pub values: BTreeMap<usize, Rational>,
}

impl AreaVector {
    /// Area of triangle `index`; zero for degenerate ones.
    pub fn get(&self, index: usize) -> Rational {
        self.values.get(&index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total(&self) -> Rational {
        self.values.values().fold(Rational::zero(), |acc, a| acc + a)
    }

    /// Values fed to polynomials: twice the area of the bound triangle, so
    /// that the whole square evaluates to 2.
    pub fn assignment(&self, binding: &[usize]) -> Vec<Rational> {
        let two = Rational::from_integer(2.into());
        binding.iter().map(|&t| self.get(t) * &two).collect()
    }
}

pub fn areas(t: &Triangulation, drawing: &Drawing) -> AreaVector {
    let values = t
        .live_triangles()
        .into_iter()
        .map(|i| {
            let [a, b, c] = t.complex().triangle(i).vertices();
            (i, area(drawing.point(a), drawing.point(b), drawing.point(c)))
        })
        .collect();
    AreaVector { values }
}

/// Sum of the signed areas of every triangle, degenerate ones included.
pub fn total_area(t: &Triangulation, drawing: &Drawing) -> Rational {
    t.complex().triangles().iter().fold(Rational::zero(), |acc, tri| {
        let [a, b, c] = tri.vertices();
        acc + area(drawing.point(a), drawing.point(b), drawing.point(c))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    /// Random rationals have numerator in `[-D, D]` and denominator in `[1, D]`.
    pub height: i64,
    pub attempts: u32,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { height: 64, attempts: 64 }
    }
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=height);
    Rational::new(n.into(), d.into())
}

fn random_point(rng: &mut ChaCha8Rng, height: i64) -> Point {
    let x = random_rational(rng, height);
    Point::new(x, random_rational(rng, height))
}

const SQUARE: [(i64, i64); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];

pub fn sample_drawing(t: &Triangulation, seed: u64) -> Result<Drawing, DrawError> {
    sample_drawing_with(t, seed, &SampleOptions::default())
}

/// Attempt `i` draws from stream `i` of the generator seeded with `seed`.
pub fn sample_drawing_with(t: &Triangulation, seed: u64, options: &SampleOptions) -> Result<Drawing, DrawError> {
    let cx = t.complex();
    if cx.corner_count() != 4 {
        return Err(DrawError::NotAQuadrilateral(cx.corner_count()));
    }
    if !t.is_non_separating() {
        return Err(DrawError::NotNonSeparating);
    }
    // Corners of C come first so the line passes through them.
    let mut order: Vec<VertexId> = cx.corners().iter().copied().filter(|&c| t.in_condition(c)).collect();
    order.extend(t.condition().members().iter().copied().filter(|&v| !cx.is_corner(v)));

    for attempt in 0..options.attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(attempt as u64);
        let mut placement: Vec<Option<Point>> = vec![None; cx.vertex_count()];
        for (&c, &(x, y)) in cx.corners().iter().zip(SQUARE.iter()) {
            placement[c as usize] = Some(Point::from_ints(x, y));
        }
        let mut anchors: Vec<Point> = Vec::new();
        for &v in &order {
            let p = match anchors.len() {
                0 | 1 => match &placement[v as usize] {
                    Some(p) => p.clone(),
                    None => random_point(&mut rng, options.height),
                },
                _ => Point::affine(&anchors[0], &anchors[1], &random_rational(&mut rng, options.height)),
            };
            if anchors.len() < 2 {
                anchors.push(p.clone());
            }
            placement[v as usize] = Some(p);
        }
        if anchors.len() == 1 {
            anchors.push(random_point(&mut rng, options.height));
        }
        for slot in placement.iter_mut().filter(|p| p.is_none()) {
            *slot = Some(random_point(&mut rng, options.height));
        }
        let line = match anchors.len() {
            0 => None,
            _ if anchors[0] == anchors[1] => continue,
            _ => Some((anchors[0].clone(), anchors[1].clone())),
        };
        let drawing = Drawing { placement: placement.into_iter().map(|p| p.expect("placed")).collect(), line };
        if areas(t, &drawing).values.values().all(|a| !a.is_zero()) {
            return Ok(drawing);
        }
    }
    Err(DrawError::DegenerateAfterRetries { seed, attempts: options.attempts })
}

/// Seed of sample `i` in a run started from `seed`.
pub fn sample_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add(i as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub seed: u64,
    /// Reduced `p/q`.
    pub value: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub pass: bool,
    pub samples: Vec<SampleReport>,
}

/// Evaluates `poly` at the doubled area vector of `samples` independent
/// drawings. Variable `i` of `poly` is bound to triangle `binding[i]`.
pub fn verify_vanishing(
    poly: &MultiPoly,
    t: &Triangulation,
    binding: &[usize],
    samples: usize,
    seed: u64,
) -> Result<VanishingReport, DrawError> {
    check_binding(poly, t, binding)?;
    let mut reports = Vec::with_capacity(samples);
    for i in 0..samples {
        let s = sample_seed(seed, i);
        let drawing = sample_drawing(t, s)?;
        let value = poly.eval(&areas(t, &drawing).assignment(binding))?;
        reports.push(SampleReport { seed: s, zero: value.is_zero(), value: fmt_rational(&value) });
    }
    Ok(VanishingReport { pass: reports.iter().all(|r| r.zero), samples: reports })
}

pub fn check_binding(poly: &MultiPoly, t: &Triangulation, binding: &[usize]) -> Result<(), DrawError> {
    let vars = poly.variables();
    if binding.len() != vars.len() {
        return Err(DrawError::BindingMismatch { found: binding.len(), expected: vars.len() });
    }
    let count = t.complex().triangles().len();
    for (name, &tri) in vars.iter().zip(binding) {
        if tri >= count {
            return Err(DrawError::NoSuchTriangle { variable: name.clone(), triangle: tri });
        }
    }
    Ok(())
}
