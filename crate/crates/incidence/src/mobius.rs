//! Real-cross-ratio geometry on the Möbius plane: concyclicity via complex
//! cross-ratios, concyclic tilings, and the Miquel / nine-circles witnesses.

use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::surface::Tiling;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum MobiusPoint {
    Finite(Scalar),
    Infinity,
}

impl MobiusPoint {
    pub fn finite_i(re: i64, im: i64) -> MobiusPoint {
        MobiusPoint::Finite(Scalar::gaussian_int(re, im))
    }

    pub fn eq_point(&self, other: &MobiusPoint) -> bool {
        match (self, other) {
            (MobiusPoint::Infinity, MobiusPoint::Infinity) => true,
            (MobiusPoint::Finite(a), MobiusPoint::Finite(b)) => a.eq_scalar(b),
            _ => false,
        }
    }
}

impl fmt::Display for MobiusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MobiusPoint::Infinity => write!(f, "inf"),
            MobiusPoint::Finite(z) => write!(f, "{z}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MobiusError {
    DuplicatePoint,
    MissingLabel(String),
    NotEligible,
    ResampleExhausted,
    ApproxResidualTooLarge(f64),
}

impl fmt::Display for MobiusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MobiusError::DuplicatePoint => write!(f, "duplicate point"),
            MobiusError::MissingLabel(v) => write!(f, "vertex {v} has no label"),
            MobiusError::NotEligible => write!(f, "tiling is not eligible"),
            MobiusError::ResampleExhausted => write!(f, "resampling budget exhausted"),
            MobiusError::ApproxResidualTooLarge(r) => write!(f, "approx residual {r}"),
        }
    }
}

impl std::error::Error for MobiusError {}

pub type Result<T> = std::result::Result<T, MobiusError>;

/// ((z1-z3)(z2-z4))/((z2-z3)(z1-z4)), dropping both factors containing the
/// point at infinity.
pub fn complex_cross_ratio(
    p1: &MobiusPoint,
    p2: &MobiusPoint,
    p3: &MobiusPoint,
    p4: &MobiusPoint,
) -> Result<Scalar> {
    let pts = [p1, p2, p3, p4];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i].eq_point(pts[j]) {
                return Err(MobiusError::DuplicatePoint);
            }
        }
    }
    let diff = |a: &MobiusPoint, b: &MobiusPoint| -> Option<Scalar> {
        match (a, b) {
            (MobiusPoint::Finite(x), MobiusPoint::Finite(y)) => Some(x - y),
            _ => None,
        }
    };
    let mut num = Scalar::one();
    let mut den = Scalar::one();
    for f in [diff(p1, p3), diff(p2, p4)].into_iter().flatten() {
        num = num * f;
    }
    for f in [diff(p2, p3), diff(p1, p4)].into_iter().flatten() {
        den = den * f;
    }
    if den.is_zero() {
        return Err(MobiusError::DuplicatePoint);
    }
    Ok(num / den)
}

/// Four distinct points lie on a circle (lines are circles through infinity)
/// iff their cross-ratio is real; invariant under all orderings.
pub fn concyclic(
    p1: &MobiusPoint,
    p2: &MobiusPoint,
    p3: &MobiusPoint,
    p4: &MobiusPoint,
) -> Result<bool> {
    Ok(complex_cross_ratio(p1, p2, p3, p4)?.is_real())
}

/// Tile cross-ratio for an all-points labeling of tile (v0,v1,v2,v3):
/// pairing (u,w) = z_u - z_w in the master-theorem pattern.
pub fn mobius_tile_cross_ratio(
    z: &[&MobiusPoint; 4],
) -> Result<Scalar> {
    complex_cross_ratio(z[0], z[2], z[1], z[3])
}

#[derive(Debug, Clone)]
pub struct MobiusReport {
    pub tile_ratios: Vec<Scalar>,
    pub tile_concyclic: Vec<bool>,
    pub product: Scalar,
    pub excluded: usize,
    pub hypothesis_failures: Vec<usize>,
    pub excluded_concyclic: bool,
}

impl MobiusReport {
    pub fn verdict(&self) -> bool {
        self.hypothesis_failures.is_empty() && self.excluded_concyclic
    }
}

/// Product of tile cross-ratios is exactly 1; reality of all-but-one implies
/// reality of the last. Approx labels are judged at 1e-9.
pub fn concyclic_tiling_check(
    t: &Tiling,
    labels: &BTreeMap<String, MobiusPoint>,
    excluded: usize,
) -> Result<MobiusReport> {
    if !t.validate().eligible() {
        return Err(MobiusError::NotEligible);
    }
    let get = |v: usize| -> Result<&MobiusPoint> {
        labels
            .get(&t.ids[v])
            .ok_or_else(|| MobiusError::MissingLabel(t.ids[v].clone()))
    };
    let all: Vec<&MobiusPoint> = (0..t.ids.len()).map(get).collect::<Result<_>>()?;
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if all[i].eq_point(all[j]) {
                return Err(MobiusError::DuplicatePoint);
            }
        }
    }
    let mut tile_ratios = Vec::new();
    let mut tile_concyclic = Vec::new();
    let mut product = Scalar::one();
    let mut hypothesis_failures = Vec::new();
    for (tile, q) in t.tiles.iter().enumerate() {
        let r = mobius_tile_cross_ratio(&[get(q[0])?, get(q[1])?, get(q[2])?, get(q[3])?])?;
        let real = r.is_real();
        product = product * r.clone();
        if !real && tile != excluded {
            hypothesis_failures.push(tile);
        }
        tile_ratios.push(r);
        tile_concyclic.push(real);
    }
    let excluded_concyclic = tile_concyclic[excluded];
    Ok(MobiusReport {
        tile_ratios,
        tile_concyclic,
        product,
        excluded,
        hypothesis_failures,
        excluded_concyclic,
    })
}

// -- exact circle helpers (Gaussian rationals) ---------------------------------------

fn re(z: &Scalar) -> Scalar {
    (z + &z.conj()) / Scalar::from_int(2)
}

/// Second intersection of the circle centered at `o` through `p` with the
/// line p + s*d (s real); rational whenever the inputs are.
fn second_on_circle(o: &Scalar, p: &Scalar, d: &Scalar) -> Option<Scalar> {
    let dd = re(&(d * &d.conj()));
    if dd.is_zero() {
        return None;
    }
    let po = p - o;
    let s = -(re(&(&d.conj() * &po)) + re(&(&d.conj() * &po))) / dd;
    if s.is_zero() {
        return None;
    }
    Some(p + &(&s * d))
}

/// Second intersection of two circles (centers o1, o2) sharing the point `p`:
/// reflect along the radical direction i*(o2-o1).
fn second_of_circles(o1: &Scalar, o2: &Scalar, p: &Scalar) -> Option<Scalar> {
    let d = Scalar::gaussian_int(0, 1) * (o2 - o1);
    second_on_circle(o1, p, &d)
}

/// Circumcenter of three points (rational for Gaussian-rational inputs).
fn circumcenter(a: &Scalar, b: &Scalar, c: &Scalar) -> Option<Scalar> {
    // solve |z-a|^2 = |z-b|^2 = |z-c|^2 as a real 2x2 linear system
    let two = Scalar::from_int(2);
    let i = Scalar::gaussian_int(0, 1);
    let rows = [(a - b, re(&(a * &a.conj())) - re(&(b * &b.conj()))),
                (a - c, re(&(a * &a.conj())) - re(&(c * &c.conj())))];
    // 2 Re(conj(z) * (a-b)) = |a|^2 - |b|^2
    let (u, e1) = rows[0].clone();
    let (v, e2) = rows[1].clone();
    let (ux, uy) = (re(&u), re(&(&i.conj() * &u)));
    let (vx, vy) = (re(&v), re(&(&i.conj() * &v)));
    let det = &(&ux * &vy) - &(&uy * &vx);
    if det.is_zero() {
        return None;
    }
    let x = &(&e1 * &vy) - &(&e2 * &uy);
    let y = &(&ux * &e2) - &(&vx * &e1);
    let x = x / (&two * &det).clone();
    let y = y / (&two * &det).clone();
    Some(x + i * y)
}

/// Intersection of the real lines (u1 v1) and (u2 v2) in the complex plane.
fn line_line(u1: &Scalar, v1: &Scalar, u2: &Scalar, v2: &Scalar) -> Option<Scalar> {
    let i = Scalar::gaussian_int(0, 1);
    let d1 = v1 - u1;
    let d2 = v2 - u2;
    // u1 + s d1 = u2 + t d2; cross(d1, d2) = Im(conj(d1) d2)
    let cross = |a: &Scalar, b: &Scalar| re(&(&i.conj() * &(&a.conj() * b)));
    let det = cross(&d1, &d2);
    if det.is_zero() {
        return None;
    }
    let w = u2 - u1;
    let s = cross(&w, &d2) / det;
    Some(u1 + &(&s * &d1))
}

fn gaussian_rand(rng: &mut Rng) -> Scalar {
    Scalar::gaussian_int(rng.int_in(-50, 50), rng.int_in(-50, 50))
}

/// Rational point on the circle (center o, radius r) via the tangent
/// half-angle parametrization.
fn circle_point(o: &Scalar, r: i64, rng: &mut Rng) -> Scalar {
    let t = Scalar::ratio(rng.int_in(-40, 40), rng.int_in(1, 12));
    let one = Scalar::one();
    let den = &one + &(&t * &t);
    let x = (&one - &(&t * &t)) / den.clone();
    let y = (Scalar::from_int(2) * t) / den;
    o + &(&Scalar::from_int(r) * &(x + Scalar::gaussian_int(0, 1) * y))
}

// -- witnesses -----------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleWitnessKind {
    Miquel,
    NineCircles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Gaussian-rational construction; every check exact.
    ExactPartial,
    /// Double-precision construction; residuals below 1e-9.
    Approx,
}

pub struct CircleWitness {
    pub tiling: Tiling,
    pub labels: BTreeMap<String, MobiusPoint>,
    pub excluded: usize,
    pub report: MobiusReport,
}

/// Cube tiling on points P1..P8 (the Miquel six-quadruple pattern).
pub fn miquel_tiling() -> Tiling {
    Tiling::from_unoriented(
        &["P1", "P4", "P6", "P7"],
        &["P2", "P3", "P5", "P8"],
        &[
            ["P1", "P2", "P7", "P8"],
            ["P1", "P2", "P6", "P5"],
            ["P1", "P5", "P4", "P8"],
            ["P7", "P3", "P6", "P2"],
            ["P7", "P8", "P4", "P3"],
            ["P4", "P5", "P6", "P3"],
        ],
    )
    .expect("miquel cube tiling")
}

/// Pappus torus tiling with all-point labels (a, b swap roles, c = infinity).
pub fn nine_circles_tiling() -> Tiling {
    Tiling::from_unoriented(
        &["P1", "P2", "P3", "P4", "P5", "P6"],
        &["a", "b", "c"],
        &[
            ["P3", "b", "P4", "c"],
            ["P5", "b", "P6", "c"],
            ["P2", "a", "P3", "c"],
            ["P6", "a", "P1", "c"],
            ["P1", "a", "P4", "b"],
            ["P2", "b", "P5", "a"],
            ["P1", "b", "P2", "c"],
            ["P4", "a", "P5", "c"],
            ["P3", "a", "P6", "b"],
        ],
    )
    .expect("nine circles tiling")
}

pub fn circle_witness(kind: CircleWitnessKind, seed: u64, backend: Backend) -> Result<CircleWitness> {
    for attempt in 0..64u64 {
        let mut rng = Rng::for_trial(seed, attempt);
        let out = match (kind, backend) {
            (CircleWitnessKind::Miquel, Backend::ExactPartial) => miquel_exact(&mut rng),
            (CircleWitnessKind::Miquel, Backend::Approx) => miquel_approx(&mut rng),
            (CircleWitnessKind::NineCircles, Backend::ExactPartial) => nine_circles_exact(&mut rng),
            (CircleWitnessKind::NineCircles, Backend::Approx) => nine_circles_approx(&mut rng),
        };
        if let Some(w) = out? {
            return Ok(w);
        }
    }
    Err(MobiusError::ResampleExhausted)
}

fn finish(
    tiling: Tiling,
    labels: BTreeMap<String, MobiusPoint>,
    excluded: usize,
) -> Result<Option<CircleWitness>> {
    match concyclic_tiling_check(&tiling, &labels, excluded) {
        Ok(report) if report.verdict() => Ok(Some(CircleWitness { tiling, labels, excluded, report })),
        Ok(_) | Err(MobiusError::DuplicatePoint) => Ok(None),
        Err(e) => Err(e),
    }
}

fn miquel_exact(rng: &mut Rng) -> Result<Option<CircleWitness>> {
    let oa = gaussian_rand(rng);
    let r = rng.int_in(1, 20);
    let (p1, p2, p5, p6) = (
        circle_point(&oa, r, rng),
        circle_point(&oa, r, rng),
        circle_point(&oa, r, rng),
        circle_point(&oa, r, rng),
    );
    // circle B through P1, P2: center on the perpendicular bisector
    let mid = (&p1 + &p2) / Scalar::from_int(2);
    let t = Scalar::ratio(rng.nonzero_int(30), rng.int_in(1, 8));
    let ob = mid + t * (Scalar::gaussian_int(0, 1) * (&p2 - &p1));
    let Some(p7) = second_on_circle(&ob, &p1, &gaussian_rand(rng)) else { return Ok(None) };
    let Some(p8) = second_on_circle(&ob, &p2, &gaussian_rand(rng)) else { return Ok(None) };
    let Some(oc) = circumcenter(&p2, &p6, &p7) else { return Ok(None) };
    let Some(od) = circumcenter(&p1, &p5, &p8) else { return Ok(None) };
    // circle E through P5, P6, and a fresh point
    let q = gaussian_rand(rng);
    let Some(oe) = circumcenter(&p5, &p6, &q) else { return Ok(None) };
    let Some(p3) = second_of_circles(&oc, &oe, &p6) else { return Ok(None) };
    let Some(p4) = second_of_circles(&od, &oe, &p5) else { return Ok(None) };
    let tiling = miquel_tiling();
    let excluded = 0; // quadruple {P1,P2,P7,P8}? no: exclude {P3,P4,P7,P8}
    let excluded = tiling
        .tiles
        .iter()
        .position(|q| {
            let mut names: Vec<&str> = q.iter().map(|&v| tiling.ids[v].as_str()).collect();
            names.sort_unstable();
            names == ["P3", "P4", "P7", "P8"]
        })
        .unwrap_or(excluded);
    let mut labels = BTreeMap::new();
    for (name, z) in [
        ("P1", p1), ("P2", p2), ("P3", p3), ("P4", p4),
        ("P5", p5), ("P6", p6), ("P7", p7), ("P8", p8),
    ] {
        labels.insert(name.to_string(), MobiusPoint::Finite(z));
    }
    finish(tiling, labels, excluded)
}

fn miquel_approx(rng: &mut Rng) -> Result<Option<CircleWitness>> {
    let fl = |rng: &mut Rng| rng.int_in(-1000, 1000) as f64 / 101.0;
    let angle = |rng: &mut Rng| rng.int_in(0, 62831) as f64 / 10000.0;
    let (ax, ay, ar) = (fl(rng), fl(rng), 1.0 + fl(rng).abs());
    let on_a = |th: f64| Scalar::approx(ax + ar * th.cos(), ay + ar * th.sin());
    let (p1, p2, p5, p6) = (
        on_a(angle(rng)),
        on_a(angle(rng)),
        on_a(angle(rng)),
        on_a(angle(rng)),
    );
    // circle B through P1, P2 via a third control point, then P7, P8 as honest
    // line-circle intersections (quadratic formula)
    let ctrl = Scalar::approx(fl(rng), fl(rng));
    let Some(ob) = circumcenter_f(&p1, &p2, &ctrl) else { return Ok(None) };
    let rb = dist(&ob, &p1);
    let Some(p7) = line_circle_root(&ob, rb, &Scalar::approx(fl(rng), fl(rng)), fl(rng), &p1)
    else {
        return Ok(None);
    };
    let Some(p8) = line_circle_root(&ob, rb, &Scalar::approx(fl(rng), fl(rng)), fl(rng), &p2)
    else {
        return Ok(None);
    };
    let Some(oc) = circumcenter_f(&p2, &p6, &p7) else { return Ok(None) };
    let Some(od) = circumcenter_f(&p1, &p5, &p8) else { return Ok(None) };
    let q = Scalar::approx(fl(rng), fl(rng));
    let Some(oe) = circumcenter_f(&p5, &p6, &q) else { return Ok(None) };
    let Some(p3) = second_of_circles_f(&oc, &oe, &p6) else { return Ok(None) };
    let Some(p4) = second_of_circles_f(&od, &oe, &p5) else { return Ok(None) };
    let tiling = miquel_tiling();
    let excluded = tiling
        .tiles
        .iter()
        .position(|q| {
            let mut names: Vec<&str> = q.iter().map(|&v| tiling.ids[v].as_str()).collect();
            names.sort_unstable();
            names == ["P3", "P4", "P7", "P8"]
        })
        .unwrap();
    let mut labels = BTreeMap::new();
    for (name, z) in [
        ("P1", p1), ("P2", p2), ("P3", p3), ("P4", p4),
        ("P5", p5), ("P6", p6), ("P7", p7), ("P8", p8),
    ] {
        labels.insert(name.to_string(), MobiusPoint::Finite(z));
    }
    finish(tiling, labels, excluded)
}

fn nine_circles_exact(rng: &mut Rng) -> Result<Option<CircleWitness>> {
    let a = gaussian_rand(rng);
    let b = gaussian_rand(rng);
    if a.eq_scalar(&b) {
        return Ok(None);
    }
    let mid = (&a + &b) / Scalar::from_int(2);
    let perp = Scalar::gaussian_int(0, 1) * (&b - &a);
    let center = |rng: &mut Rng| {
        let t = Scalar::ratio(rng.nonzero_int(30), rng.int_in(1, 8));
        &mid + &(&t * &perp)
    };
    let o1 = center(rng);
    let o2 = center(rng);
    if o1.eq_scalar(&o2) {
        return Ok(None);
    }
    let d_a = gaussian_rand(rng);
    let Some(p1) = second_on_circle(&o1, &a, &d_a) else { return Ok(None) };
    let Some(p2) = second_on_circle(&o2, &a, &d_a) else { return Ok(None) };
    let d_b = gaussian_rand(rng);
    let Some(p4) = second_on_circle(&o1, &b, &d_b) else { return Ok(None) };
    let Some(p5) = second_on_circle(&o2, &b, &d_b) else { return Ok(None) };
    let Some(p3) = line_line(&a, &p4, &b, &p2) else { return Ok(None) };
    let Some(p6) = line_line(&a, &p5, &b, &p1) else { return Ok(None) };
    let tiling = nine_circles_tiling();
    let excluded = tiling
        .tiles
        .iter()
        .position(|q| {
            let mut names: Vec<&str> = q.iter().map(|&v| tiling.ids[v].as_str()).collect();
            names.sort_unstable();
            names == ["P3", "P6", "a", "b"]
        })
        .unwrap();
    let mut labels = BTreeMap::new();
    // torus vertex a carries the point b and vice versa; c is infinity
    labels.insert("a".into(), MobiusPoint::Finite(b));
    labels.insert("b".into(), MobiusPoint::Finite(a));
    labels.insert("c".into(), MobiusPoint::Infinity);
    for (name, z) in [("P1", p1), ("P2", p2), ("P3", p3), ("P4", p4), ("P5", p5), ("P6", p6)] {
        labels.insert(name.to_string(), MobiusPoint::Finite(z));
    }
    finish(tiling, labels, excluded)
}

fn nine_circles_approx(rng: &mut Rng) -> Result<Option<CircleWitness>> {
    let fl = |rng: &mut Rng| rng.int_in(-1000, 1000) as f64 / 97.0;
    let a = Scalar::approx(fl(rng), fl(rng));
    let b = Scalar::approx(fl(rng), fl(rng));
    let mid = (&a + &b) / Scalar::approx(2.0, 0.0);
    let perp = Scalar::approx(0.0, 1.0) * (&b - &a);
    let o1 = &mid + &(&Scalar::approx(fl(rng), 0.0) * &perp);
    let o2 = &mid + &(&Scalar::approx(fl(rng), 0.0) * &perp);
    let r1 = dist(&o1, &a);
    let r2 = dist(&o2, &a);
    // line through a at a random direction crosses both circles again
    let th = fl(rng);
    let dir = Scalar::approx(th.cos(), th.sin());
    let Some(p1) = line_circle_other(&o1, r1, &a, &dir) else { return Ok(None) };
    let Some(p2) = line_circle_other(&o2, r2, &a, &dir) else { return Ok(None) };
    let th2 = fl(rng);
    let dir2 = Scalar::approx(th2.cos(), th2.sin());
    let rb1 = dist(&o1, &b);
    let rb2 = dist(&o2, &b);
    let Some(p4) = line_circle_other(&o1, rb1, &b, &dir2) else { return Ok(None) };
    let Some(p5) = line_circle_other(&o2, rb2, &b, &dir2) else { return Ok(None) };
    let Some(p3) = line_line(&a, &p4, &b, &p2) else { return Ok(None) };
    let Some(p6) = line_line(&a, &p5, &b, &p1) else { return Ok(None) };
    let tiling = nine_circles_tiling();
    let excluded = tiling
        .tiles
        .iter()
        .position(|q| {
            let mut names: Vec<&str> = q.iter().map(|&v| tiling.ids[v].as_str()).collect();
            names.sort_unstable();
            names == ["P3", "P6", "a", "b"]
        })
        .unwrap();
    let mut labels = BTreeMap::new();
    labels.insert("a".into(), MobiusPoint::Finite(b));
    labels.insert("b".into(), MobiusPoint::Finite(a));
    labels.insert("c".into(), MobiusPoint::Infinity);
    for (name, z) in [("P1", p1), ("P2", p2), ("P3", p3), ("P4", p4), ("P5", p5), ("P6", p6)] {
        labels.insert(name.to_string(), MobiusPoint::Finite(z));
    }
    finish(tiling, labels, excluded)
}

// float helpers for the approx backend

fn dist(a: &Scalar, b: &Scalar) -> f64 {
    let (ar, ai) = a.to_f64();
    let (br, bi) = b.to_f64();
    (ar - br).hypot(ai - bi)
}

fn circumcenter_f(a: &Scalar, b: &Scalar, c: &Scalar) -> Option<Scalar> {
    let (ax, ay) = a.to_f64();
    let (bx, by) = b.to_f64();
    let (cx, cy) = c.to_f64();
    let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if d.abs() < 1e-12 {
        return None;
    }
    let ux = ((ax * ax + ay * ay) * (by - cy)
        + (bx * bx + by * by) * (cy - ay)
        + (cx * cx + cy * cy) * (ay - by))
        / d;
    let uy = ((ax * ax + ay * ay) * (cx - bx)
        + (bx * bx + by * by) * (ax - cx)
        + (cx * cx + cy * cy) * (bx - ax))
        / d;
    Some(Scalar::approx(ux, uy))
}

/// One of the intersections of the line through `anchor` offset by `shift`
/// with the circle (o, r); returns None on a miss or near-tangency.
fn line_circle_root(o: &Scalar, r: f64, dir: &Scalar, shift: f64, anchor: &Scalar) -> Option<Scalar> {
    let (dx, dy) = dir.to_f64();
    let n = dx.hypot(dy);
    if n < 1e-9 {
        return None;
    }
    let (dx, dy) = (dx / n, dy / n);
    let (ax, ay) = anchor.to_f64();
    // offset the anchor perpendicularly, then intersect
    let (px, py) = (ax - dy * shift * 0.1, ay + dx * shift * 0.1);
    let (ox, oy) = o.to_f64();
    let (fx, fy) = (px - ox, py - oy);
    let b = fx * dx + fy * dy;
    let c = fx * fx + fy * fy - r * r;
    let disc = b * b - c;
    if disc < 1e-12 {
        return None;
    }
    let s = -b + disc.sqrt();
    Some(Scalar::approx(px + s * dx, py + s * dy))
}

/// Second intersection of a line through on-circle point `p` with direction
/// `dir` (the first being p itself).
fn line_circle_other(o: &Scalar, _r: f64, p: &Scalar, dir: &Scalar) -> Option<Scalar> {
    let (dx, dy) = dir.to_f64();
    let (px, py) = p.to_f64();
    let (ox, oy) = o.to_f64();
    let dd = dx * dx + dy * dy;
    if dd < 1e-12 {
        return None;
    }
    let s = -2.0 * ((px - ox) * dx + (py - oy) * dy) / dd;
    if s.abs() < 1e-9 {
        return None;
    }
    Some(Scalar::approx(px + s * dx, py + s * dy))
}

fn second_of_circles_f(o1: &Scalar, o2: &Scalar, p: &Scalar) -> Option<Scalar> {
    let d = Scalar::approx(0.0, 1.0) * (o2 - o1);
    let (dx, dy) = d.to_f64();
    let (px, py) = p.to_f64();
    let (ox, oy) = o1.to_f64();
    let dd = dx * dx + dy * dy;
    if dd < 1e-12 {
        return None;
    }
    let s = -2.0 * ((px - ox) * dx + (py - oy) * dy) / dd;
    if s.abs() < 1e-9 {
        return None;
    }
    Some(Scalar::approx(px + s * dx, py + s * dy))
}

/// Largest |Im| over the hypothesis-and-conclusion tile cross-ratios; the
/// approx acceptance residual.
pub fn max_imaginary_residual(report: &MobiusReport) -> f64 {
    report
        .tile_ratios
        .iter()
        .map(|r| r.to_f64().1.abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(re: i64, im: i64) -> MobiusPoint {
        MobiusPoint::finite_i(re, im)
    }

    #[test]
    fn infinity_conventions() {
        // (0, 1; t, inf) for rational t reduces to a real ratio
        let r = complex_cross_ratio(&z(0, 0), &z(1, 0), &z(7, 0), &MobiusPoint::Infinity).unwrap();
        assert!(r.is_real());
        // three finite collinear points + infinity: concyclic (a line)
        assert!(concyclic(&z(0, 0), &z(2, 2), &z(5, 5), &MobiusPoint::Infinity).unwrap());
        assert!(!concyclic(&z(0, 0), &z(2, 2), &z(5, 6), &MobiusPoint::Infinity).unwrap());
    }

    #[test]
    fn unit_circle_points_concyclic() {
        let (a, b, c, d) = (z(1, 0), z(-1, 0), z(0, 1), z(0, -1));
        assert!(concyclic(&a, &b, &c, &d).unwrap());
        let r = complex_cross_ratio(&a, &b, &c, &d).unwrap();
        assert!(r.is_real() && r.is_exact());
    }

    #[test]
    fn concyclic_order_independent() {
        let pts = [z(1, 0), z(-1, 0), z(0, 1), z(0, -1)];
        let mut idx = [0, 1, 2, 3];
        // all 24 orderings
        fn perms(a: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
            if k == 4 {
                out.push(*a);
                return;
            }
            for i in k..4 {
                a.swap(k, i);
                perms(a, k + 1, out);
                a.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut idx, 0, &mut all);
        assert_eq!(all.len(), 24);
        for p in all {
            assert!(concyclic(&pts[p[0]], &pts[p[1]], &pts[p[2]], &pts[p[3]]).unwrap());
        }
    }

    #[test]
    fn random_quadruple_generically_not_concyclic() {
        let mut rng = Rng::new(3);
        let mut noncyclic = 0;
        for _ in 0..20 {
            let p: Vec<MobiusPoint> = (0..4)
                .map(|_| MobiusPoint::Finite(gaussian_rand(&mut rng)))
                .collect();
            if let Ok(false) = concyclic(&p[0], &p[1], &p[2], &p[3]) {
                noncyclic += 1;
            }
        }
        assert!(noncyclic >= 18);
    }

    #[test]
    fn mobius_invariance() {
        let mut rng = Rng::new(17);
        let o = gaussian_rand(&mut rng);
        let pts: Vec<Scalar> = (0..4).map(|_| circle_point(&o, 7, &mut rng)).collect();
        let as_m = |v: &[Scalar]| -> Vec<MobiusPoint> {
            v.iter().cloned().map(MobiusPoint::Finite).collect()
        };
        let base = as_m(&pts);
        assert!(concyclic(&base[0], &base[1], &base[2], &base[3]).unwrap());
        // translation, rational rotation/scaling, inversion z -> 1/z
        let t = Scalar::gaussian_int(3, -2);
        let shifted: Vec<Scalar> = pts.iter().map(|z| z + &t).collect();
        let rot = Scalar::gaussian_int(2, 5);
        let rotated: Vec<Scalar> = pts.iter().map(|z| &rot * z).collect();
        let inverted: Vec<Scalar> = pts
            .iter()
            .map(|z| Scalar::one() / z.clone())
            .collect();
        for v in [shifted, rotated, inverted] {
            let m = as_m(&v);
            assert!(concyclic(&m[0], &m[1], &m[2], &m[3]).unwrap());
        }
    }

    #[test]
    fn product_identity_exact_over_gaussians() {
        let t = miquel_tiling();
        let mut rng = Rng::new(23);
        for _ in 0..20 {
            let mut labels = BTreeMap::new();
            for id in &t.ids {
                labels.insert(id.clone(), MobiusPoint::Finite(gaussian_rand(&mut rng)));
            }
            let all_distinct = {
                let v: Vec<&MobiusPoint> = labels.values().collect();
                (0..v.len()).all(|i| (i + 1..v.len()).all(|j| !v[i].eq_point(v[j])))
            };
            if !all_distinct {
                continue;
            }
            let rep = concyclic_tiling_check(&t, &labels, 0).unwrap();
            assert!(rep.product.is_one(), "product {}", rep.product);
        }
    }

    #[test]
    fn miquel_exact_witness_closes() {
        let w = circle_witness(CircleWitnessKind::Miquel, 42, Backend::ExactPartial).unwrap();
        assert!(w.report.verdict());
        assert!(w.report.product.is_one());
        assert!(w.labels.values().all(|p| match p {
            MobiusPoint::Finite(z) => z.is_exact(),
            MobiusPoint::Infinity => true,
        }));
    }

    #[test]
    fn nine_circles_exact_witness_closes() {
        let w = circle_witness(CircleWitnessKind::NineCircles, 43, Backend::ExactPartial).unwrap();
        assert!(w.report.verdict());
        assert!(w.report.product.is_one());
    }

    #[test]
    fn approx_witnesses_close_to_tolerance() {
        for kind in [CircleWitnessKind::Miquel, CircleWitnessKind::NineCircles] {
            let w = circle_witness(kind, 7, Backend::Approx).unwrap();
            assert!(w.report.verdict());
            assert!(max_imaginary_residual(&w.report) < 1e-9);
        }
    }
}
