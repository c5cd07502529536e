//! Projective kernel: homogeneous points and hyperplanes over exact scalars,
//! pairings, cross-ratios, joins/meets, extensors, and generic sampling.

use crate::linalg::{det, nullspace, rank, Matrix};
use crate::rng::Rng;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Point,
    Hyperplane,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomElement {
    pub role: Role,
    pub coords: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    DimensionMismatch,
    RoleMismatch,
    IncidentEdge,
    NotCollinear,
    DegeneratePair,
    RankDeficient,
    IntersectingNeighbors,
    ResampleExhausted,
    DegenerateIntersection,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeomError::DimensionMismatch => "ambient dimensions differ",
            GeomError::RoleMismatch => "expected the other of point/hyperplane",
            GeomError::IncidentEdge => "forbidden point-on-hyperplane incidence",
            GeomError::NotCollinear => "points are not collinear",
            GeomError::DegeneratePair => "proportional (projectively equal) pair",
            GeomError::RankDeficient => "inputs are linearly dependent",
            GeomError::IntersectingNeighbors => "neighboring subspaces intersect",
            GeomError::ResampleExhausted => "resampling budget exhausted",
            GeomError::DegenerateIntersection => "intersection is undefined",
        };
        f.write_str(s)
    }
}

impl std::error::Error for GeomError {}

pub type Result<T> = std::result::Result<T, GeomError>;

impl HomElement {
    pub fn point(coords: Vec<Scalar>) -> Self {
        assert!(coords.iter().any(|c| !c.is_zero()), "zero coordinate vector");
        HomElement { role: Role::Point, coords }
    }

    pub fn hyperplane(coords: Vec<Scalar>) -> Self {
        assert!(coords.iter().any(|c| !c.is_zero()), "zero coordinate vector");
        HomElement { role: Role::Hyperplane, coords }
    }

    pub fn point_i(coords: &[i64]) -> Self {
        Self::point(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn hyperplane_i(coords: &[i64]) -> Self {
        Self::hyperplane(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(|c| c.is_exact())
    }

    /// Projective equality: all 2x2 minors of the stacked coordinate rows vanish.
    pub fn proj_eq(&self, other: &HomElement) -> bool {
        if self.role != other.role || self.coords.len() != other.coords.len() {
            return false;
        }
        let n = self.coords.len();
        for i in 0..n {
            for j in i + 1..n {
                let m = &self.coords[i] * &other.coords[j] - &self.coords[j] * &other.coords[i];
                if !m.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, t: &Scalar) -> HomElement {
        HomElement {
            role: self.role,
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }
}

/// Sum of coordinatewise products of a point and a hyperplane covector.
pub fn pairing(v: &HomElement, h: &HomElement) -> Result<Scalar> {
    if v.role != Role::Point || h.role != Role::Hyperplane {
        return Err(GeomError::RoleMismatch);
    }
    if v.coords.len() != h.coords.len() {
        return Err(GeomError::DimensionMismatch);
    }
    let mut acc = Scalar::zero();
    for (a, b) in v.coords.iter().zip(&h.coords) {
        acc = acc + a * b;
    }
    Ok(acc)
}

/// True iff the point lies on the hyperplane.
pub fn incident(v: &HomElement, h: &HomElement) -> Result<bool> {
    Ok(pairing(v, h)?.is_zero())
}

/// (A,B;l,m) = <A,l><B,m> / (<A,m><B,l>).
pub fn mixed_cross_ratio(
    a: &HomElement,
    b: &HomElement,
    l: &HomElement,
    m: &HomElement,
) -> Result<Scalar> {
    let al = pairing(a, l)?;
    let am = pairing(a, m)?;
    let bl = pairing(b, l)?;
    let bm = pairing(b, m)?;
    if al.is_zero() || am.is_zero() || bl.is_zero() || bm.is_zero() {
        return Err(GeomError::IncidentEdge);
    }
    Ok((al * bm) / (am * bl))
}

pub fn coherent_tile(
    a: &HomElement,
    l: &HomElement,
    b: &HomElement,
    m: &HomElement,
) -> Result<bool> {
    Ok(mixed_cross_ratio(a, b, l, m)?.is_one())
}

/// Ordinary cross-ratio of four collinear points:
/// (|P1P3||P2P4|)/(|P2P3||P1P4|) with 2x2 minors taken at the lexicographically
/// first coordinate pair where P1, P2 are independent.
pub fn cross_ratio_collinear(
    p1: &HomElement,
    p2: &HomElement,
    p3: &HomElement,
    p4: &HomElement,
) -> Result<Scalar> {
    let pts = [p1, p2, p3, p4];
    let n = p1.coords.len();
    if pts.iter().any(|p| p.coords.len() != n || p.role != Role::Point) {
        return Err(GeomError::DimensionMismatch);
    }
    let rows: Matrix = pts.iter().map(|p| p.coords.clone()).collect();
    if rank(&rows) > 2 {
        return Err(GeomError::NotCollinear);
    }
    let minor = |p: &HomElement, q: &HomElement, i: usize, j: usize| {
        &p.coords[i] * &q.coords[j] - &p.coords[j] * &q.coords[i]
    };
    let mut pos = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            if !minor(p1, p2, i, j).is_zero() {
                pos = Some((i, j));
                break 'outer;
            }
        }
    }
    let Some((i, j)) = pos else {
        return Err(GeomError::DegeneratePair);
    };
    let num = minor(p1, p3, i, j) * minor(p2, p4, i, j);
    let den = minor(p2, p3, i, j) * minor(p1, p4, i, j);
    if den.is_zero() {
        return Err(GeomError::DegeneratePair);
    }
    Ok(num / den)
}

/// Decomposable extensor: wedge of `step` independent vectors, stored as the
/// full Plücker coordinate vector indexed by sorted step-subsets of 0..=d.
#[derive(Debug, Clone, PartialEq)]
pub struct Extensor {
    pub step: usize,
    pub dim: usize,
    pub plucker: Vec<Scalar>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

impl Extensor {
    /// Wedge of independent coordinate vectors; RankDeficient if dependent.
    pub fn wedge(rows: &[Vec<Scalar>]) -> Result<Extensor> {
        let k = rows.len();
        assert!(k >= 1);
        let n = rows[0].len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GeomError::DimensionMismatch);
        }
        let mut plucker = Vec::new();
        let mut any_nonzero = false;
        for cols in subsets(n, k) {
            let m: Matrix = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let d = det(&m);
            any_nonzero |= !d.is_zero();
            plucker.push(d);
        }
        if !any_nonzero {
            return Err(GeomError::RankDeficient);
        }
        Ok(Extensor { step: k, dim: n - 1, plucker })
    }
}

/// A projective subspace of dimension r, stored as r+1 independent spanning
/// points together with the wedge extensor of their coordinate rows.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub span: Vec<HomElement>,
    pub extensor: Extensor,
}

impl Subspace {
    pub fn from_points(span: Vec<HomElement>) -> Result<Subspace> {
        if span.is_empty() || span.iter().any(|p| p.role != Role::Point) {
            return Err(GeomError::RoleMismatch);
        }
        let rows: Vec<Vec<Scalar>> = span.iter().map(|p| p.coords.clone()).collect();
        let extensor = Extensor::wedge(&rows)?;
        Ok(Subspace { span, extensor })
    }

    pub fn proj_dim(&self) -> usize {
        self.span.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.span[0].dim()
    }

    pub fn contains(&self, p: &HomElement) -> bool {
        let mut rows: Matrix = self.span.iter().map(|q| q.coords.clone()).collect();
        rows.push(p.coords.clone());
        rank(&rows) == self.span.len()
    }
}

/// Join of independent points: their wedge extensor.
pub fn join(points: &[HomElement]) -> Result<Extensor> {
    if points.iter().any(|p| p.role != Role::Point) {
        return Err(GeomError::RoleMismatch);
    }
    let rows: Vec<Vec<Scalar>> = points.iter().map(|p| p.coords.clone()).collect();
    Extensor::wedge(&rows)
}

/// Meet of independent covectors: the solution subspace, spanned by points.
pub fn meet(hyperplanes: &[HomElement]) -> Result<Subspace> {
    if hyperplanes.iter().any(|h| h.role != Role::Hyperplane) {
        return Err(GeomError::RoleMismatch);
    }
    let rows: Matrix = hyperplanes.iter().map(|h| h.coords.clone()).collect();
    if rank(&rows) < hyperplanes.len() {
        return Err(GeomError::RankDeficient);
    }
    let basis = nullspace(&rows);
    if basis.is_empty() {
        return Err(GeomError::RankDeficient);
    }
    Subspace::from_points(basis.into_iter().map(HomElement::point).collect())
}

/// Pairing of complementary-step extensors represented by spanning rows:
/// det of the stacked (d+1)x(d+1) matrix.
pub fn subspace_pairing(a: &Subspace, b: &Subspace) -> Result<Scalar> {
    let n = a.dim() + 1;
    if b.dim() + 1 != n || a.span.len() + b.span.len() != n {
        return Err(GeomError::DimensionMismatch);
    }
    let mut rows: Matrix = a.span.iter().map(|p| p.coords.clone()).collect();
    rows.extend(b.span.iter().map(|p| p.coords.clone()));
    Ok(det(&rows))
}

/// Generalized mixed cross-ratio (a1,a3;a2,a4) of subspaces with
/// dim a1 = dim a3 = r, dim a2 = dim a4 = s, r + s = d - 1.
pub fn generalized_mixed_cross_ratio(
    a1: &Subspace,
    a2: &Subspace,
    a3: &Subspace,
    a4: &Subspace,
) -> Result<Scalar> {
    let d = a1.dim();
    let (r, s) = (a1.proj_dim(), a2.proj_dim());
    if a3.proj_dim() != r || a4.proj_dim() != s || r + s != d - 1 {
        return Err(GeomError::DimensionMismatch);
    }
    if [a2, a3, a4].iter().any(|x| x.dim() != d) {
        return Err(GeomError::DimensionMismatch);
    }
    let p12 = subspace_pairing(a1, a2)?;
    let p23 = subspace_pairing(a2, a3)?;
    let p34 = subspace_pairing(a3, a4)?;
    let p41 = subspace_pairing(a4, a1)?;
    if p12.is_zero() || p23.is_zero() || p34.is_zero() || p41.is_zero() {
        return Err(GeomError::IntersectingNeighbors);
    }
    // <A3,A2> = ±<A2,A3> and <A1,A4> = ±<A4,A1> with the same sign (both swaps
    // move r+1 rows past s+1 rows), so the ratio is orientation-independent.
    Ok((p12 * p34) / (p23 * p41))
}

/// Prop 11.4 data check: returns (generalized ratio of the joins,
/// cross-ratio on b, cross-ratio on c) and asserts the factorization.
pub fn schubert_factorization_check(
    b_pts: &[HomElement; 4],
    c_pts: &[HomElement; 4],
) -> Result<(Scalar, Scalar, Scalar)> {
    let lines: Vec<Subspace> = b_pts
        .iter()
        .zip(c_pts.iter())
        .map(|(bi, ci)| Subspace::from_points(vec![bi.clone(), ci.clone()]))
        .collect::<Result<_>>()?;
    let gen = generalized_mixed_cross_ratio(&lines[0], &lines[1], &lines[2], &lines[3])?;
    let crb = cross_ratio_collinear(&b_pts[0], &b_pts[2], &b_pts[1], &b_pts[3])?;
    let crc = cross_ratio_collinear(&c_pts[0], &c_pts[2], &c_pts[1], &c_pts[3])?;
    Ok((gen, crb, crc))
}

// -- plane (d=2) and space (d=3) construction helpers ------------------------

/// Line through two distinct points of the projective plane, as a covector.
pub fn line_through(a: &HomElement, b: &HomElement) -> Result<HomElement> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(GeomError::DimensionMismatch);
    }
    cross3(a, b, Role::Hyperplane)
}

/// Intersection point of two distinct lines of the projective plane.
pub fn line_meet(l: &HomElement, m: &HomElement) -> Result<HomElement> {
    if l.dim() != 2 || m.dim() != 2 {
        return Err(GeomError::DimensionMismatch);
    }
    cross3(l, m, Role::Point)
}

fn cross3(a: &HomElement, b: &HomElement, role: Role) -> Result<HomElement> {
    let (u, v) = (&a.coords, &b.coords);
    let c = vec![
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ];
    if c.iter().all(|x| x.is_zero()) {
        return Err(GeomError::DegeneratePair);
    }
    Ok(HomElement { role, coords: c })
}

/// Plane through three independent points of 3-space, as a covector.
pub fn plane_through(pts: &[&HomElement; 3]) -> Result<HomElement> {
    let rows: Matrix = pts.iter().map(|p| p.coords.clone()).collect();
    let basis = nullspace(&rows);
    if basis.len() != 1 {
        return Err(GeomError::RankDeficient);
    }
    Ok(HomElement::hyperplane(basis.into_iter().next().unwrap()))
}

/// Plane spanned by a point and a line (the point off the line), d=3.
pub fn plane_span_point_line(p: &HomElement, line: &Subspace) -> Result<HomElement> {
    plane_through(&[p, &line.span[0], &line.span[1]])
}

/// Meet of a line with a plane in 3-space (the line not inside the plane).
pub fn line_plane_meet(line: &Subspace, h: &HomElement) -> Result<HomElement> {
    let (a, b) = (&line.span[0], &line.span[1]);
    let pa = pairing(a, h)?;
    let pb = pairing(b, h)?;
    if pa.is_zero() && pb.is_zero() {
        return Err(GeomError::DegenerateIntersection);
    }
    // pb * a - pa * b lies on both.
    let coords: Vec<Scalar> = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| &(&pb * x) - &(&pa * y))
        .collect();
    if coords.iter().all(|c| c.is_zero()) {
        return Err(GeomError::DegenerateIntersection);
    }
    Ok(HomElement::point(coords))
}

/// Intersection point of two coplanar lines in 3-space; error if skew.
pub fn line_line_meet(a: &Subspace, b: &Subspace) -> Result<HomElement> {
    if !subspace_pairing(a, b)?.is_zero() {
        return Err(GeomError::DegenerateIntersection);
    }
    // Solve x = s0*A0 + s1*A1 = t0*B0 + t1*B1 via the nullspace of [A0 A1 -B0 -B1]^T.
    let n = a.dim() + 1;
    let mut cols: Matrix = vec![Vec::with_capacity(4); n];
    for row in 0..n {
        cols[row].push(a.span[0].coords[row].clone());
        cols[row].push(a.span[1].coords[row].clone());
        cols[row].push(-b.span[0].coords[row].clone());
        cols[row].push(-b.span[1].coords[row].clone());
    }
    let ns = nullspace(&cols);
    if ns.len() != 1 {
        return Err(GeomError::DegenerateIntersection);
    }
    let c = &ns[0];
    let coords: Vec<Scalar> = (0..n)
        .map(|row| &(&c[0] * &a.span[0].coords[row]) + &(&c[1] * &a.span[1].coords[row]))
        .collect();
    if coords.iter().all(|x| x.is_zero()) {
        return Err(GeomError::DegenerateIntersection);
    }
    Ok(HomElement::point(coords))
}

/// Line of intersection of two distinct planes in 3-space.
pub fn plane_plane_meet(h1: &HomElement, h2: &HomElement) -> Result<Subspace> {
    meet(&[h1.clone(), h2.clone()])
}

// -- seeded generic sampling --------------------------------------------------

pub const SAMPLE_COORD_BOUND: i64 = 1000;
pub const SAMPLE_ATTEMPTS: usize = 64;

/// Samples until `ok` accepts, up to the shared attempt budget.
pub fn resample<T>(rng: &mut Rng, mut gen: impl FnMut(&mut Rng) -> Option<T>) -> Result<T> {
    for _ in 0..SAMPLE_ATTEMPTS {
        if let Some(x) = gen(rng) {
            return Ok(x);
        }
    }
    Err(GeomError::ResampleExhausted)
}

/// Unconstrained point with integer coordinates in [-1000, 1000].
pub fn sample_point(d: usize, rng: &mut Rng) -> Result<HomElement> {
    resample(rng, |rng| {
        let coords: Vec<Scalar> = (0..=d)
            .map(|_| Scalar::from_int(rng.int_in(-SAMPLE_COORD_BOUND, SAMPLE_COORD_BOUND)))
            .collect();
        if coords.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(HomElement::point(coords))
        }
    })
}

/// Point constrained to a subspace: integer combination of its spanning points.
pub fn sample_point_in(sub: &Subspace, rng: &mut Rng) -> Result<HomElement> {
    resample(rng, |rng| {
        let mut coords = vec![Scalar::zero(); sub.dim() + 1];
        for p in &sub.span {
            let w = Scalar::from_int(rng.int_in(-SAMPLE_COORD_BOUND, SAMPLE_COORD_BOUND));
            for (c, x) in coords.iter_mut().zip(&p.coords) {
                *c = &*c + &(&w * x);
            }
        }
        if coords.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(HomElement::point(coords))
        }
    })
}

/// Point on the intersection of the given hyperplanes (ResampleExhausted if empty).
pub fn sample_point_on(hyperplanes: &[HomElement], rng: &mut Rng) -> Result<HomElement> {
    let sub = meet(hyperplanes).map_err(|_| GeomError::ResampleExhausted)?;
    sample_point_in(&sub, rng)
}

/// Hyperplane through the given points (covector sampled from the annihilator).
pub fn sample_hyperplane_through(
    d: usize,
    points: &[HomElement],
    rng: &mut Rng,
) -> Result<HomElement> {
    if points.is_empty() {
        let p = sample_point(d, rng)?;
        return Ok(HomElement::hyperplane(p.coords));
    }
    let rows: Matrix = points.iter().map(|p| p.coords.clone()).collect();
    let basis = nullspace(&rows);
    if basis.is_empty() {
        return Err(GeomError::ResampleExhausted);
    }
    resample(rng, |rng| {
        let mut coords = vec![Scalar::zero(); d + 1];
        for b in &basis {
            let w = Scalar::from_int(rng.int_in(-SAMPLE_COORD_BOUND, SAMPLE_COORD_BOUND));
            for (c, x) in coords.iter_mut().zip(b) {
                *c = &*c + &(&w * x);
            }
        }
        if coords.iter().all(|c| c.is_zero()) {
            None
        } else {
            Some(HomElement::hyperplane(coords))
        }
    })
}

/// Point on a line of 3-space (or any subspace) avoiding a fixed list of points.
pub fn sample_point_in_avoiding(
    sub: &Subspace,
    avoid: &[&HomElement],
    rng: &mut Rng,
) -> Result<HomElement> {
    resample(rng, |rng| {
        let p = sample_point_in(sub, rng).ok()?;
        if avoid.iter().any(|q| p.proj_eq(q)) {
            None
        } else {
            Some(p)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(c: &[i64]) -> HomElement {
        HomElement::point_i(c)
    }
    fn hp(c: &[i64]) -> HomElement {
        HomElement::hyperplane_i(c)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&pt(&[1, 0, 0]), &hp(&[0, 1, 0])).unwrap(), Scalar::zero());
        assert_eq!(pairing(&pt(&[1, 2, 3]), &hp(&[1, 1, 1])).unwrap(), Scalar::from_int(6));
        assert_eq!(pairing(&pt(&[1, 0, 1]), &hp(&[1, 2, 3])).unwrap(), Scalar::from_int(4));
    }

    #[test]
    fn mixed_cross_ratio_examples() {
        let a = pt(&[1, 0, 1]);
        let b = pt(&[0, 1, 1]);
        let l = hp(&[1, 1, 1]);
        let m = hp(&[1, 2, 3]);
        // same point or same line: ratio 1
        assert!(mixed_cross_ratio(&a, &a, &l, &m).unwrap().is_one());
        assert!(mixed_cross_ratio(&a, &b, &l, &l).unwrap().is_one());
        // hand-checked: <A,l>=2, <B,m>=5, <A,m>=4, <B,l>=2 -> 10/8 = 5/4
        assert_eq!(mixed_cross_ratio(&a, &b, &l, &m).unwrap(), Scalar::ratio(5, 4));
    }

    #[test]
    fn incident_edge_detected() {
        let a = pt(&[1, 0, 0]);
        let l = hp(&[0, 1, 0]); // a on l
        let b = pt(&[1, 1, 1]);
        let m = hp(&[1, 2, 3]);
        assert_eq!(mixed_cross_ratio(&a, &b, &l, &m), Err(GeomError::IncidentEdge));
    }

    #[test]
    fn join_meet_examples() {
        let e = join(&[pt(&[1, 0, 0]), pt(&[0, 1, 0])]).unwrap();
        // plucker over {01},{02},{12}: only the {01} minor is nonzero,
        // i.e. the line z=0 with covector (0,0,1).
        assert_eq!(e.plucker[0], Scalar::from_int(1));
        assert!(e.plucker[1].is_zero() && e.plucker[2].is_zero());

        let sub = meet(&[hp(&[1, 0, 0, 0]), hp(&[0, 1, 0, 0])]).unwrap();
        assert_eq!(sub.proj_dim(), 1);
        assert!(sub.contains(&pt(&[0, 0, 1, 0])));
        assert!(sub.contains(&pt(&[0, 0, 0, 1])));

        assert_eq!(
            join(&[pt(&[1, 2, 3]), pt(&[2, 4, 6])]),
            Err(GeomError::RankDeficient)
        );
    }

    #[test]
    fn coherent_tile_same_point() {
        let a = pt(&[2, 3, 5]);
        let l = hp(&[1, 1, 1]);
        let m = hp(&[1, -1, 2]);
        assert!(coherent_tile(&a, &l, &a, &m).unwrap());
    }

    #[test]
    fn coherent_tile_constructed_plane_witness() {
        // l, m through a point of line (AB): take A=(1,0,1), B=(0,1,1),
        // X = A + B = (1,1,2) on (AB); lines through X.
        let a = pt(&[1, 0, 1]);
        let b = pt(&[0, 1, 1]);
        let l = hp(&[2, 0, -1]); // <X,l> = 2+0-2 = 0
        let m = hp(&[0, 2, -1]); // 0+2-2 = 0
        assert!(coherent_tile(&a, &l, &b, &m).unwrap());
    }

    #[test]
    fn cross_ratio_matches_mixed() {
        // L=(AB)∩l, M=(AB)∩m; (A,B;l,m) = (A,B;L,M). Deterministic instance.
        let a = pt(&[1, 0, 1]);
        let b = pt(&[0, 1, 1]);
        let l = hp(&[1, 1, 1]);
        let m = hp(&[1, 2, 3]);
        let ab = line_through(&a, &b).unwrap();
        let big_l = line_meet(&ab, &l).unwrap();
        let big_m = line_meet(&ab, &m).unwrap();
        let lhs = mixed_cross_ratio(&a, &b, &l, &m).unwrap();
        let rhs = cross_ratio_collinear(&a, &b, &big_l, &big_m).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_ratio_vanishing_and_errors() {
        let p1 = pt(&[1, 0, 1]);
        let p2 = pt(&[0, 1, 1]);
        let p3 = pt(&[1, 0, 1]);
        let p4 = pt(&[1, 1, 2]);
        assert!(cross_ratio_collinear(&p1, &p2, &p3, &p4).unwrap().is_zero());
        let q = pt(&[1, 1, 1]);
        assert_eq!(
            cross_ratio_collinear(&p1, &p2, &q, &p4),
            Err(GeomError::NotCollinear)
        );
        assert_eq!(
            cross_ratio_collinear(&p1, &p3, &p2, &p4),
            Err(GeomError::DegeneratePair)
        );
    }

    #[test]
    fn generalized_reduces_to_mixed() {
        // d=2, r=0, s=1: a1,a3 single points, a2,a4 lines given as point spans.
        let a = pt(&[1, 0, 1]);
        let b = pt(&[0, 1, 1]);
        let l = hp(&[1, 1, 1]);
        let m = hp(&[1, 2, 3]);
        let a1 = Subspace::from_points(vec![a.clone()]).unwrap();
        let a3 = Subspace::from_points(vec![b.clone()]).unwrap();
        let a2 = meet(&[l.clone()]).unwrap();
        let a4 = meet(&[m.clone()]).unwrap();
        let g = generalized_mixed_cross_ratio(&a1, &a2, &a3, &a4).unwrap();
        let mcr = mixed_cross_ratio(&a, &b, &l, &m).unwrap();
        assert_eq!(g, mcr);
    }

    #[test]
    fn generalized_same_subspace_is_one() {
        let a1 = Subspace::from_points(vec![pt(&[1, 2, 3]), pt(&[0, 1, 1])]).unwrap();
        let a2 = Subspace::from_points(vec![pt(&[1, 0, 0, 5]), pt(&[0, 3, 1, 1])]).unwrap();
        // d=3, r=s=1: (a,a;b,c) has <A1,A2><A3,A4>/<A3,A2><A1,A4> with A1=A3.
        let b = Subspace::from_points(vec![pt(&[1, 1, 0, 0]), pt(&[0, 0, 1, 1])]).unwrap();
        let c = Subspace::from_points(vec![pt(&[2, 1, 1, 0]), pt(&[0, 1, 4, 1])]).unwrap();
        let g = generalized_mixed_cross_ratio(&a2, &b, &a2, &c).unwrap();
        assert!(g.is_one());
        let _ = a1;
    }

    #[test]
    fn sampling_contracts() {
        let mut rng = Rng::new(7);
        let p = sample_point(2, &mut rng).unwrap();
        assert!(p.coords.iter().all(|c| matches!(c, Scalar::Rational(_))));

        let l = hp(&[1, 2, 3]);
        let sub = meet(&[l.clone()]).unwrap();
        let q = sample_point_in(&sub, &mut rng).unwrap();
        assert!(pairing(&q, &l).unwrap().is_zero());

        // Two disjoint lines in 3-space have empty intersection.
        let h = [
            hp(&[1, 0, 0, 0]),
            hp(&[0, 1, 0, 0]),
            hp(&[0, 0, 1, 0]),
            hp(&[0, 0, 0, 1]),
        ];
        assert_eq!(
            sample_point_on(&h, &mut rng),
            Err(GeomError::ResampleExhausted)
        );
    }

    #[test]
    fn rescaling_leaves_ratios_bit_identical() {
        let a = pt(&[3, 1, 7]);
        let b = pt(&[2, -5, 1]);
        let l = hp(&[1, 4, -2]);
        let m = hp(&[5, 1, 3]);
        let r1 = mixed_cross_ratio(&a, &b, &l, &m).unwrap();
        let t = Scalar::ratio(-7, 3);
        let r2 = mixed_cross_ratio(&a.scale(&t), &b, &l.scale(&t), &m).unwrap();
        assert_eq!(r1, r2);
    }

    #[test]
    fn tile_symmetry() {
        let a = pt(&[3, 1, 7]);
        let b = pt(&[2, -5, 1]);
        let l = hp(&[1, 4, -2]);
        let m = hp(&[5, 1, 3]);
        let r = mixed_cross_ratio(&a, &b, &l, &m).unwrap();
        // rotation by two: (B,m,A,l)
        let rot = mixed_cross_ratio(&b, &a, &m, &l).unwrap();
        assert_eq!(r, rot);
        // reflection inverts
        let refl = mixed_cross_ratio(&a, &b, &m, &l).unwrap();
        assert!((r.clone() * refl).is_one());
        // (A,B;l,m) * (B,A;l,m) = 1
        let swap = mixed_cross_ratio(&b, &a, &l, &m).unwrap();
        assert!((r * swap).is_one());
    }
}
