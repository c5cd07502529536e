//! Coherent and anticoherent polygons: the generalized polygon cross-ratio,
//! the constructive disk tiling, special polygon families, and the
//! anticoherence toolkit.

use crate::projective::{
    line_meet, line_through, pairing, sample_hyperplane_through, sample_point, GeomError,
    HomElement,
};
use crate::rng::Rng;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone)]
pub struct LabeledPolygon {
    /// A1..An (points) and l1..ln (lines); boundary word A1 l1 ... An ln.
    pub points: Vec<HomElement>,
    pub lines: Vec<HomElement>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolygonError {
    IncidentBoundary(usize),
    NotCoherent,
    CollinearTriple,
    GenericityFailure,
    UnsupportedFamily(String),
    Geometry(GeomError),
}

impl fmt::Display for PolygonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonError::IncidentBoundary(i) => write!(f, "boundary incidence at index {i}"),
            PolygonError::NotCoherent => write!(f, "polygon cross-ratio is not 1"),
            PolygonError::CollinearTriple => write!(f, "three boundary points are collinear"),
            PolygonError::GenericityFailure => write!(f, "degenerate configuration"),
            PolygonError::UnsupportedFamily(m) => write!(f, "unsupported family: {m}"),
            PolygonError::Geometry(e) => write!(f, "geometry: {e}"),
        }
    }
}

impl std::error::Error for PolygonError {}

impl From<GeomError> for PolygonError {
    fn from(e: GeomError) -> Self {
        PolygonError::Geometry(e)
    }
}

pub type Result<T> = std::result::Result<T, PolygonError>;

impl LabeledPolygon {
    pub fn new(points: Vec<HomElement>, lines: Vec<HomElement>) -> Result<LabeledPolygon> {
        assert_eq!(points.len(), lines.len());
        assert!(points.len() >= 2);
        let p = LabeledPolygon { points, lines };
        p.check_boundary()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    fn check_boundary(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            let prev = (i + n - 1) % n;
            for l in [&self.lines[i], &self.lines[prev]] {
                if pairing(&self.points[i], l)?.is_zero() {
                    return Err(PolygonError::IncidentBoundary(i));
                }
            }
        }
        Ok(())
    }

    /// Prod <Ai,li> / Prod <A(i+1),li>.
    pub fn cross_ratio(&self) -> Result<Scalar> {
        let n = self.n();
        let mut num = Scalar::one();
        let mut den = Scalar::one();
        for i in 0..n {
            num = num * pairing(&self.points[i], &self.lines[i])?;
            den = den * pairing(&self.points[(i + 1) % n], &self.lines[i])?;
        }
        if den.is_zero() {
            return Err(PolygonError::IncidentBoundary(0));
        }
        Ok(num / den)
    }

    pub fn is_coherent(&self) -> Result<bool> {
        Ok(self.cross_ratio()?.is_one())
    }

    pub fn is_anticoherent(&self) -> Result<bool> {
        Ok((self.cross_ratio()? + Scalar::one()).is_zero())
    }

    /// The 4n-gon repeating the boundary twice (its ratio is the square).
    pub fn double(&self) -> LabeledPolygon {
        let mut points = self.points.clone();
        points.extend(self.points.iter().cloned());
        let mut lines = self.lines.clone();
        lines.extend(self.lines.iter().cloned());
        LabeledPolygon { points, lines }
    }
}

/// A disk tiling by named labeled tiles; boundary word kept for reassembly.
#[derive(Debug, Clone)]
pub struct PolygonTiling {
    pub tiles: Vec<[String; 4]>,
    pub labels: BTreeMap<String, HomElement>,
    /// Boundary word: A1, l1, ..., An, ln names in order.
    pub boundary: Vec<String>,
}

impl PolygonTiling {
    pub fn tile_ratio(&self, tile: usize) -> Result<Scalar> {
        let q = &self.tiles[tile];
        let get = |k: usize| self.labels.get(&q[k]).ok_or(PolygonError::GenericityFailure);
        crate::projective::mixed_cross_ratio(get(0)?, get(2)?, get(1)?, get(3)?)
            .map_err(PolygonError::from)
    }

    pub fn product(&self) -> Result<Scalar> {
        let mut acc = Scalar::one();
        for t in 0..self.tiles.len() {
            acc = acc * self.tile_ratio(t)?;
        }
        Ok(acc)
    }
}

/// Tiles a coherent 2n-gon by 2n-3 coherent tiles whose interior vertices are
/// all lines, peeling two tiles at index n and recursing. Boundary vertex
/// names default to A1..An / L1..Ln; interior lines are named Q1, Q2, ....
pub fn tile_coherent_polygon(p: &LabeledPolygon) -> Result<PolygonTiling> {
    let n = p.n();
    // hypothesis: no three of the points collinear
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let l = line_through(&p.points[i], &p.points[j])
                    .map_err(|_| PolygonError::CollinearTriple)?;
                if pairing(&p.points[k], &l)?.is_zero() {
                    return Err(PolygonError::CollinearTriple);
                }
            }
        }
    }
    let ratio = p.cross_ratio()?;
    let mut labels = BTreeMap::new();
    let mut boundary = Vec::new();
    for i in 0..n {
        labels.insert(format!("A{}", i + 1), p.points[i].clone());
        labels.insert(format!("L{}", i + 1), p.lines[i].clone());
        boundary.push(format!("A{}", i + 1));
        boundary.push(format!("L{}", i + 1));
    }
    let mut tiles = Vec::new();
    let mut interior = 0usize;
    let mut pts: Vec<(String, HomElement)> = (0..n)
        .map(|i| (format!("A{}", i + 1), p.points[i].clone()))
        .collect();
    let mut lns: Vec<(String, HomElement)> = (0..n)
        .map(|i| (format!("L{}", i + 1), p.lines[i].clone()))
        .collect();
    while pts.len() > 2 {
        let m = pts.len();
        let (an_name, an) = pts[m - 1].clone();
        let (a1_name, a1) = pts[0].clone();
        let (an1_name, an1) = pts[m - 2].clone();
        let (ln_name, ln) = lns[m - 1].clone();
        let (ln1_name, ln1) = lns[m - 2].clone();
        let b = line_meet(&line_through(&an, &a1)?, &ln)
            .map_err(|_| PolygonError::GenericityFailure)?;
        let c = line_meet(&line_through(&an1, &an)?, &ln1)
            .map_err(|_| PolygonError::GenericityFailure)?;
        let lp = line_through(&b, &c).map_err(|_| PolygonError::GenericityFailure)?;
        interior += 1;
        let lp_name = format!("Q{interior}");
        labels.insert(lp_name.clone(), lp.clone());
        tiles.push([a1_name.clone(), lp_name.clone(), an_name.clone(), ln_name.clone()]);
        tiles.push([an_name.clone(), lp_name.clone(), an1_name.clone(), ln1_name.clone()]);
        pts.pop();
        lns.pop();
        lns.pop();
        lns.push((lp_name, lp));
    }
    // base 2-gon: single tile (A1, l1, A2, l')
    tiles.push([
        pts[0].0.clone(),
        lns[0].0.clone(),
        pts[1].0.clone(),
        lns[1].0.clone(),
    ]);
    let out = PolygonTiling { tiles, labels, boundary };
    debug_assert_eq!(out.tiles.len(), 2 * n - 3);
    // product of tile ratios equals the polygon ratio identically
    let prod = out.product()?;
    if prod != ratio && prod.is_exact() {
        return Err(PolygonError::GenericityFailure);
    }
    if !ratio.is_one() {
        return Err(PolygonError::NotCoherent);
    }
    for t in 0..out.tiles.len() {
        if !out.tile_ratio(t)?.is_one() {
            return Err(PolygonError::GenericityFailure);
        }
    }
    Ok(out)
}

/// Random polygon with prescribed cross-ratio (1 or -1): free points and all
/// lines but the last; the last line is sampled through the forced point.
pub fn sample_polygon_with_ratio(
    n: usize,
    target: &Scalar,
    rng: &mut Rng,
) -> Result<LabeledPolygon> {
    'outer: for _ in 0..64 {
        let mut points = Vec::new();
        for _ in 0..n {
            points.push(sample_point(2, rng)?);
        }
        // no three collinear, pairwise distinct
        for i in 0..n {
            for j in i + 1..n {
                if points[i].proj_eq(&points[j]) {
                    continue 'outer;
                }
                for k in j + 1..n {
                    let Ok(l) = line_through(&points[i], &points[j]) else {
                        continue 'outer;
                    };
                    if pairing(&points[k], &l).map_err(PolygonError::from)?.is_zero() {
                        continue 'outer;
                    }
                }
            }
        }
        let mut lines = Vec::new();
        for _ in 0..n - 1 {
            lines.push(sample_hyperplane_through(2, &[], rng)?);
        }
        // ratio = K<An,ln> / (L<A1,ln>) with K, L from the fixed part
        let mut k = Scalar::one();
        let mut l = Scalar::one();
        for i in 0..n - 1 {
            k = k * pairing(&points[i], &lines[i])?;
            l = l * pairing(&points[(i + 1) % n], &lines[i])?;
        }
        if k.is_zero() || l.is_zero() {
            continue;
        }
        // want K<An,x> = target*L*<A1,x>: x through the point K*An - target*L*A1
        let tl = target * &l;
        let forced_coords: Vec<Scalar> = points[n - 1]
            .coords
            .iter()
            .zip(&points[0].coords)
            .map(|(an, a1)| &(&k * an) - &(&tl * a1))
            .collect();
        if forced_coords.iter().all(|c| c.is_zero()) {
            continue;
        }
        let forced = HomElement::point(forced_coords);
        let Ok(ln) = sample_hyperplane_through(2, std::slice::from_ref(&forced), rng) else {
            continue;
        };
        lines.push(ln);
        let Ok(poly) = LabeledPolygon::new(points, lines) else {
            continue;
        };
        let r = poly.cross_ratio()?;
        if &r == target {
            return Ok(poly);
        }
    }
    Err(PolygonError::GenericityFailure)
}

// -- special polygon families ------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialFamily {
    /// P1,a,P2,b,P3,a,P4,b with a through (P1P2)∩(P3P4), b through (P1P4)∩(P2P3).
    OctagonSpecial,
    /// (boundary) P3,(P4P1),P2,(P3P4),P1,(P2P3),P4,(P1P2).
    OctagonDiagonal,
    /// Dual of OctagonSpecial: lines p1..p4 and points A, B.
    OctagonSpecialDual,
    /// 2n-gon P1,(P2P3),P4,(P5P6),... for n not divisible by 3.
    Alternating2nGon(usize),
}

pub struct SpecialCheck {
    pub polygon: LabeledPolygon,
    pub ratio: Scalar,
    /// Interior tiling when the family exposes one (OctagonSpecial).
    pub interior: Option<PolygonTiling>,
}

pub fn special_polygon_check(family: SpecialFamily, rng: &mut Rng) -> Result<SpecialCheck> {
    match family {
        SpecialFamily::OctagonSpecial => {
            for _ in 0..64 {
                if let Some(c) = octagon_special_once(rng)? {
                    return Ok(c);
                }
            }
            Err(PolygonError::GenericityFailure)
        }
        SpecialFamily::OctagonSpecialDual => {
            for _ in 0..64 {
                if let Some(c) = octagon_special_dual_once(rng)? {
                    return Ok(c);
                }
            }
            Err(PolygonError::GenericityFailure)
        }
        SpecialFamily::OctagonDiagonal => alternating_gon(4, rng),
        SpecialFamily::Alternating2nGon(n) => {
            if n % 3 == 0 {
                return Err(PolygonError::UnsupportedFamily(format!(
                    "n = {n} is divisible by 3"
                )));
            }
            if n < 4 {
                return Err(PolygonError::UnsupportedFamily("need n >= 4".into()));
            }
            alternating_gon(n, rng)
        }
    }
}

fn distinct_points(n: usize, rng: &mut Rng) -> Result<Vec<HomElement>> {
    'outer: for _ in 0..64 {
        let mut pts = Vec::new();
        for _ in 0..n {
            pts.push(sample_point(2, rng)?);
        }
        for i in 0..n {
            for j in i + 1..n {
                if pts[i].proj_eq(&pts[j]) {
                    continue 'outer;
                }
                for k in j + 1..n {
                    let Ok(l) = line_through(&pts[i], &pts[j]) else { continue 'outer };
                    if pairing(&pts[k], &l)?.is_zero() {
                        continue 'outer;
                    }
                }
            }
        }
        return Ok(pts);
    }
    Err(PolygonError::GenericityFailure)
}

fn octagon_special_once(rng: &mut Rng) -> Result<Option<SpecialCheck>> {
    let p = distinct_points(4, rng)?;
    let m = line_meet(&line_through(&p[0], &p[1])?, &line_through(&p[2], &p[3])?)?;
    let nn = line_meet(&line_through(&p[0], &p[3])?, &line_through(&p[1], &p[2])?)?;
    let Ok(a) = sample_hyperplane_through(2, std::slice::from_ref(&m), rng) else {
        return Ok(None);
    };
    let Ok(b) = sample_hyperplane_through(2, std::slice::from_ref(&nn), rng) else {
        return Ok(None);
    };
    let e = line_through(&m, &nn)?;
    // boundary P1,a,P2,b,P3,a,P4,b
    let points = vec![p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()];
    let lines = vec![a.clone(), b.clone(), a.clone(), b.clone()];
    let Ok(poly) = LabeledPolygon::new(points, lines) else {
        return Ok(None);
    };
    let ratio = poly.cross_ratio()?;
    // interior tiling: one tile per quadrant around e = (MN)
    let mut labels = BTreeMap::new();
    for (i, pt) in p.iter().enumerate() {
        labels.insert(format!("P{}", i + 1), pt.clone());
    }
    labels.insert("a".into(), a);
    labels.insert("b".into(), b);
    labels.insert("e".into(), e);
    let tiles = vec![
        ["P1".into(), "a".into(), "P2".into(), "e".into()],
        ["P2".into(), "b".into(), "P3".into(), "e".into()],
        ["P3".into(), "a".into(), "P4".into(), "e".into()],
        ["P4".into(), "b".into(), "P1".into(), "e".into()],
    ];
    let boundary = vec![
        "P1".into(), "a".into(), "P2".into(), "b".into(),
        "P3".into(), "a".into(), "P4".into(), "b".into(),
    ];
    let interior = PolygonTiling { tiles, labels, boundary };
    for t in 0..4 {
        if !interior.tile_ratio(t)?.is_one() {
            return Ok(None);
        }
    }
    Ok(Some(SpecialCheck { polygon: poly, ratio, interior: Some(interior) }))
}

fn octagon_special_dual_once(rng: &mut Rng) -> Result<Option<SpecialCheck>> {
    // lines p1..p4; A on ((p1∩p2)(p3∩p4)); B on ((p1∩p4)(p2∩p3));
    // octagon p1,A,p2,B,p3,A,p4,B — as a labeled polygon the points are A,B
    // alternating and the lines are p1..p4: boundary word A?: the polygon has
    // boundary (A, p2, B, p3, A, p4, B, p1) reading point-first.
    let mut ls = Vec::new();
    for _ in 0..4 {
        ls.push(sample_hyperplane_through(2, &[], rng)?);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if ls[i].proj_eq(&ls[j]) {
                return Ok(None);
            }
        }
    }
    let m = line_through(&line_meet(&ls[0], &ls[1])?, &line_meet(&ls[2], &ls[3])?)?;
    let nn = line_through(&line_meet(&ls[0], &ls[3])?, &line_meet(&ls[1], &ls[2])?)?;
    let msub = crate::projective::meet(std::slice::from_ref(&m))?;
    let nsub = crate::projective::meet(std::slice::from_ref(&nn))?;
    let Ok(a) = crate::projective::sample_point_in(&msub, rng) else { return Ok(None) };
    let Ok(b) = crate::projective::sample_point_in(&nsub, rng) else { return Ok(None) };
    let points = vec![a.clone(), b.clone(), a.clone(), b.clone()];
    let lines = vec![ls[1].clone(), ls[2].clone(), ls[3].clone(), ls[0].clone()];
    let Ok(poly) = LabeledPolygon::new(points, lines) else { return Ok(None) };
    let ratio = poly.cross_ratio()?;
    Ok(Some(SpecialCheck { polygon: poly, ratio, interior: None }))
}

/// Boundary A_k = P_{3k+1}, l_k = (P_{3k+2} P_{3k+3}) (indices mod n).
fn alternating_gon(n: usize, rng: &mut Rng) -> Result<SpecialCheck> {
    'outer: for _ in 0..64 {
        let p = distinct_points(n, rng)?;
        let mut points = Vec::new();
        let mut lines = Vec::new();
        for k in 0..n {
            points.push(p[(3 * k) % n].clone());
            lines.push(line_through(&p[(3 * k + 1) % n], &p[(3 * k + 2) % n])?);
        }
        let Ok(poly) = LabeledPolygon::new(points, lines) else {
            continue 'outer;
        };
        let ratio = poly.cross_ratio()?;
        return Ok(SpecialCheck { polygon: poly, ratio, interior: None });
    }
    Err(PolygonError::GenericityFailure)
}

// -- anticoherence suite -------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnticoherenceKind {
    DoublingEquivalence,
    HarmonicQuadrangle,
    CevaHexagon,
    AnnulusIdentity,
}

#[derive(Debug, Clone)]
pub struct AnticoherenceReport {
    pub kind: AnticoherenceKind,
    pub values: Vec<Scalar>,
    pub pass: bool,
}

pub fn anticoherence_suite(kind: AnticoherenceKind, rng: &mut Rng) -> Result<AnticoherenceReport> {
    match kind {
        AnticoherenceKind::DoublingEquivalence => {
            let minus_one = -Scalar::one();
            let poly = sample_polygon_with_ratio(3, &minus_one, rng)?;
            let r = poly.cross_ratio()?;
            let single_coherent = poly.is_coherent()?;
            let double_coherent = poly.double().is_coherent()?;
            let pass = r == minus_one && !single_coherent && double_coherent;
            Ok(AnticoherenceReport { kind, values: vec![r], pass })
        }
        AnticoherenceKind::HarmonicQuadrangle => harmonic_quadrangle(rng),
        AnticoherenceKind::CevaHexagon => ceva_hexagon(rng),
        AnticoherenceKind::AnnulusIdentity => annulus_identity(rng),
    }
}

/// Both complete-quadrangle tiles evaluate to exactly -1.
fn harmonic_quadrangle(rng: &mut Rng) -> Result<AnticoherenceReport> {
    'outer: for _ in 0..64 {
        let a = distinct_points(4, rng)?;
        let l = |i: usize, j: usize| line_through(&a[i], &a[j]);
        let l12 = l(0, 1)?;
        let l13 = l(0, 2)?;
        let l14 = l(0, 3)?;
        let l23 = l(1, 2)?;
        let l24 = l(1, 3)?;
        let l34 = l(2, 3)?;
        let p12_34 = line_meet(&l12, &l34)?;
        let p14_23 = line_meet(&l14, &l23)?;
        let Ok(lo) = line_through(&p12_34, &p14_23) else { continue 'outer };
        let Ok(p13) = line_meet(&l13, &lo) else { continue 'outer };
        let Ok(p24) = line_meet(&l24, &lo) else { continue 'outer };
        // tiles (P13, l14, P24, l12) and (P12_34, l13, P14_23, l24)
        let t1 = crate::projective::mixed_cross_ratio(&p13, &p24, &l14, &l12);
        let t2 = crate::projective::mixed_cross_ratio(&p12_34, &p14_23, &l13, &l24);
        let (Ok(v1), Ok(v2)) = (t1, t2) else { continue 'outer };
        let minus_one = -Scalar::one();
        let pass = v1 == minus_one && v2 == minus_one;
        return Ok(AnticoherenceReport {
            kind: AnticoherenceKind::HarmonicQuadrangle,
            values: vec![v1, v2],
            pass,
        });
    }
    Err(PolygonError::GenericityFailure)
}

/// Hexagon (P1, l3, P2, l1, P3, l2) on three concurrent lines is anticoherent.
fn ceva_hexagon(rng: &mut Rng) -> Result<AnticoherenceReport> {
    'outer: for _ in 0..64 {
        let p0 = sample_point(2, rng)?;
        let mut ls = Vec::new();
        for _ in 0..3 {
            let Ok(l) = sample_hyperplane_through(2, std::slice::from_ref(&p0), rng) else {
                continue 'outer;
            };
            ls.push(l);
        }
        if ls[0].proj_eq(&ls[1]) || ls[1].proj_eq(&ls[2]) || ls[0].proj_eq(&ls[2]) {
            continue 'outer;
        }
        let mut ps = Vec::new();
        for l in &ls {
            let sub = crate::projective::meet(std::slice::from_ref(l))?;
            let Ok(p) = crate::projective::sample_point_in(&sub, rng) else { continue 'outer };
            if p.proj_eq(&p0) {
                continue 'outer;
            }
            ps.push(p);
        }
        let points = vec![ps[0].clone(), ps[1].clone(), ps[2].clone()];
        let lines = vec![ls[2].clone(), ls[0].clone(), ls[1].clone()];
        let Ok(poly) = LabeledPolygon::new(points, lines) else { continue 'outer };
        let r = poly.cross_ratio()?;
        let pass = (r.clone() + Scalar::one()).is_zero();
        return Ok(AnticoherenceReport {
            kind: AnticoherenceKind::CevaHexagon,
            values: vec![r],
            pass,
        });
    }
    Err(PolygonError::GenericityFailure)
}

/// (B,D;(PC),(PA)) * (A,C;(PB),(PD)) = 1 for five generic points.
fn annulus_identity(rng: &mut Rng) -> Result<AnticoherenceReport> {
    'outer: for _ in 0..64 {
        let pts = distinct_points(5, rng)?;
        let (p, a, b, c, d) = (&pts[0], &pts[1], &pts[2], &pts[3], &pts[4]);
        let pa = line_through(p, a)?;
        let pb = line_through(p, b)?;
        let pc = line_through(p, c)?;
        let pd = line_through(p, d)?;
        let r1 = crate::projective::mixed_cross_ratio(b, d, &pc, &pa);
        let r2 = crate::projective::mixed_cross_ratio(a, c, &pb, &pd);
        let (Ok(v1), Ok(v2)) = (r1, r2) else { continue 'outer };
        let prod = &v1 * &v2;
        let pass = prod.is_one();
        return Ok(AnticoherenceReport {
            kind: AnticoherenceKind::AnnulusIdentity,
            values: vec![v1, v2, prod],
            pass,
        });
    }
    Err(PolygonError::GenericityFailure)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_polygon_matches_mixed_cross_ratio() {
        let a = HomElement::point_i(&[1, 0, 1]);
        let b = HomElement::point_i(&[0, 1, 1]);
        let l = HomElement::hyperplane_i(&[1, 1, 1]);
        let m = HomElement::hyperplane_i(&[1, 2, 3]);
        let poly = LabeledPolygon::new(vec![a.clone(), b.clone()], vec![l.clone(), m.clone()])
            .unwrap();
        // boundary A1 l1 A2 l2 -> ratio <A1,l1><A2,l2> / (<A2,l1><A1,l2>)
        let want = crate::projective::mixed_cross_ratio(&a, &b, &l, &m).unwrap();
        assert_eq!(poly.cross_ratio().unwrap(), want);
    }

    #[test]
    fn rotation_and_reflection() {
        let mut rng = Rng::new(11);
        let poly = sample_polygon_with_ratio(4, &Scalar::from_int(1), &mut rng).unwrap();
        let r = poly.cross_ratio().unwrap();
        // rotate boundary by one (A,l) pair
        let rot = LabeledPolygon {
            points: {
                let mut p = poly.points.clone();
                p.rotate_left(1);
                p
            },
            lines: {
                let mut l = poly.lines.clone();
                l.rotate_left(1);
                l
            },
        };
        assert_eq!(rot.cross_ratio().unwrap(), r);
        // reflect: word read backwards pairs Ai with l(i-1)
        let n = poly.n();
        let refl = LabeledPolygon {
            points: (0..n).map(|i| poly.points[(n - i) % n].clone()).collect(),
            lines: (0..n).map(|i| poly.lines[(n - 1 - i) % n].clone()).collect(),
        };
        let rr = refl.cross_ratio().unwrap();
        assert!((r * rr).is_one());
    }

    #[test]
    fn coherent_hexagon_tiles_into_three() {
        let mut rng = Rng::new(5);
        let poly = sample_polygon_with_ratio(3, &Scalar::from_int(1), &mut rng).unwrap();
        let tiling = tile_coherent_polygon(&poly).unwrap();
        assert_eq!(tiling.tiles.len(), 3);
        assert!(tiling.product().unwrap().is_one());
    }

    #[test]
    fn coherent_octagon_tiles_into_five() {
        let mut rng = Rng::new(6);
        let poly = sample_polygon_with_ratio(4, &Scalar::from_int(1), &mut rng).unwrap();
        let tiling = tile_coherent_polygon(&poly).unwrap();
        assert_eq!(tiling.tiles.len(), 5);
    }

    #[test]
    fn incoherent_polygon_rejected() {
        let mut rng = Rng::new(7);
        let poly = sample_polygon_with_ratio(3, &Scalar::from_int(2), &mut rng).unwrap();
        assert!(matches!(
            tile_coherent_polygon(&poly),
            Err(PolygonError::NotCoherent)
        ));
    }

    #[test]
    fn special_families_are_coherent() {
        let mut rng = Rng::new(9);
        for fam in [
            SpecialFamily::OctagonSpecial,
            SpecialFamily::OctagonDiagonal,
            SpecialFamily::OctagonSpecialDual,
            SpecialFamily::Alternating2nGon(5),
            SpecialFamily::Alternating2nGon(7),
            SpecialFamily::Alternating2nGon(8),
        ] {
            let check = special_polygon_check(fam, &mut rng).unwrap();
            assert!(check.ratio.is_one(), "{fam:?}: {}", check.ratio);
        }
        assert!(matches!(
            special_polygon_check(SpecialFamily::Alternating2nGon(6), &mut rng),
            Err(PolygonError::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn anticoherence_kinds_pass() {
        let mut rng = Rng::new(13);
        for kind in [
            AnticoherenceKind::DoublingEquivalence,
            AnticoherenceKind::HarmonicQuadrangle,
            AnticoherenceKind::CevaHexagon,
            AnticoherenceKind::AnnulusIdentity,
        ] {
            let rep = anticoherence_suite(kind, &mut rng).unwrap();
            assert!(rep.pass, "{kind:?}: {:?}", rep.values);
        }
    }

    #[test]
    fn doubling_squares_the_ratio() {
        let mut rng = Rng::new(21);
        let poly = sample_polygon_with_ratio(4, &Scalar::ratio(3, 2), &mut rng).unwrap();
        let r = poly.cross_ratio().unwrap();
        let d = poly.double().cross_ratio().unwrap();
        assert_eq!(d, r.clone() * r);
    }
}
