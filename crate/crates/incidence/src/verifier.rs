//! Geometric labelings of tilings and the master-theorem machinery: per-tile
//! cross-ratios, the global product identity, all-but-one coherence checks,
//! Levi-graph extraction, labeled Desargues flips, and derived checks.

use crate::projective::{
    line_meet, line_through, mixed_cross_ratio, pairing, plane_through, GeomError, HomElement,
    Role,
};
use crate::scalar::Scalar;
use crate::surface::{triangulation_to_tiling, Color, SurfaceError, Tiling, Triangulation};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone)]
pub struct Labeling {
    pub dim: usize,
    pub labels: BTreeMap<String, HomElement>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyError {
    MissingLabel(String),
    RoleClash(String),
    DuplicateLabel(String, String),
    IncidentEdge(String, String),
    Geometry(GeomError),
    Surface(SurfaceError),
    IncoherentTile(usize),
    DegenerateHexagon,
    DegenerateStep(usize),
    NonPlanarFace(usize),
    BadInput(String),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::MissingLabel(v) => write!(f, "vertex {v} has no label"),
            VerifyError::RoleClash(v) => write!(f, "label role does not match color of {v}"),
            VerifyError::DuplicateLabel(a, b) => {
                write!(f, "labels of {a} and {b} are projectively equal")
            }
            VerifyError::IncidentEdge(p, h) => write!(f, "point {p} lies on hyperplane {h}"),
            VerifyError::Geometry(e) => write!(f, "geometry: {e}"),
            VerifyError::Surface(e) => write!(f, "surface: {e}"),
            VerifyError::IncoherentTile(t) => write!(f, "tile {t} is not coherent"),
            VerifyError::DegenerateHexagon => write!(f, "hexagon violates flip genericity"),
            VerifyError::DegenerateStep(i) => write!(f, "closure step {i} is undefined"),
            VerifyError::NonPlanarFace(i) => write!(f, "face {i} has no well-defined plane"),
            VerifyError::BadInput(m) => write!(f, "bad input: {m}"),
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<GeomError> for VerifyError {
    fn from(e: GeomError) -> Self {
        VerifyError::Geometry(e)
    }
}

impl From<SurfaceError> for VerifyError {
    fn from(e: SurfaceError) -> Self {
        VerifyError::Surface(e)
    }
}

pub type Result<T> = std::result::Result<T, VerifyError>;

impl Labeling {
    pub fn new(dim: usize) -> Labeling {
        Labeling { dim, labels: BTreeMap::new() }
    }

    pub fn insert(&mut self, id: &str, e: HomElement) {
        debug_assert_eq!(e.dim(), self.dim);
        self.labels.insert(id.to_string(), e);
    }

    pub fn get(&self, id: &str) -> Result<&HomElement> {
        self.labels
            .get(id)
            .ok_or_else(|| VerifyError::MissingLabel(id.to_string()))
    }

    /// Checks the labeling invariants against a tiling: roles match colors,
    /// labels are pairwise distinct within each color class, and no edge of
    /// the tiling carries a point-on-hyperplane incidence.
    pub fn check_against(&self, t: &Tiling) -> Result<()> {
        for (v, id) in t.ids.iter().enumerate() {
            let e = self.get(id)?;
            let want = match t.colors[v] {
                Color::Black => Role::Point,
                Color::White => Role::Hyperplane,
            };
            if e.role != want {
                return Err(VerifyError::RoleClash(id.clone()));
            }
        }
        for (i, a) in t.ids.iter().enumerate() {
            for b in t.ids.iter().skip(i + 1) {
                let (ea, eb) = (self.get(a)?, self.get(b)?);
                if ea.role == eb.role && ea.proj_eq(eb) {
                    return Err(VerifyError::DuplicateLabel(a.clone(), b.clone()));
                }
            }
        }
        for q in &t.tiles {
            for s in 0..4 {
                let (u, v) = (q[s], q[(s + 1) % 4]);
                let (p, h) = if t.colors[u] == Color::Black { (u, v) } else { (v, u) };
                let pe = self.get(&t.ids[p])?;
                let he = self.get(&t.ids[h])?;
                if pairing(pe, he)?.is_zero() {
                    return Err(VerifyError::IncidentEdge(
                        t.ids[p].clone(),
                        t.ids[h].clone(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Cross-ratio of tile (b0,w0,b1,w1): <b0,w0><b1,w1> / (<b1,w0><b0,w1>).
pub fn tile_cross_ratio(lab: &Labeling, t: &Tiling, tile: usize) -> Result<Scalar> {
    let q = &t.tiles[tile];
    let b0 = lab.get(&t.ids[q[0]])?;
    let w0 = lab.get(&t.ids[q[1]])?;
    let b1 = lab.get(&t.ids[q[2]])?;
    let w1 = lab.get(&t.ids[q[3]])?;
    mixed_cross_ratio(b0, b1, w0, w1).map_err(VerifyError::from)
}

pub fn tile_coherent(lab: &Labeling, t: &Tiling, tile: usize) -> Result<bool> {
    Ok(tile_cross_ratio(lab, t, tile)?.is_one())
}

/// Product of all tile cross-ratios; exactly 1 for every valid labeling of an
/// eligible tiling (each edge pairing appears once in a numerator and once in
/// a denominator).
pub fn product_identity(lab: &Labeling, t: &Tiling) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for tile in 0..t.tile_count() {
        acc = acc * tile_cross_ratio(lab, t, tile)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub tile_ratios: Vec<Scalar>,
    pub tile_coherent: Vec<bool>,
    pub product: Scalar,
    pub excluded: usize,
    pub hypothesis_failures: Vec<usize>,
    pub excluded_coherent: bool,
}

impl CoherenceReport {
    /// All hypothesis tiles coherent and the excluded tile coherent.
    pub fn verdict(&self) -> bool {
        self.hypothesis_failures.is_empty() && self.excluded_coherent
    }
}

/// Master-theorem check: never assumes the conclusion; hypothesis failures and
/// conclusion failure are reported separately.
pub fn check_master(lab: &Labeling, t: &Tiling, excluded: usize) -> Result<CoherenceReport> {
    if excluded >= t.tile_count() {
        return Err(VerifyError::BadInput("excluded tile out of range".into()));
    }
    lab.check_against(t)?;
    let mut tile_ratios = Vec::with_capacity(t.tile_count());
    let mut tile_coherent = Vec::with_capacity(t.tile_count());
    let mut product = Scalar::one();
    let mut hypothesis_failures = Vec::new();
    for tile in 0..t.tile_count() {
        let r = tile_cross_ratio(lab, t, tile)?;
        let ok = r.is_one();
        product = product * r.clone();
        if !ok && tile != excluded {
            hypothesis_failures.push(tile);
        }
        tile_ratios.push(r);
        tile_coherent.push(ok);
    }
    let excluded_coherent = tile_coherent[excluded];
    Ok(CoherenceReport {
        tile_ratios,
        tile_coherent,
        product,
        excluded,
        hypothesis_failures,
        excluded_coherent,
    })
}

// -- Levi graph -----------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct BipartiteIncidenceGraph {
    /// Merged point classes: representative label and the member names.
    pub points: Vec<(HomElement, Vec<String>)>,
    pub lines: Vec<(HomElement, Vec<String>)>,
    /// Edges as (point index, line index).
    pub edges: Vec<(usize, usize)>,
    /// Incidences between listed points and lines that are not graph edges.
    pub accidental_incidences: usize,
}

/// Inserts the per-tile quadripod (N = l∩m and c = (AB), five edges), merges
/// projectively equal labels, and removes degree-2 vertices. Plane only.
pub fn levi_graph(lab: &Labeling, t: &Tiling, excluded: Option<usize>) -> Result<BipartiteIncidenceGraph> {
    if lab.dim != 2 {
        return Err(VerifyError::BadInput("Levi extraction is plane-level".into()));
    }
    lab.check_against(t)?;
    let mut points: Vec<(HomElement, Vec<String>)> = Vec::new();
    let mut lines: Vec<(HomElement, Vec<String>)> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let add = |pool: &mut Vec<(HomElement, Vec<String>)>, e: HomElement, name: String| {
        if let Some(i) = pool.iter().position(|(x, _)| x.proj_eq(&e)) {
            if !pool[i].1.contains(&name) {
                pool[i].1.push(name);
            }
            i
        } else {
            pool.push((e, vec![name]));
            pool.len() - 1
        }
    };
    for (v, id) in t.ids.iter().enumerate() {
        let e = lab.get(id)?.clone();
        match t.colors[v] {
            Color::Black => add(&mut points, e, id.clone()),
            Color::White => add(&mut lines, e, id.clone()),
        };
    }
    for (tile, q) in t.tiles.iter().enumerate() {
        let a = lab.get(&t.ids[q[0]])?;
        let l = lab.get(&t.ids[q[1]])?;
        let b = lab.get(&t.ids[q[2]])?;
        let m = lab.get(&t.ids[q[3]])?;
        if excluded != Some(tile) && !mixed_cross_ratio(a, b, l, m)?.is_one() {
            return Err(VerifyError::IncoherentTile(tile));
        }
        let n = line_meet(l, m).map_err(|_| VerifyError::IncoherentTile(tile))?;
        let c = line_through(a, b).map_err(|_| VerifyError::IncoherentTile(tile))?;
        let ni = add(&mut points, n, format!("N{tile}"));
        let ci = add(&mut lines, c, format!("c{tile}"));
        let ai = add(&mut points, a.clone(), t.ids[q[0]].clone());
        let bi = add(&mut points, b.clone(), t.ids[q[2]].clone());
        let li = add(&mut lines, l.clone(), t.ids[q[1]].clone());
        let mi = add(&mut lines, m.clone(), t.ids[q[3]].clone());
        for e in [(ni, li), (ni, mi), (ni, ci), (ai, ci), (bi, ci)] {
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    // one pass of bivalent removal
    loop {
        let mut deg_p = vec![0usize; points.len()];
        let mut deg_l = vec![0usize; lines.len()];
        for &(p, l) in &edges {
            deg_p[p] += 1;
            deg_l[l] += 1;
        }
        let drop_p: Vec<usize> = (0..points.len()).filter(|&i| deg_p[i] == 2).collect();
        let drop_l: Vec<usize> = (0..lines.len()).filter(|&i| deg_l[i] == 2).collect();
        if drop_p.is_empty() && drop_l.is_empty() {
            break;
        }
        edges.retain(|&(p, l)| !drop_p.contains(&p) && !drop_l.contains(&l));
        let remap = |pool: &mut Vec<(HomElement, Vec<String>)>, drop: &[usize]| {
            let mut new = Vec::new();
            let mut map = vec![usize::MAX; pool.len()];
            for (i, item) in pool.drain(..).enumerate() {
                if !drop.contains(&i) {
                    map[i] = new.len();
                    new.push(item);
                }
            }
            *pool = new;
            map
        };
        let pmap = remap(&mut points, &drop_p);
        let lmap = remap(&mut lines, &drop_l);
        for e in edges.iter_mut() {
            *e = (pmap[e.0], lmap[e.1]);
        }
    }
    let mut accidental = 0;
    for (pi, (p, _)) in points.iter().enumerate() {
        for (li, (l, _)) in lines.iter().enumerate() {
            if pairing(p, l)?.is_zero() && !edges.contains(&(pi, li)) {
                accidental += 1;
            }
        }
    }
    Ok(BipartiteIncidenceGraph { points, lines, edges, accidental_incidences: accidental })
}

// -- labeled Desargues flips ------------------------------------------------------

/// Flips the three coherent tiles around interior vertex `center` (degree 3)
/// and computes the unique label of the new center so the tiling stays
/// coherent; the third incidence is verified as a hard postcondition.
pub fn desargues_flip_labeled(
    lab: &Labeling,
    t: &Tiling,
    center: &str,
    new_vertex: &str,
) -> Result<(Labeling, Tiling)> {
    let v = t.vertex(center)?;
    let rot = t.rotation_at(v)?;
    if rot.len() != 3 {
        return Err(VerifyError::BadInput(format!("{center} has degree {}", rot.len())));
    }
    for &(tile, _) in &rot {
        if !tile_coherent(lab, t, tile)? {
            return Err(VerifyError::IncoherentTile(tile));
        }
    }
    let mut a: Vec<HomElement> = Vec::with_capacity(3);
    let mut b: Vec<HomElement> = Vec::with_capacity(3);
    for &(tk, pk) in &rot {
        a.push(lab.get(&t.ids[t.tiles[tk][(pk + 1) % 4]])?.clone());
        b.push(lab.get(&t.ids[t.tiles[tk][(pk + 2) % 4]])?.clone());
    }
    let center_color = match lab.get(center)?.role {
        Role::Hyperplane => Color::White,
        Role::Point => Color::Black,
    };
    // New tiles are (b_k, a_{k+1}, b_{k+1}, new); the new label must make all
    // three coherent. White center -> new black point Q on the three lines
    // L_k = (a_{k+1}, b_k ∩ b_{k+1}); black center -> new white line through
    // the three points X_k = (b_k b_{k+1}) ∩ a_{k+1}.
    let new_label = match center_color {
        Color::White => {
            let mut ls = Vec::new();
            for k in 0..3 {
                let mk = line_meet(&b[k], &b[(k + 1) % 3])
                    .map_err(|_| VerifyError::DegenerateHexagon)?;
                ls.push(
                    line_through(&a[(k + 1) % 3], &mk)
                        .map_err(|_| VerifyError::DegenerateHexagon)?,
                );
            }
            let q = line_meet(&ls[0], &ls[1]).map_err(|_| VerifyError::DegenerateHexagon)?;
            if !pairing(&q, &ls[2])?.is_zero() {
                return Err(VerifyError::DegenerateHexagon);
            }
            q
        }
        Color::Black => {
            let mut xs = Vec::new();
            for k in 0..3 {
                let bk = line_through(&b[k], &b[(k + 1) % 3])
                    .map_err(|_| VerifyError::DegenerateHexagon)?;
                xs.push(
                    line_meet(&bk, &a[(k + 1) % 3]).map_err(|_| VerifyError::DegenerateHexagon)?,
                );
            }
            let p = line_through(&xs[0], &xs[1]).map_err(|_| VerifyError::DegenerateHexagon)?;
            if !pairing(&xs[2], &p)?.is_zero() {
                return Err(VerifyError::DegenerateHexagon);
            }
            p
        }
    };
    let t2 = crate::surface::apply_move(
        t,
        &crate::surface::MoveSpec::DesarguesMove {
            vertex: center.to_string(),
            new_vertex: new_vertex.to_string(),
        },
    )?;
    let mut lab2 = lab.clone();
    lab2.labels.remove(center);
    lab2.insert(new_vertex, new_label);
    // postcondition: the three new tiles are coherent
    for tile in 0..t2.tile_count() {
        let q = &t2.tiles[tile];
        if q.iter().any(|&x| t2.ids[x] == new_vertex) && !tile_coherent(&lab2, &t2, tile)? {
            return Err(VerifyError::DegenerateHexagon);
        }
    }
    Ok((lab2, t2))
}

// -- closure walks (Hamiltonian cycles in the dual graph) -------------------------

pub struct ClosureData {
    /// One point per triangulation vertex (plane).
    pub vertex_points: Vec<HomElement>,
    /// Points on (Pu Pv) for edges not shared by consecutive cycle triangles.
    pub edge_points: HashMap<(usize, usize), HomElement>,
    /// Starting point on l1.
    pub q1: HomElement,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub steps: Vec<HomElement>,
    pub closes: bool,
}

fn tri_shared_edge(a: [usize; 3], b: [usize; 3]) -> Option<(usize, usize)> {
    let mut common: Vec<usize> = a.iter().copied().filter(|v| b.contains(v)).collect();
    if common.len() == 2 {
        common.sort_unstable();
        Some((common[0], common[1]))
    } else {
        None
    }
}

/// Runs the recursion Q_i = l_i ∩ (Q_{i-1} P_e) around a Hamiltonian cycle of
/// the dual trivalent graph and reports whether Q_{N+1} = Q_1.
pub fn closure_walk(
    tri: &Triangulation,
    ham: &[usize],
    data: &ClosureData,
) -> Result<ClosureReport> {
    let n = ham.len();
    if n != tri.triangles.len() {
        return Err(VerifyError::BadInput("cycle must visit every triangle once".into()));
    }
    let line_of = |i: usize| -> Result<HomElement> {
        let (u, v) = tri_shared_edge(tri.triangles[ham[i % n]], tri.triangles[ham[(i + 1) % n]])
            .ok_or_else(|| VerifyError::BadInput("consecutive triangles not adjacent".into()))?;
        line_through(&data.vertex_points[u], &data.vertex_points[v])
            .map_err(VerifyError::Geometry)
    };
    let free_edge = |i: usize| -> Result<(usize, usize)> {
        let tcur = tri.triangles[ham[i % n]];
        let prev = tri_shared_edge(tcur, tri.triangles[ham[(i + n - 1) % n]])
            .ok_or_else(|| VerifyError::BadInput("consecutive triangles not adjacent".into()))?;
        let next = tri_shared_edge(tcur, tri.triangles[ham[(i + 1) % n]])
            .ok_or_else(|| VerifyError::BadInput("consecutive triangles not adjacent".into()))?;
        for k in 0..3 {
            let (u, v) = (tcur[k], tcur[(k + 1) % 3]);
            let e = (u.min(v), u.max(v));
            if e != prev && e != next {
                return Ok(e);
            }
        }
        Err(VerifyError::BadInput("triangle has no free side".into()))
    };
    let mut q = data.q1.clone();
    let mut steps = vec![q.clone()];
    for i in 1..=n {
        // moving into triangle ham[i mod n]: Q_{i+1} = l_{i+1} ∩ (Q_i P_e)
        let e = free_edge(i)?;
        let pe = data
            .edge_points
            .get(&e)
            .ok_or_else(|| VerifyError::BadInput(format!("missing edge point for {e:?}")))?;
        let li = line_of(i)?;
        let through = line_through(&q, pe).map_err(|_| VerifyError::DegenerateStep(i))?;
        q = line_meet(&li, &through).map_err(|_| VerifyError::DegenerateStep(i))?;
        steps.push(q.clone());
    }
    let closes = steps[0].proj_eq(steps.last().unwrap());
    Ok(ClosureReport { steps, closes })
}

// -- derived checks ----------------------------------------------------------------

pub struct TriangulatedInput {
    pub tri: Triangulation,
    pub vertex_points: Vec<HomElement>,
    pub edge_points: HashMap<(usize, usize), HomElement>,
    pub excluded_triangle: usize,
}

/// Plane check from a triangulated surface: builds the edge-tiling, labels
/// whites by the lines through each triangle's side points, and delegates to
/// check_master with the excluded triangle's last side as the excluded tile.
pub fn check_triangulated_surface(input: &TriangulatedInput) -> Result<CoherenceReport> {
    let t = triangulation_to_tiling(&input.tri)?;
    let mut lab = Labeling::new(2);
    for (v, name) in input.tri.vertices.iter().enumerate() {
        lab.insert(name, input.vertex_points[v].clone());
    }
    let tri = &input.tri;
    let sides = |i: usize| -> Vec<(usize, usize)> {
        (0..3)
            .map(|k| {
                let (u, v) = (tri.triangles[i][k], tri.triangles[i][(k + 1) % 3]);
                (u.min(v), u.max(v))
            })
            .collect()
    };
    let ep = |e: &(usize, usize)| -> Result<&HomElement> {
        input
            .edge_points
            .get(e)
            .ok_or_else(|| VerifyError::BadInput(format!("missing edge point {e:?}")))
    };
    for i in 0..tri.triangles.len() {
        let s = sides(i);
        let line = if i == input.excluded_triangle {
            line_through(ep(&s[0])?, ep(&s[1])?)?
        } else {
            // line through all three side points (collinear by hypothesis)
            let l = line_through(ep(&s[0])?, ep(&s[1])?)?;
            if !pairing(ep(&s[2])?, &l)?.is_zero() {
                // hypothesis failure surfaces as an incoherent tile below
            }
            l
        };
        lab.insert(&format!("t{i}"), line);
    }
    // excluded tile: the tile of the excluded triangle's lexicographically
    // largest side (the one not used to define its line)
    let excl_sides = sides(input.excluded_triangle);
    let target = excl_sides[2];
    let excluded_tile = t
        .tiles
        .iter()
        .position(|q| {
            let mut bs: Vec<usize> = vec![q[0], q[2]];
            bs.sort_unstable();
            let names: Vec<&str> = q.iter().map(|&x| t.ids[x].as_str()).collect();
            bs == vec![target.0.min(target.1), target.0.max(target.1)]
                && names.contains(&format!("t{}", input.excluded_triangle).as_str())
        })
        .ok_or_else(|| VerifyError::BadInput("excluded side tile not found".into()))?;
    check_master(&lab, &t, excluded_tile)
}

pub struct QuadSurfaceInput {
    pub vertices: Vec<String>,
    /// Quadrilateral faces as cyclic vertex index quadruples (any quad tiling
    /// of a closed oriented surface; no 2-coloring needed).
    pub faces: Vec<[usize; 4]>,
    pub vertex_points: Vec<HomElement>,
    pub edge_points: HashMap<(usize, usize), HomElement>,
    pub excluded_face: usize,
}

/// 3-space check from a quadrangulated surface (coplanar side points per face).
pub fn check_quadrangulated_surface(input: &QuadSurfaceInput) -> Result<CoherenceReport> {
    // build the edge-tiling: blacks = vertices, whites = faces
    let mut darts: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, q) in input.faces.iter().enumerate() {
        for k in 0..4 {
            if darts.insert((q[k], q[(k + 1) % 4]), i).is_some() {
                return Err(VerifyError::BadInput("inconsistent face orientations".into()));
            }
        }
    }
    let mut ids: Vec<String> = input.vertices.clone();
    let mut colors = vec![Color::Black; ids.len()];
    let face_white: Vec<usize> = (0..input.faces.len())
        .map(|i| {
            ids.push(format!("f{i}"));
            colors.push(Color::White);
            ids.len() - 1
        })
        .collect();
    let mut tiles = Vec::new();
    let mut edge_list = Vec::new();
    for (&(u, v), &fa) in darts.iter() {
        if u < v {
            let fb = *darts
                .get(&(v, u))
                .ok_or_else(|| VerifyError::BadInput("surface not closed".into()))?;
            tiles.push([u, face_white[fa], v, face_white[fb]]);
            edge_list.push((u, v));
        }
    }
    // deterministic ordering
    let mut order: Vec<usize> = (0..tiles.len()).collect();
    order.sort_by_key(|&i| edge_list[i]);
    let tiles: Vec<[usize; 4]> = order.iter().map(|&i| tiles[i]).collect();
    let edge_list: Vec<(usize, usize)> = order.iter().map(|&i| edge_list[i]).collect();
    let t = Tiling { ids, colors, tiles, gluing: None };

    let mut lab = Labeling::new(3);
    for (v, name) in input.vertices.iter().enumerate() {
        lab.insert(name, input.vertex_points[v].clone());
    }
    let ep = |e: &(usize, usize)| -> Result<&HomElement> {
        input
            .edge_points
            .get(e)
            .ok_or_else(|| VerifyError::BadInput(format!("missing edge point {e:?}")))
    };
    let mut excluded_side = None;
    for (i, q) in input.faces.iter().enumerate() {
        let mut side_pts = Vec::new();
        let mut sides = Vec::new();
        for k in 0..4 {
            let (u, v) = (q[k], q[(k + 1) % 4]);
            let e = (u.min(v), u.max(v));
            side_pts.push(ep(&e)?.clone());
            sides.push(e);
        }
        let plane = plane_through(&[&side_pts[0], &side_pts[1], &side_pts[2]])
            .map_err(|_| VerifyError::NonPlanarFace(i))?;
        if i == input.excluded_face {
            excluded_side = Some(sides[3]);
        }
        lab.insert(&format!("f{i}"), plane);
    }
    let target = excluded_side.unwrap();
    let excluded_tile = edge_list
        .iter()
        .position(|&e| e == target)
        .ok_or_else(|| VerifyError::BadInput("excluded side tile not found".into()))?;
    check_master(&lab, &t, excluded_tile)
}

pub struct PolytopeInput {
    pub vertices: Vec<String>,
    /// Faces as cyclic vertex index sequences, consistently oriented.
    pub faces: Vec<Vec<usize>>,
    /// Geometry of the polytope itself (defines the face planes).
    pub polytope_points: Vec<HomElement>,
    /// The labeled points V_i'.
    pub label_points: Vec<HomElement>,
    pub excluded_edge: (usize, usize),
}

/// Edge-crossing check for polytopes: for each edge {i,j}, the lines (V_i V_j)
/// and (V_i' V_j') must intersect; all but the excluded edge are hypotheses.
pub fn check_polytope_edges(input: &PolytopeInput) -> Result<CoherenceReport> {
    let mut darts: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, f) in input.faces.iter().enumerate() {
        for k in 0..f.len() {
            if darts.insert((f[k], f[(k + 1) % f.len()]), i).is_some() {
                return Err(VerifyError::BadInput("inconsistent face orientations".into()));
            }
        }
    }
    let mut ids: Vec<String> = input.vertices.clone();
    let mut colors = vec![Color::Black; ids.len()];
    let face_white: Vec<usize> = (0..input.faces.len())
        .map(|i| {
            ids.push(format!("f{i}"));
            colors.push(Color::White);
            ids.len() - 1
        })
        .collect();
    let mut tiles = Vec::new();
    let mut edge_list = Vec::new();
    for (&(u, v), &fa) in darts.iter() {
        if u < v {
            let fb = *darts
                .get(&(v, u))
                .ok_or_else(|| VerifyError::BadInput("polytope boundary not closed".into()))?;
            tiles.push([u, face_white[fa], v, face_white[fb]]);
            edge_list.push((u, v));
        }
    }
    let mut order: Vec<usize> = (0..tiles.len()).collect();
    order.sort_by_key(|&i| edge_list[i]);
    let tiles: Vec<[usize; 4]> = order.iter().map(|&i| tiles[i]).collect();
    let edge_list: Vec<(usize, usize)> = order.iter().map(|&i| edge_list[i]).collect();
    let t = Tiling { ids, colors, tiles, gluing: None };

    let mut lab = Labeling::new(3);
    for (v, name) in input.vertices.iter().enumerate() {
        lab.insert(name, input.label_points[v].clone());
    }
    for (i, f) in input.faces.iter().enumerate() {
        if f.len() < 3 {
            return Err(VerifyError::NonPlanarFace(i));
        }
        let plane = plane_through(&[
            &input.polytope_points[f[0]],
            &input.polytope_points[f[1]],
            &input.polytope_points[f[2]],
        ])
        .map_err(|_| VerifyError::NonPlanarFace(i))?;
        for &v in f.iter().skip(3) {
            if !pairing(&input.polytope_points[v], &plane)?.is_zero() {
                return Err(VerifyError::NonPlanarFace(i));
            }
        }
        lab.insert(&format!("f{i}"), plane);
    }
    let target = (
        input.excluded_edge.0.min(input.excluded_edge.1),
        input.excluded_edge.0.max(input.excluded_edge.1),
    );
    let excluded_tile = edge_list
        .iter()
        .position(|&e| e == target)
        .ok_or_else(|| VerifyError::BadInput("excluded edge not found".into()))?;
    check_master(&lab, &t, excluded_tile)
}

