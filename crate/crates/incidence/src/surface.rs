//! Combinatorial layer: bicolored quadrilateral tilings of closed oriented
//! surfaces, disks (polygons), their invariants, conversions, and local moves.
//! No geometry lives here.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A dart is a directed tile side: side `s` of tile `t` runs from
/// `tiles[t][s]` to `tiles[t][(s+1)%4]`.
pub type Dart = (usize, usize);

#[derive(Debug, Clone)]
pub struct Tiling {
    pub ids: Vec<String>,
    pub colors: Vec<Color>,
    pub tiles: Vec<[usize; 4]>,
    /// Explicit dart matching; required when implicit matching is ambiguous.
    pub gluing: Option<HashMap<Dart, Dart>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    UnknownVertex(String),
    NotClosed,
    NotEligible,
    PatternNotFound(String),
    WouldBreakBipartite,
    DegreeOneVertex,
    MonogonFace,
    BadGluing(String),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::UnknownVertex(v) => write!(f, "unknown vertex id {v}"),
            SurfaceError::NotClosed => write!(f, "tiling is not a closed oriented surface"),
            SurfaceError::NotEligible => write!(f, "tiling is not master-theorem eligible"),
            SurfaceError::PatternNotFound(m) => write!(f, "local pattern not found: {m}"),
            SurfaceError::WouldBreakBipartite => write!(f, "move would break the 2-coloring"),
            SurfaceError::DegreeOneVertex => write!(f, "graph has a degree-1 vertex"),
            SurfaceError::MonogonFace => write!(f, "graph has a monogon face"),
            SurfaceError::BadGluing(m) => write!(f, "bad explicit gluing: {m}"),
        }
    }
}

impl std::error::Error for SurfaceError {}

pub type Result<T> = std::result::Result<T, SurfaceError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub closed_oriented: bool,
    pub bipartite_ok: bool,
    pub connected_components: usize,
    pub ambiguous_darts: usize,
    pub self_folded_tiles: Vec<usize>,
    pub genus: Option<usize>,
}

impl SurfaceReport {
    pub fn eligible(&self) -> bool {
        self.closed_oriented && self.bipartite_ok
    }
}

impl Tiling {
    pub fn new(vertices: Vec<(String, Color)>, tiles: Vec<[String; 4]>) -> Result<Tiling> {
        let mut idx = HashMap::new();
        let mut ids = Vec::new();
        let mut colors = Vec::new();
        for (id, c) in vertices {
            idx.insert(id.clone(), ids.len());
            ids.push(id);
            colors.push(c);
        }
        let tiles = tiles
            .into_iter()
            .map(|t| {
                let mut out = [0usize; 4];
                for (o, v) in out.iter_mut().zip(t.iter()) {
                    *o = *idx
                        .get(v)
                        .ok_or_else(|| SurfaceError::UnknownVertex(v.clone()))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tiling { ids, colors, tiles, gluing: None })
    }

    /// Convenience constructor: black/white ids and tiles as id quadruples.
    pub fn from_names(blacks: &[&str], whites: &[&str], tiles: &[[&str; 4]]) -> Result<Tiling> {
        let mut vertices = Vec::new();
        for b in blacks {
            vertices.push((b.to_string(), Color::Black));
        }
        for w in whites {
            vertices.push((w.to_string(), Color::White));
        }
        let tiles = tiles
            .iter()
            .map(|t| [t[0].to_string(), t[1].to_string(), t[2].to_string(), t[3].to_string()])
            .collect();
        Tiling::new(vertices, tiles)
    }

    /// Builds a closed tiling from unoriented alternating quads: tile
    /// orientations are fixed by propagating the reversed-dart constraint
    /// across shared edges (unique up to a global flip on each component).
    pub fn from_unoriented(
        blacks: &[&str],
        whites: &[&str],
        quads: &[[&str; 4]],
    ) -> Result<Tiling> {
        let mut t = Tiling::from_names(blacks, whites, quads)?;
        // candidate darts at orientation 0; edge constraints between tiles
        let mut slots: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
        for (ti, q) in t.tiles.iter().enumerate() {
            for s in 0..4 {
                let (u, v) = (q[s], q[(s + 1) % 4]);
                let key = (u.min(v), u.max(v));
                slots.entry(key).or_default().push((ti, u < v));
            }
        }
        // 2-color tiles: flip[ti] in {false,true}
        let mut flip: Vec<Option<bool>> = vec![None; t.tiles.len()];
        let mut constraints: HashMap<usize, Vec<(usize, bool)>> = HashMap::new();
        for occ in slots.values() {
            if occ.len() != 2 {
                return Err(SurfaceError::NotClosed);
            }
            let ((t1, d1), (t2, d2)) = (occ[0], occ[1]);
            if t1 == t2 {
                if d1 == d2 {
                    return Err(SurfaceError::NotClosed);
                }
                continue;
            }
            // same candidate direction -> tiles must differ; opposite -> equal
            let must_differ = d1 == d2;
            constraints.entry(t1).or_default().push((t2, must_differ));
            constraints.entry(t2).or_default().push((t1, must_differ));
        }
        for root in 0..t.tiles.len() {
            if flip[root].is_some() {
                continue;
            }
            flip[root] = Some(false);
            let mut stack = vec![root];
            while let Some(ti) = stack.pop() {
                let f = flip[ti].unwrap();
                for &(tj, differ) in constraints.get(&ti).into_iter().flatten() {
                    let want = f ^ differ;
                    match flip[tj] {
                        None => {
                            flip[tj] = Some(want);
                            stack.push(tj);
                        }
                        Some(g) if g != want => return Err(SurfaceError::NotClosed),
                        _ => {}
                    }
                }
            }
        }
        for (ti, q) in t.tiles.iter_mut().enumerate() {
            if flip[ti] == Some(true) {
                *q = [q[0], q[3], q[2], q[1]];
            }
        }
        if !t.validate().closed_oriented {
            return Err(SurfaceError::NotClosed);
        }
        Ok(t)
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|v| v == id)
            .ok_or_else(|| SurfaceError::UnknownVertex(id.to_string()))
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn dart_from_to(&self, d: Dart) -> (usize, usize) {
        let (t, s) = d;
        (self.tiles[t][s], self.tiles[t][(s + 1) % 4])
    }

    /// Resolves the dart pairing: explicit gluing if present, otherwise the
    /// implicit reversed-dart matching. Errors if not a fixed-point-free
    /// involution on all 4F darts.
    pub fn pairing(&self) -> Result<HashMap<Dart, Dart>> {
        if let Some(g) = &self.gluing {
            let mut full = g.clone();
            for (&a, &b) in g {
                full.insert(b, a);
            }
            for t in 0..self.tiles.len() {
                for s in 0..4 {
                    let d = (t, s);
                    let Some(&e) = full.get(&d) else {
                        return Err(SurfaceError::BadGluing(format!("dart {d:?} unmatched")));
                    };
                    if e == d {
                        return Err(SurfaceError::BadGluing(format!("dart {d:?} self-glued")));
                    }
                    let (u, v) = self.dart_from_to(d);
                    let (x, y) = self.dart_from_to(e);
                    if (u, v) != (y, x) {
                        return Err(SurfaceError::BadGluing(format!(
                            "darts {d:?} and {e:?} are not reversed"
                        )));
                    }
                }
            }
            return Ok(full);
        }
        let mut by_ends: HashMap<(usize, usize), Vec<Dart>> = HashMap::new();
        for t in 0..self.tiles.len() {
            for s in 0..4 {
                by_ends.entry(self.dart_from_to((t, s))).or_default().push((t, s));
            }
        }
        let mut out = HashMap::new();
        for (&(u, v), darts) in &by_ends {
            if darts.len() != 1 {
                return Err(SurfaceError::NotClosed);
            }
            let rev = by_ends.get(&(v, u)).ok_or(SurfaceError::NotClosed)?;
            if rev.len() != 1 {
                return Err(SurfaceError::NotClosed);
            }
            out.insert(darts[0], rev[0]);
        }
        Ok(out)
    }

    pub fn validate(&self) -> SurfaceReport {
        let bipartite_ok = self.tiles.iter().all(|t| {
            self.colors[t[0]] == Color::Black
                && self.colors[t[1]] == Color::White
                && self.colors[t[2]] == Color::Black
                && self.colors[t[3]] == Color::White
        });
        let mut ambiguous = 0;
        let mut by_ends: HashMap<(usize, usize), usize> = HashMap::new();
        for t in 0..self.tiles.len() {
            for s in 0..4 {
                *by_ends.entry(self.dart_from_to((t, s))).or_default() += 1;
            }
        }
        if self.gluing.is_none() {
            ambiguous = by_ends.values().filter(|&&c| c > 1).count();
        }
        let closed_oriented = self.pairing().is_ok();
        let self_folded_tiles: Vec<usize> = (0..self.tiles.len())
            .filter(|&t| {
                let q = &self.tiles[t];
                (0..4).any(|i| q[i] == q[(i + 2) % 4])
                    || self
                        .pairing()
                        .map(|p| (0..4).any(|s| p.get(&(t, s)) == Some(&(t, (s + 1) % 4))))
                        .unwrap_or(false)
            })
            .collect();
        // connected components on the vertex graph induced by tile sides
        let n = self.ids.len();
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        for t in &self.tiles {
            for s in 0..4 {
                let (a, b) = (t[s], t[(s + 1) % 4]);
                let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
                if ra != rb {
                    dsu[ra] = rb;
                }
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|v| find(&mut dsu, v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let genus = if closed_oriented {
            let v = n as i64;
            let f = self.tiles.len() as i64;
            let chi = v - 2 * f + f;
            if (2 - chi) % 2 == 0 && chi <= 2 {
                Some(((2 - chi) / 2) as usize)
            } else {
                None
            }
        } else {
            None
        };
        SurfaceReport {
            closed_oriented,
            bipartite_ok,
            connected_components: roots.len(),
            ambiguous_darts: ambiguous,
            self_folded_tiles,
            genus,
        }
    }

    pub fn genus(&self) -> Result<usize> {
        let r = self.validate();
        if !r.closed_oriented {
            return Err(SurfaceError::NotClosed);
        }
        r.genus.ok_or(SurfaceError::NotClosed)
    }

    /// Corners (tile, position) at each vertex.
    pub fn corners(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.ids.len()];
        for (t, q) in self.tiles.iter().enumerate() {
            for (p, &v) in q.iter().enumerate() {
                out[v].push((t, p));
            }
        }
        out
    }

    /// Corners around `v` in rotation order (requires a closed surface).
    pub fn rotation_at(&self, v: usize) -> Result<Vec<(usize, usize)>> {
        let pairing = self.pairing()?;
        let corners = self.corners();
        let all = &corners[v];
        if all.is_empty() {
            return Ok(Vec::new());
        }
        let mut order = vec![all[0]];
        loop {
            let (t, p) = *order.last().unwrap();
            // incoming dart w -> v is side (p+3)%4 of t; its pair leaves v.
            let &(t2, s2) = pairing
                .get(&(t, (p + 3) % 4))
                .ok_or(SurfaceError::NotClosed)?;
            let next = (t2, s2);
            debug_assert_eq!(self.tiles[t2][s2], v);
            if next == order[0] {
                break;
            }
            order.push(next);
            if order.len() > all.len() {
                return Err(SurfaceError::NotClosed);
            }
        }
        if order.len() != all.len() {
            // vertex link is disconnected; not a surface vertex
            return Err(SurfaceError::NotClosed);
        }
        Ok(order)
    }

    /// Swaps the two color classes (Poincare-dual relabeling of tiles).
    pub fn dual_color_swap(&self) -> Tiling {
        let colors = self.colors.iter().map(|c| c.flip()).collect();
        let tiles = self
            .tiles
            .iter()
            .map(|q| [q[1], q[2], q[3], q[0]])
            .collect();
        Tiling { ids: self.ids.clone(), colors, tiles, gluing: self.gluing.clone() }
    }

    /// Canonical code under relabeling: minimum over BFS traversals rooted at
    /// every (tile, rotation). Deterministic isomorphism oracle for tests.
    pub fn canonical_form(&self) -> String {
        let pairing = match self.pairing() {
            Ok(p) => p,
            Err(_) => return format!("open:{:?}", self.tiles),
        };
        let mut best: Option<String> = None;
        for root in 0..self.tiles.len() {
            for rot in 0..4 {
                if self.colors[self.tiles[root][rot]] != Color::Black {
                    continue;
                }
                let code = self.bfs_code(root, rot, &pairing);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn bfs_code(&self, root: usize, rot: usize, pairing: &HashMap<Dart, Dart>) -> String {
        let mut vmap: HashMap<usize, usize> = HashMap::new();
        let mut tile_seen: HashMap<usize, usize> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        let mut code = String::new();
        queue.push_back((root, rot));
        tile_seen.insert(root, 0);
        let mut next_v = 0;
        while let Some((t, r)) = queue.pop_front() {
            for k in 0..4 {
                let v = self.tiles[t][(r + k) % 4];
                let n = *vmap.entry(v).or_insert_with(|| {
                    next_v += 1;
                    next_v - 1
                });
                code.push_str(&format!("{n},"));
            }
            code.push(';');
            for k in 0..4 {
                let side = (r + k) % 4;
                let &(t2, s2) = &pairing[&(t, side)];
                if !tile_seen.contains_key(&t2) {
                    tile_seen.insert(t2, tile_seen.len());
                    // enter t2 so that the matched dart comes first
                    queue.push_back((t2, s2));
                }
            }
        }
        code
    }

    pub fn isomorphic(&self, other: &Tiling) -> bool {
        self.tile_count() == other.tile_count() && self.canonical_form() == other.canonical_form()
    }
}

// -- embedded graphs ----------------------------------------------------------

/// Graph embedded in the surface: vertices are the white tiling vertices, one
/// edge per tile, faces (cyclic directed edge runs) are the black vertices.
#[derive(Debug, Clone)]
pub struct EmbeddedGraph {
    pub vertices: Vec<String>,
    /// One per tile: (white endpoint a, white endpoint b).
    pub edges: Vec<(usize, usize)>,
    /// Faces as cyclic sequences of (edge index, forward?); forward means the
    /// face traverses the edge from .0 to .1.
    pub faces: Vec<Vec<(usize, bool)>>,
    pub genus: usize,
}

impl EmbeddedGraph {
    pub fn check(&self) -> Result<()> {
        let mut deg = vec![0usize; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        if deg.iter().any(|&d| d < 2) {
            return Err(SurfaceError::DegreeOneVertex);
        }
        if self.faces.iter().any(|f| f.len() < 2) {
            return Err(SurfaceError::MonogonFace);
        }
        let v = self.vertices.len() as i64;
        let e = self.edges.len() as i64;
        let f = self.faces.len() as i64;
        if v - e + f != 2 - 2 * self.genus as i64 {
            return Err(SurfaceError::NotClosed);
        }
        Ok(())
    }
}

pub fn to_embedded_graph(t: &Tiling) -> Result<EmbeddedGraph> {
    let report = t.validate();
    if !report.eligible() {
        return Err(SurfaceError::NotEligible);
    }
    let whites: Vec<usize> = (0..t.ids.len())
        .filter(|&v| t.colors[v] == Color::White)
        .collect();
    let windex: HashMap<usize, usize> = whites.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // tile (b0,w0,b1,w1): edge w0 -> w1 belongs to b0's face traversal,
    // w1 -> w0 to b1's.
    let edges: Vec<(usize, usize)> = t
        .tiles
        .iter()
        .map(|q| (windex[&q[1]], windex[&q[3]]))
        .collect();
    let mut faces = Vec::new();
    for v in 0..t.ids.len() {
        if t.colors[v] != Color::Black {
            continue;
        }
        let rot = t.rotation_at(v)?;
        let face: Vec<(usize, bool)> = rot
            .iter()
            .map(|&(tile, pos)| (tile, pos == 0))
            .collect();
        faces.push(face);
    }
    Ok(EmbeddedGraph {
        vertices: whites.iter().map(|&v| t.ids[v].clone()).collect(),
        edges,
        faces,
        genus: report.genus.unwrap_or(0),
    })
}

pub fn from_embedded_graph(g: &EmbeddedGraph) -> Result<Tiling> {
    g.check()?;
    let mut ids: Vec<String> = g.vertices.clone();
    let mut colors = vec![Color::White; ids.len()];
    let mut black_of_face = Vec::new();
    for f in 0..g.faces.len() {
        black_of_face.push(ids.len());
        ids.push(format!("f{f}"));
        colors.push(Color::Black);
    }
    // For each edge find its forward face (traverses a->b) and backward face.
    let mut fwd = vec![None; g.edges.len()];
    let mut bwd = vec![None; g.edges.len()];
    for (f, face) in g.faces.iter().enumerate() {
        for &(e, forward) in face {
            let slot = if forward { &mut fwd[e] } else { &mut bwd[e] };
            if slot.is_some() {
                return Err(SurfaceError::NotClosed);
            }
            *slot = Some(f);
        }
    }
    let mut tiles = Vec::new();
    for (e, &(a, b)) in g.edges.iter().enumerate() {
        let (Some(f), Some(h)) = (fwd[e], bwd[e]) else {
            return Err(SurfaceError::NotClosed);
        };
        // forward face f runs a->b; tile (b_f, w_a, b_h, w_b) reproduces the
        // orientation convention of to_embedded_graph.
        tiles.push([black_of_face[f], a, black_of_face[h], b]);
    }
    Ok(Tiling { ids, colors, tiles, gluing: None })
}

// -- nodal curves ---------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct NodalCurveDecomposition {
    /// Number of strand segments per component (2 per tile in total).
    pub components: Vec<usize>,
    pub node_count: usize,
}

pub fn nodal_curve(t: &Tiling) -> Result<NodalCurveDecomposition> {
    let pairing = t.pairing()?;
    // union-find over tile sides (edge midpomillion slots)
    let n = t.tiles.len() * 4;
    let key = |d: Dart| d.0 * 4 + d.1;
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
        if dsu[x] != x {
            let r = find(dsu, dsu[x]);
            dsu[x] = r;
        }
        dsu[x]
    }
    let union = |dsu: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(dsu, a), find(dsu, b));
        if ra != rb {
            dsu[ra] = rb;
        }
    };
    for tile in 0..t.tiles.len() {
        for s in 0..2 {
            union(&mut dsu, key((tile, s)), key((tile, s + 2)));
        }
        for s in 0..4 {
            union(&mut dsu, key((tile, s)), key(pairing[&(tile, s)]));
        }
    }
    let mut segments: BTreeMap<usize, usize> = BTreeMap::new();
    for tile in 0..t.tiles.len() {
        for s in 0..2 {
            let root = find(&mut dsu, key((tile, s)));
            *segments.entry(root).or_default() += 1;
        }
    }
    Ok(NodalCurveDecomposition {
        components: segments.values().copied().collect(),
        node_count: t.tiles.len(),
    })
}

// -- triangulations -------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct Triangulation {
    pub vertices: Vec<String>,
    /// Oriented triangles (consistently oriented: every directed edge once).
    pub triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    pub fn from_names(vertices: &[&str], triangles: &[[&str; 3]]) -> Result<Triangulation> {
        let idx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let tris = triangles
            .iter()
            .map(|t| {
                let mut out = [0usize; 3];
                for (o, v) in out.iter_mut().zip(t.iter()) {
                    *o = *idx
                        .get(v)
                        .ok_or_else(|| SurfaceError::UnknownVertex(v.to_string()))?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Triangulation {
            vertices: vertices.iter().map(|v| v.to_string()).collect(),
            triangles: tris,
        })
    }

    /// Directed edge (u,v) -> triangle containing it; errors if not closed.
    pub fn dart_map(&self) -> Result<HashMap<(usize, usize), usize>> {
        let mut map = HashMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if map.insert((t[k], t[(k + 1) % 3]), i).is_some() {
                    return Err(SurfaceError::NotClosed);
                }
            }
        }
        for &(u, v) in map.clone().keys() {
            if !map.contains_key(&(v, u)) {
                return Err(SurfaceError::NotClosed);
            }
        }
        Ok(map)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Tiling with black = triangulation vertices, white = triangles, one tile per
/// edge (proof of the triangulated-surface corollary).
pub fn triangulation_to_tiling(tri: &Triangulation) -> Result<Tiling> {
    let darts = tri.dart_map()?;
    let mut ids: Vec<String> = tri.vertices.clone();
    let mut colors = vec![Color::Black; ids.len()];
    let tri_white: Vec<usize> = (0..tri.triangles.len())
        .map(|i| {
            ids.push(format!("t{i}"));
            colors.push(Color::White);
            ids.len() - 1
        })
        .collect();
    let mut tiles = Vec::new();
    for (u, v) in tri.edges() {
        let s = darts[&(u, v)];
        let t = darts[&(v, u)];
        tiles.push([u, tri_white[s], v, tri_white[t]]);
    }
    Ok(Tiling { ids, colors, tiles, gluing: None })
}

// -- local moves ----------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum MoveSpec {
    /// Remove a degree-2 vertex, fusing its two tiles.
    FuseAtBivalent { vertex: String },
    /// Remove a self-folded tile (two adjacent sides glued to each other).
    RemoveSelfFolded { tile: usize },
    /// Retile the three tiles around a degree-3 interior vertex.
    DesarguesMove { vertex: String, new_vertex: String },
    /// Split `vertex` along the path left-vertex-right; the rotation arc
    /// containing `arc_tile` is renamed to `new_vertex` and a new tile
    /// (vertex, left, new_vertex, right) is inserted.
    InsertTile {
        vertex: String,
        left: String,
        right: String,
        new_vertex: String,
        arc_tile: usize,
    },
    /// Remove tile `tile` (shaped x-l-x'-m) and merge x' into x.
    CollapseTile { tile: usize },
    /// Remove the four tiles around a 4-valent vertex, merging its two
    /// opposite like-colored neighbors (Remark on collapsing).
    CollapseFourValent { vertex: String },
}

/// Internal explicit-dart representation used by the move implementations.
struct Mesh {
    ids: Vec<String>,
    colors: Vec<Color>,
    tiles: Vec<[usize; 4]>,
    pairing: HashMap<Dart, Dart>,
}

impl Mesh {
    fn from_tiling(t: &Tiling) -> Result<Mesh> {
        Ok(Mesh {
            ids: t.ids.clone(),
            colors: t.colors.clone(),
            tiles: t.tiles.clone(),
            pairing: t.pairing()?,
        })
    }

    fn into_tiling(self) -> Tiling {
        // keep only vertices that still occur; compact indices
        let mut used: Vec<bool> = vec![false; self.ids.len()];
        for q in &self.tiles {
            for &v in q {
                used[v] = true;
            }
        }
        let mut remap = vec![usize::MAX; self.ids.len()];
        let mut ids = Vec::new();
        let mut colors = Vec::new();
        for v in 0..self.ids.len() {
            if used[v] {
                remap[v] = ids.len();
                ids.push(self.ids[v].clone());
                colors.push(self.colors[v]);
            }
        }
        let tiles: Vec<[usize; 4]> = self
            .tiles
            .iter()
            .map(|q| [remap[q[0]], remap[q[1]], remap[q[2]], remap[q[3]]])
            .collect();
        let gluing = self.pairing.into_iter().collect();
        Tiling { ids, colors, tiles, gluing: Some(gluing) }
    }

    /// Removes tiles and renumbers darts in the pairing accordingly.
    fn remove_tiles(&mut self, remove: &[usize]) {
        let mut keep: Vec<usize> = (0..self.tiles.len()).filter(|t| !remove.contains(t)).collect();
        keep.sort_unstable();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        self.tiles = keep.iter().map(|&t| self.tiles[t]).collect();
        self.pairing = self
            .pairing
            .iter()
            .filter(|((t, _), (u, _))| remap.contains_key(t) && remap.contains_key(u))
            .map(|(&(t, s), &(u, r))| ((remap[&t], s), (remap[&u], r)))
            .collect();
    }

    fn glue(&mut self, a: Dart, b: Dart) {
        self.pairing.insert(a, b);
        self.pairing.insert(b, a);
    }
}

pub fn apply_move(t: &Tiling, mv: &MoveSpec) -> Result<Tiling> {
    match mv {
        MoveSpec::FuseAtBivalent { vertex } => fuse_at_bivalent(t, vertex),
        MoveSpec::RemoveSelfFolded { tile } => remove_self_folded(t, *tile),
        MoveSpec::DesarguesMove { vertex, new_vertex } => desargues_move(t, vertex, new_vertex),
        MoveSpec::InsertTile { vertex, left, right, new_vertex, arc_tile } => {
            insert_tile(t, vertex, left, right, new_vertex, *arc_tile)
        }
        MoveSpec::CollapseTile { tile } => collapse_tile(t, *tile),
        MoveSpec::CollapseFourValent { vertex } => collapse_four_valent(t, vertex),
    }
}

fn fuse_at_bivalent(t: &Tiling, vertex: &str) -> Result<Tiling> {
    let v = t.vertex(vertex)?;
    let mut mesh = Mesh::from_tiling(t)?;
    let rot = t.rotation_at(v)?;
    if rot.len() != 2 {
        return Err(SurfaceError::PatternNotFound(format!(
            "{vertex} has degree {}",
            rot.len()
        )));
    }
    let (t1, p1) = rot[0];
    let (t2, p2) = rot[1];
    if t1 == t2 {
        return Err(SurfaceError::PatternNotFound(
            "bivalent vertex inside a single tile".into(),
        ));
    }
    // t1 cycle from v: v,b,c,a ; t2 cycle from v: v,a,d,b
    let q1: Vec<usize> = (0..4).map(|k| t.tiles[t1][(p1 + k) % 4]).collect();
    let q2: Vec<usize> = (0..4).map(|k| t.tiles[t2][(p2 + k) % 4]).collect();
    let (b, c, a) = (q1[1], q1[2], q1[3]);
    let (a2, d, b2) = (q2[1], q2[2], q2[3]);
    if a != a2 || b != b2 {
        return Err(SurfaceError::PatternNotFound(
            "tiles around the bivalent vertex do not share its edges".into(),
        ));
    }
    // fused tile cycle: b -> c -> a -> d, black first
    let fused_cycle = [b, c, a, d];
    let start = (0..4)
        .find(|&k| mesh.colors[fused_cycle[k]] == Color::Black)
        .ok_or(SurfaceError::WouldBreakBipartite)?;
    let fused: [usize; 4] = std::array::from_fn(|k| fused_cycle[(start + k) % 4]);
    let new_tile = mesh.tiles.len();
    mesh.tiles.push(fused);
    // external darts: t1 sides from b->c (p1+1) and c->a (p1+2);
    // t2 sides a->d (p2+1) and d->b (p2+2). New sides follow fused_cycle with
    // offset `start`: fused side k runs fused_cycle[(start+k)] -> next.
    let ext = [
        (t1, (p1 + 1) % 4), // b->c
        (t1, (p1 + 2) % 4), // c->a
        (t2, (p2 + 1) % 4), // a->d
        (t2, (p2 + 2) % 4), // d->b
    ];
    for (k, &old) in ext.iter().enumerate() {
        let partner = mesh.pairing[&old];
        let new_side = (4 + k - start) % 4;
        if partner == ext[(k + 1) % 4] || partner == ext[(k + 3) % 4] || ext.contains(&partner) {
            // both sides of the edge live on the fused tile (self-gluing)
            let pk = ext.iter().position(|&e| e == partner).unwrap();
            mesh.glue((new_tile, new_side), (new_tile, (4 + pk - start) % 4));
        } else {
            mesh.glue((new_tile, new_side), partner);
        }
    }
    mesh.remove_tiles(&[t1, t2]);
    Ok(mesh.into_tiling())
}

fn remove_self_folded(t: &Tiling, tile: usize) -> Result<Tiling> {
    let mut mesh = Mesh::from_tiling(t)?;
    if tile >= mesh.tiles.len() {
        return Err(SurfaceError::PatternNotFound("no such tile".into()));
    }
    let fold = (0..4).find(|&s| mesh.pairing[&(tile, s)] == (tile, (s + 1) % 4));
    let Some(s) = fold else {
        return Err(SurfaceError::PatternNotFound("tile is not self-folded".into()));
    };
    let d2 = (tile, (s + 2) % 4);
    let d3 = (tile, (s + 3) % 4);
    let p2 = mesh.pairing[&d2];
    let p3 = mesh.pairing[&d3];
    if p2.0 == tile || p3.0 == tile {
        return Err(SurfaceError::PatternNotFound(
            "self-folded tile glued to itself on both sides".into(),
        ));
    }
    mesh.glue(p2, p3);
    mesh.remove_tiles(&[tile]);
    Ok(mesh.into_tiling())
}

fn desargues_move(t: &Tiling, vertex: &str, new_vertex: &str) -> Result<Tiling> {
    let v = t.vertex(vertex)?;
    let mut mesh = Mesh::from_tiling(t)?;
    let rot = t.rotation_at(v)?;
    if rot.len() != 3 {
        return Err(SurfaceError::PatternNotFound(format!(
            "{vertex} has degree {}",
            rot.len()
        )));
    }
    let mut a = [0usize; 3];
    let mut b = [0usize; 3];
    let mut old_tiles = [0usize; 3];
    let mut ext: [[Dart; 2]; 3] = [[(0, 0); 2]; 3];
    for (k, &(tk, pk)) in rot.iter().enumerate() {
        // tile cycle from v: v, a_k, b_k, c_k with c_k = a_{k+1}
        a[k] = t.tiles[tk][(pk + 1) % 4];
        b[k] = t.tiles[tk][(pk + 2) % 4];
        old_tiles[k] = tk;
        ext[k] = [(tk, (pk + 1) % 4), (tk, (pk + 2) % 4)]; // a_k->b_k, b_k->c_k
    }
    for k in 0..3 {
        let ck = t.tiles[old_tiles[k]][(rot[k].1 + 3) % 4];
        if ck != a[(k + 1) % 3] {
            return Err(SurfaceError::PatternNotFound(
                "hexagon boundary does not close".into(),
            ));
        }
    }
    let vprime = mesh.ids.len();
    mesh.ids.push(new_vertex.to_string());
    mesh.colors.push(mesh.colors[v].flip());
    // new tiles: (b_k, a_{k+1}, b_{k+1}, v'), rotated so position 0 is black
    let base = mesh.tiles.len();
    let black_first = mesh.colors[b[0]] == Color::Black;
    for k in 0..3 {
        let cyc = [b[k], a[(k + 1) % 3], b[(k + 1) % 3], vprime];
        let q: [usize; 4] = if black_first {
            cyc
        } else {
            [cyc[3], cyc[0], cyc[1], cyc[2]]
        };
        mesh.tiles.push(q);
    }
    let off = if black_first { 0 } else { 1 };
    // sides of new tile k (cycle positions): 0: b_k->a_{k+1}, 1: a_{k+1}->b_{k+1},
    // 2: b_{k+1}->v', 3: v'->b_k. With rotation offset they shift by `off`.
    for k in 0..3 {
        let nk = base + k;
        let s = |pos: usize| (nk, (pos + off) % 4);
        // external: old b_k->c_k (= b_k->a_{k+1}) was ext[k][1]
        let p1 = mesh.pairing[&ext[k][1]];
        if !ext.iter().flatten().any(|&e| e == p1) {
            mesh.glue(s(0), p1);
        }
        // external: old a_{k+1}->b_{k+1} was ext[k+1][0]
        let p2 = mesh.pairing[&ext[(k + 1) % 3][0]];
        if !ext.iter().flatten().any(|&e| e == p2) {
            mesh.glue(s(1), p2);
        }
        // internal: b_{k+1}->v' of tile k pairs with v'->b_{k+1} of tile k+1
        let nk1 = base + (k + 1) % 3;
        mesh.glue(s(2), (nk1, (3 + off) % 4));
    }
    // adjacent old tiles sharing a hexagon side would make the patch immersed
    for k in 0..3 {
        for j in 0..2 {
            let p = mesh.pairing[&ext[k][j]];
            if ext.iter().flatten().any(|&e| e == p) {
                return Err(SurfaceError::PatternNotFound(
                    "hexagon sides glued to each other".into(),
                ));
            }
        }
    }
    mesh.remove_tiles(&old_tiles);
    Ok(mesh.into_tiling())
}

fn insert_tile(
    t: &Tiling,
    vertex: &str,
    left: &str,
    right: &str,
    new_vertex: &str,
    arc_tile: usize,
) -> Result<Tiling> {
    let v = t.vertex(vertex)?;
    let l = t.vertex(left)?;
    let r = t.vertex(right)?;
    let mut mesh = Mesh::from_tiling(t)?;
    let rot = t.rotation_at(v)?;
    let deg = rot.len();
    // shared neighbor between successive corners at v
    let nbr_in = |(tk, pk): (usize, usize)| t.tiles[tk][(pk + 3) % 4];
    // successive corners share an edge: edge between rot[i] and rot[i+1] is
    // nbr_in(rot[i]) == nbr_out(rot[i+1])? In rotation_at, the incoming dart of
    // rot[i] pairs into rot[i+1], so the shared neighbor is nbr_in(rot[i]).
    let cut_pos = |target: usize| -> Vec<usize> {
        (0..deg)
            .filter(|&i| nbr_in(rot[i]) == target)
            .collect()
    };
    let cuts_l = cut_pos(l);
    let cuts_r = cut_pos(r);
    if cuts_l.len() != 1 || cuts_r.len() != 1 || cuts_l[0] == cuts_r[0] {
        return Err(SurfaceError::PatternNotFound(
            "path endpoints are not single edges at the vertex".into(),
        ));
    }
    let (cl, cr) = (cuts_l[0], cuts_r[0]);
    // arc after cutting the edge after corner cl and the edge after corner cr
    let arc_a: Vec<(usize, usize)> = {
        let mut out = Vec::new();
        let mut i = (cl + 1) % deg;
        loop {
            out.push(rot[i]);
            if i == cr {
                break;
            }
            i = (i + 1) % deg;
        }
        out
    };
    let arc_b: Vec<(usize, usize)> = rot.iter().copied().filter(|c| !arc_a.contains(c)).collect();
    let renamed: Vec<(usize, usize)> = if arc_a.iter().any(|&(tk, _)| tk == arc_tile) {
        arc_a.clone()
    } else if arc_b.iter().any(|&(tk, _)| tk == arc_tile) {
        arc_b.clone()
    } else {
        return Err(SurfaceError::PatternNotFound("arc_tile not at vertex".into()));
    };
    let vp = mesh.ids.len();
    mesh.ids.push(new_vertex.to_string());
    mesh.colors.push(mesh.colors[v]);
    for &(tk, pk) in &renamed {
        mesh.tiles[tk][pk] = vp;
    }
    // dangling darts: for edge (v,l): the two original darts were
    // (x tile side v->l) and (l->v); after renaming one side mentions vp.
    let fix_edge = |mesh: &mut Mesh, w: usize| -> Result<(Dart, Dart)> {
        // find the darts v->w / vp->w and w->v / w->vp among tile sides
        let mut with_v = None;
        let mut with_vp = None;
        for (tk, q) in mesh.tiles.iter().enumerate() {
            for s in 0..4 {
                let (x, y) = (q[s], q[(s + 1) % 4]);
                if (x == v && y == w) || (x == w && y == v) {
                    with_v = Some((tk, s));
                }
                if (x == vp && y == w) || (x == w && y == vp) {
                    with_vp = Some((tk, s));
                }
            }
        }
        match (with_v, with_vp) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(SurfaceError::PatternNotFound("edge split failed".into())),
        }
    };
    let (dl_v, dl_vp) = fix_edge(&mut mesh, l)?;
    let (dr_v, dr_vp) = fix_edge(&mut mesh, r)?;
    // new tile cycle must provide reverses for all four dangling darts:
    // if dart at dl_v is v->l we need l->v, etc. Build cycle (v,l,vp,r) or
    // (v,r,vp,l) accordingly.
    let from_v_l = mesh.tiles[dl_v.0][dl_v.1] == v; // dart v->l exists outside
    let cyc: [usize; 4] = if from_v_l {
        [v, r, vp, l] // provides l->v, v->r, r->vp, vp->l... computed below
    } else {
        [v, l, vp, r]
    };
    // rotate black-first
    let start = (0..4)
        .find(|&k| mesh.colors[cyc[k]] == Color::Black)
        .ok_or(SurfaceError::WouldBreakBipartite)?;
    let q: [usize; 4] = std::array::from_fn(|k| cyc[(start + k) % 4]);
    let nt = mesh.tiles.len();
    mesh.tiles.push(q);
    // glue each dangling dart with the new tile side that reverses it
    for old in [dl_v, dl_vp, dr_v, dr_vp] {
        let (x, y) = (mesh.tiles[old.0][old.1], mesh.tiles[old.0][(old.1 + 1) % 4]);
        let side = (0..4)
            .find(|&s| mesh.tiles[nt][s] == y && mesh.tiles[nt][(s + 1) % 4] == x)
            .ok_or_else(|| SurfaceError::PatternNotFound("orientation clash".into()))?;
        mesh.glue(old, (nt, side));
    }
    Ok(mesh.into_tiling())
}

fn collapse_tile(t: &Tiling, tile: usize) -> Result<Tiling> {
    let mut mesh = Mesh::from_tiling(t)?;
    if tile >= mesh.tiles.len() {
        return Err(SurfaceError::PatternNotFound("no such tile".into()));
    }
    let q = mesh.tiles[tile];
    // merge q[2] into q[0] (same color by bipartiteness)
    let (keep, merge) = (q[0], q[2]);
    if keep == merge {
        return Err(SurfaceError::PatternNotFound("tile already degenerate".into()));
    }
    let p0 = mesh.pairing[&(tile, 0)]; // reverse of keep->q1
    let p1 = mesh.pairing[&(tile, 1)]; // reverse of q1->merge
    let p2 = mesh.pairing[&(tile, 2)]; // reverse of merge->q3
    let p3 = mesh.pairing[&(tile, 3)]; // reverse of q3->keep
    if [p0, p1, p2, p3].iter().any(|d| d.0 == tile) {
        return Err(SurfaceError::PatternNotFound("tile glued to itself".into()));
    }
    for q2 in mesh.tiles.iter_mut() {
        for slot in q2.iter_mut() {
            if *slot == merge {
                *slot = keep;
            }
        }
    }
    mesh.glue(p0, p1);
    mesh.glue(p2, p3);
    mesh.remove_tiles(&[tile]);
    Ok(mesh.into_tiling())
}

fn collapse_four_valent(t: &Tiling, vertex: &str) -> Result<Tiling> {
    let v = t.vertex(vertex)?;
    let mut mesh = Mesh::from_tiling(t)?;
    let rot = t.rotation_at(v)?;
    if rot.len() != 4 {
        return Err(SurfaceError::PatternNotFound(format!(
            "{vertex} has degree {}",
            rot.len()
        )));
    }
    // around v: neighbors n0..n3; merge n2 into n0 (opposite), drop the 4 tiles,
    // create tiles (far side pattern of the figure).
    let mut a = [0usize; 4]; // a[k]: neighbor entered from corner k
    let mut b = [0usize; 4]; // far vertex of tile k
    let mut ext: [[Dart; 2]; 4] = [[(0, 0); 2]; 4];
    let mut old = [0usize; 4];
    for (k, &(tk, pk)) in rot.iter().enumerate() {
        a[k] = t.tiles[tk][(pk + 1) % 4];
        b[k] = t.tiles[tk][(pk + 2) % 4];
        old[k] = tk;
        ext[k] = [(tk, (pk + 1) % 4), (tk, (pk + 2) % 4)];
    }
    let (p, pprime) = (a[0], a[2]);
    if p == pprime {
        return Err(SurfaceError::PatternNotFound("opposite neighbors equal".into()));
    }
    // new tiles: (b0, a1, b1, p) and (b2, a3, b3, p); merge pprime -> p
    let mk = |mesh: &mut Mesh, cyc: [usize; 4]| -> Result<usize> {
        let start = (0..4)
            .find(|&k| mesh.colors[cyc[k]] == Color::Black)
            .ok_or(SurfaceError::WouldBreakBipartite)?;
        let q: [usize; 4] = std::array::from_fn(|k| cyc[(start + k) % 4]);
        mesh.tiles.push(q);
        Ok(mesh.tiles.len() - 1)
    };
    let n1 = mk(&mut mesh, [b[0], a[1], b[1], p])?;
    let n2 = mk(&mut mesh, [b[2], a[3], b[3], p])?;
    for q in mesh.tiles.iter_mut() {
        for slot in q.iter_mut() {
            if *slot == pprime {
                *slot = p;
            }
        }
    }
    // glue external boundary of the old 4-tile patch onto the two new tiles:
    // hexagon of tile pair (b0,a1,b1,p): sides b0->a1 (old ext[0][1]... the
    // boundary octagon: from tile k: a_k->b_k and b_k->a_{k+1}.
    let find_side = |mesh: &Mesh, nt: usize, x: usize, y: usize| -> Option<usize> {
        (0..4).find(|&s| mesh.tiles[nt][s] == x && mesh.tiles[nt][(s + 1) % 4] == y)
    };
    for k in 0..4 {
        for j in 0..2 {
            let partner = mesh.pairing[&ext[k][j]];
            if ext.iter().flatten().any(|&e| e == partner) {
                continue;
            }
            let (x, y) = {
                let (tt, ss) = ext[k][j];
                (t.tiles[tt][ss], t.tiles[tt][(ss + 1) % 4])
            };
            let (x, y) = (
                if x == pprime { p } else { x },
                if y == pprime { p } else { y },
            );
            // the reverse dart must appear on one of the new tiles
            let side = find_side(&mesh, n1, y, x)
                .map(|s| (n1, s))
                .or_else(|| find_side(&mesh, n2, y, x).map(|s| (n2, s)))
                .ok_or_else(|| {
                    SurfaceError::PatternNotFound("collapse boundary mismatch".into())
                })?;
            mesh.glue(side, partner);
        }
    }
    // interior: p->b0 of n1 pairs with b? the two new tiles share edges p-b0?
    // Any new-tile darts still unglued must pair among the new tiles.
    let mut unglued: Vec<Dart> = Vec::new();
    for &nt in &[n1, n2] {
        for s in 0..4 {
            if !mesh.pairing.contains_key(&(nt, s)) {
                unglued.push((nt, s));
            }
        }
    }
    while let Some(d) = unglued.pop() {
        let (x, y) = (mesh.tiles[d.0][d.1], mesh.tiles[d.0][(d.1 + 1) % 4]);
        let pos = unglued
            .iter()
            .position(|&e| {
                mesh.tiles[e.0][e.1] == y && mesh.tiles[e.0][(e.1 + 1) % 4] == x
            })
            .ok_or_else(|| SurfaceError::PatternNotFound("collapse interior mismatch".into()))?;
        let e = unglued.remove(pos);
        mesh.glue(d, e);
    }
    mesh.remove_tiles(&old);
    Ok(mesh.into_tiling())
}

/// Small closed tilings used across the crate's tests.
#[cfg(test)]
pub mod tests_support {
    use super::*;

    pub fn cube() -> Tiling {
        Tiling::from_names(
            &["A1", "A2", "B", "C"],
            &["a1", "a2", "b", "c"],
            &[
                ["A1", "c", "A2", "b"],
                ["C", "a2", "B", "a1"],
                ["A1", "a1", "B", "c"],
                ["A2", "a2", "C", "b"],
                ["A1", "b", "C", "a1"],
                ["B", "a2", "A2", "c"],
            ],
        )
        .unwrap()
    }

    pub fn pappus() -> Tiling {
        Tiling::from_names(
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
        .unwrap()
    }

    /// 2x2 torus grid (all four tiles on the same vertex quadruple): implicit
    /// matching is ambiguous, explicit gluing required.
    pub fn torus_2x2() -> Tiling {
        grid_torus()
    }

    fn grid_torus() -> Tiling {
        let mut t = Tiling::from_names(
            &["A", "B"],
            &["l", "m"],
            &[
                ["A", "l", "B", "m"],
                ["A", "m", "B", "l"],
                ["B", "l", "A", "m"],
                ["B", "m", "A", "l"],
            ],
        )
        .unwrap();
        let gluing: Vec<(Dart, Dart)> = vec![
            ((0, 0), (2, 1)),
            ((0, 1), (1, 2)),
            ((0, 2), (2, 3)),
            ((0, 3), (1, 0)),
            ((1, 1), (3, 0)),
            ((1, 3), (3, 2)),
            ((2, 0), (3, 3)),
            ((2, 2), (3, 1)),
        ];
        t.gluing = Some(gluing.into_iter().collect());
        t
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::{cube as cube_tiling, pappus as pappus_tiling, torus_2x2};
    use super::*;

    #[test]
    fn cube_is_sphere() {
        let t = cube_tiling();
        let r = t.validate();
        assert!(r.eligible(), "{r:?}");
        assert_eq!(r.connected_components, 1);
        assert_eq!(t.genus().unwrap(), 0);
    }

    #[test]
    fn pappus_is_torus() {
        let t = pappus_tiling();
        assert!(t.validate().eligible());
        assert_eq!(t.genus().unwrap(), 1);
    }

    #[test]
    fn single_tile_not_closed() {
        let t = Tiling::from_names(&["A", "B"], &["l", "m"], &[["A", "l", "B", "m"]]).unwrap();
        let r = t.validate();
        assert!(!r.closed_oriented);
        assert!(r.bipartite_ok);
    }

    #[test]
    fn odd_grid_not_bipartite() {
        // 3x3 torus grid: quad tiling whose 1-skeleton has odd cycles.
        let names: Vec<String> = (0..9).map(|i| format!("v{i}")).collect();
        let vertices: Vec<(String, Color)> =
            names.iter().map(|n| (n.clone(), Color::Black)).collect();
        let at = |r: usize, c: usize| names[(r % 3) * 3 + (c % 3)].clone();
        let mut tiles = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                tiles.push([at(r, c), at(r, c + 1), at(r + 1, c + 1), at(r + 1, c)]);
            }
        }
        let t = Tiling::new(vertices, tiles).unwrap();
        assert!(!t.validate().bipartite_ok);
    }

    #[test]
    fn explicit_gluing_torus() {
        let t = torus_2x2();
        let r = t.validate();
        assert!(r.closed_oriented && r.bipartite_ok, "{r:?}");
        assert_eq!(t.genus().unwrap(), 1);
        // implicit matching on the same tiles is ambiguous
        let mut implicit = t.clone();
        implicit.gluing = None;
        let r2 = implicit.validate();
        assert!(!r2.closed_oriented);
        assert!(r2.ambiguous_darts > 0);
    }

    #[test]
    fn from_unoriented_recovers_cube() {
        let t = Tiling::from_unoriented(
            &["A1", "A2", "B", "C"],
            &["a1", "a2", "b", "c"],
            &[
                ["A1", "c", "A2", "b"],
                ["C", "a2", "B", "a1"],
                ["A1", "c", "B", "a1"], // deliberately mis-oriented
                ["A2", "a2", "C", "b"],
                ["A1", "b", "C", "a1"],
                ["B", "a2", "A2", "c"],
            ],
        )
        .unwrap();
        assert!(t.validate().eligible());
        assert!(t.isomorphic(&cube_tiling()));
    }

    #[test]
    fn cube_graph_is_tetrahedron() {
        let g = to_embedded_graph(&cube_tiling()).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.edges.len(), 6);
        assert_eq!(g.faces.len(), 4);
        g.check().unwrap();
        let back = from_embedded_graph(&g).unwrap();
        assert!(back.isomorphic(&cube_tiling()));
    }

    #[test]
    fn graph_round_trip_pappus() {
        let t = pappus_tiling();
        let g = to_embedded_graph(&t).unwrap();
        g.check().unwrap();
        let back = from_embedded_graph(&g).unwrap();
        assert!(back.isomorphic(&t));
    }

    #[test]
    fn dual_swap_keeps_eligibility() {
        for t in [cube_tiling(), pappus_tiling()] {
            let d = t.dual_color_swap();
            assert!(d.validate().eligible());
            assert_eq!(d.genus().unwrap(), t.genus().unwrap());
        }
    }

    #[test]
    fn nodal_curve_counts() {
        let c = nodal_curve(&cube_tiling()).unwrap();
        assert_eq!(c.components.len(), 3);
        assert_eq!(c.components.iter().sum::<usize>(), 2 * 6);

        let t2 = torus_2x2();
        let c2 = nodal_curve(&t2).unwrap();
        assert_eq!(c2.components.iter().sum::<usize>(), 2 * 4);
    }

    #[test]
    fn tetrahedron_triangulation_gives_cube() {
        let tri = Triangulation::from_names(
            &["1", "2", "3", "4"],
            &[["1", "2", "3"], ["1", "3", "4"], ["1", "4", "2"], ["2", "4", "3"]],
        )
        .unwrap();
        let t = triangulation_to_tiling(&tri).unwrap();
        assert_eq!(t.tile_count(), 6);
        assert!(t.validate().eligible());
        assert!(t.isomorphic(&cube_tiling()));
    }

    #[test]
    fn open_triangulation_rejected() {
        let tri = Triangulation::from_names(&["1", "2", "3"], &[["1", "2", "3"]]).unwrap();
        assert!(matches!(
            triangulation_to_tiling(&tri),
            Err(SurfaceError::NotClosed)
        ));
    }

    #[test]
    fn insert_then_collapse_is_identity() {
        let t = cube_tiling();
        let arc_tile = 0; // tile (A1,c,A2,b) holds a corner at A1
        let t2 = apply_move(
            &t,
            &MoveSpec::InsertTile {
                vertex: "A1".into(),
                left: "c".into(),
                right: "b".into(),
                new_vertex: "A1x".into(),
                arc_tile,
            },
        )
        .unwrap();
        assert_eq!(t2.tile_count(), 7);
        assert!(t2.validate().eligible(), "{:?}", t2.validate());
        assert_eq!(t2.genus().unwrap(), 0);
        let new_tile = (0..t2.tile_count())
            .find(|&i| {
                let q = t2.tiles[i];
                let names: Vec<&str> = q.iter().map(|&v| t2.ids[v].as_str()).collect();
                names.contains(&"A1x") && names.contains(&"A1")
            })
            .unwrap();
        let t3 = apply_move(&t2, &MoveSpec::CollapseTile { tile: new_tile }).unwrap();
        assert!(t3.isomorphic(&t));
    }

    #[test]
    fn insert_then_fuse_bivalent_is_identity() {
        let t = cube_tiling();
        let t2 = apply_move(
            &t,
            &MoveSpec::InsertTile {
                vertex: "b".into(),
                left: "A1".into(),
                right: "C".into(),
                new_vertex: "bx".into(),
                arc_tile: 4,
            },
        )
        .unwrap();
        assert!(t2.validate().eligible());
        // the inserted vertex is bivalent; fusing it restores the cube
        let t3 = apply_move(&t2, &MoveSpec::FuseAtBivalent { vertex: "bx".into() }).unwrap();
        assert!(t3.isomorphic(&t));
    }

    #[test]
    fn desargues_move_is_involution() {
        let t = cube_tiling();
        // A1 has degree 3
        let t2 = apply_move(
            &t,
            &MoveSpec::DesarguesMove { vertex: "A1".into(), new_vertex: "Q".into() },
        )
        .unwrap();
        assert_eq!(t2.tile_count(), 6);
        assert!(t2.validate().eligible());
        assert_eq!(t2.genus().unwrap(), 0);
        assert!(!t2.isomorphic(&t) || t2.isomorphic(&t)); // well-formed either way
        let t3 = apply_move(
            &t2,
            &MoveSpec::DesarguesMove { vertex: "Q".into(), new_vertex: "A1".into() },
        )
        .unwrap();
        assert!(t3.isomorphic(&t));
    }

    #[test]
    fn genus_preserved_by_moves() {
        let t = pappus_tiling();
        let t2 = apply_move(
            &t,
            &MoveSpec::InsertTile {
                vertex: "c".into(),
                left: "P5".into(),
                right: "P2".into(),
                new_vertex: "cx".into(),
                arc_tile: 0,
            },
        )
        .unwrap();
        assert_eq!(t2.genus().unwrap(), 1);
        assert_eq!(t2.tile_count(), 10);
    }
}
