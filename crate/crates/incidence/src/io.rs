//! File formats: tiling JSON, labeling JSON, Möbius labeling JSON, and DOT
//! export for tilings, embedded graphs, and Levi graphs.

use crate::mobius::MobiusPoint;
use crate::projective::{HomElement, Role};
use crate::scalar::Scalar;
use crate::surface::{Color, EmbeddedGraph, Tiling};
use crate::verifier::{BipartiteIncidenceGraph, Labeling};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Serialize, Deserialize)]
pub struct TilingJson {
    pub vertices: Vec<VertexJson>,
    pub tiles: Vec<[String; 4]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gluing: Option<Vec<GluingJson>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub color: Color,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GluingJson {
    pub tile: usize,
    pub side: usize,
    #[serde(rename = "toTile")]
    pub to_tile: usize,
    #[serde(rename = "toSide")]
    pub to_side: usize,
}

pub fn tiling_to_json(t: &Tiling) -> String {
    let vertices = t
        .ids
        .iter()
        .zip(&t.colors)
        .map(|(id, &color)| VertexJson { id: id.clone(), color })
        .collect();
    let tiles = t
        .tiles
        .iter()
        .map(|q| {
            [
                t.ids[q[0]].clone(),
                t.ids[q[1]].clone(),
                t.ids[q[2]].clone(),
                t.ids[q[3]].clone(),
            ]
        })
        .collect();
    let gluing = t.gluing.as_ref().map(|g| {
        let mut rows: Vec<GluingJson> = g
            .iter()
            .filter(|((t1, s1), (t2, s2))| (t1, s1) < (t2, s2))
            .map(|(&(tile, side), &(to_tile, to_side))| GluingJson { tile, side, to_tile, to_side })
            .collect();
        rows.sort_by_key(|r| (r.tile, r.side));
        rows
    });
    serde_json::to_string_pretty(&TilingJson { vertices, tiles, gluing }).unwrap()
}

pub fn tiling_from_json(s: &str) -> Result<Tiling, String> {
    let j: TilingJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let vertices = j.vertices.into_iter().map(|v| (v.id, v.color)).collect();
    let mut t = Tiling::new(vertices, j.tiles).map_err(|e| e.to_string())?;
    if let Some(g) = j.gluing {
        let mut map = std::collections::HashMap::new();
        for row in g {
            map.insert((row.tile, row.side), (row.to_tile, row.to_side));
            map.insert((row.to_tile, row.to_side), (row.tile, row.side));
        }
        t.gluing = Some(map);
    }
    Ok(t)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LabelingJson {
    pub dim: usize,
    pub field: String,
    pub labels: BTreeMap<String, LabelJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LabelJson {
    pub coords: Vec<String>,
}

/// Roles are taken from the tiling's vertex colors (black = point).
pub fn labeling_from_json(s: &str, t: &Tiling) -> Result<Labeling, String> {
    let j: LabelingJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let mut lab = Labeling::new(j.dim);
    for (id, entry) in &j.labels {
        let coords: Result<Vec<Scalar>, String> =
            entry.coords.iter().map(|c| Scalar::parse(c)).collect();
        let coords = coords?;
        if coords.len() != j.dim + 1 {
            return Err(format!("label {id}: expected {} coordinates", j.dim + 1));
        }
        let v = t.vertex(id).map_err(|e| e.to_string())?;
        let e = match t.colors[v] {
            Color::Black => HomElement { role: Role::Point, coords },
            Color::White => HomElement { role: Role::Hyperplane, coords },
        };
        lab.insert(id, e);
    }
    Ok(lab)
}

pub fn labeling_to_json(lab: &Labeling) -> String {
    let field = if lab
        .labels
        .values()
        .all(|e| e.coords.iter().all(|c| matches!(c, Scalar::Rational(_))))
    {
        "rational"
    } else {
        "gaussian"
    };
    let labels = lab
        .labels
        .iter()
        .map(|(id, e)| {
            (
                id.clone(),
                LabelJson { coords: e.coords.iter().map(|c| c.to_string()).collect() },
            )
        })
        .collect();
    serde_json::to_string_pretty(&LabelingJson {
        dim: lab.dim,
        field: field.to_string(),
        labels,
    })
    .unwrap()
}

/// Möbius labeling: "inf" or a Gaussian-rational scalar per vertex.
pub fn mobius_labels_from_json(s: &str) -> Result<BTreeMap<String, MobiusPoint>, String> {
    let j: BTreeMap<String, String> = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let mut out = BTreeMap::new();
    for (id, v) in j {
        let p = if v == "inf" {
            MobiusPoint::Infinity
        } else {
            MobiusPoint::Finite(Scalar::parse(&v)?)
        };
        out.insert(id, p);
    }
    Ok(out)
}

pub fn mobius_labels_to_json(labels: &BTreeMap<String, MobiusPoint>) -> String {
    let j: BTreeMap<String, String> = labels
        .iter()
        .map(|(id, p)| {
            let s = match p {
                MobiusPoint::Infinity => "inf".to_string(),
                MobiusPoint::Finite(z) => z.to_string(),
            };
            (id.clone(), s)
        })
        .collect();
    serde_json::to_string_pretty(&j).unwrap()
}

// -- DOT export ---------------------------------------------------------------------

/// Vertices shaped by color: points as dots, hyperplanes as boxes.
pub fn tiling_to_dot(t: &Tiling) -> String {
    let mut out = String::from("graph tiling {\n");
    for (id, &color) in t.ids.iter().zip(&t.colors) {
        let shape = match color {
            Color::Black => "point",
            Color::White => "box",
        };
        out.push_str(&format!("  \"{id}\" [shape={shape}];\n"));
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for q in &t.tiles {
        for s in 0..4 {
            let (a, b) = (&t.ids[q[s]], &t.ids[q[(s + 1) % 4]]);
            let e = (a.clone(), b.clone());
            let rev = (b.clone(), a.clone());
            if !edges.contains(&e) && !edges.contains(&rev) {
                edges.push(e);
            }
        }
    }
    edges.sort();
    for (a, b) in edges {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    out.push_str("}\n");
    out
}

pub fn graph_to_dot(g: &EmbeddedGraph) -> String {
    let mut out = String::from("graph embedded {\n");
    for v in &g.vertices {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for &(a, b) in &g.edges {
        out.push_str(&format!("  \"{}\" -- \"{}\";\n", g.vertices[a], g.vertices[b]));
    }
    out.push_str("}\n");
    out
}

pub fn levi_to_dot(g: &BipartiteIncidenceGraph) -> String {
    let mut out = String::from("graph levi {\n");
    for (i, (_, names)) in g.points.iter().enumerate() {
        out.push_str(&format!("  p{i} [shape=point, xlabel=\"{}\"];\n", names.join("=")));
    }
    for (i, (_, names)) in g.lines.iter().enumerate() {
        out.push_str(&format!("  l{i} [shape=box, label=\"{}\"];\n", names.join("=")));
    }
    for &(p, l) in &g.edges {
        out.push_str(&format!("  p{p} -- l{l};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::tests_support::cube;

    #[test]
    fn tiling_json_round_trip() {
        let t = cube();
        let s = tiling_to_json(&t);
        let back = tiling_from_json(&s).unwrap();
        assert!(back.isomorphic(&t));
        assert_eq!(back.ids, t.ids);
    }

    #[test]
    fn labeling_json_round_trip() {
        let t = cube();
        let mut lab = Labeling::new(2);
        for (v, id) in t.ids.iter().enumerate() {
            let coords = vec![
                Scalar::ratio(v as i64 + 1, 3),
                Scalar::from_int(v as i64),
                Scalar::from_int(1),
            ];
            let e = match t.colors[v] {
                Color::Black => HomElement { role: Role::Point, coords },
                Color::White => HomElement { role: Role::Hyperplane, coords },
            };
            lab.insert(id, e);
        }
        let s = labeling_to_json(&lab);
        let back = labeling_from_json(&s, &t).unwrap();
        for id in &t.ids {
            assert_eq!(back.get(id).unwrap(), lab.get(id).unwrap());
        }
    }
}
