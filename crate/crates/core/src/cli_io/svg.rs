//! Straight-line drawings by barycentric (Tutte) layout.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plane_graph::{FaceId, PlaneGraph};

const SIZE: f64 = 500.0;
const RADIUS: f64 = 210.0;
const ATTEMPTS: u64 = 5;
const MIN_SEPARATION: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("LayoutFailure: vertices `{0}` and `{1}` coincide")]
    LayoutFailure(String, String),
}

/// Pins the vertices of `outer` (default: designated outer face, else the
/// longest face) to a regular polygon and places every other vertex at the
/// weighted mean of its neighbours.
pub fn layout(g: &PlaneGraph, outer: Option<FaceId>) -> Result<Vec<(f64, f64)>, LayoutError> {
    let faces = g.faces();
    let outer = outer.or(g.outer_face()).unwrap_or_else(|| {
        faces
            .iter()
            .max_by_key(|f| (f.incident_vertices().len(), std::cmp::Reverse(f.id())))
            .expect("a plane graph has a face")
            .id()
    });
    let face = faces.get(outer).expect("outer face exists");
    let mut ring: Vec<usize> = Vec::new();
    for &(v, _) in face.boundary() {
        if !ring.contains(&v) {
            ring.push(v);
        }
    }

    let n = g.vertex_count();
    let centre = SIZE / 2.0;
    let mut pos = vec![(centre, centre); n];
    let mut pinned = vec![false; n];
    let k = ring.len() as f64;
    for (i, &v) in ring.iter().enumerate() {
        let angle = std::f64::consts::TAU * i as f64 / k - std::f64::consts::FRAC_PI_2;
        pos[v] = (centre + RADIUS * angle.cos(), centre + RADIUS * angle.sin());
        pinned[v] = true;
    }

    let mut last = None;
    for attempt in 0..ATTEMPTS {
        let weights = edge_weights(g, attempt);
        let mut p = pos.clone();
        relax(g, &pinned, &weights, &mut p);
        match coincident(&p) {
            None => return Ok(p),
            Some(pair) => last = Some(pair),
        }
    }
    let (a, b) = last.expect("at least one attempt");
    Err(LayoutError::LayoutFailure(g.name(a).into(), g.name(b).into()))
}

/// Weight of each dart `(v, k)`; all ones first, then seeded perturbations.
fn edge_weights(g: &PlaneGraph, attempt: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(attempt);
    (0..g.vertex_count())
        .map(|v| {
            g.rotation(v)
                .iter()
                .map(|_| if attempt == 0 { 1.0 } else { rng.gen_range(0.5..1.5) })
                .collect()
        })
        .collect()
}

fn relax(g: &PlaneGraph, pinned: &[bool], weights: &[Vec<f64>], pos: &mut [(f64, f64)]) {
    for _ in 0..10_000 {
        let mut moved: f64 = 0.0;
        for v in 0..pos.len() {
            if pinned[v] {
                continue;
            }
            let (mut x, mut y, mut total) = (0.0, 0.0, 0.0);
            for (k, &w) in g.rotation(v).iter().enumerate() {
                let wt = weights[v][k];
                x += wt * pos[w].0;
                y += wt * pos[w].1;
                total += wt;
            }
            let next = (x / total, y / total);
            moved = moved.max((next.0 - pos[v].0).abs() + (next.1 - pos[v].1).abs());
            pos[v] = next;
        }
        if moved < 1e-9 {
            break;
        }
    }
}

fn coincident(pos: &[(f64, f64)]) -> Option<(usize, usize)> {
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if (pos[a].0 - pos[b].0).hypot(pos[a].1 - pos[b].1) < MIN_SEPARATION {
                return Some((a, b));
            }
        }
    }
    None
}

/// A standalone SVG document drawing `g` at `pos`.
pub fn render(g: &PlaneGraph, pos: &[(f64, f64)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1.5">"#);
    for (u, w) in g.edges() {
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            pos[u].0, pos[u].1, pos[w].0, pos[w].1
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="11">"#);
    for (v, &(x, y)) in pos.iter().enumerate() {
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="white" stroke="black"/>"#);
        let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x + 7.0, y - 7.0, escape(g.name(v)));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('\'', "&apos;")
}

/// Lays out and renders `g`.
pub fn emit_svg(g: &PlaneGraph, outer: Option<FaceId>) -> Result<String, LayoutError> {
    Ok(render(g, &layout(g, outer)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, k4};
    use crate::split_engine::split_vertex;

    fn on_ring(p: (f64, f64)) -> bool {
        ((p.0 - SIZE / 2.0).hypot(p.1 - SIZE / 2.0) - RADIUS).abs() < 1e-6
    }

    #[test]
    fn triangle_drawing() {
        let svg = emit_svg(&cycle(3).unwrap(), None).unwrap();
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 3);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn k4_has_one_interior_vertex() {
        let pos = layout(&k4(), None).unwrap();
        assert_eq!(pos.iter().filter(|&&p| !on_ring(p)).count(), 1);
        let centre = pos[3];
        assert!((centre.0 - SIZE / 2.0).abs() < 1e-6 && (centre.1 - SIZE / 2.0).abs() < 1e-6);
    }

    #[test]
    fn split_k4_is_drawn_outerplane() {
        let g = k4();
        let d = g.vertex("3").unwrap();
        let at = g.faces().faces_at(d).to_vec();
        let (h, _) = split_vertex(&g, "3", at[0], at[1]).unwrap();
        let outer = h.is_outerplane().face.unwrap();
        let pos = layout(&h, Some(outer)).unwrap();
        assert_eq!(pos.len(), 5);
        assert!(pos.iter().all(|&p| on_ring(p)));
    }
}
