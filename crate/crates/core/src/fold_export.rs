//! Export to the FOLD interchange format as a planar crease graph.
//!
//! Boundary edges are labelled `"B"`; every segment is split wherever
//! another segment's endpoint or a perpendicular segment meets it.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::gadgets::PolyPattern;
use crate::rational::Rational;
use crate::rect::{Axis, RectCrease, RectPattern};

type Pt = (Rational, Rational);

struct Segment {
    a: Pt,
    b: Pt,
    label: &'static str,
}

fn crease_segment(c: &RectCrease) -> Segment {
    let (a, b) = match c.axis {
        Axis::V => ((c.coord.clone(), c.from.clone()), (c.coord.clone(), c.to.clone())),
        Axis::H => ((c.from.clone(), c.coord.clone()), (c.to.clone(), c.coord.clone())),
    };
    Segment { a, b, label: c.mv.letter() }
}

fn on_segment(s: &Segment, p: &Pt) -> bool {
    let within = |u: &Rational, v: &Rational, w: &Rational| u.clone().min(v.clone()) <= *w && *w <= u.clone().max(v.clone());
    if s.a.0 == s.b.0 {
        p.0 == s.a.0 && within(&s.a.1, &s.b.1, &p.1)
    } else {
        p.1 == s.a.1 && within(&s.a.0, &s.b.0, &p.0)
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn export(boundary: &[Pt], creases: &[RectCrease]) -> Value {
    let n = boundary.len();
    let mut segments: Vec<Segment> = (0..n)
        .map(|i| Segment { a: boundary[i].clone(), b: boundary[(i + 1) % n].clone(), label: "B" })
        .collect();
    segments.extend(creases.iter().map(crease_segment));
    let mut points: BTreeSet<Pt> = BTreeSet::new();
    for s in &segments {
        points.insert(s.a.clone());
        points.insert(s.b.clone());
    }
    for (i, s) in segments.iter().enumerate() {
        for t in &segments[i + 1..] {
            let s_vertical = s.a.0 == s.b.0;
            let t_vertical = t.a.0 == t.b.0;
            if s_vertical != t_vertical {
                let p = if s_vertical { (s.a.0.clone(), t.a.1.clone()) } else { (t.a.0.clone(), s.a.1.clone()) };
                if on_segment(s, &p) && on_segment(t, &p) {
                    points.insert(p);
                }
            }
        }
    }
    let index: BTreeMap<Pt, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges: BTreeMap<(usize, usize), &'static str> = BTreeMap::new();
    for s in &segments {
        let mut on: Vec<&Pt> = points.iter().filter(|p| on_segment(s, p)).collect();
        on.sort();
        for w in on.windows(2) {
            let (u, v) = (index[w[0]], index[w[1]]);
            edges.insert((u.min(v), u.max(v)), s.label);
        }
    }
    json!({
        "file_spec": 1.1,
        "file_creator": "simplefold",
        "frame_classes": ["creasePattern"],
        "vertices_coords": points.iter().map(|(x, y)| [to_f64(x), to_f64(y)]).collect::<Vec<_>>(),
        "edges_vertices": edges.keys().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        "edges_assignment": edges.values().collect::<Vec<_>>(),
    })
}

pub fn poly_to_fold(p: &PolyPattern) -> Value {
    export(&p.vertices, &p.creases)
}

pub fn rect_to_fold(p: &RectPattern) -> Value {
    let (w, h) = (p.width().clone(), p.height().clone());
    let z = Rational::zero();
    let boundary = [(z.clone(), z.clone()), (w.clone(), z.clone()), (w, h.clone()), (z, h)];
    export(&boundary, p.creases())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Assignment;

    #[test]
    fn splits_at_crossings() {
        let seg = |axis, coord: i64, from: i64, to: i64| RectCrease {
            axis,
            coord: coord.into(),
            from: from.into(),
            to: to.into(),
            mv: Assignment::Valley,
        };
        let p = RectPattern::new(2.into(), 2.into(), vec![seg(Axis::V, 1, 0, 2), seg(Axis::H, 1, 0, 2)]).unwrap();
        let v = rect_to_fold(&p);
        assert_eq!(v["vertices_coords"].as_array().unwrap().len(), 9);
        let labels = v["edges_assignment"].as_array().unwrap();
        assert_eq!(labels.iter().filter(|l| *l == "B").count(), 8);
        assert_eq!(labels.iter().filter(|l| *l == "V").count(), 4);
    }
}
