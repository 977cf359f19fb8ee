//! Zero-contour extraction on 2-D fields (marching squares) and a few
//! geometric measures on the resulting segments.

use crate::error::{Error, Result};
use crate::grid::ScalarField;

pub type Point = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn length(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    pub fn midpoint(&self) -> Point {
        [0.5 * (self.a[0] + self.b[0]), 0.5 * (self.a[1] + self.b[1])]
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        let d = [self.b[0] - self.a[0], self.b[1] - self.a[1]];
        let len2 = d[0] * d[0] + d[1] * d[1];
        let t = if len2 == 0.0 {
            0.0
        } else {
            (((p[0] - self.a[0]) * d[0] + (p[1] - self.a[1]) * d[1]) / len2).clamp(0.0, 1.0)
        };
        (self.a[0] + t * d[0] - p[0]).hypot(self.a[1] + t * d[1] - p[1])
    }
}

// corner order: (i, j), (i+1, j), (i+1, j+1), (i, j+1)
// edge k joins corner k and corner k+1 (mod 4)
const CORNER_EDGES: [[usize; 2]; 4] = [[3, 0], [0, 1], [1, 2], [2, 3]];

/// Segments of the `v = 0` contour, endpoints in physical coordinates.
/// Nodes with `v < 0` count as inside; saddle cells are resolved by the
/// sign of the cell average.
pub fn extract_zero_set_2d(field: &ScalarField) -> Result<Vec<Segment>> {
    let grid = field.grid();
    if grid.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "zero-set extraction needs a 2-D field, got {}-D",
            grid.dim()
        )));
    }
    let (xs, ys) = (grid.axis(0), grid.axis(1));
    let (nx, ny) = (grid.counts()[0], grid.counts()[1]);
    let v = field.data();
    let mut segments = Vec::new();

    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let idx = [[i, j], [i + 1, j], [i + 1, j + 1], [i, j + 1]];
            let vals = idx.map(|[a, b]| v[[a, b].as_slice()]);
            let pos = idx.map(|[a, b]| [xs[a], ys[b]]);
            cell_segments(vals, pos, &mut segments);
        }
    }
    Ok(segments)
}

fn cell_segments(vals: [f64; 4], pos: [Point; 4], out: &mut Vec<Segment>) {
    let inside = vals.map(|x| x < 0.0);
    let n_inside = inside.iter().filter(|&&b| b).count();
    if n_inside == 0 || n_inside == 4 {
        return;
    }
    let crossing = |e: usize| -> Point {
        let (p, q) = (e, (e + 1) % 4);
        let t = vals[p] / (vals[p] - vals[q]);
        [
            pos[p][0] + t * (pos[q][0] - pos[p][0]),
            pos[p][1] + t * (pos[q][1] - pos[p][1]),
        ]
    };
    let crossed: Vec<usize> = (0..4)
        .filter(|&e| inside[e] != inside[(e + 1) % 4])
        .collect();
    if crossed.len() == 2 {
        out.push(Segment {
            a: crossing(crossed[0]),
            b: crossing(crossed[1]),
        });
    } else {
        // saddle: isolate the corners whose side the centre is not on
        let centre_inside = vals.iter().sum::<f64>() < 0.0;
        for c in (0..4).filter(|&c| inside[c] != centre_inside) {
            let [e0, e1] = CORNER_EDGES[c];
            out.push(Segment {
                a: crossing(e0),
                b: crossing(e1),
            });
        }
    }
}

pub fn total_length(segments: &[Segment]) -> f64 {
    segments.iter().map(Segment::length).sum()
}

fn distance_to_set(p: Point, set: &[Segment]) -> f64 {
    set.iter()
        .map(|s| s.distance_to(p))
        .fold(f64::INFINITY, f64::min)
}

fn directed(from: &[Segment], to: &[Segment]) -> f64 {
    from.iter()
        .flat_map(|s| [s.a, s.midpoint(), s.b])
        .map(|p| distance_to_set(p, to))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two segment sets, sampled at
/// segment endpoints and midpoints. Infinite if exactly one set is empty.
pub fn hausdorff_distance(a: &[Segment], b: &[Segment]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => 0.0,
        (true, false) | (false, true) => f64::INFINITY,
        _ => directed(a, b).max(directed(b, a)),
    }
}

/// Closed polygon with `n` vertices approximating a circle.
pub fn circle_segments(center: Point, radius: f64, n: usize) -> Vec<Segment> {
    let point = |k: usize| {
        let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        [center[0] + radius * th.cos(), center[1] + radius * th.sin()]
    };
    (0..n)
        .map(|k| Segment {
            a: point(k),
            b: point(k + 1),
        })
        .collect()
}

/// Area (or volume) of the non-positive sublevel set by node counting.
pub fn sublevel_measure(field: &ScalarField) -> f64 {
    field.count_nonpositive() as f64 * field.grid().cell_volume()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::implicit::ImplicitSurface;
    use std::sync::Arc;

    fn square(n: usize) -> Arc<Grid> {
        Arc::new(Grid::new(&[-1.0, -1.0], &[1.0, 1.0], &[n, n], &[]).unwrap())
    }

    #[test]
    fn circle_perimeter() {
        let g = square(201);
        let s = ImplicitSurface::sphere(&g, &[0.0, 0.0], 0.5).unwrap();
        let segs = extract_zero_set_2d(s.field()).unwrap();
        let len = total_length(&segs);
        assert!(
            (len - std::f64::consts::PI).abs() / std::f64::consts::PI < 0.05,
            "{len}"
        );
        let exact = circle_segments([0.0, 0.0], 0.5, 2000);
        assert!(hausdorff_distance(&segs, &exact) < 0.01);
    }

    #[test]
    fn positive_field_has_no_contour() {
        let f = ScalarField::constant(square(11), 1.0);
        assert!(extract_zero_set_2d(&f).unwrap().is_empty());
    }

    #[test]
    fn linear_field_contour_on_grid_line() {
        let f = ScalarField::from_fn(square(11), |x| x[0]);
        let segs = extract_zero_set_2d(&f).unwrap();
        assert_eq!(segs.len(), 10);
        for s in &segs {
            assert!(s.a[0].abs() < 1e-15 && s.b[0].abs() < 1e-15);
        }
        assert!((total_length(&segs) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn saddle_is_resolved_by_average() {
        let pos = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        // (0,0) and (1,1) inside; negative average joins them
        let mut segs = Vec::new();
        cell_segments([-2.0, 1.0, -2.0, 1.0], pos, &mut segs);
        assert_eq!(segs.len(), 2);
        let near = |segs: &[Segment], p: Point| segs.iter().any(|s| s.distance_to(p) < 0.5);
        assert!(near(&segs, [1.0, 0.0]) && near(&segs, [0.0, 1.0]));
        // positive average separates them instead
        let mut segs = Vec::new();
        cell_segments([-1.0, 2.0, -1.0, 2.0], pos, &mut segs);
        assert_eq!(segs.len(), 2);
        assert!(near(&segs, [0.0, 0.0]) && near(&segs, [1.0, 1.0]));
    }

    #[test]
    fn requires_2d() {
        let g = Arc::new(Grid::new(&[0.0], &[1.0], &[5], &[]).unwrap());
        assert!(extract_zero_set_2d(&ScalarField::zeros(g)).is_err());
    }

    #[test]
    fn hausdorff_of_shifted_lines() {
        let a = [Segment {
            a: [0.0, 0.0],
            b: [1.0, 0.0],
        }];
        let b = [Segment {
            a: [0.0, 0.25],
            b: [1.0, 0.25],
        }];
        assert_eq!(hausdorff_distance(&a, &b), 0.25);
        assert_eq!(hausdorff_distance(&a, &[]), f64::INFINITY);
    }
}
