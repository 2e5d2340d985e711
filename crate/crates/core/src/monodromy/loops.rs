//! Admissible loop systems around finite point sets.
//!
//! The basepoint sits below every point. Loops fan out from it to a common
//! height, run up parallel sheared lines (one per point, each line passing
//! exactly through its point), enter a small circle and wind once clockwise.
//! The shear is chosen so that the left-to-right order of the lines equals
//! the canonical order of the points (increasing real part, ties by
//! increasing imaginary part); loops are then pairwise disjoint away from the
//! basepoint and their concatenation in canonical order is a loop around the
//! whole set.

use num_complex::Complex64;

use super::MonodromyError;

/// One piece of a loop path, parametrized over `t` in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum PathPiece {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// Circular arc `center + radius * exp(i theta)` with `theta` moving
    /// linearly from `theta_from` by `theta_by` (negative = clockwise).
    Arc {
        center: Complex64,
        radius: f64,
        theta_from: f64,
        theta_by: f64,
    },
}

impl PathPiece {
    pub fn at(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Line { from, to } => from + (to - from) * t,
            PathPiece::Arc {
                center,
                radius,
                theta_from,
                theta_by,
            } => center + Complex64::from_polar(radius, theta_from + theta_by * t),
        }
    }
}

/// A loop around one point: out along `pieces`, then back the same way.
#[derive(Clone, Debug)]
pub struct Loop {
    pub target: Complex64,
    pub radius: f64,
    /// Fan segment, climb segment, full clockwise circle.
    pub outward: Vec<PathPiece>,
}

impl Loop {
    /// The full path: outward pieces, then the non-arc pieces reversed.
    pub fn path(&self) -> Vec<PathPiece> {
        let mut path = self.outward.clone();
        for piece in self.outward.iter().rev() {
            if let PathPiece::Line { from, to } = *piece {
                path.push(PathPiece::Line { from: to, to: from });
            }
        }
        path
    }
}

/// An admissible loop system: one loop per point, in canonical order.
#[derive(Clone, Debug)]
pub struct LoopSystem {
    pub basepoint: Complex64,
    pub loops: Vec<Loop>,
    shear: f64,
}

/// Basepoint below a finite point set: `(min(Im over P and 0) - 1) i`.
pub fn basepoint(points: &[Complex64]) -> Complex64 {
    let min_im = points.iter().map(|z| z.im).fold(0.0f64, f64::min);
    Complex64::new(0.0, min_im - 1.0)
}

/// Sorts points canonically: increasing real part, ties by imaginary part.
pub fn canonical_order(points: &mut [Complex64]) {
    points.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite coordinates")
    });
}

/// Builds the loop system for a set of distinct points, in canonical order.
pub fn loop_system(points: &[Complex64]) -> Result<LoopSystem, MonodromyError> {
    let mut pts = points.to_vec();
    canonical_order(&mut pts);
    for w in pts.windows(2) {
        if w[0] == w[1] {
            return Err(MonodromyError::Geometry(format!(
                "coincident points at {}",
                w[0]
            )));
        }
    }
    // Shear u = x + delta*y with u-order equal to canonical order.
    let k = pts.len();
    let mut delta = 0.1f64;
    for i in 0..k {
        for j in i + 1..k {
            let dx = pts[j].re - pts[i].re;
            let dy = pts[i].im - pts[j].im;
            if dx > 0.0 && dy > 0.0 {
                delta = delta.min(0.5 * dx / dy);
            }
        }
    }
    loop_system_with_shear(&pts, delta)
}

/// As [`loop_system`], but with an explicit shear; loops come back ordered
/// by the sheared coordinate `u = x + delta*y`. Any nonzero shear with
/// distinct `u` values gives an admissible system; different shears may
/// produce loops in different homotopy classes, whose monodromy sequences
/// then differ by braid moves only.
pub fn loop_system_with_shear(
    points: &[Complex64],
    delta: f64,
) -> Result<LoopSystem, MonodromyError> {
    let mut pts = points.to_vec();
    let u = |z: Complex64| z.re + delta * z.im;
    pts.sort_by(|a, b| u(*a).partial_cmp(&u(*b)).expect("finite coordinates"));
    for w in pts.windows(2) {
        if u(w[0]) == u(w[1]) {
            return Err(MonodromyError::Geometry(format!(
                "points {} and {} collide in the sheared coordinate",
                w[0], w[1]
            )));
        }
    }
    let base = basepoint(&pts);
    let k = pts.len();
    let scale = (1.0 + delta * delta).sqrt();

    let min_pair = pts
        .iter()
        .enumerate()
        .flat_map(|(i, a)| pts.iter().skip(i + 1).map(move |b| (a - b).norm()))
        .fold(f64::INFINITY, f64::min);

    let fan_height = base.im + 0.5;
    let mut loops = Vec::with_capacity(k);
    for (i, &z) in pts.iter().enumerate() {
        let mut bound = 0.8 * (z.im - fan_height);
        if min_pair.is_finite() {
            bound = bound.min(min_pair);
        }
        for (j, &zj) in pts.iter().enumerate() {
            if j != i {
                bound = bound.min((u(z) - u(zj)).abs() / scale);
            }
        }
        let radius = 0.4 * bound;
        if !radius.is_finite() || radius <= 0.0 {
            return Err(MonodromyError::Geometry(format!(
                "cannot place a positive-radius circle around {z}"
            )));
        }
        // Climb direction along the line of constant u through z.
        let dir = Complex64::new(-delta, 1.0) / scale;
        let anchor = Complex64::new(u(z) - delta * fan_height, fan_height);
        let entry = z - dir * radius;
        let theta_from = (entry - z).arg();
        loops.push(Loop {
            target: z,
            radius,
            outward: vec![
                PathPiece::Line {
                    from: base,
                    to: anchor,
                },
                PathPiece::Line {
                    from: anchor,
                    to: entry,
                },
                PathPiece::Arc {
                    center: z,
                    radius,
                    theta_from,
                    theta_by: -2.0 * std::f64::consts::PI,
                },
            ],
        });
    }
    Ok(LoopSystem {
        basepoint: base,
        loops,
        shear: delta,
    })
}

impl LoopSystem {
    pub fn shear(&self) -> f64 {
        self.shear
    }

    /// Minimum distance between two loops of the system, ignoring the shared
    /// basepoint (the fan segments are trimmed near it).
    pub fn loop_distance(&self, i: usize, j: usize) -> f64 {
        let trim = 1e-9;
        let pieces = |l: &Loop| {
            let mut v = l.outward.clone();
            if let PathPiece::Line { from, to } = v[0] {
                v[0] = PathPiece::Line {
                    from: from + (to - from) * trim,
                    to,
                };
            }
            v
        };
        let (a, b) = (pieces(&self.loops[i]), pieces(&self.loops[j]));
        let mut best = f64::INFINITY;
        for pa in &a {
            for pb in &b {
                best = best.min(piece_distance(pa, pb));
            }
        }
        best
    }
}

/// A conservative lower bound on the distance between two path pieces
/// (exact for segment/segment; arcs are treated as their full circles).
pub fn piece_distance(a: &PathPiece, b: &PathPiece) -> f64 {
    match (a, b) {
        (PathPiece::Line { from: a0, to: a1 }, PathPiece::Line { from: b0, to: b1 }) => {
            segment_distance(*a0, *a1, *b0, *b1)
        }
        (PathPiece::Line { from, to }, PathPiece::Arc { center, radius, .. })
        | (PathPiece::Arc { center, radius, .. }, PathPiece::Line { from, to }) => {
            segment_circle_distance(*from, *to, *center, *radius)
        }
        (
            PathPiece::Arc {
                center: c1,
                radius: r1,
                ..
            },
            PathPiece::Arc {
                center: c2,
                radius: r2,
                ..
            },
        ) => circle_circle_distance(*c1, *r1, *c2, *r2),
    }
}

fn point_segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn segments_intersect(a0: Complex64, a1: Complex64, b0: Complex64, b1: Complex64) -> bool {
    let cross = |o: Complex64, p: Complex64, q: Complex64| {
        (p.re - o.re) * (q.im - o.im) - (p.im - o.im) * (q.re - o.re)
    };
    let (d1, d2) = (cross(b0, b1, a0), cross(b0, b1, a1));
    let (d3, d4) = (cross(a0, a1, b0), cross(a0, a1, b1));
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn segment_distance(a0: Complex64, a1: Complex64, b0: Complex64, b1: Complex64) -> f64 {
    if segments_intersect(a0, a1, b0, b1) {
        return 0.0;
    }
    point_segment_distance(a0, b0, b1)
        .min(point_segment_distance(a1, b0, b1))
        .min(point_segment_distance(b0, a0, a1))
        .min(point_segment_distance(b1, a0, a1))
}

fn segment_circle_distance(a: Complex64, b: Complex64, center: Complex64, radius: f64) -> f64 {
    let dmin = point_segment_distance(center, a, b);
    let dmax = (a - center).norm().max((b - center).norm());
    if dmax < radius {
        radius - dmax
    } else if dmin > radius {
        dmin - radius
    } else {
        0.0
    }
}

fn circle_circle_distance(c1: Complex64, r1: f64, c2: Complex64, r2: f64) -> f64 {
    let d = (c1 - c2).norm();
    if d >= r1 + r2 {
        d - r1 - r2
    } else if d + r1.min(r2) <= r1.max(r2) {
        r1.max(r2) - d - r1.min(r2)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basepoint_examples() {
        assert_eq!(basepoint(&[c(0.0, 1.0), c(0.0, 2.0)]), c(0.0, -1.0));
        assert_eq!(basepoint(&[c(0.0, -3.0)]), c(0.0, -4.0));
        assert_eq!(basepoint(&[]), c(0.0, -1.0));
    }

    #[test]
    fn single_point_loop() {
        let sys = loop_system(&[c(0.0, 0.0)]).unwrap();
        assert_eq!(sys.loops.len(), 1);
        assert_eq!(sys.basepoint, c(0.0, -1.0));
        let l = &sys.loops[0];
        assert!(l.radius > 0.0);
        // Path starts and ends at the basepoint.
        let path = l.path();
        assert!((path[0].at(0.0) - sys.basepoint).norm() < 1e-12);
        assert!((path.last().unwrap().at(1.0) - sys.basepoint).norm() < 1e-12);
    }

    #[test]
    fn canonical_order_puts_left_point_first() {
        let sys = loop_system(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(sys.loops[0].target, c(-1.0, 0.0));
        assert_eq!(sys.loops[1].target, c(1.0, 0.0));
        // Equal real parts: lower point first.
        let sys = loop_system(&[c(0.0, 2.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(sys.loops[0].target, c(0.0, 1.0));
        assert_eq!(sys.loops[1].target, c(0.0, 2.0));
    }

    #[test]
    fn coincident_points_are_rejected() {
        assert!(matches!(
            loop_system(&[c(1.0, 1.0), c(1.0, 1.0)]),
            Err(MonodromyError::Geometry(_))
        ));
    }

    #[test]
    fn loops_are_pairwise_disjoint_away_from_basepoint() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for case in 0..100 {
            let k = rng.gen_range(2..=6);
            let pts: Vec<Complex64> = match case % 5 {
                // Include vertical stacks and mixed near-vertical clusters.
                0 => (0..k).map(|i| c(0.0, i as f64)).collect(),
                1 => (0..k)
                    .map(|i| c(1e-7 * rng.gen_range(-1.0..1.0f64), i as f64))
                    .collect(),
                _ => (0..k)
                    .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0)))
                    .collect(),
            };
            // Skip accidental coincidences.
            let mut distinct = pts.clone();
            distinct.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
            if distinct.windows(2).any(|w| (w[0] - w[1]).norm() < 1e-12) {
                continue;
            }
            let sys = loop_system(&pts).unwrap();
            for i in 0..k {
                for j in i + 1..k {
                    assert!(
                        sys.loop_distance(i, j) > 0.0,
                        "loops {i} and {j} touch for points {pts:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn circles_avoid_all_other_loops_targets() {
        let pts = [c(-1.0, 0.5), c(-0.99, 4.0), c(2.0, 0.0)];
        let sys = loop_system(&pts).unwrap();
        for (i, l) in sys.loops.iter().enumerate() {
            for (j, other) in sys.loops.iter().enumerate() {
                if i != j {
                    assert!((l.target - other.target).norm() > l.radius + other.radius);
                }
            }
        }
    }
}
