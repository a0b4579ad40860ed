mod common;

use common::{close, corpus, gen};
use polyround::chebyshev::chebyshev;
use polyround::facet::all_facets;
use polyround::generators::{Family, GaussianStream};
use polyround::linalg::{distance, Matrix};
use polyround::lp::{solve_lp, LpProblem};
use polyround::polytope::{is_bounded, normalize, origin_interior, remove_redundant, simplex_from_vertices};
use polyround::vertices::{diameter, enumerate_vertices};
use polyround::HPolytope;
use proptest::prelude::*;

fn random_bounded(d: usize, m: usize, seed: u64) -> HPolytope {
    // Tangent-ball normals with jittered offsets, so redundant rows and
    // an off-center Chebyshev ball both occur.
    let base = gen(Family::TangentBall { m }, d, seed);
    let mut g = GaussianStream::new(seed + 77);
    let offsets: Vec<f64> = base.offsets().iter().map(|b| b + 0.8 * g.uniform()).collect();
    HPolytope::new(base.normals().clone(), offsets).unwrap()
}

#[test]
fn lp_maximizers_are_enumerated_vertices() {
    let mut g = GaussianStream::new(5);
    for seed in 0..40 {
        let d = 2 + (seed as usize % 3);
        let m = (d + 1 + (seed as usize % 7)).min(12);
        let p = random_bounded(d, m, seed);
        let vs = enumerate_vertices(&p).unwrap();
        for v in &vs.vertices {
            assert!(p.contains(v, 1e-9));
            assert!(vs.active_sets[vs.vertices.iter().position(|w| w == v).unwrap()].len() >= d);
        }
        for _ in 0..10 {
            let c = g.unit_vector(d);
            let sol = solve_lp(&LpProblem::new(c, p.normals().clone(), p.offsets().to_vec())).unwrap();
            let nearest = vs.vertices.iter().map(|v| distance(v, &sol.point)).fold(f64::INFINITY, f64::min);
            assert!(nearest <= 1e-7, "seed {seed}: LP maximizer {nearest} away from every vertex");
        }
    }
}

#[test]
fn origin_interior_iff_offsets_positive() {
    let mut g = GaussianStream::new(9);
    for (name, p) in corpus(4, 2) {
        let vs = enumerate_vertices(&p).unwrap();
        // Random interior point: strict convex combination of vertices.
        let weights: Vec<f64> = (0..vs.len()).map(|_| 0.1 + g.uniform()).collect();
        let total: f64 = weights.iter().sum();
        let mut x = vec![0.0; p.dim()];
        for (w, v) in weights.iter().zip(&vs.vertices) {
            for k in 0..p.dim() {
                x[k] += w / total * v[k];
            }
        }
        let neg = |v: &[f64]| v.iter().map(|c| -c).collect::<Vec<_>>();
        let centered = p.translated(&neg(&x));
        assert!(origin_interior(&centered), "{name}");
        // Geometric side: the ball of radius min b / 2 about the origin is inside.
        let half = 0.5 * centered.offsets().iter().cloned().fold(f64::INFINITY, f64::min);
        for _ in 0..20 {
            let u: Vec<f64> = g.unit_vector(p.dim()).iter().map(|c| c * half * g.uniform()).collect();
            assert!(centered.contains(&u, 0.0));
        }
        // Boundary point: a vertex moved to the origin.
        let at_vertex = p.translated(&neg(&vs.vertices[0]));
        assert!(!origin_interior(&at_vertex));
        let min_b = at_vertex.offsets().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(min_b <= 1e-10, "{name}");
    }
}

#[test]
fn diameter_bounds_sampled_pairs() {
    let mut g = GaussianStream::new(21);
    for (name, p) in corpus(4, 1) {
        let vs = enumerate_vertices(&p).unwrap();
        let dia = diameter(&vs).unwrap();
        let sample = |g: &mut GaussianStream| {
            let w: Vec<f64> = (0..vs.len()).map(|_| g.uniform()).collect();
            let t: f64 = w.iter().sum();
            (0..p.dim()).map(|k| vs.vertices.iter().zip(&w).map(|(v, wi)| v[k] * wi / t).sum()).collect::<Vec<f64>>()
        };
        for _ in 0..50 {
            let (x, y) = (sample(&mut g), sample(&mut g));
            assert!(distance(&x, &y) <= dia + 1e-12, "{name}");
        }
    }
}

#[test]
fn unit_cube_facets_sum_to_24() {
    let p = gen(Family::Cube, 3, 0);
    let total: f64 = all_facets(&p, &enumerate_vertices(&p).unwrap()).unwrap().iter().map(|f| f.measure).sum();
    assert!(close(total, 24.0, 1e-9));
}

#[test]
fn rotated_cube_facets_keep_area() {
    for seed in 0..10 {
        let p = gen(Family::RotatedCube, 3, seed);
        let faces = all_facets(&p, &enumerate_vertices(&p).unwrap()).unwrap();
        for f in faces {
            assert!(close(f.measure, 4.0, 1e-9));
            assert!(close(f.centroid.iter().map(|c| c * c).sum::<f64>(), 1.0, 1e-9));
        }
    }
}

#[test]
fn simplex_facet_areas_match_cross_products() {
    let v = vec![vec![0.1, 0.0, 0.0], vec![1.3, 0.2, 0.0], vec![0.0, 1.1, 0.3], vec![0.2, 0.3, 1.7]];
    let p = simplex_from_vertices(&v).unwrap();
    let faces = all_facets(&p, &enumerate_vertices(&p).unwrap()).unwrap();
    for (k, f) in faces.iter().enumerate() {
        let pts: Vec<&Vec<f64>> = v.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| x).collect();
        let e1: Vec<f64> = (0..3).map(|c| pts[1][c] - pts[0][c]).collect();
        let e2: Vec<f64> = (0..3).map(|c| pts[2][c] - pts[0][c]).collect();
        let cr = [e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2], e1[0] * e2[1] - e1[1] * e2[0]];
        let area = 0.5 * (cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]).sqrt();
        assert!(close(f.measure, area, 1e-12));
    }
}

#[test]
fn redundancy_removal_preserves_chebyshev_ball() {
    for seed in 0..30 {
        let p = random_bounded(3, 10, seed);
        let q = remove_redundant(&p).unwrap();
        assert!(q.num_constraints() <= p.num_constraints());
        let (a, b) = (chebyshev(&p).unwrap(), chebyshev(&q).unwrap());
        assert!(close(a.radius, b.radius, 1e-9));
        let (va, vb) = (enumerate_vertices(&p).unwrap(), enumerate_vertices(&q).unwrap());
        assert_eq!(va.len(), vb.len());
        assert!(close(diameter(&va).unwrap(), diameter(&vb).unwrap(), 1e-9));
        // Every kept row supports a genuine facet with at least d vertices.
        for i in 0..q.num_constraints() {
            let on = vb.active_sets.iter().filter(|s| s.contains(&i)).count();
            assert!(on >= 3, "seed {seed} row {i}");
        }
    }
}

#[test]
fn generated_polytopes_are_bounded_and_centerable() {
    for (name, p) in corpus(5, 2) {
        assert!(is_bounded(&p).unwrap(), "{name}");
        let c = chebyshev(&p).unwrap().center;
        let centered = p.translated(&c.iter().map(|x| -x).collect::<Vec<_>>());
        assert!(origin_interior(&centered), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalization_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-10.0f64..10.0, 3), 1..8),
                                   offsets in prop::collection::vec(-5.0f64..5.0, 8)) {
        prop_assume!(rows.iter().all(|r| r.iter().map(|x| x * x).sum::<f64>() > 1e-6));
        let m = Matrix::from_rows(&rows).unwrap();
        let b = &offsets[..rows.len()];
        let once = normalize(&m, b).unwrap();
        let twice = normalize(once.normals(), once.offsets()).unwrap();
        for i in 0..rows.len() {
            let n: f64 = once.normal(i).iter().map(|x| x * x).sum::<f64>().sqrt();
            prop_assert!((n - 1.0).abs() <= 1e-12);
            prop_assert!((once.offsets()[i] - twice.offsets()[i]).abs() <= 1e-15 * (1.0 + once.offsets()[i].abs()));
            for k in 0..3 {
                prop_assert!((once.normal(i)[k] - twice.normal(i)[k]).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn normalization_preserves_membership(scale in 0.01f64..100.0, x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let rows = vec![vec![scale, 0.0], vec![0.0, scale], vec![-scale, 0.0], vec![0.0, -scale]];
        let p = HPolytope::from_rows(&rows, &[scale; 4]).unwrap();
        prop_assert_eq!(p.contains(&[x, y], 0.0), x.abs() <= 1.0 && y.abs() <= 1.0);
    }
}
