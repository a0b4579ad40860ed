mod common;

use common::{close, corpus, gen, orthogonal};
use polyround::generators::{Family, GaussianStream};
use polyround::linalg::{distance, dot};
use polyround::polytope::simplex_from_vertices;
use polyround::roundness::{analyze, certify_reconstruction, extract_witness};
use polyround::vertices::enumerate_vertices;
use polyround::HPolytope;
use proptest::prelude::*;

#[test]
fn closed_form_reports() {
    let sq = analyze(&gen(Family::Cube, 2, 0)).unwrap();
    assert!(close(sq.delta, 1.0 / (2.0 * 2f64.sqrt()), 1e-12));
    assert!(close(sq.sigma_min, 2f64.sqrt(), 1e-12));

    let cube = analyze(&gen(Family::Cube, 3, 0)).unwrap();
    assert!(close(cube.inradius, 1.0, 1e-12));
    assert!(close(cube.diameter, 2.0 * 3f64.sqrt(), 1e-12));
    assert!(close(cube.delta, 0.288_675_134_594_812_9, 1e-12));
    assert!(close(cube.bound_margin, 2f64.sqrt() - 0.288_675_134_594_812_9, 1e-12));

    let eps = 1e-3;
    let slab = analyze(&gen(Family::Slab { epsilon: eps }, 2, 0)).unwrap();
    assert!(close(slab.delta, eps / (2.0 * (1.0f64 + eps * eps).sqrt()), 1e-12));
    assert!(close(slab.sigma_min, 2f64.sqrt(), 1e-12));
}

#[test]
fn equilateral_triangle_closed_form() {
    // Side 1: inradius sqrt(3)/6, diameter 1, so delta = 1/(2 sqrt 3).
    let h = 3f64.sqrt() / 2.0;
    let tri = simplex_from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]]).unwrap();
    let r = analyze(&tri).unwrap();
    assert!(close(r.inradius, 3f64.sqrt() / 6.0, 1e-12));
    assert!(close(r.delta, 1.0 / (2.0 * 3f64.sqrt()), 1e-12));
    assert!(close(r.sigma_min, 1.5f64.sqrt(), 1e-12));
    let gen_tri = analyze(&gen(Family::RegularSimplex, 2, 0)).unwrap();
    assert!(close(gen_tri.delta, 1.0 / (2.0 * 3f64.sqrt()), 1e-12));
}

#[test]
fn witness_on_equilateral_triangle_matches_vertex_geometry() {
    let h = 3f64.sqrt() / 2.0;
    let tri = simplex_from_vertices(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]]).unwrap();
    let w = extract_witness(&tri).unwrap();
    assert!(w.all_pass(), "{:?}", w.failures().collect::<Vec<_>>());
    assert!(w.lambda1 > 0.0 && w.lambda2 < 0.0);
    assert!(w.lhs_chain > w.mid_chain && w.mid_chain > w.rhs_chain);

    // f and g must lie on the edges facet_i and facet_j of the centered triangle.
    let centered = tri.translated(&w.center.iter().map(|c| -c).collect::<Vec<_>>());
    let vs = enumerate_vertices(&centered).unwrap();
    for (pt, facet) in [(&w.f, w.facet_i), (&w.g, w.facet_j)] {
        let ends: Vec<&Vec<f64>> =
            vs.vertices.iter().zip(&vs.active_sets).filter(|(_, s)| s.contains(&facet)).map(|(v, _)| v).collect();
        assert_eq!(ends.len(), 2);
        let along = distance(ends[0], pt) + distance(pt, ends[1]);
        assert!(close(along, distance(ends[0], ends[1]), 1e-12));
    }
    // |f - g| cannot exceed the diameter.
    assert!(w.segment_length <= w.diameter + 1e-12);
}

#[test]
fn witness_chain_on_corpus() {
    for (name, p) in corpus(6, 2) {
        let w = extract_witness(&p).unwrap();
        assert!(w.all_pass(), "{name}: {:?}", w.failures().collect::<Vec<_>>());
        assert_ne!(w.facet_i, w.facet_j);
        assert!((dot(&w.v_d, &w.v_d) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn bound_holds_on_corpus() {
    for (name, p) in corpus(6, 3) {
        let r = analyze(&p).unwrap();
        assert!(r.full_dimensional);
        assert!(r.delta < r.sigma_min && r.bound_margin > 1e-12, "{name}");
        assert!(r.delta > 0.0 && r.delta <= 0.5 + 1e-12);
        assert_eq!(r.delta, r.inradius / r.diameter);
    }
}

#[test]
fn ball_limit() {
    // Many facets tangent to the unit ball: inradius 1, delta approaches 1/2.
    let mut prev = 0.0;
    for m in [8usize, 16, 40] {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / m as f64;
                vec![t.cos(), t.sin()]
            })
            .collect();
        let p = HPolytope::from_rows(&rows, &vec![1.0; m]).unwrap();
        let r = analyze(&p).unwrap();
        assert!(close(r.inradius, 1.0, 1e-9));
        assert!(r.delta <= 0.5 && r.delta > prev);
        prev = r.delta;
    }
    assert!(prev > 0.498);
}

#[test]
fn certificates() {
    let c = certify_reconstruction(&gen(Family::Slab { epsilon: 1e-3 }, 2, 0)).unwrap();
    assert!(c.delta_positive);
    assert!(close(c.sigma_min_lower_bound, 5.0e-4, 1e-9));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn translation_and_rotation_invariance(seed in 0u64..1000, d in 2usize..5) {
        let p = gen(Family::TangentBall { m: 2 * d + 1 }, d, seed);
        let base = analyze(&p).unwrap();
        let mut g = GaussianStream::new(seed + 1);
        let t: Vec<f64> = g.gaussian_vec(d).iter().map(|x| 3.0 * x).collect();
        let q = orthogonal(d, seed + 2);
        for other in [p.translated(&t), p.rotated(&q)] {
            let r = analyze(&other).unwrap();
            prop_assert!(close(r.inradius, base.inradius, 1e-8));
            prop_assert!(close(r.diameter, base.diameter, 1e-8));
            prop_assert!(close(r.delta, base.delta, 1e-8));
            prop_assert!(close(r.sigma_min, base.sigma_min, 1e-8));
        }
    }
}
