mod common;

use common::{close, corpus, gen};
use polyround::flux::{facet_flux, reconstruct, FieldSpec, FluxData};
use polyround::generators::{Family, GaussianStream};
use polyround::linalg::{norm, Matrix};
use polyround::{Error, HPolytope};

fn low_dim_corpus() -> Vec<(String, HPolytope)> {
    corpus(3, 4)
}

#[test]
fn unit_cube_roundtrip() {
    let p = gen(Family::Cube, 3, 0);
    let j0 = vec![0.3, -1.2, 0.7];
    let data = facet_flux(&p, &FieldSpec::Constant(j0.clone())).unwrap();
    let r = reconstruct(&p, &data).unwrap();
    for (x, y) in r.j_recovered.iter().zip(&j0) {
        assert!(close(*x, *y, 1e-10));
    }
}

#[test]
fn constant_field_roundtrip_and_closed_surface() {
    let mut g = GaussianStream::new(4);
    for (name, p) in low_dim_corpus() {
        let j0 = g.gaussian_vec(p.dim());
        let data = facet_flux(&p, &FieldSpec::Constant(j0.clone())).unwrap();
        let sum: f64 = data.phi.iter().sum();
        assert!(sum.abs() <= 1e-9, "{name}: net flux {sum}");
        let r = reconstruct(&p, &data).unwrap();
        let err: f64 = r.j_recovered.iter().zip(&j0).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
        assert!(err <= 1e-9 * norm(&j0), "{name}");
        assert!(r.residual_norm <= 1e-8 * (1.0 + norm(&data.phi_hat)));
        assert!(r.gram_condition >= 1.0);
    }
}

#[test]
fn linearity() {
    let mut g = GaussianStream::new(8);
    for (name, p) in low_dim_corpus().into_iter().take(30) {
        let d = p.dim();
        let (alpha, beta) = (g.next_gaussian(), g.next_gaussian());
        let (j1, j2) = (g.gaussian_vec(d), g.gaussian_vec(d));
        let m1 = Matrix::from_fn(d, d, |_, _| g.next_gaussian());
        let m2 = Matrix::from_fn(d, d, |_, _| g.next_gaussian());
        let combo_j: Vec<f64> = j1.iter().zip(&j2).map(|(a, b)| alpha * a + beta * b).collect();
        let combo_m = Matrix::from_fn(d, d, |i, k| alpha * m1[(i, k)] + beta * m2[(i, k)]);
        let f1 = facet_flux(&p, &FieldSpec::Affine { j0: j1, m: m1 }).unwrap().phi;
        let f2 = facet_flux(&p, &FieldSpec::Affine { j0: j2, m: m2 }).unwrap().phi;
        let fc = facet_flux(&p, &FieldSpec::Affine { j0: combo_j, m: combo_m }).unwrap().phi;
        for k in 0..fc.len() {
            assert!(close(fc[k], alpha * f1[k] + beta * f2[k], 1e-10 * (1.0 + fc[k].abs())), "{name}");
        }
    }
}

#[test]
fn sampled_constant_reproduces_exact_flux() {
    let mut g = GaussianStream::new(12);
    for (name, p) in low_dim_corpus() {
        let j0 = g.gaussian_vec(p.dim());
        let exact = facet_flux(&p, &FieldSpec::Constant(j0.clone())).unwrap();
        let eval = |_: &[f64]| j0.clone();
        let sampled = facet_flux(&p, &FieldSpec::Sampled(&eval)).unwrap();
        for (x, y) in exact.phi.iter().zip(&sampled.phi) {
            assert!(close(*x, *y, 1e-10), "{name}");
        }
    }
}

#[test]
fn sampled_quadratic_field_in_2d() {
    // J(y) = (y1^2, 0) through the unit square: only x1 = +-1 edges see
    // flux, each int_{-1}^{1} 1 dy2 = 2 with signs +, -.
    let p = gen(Family::Cube, 2, 0);
    let eval = |y: &[f64]| vec![y[0] * y[0], 0.0];
    let data = facet_flux(&p, &FieldSpec::Sampled(&eval)).unwrap();
    let expect = [2.0, 0.0, -2.0, 0.0];
    for (x, e) in data.phi.iter().zip(expect) {
        assert!(close(*x, e, 1e-13));
    }
}

#[test]
fn divergence_theorem_for_affine_field() {
    // Net flux of J(y) = j0 + M y equals trace(M) * volume.
    let p = gen(Family::Cube, 3, 0);
    let m = Matrix::from_rows(&[vec![1.0, 2.0, 0.0], vec![0.0, -0.5, 3.0], vec![1.0, 0.0, 2.0]]).unwrap();
    let data = facet_flux(&p, &FieldSpec::Affine { j0: vec![1.0, 1.0, 1.0], m }).unwrap();
    assert!(close(data.phi.iter().sum::<f64>(), 2.5 * 8.0, 1e-12));
}

#[test]
fn rank_deficient_stacks_are_singular() {
    for d in 2..=3 {
        let mut row = vec![0.0; d];
        row[0] = 1.0;
        let p = HPolytope::from_rows(&vec![row; d + 2], &vec![1.0; d + 2]).unwrap();
        let data = FluxData::new(vec![0.5; d + 2], vec![1.0; d + 2]).unwrap();
        assert!(matches!(reconstruct(&p, &data), Err(Error::SingularGram(_))));
    }
}
