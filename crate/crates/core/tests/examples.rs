//! Worked examples through the public API.

mod common;


use canon4::canonize::{
    canonize_transform, f_fields, metric_ode_residual, phi_psi, pnmcv_check, principal_rotation, Convention,
    DeterminingJet, ScaleConstants,
};
use canon4::geomfun::{
    basic_system_residual_jets, geometric_functions, geometric_functions_jet, invariant_identities, sample_functions,
    GeometricFunctions,
};
use canon4::lattice::{Grid, Lattice, Rect};
use canon4::reconstruct::{
    align_rigid, f_fields_on, g_initial, recover_beta, reconstruct, solve_cauchy, subsample, DeterminingData,
    FieldSource, ReconstructOptions,
};
use canon4::surface::{fundamental_forms, geometric_frame, invariants, is_principal};
use canon4::tolerance::Tolerances;
use canon4::vec4::det4;
use canon4::{parse, Dual, Error, Vec4};
use common::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps
}

fn vclose(a: &Vec4<f64>, b: &Vec4<f64>, eps: f64) -> bool {
    (*a - *b).norm() <= eps
}

const SAMPLES: [(f64, f64); 4] = [(0.1, 0.2), (0.5, -0.3), (0.9, 0.7), (0.3, 1.0)];

// ---- expr ----

#[test]
fn parse_builds_expected_trees() {
    assert_eq!(parse("u*cos(v)").unwrap().to_string(), "(u * cos(v))");
    let e = parse("cosh(u)*cos(v)").unwrap();
    assert!(close(e.eval(0.4, 0.3).unwrap(), 0.4f64.cosh() * 0.3f64.cos(), 1e-15));
}

#[test]
fn malformed_input_reports_offset() {
    match parse("u +* v") {
        Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn jet_of_cubic_monomial() {
    let j = parse("u*u*v").unwrap().eval_jet3(2.0, 3.0).unwrap();
    let got = [j.value, j.du, j.dv, j.duu, j.duv, j.dvv, j.duuu, j.duuv, j.duvv, j.dvvv];
    assert_eq!(got, [12.0, 12.0, 4.0, 6.0, 4.0, 0.0, 0.0, 2.0, 0.0, 0.0]);
}

#[test]
fn jet_of_sine_at_origin() {
    let j = parse("sin(u)").unwrap().eval_jet3(0.0, 0.0).unwrap();
    assert_eq!((j.value, j.du, j.duu, j.duuu), (0.0, 1.0, 0.0, -1.0));
}

#[test]
fn cosh_derivative_matches_central_difference() {
    let e = parse("cosh(u)").unwrap();
    let h = 1e-4;
    for a in 0..10 {
        for b in 0..10 {
            let (u, v) = (-2.0 + 0.4 * a as f64, -1.0 + 0.2 * b as f64);
            let fd = (e.eval(u + h, v).unwrap() - e.eval(u - h, v).unwrap()) / (2.0 * h);
            assert!(close(e.eval_jet3(u, v).unwrap().du, fd, 1e-7));
        }
    }
}

// ---- surface_core ----

#[test]
fn example2_fundamental_forms() {
    let s = chart("example2");
    for (u, v) in SAMPLES {
        let f = fundamental_forms(&s, u, v, &tol()).unwrap();
        assert!(close(f.e, 1.0, 1e-14) && close(f.f, 0.0, 1e-14) && close(f.g, 1.0 + u * u, 1e-14));
        assert!(f.sigma_uu.norm() < 1e-14);
        assert!(vclose(&f.sigma_vv, &Vec4::new(0.0, 0.0, -v.cos(), -v.sin()), 1e-14));
    }
}

#[test]
fn example3_fundamental_forms() {
    let s = chart("example3_raw");
    for (u, v) in SAMPLES {
        let f = fundamental_forms(&s, u, v, &tol()).unwrap();
        let c2 = u.cosh().powi(2);
        assert!(close(f.e, c2, 1e-13) && close(f.g, c2, 1e-13) && close(f.f, 0.0, 1e-13));
        assert!(close(f.l, 0.0, 1e-13) && close(f.n, 0.0, 1e-13));
        assert!(close(f.m.abs(), 1.0 / c2, 1e-13), "{}", f.m);
    }
}

#[test]
fn plane_is_flat_and_minimal() {
    let s = chart("plane");
    let f = fundamental_forms(&s, 0.3, -0.2, &tol()).unwrap();
    assert_eq!((f.e, f.f, f.g, f.l, f.m, f.n), (1.0, 0.0, 1.0, 0.0, 0.0, 0.0));
    let i = invariants(&f);
    assert_eq!((i.k, i.varkappa, i.gauss, i.h_norm), (0.0, 0.0, 0.0, 0.0));
    assert!(matches!(geometric_frame(&s, 0.3, -0.2, &tol()), Err(Error::MinimalPoint { .. })));
    let r = is_principal(&s, &square(5, -1.0, 1.0), &tol()).unwrap();
    assert!(r.principal && r.max_residual == 0.0);
}

#[test]
fn example2_invariants() {
    let s = chart("example2");
    for (u, v) in SAMPLES {
        let i = invariants(&fundamental_forms(&s, u, v, &tol()).unwrap());
        let w = -1.0 / (1.0 + u * u).powi(2);
        assert!(close(i.k, 0.0, 1e-14) && close(i.varkappa, w, 1e-14) && close(i.gauss, w, 1e-14));
    }
}

#[test]
fn example4_rotated_invariants() {
    let s = chart("example4_rotated");
    for (u, v) in SAMPLES {
        let f = fundamental_forms(&s, u, v, &tol()).unwrap();
        assert!(close(f.e, 2.0, 1e-14) && close(f.g, 2.0, 1e-14) && close(f.f, 0.0, 1e-14));
        let i = invariants(&f);
        assert!(close(i.k, -1.0, 1e-13) && close(i.varkappa, 0.0, 1e-13) && close(i.gauss, 0.0, 1e-13));
    }
}

#[test]
fn example2_frame() {
    let s = chart("example2");
    for (u, v) in SAMPLES {
        let fr = geometric_frame(&s, u, v, &tol()).unwrap();
        let r = (1.0 + u * u).sqrt();
        assert!(vclose(&fr.b, &Vec4::new(0.0, 0.0, -v.cos(), -v.sin()), 1e-14));
        // The completing normal, orthogonal to x, y, b, with det[x y b l] = +1.
        let l = Vec4::new(-v.sin(), v.cos(), u * v.sin(), -u * v.cos()).scale(1.0 / r);
        assert!(vclose(&fr.l, &l, 1e-14), "{:?}", fr.l);
        assert!(close(det4(&fr.x, &fr.y, &fr.b, &fr.l), 1.0, 1e-13));
        assert!(fr.gram_deviation() < 1e-14);
    }
}

#[test]
fn example4_rotated_frame() {
    let s = chart("example4_rotated");
    for (u, v) in SAMPLES {
        let b = geometric_frame(&s, u, v, &tol()).unwrap().b;
        let (p, m) = (u + v, u - v);
        let expect = Vec4::new(p.cos(), p.sin(), m.sin(), m.cos()).scale(-1.0 / 2f64.sqrt());
        assert!(vclose(&b, &expect, 1e-14));
    }
}

#[test]
fn principal_flags() {
    let l = square(7, -1.0, 1.0);
    assert!(is_principal(&chart("example2"), &Lattice::new(7, 7, Rect::new(0.0, 1.0, 0.0, 1.0)).unwrap(), &tol())
        .unwrap()
        .principal);
    assert!(!is_principal(&chart("example4_raw"), &l, &tol()).unwrap().principal);
}

// ---- geomfun ----

#[test]
fn example2_geometric_functions() {
    let s = chart("example2");
    for (u, v) in SAMPLES {
        let g = geometric_functions(&s, u, v, &tol()).unwrap();
        let q = 1.0 / (1.0 + u * u);
        let expect = [0.0, q, 0.0, q, 0.0, -u * q, 0.0, u * q];
        for (a, b) in g.eight().iter().zip(expect) {
            assert!(close(*a, b, 1e-13), "{:?}", g);
        }
    }
}

#[test]
fn example3_rotated_geometric_functions() {
    // The rotated chart has E = G = 2 cosh²(u+v); with that metric the
    // functions are ν1 = ν2 = λ = 1/(2cosh²) and μ = -1/cosh² (the sign
    // follows the positive orientation), γ = β = -tanh/√(1 + cosh 2(u+v)).
    let s = chart("example3_rotated");
    for (u, v) in [(0.1, 0.2), (-0.3, 0.25), (0.4, 0.4)] {
        let g = geometric_functions(&s, u, v, &tol()).unwrap();
        let p: f64 = u + v;
        let c2 = p.cosh().powi(2);
        let t = -p.tanh() / (1.0 + (2.0 * p).cosh()).sqrt();
        let expect = [0.5 / c2, 0.5 / c2, 0.5 / c2, -1.0 / c2, t, t, t, t];
        for (a, b) in g.eight().iter().zip(expect) {
            assert!(close(*a, b, 1e-12), "{g:?}");
        }
        assert!(close(g.e, 2.0 * c2, 1e-12) && close(g.g, 2.0 * c2, 1e-12));
    }
}

#[test]
fn identities_on_example_functions() {
    let ex1 = GeometricFunctions::from_eight([1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 1.0, 1.0);
    assert_eq!(invariant_identities(&ex1), (-4.0, 0.0, 0.0));
    let u: f64 = 0.7;
    let q = 1.0 / (1.0 + u * u);
    let ex2 = GeometricFunctions::from_eight([0.0, q, 0.0, q, 0.0, 0.0, 0.0, 0.0], 1.0, 1.0);
    assert!(close(invariant_identities(&ex2).1, -q * q, 1e-15));
    let same = GeometricFunctions::from_eight([0.3, 0.3, 0.1, 2.5, 0.0, 0.0, 0.0, 0.0], 1.0, 1.0);
    assert_eq!(invariant_identities(&same).1, 0.0);
}

#[test]
fn constant_functions_have_zero_system_residual() {
    let c = |x: f64| Dual::cst(x);
    let gf = GeometricFunctions::from_eight([c(1.0), c(1.0), c(0.0), c(1.0), c(0.0), c(0.0), c(0.0), c(0.0)], c(1.0), c(1.0));
    let r = canon4::geomfun::SystemResidual::from_jet(&gf);
    assert_eq!(r.r, [0.0; 6]);
}

#[test]
fn example2_system_residual_and_detector() {
    let s = chart("example2");
    let l = Lattice::new(21, 21, Rect::new(0.0, 1.0, 0.0, 1.0)).unwrap();
    let gf = sample_functions(&s, &l, &tol()).unwrap();
    let r = basic_system_residual_jets(&gf);
    assert!(max_abs(r.iter().map(|x| x.unwrap().max_abs())) < 1e-8);
    let bumped: Vec<_> = gf.iter().map(|g| Some(g.unwrap().perturbed("mu", 1.01).unwrap())).collect();
    let worst = max_abs(basic_system_residual_jets(&bumped).iter().map(|x| x.unwrap().max_abs()));
    assert!(worst > 1e-3, "{worst}");
}

// ---- canonize ----

fn jet_from(e: [&str; 4], u: f64, v: f64) -> DeterminingJet<f64> {
    let p = e.map(|s| parse(s).unwrap());
    DeterminingJet::from_expressions([&p[0], &p[1], &p[2], &p[3]], u, v).unwrap()
}

#[test]
fn constant_data_gives_zero_f_fields() {
    let f = f_fields(&jet_from(["0.3", "-1.2", "0.5", "2"], 0.1, 0.2), 0.1, 0.2, 1e-10).unwrap();
    assert_eq!([f.f1, f.f2, f.f3, f.f4], [0.0; 4]);
}

#[test]
fn minimal_specialization_of_f_fields() {
    let (nu, mu) = ("0.4 + 0.1*u*v", "1.5 + 0.3*sin(u + 0.5*v)");
    let e = [nu, &format!("-({nu})"), "0", mu];
    for (u, v) in SAMPLES {
        let f = f_fields(&jet_from(e, u, v), u, v, 1e-10).unwrap();
        let q = parse(&format!("({mu})^2 - ({nu})^2")).unwrap().eval_jet3(u, v).unwrap();
        assert!(close(f.f1, -q.dv / (4.0 * q.value), 1e-13));
        assert!(close(f.f4, -q.du / (4.0 * q.value), 1e-13));
        assert!(f.f2.abs() < 1e-15 && f.f3.abs() < 1e-15);
    }
}

#[test]
fn example2_metric_odes() {
    let s = chart("example2");
    let l = Lattice::new(11, 11, Rect::new(0.0, 1.0, 0.0, 1.0)).unwrap();
    for (u, v) in l.points() {
        let g = geometric_functions_jet(&s, u, v, &tol()).unwrap();
        let f = f_fields(&DeterminingJet::from_geometric(&g), u, v, 1e-10).unwrap();
        let r = metric_ode_residual(&f, g.e, g.g);
        assert!(r[0].abs() < 1e-8 && r[1].abs() < 1e-8, "{r:?}");
    }
}

#[test]
fn example1_and_example2_are_canonical() {
    for (name, n) in [("example1_surface", 9), ("example2", 9)] {
        let s = chart(name);
        let l = Lattice::new(n, n, s.domain).unwrap();
        let r = phi_psi(&s, &l, (0.0, 0.0), ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
        assert!(r.is_canonical, "{name}: {}", r.max_deviation);
    }
}

#[test]
fn example3_rotated_canonization() {
    let s = arc_chart("example3_rotated");
    let l = Lattice::new(9, 9, s.domain).unwrap();
    let c = canonize_transform(s, &l, (0.0, 0.0), ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
    assert!(!c.before.is_canonical);
    assert!(c.after.is_canonical && c.after.max_deviation < 1e-6, "{}", c.after.max_deviation);
    for k in 0..9 {
        let u = l.u(k);
        assert!(close(c.chart.u_map.forward(u).unwrap(), 2f64.sqrt() * u.sinh(), 1e-6));
        assert!(close(c.chart.v_map.forward(u).unwrap(), 2f64.sqrt() * u.sinh(), 1e-6));
    }
}

#[test]
fn canonical_charts_map_to_themselves() {
    let s = arc_chart("example2");
    let l = Lattice::new(9, 9, s.domain).unwrap();
    let c = canonize_transform(s, &l, (0.0, 0.0), ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
    for k in 0..9 {
        let t = l.u(k);
        assert!(close(c.chart.u_map.forward(t).unwrap(), t, 1e-8));
        assert!(close(c.chart.v_map.forward(t).unwrap(), t, 1e-8));
    }
}

#[test]
fn rotation_of_example4_and_guard() {
    let r = principal_rotation(&chart("example4_raw"), &tol()).unwrap();
    for (u, v) in [(0.1, 0.2), (-0.2, 0.3)] {
        let f = fundamental_forms(&r, u, v, &tol()).unwrap();
        assert!(close(f.e, 2.0, 1e-13) && close(f.g, 2.0, 1e-13) && close(f.f, 0.0, 1e-13));
    }
    assert!(is_principal(&r, &Lattice::new(7, 7, r.domain).unwrap(), &tol()).unwrap().principal);
    let e3 = principal_rotation(&chart("example3_raw"), &tol()).unwrap();
    assert!(is_principal(&e3, &Lattice::new(7, 7, e3.domain).unwrap(), &tol()).unwrap().principal);
    assert!(matches!(principal_rotation(&chart("example2"), &tol()), Err(Error::PatternNotApplicable(_))));
}

#[test]
fn example2_is_not_pnmcv() {
    let s = chart("example2");
    let l = Lattice::new(9, 9, s.domain).unwrap();
    let data = sample_functions(&s, &l, &tol()).unwrap().into_iter().map(|g| g.unwrap().map(|d| d.re)).collect();
    let grid = Grid { lattice: l, data };
    assert!(matches!(pnmcv_check(&grid, (0.0, 0.0), &tol()), Err(Error::NotPnmcv(_))));
}

#[test]
fn example1_pnmcv_scale_is_exact() {
    let l = square(9, -1.0, 1.0);
    let g = GeometricFunctions::from_eight([1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0], 1.0, 1.0);
    let grid = Grid { lattice: l, data: vec![g; l.len()] };
    let r = pnmcv_check(&grid, (0.0, 0.0), &tol()).unwrap();
    assert!(r.passed && r.c == 0.0, "{r:?}");
    assert!(r.scale_residual.iter().all(|&x| x < 1e-14), "{r:?}");
}

// ---- reconstruct ----

fn expressions(e: [&str; 4], l: Lattice<f64>, base: (f64, f64)) -> DeterminingData<f64> {
    DeterminingData::new(FieldSource::Expressions(Box::new(e.map(|s| parse(s).unwrap()))), l, base)
}

#[test]
fn example1_initial_lines_are_one() {
    let d = expressions(["1", "1", "0", "1"], square(11, -1.0, 1.0), (0.0, 0.0));
    for conv in [Convention::Separate, Convention::Coupled] {
        let d = DeterminingData { convention: conv, ..d.clone() };
        let (g1, g2) = g_initial(&d, &tol()).unwrap();
        assert!(g1.iter().chain(&g2).all(|&x| x == 1.0));
    }
}

#[test]
fn minimal_specialization_initial_line() {
    let (nu, mu) = ("0.4 + 0.1*u*v", "1.5 + 0.3*sin(u + 0.5*v)");
    let l = Lattice::new(41, 5, Rect::new(-1.0, 1.0, 0.0, 0.4)).unwrap();
    let mut d = expressions([nu, &format!("-({nu})"), "0", mu], l, (0.0, 0.2)).with_constants(0.3, 0.0);
    d.convention = Convention::Coupled;
    let (g1, _) = g_initial(&d, &tol()).unwrap();
    let q = parse(&format!("({mu})^2 - ({nu})^2")).unwrap();
    let q0 = q.eval(0.0, 0.2).unwrap();
    for (i, g) in g1.iter().enumerate() {
        let expect = (q0 / q.eval(l.u(i), 0.2).unwrap()).powf(0.25) * (-0.3f64).exp();
        assert!(close(*g, expect, 1e-9), "{i}: {g} {expect}");
    }
}

#[test]
fn example1_cauchy_and_betas() {
    let d = expressions(["1", "1", "0", "1"], square(11, -1.0, 1.0), (0.0, 0.0));
    let jets = d.sample(1, 6).unwrap();
    let f = f_fields_on(&jets, &d.lattice, &tol()).unwrap();
    let (g1, g2) = g_initial(&d, &tol()).unwrap();
    let (phi, psi) = solve_cauchy(&f, &d.lattice, (5, 5), &g1, &g2).unwrap();
    assert!(phi.iter().chain(&psi).all(|&x| x == 1.0));
    let c = recover_beta(&jets, &f, &phi, &psi, &d.lattice).unwrap();
    assert!(c.iter().all(|x| x.beta1 == 0.0 && x.beta2 == 0.0));
}

#[test]
fn manufactured_cauchy_solution() {
    // φ* = exp(v sin u), ψ* = 2 + cos(uv); f1 = φ*_v/φ*, f4 = ψ*_u/ψ*.
    let exact = |u: f64, v: f64| ((v * u.sin()).exp(), 2.0 + (u * v).cos());
    let solve = |n: usize| {
        let l = square(n, -1.0, 1.0);
        let f: Vec<_> = l
            .points()
            .into_iter()
            .map(|(u, v)| canon4::canonize::FFields {
                f1: u.sin(),
                f2: 0.0,
                f3: 0.0,
                f4: -v * (u * v).sin() / (2.0 + (u * v).cos()),
                denom: 1.0,
            })
            .collect();
        let c = (n - 1) / 2;
        let g1: Vec<f64> = l.us().iter().map(|&u| exact(u, 0.0).0).collect();
        let g2: Vec<f64> = l.vs().iter().map(|&v| exact(0.0, v).1).collect();
        let (p, q) = solve_cauchy(&f, &l, (c, c), &g1, &g2).unwrap();
        (l, p, q)
    };
    // Two refinements of the 41x41 lattice combined by Richardson, as the
    // reconstruction does.
    let (l2, p2, q2) = solve(81);
    let (l4, p4, q4) = solve(161);
    let (p4, q4) = (subsample(&p4, &l4, 2), subsample(&q4, &l4, 2));
    let p: Vec<f64> = p2.iter().zip(&p4).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
    let q: Vec<f64> = q2.iter().zip(&q4).map(|(a, b)| (4.0 * b - a) / 3.0).collect();
    let (p, q) = (subsample(&p, &l2, 2), subsample(&q, &l2, 2));
    let l = square(41, -1.0, 1.0);
    let err = max_abs(l.points().into_iter().enumerate().flat_map(|(k, (u, v))| {
        let (a, b) = exact(u, v);
        [p[k] - a, q[k] - b]
    }));
    assert!(err < 1e-6, "{err}");
}

#[test]
fn example2_betas_from_true_metric() {
    let s = arc_chart("example2");
    let l = Lattice::new(21, 21, s.domain).unwrap();
    let d = DeterminingData::from_surface(s, l, (0.0, 0.0), &tol()).unwrap();
    let jets = d.sample(1, 6).unwrap();
    let f = f_fields_on(&jets, &l, &tol()).unwrap();
    let phi = vec![1.0; l.len()];
    let psi: Vec<f64> = l.points().iter().map(|(u, _)| (1.0 + u * u).sqrt()).collect();
    let c = recover_beta(&jets, &f, &phi, &psi, &l).unwrap();
    for (k, (u, _)) in l.points().into_iter().enumerate() {
        assert!(c[k].beta1.abs() < 1e-12 && close(c[k].beta2, u / (1.0 + u * u), 1e-12));
    }
}

#[test]
fn example2_compatibility_and_detector() {
    let s = arc_chart("example2");
    let l = Lattice::new(21, 21, s.domain).unwrap();
    let d = DeterminingData::from_surface(s, l, (0.0, 0.0), &tol()).unwrap();
    let r = reconstruct(&d, &ReconstructOptions::default(), &tol()).unwrap();
    assert!(r.compat_max < 1e-6, "{}", r.compat_max);
    // With ν1 = 0 both equations are homogeneous in ν2, so rescaling ν2
    // keeps the data compatible; rescaling μ does not.
    let nu2 = reconstruct(&d.scaled_field(1, 1.05), &ReconstructOptions::default(), &tol()).unwrap();
    assert!(nu2.compat_max < 1e-6, "{}", nu2.compat_max);
    let bumped = d.scaled_field(3, 1.05);
    let gated = reconstruct(&bumped, &ReconstructOptions::default(), &tol());
    assert!(matches!(gated, Err(Error::CompatibilityGate { .. })), "{:?}", gated.map(|r| r.compat_max));
    let forced = reconstruct(&bumped, &ReconstructOptions { force: true, ..Default::default() }, &tol()).unwrap();
    assert!(forced.forced && forced.compat_max > 1e-3, "{}", forced.compat_max);
}

#[test]
fn example1_compatibility_is_exact() {
    let d = expressions(["1", "1", "0", "1"], square(9, -1.0, 1.0), (0.0, 0.0));
    let r = reconstruct(&d, &ReconstructOptions::default(), &tol()).unwrap();
    assert_eq!(r.compat_max, 0.0);
}

#[test]
fn single_node_returns_initial_data() {
    let l = Lattice::new(1, 1, Rect::new(0.0, 0.0, 0.0, 0.0)).unwrap();
    let d = expressions(["1", "1", "0", "1"], l, (0.0, 0.0));
    let r = reconstruct(&d, &ReconstructOptions::default(), &tol()).unwrap();
    assert_eq!(r.grid.positions, vec![Vec4::zero()]);
    assert_eq!(r.grid.frames[0], canon4::surface::Frame::standard());
}

#[test]
fn example1_path_independence() {
    let d = expressions(["1", "1", "0", "1"], square(41, -1.0, 1.0), (0.0, 0.0));
    let r = reconstruct(&d, &ReconstructOptions::default(), &tol()).unwrap();
    assert!(r.grid.commutation < 1e-6, "{}", r.grid.commutation);
}

#[test]
fn minimal_point_in_data_is_rejected() {
    let d = expressions(["1", "1", "0", "u"], square(9, -1.0, 1.0), (0.0, 0.0));
    assert!(matches!(reconstruct(&d, &ReconstructOptions::default(), &tol()), Err(Error::MinimalPoint { .. })));
}

// ---- align ----

#[test]
fn alignment_identity() {
    let p = positions(&chart("example2"), &Lattice::new(5, 5, Rect::new(0.0, 1.0, 0.0, 1.0)).unwrap());
    let m = align_rigid(&p, &p).unwrap();
    assert!(m.rms < 1e-12 && m.t.norm() < 1e-12 && !m.reflection);
    for a in 0..4 {
        for b in 0..4 {
            assert!(close(m.q[a][b], if a == b { 1.0 } else { 0.0 }, 1e-12));
        }
    }
}

#[test]
fn quoted_torus_motion_carries_the_torus_onto_example1() {
    // The quoted motion takes the torus of radius 1/√2 onto Example 1.
    let l = square(21, -1.0, 1.0);
    let a = positions(&chart("example4_scaled"), &l);
    let b = example1_grid(&l);
    let q = quoted_motion_matrix();
    let t = Vec4::new(0.0, 0.0, 1.0, 0.0);
    let moved: Vec<_> = a.iter().map(|p| apply(&q, &t, p)).collect();
    assert!(rms(&moved, &b) < 1e-14);
    let m = align_rigid(&a, &b).unwrap();
    assert!(m.rms < 1e-8 && !m.reflection && close(m.det, 1.0, 1e-10));
    let fitted: Vec<_> = a.iter().map(|p| m.apply(p)).collect();
    assert!(rms(&fitted, &moved) < 1e-8);
}
