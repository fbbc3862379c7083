//! Property-based checks of the invariants the library must keep.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use canon4::canonize::{
    canonize_transform, f_fields, phi_psi, Convention, DeterminingJet, FFields, ScaleConstants,
};
use canon4::catalog::{self, CatalogSurface};
use canon4::expr::{BinaryOp, Expression, NamedConst, UnaryOp, Var};
use canon4::geomfun::{gamma_from_metric, geometric_functions, geometric_functions_jet, invariant_identities};
use canon4::lattice::{Lattice, Rect};
use canon4::reconstruct::{align_rigid, reconstruct, solve_cauchy, DeterminingData, FieldSource, ReconstructOptions};
use canon4::surface::{fundamental_forms, geometric_frame, invariants, is_principal, Chart, Orientation};
use canon4::tolerance::Tolerances;
use canon4::{parse, Vec4};
use common::*;

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Principal catalog charts free of minimal points.
fn frame_charts() -> Vec<&'static CatalogSurface> {
    catalog::SURFACES.iter().filter(|s| s.principal && s.name != "plane").collect()
}

fn canonical_charts() -> Vec<&'static CatalogSurface> {
    catalog::SURFACES.iter().filter(|s| s.canonical).collect()
}

/// A point of the domain from fractions in [0, 1].
fn point(d: &Rect<f64>, a: f64, b: f64) -> (f64, f64) {
    (d.u_min + (d.u_max - d.u_min) * a, d.v_min + (d.v_max - d.v_min) * b)
}

// ---- expressions ----

fn expression() -> impl Strategy<Value = Expression> {
    let leaf = prop_oneof![
        (0.0f64..1e6).prop_map(Expression::Num),
        (0u32..1000).prop_map(|n| Expression::Num(n as f64)),
        Just(Expression::Var(Var::U)),
        Just(Expression::Var(Var::V)),
        Just(Expression::Const(NamedConst::Pi)),
        Just(Expression::Const(NamedConst::E)),
    ];
    let unary = [
        UnaryOp::Neg,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Sinh,
        UnaryOp::Cosh,
        UnaryOp::Tanh,
        UnaryOp::Exp,
        UnaryOp::Ln,
        UnaryOp::Sqrt,
        UnaryOp::Abs,
    ];
    let binary = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div];
    leaf.prop_recursive(5, 48, 2, move |inner| {
        prop_oneof![
            (0..unary.len(), inner.clone()).prop_map(move |(k, a)| Expression::unary(unary[k], a)),
            (0..binary.len(), inner.clone(), inner.clone()).prop_map(move |(k, a, b)| Expression::binary(binary[k], a, b)),
            (inner, -4.0f64..4.0).prop_map(|(a, p)| Expression::Pow(Box::new(a), p)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_round_trips(e in expression()) {
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }
}

/// Fourth-order central differences for the first and second partials.
fn central(e: &Expression, u: f64, v: f64, h: f64) -> [f64; 5] {
    let f = |du: f64, dv: f64| e.eval(u + du * h, v + dv * h).unwrap();
    let d1 = |s: &dyn Fn(f64) -> f64| (-s(2.0) + 8.0 * s(1.0) - 8.0 * s(-1.0) + s(-2.0)) / (12.0 * h);
    let d2 = |s: &dyn Fn(f64) -> f64| (-s(2.0) + 16.0 * s(1.0) - 30.0 * s(0.0) + 16.0 * s(-1.0) - s(-2.0)) / (12.0 * h * h);
    let du = d1(&|t| f(t, 0.0));
    let dv = d1(&|t| f(0.0, t));
    let duu = d2(&|t| f(t, 0.0));
    let dvv = d2(&|t| f(0.0, t));
    // Mixed partial from the fourth-order cross stencil.
    let c = |a: f64, b: f64| f(a, b) - f(a, -b) - f(-a, b) + f(-a, -b);
    let duv = (64.0 * c(1.0, 1.0) - 8.0 * (c(2.0, 1.0) + c(1.0, 2.0)) + c(2.0, 2.0)) / (144.0 * h * h);
    [du, dv, duu, duv, dvv]
}

#[test]
fn jets_agree_with_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut exprs: Vec<(String, Rect<f64>)> = Vec::new();
    for s in catalog::SURFACES {
        exprs.extend(s.coords.iter().map(|c| (c.to_string(), s.bounds())));
    }
    for d in catalog::DATA {
        let [a, b, c, e] = d.domain;
        exprs.extend(d.fields.iter().map(|f| (f.to_string(), Rect::new(a, b, c, e))));
    }
    let h = 1e-4;
    for (text, dom) in &exprs {
        let e = parse(text).unwrap();
        for _ in 0..100 {
            // Keep the stencil inside the domain.
            let (u, v) = point(dom, rng.gen_range(0.05..0.95), rng.gen_range(0.05..0.95));
            let j = e.eval_jet3(u, v).unwrap();
            let fd = central(&e, u, v, h);
            let ad = [j.du, j.dv, j.duu, j.duv, j.dvv];
            let scale = 1f64.max(j.value.abs());
            for k in 0..5 {
                let err = (ad[k] - fd[k]).abs() / scale.max(ad[k].abs());
                assert!(err < 1e-6, "{text} at ({u}, {v}), partial {k}: {} vs {}", ad[k], fd[k]);
            }
        }
    }
}

// ---- surface invariants ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_is_normal_and_frame_orthonormal(k in 0usize..8, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let charts = frame_charts();
        let s = charts[k % charts.len()];
        let c = s.chart::<f64>().unwrap();
        let (u, v) = point(&c.domain, a, b);
        let f = fundamental_forms(&c, u, v, &tol()).unwrap();
        let zu = c.coords.clone().map(|e| e.eval_jet3(u, v).unwrap().du);
        let zv = c.coords.clone().map(|e| e.eval_jet3(u, v).unwrap().dv);
        let (zu, zv) = (Vec4(zu), Vec4(zv));
        for sig in [f.sigma_uu, f.sigma_uv, f.sigma_vv] {
            prop_assert!(sig.dot(&zu).abs() < 1e-9 && sig.dot(&zv).abs() < 1e-9);
        }
        let fr = geometric_frame(&c, u, v, &tol()).unwrap();
        prop_assert!(fr.gram_deviation() < 1e-10, "{}", s.name);
        let det = canon4::vec4::det4(&fr.x, &fr.y, &fr.b, &fr.l);
        prop_assert!((det - s.orientation as f64).abs() < 1e-10);
    }

    #[test]
    fn mean_curvature_identity_and_cross_consistency(k in 0usize..8, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let charts = frame_charts();
        let s = charts[k % charts.len()];
        let c = s.chart::<f64>().unwrap();
        let (u, v) = point(&c.domain, a, b);
        let inv = invariants(&fundamental_forms(&c, u, v, &tol()).unwrap());
        let gf = geometric_functions(&c, u, v, &tol()).unwrap();
        let disc = inv.varkappa * inv.varkappa - inv.k;
        prop_assert!(disc > -1e-12);
        let h = disc.max(0.0).sqrt() / (2.0 * gf.mu.abs());
        prop_assert!((inv.h_norm - h).abs() < 1e-8, "{}: {} {}", s.name, inv.h_norm, h);
        let (k2, kappa2, gauss2) = invariant_identities(&gf);
        prop_assert!((k2 - inv.k).abs() < 1e-8);
        prop_assert!((kappa2 - inv.varkappa).abs() < 1e-8);
        prop_assert!((gauss2 - inv.gauss).abs() < 1e-8);
        let gj = geometric_functions_jet(&c, u, v, &tol()).unwrap();
        let [g1, g2] = gamma_from_metric(&gj);
        prop_assert!((g1 - gf.gamma1).abs() < 1e-8 && (g2 - gf.gamma2).abs() < 1e-8);
    }

    #[test]
    fn homothety_scales_forms_and_functions(k in 0usize..8, alpha in 0.2f64..5.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let charts = frame_charts();
        let s = charts[k % charts.len()];
        let c = s.chart::<f64>().unwrap();
        let big = c.scaled(alpha);
        let (u, v) = point(&c.domain, a, b);
        let (f, g) = (fundamental_forms(&c, u, v, &tol()).unwrap(), fundamental_forms(&big, u, v, &tol()).unwrap());
        let a2 = alpha * alpha;
        prop_assert!((g.e - a2 * f.e).abs() < 1e-10 * a2 * f.e);
        prop_assert!((g.g - a2 * f.g).abs() < 1e-10 * a2 * f.g);
        prop_assert!((g.f - a2 * f.f).abs() < 1e-10 * a2);
        let l = Lattice::new(5, 5, c.domain).unwrap();
        prop_assert!(is_principal(&big, &l, &tol()).unwrap().principal);
        let (x, y) = (geometric_functions(&c, u, v, &tol()).unwrap(), geometric_functions(&big, u, v, &tol()).unwrap());
        for (p, q) in x.eight().iter().zip(y.eight()) {
            prop_assert!((q - p / alpha).abs() < 1e-8, "{}", s.name);
        }
    }

    #[test]
    fn orientation_flip_changes_mu_and_betas(k in 0usize..8, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let charts = frame_charts();
        let s = charts[k % charts.len()];
        let c = s.chart::<f64>().unwrap();
        let flipped = c.with_orientation(c.orientation.flipped());
        let (u, v) = point(&c.domain, a, b);
        let x = geometric_functions(&c, u, v, &tol()).unwrap().eight();
        let y = geometric_functions(&flipped, u, v, &tol()).unwrap().eight();
        for i in 0..8 {
            let sign = if matches!(i, 3 | 6 | 7) { -1.0 } else { 1.0 };
            prop_assert!((y[i] - sign * x[i]).abs() < 1e-12, "{} function {i}", s.name);
        }
    }
}

// ---- canonical parameters ----

#[test]
fn scale_functions_do_not_depend_on_the_other_parameter() {
    for s in frame_charts() {
        let c = s.chart::<f64>().unwrap();
        let l = Lattice::new(7, 7, c.domain).unwrap();
        let r = phi_psi(&c, &l, s.base, ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
        assert!(r.phi_spread < 1e-7 && r.psi_spread < 1e-7, "{}: {} {}", s.name, r.phi_spread, r.psi_spread);
    }
}

fn f_at(c: &Chart<f64>, u: f64, v: f64) -> FFields<f64> {
    let g = geometric_functions_jet(c, u, v, &tol()).unwrap();
    f_fields(&DeterminingJet::from_geometric(&g), u, v, 1e-10).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Under `u = h(ū)`, `v = k(v̄)` the fields pick up `k'` (f1, f3) and
    /// `h'` (f2, f4), and `φ`, `ψ` pick up `h'`, `k'`.
    #[test]
    fn reparametrization_covariance(p in 0.05f64..0.3, q in 0.05f64..0.3, a in 0.2f64..0.8, b in 0.2f64..0.8) {
        let c = chart("example3_rotated");
        let hu = parse(&format!("u + {p}*u^3")).unwrap();
        let kv = parse(&format!("v + {q}*v^3")).unwrap();
        let sub = Chart {
            coords: c.coords.clone().map(|e| e.substitute(&hu, &kv)),
            domain: Rect::new(-0.3, 0.3, -0.3, 0.3),
            orientation: c.orientation,
        };
        let (ub, vb) = point(&sub.domain, a, b);
        let (u, v) = (hu.eval(ub, 0.0).unwrap(), kv.eval(0.0, vb).unwrap());
        let (dh, dk) = (1.0 + 3.0 * p * ub * ub, 1.0 + 3.0 * q * vb * vb);
        let (f, g) = (f_at(&c, u, v), f_at(&sub, ub, vb));
        prop_assert!((g.f1 - dk * f.f1).abs() < 1e-9 && (g.f3 - dk * f.f3).abs() < 1e-9);
        prop_assert!((g.f2 - dh * f.f2).abs() < 1e-9 && (g.f4 - dh * f.f4).abs() < 1e-9);
        let l = Lattice::new(3, 3, sub.domain).unwrap();
        let lo = Lattice::new(3, 3, Rect::new(
            hu.eval(-0.3, 0.0).unwrap(), hu.eval(0.3, 0.0).unwrap(),
            kv.eval(0.0, -0.3).unwrap(), kv.eval(0.0, 0.3).unwrap())).unwrap();
        let r = phi_psi(&sub, &l, (0.0, 0.0), ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
        let o = phi_psi(&c, &lo, (0.0, 0.0), ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
        for i in 0..3 {
            let x = r.u_samples[i];
            prop_assert!((r.phi[i] - o.phi[i] * (1.0 + 3.0 * p * x * x)).abs() < 1e-7);
            let y = r.v_samples[i];
            prop_assert!((r.psi[i] - o.psi[i] * (1.0 + 3.0 * q * y * y)).abs() < 1e-7);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn canonizing_twice_is_the_identity(u0 in -0.2f64..0.2, v0 in -0.2f64..0.2) {
        let s = arc_chart("example3_rotated");
        let l = Lattice::new(5, 5, Rect::new(-0.4, 0.4, -0.4, 0.4)).unwrap();
        let first = canonize_transform(s, &l, (u0, v0), ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
        prop_assert!(first.after.is_canonical && first.after.max_deviation < 1e-6);
        let base = (first.chart.u_map.forward(u0).unwrap(), first.chart.v_map.forward(v0).unwrap());
        let again = Arc::new(first.chart.clone());
        let second = canonize_transform(again, &first.lattice, base, ScaleConstants::default(), Convention::Separate, &tol()).unwrap();
        for k in 0..5 {
            let t = first.lattice.u(k);
            let x = second.chart.u_map.forward(t).unwrap();
            prop_assert!((x - t).abs() < 1e-8, "{t} -> {x}");
            let t = first.lattice.v(k);
            let y = second.chart.v_map.forward(t).unwrap();
            prop_assert!((y - t).abs() < 1e-8, "{t} -> {y}");
        }
    }
}

// ---- reconstruction ----

fn manufactured_error(n: usize, a: f64, b: f64) -> f64 {
    let exact = |u: f64, v: f64| ((a * v * u.sin()).exp(), 2.0 + (b * u * v).cos());
    let l = square(n, -1.0, 1.0);
    let f: Vec<_> = l
        .points()
        .into_iter()
        .map(|(u, v)| FFields {
            f1: a * u.sin(),
            f2: 0.0,
            f3: 0.0,
            f4: -b * v * (b * u * v).sin() / (2.0 + (b * u * v).cos()),
            denom: 1.0,
        })
        .collect();
    let c = (n - 1) / 2;
    let g1: Vec<f64> = l.us().iter().map(|&u| exact(u, 0.0).0).collect();
    let g2: Vec<f64> = l.vs().iter().map(|&v| exact(0.0, v).1).collect();
    let (p, q) = solve_cauchy(&f, &l, (c, c), &g1, &g2).unwrap();
    max_abs(l.points().into_iter().enumerate().flat_map(|(k, (u, v))| {
        let (x, y) = exact(u, v);
        [p[k] - x, q[k] - y]
    }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn cauchy_error_falls_with_the_mesh(a in 0.5f64..1.5, b in 0.5f64..1.5) {
        let e = [11, 21, 41, 81].map(|n| manufactured_error(n, a, b));
        for w in e.windows(2) {
            prop_assert!(w[0] / w[1] >= 3.0, "{e:?}");
        }
    }

    #[test]
    fn homothetic_data_gives_homothetic_surface(alpha in 0.5f64..2.0) {
        let l = square(21, -1.0, 1.0);
        let e = ["1", "1", "0", "1"].map(|s| parse(s).unwrap());
        let c = -alpha.ln();
        let d = DeterminingData::new(FieldSource::Expressions(Box::new(e)), l, (0.0, 0.0))
            .scaled(1.0 / alpha)
            .with_constants(c, c);
        let r = reconstruct(&d, &ReconstructOptions::default(), &tol()).unwrap();
        let target: Vec<Vec4<f64>> = example1_grid(&l).into_iter().map(|p| p.scale(alpha)).collect();
        let m = align_rigid(&r.grid.positions, &target).unwrap();
        prop_assert!(m.rms < 1e-4, "{}", m.rms);
        prop_assert!(r.grid.max_gram_deviation < 1e-8);
    }
}

fn round_trip(s: &CatalogSurface, n: usize) -> (f64, f64, f64, f64) {
    let c = Arc::new(s.chart::<f64>().unwrap());
    let l = Lattice::new(n, n, c.domain).unwrap();
    let d = DeterminingData::from_surface(c.clone(), l, s.base, &tol()).unwrap();
    let r = reconstruct(&d, &ReconstructOptions::default(), &tol()).unwrap();
    let m = align_rigid(&r.grid.positions, &positions(c.as_ref(), &l)).unwrap();
    let positive = r.grid.phi.iter().chain(&r.grid.psi).all(|&x| x > 0.0);
    assert!(positive, "{}", s.name);
    (m.rms, r.compat_max, r.grid.commutation, r.grid.max_gram_deviation)
}

#[test]
fn canonical_catalog_charts_round_trip() {
    for s in canonical_charts() {
        let (rms, compat, commutation, gram) = round_trip(s, 41);
        assert!(rms < 1e-4, "{}: rms {rms}", s.name);
        assert!(compat < 1e-6, "{}: compat {compat}", s.name);
        assert!(commutation < 1e-6, "{}: commutation {commutation}", s.name);
        assert!(gram < 1e-8, "{}: gram {gram}", s.name);
    }
}

#[test]
fn oriented_catalog_charts_are_principal() {
    for s in frame_charts() {
        let c = s.chart::<f64>().unwrap();
        let l = Lattice::new(5, 5, c.domain).unwrap();
        assert!(is_principal(&c, &l, &tol()).unwrap().principal, "{}", s.name);
        assert_eq!(c.orientation, Orientation::from_sign(s.orientation).unwrap());
    }
}
