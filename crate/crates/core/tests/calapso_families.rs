mod common;

use std::f64::consts::SQRT_2;

use common::{bump, max_over};
use dupin_core::*;

const FAMILIES: [Preset; 3] = [Preset::Ex1A, Preset::Ex2A, Preset::Ex3A];

fn built(p: Preset) -> DupinSurface {
    build_dupin(&preset_surface(p).unwrap()).unwrap()
}

fn jet_residual(w: &ScalarField, q: Point, sig: Signature) -> f64 {
    calapso_residual(w, q, sig, Method::Jet).unwrap().value
}

fn fd_residual(w: &ScalarField, q: Point, sig: Signature) -> Residual {
    calapso_residual(w, q, sig, Method::Fd { h: 1e-2 }).unwrap()
}

fn interior(d: Domain, margin: f64) -> Domain {
    Domain::new(
        [d.lo[0] + margin, d.lo[1] + margin],
        [d.hi[0] - margin, d.hi[1] - margin],
    )
    .unwrap()
}

fn proposition_for(p: Preset) -> Proposition {
    match p {
        Preset::Ex1A => Proposition::Prop2,
        Preset::Ex2A => Proposition::Prop3,
        _ => Proposition::Prop4,
    }
}

#[test]
fn surface_fields_solve_the_equation() {
    for p in Preset::ALL {
        let d = built(p);
        let pair = omega_from_surface(&d.surface).unwrap();
        let grid = d.surface.domain().grid(21, 21);
        for (name, w) in [("omega", &pair.omega), ("Omega", &pair.big_omega)] {
            let r = max_over(grid.iter().copied(), |q| jet_residual(w, q, d.spec.sig));
            assert!(r < 1e-9, "{p} {name}: {r}");
        }
    }
}

#[test]
fn corollary_fields_solve_the_equation_by_both_methods() {
    for p in Preset::ALL {
        let d = built(p);
        let sig = d.spec.sig;
        let pair = corollary1_pair(&d.pair, sig);
        for (name, w) in [("omega", &pair.omega), ("Omega", &pair.big_omega)] {
            let (mut jet, mut fd) = (0.0, 0.0);
            for q in d.spec.domain.grid(21, 21) {
                bump(&mut jet, jet_residual(w, q, sig));
                bump(&mut fd, fd_residual(w, q, sig).value);
            }
            assert!(jet < 1e-9, "{p} {name}: jet {jet}");
            assert!(fd < 1e-5, "{p} {name}: fd {fd}");
        }
        assert_eq!(jet_residual(&pair.big_omega, [0.1, 0.2], sig), 0.0);
    }
}

#[test]
fn proposition_fields_solve_the_equation_by_both_methods() {
    for p in FAMILIES {
        let spec = preset_surface(p).unwrap();
        let w = proposition_field(proposition_for(p), &spec).unwrap();
        let (mut jet, mut fd) = (0.0, 0.0);
        for q in spec.domain.grid(21, 21) {
            bump(&mut jet, jet_residual(&w, q, spec.sig));
            bump(&mut fd, fd_residual(&w, q, spec.sig).value);
        }
        assert!(jet < 1e-9, "{p}: jet {jet}");
        assert!(fd < 1e-5, "{p}: fd {fd}");
    }
}

#[test]
fn finite_differences_agree_with_jets_within_their_error_estimate() {
    for p in Preset::ALL {
        let d = built(p);
        let sig = d.spec.sig;
        let mut fields = vec![];
        let c1 = corollary1_pair(&d.pair, sig);
        fields.extend([c1.omega, c1.big_omega]);
        let s = omega_from_surface(&d.surface).unwrap();
        fields.extend([s.omega, s.big_omega]);
        if let Ok(w) = proposition_field(proposition_for(p), &d.spec) {
            fields.push(w);
        }
        // The stencil reaches 4h beyond the point; keep it on the surface.
        let grid = interior(d.spec.domain, 0.05).grid(9, 9);
        for (k, w) in fields.iter().enumerate() {
            for &q in &grid {
                let jet = jet_residual(w, q, sig);
                let fd = fd_residual(w, q, sig);
                assert!(
                    (jet - fd.value).abs() < 10.0 * fd.error_estimate,
                    "{p} field {k} at {q:?}: jet {jet}, fd {fd:?}"
                );
            }
        }
    }
}

#[test]
fn negating_a_field_leaves_the_residual_unchanged() {
    let product = ScalarField::from_expr(|u1, u2| u1 * u2 + 5.0);
    for p in Preset::ALL {
        let d = built(p);
        let sig = d.spec.sig;
        let c1 = corollary1_pair(&d.pair, sig);
        for w in [c1.omega, c1.big_omega, product.clone()] {
            let neg = w.neg();
            for q in d.spec.domain.grid(5, 5) {
                for method in [Method::Jet, Method::Fd { h: 1e-2 }] {
                    let a = calapso_residual(&w, q, sig, method).unwrap();
                    let b = calapso_residual(&neg, q, sig, method).unwrap();
                    assert_eq!(a.value.to_bits(), b.value.to_bits(), "{p} {q:?}");
                }
            }
        }
    }
}

#[test]
fn cylinders_have_constant_fields() {
    for p in [Preset::CylinderEuclidean, Preset::CylinderLorentz] {
        let d = built(p);
        let e1 = d.spec.sig.e1();
        let pair = omega_from_surface(&d.surface).unwrap();
        for q in d.spec.domain.grid(21, 21) {
            assert!(
                (pair.omega.value(q) - e1 * SQRT_2 / 2.0).abs() < 1e-12,
                "{p}"
            );
            assert!(
                (pair.big_omega.value(q) + e1 * SQRT_2 / 2.0).abs() < 1e-12,
                "{p}"
            );
        }
    }
}

#[test]
fn skew_field_has_unit_modulus_everywhere() {
    for p in Preset::ALL {
        let d = built(p);
        let pair = omega_from_surface(&d.surface).unwrap();
        let worst = max_over(d.spec.domain.grid(21, 21), |q| {
            pair.big_omega.value(q).abs() - SQRT_2 / 2.0
        });
        assert!(worst < 1e-12, "{p}: {worst}");
    }
}

#[test]
fn literal_formulas_match_the_surface_up_to_one_sign() {
    for p in FAMILIES {
        let d = built(p);
        let literal = proposition_field(proposition_for(p), &d.spec).unwrap();
        let derived = omega_from_surface(&d.surface).unwrap().omega;
        let grid = d.spec.domain.grid(21, 21);
        let same = max_over(grid.iter().copied(), |q| {
            literal.value(q) - derived.value(q)
        });
        let flipped = max_over(grid.iter().copied(), |q| {
            literal.value(q) + derived.value(q)
        });
        assert!(same.min(flipped) < 1e-12, "{p}: {same} / {flipped}");
    }
}

#[test]
fn printed_b1_zero_formula_is_not_the_surface_field() {
    let d = built(Preset::Ex1A);
    let printed = printed_prop2_field(&d.spec).unwrap();
    let derived = omega_from_surface(&d.surface).unwrap().omega;
    let grid = d.spec.domain.grid(21, 21);
    let same = max_over(grid.iter().copied(), |q| {
        printed.value(q) - derived.value(q)
    });
    let flipped = max_over(grid.iter().copied(), |q| {
        printed.value(q) + derived.value(q)
    });
    assert!(same.min(flipped) > 1.0, "{same} / {flipped}");
    let r = max_over(grid, |q| jet_residual(&printed, q, d.spec.sig));
    assert!(r > 1e-3, "{r}");
}

#[test]
fn proposition_values_at_sample_points() {
    let ex1 = preset_surface(Preset::Ex1A).unwrap();
    let w = proposition_field(Proposition::Prop2, &ex1).unwrap();
    assert!((w.value([0.0, 0.0]) - 5.0 * SQRT_2 / 2.0).abs() < 1e-14);

    let ex2 = preset_surface(Preset::Ex2A).unwrap();
    let w = proposition_field(Proposition::Prop3, &ex2).unwrap();
    let (l1, l2) = curvature_pair(&ex2).unwrap().lambdas([0.0, 0.0]);
    let expect = SQRT_2 * (l1 + l2) / (2.0 * (l2 - l1));
    assert!((w.value([0.0, 0.0]).abs() - expect.abs()).abs() < 1e-12);

    let ex3 = preset_surface(Preset::Ex3A).unwrap();
    let w = proposition_field(Proposition::Prop4, &ex3).unwrap();
    let (l1, l2) = (-SQRT_2 / 2.0, 1f64.cosh() - SQRT_2);
    let expect = SQRT_2 * (l1 + l2) / (2.0 * (l2 - l1));
    assert!((w.value([1.0, 0.0]).abs() - expect.abs()).abs() < 1e-12);
}

#[test]
fn propositions_reject_other_cases() {
    let ex1 = preset_surface(Preset::Ex1A).unwrap();
    for which in [Proposition::Prop3, Proposition::Prop4] {
        assert!(matches!(
            proposition_field(which, &ex1),
            Err(Error::CaseMismatch { found: "ex1", .. })
        ));
    }
    assert!(printed_prop2_field(&preset_surface(Preset::Ex3A).unwrap()).is_err());
}

fn holomorphic_cases() -> Vec<(Vec<f64>, Sign)> {
    let mut out = vec![];
    for eps2 in [Sign::Plus, Sign::Minus] {
        for c in [vec![0.0, 1.0], vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]] {
            out.push((c, eps2));
        }
    }
    out
}

fn chart_sig(eps2: Sign) -> Signature {
    Signature {
        eps1: Sign::Plus,
        eps2,
        eps3: Sign::Plus,
    }
}

fn jet_domain(eps2: Sign) -> Domain {
    match eps2 {
        Sign::Plus => Domain::square(1.0),
        // Stays clear of the singular set |u₂|² = 1 + |u₁|² of f = z.
        Sign::Minus => Domain::new([-1.0, -0.5], [1.0, 0.5]).unwrap(),
    }
}

#[test]
fn holomorphic_fields_solve_the_equation_with_jets() {
    for (c, eps2) in holomorphic_cases() {
        let f = HolomorphicFn::from_real_coeffs(&c, eps2).unwrap();
        let w = holomorphic_omega(&f).unwrap();
        let mut worst = 0.0;
        let mut used = 0;
        for q in jet_domain(eps2).grid(21, 21) {
            let Ok(sig) = f.chart_signature(q, Sign::Plus) else {
                continue;
            };
            used += 1;
            bump(&mut worst, jet_residual(&w, q, sig));
        }
        assert!(used > 380, "{c:?} {eps2:?}: only {used} admissible points");
        assert!(worst < 1e-8, "{c:?} {eps2:?}: {worst}");
    }
}

#[test]
fn timelike_derivative_region_needs_the_chart_signature() {
    // For ε₂ = −1 and f = z², ⟨f′,f′⟩ = 4(u₁² − u₂²) < 0 at (0.2, 0.5): the
    // chart's first form is negative in the u₁ direction there.
    let f = HolomorphicFn::from_real_coeffs(&[0.0, 0.0, 1.0], Sign::Minus).unwrap();
    let w = holomorphic_omega(&f).unwrap();
    let q = [0.2, 0.5];
    let own = f.chart_signature(q, Sign::Plus).unwrap();
    assert_eq!(own, Signature::new(-1, 1, 1).unwrap());
    assert!(jet_residual(&w, q, own).abs() < 1e-9);
    assert!(jet_residual(&w, q, chart_sig(Sign::Minus)).abs() > 1.0);
}

#[test]
fn holomorphic_fields_solve_the_equation_with_differences() {
    for (c, eps2) in holomorphic_cases() {
        let f = HolomorphicFn::from_real_coeffs(&c, eps2).unwrap();
        let w = holomorphic_omega(&f).unwrap();
        // Away from the critical points of f and, for ε₂ = −1, the light cone.
        let d = match eps2 {
            Sign::Plus => Domain::new([0.5, -0.5], [1.0, 0.5]).unwrap(),
            Sign::Minus => Domain::new([0.5, -0.3], [1.0, 0.3]).unwrap(),
        };
        let mut worst = 0.0;
        for q in d.grid(21, 21) {
            f.admissible(q, Sign::Plus).unwrap();
            let r = fd_residual(&w, q, chart_sig(eps2));
            let jet = jet_residual(&w, q, chart_sig(eps2));
            assert!((jet - r.value).abs() < 10.0 * r.error_estimate);
            bump(&mut worst, r.value);
        }
        assert!(worst < 1e-5, "{c:?} {eps2:?}: {worst}");
    }
}

#[test]
fn holomorphic_functions_satisfy_cauchy_riemann() {
    // u,₁ = v,₂ and u,₂ = −ε₂v,₁.
    let h = 1e-5;
    for (c, eps2) in holomorphic_cases() {
        let f = HolomorphicFn::from_real_coeffs(&c, eps2).unwrap();
        let e2 = eps2.to_f64();
        for q in Domain::square(1.0).grid(7, 7) {
            let d = |k: usize| {
                let mut a = q;
                let mut b = q;
                a[k] += h;
                b[k] -= h;
                let (fa, _) = f.eval(a);
                let (fb, _) = f.eval(b);
                ((fa.re - fb.re) / (2.0 * h), (fa.im - fb.im) / (2.0 * h))
            };
            let (u1, v1) = d(0);
            let (u2, v2) = d(1);
            assert!((u1 - v2).abs() < 1e-8, "{c:?} {eps2:?} {q:?}");
            assert!((u2 + e2 * v1).abs() < 1e-8, "{c:?} {eps2:?} {q:?}");
            let (_, fp) = f.eval(q);
            assert!((fp.re - u1).abs() < 1e-8 && (fp.im - v1).abs() < 1e-8);
        }
    }
}

#[test]
fn sphere_chart_lies_on_the_quadric_conformally() {
    for eps2 in [Sign::Plus, Sign::Minus] {
        let f = HolomorphicFn::from_real_coeffs(&[0.0, 1.0], eps2).unwrap();
        let s = sphere_map(&f, Sign::Plus, Domain::square(0.5)).unwrap();
        let sig = s.sig();
        let (mut on, mut conf) = (0.0, 0.0);
        for q in s.domain().grid(21, 21) {
            let j = jet_eval(&s, q, 1).unwrap();
            bump(&mut on, inner(j.x, j.x, sig) - 1.0);
            let (v, fp) = f.eval(q);
            let factor = 4.0 * fp.norm_sq() / (1.0 + v.norm_sq()).powi(2);
            let g11 = inner(j.x1, j.x1, sig);
            bump(&mut conf, inner(j.x1, j.x2, sig));
            bump(&mut conf, g11 - factor);
            bump(&mut conf, inner(j.x2, j.x2, sig) - sig.e2() * g11);
        }
        assert!(on < 1e-12, "{eps2:?}: {on}");
        assert!(conf < 1e-9, "{eps2:?}: {conf}");
    }
}

#[test]
fn sphere_chart_with_timelike_axis_is_a_pseudo_sphere() {
    let f = HolomorphicFn::from_real_coeffs(&[0.0, 0.5], Sign::Plus).unwrap();
    let s = sphere_map(&f, Sign::Minus, Domain::square(0.5)).unwrap();
    for q in s.domain().grid(11, 11) {
        let x = s.position().value(q);
        assert!((inner(x, x, s.sig()) + 1.0).abs() < 1e-12);
    }
    // |f|² = 1 on the unit circle: the chart through it is singular.
    let f = HolomorphicFn::from_real_coeffs(&[0.0, 1.0], Sign::Plus).unwrap();
    assert_eq!(
        sphere_map(&f, Sign::Minus, Domain::square(1.0)).err(),
        Some(Error::SingularChart)
    );
}

#[test]
fn degenerate_holomorphic_data_is_rejected() {
    let f = HolomorphicFn::from_real_coeffs(&[3.0], Sign::Minus).unwrap();
    assert_eq!(
        holomorphic_omega(&f).err(),
        Some(Error::ConstantHolomorphic)
    );
    let z2 = HolomorphicFn::from_real_coeffs(&[0.0, 0.0, 1.0], Sign::Minus).unwrap();
    assert_eq!(
        z2.admissible([0.5, 0.5], Sign::Plus),
        Err(Error::LightlikeDerivative)
    );
    assert!(z2.admissible([0.5, 0.2], Sign::Plus).is_ok());
}
