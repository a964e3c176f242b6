#![allow(dead_code, clippy::neg_cmp_op_on_partial_ord)]

use dupin_core::{
    conservation_vector, gauss_codazzi_residuals, inner, jet_eval, weingarten_lambdas, Axis,
    DupinSurface, Point,
};

/// Worst values of the Dupin invariants over a grid.
#[derive(Debug, Default, Clone, Copy)]
pub struct Invariants {
    pub g12: f64,
    pub isothermic: f64,
    pub conformal: f64,
    pub unit_normal: f64,
    pub weingarten_defect: f64,
    pub dupin: f64,
    pub gauss_codazzi: f64,
    pub lambda_match: f64,
    pub conservation: f64,
}

pub fn measure(d: &DupinSurface, n: usize) -> Invariants {
    let s = &d.surface;
    let sig = s.sig();
    let mut m = Invariants::default();
    let q0 = conservation_vector(d, [0.0, 0.0]);
    for p in s.domain().grid(n, n) {
        let j = jet_eval(s, p, 2).unwrap();
        let (l1, l2) = d.pair.lambdas(p);
        let (nv, n1, n2) = s.normal_partials(p).unwrap();
        let g11 = inner(j.x1, j.x1, sig);
        let g22 = inner(j.x2, j.x2, sig);
        bump(&mut m.g12, inner(j.x1, j.x2, sig));
        bump(&mut m.isothermic, sig.e1() * g11 - sig.e2() * g22);
        bump(&mut m.conformal, g11 - sig.e1() / (l2 - l1).powi(2));
        bump(&mut m.unit_normal, inner(nv, nv, sig) - sig.e3());
        bump(&mut m.weingarten_defect, (n1 - j.x1 * l1).norm_inf());
        bump(&mut m.weingarten_defect, (n2 - j.x2 * l2).norm_inf());
        let [lj1, lj2] = s.lambda_jets(p, 1).unwrap();
        bump(&mut m.dupin, lj1.partial(1, 0));
        bump(&mut m.dupin, lj2.partial(0, 1));
        bump(
            &mut m.gauss_codazzi,
            gauss_codazzi_residuals(s, p).unwrap().max_abs(),
        );
        let w = weingarten_lambdas(&j, n1, n2, sig).unwrap();
        bump(&mut m.lambda_match, w.lambda1 - l1);
        bump(&mut m.lambda_match, w.lambda2 - l2);
        bump(
            &mut m.conservation,
            (conservation_vector(d, p) - q0).norm_inf(),
        );
    }
    m
}

pub fn bump(acc: &mut f64, v: f64) {
    let a = v.abs();
    if !(a <= *acc) {
        *acc = if a.is_nan() { f64::INFINITY } else { a };
    }
}

pub fn max_over(points: impl IntoIterator<Item = Point>, f: impl Fn(Point) -> f64) -> f64 {
    let mut acc = 0.0;
    for p in points {
        bump(&mut acc, f(p));
    }
    acc
}

pub const U1: Axis = Axis::U1;
