//! Closed-form ε-isothermic Dupin surfaces.
//!
//! Every non-cylindrical surface is assembled from a curvature pair
//! `λ₂ = h₁(u₁)`, `λ₁ = h₂(u₂)` solving
//!
//! ```text
//! h₁″ = ε₁b₁h₁ + c₁,    h₂″ = −ε₂(1+b₁)h₂ − ε₁ε₂c₁,
//! ```
//!
//! and two curves `Gᵢ` with `Gᵢ″ − κᵢGᵢ = vᵢ`, `Gᵢ(0) = e₃`, `Gᵢ′(0) = eᵢ`, as
//! `X = (G₂ − G₁)/(h₁ − h₂)`, `N = (h₁G₂ − h₂G₁)/(h₁ − h₂)`.
//!
//! The `b₂`-branch cases are the same system with `b₁ = −(1+b₂)` and
//! `c₁ = −ε₁ε₂c₂`; their `b`, `c` constants are `b₂`, `c₂`.

use std::fmt;
use std::str::FromStr;

use crate::diffgeo::Surface;
use crate::error::{Error, Result};
use crate::field::{Domain, Point, ScalarField, VectorField};
use crate::jet::{Axis, Jet};
use crate::pseudo_metric::{Signature, Vec3E};

/// Admissibility threshold for constraint residuals.
pub const CONSTRAINT_TOL: f64 = 1e-12;

/// Minimum `|h₁ − h₂|` accepted on a domain.
pub const UMBILIC_MARGIN: f64 = 1e-8;

const UMBILIC_SAMPLES: usize = 2001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DupinCase {
    /// Constant principal curvatures `λ₁ = c`, `λ₂ = 0`.
    Cylinder,
    /// `b₁ = 0`: polynomial `λ₂`.
    Ex1,
    /// `−1 < b₁ < 0`.
    Ex2,
    /// `b₁ > 0`.
    Ex3,
    /// `b₂ = 0`: polynomial `λ₁`.
    B2Zero,
    /// `b₂ ∉ {0, −1}` with real exponentials in both variables.
    B2General,
}

impl DupinCase {
    pub const ALL: [DupinCase; 6] = [
        DupinCase::Cylinder,
        DupinCase::Ex1,
        DupinCase::Ex2,
        DupinCase::Ex3,
        DupinCase::B2Zero,
        DupinCase::B2General,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            DupinCase::Cylinder => "cylinder",
            DupinCase::Ex1 => "ex1",
            DupinCase::Ex2 => "ex2",
            DupinCase::Ex3 => "ex3",
            DupinCase::B2Zero => "b2-zero",
            DupinCase::B2General => "b2-general",
        }
    }
}

impl fmt::Display for DupinCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DupinCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DupinCase::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantName {
    C,
    B,
    A11,
    A12,
    A21,
    A22,
}

impl ConstantName {
    pub const ALL: [ConstantName; 6] = [
        ConstantName::C,
        ConstantName::B,
        ConstantName::A11,
        ConstantName::A12,
        ConstantName::A21,
        ConstantName::A22,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstantName::C => "c",
            ConstantName::B => "b",
            ConstantName::A11 => "a11",
            ConstantName::A12 => "a12",
            ConstantName::A21 => "a21",
            ConstantName::A22 => "a22",
        }
    }
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstantName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ConstantName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownConstant(s.to_string()))
    }
}

/// The constants of a classified surface.
///
/// `a·1` multiplies the odd basis function of its variable (`sin`, `sinh`,
/// `u`, or `e^{ru}` in the general `b₂` case), `a·2` the even one (`cos`,
/// `cosh`, `1`, or `e^{−ru}`). The first index is the variable.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Constants {
    pub c: f64,
    pub b: f64,
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Constants {
    pub fn get(&self, name: ConstantName) -> f64 {
        match name {
            ConstantName::C => self.c,
            ConstantName::B => self.b,
            ConstantName::A11 => self.a11,
            ConstantName::A12 => self.a12,
            ConstantName::A21 => self.a21,
            ConstantName::A22 => self.a22,
        }
    }

    pub fn set(&mut self, name: ConstantName, value: f64) {
        *match name {
            ConstantName::C => &mut self.c,
            ConstantName::B => &mut self.b,
            ConstantName::A11 => &mut self.a11,
            ConstantName::A12 => &mut self.a12,
            ConstantName::A21 => &mut self.a21,
            ConstantName::A22 => &mut self.a22,
        } = value;
    }

    pub fn with(mut self, name: ConstantName, value: f64) -> Constants {
        self.set(name, value);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DupinSpec {
    pub case: DupinCase,
    pub sig: Signature,
    pub constants: Constants,
    pub domain: Domain,
}

impl DupinSpec {
    pub fn new(case: DupinCase, sig: Signature, constants: Constants, domain: Domain) -> Self {
        DupinSpec {
            case,
            sig,
            constants,
            domain,
        }
    }

    pub fn with_constant(mut self, name: ConstantName, value: f64) -> Self {
        self.constants.set(name, value);
        self
    }

    /// `h₁(0) − h₂(0)`; must be nonzero for the frame at the origin to exist.
    pub fn m1(&self) -> Result<f64> {
        let (p1, p2) = profiles(self)?;
        Ok(p1.value(0.0) - p2.value(0.0))
    }
}

/// Solution family of `y″ = κy` used for one principal curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    /// `κ = 0`: odd `t`, even `1`.
    Poly,
    /// `κ = −r²`: `sin rt`, `cos rt`.
    Trig(f64),
    /// `κ = r²`: `sinh rt`, `cosh rt`.
    Hyperbolic(f64),
    /// `κ = r²`: `e^{rt}`, `e^{−rt}`.
    Exponential(f64),
}

impl Basis {
    pub fn odd(&self, t: Jet) -> Jet {
        match *self {
            Basis::Poly => t,
            Basis::Trig(r) => (t * r).sin(),
            Basis::Hyperbolic(r) => (t * r).sinh(),
            Basis::Exponential(r) => (t * r).exp(),
        }
    }

    pub fn even(&self, t: Jet) -> Jet {
        match *self {
            Basis::Poly => Jet::constant(1.0, t.order()),
            Basis::Trig(r) => (t * r).cos(),
            Basis::Hyperbolic(r) => (t * r).cosh(),
            Basis::Exponential(r) => (t * -r).exp(),
        }
    }
}

/// `h(t) = particular(t) + a_odd·odd(t) + a_even·even(t)` solving `h″ = κh + rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile {
    pub basis: Basis,
    pub kappa: f64,
    pub rhs: f64,
    pub a_odd: f64,
    pub a_even: f64,
}

impl Profile {
    fn new(kappa: f64, rhs: f64, a_odd: f64, a_even: f64, exponential: bool) -> Result<Profile> {
        let basis = if kappa == 0.0 {
            Basis::Poly
        } else if exponential {
            if kappa < 0.0 {
                return Err(Error::UseExampleForm(format!(
                    "exponent radicand {kappa} is negative"
                )));
            }
            Basis::Exponential(kappa.sqrt())
        } else if kappa > 0.0 {
            Basis::Hyperbolic(kappa.sqrt())
        } else {
            Basis::Trig((-kappa).sqrt())
        };
        Ok(Profile {
            basis,
            kappa,
            rhs,
            a_odd,
            a_even,
        })
    }

    pub fn particular(&self, t: Jet) -> Jet {
        match self.basis {
            Basis::Poly => t * t * (self.rhs / 2.0),
            _ => Jet::constant(-self.rhs / self.kappa, t.order()),
        }
    }

    pub fn homogeneous(&self, t: Jet) -> Jet {
        self.basis.odd(t) * self.a_odd + self.basis.even(t) * self.a_even
    }

    pub fn eval(&self, t: Jet) -> Jet {
        self.particular(t) + self.homogeneous(t)
    }

    pub fn value(&self, t: f64) -> f64 {
        self.eval(Jet::constant(t, 0)).value()
    }

    /// `(h, h′, h″)` at `t`.
    pub fn derivatives(&self, t: f64) -> [f64; 3] {
        let j = self.eval(Jet::variable(t, Axis::U1, 2));
        [j.value(), j.partial(1, 0), j.partial(2, 0)]
    }
}

/// `(b₁, c₁)` of the unified system, and whether exponential bases are used.
fn unified(spec: &DupinSpec) -> Result<(f64, f64, bool)> {
    let k = spec.constants;
    let eps = spec.sig.e();
    let invalid = |msg: &str| Err(Error::InvalidParameters(msg.to_string()));
    if spec.sig.e3() != 1.0 {
        return invalid("Dupin constructions require ε₃ = +1");
    }
    match spec.case {
        DupinCase::Cylinder => {
            if k.c == 0.0 || !k.c.is_finite() {
                return invalid("cylinder needs c ≠ 0");
            }
            Ok((-1.0, 0.0, false))
        }
        DupinCase::Ex1 => {
            if k.b != 0.0 {
                return invalid("ex1 requires b = 0");
            }
            Ok((0.0, k.c, false))
        }
        DupinCase::Ex2 => {
            if !(k.b > -1.0 && k.b < 0.0) {
                return invalid("ex2 requires −1 < b < 0");
            }
            Ok((k.b, k.c, false))
        }
        DupinCase::Ex3 => {
            if !(k.b > 0.0 && k.b.is_finite()) {
                return invalid("ex3 requires b > 0");
            }
            Ok((k.b, k.c, false))
        }
        DupinCase::B2Zero => {
            if k.b != 0.0 {
                return invalid("b2-zero requires b = 0");
            }
            Ok((-1.0, -eps * k.c, false))
        }
        DupinCase::B2General => {
            if k.b == 0.0 || k.b == -1.0 || !k.b.is_finite() {
                return invalid("b2-general requires b ∉ {0, −1}");
            }
            let r1 = -spec.sig.e1() * (1.0 + k.b);
            let r2 = spec.sig.e2() * k.b;
            if !(r1 > 0.0 && r2 > 0.0) {
                return Err(Error::UseExampleForm(format!(
                    "radicands −ε₁(1+b) = {r1} and ε₂b = {r2} must both be positive"
                )));
            }
            Ok((-(1.0 + k.b), -eps * k.c, true))
        }
    }
}

fn profiles(spec: &DupinSpec) -> Result<(Profile, Profile)> {
    let (b1, c1, exponential) = unified(spec)?;
    let sig = spec.sig;
    let k = spec.constants;
    let (a11, a12, a21, a22) = match spec.case {
        DupinCase::Cylinder => (0.0, 0.0, 0.0, k.c),
        _ => (k.a11, k.a12, k.a21, k.a22),
    };
    let p1 = Profile::new(sig.e1() * b1, c1, a11, a12, exponential)?;
    let p2 = Profile::new(
        -sig.e2() * (1.0 + b1),
        -sig.e1() * sig.e2() * c1,
        a21,
        a22,
        exponential,
    )?;
    Ok((p1, p2))
}

/// Left side of the case's admissibility constraint; zero means admissible.
pub fn constraint_residual(spec: &DupinSpec) -> f64 {
    let DupinSpec {
        sig, constants: k, ..
    } = *spec;
    let (e1, e2) = (sig.e1(), sig.e2());
    let sq = |x: f64| x * x;
    match spec.case {
        DupinCase::Cylinder => 0.0,
        DupinCase::Ex1 => {
            sq(k.a22) + e2 * sq(k.a21) + e1 * sq(k.a11) - 2.0 * e1 * k.c * k.a12 - sq(k.c)
        }
        DupinCase::Ex2 => {
            -k.b * (e1 * sq(k.a11) + sq(k.a12))
                + (e2 * sq(k.a21) + sq(k.a22)) * (1.0 + k.b)
                + sq(k.c) / (k.b * (k.b + 1.0))
        }
        DupinCase::Ex3 => {
            k.b * (e1 * sq(k.a11) - sq(k.a12))
                + (e2 * sq(k.a21) + sq(k.a22)) * (1.0 + k.b)
                + sq(k.c) / (k.b * (k.b + 1.0))
        }
        DupinCase::B2Zero => {
            sq(k.a12) + e1 * sq(k.a11) + e2 * sq(k.a21) - 2.0 * e2 * k.c * k.a22 - sq(k.c)
        }
        DupinCase::B2General => {
            sq(k.c) + 4.0 * k.b * (1.0 + k.b) * ((1.0 + k.b) * k.a11 * k.a12 - k.b * k.a21 * k.a22)
        }
    }
}

/// `λ₂ = h₁(u₁)` and `λ₁ = h₂(u₂)`.
#[derive(Debug, Clone)]
pub struct CurvaturePair {
    pub h1: ScalarField,
    pub h2: ScalarField,
    pub b1: f64,
    pub c1: f64,
    pub profile1: Profile,
    pub profile2: Profile,
}

impl CurvaturePair {
    fn from_profiles(b1: f64, c1: f64, profile1: Profile, profile2: Profile) -> CurvaturePair {
        CurvaturePair {
            h1: ScalarField::new(move |p, order| {
                profile1.eval(Jet::variable(p[0], Axis::U1, order))
            }),
            h2: ScalarField::new(move |p, order| {
                profile2.eval(Jet::variable(p[1], Axis::U2, order))
            }),
            b1,
            c1,
            profile1,
            profile2,
        }
    }

    /// `(λ₁, λ₂)` at `p`.
    pub fn lambdas(&self, p: Point) -> (f64, f64) {
        (self.profile2.value(p[1]), self.profile1.value(p[0]))
    }
}

/// Closed-form principal curvatures of an admissible spec.
pub fn curvature_pair(spec: &DupinSpec) -> Result<CurvaturePair> {
    let (b1, c1, _) = unified(spec)?;
    let r = constraint_residual(spec);
    if !(r.abs() < CONSTRAINT_TOL) {
        return Err(Error::ConstraintViolated(r));
    }
    let (p1, p2) = profiles(spec)?;
    Ok(CurvaturePair::from_profiles(b1, c1, p1, p2))
}

/// The case's ODE solutions without the compatibility check; for a violated
/// constraint these are not the curvatures of any surface.
pub fn curvature_pair_unchecked(spec: &DupinSpec) -> Result<CurvaturePair> {
    let (b1, c1, _) = unified(spec)?;
    let (p1, p2) = profiles(spec)?;
    Ok(CurvaturePair::from_profiles(b1, c1, p1, p2))
}

fn quadratic_roots(a: f64, b: f64, c: f64, scale: f64) -> Result<Vec<f64>> {
    let tiny = 1e-13 * scale;
    if a.abs() <= tiny {
        if b.abs() <= tiny {
            return if c.abs() <= tiny {
                Ok(vec![0.0])
            } else {
                Err(Error::Inadmissible)
            };
        }
        return Ok(vec![-c / b]);
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc >= -1e-12 * (b * b + (4.0 * a * c).abs()) {
            disc = 0.0;
        } else {
            return Err(Error::Inadmissible);
        }
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return Ok(vec![0.0]);
    }
    Ok(vec![q / a, c / q])
}

/// Sets `free` to a real root of the case constraint.
///
/// The smallest-magnitude root is chosen; between `±r` the positive one.
pub fn solve_constraint(spec: &DupinSpec, free: ConstantName) -> Result<DupinSpec> {
    let at = |x: f64| constraint_residual(&spec.with_constant(free, x));
    let probes = [at(0.0), at(1.0), at(-1.0), at(2.0)];
    if probes.iter().any(|r| !r.is_finite()) {
        return Err(Error::NotQuadratic(free.as_str()));
    }
    let [r0, r1, rm1, r2] = probes;
    let a = (r1 + rm1) / 2.0 - r0;
    let b = (r1 - rm1) / 2.0;
    let c = r0;
    let scale = 1.0 + probes.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    if (4.0 * a + 2.0 * b + c - r2).abs() > 1e-9 * scale {
        return Err(Error::NotQuadratic(free.as_str()));
    }
    let roots = quadratic_roots(a, b, c, scale)?;
    let mut best = roots[0];
    for &x in &roots[1..] {
        let tie = (x.abs() - best.abs()).abs() <= 1e-12 * (1.0 + x.abs());
        if (tie && x > best) || (!tie && x.abs() < best.abs()) {
            best = x;
        }
    }
    // Polish against cancellation in the probed coefficients.
    for _ in 0..2 {
        let slope = 2.0 * a * best + b;
        let r = at(best);
        if r.abs() < CONSTRAINT_TOL || slope == 0.0 {
            break;
        }
        best -= r / slope;
    }
    let solved = spec.with_constant(free, best);
    let r = constraint_residual(&solved);
    if !(r.abs() < CONSTRAINT_TOL) {
        return Err(Error::ConstraintViolated(r));
    }
    if solved.m1()?.abs() <= CONSTRAINT_TOL {
        return Err(Error::DegenerateM1);
    }
    Ok(solved)
}

/// `G(t) = C(t)·G₀ + S(t)·G₀′ + P(t)·v`, the solution of `G″ − κG = v`
/// with `G(0) = G₀`, `G′(0) = G₀′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCurve {
    pub kappa: f64,
    pub g0: Vec3E,
    pub g0p: Vec3E,
    pub v: Vec3E,
}

pub fn linear_ode_solution(kappa: f64, g0: Vec3E, g0p: Vec3E, v: Vec3E) -> OdeCurve {
    OdeCurve { kappa, g0, g0p, v }
}

impl OdeCurve {
    fn csp(&self, t: Jet) -> (Jet, Jet, Jet) {
        let k = self.kappa;
        if k == 0.0 {
            let one = Jet::constant(1.0, t.order());
            return (one, t, t * t * 0.5);
        }
        let r = k.abs().sqrt();
        let x = t * r;
        // P = (C − 1)/κ written without the cancellation near t = 0.
        if k > 0.0 {
            let s = (x * 0.5).sinh();
            (x.cosh(), x.sinh() / r, s * s * (2.0 / k))
        } else {
            let s = (x * 0.5).sin();
            (x.cos(), x.sin() / r, s * s * (2.0 / (r * r)))
        }
    }

    pub fn jet(&self, t: Jet) -> [Jet; 3] {
        let (c, s, p) = self.csp(t);
        let (a, b, v) = (self.g0.to_array(), self.g0p.to_array(), self.v.to_array());
        [0, 1, 2].map(|k| c * a[k] + s * b[k] + p * v[k])
    }

    /// `[G, G′, G″]` at `t`.
    pub fn derivatives(&self, t: f64) -> [Vec3E; 3] {
        let g = self.jet(Jet::variable(t, Axis::U1, 2));
        [0, 1, 2].map(|i| Vec3E::new(g[0].partial(i, 0), g[1].partial(i, 0), g[2].partial(i, 0)))
    }

    pub fn value(&self, t: f64) -> Vec3E {
        self.derivatives(t)[0]
    }
}

/// The curves `G₁(u₁)`, `G₂(u₂)` and the data defining them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameData {
    pub v1: Vec3E,
    pub v2: Vec3E,
    pub g1: OdeCurve,
    pub g2: OdeCurve,
    pub kappa1: f64,
    pub kappa2: f64,
}

/// A constructed surface together with the data it was built from.
#[derive(Debug, Clone)]
pub struct DupinSurface {
    pub spec: DupinSpec,
    pub pair: CurvaturePair,
    pub frame: FrameData,
    /// Position with the closed-form normal attached.
    pub surface: Surface,
}

fn sample_range(profile: &Profile, lo: f64, hi: f64) -> (f64, f64) {
    (0..UMBILIC_SAMPLES)
        .map(|i| profile.value(lo + (hi - lo) * i as f64 / (UMBILIC_SAMPLES - 1) as f64))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        })
}

fn check_umbilic_free(spec: &DupinSpec, p1: &Profile, p2: &Profile) -> Result<()> {
    let d = spec.domain;
    let (min1, max1) = sample_range(p1, d.lo[0], d.hi[0]);
    let (min2, max2) = sample_range(p2, d.lo[1], d.hi[1]);
    if !(min1.is_finite() && max1.is_finite() && min2.is_finite() && max2.is_finite()) {
        return Err(Error::NonFinite("principal curvatures"));
    }
    if min1 - max2 > UMBILIC_MARGIN || min2 - max1 > UMBILIC_MARGIN {
        Ok(())
    } else {
        Err(Error::UmbilicOnDomain)
    }
}

/// Builds the surface of an admissible spec.
pub fn build_dupin(spec: &DupinSpec) -> Result<DupinSurface> {
    curvature_pair(spec)?;
    build_dupin_unchecked(spec)
}

/// Like [`build_dupin`] but without the constraint check, for studying
/// perturbed constants. The result is generally not Dupin or isothermic.
pub fn build_dupin_unchecked(spec: &DupinSpec) -> Result<DupinSurface> {
    let (b1, c1, _) = unified(spec)?;
    let (p1, p2) = profiles(spec)?;
    let m1 = p1.value(0.0) - p2.value(0.0);
    if !(m1.abs() > CONSTRAINT_TOL) {
        return Err(Error::DegenerateM1);
    }
    check_umbilic_free(spec, &p1, &p2)?;
    let pair = CurvaturePair::from_profiles(b1, c1, p1, p2);
    let frame = frame_data(spec.sig, b1, &p1, &p2);
    let surface = match spec.case {
        DupinCase::Cylinder => cylinder_surface(spec),
        _ => assembled_surface(spec, &pair, &frame),
    };
    Ok(DupinSurface {
        spec: *spec,
        pair,
        frame,
        surface,
    })
}

fn frame_data(sig: Signature, b1: f64, p1: &Profile, p2: &Profile) -> FrameData {
    let (e1, e2) = (sig.e1(), sig.e2());
    let [h10, h1p, _] = p1.derivatives(0.0);
    let [h20, h2p, _] = p2.derivatives(0.0);
    let v1 = Vec3E::new(-e1 * h1p, -e2 * h2p, -h20 - b1 * (h20 - h10)) * (e1 / (h20 - h10));
    let v2 = v1 * (-e1 * e2);
    let kappa1 = e1 * b1;
    let kappa2 = e2 * -(1.0 + b1);
    FrameData {
        v1,
        v2,
        g1: linear_ode_solution(kappa1, Vec3E::E3, Vec3E::E1, v1),
        g2: linear_ode_solution(kappa2, Vec3E::E3, Vec3E::E2, v2),
        kappa1,
        kappa2,
    }
}

fn assembled_surface(spec: &DupinSpec, pair: &CurvaturePair, frame: &FrameData) -> Surface {
    let (p1, p2, g1, g2) = (pair.profile1, pair.profile2, frame.g1, frame.g2);
    let parts = move |p: Point, order: usize| {
        let (u1, u2) = Jet::variables(p, order);
        (p1.eval(u1), p2.eval(u2), g1.jet(u1), g2.jet(u2))
    };
    let position = VectorField::new(move |p, order| {
        let (h1, h2, a, b) = parts(p, order);
        let inv = (h1 - h2).recip();
        [0, 1, 2].map(|k| (b[k] - a[k]) * inv)
    });
    let normal = VectorField::new(move |p, order| {
        let (h1, h2, a, b) = parts(p, order);
        let inv = (h1 - h2).recip();
        [0, 1, 2].map(|k| (h1 * b[k] - h2 * a[k]) * inv)
    });
    Surface::new(position, spec.domain, spec.sig).with_normal(normal)
}

/// `X = (1/c)(S(u₁), u₂, C(u₁) − 1)`, `N = (S(u₁), 0, C(u₁))` with
/// `S, C = sin, cos` for `ε₁ = 1` and `sinh, cosh` for `ε₁ = −1`.
fn cylinder_surface(spec: &DupinSpec) -> Surface {
    let c = spec.constants.c;
    let lorentz = spec.sig.e1() < 0.0;
    let sc = move |u: Jet| {
        if lorentz {
            (u.sinh(), u.cosh())
        } else {
            (u.sin(), u.cos())
        }
    };
    let position = VectorField::from_expr(move |u1, u2| {
        let (s, co) = sc(u1);
        [s / c, u2 / c, (co - 1.0) / c]
    });
    let normal = VectorField::from_expr(move |u1, _| {
        let (s, co) = sc(u1);
        [s, co * 0.0, co]
    });
    Surface::new(position, spec.domain, spec.sig).with_normal(normal)
}

/// `v₁h₂ + ε₁(1+b₁)h₂G₂ + c₁G₂ + εh₂′G₂′ − v₁h₁ − ε₁b₁h₁G₁ − c₁G₁ + h₁′G₁′`,
/// constant in `(u₁, u₂)` for every admissible construction.
pub fn conservation_vector(d: &DupinSurface, p: Point) -> Vec3E {
    let (e1, eps) = (d.spec.sig.e1(), d.spec.sig.e());
    let (b1, c1) = (d.pair.b1, d.pair.c1);
    let [h1, h1p, _] = d.pair.profile1.derivatives(p[0]);
    let [h2, h2p, _] = d.pair.profile2.derivatives(p[1]);
    let [g1, g1p, _] = d.frame.g1.derivatives(p[0]);
    let [g2, g2p, _] = d.frame.g2.derivatives(p[1]);
    let v1 = d.frame.v1;
    v1 * h2 + g2 * (e1 * (1.0 + b1) * h2) + g2 * c1 + g2p * (eps * h2p)
        - v1 * h1
        - g1 * (e1 * b1 * h1)
        - g1 * c1
        + g1p * h1p
}

/// The catalogued specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    CylinderEuclidean,
    CylinderLorentz,
    Ex1A,
    Ex2A,
    Ex3A,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::CylinderEuclidean,
        Preset::CylinderLorentz,
        Preset::Ex1A,
        Preset::Ex2A,
        Preset::Ex3A,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::CylinderEuclidean => "cylinder-euclidean",
            Preset::CylinderLorentz => "cylinder-lorentz",
            Preset::Ex1A => "ex1-a",
            Preset::Ex2A => "ex2-a",
            Preset::Ex3A => "ex3-a",
        }
    }

    /// The preset's spec before solving, and the constant solved for.
    pub fn family(self) -> (DupinSpec, Option<ConstantName>) {
        let euclid = Signature::EUCLIDEAN;
        let zero = Constants::default();
        let rect = |lo: [f64; 2], hi: [f64; 2]| Domain { lo, hi };
        match self {
            Preset::CylinderEuclidean => (
                DupinSpec::new(
                    DupinCase::Cylinder,
                    euclid,
                    Constants { c: 1.0, ..zero },
                    Domain::square(2.0),
                ),
                None,
            ),
            Preset::CylinderLorentz => (
                DupinSpec::new(
                    DupinCase::Cylinder,
                    Signature {
                        eps1: crate::pseudo_metric::Sign::Minus,
                        ..euclid
                    },
                    Constants { c: 1.0, ..zero },
                    rect([-1.0, -2.0], [1.0, 2.0]),
                ),
                None,
            ),
            Preset::Ex1A => (
                DupinSpec::new(
                    DupinCase::Ex1,
                    euclid,
                    Constants {
                        c: 1.0,
                        a22: 2.0,
                        ..zero
                    },
                    Domain::square(1.0),
                ),
                Some(ConstantName::A12),
            ),
            Preset::Ex2A => (
                DupinSpec::new(
                    DupinCase::Ex2,
                    euclid,
                    Constants {
                        b: -0.5,
                        c: 1.0,
                        a12: 2.0,
                        ..zero
                    },
                    Domain::square(2.0),
                ),
                Some(ConstantName::A22),
            ),
            Preset::Ex3A => (
                DupinSpec::new(
                    DupinCase::Ex3,
                    euclid,
                    Constants {
                        b: 1.0,
                        c: std::f64::consts::SQRT_2,
                        ..zero
                    },
                    rect([1.0, -1.0], [2.0, 1.0]),
                ),
                Some(ConstantName::A12),
            ),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub fn preset_surface(preset: Preset) -> Result<DupinSpec> {
    match preset.family() {
        (spec, Some(free)) => solve_constraint(&spec, free),
        (spec, None) => Ok(spec),
    }
}
