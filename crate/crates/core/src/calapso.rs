//! The pseudo-Calapso operator and its solution families.
//!
//! For a field `ω(u₁, u₂)` the operator is
//!
//! ```text
//! Δ_ε(ω,₁₂/ω) + k·(ω²),₁₂,    Δ_εT = T,₁₁ + εT,₂₂,  ε = ε₁ε₂,
//! ```
//!
//! with `k = ε₁ε₃` ([`CalapsoConvention::Corrected`], the coefficient for
//! which the fields `ε₁√2·e^φ·H` and `ε₁√2·e^φ·H′` of an ε-isothermic surface
//! are solutions in every signature) or `k = ε₂`
//! ([`CalapsoConvention::AsPrinted`]). The two agree when `ε₁ = ε₂` and `ε₃ = 1`.

use std::f64::consts::SQRT_2;

use crate::diffgeo::{fundamental_forms, Surface};
use crate::dupin::{curvature_pair, CurvaturePair, DupinCase, DupinSpec};
use crate::error::{Error, Result};
use crate::field::{Domain, Point, ScalarField, VectorField};
use crate::jet::{Axis, Jet};
use crate::pseudo_metric::{pc_eval_poly, PseudoComplex, Sign, Signature};

/// Fields with magnitude at or below this are treated as zero.
pub const FIELD_ZERO_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Exact jets of order 4.
    Jet,
    /// Nested 4th-order central differences with step `h`, Richardson-extrapolated
    /// against `h/2`.
    Fd { h: f64 },
}

impl Method {
    pub const DEFAULT_FD_STEP: f64 = 1e-2;

    pub fn fd() -> Method {
        Method::Fd {
            h: Method::DEFAULT_FD_STEP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CalapsoConvention {
    /// Coefficient `ε₁ε₃`.
    #[default]
    Corrected,
    /// Coefficient `ε₂`.
    AsPrinted,
}

impl CalapsoConvention {
    pub fn coefficient(self, sig: Signature) -> f64 {
        match self {
            CalapsoConvention::Corrected => sig.e1() * sig.e3(),
            CalapsoConvention::AsPrinted => sig.e2(),
        }
    }
}

/// An operator value with an estimate of its numerical error (zero for jets).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub error_estimate: f64,
}

pub fn calapso_residual(
    w: &ScalarField,
    p: Point,
    sig: Signature,
    method: Method,
) -> Result<Residual> {
    calapso_residual_with(w, p, sig, method, CalapsoConvention::default())
}

pub fn calapso_residual_with(
    w: &ScalarField,
    p: Point,
    sig: Signature,
    method: Method,
    convention: CalapsoConvention,
) -> Result<Residual> {
    let k = convention.coefficient(sig);
    match method {
        Method::Jet => jet_operator(w, p, sig.e(), k).map(|value| Residual {
            value,
            error_estimate: 0.0,
        }),
        Method::Fd { h } => {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::InvalidParameters(format!(
                    "fd step {h} must be positive"
                )));
            }
            let (coarse, mag_coarse) = fd_operator(w, p, sig.e(), k, h)?;
            let (fine, mag_fine) = fd_operator(w, p, sig.e(), k, h / 2.0)?;
            let rounding = FD_EVAL_ULPS * f64::EPSILON * (16.0 * mag_fine).hypot(mag_coarse) / 15.0;
            Ok(Residual {
                value: (16.0 * fine - coarse) / 15.0,
                error_estimate: (fine - coarse).abs() + rounding,
            })
        }
    }
}

fn jet_operator(w: &ScalarField, p: Point, eps: f64, k: f64) -> Result<f64> {
    let j = w.jet(p, 4);
    if !j.is_finite() {
        return Err(Error::NonFinite("pseudo-Calapso field"));
    }
    if j.value().abs() <= FIELD_ZERO_TOL {
        return Err(Error::FieldZero);
    }
    let t = j.diff(Axis::U1).diff(Axis::U2) / j.truncate(2);
    let sq = j * j;
    Ok(t.partial(2, 0) + eps * t.partial(0, 2) + k * sq.partial(1, 1))
}

const D1: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const D2: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];

/// Relative error assumed for a single field evaluation, in units of machine
/// epsilon.
pub const FD_EVAL_ULPS: f64 = 1.0;

/// Operator value and the root-sum-square size of its rounding error per unit
/// relative error in the samples.
fn fd_operator(w: &ScalarField, p: Point, eps: f64, k: f64, h: f64) -> Result<(f64, f64)> {
    // Samples on offsets (i, j) ∈ [−4, 4]², only the cross-shaped part is used.
    let mut vals = [[0.0f64; 9]; 9];
    for i in -4i32..=4 {
        for j in -4i32..=4 {
            if i.abs() > 2 && j.abs() > 2 {
                continue;
            }
            let v = w.value([p[0] + i as f64 * h, p[1] + j as f64 * h]);
            if !v.is_finite() {
                return Err(Error::NonFinite("pseudo-Calapso field"));
            }
            if v.abs() <= FIELD_ZERO_TOL {
                return Err(Error::FieldZero);
            }
            vals[(i + 4) as usize][(j + 4) as usize] = v;
        }
    }
    let at = |i: i32, j: i32| vals[(i + 4) as usize][(j + 4) as usize];
    // Mixed second difference of f, and the RSS of its terms.
    let mixed = |i: i32, j: i32, f: &dyn Fn(i32, i32) -> f64| {
        let (mut acc, mut mag) = (0.0, 0.0);
        for (a, wa) in D1.iter().enumerate() {
            for (b, wb) in D1.iter().enumerate() {
                if *wa != 0.0 && *wb != 0.0 {
                    let v = f(i + a as i32 - 2, j + b as i32 - 2);
                    acc += wa * wb * v;
                    mag += (wa * wb * v).powi(2);
                }
            }
        }
        let s = 144.0 * h * h;
        (acc / s, mag.sqrt() / s)
    };
    let t = |i: i32, j: i32| {
        let (m, mag) = mixed(i, j, &at);
        (m / at(i, j), mag / at(i, j).abs())
    };
    let (mut t11, mut t22, mut mag_t) = (0.0, 0.0, 0.0);
    for (a, wa) in D2.iter().enumerate() {
        let o = a as i32 - 2;
        let (x, mx) = t(o, 0);
        let (y, my) = t(0, o);
        t11 += wa * x;
        t22 += wa * y;
        mag_t += (wa * mx).powi(2) + (wa * my).powi(2);
    }
    let scale = 12.0 * h * h;
    let (sq12, mag_sq) = mixed(0, 0, &|i, j| at(i, j) * at(i, j));
    let value = t11 / scale + eps * t22 / scale + k * sq12;
    Ok((value, mag_t.sqrt() / scale + k.abs() * mag_sq))
}

/// The two solution fields attached to an ε-isothermic surface.
#[derive(Debug, Clone)]
pub struct CalapsoPair {
    pub omega: ScalarField,
    pub big_omega: ScalarField,
}

/// `ω = ε₁√2(λ₂+λ₁)/(2(λ₂−λ₁))`, `Ω = ε₁√2/2` from closed-form curvatures.
pub fn corollary1_pair(pair: &CurvaturePair, sig: Signature) -> CalapsoPair {
    let k = sig.e1() * SQRT_2 / 2.0;
    CalapsoPair {
        omega: pair
            .h1
            .zip_with(&pair.h2, move |a, b| (a + b) / (a - b) * k),
        big_omega: ScalarField::constant(k),
    }
}

const SURFACE_SAMPLES: usize = 21;

/// `ω = ε₁√2·H·e^φ`, `Ω = ε₁√2·H′·e^φ` with `e^φ = 1/|λ₂−λ₁|`, where the
/// `λᵢ` are recomputed from the surface's Weingarten map.
pub fn omega_from_surface(s: &Surface) -> Result<CalapsoPair> {
    let sig = s.sig();
    for p in s.domain().grid(SURFACE_SAMPLES, SURFACE_SAMPLES) {
        let forms = fundamental_forms(&s.jet(p, 2)?, sig)?;
        if forms.phi.is_none() {
            return Err(Error::NotIsothermic(p[0], p[1]));
        }
        let [l1, l2] = s.lambda_jets(p, 0)?;
        if (l2.value() - l1.value()).abs() <= crate::dupin::UMBILIC_MARGIN {
            return Err(Error::UmbilicOnDomain);
        }
    }
    let k = sig.e1() * SQRT_2 / 2.0;
    let field = |mean: bool| {
        let s = s.clone();
        ScalarField::new(move |p, order| match s.lambda_jets(p, order) {
            Ok([l1, l2]) => {
                let d = l2 - l1;
                let top = if mean { l1 + l2 } else { d };
                top / d.abs() * k
            }
            Err(_) => Jet::constant(f64::NAN, order),
        })
    };
    Ok(CalapsoPair {
        omega: field(true),
        big_omega: field(false),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Proposition {
    /// Explicit ω for the `b₁ = 0` family.
    Prop2,
    /// Explicit ω for `−1 < b₁ < 0`.
    Prop3,
    /// Explicit ω for `b₁ > 0`.
    Prop4,
}

impl Proposition {
    pub fn name(self) -> &'static str {
        match self {
            Proposition::Prop2 => "prop2",
            Proposition::Prop3 => "prop3",
            Proposition::Prop4 => "prop4",
        }
    }

    pub fn case(self) -> DupinCase {
        match self {
            Proposition::Prop2 => DupinCase::Ex1,
            Proposition::Prop3 => DupinCase::Ex2,
            Proposition::Prop4 => DupinCase::Ex3,
        }
    }
}

fn matching_pair(which: Proposition, spec: &DupinSpec) -> Result<CurvaturePair> {
    if spec.case != which.case() {
        return Err(Error::CaseMismatch {
            which: which.name(),
            expected: which.case().tag(),
            found: spec.case.tag(),
        });
    }
    curvature_pair(spec)
}

/// The literal rational formula for ω of one family, in terms of the case
/// constants and basis functions.
pub fn proposition_field(which: Proposition, spec: &DupinSpec) -> Result<ScalarField> {
    let pair = matching_pair(which, spec)?;
    let k = spec.constants;
    let e1 = spec.sig.e1();
    let scale = e1 * SQRT_2 / 2.0;
    let (b1, b2) = (pair.profile1.basis, pair.profile2.basis);
    Ok(match which {
        Proposition::Prop2 => ScalarField::from_expr(move |u1, u2| {
            let lead = u1 * u1 * k.c + u1 * (2.0 * k.a11) + 2.0 * k.a12;
            let trig = b2.odd(u2) * (2.0 * k.a21) + b2.even(u2) * (2.0 * k.a22);
            let cc = 2.0 * e1 * k.c;
            (lead + trig - cc) / (lead - trig + cc) * scale
        }),
        Proposition::Prop3 | Proposition::Prop4 => ScalarField::from_expr(move |u1, u2| {
            let bb = k.b * k.b + k.b;
            let first = b1.odd(u1) * k.a11 + b1.even(u1) * k.a12;
            let second = b2.odd(u2) * k.a21 + b2.even(u2) * k.a22;
            let num = (first + second) * bb - e1 * k.c * (2.0 * k.b + 1.0);
            let den = (first - second) * bb - e1 * k.c;
            num / den * scale
        }),
    })
}

/// The `b₁ = 0` formula exactly as it appears in print, kept to document
/// that it is not the ω of the surface.
pub fn printed_prop2_field(spec: &DupinSpec) -> Result<ScalarField> {
    let pair = matching_pair(Proposition::Prop2, spec)?;
    let k = spec.constants;
    let e1 = spec.sig.e1();
    let b2 = pair.profile2.basis;
    Ok(ScalarField::from_expr(move |u1, u2| {
        let lead = u1 * u1 * k.c + u1 * (2.0 * k.a11) + 2.0 * k.a12;
        let f = b2.odd(u2) * (2.0 * k.a21);
        let g = b2.even(u2) * (2.0 * k.a22);
        let cc = 2.0 * e1 * k.c;
        (lead + f + g + cc) / (lead - f + g - cc) * (e1 * SQRT_2 / 2.0)
    }))
}

/// A polynomial `f(z) = Σ aₖzᵏ` over ℂ_{ε₂}.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphicFn {
    coeffs: Vec<PseudoComplex>,
    eps2: Sign,
}

impl HolomorphicFn {
    /// Coefficients in ascending powers; all must share one `ε₂`.
    pub fn new(coeffs: Vec<PseudoComplex>) -> Result<HolomorphicFn> {
        let eps2 = coeffs.first().ok_or(Error::EmptyPolynomial)?.eps2;
        if coeffs.iter().any(|c| c.eps2 != eps2) {
            return Err(Error::MixedAlgebras);
        }
        Ok(HolomorphicFn { coeffs, eps2 })
    }

    pub fn from_real_coeffs(coeffs: &[f64], eps2: Sign) -> Result<HolomorphicFn> {
        HolomorphicFn::new(
            coeffs
                .iter()
                .map(|&c| PseudoComplex::real(c, eps2))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[PseudoComplex] {
        &self.coeffs
    }

    pub fn eps2(&self) -> Sign {
        self.eps2
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// `(f, f′)` at `z = u₁ + i u₂`.
    pub fn eval(&self, p: Point) -> (PseudoComplex, PseudoComplex) {
        let z = PseudoComplex::new(p[0], p[1], self.eps2);
        pc_eval_poly(&self.coeffs, z).expect("coefficients share the algebra of z")
    }

    pub fn eval_jet(&self, p: Point, order: usize) -> (PseudoComplex<Jet>, PseudoComplex<Jet>) {
        let (u1, u2) = Jet::variables(p, order);
        let z = PseudoComplex::new(u1, u2, self.eps2);
        pc_eval_poly(&self.coeffs, z).expect("coefficients share the algebra of z")
    }

    /// Rejects points on the singular set `|1 + ε₃|f|²| < 1e−6` or the
    /// lightlike set `|⟨f′,f′⟩| < 1e−10`.
    pub fn admissible(&self, p: Point, eps3: Sign) -> Result<()> {
        let (f, fp) = self.eval(p);
        if (1.0 + eps3.to_f64() * f.norm_sq()).abs() < 1e-6 {
            return Err(Error::SingularChart);
        }
        if fp.norm_sq().abs() < 1e-10 {
            return Err(Error::LightlikeDerivative);
        }
        Ok(())
    }

    /// Signature of the sphere chart's first form
    /// `4⟨f′,f′⟩/(1+ε₃|f|²)² (du₁² + ε₂du₂²)` at an admissible point.
    ///
    /// This is `(1, ε₂, ε₃)` where `⟨f′,f′⟩ > 0` and `(−1, −ε₂, ε₃)` where it is
    /// negative, which only happens for `ε₂ = −1`.
    pub fn chart_signature(&self, p: Point, eps3: Sign) -> Result<Signature> {
        self.admissible(p, eps3)?;
        let (_, fp) = self.eval(p);
        Ok(if fp.norm_sq() > 0.0 {
            Signature {
                eps1: Sign::Plus,
                eps2: self.eps2,
                eps3,
            }
        } else {
            Signature {
                eps1: Sign::Minus,
                eps2: -self.eps2,
                eps3,
            }
        })
    }
}

/// `ω = 2√(2|⟨f′,f′⟩|)/(1 + |f|²)`.
pub fn holomorphic_omega(f: &HolomorphicFn) -> Result<ScalarField> {
    holomorphic_omega_eps3(f, Sign::Plus)
}

/// `ω = 2√(2|⟨f′,f′⟩|)/(1 + ε₃|f|²)`, the field of the sphere chart with
/// third metric sign `ε₃`.
pub fn holomorphic_omega_eps3(f: &HolomorphicFn, eps3: Sign) -> Result<ScalarField> {
    if f.is_constant() {
        return Err(Error::ConstantHolomorphic);
    }
    let f = f.clone();
    let e3 = eps3.to_f64();
    Ok(ScalarField::new(move |p, order| {
        let (v, d) = f.eval_jet(p, order);
        (d.norm_sq().abs() * 2.0).sqrt() * 2.0 / (v.norm_sq() * e3 + 1.0)
    }))
}

const CHART_SAMPLES: usize = 41;

/// `X = (2f, ε₃|f|² − 1)/(1 + ε₃|f|²)` on `domain`, a chart of the quadric
/// `⟨X,X⟩ = ε₃` in signature `(1, ε₂, ε₃)`. The position doubles as the unit
/// normal.
pub fn sphere_map(f: &HolomorphicFn, eps3: Sign, domain: Domain) -> Result<Surface> {
    for p in domain.grid(CHART_SAMPLES, CHART_SAMPLES) {
        let (v, _) = f.eval(p);
        if (1.0 + eps3.to_f64() * v.norm_sq()).abs() < 1e-6 {
            return Err(Error::SingularChart);
        }
    }
    let sig = Signature {
        eps1: Sign::Plus,
        eps2: f.eps2(),
        eps3,
    };
    let e3 = eps3.to_f64();
    let g = f.clone();
    let position = VectorField::new(move |p, order| {
        let (v, _) = g.eval_jet(p, order);
        let q = v.norm_sq() * e3;
        let inv = (q + 1.0).recip();
        [v.re * 2.0 * inv, v.im * 2.0 * inv, (q - 1.0) * inv]
    });
    Ok(Surface::new(position.clone(), domain, sig).with_normal(position))
}
