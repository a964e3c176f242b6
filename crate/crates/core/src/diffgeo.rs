//! First-principles differential geometry of parametrized surfaces in E³.
//!
//! Everything here is computed from the position map alone (plus, when the
//! surface carries one, a supplied unit normal): metric, normal, second
//! fundamental form, Weingarten eigenvalues along the coordinate directions,
//! Christoffel symbols and the Gauss–Codazzi residuals.
//!
//! Second fundamental form convention: `e = ε₃⟨X,₁₁, N⟩`, `g = ε₃⟨X,₂₂, N⟩`.
//! With `N,ᵢ = λᵢX,ᵢ` this gives `e = −λ₁g₁₁`, `g = −λ₂g₂₂`, and the Gauss
//! equation of an ε-isothermic surface reads
//! `Δ_εφ + ε₂ε₃·e·g·e^{−2φ} = 0`.

use crate::error::{Error, Result};
use crate::field::{vec_partial, Domain, Point, VectorField};
use crate::jet::{Axis, Jet, MAX_ORDER};
use crate::pseudo_metric::{inner, inner_jet, pseudo_cross_jet, Signature, Vec3E};

/// Inner squares below this magnitude count as lightlike.
pub const LIGHTLIKE_TOL: f64 = 1e-14;

/// Relative tolerance of the ε-isothermic test `g₁₂ = 0`, `ε₁g₁₁ = ε₂g₂₂`.
pub const ISOTHERMIC_TOL: f64 = 1e-8;

/// A parametrized surface `X: [a₁,b₁]×[a₂,b₂] → E³`.
///
/// A unit normal may be supplied alongside the position (closed-form
/// constructions know theirs); otherwise the normalized pseudo-cross
/// product of the coordinate tangents is used.
#[derive(Clone, Debug)]
pub struct Surface {
    position: VectorField,
    normal: Option<VectorField>,
    domain: Domain,
    sig: Signature,
}

impl Surface {
    pub fn new(position: VectorField, domain: Domain, sig: Signature) -> Surface {
        Surface {
            position,
            normal: None,
            domain,
            sig,
        }
    }

    pub fn with_normal(mut self, normal: VectorField) -> Surface {
        self.normal = Some(normal);
        self
    }

    pub fn position(&self) -> &VectorField {
        &self.position
    }

    pub fn supplied_normal(&self) -> Option<&VectorField> {
        self.normal.as_ref()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    /// Raw jet of the position map at `p`.
    pub fn position_jet(&self, p: Point, order: usize) -> Result<[Jet; 3]> {
        self.domain.check(p)?;
        check_order(order)?;
        let x = self.position.jet(p, order);
        if x.iter().all(Jet::is_finite) {
            Ok(x)
        } else {
            Err(Error::NonFinite("surface position"))
        }
    }

    pub fn jet(&self, p: Point, order: usize) -> Result<SurfaceJet> {
        Ok(SurfaceJet::from_jets(&self.position_jet(p, order)?))
    }

    /// Normalized pseudo-cross normal `⊠/√|⟨⊠,⊠⟩|` with `⊠ = X,₁ ⊠ X,₂`,
    /// as a jet of the given order (the position is expanded one order higher).
    pub fn cross_normal_jet(&self, p: Point, order: usize) -> Result<[Jet; 3]> {
        let x = self.position_jet(p, order + 1)?;
        let x1 = x.map(|c| c.diff(Axis::U1));
        let x2 = x.map(|c| c.diff(Axis::U2));
        normalize_cross(&x1, &x2, self.sig)
    }

    /// The supplied normal when there is one, the cross normal otherwise.
    pub fn normal_jet(&self, p: Point, order: usize) -> Result<[Jet; 3]> {
        match &self.normal {
            Some(n) => {
                self.domain.check(p)?;
                check_order(order)?;
                let n = n.jet(p, order);
                if n.iter().all(Jet::is_finite) {
                    Ok(n)
                } else {
                    Err(Error::NonFinite("surface normal"))
                }
            }
            None => self.cross_normal_jet(p, order),
        }
    }

    /// `(N, N,₁, N,₂)` of [`Surface::normal_jet`] at `p`.
    pub fn normal_partials(&self, p: Point) -> Result<(Vec3E, Vec3E, Vec3E)> {
        let n = self.normal_jet(p, 1)?;
        Ok((
            vec_partial(&n, 0, 0),
            vec_partial(&n, 1, 0),
            vec_partial(&n, 0, 1),
        ))
    }

    /// Jets of `λᵢ = ⟨N,ᵢ, X,ᵢ⟩ / ⟨X,ᵢ, X,ᵢ⟩`.
    ///
    /// Needs the position to `order + 1` and the normal to `order + 1`, i.e.
    /// `order + 2` position orders when no normal is supplied.
    pub fn lambda_jets(&self, p: Point, order: usize) -> Result<[Jet; 2]> {
        let x = self.position_jet(p, order + 1)?;
        let n = self.normal_jet(p, order + 1)?;
        let mut out = [Jet::constant(0.0, order); 2];
        for (k, axis) in [Axis::U1, Axis::U2].into_iter().enumerate() {
            let xi = x.map(|c| c.diff(axis));
            let ni = n.map(|c| c.diff(axis));
            let gii = inner_jet(&xi, &xi, self.sig);
            if gii.value().abs() <= LIGHTLIKE_TOL {
                return Err(Error::LightlikeDirection(k + 1));
            }
            out[k] = inner_jet(&ni, &xi, self.sig) / gii;
        }
        Ok(out)
    }

    /// `(g₁₁, g₂₂)` and their first partials `[[g₁₁,₁, g₁₁,₂], [g₂₂,₁, g₂₂,₂]]`.
    pub fn metric_with_partials(&self, p: Point) -> Result<([f64; 2], [[f64; 2]; 2])> {
        let x = self.position_jet(p, 2)?;
        let x1 = x.map(|c| c.diff(Axis::U1));
        let x2 = x.map(|c| c.diff(Axis::U2));
        let g11 = inner_jet(&x1, &x1, self.sig);
        let g22 = inner_jet(&x2, &x2, self.sig);
        Ok((
            [g11.value(), g22.value()],
            [
                [g11.partial(1, 0), g11.partial(0, 1)],
                [g22.partial(1, 0), g22.partial(0, 1)],
            ],
        ))
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::InvalidParameters(format!(
            "jet order {order} exceeds the supported maximum {MAX_ORDER}"
        )))
    } else {
        Ok(())
    }
}

fn normalize_cross(x1: &[Jet; 3], x2: &[Jet; 3], sig: Signature) -> Result<[Jet; 3]> {
    let w = pseudo_cross_jet(x1, x2, sig);
    let s = inner_jet(&w, &w, sig);
    let sv = s.value();
    if !(sv.abs() > LIGHTLIKE_TOL) {
        return Err(Error::DegenerateNormal);
    }
    if sv.signum() != sig.e3() {
        return Err(Error::NormalCausalType {
            expected: sig.e3(),
            found: sv,
        });
    }
    let root = (s * sig.e3()).sqrt();
    Ok(w.map(|c| c / root))
}

/// `X` and its partial derivatives at one point.
///
/// Entries above the jet's order are zero; `third` holds
/// `(X,₁₁₁, X,₁₁₂, X,₁₂₂, X,₂₂₂)` when the order is at least 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub order: usize,
    pub x: Vec3E,
    pub x1: Vec3E,
    pub x2: Vec3E,
    pub x11: Vec3E,
    pub x12: Vec3E,
    pub x22: Vec3E,
    pub third: Option<[Vec3E; 4]>,
}

impl SurfaceJet {
    pub fn from_jets(v: &[Jet; 3]) -> SurfaceJet {
        let order = v.iter().map(Jet::order).min().unwrap_or(0);
        let at = |i: usize, j: usize| {
            if i + j <= order {
                vec_partial(v, i, j)
            } else {
                Vec3E::ZERO
            }
        };
        SurfaceJet {
            order,
            x: at(0, 0),
            x1: at(1, 0),
            x2: at(0, 1),
            x11: at(2, 0),
            x12: at(1, 1),
            x22: at(0, 2),
            third: (order >= 3).then(|| [at(3, 0), at(2, 1), at(1, 2), at(0, 3)]),
        }
    }
}

/// Exact partials of `s` at `p` up to `order`.
pub fn jet_eval(s: &Surface, p: Point, order: usize) -> Result<SurfaceJet> {
    s.jet(p, order)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    /// Normalized pseudo-cross normal.
    pub n: Vec3E,
    pub ii11: f64,
    pub ii12: f64,
    pub ii22: f64,
    /// `½ ln|ε₁g₁₁|` when the metric is ε-isothermic at the point.
    pub phi: Option<f64>,
}

/// First and second fundamental forms from a jet of order ≥ 2.
pub fn fundamental_forms(jet: &SurfaceJet, sig: Signature) -> Result<FundamentalForms> {
    if jet.order < 2 {
        return Err(Error::InvalidParameters(
            "fundamental forms need a jet of order 2".into(),
        ));
    }
    let w = crate::pseudo_metric::pseudo_cross(jet.x1, jet.x2, sig);
    let s = inner(w, w, sig);
    if !(s.abs() > LIGHTLIKE_TOL) {
        return Err(Error::DegenerateNormal);
    }
    if s.signum() != sig.e3() {
        return Err(Error::NormalCausalType {
            expected: sig.e3(),
            found: s,
        });
    }
    let n = w / s.abs().sqrt();
    let g11 = inner(jet.x1, jet.x1, sig);
    let g12 = inner(jet.x1, jet.x2, sig);
    let g22 = inner(jet.x2, jet.x2, sig);
    Ok(FundamentalForms {
        g11,
        g12,
        g22,
        n,
        ii11: sig.e3() * inner(jet.x11, n, sig),
        ii12: sig.e3() * inner(jet.x12, n, sig),
        ii22: sig.e3() * inner(jet.x22, n, sig),
        phi: isothermic_phi(g11, g12, g22, sig),
    })
}

/// `½ ln(ε₁g₁₁)` if `g₁₂ = 0` and `ε₁g₁₁ = ε₂g₂₂ > 0` within [`ISOTHERMIC_TOL`].
fn isothermic_phi(g11: f64, g12: f64, g22: f64, sig: Signature) -> Option<f64> {
    let a = sig.e1() * g11;
    let b = sig.e2() * g22;
    let scale = g11.abs().max(g22.abs());
    let ok = a > 0.0
        && b > 0.0
        && g12.abs() <= ISOTHERMIC_TOL * scale
        && (a - b).abs() <= ISOTHERMIC_TOL * scale;
    ok.then(|| 0.5 * a.ln())
}

/// Weingarten eigenvalues along the coordinate directions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weingarten {
    pub lambda1: f64,
    pub lambda2: f64,
    /// `‖N,₁ − λ₁X,₁‖∞` and `‖N,₂ − λ₂X,₂‖∞`.
    pub defect: [f64; 2],
}

impl Weingarten {
    pub fn max_defect(&self) -> f64 {
        self.defect[0].max(self.defect[1])
    }
}

/// `λᵢ = ⟨N,ᵢ, X,ᵢ⟩ / ⟨X,ᵢ, X,ᵢ⟩` together with the lines-of-curvature defect.
pub fn weingarten_lambdas(
    jet: &SurfaceJet,
    n1: Vec3E,
    n2: Vec3E,
    sig: Signature,
) -> Result<Weingarten> {
    let mut lambda = [0.0; 2];
    let mut defect = [0.0; 2];
    for (k, (xi, ni)) in [(jet.x1, n1), (jet.x2, n2)].into_iter().enumerate() {
        let gii = inner(xi, xi, sig);
        if !(gii.abs() > LIGHTLIKE_TOL) {
            return Err(Error::LightlikeDirection(k + 1));
        }
        lambda[k] = inner(ni, xi, sig) / gii;
        defect[k] = (ni - xi * lambda[k]).norm_inf();
    }
    Ok(Weingarten {
        lambda1: lambda[0],
        lambda2: lambda[1],
        defect,
    })
}

/// Mean and skew curvature `(H, H′) = ((λ₁+λ₂)/2, (λ₂−λ₁)/2)`.
pub fn curvature_scalars(lambda1: f64, lambda2: f64) -> (f64, f64) {
    ((lambda1 + lambda2) / 2.0, (lambda2 - lambda1) / 2.0)
}

/// Christoffel symbols of a diagonal metric; `gamma{k}_{ij}` is `Γᵏᵢⱼ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChristoffelSet {
    pub gamma1_11: f64,
    pub gamma2_11: f64,
    pub gamma1_12: f64,
    pub gamma2_12: f64,
    pub gamma1_22: f64,
    pub gamma2_22: f64,
}

/// Christoffel symbols of `g₁₁du₁² + g₂₂du₂²` from the metric and its
/// first partials `dg11 = [g₁₁,₁, g₁₁,₂]`, `dg22 = [g₂₂,₁, g₂₂,₂]`.
pub fn christoffel(g11: f64, g22: f64, dg11: [f64; 2], dg22: [f64; 2]) -> Result<ChristoffelSet> {
    if !(g11.abs() > LIGHTLIKE_TOL) {
        return Err(Error::VanishingMetric(1));
    }
    if !(g22.abs() > LIGHTLIKE_TOL) {
        return Err(Error::VanishingMetric(2));
    }
    let set = ChristoffelSet {
        gamma1_11: dg11[0] / (2.0 * g11),
        gamma2_11: -dg11[1] / (2.0 * g22),
        gamma1_12: dg11[1] / (2.0 * g11),
        gamma2_12: dg22[0] / (2.0 * g22),
        gamma1_22: -dg22[0] / (2.0 * g11),
        gamma2_22: dg22[1] / (2.0 * g22),
    };
    // Γʲᵢᵢ = −Γⁱᵢⱼ gᵢᵢ/gⱼⱼ
    let tol = 1e-12 * (1.0 + set.gamma2_11.abs() + set.gamma1_22.abs());
    debug_assert!((set.gamma2_11 + set.gamma1_12 * g11 / g22).abs() <= tol);
    debug_assert!((set.gamma1_22 + set.gamma2_12 * g22 / g11).abs() <= tol);
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussCodazzi {
    pub cod1: f64,
    pub cod2: f64,
    pub gauss: f64,
}

impl GaussCodazzi {
    pub fn max_abs(&self) -> f64 {
        self.cod1.abs().max(self.cod2.abs()).max(self.gauss.abs())
    }
}

/// Codazzi and Gauss residuals of an ε-isothermic surface at `p`:
///
/// * `e,₂ − (e + εg)φ,₂`
/// * `g,₁ − ε(e + εg)φ,₁`
/// * `Δ_εφ + ε₂ε₃·e·g·e^{−2φ}`
pub fn gauss_codazzi_residuals(s: &Surface, p: Point) -> Result<GaussCodazzi> {
    let sig = s.sig();
    let x = s.position_jet(p, 4)?;
    let x1 = x.map(|c| c.diff(Axis::U1));
    let x2 = x.map(|c| c.diff(Axis::U2));
    let g11 = inner_jet(&x1, &x1, sig);
    let g12 = inner_jet(&x1, &x2, sig);
    let g22 = inner_jet(&x2, &x2, sig);
    if isothermic_phi(g11.value(), g12.value(), g22.value(), sig).is_none() {
        return Err(Error::NotIsothermic(p[0], p[1]));
    }
    let n = s.normal_jet(p, 2)?;
    let x11 = x1.map(|c| c.diff(Axis::U1));
    let x22 = x2.map(|c| c.diff(Axis::U2));
    let e = inner_jet(&x11, &n, sig) * sig.e3();
    let g = inner_jet(&x22, &n, sig) * sig.e3();
    let phi = (g11 * sig.e1()).ln() * 0.5;
    let eps = sig.e();
    let e_eg = e.value() + eps * g.value();
    let cod1 = e.partial(0, 1) - e_eg * phi.partial(0, 1);
    let cod2 = g.partial(1, 0) - eps * e_eg * phi.partial(1, 0);
    let lap = phi.partial(2, 0) + eps * phi.partial(0, 2);
    let gauss = lap + sig.e2() * sig.e3() * e.value() * g.value() * (-2.0 * phi.value()).exp();
    Ok(GaussCodazzi { cod1, cod2, gauss })
}

/// `h₁h₂ + ε₂h₂″(h₁−h₂) + ε₁h₁″(h₂−h₁) + ε₁(h₁′)² + ε₂(h₂′)²` at `p`,
/// where `h₁` depends on `u₁` and `h₂` on `u₂`.
pub fn gauss2_residual(
    h1: &crate::field::ScalarField,
    h2: &crate::field::ScalarField,
    p: Point,
    sig: Signature,
) -> Result<f64> {
    let a = h1.jet(p, 2);
    let b = h2.jet(p, 2);
    let (a0, a1, a2) = (a.value(), a.partial(1, 0), a.partial(2, 0));
    let (b0, b1, b2) = (b.value(), b.partial(0, 1), b.partial(0, 2));
    if !(a0 - b0).is_finite() {
        return Err(Error::NonFinite("curvature pair"));
    }
    if (a0 - b0).abs() <= 1e-12 * (1.0 + a0.abs().max(b0.abs())) {
        return Err(Error::UmbilicPoint);
    }
    Ok(a0 * b0
        + sig.e2() * b2 * (a0 - b0)
        + sig.e1() * a2 * (b0 - a0)
        + sig.e1() * a1 * a1
        + sig.e2() * b1 * b1)
}
