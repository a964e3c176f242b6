//! Signature-parametric linear algebra in E³ and the pseudo-complex numbers
//! ℂ_{ε₂} (`i² = -ε₂`).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::jet::Jet;

/// A metric sign, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// The metric `ε₁dx² + ε₂dy² + ε₃dz²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    pub eps1: Sign,
    pub eps2: Sign,
    pub eps3: Sign,
}

impl Signature {
    pub const EUCLIDEAN: Signature = Signature {
        eps1: Sign::Plus,
        eps2: Sign::Plus,
        eps3: Sign::Plus,
    };

    pub fn new(eps1: i64, eps2: i64, eps3: i64) -> Result<Signature> {
        Ok(Signature {
            eps1: Sign::from_i64(eps1)?,
            eps2: Sign::from_i64(eps2)?,
            eps3: Sign::from_i64(eps3)?,
        })
    }

    /// All eight signatures, in a fixed order.
    pub fn all() -> impl Iterator<Item = Signature> {
        (0..8).map(|bits| {
            let s = |b: i32| {
                if bits & b == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            };
            Signature {
                eps1: s(1),
                eps2: s(2),
                eps3: s(4),
            }
        })
    }

    pub fn e1(&self) -> f64 {
        self.eps1.to_f64()
    }

    pub fn e2(&self) -> f64 {
        self.eps2.to_f64()
    }

    pub fn e3(&self) -> f64 {
        self.eps3.to_f64()
    }

    /// ε = ε₁ε₂.
    pub fn eps(&self) -> Sign {
        self.eps1 * self.eps2
    }

    pub fn e(&self) -> f64 {
        self.eps().to_f64()
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.eps1.to_i64(), self.eps2.to_i64(), self.eps3.to_i64()]
    }

    fn diag(&self) -> [f64; 3] {
        [self.e1(), self.e2(), self.e3()]
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.eps1, self.eps2, self.eps3)
    }
}

/// A vector of E³.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3E {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3E {
    pub const ZERO: Vec3E = Vec3E::new(0.0, 0.0, 0.0);
    pub const E1: Vec3E = Vec3E::new(1.0, 0.0, 0.0);
    pub const E2: Vec3E = Vec3E::new(0.0, 1.0, 0.0);
    pub const E3: Vec3E = Vec3E::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Vec3E {
        Vec3E { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Vec3E {
        Vec3E::new(a[0], a[1], a[2])
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Max-norm, independent of the signature.
    pub fn norm_inf(&self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl Add for Vec3E {
    type Output = Vec3E;
    fn add(self, r: Vec3E) -> Vec3E {
        Vec3E::new(self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl Sub for Vec3E {
    type Output = Vec3E;
    fn sub(self, r: Vec3E) -> Vec3E {
        Vec3E::new(self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl Neg for Vec3E {
    type Output = Vec3E;
    fn neg(self) -> Vec3E {
        Vec3E::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3E {
    type Output = Vec3E;
    fn mul(self, s: f64) -> Vec3E {
        Vec3E::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3E> for f64 {
    type Output = Vec3E;
    fn mul(self, v: Vec3E) -> Vec3E {
        v * self
    }
}

impl Div<f64> for Vec3E {
    type Output = Vec3E;
    fn div(self, s: f64) -> Vec3E {
        Vec3E::new(self.x / s, self.y / s, self.z / s)
    }
}

/// `ε₁u_xv_x + ε₂u_yv_y + ε₃u_zv_z`.
pub fn inner(u: Vec3E, v: Vec3E, sig: Signature) -> f64 {
    sig.e1() * u.x * v.x + sig.e2() * u.y * v.y + sig.e3() * u.z * v.z
}

/// The vector `w` with `⟨w, t⟩ = det[u v t]` for every `t`.
///
/// Equals `S⁻¹(u × v)` with `S = diag(ε₁, ε₂, ε₃)`; the Euclidean cross
/// product when all signs are positive.
pub fn pseudo_cross(u: Vec3E, v: Vec3E, sig: Signature) -> Vec3E {
    let c = Vec3E::new(
        u.y * v.z - u.z * v.y,
        u.z * v.x - u.x * v.z,
        u.x * v.y - u.y * v.x,
    );
    // S⁻¹ = S for a sign matrix.
    Vec3E::new(sig.e1() * c.x, sig.e2() * c.y, sig.e3() * c.z)
}

/// Jet-valued counterparts of [`inner`] and [`pseudo_cross`].
pub(crate) fn inner_jet(u: &[Jet; 3], v: &[Jet; 3], sig: Signature) -> Jet {
    let d = sig.diag();
    u[0] * v[0] * d[0] + u[1] * v[1] * d[1] + u[2] * v[2] * d[2]
}

pub(crate) fn pseudo_cross_jet(u: &[Jet; 3], v: &[Jet; 3], sig: Signature) -> [Jet; 3] {
    let d = sig.diag();
    [
        (u[1] * v[2] - u[2] * v[1]) * d[0],
        (u[2] * v[0] - u[0] * v[2]) * d[1],
        (u[0] * v[1] - u[1] * v[0]) * d[2],
    ]
}

/// Scalars the pseudo-complex algebra can be built over: plain reals and jets.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Mul<f64, Output = Self>
{
    fn from_f64_like(like: &Self, v: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64_like(_: &f64, v: f64) -> f64 {
        v
    }
}

impl Scalar for Jet {
    fn from_f64_like(like: &Jet, v: f64) -> Jet {
        Jet::constant(v, like.order())
    }
}

/// `re + i·im` with `i² = -eps2`: ordinary complex numbers for `eps2 = +1`,
/// split-complex for `eps2 = -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoComplex<T = f64> {
    pub re: T,
    pub im: T,
    pub eps2: Sign,
}

impl<T: Scalar> PseudoComplex<T> {
    pub fn new(re: T, im: T, eps2: Sign) -> Self {
        PseudoComplex { re, im, eps2 }
    }

    /// `z z̄ = re² + ε₂ im²`.
    pub fn norm_sq(&self) -> T {
        self.re * self.re + self.im * self.im * self.eps2.to_f64()
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        if self.eps2 != rhs.eps2 {
            return Err(Error::MixedAlgebras);
        }
        Ok(PseudoComplex::new(
            self.re + rhs.re,
            self.im + rhs.im,
            self.eps2,
        ))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        pc_mul(self, rhs)
    }

    pub fn scale(self, s: f64) -> Self {
        PseudoComplex::new(self.re * s, self.im * s, self.eps2)
    }
}

impl PseudoComplex<f64> {
    pub fn real(re: f64, eps2: Sign) -> Self {
        PseudoComplex::new(re, 0.0, eps2)
    }

    pub fn unit(eps2: Sign) -> Self {
        PseudoComplex::new(0.0, 1.0, eps2)
    }

    /// Lifts the coefficients to constant jets of the given order.
    pub fn to_jet(self, order: usize) -> PseudoComplex<Jet> {
        PseudoComplex::new(
            Jet::constant(self.re, order),
            Jet::constant(self.im, order),
            self.eps2,
        )
    }
}

/// Product in ℂ_{ε₂}: `(a.re·b.re − ε₂·a.im·b.im, a.re·b.im + a.im·b.re)`.
pub fn pc_mul<T: Scalar>(a: PseudoComplex<T>, b: PseudoComplex<T>) -> Result<PseudoComplex<T>> {
    if a.eps2 != b.eps2 {
        return Err(Error::MixedAlgebras);
    }
    Ok(PseudoComplex::new(
        a.re * b.re - a.im * b.im * a.eps2.to_f64(),
        a.re * b.im + a.im * b.re,
        a.eps2,
    ))
}

/// Horner evaluation of `f(z) = Σ coeffs[k] zᵏ` and `f′(z)` in ℂ_{ε₂}.
///
/// Coefficients are in ascending powers.
pub fn pc_eval_poly<T: Scalar>(
    coeffs: &[PseudoComplex<f64>],
    z: PseudoComplex<T>,
) -> Result<(PseudoComplex<T>, PseudoComplex<T>)> {
    let (last, rest) = coeffs.split_last().ok_or(Error::EmptyPolynomial)?;
    let lift = |c: &PseudoComplex<f64>| -> Result<PseudoComplex<T>> {
        if c.eps2 != z.eps2 {
            return Err(Error::MixedAlgebras);
        }
        Ok(PseudoComplex::new(
            T::from_f64_like(&z.re, c.re),
            T::from_f64_like(&z.re, c.im),
            z.eps2,
        ))
    };
    let zero = PseudoComplex::new(
        T::from_f64_like(&z.re, 0.0),
        T::from_f64_like(&z.re, 0.0),
        z.eps2,
    );
    let mut value = lift(last)?;
    let mut deriv = zero;
    for c in rest.iter().rev() {
        deriv = pc_mul(deriv, z)?.checked_add(value)?;
        value = pc_mul(value, z)?.checked_add(lift(c)?)?;
    }
    Ok((value, deriv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const E1: Vec3E = Vec3E::E1;
    const E2: Vec3E = Vec3E::E2;

    #[test]
    fn inner_examples() {
        for sig in Signature::all() {
            assert_eq!(inner(E1, E2, sig), 0.0);
        }
        let u = Vec3E::new(1.0, 2.0, 3.0);
        assert_eq!(inner(u, u, Signature::EUCLIDEAN), 14.0);
        assert_eq!(inner(u, u, Signature::new(1, -1, 1).unwrap()), 6.0);
    }

    #[test]
    fn pseudo_cross_examples() {
        assert_eq!(pseudo_cross(E1, E2, Signature::EUCLIDEAN), Vec3E::E3);
        assert_eq!(
            pseudo_cross(E1, E2, Signature::new(1, 1, -1).unwrap()),
            Vec3E::new(0.0, 0.0, -1.0)
        );
        for sig in Signature::all() {
            assert_eq!(pseudo_cross(E1, E1, sig).norm_inf(), 0.0);
        }
    }

    #[test]
    fn signature_rejects_non_unit_signs() {
        assert_eq!(Signature::new(1, 0, 1), Err(Error::InvalidSign(0)));
        assert_eq!(Signature::new(2, 1, 1), Err(Error::InvalidSign(2)));
        let s = Signature::new(-1, -1, 1).unwrap();
        assert_eq!(s.eps(), Sign::Plus);
        assert_eq!(Signature::new(-1, 1, 1).unwrap().e(), -1.0);
    }

    #[test]
    fn pc_mul_examples() {
        let i_p = PseudoComplex::unit(Sign::Plus);
        let i_m = PseudoComplex::unit(Sign::Minus);
        assert_eq!(
            pc_mul(i_p, i_p).unwrap(),
            PseudoComplex::real(-1.0, Sign::Plus)
        );
        assert_eq!(
            pc_mul(i_m, i_m).unwrap(),
            PseudoComplex::real(1.0, Sign::Minus)
        );
        let a = PseudoComplex::new(1.0, 1.0, Sign::Plus);
        let b = PseudoComplex::new(1.0, -1.0, Sign::Plus);
        assert_eq!(pc_mul(a, b).unwrap(), PseudoComplex::real(2.0, Sign::Plus));
        assert_eq!(pc_mul(i_p, i_m), Err(Error::MixedAlgebras));
    }

    #[test]
    fn pc_eval_poly_examples() {
        let p = Sign::Plus;
        let m = Sign::Minus;
        let id = [PseudoComplex::real(0.0, p), PseudoComplex::real(1.0, p)];
        let (v, d) = pc_eval_poly(&id, PseudoComplex::new(3.0, 2.0, p)).unwrap();
        assert_eq!(v, PseudoComplex::new(3.0, 2.0, p));
        assert_eq!(d, PseudoComplex::real(1.0, p));

        for (eps2, want) in [
            (p, PseudoComplex::new(0.0, 2.0, p)),
            (m, PseudoComplex::new(2.0, 2.0, m)),
        ] {
            let sq = [
                PseudoComplex::real(0.0, eps2),
                PseudoComplex::real(0.0, eps2),
                PseudoComplex::real(1.0, eps2),
            ];
            let (v, d) = pc_eval_poly(&sq, PseudoComplex::new(1.0, 1.0, eps2)).unwrap();
            assert_eq!(v, want);
            assert_eq!(d, PseudoComplex::new(2.0, 2.0, eps2));
        }

        assert_eq!(
            pc_eval_poly::<f64>(&[], PseudoComplex::real(1.0, p)),
            Err(Error::EmptyPolynomial)
        );
        assert_eq!(
            pc_eval_poly(&[PseudoComplex::real(1.0, m)], PseudoComplex::real(1.0, p)),
            Err(Error::MixedAlgebras)
        );
    }

    fn vec3() -> impl Strategy<Value = Vec3E> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| Vec3E::new(x, y, z))
    }

    fn signature() -> impl Strategy<Value = Signature> {
        (0..8usize).prop_map(|k| Signature::all().nth(k).unwrap())
    }

    proptest! {
        #[test]
        fn inner_is_symmetric_bilinear(u in vec3(), v in vec3(), w in vec3(), a in -2.0..2.0f64, sig in signature()) {
            prop_assert!((inner(u, v, sig) - inner(v, u, sig)).abs() < 1e-12);
            let lhs = inner(u * a + w, v, sig);
            let rhs = a * inner(u, v, sig) + inner(w, v, sig);
            prop_assert!((lhs - rhs).abs() < 1e-11);
        }

        #[test]
        fn pseudo_cross_is_orthogonal(u in vec3(), v in vec3(), t in vec3(), sig in signature()) {
            let w = pseudo_cross(u, v, sig);
            prop_assert!(inner(w, u, sig).abs() < 1e-12);
            prop_assert!(inner(w, v, sig).abs() < 1e-12);
            let det = u.x * (v.y * t.z - v.z * t.y) - u.y * (v.x * t.z - v.z * t.x)
                + u.z * (v.x * t.y - v.y * t.x);
            prop_assert!((inner(w, t, sig) - det).abs() < 1e-11);
        }

        #[test]
        fn pc_mul_is_a_commutative_ring(
            neg in any::<bool>(),
            a in (-2.0..2.0f64, -2.0..2.0f64),
            b in (-2.0..2.0f64, -2.0..2.0f64),
            c in (-2.0..2.0f64, -2.0..2.0f64),
        ) {
            let eps2 = if neg { Sign::Minus } else { Sign::Plus };
            let [a, b, c] = [a, b, c].map(|(re, im)| PseudoComplex::new(re, im, eps2));
            let close = |x: PseudoComplex, y: PseudoComplex| (x.re - y.re).abs() < 1e-12 && (x.im - y.im).abs() < 1e-12;
            let ab = pc_mul(a, b).unwrap();
            prop_assert!(close(pc_mul(ab, c).unwrap(), pc_mul(a, pc_mul(b, c).unwrap()).unwrap()));
            prop_assert!(close(ab, pc_mul(b, a).unwrap()));
            let lhs = pc_mul(a, b.checked_add(c).unwrap()).unwrap();
            prop_assert!(close(lhs, ab.checked_add(pc_mul(a, c).unwrap()).unwrap()));
        }

        #[test]
        fn polynomials_satisfy_cauchy_riemann(
            neg in any::<bool>(),
            coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..5),
            u1 in -1.0..1.0f64,
            u2 in -1.0..1.0f64,
        ) {
            let eps2 = if neg { Sign::Minus } else { Sign::Plus };
            let cs: Vec<_> = coeffs.iter().map(|&(r, i)| PseudoComplex::new(r, i, eps2)).collect();
            let f = |a: f64, b: f64| pc_eval_poly(&cs, PseudoComplex::new(a, b, eps2)).unwrap().0;
            let h = 1e-4;
            let d1 = |g: &dyn Fn(PseudoComplex) -> f64| (g(f(u1 + h, u2)) - g(f(u1 - h, u2))) / (2.0 * h);
            let d2 = |g: &dyn Fn(PseudoComplex) -> f64| (g(f(u1, u2 + h)) - g(f(u1, u2 - h))) / (2.0 * h);
            let re = |z: PseudoComplex| z.re;
            let im = |z: PseudoComplex| z.im;
            prop_assert!((d1(&re) - d2(&im)).abs() < 1e-6);
            prop_assert!((d2(&re) + eps2.to_f64() * d1(&im)).abs() < 1e-6);
        }
    }
}
