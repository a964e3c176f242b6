//! Truncated bivariate Taylor jets.
//!
//! A [`Jet`] stores the Taylor coefficients of a function of `(u1, u2)` around a
//! fixed point, up to a total degree chosen at construction time (at most
//! [`MAX_ORDER`]). Arithmetic and the elementary functions propagate those
//! coefficients exactly, so every partial derivative up to the jet's order is
//! available without truncation error beyond floating point.
//!
//! Coefficients are stored as `c[i][j] = ∂^{i+j} f / (∂u1^i ∂u2^j) / (i! j!)`,
//! packed by total degree.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Highest total degree a jet can carry.
pub const MAX_ORDER: usize = 6;

const LEN: usize = (MAX_ORDER + 1) * (MAX_ORDER + 2) / 2;

const FACTORIAL: [f64; MAX_ORDER + 1] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0];

#[inline]
const fn idx(i: usize, j: usize) -> usize {
    let k = i + j;
    k * (k + 1) / 2 + j
}

/// Number of stored coefficients for a jet of the given order.
#[inline]
const fn len_for(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

/// Coordinate direction of a partial derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    U1,
    U2,
}

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    order: usize,
    c: [f64; LEN],
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet")
            .field("order", &self.order)
            .field("coeffs", &&self.c[..len_for(self.order)])
            .finish()
    }
}

impl Jet {
    /// A jet with all derivatives zero.
    ///
    /// # Panics
    ///
    /// Panics if `order > MAX_ORDER`.
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut c = [0.0; LEN];
        c[0] = value;
        Jet { order, c }
    }

    /// The coordinate function `u1` (or `u2`) seeded at `value`.
    pub fn variable(value: f64, axis: Axis, order: usize) -> Self {
        let mut jet = Jet::constant(value, order);
        if order >= 1 {
            match axis {
                Axis::U1 => jet.c[idx(1, 0)] = 1.0,
                Axis::U2 => jet.c[idx(0, 1)] = 1.0,
            }
        }
        jet
    }

    /// Seeds both coordinate variables at `p`.
    pub fn variables(p: [f64; 2], order: usize) -> (Jet, Jet) {
        (
            Jet::variable(p[0], Axis::U1, order),
            Jet::variable(p[1], Axis::U2, order),
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Raw Taylor coefficient of `u1^i u2^j`. Zero above the jet's order.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > self.order {
            0.0
        } else {
            self.c[idx(i, j)]
        }
    }

    /// The partial derivative `∂^{i+j} f / ∂u1^i ∂u2^j` at the expansion point.
    ///
    /// # Panics
    ///
    /// Panics if `i + j` exceeds the jet's order.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        assert!(
            i + j <= self.order,
            "partial ({i},{j}) requested from a jet of order {}",
            self.order
        );
        self.c[idx(i, j)] * FACTORIAL[i] * FACTORIAL[j]
    }

    /// The jet of `∂f/∂u` along `axis`; its order drops by one.
    ///
    /// # Panics
    ///
    /// Panics on an order-0 jet.
    pub fn diff(&self, axis: Axis) -> Jet {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let mut c = [0.0; LEN];
        for k in 0..=order {
            for j in 0..=k {
                let i = k - j;
                c[idx(i, j)] = match axis {
                    Axis::U1 => (i + 1) as f64 * self.c[idx(i + 1, j)],
                    Axis::U2 => (j + 1) as f64 * self.c[idx(i, j + 1)],
                };
            }
        }
        Jet { order, c }
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Jet {
        if order >= self.order {
            return *self;
        }
        let mut c = [0.0; LEN];
        let n = len_for(order);
        c[..n].copy_from_slice(&self.c[..n]);
        Jet { order, c }
    }

    pub fn is_finite(&self) -> bool {
        self.c[..len_for(self.order)].iter().all(|x| x.is_finite())
    }

    /// Composes a univariate function with this jet.
    ///
    /// `derivs[k]` must hold the k-th derivative of the outer function at
    /// `self.value()`, for `k = 0..=self.order()`.
    pub fn compose(&self, derivs: &[f64]) -> Jet {
        debug_assert!(derivs.len() > self.order);
        let mut delta = *self;
        delta.c[0] = 0.0;
        let mut out = Jet::constant(derivs[0], self.order);
        let mut power = Jet::constant(1.0, self.order);
        for (k, &d) in derivs.iter().enumerate().take(self.order + 1).skip(1) {
            power *= delta;
            out += power * (d / FACTORIAL[k]);
        }
        out
    }

    pub fn recip(&self) -> Jet {
        let a = self.value();
        let mut d = [0.0; MAX_ORDER + 1];
        let inv = 1.0 / a;
        let mut p = inv;
        for (k, slot) in d.iter_mut().enumerate().take(self.order + 1) {
            // (-1)^k k! / a^{k+1}
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            *slot = sign * FACTORIAL[k] * p;
            p *= inv;
        }
        self.compose(&d)
    }

    pub fn exp(&self) -> Jet {
        let e = self.value().exp();
        self.compose(&[e; MAX_ORDER + 1])
    }

    pub fn ln(&self) -> Jet {
        let a = self.value();
        let mut d = [0.0; MAX_ORDER + 1];
        d[0] = a.ln();
        let inv = 1.0 / a;
        let mut p = inv;
        for (k, slot) in d.iter_mut().enumerate().take(self.order + 1).skip(1) {
            // (-1)^{k-1} (k-1)! / a^k
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            *slot = sign * FACTORIAL[k - 1] * p;
            p *= inv;
        }
        self.compose(&d)
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [s, c, -s, -c];
        self.compose(&std::array::from_fn::<f64, { MAX_ORDER + 1 }, _>(|k| {
            cycle[k % 4]
        }))
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.value().sin_cos();
        let cycle = [c, -s, -c, s];
        self.compose(&std::array::from_fn::<f64, { MAX_ORDER + 1 }, _>(|k| {
            cycle[k % 4]
        }))
    }

    pub fn sinh(&self) -> Jet {
        let a = self.value();
        let (s, c) = (a.sinh(), a.cosh());
        self.compose(&std::array::from_fn::<f64, { MAX_ORDER + 1 }, _>(|k| {
            if k % 2 == 0 {
                s
            } else {
                c
            }
        }))
    }

    pub fn cosh(&self) -> Jet {
        let a = self.value();
        let (s, c) = (a.sinh(), a.cosh());
        self.compose(&std::array::from_fn::<f64, { MAX_ORDER + 1 }, _>(|k| {
            if k % 2 == 0 {
                c
            } else {
                s
            }
        }))
    }

    /// Real power `x^r`; requires a positive value unless `r` is a
    /// non-negative integer.
    pub fn powf(&self, r: f64) -> Jet {
        let a = self.value();
        let mut d = [0.0; MAX_ORDER + 1];
        let mut coef = 1.0;
        for (k, slot) in d.iter_mut().enumerate().take(self.order + 1) {
            *slot = coef * a.powf(r - k as f64);
            coef *= r - k as f64;
        }
        self.compose(&d)
    }

    pub fn powi(&self, n: i32) -> Jet {
        match n {
            0 => Jet::constant(1.0, self.order),
            n if n > 0 => {
                let mut out = *self;
                for _ in 1..n {
                    out *= *self;
                }
                out
            }
            n => self.powi(-n).recip(),
        }
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    /// `|f|`, analytic away from the zero set of `f`.
    pub fn abs(&self) -> Jet {
        if self.value() < 0.0 {
            -*self
        } else {
            *self
        }
    }

    fn zip(self, rhs: Jet, f: impl Fn(f64, f64) -> f64) -> Jet {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for (k, slot) in c.iter_mut().enumerate().take(len_for(order)) {
            *slot = f(self.c[k], rhs.c[k]);
        }
        Jet { order, c }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut c = [0.0; LEN];
        for k in 0..=order {
            for j in 0..=k {
                let i = k - j;
                let mut acc = 0.0;
                for a in 0..=i {
                    for b in 0..=j {
                        acc += self.c[idx(a, b)] * rhs.c[idx(i - a, j - b)];
                    }
                }
                c[idx(i, j)] = acc;
            }
        }
        Jet { order, c }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for x in self.c.iter_mut() {
            *x = -*x;
        }
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        for x in self.c[..len_for(self.order)].iter_mut() {
            *x *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(mut self, rhs: f64) -> Jet {
        for x in self.c[..len_for(self.order)].iter_mut() {
            *x /= rhs;
        }
        self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs * self
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        rhs.recip() * self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        *self = *self + rhs;
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        *self = *self - rhs;
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}
