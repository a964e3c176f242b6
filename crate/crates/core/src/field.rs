//! Analytic scalar and vector fields on a parameter rectangle.
//!
//! A field is a rule that, given a point and an order, returns the jet of the
//! field there. Fields built from expressions in the coordinate jets are
//! exact to any order up to [`MAX_ORDER`](crate::jet::MAX_ORDER); derived
//! fields (e.g. curvatures computed from a surface) may consume a few orders
//! internally.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::pseudo_metric::Vec3E;

/// A parameter point `(u1, u2)`.
pub type Point = [f64; 2];

type ScalarRule = dyn Fn(Point, usize) -> Jet + Send + Sync;
type VectorRule = dyn Fn(Point, usize) -> [Jet; 3] + Send + Sync;

#[derive(Clone)]
pub struct ScalarField(Arc<ScalarRule>);

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField(..)")
    }
}

impl ScalarField {
    pub fn new(rule: impl Fn(Point, usize) -> Jet + Send + Sync + 'static) -> Self {
        ScalarField(Arc::new(rule))
    }

    /// Field given by an expression in the coordinate jets `u1`, `u2`.
    pub fn from_expr(expr: impl Fn(Jet, Jet) -> Jet + Send + Sync + 'static) -> Self {
        ScalarField::new(move |p, order| {
            let (u1, u2) = Jet::variables(p, order);
            expr(u1, u2)
        })
    }

    pub fn constant(value: f64) -> Self {
        ScalarField::new(move |_, order| Jet::constant(value, order))
    }

    pub fn jet(&self, p: Point, order: usize) -> Jet {
        (self.0)(p, order)
    }

    pub fn value(&self, p: Point) -> f64 {
        self.jet(p, 0).value()
    }

    /// `∂^{i+j} f / ∂u1^i ∂u2^j` at `p`.
    pub fn partial(&self, p: Point, i: usize, j: usize) -> f64 {
        self.jet(p, i + j).partial(i, j)
    }

    pub fn map(&self, f: impl Fn(Jet) -> Jet + Send + Sync + 'static) -> ScalarField {
        let inner = self.clone();
        ScalarField::new(move |p, order| f(inner.jet(p, order)))
    }

    pub fn zip_with(
        &self,
        other: &ScalarField,
        f: impl Fn(Jet, Jet) -> Jet + Send + Sync + 'static,
    ) -> ScalarField {
        let (a, b) = (self.clone(), other.clone());
        ScalarField::new(move |p, order| f(a.jet(p, order), b.jet(p, order)))
    }

    pub fn neg(&self) -> ScalarField {
        self.map(|j| -j)
    }
}

/// An analytic map from the parameter rectangle into E³.
#[derive(Clone)]
pub struct VectorField(Arc<VectorRule>);

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("VectorField(..)")
    }
}

impl VectorField {
    pub fn new(rule: impl Fn(Point, usize) -> [Jet; 3] + Send + Sync + 'static) -> Self {
        VectorField(Arc::new(rule))
    }

    pub fn from_expr(expr: impl Fn(Jet, Jet) -> [Jet; 3] + Send + Sync + 'static) -> Self {
        VectorField::new(move |p, order| {
            let (u1, u2) = Jet::variables(p, order);
            expr(u1, u2)
        })
    }

    pub fn jet(&self, p: Point, order: usize) -> [Jet; 3] {
        (self.0)(p, order)
    }

    pub fn value(&self, p: Point) -> Vec3E {
        let [x, y, z] = self.jet(p, 0);
        Vec3E::new(x.value(), y.value(), z.value())
    }

    /// The partial derivative `∂^{i+j} / ∂u1^i ∂u2^j` of every component.
    pub fn partial(&self, p: Point, i: usize, j: usize) -> Vec3E {
        let [x, y, z] = self.jet(p, i + j);
        Vec3E::new(x.partial(i, j), y.partial(i, j), z.partial(i, j))
    }

    /// One coordinate function as a scalar field.
    pub fn component(&self, k: usize) -> ScalarField {
        assert!(k < 3, "component index {k} out of range");
        let inner = self.clone();
        ScalarField::new(move |p, order| inner.jet(p, order)[k])
    }
}

/// Extracts the partials of a vector jet at the expansion point.
pub fn vec_partial(v: &[Jet; 3], i: usize, j: usize) -> Vec3E {
    Vec3E::new(v[0].partial(i, j), v[1].partial(i, j), v[2].partial(i, j))
}

/// The closed rectangle `[lo₁, hi₁] × [lo₂, hi₂]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: Point,
    pub hi: Point,
}

const DOMAIN_SLACK: f64 = 1e-12;

impl Domain {
    pub fn new(lo: Point, hi: Point) -> Result<Domain> {
        let ok = (0..2).all(|k| lo[k].is_finite() && hi[k].is_finite() && lo[k] < hi[k]);
        if !ok {
            return Err(Error::InvalidDomain(format!(
                "[{}, {}] x [{}, {}] is empty or non-finite",
                lo[0], hi[0], lo[1], hi[1]
            )));
        }
        Ok(Domain { lo, hi })
    }

    pub fn square(half: f64) -> Domain {
        Domain {
            lo: [-half, -half],
            hi: [half, half],
        }
    }

    pub fn contains(&self, p: Point) -> bool {
        (0..2).all(|k| {
            let slack = DOMAIN_SLACK * (1.0 + self.hi[k].abs().max(self.lo[k].abs()));
            p[k] >= self.lo[k] - slack && p[k] <= self.hi[k] + slack
        })
    }

    pub fn check(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OutsideDomain(p[0], p[1]))
        }
    }

    pub fn width(&self, k: usize) -> f64 {
        self.hi[k] - self.lo[k]
    }

    /// Uniform `n1 × n2` grid, row-major with `u2` outer and `u1` inner.
    ///
    /// # Panics
    ///
    /// Panics if either count is below 2.
    pub fn grid(&self, n1: usize, n2: usize) -> Vec<Point> {
        assert!(
            n1 >= 2 && n2 >= 2,
            "grid needs at least 2 points per direction"
        );
        let coord = |k: usize, i: usize, n: usize| {
            if i + 1 == n {
                self.hi[k]
            } else {
                self.lo[k] + self.width(k) * i as f64 / (n - 1) as f64
            }
        };
        (0..n2)
            .flat_map(|j| (0..n1).map(move |i| [coord(0, i, n1), coord(1, j, n2)]))
            .collect()
    }
}
