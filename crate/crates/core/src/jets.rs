//! Truncated Taylor arithmetic.
//!
//! [`Jet2`] carries the Taylor polynomial of a bivariate field through total
//! degree 3, [`Jet1`] the Taylor polynomial of a univariate function through
//! degree 4. Coefficients are stored in divided form: the entry for `xⁱyʲ` is
//! `∂ⁱ⁺ʲφ / ∂xⁱ∂yʲ / (i! j!)`. Use [`Jet2::partial`] and [`Jet1::derivative`]
//! to read raw derivatives.
//!
//! Every operation is a truncated power-series operation, so sums, products
//! and compositions of polynomial jets reproduce the symbolic result exactly
//! up to floating-point rounding.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix2;

use crate::error::{GeomError, Result};

/// Numbers that fields can be evaluated over: plain `f64` values and jets.
pub trait Scalar:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    /// A constant with the same shape (base point) as `self`.
    fn lift(&self, c: f64) -> Self;
    /// Order-0 part.
    fn value(&self) -> f64;
    /// `f(self)` given `f(a), f'(a), …, f⁗(a)` at `a = self.value()`.
    fn map_series(&self, derivs: &[f64; 5]) -> Self;
    fn scale(&self, c: f64) -> Self;

    fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.map_series(&[s, c, -s, -c, s])
    }

    fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.map_series(&[c, -s, -c, s, c])
    }

    fn exp(&self) -> Self {
        let e = self.value().exp();
        self.map_series(&[e; 5])
    }

    fn sqrt(&self) -> Result<Self> {
        let a = self.value();
        if a <= 0.0 || !a.is_finite() {
            return Err(GeomError::Domain(format!("sqrt is not smooth at {a}")));
        }
        let s = a.sqrt();
        let s3 = s * a;
        let s5 = s3 * a;
        let s7 = s5 * a;
        Ok(self.map_series(&[
            s,
            0.5 / s,
            -0.25 / s3,
            0.375 / s5,
            -0.9375 / s7,
        ]))
    }

    fn recip(&self) -> Result<Self> {
        let a = self.value();
        if a == 0.0 || !a.is_finite() {
            return Err(GeomError::Domain(format!("reciprocal is not defined at {a}")));
        }
        let r = 1.0 / a;
        let r2 = r * r;
        Ok(self.map_series(&[r, -r2, 2.0 * r2 * r, -6.0 * r2 * r2, 24.0 * r2 * r2 * r]))
    }

    fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.recip()?.powi(-n);
        }
        let mut acc = self.lift(1.0);
        let mut base = self.clone();
        let mut k = n as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base.clone();
            }
            k >>= 1;
            if k > 0 {
                base = base.clone() * base;
            }
        }
        Ok(acc)
    }
}

impl Scalar for f64 {
    fn lift(&self, c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn map_series(&self, derivs: &[f64; 5]) -> Self {
        derivs[0]
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
}

/// Monomials `(i, j)` of total degree ≤ 3 in storage order.
pub const MONOMIALS: [(usize, usize); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

const FACTORIAL: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[inline]
fn index(i: usize, j: usize) -> usize {
    let n = i + j;
    n * (n + 1) / 2 + j
}

/// Order-3 Taylor jet of a scalar field of two variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    base: [f64; 2],
    coeffs: [f64; 10],
}

impl Jet2 {
    pub fn new(base: [f64; 2], coeffs: [f64; 10]) -> Self {
        Self { base, coeffs }
    }

    pub fn zero(base: [f64; 2]) -> Self {
        Self::new(base, [0.0; 10])
    }

    pub fn constant(base: [f64; 2], c: f64) -> Self {
        let mut j = Self::zero(base);
        j.coeffs[0] = c;
        j
    }

    /// The coordinate function `x` expanded at `base`.
    pub fn var_x(base: [f64; 2]) -> Self {
        let mut j = Self::constant(base, base[0]);
        j.coeffs[1] = 1.0;
        j
    }

    pub fn var_y(base: [f64; 2]) -> Self {
        let mut j = Self::constant(base, base[1]);
        j.coeffs[2] = 1.0;
        j
    }

    /// Builds a jet from `(i, j, coefficient)` entries; entries above degree 3
    /// are dropped.
    pub fn from_monomials(base: [f64; 2], entries: &[(usize, usize, f64)]) -> Self {
        let mut j = Self::zero(base);
        for &(a, b, c) in entries {
            if a + b <= 3 {
                j.coeffs[index(a, b)] += c;
            }
        }
        j
    }

    pub fn base(&self) -> [f64; 2] {
        self.base
    }

    pub fn coeffs(&self) -> &[f64; 10] {
        &self.coeffs
    }

    /// Divided coefficient of `xⁱyʲ` (zero above degree 3).
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        if i + j > 3 {
            0.0
        } else {
            self.coeffs[index(i, j)]
        }
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: f64) {
        assert!(i + j <= 3, "Jet2 stores monomials up to degree 3");
        self.coeffs[index(i, j)] = c;
    }

    /// Raw partial derivative `∂ⁱ⁺ʲ / ∂xⁱ∂yʲ` at the base point.
    pub fn partial(&self, i: usize, j: usize) -> f64 {
        self.coeff(i, j) * FACTORIAL[i] * FACTORIAL[j]
    }

    pub fn gradient(&self) -> [f64; 2] {
        [self.coeffs[1], self.coeffs[2]]
    }

    pub fn hessian(&self) -> Matrix2<f64> {
        Matrix2::new(
            2.0 * self.coeffs[3],
            self.coeffs[4],
            self.coeffs[4],
            2.0 * self.coeffs[5],
        )
    }

    /// The same jet with its order-0 part removed.
    pub fn nilpotent(&self) -> Self {
        let mut j = *self;
        j.coeffs[0] = 0.0;
        j
    }

    /// `∂/∂x`; the result is exact through degree 2 only (its cubic part is zero).
    pub fn dx(&self) -> Self {
        let mut out = Self::zero(self.base);
        for &(i, j) in MONOMIALS.iter() {
            if i > 0 {
                out.coeffs[index(i - 1, j)] = i as f64 * self.coeffs[index(i, j)];
            }
        }
        out
    }

    /// `∂/∂y`; exact through degree 2.
    pub fn dy(&self) -> Self {
        let mut out = Self::zero(self.base);
        for &(i, j) in MONOMIALS.iter() {
            if j > 0 {
                out.coeffs[index(i, j - 1)] = j as f64 * self.coeffs[index(i, j)];
            }
        }
        out
    }

    /// Derivative along the constant vector `dir`; exact through degree 2.
    pub fn directional(&self, dir: [f64; 2]) -> Self {
        self.dx().scale(dir[0]) + self.dy().scale(dir[1])
    }

    /// Evaluates the Taylor polynomial at `base + offset`.
    pub fn eval_offset(&self, offset: [f64; 2]) -> f64 {
        self.substitute(&offset[0], &offset[1])
    }

    /// Evaluates the stored polynomial with `x - base.x := dx`, `y - base.y := dy`.
    ///
    /// With jets as arguments this is composition; `dx` and `dy` should have a
    /// vanishing order-0 part for the result to be a valid truncation.
    pub fn substitute<T: Scalar>(&self, dx: &T, dy: &T) -> T {
        let one = dx.lift(1.0);
        let px = [one.clone(), dx.clone(), dx.clone() * dx.clone(), dx.clone() * dx.clone() * dx.clone()];
        let py = [one, dy.clone(), dy.clone() * dy.clone(), dy.clone() * dy.clone() * dy.clone()];
        let mut acc = dx.lift(0.0);
        for (k, &(i, j)) in MONOMIALS.iter().enumerate() {
            let c = self.coeffs[k];
            if c != 0.0 {
                acc = acc + (px[i].clone() * py[j].clone()).scale(c);
            }
        }
        acc
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Jet2) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn assert_same_base(&self, other: &Jet2) {
        debug_assert!(
            self.base == other.base,
            "jet bases differ: {:?} vs {:?}",
            self.base,
            other.base
        );
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(mut self, rhs: Jet2) -> Jet2 {
        self.assert_same_base(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(mut self, rhs: Jet2) -> Jet2 {
        self.assert_same_base(&rhs);
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(mut self) -> Jet2 {
        for a in self.coeffs.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        self.assert_same_base(&rhs);
        let mut out = Jet2::zero(self.base);
        for (a, &(i1, j1)) in MONOMIALS.iter().enumerate() {
            let ca = self.coeffs[a];
            if ca == 0.0 {
                continue;
            }
            for (b, &(i2, j2)) in MONOMIALS.iter().enumerate() {
                if i1 + i2 + j1 + j2 <= 3 {
                    out.coeffs[index(i1 + i2, j1 + j2)] += ca * rhs.coeffs[b];
                }
            }
        }
        out
    }
}

impl Scalar for Jet2 {
    fn lift(&self, c: f64) -> Self {
        Jet2::constant(self.base, c)
    }
    fn value(&self) -> f64 {
        self.coeffs[0]
    }
    fn map_series(&self, derivs: &[f64; 5]) -> Self {
        let n = self.nilpotent();
        let n2 = n * n;
        let n3 = n2 * n;
        Jet2::constant(self.base, derivs[0])
            + n.scale(derivs[1])
            + n2.scale(derivs[2] / 2.0)
            + n3.scale(derivs[3] / 6.0)
    }
    fn scale(&self, c: f64) -> Self {
        let mut j = *self;
        for a in j.coeffs.iter_mut() {
            *a *= c;
        }
        j
    }
}

/// Order-4 Taylor jet of a function of one variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1 {
    base: f64,
    coeffs: [f64; 5],
}

impl Jet1 {
    pub fn new(base: f64, coeffs: [f64; 5]) -> Self {
        Self { base, coeffs }
    }

    pub fn constant(base: f64, c: f64) -> Self {
        Self::new(base, [c, 0.0, 0.0, 0.0, 0.0])
    }

    /// The identity function `t` expanded at `base`.
    pub fn variable(base: f64) -> Self {
        Self::new(base, [base, 1.0, 0.0, 0.0, 0.0])
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn coeffs(&self) -> &[f64; 5] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// k-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeff(k) * FACTORIAL.get(k).copied().unwrap_or(f64::NAN)
    }

    pub fn nilpotent(&self) -> Self {
        let mut j = *self;
        j.coeffs[0] = 0.0;
        j
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let mut j = *self;
        for c in j.coeffs.iter_mut().skip(order + 1) {
            *c = 0.0;
        }
        j
    }

    pub fn eval_offset(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    /// Derivative of the Taylor polynomial, evaluated at `base + t`.
    pub fn eval_derivative_offset(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, c)| acc * t + k as f64 * c)
    }
}

impl Add for Jet1 {
    type Output = Jet1;
    fn add(mut self, rhs: Jet1) -> Jet1 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet1 {
    type Output = Jet1;
    fn sub(mut self, rhs: Jet1) -> Jet1 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet1 {
    type Output = Jet1;
    fn neg(mut self) -> Jet1 {
        for a in self.coeffs.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet1 {
    type Output = Jet1;
    fn mul(self, rhs: Jet1) -> Jet1 {
        let mut out = [0.0; 5];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0.0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(5 - i) {
                out[i + j] += a * b;
            }
        }
        Jet1::new(self.base, out)
    }
}

impl Scalar for Jet1 {
    fn lift(&self, c: f64) -> Self {
        Jet1::constant(self.base, c)
    }
    fn value(&self) -> f64 {
        self.coeffs[0]
    }
    fn map_series(&self, derivs: &[f64; 5]) -> Self {
        let n = self.nilpotent();
        let mut acc = Jet1::constant(self.base, derivs[0]);
        let mut pow = n;
        for (k, d) in derivs.iter().enumerate().skip(1) {
            acc = acc + pow.scale(d / FACTORIAL[k]);
            pow = pow * n;
        }
        acc
    }
    fn scale(&self, c: f64) -> Self {
        let mut j = *self;
        for a in j.coeffs.iter_mut() {
            *a *= c;
        }
        j
    }
}

/// A planar map given by two [`Jet2`] components over the same base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetMap2 {
    pub components: [Jet2; 2],
}

impl JetMap2 {
    pub fn new(first: Jet2, second: Jet2) -> Result<Self> {
        if first.base() != second.base() {
            return Err(GeomError::Contract(format!(
                "map components expanded at different points {:?} and {:?}",
                first.base(),
                second.base()
            )));
        }
        Ok(Self {
            components: [first, second],
        })
    }

    pub fn identity(base: [f64; 2]) -> Self {
        Self {
            components: [Jet2::var_x(base), Jet2::var_y(base)],
        }
    }

    pub fn base(&self) -> [f64; 2] {
        self.components[0].base()
    }

    /// Image of the base point.
    pub fn value(&self) -> [f64; 2] {
        [self.components[0].value(), self.components[1].value()]
    }

    /// Differential at the base point; rows are the component gradients.
    pub fn linear_part(&self) -> Matrix2<f64> {
        let [a, b] = self.components;
        Matrix2::new(a.coeff(1, 0), a.coeff(0, 1), b.coeff(1, 0), b.coeff(0, 1))
    }

    pub fn is_invertible(&self) -> bool {
        self.linear_part().determinant() != 0.0
    }

    pub fn max_abs_diff(&self, other: &JetMap2) -> f64 {
        self.components[0]
            .max_abs_diff(&other.components[0])
            .max(self.components[1].max_abs_diff(&other.components[1]))
    }
}

/// `outer ∘ inner`, truncated at order 3 and expanded at `inner`'s base.
pub fn jet_compose(outer: &Jet2, inner: &JetMap2) -> Result<Jet2> {
    let value = inner.value();
    let target = outer.base();
    let scale = 1.0 + target[0].abs().max(target[1].abs());
    if (value[0] - target[0]).abs() > 1e-12 * scale || (value[1] - target[1]).abs() > 1e-12 * scale
    {
        return Err(GeomError::Contract(format!(
            "inner map sends its base to {value:?}, outer jet is expanded at {target:?}"
        )));
    }
    let [a, b] = inner.components;
    Ok(outer.substitute(&a.nilpotent(), &b.nilpotent()))
}

/// Inverse of a planar jet map through order 3.
///
/// The linear part is inverted exactly; orders 2 and 3 follow from two rounds
/// of successive substitution `G ← L⁻¹(s − N(G))`, where `N` is the nonlinear
/// part of the map. Each round fixes one more order.
pub fn jet_invert(map: &JetMap2) -> Result<JetMap2> {
    let lin = map.linear_part();
    let det = lin.determinant();
    let norm = lin.norm();
    if det.abs() <= 1e-14 * norm * norm || !det.is_finite() {
        return Err(GeomError::Rank { det });
    }
    let inv = lin.try_inverse().ok_or(GeomError::Rank { det })?;
    let source = map.base();
    let target = map.value();

    let mut nonlinear = map.components;
    for c in nonlinear.iter_mut() {
        c.set_coeff(0, 0, 0.0);
        c.set_coeff(1, 0, 0.0);
        c.set_coeff(0, 1, 0.0);
    }

    let s = [
        Jet2::var_x(target).nilpotent(),
        Jet2::var_y(target).nilpotent(),
    ];
    let apply_inv = |r: [Jet2; 2]| -> [Jet2; 2] {
        [
            r[0].scale(inv[(0, 0)]) + r[1].scale(inv[(0, 1)]),
            r[0].scale(inv[(1, 0)]) + r[1].scale(inv[(1, 1)]),
        ]
    };
    let mut g = apply_inv(s);
    for _ in 0..2 {
        let n0 = nonlinear[0].substitute(&g[0], &g[1]);
        let n1 = nonlinear[1].substitute(&g[0], &g[1]);
        g = apply_inv([s[0] - n0, s[1] - n1]);
    }
    let first = g[0] + Jet2::constant(target, source[0]);
    let second = g[1] + Jet2::constant(target, source[1]);
    JetMap2::new(first, second)
}
