//! Scalar fields on the parameter plane.
//!
//! A [`Field`] is a small expression tree over the coordinates `u`, `v`:
//! polynomials (the primary input format) plus `+`, `×`, integer powers,
//! `sin`, `cos`, `exp` and `sqrt`. Fields can be evaluated over any
//! [`Scalar`], differentiated symbolically and composed with other fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::Result;
use crate::jets::{Jet2, Scalar};

/// A monomial `c·uⁱvʲ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub i: u32,
    pub j: u32,
    pub c: f64,
}

impl Monomial {
    pub const fn new(i: u32, j: u32, c: f64) -> Self {
        Self { i, j, c }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

#[derive(Debug, PartialEq)]
enum Node {
    Const(f64),
    U,
    V,
    Poly(Vec<Monomial>),
    Add(Field, Field),
    Mul(Field, Field),
    Neg(Field),
    Powi(Field, i32),
    Sin(Field),
    Cos(Field),
    Exp(Field),
    Sqrt(Field),
}

#[derive(Clone, PartialEq)]
pub struct Field(Arc<Node>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Const(c) => write!(f, "{c}"),
            Node::U => write!(f, "u"),
            Node::V => write!(f, "v"),
            Node::Poly(m) => {
                write!(f, "poly[")?;
                for (k, mono) in m.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}·u^{}v^{}", mono.c, mono.i, mono.j)?;
                }
                write!(f, "]")
            }
            Node::Add(a, b) => write!(f, "({a:?} + {b:?})"),
            Node::Mul(a, b) => write!(f, "({a:?} · {b:?})"),
            Node::Neg(a) => write!(f, "-{a:?}"),
            Node::Powi(a, n) => write!(f, "{a:?}^{n}"),
            Node::Sin(a) => write!(f, "sin({a:?})"),
            Node::Cos(a) => write!(f, "cos({a:?})"),
            Node::Exp(a) => write!(f, "exp({a:?})"),
            Node::Sqrt(a) => write!(f, "sqrt({a:?})"),
        }
    }
}

impl Field {
    fn node(n: Node) -> Self {
        Field(Arc::new(n))
    }

    pub fn constant(c: f64) -> Self {
        Self::node(Node::Const(c))
    }

    pub fn u() -> Self {
        Self::node(Node::U)
    }

    pub fn v() -> Self {
        Self::node(Node::V)
    }

    /// Polynomial `Σ c·uⁱvʲ`; like terms are merged and zero terms dropped.
    pub fn poly(monomials: &[Monomial]) -> Self {
        let mut merged: Vec<Monomial> = Vec::with_capacity(monomials.len());
        for m in monomials {
            match merged.iter_mut().find(|x| x.i == m.i && x.j == m.j) {
                Some(x) => x.c += m.c,
                None => merged.push(*m),
            }
        }
        merged.retain(|m| m.c != 0.0);
        merged.sort_by_key(|m| (m.i + m.j, m.j));
        match merged.as_slice() {
            [] => Self::constant(0.0),
            [m] if m.i == 0 && m.j == 0 => Self::constant(m.c),
            _ => Self::node(Node::Poly(merged)),
        }
    }

    /// Shorthand for [`Field::poly`] from `(i, j, c)` tuples.
    pub fn poly_from(entries: &[(u32, u32, f64)]) -> Self {
        let monos: Vec<Monomial> = entries
            .iter()
            .map(|&(i, j, c)| Monomial::new(i, j, c))
            .collect();
        Self::poly(&monos)
    }

    pub fn as_const(&self) -> Option<f64> {
        match &*self.0 {
            Node::Const(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    pub fn powi(&self, n: i32) -> Self {
        match (n, self.as_const()) {
            (0, _) => Self::constant(1.0),
            (1, _) => self.clone(),
            (_, Some(c)) => Self::constant(c.powi(n)),
            _ => Self::node(Node::Powi(self.clone(), n)),
        }
    }

    pub fn sin(&self) -> Self {
        match self.as_const() {
            Some(c) => Self::constant(c.sin()),
            None => Self::node(Node::Sin(self.clone())),
        }
    }

    pub fn cos(&self) -> Self {
        match self.as_const() {
            Some(c) => Self::constant(c.cos()),
            None => Self::node(Node::Cos(self.clone())),
        }
    }

    pub fn exp(&self) -> Self {
        match self.as_const() {
            Some(c) => Self::constant(c.exp()),
            None => Self::node(Node::Exp(self.clone())),
        }
    }

    pub fn sqrt(&self) -> Self {
        Self::node(Node::Sqrt(self.clone()))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::constant(c) * self.clone()
    }

    /// `Σ cₖ·fieldₖ + offset`.
    pub fn linear_combination(terms: &[(f64, &Field)], offset: f64) -> Self {
        terms
            .iter()
            .fold(Self::constant(offset), |acc, (c, f)| acc + f.scale(*c))
    }

    pub fn eval<T: Scalar>(&self, u: &T, v: &T) -> Result<T> {
        Ok(match &*self.0 {
            Node::Const(c) => u.lift(*c),
            Node::U => u.clone(),
            Node::V => v.clone(),
            Node::Poly(monos) => {
                let mut acc = u.lift(0.0);
                for m in monos {
                    let term = u.powi(m.i as i32)? * v.powi(m.j as i32)?;
                    acc = acc + term.scale(m.c);
                }
                acc
            }
            Node::Add(a, b) => a.eval(u, v)? + b.eval(u, v)?,
            Node::Mul(a, b) => a.eval(u, v)? * b.eval(u, v)?,
            Node::Neg(a) => -a.eval(u, v)?,
            Node::Powi(a, n) => a.eval(u, v)?.powi(*n)?,
            Node::Sin(a) => a.eval(u, v)?.sin(),
            Node::Cos(a) => a.eval(u, v)?.cos(),
            Node::Exp(a) => a.eval(u, v)?.exp(),
            Node::Sqrt(a) => a.eval(u, v)?.sqrt()?,
        })
    }

    pub fn value_at(&self, p: [f64; 2]) -> Result<f64> {
        self.eval(&p[0], &p[1])
    }

    /// Symbolic partial derivative.
    pub fn diff(&self, var: Var) -> Field {
        match &*self.0 {
            Node::Const(_) => Self::constant(0.0),
            Node::U => Self::constant(if var == Var::U { 1.0 } else { 0.0 }),
            Node::V => Self::constant(if var == Var::V { 1.0 } else { 0.0 }),
            Node::Poly(monos) => {
                let d: Vec<Monomial> = monos
                    .iter()
                    .filter_map(|m| match var {
                        Var::U if m.i > 0 => Some(Monomial::new(m.i - 1, m.j, m.c * m.i as f64)),
                        Var::V if m.j > 0 => Some(Monomial::new(m.i, m.j - 1, m.c * m.j as f64)),
                        _ => None,
                    })
                    .collect();
                Self::poly(&d)
            }
            Node::Add(a, b) => a.diff(var) + b.diff(var),
            Node::Mul(a, b) => a.diff(var) * b.clone() + a.clone() * b.diff(var),
            Node::Neg(a) => -a.diff(var),
            Node::Powi(a, n) => a.powi(n - 1).scale(*n as f64) * a.diff(var),
            Node::Sin(a) => a.cos() * a.diff(var),
            Node::Cos(a) => -(a.sin() * a.diff(var)),
            Node::Exp(a) => self.clone() * a.diff(var),
            Node::Sqrt(a) => a.diff(var) * self.powi(-1).scale(0.5),
        }
    }

    /// `self(u(·), v(·))`.
    pub fn compose(&self, u: &Field, v: &Field) -> Field {
        match &*self.0 {
            Node::Const(_) => self.clone(),
            Node::U => u.clone(),
            Node::V => v.clone(),
            Node::Poly(monos) => monos.iter().fold(Self::constant(0.0), |acc, m| {
                acc + (u.powi(m.i as i32) * v.powi(m.j as i32)).scale(m.c)
            }),
            Node::Add(a, b) => a.compose(u, v) + b.compose(u, v),
            Node::Mul(a, b) => a.compose(u, v) * b.compose(u, v),
            Node::Neg(a) => -a.compose(u, v),
            Node::Powi(a, n) => a.compose(u, v).powi(*n),
            Node::Sin(a) => a.compose(u, v).sin(),
            Node::Cos(a) => a.compose(u, v).cos(),
            Node::Exp(a) => a.compose(u, v).exp(),
            Node::Sqrt(a) => a.compose(u, v).sqrt(),
        }
    }
}

impl Add for Field {
    type Output = Field;
    fn add(self, rhs: Field) -> Field {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Field::constant(a + b),
            (Some(a), _) if a == 0.0 => rhs,
            (_, Some(b)) if b == 0.0 => self,
            _ => Field::node(Node::Add(self, rhs)),
        }
    }
}

impl Sub for Field {
    type Output = Field;
    fn sub(self, rhs: Field) -> Field {
        self + (-rhs)
    }
}

impl Neg for Field {
    type Output = Field;
    fn neg(self) -> Field {
        match &*self.0 {
            Node::Const(c) => Field::constant(-c),
            Node::Neg(a) => a.clone(),
            _ => Field::node(Node::Neg(self)),
        }
    }
}

impl Mul for Field {
    type Output = Field;
    fn mul(self, rhs: Field) -> Field {
        match (self.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Field::constant(a * b),
            (Some(a), _) if a == 0.0 => Field::constant(0.0),
            (_, Some(b)) if b == 0.0 => Field::constant(0.0),
            (Some(a), _) if a == 1.0 => rhs,
            (_, Some(b)) if b == 1.0 => self,
            _ => Field::node(Node::Mul(self, rhs)),
        }
    }
}

/// Taylor jet of `field` at `base` through order 3.
pub fn jet2_eval_field(field: &Field, base: [f64; 2]) -> Result<Jet2> {
    field.eval(&Jet2::var_x(base), &Jet2::var_y(base))
}
