use std::fmt;
use std::ops;
use std::sync::Arc;

use super::{Jet2, MAX_DIM};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Coord(usize),
    Add(Arc<Node>, Arc<Node>),
    Sub(Arc<Node>, Arc<Node>),
    Mul(Arc<Node>, Arc<Node>),
    Div(Arc<Node>, Arc<Node>),
    Neg(Arc<Node>),
    Powi(Arc<Node>, i32),
    /// Real power; the base must be strictly positive where evaluated.
    Powf(Arc<Node>, f64),
    Sin(Arc<Node>),
    Cos(Arc<Node>),
    Exp(Arc<Node>),
    Log(Arc<Node>),
}

/// A closed-form smooth scalar field on `R^dim`, stored as an immutable
/// expression tree.
///
/// Trees share subterms through `Arc`, so cloning and composing is cheap and
/// expressions can be evaluated from several threads.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldExpr {
    dim: usize,
    node: Arc<Node>,
}

fn max_coord(node: &Node) -> Option<usize> {
    use Node::*;
    match node {
        Const(_) => None,
        Coord(i) => Some(*i),
        Add(a, b) | Sub(a, b) | Mul(a, b) | Div(a, b) => match (max_coord(a), max_coord(b)) {
            (Some(x), Some(y)) => Some(x.max(y)),
            (x, y) => x.or(y),
        },
        Neg(a) | Powi(a, _) | Powf(a, _) | Sin(a) | Cos(a) | Exp(a) | Log(a) => max_coord(a),
    }
}

impl FieldExpr {
    fn wrap(dim: usize, node: Node) -> Self {
        FieldExpr {
            dim,
            node: Arc::new(node),
        }
    }

    pub fn constant(c: f64) -> Self {
        FieldExpr::wrap(1, Node::Const(c))
    }

    /// The coordinate function `x_axis`; its dimension is `axis + 1`.
    pub fn coord(axis: usize) -> Self {
        assert!(axis < MAX_DIM, "coordinate index {axis} out of range");
        FieldExpr::wrap(axis + 1, Node::Coord(axis))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The same field regarded as a function on `R^dim`.
    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidInput(format!("unsupported dimension {dim}")));
        }
        let needed = max_coord(&self.node).map_or(1, |i| i + 1);
        if needed > dim {
            return Err(Error::DimensionMismatch {
                expected: needed,
                got: dim,
            });
        }
        Ok(FieldExpr {
            dim,
            node: self.node.clone(),
        })
    }

    /// True when the field does not depend on any coordinate.
    pub fn is_constant(&self) -> bool {
        max_coord(&self.node).is_none()
    }

    /// Returns the literal value if the tree is a single constant node.
    pub fn as_literal(&self) -> Option<f64> {
        match *self.node {
            Node::Const(c) => Some(c),
            _ => None,
        }
    }

    fn binary(a: &FieldExpr, b: &FieldExpr, node: Node) -> FieldExpr {
        FieldExpr::wrap(a.dim.max(b.dim), node)
    }

    fn unary(&self, node: Node) -> FieldExpr {
        FieldExpr::wrap(self.dim, node)
    }

    pub fn powi(&self, k: i32) -> FieldExpr {
        match (k, &*self.node) {
            (0, _) => FieldExpr::constant(1.0).with_dim_unchecked(self.dim),
            (1, _) => self.clone(),
            (_, Node::Const(c)) => FieldExpr::constant(c.powi(k)).with_dim_unchecked(self.dim),
            _ => self.unary(Node::Powi(self.node.clone(), k)),
        }
    }

    /// Real power of a positive base.
    pub fn powf(&self, r: f64) -> FieldExpr {
        if r == 0.0 {
            return FieldExpr::constant(1.0).with_dim_unchecked(self.dim);
        }
        if r == 1.0 {
            return self.clone();
        }
        self.unary(Node::Powf(self.node.clone(), r))
    }

    /// `self^r`, using an integer power node when `r` is integral so that a
    /// zero base stays admissible.
    pub fn pow(&self, r: f64) -> FieldExpr {
        if r.fract() == 0.0 && r.abs() <= i32::MAX as f64 {
            self.powi(r as i32)
        } else {
            self.powf(r)
        }
    }

    pub fn sin(&self) -> FieldExpr {
        self.unary(Node::Sin(self.node.clone()))
    }

    pub fn cos(&self) -> FieldExpr {
        self.unary(Node::Cos(self.node.clone()))
    }

    pub fn exp(&self) -> FieldExpr {
        self.unary(Node::Exp(self.node.clone()))
    }

    pub fn ln(&self) -> FieldExpr {
        self.unary(Node::Log(self.node.clone()))
    }

    fn with_dim_unchecked(mut self, dim: usize) -> FieldExpr {
        self.dim = dim;
        self
    }

    /// Replaces every occurrence of coordinate 0 by `inner`, i.e. the
    /// composition `self(inner(x))` for a one-dimensional `self`.
    pub fn compose(&self, inner: &FieldExpr) -> Result<FieldExpr> {
        if max_coord(&self.node).unwrap_or(0) > 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: self.dim,
            });
        }
        Ok(FieldExpr {
            dim: inner.dim,
            node: substitute(&self.node, &inner.node),
        })
    }

    /// Symbolic partial derivative with respect to `x_axis`.
    pub fn partial(&self, axis: usize) -> FieldExpr {
        FieldExpr {
            dim: self.dim,
            node: derivative(&self.node, axis),
        }
    }

    /// Symbolic Laplacian `sum_i d^2/dx_i^2`.
    pub fn laplacian_expr(&self) -> FieldExpr {
        let mut acc: Option<Arc<Node>> = None;
        for i in 0..self.dim {
            let d2 = derivative(&derivative(&self.node, i), i);
            acc = Some(match acc {
                None => d2,
                Some(a) => add(a, d2),
            });
        }
        FieldExpr {
            dim: self.dim,
            node: acc.unwrap_or_else(|| Arc::new(Node::Const(0.0))),
        }
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Value of the field at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        eval_value(&self.node, x)
    }

    /// Value, gradient and Hessian of the field at `x`.
    pub fn jet(&self, x: &[f64]) -> Result<Jet2> {
        self.check_point(x)?;
        eval_node(&self.node, self.dim, x)
    }
}

/// Exact value, gradient and Hessian of `expr` at `x`.
pub fn eval_jet(expr: &FieldExpr, x: &[f64]) -> Result<Jet2> {
    expr.jet(x)
}

fn eval_value(node: &Node, x: &[f64]) -> Result<f64> {
    use Node::*;
    Ok(match node {
        Const(c) => *c,
        Coord(i) => x[*i],
        Add(a, b) => eval_value(a, x)? + eval_value(b, x)?,
        Sub(a, b) => eval_value(a, x)? - eval_value(b, x)?,
        Mul(a, b) => eval_value(a, x)? * eval_value(b, x)?,
        Div(a, b) => {
            let d = eval_value(b, x)?;
            if d == 0.0 {
                return Err(Error::domain(b, "division by zero"));
            }
            eval_value(a, x)? / d
        }
        Neg(a) => -eval_value(a, x)?,
        Powi(a, k) => {
            let v = eval_value(a, x)?;
            if *k < 0 && v == 0.0 {
                return Err(Error::domain(a, "negative integer power of zero"));
            }
            v.powi(*k)
        }
        Powf(a, r) => {
            let v = eval_value(a, x)?;
            if v <= 0.0 {
                return Err(Error::domain(
                    a,
                    format!("real power of non-positive base {v}"),
                ));
            }
            v.powf(*r)
        }
        Sin(a) => eval_value(a, x)?.sin(),
        Cos(a) => eval_value(a, x)?.cos(),
        Exp(a) => eval_value(a, x)?.exp(),
        Log(a) => {
            let v = eval_value(a, x)?;
            if v <= 0.0 {
                return Err(Error::domain(a, format!("log of non-positive value {v}")));
            }
            v.ln()
        }
    })
}

fn eval_node(node: &Node, dim: usize, x: &[f64]) -> Result<Jet2> {
    use Node::*;
    Ok(match node {
        Const(c) => Jet2::constant(dim, *c),
        Coord(i) => Jet2::coordinate(dim, *i, x[*i]),
        Add(a, b) => eval_node(a, dim, x)?.add(&eval_node(b, dim, x)?),
        Sub(a, b) => eval_node(a, dim, x)?.sub(&eval_node(b, dim, x)?),
        Mul(a, b) => eval_node(a, dim, x)?.mul(&eval_node(b, dim, x)?),
        Div(a, b) => {
            let den = eval_node(b, dim, x)?;
            if den.value() == 0.0 {
                return Err(Error::domain(b, "division by zero"));
            }
            eval_node(a, dim, x)?.mul(&den.recip())
        }
        Neg(a) => eval_node(a, dim, x)?.scale(-1.0),
        Powi(a, k) => {
            let j = eval_node(a, dim, x)?;
            let v = j.value();
            if *k < 0 && v == 0.0 {
                return Err(Error::domain(a, "negative integer power of zero"));
            }
            let k = *k;
            let kf = k as f64;
            let d1 = if k == 0 { 0.0 } else { kf * v.powi(k - 1) };
            let d2 = if k == 0 || k == 1 {
                0.0
            } else {
                kf * (kf - 1.0) * v.powi(k - 2)
            };
            j.chain(v.powi(k), d1, d2)
        }
        Powf(a, r) => {
            let j = eval_node(a, dim, x)?;
            let v = j.value();
            if v <= 0.0 {
                return Err(Error::domain(
                    a,
                    format!("real power of non-positive base {v}"),
                ));
            }
            let f = v.powf(*r);
            j.chain(f, r * f / v, r * (r - 1.0) * f / (v * v))
        }
        Sin(a) => {
            let j = eval_node(a, dim, x)?;
            let (s, c) = j.value().sin_cos();
            j.chain(s, c, -s)
        }
        Cos(a) => {
            let j = eval_node(a, dim, x)?;
            let (s, c) = j.value().sin_cos();
            j.chain(c, -s, -c)
        }
        Exp(a) => {
            let j = eval_node(a, dim, x)?;
            let e = j.value().exp();
            j.chain(e, e, e)
        }
        Log(a) => {
            let j = eval_node(a, dim, x)?;
            let v = j.value();
            if v <= 0.0 {
                return Err(Error::domain(a, format!("log of non-positive value {v}")));
            }
            j.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
        }
    })
}

fn substitute(node: &Arc<Node>, inner: &Arc<Node>) -> Arc<Node> {
    use Node::*;
    match &**node {
        Const(_) => node.clone(),
        Coord(_) => inner.clone(),
        Add(a, b) => Arc::new(Add(substitute(a, inner), substitute(b, inner))),
        Sub(a, b) => Arc::new(Sub(substitute(a, inner), substitute(b, inner))),
        Mul(a, b) => Arc::new(Mul(substitute(a, inner), substitute(b, inner))),
        Div(a, b) => Arc::new(Div(substitute(a, inner), substitute(b, inner))),
        Neg(a) => Arc::new(Neg(substitute(a, inner))),
        Powi(a, k) => Arc::new(Powi(substitute(a, inner), *k)),
        Powf(a, r) => Arc::new(Powf(substitute(a, inner), *r)),
        Sin(a) => Arc::new(Sin(substitute(a, inner))),
        Cos(a) => Arc::new(Cos(substitute(a, inner))),
        Exp(a) => Arc::new(Exp(substitute(a, inner))),
        Log(a) => Arc::new(Log(substitute(a, inner))),
    }
}

// Folding constructors used by symbolic differentiation so that derivative
// trees do not fill up with `0 * ...` and `1 * ...` subterms.

fn lit(node: &Node) -> Option<f64> {
    match node {
        Node::Const(c) => Some(*c),
        _ => None,
    }
}

fn cst(c: f64) -> Arc<Node> {
    Arc::new(Node::Const(c))
}

fn add(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => cst(x + y),
        (Some(x), _) if x == 0.0 => b,
        (_, Some(y)) if y == 0.0 => a,
        _ => Arc::new(Node::Add(a, b)),
    }
}

fn sub(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => cst(x - y),
        (Some(x), _) if x == 0.0 => neg(b),
        (_, Some(y)) if y == 0.0 => a,
        _ => Arc::new(Node::Sub(a, b)),
    }
}

fn mul(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (lit(&a), lit(&b)) {
        (Some(x), Some(y)) => cst(x * y),
        (Some(x), _) | (_, Some(x)) if x == 0.0 => cst(0.0),
        (Some(x), _) if x == 1.0 => b,
        (_, Some(y)) if y == 1.0 => a,
        _ => Arc::new(Node::Mul(a, b)),
    }
}

fn div(a: Arc<Node>, b: Arc<Node>) -> Arc<Node> {
    match (lit(&a), lit(&b)) {
        (Some(x), _) if x == 0.0 => cst(0.0),
        (_, Some(y)) if y == 1.0 => a,
        _ => Arc::new(Node::Div(a, b)),
    }
}

fn neg(a: Arc<Node>) -> Arc<Node> {
    match &*a {
        Node::Const(c) => cst(-c),
        Node::Neg(inner) => inner.clone(),
        _ => Arc::new(Node::Neg(a)),
    }
}

fn derivative(node: &Arc<Node>, axis: usize) -> Arc<Node> {
    use Node::*;
    match &**node {
        Const(_) => cst(0.0),
        Coord(i) => cst(if *i == axis { 1.0 } else { 0.0 }),
        Add(a, b) => add(derivative(a, axis), derivative(b, axis)),
        Sub(a, b) => sub(derivative(a, axis), derivative(b, axis)),
        Mul(a, b) => add(
            mul(derivative(a, axis), b.clone()),
            mul(a.clone(), derivative(b, axis)),
        ),
        Div(a, b) => {
            let da = derivative(a, axis);
            let db = derivative(b, axis);
            sub(
                div(da, b.clone()),
                div(mul(a.clone(), db), mul(b.clone(), b.clone())),
            )
        }
        Neg(a) => neg(derivative(a, axis)),
        Powi(a, k) => {
            let da = derivative(a, axis);
            let lowered = match *k - 1 {
                0 => cst(1.0),
                1 => a.clone(),
                m => Arc::new(Powi(a.clone(), m)),
            };
            mul(mul(cst(*k as f64), lowered), da)
        }
        Powf(a, r) => {
            let da = derivative(a, axis);
            let lowered = if r - 1.0 == 0.0 {
                cst(1.0)
            } else {
                Arc::new(Powf(a.clone(), r - 1.0))
            };
            mul(mul(cst(*r), lowered), da)
        }
        Sin(a) => mul(Arc::new(Cos(a.clone())), derivative(a, axis)),
        Cos(a) => neg(mul(Arc::new(Sin(a.clone())), derivative(a, axis))),
        Exp(a) => mul(node.clone(), derivative(a, axis)),
        Log(a) => div(derivative(a, axis), a.clone()),
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Node::*;
        match self {
            Const(c) => write!(f, "{c}"),
            Coord(i) => write!(f, "x{i}"),
            Add(a, b) => write!(f, "(+ {a} {b})"),
            Sub(a, b) => write!(f, "(- {a} {b})"),
            Mul(a, b) => write!(f, "(* {a} {b})"),
            Div(a, b) => write!(f, "(/ {a} {b})"),
            Neg(a) => write!(f, "(- {a})"),
            Powi(a, k) => write!(f, "(^ {a} {k})"),
            Powf(a, r) => write!(f, "(pow {a} {r})"),
            Sin(a) => write!(f, "(sin {a})"),
            Cos(a) => write!(f, "(cos {a})"),
            Exp(a) => write!(f, "(exp {a})"),
            Log(a) => write!(f, "(log {a})"),
        }
    }
}

/// Prints the expression in the prefix s-expression syntax accepted by
/// [`parse_expr`](super::parse_expr).
impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.fmt(f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait<&FieldExpr> for &FieldExpr {
            type Output = FieldExpr;
            fn $method(self, rhs: &FieldExpr) -> FieldExpr {
                FieldExpr::binary(
                    self,
                    rhs,
                    Node::$variant(self.node.clone(), rhs.node.clone()),
                )
            }
        }
        impl ops::$trait<FieldExpr> for FieldExpr {
            type Output = FieldExpr;
            fn $method(self, rhs: FieldExpr) -> FieldExpr {
                (&self).$method(&rhs)
            }
        }
        impl ops::$trait<f64> for FieldExpr {
            type Output = FieldExpr;
            fn $method(self, rhs: f64) -> FieldExpr {
                (&self).$method(&FieldExpr::constant(rhs))
            }
        }
        impl ops::$trait<FieldExpr> for f64 {
            type Output = FieldExpr;
            fn $method(self, rhs: FieldExpr) -> FieldExpr {
                (&FieldExpr::constant(self)).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl ops::Neg for FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        self.unary(Node::Neg(self.node.clone()))
    }
}

impl ops::Neg for &FieldExpr {
    type Output = FieldExpr;
    fn neg(self) -> FieldExpr {
        self.unary(Node::Neg(self.node.clone()))
    }
}
