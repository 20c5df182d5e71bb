//! Closed-form coefficient functions over chart coordinates and named parameters.
//!
//! Grammar (all binary operators left-associative except `^`):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'pi' | identifier | function '(' expr ')' | '(' expr ')'
//! ```
//!
//! Functions: `sin cos tan cot csc sqrt exp log sinh cosh`. Identifiers resolve
//! against the chart coordinates first, then the parameters; anything else is an
//! error at parse time. Differentiation is symbolic with constant folding.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::jet::{self, Taylor, DIM, MAX_ORDER, MAX_TERMS};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("domain error in `{expr}`: {detail}")]
    Domain { expr: String, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Cot,
    Csc,
    Sqrt,
    Exp,
    Log,
    Sinh,
    Cosh,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "cot" => Func::Cot,
            "csc" => Func::Csc,
            "sqrt" => Func::Sqrt,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Cot => "cot",
            Func::Csc => "csc",
            Func::Sqrt => "sqrt",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(f64),
    Coord(usize),
    Param(usize),
    Neg(Expr),
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Pow(Expr, Expr),
    Call(Func, Expr),
}

/// An immutable expression tree. Cloning is cheap (shared nodes).
#[derive(Clone, PartialEq)]
pub struct Expr(Arc<Node>);

/// Coordinate and parameter names an expression is resolved against.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbols {
    pub coords: Vec<String>,
    pub params: Vec<String>,
}

impl Symbols {
    pub fn new<S: AsRef<str>>(coords: &[S], params: &[S]) -> Self {
        Symbols {
            coords: coords.iter().map(|s| s.as_ref().to_string()).collect(),
            params: params.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    /// Parameter values in declaration order, looked up from a name map.
    pub fn param_values(&self, values: &HashMap<String, f64>) -> Option<Vec<f64>> {
        self.params.iter().map(|p| values.get(p).copied()).collect()
    }
}

impl Expr {
    fn new(node: Node) -> Expr {
        Expr(Arc::new(node))
    }

    pub fn constant(v: f64) -> Expr {
        Expr::new(Node::Const(v))
    }

    pub fn coord(mu: usize) -> Expr {
        Expr::new(Node::Coord(mu))
    }

    pub fn param(i: usize) -> Expr {
        Expr::new(Node::Param(i))
    }

    pub fn as_constant(&self) -> Option<f64> {
        match *self.0 {
            Node::Const(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_constant() == Some(0.0)
    }

    /// True if the expression references coordinate `mu`.
    pub fn depends_on(&self, mu: usize) -> bool {
        match &*self.0 {
            Node::Const(_) | Node::Param(_) => false,
            Node::Coord(m) => *m == mu,
            Node::Neg(a) | Node::Call(_, a) => a.depends_on(mu),
            Node::Add(a, b)
            | Node::Sub(a, b)
            | Node::Mul(a, b)
            | Node::Div(a, b)
            | Node::Pow(a, b) => a.depends_on(mu) || b.depends_on(mu),
        }
    }

    // Constructors with constant folding and trivial identities.

    pub fn neg(a: Expr) -> Expr {
        match *a.0 {
            Node::Const(v) => Expr::constant(-v),
            Node::Neg(ref inner) => inner.clone(),
            _ => Expr::new(Node::Neg(a)),
        }
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) => Expr::constant(x + y),
            (Some(x), _) if x == 0.0 => b,
            (_, Some(y)) if y == 0.0 => a,
            _ => Expr::new(Node::Add(a, b)),
        }
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) => Expr::constant(x - y),
            (Some(x), _) if x == 0.0 => Expr::neg(b),
            (_, Some(y)) if y == 0.0 => a,
            _ => Expr::new(Node::Sub(a, b)),
        }
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) => Expr::constant(x * y),
            (Some(x), _) if x == 0.0 => Expr::constant(0.0),
            (_, Some(y)) if y == 0.0 => Expr::constant(0.0),
            (Some(x), _) if x == 1.0 => b,
            (_, Some(y)) if y == 1.0 => a,
            (Some(x), _) if x == -1.0 => Expr::neg(b),
            (_, Some(y)) if y == -1.0 => Expr::neg(a),
            _ => Expr::new(Node::Mul(a, b)),
        }
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) if y != 0.0 => Expr::constant(x / y),
            (Some(x), _) if x == 0.0 => Expr::constant(0.0),
            (_, Some(y)) if y == 1.0 => a,
            _ => Expr::new(Node::Div(a, b)),
        }
    }

    pub fn pow(a: Expr, b: Expr) -> Expr {
        match (a.as_constant(), b.as_constant()) {
            (Some(x), Some(y)) if !(x < 0.0 && y.fract() != 0.0) && !(x == 0.0 && y < 0.0) => {
                Expr::constant(x.powf(y))
            }
            (_, Some(y)) if y == 0.0 => Expr::constant(1.0),
            (_, Some(y)) if y == 1.0 => a,
            _ => Expr::new(Node::Pow(a, b)),
        }
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::new(Node::Call(f, a))
    }

    /// Exact symbolic partial derivative with respect to coordinate `mu`.
    pub fn diff(&self, mu: usize) -> Expr {
        if !self.depends_on(mu) {
            return Expr::constant(0.0);
        }
        match &*self.0 {
            Node::Const(_) | Node::Param(_) => Expr::constant(0.0),
            Node::Coord(m) => Expr::constant(if *m == mu { 1.0 } else { 0.0 }),
            Node::Neg(a) => Expr::neg(a.diff(mu)),
            Node::Add(a, b) => Expr::add(a.diff(mu), b.diff(mu)),
            Node::Sub(a, b) => Expr::sub(a.diff(mu), b.diff(mu)),
            Node::Mul(a, b) => Expr::add(
                Expr::mul(a.diff(mu), b.clone()),
                Expr::mul(a.clone(), b.diff(mu)),
            ),
            Node::Div(a, b) => {
                // (a/b)' = a'/b − a b'/b²
                let first = Expr::div(a.diff(mu), b.clone());
                if !b.depends_on(mu) {
                    return first;
                }
                let second = Expr::div(
                    Expr::mul(a.clone(), b.diff(mu)),
                    Expr::pow(b.clone(), Expr::constant(2.0)),
                );
                Expr::sub(first, second)
            }
            Node::Pow(a, b) => {
                if !b.depends_on(mu) {
                    // n a^(n−1) a'
                    let n = b.clone();
                    let n_minus_1 = Expr::sub(b.clone(), Expr::constant(1.0));
                    Expr::mul(
                        Expr::mul(n, Expr::pow(a.clone(), n_minus_1)),
                        a.diff(mu),
                    )
                } else {
                    // a^b (b' ln a + b a'/a)
                    let ln_a = Expr::call(Func::Log, a.clone());
                    let inner = Expr::add(
                        Expr::mul(b.diff(mu), ln_a),
                        Expr::div(Expr::mul(b.clone(), a.diff(mu)), a.clone()),
                    );
                    Expr::mul(self.clone(), inner)
                }
            }
            Node::Call(f, a) => {
                let outer = match f {
                    Func::Sin => Expr::call(Func::Cos, a.clone()),
                    Func::Cos => Expr::neg(Expr::call(Func::Sin, a.clone())),
                    Func::Tan => Expr::add(
                        Expr::constant(1.0),
                        Expr::pow(Expr::call(Func::Tan, a.clone()), Expr::constant(2.0)),
                    ),
                    Func::Cot => Expr::neg(Expr::pow(
                        Expr::call(Func::Csc, a.clone()),
                        Expr::constant(2.0),
                    )),
                    Func::Csc => Expr::neg(Expr::mul(
                        Expr::call(Func::Csc, a.clone()),
                        Expr::call(Func::Cot, a.clone()),
                    )),
                    Func::Sqrt => Expr::div(
                        Expr::constant(0.5),
                        Expr::call(Func::Sqrt, a.clone()),
                    ),
                    Func::Exp => self.clone(),
                    Func::Log => Expr::div(Expr::constant(1.0), a.clone()),
                    Func::Sinh => Expr::call(Func::Cosh, a.clone()),
                    Func::Cosh => Expr::call(Func::Sinh, a.clone()),
                };
                Expr::mul(outer, a.diff(mu))
            }
        }
    }

    /// Numeric evaluation; non-finite or out-of-domain results are errors naming
    /// the offending subexpression.
    pub fn eval(&self, point: &[f64; DIM], params: &[f64]) -> Result<f64, ExprError> {
        self.eval_in(point, params)
    }

    /// [`Expr::eval`] carried out in the scalar type `S`.
    pub fn eval_in<S: Real>(&self, point: &[f64; DIM], params: &[f64]) -> Result<S, ExprError> {
        let zero = S::zero();
        let v = match &*self.0 {
            Node::Const(v) => S::from_f64(*v),
            Node::Coord(m) => S::from_f64(point[*m]),
            Node::Param(i) => S::from_f64(params[*i]),
            Node::Neg(a) => -a.eval_in::<S>(point, params)?,
            Node::Add(a, b) => a.eval_in::<S>(point, params)? + b.eval_in::<S>(point, params)?,
            Node::Sub(a, b) => a.eval_in::<S>(point, params)? - b.eval_in::<S>(point, params)?,
            Node::Mul(a, b) => a.eval_in::<S>(point, params)? * b.eval_in::<S>(point, params)?,
            Node::Div(a, b) => {
                let num: S = a.eval_in(point, params)?;
                let den: S = b.eval_in(point, params)?;
                if den == zero {
                    return Err(self.domain("division by zero"));
                }
                num / den
            }
            Node::Pow(a, b) => {
                let base: S = a.eval_in(point, params)?;
                let exp: S = b.eval_in(point, params)?;
                let e = exp.to_f64();
                if e.fract() == 0.0 && e.abs() < 1e9 && exp == S::from_f64(e) {
                    if base == zero && e < 0.0 {
                        return Err(self.domain("zero raised to a negative power"));
                    }
                    base.powi(e as i32)
                } else {
                    if base < zero {
                        return Err(self.domain("negative base with non-integer exponent"));
                    }
                    if base == zero && e < 0.0 {
                        return Err(self.domain("zero raised to a negative power"));
                    }
                    base.powf(exp)
                }
            }
            Node::Call(f, a) => {
                let x: S = a.eval_in(point, params)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => {
                        if x.cos() == zero {
                            return Err(self.domain("tan pole"));
                        }
                        x.tan()
                    }
                    Func::Cot => {
                        if x.sin() == zero {
                            return Err(self.domain("cot pole"));
                        }
                        x.cos() / x.sin()
                    }
                    Func::Csc => {
                        if x.sin() == zero {
                            return Err(self.domain("csc pole"));
                        }
                        x.sin().recip()
                    }
                    Func::Sqrt => {
                        if x < zero {
                            return Err(self.domain("square root of a negative number"));
                        }
                        x.sqrt()
                    }
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x <= zero {
                            return Err(self.domain("logarithm of a non-positive number"));
                        }
                        x.ln()
                    }
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                }
            }
        };
        if v.to_f64().is_finite() {
            Ok(v)
        } else {
            Err(self.domain("non-finite value"))
        }
    }

    fn domain(&self, detail: &str) -> ExprError {
        ExprError::Domain {
            expr: self.to_string(),
            detail: detail.to_string(),
        }
    }

    fn precedence(&self) -> u8 {
        match &*self.0 {
            Node::Add(..) | Node::Sub(..) => 1,
            Node::Mul(..) | Node::Div(..) => 2,
            Node::Neg(_) => 3,
            Node::Pow(..) => 4,
            Node::Const(v) if *v < 0.0 => 3,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match &*self.0 {
            Node::Const(v) => write!(f, "{v}"),
            Node::Coord(m) => write!(f, "x{m}"),
            Node::Param(i) => write!(f, "p{i}"),
            Node::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            Node::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            Node::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            Node::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            Node::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "/")?;
                wrap(b, 3, f)
            }
            Node::Pow(a, b) => {
                wrap(a, 5, f)?;
                write!(f, "^")?;
                wrap(b, 3, f)
            }
            Node::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expr({self})")
    }
}

/// Parses `text` resolving identifiers against `symbols`.
pub fn parse(text: &str, symbols: &Symbols) -> Result<Expr, ExprError> {
    let mut p = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
        symbols,
    };
    p.skip_ws();
    if p.pos >= p.bytes.len() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.error(&format!("unexpected `{}`", p.bytes[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    symbols: &'a Symbols,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                Expr::new(Node::Add(lhs, rhs))
            } else {
                Expr::new(Node::Sub(lhs, rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == b'*' {
                Expr::new(Node::Mul(lhs, rhs))
            } else {
                Expr::new(Node::Div(lhs, rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::new(Node::Neg(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::new(Node::Pow(base, exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_close()?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.identifier(),
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
        }
    }

    fn expect_close(&mut self) -> Result<(), ExprError> {
        match self.peek() {
            Some(b')') => {
                self.pos += 1;
                Ok(())
            }
            None => Err(self.error("expected `)` before end of input")),
            Some(c) => Err(self.error(&format!("expected `)`, found `{}`", c as char))),
        }
    }

    fn number(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let b = self.bytes;
        while self.pos < b.len() && (b[self.pos].is_ascii_digit() || b[self.pos] == b'.') {
            self.pos += 1;
        }
        if self.pos < b.len() && (b[self.pos] == b'e' || b[self.pos] == b'E') {
            let mut look = self.pos + 1;
            if look < b.len() && (b[look] == b'+' || b[look] == b'-') {
                look += 1;
            }
            if look < b.len() && b[look].is_ascii_digit() {
                self.pos = look;
                while self.pos < b.len() && b[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>().map(Expr::constant).map_err(|_| ExprError::Syntax {
            offset: start,
            message: format!("malformed number `{text}`"),
        })
    }

    fn identifier(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos;
        let b = self.bytes;
        while self.pos < b.len() && (b[self.pos].is_ascii_alphanumeric() || b[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if let Some(f) = Func::from_name(name) {
            if self.peek() != Some(b'(') {
                return Err(self.error(&format!("expected `(` after `{name}`")));
            }
            self.pos += 1;
            let arg = self.expr()?;
            self.expect_close()?;
            return Ok(Expr::call(f, arg));
        }
        if let Some(mu) = self.symbols.coords.iter().position(|c| c == name) {
            return Ok(Expr::coord(mu));
        }
        if let Some(i) = self.symbols.params.iter().position(|p| p == name) {
            return Ok(Expr::param(i));
        }
        if name == "pi" {
            return Ok(Expr::constant(std::f64::consts::PI));
        }
        Err(ExprError::UnknownIdentifier {
            name: name.to_string(),
            offset: start,
        })
    }
}

/// Value, gradient and Hessian of an expression at a chart point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; DIM],
    pub hess: [[f64; DIM]; DIM],
}

impl From<Jet2> for Taylor {
    fn from(j: Jet2) -> Taylor {
        let mut t = Taylor::constant(j.value, 2);
        for mu in 0..DIM {
            *t.coefficient_mut(1 + mu) = j.grad[mu];
            for nu in mu..DIM {
                let mut e = [0u8; DIM];
                e[mu] += 1;
                e[nu] += 1;
                let i = jet::monomial_index(e).expect("degree-2 monomial");
                *t.coefficient_mut(i) = j.hess[mu][nu] / jet::monomial_factorial(i);
            }
        }
        t
    }
}

/// An expression together with its lazily built derivative trees up to third order.
///
/// Trees are keyed by the monomial they differentiate for, so a grid sweep
/// differentiates each entry once.
#[derive(Clone)]
pub struct DiffExpr {
    expr: Expr,
    // derivative tree for every monomial of degree ≤ MAX_ORDER, index-aligned with jet monomials
    trees: Arc<[OnceLock<Expr>; MAX_TERMS]>,
}

impl fmt::Debug for DiffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffExpr({})", self.expr)
    }
}

impl DiffExpr {
    pub fn new(expr: Expr) -> Self {
        DiffExpr {
            expr,
            trees: Arc::new(std::array::from_fn(|_| OnceLock::new())),
        }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    /// The derivative tree ∂^α e for monomial index `i`.
    pub fn derivative_tree(&self, i: usize) -> &Expr {
        self.trees[i].get_or_init(|| {
            let e = jet::monomial_exponents(i);
            if i == 0 {
                return self.expr.clone();
            }
            // strip one power of the last nonzero exponent and differentiate the parent
            let mu = (0..DIM).rev().find(|&m| e[m] > 0).expect("nonconstant monomial");
            let mut parent = e;
            parent[mu] -= 1;
            let pi = jet::monomial_index(parent).expect("parent monomial");
            self.derivative_tree(pi).diff(mu)
        })
    }

    /// Jet of the requested order at `point`.
    pub fn eval_taylor(
        &self,
        point: &[f64; DIM],
        params: &[f64],
        order: usize,
    ) -> Result<Taylor, ExprError> {
        self.eval_taylor_in(point, params, order)
    }

    /// [`DiffExpr::eval_taylor`] carried out in the scalar type `S`.
    pub fn eval_taylor_in<S: Real>(
        &self,
        point: &[f64; DIM],
        params: &[f64],
        order: usize,
    ) -> Result<Taylor<S>, ExprError> {
        assert!(order <= MAX_ORDER);
        let n = jet::terms_up_to(order);
        let mut coeffs = [S::zero(); MAX_TERMS];
        for (i, c) in coeffs.iter_mut().enumerate().take(n) {
            let tree = self.derivative_tree(i);
            *c = tree.eval_in::<S>(point, params)? / S::from_f64(jet::monomial_factorial(i));
        }
        Ok(Taylor::from_coefficients(order, &coeffs))
    }

    pub fn eval_jet2(&self, point: &[f64; DIM], params: &[f64]) -> Result<Jet2, ExprError> {
        let t = self.eval_taylor(point, params, 2)?;
        Ok(Jet2 {
            value: t.value(),
            grad: std::array::from_fn(|mu| t.grad(mu)),
            hess: std::array::from_fn(|mu| std::array::from_fn(|nu| t.hess(mu, nu))),
        })
    }
}

/// Convenience wrapper: value, gradient and Hessian of `e` at `point`.
pub fn eval_jet2(e: &Expr, point: &[f64; DIM], params: &[f64]) -> Result<Jet2, ExprError> {
    DiffExpr::new(e.clone()).eval_jet2(point, params)
}
