//! Sparse multivariate polynomials and the differential-difference calculus
//! on them.
//!
//! Polynomials are the exact test space for the crate's two structural
//! operators:
//!
//! * the **reflection-weighted derivative** along axis `k`,
//!
//!   ```text
//!       D_k f(x) = d_k f(x) + k_k (f(x) - f(s_k x)) / x_k,
//!   ```
//!
//!   where `s_k` flips the sign of `x_k` (the difference quotient of a
//!   polynomial along a sign flip is again a polynomial, so `D_k` maps
//!   polynomials to polynomials exactly, term by term);
//!
//! * the **intertwining average** `V f(x) = int f(x_1 t_1, ..., x_d t_d)
//!   dPhi(t_1) ... dPhi(t_d)`, the linear map carrying ordinary partial
//!   derivatives to the weighted ones: `D_k V = V d_k`. On a monomial it acts
//!   diagonally — `V x^a = (prod_j m_{a_j}(k_j)) x^a` with `m_n` the `n`-th
//!   weight moment — which gives an exact closed route
//!   ([`Polynomial::intertwined`]) against which the quadrature route
//!   ([`intertwine`]) is verified.
//!
//! Coefficients live in a `BTreeMap` keyed by exponent multi-indices, so term
//! order (and every downstream evaluation) is deterministic.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::measure::Multiplicity;
use crate::special::{phi_moment, JacobiRule};
use crate::Result;

/// Sparse real polynomial in `dim` variables: a map from exponent
/// multi-indices to coefficients. Terms with exactly zero coefficient are
/// never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

impl Polynomial {
    /// The zero polynomial in `dim` variables.
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    /// A single term `c * x^a`.
    pub fn monomial(exponents: Vec<u32>, c: f64) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// multi-indices accumulate.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Self {
        let mut p = Self::zero(dim);
        for (a, c) in terms {
            assert_eq!(a.len(), dim, "exponent multi-index has wrong length");
            p.add_term(a, c);
        }
        p
    }

    /// Number of variables.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|a| a.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Iterates terms in deterministic (lexicographic multi-index) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(a, &c)| (a.as_slice(), c))
    }

    /// Coefficient of `x^a` (0 if absent).
    pub fn coefficient(&self, exponents: &[u32]) -> f64 {
        self.terms.get(exponents).copied().unwrap_or(0.0)
    }

    fn add_term(&mut self, a: Vec<u32>, c: f64) {
        if c == 0.0 {
            return;
        }
        let entry = self.terms.entry(a).or_insert(0.0);
        *entry += c;
        if *entry == 0.0 {
            let key = self
                .terms
                .iter()
                .find(|(_, &v)| v == 0.0)
                .map(|(k, _)| k.clone());
            if let Some(key) = key {
                self.terms.remove(&key);
            }
        }
    }

    /// Evaluates at `x` by Horner-free direct summation (exact within
    /// rounding for the modest degrees used here).
    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim, "point has wrong dimension");
        self.terms
            .iter()
            .map(|(a, &c)| {
                c * a
                    .iter()
                    .zip(x)
                    .map(|(&e, &xi)| xi.powi(e as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// `self + other`.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, &c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    /// `c * self`.
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, &v) in &self.terms {
            out.add_term(a.clone(), c * v);
        }
        out
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let sum: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| x + y).collect();
                out.add_term(sum, ca * cb);
            }
        }
        out
    }

    /// Composition with the sign flip of axis `k`: `x_k -> -x_k`.
    pub fn reflect(&self, axis: usize) -> Self {
        assert!(axis < self.dim);
        let mut out = Self::zero(self.dim);
        for (a, &c) in &self.terms {
            let sign = if a[axis] % 2 == 0 { 1.0 } else { -1.0 };
            out.add_term(a.clone(), sign * c);
        }
        out
    }

    /// Ordinary partial derivative along `axis`.
    pub fn partial_derivative(&self, axis: usize) -> Self {
        assert!(axis < self.dim);
        let mut out = Self::zero(self.dim);
        for (a, &c) in &self.terms {
            if a[axis] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[axis] -= 1;
            out.add_term(b, c * a[axis] as f64);
        }
        out
    }

    /// Reflection-weighted derivative `D_k` along `axis`, exact on terms: for
    /// a monomial `x^a`, the result is `(a_k + 2 k_k [a_k odd]) x^{a - e_k}`
    /// (zero when `a_k = 0`).
    pub fn dunkl_derivative(&self, k: &Multiplicity, axis: usize) -> Result<Self> {
        if k.dim() != self.dim {
            return Err(Error::InvalidParameter {
                name: "kappa",
                message: "multiplicity dimension differs from polynomial dimension".into(),
            });
        }
        if axis >= self.dim {
            return Err(Error::InvalidParameter {
                name: "axis",
                message: format!("axis {axis} out of range for dimension {}", self.dim),
            });
        }
        let kk = k.kappa()[axis];
        let mut out = Self::zero(self.dim);
        for (a, &c) in &self.terms {
            if a[axis] == 0 {
                continue;
            }
            let mut b = a.clone();
            b[axis] -= 1;
            let odd = a[axis] % 2 == 1;
            let factor = a[axis] as f64 + if odd { 2.0 * kk } else { 0.0 };
            out.add_term(b, c * factor);
        }
        Ok(out)
    }

    /// Sum of squared reflection-weighted derivatives over all axes — the
    /// weighted Laplacian. Satisfies `L ||x||^2 = 2d + 4 gamma`.
    pub fn dunkl_laplacian(&self, k: &Multiplicity) -> Result<Self> {
        let mut out = Self::zero(self.dim);
        for axis in 0..self.dim {
            let second = self
                .dunkl_derivative(k, axis)?
                .dunkl_derivative(k, axis)?;
            out = out.add(&second);
        }
        Ok(out)
    }

    /// Exact intertwining image: every monomial `x^a` is scaled by
    /// `prod_j m_{a_j}(k_j)` where `m_n` is the `n`-th moment of the axis
    /// weight. This is the closed route; [`intertwine`] is the quadrature
    /// route verified against it.
    pub fn intertwined(&self, k: &Multiplicity) -> Result<Self> {
        if k.dim() != self.dim {
            return Err(Error::InvalidParameter {
                name: "kappa",
                message: "multiplicity dimension differs from polynomial dimension".into(),
            });
        }
        let mut out = Self::zero(self.dim);
        for (a, &c) in &self.terms {
            let mut factor = 1.0;
            for (j, &e) in a.iter().enumerate() {
                factor *= phi_moment(k.kappa()[j], e)?;
            }
            out.add_term(a.clone(), c * factor);
        }
        Ok(out)
    }
}

/// Intertwining average `V f(x)` by tensor Gauss–Jacobi quadrature: averages
/// `f(x_1 t_1, ..., x_d t_d)` against the product of axis weights. Axes with
/// `k_j = 0` use the degenerate point mass at `t_j = 1` (classical branch).
/// Exact for polynomials because the rule order exceeds the degree.
pub fn intertwine(k: &Multiplicity, f: &Polynomial, x: &[f64]) -> Result<f64> {
    if k.dim() != f.dim() || x.len() != f.dim() {
        return Err(Error::InvalidParameter {
            name: "x",
            message: "dimension mismatch between multiplicity, polynomial, and point".into(),
        });
    }
    let order = (f.degree() as usize / 2 + 2).max(8);
    let mut rules: Vec<Option<JacobiRule>> = Vec::with_capacity(k.dim());
    for &kj in k.kappa() {
        rules.push(if kj == 0.0 {
            None
        } else {
            Some(JacobiRule::new(kj, order)?)
        });
    }
    // recursive tensor contraction over axes
    fn contract(
        f: &Polynomial,
        rules: &[Option<JacobiRule>],
        x: &[f64],
        scaled: &mut Vec<f64>,
        axis: usize,
    ) -> f64 {
        if axis == x.len() {
            return f.eval(scaled);
        }
        match &rules[axis] {
            None => {
                scaled.push(x[axis]);
                let v = contract(f, rules, x, scaled, axis + 1);
                scaled.pop();
                v
            }
            Some(rule) => {
                let mut acc = 0.0;
                for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
                    scaled.push(x[axis] * t);
                    acc += w * contract(f, rules, x, scaled, axis + 1);
                    scaled.pop();
                }
                acc
            }
        }
    }
    let mut scratch = Vec::with_capacity(k.dim());
    Ok(contract(f, &rules, x, &mut scratch, 0))
}
