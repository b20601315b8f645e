//! Truncated power series over a field tower and the Newton-Hensel
//! parametrization of a plane curve branch.

use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::tower::{FieldTower, TowerElement};
use std::sync::Arc;

/// Power series known modulo t^precision; `coeffs.len() == precision`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    tower: Arc<FieldTower>,
    coeffs: Vec<TowerElement>,
}

impl TruncatedSeries {
    pub fn new(tower: Arc<FieldTower>, mut coeffs: Vec<TowerElement>, precision: usize) -> Self {
        coeffs.resize(precision, tower.zero());
        TruncatedSeries { tower, coeffs }
    }

    pub fn zero(tower: &Arc<FieldTower>, precision: usize) -> Self {
        TruncatedSeries { tower: tower.clone(), coeffs: vec![tower.zero(); precision] }
    }

    pub fn constant(c: &TowerElement, precision: usize) -> Self {
        let tower = c.tower().clone();
        let mut s = Self::zero(&tower, precision);
        if precision > 0 {
            s.coeffs[0] = c.clone();
        }
        s
    }

    /// The series `c + t`.
    pub fn offset_parameter(c: &TowerElement, precision: usize) -> Self {
        let tower = c.tower().clone();
        let mut s = Self::constant(c, precision);
        if precision > 1 {
            s.coeffs[1] = tower.one();
        }
        s
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> TowerElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient below the precision.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(precision);
        TruncatedSeries::new(self.tower.clone(), coeffs, precision.min(self.precision()))
    }

    /// Zero-extend to a higher precision; the added coefficients are only
    /// placeholders, callers must refine them.
    fn extend_precision(&self, precision: usize) -> Self {
        TruncatedSeries::new(self.tower.clone(), self.coeffs.clone(), precision)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let n = self.precision().min(other.precision());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeffs[i].add(&other.coeffs[i])?);
        }
        Ok(TruncatedSeries { tower: self.tower.clone(), coeffs: out })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let n = self.precision().min(other.precision());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeffs[i].sub(&other.coeffs[i])?);
        }
        Ok(TruncatedSeries { tower: self.tower.clone(), coeffs: out })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.precision().min(other.precision());
        let mut out = vec![self.tower.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(TruncatedSeries { tower: self.tower.clone(), coeffs: out })
    }

    /// Division by a series with unit constant term.
    pub fn div(&self, den: &Self) -> Result<Self> {
        let n = self.precision().min(den.precision());
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d0i = d0.inv()?;
        let mut out = vec![self.tower.zero(); n];
        for k in 0..n {
            // q_k = (a_k - sum_{i<k} q_i d_{k-i}) / d_0
            let mut acc = self.coeff(k);
            for i in 0..k {
                acc = acc.sub(&out[i].mul(&den.coeff(k - i))?)?;
            }
            out[k] = acc.mul(&d0i)?;
        }
        Ok(TruncatedSeries { tower: self.tower.clone(), coeffs: out })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Evaluate a bivariate polynomial at a pair of series.
pub fn eval_bivariate(
    f: &MultiPoly,
    s0: &TruncatedSeries,
    s1: &TruncatedSeries,
) -> Result<TruncatedSeries> {
    if f.vars().len() != 2 {
        return Err(Error::Validation("series evaluation needs a bivariate polynomial".into()));
    }
    let prec = s0.precision().min(s1.precision());
    let t = s0.tower().clone();
    let d0 = f.terms().map(|(e, _)| e[0]).max().unwrap_or(0) as usize;
    let d1 = f.terms().map(|(e, _)| e[1]).max().unwrap_or(0) as usize;
    let mut pow0 = Vec::with_capacity(d0 + 1);
    pow0.push(TruncatedSeries::constant(&t.one(), prec));
    for k in 1..=d0 {
        let prev: &TruncatedSeries = &pow0[k - 1];
        pow0.push(prev.mul(s0)?);
    }
    let mut pow1 = Vec::with_capacity(d1 + 1);
    pow1.push(TruncatedSeries::constant(&t.one(), prec));
    for k in 1..=d1 {
        let prev: &TruncatedSeries = &pow1[k - 1];
        pow1.push(prev.mul(s1)?);
    }
    let mut acc = TruncatedSeries::zero(&t, prec);
    for (e, c) in f.terms() {
        let term = pow0[e[0] as usize].mul(&pow1[e[1] as usize])?;
        let mut scaled = Vec::with_capacity(prec);
        for x in term.coeffs() {
            scaled.push(x.mul(c)?);
        }
        acc = acc.add(&TruncatedSeries { tower: t.clone(), coeffs: scaled })?;
    }
    Ok(acc)
}

/// Solve f(x(t), b + t) = 0 for x(t) with x(0) = a by Newton iteration with
/// quadratic precision doubling.
///
/// `f` is bivariate in (solve_var, param_var); the partial derivative with
/// respect to `solve_var` must be a unit at (a, b).
pub fn hensel_parametrize(
    f: &MultiPoly,
    solve_var: &str,
    param_var: &str,
    a: &TowerElement,
    b: &TowerElement,
    precision: usize,
) -> Result<TruncatedSeries> {
    if precision == 0 {
        return Err(Error::Validation("precision must be positive".into()));
    }
    let t = f.tower().clone();
    let value = f.evaluate(&point_ordered(f, solve_var, param_var, a, b)?)?;
    if !value.is_zero() {
        return Err(Error::Validation("point does not lie on the curve".into()));
    }
    let fx = f.derivative(solve_var)?;
    let fx0 = fx.evaluate(&point_ordered(f, solve_var, param_var, a, b)?)?;
    if fx0.is_zero() {
        return Err(Error::Validation(
            "partial derivative in the solved variable is not a unit".into(),
        ));
    }
    // orient f as (solve, param)
    let f2 = reorder_bivariate(f, solve_var, param_var)?;
    let fx2 = reorder_bivariate(&fx, solve_var, param_var)?;
    let mut x = TruncatedSeries::constant(a, 1);
    let mut prec = 1usize;
    while prec < precision {
        prec = (prec * 2).min(precision);
        let x_ext = x.extend_precision(prec);
        let param = TruncatedSeries::offset_parameter(b, prec);
        let num = eval_bivariate(&f2, &x_ext, &param)?;
        let den = eval_bivariate(&fx2, &x_ext, &param)?;
        let delta = num.div(&den)?;
        x = x_ext.sub(&delta)?;
    }
    // exact re-substitution check
    let param = TruncatedSeries::offset_parameter(b, precision);
    let check = eval_bivariate(&f2, &x, &param)?;
    if !check.is_zero() {
        return Err(Error::InternalCheck("Hensel lift does not satisfy the equation".into()));
    }
    let _ = t;
    Ok(x)
}

fn point_ordered(
    f: &MultiPoly,
    solve_var: &str,
    param_var: &str,
    a: &TowerElement,
    b: &TowerElement,
) -> Result<Vec<TowerElement>> {
    let mut out = Vec::with_capacity(2);
    for v in f.vars() {
        if v == solve_var {
            out.push(a.clone());
        } else if v == param_var {
            out.push(b.clone());
        } else {
            return Err(Error::UnknownVariable(v.clone()));
        }
    }
    Ok(out)
}

/// Bivariate polynomial with variables reordered as (solve, param).
fn reorder_bivariate(f: &MultiPoly, solve_var: &str, param_var: &str) -> Result<MultiPoly> {
    if f.vars().len() != 2 {
        return Err(Error::Validation("expected a bivariate polynomial".into()));
    }
    if f.vars()[0] == solve_var {
        return Ok(f.clone());
    }
    let vars = vec![solve_var.to_string(), param_var.to_string()];
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        terms.push((vec![e[1], e[0]], c.clone()));
    }
    Ok(MultiPoly::from_terms(f.tower(), &vars, terms))
}
