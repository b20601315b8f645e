//! Sparse multivariate polynomials over a field tower.

use crate::error::{Error, Result};
use crate::poly::{BiPoly, Poly};
use crate::tower::{FieldTower, TowerElement};
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    tower: Arc<FieldTower>,
    vars: Vec<String>,
    terms: BTreeMap<Exponents, TowerElement>,
}

/// Degree-lexicographic comparison: total degree first, then exponent of the
/// earliest variable decides.
pub fn cmp_deglex(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let ta: u64 = a.iter().map(|&e| e as u64).sum();
    let tb: u64 = b.iter().map(|&e| e as u64).sum();
    ta.cmp(&tb).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(tower: &Arc<FieldTower>, vars: &[String]) -> MultiPoly {
        MultiPoly { tower: tower.clone(), vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(tower: &Arc<FieldTower>, vars: &[String], c: TowerElement) -> MultiPoly {
        let mut p = MultiPoly::zero(tower, vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn variable(tower: &Arc<FieldTower>, vars: &[String], name: &str) -> Result<MultiPoly> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        let mut p = MultiPoly::zero(tower, vars);
        p.terms.insert(exps, tower.one());
        Ok(p)
    }

    pub fn from_terms(
        tower: &Arc<FieldTower>,
        vars: &[String],
        terms: Vec<(Exponents, TowerElement)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(tower, vars);
        for (e, c) in terms {
            p.add_term(&e, &c);
        }
        p
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &TowerElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn add_term(&mut self, exps: &Exponents, c: &TowerElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(cur) => {
                let s = cur.add(c).expect("same tower");
                if s.is_zero() {
                    self.terms.remove(exps);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(exps.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            tower: self.tower.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(&self.tower, &self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(&e, &ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &TowerElement) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(&self.tower, &self.vars);
        for (e, a) in &self.terms {
            out.add_term(e, &a.mul(c)?);
        }
        Ok(out)
    }

    pub fn derivative(&self, var: &str) -> Result<MultiPoly> {
        let idx = self.var_index(var)?;
        let mut out = MultiPoly::zero(&self.tower, &self.vars);
        for (e, c) in &self.terms {
            if e[idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[idx] -= 1;
            out.add_term(&e2, &c.scale(&self.tower.base().from_i64(e[idx] as i64)));
        }
        Ok(out)
    }

    /// Substitute a field value for one variable; the variable disappears
    /// from the variable list.
    pub fn substitute_value(&self, var: &str, value: &TowerElement) -> Result<MultiPoly> {
        let idx = self.var_index(var)?;
        let mut new_vars = self.vars.clone();
        new_vars.remove(idx);
        let mut out = MultiPoly::zero(&self.tower, &new_vars);
        // cache powers of the value
        let max_e = self.terms.keys().map(|e| e[idx]).max().unwrap_or(0);
        let mut powers = Vec::with_capacity(max_e as usize + 1);
        powers.push(self.tower.one());
        for k in 1..=max_e {
            let prev: &TowerElement = &powers[(k - 1) as usize];
            powers.push(prev.mul(value)?);
        }
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2.remove(idx);
            out.add_term(&e2, &c.mul(&powers[k as usize])?);
        }
        Ok(out)
    }

    /// Substitute 1 for the chosen variable.
    pub fn dehomogenize(&self, var: &str) -> Result<MultiPoly> {
        self.substitute_value(var, &self.tower.one())
    }

    pub fn evaluate(&self, point: &[TowerElement]) -> Result<TowerElement> {
        if point.len() != self.vars.len() {
            return Err(Error::Validation("point arity mismatch".into()));
        }
        let mut acc = self.tower.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, x) in e.iter().zip(point) {
                if *k > 0 {
                    t = t.mul(&x.pow(*k as u64))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> Result<u32> {
        let idx = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    /// Leading term in degree-lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponents, &TowerElement)> {
        self.terms.iter().max_by(|(a, _), (b, _)| cmp_deglex(a, b))
    }

    pub fn embed(&self, target: &Arc<FieldTower>) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(target, &self.vars);
        for (e, c) in &self.terms {
            out.add_term(e, &c.embed(target)?);
        }
        Ok(out)
    }

    /// View a bivariate polynomial as a polynomial in `elim_var` whose
    /// coefficients are univariate polynomials in the other variable.
    pub fn to_bipoly(&self, elim_var: &str) -> Result<BiPoly> {
        if self.vars.len() != 2 {
            return Err(Error::Validation("bivariate view needs exactly two variables".into()));
        }
        let ei = self.var_index(elim_var)?;
        let ki = 1 - ei;
        let de = self.terms.keys().map(|e| e[ei]).max().unwrap_or(0) as usize;
        let dk = self.terms.keys().map(|e| e[ki]).max().unwrap_or(0) as usize;
        let mut rows = vec![vec![self.tower.zero(); dk + 1]; de + 1];
        for (e, c) in &self.terms {
            rows[e[ei] as usize][e[ki] as usize] = c.clone();
        }
        Ok(rows.into_iter().map(|r| Poly::new(self.tower.clone(), r)).collect())
    }

    /// Convert a univariate multipolynomial to a dense polynomial.
    pub fn to_univar(&self) -> Result<Poly> {
        if self.vars.len() != 1 {
            return Err(Error::Validation("not univariate".into()));
        }
        let d = self.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        let mut coeffs = vec![self.tower.zero(); d + 1];
        for (e, c) in &self.terms {
            coeffs[e[0] as usize] = c.clone();
        }
        Ok(Poly::new(self.tower.clone(), coeffs))
    }

    pub fn from_univar(p: &Poly, var: &str) -> MultiPoly {
        let vars = vec![var.to_string()];
        let mut out = MultiPoly::zero(p.tower(), &vars);
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(&vec![i as u32], c);
        }
        out
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<_> = self.terms.keys().collect();
        keys.sort_by(|a, b| cmp_deglex(b, a));
        let mut parts = Vec::new();
        for e in keys {
            let c = &self.terms[e];
            let cs = c.render();
            let mut mono = String::new();
            for (v, k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => {
                        if !mono.is_empty() {
                            mono.push('*');
                        }
                        mono.push_str(v);
                    }
                    k => {
                        if !mono.is_empty() {
                            mono.push('*');
                        }
                        mono.push_str(&format!("{v}^{k}"));
                    }
                }
            }
            let needs_parens = cs.contains('+') || cs.contains(' ');
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if needs_parens {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}
