//! Towers of simple algebraic extensions over an exact base field, with
//! dense arithmetic on the product monomial basis.
//!
//! A tower is either the bare base field or an extension of a smaller tower
//! by a monic irreducible polynomial. Elements are flat coefficient vectors
//! of length `[L:k]`; multiplication and inversion recurse stage by stage.

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use num_rational::BigRational;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Stage {
    pub var: String,
    /// Non-leading coefficients c_0 .. c_{d-1} of the monic defining
    /// polynomial, each a flat element of the tower below.
    pub min_poly: Vec<Vec<Scalar>>,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTower {
    base: FieldDescriptor,
    below: Option<(Arc<FieldTower>, Stage)>,
    dim: usize,
}

impl FieldTower {
    pub fn base_tower(fd: FieldDescriptor) -> Arc<FieldTower> {
        Arc::new(FieldTower { base: fd, below: None, dim: 1 })
    }

    pub fn rationals() -> Arc<FieldTower> {
        Self::base_tower(FieldDescriptor::rationals())
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    /// Total degree [L:k] over the base.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_stages(&self) -> usize {
        match &self.below {
            None => 0,
            Some((t, _)) => t.num_stages() + 1,
        }
    }

    pub(crate) fn sub_tower(&self) -> Option<&Arc<FieldTower>> {
        self.below.as_ref().map(|(t, _)| t)
    }

    pub(crate) fn top_stage(&self) -> Option<&Stage> {
        self.below.as_ref().map(|(_, s)| s)
    }

    pub fn stage_vars(&self) -> Vec<String> {
        let mut v = match &self.below {
            None => Vec::new(),
            Some((t, _)) => t.stage_vars(),
        };
        if let Some((_, s)) = &self.below {
            v.push(s.var.clone());
        }
        v
    }

    /// Extend by a monic polynomial without an irreducibility check. Used by
    /// the factorization code, which produces certified irreducible factors.
    pub(crate) fn extend_raw(
        self: &Arc<Self>,
        var: &str,
        min_poly: Vec<Vec<Scalar>>,
    ) -> Arc<FieldTower> {
        let degree = min_poly.len();
        assert!(degree >= 1, "extension degree must be at least one");
        let dim = self.dim * degree;
        Arc::new(FieldTower {
            base: self.base.clone(),
            below: Some((
                self.clone(),
                Stage { var: var.to_string(), min_poly, degree },
            )),
            dim,
        })
    }

    /// Monic defining polynomial of the top stage as elements of the tower
    /// below (constant term first, leading 1 included).
    pub fn top_min_poly(self: &Arc<Self>) -> Option<Vec<TowerElement>> {
        let (sub, stage) = self.below.as_ref()?;
        let mut out: Vec<TowerElement> = stage
            .min_poly
            .iter()
            .map(|c| TowerElement { tower: sub.clone(), coeffs: c.clone() })
            .collect();
        out.push(sub.one());
        Some(out)
    }

    /// Extend by a monic irreducible polynomial given over this tower; the
    /// irreducibility check goes through the factorization machinery.
    pub fn extend(self: &Arc<Self>, var: &str, min_poly: &crate::poly::Poly) -> Result<Arc<FieldTower>> {
        self.extend_with(var, min_poly, &crate::factor::FactorOptions::default())
    }

    pub fn extend_with(
        self: &Arc<Self>,
        var: &str,
        min_poly: &crate::poly::Poly,
        opts: &crate::factor::FactorOptions,
    ) -> Result<Arc<FieldTower>> {
        if min_poly.tower() != self {
            return Err(Error::TowerMismatch);
        }
        if min_poly.degree().unwrap_or(0) < 1 {
            return Err(Error::Validation("defining polynomial must be non-constant".into()));
        }
        let monic = min_poly.monic()?;
        if !crate::factor::is_irreducible(&monic, opts)? {
            return Err(Error::ReducibleExtension(monic.render(var)));
        }
        let d = monic.degree().unwrap();
        let coeffs = (0..d).map(|i| monic.coeff(i).coeffs().to_vec()).collect();
        Ok(self.extend_raw(var, coeffs))
    }

    /// Rendered defining polynomials of the stages, bottom-up.
    pub fn stage_descriptions(self: &Arc<Self>) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        while let Some((sub, stage)) = cur.below.clone() {
            let poly = crate::poly::Poly::new(
                sub.clone(),
                cur.top_min_poly().unwrap(),
            );
            out.push(poly.render(&stage.var));
            cur = sub;
        }
        out.reverse();
        out
    }

    /// True if `self` is an initial segment of `other` (same base, same
    /// leading stages).
    pub fn is_prefix_of(&self, other: &FieldTower) -> bool {
        if self == other {
            return true;
        }
        match &other.below {
            None => false,
            Some((t, _)) => self.is_prefix_of(t),
        }
    }

    pub fn zero(self: &Arc<Self>) -> TowerElement {
        TowerElement { tower: self.clone(), coeffs: vec![self.base.zero(); self.dim] }
    }

    pub fn one(self: &Arc<Self>) -> TowerElement {
        self.from_scalar(self.base.one())
    }

    pub fn from_scalar(self: &Arc<Self>, s: Scalar) -> TowerElement {
        let mut coeffs = vec![self.base.zero(); self.dim];
        coeffs[0] = s;
        TowerElement { tower: self.clone(), coeffs }
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> TowerElement {
        self.from_scalar(self.base.from_i64(n))
    }

    pub fn from_rational(self: &Arc<Self>, q: &BigRational) -> Result<TowerElement> {
        Ok(self.from_scalar(self.base.from_rational(q)?))
    }

    /// Generator of the top stage; errors on the bare base.
    pub fn generator(self: &Arc<Self>) -> Result<TowerElement> {
        match &self.below {
            None => Err(Error::Unsupported("base field has no generator".into())),
            Some((t, _)) => {
                let mut coeffs = vec![self.base.zero(); self.dim];
                coeffs[t.dim] = self.base.one();
                Ok(TowerElement { tower: self.clone(), coeffs })
            }
        }
    }

    pub fn from_coeffs(self: &Arc<Self>, coeffs: Vec<Scalar>) -> TowerElement {
        assert_eq!(coeffs.len(), self.dim, "coefficient vector length mismatch");
        TowerElement { tower: self.clone(), coeffs }
    }

    // ---- flat arithmetic on coefficient slices ----

    fn el_add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn el_sub(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn el_neg(&self, a: &[Scalar]) -> Vec<Scalar> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn el_is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    pub(crate) fn el_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let (sub, stage) = match &self.below {
            None => return vec![self.base.mul(&a[0], &b[0])],
            Some((t, s)) => (t, s),
        };
        let d = stage.degree;
        let m = sub.dim;
        let mut prod = vec![self.base.zero(); (2 * d - 1) * m];
        for i in 0..d {
            let ai = &a[i * m..(i + 1) * m];
            if sub.el_is_zero(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * m..(j + 1) * m];
                if sub.el_is_zero(bj) {
                    continue;
                }
                let p = sub.el_mul(ai, bj);
                for (k, v) in p.iter().enumerate() {
                    let idx = (i + j) * m + k;
                    prod[idx] = self.base.add(&prod[idx], v);
                }
            }
        }
        // reduce x^k for k >= d using x^d = -sum_j c_j x^j
        for k in (d..2 * d - 1).rev() {
            let top = prod[k * m..(k + 1) * m].to_vec();
            if sub.el_is_zero(&top) {
                continue;
            }
            for v in &mut prod[k * m..(k + 1) * m] {
                *v = self.base.zero();
            }
            for (j, cj) in stage.min_poly.iter().enumerate() {
                if sub.el_is_zero(cj) {
                    continue;
                }
                let t = sub.el_mul(&top, cj);
                let off = (k - d + j) * m;
                for (s, v) in t.iter().enumerate() {
                    prod[off + s] = self.base.sub(&prod[off + s], v);
                }
            }
        }
        prod.truncate(d * m);
        prod
    }

    pub(crate) fn el_inv(&self, a: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.el_is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let (sub, stage) = match &self.below {
            None => return Ok(vec![self.base.inv(&a[0])?]),
            Some((t, s)) => (t, s),
        };
        let m = sub.dim;
        // extended Euclid over the subtower field: find t with t*a = g mod M
        let mut r0: Vec<Vec<Scalar>> = stage.min_poly.clone();
        r0.push({
            let mut one = vec![self.base.zero(); m];
            one[0] = self.base.one();
            one
        });
        let mut r1: Vec<Vec<Scalar>> = a.chunks(m).map(|c| c.to_vec()).collect();
        lvp_trim(sub, &mut r1);
        let mut t0: Vec<Vec<Scalar>> = vec![];
        let mut t1: Vec<Vec<Scalar>> = vec![{
            let mut one = vec![self.base.zero(); m];
            one[0] = self.base.one();
            one
        }];
        while r1.len() > 1 {
            let (q, r) = lvp_divrem(sub, &r0, &r1)?;
            let t2 = lvp_sub(sub, &t0, &lvp_mul(sub, &q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        if r1.is_empty() {
            // gcd of a with the irreducible stage polynomial is non-trivial
            return Err(Error::InternalCheck(
                "stage polynomial is not irreducible".into(),
            ));
        }
        let ginv = sub.el_inv(&r1[0])?;
        let mut out = vec![self.base.zero(); self.dim];
        for (i, c) in t1.iter().enumerate() {
            let v = sub.el_mul(c, &ginv);
            out[i * m..(i + 1) * m].clone_from_slice(&v);
        }
        Ok(out)
    }

    /// Trace of one stage: sums the Galois conjugates of the top generator
    /// powers via Newton's identities on the defining polynomial.
    fn el_trace_stage(&self, a: &[Scalar]) -> Vec<Scalar> {
        let (sub, stage) = self.below.as_ref().expect("trace of a base element");
        let d = stage.degree;
        let m = sub.dim;
        // power sums p_0..p_{d-1} of the roots of x^d + c_{d-1} x^{d-1} + ... + c_0
        let mut p: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        let mut p0 = vec![self.base.zero(); m];
        p0[0] = self.base.from_i64(d as i64);
        p.push(p0);
        for k in 1..d {
            // p_k = -k*c_{d-k} - sum_{i=1}^{k-1} c_{d-i} p_{k-i}
            let mut acc = sub.el_neg(&stage.min_poly[d - k]);
            acc = acc
                .iter()
                .map(|x| self.base.mul(x, &self.base.from_i64(k as i64)))
                .collect();
            for i in 1..k {
                let t = sub.el_mul(&stage.min_poly[d - i], &p[k - i]);
                acc = sub.el_sub(&acc, &t);
            }
            p.push(acc);
        }
        let mut out = vec![self.base.zero(); m];
        for (k, pk) in p.iter().enumerate() {
            let t = sub.el_mul(&a[k * m..(k + 1) * m], pk);
            out = sub.el_add(&out, &t);
        }
        out
    }
}

/// An element of a field tower: dense coefficients on the product basis.
#[derive(Debug, Clone)]
pub struct TowerElement {
    tower: Arc<FieldTower>,
    coeffs: Vec<Scalar>,
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coeffs == other.coeffs
    }
}
impl Eq for TowerElement {}

impl TowerElement {
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.tower.el_is_zero(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        self == &self.tower.one()
    }

    fn check_tower(&self, other: &TowerElement) -> Result<()> {
        if self.tower == other.tower {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn add(&self, other: &TowerElement) -> Result<TowerElement> {
        self.check_tower(other)?;
        Ok(TowerElement {
            tower: self.tower.clone(),
            coeffs: self.tower.el_add(&self.coeffs, &other.coeffs),
        })
    }

    pub fn sub(&self, other: &TowerElement) -> Result<TowerElement> {
        self.check_tower(other)?;
        Ok(TowerElement {
            tower: self.tower.clone(),
            coeffs: self.tower.el_sub(&self.coeffs, &other.coeffs),
        })
    }

    pub fn neg(&self) -> TowerElement {
        TowerElement { tower: self.tower.clone(), coeffs: self.tower.el_neg(&self.coeffs) }
    }

    pub fn mul(&self, other: &TowerElement) -> Result<TowerElement> {
        self.check_tower(other)?;
        Ok(TowerElement {
            tower: self.tower.clone(),
            coeffs: self.tower.el_mul(&self.coeffs, &other.coeffs),
        })
    }

    pub fn inv(&self) -> Result<TowerElement> {
        Ok(TowerElement { tower: self.tower.clone(), coeffs: self.tower.el_inv(&self.coeffs)? })
    }

    pub fn div(&self, other: &TowerElement) -> Result<TowerElement> {
        self.mul(&other.inv()?)
    }

    pub fn scale(&self, s: &Scalar) -> TowerElement {
        TowerElement {
            tower: self.tower.clone(),
            coeffs: self.coeffs.iter().map(|c| self.tower.base.mul(c, s)).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> TowerElement {
        let mut acc = self.tower.one();
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b).expect("same tower");
            }
            b = b.mul(&b).expect("same tower");
            e >>= 1;
        }
        acc
    }

    /// Reinterpret in a larger tower that has this element's tower as a
    /// prefix; coefficients are padded with zeros.
    pub fn embed(&self, target: &Arc<FieldTower>) -> Result<TowerElement> {
        if !self.tower.is_prefix_of(target) {
            return Err(Error::TowerMismatch);
        }
        let mut coeffs = vec![target.base.zero(); target.dim()];
        coeffs[..self.coeffs.len()].clone_from_slice(&self.coeffs);
        Ok(TowerElement { tower: target.clone(), coeffs })
    }

    /// Coefficients of the element as a polynomial in the top generator,
    /// each an element of the tower below.
    pub fn chunks_below(&self) -> Result<Vec<TowerElement>> {
        let sub = self
            .tower
            .sub_tower()
            .ok_or_else(|| Error::Unsupported("base element has no stage split".into()))?;
        let m = sub.dim();
        Ok(self
            .coeffs
            .chunks(m)
            .map(|c| TowerElement { tower: sub.clone(), coeffs: c.to_vec() })
            .collect())
    }

    /// Inverse of [`chunks_below`]: assemble an element from its
    /// polynomial coefficients over the subtower.
    pub fn from_chunks(tower: &Arc<FieldTower>, chunks: &[TowerElement]) -> Result<TowerElement> {
        let stage = tower
            .top_stage()
            .ok_or_else(|| Error::Unsupported("base tower has no stage".into()))?;
        let sub = tower.sub_tower().unwrap();
        if chunks.len() > stage.degree {
            return Err(Error::Validation("too many stage coefficients".into()));
        }
        let m = sub.dim();
        let mut coeffs = vec![tower.base.zero(); tower.dim()];
        for (i, c) in chunks.iter().enumerate() {
            if c.tower() != sub {
                return Err(Error::TowerMismatch);
            }
            coeffs[i * m..(i + 1) * m].clone_from_slice(c.coeffs());
        }
        Ok(TowerElement { tower: tower.clone(), coeffs })
    }

    /// The base-field value if the element lies in the base, else None.
    pub fn as_base(&self) -> Option<Scalar> {
        if self.coeffs[1..].iter().all(|c| self.tower.base.is_zero(c)) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Field trace down one stage.
    pub fn trace_down(&self) -> Result<TowerElement> {
        let sub = self
            .tower
            .sub_tower()
            .ok_or_else(|| Error::Unsupported("trace of a base element".into()))?
            .clone();
        let coeffs = self.tower.el_trace_stage(&self.coeffs);
        Ok(TowerElement { tower: sub, coeffs })
    }

    /// Full field trace Tr_{L/k} to the base.
    pub fn trace_to_base(&self) -> Result<Scalar> {
        let mut cur = self.clone();
        while cur.tower.num_stages() > 0 {
            cur = cur.trace_down()?;
        }
        Ok(cur.coeffs[0].clone())
    }

    pub fn render(&self) -> String {
        let vars = self.tower.stage_vars();
        let fd = &self.tower.base;
        let mut terms = Vec::new();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if fd.is_zero(c) {
                continue;
            }
            let mut mono = String::new();
            let mut rem = idx;
            let mut t: &FieldTower = &self.tower;
            let mut degs = Vec::new();
            // decode the mixed-radix index into per-stage exponents
            let mut stage_degrees = Vec::new();
            while let Some(stage) = t.top_stage() {
                stage_degrees.push(stage.degree);
                t = t.sub_tower().unwrap();
            }
            stage_degrees.reverse();
            for d in &stage_degrees {
                degs.push(rem % d);
                rem /= d;
            }
            for (v, e) in vars.iter().zip(&degs) {
                match e {
                    0 => {}
                    1 => mono.push_str(&format!("*{v}")),
                    e => mono.push_str(&format!("*{v}^{e}")),
                }
            }
            terms.push(format!("{}{}", fd.to_string_scalar(c), mono));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

// ---- dense univariate polynomials over a subtower, used by el_inv ----

type LvPoly = Vec<Vec<Scalar>>;

fn lvp_trim(t: &FieldTower, p: &mut LvPoly) {
    while let Some(last) = p.last() {
        if t.el_is_zero(last) {
            p.pop();
        } else {
            break;
        }
    }
}

fn lvp_sub(t: &FieldTower, a: &LvPoly, b: &LvPoly) -> LvPoly {
    let n = a.len().max(b.len());
    let zero = vec![t.base().zero(); t.dim()];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(t.el_sub(x, y));
    }
    lvp_trim(t, &mut out);
    out
}

fn lvp_mul(t: &FieldTower, a: &LvPoly, b: &LvPoly) -> LvPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![vec![t.base().zero(); t.dim()]; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if t.el_is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let p = t.el_mul(x, y);
            out[i + j] = t.el_add(&out[i + j], &p);
        }
    }
    lvp_trim(t, &mut out);
    out
}

fn lvp_divrem(t: &FieldTower, num: &LvPoly, den: &LvPoly) -> Result<(LvPoly, LvPoly)> {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let dlead = t.el_inv(den.last().unwrap())?;
    let mut rem = num.clone();
    let mut quo = vec![vec![t.base().zero(); t.dim()]; num.len().saturating_sub(den.len() - 1)];
    while rem.len() >= den.len() {
        let k = rem.len() - den.len();
        let c = t.el_mul(rem.last().unwrap(), &dlead);
        quo[k] = t.el_add(&quo[k], &c);
        for (j, dj) in den.iter().enumerate() {
            let s = t.el_mul(&c, dj);
            rem[k + j] = t.el_sub(&rem[k + j], &s);
        }
        lvp_trim(t, &mut rem);
        if rem.len() >= den.len() + k + 1 {
            // degree must strictly drop each step
            return Err(Error::InternalCheck("polynomial division stalled".into()));
        }
    }
    let mut quo = quo;
    lvp_trim(t, &mut quo);
    Ok((quo, rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldKind;

    fn gaussian_rationals() -> Arc<FieldTower> {
        // Q[i] = Q[x]/(x^2 + 1)
        let q = FieldTower::rationals();
        q.extend_raw(
            "i",
            vec![vec![q.base().from_i64(1)], vec![q.base().from_i64(0)]],
        )
    }

    #[test]
    fn i_squared_is_minus_one() {
        let qi = gaussian_rationals();
        let i = qi.generator().unwrap();
        assert_eq!(i.mul(&i).unwrap(), qi.from_i64(-1));
    }

    #[test]
    fn inverse_in_extension() {
        let qi = gaussian_rationals();
        let i = qi.generator().unwrap();
        // (1 + 2i)^{-1} * (1 + 2i) = 1
        let a = qi.from_i64(1).add(&i.scale(&qi.base().from_i64(2))).unwrap();
        let b = a.inv().unwrap();
        assert!(a.mul(&b).unwrap().is_one());
    }

    #[test]
    fn two_stage_tower_arithmetic() {
        // Q[i][w] with w^2 = i
        let qi = gaussian_rationals();
        let i = qi.generator().unwrap();
        let m = qi.extend_raw("w", vec![i.neg().coeffs().to_vec(), qi.zero().coeffs().to_vec()]);
        assert_eq!(m.dim(), 4);
        let w = m.generator().unwrap();
        let w2 = w.mul(&w).unwrap();
        assert_eq!(w2, i.embed(&m).unwrap());
        // w is an 8th root of unity: w^8 = 1
        assert!(w.pow(8).is_one());
        let winv = w.inv().unwrap();
        assert!(w.mul(&winv).unwrap().is_one());
    }

    #[test]
    fn trace_of_gaussian_integers() {
        let qi = gaussian_rationals();
        let i = qi.generator().unwrap();
        assert_eq!(qi.from_i64(3).trace_to_base().unwrap(), qi.base().from_i64(6));
        assert_eq!(i.trace_to_base().unwrap(), qi.base().from_i64(0));
    }

    #[test]
    fn trace_matches_multiplication_matrix_oracle() {
        // trace of u equals the matrix trace of multiplication by u
        let qi = gaussian_rationals();
        let i = qi.generator().unwrap();
        let m = qi.extend_raw("w", vec![i.neg().coeffs().to_vec(), qi.zero().coeffs().to_vec()]);
        let w = m.generator().unwrap();
        let u = w
            .pow(3)
            .scale(&m.base().from_i64(2))
            .add(&i.embed(&m).unwrap())
            .unwrap()
            .add(&m.from_i64(7))
            .unwrap();
        // multiplication matrix trace: sum over basis vectors of the
        // coefficient of that same basis vector in u * e_j
        let mut tr = m.base().zero();
        for j in 0..m.dim() {
            let mut co = vec![m.base().zero(); m.dim()];
            co[j] = m.base().one();
            let ej = m.from_coeffs(co);
            let prod = u.mul(&ej).unwrap();
            tr = m.base().add(&tr, &prod.coeffs()[j]);
        }
        assert_eq!(u.trace_to_base().unwrap(), tr);
    }

    #[test]
    fn finite_field_tower() {
        // F_5[a]/(a^2 - 2): a^2 = 2, (a+1)(a-1) = 1
        let f5 = FieldTower::base_tower(FieldDescriptor::prime_field(5).unwrap());
        let t = f5.extend_raw("a", vec![vec![f5.base().from_i64(-2)], vec![f5.base().zero()]]);
        let a = t.generator().unwrap();
        assert_eq!(a.mul(&a).unwrap(), t.from_i64(2));
        let x = a.add(&t.from_i64(1)).unwrap();
        let y = a.sub(&t.from_i64(1)).unwrap();
        assert!(x.mul(&y).unwrap().is_one());
        assert!(matches!(t.base().kind, FieldKind::PrimeField(5)));
    }
}
