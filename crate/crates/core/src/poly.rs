//! Dense univariate polynomials over a field tower: division, gcd,
//! resultants and squarefree decomposition.

use crate::error::{Error, Result};
use crate::tower::{FieldTower, TowerElement};
use std::sync::Arc;

/// Univariate polynomial with tower-element coefficients, lowest degree
/// first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    tower: Arc<FieldTower>,
    coeffs: Vec<TowerElement>,
}

impl Poly {
    pub fn new(tower: Arc<FieldTower>, mut coeffs: Vec<TowerElement>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { tower, coeffs }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Poly {
        Poly { tower: tower.clone(), coeffs: vec![] }
    }

    pub fn one(tower: &Arc<FieldTower>) -> Poly {
        Poly::constant(tower.one())
    }

    pub fn constant(c: TowerElement) -> Poly {
        let tower = c.tower().clone();
        Poly::new(tower, vec![c])
    }

    pub fn monomial(tower: &Arc<FieldTower>, degree: usize, c: TowerElement) -> Poly {
        let mut coeffs = vec![tower.zero(); degree];
        coeffs.push(c);
        Poly::new(tower.clone(), coeffs)
    }

    /// x - a
    pub fn linear_root(a: &TowerElement) -> Poly {
        let t = a.tower().clone();
        Poly::new(t.clone(), vec![a.neg(), t.one()])
    }

    pub fn from_i64_coeffs(tower: &Arc<FieldTower>, coeffs: &[i64]) -> Poly {
        Poly::new(tower.clone(), coeffs.iter().map(|&c| tower.from_i64(c)).collect())
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> TowerElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> TowerElement {
        self.coeffs.last().cloned().unwrap_or_else(|| self.tower.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i))?);
        }
        Ok(Poly::new(self.tower.clone(), out))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { tower: self.tower.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.tower));
        }
        let mut out = vec![self.tower.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Poly::new(self.tower.clone(), out))
    }

    pub fn scale(&self, c: &TowerElement) -> Result<Poly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(c)?);
        }
        Ok(Poly::new(self.tower.clone(), out))
    }

    pub fn divrem(&self, den: &Poly) -> Result<(Poly, Poly)> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dl = den.leading().inv()?;
        let dd = den.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![self.tower.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap().mul(&dl)?;
            if !c.is_zero() {
                quo[k] = quo[k].add(&c)?;
                for (j, d) in den.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].sub(&c.mul(d)?)?;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() > dd + k {
                return Err(Error::InternalCheck("polynomial division stalled".into()));
            }
        }
        Ok((Poly::new(self.tower.clone(), quo), Poly::new(self.tower.clone(), rem)))
    }

    pub fn rem(&self, den: &Poly) -> Result<Poly> {
        Ok(self.divrem(den)?.1)
    }

    pub fn monic(&self) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        self.scale(&self.leading().inv()?)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.tower);
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.scale(&self.tower.base().from_i64(i as i64)));
        }
        Poly::new(self.tower.clone(), out)
    }

    pub fn eval(&self, x: &TowerElement) -> Result<TowerElement> {
        let mut acc = self.tower.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// Substitute x -> x + a.
    pub fn shift(&self, a: &TowerElement) -> Result<Poly> {
        let mut acc = Poly::zero(&self.tower);
        let lin = Poly::new(self.tower.clone(), vec![a.clone(), self.tower.one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin)?.add(&Poly::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero(&self.tower);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&Poly::constant(c.clone()))?;
        }
        Ok(acc)
    }

    /// Reinterpret over a larger tower.
    pub fn embed(&self, target: &Arc<FieldTower>) -> Result<Poly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.embed(target)?);
        }
        Ok(Poly::new(target.clone(), out))
    }

    /// x^e mod m, by square and multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.tower).rem(m)?;
        let mut b = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?.rem(m)?;
            }
            b = b.mul(&b)?.rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Resultant of two univariate polynomials over the tower field,
    /// with the convention Res(f, g) = lc(f)^{deg g} * prod g(roots of f).
    pub fn resultant(&self, other: &Poly) -> Result<TowerElement> {
        let t = &self.tower;
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.is_zero() || b.is_zero() {
            return Ok(t.zero());
        }
        let mut acc = t.one();
        let mut sign_flip = false;
        loop {
            let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
            if da < db {
                std::mem::swap(&mut a, &mut b);
                if da % 2 == 1 && db % 2 == 1 {
                    sign_flip = !sign_flip;
                }
                continue;
            }
            if db == 0 {
                // Res(a, c) = c^{deg a}
                acc = acc.mul(&b.leading().pow(da as u64))?;
                break;
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(t.zero());
            }
            let dr = r.degree().unwrap();
            // Res(a, b) = (-1)^{da*db} lc(b)^{da - dr} Res(b, r)
            if da % 2 == 1 && db % 2 == 1 {
                sign_flip = !sign_flip;
            }
            acc = acc.mul(&b.leading().pow((da - dr) as u64))?;
            a = b;
            b = r;
        }
        Ok(if sign_flip { acc.neg() } else { acc })
    }

    /// Squarefree decomposition: returns (factor, multiplicity) pairs with
    /// the factors monic, squarefree and pairwise coprime. In positive
    /// characteristic the p-th power case is handled by exponent division.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        let p = self.tower.base().characteristic();
        let f = self.monic()?;
        if f.degree() == Some(0) {
            return Ok(vec![]);
        }
        let d = f.derivative();
        if d.is_zero() {
            // f = g(x^p) with p > 0; over F_p towers every coefficient has a
            // p-th root, and for prime fields it is the coefficient itself
            if p == 0 {
                return Err(Error::InternalCheck("constant derivative in char 0".into()));
            }
            let root = f.pth_root(p)?;
            let inner = root.squarefree_decomposition()?;
            return Ok(inner.into_iter().map(|(g, m)| (g, m * p as usize)).collect());
        }
        let mut out: Vec<(Poly, usize)> = Vec::new();
        let g = f.gcd(&d)?;
        let mut w = f.divrem(&g)?.0; // product of squarefree parts
        let mut rest = g;
        let mut mult = 1usize;
        while w.degree() != Some(0) {
            let y = w.gcd(&rest)?;
            let fac = w.divrem(&y)?.0;
            if fac.degree().map_or(false, |d| d > 0) {
                out.push((fac, mult));
            }
            rest = rest.divrem(&y)?.0;
            w = y;
            mult += 1;
        }
        if rest.degree().map_or(false, |d| d > 0) {
            // leftover is a p-th power part
            for (g2, m2) in rest.squarefree_decomposition()? {
                out.push((g2, m2));
            }
        }
        // merge factors appearing twice (possible after the p-th power path)
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (g2, m2) in out {
            if let Some(e) = merged.iter_mut().find(|(h, _)| *h == g2) {
                e.1 += m2;
            } else {
                merged.push((g2, m2));
            }
        }
        Ok(merged)
    }

    /// p-th root of a polynomial in x^p over an F_p tower; valid because the
    /// Frobenius is surjective on finite fields.
    fn pth_root(&self, p: u64) -> Result<Poly> {
        let q_exp = self.tower.dim() as u32;
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p as usize != 0 {
                if !c.is_zero() {
                    return Err(Error::InternalCheck("not a polynomial in x^p".into()));
                }
                continue;
            }
            // c^{p^(dim-1)} is the p-th root of c in F_{p^dim}
            let mut e = c.clone();
            for _ in 0..q_exp.saturating_sub(1) {
                e = e.pow(p);
            }
            coeffs.push(e);
        }
        Ok(Poly::new(self.tower.clone(), coeffs))
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.render();
            let needs_parens = cs.contains('+') || cs.contains(' ');
            let cs = if needs_parens { format!("({cs})") } else { cs };
            let term = match i {
                0 => cs,
                1 if cs == "1" => var.to_string(),
                1 => format!("{cs}*{var}"),
                _ if cs == "1" => format!("{var}^{i}"),
                _ => format!("{cs}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

/// A polynomial in an eliminated variable `y` whose coefficients are
/// univariate polynomials in a kept variable; index = power of y.
pub type BiPoly = Vec<Poly>;

fn bi_trim(p: &mut BiPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn bi_sub(a: &BiPoly, b: &BiPoly, tower: &Arc<FieldTower>) -> Result<BiPoly> {
    let n = a.len().max(b.len());
    let zero = Poly::zero(tower);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero).sub(b.get(i).unwrap_or(&zero))?);
    }
    bi_trim(&mut out);
    Ok(out)
}

fn bi_scale(a: &BiPoly, c: &Poly) -> Result<BiPoly> {
    let mut out = Vec::with_capacity(a.len());
    for x in a {
        out.push(x.mul(c)?);
    }
    let mut out = out;
    bi_trim(&mut out);
    Ok(out)
}

/// Pseudo-remainder: lc(b)^{deg a - deg b + 1} * a mod b, staying in the
/// coefficient ring.
fn bi_prem(a: &BiPoly, b: &BiPoly, tower: &Arc<FieldTower>) -> Result<BiPoly> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut steps = a.len() as i64 - b.len() as i64 + 1;
    while r.len() >= b.len() && steps >= 0 {
        let dr = r.len() - 1;
        let lead = r.last().unwrap().clone();
        r = bi_scale(&r, &lb)?;
        let mut shifted: BiPoly = vec![Poly::zero(tower); dr - db];
        for c in b {
            shifted.push(c.mul(&lead)?);
        }
        r = bi_sub(&r, &shifted, tower)?;
        if r.len() > dr {
            r.truncate(dr);
            bi_trim(&mut r);
        }
        steps -= 1;
    }
    // account for remaining multiplications so the lc exponent is exact
    while steps > 0 {
        r = bi_scale(&r, &lb)?;
        steps -= 1;
    }
    Ok(r)
}

fn poly_exact_div(a: &Poly, b: &Poly) -> Result<Poly> {
    let (q, r) = a.divrem(b)?;
    if !r.is_zero() {
        return Err(Error::InternalCheck("inexact division in resultant".into()));
    }
    Ok(q)
}

fn poly_pow(a: &Poly, e: usize) -> Result<Poly> {
    let mut acc = Poly::one(a.tower());
    for _ in 0..e {
        acc = acc.mul(a)?;
    }
    Ok(acc)
}

/// Resultant with respect to `y` of two bivariate polynomials, computed by
/// the subresultant pseudo-remainder sequence over the coefficient ring.
/// Convention matches [`Poly::resultant`].
pub fn bivariate_resultant(a0: &BiPoly, b0: &BiPoly, tower: &Arc<FieldTower>) -> Result<Poly> {
    let mut a = a0.clone();
    let mut b = b0.clone();
    bi_trim(&mut a);
    bi_trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return Ok(Poly::zero(tower));
    }
    let mut sign = 1i64;
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        let r = poly_pow(&b[0], a.len() - 1)?;
        return Ok(if sign < 0 { r.neg() } else { r });
    }
    let mut g = Poly::one(tower);
    let mut h = Poly::one(tower);
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = bi_prem(&a, &b, tower)?;
        a = b;
        if r.is_empty() {
            return Ok(Poly::zero(tower));
        }
        let divisor = g.mul(&poly_pow(&h, delta)?)?;
        let mut nb = Vec::with_capacity(r.len());
        for c in &r {
            nb.push(poly_exact_div(c, &divisor)?);
        }
        b = nb;
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            // h <- g^delta / h^(delta-1)
            poly_exact_div(&poly_pow(&g, delta)?, &poly_pow(&h, delta - 1)?)?
        };
        if b.len() == 1 {
            let da = a.len() - 1;
            // res = sign * lc(b)^{da} / h^{da - 1}
            let num = poly_pow(&b[0], da)?;
            let res = poly_exact_div(&num, &poly_pow(&h, da - 1)?)?;
            return Ok(if sign < 0 { res.neg() } else { res });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> Arc<FieldTower> {
        FieldTower::rationals()
    }

    #[test]
    fn divrem_and_gcd() {
        let t = qq();
        let f = Poly::from_i64_coeffs(&t, &[-1, 0, 1]); // x^2 - 1
        let g = Poly::from_i64_coeffs(&t, &[1, 1]); // x + 1
        let (q, r) = f.divrem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_i64_coeffs(&t, &[-1, 1]));
        assert_eq!(f.gcd(&g).unwrap(), g.monic().unwrap());
    }

    #[test]
    fn resultant_examples() {
        let t = qq();
        // Res(x - a, x - b) = a - b with a = 5, b = 3
        let f = Poly::from_i64_coeffs(&t, &[-5, 1]);
        let g = Poly::from_i64_coeffs(&t, &[-3, 1]);
        assert_eq!(f.resultant(&g).unwrap(), t.from_i64(2));
        // Res(x^2, x + 1) = 1
        let f = Poly::from_i64_coeffs(&t, &[0, 0, 1]);
        let g = Poly::from_i64_coeffs(&t, &[1, 1]);
        assert_eq!(f.resultant(&g).unwrap(), t.from_i64(1));
        // Res(x^2 + 1, x^2 - 2) = 9
        let f = Poly::from_i64_coeffs(&t, &[1, 0, 1]);
        let g = Poly::from_i64_coeffs(&t, &[-2, 0, 1]);
        assert_eq!(f.resultant(&g).unwrap(), t.from_i64(9));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor() {
        let fd = FieldDescriptor::prime_field(13).unwrap();
        let t = FieldTower::base_tower(fd);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mut rand_poly = |deg: usize| {
                let coeffs: Vec<_> =
                    (0..=deg).map(|_| t.from_i64(rng.gen_range(0..13))).collect();
                Poly::new(t.clone(), coeffs)
            };
            let f = rand_poly(4);
            let g = rand_poly(3);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let res = f.resultant(&g).unwrap();
            let gcd = f.gcd(&g).unwrap();
            let common = gcd.degree().map_or(false, |d| d > 0);
            assert_eq!(res.is_zero(), common, "f={f:?} g={g:?}");
        }
    }

    #[test]
    fn bivariate_resultant_matches_evaluation() {
        // specialising x then taking Res_y agrees with Res_y then specialising,
        // whenever the leading coefficients do not vanish at the point
        let fd = FieldDescriptor::prime_field(101).unwrap();
        let t = FieldTower::base_tower(fd);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let mut rand_poly = |deg: usize| {
                let coeffs: Vec<_> =
                    (0..=deg).map(|_| t.from_i64(rng.gen_range(0..101))).collect();
                Poly::new(t.clone(), coeffs)
            };
            let f: BiPoly = (0..4).map(|_| rand_poly(3)).collect();
            let g: BiPoly = (0..3).map(|_| rand_poly(2)).collect();
            if f.last().unwrap().is_zero() || g.last().unwrap().is_zero() {
                continue;
            }
            let res = bivariate_resultant(&f, &g, &t).unwrap();
            for x0 in 0..14i64 {
                let x = t.from_i64(x0);
                if f.last().unwrap().eval(&x).unwrap().is_zero()
                    || g.last().unwrap().eval(&x).unwrap().is_zero()
                {
                    continue;
                }
                let fe = Poly::new(
                    t.clone(),
                    f.iter().map(|c| c.eval(&x).unwrap()).collect(),
                );
                let ge = Poly::new(
                    t.clone(),
                    g.iter().map(|c| c.eval(&x).unwrap()).collect(),
                );
                assert_eq!(fe.resultant(&ge).unwrap(), res.eval(&x).unwrap());
            }
        }
    }

    #[test]
    fn squarefree_decomposition_over_q() {
        let t = qq();
        // (x-1)^2 (x+2)
        let f = Poly::from_i64_coeffs(&t, &[-1, 1])
            .mul(&Poly::from_i64_coeffs(&t, &[-1, 1]))
            .unwrap()
            .mul(&Poly::from_i64_coeffs(&t, &[2, 1]))
            .unwrap();
        let parts = f.squarefree_decomposition().unwrap();
        let mut prod = Poly::one(&t);
        for (g, m) in &parts {
            for _ in 0..*m {
                prod = prod.mul(g).unwrap();
            }
        }
        assert_eq!(prod, f.monic().unwrap());
        assert_eq!(parts.len(), 2);
    }

    #[test]
    fn squarefree_decomposition_pth_power() {
        let fd = FieldDescriptor::prime_field(3).unwrap();
        let t = FieldTower::base_tower(fd);
        // (x^3 - x)^3 = x^9 - ... has zero derivative pieces
        let base = Poly::from_i64_coeffs(&t, &[0, -1, 0, 1]);
        let mut f = Poly::one(&t);
        for _ in 0..3 {
            f = f.mul(&base).unwrap();
        }
        let parts = f.squarefree_decomposition().unwrap();
        let mut prod = Poly::one(&t);
        for (g, m) in &parts {
            for _ in 0..*m {
                prod = prod.mul(g).unwrap();
            }
        }
        assert_eq!(prod, f.monic().unwrap());
        assert!(parts.iter().all(|(_, m)| *m == 3));
    }

    #[test]
    fn shift_and_compose() {
        let t = qq();
        let f = Poly::from_i64_coeffs(&t, &[0, 0, 1]); // x^2
        let g = f.shift(&t.from_i64(1)).unwrap(); // (x+1)^2
        assert_eq!(g, Poly::from_i64_coeffs(&t, &[1, 2, 1]));
    }
}
