//! Univariate factorization over the supported coefficient fields.
//!
//! Finite fields (prime fields and their tower extensions) go through
//! squarefree splitting, distinct-degree factorization and randomized
//! equal-degree splitting. The rationals go through a good prime, quadratic
//! Hensel lifting and subset recombination with a hard degree cap. Proper
//! extension stages over Q reduce to the stage below by Trager's norm map.

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::poly::{bivariate_resultant, BiPoly, Poly};
use crate::tower::{FieldTower, TowerElement};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct FactorOptions {
    /// Seed for the randomized equal-degree splitting; fixed default keeps
    /// runs reproducible.
    pub seed: u64,
    /// Hard cap on input degrees; beyond it a capacity error is raised.
    pub max_degree: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { seed: 0x5eed_cafe, max_degree: 64 }
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
/// The product of the factors equals the input up to its leading coefficient.
pub fn factor(f: &Poly, opts: &FactorOptions) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let deg = f.degree().unwrap();
    if deg > opts.max_degree {
        return Err(Error::Capacity(format!(
            "factorization of degree {deg} exceeds the configured bound {}",
            opts.max_degree
        )));
    }
    if deg == 0 {
        return Ok(vec![]);
    }
    if f.tower().base().is_reals() {
        return Err(Error::Unsupported("factorization over the reals".into()));
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in f.squarefree_decomposition()? {
        for irr in factor_squarefree(&part, opts)? {
            out.push((irr, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| {
        let key = |p: &Poly| {
            let mut v: Vec<Scalar> = Vec::new();
            for c in p.coeffs() {
                v.extend(c.coeffs().iter().cloned());
            }
            (p.degree().unwrap_or(0), v)
        };
        key(a).cmp(&key(b))
    });
    Ok(out)
}

pub fn is_irreducible(f: &Poly, opts: &FactorOptions) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fs = factor(f, opts)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// All roots of f lying in its coefficient field.
pub fn roots_in_field(f: &Poly, opts: &FactorOptions) -> Result<Vec<TowerElement>> {
    let mut out = Vec::new();
    for (g, _) in factor(f, opts)? {
        if g.degree() == Some(1) {
            out.push(g.coeff(0).neg());
        }
    }
    Ok(out)
}

/// True iff a has a square root in its tower (zero counts as a square).
pub fn has_square_root(a: &TowerElement, opts: &FactorOptions) -> Result<bool> {
    if a.is_zero() {
        return Ok(true);
    }
    let t = a.tower().clone();
    let z2 = Poly::new(t.clone(), vec![a.neg(), t.zero(), t.one()]);
    Ok(roots_in_field(&z2, opts)?.first().is_some())
}

fn factor_squarefree(f: &Poly, opts: &FactorOptions) -> Result<Vec<Poly>> {
    let f = f.monic()?;
    if f.degree() == Some(1) {
        return Ok(vec![f]);
    }
    match f.tower().base().kind {
        FieldKind::PrimeField(_) => factor_ff_squarefree(&f, opts),
        FieldKind::Rationals => {
            if f.tower().num_stages() == 0 {
                factor_q_squarefree(&f, opts)
            } else {
                factor_trager(&f, opts)
            }
        }
        FieldKind::Reals => Err(Error::Unsupported("factorization over the reals".into())),
    }
}

// ---- finite fields: distinct-degree plus Cantor-Zassenhaus ----

fn frobenius_power(h: &Poly, modulus: &Poly, p: u64, times: usize) -> Result<Poly> {
    let mut out = h.clone();
    for _ in 0..times {
        out = out.pow_mod(p, modulus)?;
    }
    Ok(out)
}

fn pow_mod_big(base: &Poly, e: &BigUint, modulus: &Poly) -> Result<Poly> {
    let t = base.tower();
    let mut acc = Poly::one(t).rem(modulus)?;
    let mut b = base.rem(modulus)?;
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = acc.mul(&b)?.rem(modulus)?;
        }
        b = b.mul(&b)?.rem(modulus)?;
    }
    Ok(acc)
}

fn random_element(t: &Arc<FieldTower>, p: u64, rng: &mut ChaCha8Rng) -> TowerElement {
    let coeffs = (0..t.dim()).map(|_| t.base().from_i64(rng.gen_range(0..p) as i64)).collect();
    t.from_coeffs(coeffs)
}

fn factor_ff_squarefree(f: &Poly, opts: &FactorOptions) -> Result<Vec<Poly>> {
    let t = f.tower().clone();
    let p = t.base().characteristic();
    let ext = t.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (f.degree().unwrap() as u64) << 8);
    let x = Poly::monomial(&t, 1, t.one());

    // distinct-degree split
    let mut groups: Vec<(Poly, usize)> = Vec::new();
    let mut fstar = f.clone();
    let mut h = x.rem(&fstar)?;
    let mut d = 0usize;
    while fstar.degree().unwrap_or(0) > 0 && 2 * (d + 1) <= fstar.degree().unwrap() {
        d += 1;
        h = frobenius_power(&h, &fstar, p, ext)?;
        let g = h.sub(&x)?.gcd(&fstar)?;
        if g.degree().unwrap_or(0) > 0 {
            groups.push((g.clone(), d));
            fstar = fstar.divrem(&g)?.0;
            if fstar.degree().unwrap_or(0) == 0 {
                break;
            }
            h = h.rem(&fstar)?;
        }
    }
    if fstar.degree().unwrap_or(0) > 0 {
        let d = fstar.degree().unwrap();
        groups.push((fstar, d));
    }

    // equal-degree split, Cantor-Zassenhaus for odd q
    let mut out = Vec::new();
    for (g, d) in groups {
        split_equal_degree(&g, d, p, ext, &mut rng, &mut out)?;
    }
    Ok(out)
}

fn split_equal_degree(
    g: &Poly,
    d: usize,
    p: u64,
    ext: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly>,
) -> Result<()> {
    let n = g.degree().unwrap();
    if n == d {
        out.push(g.monic()?);
        return Ok(());
    }
    let t = g.tower().clone();
    // (q^d - 1) / 2
    let e = (BigUint::from(p).pow((ext * d) as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let coeffs = (0..n).map(|_| random_element(&t, p, rng)).collect();
        let a = Poly::new(t.clone(), coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = pow_mod_big(&a, &e, g)?;
        let c = b.sub(&Poly::one(&t))?.gcd(g)?;
        let dc = c.degree().unwrap_or(0);
        if dc > 0 && dc < n {
            let rest = g.divrem(&c)?.0;
            split_equal_degree(&c, d, p, ext, rng, out)?;
            split_equal_degree(&rest, d, p, ext, rng, out)?;
            return Ok(());
        }
    }
}

// ---- rationals: good prime, Hensel lifting, subset recombination ----

type ZPoly = Vec<BigInt>;

fn zp_trim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn zp_norm(v: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = v.iter().map(|c| c.mod_floor(m)).collect();
    zp_trim(&mut out);
    out
}

fn zp_symmetric(v: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = v
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    zp_trim(&mut out);
    out
}

fn zp_add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push((a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).mod_floor(m));
    }
    zp_trim(&mut out);
    out
}

fn zp_sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push((a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).mod_floor(m));
    }
    zp_trim(&mut out);
    out
}

fn zp_mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    for c in &mut out {
        *c = c.mod_floor(m);
    }
    zp_trim(&mut out);
    out
}

/// Division with remainder by a monic polynomial, coefficients mod m.
fn zp_divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    assert!(b.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem = zp_norm(a, m);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap().clone();
        if !c.is_zero() {
            quo[k] = (&quo[k] + &c).mod_floor(m);
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = (&rem[k + j] - &c * bj).mod_floor(m);
            }
        }
        rem.pop();
        zp_trim(&mut rem);
    }
    zp_trim(&mut quo);
    (quo, rem)
}

/// Extended gcd mod a prime: returns (s, t) with s*g + t*h = 1 mod p,
/// assuming g and h are coprime mod p.
fn zp_ext_gcd_prime(g: &ZPoly, h: &ZPoly, p: &BigInt) -> Result<(ZPoly, ZPoly)> {
    let inv_mod = |c: &BigInt| -> Result<BigInt> {
        let e = c.extended_gcd(p);
        if !e.gcd.is_one() {
            return Err(Error::InternalCheck("non-invertible leading coefficient".into()));
        }
        Ok(e.x.mod_floor(p))
    };
    let make_monic = |f: &ZPoly| -> Result<(ZPoly, BigInt)> {
        let l = f.last().unwrap().clone();
        let li = inv_mod(&l)?;
        Ok((f.iter().map(|c| (c * &li).mod_floor(p)).collect(), li))
    };
    let mut r0 = zp_norm(g, p);
    let mut r1 = zp_norm(h, p);
    let mut s0: ZPoly = vec![BigInt::one()];
    let mut s1: ZPoly = vec![];
    let mut t0: ZPoly = vec![];
    let mut t1: ZPoly = vec![BigInt::one()];
    while !r1.is_empty() && r1.len() > 1 {
        let (r1m, li) = make_monic(&r1)?;
        let (q, r) = zp_divrem_monic(&r0, &r1m, p);
        let q: ZPoly = q.iter().map(|c| (c * &li).mod_floor(p)).collect();
        let s2 = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t2 = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if r1.is_empty() {
        return Err(Error::InternalCheck("ext gcd of non-coprime polynomials".into()));
    }
    let c = inv_mod(&r1[0])?;
    let s: ZPoly = s1.iter().map(|x| (x * &c).mod_floor(p)).collect();
    let t: ZPoly = t1.iter().map(|x| (x * &c).mod_floor(p)).collect();
    Ok((s, t))
}

/// One quadratic Hensel step: from f = g*h mod m (all monic, s*g + t*h = 1
/// mod m) to the same data mod m^2.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zp_sub(f, &zp_mul(g, h, &m2), &m2);
    let (q, r) = zp_divrem_monic(&zp_mul(s, &e, &m2), h, &m2);
    let g1 = zp_add(g, &zp_add(&zp_mul(t, &e, &m2), &zp_mul(&q, g, &m2), &m2), &m2);
    let h1 = zp_add(h, &r, &m2);
    let one: ZPoly = vec![BigInt::one()];
    let b = zp_sub(&zp_add(&zp_mul(s, &g1, &m2), &zp_mul(t, &h1, &m2), &m2), &one, &m2);
    let (c, d) = zp_divrem_monic(&zp_mul(s, &b, &m2), &h1, &m2);
    let s1 = zp_sub(s, &d, &m2);
    let t1 = zp_sub(t, &zp_add(&zp_mul(t, &b, &m2), &zp_mul(&c, &g1, &m2), &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift a factorization f = prod(factors) mod p (all monic, pairwise
/// coprime) to mod at least `target`, recursively splitting the factor list.
fn hensel_multilift(
    f: &ZPoly,
    factors: &[ZPoly],
    p: &BigInt,
    target: &BigInt,
) -> Result<Vec<ZPoly>> {
    if factors.len() == 1 {
        return Ok(vec![zp_norm(f, target)]);
    }
    let half = factors.len() / 2;
    let mut g0: ZPoly = vec![BigInt::one()];
    for x in &factors[..half] {
        g0 = zp_mul(&g0, x, p);
    }
    let mut h0: ZPoly = vec![BigInt::one()];
    for x in &factors[half..] {
        h0 = zp_mul(&h0, x, p);
    }
    let (mut s, mut t) = zp_ext_gcd_prime(&g0, &h0, p)?;
    let mut g = g0;
    let mut h = h0;
    let mut m = p.clone();
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let mut out = hensel_multilift(&zp_norm(&g, target), &factors[..half], p, target)?;
    out.extend(hensel_multilift(&zp_norm(&h, target), &factors[half..], p, target)?);
    Ok(out)
}

fn int_divrem_monic(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
    let mut rem = a.clone();
    zp_trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quo = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap().clone();
        if !c.is_zero() {
            quo[k] += &c;
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        rem.pop();
        zp_trim(&mut rem);
    }
    zp_trim(&mut quo);
    (quo, rem)
}

struct Combinations {
    idx: Vec<usize>,
    n: usize,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { idx: (0..k).collect(), n, done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + self.n - k {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

const RECOMBINE_CAP: usize = 1 << 20;

/// Zassenhaus recombination of lifted modular factors into true integer
/// factors of the monic squarefree g.
fn recombine(g: &ZPoly, lifted: Vec<ZPoly>, modulus: &BigInt) -> Result<Vec<ZPoly>> {
    let mut out = Vec::new();
    let mut remaining = g.clone();
    let mut pool = lifted;
    let mut tried = 0usize;
    let mut s = 1usize;
    while 2 * s <= pool.len() {
        let mut found = None;
        for combo in Combinations::new(pool.len(), s) {
            tried += 1;
            if tried > RECOMBINE_CAP {
                return Err(Error::Capacity("factor recombination search".into()));
            }
            let mut cand: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                cand = zp_mul(&cand, &pool[i], modulus);
            }
            let cand = zp_symmetric(&cand, modulus);
            let (q, r) = int_divrem_monic(&remaining, &cand);
            if r.is_empty() {
                found = Some((combo, cand, q));
                break;
            }
        }
        match found {
            Some((combo, cand, q)) => {
                out.push(cand);
                remaining = q;
                let keep: Vec<ZPoly> = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                pool = keep;
            }
            None => s += 1,
        }
    }
    if remaining.len() > 1 {
        out.push(remaining);
    }
    Ok(out)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (1u64..).flat_map(|k| [2 * k + 1]).filter(|&n| {
        if n < 3 || n % 2 == 0 {
            return false;
        }
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

fn zassenhaus(g: &ZPoly, opts: &FactorOptions) -> Result<Vec<ZPoly>> {
    let n = g.len() - 1;
    if n <= 1 {
        return Ok(vec![g.clone()]);
    }
    // good prime: odd, reduction squarefree
    let mut chosen = None;
    for p in small_primes().take(200) {
        let t = FieldTower::base_tower(crate::field::FieldDescriptor::prime_field(p)?);
        let fp = intpoly_to_tower(g, &t);
        if fp.degree() != Some(n) {
            continue;
        }
        let d = fp.derivative();
        if d.is_zero() {
            continue;
        }
        if fp.gcd(&d)?.degree() == Some(0) {
            chosen = Some((p, t, fp));
            break;
        }
    }
    let (p, _t, fp) = chosen.ok_or_else(|| Error::Capacity("no good prime found".into()))?;
    let modular = factor_ff_squarefree(&fp, opts)?;
    if modular.len() == 1 {
        return Ok(vec![g.clone()]);
    }
    let modular: Vec<ZPoly> = modular.iter().map(tower_poly_to_int).collect();

    // Mignotte-style bound: factors of g have coefficients below 2^n * |g|_1
    let norm1: BigInt = g.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (BigInt::one() << n) * norm1;
    let target = BigInt::from(2) * &bound + BigInt::one();
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    while modulus < target {
        modulus = &modulus * &pb;
    }
    let lifted = hensel_multilift(&zp_norm(g, &modulus), &modular, &pb, &modulus)?;
    recombine(g, lifted, &modulus)
}

fn intpoly_to_tower(g: &ZPoly, t: &Arc<FieldTower>) -> Poly {
    let coeffs = g
        .iter()
        .map(|c| {
            t.from_rational(&BigRational::from_integer(c.clone()))
                .expect("integer coefficient")
        })
        .collect();
    Poly::new(t.clone(), coeffs)
}

fn tower_poly_to_int(f: &Poly) -> ZPoly {
    f.coeffs()
        .iter()
        .map(|c| match c.as_base().expect("prime field element") {
            Scalar::Fp(v) => BigInt::from(v),
            Scalar::Rat(q) => q.numer().clone(),
        })
        .collect()
}

fn factor_q_squarefree(f: &Poly, opts: &FactorOptions) -> Result<Vec<Poly>> {
    let t = f.tower().clone();
    let n = f.degree().unwrap();
    // scale x -> x/c to reach a monic integer polynomial
    let mut c = BigInt::one();
    for a in f.coeffs() {
        if let Scalar::Rat(q) = &a.as_base().expect("base coefficient") {
            c = c.lcm(q.denom());
        }
    }
    let mut g: ZPoly = Vec::with_capacity(n + 1);
    for (i, a) in f.coeffs().iter().enumerate() {
        let Scalar::Rat(q) = a.as_base().expect("base coefficient") else {
            unreachable!("rational base");
        };
        let scaled = q * BigRational::from_integer(c.pow((n - i) as u32));
        debug_assert!(scaled.denom().is_one());
        g.push(scaled.numer().clone());
    }
    let factors = zassenhaus(&g, opts)?;
    let mut out = Vec::new();
    for h in factors {
        // map back: h(c*x) / c^{deg h}
        let d = h.len() - 1;
        let mut coeffs = Vec::with_capacity(h.len());
        for (i, a) in h.iter().enumerate() {
            let v = BigRational::new(a * c.pow(i as u32), c.pow(d as u32));
            coeffs.push(t.from_rational(&v)?);
        }
        out.push(Poly::new(t.clone(), coeffs).monic()?);
    }
    Ok(out)
}

// ---- extensions of Q: Trager's norm reduction ----

fn factor_trager(f: &Poly, opts: &FactorOptions) -> Result<Vec<Poly>> {
    let l = f.tower().clone();
    let sub = l.sub_tower().expect("proper extension").clone();
    let gen = l.generator()?;
    let min_poly = Poly::new(sub.clone(), l.top_min_poly().unwrap());
    let shifts: Vec<i64> = {
        let mut v = vec![0i64];
        for k in 1..=40 {
            v.push(k);
            v.push(-k);
        }
        v
    };
    for c in shifts {
        let shift = gen.scale(&l.base().from_i64(c));
        // G(x) = f(x - c*a)
        let inner = Poly::new(l.clone(), vec![shift.neg(), l.one()]);
        let g = f.compose(&inner)?;
        // norm of G: eliminate z from (min_poly(z), G with a -> z)
        let d = min_poly.degree().unwrap();
        let mut g_bi: BiPoly = vec![Poly::zero(&sub); d];
        for (i, coeff) in g.coeffs().iter().enumerate() {
            for (j, chunk) in coeff.chunks_below()?.into_iter().enumerate() {
                if chunk.is_zero() {
                    continue;
                }
                g_bi[j] = g_bi[j].add(&Poly::monomial(&sub, i, chunk))?;
            }
        }
        let m_bi: BiPoly = min_poly.coeffs().iter().map(|c| Poly::constant(c.clone())).collect();
        let norm = bivariate_resultant(&m_bi, &g_bi, &sub)?;
        if norm.degree() != Some(f.degree().unwrap() * d) {
            continue;
        }
        if norm.gcd(&norm.derivative())?.degree() != Some(0) {
            continue;
        }
        let sub_factors = factor(&norm, &FactorOptions {
            seed: opts.seed,
            max_degree: opts.max_degree.max(norm.degree().unwrap()),
        })?;
        let unshift = Poly::new(l.clone(), vec![shift.clone(), l.one()]);
        let mut out = Vec::new();
        let mut total = 0usize;
        for (ni, _) in sub_factors {
            let ni_l = ni.embed(&l)?;
            let gi = g.gcd(&ni_l)?;
            let di = gi.degree().unwrap_or(0);
            if di == 0 {
                return Err(Error::InternalCheck("norm factor with trivial gcd".into()));
            }
            total += di;
            out.push(gi.compose(&unshift)?.monic()?);
        }
        if total != f.degree().unwrap() {
            return Err(Error::InternalCheck("Trager factors do not cover the input".into()));
        }
        return Ok(out);
    }
    Err(Error::Capacity("no squarefree norm shift found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;

    fn check_product(f: &Poly, factors: &[(Poly, usize)]) {
        let mut prod = Poly::constant(f.leading());
        for (g, m) in factors {
            assert!(g.is_monic(), "factor not monic: {g:?}");
            for _ in 0..*m {
                prod = prod.mul(g).unwrap();
            }
        }
        assert_eq!(&prod, f, "product of factors differs from input");
    }

    #[test]
    fn factor_x6_plus_1_over_q() {
        let t = FieldTower::rationals();
        let f = Poly::from_i64_coeffs(&t, &[1, 0, 0, 0, 0, 0, 1]);
        let fs = factor(&f, &FactorOptions::default()).unwrap();
        check_product(&f, &fs);
        let degs: Vec<_> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![2, 4]); // x^2+1 and x^4-x^2+1
        assert_eq!(fs[0].0, Poly::from_i64_coeffs(&t, &[1, 0, 1]));
        assert_eq!(fs[1].0, Poly::from_i64_coeffs(&t, &[1, 0, -1, 0, 1]));
    }

    #[test]
    fn factor_x2_plus_1_over_f5() {
        let t = FieldTower::base_tower(FieldDescriptor::prime_field(5).unwrap());
        let f = Poly::from_i64_coeffs(&t, &[1, 0, 1]);
        let fs = factor(&f, &FactorOptions::default()).unwrap();
        check_product(&f, &fs);
        // (x-2)(x-3) = (x+3)(x+2)
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, _)| g.degree() == Some(1)));
    }

    #[test]
    fn factor_x2_plus_1_over_gaussian_rationals() {
        let q = FieldTower::rationals();
        let qi = q.extend("i", &Poly::from_i64_coeffs(&q, &[1, 0, 1])).unwrap();
        let f = Poly::from_i64_coeffs(&qi, &[1, 0, 1]);
        let fs = factor(&f, &FactorOptions::default()).unwrap();
        check_product(&f, &fs);
        assert_eq!(fs.len(), 2);
        let i = qi.generator().unwrap();
        let roots: Vec<_> = fs.iter().map(|(g, _)| g.coeff(0).neg()).collect();
        assert!(roots.contains(&i) && roots.contains(&i.neg()));
    }

    #[test]
    fn factor_with_multiplicities_over_q() {
        let t = FieldTower::rationals();
        // 2 * (x-1)^2 * (x^2+1)
        let f = Poly::from_i64_coeffs(&t, &[-1, 1])
            .mul(&Poly::from_i64_coeffs(&t, &[-1, 1]))
            .unwrap()
            .mul(&Poly::from_i64_coeffs(&t, &[1, 0, 1]))
            .unwrap()
            .scale(&t.from_i64(2))
            .unwrap();
        let fs = factor(&f, &FactorOptions::default()).unwrap();
        check_product(&f, &fs);
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn irreducibility_checks() {
        let t = FieldTower::rationals();
        let opts = FactorOptions::default();
        assert!(is_irreducible(&Poly::from_i64_coeffs(&t, &[1, 0, 1]), &opts).unwrap());
        assert!(is_irreducible(&Poly::from_i64_coeffs(&t, &[-2, 0, 0, 1]), &opts).unwrap());
        assert!(!is_irreducible(&Poly::from_i64_coeffs(&t, &[-1, 0, 1]), &opts).unwrap());
        // z^n - s irreducible for n in 2..=7, s in {2,3,5,7}
        for n in 2..=7usize {
            for s in [2i64, 3, 5, 7] {
                let mut coeffs = vec![0i64; n + 1];
                coeffs[0] = -s;
                coeffs[n] = 1;
                assert!(
                    is_irreducible(&Poly::from_i64_coeffs(&t, &coeffs), &opts).unwrap(),
                    "z^{n} - {s}"
                );
            }
        }
    }

    #[test]
    fn factor_cyclotomic_over_f101_fuzz() {
        let fd = FieldDescriptor::prime_field(101).unwrap();
        let t = FieldTower::base_tower(fd);
        let opts = FactorOptions::default();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let deg = rng.gen_range(2..10usize);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(0..101)).collect();
            let f = Poly::from_i64_coeffs(&t, &coeffs);
            if f.degree().unwrap_or(0) < 1 {
                continue;
            }
            let fs = factor(&f, &opts).unwrap();
            check_product(&f, &fs);
        }
    }

    #[test]
    fn factor_over_two_stage_tower() {
        // x^4 - 2 stays irreducible over Q[i] (the splitting field has
        // degree 8) but splits into two quadratics over Q[i][w], w^2 = 2
        let q = FieldTower::rationals();
        let qi = q.extend("i", &Poly::from_i64_coeffs(&q, &[1, 0, 1])).unwrap();
        let f = Poly::from_i64_coeffs(&qi, &[-2, 0, 0, 0, 1]);
        let fs = factor(&f, &FactorOptions::default()).unwrap();
        check_product(&f, &fs);
        assert_eq!(fs.len(), 1);

        let qiw = qi.extend("w", &Poly::from_i64_coeffs(&qi, &[-2, 0, 1])).unwrap();
        let f2 = Poly::from_i64_coeffs(&qiw, &[-2, 0, 0, 0, 1]);
        let fs2 = factor(&f2, &FactorOptions::default()).unwrap();
        check_product(&f2, &fs2);
        assert_eq!(fs2.len(), 2);
        assert!(fs2.iter().all(|(g, _)| g.degree() == Some(2)));
        // and x^2 - 2 splits into linear factors there
        let f3 = Poly::from_i64_coeffs(&qiw, &[-2, 0, 1]);
        let fs3 = factor(&f3, &FactorOptions::default()).unwrap();
        check_product(&f3, &fs3);
        assert_eq!(fs3.len(), 2);
        assert!(fs3.iter().all(|(g, _)| g.degree() == Some(1)));
    }

    #[test]
    fn capacity_error_beyond_degree_cap() {
        let t = FieldTower::rationals();
        let mut coeffs = vec![0i64; 70];
        coeffs[0] = 1;
        coeffs[69] = 1;
        let f = Poly::from_i64_coeffs(&t, &coeffs);
        let err = factor(&f, &FactorOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
    }

    #[test]
    fn square_root_detection_in_towers() {
        let q = FieldTower::rationals();
        let qi = q.extend("i", &Poly::from_i64_coeffs(&q, &[1, 0, 1])).unwrap();
        let opts = FactorOptions::default();
        // -1 is a square in Q[i], 2 is not
        assert!(has_square_root(&qi.from_i64(-1), &opts).unwrap());
        assert!(!has_square_root(&qi.from_i64(2), &opts).unwrap());
        // 2i = (1+i)^2
        let i = qi.generator().unwrap();
        assert!(has_square_root(&i.scale(&qi.base().from_i64(2)), &opts).unwrap());
    }
}
