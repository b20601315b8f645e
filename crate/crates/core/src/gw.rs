//! The Grothendieck-Witt ring of the base field: virtual diagonal forms as
//! signed multisets of square classes, ring arithmetic, the complete
//! invariant set, a decidable equality test and canonical display.

use crate::error::{Error, Result};
use crate::field::{hilbert_symbol, odd_prime_support, FieldDescriptor, FieldKind, Place, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Element of GW(k): entries map canonical square-class representatives to
/// integer multiplicities; virtual forms carry negative multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWElement {
    base: FieldDescriptor,
    entries: BTreeMap<Scalar, i64>,
}

/// Invariant record; `signature` and `hasse` are only available over Q (and
/// the reals, where `hasse` stays empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GWInvariants {
    pub rank: i64,
    pub signature: Option<i64>,
    pub discriminant: Scalar,
    pub hasse: Vec<(Place, i32)>,
}

impl GWElement {
    pub fn zero(base: FieldDescriptor) -> GWElement {
        GWElement { base, entries: BTreeMap::new() }
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn from_diagonal(base: &FieldDescriptor, values: &[Scalar]) -> Result<GWElement> {
        let mut out = GWElement::zero(base.clone());
        for v in values {
            out.push_class(base.square_class(v)?, 1);
        }
        Ok(out)
    }

    /// The rank-one form `<a>`.
    pub fn line(base: &FieldDescriptor, a: &Scalar) -> Result<GWElement> {
        GWElement::from_diagonal(base, std::slice::from_ref(a))
    }

    pub fn line_i64(base: &FieldDescriptor, a: i64) -> Result<GWElement> {
        GWElement::line(base, &base.from_i64(a))
    }

    /// m copies of the hyperbolic form H = <1> + <-1>.
    pub fn hyperbolic(base: &FieldDescriptor, m: i64) -> GWElement {
        let mut out = GWElement::zero(base.clone());
        if m != 0 {
            let one = base.square_class(&base.one()).expect("one is nonzero");
            let minus = base.square_class(&base.from_i64(-1)).expect("nonzero");
            out.push_class(one, m);
            out.push_class(minus, m);
        }
        out
    }

    fn push_class(&mut self, class: Scalar, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.entries.entry(class.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.entries.remove(&class);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Scalar, i64)> {
        self.entries.iter().map(|(k, &m)| (k, m))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_base(&self, other: &GWElement) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }

    pub fn add(&self, other: &GWElement) -> Result<GWElement> {
        self.check_base(other)?;
        let mut out = self.clone();
        for (c, m) in other.entries() {
            out.push_class(c.clone(), m);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GWElement) -> Result<GWElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> GWElement {
        GWElement {
            base: self.base.clone(),
            entries: self.entries.iter().map(|(c, m)| (c.clone(), -m)).collect(),
        }
    }

    pub fn mul(&self, other: &GWElement) -> Result<GWElement> {
        self.check_base(other)?;
        let mut out = GWElement::zero(self.base.clone());
        for (a, ma) in self.entries() {
            for (b, mb) in other.entries() {
                let prod = self.base.mul(a, b);
                out.push_class(self.base.square_class(&prod)?, ma * mb);
            }
        }
        Ok(out)
    }

    pub fn scale_int(&self, n: i64) -> GWElement {
        GWElement {
            base: self.base.clone(),
            entries: if n == 0 {
                BTreeMap::new()
            } else {
                self.entries.iter().map(|(c, m)| (c.clone(), m * n)).collect()
            },
        }
    }

    pub fn rank(&self) -> i64 {
        self.entries.values().sum()
    }

    /// Signature over an ordered base (Q or the reals).
    pub fn signature(&self) -> Result<i64> {
        match self.base.kind {
            FieldKind::Rationals | FieldKind::Reals => Ok(self
                .entries
                .iter()
                .map(|(c, m)| {
                    let Scalar::Rat(q) = c else { unreachable!("rational class") };
                    if q.is_positive() {
                        *m
                    } else {
                        -m
                    }
                })
                .sum()),
            FieldKind::PrimeField(_) => Err(Error::SignatureUnavailable),
        }
    }

    /// Square class of the product of the diagonal entries; inverse classes
    /// coincide with the class itself, so only multiplicity parity matters.
    pub fn discriminant(&self) -> Scalar {
        let mut acc = self.base.one();
        for (c, m) in self.entries() {
            if m.rem_euclid(2) == 1 {
                acc = self.base.mul(&acc, c);
            }
        }
        self.base.square_class(&acc).expect("nonzero product")
    }

    /// Non-virtual diagonal representative of self + m*H for the canonical
    /// hyperbolic padding m, as a flat list of class representatives.
    fn padded_diagonal(&self) -> Vec<Scalar> {
        let mut counts: BTreeMap<Scalar, i64> = self.entries.clone();
        for (c, m) in self.entries() {
            if m < 0 {
                // add |m| copies of H written as <c> + <-c>
                let neg = self.base.square_class(&self.base.neg(c)).expect("nonzero");
                *counts.get_mut(c).unwrap() += -m;
                *counts.entry(neg).or_insert(0) += -m;
            }
        }
        let mut out = Vec::new();
        for (c, m) in counts {
            debug_assert!(m >= 0, "padding left a negative multiplicity");
            for _ in 0..m {
                out.push(c.clone());
            }
        }
        out
    }

    fn rational_value(c: &Scalar) -> BigRational {
        match c {
            Scalar::Rat(q) => q.clone(),
            Scalar::Fp(_) => unreachable!("rational entries expected"),
        }
    }

    /// Hasse invariant at v of a diagonal form given by class representatives.
    fn hasse_of_diagonal(diag: &[Scalar], v: Place) -> Result<i32> {
        let mut s = 1i32;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                s *= hilbert_symbol(
                    &Self::rational_value(&diag[i]),
                    &Self::rational_value(&diag[j]),
                    v,
                )?;
            }
        }
        Ok(s)
    }

    fn support_places(diags: &[&[Scalar]]) -> Vec<Place> {
        let mut places = vec![Place::Infinite, Place::Finite(2)];
        for diag in diags {
            for c in diag.iter() {
                for p in odd_prime_support(&Self::rational_value(c)) {
                    if !places.contains(&Place::Finite(p)) {
                        places.push(Place::Finite(p));
                    }
                }
            }
        }
        places.sort_unstable();
        places
    }

    /// Complete invariant record. Over Q the Hasse invariants are those of
    /// the canonical hyperbolically padded representative.
    pub fn invariants(&self) -> GWInvariants {
        let rank = self.rank();
        let signature = self.signature().ok();
        let discriminant = self.discriminant();
        let hasse = if self.base.is_rationals() {
            // only places with a nontrivial symbol; everything else is +1
            let diag = self.padded_diagonal();
            Self::support_places(&[&diag])
                .into_iter()
                .map(|v| (v, Self::hasse_of_diagonal(&diag, v).expect("nonzero entries")))
                .filter(|(_, s)| *s == -1)
                .collect()
        } else {
            Vec::new()
        };
        GWInvariants { rank, signature, discriminant, hasse }
    }

    /// Decidable equality in GW(k). Over Q: rank, signature, discriminant
    /// and Hasse invariants of hyperbolically padded representatives of
    /// equal rank; over F_p: rank and discriminant; over the reals: rank
    /// and signature.
    pub fn equals(&self, other: &GWElement) -> Result<bool> {
        self.check_base(other)?;
        if self.rank() != other.rank() {
            return Ok(false);
        }
        match self.base.kind {
            FieldKind::PrimeField(_) => Ok(self.discriminant() == other.discriminant()),
            FieldKind::Reals => Ok(self.signature()? == other.signature()?),
            FieldKind::Rationals => {
                if self.signature()? != other.signature()? {
                    return Ok(false);
                }
                let mut dx = self.padded_diagonal();
                let mut dy = other.padded_diagonal();
                // equalize ranks with extra copies of H
                let one = self.base.one();
                let minus = self.base.from_i64(-1);
                while dx.len() < dy.len() {
                    dx.push(one.clone());
                    dx.push(minus.clone());
                }
                while dy.len() < dx.len() {
                    dy.push(one.clone());
                    dy.push(minus.clone());
                }
                if self.discriminant() != other.discriminant() {
                    return Ok(false);
                }
                for v in Self::support_places(&[&dx, &dy]) {
                    if Self::hasse_of_diagonal(&dx, v)? != Self::hasse_of_diagonal(&dy, v)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Display decomposition: residual diagonal entries plus a hyperbolic
    /// count, after greedy extraction of <c> + <-c> pairs.
    pub fn display_parts(&self) -> (Vec<(Scalar, i64)>, i64) {
        let mut counts = self.entries.clone();
        let mut hyper = 0i64;
        let classes: Vec<Scalar> = counts.keys().cloned().collect();
        for c in classes {
            let Some(&mc) = counts.get(&c) else { continue };
            if mc == 0 {
                continue;
            }
            let neg = self.base.square_class(&self.base.neg(&c)).expect("nonzero");
            if neg == c {
                // -1 is a square: <c> + <c> is already hyperbolic
                let k = mc / 2;
                hyper += k;
                *counts.get_mut(&c).unwrap() -= 2 * k;
            } else if let Some(&mn) = counts.get(&neg) {
                if (mc > 0) == (mn > 0) {
                    let k = if mc > 0 { mc.min(mn) } else { mc.max(mn) };
                    hyper += k;
                    *counts.get_mut(&c).unwrap() -= k;
                    *counts.get_mut(&neg).unwrap() -= k;
                }
            }
        }
        let mut rest: Vec<(Scalar, i64)> =
            counts.into_iter().filter(|(_, m)| *m != 0).collect();
        rest.sort_by(|(a, _), (b, _)| {
            let key = |s: &Scalar| match s {
                Scalar::Rat(q) => (q.abs(), q.is_negative()),
                Scalar::Fp(v) => (BigRational::from_integer(BigInt::from(*v)), false),
            };
            key(a).cmp(&key(b))
        });
        (rest, hyper)
    }

    pub fn display(&self) -> String {
        let (rest, hyper) = self.display_parts();
        if rest.is_empty() && hyper == 0 {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        let mut push_term = |mult: i64, body: String, out: &mut String, first: &mut bool| {
            if mult == 0 {
                return;
            }
            let mag = mult.abs();
            if *first {
                if mult < 0 {
                    out.push('-');
                }
                *first = false;
            } else if mult < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if mag != 1 || body == "H" {
                if body == "H" {
                    if mag == 1 {
                        out.push_str("H");
                        return;
                    }
                    out.push_str(&format!("{mag}*H"));
                    return;
                }
                out.push_str(&format!("{mag}{body}"));
            } else {
                out.push_str(&body);
            }
        };
        for (c, m) in &rest {
            let body = format!("<{}>", self.base.to_string_scalar(c));
            push_term(*m, body, &mut out, &mut first);
        }
        push_term(hyper, "H".to_string(), &mut out, &mut first);
        out
    }
}

// ---- parsing and expression evaluation ----

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Class(BigRational),
    Hyper,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
}

fn tokenize_gw(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let err = |i: usize, msg: &str| Error::parse(1, i + 1, msg);
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'H' => {
                out.push(Tok::Hyper);
                i += 1;
            }
            '<' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == '>')
                    .ok_or_else(|| err(i, "unterminated '<'"))?;
                let body: String = chars[i + 1..i + close].iter().collect();
                let q = parse_rational(body.trim()).ok_or_else(|| err(i, "bad rational"))?;
                if q.is_zero() {
                    return Err(err(i, "zero square class"));
                }
                out.push(Tok::Class(q));
                i += close + 1;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let body: String = chars[i..j].iter().collect();
                out.push(Tok::Int(body.parse().map_err(|_| err(i, "bad integer"))?));
                i = j;
            }
            _ => return Err(err(i, &format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

struct GwParser<'a> {
    toks: &'a [Tok],
    pos: usize,
    base: FieldDescriptor,
}

impl<'a> GwParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_expr(&mut self) -> Result<GWElement> {
        let mut acc = self.parse_term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.parse_term()?)?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.parse_term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<GWElement> {
        let mut acc = self.parse_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.parse_unary()?)?;
                }
                // implicit multiplication: `2<1>`, `3H`, `2(...)`
                Some(Tok::Class(_)) | Some(Tok::Hyper) | Some(Tok::LParen) | Some(Tok::Int(_)) => {
                    acc = acc.mul(&self.parse_unary()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_unary(&mut self) -> Result<GWElement> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            return Ok(self.parse_unary()?.neg());
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<GWElement> {
        let pos = self.pos;
        let err = || Error::parse(1, pos + 1, "expected a GW term");
        match self.bump().cloned() {
            Some(Tok::Int(n)) => {
                // integer n stands for n * <1>
                let n: i64 = (&n).try_into().map_err(|_| err())?;
                Ok(GWElement::line_i64(&self.base, 1)?.scale_int(n))
            }
            Some(Tok::Class(q)) => {
                let v = self.base.from_rational(&q)?;
                if self.base.is_zero(&v) {
                    return Err(Error::parse(1, pos + 1, "class reduces to zero in the base"));
                }
                GWElement::line(&self.base, &v)
            }
            Some(Tok::Hyper) => Ok(GWElement::hyperbolic(&self.base, 1)),
            Some(Tok::LParen) => {
                let e = self.parse_expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::parse(1, pos + 1, "missing closing parenthesis")),
                }
            }
            _ => Err(err()),
        }
    }
}

/// Parse a GW element or arithmetic expression over terms `k*<q>` and `m*H`.
pub fn parse_gw(s: &str, base: &FieldDescriptor) -> Result<GWElement> {
    let toks = tokenize_gw(s)?;
    if toks.is_empty() {
        return Err(Error::parse(1, 1, "empty GW expression"));
    }
    let mut p = GwParser { toks: &toks, pos: 0, base: base.clone() };
    let e = p.parse_expr()?;
    if p.pos != toks.len() {
        return Err(Error::parse(1, p.pos + 1, "trailing input in GW expression"));
    }
    Ok(e)
}

/// Solve beta * x = y over GW(R) given (rank, signature) of x and y.
/// Returns the (rank, signature) of a solution, or None: GW(R) is the ring
/// of pairs with rank = signature mod 2 under componentwise multiplication.
pub fn real_factor_constraints(
    rank_x: i64,
    sig_x: i64,
    rank_y: i64,
    sig_y: i64,
) -> Option<(i64, i64)> {
    let solve = |a: i64, b: i64| -> Option<Option<i64>> {
        // x with a*x = b: None = unsolvable, Some(None) = unconstrained
        if a == 0 {
            if b == 0 {
                Some(None)
            } else {
                None
            }
        } else if b % a == 0 {
            Some(Some(b / a))
        } else {
            None
        }
    };
    let r = solve(rank_x, rank_y)?;
    let s = solve(sig_x, sig_y)?;
    match (r, s) {
        (Some(r), Some(s)) => {
            if (r - s) % 2 == 0 {
                Some((r, s))
            } else {
                None
            }
        }
        (Some(r), None) => Some((r, r)),
        (None, Some(s)) => Some((s, s)),
        (None, None) => Some((0, 0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qq() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn gw(s: &str) -> GWElement {
        parse_gw(s, &qq()).unwrap()
    }

    #[test]
    fn from_diagonal_examples() {
        let b = qq();
        let e = GWElement::from_diagonal(&b, &[b.from_i64(18)]).unwrap();
        assert!(e.equals(&gw("<2>")).unwrap());
        let empty = GWElement::from_diagonal(&b, &[]).unwrap();
        assert!(empty.is_zero());
        let h = GWElement::from_diagonal(&b, &[b.from_i64(1), b.from_i64(-1)]).unwrap();
        assert!(h.equals(&GWElement::hyperbolic(&b, 1)).unwrap());
    }

    #[test]
    fn multiplication_examples() {
        let b = qq();
        // <2> * <2> = <1>
        assert!(gw("<2>*<2>").equals(&gw("<1>")).unwrap());
        // H * <a> = H
        for a in [2i64, -3, 5, 30] {
            let ha = GWElement::hyperbolic(&b, 1)
                .mul(&GWElement::line_i64(&b, a).unwrap())
                .unwrap();
            assert!(ha.equals(&GWElement::hyperbolic(&b, 1)).unwrap());
        }
        // (<3> + H)(<1> + H) = <3> + 4H: ranks 3*3 = 9 force four
        // hyperbolic summands
        let prod = gw("(<3> + H)(<1> + H)");
        assert_eq!(prod.rank(), 9);
        assert!(prod.equals(&gw("<3> + 4*H")).unwrap());
        assert!(!prod.equals(&gw("<3> + 3*H")).unwrap());
    }

    #[test]
    fn invariants_of_h_and_k3_value() {
        let b = qq();
        let h = GWElement::hyperbolic(&b, 1);
        let inv = h.invariants();
        assert_eq!(inv.rank, 2);
        assert_eq!(inv.signature, Some(0));
        assert_eq!(inv.discriminant, b.from_i64(-1));
        let chi = gw("2<1> + 11*H");
        assert_eq!(chi.rank(), 24);
        assert_eq!(chi.signature().unwrap(), 2);
    }

    #[test]
    fn identical_invariants_for_relation_two_instance() {
        // <1> + <2> = <3> + <6> by the additivity relation
        let x = gw("<1> + <2>");
        let y = gw("<3> + <6>");
        assert_eq!(x.invariants(), y.invariants());
        assert!(x.equals(&y).unwrap());
    }

    #[test]
    fn equality_over_q_distinguishes_signature() {
        assert!(!gw("<1> + <1>").equals(&gw("H")).unwrap());
        assert!(!gw("2<1>").equals(&gw("<1> + <2>")).unwrap());
    }

    /// Exhaustive congruence search: is diag(d1) congruent to diag(d2) over
    /// F_p by some invertible 2x2 matrix?
    fn congruent_2x2_fp(p: u64, d1: [i64; 2], d2: [i64; 2]) -> bool {
        let f = FieldDescriptor::prime_field(p).unwrap();
        let n = |x: i64| x.rem_euclid(p as i64) as u64;
        let (a1, b1) = (n(d1[0]), n(d1[1]));
        let (a2, b2) = (n(d2[0]), n(d2[1]));
        let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
        let addm = |x: u64, y: u64| ((x + y) % p) as u64;
        for p00 in 0..p {
            for p01 in 0..p {
                for p10 in 0..p {
                    for p11 in 0..p {
                        let det = (p as u128 + p00 as u128 * p11 as u128 % p as u128
                            - p01 as u128 * p10 as u128 % p as u128)
                            % p as u128;
                        if det == 0 {
                            continue;
                        }
                        // P^T diag(a1,b1) P entries
                        let g00 = addm(mulm(a1, mulm(p00, p00)), mulm(b1, mulm(p10, p10)));
                        let g01 = addm(mulm(a1, mulm(p00, p01)), mulm(b1, mulm(p10, p11)));
                        let g11 = addm(mulm(a1, mulm(p01, p01)), mulm(b1, mulm(p11, p11)));
                        if g00 == a2 && g11 == b2 && g01 == 0 {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn equality_over_small_prime_fields_matches_congruence_oracle() {
        // -1 is a square mod 5 and mod 13, so <1> + <1> = H there; it is
        // not a square mod 7 or mod 11
        for (p, expected) in [(5u64, true), (13, true), (7, false), (11, false)] {
            let f = FieldDescriptor::prime_field(p).unwrap();
            let two_ones = GWElement::from_diagonal(&f, &[f.from_i64(1), f.from_i64(1)]).unwrap();
            let h = GWElement::hyperbolic(&f, 1);
            assert_eq!(two_ones.equals(&h).unwrap(), expected, "p = {p}");
            if p == 5 || p == 7 {
                assert_eq!(congruent_2x2_fp(p, [1, 1], [1, -1]), expected, "oracle p = {p}");
            }
        }
        // <2> = <8> over F_5
        let f = FieldDescriptor::prime_field(5).unwrap();
        let a = GWElement::line_i64(&f, 2).unwrap();
        let b = GWElement::line_i64(&f, 8).unwrap();
        assert!(a.equals(&b).unwrap());
    }

    #[test]
    fn presentation_relations_exhaustive_over_small_fields() {
        for p in [3u64, 5, 7, 11] {
            let f = FieldDescriptor::prime_field(p).unwrap();
            let h = GWElement::hyperbolic(&f, 1);
            for a in 1..p {
                let la = GWElement::line(&f, &Scalar::Fp(a)).unwrap();
                for b in 1..p {
                    let lb = GWElement::line(&f, &Scalar::Fp(b)).unwrap();
                    // (1) <a><b> = <ab>
                    let ab = f.mul(&Scalar::Fp(a), &Scalar::Fp(b));
                    assert!(la
                        .mul(&lb)
                        .unwrap()
                        .equals(&GWElement::line(&f, &ab).unwrap())
                        .unwrap());
                    // (2) <a> + <b> = <a+b> + <ab(a+b)> when a+b != 0
                    let s = f.add(&Scalar::Fp(a), &Scalar::Fp(b));
                    if !f.is_zero(&s) {
                        let lhs = la.add(&lb).unwrap();
                        let rhs = GWElement::line(&f, &s)
                            .unwrap()
                            .add(&GWElement::line(&f, &f.mul(&ab, &s)).unwrap())
                            .unwrap();
                        assert!(lhs.equals(&rhs).unwrap(), "relation 2 at p={p} a={a} b={b}");
                    }
                    // (3) <a b^2> = <a>
                    let ab2 = f.mul(&Scalar::Fp(a), &f.mul(&Scalar::Fp(b), &Scalar::Fp(b)));
                    assert!(la.equals(&GWElement::line(&f, &ab2).unwrap()).unwrap());
                }
                // (4) <a> + <-a> = H
                let lneg = GWElement::line(&f, &f.neg(&Scalar::Fp(a))).unwrap();
                assert!(la.add(&lneg).unwrap().equals(&h).unwrap());
            }
        }
    }

    #[test]
    fn presentation_relations_fuzzed_over_q() {
        let b = qq();
        let h = GWElement::hyperbolic(&b, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut pick = |rng: &mut ChaCha8Rng| loop {
            let n = rng.gen_range(-40..40i64);
            if n != 0 {
                return n;
            }
        };
        for _ in 0..200 {
            let a = pick(&mut rng);
            let c = pick(&mut rng);
            let la = GWElement::line_i64(&b, a).unwrap();
            let lc = GWElement::line_i64(&b, c).unwrap();
            assert!(la
                .mul(&lc)
                .unwrap()
                .equals(&GWElement::line_i64(&b, a * c).unwrap())
                .unwrap());
            if a + c != 0 {
                let rhs = GWElement::line_i64(&b, a + c)
                    .unwrap()
                    .add(&GWElement::line_i64(&b, a * c * (a + c)).unwrap())
                    .unwrap();
                assert!(la.add(&lc).unwrap().equals(&rhs).unwrap(), "a={a} c={c}");
            }
            assert!(la
                .equals(&GWElement::line_i64(&b, a * c * c).unwrap())
                .unwrap());
            assert!(la
                .add(&GWElement::line_i64(&b, -a).unwrap())
                .unwrap()
                .equals(&h)
                .unwrap());
        }
    }

    #[test]
    fn rank_and_signature_are_ring_homomorphisms() {
        let b = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let mut rand_el = |rng: &mut ChaCha8Rng| {
                let mut e = GWElement::zero(b.clone());
                for _ in 0..rng.gen_range(1..4) {
                    let a = loop {
                        let v = rng.gen_range(-20..20i64);
                        if v != 0 {
                            break v;
                        }
                    };
                    let m = rng.gen_range(-3..4i64);
                    e = e.add(&GWElement::line_i64(&b, a).unwrap().scale_int(m)).unwrap();
                }
                e
            };
            let x = rand_el(&mut rng);
            let y = rand_el(&mut rng);
            assert_eq!(x.add(&y).unwrap().rank(), x.rank() + y.rank());
            assert_eq!(x.mul(&y).unwrap().rank(), x.rank() * y.rank());
            assert_eq!(
                x.add(&y).unwrap().signature().unwrap(),
                x.signature().unwrap() + y.signature().unwrap()
            );
            assert_eq!(
                x.mul(&y).unwrap().signature().unwrap(),
                x.signature().unwrap() * y.signature().unwrap()
            );
            // rank = signature mod 2
            assert_eq!((x.rank() - x.signature().unwrap()).rem_euclid(2), 0);
            // H * x = rank(x) * H
            let h = GWElement::hyperbolic(&b, 1);
            assert!(h
                .mul(&x)
                .unwrap()
                .equals(&GWElement::hyperbolic(&b, x.rank()))
                .unwrap());
        }
    }

    #[test]
    fn display_examples() {
        let b = qq();
        assert_eq!(gw("<3> + <-3> + <1>").display(), "<1> + H");
        assert_eq!(GWElement::zero(b.clone()).display(), "0");
        assert_eq!(gw("<1> + <1> + <-1>").display(), "<1> + H");
        assert_eq!(gw("2<1> + 11*H").display(), "2<1> + 11*H");
        assert_eq!(GWElement::hyperbolic(&b, -9).display(), "-9*H");
        assert_eq!(gw("<2>").sub(&gw("<3>")).unwrap().display(), "<2> - <3>");
    }

    #[test]
    fn display_round_trips_through_parse() {
        let b = qq();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..80 {
            let mut e = GWElement::zero(b.clone());
            for _ in 0..rng.gen_range(0..5) {
                let a = loop {
                    let v = rng.gen_range(-30..30i64);
                    if v != 0 {
                        break v;
                    }
                };
                e = e
                    .add(&GWElement::line_i64(&b, a).unwrap().scale_int(rng.gen_range(-3..4)))
                    .unwrap();
            }
            let back = parse_gw(&e.display(), &b).unwrap();
            assert!(back.equals(&e).unwrap(), "{}", e.display());
        }
    }

    #[test]
    fn real_constraint_solver_rejects_odd_parity() {
        // rank 12, sig 4 -> rank 24, sig 4 forces beta = (2, 1): impossible
        assert_eq!(real_factor_constraints(12, 4, 24, 4), None);
        assert_eq!(real_factor_constraints(12, 4, 24, 8), Some((2, 2)));
        assert_eq!(real_factor_constraints(2, 0, 6, 0), Some((3, 3)));
        assert_eq!(real_factor_constraints(0, 0, 2, 0), None);
    }

    #[test]
    fn finite_field_parse_and_classes() {
        let f5 = FieldDescriptor::prime_field(5).unwrap();
        let e = parse_gw("<3> + 2*H", &f5).unwrap();
        assert_eq!(e.rank(), 5);
        // class of 3 is the least non-residue 2
        assert!(e.entries().any(|(c, _)| *c == Scalar::Fp(2)));
    }
}
