//! Multivariate polynomials over Q.
//!
//! A [`MultiPoly`] is a map from exponent vectors to nonzero rational
//! coefficients over a fixed number of variables. Besides the ring
//! operations this module provides the text grammar, evaluation,
//! homogeneity, the coefficient norms `‖·‖_v`, `‖·‖_{v,1}` and the heights
//! `h`, `h₁` of polynomial systems.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qarith::{
    format_rational, joint_support, normalized_abs, ExactLog, Place, PlaceSet, Rational,
};

/// Exponent vector, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Graded lexicographic comparison (total degree, then lex with `x0` largest).
    pub fn grlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// How variables are named when printing or parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarNames {
    /// `x0 … x{n-1}`
    X,
    /// Explicit names, one per variable.
    Custom(Vec<String>),
}

impl VarNames {
    pub fn name(&self, i: usize) -> String {
        match self {
            VarNames::X => format!("x{i}"),
            VarNames::Custom(v) => v[i].clone(),
        }
    }

    fn lookup(&self, ident: &str, nvars: usize) -> Option<usize> {
        match self {
            VarNames::X => {
                let digits = ident.strip_prefix('x')?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                digits.parse().ok()
            }
            VarNames::Custom(v) => v.iter().take(nvars).position(|n| n == ident),
        }
    }
}

/// Whether a polynomial is homogeneous, and of which degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(u32),
    NotHomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, nvars: usize) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> MultiPoly {
        MultiPoly::constant(Rational::one(), nvars)
    }

    pub fn var(i: usize, nvars: usize) -> MultiPoly {
        assert!(i < nvars, "variable index out of range");
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(i, nvars), Rational::one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in descending graded-lex order (the display and height order).
    pub fn terms_grlex_desc(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.grlex_cmp(a.0));
        v
    }

    /// Coefficients in descending graded-lex monomial order.
    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms_grlex_desc()
            .into_iter()
            .map(|(_, c)| c.clone())
            .collect()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn homogeneity(&self) -> Result<Homogeneity> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let first = degs
            .next()
            .ok_or_else(|| Error::Precondition("zero polynomial has no degree".into()))?;
        Ok(if degs.all(|d| d == first) {
            Homogeneity::Degree(first)
        } else {
            Homogeneity::NotHomogeneous
        })
    }

    /// The common degree of all terms, or an error naming the polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        match self.homogeneity()? {
            Homogeneity::Degree(d) => Ok(d),
            Homogeneity::NotHomogeneous => {
                Err(Error::Precondition(format!("{self} is not homogeneous")))
            }
        }
    }

    /// Highest variable index actually used, if any.
    pub fn max_var_used(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.0.iter().rposition(|&e| e > 0))
            .max()
    }

    /// Degree in the variables flagged in `block`.
    pub fn degree_in(&self, block: &[bool]) -> u32 {
        self.terms
            .keys()
            .map(|m| {
                m.0.iter()
                    .zip(block)
                    .filter(|(_, &b)| b)
                    .map(|(e, _)| *e)
                    .sum()
            })
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Precondition(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluates at an integer point.
    pub fn evaluate_int(&self, point: &[BigInt]) -> Result<Rational> {
        let q: Vec<Rational> = point.iter().cloned().map(Rational::from_integer).collect();
        self.evaluate(&q)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Reinterprets the polynomial in a ring with `nvars` variables, sending
    /// variable `i` to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars, "variable map length mismatch");
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Embeds into `nvars ≥ self.nvars` variables starting at `offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> MultiPoly {
        let map: Vec<usize> = (0..self.nvars).map(|i| i + offset).collect();
        self.remap(nvars, &map)
    }

    /// Drops the last variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
            out.add_term(Monomial(m.0[..nvars].to_vec()), c.clone());
        }
        out
    }

    /// Substitutes the constant `value` for variable `i` (the variable stays
    /// in the ring and no longer occurs).
    pub fn substitute_const(&self, i: usize, value: &Rational) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = std::mem::replace(&mut e[i], 0);
            out.add_term(Monomial(e), c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Makes the leading coefficient (graded-lex) equal to one.
    pub fn monic_grlex(&self) -> MultiPoly {
        match self.terms_grlex_desc().first() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Scales to a primitive integer polynomial with positive graded-lex
    /// leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut s = Rational::new(den, num);
        if self.terms_grlex_desc()[0].1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn to_string_with(&self, names: &VarNames) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(format_rational(&a));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names.name(i)),
                    _ => factors.push(format!("{}^{e}", names.name(i))),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&VarNames::X))
    }
}

impl std::ops::Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
    names: &'a VarNames,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let save = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        self.pos = save;
                        return self.err("zero denominator");
                    }
                    acc = acc.scale(&Rational::new(BigInt::one(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| Error::Parse {
                pos: self.pos,
                msg: "exponent too large".into(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut value = Rational::from_integer(n);
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d.is_zero() {
                        self.pos = save;
                        return self.err("zero denominator");
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(MultiPoly::constant(value, self.nvars))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.names.lookup(ident, self.nvars) {
                    Some(i) if i < self.nvars => Ok(MultiPoly::var(i, self.nvars)),
                    Some(i) => {
                        self.pos = start;
                        self.err(format!(
                            "variable index {i} out of range for {} variables",
                            self.nvars
                        ))
                    }
                    None => {
                        self.pos = start;
                        self.err(format!("unknown identifier `{ident}`"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses text in the grammar `x0 … x{n-1}`, rational literals, `+ - * ^`
/// and parentheses. The zero polynomial is rejected.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly> {
    let p = parse_poly_allow_zero(text, nvars, &VarNames::X)?;
    if p.is_zero() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("`{text}` is the zero polynomial"),
        });
    }
    Ok(p)
}

/// Like [`parse_poly`] but with explicit variable names and the zero
/// polynomial allowed.
pub fn parse_poly_allow_zero(text: &str, nvars: usize, names: &VarNames) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nvars,
        names,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Norms and heights

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormVariant {
    /// `‖f₁,…,f_r‖_v`: maximum of the coefficient absolute values.
    Max,
    /// `‖f₁,…,f_r‖_{v,1}`: sum of absolute values at `∞`, the maximum elsewhere.
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeightVariant {
    H,
    H1,
}

fn check_system(polys: &[MultiPoly]) -> Result<()> {
    if polys.is_empty() {
        return Err(Error::Precondition("empty polynomial list".into()));
    }
    if polys.iter().any(MultiPoly::is_zero) {
        return Err(Error::Precondition("zero polynomial in system".into()));
    }
    Ok(())
}

/// Coefficient vector of a system: polynomials in order, each in descending
/// graded-lex monomial order.
pub fn coefficient_vector(polys: &[MultiPoly]) -> Vec<Rational> {
    polys.iter().flat_map(MultiPoly::coefficients).collect()
}

pub fn system_norm(polys: &[MultiPoly], v: Place, variant: NormVariant) -> Result<Rational> {
    check_system(polys)?;
    let coeffs = coefficient_vector(polys);
    if variant == NormVariant::Sum && v.is_archimedean() {
        return Ok(coeffs
            .iter()
            .map(|c| c.abs())
            .fold(Rational::zero(), |a, b| a + b));
    }
    let mut best = Rational::zero();
    for c in &coeffs {
        let a = normalized_abs(c, v)?;
        if a > best {
            best = a;
        }
    }
    Ok(best)
}

/// Places where some coefficient of the system has a nontrivial absolute value.
pub fn system_support(polys: &[MultiPoly]) -> Result<PlaceSet> {
    check_system(polys)?;
    let coeffs = coefficient_vector(polys);
    joint_support(coeffs.iter())
}

/// `h` or `h₁` of a polynomial system as an exact product of per-place norms.
pub fn system_height(polys: &[MultiPoly], variant: HeightVariant) -> Result<ExactLog> {
    let support = system_support(polys)?;
    let norm = match variant {
        HeightVariant::H => NormVariant::Max,
        HeightVariant::H1 => NormVariant::Sum,
    };
    let mut acc = Rational::one();
    for v in support.iter() {
        acc *= system_norm(polys, *v, norm)?;
    }
    ExactLog::new(acc)
}

/// A nonempty list of nonzero homogeneous polynomials over common variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    polys: Vec<MultiPoly>,
    degrees: Vec<u32>,
}

impl PolySystem {
    pub fn new(polys: Vec<MultiPoly>) -> Result<PolySystem> {
        check_system(&polys)?;
        let nvars = polys[0].nvars();
        let mut degrees = Vec::with_capacity(polys.len());
        for p in &polys {
            if p.nvars() != nvars {
                return Err(Error::Precondition(
                    "system polynomials use different variable counts".into(),
                ));
            }
            let d = p.homogeneous_degree()?;
            if d == 0 {
                return Err(Error::Precondition(format!("{p} is constant")));
            }
            degrees.push(d);
        }
        Ok(PolySystem { polys, degrees })
    }

    pub fn parse(texts: &[impl AsRef<str>], nvars: usize) -> Result<PolySystem> {
        let polys = texts
            .iter()
            .map(|t| parse_poly(t.as_ref(), nvars))
            .collect::<Result<Vec<_>>>()?;
        PolySystem::new(polys)
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn nvars(&self) -> usize {
        self.polys[0].nvars()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Least common multiple of the degrees.
    pub fn degree_lcm(&self) -> u32 {
        self.degrees.iter().fold(1u32, |a, &d| a.lcm(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{int, rat};

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let f = p("2*x0^2 + 3*x1^2", 2);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial(vec![2, 0])), int(2));
        assert_eq!(f.coefficient(&Monomial(vec![0, 2])), int(3));
        assert!(matches!(parse_poly("x0 - x0", 1), Err(Error::Parse { .. })));
        let g = p("1/2*x0*x1", 2);
        assert_eq!(g.num_terms(), 1);
        assert_eq!(g.coefficient(&Monomial(vec![1, 1])), rat(1, 2));
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_poly("x0 + x5", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x0 + * x1", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("2x0", 1).is_err());
        assert!(parse_poly("(x0 + x1", 2).is_err());
        assert!(parse_poly("x0 / x1", 2).is_err());
    }

    #[test]
    fn parse_nested() {
        let f = p("(x0 - x1)^2 - (x0^2 - 2*x0*x1 + x1^2) + -(-x2)", 3);
        assert_eq!(f, MultiPoly::var(2, 3));
    }

    #[test]
    fn print_round_trip() {
        let f = p("2*x0^2 + 3*x1^2 - 1/2*x0*x2", 3);
        assert_eq!(f.to_string(), "2*x0^2 - 1/2*x0*x2 + 3*x1^2");
        assert_eq!(p(&f.to_string(), 3), f);
        assert_eq!(MultiPoly::one(2).to_string(), "1");
        assert_eq!(p("-x1 + 5", 2).to_string(), "-x1 + 5");
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            p("x0^2 + x1^2", 2).evaluate(&[int(3), int(4)]).unwrap(),
            int(25)
        );
        assert_eq!(
            p("x0*x2 - x1^2", 3)
                .evaluate(&[int(1), int(2), int(4)])
                .unwrap(),
            int(0)
        );
        assert_eq!(
            p("2*x0^2 + 3*x1^2", 2)
                .evaluate(&[rat(1, 2), rat(1, 3)])
                .unwrap(),
            rat(5, 6)
        );
        assert!(p("x0", 2).evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn homogeneity_examples() {
        assert_eq!(
            p("x0*x2 - x1^2", 3).homogeneity().unwrap(),
            Homogeneity::Degree(2)
        );
        assert_eq!(
            p("x0 + x1^2", 2).homogeneity().unwrap(),
            Homogeneity::NotHomogeneous
        );
        assert_eq!(p("x0^3", 1).homogeneity().unwrap(), Homogeneity::Degree(3));
    }

    #[test]
    fn norm_examples() {
        let f = p("2*x0^2 + 3*x1^2", 2);
        assert_eq!(
            system_norm(std::slice::from_ref(&f), Place::Prime(2), NormVariant::Max).unwrap(),
            int(1)
        );
        let one = MultiPoly::one(2);
        assert_eq!(
            system_norm(&[one, f], Place::Infinity, NormVariant::Sum).unwrap(),
            int(6)
        );
        assert_eq!(
            system_norm(&[p("x0 - x1", 2)], Place::Infinity, NormVariant::Max).unwrap(),
            int(1)
        );
        assert!(system_norm(&[], Place::Infinity, NormVariant::Max).is_err());
    }

    #[test]
    fn height_examples() {
        let f = p("2*x0^2 + 3*x1^2", 2);
        assert_eq!(
            system_height(std::slice::from_ref(&f), HeightVariant::H)
                .unwrap()
                .mult(),
            &int(3)
        );
        assert_eq!(
            system_height(&[p("x0 + x1", 2)], HeightVariant::H)
                .unwrap()
                .mult(),
            &int(1)
        );
        let one = MultiPoly::one(2);
        assert_eq!(
            system_height(&[one, f], HeightVariant::H1).unwrap().mult(),
            &int(6)
        );
    }

    #[test]
    fn remap_and_substitute() {
        let f = p("x0*x1 + x1^2", 2);
        let g = f.embed(4, 2);
        assert_eq!(g, p("x2*x3 + x3^2", 4));
        assert_eq!(f.substitute_const(1, &int(1)), p("x0 + 1", 2));
        assert_eq!(p("2*x0 - 4*x1", 2).primitive(), p("x0 - 2*x1", 2));
        assert_eq!(p("-1/2*x0 + 1/3*x1", 2).primitive(), p("3*x0 - 2*x1", 2));
        assert_eq!(p("5*x1^2/9 - x0", 2), p("5/9*x1^2 - x0", 2));
        assert!(parse_poly("x0/0", 1).is_err());
    }

    #[test]
    fn system_construction() {
        let s = PolySystem::parse(&["x0", "x1^2"], 2).unwrap();
        assert_eq!(s.degrees(), &[1, 2]);
        assert_eq!(s.degree_lcm(), 2);
        assert!(PolySystem::parse(&["x0 + x1^2"], 2).is_err());
        assert!(PolySystem::parse(&["1"], 2).is_err());
    }
}
