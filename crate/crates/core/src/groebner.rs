//! A small exact Gröbner engine over Q.
//!
//! Buchberger's algorithm with the Gebauer–Möller installation of the
//! product and chain criteria, normal pair selection, and a resource budget.
//! On top of it: projective dimension read off the leading-term ideal,
//! degree from the Hilbert series, colon ideals, saturation by the
//! irrelevant ideal, intersections and elimination.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyalg::{parse_poly_allow_zero, Monomial, MultiPoly, VarNames};
use crate::qarith::Rational;

/// Monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    GRevLex,
    Lex,
    /// Block order: the listed variables are compared first (graded reverse
    /// lex within the block), the rest afterwards. Any monomial involving a
    /// block variable is larger than every monomial free of them.
    Elimination(Vec<usize>),
}

impl TermOrder {
    /// Integer key whose lexicographic order is the term order. The key is
    /// linear in the exponent vector, so `key(a·b) = key(a) + key(b)`.
    fn key(&self, exp: &[u32]) -> Vec<i64> {
        match self {
            TermOrder::GRevLex => grevlex_key(exp.iter().copied().enumerate()),
            TermOrder::Lex => exp.iter().map(|&e| e as i64).collect(),
            TermOrder::Elimination(block) => {
                let in_block = |i: usize| block.contains(&i);
                let mut k = grevlex_key(
                    exp.iter()
                        .copied()
                        .enumerate()
                        .filter(|(i, _)| in_block(*i)),
                );
                k.extend(grevlex_key(
                    exp.iter()
                        .copied()
                        .enumerate()
                        .filter(|(i, _)| !in_block(*i)),
                ));
                k
            }
        }
    }
}

fn grevlex_key(exps: impl DoubleEndedIterator<Item = (usize, u32)> + Clone) -> Vec<i64> {
    let deg: i64 = exps.clone().map(|(_, e)| e as i64).sum();
    let mut k = vec![deg];
    k.extend(exps.rev().map(|(_, e)| -(e as i64)));
    k
}

/// Limits on a basis computation: processed S-pairs and the total degree of
/// any basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 200_000,
            max_degree: 64,
        }
    }
}

impl std::str::FromStr for Budget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Budget> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("budget `{s}` must be PAIRS,DEG"),
        };
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        Ok(Budget {
            max_pairs: a.trim().parse().map_err(|_| bad())?,
            max_degree: b.trim().parse().map_err(|_| bad())?,
        })
    }
}

// ---------------------------------------------------------------------------
// Internal sparse representation, terms sorted by descending key.

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    key: Vec<i64>,
    exp: Vec<u32>,
    coef: Rational,
}

type Poly = Vec<Term>;

fn to_internal(p: &MultiPoly, order: &TermOrder) -> Poly {
    let mut v: Poly = p
        .terms()
        .map(|(m, c)| Term {
            key: order.key(m.exponents()),
            exp: m.exponents().to_vec(),
            coef: c.clone(),
        })
        .collect();
    v.sort_by(|a, b| b.key.cmp(&a.key));
    v
}

fn to_multipoly(p: &[Term], nvars: usize) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        p.iter().map(|t| (Monomial(t.exp.clone()), t.coef.clone())),
    )
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a − c·x^shift·b`, assuming both inputs sorted descending.
fn sub_scaled(a: &[Term], c: &Rational, shift_exp: &[u32], shift_key: &[i64], b: &[Term]) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| Term {
        key: t.key.iter().zip(shift_key).map(|(x, y)| x + y).collect(),
        exp: t.exp.iter().zip(shift_exp).map(|(x, y)| x + y).collect(),
        coef: -(c * &t.coef),
    };
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.extend_from_slice(&a[i..]);
            break;
        }
        let tb = shifted(&b[j]);
        if i == a.len() {
            out.push(tb);
            j += 1;
            continue;
        }
        match a[i].key.cmp(&tb.key) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(tb);
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].coef + &tb.coef;
                if !s.is_zero() {
                    out.push(Term {
                        key: tb.key,
                        exp: tb.exp,
                        coef: s,
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn make_monic(p: &mut Poly) {
    if let Some(lc) = p.first().map(|t| t.coef.clone()) {
        if !lc.is_one() {
            let inv = lc.recip();
            for t in p.iter_mut() {
                t.coef *= &inv;
            }
        }
    }
}

/// Full normal form of `f` with respect to monic polynomials `basis`.
fn reduce_full(f: &[Term], basis: &[&Poly]) -> Poly {
    let mut rem: Poly = Vec::new();
    let mut p: Poly = f.to_vec();
    let mut start = 0;
    while start < p.len() {
        let lt = &p[start];
        let divisor = basis.iter().find(|g| divides(&g[0].exp, &lt.exp));
        match divisor {
            Some(g) => {
                let shift_exp = quotient(&lt.exp, &g[0].exp);
                let shift_key: Vec<i64> =
                    lt.key.iter().zip(&g[0].key).map(|(x, y)| x - y).collect();
                let c = lt.coef.clone();
                p = sub_scaled(&p[start + 1..], &c, &shift_exp, &shift_key, &g[1..]);
                start = 0;
            }
            None => {
                rem.push(lt.clone());
                start += 1;
            }
        }
    }
    rem
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Vec<u32>,
    deg: u32,
    key: Vec<i64>,
}

struct Engine<'a> {
    order: &'a TermOrder,
    budget: Budget,
    polys: Vec<Poly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    processed: usize,
}

impl<'a> Engine<'a> {
    fn active_polys(&self) -> Vec<&Poly> {
        self.active.iter().map(|&k| &self.polys[k]).collect()
    }

    fn insert(&mut self, mut h: Poly) -> Result<()> {
        make_monic(&mut h);
        let deg = h
            .iter()
            .map(|t| t.exp.iter().sum::<u32>())
            .max()
            .unwrap_or(0);
        if deg > self.budget.max_degree {
            return Err(Error::Budget(format!(
                "basis element of degree {deg} exceeds the degree cap {}",
                self.budget.max_degree
            )));
        }
        let hk = self.polys.len();
        let lh = h[0].exp.clone();
        self.polys.push(h);

        let mut c: Vec<(usize, Vec<u32>)> = self
            .active
            .iter()
            .map(|&g| (g, lcm(&lh, &self.polys[g][0].exp)))
            .collect();
        let mut d: Vec<(usize, Vec<u32>)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let keep = disjoint(&lh, &self.polys[g1][0].exp)
                || (!c.iter().any(|(_, l2)| divides(l2, &l1))
                    && !d.iter().any(|(_, l2)| divides(l2, &l1)));
            if keep {
                d.push((g1, l1));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(divides(&lh, &p.lcm)
                && lcm(&polys[p.i][0].exp, &lh) != p.lcm
                && lcm(&polys[p.j][0].exp, &lh) != p.lcm)
        });
        for (g, l) in d {
            if disjoint(&lh, &self.polys[g][0].exp) {
                continue;
            }
            let deg = l.iter().sum();
            let key = self.order.key(&l);
            self.pairs.push(Pair {
                i: g,
                j: hk,
                lcm: l,
                deg,
                key,
            });
        }
        let polys = &self.polys;
        self.active.retain(|&g| !divides(&lh, &polys[g][0].exp));
        self.active.push(hk);
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.deg.cmp(&b.deg).then_with(|| a.key.cmp(&b.key)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_poly(&self, p: &Pair) -> Poly {
        let f = &self.polys[p.i];
        let g = &self.polys[p.j];
        let sf = quotient(&p.lcm, &f[0].exp);
        let sg = quotient(&p.lcm, &g[0].exp);
        let kf = self.order.key(&sf);
        let kg = self.order.key(&sg);
        let left = sub_scaled(&[], &-Rational::one(), &sf, &kf, &f[1..]);
        sub_scaled(&left, &Rational::one(), &sg, &kg, &g[1..])
    }

    fn run(&mut self, input: Vec<Poly>) -> Result<()> {
        for f in input {
            let h = reduce_full(&f, &self.active_polys());
            if !h.is_empty() {
                self.insert(h)?;
            }
        }
        while let Some(pair) = self.next_pair() {
            self.processed += 1;
            if self.processed > self.budget.max_pairs {
                return Err(Error::Budget(format!(
                    "more than {} S-pairs processed",
                    self.budget.max_pairs
                )));
            }
            let s = self.s_poly(&pair);
            let h = reduce_full(&s, &self.active_polys());
            if !h.is_empty() {
                self.insert(h)?;
            }
        }
        Ok(())
    }

    fn reduced_basis(&self) -> Vec<Poly> {
        let mut g: Vec<Poly> = self.active.iter().map(|&k| self.polys[k].clone()).collect();
        g.sort_by(|a, b| a[0].key.cmp(&b[0].key));
        let mut out: Vec<Poly> = Vec::with_capacity(g.len());
        for k in 0..g.len() {
            let others: Vec<&Poly> = g
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p)
                .collect();
            let head = g[k][0].clone();
            let mut tail = reduce_full(&g[k][1..], &others);
            let mut p = vec![head];
            p.append(&mut tail);
            make_monic(&mut p);
            out.push(p);
        }
        out
    }
}

/// A reduced Gröbner basis together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: TermOrder,
    basis: Vec<MultiPoly>,
    internal: Vec<Poly>,
}

impl GroebnerBasis {
    fn from_internal(nvars: usize, order: TermOrder, polys: Vec<Poly>) -> GroebnerBasis {
        let basis = polys.iter().map(|p| to_multipoly(p, nvars)).collect();
        GroebnerBasis {
            nvars,
            order,
            basis,
            internal: polys,
        }
    }

    fn internal_polys(&self) -> Vec<Poly> {
        self.internal.clone()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by ascending leading monomial.
    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal
            .iter()
            .map(|p| Monomial(p[0].exp.clone()))
            .collect()
    }

    pub fn leading_monomial_of(&self, k: usize) -> Monomial {
        Monomial(self.internal[k][0].exp.clone())
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.internal
            .iter()
            .any(|p| p[0].exp.iter().all(|&e| e == 0))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.internal.is_empty()
    }

    /// Normal form of `f`.
    pub fn reduce(&self, f: &MultiPoly) -> MultiPoly {
        let polys = self.internal_polys();
        let refs: Vec<&Poly> = polys.iter().collect();
        to_multipoly(
            &reduce_full(&to_internal(f, &self.order), &refs),
            self.nvars,
        )
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal {
            nvars: self.nvars,
            gens: self.basis.clone(),
        }
    }
}

/// Reduced Gröbner basis of `gens` (which may be empty) in `nvars` variables.
pub fn groebner_of(
    nvars: usize,
    gens: &[MultiPoly],
    order: &TermOrder,
    budget: Budget,
) -> Result<GroebnerBasis> {
    let input: Vec<Poly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            assert_eq!(g.nvars(), nvars, "generator variable count mismatch");
            to_internal(g, order)
        })
        .collect();
    let mut engine = Engine {
        order,
        budget,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        processed: 0,
    };
    engine.run(input)?;
    let gb = GroebnerBasis::from_internal(nvars, order.clone(), engine.reduced_basis());
    for g in gens {
        if !gb.contains(g) {
            return Err(Error::Assertion(format!(
                "generator {g} does not reduce to zero"
            )));
        }
    }
    Ok(gb)
}

/// A polynomial ideal given by generators. An empty generator list is the
/// zero ideal (for example the ideal of all of `P^N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<MultiPoly>,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    vars: usize,
    gens: Vec<String>,
}

impl Ideal {
    pub fn new(nvars: usize, gens: Vec<MultiPoly>) -> Result<Ideal> {
        if nvars == 0 {
            return Err(Error::Precondition(
                "an ideal needs at least one variable".into(),
            ));
        }
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::Precondition(format!(
                    "generator {g} has {} variables, expected {nvars}",
                    g.nvars()
                )));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { nvars, gens })
    }

    pub fn zero(nvars: usize) -> Ideal {
        Ideal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Ideal {
        Ideal {
            nvars,
            gens: vec![MultiPoly::one(nvars)],
        }
    }

    pub fn parse(nvars: usize, gens: &[impl AsRef<str>]) -> Result<Ideal> {
        Ideal::parse_with(nvars, gens, &VarNames::X)
    }

    pub fn parse_with(nvars: usize, gens: &[impl AsRef<str>], names: &VarNames) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|g| parse_poly_allow_zero(g.as_ref(), nvars, names))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(nvars, polys)
    }

    pub fn from_json(text: &str) -> Result<Ideal> {
        let raw: IdealJson = serde_json::from_str(text)?;
        Ideal::parse(raw.vars, &raw.gens)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Ideal> {
        let raw: IdealJson = serde_json::from_value(v.clone())?;
        Ideal::parse(raw.vars, &raw.gens)
    }

    pub fn to_json_value_with(&self, names: &VarNames) -> serde_json::Value {
        serde_json::to_value(IdealJson {
            vars: self.nvars,
            gens: self.gens.iter().map(|g| g.to_string_with(names)).collect(),
        })
        .expect("ideal json")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        self.to_json_value_with(&VarNames::X)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.homogeneous_degree().is_ok())
    }

    fn require_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(Error::Precondition("ideal is not homogeneous".into()))
        }
    }

    /// `self + (extra)`.
    pub fn with(&self, extra: impl IntoIterator<Item = MultiPoly>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.into_iter().filter(|g| !g.is_zero()));
        Ideal {
            nvars: self.nvars,
            gens,
        }
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        self.with(other.gens.iter().cloned())
    }

    pub fn groebner(&self, order: &TermOrder, budget: Budget) -> Result<GroebnerBasis> {
        groebner_of(self.nvars, &self.gens, order, budget)
    }

    pub fn contains(&self, f: &MultiPoly, budget: Budget) -> Result<bool> {
        Ok(self.groebner(&TermOrder::GRevLex, budget)?.contains(f))
    }

    /// Same ideal, same reduced graded-reverse-lex basis.
    pub fn equals(&self, other: &Ideal, budget: Budget) -> Result<bool> {
        let a = self.groebner(&TermOrder::GRevLex, budget)?;
        let b = other.groebner(&TermOrder::GRevLex, budget)?;
        Ok(a.basis() == b.basis())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Reduced Gröbner basis of an ideal.
pub fn groebner_basis(ideal: &Ideal, order: &TermOrder, budget: Budget) -> Result<GroebnerBasis> {
    ideal.groebner(order, budget)
}

// ---------------------------------------------------------------------------
// Dimension and degree

/// Krull dimension of `k[x]/I` from the leading monomials of a Gröbner basis:
/// the largest set of variables containing the support of no leading
/// monomial. Returns −1 for the unit ideal.
pub fn krull_dimension_of_leading(nvars: usize, leading: &[Monomial]) -> i64 {
    let supports: Vec<u64> = leading
        .iter()
        .map(|m| {
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    if supports.contains(&0) {
        return -1;
    }
    fn search(k: usize, n: usize, chosen: u64, size: i64, supports: &[u64], best: &mut i64) {
        if size + (n - k) as i64 <= *best {
            return;
        }
        if k == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << k);
        if !supports.iter().any(|&s| s & !with == 0) {
            search(k + 1, n, with, size + 1, supports, best);
        }
        search(k + 1, n, chosen, size, supports, best);
    }
    assert!(
        nvars <= 63,
        "too many variables for the independent-set search"
    );
    let mut best = 0;
    search(0, nvars, 0, 0, &supports, &mut best);
    best
}

/// Dimension of the projective zero set of a homogeneous ideal; −1 when empty.
pub fn projective_dimension(ideal: &Ideal, budget: Budget) -> Result<i64> {
    ideal.require_homogeneous()?;
    let gb = ideal.groebner(&TermOrder::GRevLex, budget)?;
    Ok(projective_dimension_of(&gb))
}

/// Projective dimension from an existing basis of a homogeneous ideal.
pub fn projective_dimension_of(gb: &GroebnerBasis) -> i64 {
    (krull_dimension_of_leading(gb.nvars(), &gb.leading_monomials()) - 1).max(-1)
}

/// Polynomial in `t` with integer coefficients, lowest degree first.
type TPoly = Vec<i128>;

fn tpoly_sub_shifted(a: &TPoly, shift: usize, b: &TPoly) -> TPoly {
    let mut out = a.clone();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (k, c) in b.iter().enumerate() {
        out[k + shift] -= c;
    }
    out
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|m| m.iter().sum::<u32>());
    let mut out: Vec<Vec<u32>> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| divides(g, &m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1−t)^n` of `k[x]/M` for a
/// monomial ideal `M`.
fn hilbert_numerator(gens: &[Vec<u32>]) -> TPoly {
    let gens = minimalize(gens.to_vec());
    // pairwise coprime generators: N = Π (1 − t^{deg})
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| disjoint(a, b)));
    if coprime {
        let mut n: TPoly = vec![1];
        for g in &gens {
            let d = g.iter().sum::<u32>() as usize;
            n = tpoly_sub_shifted(&n, d, &n.clone());
        }
        return n;
    }
    let (last, rest) = gens.split_last().expect("nonempty when not coprime");
    let colon: Vec<Vec<u32>> = rest.iter().map(|g| quotient(&lcm(g, last), last)).collect();
    let d = last.iter().sum::<u32>() as usize;
    tpoly_sub_shifted(&hilbert_numerator(rest), d, &hilbert_numerator(&colon))
}

/// Hilbert-series data of a homogeneous ideal: Krull dimension and degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub krull_dimension: i64,
    pub degree: u64,
    pub numerator: Vec<i128>,
}

pub fn hilbert_data(ideal: &Ideal, budget: Budget) -> Result<HilbertData> {
    ideal.require_homogeneous()?;
    let gb = ideal.groebner(&TermOrder::GRevLex, budget)?;
    Ok(hilbert_data_of(&gb))
}

pub fn hilbert_data_of(gb: &GroebnerBasis) -> HilbertData {
    let lead: Vec<Vec<u32>> = gb.leading_monomials().into_iter().map(|m| m.0).collect();
    let numerator = hilbert_numerator(&lead);
    let mut h = numerator.clone();
    while h.last() == Some(&0) && h.len() > 1 {
        h.pop();
    }
    if h.iter().all(|&c| c == 0) {
        return HilbertData {
            krull_dimension: -1,
            degree: 0,
            numerator,
        };
    }
    // divide by (1 − t) while t = 1 is a root
    let mut k = 0usize;
    while h.iter().sum::<i128>() == 0 {
        let mut q = vec![0i128; h.len() - 1];
        let mut acc = 0i128;
        for (i, c) in h.iter().enumerate().take(h.len() - 1) {
            acc += c;
            q[i] = acc;
        }
        h = q;
        k += 1;
    }
    let krull = gb.nvars() as i64 - k as i64;
    let degree = h.iter().sum::<i128>();
    HilbertData {
        krull_dimension: krull,
        degree: degree as u64,
        numerator,
    }
}

/// Degree of the projective variety of a homogeneous ideal.
pub fn degree(ideal: &Ideal, budget: Budget) -> Result<u64> {
    let data = hilbert_data(ideal, budget)?;
    if data.krull_dimension <= 0 {
        return Err(Error::Precondition("degree of the empty variety".into()));
    }
    Ok(data.degree)
}

// ---------------------------------------------------------------------------
// Colon ideals, saturation, intersection, elimination

/// `I : x_i` for a homogeneous ideal, via a graded-reverse-lex basis in which
/// `x_i` is the smallest variable.
pub fn colon_variable(ideal: &Ideal, i: usize, budget: Budget) -> Result<Ideal> {
    ideal.require_homogeneous()?;
    let n = ideal.nvars();
    let last = n - 1;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, last);
    let permuted: Vec<MultiPoly> = ideal.gens().iter().map(|g| g.remap(n, &perm)).collect();
    let gb = groebner_of(n, &permuted, &TermOrder::GRevLex, budget)?;
    let mut out = Vec::new();
    for g in gb.basis() {
        let all_divisible = g.terms().all(|(m, _)| m.0[last] > 0);
        let g = if all_divisible {
            let mut e = vec![0u32; n];
            e[last] = 1;
            MultiPoly::from_terms(
                n,
                g.terms()
                    .map(|(m, c)| (Monomial(quotient(&m.0, &e)), c.clone())),
            )
        } else {
            g.clone()
        };
        out.push(g.remap(n, &perm));
    }
    Ideal::new(n, out)
}

/// Intersection of two ideals: eliminate `t` from `t·I + (1 − t)·J`.
pub fn intersect(a: &Ideal, b: &Ideal, budget: Budget) -> Result<Ideal> {
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    let n = a.nvars();
    let t = MultiPoly::var(n, n + 1);
    let one_minus_t = &MultiPoly::one(n + 1) - &t;
    let mut gens = Vec::new();
    for g in a.gens() {
        gens.push(&g.embed(n + 1, 0) * &t);
    }
    for g in b.gens() {
        gens.push(&g.embed(n + 1, 0) * &one_minus_t);
    }
    let gb = groebner_of(n + 1, &gens, &TermOrder::Elimination(vec![n]), budget)?;
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| m.0[n] == 0))
        .map(|g| g.truncate_vars(n))
        .collect();
    Ideal::new(n, kept)
}

/// `I : (x_0, …, x_N)`.
pub fn colon_irrelevant(ideal: &Ideal, budget: Budget) -> Result<Ideal> {
    let mut acc = colon_variable(ideal, 0, budget)?;
    for i in 1..ideal.nvars() {
        let next = colon_variable(ideal, i, budget)?;
        acc = intersect(&acc, &next, budget)?;
    }
    Ok(acc)
}

/// `I : (x_0, …, x_N)^∞` by iterated colon ideals until stable.
pub fn saturate_irrelevant(ideal: &Ideal, budget: Budget) -> Result<Ideal> {
    ideal.require_homogeneous()?;
    let mut current = ideal.groebner(&TermOrder::GRevLex, budget)?;
    loop {
        if current.is_unit() {
            return Ok(Ideal::unit(ideal.nvars()));
        }
        let next = colon_irrelevant(&current.ideal(), budget)?;
        let next_gb = next.groebner(&TermOrder::GRevLex, budget)?;
        if next_gb.basis() == current.basis() {
            return Ok(next_gb.ideal());
        }
        current = next_gb;
    }
}

/// Generators of `I ∩ k[variables not in drop]`, still written in the full
/// variable set.
pub fn eliminate(ideal: &Ideal, drop: &[usize], budget: Budget) -> Result<Ideal> {
    if drop.is_empty() {
        return Ok(ideal.groebner(&TermOrder::GRevLex, budget)?.ideal());
    }
    let gb = ideal.groebner(&TermOrder::Elimination(drop.to_vec()), budget)?;
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| drop.iter().all(|&d| m.0[d] == 0)))
        .cloned()
        .collect();
    Ideal::new(ideal.nvars(), kept)
}

/// True iff the projective zero set of a homogeneous ideal is empty.
pub fn is_projectively_empty(ideal: &Ideal, budget: Budget) -> Result<bool> {
    Ok(projective_dimension(ideal, budget)? == -1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::parse(n, gens).unwrap()
    }

    fn b() -> Budget {
        Budget::default()
    }

    fn strs(gb: &GroebnerBasis) -> Vec<String> {
        gb.basis().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn basis_examples() {
        let gb = ideal(3, &["x0", "x1"])
            .groebner(&TermOrder::GRevLex, b())
            .unwrap();
        assert_eq!(strs(&gb), vec!["x1", "x0"]);
        let gb = ideal(3, &["x0*x2 - x1^2"])
            .groebner(&TermOrder::GRevLex, b())
            .unwrap();
        assert_eq!(strs(&gb), vec!["-x0*x2 + x1^2"]);
        let gb = ideal(2, &["x0 + x1", "x0 - x1"])
            .groebner(&TermOrder::GRevLex, b())
            .unwrap();
        assert_eq!(strs(&gb), vec!["x1", "x0"]);
    }

    #[test]
    fn twisted_cubic_basis_is_itself() {
        let i = ideal(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        let gb = i.groebner(&TermOrder::GRevLex, b()).unwrap();
        assert_eq!(gb.basis().len(), 3);
        for g in i.gens() {
            assert!(gb.contains(g));
        }
    }

    #[test]
    fn lex_basis_triangularizes() {
        // x0^2 + x1^2 - 1, x0 - x1 in lex: x0 - x1, 2x1^2 - 1
        let i = ideal(2, &["x0^2 + x1^2 - 1", "x0 - x1"]);
        let gb = i.groebner(&TermOrder::Lex, b()).unwrap();
        assert_eq!(strs(&gb), vec!["x1^2 - 1/2", "x0 - x1"]);
    }

    #[test]
    fn budget_is_enforced() {
        let i = ideal(
            3,
            &[
                "x0^2*x1 - x2^3 + 1",
                "x0*x1^2 - x0*x2 - 2",
                "x1^3 + x0^2 - x2",
            ],
        );
        let tight = Budget {
            max_pairs: 1,
            max_degree: 64,
        };
        assert!(matches!(
            i.groebner(&TermOrder::GRevLex, tight),
            Err(Error::Budget(_))
        ));
        let low_deg = Budget {
            max_pairs: 1000,
            max_degree: 2,
        };
        assert!(matches!(
            i.groebner(&TermOrder::GRevLex, low_deg),
            Err(Error::Budget(_))
        ));
        assert_eq!(
            "10,4".parse::<Budget>().unwrap(),
            Budget {
                max_pairs: 10,
                max_degree: 4
            }
        );
        assert!("10".parse::<Budget>().is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(
            projective_dimension(&ideal(3, &["x0", "x1"]), b()).unwrap(),
            0
        );
        assert_eq!(
            projective_dimension(&ideal(3, &["x0*x2 - x1^2"]), b()).unwrap(),
            1
        );
        assert_eq!(
            projective_dimension(&ideal(3, &["x0", "x1", "x2"]), b()).unwrap(),
            -1
        );
        assert_eq!(projective_dimension(&Ideal::zero(4), b()).unwrap(), 3);
        assert_eq!(projective_dimension(&Ideal::unit(2), b()).unwrap(), -1);
        assert!(projective_dimension(&ideal(2, &["x0 + 1"]), b()).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&ideal(3, &["x0*x2 - x1^2"]), b()).unwrap(), 2);
        assert_eq!(degree(&ideal(3, &["x0"]), b()).unwrap(), 1);
        let cubic = ideal(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        assert_eq!(degree(&cubic, b()).unwrap(), 3);
        assert_eq!(degree(&ideal(3, &["x0^3 + x1^3 + x2^3"]), b()).unwrap(), 3);
        assert_eq!(degree(&Ideal::zero(3), b()).unwrap(), 1);
        // two points (x0 (x0 - x1)) in P^1 and an embedded component
        assert_eq!(degree(&ideal(2, &["x0^2 - x0*x1"]), b()).unwrap(), 2);
        assert!(degree(&ideal(3, &["x0", "x1", "x2"]), b()).is_err());
    }

    #[test]
    fn hilbert_polynomial_of_twisted_cubic() {
        // H(t) = 3t + 1: numerator 1 + 2t over (1 - t)^2 after cancellation
        let cubic = ideal(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        let data = hilbert_data(&cubic, b()).unwrap();
        assert_eq!(data.krull_dimension, 2);
        assert_eq!(data.degree, 3);
    }

    #[test]
    fn saturation_examples() {
        let sat = saturate_irrelevant(&ideal(2, &["x0^2", "x0*x1"]), b()).unwrap();
        assert!(sat.equals(&ideal(2, &["x0"]), b()).unwrap());
        let sat = saturate_irrelevant(&ideal(2, &["x0"]), b()).unwrap();
        assert!(sat.equals(&ideal(2, &["x0"]), b()).unwrap());
        let sat = saturate_irrelevant(&ideal(3, &["x0", "x1", "x2"]), b()).unwrap();
        assert!(sat.equals(&Ideal::unit(3), b()).unwrap());
        let again = saturate_irrelevant(&sat, b()).unwrap();
        assert!(again.equals(&sat, b()).unwrap());
    }

    #[test]
    fn colon_and_intersection() {
        let i = ideal(2, &["x0^2", "x0*x1"]);
        assert!(colon_variable(&i, 0, b())
            .unwrap()
            .equals(&ideal(2, &["x0", "x1"]), b())
            .unwrap());
        assert!(colon_variable(&i, 1, b())
            .unwrap()
            .equals(&ideal(2, &["x0"]), b())
            .unwrap());
        let meet = intersect(&ideal(2, &["x0"]), &ideal(2, &["x1"]), b()).unwrap();
        assert!(meet.equals(&ideal(2, &["x0*x1"]), b()).unwrap());
    }

    #[test]
    fn elimination_examples() {
        // Chow form of the point (1:2): variables x0, x1, u00, u01
        let i = ideal(4, &["2*x0 - x1", "x2*x0 + x3*x1", "x0 - 1"]);
        let e = eliminate(&i, &[0, 1], b()).unwrap();
        assert_eq!(e.gens().len(), 1);
        assert_eq!(e.gens()[0], parse_poly("x2 + 2*x3", 4).unwrap());
        let e = eliminate(&ideal(1, &["x0"]), &[0], b()).unwrap();
        assert!(e.gens().is_empty());
        let e = eliminate(&ideal(3, &["x0 - x1", "x1 - x2"]), &[1], b()).unwrap();
        assert_eq!(e.gens(), &[parse_poly("x0 - x2", 3).unwrap()]);
        let i = ideal(3, &["x0*x2 - x1^2"]);
        assert!(eliminate(&i, &[], b()).unwrap().equals(&i, b()).unwrap());
    }

    #[test]
    fn emptiness_examples() {
        assert!(is_projectively_empty(&ideal(3, &["x0", "x1", "x2"]), b()).unwrap());
        assert!(!is_projectively_empty(&ideal(3, &["x0*x2 - x1^2", "x0"]), b()).unwrap());
        assert!(is_projectively_empty(&ideal(2, &["x0", "x1", "x0 + x1"]), b()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let i = Ideal::from_json(r#"{"vars": 3, "gens": ["x0*x2 - x1^2"]}"#).unwrap();
        assert_eq!(i.nvars(), 3);
        let back = Ideal::from_json_value(&i.to_json_value()).unwrap();
        assert_eq!(back, i);
        let whole = Ideal::from_json(r#"{"vars": 2, "gens": []}"#).unwrap();
        assert!(whole.gens().is_empty());
    }
}
