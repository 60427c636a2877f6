//! Explicit constants of the quantitative subspace theorem and the covering
//! set used to split an approximation problem into finitely many systems.
//!
//! Constants of the form `exp(P)·L` are kept as the exact rational exponent
//! `P` together with a small floating correction `log L`, so the identities
//! tying the constants together can be compared exactly where they are exact.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qarith::{format_rational, int, ln_rational, rational_pow, rational_to_f64, Rational};

/// Parameters of the theorem: dimension `n`, `m + 1` polynomials per place,
/// ambient `P^N`, `d = deg X`, `Δ = lcm` of the degrees, the distributive bound
/// `δ_X`, the margin `δ ∈ (0, 1)`, the field-degree bound `C`, `s = #S`, and
/// the height quantity `H`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProblemParams {
    pub n: u32,
    pub m: u32,
    #[serde(rename = "N")]
    pub big_n: u32,
    pub d: u64,
    #[serde(rename = "Delta")]
    pub delta_lcm: u64,
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta_x: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta: Rational,
    #[serde(rename = "C")]
    pub c: u64,
    pub s: u64,
    #[serde(rename = "H")]
    pub h: f64,
}

impl ProblemParams {
    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if self.n < 1 {
            bad.push("n ≥ 1".to_string());
        }
        if self.m < self.n {
            bad.push(format!("m = {} ≥ n = {}", self.m, self.n));
        }
        if !(self.delta.is_positive() && self.delta < Rational::one()) {
            bad.push(format!("0 < δ = {} < 1", format_rational(&self.delta)));
        }
        if self.delta_x < Rational::one() {
            bad.push(format!("δ_X = {} ≥ 1", format_rational(&self.delta_x)));
        }
        if self.d == 0 || self.delta_lcm == 0 || self.c == 0 || self.s == 0 {
            bad.push("d, Δ, C, s ≥ 1".to_string());
        }
        if !self.h.is_finite() || self.h < 0.0 {
            bad.push("H ≥ 0".to_string());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "invalid parameters: {}",
                bad.join(", ")
            )))
        }
    }

    /// `α(n+1) + 1`.
    fn kappa(&self) -> Rational {
        alpha(self) * int(self.n as i64 + 1) + int(1)
    }
}

/// `α = (m+1)δ_X / (n+δ_X)`.
pub fn alpha(p: &ProblemParams) -> Rational {
    int(p.m as i64 + 1) * &p.delta_x / (int(p.n as i64) + &p.delta_x)
}

/// `exact·log(arg) + offset` (or `exact + offset` when `arg` is absent).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LogQuantity {
    #[serde(with = "crate::qarith::serde_rational")]
    pub exact: Rational,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_rational"
    )]
    pub log_of: Option<Rational>,
    pub offset: f64,
    pub value: f64,
}

fn ser_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_rational(r)),
        None => s.serialize_none(),
    }
}

impl LogQuantity {
    fn linear(exact: Rational, offset: f64) -> LogQuantity {
        let value = rational_to_f64(&exact) + offset;
        LogQuantity {
            exact,
            log_of: None,
            offset,
            value,
        }
    }

    fn times_log(exact: Rational, arg: Rational) -> LogQuantity {
        let value = rational_to_f64(&exact) * ln_rational(&arg);
        LogQuantity {
            exact,
            log_of: Some(arg),
            offset: 0.0,
            value,
        }
    }
}

/// `log(log x · log log x)`, defined for `x > e`.
fn log_loglog(x: &Rational) -> f64 {
    let l = ln_rational(x);
    (l * l.ln()).ln()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundSet {
    #[serde(with = "crate::qarith::serde_rational")]
    pub alpha: Rational,
    #[serde(rename = "A2", with = "crate::qarith::serde_rational")]
    pub a2: Rational,
    #[serde(rename = "logA1")]
    pub log_a1: LogQuantity,
    #[serde(rename = "logA3")]
    pub log_a3: LogQuantity,
    #[serde(rename = "H")]
    pub h: f64,
}

/// `A_1, A_2, A_3` for the given parameters.
pub fn theorem_constants(p: &ProblemParams) -> Result<BoundSet> {
    p.validate()?;
    let n = p.n as i64;
    let kappa = p.kappa();
    let delta_inv = p.delta.recip();
    let d = int(p.d as i64);
    let big_delta = int(p.delta_lcm as i64);
    let a2 = int(8 * n + 6) * &kappa * &kappa * &d * rational_pow(&big_delta, n + 1) * &delta_inv;
    let exp1 = rational_pow(&int(2), 12 * n + 4)
        * rational_pow(&kappa, 4 * n)
        * rational_pow(&delta_inv, 2 * n)
        * rational_pow(&d, 2 * n + 2)
        * rational_pow(&big_delta, n * (2 * n + 2));
    let k = (p.m as u64 + 1) * p.s - 1;
    let big_x = 2.0 * std::f64::consts::E * rational_to_f64(&(&kappa * &delta_inv));
    let four_c = int(4 * p.c as i64);
    let offset1 =
        (4.0 * (p.m as f64 + 1.0) * p.s as f64).ln() + k as f64 * big_x.ln() + log_loglog(&four_c);
    Ok(BoundSet {
        alpha: alpha(p),
        a2,
        log_a1: LogQuantity::linear(exp1, offset1),
        log_a3: log_a3_for(p.n, p.m, p.d, p.delta_lcm, &kappa, &p.delta, p.c * p.s),
        h: p.h,
    })
}

/// `log A_3` in terms of `κ = α(n+1) + 1` and the product `Cs`.
pub fn log_a3_for(
    n: u32,
    m: u32,
    d: u64,
    delta_lcm: u64,
    kappa: &Rational,
    delta: &Rational,
    cs: u64,
) -> LogQuantity {
    let n = n as i64;
    let exp3 = rational_pow(&int(2), 6 * n + 8)
        * int(m as i64)
        * rational_pow(kappa, 2 * n + 2)
        * rational_pow(&delta.recip(), n + 1)
        * rational_pow(&int(d as i64), n + 2)
        * rational_pow(&int(delta_lcm as i64), n * (n + 2));
    LogQuantity::times_log(exp3, int(2 * cs as i64))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfConstants {
    #[serde(rename = "logB1")]
    pub log_b1: LogQuantity,
    #[serde(rename = "B2", with = "crate::qarith::serde_rational")]
    pub b2: Rational,
    #[serde(rename = "logB3")]
    pub log_b3: LogQuantity,
}

/// `B_1, B_2, B_3` for a variety of dimension `n` and degree `D` in `P^R`.
pub fn ef_constants(n: u32, big_d: u64, r: u64, delta: &Rational) -> Result<EfConstants> {
    if n < 1 || big_d < 1 || r < 1 {
        return Err(Error::Precondition("need n, D, R ≥ 1".into()));
    }
    if !delta.is_positive() || delta > &Rational::one() {
        return Err(Error::Precondition(format!(
            "need 0 < δ ≤ 1, got {}",
            format_rational(delta)
        )));
    }
    let n = n as i64;
    let dd = int(big_d as i64);
    let delta_inv = delta.recip();
    let four_r = int(4 * r as i64);
    let b2 = int(4 * n + 3) * &dd * &delta_inv;
    let exp1 = rational_pow(&int(2), 10 * n + 4)
        * rational_pow(&delta_inv, 2 * n)
        * rational_pow(&dd, 2 * n + 2);
    let exp3 = rational_pow(&int(2), 5 * n + 4)
        * rational_pow(&delta_inv, n + 1)
        * rational_pow(&dd, n + 2);
    Ok(EfConstants {
        log_b1: LogQuantity::linear(exp1, log_loglog(&four_r)),
        b2,
        log_b3: LogQuantity::times_log(exp3, four_r),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofIdentities {
    /// `δ / (2(α(n+1)+1)^2)`.
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta_prime: Rational,
    pub r: u64,
    #[serde(rename = "D")]
    pub big_d: u64,
    pub primed: EfConstants,
    #[serde(rename = "B2primeDelta", with = "crate::qarith::serde_rational")]
    pub b2_prime_delta: Rational,
    #[serde(rename = "A2", with = "crate::qarith::serde_rational")]
    pub a2: Rational,
    pub b2_identity: bool,
    /// `log T` with `T = ⌊(2e(α(n+1)+1)/δ)^{(m+1)s−1}⌋`.
    #[serde(rename = "logT")]
    pub log_t: f64,
    /// `T` itself when it fits in a double's exact range.
    #[serde(rename = "T")]
    pub t: Option<f64>,
    pub bracket_read_as_floor: bool,
    #[serde(rename = "logB1primePlusLogT")]
    pub lhs_b1: f64,
    #[serde(rename = "logA1")]
    pub log_a1: f64,
    /// The exponential parts of `B'_1` and `A_1` coincide exactly.
    pub exp_parts_equal: bool,
    pub b1_inequality: bool,
}

/// Substitutes `δ/(2(α(n+1)+1)^2)`, `C(m+1)s − 1`, `dΔ^n` for `δ, R, D` in the
/// `B_i` and checks `B'_2·Δ = A_2` and `B'_1·T ≤ A_1`.
pub fn check_proof_identities(p: &ProblemParams) -> Result<ProofIdentities> {
    let consts = theorem_constants(p)?;
    let kappa = p.kappa();
    let delta_prime = &p.delta / (int(2) * &kappa * &kappa);
    let r = p.c * (p.m as u64 + 1) * p.s - 1;
    let big_d = p.d * p.delta_lcm.pow(p.n);
    let primed = ef_constants(p.n, big_d, r, &delta_prime)?;
    let b2_prime_delta = &primed.b2 * int(p.delta_lcm as i64);
    let b2_identity = b2_prime_delta == consts.a2;
    if !b2_identity {
        return Err(Error::Assertion(format!(
            "B'_2·Δ = {} differs from A_2 = {}",
            format_rational(&b2_prime_delta),
            format_rational(&consts.a2)
        )));
    }
    let k = (p.m as u64 + 1) * p.s - 1;
    let ln_x = (2.0 * std::f64::consts::E * rational_to_f64(&(&kappa / &p.delta))).ln();
    let log_pow = k as f64 * ln_x;
    let (t, log_t) = if log_pow < 36.0 {
        let t = log_pow.exp().floor();
        (Some(t), t.ln())
    } else {
        // ⌊X^k⌋ ≤ X^k; the relative gap is below double precision here
        (None, log_pow)
    };
    let exp_parts_equal = primed.log_b1.exact == consts.log_a1.exact;
    if !exp_parts_equal {
        return Err(Error::Assertion(
            "exponential parts of B'_1 and A_1 differ".into(),
        ));
    }
    let lhs_b1 = primed.log_b1.offset + log_t;
    let rhs = consts.log_a1.offset;
    let b1_inequality = lhs_b1 <= rhs + 1e-12 * rhs.abs().max(1.0);
    if !b1_inequality {
        return Err(Error::Assertion(format!(
            "log B'_1 + log T exceeds log A_1 by {} beyond the common exponential part",
            lhs_b1 - rhs
        )));
    }
    Ok(ProofIdentities {
        delta_prime,
        r,
        big_d,
        b2_prime_delta,
        a2: consts.a2.clone(),
        b2_identity,
        log_t,
        t,
        bracket_read_as_floor: true,
        lhs_b1: rational_to_f64(&primed.log_b1.exact) + lhs_b1,
        log_a1: consts.log_a1.value,
        exp_parts_equal,
        b1_inequality,
        primed,
    })
}

/// The simplex grid `{k/M : k ∈ Z^q_{≥0}, Σk = M}` with `M = ⌈2q(1−θ)/θ⌉`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSet {
    q: usize,
    theta: Rational,
    grid: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoveringReport {
    pub q: usize,
    #[serde(with = "crate::qarith::serde_rational")]
    pub theta: Rational,
    #[serde(rename = "M")]
    pub grid: u64,
    pub cardinality: String,
    /// `(e/θ)^{q−1}`.
    pub paper_bound: f64,
    pub exceeds_paper_bound: bool,
}

impl CoveringSet {
    pub fn new(q: usize, theta: Rational) -> Result<CoveringSet> {
        if q < 2 {
            return Err(Error::Precondition("q ≥ 2".into()));
        }
        if !theta.is_positive() || theta > Rational::new(1.into(), 2.into()) {
            return Err(Error::Precondition(format!(
                "θ = {} must lie in (0, 1/2]",
                format_rational(&theta)
            )));
        }
        let m = (int(2 * q as i64) * (int(1) - &theta) / &theta)
            .ceil()
            .to_integer();
        let grid = m
            .to_u64()
            .ok_or_else(|| Error::Domain("grid size overflows".into()))?;
        Ok(CoveringSet { q, theta, grid })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn theta(&self) -> &Rational {
        &self.theta
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    /// `binom(M + q − 1, q − 1)`.
    pub fn cardinality(&self) -> BigUint {
        binomial(
            BigUint::from(self.grid + self.q as u64 - 1),
            BigUint::from(self.q as u64 - 1),
        )
    }

    pub fn report(&self) -> CoveringReport {
        let card = self.cardinality();
        let paper_bound =
            (std::f64::consts::E / rational_to_f64(&self.theta)).powi(self.q as i32 - 1);
        let card_f = card.to_f64().unwrap_or(f64::INFINITY);
        CoveringReport {
            q: self.q,
            theta: self.theta.clone(),
            grid: self.grid,
            cardinality: card.to_string(),
            paper_bound,
            exceeds_paper_bound: card_f > paper_bound,
        }
    }

    fn tuple(&self, k: &[u64]) -> Vec<Rational> {
        let m = BigInt::from(self.grid);
        k.iter()
            .map(|&x| Rational::new(BigInt::from(x), m.clone()))
            .collect()
    }

    /// All grid tuples in lexicographic order of their numerators.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<Rational>> + '_ {
        Compositions::new(self.grid, self.q).map(move |k| self.tuple(&k))
    }

    /// Whether `c` is a grid tuple.
    pub fn contains(&self, c: &[Rational]) -> bool {
        c.len() == self.q
            && c.iter()
                .all(|x| !x.is_negative() && (x * int(self.grid as i64)).is_integer())
            && c.iter().fold(Rational::zero(), |a, b| a + b) == Rational::one()
    }
}

/// Compositions of `total` into `parts` nonnegative parts, lexicographic.
struct Compositions {
    next: Option<Vec<u64>>,
    total: u64,
}

impl Compositions {
    fn new(total: u64, parts: usize) -> Compositions {
        let mut first = vec![0; parts];
        first[parts - 1] = total;
        Compositions {
            next: Some(first),
            total,
        }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;
    fn next(&mut self) -> Option<Vec<u64>> {
        let cur = self.next.take()?;
        let q = cur.len();
        // advance: find rightmost position i < q−1 that can be incremented
        let mut succ = cur.clone();
        let mut advanced = false;
        for i in (0..q - 1).rev() {
            let prefix: u64 = succ[..=i].iter().sum();
            if prefix < self.total {
                succ[i] += 1;
                for x in succ[i + 1..].iter_mut() {
                    *x = 0;
                }
                let used: u64 = succ[..q - 1].iter().sum();
                succ[q - 1] = self.total - used;
                advanced = true;
                break;
            }
        }
        if advanced {
            self.next = Some(succ);
        }
        Some(cur)
    }
}

fn certifies(c: &[Rational], a: &[Rational], lambda: &Rational, theta: &Rational) -> bool {
    let scale = (int(1) - theta) * lambda;
    c.iter().zip(a).all(|(cj, aj)| aj <= &-(cj * &scale))
}

/// A tuple `c ∈ W` with `A_j ≤ −c_j(1−θ)Λ` for all `j`, given `A_j ≤ 0` and
/// `Σ A_j ≤ −Λ < 0`.
pub fn covering_check(w: &CoveringSet, a: &[Rational], lambda: &Rational) -> Result<Vec<Rational>> {
    if a.len() != w.q {
        return Err(Error::Precondition(format!(
            "A has {} entries, expected {}",
            a.len(),
            w.q
        )));
    }
    if !lambda.is_positive() || a.iter().any(|x| x.is_positive()) {
        return Err(Error::Precondition("need Λ > 0 and A_j ≤ 0".into()));
    }
    let sum = a.iter().fold(Rational::zero(), |acc, x| acc + x);
    if sum > -lambda.clone() {
        return Err(Error::Precondition("need Σ A_j ≤ −Λ".into()));
    }
    let m = int(w.grid as i64);
    let b: Vec<Rational> = a.iter().map(|x| x / &sum).collect();
    let mut k: Vec<u64> = b
        .iter()
        .map(|bj| (bj * &m).floor().to_integer().to_u64().expect("≤ M"))
        .collect();
    let one_minus = int(1) - &w.theta;
    let caps: Vec<u64> = b
        .iter()
        .map(|bj| {
            ((bj * &m / &one_minus)
                .floor()
                .to_integer()
                .to_u64()
                .expect("finite"))
            .min(w.grid)
        })
        .collect();
    let mut total: u64 = k.iter().sum();
    for j in 0..w.q {
        if total >= w.grid {
            break;
        }
        let add = (caps[j] - k[j]).min(w.grid - total);
        k[j] += add;
        total += add;
    }
    if total == w.grid {
        let c = w.tuple(&k);
        if certifies(&c, a, lambda, &w.theta) {
            return Ok(c);
        }
    }
    w.tuples()
        .find(|c| certifies(c, a, lambda, &w.theta))
        .ok_or_else(|| Error::Assertion("covering set has no witness".into()))
}
