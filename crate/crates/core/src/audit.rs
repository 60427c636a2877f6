//! Rational point enumeration, the approximation-inequality audit, and the
//! regression check of the height inequalities used in the proof of the main
//! theorem.

use std::collections::BTreeMap;
use std::io::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{log_a3_for, LogQuantity};
use crate::chow::{chow_form, chow_weight_aggregate, image_variety, ImageVariety};
use crate::error::{Error, Result};
use crate::geometry::{distributive_constant, DivisorFamily};
use crate::groebner::{degree, is_projectively_empty, projective_dimension, Budget, Ideal};
use crate::heights::{approx_sum, proj_height, ProjPoint, WeightAssignment};
use crate::polyalg::{parse_poly, system_height, HeightVariant, MultiPoly, PolySystem};
use crate::qarith::{
    format_rational, int, ln_rational, parse_rational, rational_pow, rational_to_f64, valuation,
    Place, PlaceSet, Rational,
};

/// Points of `P^N(Q)` with multiplicative height at most `bound`, optionally
/// restricted to the zero set of `x`.
///
/// Coordinates run over the box `[-bound, bound]^{N+1}` in lexicographic
/// order; a tuple is kept when it is primitive and its first nonzero entry is
/// positive, so every point appears once, in canonical form.
pub fn enumerate_points(big_n: usize, bound: u64, x: Option<&Ideal>) -> Result<PointStream> {
    Ok(PointStream {
        raw: RawPoints::new(big_n, bound, x)?,
    })
}

pub struct PointStream {
    raw: RawPoints,
}

impl Iterator for PointStream {
    type Item = ProjPoint;

    fn next(&mut self) -> Option<ProjPoint> {
        self.raw
            .next()
            .map(|v| ProjPoint::from_i64(&v).expect("nonzero tuple"))
    }
}

/// Canonical primitive integer tuples, before conversion to points.
struct RawPoints {
    cur: Option<Vec<i64>>,
    bound: i64,
    filter: Vec<IntPoly>,
}

impl RawPoints {
    fn new(big_n: usize, bound: u64, x: Option<&Ideal>) -> Result<RawPoints> {
        if bound < 1 {
            return Err(Error::Precondition(
                "height bound must be at least 1".into(),
            ));
        }
        let b = i64::try_from(bound).map_err(|_| Error::Domain("height bound too large".into()))?;
        let mut filter = Vec::new();
        if let Some(x) = x {
            if x.nvars() != big_n + 1 {
                return Err(Error::Precondition(format!(
                    "X lives in {} variables, expected {}",
                    x.nvars(),
                    big_n + 1
                )));
            }
            filter = x.gens().iter().map(IntPoly::new).collect();
        }
        Ok(RawPoints {
            cur: Some(vec![-b; big_n + 1]),
            bound: b,
            filter,
        })
    }

    fn advance(&mut self) -> Option<Vec<i64>> {
        let cur = self.cur.take()?;
        let mut next = cur.clone();
        for k in (0..next.len()).rev() {
            if next[k] < self.bound {
                next[k] += 1;
                self.cur = Some(next);
                break;
            }
            next[k] = -self.bound;
        }
        Some(cur)
    }
}

fn is_canonical_primitive(v: &[i64]) -> bool {
    match v.iter().find(|&&c| c != 0) {
        Some(&first) if first > 0 => v.iter().fold(0i64, |g, &c| g.gcd(&c)) == 1,
        _ => false,
    }
}

impl Iterator for RawPoints {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            let v = self.advance()?;
            if is_canonical_primitive(&v) && self.filter.iter().all(|g| g.vanishes_at(&v)) {
                return Some(v);
            }
        }
    }
}

/// A polynomial evaluated at small integer points, in `i128` when its
/// coefficients are integers and the arithmetic does not overflow, exactly
/// otherwise.
struct IntPoly {
    poly: MultiPoly,
    terms: Option<Vec<(Vec<u32>, i128)>>,
}

impl IntPoly {
    fn new(f: &MultiPoly) -> IntPoly {
        let terms = f
            .terms()
            .map(|(m, c)| {
                if c.is_integer() {
                    c.to_integer()
                        .to_i128()
                        .map(|c| (m.exponents().to_vec(), c))
                } else {
                    None
                }
            })
            .collect();
        IntPoly {
            poly: f.clone(),
            terms,
        }
    }

    fn eval_i128(&self, v: &[i64]) -> Option<i128> {
        let mut acc = 0i128;
        for (exps, c) in self.terms.as_ref()? {
            let mut t = *c;
            for (&x, &e) in v.iter().zip(exps) {
                for _ in 0..e {
                    t = t.checked_mul(x as i128)?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn eval(&self, v: &[i64]) -> Rational {
        match self.eval_i128(v) {
            Some(x) => Rational::from_integer(BigInt::from(x)),
            None => {
                let coords: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
                self.poly
                    .evaluate_int(&coords)
                    .expect("matching variable count")
            }
        }
    }

    fn vanishes_at(&self, v: &[i64]) -> bool {
        self.eval(v).is_zero()
    }
}

/// A validated audit configuration.
#[derive(Clone, Debug)]
pub struct AuditConfig {
    pub x: Ideal,
    pub system: PolySystem,
    pub places: PlaceSet,
    /// `α(n+1)`.
    pub exponent: Rational,
    pub delta: Rational,
    pub height_bound: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAuditConfig {
    #[serde(rename = "X")]
    x: Option<serde_json::Value>,
    vars: Option<usize>,
    system: Vec<String>,
    #[serde(rename = "S")]
    places: Vec<Place>,
    exponent: String,
    delta: String,
    #[serde(rename = "heightBound")]
    height_bound: u64,
}

impl AuditConfig {
    pub fn new(
        x: Ideal,
        system: PolySystem,
        places: Vec<Place>,
        exponent: Rational,
        delta: Rational,
        height_bound: u64,
        budget: Budget,
    ) -> Result<AuditConfig> {
        let places = PlaceSet::new(places)?;
        let mut bad = Vec::new();
        if !exponent.is_positive() {
            bad.push(format!(
                "exponent {} must be positive",
                format_rational(&exponent)
            ));
        }
        if !delta.is_positive() {
            bad.push(format!("δ = {} must be positive", format_rational(&delta)));
        }
        if height_bound < 1 {
            bad.push("height bound must be at least 1".to_string());
        }
        if system.nvars() != x.nvars() {
            bad.push("system and X use different variable counts".to_string());
        }
        if !bad.is_empty() {
            return Err(Error::Precondition(bad.join("; ")));
        }
        check_system_on_x(&x, &system, budget)?;
        Ok(AuditConfig {
            x,
            system,
            places,
            exponent,
            delta,
            height_bound,
        })
    }

    /// Parses the JSON form
    /// `{"X": ideal?, "vars": N+1?, "system": [..], "S": ["inf", "2"],
    ///   "exponent": "2", "delta": "1/2", "heightBound": 1000}`.
    pub fn from_json(text: &str, budget: Budget) -> Result<AuditConfig> {
        let raw: RawAuditConfig = serde_json::from_str(text)?;
        let x = match (&raw.x, raw.vars) {
            (Some(v), _) => Ideal::from_json_value(v)?,
            (None, Some(n)) => Ideal::zero(n),
            (None, None) => return Err(Error::Precondition("config needs `X` or `vars`".into())),
        };
        let polys = raw
            .system
            .iter()
            .map(|t| parse_poly(t, x.nvars()))
            .collect::<Result<Vec<_>>>()?;
        AuditConfig::new(
            x,
            PolySystem::new(polys)?,
            raw.places,
            parse_rational(&raw.exponent)?,
            parse_rational(&raw.delta)?,
            raw.height_bound,
            budget,
        )
    }

    pub fn threshold(&self) -> Rational {
        &self.exponent + &self.delta
    }
}

/// Checks that no `f_j` vanishes on `X` and that the `f_j` have no common zero
/// on `X`.
pub fn check_system_on_x(x: &Ideal, system: &PolySystem, budget: Budget) -> Result<()> {
    let dim = projective_dimension(x, budget)?;
    if dim < 0 {
        return Err(Error::Precondition("X is empty".into()));
    }
    let mut failures = Vec::new();
    for f in system.polys() {
        if projective_dimension(&x.with([f.clone()]), budget)? >= dim {
            failures.push(format!("X lies in the zero set of {f}"));
        }
    }
    if !is_projectively_empty(&x.with(system.polys().iter().cloned()), budget)? {
        failures.push("the system has a common zero on X".to_string());
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Hypothesis(failures))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub point: ProjPoint,
    pub h: f64,
    pub lhs: f64,
    /// `lhs / h`; absent at height zero.
    pub ratio: Option<f64>,
    pub flagged: bool,
}

impl AuditRow {
    pub fn csv_line(&self) -> String {
        let ratio = self.ratio.map(|r| r.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{}",
            self.point, self.h, self.lhs, ratio, self.flagged
        )
    }
}

pub const CSV_HEADER: &str = "point,h,lhs,ratio,flagged";

/// The predicate `lhs ≤ −t·h` with `h > 0`, decided in multiplicative form:
/// with `Δ·lhs = log E` and `h = log H`, it reads `E^q · H^{pΔ} ≤ 1` for
/// `t = p/q`.
pub fn exact_flag(
    exact_scaled: &Rational,
    height: &Rational,
    threshold: &Rational,
    delta_lcm: u32,
) -> bool {
    if height <= &Rational::one() {
        return false;
    }
    let p = threshold
        .numer()
        .to_i64()
        .expect("threshold numerator fits in i64");
    let q = threshold
        .denom()
        .to_i64()
        .expect("threshold denominator fits in i64");
    rational_pow(exact_scaled, q) * rational_pow(height, p * delta_lcm as i64) <= Rational::one()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditSummary {
    pub points: u64,
    pub evaluated: u64,
    pub on_divisors: Vec<ProjPoint>,
    pub flagged: Vec<AuditRow>,
    /// Rows near the threshold whose float flag was settled by the exact test.
    pub exact_rechecks: u64,
    pub max_ratio: Option<f64>,
    pub max_ratio_point: Option<ProjPoint>,
    pub min_ratio: Option<f64>,
    pub min_ratio_point: Option<ProjPoint>,
    #[serde(with = "crate::qarith::serde_rational")]
    pub threshold: Rational,
    /// `log(A_3·H)`, reported rather than enforced.
    pub log_height_floor: Option<f64>,
    pub height_floor_note: Option<String>,
}

const CHUNK: usize = 1 << 14;

fn ln_abs_at(x: &Rational, v: Place) -> f64 {
    match v {
        Place::Infinity => ln_rational(&x.abs()),
        Place::Prime(p) => -(valuation(x, p) as f64) * (p as f64).ln(),
    }
}

struct Evaluator<'a> {
    cfg: &'a AuditConfig,
    polys: Vec<IntPoly>,
    threshold: Rational,
    thr: f64,
}

enum Outcome {
    OnDivisor,
    Row {
        h: f64,
        lhs: f64,
        flagged: bool,
        near: bool,
    },
}

impl Evaluator<'_> {
    fn new(cfg: &AuditConfig) -> Evaluator<'_> {
        let threshold = cfg.threshold();
        Evaluator {
            cfg,
            polys: cfg.system.polys().iter().map(IntPoly::new).collect(),
            thr: rational_to_f64(&threshold),
            threshold,
        }
    }

    /// Float pass on primitive integer coordinates, where `‖P‖_p = 1` at every
    /// prime and `‖P‖_∞ = max |x_i|`; rows close to the threshold are settled
    /// by the exact test.
    fn run(&self, v: &[i64]) -> Result<Outcome> {
        let height = v.iter().map(|x| x.unsigned_abs()).max().expect("nonempty") as f64;
        let h = height.ln();
        let mut lhs = 0.0;
        for (f, &d) in self.polys.iter().zip(self.cfg.system.degrees()) {
            let val = f.eval(v);
            if val.is_zero() {
                return Ok(Outcome::OnDivisor);
            }
            let mut s = 0.0;
            for place in self.cfg.places.iter() {
                s += ln_abs_at(&val, *place);
            }
            lhs += s / d as f64;
        }
        if self.cfg.places.contains(&Place::Infinity) {
            lhs -= self.cfg.system.len() as f64 * h;
        }
        let near = h > 0.0 && lhs <= -self.thr * h + 1e-9 * (self.thr * h).abs().max(1.0);
        let flagged = if near {
            let p = ProjPoint::from_i64(v)?;
            let sum = approx_sum(&self.cfg.system, &self.cfg.places, &p)?;
            exact_flag(
                &sum.exact_scaled,
                proj_height(&p).mult(),
                &self.threshold,
                sum.delta,
            )
        } else {
            false
        };
        Ok(Outcome::Row {
            h,
            lhs,
            flagged,
            near,
        })
    }
}

fn format_point(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(":"))
}

/// Audits every point of height at most the bound on `X`, writing CSV rows to
/// `sink` in enumeration order.
pub fn audit(cfg: &AuditConfig, sink: &mut dyn Write, budget: Budget) -> Result<AuditSummary> {
    let big_n = cfg.x.nvars() - 1;
    let x_filter = if cfg.x.gens().is_empty() {
        None
    } else {
        Some(&cfg.x)
    };
    let mut stream = RawPoints::new(big_n, cfg.height_bound, x_filter)?;
    let eval = Evaluator::new(cfg);
    let mut summary = AuditSummary {
        points: 0,
        evaluated: 0,
        on_divisors: Vec::new(),
        flagged: Vec::new(),
        exact_rechecks: 0,
        max_ratio: None,
        max_ratio_point: None,
        min_ratio: None,
        min_ratio_point: None,
        threshold: cfg.threshold(),
        log_height_floor: None,
        height_floor_note: None,
    };
    match height_floor(cfg, budget) {
        Ok(v) => summary.log_height_floor = Some(v),
        Err(e) => summary.height_floor_note = Some(e.to_string()),
    }
    writeln!(sink, "{CSV_HEADER}")?;
    let point = |v: &[i64]| ProjPoint::from_i64(v).expect("nonzero tuple");
    loop {
        let chunk: Vec<Vec<i64>> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let outcomes = chunk
            .par_iter()
            .map(|v| eval.run(v))
            .collect::<Result<Vec<_>>>()?;
        for (v, outcome) in chunk.iter().zip(outcomes) {
            summary.points += 1;
            let Outcome::Row {
                h,
                lhs,
                flagged,
                near,
            } = outcome
            else {
                summary.on_divisors.push(point(v));
                continue;
            };
            summary.evaluated += 1;
            if near {
                summary.exact_rechecks += 1;
            }
            let ratio = (h > 0.0).then(|| lhs / h);
            let ratio_text = ratio.map(|r| r.to_string()).unwrap_or_default();
            writeln!(
                sink,
                "{},{},{},{},{}",
                format_point(v),
                h,
                lhs,
                ratio_text,
                flagged
            )?;
            if let Some(r) = ratio {
                if summary.max_ratio.is_none_or(|m| r > m) {
                    summary.max_ratio = Some(r);
                    summary.max_ratio_point = Some(point(v));
                }
                if summary.min_ratio.is_none_or(|m| r < m) {
                    summary.min_ratio = Some(r);
                    summary.min_ratio_point = Some(point(v));
                }
            }
            if flagged {
                summary.flagged.push(AuditRow {
                    point: point(v),
                    h,
                    lhs,
                    ratio,
                    flagged,
                });
            }
        }
    }
    Ok(summary)
}

/// `H = log(N+m) + h(X) + max_i h(1, f_i)` with `h(X)` the height of the
/// Chow form.
pub fn height_quantity(x: &Ideal, system: &PolySystem, budget: Budget) -> Result<f64> {
    let n = projective_dimension(x, budget)?;
    if n < 1 {
        return Err(Error::Precondition("X must have positive dimension".into()));
    }
    let form = chow_form(x, n as usize, budget)?;
    let hx = system_height(std::slice::from_ref(form.poly()), HeightVariant::H)?.ln();
    let one = MultiPoly::one(x.nvars());
    let mut hf = 0.0f64;
    for f in system.polys() {
        hf = hf.max(system_height(&[one.clone(), f.clone()], HeightVariant::H)?.ln());
    }
    let big_n = x.nvars() - 1;
    let m = system.len() - 1;
    Ok(((big_n + m) as f64).ln() + hx + hf)
}

fn height_floor(cfg: &AuditConfig, budget: Budget) -> Result<f64> {
    let n = projective_dimension(&cfg.x, budget)?;
    if n < 1 {
        return Err(Error::Precondition("X must have positive dimension".into()));
    }
    let d = degree(&cfg.x, budget)?;
    let delta_ok = cfg.delta < Rational::one();
    if !delta_ok {
        return Err(Error::Precondition("the height floor needs δ < 1".into()));
    }
    let kappa = &cfg.exponent + int(1);
    let m = cfg.system.len() as u32 - 1;
    let a3: LogQuantity = log_a3_for(
        n as u32,
        m,
        d,
        cfg.system.degree_lcm() as u64,
        &kappa,
        &cfg.delta,
        cfg.places.len() as u64,
    );
    Ok(a3.value + height_quantity(&cfg.x, &cfg.system, budget)?.ln())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightSample {
    pub weights: BTreeMap<Place, Vec<String>>,
    #[serde(with = "crate::qarith::serde_rational")]
    pub e_y: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofReport {
    pub n: usize,
    pub m: usize,
    pub d: u64,
    #[serde(rename = "Delta")]
    pub delta_lcm: u32,
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta_x: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub alpha: Rational,
    pub g: Vec<String>,
    pub image: ImageVariety,
    pub image_bound_holds: bool,
    #[serde(rename = "H")]
    pub h: f64,
    pub h1_g: f64,
    pub h_y: f64,
    pub checks: Vec<InequalityCheck>,
    /// `1/(α(n+1))`.
    #[serde(with = "crate::qarith::serde_rational")]
    pub e_bound: Rational,
    pub samples: Vec<WeightSample>,
    pub all_hold: bool,
}

/// Random weights `k/M` over `(v, i) ∈ S × {0..R}` with total exactly 1.
fn sample_weights(
    rng: &mut ChaCha8Rng,
    places: &PlaceSet,
    width: usize,
) -> BTreeMap<Place, Vec<Rational>> {
    const GRID: u64 = 60;
    let slots = places.len() * width;
    let mut counts = vec![0u64; slots];
    let active = rng.gen_range(1..=slots);
    for _ in 0..GRID {
        counts[rng.gen_range(0..active)] += 1;
    }
    // spread the active slots over random positions
    for i in (1..slots).rev() {
        let j = rng.gen_range(0..=i);
        counts.swap(i, j);
    }
    let grid = BigInt::from(GRID);
    places
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let c = counts[k * width..(k + 1) * width]
                .iter()
                .map(|&x| Rational::new(BigInt::from(x), grid.clone()))
                .collect();
            (*v, c)
        })
        .collect()
}

/// Builds `g_i = f_i^{Δ/deg f_i}` and `Y = φ(X)`, and checks the height
/// bounds `h_1(1, g) ≤ 6Δ²Cms·H`, `h(Y) ≤ 25nmdΔ^{n+2}Cs·H`, and
/// `E_Y(c) ≥ 1/(α(n+1))` on `samples` weight assignments summing to 1.
pub fn proof_inequality_report(
    x: &Ideal,
    system: &PolySystem,
    places: &PlaceSet,
    samples: usize,
    seed: u64,
    budget: Budget,
) -> Result<ProofReport> {
    check_system_on_x(x, system, budget)?;
    let n = projective_dimension(x, budget)?;
    if n < 1 {
        return Err(Error::Precondition("X must have positive dimension".into()));
    }
    let n = n as usize;
    let m = system.len() - 1;
    if m < n {
        return Err(Error::Hypothesis(vec![format!(
            "need m ≥ n, got m = {m}, n = {n}"
        )]));
    }
    let d = degree(x, budget)?;
    let big_delta = system.degree_lcm();
    let family = DivisorFamily::divisors(x.clone(), system.polys().to_vec(), budget)?;
    let delta_x = distributive_constant(&family, budget)?.value;
    let alpha = int(m as i64 + 1) * &delta_x / (int(n as i64) + &delta_x);

    let mut fs: Vec<(MultiPoly, u32)> = Vec::new();
    for (f, &deg) in system.polys().iter().zip(system.degrees()) {
        if !fs.iter().any(|(g, _)| g == f) {
            fs.push((f.clone(), deg));
        }
    }
    let g: Vec<MultiPoly> = fs.iter().map(|(f, deg)| f.pow(big_delta / deg)).collect();
    let image = image_variety(x, &g, budget)?;
    let image_bound_holds =
        image.dimension == n as i64 && image.degree <= d * (big_delta as u64).pow(n as u32);

    let h = height_quantity(x, system, budget)?;
    let mut with_one = vec![MultiPoly::one(x.nvars())];
    with_one.extend(g.iter().cloned());
    let h1_g = system_height(&with_one, HeightVariant::H1)?.ln();
    let form_y = chow_form(&image.ideal, n, budget)?;
    let h_y = system_height(std::slice::from_ref(form_y.poly()), HeightVariant::H)?.ln();

    let (c, s) = (1.0, places.len() as f64);
    let dd = big_delta as f64;
    let rhs1 = 6.0 * dd * dd * c * m as f64 * s * h;
    let rhs2 = 25.0 * n as f64 * m as f64 * d as f64 * dd.powi(n as i32 + 2) * c * s * h;
    let tol = |r: f64| 1e-12 * r.abs().max(1.0);
    let checks = vec![
        InequalityCheck {
            name: "h1(1,g) <= 6 Delta^2 C m s H".into(),
            lhs: h1_g,
            rhs: rhs1,
            holds: h1_g <= rhs1 + tol(rhs1),
        },
        InequalityCheck {
            name: "h(Y) <= 25 n m d Delta^(n+2) C s H".into(),
            lhs: h_y,
            rhs: rhs2,
            holds: h_y <= rhs2 + tol(rhs2),
        },
    ];

    let e_bound = (&alpha * int(n as i64 + 1)).recip();
    let width = g.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_list = Vec::with_capacity(samples);
    for k in 0..samples {
        let weights = if k == 0 {
            // everything on the first place, spread evenly
            let mut w = BTreeMap::new();
            let first = places.places()[0];
            w.insert(
                first,
                vec![Rational::new(BigInt::one(), BigInt::from(width)); width],
            );
            w
        } else {
            sample_weights(&mut rng, places, width)
        };
        let assignment = WeightAssignment::new(width - 1, weights.clone())?;
        let e_y = chow_weight_aggregate(&form_y, &assignment)?;
        let holds = e_y >= e_bound;
        sample_list.push(WeightSample {
            weights: weights
                .into_iter()
                .map(|(v, c)| (v, c.iter().map(format_rational).collect()))
                .collect(),
            e_y,
            holds,
        });
    }
    let all_hold =
        image_bound_holds && checks.iter().all(|c| c.holds) && sample_list.iter().all(|s| s.holds);
    let report = ProofReport {
        n,
        m,
        d,
        delta_lcm: big_delta,
        delta_x,
        alpha,
        g: g.iter().map(|p| p.to_string()).collect(),
        image,
        image_bound_holds,
        h,
        h1_g,
        h_y,
        checks,
        e_bound,
        samples: sample_list,
        all_hold,
    };
    if !report.all_hold {
        let mut failed: Vec<String> = report
            .checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.clone())
            .collect();
        if !report.image_bound_holds {
            failed.push("dim Y = n and deg Y <= d Delta^n".into());
        }
        let bad_samples = report.samples.iter().filter(|s| !s.holds).count();
        if bad_samples > 0 {
            failed.push(format!(
                "E_Y(c) >= 1/(alpha(n+1)) fails on {bad_samples} samples"
            ));
        }
        return Err(Error::Assertion(failed.join("; ")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::rat;

    fn p1_config(bound: u64, exponent: Rational, delta: Rational) -> AuditConfig {
        let system = PolySystem::parse(&["x0", "x1", "x0 - x1"], 2).unwrap();
        AuditConfig::new(
            Ideal::zero(2),
            system,
            vec![Place::Infinity],
            exponent,
            delta,
            bound,
            Budget::default(),
        )
        .unwrap()
    }

    #[test]
    fn enumeration_small_bounds() {
        let pts: Vec<String> = enumerate_points(1, 1, None)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(pts.len(), 4);
        for s in ["(1:0)", "(0:1)", "(1:1)", "(1:-1)"] {
            assert!(pts.contains(&s.to_string()), "{s} missing from {pts:?}");
        }
        let two: Vec<String> = enumerate_points(1, 2, None)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(two.len(), 8);
        for s in ["(2:1)", "(1:2)", "(2:-1)", "(1:-2)"] {
            assert!(two.contains(&s.to_string()));
        }
        assert!(enumerate_points(1, 0, None).is_err());
    }

    #[test]
    fn enumeration_on_conic() {
        let conic = Ideal::parse(3, &["x0*x2 - x1^2"]).unwrap();
        let pts: Vec<ProjPoint> = enumerate_points(2, 9, Some(&conic)).unwrap().collect();
        assert!(pts.iter().any(|p| p.to_string() == "(1:2:4)"));
        for p in &pts {
            let c = p.coords();
            assert_eq!(&c[0] * &c[2], &c[1] * &c[1]);
        }
    }

    #[test]
    fn audit_example_point() {
        let cfg = p1_config(3, int(2), rat(1, 2));
        let mut out = Vec::new();
        let summary = audit(&cfg, &mut out, Budget::default()).unwrap();
        let text = String::from_utf8(out).unwrap();
        let row = text.lines().find(|l| l.starts_with("(2:1),")).unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        let ratio: f64 = fields[3].parse().unwrap();
        assert!((ratio + 2.0).abs() < 1e-12);
        assert_eq!(fields[4], "false");
        assert_eq!(summary.on_divisors.len(), 3);
        assert!(summary.log_height_floor.is_some());
    }

    #[test]
    fn exact_flag_threshold() {
        // (2:1): E = 1/4, H = 2, Δ = 1; ratio exactly −2
        assert!(exact_flag(&rat(1, 4), &int(2), &int(2), 1));
        assert!(!exact_flag(&rat(1, 4), &int(2), &rat(5, 2), 1));
        assert!(!exact_flag(&rat(1, 4), &int(1), &int(1), 1));
    }

    #[test]
    fn audit_config_rejects_bad_input() {
        let text = r#"{"vars":2,"system":["x0","x1","x0 - x1"],"S":[],"exponent":"2","delta":"1/2","heightBound":10}"#;
        assert!(matches!(
            AuditConfig::from_json(text, Budget::default()),
            Err(Error::Precondition(_))
        ));
        let text = r#"{"vars":2,"system":["x0","x0"],"S":["inf"],"exponent":"2","delta":"1/2","heightBound":10}"#;
        assert!(matches!(
            AuditConfig::from_json(text, Budget::default()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn proofcheck_p1() {
        let x = Ideal::zero(2);
        let sys = PolySystem::parse(&["x0", "x1"], 2).unwrap();
        let r = proof_inequality_report(&x, &sys, &PlaceSet::infinity(), 10, 1, Budget::default())
            .unwrap();
        assert_eq!(r.h_y, 0.0);
        assert!(r.all_hold);
        let sys = PolySystem::parse(&["x0", "x1^2"], 2).unwrap();
        let r = proof_inequality_report(&x, &sys, &PlaceSet::infinity(), 10, 1, Budget::default())
            .unwrap();
        assert_eq!(r.delta_lcm, 2);
        assert_eq!(r.g, vec!["x0^2".to_string(), "x1^2".to_string()]);
        assert_eq!(r.image.dimension, 1);
        assert!(r.image.degree <= 2);
    }
}
