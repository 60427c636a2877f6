//! Heights of rational points in `P^N`, local Weil functions of divisors and
//! subschemes, the approximation sum, and the twisted height.
//!
//! Weil functions use the gauge
//! `λ_{div f, v}(P) = log(‖P‖_v^{deg f} · ‖f‖_v / ‖f(P)‖_v)`,
//! under which `Σ_v λ_{div f, v}(P) = (deg f)·h(P) + h(f)` holds exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyalg::{system_norm, MultiPoly, NormVariant, PolySystem};
use crate::qarith::{
    format_rational, joint_support, ln_rational, normalized_abs, parse_rational, rational_pow,
    ExactLog, Place, PlaceSet, Rational,
};

/// A point of `P^N(Q)` in canonical form: coprime integers, first nonzero
/// coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(coords: &[Rational]) -> Result<ProjPoint> {
        if coords.len() < 2 {
            return Err(Error::Precondition(
                "a projective point needs at least two coordinates".into(),
            ));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Domain("all coordinates are zero".into()));
        }
        let l = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = coords
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        Ok(ProjPoint::from_ints_unchecked(ints))
    }

    pub fn from_ints(coords: &[BigInt]) -> Result<ProjPoint> {
        let q: Vec<Rational> = coords.iter().cloned().map(Rational::from_integer).collect();
        ProjPoint::new(&q)
    }

    pub fn from_i64(coords: &[i64]) -> Result<ProjPoint> {
        let v: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        ProjPoint::from_ints(&v)
    }

    fn from_ints_unchecked(mut ints: Vec<BigInt>) -> ProjPoint {
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let first_negative = ints
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        for c in ints.iter_mut() {
            *c = &*c / &g;
            if first_negative {
                *c = -&*c;
            }
        }
        ProjPoint { coords: ints }
    }

    /// Integer coordinates of the canonical representative.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn rational_coords(&self) -> Vec<Rational> {
        self.coords
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect()
    }

    /// `N` for a point of `P^N`.
    pub fn ambient(&self) -> usize {
        self.coords.len() - 1
    }

    /// `max_i ‖x_i‖_v` over the nonzero coordinates.
    pub fn norm(&self, v: Place) -> Rational {
        let mut best = Rational::zero();
        for c in self.coords.iter().filter(|c| !c.is_zero()) {
            let a =
                normalized_abs(&Rational::from_integer(c.clone()), v).expect("nonzero coordinate");
            if a > best {
                best = a;
            }
        }
        best
    }

    /// Places where some nonzero coordinate has absolute value `≠ 1`, plus `∞`.
    pub fn support(&self) -> Result<PlaceSet> {
        let q: Vec<Rational> = self
            .rational_coords()
            .into_iter()
            .filter(|c| !c.is_zero())
            .collect();
        joint_support(q.iter())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(":"))
    }
}

impl FromStr for ProjPoint {
    type Err = Error;
    /// Parses `a0,a1,…,aN` (or `a0:a1:…:aN`) with rational entries.
    fn from_str(s: &str) -> Result<ProjPoint> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let sep = if body.contains(':') { ':' } else { ',' };
        let coords = body
            .split(sep)
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(&coords)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<ProjPoint, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coords = raw
            .iter()
            .map(|t| parse_rational(t))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        ProjPoint::new(&coords).map_err(serde::de::Error::custom)
    }
}

/// Absolute logarithmic height: `log max_i |x_i|` on the canonical representative.
pub fn proj_height(p: &ProjPoint) -> ExactLog {
    let m = p.coords.iter().map(|c| c.abs()).max().expect("nonempty");
    ExactLog::new(Rational::from_integer(m)).expect("positive")
}

/// Local factors `max_i ‖x_i‖_v` over the support of the coordinates, for any
/// representative. Their product is the height.
pub fn proj_height_by_places(coords: &[Rational]) -> Result<Vec<(Place, Rational)>> {
    let nonzero: Vec<&Rational> = coords.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::Domain("all coordinates are zero".into()));
    }
    let support = joint_support(nonzero.iter().copied())?;
    let mut out = Vec::new();
    for v in support.iter() {
        let mut best = Rational::zero();
        for c in &nonzero {
            let a = normalized_abs(c, *v)?;
            if a > best {
                best = a;
            }
        }
        out.push((*v, best));
    }
    Ok(out)
}

fn check_point_for(f: &MultiPoly, p: &ProjPoint) -> Result<u32> {
    let d = f.homogeneous_degree()?;
    if f.nvars() != p.coords.len() {
        return Err(Error::Precondition(format!(
            "polynomial in {} variables evaluated at a point of P^{}",
            f.nvars(),
            p.ambient()
        )));
    }
    Ok(d)
}

/// `λ_{div f, v}(P)` as an exact log.
pub fn weil_divisor(f: &MultiPoly, v: Place, p: &ProjPoint) -> Result<ExactLog> {
    let d = check_point_for(f, p)?;
    let value = f.evaluate_int(&p.coords)?;
    if value.is_zero() {
        return Err(Error::PointOnLocus(format!(
            "{p} lies on the divisor of {f}"
        )));
    }
    let fnorm = system_norm(std::slice::from_ref(f), v, NormVariant::Max)?;
    let m = rational_pow(&p.norm(v), d as i64) * fnorm / normalized_abs(&value, v)?;
    ExactLog::new(m)
}

/// `λ_{Y, v}(P) = min_i λ_{div f_i, v}(P)` over the `f_i` not vanishing at `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubschemeWeil {
    pub value: ExactLog,
    /// Index of a polynomial attaining the minimum (the first one).
    pub minimizer: usize,
    /// Indices of polynomials vanishing at `P`.
    pub skipped: Vec<usize>,
}

pub fn weil_subscheme(fs: &[MultiPoly], v: Place, p: &ProjPoint) -> Result<SubschemeWeil> {
    let mut best: Option<(ExactLog, usize)> = None;
    let mut skipped = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        match weil_divisor(f, v, p) {
            Ok(l) => {
                if best.as_ref().is_none_or(|(b, _)| l < *b) {
                    best = Some((l, i));
                }
            }
            Err(Error::PointOnLocus(_)) => skipped.push(i),
            Err(e) => return Err(e),
        }
    }
    match best {
        Some((value, minimizer)) => Ok(SubschemeWeil {
            value,
            minimizer,
            skipped,
        }),
        None => Err(Error::PointOnLocus(format!("{p} lies on the subscheme"))),
    }
}

/// The sum `Σ_{v∈S} Σ_i (1/deg f_i)·log(‖f_i(P)‖_v / ‖P‖_v^{deg f_i})`.
///
/// With `Δ = lcm(deg f_i)`, `Δ·sum = log(exact_scaled)` exactly. `gauge_scaled`
/// holds the matching `Δ·Σ_{v∈S} Σ_i (1/deg f_i)·log‖f_i‖_v`, so that
/// `sum = (log gauge_scaled)/Δ − Σ_{v∈S} Σ_i λ_{div f_i, v}(P)/deg f_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxSum {
    pub delta: u32,
    #[serde(with = "crate::qarith::serde_rational")]
    pub exact_scaled: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub gauge_scaled: Rational,
    pub value: f64,
    pub gauge: f64,
}

pub fn approx_sum(system: &PolySystem, s: &PlaceSet, p: &ProjPoint) -> Result<ApproxSum> {
    let delta = system.degree_lcm();
    let mut exact = Rational::one();
    let mut gauge = Rational::one();
    for (f, &d) in system.polys().iter().zip(system.degrees()) {
        check_point_for(f, p)?;
        let value = f.evaluate_int(&p.coords)?;
        if value.is_zero() {
            return Err(Error::PointOnLocus(format!(
                "{p} lies on the divisor of {f}"
            )));
        }
        let e = (delta / d) as i64;
        for v in s.iter() {
            let ratio = normalized_abs(&value, *v)? / rational_pow(&p.norm(*v), d as i64);
            exact *= rational_pow(&ratio, e);
            let fnorm = system_norm(std::slice::from_ref(f), *v, NormVariant::Max)?;
            gauge *= rational_pow(&fnorm, e);
        }
    }
    let value = ln_rational(&exact) / delta as f64;
    let g = ln_rational(&gauge) / delta as f64;
    Ok(ApproxSum {
        delta,
        exact_scaled: exact,
        gauge_scaled: gauge,
        value,
        gauge: g,
    })
}

/// Nonnegative weights `c_{iv}` indexed by place, with `Σ_v max_i c_{iv} ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    ambient: usize,
    per_place: BTreeMap<Place, Vec<Rational>>,
}

impl WeightAssignment {
    /// `ambient` is `N`; each vector has `N + 1` entries. Zero vectors are dropped.
    pub fn new(
        ambient: usize,
        per_place: BTreeMap<Place, Vec<Rational>>,
    ) -> Result<WeightAssignment> {
        let w = WeightAssignment::unchecked(ambient, per_place)?;
        let total = w.total_max();
        if total > Rational::one() {
            return Err(Error::Hypothesis(vec![format!(
                "sum over places of max_i c_iv is {} > 1",
                format_rational(&total)
            )]));
        }
        Ok(w)
    }

    /// Same shape and sign checks as [`WeightAssignment::new`], without the
    /// total bound.
    pub fn unchecked(
        ambient: usize,
        per_place: BTreeMap<Place, Vec<Rational>>,
    ) -> Result<WeightAssignment> {
        let mut kept = BTreeMap::new();
        for (v, c) in per_place {
            if c.len() != ambient + 1 {
                return Err(Error::Precondition(format!(
                    "weights at {v} have {} entries, expected {}",
                    c.len(),
                    ambient + 1
                )));
            }
            if c.iter().any(|x| x.is_negative()) {
                return Err(Error::Hypothesis(vec![format!("negative weight at {v}")]));
            }
            if c.iter().any(|x| !x.is_zero()) {
                kept.insert(v, c);
            }
        }
        Ok(WeightAssignment {
            ambient,
            per_place: kept,
        })
    }

    pub fn zero(ambient: usize) -> WeightAssignment {
        WeightAssignment {
            ambient,
            per_place: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn get(&self, v: &Place) -> Option<&[Rational]> {
        self.per_place.get(v).map(|c| c.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &Vec<Rational>)> {
        self.per_place.iter()
    }

    /// `Σ_v max_i c_{iv}`.
    pub fn total_max(&self) -> Rational {
        self.per_place
            .values()
            .map(|c| c.iter().max().cloned().unwrap_or_else(Rational::zero))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn places(&self) -> Vec<Place> {
        self.per_place.keys().copied().collect()
    }

    pub fn from_json(text: &str) -> Result<WeightAssignment> {
        let raw: RawWeights = serde_json::from_str(text)?;
        raw.into_assignment()
    }
}

#[derive(Serialize, Deserialize)]
struct RawWeights {
    ambient: usize,
    weights: BTreeMap<Place, Vec<String>>,
}

impl RawWeights {
    fn into_assignment(self) -> Result<WeightAssignment> {
        let mut map = BTreeMap::new();
        for (v, c) in self.weights {
            map.insert(
                v,
                c.iter()
                    .map(|t| parse_rational(t))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        WeightAssignment::new(self.ambient, map)
    }
}

impl Serialize for WeightAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawWeights {
            ambient: self.ambient,
            weights: self
                .per_place
                .iter()
                .map(|(v, c)| (*v, c.iter().map(format_rational).collect()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightAssignment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<WeightAssignment, D::Error> {
        RawWeights::deserialize(d)?
            .into_assignment()
            .map_err(serde::de::Error::custom)
    }
}

/// `log H_{Q,c}(y) = Σ_v log max_i ‖y_i‖_v Q^{c_{iv}}` in double precision.
pub fn twisted_height(y: &ProjPoint, c: &WeightAssignment, qbase: f64) -> Result<f64> {
    if !qbase.is_finite() || qbase <= 1.0 {
        return Err(Error::Domain(format!(
            "twisted height needs Q > 1, got {qbase}"
        )));
    }
    if c.ambient() != y.ambient() {
        return Err(Error::Precondition(
            "weight assignment and point differ in ambient dimension".into(),
        ));
    }
    let places = y.support()?.union(&PlaceSet::new(
        c.places().into_iter().chain([Place::Infinity]),
    )?);
    let lq = qbase.ln();
    let mut total = 0.0;
    for v in places.iter() {
        let weights = c.get(v);
        let mut best = f64::NEG_INFINITY;
        for (i, yi) in y.coords.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let a = ln_rational(&normalized_abs(&Rational::from_integer(yi.clone()), *v)?);
            let w = weights.map_or(0.0, |w| crate::qarith::rational_to_f64(&w[i]));
            best = best.max(a + w * lq);
        }
        total += best;
    }
    Ok(total)
}
