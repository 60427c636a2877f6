//! Distributive constants of divisor and subscheme families, subgeneral
//! position, dimension filtrations, generic linear combinations of
//! hypersurfaces, and the product inequality for filtration indices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{
    groebner_of, projective_dimension, projective_dimension_of, Budget, GroebnerBasis, Ideal,
    TermOrder,
};
use crate::polyalg::{parse_poly_allow_zero, MultiPoly, VarNames};
use crate::qarith::{format_rational, int, rational_pow, rational_to_f64, Rational};

/// Largest family for which all subsets are enumerated.
pub const DEFAULT_FAMILY_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyMode {
    /// Definition without clamp; empty intersections contribute 0.
    Divisor,
    /// As `Divisor`, then clamped to at least 1.
    Subscheme,
}

/// Members cutting a projective variety `X`; each member is given by one
/// polynomial (a divisor) or several (a closed subscheme).
#[derive(Clone, Debug)]
pub struct DivisorFamily {
    x: Ideal,
    members: Vec<Vec<MultiPoly>>,
    mode: FamilyMode,
    dim_x: i64,
}

#[derive(Deserialize)]
struct RawFamily {
    #[serde(rename = "X")]
    x: serde_json::Value,
    mode: FamilyMode,
    members: Vec<Vec<String>>,
}

impl DivisorFamily {
    pub fn new(
        x: Ideal,
        members: Vec<Vec<MultiPoly>>,
        mode: FamilyMode,
        budget: Budget,
    ) -> Result<DivisorFamily> {
        if members.is_empty() {
            return Err(Error::Precondition("family has no members".into()));
        }
        let gb = x.groebner(&TermOrder::GRevLex, budget)?;
        if !x.is_homogeneous() {
            return Err(Error::Precondition("ideal of X is not homogeneous".into()));
        }
        let dim_x = projective_dimension_of(&gb);
        if dim_x < 0 {
            return Err(Error::Precondition("X is empty".into()));
        }
        for (k, m) in members.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::Precondition(format!("member {k} has no equations")));
            }
            for f in m {
                if f.nvars() != x.nvars() || f.homogeneous_degree().is_err() || f.is_zero() {
                    return Err(Error::Precondition(format!(
                        "member {k}: {f} is not a nonzero homogeneous polynomial in {} variables",
                        x.nvars()
                    )));
                }
            }
            if mode == FamilyMode::Divisor && m.len() != 1 {
                return Err(Error::Precondition(format!(
                    "member {k} of a divisor family must be one polynomial"
                )));
            }
            if m.iter().all(|f| gb.contains(f)) {
                return Err(Error::Hypothesis(vec![format!(
                    "X is contained in member {k}"
                )]));
            }
        }
        Ok(DivisorFamily {
            x,
            members,
            mode,
            dim_x,
        })
    }

    pub fn divisors(x: Ideal, members: Vec<MultiPoly>, budget: Budget) -> Result<DivisorFamily> {
        DivisorFamily::new(
            x,
            members.into_iter().map(|f| vec![f]).collect(),
            FamilyMode::Divisor,
            budget,
        )
    }

    /// Parses `{"X": ideal, "mode": "divisor"|"subscheme", "members": [[poly, …], …]}`.
    pub fn from_json(text: &str, budget: Budget) -> Result<DivisorFamily> {
        let raw: RawFamily = serde_json::from_str(text)?;
        let x = Ideal::from_json_value(&raw.x)?;
        let members = raw
            .members
            .iter()
            .map(|m| {
                m.iter()
                    .map(|t| parse_poly_allow_zero(t, x.nvars(), &VarNames::X))
                    .collect()
            })
            .collect::<Result<Vec<Vec<_>>>>()?;
        DivisorFamily::new(x, members, raw.mode, budget)
    }

    pub fn x(&self) -> &Ideal {
        &self.x
    }

    pub fn members(&self) -> &[Vec<MultiPoly>] {
        &self.members
    }

    pub fn mode(&self) -> FamilyMode {
        self.mode
    }

    pub fn dim_x(&self) -> i64 {
        self.dim_x
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One row of the subset table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetDimension {
    pub subset: Vec<usize>,
    /// Projective dimension of `X ∩ ⋂_{j∈J} D_j`, −1 when empty.
    pub dimension: i64,
    #[serde(with = "crate::qarith::serde_rational")]
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributiveConstant {
    #[serde(with = "crate::qarith::serde_rational")]
    pub value: Rational,
    /// The unclamped maximum (equal to `value` in divisor mode).
    #[serde(with = "crate::qarith::serde_rational")]
    pub raw_max: Rational,
    pub witness: Vec<usize>,
    pub mode: FamilyMode,
    pub dim_x: i64,
    pub table: Vec<SubsetDimension>,
}

fn subset_indices(mask: usize, q: usize) -> Vec<usize> {
    (0..q).filter(|j| mask & (1 << j) != 0).collect()
}

/// Gröbner bases of `I(X) + Σ_{j∈J} D_j` for every nonempty `J`, built level
/// by level: the basis for `J` extends the one for `J` minus its largest index.
fn subset_bases(family: &DivisorFamily, budget: Budget) -> Result<Vec<Option<GroebnerBasis>>> {
    let q = family.len();
    let n = family.x.nvars();
    let total = 1usize << q;
    let mut bases: Vec<Option<GroebnerBasis>> = vec![None; total];
    bases[0] = Some(family.x.groebner(&TermOrder::GRevLex, budget)?);
    for level in 1..=q {
        let masks: Vec<usize> = (1..total)
            .filter(|m| m.count_ones() as usize == level)
            .collect();
        let computed: Vec<(usize, GroebnerBasis)> = masks
            .par_iter()
            .map(|&mask| {
                let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
                let parent = bases[mask & !(1 << top)].as_ref().expect("previous level");
                let gb = if parent.is_unit() {
                    parent.clone()
                } else {
                    let mut gens = parent.basis().to_vec();
                    gens.extend(family.members[top].iter().cloned());
                    groebner_of(n, &gens, &TermOrder::GRevLex, budget)?
                };
                Ok((mask, gb))
            })
            .collect::<Result<Vec<_>>>()?;
        for (mask, gb) in computed {
            bases[mask] = Some(gb);
        }
    }
    Ok(bases)
}

/// `max_J #J / (dim X − dim X ∩ ⋂_{j∈J} D_j)` over nonempty `J`, exactly.
pub fn distributive_constant(
    family: &DivisorFamily,
    budget: Budget,
) -> Result<DistributiveConstant> {
    distributive_constant_capped(family, budget, DEFAULT_FAMILY_CAP)
}

pub fn distributive_constant_capped(
    family: &DivisorFamily,
    budget: Budget,
    cap: usize,
) -> Result<DistributiveConstant> {
    let q = family.len();
    if q > cap {
        return Err(Error::Precondition(format!(
            "family of {q} members exceeds the subset cap {cap}"
        )));
    }
    let bases = subset_bases(family, budget)?;
    let n = family.dim_x;
    let mut table = Vec::with_capacity((1 << q) - 1);
    for (mask, gb) in bases.iter().enumerate().skip(1) {
        let gb = gb.as_ref().expect("computed");
        let dim = projective_dimension_of(gb);
        let subset = subset_indices(mask, q);
        let ratio = if dim < 0 {
            Rational::zero()
        } else {
            if dim >= n {
                return Err(Error::Precondition(format!(
                    "members {subset:?} do not cut down the dimension of X (is X irreducible?)"
                )));
            }
            Rational::new(BigInt::from(subset.len()), BigInt::from(n - dim))
        };
        table.push(SubsetDimension {
            subset,
            dimension: dim,
            ratio,
        });
    }
    let mut best: Option<&SubsetDimension> = None;
    for row in &table {
        best = match best {
            None => Some(row),
            Some(b) if row.ratio > b.ratio || (row.ratio == b.ratio && row.subset < b.subset) => {
                Some(row)
            }
            keep => keep,
        };
    }
    let best = best.expect("nonempty family");
    let raw_max = best.ratio.clone();
    let witness = best.subset.clone();
    let value = match family.mode {
        FamilyMode::Divisor => raw_max.clone(),
        FamilyMode::Subscheme => raw_max.clone().max(Rational::one()),
    };
    table.sort_by(|a, b| {
        a.subset
            .len()
            .cmp(&b.subset.len())
            .then_with(|| a.subset.cmp(&b.subset))
    });
    Ok(DistributiveConstant {
        value,
        raw_max,
        witness,
        mode: family.mode,
        dim_x: n,
        table,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgeneralReport {
    pub m: usize,
    pub holds: bool,
    /// `(m+1)`-subsets meeting `X`.
    pub violations: Vec<Vec<usize>>,
}

/// Checks that every `m + 1` members have no common point on `X`.
pub fn subgeneral_position_check(
    family: &DivisorFamily,
    m: usize,
    budget: Budget,
) -> Result<SubgeneralReport> {
    let q = family.len();
    if q < m + 1 {
        return Err(Error::Precondition(format!(
            "family of {q} members has no subsets of size {}",
            m + 1
        )));
    }
    let masks: Vec<usize> = (1..1usize << q)
        .filter(|k| k.count_ones() as usize == m + 1)
        .collect();
    let results: Vec<(usize, bool)> = masks
        .par_iter()
        .map(|&mask| {
            let ideal = family.x.with(
                subset_indices(mask, q)
                    .into_iter()
                    .flat_map(|j| family.members[j].clone()),
            );
            Ok((mask, projective_dimension(&ideal, budget)? < 0))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut violations: Vec<Vec<usize>> = results
        .into_iter()
        .filter(|(_, empty)| !empty)
        .map(|(mask, _)| subset_indices(mask, q))
        .collect();
    violations.sort();
    Ok(SubgeneralReport {
        m,
        holds: violations.is_empty(),
        violations,
    })
}

/// Indices `t_u` at which the prefix intersections `X ∩ Q_0 ∩ … ∩ Q_s` drop
/// dimension, with `t_u` the first `s` reaching dimension `n − u − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Filtration {
    pub t: Vec<usize>,
    /// Dimension of each prefix intersection, −1 when empty.
    pub prefix_dims: Vec<i64>,
    /// Steps `s` where the dimension falls by two or more.
    pub multi_drops: Vec<usize>,
}

impl Filtration {
    pub fn is_flagged(&self) -> bool {
        !self.multi_drops.is_empty()
    }

    pub fn n(&self) -> usize {
        self.t.len() - 1
    }
}

pub fn dimension_filtration(
    x: &Ideal,
    divisors: &[MultiPoly],
    budget: Budget,
) -> Result<Filtration> {
    if divisors.is_empty() {
        return Err(Error::Precondition("no divisors given".into()));
    }
    let n = projective_dimension(x, budget)?;
    if n < 0 {
        return Err(Error::Precondition("X is empty".into()));
    }
    let mut dims = Vec::with_capacity(divisors.len());
    let mut gb = x.groebner(&TermOrder::GRevLex, budget)?;
    for f in divisors {
        let mut gens = gb.basis().to_vec();
        gens.push(f.clone());
        gb = groebner_of(x.nvars(), &gens, &TermOrder::GRevLex, budget)?;
        dims.push(projective_dimension_of(&gb));
    }
    if dims[0] != n - 1 {
        return Err(Error::Precondition(format!(
            "the first divisor meets X in dimension {} instead of {}",
            dims[0],
            n - 1
        )));
    }
    if *dims.last().expect("nonempty") >= 0 {
        return Err(Error::Precondition(
            "the divisors have a common point on X".into(),
        ));
    }
    let mut t = vec![0usize];
    for u in 1..=n {
        let s = dims
            .iter()
            .position(|&d| d < n - u)
            .expect("last prefix is empty");
        t.push(s);
    }
    let multi_drops = (1..dims.len())
        .filter(|&s| dims[s - 1] - dims[s] >= 2)
        .collect();
    Ok(Filtration {
        t,
        prefix_dims: dims,
        multi_drops,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericCombination {
    /// `coefficients[u][j]` multiplies `Q_j` in `P_u`, for `j ≤ t_u`.
    pub coefficients: Vec<Vec<i64>>,
    pub polys: Vec<MultiPoly>,
    pub attempts: u32,
    pub bound: i64,
    /// Projective dimension of `X ∩ P_0 ∩ … ∩ P_n` (always −1 on success).
    pub certificate_dimension: i64,
}

pub const GENERIC_RETRIES: u32 = 16;

/// Integer combinations `P_u = Σ_{j ≤ t_u} c_{uj} Q_j` with no common zero on `X`.
pub fn generic_combinations(
    x: &Ideal,
    q: &[MultiPoly],
    filt: &Filtration,
    seed: u64,
    budget: Budget,
) -> Result<GenericCombination> {
    if filt.is_flagged() {
        return Err(Error::Hypothesis(vec![format!(
            "filtration drops dimension by more than one at steps {:?}",
            filt.multi_drops
        )]));
    }
    let degrees = q
        .iter()
        .map(|f| f.homogeneous_degree())
        .collect::<Result<Vec<_>>>()?;
    if degrees.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Precondition(
            "the hypersurfaces must have the same degree".into(),
        ));
    }
    let n = filt.n();
    if projective_dimension(x, budget)? != n as i64 {
        return Err(Error::Precondition(
            "filtration length does not match dim X".into(),
        ));
    }
    if filt.t.windows(2).any(|w| w[0] >= w[1]) || *filt.t.last().expect("nonempty") >= q.len() {
        return Err(Error::Precondition(format!(
            "invalid filtration indices {:?}",
            filt.t
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = 1i64;
    let mut last = Vec::new();
    for attempt in 1..=GENERIC_RETRIES {
        let coefficients: Vec<Vec<i64>> = filt
            .t
            .iter()
            .map(|&tu| (0..=tu).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let polys: Vec<MultiPoly> = coefficients
            .iter()
            .map(|cs| {
                cs.iter()
                    .zip(q)
                    .fold(MultiPoly::zero(x.nvars()), |acc, (&c, f)| {
                        &acc + &f.scale(&int(c))
                    })
            })
            .collect();
        if polys.iter().all(|p| !p.is_zero()) {
            let dim = projective_dimension(&x.with(polys.iter().cloned()), budget)?;
            if dim < 0 {
                return Ok(GenericCombination {
                    coefficients,
                    polys,
                    attempts: attempt,
                    bound,
                    certificate_dimension: dim,
                });
            }
        }
        last = coefficients;
        bound = bound.saturating_mul(2);
    }
    Err(Error::Budget(format!(
        "no good combination after {GENERIC_RETRIES} attempts; last coefficients {last:?}"
    )))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma32 {
    #[serde(with = "crate::qarith::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta: Rational,
    /// `(Π a_s)^δ` in double precision; the comparison itself is exact.
    pub rhs: f64,
    pub holds: bool,
    pub equality: bool,
}

/// `Π a_s^{t_{s+1} − t_s} ≤ (Π a_s)^δ` with `δ = max_s (t_s − t_0)/s`.
pub fn lemma32_eval(t: &[u64], a: &[Rational]) -> Result<Lemma32> {
    if t.len() < 2 || t[0] != 1 || t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "t must start at 1 and increase strictly, got {t:?}"
        )));
    }
    if a.len() != t.len() - 1 {
        return Err(Error::Precondition(format!(
            "expected {} values of a, got {}",
            t.len() - 1,
            a.len()
        )));
    }
    if a.iter().any(|x| x < &Rational::one()) || a.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(
            "a must be nonincreasing and at least 1".into(),
        ));
    }
    let delta = (1..t.len())
        .map(|s| Rational::new(BigInt::from(t[s] - t[0]), BigInt::from(s)))
        .max()
        .expect("n ≥ 1");
    let lhs = a.iter().enumerate().fold(Rational::one(), |acc, (s, x)| {
        acc * rational_pow(x, (t[s + 1] - t[s]) as i64)
    });
    let prod = a.iter().fold(Rational::one(), |acc, x| acc * x);
    // lhs ≤ prod^{p/q}  ⇔  lhs^q ≤ prod^p
    let p: i64 = delta
        .numer()
        .try_into()
        .map_err(|_| Error::Domain("δ numerator too large".into()))?;
    let q: i64 = delta
        .denom()
        .try_into()
        .map_err(|_| Error::Domain("δ denominator too large".into()))?;
    let left = rational_pow(&lhs, q);
    let right = rational_pow(&prod, p);
    let rhs = rational_to_f64(&prod).powf(rational_to_f64(&delta));
    if left > right {
        return Err(Error::Assertion(format!(
            "product inequality fails: {} > ({})^{}",
            format_rational(&lhs),
            format_rational(&prod),
            format_rational(&delta)
        )));
    }
    debug_assert!(!lhs.is_negative());
    Ok(Lemma32 {
        lhs,
        delta,
        rhs,
        holds: true,
        equality: left == right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;
    use crate::qarith::rat;

    fn b() -> Budget {
        Budget::default()
    }

    fn polys(n: usize, texts: &[&str]) -> Vec<MultiPoly> {
        texts.iter().map(|t| parse_poly(t, n).unwrap()).collect()
    }

    #[test]
    fn distributive_examples() {
        let f =
            DivisorFamily::divisors(Ideal::zero(3), polys(3, &["x0", "x1", "x0 + x1 + x2"]), b())
                .unwrap();
        let d = distributive_constant(&f, b()).unwrap();
        assert_eq!(d.value, int(1));
        assert_eq!(d.witness, vec![0]);
        let f = DivisorFamily::divisors(Ideal::zero(3), polys(3, &["x0", "x1", "x0 + x1"]), b())
            .unwrap();
        let d = distributive_constant(&f, b()).unwrap();
        assert_eq!(d.value, rat(3, 2));
        assert_eq!(d.witness, vec![0, 1, 2]);
        assert_eq!(d.table.len(), 7);
        let f = DivisorFamily::new(
            Ideal::zero(3),
            vec![polys(3, &["x0", "x1"])],
            FamilyMode::Subscheme,
            b(),
        )
        .unwrap();
        let d = distributive_constant(&f, b()).unwrap();
        assert_eq!(d.raw_max, rat(1, 2));
        assert_eq!(d.value, int(1));
    }

    #[test]
    fn family_validation() {
        let conic = Ideal::parse(3, &["x0*x2 - x1^2"]).unwrap();
        let err =
            DivisorFamily::divisors(conic.clone(), polys(3, &["x0", "2*x0*x2 - 2*x1^2"]), b());
        assert!(matches!(err, Err(Error::Hypothesis(_))));
        assert!(DivisorFamily::divisors(conic, polys(3, &["x0 + 1"]), b()).is_err());
        let json = r#"{"X": {"vars": 3, "gens": []}, "mode": "divisor", "members": [["x0"], ["x1"], ["x0 + x1"]]}"#;
        let f = DivisorFamily::from_json(json, b()).unwrap();
        assert_eq!(distributive_constant(&f, b()).unwrap().value, rat(3, 2));
        let capped = distributive_constant_capped(&f, b(), 2);
        assert!(capped.is_err());
    }

    #[test]
    fn subgeneral_examples() {
        let f =
            DivisorFamily::divisors(Ideal::zero(3), polys(3, &["x0", "x1", "x2"]), b()).unwrap();
        assert!(subgeneral_position_check(&f, 2, b()).unwrap().holds);
        let f = DivisorFamily::divisors(Ideal::zero(3), polys(3, &["x0", "x1", "x0 + x1"]), b())
            .unwrap();
        let r = subgeneral_position_check(&f, 2, b()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violations, vec![vec![0, 1, 2]]);
        let f = DivisorFamily::divisors(
            Ideal::zero(3),
            polys(3, &["x0", "x1", "x2", "x0 + x1 + x2"]),
            b(),
        )
        .unwrap();
        assert!(subgeneral_position_check(&f, 2, b()).unwrap().holds);
    }

    #[test]
    fn filtration_examples() {
        let f = dimension_filtration(&Ideal::zero(3), &polys(3, &["x0", "x1", "x2"]), b()).unwrap();
        assert_eq!(f.t, vec![0, 1, 2]);
        assert_eq!(f.prefix_dims, vec![1, 0, -1]);
        let f = dimension_filtration(
            &Ideal::zero(3),
            &polys(3, &["x0", "x0 + x1", "x1", "x2"]),
            b(),
        )
        .unwrap();
        assert_eq!(f.prefix_dims, vec![1, 0, 0, -1]);
        assert_eq!(f.t, vec![0, 1, 3]);
        assert!(!f.is_flagged());
        let conic = Ideal::parse(3, &["x0*x2 - x1^2"]).unwrap();
        // (x0, x1) both pass through (0:0:1) on the conic
        assert!(dimension_filtration(&conic, &polys(3, &["x0", "x1"]), b()).is_err());
        let f = dimension_filtration(&conic, &polys(3, &["x0", "x2"]), b()).unwrap();
        assert_eq!(f.t, vec![0, 1]);
        assert_eq!(f.prefix_dims, vec![0, -1]);
        let f = dimension_filtration(
            &Ideal::zero(3),
            &polys(3, &["x0", "x1*x2", "x1", "x2"]),
            b(),
        )
        .unwrap();
        assert_eq!(f.prefix_dims, vec![1, 0, 0, -1]);
        let f = dimension_filtration(&Ideal::zero(4), &polys(4, &["x0", "x1", "x2", "x3"]), b())
            .unwrap();
        assert_eq!(f.t, vec![0, 1, 2, 3]);
        assert!(dimension_filtration(&Ideal::zero(3), &polys(3, &["x0", "x1"]), b()).is_err());
    }

    #[test]
    fn multi_drop_is_flagged() {
        // on the line x0 = 0 in P^2 ... use X = P^2 and a divisor through nothing new
        let x = Ideal::zero(3);
        let fs = polys(3, &["x0", "x1", "x2"]);
        let f = dimension_filtration(&x, &fs, b()).unwrap();
        assert!(!f.is_flagged());
        // X = twisted cubic: x0 meets it in a fat point, then x3 empties it
        let cubic = Ideal::parse(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]).unwrap();
        let f = dimension_filtration(&cubic, &polys(4, &["x0", "x3"]), b()).unwrap();
        assert_eq!(f.t, vec![0, 1]);
        // P^2 with a point-valued first step is impossible for a hypersurface, so
        // build the flag by hand
        let flagged = Filtration {
            t: vec![0, 1, 1],
            prefix_dims: vec![1, -1],
            multi_drops: vec![1],
        };
        let err = generic_combinations(&Ideal::zero(3), &polys(3, &["x0", "x1"]), &flagged, 0, b());
        assert!(matches!(err, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn generic_combination_examples() {
        let q = polys(3, &["x0^2", "x1^2", "x2^2"]);
        let filt = dimension_filtration(&Ideal::zero(3), &q, b()).unwrap();
        let g = generic_combinations(&Ideal::zero(3), &q, &filt, 7, b()).unwrap();
        assert_eq!(g.certificate_dimension, -1);
        for (u, c) in g.coefficients.iter().enumerate() {
            assert_eq!(c.len(), filt.t[u] + 1);
        }
        let q = polys(2, &["x0", "x1"]);
        let filt = dimension_filtration(&Ideal::zero(2), &q, b()).unwrap();
        let g = generic_combinations(&Ideal::zero(2), &q, &filt, 1, b()).unwrap();
        assert_ne!(g.coefficients[0][0], 0);
        assert_ne!(g.coefficients[1][1], 0);
    }

    #[test]
    fn generic_combination_retry_is_seeded() {
        let q = polys(2, &["x0^2", "x1^2"]);
        let filt = dimension_filtration(&Ideal::zero(2), &q, b()).unwrap();
        let seed = (0..200u64)
            .find(|&s| {
                generic_combinations(&Ideal::zero(2), &q, &filt, s, b())
                    .unwrap()
                    .attempts
                    == 2
            })
            .expect("some seed needs a retry");
        let a = generic_combinations(&Ideal::zero(2), &q, &filt, seed, b()).unwrap();
        let again = generic_combinations(&Ideal::zero(2), &q, &filt, seed, b()).unwrap();
        assert_eq!(a, again);
        assert_eq!(a.bound, 2);
    }

    #[test]
    fn lemma32_examples() {
        let r = lemma32_eval(&[1, 2, 3], &[int(2), int(2)]).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.delta.clone(), r.equality),
            (int(4), int(1), true)
        );
        let r = lemma32_eval(&[1, 3], &[int(5)]).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.delta.clone(), r.equality),
            (int(25), int(2), true)
        );
        let r = lemma32_eval(&[1, 2, 4], &[int(3), int(2)]).unwrap();
        assert_eq!(r.lhs, int(12));
        assert_eq!(r.delta, rat(3, 2));
        assert!((r.rhs - 14.696938456699067).abs() < 1e-9);
        assert!(!r.equality);
        assert!(lemma32_eval(&[0, 2], &[int(2)]).is_err());
        assert!(lemma32_eval(&[1, 2, 3], &[int(2), int(3)]).is_err());
    }
}
