//! Chow forms by elimination, Chow weights, the aggregate `E_Y(c)`, image
//! varieties under `x ↦ (g_0(x) : … : g_R(x))`, and exact checks of the
//! Chow-weight lower bounds for coordinate hyperplanes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distributive_constant, DivisorFamily};
use crate::groebner::{
    eliminate, groebner_of, hilbert_data, projective_dimension, Budget, Ideal, TermOrder,
};
use crate::heights::WeightAssignment;
use crate::polyalg::{parse_poly_allow_zero, MultiPoly, VarNames};
use crate::qarith::{format_rational, int, Rational};

/// The Chow form `F_X(u_0, …, u_n)` of an `n`-dimensional `X ⊂ P^N`. Variable
/// `u_{ij}` sits at index `i·(N+1) + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowForm {
    poly: MultiPoly,
    n: usize,
    big_n: usize,
    per_block_degree: u32,
}

/// Names `u{i}{j}`, with an underscore separator once an index reaches 10.
pub fn chow_var_names(n: usize, big_n: usize) -> VarNames {
    let wide = n >= 10 || big_n >= 10;
    let mut names = Vec::with_capacity((n + 1) * (big_n + 1));
    for i in 0..=n {
        for j in 0..=big_n {
            names.push(if wide {
                format!("u{i}_{j}")
            } else {
                format!("u{i}{j}")
            });
        }
    }
    VarNames::Custom(names)
}

#[derive(Serialize, Deserialize)]
struct RawChowForm {
    vars: usize,
    gens: Vec<String>,
    n: usize,
    #[serde(rename = "N")]
    big_n: usize,
}

impl ChowForm {
    /// Checks that `poly` is homogeneous of one common degree in each block.
    pub fn new(poly: MultiPoly, n: usize, big_n: usize) -> Result<ChowForm> {
        let w = big_n + 1;
        if poly.nvars() != (n + 1) * w {
            return Err(Error::Structural(format!(
                "form has {} variables, expected {}",
                poly.nvars(),
                (n + 1) * w
            )));
        }
        if poly.is_zero() {
            return Err(Error::Structural("zero Chow form".into()));
        }
        let mut degree = None;
        for i in 0..=n {
            let block: Vec<bool> = (0..poly.nvars()).map(|k| k / w == i).collect();
            let mut degs = poly.terms().map(|(m, _)| {
                m.0.iter()
                    .zip(&block)
                    .filter(|(_, &b)| b)
                    .map(|(e, _)| *e)
                    .sum::<u32>()
            });
            let d0 = degs.next().expect("nonzero");
            if degs.any(|d| d != d0) {
                return Err(Error::Structural(format!(
                    "form is not homogeneous in block u{i}"
                )));
            }
            if *degree.get_or_insert(d0) != d0 {
                return Err(Error::Structural("blocks have different degrees".into()));
            }
        }
        let per_block_degree = degree.expect("n ≥ 0");
        if per_block_degree == 0 {
            return Err(Error::Structural("Chow form is constant".into()));
        }
        Ok(ChowForm {
            poly,
            n,
            big_n,
            per_block_degree,
        })
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N` for `X ⊂ P^N`.
    pub fn ambient(&self) -> usize {
        self.big_n
    }

    pub fn per_block_degree(&self) -> u32 {
        self.per_block_degree
    }

    pub fn var_names(&self) -> VarNames {
        chow_var_names(self.n, self.big_n)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RawChowForm {
            vars: self.poly.nvars(),
            gens: vec![self.poly.to_string_with(&self.var_names())],
            n: self.n,
            big_n: self.big_n,
        })
        .expect("chow json")
    }

    pub fn from_json(text: &str) -> Result<ChowForm> {
        let raw: RawChowForm = serde_json::from_str(text)?;
        if raw.gens.len() != 1 {
            return Err(Error::Structural(
                "a Chow form has exactly one generator".into(),
            ));
        }
        let names = chow_var_names(raw.n, raw.big_n);
        let poly = parse_poly_allow_zero(&raw.gens[0], raw.vars, &names)?;
        ChowForm::new(poly, raw.n, raw.big_n)
    }
}

/// Chow form of the `n`-dimensional variety cut out by `x`.
///
/// Works on an affine chart `x_k = 1` with `x_k ∉ I(X)`: for prime `I(X)` the
/// incidence ideal `I(X) + (Σ_j u_{ij} x_j)` restricted to the chart is prime
/// and dense in the full incidence variety, so eliminating `x` yields `(F_X)`
/// without a saturation step.
pub fn chow_form(x: &Ideal, n: usize, budget: Budget) -> Result<ChowForm> {
    let dim = projective_dimension(x, budget)?;
    if dim != n as i64 {
        return Err(Error::Precondition(format!(
            "X has dimension {dim}, not {n}"
        )));
    }
    let w = x.nvars();
    let big_n = w - 1;
    let gb = x.groebner(&TermOrder::GRevLex, budget)?;
    let k = (0..w)
        .find(|&k| !gb.contains(&MultiPoly::var(k, w)))
        .expect("a nonempty variety lies in some chart");
    let u = (n + 1) * w;
    let total = u + w;
    let one = int(1);
    let mut gens: Vec<MultiPoly> = x
        .gens()
        .iter()
        .map(|g| g.embed(total, u).substitute_const(u + k, &one))
        .collect();
    for i in 0..=n {
        let mut l = MultiPoly::zero(total);
        for j in 0..w {
            let uij = MultiPoly::var(i * w + j, total);
            l = if j == k {
                &l + &uij
            } else {
                &l + &(&uij * &MultiPoly::var(u + j, total))
            };
        }
        gens.push(l);
    }
    let incidence = Ideal::new(total, gens)?;
    let drop: Vec<usize> = (u..total).collect();
    let elim = eliminate(&incidence, &drop, budget)?;
    if elim.gens().len() != 1 {
        return Err(Error::Structural(format!(
            "elimination gave {} generators instead of one (is X irreducible of dimension {n}?)",
            elim.gens().len()
        )));
    }
    let f = elim.gens()[0].truncate_vars(u);
    let f = groebner_of(u, &[f], &TermOrder::GRevLex, budget)?.basis()[0].clone();
    let form = ChowForm::new(f, n, big_n)?;
    let deg = hilbert_data(x, budget)?.degree;
    if form.per_block_degree as u64 != deg {
        return Err(Error::Structural(format!(
            "per-block degree {} differs from deg X = {deg}",
            form.per_block_degree
        )));
    }
    Ok(form)
}

fn check_weights(c: &[Rational], big_n: usize) -> Result<()> {
    if c.len() != big_n + 1 {
        return Err(Error::Precondition(format!(
            "weight vector has {} entries, expected {}",
            c.len(),
            big_n + 1
        )));
    }
    if c.iter().any(|x| x.is_negative()) {
        return Err(Error::Precondition("weights must be nonnegative".into()));
    }
    Ok(())
}

/// `e_X(c) = max` over monomials of `F_X` of `Σ_{ij} e_{ij} c_j`.
pub fn chow_weight(form: &ChowForm, c: &[Rational]) -> Result<Rational> {
    check_weights(c, form.big_n)?;
    let w = form.big_n + 1;
    let best = form
        .poly
        .terms()
        .map(|(m, _)| {
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(Rational::zero(), |acc, (k, &e)| {
                    acc + &c[k % w] * Rational::from_integer(BigInt::from(e))
                })
        })
        .max()
        .expect("nonzero form");
    Ok(best)
}

/// `E_Y(c) = (Σ_v e_Y(c_v)) / ((n+1)·D)`.
pub fn chow_weight_aggregate(form: &ChowForm, c: &WeightAssignment) -> Result<Rational> {
    if c.ambient() != form.big_n {
        return Err(Error::Precondition(
            "weight assignment ambient dimension differs from the form's".into(),
        ));
    }
    if c.total_max() > Rational::one() {
        return Err(Error::Hypothesis(vec![format!(
            "sum over places of max_i c_iv is {} > 1",
            format_rational(&c.total_max())
        )]));
    }
    let mut sum = Rational::zero();
    for (_, cv) in c.iter() {
        sum += chow_weight(form, cv)?;
    }
    let denom = Rational::from_integer(BigInt::from(
        (form.n as u64 + 1) * form.per_block_degree as u64,
    ));
    Ok(sum / denom)
}

/// Image `Y = φ(X)` with its dimension and degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageVariety {
    #[serde(serialize_with = "serialize_ideal_y")]
    pub ideal: Ideal,
    pub dimension: i64,
    pub degree: u64,
    /// `deg X · (deg g)^n`.
    pub degree_bound: u64,
}

fn y_names(nvars: usize) -> VarNames {
    VarNames::Custom((0..nvars).map(|i| format!("y{i}")).collect())
}

fn serialize_ideal_y<S: serde::Serializer>(
    i: &Ideal,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    i.to_json_value_with(&y_names(i.nvars())).serialize(s)
}

impl ImageVariety {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("image json")
    }
}

/// The closure of the image of `X` under `x ↦ (g_0(x) : … : g_R(x))`.
pub fn image_variety(x: &Ideal, g: &[MultiPoly], budget: Budget) -> Result<ImageVariety> {
    if g.len() < 2 {
        return Err(Error::Precondition(
            "need at least two coordinate functions".into(),
        ));
    }
    let w = x.nvars();
    let degrees = g
        .iter()
        .map(|f| f.homogeneous_degree())
        .collect::<Result<Vec<_>>>()?;
    if degrees.windows(2).any(|d| d[0] != d[1]) || g.iter().any(|f| f.nvars() != w || f.is_zero()) {
        return Err(Error::Precondition(
            "coordinate functions must be nonzero of one common degree".into(),
        ));
    }
    let delta = degrees[0];
    let n = projective_dimension(x, budget)?;
    if n < 0 {
        return Err(Error::Precondition("X is empty".into()));
    }
    if projective_dimension(&x.with(g.iter().cloned()), budget)? >= 0 {
        return Err(Error::Hypothesis(vec![
            "the coordinate functions have a common zero on X".into(),
        ]));
    }
    let r1 = g.len();
    let total = r1 + w;
    let mut gens: Vec<MultiPoly> = x.gens().iter().map(|f| f.embed(total, r1)).collect();
    for (i, gi) in g.iter().enumerate() {
        gens.push(&MultiPoly::var(i, total) - &gi.embed(total, r1));
    }
    let graph = Ideal::new(total, gens)?;
    let drop: Vec<usize> = (r1..total).collect();
    let elim = eliminate(&graph, &drop, budget)?;
    let y = Ideal::new(
        r1,
        elim.gens().iter().map(|f| f.truncate_vars(r1)).collect(),
    )?;
    let dimension = projective_dimension(&y, budget)?;
    let degree = hilbert_data(&y, budget)?.degree;
    let deg_x = hilbert_data(x, budget)?.degree;
    let degree_bound = deg_x * (delta as u64).pow(n as u32);
    if dimension != n {
        return Err(Error::Assertion(format!(
            "dim Y = {dimension} differs from dim X = {n}"
        )));
    }
    if degree > degree_bound {
        return Err(Error::Assertion(format!(
            "deg Y = {degree} exceeds d·Δ^n = {degree_bound}"
        )));
    }
    Ok(ImageVariety {
        ideal: y,
        dimension,
        degree,
        degree_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Thm22Mode {
    /// Hypotheses: `c_{i_m}` minimal, the first `m` hyperplanes meet `Y`,
    /// `Y` in no hyperplane. Bound `(Δ_Y/δ_Y)·Σ c_{i_j}`.
    Filtered,
    /// Hypotheses: all `m + 1` hyperplanes miss `Y` jointly, `Y` in no
    /// hyperplane. Bound `Δ_Y(n+δ)/((m+1)δ)·Σ c_{i_j}`.
    EmptyIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thm22Report {
    pub mode: Thm22Mode,
    pub n: usize,
    pub m: usize,
    pub degree: u64,
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta_y: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub delta_used: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub lhs: Rational,
    #[serde(with = "crate::qarith::serde_rational")]
    pub rhs: Rational,
    pub equality: bool,
    pub hypotheses: Vec<HypothesisCheck>,
}

/// Checks `e_Y(c) ≥ rhs` exactly for the coordinate hyperplanes `y_i = 0`,
/// `i ∈ indices`, after verifying the hypotheses of `mode`.
pub fn thm22_report(
    y: &Ideal,
    form: Option<&ChowForm>,
    indices: &[usize],
    c: &[Rational],
    mode: Thm22Mode,
    delta: Option<&Rational>,
    budget: Budget,
) -> Result<Thm22Report> {
    let w = y.nvars();
    check_weights(c, w - 1)?;
    if indices.is_empty() || indices.iter().any(|&i| i >= w) {
        return Err(Error::Precondition(format!(
            "hyperplane indices {indices:?} out of range"
        )));
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return Err(Error::Precondition("hyperplane indices repeat".into()));
    }
    let dim = projective_dimension(y, budget)?;
    let m = indices.len() - 1;
    let mut hyps = Vec::new();
    let mut push = |name: String, holds: bool| hyps.push(HypothesisCheck { name, holds });
    push("dim Y ≥ 1".into(), dim >= 1);
    push(format!("m = {m} ≥ n = {dim}"), m as i64 >= dim);
    let gb = y.groebner(&TermOrder::GRevLex, budget)?;
    for &i in indices {
        push(
            format!("Y not ⊂ H_{i}"),
            !gb.contains(&MultiPoly::var(i, w)),
        );
    }
    let hyperplanes = |idx: &[usize]| {
        idx.iter()
            .map(|&i| MultiPoly::var(i, w))
            .collect::<Vec<_>>()
    };
    match mode {
        Thm22Mode::Filtered => {
            let last = &c[indices[m]];
            push(
                format!("c_{} is minimal among the selected weights", indices[m]),
                indices.iter().all(|&i| &c[i] >= last),
            );
            let meet = projective_dimension(&y.with(hyperplanes(&indices[..m])), budget)? >= 0;
            push(format!("Y meets the hyperplanes {:?}", &indices[..m]), meet);
        }
        Thm22Mode::EmptyIntersection => {
            let empty = projective_dimension(&y.with(hyperplanes(indices)), budget)? < 0;
            push(
                format!("Y misses the common zero set of hyperplanes {indices:?}"),
                empty,
            );
        }
    }
    let failed: Vec<String> = hyps
        .iter()
        .filter(|h| !h.holds)
        .map(|h| h.name.clone())
        .collect();
    if !failed.is_empty() {
        return Err(Error::Hypothesis(failed));
    }
    let n = dim as usize;
    let family = DivisorFamily::divisors(y.clone(), hyperplanes(indices), budget)?;
    let delta_y = distributive_constant(&family, budget)?.value;
    let delta_used = match delta {
        Some(d) if d < &delta_y => {
            return Err(Error::Hypothesis(vec![format!(
                "supplied δ = {} is below the distributive constant {}",
                format_rational(d),
                format_rational(&delta_y)
            )]))
        }
        Some(d) => d.clone(),
        None => delta_y.clone(),
    };
    let owned;
    let form = match form {
        Some(f) => f,
        None => {
            owned = chow_form(y, n, budget)?;
            &owned
        }
    };
    if form.n != n || form.big_n != w - 1 {
        return Err(Error::Precondition("Chow form does not match Y".into()));
    }
    let degree = form.per_block_degree as u64;
    let lhs = chow_weight(form, c)?;
    let csum = indices.iter().fold(Rational::zero(), |acc, &i| acc + &c[i]);
    let dy = int(degree as i64);
    let rhs = match mode {
        Thm22Mode::Filtered => dy / &delta_y * csum,
        Thm22Mode::EmptyIntersection => {
            dy * (int(n as i64) + &delta_used) / (int(m as i64 + 1) * &delta_used) * csum
        }
    };
    if lhs < rhs {
        return Err(Error::Assertion(format!(
            "Chow weight {} is below the bound {}",
            format_rational(&lhs),
            format_rational(&rhs)
        )));
    }
    Ok(Thm22Report {
        mode,
        n,
        m,
        degree,
        delta_y,
        delta_used,
        equality: lhs == rhs,
        lhs,
        rhs,
        hypotheses: hyps,
    })
}
