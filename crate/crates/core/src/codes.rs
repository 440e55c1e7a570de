//! Evaluation codes on toric point sets: the evaluation matrix, dimension,
//! minimum distance, closed forms for the torus, and the full parameter
//! pipeline.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::groebner::BuchbergerOptions;
use crate::hilbert::{
    affine_hilbert_value, binomial, default_stabilization_cap, for_each_monomial_of_degree, hilbert_profile,
    hilbert_value, HilbertProfile,
};
use crate::ideals::{check_binomial, check_vanishing, vanishing_ideals, ParameterizedSet, VanishingIdeals};
use crate::mpoly::{Monomial, MonomialOrder};

/// Default cap on `q^k` for exhaustive minimum-distance search.
pub const DEFAULT_MD_BUDGET: u128 = 20_000_000;

/// Default cap on the number of entries of an evaluation matrix.
pub const DEFAULT_MATRIX_BUDGET: u128 = 1 << 26;

/// Rows are the monomials of degree `<= d` (ascending GrevLex), columns the
/// points `P_1, ..., P_m`; entry `(i, j)` is `monomial_i(P_j)`.
#[derive(Debug, Clone)]
pub struct EvaluationMatrix {
    field: Field,
    monomials: Vec<Monomial>,
    rows: Vec<Vec<Elem>>,
    num_points: usize,
}

impl EvaluationMatrix {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    /// Builds a matrix from explicit rows, e.g. a generator matrix.
    pub fn from_rows(field: Field, rows: Vec<Vec<Elem>>) -> Result<EvaluationMatrix> {
        let num_points = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != num_points) {
            return Err(Error::domain("rows of unequal length"));
        }
        Ok(EvaluationMatrix {
            field,
            monomials: Vec::new(),
            rows,
            num_points,
        })
    }

    /// Multiplies column `j` by `scales[j]`.
    pub fn scale_columns(&self, scales: &[Elem]) -> Result<EvaluationMatrix> {
        if scales.len() != self.num_points {
            return Err(Error::domain("one scale per column expected"));
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().zip(scales).map(|(&a, &c)| self.field.mul(a, c)).collect())
            .collect();
        Ok(EvaluationMatrix { rows, ..self.clone() })
    }
}

/// All monomials of degree `<= d` in `nvars` variables, ascending GrevLex.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for e in 0..=d {
        let mut layer = Vec::new();
        for_each_monomial_of_degree(nvars, e, &mut |x| layer.push(Monomial::new(x.iter().copied())));
        layer.sort_by(|a, b| MonomialOrder::GrevLex.cmp(a, b));
        out.extend(layer);
    }
    out
}

pub fn build_evaluation_matrix(set: &ParameterizedSet, d: u32) -> Result<EvaluationMatrix> {
    build_evaluation_matrix_with(set, d, DEFAULT_MATRIX_BUDGET)
}

pub fn build_evaluation_matrix_with(set: &ParameterizedSet, d: u32, budget: u128) -> Result<EvaluationMatrix> {
    let s = set.matrix().s();
    let field = set.field().clone();
    let nrows = binomial(s as u64 + d as u64, s as u64);
    let entries = nrows.saturating_mul(set.len() as u128);
    if entries > budget {
        return Err(Error::Resource {
            what: format!("evaluation matrix in degree {d}"),
            needed: entries,
            bound: budget,
        });
    }
    let monomials = monomials_up_to(s, d);
    // powers[j][i][e] = (P_j)_i^e
    let powers: Vec<Vec<Vec<Elem>>> = set
        .affine_points()
        .iter()
        .map(|p| {
            p.iter()
                .map(|&x| {
                    let mut v = Vec::with_capacity(d as usize + 1);
                    let mut acc = Elem::ONE;
                    for _ in 0..=d {
                        v.push(acc);
                        acc = field.mul(acc, x);
                    }
                    v
                })
                .collect()
        })
        .collect();
    let rows = monomials
        .iter()
        .map(|m| {
            powers
                .iter()
                .map(|pp| {
                    m.exponents()
                        .iter()
                        .zip(pp)
                        .fold(Elem::ONE, |acc, (&e, pw)| field.mul(acc, pw[e as usize]))
                })
                .collect()
        })
        .collect();
    Ok(EvaluationMatrix {
        field,
        monomials,
        rows,
        num_points: set.len(),
    })
}

/// Reduced row echelon form of a matrix over a finite field.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Elem>>,
    pub pivots: Vec<usize>,
}

pub fn row_reduce(field: &Field, rows: &[Vec<Elem>]) -> Echelon {
    let mut a: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = field.neg(row[c]);
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = field.add(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots }
}

/// Dimension of the code, i.e. the rank of the evaluation matrix.
pub fn code_dimension(matrix: &EvaluationMatrix) -> usize {
    row_reduce(&matrix.field, &matrix.rows).rows.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum MinDistance {
    /// Exhaustive search over all codewords.
    Exact {
        value: u64,
    },
    /// A unit vector lies in the code, so the distance is 1.
    WeightOneFound,
    /// Search exceeded the budget; the distance lies in `lower..=upper`.
    Bounded {
        lower: u64,
        upper: u64,
    },
    Skipped {
        reason: String,
    },
}

impl MinDistance {
    /// The exact distance when known.
    pub fn value(&self) -> Option<u64> {
        match self {
            MinDistance::Exact { value } => Some(*value),
            MinDistance::WeightOneFound => Some(1),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            MinDistance::Exact { .. } => "exact",
            MinDistance::WeightOneFound => "weight-one",
            MinDistance::Bounded { .. } => "bounded",
            MinDistance::Skipped { .. } => "skipped",
        }
    }
}

impl fmt::Display for MinDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            MinDistance::Exact { value } => value.to_string(),
            MinDistance::WeightOneFound => "1".to_string(),
            MinDistance::Bounded { lower, upper } => format!("{lower}..{upper}"),
            MinDistance::Skipped { .. } => String::new(),
        };
        f.pad(&text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinDistanceOptions {
    /// Exhaustive search runs only when `q^k <= budget`.
    pub budget: u128,
    pub threads: usize,
}

impl Default for MinDistanceOptions {
    fn default() -> Self {
        MinDistanceOptions {
            budget: DEFAULT_MD_BUDGET,
            threads: 1,
        }
    }
}

pub fn minimum_distance(matrix: &EvaluationMatrix, budget: u128) -> MinDistance {
    minimum_distance_with(matrix, MinDistanceOptions { budget, threads: 1 })
}

/// Minimum Hamming weight of a nonzero vector in the row space.
///
/// A unit vector `e_j` lies in the row space exactly when some row of the
/// reduced echelon form equals it, which settles distance 1 without search;
/// the result is `Exact` when `q^k` is within budget and `WeightOneFound`
/// otherwise.
/// Failing that, if `q^k` is within budget, all codewords whose last nonzero
/// coordinate (over the echelon basis) is 1 are walked; scalar multiples
/// share weights, so this covers the whole code. Beyond the budget the
/// result is bounded by 2 and the Singleton bound.
pub fn minimum_distance_with(matrix: &EvaluationMatrix, opts: MinDistanceOptions) -> MinDistance {
    let field = &matrix.field;
    let ech = row_reduce(field, &matrix.rows);
    let k = ech.rows.len();
    let m = matrix.num_points;
    if k == 0 {
        return MinDistance::Skipped {
            reason: "zero code".into(),
        };
    }
    let words = (field.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let within_budget = words <= opts.budget;
    if ech.rows.iter().any(|r| r.iter().filter(|x| !x.is_zero()).count() == 1) {
        return if within_budget {
            MinDistance::Exact { value: 1 }
        } else {
            MinDistance::WeightOneFound
        };
    }
    if !within_budget {
        return MinDistance::Bounded {
            lower: 2,
            upper: (m - k + 1) as u64,
        };
    }
    MinDistance::Exact {
        value: exhaustive_min_weight(field, &ech.rows, opts.threads),
    }
}

/// One unit of search: start from `start` and walk every combination of
/// `gens` with coefficients in `F_p`.
struct SearchUnit {
    start: Vec<Elem>,
    gens: Vec<Vec<Elem>>,
}

fn exhaustive_min_weight(field: &Field, basis: &[Vec<Elem>], threads: usize) -> u64 {
    let p = field.characteristic();
    let ext = field.spec().extension_degree();
    // F_p-basis of F_q: the elements with a single unit coordinate.
    let scalars: Vec<Elem> = (0..ext).map(|j| field.from_index(p.pow(j)).unwrap()).collect();
    let scaled = |row: &[Elem], c: Elem| -> Vec<Elem> { row.iter().map(|&x| field.mul(x, c)).collect() };

    let mut units = Vec::new();
    for (i, lead) in basis.iter().enumerate() {
        let mut gens: Vec<Vec<Elem>> = basis[..i]
            .iter()
            .flat_map(|r| scalars.iter().map(|&c| scaled(r, c)))
            .collect();
        match gens.pop() {
            None => units.push(SearchUnit {
                start: lead.clone(),
                gens,
            }),
            Some(top) => {
                // Shard on the coefficient of the last generator.
                let mut start = lead.clone();
                for _ in 0..p {
                    units.push(SearchUnit {
                        start: start.clone(),
                        gens: gens.clone(),
                    });
                    for (x, &y) in start.iter_mut().zip(&top) {
                        *x = field.add(*x, y);
                    }
                }
            }
        }
    }

    let next = AtomicUsize::new(0);
    let worker = || {
        let mut best = u64::MAX;
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            let Some(unit) = units.get(i) else { return best };
            best = best.min(if field.is_prime_field() {
                walk(unit, p, |a, b| {
                    let s = a + b;
                    if s >= p {
                        s - p
                    } else {
                        s
                    }
                })
            } else {
                walk(unit, p, |a, b| field.add(Elem(a), Elem(b)).index())
            });
        }
    };
    let threads = threads.max(1);
    if threads == 1 {
        return worker();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads).map(|_| scope.spawn(worker)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .min()
            .unwrap_or(u64::MAX)
    })
}

/// Odometer over `gens` in base `p`. Bumping a digit from `p - 1` to 0 adds
/// its generator a `p`-th time, which is the identity in characteristic `p`,
/// so every step is a single vector addition.
fn walk(unit: &SearchUnit, p: u32, add: impl Fn(u32, u32) -> u32) -> u64 {
    let mut word: Vec<u32> = unit.start.iter().map(|e| e.index()).collect();
    let gens: Vec<Vec<u32>> = unit
        .gens
        .iter()
        .map(|g| g.iter().map(|e| e.index()).collect())
        .collect();
    let mut digits = vec![0u32; gens.len()];
    let mut best = word.iter().filter(|&&x| x != 0).count() as u64;
    'outer: loop {
        let mut i = 0;
        loop {
            if i == gens.len() {
                break 'outer;
            }
            let mut weight = 0u64;
            for (x, &y) in word.iter_mut().zip(&gens[i]) {
                *x = add(*x, y);
                weight += u64::from(*x != 0);
            }
            digits[i] += 1;
            if digits[i] < p {
                best = best.min(weight);
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
    best
}

/// `delta_T(d)` for the affine torus `(F_q^*)^s`: `1` once `d >= (q-2)s`,
/// otherwise `(q-1)^{s-k-1} (q-1-l)` with `d = k(q-2) + l`, `1 <= l <= q-2`.
/// Degree 0 gives the repetition code of length `(q-1)^s`.
pub fn torus_min_distance(q: u64, s: u32, d: u64) -> Result<u64> {
    if q < 3 {
        return Err(Error::domain(format!(
            "torus minimum-distance formula needs q >= 3, got q = {q}"
        )));
    }
    if s == 0 {
        return Err(Error::domain("torus dimension s must be at least 1"));
    }
    let overflow = || Error::domain("torus minimum distance overflows u64");
    if d == 0 {
        return (q - 1).checked_pow(s).ok_or_else(overflow);
    }
    if d >= (q - 2) * s as u64 {
        return Ok(1);
    }
    let k = (d - 1) / (q - 2);
    let l = d - k * (q - 2);
    let head = (q - 1).checked_pow(s - k as u32 - 1).ok_or_else(overflow)?;
    head.checked_mul(q - 1 - l).ok_or_else(overflow)
}

/// `dim C_T(d) = sum_{j=0}^{floor(d/(q-1))} (-1)^j C(s, j) C(s + d - j(q-1), s)`.
pub fn torus_dimension(q: u64, s: u32, d: u64) -> Result<u64> {
    if q < 2 || s == 0 {
        return Err(Error::domain("torus dimension needs q >= 2 and s >= 1"));
    }
    let mut acc: i128 = 0;
    for j in 0..=d / (q - 1) {
        let term = binomial(s as u64, j) as i128 * binomial(s as u64 + d - j * (q - 1), s as u64) as i128;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    u64::try_from(acc).map_err(|_| Error::domain("torus dimension out of range"))
}

pub fn torus_length(q: u64, s: u32) -> Result<u64> {
    (q - 1)
        .checked_pow(s)
        .ok_or_else(|| Error::domain("torus length overflows u64"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub d: u32,
    pub length: u64,
    pub dimension: u64,
    pub min_distance: MinDistance,
}

impl CodeParameters {
    /// `length - dimension + 1 - delta` when the distance is known.
    pub fn singleton_defect(&self) -> Option<i64> {
        self.min_distance
            .value()
            .map(|delta| self.length as i64 - self.dimension as i64 + 1 - delta as i64)
    }

    pub fn singleton_bound(&self) -> u64 {
        self.length + 1 - self.dimension
    }
}

/// Whether the code meets the Singleton bound with equality.
pub fn is_mds(params: &CodeParameters) -> Result<bool> {
    params
        .singleton_defect()
        .map(|defect| defect == 0)
        .ok_or_else(|| Error::domain(format!("minimum distance at d = {} is not exact", params.d)))
}

/// Closed-form parameters of the affine torus code; no Gröbner work.
pub fn torus_table(q: u64, s: u32, degrees: RangeInclusive<u32>) -> Result<Vec<CodeParameters>> {
    let length = torus_length(q, s)?;
    degrees
        .map(|d| {
            Ok(CodeParameters {
                d,
                length,
                dimension: torus_dimension(q, s, d as u64)?,
                min_distance: MinDistance::Exact {
                    value: torus_min_distance(q, s, d as u64)?,
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    pub md_budget: u128,
    pub matrix_budget: u128,
    pub threads: usize,
    pub compute_min_distance: bool,
    /// Run every cross-check (Buchberger criterion, binomiality, vanishing on
    /// points, affine Hilbert function, monotonicity, Singleton bound).
    pub verify: bool,
    pub buchberger: BuchbergerOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            md_budget: DEFAULT_MD_BUDGET,
            matrix_budget: DEFAULT_MATRIX_BUDGET,
            threads: 1,
            compute_min_distance: true,
            verify: false,
            buchberger: BuchbergerOptions::default(),
        }
    }
}

/// The code family `C_{X*}(d)`, `d = 0, 1, ...`, on one point set, with the
/// vanishing ideals and the Hilbert data computed once.
#[derive(Debug, Clone)]
pub struct CodeAnalysis {
    set: ParameterizedSet,
    ideals: VanishingIdeals,
    profile: HilbertProfile,
    options: PipelineOptions,
}

impl CodeAnalysis {
    pub fn new(set: ParameterizedSet, options: PipelineOptions) -> Result<CodeAnalysis> {
        let ideals = vanishing_ideals(&set, options.buchberger)?;
        let profile = hilbert_profile(&ideals.projective, 0, default_stabilization_cap(&ideals.projective))?;
        let degree = profile.degree_of_ring.expect("stabilized profile");
        if degree != set.len() as u64 {
            return Err(Error::inconsistency(format!(
                "degree of S[u]/I(Y) is {degree} but X* has {} points",
                set.len()
            )));
        }
        if let Some(stab) = profile.stabilized_at {
            if !set.is_empty() && stab as usize > set.len() - 1 {
                return Err(Error::inconsistency(format!(
                    "Hilbert function stabilized at {stab}, after |Y| - 1 = {}",
                    set.len() - 1
                )));
            }
        }
        let analysis = CodeAnalysis {
            set,
            ideals,
            profile,
            options,
        };
        if options.verify {
            analysis.verify_ideals()?;
        }
        Ok(analysis)
    }

    pub fn set(&self) -> &ParameterizedSet {
        &self.set
    }

    pub fn ideals(&self) -> &VanishingIdeals {
        &self.ideals
    }

    pub fn profile(&self) -> &HilbertProfile {
        &self.profile
    }

    /// `deg S[u]/I(Y)`, equal to the code length.
    pub fn ring_degree(&self) -> u64 {
        self.profile.degree_of_ring.expect("stabilized profile")
    }

    pub fn hilbert_value(&self, d: u32) -> Result<u64> {
        match self.profile.values.get(&d) {
            Some(&v) => Ok(v),
            None if self.profile.stabilized_at.is_some_and(|s| d > s) => Ok(self.ring_degree()),
            None => hilbert_value(&self.ideals.projective, d),
        }
    }

    /// Buchberger criterion on both bases, binomiality, and vanishing of
    /// every generator on every point.
    pub fn verify_ideals(&self) -> Result<()> {
        self.ideals.affine.verify_criterion()?;
        self.ideals.projective.verify_criterion()?;
        check_binomial(&self.ideals.affine)?;
        check_binomial(&self.ideals.projective)?;
        check_vanishing(&self.ideals.affine, self.set.affine_points())?;
        check_vanishing(&self.ideals.projective, &self.set.projective_reps())?;
        Ok(())
    }

    pub fn evaluation_matrix(&self, d: u32) -> Result<EvaluationMatrix> {
        build_evaluation_matrix_with(&self.set, d, self.options.matrix_budget)
    }

    /// Length, dimension and minimum distance of `C_{X*}(d)`. The rank of
    /// the evaluation matrix must equal `H_Y(d)`.
    pub fn parameters(&self, d: u32) -> Result<CodeParameters> {
        let matrix = self.evaluation_matrix(d)?;
        let rank = code_dimension(&matrix) as u64;
        let h = self.hilbert_value(d)?;
        if rank != h {
            return Err(Error::inconsistency(format!(
                "rank of ev_{d} is {rank} but H_Y({d}) = {h}"
            )));
        }
        if self.options.verify && d >= 1 {
            let affine = affine_hilbert_value(&self.ideals.affine, d)?;
            if affine != h {
                return Err(Error::inconsistency(format!(
                    "affine Hilbert value {affine} differs from H_Y({d}) = {h}"
                )));
            }
        }
        let min_distance = if self.options.compute_min_distance {
            minimum_distance_with(
                &matrix,
                MinDistanceOptions {
                    budget: self.options.md_budget,
                    threads: self.options.threads,
                },
            )
        } else {
            MinDistance::Skipped {
                reason: "disabled".into(),
            }
        };
        Ok(CodeParameters {
            d,
            length: self.ring_degree(),
            dimension: rank,
            min_distance,
        })
    }

    pub fn table(&self, degrees: RangeInclusive<u32>) -> Result<Vec<CodeParameters>> {
        let table = degrees.map(|d| self.parameters(d)).collect::<Result<Vec<_>>>()?;
        if self.options.verify {
            check_table(&table)?;
        }
        Ok(table)
    }
}

/// Full pipeline over a range of degrees.
pub fn parameter_table(
    set: &ParameterizedSet,
    degrees: RangeInclusive<u32>,
    options: PipelineOptions,
) -> Result<Vec<CodeParameters>> {
    if degrees.is_empty() {
        return Ok(Vec::new());
    }
    CodeAnalysis::new(set.clone(), options)?.table(degrees)
}

/// Singleton bound on every exact distance, dimension non-decreasing and
/// exact distances non-increasing along consecutive degrees.
pub fn check_table(table: &[CodeParameters]) -> Result<()> {
    for p in table {
        if p.dimension == 0 || p.dimension > p.length {
            return Err(Error::inconsistency(format!(
                "dimension {} out of range at d = {}",
                p.dimension, p.d
            )));
        }
        if let Some(delta) = p.min_distance.value() {
            if delta == 0 || delta > p.singleton_bound() {
                return Err(Error::inconsistency(format!(
                    "distance {delta} violates the Singleton bound {} at d = {}",
                    p.singleton_bound(),
                    p.d
                )));
            }
        }
    }
    for w in table.windows(2) {
        if w[1].d != w[0].d + 1 {
            continue;
        }
        if w[1].dimension < w[0].dimension {
            return Err(Error::inconsistency(format!(
                "dimension drops from d = {} to d = {}",
                w[0].d, w[1].d
            )));
        }
        if let (Some(a), Some(b)) = (w[0].min_distance.value(), w[1].min_distance.value()) {
            if b > a {
                return Err(Error::inconsistency(format!(
                    "distance grows from d = {} to d = {}",
                    w[0].d, w[1].d
                )));
            }
        }
    }
    Ok(())
}
