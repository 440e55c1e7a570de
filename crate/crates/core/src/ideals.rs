//! Toric point sets parameterized by monomials and their vanishing ideals.
//!
//! For an exponent matrix with rows `v_1, ..., v_s` the affine set is
//! `X* = {(x^{v_1}, ..., x^{v_s}) : x in (K*)^n}` and its projective lift is
//! `Y = {[(P, 1)] : P in X*}`. `I(X*)` is obtained by eliminating the
//! parameters from `(t_i - y^{v_i}, y_j^{q-1} - 1)`, and `I(Y)` by
//! homogenizing a GrevLex basis of `I(X*)` with a trailing variable.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::groebner::{eliminate_with, homogenize_basis, BuchbergerOptions, GroebnerBasis};
use crate::mpoly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Default bound on the number of parameter tuples `(q-1)^n` walked by
/// [`enumerate_points`].
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentMatrix {
    rows: Vec<Vec<u32>>,
}

impl ExponentMatrix {
    /// `s` rows of `n >= 1` non-negative exponents each.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<ExponentMatrix> {
        let first = rows
            .first()
            .ok_or_else(|| Error::domain("exponent matrix has no rows"))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::domain("row 1 is empty"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::domain(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(ExponentMatrix { rows })
    }

    /// The `s x s` identity: the torus `(K*)^s`.
    pub fn identity(s: usize) -> Result<ExponentMatrix> {
        ExponentMatrix::new((0..s).map(|i| (0..s).map(|j| u32::from(i == j)).collect()).collect())
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Number of monomials, i.e. coordinates of the points.
    pub fn s(&self) -> usize {
        self.rows.len()
    }

    /// Number of parameters.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: u128,
    pub threads: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            budget: DEFAULT_ENUMERATION_BUDGET,
            threads: 1,
        }
    }
}

/// The set `X*` with its points listed once each, sorted by canonical
/// coordinates.
#[derive(Debug, Clone)]
pub struct ParameterizedSet {
    matrix: ExponentMatrix,
    field: Field,
    points: Vec<Vec<Elem>>,
}

impl ParameterizedSet {
    pub fn matrix(&self) -> &ExponentMatrix {
        &self.matrix
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `P_1, ..., P_m`.
    pub fn affine_points(&self) -> &[Vec<Elem>] {
        &self.points
    }

    /// Representatives `(P_i, 1)` of the points of `Y`.
    pub fn projective_reps(&self) -> Vec<Vec<Elem>> {
        self.points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(Elem::ONE);
                q
            })
            .collect()
    }

    /// `m = |X*| = |Y|`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `S = K[t_1, ..., t_s]`.
    pub fn affine_ring(&self) -> Result<Ring> {
        Ring::with_prefix(self.field.clone(), "t", self.matrix.s())
    }
}

pub fn enumerate_points(matrix: &ExponentMatrix, field: &Field) -> Result<ParameterizedSet> {
    enumerate_points_with(matrix, field, EnumerationOptions::default())
}

/// Walks all `(q-1)^n` parameter tuples and collects the distinct points.
pub fn enumerate_points_with(
    matrix: &ExponentMatrix,
    field: &Field,
    opts: EnumerationOptions,
) -> Result<ParameterizedSet> {
    let units = field.units();
    let n = matrix.n();
    let s = matrix.s();
    let tuples = (units.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if tuples > opts.budget {
        return Err(Error::Resource {
            what: format!("enumerating (q-1)^{n} parameter tuples"),
            needed: tuples,
            bound: opts.budget,
        });
    }
    // powers[j][u][i] = units[u]^{v_ij}
    let order = (field.order() - 1) as u64;
    let powers: Vec<Vec<Vec<Elem>>> = (0..n)
        .map(|j| {
            units
                .iter()
                .map(|&x| {
                    matrix
                        .rows
                        .iter()
                        .map(|row| field.pow(x, row[j] as u64 % order))
                        .collect()
                })
                .collect()
        })
        .collect();

    // The first parameter is the shard index.
    let shard = |first: usize| -> HashSet<Vec<Elem>> {
        let mut seen = HashSet::new();
        let mut idx = vec![0usize; n];
        idx[0] = first;
        loop {
            let mut point = powers[0][first].clone();
            for j in 1..n {
                for i in 0..s {
                    point[i] = field.mul(point[i], powers[j][idx[j]][i]);
                }
            }
            seen.insert(point);
            // odometer over parameters 1..n
            let mut j = 1;
            loop {
                if j == n {
                    return seen;
                }
                idx[j] += 1;
                if idx[j] < units.len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
        }
    };

    let nunits = units.len();
    let threads = opts.threads.max(1).min(nunits);
    let mut all: HashSet<Vec<Elem>> = HashSet::new();
    if threads == 1 {
        for first in 0..nunits {
            all.extend(shard(first));
        }
    } else {
        let parts: Vec<HashSet<Vec<Elem>>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let shard = &shard;
                    scope.spawn(move || {
                        let mut acc = HashSet::new();
                        for first in (t..nunits).step_by(threads) {
                            acc.extend(shard(first));
                        }
                        acc
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        });
        for p in parts {
            all.extend(p);
        }
    }
    let mut points: Vec<Vec<Elem>> = all.into_iter().collect();
    points.sort();
    Ok(ParameterizedSet {
        matrix: matrix.clone(),
        field: field.clone(),
        points,
    })
}

/// The generators `t_i - y^{v_i}` and `y_j^{q-1} - 1` of the ideal `I'` in
/// `B = K[y_1, ..., y_n, t_1, ..., t_s]`.
pub fn parameter_ideal_generators(matrix: &ExponentMatrix, field: &Field) -> Result<(Ring, Vec<Polynomial>)> {
    let (n, s) = (matrix.n(), matrix.s());
    let names = (1..=n).map(|j| format!("y{j}")).chain((1..=s).map(|i| format!("t{i}")));
    let ring = Ring::new(field.clone(), names)?;
    let nv = n + s;
    let mut gens = Vec::with_capacity(n + s);
    for (i, row) in matrix.rows().iter().enumerate() {
        let t = Monomial::var(nv, n + i, 1);
        let y = Monomial::new(row.iter().copied().chain(std::iter::repeat_n(0, s)));
        gens.push(ring.from_terms([(t, Elem::ONE), (y, field.minus_one())])?);
    }
    let q1 = field.order() - 1;
    for j in 0..n {
        gens.push(ring.from_terms([
            (Monomial::var(nv, j, q1), Elem::ONE),
            (Monomial::one(nv), field.minus_one()),
        ])?);
    }
    Ok((ring, gens))
}

pub fn vanishing_ideal_affine(set: &ParameterizedSet) -> Result<GroebnerBasis> {
    vanishing_ideal_affine_with(set, BuchbergerOptions::default())
}

/// Reduced GrevLex basis of `I(X*)` in `K[t_1, ..., t_s]`, by eliminating
/// the parameter block from `I'`.
pub fn vanishing_ideal_affine_with(set: &ParameterizedSet, opts: BuchbergerOptions) -> Result<GroebnerBasis> {
    let (ring, gens) = parameter_ideal_generators(&set.matrix, &set.field)?;
    eliminate_with(&gens, &ring, set.matrix.n(), opts)
}

/// Basis of `I(Y)` in `K[t_1, ..., t_s, t_{s+1}]` from the GrevLex basis of
/// `I(X*)`. The new variable is named `t{s+1}` when free, `u` otherwise.
pub fn vanishing_ideal_projective(affine_gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    if affine_gb.order() != MonomialOrder::GrevLex {
        return Err(Error::domain("the basis of I(X*) must be a GrevLex basis"));
    }
    let s = affine_gb.ring().num_vars();
    let fresh = format!("t{}", s + 1);
    let name = if affine_gb.ring().var_index(&fresh).is_none() {
        fresh
    } else {
        "u".to_string()
    };
    let extended = affine_gb.extend_ring(&name)?;
    homogenize_basis(&extended, s)
}

#[derive(Debug, Clone)]
pub struct VanishingIdeals {
    pub affine: GroebnerBasis,
    pub projective: GroebnerBasis,
}

pub fn vanishing_ideals(set: &ParameterizedSet, opts: BuchbergerOptions) -> Result<VanishingIdeals> {
    let affine = vanishing_ideal_affine_with(set, opts)?;
    let projective = vanishing_ideal_projective(&affine)?;
    Ok(VanishingIdeals { affine, projective })
}

/// Checks that every generator is a binomial `t^a - t^b`.
pub fn check_binomial(gb: &GroebnerBasis) -> Result<()> {
    match gb.generators().iter().find(|g| !g.is_binomial()) {
        None => Ok(()),
        Some(g) => Err(Error::inconsistency(format!("generator {g} is not a binomial"))),
    }
}

/// Checks that every generator vanishes at every given point.
pub fn check_vanishing(gb: &GroebnerBasis, points: &[Vec<Elem>]) -> Result<()> {
    for g in gb.generators() {
        for p in points {
            if !g.evaluate(p)?.is_zero() {
                return Err(Error::inconsistency(format!("{g} does not vanish at {p:?}")));
            }
        }
    }
    Ok(())
}
