//! Hilbert functions of `S[u]/I(Y)` and `S/I(X*)` from standard monomials.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::mpoly::Monomial;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum HilbertMethod {
    /// Enumerate the monomials of degree `d` and test divisibility.
    #[default]
    Enumerate,
    /// Inclusion-exclusion over lcms of the leading monomials. Exponential
    /// in the number of generators, capped at [`MAX_INCLUSION_EXCLUSION`].
    InclusionExclusion,
}

pub const MAX_INCLUSION_EXCLUSION: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertProfile {
    pub values: BTreeMap<u32, u64>,
    /// Smallest `d` with `H(d) = H(d + 1)`, after which `H` is constant.
    pub stabilized_at: Option<u32>,
    /// The constant tail value, i.e. the degree of the quotient ring.
    pub degree_of_ring: Option<u64>,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of monomials of degree exactly `d` in `nvars` variables.
fn monomials_of_degree(nvars: usize, d: u32) -> u128 {
    if nvars == 0 {
        return u128::from(d == 0);
    }
    binomial(nvars as u64 - 1 + d as u64, nvars as u64 - 1)
}

/// Calls `visit` on every exponent vector of total degree `d`.
pub(crate) fn for_each_monomial_of_degree(nvars: usize, d: u32, visit: &mut impl FnMut(&[u32])) {
    fn rec(exps: &mut Vec<u32>, pos: usize, left: u32, visit: &mut impl FnMut(&[u32])) {
        if pos + 1 == exps.len() {
            exps[pos] = left;
            visit(exps);
            return;
        }
        for e in (0..=left).rev() {
            exps[pos] = e;
            rec(exps, pos + 1, left - e, visit);
        }
        exps[pos] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            visit(&[]);
        }
        return;
    }
    let mut exps = vec![0u32; nvars];
    rec(&mut exps, 0, d, visit);
}

fn count_standard(lms: &[Monomial], nvars: usize, d: u32, method: HilbertMethod) -> Result<u64> {
    match method {
        HilbertMethod::Enumerate => {
            let mut count = 0u64;
            for_each_monomial_of_degree(nvars, d, &mut |e| {
                if !lms.iter().any(|l| l.exponents().iter().zip(e).all(|(a, b)| a <= b)) {
                    count += 1;
                }
            });
            Ok(count)
        }
        HilbertMethod::InclusionExclusion => {
            if lms.len() > MAX_INCLUSION_EXCLUSION {
                return Err(Error::Resource {
                    what: "inclusion-exclusion over leading monomials".into(),
                    needed: lms.len() as u128,
                    bound: MAX_INCLUSION_EXCLUSION as u128,
                });
            }
            let mut in_ideal: i128 = 0;
            for mask in 1u32..(1u32 << lms.len()) {
                let mut lcm = Monomial::one(nvars);
                for (i, l) in lms.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        lcm = lcm.lcm(l);
                    }
                }
                let deg = lcm.degree();
                if deg > d {
                    continue;
                }
                let c = monomials_of_degree(nvars, d - deg) as i128;
                if mask.count_ones() % 2 == 1 {
                    in_ideal += c;
                } else {
                    in_ideal -= c;
                }
            }
            Ok((monomials_of_degree(nvars, d) as i128 - in_ideal) as u64)
        }
    }
}

fn check_graded(gb: &GroebnerBasis) -> Result<()> {
    if gb.order().is_graded() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "Hilbert functions need a graded order, basis is under {:?}",
            gb.order()
        )))
    }
}

pub fn hilbert_value(gb: &GroebnerBasis, d: u32) -> Result<u64> {
    hilbert_value_with(gb, d, HilbertMethod::Enumerate)
}

/// `dim_K (R/I)_d` for a homogeneous ideal `I` given by a graded Gröbner
/// basis: the number of degree-`d` monomials outside the initial ideal.
pub fn hilbert_value_with(gb: &GroebnerBasis, d: u32, method: HilbertMethod) -> Result<u64> {
    check_graded(gb)?;
    if let Some(g) = gb.generators().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::domain(format!("generator {g} is not homogeneous")));
    }
    count_standard(&gb.leading_monomials(), gb.ring().num_vars(), d, method)
}

/// `dim_K S_{<=d} / I_{<=d}`: standard monomials of degree at most `d`.
pub fn affine_hilbert_value(gb: &GroebnerBasis, d: u32) -> Result<u64> {
    check_graded(gb)?;
    let lms = gb.leading_monomials();
    let nvars = gb.ring().num_vars();
    (0..=d)
        .map(|e| count_standard(&lms, nvars, e, HilbertMethod::Enumerate))
        .sum()
}

/// Default search cap for [`ring_degree`]: `4 (s+1) q`, where `s+1` is the
/// number of variables.
pub fn default_stabilization_cap(gb: &GroebnerBasis) -> u32 {
    4 * gb.ring().num_vars() as u32 * gb.ring().field().order()
}

/// The stabilized value of the Hilbert function, which for the vanishing
/// ideal of a finite point set is the number of points.
pub fn ring_degree(gb: &GroebnerBasis) -> Result<u64> {
    Ok(hilbert_profile(gb, 0, default_stabilization_cap(gb))?
        .degree_of_ring
        .expect("stabilized"))
}

/// Hilbert values for `0..=max(min_degree, stabilization + 1)`, searching
/// for two consecutive equal values up to `cap`.
pub fn hilbert_profile(gb: &GroebnerBasis, min_degree: u32, cap: u32) -> Result<HilbertProfile> {
    let mut values = BTreeMap::new();
    let mut prev = hilbert_value(gb, 0)?;
    values.insert(0, prev);
    let mut stabilized_at = None;
    let mut d = 0u32;
    while stabilized_at.is_none() || d < min_degree {
        if d >= cap && stabilized_at.is_none() {
            return Err(Error::inconsistency(format!(
                "Hilbert function did not stabilize by degree {cap}; the basis is not that of a finite point set"
            )));
        }
        d += 1;
        let next = hilbert_value(gb, d)?;
        values.insert(d, next);
        if stabilized_at.is_none() && next == prev {
            stabilized_at = Some(d - 1);
        }
        prev = next;
    }
    let degree_of_ring = stabilized_at.map(|s| values[&s]);
    Ok(HilbertProfile {
        values,
        stabilized_at,
        degree_of_ring,
    })
}
