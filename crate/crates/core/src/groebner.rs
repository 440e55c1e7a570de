//! Buchberger's algorithm, elimination of a leading block of variables, and
//! homogenization of a whole basis.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::mpoly::{Monomial, MonomialOrder, Polynomial, Ring, TermList};

/// A Gröbner basis together with the order it is a basis for.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    ring: Ring,
    is_reduced: bool,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.display_lines()).finish()
    }
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_reduced(&self) -> bool {
        self.is_reduced
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.degree() == Some(0))
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial(self.order).expect("nonzero generator"))
            .collect()
    }

    /// Ideal membership through the normal form.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Checks Buchberger's criterion: every pairwise S-polynomial reduces to
    /// zero modulo the basis.
    pub fn verify_criterion(&self) -> Result<()> {
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let s = s_polynomial(&self.generators[i], &self.generators[j], self.order)?;
                let r = normal_form(&s, self)?;
                if !r.is_zero() {
                    return Err(Error::inconsistency(format!(
                        "S({}, {}) reduces to {} instead of 0",
                        self.generators[i],
                        self.generators[j],
                        r.display(self.order)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether the generators are monic and no term of any generator is
    /// divisible by the leading monomial of another.
    pub fn check_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_term(self.order).map(|(_, c)| c == Elem::ONE).unwrap_or(false)
                && g.terms()
                    .all(|(m, _)| lms.iter().enumerate().all(|(j, l)| j == i || !l.divides(m)))
        })
    }

    /// Generators printed with terms descending, one per line, in ascending
    /// order of leading monomial.
    pub fn display_lines(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.display(self.order)).collect()
    }

    /// Moves the basis into `self.ring()` with one extra variable appended.
    /// Only valid for GrevLex bases, which stay bases: GrevLex on the larger
    /// ring agrees with the old order on monomials free of the new variable.
    pub fn extend_ring(&self, name: &str) -> Result<GroebnerBasis> {
        if self.order != MonomialOrder::GrevLex {
            return Err(Error::domain(
                "only GrevLex bases can be extended by a trailing variable",
            ));
        }
        let ring = self.ring.extended(name)?;
        let generators = self
            .generators
            .iter()
            .map(|g| g.map_variables(&ring, Some))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroebnerBasis {
            generators,
            order: self.order,
            ring,
            is_reduced: self.is_reduced,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Skip pair `(i, j)` when some `k` has `LM(g_k) | lcm(i, j)` and both
    /// `(i, k)` and `(j, k)` were already treated.
    pub chain_criterion: bool,
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: MonomialOrder) -> Result<Polynomial> {
    if f.ring() != g.ring() {
        return Err(Error::domain("S-polynomial of polynomials from different rings"));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::domain("S-polynomial of the zero polynomial"));
    }
    let field = f.field();
    let (fm, fc) = f.leading_term(ord)?;
    let (gm, gc) = g.leading_term(ord)?;
    let lcm = fm.lcm(&gm);
    let a = f.mul_term(&lcm.div(&fm).unwrap(), field.inv(fc)?);
    let b = g.mul_term(&lcm.div(&gm).unwrap(), field.inv(gc)?);
    a.sub(&b)
}

/// Fully reduced remainder of `f` modulo `gb`; zero iff `f` is in the ideal.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if f.ring() != &gb.ring {
        return Err(Error::domain(format!(
            "{:?} is not the ring of the basis {:?}",
            f.ring(),
            gb.ring
        )));
    }
    let basis: Vec<TermList> = gb.generators.iter().map(|g| TermList::from_poly(g, gb.order)).collect();
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading().unwrap().0.clone()).collect();
    let r = reduce(TermList::from_poly(f, gb.order), &basis, &lms, f.field(), gb.order);
    Ok(r.to_poly(&gb.ring))
}

/// Full reduction of `p` by `basis` (whose leading coefficients are 1).
fn reduce(mut p: TermList, basis: &[TermList], lms: &[Monomial], field: &Field, ord: MonomialOrder) -> TermList {
    let mut rem: Vec<(Monomial, Elem)> = Vec::new();
    while let Some((m, c)) = p.leading() {
        match lms.iter().position(|l| l.divides(m)) {
            Some(i) => {
                let shift = m.div(&lms[i]).unwrap();
                let lc = basis[i].leading().unwrap().1;
                let coef = field.neg(field.div(c, lc).expect("nonzero leading coefficient"));
                p = p.sub_scaled(&basis[i], coef, &shift, field, ord);
            }
            None => rem.push(p.pop().unwrap()),
        }
    }
    rem.reverse();
    TermList::from_sorted(rem)
}

fn make_monic(p: &mut TermList, field: &Field) {
    let c = p.leading().expect("nonzero").1;
    if c != Elem::ONE {
        p.scale(field.inv(c).unwrap(), field);
    }
}

/// Reduced Gröbner basis with default options.
pub fn buchberger(gens: &[Polynomial], ord: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(gens, ord, BuchbergerOptions::default())
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
///
/// Pairs are treated smallest lcm degree first, then by index; pairs with
/// coprime leading monomials are skipped. Zero generators are dropped and an
/// all-zero input yields the empty basis of the zero ideal.
pub fn buchberger_with(gens: &[Polynomial], ord: MonomialOrder, opts: BuchbergerOptions) -> Result<GroebnerBasis> {
    let ring = gens
        .first()
        .ok_or_else(|| Error::domain("empty generator list"))?
        .ring()
        .clone();
    if let Some(g) = gens.iter().find(|g| g.ring() != &ring) {
        return Err(Error::domain(format!("generator {g} is not in {ring:?}")));
    }
    let field = ring.field().clone();

    let mut basis: Vec<TermList> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();

    let insert = |p: TermList, basis: &mut Vec<TermList>, lms: &mut Vec<Monomial>, pairs: &mut BTreeSet<_>| {
        let lm = p.leading().unwrap().0.clone();
        let j = basis.len();
        for (i, l) in lms.iter().enumerate() {
            pairs.insert((l.lcm(&lm).degree(), i, j));
        }
        lms.push(lm);
        basis.push(p);
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut p = TermList::from_poly(g, ord);
        make_monic(&mut p, &field);
        insert(p, &mut basis, &mut lms, &mut pairs);
    }

    while let Some(pair) = pairs.pop_first() {
        let (_, i, j) = pair;
        if lms[i].is_coprime(&lms[j]) {
            continue;
        }
        let lcm = lms[i].lcm(&lms[j]);
        if opts.chain_criterion {
            let treated = |a: usize, b: usize| {
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                !pairs.contains(&(lms[a].lcm(&lms[b]).degree(), a, b))
            };
            if (0..basis.len()).any(|k| k != i && k != j && lms[k].divides(&lcm) && treated(i, k) && treated(j, k)) {
                continue;
            }
        }
        // Leading coefficients are 1, so S = (lcm/lm_i) g_i - (lcm/lm_j) g_j.
        let s = TermList::from_sorted(Vec::new())
            .sub_scaled(&basis[i], Elem::ONE, &lcm.div(&lms[i]).unwrap(), &field, ord)
            .sub_scaled(&basis[j], field.minus_one(), &lcm.div(&lms[j]).unwrap(), &field, ord);
        let mut r = reduce(s, &basis, &lms, &field, ord);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r, &field);
        let is_constant = r.leading().unwrap().0.is_one();
        insert(r, &mut basis, &mut lms, &mut pairs);
        if is_constant {
            let one = ring.one();
            return Ok(GroebnerBasis {
                generators: vec![one],
                order: ord,
                ring,
                is_reduced: true,
            });
        }
    }

    let generators = interreduce(basis, &field, ord)
        .into_iter()
        .map(|p| p.to_poly(&ring))
        .collect();
    let gb = GroebnerBasis {
        generators,
        order: ord,
        ring,
        is_reduced: true,
    };
    debug_assert!(gb.check_reduced());
    Ok(gb)
}

/// Minimalizes, tail-reduces and sorts by ascending leading monomial.
fn interreduce(mut basis: Vec<TermList>, field: &Field, ord: MonomialOrder) -> Vec<TermList> {
    basis.sort_by(|a, b| ord.cmp(a.leading().unwrap().0, b.leading().unwrap().0));
    let mut minimal: Vec<TermList> = Vec::new();
    for p in basis {
        let lm = p.leading().unwrap().0;
        if !minimal.iter().any(|g| g.leading().unwrap().0.divides(lm)) {
            minimal.push(p);
        }
    }
    let lms: Vec<Monomial> = minimal.iter().map(|g| g.leading().unwrap().0.clone()).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let mut lead = minimal[i].clone();
        let (lm, lc) = lead.pop().unwrap();
        let others: Vec<TermList> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let other_lms: Vec<Monomial> = lms
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, m)| m.clone())
            .collect();
        let tail = reduce(lead, &others, &other_lms, field, ord);
        let mut terms: Vec<(Monomial, Elem)> = tail.iter().cloned().collect();
        terms.push((lm, lc));
        let mut p = TermList::from_sorted(terms);
        make_monic(&mut p, field);
        out.push(p);
    }
    out
}

/// Gröbner basis of `(gens) ∩ K[x_{n+1}, ..., x_N]`, where the first
/// `block_size` variables of `ring` are eliminated.
///
/// Runs Buchberger under [`MonomialOrder::BlockElim`], keeps the generators
/// free of the block and moves them to the subring. The result is the reduced
/// GrevLex basis of the elimination ideal.
pub fn eliminate(gens: &[Polynomial], ring: &Ring, block_size: usize) -> Result<GroebnerBasis> {
    eliminate_with(gens, ring, block_size, BuchbergerOptions::default())
}

pub fn eliminate_with(
    gens: &[Polynomial],
    ring: &Ring,
    block_size: usize,
    opts: BuchbergerOptions,
) -> Result<GroebnerBasis> {
    check_elimination_input(gens, ring, block_size)?;
    let full = buchberger_with(gens, MonomialOrder::BlockElim(block_size), opts)?;
    let sub = ring.without_leading(block_size)?;
    let generators = restrict(&full.generators, &sub, block_size)?;
    Ok(GroebnerBasis {
        generators,
        order: MonomialOrder::GrevLex,
        ring: sub,
        is_reduced: true,
    })
}

/// Elimination through a lexicographic basis. Slower than [`eliminate`]
/// but independent of the block order; the result is re-run through
/// Buchberger under GrevLex so both paths are directly comparable.
pub fn eliminate_lex(gens: &[Polynomial], ring: &Ring, block_size: usize) -> Result<GroebnerBasis> {
    check_elimination_input(gens, ring, block_size)?;
    let full = buchberger(gens, MonomialOrder::Lex)?;
    let sub = ring.without_leading(block_size)?;
    let generators = restrict(&full.generators, &sub, block_size)?;
    if generators.is_empty() {
        return Ok(GroebnerBasis {
            generators,
            order: MonomialOrder::GrevLex,
            ring: sub,
            is_reduced: true,
        });
    }
    buchberger(&generators, MonomialOrder::GrevLex)
}

fn check_elimination_input(gens: &[Polynomial], ring: &Ring, block_size: usize) -> Result<()> {
    if block_size >= ring.num_vars() {
        return Err(Error::domain(format!(
            "cannot eliminate {block_size} of {} variables",
            ring.num_vars()
        )));
    }
    if gens.is_empty() {
        return Err(Error::domain("empty generator list"));
    }
    if gens.iter().any(|g| g.ring() != ring) {
        return Err(Error::domain("generators do not live in the given ring"));
    }
    Ok(())
}

fn restrict(gens: &[Polynomial], sub: &Ring, block_size: usize) -> Result<Vec<Polynomial>> {
    gens.iter()
        .filter(|g| (0..block_size).all(|v| g.degree_in(v) == 0))
        .map(|g| g.map_variables(sub, |i| i.checked_sub(block_size)))
        .collect()
}

/// Homogenizes every generator at its own degree with respect to the
/// variable `hom_var`, which must be the last variable of the ring and must
/// not occur in the basis.
///
/// For a GrevLex basis the result is again a Gröbner basis under GrevLex with
/// `hom_var` smallest, and it generates the homogenization of the ideal. This
/// is trusted, not recomputed; call [`GroebnerBasis::verify_criterion`] to
/// check it.
pub fn homogenize_basis(gb: &GroebnerBasis, hom_var: usize) -> Result<GroebnerBasis> {
    if gb.order != MonomialOrder::GrevLex {
        return Err(Error::domain("homogenize_basis needs a GrevLex basis"));
    }
    if hom_var + 1 != gb.ring.num_vars() {
        return Err(Error::domain(format!(
            "homogenizing variable must be the last one (index {}), got {hom_var}",
            gb.ring.num_vars().saturating_sub(1)
        )));
    }
    let generators = gb
        .generators
        .iter()
        .map(|g| g.homogenization(hom_var))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroebnerBasis {
        generators,
        order: MonomialOrder::GrevLex,
        ring: gb.ring.clone(),
        is_reduced: gb.is_reduced,
    })
}
