//! Sparse multivariate polynomials over a finite field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Polynomial ring `K[x_1, ..., x_N]` with named, positionally indexed
/// variables.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

struct RingInner {
    names: Vec<String>,
    field: Field,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.field == other.0.field && self.0.names == other.0.names)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.0.field, self.0.names.join(","))
    }
}

impl Ring {
    pub fn new<S: Into<String>>(field: Field, names: impl IntoIterator<Item = S>) -> Result<Ring> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::domain(format!("invalid variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate variable name {n:?}")));
            }
        }
        Ok(Ring(Arc::new(RingInner { names, field })))
    }

    /// Ring with variables `{prefix}1, ..., {prefix}{count}`.
    pub fn with_prefix(field: Field, prefix: &str, count: usize) -> Result<Ring> {
        Ring::new(field, (1..=count).map(|i| format!("{prefix}{i}")))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn num_vars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// This ring with one more variable appended.
    pub fn extended(&self, name: &str) -> Result<Ring> {
        let mut names = self.0.names.clone();
        names.push(name.to_string());
        Ring::new(self.0.field.clone(), names)
    }

    /// The subring on the variables after the first `n`.
    pub fn without_leading(&self, n: usize) -> Result<Ring> {
        if n > self.num_vars() {
            return Err(Error::domain(format!(
                "cannot drop {n} of {} variables",
                self.num_vars()
            )));
        }
        Ring::new(self.0.field.clone(), self.0.names[n..].iter().cloned())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            terms: BTreeMap::new(),
            ring: self.clone(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Elem::ONE)
    }

    pub fn constant(&self, c: Elem) -> Polynomial {
        self.term(Monomial::one(self.num_vars()), c)
    }

    pub fn var(&self, i: usize) -> Result<Polynomial> {
        if i >= self.num_vars() {
            return Err(Error::domain(format!("variable index {i} out of range")));
        }
        Ok(self.term(Monomial::var(self.num_vars(), i, 1), Elem::ONE))
    }

    pub fn term(&self, m: Monomial, c: Elem) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            terms,
            ring: self.clone(),
        }
    }

    /// Builds a polynomial from possibly repeated terms, summing coefficients.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Result<Polynomial> {
        let field = self.field();
        let mut map: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.num_vars() != self.num_vars() {
                return Err(Error::domain(format!(
                    "monomial has {} exponents, ring has {} variables",
                    m.num_vars(),
                    self.num_vars()
                )));
            }
            let e = map.entry(m).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            terms: map,
            ring: self.clone(),
        })
    }

    /// Parses text like `t2^2*t3^2 - t1^2 + 3`. Integer coefficients are
    /// read modulo the characteristic.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Parser {
            ring: self,
            src: text,
            pos: 0,
        }
        .polynomial()
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.0.names[i].clone()
                } else {
                    format!("{}^{}", self.0.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector. The derived `Ord` is plain lexicographic comparison of
/// the exponents and is only used for storage; term orders live in
/// [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Monomial {
        Monomial(exponents.into_iter().collect())
    }

    pub fn one(num_vars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    pub fn var(num_vars: usize, i: usize, e: u32) -> Monomial {
        let mut m = Monomial::one(num_vars);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// `x_1 > x_2 > ...`, first differing exponent decides.
    Lex,
    /// Total degree, then the monomial whose last differing exponent is
    /// smaller is the larger one.
    GrevLex,
    /// GrevLex on the first `n` variables, ties broken by GrevLex on the
    /// rest. Any monomial involving the first block beats every monomial
    /// free of it, so this is an elimination order for that block.
    BlockElim(usize),
}

#[inline]
fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b.iter()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::BlockElim(n) => {
                let n = n.min(a.0.len());
                grevlex(&a.0[..n], &b.0[..n]).then_with(|| grevlex(&a.0[n..], &b.0[n..]))
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::GrevLex | MonomialOrder::BlockElim(0))
    }
}

#[derive(Clone)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Elem>,
    ring: Ring,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(MonomialOrder::GrevLex))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(MonomialOrder::GrevLex))
    }
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (lexicographic on exponents).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Elem)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: MonomialOrder) -> Vec<(&Monomial, Elem)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.get(m).copied().unwrap_or(Elem::ZERO)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Two terms with coefficients `1` and `-1`.
    pub fn is_binomial(&self) -> bool {
        let f = self.field();
        let mut cs: Vec<Elem> = self.terms.values().copied().collect();
        cs.sort();
        cs.len() == 2 && cs.contains(&f.one()) && cs.contains(&f.minus_one()) && f.add(cs[0], cs[1]).is_zero()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "ring mismatch: {:?} vs {:?}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.field();
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert(Elem::ZERO);
            *e = f.add(*e, c);
            if e.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Polynomial {
            terms,
            ring: self.ring.clone(),
        })
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.field();
        Polynomial {
            terms: self.terms.iter().map(|(m, &c)| (m.clone(), f.neg(c))).collect(),
            ring: self.ring.clone(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let f = self.field();
        Polynomial {
            terms: self.terms.iter().map(|(m, &a)| (m.clone(), f.mul(a, c))).collect(),
            ring: self.ring.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: Elem) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let f = self.field();
        Polynomial {
            terms: self.terms.iter().map(|(n, &a)| (n.mul(m), f.mul(a, c))).collect(),
            ring: self.ring.clone(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.field();
        let mut terms: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e = terms.entry(a.mul(b)).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial {
            terms,
            ring: self.ring.clone(),
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(Monomial, Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, &c)| (m.clone(), c))
            .ok_or_else(|| Error::domain("leading term of the zero polynomial"))
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self, ord: MonomialOrder) -> Polynomial {
        match self.leading_term(ord) {
            Ok((_, c)) => self.scale(self.field().inv(c).expect("nonzero leading coefficient")),
            Err(_) => self.clone(),
        }
    }

    /// Classical multivariate division. Returns quotients `q_i` and the
    /// remainder `r` with `self = sum q_i g_i + r`, where no term of `r` is
    /// divisible by a leading monomial of the divisors. The first divisor
    /// whose leading monomial divides the current term is used.
    pub fn divide(&self, divisors: &[Polynomial], ord: MonomialOrder) -> Result<(Vec<Polynomial>, Polynomial)> {
        for g in divisors {
            self.check_ring(g)?;
            if g.is_zero() {
                return Err(Error::domain("division by the zero polynomial"));
            }
        }
        let f = self.field();
        let divs: Vec<TermList> = divisors.iter().map(|g| TermList::from_poly(g, ord)).collect();
        let mut quotients: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); divisors.len()];
        let mut p = TermList::from_poly(self, ord);
        let mut rem = Vec::new();
        while let Some((m, c)) = p.leading() {
            let hit = divs.iter().enumerate().find(|(_, g)| g.leading().unwrap().0.divides(m));
            match hit {
                Some((i, g)) => {
                    let (gm, gc) = g.leading().unwrap();
                    let shift = m.div(gm).unwrap();
                    let coef = f.div(c, gc)?;
                    quotients[i].push((shift.clone(), coef));
                    p = p.sub_scaled(g, f.neg(coef), &shift, f, ord);
                }
                None => rem.push(p.pop().unwrap()),
            }
        }
        let quotients = quotients
            .into_iter()
            .map(|ts| self.ring.from_terms(ts))
            .collect::<Result<Vec<_>>>()?;
        Ok((quotients, self.ring.from_terms(rem)?))
    }

    /// `u^d f(x_1/u, ..., x_N/u)` where `u` is the variable `hom_var`, which
    /// must not occur in `f`.
    pub fn homogenize(&self, d: u32, hom_var: usize) -> Result<Polynomial> {
        if hom_var >= self.ring.num_vars() {
            return Err(Error::domain(format!("homogenizing variable {hom_var} out of range")));
        }
        if self.degree_in(hom_var) > 0 {
            return Err(Error::domain(format!(
                "homogenizing variable {} occurs in {}",
                self.ring.names()[hom_var],
                self
            )));
        }
        let deg = self.degree().unwrap_or(0);
        if d < deg {
            return Err(Error::domain(format!("target degree {d} is below deg f = {deg}")));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut m = m.clone();
                m.0[hom_var] = d - m.degree();
                (m, c)
            })
            .collect();
        Ok(Polynomial {
            terms,
            ring: self.ring.clone(),
        })
    }

    /// The standard homogenization `f^h`, at degree `deg f`.
    pub fn homogenization(&self, hom_var: usize) -> Result<Polynomial> {
        self.homogenize(self.degree().unwrap_or(0), hom_var)
    }

    /// Substitutes `1` for the given variable.
    pub fn dehomogenize(&self, var: usize) -> Polynomial {
        let terms = self.terms.iter().map(|(m, &c)| {
            let mut m = m.clone();
            m.0[var] = 0;
            (m, c)
        });
        self.ring.from_terms(terms).expect("same ring")
    }

    pub fn evaluate(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::domain(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.num_vars()
            )));
        }
        let f = self.field();
        let mut acc = Elem::ZERO;
        for (m, &c) in &self.terms {
            let mut v = c;
            for (&x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    v = f.mul(v, f.pow(x, e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `map(i)`. Variables that occur in `self` must be mapped.
    pub fn map_variables(&self, target: &Ring, map: impl Fn(usize) -> Option<usize>) -> Result<Polynomial> {
        if target.field() != self.field() {
            return Err(Error::domain("target ring has a different coefficient field"));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, &c) in &self.terms {
            let mut out = Monomial::one(target.num_vars());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map(i) {
                    Some(j) if j < target.num_vars() => out.0[j] += e,
                    _ => {
                        return Err(Error::domain(format!(
                            "variable {} has no image in {:?}",
                            self.ring.names()[i],
                            target
                        )))
                    }
                }
            }
            terms.push((out, c));
        }
        target.from_terms(terms)
    }

    /// Text form with terms descending under `ord`.
    pub fn display(&self, ord: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = self.field();
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(ord).into_iter().enumerate() {
            let negative = c == f.minus_one() && f.characteristic() > 2;
            let c_abs = if negative { Elem::ONE } else { c };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = self.ring.fmt_monomial(m);
            if m.is_one() {
                out.push_str(&f.fmt_elem(c_abs));
            } else if c_abs == Elem::ONE {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", f.fmt_elem(c_abs), mono));
            }
        }
        out
    }
}

/// Terms sorted ascending under a fixed order, so the leading term is last.
/// This is the working representation of the reduction loops.
#[derive(Clone, Debug)]
pub(crate) struct TermList {
    terms: Vec<(Monomial, Elem)>,
}

impl TermList {
    pub(crate) fn from_poly(p: &Polynomial, ord: MonomialOrder) -> TermList {
        let mut terms: Vec<(Monomial, Elem)> = p.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        TermList { terms }
    }

    pub(crate) fn to_poly(&self, ring: &Ring) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().cloned().collect(),
            ring: ring.clone(),
        }
    }

    #[inline]
    pub(crate) fn leading(&self) -> Option<(&Monomial, Elem)> {
        self.terms.last().map(|(m, c)| (m, *c))
    }

    pub(crate) fn pop(&mut self) -> Option<(Monomial, Elem)> {
        self.terms.pop()
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn iter(&self) -> impl DoubleEndedIterator<Item = &(Monomial, Elem)> {
        self.terms.iter()
    }

    pub(crate) fn from_sorted(terms: Vec<(Monomial, Elem)>) -> TermList {
        TermList { terms }
    }

    pub(crate) fn scale(&mut self, c: Elem, f: &Field) {
        for t in &mut self.terms {
            t.1 = f.mul(t.1, c);
        }
    }

    /// `self + coef * shift * g`, merging two ascending lists.
    pub(crate) fn sub_scaled(
        &self,
        g: &TermList,
        coef: Elem,
        shift: &Monomial,
        f: &Field,
        ord: MonomialOrder,
    ) -> TermList {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, c)| (m.mul(shift), f.mul(*c, coef))).peekable();
        loop {
            let o = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
            };
            match o {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let (m, c1) = a.next().unwrap();
                    let (_, c2) = b.next().unwrap();
                    let c = f.add(*c1, c2);
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                }
            }
        }
        TermList { terms: out }
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(format!("column {}", self.pos + 1), msg)
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected a number"))
    }

    fn identifier(&mut self) -> &str {
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let f = self.ring.field().clone();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
            };
            first = false;
            let (m, c) = self.term()?;
            terms.push((m, if negative { f.neg(c) } else { c }));
        }
        self.ring.from_terms(terms)
    }

    fn term(&mut self) -> Result<(Monomial, Elem)> {
        let f = self.ring.field().clone();
        let mut coef = Elem::ONE;
        let mut mono = Monomial::one(self.ring.num_vars());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.number()?;
                    coef = f.mul(coef, f.from_int((n % f.characteristic() as u64) as i64));
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.identifier().to_string();
                    let i = self
                        .ring
                        .var_index(&name)
                        .ok_or_else(|| self.err(format!("unknown variable {name:?}")))?;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        e = u32::try_from(self.number()?).map_err(|_| self.err("exponent too large"))?;
                    }
                    mono.0[i] += e;
                }
                Some(c) => return Err(self.err(format!("unexpected {c:?}"))),
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((mono, coef));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(q: u64, names: &[&str]) -> Ring {
        Ring::new(Field::new(q, None).unwrap(), names.iter().copied()).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn add_mul_examples() {
        let r = ring(5, &["t1", "t2"]);
        let a = r.parse("t1 + t2").unwrap();
        let b = r.parse("-t2").unwrap();
        assert_eq!(a.add(&b).unwrap(), r.parse("t1").unwrap());
        let p = r.parse("t1 - 1").unwrap().mul(&r.parse("t1 + 1").unwrap()).unwrap();
        assert_eq!(p, r.parse("t1^2 - 1").unwrap());
        assert!(a.mul(&r.zero()).unwrap().is_zero());
    }

    #[test]
    fn ring_mismatch_is_domain_error() {
        let r = ring(5, &["t1"]);
        let s = ring(5, &["t1", "t2"]);
        assert!(matches!(r.one().add(&s.one()), Err(Error::Domain(_))));
        assert!(matches!(r.one().mul(&s.one()), Err(Error::Domain(_))));
    }

    #[test]
    fn leading_terms() {
        let r = ring(5, &["t1", "t2"]);
        let f = r.parse("t1^2*t2 + t2^3").unwrap();
        assert_eq!(f.leading_monomial(MonomialOrder::Lex).unwrap(), mono(&[2, 1]));
        // Same degree; t1^2 t2 - t2^3 = (2,-2), last nonzero negative.
        assert_eq!(f.leading_monomial(MonomialOrder::GrevLex).unwrap(), mono(&[2, 1]));
        let c = r.constant(Elem::ZERO).add(&r.parse("5 + 3").unwrap()).unwrap();
        assert_eq!(
            c.leading_term(MonomialOrder::GrevLex).unwrap(),
            (mono(&[0, 0]), Elem(3))
        );
        let s = ring(5, &["t1", "t2", "t3", "t4"]);
        let g = s.parse("t3^4 - t4^4").unwrap();
        assert_eq!(g.leading_monomial(MonomialOrder::GrevLex).unwrap(), mono(&[0, 0, 4, 0]));
        assert!(r.zero().leading_term(MonomialOrder::Lex).is_err());
    }

    #[test]
    fn grevlex_is_not_grlex() {
        // x1 x3^2 vs x2^3: grlex picks x1 x3^2, grevlex picks x2^3.
        let a = mono(&[1, 0, 2]);
        let b = mono(&[0, 3, 0]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&b, &a), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn block_elim_eliminates() {
        let ord = MonomialOrder::BlockElim(2);
        let with_y = mono(&[0, 1, 0, 0]);
        let without = mono(&[0, 0, 9, 9]);
        assert_eq!(ord.cmp(&with_y, &without), Ordering::Greater);
    }

    #[test]
    fn divide_examples() {
        let r = ring(5, &["t1", "t2"]);
        let (q, rem) = r
            .parse("t1")
            .unwrap()
            .divide(&[r.parse("t2").unwrap()], MonomialOrder::Lex)
            .unwrap();
        assert!(q[0].is_zero());
        assert_eq!(rem, r.parse("t1").unwrap());

        let (q, rem) = r.parse("t1").unwrap().divide(&[], MonomialOrder::Lex).unwrap();
        assert!(q.is_empty());
        assert_eq!(rem, r.parse("t1").unwrap());

        // y^{q-1} h reduced by y^{q-1} - 1 drops below degree q-1.
        let y = ring(5, &["y1", "y2"]);
        let f = y.parse("y1^4*y2^3 + 2*y1^9 + y1*y2").unwrap();
        let (q, rem) = f
            .divide(&[y.parse("y1^4 - 1").unwrap()], MonomialOrder::GrevLex)
            .unwrap();
        assert!(rem.degree_in(0) < 4);
        let back = q[0].mul(&y.parse("y1^4 - 1").unwrap()).unwrap().add(&rem).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn homogenize_examples() {
        let r = ring(5, &["t1", "t2", "t3", "t4"]);
        let f = r.parse("t2^2*t3^2 - t1^2").unwrap();
        assert_eq!(f.homogenize(4, 3).unwrap(), r.parse("t2^2*t3^2 - t1^2*t4^2").unwrap());
        assert_eq!(
            r.parse("t1^4 - 1").unwrap().homogenize(4, 3).unwrap(),
            r.parse("t1^4 - t4^4").unwrap()
        );
        assert_eq!(
            r.parse("3").unwrap().homogenize(3, 3).unwrap(),
            r.parse("3*t4^3").unwrap()
        );
        assert!(matches!(f.homogenize(3, 3), Err(Error::Domain(_))));
        assert!(matches!(
            r.parse("t4 + 1").unwrap().homogenize(2, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let f5 = Field::new(5, None).unwrap();
        let r = Ring::new(f5.clone(), ["t1", "t2"]).unwrap();
        assert_eq!(
            r.parse("t1*t2 - 1").unwrap().evaluate(&[Elem(2), Elem(3)]).unwrap(),
            Elem::ZERO
        );
        let g = r.parse("3*t1^2 + 4*t2 + 2").unwrap();
        assert_eq!(g.evaluate(&[Elem::ONE, Elem::ONE]).unwrap(), Elem(4));
        assert!(g.evaluate(&[Elem::ONE]).is_err());
    }

    #[test]
    fn display_and_parse() {
        let r = ring(5, &["t1", "t2", "t3", "t4"]);
        let f = r.parse("t3^4 - t4^4").unwrap();
        assert_eq!(f.display(MonomialOrder::GrevLex), "t3^4 - t4^4");
        let g = r.parse("2*t1*t2 + 4 + t4").unwrap();
        assert_eq!(g.display(MonomialOrder::GrevLex), "2*t1*t2 + t4 - 1");
        assert_eq!(r.parse(&g.display(MonomialOrder::GrevLex)).unwrap(), g);
        assert!(matches!(r.parse("t9"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse(""), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("t1 t2"), Err(Error::Parse { .. })));
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..=20, n).prop_map(Monomial::new)
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::GrevLex),
            (0usize..=8).prop_map(MonomialOrder::BlockElim),
        ]
    }

    fn arb_poly(r: Ring, n: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..4, n), 0u32..5), 0..6).prop_map(move |ts| {
            r.from_terms(ts.into_iter().map(|(e, c)| (Monomial::new(e), Elem(c))))
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_total_well_founded(
            ord in orders(),
            (a, b, c) in (1usize..=8).prop_flat_map(|n| (arb_mono(n), arb_mono(n), arb_mono(n))),
        ) {
            let n = a.num_vars();
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(ord.cmp(&a, &Monomial::one(n)), Ordering::Less);
            if ab != Ordering::Less && ord.cmp(&b, &c) != Ordering::Less {
                prop_assert_ne!(ord.cmp(&a, &c), Ordering::Less);
            }
        }

        #[test]
        fn division_reassembles(
            ord in orders(),
            f in arb_poly(ring(5, &["a", "b", "c"]), 3),
            gs in proptest::collection::vec(arb_poly(ring(5, &["a", "b", "c"]), 3), 1..4),
        ) {
            let gs: Vec<Polynomial> = gs.into_iter().filter(|g| !g.is_zero()).collect();
            let (qs, r) = f.divide(&gs, ord).unwrap();
            let lms: Vec<Monomial> = gs.iter().map(|g| g.leading_monomial(ord).unwrap()).collect();
            for (m, _) in r.terms() {
                prop_assert!(lms.iter().all(|l| !l.divides(m)));
            }
            let mut acc = r.clone();
            for (q, g) in qs.iter().zip(&gs) {
                let qg = q.mul(g).unwrap();
                if let (Ok(lqg), Ok(lf)) = (qg.leading_monomial(ord), f.leading_monomial(ord)) {
                    prop_assert_ne!(ord.cmp(&lqg, &lf), Ordering::Greater);
                }
                acc = acc.add(&qg).unwrap();
            }
            prop_assert_eq!(acc, f);
        }

        #[test]
        fn homogenize_roundtrip(f in arb_poly(ring(7, &["a", "b"]), 2)) {
            let r3 = ring(7, &["a", "b", "u"]);
            let lifted = f.map_variables(&r3, Some).unwrap();
            let h = lifted.homogenization(2).unwrap();
            prop_assert!(h.is_homogeneous());
            prop_assert_eq!(h.dehomogenize(2), lifted.clone());
            let h5 = lifted.homogenize(lifted.degree().unwrap_or(0) + 2, 2).unwrap();
            prop_assert!(h5.is_homogeneous());
            prop_assert_eq!(h5.dehomogenize(2), lifted);
        }
    }
}
