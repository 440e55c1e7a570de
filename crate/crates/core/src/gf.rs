//! Finite fields `F_q`, `q = p^k`.
//!
//! A [`Field`] is a cheap, shareable handle. Elements are stored as a bare
//! canonical index ([`Elem`]) so that polynomials and matrices can hold them
//! densely; [`FieldElement`] pairs an index with its field for checked,
//! self-describing arithmetic.
//!
//! The canonical index of an element with coordinates `c_0 + c_1 a + ... +
//! c_{k-1} a^{k-1}` (where `a` is a root of the modulus) is
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. For prime fields this is just the
//! residue in `[0, p)`. Every enumeration in the crate walks elements in
//! ascending index order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default upper bound on `q`. Everything downstream enumerates `K*`.
pub const DEFAULT_ORDER_LIMIT: u64 = 1 << 16;

/// Canonical index of a field element. Only meaningful together with the
/// [`Field`] it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
pub struct FieldSpec {
    characteristic: u32,
    extension_degree: u32,
    /// Monic modulus, constant term first. Empty for prime fields.
    modulus: Vec<u32>,
    order: u32,
    tables: Option<LogTables>,
}

/// Discrete log tables for extension fields; prime fields multiply directly.
#[derive(Debug)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn extension_degree(&self) -> u32 {
        self.extension_degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.characteristic == other.0.characteristic
                && self.0.extension_degree == other.0.extension_degree
                && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.extension_degree == 1 {
            write!(f, "GF({})", self.0.order)
        } else {
            write!(
                f,
                "GF({}^{}; modulus {:?})",
                self.0.characteristic, self.0.extension_degree, self.0.modulus
            )
        }
    }
}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p as u64, None)
    }

    /// The field with `q` elements. When `q` is a proper prime power the
    /// monic irreducible `modulus` (constant term first) is required.
    pub fn new(q: u64, modulus: Option<&[u32]>) -> Result<Field> {
        Field::with_limit(q, modulus, DEFAULT_ORDER_LIMIT)
    }

    pub fn with_limit(q: u64, modulus: Option<&[u32]>, limit: u64) -> Result<Field> {
        if q > limit {
            return Err(Error::Resource {
                what: "field order".into(),
                needed: q as u128,
                bound: limit as u128,
            });
        }
        if q < 2 {
            return Err(Error::domain(format!("field order {q} is not a prime power")));
        }
        let p = smallest_prime_factor(q);
        let mut k = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::domain(format!("field order {q} is not a prime power")));
        }
        let p = u32::try_from(p).map_err(|_| Error::domain("characteristic too large"))?;
        let q = q as u32;

        if k == 1 {
            if let Some(m) = modulus {
                // A linear monic modulus x + c is harmless; anything else is not.
                if m.len() > 2 || (m.len() == 2 && m[1] % p != 1) {
                    return Err(Error::domain(format!(
                        "modulus of degree {} given for the prime field GF({q})",
                        m.len().saturating_sub(1)
                    )));
                }
            }
            return Ok(Field(Arc::new(FieldSpec {
                characteristic: p,
                extension_degree: 1,
                modulus: Vec::new(),
                order: q,
                tables: None,
            })));
        }

        let modulus = modulus.ok_or_else(|| {
            Error::domain(format!(
                "GF({q}) = GF({p}^{k}) needs an irreducible modulus of degree {k}"
            ))
        })?;
        if modulus.len() != k as usize + 1 {
            return Err(Error::domain(format!(
                "modulus for GF({p}^{k}) must have {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::domain(format!("modulus coefficients must lie in [0, {p})")));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::domain("modulus must be monic"));
        }
        if !is_irreducible(modulus, p) {
            return Err(Error::domain(format!("modulus {modulus:?} is reducible over GF({p})")));
        }
        let mut spec = FieldSpec {
            characteristic: p,
            extension_degree: k,
            modulus: modulus.to_vec(),
            order: q,
            tables: None,
        };
        spec.tables = Some(build_log_tables(&spec));
        Ok(Field(Arc::new(spec)))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.order
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.characteristic
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.0.extension_degree == 1
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// `-1`, i.e. `p - 1` in the prime subfield.
    #[inline]
    pub fn minus_one(&self) -> Elem {
        Elem(self.0.characteristic - 1)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.characteristic as i64) as u32)
    }

    pub fn from_index(&self, index: u32) -> Result<Elem> {
        if index < self.0.order {
            Ok(Elem(index))
        } else {
            Err(Error::domain(format!("index {index} out of range for {self}")))
        }
    }

    /// Element with the given coordinates over `F_p` (constant term first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let p = self.0.characteristic;
        if coeffs.len() > self.0.extension_degree as usize {
            return Err(Error::domain(format!(
                "{} coordinates given for a field of degree {}",
                coeffs.len(),
                self.0.extension_degree
            )));
        }
        Ok(Elem(coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c % p)))
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.0.characteristic;
        let mut v = a.0;
        (0..self.0.extension_degree)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            elem: a,
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.characteristic;
        if self.0.extension_degree == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.extension_degree {
            let s = x % p + y % p;
            out += (if s >= p { s - p } else { s }) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.0.characteristic;
        if self.0.extension_degree == 1 {
            return Elem(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.0.extension_degree {
            let c = x % p;
            out += (if c == 0 { 0 } else { p - c }) * place;
            x /= p;
            place *= p;
        }
        Elem(out)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        match &self.0.tables {
            None => Elem(((a.0 as u64 * b.0 as u64) % self.0.characteristic as u64) as u32),
            Some(t) => {
                let n = self.0.order - 1;
                let e = t.log[a.0 as usize] + t.log[b.0 as usize];
                Elem(t.exp[(if e >= n { e - n } else { e }) as usize])
            }
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            None => self.pow(a, (self.0.order - 2) as u64),
            Some(t) => {
                let n = self.0.order - 1;
                let l = t.log[a.0 as usize];
                Elem(t.exp[((n - l) % n) as usize])
            }
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All `q - 1` nonzero elements in ascending canonical order.
    pub fn units(&self) -> Vec<Elem> {
        (1..self.0.order).map(Elem).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order).map(Elem)
    }

    /// Writes an element as its canonical index.
    pub fn fmt_elem(&self, a: Elem) -> String {
        a.0.to_string()
    }
}

/// A field element that knows its field; arithmetic between elements of
/// different fields is rejected.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    elem: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.elem.0, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elem.0)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "operands live in {} and {}",
                self.field, other.field
            )))
        }
    }

    fn wrap(&self, elem: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            elem,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.elem, other.elem)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.elem))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.elem)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.elem, e))
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.elem)
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}

// Dense polynomials over F_p, constant term first, used only to validate
// moduli and build log tables.

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut acc = 1u64;
    let mut base = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p) as u64;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        for (i, &mc) in m.iter().enumerate() {
            let sub = (c as u64 * mc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Rabin-style test: `m` of degree `k` is irreducible iff it has no common
/// factor with `x^{p^i} - x` for `1 <= i <= k/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k <= 1 {
        return k == 1;
    }
    let x = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=k / 2 {
        // frob <- frob^p mod m
        let mut acc = vec![1u32];
        let mut base = frob.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, m, p);
            }
            base = poly_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        frob = acc;
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = poly_gcd(m, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn build_log_tables(spec: &FieldSpec) -> LogTables {
    let p = spec.characteristic;
    let q = spec.order;
    let k = spec.extension_degree as usize;
    let encode = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let decode = |mut v: u32| -> Vec<u32> {
        let mut c: Vec<u32> = (0..k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect();
        trim(&mut c);
        c
    };
    let n = (q - 1) as usize;
    for candidate in 2..q {
        let g = decode(candidate);
        let mut exp = Vec::with_capacity(n);
        let mut cur = vec![1u32];
        loop {
            exp.push(encode(&cur));
            cur = poly_mulmod(&cur, &g, &spec.modulus, p);
            if cur == [1] {
                break;
            }
        }
        if exp.len() == n {
            let mut log = vec![0u32; q as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return LogTables { exp, log };
        }
    }
    // GF(2^1) never reaches here; every other field has a generator >= 2.
    LogTables {
        exp: vec![1],
        log: vec![0, 0],
    }
}
