//! Independent oracles over prime fields, written with plain `u64`
//! arithmetic and no library code.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// `X*` by direct enumeration of every parameter tuple.
pub fn naive_points(rows: &[Vec<u32>], p: u64) -> Vec<Vec<u64>> {
    let n = rows[0].len();
    let mut out = BTreeSet::new();
    let mut y = vec![1u64; n];
    loop {
        let point: Vec<u64> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&y)
                    .fold(1, |acc, (&e, &yi)| acc * pow_mod(yi, e as u64, p) % p)
            })
            .collect();
        out.insert(point);
        let mut i = 0;
        while i < n && y[i] == p - 1 {
            y[i] = 1;
            i += 1;
        }
        if i == n {
            break;
        }
        y[i] += 1;
    }
    out.into_iter().collect()
}

/// Exponent vectors of degree `<= d` in `s` variables, in no particular order.
pub fn monomials(s: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, s: usize, left: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == s {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, s, left - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), s, d, &mut out);
    out
}

pub fn eval_monomial(m: &[u32], point: &[u64], p: u64) -> u64 {
    m.iter()
        .zip(point)
        .fold(1, |acc, (&e, &x)| acc * pow_mod(x, e as u64, p) % p)
}

/// Rows indexed by monomials, columns by points.
pub fn evaluation_rows(points: &[Vec<u64>], d: u32, p: u64) -> Vec<Vec<u64>> {
    monomials(points[0].len(), d)
        .iter()
        .map(|m| points.iter().map(|pt| eval_monomial(m, pt, p)).collect())
        .collect()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, i);
        let inv = inv_mod(a[r][c], p);
        for x in &mut a[r] {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    rref(rows, p).0.len()
}

/// Histogram of Hamming weights over every vector of the row space,
/// including zero: `hist[w]` codewords have weight `w`.
pub fn weight_distribution(rows: &[Vec<u64>], p: u64) -> Vec<u64> {
    let (basis, _) = rref(rows, p);
    let m = rows[0].len();
    let mut hist = vec![0u64; m + 1];
    let k = basis.len();
    let mut coeffs = vec![0u64; k];
    loop {
        let weight = (0..m)
            .filter(|&j| basis.iter().zip(&coeffs).fold(0, |acc, (r, &c)| (acc + c * r[j]) % p) != 0)
            .count();
        hist[weight] += 1;
        let mut i = 0;
        while i < k && coeffs[i] == p - 1 {
            coeffs[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        coeffs[i] += 1;
    }
    hist
}

pub fn min_weight(rows: &[Vec<u64>], p: u64) -> u64 {
    weight_distribution(rows, p)
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, &c)| c > 0)
        .unwrap()
        .0 as u64
}

/// Polynomials of degree `<= d` vanishing on `points`: a basis of the
/// kernel of the evaluation map, each as `(exponents, coefficient)` terms.
pub fn interpolation_kernel(points: &[Vec<u64>], d: u32, p: u64) -> Vec<Vec<(Vec<u32>, u64)>> {
    let monos = monomials(points[0].len(), d);
    // One equation per point, one unknown per monomial.
    let eqs: Vec<Vec<u64>> = points
        .iter()
        .map(|pt| monos.iter().map(|m| eval_monomial(m, pt, p)).collect())
        .collect();
    let (red, pivots) = rref(&eqs, p);
    let free: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut terms = vec![(monos[f].clone(), 1u64)];
            for (row, &pc) in red.iter().zip(&pivots) {
                if row[f] != 0 {
                    terms.push((monos[pc].clone(), (p - row[f]) % p));
                }
            }
            terms
        })
        .collect()
}

pub fn eval_terms(terms: &[(Vec<u32>, u64)], point: &[u64], p: u64) -> u64 {
    terms
        .iter()
        .fold(0, |acc, (m, c)| (acc + c * eval_monomial(m, point, p)) % p)
}
