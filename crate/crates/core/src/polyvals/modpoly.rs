//! Dense polynomials over `Z/pZ`, coefficients low degree first.

use crate::primes::{inv_mod, mul_mod};

/// Residues at or below which roots mod `p` are found by scanning.
const SCAN_BELOW: u64 = 64;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("leading coefficient is a unit");
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul_mod(r[top], inv, p);
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let j = top - db + i;
                r[j] = (r[j] + p - mul_mod(c, bi, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(ai, bj, p)) % p;
        }
    }
    rem(&trim(out), f, p)
}

fn pow_rem(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, f, p);
        }
        b = mul_rem(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
    trim(out)
}

fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Roots mod `p` of a polynomial already reduced mod `p` and trimmed.
/// `None` when the polynomial vanishes identically (every residue is a root).
pub(crate) fn roots_mod_prime(f: &[u64], p: u64) -> Option<Vec<u64>> {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return None;
    }
    if f.len() == 1 {
        return Some(Vec::new());
    }
    if p <= SCAN_BELOW {
        return Some((0..p).filter(|&r| eval(&f, r, p) == 0).collect());
    }
    // product of the distinct linear factors: gcd(f, X^p − X)
    let xp = pow_rem(&[0, 1], p, &f, p);
    let g = gcd(&f, &sub(&xp, &[0, 1], p), p);
    let mut roots = Vec::with_capacity(g.len().saturating_sub(1));
    split(g, p, &mut roots);
    roots.sort_unstable();
    Some(roots)
}

/// Splits a squarefree product of linear factors by equal-degree splitting,
/// trying the shifts `a = 0, 1, 2, …` in turn.
fn split(g: Vec<u64>, p: u64, out: &mut Vec<u64>) {
    match g.len() {
        0 | 1 => return,
        2 => {
            let inv = inv_mod(g[1], p).expect("unit leading coefficient");
            out.push(mul_mod(p - g[0], inv, p));
            return;
        }
        _ => {}
    }
    for a in 0..p {
        let h = pow_rem(&[a, 1], (p - 1) / 2, &g, p);
        let d = gcd(&g, &sub(&h, &[1], p), p);
        if d.len() > 1 && d.len() < g.len() {
            let other = quotient(&g, &d, p);
            split(d, p, out);
            split(other, p, out);
            return;
        }
    }
    unreachable!("equal-degree splitting always finds a shift for odd p")
}

fn quotient(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p).expect("unit leading coefficient");
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for top in (db..a.len()).rev() {
        let c = mul_mod(r[top], inv, p);
        q[top - db] = c;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let j = top - db + i;
                r[j] = (r[j] + p - mul_mod(c, bi, p)) % p;
            }
        }
    }
    trim(q)
}

/// `F(x) mod m` for integer coefficients, `m < 2^63`.
pub(crate) fn eval_mod(coeffs: &[i64], x: u64, m: u64) -> u64 {
    let x = x % m;
    coeffs.iter().rev().fold(0u64, |acc, &c| {
        let c = (c as i128).rem_euclid(m as i128) as u64;
        ((mul_mod(acc, x, m) as u128 + c as u128) % m as u128) as u64
    })
}

/// Reduces integer coefficients mod `p`.
pub(crate) fn reduce_coeffs(coeffs: &[i64], p: u64) -> Vec<u64> {
    coeffs.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::roots_brute;
    use crate::primes::primes_up_to;

    #[test]
    fn splitting_matches_scan() {
        let polys: [&[i64]; 5] = [&[1, 0, 1], &[-2, 0, 0, 1], &[1, 1, 1, 1, 1], &[3, -7, 0, 2, 0, 5], &[0, 0, 1]];
        for f in polys {
            for p in primes_up_to(2000) {
                let red = reduce_coeffs(f, p);
                let got = roots_mod_prime(&red, p).unwrap();
                assert_eq!(got, roots_brute(f, p), "f = {f:?}, p = {p}");
            }
        }
        assert_eq!(roots_mod_prime(&[0, 0], 7), None);
    }
}
