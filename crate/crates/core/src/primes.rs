//! Prime generation, factorization and modular arithmetic helpers.

/// All primes `≤ n`, by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Integer square root, `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Prime factorization `[(p, e)]` of `n ≥ 1` by trial division, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    while p * p <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Trial division against a cached prime list, for many numbers of similar size.
#[derive(Debug, Clone)]
pub struct Factorizer {
    primes: Vec<u64>,
    limit: u64,
}

impl Factorizer {
    /// Prepares to factor numbers up to `max`.
    pub fn new(max: u64) -> Self {
        let limit = isqrt(max);
        Factorizer { primes: primes_up_to(limit), limit }
    }

    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        debug_assert!(isqrt(n) <= self.limit);
        let mut out = Vec::new();
        for &p in &self.primes {
            if p * p > n {
                break;
            }
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    /// Largest prime factor, with `P⁺(1) = 1`.
    pub fn largest_prime_factor(&self, n: u64) -> u64 {
        self.factorize(n).last().map_or(1, |&(p, _)| p)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Reduces a signed integer modulo `m`.
pub fn reduce(a: i128, m: u64) -> u64 {
    a.rem_euclid(m as i128) as u64
}

/// `⌊x^{1/u}⌋` for integer `x`, snapping to an integer when the floating
/// power lands within rounding distance of one.
pub fn root_floor(x: u64, u: f64) -> u64 {
    let y = (x as f64).powf(1.0 / u);
    let r = y.round();
    if (y - r).abs() <= 1e-9 * r.max(1.0) {
        r as u64
    } else {
        y.floor() as u64
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of the odd composite `n` (Pollard–Brent).
fn pollard_brent(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut q, mut g) = (2u64, 2u64, 1u64, 1u64);
        let mut r = 1u64;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Largest prime factor of any `n ≥ 1`, with `P⁺(1) = 1`.
pub fn largest_prime_factor(n: u64) -> u64 {
    let mut n = n;
    let mut best = 1;
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n % p == 0 {
            n /= p;
            best = p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            best = best.max(m);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
    best
}

/// Decides `P⁺(r) ≤ y` for a cofactor `r` all of whose prime factors exceed
/// `sieved`, the bound up to which primes were already divided out.
pub fn cofactor_smooth(r: u64, y: u64, sieved: u64) -> bool {
    if r <= y {
        return true;
    }
    if y <= sieved || (r as u128) < (sieved as u128 + 1).pow(2) {
        return false;
    }
    largest_prime_factor(r) <= y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(1_000_000).len(), 78_498);
    }

    #[test]
    fn factorization_roundtrip() {
        let f = Factorizer::new(1 << 40);
        for n in [1u64, 2, 12, 97, 1001, 65_536, 999_999_937, 600_851_475_143] {
            let a = factorize(n);
            assert_eq!(a, f.factorize(n));
            assert_eq!(a.iter().fold(1u64, |acc, &(p, e)| acc * p.pow(e)), n);
        }
        assert_eq!(f.largest_prime_factor(1), 1);
        assert_eq!(f.largest_prime_factor(600_851_475_143), 6857);
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(3, 200, 1_000_000_007), pow_mod(pow_mod(3, 20, 1_000_000_007), 10, 1_000_000_007));
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(6, 9), None);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(gcd(84, 36), 12);
        assert_eq!(isqrt(99), 9);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
        assert_eq!(reduce(-3, 5), 2);
    }

    #[test]
    fn primality_and_large_factors() {
        let small: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, primes_up_to(199));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert_eq!(largest_prime_factor(1), 1);
        assert_eq!(largest_prime_factor(600_851_475_143), 6857);
        assert_eq!(largest_prime_factor(1_000_000_007 * 998_244_353), 1_000_000_007);
        for n in 2..5000u64 {
            assert_eq!(largest_prime_factor(n), factorize(n).last().unwrap().0);
        }
        assert!(cofactor_smooth(1, 10, 10));
        assert!(!cofactor_smooth(1_000_003 * 1_000_033, 1_000_010, 1000));
        assert!(cofactor_smooth(1_000_003 * 1_000_033, 2_000_000, 1000));
        assert!(cofactor_smooth(1_000_003 * 1_000_033, 1_000_033, 1000));
    }

    #[test]
    fn root_floor_snaps() {
        assert_eq!(root_floor(1_000_000, 1.5), 10_000);
        assert_eq!(root_floor(1_000_000, 2.0), 1000);
        assert_eq!(root_floor(20, 20f64.ln() / 2f64.ln()), 2);
        assert_eq!(root_floor(10, 1.0), 10);
        assert_eq!(root_floor(10, 2.0), 3);
    }
}
