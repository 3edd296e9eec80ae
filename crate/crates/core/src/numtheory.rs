//! Small integer helpers used across the crate.

/// Greatest common divisor of the absolute values.
pub fn gcd(a: i64, b: i64) -> u64 {
    gcd_u64(a.unsigned_abs(), b.unsigned_abs())
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Distinct prime divisors of `n` in increasing order (trial division).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Least nonnegative residue of `a` modulo `m`.
pub fn rem_euclid(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// All x in [0, m) with a x = b (mod m), ascending.
pub fn solve_linear(a: u64, b: u64, m: u64) -> Vec<u64> {
    let g = gcd_u64(a % m, m);
    if !b.is_multiple_of(g) {
        return Vec::new();
    }
    let m1 = m / g;
    let x0 = mul_mod(b / g % m1, mod_inverse(a / g % m1, m1).unwrap_or(0), m1);
    (0..g).map(|i| x0 + i * m1).collect()
}

/// `a * b mod m` without overflow for moduli below 2^63.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_congruences() {
        for m in [1u64, 12, 15, 63, 80] {
            for a in 0..m {
                for b in 0..m {
                    let brute: Vec<u64> = (0..m).filter(|&x| (a * x) % m == b).collect();
                    assert_eq!(solve_linear(a, b, m), brute, "a={a} b={b} m={m}");
                }
            }
        }
    }

    #[test]
    fn gcd_handles_signs() {
        assert_eq!(gcd(-4, 6), 2);
        assert_eq!(gcd(0, 7), 7);
        assert_eq!(gcd(15, 15), 15);
    }

    #[test]
    fn factor_and_divisors() {
        assert_eq!(prime_factors(63), vec![3, 7]);
        assert_eq!(prime_factors(65535), vec![3, 5, 17, 257]);
        assert_eq!(divisors(63), vec![1, 3, 7, 9, 21, 63]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 8), None);
        for m in 2..60u64 {
            for a in 1..m {
                if let Some(i) = mod_inverse(a, m) {
                    assert_eq!(a * i % m, 1);
                } else {
                    assert_ne!(gcd_u64(a, m), 1);
                }
            }
        }
    }
}
