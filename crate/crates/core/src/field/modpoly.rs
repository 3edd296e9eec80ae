//! Dense polynomials over a prime field F_p, stored as ascending coefficient
//! vectors with no trailing zeros. Only what irreducibility testing needs.

pub(crate) type DensePoly = Vec<u32>;

fn trim(mut a: DensePoly) -> DensePoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is 2 or 3: every nonzero residue is its own inverse.
    debug_assert!(!a.is_multiple_of(p));
    a % p
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> DensePoly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Remainder of `a` modulo `m` (m nonzero).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> DensePoly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod_p(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - c * mi % p) % p;
            }
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> DensePoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> DensePoly {
    let mut result = vec![1u32];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> DensePoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// x^(p^j) mod m.
fn frobenius_power_of_x(j: u32, m: &[u32], p: u32) -> DensePoly {
    let mut cur = rem(&[0, 1], m, p);
    for _ in 0..j {
        cur = pow_mod(&cur, p as u64, m, p);
    }
    cur
}

/// Rabin's test: monic `m` of degree n is irreducible over F_p iff
/// x^(p^n) = x mod m and gcd(x^(p^(n/r)) - x, m) = 1 for every prime r | n.
pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    if sub(&frobenius_power_of_x(n as u32, m, p), &x, p) != Vec::<u32>::new() {
        return false;
    }
    for r in crate::numtheory::prime_factors(n as u64) {
        let h = sub(&frobenius_power_of_x(n as u32 / r as u32, m, p), &x, p);
        if gcd(&h, m, p).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_irreducible(m: &[u32], p: u32) -> bool {
        // Trial division by every monic polynomial of degree 1..=n/2.
        let n = m.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as usize).pow(d as u32);
            for v in 0..count {
                let mut f: Vec<u32> = (0..d).map(|i| (v / (p as usize).pow(i as u32)) as u32 % p).collect();
                f.push(1);
                if rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_matches_trial_division() {
        for p in [2u32, 3] {
            for n in 2..=6usize {
                let count = (p as usize).pow(n as u32);
                for v in 0..count {
                    let mut m: Vec<u32> = (0..n).map(|i| (v / (p as usize).pow(i as u32)) as u32 % p).collect();
                    m.push(1);
                    assert_eq!(is_irreducible(&m, p), brute_irreducible(&m, p), "p={p} m={m:?}");
                }
            }
        }
    }
}
