//! Arithmetic in F_{p^n}, n = 2k, p in {2, 3}, viewed as the quadratic
//! extension F_{q^2} of the subfield F_q, q = p^k.
//!
//! Elements are coefficient vectors over F_p packed into a `u32`:
//!
//! * characteristic 2: bit `i` is the coefficient of `t^i`;
//! * characteristic 3: two bit planes, bit `i` of the low half marks a
//!   coefficient equal to 1 and bit `i` of the high half a coefficient equal
//!   to 2.
//!
//! The dense index of an element is the radix-p integer whose digits are its
//! coefficients. For fields up to [`TABLE_LIMIT`] elements, log/antilog tables
//! over the fixed generator make multiplication and powering O(1).

mod modpoly;

use crate::error::{Error, Result};
use crate::numtheory::{mul_mod, prime_factors};

/// Largest field size for which log/antilog tables are built.
pub const TABLE_LIMIT: u64 = 1 << 24;

/// Largest k accepted for p = 2 and p = 3.
pub const MAX_K_CHAR2: u32 = 12;
pub const MAX_K_CHAR3: u32 = 8;

const PLANE: u32 = 16;
const PLANE_MASK: u32 = 0xFFFF;
const THREE_POW_8: u32 = 6561;

/// A field element in packed coefficient form. Only meaningful together with
/// the [`FieldCtx`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elt(u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct LogTables {
    /// `exp[i] = gen^i` for `0 <= i < order`.
    exp: Vec<Elt>,
    /// `log[index(x)]`; entry 0 is unused.
    log: Vec<u32>,
}

/// Immutable description of F_{p^{2k}} together with its precomputed data.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    k: u32,
    n: u32,
    q: u64,
    size: u64,
    modulus: Vec<u32>,
    /// t^n expressed in the basis 1..t^{n-1}.
    t_pow_n: Elt,
    /// Columns of x -> x^p.
    frob_p: Vec<Elt>,
    /// Columns of x -> x^q (k-fold composition of `frob_p`).
    frob_q: Vec<Elt>,
    /// Byte-chunk tables for x -> x^q in characteristic 2.
    frob_q_chunks: Vec<[Elt; 256]>,
    gen: Elt,
    tables: Option<LogTables>,
    /// Characteristic 3 only: packed 8-digit planes -> radix-3 value.
    digits_to_index: Vec<u32>,
    /// Characteristic 3 only: radix-3 value of 8 digits -> packed planes.
    index_to_digits: Vec<(u8, u8)>,
}

#[inline]
fn add3(a1: u64, a2: u64, b1: u64, b2: u64) -> (u64, u64) {
    let t = (a1 | b2) ^ (a2 | b1);
    ((a2 | b2) ^ t, (a1 | b1) ^ t)
}

impl FieldCtx {
    /// Builds F_{p^{2k}}. Without a modulus, the monic irreducible of degree
    /// 2k whose lower coefficients form the smallest radix-p integer is used.
    /// A supplied modulus is given as ascending coefficients `c_0..=c_{2k}`.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        match p {
            2 if k == 0 || k > MAX_K_CHAR2 => return Err(Error::DegreeOverflow { p, k }),
            3 if k == 0 || k > MAX_K_CHAR3 => return Err(Error::DegreeOverflow { p, k }),
            2 | 3 => {}
            _ => return Err(Error::UnsupportedCharacteristic(p)),
        }
        let n = 2 * k;
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|c| c % p).collect();
                if m.len() != n as usize + 1 {
                    return Err(Error::ModulusDegree { expected: n as usize, got: m.len().saturating_sub(1) });
                }
                if m[n as usize] != 1 {
                    return Err(Error::ModulusNotMonic);
                }
                if !modpoly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => smallest_irreducible(p, n),
        };
        Ok(Self::from_modulus(p, k, modulus))
    }

    fn from_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        let n = 2 * k;
        let q = (p as u64).pow(k);
        let size = q * q;
        let mut ctx = FieldCtx {
            p,
            k,
            n,
            q,
            size,
            modulus,
            t_pow_n: Elt::ZERO,
            frob_p: Vec::new(),
            frob_q: Vec::new(),
            frob_q_chunks: Vec::new(),
            gen: Elt::ZERO,
            tables: None,
            digits_to_index: Vec::new(),
            index_to_digits: Vec::new(),
        };
        if p == 3 {
            ctx.build_index_tables();
        }
        // t^n = -(c_0 + c_1 t + ... + c_{n-1} t^{n-1}).
        let neg_low: Vec<u32> = ctx.modulus[..n as usize].iter().map(|&c| (p - c) % p).collect();
        ctx.t_pow_n = ctx.from_coeffs(&neg_low);

        let basis: Vec<Elt> = (0..n).map(|i| ctx.basis(i)).collect();
        ctx.frob_p = basis.iter().map(|&b| ctx.pow_slow(b, p as u64)).collect();
        ctx.frob_q = basis.iter().map(|&b| ctx.pow_slow(b, q)).collect();
        if p == 2 {
            ctx.frob_q_chunks = (0..n.div_ceil(8))
                .map(|chunk| {
                    let mut table = [Elt::ZERO; 256];
                    for (byte, slot) in table.iter_mut().enumerate() {
                        let mut acc = Elt::ZERO;
                        for bit in 0..8 {
                            let i = chunk * 8 + bit;
                            if i < n && byte >> bit & 1 == 1 {
                                acc = Elt(acc.0 ^ ctx.frob_q[i as usize].0);
                            }
                        }
                        *slot = acc;
                    }
                    table
                })
                .collect();
        }
        ctx.gen = ctx.find_generator();
        if size <= TABLE_LIMIT {
            ctx.build_log_tables();
        }
        ctx
    }

    fn build_index_tables(&mut self) {
        let mut d2i = vec![0u32; 1 << 16];
        let mut i2d = vec![(0u8, 0u8); THREE_POW_8 as usize];
        for v in 0..THREE_POW_8 {
            let (mut lo, mut hi) = (0u8, 0u8);
            let mut x = v;
            for i in 0..8 {
                match x % 3 {
                    1 => lo |= 1 << i,
                    2 => hi |= 1 << i,
                    _ => {}
                }
                x /= 3;
            }
            i2d[v as usize] = (lo, hi);
            d2i[lo as usize | (hi as usize) << 8] = v;
        }
        self.digits_to_index = d2i;
        self.index_to_digits = i2d;
    }

    fn find_generator(&self) -> Elt {
        let order = self.order();
        let primes = prime_factors(order);
        (1..self.size)
            .map(|i| self.from_index(i as u32))
            .find(|&g| primes.iter().all(|&r| self.pow_slow(g, order / r) != Elt::ONE))
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn build_log_tables(&mut self) {
        let order = self.order() as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![u32::MAX; self.size as usize];
        let mut cur = Elt::ONE;
        for i in 0..order {
            exp.push(cur);
            log[self.index(cur) as usize] = i as u32;
            cur = self.mul_slow(cur, self.gen);
        }
        debug_assert_eq!(cur, Elt::ONE);
        self.tables = Some(LogTables { exp, log });
    }

    // ----- basic accessors -------------------------------------------------

    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// q = p^k, the order of the subfield.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Extension degree over F_p (always 2k).
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Field size p^n = q^2.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Multiplicative group order q^2 - 1.
    pub fn order(&self) -> u64 {
        self.size - 1
    }

    /// Ascending coefficients of the defining modulus (monic, length n + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed generator of the multiplicative group.
    pub fn generator(&self) -> Elt {
        self.gen
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The basis element t^i.
    pub fn basis(&self, i: u32) -> Elt {
        assert!(i < self.n);
        Elt(1 << i)
    }

    /// Image of an integer in the prime field.
    pub fn scalar(&self, c: i64) -> Elt {
        match c.rem_euclid(self.p as i64) {
            0 => Elt::ZERO,
            1 => Elt::ONE,
            _ => Elt(1 << PLANE),
        }
    }

    /// -1 in this field.
    pub fn minus_one(&self) -> Elt {
        self.scalar(-1)
    }

    /// Whether `x` lies in the prime field F_p.
    pub fn is_prime_scalar(&self, x: Elt) -> bool {
        match self.p {
            2 => x.0 <= 1,
            _ => x.0 & !(1 | 1 << PLANE) == 0,
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Elt {
        assert!(coeffs.len() <= self.n as usize, "too many coefficients");
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            match (self.p, c % self.p) {
                (_, 0) => {}
                (2, _) => v |= 1 << i,
                (_, 1) => v |= 1 << i,
                _ => v |= 1 << (i as u32 + PLANE),
            }
        }
        Elt(v)
    }

    /// Ascending coefficients over F_p, length n.
    pub fn coeffs(&self, x: Elt) -> Vec<u32> {
        (0..self.n)
            .map(|i| match self.p {
                2 => x.0 >> i & 1,
                _ => (x.0 >> i & 1) + 2 * (x.0 >> (i + PLANE) & 1),
            })
            .collect()
    }

    /// Dense index in [0, p^n): the coefficients read as a radix-p integer.
    #[inline]
    pub fn index(&self, x: Elt) -> u32 {
        if self.p == 2 {
            return x.0;
        }
        let lo = x.0 & PLANE_MASK;
        let hi = x.0 >> PLANE;
        let key_low = (lo & 0xFF) | (hi & 0xFF) << 8;
        let key_high = (lo >> 8) | (hi >> 8) << 8;
        self.digits_to_index[key_low as usize] + THREE_POW_8 * self.digits_to_index[key_high as usize]
    }

    /// Inverse of [`FieldCtx::index`].
    #[inline]
    pub fn from_index(&self, i: u32) -> Elt {
        debug_assert!((i as u64) < self.size);
        if self.p == 2 {
            return Elt(i);
        }
        let (l0, h0) = self.index_to_digits[(i % THREE_POW_8) as usize];
        let (l1, h1) = self.index_to_digits[(i / THREE_POW_8) as usize];
        let lo = l0 as u32 | (l1 as u32) << 8;
        let hi = h0 as u32 | (h1 as u32) << 8;
        Elt(lo | hi << PLANE)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.size as u32).map(move |i| self.from_index(i))
    }

    /// Human-readable polynomial in t, e.g. `t^2+2t+1`.
    pub fn render(&self, x: Elt) -> String {
        let c = self.coeffs(x);
        let mut parts = Vec::new();
        for i in (0..self.n as usize).rev() {
            if c[i] == 0 {
                continue;
            }
            let coef = c[i].to_string();
            let s = match (i, c[i]) {
                (0, _) => coef,
                (1, 1) => "t".to_string(),
                (1, _) => format!("{coef}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{coef}t^{i}"),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    // ----- arithmetic ------------------------------------------------------

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        let (c1, c2) =
            add3((a.0 & PLANE_MASK) as u64, (a.0 >> PLANE) as u64, (b.0 & PLANE_MASK) as u64, (b.0 >> PLANE) as u64);
        Elt(c1 as u32 | (c2 as u32) << PLANE)
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 {
            a
        } else {
            Elt(a.0 >> PLANE | (a.0 & PLANE_MASK) << PLANE)
        }
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    /// Multiplication by a prime-field scalar given as an integer.
    pub fn scale(&self, a: Elt, c: i64) -> Elt {
        match c.rem_euclid(self.p as i64) {
            0 => Elt::ZERO,
            1 => a,
            _ => self.neg(a),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() || b.is_zero() {
            return Elt::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let order = self.size as u32 - 1;
                let la = t.log[self.index(a) as usize];
                let lb = t.log[self.index(b) as usize];
                let mut s = la + lb;
                if s >= order {
                    s -= order;
                }
                t.exp[s as usize]
            }
            None => self.mul_slow(a, b),
        }
    }

    /// Schoolbook multiplication followed by reduction modulo the modulus.
    fn mul_slow(&self, a: Elt, b: Elt) -> Elt {
        let n = self.n;
        if self.p == 2 {
            let mut acc: u64 = 0;
            for i in 0..n {
                if b.0 >> i & 1 == 1 {
                    acc ^= (a.0 as u64) << i;
                }
            }
            let full = self.t_pow_n.0 as u64;
            for deg in (n..2 * n).rev() {
                if acc >> deg & 1 == 1 {
                    acc ^= 1 << deg;
                    acc ^= full << (deg - n);
                }
            }
            return Elt(acc as u32);
        }
        let (a1, a2) = ((a.0 & PLANE_MASK) as u64, (a.0 >> PLANE) as u64);
        let (mut c1, mut c2) = (0u64, 0u64);
        for i in 0..n {
            if b.0 >> i & 1 == 1 {
                (c1, c2) = add3(c1, c2, a1 << i, a2 << i);
            } else if b.0 >> (i + PLANE) & 1 == 1 {
                (c1, c2) = add3(c1, c2, a2 << i, a1 << i);
            }
        }
        let (r1, r2) = ((self.t_pow_n.0 & PLANE_MASK) as u64, (self.t_pow_n.0 >> PLANE) as u64);
        for deg in (n..2 * n).rev() {
            let s = deg - n;
            if c1 >> deg & 1 == 1 {
                c1 ^= 1 << deg;
                (c1, c2) = add3(c1, c2, r1 << s, r2 << s);
            } else if c2 >> deg & 1 == 1 {
                c2 ^= 1 << deg;
                (c1, c2) = add3(c1, c2, r2 << s, r1 << s);
            }
        }
        Elt(c1 as u32 | (c2 as u32) << PLANE)
    }

    fn pow_slow(&self, a: Elt, mut e: u64) -> Elt {
        let mut result = Elt::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul_slow(result, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        result
    }

    /// a^e for a nonnegative exponent, with 0^0 = 1.
    #[inline]
    pub fn pow_u(&self, a: Elt, e: u64) -> Elt {
        if a.is_zero() {
            return if e == 0 { Elt::ONE } else { Elt::ZERO };
        }
        let order = self.order();
        let e = e % order;
        match &self.tables {
            Some(t) => {
                let la = t.log[self.index(a) as usize] as u64;
                t.exp[mul_mod(la, e, order) as usize]
            }
            None => self.pow_slow(a, e),
        }
    }

    /// a^e for any integer exponent. Nonzero bases reduce the exponent modulo
    /// p^n - 1; 0^e is 0 for e > 0, 1 for e = 0 and an error for e < 0.
    pub fn pow(&self, a: Elt, e: i64) -> Result<Elt> {
        if a.is_zero() {
            return match e {
                0 => Ok(Elt::ONE),
                e if e > 0 => Ok(Elt::ZERO),
                e => Err(Error::ZeroToNegativePower(e)),
            };
        }
        Ok(self.pow_u(a, e.rem_euclid(self.order() as i64) as u64))
    }

    pub fn inv(&self, a: Elt) -> Result<Elt> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let order = self.size as u32 - 1;
                let la = t.log[self.index(a) as usize];
                t.exp[((order - la) % order) as usize]
            }
            None => self.pow_slow(a, self.order() - 1),
        })
    }

    pub fn div(&self, a: Elt, b: Elt) -> Result<Elt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete logarithm to the base of the fixed generator, when tables exist.
    pub fn log(&self, a: Elt) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[self.index(a) as usize] as u64)
    }

    /// gen^i.
    #[inline]
    pub fn gen_pow(&self, i: u64) -> Elt {
        match &self.tables {
            Some(t) => t.exp[(i % self.order()) as usize],
            None => self.pow_slow(self.gen, i % self.order()),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elt) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        let mut ord = self.order();
        for r in prime_factors(self.order()) {
            while ord.is_multiple_of(r) && self.pow_u(a, ord / r) == Elt::ONE {
                ord /= r;
            }
        }
        Ok(ord)
    }

    // ----- Frobenius, trace, norm -------------------------------------------

    fn apply_linear(&self, cols: &[Elt], x: Elt) -> Elt {
        let mut acc = Elt::ZERO;
        for (i, &col) in cols.iter().enumerate() {
            if x.0 >> i & 1 == 1 {
                acc = self.add(acc, col);
            } else if self.p == 3 && x.0 >> (i as u32 + PLANE) & 1 == 1 {
                acc = self.sub(acc, col);
            }
        }
        acc
    }

    /// x^p via the precomputed linear map.
    pub fn frobenius_p(&self, x: Elt) -> Elt {
        self.apply_linear(&self.frob_p, x)
    }

    /// x^q, the conjugate of x over F_q.
    #[inline]
    pub fn frobenius_q(&self, x: Elt) -> Elt {
        if self.p == 2 {
            let mut acc = 0u32;
            for (chunk, table) in self.frob_q_chunks.iter().enumerate() {
                acc ^= table[(x.0 >> (8 * chunk) & 0xFF) as usize].0;
            }
            return Elt(acc);
        }
        self.apply_linear(&self.frob_q, x)
    }

    /// Relative trace x + x^q and norm x^{q+1}, both in F_q.
    pub fn trace_norm(&self, x: Elt) -> (Elt, Elt) {
        let xq = self.frobenius_q(x);
        (self.add(x, xq), self.mul(x, xq))
    }

    pub fn in_subfield(&self, x: Elt) -> bool {
        self.frobenius_q(x) == x
    }

    /// Elements of F_q in index order.
    pub fn subfield_elements(&self) -> Vec<Elt> {
        let mut out: Vec<Elt> = std::iter::once(Elt::ZERO).chain(self.mu_subgroup_unchecked(self.q - 1)).collect();
        out.sort_by_key(|&x| self.index(x));
        out
    }

    /// Absolute trace from F_q to F_p of an element of the subfield:
    /// x + x^p + ... + x^{p^{k-1}}.
    pub fn subfield_abs_trace(&self, x: Elt) -> Result<Elt> {
        if !self.in_subfield(x) {
            return Err(Error::NotInSubfield);
        }
        let mut acc = Elt::ZERO;
        let mut cur = x;
        for _ in 0..self.k {
            acc = self.add(acc, cur);
            cur = self.frobenius_p(cur);
        }
        Ok(acc)
    }

    /// Tr(x^e) for e in {2, 5, 8}, computed from t = Tr(x) and n = N(x) by
    /// the characteristic-3 reduction identities.
    pub fn trace_power_reduction(&self, e: u32, t: Elt, n: Elt) -> Result<Elt> {
        if self.p != 3 {
            return Err(Error::RequiresCharacteristic(3));
        }
        let pw = |a: Elt, i: u64| self.pow_u(a, i);
        let term = |ni: u64, ti: u64| self.mul(pw(n, ni), pw(t, ti));
        Ok(match e {
            2 => self.add(term(0, 2), term(1, 0)),
            5 => self.sub(self.add(term(0, 5), term(1, 3)), term(2, 1)),
            8 => {
                let pos = self.add(term(0, 8), term(1, 6));
                let neg = self.add(self.add(term(2, 4), term(3, 2)), term(4, 0));
                self.sub(pos, neg)
            }
            other => return Err(Error::UnsupportedTraceExponent(other)),
        })
    }

    // ----- subgroups and squares ------------------------------------------

    /// mu_d = {x : x^d = 1} for d | p^n - 1, as powers of gen^{(p^n-1)/d}
    /// starting from 1.
    pub fn mu_subgroup(&self, d: u64) -> Result<Vec<Elt>> {
        if d == 0 || !self.order().is_multiple_of(d) {
            return Err(Error::NotADivisor { d, order: self.order() });
        }
        Ok(self.mu_subgroup_unchecked(d).collect())
    }

    /// A generator of mu_d (d must divide the group order).
    pub fn mu_generator(&self, d: u64) -> Result<Elt> {
        if d == 0 || !self.order().is_multiple_of(d) {
            return Err(Error::NotADivisor { d, order: self.order() });
        }
        Ok(self.gen_pow(self.order() / d))
    }

    fn mu_subgroup_unchecked(&self, d: u64) -> impl Iterator<Item = Elt> + '_ {
        let step = self.gen_pow(self.order() / d);
        let mut cur = Elt::ONE;
        (0..d).map(move |_| {
            let out = cur;
            cur = self.mul(cur, step);
            out
        })
    }

    /// Squareness in F_q (`in_subfield`) or in the whole field; odd
    /// characteristic only.
    pub fn is_square(&self, x: Elt, in_subfield: bool) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::RequiresOddCharacteristic);
        }
        let m = if in_subfield {
            if !self.in_subfield(x) {
                return Err(Error::NotInSubfield);
            }
            self.q
        } else {
            self.size
        };
        Ok(x.is_zero() || self.pow_u(x, (m - 1) / 2) == Elt::ONE)
    }
}

fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    (0..count)
        .map(|v| {
            let mut m: Vec<u32> = (0..n).map(|i| (v / (p as u64).pow(i)) as u32 % p).collect();
            m.push(1);
            m
        })
        .find(|m| modpoly::is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 1, Some(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn f4_default_modulus() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.basis(1);
        assert_eq!(f.mul(t, t), f.add(t, Elt::ONE));
    }

    #[test]
    fn f9_relations() {
        let f = f9();
        let t = f.basis(1);
        assert_eq!(f.mul(t, t), f.minus_one());
        assert_eq!(f.index(f.minus_one()), 2);
        assert_eq!(f.frobenius_q(t), f.neg(t));
        assert_eq!(f.trace_norm(t), (Elt::ZERO, Elt::ONE));
        // Default modulus for F_9 is also t^2 + 1.
        assert_eq!(FieldCtx::new(3, 1, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldCtx::new(5, 1, None).unwrap_err(), Error::UnsupportedCharacteristic(5));
        assert!(matches!(FieldCtx::new(2, 13, None), Err(Error::DegreeOverflow { .. })));
        assert!(matches!(FieldCtx::new(3, 9, None), Err(Error::DegreeOverflow { .. })));
        assert_eq!(FieldCtx::new(2, 1, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus(2));
        assert!(matches!(FieldCtx::new(2, 2, Some(&[1, 1, 1])), Err(Error::ModulusDegree { .. })));
    }

    #[test]
    fn generator_has_full_order_f64() {
        let f = FieldCtx::new(2, 3, None).unwrap();
        let g = f.generator();
        assert_eq!(f.pow_u(g, 63), Elt::ONE);
        for d in [1u64, 3, 7, 9, 21] {
            assert_ne!(f.pow_u(g, d), Elt::ONE, "gen^{d}");
        }
    }

    #[test]
    fn inverse_exhaustive_f64() {
        let f = FieldCtx::new(2, 3, None).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Elt::ONE);
        }
        assert_eq!(f.inv(Elt::ZERO), Err(Error::InverseOfZero));
    }

    #[test]
    fn pow_conventions() {
        let f = f9();
        assert_eq!(f.pow(Elt::ZERO, 0).unwrap(), Elt::ONE);
        assert_eq!(f.pow(Elt::ZERO, 5).unwrap(), Elt::ZERO);
        assert_eq!(f.pow(Elt::ZERO, -1), Err(Error::ZeroToNegativePower(-1)));
        let t = f.basis(1);
        assert_eq!(f.pow(t, -1).unwrap(), f.inv(t).unwrap());
        assert_eq!(f.pow(t, 8).unwrap(), Elt::ONE);
    }

    #[test]
    fn table_and_schoolbook_agree() {
        for (p, k) in [(2, 1), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)] {
            let f = FieldCtx::new(p, k, None).unwrap();
            assert!(f.has_log_tables());
            for a in f.elements() {
                for b in f.elements().step_by(7) {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        for (p, k) in [(2, 2), (3, 2), (3, 3), (3, 5)] {
            let f = FieldCtx::new(p, k, None).unwrap();
            for i in 0..f.size() as u32 {
                let x = f.from_index(i);
                assert_eq!(f.index(x), i);
                let digits = f.coeffs(x);
                let radix = digits.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64);
                assert_eq!(radix, i as u64);
                assert_eq!(f.from_coeffs(&digits), x);
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
            let f = FieldCtx::new(p, k, None).unwrap();
            for x in f.elements() {
                assert_eq!(f.frobenius_q(f.frobenius_q(x)), x);
                assert_eq!(f.frobenius_q(x), f.pow_u(x, f.q()));
                for y in f.elements().step_by(5) {
                    assert_eq!(f.frobenius_q(f.add(x, y)), f.add(f.frobenius_q(x), f.frobenius_q(y)));
                    assert_eq!(f.frobenius_q(f.mul(x, y)), f.mul(f.frobenius_q(x), f.frobenius_q(y)));
                }
            }
        }
    }

    #[test]
    fn frobenius_q_is_k_fold_p_map() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        for x in f.elements() {
            let mut y = x;
            for _ in 0..f.k() {
                y = f.frobenius_p(y);
            }
            assert_eq!(y, f.frobenius_q(x));
        }
        let f64 = FieldCtx::new(2, 3, None).unwrap();
        let g = f64.generator();
        assert_eq!(f64.frobenius_q(g), f64.pow_u(g, 8));
    }

    #[test]
    fn trace_and_norm_land_in_subfield() {
        let f = FieldCtx::new(3, 3, None).unwrap();
        for x in f.elements() {
            let (t, n) = f.trace_norm(x);
            assert!(f.in_subfield(t) && f.in_subfield(n));
        }
        for x in f.subfield_elements() {
            assert_eq!(f.trace_norm(x), (f.scale(x, 2), f.mul(x, x)));
        }
    }

    #[test]
    fn trace_power_identities_f9() {
        let f = f9();
        let t = f.basis(1);
        let (tr, nm) = f.trace_norm(t);
        assert_eq!(f.trace_power_reduction(8, tr, nm).unwrap(), f.minus_one());
        assert_eq!(f.trace_norm(f.pow_u(t, 8)).0, f.minus_one());
        assert_eq!(f.trace_power_reduction(3, tr, nm), Err(Error::UnsupportedTraceExponent(3)));
        let f4 = FieldCtx::new(2, 1, None).unwrap();
        assert!(f4.trace_power_reduction(2, Elt::ZERO, Elt::ONE).is_err());
    }

    #[test]
    fn subgroups() {
        let f16 = FieldCtx::new(2, 2, None).unwrap();
        let mu5 = f16.mu_subgroup(5).unwrap();
        assert_eq!(mu5.len(), 5);
        assert_eq!(mu5[0], Elt::ONE);
        assert_eq!(mu5.iter().filter(|&&x| x == Elt::ONE).count(), 1);
        assert!(mu5.iter().all(|&x| f16.pow_u(x, 5) == Elt::ONE));
        assert_eq!(f16.mu_subgroup(1).unwrap(), vec![Elt::ONE]);
        assert!(matches!(f16.mu_subgroup(4), Err(Error::NotADivisor { .. })));

        let f64 = FieldCtx::new(2, 3, None).unwrap();
        let mu9 = f64.mu_subgroup(9).unwrap();
        let prod = mu9.iter().fold(Elt::ONE, |acc, &x| f64.mul(acc, x));
        assert_eq!(prod, Elt::ONE);
        let mut sorted = mu9.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 9);
        for &a in &mu9 {
            for &b in &mu9 {
                assert!(mu9.contains(&f64.mul(a, b)));
            }
        }
    }

    #[test]
    fn squares() {
        let f = f9();
        assert!(f.is_square(Elt::ZERO, true).unwrap());
        assert!(f.is_square(Elt::ONE, true).unwrap());
        assert!(f.is_square(f.minus_one(), false).unwrap());
        assert!(!f.is_square(f.minus_one(), true).unwrap());
        assert_eq!(f.is_square(f.basis(1), true), Err(Error::NotInSubfield));
        let f4 = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f4.is_square(Elt::ONE, false), Err(Error::RequiresOddCharacteristic));
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldCtx::new(3, 8, None).unwrap();
        assert!(!f.has_log_tables());
        let g = f.generator();
        let x = f.pow_u(g, 12345);
        assert_eq!(f.mul(x, f.inv(x).unwrap()), Elt::ONE);
        assert_eq!(f.frobenius_q(x), f.pow_u(x, f.q()));
    }
}
