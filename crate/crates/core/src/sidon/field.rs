//! Table-driven arithmetic in GF(p^m) for p^m <= 256.

use crate::error::{Error, Result};

pub const MAX_FIELD_ORDER: u64 = 256;

/// Factors `q` as `p^m`, or `None` when `q` has two distinct prime factors
/// (or is below 2).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn smallest_prime_factor(x: u64) -> u64 {
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    x
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            out.push(d);
            while x.is_multiple_of(d) {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// GF(p^m). Elements are the integers `0..q`; element `e` stands for the
/// polynomial whose base-`p` digits are its coefficients, lowest degree first.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: u32,
    /// Monic primitive modulus, lowest degree first, length m + 1.
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u16>,
    add: Vec<u16>,
    neg: Vec<u16>,
}

impl FiniteField {
    /// Builds GF(q) for a prime power `q <= 256`, using the first primitive
    /// modulus in lexicographic coefficient order.
    pub fn new(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::OutOfRange {
                what: "field order",
                value: q,
                max: MAX_FIELD_ORDER,
            });
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = first_primitive_modulus(p, m);

        let digits = |e: u32| -> Vec<u32> {
            let mut d = vec![0; m as usize];
            let mut rest = e;
            for slot in d.iter_mut() {
                *slot = rest % p;
                rest /= p;
            }
            d
        };
        let pack = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u16; (q * q) as usize];
        let mut neg = vec![0u16; q as usize];
        for a in 0..q {
            let da = digits(a);
            neg[a as usize] = pack(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = pack(&sum) as u16;
            }
        }

        // Powers of the root x of the modulus.
        let mut exp = vec![0u16; (q - 1) as usize];
        let mut log = vec![0u16; q as usize];
        let mut cur = vec![0u32; m as usize];
        cur[0] = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            let e = pack(&cur);
            *slot = e as u16;
            log[e as usize] = i as u16;
            cur = times_x(&cur, &modulus, p);
        }
        Ok(FiniteField {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            add,
            neg,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as u32 + self.log[b as usize] as u32) % (self.q - 1);
        self.exp[k as usize] as u32
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let k = (self.q - 1 - self.log[a as usize] as u32) % (self.q - 1);
        Some(self.exp[k as usize] as u32)
    }
}

/// Multiplies a residue (lowest degree first, length m) by x modulo the monic
/// `modulus` of degree m.
fn times_x(cur: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = cur.len();
    let top = cur[m - 1];
    let mut next = vec![0u32; m];
    for t in (1..m).rev() {
        next[t] = cur[t - 1];
    }
    for (t, slot) in next.iter_mut().enumerate() {
        // x^m = -(c_0 + ... + c_{m-1} x^{m-1})
        *slot = (*slot + (p - modulus[t] % p) * top) % p;
    }
    next
}

fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let m = a.len();
    let mut acc = vec![0u32; m];
    // Horner over the digits of b, highest first.
    for t in (0..m).rev() {
        acc = times_x(&acc, modulus, p);
        for (slot, &x) in acc.iter_mut().zip(a) {
            *slot = (*slot + x * b[t]) % p;
        }
    }
    acc
}

fn powmod_x(exponent: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut base = vec![0u32; m];
    if m == 1 {
        base[0] = (p - modulus[0] % p) % p;
    } else {
        base[1] = 1;
    }
    let mut result = vec![0u32; m];
    result[0] = 1;
    let mut e = exponent;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, modulus, p);
        }
        base = mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    result
}

/// First monic degree-`m` polynomial over GF(p), scanning non-leading
/// coefficient vectors `(c_{m-1}, ..., c_0)` in lexicographic order, whose
/// root has multiplicative order `p^m - 1`. Returned lowest degree first.
fn first_primitive_modulus(p: u32, m: u32) -> Vec<u32> {
    let group = (p as u64).pow(m) - 1;
    let factors = prime_factors(group);
    let count = (p as u64).pow(m);
    for code in 0..count {
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut rest = code;
        for slot in coeffs.iter_mut().take(m as usize) {
            *slot = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[m as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let one = {
            let mut v = vec![0u32; m as usize];
            v[0] = 1;
            v
        };
        if powmod_x(group, &coeffs, p) != one {
            continue;
        }
        if factors.iter().all(|&r| powmod_x(group / r, &coeffs, p) != one) {
            return coeffs;
        }
    }
    unreachable!("every finite field has a primitive element")
}
