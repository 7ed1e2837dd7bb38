//! Singer perfect difference sets from the cubic extension GF(q^3) / GF(q).

use serde::{Deserialize, Serialize};

use super::field::{prime_factors, FiniteField};
use crate::error::Result;

/// A set `D` of `q + 1` residues mod `v = q^2 + q + 1` in which every
/// nonzero residue is `x - y` for exactly one ordered pair of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSet {
    pub v: u64,
    pub q: u64,
    pub elements: Vec<u64>,
}

impl DifferenceSet {
    /// Brute-force check of the perfect-difference property.
    pub fn is_perfect(&self) -> bool {
        perfect_difference_check(&self.elements, self.v)
    }
}

pub(crate) fn perfect_difference_check(elements: &[u64], v: u64) -> bool {
    let mut hits = vec![0u32; v as usize];
    for &x in elements {
        for &y in elements {
            if x != y {
                hits[((x + v - y) % v) as usize] += 1;
            }
        }
    }
    hits[0] == 0 && hits[1..].iter().all(|&h| h == 1)
}

/// Element `c0 + c1 t + c2 t^2` of GF(q)[t] / (t^3 + a2 t^2 + a1 t + a0).
type Cubic = [u32; 3];

struct CubicExt<'f> {
    base: &'f FiniteField,
    /// `[a0, a1, a2]`
    low: [u32; 3],
}

impl CubicExt<'_> {
    fn times_t(&self, x: Cubic) -> Cubic {
        let f = self.base;
        let top = x[2];
        // t^3 = -(a0 + a1 t + a2 t^2)
        [
            f.sub(0, f.mul(top, self.low[0])),
            f.sub(x[0], f.mul(top, self.low[1])),
            f.sub(x[1], f.mul(top, self.low[2])),
        ]
    }

    fn mul(&self, x: Cubic, y: Cubic) -> Cubic {
        let f = self.base;
        let mut acc = [0, 0, 0];
        for k in (0..3).rev() {
            acc = self.times_t(acc);
            for t in 0..3 {
                acc[t] = f.add(acc[t], f.mul(x[t], y[k]));
            }
        }
        acc
    }

    fn pow_t(&self, mut e: u64) -> Cubic {
        let mut base = [0, 1, 0];
        let mut result = [1, 0, 0];
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

/// Singer difference set for a prime power `q <= 256`, in canonical form:
/// the lexicographically least sorted rotation.
pub fn singer_difference_set(q: u64) -> Result<DifferenceSet> {
    let field = FiniteField::new(q)?;
    let ext = primitive_cubic(&field);
    let v = q * q + q + 1;

    // t^i lies in span{1, t} exactly when its t^2 coordinate vanishes; since
    // t^v is a GF(q) scalar this depends only on i mod v.
    let mut elements = Vec::with_capacity(q as usize + 1);
    let mut cur: Cubic = [1, 0, 0];
    for i in 0..v {
        if cur[2] == 0 {
            elements.push(i);
        }
        cur = ext.times_t(cur);
    }
    debug_assert_eq!(elements.len() as u64, q + 1);

    Ok(DifferenceSet {
        v,
        q,
        elements: least_rotation(&elements, v),
    })
}

/// Lexicographically least sorted translate of `set` mod `v`. The least
/// translate always contains 0, so only shifts that send an element to 0
/// need comparing.
pub(crate) fn least_rotation(set: &[u64], v: u64) -> Vec<u64> {
    set.iter()
        .map(|&d| {
            let mut r: Vec<u64> = set.iter().map(|&x| (x + v - d) % v).collect();
            r.sort_unstable();
            r
        })
        .min()
        .unwrap_or_default()
}

/// First monic cubic `t^3 + a2 t^2 + a1 t + a0` over GF(q), scanning
/// `(a2, a1, a0)` lexicographically by element label, whose root generates
/// GF(q^3)*.
fn primitive_cubic(field: &FiniteField) -> CubicExt<'_> {
    let q = field.order() as u64;
    let group = q * q * q - 1;
    let factors = prime_factors(group);
    for code in 0..q * q * q {
        let a2 = (code / (q * q)) as u32;
        let a1 = ((code / q) % q) as u32;
        let a0 = (code % q) as u32;
        if a0 == 0 {
            continue;
        }
        let ext = CubicExt {
            base: field,
            low: [a0, a1, a2],
        };
        if ext.pow_t(group) != [1, 0, 0] {
            continue;
        }
        if factors.iter().all(|&r| ext.pow_t(group / r) != [1, 0, 0]) {
            return ext;
        }
    }
    unreachable!("GF(q^3) has a primitive element with a monic cubic minimal polynomial")
}
