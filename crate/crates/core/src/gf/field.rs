use std::fmt;
use std::sync::Arc;

use super::poly;
use super::GfError;

/// A field element in its canonical integer form.
///
/// For `GF(p^e)` the integer `v = c_0 + c_1 p + ... + c_{e-1} p^{e-1}` encodes
/// the polynomial `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` modulo the field
/// modulus. Zero is `0` and one is `1` in every field.
pub type FieldElement = u32;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// The finite field `GF(p^e)` with a deterministic modulus.
///
/// Cloning is cheap; the arithmetic tables are shared. Two specs built for the
/// same order are always equal, because the modulus is the lexicographically
/// smallest monic irreducible polynomial of degree `e` over `GF(p)`.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FieldSpec {
    /// Builds `GF(q)`; `q` must be a prime power in `[2, 2^20]`.
    pub fn new(q: u64) -> Result<Self, GfError> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(GfError::UnsupportedOrder(q));
        }
        let (p, e) = prime_power(q).ok_or(GfError::NotAPrimePower(q))?;
        let prime = Self::prime(p as u32);
        if e == 1 {
            return Ok(prime);
        }
        let modulus = poly::smallest_irreducible(&prime, e as usize);
        Ok(Self::with_modulus(p as u32, e, modulus))
    }

    fn prime(p: u32) -> Self {
        // x - 0: arithmetic is plain integer arithmetic mod p
        Self::with_modulus(p, 1, vec![0, 1])
    }

    fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(e);
        let mut inner = Inner {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        inner.build_tables();
        FieldSpec {
            inner: Arc::new(inner),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients over `GF(p)`, lowest degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElement {
        0
    }

    pub fn one(&self) -> FieldElement {
        1
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a < self.inner.q
    }

    /// Coefficient vector of `a` over `GF(p)`, lowest degree first.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        let p = self.inner.p;
        let mut v = a;
        (0..self.inner.e)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.inner.p;
        coeffs.iter().rev().fold(0, |acc, &c| acc * p + c % p)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.e == 1 {
            return (a + b) % inner.p;
        }
        digitwise(inner.p, a, b, |x, y| (x + y) % inner.p)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return (inner.p - a) % inner.p;
        }
        digitwise(inner.p, a, 0, |x, _| (inner.p - x) % inner.p)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.p == 2 {
            return a ^ b;
        }
        if inner.e == 1 {
            return (a + inner.p - b) % inner.p;
        }
        digitwise(inner.p, a, b, |x, y| (x + inner.p - y) % inner.p)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let s = inner.log[a as usize] + inner.log[b as usize];
        let n = inner.q - 1;
        inner.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let inner = &*self.inner;
        let n = inner.q - 1;
        Ok(inner.exp[((n - inner.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> FieldElement {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.inner;
        let n = (inner.q - 1) as u64;
        let l = (inner.log[a as usize] as u64 * (exp % n)) % n;
        inner.exp[l as usize]
    }

    /// Multiplication straight from the polynomial definition; used to build
    /// the log tables and as an independent cross-check in tests.
    pub fn mul_by_definition(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.inner.slow_mul(a, b)
    }
}

impl Inner {
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let e = self.e as usize;
        if e == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let da = to_digits(p, a, e);
        let db = to_digits(p, b, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        // reduce by the monic modulus from the top
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (k, &m) in self.modulus[..e].iter().enumerate() {
                let idx = deg - e + k;
                prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
            }
            prod[deg] = 0;
        }
        prod[..e]
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * p + c as u32)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let n = q - 1;
        if q == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        for g in 2..q {
            let mut exp = Vec::with_capacity(n as usize);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.slow_mul(x, g);
                if x == 1 || exp.len() > n as usize {
                    break;
                }
            }
            if exp.len() == n as usize {
                let mut log = vec![0u32; q as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }
}

fn to_digits(p: u32, mut v: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

#[inline]
fn digitwise(p: u32, mut a: u32, mut b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.e == other.inner.e)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_two() {
        let f = FieldSpec::new(2).unwrap();
        assert_eq!((f.characteristic(), f.degree()), (2, 1));
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = FieldSpec::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn six_is_rejected() {
        assert_eq!(FieldSpec::new(6).unwrap_err(), GfError::NotAPrimePower(6));
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new((1 << 20) + 7).is_err());
    }

    #[test]
    fn gf5_inverse_of_two() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(f.inv(2).unwrap(), 3);
        assert_eq!(f.inv(0), Err(GfError::DivisionByZero));
    }

    #[test]
    fn tables_agree_with_definition() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FieldSpec::new(q).unwrap();
            for a in 0..q as u32 {
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.sub(f.add(a, 3 % q as u32), 3 % q as u32), a);
                for b in 0..q as u32 {
                    assert_eq!(f.mul(a, b), f.mul_by_definition(a, b), "q={q} {a}*{b}");
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q - 1), 1);
                }
            }
        }
    }

    #[test]
    fn equal_orders_give_equal_specs() {
        let a = FieldSpec::new(9).unwrap();
        let b = FieldSpec::new(9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), b.modulus());
        assert_ne!(a, FieldSpec::new(3).unwrap());
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
