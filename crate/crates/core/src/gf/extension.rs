use super::{poly, FieldElement, FieldSpec};

/// `GF(q^m)` realised as polynomials of degree `< m` over a base field
/// `GF(q)`, modulo the smallest monic irreducible of degree `m`.
///
/// Elements are coefficient vectors of length `m`, lowest degree first, so
/// `basis_element(i)` is `x^i`. Only used by the rank-metric codes, where the
/// extension degree is small.
#[derive(Clone, Debug)]
pub struct ExtensionField {
    base: FieldSpec,
    m: usize,
    modulus: Vec<FieldElement>,
}

impl ExtensionField {
    pub fn new(base: &FieldSpec, m: usize) -> Self {
        assert!(m >= 1, "extension degree must be positive");
        ExtensionField {
            base: base.clone(),
            m,
            modulus: poly::smallest_irreducible(base, m),
        }
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[FieldElement] {
        &self.modulus
    }

    pub fn zero(&self) -> Vec<FieldElement> {
        vec![0; self.m]
    }

    pub fn one(&self) -> Vec<FieldElement> {
        self.basis_element(0)
    }

    pub fn basis_element(&self, i: usize) -> Vec<FieldElement> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// The element whose coordinates are the base-`q` digits of `index`,
    /// lowest degree first.
    pub fn from_index(&self, mut index: u64) -> Vec<FieldElement> {
        let q = self.base.order() as u64;
        (0..self.m)
            .map(|_| {
                let d = (index % q) as FieldElement;
                index /= q;
                d
            })
            .collect()
    }

    pub fn add(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect()
    }

    pub fn sub(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.base.sub(x, y))
            .collect()
    }

    pub fn mul(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let mut r = poly::rem(&self.base, &poly::mul(&self.base, a, b), &self.modulus);
        r.resize(self.m, 0);
        r
    }

    pub fn pow(&self, a: &[FieldElement], mut e: u64) -> Vec<FieldElement> {
        let mut acc = self.one();
        let mut sq = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        acc
    }

    /// `a^(q^j)`.
    pub fn frobenius(&self, a: &[FieldElement], j: u32) -> Vec<FieldElement> {
        let q = self.base.order() as u64;
        let mut out = a.to_vec();
        for _ in 0..j {
            out = self.pow(&out, q);
        }
        out
    }
}
