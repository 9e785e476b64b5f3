use num_bigint::BigUint;

use super::ConstructError;
use crate::gf::{ExtensionField, FieldElement, FieldSpec, MatrixGF, Subspace};

/// A Gabidulin code of `a x b` matrices over `GF(q)` with minimum rank
/// distance `d`.
///
/// With `m = max(a, b)` and `n' = min(a, b)`, codeword number `i` is the
/// evaluation of the q-linearized polynomial `f(x) = sum_j f_j x^{q^j}`,
/// `j < n' - d + 1`, at the points `1, x, ..., x^{n'-1}` of `GF(q^m)`. The
/// coefficients `f_j` are read from the base-`q` digits of `i`, least
/// significant first, `m` digits per coefficient. Each evaluation becomes a
/// column of an `m x n'` matrix, transposed when `a < b`.
#[derive(Debug, Clone)]
pub struct MrdCode {
    field: FieldSpec,
    ext: ExtensionField,
    a: usize,
    b: usize,
    d: usize,
    k_coeffs: usize,
    /// `powers[i][j] = g_i^{q^j}`.
    powers: Vec<Vec<Vec<FieldElement>>>,
}

pub fn gabidulin_mrd(
    field: &FieldSpec,
    a: usize,
    b: usize,
    d: usize,
) -> Result<MrdCode, ConstructError> {
    let small = a.min(b);
    if a == 0 || b == 0 {
        return Err(ConstructError::ParamViolation(
            "matrix dimensions must be positive".into(),
        ));
    }
    if d == 0 || d > small {
        return Err(ConstructError::InvalidDistance { d, max: small });
    }
    let m = a.max(b);
    let ext = ExtensionField::new(field, m);
    let k_coeffs = small - d + 1;
    let powers = (0..small)
        .map(|i| {
            let g = ext.basis_element(i);
            (0..k_coeffs).map(|j| ext.frobenius(&g, j as u32)).collect()
        })
        .collect();
    Ok(MrdCode {
        field: field.clone(),
        ext,
        a,
        b,
        d,
        k_coeffs,
        powers,
    })
}

impl MrdCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn min_distance(&self) -> usize {
        self.d
    }

    /// `K = max(a,b) (min(a,b) - d + 1)`; the code has `q^K` codewords.
    pub fn dimension(&self) -> usize {
        self.ext.degree() * self.k_coeffs
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.field.order()).pow(self.dimension() as u32)
    }

    /// Number of codewords when it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.dimension() as u32)
    }

    /// Codeword from explicit polynomial coefficients in `GF(q^m)`.
    pub fn codeword_from_coefficients(&self, coeffs: &[Vec<FieldElement>]) -> MatrixGF {
        assert_eq!(coeffs.len(), self.k_coeffs);
        let m = self.ext.degree();
        let small = self.powers.len();
        let mut mat = MatrixGF::zeros(&self.field, m, small);
        for (i, row) in self.powers.iter().enumerate() {
            let mut value = self.ext.zero();
            for (fj, gij) in coeffs.iter().zip(row) {
                value = self.ext.add(&value, &self.ext.mul(fj, gij));
            }
            for (r, &c) in value.iter().enumerate() {
                mat.set(r, i, c);
            }
        }
        if self.a < self.b {
            mat.transpose()
        } else {
            mat
        }
    }

    /// The `index`-th codeword; `index` must be below [`Self::size`].
    pub fn codeword(&self, index: u64) -> MatrixGF {
        let m = self.ext.degree() as u32;
        let per = (self.field.order() as u64).pow(m);
        let mut rest = index;
        let coeffs: Vec<_> = (0..self.k_coeffs)
            .map(|_| {
                let c = self.ext.from_index(rest % per);
                rest /= per;
                c
            })
            .collect();
        debug_assert_eq!(rest, 0, "codeword index out of range");
        self.codeword_from_coefficients(&coeffs)
    }

    /// All codewords in index order, generated lazily.
    ///
    /// Panics if the code has more than `u64::MAX` codewords.
    pub fn iter(&self) -> impl Iterator<Item = MatrixGF> + '_ {
        let n = self.size_u64().expect("code too large to index with u64");
        (0..n).map(move |i| self.codeword(i))
    }
}

/// Row space of `[I_k | A]`.
pub fn lift(a: &MatrixGF) -> Subspace {
    let f = a.field();
    let k = a.rows();
    let n = k + a.cols();
    let mut m = MatrixGF::zeros(f, k, n);
    for r in 0..k {
        m.set(r, r, 1);
        for c in 0..a.cols() {
            m.set(r, k + c, a.get(r, c));
        }
    }
    Subspace::from_rows(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn min_pairwise_rank(code: &MrdCode) -> usize {
        let words: Vec<_> = code.iter().collect();
        let mut best = usize::MAX;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                best = best.min(words[i].sub(&words[j]).unwrap().rank());
            }
        }
        best
    }

    #[test]
    fn small_codes() {
        let c = gabidulin_mrd(&gf(2), 2, 2, 2).unwrap();
        assert_eq!(c.size_u64(), Some(4));
        assert_eq!(min_pairwise_rank(&c), 2);

        let c = gabidulin_mrd(&gf(2), 1, 1, 1).unwrap();
        let words: Vec<_> = c.iter().map(|w| w.as_slice().to_vec()).collect();
        assert_eq!(words, vec![vec![0], vec![1]]);

        let c = gabidulin_mrd(&gf(2), 2, 2, 1).unwrap();
        let mut words: Vec<_> = c.iter().map(|w| w.into_vec()).collect();
        words.sort();
        words.dedup();
        assert_eq!(words.len(), 16);
    }

    #[test]
    fn exhaustive_distance_binary_up_to_three() {
        for a in 1..=3 {
            for b in 1..=3 {
                for d in 1..=a.min(b) {
                    let c = gabidulin_mrd(&gf(2), a, b, d).unwrap();
                    assert_eq!(c.dimension(), a.max(b) * (a.min(b) - d + 1));
                    let w = c.codeword(0);
                    assert_eq!((w.rows(), w.cols()), (a, b));
                    if c.size_u64().unwrap() > 1 {
                        assert!(min_pairwise_rank(&c) >= d, "a={a} b={b} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_distance() {
        assert!(matches!(
            gabidulin_mrd(&gf(2), 2, 3, 3),
            Err(ConstructError::InvalidDistance { .. })
        ));
    }

    #[test]
    fn lifting() {
        let f = gf(2);
        let zero = MatrixGF::zeros(&f, 2, 2);
        let u = lift(&zero);
        assert_eq!(u.basis().row(0), &[1, 0, 0, 0]);
        assert_eq!(u.basis().row(1), &[0, 1, 0, 0]);
        let one = MatrixGF::from_vec(&f, 1, 1, vec![1]).unwrap();
        assert_eq!(lift(&one).basis().as_slice(), &[1, 1]);
    }
}
