//! Dense polynomials over a [`FieldSpec`], coefficients lowest degree first.
//!
//! Only what the modulus search and the extension fields need.

use super::{FieldElement, FieldSpec};

pub fn trim(a: &mut Vec<FieldElement>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Degree of `a`, `None` for the zero polynomial.
pub fn degree(a: &[FieldElement]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn mul(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("leading coefficient is nonzero");
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (k, &bk) in b[..=db].iter().enumerate() {
            r[shift + k] = f.sub(r[shift + k], f.mul(c, bk));
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomial of the given degree whose non-leading coefficients are
/// the base-`q` digits of `index`, with the constant term most significant.
fn monic_from_index(q: u64, deg: usize, mut index: u64) -> Vec<FieldElement> {
    let mut coeffs = vec![0; deg + 1];
    coeffs[deg] = 1;
    for slot in (0..deg).rev() {
        coeffs[slot] = (index % q) as FieldElement;
        index /= q;
    }
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(f: &FieldSpec, a: &[FieldElement]) -> bool {
    let Some(deg) = degree(a) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    let q = f.order() as u64;
    for d in 1..=deg / 2 {
        for idx in 0..q.pow(d as u32) {
            let divisor = monic_from_index(q, d, idx);
            if rem(f, a, &divisor).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `deg`
/// over `f`, comparing coefficients from the constant term upward.
pub fn smallest_irreducible(f: &FieldSpec, deg: usize) -> Vec<FieldElement> {
    let q = f.order() as u64;
    (0..q.pow(deg as u32))
        .map(|idx| monic_from_index(q, deg, idx))
        .find(|cand| is_irreducible(f, cand))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_quadratics() {
        let f = FieldSpec::new(2).unwrap();
        // enumerate all four monic quadratics; only x^2+x+1 is irreducible
        let irreducible: Vec<_> = (0..4)
            .map(|i| monic_from_index(2, 2, i))
            .filter(|p| is_irreducible(&f, p))
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn degree_one_is_x() {
        let f = FieldSpec::new(5).unwrap();
        assert_eq!(smallest_irreducible(&f, 1), vec![0, 1]);
    }

    #[test]
    fn cubic_over_gf2() {
        let f = FieldSpec::new(2).unwrap();
        // (1,0,1,1) < (1,1,0,1) comparing from the constant term: x^3 + x^2 + 1
        assert_eq!(smallest_irreducible(&f, 3), vec![1, 0, 1, 1]);
    }

    #[test]
    fn rem_and_mul() {
        let f = FieldSpec::new(3).unwrap();
        let a = vec![1, 2, 1]; // (x+1)^2
        let b = vec![1, 1];
        assert!(rem(&f, &a, &b).is_empty());
        assert_eq!(mul(&f, &b, &b), a);
    }
}
