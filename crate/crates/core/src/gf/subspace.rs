use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::{FieldElement, FieldSpec, GfError, MatrixGF};

/// A subspace of `F_q^n`, stored by its unique RREF basis.
///
/// Because the basis is canonical, two subspaces are equal exactly when their
/// bases are equal entry by entry.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: MatrixGF,
}

impl Subspace {
    /// Row space of `m` in canonical form.
    pub fn from_rows(m: &MatrixGF) -> Self {
        let rref = m.rref();
        let mut basis = rref.matrix;
        basis.truncate_rows(rref.rank);
        Subspace {
            ambient: m.cols(),
            basis,
        }
    }

    pub fn zero(field: &FieldSpec, n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: MatrixGF::zeros(field, 0, n),
        }
    }

    pub fn full(field: &FieldSpec, n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: MatrixGF::identity(field, n),
        }
    }

    /// Wraps a matrix the caller guarantees to be a full-rank RREF basis.
    fn from_canonical(basis: MatrixGF) -> Self {
        debug_assert_eq!(basis.rank(), basis.rows());
        Subspace {
            ambient: basis.cols(),
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    /// The canonical `dim x n` RREF basis.
    pub fn basis(&self) -> &MatrixGF {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), GfError> {
        if self.ambient != other.ambient {
            return Err(GfError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.field() != other.field() {
            return Err(GfError::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, GfError> {
        self.check_compatible(other)?;
        let stacked = MatrixGF::vstack(self.field(), self.ambient, [&self.basis, &other.basis])?;
        Ok(Subspace::from_rows(&stacked))
    }

    /// `dim(U + V)` without materializing the canonical basis.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize, GfError> {
        self.check_compatible(other)?;
        Ok(MatrixGF::vstack(self.field(), self.ambient, [&self.basis, &other.basis])?.rank())
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize, GfError> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// `U ∩ V = (U^⊥ + V^⊥)^⊥`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, GfError> {
        Ok(self.dual().sum(&other.dual())?.dual())
    }

    /// Orthogonal complement under `Σ u_i v_i`.
    pub fn dual(&self) -> Subspace {
        let f = self.field().clone();
        let n = self.ambient;
        let k = self.dim();
        // rref pivots of a canonical basis: first nonzero column of each row
        let pivots: Vec<usize> = (0..k)
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .position(|&v| v != 0)
                    .expect("basis rows are nonzero")
            })
            .collect();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut m = MatrixGF::zeros(&f, free.len(), n);
        for (i, &fc) in free.iter().enumerate() {
            m.set(i, fc, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(i, pc, f.neg(self.basis.get(r, fc)));
            }
        }
        Subspace::from_rows(&m)
    }

    /// `true` iff `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, GfError> {
        Ok(self.sum_dim(other)? == other.dim())
    }

    pub fn contains_vector(&self, v: &[FieldElement]) -> Result<bool, GfError> {
        let row = MatrixGF::from_vec(self.field(), 1, v.len(), v.to_vec())?;
        Ok(self.sum_dim(&Subspace::from_rows(&row))? == self.dim())
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.rows().hash(state);
        self.basis.as_slice().hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by ambient dimension, then dimension, then basis entries
/// lexicographically (row-major).
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim(), self.basis.as_slice()).cmp(&(
            other.ambient,
            other.dim(),
            other.basis.as_slice(),
        ))
    }
}

/// Lazily yields every `k`-dimensional subspace of `F_q^n` exactly once.
///
/// Order: RREF pivot-column sets in colexicographic order; within one pivot
/// set, the free entries (row-major) read as a base-`q` number counting up
/// from zero, the first free entry being the most significant digit.
pub struct Grassmannian {
    field: FieldSpec,
    n: usize,
    k: usize,
    pivot_sets: Vec<Vec<usize>>,
    set_idx: usize,
    free: Vec<(usize, usize)>,
    digits: Vec<FieldElement>,
    fresh: bool,
}

pub fn grassmannian(field: &FieldSpec, n: usize, k: usize) -> Grassmannian {
    let mut pivot_sets = if k <= n { k_subsets(n, k) } else { Vec::new() };
    pivot_sets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    let mut g = Grassmannian {
        field: field.clone(),
        n,
        k,
        pivot_sets,
        set_idx: 0,
        free: Vec::new(),
        digits: Vec::new(),
        fresh: true,
    };
    g.load_set();
    g
}

impl Grassmannian {
    fn load_set(&mut self) {
        self.free.clear();
        self.fresh = true;
        let Some(pivots) = self.pivot_sets.get(self.set_idx) else {
            return;
        };
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..self.n {
                if !pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    /// Advances the base-q counter; returns `false` on overflow.
    fn increment(&mut self) -> bool {
        let q = self.field.order();
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                return true;
            }
            *d = 0;
        }
        false
    }
}

impl Iterator for Grassmannian {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            let pivots = self.pivot_sets.get(self.set_idx)?.clone();
            if self.fresh {
                self.fresh = false;
            } else if !self.increment() {
                self.set_idx += 1;
                self.load_set();
                continue;
            }
            let mut m = MatrixGF::zeros(&self.field, self.k, self.n);
            for (row, &p) in pivots.iter().enumerate() {
                m.set(row, p, 1);
            }
            for (&(row, col), &d) in self.free.iter().zip(&self.digits) {
                m.set(row, col, d);
            }
            return Some(Subspace::from_canonical(m));
        }
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
