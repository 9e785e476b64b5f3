use serde::{Deserialize, Serialize};

use super::{NetworkError, NetworkParams};
use crate::gf::{FieldSpec, MatrixGF};

/// The coding coefficients `A_1..A_r`, each `ell t x h t` over `GF(q)`.
///
/// Middle nodes only forward, so these matrices are the whole solution; the
/// direct-link matrices are derived per receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSolution {
    field: FieldSpec,
    t: u64,
    a: Vec<MatrixGF>,
}

impl NetworkSolution {
    pub fn new(field: &FieldSpec, t: u64, a: Vec<MatrixGF>) -> Result<Self, NetworkError> {
        if t == 0 {
            return Err(NetworkError::ShapeMismatch("t must be positive".into()));
        }
        if let Some(first) = a.first() {
            for m in &a {
                if m.field() != field {
                    return Err(NetworkError::ShapeMismatch(
                        "matrices over different fields".into(),
                    ));
                }
                if (m.rows(), m.cols()) != (first.rows(), first.cols()) {
                    return Err(NetworkError::ShapeMismatch(
                        "matrices of different shapes".into(),
                    ));
                }
            }
        }
        Ok(NetworkSolution {
            field: field.clone(),
            t,
            a,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn matrices(&self) -> &[MatrixGF] {
        &self.a
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Drops middle node `i`.
    pub fn without(&self, i: usize) -> NetworkSolution {
        let mut a = self.a.clone();
        a.remove(i);
        NetworkSolution {
            field: self.field.clone(),
            t: self.t,
            a,
        }
    }

    /// Checks that the solution has `r` matrices of shape `ell t x h t`.
    pub fn check_against(&self, params: &NetworkParams) -> Result<(), NetworkError> {
        if self.a.len() as u64 != params.r {
            return Err(NetworkError::ShapeMismatch(format!(
                "expected {} matrices, found {}",
                params.r,
                self.a.len()
            )));
        }
        let (rows, cols) = ((params.ell * self.t) as usize, (params.h * self.t) as usize);
        if let Some(m) = self.a.iter().find(|m| (m.rows(), m.cols()) != (rows, cols)) {
            return Err(NetworkError::ShapeMismatch(format!(
                "expected {rows}x{cols} matrices, found {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    pub fn to_file(&self, params: &NetworkParams) -> SolutionFile {
        SolutionFile {
            q: self.q(),
            t: self.t,
            h: params.h,
            r: params.r,
            alpha: params.alpha,
            ell: params.ell,
            eps: params.eps,
            a: self.a.iter().map(|m| m.as_slice().to_vec()).collect(),
        }
    }
}

/// On-disk form of a solution. Entries are canonical field-element integers,
/// each matrix flattened row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub q: u64,
    pub t: u64,
    pub h: u64,
    pub r: u64,
    pub alpha: u64,
    pub ell: u64,
    pub eps: u64,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u32>>,
}

impl SolutionFile {
    pub fn params(&self) -> Result<NetworkParams, NetworkError> {
        NetworkParams::new(self.h, self.r, self.alpha, self.ell, self.eps)
    }

    pub fn into_solution(self) -> Result<(NetworkParams, NetworkSolution), NetworkError> {
        let params = self.params()?;
        let field = FieldSpec::new(self.q)?;
        let (rows, cols) = ((self.ell * self.t) as usize, (self.h * self.t) as usize);
        let a = self
            .a
            .into_iter()
            .map(|data| MatrixGF::from_vec(&field, rows, cols, data))
            .collect::<Result<Vec<_>, _>>()?;
        let sol = NetworkSolution::new(&field, self.t, a)?;
        sol.check_against(&params)?;
        Ok((params, sol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let f = FieldSpec::new(2).unwrap();
        let params = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let a = [[0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|r| MatrixGF::from_vec(&f, 1, 2, r.to_vec()).unwrap())
            .collect();
        let sol = NetworkSolution::new(&f, 1, a).unwrap();
        let file = sol.to_file(&params);
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains("\"A\":[[0,1],[1,0],[1,1]]"));
        let back: SolutionFile = serde_json::from_str(&json).unwrap();
        let (p2, s2) = back.into_solution().unwrap();
        assert_eq!(p2, params);
        assert_eq!(s2, sol);
    }

    #[test]
    fn shape_checked() {
        let f = FieldSpec::new(2).unwrap();
        let params = NetworkParams::new(2, 2, 2, 1, 0).unwrap();
        let sol = NetworkSolution::new(&f, 1, vec![MatrixGF::zeros(&f, 1, 3); 2]).unwrap();
        assert!(sol.check_against(&params).is_err());
    }
}
