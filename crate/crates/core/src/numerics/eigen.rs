use crate::error::{domain, Result};

pub const MAX_EIGEN_DIM: usize = 64;

/// Dense real symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SmallMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SmallMatrix {
    /// Checks shape, finiteness and symmetry up to `1e-14 * max|M|`.
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 || dim > MAX_EIGEN_DIM {
            return Err(domain(format!("matrix dimension {dim} outside 1..={MAX_EIGEN_DIM}")));
        }
        if entries.len() != dim * dim {
            return Err(domain(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(domain("matrix has non-finite entries"));
        }
        let scale = entries.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for i in 0..dim {
            for j in (i + 1)..dim {
                if (entries[i * dim + j] - entries[j * dim + i]).abs() > 1e-14 * scale {
                    return Err(domain(format!("matrix is not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(SmallMatrix { dim, entries })
    }

    /// Evaluates `f` on the upper triangle and mirrors it, so the result is
    /// exactly symmetric regardless of rounding inside `f`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            acc += v[i] * row.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();
        }
        acc
    }
}

/// All eigenvalues in descending order, by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues(m: &SmallMatrix) -> Vec<f64> {
    let n = m.dim;
    let mut a = m.entries.clone();
    let scale = m.max_abs();
    if scale == 0.0 {
        return vec![0.0; n];
    }

    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off.sqrt() <= f64::EPSILON * 1e-2 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    eig
}

/// Largest eigenvalue of a symmetric matrix.
pub fn max_eigenvalue_symmetric(m: &SmallMatrix) -> f64 {
    symmetric_eigenvalues(m)[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let m = SmallMatrix::from_fn(3, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap();
        assert!((max_eigenvalue_symmetric(&m) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn diagonal() {
        let m = SmallMatrix::new(2, vec![2.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(symmetric_eigenvalues(&m), vec![2.0, -1.0]);
    }

    #[test]
    fn rank_one() {
        let v = [1.0, 2.0, 0.0];
        let m = SmallMatrix::from_fn(3, |i, j| v[i] * v[j]).unwrap();
        assert!((max_eigenvalue_symmetric(&m) - 5.0).abs() < 1e-13);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[a, b], [b, c]]: (a + c)/2 ± sqrt(((a - c)/2)^2 + b^2)
        let (a, b, c) = (0.3, -1.7, 2.2);
        let m = SmallMatrix::new(2, vec![a, b, b, c]).unwrap();
        let top = 0.5 * (a + c) + (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((max_eigenvalue_symmetric(&m) - top).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_is_rejected() {
        assert!(SmallMatrix::new(2, vec![1.0, 2.0, 3.0, 4.0]).is_err());
    }

    #[test]
    fn oversized_is_rejected() {
        assert!(SmallMatrix::new(65, vec![0.0; 65 * 65]).is_err());
    }
}
