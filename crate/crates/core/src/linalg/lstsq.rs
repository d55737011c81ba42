use crate::error::{Error, Result};
use crate::linalg::matrix::DenseMatrix;
use crate::scalar::Real;

/// Least-squares solution of `A x ≈ b`.
#[derive(Debug, Clone)]
pub struct LeastSquares<T> {
    pub solution: Vec<T>,
    /// `‖A x − b‖₂`.
    pub residual: T,
    pub rank: usize,
}

impl<T: Real> LeastSquares<T> {
    pub fn is_full_rank(&self) -> bool {
        self.rank == self.solution.len()
    }
}

/// Householder QR with column pivoting on column-equilibrated `A`.
///
/// Columns whose pivot falls below `rank_tol · |R₀₀|` are treated as
/// dependent and receive a zero coefficient (basic solution).
pub fn least_squares<T: Real>(a: &DenseMatrix<T>, b: &[T], rank_tol: T) -> Result<LeastSquares<T>> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::Dimension(format!("rhs has {} rows, matrix {}", b.len(), m)));
    }
    if !a.is_finite() || b.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("least-squares input"));
    }
    let scales: Vec<T> = (0..n)
        .map(|j| {
            let s = (0..m).map(|i| a[(i, j)] * a[(i, j)]).sum::<T>().sqrt();
            if s > T::zero() {
                s
            } else {
                T::one()
            }
        })
        .collect();
    let mut r = DenseMatrix::from_fn(m, n, |i, j| a[(i, j)] / scales[j]);
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    let steps = m.min(n);
    let mut rank = 0;
    let mut r00 = T::zero();
    for k in 0..steps {
        // pivot: largest remaining column norm
        let (p, pnorm) = (k..n)
            .map(|j| (j, (k..m).map(|i| r[(i, j)] * r[(i, j)]).sum::<T>()))
            .fold((k, -T::one()), |best, c| if c.1 > best.1 { c } else { best });
        if p != k {
            for i in 0..m {
                let t = r[(i, k)];
                r[(i, k)] = r[(i, p)];
                r[(i, p)] = t;
            }
            perm.swap(k, p);
        }
        let alpha = pnorm.sqrt();
        if k == 0 {
            r00 = alpha;
        }
        if alpha <= rank_tol * r00 || alpha == T::zero() {
            break;
        }
        rank += 1;
        let sign = if r[(k, k)] >= T::zero() { T::one() } else { -T::one() };
        let mut v: Vec<T> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] = v[0] + sign * alpha;
        let vnorm2: T = v.iter().map(|&x| x * x).sum();
        if vnorm2 == T::zero() {
            continue;
        }
        let two = T::lit(2.0);
        for j in k..n {
            let s: T = (k..m).map(|i| v[i - k] * r[(i, j)]).sum();
            let f = two * s / vnorm2;
            for i in k..m {
                r[(i, j)] = r[(i, j)] - f * v[i - k];
            }
        }
        let s: T = (k..m).map(|i| v[i - k] * rhs[i]).sum();
        let f = two * s / vnorm2;
        for i in k..m {
            rhs[i] = rhs[i] - f * v[i - k];
        }
    }
    let mut y = vec![T::zero(); n];
    for k in (0..rank).rev() {
        let s: T = ((k + 1)..rank).map(|j| r[(k, j)] * y[j]).sum();
        y[k] = (rhs[k] - s) / r[(k, k)];
    }
    let mut solution = vec![T::zero(); n];
    for (k, &p) in perm.iter().enumerate() {
        solution[p] = y[k] / scales[p];
    }
    let fitted = a.matvec(&solution);
    let residual = fitted
        .iter()
        .zip(b)
        .map(|(&f, &y)| (f - y) * (f - y))
        .sum::<T>()
        .sqrt();
    Ok(LeastSquares {
        solution,
        residual,
        rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_fit() {
        let a = DenseMatrix::<f64>::from_fn(5, 2, |i, j| if j == 0 { 1.0 } else { i as f64 });
        let b: Vec<f64> = (0..5).map(|i| 2.0 - 3.0 * i as f64).collect();
        let ls = least_squares(&a, &b, 1e-12).unwrap();
        assert!((ls.solution[0] - 2.0).abs() < 1e-13);
        assert!((ls.solution[1] + 3.0).abs() < 1e-13);
        assert!(ls.residual < 1e-12);
        assert!(ls.is_full_rank());
    }

    #[test]
    fn detects_rank_deficiency() {
        let a = DenseMatrix::<f64>::from_fn(4, 3, |i, j| match j {
            0 => 1.0,
            1 => i as f64,
            _ => 2.0 * i as f64,
        });
        let b = vec![1.0, 2.0, 3.0, 4.0];
        let ls = least_squares(&a, &b, 1e-10).unwrap();
        assert_eq!(ls.rank, 2);
        assert!(ls.residual < 1e-12);
    }

    #[test]
    fn overdetermined_residual() {
        let a = DenseMatrix::<f64>::from_rows(&[vec![1.0], vec![1.0]]).unwrap();
        let ls = least_squares(&a, &[0.0, 2.0], 1e-12).unwrap();
        assert!((ls.solution[0] - 1.0).abs() < 1e-15);
        assert!((ls.residual - 2f64.sqrt()).abs() < 1e-15);
    }
}
