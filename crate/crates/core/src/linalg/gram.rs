use crate::error::{Error, Result};
use crate::linalg::eigen::{fix_sign, EigenDecomposition, MAX_QL_ITERATIONS};
use crate::linalg::matrix::{dot, DenseMatrix};
use crate::scalar::Real;

/// Eigendecomposition of the Gram matrix `GᵀG` computed from the factor `G`
/// by one-sided Jacobi rotations.
///
/// Small eigenvalues come out with high *relative* accuracy, and so do
/// eigenvectors whose eigenvalues are relatively well separated, even when
/// the absolute gaps are far below `ε ‖GᵀG‖`.
pub fn gram_eig<T: Real>(g: &DenseMatrix<T>) -> Result<EigenDecomposition<T>> {
    if !g.is_finite() {
        return Err(Error::NonFinite("gram factor"));
    }
    let n = g.cols();
    let (values, mut basis) = if g.rows() >= n {
        let (cols, w) = hestenes(g)?;
        (cols.iter().map(|c| dot(c, c)).collect::<Vec<T>>(), w)
    } else {
        // wide factor: rotate Gᵀ, whose orthogonalized columns are the
        // eigenvectors of GᵀG with nonzero eigenvalues
        let (cols, _) = hestenes(&g.transpose())?;
        let mut values = Vec::with_capacity(n);
        let mut vecs: Vec<Vec<T>> = Vec::with_capacity(n);
        for c in cols {
            let s2 = dot(&c, &c);
            if s2 > T::zero() {
                let s = s2.sqrt();
                vecs.push(c.iter().map(|&x| x / s).collect());
                values.push(s2);
            }
        }
        while vecs.len() < n {
            let (e, norm) = (0..n)
                .map(|i| {
                    let mut e: Vec<T> = (0..n).map(|k| if k == i { T::one() } else { T::zero() }).collect();
                    for _ in 0..2 {
                        for v in &vecs {
                            let p = dot(&e, v);
                            e.iter_mut().zip(v).for_each(|(x, &y)| *x = *x - p * y);
                        }
                    }
                    let norm = dot(&e, &e).sqrt();
                    (e, norm)
                })
                .fold((Vec::new(), -T::one()), |best, c| if c.1 > best.1 { c } else { best });
            vecs.push(e.iter().map(|&x| x / norm).collect());
            values.push(T::zero());
        }
        (values, vecs)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"));
    let mut vectors = DenseMatrix::zeros(n, n);
    let mut sorted = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        let v = &mut basis[j];
        fix_sign(v);
        vectors.set_column(k, v);
        sorted.push(values[j]);
    }
    let gram = &g.transpose() * g;
    let mut residual = T::zero();
    for k in 0..n {
        let v = vectors.column(k);
        let gv = gram.matvec(&v);
        let r = gv
            .iter()
            .zip(&v)
            .map(|(&x, &y)| (x - sorted[k] * y) * (x - sorted[k] * y))
            .sum::<T>()
            .sqrt();
        residual = residual.max(r);
    }
    Ok(EigenDecomposition {
        values: sorted,
        vectors,
        residual,
    })
}

/// Orthogonalizes the columns of a tall `G` by rotations `W`, returning the
/// rotated columns `GW` and the columns of `W`.
fn hestenes<T: Real>(g: &DenseMatrix<T>) -> Result<(Vec<Vec<T>>, Vec<Vec<T>>)> {
    let n = g.cols();
    let mut cols: Vec<Vec<T>> = (0..n).map(|j| g.column(j)).collect();
    let mut w: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let tol = T::epsilon() * T::from_index(g.rows().max(1)).sqrt();
    let mut converged = n <= 1;
    for _ in 0..MAX_QL_ITERATIONS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let a = dot(&cols[i], &cols[i]);
                let b = dot(&cols[j], &cols[j]);
                let c = dot(&cols[i], &cols[j]);
                if c == T::zero() || c.abs() <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) / (c + c);
                let t = if zeta == T::zero() {
                    T::one()
                } else {
                    zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let cs = T::one() / (T::one() + t * t).sqrt();
                let sn = cs * t;
                rotate(&mut cols, i, j, cs, sn);
                rotate(&mut w, i, j, cs, sn);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            index: 0,
            cap: MAX_QL_ITERATIONS,
        });
    }
    Ok((cols, w))
}

fn rotate<T: Real>(v: &mut [Vec<T>], i: usize, j: usize, cs: T, sn: T) {
    let (lo, hi) = v.split_at_mut(j);
    for (x, y) in lo[i].iter_mut().zip(hi[0].iter_mut()) {
        let (xi, yj) = (*x, *y);
        *x = cs * xi - sn * yj;
        *y = sn * xi + cs * yj;
    }
}
