use crate::error::{Error, Result};
use crate::linalg::matrix::{norm2, DenseMatrix};
use crate::scalar::Real;

/// Per-eigenvalue QL iteration cap.
pub const MAX_QL_ITERATIONS: usize = 60;

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag<T> {
    diag: Vec<T>,
    offdiag: Vec<T>,
}

impl<T: Real> SymTridiag<T> {
    pub fn new(diag: Vec<T>, offdiag: Vec<T>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Dimension("tridiagonal matrix must be at least 1x1".into()));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::Dimension(format!(
                "diag has {} entries but offdiag has {}",
                diag.len(),
                offdiag.len()
            )));
        }
        if diag.iter().chain(&offdiag).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("tridiagonal entries"));
        }
        Ok(Self { diag, offdiag })
    }

    /// Reads the main and first super-diagonal of a square matrix.
    pub fn from_dense_band(a: &DenseMatrix<T>) -> Result<Self> {
        let m = a.rows();
        let diag = a.diagonal();
        let off = (0..m.saturating_sub(1)).map(|i| a[(i, i + 1)]).collect();
        Self::new(diag, off)
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[T] {
        &self.offdiag
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let m = self.dim();
        let mut a = DenseMatrix::zeros(m, m);
        for i in 0..m {
            a[(i, i)] = self.diag[i];
            if i + 1 < m {
                a[(i, i + 1)] = self.offdiag[i];
                a[(i + 1, i)] = self.offdiag[i];
            }
        }
        a
    }

    pub fn frobenius(&self) -> T {
        let d: T = self.diag.iter().map(|&x| x * x).sum();
        let e: T = self.offdiag.iter().map(|&x| x * x).sum();
        (d + e + e).sqrt()
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s = s + self.offdiag[i - 1] * v[i - 1];
                }
                if i + 1 < m {
                    s = s + self.offdiag[i] * v[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Full symmetric eigendecomposition with ascending eigenvalues.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T> {
    pub values: Vec<T>,
    /// Columns are the eigenvectors, in the order of `values`.
    pub vectors: DenseMatrix<T>,
    /// `max_i ‖A vᵢ − λᵢ vᵢ‖₂` measured against the input matrix.
    pub residual: T,
}

impl<T: Real> EigenDecomposition<T> {
    pub fn vector(&self, i: usize) -> Vec<T> {
        self.vectors.column(i)
    }

    pub fn orthogonality_defect(&self) -> T {
        self.vectors.orthogonality_defect()
    }

    /// `Q Λ Qᵀ`.
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let ql = self.vectors.scale_columns(&self.values);
        &ql * &self.vectors.transpose()
    }

    /// Smallest distance between consecutive eigenvalues (infinite for 1×1).
    pub fn min_gap(&self) -> T {
        self.values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(T::infinity(), T::min)
    }
}

/// Flips `v` so that its entry of largest magnitude is positive.
///
/// Entries within a relative `1e-10` of the maximum count as ties and the
/// lowest such index decides the sign.
pub fn fix_sign<T: Real>(v: &mut [T]) {
    let vmax = v.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    if vmax == T::zero() {
        return;
    }
    let cut = vmax * (T::one() - T::lit(1e-10));
    if let Some(&lead) = v.iter().find(|x| x.abs() >= cut) {
        if lead < T::zero() {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Implicit QL with Wilkinson-type shifts on `(d, e)`, accumulating rotations
/// into the columns of `z`. `e[i]` couples `i` and `i + 1`; `e` must have the
/// same length as `d` (last entry is scratch).
fn tql<T: Real>(d: &mut [T], e: &mut [T], z: &mut DenseMatrix<T>) -> Result<()> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    let eps = T::epsilon();
    let two = T::lit(2.0);
    e[n - 1] = T::zero();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NonConvergence {
                    index: l,
                    cap: MAX_QL_ITERATIONS,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..z.rows() {
                    let zf = z[(k, i + 1)];
                    let zi = z[(k, i)];
                    z[(k, i + 1)] = s * zi + c * zf;
                    z[(k, i)] = c * zi - s * zf;
                }
            }
            if deflated {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// Sorts ascending, fixes eigenvector signs, and measures the residual.
fn finish<T: Real>(
    values: Vec<T>,
    z: DenseMatrix<T>,
    apply: impl Fn(&[T]) -> Vec<T>,
) -> EigenDecomposition<T> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite eigenvalues"));
    let mut vectors = DenseMatrix::zeros(z.rows(), n);
    let mut sorted = Vec::with_capacity(n);
    let mut residual = T::zero();
    for (j, &k) in order.iter().enumerate() {
        let mut v = z.column(k);
        fix_sign(&mut v);
        let av = apply(&v);
        let r: Vec<T> = av.iter().zip(&v).map(|(&a, &x)| a - values[k] * x).collect();
        residual = residual.max(norm2(&r));
        vectors.set_column(j, &v);
        sorted.push(values[k]);
    }
    EigenDecomposition {
        values: sorted,
        vectors,
        residual,
    }
}

/// Eigendecomposition of a symmetric tridiagonal matrix by implicit QL.
pub fn sym_tridiag_eig<T: Real>(t: &SymTridiag<T>) -> Result<EigenDecomposition<T>> {
    let n = t.dim();
    let mut d = t.diag.clone();
    let mut e = t.offdiag.clone();
    e.push(T::zero());
    let mut z = DenseMatrix::identity(n);
    tql(&mut d, &mut e, &mut z)?;
    Ok(finish(d, z, |v| t.matvec(v)))
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Returns `(Q, d, e)` with `A = Q T Qᵀ`, `e[i]` coupling `i, i + 1`.
fn householder_tridiagonalize<T: Real>(a: &DenseMatrix<T>) -> (DenseMatrix<T>, Vec<T>, Vec<T>) {
    let n = a.rows();
    let mut a = a.clone();
    let mut d = vec![T::zero(); n];
    // sub[i] couples (i - 1, i)
    let mut sub = vec![T::zero(); n];
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = T::zero();
        if l > 0 {
            let scale: T = (0..=l).map(|k| a[(i, k)].abs()).sum();
            if scale == T::zero() {
                sub[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] = a[(i, k)] / scale;
                    h = h + a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = if f >= T::zero() { -h.sqrt() } else { h.sqrt() };
                sub[i] = scale * g;
                h = h - f * g;
                a[(i, l)] = f - g;
                let mut f = T::zero();
                for j in 0..=l {
                    a[(j, i)] = a[(i, j)] / h;
                    let mut g = T::zero();
                    for k in 0..=j {
                        g = g + a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g = g + a[(k, j)] * a[(i, k)];
                    }
                    sub[j] = g / h;
                    f = f + sub[j] * a[(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = sub[j] - hh * f;
                    sub[j] = g;
                    for k in 0..=j {
                        a[(j, k)] = a[(j, k)] - (f * sub[k] + g * a[(i, k)]);
                    }
                }
            }
        } else {
            sub[i] = a[(i, l)];
        }
        d[i] = h;
    }
    d[0] = T::zero();
    sub[0] = T::zero();
    for i in 0..n {
        if d[i] != T::zero() {
            for j in 0..i {
                let mut g = T::zero();
                for k in 0..i {
                    g = g + a[(i, k)] * a[(k, j)];
                }
                for k in 0..i {
                    a[(k, j)] = a[(k, j)] - g * a[(k, i)];
                }
            }
        }
        d[i] = a[(i, i)];
        a[(i, i)] = T::one();
        for j in 0..i {
            a[(j, i)] = T::zero();
            a[(i, j)] = T::zero();
        }
    }
    let mut e: Vec<T> = sub[1..].to_vec();
    e.push(T::zero());
    (a, d, e)
}

/// Eigendecomposition of a dense symmetric matrix.
///
/// The input is accepted when `‖A − Aᵀ‖_F ≤ 1e-12 ‖A‖_F` and symmetrized
/// before solving.
pub fn dense_sym_eig<T: Real>(a: &DenseMatrix<T>) -> Result<EigenDecomposition<T>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    if a.rows() == 0 {
        return Err(Error::Dimension("empty matrix".into()));
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("dense symmetric matrix"));
    }
    let norm = a.frobenius();
    let defect = a.asymmetry();
    if defect > T::lit(1e-12) * norm {
        return Err(Error::Asymmetric {
            defect: (defect / norm).as_f64(),
        });
    }
    let sym = a.symmetrized();
    let (mut z, mut d, mut e) = householder_tridiagonalize(&sym);
    tql(&mut d, &mut e, &mut z)?;
    Ok(finish(d, z, |v| sym.matvec(v)))
}
