use crate::error::{Error, Result};
use crate::heun::truncation::{psi_basis, TruncationData};
use crate::linalg::{golub_welsch, least_squares, solve_unit_upper, DenseMatrix};
use crate::orthopoly::{jacobi_recurrence, jacobi_recurrence_formal, JacobiParams};
use crate::scalar::Real;

/// Expansion ψₙ = Σₖ G_k(n) P̂ₖ and the recurrence obeyed by the ratios G_k(n)/G₀(n).
#[derive(Debug, Clone)]
pub struct ExpansionData<T> {
    /// G_k(n) at (k, n), from the triangular change of basis.
    pub g: DenseMatrix<T>,
    /// G_k(n) at (k, n), from Gauss quadrature against the Jacobi weight.
    pub g_quadrature: DenseMatrix<T>,
    /// max |g − g_quadrature| / max |g|.
    pub route_gap: T,
    /// Relative defect between ∫ψₙψₘw and Σₖ G_k(n)G_k(m)hₖ.
    pub gram_defect: T,
    /// Q_k(n) = G_k(n)/G₀(n) at (k, n), absent when some G₀(n) vanishes.
    pub q: Option<DenseMatrix<T>>,
    /// The n with G₀(n) ≈ 0.
    pub vanishing_gauge: Vec<usize>,
    /// Fitted B₀..B_{N−1}, U₀..U_N, F₁..F_N (F stored at index k, F[0] = 0).
    pub b: Vec<T>,
    pub u: Vec<T>,
    pub f: Vec<T>,
    /// Largest relative residual of λ̃ₙQ_k = B_kQ_{k+1} + U_kQ_k + F_kQ_{k−1}.
    pub recurrence_residual: T,
    pub deviations: ExpansionDeviations<T>,
}

/// Gaps between fitted coefficients and closed forms, each relative to the
/// largest closed-form magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionDeviations<T> {
    /// B_k against u_{k+1}(τ₁λ_{k+1} + τ₂λ_k + τ₃).
    pub b: T,
    /// F_k against τ₁λ_{k−1} + τ₂λ_k + τ₃.
    pub f: T,
    /// U_k against λ_kb_k + τ₃b_k.
    pub u_bare: T,
    /// U_k against (τ₁+τ₂)λ_kb_k + τ₃b_k + τ₀.
    pub u_shifted: T,
}

/// Threshold below which G₀(n) is treated as zero, relative to max |G|.
pub const GAUGE_TOL: f64 = 1e-12;

pub fn wilson_expansion<T: Real>(td: &TruncationData<T>, p: &JacobiParams<T>) -> Result<ExpansionData<T>> {
    let n = td.n;
    let rec = jacobi_recurrence(p, n + 1)?;
    let psi = psi_basis(td)?;
    let pm = rec.coefficients(n).transpose();
    let g = solve_unit_upper(&pm, &psi);

    let quad = golub_welsch(&rec, n + 1)?;
    let h = rec.norms();
    let rev = jacobi_recurrence_formal(td.alpha_t, td.beta_t, n)?;
    let mut g_quadrature = DenseMatrix::zeros(n + 1, n + 1);
    let mut psi_at = DenseMatrix::zeros(quad.nodes.len(), n + 1);
    for (i, &x) in quad.nodes.iter().enumerate() {
        let pk = rec.eval_all(n, x);
        let inv = rev.eval_all(n, T::one() / x);
        let xn = x.powi(n as i32);
        for m in 0..=n {
            psi_at[(i, m)] = xn * inv[m];
            for k in 0..=n {
                g_quadrature[(k, m)] = g_quadrature[(k, m)] + quad.weights[i] * psi_at[(i, m)] * pk[k];
            }
        }
    }
    for k in 0..=n {
        for m in 0..=n {
            g_quadrature[(k, m)] = g_quadrature[(k, m)] / h[k];
        }
    }
    let gmax = g.max_abs();
    let route_gap = (&g - &g_quadrature).max_abs() / gmax;

    let mut gram_defect = T::zero();
    let mut gram_scale = T::zero();
    for a in 0..=n {
        for b in 0..=n {
            let direct: T = (0..quad.nodes.len()).map(|i| quad.weights[i] * psi_at[(i, a)] * psi_at[(i, b)]).sum();
            let spectral: T = (0..=n).map(|k| g[(k, a)] * g[(k, b)] * h[k]).sum();
            gram_defect = gram_defect.max((direct - spectral).abs());
            gram_scale = gram_scale.max(direct.abs());
        }
    }
    gram_defect = gram_defect / gram_scale;

    let vanishing_gauge: Vec<usize> = (0..=n)
        .filter(|&m| g[(0, m)].abs() <= T::lit(GAUGE_TOL) * gmax)
        .collect();
    let q = if vanishing_gauge.is_empty() {
        Some(DenseMatrix::from_fn(n + 1, n + 1, |k, m| g[(k, m)] / g[(0, m)]))
    } else {
        None
    };
    // the recurrence in k is blind to per-n scaling, so fit on columns
    // normalized by their largest entry
    let mut gn = g.clone();
    for m in 0..=n {
        let piv = (0..=n)
            .map(|k| g[(k, m)])
            .fold(T::zero(), |acc, v| if v.abs() > acc.abs() { v } else { acc });
        if piv == T::zero() {
            return Err(Error::IllConditioned(format!("psi_{m} has no Jacobi components")));
        }
        for k in 0..=n {
            gn[(k, m)] = g[(k, m)] / piv;
        }
    }

    let lam = |k: usize| p.eigenvalue(k);
    let t = &td.tau;
    let mut b = vec![T::zero(); n];
    let mut u = vec![T::zero(); n + 1];
    let mut f = vec![T::zero(); n + 1];
    let mut recurrence_residual = T::zero();
    for k in 0..=n {
        let mut cols: Vec<Vec<T>> = Vec::new();
        let mut slots = Vec::new();
        if k < n {
            cols.push(gn.row(k + 1).to_vec());
            slots.push(0);
        }
        cols.push(gn.row(k).to_vec());
        slots.push(1);
        if k > 0 {
            cols.push(gn.row(k - 1).to_vec());
            slots.push(2);
        }
        let design = DenseMatrix::from_columns(&cols)?;
        let rhs: Vec<T> = (0..=n).map(|m| td.lambda_t[m] * gn[(k, m)]).collect();
        let fit = least_squares(&design, &rhs, T::lit(1e-13))?;
        let scale = rhs.iter().fold(T::zero(), |acc, v| acc.max(v.abs())).max(T::one());
        recurrence_residual = recurrence_residual.max(fit.residual / scale);
        for (slot, v) in slots.iter().zip(&fit.solution) {
            match slot {
                0 => b[k] = *v,
                1 => u[k] = *v,
                _ => f[k] = *v,
            }
        }
    }

    let rel = |got: &[T], want: &[T]| {
        let s = want.iter().fold(T::zero(), |acc, v| acc.max(v.abs())).max(T::min_positive_value());
        got.iter().zip(want).fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs())) / s
    };
    let b_want: Vec<T> = (0..n)
        .map(|k| rec.u(k + 1) * (t.tau1 * lam(k + 1) + t.tau2 * lam(k) + t.tau3))
        .collect();
    let f_want: Vec<T> = (1..=n).map(|k| t.tau1 * lam(k - 1) + t.tau2 * lam(k) + t.tau3).collect();
    let bk = |k: usize| rec.b()[k];
    let u_bare: Vec<T> = (0..=n).map(|k| lam(k) * bk(k) + t.tau3 * bk(k)).collect();
    let u_shift: Vec<T> = (0..=n)
        .map(|k| t.kappa() * lam(k) * bk(k) + t.tau3 * bk(k) + t.tau0)
        .collect();
    let deviations = ExpansionDeviations {
        b: rel(&b, &b_want),
        f: rel(&f[1..], &f_want),
        u_bare: rel(&u, &u_bare),
        u_shifted: rel(&u, &u_shift),
    };
    Ok(ExpansionData {
        g,
        g_quadrature,
        route_gap,
        gram_defect,
        q,
        vanishing_gauge,
        b,
        u,
        f,
        recurrence_residual,
        deviations,
    })
}
