use crate::error::{Error, Result};
use crate::heun::algebraic::HeunTau;
use crate::operators::{BasisOperator, BasisTag};
use crate::orthopoly::{JacobiParams, RecurrencePair};
use crate::scalar::Real;

/// Off-band tolerance for [`tridiagonal_action`], relative to ‖M‖_F.
pub const TRIDIAGONAL_LEAKAGE_TOL: f64 = 1e-10;

/// `M P̂ₙ = ξₙ₊₁ P̂ₙ₊₁ + ηₙ P̂ₙ + ζₙuₙ P̂ₙ₋₁` read off an operator in the Jacobi basis.
///
/// Entry n of each array belongs to column n, so `xi[n]` is ξₙ₊₁ and
/// `zeta_u[0]` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalAction<T> {
    pub xi: Vec<T>,
    pub eta: Vec<T>,
    pub zeta_u: Vec<T>,
    /// Off-tridiagonal mass on the exact columns, relative to ‖M‖_F.
    pub leakage: T,
    pub deviations: ActionDeviations<T>,
}

/// Largest absolute gaps between the extracted coefficients and closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionDeviations<T> {
    /// ξₙ₊₁ against τ₁λₙ + τ₂λₙ₊₁ + τ₃.
    pub raising: T,
    /// ζₙuₙ against uₙ(τ₁λₙ + τ₂λₙ₋₁ + τ₃).
    pub lowering: T,
    /// ηₙ against (τ₁+τ₂)λₙbₙ + τ₃bₙ + τ₄λₙ + τ₀.
    pub diagonal: T,
    /// ηₙ − τ₀ − τ₄λₙ against (τ₁+τ₂)λₙbₙ + τ₃bₙ.
    pub diagonal_without_shift: T,
    /// ηₙ − τ₀ − τ₄λₙ against λₙbₙ + τ₃bₙ, the form without the (τ₁+τ₂) factor.
    pub diagonal_unscaled: T,
}

pub fn tridiagonal_action<T: Real>(
    m: &BasisOperator<T>,
    t: &HeunTau<T>,
    p: &JacobiParams<T>,
    rec: &RecurrencePair<T>,
) -> Result<TridiagonalAction<T>> {
    if !matches!(m.basis(), BasisTag::Jacobi { .. }) {
        return Err(Error::BasisMismatch {
            left: m.basis().to_string(),
            right: "jacobi".into(),
        });
    }
    let cols = m.exact_columns();
    let dim = m.dim();
    if rec.max_degree() + 1 < dim {
        return Err(Error::Dimension("recurrence shorter than operator".into()));
    }
    let a = m.matrix();
    let norm = a.frobenius().max(T::min_positive_value());
    let mut off = T::zero();
    for j in 0..cols {
        for i in 0..dim {
            if i + 1 < j || i > j + 1 {
                off = off + a[(i, j)] * a[(i, j)];
            }
        }
    }
    let leakage = off.sqrt() / norm;
    if leakage.as_f64() > TRIDIAGONAL_LEAKAGE_TOL {
        return Err(Error::tolerance("tridiagonal leakage", leakage.as_f64(), TRIDIAGONAL_LEAKAGE_TOL));
    }
    let lam = |n: usize| p.eigenvalue(n);
    let (mut xi, mut eta, mut zeta_u) = (Vec::new(), Vec::new(), Vec::new());
    let mut dev = ActionDeviations {
        raising: T::zero(),
        lowering: T::zero(),
        diagonal: T::zero(),
        diagonal_without_shift: T::zero(),
        diagonal_unscaled: T::zero(),
    };
    for n in 0..cols {
        let up = if n + 1 < dim { a[(n + 1, n)] } else { T::zero() };
        let down = if n >= 1 { a[(n - 1, n)] } else { T::zero() };
        let diag = a[(n, n)];
        if n + 1 < dim {
            let want = t.tau1 * lam(n) + t.tau2 * lam(n + 1) + t.tau3;
            dev.raising = dev.raising.max((up - want).abs());
        }
        if n >= 1 {
            let want = rec.u(n) * (t.tau1 * lam(n) + t.tau2 * lam(n - 1) + t.tau3);
            dev.lowering = dev.lowering.max((down - want).abs());
        }
        let b = rec.b()[n];
        let core = t.kappa() * lam(n) * b + t.tau3 * b;
        let stripped = diag - t.tau0 - t.tau4 * lam(n);
        dev.diagonal = dev.diagonal.max((diag - core - t.tau4 * lam(n) - t.tau0).abs());
        dev.diagonal_without_shift = dev.diagonal_without_shift.max((stripped - core).abs());
        dev.diagonal_unscaled = dev.diagonal_unscaled.max((stripped - lam(n) * b - t.tau3 * b).abs());
        xi.push(up);
        eta.push(diag);
        zeta_u.push(down);
    }
    Ok(TridiagonalAction {
        xi,
        eta,
        zeta_u,
        leakage,
        deviations: dev,
    })
}
