//! Commutator algebra and span-closure fits for the Jacobi, Hahn, Racah
//! and cubic Heun algebras.

use crate::error::{Error, Result};
use crate::heun::{algebraic_heun, heun_hahn, HeunTau};
use crate::linalg::{least_squares, DenseMatrix};
use crate::operators::{grid_x, monomial_hypergeom, monomial_x, BasisOperator};
use crate::orthopoly::{hahn_operator, HahnParams, JacobiParams};
use crate::scalar::Real;

/// Pivot threshold for deciding word dependence in closure fits.
pub const RANK_TOL: f64 = 1e-10;

pub fn commutator<T: Real>(a: &BasisOperator<T>, b: &BasisOperator<T>) -> Result<BasisOperator<T>> {
    a.commutator(b)
}

pub fn anticommutator<T: Real>(a: &BasisOperator<T>, b: &BasisOperator<T>) -> Result<BasisOperator<T>> {
    a.anticommutator(b)
}

/// `[A,[B,C]] + [B,[C,A]] + [C,[A,B]]`, which vanishes identically.
pub fn jacobi_identity<T: Real>(a: &BasisOperator<T>, b: &BasisOperator<T>, c: &BasisOperator<T>) -> Result<BasisOperator<T>> {
    let t1 = a.commutator(&b.commutator(c)?)?;
    let t2 = b.commutator(&c.commutator(a)?)?;
    let t3 = c.commutator(&a.commutator(b)?)?;
    t1.add(&t2)?.add(&t3)
}

/// Named operator words sharing one basis.
#[derive(Debug, Clone)]
pub struct AlgebraWordBasis<T> {
    words: Vec<(String, BasisOperator<T>)>,
}

impl<T: Real> AlgebraWordBasis<T> {
    pub fn new(words: Vec<(String, BasisOperator<T>)>) -> Result<Self> {
        let first = words.first().ok_or_else(|| Error::invalid("empty word basis"))?.1.basis();
        for (name, w) in &words {
            if w.basis() != first {
                return Err(Error::BasisMismatch {
                    left: format!("{name}: {}", w.basis()),
                    right: first.to_string(),
                });
            }
        }
        Ok(Self { words })
    }

    /// Convenience constructor from `(&str, operator)` pairs.
    pub fn from_pairs(words: &[(&str, &BasisOperator<T>)]) -> Result<Self> {
        Self::new(words.iter().map(|(n, w)| (n.to_string(), (*w).clone())).collect())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn names(&self) -> Vec<&str> {
        self.words.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Number of leading columns exact for every word.
    pub fn exact_columns(&self) -> usize {
        self.words.iter().map(|(_, w)| w.exact_columns()).min().unwrap_or(0)
    }
}

/// Outcome of fitting a target as a combination of words.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosureReport<T> {
    pub words: Vec<String>,
    pub coefficients: Vec<T>,
    /// ‖target − Σ cᵢ wordᵢ‖_F / ‖target‖_F on the window.
    pub residual: T,
    /// Number of exact columns used.
    pub window: usize,
    pub rank: usize,
}

impl<T: Real> ClosureReport<T> {
    pub fn coefficient(&self, word: &str) -> Option<T> {
        self.words.iter().position(|w| w == word).map(|i| self.coefficients[i])
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.words.len()
    }
}

/// Least-squares fit of `target` in the span of `words`, restricted to the
/// columns on which all of them are exact.
pub fn closure_fit<T: Real>(target: &BasisOperator<T>, words: &AlgebraWordBasis<T>) -> Result<ClosureReport<T>> {
    if words.is_empty() {
        return Err(Error::invalid("empty word basis"));
    }
    let basis = words.words[0].1.basis();
    if target.basis() != basis {
        return Err(Error::BasisMismatch {
            left: target.basis().to_string(),
            right: basis.to_string(),
        });
    }
    let cols = words.exact_columns().min(target.exact_columns());
    if cols == 0 {
        return Err(Error::WindowTooSmall("no column is exact for every word".into()));
    }
    let dim = target.dim();
    let flat = |m: &DenseMatrix<T>| -> Vec<T> { (0..cols).flat_map(|j| (0..dim).map(move |i| m[(i, j)])).collect() };
    let rhs = flat(target.matrix());
    let design = DenseMatrix::from_columns(&words.words.iter().map(|(_, w)| flat(w.matrix())).collect::<Vec<_>>())?;
    let fit = least_squares(&design, &rhs, T::lit(RANK_TOL))?;
    let norm = rhs.iter().map(|v| *v * *v).sum::<T>().sqrt();
    let residual = if norm > T::zero() { fit.residual / norm } else { fit.residual };
    Ok(ClosureReport {
        words: words.names().into_iter().map(String::from).collect(),
        coefficients: fit.solution,
        residual,
        window: cols,
        rank: fit.rank,
    })
}

/// The two Racah-type relations for a pair (K₁, K₂) with K₃ = [K₁, K₂]:
/// `[K₂,K₃] ∈ span{{K₁,K₂}, K₂², K₂, K₁, I}` and
/// `[K₃,K₁] ∈ span{K₁², {K₁,K₂}, K₁, K₂, I}`.
pub fn racah_closure<T: Real>(k1: &BasisOperator<T>, k2: &BasisOperator<T>) -> Result<(ClosureReport<T>, ClosureReport<T>)> {
    let k3 = k1.commutator(k2)?;
    let id = BasisOperator::identity(k1.basis());
    let anti = k1.anticommutator(k2)?;
    let k11 = k1.compose(k1)?;
    let k22 = k2.compose(k2)?;
    let first = AlgebraWordBasis::from_pairs(&[("{K1,K2}", &anti), ("K2^2", &k22), ("K2", k2), ("K1", k1), ("I", &id)])?;
    let second = AlgebraWordBasis::from_pairs(&[("K1^2", &k11), ("{K1,K2}", &anti), ("K1", k1), ("K2", k2), ("I", &id)])?;
    Ok((
        closure_fit(&k2.commutator(&k3)?, &first)?,
        closure_fit(&k3.commutator(k1)?, &second)?,
    ))
}

/// Jacobi algebra in the monomial realization A₁ = D_x, A₂ = x, A₃ = [A₁, A₂]:
/// `[A₂,A₃]` over {A₂², A₂} and `[A₃,A₁]` over {{A₁,A₂}, A₁, A₂, I}.
pub fn jacobi_algebra_check<T: Real>(p: &JacobiParams<T>, k: usize) -> Result<(ClosureReport<T>, ClosureReport<T>)> {
    if k < 4 {
        return Err(Error::WindowTooSmall("jacobi algebra check needs K >= 4".into()));
    }
    let a1 = monomial_hypergeom(p, k)?;
    let a2 = monomial_x(k)?;
    let a3 = a1.commutator(&a2)?;
    let id = BasisOperator::identity(a1.basis());
    let a22 = a2.compose(&a2)?;
    let anti = a1.anticommutator(&a2)?;
    let first = AlgebraWordBasis::from_pairs(&[("A2^2", &a22), ("A2", &a2)])?;
    let second = AlgebraWordBasis::from_pairs(&[("{A1,A2}", &anti), ("A1", &a1), ("A2", &a2), ("I", &id)])?;
    Ok((
        closure_fit(&a2.commutator(&a3)?, &first)?,
        closure_fit(&a3.commutator(&a1)?, &second)?,
    ))
}

/// Closed-form Jacobi algebra constants (a₂, d, c₂, e₂) = (2, −2, −(α+β)(α+β+2), (α+1)(α+β)).
pub fn jacobi_algebra_constants<T: Real>(p: &JacobiParams<T>) -> [T; 4] {
    let s = p.sum();
    [T::lit(2.0), T::lit(-2.0), -s * (s + T::lit(2.0)), (p.alpha + T::one()) * s]
}

/// Hahn algebra on the grid with K₁ = X, K₂ = Y:
/// `[K₂,K₃]` over {{K₁,K₂}, K₂, K₁, I} and `[K₃,K₁]` over {K₁², K₁, K₂, I}.
pub fn hahn_algebra_check<T: Real>(p: &HahnParams<T>) -> Result<(ClosureReport<T>, ClosureReport<T>)> {
    let k1 = grid_x(p.n_grid)?;
    let k2 = hahn_operator(p);
    let k3 = k1.commutator(&k2)?;
    let id = BasisOperator::identity(k1.basis());
    let anti = k1.anticommutator(&k2)?;
    let k11 = k1.compose(&k1)?;
    let first = AlgebraWordBasis::from_pairs(&[("{K1,K2}", &anti), ("K2", &k2), ("K1", &k1), ("I", &id)])?;
    let second = AlgebraWordBasis::from_pairs(&[("K1^2", &k11), ("K1", &k1), ("K2", &k2), ("I", &id)])?;
    Ok((
        closure_fit(&k2.commutator(&k3)?, &first)?,
        closure_fit(&k3.commutator(&k1)?, &second)?,
    ))
}

/// Racah algebra inside the Jacobi algebra: K₁ = A₁, K₂ = τ₁A₂A₁ + τ₂A₁A₂ + τ₃A₂.
pub fn racah_embedding_jacobi<T: Real>(
    t: &HeunTau<T>,
    p: &JacobiParams<T>,
    k: usize,
) -> Result<(ClosureReport<T>, ClosureReport<T>)> {
    if k < 10 {
        return Err(Error::WindowTooSmall("racah embedding needs K >= 10".into()));
    }
    if t.tau0 != T::zero() || t.tau4 != T::zero() {
        return Err(Error::invalid("racah embedding takes tau0 = tau4 = 0"));
    }
    let a1 = monomial_hypergeom(p, k)?;
    let a2 = monomial_x(k)?;
    let k2 = algebraic_heun(&a2, &a1, t)?;
    racah_closure(&a1, &k2)
}

/// Fits of the cubic relations between Y and a Hahn-type Heun operator W.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicReport<T> {
    /// `[Y,[W,Y]]` over {Y², {Y,W}, Y, W, I}.
    pub first: ClosureReport<T>,
    /// `[[W,Y],W]` over {Y², Y³, W², {Y,W}, W, Y, I}.
    pub second: ClosureReport<T>,
    /// Coefficients of Y² and Y³ in the second relation.
    pub e1: T,
    pub e2: T,
}

pub fn cubic_closure_hahn<T: Real>(t: &HeunTau<T>, p: &HahnParams<T>) -> Result<CubicReport<T>> {
    let y = hahn_operator(p);
    let w = heun_hahn(t, p)?;
    let id = BasisOperator::identity(y.basis());
    let yy = y.compose(&y)?;
    let yyy = yy.compose(&y)?;
    let ww = w.compose(&w)?;
    let yw = y.anticommutator(&w)?;
    let wy = w.commutator(&y)?;
    let first = AlgebraWordBasis::from_pairs(&[("Y^2", &yy), ("{Y,W}", &yw), ("Y", &y), ("W", &w), ("I", &id)])?;
    let second = AlgebraWordBasis::from_pairs(&[
        ("Y^2", &yy),
        ("Y^3", &yyy),
        ("W^2", &ww),
        ("{Y,W}", &yw),
        ("W", &w),
        ("Y", &y),
        ("I", &id),
    ])?;
    let first = closure_fit(&y.commutator(&wy)?, &first)?;
    let second = closure_fit(&wy.commutator(&w)?, &second)?;
    let e1 = second.coefficient("Y^2").expect("word present");
    let e2 = second.coefficient("Y^3").expect("word present");
    Ok(CubicReport { first, second, e1, e2 })
}

/// W± = ±½[X,Y] ± γX − Y/2 ± εI on the Hahn grid.
pub fn w_pm<T: Real>(p: &HahnParams<T>, gamma: T, epsilon: T, sign: T) -> Result<BasisOperator<T>> {
    let half = T::lit(0.5);
    // τ₁ = ±½, τ₂ = ∓½, τ₃ = ±γ, τ₄ = −½, τ₀ = ±ε
    let t = HeunTau::new([sign * epsilon, sign * half, -sign * half, sign * gamma, -half]);
    algebraic_heun(&grid_x(p.n_grid)?, &hahn_operator(p), &t)
}

/// Racah closure for the pairs (Y, W₊), (Y, W₋), (W₊, W₋).
pub fn w_pm_pairs<T: Real>(p: &HahnParams<T>, gamma: T, epsilon: T) -> Result<Vec<(ClosureReport<T>, ClosureReport<T>)>> {
    let y = hahn_operator(p);
    let wp = w_pm(p, gamma, epsilon, T::one())?;
    let wm = w_pm(p, gamma, epsilon, -T::one())?;
    Ok(vec![racah_closure(&y, &wp)?, racah_closure(&y, &wm)?, racah_closure(&wp, &wm)?])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn member_fits_exactly() {
        let p = HahnParams::<f64>::new(0.3, 0.7, 5).unwrap();
        let y = hahn_operator(&p);
        let x = grid_x::<f64>(5).unwrap();
        let words = AlgebraWordBasis::from_pairs(&[("X", &x), ("Y", &y)]).unwrap();
        let r = closure_fit(&y, &words).unwrap();
        assert!(r.residual < 1e-15);
        assert!((r.coefficients[1] - 1.0).abs() < 1e-14 && r.coefficients[0].abs() < 1e-14);
    }

    #[test]
    fn trivial_brackets() {
        let x = grid_x::<f64>(4).unwrap();
        assert_eq!(commutator(&x, &x).unwrap().matrix().max_abs(), 0.0);
        let a = anticommutator(&BasisOperator::identity(x.basis()), &x).unwrap();
        assert_eq!(a.matrix(), x.scale(2.0).matrix());
    }

    #[test]
    fn jacobi_constants() {
        let p = JacobiParams::<f64>::new(0.3, 0.7).unwrap();
        let (first, second) = jacobi_algebra_check(&p, 12).unwrap();
        let c = jacobi_algebra_constants(&p);
        assert!(first.residual < 1e-12 && second.residual < 1e-12);
        assert!((first.coefficients[0] - c[0]).abs() < 1e-9 && (first.coefficients[1] - c[1]).abs() < 1e-9);
        for i in 0..4 {
            let want = [c[0], c[1], c[2], c[3]][i];
            assert!((second.coefficients[i] - want).abs() < 1e-8, "{i}: {:?}", second.coefficients);
        }
    }

    #[test]
    fn two_point_hahn_algebra() {
        let p = HahnParams::<f64>::new(0.0, 0.0, 1).unwrap();
        let (a, b) = hahn_algebra_check(&p).unwrap();
        assert!(a.residual <= 1e-13 && b.residual <= 1e-13);
    }
}
