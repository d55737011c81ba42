use crate::error::{Error, Result};
use crate::heun::algebraic::{algebraic_heun, HeunTau};
use crate::linalg::DenseMatrix;
use crate::operators::{grid_x, BasisOperator};
use crate::orthopoly::{hahn_operator, HahnParams};
use crate::scalar::Real;

/// Coefficients of the difference Heun operator `A₁T⁺ + A₂T⁻ + A₀` with
/// A₁ = (x−N)(κx²+μ₁x+μ₀), A₂ = x(κx²+ν₁x+ν₀), A₀ = −A₁−A₂+r₁x+r₀.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffHeunParams<T> {
    pub kappa: T,
    pub mu1: T,
    pub mu0: T,
    pub nu1: T,
    pub nu0: T,
    pub r1: T,
    pub r0: T,
    pub n_grid: usize,
}

impl<T: Real> DiffHeunParams<T> {
    pub fn forward(&self, x: T) -> T {
        (x - T::from_index(self.n_grid)) * ((self.kappa * x + self.mu1) * x + self.mu0)
    }

    pub fn backward(&self, x: T) -> T {
        x * ((self.kappa * x + self.nu1) * x + self.nu0)
    }

    pub fn central(&self, x: T) -> T {
        -self.forward(x) - self.backward(x) + self.r1 * x + self.r0
    }

    /// Leading coefficient σₙ of the image of xⁿ, which is of degree n+1.
    pub fn sigma(&self, n: usize) -> T {
        let nf = T::from_index(n);
        let nn = T::from_index(self.n_grid);
        self.kappa * nf * (nf - T::one()) + (self.mu1 - self.nu1 - nn * self.kappa) * nf + self.r1
    }

    /// The operator applied to the polynomial xⁿ, sampled at the given points.
    pub fn act_on_power(&self, n: usize, points: &[T]) -> Vec<T> {
        let pw = |x: T| x.powi(n as i32);
        points
            .iter()
            .map(|&x| {
                self.forward(x) * pw(x + T::one()) + self.backward(x) * pw(x - T::one()) + self.central(x) * pw(x)
            })
            .collect()
    }
}

/// The difference Heun operator as an (N+1)×(N+1) grid matrix.
pub fn difference_heun<T: Real>(dp: &DiffHeunParams<T>) -> Result<BasisOperator<T>> {
    let n = dp.n_grid;
    if n < 1 {
        return Err(Error::invalid("grid needs N >= 1"));
    }
    let mut m = DenseMatrix::zeros(n + 1, n + 1);
    for x in 0..=n {
        let xf = T::from_index(x);
        m[(x, x)] = dp.central(xf);
        if x < n {
            m[(x, x + 1)] = dp.forward(xf);
        }
        if x > 0 {
            m[(x, x - 1)] = dp.backward(xf);
        }
    }
    BasisOperator::new(m, crate::operators::BasisTag::Grid { n })
}

/// Difference Heun coefficients equivalent to the Hahn-type algebraic Heun operator.
pub fn param_match_difference<T: Real>(t: &HeunTau<T>, p: &HahnParams<T>) -> DiffHeunParams<T> {
    let one = T::one();
    let a1 = p.alpha + one;
    let nb = p.beta + T::from_index(p.n_grid) + one;
    let k = t.kappa();
    DiffHeunParams {
        kappa: k,
        mu1: k * a1 + t.tau2 + t.tau4,
        mu0: a1 * (t.tau2 + t.tau4),
        nu1: t.tau4 - t.tau2 - k * nb,
        nu0: -nb * (t.tau4 - t.tau2),
        r1: (p.alpha + p.beta + T::lit(2.0)) * t.tau2 + t.tau3,
        r0: t.tau0 - T::from_index(p.n_grid) * a1 * t.tau2,
        n_grid: p.n_grid,
    }
}

/// Entrywise tolerance for [`heun_hahn`], relative to the largest entry.
pub const HEUN_HAHN_TOL: f64 = 1e-11;

fn heun_hahn_matrix<T: Real>(t: &HeunTau<T>, p: &HahnParams<T>) -> Result<BasisOperator<T>> {
    let n = p.n_grid;
    let one = T::one();
    let k = t.kappa();
    let mut m = DenseMatrix::zeros(n + 1, n + 1);
    for x in 0..=n {
        let xf = T::from_index(x);
        let a1 = p.forward(xf) * (k * xf + t.tau2 + t.tau4);
        let a2 = p.backward(xf) * (k * xf + t.tau4 - t.tau2);
        let a0 = -a1 - a2 + ((p.alpha + p.beta + T::lit(2.0)) * t.tau2 + t.tau3) * xf + t.tau0
            - T::from_index(n) * (p.alpha + one) * t.tau2;
        m[(x, x)] = a0;
        if x < n {
            m[(x, x + 1)] = a1;
        }
        if x > 0 {
            m[(x, x - 1)] = a2;
        }
    }
    BasisOperator::new(m, p.grid_tag())
}

/// Largest entrywise gap between the factored Hahn-type Heun operator and
/// `algebraic_heun(X, Y, τ)` on the grid, relative to the largest entry.
pub fn heun_hahn_mismatch<T: Real>(t: &HeunTau<T>, p: &HahnParams<T>) -> Result<T> {
    let w = heun_hahn_matrix(t, p)?;
    let a = algebraic_heun(&grid_x(p.n_grid)?, &hahn_operator(p), t)?;
    let scale = a.matrix().max_abs().max(T::min_positive_value());
    Ok((w.matrix() - a.matrix()).max_abs() / scale)
}

/// The Hahn-type algebraic Heun operator built from its factored coefficients.
pub fn heun_hahn<T: Real>(t: &HeunTau<T>, p: &HahnParams<T>) -> Result<BasisOperator<T>> {
    let gap = heun_hahn_mismatch(t, p)?;
    if gap.as_f64() > HEUN_HAHN_TOL {
        return Err(Error::tolerance("heun-hahn vs algebraic form", gap.as_f64(), HEUN_HAHN_TOL));
    }
    heun_hahn_matrix(t, p)
}

/// Newton coefficients cⱼ = Δʲf(0)/j! of samples on 0, 1, …, m−1.
///
/// The coefficient of the top falling factorial equals the ordinary leading
/// coefficient, and cⱼ = 0 for j above the degree.
pub fn newton_coefficients<T: Real>(values: &[T]) -> Vec<T> {
    let mut d = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    let mut fact = T::one();
    for j in 0..values.len() {
        if j > 0 {
            fact = fact * T::from_index(j);
        }
        out.push(d[0] / fact);
        for i in 0..d.len().saturating_sub(1) {
            d[i] = d[i + 1] - d[i];
        }
        d.pop();
    }
    out
}

/// Largest Newton coefficient above `degree`, relative to the largest overall.
pub fn degree_excess<T: Real>(values: &[T], degree: usize) -> T {
    let c = newton_coefficients(values);
    let top = c.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if top == T::zero() {
        return T::zero();
    }
    c.iter().skip(degree + 1).fold(T::zero(), |m, v| m.max(v.abs())) / top
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_map_to_linear() {
        let dp = DiffHeunParams {
            kappa: 0.7,
            mu1: 0.2,
            mu0: -0.4,
            nu1: 1.1,
            nu0: 0.3,
            r1: 0.9,
            r0: -0.5,
            n_grid: 6,
        };
        let w = difference_heun(&dp).unwrap();
        let out = w.matrix().matvec(&[1.0; 7]);
        for (x, v) in out.iter().enumerate() {
            assert!((v - (0.9 * x as f64 - 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_is_leading_newton_coefficient() {
        let dp = DiffHeunParams {
            kappa: 0.7,
            mu1: 0.2,
            mu0: -0.4,
            nu1: 1.1,
            nu0: 0.3,
            r1: 0.9,
            r0: -0.5,
            n_grid: 8,
        };
        let w = difference_heun(&dp).unwrap();
        for n in 0..8 {
            let power: Vec<f64> = (0..=8).map(|x| (x as f64).powi(n as i32)).collect();
            let c = newton_coefficients(&w.matrix().matvec(&power));
            let top = c.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            assert!((c[n + 1] - dp.sigma(n)).abs() / top < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn small_hand_case() {
        let dp = DiffHeunParams {
            kappa: 1.0,
            mu1: 0.0,
            mu0: 0.0,
            nu1: 0.0,
            nu0: 0.0,
            r1: 0.0,
            r0: 0.0,
            n_grid: 2,
        };
        let w = difference_heun(&dp).unwrap();
        // A₁ = (x−2)x², A₂ = x³, A₀ = −A₁ − A₂
        let want = [[0.0, 0.0, 0.0], [1.0, 0.0, -1.0], [0.0, 8.0, -8.0]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(w.matrix()[(i, j)], want[i][j]);
            }
        }
    }

    #[test]
    fn special_taus() {
        let p = HahnParams::<f64>::new(0.3, 0.7, 5).unwrap();
        let y = heun_hahn(&HeunTau::new([0.0, 0.0, 0.0, 0.0, 1.0]), &p).unwrap();
        assert_eq!(y.matrix(), hahn_operator(&p).matrix());
        let x = heun_hahn(&HeunTau::new([0.0, 0.0, 0.0, 1.0, 0.0]), &p).unwrap();
        assert_eq!(x.matrix(), grid_x::<f64>(5).unwrap().matrix());
    }

    #[test]
    fn matched_parameters_rebuild() {
        let p = HahnParams::<f64>::new(0.3, 0.7, 6).unwrap();
        let t = HeunTau::new([0.2, 0.5, -1.2, 0.8, 0.35]);
        let w = heun_hahn(&t, &p).unwrap();
        let d = difference_heun(&param_match_difference(&t, &p)).unwrap();
        assert!((w.matrix() - d.matrix()).max_abs() < 1e-12 * w.matrix().max_abs());
        let flat = param_match_difference(&HeunTau::new([0.0, 1.0, -1.0, 0.0, 0.0]), &p);
        assert_eq!(flat.kappa, 0.0);
    }

    #[test]
    fn newton_detects_degree() {
        let v: Vec<f64> = (0..8).map(|x| (x as f64).powi(3) - 2.0 * x as f64).collect();
        let c = newton_coefficients(&v);
        assert!((c[3] - 1.0).abs() < 1e-12);
        assert!(degree_excess(&v, 3) < 1e-14);
    }
}
