use crate::error::{Error, Result};
use crate::heun::differential::{degree_raise, heun_diff_build, poly_diff_matrix, HeunDiffParams};
use crate::linalg::{least_squares, DenseMatrix};
use crate::operators::{monomial_hypergeom, monomial_x, BasisOperator, BasisTag};
use crate::orthopoly::JacobiParams;
use crate::scalar::Real;

/// Coefficients of `τ₁XY + τ₂YX + τ₃X + τ₄Y + τ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeunTau<T> {
    pub tau0: T,
    pub tau1: T,
    pub tau2: T,
    pub tau3: T,
    pub tau4: T,
}

impl<T: Real> HeunTau<T> {
    /// Takes the coefficients in the order τ₀, τ₁, τ₂, τ₃, τ₄.
    pub fn new(t: [T; 5]) -> Self {
        Self {
            tau0: t[0],
            tau1: t[1],
            tau2: t[2],
            tau3: t[3],
            tau4: t[4],
        }
    }

    pub fn to_array(&self) -> [T; 5] {
        [self.tau0, self.tau1, self.tau2, self.tau3, self.tau4]
    }

    /// τ₁ + τ₂, the weight of the second-order part.
    pub fn kappa(&self) -> T {
        self.tau1 + self.tau2
    }

    /// Rescales so that τ₁ + τ₂ = 1.
    pub fn normalized(&self) -> Result<Self> {
        let k = self.kappa();
        if k.abs() <= T::epsilon() * self.to_array().iter().fold(T::one(), |m, v| m.max(v.abs())) {
            return Err(Error::invalid("cannot normalize: tau1 + tau2 vanishes"));
        }
        Ok(Self::new(self.to_array().map(|v| v / k)))
    }
}

/// `τ₁XY + τ₂YX + τ₃X + τ₄Y + τ₀I`.
pub fn algebraic_heun<T: Real>(x: &BasisOperator<T>, y: &BasisOperator<T>, t: &HeunTau<T>) -> Result<BasisOperator<T>> {
    let xy = x.compose(y)?;
    let yx = y.compose(x)?;
    let w = BasisOperator::combination(&[(t.tau1, &xy), (t.tau2, &yx), (t.tau3, x), (t.tau4, y)])?;
    Ok(w.shift(t.tau0))
}

/// The Jacobi-realization Heun operator written out as a differential
/// operator, for τ₁ + τ₂ = 1:
///
/// `x(1−x)(x+τ₄)∂² + [x(α+1+2τ₂ − (α+β+2+2τ₂)x) + τ₄(α+1−(α+β+2)x)]∂
///  + (τ₃ − τ₂(α+β+2))x + (α+1)τ₂ + τ₀`.
pub fn explicit_m<T: Real>(p: &JacobiParams<T>, t: &HeunTau<T>, k: usize) -> Result<BasisOperator<T>> {
    if (t.kappa() - T::one()).abs().as_f64() > 1e-12 {
        return Err(Error::invalid("explicit form needs tau1 + tau2 = 1"));
    }
    let a = p.alpha + T::one();
    let s2 = p.sum() + T::lit(2.0);
    let two = T::lit(2.0);
    let c2 = [T::zero(), t.tau4, T::one() - t.tau4, -T::one()];
    let c1 = [t.tau4 * a, a + two * t.tau2 - t.tau4 * s2, -(s2 + two * t.tau2)];
    let c0 = [a * t.tau2 + t.tau0, t.tau3 - t.tau2 * s2];
    let m = poly_diff_matrix(&c2, &c1, &c0, k);
    let raise = degree_raise(&c2, &c1, &c0);
    Ok(BasisOperator::new(m, BasisTag::Monomial { degree: k })?.with_window(k + 1 - raise, raise))
}

/// Why an algebraic Heun operator has no regular Heun form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// τ₁ + τ₂ = 0: no cubic second-derivative coefficient.
    NoCubicTerm,
    /// The fourth singular point merges with x = 0.
    SingularityAtZero,
    /// The fourth singular point merges with x = 1.
    SingularityAtOne,
}

/// Heun form fitted to an algebraic Heun operator.
#[derive(Debug, Clone, PartialEq)]
pub struct HeunFit<T> {
    /// Overall factor: algebraic = scale · Heun.
    pub scale: T,
    pub d_sing: T,
    /// ρ₂, ρ₁, ρ₀.
    pub rho: [T; 3],
    /// r₁, r₀.
    pub r: [T; 2],
    /// Relative Frobenius misfit on the exactness window.
    pub residual: T,
    pub params: Option<HeunDiffParams<T>>,
    pub degeneracy: Option<Degeneracy>,
}

/// Reads the Heun parameters off the monomial matrix of `algebraic_heun(X, D_x, τ)`.
///
/// Column k of the Heun matrix depends linearly on
/// (s, s·d, s·ρ₂, s·ρ₁, s·ρ₀, s·r₁, s·r₀) where s is the overall scale,
/// so the fit is one linear least-squares solve.
pub fn match_heun_params<T: Real>(t: &HeunTau<T>, p: &JacobiParams<T>, k: usize) -> Result<HeunFit<T>> {
    if k < 4 {
        return Err(Error::WindowTooSmall("heun fit needs K >= 4".into()));
    }
    let x = monomial_x(k)?;
    let y = monomial_hypergeom(p, k)?;
    let w = algebraic_heun(&x, &y, t)?;
    let cols = w.exact_columns();
    let a = w.matrix();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for j in 0..cols {
        let jf = T::from_index(j);
        let jj = jf * (jf - T::one());
        for i in 0..=k {
            let mut r = [T::zero(); 7];
            if i == j + 1 {
                r[0] = -jj;
                r[2] = jf;
                r[5] = T::one();
            } else if i == j {
                r[0] = jj;
                r[1] = jj;
                r[3] = jf;
                r[6] = T::one();
            } else if i + 1 == j {
                r[1] = -jj;
                r[4] = jf;
            }
            rows.push(r.to_vec());
            rhs.push(a[(i, j)]);
        }
    }
    let design = DenseMatrix::from_rows(&rows)?;
    let fit = least_squares(&design, &rhs, T::lit(1e-12))?;
    let c = &fit.solution;
    let norm = w.exact_block().frobenius().max(T::min_positive_value());
    let scale = c[0];
    let tiny = T::lit(1e-12) * norm;
    if scale.abs() <= tiny {
        let residual = fit.residual / norm;
        return Ok(HeunFit {
            scale: T::zero(),
            d_sing: T::nan(),
            rho: [T::nan(); 3],
            r: [T::nan(); 2],
            residual,
            params: None,
            degeneracy: Some(Degeneracy::NoCubicTerm),
        });
    }
    let d = c[1] / scale;
    let rho = [c[2] / scale, c[3] / scale, c[4] / scale];
    let r = [c[5] / scale, c[6] / scale];
    let degeneracy = if d.abs().as_f64() <= 1e-12 {
        Some(Degeneracy::SingularityAtZero)
    } else if (d - T::one()).abs().as_f64() <= 1e-12 {
        Some(Degeneracy::SingularityAtOne)
    } else {
        None
    };
    let params = if degeneracy.is_none() {
        let gamma = -rho[2] / d;
        let delta = (rho[1] + rho[0] - gamma * d) / (d - T::one());
        let epsilon = -rho[0] - gamma - delta;
        Some(HeunDiffParams::from_product(gamma, delta, epsilon, -r[0], d, r[1], T::zero())?)
    } else {
        None
    };
    let residual = match &params {
        Some(hp) => {
            let rebuilt = heun_diff_build(hp, k)?.scale(scale);
            rebuilt.distance(&w)? / norm
        }
        None => fit.residual / norm,
    };
    Ok(HeunFit {
        scale,
        d_sing: d,
        rho,
        r,
        residual,
        params,
        degeneracy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jac() -> JacobiParams<f64> {
        JacobiParams::<f64>::new(0.3, 0.7).unwrap()
    }

    #[test]
    fn special_taus() {
        let x = monomial_x::<f64>(6).unwrap();
        let y = monomial_hypergeom(&jac(), 6).unwrap();
        let w = algebraic_heun(&x, &y, &HeunTau::new([0.0, 0.0, 0.0, 1.0, 0.0])).unwrap();
        assert_eq!(w.distance(&x).unwrap(), 0.0);
        let c = algebraic_heun(&x, &y, &HeunTau::new([0.0, 1.0, -1.0, 0.0, 0.0])).unwrap();
        assert!(c.distance(&x.commutator(&y).unwrap()).unwrap() < 1e-14);
    }

    #[test]
    fn explicit_form_agrees() {
        let t = HeunTau::new([0.4, 1.3, -0.3, 0.9, -0.7]);
        let x = monomial_x::<f64>(10).unwrap();
        let y = monomial_hypergeom(&jac(), 10).unwrap();
        let w = algebraic_heun(&x, &y, &t).unwrap();
        let e = explicit_m(&jac(), &t, 10).unwrap();
        assert!(w.distance(&e).unwrap() < 1e-12 * w.matrix().frobenius());
    }

    #[test]
    fn fit_recovers_heun() {
        let t = HeunTau::new([0.4, 1.3, -0.3, 0.9, -0.7]);
        let fit = match_heun_params(&t, &jac(), 10).unwrap();
        assert!(fit.residual < 1e-12, "{}", fit.residual);
        assert!((fit.d_sing - 0.7).abs() < 1e-12);
        assert!(fit.params.is_some());
    }

    #[test]
    fn pure_hypergeometric_is_degenerate() {
        let fit = match_heun_params(&HeunTau::new([0.0, 0.0, 0.0, 0.0, 1.0]), &jac(), 8).unwrap();
        assert_eq!(fit.degeneracy, Some(Degeneracy::NoCubicTerm));
    }
}
