use crate::error::{Error, Result};
use crate::linalg::eigen::{sym_tridiag_eig, SymTridiag};
use crate::orthopoly::RecurrencePair;
use crate::scalar::Real;

/// Gaussian quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> Quadrature<T> {
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// m-point Gauss rule for the weight encoded by `rec`.
pub fn golub_welsch<T: Real>(rec: &RecurrencePair<T>, m: usize) -> Result<Quadrature<T>> {
    if m == 0 {
        return Err(Error::invalid("quadrature needs at least one node"));
    }
    if rec.len() < m {
        return Err(Error::Dimension(format!(
            "recurrence covers degree {} but {m} nodes were requested",
            rec.max_degree()
        )));
    }
    let mut off = Vec::with_capacity(m - 1);
    for n in 1..m {
        let u = rec.u(n);
        if !(u > T::zero()) {
            return Err(Error::invalid(format!("u_{n} = {u} is not positive")));
        }
        off.push(u.sqrt());
    }
    let t = SymTridiag::new(rec.b()[..m].to_vec(), off)?;
    let eig = sym_tridiag_eig(&t)?;
    let mass = rec.mass();
    let weights = (0..m)
        .map(|k| {
            let v0 = eig.vectors[(0, k)];
            mass * v0 * v0
        })
        .collect();
    Ok(Quadrature {
        nodes: eig.values,
        weights,
    })
}
