//! Discrete time-and-band limiting on the Hahn grid.
//!
//! All matrices live in the weight-symmetrized grid frame: grid point `s`
//! is the unit vector eₛ and the Hahn vectors dₙ are the columns of
//! [`HahnBasis::vectors`]. π₁ keeps grid positions ≤ J₁, π₂ keeps Hahn
//! degrees ≤ J₂.

use crate::error::{Error, Result};
use crate::heun::{algebraic_heun, HeunTau};
use crate::linalg::{dense_sym_eig, gram_eig, norm2, sym_tridiag_eig, DenseMatrix, EigenDecomposition, SymTridiag};
use crate::operators::{grid_x, symmetrize_grid, BasisOperator, DualityData};
use crate::orthopoly::{hahn_basis, hahn_operator, HahnBasis, HahnParams};
use crate::scalar::Real;

/// A limiting instance: grid size and Hahn parameters plus the two cutoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitingConfig<T> {
    pub hahn: HahnParams<T>,
    pub j1: usize,
    pub j2: usize,
}

impl<T: Real> LimitingConfig<T> {
    pub fn new(hahn: HahnParams<T>, j1: usize, j2: usize) -> Result<Self> {
        let n = hahn.n_grid;
        if j1 > n || j2 > n {
            return Err(Error::invalid(format!("cutoffs ({j1}, {j2}) must not exceed N = {n}")));
        }
        Ok(Self { hahn, j1, j2 })
    }

    pub fn n(&self) -> usize {
        self.hahn.n_grid
    }

    /// True when either cutoff keeps everything.
    pub fn is_boundary(&self) -> bool {
        self.j1 == self.n() || self.j2 == self.n()
    }
}

/// Thresholds used by the limiting routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitingTolerances {
    /// Idempotence and symmetry of π₁, π₂.
    pub projection: f64,
    /// Pairwise kernel-route agreement and agreement with the direct product.
    pub kernel: f64,
    /// ‖[M, πᵢ]‖_F relative to ‖M‖_F.
    pub commutator: f64,
    /// Coupling of M across the π₁ block boundary, relative to ‖M‖_F.
    pub block: f64,
    /// Eigengaps of M below this times its spread count as degenerate.
    pub degeneracy: f64,
    /// Eigenvector angles are compared only where V₁ eigengaps exceed this.
    pub angle_gap: f64,
}

impl Default for LimitingTolerances {
    fn default() -> Self {
        Self {
            projection: 1e-12,
            kernel: 1e-10,
            commutator: 1e-10,
            block: 1e-10,
            degeneracy: 1e-8,
            angle_gap: 1e-10,
        }
    }
}

/// π₁ and π₂ as grid operators in the symmetrized frame.
pub fn projections<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>) -> Result<(BasisOperator<T>, BasisOperator<T>)> {
    check_basis(c, basis)?;
    let n = c.n();
    let tag = c.hahn.grid_tag();
    let keep1: Vec<T> = (0..=n).map(|s| if s <= c.j1 { T::one() } else { T::zero() }).collect();
    let pi1 = DenseMatrix::from_diag(&keep1);
    let pi2 = if c.j2 == n {
        // completeness of the Hahn basis
        DenseMatrix::identity(n + 1)
    } else {
        let low = basis.vectors.submatrix(0, 0, n + 1, c.j2 + 1);
        (&low * &low.transpose()).symmetrized()
    };
    Ok((BasisOperator::new(pi1, tag)?, BasisOperator::new(pi2, tag)?))
}

/// `max(‖π² − π‖_F, ‖π − πᵀ‖_F)`.
pub fn projection_defect<T: Real>(p: &BasisOperator<T>) -> T {
    let m = p.matrix();
    let sq = m * m;
    (&sq - m).frobenius().max((m - &m.transpose()).frobenius())
}

#[derive(Debug, Clone)]
pub struct LimitingOps<T> {
    /// π₁π₂π₁.
    pub v1: BasisOperator<T>,
    /// π₂π₁π₂.
    pub v2: BasisOperator<T>,
    /// π₁π₂.
    pub e1: BasisOperator<T>,
    /// π₂π₁.
    pub e2: BasisOperator<T>,
}

pub fn limiting_ops<T: Real>(pi1: &BasisOperator<T>, pi2: &BasisOperator<T>) -> Result<LimitingOps<T>> {
    let e1 = pi1.compose(pi2)?;
    let e2 = pi2.compose(pi1)?;
    let v1 = BasisOperator::new(e1.compose(&e2)?.matrix().symmetrized(), pi1.basis())?;
    let v2 = BasisOperator::new(e2.compose(&e1)?.matrix().symmetrized(), pi1.basis())?;
    Ok(LimitingOps { v1, v2, e1, e2 })
}

/// The three printed expressions for the discrete kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelRoute {
    /// Σₛ √(wₙw̃ₛ) φₛ(λₙ) χₜ(μₛ).
    Mixed,
    /// Σₛ √(wₙwₜ) φₛ(λₙ) φₛ(λₜ).
    Polynomial,
    /// Σₛ w̃ₛ χₙ(μₛ) χₜ(μₛ).
    Dual,
}

impl KernelRoute {
    pub const ALL: [KernelRoute; 3] = [KernelRoute::Mixed, KernelRoute::Polynomial, KernelRoute::Dual];

    pub fn name(&self) -> &'static str {
        match self {
            KernelRoute::Mixed => "mixed",
            KernelRoute::Polynomial => "polynomial",
            KernelRoute::Dual => "dual",
        }
    }
}

/// K_{t,n} for t ≤ J₁ and all n, as computed by one route.
#[derive(Debug, Clone)]
pub struct KernelMatrix<T> {
    pub k: DenseMatrix<T>,
    pub route: KernelRoute,
}

#[derive(Debug, Clone)]
pub struct KernelSet<T> {
    pub routes: Vec<KernelMatrix<T>>,
    /// Largest pairwise entry difference between routes.
    pub route_gap: T,
    /// Largest difference from ⟨eₜ, π₁π₂ eₙ⟩ over all n.
    pub projection_gap: T,
    /// Largest difference from ⟨eₜ, V₁ eₙ⟩ over n ≤ J₁, where V₁eₙ has no
    /// component outside the π₁ range.
    pub v1_gap: T,
}

impl<T: Real> KernelSet<T> {
    pub fn kernel(&self, route: KernelRoute) -> &DenseMatrix<T> {
        &self.routes.iter().find(|k| k.route == route).expect("all routes present").k
    }

    pub fn max_gap(&self) -> T {
        self.route_gap.max(self.projection_gap).max(self.v1_gap)
    }
}

/// All three kernel routes, without tolerance checks.
pub fn kernel_routes<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>) -> Result<KernelSet<T>> {
    check_basis(c, basis)?;
    let n = c.n();
    let d = DualityData::from_basis(basis)?;
    let w = &d.weights;
    let wd = &d.dual_weights;
    let build = |route: KernelRoute| {
        let k = DenseMatrix::from_fn(c.j1 + 1, n + 1, |t, m| {
            (0..=c.j2)
                .map(|s| match route {
                    KernelRoute::Mixed => (w[m] * wd[s]).sqrt() * d.phi[(m, s)] * d.chi[(t, s)],
                    KernelRoute::Polynomial => (w[m] * w[t]).sqrt() * d.phi[(m, s)] * d.phi[(t, s)],
                    KernelRoute::Dual => wd[s] * d.chi[(m, s)] * d.chi[(t, s)],
                })
                .sum()
        });
        KernelMatrix { k, route }
    };
    let routes: Vec<KernelMatrix<T>> = KernelRoute::ALL.iter().map(|&r| build(r)).collect();
    let mut route_gap = T::zero();
    for i in 0..routes.len() {
        for j in (i + 1)..routes.len() {
            route_gap = route_gap.max((&routes[i].k - &routes[j].k).max_abs());
        }
    }
    let (pi1, pi2) = projections(c, basis)?;
    let ops = limiting_ops(&pi1, &pi2)?;
    let mut projection_gap = T::zero();
    let mut v1_gap = T::zero();
    for r in &routes {
        for t in 0..=c.j1 {
            for m in 0..=n {
                projection_gap = projection_gap.max((r.k[(t, m)] - ops.e1.matrix()[(t, m)]).abs());
                if m <= c.j1 {
                    v1_gap = v1_gap.max((r.k[(t, m)] - ops.v1.matrix()[(t, m)]).abs());
                }
            }
        }
    }
    Ok(KernelSet {
        routes,
        route_gap,
        projection_gap,
        v1_gap,
    })
}

/// Kernel routes with the agreement check applied.
pub fn kernel_matrix<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>, tol: &LimitingTolerances) -> Result<KernelSet<T>> {
    let ks = kernel_routes(c, basis)?;
    let gap = ks.max_gap().as_f64();
    if gap > tol.kernel {
        return Err(Error::tolerance("discrete kernel routes", gap, tol.kernel));
    }
    Ok(ks)
}

#[derive(Debug, Clone)]
pub struct CommutingSolution<T> {
    pub tau: HeunTau<T>,
    /// ½{X, Y} + τ₃X + τ₄Y in the symmetrized grid frame.
    pub m_matrix: SymTridiag<T>,
    /// (‖[M, π₁]‖_F, ‖[M, π₂]‖_F) divided by ‖M‖_F.
    pub commutator_residuals: (T, T),
    pub m_norm: T,
    /// Smallest gap in the spectrum of M.
    pub spectrum_gap: T,
    pub spectrum_spread: T,
    pub warnings: Vec<String>,
}

/// τ₁ = τ₂ = ½ with τ₃, τ₄ chosen so that M commutes with π₁ and π₂.
pub fn commuting_params<T: Real>(c: &LimitingConfig<T>) -> Result<HeunTau<T>> {
    if c.is_boundary() {
        return Err(Error::invalid("commuting operator needs J1 < N and J2 < N"));
    }
    let half = T::lit(0.5);
    let lam = |s: usize| T::from_index(s);
    let tau4 = -half * (lam(c.j1) + lam(c.j1 + 1));
    let tau3 = -half * (c.hahn.eigenvalue(c.j2) + c.hahn.eigenvalue(c.j2 + 1));
    Ok(HeunTau::new([T::zero(), half, half, tau3, tau4]))
}

pub fn commuting_tau<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>, tol: &LimitingTolerances) -> Result<CommutingSolution<T>> {
    check_basis(c, basis)?;
    let tau = commuting_params(c)?;
    let x = grid_x(c.n())?;
    let y = hahn_operator(&c.hahn);
    let m = algebraic_heun(&x, &y, &tau)?;
    let sym = symmetrize_grid(&m, basis)?;
    let m_norm = sym.frobenius();
    let asym = sym.asymmetry();
    if asym.as_f64() > tol.commutator * m_norm.as_f64().max(1.0) {
        return Err(Error::tolerance("commuting operator asymmetry", asym.as_f64(), tol.commutator));
    }
    let m_matrix = SymTridiag::from_dense_band(&sym.symmetrized())?;
    let dense = m_matrix.to_dense();
    let (pi1, pi2) = projections(c, basis)?;
    let comm = |p: &DenseMatrix<T>| {
        let a = &dense * p;
        let b = p * &dense;
        (&a - &b).frobenius() / m_norm
    };
    let commutator_residuals = (comm(pi1.matrix()), comm(pi2.matrix()));
    let worst = commutator_residuals.0.max(commutator_residuals.1).as_f64();
    if worst > tol.commutator {
        return Err(Error::tolerance("commutator with limiting projections", worst, tol.commutator));
    }
    let eig = sym_tridiag_eig(&m_matrix)?;
    let spectrum_gap = eig.min_gap();
    let spectrum_spread = eig.values[eig.values.len() - 1] - eig.values[0];
    let mut warnings = Vec::new();
    if spectrum_gap.as_f64() < tol.degeneracy * spectrum_spread.as_f64() {
        warnings.push(format!(
            "near-degenerate commuting spectrum: gap {:e}, spread {:e}",
            spectrum_gap.as_f64(),
            spectrum_spread.as_f64()
        ));
    }
    Ok(CommutingSolution {
        tau,
        m_matrix,
        commutator_residuals,
        m_norm,
        spectrum_gap,
        spectrum_spread,
        warnings,
    })
}

/// How the via-M column of a [`SpectralReport`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralRoute {
    /// A cutoff equals N and the projection answer is used.
    Analytic,
    CommutingOperator,
}

/// Gap structure of V₁ against that of M.
#[derive(Debug, Clone)]
pub struct ConditionDiagnostics<T> {
    /// Smallest gap in the π₁ block spectrum of V₁.
    pub v1_min_gap: T,
    /// Smallest gap in the π₁ block spectrum of M (infinite on the analytic route).
    pub m_block_min_gap: T,
    /// `m_block_min_gap / v1_min_gap`.
    pub gap_ratio: T,
    /// Index ranges of M block eigenvalues treated as one cluster.
    pub clusters: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

/// Spectrum of V₁ on the range of π₁, by the direct and commuting routes.
///
/// Eigenvalues are ascending; the eigenvectors are columns indexed by grid
/// position 0..=J₁.
#[derive(Debug, Clone)]
pub struct SpectralReport<T> {
    pub config: LimitingConfig<T>,
    pub route: SpectralRoute,
    /// From the Gram factors of V₁ and of π₁ − V₁.
    pub v1_eigs_direct: Vec<T>,
    pub v1_vectors_direct: DenseMatrix<T>,
    /// Dense symmetric eigensolver on the π₁ block of V₁.
    pub v1_eigs_dense: Vec<T>,
    pub v1_eigs_via_m: Vec<T>,
    pub v1_vectors_via_m: DenseMatrix<T>,
    /// Full spectrum of M (empty on the analytic route).
    pub m_eigs: Vec<T>,
    pub commuting: Option<CommutingSolution<T>>,
    /// max |direct − via-M|.
    pub eigenvalue_mismatch: T,
    /// max |direct − dense|.
    pub dense_mismatch: T,
    /// Principal angle per eigenvector; `None` where a V₁ gap is too small.
    pub angles: Vec<Option<T>>,
    /// Largest of the compared angles.
    pub eigenvector_agreement: T,
    /// max ‖V₁u − θu‖ over the via-M pairs.
    pub via_m_residual: T,
    pub diagnostics: ConditionDiagnostics<T>,
}

pub fn solve<T: Real>(c: &LimitingConfig<T>) -> Result<SpectralReport<T>> {
    solve_with(c, &LimitingTolerances::default())
}

pub fn solve_with<T: Real>(c: &LimitingConfig<T>, tol: &LimitingTolerances) -> Result<SpectralReport<T>> {
    let basis = hahn_basis(&c.hahn)?;
    let (pi1, pi2) = projections(c, &basis)?;
    let pdef = projection_defect(&pi1).max(projection_defect(&pi2)).as_f64();
    if pdef > tol.projection {
        return Err(Error::tolerance("projection idempotence", pdef, tol.projection));
    }
    let ops = limiting_ops(&pi1, &pi2)?;
    let b = c.j1 + 1;
    let v1_block = ops.v1.matrix().submatrix(0, 0, b, b);

    let direct = direct_spectrum(c, &basis)?;
    let dense = dense_sym_eig(&v1_block)?;
    let dense_mismatch = max_diff(&direct.values, &dense.values);

    let (route, via, m_eigs, commuting, m_block_min_gap, clusters) = if c.is_boundary() {
        let via = analytic_spectrum(c, &basis);
        (SpectralRoute::Analytic, via, Vec::new(), None, T::infinity(), Vec::new())
    } else {
        let sol = commuting_tau(c, &basis, tol)?;
        let full = sym_tridiag_eig(&sol.m_matrix)?;
        let (via, gap, clusters) = via_commuting(c, &basis, &sol, &v1_block, tol)?;
        (SpectralRoute::CommutingOperator, via, full.values, Some(sol), gap, clusters)
    };

    let eigenvalue_mismatch = max_diff(&direct.values, &via.values);
    let v1_min_gap = direct.min_gap();
    let mut angles = Vec::with_capacity(b);
    let mut eigenvector_agreement = T::zero();
    for i in 0..b {
        let lo = if i > 0 { direct.values[i] - direct.values[i - 1] } else { T::infinity() };
        let hi = if i + 1 < b { direct.values[i + 1] - direct.values[i] } else { T::infinity() };
        if lo.min(hi).as_f64() > tol.angle_gap {
            let a = principal_angle(&direct.vector(i), &via.vector(i));
            eigenvector_agreement = eigenvector_agreement.max(a);
            angles.push(Some(a));
        } else {
            angles.push(None);
        }
    }
    let mut via_m_residual = T::zero();
    for i in 0..b {
        let u = via.vector(i);
        let vu = v1_block.matvec(&u);
        let r: Vec<T> = vu.iter().zip(&u).map(|(&a, &x)| a - via.values[i] * x).collect();
        via_m_residual = via_m_residual.max(norm2(&r));
    }

    let mut warnings = commuting.as_ref().map(|s| s.warnings.clone()).unwrap_or_default();
    if clusters.iter().any(|&(a, z)| z > a) {
        warnings.push("commuting block has clustered eigenvalues; V1 diagonalized within clusters".into());
    }
    let gap_ratio = if v1_min_gap > T::zero() { m_block_min_gap / v1_min_gap } else { T::infinity() };
    Ok(SpectralReport {
        config: *c,
        route,
        v1_eigs_direct: direct.values.clone(),
        v1_vectors_direct: direct.vectors,
        v1_eigs_dense: dense.values,
        v1_eigs_via_m: via.values.clone(),
        v1_vectors_via_m: via.vectors,
        m_eigs,
        commuting,
        eigenvalue_mismatch,
        dense_mismatch,
        angles,
        eigenvector_agreement,
        via_m_residual,
        diagnostics: ConditionDiagnostics {
            v1_min_gap,
            m_block_min_gap,
            gap_ratio,
            clusters,
            warnings,
        },
    })
}

fn check_basis<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>) -> Result<()> {
    if basis.params != c.hahn {
        return Err(Error::BasisMismatch {
            left: c.hahn.tag().to_string(),
            right: basis.params.tag().to_string(),
        });
    }
    Ok(())
}

fn max_diff<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
}

/// Angle between the lines spanned by two unit vectors, accurate when small.
fn principal_angle<T: Real>(u: &[T], v: &[T]) -> T {
    let minus: Vec<T> = u.iter().zip(v).map(|(&a, &b)| a - b).collect();
    let plus: Vec<T> = u.iter().zip(v).map(|(&a, &b)| a + b).collect();
    let chord = norm2(&minus).min(norm2(&plus));
    T::lit(2.0) * (chord / T::lit(2.0)).min(T::one()).asin()
}

/// Block of V₁ as BBᵀ with B the first J₁+1 grid rows of the Hahn vectors
/// of degree ≤ J₂; the complement π₁ − V₁ = B'B'ᵀ uses the remaining
/// degrees. Small eigenvalues come from B, large ones from B'.
fn direct_spectrum<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>) -> Result<EigenDecomposition<T>> {
    let n = c.n();
    let b = c.j1 + 1;
    let v = &basis.vectors;
    let low = v.submatrix(0, 0, b, c.j2 + 1).transpose();
    let kept = gram_eig(&low)?;
    if c.j2 == n {
        return Ok(kept);
    }
    let high = v.submatrix(0, c.j2 + 1, b, n - c.j2).transpose();
    let dropped = gram_eig(&high)?;
    let half = T::lit(0.5);
    let mut values = Vec::with_capacity(b);
    let mut vectors = DenseMatrix::zeros(b, b);
    for i in 0..b {
        let j = b - 1 - i;
        let (val, col) = if kept.values[i] <= half {
            (kept.values[i], kept.vector(i))
        } else {
            (T::one() - dropped.values[j], dropped.vector(j))
        };
        values.push(val);
        vectors.set_column(i, &col);
    }
    let full = &low.transpose() * &low;
    let residual = eig_residual(&full, &values, &vectors);
    Ok(EigenDecomposition { values, vectors, residual })
}

fn eig_residual<T: Real>(a: &DenseMatrix<T>, values: &[T], vectors: &DenseMatrix<T>) -> T {
    (0..values.len())
        .map(|i| {
            let u = vectors.column(i);
            let au = a.matvec(&u);
            let r: Vec<T> = au.iter().zip(&u).map(|(&x, &y)| x - values[i] * y).collect();
            norm2(&r)
        })
        .fold(T::zero(), T::max)
}

/// The projection answer when J₁ = N or J₂ = N.
fn analytic_spectrum<T: Real>(c: &LimitingConfig<T>, basis: &HahnBasis<T>) -> EigenDecomposition<T> {
    let n = c.n();
    let b = c.j1 + 1;
    if c.j2 == n {
        // V₁ = π₁: identity on the block.
        return EigenDecomposition {
            values: vec![T::one(); b],
            vectors: DenseMatrix::identity(b),
            residual: T::zero(),
        };
    }
    // J₁ = N: V₁ = π₂, eigenvectors are the Hahn vectors.
    let mut order: Vec<usize> = (c.j2 + 1..=n).collect();
    order.extend(0..=c.j2);
    let values = order.iter().map(|&k| if k <= c.j2 { T::one() } else { T::zero() }).collect();
    let cols: Vec<Vec<T>> = order.iter().map(|&k| basis.vectors.column(k)).collect();
    EigenDecomposition {
        values,
        vectors: DenseMatrix::from_columns(&cols).expect("square hahn basis"),
        residual: T::zero(),
    }
}

type ViaM<T> = (EigenDecomposition<T>, T, Vec<(usize, usize)>);

/// Eigenvectors of M on the π₁ block and the Rayleigh quotients of V₁.
fn via_commuting<T: Real>(
    c: &LimitingConfig<T>,
    basis: &HahnBasis<T>,
    sol: &CommutingSolution<T>,
    v1_block: &DenseMatrix<T>,
    tol: &LimitingTolerances,
) -> Result<ViaM<T>> {
    let n = c.n();
    let b = c.j1 + 1;
    let coupling = sol.m_matrix.offdiag()[c.j1].abs() / sol.m_norm;
    if coupling.as_f64() > tol.block {
        return Err(Error::tolerance("commuting operator couples the pi1 range and kernel", coupling.as_f64(), tol.block));
    }
    let block = SymTridiag::new(sol.m_matrix.diag()[..b].to_vec(), sol.m_matrix.offdiag()[..b - 1].to_vec())?;
    let eig = sym_tridiag_eig(&block)?;
    let spread = eig.values[b - 1] - eig.values[0];
    let threshold = T::lit(tol.degeneracy) * spread.max(T::one());

    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..=b {
        if i == b || eig.values[i] - eig.values[i - 1] > threshold {
            clusters.push((start, i - 1));
            start = i;
        }
    }

    let v = &basis.vectors;
    let low = v.submatrix(0, 0, b, c.j2 + 1);
    let high = v.submatrix(0, c.j2 + 1, b, n - c.j2);
    let mut pairs: Vec<(T, Vec<T>)> = Vec::with_capacity(b);
    for &(a, z) in &clusters {
        if a == z {
            let u = eig.vector(a);
            pairs.push((rayleigh(&low, &high, &u), u));
            continue;
        }
        let cols: Vec<Vec<T>> = (a..=z).map(|i| eig.vector(i)).collect();
        let q = DenseMatrix::from_columns(&cols)?;
        let inner = &(&q.transpose() * v1_block) * &q;
        let sub = dense_sym_eig(&inner.symmetrized())?;
        for k in 0..sub.values.len() {
            let u = q.matvec(&sub.vector(k));
            pairs.push((rayleigh(&low, &high, &u), u));
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite rayleigh quotients"));
    let values: Vec<T> = pairs.iter().map(|p| p.0).collect();
    let cols: Vec<Vec<T>> = pairs.into_iter().map(|p| p.1).collect();
    let vectors = DenseMatrix::from_columns(&cols)?;
    let residual = eig_residual(v1_block, &values, &vectors);
    Ok((EigenDecomposition { values, vectors, residual }, eig.min_gap(), clusters))
}

/// uᵀV₁u for a unit u in the π₁ block, from whichever factor avoids cancellation.
fn rayleigh<T: Real>(low: &DenseMatrix<T>, high: &DenseMatrix<T>, u: &[T]) -> T {
    let kept = norm2(&low.transpose().matvec(u)).powi(2);
    if kept <= T::lit(0.5) {
        kept
    } else {
        T::one() - norm2(&high.transpose().matvec(u)).powi(2)
    }
}
