//! Jacobi matrices of x̂, p̂ and the parity blocks of Ĥ, their spectra, and
//! the formal eigenvector recurrence.
//!
//! x̂ and p̂ are tridiagonal in the orthonormal basis. Ĥ couples e_n only to
//! e_{n±2}, so it splits into an even chain (e₀, e₂, …) and an odd chain
//! (e₁, e₃, …), each tridiagonal with purely imaginary off-diagonals. The
//! diagonal gauge e_n → i^⌊n/2⌋ e_n turns both chains real and positive.

pub mod tridiagonal;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classification::{raising_squares, Family};
use crate::error::{Error, Result};
use crate::number::Number;

pub use tridiagonal::Eigenpairs;

pub const DEFAULT_INTERVALS: [f64; 3] = [1.0, 2.0, 5.0];
pub const RESIDUAL_FACTOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemLabel {
    PositionFull,
    MomentumFull,
    HamiltonianEven,
    HamiltonianOdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalSystem {
    pub mu: Number,
    pub label: SystemLabel,
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
    /// Exact squares of the off-diagonal entries.
    pub offdiagonal_squares: Vec<Number>,
    /// Diagonal phase transformation applied to make the entries real.
    pub gauge: String,
}

impl TridiagonalSystem {
    fn from_squares(mu: &Number, label: SystemLabel, squares: Vec<Number>, gauge: &str) -> Self {
        TridiagonalSystem {
            mu: mu.clone(),
            label,
            diagonal: vec![0.0; squares.len() + 1],
            offdiagonal: squares.iter().map(Number::sqrt_f64).collect(),
            offdiagonal_squares: squares,
            gauge: gauge.to_string(),
        }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    /// Leading `n`×`n` section.
    pub fn truncate(&self, n: usize) -> TridiagonalSystem {
        let n = n.clamp(1, self.dim());
        TridiagonalSystem {
            mu: self.mu.clone(),
            label: self.label,
            diagonal: self.diagonal[..n].to_vec(),
            offdiagonal: self.offdiagonal[..n - 1].to_vec(),
            offdiagonal_squares: self.offdiagonal_squares[..n - 1].to_vec(),
            gauge: self.gauge.clone(),
        }
    }

    pub fn norm(&self) -> f64 {
        tridiagonal::inf_norm(&self.diagonal, &self.offdiagonal)
    }

    pub fn eigenpairs(&self) -> Result<Eigenpairs> {
        tridiagonal::ql_implicit(&self.diagonal, &self.offdiagonal)
    }

    /// Eigenpairs in [lo, hi] by bisection and inverse iteration.
    pub fn eigenpairs_in(&self, lo: f64, hi: f64) -> Eigenpairs {
        tridiagonal::eigenpairs_in(&self.diagonal, &self.offdiagonal, lo, hi)
    }

    pub fn count_in(&self, lo: f64, hi: f64) -> usize {
        tridiagonal::count_in_closed(&self.diagonal, &self.offdiagonal, lo, hi)
    }

    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        tridiagonal::residual(&self.diagonal, &self.offdiagonal, lambda, v)
    }
}

fn require_positive(mu: &Number) -> Result<()> {
    if mu.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "mu must be positive, got {mu}"
        )))
    }
}

fn require_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::DimensionTooSmall { dim, min: 1 })
    } else {
        Ok(())
    }
}

/// x̂ in the first family: β_{2k} = √(2μ+k), β_{2k+1} = √(k+1).
pub fn jacobi_of_position(mu: &Number, dim: usize) -> Result<TridiagonalSystem> {
    require_positive(mu)?;
    require_dim(dim)?;
    let half = Number::half();
    let squares = raising_squares(Family::FinalActions, mu, dim - 1)
        .into_iter()
        .map(|s| &half * s)
        .collect();
    Ok(TridiagonalSystem::from_squares(
        mu,
        SystemLabel::PositionFull,
        squares,
        "identity",
    ))
}

/// p̂ after the gauge e_n → iⁿ e_n, which carries it onto x̂.
pub fn jacobi_of_momentum(mu: &Number, dim: usize) -> Result<TridiagonalSystem> {
    let mut sys = jacobi_of_position(mu, dim)?;
    sys.label = SystemLabel::MomentumFull;
    sys.gauge = "e_n -> i^n e_n".to_string();
    Ok(sys)
}

/// One parity chain of Ĥ with `dim` basis vectors:
/// even t_k = √((k+1)(2μ+k)), odd s_k = √((k+1)(2μ+k+1)).
pub fn jacobi_of_hamiltonian(mu: &Number, dim: usize, parity: Parity) -> Result<TridiagonalSystem> {
    require_positive(mu)?;
    require_dim(dim)?;
    let s = raising_squares(Family::FinalActions, mu, 2 * dim);
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let quarter = Number::ratio(1, 4);
    // ⟨e_{n+2}|Ĥ|e_n⟩ = (i/2) √(s_n s_{n+1})
    let squares = (0..dim - 1)
        .map(|k| {
            let n = start + 2 * k;
            &quarter * &s[n] * &s[n + 1]
        })
        .collect();
    let label = match parity {
        Parity::Even => SystemLabel::HamiltonianEven,
        Parity::Odd => SystemLabel::HamiltonianOdd,
    };
    Ok(TridiagonalSystem::from_squares(
        mu,
        label,
        squares,
        "e_n -> i^floor(n/2) e_n",
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub mu: Number,
    pub dim: usize,
    pub label: SystemLabel,
    pub gauge: String,
    pub eigenvalues: Vec<f64>,
    /// max ‖Tv − λv‖ over the computed pairs.
    pub residual: f64,
    pub interval_counts: BTreeMap<String, usize>,
}

pub fn interval_key(a: f64) -> String {
    format!("[{},{}]", -a, a)
}

pub fn eigenvalues(system: &TridiagonalSystem) -> Result<SpectrumReport> {
    spectrum_report(system, &DEFAULT_INTERVALS)
}

/// Full spectrum with eigenvalue counts in each [−a, a].
pub fn spectrum_report(system: &TridiagonalSystem, intervals: &[f64]) -> Result<SpectrumReport> {
    let pairs = system.eigenpairs()?;
    let residual = pairs
        .values
        .iter()
        .zip(&pairs.vectors)
        .map(|(l, v)| system.residual(*l, v))
        .fold(0.0, f64::max);
    let bound = RESIDUAL_FACTOR * system.norm().max(f64::MIN_POSITIVE);
    if residual > bound {
        return Err(Error::NoConvergence(format!(
            "eigenpair residual {residual:e} exceeds {bound:e}"
        )));
    }
    let interval_counts = intervals
        .iter()
        .map(|&a| (interval_key(a), system.count_in(-a, a)))
        .collect();
    Ok(SpectrumReport {
        mu: system.mu.clone(),
        dim: system.dim(),
        label: system.label,
        gauge: system.gauge.clone(),
        eigenvalues: pairs.values,
        residual,
        interval_counts,
    })
}

/// Merged multiset of several spectra, ascending.
pub fn merged_eigenvalues(reports: &[SpectrumReport]) -> Vec<f64> {
    let mut all: Vec<f64> = reports
        .iter()
        .flat_map(|r| r.eigenvalues.iter().copied())
        .collect();
    all.sort_by(f64::total_cmp);
    all
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormalEigenvector {
    pub t: f64,
    /// α₀(t), α₁(t), …, with α₀ = 1.
    pub coefficients: Vec<f64>,
}

/// Coefficients αₙ(t) of v(t) = Σ αₙ(t) eₙ solving the eigenvalue equation
/// row by row: β_{n−1}α_{n−1} + d_n α_n + β_n α_{n+1} = t α_n.
pub fn formal_eigenvector(
    system: &TridiagonalSystem,
    t: f64,
    n_max: usize,
) -> Result<FormalEigenvector> {
    let available = system.offdiagonal.len();
    if n_max > available {
        return Err(Error::ChainTooShort {
            requested: n_max,
            needed: n_max,
            available,
        });
    }
    if let Some(k) = system.offdiagonal_squares[..n_max]
        .iter()
        .position(Number::is_zero)
    {
        return Err(Error::DegenerateChain(k));
    }
    let beta = &system.offdiagonal;
    let d = &system.diagonal;
    let mut alpha = Vec::with_capacity(n_max + 1);
    alpha.push(1.0);
    for n in 0..n_max {
        let prev = if n > 0 {
            beta[n - 1] * alpha[n - 1]
        } else {
            0.0
        };
        alpha.push(((t - d[n]) * alpha[n] - prev) / beta[n]);
    }
    Ok(FormalEigenvector {
        t,
        coefficients: alpha,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalGrowth {
    pub label: SystemLabel,
    pub dims: Vec<usize>,
    pub counts: Vec<usize>,
    pub strictly_increasing: bool,
    pub nondecreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub mu: Number,
    pub dim: usize,
    /// Position matrix equals the canonical oscillator one; only evaluated
    /// at μ = ¼.
    pub canonical_limit: Option<bool>,
    /// Odd Ĥ chain at μ equals the even chain at μ + ½.
    pub half_shift: bool,
    pub interval: f64,
    pub growth: Vec<IntervalGrowth>,
}

impl OracleReport {
    pub fn interval_growth_strict(&self) -> bool {
        self.growth.iter().all(|g| g.strictly_increasing)
    }

    pub fn passed(&self) -> bool {
        self.canonical_limit.unwrap_or(true) && self.half_shift && self.interval_growth_strict()
    }
}

fn squares_equal(a: &[Number], b: &[Number]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).is_zero())
}

/// Counts in [−a, a] for truncations of size dims[i].
pub fn interval_growth(
    mu: &Number,
    dims: &[usize],
    a: f64,
    build: impl Fn(&Number, usize) -> Result<TridiagonalSystem>,
) -> Result<IntervalGrowth> {
    let mut counts = Vec::with_capacity(dims.len());
    let mut label = SystemLabel::PositionFull;
    for &n in dims {
        let sys = build(mu, n)?;
        label = sys.label;
        counts.push(sys.count_in(-a, a));
    }
    Ok(IntervalGrowth {
        label,
        dims: dims.to_vec(),
        strictly_increasing: counts.windows(2).all(|w| w[1] > w[0]),
        nondecreasing: counts.windows(2).all(|w| w[1] >= w[0]),
        counts,
    })
}

/// Structural checks standing in for the polynomial identifications:
/// canonical limit at μ = ¼, the half-shift between the Ĥ chains, and
/// growth of the eigenvalue count in [−a, a] as N doubles twice.
pub fn classical_oracle_check(mu: &Number, dim: usize, a: f64) -> Result<OracleReport> {
    require_positive(mu)?;
    require_dim(dim)?;

    let quarter = Number::ratio(1, 4);
    let canonical_limit = (mu.is_exact() && *mu == quarter).then(|| {
        let sys = jacobi_of_position(mu, dim).expect("validated");
        let canonical: Vec<Number> = (1..dim as i64).map(|n| Number::ratio(n, 2)).collect();
        squares_equal(&sys.offdiagonal_squares, &canonical)
    });

    let odd = jacobi_of_hamiltonian(mu, dim, Parity::Odd)?;
    let even_shifted = jacobi_of_hamiltonian(&(mu + &Number::half()), dim, Parity::Even)?;
    let half_shift = squares_equal(&odd.offdiagonal_squares, &even_shifted.offdiagonal_squares);

    let dims = [dim, 2 * dim, 4 * dim];
    let growth = vec![
        interval_growth(mu, &dims, a, jacobi_of_position)?,
        interval_growth(mu, &dims, a, |m, n| {
            jacobi_of_hamiltonian(m, n, Parity::Even)
        })?,
        interval_growth(mu, &dims, a, |m, n| {
            jacobi_of_hamiltonian(m, n, Parity::Odd)
        })?,
    ];

    Ok(OracleReport {
        mu: mu.clone(),
        dim,
        canonical_limit,
        half_shift,
        interval: a,
        growth,
    })
}
