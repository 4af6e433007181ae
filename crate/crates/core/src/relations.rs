//! The osp(1|2) identity catalog and its evaluation on truncated matrices.
//!
//! Identities are stored expanded, as sums of operator words, so checking
//! one is a fold over matrix products. A truncated realization only
//! reproduces an identity away from the cut: entry (i, j) of a word of
//! degree d involves basis indices up to max(i, j) + d, so comparisons are
//! restricted to the leading (N − degree) block.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    BPlus,
    BMinus,
    H,
    E,
    F,
    Omega,
    Casimir,
    X,
    P,
    Hamiltonian,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::BPlus,
        Generator::BMinus,
        Generator::H,
        Generator::E,
        Generator::F,
        Generator::Omega,
        Generator::Casimir,
        Generator::X,
        Generator::P,
        Generator::Hamiltonian,
    ];

    /// Degree in units of a single ladder step.
    pub fn degree(self) -> usize {
        match self {
            Generator::BPlus | Generator::BMinus | Generator::X | Generator::P => 1,
            _ => 2,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::BPlus => "b+",
            Generator::BMinus => "b-",
            Generator::H => "h",
            Generator::E => "e",
            Generator::F => "f",
            Generator::Omega => "Omega",
            Generator::Casimir => "C",
            Generator::X => "x",
            Generator::P => "p",
            Generator::Hamiltonian => "H",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `coefficient · factors[0] · factors[1] · …`; no factors means a multiple
/// of the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorWord {
    pub coefficient: C64,
    pub factors: Vec<Generator>,
}

impl OperatorWord {
    pub fn new(coefficient: C64, factors: &[Generator]) -> Self {
        OperatorWord {
            coefficient,
            factors: factors.to_vec(),
        }
    }

    pub fn real(coefficient: f64, factors: &[Generator]) -> Self {
        OperatorWord::new(C64::new(coefficient, 0.0), factors)
    }

    pub fn scalar(coefficient: f64) -> Self {
        OperatorWord::real(coefficient, &[])
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|g| g.degree()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationIdentity {
    pub name: String,
    pub lhs: Vec<OperatorWord>,
    pub rhs: Vec<OperatorWord>,
    pub degree: usize,
}

impl RelationIdentity {
    pub fn new(name: &str, lhs: Vec<OperatorWord>, rhs: Vec<OperatorWord>) -> Self {
        let degree = lhs
            .iter()
            .chain(&rhs)
            .map(OperatorWord::degree)
            .max()
            .unwrap_or(0)
            .max(1);
        RelationIdentity {
            name: name.to_string(),
            lhs,
            rhs,
            degree,
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.lhs
            .iter()
            .chain(&self.rhs)
            .flat_map(|w| w.factors.iter().copied())
    }
}

/// N×N matrices for some subset of the generator symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorAssignment {
    dimension: usize,
    matrices: BTreeMap<Generator, CMatrix>,
}

impl OperatorAssignment {
    pub fn new(dimension: usize) -> Self {
        OperatorAssignment {
            dimension,
            matrices: BTreeMap::new(),
        }
    }

    /// Every generator mapped to the zero matrix.
    pub fn zeros(dimension: usize) -> Self {
        let mut a = OperatorAssignment::new(dimension);
        for g in Generator::ALL {
            a.matrices.insert(g, CMatrix::zeros(dimension, dimension));
        }
        a
    }

    pub fn insert(&mut self, symbol: Generator, matrix: CMatrix) -> Result<()> {
        if matrix.nrows() != self.dimension || matrix.ncols() != self.dimension {
            return Err(Error::DimensionMismatch {
                symbol,
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                dim: self.dimension,
            });
        }
        self.matrices.insert(symbol, matrix);
        Ok(())
    }

    pub fn with(mut self, symbol: Generator, matrix: CMatrix) -> Result<Self> {
        self.insert(symbol, matrix)?;
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, symbol: Generator) -> Result<&CMatrix> {
        self.matrices
            .get(&symbol)
            .ok_or(Error::UnknownGenerator(symbol))
    }

    pub fn contains(&self, symbol: Generator) -> bool {
        self.matrices.contains_key(&symbol)
    }

    /// Conjugates every matrix by diag(signs).
    pub fn conjugate_by_signs(&self, signs: &[f64]) -> Self {
        let matrices = self
            .matrices
            .iter()
            .map(|(&g, m)| {
                let out = CMatrix::from_fn(self.dimension, self.dimension, |i, j| {
                    m[(i, j)] * (signs[i] * signs[j])
                });
                (g, out)
            })
            .collect();
        OperatorAssignment {
            dimension: self.dimension,
            matrices,
        }
    }
}

/// Dense product that skips structurally zero left entries. The summation
/// order over the inner index is ascending and independent of N, so the
/// leading block of a product is bit-identical across truncation sizes.
pub fn product(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let m = b.ncols();
    let zero = C64::new(0.0, 0.0);
    let mut out = CMatrix::zeros(n, m);
    for k in 0..a.ncols() {
        for i in 0..n {
            let aik = a[(i, k)];
            if aik == zero {
                continue;
            }
            for j in 0..m {
                let bkj = b[(k, j)];
                if bkj != zero {
                    out[(i, j)] += aik * bkj;
                }
            }
        }
    }
    out
}

pub fn evaluate_word(word: &OperatorWord, assignment: &OperatorAssignment) -> Result<CMatrix> {
    let n = assignment.dimension();
    let mut acc: Option<CMatrix> = None;
    for &g in &word.factors {
        let m = assignment.get(g)?;
        acc = Some(match acc {
            None => m.clone(),
            Some(prev) => product(&prev, m),
        });
    }
    let base = acc.unwrap_or_else(|| CMatrix::identity(n, n));
    Ok(base * word.coefficient)
}

fn evaluate_sum(words: &[OperatorWord], assignment: &OperatorAssignment) -> Result<CMatrix> {
    let n = assignment.dimension();
    let mut total = CMatrix::zeros(n, n);
    for w in words {
        total += evaluate_word(w, assignment)?;
    }
    Ok(total)
}

/// lhs − rhs of an identity as a full N×N matrix.
pub fn identity_defect(
    identity: &RelationIdentity,
    assignment: &OperatorAssignment,
) -> Result<CMatrix> {
    Ok(evaluate_sum(&identity.lhs, assignment)? - evaluate_sum(&identity.rhs, assignment)?)
}

/// Largest modulus in the leading m×m block.
pub fn max_abs_leading(m: &CMatrix, size: usize) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..size {
        for i in 0..size {
            worst = worst.max(m[(i, j)].norm());
        }
    }
    worst
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub identity: String,
    pub dimension: usize,
    pub interior: usize,
    pub residual: f64,
    pub pass: bool,
    pub tolerance: f64,
}

impl RelationReport {
    fn new(
        identity: &str,
        dimension: usize,
        interior: usize,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        RelationReport {
            identity: identity.to_string(),
            dimension,
            interior,
            residual,
            pass: residual <= tolerance,
            tolerance,
        }
    }
}

pub fn check_identity(
    identity: &RelationIdentity,
    assignment: &OperatorAssignment,
    tolerance: f64,
) -> Result<RelationReport> {
    let n = assignment.dimension();
    if n <= identity.degree {
        return Err(Error::DimensionTooSmall {
            dim: n,
            min: identity.degree + 1,
        });
    }
    let interior = n - identity.degree;
    let defect = identity_defect(identity, assignment)?;
    Ok(RelationReport::new(
        &identity.name,
        n,
        interior,
        max_abs_leading(&defect, interior),
        tolerance,
    ))
}

/// Checks (b⁺)† = b⁻ on the full matrix and h† = h, e† = −f, f† = −e on the
/// interior (for whichever of h, e, f are assigned).
pub fn star_adjoint_check(
    assignment: &OperatorAssignment,
    tolerance: f64,
) -> Result<RelationReport> {
    use Generator::*;
    let n = assignment.dimension();
    let bp = assignment.get(BPlus)?;
    let bm = assignment.get(BMinus)?;
    let mut residual = max_abs_leading(&(bp.adjoint() - bm), n);

    let margin = 2;
    let mut interior = n;
    let mut even = |x: Generator, y: Generator, sign: f64| -> Result<()> {
        if assignment.contains(x) && assignment.contains(y) {
            if n <= margin {
                return Err(Error::DimensionTooSmall {
                    dim: n,
                    min: margin + 1,
                });
            }
            interior = n - margin;
            let d = assignment.get(x)?.adjoint() - assignment.get(y)? * C64::new(sign, 0.0);
            residual = residual.max(max_abs_leading(&d, n - margin));
        }
        Ok(())
    };
    even(H, H, 1.0)?;
    even(E, F, -1.0)?;
    even(F, E, -1.0)?;

    Ok(RelationReport::new(
        "star-structure",
        n,
        interior,
        residual,
        tolerance,
    ))
}

/// The fixed identity catalog, in expanded form.
pub fn defining_relation_suite() -> Vec<RelationIdentity> {
    use Generator::*;
    let w = OperatorWord::real;
    let wc = |re: f64, im: f64, f: &[Generator]| OperatorWord::new(C64::new(re, im), f);
    let r2 = std::f64::consts::FRAC_1_SQRT_2;

    vec![
        // [{b⁻, b⁺}, b±] = ±2b±
        RelationIdentity::new(
            "osp-defining-plus",
            vec![
                w(1.0, &[BMinus, BPlus, BPlus]),
                w(1.0, &[BPlus, BMinus, BPlus]),
                w(-1.0, &[BPlus, BMinus, BPlus]),
                w(-1.0, &[BPlus, BPlus, BMinus]),
            ],
            vec![w(2.0, &[BPlus])],
        ),
        RelationIdentity::new(
            "osp-defining-minus",
            vec![
                w(1.0, &[BMinus, BPlus, BMinus]),
                w(1.0, &[BPlus, BMinus, BMinus]),
                w(-1.0, &[BMinus, BMinus, BPlus]),
                w(-1.0, &[BMinus, BPlus, BMinus]),
            ],
            vec![w(-2.0, &[BMinus])],
        ),
        // even generators
        RelationIdentity::new(
            "h-definition",
            vec![w(1.0, &[H])],
            vec![w(0.5, &[BMinus, BPlus]), w(0.5, &[BPlus, BMinus])],
        ),
        RelationIdentity::new(
            "e-definition",
            vec![w(1.0, &[E])],
            vec![w(0.25, &[BPlus, BPlus]), w(0.25, &[BPlus, BPlus])],
        ),
        RelationIdentity::new(
            "f-definition",
            vec![w(1.0, &[F])],
            vec![w(-0.25, &[BMinus, BMinus]), w(-0.25, &[BMinus, BMinus])],
        ),
        // su(1,1) and the odd weights
        RelationIdentity::new(
            "su11-h-e",
            vec![w(1.0, &[H, E]), w(-1.0, &[E, H])],
            vec![w(2.0, &[E])],
        ),
        RelationIdentity::new(
            "su11-h-f",
            vec![w(1.0, &[H, F]), w(-1.0, &[F, H])],
            vec![w(-2.0, &[F])],
        ),
        RelationIdentity::new(
            "su11-e-f",
            vec![w(1.0, &[E, F]), w(-1.0, &[F, E])],
            vec![w(1.0, &[H])],
        ),
        RelationIdentity::new(
            "h-bplus",
            vec![w(1.0, &[H, BPlus]), w(-1.0, &[BPlus, H])],
            vec![w(1.0, &[BPlus])],
        ),
        RelationIdentity::new(
            "h-bminus",
            vec![w(1.0, &[H, BMinus]), w(-1.0, &[BMinus, H])],
            vec![w(-1.0, &[BMinus])],
        ),
        // Casimirs
        RelationIdentity::new(
            "omega-definition",
            vec![w(1.0, &[Omega])],
            vec![w(-1.0, &[F, E]), w(-0.25, &[H, H]), w(-0.5, &[H])],
        ),
        RelationIdentity::new(
            "casimir-definition",
            vec![w(1.0, &[Casimir])],
            vec![
                w(-4.0, &[Omega]),
                w(0.5, &[BMinus, BPlus]),
                w(-0.5, &[BPlus, BMinus]),
            ],
        ),
        RelationIdentity::new(
            "omega-central-h",
            vec![w(1.0, &[Omega, H]), w(-1.0, &[H, Omega])],
            vec![],
        ),
        RelationIdentity::new(
            "omega-central-e",
            vec![w(1.0, &[Omega, E]), w(-1.0, &[E, Omega])],
            vec![],
        ),
        RelationIdentity::new(
            "omega-central-f",
            vec![w(1.0, &[Omega, F]), w(-1.0, &[F, Omega])],
            vec![],
        ),
        RelationIdentity::new(
            "casimir-central-bplus",
            vec![w(1.0, &[Casimir, BPlus]), w(-1.0, &[BPlus, Casimir])],
            vec![],
        ),
        RelationIdentity::new(
            "casimir-central-bminus",
            vec![w(1.0, &[Casimir, BMinus]), w(-1.0, &[BMinus, Casimir])],
            vec![],
        ),
        // 4Ωb± = b±(1 − 2C − 4Ω)
        RelationIdentity::new(
            "omega-shift-bplus",
            vec![w(4.0, &[Omega, BPlus])],
            vec![
                w(1.0, &[BPlus]),
                w(-2.0, &[BPlus, Casimir]),
                w(-4.0, &[BPlus, Omega]),
            ],
        ),
        RelationIdentity::new(
            "omega-shift-bminus",
            vec![w(4.0, &[Omega, BMinus])],
            vec![
                w(1.0, &[BMinus]),
                w(-2.0, &[BMinus, Casimir]),
                w(-4.0, &[BMinus, Omega]),
            ],
        ),
        // (b⁻b⁺ − b⁺b⁻)² = 4(b⁻b⁺ − b⁺b⁻) − 16Ω
        RelationIdentity::new(
            "squared-bracket",
            vec![
                w(1.0, &[BMinus, BPlus, BMinus, BPlus]),
                w(-1.0, &[BMinus, BPlus, BPlus, BMinus]),
                w(-1.0, &[BPlus, BMinus, BMinus, BPlus]),
                w(1.0, &[BPlus, BMinus, BPlus, BMinus]),
            ],
            vec![
                w(4.0, &[BMinus, BPlus]),
                w(-4.0, &[BPlus, BMinus]),
                w(-16.0, &[Omega]),
            ],
        ),
        // C² = (1 − 4Ω)(2C + 4Ω)
        RelationIdentity::new(
            "casimir-square",
            vec![w(1.0, &[Casimir, Casimir])],
            vec![
                w(2.0, &[Casimir]),
                w(4.0, &[Omega]),
                w(-8.0, &[Omega, Casimir]),
                w(-16.0, &[Omega, Omega]),
            ],
        ),
        // position, momentum and Hamiltonian in terms of b±
        RelationIdentity::new(
            "x-definition",
            vec![w(1.0, &[X])],
            vec![w(r2, &[BPlus]), w(r2, &[BMinus])],
        ),
        RelationIdentity::new(
            "p-definition",
            vec![w(1.0, &[P])],
            vec![wc(0.0, r2, &[BPlus]), wc(0.0, -r2, &[BMinus])],
        ),
        RelationIdentity::new(
            "hamiltonian-ladder-form",
            vec![w(1.0, &[Hamiltonian])],
            vec![
                wc(0.0, 0.5, &[BPlus, BPlus]),
                wc(0.0, -0.5, &[BMinus, BMinus]),
            ],
        ),
        RelationIdentity::new(
            "hamiltonian-symmetrized",
            vec![w(1.0, &[Hamiltonian])],
            vec![w(0.5, &[X, P]), w(0.5, &[P, X])],
        ),
        // Wigner compatibility: [{x, p}, x] = −2ix, [{x, p}, p] = 2ip
        RelationIdentity::new(
            "wigner-compatibility-x",
            vec![
                w(1.0, &[X, P, X]),
                w(1.0, &[P, X, X]),
                w(-1.0, &[X, X, P]),
                w(-1.0, &[X, P, X]),
            ],
            vec![wc(0.0, -2.0, &[X])],
        ),
        RelationIdentity::new(
            "wigner-compatibility-p",
            vec![
                w(1.0, &[X, P, P]),
                w(1.0, &[P, X, P]),
                w(-1.0, &[P, X, P]),
                w(-1.0, &[P, P, X]),
            ],
            vec![wc(0.0, 2.0, &[P])],
        ),
        // [Ĥ, b±] = −i b∓
        RelationIdentity::new(
            "hamiltonian-bplus",
            vec![
                w(1.0, &[Hamiltonian, BPlus]),
                w(-1.0, &[BPlus, Hamiltonian]),
            ],
            vec![wc(0.0, -1.0, &[BMinus])],
        ),
        RelationIdentity::new(
            "hamiltonian-bminus",
            vec![
                w(1.0, &[Hamiltonian, BMinus]),
                w(-1.0, &[BMinus, Hamiltonian]),
            ],
            vec![wc(0.0, -1.0, &[BPlus])],
        ),
    ]
}

/// Looks up a catalog identity by name.
pub fn suite_identity(name: &str) -> Option<RelationIdentity> {
    defining_relation_suite()
        .into_iter()
        .find(|i| i.name == name)
}
