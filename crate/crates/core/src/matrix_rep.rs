//! Truncated N×N realizations of the unitary osp(1|2) modules.
//!
//! Every matrix entry here is a square root of a product of the squared
//! ladder coefficients, which are exact for rational μ. The derived
//! generators are the defining expressions in b± evaluated on the
//! truncated b± (so b⁻b⁺ loses its last diagonal entry, and so on), each
//! entry computed in exact arithmetic before a single square root.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classification::{raising_squares, Family};
use crate::error::{Error, Result};
use crate::number::Number;
use crate::relations::{
    check_identity, defining_relation_suite, max_abs_leading, product, CMatrix, Generator,
    OperatorAssignment, RelationReport, C64,
};

pub const MIN_DIMENSION: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedRep {
    pub mu: Number,
    pub dimension: usize,
    pub family: Family,
    /// |⟨e_{n+1}|b⁺|e_n⟩|² for n = 0..N−1, storage indexing.
    pub raise_squares: Vec<Number>,
    pub b_plus: CMatrix,
    pub b_minus: CMatrix,
    pub h: CMatrix,
    pub e: CMatrix,
    pub f: CMatrix,
    pub omega: CMatrix,
    pub casimir: CMatrix,
}

fn validate(mu: &Number, dim: usize, family: Family) -> Result<()> {
    if !mu.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "mu must be positive, got {mu}"
        )));
    }
    if family == Family::EquivActions && mu.compare(&Number::half()).is_le() {
        return Err(Error::NotUnitarizable(format!(
            "the second family needs mu > 1/2, got {mu}"
        )));
    }
    if dim < MIN_DIMENSION {
        return Err(Error::DimensionTooSmall {
            dim,
            min: MIN_DIMENSION,
        });
    }
    Ok(())
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub fn build_rep(mu: &Number, dim: usize, family: Family) -> Result<TruncatedRep> {
    validate(mu, dim, family)?;
    let s = raising_squares(family, mu, dim - 1);
    // truncated squares: s[-1] = s[N-1] = 0
    let sq = |n: isize| -> Number {
        if n < 0 || n as usize >= s.len() {
            Number::zero()
        } else {
            s[n as usize].clone()
        }
    };

    let mut b_plus = CMatrix::zeros(dim, dim);
    let mut h = CMatrix::zeros(dim, dim);
    let mut e = CMatrix::zeros(dim, dim);
    let mut f = CMatrix::zeros(dim, dim);
    let mut omega = CMatrix::zeros(dim, dim);
    let mut casimir = CMatrix::zeros(dim, dim);

    let quarter = Number::ratio(1, 4);
    let half = Number::half();
    for n in 0..dim {
        let i = n as isize;
        if n + 1 < dim {
            b_plus[(n + 1, n)] = real(sq(i).sqrt_f64());
        }
        // h = ½(b⁻b⁺ + b⁺b⁻)
        let h_nn = &half * (sq(i) + sq(i - 1));
        // e = ½(b⁺)², f = −½(b⁻)²
        let two_step = sq(i) * sq(i + 1);
        if n + 2 < dim {
            let v = 0.5 * two_step.sqrt_f64();
            e[(n + 2, n)] = real(v);
            f[(n, n + 2)] = real(-v);
        }
        // Ω = −fe − ¼h² − ½h, with (fe)_nn = −¼ s_n s_{n+1}
        let fe = if n + 2 < dim {
            -(&quarter * &two_step)
        } else {
            Number::zero()
        };
        let om = -fe - &quarter * &h_nn * &h_nn - &half * &h_nn;
        // C = −4Ω + ½(b⁻b⁺ − b⁺b⁻)
        let c = Number::int(-4) * &om + &half * (sq(i) - sq(i - 1));
        h[(n, n)] = real(h_nn.to_f64());
        omega[(n, n)] = real(om.to_f64());
        casimir[(n, n)] = real(c.to_f64());
    }
    let b_minus = b_plus.adjoint();

    Ok(TruncatedRep {
        mu: mu.clone(),
        dimension: dim,
        family,
        raise_squares: s,
        b_plus,
        b_minus,
        h,
        e,
        f,
        omega,
        casimir,
    })
}

impl TruncatedRep {
    pub fn assignment(&self) -> OperatorAssignment {
        let mut a = OperatorAssignment::new(self.dimension);
        for (g, m) in [
            (Generator::BPlus, &self.b_plus),
            (Generator::BMinus, &self.b_minus),
            (Generator::H, &self.h),
            (Generator::E, &self.e),
            (Generator::F, &self.f),
            (Generator::Omega, &self.omega),
            (Generator::Casimir, &self.casimir),
        ] {
            a.insert(g, m.clone()).expect("square by construction");
        }
        a
    }

    pub fn matrix(&self, g: Generator) -> Option<&CMatrix> {
        match g {
            Generator::BPlus => Some(&self.b_plus),
            Generator::BMinus => Some(&self.b_minus),
            Generator::H => Some(&self.h),
            Generator::E => Some(&self.e),
            Generator::F => Some(&self.f),
            Generator::Omega => Some(&self.omega),
            Generator::Casimir => Some(&self.casimir),
            _ => None,
        }
    }

    /// True when every b⁺ subdiagonal entry is nonzero, i.e. no coordinate
    /// subspace of the truncation is invariant under both b⁺ and b⁻.
    pub fn is_chain_connected(&self) -> bool {
        self.raise_squares.iter().all(Number::is_positive)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalOps {
    pub mu: Number,
    pub dimension: usize,
    pub family: Family,
    pub x: CMatrix,
    pub p: CMatrix,
    pub hamiltonian: CMatrix,
    pub b_plus: CMatrix,
    pub b_minus: CMatrix,
}

/// x̂ = (b⁺ + b⁻)/√2, p̂ = i(b⁺ − b⁻)/√2, Ĥ = (i/2)((b⁺)² − (b⁻)²).
pub fn physical_operators(rep: &TruncatedRep) -> PhysicalOps {
    let dim = rep.dimension;
    let s = &rep.raise_squares;
    let half = Number::half();
    let mut x = CMatrix::zeros(dim, dim);
    let mut p = CMatrix::zeros(dim, dim);
    let mut hamiltonian = CMatrix::zeros(dim, dim);
    for n in 0..dim - 1 {
        let beta = (&half * &s[n]).sqrt_f64();
        x[(n + 1, n)] = real(beta);
        x[(n, n + 1)] = real(beta);
        p[(n + 1, n)] = C64::new(0.0, beta);
        p[(n, n + 1)] = C64::new(0.0, -beta);
        if n + 2 < dim {
            let t = 0.5 * (&s[n] * &s[n + 1]).sqrt_f64();
            hamiltonian[(n + 2, n)] = C64::new(0.0, t);
            hamiltonian[(n, n + 2)] = C64::new(0.0, -t);
        }
    }
    PhysicalOps {
        mu: rep.mu.clone(),
        dimension: dim,
        family: rep.family,
        x,
        p,
        hamiltonian,
        b_plus: rep.b_plus.clone(),
        b_minus: rep.b_minus.clone(),
    }
}

impl PhysicalOps {
    pub fn assignment(&self) -> OperatorAssignment {
        let mut a = OperatorAssignment::new(self.dimension);
        for (g, m) in [
            (Generator::BPlus, &self.b_plus),
            (Generator::BMinus, &self.b_minus),
            (Generator::X, &self.x),
            (Generator::P, &self.p),
            (Generator::Hamiltonian, &self.hamiltonian),
        ] {
            a.insert(g, m.clone()).expect("square by construction");
        }
        a
    }

    pub fn matrix(&self, g: Generator) -> Option<&CMatrix> {
        match g {
            Generator::BPlus => Some(&self.b_plus),
            Generator::BMinus => Some(&self.b_minus),
            Generator::X => Some(&self.x),
            Generator::P => Some(&self.p),
            Generator::Hamiltonian => Some(&self.hamiltonian),
            _ => None,
        }
    }

    /// Interior residual of [x̂, p̂] − iI (margin 2).
    pub fn canonical_commutator_check(&self, tolerance: f64) -> RelationReport {
        let comm = product(&self.x, &self.p) - product(&self.p, &self.x);
        let defect = comm - CMatrix::identity(self.dimension, self.dimension) * C64::new(0.0, 1.0);
        let interior = self.dimension.saturating_sub(2);
        let residual = max_abs_leading(&defect, interior);
        RelationReport {
            identity: "canonical-commutator".to_string(),
            dimension: self.dimension,
            interior,
            residual,
            pass: residual <= tolerance,
            tolerance,
        }
    }
}

const WIGNER_IDENTITIES: [&str; 5] = [
    "wigner-compatibility-x",
    "wigner-compatibility-p",
    "hamiltonian-bplus",
    "hamiltonian-bminus",
    "hamiltonian-symmetrized",
];

/// Both compatibility conditions, [Ĥ, b±] = −ib∓ and Ĥ = ½(x̂p̂ + p̂x̂).
pub fn verify_wigner_compatibility(
    ops: &PhysicalOps,
    tolerance: f64,
) -> Result<Vec<RelationReport>> {
    let assignment = ops.assignment();
    defining_relation_suite()
        .into_iter()
        .filter(|id| WIGNER_IDENTITIES.contains(&id.name.as_str()))
        .map(|id| check_identity(&id, &assignment, tolerance))
        .collect()
}

/// Full assignment: the rep's generators plus x̂, p̂, Ĥ.
pub fn full_assignment(rep: &TruncatedRep) -> OperatorAssignment {
    let ops = physical_operators(rep);
    let mut a = rep.assignment();
    for g in [Generator::X, Generator::P, Generator::Hamiltonian] {
        a.insert(g, ops.matrix(g).unwrap().clone())
            .expect("square by construction");
    }
    a
}

/// Dense complex matrix in column-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixExport {
    pub mu: Number,
    pub dim: usize,
    pub family: Family,
    pub operator: String,
    pub entries: Vec<[f64; 2]>,
}

impl MatrixExport {
    pub fn new(mu: &Number, family: Family, operator: Generator, m: &CMatrix) -> Self {
        MatrixExport {
            mu: mu.clone(),
            dim: m.nrows(),
            family,
            operator: operator.symbol().to_string(),
            // nalgebra storage is column-major
            entries: m.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_iterator(
            self.dim,
            self.dim,
            self.entries.iter().map(|[re, im]| C64::new(*re, *im)),
        )
    }
}

/// Lower band `offset` of a banded operator as CSV rows `index,re,im`,
/// one per entry ⟨e_{n+offset}|A|e_n⟩.
pub fn banded_csv(m: &CMatrix, offset: usize) -> String {
    let mut out = String::from("index,re,im\n");
    for n in 0..m.nrows().saturating_sub(offset) {
        let z = m[(n + offset, n)];
        writeln!(out, "{n},{:e},{:e}", z.re, z.im).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Number {
        Number::ratio(n, d)
    }

    fn subdiag(m: &CMatrix) -> Vec<f64> {
        (0..m.nrows() - 1).map(|n| m[(n + 1, n)].re).collect()
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-14)
    }

    #[test]
    fn quarter_is_the_oscillator() {
        let r = build_rep(&q(1, 4), 4, Family::FinalActions).unwrap();
        assert!(close(&subdiag(&r.b_plus), &[1.0, 2f64.sqrt(), 3f64.sqrt()]));
        assert_eq!(
            r.raise_squares,
            vec![Number::int(1), Number::int(2), Number::int(3)]
        );
        // b⁻e₀ = 0
        assert!(r.b_minus.column(0).iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn mu_one_subdiagonal() {
        let r = build_rep(&Number::int(1), 4, Family::FinalActions).unwrap();
        assert!(close(&subdiag(&r.b_plus), &[2.0, 2f64.sqrt(), 6f64.sqrt()]));
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            build_rep(&Number::zero(), 8, Family::FinalActions),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_rep(&Number::Approx(-0.5), 8, Family::FinalActions),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_rep(&Number::half(), 8, Family::EquivActions),
            Err(Error::NotUnitarizable(_))
        ));
        assert_eq!(
            build_rep(&q(1, 4), 3, Family::FinalActions).unwrap_err(),
            Error::DimensionTooSmall { dim: 3, min: 4 }
        );
    }

    #[test]
    fn b_minus_is_adjoint_and_shift_structure() {
        let r = build_rep(&q(5, 2), 12, Family::FinalActions).unwrap();
        assert_eq!(r.b_minus, r.b_plus.adjoint());
        for i in 0..12 {
            for j in 0..12 {
                if i != j + 1 {
                    assert_eq!(r.b_plus[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn h_diagonal_matches_weights() {
        for mu in [
            q(1, 4),
            q(1, 2),
            Number::int(1),
            q(5, 2),
            Number::Approx(0.37),
        ] {
            let r = build_rep(&mu, 16, Family::FinalActions).unwrap();
            for n in 0..14 {
                let want = 2.0 * mu.to_f64() + n as f64;
                assert!((r.h[(n, n)].re - want).abs() < 1e-12, "mu={mu} n={n}");
            }
        }
    }

    #[test]
    fn position_matrix_at_quarter() {
        let r = build_rep(&q(1, 4), 6, Family::FinalActions).unwrap();
        let ops = physical_operators(&r);
        let want: Vec<f64> = (1..6).map(|n| (n as f64 / 2.0).sqrt()).collect();
        assert!(close(&subdiag(&ops.x), &want));
        for n in 0..6 {
            assert_eq!(ops.x[(n, n)].norm(), 0.0);
            assert_eq!(ops.hamiltonian[(n, n)].norm(), 0.0);
        }
    }

    #[test]
    fn hamiltonian_entry() {
        let r = build_rep(&Number::int(1), 8, Family::FinalActions).unwrap();
        let ops = physical_operators(&r);
        let z = ops.hamiltonian[(2, 0)];
        assert!(z.re.abs() < 1e-15);
        assert!((z.im - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn physical_operators_are_hermitian() {
        let r = build_rep(&q(7, 3), 20, Family::FinalActions).unwrap();
        let ops = physical_operators(&r);
        assert_eq!(ops.x, ops.x.adjoint());
        assert_eq!(ops.p, ops.p.adjoint());
        assert!(max_abs_leading(&(ops.hamiltonian.adjoint() - &ops.hamiltonian), 18) == 0.0);
    }

    #[test]
    fn wigner_compatibility_holds() {
        for mu in [q(1, 4), Number::int(2)] {
            let ops = physical_operators(&build_rep(&mu, 32, Family::FinalActions).unwrap());
            let reports = verify_wigner_compatibility(&ops, 1e-12).unwrap();
            assert_eq!(reports.len(), 5);
            for r in reports {
                assert!(r.pass, "{} at mu={mu}: {}", r.identity, r.residual);
            }
        }
        let ops = physical_operators(&build_rep(&q(1, 4), 32, Family::FinalActions).unwrap());
        assert!(ops.canonical_commutator_check(1e-12).pass);
        let ops =
            physical_operators(&build_rep(&Number::int(2), 32, Family::FinalActions).unwrap());
        assert!(!ops.canonical_commutator_check(1e-12).pass);
    }

    #[test]
    fn second_family_lowest_vector() {
        let r = build_rep(&q(3, 2), 8, Family::EquivActions).unwrap();
        // storage 0 is e₋₁ in signed indexing: b⁺e₋₁ = √(2(2μ−1)) e₀
        assert_eq!(r.raise_squares[0], Number::int(4));
        assert!(r.is_chain_connected());
    }

    #[test]
    fn export_round_trip_and_csv() {
        let r = build_rep(&q(1, 4), 4, Family::FinalActions).unwrap();
        let ex = MatrixExport::new(&r.mu, r.family, Generator::BPlus, &r.b_plus);
        assert_eq!(ex.entries.len(), 16);
        // column-major: entry (1, 0) is the second element
        assert_eq!(ex.entries[1], [1.0, 0.0]);
        assert_eq!(ex.to_matrix(), r.b_plus);
        let json = serde_json::to_string(&ex).unwrap();
        assert!(json.contains("\"operator\":\"b+\""));
        assert!(json.contains("\"mu\":\"1/4\""));

        let csv = banded_csv(&r.b_plus, 1);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "index,re,im");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,1e0,"));
    }
}
