//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives a
//! readable scorecard.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use osp12::classification::{family_action_squares, NormSequence, DEFAULT_K_MAX};
use osp12::matrix_rep::full_assignment;
use osp12::relations::DEFAULT_TOLERANCE;
use osp12::spectral::tridiagonal::sturm_count;
use osp12::*;

fn report(id: &str, pass: bool, detail: impl AsRef<str>) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("[{status}] criterion {id}: {}", detail.as_ref());
    assert!(pass, "criterion {id} failed: {}", detail.as_ref());
}

fn q(n: i64, d: i64) -> Number {
    Number::ratio(n, d)
}

fn mu_grid() -> Vec<Number> {
    vec![q(1, 4), q(1, 2), q(1, 1), q(5, 2)]
}

#[test]
fn criterion_1_identity_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for mu in mu_grid() {
        for dim in [16, 64] {
            let rep = build_rep(&mu, dim, Family::FinalActions).unwrap();
            let assignment = full_assignment(&rep);
            for id in defining_relation_suite() {
                let r = check_identity(&id, &assignment, DEFAULT_TOLERANCE).unwrap();
                checked += 1;
                if !r.pass {
                    failures.push(format!(
                        "{} mu={mu} N={dim} residual={:e}",
                        r.identity, r.residual
                    ));
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "1",
        failures.is_empty() && elapsed < 5.0,
        format!(
            "{checked} identity checks, {} failures, {elapsed:.2}s {failures:?}",
            failures.len()
        ),
    );
}

#[test]
fn criterion_2_classification_grid() {
    let mut bad = Vec::new();
    for k in 1..=40 {
        let mu = q(k, 8);
        let c = classify(&mu, DEFAULT_K_MAX);
        let families = c.families();
        let expected: Vec<Family> = if k <= 4 {
            vec![Family::FinalActions]
        } else {
            vec![Family::FinalActions, Family::EquivActions]
        };
        let shift_ok = c
            .candidates
            .iter()
            .filter(|cand| cand.verdict.family == Some(Family::EquivActions))
            .all(|cand| cand.equivalent_to_mu == Some(&mu - &Number::half()));
        if families != expected || !shift_ok {
            bad.push(format!("mu={mu}: {families:?}"));
        }
    }
    report(
        "2",
        bad.is_empty(),
        format!("40 grid points, mismatches {bad:?}"),
    );
}

fn random_rational(rng: &mut ChaCha8Rng) -> Number {
    let d: i64 = rng.gen_range(1..=12);
    let n: i64 = rng.gen_range(-10 * d..=10 * d);
    Number::ratio(n, d)
}

/// (x)_n by an explicit product over exact rationals, kept apart from the
/// library path.
fn pochhammer_table(x: &BigRational, len: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(len);
    let mut acc = BigRational::from_integer(BigInt::from(1));
    out.push(acc.clone());
    for i in 1..len {
        acc *= x + BigRational::from_integer(BigInt::from(i as i64 - 1));
        out.push(acc.clone());
    }
    out
}

#[test]
fn criterion_3_recurrence_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05b1_2000);
    let k_max = 200;
    let mut mismatches = Vec::new();
    for _ in 0..500 {
        let mu = random_rational(&mut rng);
        let delta = random_rational(&mut rng);
        let params = RepParams::lambda1(mu.clone(), delta.clone());
        let seq = NormSequence::build(&params, k_max);
        let (m, d) = (mu.as_exact().unwrap(), delta.as_exact().unwrap());
        let one = BigRational::from_integer(BigInt::from(1));
        let first = pochhammer_table(&(m - d), k_max / 2 + 2);
        let second = pochhammer_table(&(m + d + &one), k_max / 2 + 2);
        for k in 0..=k_max {
            let mut expected = &first[k.div_ceil(2)] * &second[k / 2];
            if k % 2 == 1 {
                expected *= BigRational::from_integer(BigInt::from(2));
            }
            let got = seq.get(k as i64).unwrap();
            if got.as_exact() != Some(&expected) {
                mismatches.push(format!("mu={mu} delta={delta} k={k}"));
                break;
            }
        }
    }
    report(
        "3",
        mismatches.is_empty(),
        format!("500 random (mu, delta), k <= {k_max}, mismatches {mismatches:?}"),
    );
}

#[test]
fn criterion_4_casimir_scalars() {
    let dim = 32;
    let margin = 2;
    let mut worst: f64 = 0.0;
    for mu in [q(1, 4), q(1, 1), q(3, 1)] {
        let rep = build_rep(&mu, dim, Family::FinalActions).unwrap();
        let cv = casimir_values(&RepParams::lambda1(mu.clone(), -&mu));
        let lambda = cv.lambda.to_f64();
        for i in 0..dim - margin {
            let omega = if i % 2 == 0 {
                &cv.omega_even
            } else {
                &cv.omega_odd
            }
            .to_f64();
            for j in 0..dim - margin {
                let (c_expect, o_expect) = if i == j { (lambda, omega) } else { (0.0, 0.0) };
                worst = worst
                    .max((rep.casimir[(i, j)] - C64::new(c_expect, 0.0)).norm())
                    .max((rep.omega[(i, j)] - C64::new(o_expect, 0.0)).norm());
            }
        }
    }
    report(
        "4",
        worst <= 1e-10,
        format!("max interior deviation {worst:e}"),
    );
}

#[test]
fn criterion_5_canonical_commutator() {
    let dim = 64;
    let quarter = physical_operators(&build_rep(&q(1, 4), dim, Family::FinalActions).unwrap());
    let at_quarter = quarter.canonical_commutator_check(1e-10);
    let pos = jacobi_of_position(&q(1, 4), dim).unwrap();
    let oscillator = pos
        .offdiagonal_squares
        .iter()
        .enumerate()
        .all(|(n, s)| *s == q(n as i64 + 1, 2));
    let one = physical_operators(&build_rep(&q(1, 1), dim, Family::FinalActions).unwrap());
    let at_one = one.canonical_commutator_check(1e-10);
    report(
        "5",
        at_quarter.pass && oscillator && at_one.residual > 0.1,
        format!(
            "mu=1/4 residual {:e}, oscillator squares {oscillator}, mu=1 residual {:.3}",
            at_quarter.residual, at_one.residual
        ),
    );
}

fn systems(mu: &Number, dim: usize) -> Vec<TridiagonalSystem> {
    vec![
        jacobi_of_position(mu, dim).unwrap(),
        jacobi_of_hamiltonian(mu, dim, Parity::Even).unwrap(),
        jacobi_of_hamiltonian(mu, dim, Parity::Odd).unwrap(),
    ]
}

#[test]
fn criterion_6a_sign_symmetry() {
    let mut worst: f64 = 0.0;
    for mu in mu_grid() {
        for sys in systems(&mu, 64) {
            let ev = eigenvalues(&sys).unwrap().eigenvalues;
            let n = ev.len();
            for i in 0..n {
                worst = worst.max((ev[i] + ev[n - 1 - i]).abs() / sys.norm());
            }
        }
    }
    report(
        "6a",
        worst <= 1e-12,
        format!("max relative |l_i + l_(N-1-i)| {worst:e}"),
    );
}

#[test]
fn criterion_6b_interlacing() {
    let mut violations = Vec::new();
    for mu in mu_grid() {
        for big in systems(&mu, 33) {
            let small = big.truncate(32);
            let a = eigenvalues(&small).unwrap().eigenvalues;
            let b = eigenvalues(&big).unwrap().eigenvalues;
            let tol = 1e-10 * big.norm();
            for i in 0..a.len() {
                if !(b[i] <= a[i] + tol && a[i] <= b[i + 1] + tol) {
                    violations.push(format!("{:?} mu={mu} i={i}", big.label));
                }
            }
        }
    }
    report(
        "6b",
        violations.is_empty(),
        format!("N=32 vs N=33, violations {violations:?}"),
    );
}

#[test]
fn criterion_6c_half_shift() {
    let mut ok = true;
    for mu in mu_grid() {
        let odd = jacobi_of_hamiltonian(&mu, 64, Parity::Odd).unwrap();
        let even = jacobi_of_hamiltonian(&(&mu + &Number::half()), 64, Parity::Even).unwrap();
        ok &= odd.offdiagonal_squares == even.offdiagonal_squares;
    }
    report(
        "6c",
        ok,
        "odd chain at mu equals even chain at mu + 1/2, exact",
    );
}

#[test]
fn criterion_6d_interval_growth() {
    let mu = q(1, 1);
    let dims = [32, 64, 128];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, build) in [
        (
            "x",
            Box::new(jacobi_of_position)
                as Box<dyn Fn(&Number, usize) -> Result<TridiagonalSystem>>,
        ),
        (
            "H-even",
            Box::new(|m: &Number, n| jacobi_of_hamiltonian(m, n, Parity::Even)),
        ),
        (
            "H-odd",
            Box::new(|m: &Number, n| jacobi_of_hamiltonian(m, n, Parity::Odd)),
        ),
    ] {
        let counts: Vec<usize> = dims
            .iter()
            .map(|&n| {
                let sys = build(&mu, n).unwrap();
                sturm_count(&sys.diagonal, &sys.offdiagonal, 2.0 + 1e-12)
                    - sturm_count(&sys.diagonal, &sys.offdiagonal, -2.0)
            })
            .collect();
        let strict = counts.windows(2).all(|w| w[1] > w[0]);
        ok &= strict;
        lines.push(format!("{name} {counts:?}"));
    }
    report(
        "6d",
        ok,
        format!("counts in [-2,2] at N={dims:?}: {}", lines.join(", ")),
    );
}

/// Roots of α_N(t) by a sign-change scan followed by bisection.
fn alpha_roots(sys: &TridiagonalSystem, n: usize) -> Vec<f64> {
    let alpha = |t: f64| formal_eigenvector(sys, t, n).unwrap().coefficients[n];
    let bound = sys.truncate(n).norm() * 1.01 + 1.0;
    let steps = 200_000;
    let h = 2.0 * bound / steps as f64;
    let mut roots = Vec::new();
    let mut lo = -bound;
    let mut f_lo = alpha(lo);
    for i in 1..=steps {
        let hi = -bound + i as f64 * h;
        let f_hi = alpha(hi);
        if f_hi == 0.0 {
            roots.push(hi);
        } else if f_lo != 0.0 && f_lo.signum() != f_hi.signum() {
            let (mut a, mut b, mut fa) = (lo, hi, f_lo);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                let fm = alpha(m);
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
                if b - a <= 1e-15 * (1.0 + m.abs()) {
                    break;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lo = hi;
        f_lo = f_hi;
    }
    roots
}

#[test]
fn criterion_7_formal_eigenvector_duality() {
    let n = 12;
    let mut worst: f64 = 0.0;
    let mut counts_ok = true;
    for mu in [q(1, 4), q(1, 1)] {
        for sys in systems(&mu, n + 1) {
            let roots = alpha_roots(&sys, n);
            let ev = eigenvalues(&sys.truncate(n)).unwrap().eigenvalues;
            counts_ok &= roots.len() == ev.len();
            for (r, e) in roots.iter().zip(&ev) {
                worst = worst.max((r - e).abs());
            }
        }
    }
    report(
        "7",
        counts_ok && worst <= 1e-8,
        format!("roots of alpha_12 vs eigenvalues of the N=12 section, max gap {worst:e}"),
    );
}

#[test]
fn criterion_8_family_equivalence() {
    let dim = 32;
    let mut ok = true;
    for mu in [q(3, 4), q(1, 1), q(2, 1)] {
        let shifted = &mu - &Number::half();
        let equiv = build_rep(&mu, dim, Family::EquivActions).unwrap();
        let fin = build_rep(&shifted, dim, Family::FinalActions).unwrap();
        ok &= equiv.raise_squares == fin.raise_squares;
        ok &= equiv.b_plus == fin.b_plus && equiv.b_minus == fin.b_minus;
        for s in 0..dim as i64 {
            ok &= family_action_squares(Family::EquivActions, &mu, s - 1)
                == family_action_squares(Family::FinalActions, &shifted, s);
        }
        ok &= equivalence_shift(&mu, dim).unwrap().equivalent;
    }
    report(
        "8",
        ok,
        "second family at mu equals first family at mu - 1/2, N=32, exact",
    );
}
