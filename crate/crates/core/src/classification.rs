//! Lowest-weight classification of the unitary osp(1|2) modules.
//!
//! Starting from an h-eigenvector v₀ with h v₀ = 2μ v₀ and the su(1,1)
//! Casimir value −δ(δ+1) on the even chain, the ladder actions, the norms
//! a_k = ⟨v_k, v_k⟩ and their signs are all determined by (μ, δ). The gate
//! below decides which (μ, δ) admit a positive-definite inner product.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::Number;

/// Which root of the Casimir quadratic λ is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// λ = 2δ(2δ+1)
    #[serde(rename = "lambda1")]
    Lambda1,
    /// λ = 2(δ+1)(2δ+1)
    #[serde(rename = "lambda2")]
    Lambda2,
}

/// The two lowest-weight families that survive the positivity gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Lowest weight vector e₀, basis {e₀, e₁, ...}.
    FinalActions,
    /// Lowest weight vector e₋₁, basis {e₋₁, e₀, ...}; only for μ > ½.
    EquivActions,
}

impl Family {
    /// Signed index of the lowest basis vector.
    pub fn lowest_index(self) -> i64 {
        match self {
            Family::FinalActions => 0,
            Family::EquivActions => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepParams {
    pub mu: Number,
    pub delta: Number,
    pub branch: Branch,
}

impl RepParams {
    pub fn new(mu: Number, delta: Number, branch: Branch) -> Self {
        RepParams { mu, delta, branch }
    }

    pub fn lambda1(mu: Number, delta: Number) -> Self {
        RepParams::new(mu, delta, Branch::Lambda1)
    }

    /// δ as seen by the λ₁ formulas: λ₂ results follow from δ → −δ−1.
    pub fn effective_delta(&self) -> Number {
        match self.branch {
            Branch::Lambda1 => self.delta.clone(),
            Branch::Lambda2 => -&self.delta - Number::one(),
        }
    }
}

/// Coefficients of the general (μ, δ) ladder actions at level k:
///
/// ```text
/// b⁻ v_{2k}    = minus_even v_{2k-1}   minus_even = μ + k + δ
/// b⁻ v_{2k+1}  = minus_odd  v_{2k}     minus_odd  = 2(μ + k − δ)
/// b⁺ v_{-2k}   = plus_even  v_{-2k+1}  plus_even  = −(μ − k − δ)
/// b⁺ v_{-2k-1} = plus_odd   v_{-2k}    plus_odd   = 2(μ − k + δ)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct ActionCoeffs {
    pub minus_even: Number,
    pub minus_odd: Number,
    pub plus_even: Number,
    pub plus_odd: Number,
}

pub fn general_action_coeffs(params: &RepParams, k: i64) -> ActionCoeffs {
    let mu = &params.mu;
    let delta = params.effective_delta();
    let k = Number::int(k);
    let two = Number::int(2);
    ActionCoeffs {
        minus_even: mu + &k + &delta,
        minus_odd: &two * (mu + &k - &delta),
        plus_even: -(mu - &k - &delta),
        plus_odd: &two * (mu - &k + &delta),
    }
}

/// Ratio a_{k+1}/a_k on the upper chain (k ≥ 0).
fn upper_factor(mu: &Number, delta: &Number, k: i64) -> Number {
    let m = Number::int(k.div_euclid(2));
    if k % 2 == 0 {
        // a_{2m+1} = 2(μ + m − δ) a_{2m}
        Number::int(2) * (mu + &m - delta)
    } else {
        // a_{2m+2} = ½(μ + m + 1 + δ) a_{2m+1}
        Number::half() * (mu + &m + Number::one() + delta)
    }
}

/// Ratio a_{-j-1}/a_{-j} on the lower chain (j ≥ 0).
fn lower_factor(mu: &Number, delta: &Number, j: i64) -> Number {
    let m = Number::int(j.div_euclid(2));
    if j % 2 == 0 {
        // a_{-2m-1} = 2(μ − m + δ) a_{-2m}
        Number::int(2) * (mu - &m + delta)
    } else {
        // a_{-2m-2} = ½(μ − m − 1 − δ) a_{-2m-1}
        Number::half() * (mu - &m - Number::one() - delta)
    }
}

/// a_k for k ≥ 0 by the two-step recurrence from a₀ = 1.
pub fn norm_coefficient(params: &RepParams, k: usize) -> Number {
    let delta = params.effective_delta();
    let mut a = Number::one();
    for j in 0..k as i64 {
        a = &a * upper_factor(&params.mu, &delta, j);
    }
    debug_assert!((&a - norm_closed_form(params, k)).is_zero());
    a
}

/// a_k = ½(3 − (−1)^k) (μ−δ)_{⌈k/2⌉} (μ+δ+1)_{⌊k/2⌋}.
pub fn norm_closed_form(params: &RepParams, k: usize) -> Number {
    let delta = params.effective_delta();
    let prefactor = if k.is_multiple_of(2) {
        Number::one()
    } else {
        Number::int(2)
    };
    let first = (&params.mu - &delta).pochhammer(k.div_ceil(2));
    let second = (&params.mu + &delta + Number::one()).pochhammer(k / 2);
    prefactor * first * second
}

/// Closed form for k = 0..=k_max, building both Pochhammer tables
/// incrementally.
pub fn norm_closed_form_sequence(params: &RepParams, k_max: usize) -> Vec<Number> {
    let delta = params.effective_delta();
    let one = Number::one();
    let first_base = &params.mu - &delta;
    let second_base = &params.mu + &delta + &one;
    let levels = k_max.div_ceil(2) + 1;
    let table = |base: &Number| {
        let mut out = Vec::with_capacity(levels);
        let mut acc = Number::one();
        let mut factor = base.clone();
        out.push(acc.clone());
        for _ in 1..levels {
            acc = &acc * &factor;
            factor = &factor + &one;
            out.push(acc.clone());
        }
        out
    };
    let first = table(&first_base);
    let second = table(&second_base);
    (0..=k_max)
        .map(|k| {
            let v = &first[k.div_ceil(2)] * &second[k / 2];
            if k % 2 == 0 {
                v
            } else {
                Number::int(2) * v
            }
        })
        .collect()
}

/// Norms a_k on the two-sided index set, upper chain to `k_max` and lower
/// chain until a coefficient vanishes or `k_max` steps are taken.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSequence {
    pub params: RepParams,
    pub values: BTreeMap<i64, Number>,
    /// Lowest index carrying a nonzero vector, if the lower chain
    /// terminated within the scanned depth.
    pub truncation_bound: Option<i64>,
}

impl NormSequence {
    pub fn build(params: &RepParams, k_max: usize) -> Self {
        let delta = params.effective_delta();
        let mu = &params.mu;
        let mut values = BTreeMap::new();
        values.insert(0, Number::one());

        let mut a = Number::one();
        for j in 0..k_max as i64 {
            let factor = upper_factor(mu, &delta, j);
            a = if factor.is_zero() {
                Number::zero()
            } else {
                &a * &factor
            };
            values.insert(j + 1, a.clone());
        }

        let mut truncation_bound = None;
        let mut a = Number::one();
        for j in 0..k_max as i64 {
            let factor = lower_factor(mu, &delta, j);
            if factor.is_zero() {
                // v_{-j-1} is a null vector: the chain ends at -j
                values.insert(-j - 1, Number::zero());
                truncation_bound = Some(-j);
                break;
            }
            a = &a * &factor;
            values.insert(-j - 1, a.clone());
        }

        NormSequence {
            params: params.clone(),
            values,
            truncation_bound,
        }
    }

    pub fn get(&self, k: i64) -> Option<&Number> {
        self.values.get(&k)
    }

    /// First k ≥ 0 where the stored value disagrees with the closed form.
    pub fn closed_form_mismatch(&self) -> Option<i64> {
        let k_max = self.values.keys().next_back().copied().unwrap_or(0).max(0) as usize;
        let closed = norm_closed_form_sequence(&self.params, k_max);
        self.values
            .range(0..)
            .find(|(&k, v)| !(*v - &closed[k as usize]).is_zero())
            .map(|(&k, _)| k)
    }
}

/// Why the gate accepted or rejected a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateReason {
    Admissible,
    /// Some surviving a_k is zero or negative.
    NonPositiveNorm,
    /// The lower chain never terminates, so no lowest weight exists.
    UnboundedBelow,
    /// The chain terminates below v₋₁: v₀ is not at the bottom of its
    /// su(1,1) component, so the point is a relabelling of one of the two
    /// lowest-weight choices rather than a new one.
    NotLowestLevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub index: i64,
    pub value: Number,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub admissible: bool,
    pub lowest_weight_index: Option<i64>,
    pub first_violation: Option<Violation>,
    pub family: Option<Family>,
    pub reason: GateReason,
}

pub const DEFAULT_K_MAX: usize = 200;

pub fn positivity_gate(params: &RepParams, k_max: usize) -> ClassificationVerdict {
    let k_max = k_max.max(2);
    let seq = NormSequence::build(params, k_max);

    let lowest = seq.truncation_bound;
    let lower_end = lowest.unwrap_or(-(k_max as i64));
    // lower chain first, walking away from v₀, then the upper chain
    let first_violation = (lower_end..0).rev().chain(1..=k_max as i64).find_map(|k| {
        let v = &seq.values[&k];
        (!v.is_positive()).then(|| Violation {
            index: k,
            value: v.clone(),
        })
    });

    let (reason, family) = match (lowest, &first_violation) {
        (None, _) => (GateReason::UnboundedBelow, None),
        (Some(_), Some(_)) => (GateReason::NonPositiveNorm, None),
        (Some(0), None) => (GateReason::Admissible, Some(Family::FinalActions)),
        (Some(-1), None) => (GateReason::Admissible, Some(Family::EquivActions)),
        (Some(_), None) => (GateReason::NotLowestLevel, None),
    };

    ClassificationVerdict {
        admissible: reason == GateReason::Admissible,
        lowest_weight_index: lowest,
        first_violation,
        family,
        reason,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub delta: Number,
    pub branch: Branch,
    #[serde(flatten)]
    pub verdict: ClassificationVerdict,
    /// For the second family: the μ̄ = μ − ½ of the first family it is
    /// equivalent to.
    pub equivalent_to_mu: Option<Number>,
    /// Index of an earlier candidate describing the same module.
    pub duplicate_of: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub mu: Number,
    pub candidates: Vec<Candidate>,
}

impl Classification {
    pub fn params(&self, index: usize) -> RepParams {
        let c = &self.candidates[index];
        RepParams::new(self.mu.clone(), c.delta.clone(), c.branch)
    }

    /// Distinct admissible families, in candidate order.
    pub fn families(&self) -> Vec<Family> {
        let mut out = Vec::new();
        for c in &self.candidates {
            if c.verdict.admissible && c.duplicate_of.is_none() {
                if let Some(f) = c.verdict.family {
                    if !out.contains(&f) {
                        out.push(f);
                    }
                }
            }
        }
        out
    }
}

/// Scans the four lowest-weight candidates: δ = −μ and δ = μ−1 on λ₁, and
/// the two λ₂ points that map onto them under δ → −δ−1.
pub fn classify(mu: &Number, k_max: usize) -> Classification {
    let one = Number::one();
    let minus_mu = -mu;
    let mu_minus_one = mu - &one;
    let points = [
        (minus_mu.clone(), Branch::Lambda1),
        (mu_minus_one.clone(), Branch::Lambda1),
        (mu_minus_one, Branch::Lambda2),
        (minus_mu, Branch::Lambda2),
    ];

    let mut candidates: Vec<Candidate> = Vec::with_capacity(points.len());
    let mut effective: Vec<Number> = Vec::with_capacity(points.len());
    for (delta, branch) in points {
        let params = RepParams::new(mu.clone(), delta.clone(), branch);
        let eff = params.effective_delta();
        let duplicate_of = effective.iter().position(|d| (d - &eff).is_zero());
        let verdict = positivity_gate(&params, k_max);
        let equivalent_to_mu =
            (verdict.family == Some(Family::EquivActions)).then(|| mu - &Number::half());
        effective.push(eff);
        candidates.push(Candidate {
            delta,
            branch,
            verdict,
            equivalent_to_mu,
            duplicate_of,
        });
    }

    Classification {
        mu: mu.clone(),
        candidates,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasimirValues {
    /// Eigenvalue of C on the whole module.
    pub lambda: Number,
    /// Eigenvalue of Ω on the even chain.
    pub omega_even: Number,
    /// Eigenvalue of Ω on the odd chains.
    pub omega_odd: Number,
}

pub fn casimir_values(params: &RepParams) -> CasimirValues {
    let d = &params.delta;
    let one = Number::one();
    let two = Number::int(2);
    let lambda = match params.branch {
        Branch::Lambda1 => &two * d * (&two * d + &one),
        Branch::Lambda2 => &two * (d + &one) * (&two * d + &one),
    };
    let omega_even = -(d * (d + &one));
    // the odd-chain value is derived on λ₁; λ₂ inherits it through δ → −δ−1
    let e = params.effective_delta();
    let half = Number::half();
    let omega_odd = -((&e - &half) * (&e + &half));
    CasimirValues {
        lambda,
        omega_even,
        omega_odd,
    }
}

/// Squared matrix coefficients of b⁺ and b⁻ on the basis vector with signed
/// index `j`, for a family at parameter μ.
///
/// Returns `(|⟨e_{j+1}|b⁺|e_j⟩|², |⟨e_{j-1}|b⁻|e_j⟩|²)`.
pub fn family_action_squares(family: Family, mu: &Number, j: i64) -> (Number, Number) {
    let two = Number::int(2);
    let two_mu = &two * mu;
    let k = Number::int(j.div_euclid(2));
    let even = j.rem_euclid(2) == 0;
    match (family, even) {
        // b⁺e_{2k} = √(2(2μ+k)) e_{2k+1},  b⁻e_{2k} = √(2k) e_{2k−1}
        (Family::FinalActions, true) => (&two * (&two_mu + &k), &two * &k),
        // b⁺e_{2k+1} = √(2(k+1)) e_{2k+2}, b⁻e_{2k+1} = √(2(2μ+k)) e_{2k}
        (Family::FinalActions, false) => (&two * (&k + Number::one()), &two * (&two_mu + &k)),
        // b⁺e_{2k} = √(2(k+1)) e_{2k+1},  b⁻e_{2k} = √(2(2μ+k−1)) e_{2k−1}
        (Family::EquivActions, true) => (
            &two * (&k + Number::one()),
            &two * (&two_mu + &k - Number::one()),
        ),
        // b⁺e_{2k+1} = √(2(2μ+k)) e_{2k+2}, b⁻e_{2k+1} = √(2(k+1)) e_{2k}
        (Family::EquivActions, false) => (&two * (&two_mu + &k), &two * (&k + Number::one())),
    }
}

/// Squared subdiagonal of b⁺ in zero-based storage order: entry `s` is
/// |⟨e_{s+1}|b⁺|e_s⟩|² after shifting the family's lowest index to 0.
pub fn raising_squares(family: Family, mu: &Number, len: usize) -> Vec<Number> {
    let offset = family.lowest_index();
    (0..len as i64)
        .map(|s| family_action_squares(family, mu, s + offset).0)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub mu: Number,
    pub shifted_mu: Number,
    pub dim: usize,
    pub equivalent: bool,
    /// First storage index at which a coefficient differs.
    pub first_mismatch: Option<usize>,
}

/// Re-indexes the second family at μ by one step and compares every b±
/// coefficient with the first family at μ − ½.
pub fn equivalence_shift(mu: &Number, dim: usize) -> Result<EquivalenceReport> {
    if mu.compare(&Number::half()).is_le() {
        return Err(Error::InvalidParameter(format!(
            "equivalence needs mu > 1/2, got {mu}"
        )));
    }
    let shifted_mu = mu - &Number::half();
    let first_mismatch = (0..dim).find(|&s| {
        let (plus_e, minus_e) = family_action_squares(Family::EquivActions, mu, s as i64 - 1);
        let (plus_f, minus_f) = family_action_squares(Family::FinalActions, &shifted_mu, s as i64);
        !(plus_e - plus_f).is_zero() || !(minus_e - minus_f).is_zero()
    });
    Ok(EquivalenceReport {
        mu: mu.clone(),
        shifted_mu,
        dim,
        equivalent: first_mismatch.is_none(),
        first_mismatch,
    })
}
