//! The pignistic transformation: from any credibility function to the
//! probability function used for decisions.
//!
//! Every non-empty mass `m(B)` is split equally among the atoms of `B`. The
//! same result is reached without masses through the closed form
//!
//! ```text
//! BetP(ω_j) = Σ_{I ⊆ N∖{j}} (Cr({ω_j} ∪ A_I) − Cr(A_I)) / (n · C(n−1, |I|))
//! ```
//!
//! which is the Shapley value of `Cr` viewed as a cooperative game over
//! the atoms. Mass on the empty set is never distributed; it is reported as
//! a deficit unless normalization is requested.

use std::fmt;
use std::str::FromStr;

use crate::capacity::{Capacity, MassFunction};
use crate::error::{Error, Result};
use crate::frame::{Frame, Permutation, Subset};
use crate::moebius::{moebius_v, moebius_w};
use crate::EPS;

/// Probability (or sub-probability) per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct PignisticResult {
    frame: Frame,
    prob: Vec<f64>,
    mass_deficit: f64,
    normalized: bool,
}

impl PignisticResult {
    /// Wraps an externally computed distribution; the deficit is
    /// `1 − Σ prob`.
    pub fn new(frame: Frame, prob: Vec<f64>, normalized: bool) -> Result<Self> {
        if prob.len() != frame.len() {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                found: prob.len(),
            });
        }
        Ok(Self::from_parts(frame, prob, normalized))
    }

    fn from_parts(frame: Frame, prob: Vec<f64>, normalized: bool) -> Self {
        let mass_deficit = 1.0 - prob.iter().sum::<f64>();
        PignisticResult {
            frame,
            prob,
            mass_deficit,
            normalized,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.prob
    }

    pub fn probability(&self, atom: usize) -> f64 {
        self.prob[atom]
    }

    /// `P(A) = Σ_{ω∈A} P(ω)`.
    pub fn of(&self, a: Subset) -> f64 {
        a.atoms().map(|i| self.prob[i]).sum()
    }

    pub fn total(&self) -> f64 {
        self.prob.iter().sum()
    }

    pub fn mass_deficit(&self) -> f64 {
        self.mass_deficit
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Moves the probability of atom `i` to atom `G(i)`.
    pub fn permute(&self, g: &Permutation) -> PignisticResult {
        PignisticResult {
            frame: self.frame.clone(),
            prob: g.permute_atom_values(&self.prob),
            mass_deficit: self.mass_deficit,
            normalized: self.normalized,
        }
    }

    /// Largest atomwise absolute difference.
    pub fn max_abs_diff(&self, other: &PignisticResult) -> f64 {
        max_abs_diff(&self.prob, &other.prob)
    }
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// How [`gamma`] computes the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    /// Same as [`Route::MassV`].
    #[default]
    Auto,
    MassV,
    MassW,
    ClosedForm,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Auto, Route::MassV, Route::MassW, Route::ClosedForm];

    pub fn as_str(self) -> &'static str {
        match self {
            Route::Auto => "auto",
            Route::MassV => "mass-v",
            Route::MassW => "mass-w",
            Route::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Route::ALL
            .into_iter()
            .find(|r| r.as_str() == s || r.as_str().replace('-', "_") == s)
            .ok_or_else(|| format!("unknown route `{s}`"))
    }
}

/// `BetP(ω) = Σ_{B∋ω} m(B)/|B|`, optionally divided by `1 − m(∅)`.
pub fn transform_from_masses(m: &MassFunction, normalize: bool) -> Result<PignisticResult> {
    let sum: f64 = m.masses().iter().sum();
    if (sum - 1.0).abs() > EPS {
        return Err(Error::InvalidMass(sum));
    }
    let n = m.frame().len();
    let mut prob = vec![0.0; n];
    for (b, &mass) in m.masses().iter().enumerate().skip(1) {
        if mass == 0.0 {
            continue;
        }
        let b = Subset::from_bits(b as u32);
        let share = mass / b.len() as f64;
        for atom in b.atoms() {
            prob[atom] += share;
        }
    }
    if normalize {
        let kept = 1.0 - m.conflict();
        if kept <= EPS {
            return Err(Error::TotalConflict(m.conflict()));
        }
        prob.iter_mut().for_each(|p| *p /= kept);
    }
    Ok(PignisticResult::from_parts(
        m.frame().clone(),
        prob,
        normalize,
    ))
}

/// `1 / (n · C(n−1, k))` for `k = 0..n`.
pub fn closed_form_coefficients(n: usize) -> Vec<f64> {
    let mut binom = 1.0_f64;
    (0..n)
        .map(|k| {
            if k > 0 {
                binom = binom * (n - k) as f64 / k as f64;
            }
            1.0 / (n as f64 * binom)
        })
        .collect()
}

/// Unnormalized transform straight from the capacity values.
///
/// Each atom's terms are summed in sorted order with compensation, so the
/// result depends only on the multiset of terms: relabeling the atoms
/// permutes the output bit-for-bit.
pub fn transform_closed_form(cr: &Capacity) -> PignisticResult {
    let n = cr.frame().len();
    let values = cr.values();
    let coef = closed_form_coefficients(n);
    let half = 1usize << (n - 1);
    let mut terms = Vec::with_capacity(half);
    let prob = (0..n)
        .map(|j| {
            let low = (1usize << j) - 1;
            terms.clear();
            terms.extend((0..half).map(|r| {
                // spread r around a zero at bit j
                let without = (r & !low) << 1 | (r & low);
                let gain = values[without | 1 << j] - values[without];
                gain * coef[without.count_ones() as usize]
            }));
            terms.sort_unstable_by(f64::total_cmp);
            compensated_sum(&terms)
        })
        .collect();
    PignisticResult::from_parts(cr.frame().clone(), prob, false)
}

fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for &x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// The pignistic transformation of `cr`, by the chosen route.
pub fn gamma(cr: &Capacity, route: Route, normalize: bool) -> Result<PignisticResult> {
    match route {
        Route::Auto | Route::MassV => transform_from_masses(&moebius_v(cr), normalize),
        Route::MassW => transform_from_masses(&moebius_w(cr), normalize),
        Route::ClosedForm => {
            let raw = transform_closed_form(cr);
            if !normalize {
                return Ok(raw);
            }
            let kept = cr.total();
            if kept <= EPS {
                return Err(Error::TotalConflict(1.0 - kept));
            }
            let prob = raw.prob.iter().map(|p| p / kept).collect();
            Ok(PignisticResult::from_parts(raw.frame, prob, true))
        }
    }
}
