//! Expected-utility decisions under a pignistic probability.

use crate::capacity::Capacity;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::pignistic::{gamma, PignisticResult, Route};
use crate::EPS;

/// Acts with one utility per atom.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionProblem {
    frame: Frame,
    acts: Vec<String>,
    utilities: Vec<Vec<f64>>,
}

impl DecisionProblem {
    pub fn new(frame: Frame, acts: Vec<String>, utilities: Vec<Vec<f64>>) -> Result<Self> {
        if acts.is_empty() {
            return Err(Error::InvalidUtilities("no acts".into()));
        }
        if acts.len() != utilities.len() {
            return Err(Error::InvalidUtilities(format!(
                "{} acts but {} utility rows",
                acts.len(),
                utilities.len()
            )));
        }
        for (act, row) in acts.iter().zip(&utilities) {
            if row.len() != frame.len() {
                return Err(Error::InvalidUtilities(format!(
                    "act `{act}` has {} utilities for {} atoms",
                    row.len(),
                    frame.len()
                )));
            }
            if row.iter().any(|u| !u.is_finite()) {
                return Err(Error::InvalidUtilities(format!(
                    "act `{act}` has a non-finite utility"
                )));
            }
        }
        Ok(DecisionProblem {
            frame,
            acts,
            utilities,
        })
    }

    /// One act per atom, paying 1 if that atom is the true one.
    pub fn indicator_bets(frame: Frame) -> Self {
        let n = frame.len();
        let acts = frame.atoms().iter().map(|a| format!("bet_{a}")).collect();
        let utilities = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        DecisionProblem {
            frame,
            acts,
            utilities,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn acts(&self) -> &[String] {
        &self.acts
    }

    pub fn utilities(&self) -> &[Vec<f64>] {
        &self.utilities
    }

    /// `u → scale·u + shift` for every entry.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        DecisionProblem {
            frame: self.frame.clone(),
            acts: self.acts.clone(),
            utilities: self
                .utilities
                .iter()
                .map(|row| row.iter().map(|u| scale * u + shift).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionResult {
    pub acts: Vec<String>,
    pub expected_utility: Vec<f64>,
    /// Lowest-index act among the ties.
    pub best: usize,
    /// Every act within the tie tolerance of the maximum, ascending.
    pub ties: Vec<usize>,
    /// Set when the probabilities sum to less than one (open world,
    /// unnormalized), so expectations are over a sub-probability.
    pub subprobability: bool,
}

impl DecisionResult {
    pub fn best_act(&self) -> &str {
        &self.acts[self.best]
    }

    pub fn tied_acts(&self) -> Vec<&str> {
        self.ties.iter().map(|&i| self.acts[i].as_str()).collect()
    }
}

/// Absolute tie tolerance at expected utilities of magnitude up to one;
/// relative beyond.
pub fn tie_tolerance(best: f64) -> f64 {
    EPS * best.abs().max(1.0)
}

/// `EU(a) = Σ_ω p(ω)·u(a, ω)`; ties broken by lowest act index.
pub fn expected_utilities(dp: &DecisionProblem, p: &PignisticResult) -> Result<DecisionResult> {
    if dp.frame.atoms() != p.frame().atoms() {
        return Err(Error::FrameMismatch(format!(
            "utilities over {:?}, probabilities over {:?}",
            dp.frame,
            p.frame()
        )));
    }
    let prob = p.probabilities();
    let expected_utility: Vec<f64> = dp
        .utilities
        .iter()
        .map(|row| row.iter().zip(prob).map(|(u, q)| u * q).sum())
        .collect();
    let top = expected_utility
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let tol = tie_tolerance(top);
    let ties: Vec<usize> = expected_utility
        .iter()
        .enumerate()
        .filter(|(_, &eu)| top - eu <= tol)
        .map(|(i, _)| i)
        .collect();
    let best = ties[0];
    Ok(DecisionResult {
        acts: dp.acts.clone(),
        expected_utility,
        best,
        ties,
        subprobability: (1.0 - p.total()) > EPS,
    })
}

/// Pignistic transformation followed by expected-utility maximization.
pub fn decide(cr: &Capacity, dp: &DecisionProblem, normalize: bool) -> Result<DecisionResult> {
    decide_with(cr, dp, Route::Auto, normalize)
}

pub fn decide_with(
    cr: &Capacity,
    dp: &DecisionProblem,
    route: Route,
    normalize: bool,
) -> Result<DecisionResult> {
    let p = gamma(cr, route, normalize)?;
    expected_utilities(dp, &p)
}
