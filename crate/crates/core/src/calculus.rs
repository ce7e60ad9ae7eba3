//! Moving between credibility spaces: convex α-combination of two
//! combinable spaces, conditioning at the credal level, and the comparison
//! between conditioning before and after the pignistic transformation.

use std::fmt;
use std::str::FromStr;

use crate::capacity::{Capacity, CapacityKind, MassFunction};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::pignistic::{self, PignisticResult};
use crate::{EPS, EPS_IDENTITY};

/// Separator used to join the atom names of two combined frames.
pub const JOIN: char = '~';

/// Weight `α ∈ [0, 1]` of the first space.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct AlphaCombination(f64);

impl AlphaCombination {
    pub fn new(alpha: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&alpha) {
            Ok(AlphaCombination(alpha))
        } else {
            Err(Error::AlphaOutOfRange(alpha))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// `α·x + (1−α)·y`, exact when `x == y` and at both endpoints.
    pub fn mix(self, x: f64, y: f64) -> f64 {
        if self.0 == 1.0 {
            x
        } else if self.0 == 0.0 {
            y
        } else {
            y + self.0 * (x - y)
        }
    }
}

/// The combined frame: atom `j` is named `first_j~second_j`.
pub fn joined_frame(first: &Frame, second: &Frame) -> Result<Frame> {
    if first.len() != second.len() {
        return Err(Error::NotCombinable(first.len(), second.len()));
    }
    Frame::with_limit(
        first
            .atoms()
            .iter()
            .zip(second.atoms())
            .map(|(a, b)| format!("{a}{JOIN}{b}")),
        crate::frame::MAX_ATOMS_CEILING,
    )
}

fn combined_kind(a: CapacityKind, b: CapacityKind) -> CapacityKind {
    use CapacityKind::*;
    let lower = |k| matches!(k, Belief | Necessity | Probability);
    let upper = |k| matches!(k, Plausibility | PossibilityMeasure | Probability);
    match (a, b) {
        (Probability, Probability) => Probability,
        _ if lower(a) && lower(b) => Belief,
        _ if upper(a) && upper(b) => Plausibility,
        _ => GenericMonotone,
    }
}

/// Pointwise `α·Cr₁ + (1−α)·Cr₂`, atoms matched by position.
pub fn alpha_combine(cr1: &Capacity, cr2: &Capacity, alpha: f64) -> Result<Capacity> {
    let mix = AlphaCombination::new(alpha)?;
    let frame = joined_frame(cr1.frame(), cr2.frame())?;
    let values = cr1
        .values()
        .iter()
        .zip(cr2.values())
        .map(|(&x, &y)| mix.mix(x, y))
        .collect();
    Capacity::new(frame, combined_kind(cr1.kind(), cr2.kind()), values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConditioningMode {
    /// Mass of sets disjoint from the event stays on the empty set.
    #[default]
    TransferOpen,
    /// As [`ConditioningMode::TransferOpen`], then rescaled so the
    /// empty set carries nothing.
    TransferNormalized,
}

impl ConditioningMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditioningMode::TransferOpen => "open",
            ConditioningMode::TransferNormalized => "normalized",
        }
    }
}

impl fmt::Display for ConditioningMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConditioningMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "open" | "transfer_open" | "transfer-open" => Ok(ConditioningMode::TransferOpen),
            "normalized" | "transfer_normalized" | "transfer-normalized" => {
                Ok(ConditioningMode::TransferNormalized)
            }
            _ => Err(format!("unknown conditioning mode `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditioningEvent {
    event: Subset,
    mode: ConditioningMode,
}

impl ConditioningEvent {
    pub fn new(event: Subset, mode: ConditioningMode) -> Result<Self> {
        if mode == ConditioningMode::TransferNormalized && event.is_empty() {
            return Err(Error::EmptyEvent);
        }
        Ok(ConditioningEvent { event, mode })
    }

    pub fn event(&self) -> Subset {
        self.event
    }

    pub fn mode(&self) -> ConditioningMode {
        self.mode
    }
}

/// Transfer rule: `m_A(B) = Σ_{C∩A=B} m(C)`.
pub fn condition(m: &MassFunction, ev: &ConditioningEvent) -> Result<MassFunction> {
    let frame = m.frame();
    let event = frame.subset(ev.event.bits())?;
    let mut out = vec![0.0; frame.size()];
    for (c, &mass) in m.masses().iter().enumerate() {
        out[c & event.index()] += mass;
    }
    if ev.mode == ConditioningMode::TransferNormalized {
        let conflict = out[0];
        let kept = 1.0 - conflict;
        if kept <= EPS {
            return Err(Error::TotalConflict(conflict));
        }
        out[0] = 0.0;
        out.iter_mut().for_each(|x| *x /= kept);
    }
    Ok(MassFunction::from_parts(frame.clone(), out))
}

/// `P(· | A)`: zero outside `A`, rescaled inside.
pub fn bayes_condition(p: &PignisticResult, event: Subset) -> Result<PignisticResult> {
    let mass = p.of(event);
    if mass <= EPS_IDENTITY {
        return Err(Error::ZeroProbabilityEvent);
    }
    let prob = p
        .probabilities()
        .iter()
        .enumerate()
        .map(|(i, &x)| if event.contains(i) { x / mass } else { 0.0 })
        .collect();
    PignisticResult::new(p.frame().clone(), prob, true)
}

/// Pignistic probabilities of conditioning at the credal level versus
/// conditioning the pignistic probability.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub event: ConditioningEvent,
    /// Mass the transfer sends to the empty set, `m_A(∅)`.
    pub conflict: f64,
    /// `Γ(Cr_A)`, normalized so that both routes are probabilities.
    pub credal: PignisticResult,
    /// `Γ(Cr)` conditioned on `A` by Bayes' rule.
    pub bayesian: PignisticResult,
    pub max_abs_diff: f64,
}

pub fn two_level_vs_one_level(
    m: &MassFunction,
    ev: &ConditioningEvent,
) -> Result<ComparisonReport> {
    let prior = pignistic::transform_from_masses(m, false)?;
    let bayesian = bayes_condition(&prior, ev.event)?;
    let open = ConditioningEvent::new(ev.event, ConditioningMode::TransferOpen)?;
    let conditioned = condition(m, &open)?;
    let conflict = conditioned.conflict();
    let credal = pignistic::transform_from_masses(&conditioned, true)?;
    let max_abs_diff = credal.max_abs_diff(&bayesian);
    Ok(ComparisonReport {
        event: *ev,
        conflict,
        credal,
        bayesian,
        max_abs_diff,
    })
}

/// [`two_level_vs_one_level`] starting from a capacity (through its `v`
/// masses, or its `w` masses for upper kinds).
pub fn two_level_vs_one_level_capacity(
    cr: &Capacity,
    ev: &ConditioningEvent,
) -> Result<ComparisonReport> {
    two_level_vs_one_level(&crate::moebius::basic_masses(cr), ev)
}
