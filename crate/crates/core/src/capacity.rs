//! Credibility functions (monotone capacities normalized to `[0, 1]`), their
//! mass representation, and constructors from the standard uncertainty
//! models.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{Frame, Permutation, Subset};
use crate::moebius::{self, Direction};
use crate::{EPS, EPS_IDENTITY};

/// What family a [`Capacity`] is claimed to belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityKind {
    Belief,
    Plausibility,
    Probability,
    PossibilityMeasure,
    Necessity,
    GenericMonotone,
}

impl CapacityKind {
    pub const ALL: [CapacityKind; 6] = [
        CapacityKind::Belief,
        CapacityKind::Plausibility,
        CapacityKind::Probability,
        CapacityKind::PossibilityMeasure,
        CapacityKind::Necessity,
        CapacityKind::GenericMonotone,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CapacityKind::Belief => "belief",
            CapacityKind::Plausibility => "plausibility",
            CapacityKind::Probability => "probability",
            CapacityKind::PossibilityMeasure => "possibility_measure",
            CapacityKind::Necessity => "necessity",
            CapacityKind::GenericMonotone => "generic_monotone",
        }
    }

    /// Kind of the co-credibility function.
    pub fn dual(self) -> CapacityKind {
        match self {
            CapacityKind::Belief => CapacityKind::Plausibility,
            CapacityKind::Plausibility => CapacityKind::Belief,
            CapacityKind::PossibilityMeasure => CapacityKind::Necessity,
            CapacityKind::Necessity => CapacityKind::PossibilityMeasure,
            k @ (CapacityKind::Probability | CapacityKind::GenericMonotone) => k,
        }
    }

    /// True when the basic belief masses of this kind are its `w`
    /// transform rather than its `v` transform.
    pub fn is_upper(self) -> bool {
        matches!(
            self,
            CapacityKind::Plausibility | CapacityKind::PossibilityMeasure
        )
    }
}

impl fmt::Display for CapacityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CapacityKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CapacityKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown capacity kind `{s}`"))
    }
}

/// A credibility function: one value per subset, indexed by bit pattern.
///
/// Construction only checks shape and finiteness; use [`validate`] to check
/// the range, monotonicity and kind invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Capacity {
    frame: Frame,
    values: Vec<f64>,
    kind: CapacityKind,
}

impl Capacity {
    pub fn new(frame: Frame, kind: CapacityKind, values: Vec<f64>) -> Result<Self> {
        check_len(&frame, values.len())?;
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(frame.display(Subset::from_bits(i as u32))));
        }
        Ok(Capacity {
            frame,
            values,
            kind,
        })
    }

    pub(crate) fn from_parts(frame: Frame, kind: CapacityKind, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), frame.size());
        Capacity {
            frame,
            values,
            kind,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn kind(&self) -> CapacityKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, a: Subset) -> f64 {
        self.values[a.index()]
    }

    /// `Cr(1_Ω)`.
    pub fn total(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn is_closed_world(&self) -> bool {
        (self.total() - 1.0).abs() <= EPS
    }

    pub fn with_kind(mut self, kind: CapacityKind) -> Self {
        self.kind = kind;
        self
    }

    /// The capacity `Cr'` with `Cr'(G(A)) = Cr(A)`, on the same frame.
    pub fn permute(&self, g: &Permutation) -> Result<Capacity> {
        check_perm(&self.frame, g)?;
        Ok(Capacity::from_parts(
            self.frame.clone(),
            self.kind,
            g.permute_subset_values(&self.values),
        ))
    }
}

/// Möbius representation of a capacity: one mass per subset, including the
/// empty set (the open-world deficit). Masses may be negative; they always
/// sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    masses: Vec<f64>,
}

impl MassFunction {
    pub fn new(frame: Frame, masses: Vec<f64>) -> Result<Self> {
        check_len(&frame, masses.len())?;
        if let Some(i) = masses.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(frame.display(Subset::from_bits(i as u32))));
        }
        let sum: f64 = masses.iter().sum();
        if (sum - 1.0).abs() > EPS {
            return Err(Error::InvalidMass(sum));
        }
        Ok(MassFunction { frame, masses })
    }

    /// Builds from `(subset, mass)` pairs; unlisted subsets get zero and
    /// repeated subsets accumulate.
    pub fn from_focal<I>(frame: Frame, focal: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut masses = vec![0.0; frame.size()];
        for (a, m) in focal {
            let a = frame.subset(a.bits())?;
            masses[a.index()] += m;
        }
        Self::new(frame, masses)
    }

    /// All mass on `1_Ω`.
    pub fn vacuous(frame: Frame) -> Self {
        let mut masses = vec![0.0; frame.size()];
        masses[frame.full().index()] = 1.0;
        MassFunction { frame, masses }
    }

    pub(crate) fn from_parts(frame: Frame, masses: Vec<f64>) -> Self {
        debug_assert_eq!(masses.len(), frame.size());
        MassFunction { frame, masses }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn into_masses(self) -> Vec<f64> {
        self.masses
    }

    pub fn mass(&self, a: Subset) -> f64 {
        self.masses[a.index()]
    }

    /// Mass on the empty set.
    pub fn conflict(&self) -> f64 {
        self.masses[0]
    }

    /// Subsets with non-zero mass, ascending.
    pub fn focal_sets(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.masses
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0.0)
            .map(|(i, &m)| (Subset::from_bits(i as u32), m))
    }

    /// First subset (the empty set included) carrying mass below
    /// `-1e-12`, if any.
    pub fn first_negative(&self) -> Option<(Subset, f64)> {
        self.masses
            .iter()
            .enumerate()
            .find(|(_, &m)| m < -EPS_IDENTITY)
            .map(|(i, &m)| (Subset::from_bits(i as u32), m))
    }

    pub fn permute(&self, g: &Permutation) -> Result<MassFunction> {
        check_perm(&self.frame, g)?;
        Ok(MassFunction::from_parts(
            self.frame.clone(),
            g.permute_subset_values(&self.masses),
        ))
    }
}

/// Normalized possibility distribution over atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityDistribution {
    frame: Frame,
    pi: Vec<f64>,
}

impl PossibilityDistribution {
    pub fn new(frame: Frame, pi: Vec<f64>) -> Result<Self> {
        if pi.len() != frame.len() {
            return Err(Error::LengthMismatch {
                expected: frame.len(),
                found: pi.len(),
            });
        }
        for (i, &p) in pi.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite(frame.atom(i).to_string()));
            }
            if !(-EPS..=1.0 + EPS).contains(&p) {
                return Err(Error::OutOfRange {
                    value: p,
                    at: frame.atom(i).to_string(),
                });
            }
        }
        let max = pi.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if (max - 1.0).abs() > EPS {
            return Err(Error::NotNormalized(max));
        }
        Ok(PossibilityDistribution { frame, pi })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.pi
    }
}

fn check_len(frame: &Frame, found: usize) -> Result<()> {
    if found == frame.size() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: frame.size(),
            found,
        })
    }
}

fn check_perm(frame: &Frame, g: &Permutation) -> Result<()> {
    if g.len() == frame.len() {
        Ok(())
    } else {
        Err(Error::InvalidPermutation(format!(
            "permutation of {} atoms applied to a frame of {}",
            g.len(),
            frame.len()
        )))
    }
}

fn require_nonnegative(m: &MassFunction) -> Result<()> {
    match m.first_negative() {
        Some((a, value)) => Err(Error::NegativeMass {
            value,
            at: m.frame().display(a),
        }),
        None => Ok(()),
    }
}

/// Belief function `bel(A) = Σ_{∅≠B⊆A} m(B)`.
pub fn from_mass(m: &MassFunction) -> Result<Capacity> {
    require_nonnegative(m)?;
    let mut values = m.masses().to_vec();
    values[0] = 0.0;
    moebius::fast_transform_inplace(&mut values, Direction::Zeta);
    Ok(Capacity::from_parts(
        m.frame().clone(),
        CapacityKind::Belief,
        values,
    ))
}

/// Plausibility `pl(A) = Σ_{B∩A≠∅} m(B)`, computed as the non-empty mass
/// minus the mass lying inside the complement of `A`.
pub fn plausibility_from_mass(m: &MassFunction) -> Result<Capacity> {
    require_nonnegative(m)?;
    let frame = m.frame();
    let mut inside = m.masses().to_vec();
    inside[0] = 0.0;
    let nonempty: f64 = inside.iter().sum();
    moebius::fast_transform_inplace(&mut inside, Direction::Zeta);
    let full = frame.full().bits();
    let values = (0..frame.size() as u32)
        .map(|a| {
            if a == 0 {
                0.0
            } else {
                nonempty - inside[(!a & full) as usize]
            }
        })
        .collect();
    Ok(Capacity::from_parts(
        frame.clone(),
        CapacityKind::Plausibility,
        values,
    ))
}

/// Additive capacity from atom probabilities.
pub fn from_probability(frame: &Frame, p: &[f64]) -> Result<Capacity> {
    if p.len() != frame.len() {
        return Err(Error::LengthMismatch {
            expected: frame.len(),
            found: p.len(),
        });
    }
    for (i, &x) in p.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite(frame.atom(i).to_string()));
        }
        if x < 0.0 {
            return Err(Error::NegativeValue {
                value: x,
                at: frame.atom(i).to_string(),
            });
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > EPS {
        return Err(Error::NotNormalized(sum));
    }
    let mut values = vec![0.0; frame.size()];
    for a in 1..frame.size() {
        // lowest atom plus the rest, which is already filled in
        let low = a.trailing_zeros() as usize;
        values[a] = values[a & (a - 1)] + p[low];
    }
    Ok(Capacity::from_parts(
        frame.clone(),
        CapacityKind::Probability,
        values,
    ))
}

/// The three faces of a possibility distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct PossibilityModel {
    pub possibility: Capacity,
    pub necessity: Capacity,
    /// Consonant masses on the nested level sets.
    pub masses: MassFunction,
}

pub fn from_possibility(pi: &PossibilityDistribution) -> PossibilityModel {
    let frame = pi.frame();
    let p = pi.values();

    let mut possibility = vec![0.0_f64; frame.size()];
    for a in 1..frame.size() {
        let low = a.trailing_zeros() as usize;
        possibility[a] = possibility[a & (a - 1)].max(p[low]);
    }
    let full = frame.full().index();
    let necessity = (0..frame.size())
        .map(|a| 1.0 - possibility[!a & full])
        .collect();

    let mut levels: Vec<f64> = p.iter().copied().filter(|&x| x > 0.0).collect();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();
    let mut masses = vec![0.0; frame.size()];
    for (i, &level) in levels.iter().enumerate() {
        let next = levels.get(i + 1).copied().unwrap_or(0.0);
        let cut = p
            .iter()
            .enumerate()
            .filter(|(_, &x)| x >= level)
            .fold(Subset::EMPTY, |acc, (j, _)| acc.with(j));
        masses[cut.index()] += level - next;
    }

    PossibilityModel {
        possibility: Capacity::from_parts(
            frame.clone(),
            CapacityKind::PossibilityMeasure,
            possibility,
        ),
        necessity: Capacity::from_parts(frame.clone(), CapacityKind::Necessity, necessity),
        masses: MassFunction::from_parts(frame.clone(), masses),
    }
}

/// Co-credibility `CoCr(A) = Cr(1_Ω) − Cr(Ā)`.
pub fn dual(cr: &Capacity) -> Capacity {
    let total = cr.total();
    let full = cr.frame().full().index();
    let values = (0..cr.values().len())
        .map(|a| total - cr.values()[!a & full])
        .collect();
    Capacity::from_parts(cr.frame().clone(), cr.kind().dual(), values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strictness {
    /// Range, monotonicity and the empty-set value only.
    Structural,
    /// Structural checks plus the invariants of the capacity's kind.
    Kind,
}

/// Which property a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// `0 ≤ Cr(A) ≤ 1`.
    Range,
    /// `A ⊆ B ⇒ Cr(A) ≤ Cr(B)`.
    Monotonicity,
    /// `Cr(∅) = 0`.
    EmptySet,
    /// Probability: `Cr(A) = Σ_{ω∈A} Cr({ω})`.
    Additivity,
    /// Belief: `v(A) ≥ 0` for `A ≠ ∅`.
    NonnegativeV,
    /// Plausibility: `w(A) ≥ 0` for `A ≠ ∅`.
    NonnegativeW,
    /// Possibility measure: `Π(A) = max_{ω∈A} Π({ω})`.
    Maxitivity,
    /// Necessity: `N(A) = min_{ω∉A} N(Ω∖{ω})`.
    Minitivity,
}

impl Property {
    pub fn as_str(self) -> &'static str {
        match self {
            Property::Range => "range",
            Property::Monotonicity => "monotonicity",
            Property::EmptySet => "empty-set",
            Property::Additivity => "additivity",
            Property::NonnegativeV => "nonnegative-v",
            Property::NonnegativeW => "nonnegative-w",
            Property::Maxitivity => "maxitivity",
            Property::Minitivity => "minitivity",
        }
    }
}

/// A violated property with its witness. `value` is the offending value at
/// `subset`; `expected` is what it was compared against (the value at
/// `other` when there is one).
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub property: Property,
    pub subset: Subset,
    pub other: Option<Subset>,
    pub value: f64,
    pub expected: f64,
}

/// At most this many witnesses are kept per property.
pub const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Violations found beyond [`MAX_WITNESSES`] per property.
    pub omitted: usize,
    /// `Cr(1_Ω) = 1`; informational only.
    pub closed_world: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, property: Property) -> bool {
        self.violations.iter().any(|v| v.property == property)
    }

    /// One line per violation, subsets written with atom names.
    pub fn render(&self, frame: &Frame) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                let at = frame.display(v.subset);
                match v.other {
                    Some(o) => format!(
                        "{}: {} = {} vs {} = {}",
                        v.property.as_str(),
                        at,
                        v.value,
                        frame.display(o),
                        v.expected
                    ),
                    None => format!(
                        "{}: {} = {}, expected {}",
                        v.property.as_str(),
                        at,
                        v.value,
                        v.expected
                    ),
                }
            })
            .collect()
    }
}

#[derive(Default)]
struct Collector {
    violations: Vec<Violation>,
    omitted: usize,
}

impl Collector {
    fn push(&mut self, v: Violation) {
        let seen = self
            .violations
            .iter()
            .filter(|x| x.property == v.property)
            .count();
        if seen < MAX_WITNESSES {
            self.violations.push(v);
        } else {
            self.omitted += 1;
        }
    }
}

pub fn validate(cr: &Capacity, strictness: Strictness) -> ValidationReport {
    let values = cr.values();
    let n = cr.frame().len();
    let mut out = Collector::default();

    for (a, &x) in values.iter().enumerate() {
        if !(-EPS..=1.0 + EPS).contains(&x) {
            out.push(Violation {
                property: Property::Range,
                subset: Subset::from_bits(a as u32),
                other: None,
                value: x,
                expected: x.clamp(0.0, 1.0),
            });
        }
    }
    if values[0].abs() > EPS {
        out.push(Violation {
            property: Property::EmptySet,
            subset: Subset::EMPTY,
            other: None,
            value: values[0],
            expected: 0.0,
        });
    }
    // covering pairs suffice: monotonicity is transitive
    for (a, &x) in values.iter().enumerate() {
        for atom in 0..n {
            let b = a | 1 << atom;
            if b != a && x > values[b] + EPS {
                out.push(Violation {
                    property: Property::Monotonicity,
                    subset: Subset::from_bits(a as u32),
                    other: Some(Subset::from_bits(b as u32)),
                    value: x,
                    expected: values[b],
                });
            }
        }
    }

    if strictness == Strictness::Kind {
        check_kind(cr, &mut out);
    }

    ValidationReport {
        violations: out.violations,
        omitted: out.omitted,
        closed_world: cr.is_closed_world(),
    }
}

fn check_kind(cr: &Capacity, out: &mut Collector) {
    let values = cr.values();
    let frame = cr.frame();
    let size = frame.size();
    let full = frame.full().index();
    match cr.kind() {
        CapacityKind::GenericMonotone => {}
        CapacityKind::Belief | CapacityKind::Plausibility => {
            let (property, m) = if cr.kind() == CapacityKind::Belief {
                (Property::NonnegativeV, moebius::moebius_v(cr))
            } else {
                (Property::NonnegativeW, moebius::moebius_w(cr))
            };
            for (a, x) in m.focal_sets().skip_while(|(a, _)| a.is_empty()) {
                if x < -EPS {
                    out.push(Violation {
                        property,
                        subset: a,
                        other: None,
                        value: x,
                        expected: 0.0,
                    });
                }
            }
        }
        CapacityKind::Probability => {
            let mut additive = vec![0.0; size];
            for a in 1..size {
                let low = 1 << a.trailing_zeros();
                additive[a] = additive[a & (a - 1)] + values[low];
            }
            for a in 1..size {
                if (values[a] - additive[a]).abs() > EPS {
                    out.push(Violation {
                        property: Property::Additivity,
                        subset: Subset::from_bits(a as u32),
                        other: None,
                        value: values[a],
                        expected: additive[a],
                    });
                }
            }
        }
        CapacityKind::PossibilityMeasure => {
            for a in 1..size {
                let (arg, max) = Subset::from_bits(a as u32)
                    .atoms()
                    .map(|i| (i, values[1 << i]))
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |best, c| {
                            if c.1 > best.1 {
                                c
                            } else {
                                best
                            }
                        },
                    );
                if (values[a] - max).abs() > EPS {
                    out.push(Violation {
                        property: Property::Maxitivity,
                        subset: Subset::from_bits(a as u32),
                        other: Some(Subset::singleton(arg)),
                        value: values[a],
                        expected: max,
                    });
                }
            }
        }
        CapacityKind::Necessity => {
            for a in 0..full {
                let outside = Subset::from_bits((!a & full) as u32);
                let (arg, min) = outside.atoms().map(|i| (i, values[full & !(1 << i)])).fold(
                    (0, f64::INFINITY),
                    |best, c| {
                        if c.1 < best.1 {
                            c
                        } else {
                            best
                        }
                    },
                );
                if (values[a] - min).abs() > EPS {
                    out.push(Violation {
                        property: Property::Minitivity,
                        subset: Subset::from_bits(a as u32),
                        other: Some(Subset::from_bits((full & !(1 << arg)) as u32)),
                        value: values[a],
                        expected: min,
                    });
                }
            }
        }
    }
}

/// Atoms `x` with `Cr(A ∪ {x}) = Cr(A)` for every `A`, within `1e-12`.
pub fn null_atoms(cr: &Capacity) -> Subset {
    let values = cr.values();
    (0..cr.frame().len())
        .filter(|&x| {
            let bit = 1 << x;
            (0..values.len())
                .filter(|a| a & bit == 0)
                .all(|a| (values[a | bit] - values[a]).abs() <= EPS_IDENTITY)
        })
        .fold(Subset::EMPTY, |acc, x| acc.with(x))
}
