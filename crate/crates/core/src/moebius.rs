//! Conversions between a credibility function and its two Möbius
//! transforms.
//!
//! `v` is the Möbius transform of `Cr` itself and `w` the Möbius transform of
//! its dual; both put `1 − Cr(1_Ω)` on the empty set so that they sum to one.
//! The work is done by an `O(n·2^n)` per-bit sweep over the subset lattice.

use crate::capacity::{self, Capacity, CapacityKind, MassFunction};
use crate::EPS_IDENTITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `out(A) = Σ_{B⊆A} x(B)`.
    Zeta,
    /// Inverse of [`Direction::Zeta`]: `out(A) = Σ_{B⊆A} (−1)^{|A∖B|} x(B)`.
    Moebius,
}

/// Subset-sum transform (or its inverse) of a dense vector indexed by bit
/// pattern.
///
/// # Panics
///
/// If `values.len()` is not a power of two.
pub fn fast_transform_inplace(values: &mut [f64], direction: Direction) {
    let len = values.len();
    assert!(
        len.is_power_of_two(),
        "transform length {len} is not a power of two"
    );
    let mut half = 1;
    while half < len {
        for block in values.chunks_exact_mut(2 * half) {
            let (without, with) = block.split_at_mut(half);
            match direction {
                Direction::Zeta => with.iter_mut().zip(&*without).for_each(|(h, l)| *h += l),
                Direction::Moebius => with.iter_mut().zip(&*without).for_each(|(h, l)| *h -= l),
            }
        }
        half *= 2;
    }
}

/// `v(A) = Σ_{B⊆A} (−1)^{|A|−|B|} Cr(B)` for `A ≠ ∅`, `v(∅) = 1 − Cr(1_Ω)`.
pub fn moebius_v(cr: &Capacity) -> MassFunction {
    let mut v = cr.values().to_vec();
    fast_transform_inplace(&mut v, Direction::Moebius);
    v[0] = 1.0 - cr.total();
    MassFunction::from_parts(cr.frame().clone(), v)
}

/// The Möbius transform of the co-credibility function, with
/// `w(∅) = 1 − Cr(1_Ω)`.
pub fn moebius_w(cr: &Capacity) -> MassFunction {
    let mut masses = moebius_v(&capacity::dual(cr)).into_masses();
    // the dual's total is Cr(1_Ω) − Cr(∅); pin the deficit to cr itself
    masses[0] = 1.0 - cr.total();
    MassFunction::from_parts(cr.frame().clone(), masses)
}

/// Inverse of [`moebius_v`]: `Cr(A) = Σ_{∅≠B⊆A} v(B)`.
///
/// Tagged [`CapacityKind::Belief`] when every non-empty mass is
/// non-negative, [`CapacityKind::GenericMonotone`] otherwise.
pub fn zeta_from_v(m: &MassFunction) -> Capacity {
    let mut values = m.masses().to_vec();
    values[0] = 0.0;
    let kind = if values.iter().all(|&x| x >= -EPS_IDENTITY) {
        CapacityKind::Belief
    } else {
        CapacityKind::GenericMonotone
    };
    fast_transform_inplace(&mut values, Direction::Zeta);
    Capacity::from_parts(m.frame().clone(), kind, values)
}

/// Inverse of [`moebius_w`]: `Cr(A) = Σ_{B∩A≠∅} w(B)`.
pub fn zeta_from_w(m: &MassFunction) -> Capacity {
    let co = zeta_from_v(m);
    let kind = match co.kind() {
        CapacityKind::Belief => CapacityKind::Plausibility,
        k => k,
    };
    capacity::dual(&co).with_kind(kind)
}

/// The basic belief masses behind `cr`: `w` for plausibility and
/// possibility measures, `v` for every other kind.
pub fn basic_masses(cr: &Capacity) -> MassFunction {
    if cr.kind().is_upper() {
        moebius_w(cr)
    } else {
        moebius_v(cr)
    }
}
