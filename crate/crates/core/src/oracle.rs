//! Reference implementations for testing.
//!
//! Everything here is a literal transcription of the defining sums, with no
//! shared code with the fast kernels: subset loops are written out over the
//! full `2^n × 2^n` grid. Sizes are capped at [`ORACLE_MAX_ATOMS`] atoms.
//! The seeded generators produce the random corpora used by the property
//! and acceptance tests.

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::capacity::{Capacity, CapacityKind, MassFunction};
use crate::error::{Error, Result};
use crate::frame::{Frame, Permutation};
use crate::pignistic::PignisticResult;

pub const ORACLE_MAX_ATOMS: usize = 12;

fn check_size(frame: &Frame) -> Result<usize> {
    if frame.len() > ORACLE_MAX_ATOMS {
        Err(Error::FrameTooLarge {
            atoms: frame.len(),
            limit: ORACLE_MAX_ATOMS,
        })
    } else {
        Ok(frame.size())
    }
}

fn is_subset(b: usize, a: usize) -> bool {
    b & a == b
}

fn sign(a: usize, b: usize) -> f64 {
    if (a.count_ones() - b.count_ones()).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `v(A) = Σ_{B⊆A} (−1)^{|A|−|B|} Cr(B)`, `v(∅) = 1 − Cr(1_Ω)`.
pub fn naive_moebius(cr: &Capacity) -> Result<MassFunction> {
    let size = check_size(cr.frame())?;
    let values = cr.values();
    let mut v = vec![0.0; size];
    for (a, out) in v.iter_mut().enumerate().skip(1) {
        for (b, &x) in values.iter().enumerate() {
            if is_subset(b, a) {
                *out += sign(a, b) * x;
            }
        }
    }
    v[0] = 1.0 - values[size - 1];
    Ok(MassFunction::from_parts(cr.frame().clone(), v))
}

/// `w(A) = Σ_{B⊆A} (−1)^{|A|−|B|} (Cr(1_Ω) − Cr(B̄))`, `w(∅) = 1 − Cr(1_Ω)`.
pub fn naive_moebius_w(cr: &Capacity) -> Result<MassFunction> {
    let size = check_size(cr.frame())?;
    let values = cr.values();
    let total = values[size - 1];
    let mut w = vec![0.0; size];
    for (a, out) in w.iter_mut().enumerate().skip(1) {
        for b in 0..size {
            if is_subset(b, a) {
                let complement = (size - 1) ^ b;
                *out += sign(a, b) * (total - values[complement]);
            }
        }
    }
    w[0] = 1.0 - total;
    Ok(MassFunction::from_parts(cr.frame().clone(), w))
}

/// `Cr(A) = Σ_{∅≠B⊆A} v(B)`.
pub fn naive_zeta(m: &MassFunction) -> Result<Vec<f64>> {
    let size = check_size(m.frame())?;
    let masses = m.masses();
    Ok((0..size)
        .map(|a| {
            (1..size)
                .filter(|&b| is_subset(b, a))
                .map(|b| masses[b])
                .sum()
        })
        .collect())
}

/// `pl(A) = Σ_{B∩A≠∅} m(B)`.
pub fn naive_plausibility(m: &MassFunction) -> Result<Vec<f64>> {
    let size = check_size(m.frame())?;
    let masses = m.masses();
    Ok((0..size)
        .map(|a| (0..size).filter(|&b| b & a != 0).map(|b| masses[b]).sum())
        .collect())
}

/// `P({ω}) = Σ_{B≠∅} m(B)·|{ω}∩B|/|B|`, unnormalized.
pub fn naive_pignistic(m: &MassFunction) -> Result<PignisticResult> {
    let size = check_size(m.frame())?;
    let n = m.frame().len();
    let masses = m.masses();
    let prob = (0..n)
        .map(|atom| {
            let omega = 1usize << atom;
            (1..size)
                .map(|b| {
                    let overlap = (omega & b).count_ones() as f64;
                    masses[b] * overlap / b.count_ones() as f64
                })
                .sum()
        })
        .collect();
    PignisticResult::new(m.frame().clone(), prob, false)
}

/// `m_A(B) = Σ_{C : C∩A=B} m(C)` for `B ⊆ A`; open-world form.
pub fn naive_condition(m: &MassFunction, event: usize) -> Result<MassFunction> {
    let size = check_size(m.frame())?;
    let masses = m.masses();
    let out = (0..size)
        .map(|b| {
            if !is_subset(b, event) {
                return 0.0;
            }
            (0..size)
                .filter(|&c| c & event == b)
                .map(|c| masses[c])
                .sum()
        })
        .collect();
    Ok(MassFunction::from_parts(m.frame().clone(), out))
}

/// Families produced by [`random_instances`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Non-negative masses on random focal sets; a quarter of the instances
    /// put some mass on the empty set.
    Belief,
    /// Atom probabilities, some of them zero.
    Probability,
    /// Possibility measures of random normalized distributions.
    Possibility,
    /// Lattice-maximum of uniform draws, pinned to 0 at `∅` and 1 at `1_Ω`.
    MonotoneCapacity,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Belief,
        Family::Probability,
        Family::Possibility,
        Family::MonotoneCapacity,
    ];

    fn salt(self) -> u64 {
        match self {
            Family::Belief => 0x9e37_79b9,
            Family::Probability => 0x85eb_ca6b,
            Family::Possibility => 0xc2b2_ae35,
            Family::MonotoneCapacity => 0x27d4_eb2f,
        }
    }
}

/// Seeded RNG shared by the generators.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic corpus: the same arguments always give the same
/// capacities.
pub fn random_instances(
    seed: u64,
    n: usize,
    count: usize,
    family: Family,
) -> Result<Vec<Capacity>> {
    let frame = Frame::anonymous(n)?;
    check_size(&frame)?;
    let mut rng = rng(seed ^ family.salt() ^ (n as u64) << 32);
    Ok((0..count)
        .map(|_| random_capacity(&mut rng, &frame, family))
        .collect())
}

pub fn random_capacity(rng: &mut ChaCha8Rng, frame: &Frame, family: Family) -> Capacity {
    match family {
        Family::Belief => {
            let open_world = rng.random_bool(0.25);
            let m = random_mass(rng, frame, open_world);
            let values = naive_zeta(&m).expect("frame size checked");
            Capacity::from_parts(frame.clone(), CapacityKind::Belief, values)
        }
        Family::Probability => {
            let p = random_probability(rng, frame.len());
            let values = (0..frame.size())
                .map(|a| {
                    (0..frame.len())
                        .filter(|i| a >> i & 1 == 1)
                        .map(|i| p[i])
                        .sum()
                })
                .collect();
            Capacity::from_parts(frame.clone(), CapacityKind::Probability, values)
        }
        Family::Possibility => {
            let pi = random_possibility(rng, frame.len());
            let values = (0..frame.size())
                .map(|a| {
                    (0..frame.len())
                        .filter(|i| a >> i & 1 == 1)
                        .map(|i| pi[i])
                        .fold(0.0, f64::max)
                })
                .collect();
            Capacity::from_parts(frame.clone(), CapacityKind::PossibilityMeasure, values)
        }
        Family::MonotoneCapacity => {
            let size = frame.size();
            let draws: Vec<f64> = (0..size).map(|_| rng.random::<f64>()).collect();
            let mut values: Vec<f64> = (0..size)
                .map(|a| {
                    (0..size)
                        .filter(|&b| is_subset(b, a))
                        .map(|b| draws[b])
                        .fold(0.0, f64::max)
                })
                .collect();
            values[0] = 0.0;
            values[size - 1] = 1.0;
            Capacity::from_parts(frame.clone(), CapacityKind::GenericMonotone, values)
        }
    }
}

/// Non-negative masses on `1..=2n+2` random non-empty focal sets; with
/// `open_world`, up to 0.3 of the mass goes to the empty set.
pub fn random_mass(rng: &mut ChaCha8Rng, frame: &Frame, open_world: bool) -> MassFunction {
    let size = frame.size();
    let focal = rng.random_range(1..=(2 * frame.len() + 2).min(size - 1));
    let mut masses = vec![0.0; size];
    let mut total = 0.0;
    for _ in 0..focal {
        let x: f64 = rng.random_range(0.01..1.0);
        masses[rng.random_range(1..size)] += x;
        total += x;
    }
    let conflict = if open_world {
        rng.random_range(0.0..0.3)
    } else {
        0.0
    };
    let scale = (1.0 - conflict) / total;
    masses.iter_mut().for_each(|m| *m *= scale);
    masses[0] = conflict;
    MassFunction::from_parts(frame.clone(), masses)
}

/// Atom probabilities summing to one, each atom zeroed with chance 0.2.
pub fn random_probability(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..n)
        .map(|_| {
            if n > 1 && rng.random_bool(0.2) {
                0.0
            } else {
                rng.random_range(0.01..1.0)
            }
        })
        .collect();
    if p.iter().all(|&x| x == 0.0) {
        p[rng.random_range(0..n)] = 1.0;
    }
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    p
}

/// Normalized possibility distribution; some draws are quantized to
/// quarter levels so that ties and zero atoms occur.
pub fn random_possibility(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let quantize = rng.random_bool(0.3);
    let mut pi: Vec<f64> = (0..n)
        .map(|_| {
            let x: f64 = rng.random();
            if quantize {
                (x * 4.0).floor() / 4.0
            } else {
                x
            }
        })
        .collect();
    pi[rng.random_range(0..n)] = 1.0;
    pi
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut mapping: Vec<usize> = (0..n).collect();
    mapping.shuffle(rng);
    Permutation::new(mapping).expect("shuffle is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{validate, Strictness};

    #[test]
    fn single_atom_moebius() {
        let f = Frame::new(["a"]).unwrap();
        let cr = Capacity::new(f.clone(), CapacityKind::Belief, vec![0.0, 0.8]).unwrap();
        let f_full = || f.full();
        let v = naive_moebius(&cr).unwrap();
        assert_eq!(v.mass(f_full()), 0.8);
        assert!((v.conflict() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn additive_capacity_has_no_interactions() {
        for cr in random_instances(3, 5, 20, Family::Probability).unwrap() {
            let v = naive_moebius(&cr).unwrap();
            for (a, &x) in v.masses().iter().enumerate().skip(1) {
                if a.count_ones() > 1 {
                    assert!(x.abs() < 1e-12);
                } else {
                    assert_eq!(x, cr.values()[a]);
                }
            }
        }
    }

    #[test]
    fn too_large() {
        let f = Frame::anonymous(13).unwrap();
        let m = MassFunction::vacuous(f);
        assert!(matches!(
            naive_pignistic(&m),
            Err(Error::FrameTooLarge {
                atoms: 13,
                limit: 12
            })
        ));
        assert!(random_instances(1, 13, 1, Family::Belief).is_err());
    }

    #[test]
    fn seeded_corpora_repeat() {
        for family in Family::ALL {
            let a = random_instances(42, 4, 10, family).unwrap();
            let b = random_instances(42, 4, 10, family).unwrap();
            assert_eq!(a, b);
            let c = random_instances(43, 4, 10, family).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn generators_are_sound() {
        for n in 1..=6 {
            for family in Family::ALL {
                for cr in random_instances(7, n, 50, family).unwrap() {
                    let report = validate(&cr, Strictness::Kind);
                    assert!(
                        report.is_valid(),
                        "{family:?} n={n}: {:?}",
                        report.violations
                    );
                }
            }
        }
    }

    #[test]
    fn naive_pignistic_of_example() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        let m = MassFunction::from_focal(
            f.clone(),
            [
                (f.parse_subset(["a"]).unwrap(), 0.4),
                (f.parse_subset(["a", "b"]).unwrap(), 0.3),
                (f.full(), 0.3),
            ],
        )
        .unwrap();
        let p = naive_pignistic(&m).unwrap();
        let expected = [0.65, 0.25, 0.10];
        for (x, y) in p.probabilities().iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}
