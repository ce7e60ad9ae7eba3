//! Finite frames of discernment and subsets encoded as bit patterns.
//!
//! A [`Frame`] is the ordered list of atoms of a finite Boolean algebra; the
//! algebra itself is the full powerset. Coarser algebras are handled by
//! building a new frame whose atoms are the coarse atoms. Bit `i` of a
//! [`Subset`] is set iff atom `i` belongs to it, so subsets index dense
//! `2^n` value vectors directly and ascending bit order is the canonical
//! ordering everywhere.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on the number of atoms; `2^24` doubles is 128 MiB per vector.
pub const DEFAULT_MAX_ATOMS: usize = 24;

/// Largest limit accepted by [`Frame::with_limit`].
pub const MAX_ATOMS_CEILING: usize = 30;

/// Characters an atom name may not contain. They delimit subsets in files
/// and on the command line.
const RESERVED_CHARS: [char; 4] = ['{', '}', ',', '|'];

/// Ordered set of distinct, named atoms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    atoms: Arc<[String]>,
}

impl Frame {
    pub fn new<I, S>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(atoms, DEFAULT_MAX_ATOMS)
    }

    /// Builds a frame with a custom atom cap (at most [`MAX_ATOMS_CEILING`]).
    pub fn with_limit<I, S>(atoms: I, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let limit = limit.min(MAX_ATOMS_CEILING);
        let atoms: Vec<String> = atoms.into_iter().map(Into::into).collect();
        if atoms.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if atoms.len() > limit {
            return Err(Error::FrameTooLarge {
                atoms: atoms.len(),
                limit,
            });
        }
        for (i, name) in atoms.iter().enumerate() {
            if !is_valid_atom_name(name) {
                return Err(Error::InvalidAtomName(name.clone()));
            }
            if atoms[..i].contains(name) {
                return Err(Error::DuplicateAtom(name.clone()));
            }
        }
        Ok(Frame {
            atoms: atoms.into(),
        })
    }

    /// Frame with atoms named `w0, w1, ...`.
    pub fn anonymous(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("w{i}")))
    }

    /// Number of atoms `n`.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Number of subsets, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.len()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &str {
        &self.atoms[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn full(&self) -> Subset {
        Subset((self.size() - 1) as u32)
    }

    pub fn empty(&self) -> Subset {
        Subset::EMPTY
    }

    pub fn singleton(&self, index: usize) -> Subset {
        assert!(index < self.len(), "atom index {index} out of range");
        Subset::singleton(index)
    }

    /// Checks that `bits` fits this frame.
    pub fn subset(&self, bits: u32) -> Result<Subset> {
        if (bits as usize) < self.size() {
            Ok(Subset(bits))
        } else {
            Err(Error::SubsetOutOfRange {
                bits,
                atoms: self.len(),
            })
        }
    }

    /// Encodes a list of atom names. Duplicates are allowed; the empty list
    /// is the empty set.
    pub fn parse_subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names.into_iter().try_fold(Subset::EMPTY, |acc, name| {
            let name = name.as_ref();
            self.index_of(name)
                .map(|i| acc | Subset::singleton(i))
                .ok_or_else(|| Error::UnknownAtom(name.to_string()))
        })
    }

    pub fn complement(&self, a: Subset) -> Subset {
        Subset(!a.0 & self.full().0)
    }

    /// Atom names of `a`, in frame order.
    pub fn names(&self, a: Subset) -> Vec<&str> {
        a.atoms().map(|i| self.atom(i)).collect()
    }

    /// `{a,b}` notation; the empty set prints as `{}`.
    pub fn display(&self, a: Subset) -> String {
        format!("{{{}}}", self.names(a).join(","))
    }

    pub fn subsets(&self, filter: SubsetFilter) -> Subsets {
        Subsets::new(self, filter)
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.atoms.iter()).finish()
    }
}

pub fn is_valid_atom_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || RESERVED_CHARS.contains(&c))
}

/// A subset of a frame, as a bit pattern over atom indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn singleton(index: usize) -> Self {
        Subset(1 << index)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// Position of this subset in a dense `2^n` vector.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    /// Cardinality `|A|`.
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub const fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn with(self, atom: usize) -> Subset {
        Subset(self.0 | 1 << atom)
    }

    /// Atom indices in ascending order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#b})", self.0)
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        self.union(rhs)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        self.intersection(rhs)
    }
}

/// Raw bitwise negation; mask with [`Frame::full`] or use
/// [`Frame::complement`] for the relative complement.
impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

/// Which subsets [`Frame::subsets`] yields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetFilter {
    All,
    Containing(usize),
    SubsetsOf(Subset),
    SupersetsOf(Subset),
}

/// Iterator over subsets matching a [`SubsetFilter`], in ascending bit
/// order.
#[derive(Debug, Clone)]
pub struct Subsets {
    next: Option<u32>,
    full: u32,
    mode: Walk,
}

#[derive(Debug, Clone, Copy)]
enum Walk {
    Range,
    Under(u32),
    Over(u32),
}

impl Subsets {
    fn new(frame: &Frame, filter: SubsetFilter) -> Self {
        let full = frame.full().0;
        let (start, mode) = match filter {
            SubsetFilter::All => (0, Walk::Range),
            SubsetFilter::Containing(atom) => {
                assert!(atom < frame.len(), "atom index {atom} out of range");
                (1 << atom, Walk::Over(1 << atom))
            }
            SubsetFilter::SubsetsOf(a) => (0, Walk::Under(a.0 & full)),
            SubsetFilter::SupersetsOf(a) => {
                assert!(a.0 <= full, "subset out of range");
                (a.0, Walk::Over(a.0))
            }
        };
        Subsets {
            next: Some(start),
            full,
            mode,
        }
    }
}

impl Iterator for Subsets {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let current = self.next?;
        self.next = match self.mode {
            Walk::Range => (current < self.full).then(|| current + 1),
            // smallest submask of `mask` greater than `current`
            Walk::Under(mask) => {
                (current != mask).then(|| (current | !mask).wrapping_add(1) & mask)
            }
            // smallest superset of `base` greater than `current`
            Walk::Over(base) => (current != self.full).then(|| (current + 1) | base),
        };
        Some(Subset(current))
    }
}

/// A bijection on atom indices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    /// `mapping[i]` is the image of atom `i`.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &image in &mapping {
            if image >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {image} out of range for {n} atoms"
                )));
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {image} appears twice"
                )));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
        }
    }

    /// Swaps atoms `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(i, j);
        Permutation { mapping }
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn image(&self, atom: usize) -> usize {
        self.mapping[atom]
    }

    pub fn inverse(&self) -> Permutation {
        let mut mapping = vec![0; self.len()];
        for (i, &g) in self.mapping.iter().enumerate() {
            mapping[g] = i;
        }
        Permutation { mapping }
    }

    /// `G(A) = {G(x) : x in A}`.
    pub fn apply(&self, a: Subset) -> Subset {
        a.atoms()
            .fold(Subset::EMPTY, |acc, i| acc.with(self.mapping[i]))
    }

    /// Moves the value at index `A` of a dense subset vector to `G(A)`.
    pub fn permute_subset_values(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), 1 << self.len());
        let mut out = vec![0.0; values.len()];
        for (bits, &v) in values.iter().enumerate() {
            out[self.apply(Subset(bits as u32)).index()] = v;
        }
        out
    }

    /// Moves the value of atom `i` to atom `G(i)`.
    pub fn permute_atom_values(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.len());
        let mut out = vec![0.0; values.len()];
        for (i, &v) in values.iter().enumerate() {
            out[self.mapping[i]] = v;
        }
        out
    }
}
