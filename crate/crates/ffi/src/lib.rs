//! C ABI over `tbm-core`.
//!
//! Objects cross the boundary as opaque handles (`TbmFrame`, `TbmMass`,
//! `TbmCapacity`) that the caller releases with the matching `*_free`
//! function. Every fallible function returns a [`TbmStatus`]; on failure,
//! [`tbm_last_error`] describes what went wrong on the calling thread.
//! Set-indexed arrays have `2^n` entries where the bits of the index name
//! the atoms of the subset (bit `i` is atom `i`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tbm_core::calculus::{self, ConditioningEvent, ConditioningMode};
use tbm_core::capacity::{self, Strictness};
use tbm_core::decision::{self, DecisionProblem};
use tbm_core::{moebius, pignistic};
use tbm_core::{Capacity, CapacityKind, Error, Frame, MassFunction, Route};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbmStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was malformed: bad length, unknown atom, non-finite value.
    InvalidArgument = 2,
    /// The values violate the axioms of the requested representation.
    InvalidCapacity = 3,
    /// Total conflict, or conditioning on an event of probability zero.
    Impossible = 4,
    /// The output buffer is shorter than the result.
    BufferTooSmall = 5,
    /// A panic was caught at the boundary. This is a bug.
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbmCapacityKind {
    Belief = 0,
    Plausibility = 1,
    Probability = 2,
    Possibility = 3,
    Necessity = 4,
    GenericMonotone = 5,
}

impl From<TbmCapacityKind> for CapacityKind {
    fn from(k: TbmCapacityKind) -> Self {
        match k {
            TbmCapacityKind::Belief => CapacityKind::Belief,
            TbmCapacityKind::Plausibility => CapacityKind::Plausibility,
            TbmCapacityKind::Probability => CapacityKind::Probability,
            TbmCapacityKind::Possibility => CapacityKind::PossibilityMeasure,
            TbmCapacityKind::Necessity => CapacityKind::Necessity,
            TbmCapacityKind::GenericMonotone => CapacityKind::GenericMonotone,
        }
    }
}

impl From<CapacityKind> for TbmCapacityKind {
    fn from(k: CapacityKind) -> Self {
        match k {
            CapacityKind::Belief => TbmCapacityKind::Belief,
            CapacityKind::Plausibility => TbmCapacityKind::Plausibility,
            CapacityKind::Probability => TbmCapacityKind::Probability,
            CapacityKind::PossibilityMeasure => TbmCapacityKind::Possibility,
            CapacityKind::Necessity => TbmCapacityKind::Necessity,
            CapacityKind::GenericMonotone => TbmCapacityKind::GenericMonotone,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbmRoute {
    Auto = 0,
    MassV = 1,
    MassW = 2,
    ClosedForm = 3,
}

impl From<TbmRoute> for Route {
    fn from(r: TbmRoute) -> Self {
        match r {
            TbmRoute::Auto => Route::Auto,
            TbmRoute::MassV => Route::MassV,
            TbmRoute::MassW => Route::MassW,
            TbmRoute::ClosedForm => Route::ClosedForm,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbmConditioningMode {
    /// Mass of focal sets disjoint from the event stays on the empty set.
    Open = 0,
    /// The result is renormalized over non-empty sets.
    Normalized = 1,
}

impl From<TbmConditioningMode> for ConditioningMode {
    fn from(m: TbmConditioningMode) -> Self {
        match m {
            TbmConditioningMode::Open => ConditioningMode::TransferOpen,
            TbmConditioningMode::Normalized => ConditioningMode::TransferNormalized,
        }
    }
}

pub struct TbmFrame(Frame);
pub struct TbmMass(MassFunction);
pub struct TbmCapacity(Capacity);

struct Failure {
    status: TbmStatus,
    message: String,
}

impl Failure {
    fn new(status: TbmStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_impossibility() {
            TbmStatus::Impossible
        } else {
            TbmStatus::InvalidArgument
        };
        Failure::new(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn guard(body: impl FnOnce() -> Outcome) -> TbmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TbmStatus::Ok,
        Ok(Err(f)) => {
            set_last_error(&f.message);
            f.status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("internal error: {message}"));
            TbmStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::new(TbmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn input<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn output<'a>(p: *mut f64, len: usize, needed: usize) -> Result<&'a mut [f64], Failure> {
    if len < needed {
        return Err(Failure::new(
            TbmStatus::BufferTooSmall,
            format!("output buffer holds {len} values, {needed} needed"),
        ));
    }
    if p.is_null() && needed > 0 {
        return Err(null("output buffer"));
    }
    if needed == 0 {
        return Ok(&mut []);
    }
    Ok(std::slice::from_raw_parts_mut(p, needed))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return Err(null("output handle"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn free<T>(p: *mut T) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

fn copy_out(values: &[f64], out: &mut [f64]) {
    out.copy_from_slice(values);
}

/// Message for the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tbm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    })
}

/// Creates a frame from `n` NUL-terminated UTF-8 atom names.
///
/// # Safety
/// `names` must point to `n` valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_frame_new(
    names: *const *const c_char,
    n: usize,
    out: *mut *mut TbmFrame,
) -> TbmStatus {
    guard(|| {
        if names.is_null() && n > 0 {
            return Err(null("names"));
        }
        let mut atoms = Vec::with_capacity(n);
        for i in 0..n {
            let name = *names.add(i);
            if name.is_null() {
                return Err(null("atom name"));
            }
            let name = CStr::from_ptr(name).to_str().map_err(|_| {
                Failure::new(TbmStatus::InvalidArgument, format!("atom {i} is not UTF-8"))
            })?;
            atoms.push(name.to_owned());
        }
        store(out, TbmFrame(Frame::new(atoms)?))
    })
}

/// Creates a frame with atoms `w0 .. w{n-1}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_frame_anonymous(n: usize, out: *mut *mut TbmFrame) -> TbmStatus {
    guard(|| store(out, TbmFrame(Frame::anonymous(n)?)))
}

/// Number of atoms, or 0 for a null handle.
///
/// # Safety
/// `frame` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tbm_frame_len(frame: *const TbmFrame) -> usize {
    frame.as_ref().map_or(0, |f| f.0.len())
}

/// Bitmask of the subset with the given atom names.
///
/// # Safety
/// `frame` must be a live handle, `names` must point to `n` valid C
/// strings, `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_frame_subset(
    frame: *const TbmFrame,
    names: *const *const c_char,
    n: usize,
    out: *mut u32,
) -> TbmStatus {
    guard(|| {
        let frame = handle(frame, "frame")?;
        if out.is_null() {
            return Err(null("out"));
        }
        if names.is_null() && n > 0 {
            return Err(null("names"));
        }
        let mut parts = Vec::with_capacity(n);
        for i in 0..n {
            let name = *names.add(i);
            if name.is_null() {
                return Err(null("atom name"));
            }
            parts.push(CStr::from_ptr(name).to_string_lossy().into_owned());
        }
        *out = frame.0.parse_subset(&parts)?.bits();
        Ok(())
    })
}

/// # Safety
/// `frame` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tbm_frame_free(frame: *mut TbmFrame) {
    free(frame)
}

/// Creates basic belief masses from `2^n` values summing to one.
/// Negative values are accepted (they arise as Möbius transforms of
/// non-belief capacities).
///
/// # Safety
/// `frame` must be a live handle, `masses` must hold `len` values, `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_mass_new(
    frame: *const TbmFrame,
    masses: *const f64,
    len: usize,
    out: *mut *mut TbmMass,
) -> TbmStatus {
    guard(|| {
        let frame = handle(frame, "frame")?;
        let masses = input(masses, len, "masses")?;
        let m = MassFunction::new(frame.0.clone(), masses.to_vec())?;
        store(out, TbmMass(m))
    })
}

/// Copies the `2^n` masses into `out`.
///
/// # Safety
/// `mass` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn tbm_mass_values(
    mass: *const TbmMass,
    out: *mut f64,
    len: usize,
) -> TbmStatus {
    guard(|| {
        let m = handle(mass, "mass")?;
        copy_out(m.0.masses(), output(out, len, m.0.masses().len())?);
        Ok(())
    })
}

/// # Safety
/// `mass` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tbm_mass_free(mass: *mut TbmMass) {
    free(mass)
}

/// Creates a capacity from `2^n` values, checked against the structural
/// axioms (range, empty set, monotonicity).
///
/// # Safety
/// `frame` must be a live handle, `values` must hold `len` values, `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_new(
    frame: *const TbmFrame,
    kind: TbmCapacityKind,
    values: *const f64,
    len: usize,
    out: *mut *mut TbmCapacity,
) -> TbmStatus {
    guard(|| {
        let frame = handle(frame, "frame")?;
        let values = input(values, len, "values")?;
        let cr = Capacity::new(frame.0.clone(), kind.into(), values.to_vec())?;
        let report = capacity::validate(&cr, Strictness::Structural);
        if !report.is_valid() {
            return Err(Failure::new(
                TbmStatus::InvalidCapacity,
                report.render(cr.frame()).join("; "),
            ));
        }
        store(out, TbmCapacity(cr))
    })
}

/// Belief function of non-negative masses.
///
/// # Safety
/// `mass` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_from_mass(
    mass: *const TbmMass,
    out: *mut *mut TbmCapacity,
) -> TbmStatus {
    guard(|| {
        let m = handle(mass, "mass")?;
        store(out, TbmCapacity(capacity::from_mass(&m.0)?))
    })
}

/// Plausibility function of non-negative masses.
///
/// # Safety
/// `mass` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_plausibility(
    mass: *const TbmMass,
    out: *mut *mut TbmCapacity,
) -> TbmStatus {
    guard(|| {
        let m = handle(mass, "mass")?;
        store(out, TbmCapacity(capacity::plausibility_from_mass(&m.0)?))
    })
}

/// `CoCr(A) = Cr(Ω) − Cr(complement of A)`.
///
/// # Safety
/// `cr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_dual(
    cr: *const TbmCapacity,
    out: *mut *mut TbmCapacity,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        store(out, TbmCapacity(capacity::dual(&cr.0)))
    })
}

/// Copies the `2^n` values into `out`.
///
/// # Safety
/// `cr` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_values(
    cr: *const TbmCapacity,
    out: *mut f64,
    len: usize,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        copy_out(cr.0.values(), output(out, len, cr.0.values().len())?);
        Ok(())
    })
}

/// Kind tag of a capacity.
///
/// # Safety
/// `cr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_kind(
    cr: *const TbmCapacity,
    out: *mut TbmCapacityKind,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = cr.0.kind().into();
        Ok(())
    })
}

/// Number of atoms of the capacity's frame, or 0 for a null handle.
///
/// # Safety
/// `cr` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_len(cr: *const TbmCapacity) -> usize {
    cr.as_ref().map_or(0, |c| c.0.frame().len())
}

/// # Safety
/// `cr` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tbm_capacity_free(cr: *mut TbmCapacity) {
    free(cr)
}

/// Möbius transform `v` of the capacity.
///
/// # Safety
/// `cr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_moebius_v(
    cr: *const TbmCapacity,
    out: *mut *mut TbmMass,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        store(out, TbmMass(moebius::moebius_v(&cr.0)))
    })
}

/// Möbius transform `w` of the dual capacity.
///
/// # Safety
/// `cr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_moebius_w(
    cr: *const TbmCapacity,
    out: *mut *mut TbmMass,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        store(out, TbmMass(moebius::moebius_w(&cr.0)))
    })
}

/// Pignistic probability of each atom, written to `out[0..n]`.
///
/// # Safety
/// `cr` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn tbm_pignistic(
    cr: *const TbmCapacity,
    route: TbmRoute,
    normalize: bool,
    out: *mut f64,
    len: usize,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        let p = pignistic::gamma(&cr.0, route.into(), normalize)?;
        copy_out(
            p.probabilities(),
            output(out, len, p.probabilities().len())?,
        );
        Ok(())
    })
}

/// Pignistic probability straight from masses: each mass split equally
/// among the atoms of its set.
///
/// # Safety
/// `mass` must be a live handle and `out` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn tbm_pignistic_from_mass(
    mass: *const TbmMass,
    normalize: bool,
    out: *mut f64,
    len: usize,
) -> TbmStatus {
    guard(|| {
        let m = handle(mass, "mass")?;
        let p = pignistic::transform_from_masses(&m.0, normalize)?;
        copy_out(
            p.probabilities(),
            output(out, len, p.probabilities().len())?,
        );
        Ok(())
    })
}

/// Transfers each mass to its intersection with `event` (a bitmask).
///
/// # Safety
/// `mass` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_condition(
    mass: *const TbmMass,
    event: u32,
    mode: TbmConditioningMode,
    out: *mut *mut TbmMass,
) -> TbmStatus {
    guard(|| {
        let m = handle(mass, "mass")?;
        let event = m.0.frame().subset(event)?;
        let ev = ConditioningEvent::new(event, mode.into())?;
        store(out, TbmMass(calculus::condition(&m.0, &ev)?))
    })
}

/// `alpha·cr1 + (1 − alpha)·cr2` on a frame of joined atom names.
///
/// # Safety
/// `cr1`, `cr2` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_alpha_combine(
    cr1: *const TbmCapacity,
    cr2: *const TbmCapacity,
    alpha: f64,
    out: *mut *mut TbmCapacity,
) -> TbmStatus {
    guard(|| {
        let a = handle(cr1, "cr1")?;
        let b = handle(cr2, "cr2")?;
        store(
            out,
            TbmCapacity(calculus::alpha_combine(&a.0, &b.0, alpha)?),
        )
    })
}

/// Expected utility of each act under the pignistic probability.
/// `utilities` is row-major, `acts × n`. Writes `acts` values to
/// `expected` and the index of the best act (lowest index among ties)
/// to `best`.
///
/// # Safety
/// `cr` must be a live handle, `utilities` must hold `acts * n` values,
/// `expected` must hold `len` values and `best` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tbm_expected_utilities(
    cr: *const TbmCapacity,
    utilities: *const f64,
    acts: usize,
    normalize: bool,
    expected: *mut f64,
    len: usize,
    best: *mut usize,
) -> TbmStatus {
    guard(|| {
        let cr = handle(cr, "capacity")?;
        if best.is_null() {
            return Err(null("best"));
        }
        let n = cr.0.frame().len();
        let table = input(utilities, acts * n, "utilities")?;
        let out = output(expected, len, acts)?;
        let names = (0..acts).map(|i| format!("act{i}")).collect();
        let rows = table
            .chunks(n.max(1))
            .map(<[f64]>::to_vec)
            .take(acts)
            .collect();
        let problem = DecisionProblem::new(cr.0.frame().clone(), names, rows)?;
        let r = decision::decide(&cr.0, &problem, normalize)?;
        copy_out(&r.expected_utility, out);
        *best = r.best;
        Ok(())
    })
}
