//! C ABI for `hydrogen-kr`.
//!
//! Conventions:
//!
//! - Every fallible function returns an [`HkrStatus`] and writes its result
//!   through an out-pointer. On failure the out-pointer is left untouched and
//!   a description is available from [`hkr_last_error_message`] on the same
//!   thread.
//! - Grids and tabulated states live behind opaque handles created by
//!   `*_new` functions and released with the matching `*_free`. Passing NULL
//!   to `*_free` is a no-op.
//! - Panics never cross the boundary; they surface as `HKR_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use hydrogen_kr::export::{self, ExportFormat, ExportOptions};
use hydrogen_kr::extrema::find_extrema;
use hydrogen_kr::hydrogen::{psi_momentum, psi_position, radial_momentum, radial_position};
use hydrogen_kr::kr::{kr_1d, kr_hydrogen, wigner_1d, TabulatedWavefunction1D};
use hydrogen_kr::slice::{sample_slice, Quantity, SliceAngles, SliceResult, SliceSpec, SliceValues};
use hydrogen_kr::{ComplexValue, Error, NormalizationConvention, NuclearCharge, PhasePoint, QuantumNumbers, SphericalCoord};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfDomain = 3,
    Unsupported = 4,
    Io = 5,
    Parse = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkrConvention {
    /// Unit marginals.
    MarginalExact = 0,
    /// Constants of the published figures (an extra `(2π)^{-3/2}`).
    PaperFigure = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkrQuantity {
    Re = 0,
    Im = 1,
    Abs = 2,
    Abs2 = 3,
    Complex = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HkrFormat {
    Csv = 0,
    Json = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkrComplex {
    pub re: f64,
    pub im: f64,
}

/// Bound state `(n, l, m)` in the field of nuclear charge `z`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkrState {
    pub n: i32,
    pub l: i32,
    pub m: i32,
    pub z: f64,
}

/// Phase-space point in spherical coordinates.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkrPhasePoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub p: f64,
    pub theta_p: f64,
    pub phi_p: f64,
}

/// Cross-section of K at fixed angles over an `(r, p)` rectangle.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HkrSliceSpec {
    pub state: HkrState,
    pub theta: f64,
    pub phi: f64,
    pub theta_p: f64,
    pub phi_p: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub n_r: usize,
    pub n_p: usize,
    pub quantity: HkrQuantity,
    pub convention: HkrConvention,
    /// Nonzero to multiply values by `(2π)³`.
    pub paper_scale: i32,
}

/// Sampled slice (opaque).
pub struct HkrSlice {
    inner: SliceResult,
}

/// Uniformly tabulated 1-D wavefunction (opaque).
pub struct HkrTabulated1D {
    inner: TabulatedWavefunction1D,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> HkrStatus {
    match err {
        Error::InvalidQuantumNumbers { .. } | Error::InvalidArgument(_) | Error::Tabulation(_) => {
            HkrStatus::InvalidArgument
        }
        Error::OutOfDomain { .. } => HkrStatus::OutOfDomain,
        Error::Unsupported(_) => HkrStatus::Unsupported,
        Error::Io { .. } => HkrStatus::Io,
        Error::Parse { .. } | Error::Json(_) => HkrStatus::Parse,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `body`, translating errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> HkrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HkrStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed for '{what}'"));
            HkrStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            HkrStatus::Panic
        }
    }
}

fn out<'a, T>(ptr: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    // SAFETY: the caller guarantees a valid, aligned, writable pointer or NULL.
    unsafe { ptr.as_mut() }.ok_or(Failure::Null(what))
}

fn input<'a, T>(ptr: *const T, what: &'static str) -> Result<&'a T, Failure> {
    // SAFETY: the caller guarantees a valid, aligned pointer or NULL.
    unsafe { ptr.as_ref() }.ok_or(Failure::Null(what))
}

fn path_arg(ptr: *const c_char, what: &'static str) -> Result<PathBuf, Failure> {
    if ptr.is_null() {
        return Err(Failure::Null(what));
    }
    // SAFETY: non-null and NUL-terminated per the API contract.
    let s = unsafe { CStr::from_ptr(ptr) };
    let s = s
        .to_str()
        .map_err(|_| Error::invalid(format!("{what} is not valid UTF-8")))?;
    Ok(PathBuf::from(s))
}

fn state_of(s: &HkrState) -> Result<(QuantumNumbers, NuclearCharge), Error> {
    Ok((
        QuantumNumbers::new(s.n.into(), s.l.into(), s.m.into())?,
        NuclearCharge::new(s.z)?,
    ))
}

fn convention_of(c: HkrConvention) -> NormalizationConvention {
    match c {
        HkrConvention::MarginalExact => NormalizationConvention::MarginalExact,
        HkrConvention::PaperFigure => NormalizationConvention::PaperFigure,
    }
}

fn quantity_of(q: HkrQuantity) -> Quantity {
    match q {
        HkrQuantity::Re => Quantity::Re,
        HkrQuantity::Im => Quantity::Im,
        HkrQuantity::Abs => Quantity::Abs,
        HkrQuantity::Abs2 => Quantity::Abs2,
        HkrQuantity::Complex => Quantity::Complex,
    }
}

fn complex(z: ComplexValue) -> HkrComplex {
    HkrComplex { re: z.re, im: z.im }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hkr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the most recent failure on this thread, or NULL if
/// none. Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hkr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// `R_nl(r)`.
#[no_mangle]
pub extern "C" fn hkr_radial_position(state: HkrState, r: f64, out_value: *mut f64) -> HkrStatus {
    guard(|| {
        let (qn, z) = state_of(&state)?;
        if !(r.is_finite() && r >= 0.0) {
            return Err(Error::invalid(format!("radius must be finite and >= 0, got {r}")).into());
        }
        *out(out_value, "out_value")? = radial_position(&qn, z, r);
        Ok(())
    })
}

/// `F_nl(p)`.
#[no_mangle]
pub extern "C" fn hkr_radial_momentum(state: HkrState, p: f64, out_value: *mut f64) -> HkrStatus {
    guard(|| {
        let (qn, z) = state_of(&state)?;
        if !(p.is_finite() && p >= 0.0) {
            return Err(Error::invalid(format!("momentum must be finite and >= 0, got {p}")).into());
        }
        *out(out_value, "out_value")? = radial_momentum(&qn, z, p);
        Ok(())
    })
}

/// `ψ(r, θ, φ)`.
#[no_mangle]
pub extern "C" fn hkr_psi_position(
    state: HkrState,
    r: f64,
    theta: f64,
    phi: f64,
    out_value: *mut HkrComplex,
) -> HkrStatus {
    guard(|| {
        let (qn, z) = state_of(&state)?;
        let x = SphericalCoord::new(r, theta, phi)?;
        *out(out_value, "out_value")? = complex(psi_position(&qn, z, &x));
        Ok(())
    })
}

/// `ψ̃(p, θ', φ')`, including the `(-i)^l` phase.
#[no_mangle]
pub extern "C" fn hkr_psi_momentum(
    state: HkrState,
    p: f64,
    theta_p: f64,
    phi_p: f64,
    out_value: *mut HkrComplex,
) -> HkrStatus {
    guard(|| {
        let (qn, z) = state_of(&state)?;
        let k = SphericalCoord::new(p, theta_p, phi_p)?;
        *out(out_value, "out_value")? = complex(psi_momentum(&qn, z, &k));
        Ok(())
    })
}

/// K-R distribution at one phase-space point.
#[no_mangle]
pub extern "C" fn hkr_kr_hydrogen(
    state: HkrState,
    point: *const HkrPhasePoint,
    convention: HkrConvention,
    out_value: *mut HkrComplex,
) -> HkrStatus {
    guard(|| {
        let (qn, z) = state_of(&state)?;
        let pt = input(point, "point")?;
        let pt = PhasePoint::new(pt.r, pt.theta, pt.phi, pt.p, pt.theta_p, pt.phi_p)?;
        *out(out_value, "out_value")? = complex(kr_hydrogen(&qn, z, &pt, convention_of(convention)));
        Ok(())
    })
}

/// Fills `out_spec` with the default slice for `state`: equatorial angles,
/// `r ∈ [0, 5n²/Z]`, `p ∈ [0, 4Z/n]`, 256 × 256, `|K|`, unit marginals.
#[no_mangle]
pub extern "C" fn hkr_slice_spec_default(state: HkrState, out_spec: *mut HkrSliceSpec) -> HkrStatus {
    guard(|| {
        let (qn, z) = state_of(&state)?;
        let s = SliceSpec::for_state(qn, z);
        *out(out_spec, "out_spec")? = HkrSliceSpec {
            state,
            theta: s.angles.theta,
            phi: s.angles.phi,
            theta_p: s.angles.theta_p,
            phi_p: s.angles.phi_p,
            r_min: s.r_range.0,
            r_max: s.r_range.1,
            p_min: s.p_range.0,
            p_max: s.p_range.1,
            n_r: s.resolution.0,
            n_p: s.resolution.1,
            quantity: HkrQuantity::Abs,
            convention: HkrConvention::MarginalExact,
            paper_scale: 0,
        };
        Ok(())
    })
}

/// Samples a slice. Release the handle with [`hkr_slice_free`].
#[no_mangle]
pub extern "C" fn hkr_slice_new(spec: *const HkrSliceSpec, out_slice: *mut *mut HkrSlice) -> HkrStatus {
    guard(|| {
        let s = input(spec, "spec")?;
        let out_slice = out(out_slice, "out_slice")?;
        let (qn, z) = state_of(&s.state)?;
        let rust_spec = SliceSpec {
            qn,
            z,
            angles: SliceAngles {
                theta: s.theta,
                phi: s.phi,
                theta_p: s.theta_p,
                phi_p: s.phi_p,
            },
            r_range: (s.r_min, s.r_max),
            p_range: (s.p_min, s.p_max),
            resolution: (s.n_r, s.n_p),
            quantity: quantity_of(s.quantity),
            convention: convention_of(s.convention),
            paper_scale: s.paper_scale != 0,
        };
        let inner = sample_slice(&rust_spec)?;
        *out_slice = Box::into_raw(Box::new(HkrSlice { inner }));
        Ok(())
    })
}

/// Releases a slice handle.
#[no_mangle]
pub extern "C" fn hkr_slice_free(slice: *mut HkrSlice) {
    if !slice.is_null() {
        // SAFETY: produced by `hkr_slice_new` and not freed before.
        drop(unsafe { Box::from_raw(slice) });
    }
}

/// Grid dimensions `(n_r, n_p)`.
#[no_mangle]
pub extern "C" fn hkr_slice_dims(slice: *const HkrSlice, out_n_r: *mut usize, out_n_p: *mut usize) -> HkrStatus {
    guard(|| {
        let s = &input(slice, "slice")?.inner;
        let (nr, np) = (out(out_n_r, "out_n_r")?, out(out_n_p, "out_n_p")?);
        *nr = s.n_r();
        *np = s.n_p();
        Ok(())
    })
}

/// Number of warnings attached to the slice (e.g. a vanishing harmonic).
#[no_mangle]
pub extern "C" fn hkr_slice_warning_count(slice: *const HkrSlice, out_count: *mut usize) -> HkrStatus {
    guard(|| {
        *out(out_count, "out_count")? = input(slice, "slice")?.inner.warnings.len();
        Ok(())
    })
}

/// Grid value at `(i_r, i_p)`. Real quantities report `im = 0`.
#[no_mangle]
pub extern "C" fn hkr_slice_value(
    slice: *const HkrSlice,
    i_r: usize,
    i_p: usize,
    out_value: *mut HkrComplex,
) -> HkrStatus {
    guard(|| {
        let s = &input(slice, "slice")?.inner;
        if i_r >= s.n_r() || i_p >= s.n_p() {
            return Err(Error::invalid(format!(
                "index ({i_r}, {i_p}) outside {}x{} grid",
                s.n_r(),
                s.n_p()
            ))
            .into());
        }
        let k = i_r * s.n_p() + i_p;
        let v = match &s.values {
            SliceValues::Real(v) => HkrComplex { re: v[k], im: 0.0 },
            SliceValues::Complex(v) => complex(v[k]),
        };
        *out(out_value, "out_value")? = v;
        Ok(())
    })
}

/// Copies the axes into caller buffers of at least `n_r` and `n_p` doubles.
#[no_mangle]
pub extern "C" fn hkr_slice_axes(
    slice: *const HkrSlice,
    r_axis: *mut f64,
    r_len: usize,
    p_axis: *mut f64,
    p_len: usize,
) -> HkrStatus {
    guard(|| {
        let s = &input(slice, "slice")?.inner;
        if r_axis.is_null() {
            return Err(Failure::Null("r_axis"));
        }
        if p_axis.is_null() {
            return Err(Failure::Null("p_axis"));
        }
        if r_len < s.n_r() || p_len < s.n_p() {
            return Err(Error::invalid("axis buffers too small").into());
        }
        // SAFETY: non-null, and the caller guarantees the stated lengths.
        let (r, p) = unsafe {
            (
                std::slice::from_raw_parts_mut(r_axis, r_len),
                std::slice::from_raw_parts_mut(p_axis, p_len),
            )
        };
        r[..s.n_r()].copy_from_slice(&s.r_axis);
        p[..s.n_p()].copy_from_slice(&s.p_axis);
        Ok(())
    })
}

/// Number of local maxima of `|K|` (slice quantity must be `abs` or `abs2`).
#[no_mangle]
pub extern "C" fn hkr_slice_count_maxima(slice: *const HkrSlice, out_count: *mut usize) -> HkrStatus {
    guard(|| {
        let found = find_extrema(&input(slice, "slice")?.inner)?;
        *out(out_count, "out_count")? = found.len();
        Ok(())
    })
}

/// Writes the slice as CSV or JSON; `reproducible != 0` omits the timestamp.
#[no_mangle]
pub extern "C" fn hkr_slice_write(
    slice: *const HkrSlice,
    path: *const c_char,
    format: HkrFormat,
    reproducible: i32,
) -> HkrStatus {
    guard(|| {
        let s = &input(slice, "slice")?.inner;
        let path = path_arg(path, "path")?;
        let format = match format {
            HkrFormat::Csv => ExportFormat::Csv,
            HkrFormat::Json => ExportFormat::Json,
        };
        let options = ExportOptions {
            reproducible: reproducible != 0,
        };
        export::export_slice(s, format, &path, options)?;
        Ok(())
    })
}

/// Builds a tabulated state from `len` samples at uniform abscissas `q`.
/// Release the handle with [`hkr_tabulated_free`].
#[no_mangle]
pub extern "C" fn hkr_tabulated_new(
    q: *const f64,
    re: *const f64,
    im: *const f64,
    len: usize,
    out_state: *mut *mut HkrTabulated1D,
) -> HkrStatus {
    guard(|| {
        if q.is_null() {
            return Err(Failure::Null("q"));
        }
        if re.is_null() {
            return Err(Failure::Null("re"));
        }
        if im.is_null() {
            return Err(Failure::Null("im"));
        }
        let out_state = out(out_state, "out_state")?;
        // SAFETY: non-null, each of length `len` per the API contract.
        let (q, re, im) = unsafe {
            (
                std::slice::from_raw_parts(q, len),
                std::slice::from_raw_parts(re, len),
                std::slice::from_raw_parts(im, len),
            )
        };
        let amps = re.iter().zip(im).map(|(&a, &b)| ComplexValue::new(a, b)).collect();
        let inner = TabulatedWavefunction1D::new(q, amps)?;
        *out_state = Box::into_raw(Box::new(HkrTabulated1D { inner }));
        Ok(())
    })
}

/// Reads a tabulated state from a `q,re,im` CSV file.
#[no_mangle]
pub extern "C" fn hkr_tabulated_from_csv(path: *const c_char, out_state: *mut *mut HkrTabulated1D) -> HkrStatus {
    guard(|| {
        let path = path_arg(path, "path")?;
        let out_state = out(out_state, "out_state")?;
        let inner = TabulatedWavefunction1D::from_csv_path(&path)?;
        *out_state = Box::into_raw(Box::new(HkrTabulated1D { inner }));
        Ok(())
    })
}

/// Releases a tabulated state.
#[no_mangle]
pub extern "C" fn hkr_tabulated_free(state: *mut HkrTabulated1D) {
    if !state.is_null() {
        // SAFETY: produced by `hkr_tabulated_new`/`hkr_tabulated_from_csv`, not freed before.
        drop(unsafe { Box::from_raw(state) });
    }
}

/// 1-D K-R distribution `Ψ(q) e^{-ipq} conj(Ψ̃(p))`.
#[no_mangle]
pub extern "C" fn hkr_kr_1d(state: *const HkrTabulated1D, q: f64, p: f64, out_value: *mut HkrComplex) -> HkrStatus {
    guard(|| {
        let psi = &input(state, "state")?.inner;
        *out(out_value, "out_value")? = complex(kr_1d(psi, q, p)?);
        Ok(())
    })
}

/// 1-D Wigner function.
#[no_mangle]
pub extern "C" fn hkr_wigner_1d(state: *const HkrTabulated1D, q: f64, p: f64, out_value: *mut f64) -> HkrStatus {
    guard(|| {
        let psi = &input(state, "state")?.inner;
        *out(out_value, "out_value")? = wigner_1d(psi, q, p)?;
        Ok(())
    })
}
