//! C ABI over `bll-core`.
//!
//! Objects cross the boundary as opaque handles freed by their `*_free`
//! function. Every fallible call returns a [`BllStatus`]; on failure the
//! message is available from [`bll_last_error`] on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with [`bll_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bll_core::borcherds::{self, Convention, QuasiPullbackReport};
use bll_core::enumerate::count_of_int_norm;
use bll_core::lattice::{make_named, parse_rationals, Lattice, NamedLattice};
use bll_core::Error;
use num_rational::BigRational;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BllStatus {
    Ok = 0,
    InvalidInput = 2,
    BudgetExceeded = 3,
    Internal = 4,
    NullPointer = 5,
    Panic = 6,
}

/// Opaque lattice handle.
pub struct BllLattice {
    inner: Lattice,
}

/// Opaque quasi-pullback report handle.
pub struct BllReport {
    inner: QuasiPullbackReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BllStatus {
    match e.exit_code() {
        3 => BllStatus::BudgetExceeded,
        4 => BllStatus::Internal,
        _ => BllStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics.
fn guard(f: impl FnOnce() -> Result<(), (BllStatus, String)>) -> BllStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            BllStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside bll".into());
            BllStatus::Panic
        }
    }
}

fn lift<T>(r: bll_core::Result<T>) -> Result<T, (BllStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BllStatus, String) {
    (BllStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BllStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (BllStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (BllStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (BllStatus::Internal, "string contains nul".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn chart_from_doubled(doubled: *const i64) -> Result<Vec<BigRational>, (BllStatus, String)> {
    if doubled.is_null() {
        return Err(null("doubled_chart"));
    }
    let d = std::slice::from_raw_parts(doubled, 8);
    let text: Vec<String> = d.iter().map(|x| format!("{x}/2")).collect();
    lift(parse_rationals(&text.join(",")))
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn bll_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bll_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Named lattice such as `"E8"`, `"A7"`, `"U"` or `"<-2>"`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bll_lattice_named(name: *const c_char, out: *mut *mut BllLattice) -> BllStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let named: NamedLattice = lift(name.parse())?;
        let inner = lift(named.build())?;
        *out = Box::into_raw(Box::new(BllLattice { inner }));
        Ok(())
    })
}

/// Lattice from a row-major `rank × rank` symmetric Gram matrix.
///
/// # Safety
/// `gram` must point to `rank * rank` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_lattice_from_gram(gram: *const i64, rank: usize, out: *mut *mut BllLattice) -> BllStatus {
    guard(|| {
        if gram.is_null() && rank > 0 {
            return Err(null("gram"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let flat = if rank == 0 { &[][..] } else { std::slice::from_raw_parts(gram, rank * rank) };
        let rows = flat.chunks(rank.max(1)).map(<[i64]>::to_vec).collect();
        let inner = lift(Lattice::from_gram(rows))?;
        *out = Box::into_raw(Box::new(BllLattice { inner }));
        Ok(())
    })
}

/// Same as [`bll_lattice_named`] with a separate integer parameter, e.g.
/// `("A", 7)` or `("rank1", -2)`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn bll_lattice_make(name: *const c_char, param: i64, out: *mut *mut BllLattice) -> BllStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = lift(make_named(name, Some(param)))?;
        *out = Box::into_raw(Box::new(BllLattice { inner }));
        Ok(())
    })
}

/// # Safety
/// `l` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bll_lattice_free(l: *mut BllLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_lattice_rank(l: *const BllLattice, out: *mut usize) -> BllStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(|| null("lattice"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = l.inner.rank();
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_lattice_determinant(l: *const BllLattice, out: *mut i64) -> BllStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(|| null("lattice"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = i64::try_from(l.inner.determinant())
            .map_err(|_| (BllStatus::Internal, "determinant exceeds int64".to_string()))?;
        Ok(())
    })
}

/// Number of lattice vectors of norm `norm` in a definite lattice.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_count_of_norm(l: *const BllLattice, norm: i64, out: *mut u64) -> BllStatus {
    guard(|| {
        let l = l.as_ref().ok_or_else(|| null("lattice"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = lift(count_of_int_norm(&l.inner, norm))?;
        Ok(())
    })
}

/// Quasi-pullback for `v` given by twice its eight chart coordinates, so
/// half-integral vectors are representable.
///
/// # Safety
/// `doubled_chart` must point to 8 values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_quasi_pullback(g: i64, doubled_chart: *const i64, out: *mut *mut BllReport) -> BllStatus {
    guard(|| {
        let v = chart_from_doubled(doubled_chart)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = lift(borcherds::quasi_pullback(g, &v))?;
        *out = Box::into_raw(Box::new(BllReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `r` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn bll_report_free(r: *mut BllReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Root count `r`, weight `k`, `n = k − 19` and discriminant order.
///
/// # Safety
/// `report` must be valid; any of the out-pointers may be NULL.
#[no_mangle]
pub unsafe extern "C" fn bll_report_numbers(
    report: *const BllReport,
    r: *mut u64,
    k: *mut u64,
    n: *mut i64,
    disc_order: *mut u64,
) -> BllStatus {
    guard(|| {
        let rep = &report.as_ref().ok_or_else(|| null("report"))?.inner;
        if let Some(p) = r.as_mut() {
            *p = rep.r;
        }
        if let Some(p) = k.as_mut() {
            *p = rep.k;
        }
        if let Some(p) = n.as_mut() {
            *p = rep.n;
        }
        if let Some(p) = disc_order.as_mut() {
            *p = rep.disc_order;
        }
        Ok(())
    })
}

/// Whether the q-series weight cross-check passed.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_report_crosscheck(report: *const BllReport, passed: *mut bool) -> BllStatus {
    guard(|| {
        let rep = &report.as_ref().ok_or_else(|| null("report"))?.inner;
        *passed.as_mut().ok_or_else(|| null("passed"))? = rep.crosscheck.passed;
        Ok(())
    })
}

/// Root system type such as `"A1+D5"`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_report_root_type(report: *const BllReport, out: *mut *mut c_char) -> BllStatus {
    guard(|| {
        let rep = &report.as_ref().ok_or_else(|| null("report"))?.inner;
        write_string(out, rep.root_type.to_string())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_report_to_json(report: *const BllReport, out: *mut *mut c_char) -> BllStatus {
    guard(|| {
        let rep = &report.as_ref().ok_or_else(|| null("report"))?.inner;
        let s = serde_json::to_string(rep).map_err(|e| (BllStatus::Internal, e.to_string()))?;
        write_string(out, s)
    })
}

/// JSON array of reports for the tabulated `v_g`, `g = 2..22`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_paper_table_json(out: *mut *mut c_char) -> BllStatus {
    guard(|| {
        let rows = lift(borcherds::paper_table())?;
        let s = serde_json::to_string(&rows).map_err(|e| (BllStatus::Internal, e.to_string()))?;
        write_string(out, s)
    })
}

/// Heegner ledger as JSON. `polarized` selects the sign of `q` read on `Λ_g`.
///
/// # Safety
/// `doubled_chart` must point to 8 values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_heegner_ledger_json(
    g: i64,
    doubled_chart: *const i64,
    polarized: bool,
    out: *mut *mut c_char,
) -> BllStatus {
    guard(|| {
        let v = chart_from_doubled(doubled_chart)?;
        let conv = if polarized { Convention::Polarized } else { Convention::Complement };
        let l = lift(borcherds::heegner_ledger(g, &v, conv))?;
        let s = serde_json::to_string(&l).map_err(|e| (BllStatus::Internal, e.to_string()))?;
        write_string(out, s)
    })
}

/// Number of divisibility classes of (−2)-vectors in `Λ_g`.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn bll_eichler_orbit_count(g: i64, out: *mut u32) -> BllStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = lift(borcherds::eichler_minus2_orbits(g))?.count as u32;
        Ok(())
    })
}
