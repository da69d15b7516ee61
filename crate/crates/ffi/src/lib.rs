//! C ABI over `icsde-core`.
//!
//! Conventions:
//! - every fallible function returns an [`IcsdeStatus`]; on failure a
//!   message is available from [`icsde_last_error_message`] on the same thread;
//! - handles are opaque and must be released with their `_free` function;
//! - arrays are row-major `double` buffers sized by the caller.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use icsde_core::cli::ExperimentConfig;
use icsde_core::domain::{evaluate, Budget, ProblemSpec};
use icsde_core::engine::{run_with_hv, RunRecord};
use icsde_core::fitness::icsde_from_raw;
use icsde_core::indicators::{hv, HvConfig};
use icsde_core::problems::{default_budget, make_problem, SuiteInstance, DEFAULT_PF_POINTS};
use icsde_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcsdeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownProblem = 3,
    EvaluationError = 4,
    UnsupportedDimension = 5,
    Internal = 6,
}

/// A benchmark problem instance.
pub struct IcsdeProblem {
    instance: SuiteInstance,
    spec: ProblemSpec,
    hv: Option<HvConfig>,
}

/// A finished optimization run.
pub struct IcsdeRun {
    record: RunRecord,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> IcsdeStatus {
    match err {
        Error::Config(_) => IcsdeStatus::InvalidArgument,
        Error::ContractViolation(_) => IcsdeStatus::InvalidArgument,
        Error::Evaluation(_) | Error::BudgetExhausted { .. } => IcsdeStatus::EvaluationError,
        Error::UnsupportedDimension(_) => IcsdeStatus::UnsupportedDimension,
        Error::Io(_) | Error::Json(_) => IcsdeStatus::Internal,
    }
}

/// Run `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (IcsdeStatus, String)>) -> IcsdeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => IcsdeStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IcsdeStatus::Internal
        }
    }
}

fn core_err(e: Error) -> (IcsdeStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (IcsdeStatus, String) {
    (IcsdeStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (IcsdeStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (IcsdeStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn in_slice<'a>(p: *const f64, len: usize, what: &str) -> Result<&'a [f64], (IcsdeStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn out_slice<'a>(p: *mut f64, len: usize, what: &str) -> Result<&'a mut [f64], (IcsdeStatus, String)> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn icsde_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn icsde_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Create a problem from an id such as `"mw1"` or `"c3_dtlz4"`.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icsde_problem_new(id: *const c_char, out: *mut *mut IcsdeProblem) -> IcsdeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let id = read_str(id, "id")?;
        let instance: SuiteInstance = id
            .parse()
            .map_err(|e: Error| (IcsdeStatus::UnknownProblem, e.to_string()))?;
        let spec = make_problem(&instance).map_err(core_err)?;
        *out = Box::into_raw(Box::new(IcsdeProblem {
            instance,
            spec,
            hv: None,
        }));
        Ok(())
    })
}

/// Release a problem. NULL is ignored.
///
/// # Safety
/// `p` must come from [`icsde_problem_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn icsde_problem_free(p: *mut IcsdeProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Decision dimension, objective count and constraint count.
///
/// # Safety
/// `p` must be a live problem handle; output pointers may be NULL.
#[no_mangle]
pub unsafe extern "C" fn icsde_problem_dims(
    p: *const IcsdeProblem,
    n: *mut usize,
    m: *mut usize,
    q: *mut usize,
) -> IcsdeStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("problem"))?;
        if let Some(n) = n.as_mut() {
            *n = p.spec.n;
        }
        if let Some(m) = m.as_mut() {
            *m = p.spec.m;
        }
        if let Some(q) = q.as_mut() {
            *q = p.spec.q();
        }
        Ok(())
    })
}

/// Copy the box bounds into two arrays of length n.
///
/// # Safety
/// `lower` and `upper` must each hold n doubles.
#[no_mangle]
pub unsafe extern "C" fn icsde_problem_bounds(
    p: *const IcsdeProblem,
    lower: *mut f64,
    upper: *mut f64,
) -> IcsdeStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("problem"))?;
        let lo = out_slice(lower, p.spec.n, "lower")?;
        let hi = out_slice(upper, p.spec.n, "upper")?;
        for (j, &(l, u)) in p.spec.bounds.iter().enumerate() {
            lo[j] = l;
            hi[j] = u;
        }
        Ok(())
    })
}

/// Evaluate one decision vector. `f` holds m doubles, `g` holds q doubles
/// (may be NULL when q is 0), `cv` receives the total violation (may be NULL).
///
/// # Safety
/// Buffers must have the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn icsde_problem_evaluate(
    p: *const IcsdeProblem,
    x: *const f64,
    n: usize,
    f: *mut f64,
    g: *mut f64,
    cv: *mut f64,
) -> IcsdeStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("problem"))?;
        if n != p.spec.n {
            return Err((
                IcsdeStatus::InvalidArgument,
                format!("expected {} variables, got {n}", p.spec.n),
            ));
        }
        let x = in_slice(x, n, "x")?;
        let mut budget = Budget::new(1);
        let s = evaluate(&p.spec, x, &mut budget).map_err(core_err)?;
        out_slice(f, p.spec.m, "f")?.copy_from_slice(&s.f);
        out_slice(g, p.spec.q(), "g")?.copy_from_slice(&s.g);
        if let Some(cv) = cv.as_mut() {
            *cv = s.cv;
        }
        Ok(())
    })
}

/// Fitness of `count` members with `m` raw objectives each (row-major) and
/// their constraint violations. Writes `count` values to `out`.
///
/// # Safety
/// `objectives` holds count*m doubles, `cv` and `out` hold count doubles.
#[no_mangle]
pub unsafe extern "C" fn icsde_fitness(
    objectives: *const f64,
    cv: *const f64,
    count: usize,
    m: usize,
    out: *mut f64,
) -> IcsdeStatus {
    guard(|| {
        if count == 0 || m == 0 {
            return Err((IcsdeStatus::InvalidArgument, "count and m must be positive".into()));
        }
        let objs = in_slice(objectives, count * m, "objectives")?;
        let cv = in_slice(cv, count, "cv")?;
        let rows: Vec<&[f64]> = objs.chunks(m).collect();
        let fit = icsde_from_raw(&rows, cv).map_err(core_err)?;
        out_slice(out, count, "out")?.copy_from_slice(&fit);
        Ok(())
    })
}

/// Normalized hypervolume of `count` points against a reference front of
/// `front_count` points, both with `m` objectives.
///
/// # Safety
/// Buffers must hold count*m and front_count*m doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn icsde_hypervolume(
    points: *const f64,
    count: usize,
    front: *const f64,
    front_count: usize,
    m: usize,
    out: *mut f64,
) -> IcsdeStatus {
    guard(|| {
        if m == 0 {
            return Err((IcsdeStatus::InvalidArgument, "m must be positive".into()));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let pts = in_slice(points, count * m, "points")?;
        let fr = in_slice(front, front_count * m, "front")?;
        let cfg = HvConfig::new(fr.chunks(m).map(<[f64]>::to_vec).collect()).map_err(core_err)?;
        let rows: Vec<&[f64]> = pts.chunks(m).collect();
        *out = hv(&rows, &cfg).map_err(core_err)?;
        Ok(())
    })
}

/// Optimize `problem` with a variant preset (`"icsde"`, `"icsde-ga"`,
/// `"icsde-de"`, `"isdeplus"`, `"cdp-baseline"`). Zero `population` or
/// `max_fes` selects the instance default.
///
/// # Safety
/// `problem` must be live, `preset` NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn icsde_run_new(
    problem: *mut IcsdeProblem,
    preset: *const c_char,
    population: usize,
    max_fes: usize,
    seed: u64,
    out: *mut *mut IcsdeRun,
) -> IcsdeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let p = problem.as_mut().ok_or_else(|| null("problem"))?;
        let preset = read_str(preset, "preset")?;
        let exp = ExperimentConfig {
            problems: vec![p.instance.id()],
            variants: vec![preset.to_string()],
            runs: 1,
            base_seed: seed,
            parallelism: 1,
            output_dir: ".".into(),
            budget_override: None,
            ga: None,
            de: None,
        };
        let mut alg = exp.algorithm(preset, &p.instance).map_err(core_err)?;
        let (dn, dfes) = default_budget(&p.instance);
        alg.population_size = if population == 0 { dn } else { population };
        alg.max_fes = if max_fes == 0 { dfes } else { max_fes };
        if p.hv.is_none() {
            p.hv = Some(HvConfig::new(p.spec.pareto_front(DEFAULT_PF_POINTS)).map_err(core_err)?);
        }
        let hv_cfg = p.hv.as_ref().expect("set above");
        let mut record = run_with_hv(&p.spec, &alg, seed, hv_cfg).map_err(core_err)?;
        record.variant = preset.to_string();
        if let Some(e) = &record.error {
            return Err((IcsdeStatus::EvaluationError, e.clone()));
        }
        *out = Box::into_raw(Box::new(IcsdeRun { record }));
        Ok(())
    })
}

/// Release a run. NULL is ignored.
///
/// # Safety
/// `r` must come from [`icsde_run_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn icsde_run_free(r: *mut IcsdeRun) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Final hypervolume, evaluations used and final population size.
///
/// # Safety
/// `r` must be live; output pointers may be NULL.
#[no_mangle]
pub unsafe extern "C" fn icsde_run_summary(
    r: *const IcsdeRun,
    final_hv: *mut f64,
    fes_used: *mut usize,
    population: *mut usize,
) -> IcsdeStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("run"))?;
        if let Some(v) = final_hv.as_mut() {
            *v = r.record.final_hv();
        }
        if let Some(v) = fes_used.as_mut() {
            *v = r.record.fes_used;
        }
        if let Some(v) = population.as_mut() {
            *v = r.record.final_population.len();
        }
        Ok(())
    })
}

/// Copy the final population: `x` holds size*n, `f` size*m and `cv` size
/// doubles. Any of them may be NULL to skip.
///
/// # Safety
/// Non-NULL buffers must have the documented lengths.
#[no_mangle]
pub unsafe extern "C" fn icsde_run_population(
    r: *const IcsdeRun,
    x: *mut f64,
    f: *mut f64,
    cv: *mut f64,
) -> IcsdeStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null("run"))?;
        let pop = &r.record.final_population;
        let n = pop.first().map_or(0, |s| s.x.len());
        let m = pop.first().map_or(0, |s| s.f.len());
        if !x.is_null() {
            let xs = out_slice(x, pop.len() * n, "x")?;
            for (row, s) in xs.chunks_mut(n.max(1)).zip(pop) {
                row.copy_from_slice(&s.x);
            }
        }
        if !f.is_null() {
            let fs = out_slice(f, pop.len() * m, "f")?;
            for (row, s) in fs.chunks_mut(m.max(1)).zip(pop) {
                row.copy_from_slice(&s.f);
            }
        }
        if !cv.is_null() {
            for (o, s) in out_slice(cv, pop.len(), "cv")?.iter_mut().zip(pop) {
                *o = s.cv;
            }
        }
        Ok(())
    })
}

/// The run as a JSON object. Free the string with [`icsde_string_free`].
///
/// # Safety
/// `r` must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn icsde_run_to_json(r: *const IcsdeRun, out: *mut *mut c_char) -> IcsdeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let r = r.as_ref().ok_or_else(|| null("run"))?;
        let json = serde_json::to_string(&r.record).map_err(|e| core_err(e.into()))?;
        *out = CString::new(json)
            .map_err(|_| (IcsdeStatus::Internal, "JSON contains NUL".to_string()))?
            .into_raw();
        Ok(())
    })
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn icsde_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
