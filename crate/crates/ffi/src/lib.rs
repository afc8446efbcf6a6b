//! C ABI over `hierfit`.
//!
//! Every fallible function returns an [`HfStatus`]. On failure a message is
//! stored per thread and can be read with [`hf_last_error_message`]. Stores
//! and constraint sets are opaque handles owned by the caller and released
//! with their `_free` function. Panics never cross the boundary; they are
//! reported as [`HfStatus::Panic`].
//!
//! Enum arguments must hold one of their declared values; anything else is
//! undefined behaviour.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hierfit::constraints::{ConstraintSet, PairRelation};
use hierfit::embedding::{EmbeddingStore, Format, Space};
use hierfit::eval::{self, NormRatio, ThresholdProtocol};
use hierfit::loss::Margins;
use hierfit::sampler::NegativePolicy;
use hierfit::specialize::{self, Preset, SpecializeConfig};
use hierfit::Error;

/// Result code of every fallible call. `Ok` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    Config = 5,
    MissingRelation = 6,
    NumericFailure = 7,
    Uncovered = 8,
    Undefined = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfFormat {
    GloveText = 0,
    Word2vecText = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfRelation {
    Synonym = 0,
    Antonym = 1,
    Hypernym = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfMethod {
    Retrofitting = 0,
    Counterfitting = 1,
    AttractRepel = 2,
    Lear = 3,
    HierarchyFitting = 4,
    HierarchyFittingAdDir = 5,
    HierarchyFittingAdIndir = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfTask {
    Similarity = 0,
    Bless = 1,
    Wbless = 2,
    Bibless = 3,
    Hyperlex = 4,
}

/// Opaque embedding store.
pub struct HfStore(EmbeddingStore);

/// Opaque constraint set.
pub struct HfConstraints(ConstraintSet);

/// Training settings. Obtain defaults with [`hf_config_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HfConfig {
    pub method: HfMethod,
    pub learning_rate: f64,
    pub epochs: u32,
    pub batch_size: u32,
    pub seed: u64,
    pub adagrad_epsilon: f64,
    pub neighbor_k: u32,
    pub samples_k: u32,
    /// Non-zero keeps only the closest in-batch negatives.
    pub closest_only: u8,
    pub retrofit_alpha: f64,
    pub retrofit_iterations: u32,
    /// Hop limit for the hypernym closure; 0 means unbounded.
    pub closure_depth: u32,
    pub m_syn: f64,
    pub m_ant: f64,
    pub m_hyp: f64,
    pub m_hie_syn: f64,
    pub m_hie_hyp: f64,
    pub m_reg: f64,
    pub gamma_reg: f64,
    pub ad_weight: f64,
}

/// Evaluation protocol settings.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HfEvalOptions {
    pub task: HfTask,
    /// Non-zero resolves OOV words by stripping trailing characters.
    pub backoff: u8,
    pub seed: u64,
    pub iterations: u32,
    /// Non-zero uses `|word| / |candidate|` inside HyperScore.
    pub hypo_over_hyper: u8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HfEvalResult {
    pub value: f64,
    pub coverage: f64,
    pub n_pairs: u64,
    pub n_covered: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> HfStatus {
    match err {
        Error::Io { .. } => HfStatus::Io,
        Error::Parse { .. } => HfStatus::Parse,
        Error::Config(_) | Error::DimensionMismatch { .. } | Error::InvalidRow { .. } | Error::Empty(_) => {
            HfStatus::Config
        }
        Error::MissingRelation { .. } => HfStatus::MissingRelation,
        Error::NonFiniteGradient { .. } | Error::ZeroVector => HfStatus::NumericFailure,
        Error::Uncovered(_) => HfStatus::Uncovered,
        Error::Undefined(_) => HfStatus::Undefined,
    }
}

struct Fail(HfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(HfStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(HfStatus::InvalidArgument, msg.into())
}

/// Runs `f`, translating errors and panics into a status and last-error message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            HfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

fn format_of(f: HfFormat) -> Format {
    match f {
        HfFormat::GloveText => Format::GloveText,
        HfFormat::Word2vecText => Format::Word2VecText,
    }
}

fn relation_of(r: HfRelation) -> PairRelation {
    match r {
        HfRelation::Synonym => PairRelation::Synonym,
        HfRelation::Antonym => PairRelation::Antonym,
        HfRelation::Hypernym => PairRelation::Hypernym,
    }
}

fn preset_of(m: HfMethod) -> Preset {
    match m {
        HfMethod::Retrofitting => Preset::Retrofitting,
        HfMethod::Counterfitting => Preset::Counterfitting,
        HfMethod::AttractRepel => Preset::AttractRepel,
        HfMethod::Lear => Preset::Lear,
        HfMethod::HierarchyFitting => Preset::HierarchyFitting,
        HfMethod::HierarchyFittingAdDir => Preset::HierarchyFittingAdDir,
        HfMethod::HierarchyFittingAdIndir => Preset::HierarchyFittingAdIndir,
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call or [`hf_clear_last_error`] on the same
/// thread.
#[no_mangle]
pub extern "C" fn hf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn hf_clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn hf_store_load(path: *const c_char, format: HfFormat, out: *mut *mut HfStore) -> HfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let store = hierfit::load_embeddings(str_arg(path, "path")?, format_of(format))?;
        *out = Box::into_raw(Box::new(HfStore(store)));
        Ok(())
    })
}

/// Builds a store from `n` tokens and a row-major `n x dim` matrix.
///
/// # Safety
/// `tokens` must hold `n` NUL-terminated strings and `data` `n * dim` values.
#[no_mangle]
pub unsafe extern "C" fn hf_store_from_matrix(
    tokens: *const *const c_char,
    data: *const f64,
    n: usize,
    dim: usize,
    out: *mut *mut HfStore,
) -> HfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        if tokens.is_null() || data.is_null() {
            return Err(null("tokens or data"));
        }
        let values = std::slice::from_raw_parts(data, n.checked_mul(dim).ok_or_else(|| invalid("size overflow"))?);
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let token = str_arg(*tokens.add(i), "token")?;
            rows.push((token, values[i * dim..(i + 1) * dim].to_vec()));
        }
        let store = EmbeddingStore::from_rows(rows)?;
        *out = Box::into_raw(Box::new(HfStore(store)));
        Ok(())
    })
}

/// # Safety
/// `store` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_store_free(store: *mut HfStore) {
    if !store.is_null() {
        drop(Box::from_raw(store));
    }
}

/// # Safety
/// `store` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn hf_store_save(store: *const HfStore, path: *const c_char, format: HfFormat) -> HfStatus {
    guard(|| {
        let store = ref_arg(store, "store")?;
        hierfit::save_embeddings(&store.0, str_arg(path, "path")?, format_of(format))?;
        Ok(())
    })
}

/// Vocabulary size, or 0 for a null handle.
///
/// # Safety
/// `store` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_store_len(store: *const HfStore) -> usize {
    store.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `store` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_store_dim(store: *const HfStore) -> usize {
    store.as_ref().map_or(0, |s| s.0.dim())
}

/// Row of an exact token; [`HfStatus::Uncovered`] when absent.
///
/// # Safety
/// Pointers must be valid; `token` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hf_store_row(store: *const HfStore, token: *const c_char, out_row: *mut usize) -> HfStatus {
    guard(|| {
        let store = ref_arg(store, "store")?;
        let token = str_arg(token, "token")?;
        let out = out_arg(out_row, "out_row")?;
        *out = store
            .0
            .row_of(token)
            .ok_or_else(|| Error::Uncovered(token.to_owned()))?;
        Ok(())
    })
}

/// Copies the current (or, when `original` is non-zero, the original) vector
/// of `row` into `buf`, which must hold `len >= dim` values.
///
/// # Safety
/// `buf` must be writable for `len` values.
#[no_mangle]
pub unsafe extern "C" fn hf_store_vector(
    store: *const HfStore,
    row: usize,
    original: u8,
    buf: *mut f64,
    len: usize,
) -> HfStatus {
    guard(|| {
        let store = &ref_arg(store, "store")?.0;
        store.check_row(row)?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < store.dim() {
            return Err(invalid(format!("buffer holds {len} values, need {}", store.dim())));
        }
        let space = if original != 0 { Space::Original } else { Space::Current };
        std::slice::from_raw_parts_mut(buf, store.dim()).copy_from_slice(store.vector_in(row, space));
        Ok(())
    })
}

/// Cosine similarity of two rows in the current space.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hf_store_cosine(store: *const HfStore, a: usize, b: usize, out: *mut f64) -> HfStatus {
    guard(|| {
        let store = &ref_arg(store, "store")?.0;
        store.check_row(a)?;
        store.check_row(b)?;
        *out_arg(out, "out")? = store.cosine(a, b);
        Ok(())
    })
}

/// Writes up to `k` neighbours of `row` into `rows`/`scores` (each holding
/// `k` slots) and their count into `out_n`.
///
/// # Safety
/// `rows` and `scores` must be writable for `k` values.
#[no_mangle]
pub unsafe extern "C" fn hf_store_nearest(
    store: *const HfStore,
    row: usize,
    k: usize,
    rows: *mut usize,
    scores: *mut f64,
    out_n: *mut usize,
) -> HfStatus {
    guard(|| {
        let store = &ref_arg(store, "store")?.0;
        let out_n = out_arg(out_n, "out_n")?;
        if rows.is_null() || scores.is_null() {
            return Err(null("rows or scores"));
        }
        let hits = store.nearest_neighbors(row, k, Space::Current)?;
        for (i, (r, s)) in hits.iter().enumerate() {
            *rows.add(i) = *r;
            *scores.add(i) = *s;
        }
        *out_n = hits.len();
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn hf_constraints_new() -> *mut HfConstraints {
    Box::into_raw(Box::new(HfConstraints(ConstraintSet::new())))
}

/// # Safety
/// `cs` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hf_constraints_free(cs: *mut HfConstraints) {
    if !cs.is_null() {
        drop(Box::from_raw(cs));
    }
}

/// Reads a pair file against `store`'s vocabulary and merges it into `cs`.
///
/// # Safety
/// Handles must be live; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hf_constraints_load(
    cs: *mut HfConstraints,
    path: *const c_char,
    relation: HfRelation,
    store: *const HfStore,
) -> HfStatus {
    guard(|| {
        let cs = out_arg(cs, "constraints")?;
        let store = ref_arg(store, "store")?;
        let loaded = ConstraintSet::load_pairs(str_arg(path, "path")?, relation_of(relation), &store.0)?;
        cs.0.merge(loaded);
        Ok(())
    })
}

/// Adds one pair of rows.
///
/// # Safety
/// Handles must be live.
#[no_mangle]
pub unsafe extern "C" fn hf_constraints_add(
    cs: *mut HfConstraints,
    relation: HfRelation,
    a: usize,
    b: usize,
) -> HfStatus {
    guard(|| {
        out_arg(cs, "constraints")?.0.insert(relation_of(relation), a, b);
        Ok(())
    })
}

/// Number of stored pairs of a relation (direct hypernyms for `Hypernym`).
///
/// # Safety
/// `cs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hf_constraints_count(cs: *const HfConstraints, relation: HfRelation) -> usize {
    cs.as_ref().map_or(0, |c| c.0.pairs(relation_of(relation)).len())
}

#[no_mangle]
pub extern "C" fn hf_config_default(method: HfMethod) -> HfConfig {
    let c = SpecializeConfig::default();
    let m = c.margins;
    HfConfig {
        method,
        learning_rate: c.learning_rate,
        epochs: c.epochs as u32,
        batch_size: c.batch_size as u32,
        seed: c.seed,
        adagrad_epsilon: c.adagrad_epsilon,
        neighbor_k: c.neighbor_k as u32,
        samples_k: c.samples_k as u32,
        closest_only: (c.negative_policy == NegativePolicy::ClosestOnly) as u8,
        retrofit_alpha: c.retrofit_alpha,
        retrofit_iterations: c.retrofit_iterations as u32,
        closure_depth: c.closure_depth.map_or(0, |d| d as u32),
        m_syn: m.m_syn,
        m_ant: m.m_ant,
        m_hyp: m.m_hyp,
        m_hie_syn: m.m_hie_syn,
        m_hie_hyp: m.m_hie_hyp,
        m_reg: m.m_reg,
        gamma_reg: m.gamma_reg,
        ad_weight: m.ad_weight,
    }
}

fn config_of(c: &HfConfig) -> SpecializeConfig {
    let base = SpecializeConfig::default();
    SpecializeConfig {
        preset: preset_of(c.method),
        margins: Margins {
            m_syn: c.m_syn,
            m_ant: c.m_ant,
            m_hyp: c.m_hyp,
            m_hie_syn: c.m_hie_syn,
            m_hie_hyp: c.m_hie_hyp,
            m_reg: c.m_reg,
            gamma_reg: c.gamma_reg,
            ad_weight: c.ad_weight,
            ..base.margins
        },
        learning_rate: c.learning_rate,
        epochs: c.epochs as usize,
        batch_size: c.batch_size as usize,
        seed: c.seed,
        adagrad_epsilon: c.adagrad_epsilon,
        neighbor_k: c.neighbor_k as usize,
        retrofit_alpha: c.retrofit_alpha,
        retrofit_iterations: c.retrofit_iterations as usize,
        samples_k: c.samples_k as usize,
        negative_policy: if c.closest_only != 0 {
            NegativePolicy::ClosestOnly
        } else {
            NegativePolicy::ClosestPlusRandom
        },
        closure_depth: (c.closure_depth != 0).then_some(c.closure_depth as usize),
    }
}

/// Specializes a copy of `store`; the result is written to `out` as a new
/// handle. The LEAR and indirect-AD methods use the hypernym closure.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hf_specialize(
    store: *const HfStore,
    cs: *const HfConstraints,
    config: *const HfConfig,
    out: *mut *mut HfStore,
) -> HfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let store = ref_arg(store, "store")?;
        let cs = ref_arg(cs, "constraints")?;
        let config = config_of(ref_arg(config, "config")?);
        let mut constraints = cs.0.clone();
        if matches!(config.preset, Preset::Lear | Preset::HierarchyFittingAdIndir) && !constraints.closure_computed() {
            constraints.compute_closure(config.closure_depth);
        }
        let (result, _log) = specialize::specialize(&store.0, &constraints, &config)?;
        *out = Box::into_raw(Box::new(HfStore(result)));
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn hf_eval_options_default(task: HfTask) -> HfEvalOptions {
    let p = ThresholdProtocol::default();
    HfEvalOptions {
        task,
        backoff: 0,
        seed: p.seed,
        iterations: p.iterations as u32,
        hypo_over_hyper: 0,
    }
}

/// Evaluates `store` on a dataset file.
///
/// # Safety
/// Pointers must be valid; `dataset` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn hf_eval(
    store: *const HfStore,
    dataset: *const c_char,
    options: *const HfEvalOptions,
    out: *mut HfEvalResult,
) -> HfStatus {
    guard(|| {
        let store = &ref_arg(store, "store")?.0;
        let path = str_arg(dataset, "dataset")?;
        let opts = ref_arg(options, "options")?;
        let out = out_arg(out, "out")?;
        let backoff = opts.backoff != 0;
        let ratio = if opts.hypo_over_hyper != 0 {
            NormRatio::HypoOverHyper
        } else {
            NormRatio::HyperOverHypo
        };
        let protocol = ThresholdProtocol {
            iterations: opts.iterations as usize,
            seed: opts.seed,
            ratio,
            ..ThresholdProtocol::default()
        };
        let report = match opts.task {
            HfTask::Similarity => eval::eval_similarity(store, &eval::load_similarity_dataset(path)?, backoff)?,
            HfTask::Hyperlex => eval::hyperlex_eval_with(store, &eval::load_similarity_dataset(path)?, backoff, ratio)?,
            HfTask::Bless => eval::bless_directionality(store, &eval::load_relation_dataset(path)?, backoff)?,
            HfTask::Wbless => eval::wbless_classify(store, &eval::load_relation_dataset(path)?, protocol, backoff)?,
            HfTask::Bibless => eval::bibless_classify(store, &eval::load_relation_dataset(path)?, protocol, backoff)?,
        };
        *out = HfEvalResult {
            value: report.value,
            coverage: report.coverage,
            n_pairs: report.n_pairs as u64,
            n_covered: report.n_covered as u64,
        };
        Ok(())
    })
}
