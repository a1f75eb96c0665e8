//! Python bindings. Positions may be given as Python ints or as strings
//! like `"2^2059+2061"`; words are returned as `Word` objects.

use brik_core::access;
use brik_core::blocks;
use brik_core::density::{self, DensityInterval as CoreInterval};
use brik_core::factors::{self, FactorSet as CoreFactorSet, FactorSource};
use brik_core::runs::{self, ScanResult};
use brik_core::structure;
use brik_core::verify::{self as checks, Suite};
use brik_core::{BigIndex, BrikError as CoreError, Limits as CoreLimits, Word as CoreWord};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyIndexError, PyValueError};
use pyo3::prelude::*;

create_exception!(brik, BrikError, PyException, "Base class for errors raised by brik.");
create_exception!(brik, CapExceededError, BrikError, "A resource cap was exceeded.");
create_exception!(brik, RepresentationError, BrikError, "The value is too large to represent.");
create_exception!(brik, PrecisionError, BrikError, "Not enough bits for the requested enclosure.");

fn to_py(e: CoreError) -> PyErr {
    let msg = e.to_string();
    match e {
        CoreError::CapExceeded { .. } => CapExceededError::new_err(msg),
        CoreError::Representation(_) => RepresentationError::new_err(msg),
        CoreError::InsufficientPrecision(_) => PrecisionError::new_err(msg),
        CoreError::OutOfRange(_) => PyIndexError::new_err(msg),
        _ => PyValueError::new_err(msg),
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for brik_core::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[derive(FromPyObject)]
enum Position {
    Int(BigUint),
    Expr(String),
}

impl Position {
    fn index(self) -> PyResult<BigIndex> {
        match self {
            Position::Int(v) => BigIndex::try_from(v).py_err(),
            Position::Expr(s) => s.parse().py_err(),
        }
    }
}

/// Resource caps. Defaults: block index 30, window 2^20 bits, memory 2^31 bits.
#[pyclass(module = "brik", name = "Limits", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Limits(CoreLimits);

#[pymethods]
impl Limits {
    #[new]
    #[pyo3(signature = (block_cap=None, window_cap=None, memory_cap=None))]
    fn new(block_cap: Option<u64>, window_cap: Option<usize>, memory_cap: Option<usize>) -> Self {
        let d = CoreLimits::default();
        Limits(CoreLimits {
            block_cap: block_cap.unwrap_or(d.block_cap),
            window_cap: window_cap.unwrap_or(d.window_cap),
            memory_cap: memory_cap.unwrap_or(d.memory_cap),
        })
    }

    #[getter]
    fn block_cap(&self) -> u64 {
        self.0.block_cap
    }

    #[getter]
    fn window_cap(&self) -> usize {
        self.0.window_cap
    }

    #[getter]
    fn memory_cap(&self) -> usize {
        self.0.memory_cap
    }

    fn __repr__(&self) -> String {
        format!(
            "Limits(block_cap={}, window_cap={}, memory_cap={})",
            self.0.block_cap, self.0.window_cap, self.0.memory_cap
        )
    }
}

fn lim(limits: Option<PyRef<'_, Limits>>) -> CoreLimits {
    limits.map(|l| l.0).unwrap_or_default()
}

/// A finite binary word with 1-based positions.
#[pyclass(module = "brik", name = "Word", frozen, eq, ord, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Word(CoreWord);

#[pymethods]
impl Word {
    #[new]
    fn new(bits: &str) -> PyResult<Self> {
        bits.parse().map(Word).py_err()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        if self.0.len() <= 64 {
            format!("Word('{}')", self.0)
        } else {
            format!("Word(<{} bits>)", self.0.len())
        }
    }

    /// Symbol at 1-based position `pos`.
    fn get(&self, pos: usize) -> PyResult<u8> {
        self.0
            .get(pos)
            .ok_or_else(|| PyIndexError::new_err(format!("position {pos} outside 1..={}", self.0.len())))
    }

    /// Subword `w[a..b]`, both ends inclusive and 1-based.
    fn slice(&self, a: usize, b: usize) -> PyResult<Word> {
        self.0.slice(a, b).map(Word).py_err()
    }

    fn count_ones(&self) -> u64 {
        self.0.count_ones()
    }

    fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    fn __add__(&self, other: &Word) -> Word {
        Word(self.0.concat(&other.0))
    }

    fn __contains__(&self, pattern: &Word) -> bool {
        self.0.occurrences(&pattern.0).next().is_some()
    }

    /// 1-based start positions of `pattern`, overlaps included.
    fn occurrences(&self, pattern: &Word) -> Vec<usize> {
        self.0.occurrences(&pattern.0).collect()
    }

    fn to_list(&self) -> Vec<u8> {
        self.0.iter().collect()
    }
}

/// Streams `b_1, b_2, ...` up to an optional limit.
#[pyclass(module = "brik", name = "Stream")]
struct Stream {
    inner: blocks::Stream,
}

#[pymethods]
impl Stream {
    #[new]
    #[pyo3(signature = (limit=None, limits=None))]
    fn new(limit: Option<usize>, limits: Option<PyRef<'_, Limits>>) -> PyResult<Self> {
        let l = lim(limits);
        let inner = blocks::Stream::from_seed(&blocks::base_block(), limit, &l).py_err()?;
        Ok(Stream { inner })
    }

    fn __iter__(slf: PyRef<'_, Self>) -> PyRef<'_, Self> {
        slf
    }

    fn __next__(&mut self) -> PyResult<Option<u8>> {
        self.inner.next().transpose().py_err()
    }

    #[getter]
    fn position(&self) -> usize {
        self.inner.position()
    }
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    cls.call1((q.numer().clone(), q.denom().clone()))
}

/// Exact rational enclosure of `alpha` or `beta`.
#[pyclass(module = "brik", name = "DensityInterval", frozen)]
struct DensityInterval(CoreInterval);

#[pymethods]
impl DensityInterval {
    #[getter]
    fn constant(&self) -> &'static str {
        match self.0.constant {
            density::Constant::Alpha => "alpha",
            density::Constant::Beta => "beta",
        }
    }

    #[getter]
    fn bits(&self) -> u64 {
        self.0.bits
    }

    #[getter]
    fn lower<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.lower)
    }

    #[getter]
    fn upper<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.upper)
    }

    fn width<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.width())
    }

    fn midpoint<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.midpoint())
    }

    fn pinned_decimal(&self) -> String {
        self.0.pinned_decimal()
    }

    fn is_within(&self, other: &DensityInterval) -> bool {
        self.0.is_within(&other.0)
    }

    fn __contains__(&self, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        let num: BigInt = x.getattr("numerator")?.extract()?;
        let den: BigInt = x.getattr("denominator")?.extract()?;
        Ok(self.0.contains(&BigRational::new(num, den)))
    }

    fn __repr__(&self) -> String {
        format!("DensityInterval({}, bits={}, {})", self.constant(), self.0.bits, self.0.pinned_decimal())
    }
}

/// Distinct factors of one length.
#[pyclass(module = "brik", name = "FactorSet", frozen)]
struct FactorSet(CoreFactorSet);

#[pymethods]
impl FactorSet {
    #[getter]
    fn length(&self) -> usize {
        self.0.length
    }

    /// `None` for the exact characterization, else the scanned prefix length.
    #[getter]
    fn prefix_len(&self) -> Option<usize> {
        match self.0.source {
            FactorSource::Characterization => None,
            FactorSource::Scan { prefix_len } => Some(prefix_len),
        }
    }

    #[getter]
    fn members(&self) -> Vec<Word> {
        self.0.members.iter().cloned().map(Word).collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __contains__(&self, w: &Word) -> bool {
        self.0.contains(&w.0)
    }

    fn issubset(&self, other: &FactorSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// `B_n = u v` and `B_(n+1) = u v v`.
#[pyclass(module = "brik", name = "Witness", frozen)]
struct Witness(structure::WitnessRecord);

#[pymethods]
impl Witness {
    #[getter]
    fn n(&self) -> u64 {
        self.0.n
    }

    #[getter]
    fn u(&self) -> Word {
        Word(self.0.u.clone())
    }

    #[getter]
    fn v(&self) -> Word {
        Word(self.0.v.clone())
    }

    #[getter]
    fn prefix_ok(&self) -> bool {
        self.0.prefix_ok
    }

    #[getter]
    fn ratio<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let q = BigRational::new(self.0.ratio.numer().clone().into(), self.0.ratio.denom().clone().into());
        fraction(py, &q)
    }
}

#[pyfunction]
fn block_length(i: u64) -> PyResult<BigUint> {
    if i == 0 {
        return Err(PyValueError::new_err("block indices start at 1"));
    }
    Ok(blocks::block_length(i).into_inner())
}

#[pyfunction]
#[pyo3(signature = (i, limits=None))]
fn build_block(i: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<Word> {
    blocks::build_block(i, &lim(limits)).map(Word).py_err()
}

#[pyfunction]
#[pyo3(signature = (n, limits=None))]
fn prefix(n: usize, limits: Option<PyRef<'_, Limits>>) -> PyResult<Word> {
    blocks::prefix(n, &lim(limits)).map(Word).py_err()
}

#[pyfunction]
fn find_block_index(pos: Position) -> PyResult<u64> {
    access::find_block_index(&pos.index()?).py_err()
}

#[pyfunction]
fn reduce_index(pos: Position) -> PyResult<BigUint> {
    access::reduce_index(&pos.index()?).map(BigIndex::into_inner).py_err()
}

/// `b[N]`.
#[pyfunction]
fn bit_at(pos: Position) -> PyResult<u8> {
    Ok(access::bit_at(&pos.index()?))
}

/// `(b[N], reduction steps)`.
#[pyfunction]
fn bit_at_with_steps(pos: Position) -> PyResult<(u8, u32)> {
    Ok(access::bit_at_with_steps(&pos.index()?))
}

/// `b[start .. start + length - 1]`.
#[pyfunction]
#[pyo3(signature = (start, length, limits=None))]
fn window(start: Position, length: usize, limits: Option<PyRef<'_, Limits>>) -> PyResult<Word> {
    access::window(&start.index()?, length, &lim(limits)).map(Word).py_err()
}

#[pyfunction]
fn run_start(n: u64) -> PyResult<BigUint> {
    runs::run_start(n).map(|r| r.start.into_inner()).py_err()
}

#[pyfunction]
#[pyo3(signature = (n, limits=None))]
fn verify_run(n: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<bool> {
    runs::verify_run(n, &lim(limits)).py_err()
}

/// Start of the first `1^n` within `b[1..cutoff]`, or `None`.
#[pyfunction]
#[pyo3(signature = (n, cutoff, limits=None))]
fn scan_first_run(n: u64, cutoff: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<Option<u64>> {
    runs::scan_first_run(n, cutoff, &lim(limits)).map(ScanResult::found).py_err()
}

#[pyfunction]
fn tetration(h: u32) -> PyResult<BigUint> {
    runs::tetration(h).py_err()
}

#[pyfunction]
fn check_tetration_bound(n: u64) -> PyResult<bool> {
    runs::check_tetration_bound(n).py_err()
}

#[pyfunction]
fn is_factor(w: &Word) -> bool {
    factors::is_factor(&w.0)
}

#[pyfunction]
fn complexity(n: u64) -> BigUint {
    factors::complexity(n)
}

#[pyfunction]
fn enumerate_admissible(n: usize) -> PyResult<FactorSet> {
    factors::enumerate_admissible(n).map(FactorSet).py_err()
}

#[pyfunction]
#[pyo3(signature = (prefix_len, n, limits=None))]
fn scan_factors(prefix_len: usize, n: usize, limits: Option<PyRef<'_, Limits>>) -> PyResult<FactorSet> {
    factors::scan_factors(prefix_len, n, &lim(limits)).map(FactorSet).py_err()
}

#[pyfunction]
#[pyo3(signature = (w, cutoff, limits=None))]
fn first_occurrence(w: &Word, cutoff: usize, limits: Option<PyRef<'_, Limits>>) -> PyResult<Option<u64>> {
    factors::first_occurrence(&w.0, cutoff, &lim(limits)).map(ScanResult::found).py_err()
}

#[pyfunction]
#[pyo3(signature = (i, limits=None))]
fn is_good(i: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<bool> {
    structure::is_good(i, &lim(limits)).py_err()
}

#[pyfunction]
fn good_chain(k: usize) -> PyResult<Vec<BigUint>> {
    structure::good_chain(k)
        .map(|c| c.into_iter().map(BigIndex::into_inner).collect())
        .py_err()
}

#[pyfunction]
#[pyo3(signature = (s, i, limits=None))]
fn ends_with_block(s: u64, i: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<bool> {
    structure::ends_with_block(s, i, &lim(limits)).py_err()
}

#[pyfunction]
#[pyo3(signature = (w, prefix_len, limits=None))]
fn count_occurrences(w: &Word, prefix_len: usize, limits: Option<PyRef<'_, Limits>>) -> PyResult<u64> {
    structure::count_occurrences(&w.0, prefix_len, &lim(limits)).py_err()
}

#[pyfunction]
#[pyo3(signature = (n, limits=None))]
fn witness(n: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<Witness> {
    structure::witness(n, &lim(limits)).map(Witness).py_err()
}

/// `a(N)`, the number of 1s in `b[1..N]`.
#[pyfunction]
#[pyo3(signature = (n, limits=None))]
fn ones_prefix_count(n: usize, limits: Option<PyRef<'_, Limits>>) -> PyResult<u64> {
    density::ones_prefix_count(n, &lim(limits)).py_err()
}

/// `s(n)`, the number of 1s in `B_n`.
#[pyfunction]
#[pyo3(signature = (n, limits=None))]
fn block_ones(n: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<u64> {
    density::block_ones(n, &lim(limits)).py_err()
}

#[pyfunction]
#[pyo3(signature = (bits=density::DEFAULT_BITS, limits=None))]
fn alpha_bounds(bits: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<DensityInterval> {
    density::alpha_bounds(bits, &lim(limits)).map(DensityInterval).py_err()
}

#[pyfunction]
#[pyo3(signature = (bits=density::DEFAULT_BITS, limits=None))]
fn beta_bounds(bits: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<DensityInterval> {
    density::beta_bounds(bits, &lim(limits)).map(DensityInterval).py_err()
}

#[pyfunction]
#[pyo3(signature = (n, t, limits=None))]
fn count_identity_check(n: u64, t: u64, limits: Option<PyRef<'_, Limits>>) -> PyResult<bool> {
    density::count_identity_check(n, t, &lim(limits)).py_err()
}

/// Runs the invariant suite; returns `(name, passed, detail, seconds)` rows.
#[pyfunction]
#[pyo3(signature = (suite="fast", limits=None))]
fn verify(suite: &str, limits: Option<PyRef<'_, Limits>>) -> PyResult<Vec<(String, bool, String, f64)>> {
    let suite: Suite = suite.parse().py_err()?;
    let report = checks::run(suite, &lim(limits));
    Ok(report
        .outcomes
        .into_iter()
        .map(|o| (o.name.to_string(), o.passed, o.detail, o.elapsed.as_secs_f64()))
        .collect())
}

#[pymodule]
fn brik(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("BrikError", py.get_type::<BrikError>())?;
    m.add("CapExceededError", py.get_type::<CapExceededError>())?;
    m.add("RepresentationError", py.get_type::<RepresentationError>())?;
    m.add("PrecisionError", py.get_type::<PrecisionError>())?;
    m.add_class::<Limits>()?;
    m.add_class::<Word>()?;
    m.add_class::<Stream>()?;
    m.add_class::<DensityInterval>()?;
    m.add_class::<FactorSet>()?;
    m.add_class::<Witness>()?;
    m.add_function(wrap_pyfunction!(block_length, m)?)?;
    m.add_function(wrap_pyfunction!(build_block, m)?)?;
    m.add_function(wrap_pyfunction!(prefix, m)?)?;
    m.add_function(wrap_pyfunction!(find_block_index, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_index, m)?)?;
    m.add_function(wrap_pyfunction!(bit_at, m)?)?;
    m.add_function(wrap_pyfunction!(bit_at_with_steps, m)?)?;
    m.add_function(wrap_pyfunction!(window, m)?)?;
    m.add_function(wrap_pyfunction!(run_start, m)?)?;
    m.add_function(wrap_pyfunction!(verify_run, m)?)?;
    m.add_function(wrap_pyfunction!(scan_first_run, m)?)?;
    m.add_function(wrap_pyfunction!(tetration, m)?)?;
    m.add_function(wrap_pyfunction!(check_tetration_bound, m)?)?;
    m.add_function(wrap_pyfunction!(is_factor, m)?)?;
    m.add_function(wrap_pyfunction!(complexity, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(scan_factors, m)?)?;
    m.add_function(wrap_pyfunction!(first_occurrence, m)?)?;
    m.add_function(wrap_pyfunction!(is_good, m)?)?;
    m.add_function(wrap_pyfunction!(good_chain, m)?)?;
    m.add_function(wrap_pyfunction!(ends_with_block, m)?)?;
    m.add_function(wrap_pyfunction!(count_occurrences, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(ones_prefix_count, m)?)?;
    m.add_function(wrap_pyfunction!(block_ones, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(beta_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(count_identity_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
