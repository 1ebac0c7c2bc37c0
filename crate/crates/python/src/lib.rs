#![allow(clippy::useless_conversion)]

//! Python bindings for the `sologic` workbench.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sologic::classical::{self, parse_interp, parse_model1, parse_model2, write_model1, write_model2};
use sologic::coding;
use sologic::deduction::{self, Logic};
use sologic::kripke::{self, parse_kinterp, parse_kmodel1, parse_kmodel2, write_kmodel1, write_kmodel2};
use sologic::syntax;
use sologic::workbench::examples::{paper_examples as run_examples, ExamplesConfig, StockLevel};
use sologic::workbench::search::{search, SearchBounds, SearchStatus, Semantics};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, eq, module = "sologic")]
#[derive(Clone, PartialEq)]
struct Formula {
    inner: syntax::Formula,
}

#[pymethods]
impl Formula {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        syntax::parse_formula(src).map(|inner| Formula { inner }).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.inner.to_string())
    }

    fn is_l1_pure(&self) -> bool {
        self.inner.is_l1_pure()
    }

    fn is_l2_pure(&self) -> bool {
        self.inner.is_l2_pure()
    }

    fn is_closed(&self) -> bool {
        self.inner.is_closed()
    }

    fn depth(&self) -> usize {
        self.inner.depth()
    }

    /// The first-order coding of an L2-pure formula.
    fn star(&self) -> PyResult<Formula> {
        coding::star(&self.inner).map(|inner| Formula { inner }).map_err(value_error)
    }

    /// The reverse coding of an L1-pure formula.
    fn rev(&self) -> PyResult<Formula> {
        coding::rev(&self.inner).map(|inner| Formula { inner }).map_err(value_error)
    }

    fn normalize_vacuous(&self) -> Formula {
        Formula {
            inner: self.inner.normalize_vacuous(),
        }
    }

    fn alpha_eq(&self, other: &Formula) -> bool {
        syntax::alpha_eq(&self.inner, &other.inner)
    }

    /// A checked proof of `A <-> rev(star(A))`.
    #[pyo3(signature = (classical = false))]
    fn idempotent_proof(&self, classical: bool) -> PyResult<Proof> {
        if !self.inner.is_l2_pure() {
            return Err(value_error("the formula is not L2-pure"));
        }
        let logic = if classical { Logic::Classical } else { Logic::Intuitionistic };
        Ok(Proof {
            inner: deduction::prove_idempotent(&self.inner, logic),
        })
    }
}

#[pyclass(frozen, module = "sologic")]
#[derive(Clone)]
struct Proof {
    inner: deduction::Proof,
}

#[pymethods]
impl Proof {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        deduction::parse_proof(src).map(|inner| Proof { inner }).map_err(value_error)
    }

    fn __str__(&self) -> String {
        deduction::write_proof(&self.inner)
    }

    #[getter]
    fn conclusion(&self) -> Formula {
        Formula {
            inner: self.inner.seq.concl.clone(),
        }
    }

    #[getter]
    fn hypotheses(&self) -> Vec<Formula> {
        self.inner.seq.hyps.iter().map(|h| Formula { inner: h.clone() }).collect()
    }

    #[getter]
    fn sequent(&self) -> String {
        self.inner.seq.to_string()
    }

    /// `None` when the kernel accepts, otherwise the rejection message.
    fn check(&self) -> Option<String> {
        deduction::check(&self.inner).err().map(|r| r.to_string())
    }

    fn translate_down(&self) -> PyResult<Proof> {
        deduction::translate_down(&self.inner).map(|inner| Proof { inner }).map_err(value_error)
    }

    fn translate_up(&self) -> PyResult<Proof> {
        deduction::translate_up(&self.inner).map(|inner| Proof { inner }).map_err(value_error)
    }

    /// From a translated first-order proof back to a proof of `hyps ⊢ concl`.
    fn translate_back(&self, hyps: Vec<Formula>, concl: &Formula) -> PyResult<Proof> {
        let gamma: Vec<syntax::Formula> = hyps.into_iter().map(|h| h.inner).collect();
        deduction::derive_transprooftrois(&self.inner, &gamma, &concl.inner)
            .map(|inner| Proof { inner })
            .map_err(value_error)
    }
}

enum Classical {
    First(classical::ClassicalModel1),
    Second(classical::ClassicalModel2),
}

#[pyclass(frozen, module = "sologic")]
struct ClassicalModel {
    inner: Classical,
}

#[pymethods]
impl ClassicalModel {
    /// Parses a `(model1 ...)` or `(model2 ...)` file.
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        let inner = if src.trim_start().starts_with("(model1") {
            Classical::First(parse_model1(src).map_err(value_error)?)
        } else {
            Classical::Second(parse_model2(src).map_err(value_error)?)
        };
        Ok(ClassicalModel { inner })
    }

    fn __str__(&self) -> String {
        match &self.inner {
            Classical::First(m) => write_model1(m),
            Classical::Second(m) => write_model2(m),
        }
    }

    #[getter]
    fn order(&self) -> u8 {
        match self.inner {
            Classical::First(_) => 1,
            Classical::Second(_) => 2,
        }
    }

    /// The translated second-order model of a first-order model.
    fn rev(&self) -> PyResult<ClassicalModel> {
        match &self.inner {
            Classical::First(m) => Ok(ClassicalModel {
                inner: Classical::Second(classical::rev_model(m)),
            }),
            Classical::Second(_) => Err(value_error("rev applies to first-order models")),
        }
    }

    #[pyo3(signature = (formula, interp = "(interp)"))]
    fn eval(&self, formula: &Formula, interp: &str) -> PyResult<bool> {
        match &self.inner {
            Classical::First(m) => {
                let s = parse_interp(&m.elems, interp).map_err(value_error)?;
                classical::eval1(m, &s, &formula.inner).map_err(value_error)
            }
            Classical::Second(m) => {
                let s = parse_interp(&m.elems, interp).map_err(value_error)?;
                classical::eval2(m, &s, &formula.inner).map_err(value_error)
            }
        }
    }

    fn valid(&self, formula: &Formula) -> PyResult<bool> {
        match &self.inner {
            Classical::First(m) => classical::valid1(m, &formula.inner),
            Classical::Second(m) => classical::valid2(m, &formula.inner),
        }
        .map_err(value_error)
    }
}

enum Kripke {
    First(kripke::KripkeModel1),
    Second(kripke::KripkeModel2),
}

#[pyclass(frozen, module = "sologic")]
struct KripkeModel {
    inner: Kripke,
}

impl KripkeModel {
    fn frame(&self) -> &kripke::Frame {
        match &self.inner {
            Kripke::First(k) => &k.frame,
            Kripke::Second(k) => &k.frame,
        }
    }
}

#[pymethods]
impl KripkeModel {
    /// Parses a `(kmodel1 ...)` or `(kmodel2 ...)` file.
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        let inner = if src.trim_start().starts_with("(kmodel1") {
            Kripke::First(parse_kmodel1(src).map_err(value_error)?)
        } else {
            Kripke::Second(parse_kmodel2(src).map_err(value_error)?)
        };
        Ok(KripkeModel { inner })
    }

    /// The two-point model refuting Peirce's law.
    #[staticmethod]
    fn peirce() -> KripkeModel {
        KripkeModel {
            inner: Kripke::Second(kripke::peirce_countermodel().0),
        }
    }

    fn __str__(&self) -> String {
        match &self.inner {
            Kripke::First(k) => write_kmodel1(k),
            Kripke::Second(k) => write_kmodel2(k),
        }
    }

    #[getter]
    fn points(&self) -> Vec<String> {
        self.frame().poset.names().to_vec()
    }

    fn is_full(&self) -> bool {
        match &self.inner {
            Kripke::First(_) => false,
            Kripke::Second(k) => kripke::is_full_k(k),
        }
    }

    fn rev(&self) -> PyResult<KripkeModel> {
        match &self.inner {
            Kripke::First(k) => Ok(KripkeModel {
                inner: Kripke::Second(kripke::rev_kmodel(k)),
            }),
            Kripke::Second(_) => Err(value_error("rev applies to first-order models")),
        }
    }

    /// Forcing at `point`; the interpretation is restricted from its level.
    #[pyo3(signature = (point, formula, interp = "(interp)"))]
    fn force(&self, point: &str, formula: &Formula, interp: &str) -> PyResult<bool> {
        let poset = &self.frame().poset;
        let q = poset.point(point).ok_or_else(|| value_error(format!("unknown point {point}")))?;
        let labels = match &self.inner {
            Kripke::First(_) => Default::default(),
            Kripke::Second(k) => k.labels.clone(),
        };
        let s = parse_kinterp(self.frame(), &labels, interp).map_err(value_error)?;
        if !poset.leq(s.level, q) {
            return Err(value_error(format!("point {point} is not above the interpretation's level")));
        }
        let s = s.restrict(poset, q);
        match &self.inner {
            Kripke::First(k) => kripke::force1(k, &s, &formula.inner),
            Kripke::Second(k) => kripke::force2(k, &s, &formula.inner),
        }
        .map_err(value_error)
    }

    fn valid(&self, formula: &Formula) -> PyResult<bool> {
        match &self.inner {
            Kripke::First(k) => kripke::valid1(k, &formula.inner),
            Kripke::Second(k) => kripke::valid2(k, &formula.inner),
        }
        .map_err(value_error)
    }
}

#[pyfunction]
fn encode(src: &str) -> PyResult<String> {
    Formula::new(src)?.star().map(|f| f.__str__())
}

#[pyfunction]
fn decode(src: &str) -> PyResult<String> {
    Formula::new(src)?.rev().map(|f| f.__str__())
}

/// Bounded countermodel search; returns a dict with `status`,
/// `models_examined` and, on success, `model`, `interp` and `point`.
#[pyfunction]
#[pyo3(signature = (formula, bounds = "", semantics = "kripke", full_only = false))]
fn countermodel<'py>(
    py: Python<'py>,
    formula: &Formula,
    bounds: &str,
    semantics: &str,
    full_only: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let bounds: SearchBounds = bounds.parse().map_err(value_error)?;
    let semantics: Semantics = semantics.parse().map_err(value_error)?;
    let res = search(&formula.inner, &bounds, semantics, full_only).map_err(value_error)?;
    let d = PyDict::new_bound(py);
    let status = match res.status {
        SearchStatus::CountermodelFound => "countermodel-found",
        SearchStatus::Exhausted => "exhausted",
        SearchStatus::Timeout => "timeout",
    };
    d.set_item("status", status)?;
    d.set_item("models_examined", res.models_examined)?;
    if let Some(c) = res.countermodel {
        d.set_item("model", c.model)?;
        d.set_item("interp", c.interp)?;
        d.set_item("point", c.point)?;
        d.set_item("description", c.description)?;
    }
    Ok(d)
}

/// The worked examples and lemma checks as `(name, status, evidence)`.
#[pyfunction]
#[pyo3(signature = (stock = "default", seed = sologic::stock::DEFAULT_SEED))]
fn paper_examples(stock: &str, seed: u64) -> PyResult<Vec<(String, String, String)>> {
    let level: StockLevel = stock.parse().map_err(value_error)?;
    let cfg = ExamplesConfig {
        level,
        seed,
        peirce_model: None,
    };
    Ok(run_examples(&cfg)
        .items
        .into_iter()
        .map(|i| (i.name, i.status.as_str().to_string(), i.evidence))
        .collect())
}

#[pymodule]
fn sologic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Formula>()?;
    m.add_class::<Proof>()?;
    m.add_class::<ClassicalModel>()?;
    m.add_class::<KripkeModel>()?;
    m.add_function(wrap_pyfunction!(encode, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(countermodel, m)?)?;
    m.add_function(wrap_pyfunction!(paper_examples, m)?)?;
    Ok(())
}
