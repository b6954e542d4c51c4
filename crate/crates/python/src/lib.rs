//! Python bindings: the `wreathkit_py` extension module.
//!
//! Exposes group handles built from the same description language as the
//! CLI, opaque canonical elements and the decision procedures:
//!
//! ```python
//! import wreathkit_py as wk
//! g = wk.Group("wr(Z/2, Z)")
//! x = g.evaluate("a1 t1")
//! y = g.evaluate("t1 a1")
//! assert g.cp(x, y)
//! assert g.pp(g.evaluate("t1"), g.evaluate("t1^5")) == 5
//! ```

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wreathkit_core::dsl::{parse_group_expr, parse_word};
use wreathkit_core::group::{ConjugacyAnswer, Order, PowerAnswer};
use wreathkit_core::selftest;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A group handle: immutable, cheap to share.
#[pyclass(module = "wreathkit_py")]
struct Group {
    inner: wreathkit_core::Group,
    text: String,
    id: u64,
}

/// An opaque canonical element of the group that produced it.
#[pyclass(module = "wreathkit_py", skip_from_py_object)]
#[derive(Clone)]
struct GroupElement {
    elem: wreathkit_core::Element,
    group_id: u64,
}

impl Group {
    fn wrap(&self, elem: wreathkit_core::Element) -> GroupElement {
        GroupElement {
            elem,
            group_id: self.id,
        }
    }

    fn check(&self, e: &GroupElement) -> PyResult<()> {
        if e.group_id != self.id {
            return Err(PyValueError::new_err(
                "element belongs to a different group handle",
            ));
        }
        Ok(())
    }
}

#[pymethods]
impl Group {
    /// Build a group from a description like "wr(Z/2, Z)", "BS(1,2)",
    /// "product(Z^2, Z/4)" or "freesolvable(2, 3)".
    #[new]
    #[pyo3(signature = (description, beta = wreathkit_core::DEFAULT_BETA))]
    fn new(description: &str, beta: u32) -> PyResult<Self> {
        let expr = parse_group_expr(description).map_err(err)?;
        let inner = expr.build(beta).map_err(err)?;
        Ok(Group {
            inner,
            text: description.to_string(),
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
        })
    }

    /// Generator names accepted in words, in index order.
    fn generators(&self) -> Vec<String> {
        self.inner.generator_names()
    }

    fn identity(&self) -> GroupElement {
        self.wrap(self.inner.identity())
    }

    /// Evaluate a word ("a1 t1^-1 a1^3") to a canonical element.
    fn evaluate(&self, word: &str) -> PyResult<GroupElement> {
        let w = parse_word(&self.inner, word).map_err(err)?;
        Ok(self.wrap(self.inner.evaluate(&w).map_err(err)?))
    }

    fn multiply(&self, x: &GroupElement, y: &GroupElement) -> PyResult<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.wrap(self.inner.multiply(&x.elem, &y.elem)))
    }

    fn invert(&self, x: &GroupElement) -> PyResult<GroupElement> {
        self.check(x)?;
        Ok(self.wrap(self.inner.invert(&x.elem)))
    }

    fn power(&self, x: &GroupElement, k: BigInt) -> PyResult<GroupElement> {
        self.check(x)?;
        Ok(self.wrap(self.inner.power(&x.elem, &k)))
    }

    /// Word problem: is x the identity?
    fn wp(&self, x: &GroupElement) -> PyResult<bool> {
        self.check(x)?;
        Ok(self.inner.wp(&x.elem))
    }

    /// Conjugacy problem.
    fn cp(&self, x: &GroupElement, y: &GroupElement) -> PyResult<bool> {
        self.check(x)?;
        self.check(y)?;
        self.inner.cp(&x.elem, &y.elem).map_err(err)
    }

    /// Conjugacy with a best-effort witness: (verdict, top-group witness
    /// rendering or None).
    fn conjugacy(&self, x: &GroupElement, y: &GroupElement) -> PyResult<(bool, Option<String>)> {
        self.check(x)?;
        self.check(y)?;
        Ok(match self.inner.conjugacy(&x.elem, &y.elem).map_err(err)? {
            ConjugacyAnswer::Conjugate { witness_top } => {
                (true, witness_top.map(|d| d.to_string()))
            }
            ConjugacyAnswer::NotConjugate => (false, None),
        })
    }

    /// Power problem: the exponent k with x^k = y, or None.
    fn pp(&self, x: &GroupElement, y: &GroupElement) -> PyResult<Option<BigInt>> {
        self.check(x)?;
        self.check(y)?;
        Ok(match self.inner.pp(&x.elem, &y.elem).map_err(err)? {
            PowerAnswer::Solution(k) => Some(k),
            PowerAnswer::NoSolution => None,
        })
    }

    /// Cyclic subgroup membership: is y a power of x?
    fn csgmp(&self, x: &GroupElement, y: &GroupElement) -> PyResult<bool> {
        self.check(x)?;
        self.check(y)?;
        self.inner.csgmp(&x.elem, &y.elem).map_err(err)
    }

    /// Cyclic submonoid membership: is y a non-negative power of x?
    fn csmmp(&self, x: &GroupElement, y: &GroupElement) -> PyResult<bool> {
        self.check(x)?;
        self.check(y)?;
        self.inner.csmmp(&x.elem, &y.elem).map_err(err)
    }

    /// Element order, or None for infinite order.
    fn order(&self, x: &GroupElement) -> PyResult<Option<BigInt>> {
        self.check(x)?;
        Ok(match self.inner.order(&x.elem).map_err(err)? {
            Order::Finite(n) => Some(n),
            Order::Infinity => None,
        })
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_torsion_free(&self) -> bool {
        self.inner.is_torsion_free()
    }

    fn smoothness_bound(&self) -> u32 {
        self.inner.smoothness_bound()
    }

    fn __repr__(&self) -> String {
        format!("Group({:?})", self.text)
    }
}

#[pymethods]
impl GroupElement {
    fn __repr__(&self) -> String {
        format!("GroupElement({})", self.elem)
    }

    fn __str__(&self) -> String {
        self.elem.to_string()
    }

    fn __eq__(&self, other: &GroupElement) -> bool {
        self.group_id == other.group_id && self.elem == other.elem
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.elem.hash(&mut h);
        h.finish()
    }
}

/// Run the acceptance suite; returns (passed, failed, lines).
#[pyfunction]
#[pyo3(signature = (full = false))]
fn run_selftest(full: bool) -> (usize, usize, Vec<String>) {
    let scale = if full {
        selftest::Scale::Full
    } else {
        selftest::Scale::Quick
    };
    let report = selftest::run(scale);
    (report.passed(), report.failed(), report.lines())
}

#[pymodule]
fn wreathkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Group>()?;
    m.add_class::<GroupElement>()?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}
