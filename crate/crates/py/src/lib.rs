//! Python bindings. Every function returns the same JSON report as the
//! corresponding `alexlab` command, as a string.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

use alexlab::abelian::abelianization;
use alexlab::chen::{chen_ranks, chen_ranks_with, modp_chen_ranks, ChenMethod};
use alexlab::extensions::{format_extension, parse_extension, verify_transfer};
use alexlab::jumploci::{cv_membership, jump_ideal, CharacterPoint, JumpFlavor};
use alexlab::lie::{cup_data, holonomy_chen_ranks, resonance_ideal};
use alexlab::presentation::{resolve_group, GroupPresentation};
use alexlab::report::{self, envelope};
use alexlab::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::Invalid(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn group(input: &str) -> PyResult<GroupPresentation> {
    resolve_group(input).map_err(py_err)
}

fn text(v: Value) -> String {
    report::to_json(&v)
}

fn jump_flavor(name: &str) -> PyResult<JumpFlavor> {
    match name {
        "V" | "v" => Ok(JumpFlavor::V),
        "W" | "w" => Ok(JumpFlavor::W),
        "Y" | "y" => Ok(JumpFlavor::Y),
        other => Err(PyValueError::new_err(format!("unknown flavor `{other}`"))),
    }
}

/// Abelianization of a presentation or `builtin:NAME`.
#[pyfunction]
fn abelianize(group_text: &str) -> PyResult<String> {
    let g = group(group_text)?;
    Ok(text(envelope("abelianize", &g.canonical(), report::abelianization(&abelianization(&g)))))
}

/// Chen ranks `θ_1..θ_N`; `method` is `auto`, `koszul` or `crowell`.
#[pyfunction]
#[pyo3(signature = (group_text, max_n, method = "auto"))]
fn chen(group_text: &str, max_n: usize, method: &str) -> PyResult<String> {
    let g = group(group_text)?;
    let th = match method {
        "auto" => chen_ranks(&g, max_n),
        "koszul" => chen_ranks_with(&g, max_n, ChenMethod::Koszul),
        "crowell" => chen_ranks_with(&g, max_n, ChenMethod::Crowell),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
    .map_err(py_err)?;
    Ok(text(envelope("chen", &g.canonical(), json!({"theta": report::dims(&th)}))))
}

#[pyfunction]
fn chen_p(group_text: &str, prime: u64, max_n: usize) -> PyResult<String> {
    let g = group(group_text)?;
    let th = modp_chen_ranks(&g, prime, max_n).map_err(py_err)?;
    Ok(text(envelope("chen-p", &g.canonical(), json!({"p": prime, "theta_p": report::dims(&th)}))))
}

#[pyfunction]
#[pyo3(signature = (group_text, depth, flavor = "V"))]
fn cv_ideal(group_text: &str, depth: usize, flavor: &str) -> PyResult<String> {
    let g = group(group_text)?;
    let ideal = jump_ideal(&g, depth, jump_flavor(flavor)?).map_err(py_err)?;
    Ok(text(envelope(
        "cv-ideal",
        &g.canonical(),
        json!({"depth": depth, "flavor": flavor.to_uppercase(), "ideal": report::ideal(&ideal)}),
    )))
}

/// Whether a character lies in `V_k` or `W_k`. The point uses the CLI
/// syntax, e.g. `free=[-1];torsion=[1]`.
#[pyfunction]
#[pyo3(signature = (group_text, point, depth = 1, flavor = "V"))]
fn cv_member(group_text: &str, point: &str, depth: usize, flavor: &str) -> PyResult<String> {
    let g = group(group_text)?;
    let chi: CharacterPoint = point.parse().map_err(py_err)?;
    let member = cv_membership(&g, &chi, depth, jump_flavor(flavor)?).map_err(py_err)?;
    Ok(text(envelope(
        "cv-member",
        &g.canonical(),
        json!({"depth": depth, "flavor": flavor.to_uppercase(), "point": report::point(&chi), "member": member}),
    )))
}

#[pyfunction]
fn resonance(group_text: &str, depth: usize) -> PyResult<String> {
    let g = group(group_text)?;
    let cd = cup_data(&g).map_err(py_err)?;
    let ideal = resonance_ideal(&cd, depth).map_err(py_err)?;
    Ok(text(envelope("resonance", &g.canonical(), json!({"depth": depth, "ideal": report::ideal(&ideal)}))))
}

#[pyfunction]
fn holonomy_chen(group_text: &str, max_n: usize) -> PyResult<String> {
    let g = group(group_text)?;
    let th = cup_data(&g).and_then(|cd| holonomy_chen_ranks(&cd, max_n)).map_err(py_err)?;
    Ok(text(envelope("holonomy-chen", &g.canonical(), json!({"theta_bar": report::dims(&th)}))))
}

/// Chen-rank transfer check for a split extension (`tree:GRAPH`,
/// `klein_bottle`, or `kernel: ..; quotient: ..; s: a -> word`).
#[pyfunction]
#[pyo3(signature = (extension, max_n = 6, prime = None))]
fn check_extension(extension: &str, max_n: usize, prime: Option<u64>) -> PyResult<String> {
    let ext = parse_extension(extension).map_err(py_err)?;
    let rep = verify_transfer(&ext, max_n, prime).map_err(py_err)?;
    Ok(text(envelope("check-extension", &format_extension(&ext), report::extension_report(&rep))))
}

#[pymodule]
pub fn alexlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", report::VERSION)?;
    m.add_function(wrap_pyfunction!(abelianize, m)?)?;
    m.add_function(wrap_pyfunction!(chen, m)?)?;
    m.add_function(wrap_pyfunction!(chen_p, m)?)?;
    m.add_function(wrap_pyfunction!(cv_ideal, m)?)?;
    m.add_function(wrap_pyfunction!(cv_member, m)?)?;
    m.add_function(wrap_pyfunction!(resonance, m)?)?;
    m.add_function(wrap_pyfunction!(holonomy_chen, m)?)?;
    m.add_function(wrap_pyfunction!(check_extension, m)?)?;
    Ok(())
}
