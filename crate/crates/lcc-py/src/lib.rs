use pyo3::prelude::*;

#[pymodule]
fn lcc(_py: Python<'_>, _m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
