//! Shared fixtures for the kernel benchmarks.

use num_complex::Complex64;
use qlm_core::{build_hamiltonian, enumerate_basis, vacuum_state, ModelKind, ModelSpec, SparseHamiltonian, SpinValue};

/// QLM Hamiltonian at the default couplings and the +S vacuum as a start vector.
pub fn fixture(twice_s: u32, length: usize) -> (SparseHamiltonian, Vec<Complex64>) {
    let spin = SpinValue::new(twice_s).expect("valid spin");
    let model = ModelSpec::new(spin, length, ModelKind::Qlm).expect("valid model");
    let basis = enumerate_basis(&model);
    let h = build_hamiltonian(&basis);
    let mut v = vec![Complex64::new(0.0, 0.0); basis.dim()];
    v[vacuum_state(&basis, spin.s()).expect("vacuum exists")] = Complex64::new(1.0, 0.0);
    (h, v)
}

/// Model used by the enumeration benchmark.
pub fn model(twice_s: u32, length: usize) -> ModelSpec {
    ModelSpec::new(SpinValue::new(twice_s).expect("valid spin"), length, ModelKind::Qlm).expect("valid model")
}
