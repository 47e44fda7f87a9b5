//! Brute-force references shared by the oracle and acceptance suites.
//!
//! Nothing here calls into the library's basis construction, Hamiltonian
//! assembly, or propagator.

#![allow(dead_code)]

use std::collections::HashMap;

use faer::{Mat, Side};
use num_complex::Complex64;

use qlm_core::basis::PhysicalBasis;
use qlm_core::model::{ModelKind, ModelSpec};

type C = Complex64;

/// Configuration in the full space: occupations and twice-link values.
pub type Config = (Vec<u8>, Vec<i32>);

pub fn config_of(basis: &PhysicalBasis, b: usize) -> Config {
    let s = basis.state(b);
    (s.occupations().collect(), s.links().map(|l| l.twice()).collect())
}

/// Every (matter, link) configuration of the unconstrained space.
pub fn all_configs(twice_s: u32, length: usize) -> Vec<Config> {
    let link_dim = twice_s as usize + 1;
    let mut out = Vec::new();
    let total_links = link_dim.pow(length as u32);
    for matter in 0..(1u32 << length) {
        let occ: Vec<u8> = (0..length).map(|i| ((matter >> i) & 1) as u8).collect();
        for mut code in 0..total_links {
            let mut links = Vec::with_capacity(length);
            for _ in 0..length {
                links.push(-(twice_s as i32) + 2 * (code % link_dim) as i32);
                code /= link_dim;
            }
            out.push((occ.clone(), links));
        }
    }
    out
}

/// Gauss law `ℓ_{j−1} + ℓ_j + n_j = 0` at every site, in twice-units.
pub fn is_physical(c: &Config) -> bool {
    let len = c.0.len();
    (0..len).all(|j| c.1[(j + len - 1) % len] + c.1[j] + 2 * c.0[j] as i32 == 0)
}

/// Local operator as a sparse list of `(out, in, amplitude)` on one factor.
pub type Local = Vec<(i32, i32, f64)>;

/// `σ⁻ = |0⟩⟨1|` on a matter site.
pub fn sigma_minus() -> Local {
    vec![(0, 1, 1.0)]
}

/// `ŝ⁺/√(S(S+1))` for QLM or `τ̂⁺` for TSM, in twice-units of m.
pub fn raising(twice_s: u32, kind: ModelKind) -> Local {
    let s = twice_s as f64 / 2.0;
    let c = s * (s + 1.0);
    let s2 = twice_s as i32;
    (-s2..s2)
        .step_by(2)
        .map(|mt| {
            let m = mt as f64 / 2.0;
            let amp = match kind {
                ModelKind::Qlm => (c - m * (m + 1.0)).sqrt() / c.sqrt(),
                ModelKind::Tsm => 1.0,
            };
            (mt + 2, mt, amp)
        })
        .collect()
}

pub fn transpose(op: &Local) -> Local {
    op.iter().map(|&(o, i, a)| (i, o, a)).collect()
}

/// `H|c⟩` in the full space, built from local operators on each factor.
pub fn full_apply(model: &ModelSpec, c: &Config) -> HashMap<Config, f64> {
    let len = c.0.len();
    let mut out: HashMap<Config, f64> = HashMap::new();
    let sz: f64 = c.0.iter().map(|&n| 2.0 * n as f64 - 1.0).sum();
    let l2: f64 = c.1.iter().map(|&l| (l as f64 / 2.0).powi(2)).sum();
    *out.entry(c.clone()).or_default() += model.mu * sz + 0.5 * model.kappa * model.kappa * l2;

    let sm = sigma_minus();
    let sp = transpose(&sm);
    let up = raising(model.spin.twice_s(), model.kind);
    let down = transpose(&up);
    for i in 0..len {
        let k = (i + 1) % len;
        // σ⁻_i U_i σ⁻_{i+1} and its conjugate σ⁺_{i+1} U†_i σ⁺_i
        for (a_op, u_op, b_op) in [(&sm, &up, &sm), (&sp, &down, &sp)] {
            for &(ao, ai, aa) in a_op.iter() {
                if c.0[i] as i32 != ai {
                    continue;
                }
                for &(uo, ui, ua) in u_op.iter() {
                    if c.1[i] != ui {
                        continue;
                    }
                    for &(bo, bi, ba) in b_op.iter() {
                        if c.0[k] as i32 != bi {
                            continue;
                        }
                        let mut t = c.clone();
                        t.0[i] = ao as u8;
                        t.1[i] = uo;
                        t.0[k] = bo as u8;
                        *out.entry(t).or_default() += 0.5 * model.j * aa * ua * ba;
                    }
                }
            }
        }
    }
    out
}

pub fn oracle_matrix(model: &ModelSpec, basis: &PhysicalBasis) -> Mat<f64> {
    let dim = basis.dim();
    let mut m = Mat::zeros(dim, dim);
    let index: HashMap<Config, usize> = (0..dim).map(|b| (config_of(basis, b), b)).collect();
    for col in 0..dim {
        for (target, amp) in full_apply(model, &config_of(basis, col)) {
            if amp == 0.0 {
                continue;
            }
            // gauge closure: H never leaves the physical sector
            assert!(is_physical(&target), "image {target:?} violates Gauss's law");
            let row = index[&target];
            m[(row, col)] += amp;
        }
    }
    m
}

pub fn max_abs_diff(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let mut m = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            m = m.max((a[(i, j)] - b[(i, j)]).abs());
        }
    }
    m
}

/// Eigenpairs straight from faer, independent of the library's wrapper.
pub fn eigh(m: &Mat<f64>) -> (Vec<f64>, Mat<f64>) {
    let eig = m.self_adjoint_eigen(Side::Lower).unwrap();
    let s = eig.S();
    ((0..m.nrows()).map(|k| s[k]).collect(), eig.U().to_owned())
}

/// `exp(−iHt)v` from a fresh dense eigendecomposition.
pub fn dense_oracle(h: &Mat<f64>, v: &[C], t: f64) -> Vec<C> {
    let (values, q) = eigh(h);
    let n = v.len();
    let mut coeff = vec![C::new(0.0, 0.0); n];
    for k in 0..n {
        let proj: C = (0..n).map(|b| v[b] * q[(b, k)]).sum();
        coeff[k] = proj * C::from_polar(1.0, -values[k] * t);
    }
    (0..n).map(|b| (0..n).map(|k| coeff[k] * q[(b, k)]).sum()).collect()
}

