//! Sparse Hamiltonians of the quantum link model and truncated Schwinger model
//! restricted to the physical sector.
//!
//! Each link term `σ⁻_i U_i σ⁻_{i+1} + h.c.` annihilates a particle pair on
//! sites `(i, i+1)` while raising the link between them. The only difference
//! between the two models is the raising amplitude `U`:
//!
//! * QLM: `⟨m+1| ŝ⁺ |m⟩ / √(S(S+1)) = √(S(S+1) − m(m+1)) / √(S(S+1))`
//! * TSM: `⟨m+1| τ̂⁺ |m⟩ = 1`
//!
//! The diagonal is `μ Σ σ^z_i + κ²/2 Σ ℓ_i²` in both cases.

use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::PhysicalBasis;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::model::{ModelKind, ModelSpec};

/// Real symmetric Hamiltonian over a [`PhysicalBasis`].
///
/// `offdiag` stores each coupled pair once with `row < col`; the lower
/// triangle is implied. A row-compressed copy of the full matrix backs
/// [`SparseHamiltonian::apply`].
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    model: ModelSpec,
    diagonal: Vec<f64>,
    offdiag: Vec<(u32, u32, f64)>,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

/// Quantum link model Hamiltonian.
pub fn build_qlm(basis: &PhysicalBasis) -> Result<SparseHamiltonian> {
    check_kind(basis, ModelKind::Qlm)?;
    Ok(build(basis, ModelKind::Qlm))
}

/// Truncated Schwinger model Hamiltonian.
pub fn build_tsm(basis: &PhysicalBasis) -> Result<SparseHamiltonian> {
    check_kind(basis, ModelKind::Tsm)?;
    Ok(build(basis, ModelKind::Tsm))
}

/// Builds whichever Hamiltonian the basis' model names.
pub fn build_hamiltonian(basis: &PhysicalBasis) -> SparseHamiltonian {
    build(basis, basis.model().kind)
}

fn check_kind(basis: &PhysicalBasis, requested: ModelKind) -> Result<()> {
    let kind = basis.model().kind;
    if kind != requested {
        return Err(Error::ModelKindMismatch { basis: kind, requested });
    }
    Ok(())
}

/// Amplitude of the pair-annihilation term that raises a link from `m` to `m+1`
/// (`m` given as twice its value).
pub fn raising_amplitude(model: &ModelSpec, kind: ModelKind, m_twice: i32) -> f64 {
    match kind {
        ModelKind::Qlm => {
            let c = model.spin.casimir();
            let m = f64::from(m_twice) * 0.5;
            model.j / (2.0 * c.sqrt()) * (c - m * (m + 1.0)).sqrt()
        }
        ModelKind::Tsm => model.j / 2.0,
    }
}

fn build(basis: &PhysicalBasis, kind: ModelKind) -> SparseHamiltonian {
    let model = basis.model();
    let len = model.length;
    let s2 = model.spin.twice_s() as i32;
    let dim = basis.dim();
    assert!(dim <= u32::MAX as usize, "basis too large for u32 indices");

    let half_kappa_sq = 0.5 * model.kappa * model.kappa;
    let mut diagonal = Vec::with_capacity(dim);
    let mut offdiag = Vec::new();

    for (b, state) in basis.states().iter().enumerate() {
        let particles = state.particle_count() as f64;
        let sigma_z_sum = 2.0 * particles - len as f64;
        let link_sq: f64 = (0..len).map(|i| state.link(i)).map(|l| l.mul_f64(l)).sum();
        diagonal.push(model.mu * sigma_z_sum + half_kappa_sq * link_sq);

        for i in 0..len {
            let next = (i + 1) % len;
            let m = state.link_twice(i);
            if state.occupation(i) == 1 && state.occupation(next) == 1 && m + 2 <= s2 {
                let target = state.with_pair(i, false, m + 2);
                let t = basis
                    .lookup(&target)
                    .expect("pair annihilation preserves Gauss's law");
                let amp = raising_amplitude(model, kind, m);
                let (r, c) = if b < t { (b, t) } else { (t, b) };
                offdiag.push((r as u32, c as u32, amp));
            }
        }
    }
    offdiag.sort_by_key(|&(r, c, _)| (r, c));

    // Row-compressed full symmetric pattern, columns ascending per row.
    let mut counts = vec![0usize; dim];
    for &(r, c, _) in &offdiag {
        counts[r as usize] += 1;
        counts[c as usize] += 1;
    }
    let mut row_ptr = Vec::with_capacity(dim + 1);
    row_ptr.push(0);
    for n in &counts {
        row_ptr.push(row_ptr.last().unwrap() + n);
    }
    let nnz = *row_ptr.last().unwrap();
    let mut cols = vec![0u32; nnz];
    let mut vals = vec![0.0; nnz];
    let mut fill = row_ptr[..dim].to_vec();
    for &(r, c, a) in &offdiag {
        for (row, col) in [(r, c), (c, r)] {
            let slot = &mut fill[row as usize];
            cols[*slot] = col;
            vals[*slot] = a;
            *slot += 1;
        }
    }
    for r in 0..dim {
        let (lo, hi) = (row_ptr[r], row_ptr[r + 1]);
        let mut entries: Vec<(u32, f64)> = cols[lo..hi].iter().copied().zip(vals[lo..hi].iter().copied()).collect();
        entries.sort_by_key(|e| e.0);
        for (k, (c, a)) in entries.into_iter().enumerate() {
            cols[lo + k] = c;
            vals[lo + k] = a;
        }
    }

    SparseHamiltonian {
        model: ModelSpec { kind, ..model.clone() },
        diagonal,
        offdiag,
        row_ptr,
        cols,
        vals,
    }
}

impl SparseHamiltonian {
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    /// Upper-triangle couplings `(row, col, amplitude)` with `row < col`.
    pub fn offdiag(&self) -> &[(u32, u32, f64)] {
        &self.offdiag
    }

    /// Number of stored nonzeros in the full symmetric matrix.
    pub fn nnz(&self) -> usize {
        self.diagonal.len() + self.vals.len()
    }

    /// Matrix element `⟨row|H|col⟩`.
    pub fn element(&self, row: usize, col: usize) -> f64 {
        if row == col {
            return self.diagonal[row];
        }
        let (lo, hi) = (self.row_ptr[row], self.row_ptr[row + 1]);
        match self.cols[lo..hi].binary_search(&(col as u32)) {
            Ok(k) => self.vals[lo + k],
            Err(_) => 0.0,
        }
    }

    /// Structural Hermiticity: every stored row entry has its transpose with the
    /// identical value, and the triplet list is strictly upper triangular.
    pub fn is_hermitian(&self) -> bool {
        let upper = self.offdiag.iter().all(|&(r, c, _)| r < c);
        let symmetric = (0..self.dim()).all(|r| {
            (self.row_ptr[r]..self.row_ptr[r + 1])
                .all(|k| self.element(self.cols[k] as usize, r) == self.vals[k])
        });
        upper && symmetric
    }

    /// `out = H v`, accumulating each row in ascending column order.
    pub fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        self.check_dims(v.len(), out.len())?;
        for (r, o) in out.iter_mut().enumerate() {
            *o = self.row_dot(r, v);
        }
        Ok(())
    }

    /// Row-parallel variant of [`apply_into`](Self::apply_into).
    ///
    /// Rows are independent and each keeps the serial summation order, so the
    /// result is bit-identical to the serial kernel for any thread count.
    pub fn apply_par_into(&self, v: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        self.check_dims(v.len(), out.len())?;
        out.par_iter_mut()
            .with_min_len(4096)
            .enumerate()
            .for_each(|(r, o)| *o = self.row_dot(r, v));
        Ok(())
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        self.apply_into(v, &mut out)?;
        Ok(out)
    }

    #[inline]
    fn row_dot(&self, r: usize, v: &[Complex64]) -> Complex64 {
        let mut acc = v[r] * self.diagonal[r];
        for k in self.row_ptr[r]..self.row_ptr[r + 1] {
            acc += v[self.cols[k] as usize] * self.vals[k];
        }
        acc
    }

    fn check_dims(&self, input: usize, output: usize) -> Result<()> {
        for got in [input, output] {
            if got != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got,
                });
            }
        }
        Ok(())
    }

    /// `⟨v|H|v⟩`; real for any `v` because `H` is symmetric and real.
    pub fn expectation(&self, v: &[Complex64]) -> Result<f64> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let mut acc = 0.0;
        for (r, vr) in v.iter().enumerate() {
            acc += (vr.conj() * self.row_dot(r, v)).re;
        }
        Ok(acc)
    }

    pub fn to_dense(&self) -> Mat<f64> {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for (i, &d) in self.diagonal.iter().enumerate() {
            m[(i, i)] = d;
        }
        for &(r, c, a) in &self.offdiag {
            m[(r as usize, c as usize)] = a;
            m[(c as usize, r as usize)] = a;
        }
        m
    }

    /// Writes `row col value` lines (diagonal, then upper triangle) with
    /// 17 significant digits.
    pub fn write_triplets<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let nonzero_diag = self.diagonal.iter().filter(|d| **d != 0.0).count();
        writeln!(w, "# dim {} nnz_upper {}", self.dim(), nonzero_diag + self.offdiag.len())?;
        for (i, d) in self.diagonal.iter().enumerate() {
            if *d != 0.0 {
                writeln!(w, "{i} {i} {d:.16e}")?;
            }
        }
        for &(r, c, a) in &self.offdiag {
            writeln!(w, "{r} {c} {a:.16e}")?;
        }
        Ok(())
    }
}
