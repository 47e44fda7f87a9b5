//! The Gauss-law-satisfying (physical) sector of the periodic spin-S U(1) chain.
//!
//! Conventions (0-based): site `i` carries occupation `n_i ∈ {0, 1}`, link `i`
//! joins sites `i` and `i+1 mod L`. Gauss's law at site `i` reads
//! `ℓ_{i-1} + ℓ_i + n_i = 0`, so the first link value and the matter string
//! fix the whole configuration. Link 0 is the first link of the staggered
//! flux sum and carries `+m_z` in the vacuum `|ψ₀^{m_z}⟩`.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{ModelSpec, MAX_LENGTH};
use crate::spin::HalfInt;

/// One product configuration of matter occupations and link eigenvalues.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    length: u8,
    /// Bit `L-1-i` holds `n_i`: reading the string as an integer is big-endian.
    matter: u32,
    /// Twice the ŝ^z eigenvalue on each link.
    links: [i8; MAX_LENGTH],
}

impl BasisState {
    /// Builds a configuration without checking Gauss's law or link ranges.
    pub fn new(occupations: &[u8], links: &[HalfInt]) -> Self {
        assert_eq!(occupations.len(), links.len(), "matter/link length mismatch");
        assert!(occupations.len() <= MAX_LENGTH);
        let length = occupations.len();
        let mut matter = 0u32;
        for (i, &n) in occupations.iter().enumerate() {
            assert!(n <= 1, "occupation must be 0 or 1");
            matter |= u32::from(n) << (length - 1 - i);
        }
        let mut packed = [0i8; MAX_LENGTH];
        for (slot, l) in packed.iter_mut().zip(links) {
            *slot = i8::try_from(l.twice()).expect("link eigenvalue out of i8 range");
        }
        BasisState {
            length: length as u8,
            matter,
            links: packed,
        }
    }

    pub fn length(&self) -> usize {
        self.length as usize
    }

    /// Occupation `n_i` of site `i` (0-based).
    #[inline]
    pub fn occupation(&self, i: usize) -> u8 {
        ((self.matter >> (self.length as usize - 1 - i)) & 1) as u8
    }

    /// Link eigenvalue ℓ_i on link `i` (0-based).
    #[inline]
    pub fn link(&self, i: usize) -> HalfInt {
        HalfInt::from_twice(i32::from(self.links[i]))
    }

    #[inline]
    pub(crate) fn link_twice(&self, i: usize) -> i32 {
        i32::from(self.links[i])
    }

    /// Matter string read as a big-endian integer (site 0 most significant).
    pub fn matter_bits(&self) -> u32 {
        self.matter
    }

    pub fn occupations(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.length()).map(move |i| self.occupation(i))
    }

    pub fn links(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.links[..self.length()].iter().map(|&t| HalfInt::from_twice(i32::from(t)))
    }

    /// Number of occupied matter sites.
    pub fn particle_count(&self) -> u32 {
        self.matter.count_ones()
    }

    /// Sort key realizing the canonical order: first link ascending, then matter bits.
    pub(crate) fn key(&self) -> u64 {
        (((i64::from(self.links[0]) + 128) as u64) << 32) | u64::from(self.matter)
    }

    /// Rebuilds the configuration with link `i` and sites `i`, `i+1` changed.
    #[inline]
    pub(crate) fn with_pair(&self, i: usize, occupied: bool, link_twice: i32) -> BasisState {
        let len = self.length as usize;
        let j = (i + 1) % len;
        let mask = (1u32 << (len - 1 - i)) | (1u32 << (len - 1 - j));
        let mut next = *self;
        next.matter = if occupied { self.matter | mask } else { self.matter & !mask };
        next.links[i] = link_twice as i8;
        next
    }

    /// Translates the configuration by `shift` sites (site i → i + shift).
    pub fn translate(&self, shift: usize) -> BasisState {
        let len = self.length();
        let occ: Vec<u8> = (0..len).map(|i| self.occupation((i + len - shift % len) % len)).collect();
        let links: Vec<HalfInt> = (0..len).map(|i| self.link((i + len - shift % len) % len)).collect();
        BasisState::new(&occ, &links)
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let occ: String = self.occupations().map(|n| char::from(b'0' + n)).collect();
        let links: Vec<String> = self.links().map(|l| l.to_string()).collect();
        write!(f, "BasisState(n={occ}; l=({}))", links.join(", "))
    }
}

/// Gauss-law charge `(−1)^j (ℓ_{j−1,j} + ℓ_{j,j+1} + n_j)` at 1-based site `j`.
///
/// Zero exactly when the site obeys the physical-sector constraint.
pub fn gauss_charge(state: &BasisState, j: usize) -> Result<HalfInt> {
    let len = state.length();
    if j == 0 || j > len {
        return Err(Error::SiteOutOfRange { index: j, length: len });
    }
    let site = j - 1;
    let left = state.link((site + len - 1) % len);
    let right = state.link(site);
    let charge = left + right + HalfInt::from_int(i32::from(state.occupation(site)));
    Ok(if j.is_multiple_of(2) { charge } else { -charge })
}

/// Enumerated, indexed physical sector for one model.
///
/// Immutable after construction; states are in canonical order.
#[derive(Debug, Clone)]
pub struct PhysicalBasis {
    model: ModelSpec,
    states: Vec<BasisState>,
    keys: Vec<u64>,
}

impl PhysicalBasis {
    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn length(&self) -> usize {
        self.model.length
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &BasisState {
        &self.states[index]
    }

    /// Position of `state` in the basis, or `None` if it is not a physical state.
    pub fn lookup(&self, state: &BasisState) -> Option<usize> {
        if state.length() != self.length() {
            return None;
        }
        let idx = self.keys.binary_search(&state.key()).ok()?;
        (self.states[idx] == *state).then_some(idx)
    }

    /// Index permutation implementing a translation by `shift` sites.
    pub fn translation(&self, shift: usize) -> Vec<usize> {
        self.states
            .iter()
            .map(|s| {
                self.lookup(&s.translate(shift))
                    .expect("translation maps the physical sector onto itself")
            })
            .collect()
    }
}

/// Enumerates every configuration obeying Gauss's law at all sites with all
/// links in `[−S, S]`, in canonical order.
///
/// The first link value and the matter string seed the recursion
/// `ℓ_i = −ℓ_{i−1} − n_i`; closure at site 0 is checked last.
pub fn enumerate_basis(model: &ModelSpec) -> PhysicalBasis {
    let len = model.length;
    let s2 = model.spin.twice_s() as i32;
    let mut states = Vec::new();
    let mut occ = vec![0u8; len];
    let mut links = [0i8; MAX_LENGTH];

    for l0 in (-s2..=s2).step_by(2) {
        'matter: for bits in 0u32..(1u32 << len) {
            for (i, n) in occ.iter_mut().enumerate() {
                *n = ((bits >> (len - 1 - i)) & 1) as u8;
            }
            links[0] = l0 as i8;
            let mut prev = l0;
            for i in 1..len {
                let next = -prev - 2 * i32::from(occ[i]);
                if next.abs() > s2 {
                    continue 'matter;
                }
                links[i] = next as i8;
                prev = next;
            }
            // Gauss's law at site 0 closes the ring.
            if prev + l0 + 2 * i32::from(occ[0]) != 0 {
                continue;
            }
            states.push(BasisState {
                length: len as u8,
                matter: bits,
                links,
            });
        }
    }

    let keys: Vec<u64> = states.iter().map(BasisState::key).collect();
    debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
    PhysicalBasis {
        model: model.clone(),
        states,
        keys,
    }
}

/// Empty matter with links alternating `(m_z, −m_z, …)`, link 0 carrying `+m_z`.
pub fn vacuum_configuration(length: usize, mz: HalfInt) -> BasisState {
    let occ = vec![0u8; length];
    let links: Vec<HalfInt> = (0..length).map(|i| if i % 2 == 0 { mz } else { -mz }).collect();
    BasisState::new(&occ, &links)
}

/// Basis index of the vacuum `|ψ₀^{m_z}⟩`.
pub fn vacuum_state(basis: &PhysicalBasis, mz: HalfInt) -> Result<usize> {
    let spin = basis.model().spin;
    if !spin.admits(mz) {
        return Err(Error::InvalidMz { mz, spin: spin.s() });
    }
    Ok(basis
        .lookup(&vacuum_configuration(basis.length(), mz))
        .expect("every vacuum obeys Gauss's law"))
}

/// All 2S+1 vacua as `(m_z, index)`, ordered by descending `m_z`.
pub fn vacua(basis: &PhysicalBasis) -> Vec<(HalfInt, usize)> {
    basis
        .model()
        .spin
        .mz_values()
        .into_iter()
        .map(|mz| (mz, vacuum_state(basis, mz).expect("mz_values are admissible")))
        .collect()
}
