//! Exact diagonalization on the truncated space `|n1, n2> ⊗ |S = N/2, m>`.
//!
//! States are labelled `(n1, n2, k)` with `k = m + N/2` the number of excited
//! atoms. `L^z = n1 - n2 + m` is conserved; sectors are keyed by the integer
//! `n1 - n2 + k = L^z + N/2`, so the trivial vacuum sits in sector `0`.
//!
//! Photon truncation is a projection, so the assembled matrix stays exactly
//! self-adjoint and exactly block diagonal in `L^z`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{DickeError, Result};
use crate::meanfield;
use crate::params::ModelParams;

/// Cutoff-doubling tolerance on `|ΔE| / N`, in units of `omega_z`.
pub const ED_TOL: f64 = 1e-8;
/// Default cap on the number of basis states in one solve.
pub const DEFAULT_DIM_BUDGET: usize = 1 << 22;
pub const MAX_DOUBLINGS: usize = 4;

const DENSE_LIMIT: usize = 160;
const KRYLOV_DIM: usize = 120;
const MAX_RESTARTS: usize = 60;
const RESIDUAL_TOL: f64 = 1e-10;
const PARALLEL_ROWS: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisSpec {
    pub n_max1: u32,
    pub n_max2: u32,
    pub n_atoms: u32,
    /// `L^z + N/2`; `None` means the whole truncated space.
    pub lz_sector: Option<i64>,
    pub dim_budget: usize,
}

impl BasisSpec {
    pub fn new(n_max1: u32, n_max2: u32, n_atoms: u32) -> Self {
        Self {
            n_max1,
            n_max2,
            n_atoms,
            lz_sector: None,
            dim_budget: DEFAULT_DIM_BUDGET,
        }
    }

    /// Cutoffs `max(8, ceil(4 |alpha_i|^2))` from the mean-field photon amplitudes.
    pub fn from_mean_field(p: &ModelParams) -> Result<Self> {
        let mf = meanfield::solve(p)?;
        let cut = |a: Complex64| (4.0 * a.norm_sqr()).ceil().max(8.0) as u32;
        Ok(Self::new(cut(mf.alpha1), cut(mf.alpha2), p.n_atoms()))
    }

    pub fn with_sector(self, key: i64) -> Self {
        Self {
            lz_sector: Some(key),
            ..self
        }
    }

    pub fn with_budget(self, dim_budget: usize) -> Self {
        Self { dim_budget, ..self }
    }

    pub fn doubled(self) -> Self {
        Self {
            n_max1: (2 * self.n_max1).max(1),
            n_max2: (2 * self.n_max2).max(1),
            ..self
        }
    }

    pub fn full_dimension(&self) -> usize {
        (self.n_max1 as usize + 1) * (self.n_max2 as usize + 1) * (self.n_atoms as usize + 1)
    }

    /// Sector keys that contain at least one state.
    pub fn sector_range(&self) -> std::ops::RangeInclusive<i64> {
        -(self.n_max2 as i64)..=(self.n_max1 as i64 + self.n_atoms as i64)
    }

    pub fn sector_dimension(&self, key: i64) -> usize {
        let n = self.n_atoms as i64;
        (0..=self.n_max1 as i64)
            .map(|n1| {
                // k = key - n1 + n2 in [0, N] and n2 in [0, n_max2]
                let lo = (n1 - key).max(0);
                let hi = (n1 - key + n).min(self.n_max2 as i64);
                (hi - lo + 1).max(0) as usize
            })
            .sum()
    }

    pub fn dimension(&self) -> usize {
        match self.lz_sector {
            Some(key) => self.sector_dimension(key),
            None => self.full_dimension(),
        }
    }

    fn check(&self, p: &ModelParams) -> Result<()> {
        if self.n_atoms != p.n_atoms() {
            return Err(DickeError::InvalidParameter {
                name: "n_atoms",
                reason: format!("basis has N = {}, model has N = {}", self.n_atoms, p.n_atoms()),
            });
        }
        let dim = self.dimension();
        if dim > self.dim_budget {
            return Err(DickeError::Resource {
                dim,
                budget: self.dim_budget,
            });
        }
        Ok(())
    }
}

/// Basis state `(n1, n2, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockState {
    pub n1: u32,
    pub n2: u32,
    pub k: u32,
}

impl FockState {
    pub fn sector(&self) -> i64 {
        self.n1 as i64 - self.n2 as i64 + self.k as i64
    }

    pub fn at_cutoff(&self, b: &BasisSpec) -> bool {
        self.n1 == b.n_max1 || self.n2 == b.n_max2
    }
}

/// Compressed sparse rows, columns sorted within each row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Self {
        let mut row_ptr = Vec::with_capacity(rows.len() + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|&(c, _)| c);
            for (c, v) in row {
                if cols.len() > *row_ptr.last().unwrap() && *cols.last().unwrap() == c {
                    *vals.last_mut().unwrap() += v;
                } else {
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        Self { row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(pos) => self.vals[r.start + pos],
            Err(_) => 0.0,
        }
    }

    fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        self.row(i).map(|(c, v)| v * x[c]).sum()
    }

    /// `y = H x`. Rows are independent, so the parallel path is bitwise identical
    /// to the serial one.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        if self.dim() >= PARALLEL_ROWS {
            y.par_iter_mut()
                .enumerate()
                .for_each(|(i, yi)| *yi = self.row_dot(i, x));
        } else {
            for (i, yi) in y.iter_mut().enumerate() {
                *yi = self.row_dot(i, x);
            }
        }
    }

    /// `max |H_ij - H_ji|`.
    pub fn asymmetry(&self) -> f64 {
        (0..self.dim())
            .flat_map(|i| self.row(i).map(move |(j, v)| (i, j, v)))
            .map(|(i, j, v)| (v - self.get(j, i)).abs())
            .fold(0.0, f64::max)
    }

    /// Gershgorin bound on the spectral radius.
    pub fn norm_bound(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.row(i).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn expectation(&self, x: &[f64]) -> f64 {
        let mut y = vec![0.0; x.len()];
        self.matvec(x, &mut y);
        dot(x, &y) / dot(x, x)
    }

    fn to_dense(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            for (j, v) in self.row(i) {
                m[(i, j)] = v;
            }
        }
        m
    }
}

/// Hamiltonian restricted to a basis, with the state labels.
#[derive(Debug, Clone)]
pub struct SparseHamiltonian {
    pub basis: BasisSpec,
    pub states: Vec<FockState>,
    pub matrix: CsrMatrix,
}

impl SparseHamiltonian {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// `L^z` of each basis state, offset by `+N/2`.
    pub fn sector_labels(&self) -> Vec<i64> {
        self.states.iter().map(FockState::sector).collect()
    }

    /// `max |(H L - L H)_ij|` over pairs where neither state sits at a photon cutoff.
    pub fn commutator_norm(&self) -> f64 {
        let b = self.basis;
        (0..self.dim())
            .filter(|&i| !self.states[i].at_cutoff(&b))
            .flat_map(|i| self.matrix.row(i).map(move |(j, v)| (i, j, v)))
            .filter(|&(_, j, _)| !self.states[j].at_cutoff(&b))
            .map(|(i, j, v)| (v * (self.states[j].sector() - self.states[i].sector()) as f64).abs())
            .fold(0.0, f64::max)
    }

    /// Largest matrix element connecting different `L^z` sectors, anywhere.
    pub fn off_block_norm(&self) -> f64 {
        (0..self.dim())
            .flat_map(|i| self.matrix.row(i).map(move |(j, v)| (i, j, v)))
            .filter(|&(i, j, _)| self.states[i].sector() != self.states[j].sector())
            .map(|(_, _, v)| v.abs())
            .fold(0.0, f64::max)
    }

    fn observables(&self, psi: &[f64]) -> Observables {
        let half = 0.5 * self.basis.n_atoms as f64;
        let norm: f64 = psi.iter().map(|x| x * x).sum();
        let mut o = Observables::default();
        for (s, x) in self.states.iter().zip(psi) {
            let w = x * x / norm;
            o.n1 += w * s.n1 as f64;
            o.n2 += w * s.n2 as f64;
            o.sz += w * (s.k as f64 - half);
        }
        o.lz = o.n1 - o.n2 + o.sz;
        o
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Observables {
    n1: f64,
    n2: f64,
    sz: f64,
    lz: f64,
}

fn enumerate_states(b: &BasisSpec) -> Vec<FockState> {
    let mut states = Vec::with_capacity(b.dimension());
    for n1 in 0..=b.n_max1 {
        for n2 in 0..=b.n_max2 {
            match b.lz_sector {
                Some(key) => {
                    let k = key - n1 as i64 + n2 as i64;
                    if (0..=b.n_atoms as i64).contains(&k) {
                        states.push(FockState { n1, n2, k: k as u32 });
                    }
                }
                None => states.extend((0..=b.n_atoms).map(|k| FockState { n1, n2, k })),
            }
        }
    }
    states
}

/// Assemble `H` on the basis of `b`.
pub fn build_hamiltonian(p: &ModelParams, b: &BasisSpec) -> Result<SparseHamiltonian> {
    b.check(p)?;
    let states = enumerate_states(b);
    let (s1, s2, nk) = (b.n_max1 as usize + 1, b.n_max2 as usize + 1, b.n_atoms as usize + 1);
    let mut index = vec![usize::MAX; s1 * s2 * nk];
    let slot = |n1: u32, n2: u32, k: u32| (n1 as usize * s2 + n2 as usize) * nk + k as usize;
    for (i, s) in states.iter().enumerate() {
        index[slot(s.n1, s.n2, s.k)] = i;
    }

    let nn = p.n();
    let half = 0.5 * nn;
    let c1 = p.g1() / nn.sqrt();
    let c2 = p.g2() / nn.sqrt();
    let big_n = b.n_atoms;

    let rows: Vec<Vec<(usize, f64)>> = states
        .par_iter()
        .map(|s| {
            let mut row = Vec::with_capacity(5);
            let photons = (s.n1 + s.n2) as f64;
            let m = s.k as f64 - half;
            row.push((
                index[slot(s.n1, s.n2, s.k)],
                p.omega_c() * photons + p.omega_z() * m + p.u() * m * photons,
            ));
            let kf = s.k as f64;
            let mut push = |n1: u32, n2: u32, k: u32, amp: f64| {
                if amp != 0.0 {
                    let j = index[slot(n1, n2, k)];
                    if j != usize::MAX {
                        row.push((j, amp));
                    }
                }
            };
            // a1 S+ and its conjugate a1† S-
            if s.n1 > 0 && s.k < big_n {
                let amp = c1 * (s.n1 as f64 * (nn - kf) * (kf + 1.0)).sqrt();
                push(s.n1 - 1, s.n2, s.k + 1, amp);
            }
            if s.n1 < b.n_max1 && s.k > 0 {
                let amp = c1 * ((s.n1 + 1) as f64 * kf * (nn - kf + 1.0)).sqrt();
                push(s.n1 + 1, s.n2, s.k - 1, amp);
            }
            // a2 S- and its conjugate a2† S+
            if s.n2 > 0 && s.k > 0 {
                let amp = c2 * (s.n2 as f64 * kf * (nn - kf + 1.0)).sqrt();
                push(s.n1, s.n2 - 1, s.k - 1, amp);
            }
            if s.n2 < b.n_max2 && s.k < big_n {
                let amp = c2 * ((s.n2 + 1) as f64 * (nn - kf) * (kf + 1.0)).sqrt();
                push(s.n1, s.n2 + 1, s.k + 1, amp);
            }
            row
        })
        .collect();

    Ok(SparseHamiltonian {
        basis: *b,
        states,
        matrix: CsrMatrix::from_rows(rows),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
    /// `‖H x - value x‖` for the normalized `x`.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(x: &mut [f64]) {
    let n = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= n);
}

fn residual(h: &CsrMatrix, x: &[f64], value: f64) -> f64 {
    let mut y = vec![0.0; x.len()];
    h.matvec(x, &mut y);
    y.iter()
        .zip(x)
        .map(|(hy, xi)| (hy - value * xi).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Lowest eigenpair of a real symmetric matrix.
///
/// Lanczos with full reorthogonalization, restarted from the current Ritz
/// vector. The first start vector has all entries equal, so results are
/// reproducible bit for bit. Small matrices are diagonalized densely.
pub fn lowest_eigenpair(h: &CsrMatrix) -> Eigenpair {
    let d = h.dim();
    assert!(d > 0, "empty matrix");
    if d <= DENSE_LIMIT {
        let eig = SymmetricEigen::new(h.to_dense());
        let (i, &value) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let vector: Vec<f64> = eig.eigenvectors.column(i).iter().copied().collect();
        let residual = residual(h, &vector, value);
        return Eigenpair {
            value,
            vector,
            residual,
        };
    }

    let scale = h.norm_bound().max(f64::MIN_POSITIVE);
    let steps = d.min(KRYLOV_DIM);
    let mut x = vec![1.0 / (d as f64).sqrt(); d];
    let mut best = Eigenpair {
        value: f64::INFINITY,
        vector: x.clone(),
        residual: f64::INFINITY,
    };
    for _ in 0..MAX_RESTARTS {
        let mut basis: Vec<Vec<f64>> = vec![x.clone()];
        let mut alpha = Vec::with_capacity(steps);
        let mut beta = Vec::with_capacity(steps);
        let mut exhausted = false;
        let mut w = vec![0.0; d];
        loop {
            let j = basis.len() - 1;
            h.matvec(&basis[j], &mut w);
            let mut a = 0.0;
            for _ in 0..2 {
                for (i, q) in basis.iter().enumerate() {
                    let c = dot(&w, q);
                    if i == j {
                        a += c;
                    }
                    w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
                }
            }
            alpha.push(a);
            if basis.len() == steps {
                break;
            }
            let b = dot(&w, &w).sqrt();
            if b <= 1e-13 * scale {
                exhausted = true;
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|v| v / b).collect());
        }

        let k = alpha.len();
        let mut t = DMatrix::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (imin, &theta) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let y = eig.eigenvectors.column(imin);
        x = vec![0.0; d];
        for (c, q) in y.iter().zip(&basis) {
            x.iter_mut().zip(q).for_each(|(xi, qi)| *xi += c * qi);
        }
        normalize(&mut x);
        let r = residual(h, &x, theta);
        if r < best.residual {
            best = Eigenpair {
                value: theta,
                vector: x.clone(),
                residual: r,
            };
        }
        if r <= RESIDUAL_TOL * scale || exhausted || k == d {
            break;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdResult {
    pub ground_energy: f64,
    pub ground_energy_per_atom: f64,
    /// `<n1 - n2 + S^z>`; an integer for even `N`, a half-integer for odd `N`.
    pub lz_expectation: f64,
    pub photon_occupations: (f64, f64),
    pub sz_expectation: f64,
    /// The last cutoff doubling moved `E/N` by less than `ED_TOL * omega_z`.
    pub converged: bool,
    /// Sector key `L^z + N/2` of the reported state.
    pub sector: i64,
    pub n_max1: u32,
    pub n_max2: u32,
    pub dimension: usize,
    /// `|ΔE| / N` of the last doubling, `NaN` if none was possible.
    pub last_change_per_atom: f64,
    pub doublings: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorScan {
    /// `(sector key, lowest energy)` for each nonempty requested sector.
    pub energies: Vec<(i64, f64)>,
    /// Requested sectors with no states.
    pub skipped: Vec<i64>,
}

impl SectorScan {
    pub fn minimum(&self) -> Option<(i64, f64)> {
        self.energies
            .iter()
            .copied()
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
    }
}

/// Lowest eigenvalue in each requested `L^z` block.
pub fn sector_scan(p: &ModelParams, b: &BasisSpec, sectors: &[i64]) -> Result<SectorScan> {
    let results: Vec<Option<(i64, f64)>> = sectors
        .par_iter()
        .map(|&key| {
            let bs = b.with_sector(key);
            if bs.sector_dimension(key) == 0 {
                return Ok(None);
            }
            let h = build_hamiltonian(p, &bs)?;
            Ok(Some((key, lowest_eigenpair(&h.matrix).value)))
        })
        .collect::<Result<_>>()?;
    let mut scan = SectorScan {
        energies: Vec::new(),
        skipped: Vec::new(),
    };
    for (key, r) in sectors.iter().zip(results) {
        match r {
            Some(e) => scan.energies.push(e),
            None => scan.skipped.push(*key),
        }
    }
    Ok(scan)
}

struct FixedCutoff {
    energy: f64,
    sector: i64,
    obs: Observables,
    dimension: usize,
    residual: f64,
}

fn solve_fixed(p: &ModelParams, b: &BasisSpec) -> Result<FixedCutoff> {
    b.check(p)?;
    let key = match b.lz_sector {
        Some(key) => key,
        None => {
            let sectors: Vec<i64> = b.sector_range().collect();
            sector_scan(p, b, &sectors)?
                .minimum()
                .expect("the vacuum sector is never empty")
                .0
        }
    };
    let h = build_hamiltonian(p, &b.with_sector(key))?;
    if h.dim() == 0 {
        return Err(DickeError::InvalidParameter {
            name: "lz_sector",
            reason: format!("sector {key} is empty"),
        });
    }
    let pair = lowest_eigenpair(&h.matrix);
    Ok(FixedCutoff {
        energy: pair.value,
        sector: key,
        obs: h.observables(&pair.vector),
        dimension: h.dim(),
        residual: pair.residual,
    })
}

/// Ground state, with the photon cutoffs doubled until `|ΔE| / N < ED_TOL * omega_z`.
///
/// Without a sector in `b` the lowest state over all sectors is returned, and
/// its observables are measured in that sector. Running out of doublings or of
/// dimension budget yields `converged = false` rather than an error.
pub fn ground_state(p: &ModelParams, b: &BasisSpec) -> Result<EdResult> {
    let mut basis = *b;
    let mut current = solve_fixed(p, &basis)?;
    let mut change = f64::NAN;
    let mut converged = false;
    let mut doublings = 0;
    for _ in 0..MAX_DOUBLINGS {
        let next_basis = basis.doubled();
        if next_basis.dimension() > next_basis.dim_budget {
            break;
        }
        let next = solve_fixed(p, &next_basis)?;
        doublings += 1;
        change = (next.energy - current.energy).abs() / p.n();
        basis = next_basis;
        current = next;
        if change < ED_TOL * p.omega_z() {
            converged = true;
            break;
        }
    }
    Ok(EdResult {
        ground_energy: current.energy,
        ground_energy_per_atom: current.energy / p.n(),
        lz_expectation: current.obs.lz,
        photon_occupations: (current.obs.n1, current.obs.n2),
        sz_expectation: current.obs.sz,
        converged,
        sector: current.sector,
        n_max1: basis.n_max1,
        n_max2: basis.n_max2,
        dimension: current.dimension,
        last_change_per_atom: change,
        doublings,
        residual: current.residual,
    })
}

/// Coherent ⊗ spin-coherent state built from the mean-field solution of `p`,
/// projected on the full truncated space of `b` and normalized there.
pub fn product_state(p: &ModelParams, b: &BasisSpec) -> Result<(SparseHamiltonian, Vec<f64>)> {
    let mf = meanfield::solve(p)?;
    let b_full = BasisSpec {
        lz_sector: None,
        ..*b
    };
    let h = build_hamiltonian(p, &b_full)?;
    let photon = |alpha: Complex64, cutoff: u32| -> Vec<Complex64> {
        let mut c = Vec::with_capacity(cutoff as usize + 1);
        let mut amp = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
        for n in 0..=cutoff {
            c.push(amp);
            amp = amp * alpha / ((n + 1) as f64).sqrt();
        }
        c
    };
    let c1 = photon(mf.alpha1, b.n_max1);
    let c2 = photon(mf.alpha2, b.n_max2);

    // Binomial amplitudes sqrt(C(N,k) q^k (1-q)^(N-k)), q = |alpha3|^2 / N, phase e^{-ik theta}.
    let n_atoms = b.n_atoms as usize;
    let q = mf.alpha3_abs2 / p.n();
    let mut ln_binom = vec![0.0; n_atoms + 1];
    for k in 1..=n_atoms {
        ln_binom[k] = ln_binom[k - 1] + ((n_atoms + 1 - k) as f64).ln() - (k as f64).ln();
    }
    let spin: Vec<Complex64> = (0..=n_atoms)
        .map(|k| {
            let weight = if q == 0.0 {
                if k == 0 { 1.0 } else { 0.0 }
            } else {
                (0.5 * (ln_binom[k] + k as f64 * q.ln() + (n_atoms - k) as f64 * (-q).ln_1p())).exp()
            };
            Complex64::from_polar(weight, -(k as f64) * mf.theta)
        })
        .collect();

    // The solver's gauge is theta = 0, where every amplitude is real.
    let psi: Vec<f64> = h
        .states
        .iter()
        .map(|s| (c1[s.n1 as usize] * c2[s.n2 as usize] * spin[s.k as usize]).re)
        .collect();
    Ok((h, psi))
}

/// `<psi|H|psi>` for the mean-field product state; an upper bound on the
/// ground energy at the same cutoffs.
pub fn product_state_energy(p: &ModelParams, b: &BasisSpec) -> Result<f64> {
    let (h, psi) = product_state(p, b)?;
    Ok(h.matrix.expectation(&psi))
}
