//! Adjacency spectra and the continuous-time quantum walk quantities built
//! on them.
//!
//! The walk evolves under `U(t) = exp(+i A t)`. With eigenpairs
//! `A x_n = λ_n x_n`, the amplitude from source `j` to target `l` is
//! `Σ_n exp(i λ_n t) x_n(l) x_n(j)`, so the coefficient `x_n(l) x_n(j)` is the
//! intensity of frequency `λ_n` at `l`. Solvers compare intensities at the
//! principal frequency `λ_1`.
//!
//! Eigenvalues within a relative tolerance of each other form one frequency
//! group. Group sums of intensities are entries of the spectral projector, so
//! they do not depend on the basis chosen inside a degenerate eigenspace.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::ops::Range;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::graph::{Graph, Label};

/// Relative tolerance under which two eigenvalues are one frequency.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

const SIGN_EPS: f64 = 1e-12;

pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 })
}

/// How the sign of the principal eigenvector was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrincipalSign {
    /// Flipped so that its entry sum is positive.
    Perron,
    /// Entry sum vanished (degenerate principal space); the first nonzero
    /// entry was made positive instead.
    FirstNonzero,
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues descending.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    values: Vec<f64>,
    /// Column `k` pairs with `values[k]`.
    vectors: DMatrix<f64>,
    principal_sign: PrincipalSign,
}

impl EigenSystem {
    pub fn of(g: &Graph) -> Self {
        Self::from_symmetric(adjacency_matrix(g))
    }

    pub fn from_symmetric(m: DMatrix<f64>) -> Self {
        let n = m.nrows();
        assert_eq!(n, m.ncols(), "matrix must be square");
        if n == 0 {
            return Self {
                values: Vec::new(),
                vectors: DMatrix::zeros(0, 0),
                principal_sign: PrincipalSign::Perron,
            };
        }
        let eig = m.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

        let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let mut vectors = DMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }

        for k in 1..n {
            normalize_first_nonzero(&mut vectors, k);
        }
        let sum: f64 = vectors.column(0).iter().sum();
        let principal_sign = if sum.abs() > SIGN_EPS {
            if sum < 0.0 {
                vectors.column_mut(0).neg_mut();
            }
            PrincipalSign::Perron
        } else {
            normalize_first_nonzero(&mut vectors, 0);
            PrincipalSign::FirstNonzero
        };

        Self {
            values,
            vectors,
            principal_sign,
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn principal_sign(&self) -> PrincipalSign {
        self.principal_sign
    }

    /// Entry `v` of eigenvector `k`.
    #[inline]
    pub fn component(&self, k: usize, v: usize) -> f64 {
        self.vectors[(v, k)]
    }

    /// `max_k ‖A x_k − λ_k x_k‖∞ / max(1, |λ_k|)`.
    pub fn residual(&self, a: &DMatrix<f64>) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.n() {
            let x = self.vectors.column(k);
            let r = a * x - x * self.values[k];
            let scale = self.values[k].abs().max(1.0);
            worst = worst.max(r.amax() / scale);
        }
        worst
    }

    /// `max |XᵀX − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n();
        let gram = self.vectors.transpose() * &self.vectors;
        (gram - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// Index ranges of near-degenerate eigenvalues. A group starts at its
    /// largest eigenvalue `μ` and holds every following `λ` with
    /// `μ − λ ≤ tol·max(1, |μ|)`.
    pub fn groups(&self, tol: f64) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..=self.n() {
            let split = k == self.n() || {
                let head = self.values[start];
                head - self.values[k] > tol * head.abs().max(1.0)
            };
            if split {
                out.push(start..k);
                start = k;
            }
        }
        out
    }

    /// `⟨l| exp(i A t) |j⟩` through the spectral resolution.
    pub fn amplitude(&self, j: usize, l: usize, t: f64) -> Complex64 {
        (0..self.n())
            .map(|k| Complex64::from_polar(1.0, self.values[k] * t) * self.intensity(l, j, k))
            .sum()
    }

    pub fn probability(&self, j: usize, l: usize, t: f64) -> f64 {
        self.amplitude(j, l, t).norm_sqr()
    }

    /// `x_k(l) x_k(j)`: intensity of frequency `λ_k` at `l` from source `j`.
    #[inline]
    pub fn intensity(&self, l: usize, j: usize, k: usize) -> f64 {
        self.component(k, l) * self.component(k, j)
    }

    /// `Σ_n λ_n^s x_n(l) x_n(j)`, the spectral form of the walk count.
    pub fn spectral_walk_count(&self, s: u32, l: usize, j: usize) -> f64 {
        (0..self.n())
            .map(|k| self.values[k].powi(s as i32) * self.intensity(l, j, k))
            .sum()
    }

    pub fn intensities(&self, source: usize, tol: f64) -> IntensityVector {
        let n = self.n();
        let p = DMatrix::from_fn(n, n, |l, k| self.intensity(l, source, k));
        let groups = self.groups(tol);
        let grouped = DMatrix::from_fn(n, groups.len(), |l, g| {
            groups[g].clone().map(|k| p[(l, k)]).sum()
        });
        let frequencies = groups.iter().map(|r| self.values[r.start]).collect();
        IntensityVector {
            source,
            p,
            groups,
            grouped,
            frequencies,
        }
    }
}

fn normalize_first_nonzero(vectors: &mut DMatrix<f64>, k: usize) {
    let first = vectors.column(k).iter().copied().find(|x| x.abs() > SIGN_EPS);
    if first.is_some_and(|x| x < 0.0) {
        vectors.column_mut(k).neg_mut();
    }
}

/// Per-target, per-frequency intensities from one source vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct IntensityVector {
    source: usize,
    /// `p[(l, n)] = x_n(l) x_n(source)`.
    p: DMatrix<f64>,
    groups: Vec<Range<usize>>,
    /// `grouped[(l, g)] = Σ_{n ∈ groups[g]} p[(l, n)]`.
    grouped: DMatrix<f64>,
    frequencies: Vec<f64>,
}

impl IntensityVector {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn n(&self) -> usize {
        self.p.nrows()
    }

    #[inline]
    pub fn at(&self, l: usize, k: usize) -> f64 {
        self.p[(l, k)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Range<usize>] {
        &self.groups
    }

    /// Largest eigenvalue of group `g`.
    pub fn frequency(&self, g: usize) -> f64 {
        self.frequencies[g]
    }

    #[inline]
    pub fn grouped(&self, l: usize, g: usize) -> f64 {
        self.grouped[(l, g)]
    }

    /// Grouped intensity at the principal frequency.
    #[inline]
    pub fn principal(&self, l: usize) -> f64 {
        self.grouped(l, 0)
    }

    /// `Σ_n p[(l, n)]`; equals `δ_{l,source}`.
    pub fn row_sum(&self, l: usize) -> f64 {
        self.p.row(l).sum()
    }
}

/// Exact walk counts `(A^s)_{l,j}` for `s = 0..=s_max`.
#[derive(Clone, Debug)]
pub struct WalkTable {
    n: usize,
    powers: Vec<Vec<BigUint>>,
}

impl WalkTable {
    pub fn s_max(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn get(&self, s: usize, l: usize, j: usize) -> &BigUint {
        &self.powers[s][l * self.n + j]
    }

    /// Truncated series `Σ_{s ≤ s_max} (i t)^s (A^s)_{l,j} / s!`.
    pub fn series_amplitude(&self, l: usize, j: usize, t: f64) -> Complex64 {
        let mut sum = Complex64::zero();
        let mut coeff = 1.0_f64; // t^s / s!
        for s in 0..=self.s_max() {
            if s > 0 {
                coeff *= t / s as f64;
            }
            let count = self.get(s, l, j).to_f64().unwrap_or(f64::INFINITY);
            let phase = Complex64::from_polar(1.0, FRAC_PI_2 * (s % 4) as f64);
            sum += phase * (coeff * count);
        }
        sum
    }
}

pub fn walk_counts(g: &Graph, s_max: usize) -> WalkTable {
    let n = g.n();
    let mut powers: Vec<Vec<BigUint>> = Vec::with_capacity(s_max + 1);
    let mut identity = vec![BigUint::zero(); n * n];
    for i in 0..n {
        identity[i * n + i] = BigUint::from(1u8);
    }
    powers.push(identity);
    let neighbors: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
    for s in 0..s_max {
        let prev = &powers[s];
        // (A^{s+1})_{l,j} = Σ_{k ∈ N(j)} (A^s)_{l,k}
        let mut next = vec![BigUint::zero(); n * n];
        for l in 0..n {
            for j in 0..n {
                let mut acc = BigUint::zero();
                for &k in &neighbors[j] {
                    acc += &prev[l * n + k];
                }
                next[l * n + j] = acc;
            }
        }
        powers.push(next);
    }
    WalkTable { n, powers }
}

/// `vertex,lambda,p` rows for every target vertex and eigenvalue, source
/// `source` (a label).
pub fn intensity_csv(g: &Graph, es: &EigenSystem, source: Label) -> Option<String> {
    let j = g.index_of(source)?;
    let mut out = String::from("vertex,lambda,p\n");
    for l in 0..g.n() {
        for k in 0..es.n() {
            writeln!(out, "{},{},{}", g.label(l), es.values()[k], es.intensity(l, j, k)).unwrap();
        }
    }
    Some(out)
}
