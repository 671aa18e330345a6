//! Single-excitation evolution `exp(-iAt)` of a graph's adjacency matrix.
//!
//! The propagator is assembled from a dense symmetric eigendecomposition
//! (cyclic Jacobi), so every amplitude is the spectral sum
//! `sum_k exp(-i lambda_k t) V[v,k] V[u,k]`. Couplings are unit strength and
//! `hbar = 1`, so times are dimensionless.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const TIME_TOLERANCE: f64 = 1e-6;

const OFF_DIAGONAL_THRESHOLD: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("vertex id {0} out of range")]
    InvalidVertex(VertexId),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("time must be finite and non-negative, got {0}")]
    InvalidTime(f64),
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    ConvergenceFailure { sweeps: usize, residual: f64 },
}

/// Eigenpairs of a real symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    eigenvalues: Vec<f64>,
    // row-major, column k is the eigenvector of eigenvalues[k]
    vectors: Vec<f64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Component `i` of eigenvector `k`.
    pub fn vector(&self, i: usize, k: usize) -> f64 {
        self.vectors[i * self.n + k]
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()))
    }

    /// `<v| exp(-i A t) |u>`.
    pub fn amplitude(&self, u: usize, v: usize, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = self.vector(v, k) * self.vector(u, k);
            if w != 0.0 {
                acc += Complex64::from_polar(w, -lambda * t);
            }
        }
        acc
    }

    /// Full propagator `exp(-i A t)`, row-major.
    pub fn propagator(&self, t: f64) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for v in 0..n {
            for u in 0..n {
                out[v * n + u] = self.amplitude(u, v, t);
            }
        }
        out
    }

    /// Max-norm of `A V - V diag(lambda)`.
    pub fn reconstruction_residual(&self, a: &[f64]) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for k in 0..n {
                let av: f64 = (0..n).map(|j| a[i * n + j] * self.vector(j, k)).sum();
                worst = worst.max((av - self.eigenvalues[k] * self.vector(i, k)).abs());
            }
        }
        worst
    }

    /// Max-norm of `V^T V - I`.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for k in 0..n {
            for l in 0..n {
                let dot: f64 = (0..n).map(|i| self.vector(i, k) * self.vector(i, l)).sum();
                let expected = if k == l { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).abs());
            }
        }
        worst
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            sum += 2.0 * a[p * n + q] * a[p * n + q];
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a dense symmetric `n x n` matrix
/// (row-major). Eigenvector signs are fixed so that the largest-magnitude
/// component of each column is positive.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> Result<Spectrum, SpectralError> {
    assert_eq!(matrix.len(), n * n, "matrix is not n x n");
    let mut a = matrix.to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let mut residual = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while residual > OFF_DIAGONAL_THRESHOLD {
        if sweeps == MAX_SWEEPS {
            return Err(SpectralError::ConvergenceFailure { sweeps, residual });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a, n);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[k * n + k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (new_k, &old_k) in order.iter().enumerate() {
        let column: Vec<f64> = (0..n).map(|i| v[i * n + old_k]).collect();
        let peak = column.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let pivot = column.iter().find(|x| x.abs() >= peak - 1e-12).copied().unwrap_or(1.0);
        let sign = if pivot < 0.0 { -1.0 } else { 1.0 };
        for i in 0..n {
            vectors[i * n + new_k] = sign * column[i];
        }
    }
    Ok(Spectrum { n, eigenvalues, vectors })
}

pub fn adjacency_f64(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let mut a = vec![0.0; n * n];
    for &(u, v) in g.edges() {
        a[u * n + v] = 1.0;
        a[v * n + u] = 1.0;
    }
    a
}

pub fn eigendecompose(g: &Graph) -> Result<Spectrum, SpectralError> {
    if g.vertex_count() == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    symmetric_eigen(&adjacency_f64(g), g.vertex_count())
}

/// Phase in `(-pi, pi]`.
pub fn principal_phase(z: Complex64) -> f64 {
    let p = z.arg();
    if p <= -PI {
        PI
    } else {
        p
    }
}

fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeReport {
    pub source: VertexId,
    pub target: VertexId,
    pub time: f64,
    #[serde(serialize_with = "ser_complex")]
    pub amplitude: Complex64,
    pub magnitude: f64,
    pub phase: f64,
}

impl AmplitudeReport {
    pub fn new(source: VertexId, target: VertexId, time: f64, amplitude: Complex64) -> Self {
        AmplitudeReport {
            source,
            target,
            time,
            amplitude,
            magnitude: amplitude.norm(),
            phase: principal_phase(amplitude),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PST")]
    Pst,
    #[serde(rename = "NOT_PST")]
    NotPst,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PstCertificate {
    pub pair: (VertexId, VertexId),
    pub time: f64,
    pub magnitude: f64,
    pub phase: f64,
    pub verdict: Verdict,
}

impl PstCertificate {
    pub fn from_report(report: &AmplitudeReport, tol: f64) -> Self {
        PstCertificate {
            pair: (report.source, report.target),
            time: report.time,
            magnitude: report.magnitude,
            phase: report.phase,
            verdict: if report.magnitude >= 1.0 - tol { Verdict::Pst } else { Verdict::NotPst },
        }
    }

    pub fn is_pst(&self) -> bool {
        self.verdict == Verdict::Pst
    }
}

/// Cached spectrum of one graph, for evaluating many amplitudes.
#[derive(Debug, Clone)]
pub struct Evolution {
    spectrum: Spectrum,
}

impl Evolution {
    pub fn new(g: &Graph) -> Result<Self, SpectralError> {
        Ok(Evolution { spectrum: eigendecompose(g)? })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    fn check(&self, u: VertexId, v: VertexId, t: f64) -> Result<(), SpectralError> {
        for x in [u, v] {
            if x >= self.spectrum.n {
                return Err(SpectralError::InvalidVertex(x));
            }
        }
        if !(t.is_finite() && t >= 0.0) {
            return Err(SpectralError::InvalidTime(t));
        }
        Ok(())
    }

    pub fn amplitude(&self, u: VertexId, v: VertexId, t: f64) -> Result<AmplitudeReport, SpectralError> {
        self.check(u, v, t)?;
        Ok(AmplitudeReport::new(u, v, t, self.spectrum.amplitude(u, v, t)))
    }

    pub fn check_pst(&self, u: VertexId, v: VertexId, t: f64, tol: f64) -> Result<PstCertificate, SpectralError> {
        Ok(PstCertificate::from_report(&self.amplitude(u, v, t)?, tol))
    }

    fn magnitude(&self, u: VertexId, v: VertexId, t: f64) -> f64 {
        self.spectrum.amplitude(u, v, t).norm()
    }

    /// Grid step used by [`Evolution::find_pst_time`]: 64 samples per
    /// half-period of the fastest eigenvalue, never finer than `1e-3`.
    pub fn scan_step(&self, t_max: f64) -> f64 {
        let radius = self.spectrum.spectral_radius();
        let step = if radius > 0.0 { PI / (64.0 * radius) } else { t_max };
        step.max(1e-3)
    }

    pub fn find_pst_time(
        &self,
        u: VertexId,
        v: VertexId,
        t_max: f64,
        tol: f64,
    ) -> Result<Option<(f64, PstCertificate)>, SpectralError> {
        self.check(u, v, t_max)?;
        if t_max <= 0.0 {
            return Err(SpectralError::InvalidTime(t_max));
        }
        let step = self.scan_step(t_max);
        let mut times = vec![0.0];
        let mut k = 1;
        while (k as f64) * step < t_max {
            times.push(k as f64 * step);
            k += 1;
        }
        times.push(t_max);
        let mags: Vec<f64> = times.iter().map(|&t| self.magnitude(u, v, t)).collect();

        for i in 1..times.len() {
            let left = mags[i - 1];
            let right = mags.get(i + 1).copied().unwrap_or(f64::NEG_INFINITY);
            if mags[i] < left || mags[i] < right || mags[i] < 0.99 {
                continue;
            }
            let hi = times.get(i + 1).copied().unwrap_or(t_max);
            let t = golden_section_max(|t| self.magnitude(u, v, t), times[i - 1], hi);
            let cert = self.check_pst(u, v, t, tol)?;
            if cert.is_pst() {
                return Ok(Some((t, cert)));
            }
        }
        Ok(None)
    }

    pub fn find_pst_pairs(&self, t: f64, tol: f64) -> Vec<AmplitudeReport> {
        let n = self.spectrum.n;
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let report = AmplitudeReport::new(u, v, t, self.spectrum.amplitude(u, v, t));
                if report.magnitude >= 1.0 - tol {
                    out.push(report);
                }
            }
        }
        out
    }
}

fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

/// `exp(-i M t)` for a dense row-major `n x n` matrix by scaling and squaring
/// a truncated Taylor series. Independent of the eigensolver.
pub fn taylor_propagator(matrix: &[Complex64], n: usize, t: f64) -> Vec<Complex64> {
    let norm = (0..n).map(|i| (0..n).map(|j| matrix[i * n + j].norm()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0;
    while norm * t.abs() / f64::from(1u32 << squarings) > 0.5 {
        squarings += 1;
    }
    let scale = Complex64::new(0.0, -t / f64::from(1u32 << squarings));
    let x: Vec<Complex64> = matrix.iter().map(|&m| m * scale).collect();
    let mut result = vec![Complex64::new(0.0, 0.0); n * n];
    let mut term = result.clone();
    for i in 0..n {
        result[i * n + i] = Complex64::new(1.0, 0.0);
        term[i * n + i] = Complex64::new(1.0, 0.0);
    }
    for k in 1..30 {
        term = matmul(&term, &x, n).into_iter().map(|z| z / k as f64).collect();
        result.iter_mut().zip(&term).for_each(|(r, z)| *r += z);
    }
    for _ in 0..squarings {
        result = matmul(&result, &result, n);
    }
    result
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a < 1e-13 {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        c
    } else {
        d
    }
}

pub fn amplitude(g: &Graph, u: VertexId, v: VertexId, t: f64) -> Result<AmplitudeReport, SpectralError> {
    Evolution::new(g)?.amplitude(u, v, t)
}

pub fn check_pst(g: &Graph, u: VertexId, v: VertexId, t: f64, tol: f64) -> Result<PstCertificate, SpectralError> {
    Evolution::new(g)?.check_pst(u, v, t, tol)
}

/// Earliest `tau` in `(0, t_max]` with a perfect transfer from `u` to `v`.
pub fn find_pst_time(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    t_max: f64,
    tol: f64,
) -> Result<Option<(f64, PstCertificate)>, SpectralError> {
    Evolution::new(g)?.find_pst_time(u, v, t_max, tol)
}

/// All unordered pairs with a perfect transfer at time `t`.
pub fn find_pst_pairs(g: &Graph, t: f64, tol: f64) -> Result<Vec<AmplitudeReport>, SpectralError> {
    if !(t.is_finite() && t > 0.0) {
        return Err(SpectralError::InvalidTime(t));
    }
    Ok(Evolution::new(g)?.find_pst_pairs(t, tol))
}

/// A claim that `graph` has a perfect transfer between `source`
/// and `target` at `time`.
#[derive(Debug, Clone)]
pub struct PstClaim {
    pub name: String,
    pub graph: Graph,
    pub source: VertexId,
    pub target: VertexId,
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AuditVerdict {
    #[serde(rename = "CONFIRMED")]
    Confirmed,
    #[serde(rename = "TIME_MISMATCH")]
    TimeMismatch,
    #[serde(rename = "NO_PST")]
    NoPst,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub graph: String,
    pub pair: [String; 2],
    pub claimed_time: f64,
    pub verdict: AuditVerdict,
    pub magnitude: f64,
    pub phase: f64,
    pub corrected_time: Option<f64>,
}

pub fn audit_claim(claim: &PstClaim, t_max: f64, tol: f64) -> Result<AuditEntry, SpectralError> {
    let evo = Evolution::new(&claim.graph)?;
    let at_claim = evo.check_pst(claim.source, claim.target, claim.time, tol)?;
    let found = evo.find_pst_time(claim.source, claim.target, t_max, tol)?;
    let (verdict, corrected_time) = match (at_claim.is_pst(), found) {
        (true, _) => (AuditVerdict::Confirmed, None),
        (false, Some((t, _))) => (AuditVerdict::TimeMismatch, Some(t)),
        (false, None) => (AuditVerdict::NoPst, None),
    };
    Ok(AuditEntry {
        graph: claim.name.clone(),
        pair: [
            claim.graph.label(claim.source).to_string(),
            claim.graph.label(claim.target).to_string(),
        ],
        claimed_time: claim.time,
        verdict,
        magnitude: at_claim.magnitude,
        phase: at_claim.phase,
        corrected_time,
    })
}

pub fn audit_catalog(claims: &[PstClaim], t_max: f64, tol: f64) -> Result<Vec<AuditEntry>, SpectralError> {
    claims.iter().map(|c| audit_claim(c, t_max, tol)).collect()
}
