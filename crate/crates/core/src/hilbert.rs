//! Full many-qubit XY Hamiltonian on small graphs, used to check that the
//! single-excitation sector evolves by the adjacency matrix.
//!
//! Qubit `u` is tensor factor `u` counting from the left, and bit `u` of a
//! basis-state integer is set when qubit `u` is excited.

use num_complex::{Complex, Complex64};
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::spectral::Evolution;

pub const MAX_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HilbertError {
    #[error("{0} qubits exceeds the dense limit of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("basis has {basis} qubits, operator has {operator}")]
    DimensionMismatch { basis: usize, operator: usize },
    #[error("weight {weight} exceeds {n} qubits")]
    InvalidWeight { n: usize, weight: usize },
    #[error("qubit {qubit} is outside a {n}-qubit register")]
    InvalidQubit { n: usize, qubit: usize },
}

/// Basis states with exactly `weight` excitations, ascending as integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcitationBasis {
    n: usize,
    weight: usize,
    states: Vec<usize>,
}

impl ExcitationBasis {
    pub fn new(n: usize, weight: usize) -> Result<Self, HilbertError> {
        if n > MAX_QUBITS {
            return Err(HilbertError::TooManyQubits(n));
        }
        if weight > n {
            return Err(HilbertError::InvalidWeight { n, weight });
        }
        let states = (0..1usize << n).filter(|s| s.count_ones() as usize == weight).collect();
        Ok(ExcitationBasis { n, weight, states })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

/// Sparse operator on `n` qubits. Entries are stored doubled as Gaussian
/// integers so that half-integer couplings stay exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n: usize,
    rows: Vec<Vec<(usize, Complex<i32>)>>,
}

impl Operator {
    pub fn zero(n: usize) -> Result<Self, HilbertError> {
        if n > MAX_QUBITS {
            return Err(HilbertError::TooManyQubits(n));
        }
        Ok(Operator { n, rows: vec![Vec::new(); 1 << n] })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    /// Adds `coefficient / 2` times the tensor product of `factors`, with the
    /// identity on every unnamed qubit.
    pub fn add_pauli_term(&mut self, coefficient: Complex<i32>, factors: &[(usize, Pauli)]) -> Result<(), HilbertError> {
        for &(q, _) in factors {
            if q >= self.n {
                return Err(HilbertError::InvalidQubit { n: self.n, qubit: q });
            }
        }
        let i = Complex::new(0, 1);
        for col in 0..self.dim() {
            let mut row = col;
            let mut value = coefficient;
            for &(q, p) in factors {
                let set = col >> q & 1 == 1;
                match p {
                    Pauli::I => {}
                    Pauli::X => row ^= 1 << q,
                    Pauli::Y => {
                        row ^= 1 << q;
                        value *= if set { -i } else { i };
                    }
                    Pauli::Z => {
                        if set {
                            value = -value;
                        }
                    }
                }
            }
            self.add_entry(row, col, value);
        }
        Ok(())
    }

    fn add_entry(&mut self, row: usize, col: usize, value: Complex<i32>) {
        let r = &mut self.rows[row];
        match r.binary_search_by_key(&col, |e| e.0) {
            Ok(k) => {
                r[k].1 += value;
                if r[k].1 == Complex::new(0, 0) {
                    r.remove(k);
                }
            }
            Err(k) => {
                if value != Complex::new(0, 0) {
                    r.insert(k, (col, value));
                }
            }
        }
    }

    /// Twice the matrix element `<row| H |col>`.
    pub fn doubled_entry(&self, row: usize, col: usize) -> Complex<i32> {
        let r = &self.rows[row];
        r.binary_search_by_key(&col, |e| e.0).map_or(Complex::new(0, 0), |k| r[k].1)
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let d = self.doubled_entry(row, col);
        Complex64::new(d.re as f64 / 2.0, d.im as f64 / 2.0)
    }

    /// Nonzero entries as `(row, col, doubled value)`.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Complex<i32>)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut m = vec![vec![Complex64::new(0.0, 0.0); self.dim()]; self.dim()];
        for (r, c, _) in self.nonzeros() {
            m[r][c] = self.entry(r, c);
        }
        m
    }

    pub fn is_hermitian(&self) -> bool {
        self.nonzeros().all(|(r, c, v)| self.doubled_entry(c, r) == v.conj())
    }

    fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| psi[c] * Complex64::new(v.re as f64 / 2.0, v.im as f64 / 2.0)).sum())
            .collect()
    }

    /// Upper bound on the spectral norm: the largest absolute row sum.
    pub fn norm_bound(&self) -> f64 {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(_, v)| Complex64::new(v.re as f64, v.im as f64).norm() / 2.0).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `exp(-i H t) psi` by Taylor series over steps with `|H| dt <= 1/2`.
    pub fn evolve(&self, psi: &[Complex64], t: f64) -> Vec<Complex64> {
        let norm = self.norm_bound();
        let steps = ((norm * t.abs()) / 0.5).ceil().max(1.0) as usize;
        let dt = t / steps as f64;
        let mut state = psi.to_vec();
        for _ in 0..steps {
            let mut term = state.clone();
            let mut sum = state.clone();
            for k in 1..60 {
                let applied = self.apply(&term);
                let factor = Complex64::new(0.0, -dt / k as f64);
                term = applied.into_iter().map(|x| x * factor).collect();
                let size = term.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
                sum.iter_mut().zip(&term).for_each(|(s, x)| *s += x);
                if size < 1e-17 {
                    break;
                }
            }
            state = sum;
        }
        state
    }
}

/// `H = 1/2 sum over edges of (X_u X_v + Y_u Y_v)`.
pub fn build_xy_hamiltonian(g: &Graph) -> Result<Operator, HilbertError> {
    let mut h = Operator::zero(g.vertex_count())?;
    for &(u, v) in g.edges() {
        h.add_pauli_term(Complex::new(1, 0), &[(u, Pauli::X), (v, Pauli::X)])?;
        h.add_pauli_term(Complex::new(1, 0), &[(u, Pauli::Y), (v, Pauli::Y)])?;
    }
    Ok(h)
}

/// Row-major block of `h` on the basis states.
pub fn restrict_to_weight(h: &Operator, basis: &ExcitationBasis) -> Result<Vec<Vec<Complex64>>, HilbertError> {
    if basis.n() != h.qubits() {
        return Err(HilbertError::DimensionMismatch { basis: basis.n(), operator: h.qubits() });
    }
    Ok(basis.states().iter().map(|&r| basis.states().iter().map(|&c| h.entry(r, c)).collect()).collect())
}

pub fn check_excitation_conservation(h: &Operator) -> bool {
    h.nonzeros().all(|(r, c, _)| r.count_ones() == c.count_ones())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub n: usize,
    pub weight1_equals_adjacency: bool,
    pub conservation: bool,
    pub hermitian: bool,
    /// Largest deviation between the weight-1 block of the full propagator
    /// and the adjacency propagator over the sampled times.
    pub max_block_residual: f64,
}

pub fn cross_check(g: &Graph, times: &[f64]) -> Result<CrossCheck, HilbertError> {
    let n = g.vertex_count();
    let h = build_xy_hamiltonian(g)?;
    let block = restrict_to_weight(&h, &ExcitationBasis::new(n, 1)?)?;
    let a = g.adjacency_matrix();
    let weight1_equals_adjacency =
        (0..n).all(|i| (0..n).all(|j| block[i][j] == Complex64::new(a[i][j] as f64, 0.0)));

    let mut residual: f64 = 0.0;
    if n > 0 {
        let evo = Evolution::new(g).expect("non-empty graph");
        for &t in times {
            for u in 0..n {
                let mut psi = vec![Complex64::new(0.0, 0.0); h.dim()];
                psi[1 << u] = Complex64::new(1.0, 0.0);
                let out = h.evolve(&psi, t);
                for v in 0..n {
                    residual = residual.max((out[1 << v] - evo.spectrum().amplitude(u, v, t)).norm());
                }
            }
        }
    }
    Ok(CrossCheck {
        n,
        weight1_equals_adjacency,
        conservation: check_excitation_conservation(&h),
        hermitian: h.is_hermitian(),
        max_block_residual: residual,
    })
}
