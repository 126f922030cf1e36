use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::weighting::tree_sum;

/// Largest register the simulator allocates unless told otherwise.
pub const DEFAULT_QUBIT_CAP: u32 = 26;

const PARALLEL_MIN: usize = 1 << 12;

/// Register widths of the simulated machine. The output and accuracy
/// registers are always one qubit each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    param_qubits: u32,
    count_qubits: u32,
}

impl RegisterLayout {
    pub fn new(param_qubits: u32, count_qubits: u32) -> Result<Self> {
        if param_qubits == 0 {
            return Err(Error::Domain("parameter register needs at least one qubit".into()));
        }
        Ok(Self { param_qubits, count_qubits })
    }

    /// Width of a count register holding `0..=m`: `⌈log2(m+1)⌉`.
    pub fn count_width(m: usize) -> u32 {
        (usize::BITS - m.leading_zeros()).max(1)
    }

    pub fn param_qubits(&self) -> u32 {
        self.param_qubits
    }

    pub fn count_qubits(&self) -> u32 {
        self.count_qubits
    }

    pub fn total_qubits(&self) -> u32 {
        self.param_qubits + 2 + self.count_qubits
    }

    /// Number of parameter basis states `E`.
    pub fn models(&self) -> usize {
        1usize << self.param_qubits
    }

    /// Amplitudes per parameter basis state.
    pub fn block_len(&self) -> usize {
        1usize << (2 + self.count_qubits)
    }

    pub fn dimension(&self) -> usize {
        1usize << self.total_qubits()
    }

    /// Bit position of the output qubit within a block.
    pub fn output_bit(&self) -> u32 {
        self.count_qubits + 1
    }

    pub fn accuracy_bit(&self) -> u32 {
        self.count_qubits
    }

    pub fn check_cap(&self, cap: u32) -> Result<()> {
        if self.total_qubits() > cap {
            return Err(Error::Resource(format!("{} qubits requested, cap is {cap}", self.total_qubits())));
        }
        Ok(())
    }
}

/// Simulated state over `parameter ⊗ output ⊗ accuracy (⊗ count)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleState {
    amplitudes: Vec<Complex64>,
    layout: RegisterLayout,
}

impl EnsembleState {
    /// `|0…0⟩` on every register.
    pub fn zero(layout: RegisterLayout, cap: u32) -> Result<Self> {
        layout.check_cap(cap)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dimension()];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes, layout })
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        let probs: Vec<f64> = self.amplitudes.iter().map(|a| a.norm_sqr()).collect();
        tree_sum(&probs)
    }

    /// Applies the 2×2 unitary `gate` (row-major) to `qubit`, counted from
    /// the least significant bit.
    pub fn apply_single_qubit(&mut self, gate: [[Complex64; 2]; 2], qubit: u32) {
        let half = 1usize << qubit;
        let kernel = |chunk: &mut [Complex64]| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = gate[0][0] * x + gate[0][1] * y;
                *b = gate[1][0] * x + gate[1][1] * y;
            }
        };
        if self.amplitudes.len() >= PARALLEL_MIN {
            self.amplitudes.par_chunks_mut(2 * half).for_each(kernel);
        } else {
            self.amplitudes.chunks_mut(2 * half).for_each(kernel);
        }
    }

    pub fn hadamard(&mut self, qubit: u32) {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        self.apply_single_qubit([[h, h], [h, -h]], qubit);
    }

    pub fn pauli_x(&mut self, qubit: u32) {
        let (o, i) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        self.apply_single_qubit([[o, i], [i, o]], qubit);
    }

    /// Qubit index of parameter-register bit `j` (0 = least significant).
    pub fn param_qubit(&self, j: u32) -> u32 {
        self.layout.count_qubits + 2 + j
    }

    /// Runs `op(θ, block)` on the amplitudes of every parameter basis state.
    /// This is how `θ`-conditioned (multiplexed) gates are applied.
    pub fn for_each_block<F>(&mut self, op: F)
    where
        F: Fn(usize, &mut [Complex64]) + Sync + Send,
    {
        let len = self.layout.block_len();
        if self.amplitudes.len() >= PARALLEL_MIN {
            self.amplitudes.par_chunks_mut(len).enumerate().for_each(|(t, b)| op(t, b));
        } else {
            self.amplitudes.chunks_mut(len).enumerate().for_each(|(t, b)| op(t, b));
        }
    }

    /// Probability that `bit` of the block index reads 1.
    pub fn bit_probability(&self, bit: u32) -> f64 {
        let mask = 1usize << bit;
        let probs: Vec<f64> = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, a)| if i & mask != 0 { a.norm_sqr() } else { 0.0 })
            .collect();
        tree_sum(&probs)
    }

    /// Marginal distribution of the parameter register.
    pub fn param_distribution(&self) -> Vec<f64> {
        self.amplitudes
            .chunks(self.layout.block_len())
            .map(|b| b.iter().map(|a| a.norm_sqr()).sum())
            .collect()
    }

    /// Squared norm of the part of the state where `bit` is set.
    pub(crate) fn weight_where_set(&self, bit: u32) -> f64 {
        self.bit_probability(bit)
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub(crate) fn scale(&mut self, factor: f64) {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
    }

    /// Writes `basis,re,im` rows for every amplitude. The basis column is
    /// the full register as a bit string, most significant qubit first
    /// (parameter bits, output, accuracy, count); values carry 17
    /// significant digits.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        let width = self.layout.total_qubits() as usize;
        writeln!(out, "basis,re,im")?;
        for (i, a) in self.amplitudes.iter().enumerate() {
            writeln!(out, "{:0width$b},{:.16e},{:.16e}", i, a.re, a.im)?;
        }
        Ok(())
    }
}
