use crate::error::{domain, Result};

/// Closed parameter interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return domain(format!("interval requires finite lo < hi, got [{lo}, {hi}]"));
        }
        Ok(Self { lo, hi })
    }

    pub fn is_symmetric(&self) -> bool {
        self.lo == -self.hi
    }

    /// Value of tick `i` out of `levels` evenly spaced ticks, endpoints included.
    ///
    /// Computed as `mid + (2i - (L-1)) * half / (L-1)` so that on a symmetric
    /// interval tick `L-1-i` is the exact negation of tick `i`.
    #[inline]
    fn tick(&self, i: u64, levels: u64) -> f64 {
        let last = levels - 1;
        if i == 0 {
            return self.lo;
        }
        if i == last {
            return self.hi;
        }
        let mid = if self.is_symmetric() { 0.0 } else { 0.5 * (self.lo + self.hi) };
        let half = 0.5 * (self.hi - self.lo);
        let numerator = 2.0 * i as f64 - last as f64;
        mid + numerator * half / last as f64
    }
}

/// Discretization of a box of `P` parameters into `L` evenly spaced values
/// each, giving `E = L^P` models indexed `0..E`.
///
/// A grid built with [`ParameterGrid::new`] has `L = 2^τ` for `τ` bits per
/// parameter, which is the form a parameter register of `τ·P` qubits can
/// hold. Indices are packed most-significant-parameter first: parameter `j`
/// occupies digit `P-1-j` of the base-`L` expansion of the index.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterGrid {
    intervals: Vec<Interval>,
    levels: u64,
    bits: Option<u32>,
    size: u64,
}

impl ParameterGrid {
    /// Grid with `bits_per_parameter` qubits per parameter.
    pub fn new(intervals: Vec<Interval>, bits_per_parameter: u32) -> Result<Self> {
        if bits_per_parameter == 0 {
            return domain("bits per parameter must be positive");
        }
        let total = bits_per_parameter as u64 * intervals.len() as u64;
        if total > 62 {
            return domain(format!("{total} index bits do not fit a 64-bit index"));
        }
        let mut grid = Self::with_levels(intervals, 1u64 << bits_per_parameter)?;
        grid.bits = Some(bits_per_parameter);
        Ok(grid)
    }

    /// Grid with an arbitrary number of values per parameter. Such grids can
    /// be enumerated classically but only power-of-two grids map to qubits.
    pub fn with_levels(intervals: Vec<Interval>, levels: u64) -> Result<Self> {
        if intervals.is_empty() {
            return domain("a grid needs at least one parameter");
        }
        if levels < 2 {
            return domain(format!("need at least 2 values per parameter, got {levels}"));
        }
        let mut size: u64 = 1;
        for _ in &intervals {
            size = size
                .checked_mul(levels)
                .filter(|s| *s <= 1u64 << 62)
                .ok_or_else(|| crate::Error::Domain("grid size overflows 2^62".into()))?;
        }
        let bits = levels.is_power_of_two().then(|| levels.trailing_zeros());
        Ok(Self { intervals, levels, bits, size })
    }

    /// Every parameter on the same interval.
    pub fn uniform(parameter_count: usize, lo: f64, hi: f64, bits_per_parameter: u32) -> Result<Self> {
        let interval = Interval::new(lo, hi)?;
        Self::new(vec![interval; parameter_count], bits_per_parameter)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn parameter_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn levels(&self) -> u64 {
        self.levels
    }

    /// `τ` when the number of levels is a power of two.
    pub fn bits_per_parameter(&self) -> Option<u32> {
        self.bits
    }

    /// Width `τ·P` of the parameter register, if the grid is qubit-addressable.
    pub fn register_bits(&self) -> Option<u32> {
        self.bits.map(|b| b * self.intervals.len() as u32)
    }

    /// Number of models `E`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// True when every interval is of the form `[-h, h]`.
    pub fn is_symmetric(&self) -> bool {
        self.intervals.iter().all(Interval::is_symmetric)
    }

    /// Per-parameter tick indices of a model index, most significant first.
    pub fn ticks(&self, index: u64) -> Result<Vec<u64>> {
        self.check_index(index)?;
        let mut ticks = vec![0; self.intervals.len()];
        let mut rest = index;
        for t in ticks.iter_mut().rev() {
            *t = rest % self.levels;
            rest /= self.levels;
        }
        Ok(ticks)
    }

    /// Inverse of [`ParameterGrid::ticks`].
    pub fn index_of(&self, ticks: &[u64]) -> Result<u64> {
        if ticks.len() != self.intervals.len() {
            return domain(format!("expected {} ticks, got {}", self.intervals.len(), ticks.len()));
        }
        let mut index = 0u64;
        for &t in ticks {
            if t >= self.levels {
                return domain(format!("tick {t} out of range 0..{}", self.levels));
            }
            index = index * self.levels + t;
        }
        Ok(index)
    }

    /// Parameter vector `θ` of model `index`.
    pub fn decode(&self, index: u64) -> Result<Vec<f64>> {
        self.check_index(index)?;
        let mut theta = vec![0.0; self.intervals.len()];
        self.decode_into(index, &mut theta);
        Ok(theta)
    }

    /// Writes `θ` for an in-range `index` into `out` (length `P`).
    pub fn decode_into(&self, index: u64, out: &mut [f64]) {
        debug_assert!(index < self.size && out.len() == self.intervals.len());
        let mut rest = index;
        for (value, interval) in out.iter_mut().zip(&self.intervals).rev() {
            *value = interval.tick(rest % self.levels, self.levels);
            rest /= self.levels;
        }
    }

    /// Index of `-θ` on a symmetric grid: every tick `i` maps to `L-1-i`.
    pub fn negated_index(&self, index: u64) -> Result<u64> {
        if !self.is_symmetric() {
            return domain("negation is only closed on grids symmetric around zero");
        }
        self.check_index(index)?;
        let mut out = 0u64;
        let mut scale = 1u64;
        let mut rest = index;
        for _ in 0..self.intervals.len() {
            let tick = rest % self.levels;
            out += (self.levels - 1 - tick) * scale;
            scale = scale.wrapping_mul(self.levels);
            rest /= self.levels;
        }
        Ok(out)
    }

    /// All parameter vectors in index order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        (0..self.size).map(move |i| {
            let mut theta = vec![0.0; self.intervals.len()];
            self.decode_into(i, &mut theta);
            theta
        })
    }

    fn check_index(&self, index: u64) -> Result<()> {
        if index >= self.size {
            return domain(format!("index {index} out of range 0..{}", self.size));
        }
        Ok(())
    }
}
