//! Uniform time grids and dense sample histories.
//!
//! Fractional operators are non-local: the value at the newest node depends
//! on every stored sample back to the grid origin. Histories are therefore
//! dense by construction; there is no windowing or truncation.

use crate::error::{FraflowError, Result};

/// Uniform grid t_k = t0 + k * dt, k = 0..=n_steps.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    pub t0: f64,
    pub dt: f64,
    pub n_steps: usize,
}

impl UniformGrid {
    pub fn new(t0: f64, dt: f64, n_steps: usize) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(FraflowError::precondition(format!(
                "grid step must be positive and finite, got {dt}"
            )));
        }
        if n_steps < 1 {
            return Err(FraflowError::precondition("grid needs n_steps >= 1"));
        }
        if !t0.is_finite() {
            return Err(FraflowError::precondition("grid t0 must be finite"));
        }
        Ok(UniformGrid { t0, dt, n_steps })
    }

    /// Node count including both endpoints.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, k: usize) -> f64 {
        self.t0 + self.dt * k as f64
    }

    pub fn t_end(&self) -> f64 {
        self.node(self.n_steps)
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.node(k)).collect()
    }
}

/// Vector-valued samples on the leading nodes of a uniform grid, oldest first.
#[derive(Debug, Clone)]
pub struct SampleHistory {
    grid: UniformGrid,
    dim: usize,
    values: Vec<Vec<f64>>,
}

impl SampleHistory {
    pub fn new(grid: UniformGrid, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(FraflowError::precondition("history dimension must be >= 1"));
        }
        Ok(SampleHistory {
            grid,
            dim,
            values: Vec::new(),
        })
    }

    /// Builds a fully populated history from a closure sampled at every node.
    pub fn from_fn(grid: UniformGrid, dim: usize, mut f: impl FnMut(f64) -> Vec<f64>) -> Result<Self> {
        let mut h = SampleHistory::new(grid, dim)?;
        for k in 0..h.grid.len() {
            let t = h.grid.node(k);
            let v = f(t);
            h.push(v)?;
        }
        Ok(h)
    }

    /// Scalar convenience wrapper around [`SampleHistory::from_fn`].
    pub fn from_scalar_fn(grid: UniformGrid, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        SampleHistory::from_fn(grid, 1, move |t| vec![f(t)])
    }

    pub fn push(&mut self, value: Vec<f64>) -> Result<()> {
        if value.len() != self.dim {
            return Err(FraflowError::DimensionMismatch {
                expected: self.dim,
                got: value.len(),
            });
        }
        if self.values.len() >= self.grid.len() {
            return Err(FraflowError::precondition(
                "history already spans the whole grid",
            ));
        }
        if value.iter().any(|x| !x.is_finite()) {
            return Err(FraflowError::precondition("non-finite history sample"));
        }
        self.values.push(value);
        Ok(())
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of populated nodes.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, k: usize) -> &[f64] {
        &self.values[k]
    }

    pub fn latest(&self) -> Option<&[f64]> {
        self.values.last().map(|v| v.as_slice())
    }

    /// Time of the newest populated node.
    pub fn latest_time(&self) -> Option<f64> {
        if self.values.is_empty() {
            None
        } else {
            Some(self.grid.node(self.values.len() - 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_nodes_increase() {
        let g = UniformGrid::new(1.0, 0.5, 4).unwrap();
        let t = g.times();
        assert_eq!(t.len(), 5);
        for w in t.windows(2) {
            assert!(w[1] > w[0]);
        }
        assert_eq!(g.t_end(), 3.0);
    }

    #[test]
    fn grid_rejects_bad_step() {
        assert!(UniformGrid::new(0.0, 0.0, 3).is_err());
        assert!(UniformGrid::new(0.0, -1.0, 3).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn history_rejects_dim_mismatch() {
        let g = UniformGrid::new(0.0, 0.1, 3).unwrap();
        let mut h = SampleHistory::new(g, 2).unwrap();
        h.push(vec![1.0, 2.0]).unwrap();
        assert!(h.push(vec![1.0]).is_err());
    }

    #[test]
    fn history_capacity_is_grid_bound() {
        let g = UniformGrid::new(0.0, 0.1, 1).unwrap();
        let mut h = SampleHistory::new(g, 1).unwrap();
        h.push(vec![0.0]).unwrap();
        h.push(vec![1.0]).unwrap();
        assert!(h.push(vec![2.0]).is_err());
    }
}
