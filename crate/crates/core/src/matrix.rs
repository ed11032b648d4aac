use alloc::vec::Vec;

use crate::{Error, Result, SpatialLayout};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: alloc::vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                what: "matrix data vs rows*cols",
                left: data.len(),
                right: rows * cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    what: "ragged matrix rows",
                    left: r.len(),
                    right: cols,
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.as_ref().len());
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    what: "ragged matrix columns",
                    left: c.len(),
                    right: rows,
                });
            }
            for (i, &v) in c.iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, col)).collect()
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Self {
        Self {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.data[i * cols.len() + jj] = self.get(i, j);
            }
        }
        m
    }

    pub fn push_row(&mut self, row: &[f64]) -> Result<()> {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                what: "row length vs matrix columns",
                left: row.len(),
                right: self.cols,
            });
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Recorded reservoir readouts: one row per input sample, one column per
/// readout node.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutMatrix {
    data: Matrix,
    layout: SpatialLayout,
    dt: f64,
}

impl ReadoutMatrix {
    pub fn new(data: Matrix, layout: SpatialLayout, dt: f64) -> Result<Self> {
        if data.cols() != layout.len() {
            return Err(Error::LengthMismatch {
                what: "readout columns vs layout nodes",
                left: data.cols(),
                right: layout.len(),
            });
        }
        if !data.is_finite() {
            return Err(Error::NonFinite("readout matrix"));
        }
        if !(dt > 0.0) {
            return Err(Error::param("dt", "must be positive"));
        }
        Ok(Self { data, layout, dt })
    }

    /// Readouts built from per-node traces.
    pub fn from_traces<C: AsRef<[f64]>>(traces: &[C], layout: SpatialLayout) -> Result<Self> {
        Self::new(Matrix::from_columns(traces)?, layout, 1.0)
    }

    pub fn data(&self) -> &Matrix {
        &self.data
    }

    pub fn layout(&self) -> &SpatialLayout {
        &self.layout
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.data.rows()
    }

    pub fn nodes(&self) -> usize {
        self.data.cols()
    }

    pub fn trace(&self, node: usize) -> Vec<f64> {
        self.data.column(node)
    }

    /// Columns reordered so that new node `i` is old node `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(
            self.data.select_columns(order),
            self.layout.permuted(order)?,
            self.dt,
        )
    }
}
