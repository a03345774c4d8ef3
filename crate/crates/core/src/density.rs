//! Gaussian kernel density estimate of node positions on a regular grid.

use std::f64::consts::PI;

use crate::error::DensityError;
use crate::mesh::PointSet;
use crate::par;

/// Grid padding on each side, in bandwidths.
pub const PADDING: f64 = 3.0;

#[derive(Clone, Debug, PartialEq)]
pub enum Bandwidth {
    /// Scott's rule: `N^(-1/(D+4))` times the per-axis sample standard deviation.
    Auto,
    /// Same bandwidth on every axis.
    Uniform(f64),
    PerAxis(Vec<f64>),
}

/// Density values at cell centers of a regular grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityGrid {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub resolution: Vec<usize>,
    pub bandwidth: Vec<f64>,
    /// Row-major: the first axis varies slowest.
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn dim(&self) -> usize {
        self.resolution.len()
    }

    pub fn cell_width(&self, axis: usize) -> f64 {
        (self.upper[axis] - self.lower[axis]) / self.resolution[axis] as f64
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.dim()).map(|a| self.cell_width(a)).product()
    }

    pub fn cell_center(&self, axis: usize, j: usize) -> f64 {
        self.lower[axis] + (j as f64 + 0.5) * self.cell_width(axis)
    }

    /// Cell-volume-weighted sum of all values (approximately 1).
    pub fn total_mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.cell_volume()
    }

    /// Value at the cell with the given per-axis indices.
    pub fn value(&self, index: &[usize]) -> f64 {
        let flat = index.iter().zip(&self.resolution).fold(0, |acc, (&i, &r)| acc * r + i);
        self.values[flat]
    }
}

/// Scott's-rule bandwidth per axis.
pub fn scott_bandwidth(points: &PointSet) -> Result<Vec<f64>, DensityError> {
    let n = points.len();
    if n == 0 {
        return Err(DensityError::NoPoints);
    }
    let factor = (n as f64).powf(-1.0 / (points.dim() as f64 + 4.0));
    (0..points.dim())
        .map(|axis| {
            let std = sample_std(points, axis);
            if std > 0.0 && std.is_finite() {
                Ok(factor * std)
            } else {
                Err(DensityError::BandwidthUndefined { axis })
            }
        })
        .collect()
}

fn sample_std(points: &PointSet, axis: usize) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    let mean = (0..n).map(|i| points.coord(i, axis)).sum::<f64>() / n as f64;
    let ss: f64 = (0..n).map(|i| (points.coord(i, axis) - mean).powi(2)).sum();
    (ss / (n - 1) as f64).sqrt()
}

fn resolve_bandwidth(points: &PointSet, bandwidth: &Bandwidth) -> Result<Vec<f64>, DensityError> {
    let dim = points.dim();
    let h = match bandwidth {
        Bandwidth::Auto => return scott_bandwidth(points),
        Bandwidth::Uniform(h) => vec![*h; dim],
        Bandwidth::PerAxis(h) if h.len() == dim => h.clone(),
        Bandwidth::PerAxis(h) => {
            return Err(DensityError::BandwidthDimension { found: h.len(), dim })
        }
    };
    match h.iter().find(|h| !(h.is_finite() && **h > 0.0)) {
        Some(&bad) => Err(DensityError::InvalidBandwidth(bad)),
        None => Ok(h),
    }
}

/// Evaluates the estimate `(1/N) Σ_i Π_a φ((x_a - p_ia) / h_a) / h_a` at the cell
/// centers of a grid spanning the points' bounding box padded by `3h` per axis.
pub fn density_kde(
    points: &PointSet,
    bandwidth: &Bandwidth,
    resolution: &[usize],
) -> Result<DensityGrid, DensityError> {
    let n = points.len();
    let dim = points.dim();
    if n == 0 {
        return Err(DensityError::NoPoints);
    }
    if resolution.len() != dim {
        return Err(DensityError::ResolutionDimension { found: resolution.len(), dim });
    }
    if let Some(&r) = resolution.iter().find(|&&r| r < 2) {
        return Err(DensityError::Resolution(r));
    }
    let h = resolve_bandwidth(points, bandwidth)?;

    let mut lower = vec![f64::INFINITY; dim];
    let mut upper = vec![f64::NEG_INFINITY; dim];
    for p in points.iter() {
        for a in 0..dim {
            lower[a] = lower[a].min(p[a]);
            upper[a] = upper[a].max(p[a]);
        }
    }
    for a in 0..dim {
        lower[a] -= PADDING * h[a];
        upper[a] += PADDING * h[a];
    }

    let mut grid = DensityGrid {
        lower,
        upper,
        resolution: resolution.to_vec(),
        bandwidth: h,
        values: Vec::new(),
    };

    // kernel[a][j * n + i]: normalized 1-D Gaussian of point i at cell center j on axis a
    let kernel: Vec<Vec<f64>> = (0..dim)
        .map(|a| {
            let h = grid.bandwidth[a];
            let norm = 1.0 / ((2.0 * PI).sqrt() * h);
            let mut k = Vec::with_capacity(resolution[a] * n);
            for j in 0..resolution[a] {
                let x = grid.cell_center(a, j);
                k.extend(points.iter().map(|p| {
                    let z = (x - p[a]) / h;
                    norm * (-0.5 * z * z).exp()
                }));
            }
            k
        })
        .collect();

    let cells: usize = resolution.iter().product();
    let last = resolution[dim - 1];
    let mut values = vec![0.0; cells];
    let inv_n = 1.0 / n as f64;
    // One task per row along the last axis; each cell sums points in index order.
    par::fill_chunks(&mut values, last, |row, out| {
        let mut outer = vec![1.0; n];
        let mut rem = row;
        for a in (0..dim - 1).rev() {
            let j = rem % resolution[a];
            rem /= resolution[a];
            let k = &kernel[a][j * n..(j + 1) * n];
            outer.iter_mut().zip(k).for_each(|(o, k)| *o *= k);
        }
        let k_last = &kernel[dim - 1];
        for (j, cell) in out.iter_mut().enumerate() {
            let k = &k_last[j * n..(j + 1) * n];
            *cell = outer.iter().zip(k).map(|(o, k)| o * k).sum::<f64>() * inv_n;
        }
    });
    grid.values = values;
    Ok(grid)
}
