use serde::Serialize;

use crate::Result;

use super::grid::Grid;

/// Residuals of one check on successively halved grids.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceStudy {
    pub grid_sizes: Vec<usize>,
    pub residuals: Vec<f64>,
}

impl ConvergenceStudy {
    /// Ratio of the last two residuals (≈ 4 for second order).
    pub fn ratio(&self) -> Option<f64> {
        match self.residuals.as_slice() {
            [.., a, b] if *b > 0.0 => Some(a / b),
            _ => None,
        }
    }

    pub fn order(&self) -> Option<f64> {
        self.ratio().map(f64::log2)
    }

    pub fn finest(&self) -> f64 {
        *self.residuals.last().unwrap_or(&f64::NAN)
    }
}

/// Evaluate `residual` on `coarse` and `levels − 1` successive refinements.
pub fn convergence_study<F>(coarse: Grid, levels: usize, residual: F) -> Result<ConvergenceStudy>
where
    F: Fn(&Grid) -> Result<f64>,
{
    let mut grid = coarse;
    let mut study = ConvergenceStudy { grid_sizes: Vec::new(), residuals: Vec::new() };
    for level in 0..levels.max(1) {
        if level > 0 {
            grid = grid.refined();
        }
        study.grid_sizes.push(grid.n_points());
        study.residuals.push(residual(&grid)?);
    }
    Ok(study)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_second_order() {
        let g = Grid::new(0.0, 1.0, 101).unwrap();
        let s = convergence_study(g, 3, |g| Ok(g.spacing().powi(2))).unwrap();
        assert_eq!(s.grid_sizes, vec![101, 201, 401]);
        assert!((s.ratio().unwrap() - 4.0).abs() < 1e-10);
        assert!((s.order().unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_residual_has_no_ratio() {
        let g = Grid::new(0.0, 1.0, 101).unwrap();
        let s = convergence_study(g, 2, |_| Ok(0.0)).unwrap();
        assert_eq!(s.ratio(), None);
    }
}
