//! Run configuration: grid sizes, tolerances and output settings.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Samples on the arc-length grid.
    pub grid_n: usize,
    /// Step for finite-difference checks of the variation formulas.
    pub fd_step: f64,
    /// Absolute tolerance for scalar root searches.
    pub root_tol: f64,
    /// Grid step of the determinant scan above mu0.
    pub mu_scan_step: f64,
    /// Upper cap of the determinant scan.
    pub mu_cap: f64,
    /// Hermite elements used by the Rayleigh and coercivity solves.
    pub fe_elements: usize,
    /// Nodes of the Chebyshev-clustered height grid used by symmetrization.
    pub steiner_nodes: usize,
    /// Lower bound on |second derivative| for graph integrands.
    pub curvature_floor: f64,
    /// Endpoint tolerance for admissibility.
    pub endpoint_tol: f64,
    /// Bracket growth cap for length inversion, in units of x0.
    pub length_cap: f64,
    pub output_dir: PathBuf,
    pub format: OutputFormat,
    pub svg: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_n: 4096,
            fd_step: 1e-3,
            root_tol: 1e-12,
            mu_scan_step: 1e-3,
            mu_cap: 50.0,
            fe_elements: 2048,
            steiner_nodes: 2048,
            curvature_floor: 1e-12,
            endpoint_tol: 1e-8,
            length_cap: 1e9,
            output_dir: PathBuf::from("out"),
            format: OutputFormat::Json,
            svg: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 64 {
            return Err(Error::InvalidInput(format!("grid_n = {} < 64", self.grid_n)));
        }
        if self.fe_elements < 64 {
            return Err(Error::InvalidInput(format!("fe_elements = {} < 64", self.fe_elements)));
        }
        let positive = [
            ("fd_step", self.fd_step),
            ("root_tol", self.root_tol),
            ("mu_scan_step", self.mu_scan_step),
            ("mu_cap", self.mu_cap),
            ("curvature_floor", self.curvature_floor),
            ("endpoint_tol", self.endpoint_tol),
            ("length_cap", self.length_cap),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}
