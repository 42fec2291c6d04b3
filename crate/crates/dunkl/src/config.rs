//! Run configuration: one validated parameter set for the verification
//! suites, loadable from TOML with every field optional and defaulted.
//!
//! [`RunConfig`] collects everything a run depends on — multiplicity vector,
//! dimension, grid geometry, quadrature order, radius schedule, mollification,
//! suite selection, output directory, random seed, worker cap. Validation
//! happens before any computation: numeric fields are range-checked and
//! unknown suite names are rejected by name. The same struct feeds
//! `describe` (dry-run plan), `run` (execute suites), and the resolved-value
//! accessors ([`RunConfig::multiplicity`], [`RunConfig::grid`],
//! [`RunConfig::schedule`], …) used by the suites themselves.
//!
//! Defaults are chosen so a bare `dunkl run` finishes in desk time on one
//! core while meeting every advertised tolerance: `kappa = [0.5]`, `dim = 1`,
//! `grid_size = 256`, `half_width = 12`, `quadrature_order = 400`, a 24-step
//! geometric radius schedule on `[0.05, 4]`, mollification `1e-4`, all seven
//! suites, seed 7.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grid::Grid;
use crate::maximal::{MaximalSettings, RadiusSchedule};
use crate::measure::Multiplicity;
use crate::Result;

/// The seven named verification suites, in canonical execution order.
pub const SUITE_NAMES: [&str; 7] = [
    "kernel",
    "product-formula",
    "transform",
    "translation",
    "maximal",
    "covering",
    "fefferman-stein",
];

/// Complete parameter set for a verification run.
///
/// Serializes to/from TOML; every field is optional in the file and falls
/// back to the documented default. Unknown keys are rejected so typos cannot
/// silently revert a field to its default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Multiplicity components. A single entry broadcasts across `dim` axes;
    /// otherwise the length must equal `dim`. Default `[0.5]`.
    pub kappa: Vec<f64>,
    /// Ambient dimension, `1..=3`. Default 1.
    pub dim: usize,
    /// Nodes per axis: even, `8..=4096`. Default 256.
    pub grid_size: usize,
    /// Domain half-width `L`: the grid covers `[-L, L]^dim`. Default 12.
    pub half_width: f64,
    /// Node count for the dense quadrature rules used by the kernel and
    /// product-formula suites, `8..=2000`. Default 400.
    pub quadrature_order: usize,
    /// Smallest radius of the maximal-operator schedule. Default 0.05.
    pub radius_min: f64,
    /// Largest radius of the maximal-operator schedule. Default 4.
    pub radius_max: f64,
    /// Number of radii in the geometric schedule, `>= 2`. Default 24.
    pub radius_count: usize,
    /// Gaussian mollification time for the spectral ball operator, `>= 0`.
    /// Default `1e-4`.
    pub mollification: f64,
    /// Suites to run, a subset of [`SUITE_NAMES`]. Default: all seven.
    pub suites: Vec<String>,
    /// Directory that receives `summary.txt`, `checks.csv`, `constants.csv`
    /// and `report.toml`. Default `dunkl-report`.
    pub output_dir: PathBuf,
    /// Seed for every randomized sweep (covering rectangles, sampled test
    /// points). Default 7.
    pub seed: u64,
    /// Worker-thread cap for parallel sweeps; 0 means one worker per core.
    /// Default 0.
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            kappa: vec![0.5],
            dim: 1,
            grid_size: 256,
            half_width: 12.0,
            quadrature_order: 400,
            radius_min: 0.05,
            radius_max: 4.0,
            radius_count: 24,
            mollification: 1e-4,
            suites: SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
            output_dir: PathBuf::from("dunkl-report"),
            seed: 7,
            workers: 0,
        }
    }
}

impl RunConfig {
    /// Parses a TOML document; missing keys default, unknown keys error.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    /// Reads and parses a TOML config file.
    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Range-checks every field and rejects unknown suite names. Runs before
    /// any computation.
    pub fn validate(&self) -> Result<()> {
        if self.kappa.is_empty() {
            return Err(Error::Config("kappa must have at least one entry".into()));
        }
        for (j, &k) in self.kappa.iter().enumerate() {
            if !k.is_finite() || k < 0.0 {
                return Err(Error::Config(format!(
                    "kappa[{j}] = {k}; every component must be finite and >= 0"
                )));
            }
        }
        if !(1..=3).contains(&self.dim) {
            return Err(Error::Config(format!(
                "dim = {}; supported dimensions are 1..=3",
                self.dim
            )));
        }
        if self.kappa.len() != 1 && self.kappa.len() != self.dim {
            return Err(Error::Config(format!(
                "kappa has {} entries but dim = {}; give one entry (broadcast) or dim entries",
                self.kappa.len(),
                self.dim
            )));
        }
        if self.grid_size < 8 || self.grid_size > 4096 || self.grid_size % 2 != 0 {
            return Err(Error::Config(format!(
                "grid_size = {}; must be even and within 8..=4096",
                self.grid_size
            )));
        }
        if !(self.half_width > 0.0) || self.half_width > 100.0 {
            return Err(Error::Config(format!(
                "half_width = {}; must lie in (0, 100]",
                self.half_width
            )));
        }
        if !(8..=2000).contains(&self.quadrature_order) {
            return Err(Error::Config(format!(
                "quadrature_order = {}; must lie in 8..=2000",
                self.quadrature_order
            )));
        }
        if !(self.radius_min > 0.0) || !self.radius_min.is_finite() {
            return Err(Error::Config(format!(
                "radius_min = {}; must be positive and finite",
                self.radius_min
            )));
        }
        if !(self.radius_max > self.radius_min) || !self.radius_max.is_finite() {
            return Err(Error::Config(format!(
                "radius_max = {}; must be finite and exceed radius_min = {}",
                self.radius_max, self.radius_min
            )));
        }
        if self.radius_count < 2 || self.radius_count > 4096 {
            return Err(Error::Config(format!(
                "radius_count = {}; must lie in 2..=4096",
                self.radius_count
            )));
        }
        if !self.mollification.is_finite() || self.mollification < 0.0 {
            return Err(Error::Config(format!(
                "mollification = {}; must be finite and >= 0",
                self.mollification
            )));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        for name in &self.suites {
            if !SUITE_NAMES.contains(&name.as_str()) {
                return Err(Error::Config(format!(
                    "unknown suite \"{name}\"; available: {}",
                    SUITE_NAMES.join(", ")
                )));
            }
        }
        if self.workers > 1024 {
            return Err(Error::Config(format!(
                "workers = {}; must be at most 1024",
                self.workers
            )));
        }
        Ok(())
    }

    /// The multiplicity vector broadcast to `dim` components.
    pub fn multiplicity(&self) -> Result<Multiplicity> {
        let kappa = if self.kappa.len() == 1 && self.dim > 1 {
            vec![self.kappa[0]; self.dim]
        } else {
            self.kappa.clone()
        };
        Multiplicity::new(kappa)
    }

    /// The tensor grid this configuration describes.
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(&self.multiplicity()?, self.grid_size, self.half_width)
    }

    /// The geometric radius schedule this configuration describes.
    pub fn schedule(&self) -> Result<RadiusSchedule> {
        RadiusSchedule::geometric(self.radius_min, self.radius_max, self.radius_count)
    }

    /// Maximal-operator settings: the configured schedule for averages, the
    /// grid-adapted dilation schedule for profiles, and the configured
    /// mollification.
    pub fn maximal_settings(&self) -> Result<MaximalSettings> {
        let grid = self.grid()?;
        Ok(MaximalSettings {
            schedule: self.schedule()?,
            profile_schedule: RadiusSchedule::for_profile_dilations(&grid),
            mollification: self.mollification,
        })
    }

    /// Caps the global worker pool at `workers` threads (no-op when 0 or when
    /// a pool already exists). Call once at startup, before any parallel
    /// sweep.
    pub fn install_worker_cap(&self) {
        if self.workers > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(self.workers)
                .build_global();
        }
    }

    /// Deterministic `key=value` echo of the resolved configuration, used in
    /// report metadata and the `describe` plan.
    pub fn meta_entries(&self) -> Vec<(&'static str, String)> {
        vec![
            ("kappa", format!("{:?}", self.kappa)),
            ("dim", self.dim.to_string()),
            ("grid_size", self.grid_size.to_string()),
            ("half_width", self.half_width.to_string()),
            ("quadrature_order", self.quadrature_order.to_string()),
            (
                "radius_schedule",
                format!(
                    "geometric({}, {}, {})",
                    self.radius_min, self.radius_max, self.radius_count
                ),
            ),
            ("mollification", self.mollification.to_string()),
            ("suites", self.suites.join(" ")),
            ("output_dir", self.output_dir.display().to_string()),
            ("seed", self.seed.to_string()),
            (
                "workers",
                if self.workers == 0 {
                    "all-cores".to_string()
                } else {
                    self.workers.to_string()
                },
            ),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_and_resolve() {
        let c = RunConfig::default();
        c.validate().unwrap();
        let k = c.multiplicity().unwrap();
        assert_eq!(k.kappa(), &[0.5]);
        let g = c.grid().unwrap();
        assert_eq!(g.dim(), 1);
        assert_eq!(g.axes()[0].len(), 256);
        let s = c.schedule().unwrap();
        assert_eq!(s.len(), 24);
        assert!(c.maximal_settings().is_ok());
    }

    #[test]
    fn broadcast_and_mismatch() {
        let mut c = RunConfig {
            kappa: vec![0.3],
            dim: 2,
            ..RunConfig::default()
        };
        c.validate().unwrap();
        assert_eq!(c.multiplicity().unwrap().kappa(), &[0.3, 0.3]);
        c.kappa = vec![0.3, 0.7];
        c.validate().unwrap();
        assert_eq!(c.multiplicity().unwrap().kappa(), &[0.3, 0.7]);
        c.kappa = vec![0.3, 0.7, 0.1];
        assert!(c.validate().is_err());
    }

    #[test]
    fn rejects_out_of_range_fields() {
        let base = RunConfig::default();
        let cases: Vec<RunConfig> = vec![
            RunConfig {
                kappa: vec![-0.1],
                ..base.clone()
            },
            RunConfig {
                dim: 0,
                ..base.clone()
            },
            RunConfig {
                dim: 4,
                ..base.clone()
            },
            RunConfig {
                grid_size: 127,
                ..base.clone()
            },
            RunConfig {
                grid_size: 6,
                ..base.clone()
            },
            RunConfig {
                half_width: 0.0,
                ..base.clone()
            },
            RunConfig {
                quadrature_order: 4,
                ..base.clone()
            },
            RunConfig {
                radius_min: 0.0,
                ..base.clone()
            },
            RunConfig {
                radius_max: 0.01,
                ..base.clone()
            },
            RunConfig {
                radius_count: 1,
                ..base.clone()
            },
            RunConfig {
                mollification: -1.0,
                ..base.clone()
            },
            RunConfig {
                suites: vec![],
                ..base.clone()
            },
            RunConfig {
                suites: vec!["kernels".into()],
                ..base.clone()
            },
        ];
        for bad in cases {
            assert!(bad.validate().is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn unknown_suite_is_named_in_the_error() {
        let c = RunConfig {
            suites: vec!["transform".into(), "maximal2".into()],
            ..RunConfig::default()
        };
        let err = c.validate().unwrap_err().to_string();
        assert!(err.contains("maximal2"), "{err}");
        assert!(err.contains("fefferman-stein"), "{err}");
    }

    #[test]
    fn toml_round_trip_and_partial_files() {
        let c = RunConfig {
            kappa: vec![0.3, 2.5],
            dim: 2,
            grid_size: 64,
            seed: 11,
            ..RunConfig::default()
        };
        let text = toml::to_string_pretty(&c).unwrap();
        let back = RunConfig::from_toml_str(&text).unwrap();
        assert_eq!(back, c);

        let partial = RunConfig::from_toml_str("kappa = [1.0]\ngrid_size = 128\n").unwrap();
        assert_eq!(partial.kappa, vec![1.0]);
        assert_eq!(partial.grid_size, 128);
        assert_eq!(partial.half_width, 12.0);
        assert_eq!(partial.suites.len(), 7);

        let err = RunConfig::from_toml_str("grid_sizes = 128\n").unwrap_err();
        assert!(err.to_string().contains("grid_sizes"));
    }
}
