//! Refractive-index sensing: sweeps, special wavelengths, sensitivities and resolutions.

mod derivative;
mod features;
mod report;
mod special;
mod sweep;

pub use derivative::{linearity_report, sensitivity, Linearity, Sensitivity};
pub use features::{fano_features, FanoFeatures};
pub use report::{
    enhancement, resolution, sense, Anchor, Enhancement, PointSensing, SenseOptions,
    SensingReport,
};
pub use special::{second_derivative, special_points, SpecialPoints};
pub use sweep::{evaluate, spectrum, sweep, with_jobs, Engine, PointResult};
