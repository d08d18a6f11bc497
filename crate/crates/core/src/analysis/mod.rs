//! Supremum estimation over the disk and the Bloch-space quantities built on it.

mod bloch;
mod grid;
mod supremum;

pub use bloch::{
    bloch_norm, bloch_seminorm, growth_bound_check, little_bloch_check, schwarz_pick_check, seminorm_integrand,
    sigma_infty, sup_norm, sup_norm_value, tau_infty, LittleBlochReport, ViolationReport, BOUNDARY_GUARD,
};
pub use grid::{sunflower_points, DiskGrid};
pub use supremum::{rings_stabilized, sup_over_disk, SupremumEstimate, CONVERGENCE_RTOL, REFINED_CANDIDATES};
