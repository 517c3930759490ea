//! Outgoing-wave filters `P_out = chi(x) D^† P(k) D chi(x)`.
//!
//! One filter exists per side of the box. `chi` is a mollified indicator of
//! the middle third of that side's buffer slab; `P(k)` is a smoothed
//! indicator, per dispersion branch, of the frequencies whose group
//! velocity points out through that side (minus a margin `k_b` around the
//! turning set). `(1 - P_out)` is a contraction, which is what makes the
//! filtered scheme stable.

mod chi;
mod operator;
mod params;
mod projection;
mod velocity;

pub use chi::{build_chi, erf_diff};
pub use operator::{apply_filter, build_filters, FilterOperator};
pub use params::{
    buffer_width_for, chi_tail, lower_bound_sigma, manual_parameters, plateau_defect, round_to_power_of_two,
    select_parameters, upper_bound_sigma, BufferRequest, FilterParams, ParamContext, ParamWarning,
};
pub use projection::{build_projection, gaussian_kernel, smooth_indicator};
pub use velocity::{
    build_velocity_set, erode_brute_force, erode_distance_transform, raw_velocity_set, BRUTE_FORCE_LIMIT,
};

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One face of the box: the slab `sign * x_axis in [L, L + w]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side {
    pub axis: usize,
    pub sign: Sign,
}

impl Side {
    pub fn new(axis: usize, sign: Sign) -> Self {
        Self { axis, sign }
    }

    /// `(0,+), (0,-), (1,+), (1,-), ...`
    pub fn all(dim: usize) -> Vec<Side> {
        (0..dim)
            .flat_map(|axis| [Side::new(axis, Sign::Plus), Side::new(axis, Sign::Minus)])
            .collect()
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "x{}{}", self.axis + 1, s)
    }
}
