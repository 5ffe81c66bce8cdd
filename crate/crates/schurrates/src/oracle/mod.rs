//! Exact finite-`n` traces and overlaps whose exponential rates define the asymptotic
//! quantities, type/frame rounding, and rate sequences with extrapolated limits.

mod rounding;
mod series;
mod traces;

pub use rounding::{frame_rounding, largest_remainder};
pub use series::{fit_rate, rate_series, Quantity, RateFit, RateSeries, SeriesTarget};
pub use traces::{
    log2_theta1_overlap, log2_theta2_overlap, log2_trace_conjugated, log2_trace_state, overlap_vf,
    projector, theta1_overlap, theta2_overlap, trace_conjugated, trace_conjugated_frames,
    trace_conjugated_unchecked, trace_state,
};

#[cfg(test)]
mod tests;
