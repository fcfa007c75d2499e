//! Ground-motion ingestion, resampling, analytical oracles, and error
//! metrics.

mod io;
mod metrics;
mod oracle;
mod resample;

pub use io::{load_ground_motion, parse_ground_motion};
pub use metrics::{peak_error, rms_error};
pub use oracle::{continuous_irf, sine_oracle, SineExcitation};
pub use resample::{
    edge_margin, linear_resample, sinc_resample, sinc_resample_with, KAISER_SHAPE,
    KERNEL_HALF_WIDTH,
};
