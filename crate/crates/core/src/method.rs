//! Registry of discretization methods.
//!
//! A [`MethodId`] names one way of turning the continuous oscillator into a
//! discrete recursion: the transfer-function constructors, their state-space
//! counterparts, and the native time-stepping schemes. The identifier grammar
//! used on the command line is
//!
//! ```text
//! zoh | foh | impulse | fe | be | tustin | tustin-prewarp | matched | lsq |
//! kanamori | cd | ss-zoh | ss-foh | ss-fe | ss-be | ss-tustin |
//! nigam-jennings | newmark-avg | newmark-linear | newmark:<gamma>,<beta>
//! ```

use std::fmt;
use std::str::FromStr;

use crate::biquad::Biquad;
use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::sim::{biquad_filter, ss_simulate};
use crate::state_space::DiscreteStateSpace;
use crate::steppers::{newmark, nigam_jennings, NewmarkParams};
use crate::system::SdofSystem;
use crate::tf;
use crate::ss;

/// Default frequency band for the effective-parameter fit, Hz.
pub const KANAMORI_DEFAULT_BAND: (f64, f64) = (0.01, 10.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MethodId {
    Zoh,
    Foh,
    Impulse,
    Fe,
    Be,
    Tustin,
    TustinPrewarp,
    Matched,
    Lsq,
    Kanamori,
    Cd,
    SsZoh,
    SsFoh,
    SsFe,
    SsBe,
    SsTustin,
    NigamJennings,
    Newmark(NewmarkParams),
}

impl MethodId {
    /// Every registered method, with both Newmark presets.
    pub fn all() -> Vec<MethodId> {
        vec![
            MethodId::Zoh,
            MethodId::Foh,
            MethodId::Impulse,
            MethodId::Fe,
            MethodId::Be,
            MethodId::Tustin,
            MethodId::TustinPrewarp,
            MethodId::Matched,
            MethodId::Lsq,
            MethodId::Kanamori,
            MethodId::Cd,
            MethodId::SsZoh,
            MethodId::SsFoh,
            MethodId::SsFe,
            MethodId::SsBe,
            MethodId::SsTustin,
            MethodId::NigamJennings,
            MethodId::Newmark(NewmarkParams::average_acceleration()),
            MethodId::Newmark(NewmarkParams::linear_acceleration()),
        ]
    }

    /// Methods realized as a biquad recursion.
    pub fn is_transfer_function(&self) -> bool {
        matches!(
            self,
            MethodId::Zoh
                | MethodId::Foh
                | MethodId::Impulse
                | MethodId::Fe
                | MethodId::Be
                | MethodId::Tustin
                | MethodId::TustinPrewarp
                | MethodId::Matched
                | MethodId::Lsq
                | MethodId::Kanamori
                | MethodId::Cd
        )
    }

    /// Methods realized as a two-state state-space recursion.
    pub fn is_state_space(&self) -> bool {
        matches!(
            self,
            MethodId::SsZoh | MethodId::SsFoh | MethodId::SsFe | MethodId::SsBe | MethodId::SsTustin
        )
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodId::Zoh => write!(f, "zoh"),
            MethodId::Foh => write!(f, "foh"),
            MethodId::Impulse => write!(f, "impulse"),
            MethodId::Fe => write!(f, "fe"),
            MethodId::Be => write!(f, "be"),
            MethodId::Tustin => write!(f, "tustin"),
            MethodId::TustinPrewarp => write!(f, "tustin-prewarp"),
            MethodId::Matched => write!(f, "matched"),
            MethodId::Lsq => write!(f, "lsq"),
            MethodId::Kanamori => write!(f, "kanamori"),
            MethodId::Cd => write!(f, "cd"),
            MethodId::SsZoh => write!(f, "ss-zoh"),
            MethodId::SsFoh => write!(f, "ss-foh"),
            MethodId::SsFe => write!(f, "ss-fe"),
            MethodId::SsBe => write!(f, "ss-be"),
            MethodId::SsTustin => write!(f, "ss-tustin"),
            MethodId::NigamJennings => write!(f, "nigam-jennings"),
            MethodId::Newmark(p) => {
                if *p == NewmarkParams::average_acceleration() {
                    write!(f, "newmark-avg")
                } else if *p == NewmarkParams::linear_acceleration() {
                    write!(f, "newmark-linear")
                } else {
                    write!(f, "newmark:{},{}", p.gamma(), p.beta())
                }
            }
        }
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let id = match s {
            "zoh" => MethodId::Zoh,
            "foh" => MethodId::Foh,
            "impulse" => MethodId::Impulse,
            "fe" => MethodId::Fe,
            "be" => MethodId::Be,
            "tustin" => MethodId::Tustin,
            "tustin-prewarp" => MethodId::TustinPrewarp,
            "matched" => MethodId::Matched,
            "lsq" => MethodId::Lsq,
            "kanamori" => MethodId::Kanamori,
            "cd" => MethodId::Cd,
            "ss-zoh" => MethodId::SsZoh,
            "ss-foh" => MethodId::SsFoh,
            "ss-fe" => MethodId::SsFe,
            "ss-be" => MethodId::SsBe,
            "ss-tustin" => MethodId::SsTustin,
            "nigam-jennings" => MethodId::NigamJennings,
            "newmark-avg" => MethodId::Newmark(NewmarkParams::average_acceleration()),
            "newmark-linear" => MethodId::Newmark(NewmarkParams::linear_acceleration()),
            other => {
                if let Some(rest) = other.strip_prefix("newmark:") {
                    let mut parts = rest.splitn(2, ',');
                    let gamma = parts
                        .next()
                        .and_then(|v| v.trim().parse::<f64>().ok())
                        .ok_or_else(|| Error::UnknownMethod(other.to_string()))?;
                    let beta = parts
                        .next()
                        .and_then(|v| v.trim().parse::<f64>().ok())
                        .ok_or_else(|| Error::UnknownMethod(other.to_string()))?;
                    MethodId::Newmark(NewmarkParams::new(gamma, beta)?)
                } else {
                    return Err(Error::UnknownMethod(other.to_string()));
                }
            }
        };
        Ok(id)
    }
}

/// Build the biquad realization of a transfer-function method, with default
/// fit options for `lsq` and `kanamori`. Returns `None` for methods that are
/// not biquads.
pub fn method_biquad(method: MethodId, sys: &SdofSystem, dt: f64) -> Result<Option<Biquad>> {
    let tf = match method {
        MethodId::Zoh => tf::zoh_tf(sys, dt)?,
        MethodId::Foh => tf::foh_tf(sys, dt)?,
        MethodId::Impulse => tf::impulse_invariant_tf(sys, dt)?,
        MethodId::Fe => tf::forward_euler_tf(sys, dt)?,
        MethodId::Be => tf::backward_euler_tf(sys, dt)?,
        MethodId::Tustin => tf::tustin_tf(sys, dt)?,
        MethodId::TustinPrewarp => tf::tustin_prewarp_tf(sys, dt)?,
        MethodId::Matched => tf::matched_tf(sys, dt)?,
        MethodId::Cd => tf::central_difference_tf(sys, dt)?,
        MethodId::Lsq => tf::lsq_tf(sys, dt, &tf::LsqOptions::default_for(dt))?.tf,
        MethodId::Kanamori => {
            let (lo, hi) = KANAMORI_DEFAULT_BAND;
            tf::kanamori_tf(sys, dt, lo, hi)?.tf
        }
        _ => return Ok(None),
    };
    Ok(Some(tf))
}

/// Build the state-space realization of an `ss-*` method (displacement-only
/// observation). Returns `None` for other methods.
pub fn method_dss(method: MethodId, sys: &SdofSystem, dt: f64) -> Result<Option<DiscreteStateSpace>> {
    let dss = match method {
        MethodId::SsZoh => ss::zoh_dss(sys, dt, false)?,
        MethodId::SsFoh => ss::foh_dss(sys, dt, false)?,
        MethodId::SsFe => ss::fe_dss(sys, dt, false)?,
        MethodId::SsBe => ss::be_dss(sys, dt, false)?,
        MethodId::SsTustin => ss::tustin_dss(sys, dt, false)?,
        _ => return Ok(None),
    };
    Ok(Some(dss))
}

/// Simulate the relative-displacement response of `sys` to `input` with the
/// chosen method, at the input's rate.
pub fn simulate_response(method: MethodId, sys: &SdofSystem, input: &Signal) -> Result<Signal> {
    let dt = input.dt();
    if let Some(tf) = method_biquad(method, sys, dt)? {
        return biquad_filter(&tf, input);
    }
    if let Some(dss) = method_dss(method, sys, dt)? {
        return ss_simulate(&dss, input);
    }
    match method {
        MethodId::NigamJennings => Ok(nigam_jennings(sys, input)?.displacement),
        MethodId::Newmark(params) => Ok(newmark(sys, input, params)?.displacement),
        other => Err(Error::UnknownMethod(other.to_string())),
    }
}

/// Standard period grid for spectra: 18 points from 0.05 s to 10 s.
pub fn standard_period_grid() -> Vec<f64> {
    vec![
        0.05, 0.075, 0.1, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0,
        7.5, 10.0,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifier_round_trip() {
        for m in MethodId::all() {
            let s = m.to_string();
            let parsed: MethodId = s.parse().unwrap();
            assert_eq!(parsed, m, "{s}");
        }
        let custom: MethodId = "newmark:0.6,0.3".parse().unwrap();
        match custom {
            MethodId::Newmark(p) => {
                assert_eq!(p.gamma(), 0.6);
                assert_eq!(p.beta(), 0.3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!("zohh".parse::<MethodId>().is_err());
        assert!("newmark:1.5,0.25".parse::<MethodId>().is_err());
        assert!("newmark:0.5".parse::<MethodId>().is_err());
    }

    #[test]
    fn grid_is_increasing() {
        let grid = standard_period_grid();
        assert_eq!(grid.len(), 18);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }
}
