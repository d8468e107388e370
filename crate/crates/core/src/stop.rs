use std::fmt;
use std::str::FromStr;

/// Default iteration cap for tolerance-driven stopping.
pub const DEFAULT_ITERATION_CAP: usize = 50;

/// When to stop refining a solution over one update interval.
///
/// Taylor integrators count orders and Picard integrators count iterations.
/// A tolerance rule applies the highest-order-term test to Taylor series and
/// the coefficient-discrepancy test to Picard iterates, whichever spelling
/// is used, so one rule can drive a mixed sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopRule {
    Iterations(usize),
    Dpc { tol: f64, cap: usize },
    Hot { tol: f64, cap: usize },
}

impl StopRule {
    pub fn dpc(tol: f64) -> Self {
        StopRule::Dpc { tol, cap: DEFAULT_ITERATION_CAP }
    }

    pub fn hot(tol: f64) -> Self {
        StopRule::Hot { tol, cap: DEFAULT_ITERATION_CAP }
    }

    pub fn tolerance(&self) -> Option<f64> {
        match *self {
            StopRule::Iterations(_) => None,
            StopRule::Dpc { tol, .. } | StopRule::Hot { tol, .. } => Some(tol),
        }
    }

    pub fn cap(&self) -> usize {
        match *self {
            StopRule::Iterations(k) => k,
            StopRule::Dpc { cap, .. } | StopRule::Hot { cap, .. } => cap,
        }
    }
}

impl fmt::Display for StopRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StopRule::Iterations(k) => write!(f, "iter:{k}"),
            StopRule::Dpc { tol, cap } if cap == DEFAULT_ITERATION_CAP => write!(f, "dpc:{tol:e}"),
            StopRule::Dpc { tol, cap } => write!(f, "dpc:{tol:e}:{cap}"),
            StopRule::Hot { tol, cap } if cap == DEFAULT_ITERATION_CAP => write!(f, "hot:{tol:e}"),
            StopRule::Hot { tol, cap } => write!(f, "hot:{tol:e}:{cap}"),
        }
    }
}

impl FromStr for StopRule {
    type Err = String;

    /// `iter:K`, `dpc:TOL[:CAP]` or `hot:TOL[:CAP]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().split(':');
        let kind = parts.next().unwrap_or_default();
        let value = parts.next().ok_or_else(|| format!("`{s}` is missing a value"))?;
        let cap = match parts.next() {
            Some(c) => c.parse::<usize>().map_err(|e| format!("bad cap in `{s}`: {e}"))?,
            None => DEFAULT_ITERATION_CAP,
        };
        if parts.next().is_some() {
            return Err(format!("too many fields in `{s}`"));
        }
        let tol = || -> Result<f64, String> {
            let t: f64 = value.parse().map_err(|e| format!("bad tolerance in `{s}`: {e}"))?;
            if t > 0.0 && t.is_finite() {
                Ok(t)
            } else {
                Err(format!("tolerance in `{s}` must be positive"))
            }
        };
        match kind {
            "iter" => value
                .parse::<usize>()
                .ok()
                .filter(|&k| k > 0)
                .map(StopRule::Iterations)
                .ok_or_else(|| format!("iteration count in `{s}` must be a positive integer")),
            "dpc" => Ok(StopRule::Dpc { tol: tol()?, cap }),
            "hot" => Ok(StopRule::Hot { tol: tol()?, cap }),
            _ => Err(format!("unknown stop rule `{s}` (expected iter:K, dpc:TOL or hot:TOL)")),
        }
    }
}
