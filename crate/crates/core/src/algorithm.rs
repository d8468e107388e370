use std::fmt;
use std::str::FromStr;

/// Every attitude algorithm the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    QuatTaylor,
    RodTaylor,
    RotTaylor,
    RotTaylorT2,
    RotTaylorT2s,
    QuatFIterNp,
    RodFIterNp,
    RotFIterNpT2,
    RotFIterNpT3,
    QuatFIter,
    RodFIter,
    RotFIter,
    RotFIterT3,
    RotFIterT2,
    Classic2,
    Classic3,
}

/// Integrator family of an algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Taylor,
    PicardNormal,
    PicardCheb,
    Classic,
}

/// Attitude parameter an algorithm integrates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Quaternion,
    Rodrigues,
    RotationVector,
}

impl Algorithm {
    pub const ALL: [Algorithm; 16] = [
        Algorithm::QuatTaylor,
        Algorithm::RodTaylor,
        Algorithm::RotTaylor,
        Algorithm::RotTaylorT2,
        Algorithm::RotTaylorT2s,
        Algorithm::QuatFIterNp,
        Algorithm::RodFIterNp,
        Algorithm::RotFIterNpT2,
        Algorithm::RotFIterNpT3,
        Algorithm::QuatFIter,
        Algorithm::RodFIter,
        Algorithm::RotFIter,
        Algorithm::RotFIterT3,
        Algorithm::RotFIterT2,
        Algorithm::Classic2,
        Algorithm::Classic3,
    ];

    pub fn name(self) -> &'static str {
        use Algorithm::*;
        match self {
            QuatTaylor => "QuatTaylor",
            RodTaylor => "RodTaylor",
            RotTaylor => "RotTaylor",
            RotTaylorT2 => "RotTaylor-T2",
            RotTaylorT2s => "RotTaylor-T2s",
            QuatFIterNp => "QuatFIter-np",
            RodFIterNp => "RodFIter-np",
            RotFIterNpT2 => "RotFIter-np-T2",
            RotFIterNpT3 => "RotFIter-np-T3",
            QuatFIter => "QuatFIter",
            RodFIter => "RodFIter",
            RotFIter => "RotFIter",
            RotFIterT3 => "RotFIter-T3",
            RotFIterT2 => "RotFIter-T2",
            Classic2 => "Classic2",
            Classic3 => "Classic3",
        }
    }

    pub fn family(self) -> Family {
        use Algorithm::*;
        match self {
            QuatTaylor | RodTaylor | RotTaylor | RotTaylorT2 | RotTaylorT2s => Family::Taylor,
            QuatFIterNp | RodFIterNp | RotFIterNpT2 | RotFIterNpT3 => Family::PicardNormal,
            QuatFIter | RodFIter | RotFIter | RotFIterT3 | RotFIterT2 => Family::PicardCheb,
            Classic2 | Classic3 => Family::Classic,
        }
    }

    pub fn parameter(self) -> Parameter {
        use Algorithm::*;
        match self {
            QuatTaylor | QuatFIterNp | QuatFIter => Parameter::Quaternion,
            RodTaylor | RodFIterNp | RodFIter => Parameter::Rodrigues,
            _ => Parameter::RotationVector,
        }
    }

    /// Samples per update forced by the algorithm, if any.
    pub fn fixed_samples(self) -> Option<usize> {
        match self {
            Algorithm::Classic2 => Some(2),
            Algorithm::Classic3 => Some(3),
            _ => None,
        }
    }

    /// `N + 1` for the Chebyshev family, `N + 9` for the other series
    /// methods, 0 for the closed-form baselines.
    pub fn default_truncation(self, samples: usize) -> usize {
        match self.family() {
            Family::PicardCheb => samples + 1,
            Family::Taylor | Family::PicardNormal => samples + 9,
            Family::Classic => 0,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}
