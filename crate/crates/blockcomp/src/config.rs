//! TOML model files.
//!
//! ```toml
//! family = "tfim"        # kitaev | xy | tfim | tfxy | gen-tfxy
//! n = 5
//! dt = 0.05
//! steps = 100
//!
//! [couplings]            # constant schedule
//! xx = -1.0              # a scalar fills every bond (kitaev: odd bonds for xx, even for yy)
//! z = [0.5, 0.5, 0.5, 0.5, 0.5]
//!
//! # or, instead of [couplings]:
//! [schedule]
//! kind = "piecewise-linear"   # or "tabulated"
//! [[schedule.samples]]
//! t = 0.0
//! z = -1.0
//! [[schedule.samples]]
//! t = 30.0
//! xx = -2.0
//! z = -1.0
//! ```
//!
//! Unknown keys are rejected. Channels left out are zero.

use std::path::Path;

use blockcomp_core::models::{Channel, Couplings, Family, ModelSpec, Schedule};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Values {
    Scalar(f64),
    List(Vec<f64>),
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CouplingsFile {
    pub xx: Option<Values>,
    pub yy: Option<Values>,
    pub xy: Option<Values>,
    pub yx: Option<Values>,
    pub z: Option<Values>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SampleFile {
    pub t: f64,
    #[serde(flatten)]
    pub couplings: CouplingsFile,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    Constant,
    PiecewiseLinear,
    Tabulated,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub kind: ScheduleKind,
    #[serde(default)]
    pub samples: Vec<SampleFile>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub family: String,
    pub n: usize,
    pub dt: f64,
    pub steps: usize,
    pub couplings: Option<CouplingsFile>,
    pub schedule: Option<ScheduleFile>,
}

/// Optional command-line overrides; set values win over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
}

/// A validated model, schedule and step parameters.
#[derive(Clone, Debug)]
pub struct Problem {
    pub model: ModelSpec,
    pub schedule: Schedule,
    pub dt: f64,
    pub steps: usize,
}

fn expand(family: Family, n: usize, ch: Channel, v: &Option<Values>, field: &str) -> Result<Vec<f64>, CliError> {
    let len = if ch == Channel::Z { n } else { n - 1 };
    match v {
        None => Ok(vec![0.0; len]),
        Some(Values::List(xs)) => {
            if xs.len() != len {
                return Err(CliError::Config(format!(
                    "`{field}` has {} entries, expected {len} for n = {n}",
                    xs.len()
                )));
            }
            Ok(xs.clone())
        }
        Some(Values::Scalar(x)) => {
            let kitaev_skip = |i: usize| match (family, ch) {
                (Family::Kitaev, Channel::Xx) => i % 2 == 1,
                (Family::Kitaev, Channel::Yy) => i % 2 == 0,
                _ => false,
            };
            Ok((0..len).map(|i| if kitaev_skip(i) { 0.0 } else { *x }).collect())
        }
    }
}

fn couplings(family: Family, n: usize, c: &CouplingsFile, prefix: &str) -> Result<Couplings, CliError> {
    let mut out = Couplings::zeros(n);
    for (ch, v) in [
        (Channel::Xx, &c.xx),
        (Channel::Yy, &c.yy),
        (Channel::Xy, &c.xy),
        (Channel::Yx, &c.yx),
        (Channel::Z, &c.z),
    ] {
        *out.channel_mut(ch) = expand(family, n, ch, v, &format!("{prefix}.{}", ch.name()))?;
    }
    Ok(out)
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<ModelFile, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ModelFile, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        ModelFile::parse(&text)
    }

    pub fn resolve(&self, o: &Overrides) -> Result<Problem, CliError> {
        let family: Family = self.family.parse().map_err(|_| {
            CliError::Config(format!(
                "`family` = \"{}\" is not one of kitaev, xy, tfim, tfxy, gen-tfxy",
                self.family
            ))
        })?;
        let n = o.n.unwrap_or(self.n);
        let dt = o.dt.unwrap_or(self.dt);
        let steps = o.steps.unwrap_or(self.steps);
        if n < 2 {
            return Err(CliError::Config(format!("`n` must be at least 2, got {n}")));
        }
        if steps == 0 {
            return Err(CliError::Config("`steps` must be at least 1".into()));
        }
        if !(dt.is_finite() && dt >= 0.0) {
            return Err(CliError::Config(format!("`dt` must be a non-negative number, got {dt}")));
        }
        let schedule = match (&self.couplings, &self.schedule) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("give either `couplings` or `schedule`, not both".into()))
            }
            (None, None) => return Err(CliError::Config("missing `couplings` or `schedule`".into())),
            (Some(c), None) => Schedule::Constant(couplings(family, n, c, "couplings")?),
            (None, Some(s)) => {
                let knots = s
                    .samples
                    .iter()
                    .enumerate()
                    .map(|(k, smp)| Ok((smp.t, couplings(family, n, &smp.couplings, &format!("schedule.samples[{k}]"))?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                match s.kind {
                    ScheduleKind::Constant => match knots.as_slice() {
                        [(_, c)] => Schedule::Constant(c.clone()),
                        _ => {
                            return Err(CliError::Config(
                                "`schedule.samples` must hold exactly one sample for a constant schedule".into(),
                            ))
                        }
                    },
                    ScheduleKind::PiecewiseLinear => Schedule::PiecewiseLinear(knots),
                    ScheduleKind::Tabulated => Schedule::Tabulated(knots),
                }
            }
        };
        let first = match &schedule {
            Schedule::Constant(c) => c.clone(),
            Schedule::PiecewiseLinear(k) | Schedule::Tabulated(k) => {
                k.first().map(|(_, c)| c.clone()).unwrap_or_else(|| Couplings::zeros(n))
            }
        };
        let model = ModelSpec::new(family, n, first).map_err(CliError::Model)?;
        schedule.validate(&model, dt, steps).map_err(CliError::Model)?;
        Ok(Problem { model, schedule, dt, steps })
    }
}
