//! `min:max:steps` ranges and comma-separated lists, from flags or TOML.

use std::fmt;
use std::str::FromStr;

use serde::Deserialize;

use crate::CliError;

/// `steps` equally spaced values from `min` to `max`, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl RangeSpec {
    pub fn single(v: f64) -> Self {
        Self { min: v, max: v, steps: 1 }
    }

    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self, CliError> {
        let r = Self { min, max, steps };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(CliError::InvalidRange(format!("{self}: bounds must be finite")));
        }
        if self.steps == 0 {
            return Err(CliError::InvalidRange(format!("{self}: steps must be at least 1")));
        }
        if self.min > self.max {
            return Err(CliError::InvalidRange(format!("{self}: min exceeds max")));
        }
        if self.steps == 1 && self.min != self.max {
            return Err(CliError::InvalidRange(format!("{self}: one step needs min = max")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let last = self.steps - 1;
        (0..self.steps)
            .map(
                |i| {
                    if i == last {
                        self.max
                    } else {
                        self.min + (self.max - self.min) * i as f64 / last as f64
                    }
                },
            )
            .collect()
    }
}

impl fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 && self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}:{}:{}", self.min, self.max, self.steps)
        }
    }
}

impl FromStr for RangeSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = |what: &str| CliError::InvalidRange(format!("{s:?}: {what}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("not a number"));
        match parts.as_slice() {
            [v] => Ok(Self::single(num(v)?)),
            [lo, hi, n] => {
                let steps = n.trim().parse::<usize>().map_err(|_| bad("steps must be a positive integer"))?;
                Self::new(num(lo)?, num(hi)?, steps)
            }
            _ => Err(bad("expected a value or min:max:steps")),
        }
    }
}

impl<'de> Deserialize<'de> for RangeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Self::single(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// All combinations of the axis values, last axis varying fastest.
pub fn cartesian<const K: usize>(axes: [&RangeSpec; K]) -> Vec<[f64; K]> {
    let values: Vec<Vec<f64>> = axes.iter().map(|r| r.values()).collect();
    let mut out = vec![[0.0; K]];
    for (k, vs) in values.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|p| {
                vs.iter().map(move |&v| {
                    let mut q = p;
                    q[k] = v;
                    q
                })
            })
            .collect();
    }
    out
}

/// Comma-separated names; `all` is left to the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameList(pub Vec<String>);

impl NameList {
    /// Parse every entry, or return `all` when the list is `all`.
    pub fn resolve<T>(&self, all: &[T]) -> Result<Vec<T>, CliError>
    where
        T: FromStr + Clone,
        T::Err: fmt::Display,
    {
        if self.0.iter().any(|s| s.eq_ignore_ascii_case("all")) {
            return Ok(all.to_vec());
        }
        self.0.iter().map(|s| s.parse::<T>().map_err(|e| CliError::InvalidInput(e.to_string()))).collect()
    }
}

impl FromStr for NameList {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let names: Vec<String> =
            s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect();
        if names.is_empty() {
            return Err(CliError::InvalidInput(format!("empty list {s:?}")));
        }
        Ok(Self(names))
    }
}

impl<'de> Deserialize<'de> for NameList {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            One(String),
            Many(Vec<String>),
        }
        match Raw::deserialize(d)? {
            Raw::One(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Many(v) => Ok(Self(v)),
        }
    }
}
