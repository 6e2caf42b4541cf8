//! Parameter schemas per paradox and validation of raw `key=value` input,
//! shared by command-line flags and HTTP queries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Paradox {
    Koch,
    Horn,
    Staircase,
    Dissection,
    Wheel,
}

impl Paradox {
    pub const ALL: [Paradox; 5] = [
        Paradox::Koch,
        Paradox::Horn,
        Paradox::Staircase,
        Paradox::Dissection,
        Paradox::Wheel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Paradox::Koch => "koch",
            Paradox::Horn => "horn",
            Paradox::Staircase => "staircase",
            Paradox::Dissection => "dissection",
            Paradox::Wheel => "wheel",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Paradox::Koch => "Koch snowflake",
            Paradox::Horn => "Gabriel's horn",
            Paradox::Staircase => "Staircase length paradox",
            Paradox::Dissection => "Missing square and 64 = 65",
            Paradox::Wheel => "Aristotle's wheel",
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            Paradox::Koch => "Perimeter grows without bound while the enclosed area converges.",
            Paradox::Horn => "Area under 1/x diverges while the volume of revolution tends to π.",
            Paradox::Staircase => {
                "Curves converge pointwise to a segment while their length stays away from it."
            }
            Paradox::Dissection => "Rearranged pieces seem to gain or lose a unit of area.",
            Paradox::Wheel => "Two rigidly joined circles roll the same distance; the inner one slides.",
        }
    }

    pub fn params(self) -> &'static [ParamSpec] {
        match self {
            Paradox::Koch => KOCH,
            Paradox::Horn => HORN,
            Paradox::Staircase => STAIRCASE,
            Paradox::Dissection => DISSECTION,
            Paradox::Wheel => WHEEL,
        }
    }
}

impl fmt::Display for Paradox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Paradox {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Paradox::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::unknown_paradox(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ParamKind {
    Float {
        #[serde(skip_serializing_if = "Option::is_none")]
        min: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        max: Option<f64>,
        /// Bounds are strict.
        exclusive: bool,
    },
    Integer { min: u64, max: u64 },
    Choice { options: &'static [&'static str] },
}

/// Only meaningful when another parameter has the given value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppliesWhen {
    pub param: &'static str,
    pub equals: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    #[serde(flatten)]
    pub kind: ParamKind,
    pub default: &'static str,
    /// The precondition reported when a value is out of range.
    pub constraint: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub applies_when: Option<AppliesWhen>,
    pub description: &'static str,
}

pub const MAX_STAIRCASE_N: u64 = 20;
pub const MAX_SUBDIVISIONS: u64 = 20_000_000;
pub const MAX_WHEEL_STEPS: u64 = 20_000;

const fn positive(name: &'static str, default: &'static str, constraint: &'static str, description: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Float { min: Some(0.0), max: None, exclusive: true },
        default,
        constraint,
        applies_when: None,
        description,
    }
}

pub const MODEL_NAMES: &[&str] = &["semicircle", "iso-right", "lambda", "equilateral", "bisect"];

const STAIRCASE: &[ParamSpec] = &[
    ParamSpec {
        name: "model",
        kind: ParamKind::Choice { options: MODEL_NAMES },
        default: "semicircle",
        constraint: "one of semicircle, iso-right, lambda, equilateral, bisect",
        applies_when: None,
        description: "Shape of each unit built over the sub-bases.",
    },
    positive("R", "1", "R > 0", "Half the base segment length."),
    ParamSpec {
        applies_when: Some(AppliesWhen { param: "model", equals: "lambda" }),
        ..positive("lambda", "0.75", "lambda > 0", "Leg ratio of the right-triangle units.")
    },
    ParamSpec {
        name: "omega_deg",
        kind: ParamKind::Float { min: Some(0.0), max: Some(90.0), exclusive: true },
        default: "60",
        constraint: "0 < omega_deg < 90",
        applies_when: Some(AppliesWhen { param: "model", equals: "bisect" }),
        description: "Initial base angle in degrees, halved at every step.",
    },
    ParamSpec {
        name: "n",
        kind: ParamKind::Integer { min: 1, max: MAX_STAIRCASE_N },
        default: "6",
        constraint: "1 <= n <= 20",
        applies_when: None,
        description: "Last iteration; iterations 1..=n are reported.",
    },
];

const KOCH: &[ParamSpec] = &[
    positive("a", "1", "a > 0", "Side of the initial equilateral triangle."),
    ParamSpec {
        name: "n",
        kind: ParamKind::Integer { min: 0, max: 8 },
        default: "3",
        constraint: "0 <= n <= 8",
        applies_when: None,
        description: "Last refinement step; steps 0..=n are reported.",
    },
];

const HORN: &[ParamSpec] = &[
    ParamSpec {
        name: "upper",
        kind: ParamKind::Float { min: Some(1.0), max: None, exclusive: true },
        default: "10000",
        constraint: "upper > 1",
        applies_when: None,
        description: "Truncation point A of the integrals over [1, A].",
    },
    ParamSpec {
        name: "steps",
        kind: ParamKind::Integer { min: 2, max: MAX_SUBDIVISIONS },
        default: "1000000",
        constraint: "2 <= steps <= 20000000",
        applies_when: None,
        description: "Simpson subdivisions of [1, A].",
    },
];

const DISSECTION: &[ParamSpec] = &[ParamSpec {
    name: "k",
    kind: ParamKind::Integer { min: 3, max: 40 },
    default: "6",
    constraint: "3 <= k <= 40",
    applies_when: None,
    description: "Fibonacci index: a square of side F(k) recut into F(k+1) x F(k-1).",
}];

const WHEEL: &[ParamSpec] = &[
    positive("R", "2", "R > 0", "Outer radius, rolling on the ground."),
    positive("rho", "1", "0 < rho <= R", "Inner radius."),
    ParamSpec {
        name: "steps",
        kind: ParamKind::Integer { min: 8, max: MAX_WHEEL_STEPS },
        default: "256",
        constraint: "8 <= steps <= 20000",
        applies_when: None,
        description: "Samples over one revolution.",
    },
];

/// Validated parameters with defaults filled in. Values keep the caller's
/// spelling so reports echo them verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    paradox: Paradox,
    values: BTreeMap<String, String>,
}

impl Params {
    /// Checks names, syntax and ranges of every supplied parameter.
    pub fn parse<I, K, V>(paradox: Paradox, raw: I) -> CliResult<Params>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        let specs = paradox.params();
        let mut values = BTreeMap::new();
        for (k, v) in raw {
            let (k, v) = (k.as_ref(), v.as_ref().trim());
            let spec = specs.iter().find(|s| s.name == k).ok_or_else(|| {
                let known: Vec<&str> = specs.iter().map(|s| s.name).collect();
                CliError::invalid_parameter(
                    k,
                    format!("{paradox} does not take parameter {k:?} (accepts {})", known.join(", ")),
                )
            })?;
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(CliError::invalid_parameter(k, format!("parameter {k:?} given twice")));
            }
            check_value(spec, v)?;
        }
        for spec in specs {
            values.entry(spec.name.to_string()).or_insert_with(|| spec.default.to_string());
        }
        // inapplicable parameters are dropped so reports only echo what was used
        for spec in specs {
            if let Some(w) = spec.applies_when {
                if values.get(w.param).map(String::as_str) != Some(w.equals) {
                    values.remove(spec.name);
                }
            }
        }
        Ok(Params { paradox, values })
    }

    pub fn paradox(&self) -> Paradox {
        self.paradox
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    pub fn raw(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    fn require(&self, name: &str) -> &str {
        self.raw(name)
            .unwrap_or_else(|| panic!("parameter {name} has a default for {}", self.paradox))
    }

    pub fn float(&self, name: &str) -> f64 {
        self.require(name).parse().expect("validated")
    }

    pub fn integer(&self, name: &str) -> u64 {
        self.require(name).parse().expect("validated")
    }

    pub fn choice(&self, name: &str) -> &str {
        self.require(name)
    }
}

fn check_value(spec: &ParamSpec, v: &str) -> CliResult<()> {
    let name = spec.name;
    match spec.kind {
        ParamKind::Float { min, max, exclusive } => {
            let x: f64 = v
                .parse()
                .map_err(|_| CliError::invalid_parameter(name, format!("{name} must be a number, got {v:?}")))?;
            if !x.is_finite() {
                return Err(CliError::invalid_parameter(name, format!("{name} must be finite, got {v:?}")));
            }
            let below = min.is_some_and(|m| if exclusive { x <= m } else { x < m });
            let above = max.is_some_and(|m| if exclusive { x >= m } else { x > m });
            if below || above {
                return Err(CliError::precondition(name, spec.constraint, v));
            }
        }
        ParamKind::Integer { min, max } => {
            if v.starts_with('-') && v[1..].bytes().all(|b| b.is_ascii_digit()) && v.len() > 1 {
                return Err(CliError::precondition(name, spec.constraint, v));
            }
            let x: u64 = v.parse().map_err(|_| {
                CliError::invalid_parameter(name, format!("{name} must be a non-negative integer, got {v:?}"))
            })?;
            if x < min || x > max {
                return Err(CliError::precondition(name, spec.constraint, v));
            }
        }
        ParamKind::Choice { options } => {
            if !options.contains(&v) {
                return Err(CliError::invalid_parameter(
                    name,
                    format!("{name} must be one of {}, got {v:?}", options.join(", ")),
                ));
            }
        }
    }
    Ok(())
}
