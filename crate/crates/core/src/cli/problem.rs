//! The JSON problem format and its validation.

use serde::{Deserialize, Serialize};

use crate::builtins;
use crate::cli::CliError;
use crate::error::Error;
use crate::frames::{Subspace, VectorFamily, WeightedFamily};
use crate::lifting::LocalFrameSystem;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberSpec {
    pub weight: f64,
    pub spanning_vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalFramesSpec {
    #[serde(rename = "V", default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Vec<Vec<f64>>>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    /// Relative frame tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The on-disk shape of a problem, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ambient_dim: usize,
    #[serde(rename = "V")]
    pub v: Vec<MemberSpec>,
    #[serde(rename = "W", default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<MemberSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_frames: Option<LocalFramesSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<ProblemOptions>,
}

/// A validated problem: families built, local frames checked.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub v: WeightedFamily,
    pub w: Option<WeightedFamily>,
    pub local_v: Option<LocalFrameSystem>,
    pub local_w: Option<LocalFrameSystem>,
    pub options: ProblemOptions,
}

/// Compiled-in problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DemoName {
    /// Cyclic pair that weaves with bounds (1, 2).
    Example1,
    /// Pair with one swapped index whose weavings can lose a direction.
    Example2,
}

impl DemoName {
    pub fn as_str(self) -> &'static str {
        match self {
            DemoName::Example1 => "example1",
            DemoName::Example2 => "example2",
        }
    }

    pub fn default_size(self) -> usize {
        match self {
            DemoName::Example1 => 4,
            DemoName::Example2 => 3,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

/// Parses and validates a problem from JSON text.
pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ProblemFile = serde_path_to_error::deserialize(&mut *de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Parse(inner.to_string())
        } else {
            CliError::Parse(format!("at {path}: {inner}"))
        }
    })?;
    de.end().map_err(|e| CliError::Parse(e.to_string()))?;
    file.validate()
}

fn check_vector(path: &str, n: usize, x: &[f64]) -> Result<(), CliError> {
    if x.len() != n {
        return Err(invalid(format!(
            "dimension mismatch at {path}: expected {n} entries, got {}",
            x.len()
        )));
    }
    Ok(())
}

fn build_family(name: &str, n: usize, members: &[MemberSpec]) -> Result<WeightedFamily, CliError> {
    let mut out = Vec::with_capacity(members.len());
    for (i, m) in members.iter().enumerate() {
        if !(m.weight > 0.0) {
            return Err(invalid(format!(
                "weight must be positive at {name}[{i}] (got {:?})",
                m.weight
            )));
        }
        for (j, x) in m.spanning_vectors.iter().enumerate() {
            check_vector(&format!("{name}[{i}].spanning_vectors[{j}]"), n, x)?;
        }
        let sub = Subspace::span(n, &m.spanning_vectors).map_err(|e| invalid(format!("{name}[{i}]: {e}")))?;
        out.push((sub, m.weight));
    }
    WeightedFamily::new(n, out).map_err(|e| invalid(format!("{name}: {e}")))
}

fn build_local(name: &str, base: &WeightedFamily, groups: &[Vec<Vec<f64>>]) -> Result<LocalFrameSystem, CliError> {
    let n = base.ambient_dim();
    if groups.len() != base.len() {
        return Err(invalid(format!(
            "local_frames.{name} has {} entries but {name} has {}",
            groups.len(),
            base.len()
        )));
    }
    for (i, g) in groups.iter().enumerate() {
        for (j, x) in g.iter().enumerate() {
            check_vector(&format!("local_frames.{name}[{i}][{j}]"), n, x)?;
        }
    }
    let local = VectorFamily::new(n, groups.to_vec()).map_err(|e| invalid(format!("local_frames.{name}: {e}")))?;
    LocalFrameSystem::new(base.clone(), local).map_err(|e| match e {
        Error::OutsideSubspace {
            index,
            vector,
            residual,
        } => invalid(format!(
            "local_frames.{name}[{index}][{vector}] lies outside {name}[{index}] (residual {residual:e})"
        )),
        Error::HypothesisViolation { index, lower } => invalid(format!(
            "local_frames.{name}[{index}] is not a frame for {name}[{index}] (lower bound {lower:e})"
        )),
        other => invalid(format!("local_frames.{name}: {other}")),
    })
}

impl ProblemFile {
    pub fn validate(&self) -> Result<Problem, CliError> {
        let n = self.ambient_dim;
        if n == 0 {
            return Err(invalid("ambient_dim must be at least 1"));
        }
        if self.v.is_empty() {
            return Err(invalid("V must have at least one entry"));
        }
        let v = build_family("V", n, &self.v)?;
        let w = match &self.w {
            Some(members) => {
                if members.len() != self.v.len() {
                    return Err(invalid(format!(
                        "W has {} entries but V has {}",
                        members.len(),
                        self.v.len()
                    )));
                }
                Some(build_family("W", n, members)?)
            }
            None => None,
        };
        let locals = self.local_frames.clone().unwrap_or_default();
        let local_v = match &locals.v {
            Some(g) => Some(build_local("V", &v, g)?),
            None => None,
        };
        let local_w = match (&locals.w, &w) {
            (Some(g), Some(w)) => Some(build_local("W", w, g)?),
            (Some(_), None) => return Err(invalid("local_frames.W given without W")),
            (None, _) => None,
        };
        let options = self.options.unwrap_or_default();
        if let Some(t) = options.tol {
            if !(t.is_finite() && t >= 0.0) {
                return Err(invalid(format!(
                    "options.tol must be finite and non-negative (got {t:?})"
                )));
            }
        }
        match (options.sample, options.seed) {
            (Some(0), _) => return Err(invalid("options.sample must be positive")),
            (Some(_), None) => return Err(invalid("options.sample requires options.seed")),
            (None, Some(_)) => return Err(invalid("options.seed requires options.sample")),
            _ => {}
        }
        Ok(Problem {
            v,
            w,
            local_v,
            local_w,
            options,
        })
    }
}

impl Problem {
    /// A compiled-in problem of size `n`.
    pub fn demo(name: DemoName, n: usize) -> Result<Self, CliError> {
        let (v, w) = match name {
            DemoName::Example1 => builtins::example1(n),
            DemoName::Example2 => builtins::example2(n),
        }
        .map_err(|e| CliError::Usage(format!("demo {} with --n {n}: {e}", name.as_str())))?;
        Ok(Self {
            v,
            w: Some(w),
            local_v: None,
            local_w: None,
            options: ProblemOptions::default(),
        })
    }
}
