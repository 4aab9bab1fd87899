//! Plain-text `key = value` run configuration.

use std::path::{Path, PathBuf};

use fedpir_core::assignment::{build_symmetric_assignment, OffsetRule, TaskAssignment};
use fedpir_core::labels::{synth_labels, LabelSet, SynthMode};
use fedpir_core::protocol::{derive_params_with_modulus, ProtocolConfig, SchemeParams};

use crate::error::CliError;
use crate::formats;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub params: SchemeParams,
    /// Desired objective, 0-based. The file uses 1-based `j`.
    pub j: usize,
    pub seed: u64,
    pub symmetric: bool,
    pub q_override: Option<u64>,
    pub offset: OffsetRule,
    pub label_mode: SynthMode,
    pub assignment: Option<PathBuf>,
    pub labels: Option<PathBuf>,
}

const REQUIRED: [&str; 7] = ["n", "T", "rho", "z_s", "z_q", "s", "c"];

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Invalid(format!("{key}: cannot parse '{value}'")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value.to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(CliError::Invalid(format!("{key}: expected a boolean, got '{value}'"))),
    }
}

impl RunConfig {
    /// Parses the text of a config file. Relative paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, CliError> {
        let mut params = SchemeParams {
            clients: 0,
            objectives: 0,
            replication: 0,
            z_s: 0,
            z_q: 0,
            samples: 0,
            classes: 0,
            gamma: 2,
            lanes: 1,
        };
        let mut cfg = RunConfig {
            params,
            j: 0,
            seed: 0,
            symmetric: false,
            q_override: None,
            offset: OffsetRule::Cyclic,
            label_mode: SynthMode::Uniform,
            assignment: None,
            labels: None,
        };
        let mut seen = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| CliError::Invalid(format!("line {}: expected key = value", lineno + 1)))?;
            if seen.iter().any(|k| k == key) {
                return Err(CliError::Invalid(format!("line {}: duplicate key {key}", lineno + 1)));
            }
            seen.push(key.to_string());
            match key {
                "n" => params.clients = parse_num(key, value)?,
                "T" => params.objectives = parse_num(key, value)?,
                "rho" => params.replication = parse_num(key, value)?,
                "z_s" => params.z_s = parse_num(key, value)?,
                "z_q" => params.z_q = parse_num(key, value)?,
                "s" => params.samples = parse_num(key, value)?,
                "c" => params.classes = parse_num(key, value)?,
                "gamma" => params.gamma = parse_num(key, value)?,
                "lanes" => params.lanes = parse_num(key, value)?,
                "j" => {
                    let j: usize = parse_num(key, value)?;
                    cfg.j = j
                        .checked_sub(1)
                        .ok_or_else(|| CliError::Invalid("j is 1-based and must be at least 1".into()))?;
                }
                "seed" => cfg.seed = parse_num(key, value)?,
                "symmetric" => cfg.symmetric = parse_bool(key, value)?,
                "q_override" => cfg.q_override = Some(parse_num(key, value)?),
                "offset" => {
                    cfg.offset = match value {
                        "cyclic" => OffsetRule::Cyclic,
                        "block" => OffsetRule::Block,
                        _ => return Err(CliError::Invalid(format!("offset: expected cyclic or block, got '{value}'"))),
                    }
                }
                "label_mode" => {
                    cfg.label_mode = match value {
                        "uniform" => SynthMode::Uniform,
                        "onehot" => SynthMode::OneHot,
                        "zero" => SynthMode::Zero,
                        _ => {
                            return Err(CliError::Invalid(format!(
                                "label_mode: expected uniform, onehot or zero, got '{value}'"
                            )))
                        }
                    }
                }
                "assignment" => cfg.assignment = Some(base.join(value)),
                "labels" => cfg.labels = Some(base.join(value)),
                _ => return Err(CliError::Invalid(format!("line {}: unknown key '{key}'", lineno + 1))),
            }
        }
        if let Some(missing) = REQUIRED.iter().find(|k| !seen.iter().any(|s| s == *k)) {
            return Err(CliError::Invalid(format!("missing required key '{missing}'")));
        }
        cfg.params = params;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn protocol(&self) -> Result<ProtocolConfig, CliError> {
        derive_params_with_modulus(&self.params, self.q_override).map_err(|e| CliError::Invalid(e.to_string()))
    }

    pub fn task_assignment(&self) -> Result<TaskAssignment, CliError> {
        let p = &self.params;
        let a = match &self.assignment {
            Some(path) => formats::read_assignment(path)?,
            None => build_symmetric_assignment(p.clients, p.objectives, p.replication, self.offset)
                .map_err(|e| CliError::Invalid(e.to_string()))?,
        };
        if a.clients() != p.clients || a.objectives() != p.objectives || a.replication() != p.replication {
            return Err(CliError::Invalid(format!(
                "assignment is {} x {} with rho = {}, config says n = {}, T = {}, rho = {}",
                a.clients(),
                a.objectives(),
                a.replication(),
                p.clients,
                p.objectives,
                p.replication
            )));
        }
        Ok(a)
    }

    pub fn label_set(&self, assignment: &TaskAssignment) -> Result<LabelSet, CliError> {
        let p = &self.params;
        match &self.labels {
            Some(path) => formats::read_labels(path, p.samples, p.classes, p.gamma),
            None => synth_labels(self.seed, assignment, p.samples, p.classes, p.gamma, self.label_mode)
                .map_err(|e| CliError::Invalid(e.to_string())),
        }
    }
}
