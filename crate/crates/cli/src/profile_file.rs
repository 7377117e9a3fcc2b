//! TOML profile files and the built-in presets.

use std::path::Path;

use betaforms::rationalfn::profile::SIX_BETA_ETA;
use betaforms::{Error, Profile};
use serde::{Deserialize, Serialize};

pub const PRESETS: [&str; 2] = ["section2-s17", "theorem1"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NSpec {
    One(u64),
    List(Vec<u64>),
    Range { from: u64, to: u64, step: Option<u64> },
}

impl NSpec {
    pub fn values(&self) -> Vec<u64> {
        match self {
            NSpec::One(n) => vec![*n],
            NSpec::List(v) => v.clone(),
            NSpec::Range { from, to, step } => (*from..=*to).step_by(step.unwrap_or(1).max(1) as usize).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Checks {
    #[serde(default = "yes")]
    pub verify_inclusions: bool,
    #[serde(default = "yes")]
    pub consistency: bool,
    #[serde(default = "yes")]
    pub asymptotics: bool,
    #[serde(default)]
    pub mc_samples: u64,
    #[serde(default)]
    pub seed: u64,
}

fn yes() -> bool {
    true
}

impl Default for Checks {
    fn default() -> Self {
        Checks { verify_inclusions: true, consistency: true, asymptotics: true, mc_samples: 0, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub family: String,
    pub s: Option<u32>,
    pub n: NSpec,
    pub eta: Option<Vec<u64>>,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default)]
    pub checks: Checks,
}

fn default_precision() -> u32 {
    256
}

pub fn preset(name: &str) -> Option<ProfileFile> {
    match name {
        "section2-s17" => Some(ProfileFile {
            family: "section2".into(),
            s: Some(17),
            n: NSpec::List(vec![2]),
            eta: None,
            precision: 256,
            checks: Checks::default(),
        }),
        "theorem1" => Some(ProfileFile {
            family: "general".into(),
            s: None,
            n: NSpec::List(vec![2, 4]),
            eta: Some(SIX_BETA_ETA.to_vec()),
            precision: 256,
            checks: Checks::default(),
        }),
        _ => None,
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse(String),
}

impl std::fmt::Display for LoadError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read profile: {m}"),
            LoadError::Parse(m) => write!(f, "cannot parse profile: {m}"),
        }
    }
}

/// A preset name or a path to a TOML file.
pub fn load(arg: &str) -> Result<ProfileFile, LoadError> {
    if let Some(p) = preset(arg) {
        return Ok(p);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| LoadError::Parse(e.to_string()))
}

impl ProfileFile {
    /// One validated [`Profile`] per `n`, or every violated condition.
    pub fn profiles(&self) -> Result<Vec<Profile>, Vec<String>> {
        let mut errors = Vec::new();
        let ns = self.n.values();
        if ns.is_empty() {
            errors.push("n selects no values".to_string());
        }
        if self.precision < 64 {
            errors.push(format!("precision = {} is below 64 bits", self.precision));
        }
        let build: Box<dyn Fn(u64) -> betaforms::Result<Profile>> = match self.family.as_str() {
            "section2" => match (self.s, &self.eta) {
                (_, Some(_)) => {
                    errors.push("eta is only allowed for family = \"general\"".into());
                    return Err(errors);
                }
                (None, None) => {
                    errors.push("family = \"section2\" needs s".into());
                    return Err(errors);
                }
                (Some(s), None) => Box::new(move |n| Profile::uniform(s, n)),
            },
            "general" => match &self.eta {
                None => {
                    errors.push("family = \"general\" needs eta".into());
                    return Err(errors);
                }
                Some(eta) => {
                    if let Some(s) = self.s {
                        if eta.len() != s as usize + 1 {
                            errors.push(format!("s = {s} disagrees with {} eta entries", eta.len()));
                        }
                    }
                    let eta = eta.clone();
                    Box::new(move |n| Profile::general(eta.clone(), n))
                }
            },
            other => {
                errors.push(format!("unknown family {other:?}, expected \"section2\" or \"general\""));
                return Err(errors);
            }
        };
        let mut out = Vec::new();
        for n in ns {
            match build(n) {
                Ok(p) => out.push(p),
                Err(Error::InvalidProfile(v)) => {
                    for e in v {
                        if !errors.contains(&e) {
                            errors.push(e);
                        }
                    }
                }
                Err(e) => errors.push(e.to_string()),
            }
        }
        if errors.is_empty() {
            Ok(out)
        } else {
            Err(errors)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in PRESETS {
            assert!(preset(name).unwrap().profiles().is_ok(), "{name}");
        }
    }

    #[test]
    fn parses_range_and_checks() {
        let f: ProfileFile = toml::from_str(
            "family = \"section2\"\ns = 5\nn = { from = 2, to = 6, step = 2 }\n[checks]\nmc-samples = 10\n",
        )
        .unwrap();
        assert_eq!(f.n.values(), vec![2, 4, 6]);
        assert_eq!(f.checks.mc_samples, 10);
        assert!(f.checks.consistency);
    }

    #[test]
    fn odd_n_lists_violation() {
        let f: ProfileFile = toml::from_str("family = \"section2\"\ns = 5\nn = 3\n").unwrap();
        let errs = f.profiles().unwrap_err();
        assert_eq!(errs.len(), 1, "{errs:?}");
    }
}
