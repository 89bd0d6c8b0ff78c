use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{PrimeField, DEFAULT_PRIME};
use crate::error::{Error, Result};

/// Which multiplication table a nodal model uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Products of adjoint forms modulo the equation.
    Quotient,
    /// Values at sampled points.
    Points,
    #[default]
    Both,
}

impl Route {
    pub fn routes(self) -> &'static [Route] {
        match self {
            Route::Quotient => &[Route::Quotient],
            Route::Points => &[Route::Points],
            Route::Both => &[Route::Quotient, Route::Points],
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Quotient => "quotient",
            Route::Points => "points",
            Route::Both => "both",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s {
            "quotient" => Ok(Route::Quotient),
            "points" => Ok(Route::Points),
            "both" => Ok(Route::Both),
            _ => Err(Error::Usage(format!("unknown route {s}"))),
        }
    }
}

fn default_prime() -> u64 {
    DEFAULT_PRIME as u64
}

fn default_seed() -> u64 {
    1
}

fn default_dvr_count() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    VerifyClass {
        kmax: i64,
    },
    Scroll {
        k: usize,
    },
    Gonal {
        k: usize,
        #[serde(default = "default_prime")]
        prime: u64,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default)]
        route: Route,
    },
    Maxcliff {
        k: usize,
        #[serde(default = "default_prime")]
        prime: u64,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default)]
        route: Route,
    },
    Ci {
        genus: usize,
        #[serde(default = "default_prime")]
        prime: u64,
        #[serde(default = "default_seed")]
        seed: u64,
    },
    DvrDemo {
        size: usize,
        #[serde(default = "default_seed")]
        seed: u64,
        #[serde(default = "default_dvr_count")]
        count: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyClass { .. } => "verify-class",
            Command::Scroll { .. } => "scroll",
            Command::Gonal { .. } => "gonal",
            Command::Maxcliff { .. } => "maxcliff",
            Command::Ci { .. } => "ci",
            Command::DvrDemo { .. } => "dvr-demo",
        }
    }

    /// Checks parameters that do not need any computation.
    pub fn validate(&self) -> Result<()> {
        let prime = |p: u64| -> Result<()> {
            let f = PrimeField::new(p).map_err(|e| Error::Usage(e.to_string()))?;
            if f.modulus() < 1000 {
                return Err(Error::Usage(format!("prime {p} is below 1000")));
            }
            Ok(())
        };
        match *self {
            Command::VerifyClass { kmax } if kmax < 3 => Err(Error::Usage(format!("kmax must be at least 3, got {kmax}"))),
            Command::Scroll { k } | Command::Gonal { k, .. } | Command::Maxcliff { k, .. } if k < 3 => {
                Err(Error::Usage(format!("k must be at least 3, got {k}")))
            }
            Command::Gonal { prime: p, .. } | Command::Maxcliff { prime: p, .. } => prime(p),
            Command::Ci { genus, prime: p, .. } => {
                if genus != 4 && genus != 5 {
                    return Err(Error::Usage(format!("genus must be 4 or 5, got {genus}")));
                }
                prime(p)
            }
            Command::DvrDemo { size: 0, .. } => Err(Error::Usage("size must be at least 1".into())),
            _ => Ok(()),
        }
    }
}

/// One job: a command with its output options.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump_matrices: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    /// Extra check on model commands: the extra-syzygy count must equal this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_extra: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            output: None,
            dump_matrices: None,
            threads: None,
            expect_extra: None,
        }
    }
}

/// Parses a suite file: a JSON list of run configurations.
pub fn parse_suite(text: &str) -> Result<Vec<RunConfig>> {
    let list: Vec<RunConfig> = serde_json::from_str(text).map_err(|e| Error::Usage(format!("bad suite config: {e}")))?;
    for c in &list {
        c.command.validate()?;
    }
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_defaults() {
        let s = r#"[{"command": "gonal", "k": 4}, {"command": "ci", "genus": 5, "seed": 3, "output": "x.json"}]"#;
        let list = parse_suite(s).unwrap();
        assert_eq!(
            list[0].command,
            Command::Gonal {
                k: 4,
                prime: DEFAULT_PRIME as u64,
                seed: 1,
                route: Route::Both
            }
        );
        assert_eq!(list[1].output, Some(PathBuf::from("x.json")));
        let back: Vec<RunConfig> = serde_json::from_str(&serde_json::to_string(&list).unwrap()).unwrap();
        assert_eq!(back, list);
    }

    #[test]
    fn malformed_configs() {
        for bad in [
            "{",
            r#"[{"command": "nope"}]"#,
            r#"[{"command": "scroll"}]"#,
            r#"[{"command": "scroll", "k": 2}]"#,
            r#"[{"command": "ci", "genus": 6}]"#,
            r#"[{"command": "gonal", "k": 3, "prime": 1000}]"#,
        ] {
            assert!(matches!(parse_suite(bad), Err(Error::Usage(_))), "{bad}");
        }
        assert!(parse_suite("[]").unwrap().is_empty());
    }
}
