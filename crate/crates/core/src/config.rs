//! JSON experiment configuration.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Square;
use crate::potential::{DecayLaw, PotentialSeq};
use crate::shift::{AmbientRule, ShiftModel, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Pressure,
    Curve,
    Gibbs,
    Approx,
    Zerotemp,
    Certify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pressure => "pressure",
            Command::Curve => "curve",
            Command::Gibbs => "gibbs",
            Command::Approx => "approx",
            Command::Zerotemp => "zerotemp",
            Command::Certify => "certify",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Alphabet {
    Size(usize),
    Symbols(Vec<Symbol>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleName {
    Full,
    Renewal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum ShiftSpec {
    Graph {
        alphabet: Alphabet,
        edges: Vec<(Symbol, Symbol)>,
    },
    Matrix {
        matrix: Vec<Vec<u8>>,
    },
    Countable {
        rule: RuleName,
        truncation: usize,
    },
}

impl ShiftSpec {
    pub fn build(&self) -> Result<ShiftModel> {
        match self {
            ShiftSpec::Graph { alphabet, edges } => {
                let symbols = match alphabet {
                    Alphabet::Size(n) => (0..*n).collect(),
                    Alphabet::Symbols(s) => s.clone(),
                };
                ShiftModel::from_edges(&symbols, edges)
            }
            ShiftSpec::Matrix { matrix } => ShiftModel::from_matrix(matrix),
            ShiftSpec::Countable { rule, truncation } => {
                let rule = match rule {
                    RuleName::Full => AmbientRule::Full,
                    RuleName::Renewal => AmbientRule::Renewal,
                };
                ShiftModel::truncation(rule, *truncation)
            }
        }
    }

    /// The countable shift behind a truncation, if any.
    pub fn ambient(&self) -> Option<ShiftModel> {
        match self {
            ShiftSpec::Countable { rule: RuleName::Full, .. } => {
                Some(ShiftModel::countable(AmbientRule::Full))
            }
            ShiftSpec::Countable { rule: RuleName::Renewal, .. } => {
                Some(ShiftModel::countable(AmbientRule::Renewal))
            }
            _ => None,
        }
    }
}

/// A number given either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Decimal {
    Number(f64),
    Text(String),
}

impl Decimal {
    fn value(&self, field: &str) -> Result<f64> {
        match self {
            Decimal::Number(x) => Ok(*x),
            Decimal::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::validation(field, format!("'{s}' is not a decimal number"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum LawSpec {
    NegLog { beta: f64 },
    Linear { c: f64 },
    Constant { c: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PotentialSpec {
    LocallyConstant {
        #[serde(default = "one")]
        depth: usize,
        /// Keys are space-separated words.
        values: BTreeMap<String, f64>,
    },
    Decay {
        #[serde(flatten)]
        law: LawSpec,
    },
    MatrixCocycle {
        matrices: BTreeMap<String, Vec<Vec<Decimal>>>,
        #[serde(default)]
        c_aa: Option<f64>,
    },
}

fn one() -> usize {
    1
}

fn parse_word(key: &str) -> Result<Word> {
    key.split_whitespace()
        .map(|s| {
            s.parse::<Symbol>()
                .map_err(|_| Error::validation("potential.values", format!("bad symbol '{s}' in '{key}'")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Word::new)
}

impl PotentialSpec {
    pub fn build(&self) -> Result<PotentialSeq<f64>> {
        match self {
            PotentialSpec::LocallyConstant { depth, values } => {
                let table = values
                    .iter()
                    .map(|(k, &v)| Ok((parse_word(k)?, v)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                PotentialSeq::locally_constant(*depth, table)
            }
            PotentialSpec::Decay { law } => Ok(PotentialSeq::decay(match *law {
                LawSpec::NegLog { beta } => DecayLaw::NegLog { beta },
                LawSpec::Linear { c } => DecayLaw::Linear { c },
                LawSpec::Constant { c } => DecayLaw::Constant { c },
            })),
            PotentialSpec::MatrixCocycle { matrices, c_aa } => {
                let mut parsed = BTreeMap::new();
                for (key, rows) in matrices {
                    let symbol: Symbol = key.trim().parse().map_err(|_| {
                        Error::validation("potential.matrices", format!("bad symbol '{key}'"))
                    })?;
                    let rows = rows
                        .iter()
                        .map(|r| r.iter().map(|d| d.value("potential.matrices")).collect())
                        .collect::<Result<Vec<Vec<f64>>>>()?;
                    parsed.insert(symbol, Square::from_rows(&rows)?);
                }
                let pot = PotentialSeq::matrix_cocycle(parsed)?;
                Ok(match c_aa {
                    Some(c) => {
                        let bv = pot.c_bv();
                        pot.with_declared(*c, bv)
                    }
                    None => pot,
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Points(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl Grid {
    /// Grid points; ranges include `stop` when it is hit up to rounding.
    pub fn points(&self) -> Result<Vec<f64>> {
        match self {
            Grid::Points(p) => Ok(p.clone()),
            Grid::Range { start, stop, step } => {
                if !(*step > 0.0) || !(stop >= start) {
                    return Err(Error::validation("grid", "range needs step > 0 and stop >= start"));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                Ok((0..=n).map(|k| start + k as f64 * step).collect())
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteChoice {
    #[default]
    Auto,
    Transfer,
    Periodic,
    CylinderSup,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub command: Option<Command>,
    pub shift: ShiftSpec,
    pub potential: PotentialSpec,
    #[serde(default)]
    pub t: Option<f64>,
    #[serde(default)]
    pub route: RouteChoice,
    /// Longest word or orbit length for the enumeration routes.
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Base symbol for periodic orbits.
    #[serde(default)]
    pub anchor: Option<Symbol>,
    #[serde(default = "default_budget")]
    pub word_budget: usize,
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub averaging: Option<usize>,
    #[serde(default)]
    pub levels: Option<usize>,
    #[serde(default)]
    pub schedule: Option<Grid>,
    #[serde(default)]
    pub radius: Option<f64>,
    #[serde(default)]
    pub delta: Option<f64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub leakage: Option<f64>,
    #[serde(default)]
    pub slack: Option<f64>,
}

fn default_n_max() -> usize {
    12
}

fn default_budget() -> usize {
    crate::pressure::DEFAULT_WORD_BUDGET
}

fn default_step() -> f64 {
    crate::pressure::DEFAULT_STEP
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::validation("config", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::validation("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}
