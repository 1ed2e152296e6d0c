//! Scenario files and command-line overrides.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! payoffs = "6,4,3,2"      # or ["6", "4", "3", "2"], decimals or p/q
//! m = 8
//! seed = 1
//! out = "results"
//!
//! [integrator]
//! dt = 0.01
//! t_max = 1e4
//! eps_conv = 1e-10
//!
//! [simulate]
//! x0 = "0.4,0.2,0.1,0.3"
//!
//! [basins]
//! samples = 1000
//!
//! [separatrix]
//! samples = 20
//! iters = 60
//!
//! [sweep]
//! r_min = "1.05"
//! r_max = "2.95"
//! r_step = "0.05"
//! ```
//!
//! Flags given on the command line replace the file values.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

use snowdrift_core::dynamics::IntegratorConfig;
use snowdrift_core::rational::{format_rational, parse_rational};
use snowdrift_core::{BasePayoffs, Rational, RepeatedGame, SimplexPoint};

use crate::error::Invalid;

/// A number written as text (`"29/10"`, `"2.9"`) or as a TOML number.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Int(i64),
    Float(f64),
}

impl Number {
    fn parse(&self) -> Result<Rational, Invalid> {
        let text = match self {
            Number::Text(s) => s.clone(),
            Number::Int(i) => i.to_string(),
            Number::Float(f) => f.to_string(),
        };
        parse_rational(&text).map_err(|e| Invalid(e.to_string()))
    }
}

/// Four numbers, as a comma-separated string or a list.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Quad {
    Text(String),
    List(Vec<Number>),
}

impl Quad {
    fn parse(&self, what: &str) -> Result<[Rational; 4], Invalid> {
        let values: Vec<Rational> = match self {
            Quad::Text(s) => parse_list(s)?,
            Quad::List(items) => items.iter().map(Number::parse).collect::<Result<_, _>>()?,
        };
        values
            .try_into()
            .map_err(|v: Vec<Rational>| Invalid(format!("{what} needs 4 values, got {}", v.len())))
    }
}

/// Parses `"a,b,c,d"`.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, Invalid> {
    text.split(',')
        .map(|s| parse_rational(s).map_err(|e| Invalid(e.to_string())))
        .collect()
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorFile {
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub eps_conv: Option<f64>,
    pub renorm: Option<bool>,
    pub sample_every: Option<u32>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateFile {
    pub x0: Option<Quad>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasinsFile {
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatrixFile {
    pub samples: Option<usize>,
    pub iters: Option<u32>,
    pub seed_a: Option<Quad>,
    pub seed_b: Option<Quad>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    pub r_min: Option<Number>,
    pub r_max: Option<Number>,
    pub r_step: Option<Number>,
    pub grid: Option<Vec<Number>>,
    /// Interior starts simulated per grid point to cross-check the analytics.
    pub validate: Option<usize>,
}

/// Raw scenario file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub payoffs: Option<Quad>,
    pub m: Option<u32>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub integrator: IntegratorFile,
    #[serde(default)]
    pub simulate: SimulateFile,
    #[serde(default)]
    pub basins: BasinsFile,
    #[serde(default)]
    pub separatrix: SeparatrixFile,
    #[serde(default)]
    pub sweep: SweepFile,
}

impl ScenarioFile {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).map_err(|e| Invalid(format!("{}: {e}", path.display())).into())
    }
}

/// Values taken from command-line flags.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub payoffs: Option<String>,
    pub m: Option<u32>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub dt: Option<f64>,
    pub t_max: Option<f64>,
    pub eps_conv: Option<f64>,
    pub sample_every: Option<u32>,
    pub x0: Option<String>,
    /// Sample count for the running command, already merged with its file block.
    pub samples: Option<usize>,
    pub iters: Option<u32>,
    pub seed_a: Option<String>,
    pub seed_b: Option<String>,
    pub r_min: Option<String>,
    pub r_max: Option<String>,
    pub r_step: Option<String>,
    pub validate: Option<usize>,
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_BASIN_SAMPLES: usize = 1000;
pub const DEFAULT_SEPARATRIX_SAMPLES: usize = 20;
pub const DEFAULT_ITERS: u32 = 60;
pub const DEFAULT_R_STEP: (i64, i64) = (1, 20);

/// Fully resolved scenario, shared by all commands.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub payoffs: BasePayoffs,
    pub m: u32,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub integrator: IntegratorConfig,
    pub x0: Option<[Rational; 4]>,
    pub samples: Option<usize>,
    pub iters: u32,
    pub seed_a: Option<[Rational; 4]>,
    pub seed_b: Option<[Rational; 4]>,
    pub r_min: Option<Rational>,
    pub r_max: Option<Rational>,
    pub r_step: Rational,
    pub grid: Option<Vec<Rational>>,
    pub validate: usize,
}

fn pick_quad(flag: &Option<String>, file: &Option<Quad>, what: &str) -> Result<Option<[Rational; 4]>, Invalid> {
    match (flag, file) {
        (Some(text), _) => Quad::Text(text.clone()).parse(what).map(Some),
        (None, Some(q)) => q.parse(what).map(Some),
        (None, None) => Ok(None),
    }
}

fn pick_number(flag: &Option<String>, file: &Option<Number>) -> Result<Option<Rational>, Invalid> {
    match (flag, file) {
        (Some(text), _) => Number::Text(text.clone()).parse().map(Some),
        (None, Some(n)) => n.parse().map(Some),
        (None, None) => Ok(None),
    }
}

impl Scenario {
    pub fn resolve(file: ScenarioFile, flags: Overrides) -> Result<Self, Invalid> {
        let payoffs = pick_quad(&flags.payoffs, &file.payoffs, "payoffs")?
            .ok_or_else(|| Invalid("payoffs are required (--payoffs T,R,S,P or `payoffs` in the config)".into()))?;
        let [t, r, s, p] = payoffs;
        let payoffs = BasePayoffs::new(t, r, s, p).map_err(|e| Invalid(e.to_string()))?;
        let m = flags
            .m
            .or(file.m)
            .ok_or_else(|| Invalid("the number of rounds is required (--m or `m`)".into()))?;
        RepeatedGame::new(payoffs.clone(), m).map_err(|e| Invalid(e.to_string()))?;

        let defaults = IntegratorConfig::default();
        let fi = &file.integrator;
        let integrator = IntegratorConfig {
            dt: flags.dt.or(fi.dt).unwrap_or(defaults.dt),
            t_max: flags.t_max.or(fi.t_max).unwrap_or(defaults.t_max),
            eps_conv: flags.eps_conv.or(fi.eps_conv).unwrap_or(defaults.eps_conv),
            renorm: fi.renorm.unwrap_or(defaults.renorm),
            sample_every: flags.sample_every.or(fi.sample_every).unwrap_or(defaults.sample_every),
        };
        integrator.validate().map_err(|e| Invalid(e.to_string()))?;

        let x0 = pick_quad(&flags.x0, &file.simulate.x0, "x0")?;
        if let Some(x) = &x0 {
            check_point(x, "x0")?;
        }
        let seed_a = pick_quad(&flags.seed_a, &file.separatrix.seed_a, "seed_a")?;
        let seed_b = pick_quad(&flags.seed_b, &file.separatrix.seed_b, "seed_b")?;
        for (x, what) in [(&seed_a, "seed_a"), (&seed_b, "seed_b")] {
            if let Some(x) = x {
                check_point(x, what)?;
            }
        }
        if seed_a.is_some() != seed_b.is_some() {
            return Err(Invalid("give both separatrix seeds or neither".into()));
        }

        let r_step = pick_number(&flags.r_step, &file.sweep.r_step)?
            .unwrap_or_else(|| snowdrift_core::rational::rat(DEFAULT_R_STEP.0, DEFAULT_R_STEP.1));
        if r_step <= snowdrift_core::rational::int(0) {
            return Err(Invalid("r_step must be positive".into()));
        }
        let grid = match &file.sweep.grid {
            Some(items) if flags.r_min.is_none() && flags.r_max.is_none() => {
                Some(items.iter().map(Number::parse).collect::<Result<Vec<_>, _>>()?)
            }
            _ => None,
        };

        Ok(Self {
            payoffs,
            m,
            seed: flags.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            out: flags.out.or(file.out),
            integrator,
            x0,
            samples: flags.samples,
            iters: flags.iters.or(file.separatrix.iters).unwrap_or(DEFAULT_ITERS),
            seed_a,
            seed_b,
            r_min: pick_number(&flags.r_min, &file.sweep.r_min)?,
            r_max: pick_number(&flags.r_max, &file.sweep.r_max)?,
            r_step,
            grid,
            validate: flags.validate.or(file.sweep.validate).unwrap_or(0),
        })
    }

    pub fn game(&self) -> RepeatedGame {
        RepeatedGame::new(self.payoffs.clone(), self.m).expect("validated when resolved")
    }

    /// The reward values to sweep: an explicit grid, or `r_min..=r_max` by
    /// `r_step`, by default every step strictly between `S` and `T`.
    pub fn reward_grid(&self) -> Vec<Rational> {
        if let Some(grid) = &self.grid {
            return grid.clone();
        }
        let s = self.payoffs.sucker();
        let t = self.payoffs.temptation();
        let lo = self.r_min.clone().unwrap_or_else(|| s + &self.r_step);
        let hi = self.r_max.clone();
        let mut grid = Vec::new();
        let mut r = lo;
        loop {
            let past = match &hi {
                Some(hi) => &r > hi,
                None => &r >= t,
            };
            if past {
                break;
            }
            grid.push(r.clone());
            r += &self.r_step;
        }
        grid
    }

    /// The resolved values as written into every report.
    pub fn record(&self, command: &str) -> ScenarioRecord {
        let p = &self.payoffs;
        let quad = |x: &[Rational; 4]| x.iter().map(format_rational).collect::<Vec<_>>();
        ScenarioRecord {
            command: command.to_string(),
            payoffs: [p.temptation(), p.reward(), p.sucker(), p.punishment()]
                .map(format_rational)
                .to_vec(),
            m: self.m,
            seed: self.seed,
            integrator: IntegratorRecord {
                dt: self.integrator.dt,
                t_max: self.integrator.t_max,
                eps_conv: self.integrator.eps_conv,
                renorm: self.integrator.renorm,
                sample_every: self.integrator.sample_every,
            },
            x0: self.x0.as_ref().map(quad),
            samples: self.samples,
            iters: self.iters,
            seed_a: self.seed_a.as_ref().map(quad),
            seed_b: self.seed_b.as_ref().map(quad),
            r_grid: (command == "sweep").then(|| self.reward_grid().iter().map(format_rational).collect()),
            validate: self.validate,
        }
    }
}

fn check_point(x: &[Rational; 4], what: &str) -> Result<(), Invalid> {
    snowdrift_core::simplex::validate_exact(x).map_err(|e| Invalid(format!("{what}: {e}")))?;
    SimplexPoint::from_exact(x).map_err(|e| Invalid(format!("{what}: {e}")))?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegratorRecord {
    pub dt: f64,
    pub t_max: f64,
    pub eps_conv: f64,
    pub renorm: bool,
    pub sample_every: u32,
}

/// The resolved scenario in serialized form.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioRecord {
    pub command: String,
    pub payoffs: Vec<String>,
    pub m: u32,
    pub seed: u64,
    pub integrator: IntegratorRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub iters: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_a: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_grid: Option<Vec<String>>,
    pub validate: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use snowdrift_core::rational::{int, rat};

    fn flags(payoffs: &str, m: u32) -> Overrides {
        Overrides {
            payoffs: Some(payoffs.into()),
            m: Some(m),
            ..Default::default()
        }
    }

    #[test]
    fn flags_override_file() {
        let file: ScenarioFile = toml::from_str(
            r#"
            payoffs = ["6", "4", "3", "2"]
            m = 8
            seed = 5
            [integrator]
            dt = 0.02
            "#,
        )
        .unwrap();
        let s = Scenario::resolve(
            file,
            Overrides {
                m: Some(2),
                dt: Some(0.005),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(s.m, 2);
        assert_eq!(s.seed, 5);
        assert_eq!(s.integrator.dt, 0.005);
        assert_eq!(s.payoffs.reward(), &int(4));
    }

    #[test]
    fn payoff_forms() {
        let file: ScenarioFile = toml::from_str("payoffs = [3, 2.9, \"1\", \"0/7\"]\nm = 6").unwrap();
        let s = Scenario::resolve(file, Overrides::default()).unwrap();
        assert_eq!(s.payoffs.reward(), &rat(29, 10));
        let s = Scenario::resolve(ScenarioFile::default(), flags("3,29/10,1,0", 6)).unwrap();
        assert_eq!(s.payoffs.reward(), &rat(29, 10));
    }

    #[test]
    fn invalid_inputs() {
        assert!(Scenario::resolve(ScenarioFile::default(), flags("3,3,1,0", 6)).is_err());
        assert!(Scenario::resolve(ScenarioFile::default(), flags("3,2,1", 6)).is_err());
        assert!(Scenario::resolve(ScenarioFile::default(), flags("3,2,1,0", 1)).is_err());
        assert!(Scenario::resolve(ScenarioFile::default(), Overrides::default()).is_err());
        let mut f = flags("3,2,1,0", 6);
        f.x0 = Some("0.5,0.5,0.5,0".into());
        assert!(Scenario::resolve(ScenarioFile::default(), f).is_err());
        assert!(toml::from_str::<ScenarioFile>("payoffs = \"3,2,1,0\"\nbogus = 1").is_err());
    }

    #[test]
    fn default_grid_spans_the_open_interval() {
        let s = Scenario::resolve(ScenarioFile::default(), flags("3,2,1,0", 6)).unwrap();
        let grid = s.reward_grid();
        assert_eq!(grid.len(), 39);
        assert_eq!(grid[0], rat(21, 20));
        assert_eq!(grid[38], rat(59, 20));
    }
}
