//! Flat `key = value` run configuration, archived beside every output so a
//! run can be repeated from the file alone.
//!
//! ```text
//! # forrester cost study
//! command = cost-study
//! benchmark = forrester2f
//! methods = mfgp, delta
//! budgets = 300, 600
//! seeds = 0, 1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Keys may appear at
//! most once; list values are comma separated.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::data::{format_float, OncOutput};
use crate::error::{Error, Result};
use crate::experiments::{GridStage, InputSubset, Pairing, FINAL_EPOCHS};
use crate::mf::{MethodId, MethodSettings, MfWeights};
use crate::nn::MlpConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    Generate,
    Tune,
    CostStudy,
    Eval,
    Report,
}

impl Command {
    pub const ALL: [Command; 5] = [
        Command::Generate,
        Command::Tune,
        Command::CostStudy,
        Command::Eval,
        Command::Report,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Generate => "generate",
            Command::Tune => "tune",
            Command::CostStudy => "cost-study",
            Command::Eval => "eval",
            Command::Report => "report",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown command `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub benchmark: Option<String>,
    pub dim: Option<usize>,
    /// Directory holding `<problem>_<level>.csv` files.
    pub data_dir: Option<PathBuf>,
    /// Training files, lowest fidelity first.
    pub train: Vec<PathBuf>,
    pub test: Option<PathBuf>,
    /// Precomputed predictions scored by `eval` instead of fitting a model.
    pub predictions: Option<PathBuf>,
    /// Results ledgers read by `report`.
    pub results: Vec<PathBuf>,
    pub methods: Vec<MethodId>,
    pub pairings: Vec<Pairing>,
    pub budgets: Vec<usize>,
    pub seeds: Vec<u64>,
    /// Rows per level for `generate`, lowest fidelity first.
    pub counts: Vec<usize>,
    pub stage: Option<GridStage>,
    pub output: Option<OncOutput>,
    pub subset: InputSubset,
    pub epochs: Option<usize>,
    pub layers: Option<usize>,
    pub width: Option<usize>,
    pub learning_rate: Option<f64>,
    pub alpha: Option<f64>,
    pub w_m: Option<f64>,
    pub w_h: Option<f64>,
    pub lambda: Option<f64>,
    pub strict_bounds: bool,
    pub jobs: Option<usize>,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(command: Command) -> RunConfig {
        RunConfig {
            command,
            benchmark: None,
            dim: None,
            data_dir: None,
            train: Vec::new(),
            test: None,
            predictions: None,
            results: Vec::new(),
            methods: Vec::new(),
            pairings: Vec::new(),
            budgets: Vec::new(),
            seeds: vec![0],
            counts: Vec::new(),
            stage: None,
            output: None,
            subset: InputSubset::All,
            epochs: None,
            layers: None,
            width: None,
            learning_rate: None,
            alpha: None,
            w_m: None,
            w_h: None,
            lambda: None,
            strict_bounds: false,
            jobs: None,
            out: PathBuf::from("out"),
        }
    }

    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut seen: Vec<String> = Vec::new();
        let mut cfg = RunConfig::new(Command::Generate);
        let mut has_command = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: line_no, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            seen.push(key.to_string());
            cfg.set(key, value).map_err(|e| match e {
                Error::Parse { .. } => e,
                other => err(format!("{key}: {}", strip_prefix(&other))),
            })?;
            if key == "command" {
                has_command = true;
            }
        }
        if !has_command {
            return Err(Error::Parse {
                line: 0,
                message: "missing `command`".into(),
            });
        }
        Ok(cfg)
    }

    /// Sets one key from its text form, as it would appear in a config file.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        match key {
            "command" => self.command = v.parse()?,
            "benchmark" => self.benchmark = Some(nonempty(v)?.to_string()),
            "dim" => self.dim = Some(num(v)?),
            "data_dir" => self.data_dir = Some(PathBuf::from(nonempty(v)?)),
            "train" => self.train = list(v)?.into_iter().map(PathBuf::from).collect(),
            "test" => self.test = Some(PathBuf::from(nonempty(v)?)),
            "predictions" => self.predictions = Some(PathBuf::from(nonempty(v)?)),
            "results" => self.results = list(v)?.into_iter().map(PathBuf::from).collect(),
            "methods" => self.methods = parse_list(v)?,
            "pairings" => self.pairings = parse_list(v)?,
            "budgets" => self.budgets = parse_list(v)?,
            "seeds" => self.seeds = parse_list(v)?,
            "counts" => self.counts = parse_list(v)?,
            "stage" => self.stage = Some(v.parse()?),
            "output" => self.output = Some(v.parse()?),
            "subset" => self.subset = v.parse()?,
            "epochs" => self.epochs = Some(num(v)?),
            "layers" => self.layers = Some(num(v)?),
            "width" => self.width = Some(num(v)?),
            "learning_rate" => self.learning_rate = Some(real(v)?),
            "alpha" => self.alpha = Some(real(v)?),
            "w_m" => self.w_m = Some(real(v)?),
            "w_h" => self.w_h = Some(real(v)?),
            "lambda" => self.lambda = Some(real(v)?),
            "strict_bounds" => {
                self.strict_bounds = match v {
                    "true" => true,
                    "false" => false,
                    _ => return Err(Error::Config(format!("expected true or false, found `{v}`"))),
                }
            }
            "jobs" => self.jobs = Some(num(v)?),
            "out" => self.out = PathBuf::from(nonempty(v)?),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Text form accepted by [`RunConfig::parse`]; unset keys are omitted.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        let join = |v: Vec<String>| v.join(", ");
        let paths = |p: &[PathBuf]| join(p.iter().map(|x| x.display().to_string()).collect());
        put("command", self.command.to_string());
        if let Some(b) = &self.benchmark {
            put("benchmark", b.clone());
        }
        if let Some(d) = self.dim {
            put("dim", d.to_string());
        }
        if let Some(d) = &self.data_dir {
            put("data_dir", d.display().to_string());
        }
        if !self.train.is_empty() {
            put("train", paths(&self.train));
        }
        if let Some(t) = &self.test {
            put("test", t.display().to_string());
        }
        if let Some(p) = &self.predictions {
            put("predictions", p.display().to_string());
        }
        if !self.results.is_empty() {
            put("results", paths(&self.results));
        }
        if !self.methods.is_empty() {
            put("methods", join(self.methods.iter().map(|m| m.to_string()).collect()));
        }
        if !self.pairings.is_empty() {
            put("pairings", join(self.pairings.iter().map(|p| p.to_string()).collect()));
        }
        if !self.budgets.is_empty() {
            put("budgets", join(self.budgets.iter().map(|b| b.to_string()).collect()));
        }
        put("seeds", join(self.seeds.iter().map(|b| b.to_string()).collect()));
        if !self.counts.is_empty() {
            put("counts", join(self.counts.iter().map(|b| b.to_string()).collect()));
        }
        if let Some(st) = self.stage {
            put("stage", st.to_string());
        }
        if let Some(o) = self.output {
            put("output", o.to_string());
        }
        put("subset", self.subset.to_string());
        let opt_n = |k: &str, v: Option<usize>, put: &mut dyn FnMut(&str, String)| {
            if let Some(v) = v {
                put(k, v.to_string());
            }
        };
        opt_n("epochs", self.epochs, &mut put);
        opt_n("layers", self.layers, &mut put);
        opt_n("width", self.width, &mut put);
        for (k, v) in [
            ("learning_rate", self.learning_rate),
            ("alpha", self.alpha),
            ("w_m", self.w_m),
            ("w_h", self.w_h),
            ("lambda", self.lambda),
        ] {
            if let Some(v) = v {
                put(k, format_float(v));
            }
        }
        put("strict_bounds", self.strict_bounds.to_string());
        opt_n("jobs", self.jobs, &mut put);
        put("out", self.out.display().to_string());
        s
    }

    /// Fidelity weights from `alpha` or `w_m`/`w_h`, if any were given.
    pub fn weights(&self) -> Result<Option<MfWeights>> {
        match (self.alpha, self.w_m, self.w_h) {
            (None, None, None) => Ok(None),
            (Some(a), None, None) => MfWeights::two_level(a).map(Some),
            (None, Some(m), Some(h)) => MfWeights::from_hm(h, m).map(Some),
            _ => Err(Error::Config(
                "give either `alpha` or both `w_m` and `w_h`".into(),
            )),
        }
    }

    /// Model settings for `seed`; unset keys fall back to a 2x32 network,
    /// learning rate 1e-3, no penalty and the final-training epoch count.
    pub fn settings(&self, seed: u64) -> Result<MethodSettings> {
        let mlp = MlpConfig::uniform(
            self.layers.unwrap_or(2),
            self.width.unwrap_or(32),
            self.learning_rate.unwrap_or(1e-3),
            self.epochs.unwrap_or(FINAL_EPOCHS),
        )
        .with_seed(seed)
        .with_l2(self.lambda.unwrap_or(0.0));
        let mut s = MethodSettings::new(mlp);
        s.weights = self.weights()?;
        Ok(s)
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::Config(m) => m.clone(),
        other => other.to_string(),
    }
}

fn nonempty(v: &str) -> Result<&str> {
    if v.is_empty() {
        Err(Error::Config("empty value".into()))
    } else {
        Ok(v)
    }
}

fn list(v: &str) -> Result<Vec<&str>> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',').map(|p| nonempty(p.trim())).collect()
}

fn parse_list<T: FromStr>(v: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    list(v)?
        .into_iter()
        .map(|p| p.parse::<T>().map_err(|e| Error::Config(format!("`{p}`: {e}"))))
        .collect()
}

fn num(v: &str) -> Result<usize> {
    v.parse().map_err(|_| Error::Config(format!("expected a non-negative integer, found `{v}`")))
}

fn real(v: &str) -> Result<f64> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Config(format!("expected a finite number, found `{v}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut c = RunConfig::new(Command::CostStudy);
        c.benchmark = Some("rastrigin3f".into());
        c.dim = Some(5);
        c.methods = vec![MethodId::MfGp, MethodId::Flag3f];
        c.pairings = vec![Pairing::LfHf, Pairing::LfMfHf];
        c.budgets = vec![300, 1800];
        c.seeds = vec![0, 7];
        c.stage = Some(GridStage::Weights3f);
        c.output = Some(OncOutput::TempAfterOnc);
        c.subset = InputSubset::NonDominant;
        c.learning_rate = Some(5e-4);
        c.lambda = Some(1e-5);
        c.w_m = Some(0.2);
        c.w_h = Some(0.7);
        c.train = vec!["a/lf.csv".into(), "a/hf.csv".into()];
        c.strict_bounds = true;
        c.jobs = Some(2);
        let again = RunConfig::parse(&c.to_text()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.to_text(), c.to_text());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let line = |t: &str| match RunConfig::parse(t) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("{other:?}"),
        };
        assert_eq!(line("command = tune\n\n# c\nbogus = 1\n"), 4);
        assert_eq!(line("command = tune\nepochs = 1\nepochs = 2\n"), 3);
        assert_eq!(line("command = tune\nmethods = delta, nope\n"), 2);
        assert_eq!(line("command = tune\nno equals sign\n"), 2);
        assert_eq!(line("epochs = 3\n"), 0);
        assert_eq!(line("command = tune\nalpha = nan\n"), 2);
    }

    #[test]
    fn settings_defaults_and_weights() {
        let mut c = RunConfig::parse("command = tune\nalpha = 0.3\nlayers = 3\n").unwrap();
        let s = c.settings(4).unwrap();
        assert_eq!(s.mlp.layer_widths, vec![32, 32, 32]);
        assert_eq!(s.mlp.epochs, FINAL_EPOCHS);
        assert_eq!(s.mlp.seed, 4);
        assert_eq!(s.weights, Some(MfWeights::TwoLevel { alpha: 0.3 }));
        c.w_m = Some(0.2);
        assert!(c.settings(0).is_err());
    }
}
