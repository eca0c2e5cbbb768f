//! Commands behind the `mfsurrogate` binary. Every command writes its
//! effective configuration to `run.cfg` in the output directory.

use std::fs;
use std::path::{Path, PathBuf};

use mfsurrogate::benchmarks::{make_dataset, sample_uniform, BenchmarkSpec};
use mfsurrogate::config::{Command, RunConfig};
use mfsurrogate::data::{
    benchmark_file_name, level_from_file_name, load_benchmark_csv, load_onc_csv, load_predictions_csv,
    save_benchmark_csv, save_predictions_csv, BoundsPolicy, OncOutput,
};
use mfsurrogate::experiments::{
    allocation, grid_ledger_csv, grid_search, indices_csv, input_subset, markdown_report, parse_results_csv,
    r2, results_csv, rmse, rmse_chart_svg, run_cost_study, summarize, GridPoint, GridSpec, InputSubset, Pairing,
    RunResult, StudyData, StudyPlan, StudySpec, TuneTask, BUDGETS, SPLIT_TOTAL, TUNING_EPOCHS,
};
use mfsurrogate::mf::{fit_method, MethodId, MfWeights};
use mfsurrogate::{Error, FidelityDataset, FidelityLevel, Result};

/// Seed of the input design when benchmark data is generated in memory; the
/// same design `generate --seed 0` writes to disk.
pub const DESIGN_SEED: u64 = 0;

/// Runs `cfg.command` and returns the files it wrote.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let mut written = match cfg.command {
        Command::Generate => generate(cfg)?,
        Command::Tune => tune(cfg)?,
        Command::CostStudy => cost_study(cfg)?,
        Command::Eval => eval(cfg)?,
        Command::Report => report(cfg)?,
    };
    written.push(write(&cfg.out.join("run.cfg"), &cfg.to_text())?);
    Ok(written)
}

fn write(path: &Path, text: &str) -> Result<PathBuf> {
    fs::write(path, text).map_err(|e| Error::io(path, e))?;
    Ok(path.to_path_buf())
}

fn first_seed(cfg: &RunConfig) -> Result<u64> {
    cfg.seeds
        .first()
        .copied()
        .ok_or_else(|| Error::Config("no seeds given".into()))
}

fn benchmark(cfg: &RunConfig) -> Result<BenchmarkSpec> {
    let name = cfg
        .benchmark
        .as_deref()
        .ok_or_else(|| Error::Config("no benchmark given".into()))?;
    BenchmarkSpec::lookup(name, cfg.dim)
}

fn generate(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let spec = benchmark(cfg)?;
    let levels = spec.fidelities();
    let counts: Vec<usize> = match cfg.counts.len() {
        0 => vec![SPLIT_TOTAL; levels.len()],
        n if n == levels.len() => cfg.counts.clone(),
        3 if levels.len() == 2 && cfg.counts[1] == 0 => vec![cfg.counts[0], cfg.counts[2]],
        n => {
            return Err(Error::Config(format!(
                "{} has {} fidelity levels but {n} counts were given",
                spec.name(),
                levels.len()
            )))
        }
    };
    let n_max = counts.iter().copied().max().unwrap_or(0);
    if n_max == 0 {
        return Err(Error::EmptyDesign);
    }
    // One design shared by all levels; smaller levels take a prefix.
    let x = sample_uniform(&spec, n_max, first_seed(cfg)?)?;
    let mut written = Vec::new();
    for (&level, &n) in levels.iter().zip(&counts) {
        if n == 0 {
            continue;
        }
        let d = make_dataset(&spec, level, &x)?.subset(&(0..n).collect::<Vec<_>>());
        let path = cfg.out.join(benchmark_file_name(&spec.name(), level));
        save_benchmark_csv(&d, &path)?;
        println!("wrote {} ({n} rows)", path.display());
        written.push(path);
    }
    Ok(written)
}

/// Problem name used in file names and ledgers.
fn problem_name(cfg: &RunConfig) -> Result<String> {
    match (&cfg.benchmark, &cfg.data_dir) {
        (Some(b), _) if b == "onc" => Ok("onc".into()),
        (Some(_), _) => Ok(benchmark(cfg)?.name()),
        (None, Some(_)) => Ok("onc".into()),
        (None, None) => Err(Error::Config("give a benchmark or a data directory".into())),
    }
}

/// ONC schema when named so, or when data is given without a benchmark id
/// or an ONC output is selected.
fn is_onc(cfg: &RunConfig) -> bool {
    match &cfg.benchmark {
        Some(b) => b == "onc",
        None => cfg.data_dir.is_some() || cfg.output.is_some(),
    }
}

fn onc_output(cfg: &RunConfig) -> Result<OncOutput> {
    cfg.output
        .ok_or_else(|| Error::Config("ONC data needs `output` (time_to_onc or temp_after_onc)".into()))
}

fn policy(cfg: &RunConfig) -> BoundsPolicy {
    if cfg.strict_bounds {
        BoundsPolicy::Strict
    } else {
        BoundsPolicy::Warn
    }
}

/// Loads one data file, ONC or benchmark schema depending on the problem.
fn load_file(cfg: &RunConfig, path: &Path) -> Result<FidelityDataset> {
    if is_onc(cfg) {
        let output = onc_output(cfg)?;
        let onc = load_onc_csv(path, policy(cfg))?;
        for w in &onc.report.warnings {
            eprintln!("{}: {w}", path.display());
        }
        input_subset(&onc.to_dataset(output)?, output, cfg.subset)
    } else {
        if cfg.subset != InputSubset::All {
            return Err(Error::Config("input subsets apply to ONC data only".into()));
        }
        load_benchmark_csv(path)
    }
}

/// Levels the problem provides.
fn problem_levels(cfg: &RunConfig) -> Result<Vec<FidelityLevel>> {
    if is_onc(cfg) {
        Ok(FidelityLevel::ALL.to_vec())
    } else {
        Ok(benchmark(cfg)?.fidelities().to_vec())
    }
}

/// Full-size data for `levels`: read from `data_dir` or generated in memory.
fn study_data(cfg: &RunConfig, levels: &[FidelityLevel]) -> Result<StudyData> {
    let mut data = StudyData::default();
    let name = problem_name(cfg)?;
    let generated = match &cfg.data_dir {
        Some(_) => None,
        None if name == "onc" => return Err(Error::Config("ONC data needs `data_dir`".into())),
        None => {
            let spec = benchmark(cfg)?;
            Some((sample_uniform(&spec, SPLIT_TOTAL, DESIGN_SEED)?, spec))
        }
    };
    for &level in levels {
        let d = match (&cfg.data_dir, &generated) {
            (Some(dir), _) => load_file(cfg, &dir.join(benchmark_file_name(&name, level)))?,
            (None, Some((x, spec))) => make_dataset(spec, level, x)?,
            (None, None) => unreachable!(),
        };
        if d.level != level {
            return Err(Error::Config(format!("file for {level} holds {} rows", d.level)));
        }
        match level {
            FidelityLevel::Lf => data.lf = Some(d),
            FidelityLevel::Mf => data.mf = Some(d),
            FidelityLevel::Hf => data.hf = Some(d),
        }
    }
    Ok(data)
}

/// Pairings `method` can run on the available levels.
fn default_pairings(method: MethodId, levels: &[FidelityLevel]) -> Vec<Pairing> {
    Pairing::ALL
        .into_iter()
        .filter(|p| p.levels().len() == method.fidelities() && p.levels().iter().all(|l| levels.contains(l)))
        .collect()
}

fn single_method(cfg: &RunConfig) -> Result<MethodId> {
    match cfg.methods.as_slice() {
        [m] => Ok(*m),
        [] => Err(Error::Config("no method given".into())),
        _ => Err(Error::Config("this command takes exactly one method".into())),
    }
}

fn tune(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let method = single_method(cfg)?;
    let stage = cfg
        .stage
        .ok_or_else(|| Error::Config("no grid stage given (base, alpha_lambda or weights3f)".into()))?;
    stage.check_method(method)?;
    let levels = problem_levels(cfg)?;
    let pairing = match cfg.pairings.as_slice() {
        [] => *default_pairings(method, &levels)
            .first()
            .ok_or_else(|| Error::Config(format!("{method} cannot run on this problem's levels")))?,
        [p] => *p,
        _ => return Err(Error::Config("tuning takes one pairing".into())),
    };
    mfsurrogate::experiments::check_arity(method, pairing)?;
    let budget = cfg.budgets.first().copied().unwrap_or(BUDGETS[0]);
    let alloc = allocation(pairing, budget)?;
    let data = study_data(cfg, pairing.levels())?;

    let mut tasks = Vec::new();
    for &seed in &cfg.seeds {
        let plan = StudyPlan::new(seed)?;
        let mut train = Vec::new();
        for &level in pairing.levels() {
            train.push(data.get(level)?.subset(plan.train_rows(level, alloc.count(level))?));
        }
        let test = data.get(pairing.top())?.subset(plan.test_rows(pairing));
        tasks.push(TuneTask {
            name: format!("seed{seed}"),
            train,
            test,
        });
    }
    let mut spec = GridSpec::new(stage);
    spec.base = GridPoint::architecture(
        cfg.layers.unwrap_or(spec.base.layers),
        cfg.width.unwrap_or(spec.base.width),
        cfg.learning_rate.unwrap_or(spec.base.learning_rate),
    );
    spec.epochs = cfg.epochs.unwrap_or(TUNING_EPOCHS);
    spec.seed = first_seed(cfg)?;
    let outcome = grid_search(method, &spec, &tasks)?;
    let names: Vec<String> = tasks.iter().map(|t| t.name.clone()).collect();
    let ledger = cfg.out.join(format!("grid_{method}_{stage}.csv"));
    let mut written = vec![write(&ledger, &grid_ledger_csv(&outcome, &names))?];

    let win = outcome.winner();
    println!(
        "{method} {stage}: {} configurations, best #{} mean RMSE {}",
        outcome.rows.len(),
        win.index,
        win.mean_rmse
    );
    let mut best = cfg.clone();
    best.command = Command::CostStudy;
    best.stage = None;
    best.epochs = None;
    best.layers = Some(win.point.layers);
    best.width = Some(win.point.width);
    best.learning_rate = Some(win.point.learning_rate);
    best.lambda = Some(win.point.lambda);
    match win.point.weights {
        Some(MfWeights::TwoLevel { alpha }) => best.alpha = Some(alpha),
        Some(MfWeights::ThreeLevel { w_m, w_h, .. }) => {
            best.w_m = Some(w_m);
            best.w_h = Some(w_h);
        }
        None => {}
    }
    written.push(write(&cfg.out.join(format!("best_{method}.cfg")), &best.to_text())?);
    Ok(written)
}

fn output_label(cfg: &RunConfig) -> Result<String> {
    if is_onc(cfg) {
        Ok(onc_output(cfg)?.to_string())
    } else {
        problem_name(cfg)
    }
}

fn cost_study(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    if cfg.methods.is_empty() {
        return Err(Error::Config("no methods given".into()));
    }
    let levels = problem_levels(cfg)?;
    let budgets = if cfg.budgets.is_empty() {
        BUDGETS.to_vec()
    } else {
        cfg.budgets.clone()
    };
    let mut plans = Vec::new();
    let mut needed: Vec<FidelityLevel> = Vec::new();
    for &m in &cfg.methods {
        let pairings = if cfg.pairings.is_empty() {
            default_pairings(m, &levels)
        } else {
            cfg.pairings.clone()
        };
        if pairings.is_empty() {
            return Err(Error::Config(format!("{m} cannot run on this problem's levels")));
        }
        for p in &pairings {
            mfsurrogate::experiments::check_arity(m, *p)?;
            for l in p.levels() {
                if !levels.contains(l) {
                    return Err(Error::Config(format!("pairing {p} needs {l} data, which this problem lacks")));
                }
                if !needed.contains(l) {
                    needed.push(*l);
                }
            }
        }
        plans.push((m, pairings));
    }
    needed.sort();
    let data = study_data(cfg, &needed)?;
    let subset = cfg.subset.to_string();
    let output = output_label(cfg)?;

    let mut results: Vec<RunResult> = Vec::new();
    let mut indices = Vec::new();
    for &seed in &cfg.seeds {
        for (m, pairings) in &plans {
            let spec = StudySpec {
                methods: vec![(*m, cfg.settings(seed)?)],
                pairings: pairings.clone(),
                budgets: budgets.clone(),
                seed,
                subset: subset.clone(),
                output: output.clone(),
            };
            let out = run_cost_study(&data, &spec)?;
            for r in &out.results {
                println!(
                    "{} {} budget={} seed={} rmse={:.6} r2={:.6} time={:.2}s",
                    r.method, r.pairing, r.budget, r.seed, r.rmse, r.r2, r.wall_time_s
                );
            }
            results.extend(out.results);
            indices.extend(out.indices);
        }
    }
    let mut written = vec![
        write(&cfg.out.join("results.csv"), &results_csv(&results))?,
        write(&cfg.out.join("indices.csv"), &indices_csv(&indices))?,
    ];
    written.extend(write_reports(&cfg.out, &results)?);
    Ok(written)
}

fn write_reports(out: &Path, results: &[RunResult]) -> Result<Vec<PathBuf>> {
    let mut written = vec![write(&out.join("report.md"), &markdown_report(results))?];
    for ((subset, output), rows) in summarize(results) {
        let mut pairings: Vec<Pairing> = rows.iter().map(|r| r.pairing).collect();
        pairings.sort();
        pairings.dedup();
        for p in pairings {
            let title = format!("{output} ({subset} inputs), {}", p.label());
            let file = format!("rmse_{output}_{subset}_{}.svg", p.as_str().replace('+', "-"));
            written.push(write(&out.join(file), &rmse_chart_svg(&rows, p, &title))?);
        }
    }
    Ok(written)
}

fn load_level_file(cfg: &RunConfig, path: &Path) -> Result<FidelityDataset> {
    let d = load_file(cfg, path)?;
    if let Some(level) = level_from_file_name(path) {
        if level != d.level {
            return Err(Error::Config(format!(
                "{} is named as {level} data but holds {} rows",
                path.display(),
                d.level
            )));
        }
    }
    Ok(d)
}

fn eval(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let test_path = cfg
        .test
        .as_ref()
        .ok_or_else(|| Error::Config("no test file given".into()))?;
    let test = load_level_file(cfg, test_path)?;
    let mut written = Vec::new();
    let pred = match &cfg.predictions {
        Some(p) => load_predictions_csv(p)?,
        None => {
            let method = single_method(cfg)?;
            if cfg.train.is_empty() {
                return Err(Error::Config("no training files given".into()));
            }
            let train = cfg
                .train
                .iter()
                .map(|p| load_level_file(cfg, p))
                .collect::<Result<Vec<_>>>()?;
            let refs: Vec<&FidelityDataset> = train.iter().collect();
            let model = fit_method(method, &cfg.settings(first_seed(cfg)?)?, &refs)?;
            let pred = model.predict(&test.inputs)?;
            let path = cfg.out.join("predictions.csv");
            save_predictions_csv(&pred, &path)?;
            written.push(path);
            pred
        }
    };
    if pred.len() != test.len() {
        return Err(Error::Config(format!(
            "{} predictions for {} test rows",
            pred.len(),
            test.len()
        )));
    }
    let e = rmse(&pred, &test.targets)?;
    let r = r2(&pred, &test.targets)?;
    println!("rmse={e} r2={r} n={}", test.len());
    let text = format!(
        "rmse,r2,n\n{},{},{}\n",
        mfsurrogate::data::format_float(e),
        mfsurrogate::data::format_float(r),
        test.len()
    );
    written.push(write(&cfg.out.join("metrics.csv"), &text)?);
    Ok(written)
}

fn report(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    if cfg.results.is_empty() {
        return Err(Error::Config("no results ledgers given".into()));
    }
    let mut results = Vec::new();
    for p in &cfg.results {
        let f = fs::File::open(p).map_err(|e| Error::io(p, e))?;
        results.extend(parse_results_csv(f)?);
    }
    write_reports(&cfg.out, &results)
}
