//! `howe`: exact branching computations for the degree-1 weight modules of
//! `sl(2n)` restricted to the `(sl2, sln)` dual pair.
//!
//! Reports go to stdout, diagnostics to stderr. Exit code 0 means every
//! requested check passed, 1 means a verification failed, 2 means the
//! configuration was invalid.

mod config;
mod report;

use clap::Parser;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use howe_core::branching::{
    build_table, classify, sl2_on_hwv, verify_entry, BranchingReport, Sl2Gen, TableVariant,
};
use howe_core::dualpair::build_dual_pair;
use howe_core::singular::{
    hwv_bruteforce, hwv_closed_form, k_tuples, kappa, weight_space_dim, HwvLabel,
};
use howe_core::verify::{run_suite, VerifyConfig};
use howe_core::{Error, ModuleParams};

use config::{Cli, Command, Format, RunConfig};
use report::{
    hwv_md, series_md, table_md, verify_md, CheckJson, EntryJson, HwvJson, ParamsJson,
    SeriesJson, StringStepJson, TableJson, TermJson, VerifyJson,
};

fn main() {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    match dispatch(&cfg) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn emit<T: serde::Serialize>(cfg: &RunConfig, value: &T, md: impl FnOnce(&T) -> String) {
    match cfg.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("report serialization")
            );
        }
        Format::Md => print!("{}", md(value)),
    }
}

fn dispatch(cfg: &RunConfig) -> Result<bool, Error> {
    match cfg.command {
        Command::Verify => run_verify(cfg),
        Command::Hwv => run_hwv(cfg),
        Command::Branch => run_table(cfg, TableVariant::Plain),
        Command::Table => run_table(cfg, cfg.variant),
        Command::Series => run_series(cfg),
    }
}

fn run_verify(cfg: &RunConfig) -> Result<bool, Error> {
    let vcfg = VerifyConfig {
        samples: cfg.samples,
        box_bound: cfg.box_bound,
        depth: cfg.depth,
        b_min: cfg.b_min,
        b_max: cfg.b_max,
        c_max: cfg.c_max,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let checks = run_suite(&cfg.params, &vcfg, &mut rng)?;
    let out = VerifyJson {
        params: ParamsJson::new(&cfg.params),
        seed: cfg.seed,
        samples: cfg.samples,
        pass: checks.iter().all(|c| c.pass),
        checks: checks.iter().map(CheckJson::new).collect(),
    };
    emit(cfg, &out, verify_md);
    Ok(out.pass)
}

fn run_hwv(cfg: &RunConfig) -> Result<bool, Error> {
    let label = HwvLabel::new(cfg.b, cfg.c);
    let mut terms = Vec::new();
    for k in k_tuples(cfg.params.n(), label.c) {
        let coeff = kappa(&cfg.params, label, &k)?;
        if !coeff.is_zero() {
            terms.push(TermJson {
                k: k.0.clone(),
                coeff: coeff.to_string(),
            });
        }
    }
    let oracle_match = if cfg.oracle {
        let gens = build_dual_pair(&cfg.params)?;
        let closed = hwv_closed_form(&cfg.params, label)?;
        match hwv_bruteforce(&cfg.params, &gens, label) {
            Ok(brute) => Some(brute == closed),
            Err(e) => {
                eprintln!("kernel oracle failed: {e}");
                Some(false)
            }
        }
    } else {
        None
    };
    let out = HwvJson {
        params: ParamsJson::new(&cfg.params),
        b: label.b,
        c: label.c,
        dimension: weight_space_dim(cfg.params.n(), label.c),
        terms,
        oracle_match,
    };
    emit(cfg, &out, hwv_md);
    Ok(out.oracle_match.unwrap_or(true))
}

fn run_table(cfg: &RunConfig, variant: TableVariant) -> Result<bool, Error> {
    let report = build_table_parallel(cfg, variant)?;
    let out = TableJson::new(&cfg.params, &report);
    emit(cfg, &out, table_md);
    Ok(out.pass)
}

/// Rows are independent, so with `--jobs N` each worker builds its share of
/// single-row tables and the results are merged back in `b` order. The
/// output is identical for every worker count.
fn build_table_parallel(cfg: &RunConfig, variant: TableVariant) -> Result<BranchingReport, Error> {
    let bs: Vec<i64> = (cfg.b_min..=cfg.b_max).collect();
    let jobs = cfg.jobs.min(bs.len().max(1));
    if jobs <= 1 {
        let gens = build_dual_pair(&cfg.params)?;
        return build_table(
            &cfg.params,
            &gens,
            cfg.b_min,
            cfg.b_max,
            cfg.c_max,
            cfg.depth,
            variant,
        );
    }
    let params = &cfg.params;
    let mut slots: Vec<Option<Result<BranchingReport, Error>>> = bs.iter().map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..jobs {
            let bs = &bs;
            let handle = scope.spawn(move || {
                let mut rows = Vec::new();
                let gens = match build_dual_pair(params) {
                    Ok(g) => g,
                    Err(e) => {
                        for i in (w..bs.len()).step_by(jobs) {
                            rows.push((i, Err(e.clone())));
                        }
                        return rows;
                    }
                };
                for i in (w..bs.len()).step_by(jobs) {
                    let b = bs[i];
                    rows.push((
                        i,
                        build_table(params, &gens, b, b, cfg.c_max, cfg.depth, variant),
                    ));
                }
                rows
            });
            handles.push(handle);
        }
        for handle in handles {
            for (i, row) in handle.join().expect("table worker") {
                slots[i] = Some(row);
            }
        }
    });
    let mut entries = Vec::new();
    let mut one_to_one = true;
    for slot in slots {
        let row = slot.expect("every row assigned")?;
        one_to_one &= row.one_to_one;
        entries.extend(row.entries);
    }
    Ok(BranchingReport {
        variant,
        entries,
        one_to_one,
    })
}

fn run_series(cfg: &RunConfig) -> Result<bool, Error> {
    let params: &ModuleParams = &cfg.params;
    let gens = build_dual_pair(params)?;
    let entry = classify(params, cfg.b);
    let checks = verify_entry(params, &gens, &entry, cfg.depth.max(cfg.c_max))?;
    let mut string = Vec::new();
    for k in 0..=cfg.depth {
        let label = HwvLabel::new(cfg.b - k as i64, k);
        let (h, _) = sl2_on_hwv(params, Sl2Gen::H, label);
        let (x, _) = sl2_on_hwv(params, Sl2Gen::X, label);
        let (y, _) = sl2_on_hwv(params, Sl2Gen::Y, label);
        string.push(StringStepJson {
            k,
            b: label.b,
            c: label.c,
            h: h.to_string(),
            x_coeff: x.to_string(),
            y_coeff: y.to_string(),
        });
    }
    let report = howe_core::branching::EntryReport { entry, checks };
    let pass = report.pass();
    let out = SeriesJson {
        params: ParamsJson::new(params),
        entry: EntryJson::new(&report),
        string,
    };
    emit(cfg, &out, series_md);
    Ok(pass)
}
