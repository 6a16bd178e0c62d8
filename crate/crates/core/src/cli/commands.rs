use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use log::{debug, error, info};

use super::config::{ConfigFile, OutFormat, Overrides, RunConfig};
use super::output;
use super::spec::GroupSpec;
use crate::certificates::{
    crosscheck_metabelian, hvw_stabilization_with, rate_bound, verify_witness, witness_search, CrosscheckStatus,
    DEFAULT_CLOSURE_BUDGET,
};
use crate::error::{Error, Result};
use crate::freecalc::verify_depth_bound;
use crate::groups::{make_realization, GeneratorWord, Realization};
use crate::growth::{enumerate_ball_with, growth_table, omega_bounds_with_digits};
use crate::topology::{approximation_experiment, balls_isomorphic, convergence_radius, extract_marked_ball};

#[derive(Debug, Parser)]
#[command(name = "growthlab", version, about = "Growth functions and growth-rate certificates of finitely generated groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Maximum number of stored elements during enumeration.
    #[arg(long, env = "GROWTHLAB_CAP")]
    pub cap: Option<usize>,
    /// Worker threads for ball enumeration.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Significant digits for logarithms and roots (at least 12).
    #[arg(long)]
    pub precision: Option<u32>,
    /// Output format.
    #[arg(long = "out")]
    pub out: Option<OutFormat>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// TOML file with defaults for the keys above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig> {
        let file = self.config.as_deref().map(ConfigFile::load).transpose()?;
        RunConfig::resolve(
            Overrides {
                cap: self.cap,
                workers: self.workers,
                precision: self.precision,
                format: self.out,
                output: self.output.clone(),
            },
            file,
        )
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sphere and ball sizes with upper bounds on the growth rate.
    Growth {
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Summary of growth-rate bounds at a given radius.
    Omega {
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Checks injectivity of t(α) = w^{α1} v … w^{αp} v up to p_max.
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        p_max: usize,
        /// Compare the certified lower bound with a ball of this radius.
        #[arg(long)]
        check_radius: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Cheapest injective witness pair among reduced words.
    WitnessSearch {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_word_len: usize,
        #[arg(long)]
        p_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Finite generation of the subgroup generated by the conjugates of w by powers of v.
    Hvw {
        #[arg(long)]
        group: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        l_max: usize,
        /// Element budget per window for the closure search.
        #[arg(long, default_value_t = DEFAULT_CLOSURE_BUDGET)]
        budget: usize,
        /// Skip the exact lamp-vector procedure.
        #[arg(long)]
        heuristic: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Whether two marked balls of the same radius are isomorphic.
    BallIso {
        #[arg(long)]
        group_a: String,
        #[arg(long)]
        group_b: String,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Largest radius at which two marked groups have isomorphic balls.
    Converge {
        #[arg(long)]
        group_a: String,
        #[arg(long)]
        group_b: String,
        #[arg(long)]
        max_radius: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Growth of a sequence of marked groups against a limit group.
    Lemma71 {
        #[arg(long)]
        limit: String,
        /// Sequence members, in order (repeat the flag).
        #[arg(long = "group", required = true)]
        groups: Vec<String>,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Weight sets of iterated commutators and their depths against f(n).
    Commutators {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Uniform growth-rate bound for nilpotency degree d.
    PaperBound {
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Compares a metabelian group against the bound 2^{1/48}.
    CrosscheckT24 {
        #[arg(long)]
        group: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 2)]
        max_word_len: usize,
        #[arg(long)]
        p_max: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn realize(text: &str) -> Result<Realization> {
    make_realization(&text.parse::<GroupSpec>()?)
}

fn word(r: &Realization, text: &str) -> Result<GeneratorWord> {
    GeneratorWord::parse(text, r.names())
}

fn emit(cfg: &RunConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn format_of(cfg: &RunConfig, default: OutFormat, allowed: &[OutFormat]) -> Result<OutFormat> {
    let f = cfg.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Error::InvalidParameters(format!("output format {f:?} is not available for this command")))
    }
}

/// Runs a command and returns the process exit code.
pub fn dispatch(cmd: Command) -> i32 {
    match run(cmd) {
        Ok(code) => code,
        Err(e) => {
            debug!("{e:?}");
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(cmd: Command) -> Result<i32> {
    use OutFormat::{Csv, Dot, Json};
    match cmd {
        Command::Growth { group, radius, common } => {
            let cfg = common.resolve()?;
            let fmt = format_of(&cfg, Csv, &[Csv, Json])?;
            let r = realize(&group)?;
            let table = growth_table(&enumerate_ball_with(&r, radius, cfg.enumeration())?);
            let est = if radius >= 1 { Some(omega_bounds_with_digits(&table, cfg.precision)?) } else { None };
            let text = match fmt {
                Csv => output::growth_csv(&table, est.as_ref()),
                _ => output::to_json_text(&output::growth_json(&table, est.as_ref())),
            };
            emit(&cfg, &text)?;
            Ok(0)
        }
        Command::Omega { group, radius, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            let r = realize(&group)?;
            let table = growth_table(&enumerate_ball_with(&r, radius, cfg.enumeration())?);
            let est = omega_bounds_with_digits(&table, cfg.precision)?;
            let v = serde_json::json!({
                "group": group,
                "radius": radius,
                "gamma": output::number(&table.gamma(radius).to_string()),
                "naive": output::number(&output::decimal(est.naive(radius))),
                "upper": output::number(&output::decimal(est.upper(radius))),
                "entropy_upper": output::number(&output::decimal(&est.entropy_upper)),
            });
            emit(&cfg, &output::to_json_text(&v))?;
            Ok(0)
        }
        Command::Witness { group, v, w, p_max, check_radius, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            let r = realize(&group)?;
            let mut cert = verify_witness(&r, &word(&r, &v)?, &word(&r, &w)?, p_max)?;
            let mut code = if cert.injective { 0 } else { 3 };
            if let (Some(radius), true) = (check_radius, cert.injective) {
                let table = growth_table(&enumerate_ball_with(&r, radius, cfg.enumeration())?);
                let bad = cert.check_against(&table);
                if !bad.is_empty() {
                    error!("certified lower bound exceeds gamma at radii {bad:?}");
                    code = 3;
                }
            }
            emit(&cfg, &output::to_json_text(&cert.to_json(r.names())))?;
            Ok(code)
        }
        Command::WitnessSearch { group, max_word_len, p_max, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            let r = realize(&group)?;
            let found = witness_search(&r, max_word_len, p_max)?;
            if found.is_none() {
                info!("no witness with words of length <= {max_word_len}");
            }
            let v = found.map(|c| c.to_json(r.names())).unwrap_or(serde_json::Value::Null);
            emit(&cfg, &output::to_json_text(&v))?;
            Ok(0)
        }
        Command::Hvw { group, v, w, l_max, budget, heuristic, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            let r = realize(&group)?;
            let rep = hvw_stabilization_with(&r, &word(&r, &v)?, &word(&r, &w)?, l_max, budget, heuristic)?;
            emit(&cfg, &output::to_json_text(&rep.to_json(r.names())))?;
            Ok(0)
        }
        Command::BallIso { group_a, group_b, radius, common } => {
            let cfg = common.resolve()?;
            let fmt = format_of(&cfg, Json, &[Json, Dot])?;
            let (ra, rb) = (realize(&group_a)?, realize(&group_b)?);
            let a = extract_marked_ball(&ra, radius, cfg.enumeration())?;
            let b = extract_marked_ball(&rb, radius, cfg.enumeration())?;
            let iso = balls_isomorphic(&a, &b)?;
            let text = match fmt {
                Dot => a.to_dot(&group_a, ra.names()) + &b.to_dot(&group_b, rb.names()),
                _ => output::to_json_text(&serde_json::json!({
                    "group_a": group_a,
                    "group_b": group_b,
                    "radius": radius,
                    "vertices_a": a.vertex_count(),
                    "vertices_b": b.vertex_count(),
                    "edges_a": a.edge_count(),
                    "edges_b": b.edge_count(),
                    "isomorphic": iso,
                })),
            };
            emit(&cfg, &text)?;
            Ok(0)
        }
        Command::Converge { group_a, group_b, max_radius, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            let n = convergence_radius(&group_a.parse()?, &group_b.parse()?, max_radius, cfg.enumeration())?;
            let v = serde_json::json!({
                "group_a": group_a,
                "group_b": group_b,
                "max_radius": max_radius,
                "conv_radius": n,
            });
            emit(&cfg, &output::to_json_text(&v))?;
            Ok(0)
        }
        Command::Lemma71 { limit, groups, m, common } => {
            let cfg = common.resolve()?;
            let fmt = format_of(&cfg, Csv, &[Csv, Json])?;
            let seq = groups.iter().map(|g| g.parse()).collect::<Result<Vec<GroupSpec>>>()?;
            let table = approximation_experiment(&limit.parse()?, &seq, m, cfg.enumeration())?;
            let bad = table.contradictions();
            let text = match fmt {
                Csv => output::approximation_csv(&table),
                _ => output::to_json_text(&serde_json::to_value(&table).expect("serializable")),
            };
            emit(&cfg, &text)?;
            if !bad.is_empty() {
                error!("rows {bad:?} have matching balls but different gamma");
                return Ok(3);
            }
            Ok(0)
        }
        Command::Commutators { k, n, common } => {
            let cfg = common.resolve()?;
            let fmt = format_of(&cfg, Csv, &[Csv, Json])?;
            let rep = verify_depth_bound(k, n)?;
            let text = match fmt {
                Csv => output::commutators_csv(&rep),
                _ => output::to_json_text(&serde_json::to_value(&rep).expect("serializable")),
            };
            emit(&cfg, &text)?;
            Ok(if rep.all_bounds_hold { 0 } else { 3 })
        }
        Command::PaperBound { d, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            emit(&cfg, &output::to_json_text(&rate_bound(d)?.to_json()))?;
            Ok(0)
        }
        Command::CrosscheckT24 { group, radius, max_word_len, p_max, common } => {
            let cfg = common.resolve()?;
            format_of(&cfg, Json, &[Json])?;
            let r = realize(&group)?;
            let rep = crosscheck_metabelian(&r, radius, max_word_len, p_max, cfg.enumeration())?;
            emit(&cfg, &output::to_json_text(&rep.to_json(r.names())))?;
            Ok(if rep.status == CrosscheckStatus::Fail { 3 } else { 0 })
        }
    }
}
