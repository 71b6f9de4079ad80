//! Command-line front end: configuration, the subcommands, and report
//! rendering.

pub mod commands;
pub mod config;
pub mod osp12;
pub mod output;
pub mod setup;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use modsuper::error::Result;

use config::{ChiSpec, Format, Overrides, RunConfig, CACHE_ENV};
use output::Report;

#[derive(Parser, Debug)]
#[command(name = "modsuper", version, about = "Exact checks on restricted Lie superalgebras and their reduced enveloping algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Build the algebra and check its structure, p-map and form.
    Algebra,
    /// Z-grading from a nilpotent χ, its properties and the subalgebras m, m′.
    Grading,
    /// Baby Verma modules, their simple factors, and the divisibility and freeness audits.
    Kw,
    /// The osp(1|2) tables in the regular semisimple, regular nilpotent and restricted cases.
    Osp12,
    /// Levi reduction of χ and the simple-module bijection with U_χ(l).
    Morita,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Opts {
    /// Odd prime characteristic
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Field degree: the field is F_{p^k}.
    #[arg(long, global = true)]
    pub k: Option<u32>,
    /// gl, sl, osp, ospB, ospC, ospD or osp12.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Even and odd dimensions of the defining superspace
    #[arg(long, global = true, num_args = 2, value_names = ["M", "N"])]
    pub dims: Option<Vec<usize>>,
    /// zero | nilregular | ssregular | explicit:LABEL=V;… (V an integer or t) | partitions:a,b/c,d
    #[arg(long, global = true)]
    pub chi: Option<String>,
    /// Seed for every randomized search
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest module dimension built
    #[arg(long = "dim-bound", global = true)]
    pub dim_bound: Option<usize>,
    /// Directory for the PBW product cache.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// json or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Flat key = value file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Opts {
    pub fn overrides(&self) -> Result<Overrides> {
        Ok(Overrides {
            p: self.p,
            k: self.k,
            family: self.family.clone(),
            dims: self.dims.as_ref().map(|d| (d[0], d[1])),
            chi: self.chi.as_deref().map(str::parse::<ChiSpec>).transpose()?,
            seed: self.seed,
            dim_bound: self.dim_bound,
            cache_dir: self.cache.clone(),
            format: self.format.as_deref().map(str::parse::<Format>).transpose()?,
        })
    }

    /// Resolves the configuration, reading the cache directory from the
    /// environment when set.
    pub fn resolve(&self) -> Result<RunConfig> {
        let file = self.config.as_deref().map(Overrides::from_file).transpose()?;
        let env = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
        RunConfig::resolve(file.as_ref(), &self.overrides()?, env)
    }
}

pub fn run(command: Command, cfg: &RunConfig) -> Result<Report> {
    match command {
        Command::Algebra => commands::cmd_algebra(cfg),
        Command::Grading => commands::cmd_grading(cfg),
        Command::Kw => commands::cmd_kw(cfg),
        Command::Osp12 => commands::cmd_osp12(cfg),
        Command::Morita => commands::cmd_morita(cfg),
    }
}
