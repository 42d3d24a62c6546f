use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{OutFormat, Params};

#[derive(Debug, Parser)]
#[command(name = "groupoid-reps", version, about = "Exact checks for colored-permutation groupoids and G(l,k,d)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum)]
    pub out: Option<OutFormat>,
    /// Size cap (default 1000000, or 4096 for tensor spaces).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for `all` (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML file with any of the flags above and below; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EllD {
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Objects, hom-set sizes and composition laws of the groupoid.
    Objects(EllD),
    /// Every simple module L_p with its completeness checks.
    Simples(EllD),
    /// Φ from the wreath product group algebra to the groupoid algebra.
    VerifyIso(EllD),
    /// The involution model.
    Gelfand(EllD),
    /// Restriction to d-1 strands and induction from Young subgroups.
    Branching(EllD),
    /// The quotient groupoid for G(l,k,d) and its simple modules.
    Gkd {
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Tensor-space duality, or its cyclic-shift variant with --theorem95.
    SchurWeyl {
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Block sizes k_1,...,k_l.
        #[arg(long = "k", alias = "kvec", value_delimiter = ',')]
        kvec: Option<Vec<usize>>,
        #[arg(long)]
        theorem95: bool,
        /// The k of G(l,k,d) for --theorem95.
        #[arg(long)]
        kk: Option<usize>,
        /// Block size m for --theorem95.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Rook monoid relations and surjectivity.
    RookCheck {
        #[arg(long)]
        d: Option<usize>,
    },
    /// The default grid of every check.
    All,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Objects(_) => "objects",
            Command::Simples(_) => "simples",
            Command::VerifyIso(_) => "verify-iso",
            Command::Gelfand(_) => "gelfand",
            Command::Branching(_) => "branching",
            Command::Gkd { .. } => "gkd",
            Command::SchurWeyl { .. } => "schur-weyl",
            Command::RookCheck { .. } => "rook-check",
            Command::All => "all",
        }
    }

    /// The subcommand's own flags.
    pub fn params(&self) -> Params {
        let ed = |a: &EllD| Params { ell: a.ell, d: a.d, ..Default::default() };
        match self {
            Command::Objects(a)
            | Command::Simples(a)
            | Command::VerifyIso(a)
            | Command::Gelfand(a)
            | Command::Branching(a) => ed(a),
            Command::Gkd { ell, k, d } => Params { ell: *ell, k: *k, d: *d, ..Default::default() },
            Command::SchurWeyl { ell, d, kvec, theorem95, kk, m } => Params {
                ell: *ell,
                d: *d,
                kvec: kvec.clone(),
                theorem95: theorem95.then_some(true),
                kk: *kk,
                m: *m,
                ..Default::default()
            },
            Command::RookCheck { d } => Params { d: *d, ..Default::default() },
            Command::All => Params::default(),
        }
    }
}

impl Global {
    pub fn params(&self) -> Params {
        Params { out: self.out, cap: self.cap, seed: self.seed, jobs: self.jobs, ..Default::default() }
    }
}
