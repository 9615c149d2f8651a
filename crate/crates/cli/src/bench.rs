use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, ValueEnum};
use twovc_core::bounds::Q;
use twovc_core::instances::{Instance, InstanceSpec};
use twovc_core::oracle::{l_d2_exact, opt_exact_with_limit, DEFAULT_OPT_LIMIT};
use twovc_core::solve::solve;

use crate::{emit, input_error, CmdResult, Common, Fail};

pub const HEADER: &str =
    "instance,n,m,output,phi_bound,phi_exact,garg_bound,new_bound,combined,ratio_combined,opt,ratio_opt,l_d2,ms";

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    Tight,
    Vv,
    Fig1,
    Fig8,
    Random,
}

#[derive(Args)]
pub struct BenchArgs {
    family: Family,
    /// Inclusive parameter range `A..B` for tight and vv.
    #[arg(long, default_value = "1..5")]
    k: String,
    /// Inclusive seed range `A..B` for random instances.
    #[arg(long, default_value = "1..20")]
    seeds: String,
    /// Vertex count for random instances.
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Chords added to random instances.
    #[arg(long, default_value_t = 2)]
    extra: usize,
    /// Ignore shipped reference decompositions.
    #[arg(long)]
    scratch: bool,
    /// Largest vertex count for the OPT and L_D2 oracles.
    #[arg(long, default_value_t = DEFAULT_OPT_LIMIT)]
    opt_limit: usize,
    #[command(flatten)]
    common: Common,
}

fn range(s: &str) -> Result<std::ops::RangeInclusive<u64>, Fail> {
    let bad = || input_error(format!("bad range `{s}`, expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    Ok(a.parse().map_err(|_| bad())?..=b.parse().map_err(|_| bad())?)
}

fn specs(args: &BenchArgs) -> Result<Vec<InstanceSpec>, Fail> {
    Ok(match args.family {
        Family::Tight => range(&args.k)?.map(|k| InstanceSpec::Tight(k as usize)).collect(),
        Family::Vv => range(&args.k)?.map(|k| InstanceSpec::Vv(k as usize)).collect(),
        Family::Fig1 => vec![InstanceSpec::Fig1],
        Family::Fig8 => vec![InstanceSpec::Fig8],
        Family::Random => range(&args.seeds)?
            .map(|seed| InstanceSpec::Random {
                n: args.n,
                extra: args.extra,
                seed,
            })
            .collect(),
    })
}

fn ratio(a: usize, b: usize) -> String {
    Q::new(a as i128, b as i128).to_string()
}

pub fn row(inst: &Instance, args: &BenchArgs) -> Result<String, Fail> {
    let g = &inst.graph;
    let mut opts = args.common.pipeline();
    if !args.scratch {
        opts.initial = inst.reference.clone();
    }
    if opts.initial.is_none() && g.n() > opts.exhaustive_limit {
        opts.backend = twovc_core::Backend::Heuristic;
    }
    let start = Instant::now();
    let r = solve(g, &opts)?;
    let ms = start.elapsed().as_millis();
    let opt = if inst.hamiltonian.is_some() {
        Some(g.n())
    } else if g.n() <= args.opt_limit {
        Some(opt_exact_with_limit(g, args.opt_limit)?.value)
    } else {
        None
    };
    let l_d2 = if inst.two_factor.is_some() {
        Some(g.n())
    } else if g.n() <= args.opt_limit {
        Some(l_d2_exact(g, args.opt_limit)?.0)
    } else {
        None
    };
    let b = &r.bounds;
    let show = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
    Ok(format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        inst.name,
        g.n(),
        g.m(),
        r.edge_count,
        b.phi_bound,
        b.phi_exact,
        b.garg_bound,
        b.new_bound,
        b.combined,
        ratio(r.edge_count, b.combined),
        show(opt),
        opt.map(|o| ratio(r.edge_count, o)).unwrap_or_default(),
        show(l_d2),
        ms
    ))
}

pub fn run(args: &BenchArgs) -> CmdResult {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    for spec in specs(args)? {
        let inst = spec.generate()?;
        writeln!(out, "{}", row(&inst, args)?).unwrap();
    }
    emit(args.common.out.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
