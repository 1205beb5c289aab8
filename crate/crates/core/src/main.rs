use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use modmult::dims::{dim, FormKind};
use modmult::group::{realize_with_limit, DEFAULT_MAX_LEVEL};
use modmult::groupspec::{parse_group_spec, parse_pair_spec, parse_weight_range};
use modmult::harness::{run_verify, RepSelection, VerificationConfig};
use modmult::multiplicity::MultiplicityEngine;
use modmult::pair::QuotientPair;
use modmult::signature::signature_of;
use modmult::{characters::load_character_table, Error, Result};

#[derive(Parser)]
#[command(name = "modmult", version, about = "Multiplicities of representations in spaces of modular forms")]
struct Cli {
    /// Largest level that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "M")]
    M,
    #[value(name = "S")]
    S,
}

impl From<Kind> for FormKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::M => FormKind::M,
            Kind::S => FormKind::S,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Signature of a group: genus, elliptic points, cusps, index, c.
    Signature {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Dimensions of M_k or S_k over a weight range.
    Dims {
        #[arg(long)]
        group: String,
        /// Inclusive range `a..b`.
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, ignore_case = true)]
        kind: Kind,
        #[arg(long, value_enum, default_value = "csv")]
        format: CsvOrJson,
    },
    /// Multiplicity of every irreducible (or Galois orbit) over a weight range.
    Mult {
        /// `<group>/<normal subgroup>`, e.g. `gamma0:5/gamma1:5`.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, ignore_case = true)]
        kind: Kind,
        /// Character table file for non-abelian quotients.
        #[arg(long)]
        table: Option<PathBuf>,
        /// Report Galois orbits one character at a time.
        #[arg(long)]
        split: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: CsvOrJson,
    },
    /// Check slopes, parity, the lower bound and the decomposition identity up to `--kmax`.
    Verify {
        #[arg(long)]
        pair: String,
        #[arg(long)]
        kmax: i64,
        #[arg(long, default_value_t = 24)]
        offset_bound: u64,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        split: bool,
        /// Restrict to these characters or orbit labels (repeatable).
        #[arg(long = "rep")]
        reps: Vec<String>,
        /// Only one kind; both by default.
        #[arg(long, value_enum, ignore_case = true)]
        kind: Option<Kind>,
        #[arg(long, value_enum, default_value = "json")]
        format: TextOrJson,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Serialize)]
struct DimRow {
    k: i64,
    dim: u64,
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn run(cli: Cli) -> Result<bool> {
    let max_level = cli.max_level;
    match cli.command {
        Command::Signature { group, format } => {
            let spec = parse_group_spec(&group)?;
            let sig = signature_of(&realize_with_limit(&spec, max_level)?)?;
            let rec = sig.record()?;
            match format {
                TextOrJson::Json => print!("{}", to_json(&rec)?),
                TextOrJson::Text => {
                    println!("group    {spec}");
                    println!("genus    {}", rec.genus);
                    println!("nu2      {}", rec.nu2);
                    println!("nu3      {}", rec.nu3);
                    println!("cusps    {}", rec.cusps.len());
                    for (i, c) in rec.cusps.iter().enumerate() {
                        let w = c.width.map_or("-".to_string(), |w| w.to_string());
                        let r = if c.regular { "regular" } else { "irregular" };
                        println!("  cusp {i}: width {w} {r}");
                    }
                    let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
                    println!("mu_proj  {}", opt(rec.mu_proj));
                    println!("mu_sl    {}", opt(rec.mu_sl));
                    println!("minus_I  {}", rec.minus_i);
                    println!("c        {}", rec.c);
                    print!("{}", serde_json::to_string(&rec)? + "\n");
                }
            }
            Ok(true)
        }
        Command::Dims { group, weights, kind, format } => {
            let spec = parse_group_spec(&group)?;
            let sig = signature_of(&realize_with_limit(&spec, max_level)?)?;
            let rows = parse_weight_range(&weights)?
                .into_iter()
                .map(|k| Ok(DimRow { k, dim: dim(&sig, k, kind.into())? }))
                .collect::<Result<Vec<_>>>()?;
            match format {
                CsvOrJson::Json => print!("{}", to_json(&rows)?),
                CsvOrJson::Csv => {
                    println!("k,dim");
                    for r in rows {
                        println!("{},{}", r.k, r.dim);
                    }
                }
            }
            Ok(true)
        }
        Command::Mult { pair, weights, kind, table, split, format } => {
            let (g, g1) = parse_pair_spec(&pair)?;
            let pair = QuotientPair::with_limit(g, g1, max_level)?;
            let table = match table {
                Some(p) => load_character_table(p, pair.group())?,
                None => pair.builtin_table()?,
            };
            let engine = MultiplicityEngine::new(pair, table)?;
            let series = engine.all_series(kind.into(), &parse_weight_range(&weights)?, split)?;
            match format {
                CsvOrJson::Json => print!("{}", to_json(&series)?),
                CsvOrJson::Csv => {
                    println!("rep,k,multiplicity");
                    for s in &series {
                        for (k, m) in &s.entries {
                            println!("{},{},{}", s.rep, k, m);
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { pair, kmax, offset_bound, table, split, reps, kind, format, output, threads } => {
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
            let (g, g1) = parse_pair_spec(&pair)?;
            let mut cfg = VerificationConfig::new(g, g1, kmax);
            cfg.offset_bound = offset_bound;
            cfg.table = table;
            cfg.split = split;
            cfg.max_level = max_level;
            if !reps.is_empty() {
                cfg.reps = RepSelection::Named(reps);
            }
            if let Some(k) = kind {
                cfg.kinds = vec![k.into()];
            }
            let report = run_verify(&cfg)?;
            let text = match format {
                TextOrJson::Json => to_json(&report)?,
                TextOrJson::Text => report.summary(),
            };
            match output {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<bool> {
        run(Cli::try_parse_from(std::iter::once("modmult").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn subcommands() {
        assert!(exec(&["signature", "--group", "gamma0:11", "--format", "json"]).unwrap());
        assert!(exec(&["dims", "--group", "gamma1:5", "--weights", "2..6", "--kind", "S"]).unwrap());
        assert!(exec(&["mult", "--pair", "gamma0:5/gamma1:5", "--weights", "2..8", "--kind", "m", "--split"]).unwrap());
        let out = tempfile::NamedTempFile::new().unwrap();
        let path = out.path().to_str().unwrap();
        assert!(exec(&["verify", "--pair", "SL2Z/gamma:2", "--kmax", "60", "--output", path]).unwrap());
        let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(report["pair"]["c"], "1/12");
        assert_eq!(report["pass"], true);
    }

    #[test]
    fn errors() {
        assert!(matches!(exec(&["dims", "--group", "gamma0:5", "--weights", "1..4", "--kind", "M"]), Err(Error::WeightOneUnsupported)));
        assert!(matches!(exec(&["verify", "--pair", "gamma0:5/gamma1:5", "--kmax", "10"]), Err(Error::WindowTooSmall { .. })));
        assert!(matches!(exec(&["signature", "--group", "gamma0:31"]), Err(Error::LevelTooLarge { .. })));
        assert!(Cli::try_parse_from(["modmult", "dims", "--group", "SL2Z", "--weights", "2..4", "--kind", "X"]).is_err());
    }
}
