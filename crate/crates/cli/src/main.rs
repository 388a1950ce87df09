//! `hecke`: compute, export and verify Kazhdan-Lusztig data from the
//! command line.
//!
//! Exit status: 0 on success, 1 when a checked property fails, 2 on usage
//! or parse errors.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_core::coxeter::{CoxeterSystem, CoxeterType, GenSet};
use hecke_core::hybrid::{
    chain_product, default_chain, factorize_chain, hybrid_element, parabolic_kl, parse_chain,
    restriction_coeffs, transition_matrix, HybridBasisSpec,
};
use hecke_core::matrix::PolyMatrix;
use hecke_core::verify::{run_suite, Suite};
use hecke_core::{Error, KlCache};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact Kazhdan-Lusztig and hybrid basis computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kazhdan-Lusztig matrix, or the column of a single element.
    Kl {
        #[command(flatten)]
        common: Common,
        /// Element as a comma-separated word, e.g. "1,2,1"; "e" is the identity.
        #[arg(long)]
        w: Option<String>,
    },
    /// Restriction coefficients h^J_{uv,w} for v in W_J.
    Restrict {
        #[command(flatten)]
        common: Common,
        #[arg(long = "J")]
        j: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        w: String,
    },
    /// A hybrid basis element, or the transition matrix from the I-hybrid
    /// basis to the J-hybrid basis.
    Hybrid {
        #[command(flatten)]
        common: Common,
        #[arg(long = "J")]
        j: String,
        #[arg(long = "I", default_value = "")]
        i: String,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = Orientation::Tc)]
        orientation: Orientation,
    },
    /// Factor the Kazhdan-Lusztig matrix along a chain of subsets.
    Factorize {
        #[command(flatten)]
        common: Common,
        /// Chain such as "∅<1<1,2"; defaults to {1} < {1,2} < ... .
        #[arg(long)]
        chain: Option<String>,
    },
    /// Parabolic Kazhdan-Lusztig polynomials for the sign representation.
    Parabolic {
        #[command(flatten)]
        common: Common,
        #[arg(long = "J")]
        j: String,
    },
    /// Run a suite of property checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Args)]
struct Common {
    /// Coxeter type: A3, B4, D4, I2(7), ...
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Directory for persisted Kazhdan-Lusztig columns.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for column computations.
    #[arg(long)]
    threads: Option<usize>,
    /// Permit groups beyond the default size bounds.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Orientation {
    Tc,
    Ct,
}

enum Failure {
    Usage(String),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Session {
    cache: KlCache,
    format: Format,
    output: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
}

impl Session {
    fn open(common: &Common) -> Result<Session, Failure> {
        if let Some(n) = common.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(format!("cannot configure threads: {e}")))?;
        }
        let kind: CoxeterType = common.group.parse()?;
        let sys = Arc::new(CoxeterSystem::with_options(kind, common.allow_large)?);
        let cache = KlCache::new(sys);
        if let Some(dir) = &common.cache_dir {
            cache.load(dir)?;
        }
        Ok(Session {
            cache,
            format: common.format,
            output: common.output.clone(),
            cache_dir: common.cache_dir.clone(),
        })
    }

    fn sys(&self) -> &CoxeterSystem {
        self.cache.system()
    }

    fn subset(&self, s: &str) -> Result<GenSet, Failure> {
        Ok(GenSet::parse(s, self.sys().rank())?)
    }

    fn emit(&self, text: String) -> Result<(), Failure> {
        if let Some(dir) = &self.cache_dir {
            self.cache.save(dir)?;
        }
        let io_err = |e: io::Error| Failure::Usage(format!("cannot write output: {e}"));
        match &self.output {
            Some(path) => fs::write(path, text).map_err(io_err),
            None => io::stdout().write_all(text.as_bytes()).map_err(io_err),
        }
    }

    fn emit_json(&self, v: &Value) -> Result<(), Failure> {
        let mut text = serde_json::to_string_pretty(v).expect("JSON values serialize");
        text.push('\n');
        self.emit(text)
    }

    fn emit_matrix(&self, m: &PolyMatrix, i: Option<GenSet>, j: Option<GenSet>) -> Result<(), Failure> {
        match self.format {
            Format::Json => self.emit_json(&m.to_json(self.sys(), i, j)),
            Format::Csv => self.emit(m.to_csv(self.sys())),
        }
    }

    fn emit_pairs(&self, header: &str, pairs: Vec<(String, String)>, json_doc: Value) -> Result<(), Failure> {
        match self.format {
            Format::Json => self.emit_json(&json_doc),
            Format::Csv => {
                let mut out = format!("{header}\n");
                for (a, b) in pairs {
                    out.push_str(&format!("\"{a}\",\"{b}\"\n"));
                }
                self.emit(out)
            }
        }
    }
}

fn cmd_kl(common: &Common, w: Option<&str>) -> Result<(), Failure> {
    let s = Session::open(common)?;
    let Some(w) = w else {
        return s.emit_matrix(&s.cache.kl_matrix(), None, None);
    };
    let sys = s.sys();
    let w = sys.parse_word(w)?;
    let order: Vec<String> = sys.elements().map(|x| sys.word_string(x)).collect();
    let column: Vec<String> = sys.elements().map(|x| s.cache.kl_poly(x, w).to_string()).collect();
    let doc = json!({
        "type": sys.kind().to_string(),
        "w": sys.word_string(w),
        "order": order,
        "column": column,
    });
    s.emit_pairs("x,h", order.into_iter().zip(column).collect(), doc)
}

fn cmd_restrict(common: &Common, j: &str, u: &str, w: &str) -> Result<(), Failure> {
    let s = Session::open(common)?;
    let sys = s.sys();
    let j = s.subset(j)?;
    let (u, w) = (sys.parse_word(u)?, sys.parse_word(w)?);
    let pairs: Vec<(String, String)> = restriction_coeffs(&s.cache, u, w, j)?
        .into_iter()
        .map(|(v, c)| (sys.word_string(v), c.to_string()))
        .collect();
    let doc = json!(pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>());
    s.emit_pairs("v,coefficient", pairs, doc)
}

fn cmd_hybrid(common: &Common, j: &str, i: &str, w: Option<&str>, orientation: Orientation) -> Result<(), Failure> {
    let s = Session::open(common)?;
    let sys = s.sys();
    let j = s.subset(j)?;
    match w {
        Some(w) => {
            let w = sys.parse_word(w)?;
            let spec = match orientation {
                Orientation::Tc => HybridBasisSpec::tc(j),
                Orientation::Ct => HybridBasisSpec::ct(j),
            };
            let h = hybrid_element(&s.cache, spec, w);
            let pairs: Vec<(String, String)> =
                h.terms().iter().map(|(&x, c)| (sys.word_string(x), c.to_string())).collect();
            let doc = json!({
                "type": sys.kind().to_string(),
                "J": j.to_one_based(),
                "w": sys.word_string(w),
                "orientation": if orientation == Orientation::Tc { "tc" } else { "ct" },
                "terms": pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            });
            s.emit_pairs("x,coefficient", pairs, doc)
        }
        None => {
            let i = s.subset(i)?;
            let m = transition_matrix(&s.cache, i, j)?;
            let m = match orientation {
                Orientation::Tc => m,
                // [CT^I_x] CT^J_w = [TC^I_{x^-1}] TC^J_{w^-1}
                Orientation::Ct => {
                    let mut out = PolyMatrix::new(m.rows().to_vec(), m.cols().to_vec());
                    for (r, c, p) in m.entries() {
                        out.set(sys.inverse(r), sys.inverse(c), p.clone());
                    }
                    out
                }
            };
            s.emit_matrix(&m, Some(i), Some(j))
        }
    }
}

fn cmd_factorize(common: &Common, chain: Option<&str>) -> Result<(), Failure> {
    let s = Session::open(common)?;
    let sys = s.sys();
    let chain = match chain {
        Some(c) => parse_chain(c, sys.rank())?,
        None => default_chain(sys.rank()),
    };
    let factors = factorize_chain(&s.cache, &chain)?;
    let equal = chain_product(&factors)? == s.cache.kl_matrix();
    let nonnegative = factors.iter().all(PolyMatrix::is_nonnegative_polynomial);
    match s.format {
        Format::Json => {
            let doc = json!({
                "type": sys.kind().to_string(),
                "chain": chain.iter().map(|g| g.to_one_based()).collect::<Vec<_>>(),
                "factors": factors
                    .iter()
                    .zip(chain.windows(2))
                    .map(|(m, p)| m.to_json(sys, Some(p[0]), Some(p[1])))
                    .collect::<Vec<_>>(),
                "product_equals_KL": equal,
                "nonnegative": nonnegative,
            });
            s.emit_json(&doc)?;
        }
        Format::Csv => {
            let mut out = String::from("factor,row,col,entry\n");
            for (k, m) in factors.iter().enumerate() {
                for (r, c, p) in m.entries() {
                    out.push_str(&format!(
                        "{},\"{}\",\"{}\",\"{p}\"\n",
                        k + 1,
                        sys.word_string(r),
                        sys.word_string(c)
                    ));
                }
            }
            s.emit(out)?;
            eprintln!("product_equals_KL: {equal}");
        }
    }
    if !equal {
        return Err(Failure::Property("product of factors differs from the Kazhdan-Lusztig matrix".into()));
    }
    if !nonnegative {
        return Err(Failure::Property("a factor has a negative coefficient".into()));
    }
    Ok(())
}

fn cmd_parabolic(common: &Common, j: &str) -> Result<(), Failure> {
    let s = Session::open(common)?;
    let j = s.subset(j)?;
    s.emit_matrix(&parabolic_kl(&s.cache, j)?, None, Some(j))
}

fn cmd_verify(common: &Common, suite: &str) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let s = Session::open(common)?;
    let report = run_suite(&s.cache, suite);
    match s.format {
        Format::Json => s.emit_json(&serde_json::to_value(&report).expect("report serializes"))?,
        Format::Csv => {
            let mut out = String::from("name,passed,detail\n");
            for c in &report.checks {
                out.push_str(&format!("{},{},\"{}\"\n", c.name, c.passed, c.detail.replace('"', "'")));
            }
            s.emit(out)?;
        }
    }
    if report.passed {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(Failure::Property(format!("failed checks: {}", names.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Kl { common, w } => cmd_kl(common, w.as_deref()),
        Command::Restrict { common, j, u, w } => cmd_restrict(common, j, u, w),
        Command::Hybrid {
            common,
            j,
            i,
            w,
            orientation,
        } => cmd_hybrid(common, j, i, w.as_deref(), *orientation),
        Command::Factorize { common, chain } => cmd_factorize(common, chain.as_deref()),
        Command::Parabolic { common, j } => cmd_parabolic(common, j),
        Command::Verify { common, suite } => cmd_verify(common, suite),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Property(msg)) => {
            eprintln!("hecke: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("hecke: error: {msg}");
            ExitCode::from(2)
        }
    }
}
