use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mtk_core::automorphism::{affine_to_json, pamap_from_json, pamap_to_json, upsilon_decompose, PAMap};
use mtk_core::definable::{count_points_mod_p, definably_isomorphic, dim, k0_class, DefinableSet};
use mtk_core::formula::{parse, Formula};
use mtk_core::groups::DEFAULT_CAP;
use mtk_core::k1::{derive_flags, k1_algebraic, k1_expression, omega_nn_ab, ModuleKind, RingDescriptor, TheoryFlags};
use mtk_core::verify::{run_suite, SuiteOptions, SUITES};

mod catalogue;

#[derive(Parser)]
#[command(name = "mtk", version, about = "K_0 and K_1 computations for free modules")]
struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Largest group the enumerator may build.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class of a definable set in Z[X].
    K0 { file: PathBuf },
    /// Whether two definable sets are definably isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Dimension of a definable set.
    Dim { file: PathBuf },
    /// Points of the reduction modulo a prime.
    Count {
        #[arg(long)]
        prime: u64,
        file: PathBuf,
    },
    /// Piecewise affine bijections read from JSON.
    Aut {
        #[arg(value_enum)]
        action: AutAction,
        file: PathBuf,
    },
    /// K_1 of a free module over the ring.
    K1 {
        #[command(flatten)]
        ring: RingArgs,
        /// `regular`, `free:<rank>` or `infinite`.
        #[arg(long, default_value = "infinite")]
        module: String,
    },
    /// Abelianized rank-n truncation.
    OmegaAb {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        n: usize,
    },
    /// Algebraic K_1 of the ring.
    K1Alg {
        #[arg(long)]
        ring: String,
    },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        /// Number of random cases, where the suite draws them.
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Abelianization of a catalogue group.
    Abelianize {
        #[arg(long)]
        group: String,
    },
}

#[derive(clap::Args)]
struct RingArgs {
    /// `fq:<q>`, `z`, `inf[:<name>]`, `poly-char0[:<base>]`, `ed:<units>:unit-sum|no-unit-sum`, `pid:<units>`.
    #[arg(long)]
    ring: String,
    /// The theory is closed under products.
    #[arg(long, conflicts_with = "cofinal_even")]
    t_closed: bool,
    /// Not closed under products; whether even-index subgroups are cofinal.
    #[arg(long)]
    cofinal_even: Option<bool>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutAction {
    Validate,
    Support,
    Dim,
    Decompose,
}

type Outcome = Result<(String, Value, bool), String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_formula(path: &Path) -> Result<(Formula, DefinableSet), String> {
    let text = read(path)?;
    let f = parse(&text).map_err(|e| format!("{}:{e}", path.display()))?;
    let set = f.elaborate().map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((f, set))
}

fn load_pamap(path: &Path) -> Result<PAMap, String> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    pamap_from_json(&v).map_err(|e| format!("{}: {e}", path.display()))
}

fn dim_text(d: Option<usize>) -> (String, Value) {
    match d {
        Some(k) => (k.to_string(), json!(k)),
        None => ("-inf".into(), json!(null)),
    }
}

impl RingArgs {
    fn resolve(&self) -> Result<(RingDescriptor, TheoryFlags), String> {
        let ring: RingDescriptor = self.ring.parse().map_err(|e| format!("{e}"))?;
        let flags = if self.t_closed {
            TheoryFlags::closed()
        } else if let Some(even) = self.cofinal_even {
            TheoryFlags::not_closed(even)
        } else {
            derive_flags(&ring, ModuleKind::InfiniteFree)
                .map_err(|e| format!("{e}; pass --t-closed or --cofinal-even"))?
        };
        Ok((ring, flags))
    }
}

fn parse_module(s: &str) -> Result<ModuleKind, String> {
    match s.split_once(':') {
        None if s == "regular" => Ok(ModuleKind::Regular),
        None if s == "infinite" => Ok(ModuleKind::InfiniteFree),
        Some(("free", k)) => k.parse().map(ModuleKind::FreeRank).map_err(|_| format!("bad rank `{k}`")),
        _ => Err(format!("unknown module `{s}`")),
    }
}

fn aut(action: AutAction, f: &PAMap) -> Outcome {
    match action {
        AutAction::Validate => {
            let v = f.validate();
            let text = if v.passed { "valid".to_string() } else { format!("invalid\n{}", v.violations.join("\n")) };
            Ok((text, json!({"valid": v.passed, "violations": v.violations}), v.passed))
        }
        AutAction::Support => {
            let s = f.support();
            let blocks: Vec<String> = s.blocks().iter().map(ToString::to_string).collect();
            let text = if blocks.is_empty() { "empty".to_string() } else { blocks.join("\n") };
            Ok((text, json!({"blocks": blocks, "class": k0_class(&s)}), true))
        }
        AutAction::Dim => {
            let (t, v) = dim_text(f.dim_aut());
            Ok((t, json!({"dim": v}), true))
        }
        AutAction::Decompose => {
            let (g, h) = upsilon_decompose(f).map_err(|e| e.to_string())?;
            let (hd, hdv) = dim_text(h.dim_aut());
            let text = format!("affine part: {g}\nremainder (dim {hd}):\n{h}");
            let v = json!({
                "affine": affine_to_json(&g),
                "remainder": pamap_to_json(&h),
                "remainder_dim": hdv,
            });
            Ok((text, v, true))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::K0 { file } => {
            let (_, set) = load_formula(file)?;
            let c = k0_class(&set);
            Ok((c.to_string(), json!({"coeffs": c.coeffs(), "pretty": c.to_string()}), true))
        }
        Command::Iso { first, second } => {
            let (_, a) = load_formula(first)?;
            let (_, b) = load_formula(second)?;
            let iso = definably_isomorphic(&a, &b);
            let text = if iso { "isomorphic" } else { "not-isomorphic" };
            Ok((text.into(), json!({"isomorphic": iso}), true))
        }
        Command::Dim { file } => {
            let (_, set) = load_formula(file)?;
            let (t, v) = dim_text(dim(&set));
            Ok((t, json!({"dim": v}), true))
        }
        Command::Count { prime, file } => {
            let (f, _) = load_formula(file)?;
            let expr = f.to_set_expr().map_err(|e| e.to_string())?;
            let c = count_points_mod_p(&expr, *prime).map_err(|e| e.to_string())?;
            let text = format!(
                "{} points over F_{} (good prime: {})",
                c.count,
                c.prime,
                if c.good_prime { "yes" } else { "no" }
            );
            Ok((text, json!(c), true))
        }
        Command::Aut { action, file } => aut(*action, &load_pamap(file)?),
        Command::K1 { ring, module } => {
            let (r, flags) = ring.resolve()?;
            let e = k1_expression(&r, parse_module(module)?, flags).map_err(|e| e.to_string())?;
            let n = e.normalize();
            let flat = n.flatten().normalize();
            let text = format!("{e}\n  = {n}\n  = {flat}");
            let mut v = flat.to_json();
            v["pretty"] = json!(n.to_string());
            Ok((text, v, true))
        }
        Command::OmegaAb { ring, n } => {
            let (r, flags) = ring.resolve()?;
            let g = omega_nn_ab(&r, flags, *n).map_err(|e| e.to_string())?;
            let mut v = g.to_json();
            v["pretty"] = json!(g.to_string());
            Ok((g.to_string(), v, true))
        }
        Command::K1Alg { ring } => {
            let r: RingDescriptor = ring.parse().map_err(|e| format!("{e}"))?;
            let g = k1_algebraic(&r).map_err(|e| e.to_string())?;
            let mut v = g.to_json();
            v["pretty"] = json!(g.to_string());
            Ok((g.to_string(), v, true))
        }
        Command::Verify { suite, cases } => {
            let opts = SuiteOptions { seed: cli.seed, cap: cli.cap, cases: *cases };
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut ok = true;
            for name in names {
                let r = run_suite(name, &opts).map_err(|e| format!("{e}; known suites: {}", SUITES.join(", ")))?;
                ok &= r.all_passed();
                text.push_str(&r.to_string());
                reports.push(r);
            }
            let v = if reports.len() == 1 { json!(reports[0]) } else { json!(reports) };
            Ok((text.trim_end().to_string(), v, ok))
        }
        Command::Abelianize { group } => {
            let g = catalogue::build(group, cli.cap)?;
            let ab = g.abelianization();
            let text = format!("{} of order {}: abelianization {ab}", g.name(), g.order());
            Ok((text, json!({"group": g.name(), "order": g.order(), "invariants": ab.factors()}), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, value, ok)) => {
            let out = if cli.json { serde_json::to_string_pretty(&value).expect("serializable") } else { text };
            // a closed pipe is not an error
            let _ = writeln!(io::stdout(), "{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
