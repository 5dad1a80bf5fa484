use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use alexlab::abelian::{abelianization, mod_p_h1};
use alexlab::chen::{chen_ranks, chen_ranks_with, modp_chen_ranks, ChenMethod};
use alexlab::extensions::{format_extension, parse_extension, verify_transfer};
use alexlab::fox::{b_mod_p, b_presentation_koszul, b_univariate, fox_matrix, FoxFlavor};
use alexlab::jumploci::{cv_membership, finiteness_test, jump_ideal, CharacterPoint, Finiteness, JumpFlavor};
use alexlab::lie::{cup_data, holonomy_chen_ranks, resonance_ideal, resonance_membership};
use alexlab::presentation::{resolve_group, Builtin, GroupPresentation};
use alexlab::report::{self, envelope};
use alexlab::{Error, Result};

#[derive(Parser)]
#[command(name = "alexlab", version, about = "Alexander invariants, Chen ranks and jump loci of finitely presented groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Input {
    /// Presentation `<x1,x2 | ...>` or `builtin:NAME(...)`.
    input: Option<String>,
    /// Read the input from a file instead.
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlexFlavor {
    Ab,
    Abf,
    P,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Koszul,
    Crowell,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealFlavor {
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "W", alias = "w")]
    W,
    #[value(name = "Y", alias = "y")]
    Y,
}

#[derive(Clone, Copy, ValueEnum)]
enum MemberFlavor {
    #[value(name = "V", alias = "v")]
    V,
    #[value(name = "W", alias = "w")]
    W,
}

#[derive(Subcommand)]
enum Command {
    /// Rank and torsion of G_ab.
    Abelianize(Input),
    /// Alexander matrix and, when available, the Alexander invariant.
    Alexander {
        #[arg(long, value_enum, default_value_t = AlexFlavor::Ab)]
        flavor: AlexFlavor,
        #[arg(long)]
        prime: Option<u64>,
        #[command(flatten)]
        input: Input,
    },
    /// Chen ranks θ_1..θ_N.
    Chen {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        input: Input,
    },
    /// Mod-p Chen ranks θ^p_1..θ^p_N.
    ChenP {
        #[arg(long)]
        prime: u64,
        #[arg(long = "max-n")]
        max_n: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Defining ideal of V_k, W_k or Y_k.
    CvIdeal {
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = IdealFlavor::V)]
        flavor: IdealFlavor,
        #[command(flatten)]
        input: Input,
    },
    /// Whether a character lies in V_k (or W_k).
    CvMember {
        #[arg(long)]
        depth: usize,
        /// `free=[..];torsion=[..]` with optional `;conductor=m`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value_t = MemberFlavor::V)]
        flavor: MemberFlavor,
        #[command(flatten)]
        input: Input,
    },
    /// Resonance membership of a point, or the ideal of R_k.
    Resonance {
        #[arg(long)]
        depth: usize,
        /// Rational vector `[a1,..,ab]` (optionally `a=[..]`).
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[command(flatten)]
        input: Input,
    },
    /// Holonomy Chen ranks θ̄_1..θ̄_N.
    HolonomyChen {
        #[arg(long = "max-n")]
        max_n: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Action on H_1(K), exactness flags and Chen-rank transfer for K ⋊ Q.
    CheckExtension {
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        prime: Option<u64>,
        /// `tree:GRAPH`, `klein_bottle`, or `kernel: ..; quotient: ..; q: a -> w`.
        input: Option<String>,
        #[arg(short = 'f', long = "file")]
        file: Option<PathBuf>,
    },
    /// List the builtin groups, or show one.
    Builtin { name: Option<String> },
    /// Whether Y_k is finite.
    Finiteness {
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        input: Input,
    },
}

const BUILTINS: &[&str] = &[
    "free(n)",
    "trefoil",
    "torus_knot(p,q)",
    "dihedral_inf",
    "heisenberg",
    "heisenberg_commutator",
    "baumslag_solitar(n)",
    "raag(GRAPH)",
    "klein_bottle",
    "commutator_power(n)",
    "pure_braid(n)",
];

fn read_text(input: &Option<String>, file: &Option<PathBuf>) -> Result<String> {
    match (input, file) {
        (Some(_), Some(_)) => Err(Error::Invalid("give the input inline or with -f, not both".into())),
        (Some(s), None) => Ok(s.clone()),
        (None, Some(p)) => {
            fs::read_to_string(p).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))
        }
        (None, None) => Err(Error::Invalid("no input given".into())),
    }
}

fn group(input: &Input) -> Result<GroupPresentation> {
    resolve_group(&read_text(&input.input, &input.file)?)
}

fn parse_vector(text: &str) -> Result<Vec<BigRational>> {
    let t = text.trim().replace('\u{2212}', "-");
    let t = t.strip_prefix("a=").unwrap_or(&t).trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Invalid(format!("expected a vector [a1,..], got `{text}`")))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Invalid(format!("bad rational `{x}`"))))
        .collect()
}

fn run(cmd: &Command) -> Result<Value> {
    Ok(match cmd {
        Command::Abelianize(input) => {
            let g = group(input)?;
            envelope("abelianize", &g.canonical(), report::abelianization(&abelianization(&g)))
        }
        Command::Alexander { flavor, prime, input } => {
            let g = group(input)?;
            let mut body = json!({});
            match flavor {
                AlexFlavor::P => {
                    let p = prime.ok_or_else(|| Error::Invalid("--flavor p needs --prime".into()))?;
                    body["alexander_matrix"] = report::matrix(&fox_matrix(&g, FoxFlavor::ModP(p))?);
                    body["b1_p"] = json!(mod_p_h1(&g, p)?);
                    body["b_p_dim"] = json!(b_mod_p(&g, p)?.dim);
                }
                AlexFlavor::Ab | AlexFlavor::Abf => {
                    let f = if matches!(flavor, AlexFlavor::Ab) { FoxFlavor::Ab } else { FoxFlavor::Abf };
                    body["alexander_matrix"] = report::matrix(&fox_matrix(&g, f)?);
                    if g.is_commutator_relators() {
                        body["alexander_invariant"] = report::module(&b_presentation_koszul(&g)?);
                    } else if let Ok(nf) = b_univariate(&g) {
                        body["alexander_invariant"] = json!({
                            "ring": "QQ[t^+-1]",
                            "invariant_factors": nf.invariant_factors.iter().map(|d| d.format("t")).collect::<Vec<_>>(),
                            "free_rank": nf.free_rank,
                        });
                    }
                }
            }
            envelope("alexander", &g.canonical(), body)
        }
        Command::Chen { max_n, method, input } => {
            let g = group(input)?;
            let th = match method {
                Method::Auto => chen_ranks(&g, *max_n)?,
                Method::Koszul => chen_ranks_with(&g, *max_n, ChenMethod::Koszul)?,
                Method::Crowell => chen_ranks_with(&g, *max_n, ChenMethod::Crowell)?,
            };
            envelope("chen", &g.canonical(), json!({"theta": report::dims(&th)}))
        }
        Command::ChenP { prime, max_n, input } => {
            let g = group(input)?;
            let th = modp_chen_ranks(&g, *prime, *max_n)?;
            envelope("chen-p", &g.canonical(), json!({"p": prime, "theta_p": report::dims(&th)}))
        }
        Command::CvIdeal { depth, flavor, input } => {
            let g = group(input)?;
            let (f, name) = match flavor {
                IdealFlavor::V => (JumpFlavor::V, "V"),
                IdealFlavor::W => (JumpFlavor::W, "W"),
                IdealFlavor::Y => (JumpFlavor::Y, "Y"),
            };
            let ideal = jump_ideal(&g, *depth, f)?;
            envelope("cv-ideal", &g.canonical(), json!({"depth": depth, "flavor": name, "ideal": report::ideal(&ideal)}))
        }
        Command::CvMember { depth, point, flavor, input } => {
            let g = group(input)?;
            let chi: CharacterPoint = point.parse()?;
            let (f, name) = match flavor {
                MemberFlavor::V => (JumpFlavor::V, "V"),
                MemberFlavor::W => (JumpFlavor::W, "W"),
            };
            let member = cv_membership(&g, &chi, *depth, f)?;
            envelope(
                "cv-member",
                &g.canonical(),
                json!({"depth": depth, "flavor": name, "point": report::point(&chi), "member": member}),
            )
        }
        Command::Resonance { depth, point, input } => {
            let g = group(input)?;
            let cd = cup_data(&g)?;
            let body = match point {
                Some(p) => {
                    let a = parse_vector(p)?;
                    let member = resonance_membership(&cd, &a, *depth)?;
                    json!({"depth": depth, "point": a.iter().map(report::rational).collect::<Vec<_>>(), "member": member})
                }
                None => json!({"depth": depth, "ideal": report::ideal(&resonance_ideal(&cd, *depth)?)}),
            };
            envelope("resonance", &g.canonical(), body)
        }
        Command::HolonomyChen { max_n, input } => {
            let g = group(input)?;
            let th = holonomy_chen_ranks(&cup_data(&g)?, *max_n)?;
            envelope("holonomy-chen", &g.canonical(), json!({"theta_bar": report::dims(&th)}))
        }
        Command::CheckExtension { max_n, prime, input, file } => {
            let ext = parse_extension(&read_text(input, file)?)?;
            let rep = verify_transfer(&ext, *max_n, *prime)?;
            envelope("check-extension", &format_extension(&ext), report::extension_report(&rep))
        }
        Command::Builtin { name: None } => envelope("builtin", "", json!({"builtins": BUILTINS})),
        Command::Builtin { name: Some(name) } => {
            let b: Builtin = name.trim().strip_prefix("builtin:").unwrap_or(name.trim()).parse()?;
            let g = b.presentation()?;
            envelope(
                "builtin",
                &b.to_string(),
                json!({
                    "name": b.to_string(),
                    "presentation": g.canonical(),
                    "generators": g.num_generators(),
                    "relators": g.relators().len(),
                    "commutator_relators": g.is_commutator_relators(),
                    "one_formal": b.is_one_formal(),
                    "abelianization": report::abelianization(&abelianization(&g)),
                }),
            )
        }
        Command::Finiteness { depth, input } => {
            let g = group(input)?;
            let verdict = match finiteness_test(&g, *depth)? {
                Finiteness::Finite => "finite",
                Finiteness::Infinite => "infinite",
            };
            envelope("finiteness", &g.canonical(), json!({"depth": depth, "result": verdict}))
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::Precondition(_) | Error::SizeGuard(_) | Error::Invalid(_) => 3,
        Error::Internal(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(v) => {
            match cli.format {
                Format::Json => println!("{}", report::to_json(&v)),
                Format::Table => print!("{}", report::to_table(&v)),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
