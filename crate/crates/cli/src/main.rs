use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qbailey::bailey::{chain_step, lattice_step_i, lattice_step_ii, RhoSpec, VerificationReport};
use qbailey::catalog::{self, Catalog, CatalogEntry, CatalogItem};
use qbailey::configsum::{x_bosonic, x_dual, x_fermionic, x_fermionic_01, ConfigSumQuery, PPPair};
use qbailey::pipeline::{
    andrews_gordon, coset_identity, default_suite, rogers_ramanujan, run_suite, slater_identity, AgRoute,
    IdentityReport,
};
use qbailey::stringfn::{string_function, StringFunctionQuery};
use qbailey::{HalfExp, QError, QPolynomial};

#[derive(Parser)]
#[command(name = "qbailey", version, about = "Exact verification of Bailey pairs and Rogers-Ramanujan type identities")]
struct Cli {
    /// Truncation order in half-steps (60 means q^30)
    #[arg(long, global = true, default_value_t = 60)]
    order: i64,
    /// Largest L checked or printed
    #[arg(long, global = true, default_value_t = 8)]
    lmax: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the suite
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Bailey pair relation for a catalog label
    VerifyPair { label: String },
    /// Check the conjugate pair relation for a catalog label
    VerifyConjugate { label: String },
    /// Apply the Bailey chain to a pair and check the result
    Chain {
        label: String,
        #[command(flatten)]
        rho: Rhos,
        /// Number of steps
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Apply a lattice step to a pair relative to q^(eta+N) and check the result
    Lattice {
        label: String,
        #[arg(long, value_enum, default_value_t = Variant::I)]
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        rho: Rhos,
    },
    /// Configuration sums: `X p,p' r,s L,b`, `F p,p' r,s L`, `F01 p,p' L`, `dual p,p' r,s L,b`
    Configsum {
        #[arg(value_enum)]
        form: Form,
        #[arg(num_args = 1..=3, required = true)]
        args: Vec<String>,
    },
    /// String function `C p,p' m,l`
    Stringfn {
        #[arg(value_parser = ["C"])]
        name: String,
        pp: String,
        ml: String,
    },
    /// End-to-end identity checks
    Identity {
        #[command(subcommand)]
        which: IdentityCmd,
    },
    /// Built-in pairs and conjugate pairs
    Catalog {
        #[command(subcommand)]
        which: CatalogCmd,
    },
    /// Run the standard suite
    Suite {
        /// Include per-check runtimes in the output
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Args)]
struct Rhos {
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    rho1: String,
    #[arg(long, default_value = "inf", allow_hyphen_values = true)]
    rho2: String,
}

impl Rhos {
    fn parse(&self) -> Result<(RhoSpec, RhoSpec), QError> {
        Ok((self.rho1.parse()?, self.rho2.parse()?))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    I,
    Ii,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    #[value(name = "X")]
    X,
    #[value(name = "F")]
    F,
    #[value(name = "F01")]
    F01,
    #[value(name = "dual")]
    Dual,
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// Rogers-Ramanujan identity i = 1 or 2
    Rr {
        #[arg(long)]
        i: u32,
    },
    /// Andrews-Gordon identity
    Ag {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, value_enum, default_value_t = Route::Direct)]
        route: Route,
    },
    /// Bilinear identity of a catalog pair with a conjugate pair
    Slater {
        #[arg(long)]
        pair: String,
        #[arg(long, default_value = "gdinf")]
        conj: String,
    },
    /// Coset identity from a configuration-sum pair and string functions
    Coset {
        /// p1,p1'
        #[arg(long)]
        p1: String,
        /// r,s
        #[arg(long)]
        rs: String,
        /// p2,p2'
        #[arg(long)]
        p2: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Direct,
    Derived,
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { label: String },
    Export {
        /// Emit JSON (the only export format)
        #[arg(long)]
        json: bool,
    },
}

/// Failure of a command: bad input exits 2, failed checks exit 1.
enum Failure {
    Usage(String),
    Check,
}

impl From<QError> for Failure {
    fn from(e: QError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn pair_of_ints(s: &str, what: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Usage(format!("expected `{what}` as two comma-separated integers, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn pp_of(s: &str) -> Result<PPPair, Failure> {
    Ok(s.parse::<PPPair>()?)
}

fn order_of(cli: &Cli) -> Result<HalfExp, Failure> {
    if cli.order < 0 {
        return Err(Failure::Usage("--order must be nonnegative".into()));
    }
    Ok(HalfExp(cli.order))
}

fn emit_reports(cli: &Cli, reports: &[IdentityReport]) -> Outcome {
    for r in reports {
        match cli.format {
            Format::Text => println!("{}", r.summary_line()),
            Format::Json => println!("{}", r.to_json()),
        }
    }
    if reports.iter().all(IdentityReport::verified) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn emit_verification(cli: &Cli, v: &VerificationReport, extra: Value) -> Outcome {
    match cli.format {
        Format::Text => {
            if let Some(table) = extra.get("table").and_then(Value::as_array) {
                print_table(table);
            }
            let status = match &v.first_mismatch {
                None if v.verified() => "verified".to_string(),
                None => format!("{:?}", v.status).to_lowercase(),
                Some(m) => format!(
                    "MISMATCH at L={} q^({}): lhs {} rhs {}",
                    m.l, m.exponent, m.lhs_coeff, m.rhs_coeff
                ),
            };
            println!("{} (eta={}) L<={} to q^({}): {status}", v.label, v.eta, v.l_max, v.order);
        }
        Format::Json => {
            let mut out = json!({ "verification": v });
            if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
                o.extend(e);
            }
            println!("{out}");
        }
    }
    if v.verified() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn print_table(rows: &[Value]) {
    for row in rows {
        let l = &row["L"];
        for (k, v) in row.as_object().into_iter().flatten() {
            if k != "L" {
                println!("{k}_{l} = {}", v.as_str().unwrap_or_default());
            }
        }
    }
}

/// First `lmax + 1` terms of a pair, pretty-printed.
fn item_table(item: &CatalogItem, lmax: usize, order: HalfExp) -> Result<Value, Failure> {
    let mut rows = Vec::new();
    for l in 0..=lmax {
        let row = match item {
            CatalogItem::Pair(p) => {
                let alpha = match p.alpha_exact(l) {
                    Some(a) => a.to_string(),
                    None => p.alpha(l, order)?.to_string(),
                };
                let beta = match p.beta_exact(l) {
                    Some(b) => b.to_string(),
                    None => p.beta(l, order)?.to_string(),
                };
                json!({ "L": l, "alpha": alpha, "beta": beta })
            }
            CatalogItem::Conjugate(c) => {
                let delta = match c.delta_exact(l) {
                    Some(d) => d.to_string(),
                    None => c.delta(l, order)?.to_string(),
                };
                json!({ "L": l, "gamma": c.gamma(l, order)?.to_string(), "delta": delta })
            }
        };
        rows.push(row);
    }
    Ok(Value::Array(rows))
}

fn entry(label: &str) -> Result<CatalogEntry, Failure> {
    match Catalog::global().get(label) {
        Ok(e) => Ok(e),
        Err(e @ QError::CatalogVerification { .. }) => {
            eprintln!("error: {e}");
            Err(Failure::Check)
        }
        Err(e) => Err(e.into()),
    }
}

fn verify_label(cli: &Cli, label: &str, want_pair: bool) -> Outcome {
    let order = order_of(cli)?;
    let (item, _) = catalog::build(label)?;
    match (&item, want_pair) {
        (CatalogItem::Pair(_), true) | (CatalogItem::Conjugate(_), false) => {}
        _ => return Err(Failure::Usage(format!("`{label}` is a {}", item.kind()))),
    }
    let v = item.verify(cli.lmax, order)?;
    emit_verification(cli, &v, json!({}))
}

fn transformed(cli: &Cli, item: CatalogItem) -> Outcome {
    let order = order_of(cli)?;
    let v = item.verify(cli.lmax, order)?;
    let table = item_table(&item, cli.lmax, order)?;
    emit_verification(cli, &v, json!({ "table": table }))
}

fn base_pair(label: &str) -> Result<qbailey::bailey::BaileyPair, Failure> {
    let e = entry(label)?;
    e.pair().cloned().ok_or_else(|| Failure::Usage(format!("`{label}` is not a Bailey pair")))
}

fn print_poly(cli: &Cli, p: &QPolynomial, query: Value) {
    match cli.format {
        Format::Text => println!("{p}"),
        Format::Json => {
            let terms: Vec<_> = p.terms().map(|(e, c)| json!([e.to_string(), c.to_string()])).collect();
            println!("{}", json!({ "query": query, "terms": terms }));
        }
    }
}

fn configsum(cli: &Cli, form: Form, args: &[String]) -> Outcome {
    let arg = |i: usize, what: &str| {
        args.get(i).map(String::as_str).ok_or_else(|| Failure::Usage(format!("missing `{what}`")))
    };
    let pp = pp_of(arg(0, "p,p'")?)?;
    let query = json!({ "pp": pp.to_string(), "args": args });
    let poly = match form {
        Form::X | Form::Dual => {
            let (r, s) = pair_of_ints(arg(1, "r,s")?, "r,s")?;
            let (l, b) = pair_of_ints(arg(2, "L,b")?, "L,b")?;
            let q = ConfigSumQuery::new(pp, r, s, l, b)?;
            if matches!(form, Form::X) {
                x_bosonic(&q)
            } else {
                x_dual(&q)?
            }
        }
        Form::F => {
            let (r, s) = pair_of_ints(arg(1, "r,s")?, "r,s")?;
            let l = arg(2, "L")?.parse().map_err(|_| Failure::Usage("L must be an integer".into()))?;
            x_fermionic(pp, r, s, l)?
        }
        Form::F01 => {
            let l = arg(1, "L")?.parse().map_err(|_| Failure::Usage("L must be an integer".into()))?;
            x_fermionic_01(pp, l)?
        }
    };
    print_poly(cli, &poly, query);
    Ok(())
}

fn stringfn(cli: &Cli, pp: &str, ml: &str) -> Outcome {
    let order = order_of(cli)?;
    let pp = pp_of(pp)?;
    let (m, ell) = pair_of_ints(ml, "m,l")?;
    let s = string_function(&StringFunctionQuery::new(pp, m, ell)?, order);
    match cli.format {
        Format::Text => println!("{s}"),
        Format::Json => {
            let terms: Vec<_> = s.terms().map(|(e, c)| json!([e.to_string(), c.to_string()])).collect();
            println!("{}", json!({ "query": { "pp": pp.to_string(), "m": m, "l": ell }, "order": order, "terms": terms }));
        }
    }
    Ok(())
}

fn identity(cli: &Cli, which: &IdentityCmd) -> Outcome {
    let order = order_of(cli)?;
    let report = match which {
        IdentityCmd::Rr { i } => rogers_ramanujan(*i, order)?,
        IdentityCmd::Ag { k, i, route } => {
            let route = match route {
                Route::Direct => AgRoute::Direct,
                Route::Derived => AgRoute::Derived,
            };
            andrews_gordon(*k, *i, order, route)?
        }
        IdentityCmd::Slater { pair, conj } => slater_identity(pair, conj, order)?,
        IdentityCmd::Coset { p1, rs, p2 } => {
            let (r, s) = pair_of_ints(rs, "r,s")?;
            coset_identity(pp_of(p1)?, r, s, pp_of(p2)?, order)?
        }
    };
    emit_reports(cli, &[report])
}

fn catalog_cmd(cli: &Cli, which: &CatalogCmd) -> Outcome {
    match which {
        CatalogCmd::List => {
            for label in catalog::list() {
                let e = entry(&label)?;
                match cli.format {
                    Format::Text => println!("{label}\t{}\teta={}\t{}", e.item.kind(), e.item.eta(), e.source),
                    Format::Json => println!(
                        "{}",
                        json!({ "label": label, "kind": e.item.kind(), "eta": e.item.eta(), "source": e.source })
                    ),
                }
            }
            Ok(())
        }
        CatalogCmd::Show { label } => {
            let order = order_of(cli)?;
            let e = entry(label)?;
            match cli.format {
                Format::Text => {
                    println!("{} ({}, eta={}): {}", e.label, e.item.kind(), e.item.eta(), e.source);
                    print_table(item_table(&e.item, cli.lmax, order)?.as_array().unwrap());
                }
                Format::Json => println!("{}", catalog::export_entry(&e, cli.lmax, order)?),
            }
            Ok(())
        }
        CatalogCmd::Export { .. } => {
            let order = order_of(cli)?;
            let out = Catalog::global().export(cli.lmax, order)?;
            println!("{}", serde_json::to_string_pretty(&out).expect("json values serialize"));
            Ok(())
        }
    }
}

fn suite(cli: &Cli, timings: bool) -> Outcome {
    let reports = run_suite(&default_suite(), cli.jobs)?;
    let reports: Vec<_> = reports.into_iter().map(|r| if timings { r } else { r.without_runtime() }).collect();
    let outcome = emit_reports(cli, &reports);
    if cli.format == Format::Text {
        let ok = reports.iter().filter(|r| r.verified()).count();
        println!("{ok}/{} verified", reports.len());
    }
    outcome
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::VerifyPair { label } => verify_label(cli, label, true),
        Command::VerifyConjugate { label } => verify_label(cli, label, false),
        Command::Chain { label, rho, steps } => {
            let (r1, r2) = rho.parse()?;
            let mut pair = base_pair(label)?;
            for _ in 0..*steps {
                pair = chain_step(&pair, r1, r2)?;
            }
            transformed(cli, CatalogItem::Pair(pair))
        }
        Command::Lattice { label, variant, n, rho } => {
            let (r1, r2) = rho.parse()?;
            let pair = base_pair(label)?;
            let out = match variant {
                Variant::I => lattice_step_i(&pair, *n, r1, r2)?,
                Variant::Ii => lattice_step_ii(&pair, *n, r1, r2)?,
            };
            transformed(cli, CatalogItem::Pair(out))
        }
        Command::Configsum { form, args } => configsum(cli, *form, args),
        Command::Stringfn { pp, ml, .. } => stringfn(cli, pp, ml),
        Command::Identity { which } => identity(cli, which),
        Command::Catalog { which } => catalog_cmd(cli, which),
        Command::Suite { timings } => suite(cli, *timings),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
