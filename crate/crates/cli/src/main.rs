use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use admissibility::corpus;
use admissibility::engine::{Blocker, Mode, Status};
use admissibility::groups::MetacyclicPresentation;
use admissibility::local_analysis::{local_unity_report, LocalError};
use admissibility::number_field::{NumberField, NumberFieldError};
use admissibility::par::Exec;
use admissibility::query::{
    field_from_coeffs, parse_metacyclic, parse_permutations, parse_poly, parse_product, BudgetOverrides, GroupSpec,
    ParseError, QueryError, QuerySpec,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ARITHMETIC: u8 = 3;
const EXIT_UNDETERMINED: u8 = 4;

#[derive(Parser)]
#[command(name = "admissibility", version)]
#[command(about = "Decide whether a finite group is (tamely) admissible over a number field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number field utilities
    Field {
        #[command(subcommand)]
        command: FieldCommand,
    },
    /// Decide admissibility and print a certificate
    Decide(DecideArgs),
    /// Run the bundled regression corpus
    Corpus {
        /// Case-insensitive id substring or exact tag
        #[arg(long)]
        filter: Option<String>,
        /// Print machine-readable results
        #[arg(long)]
        json: bool,
        /// Disable data parallelism
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
enum FieldCommand {
    /// Degree, discriminant, Galois flag and prime decompositions as JSON
    Inspect {
        /// Ascending coefficients, e.g. 1,0,1 for x^2 + 1; non-monic input is made monic
        #[arg(long, value_parser = coeffs, allow_hyphen_values = true)]
        poly: Coeffs,
        /// Comma-separated primes to decompose
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Add local root-of-unity data for odd primes when the field is Galois
        #[arg(long)]
        galois: bool,
    },
}

/// Ascending polynomial coefficients.
#[derive(Clone, Debug)]
struct Coeffs(Vec<i64>);

fn coeffs(s: &str) -> Result<Coeffs, ParseError> {
    parse_poly(s).map(Coeffs)
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Admissible,
    Tame,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Admissible => Mode::Admissible,
            ModeArg::Tame => Mode::Tame,
        }
    }
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("group").required(true).args(["metacyclic", "perm", "product"]))]
struct DecideArgs {
    /// Ascending coefficients of an irreducible polynomial
    #[arg(long, value_parser = coeffs, allow_hyphen_values = true)]
    poly: Coeffs,
    /// Metacyclic parameters e,f,i,q
    #[arg(long, value_parser = parse_metacyclic, allow_hyphen_values = true)]
    metacyclic: Option<MetacyclicPresentation>,
    /// Permutation generators in 1-based cycle notation; repeatable
    #[arg(long, value_parser = parse_permutations)]
    perm: Vec<Vec<String>>,
    /// Direct product, factors `perm:<generators>` or `meta:e,f,i,q` separated by ';'
    #[arg(long, value_parser = parse_product)]
    product: Option<GroupSpec>,
    #[arg(long, value_enum, default_value = "admissible")]
    mode: ModeArg,
    /// Exit with status 4 when the verdict is undetermined
    #[arg(long)]
    strict: bool,
    /// Re-evaluate every certified hypothesis before printing
    #[arg(long)]
    replay: bool,
    /// Print the full certificate as JSON
    #[arg(long)]
    json: bool,
    /// Largest group order to materialize
    #[arg(long)]
    budget_order: Option<usize>,
    /// Node budget per first generator in the Demuškin relation search
    #[arg(long)]
    budget_demuskin: Option<u64>,
}

impl DecideArgs {
    fn spec(&self) -> QuerySpec {
        let group = if let Some(pres) = self.metacyclic {
            GroupSpec::Metacyclic(pres)
        } else if let Some(product) = &self.product {
            product.clone()
        } else {
            GroupSpec::Permutations(self.perm.concat())
        };
        let overrides = BudgetOverrides {
            order: self.budget_order,
            demuskin_nodes: self.budget_demuskin,
        };
        QuerySpec {
            field: self.poly.0.clone(),
            group,
            mode: self.mode.into(),
            budgets: (overrides != BudgetOverrides::default()).then_some(overrides),
        }
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn field_error_code(e: &NumberFieldError) -> u8 {
    match e {
        NumberFieldError::IndexObstruction { .. } => EXIT_ARITHMETIC,
        _ => EXIT_PARSE,
    }
}

fn field_inspect(poly: &[i64], primes: &[u64], galois_details: bool) -> ExitCode {
    let k: NumberField = match field_from_coeffs(poly) {
        Ok(k) => k,
        Err(e) => return fail(field_error_code(&e), e),
    };
    let mut decompositions = Vec::new();
    for &p in primes {
        match k.decompose_prime(p) {
            Ok(d) => decompositions.push(d),
            Err(e) => return fail(field_error_code(&e), e),
        }
    }
    let galois = k.is_galois();
    let mut report = json!({
        "degree": k.degree(),
        "defining_poly": k.defining_poly(),
        "disc_defpoly": k.disc_defpoly().to_string(),
        "galois": galois,
        "decompositions": decompositions,
    });
    if galois_details && galois {
        let mut unity = Vec::new();
        for &p in primes.iter().filter(|&&p| p != 2) {
            match local_unity_report(&k, p) {
                Ok(r) => unity.push(r),
                Err(LocalError::Field(e)) => return fail(field_error_code(&e), e),
                Err(e @ LocalError::CompositumFailed) => return fail(EXIT_ARITHMETIC, e),
                Err(e) => return fail(EXIT_PARSE, e),
            }
        }
        report["local_unity"] = serde_json::to_value(unity).expect("plain data");
    }
    println!("{}", serde_json::to_string_pretty(&report).expect("plain data"));
    ExitCode::SUCCESS
}

fn decide(args: &DecideArgs) -> ExitCode {
    let spec = args.spec();
    let report = match spec.run(args.replay) {
        Ok(r) => r,
        Err(QueryError::Field(e)) => return fail(field_error_code(&e), e),
        Err(e @ QueryError::Engine(_)) => return fail(EXIT_ARITHMETIC, e),
        Err(e) => return fail(EXIT_PARSE, e),
    };
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("status: {:?}", report.status);
        println!("theorem: {}", report.theorem.tag());
        if let Some(blocking) = report.witnesses.get("blocking") {
            println!("blocking: {blocking}");
        }
        if args.replay {
            println!("replay: {}", report.replay);
        }
    }
    if args.replay && !report.replay {
        return fail(EXIT_FAILURE, "certificate did not replay");
    }
    let blocker = report.verdict.as_ref().and_then(|v| v.blocker.clone());
    match (report.status, blocker) {
        (Status::Undetermined, Some(Blocker::Arithmetic { detail })) => fail(EXIT_ARITHMETIC, detail),
        (Status::Undetermined, _) if args.strict => ExitCode::from(EXIT_UNDETERMINED),
        _ => ExitCode::SUCCESS,
    }
}

fn run_corpus(filter: Option<&str>, json: bool, sequential: bool) -> ExitCode {
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let report = corpus::run_corpus(filter, exec);
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Field {
            command: FieldCommand::Inspect { poly, primes, galois },
        } => field_inspect(&poly.0, primes, *galois),
        Command::Decide(args) => decide(args),
        Command::Corpus {
            filter,
            json,
            sequential,
        } => run_corpus(filter.as_deref(), *json, *sequential),
    }
}
