mod job;
mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use groupcode::code::DEFAULT_DISTANCE_CAP;
use job::{Command, Job};
use serde::Deserialize;
use serde_json::Value;

/// Dimensions of principal ideals in finite group algebras and the codes
/// they generate.
#[derive(Parser)]
#[command(name = "groupcode", version)]
struct Cli {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Exact dimension of R*b with every applicable bound.
    Analyze(Flags),
    /// Idempotent generator of R*b, if the ideal is projective.
    Idempotent(Flags),
    /// Orbits of g -> g^q on an abelian group.
    Orbits(Flags),
    /// The primitive idempotent matrix A and the dimension indicator D.
    Indicator(Flags),
    /// Minimum distance of R*b by exhaustive search.
    Mindist(Flags),
    /// Code parameters of R*b with its MDS and ECD flags.
    Classify(Flags),
    /// Run a job file (TOML), checking its `[expect]` table if present.
    Run {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Flags {
    /// `gf:P`, `gf:P^K` or `gf:P^K:MODULUS`.
    #[arg(long)]
    field: String,
    /// e.g. `cyclic:4`, `product:cyclic:2,cyclic:4`, `perm:[(1,2,3),(1,2)(3,4)]`.
    #[arg(long)]
    group: String,
    /// Element listing that fixes the basis order.
    #[arg(long)]
    order: Option<String>,
    /// Expression such as `1+u+v` or a coefficient vector.
    #[arg(long)]
    elem: Option<String>,
    #[arg(long)]
    json: bool,
    /// Largest number of codewords the distance search may examine.
    #[arg(long, env = "GROUPCODE_CAP", default_value_t = DEFAULT_DISTANCE_CAP)]
    cap: u64,
    /// Roots of unity per cyclic factor, `;` between factors.
    #[arg(long)]
    orderings: Option<String>,
    /// Modulus of the splitting field over the prime field.
    #[arg(long)]
    ext_modulus: Option<String>,
    /// Name of the field generator, when `a` is also a group generator.
    #[arg(long)]
    field_symbol: Option<String>,
    /// Omit the statements that depend on the MDS conjecture.
    #[arg(long)]
    no_notes: bool,
}

impl Flags {
    fn into_job(self, command: Command) -> (Job, bool) {
        let json = self.json;
        let job = Job {
            command,
            field: self.field,
            group: self.group,
            order: self.order,
            elem: self.elem,
            cap: Some(self.cap),
            orderings: self.orderings,
            ext_modulus: self.ext_modulus,
            field_symbol: self.field_symbol,
            notes: !self.no_notes,
        };
        (job, json)
    }
}

#[derive(Deserialize)]
struct JobFile {
    #[serde(flatten)]
    job: Job,
    #[serde(default)]
    json: bool,
    #[serde(default)]
    expect: Option<toml::Table>,
}

const EXIT_PARSE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_EXPECTATION: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (job, json, expect) = match cli.action {
        Action::Analyze(f) => with_no_expect(f.into_job(Command::Analyze)),
        Action::Idempotent(f) => with_no_expect(f.into_job(Command::Idempotent)),
        Action::Orbits(f) => with_no_expect(f.into_job(Command::Orbits)),
        Action::Indicator(f) => with_no_expect(f.into_job(Command::Indicator)),
        Action::Mindist(f) => with_no_expect(f.into_job(Command::Mindist)),
        Action::Classify(f) => with_no_expect(f.into_job(Command::Classify)),
        Action::Run { path, json } => match load(&path) {
            Ok(file) => (file.job, json || file.json, file.expect),
            Err(msg) => {
                eprintln!("error[ParseError]: {}: {msg}", path.display());
                return ExitCode::from(EXIT_PARSE);
            }
        },
    };
    let (doc, err) = job.run();
    if json {
        println!("{}", serde_json::to_string_pretty(&doc).expect("JSON document"));
    } else if err.is_none() {
        print!("{}", text::render(&doc));
    }
    if let Some(e) = &err {
        eprintln!("error[{}]: {e}", e.code());
    }
    let mut status = match &err {
        None => 0,
        Some(e) if e.is_parse() => EXIT_PARSE,
        Some(_) => EXIT_DOMAIN,
    };
    if let Some(expect) = expect {
        let failures = check_expectations(&doc, &expect);
        for f in &failures {
            eprintln!("expectation failed: {f}");
        }
        // a job that expects its error passes as long as every check holds
        status = if failures.is_empty() { 0 } else { EXIT_EXPECTATION };
    }
    ExitCode::from(status)
}

fn with_no_expect((job, json): (Job, bool)) -> (Job, bool, Option<toml::Table>) {
    (job, json, None)
}

fn load(path: &PathBuf) -> Result<JobFile, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    toml::from_str(&text).map_err(|e| e.to_string())
}

/// Keys of `expect` are JSON pointers into the output document.
fn check_expectations(doc: &Value, expect: &toml::Table) -> Vec<String> {
    expect
        .iter()
        .filter_map(|(pointer, want)| {
            let want = serde_json::to_value(want).expect("TOML values convert to JSON");
            match doc.pointer(pointer) {
                Some(got) if *got == want => None,
                Some(got) => Some(format!("{pointer}: expected {want}, found {got}")),
                None => Some(format!("{pointer}: missing from output")),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn expectations_compare_by_pointer() {
        let doc = json!({ "result": { "dim_exact": 8, "candidates": [2, 5] } });
        let expect: toml::Table = toml::from_str("\"/result/dim_exact\" = 8\n\"/result/candidates\" = [2, 5]\n").unwrap();
        assert!(check_expectations(&doc, &expect).is_empty());
        let wrong: toml::Table = toml::from_str("\"/result/dim_exact\" = 9\n\"/result/rank\" = 1\n").unwrap();
        let failures = check_expectations(&doc, &wrong);
        assert_eq!(failures.len(), 2);
        assert!(failures.iter().any(|f| f.contains("missing")));
    }
}
