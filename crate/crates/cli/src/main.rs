//! `coring-lab`: batch verification and construction over JSON documents.
//!
//! Exit status: 0 when every check passes, 1 when an axiom check fails or a
//! construction is refused, 2 for usage and parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::{Arc, OnceLock};

use clap::{Args, Parser, Subcommand};
use coring_lab::catalog;
use coring_lab::comodule_connection::ComoduleConnection;
use coring_lab::coring::Coring;
use coring_lab::cring::{CRing, CoderivationComplex};
use coring_lab::dga::{coring_from_dga, Dga, Roiter};
use coring_lab::document::{self, Built, Document, Entry, Kind};
use coring_lab::{Error, Field, FieldSpec, Fp, Rational, Report};

/// Prime fields available to `--field prime:p`; each is a separate instantiation.
const PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13, 101, 65537, 2147483647];

#[derive(Parser)]
#[command(name = "coring-lab", version, about = "Exact verification of corings, entwinings, C-rings and connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Render reports as JSON
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap for DGAs and coderivation complexes
    #[arg(long, global = true, default_value_t = 3)]
    degree: usize,
    /// Read scalars over this field (`rational` or `prime:p`) instead of the declared one
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checker of every named object (all objects by default)
    Check {
        file: PathBuf,
        #[arg(long)]
        object: Vec<String>,
    },
    /// Construct a new document from objects in a file or the catalog
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Translate between C-ring actions and flat comodule connections
    Convert {
        #[command(subcommand)]
        kind: ConvertKind,
    },
    /// List or emit catalog documents
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// The DGA of a coring with a group-like element
    Roiter {
        file: Option<PathBuf>,
        #[arg(long)]
        coring: String,
        #[arg(long)]
        grouplike: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The universal differential envelope of an algebra
    Envelope {
        file: Option<PathBuf>,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The coring with group-like element of a semi-free DGA
    Coring {
        file: PathBuf,
        #[arg(long)]
        dga: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConvertKind {
    /// C-ring module to flat connection over the coderivation complex
    ActionToConnection {
        file: Option<PathBuf>,
        #[arg(long)]
        cring: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        character: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flat connection back to a C-ring module
    ConnectionToAction {
        file: PathBuf,
        #[arg(long)]
        connection: Option<String>,
        #[arg(long)]
        character: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Refused(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = field_for(&cli).and_then(|spec| dispatch(spec, &cli));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn input_file(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Check { file, .. } => Some(file),
        Command::Build { kind: BuildKind::Roiter { file, .. } | BuildKind::Envelope { file, .. } } => file.as_deref(),
        Command::Build { kind: BuildKind::Coring { file, .. } } => Some(file),
        Command::Convert { kind: ConvertKind::ActionToConnection { file, .. } } => file.as_deref(),
        Command::Convert { kind: ConvertKind::ConnectionToAction { file, .. } } => Some(file),
        Command::Examples { .. } => None,
    }
}

/// Writes to stdout; a closed pipe (as with `| head`) ends the process quietly.
fn emit_out(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(2);
    }
}

/// Each command has at most one input file. It is read once, so pipes work too.
fn read(path: &Path) -> Result<String, Failure> {
    static INPUT: OnceLock<Result<String, String>> = OnceLock::new();
    INPUT
        .get_or_init(|| fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())))
        .clone()
        .map_err(Failure::Usage)
}

fn field_for(cli: &Cli) -> Result<FieldSpec, Failure> {
    if let Some(spec) = cli.opts.field {
        return Ok(spec);
    }
    match input_file(cli) {
        Some(path) => document::peek_field(&read(path)?).map_err(|e| Failure::Usage(format!("{}:{e}", path.display()))),
        None => Ok(FieldSpec::Rational),
    }
}

macro_rules! with_prime {
    ($p:expr, $cli:expr, $($prime:literal)*) => {
        match $p {
            $($prime => run::<Fp<$prime>>($cli),)*
            p => Err(Failure::Usage(format!("prime {p} is not built in; available: {PRIMES:?}"))),
        }
    };
}

fn dispatch(spec: FieldSpec, cli: &Cli) -> Outcome {
    match spec {
        FieldSpec::Rational => run::<Rational>(cli),
        FieldSpec::Prime(p) => with_prime!(p, cli, 2 3 5 7 11 13 101 65537 2147483647),
    }
}

fn run<F: Field>(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    match &cli.command {
        Command::Check { file, object } => check::<F>(opts, file, object),
        Command::Build { kind } => build::<F>(opts, kind),
        Command::Convert { kind } => convert::<F>(opts, kind),
        Command::Examples { action } => examples::<F>(action),
    }
}

fn load<F: Field>(opts: &Opts, file: Option<&Path>, anchor: &str) -> Result<Document<F>, Failure> {
    match file {
        Some(path) => {
            let text = read(path)?;
            let parsed = if opts.field.is_some() { document::parse_over(&text) } else { document::parse(&text) };
            parsed.map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))
        }
        None => catalog::containing::<F>(anchor)
            .map(|(_, doc)| doc)
            .ok_or_else(|| Failure::Usage(format!("no catalog document defines '{anchor}'; pass a file"))),
    }
}

fn get<F: Field>(doc: &Document<F>, name: &str) -> Result<Built<F>, Failure> {
    if !doc.objects.contains_key(name) {
        return Err(Failure::Usage(format!("no object '{name}' in the document")));
    }
    Ok(doc.build(name)?)
}

fn wrong_kind(name: &str, want: &str) -> Failure {
    Failure::Usage(format!("'{name}' is not a {want}"))
}

fn render(opts: &Opts, reports: &[Report]) -> bool {
    let passed = reports.iter().all(Report::passed);
    if opts.json {
        let value = serde_json::json!({
            "passed": passed,
            "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        });
        emit_out(&format!("{}\n", serde_json::to_string_pretty(&value).expect("reports serialize")));
    } else {
        for r in reports {
            emit_out(&r.to_string());
        }
    }
    passed
}

/// Writes the document and returns the reports for `names`, freshly parsed
/// back so that what is checked is exactly what was written.
fn finish<F: Field>(opts: &Opts, doc: &Document<F>, out: Option<&Path>, names: &[&str]) -> Outcome {
    let text = document::emit(doc);
    let reparsed = document::parse::<F>(&text)?;
    let mut reports = Vec::new();
    for name in names {
        reports.push(reparsed.build(name)?.report(name));
    }
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(render(opts, &reports))
        }
        None => {
            emit_out(&text);
            let passed = reports.iter().all(Report::passed);
            for r in reports.iter().filter(|r| !r.passed()) {
                eprint!("{r}");
            }
            Ok(passed)
        }
    }
}

fn check<F: Field>(opts: &Opts, file: &Path, objects: &[String]) -> Outcome {
    let doc = load::<F>(opts, Some(file), "")?;
    let names: Vec<String> = if objects.is_empty() { doc.objects.keys().cloned().collect() } else { objects.to_vec() };
    let mut reports = Vec::with_capacity(names.len());
    for name in &names {
        reports.push(get(&doc, name)?.report(name));
    }
    Ok(render(opts, &reports))
}

fn base_document<F: Field>(dga_base: &coring_lab::algebra::Algebra<F>) -> Document<F> {
    let mut doc = Document::new();
    doc.put_algebra("base", "A", dga_base);
    doc
}

fn build<F: Field>(opts: &Opts, kind: &BuildKind) -> Outcome {
    match kind {
        BuildKind::Roiter { file, coring, grouplike, out } => {
            let doc = load::<F>(opts, file.as_deref(), coring)?;
            let Built::Coring(c) = get(&doc, coring)? else { return Err(wrong_kind(coring, "coring")) };
            let Built::Grouplike { element, flavor, .. } = get(&doc, grouplike)? else {
                return Err(wrong_kind(grouplike, "grouplike"));
            };
            if field_of(&doc.objects[grouplike], "coring").as_deref() != Some(coring.as_str()) {
                return Err(Failure::Usage(format!("'{grouplike}' belongs to a different coring")));
            }
            let ro = Roiter::new(&c, &element, flavor, opts.degree)?;
            let mut res = base_document(&ro.dga.base);
            res.put_dga("dga", "base", &ro.dga);
            finish(opts, &res, out.as_deref(), &["base", "dga"])
        }
        BuildKind::Envelope { file, algebra, out } => {
            let doc = load::<F>(opts, file.as_deref(), algebra)?;
            let a = match get(&doc, algebra)? {
                Built::Algebra(a) => a,
                Built::Bialgebra(b) => b.algebra,
                Built::Hopf(h) => h.bialgebra.algebra,
                _ => return Err(wrong_kind(algebra, "algebra")),
            };
            let dga = Dga::universal_envelope(&a, opts.degree)?;
            let mut res = base_document(&a);
            res.put_dga("dga", "base", &dga);
            finish(opts, &res, out.as_deref(), &["base", "dga"])
        }
        BuildKind::Coring { file, dga, out } => {
            let doc = load::<F>(opts, Some(file), dga)?;
            let Built::Dga(d) = get(&doc, dga)? else { return Err(wrong_kind(dga, "dga")) };
            let (c, g): (Coring<F>, Vec<F>) = coring_from_dga(&d)?;
            let mut res = base_document(&d.base);
            res.put_coring("coring", "base", &c);
            res.put_grouplike("g", "coring", &g, coring_lab::coring::Flavor::Grouplike);
            finish(opts, &res, out.as_deref(), &["coring", "g"])
        }
    }
}

fn field_of(doc_obj: &document::Object, key: &str) -> Option<String> {
    match doc_obj.fields.get(key) {
        Some(Entry::One(s)) => Some(s.clone()),
        _ => None,
    }
}

/// The named character, or the only one on `cring`.
fn character_for<F: Field>(doc: &Document<F>, cring: &str, named: Option<&String>) -> Result<(String, coring_lab::Matrix<F>), Failure> {
    let name = match named {
        Some(n) => n.clone(),
        None => {
            let found: Vec<&str> = doc
                .objects_of(Kind::Character)
                .into_iter()
                .filter(|n| field_of(&doc.objects[*n], "cring").as_deref() == Some(cring))
                .collect();
            match found.as_slice() {
                [one] => one.to_string(),
                [] => return Err(Failure::Usage(format!("no character on '{cring}'"))),
                _ => return Err(Failure::Usage(format!("several characters on '{cring}'; pass --character"))),
            }
        }
    };
    match get(doc, &name)? {
        Built::Character { kappa, .. } => Ok((name, kappa)),
        _ => Err(wrong_kind(&name, "character")),
    }
}

fn ring<F: Field>(doc: &Document<F>, name: &str) -> Result<Arc<CRing<F>>, Failure> {
    match get(doc, name)? {
        Built::CRing(r) => Ok(r),
        _ => Err(wrong_kind(name, "cring")),
    }
}

fn complex<F: Field>(opts: &Opts, ring: &CRing<F>, kappa: &coring_lab::Matrix<F>) -> Result<CoderivationComplex<F>, Failure> {
    if opts.degree < 2 {
        return Err(Failure::Usage("connections need --degree 2 or more".into()));
    }
    Ok(CoderivationComplex::new(ring, kappa, opts.degree)?)
}

fn convert<F: Field>(opts: &Opts, kind: &ConvertKind) -> Outcome {
    match kind {
        ConvertKind::ActionToConnection { file, cring, module, character, out } => {
            let mut doc = load::<F>(opts, file.as_deref(), cring)?;
            let r = ring(&doc, cring)?;
            let Built::CRingModule { module: m, .. } = get(&doc, module)? else { return Err(wrong_kind(module, "cring_module")) };
            let (_, kappa) = character_for(&doc, cring, character.as_ref())?;
            let cx = complex(opts, &r, &kappa)?;
            let conn = cx.connection_from_action(&kappa, &m)?;
            let carrier = field_of(&doc.objects[cring], "carrier").expect("resolved cring");
            let coalgebra = field_of(&doc.objects[&carrier], "coalgebra").expect("resolved carrier");
            let comodule = field_of(&doc.objects[module], "comodule").expect("resolved module");
            let (cx_name, conn_name) = (format!("{cring}.complex"), format!("{module}.connection"));
            doc.put_coderivation(&cx_name, &coalgebra, &cx.coderivation);
            doc.put_comodule_connection(&conn_name, &comodule, &cx_name, &conn);
            finish(opts, &doc, out.as_deref(), &[&cx_name, &conn_name])
        }
        ConvertKind::ConnectionToAction { file, connection, character, out } => {
            let mut doc = load::<F>(opts, Some(file), "")?;
            let conn_name = match connection {
                Some(c) => c.clone(),
                None => {
                    let found: Vec<&str> = doc
                        .objects_of(Kind::Connection)
                        .into_iter()
                        .filter(|n| doc.objects[*n].fields.contains_key("coderivation"))
                        .collect();
                    match found.as_slice() {
                        [one] => one.to_string(),
                        _ => return Err(Failure::Usage("pass --connection to pick a comodule connection".into())),
                    }
                }
            };
            let Built::ComoduleConnection { coderivation, connection: conn } = get(&doc, &conn_name)? else {
                return Err(wrong_kind(&conn_name, "comodule connection"));
            };
            let cx_name = field_of(&doc.objects[&conn_name], "coderivation").expect("resolved connection");
            let cring = cx_name
                .strip_suffix(".complex")
                .filter(|r| doc.objects.get(*r).is_some_and(|o| o.kind == Kind::CRing))
                .map(str::to_string)
                .or_else(|| match doc.objects_of(Kind::CRing).as_slice() {
                    [one] => Some(one.to_string()),
                    _ => None,
                })
                .ok_or_else(|| Failure::Usage("cannot tell which C-ring the connection lives over".into()))?;
            let r = ring(&doc, &cring)?;
            let (_, kappa) = character_for(&doc, &cring, character.as_ref())?;
            let cx = complex(opts, &r, &kappa)?;
            let stored = &*coderivation;
            if cx.coderivation.bicomodule != stored.bicomodule || cx.coderivation.lambda != stored.lambda {
                return Err(Failure::Refused(format!("'{cx_name}' is not the coderivation complex of '{cring}' at this degree")));
            }
            let conn = ComoduleConnection::new(conn.side, conn.comodule, &cx.coderivation, conn.nabla)?;
            let m = cx.action_from_connection(&r, &kappa, &conn)?;
            let comodule = field_of(&doc.objects[&conn_name], "comodule").expect("resolved connection");
            let name = conn_name.strip_suffix(".connection").map_or_else(|| format!("{conn_name}.action"), str::to_string);
            doc.put_cring_module(&name, &cring, &comodule, &m);
            finish(opts, &doc, out.as_deref(), &[&name])
        }
    }
}

fn examples<F: Field>(action: &ExamplesAction) -> Outcome {
    match action {
        ExamplesAction::List => {
            for name in catalog::NAMES {
                let doc = catalog::document::<F>(name)?;
                let objects: Vec<&str> = doc.objects.keys().map(String::as_str).collect();
                emit_out(&format!("{name}: {}\n", objects.join(", ")));
            }
            Ok(true)
        }
        ExamplesAction::Emit { name, out } => {
            let doc = catalog::document::<F>(name).map_err(|e| Failure::Usage(e.to_string()))?;
            let text = document::emit(&doc);
            match out {
                Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => emit_out(&text),
            }
            Ok(true)
        }
    }
}
