mod cache;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use primfree::bialg::{check_axioms, check_cocommutative, gr_bialgebra_with, Presentation};
use primfree::exactq::format_combination;
use primfree::format::{content_hash, from_json, to_json};
use primfree::freealg::{check_free, extract_generators, invert_hilbert};
use primfree::graded::check_gr_tensor_iso;
use primfree::lie::{certify_with, lie_generators_with, prepare, Certificate, Prepared};
use primfree::models::{fqsym_model_capped, nsym_model, square_zero_model, tensor_model};
use primfree::Error;

use cache::Cache;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "primfree", version, about = "Certify that primitives of free graded bialgebras form free Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the graded bialgebra axioms
    Axioms(Opts),
    /// Dimensions, primitive dimensions, filtration layers and generator counts
    Tables(Opts),
    /// Bases of the primitive subspaces
    Primitives(Opts),
    /// Bases of the counital filtration layers
    Filtration(Opts),
    /// Checks on the associated graded bialgebra
    Grcheck(Opts),
    /// Algebra and Lie generators
    Generators(Opts),
    /// Full certificate that the primitives form a free Lie algebra
    Certify(Opts),
    /// Write the presentation as JSON
    Export(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Tensor,
    Nsym,
    Fqsym,
    SquareZero,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Built-in model
    #[arg(long, value_enum, required_unless_present = "file", conflicts_with = "file")]
    model: Option<Model>,
    /// Presentation JSON file
    #[arg(long)]
    file: Option<PathBuf>,
    /// Truncation degree (default 4 for models; for files, the file's own)
    #[arg(short = 'N', long = "max-degree")]
    max_degree: Option<usize>,
    /// Number of letters of the tensor model
    #[arg(long, default_value_t = 2)]
    letters: usize,
    /// Largest allowed degree for fqsym
    #[arg(long, default_value_t = primfree::models::FQSYM_DEFAULT_CAP)]
    fqsym_cap: usize,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for cached filtration data
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Ignore the cache directory
    #[arg(long)]
    no_cache: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

enum Failure {
    Input(String),
    Resource(String),
    Verdict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(m) => Failure::Resource(m),
            Error::AxiomFailure(_) => Failure::Verdict(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<bool, Failure>;

fn load(opts: &Opts) -> Result<Presentation, Failure> {
    if opts.max_degree == Some(0) {
        return Err(Failure::Input("-N must be at least 1".into()));
    }
    if let Some(path) = &opts.file {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        let h = from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        return match opts.max_degree {
            None => Ok(h),
            Some(n) if n <= h.max_degree() => Ok(h.truncate(n)),
            Some(n) => Err(Failure::Input(format!(
                "-N {n} exceeds the file's truncation degree {}",
                h.max_degree()
            ))),
        };
    }
    let n = opts.max_degree.unwrap_or(4);
    let h = match opts.model.expect("clap enforces one input") {
        Model::Tensor => tensor_model(opts.letters, n)?,
        Model::Nsym => nsym_model(n)?,
        Model::Fqsym => fqsym_model_capped(n, opts.fqsym_cap)?,
        Model::SquareZero => square_zero_model(n)?,
    };
    Ok(h)
}

fn prepared(opts: &Opts, h: &Presentation) -> Result<Prepared, Failure> {
    let cache = match (&opts.cache_dir, opts.no_cache) {
        (Some(dir), false) => Some(
            Cache::new(dir, &content_hash(h)?)
                .map_err(|e| Failure::Input(format!("cache directory {}: {e}", dir.display())))?,
        ),
        _ => None,
    };
    if let Some(hit) = cache.as_ref().and_then(|c| c.load(h)) {
        return Ok(hit);
    }
    let p = prepare(h)?;
    if let Some(c) = &cache {
        if let Err(e) = c.store(&p) {
            eprintln!("warning: {e}");
        }
    }
    Ok(p)
}

fn emit(opts: &Opts, json: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
    let body = match opts.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(json).expect("values serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => text(),
    };
    match &opts.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn header(h: &Presentation) -> Result<Value, Failure> {
    Ok(json!({
        "tool_version": TOOL_VERSION,
        "input_hash": content_hash(h)?,
        "model": h.name(),
        "N": h.max_degree(),
    }))
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

fn require_axioms(h: &Presentation) -> Result<(), Failure> {
    let r = check_axioms(h);
    match r.first_failure() {
        None => Ok(()),
        Some((name, c)) => Err(Failure::Verdict(format!(
            "bialgebra axioms fail: {name} at {:?}",
            c.witness
        ))),
    }
}

fn cmd_axioms(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    let r = check_axioms(&h);
    let json = merge(header(&h)?, to_value(&r));
    emit(opts, &json, || {
        let mut s = String::new();
        for (name, c) in [
            ("connected", &r.connected),
            ("unit", &r.unit),
            ("associativity", &r.associativity),
            ("coassociativity", &r.coassociativity),
            ("counit", &r.counit),
            ("compatibility", &r.compatibility),
        ] {
            let w = c
                .witness
                .as_ref()
                .map(|w| format!("  degrees {:?} indices {:?}", w.degrees, w.indices))
                .unwrap_or_default();
            s.push_str(&format!("{name:<16} {}{w}\n", if c.ok { "ok" } else { "FAIL" }));
        }
        s.push_str(&format!("verdict          {}\n", r.verdict));
        s
    })?;
    Ok(r.verdict)
}

fn cmd_tables(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    require_axioms(&h)?;
    let p = prepared(opts, &h)?;
    let v = extract_generators(&h)?.multiplicities();
    let u = lie_generators_with(&h, &p.primitives)?.multiplicities();
    let rows: Vec<Value> = (0..=h.max_degree())
        .map(|n| {
            json!({
                "n": n,
                "dim": h.dim(n),
                "prim": p.primitives[n].dim(),
                "filtration": p.filtration.layer_dims(n),
                "algebra_generators": v[n],
                "lie_generators": u[n],
            })
        })
        .collect();
    let json = merge(header(&h)?, json!({ "rows": rows }));
    emit(opts, &json, || {
        let mut s = format!(
            "{:>3} {:>6} {:>6} {:>4} {:>4}  filtration\n",
            "n", "dim", "prim", "v", "u"
        );
        for n in 0..=h.max_degree() {
            let layers: Vec<String> = p.filtration.layer_dims(n).iter().map(|d| d.to_string()).collect();
            s.push_str(&format!(
                "{:>3} {:>6} {:>6} {:>4} {:>4}  {}\n",
                n,
                h.dim(n),
                p.primitives[n].dim(),
                v[n],
                u[n],
                layers.join(" ")
            ));
        }
        s
    })?;
    Ok(true)
}

fn combinations(h: &Presentation, n: usize, basis: &[primfree::exactq::QVector]) -> Vec<String> {
    basis.iter().map(|v| format_combination(h.labels(n), v)).collect()
}

fn cmd_primitives(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    let prims: Vec<_> = (0..=h.max_degree())
        .map(|n| {
            if n == 0 {
                Ok(primfree::exactq::Subspace::zero(h.dim(0)))
            } else {
                primfree::lie::primitives(&h, n)
            }
        })
        .collect::<primfree::Result<_>>()?;
    let degrees: Vec<Value> = prims
        .iter()
        .enumerate()
        .map(|(n, s)| json!({ "n": n, "dim": s.dim(), "basis": combinations(&h, n, s.basis()) }))
        .collect();
    let json = merge(header(&h)?, json!({ "degrees": degrees }));
    emit(opts, &json, || {
        let mut s = String::new();
        for (n, p) in prims.iter().enumerate().skip(1) {
            s.push_str(&format!("degree {n}: dim {}\n", p.dim()));
            for c in combinations(&h, n, p.basis()) {
                s.push_str(&format!("  {c}\n"));
            }
        }
        s
    })?;
    Ok(true)
}

fn cmd_filtration(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    require_axioms(&h)?;
    let p = prepared(opts, &h)?;
    let degrees: Vec<Value> = (0..=h.max_degree())
        .map(|n| {
            let layers: Vec<Value> = p
                .filtration
                .layers(n)
                .iter()
                .enumerate()
                .map(|(k, l)| json!({ "k": k, "dim": l.dim(), "basis": combinations(&h, n, l.basis()) }))
                .collect();
            json!({ "n": n, "layers": layers })
        })
        .collect();
    let json = merge(header(&h)?, json!({ "degrees": degrees }));
    emit(opts, &json, || {
        let mut s = String::new();
        for n in 0..=h.max_degree() {
            let dims: Vec<String> = p.filtration.layer_dims(n).iter().map(|d| d.to_string()).collect();
            s.push_str(&format!("degree {n}: {}\n", dims.join(" ⊇ ")));
        }
        s
    })?;
    Ok(true)
}

fn cmd_grcheck(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    require_axioms(&h)?;
    let p = prepared(opts, &h)?;
    let gr = gr_bialgebra_with(&h, p.filtration.clone())?;
    let axioms = check_axioms(&gr.presentation);
    let cocomm = check_cocommutative(&gr.presentation);
    let input_cocomm = check_cocommutative(&h);
    let tensor = check_gr_tensor_iso(&p.filtration, &p.filtration);
    let dims_ok = gr.presentation.dim_vec() == h.dim_vec();
    let ok = axioms.verdict && cocomm.ok && tensor.ok && dims_ok;
    let json = merge(
        header(&h)?,
        json!({
            "input_cocommutative": to_value(&input_cocomm),
            "gr_axioms": to_value(&axioms),
            "gr_cocommutative": to_value(&cocomm),
            "gr_tensor": to_value(&tensor),
            "dims_preserved": dims_ok,
            "gr_basis": gr.presentation.basis_labels(),
            "verdict": ok,
        }),
    );
    emit(opts, &json, || {
        format!(
            "input cocommutative  {}\nGr axioms            {}\nGr cocommutative     {}\nGr tensor dims       {}\ndims preserved       {}\nverdict              {}\n",
            input_cocomm.ok, axioms.verdict, cocomm.ok, tensor.ok, dims_ok, ok
        )
    })?;
    Ok(ok)
}

fn cmd_generators(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    let g = extract_generators(&h)?;
    let free = check_free(&h, &g)?;
    let dims: Vec<i64> = h.dim_vec().into_iter().map(|d| d as i64).collect();
    let inverted = invert_hilbert(&dims)?;
    let mut json = merge(
        header(&h)?,
        json!({
            "algebra_generators": (0..=h.max_degree())
                .map(|n| combinations(&h, n, &g.generators[n]))
                .collect::<Vec<_>>(),
            "multiplicities": g.multiplicities(),
            "hilbert_inversion": inverted,
            "free": to_value(&free),
        }),
    );
    let mut lie_u = None;
    if check_axioms(&h).verdict {
        let prims = primfree::lie::all_primitives(&h)?;
        let lie = lie_generators_with(&h, &prims)?;
        lie_u = Some(lie.multiplicities());
        json = merge(
            json,
            json!({
                "lie_generators": (0..=h.max_degree())
                    .map(|n| combinations(&h, n, &lie.generators[n]))
                    .collect::<Vec<_>>(),
                "lie_multiplicities": lie.multiplicities(),
            }),
        );
    }
    emit(opts, &json, || {
        let mut s = format!("algebra generators {:?}\nhilbert inversion  {:?}\nfree               {}\n", g.multiplicities(), inverted, free.ok);
        if let Some(u) = &lie_u {
            s.push_str(&format!("lie generators     {u:?}\n"));
        }
        s
    })?;
    Ok(free.ok)
}

#[derive(Serialize)]
struct CertificateFile<'a> {
    tool_version: &'a str,
    input_hash: String,
    #[serde(flatten)]
    certificate: &'a Certificate,
}

fn cmd_certify(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    let mut failure = None;
    let cert = certify_with(&h, |h| {
        prepared(opts, h).map_err(|f| {
            let msg = match &f {
                Failure::Input(m) | Failure::Resource(m) | Failure::Verdict(m) => m.clone(),
            };
            failure = Some(f);
            Error::Precondition(msg)
        })
    });
    let cert = match (cert, failure) {
        (_, Some(f)) => return Err(f),
        (c, None) => c?,
    };
    let file = CertificateFile {
        tool_version: TOOL_VERSION,
        input_hash: content_hash(&h)?,
        certificate: &cert,
    };
    emit(opts, &to_value(&file), || {
        let mut s = format!("model {}  N = {}\n", cert.model, cert.max_degree);
        for st in &cert.stages {
            let w = st.witness_degree.map(|n| format!("  (degree {n})")).unwrap_or_default();
            s.push_str(&format!("{:<18} {}{w}\n", st.name, to_value(&st.status).as_str().unwrap_or("")));
        }
        s.push_str(&format!("verdict            {}\n", cert.verdict));
        s
    })?;
    Ok(cert.verdict)
}

fn cmd_export(opts: &Opts) -> Outcome {
    let h = load(opts)?;
    let mut body = to_json(&h)?;
    body.push('\n');
    match &opts.out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{body}"),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Axioms(o) => cmd_axioms(o),
        Command::Tables(o) => cmd_tables(o),
        Command::Primitives(o) => cmd_primitives(o),
        Command::Filtration(o) => cmd_filtration(o),
        Command::Grcheck(o) => cmd_grcheck(o),
        Command::Generators(o) => cmd_generators(o),
        Command::Certify(o) => cmd_certify(o),
        Command::Export(o) => cmd_export(o),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verdict(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
