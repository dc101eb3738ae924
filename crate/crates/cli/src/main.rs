//! `toric-log`: batch front end for the toric-log library.
//!
//! Exit status: 0 on success (Free, Applies, certificate found), 1 on a
//! negative outcome (NotCertified, DoesNotApply, nothing found), 2 on
//! input errors.

mod document;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use document::{read_json, ClassDocument, JobDocument, SyzygyDocument, VarietyDocument, VarietyReference};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use toric_log::cox::{parse_polynomial, Rational, SparsePolynomial};
use toric_log::foliation::{foliation_check, FoliationVerdict};
use toric_log::jacobian::{euler_relation_check, extended_syzygy_basis, syzygy_basis};
use toric_log::saito::{
    braid_certificate, cone_extension, invariant_divisor_certificate, saito_search, saito_verify, ConditionII,
    SaitoCertificate, SearchOptions,
};
use toric_log::toric::{ClassElement, ToricData};
use toric_log::{Error, Result};

#[derive(Parser)]
#[command(name = "toric-log", version, about = "Logarithmic derivations on simplicial toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Run the job described by a JSON document instead of a subcommand.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Format of the report on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan and print its class group and degree basis.
    VarietyCheck { variety: PathBuf },
    /// Monomial basis of a graded piece of the Cox ring.
    Hzero {
        variety: PathBuf,
        #[arg(long)]
        kappa: String,
    },
    /// Homogeneous syzygies of the gradients of one or more polynomials.
    Syzygies {
        variety: PathBuf,
        #[arg(long = "f", required = true)]
        f: Vec<String>,
        #[arg(long)]
        kappa: String,
        /// Allow a multiple of f on the right-hand side.
        #[arg(long)]
        extended: bool,
    },
    /// Check a proposed set of syzygies against the Saito criterion.
    SaitoVerify {
        variety: PathBuf,
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        syzygies: PathBuf,
    },
    /// Search bounded syzygy degrees for a freeness certificate.
    SaitoSearch {
        variety: PathBuf,
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        max_box: Option<u32>,
        #[arg(long)]
        combination_limit: Option<u64>,
    },
    /// Certificate for the braid divisor of the degree groups.
    Braid { variety: PathBuf },
    /// Certificate for the invariant divisor x_1⋯x_s.
    Invariant {
        variety: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Lift a certificate on a weighted projective space to one more weight.
    ConeExtend {
        variety: PathBuf,
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        syzygies: PathBuf,
        #[arg(long)]
        new_weight: u64,
    },
    /// Check whether a tuple of polynomials induces a foliation.
    Foliation {
        variety: PathBuf,
        #[arg(long = "f", required = true)]
        f: Vec<String>,
    },
    /// Check the Euler relation of f for every free coordinate.
    EulerCheck {
        variety: PathBuf,
        #[arg(long = "f")]
        f: String,
    },
}

struct Outcome {
    success: bool,
    text: String,
    result: Value,
}

fn job_from_command(command: Command) -> Result<JobDocument> {
    let mut job = JobDocument {
        command: String::new(),
        variety: VarietyReference::Path(PathBuf::new()),
        polynomials: Vec::new(),
        syzygies: None,
        kappa: None,
        extended: false,
        max_box: None,
        combination_limit: None,
        s: None,
        new_weight: None,
    };
    let (name, variety) = match command {
        Command::VarietyCheck { variety } => ("variety-check", variety),
        Command::Hzero { variety, kappa } => {
            job.kappa = Some(ClassDocument::Text(kappa));
            ("hzero", variety)
        }
        Command::Syzygies { variety, f, kappa, extended } => {
            job.polynomials = f;
            job.kappa = Some(ClassDocument::Text(kappa));
            job.extended = extended;
            ("syzygies", variety)
        }
        Command::SaitoVerify { variety, f, syzygies } => {
            job.polynomials = vec![f];
            job.syzygies = Some(read_json::<SyzygyDocument>(&syzygies)?.into_vectors());
            ("saito-verify", variety)
        }
        Command::SaitoSearch { variety, f, max_box, combination_limit } => {
            job.polynomials = vec![f];
            job.max_box = max_box;
            job.combination_limit = combination_limit;
            ("saito-search", variety)
        }
        Command::Braid { variety } => ("braid", variety),
        Command::Invariant { variety, s } => {
            job.s = Some(s);
            ("invariant", variety)
        }
        Command::ConeExtend { variety, f, syzygies, new_weight } => {
            job.polynomials = vec![f];
            job.syzygies = Some(read_json::<SyzygyDocument>(&syzygies)?.into_vectors());
            job.new_weight = Some(new_weight);
            ("cone-extend", variety)
        }
        Command::Foliation { variety, f } => {
            job.polynomials = f;
            ("foliation", variety)
        }
        Command::EulerCheck { variety, f } => {
            job.polynomials = vec![f];
            ("euler-check", variety)
        }
    };
    job.command = name.to_string();
    job.variety = VarietyReference::Inline(read_json(&variety)?);
    Ok(job)
}

fn job_from_file(path: &Path) -> Result<JobDocument> {
    let mut job: JobDocument = read_json(path)?;
    if let VarietyReference::Path(p) = &job.variety {
        let base = path.parent().unwrap_or(Path::new("."));
        job.variety = VarietyReference::Inline(read_json(&base.join(p))?);
    }
    Ok(job)
}

fn input_hash(job: &JobDocument) -> String {
    let bytes = serde_json::to_vec(job).expect("job documents serialize");
    hex::encode(Sha256::digest(&bytes))
}

struct Context<'a> {
    job: &'a JobDocument,
    doc: &'a VarietyDocument,
    td: ToricData,
}

impl Context<'_> {
    fn names(&self) -> &[String] {
        &self.doc.variables
    }

    fn polynomials(&self) -> Result<Vec<SparsePolynomial>> {
        self.job
            .polynomials
            .iter()
            .map(|t| parse_polynomial(t, self.names()))
            .collect()
    }

    fn single(&self) -> Result<SparsePolynomial> {
        match self.polynomials()?.as_slice() {
            [f] => Ok(f.clone()),
            fs => Err(Error::InvalidInput(format!("expected exactly one polynomial, got {}", fs.len()))),
        }
    }

    fn kappa(&self) -> Result<ClassElement> {
        self.job
            .kappa
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("missing kappa".into()))?
            .resolve(&self.td)
    }

    fn syzygies(&self) -> Result<Vec<Vec<SparsePolynomial>>> {
        let lists = self
            .job
            .syzygies
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("missing syzygies".into()))?;
        lists
            .iter()
            .map(|v| v.iter().map(|t| parse_polynomial(t, self.names())).collect())
            .collect()
    }

    fn text(&self, p: &SparsePolynomial) -> String {
        p.to_text(self.names())
    }
}

fn class_text(c: &ClassElement) -> String {
    format!("({c})")
}

fn classes_text(cs: &[ClassElement]) -> String {
    cs.iter().map(class_text).collect::<Vec<_>>().join(" ")
}

fn certificate_text(out: &mut String, cert: &SaitoCertificate, names: &[String]) {
    let _ = writeln!(out, "divisor: {} of class {}", cert.divisor.to_text(names), class_text(&cert.divisor_class));
    let _ = writeln!(out, "verdict: {}", report::verdict(cert.verdict));
    let _ = writeln!(out, "determinant: {}", cert.determinant.to_text(names));
    if let Some(c) = &cert.scalar {
        let _ = writeln!(out, "scalar: {c}");
    }
    let _ = writeln!(out, "exponents: {}", classes_text(&cert.exponents));
    let _ = writeln!(out, "columns:");
    for c in &cert.matrix.columns {
        let role = match &c.role {
            toric_log::saito::ColumnRole::Syzygy { degree, .. } => format!("syzygy {}", class_text(degree)),
            toric_log::saito::ColumnRole::Euler { functional } => format!("euler {}", functional + 1),
        };
        let entries: Vec<String> = c.entries.iter().map(|p| p.to_text(names)).collect();
        let _ = writeln!(out, "  {role}: [{}]", entries.join(", "));
    }
    let ii = match &cert.condition_ii {
        ConditionII::NotEffective => "not effective".to_string(),
        ConditionII::Effective { witness } => format!("effective, witness {witness:?}"),
        ConditionII::Skipped => "skipped".to_string(),
        ConditionII::Undetermined => "undetermined".to_string(),
    };
    let _ = writeln!(out, "condition (ii): {ii}");
    let iii: Vec<String> = cert
        .condition_iii
        .iter()
        .map(|v| v.map_or("?".to_string(), |b| b.to_string()))
        .collect();
    let _ = writeln!(out, "condition (iii): [{}]", iii.join(", "));
    if let Some(split) = &cert.induced_splitting {
        let summands: Vec<String> = split.iter().map(|c| format!("O({c})")).collect();
        let _ = writeln!(out, "splitting: {}", summands.join(" + "));
    }
    for note in &cert.notes {
        let _ = writeln!(out, "note: {note}");
    }
}

fn certificate_outcome(ctx: &Context, cert: &SaitoCertificate, mut text: String) -> Outcome {
    certificate_text(&mut text, cert, ctx.names());
    Outcome {
        success: cert.is_free(),
        text,
        result: json!({ "certificate": report::certificate(cert, ctx.names()) }),
    }
}

fn variety_text(td: &ToricData, doc: &VarietyDocument) -> String {
    let mut out = String::new();
    let torsion: String = td
        .class_group
        .invariant_factors
        .iter()
        .map(|d| format!(" + Z/{d}"))
        .collect();
    let _ = writeln!(out, "variety {} (dim {}, {} variables)", doc.name, td.dim(), td.nvars());
    let _ = writeln!(out, "class group: Z^{}{torsion}", td.rho());
    let _ = writeln!(out, "degrees (free|torsion):");
    for (name, d) in doc.variables.iter().zip(&td.degrees) {
        let _ = writeln!(out, "  {name}: {d}");
    }
    let _ = writeln!(out, "anticanonical: {}", td.anticanonical);
    let _ = writeln!(out, "complete: {}, projective: {}", td.complete, td.projective);
    out
}

fn execute(ctx: &Context) -> Result<Outcome> {
    let td = &ctx.td;
    let names = ctx.names();
    match ctx.job.command.as_str() {
        "variety-check" => Ok(Outcome {
            success: true,
            text: variety_text(td, ctx.doc),
            result: json!({}),
        }),
        "hzero" => {
            let kappa = ctx.kappa()?;
            let basis = td.monomial_basis(&kappa)?;
            let monomials: Vec<String> = basis
                .monomials
                .iter()
                .map(|e| SparsePolynomial::from_terms(td.nvars(), [(e.clone(), Rational::from_integer(1.into()))]).to_text(names))
                .collect();
            let mut text = format!("h0 of class {} = {}\n", class_text(&kappa), monomials.len());
            for m in &monomials {
                let _ = writeln!(text, "  {m}");
            }
            Ok(Outcome {
                success: true,
                text,
                result: json!({
                    "class": report::class(&kappa),
                    "dimension": monomials.len(),
                    "vanishes": monomials.is_empty(),
                    "monomials": monomials,
                }),
            })
        }
        "syzygies" => {
            let fs = ctx.polynomials()?;
            let kappa = ctx.kappa()?;
            let space = if ctx.job.extended {
                match fs.as_slice() {
                    [f] => extended_syzygy_basis(td, f, &kappa)?,
                    _ => return Err(Error::InvalidInput("extended syzygies take exactly one polynomial".into())),
                }
            } else {
                syzygy_basis(td, &fs, &kappa)?
            };
            let mut text = format!("syzygies of degree {}: dimension {}\n", class_text(&kappa), space.dimension());
            for v in &space.basis {
                let entries: Vec<String> = v.entries.iter().map(|p| ctx.text(p)).collect();
                let _ = writeln!(text, "  [{}]", entries.join(", "));
            }
            Ok(Outcome {
                success: true,
                text,
                result: json!({ "space": report::syzygy_space(&space, names) }),
            })
        }
        "saito-verify" => {
            let cert = saito_verify(td, &ctx.single()?, &ctx.syzygies()?)?;
            Ok(certificate_outcome(ctx, &cert, String::new()))
        }
        "saito-search" => {
            let defaults = SearchOptions::default();
            let options = SearchOptions {
                max_box: ctx.job.max_box.unwrap_or(defaults.max_box),
                combination_limit: ctx.job.combination_limit.unwrap_or(defaults.combination_limit),
            };
            match saito_search(td, &ctx.single()?, &options)? {
                Some(cert) => Ok(certificate_outcome(ctx, &cert, String::new())),
                None => Ok(Outcome {
                    success: false,
                    text: format!("no certificate with syzygy degrees in the box of radius {}\n", options.max_box),
                    result: json!({ "certificate": null, "max_box": options.max_box }),
                }),
            }
        }
        "braid" => {
            let (_, cert) = braid_certificate(td)?;
            Ok(certificate_outcome(ctx, &cert, String::new()))
        }
        "invariant" => {
            let s = ctx.job.s.ok_or_else(|| Error::InvalidInput("missing s".into()))?;
            let cert = invariant_divisor_certificate(td, s)?;
            Ok(certificate_outcome(ctx, &cert, String::new()))
        }
        "cone-extend" => {
            let w = ctx
                .job
                .new_weight
                .ok_or_else(|| Error::InvalidInput("missing new weight".into()))?;
            let cert = saito_verify(td, &ctx.single()?, &ctx.syzygies()?)?;
            let (cone, lifted) = cone_extension(td, &cert, w)?;
            let mut cone_names = names.to_vec();
            let fresh = (0..)
                .map(|i| if i == 0 { "w".to_string() } else { format!("w{i}") })
                .find(|n| !names.contains(n))
                .expect("some fresh name");
            cone_names.push(fresh);
            let cone_doc = VarietyDocument {
                name: format!("cone over {}", ctx.doc.name),
                dim: cone.dim(),
                variables: cone_names.clone(),
                rays: cone
                    .fan
                    .rays
                    .iter()
                    .map(|r| r.iter().map(|v| i64::try_from(v).expect("small rays")).collect())
                    .collect(),
                max_cones: cone.fan.max_cones.iter().map(|c| c.iter().map(|i| i + 1).collect()).collect(),
                complete: cone.complete,
                projective: cone.projective,
            };
            let mut text = variety_text(&cone, &cone_doc);
            certificate_text(&mut text, &lifted, &cone_names);
            Ok(Outcome {
                success: lifted.is_free(),
                text,
                result: json!({
                    "cone": report::variety(&cone, &cone_doc.name, &cone_names),
                    "cone_document": cone_doc,
                    "certificate": report::certificate(&lifted, &cone_names),
                }),
            })
        }
        "foliation" => {
            let report = foliation_check(td, &ctx.polynomials()?)?;
            let mut text = String::new();
            match &report.overall {
                FoliationVerdict::Applies => {
                    let _ = writeln!(text, "Applies: foliation of codimension {}", report.codimension);
                }
                FoliationVerdict::DoesNotApply(why) => {
                    let _ = writeln!(text, "DoesNotApply: {}", why.code());
                }
            }
            let v = &report.verdicts;
            let _ = writeln!(text, "q = {}, k = {}, n = {}", report.q, report.k, report.n);
            let _ = writeln!(
                text,
                "k < n: {}, rank window: {}, coprime: {}, independent: {}, Cayley-Bacharach: {}",
                v.k_below_n, v.rank_window, v.coprime, v.independent, v.cayley_bacharach
            );
            if let Some((i, j, g)) = &report.coprime_witness {
                let _ = writeln!(text, "common factor of f{} and f{}: {}", i + 1, j + 1, ctx.text(g));
            }
            if let Some(subset) = &report.cayley_bacharach_offending {
                let points: Vec<String> = subset.iter().map(|&i| class_text(&report.profile.degrees[i])).collect();
                let _ = writeln!(text, "degrees on one hyperplane: {}", points.join(" "));
            }
            if let Some(trivial) = report.minor_gcd_trivial {
                let _ = writeln!(text, "maximal minors of diag(f)A coprime: {trivial}");
            }
            for note in &report.notes {
                let _ = writeln!(text, "note: {note}");
            }
            Ok(Outcome {
                success: report.applies(),
                text,
                result: json!({ "foliation": report::foliation(&report, names) }),
            })
        }
        "euler-check" => {
            let f = ctx.single()?;
            let checks = (0..td.rho())
                .map(|j| euler_relation_check(td, &f, j))
                .collect::<Result<Vec<bool>>>()?;
            let mut text = String::new();
            for (j, ok) in checks.iter().enumerate() {
                let _ = writeln!(text, "Euler relation {}: {ok}", j + 1);
            }
            Ok(Outcome {
                success: checks.iter().all(|&b| b),
                text,
                result: json!({ "relations": checks }),
            })
        }
        other => Err(Error::InvalidInput(format!("unknown command `{other}`"))),
    }
}

/// On failure the input hash is included when the job got far enough to have one.
type RunResult = std::result::Result<(JobDocument, String, Outcome, Value), (Option<String>, Error)>;

fn run(cli: Cli) -> RunResult {
    let job = match (cli.command, &cli.job) {
        (Some(_), Some(_)) => Err(Error::InvalidInput("--job cannot be combined with a subcommand".into())),
        (Some(command), None) => job_from_command(command),
        (None, Some(path)) => job_from_file(path),
        (None, None) => Err(Error::InvalidInput("a subcommand or --job is required".into())),
    }
    .map_err(|e| (None, e))?;
    let hash = input_hash(&job);
    let VarietyReference::Inline(doc) = &job.variety else {
        unreachable!("variety documents are resolved on load")
    };
    let td = doc.build().map_err(|e| (Some(hash.clone()), e))?;
    let variety = report::variety(&td, &doc.name, &doc.variables);
    let ctx = Context { job: &job, doc, td };
    let outcome = execute(&ctx).map_err(|e| (Some(hash.clone()), e))?;
    Ok((job, hash, outcome, variety))
}

fn emit(format: Format, out: Option<&Path>, text: &str, json_report: &Value) -> std::io::Result<()> {
    let rendered = serde_json::to_string_pretty(json_report).expect("reports serialize");
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{rendered}"),
    }
    if let Some(path) = out {
        std::fs::write(path, rendered + "\n")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    let (text, json_report, code) = match run(cli) {
        Ok((job, hash, outcome, variety)) => {
            let status = if outcome.success { "ok" } else { "negative" };
            let json_report = json!({
                "command": job.command,
                "input_sha256": hash,
                "status": status,
                "variety": variety,
                "result": outcome.result,
            });
            let mut text = format!("input sha256: {hash}\n");
            text.push_str(&outcome.text);
            (text, json_report, if outcome.success { 0 } else { 1 })
        }
        Err((hash, e)) => {
            eprintln!("error[{}]: {e}", e.code());
            let json_report = json!({
                "status": "error",
                "input_sha256": hash,
                "error": { "code": e.code(), "message": e.to_string() },
            });
            (String::new(), json_report, 2)
        }
    };
    if let Err(e) = emit(format, out.as_deref(), &text, &json_report) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
