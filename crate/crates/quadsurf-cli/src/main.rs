//! `quadsurf`: command-line front end for the quadsurf library.

mod input;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadsurf::catalog::{self, VerifyStatus};
use quadsurf::classifier::{enriques_structure_check_with, surface_type, AssumptionMode, SurfaceType};
use quadsurf::fixed_points::{common_fixed_set, element_eig_class, fixed_set, FixedPointSet};
use quadsurf::matrix_group::{classify_gl, eigen_classify, element_order};
use quadsurf::quad_order::make_ring;
use quadsurf::torus::{affine_order, close_affine, AffineGroup, DEFAULT_AFFINE_CAP};
use quadsurf::{CatalogLabel, Error};
use serde_json::{json, Value};

use crate::input::{parse_document, parse_param, InputDocument, InputError, ParseError};

#[derive(Parser, Debug)]
#[command(name = "quadsurf", version, about = "Finite automorphism groups of E×E and their quotient surfaces")]
struct Cli {
    /// Closure bound for generated groups.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress output on success.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input document, `-` for standard input.
    #[arg(long, short)]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order and eigenvalue class of each generator.
    Element(InputArg),
    /// Closure order, catalog label, s and SL part of the generated group.
    Group(InputArg),
    /// Kodaira–Enriques type of A/H.
    Surface {
        #[command(flatten)]
        input: InputArg,
        /// Also evaluate the Enriques structure check with the assumption
        /// quantified over liftings to C².
        #[arg(long)]
        lifting_assumption: bool,
    },
    /// Fixed points of one generator, of all generators jointly, or of each.
    FixedPoints {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, conflicts_with = "common")]
        element: Option<usize>,
        #[arg(long)]
        common: bool,
    },
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    /// Check every realizable entry.
    Verify,
    /// Generators of an entry.
    Realize {
        #[arg(long)]
        label: String,
        /// Free parameter, e.g. `b1=0,1` for b₁ = θ.
        #[arg(long)]
        param: Vec<String>,
    },
    /// All entries with their stated data.
    List,
}

enum Failure {
    Parse(ParseError),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Parse(p) => Failure::Parse(p),
            InputError::Domain(d) => Failure::Domain(d),
        }
    }
}

/// What a subcommand produced: JSON, its text rendering and an exit code.
struct Output {
    json: Value,
    text: String,
    code: u8,
    /// Print a JSON array as one compact document per line.
    lines: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0, lines: false }
    }
}

fn read_input(arg: &InputArg) -> Result<InputDocument, Failure> {
    let text = if arg.input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| ParseError { path: "<stdin>".into(), message: e.to_string() })?;
        s
    } else {
        fs::read_to_string(&arg.input)
            .map_err(|e| ParseError { path: arg.input.display().to_string(), message: e.to_string() })?
    };
    Ok(parse_document(&text)?)
}

fn cap(cli: &Cli, doc: &InputDocument) -> usize {
    cli.cap.or(doc.cap).unwrap_or(DEFAULT_AFFINE_CAP)
}

fn close(cli: &Cli, doc: &InputDocument) -> Result<AffineGroup, Failure> {
    Ok(close_affine(doc.ring, &doc.generators, cap(cli, doc))?)
}

fn element(cli: &Cli, doc: &InputDocument) -> Result<Output, Failure> {
    let mut items = Vec::new();
    let mut text = String::new();
    for (i, g) in doc.generators.iter().enumerate() {
        let l = g.linear_part();
        let order = element_order(l);
        let class = if order.is_some() { eigen_classify(l)? } else { None };
        let aff = affine_order(g, cap(cli, doc))?;
        items.push(json!({
            "index": i,
            "order": order,
            "affine_order": aff,
            "det": l.det(),
            "trace": l.trace(),
            "eigenvalues": class,
            "eig_class": element_eig_class(g),
        }));
        text.push_str(&format!(
            "generator {}: order {}, affine order {}, det {}, trace {}, eigenvalues {}\n",
            i,
            order.map_or("infinite".into(), |o| o.to_string()),
            aff.map_or("infinite".into(), |o| o.to_string()),
            l.det(),
            l.trace(),
            class.map_or("-".into(), |c| c.pair().to_string()),
        ));
    }
    Ok(Output::ok(json!({ "ring": ring_json(doc), "elements": items }), text))
}

fn ring_json(doc: &InputDocument) -> Value {
    json!({ "d": doc.ring.d(), "f": doc.ring.f() })
}

fn group(cli: &Cli, doc: &InputDocument) -> Result<Output, Failure> {
    let h = close(cli, doc)?;
    let rec = classify_gl(&h.linear_image);
    let (label, matches, sl) = match &rec {
        Ok(r) => (Some(r.label), r.matches.clone(), Some(r.signature.sl_label)),
        Err(_) => (None, Vec::new(), None),
    };
    let json = json!({
        "ring": ring_json(doc),
        "order": h.order(),
        "translation_order": h.translation_subgroup.len(),
        "linear_order": h.linear_image.order(),
        "s": h.linear_image.s,
        "sl_part": sl,
        "catalog_label": label,
        "catalog_matches": matches,
        "catalog_error": rec.as_ref().err().map(|e| e.to_string()),
    });
    let text = format!(
        "order {} (translations {}, linear image {}), s = {}, SL part {}, catalog {}\n",
        h.order(),
        h.translation_subgroup.len(),
        h.linear_image.order(),
        h.linear_image.s,
        sl.map_or("-".into(), |l| l.to_string()),
        labels(&matches, &label)
    );
    Ok(Output::ok(json, text))
}

fn labels(matches: &[CatalogLabel], label: &Option<CatalogLabel>) -> String {
    match label {
        None => "not recognized".into(),
        Some(_) => matches.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" / "),
    }
}

fn surface(cli: &Cli, doc: &InputDocument, lifting: bool) -> Result<Output, Failure> {
    let h = close(cli, doc)?;
    let report = surface_type(&h);
    let mut json = serde_json::to_value(&report).expect("report serializes");
    if lifting {
        let v = match enriques_structure_check_with(&h, AssumptionMode::Lifting) {
            Ok(b) => Value::Bool(b),
            Err(_) => Value::Null,
        };
        json.as_object_mut().expect("object").insert("enriques_structure_lifting".into(), v);
    }
    let mut text = format!(
        "{}{}\n|H| = {}, |T(H)| = {}, |K| = {}, |L(H)| = {}, s = {}, catalog {}\n",
        report.surface_type,
        if report.smooth { " (smooth quotient)" } else { "" },
        report.group_order,
        report.translation_order,
        report.kernel_det_order,
        report.linear_order,
        report.s,
        labels(&report.catalog_matches, &report.catalog_label),
    );
    if report.surface_type == SurfaceType::Enriques {
        text.push_str(&format!(
            "[H:K] = {}, generator-shape criterion {}\n",
            report.enriques_index.unwrap_or(0),
            if report.enriques_structure == Some(true) { "holds" } else { "fails" }
        ));
    }
    for g in &report.fixed_point_summary {
        text.push_str(&format!("generator {}: {:?}, {}\n", g.generator, g.eig_class, fps_text(&g.fixed_points)));
    }
    Ok(Output::ok(json, text))
}

fn fps_text(f: &FixedPointSet) -> String {
    match f {
        FixedPointSet::Empty => "no fixed points".into(),
        FixedPointSet::Finite { count: 1, .. } => "1 fixed point".into(),
        FixedPointSet::Finite { count, .. } => format!("{} fixed points", count),
        FixedPointSet::PositiveDimensional { dimension, component_count, .. } => {
            format!("fixed locus of dimension {} with {} components", dimension, component_count)
        }
    }
}

fn fixed_points(doc: &InputDocument, element: Option<usize>, common: bool) -> Result<Output, Failure> {
    let n = doc.generators.len();
    let one = |k: usize| -> Result<(Value, String), Failure> {
        let g = doc.generators.get(k).ok_or_else(|| ParseError {
            path: "--element".into(),
            message: format!("index {} out of range for {} generators", k, n),
        })?;
        let f = fixed_set(g);
        let text = format!("generator {}: {}\n", k, fps_text(&f));
        Ok((json!({ "element": k, "fixed_points": f }), text))
    };
    if let Some(k) = element {
        let (j, t) = one(k)?;
        return Ok(Output::ok(j, t));
    }
    if common {
        let f = common_fixed_set(&doc.generators);
        let text = format!("common: {}\n", fps_text(&f));
        return Ok(Output::ok(json!({ "common": true, "fixed_points": f }), text));
    }
    let mut items = Vec::new();
    let mut text = String::new();
    for k in 0..n {
        let (j, t) = one(k)?;
        items.push(j);
        text.push_str(&t);
    }
    Ok(Output::ok(Value::Array(items), text))
}

fn catalog_cmd(cmd: &CatalogCommand) -> Result<Output, Failure> {
    match cmd {
        CatalogCommand::Verify => {
            let report = catalog::verify_catalog();
            let lines: Vec<Value> =
                report.lines.iter().map(|l| serde_json::to_value(l).expect("line serializes")).collect();
            let mut text: String = report.lines.iter().map(|l| format!("{}\n", l)).collect();
            let not_realizable =
                report.lines.iter().filter(|l| l.status == VerifyStatus::NotRealizable).count();
            text.push_str(&format!(
                "{} passed, {} failed, {} not realizable over R\n",
                report.passes(),
                report.failures(),
                not_realizable
            ));
            Ok(Output {
                json: Value::Array(lines),
                text,
                code: if report.failures() == 0 { 0 } else { 2 },
                lines: true,
            })
        }
        CatalogCommand::Realize { label, param } => {
            let label: CatalogLabel =
                label.parse().map_err(|_| Failure::Domain(Error::UnknownLabel(label.clone())))?;
            let entry = catalog::entry(label);
            let ring = match &entry.realization {
                Some(r) => make_ring(r.d, r.f)?,
                None => return Err(catalog::realize(label, None).unwrap_err().into()),
            };
            let mut b1 = None;
            for p in param {
                let (k, v) = parse_param(ring, p)?;
                if k != "b1" {
                    return Err(ParseError { path: "--param".into(), message: format!("unknown parameter {:?}", k) }.into());
                }
                b1 = Some(v);
            }
            let r = catalog::realize(label, b1.as_ref())?;
            let mut text = format!("{} over {}\n", r.label, r.ring);
            for (n, g) in r.names.iter().zip(&r.generators) {
                text.push_str(&format!("{} = {}\n", n, g));
            }
            Ok(Output::ok(serde_json::to_value(&r).expect("realization serializes"), text))
        }
        CatalogCommand::List => {
            let s = catalog::summaries();
            let text = s
                .iter()
                .map(|e| {
                    format!(
                        "{:<10} |H| = {:<3} s = {} SL part {:<3} {}\n",
                        e.label.to_string(),
                        e.order,
                        e.s,
                        e.sl_part.to_string(),
                        if e.realizable { "realizable".to_string() } else { format!("over {}", e.field.unwrap_or("?")) }
                    )
                })
                .collect();
            Ok(Output::ok(serde_json::to_value(&s).expect("summaries serialize"), text))
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Element(i) => element(cli, &read_input(i)?),
        Command::Group(i) => group(cli, &read_input(i)?),
        Command::Surface { input, lifting_assumption } => surface(cli, &read_input(input)?, *lifting_assumption),
        Command::FixedPoints { input, element, common } => fixed_points(&read_input(input)?, *element, *common),
        Command::Catalog { command } => catalog_cmd(command),
    }
}

fn emit(format: Format, out: &Output) -> io::Result<()> {
    let mut w = io::stdout().lock();
    match (format, &out.json) {
        (Format::Json, Value::Array(items)) if out.lines => {
            for v in items {
                writeln!(w, "{}", v)?;
            }
        }
        (Format::Json, v) => writeln!(w, "{}", v)?,
        (Format::Text, _) => write!(w, "{}", out.text)?,
    }
    w.flush()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let detail = e.kind().to_string();
            println!("{}", json!({ "error": "UsageError", "detail": detail }));
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if !cli.quiet {
                let _ = emit(cli.format, &out);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            let (code, kind, detail) = match f {
                Failure::Parse(p) => (1, "ParseError".to_string(), p.to_string()),
                Failure::Domain(e) => (2, e.kind().to_string(), e.to_string()),
            };
            let json = json!({ "error": kind, "detail": detail });
            match cli.format {
                Format::Json => println!("{}", json),
                Format::Text => eprintln!("error: {}: {}", kind, detail),
            }
            ExitCode::from(code)
        }
    }
}
