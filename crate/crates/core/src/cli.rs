//! Command-line front end.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::constants::{full_table_with_cap, parabolic_constants, Calculator, ConstantTable, DEFAULT_TABLE_CAP};
use crate::delta::{build_q_sequences, DeltaOperator, WordCartanMatrix};
use crate::derived::{image, Basis};
use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::rootsys::{parse_word, CartanMatrix, ElementId, WeylGroup};
use crate::tablefile::{self, word_of};
use crate::verify::{verify_group, verify_oracles, CheckReport};

/// Default bound on the group order during generation.
pub const DEFAULT_GROUP_CAP: usize = 200_000;

#[derive(Debug, Parser)]
#[command(name = "kschubert", version, about = "Schubert structure constants in K(G/T) from a Cartan matrix")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand the product of two basis elements.
    Product(ProductArgs),
    /// Print or save the full table of structure constants.
    Table(TableArgs),
    /// Evaluate the elimination operator of a word Cartan matrix.
    Delta(DeltaArgs),
    /// Print the image polynomials of a word.
    Image(ImageArgs),
    /// Run consistency checks and oracle comparisons.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Named Cartan type such as A3, B2, G2, F4.
    #[arg(long = "type", value_name = "NAME", required_unless_present = "cartan", conflicts_with = "cartan")]
    pub type_name: Option<String>,
    /// File holding a Cartan matrix as a JSON array of rows or as
    /// whitespace-separated rows.
    #[arg(long, value_name = "FILE")]
    pub cartan: Option<PathBuf>,
    /// Give up when the group has more elements than this.
    #[arg(long, default_value_t = DEFAULT_GROUP_CAP)]
    pub group_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value = "demazure")]
    pub basis: Basis,
    /// First factor as comma-separated generator indices; empty for e.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub u: String,
    /// Second factor.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub v: String,
    /// Generators of the parabolic subgroup; factors must be minimal coset
    /// representatives (Grothendieck basis only).
    #[arg(long, value_name = "INDICES")]
    pub parabolic: Option<String>,
    /// Reject words that are not reduced.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value = "demazure")]
    pub basis: Basis,
    /// Restrict to minimal coset representatives of this parabolic subgroup
    /// (Grothendieck basis only).
    #[arg(long, value_name = "INDICES")]
    pub parabolic: Option<String>,
    /// Write the table as JSON to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Directory for cached full tables.
    #[arg(long, env = "KSCHUBERT_CACHE_DIR", value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Refuse to tabulate groups with more elements than this.
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    pub max_order: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DeltaArgs {
    /// Word Cartan matrix as JSON, e.g. "[[0,1],[0,0]]".
    #[arg(long, value_name = "JSON", conflicts_with_all = ["type_name", "cartan", "word"])]
    pub matrix: Option<String>,
    /// Named Cartan type, used with --word.
    #[arg(long = "type", value_name = "NAME", conflicts_with = "cartan")]
    pub type_name: Option<String>,
    /// Cartan matrix file, used with --word.
    #[arg(long, value_name = "FILE")]
    pub cartan: Option<PathBuf>,
    /// Word whose Cartan matrix is used, with --type or --cartan.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Polynomial in y1, ..., ym to evaluate.
    #[arg(long, value_name = "POLY")]
    pub poly: Option<String>,
    /// Also print the sequences q_k and q̄_k.
    #[arg(long)]
    pub show_q: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ImageArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value = "demazure")]
    pub basis: Basis,
    /// The word, as comma-separated generator indices.
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Only print the image of this element.
    #[arg(long, allow_hyphen_values = true)]
    pub element: Option<String>,
    /// Include elements whose image is zero.
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Axioms,
    Oracles,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
    pub max_order: usize,
    /// Seed for the randomized oracle comparisons.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match run(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Parse(format!("I/O error: {e}"))
}

/// Runs one command, writing results to `out` and warnings to `err`.
pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let text = match command {
        Command::Product(args) => product(args)?,
        Command::Table(args) => table(args, err)?,
        Command::Delta(args) => delta(args)?,
        Command::Image(args) => image_command(args)?,
        Command::Verify(args) => {
            let (text, ok) = verify(args)?;
            out.write_all(text.as_bytes()).map_err(io_error)?;
            return Ok(if ok { 0 } else { 1 });
        }
    };
    out.write_all(text.as_bytes()).map_err(io_error)?;
    Ok(0)
}

fn load_cartan(type_name: Option<&str>, file: Option<&Path>, cap: usize) -> Result<CartanMatrix> {
    let rows = match (type_name, file) {
        (Some(name), _) => return CartanMatrix::named(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            parse_matrix_text(&text)?
        }
        (None, None) => return Err(Error::Parse("either --type or --cartan is required".into())),
    };
    CartanMatrix::with_cap(rows, cap)
}

/// Reads a matrix written as JSON or as whitespace-separated rows.
pub fn parse_matrix_text(text: &str) -> Result<Vec<Vec<i64>>> {
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")));
    }
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad matrix entry {t:?}"))))
                .collect()
        })
        .collect()
}

fn load_group(args: &GroupArgs) -> Result<WeylGroup> {
    let cartan = load_cartan(args.type_name.as_deref(), args.cartan.as_deref(), args.group_cap)?;
    WeylGroup::generate_with_cap(&cartan, args.group_cap)
}

/// Resolves a word to its element; with `strict`, non-reduced words are
/// rejected.
fn resolve(group: &WeylGroup, text: &str, strict: bool) -> Result<ElementId> {
    let word = parse_word(text)?;
    if strict {
        Ok(group.reduced_word(&word)?.element())
    } else {
        group.evaluate(&word)
    }
}

fn parse_subset(group: &WeylGroup, text: &str) -> Result<BTreeSet<usize>> {
    let indices = parse_word(text)?;
    for &i in &indices {
        if i >= group.rank() {
            return Err(Error::IndexOutOfRange {
                index: i + 1,
                rank: group.rank(),
            });
        }
    }
    Ok(indices.into_iter().collect())
}

fn render_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

#[derive(Serialize)]
struct Term {
    w: Vec<usize>,
    coeff: i64,
}

#[derive(Serialize)]
struct ProductOutput {
    basis: Basis,
    cartan: Vec<Vec<i64>>,
    u: Vec<usize>,
    v: Vec<usize>,
    terms: Vec<Term>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string(value).expect("serializable");
    text.push('\n');
    text
}

fn product(args: &ProductArgs) -> Result<String> {
    let group = load_group(&args.group)?;
    let u = resolve(&group, &args.u, args.strict)?;
    let v = resolve(&group, &args.v, args.strict)?;
    if let Some(text) = &args.parabolic {
        if args.basis != Basis::Grothendieck {
            return Err(Error::BasisMismatch {
                expected: "grothendieck",
            });
        }
        let datum = group.minimal_coset_reps(&parse_subset(&group, text)?)?;
        for x in [u, v] {
            if !datum.contains(x) {
                return Err(Error::Parse(format!(
                    "{} is not a minimal coset representative",
                    render_word(&word_of(&group, x))
                )));
            }
        }
    }
    let terms = Calculator::new(&group, args.basis).expand_product(u, v)?;
    let output = ProductOutput {
        basis: args.basis,
        cartan: group.cartan().rows(),
        u: word_of(&group, u),
        v: word_of(&group, v),
        terms: terms
            .into_iter()
            .map(|(w, coeff)| Term {
                w: word_of(&group, w),
                coeff,
            })
            .collect(),
    };
    Ok(match args.format {
        Format::Json => to_json(&output),
        Format::Table => {
            let symbol = if args.basis == Basis::Demazure { "a" } else { "O" };
            let mut text = format!(
                "{symbol}[{}] * {symbol}[{}] =\n",
                render_word(&output.u),
                render_word(&output.v)
            );
            if output.terms.is_empty() {
                text.push_str("  0\n");
            }
            for term in &output.terms {
                let _ = writeln!(text, "  {:>6}  {symbol}[{}]", term.coeff, render_word(&term.w));
            }
            text
        }
    })
}

fn full_table_cached(group: &WeylGroup, args: &TableArgs, err: &mut dyn Write) -> Result<ConstantTable> {
    if group.order() > args.max_order {
        return Err(Error::GroupTooLarge { cap: args.max_order });
    }
    if let Some(dir) = &args.cache_dir {
        match tablefile::load_cached(dir, group, args.basis) {
            Ok(Some(table)) => return Ok(table),
            Ok(None) => {}
            Err(e) => {
                let _ = writeln!(err, "warning: ignoring cached table: {e}");
            }
        }
    }
    let table = full_table_with_cap(group, args.basis, args.max_order)?;
    if let Some(dir) = &args.cache_dir {
        if let Err(e) = tablefile::store_cached(dir, group, &table) {
            let _ = writeln!(err, "warning: could not write cache in {}: {e}", dir.display());
        }
    }
    Ok(table)
}

fn table(args: &TableArgs, err: &mut dyn Write) -> Result<String> {
    let group = load_group(&args.group)?;
    let mut table = full_table_cached(&group, args, err)?;
    if let Some(text) = &args.parabolic {
        let datum = group.minimal_coset_reps(&parse_subset(&group, text)?)?;
        table = parabolic_constants(&table, &datum)?;
    }
    if let Some(path) = &args.out {
        let file = tablefile::to_file(&group, &table);
        std::fs::write(path, to_json(&file)).map_err(io_error)?;
        return Ok(String::new());
    }
    Ok(match args.format {
        Format::Json => to_json(&tablefile::to_file(&group, &table)),
        Format::Table => {
            let mut text = format!("{} table, {} elements\n", table.basis(), table.elements().len());
            for ((u, v, w), c) in table.nonzero() {
                let _ = writeln!(
                    text,
                    "{:>12} {:>12} -> {:>12}  {c}",
                    render_word(&word_of(&group, u)),
                    render_word(&word_of(&group, v)),
                    render_word(&word_of(&group, w))
                );
            }
            text
        }
    })
}

#[derive(Serialize)]
struct DeltaOutput {
    matrix: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    qbar: Option<Vec<String>>,
}

fn delta(args: &DeltaArgs) -> Result<String> {
    let a = match (&args.matrix, &args.word) {
        (Some(json), _) => WordCartanMatrix::new(parse_matrix_text(json)?)?,
        (None, Some(word)) => {
            let cartan = load_cartan(args.type_name.as_deref(), args.cartan.as_deref(), DEFAULT_GROUP_CAP)?;
            WordCartanMatrix::from_word(&parse_word(word)?, &cartan)?
        }
        (None, None) => return Err(Error::Parse("give --matrix, or --word with --type or --cartan".into())),
    };
    let m = a.size();
    let poly = args.poly.as_deref().map(|p| Polynomial::parse(p, m)).transpose()?;
    let value = poly.as_ref().map(|f| DeltaOperator::new(&a).apply(f)).transpose()?;
    let sequences = args.show_q.then(|| build_q_sequences(&a));
    let output = DeltaOutput {
        matrix: a.rows(),
        poly: poly.as_ref().map(|p| p.to_string()),
        value: value.map(|v| v.to_string()),
        q: sequences.as_ref().map(|s| s.q.iter().map(|p| p.to_string()).collect()),
        qbar: sequences.as_ref().map(|s| s.qbar.iter().map(|p| p.to_string()).collect()),
    };
    Ok(match args.format {
        Format::Json => to_json(&output),
        Format::Table => {
            let mut text = String::new();
            if let (Some(q), Some(qbar)) = (&output.q, &output.qbar) {
                for (k, (p, pb)) in q.iter().zip(qbar).enumerate() {
                    let _ = writeln!(text, "q{0} = {p}\nqbar{0} = {pb}", k + 1);
                }
            }
            if let (Some(p), Some(v)) = (&output.poly, &output.value) {
                let _ = writeln!(text, "Delta[{p}] = {v}");
            }
            text
        }
    })
}

#[derive(Serialize)]
struct ImageEntry {
    w: Vec<usize>,
    poly: String,
}

#[derive(Serialize)]
struct ImageOutput {
    basis: Basis,
    word: Vec<usize>,
    images: Vec<ImageEntry>,
}

fn image_command(args: &ImageArgs) -> Result<String> {
    let group = load_group(&args.group)?;
    let word = parse_word(&args.word)?;
    let images = image(&group, args.basis, &word)?;
    let only = args.element.as_deref().map(|t| resolve(&group, t, false)).transpose()?;
    let output = ImageOutput {
        basis: args.basis,
        word: word.iter().map(|i| i + 1).collect(),
        images: images
            .iter()
            .filter(|(x, p)| only.map_or(args.all || !p.is_zero(), |y| *x == y))
            .map(|(x, p)| ImageEntry {
                w: word_of(&group, x),
                poly: p.to_string(),
            })
            .collect(),
    };
    Ok(match args.format {
        Format::Json => to_json(&output),
        Format::Table => {
            let mut text = String::new();
            for entry in &output.images {
                let _ = writeln!(text, "{:>12}  {}", render_word(&entry.w), entry.poly);
            }
            text
        }
    })
}

fn verify(args: &VerifyArgs) -> Result<(String, bool)> {
    let group = load_group(&args.group)?;
    let mut reports: Vec<CheckReport> = Vec::new();
    if matches!(args.suite, Suite::All | Suite::Axioms) {
        reports.extend(verify_group(&group, args.max_order)?);
    }
    if matches!(args.suite, Suite::All | Suite::Oracles) {
        reports.extend(verify_oracles(&group, args.max_order, args.seed)?);
    }
    let mut text = String::new();
    for report in &reports {
        let _ = writeln!(text, "{report}");
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(text, "{} checks, {failed} failed", reports.len());
    Ok((text, failed == 0))
}
