//! Command-line front end. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 failed verification or internal error,
//! 2 invalid input (including usage errors and skipped verifications),
//! 3 resource limit.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use mtri::enumerate::{
    enum_matrices, enum_triangles, enum_wni_objects, signed_count, wni_object_sign, MatrixKind,
    Statistic, TriangleClass,
};
use mtri::evaluate::{alpha, AlphaMethod};
use mtri::exactla::{build_matrix, det_exact, MatrixKind as Linear};
use mtri::serialize::{deserialize_auto, serialize, Format, Value, ValueKind};
use mtri::transform::{matrix_to_triangle, mt_to_s1, s1_to_mt, triangle_to_matrix, BijectionKind};
use mtri::verify::{identity, verify, Status, LONG_FLAG};
use mtri::{triangle_stats, Error};

#[derive(Parser, Debug)]
#[command(name = "mtri", version, about = "Monotone Triangles, DMTs, ASMs and the polynomial alpha")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate alpha at a row, e.g. `--row 2,4,5,8,9`.
    Alpha {
        #[arg(long, allow_hyphen_values = true)]
        row: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Enumerate or count objects of a class.
    Enum {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, allow_hyphen_values = true)]
        row: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Statistics of a DMT read from a file (JSON or whitespace-separated rows).
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply a bijection to an object read from a file.
    Biject {
        #[arg(long, value_enum)]
        kind: BijectArg,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run an identity check.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[arg(long)]
        seed: Option<i64>,
        #[arg(long, value_enum, default_value_t = ReportFormatArg::Text)]
        format: ReportFormatArg,
        /// Allow long-running parameter values.
        #[arg(long)]
        long: bool,
    },
    /// Exact determinant of a structured matrix.
    Det {
        #[arg(long, value_enum)]
        kind: DetArg,
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Auto,
    Op,
    Mt,
    Dmt,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ClassArg {
    Mt,
    Dmt,
    Asm,
    #[value(name = "2asm")]
    TwoAsm,
    Wni,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReportFormatArg {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BijectArg {
    MtAsm,
    #[value(name = "dmt-2asm")]
    Dmt2Asm,
    S1Mt,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DirectionArg {
    Fwd,
    Rev,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DetArg {
    Behrend,
    Sprime,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit(_) => 3,
            Error::Internal(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CmdResult = Result<i32, Failure>;

pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Alpha { row, method } => {
            let k = parse_row(&row)?;
            let method = match method {
                MethodArg::Auto => AlphaMethod::Auto,
                MethodArg::Op => AlphaMethod::OperatorRecursion,
                MethodArg::Mt => AlphaMethod::MonotoneDP,
                MethodArg::Dmt => AlphaMethod::SignedDmtDP,
            };
            writeln!(out, "{}", alpha(&k, method)?)?;
            Ok(0)
        }
        Command::Enum { class, row, n, i, count_only, limit, format } => {
            run_enum(class, row, n, i, count_only, limit, format.into(), out)
        }
        Command::Stats { input } => {
            let t = match read_value(&input, ValueKind::Triangle)? {
                Value::Triangle(t) => t,
                _ => unreachable!(),
            };
            let s = triangle_stats(&t)?;
            let pairs: Vec<String> = s.pairs_per_row.iter().map(usize::to_string).collect();
            writeln!(out, "pairs_per_row {}", pairs.join(","))?;
            for (name, v) in [
                ("newcomers", s.newcomers),
                ("peaks", s.peaks),
                ("base_pairs", s.base_pairs),
                ("dd", s.dd),
                ("dd_bar", s.dd_bar),
                ("sc", s.sc),
            ] {
                writeln!(out, "{name} {v}")?;
            }
            Ok(0)
        }
        Command::Biject { kind, direction, input, format } => {
            let from_triangle = match kind {
                BijectArg::S1Mt => true,
                _ => direction == DirectionArg::Fwd,
            };
            let expected = if from_triangle { ValueKind::Triangle } else { ValueKind::Matrix };
            let value = read_value(&input, expected)?;
            let result = match (kind, value) {
                (BijectArg::MtAsm | BijectArg::Dmt2Asm, Value::Triangle(t)) => {
                    Value::Matrix(triangle_to_matrix(&t, bijection(kind))?)
                }
                (BijectArg::MtAsm | BijectArg::Dmt2Asm, Value::Matrix(m)) => {
                    Value::Triangle(matrix_to_triangle(&m, bijection(kind))?)
                }
                (BijectArg::S1Mt, Value::Triangle(t)) => Value::Triangle(match direction {
                    DirectionArg::Fwd => s1_to_mt(&t)?,
                    DirectionArg::Rev => mt_to_s1(&t)?,
                }),
                _ => unreachable!(),
            };
            out.write_all(&serialize(&result, format.into())?)?;
            Ok(0)
        }
        Command::Verify { id, n, seed, format, long } => {
            let ident = identity(&id)?;
            let mut params = BTreeMap::new();
            if let Some(n) = n {
                let name = ident
                    .primary
                    .ok_or_else(|| usage(format!("identity {id} takes no size parameter")))?;
                params.insert(name.to_string(), n);
            }
            if let Some(seed) = seed {
                if !ident.params.iter().any(|p| p.name == "seed") {
                    return Err(usage(format!("identity {id} takes no seed")));
                }
                params.insert("seed".to_string(), seed);
            }
            if long {
                params.insert(LONG_FLAG.to_string(), 1);
            }
            let report = verify(&id, &params)?;
            match format {
                ReportFormatArg::Text => write!(out, "{report}")?,
                ReportFormatArg::Json => out.write_all(&serialize(&Value::Report(report.clone()), Format::Json)?)?,
            }
            Ok(match report.status {
                Status::Verified => 0,
                Status::Failed => {
                    writeln!(err, "verification failed: {} checks differ", report.failures().count())?;
                    1
                }
                Status::Skipped => {
                    writeln!(err, "skipped: {}", report.note.as_deref().unwrap_or("unsupported parameters"))?;
                    2
                }
            })
        }
        Command::Det { kind, n } => {
            let kind = match kind {
                DetArg::Behrend => Linear::Behrend,
                DetArg::Sprime => Linear::Sprime,
            };
            writeln!(out, "{}", det_exact(&build_matrix(kind, n)?)?)?;
            Ok(0)
        }
    }
}

fn bijection(kind: BijectArg) -> BijectionKind {
    match kind {
        BijectArg::MtAsm => BijectionKind::MtAsm,
        _ => BijectionKind::Dmt2Asm,
    }
}

fn parse_row(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .enumerate()
        .map(|(i, cell)| {
            cell.trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("row entry {} ({cell:?}) is not an integer", i + 1)))
        })
        .collect()
}

fn read_value(path: &Path, kind: ValueKind) -> Result<Value, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(deserialize_auto(&bytes, kind)?)
}

/// Writes a sequence of values: JSON one per line, text and CSV separated by blank lines.
fn write_values(
    values: impl Iterator<Item = (Value, Option<i64>)>,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    for (idx, (v, sign)) in values.enumerate() {
        if idx > 0 && format != Format::Json {
            writeln!(out)?;
        }
        out.write_all(&serialize(&v, format)?)?;
        if let (Some(s), Format::Text) = (sign, format) {
            writeln!(out, "sign {s:+}")?;
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_enum(
    class: ClassArg,
    row: Option<String>,
    n: Option<usize>,
    i: Option<usize>,
    count_only: bool,
    limit: Option<usize>,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let limit = limit.unwrap_or(usize::MAX);
    match class {
        ClassArg::Mt | ClassArg::Dmt => {
            let row = row.ok_or_else(|| usage("--row is required for triangle classes"))?;
            let k = parse_row(&row)?;
            let class = if class == ClassArg::Mt { TriangleClass::MT } else { TriangleClass::DMT };
            if count_only {
                writeln!(out, "{}", signed_count(&k, class, Statistic::Plain)?)?;
                return Ok(0);
            }
            if format == Format::Csv {
                return Err(usage("triangles have no CSV encoding"));
            }
            let stream = enum_triangles(&k, class)?.take(limit).map(|t| (Value::Triangle(t), None));
            write_values(stream, format, out)
        }
        ClassArg::Asm | ClassArg::TwoAsm => {
            let n = n.ok_or_else(|| usage("--n is required for matrix classes"))?;
            let kind = if class == ClassArg::Asm { MatrixKind::Asm } else { MatrixKind::TwoAsm };
            let all = enum_matrices(kind, n);
            if count_only {
                writeln!(out, "{}", all.len())?;
                return Ok(0);
            }
            write_values(all.into_iter().take(limit).map(|m| (Value::Matrix(m), None)), format, out)
        }
        ClassArg::Wni => {
            let (n, i) = match (n, i) {
                (Some(n), Some(i)) => (n, i),
                _ => return Err(usage("--n and --i are required for W-objects")),
            };
            let objects = enum_wni_objects(n, i)?;
            if count_only {
                writeln!(out, "{}", objects.len())?;
                return Ok(0);
            }
            let mut items = Vec::new();
            for o in objects.into_iter().take(limit) {
                let s = wni_object_sign(&o)?;
                items.push((Value::Matrix(o.matrix().clone()), Some(s)));
            }
            write_values(items.into_iter(), format, out)
        }
    }
}
