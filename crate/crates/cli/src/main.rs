use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use screening_cli::catalog::{parse_catalog, CatalogFormat};
use screening_cli::format::sig6;
use screening_cli::report::{build_report, write_report, OutputFormat};
use screening_cli::scenario::{read_scenario, summary, write_trajectory};
use screening_cli::svg::render_svg;
use screening_cli::CliError;
use screening_curves::{
    auc, metrics_from_counts, sample_curve, threshold_report, ConfusionMatrix, CurveSamples,
    TestCharacteristics,
};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "screening",
    version,
    about = "Prevalence-dependent screening curve analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TestArgs {
    /// Sensitivity a in [0, 1]
    #[arg(short = 'a', long)]
    sensitivity: f64,
    /// Specificity b in [0, 1]
    #[arg(short = 'b', long)]
    specificity: f64,
}

impl TestArgs {
    fn characteristics(&self) -> Result<TestCharacteristics, CliError> {
        Ok(TestCharacteristics::new(
            self.sensitivity,
            self.specificity,
        )?)
    }
}

#[derive(Args)]
struct Output {
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Prevalence, sensitivity, specificity, PPV and NPV from confusion-matrix counts
    Metrics {
        #[arg(long)]
        tp: u64,
        #[arg(long)]
        fp: u64,
        #[arg(long = "fn")]
        fneg: u64,
        #[arg(long)]
        tn: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Prevalence threshold, its PPV, concavity class and numerical cross-check
    Threshold {
        #[command(flatten)]
        test: TestArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Area under the screening curve, closed form and by quadrature
    Auc {
        #[command(flatten)]
        test: TestArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Sample the curve (φ, ρ, dρ/dφ, κ) and optionally render it as SVG
    Curve {
        #[command(flatten)]
        test: TestArgs,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Title embedded in the SVG
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[command(flatten)]
        output: Output,
        /// Write an SVG plot to this path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a screening-paradox scenario and print the trajectory as CSV
    Simulate {
        /// Scenario JSON file
        scenario: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Full report for every test in a catalog
    Report {
        /// Catalog file (.json or .csv)
        catalog: PathBuf,
        /// Catalog format; inferred from the file extension when omitted
        #[arg(long)]
        catalog_format: Option<CatalogFormat>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
        #[command(flatten)]
        output: Output,
    },
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
}

fn sink(output: &Output) -> Result<Box<dyn Write>, CliError> {
    match &output.out {
        None => Ok(Box::new(io::stdout().lock())),
        Some(path) => File::create(path)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            }),
    }
}

fn io_err(source: io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source,
    }
}

/// Writes `fields` as a JSON object, a two-row CSV or aligned text.
fn write_record(
    fields: &[(&str, serde_json::Value, String)],
    format: OutputFormat,
    mut out: impl Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let map: serde_json::Map<_, _> = fields
                .iter()
                .map(|(k, v, _)| (k.to_string(), v.clone()))
                .collect();
            serde_json::to_writer_pretty(&mut out, &map)?;
            writeln!(out).map_err(io_err)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(fields.iter().map(|(k, _, _)| *k))?;
            w.write_record(fields.iter().map(|(_, v, _)| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            }))?;
            w.flush().map_err(io_err)?;
        }
        OutputFormat::Text => {
            for (k, _, human) in fields {
                writeln!(out, "{k:<22}{human}").map_err(io_err)?;
            }
        }
    }
    Ok(())
}

fn number(x: f64) -> (serde_json::Value, String) {
    (json!(x), sig6(x))
}

fn optional(x: Option<f64>) -> (serde_json::Value, String) {
    match x {
        Some(x) => number(x),
        None => (json!("undefined"), "undefined".into()),
    }
}

fn field(name: &str, (v, h): (serde_json::Value, String)) -> (&str, serde_json::Value, String) {
    (name, v, h)
}

fn write_samples(
    samples: &CurveSamples,
    format: OutputFormat,
    mut out: impl Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            let rows: Vec<_> = samples
                .rows
                .iter()
                .map(|r| json!({"prevalence": r.prevalence, "ppv": r.ppv, "slope": r.slope, "curvature": r.curvature}))
                .collect();
            let undefined = |x: Option<f64>| x.map_or(json!("undefined"), |v| json!(v));
            let doc = json!({
                "sensitivity": samples.test.sensitivity(),
                "specificity": samples.test.specificity(),
                "screening_coefficient": samples.screening_coefficient(),
                "threshold": undefined(samples.threshold),
                "ppv_at_threshold": undefined(samples.ppv_at_threshold),
                "rows": rows,
            });
            serde_json::to_writer_pretty(&mut out, &doc)?;
            writeln!(out).map_err(io_err)?;
        }
        OutputFormat::Csv | OutputFormat::Text => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["prevalence", "ppv", "slope", "curvature"])?;
            for r in &samples.rows {
                let cells = [r.prevalence, r.ppv, r.slope, r.curvature];
                if format == OutputFormat::Csv {
                    w.write_record(cells.iter().map(f64::to_string))?;
                } else {
                    w.write_record(cells.iter().map(|x| sig6(*x)))?;
                }
            }
            w.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Metrics {
            tp,
            fp,
            fneg,
            tn,
            format,
            output,
        } => {
            let m = metrics_from_counts(&ConfusionMatrix::new(tp, fp, fneg, tn)?);
            let fields = [
                field("prevalence", number(m.prevalence)),
                field("sensitivity", number(m.sensitivity)),
                field("specificity", number(m.specificity)),
                field("ppv", optional(m.ppv.ok())),
                field("npv", optional(m.npv.ok())),
            ];
            write_record(&fields, format, sink(&output)?)
        }
        Command::Threshold {
            test,
            format,
            output,
        } => {
            let t = test.characteristics()?;
            let r = threshold_report(&t)?;
            let fields = [
                field("sensitivity", number(t.sensitivity())),
                field("specificity", number(t.specificity())),
                field(
                    "screening_coefficient",
                    number(r.concavity.screening_coefficient),
                ),
                (
                    "concavity",
                    json!(r.concavity.class.name()),
                    r.concavity.class.name().into(),
                ),
                field("threshold", optional(r.threshold)),
                field("ppv_at_threshold", optional(r.ppv_at_threshold)),
                field("oracle_threshold", optional(r.oracle_threshold)),
                field("oracle_residual", optional(r.oracle_residual)),
            ];
            write_record(&fields, format, sink(&output)?)
        }
        Command::Auc {
            test,
            format,
            output,
        } => {
            let t = test.characteristics()?;
            let r = auc(&t)?;
            let fields = [
                field("screening_coefficient", number(r.screening_coefficient)),
                field("auc_closed", number(r.auc_closed)),
                field("auc_numeric", number(r.auc_numeric)),
                field("residual", number(r.residual)),
            ];
            write_record(&fields, format, sink(&output)?)
        }
        Command::Curve {
            test,
            samples,
            name,
            format,
            output,
            svg,
        } => {
            let t = test.characteristics()?;
            let curve = sample_curve(&t, samples)?;
            if let Some(path) = svg {
                std::fs::write(&path, render_svg(&curve, name.as_deref())).map_err(|source| {
                    CliError::Io {
                        path: path.display().to_string(),
                        source,
                    }
                })?;
            }
            write_samples(&curve, format, sink(&output)?)
        }
        Command::Simulate { scenario, output } => {
            let trajectory = read_scenario(open(&scenario)?)?.run()?;
            write_trajectory(&trajectory, sink(&output)?)?;
            let line = summary(&trajectory);
            // Keep standard output pure CSV when the trajectory goes there.
            if output.out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::Report {
            catalog,
            catalog_format,
            format,
            output,
        } => {
            let catalog_format = match catalog_format {
                Some(f) => f,
                None => match catalog.extension().and_then(|e| e.to_str()) {
                    Some("csv") => CatalogFormat::Csv,
                    Some("json") => CatalogFormat::Json,
                    _ => {
                        return Err(CliError::Invalid(format!(
                            "{}: cannot infer catalog format, pass --catalog-format",
                            catalog.display()
                        )))
                    }
                },
            };
            let entries = parse_catalog(open(&catalog)?, catalog_format)?;
            let rows = build_report(&entries);
            write_report(&rows, format, sink(&output)?).map_err(io_err)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
