//! Command implementations, kept in the library so integration tests can
//! drive them without spawning processes.

use crate::formats::{ComplexFile, RootFile};
use crate::report::{ConnectedReport, ReportFormat};
use crate::CliError;
use iota_forge_core::connected::connected_homology_with_certificate;
use iota_forge_core::graded_roots::root_connected_homology;
use iota_forge_core::involutive::correction_terms;
use iota_forge_core::iota_complex::IotaComplex;
use iota_forge_core::surgery::{
    surgery_homology, vs_from_staircase, Staircase, SurgeryHomology, VSequence,
};
use iota_forge_core::SearchMode;
use serde_json::{json, Map, Value};
use std::path::Path;
use std::time::Instant;

/// Outcome of one CLI command: what to print and the exit status.
pub struct CmdOutput {
    pub stdout: String,
    pub exit: i32,
}

fn ok(stdout: String) -> CmdOutput {
    CmdOutput { stdout, exit: 0 }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Parse and fully validate a complex file; exit 0/2 with a named report.
pub fn cmd_validate(path: &Path, format: ReportFormat) -> Result<CmdOutput, CliError> {
    let file = ComplexFile::parse(&read(path)?)?;
    let report = file.complex.validate();
    let valid = report.is_valid();
    let stdout = match format {
        ReportFormat::Json => {
            let mut m = Map::new();
            m.insert(
                "failures".into(),
                Value::Array(
                    report
                        .failures
                        .iter()
                        .map(|f| json!(f.to_string()))
                        .collect(),
                ),
            );
            m.insert("name".into(), json!(file.name));
            m.insert("valid".into(), json!(valid));
            let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
            s.push('\n');
            s
        }
        ReportFormat::Text => {
            let mut s = format!("{}: {}\n", file.name, if valid { "valid" } else { "INVALID" });
            for f in &report.failures {
                s.push_str(&format!("  {f}\n"));
            }
            s
        }
    };
    Ok(CmdOutput {
        stdout,
        exit: if valid { 0 } else { 2 },
    })
}

/// The full pipeline on a validated complex: reduce, correction terms,
/// connected homology, ω.
pub fn run_pipeline(
    complex: &IotaComplex,
    mode: SearchMode,
    seed: u64,
    timings: bool,
) -> Result<ConnectedReport, CliError> {
    run_pipeline_checked(complex, mode, seed, timings, None)
}

/// Like [`run_pipeline`], optionally cross-checking the Smith-path homology
/// against the U-truncation oracle at level `truncation` first.
pub fn run_pipeline_checked(
    complex: &IotaComplex,
    mode: SearchMode,
    seed: u64,
    timings: bool,
    truncation: Option<u32>,
) -> Result<ConnectedReport, CliError> {
    let report = complex.validate();
    if let Some(first) = report.failures.first() {
        return Err(CliError::Invalid(first.to_string()));
    }
    if let Some(n) = truncation {
        let d = complex.differential();
        let oracle = iota_forge_core::ufu_algebra::truncated_module_oracle(d, n)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let smith = iota_forge_core::ufu_algebra::homology(d)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        if oracle != smith {
            return Err(CliError::Invalid(format!(
                "truncation oracle at N = {n} disagrees with homology: {oracle} vs {smith}"
            )));
        }
    }
    let mut stamps: Vec<(&str, u128)> = Vec::new();
    let t0 = Instant::now();
    let reduced = complex.reduce();
    stamps.push(("reduce", t0.elapsed().as_millis()));

    let t1 = Instant::now();
    let ct = correction_terms(&reduced).map_err(|e| CliError::Invalid(e.to_string()))?;
    stamps.push(("correction_terms", t1.elapsed().as_millis()));

    let t2 = Instant::now();
    let (conn, certificate) = connected_homology_with_certificate(&reduced, mode, seed)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    stamps.push(("connected_homology", t2.elapsed().as_millis()));

    let mut report = ConnectedReport::new(ct, &conn, certificate);
    if timings {
        report.timings = Some(stamps.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
    }
    Ok(report)
}

fn report_output(report: ConnectedReport, format: ReportFormat) -> CmdOutput {
    let exit = if report.certificate { 0 } else { 3 };
    CmdOutput {
        stdout: report.render(format),
        exit,
    }
}

pub fn cmd_invariants(
    path: &Path,
    mode: SearchMode,
    seed: u64,
    format: ReportFormat,
    timings: bool,
    truncation: Option<u32>,
) -> Result<CmdOutput, CliError> {
    let file = ComplexFile::parse(&read(path)?)?;
    let report = run_pipeline_checked(&file.complex, mode, seed, timings, truncation)?;
    Ok(report_output(report, format))
}

pub fn cmd_tensor(paths: &[std::path::PathBuf], out: &Path) -> Result<CmdOutput, CliError> {
    if paths.is_empty() {
        return Err(CliError::Parse("tensor needs at least one input".into()));
    }
    let mut files = Vec::new();
    for p in paths {
        files.push(ComplexFile::parse(&read(p)?)?);
    }
    let mut iter = files.into_iter();
    let first = iter.next().unwrap();
    let mut name = first.name.clone();
    let mut complex = first.complex;
    for f in iter {
        name = format!("{name}#{}", f.name);
        complex = complex.tensor(&f.complex);
    }
    let out_file = ComplexFile { name, complex };
    write(out, &out_file.emit())?;
    Ok(ok(format!("wrote {}\n", out.display())))
}

pub fn cmd_dual(path: &Path, out: &Path) -> Result<CmdOutput, CliError> {
    let file = ComplexFile::parse(&read(path)?)?;
    let out_file = ComplexFile {
        name: format!("{}*", file.name),
        complex: file.complex.dual(),
    };
    write(out, &out_file.emit())?;
    Ok(ok(format!("wrote {}\n", out.display())))
}

/// Knot input for the surgery pipeline.
pub enum KnotInput {
    Torus(u64, u64),
    Staircase(Vec<u64>),
    VSeq(Vec<u64>),
}

impl KnotInput {
    fn v_sequence(&self) -> Result<VSequence, CliError> {
        let invalid = |e: iota_forge_core::surgery::SurgeryError| CliError::Invalid(e.to_string());
        match self {
            KnotInput::Torus(p, q) => {
                if *p != 2 {
                    return Err(CliError::Invalid(format!(
                        "only T(2, q) torus knots are supported, got T({p}, {q})"
                    )));
                }
                vs_from_staircase(&Staircase::torus_2q(*q).map_err(invalid)?).map_err(invalid)
            }
            KnotInput::Staircase(steps) => {
                vs_from_staircase(&Staircase::new(steps.clone()).map_err(invalid)?).map_err(invalid)
            }
            KnotInput::VSeq(vals) => VSequence::new(vals.clone()).map_err(invalid),
        }
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_surgery(
    input: KnotInput,
    framing: i64,
    truncation: Option<i64>,
    emit_root: Option<&Path>,
    emit_complex: Option<&Path>,
    mode: SearchMode,
    seed: u64,
    format: ReportFormat,
    timings: bool,
) -> Result<CmdOutput, CliError> {
    if framing >= 0 {
        return Err(CliError::Invalid(format!(
            "framing must be a negative integer, got {framing}"
        )));
    }
    let n = -framing;
    let v = input.v_sequence()?;
    let SurgeryHomology { root, .. } =
        surgery_homology(&v, n, truncation).map_err(|e| CliError::Invalid(e.to_string()))?;
    let complex = root
        .realize()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    if let Some(p) = emit_root {
        write(p, &RootFile { root: root.clone() }.emit())?;
    }
    if let Some(p) = emit_complex {
        let f = ComplexFile {
            name: format!("surgery_m{n}"),
            complex: complex.clone(),
        };
        write(p, &f.emit())?;
    }
    let report = run_pipeline(&complex, mode, seed, timings)?;
    Ok(report_output(report, format))
}

pub fn cmd_root_subroot(path: &Path, out: &Path) -> Result<CmdOutput, CliError> {
    let file = RootFile::parse(&read(path)?)?;
    let sub = file
        .root
        .monotone_subroot()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let expanded = sub
        .to_symmetric_root()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    write(out, &RootFile { root: expanded }.emit())?;
    Ok(ok(format!("wrote {}\n", out.display())))
}

pub fn cmd_root_conn(
    path: &Path,
    mode: SearchMode,
    seed: u64,
    format: ReportFormat,
    timings: bool,
) -> Result<CmdOutput, CliError> {
    let file = RootFile::parse(&read(path)?)?;
    let via_root =
        root_connected_homology(&file.root).map_err(|e| CliError::Invalid(e.to_string()))?;
    let complex = file
        .root
        .realize()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let report = run_pipeline(&complex, mode, seed, timings)?;
    // Cross-path consistency: subroot route and search route must agree.
    if report.certificate && report.towers != via_root.towers() {
        return Err(CliError::Invalid(format!(
            "internal cross-check failed: subroot towers {via_root} differ from search towers"
        )));
    }
    Ok(report_output(report, format))
}
