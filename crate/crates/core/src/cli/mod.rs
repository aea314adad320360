//! Command-line front end. Matrices are read from JSON files and every
//! command prints a single report.
//!
//! Exit codes: 0 success, 1 numerical or structural failure (including any
//! residual above its threshold), 2 usage error.

mod matrix_file;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::intertwiner::{canonical_factorization, self_factorization, verify_intertwining, Factorization};
use crate::numkernel::{ComplexMatrix, Tolerance, C64};
use crate::pseudoherm::{canonical_eta, verify_pseudo_hermiticity, EtaOperator, SignAssignment};
use crate::psusy::{
    assemble, from_factorization, null_kernel_check, verify_algebra, witten_index, PseudoSusySystem,
};
use crate::spectral::{classify_spectrum, decompose, reconstruct, verify_biorthonormality, BiorthonormalSystem};
use crate::twolevel::{closed_form_system, oscillator_demo, spin_intertwine_demo, two_level_factorization, TwoLevelParams};
use crate::Check;

pub use matrix_file::{complex_json, load_matrix, matrix_json, parse_matrix_file, parse_matrix_str, LoadedMatrix};
pub use report::{emit_report, Mode};

/// Environment variable overriding the default relative tolerance.
pub const TOL_ENV: &str = "PSEUDOHERM_TOL";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pseudosusy", version, about = "Pseudo-Hermitian spectral analysis and pseudo-supersymmetry")]
pub struct Cli {
    /// Relative tolerance (default 1e-8, or $PSEUDOHERM_TOL)
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Emit one JSON document (default)
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Emit human-readable tables
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigensystem and spectrum classification
    Spectrum { file: PathBuf },
    /// Canonical metric and its pseudo-Hermiticity residual
    Eta {
        file: PathBuf,
        /// Comma-separated ±1 per real eigenvector, in cluster order
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        signs: Option<Vec<i32>>,
    },
    /// Factor H = L♯L
    Factor { file: PathBuf },
    /// Factorization H1 = L♯L, H2 = LL♯ plus the pseudo-supersymmetric system
    Intertwine { file1: PathBuf, file2: PathBuf },
    /// Algebra residuals for the system built from D
    Psusy {
        file: PathBuf,
        #[arg(long)]
        eta_plus: Option<PathBuf>,
        #[arg(long)]
        eta_minus: Option<PathBuf>,
    },
    /// Witten index and index identities for D
    Witten {
        file: PathBuf,
        #[arg(long)]
        eta_plus: Option<PathBuf>,
        #[arg(long)]
        eta_minus: Option<PathBuf>,
    },
    /// Closed forms for [[a, b], [c, -a]]
    Twolevel {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        a: C64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        b: C64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        c: C64,
    },
    /// Built-in oscillator and spin examples
    Demo {
        which: DemoKind,
        #[arg(long)]
        omega: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoKind {
    Oscillator,
    Spin,
}

/// `re` or `re,im`.
fn parse_complex(s: &str) -> Result<C64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("invalid number {t:?}: {e}"));
    let z = match parts.as_slice() {
        [re] => C64::new(num(re)?, 0.0),
        [re, im] => C64::new(num(re)?, num(im)?),
        _ => return Err(format!("expected re or re,im, got {s:?}")),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err("value must be finite".into())
    }
}

fn tolerance(flag: Option<f64>) -> Result<Tolerance, CliError> {
    let rtol = match flag {
        Some(t) => Some(t),
        None => match std::env::var(TOL_ENV) {
            Ok(s) => Some(
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| CliError::Usage(format!("{TOL_ENV}={s:?}: {e}")))?,
            ),
            Err(_) => None,
        },
    };
    match rtol {
        Some(r) => Tolerance::with_rtol(r).map_err(|e| CliError::Usage(e.to_string())),
        None => Ok(Tolerance::default()),
    }
}

struct Context {
    tol: Tolerance,
    inputs: Vec<Value>,
}

impl Context {
    fn load(&mut self, path: &Path) -> Result<ComplexMatrix, CliError> {
        let loaded = load_matrix(path)?;
        self.inputs
            .push(json!({ "path": path.display().to_string(), "sha256": loaded.sha256 }));
        Ok(loaded.matrix)
    }

    fn load_eta(&mut self, path: Option<&Path>, n: usize) -> Result<EtaOperator, CliError> {
        match path {
            None => Ok(EtaOperator::identity(n)),
            Some(p) => {
                let m = self.load(p)?;
                if m.shape() != (n, n) {
                    return Err(Error::DimensionMismatch(format!(
                        "metric in {} is {}x{}, sector has dimension {n}",
                        p.display(),
                        m.rows(),
                        m.cols()
                    ))
                    .into());
                }
                Ok(EtaOperator::new(m, &self.tol)?)
            }
        }
    }
}

fn check(c: &Check) -> Value {
    serde_json::to_value(c).expect("checks serialize")
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn system_json(sys: &BiorthonormalSystem, tol: &Tolerance) -> Value {
    let class = classify_spectrum(sys, tol);
    let clusters: Vec<Value> = sys
        .clusters()
        .iter()
        .map(|c| {
            json!({
                "value": complex_json(c.value),
                "multiplicity": c.multiplicity,
                "kind": value(&c.kind),
                "partner": c.partner,
            })
        })
        .collect();
    json!({
        "dim": sys.dim(),
        "tag": value(&class.tag),
        "clusters": clusters,
        "psi": matrix_json(sys.psi()),
        "phi": matrix_json(sys.phi()),
    })
}

fn factorization_json(f: &Factorization) -> Value {
    let alpha: Vec<Value> = f.intertwiner.alpha().iter().map(|&a| complex_json(a)).collect();
    json!({
        "l": matrix_json(f.l()),
        "l_sharp": matrix_json(&f.l_sharp),
        "alpha": alpha,
        "eta1": matrix_json(f.eta1.matrix()),
        "eta2": matrix_json(f.eta2.matrix()),
        "signs1": f.eta1.signs().map(|s| s.flat()),
        "residual_h1": check(&f.residual_h1),
        "residual_h2": check(&f.residual_h2),
    })
}

fn psusy_json(p: &PseudoSusySystem, tol: &Tolerance) -> (Value, bool) {
    let algebra = verify_algebra(p, tol);
    let v = json!({
        "d_sharp": matrix_json(p.d_sharp()),
        "h_plus": matrix_json(p.h_plus()),
        "h_minus": matrix_json(p.h_minus()),
        "algebra": value(&algebra),
    });
    (v, algebra.pass)
}

fn witten_json(p: &PseudoSusySystem, tol: &Tolerance) -> (Value, bool) {
    let w = witten_index(p, tol);
    let nulls = null_kernel_check(p, tol);
    let pass = w.betti_identity && w.index_d_identity.unwrap_or(true);
    let mut v = value(&w);
    v["null_kernels"] = value(&nulls);
    (v, pass)
}

/// Run one command and return `(result payload, all checks passed)`.
fn dispatch(cmd: &Command, ctx: &mut Context) -> Result<(&'static str, Value, bool), CliError> {
    let tol = ctx.tol;
    Ok(match cmd {
        Command::Spectrum { file } => {
            let h = ctx.load(file)?;
            let sys = decompose(&h, &tol)?;
            let bio = verify_biorthonormality(&sys, &tol);
            let recon = Check::new(
                (reconstruct(&sys) - &h).norm(),
                tol.rtol * (1.0 + h.norm()) * sys.cond_psi(),
            );
            let mut v = system_json(&sys, &tol);
            v["biorthonormality"] = value(&bio);
            v["reconstruction"] = check(&recon);
            ("spectrum", v, bio.pass && recon.pass)
        }
        Command::Eta { file, signs } => {
            let h = ctx.load(file)?;
            let sys = decompose(&h, &tol)?;
            let assignment = match signs {
                Some(s) => SignAssignment::from_flat(&sys, s)?,
                None => SignAssignment::all_positive(&sys),
            };
            let eta = canonical_eta(&sys, &assignment, &tol)?;
            let ph = verify_pseudo_hermiticity(&h, &eta, &tol)?;
            let v = json!({
                "signs": assignment.flat(),
                "eta": matrix_json(eta.matrix()),
                "eta_inverse": matrix_json(eta.inverse()),
                "hermiticity_defect": eta.matrix().hermiticity_defect(),
                "pseudo_hermiticity": check(&ph),
            });
            ("eta", v, ph.pass)
        }
        Command::Factor { file } => {
            let h = ctx.load(file)?;
            let f = self_factorization(&decompose(&h, &tol)?, &tol)?;
            ("factor", factorization_json(&f), f.pass())
        }
        Command::Intertwine { file1, file2 } => {
            let h1 = ctx.load(file1)?;
            let h2 = ctx.load(file2)?;
            let (s1, s2) = (decompose(&h1, &tol)?, decompose(&h2, &tol)?);
            let f = canonical_factorization(&s1, &s2, &tol)?;
            let inter = Check::new(verify_intertwining(f.l(), &h1, &h2)?, f.residual_h1.threshold);
            let mut v = json!({ "factorization": factorization_json(&f), "intertwining": check(&inter) });
            let mut pass = f.pass() && inter.pass;
            if f.pass() {
                let p = from_factorization(&f)?;
                let (ps, ok1) = psusy_json(&p, &tol);
                let (w, ok2) = witten_json(&p, &tol);
                v["psusy"] = ps;
                v["witten"] = w;
                pass &= ok1 && ok2;
            }
            ("intertwine", v, pass)
        }
        Command::Psusy { file, eta_plus, eta_minus } => {
            let d = ctx.load(file)?;
            let ep = ctx.load_eta(eta_plus.as_deref(), d.cols())?;
            let em = ctx.load_eta(eta_minus.as_deref(), d.rows())?;
            let (v, pass) = psusy_json(&assemble(&d, &ep, &em)?, &tol);
            ("psusy", v, pass)
        }
        Command::Witten { file, eta_plus, eta_minus } => {
            let d = ctx.load(file)?;
            let ep = ctx.load_eta(eta_plus.as_deref(), d.cols())?;
            let em = ctx.load_eta(eta_minus.as_deref(), d.rows())?;
            let (v, pass) = witten_json(&assemble(&d, &ep, &em)?, &tol);
            ("witten", v, pass)
        }
        Command::Twolevel { a, b, c } => {
            let params = TwoLevelParams::new(*a, *b, *c);
            let sys = closed_form_system(&params, &tol)?;
            let bio = verify_biorthonormality(&sys, &tol);
            let t = two_level_factorization(&params, &tol)?;
            let mut v = system_json(&sys, &tol);
            v["energy"] = complex_json(t.energy);
            v["case"] = value(&t.case);
            v["biorthonormality"] = value(&bio);
            v["factorization"] = factorization_json(&t.factorization);
            ("twolevel", v, bio.pass && t.factorization.pass())
        }
        Command::Demo { which: DemoKind::Oscillator, omega } => {
            let r = oscillator_demo(*omega, &tol)?;
            let v = json!({
                "omega": r.omega,
                "h_o": matrix_json(&r.h_o),
                "psi": matrix_json(&r.psi),
                "phi": matrix_json(&r.phi),
                "eta1": matrix_json(&r.eta1),
                "eta1_inverse": matrix_json(&r.eta1_inverse),
                "eta2": matrix_json(&r.eta2),
                "l": matrix_json(&r.l),
                "l_sharp": matrix_json(&r.l_sharp),
                "biorthonormality": value(&r.biorthonormality),
                "l_sharp_l": check(&r.l_sharp_l),
                "l_l_sharp": check(&r.l_l_sharp),
                "pseudo_hermiticity_eta1": check(&r.pseudo_hermiticity_eta1),
                "pseudo_hermiticity_eta2": check(&r.pseudo_hermiticity_eta2),
            });
            let pass = r.biorthonormality.pass
                && r.l_sharp_l.pass
                && r.l_l_sharp.pass
                && r.pseudo_hermiticity_eta1.pass
                && r.pseudo_hermiticity_eta2.pass;
            ("demo oscillator", v, pass)
        }
        Command::Demo { which: DemoKind::Spin, omega } => {
            let r = spin_intertwine_demo(*omega, &tol)?;
            let v = json!({
                "omega": r.omega,
                "h_o": matrix_json(&r.h_o),
                "h_s": matrix_json(&r.h_s),
                "eta1": matrix_json(&r.eta1),
                "eta2": matrix_json(&r.eta2),
                "l": matrix_json(&r.l),
                "l_sharp": matrix_json(&r.l_sharp),
                "l_sharp_l": check(&r.l_sharp_l),
                "l_l_sharp": check(&r.l_l_sharp),
                "intertwining": check(&r.intertwining),
            });
            ("demo spin", v, r.l_sharp_l.pass && r.l_l_sharp.pass && r.intertwining.pass)
        }
    })
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotSquare { .. } => "NotSquare",
        Error::DimensionMismatch(_) => "DimensionMismatch",
        Error::NonFinite { .. } => "NonFinite",
        Error::InvalidTolerance(_) => "InvalidTolerance",
        Error::NumericalFailure(_) => "NumericalFailure",
        Error::NonDiagonalizable(_) => "NonDiagonalizable",
        Error::NotPseudoHermitian(_) => "NotPseudoHermitian",
        Error::RealSpectrumRequired => "RealSpectrumRequired",
        Error::InvalidEta(_) => "InvalidEta",
        Error::NotIsospectral(_) => "NotIsospectral",
        Error::DegenerateTwoLevel => "DegenerateTwoLevel",
        Error::NonRealDeterminant { .. } => "NonRealDeterminant",
        Error::InvalidSigns(_) => "InvalidSigns",
        Error::Singular => "Singular",
        Error::InvalidArgument(_) => "InvalidArgument",
    }
}

/// Parse `args`, execute, write the report to `out` and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let mode = if cli.pretty { Mode::Pretty } else { Mode::Json };
    let tol = match tolerance(cli.tol) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let mut ctx = Context { tol, inputs: Vec::new() };
    match dispatch(&cli.command, &mut ctx) {
        Ok((name, result, pass)) => {
            let report = json!({
                "command": name,
                "inputs": ctx.inputs,
                "tolerance": value(&tol),
                "result": result,
                "pass": pass,
            });
            let _ = out.write_all(emit_report(&report, mode).as_bytes());
            if pass {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Numerical(e)) => {
            let report = json!({
                "command": command_name(&cli.command),
                "inputs": ctx.inputs,
                "tolerance": value(&tol),
                "error": { "kind": error_kind(&e), "message": e.to_string() },
                "pass": false,
            });
            let _ = out.write_all(emit_report(&report, mode).as_bytes());
            1
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Spectrum { .. } => "spectrum",
        Command::Eta { .. } => "eta",
        Command::Factor { .. } => "factor",
        Command::Intertwine { .. } => "intertwine",
        Command::Psusy { .. } => "psusy",
        Command::Witten { .. } => "witten",
        Command::Twolevel { .. } => "twolevel",
        Command::Demo { which: DemoKind::Oscillator, .. } => "demo oscillator",
        Command::Demo { which: DemoKind::Spin, .. } => "demo spin",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("pseudosusy").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("1.5").unwrap(), C64::new(1.5, 0.0));
        assert_eq!(parse_complex("-1,-2").unwrap(), C64::new(-1.0, -2.0));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("nan").is_err());
    }

    #[test]
    fn spin_demo_passes() {
        let (code, out, _) = run_str(&["demo", "spin", "--omega", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], json!(true));
        assert_eq!(v["result"]["l"]["rows"], json!(2));
    }

    #[test]
    fn twolevel_with_negative_values() {
        let (code, out, err) = run_str(&["twolevel", "--a", "-1,0", "--b", "0", "--c", "5"]);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["case"], json!("RealEnergy"));
    }

    #[test]
    fn non_real_determinant_exits_one() {
        let (code, out, _) = run_str(&["twolevel", "--a", "1,1", "--b", "1", "--c", "0"]);
        assert_eq!(code, 1);
        assert!(out.contains("NonRealDeterminant"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["bogus"]).0, 2);
        assert_eq!(run_str(&["spectrum", "/nonexistent/file.json"]).0, 2);
        assert_eq!(run_str(&["--tol", "-1", "demo", "spin", "--omega", "1"]).0, 2);
    }

    #[test]
    fn pretty_mode_has_markers() {
        let (code, out, _) = run_str(&["--pretty", "demo", "oscillator", "--omega", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("[PASS] l_sharp_l"));
    }
}
