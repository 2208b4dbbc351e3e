//! Command-line front end. [`run`] parses arguments, runs one pipeline and
//! returns the exit status: 0 on success, 2 when a hypothesis check fails
//! (results are printed but not guaranteed), 1 on errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::biparam::{gcd_of_inputs, lift_exponent, lift_mixed, parse_parametrization, Parametrization};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::matrixrep::{
    build_matrix, extract_gcd_of_minors, interpolation_oracle, lci_diagnostic, membership, verify_substitution,
    RepMatrix, Strategy,
};
use crate::tpoly::{TPoly, VarSet};
use crate::zcomplex::{choose_nu0, strand_report, Nu0Choice, SegreIdeal, StrandReport};

/// Largest `k` for which the default strategy expands minors symbolically.
const SYMBOLIC_MAX_ROWS: usize = 16;
const DEFAULT_SAMPLES: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "segre-implicit", version, about = "Implicitization of P1 x P1 surfaces through linear syzygies")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Degree of the syzygy strand (default: the validated nu0).
    #[arg(long, global = true)]
    nu: Option<u32>,

    /// Lower nu0 using the initial degree of the saturated ideal.
    #[arg(long, global = true)]
    saturate: bool,

    /// Work over GF(p) instead of Q.
    #[arg(long = "mod", value_name = "p", global = true)]
    modulus: Option<u64>,

    /// Minor selection: all, sampled:N, interp:N or auto.
    #[arg(long, default_value = "auto", global = true)]
    strategy: String,

    /// Projective point a,b,c,d for `membership`.
    #[arg(long, allow_hyphen_values = true, global = true)]
    point: Option<String>,

    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Equation file for `verify` (text or the JSON of `implicit`).
    #[arg(long, global = true)]
    equation: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Strand dimensions, Euler characteristic, expected degree and nu0.
    Info { input: PathBuf },
    /// The representation matrix M.
    Matrix { input: PathBuf },
    /// Rank test of M at --point.
    Membership { input: PathBuf },
    /// gcd of the maximal minors of M.
    Implicit { input: PathBuf },
    /// Substitutes the parametrization into --equation.
    Verify { input: PathBuf },
    /// Lifts a bidegree (d1,d2) input to (L,L).
    Lift { input: PathBuf },
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation, writing results to `out` and messages to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut session = Session { cli: &cli, out, err, diagnostics: Vec::new() };
    match session.dispatch() {
        Ok(()) if session.diagnostics.is_empty() => 0,
        Ok(()) => 2,
        Err(Error::AllMinorsZero) => {
            let _ = writeln!(session.err, "error: {}", Error::AllMinorsZero);
            2
        }
        Err(e) => {
            let _ = writeln!(session.err, "error: {e}");
            1
        }
    }
}

struct Session<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    diagnostics: Vec<String>,
}

/// Input after parsing, reduction mod p and lifting.
struct Prepared {
    original: Parametrization,
    param: Parametrization,
    ideal: SegreIdeal,
}

/// Where the strand degree came from.
struct NuChoice {
    nu: u32,
    nu0: Nu0Choice,
}

impl Session<'_> {
    fn dispatch(&mut self) -> Result<()> {
        match &self.cli.command {
            Command::Info { input } => self.cmd_info(input),
            Command::Matrix { input } => self.cmd_matrix(input),
            Command::Membership { input } => self.cmd_membership(input),
            Command::Implicit { input } => self.cmd_implicit(input),
            Command::Verify { input } => self.cmd_verify(input),
            Command::Lift { input } => self.cmd_lift(input),
        }
    }

    fn warn(&mut self, msg: String) {
        let _ = writeln!(self.err, "warning: {msg}");
        self.diagnostics.push(msg);
    }

    fn note(&mut self, msg: &str) {
        let _ = writeln!(self.err, "note: {msg}");
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.cli.seed)
    }

    fn emit_json<S: Serialize>(&mut self, value: &S) -> Result<()> {
        serde_json::to_writer_pretty(&mut *self.out, value)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn read_input(&mut self, path: &Path) -> Result<Parametrization> {
        let p = parse_parametrization(&std::fs::read_to_string(path)?)?;
        match self.cli.modulus {
            Some(m) => {
                Field::prime(m)?;
                p.reduce_mod(m)
            }
            None => Ok(p),
        }
    }

    fn prepare(&mut self, path: &Path) -> Result<Prepared> {
        let original = self.read_input(path)?;
        let (d1, d2) = original.bidegree();
        let param = if d1 != d2 {
            let lifted = lift_mixed(&original)?;
            self.note(&format!(
                "bidegree ({d1},{d2}) lifted to ({l},{l}); the determinant carries an extra power {}",
                lift_exponent((d1, d2)),
                l = lifted.bidegree().0
            ));
            lifted
        } else {
            original.clone()
        };
        let g = gcd_of_inputs(&param);
        if !g.as_poly().is_constant() {
            self.warn(format!("base locus not finite (common factor {g}), results unguaranteed"));
        }
        let ideal = SegreIdeal::from_parametrization(&param)?;
        Ok(Prepared { original, param, ideal })
    }

    fn choose_nu(&mut self, ideal: &SegreIdeal) -> NuChoice {
        let nu0 = choose_nu0(ideal, self.cli.saturate);
        if !nu0.validated {
            self.warn(format!(
                "saturation bound nu0={} failed validation, using nu0={}",
                nu0.candidate.unwrap_or(nu0.conservative),
                nu0.chosen
            ));
        }
        let nu = match self.cli.nu {
            Some(nu) => {
                if nu < nu0.chosen {
                    self.warn(format!("nu={nu} is below nu0={}, results unguaranteed", nu0.chosen));
                }
                nu
            }
            None => nu0.chosen,
        };
        NuChoice { nu, nu0 }
    }

    fn report(&mut self, ideal: &SegreIdeal, choice: &NuChoice) -> StrandReport {
        let mut r = strand_report(ideal, choice.nu);
        r.nu0_conservative = choice.nu0.conservative;
        if self.cli.saturate {
            r.nu0_optimized = Some(choice.nu0.chosen);
            r.indeg_sat = choice.nu0.indeg_sat;
        }
        if r.euler != 0 {
            self.warn(format!("Euler characteristic {} at nu={} (expected 0): hypotheses violated", r.euler, r.nu));
        }
        r
    }

    fn cmd_info(&mut self, input: &Path) -> Result<()> {
        let prep = self.prepare(input)?;
        let choice = self.choose_nu(&prep.ideal);
        let r = self.report(&prep.ideal, &choice);
        if self.cli.json {
            let diagnostics = self.diagnostics.clone();
            return self.emit_json(&json!({ "report": r, "nu0": choice.nu0, "diagnostics": diagnostics }));
        }
        let out = &mut *self.out;
        writeln!(out, "d = {}", r.d)?;
        writeln!(out, "nu = {}", r.nu)?;
        writeln!(
            out,
            "strand dims: A_nu = {}, Z1 = {}, Z2 = {}, Z3 = {}",
            r.dims[0], r.dims[1], r.dims[2], r.dims[3]
        )?;
        writeln!(out, "euler characteristic = {}", r.euler)?;
        match r.nu0_optimized {
            Some(opt) => writeln!(
                out,
                "expected degree {}, nu0={}, optimized nu0={opt}",
                r.expected_deg_d, r.nu0_conservative
            )?,
            None => writeln!(out, "expected degree {}, nu0={}", r.expected_deg_d, r.nu0_conservative)?,
        }
        if let Some(i) = r.indeg_sat {
            writeln!(out, "indeg(I^sat) = {i}")?;
        }
        if let Some(s) = r.sum_dp {
            writeln!(out, "sum d_p = {s}")?;
        }
        Ok(())
    }

    fn matrix(&mut self, input: &Path) -> Result<(Prepared, NuChoice, RepMatrix)> {
        let prep = self.prepare(input)?;
        let choice = self.choose_nu(&prep.ideal);
        let m = build_matrix(&prep.ideal, choice.nu);
        Ok((prep, choice, m))
    }

    fn cmd_matrix(&mut self, input: &Path) -> Result<()> {
        let (_, _, m) = self.matrix(input)?;
        if self.cli.json {
            return self.emit_json(&m.to_json());
        }
        write!(self.out, "{}", m.to_text())?;
        Ok(())
    }

    fn cmd_membership(&mut self, input: &Path) -> Result<()> {
        let text = self.cli.point.clone().ok_or_else(|| Error::InvalidArgument("membership needs --point".into()))?;
        let (prep, _, m) = self.matrix(input)?;
        let point = parse_point(&text, prep.param.field())?;
        let res = membership(&m, &point, m.rows())?;
        if self.cli.json {
            let pt: Vec<String> = point.iter().map(ToString::to_string).collect();
            return self.emit_json(&json!({ "point": pt, "on_surface": res.on_surface, "rank": res.rank, "k": res.k }));
        }
        if res.on_surface {
            writeln!(self.out, "ON (rank {} < k = {})", res.rank, res.k)?;
        } else {
            writeln!(self.out, "OFF (rank {} = k)", res.rank)?;
        }
        Ok(())
    }

    fn strategy(&self, m: &RepMatrix) -> Result<Strategy> {
        match self.cli.strategy.as_str() {
            "auto" if m.rows() <= SYMBOLIC_MAX_ROWS => Ok(Strategy::Sampled(DEFAULT_SAMPLES)),
            "auto" => Ok(Strategy::Interpolated(3)),
            s => s.parse(),
        }
    }

    fn cmd_implicit(&mut self, input: &Path) -> Result<()> {
        let (prep, choice, m) = self.matrix(input)?;
        let report = self.report(&prep.ideal, &choice);
        let strategy = self.strategy(&m)?;
        let mut rng = self.rng();
        let d = extract_gcd_of_minors(&m, strategy, &mut rng)?;
        let degree = d.total_degree().unwrap_or(0);
        if i64::from(degree) != report.expected_deg_d {
            self.warn(format!("gcd has degree {degree}, expected {}", report.expected_deg_d));
        }
        // Radical part and multiplicity, against the independent oracle.
        let oracle = if degree > 0 { interpolation_oracle(&prep.param, degree, &mut rng).ok() } else { None };
        let diag = match &oracle {
            Some(f) => lci_diagnostic(&d, f).ok(),
            None => None,
        };
        let (d1, d2) = prep.original.bidegree();
        let lift = (d1 != d2).then(|| lift_exponent((d1, d2)));
        if self.cli.json {
            let diagnostics = self.diagnostics.clone();
            return self.emit_json(&json!({
                "equation": d.to_string(),
                "degree": degree,
                "expected_degree": report.expected_deg_d,
                "nu": m.nu(),
                "rows": m.rows(),
                "cols": m.cols(),
                "strategy": strategy.to_string(),
                "oracle_equation": oracle.as_ref().map(ToString::to_string),
                "e": diag.as_ref().map(|x| x.e),
                "g": diag.as_ref().map(|x| x.g.to_string()),
                "lci": diag.as_ref().map(|x| x.lci),
                "lift_exponent": lift,
                "diagnostics": diagnostics,
            }));
        }
        let out = &mut *self.out;
        writeln!(out, "{d}")?;
        writeln!(
            out,
            "# degree {degree} (expected {}), nu = {}, matrix {}x{}, strategy {strategy}",
            report.expected_deg_d,
            m.nu(),
            m.rows(),
            m.cols()
        )?;
        match (&oracle, &diag) {
            (Some(f), Some(x)) => {
                let g = if x.lci { "G constant (locally complete intersection)".to_string() } else { format!("G = {}", x.g) };
                writeln!(out, "# oracle equation of degree {}; D = c * F^{} * G, {g}", f.total_degree().unwrap_or(0), x.e)?;
            }
            (Some(f), None) => writeln!(out, "# oracle equation of degree {} does not divide D", f.total_degree().unwrap_or(0))?,
            _ => writeln!(out, "# no oracle equation up to degree {degree}")?,
        }
        if let Some(l) = lift {
            writeln!(out, "# lifted from bidegree ({d1},{d2}): the lift contributes a factor {l} to the exponent")?;
        }
        Ok(())
    }

    fn cmd_verify(&mut self, input: &Path) -> Result<()> {
        let path = self.cli.equation.clone().ok_or_else(|| Error::InvalidArgument("verify needs --equation".into()))?;
        let p = self.read_input(input)?;
        let f = read_equation(&path, p.field())?;
        let ok = verify_substitution(&f, &p)?;
        if self.cli.json {
            self.emit_json(&json!({ "equation": f.to_string(), "vanishes": ok }))?;
        } else if ok {
            writeln!(self.out, "OK: F(f1,f2,f3,f4) = 0")?;
        } else {
            writeln!(self.out, "FAIL: F(f1,f2,f3,f4) is not zero")?;
        }
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("the equation does not vanish on the parametrization".into()))
        }
    }

    fn cmd_lift(&mut self, input: &Path) -> Result<()> {
        let p = self.read_input(input)?;
        let lifted = lift_mixed(&p)?;
        if self.cli.json {
            let f: Vec<String> = lifted.polys().iter().map(ToString::to_string).collect();
            return self.emit_json(&json!({
                "bidegree": [lifted.bidegree().0, lifted.bidegree().1],
                "field": lifted.field().to_string(),
                "lift_exponent": lift_exponent(p.bidegree()),
                "f": f,
            }));
        }
        write!(self.out, "{}", lifted.to_text())?;
        Ok(())
    }
}

/// `a,b,c,d` with rational or integer entries.
pub fn parse_point(text: &str, field: Field) -> Result<[FieldElem; 4]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::InvalidArgument(format!("point `{text}` needs four coordinates")));
    }
    let v = parts.iter().map(|s| FieldElem::parse(s, field)).collect::<Result<Vec<_>>>()?;
    Ok(v.try_into().expect("four coordinates"))
}

/// An equation file: polynomial text (lines starting with `#` are skipped) or
/// a JSON object with an `equation` field.
pub fn read_equation(path: &Path, field: Field) -> Result<TPoly> {
    let text = std::fs::read_to_string(path)?;
    let trimmed = text.trim_start();
    let poly = if trimmed.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(trimmed)?;
        v.get("equation")
            .and_then(|e| e.as_str())
            .ok_or_else(|| Error::InvalidArgument("JSON equation file without an `equation` string".into()))?
            .to_string()
    } else {
        text.lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| Error::InvalidArgument("empty equation file".into()))?
            .to_string()
    };
    TPoly::parse(&poly, VarSet::T, field)
}
