// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! errors (bad flags, invalid inputs, unwritable output).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::bispinor::{boost_bispinor, dirac_residual, extract_phase, rest_bispinor, spin_eigen_residual};
use crate::clifford::{build_gamma_basis, ComplexMatrix4, GammaBasis, Vec3};
use crate::harness::{run_suite, SuiteConfig, DEFAULT_SEED};
use crate::little_group::{
    axis_tensor, element, factor, momentum_residual, spin_conjugation_residual, FactorOrder, Factorization,
};
use crate::polar::polar_factor;
use crate::spin_tensor::{boost_spin_axis, FourMomentum, UnitAxis};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SWEEP_HEADER: &str = "phi,rot2r,u,beta,bdir_x,bdir_y,bdir_z,phase_re,phase_im";

#[derive(Parser, Debug)]
#[command(
    name = "spingroup",
    version,
    about = "Spin-group elements of massive spin-1/2 fermions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the seeded property suite.
    Verify(VerifyArgs),
    /// Factorize one spin-group element into a boost and a rotation.
    Factorize(FactorizeArgs),
    /// Tabulate the factorization over a uniform grid of phi.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    tol_strict: f64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    tol_accum: f64,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    mass: f64,
    /// Largest |p| drawn, in units of the mass.
    #[arg(long, default_value_t = 5.0, value_parser = non_negative)]
    p_max: f64,
    /// Evaluate draws on one thread.
    #[arg(long)]
    serial: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Br,
    Rb,
}

impl From<OrderArg> for FactorOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Br => FactorOrder::BoostRotation,
            OrderArg::Rb => FactorOrder::RotationBoost,
        }
    }
}

#[derive(Args, Debug)]
struct Particle {
    /// Spatial momentum x,y,z in units of the mass.
    #[arg(long, allow_hyphen_values = true, value_parser = triple)]
    p: [f64; 3],
    /// Rest-frame spin axis x,y,z; normalized before use.
    #[arg(long, allow_hyphen_values = true, value_parser = triple)]
    spin: [f64; 3],
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    mass: f64,
}

#[derive(Args, Debug)]
struct FactorizeArgs {
    #[command(flatten)]
    particle: Particle,
    #[arg(long, allow_negative_numbers = true, value_parser = finite)]
    phi: f64,
    #[arg(long, value_enum, default_value_t = OrderArg::Br)]
    order: OrderArg,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    tol_strict: f64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    tol_accum: f64,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    particle: Particle,
    #[arg(long, value_parser = positive)]
    phi_max: f64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    steps: u64,
    #[arg(long, value_enum, default_value_t = OrderArg::Br)]
    order: OrderArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err("must be finite".into())
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err("must be positive".into())
    }
}

fn non_negative(s: &str) -> Result<f64, String> {
    let v = finite(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err("must not be negative".into())
    }
}

fn triple(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated numbers x,y,z".into());
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = finite(part)?;
    }
    Ok(out)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Factorize(a) => cmd_factorize(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(stderr, "spingroup: {msg}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| format!("cannot write output: {e}")),
    }
}

fn cmd_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<i32, String> {
    let cfg = SuiteConfig {
        seed: a.seed,
        trials: usize::try_from(a.trials).map_err(|e| e.to_string())?,
        tol_strict: a.tol_strict,
        tol_accum: a.tol_accum,
        mass: a.mass,
        p_max_over_m: a.p_max,
        parallel: !a.serial,
    };
    let report = run_suite(&cfg).map_err(|e| e.to_string())?;
    let text = if a.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    emit(&a.out, &text, stdout)?;
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

struct Resolved {
    momentum: FourMomentum,
    spin: UnitAxis,
    spin_input: [f64; 3],
}

fn resolve(particle: &Particle) -> Result<Resolved, String> {
    let [x, y, z] = particle.p;
    let momentum = FourMomentum::new(particle.mass, Vec3::new(x, y, z) * particle.mass).map_err(|e| e.to_string())?;
    let [sx, sy, sz] = particle.spin;
    let spin = UnitAxis::normalized(Vec3::new(sx, sy, sz)).map_err(|e| format!("--spin: {e}"))?;
    Ok(Resolved {
        momentum,
        spin,
        spin_input: particle.spin,
    })
}

type MatrixDoc = [[[f64; 2]; 4]; 4];

fn matrix_doc(m: &ComplexMatrix4) -> MatrixDoc {
    let mut out = [[[0.0; 2]; 4]; 4];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let z = m.get(r, c);
            *cell = [z.re, z.im];
        }
    }
    out
}

fn vec_doc(v: &Vec3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

#[derive(Serialize)]
struct FactorizeInput {
    mass: f64,
    momentum: [f64; 3],
    energy: f64,
    spin_input: [f64; 3],
    spin: [f64; 3],
    spin_normalized: bool,
    phi: f64,
    order: &'static str,
}

#[derive(Serialize)]
struct FactorizeResiduals {
    product: f64,
    polar_boost: f64,
    polar_rotation: f64,
    momentum: f64,
    spin_invariance: f64,
    phase: f64,
    phase_eigen: f64,
    dirac: f64,
    spin_eigen: f64,
}

#[derive(Serialize)]
struct FactorizeDoc {
    input: FactorizeInput,
    element: MatrixDoc,
    boost_factor: MatrixDoc,
    rotation_factor: MatrixDoc,
    rotation_angle_2r: f64,
    boost_param: f64,
    boost_beta: f64,
    boost_direction: [f64; 3],
    phase: [f64; 2],
    expected_phase: [f64; 2],
    residuals: FactorizeResiduals,
    tol_strict: f64,
    tol_accum: f64,
    pass: bool,
}

fn cmd_factorize(a: FactorizeArgs, stdout: &mut dyn Write) -> Result<i32, String> {
    let basis = build_gamma_basis();
    let r = resolve(&a.particle)?;
    let order = FactorOrder::from(a.order);
    let el = element(&axis_tensor(&r.momentum, &r.spin), a.phi, &basis).map_err(|e| e.to_string())?;

    let f = match factor(&el, order, &basis) {
        Ok(f) => f,
        Err(e) => {
            emit(&a.out, &format!("factorization failed: {e}\n"), stdout)?;
            return Ok(EXIT_FAIL);
        }
    };
    let residuals = factorize_residuals(&r, &el, &f, &basis).map_err(|e| e.to_string())?;
    let (phase, _) = phase_of(&r, el.matrix(), &basis).map_err(|e| e.to_string())?;
    let expected = Complex64::from_polar(1.0, -0.5 * a.phi);

    let accum = [
        residuals.product,
        residuals.polar_boost,
        residuals.polar_rotation,
        residuals.momentum,
        residuals.phase,
    ];
    let strict = [
        residuals.spin_invariance,
        residuals.phase_eigen,
        residuals.dirac,
        residuals.spin_eigen,
    ];
    let pass = accum.iter().all(|&x| x <= a.tol_accum) && strict.iter().all(|&x| x <= a.tol_strict);

    let doc = FactorizeDoc {
        input: FactorizeInput {
            mass: r.momentum.mass(),
            momentum: vec_doc(r.momentum.spatial()),
            energy: r.momentum.energy(),
            spin_input: r.spin_input,
            spin: vec_doc(r.spin.vector()),
            spin_normalized: vec_doc(r.spin.vector()) != r.spin_input,
            phi: a.phi,
            order: order.label(),
        },
        element: matrix_doc(el.matrix()),
        boost_factor: matrix_doc(&f.boost_factor),
        rotation_factor: matrix_doc(&f.rotation_factor),
        rotation_angle_2r: f.rotation_angle_2r,
        boost_param: f.boost_param,
        boost_beta: f.boost_beta(),
        boost_direction: vec_doc(&f.boost_direction),
        phase: [phase.re, phase.im],
        expected_phase: [expected.re, expected.im],
        residuals,
        tol_strict: a.tol_strict,
        tol_accum: a.tol_accum,
        pass,
    };
    let text = if a.json {
        serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())? + "\n"
    } else {
        factorize_text(&doc)
    };
    emit(&a.out, &text, stdout)?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn phase_of(r: &Resolved, w: &ComplexMatrix4, basis: &GammaBasis) -> crate::Result<(Complex64, f64)> {
    let psi = boost_bispinor(&rest_bispinor(&r.spin, basis)?, &r.momentum, basis);
    Ok(extract_phase(w, &psi))
}

fn factorize_residuals(
    r: &Resolved,
    el: &crate::little_group::LittleGroupElement,
    f: &Factorization,
    basis: &GammaBasis,
) -> crate::Result<FactorizeResiduals> {
    let oracle = polar_factor(el, f.order, basis)?;
    let s = boost_spin_axis(&r.momentum, &r.spin);
    let psi = boost_bispinor(&rest_bispinor(&r.spin, basis)?, &r.momentum, basis);
    let (phase, phase_eigen) = extract_phase(el.matrix(), &psi);
    Ok(FactorizeResiduals {
        product: f.product().max_abs_diff(el.matrix()),
        polar_boost: f.boost_factor.max_abs_diff(&oracle.boost_factor),
        polar_rotation: f.rotation_factor.max_abs_diff(&oracle.rotation_factor),
        momentum: momentum_residual(el, basis)?,
        spin_invariance: spin_conjugation_residual(el, &s, basis)?,
        phase: (phase - Complex64::from_polar(1.0, -0.5 * el.phi())).norm(),
        phase_eigen,
        dirac: dirac_residual(&psi, &r.momentum, basis),
        spin_eigen: spin_eigen_residual(&psi, &s, basis),
    })
}

fn matrix_text(name: &str, m: &MatrixDoc) -> String {
    let mut out = format!("{name}:\n");
    for row in m {
        let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re:+.9}{im:+.9}i")).collect();
        out.push_str(&format!("  [{}]\n", cells.join("  ")));
    }
    out
}

fn factorize_text(d: &FactorizeDoc) -> String {
    let i = &d.input;
    let mut out = format!(
        "mass {}  p ({}, {}, {})  p0 {}\nspin ({}, {}, {}){}\nphi {}  order {}\n",
        i.mass,
        i.momentum[0],
        i.momentum[1],
        i.momentum[2],
        i.energy,
        i.spin[0],
        i.spin[1],
        i.spin[2],
        if i.spin_normalized {
            "  (normalized from input)"
        } else {
            ""
        },
        i.phi,
        i.order
    );
    out.push_str(&matrix_text("W", &d.element));
    out.push_str(&matrix_text("boost factor", &d.boost_factor));
    out.push_str(&matrix_text("rotation factor", &d.rotation_factor));
    out.push_str(&format!(
        "rotation angle 2r {:.12}\nboost |u| {:.12}\nboost beta {:.12}\nboost direction ({:.12}, {:.12}, {:.12})\n",
        d.rotation_angle_2r,
        d.boost_param,
        d.boost_beta,
        d.boost_direction[0],
        d.boost_direction[1],
        d.boost_direction[2]
    ));
    out.push_str(&format!(
        "phase <psi|W|psi> {:+.12}{:+.12}i  (expected {:+.12}{:+.12}i)\n",
        d.phase[0], d.phase[1], d.expected_phase[0], d.expected_phase[1]
    ));
    let r = &d.residuals;
    out.push_str(&format!(
        "residuals: product {:.3e}  polar boost {:.3e}  polar rotation {:.3e}  momentum {:.3e}\n           spin invariance {:.3e}  phase {:.3e}  phase eigen {:.3e}  dirac {:.3e}  spin eigen {:.3e}\n",
        r.product, r.polar_boost, r.polar_rotation, r.momentum, r.spin_invariance, r.phase, r.phase_eigen, r.dirac, r.spin_eigen
    ));
    out.push_str(if d.pass { "PASS\n" } else { "FAIL\n" });
    out
}

/// One CSV row per grid point `phi_max * i / steps`, `i = 0..=steps`.
pub fn sweep_rows(
    p: &FourMomentum,
    spin: &UnitAxis,
    phi_max: f64,
    steps: u64,
    order: FactorOrder,
    basis: &GammaBasis,
) -> crate::Result<Vec<[f64; 9]>> {
    let axis = axis_tensor(p, spin);
    let psi = boost_bispinor(&rest_bispinor(spin, basis)?, p, basis);
    (0..=steps)
        .map(|i| {
            let phi = phi_max * i as f64 / steps as f64;
            let el = element(&axis, phi, basis)?;
            let f = factor(&el, order, basis)?;
            let (phase, _) = extract_phase(el.matrix(), &psi);
            let d = f.boost_direction;
            Ok([
                phi,
                f.rotation_angle_2r,
                f.boost_param,
                f.boost_beta(),
                d.x,
                d.y,
                d.z,
                phase.re,
                phase.im,
            ])
        })
        .collect()
}

fn cmd_sweep(a: SweepArgs, stdout: &mut dyn Write) -> Result<i32, String> {
    let basis = build_gamma_basis();
    let r = resolve(&a.particle)?;
    let rows = match sweep_rows(&r.momentum, &r.spin, a.phi_max, a.steps, a.order.into(), &basis) {
        Ok(rows) => rows,
        Err(e) => {
            emit(&a.out, &format!("sweep failed: {e}\n"), stdout)?;
            return Ok(EXIT_FAIL);
        }
    };
    let mut text = String::from(SWEEP_HEADER);
    text.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    emit(&a.out, &text, stdout)?;
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("spingroup").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn triple_parsing() {
        assert_eq!(triple("1,-2.5,3e-1"), Ok([1.0, -2.5, 0.3]));
        assert!(triple("1,2").is_err());
        assert!(triple("1,2,nan").is_err());
        assert!(triple("a,b,c").is_err());
    }

    #[test]
    fn help_exits_zero_and_bad_flags_exit_two() {
        assert_eq!(run_args(&["--help"]).0, EXIT_PASS);
        assert_eq!(run_args(&["verify", "--trials", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&["factorize", "--p", "0,0,0", "--spin", "0,0,0", "--phi", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run_args(&[
                "sweep",
                "--p",
                "0,0,0",
                "--spin",
                "0,0,1",
                "--phi-max",
                "1",
                "--steps",
                "1"
            ])
            .0,
            EXIT_USAGE
        );
    }

    #[test]
    fn negative_inputs_parse() {
        let (code, out, _) = run_args(&["factorize", "--p", "-1,0,0", "--spin", "0,0,-1", "--phi", "-0.5"]);
        assert_eq!(code, EXIT_PASS, "{out}");
    }

    #[test]
    fn sweep_rows_include_both_endpoints() {
        let basis = build_gamma_basis();
        let p = FourMomentum::at_rest(1.0).unwrap();
        let rows = sweep_rows(&p, &UnitAxis::z(), 2.0, 4, FactorOrder::BoostRotation, &basis).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[0][0], 0.0);
        assert_eq!(rows[4][0], 2.0);
    }
}
