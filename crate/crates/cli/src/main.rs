//! Command-line front door: polytope ingestion, command dispatch and
//! JSON/text report emission.
//!
//! Exit codes: 0 on success (including warnings), 1 when a validation or
//! verification fails, 2 on structural or input errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::PathBuf;
use syzkit::brane::{clifford_form, complex_det, endomorphism_dim, floer_nontrivial};
use syzkit::forms::{
    check_transform_theorem, exp_i_omega_x, exp_i_omega_y, seeded_spd_matrices, volume_form_x,
    volume_form_y, DifferentialForm, PhiMatrix,
};
use syzkit::lattice::{is_normalized, normalize_basis, validate_smooth_fano, FanPolytope};
use syzkit::loops::{qh_presentation, verify_qh_jac_iso};
use syzkit::mirror::{build_superpotential, critical_points, jacobian_ring};
use syzkit::presets;

#[derive(Parser)]
#[command(
    name = "syzkit",
    about = "Exact mirror symmetry toolkit for smooth toric Fano manifolds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Named preset (CP1, CP2, CP3, CP1xCP1, CP1xCP2, Bl1CP2).
    #[arg(long, conflicts_with = "file")]
    preset: Option<String>,
    /// Polytope JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    /// Report format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NumericArgs {
    /// Kähler parameter values, e.g. "1=1,2=1/2" or "q1=0.3".
    #[arg(long)]
    q: Option<String>,
    /// Residual tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the smooth Fano conditions on a polytope.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the mirror superpotential.
    Mirror {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Present the Jacobian ring of the superpotential.
    Jacobian {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Present quantum cohomology by divisor generators and relations.
    Qh {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify the presentation-level isomorphism QH = Jac(W).
    VerifyIso {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Stratum-by-stratum check of the toric transform identities.
    SyzCheck {
        #[command(flatten)]
        input: InputArgs,
        /// Convolution cutoff for the exponential.
        #[arg(long, default_value_t = 4)]
        cutoff: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Structure-form identity battery for the semi-flat transform.
    SemiflatCheck {
        /// Restrict to one dimension (default: the full battery).
        #[arg(long)]
        dim: Option<usize>,
        /// Metric matrix as a JSON array of rational strings.
        #[arg(long)]
        phi: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerically solve for critical points of the superpotential.
    Critical {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Clifford forms and Floer data at the critical points.
    Clifford {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        numeric: NumericArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

enum Status {
    Ok,
    Warn,
    Fail,
}

impl Status {
    fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Warn => "warn",
            Status::Fail => "fail",
        }
    }
}

struct Report {
    command: &'static str,
    status: Status,
    payload: Value,
    text: String,
}

enum CliError {
    Input(String),
}

impl From<syzkit::Error> for CliError {
    fn from(e: syzkit::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Validate { input, output } => cmd_validate(&input).map(|r| (r, output)),
        Command::Mirror { input, output } => cmd_mirror(&input).map(|r| (r, output)),
        Command::Jacobian { input, output } => cmd_jacobian(&input).map(|r| (r, output)),
        Command::Qh { input, output } => cmd_qh(&input).map(|r| (r, output)),
        Command::VerifyIso { input, output } => cmd_verify_iso(&input).map(|r| (r, output)),
        Command::SyzCheck { input, cutoff, output } => {
            cmd_syz_check(&input, cutoff).map(|r| (r, output))
        }
        Command::SemiflatCheck { dim, phi, output } => {
            cmd_semiflat_check(dim, phi.as_deref()).map(|r| (r, output))
        }
        Command::Critical { input, numeric, output } => {
            cmd_critical(&input, &numeric).map(|r| (r, output))
        }
        Command::Clifford { input, numeric, output } => {
            cmd_clifford(&input, &numeric).map(|r| (r, output))
        }
    };
    match result {
        Ok((report, output)) => {
            let body = match output.format {
                Format::Json => {
                    let doc = json!({
                        "command": report.command,
                        "status": report.status.as_str(),
                        "payload": report.payload,
                    });
                    format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
                }
                Format::Text => {
                    format!(
                        "command: {}\nstatus: {}\n{}",
                        report.command,
                        report.status.as_str(),
                        report.text
                    )
                }
            };
            match &output.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{body}"),
            }
            match report.status {
                Status::Fail => 1,
                _ => 0,
            }
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn load_polytope(input: &InputArgs) -> Result<(FanPolytope, String), CliError> {
    match (&input.preset, &input.file) {
        (Some(name), None) => {
            let fp = presets::preset(name)?;
            Ok((fp, name.clone()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let fp = FanPolytope::from_json(&text)?;
            Ok((fp, path.display().to_string()))
        }
        _ => Err(CliError::Input(
            "exactly one of --preset or --file is required".into(),
        )),
    }
}

/// Loader for the commands whose preconditions need the normalized form:
/// file inputs are brought to the standard basis first.
fn load_normalized(input: &InputArgs) -> Result<(FanPolytope, String), CliError> {
    let (fp, source) = load_polytope(input)?;
    if is_normalized(&fp) {
        Ok((fp, source))
    } else {
        Ok((normalize_basis(&fp)?, source))
    }
}

fn parse_q_values(spec: &Option<String>, kahler: usize) -> Result<Vec<f64>, CliError> {
    let mut q = vec![1.0; kahler];
    let Some(spec) = spec else { return Ok(q) };
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("bad q assignment '{part}'")))?;
        let key = key.trim().trim_start_matches('q');
        let idx: usize = key
            .parse()
            .map_err(|_| CliError::Input(format!("bad q index '{key}'")))?;
        if idx == 0 || idx > kahler {
            return Err(CliError::Input(format!(
                "q index {idx} out of range 1..={kahler}"
            )));
        }
        let value = value.trim();
        let parsed = if let Some((num, den)) = value.split_once('/') {
            let n: f64 = num
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad rational '{value}'")))?;
            let d: f64 = den
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad rational '{value}'")))?;
            n / d
        } else {
            value
                .parse()
                .map_err(|_| CliError::Input(format!("bad number '{value}'")))?
        };
        q[idx - 1] = parsed;
    }
    Ok(q)
}

/// Round to 12 significant digits for stable reports. Magnitudes below
/// the rounding range report as zero.
fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    if x.abs() < 1e-290 {
        return 0.0;
    }
    let scale = 10f64.powi(11 - x.abs().log10().floor() as i32);
    ((x * scale).round() / scale) + 0.0
}

fn complex_json(z: Complex64) -> Value {
    json!([sig12(z.re), sig12(z.im)])
}

fn float_text(x: f64) -> String {
    let x = sig12(x);
    if x == 0.0 {
        "0".to_string()
    } else if x.abs() < 1e-4 || x.abs() >= 1e9 {
        format!("{x:.11e}")
    } else {
        format!("{x}")
    }
}

fn complex_text(z: Complex64) -> String {
    let im = sig12(z.im);
    if im == 0.0 {
        float_text(z.re)
    } else if im < 0.0 {
        format!("{} - {}i", float_text(z.re), float_text(-im))
    } else {
        format!("{} + {}i", float_text(z.re), float_text(im))
    }
}

fn cmd_validate(input: &InputArgs) -> Result<Report, CliError> {
    let (fp, source) = load_polytope(input)?;
    let report = validate_smooth_fano(&fp)?;
    let mut text = String::new();
    text.push_str(&format!("input: {source}\n"));
    for c in &report.checks {
        text.push_str(&format!(
            "  [{}] {}: {}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    for w in &report.warnings {
        text.push_str(&format!("  warning: {w}\n"));
    }
    let passed = report.passed();
    let status = if !passed {
        Status::Fail
    } else if report.warnings.is_empty() {
        Status::Ok
    } else {
        Status::Warn
    };
    Ok(Report {
        command: "validate",
        status,
        payload: json!({
            "input": source,
            "checks": report.checks,
            "warnings": report.warnings,
            "passed": passed,
        }),
        text,
    })
}

fn cmd_mirror(input: &InputArgs) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let w = build_superpotential(&fp)?;
    let terms: Vec<String> = w.facet_terms.iter().map(|t| t.to_text()).collect();
    let mut text = format!("input: {source}\nW = {}\nfacet terms:\n", w.poly.to_text());
    for (i, t) in terms.iter().enumerate() {
        text.push_str(&format!("  {}: {t}\n", i + 1));
    }
    Ok(Report {
        command: "mirror",
        status: Status::Ok,
        payload: json!({
            "input": source,
            "superpotential": w.poly.to_text(),
            "facet_terms": terms,
            "dim": fp.dim,
            "kahler_params": fp.kahler_params,
        }),
        text,
    })
}

fn cmd_jacobian(input: &InputArgs) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let w = build_superpotential(&fp)?;
    let jac = jacobian_ring(&w)?;
    let p = &jac.presentation;
    let gens: Vec<String> = jac.generator_images.iter().map(|g| g.to_text()).collect();
    let mut text = format!("input: {source}\n");
    match p.dimension() {
        Some(d) => text.push_str(&format!("dimension: {d}\n")),
        None => text.push_str("dimension: infinite (non-Fano symptom)\n"),
    }
    text.push_str(&format!("monomial order: {}\n", p.order));
    text.push_str("groebner basis:\n");
    for g in p.groebner_text() {
        text.push_str(&format!("  {g}\n"));
    }
    if let Some(sm) = p.standard_monomial_text() {
        text.push_str(&format!("standard monomials: {}\n", sm.join(", ")));
    }
    text.push_str("generator images:\n");
    for (i, g) in gens.iter().enumerate() {
        text.push_str(&format!("  Z{} = {g}\n", i + 1));
    }
    let status = if p.dimension().is_some() {
        Status::Ok
    } else {
        Status::Warn
    };
    Ok(Report {
        command: "jacobian",
        status,
        payload: json!({
            "input": source,
            "dimension": p.dimension(),
            "order": p.order,
            "groebner": p.groebner_text(),
            "standard_monomials": p.standard_monomial_text(),
            "generator_images": gens,
        }),
        text,
    })
}

fn cmd_qh(input: &InputArgs) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let qh = qh_presentation(&fp)?;
    let relations = qh.relation_text();
    let images: Vec<String> = qh.relations.iter().map(|r| r.fourier().to_text()).collect();
    let generators: Vec<String> = (1..=qh.generator_count).map(|i| format!("Psi{i}")).collect();
    let mut text = format!(
        "input: {source}\ngenerators: {}\nlinear relations:\n",
        generators.join(", ")
    );
    for (r, img) in relations.iter().zip(&images) {
        text.push_str(&format!("  {r}   ->   {img}\n"));
    }
    match qh.realization.dimension() {
        Some(d) => text.push_str(&format!("realization dimension: {d}\n")),
        None => text.push_str("realization dimension: infinite\n"),
    }
    Ok(Report {
        command: "qh",
        status: Status::Ok,
        payload: json!({
            "input": source,
            "generators": generators,
            "linear_relations": relations,
            "relation_images": images,
            "dimension": qh.realization.dimension(),
        }),
        text,
    })
}

fn cmd_verify_iso(input: &InputArgs) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let report = verify_qh_jac_iso(&fp)?;
    let mut text = format!("input: {source}\n");
    let flag = |b: bool| if b { "pass" } else { "FAIL" };
    text.push_str(&format!(
        "  [{}] relation images equal the logarithmic derivatives\n",
        flag(report.relation_images_match)
    ));
    text.push_str(&format!(
        "  [{}] mutual ideal membership between presentations\n",
        flag(report.mutual_ideal_membership)
    ));
    text.push_str(&format!(
        "  [{}] dimension {} equals {} maximal cones\n",
        flag(report.dimensions_equal),
        report
            .jacobian_dimension
            .map(|d| d.to_string())
            .unwrap_or_else(|| "infinite".into()),
        report.euler_characteristic
    ));
    text.push_str(&format!(
        "  [{}] generators map to the facet monomials\n",
        flag(report.generator_images_match)
    ));
    if let Some(w) = &report.witness {
        text.push_str(&format!("  witness: {w}\n"));
    }
    if let Some(n) = &report.note {
        text.push_str(&format!("  note: {n}\n"));
    }
    let status = if report.verified {
        if report.note.is_some() {
            Status::Warn
        } else {
            Status::Ok
        }
    } else {
        Status::Fail
    };
    Ok(Report {
        command: "verify-iso",
        status,
        payload: serde_json::to_value(&report).unwrap(),
        text,
    })
}

fn cmd_syz_check(input: &InputArgs, cutoff: usize) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let report = check_transform_theorem(&fp, cutoff)?;
    let mut text = format!("input: {source}\ncutoff: {cutoff}\n");
    text.push_str(&format!(
        "  [{}] transform of the disc-counting function is W\n",
        if report.superpotential_image_ok {
            "pass"
        } else {
            "FAIL"
        }
    ));
    let count_ok = |v: &[syzkit::forms::StratumCheck]| v.iter().filter(|s| s.passed).count();
    text.push_str(&format!(
        "  forward strata: {}/{} exact\n",
        count_ok(&report.forward),
        report.forward.len()
    ));
    text.push_str(&format!(
        "  inverse strata: {}/{} exact\n",
        count_ok(&report.inverse),
        report.inverse.len()
    ));
    if let Some(v) = &report.failing_stratum {
        text.push_str(&format!("  first failing lattice degree: {v:?}\n"));
    }
    let status = if report.passed { Status::Ok } else { Status::Fail };
    Ok(Report {
        command: "syz-check",
        status,
        payload: serde_json::to_value(&report).unwrap(),
        text,
    })
}

fn cmd_semiflat_check(
    dim: Option<usize>,
    phi: Option<&std::path::Path>,
) -> Result<Report, CliError> {
    let dims: Vec<usize> = match dim {
        Some(n) if (1..=4).contains(&n) => vec![n],
        Some(n) => {
            return Err(CliError::Input(format!(
                "dimension {n} out of the supported range 1..=4"
            )))
        }
        None => vec![1, 2, 3, 4],
    };
    let user_phi = phi
        .map(|path| -> Result<PhiMatrix, CliError> {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            Ok(PhiMatrix::from_json(&text)?)
        })
        .transpose()?;

    let mut checks: Vec<Value> = Vec::new();
    let mut text = String::new();
    let mut all = true;
    let mut user_phi_used = false;
    let push = |checks: &mut Vec<Value>,
                    text: &mut String,
                    all: &mut bool,
                    name: String,
                    n: usize,
                    passed: bool| {
        *all &= passed;
        text.push_str(&format!(
            "  [{}] n={n}: {name}\n",
            if passed { "pass" } else { "FAIL" }
        ));
        checks.push(json!({"name": name, "dim": n, "passed": passed}));
    };

    for &n in &dims {
        let fwd_ok = exp_i_omega_x(n, 0)
            .semiflat_fwd()
            .map(|f| f == volume_form_y(n, 0));
        push(
            &mut checks,
            &mut text,
            &mut all,
            "transform of exp(i omega_X) is Omega_Y".into(),
            n,
            fwd_ok.unwrap_or(false),
        );
        let inv_ok = volume_form_y(n, 0)
            .semiflat_inv()
            .map(|f| f == exp_i_omega_x(n, 0));
        push(
            &mut checks,
            &mut text,
            &mut all,
            "inverse transform of Omega_Y is exp(i omega_X)".into(),
            n,
            inv_ok.unwrap_or(false),
        );

        if n <= 3 {
            let mut matrices: Vec<(String, PhiMatrix)> =
                vec![("identity".into(), PhiMatrix::identity(n))];
            for (i, m) in seeded_spd_matrices(n, 5, 0xC0FFEE + n as u64)
                .into_iter()
                .enumerate()
            {
                matrices.push((format!("seeded #{}", i + 1), m));
            }
            if let Some(user) = &user_phi {
                if user.dim() == n {
                    matrices.push(("user".into(), user.clone()));
                    user_phi_used = true;
                }
            }
            for (label, m) in &matrices {
                let ok = volume_form_x(m, 0)
                    .semiflat_fwd()
                    .map(|f| f == exp_i_omega_y(m, 0))
                    .unwrap_or(false)
                    && exp_i_omega_y(m, 0)
                        .semiflat_inv()
                        .map(|f| f == volume_form_x(m, 0))
                        .unwrap_or(false);
                push(
                    &mut checks,
                    &mut text,
                    &mut all,
                    format!("metric identities, phi {label}"),
                    n,
                    ok,
                );
            }

            let mut round_ok = true;
            for bits in 0..(1u64 << (2 * n)) {
                let x_mask = (bits & ((1 << n) - 1)) | ((bits >> n) << (2 * n));
                let b = DifferentialForm::generator(n, 0, x_mask);
                if b.semiflat_fwd()
                    .and_then(|f| f.semiflat_inv())
                    .map(|r| r != b)
                    .unwrap_or(true)
                {
                    round_ok = false;
                }
                let y_mask = bits;
                let c = DifferentialForm::generator(n, 0, y_mask);
                if c.semiflat_inv()
                    .and_then(|f| f.semiflat_fwd())
                    .map(|r| r != c)
                    .unwrap_or(true)
                {
                    round_ok = false;
                }
            }
            push(
                &mut checks,
                &mut text,
                &mut all,
                "two-sided inversion on the exterior basis".into(),
                n,
                round_ok,
            );
        }
    }
    if user_phi.is_some() && !user_phi_used {
        return Err(CliError::Input(
            "the supplied phi matrix matches none of the checked dimensions".into(),
        ));
    }
    Ok(Report {
        command: "semiflat-check",
        status: if all { Status::Ok } else { Status::Fail },
        payload: json!({"checks": checks, "passed": all}),
        text,
    })
}

fn cmd_critical(input: &InputArgs, numeric: &NumericArgs) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let q = parse_q_values(&numeric.q, fp.kahler_params)?;
    let w = build_superpotential(&fp)?;
    let report = critical_points(&w, &q, numeric.tol)?;
    let mut text = format!("input: {source}\nq: {q:?}\ntolerance: {}\n", numeric.tol);
    match report.jacobian_dimension {
        Some(d) => text.push_str(&format!("jacobian dimension: {d}\n")),
        None => text.push_str("jacobian dimension: infinite\n"),
    }
    text.push_str(&format!("critical points: {}\n", report.points.len()));
    for (p, r) in report.points.iter().zip(&report.residuals) {
        let coords: Vec<String> = p.iter().map(|z| complex_text(*z)).collect();
        text.push_str(&format!(
            "  ({})   residual {}\n",
            coords.join(", "),
            float_text(*r)
        ));
    }
    if let Some(wrn) = &report.warning {
        text.push_str(&format!("  warning: {wrn}\n"));
    }
    let points: Vec<Value> = report
        .points
        .iter()
        .map(|p| Value::Array(p.iter().map(|z| complex_json(*z)).collect()))
        .collect();
    Ok(Report {
        command: "critical",
        status: if report.warning.is_some() {
            Status::Warn
        } else {
            Status::Ok
        },
        payload: json!({
            "input": source,
            "q": q,
            "tolerance": numeric.tol,
            "jacobian_dimension": report.jacobian_dimension,
            "points": points,
            "residuals": report.residuals.iter().map(|r| sig12(*r)).collect::<Vec<_>>(),
            "warning": report.warning,
        }),
        text,
    })
}

fn cmd_clifford(input: &InputArgs, numeric: &NumericArgs) -> Result<Report, CliError> {
    let (fp, source) = load_normalized(input)?;
    let q = parse_q_values(&numeric.q, fp.kahler_params)?;
    let w = build_superpotential(&fp)?;
    let crit = critical_points(&w, &q, numeric.tol)?;
    let mut entries: Vec<Value> = Vec::new();
    let mut text = format!("input: {source}\nq: {q:?}\n");
    for (z, residual) in crit.points.iter().zip(&crit.residuals) {
        let m = clifford_form(&w, z, &q)?;
        let nontrivial = floer_nontrivial(&w, z, &q, numeric.tol)?;
        let dim = endomorphism_dim(&w, z, &q, numeric.tol)?;
        let det = complex_det(&m);
        let coords: Vec<String> = z.iter().map(|c| complex_text(*c)).collect();
        text.push_str(&format!("point ({})\n", coords.join(", ")));
        text.push_str(&format!(
            "  residual {}, nontrivial: {nontrivial}, endomorphism dimension {dim}\n",
            float_text(*residual)
        ));
        text.push_str(&format!("  det Q = {}\n", complex_text(det)));
        for row in &m {
            let cells: Vec<String> = row.iter().map(|c| complex_text(*c)).collect();
            text.push_str(&format!("  [ {} ]\n", cells.join(", ")));
        }
        entries.push(json!({
            "z": z.iter().map(|c| complex_json(*c)).collect::<Vec<_>>(),
            "residual": sig12(*residual),
            "nontrivial": nontrivial,
            "endomorphism_dimension": dim,
            "clifford_matrix": m.iter()
                .map(|row| row.iter().map(|c| complex_json(*c)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "determinant": complex_json(det),
        }));
    }
    if let Some(wrn) = &crit.warning {
        text.push_str(&format!("warning: {wrn}\n"));
    }
    Ok(Report {
        command: "clifford",
        status: if crit.warning.is_some() {
            Status::Warn
        } else {
            Status::Ok
        },
        payload: json!({
            "input": source,
            "q": q,
            "tolerance": numeric.tol,
            "points": entries,
            "warning": crit.warning,
        }),
        text,
    })
}
