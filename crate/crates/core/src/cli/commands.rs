//! The subcommands. Each returns the checks it ran and the files it wrote.

use super::config::{Probe, RunConfig};
use super::csv::{big, big_re_im, key_values, num, write_text, CsvTable};
use crate::engine::{coeffs_via_jets, iterate, lipschitz_budget, Budget, EngineParams};
use crate::error::{Error, Result};
use crate::geometry::{build_geometry, validate_droplet, DropletGeometry};
use crate::oracle::{
    build_quadrature, compare_prediction, inside_droplet, orthonormalize, verify_berezin_system,
    verify_exact_potential, Berezin, OrthonormalBasis, QuadratureRule,
};
use crate::wavefield::{check_potential_equation, WaveModel};
use num_complex::Complex64;
use std::fmt::Write as _;
use std::path::PathBuf;

/// Orthonormality of the basis against a refined rule.
pub const TOL_REQUAD: f64 = 1e-10;
/// Relative error of the predicted wave function against the oracle.
pub const TOL_WAVE: f64 = 5e-2;
/// Orthogonality of the predicted polynomial against lower monomials.
pub const TOL_PREDICTED_ORTH: f64 = 1e-3;
/// Mass of the Berezin density and norm of `q`.
pub const TOL_BEREZIN: f64 = 1e-8;
/// Relative residual of the potential equation on `𝒩′`.
pub const TOL_POTENTIAL: f64 = 5e-2;

/// One measured quantity compared with its tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckLine {
    /// Passes when `value ≤ tolerance`.
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        CheckLine { name: name.into(), value, tolerance, pass: value <= tolerance }
    }

    pub fn flag(name: &str, value: f64, tolerance: f64, pass: bool) -> Self {
        CheckLine { name: name.into(), value, tolerance, pass }
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} (value {:.4e}, tolerance {:.4e})",
            self.name,
            if self.pass { "pass" } else { "FAIL" },
            self.value,
            self.tolerance
        )
    }
}

/// What a subcommand did.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub info: Vec<(String, String)>,
    pub checks: Vec<CheckLine>,
    pub files: Vec<PathBuf>,
}

impl Outcome {
    fn info(&mut self, key: &str, value: impl ToString) {
        self.info.push((key.into(), value.to_string()));
    }

    pub fn failed(&self) -> Vec<&CheckLine> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

fn echo(cfg: &RunConfig, out: &mut Outcome) {
    out.info("potential", cfg.spec.name());
    out.info("tau", cfg.tau);
    if let (Some(m), Some(n)) = (cfg.m, cfg.n) {
        out.info("m", m);
        out.info("n", n);
    }
}

fn geometry_of(cfg: &RunConfig) -> Result<DropletGeometry> {
    build_geometry(&cfg.spec, cfg.tau, cfg.geometry)
}

/// `Γ` samples, `V` along a ray and the validation report.
pub fn geometry(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let geom = DropletGeometry::assemble(&cfg.spec, cfg.tau, cfg.geometry)?;
    let report = validate_droplet(&geom);
    let dir = &cfg.output_dir;

    let mut gamma = CsvTable::new(&["theta", "re_z", "im_z"]);
    for (th, z) in geom.boundary_samples(cfg.samples) {
        gamma.push(vec![num(th), num(z.re), num(z.im)])?;
    }
    out.files.push(gamma.write(dir, "gamma.csv")?);
    let mut rays = CsvTable::new(&["r", "V"]);
    for (r, v) in geom.ray_samples(65) {
        rays.push(vec![num(r), num(v)])?;
    }
    out.files.push(rays.write(dir, "rays.csv")?);

    let mut kv = vec![
        ("potential", cfg.spec.name().to_string()),
        ("tau", num(cfg.tau)),
        ("modes", geom.shape().modes.to_string()),
        ("order", geom.shape().order.to_string()),
        ("sigma_star", num(geom.opts.sigma_star)),
        ("all_pass", report.all_pass().to_string()),
    ];
    for c in &report.checks {
        kv.push((c.name, if c.pass { "pass" } else { "fail" }.to_string()));
        out.checks.push(CheckLine::flag(c.name, c.value, c.threshold, c.pass));
    }
    let mut text = key_values(&kv);
    for c in &report.checks {
        let _ = writeln!(text, "{}.value={}\n{}.threshold={}", c.name, num(c.value), c.name, num(c.threshold));
    }
    out.files.push(write_text(dir, "validation.txt", &text)?);
    Ok(out)
}

fn budget_of(cfg: &RunConfig, geom: &DropletGeometry, theta: f64) -> Result<Budget> {
    let star = geom.opts.sigma_star;
    let sigma = cfg.sigma.unwrap_or(star);
    let sigma_prime = cfg.sigma_prime.unwrap_or(0.5 * sigma);
    lipschitz_budget(geom, sigma, sigma_prime, theta, cfg.eps0, cfg.norm)
}

/// Numerical iteration at `ϑ = 1/m`, jet coefficients `ĥ_j` and the budget.
pub fn solve(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let m = cfg.require_m()?;
    let theta = 1.0 / m as f64;
    let geom = geometry_of(cfg)?;
    let dir = &cfg.output_dir;

    let mut params = EngineParams::numeric(theta, cfg.iterations)?;
    params.cap = cfg.cap;
    params.norm = cfg.norm;
    let log = iterate(&geom, &params)?;
    let mut res = CsvTable::new(&["k", "residual", "tail_mass"]);
    for (k, (r, t)) in log.residuals.iter().zip(&log.tails).enumerate() {
        res.push(vec![k.to_string(), num(*r), num(*t)])?;
    }
    out.files.push(res.write(dir, "residuals.csv")?);
    out.info("iterations", log.residuals.len());
    out.info("stop", format!("{:?}", log.stop).to_lowercase());
    out.info("best", log.best);

    let table = coeffs_via_jets(&geom, cfg.jet_order, cfg.jet_order + 1)?;
    let mut coeffs = CsvTable::new(&["j", "d", "re", "im"]);
    for (j, h) in table.hhat.iter().enumerate() {
        for (d, c) in h.iter() {
            coeffs.push(vec![j.to_string(), d.to_string(), num(c.re), num(c.im)])?;
        }
    }
    out.files.push(coeffs.write(dir, "coeffs_h.csv")?);

    let budget = budget_of(cfg, &geom, theta)?;
    out.files.push(write_text(dir, "budget.txt", &budget.to_kv())?);

    let ratio = (0..log.best)
        .map(|j| log.residuals[j + 1] / log.residuals[j])
        .fold(0.0, f64::max);
    out.checks.push(CheckLine::at_most("contraction_ratio", ratio, 0.5));
    let bound = log
        .residuals
        .iter()
        .enumerate()
        .map(|(k, r)| r / budget.residual_bound(k, log.e0_norm))
        .fold(0.0, f64::max);
    out.checks.push(CheckLine::at_most("residual_over_bound", bound, 1.0));
    Ok(out)
}

/// Budget diagnostics only.
pub fn budget(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let geom = geometry_of(cfg)?;
    let theta = cfg.m.map(|m| 1.0 / m as f64).unwrap_or(0.0);
    let b = budget_of(cfg, &geom, theta)?;
    out.files.push(write_text(&cfg.output_dir, "budget.txt", &b.to_kv())?);
    out.info("C2", format!("{:e}", b.c2));
    out.info("k_cap", b.k_cap);
    out.info("rho0", format!("{:e}", b.rho0));
    out.info("theta_admissible", b.theta_admissible());
    Ok(out)
}

fn default_probes(cfg: &RunConfig, geom: &DropletGeometry) -> Vec<Complex64> {
    if cfg.probes.is_empty() {
        let rings: Vec<Probe> = [1.0, 1.05, 1.1, 1.2].iter().map(|&r| Probe::Ring { r, count: 64 }).collect();
        RunConfig { probes: rings, ..cfg.clone() }.probe_points(geom)
    } else {
        cfg.probe_points(geom)
    }
}

/// Predicted fields at the probes.
pub fn predict(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let geom = geometry_of(cfg)?;
    let model = WaveModel::from_jets(&geom, cfg.wave_config()?, cfg.jet_order)?;
    let mut field = CsvTable::new(&["re_z", "im_z", "V", "h", "hstar", "wave_pred", "P_re", "P_im", "U"]);
    for z in default_probes(cfg, &geom) {
        let s = model.sample(z)?;
        field.push(vec![
            num(z.re),
            num(z.im),
            num(s.v),
            num(s.h),
            num(s.hstar),
            num(s.wave),
            num(s.p.re),
            num(s.p.im),
            num(s.u),
        ])?;
    }
    out.info("variant", cfg.variant.name());
    out.info("jet_order", cfg.jet_order);
    out.files.push(field.write(&cfg.output_dir, "field.csv")?);
    Ok(out)
}

fn oracle_basis(cfg: &RunConfig) -> Result<(QuadratureRule, OrthonormalBasis)> {
    let m = cfg.require_m()?;
    let rule = build_quadrature(&cfg.spec, m, &cfg.quadrature)?;
    let basis = orthonormalize(&rule, cfg.quadrature.n_max)?;
    Ok((rule, basis))
}

fn requad_check(cfg: &RunConfig, rule: &QuadratureRule, basis: &OrthonormalBasis, out: &mut Outcome) -> Result<QuadratureRule> {
    let check = build_quadrature(&cfg.spec, rule.m, &cfg.quadrature.refined(rule))?;
    let r = basis.orthonormality_residual(&check.gram(basis.n_max)?);
    out.checks.push(CheckLine::at_most("orthonormality_requad", r, TOL_REQUAD));
    Ok(check)
}

fn rule_info(rule: &QuadratureRule, basis: &OrthonormalBasis, out: &mut Outcome) {
    out.info("radius", rule.radius);
    out.info("nodes_theta", rule.n_theta);
    out.info("nodes", rule.len());
    out.info("log10_condition", format!("{:.2}", basis.log10_condition));
}

/// Moments, orthonormal coefficients and `κ_k` at full precision.
pub fn oracle(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let (rule, basis) = oracle_basis(cfg)?;
    rule_info(&rule, &basis, &mut out);
    let dir = &cfg.output_dir;
    let size = basis.n_max + 1;
    let mut gram = CsvTable::new(&["j", "k", "re", "im"]);
    for j in 0..size {
        for k in 0..size {
            let [re, im] = big_re_im(&basis.gram[j][k]);
            gram.push(vec![j.to_string(), k.to_string(), re, im])?;
        }
    }
    out.files.push(gram.write(dir, "gram.csv")?);
    let mut coeffs = CsvTable::new(&["k", "j", "re", "im"]);
    for k in 0..size {
        for j in 0..=k {
            let [re, im] = big_re_im(&basis.coeffs[k][j]);
            coeffs.push(vec![k.to_string(), j.to_string(), re, im])?;
        }
    }
    out.files.push(coeffs.write(dir, "basis.csv")?);
    let mut kappa = CsvTable::new(&["k", "kappa"]);
    for (k, v) in basis.kappa.iter().enumerate() {
        kappa.push(vec![k.to_string(), big(v)])?;
    }
    out.files.push(kappa.write(dir, "kappa.csv")?);

    let check = requad_check(cfg, &rule, &basis, &mut out)?;
    if let Some(n) = cfg.n.map(|n| n as usize).filter(|&n| n <= basis.n_max) {
        let rep = verify_exact_potential(&basis, &check, n)?;
        out.checks.push(CheckLine::at_most("exact_potential_orthogonality", rep.orthogonality, TOL_REQUAD));
        let dk = (rep.kappa_sq_requad / rep.kappa_sq - 1.0).abs();
        out.checks.push(CheckLine::at_most("exact_potential_norm", dk, TOL_REQUAD));
        out.checks.push(bounded_check("exact_potential_far_field", &rep.far_field, rep.far_bounded));
    }
    Ok(out)
}

/// Largest scaled far-field value against twice the first one plus the floor
/// used by [`crate::oracle::bounded`].
fn bounded_check(name: &str, scaled: &[(f64, f64)], pass: bool) -> CheckLine {
    let value = scaled.iter().map(|p| p.1).fold(0.0, f64::max);
    let first = scaled.first().map(|p| p.1).unwrap_or(0.0);
    CheckLine::flag(name, value, 2.0 * first + 1e-6, pass)
}

fn source_of(cfg: &RunConfig, geom: &DropletGeometry) -> Result<Complex64> {
    cfg.source
        .or_else(|| cfg.probe_points(geom).first().copied())
        .ok_or_else(|| Error::config("source", "the Berezin objects need a source point (or probes)"))
}

fn berezin_checks(
    cfg: &RunConfig,
    geom: &DropletGeometry,
    rule: &QuadratureRule,
    basis: &OrthonormalBasis,
    z: Complex64,
    out: &mut Outcome,
) -> Result<Vec<Complex64>> {
    let n = cfg.n.ok_or_else(|| Error::config("m", "this subcommand needs m"))? as usize;
    if n < 2 || n > basis.n_max + 1 {
        return Err(Error::config("n_max", format!("need 2 ≤ n ≤ n_max + 1 (n = {n})")));
    }
    let rep = verify_berezin_system(basis, rule, n, z)?;
    out.info("source", z);
    out.checks.push(CheckLine::at_most("berezin_mass", (rep.mass - 1.0).abs(), TOL_BEREZIN));
    out.checks.push(CheckLine::at_most("berezin_q_norm", (rep.q_norm - 1.0).abs(), TOL_BEREZIN));
    out.checks.push(bounded_check("berezin_decay_bounded", &rep.decay, rep.decay_bounded));
    let inside = rep.zeros.roots.iter().filter(|r| inside_droplet(geom, **r, 2048, 0.0)).count();
    if geom.contains(z) {
        out.info("zeros_inside", inside);
    } else {
        let want = (n - 1) as f64;
        out.checks.push(CheckLine::flag("berezin_zeros_inside", inside as f64, want, inside == n - 1));
    }
    Ok(rep.zeros.roots)
}

/// Zeros, density and potential of the Berezin kernel at the source.
pub fn berezin(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let geom = geometry_of(cfg)?;
    let z = source_of(cfg, &geom)?;
    let (rule, basis) = oracle_basis(cfg)?;
    rule_info(&rule, &basis, &mut out);
    let dir = &cfg.output_dir;
    let roots = berezin_checks(cfg, &geom, &rule, &basis, z, &mut out)?;
    let mut zeros = CsvTable::new(&["re_w", "im_w"]);
    for r in roots {
        zeros.push(vec![num(r.re), num(r.im)])?;
    }
    out.files.push(zeros.write(dir, "zeros.csv")?);

    let n = cfg.n.unwrap_or(0) as usize;
    let b = Berezin::new(&basis, &rule, n, z)?;
    let half = 1.25 * geom.boundary_samples(256).iter().map(|p| p.1.norm()).fold(0.0, f64::max);
    let g = cfg.grid;
    let mut density = CsvTable::new(&["re_w", "im_w", "density"]);
    let mut potential = CsvTable::new(&["re_w", "im_w", "potential"]);
    for i in 0..g {
        for j in 0..g {
            let w = Complex64::new(
                -half + 2.0 * half * j as f64 / (g - 1) as f64,
                -half + 2.0 * half * i as f64 / (g - 1) as f64,
            );
            density.push(vec![num(w.re), num(w.im), num(b.density(w))])?;
            potential.push(vec![num(w.re), num(w.im), num(b.potential(w))])?;
        }
    }
    out.files.push(density.write(dir, "density.csv")?);
    out.files.push(potential.write(dir, "potential.csv")?);
    Ok(out)
}

/// The full chain: geometry, jet coefficients, predictions, oracle and the
/// comparison, with `summary.csv` and `report.txt`.
pub fn compare(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.probes.is_empty() {
        return Err(Error::config("probes", "compare needs probe points"));
    }
    let mut out = Outcome::default();
    echo(cfg, &mut out);
    let geom = geometry_of(cfg)?;
    let wave = cfg.wave_config()?;
    let n = wave.n as usize;
    if cfg.n_max_set && cfg.quadrature.n_max < n {
        return Err(Error::config("n_max", format!("compare needs n_max ≥ n = {n}")));
    }
    let model = WaveModel::from_jets(&geom, wave, cfg.jet_order)?;
    let probes = cfg.probe_points(&geom);
    let (rule, basis) = oracle_basis(cfg)?;
    rule_info(&rule, &basis, &mut out);
    requad_check(cfg, &rule, &basis, &mut out)?;

    let cmp = compare_prediction(&basis, &model, &probes, cfg.delta)?;
    out.checks.push(CheckLine::at_most("wave_relative_error", cmp.sup_wave, TOL_WAVE));
    let p = model.predicted_polynomial(cfg.rho, 512)?;
    let orth = basis.relative_inner_products(&p, n)?.into_iter().fold(0.0, f64::max);
    out.checks.push(CheckLine::at_most("predicted_orthogonality", orth, TOL_PREDICTED_ORTH));
    let pot = check_potential_equation(&model, 6, 16)?;
    out.checks.push(CheckLine::at_most("potential_equation", pot.max_relative, TOL_POTENTIAL));
    if cfg.source.is_some() && n >= 2 {
        berezin_checks(cfg, &geom, &rule, &basis, cfg.source.unwrap_or_default(), &mut out)?;
    }

    let dir = &cfg.output_dir;
    let mut summary = CsvTable::new(&["check", "value", "tolerance", "pass"]);
    for c in &out.checks {
        summary.push(vec![c.name.clone(), num(c.value), num(c.tolerance), c.pass.to_string()])?;
    }
    out.files.push(summary.write(dir, "summary.csv")?);

    let mut text = String::new();
    for (k, v) in &out.info {
        let _ = writeln!(text, "{k}: {v}");
    }
    let _ = writeln!(text, "jet_order: {}", cfg.jet_order);
    let _ = writeln!(text, "variant: {}", cfg.variant.name());
    let _ = writeln!(text, "band: {:.6e}", cmp.band);
    let _ = writeln!(text, "phase: {:.12e} {:+.12e}i", cmp.phase.re, cmp.phase.im);
    let _ = writeln!(text, "sup_modulus: {:.6e}", cmp.sup_modulus);
    let _ = writeln!(text, "sup_phase: {:.6e}", cmp.sup_phase);
    let _ = writeln!(text, "potential_equation_fd_error: {:.6e}", pot.fd_error);
    let _ = writeln!(text, "\nchecks:");
    for c in &out.checks {
        let _ = writeln!(text, "  {}", c.summary());
    }
    let _ = writeln!(text, "\nprobes (z, wave_oracle, wave_pred, wave_err, in_band):");
    for r in &cmp.rows {
        let _ = writeln!(
            text,
            "  {:+.6e} {:+.6e}i  {:.6e}  {:.6e}  {:.3e}  {}",
            r.z.re, r.z.im, r.wave_oracle, r.wave_pred, r.wave_err, r.in_band
        );
    }
    out.files.push(write_text(dir, "report.txt", &text)?);
    Ok(out)
}
