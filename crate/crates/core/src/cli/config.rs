//! Flat `key = value` run configuration.

use crate::engine::{Iterations, NormKind};
use crate::error::{Error, Result};
use crate::geometry::{DropletGeometry, GeometryOptions, PotentialSpec};
use crate::oracle::QuadratureOptions;
use crate::wavefield::{Variant, WaveConfig};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

const KEYS: &[&str] = &[
    "potential",
    "t",
    "q",
    "psi",
    "tau",
    "m",
    "N",
    "modes",
    "order",
    "sigma_star",
    "vanish_tol",
    "jet_order",
    "iterations",
    "cap",
    "variant",
    "radius",
    "nodes_r",
    "nodes_theta",
    "digits",
    "n_max",
    "probes",
    "source",
    "output_dir",
    "norm",
    "eps0",
    "sigma",
    "sigma_prime",
    "delta",
    "rho",
    "grid",
    "samples",
];

/// A probe specification: an explicit point or `count` points `ψ(r e^{iθ})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Probe {
    Point(Complex64),
    Ring { r: f64, count: usize },
}

/// Parsed run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub spec: PotentialSpec,
    pub tau: f64,
    pub m: Option<u32>,
    /// `n = round(τm)` when `m` is given.
    pub n: Option<u32>,
    pub geometry: GeometryOptions,
    pub jet_order: usize,
    pub iterations: Iterations,
    pub cap: Option<usize>,
    pub variant: Variant,
    pub quadrature: QuadratureOptions,
    /// `n_max` was set explicitly.
    pub n_max_set: bool,
    pub probes: Vec<Probe>,
    /// Source point of the Berezin objects.
    pub source: Option<Complex64>,
    pub output_dir: PathBuf,
    pub norm: NormKind,
    pub eps0: f64,
    pub sigma: Option<f64>,
    pub sigma_prime: Option<f64>,
    /// Band half-width factor `δ` for comparisons (`δ m^{−1/4}`).
    pub delta: f64,
    /// Contour radius for the predicted polynomial.
    pub rho: f64,
    /// Side length of the Berezin sample grid.
    pub grid: usize,
    /// Number of samples of `Γ` in the geometry artifacts.
    pub samples: usize,
}

struct Raw {
    map: BTreeMap<String, String>,
}

impl Raw {
    fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::config(key, format!("cannot parse '{v}'"))),
        }
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        let v: Option<f64> = self.parse(key)?;
        match v {
            Some(x) if !x.is_finite() => Err(Error::config(key, "must be finite")),
            _ => Ok(v),
        }
    }

    fn auto<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None | Some("auto") => Ok(None),
            Some(_) => self.parse(key),
        }
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (`j` is accepted for `i`).
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return s.parse().ok().map(|x| Complex64::new(x, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |t: &str| -> Option<f64> {
        match t {
            "" | "+" => Some(1.0),
            "-" => Some(-1.0),
            _ => t.parse().ok(),
        }
    };
    match split {
        Some(i) => Some(Complex64::new(body[..i].parse().ok()?, imag(&body[i..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

fn parse_probes(v: &str) -> Result<Vec<Probe>> {
    let bad = |item: &str| Error::config("probes", format!("cannot parse '{item}'"));
    let mut out = Vec::new();
    for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some(rest) = item.strip_prefix("gamma:") {
            let count = rest.trim().parse().map_err(|_| bad(item))?;
            out.push(Probe::Ring { r: 1.0, count });
        } else if let Some(rest) = item.strip_prefix("ring:") {
            let (r, count) = rest.split_once(':').ok_or_else(|| bad(item))?;
            let r: f64 = r.trim().parse().map_err(|_| bad(item))?;
            if !(r > 0.0) {
                return Err(bad(item));
            }
            out.push(Probe::Ring { r, count: count.trim().parse().map_err(|_| bad(item))? });
        } else {
            out.push(Probe::Point(parse_complex(item).ok_or_else(|| bad(item))?));
        }
    }
    if out.is_empty() {
        return Err(Error::config("probes", "empty probe list"));
    }
    Ok(out)
}

/// `a b value; …` for `q` and `d value; …` for `psi`.
fn parse_terms(key: &str, v: &str, ints: usize) -> Result<Vec<(Vec<i64>, Complex64)>> {
    let bad = |t: &str| Error::config(key, format!("cannot parse term '{t}'"));
    v.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let parts: Vec<&str> = t.split_whitespace().collect();
            if parts.len() != ints + 1 {
                return Err(bad(t));
            }
            let idx = parts[..ints]
                .iter()
                .map(|p| p.parse::<i64>().map_err(|_| bad(t)))
                .collect::<Result<Vec<_>>>()?;
            Ok((idx, parse_complex(parts[ints]).ok_or_else(|| bad(t))?))
        })
        .collect()
}

fn parse_spec(raw: &Raw) -> Result<PotentialSpec> {
    let name = raw.get("potential").ok_or_else(|| Error::config("potential", "missing"))?;
    match name {
        "ginibre" => Ok(PotentialSpec::Ginibre),
        "elliptic" => {
            let t = raw.real("t")?.ok_or_else(|| Error::config("t", "elliptic potential needs t"))?;
            PotentialSpec::elliptic(t)
        }
        "custom" => {
            let q = raw.get("q").ok_or_else(|| Error::config("q", "custom potential needs q"))?;
            let psi = raw.get("psi").ok_or_else(|| Error::config("psi", "custom potential needs psi"))?;
            let q = parse_terms("q", q, 2)?
                .into_iter()
                .map(|(i, c)| {
                    if i[0] < 0 || i[1] < 0 {
                        return Err(Error::config("q", "exponents must be non-negative"));
                    }
                    Ok((i[0] as u32, i[1] as u32, c))
                })
                .collect::<Result<Vec<_>>>()?;
            let psi = parse_terms("psi", psi, 1)?.into_iter().map(|(i, c)| (i[0], c)).collect();
            Ok(PotentialSpec::Custom { q, psi })
        }
        other => Err(Error::config(
            "potential",
            format!("unknown potential '{other}' (expected ginibre, elliptic or custom)"),
        )),
    }
}

impl RunConfig {
    /// Reads and parses a configuration file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// Parses configuration text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("line {}: expected `key = value`", i + 1)))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                return Err(Error::config(k, "unknown key"));
            }
            if map.insert(k.to_string(), v.trim().to_string()).is_some() {
                return Err(Error::config(k, "given more than once"));
            }
        }
        let raw = Raw { map };
        let spec = parse_spec(&raw)?;

        let tau = raw.real("tau")?.ok_or_else(|| Error::config("tau", "missing"))?;
        if !(tau > 0.0) {
            return Err(Error::config("tau", "must be positive"));
        }
        let m: Option<u32> = raw.parse("m")?;
        let n = match m {
            Some(0) => return Err(Error::config("m", "must be positive")),
            Some(m) => Some(WaveConfig::new(m, tau, 0.3)?.n),
            None => None,
        };

        let jet_order: usize = raw.parse("jet_order")?.unwrap_or(2);
        let default_modes = if spec == PotentialSpec::Ginibre { 8 } else { 96 };
        let default_order = (16 * (jet_order + 1)).max(32);
        let mut geometry = match raw.parse::<usize>("N")? {
            Some(n) => {
                let g = GeometryOptions::with_order(n)?;
                GeometryOptions::with_truncation(
                    raw.parse("modes")?.unwrap_or(g.shape.modes),
                    raw.parse("order")?.unwrap_or(g.shape.order),
                )?
            }
            None => GeometryOptions::with_truncation(
                raw.parse("modes")?.unwrap_or(default_modes),
                raw.parse("order")?.unwrap_or(default_order),
            )?,
        };
        if let Some(s) = raw.real("sigma_star")? {
            if !(s > 0.0 && s < 1.0) {
                return Err(Error::config("sigma_star", "need 0 < σ* < 1"));
            }
            geometry.sigma_star = s;
        }
        if let Some(v) = raw.real("vanish_tol")? {
            if !(v > 0.0) {
                return Err(Error::config("vanish_tol", "must be positive"));
            }
            geometry.vanish_tol = v;
        }

        let iterations = match raw.auto::<usize>("iterations")? {
            None => Iterations::Auto,
            Some(k) => Iterations::Fixed(k),
        };
        let variant = match raw.get("variant") {
            None => Variant::ThmMain,
            Some(v) => Variant::parse(v)?,
        };
        let norm = match raw.get("norm") {
            None => NormKind::Majorant,
            Some(v) => NormKind::parse(v)?,
        };

        let n_max: Option<usize> = raw.parse("n_max")?;
        let quadrature = QuadratureOptions {
            radius: raw.auto("radius")?,
            nodes_r: raw.parse("nodes_r")?.unwrap_or(QuadratureOptions::default().nodes_r),
            nodes_theta: raw.auto("nodes_theta")?,
            digits: raw.parse("digits")?.unwrap_or(QuadratureOptions::default().digits),
            n_max: n_max.or(n.map(|n| n as usize)).unwrap_or(QuadratureOptions::default().n_max),
        };
        quadrature.validate()?;

        let probes = match raw.get("probes") {
            None => Vec::new(),
            Some(v) => parse_probes(v)?,
        };
        let source = match raw.get("source") {
            None => None,
            Some(v) => Some(parse_complex(v).ok_or_else(|| Error::config("source", format!("cannot parse '{v}'")))?),
        };
        let positive = |key: &str, v: Option<f64>, default: f64| -> Result<f64> {
            let x = v.unwrap_or(default);
            if !(x > 0.0) {
                return Err(Error::config(key, "must be positive"));
            }
            Ok(x)
        };
        let eps0 = positive("eps0", raw.real("eps0")?, 0.05)?;
        let delta = positive("delta", raw.real("delta")?, 1.0)?;
        let rho = raw.real("rho")?.unwrap_or(1.1);
        if !(rho > 1.0) {
            return Err(Error::config("rho", "contour radius must exceed 1"));
        }
        let grid: usize = raw.parse("grid")?.unwrap_or(24);
        let samples: usize = raw.parse("samples")?.unwrap_or(256);
        if grid < 2 {
            return Err(Error::config("grid", "need at least 2 points per side"));
        }
        if samples < 8 {
            return Err(Error::config("samples", "need at least 8 samples"));
        }

        Ok(RunConfig {
            spec,
            tau,
            m,
            n,
            geometry,
            jet_order,
            iterations,
            cap: raw.parse("cap")?,
            variant,
            quadrature,
            n_max_set: n_max.is_some(),
            probes,
            source,
            output_dir: PathBuf::from(raw.get("output_dir").unwrap_or("out")),
            norm,
            eps0,
            sigma: raw.real("sigma")?,
            sigma_prime: raw.real("sigma_prime")?,
            delta,
            rho,
            grid,
            samples,
        })
    }

    /// `m`, or a configuration error naming it.
    pub fn require_m(&self) -> Result<u32> {
        self.m.ok_or_else(|| Error::config("m", "this subcommand needs m"))
    }

    /// `(m, n)` together with the wave configuration.
    pub fn wave_config(&self) -> Result<WaveConfig> {
        let mut cfg = WaveConfig::new(self.require_m()?, self.tau, self.geometry.sigma_star)?;
        cfg.variant = self.variant;
        Ok(cfg)
    }

    /// Resolves the probe list against a geometry.
    pub fn probe_points(&self, geom: &DropletGeometry) -> Vec<Complex64> {
        let mut out = Vec::new();
        for p in &self.probes {
            match *p {
                Probe::Point(z) => out.push(z),
                Probe::Ring { r, count } => out.extend((0..count).map(|i| {
                    let th = 2.0 * std::f64::consts::PI * i as f64 / count as f64;
                    geom.chart.psi(Complex64::from_polar(r, th))
                })),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1.5"), Some(Complex64::new(1.5, 0.0)));
        assert_eq!(parse_complex("-2i"), Some(Complex64::new(0.0, -2.0)));
        assert_eq!(parse_complex("1 - 0.5i"), Some(Complex64::new(1.0, -0.5)));
        assert_eq!(parse_complex("1e-3+2e+1i"), Some(Complex64::new(1e-3, 20.0)));
        assert_eq!(parse_complex("i"), Some(Complex64::new(0.0, 1.0)));
        assert_eq!(parse_complex("x"), None);
    }

    #[test]
    fn errors_name_the_key() {
        let e = RunConfig::parse("potential = frisbee\ntau = 1\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "potential"));
        let e = RunConfig::parse("potential = ginibre\ntau = 1\nm = 3\nbogus = 1\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "bogus"));
        let e = RunConfig::parse("potential = ginibre\ntau = 0.25\nm = 10\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "m"));
    }

    #[test]
    fn echoes_n() {
        let c = RunConfig::parse("potential = elliptic # comment\nt = 0.3\ntau = 0.25\nm = 40\n").unwrap();
        assert_eq!(c.n, Some(10));
        assert_eq!(c.quadrature.n_max, 10);
    }
}
