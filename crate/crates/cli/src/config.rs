//! Job configuration files.
//!
//! A job is a single JSON object. A `case` names either a catalogued preset
//! (whose constants, signature and domain become defaults) or a bare case tag
//! (everything must then be given explicitly).
//!
//! ```json
//! {
//!   "case": "ex1-a",
//!   "solve_for": "a12",
//!   "grid": [21, 21],
//!   "checks": ["all"]
//! }
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use dupin_core::{
    constraint_residual, preset_surface, solve_constraint, ConstantName, Domain, DupinCase,
    DupinSpec, Preset, PseudoComplex, Sign, Signature,
};
use serde::{Deserialize, Serialize};

use crate::checks::Check;
use crate::error::CliError;

#[derive(Debug, Default, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

impl Outputs {
    fn is_empty(&self) -> bool {
        self.mesh.is_none() && self.csv.is_none() && self.report.is_none()
    }
}

/// The document as written, before defaults and validation.
#[derive(Debug, Default, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a11: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a12: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a21: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a22: Option<f64>,
    /// `[[u1_min, u1_max], [u2_min, u2_max]]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[[f64; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve_for: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enforce_constraint: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    /// Polynomial coefficients `[re, im]` in ascending powers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holomorphic: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Outputs>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseRef {
    Preset(Preset),
    Case(DupinCase),
}

impl CaseRef {
    pub fn name(self) -> &'static str {
        match self {
            CaseRef::Preset(p) => p.name(),
            CaseRef::Case(c) => c.tag(),
        }
    }
}

impl FromStr for CaseRef {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        if let Ok(p) = s.parse::<Preset>() {
            return Ok(CaseRef::Preset(p));
        }
        s.parse::<DupinCase>()
            .map(CaseRef::Case)
            .map_err(|_| CliError::Config(format!("unknown case \"{s}\"")))
    }
}

pub const DEFAULT_GRID: [usize; 2] = [21, 21];
pub const DEFAULT_FD_STEP: f64 = 1e-2;

/// A validated job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub sig: Signature,
    pub case: Option<CaseRef>,
    /// Present whenever `case` is.
    pub spec: Option<DupinSpec>,
    pub solve_for: Option<ConstantName>,
    pub enforce_constraint: bool,
    pub domain: Domain,
    pub grid: [usize; 2],
    pub checks: Vec<Check>,
    pub fd_step: f64,
    pub holomorphic: Option<Vec<[f64; 2]>>,
    pub outputs: Outputs,
}

pub fn parse_config(text: &str) -> Result<JobConfig, CliError> {
    let raw: RawConfig = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("malformed config: {e}")))?;
    JobConfig::from_raw(raw)
}

pub fn load_config(path: &Path) -> Result<JobConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}

fn sign(v: i64) -> Result<Sign, CliError> {
    Sign::from_i64(v)
        .map_err(|_| CliError::Config(format!("signature entries must be ±1, got {v}")))
}

impl JobConfig {
    pub fn from_raw(raw: RawConfig) -> Result<JobConfig, CliError> {
        let grid = match raw.grid {
            None => DEFAULT_GRID,
            Some([n1, n2]) => {
                if n1 < 2 || n2 < 2 {
                    return Err(CliError::Config(format!(
                        "grid too small: [{n1}, {n2}] (need at least 2 points per direction)"
                    )));
                }
                [n1 as usize, n2 as usize]
            }
        };
        let fd_step = raw.fd_step.unwrap_or(DEFAULT_FD_STEP);
        if !(fd_step > 0.0 && fd_step.is_finite()) {
            return Err(CliError::Config(format!(
                "fd_step must be positive, got {fd_step}"
            )));
        }
        let checks = match &raw.checks {
            None => vec![],
            Some(names) => Check::parse_list(names)?,
        };
        let explicit_sig = match raw.signature {
            Some([a, b, c]) => Some(Signature {
                eps1: sign(a)?,
                eps2: sign(b)?,
                eps3: sign(c)?,
            }),
            None => None,
        };
        let explicit_domain = match raw.domain {
            Some([[a, b], [c, d]]) => Some(
                Domain::new([a, c], [b, d])
                    .map_err(|e| CliError::Config(format!("degenerate domain: {e}")))?,
            ),
            None => None,
        };
        let solve_for = match &raw.solve_for {
            Some(name) => Some(
                name.parse::<ConstantName>()
                    .map_err(|_| CliError::Config(format!("unknown constant \"{name}\"")))?,
            ),
            None => None,
        };
        let enforce_constraint = raw.enforce_constraint.unwrap_or(true);
        let case = raw.case.as_deref().map(str::parse::<CaseRef>).transpose()?;

        let spec = match case {
            None => None,
            Some(case) => Some(build_spec(
                case,
                &raw,
                explicit_sig,
                explicit_domain,
                solve_for,
                enforce_constraint,
            )?),
        };
        let holomorphic = match raw.holomorphic {
            Some(coeffs) if coeffs.is_empty() => {
                return Err(CliError::Config(
                    "holomorphic needs at least one coefficient".into(),
                ))
            }
            other => other,
        };
        if spec.is_none() && holomorphic.is_none() {
            return Err(CliError::Config(
                "config needs a \"case\" or \"holomorphic\" coefficients".into(),
            ));
        }
        let sig = spec
            .map(|s| s.sig)
            .or(explicit_sig)
            .unwrap_or(Signature::EUCLIDEAN);
        let domain = match (spec, explicit_domain) {
            (Some(s), _) => s.domain,
            (None, Some(d)) => d,
            (None, None) => {
                return Err(CliError::Config(
                    "holomorphic jobs need a \"domain\"".into(),
                ))
            }
        };
        Ok(JobConfig {
            sig,
            case,
            spec,
            solve_for,
            enforce_constraint,
            domain,
            grid,
            checks,
            fd_step,
            holomorphic,
            outputs: raw.outputs.unwrap_or_default(),
        })
    }

    /// The fully explicit document for this job; parsing it yields `self`.
    pub fn to_raw(&self) -> RawConfig {
        let k = self.spec.map(|s| s.constants);
        let d = self.domain;
        RawConfig {
            signature: Some(self.sig.as_array()),
            case: self.case.map(|c| c.name().to_string()),
            c: k.map(|k| k.c),
            b: k.map(|k| k.b),
            a11: k.map(|k| k.a11),
            a12: k.map(|k| k.a12),
            a21: k.map(|k| k.a21),
            a22: k.map(|k| k.a22),
            domain: Some([[d.lo[0], d.hi[0]], [d.lo[1], d.hi[1]]]),
            grid: Some([self.grid[0] as i64, self.grid[1] as i64]),
            checks: Some(self.checks.iter().map(|c| c.name().to_string()).collect()),
            solve_for: self.solve_for.map(|n| n.as_str().to_string()),
            enforce_constraint: Some(self.enforce_constraint),
            fd_step: Some(self.fd_step),
            holomorphic: self.holomorphic.clone(),
            outputs: (!self.outputs.is_empty()).then(|| self.outputs.clone()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("config serializes")
    }

    pub fn holomorphic_coeffs(&self) -> Option<Vec<PseudoComplex>> {
        let eps2 = self.sig.eps2;
        self.holomorphic.as_ref().map(|c| {
            c.iter()
                .map(|&[re, im]| PseudoComplex::new(re, im, eps2))
                .collect()
        })
    }
}

fn build_spec(
    case: CaseRef,
    raw: &RawConfig,
    sig: Option<Signature>,
    domain: Option<Domain>,
    solve_for: Option<ConstantName>,
    enforce: bool,
) -> Result<DupinSpec, CliError> {
    let explicit = [
        (ConstantName::C, raw.c),
        (ConstantName::B, raw.b),
        (ConstantName::A11, raw.a11),
        (ConstantName::A12, raw.a12),
        (ConstantName::A21, raw.a21),
        (ConstantName::A22, raw.a22),
    ];
    let mut spec = match case {
        CaseRef::Preset(p) => {
            if solve_for.is_some() {
                p.family().0
            } else {
                preset_surface(p).map_err(CliError::Core)?
            }
        }
        CaseRef::Case(c) => {
            let sig = sig.ok_or_else(|| {
                CliError::Config(format!(
                    "case \"{}\" needs an explicit \"signature\"",
                    c.tag()
                ))
            })?;
            let domain = domain.ok_or_else(|| {
                CliError::Config(format!("case \"{}\" needs an explicit \"domain\"", c.tag()))
            })?;
            DupinSpec::new(c, sig, Default::default(), domain)
        }
    };
    if let Some(sig) = sig {
        spec.sig = sig;
    }
    if let Some(d) = domain {
        spec.domain = d;
    }
    for (name, value) in explicit {
        if let Some(v) = value {
            if !v.is_finite() {
                return Err(CliError::Config(format!("constant {name} must be finite")));
            }
            spec.constants.set(name, v);
        }
    }
    if let Some(free) = solve_for {
        spec = solve_constraint(&spec, free)
            .map_err(|e| CliError::Config(format!("cannot solve for {free}: {e}")))?;
    }
    if enforce {
        let r = constraint_residual(&spec);
        if !(r.abs() < dupin_core::dupin::CONSTRAINT_TOL) {
            return Err(CliError::Config(format!(
                "constraint violated: residual {r:e} (set \"enforce_constraint\": false to study perturbed constants)"
            )));
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_cylinder_config() {
        let cfg = parse_config(
            r#"{"signature": [1, 1, 1], "case": "cylinder-euclidean", "c": 1, "grid": [21, 21]}"#,
        )
        .unwrap();
        assert_eq!(cfg.case, Some(CaseRef::Preset(Preset::CylinderEuclidean)));
        assert_eq!(cfg.grid, [21, 21]);
        assert_eq!(cfg.spec.unwrap().constants.c, 1.0);
        assert!(cfg.checks.is_empty());
    }

    #[test]
    fn solve_for_fills_in_the_free_constant() {
        let cfg = parse_config(r#"{"case": "ex1-a", "solve_for": "a12"}"#).unwrap();
        assert_eq!(cfg.spec.unwrap().constants.a12, 1.5);
        let cfg = parse_config(
            r#"{"signature": [1, 1, 1], "case": "ex1", "c": 1, "a22": 2,
                "domain": [[-1, 1], [-1, 1]], "solve_for": "a12"}"#,
        )
        .unwrap();
        assert_eq!(cfg.spec.unwrap().constants.a12, 1.5);
    }

    #[test]
    fn rejects_bad_documents() {
        let err = |t: &str| parse_config(t).unwrap_err().to_string();
        assert!(err(r#"{"case": "ex1-a", "grid": [1, 21]}"#).contains("grid too small"));
        assert!(err(r#"{"case": "ex1-a", "colour": 3}"#).contains("unknown field"));
        assert!(err(r#"{"case": "ex1-a", "#).contains("malformed"));
        assert!(err(r#"{"case": "ex1-a", "a22": 2.1}"#).contains("constraint violated"));
        assert!(
            err(r#"{"case": "ex1-a", "domain": [[1, 1], [0, 1]]}"#).contains("degenerate domain")
        );
        assert!(err(r#"{"case": "ex7"}"#).contains("unknown case"));
        assert!(err(r#"{"case": "ex1-a", "checks": ["nope"]}"#).contains("unknown check"));
        assert!(err(r#"{"case": "ex1-a", "signature": [1, 2, 1]}"#).contains("±1"));
        assert!(err(r#"{"grid": [5, 5]}"#).contains("case"));
        assert!(err(r#"{"case": "ex2", "signature": [1, 1, 1]}"#).contains("domain"));
    }

    #[test]
    fn perturbed_constants_need_an_explicit_opt_out() {
        let cfg =
            parse_config(r#"{"case": "ex1-a", "a22": 2.1, "enforce_constraint": false}"#).unwrap();
        assert_eq!(cfg.spec.unwrap().constants.a22, 2.1);
    }

    #[test]
    fn round_trip_is_stable() {
        for text in [
            r#"{"case": "ex1-a", "solve_for": "a12", "checks": ["all"], "grid": [9, 7]}"#,
            r#"{"case": "cylinder-lorentz", "outputs": {"mesh": "m.obj"}}"#,
            r#"{"holomorphic": [[0, 0], [1, 0]], "signature": [1, -1, 1],
                "domain": [[0.5, 1], [-0.3, 0.3]], "fd_step": 0.005}"#,
        ] {
            let a = parse_config(text).unwrap();
            let b = parse_config(&a.to_json()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.to_json(), b.to_json());
        }
    }
}
