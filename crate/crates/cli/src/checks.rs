//! Grid sweeps of the verification checks and their JSON-lines report.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use dupin_core::{
    build_dupin, build_dupin_unchecked, calapso_residual, conservation_vector, corollary1_pair,
    curvature_pair, curvature_pair_unchecked, gauss2_residual, gauss_codazzi_residuals, inner,
    jet_eval, omega_from_surface, proposition_field, weingarten_lambdas, DupinSurface, Error,
    HolomorphicFn, Method, Point, Proposition, ScalarField, Vec3E,
};
use serde::{Deserialize, Serialize};

use crate::config::JobConfig;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    MetricDiagonal,
    ConformalFactor,
    UnitNormal,
    WeingartenDefect,
    DupinProperty,
    CodazziResidual,
    GaussResidual,
    WeingartenMatch,
    NormalAgreement,
    Conservation,
    Gauss2,
    CalapsoOmega,
    CalapsoBigOmega,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::MetricDiagonal,
        Check::ConformalFactor,
        Check::UnitNormal,
        Check::WeingartenDefect,
        Check::DupinProperty,
        Check::CodazziResidual,
        Check::GaussResidual,
        Check::WeingartenMatch,
        Check::NormalAgreement,
        Check::Conservation,
        Check::Gauss2,
        Check::CalapsoOmega,
        Check::CalapsoBigOmega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::MetricDiagonal => "metric_diagonal",
            Check::ConformalFactor => "conformal_factor",
            Check::UnitNormal => "unit_normal",
            Check::WeingartenDefect => "weingarten_defect",
            Check::DupinProperty => "dupin_property",
            Check::CodazziResidual => "codazzi_residual",
            Check::GaussResidual => "gauss_residual",
            Check::WeingartenMatch => "weingarten_match",
            Check::NormalAgreement => "normal_agreement",
            Check::Conservation => "conservation",
            Check::Gauss2 => "gauss2",
            Check::CalapsoOmega => "calapso_omega",
            Check::CalapsoBigOmega => "calapso_Omega",
        }
    }

    pub fn tolerance(self, method: Method) -> f64 {
        match self {
            Check::MetricDiagonal | Check::UnitNormal => 1e-10,
            Check::ConformalFactor | Check::DupinProperty | Check::Conservation => 1e-9,
            Check::WeingartenDefect
            | Check::CodazziResidual
            | Check::GaussResidual
            | Check::NormalAgreement => 1e-8,
            Check::WeingartenMatch => 1e-7,
            Check::Gauss2 => 1e-10,
            Check::CalapsoOmega | Check::CalapsoBigOmega => calapso_tolerance(method),
        }
    }

    /// Names in order; `"all"` expands to every check. Duplicates are dropped.
    pub fn parse_list(names: &[String]) -> Result<Vec<Check>, CliError> {
        let mut out = Vec::new();
        for name in names {
            let found: Vec<Check> = if name == "all" {
                Check::ALL.to_vec()
            } else {
                let c = Check::ALL
                    .into_iter()
                    .find(|c| c.name() == name)
                    .ok_or_else(|| CliError::Config(format!("unknown check \"{name}\"")))?;
                vec![c]
            };
            for c in found {
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}

pub fn calapso_tolerance(method: Method) -> f64 {
    match method {
        Method::Jet => 1e-9,
        Method::Fd { .. } => 1e-5,
    }
}

pub fn method_name(method: Method) -> &'static str {
    match method {
        Method::Jet => "jet",
        Method::Fd { .. } => "fd",
    }
}

/// One line of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub grid: [usize; 2],
    /// `null` when a value was not finite.
    pub max_abs: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    pub evaluated: usize,
    pub excluded: usize,
    pub failed_points: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exclusions: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
}

/// Accumulates a residual over grid points.
#[derive(Debug, Default)]
struct Sweep {
    worst: f64,
    evaluated: usize,
    failed: usize,
    exclusions: BTreeMap<String, usize>,
}

impl Sweep {
    fn run(points: &[Point], tol: f64, f: impl Fn(Point) -> Result<f64, Error>) -> Sweep {
        let mut s = Sweep::default();
        for &p in points {
            match f(p) {
                Ok(v) => s.add(v, tol),
                Err(e) => *s.exclusions.entry(e.to_string()).or_insert(0) += 1,
            }
        }
        s
    }

    fn add(&mut self, v: f64, tol: f64) {
        self.evaluated += 1;
        let a = if v.is_nan() { f64::INFINITY } else { v.abs() };
        if !(a <= tol) {
            self.failed += 1;
        }
        if a > self.worst {
            self.worst = a;
        }
    }

    fn record(self, name: &str, grid: [usize; 2], tol: f64, method: Option<Method>) -> CheckRecord {
        let finite = self.worst.is_finite();
        CheckRecord {
            check: name.to_string(),
            grid,
            max_abs: finite.then_some(self.worst),
            tol,
            // A check that evaluated nothing has not passed.
            pass: finite && self.evaluated > 0 && self.worst <= tol,
            evaluated: self.evaluated,
            excluded: self.exclusions.values().sum(),
            failed_points: self.failed,
            exclusions: self.exclusions,
            method: method.map(|m| method_name(m).to_string()),
        }
    }
}

/// Builds the surface of a job, honouring `enforce_constraint`.
pub fn build_subject(cfg: &JobConfig) -> Result<DupinSurface, CliError> {
    let spec = cfg
        .spec
        .ok_or_else(|| CliError::Config("this command needs a \"case\"".into()))?;
    let built = if cfg.enforce_constraint {
        build_dupin(&spec)
    } else {
        build_dupin_unchecked(&spec)
    };
    Ok(built?)
}

fn grid_points(cfg: &JobConfig) -> Vec<Point> {
    cfg.domain.grid(cfg.grid[0], cfg.grid[1])
}

/// Runs the configured checks on the job's surface.
pub fn run_report(cfg: &JobConfig, method: Method) -> Result<Vec<CheckRecord>, CliError> {
    if cfg.checks.is_empty() {
        return Err(CliError::Config("no checks requested".into()));
    }
    let d = build_subject(cfg)?;
    let points = grid_points(cfg);
    Ok(cfg
        .checks
        .iter()
        .map(|&c| evaluate(c, &d, &points, cfg.grid, method))
        .collect())
}

fn evaluate(
    check: Check,
    d: &DupinSurface,
    points: &[Point],
    grid: [usize; 2],
    method: Method,
) -> CheckRecord {
    let s = &d.surface;
    let sig = s.sig();
    let tol = check.tolerance(method);
    let run = |f: &dyn Fn(Point) -> Result<f64, Error>| {
        Sweep::run(points, tol, f).record(check.name(), grid, tol, None)
    };
    match check {
        Check::MetricDiagonal => run(&|p| {
            let j = jet_eval(s, p, 1)?;
            Ok(inner(j.x1, j.x2, sig))
        }),
        Check::ConformalFactor => run(&|p| {
            let j = jet_eval(s, p, 1)?;
            let (l1, l2) = d.pair.lambdas(p);
            Ok(inner(j.x1, j.x1, sig) - sig.e1() / (l2 - l1).powi(2))
        }),
        Check::UnitNormal => run(&|p| {
            let (n, _, _) = s.normal_partials(p)?;
            Ok(inner(n, n, sig) - sig.e3())
        }),
        Check::WeingartenDefect => run(&|p| {
            let j = jet_eval(s, p, 1)?;
            let (_, n1, n2) = s.normal_partials(p)?;
            let (l1, l2) = d.pair.lambdas(p);
            Ok((n1 - j.x1 * l1).norm_inf().max((n2 - j.x2 * l2).norm_inf()))
        }),
        Check::DupinProperty => run(&|p| {
            let [l1, l2] = s.lambda_jets(p, 1)?;
            Ok(l1.partial(1, 0).abs().max(l2.partial(0, 1).abs()))
        }),
        Check::CodazziResidual => run(&|p| {
            let r = gauss_codazzi_residuals(s, p)?;
            Ok(r.cod1.abs().max(r.cod2.abs()))
        }),
        Check::GaussResidual => run(&|p| Ok(gauss_codazzi_residuals(s, p)?.gauss)),
        Check::WeingartenMatch => run(&|p| {
            let j = jet_eval(s, p, 1)?;
            let (_, n1, n2) = s.normal_partials(p)?;
            let w = weingarten_lambdas(&j, n1, n2, sig)?;
            let (l1, l2) = d.pair.lambdas(p);
            Ok((w.lambda1 - l1).abs().max((w.lambda2 - l2).abs()))
        }),
        Check::NormalAgreement => normal_agreement(d, points, grid, tol),
        Check::Conservation => {
            let q0 = conservation_vector(d, [0.0, 0.0]);
            run(&|p| Ok((conservation_vector(d, p) - q0).norm_inf()))
        }
        Check::Gauss2 => run(&|p| gauss2_residual(&d.pair.h1, &d.pair.h2, p, sig)),
        Check::CalapsoOmega | Check::CalapsoBigOmega => {
            let pair = corollary1_pair(&d.pair, sig);
            let w = if check == Check::CalapsoOmega {
                pair.omega
            } else {
                pair.big_omega
            };
            Sweep::run(points, tol, |p| {
                Ok(calapso_residual(&w, p, sig, method)?.value)
            })
            .record(check.name(), grid, tol, Some(method))
        }
    }
}

/// Closed-form normal against the cross normal, up to one global sign.
fn normal_agreement(d: &DupinSurface, points: &[Point], grid: [usize; 2], tol: f64) -> CheckRecord {
    let s = &d.surface;
    let pairs: Vec<Result<(Vec3E, Vec3E), Error>> = points
        .iter()
        .map(|&p| {
            let (n, _, _) = s.normal_partials(p)?;
            let c = s.cross_normal_jet(p, 0)?;
            Ok((n, Vec3E::new(c[0].value(), c[1].value(), c[2].value())))
        })
        .collect();
    let spread = |sign: f64| {
        pairs
            .iter()
            .flatten()
            .map(|(n, c)| (*n - *c * sign).norm_inf())
            .fold(0.0f64, f64::max)
    };
    let sign = if spread(1.0) <= spread(-1.0) {
        1.0
    } else {
        -1.0
    };
    let mut sweep = Sweep::default();
    for r in &pairs {
        match r {
            Ok((n, c)) => sweep.add((*n - *c * sign).norm_inf(), tol),
            Err(e) => *sweep.exclusions.entry(e.to_string()).or_insert(0) += 1,
        }
    }
    sweep.record(Check::NormalAgreement.name(), grid, tol, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solution {
    Corollary1,
    Prop2,
    Prop3,
    Prop4,
    Prop5,
}

impl Solution {
    pub fn name(self) -> &'static str {
        match self {
            Solution::Corollary1 => "corollary1",
            Solution::Prop2 => "prop2",
            Solution::Prop3 => "prop3",
            Solution::Prop4 => "prop4",
            Solution::Prop5 => "prop5",
        }
    }
}

/// Tolerance for literal formulas against the surface-derived ω.
pub const LITERAL_TOL: f64 = 1e-12;

/// Residual sweeps for one solution family.
pub fn run_calapso(
    cfg: &JobConfig,
    solution: Solution,
    method: Method,
) -> Result<Vec<CheckRecord>, CliError> {
    let points = grid_points(cfg);
    let tol = calapso_tolerance(method);
    let residual = |name: &str, w: &ScalarField| {
        let sig = cfg.sig;
        Sweep::run(&points, tol, |p| {
            Ok(calapso_residual(w, p, sig, method)?.value)
        })
        .record(name, cfg.grid, tol, Some(method))
    };
    match solution {
        Solution::Corollary1 => {
            let spec = cfg
                .spec
                .ok_or_else(|| CliError::Config("corollary1 needs a \"case\"".into()))?;
            let pair = if cfg.enforce_constraint {
                curvature_pair(&spec)?
            } else {
                curvature_pair_unchecked(&spec)?
            };
            let fields = corollary1_pair(&pair, spec.sig);
            Ok(vec![
                residual(Check::CalapsoOmega.name(), &fields.omega),
                residual(Check::CalapsoBigOmega.name(), &fields.big_omega),
            ])
        }
        Solution::Prop2 | Solution::Prop3 | Solution::Prop4 => {
            let which = match solution {
                Solution::Prop2 => Proposition::Prop2,
                Solution::Prop3 => Proposition::Prop3,
                _ => Proposition::Prop4,
            };
            let spec = cfg
                .spec
                .ok_or_else(|| CliError::Config(format!("{} needs a \"case\"", solution.name())))?;
            let literal = proposition_field(which, &spec)?;
            let mut out = vec![residual(Check::CalapsoOmega.name(), &literal)];
            let d = build_subject(cfg)?;
            let derived = omega_from_surface(&d.surface)?.omega;
            let gap = |sign: f64| {
                Sweep::run(&points, LITERAL_TOL, |p| {
                    Ok(literal.value(p) - sign * derived.value(p))
                })
            };
            let (plus, minus) = (gap(1.0), gap(-1.0));
            let best = if plus.worst <= minus.worst {
                plus
            } else {
                minus
            };
            out.push(best.record("literal_vs_derived", cfg.grid, LITERAL_TOL, None));
            Ok(out)
        }
        Solution::Prop5 => {
            let coeffs = cfg.holomorphic_coeffs().ok_or_else(|| {
                CliError::Config("prop5 needs \"holomorphic\" coefficients".into())
            })?;
            let f = HolomorphicFn::new(coeffs)?;
            let w = dupin_core::holomorphic_omega_eps3(&f, cfg.sig.eps3)?;
            let eps3 = cfg.sig.eps3;
            let sweep = Sweep::run(&points, tol, |p| {
                let sig = f.chart_signature(p, eps3)?;
                Ok(calapso_residual(&w, p, sig, method)?.value)
            });
            Ok(vec![sweep.record(
                Check::CalapsoOmega.name(),
                cfg.grid,
                tol,
                Some(method),
            )])
        }
    }
}

pub fn all_pass(records: &[CheckRecord]) -> bool {
    !records.is_empty() && records.iter().all(|r| r.pass)
}

pub fn to_jsonl(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn write_report(records: &[CheckRecord], path: &Path) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
    file.write_all(to_jsonl(records).as_bytes())
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
