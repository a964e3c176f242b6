//! OBJ and CSV export of a sampled surface.

use std::fmt::Write as _;
use std::path::Path;

use dupin_core::dupin::UMBILIC_MARGIN;
use dupin_core::{corollary1_pair, DupinSurface, Point};

use crate::error::CliError;

/// Counts of what was written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeshStats {
    pub vertices: usize,
    pub faces: usize,
    pub dropped: usize,
}

/// `printf("%.17g")`, with negative zero printed as `0`.
pub fn fmt_g17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (16 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

struct Sample {
    p: Point,
    x: [f64; 3],
    lambda: (f64, f64),
    omega: f64,
}

fn sample(d: &DupinSurface, grid: [usize; 2]) -> Vec<Option<Sample>> {
    let omega = corollary1_pair(&d.pair, d.surface.sig()).omega;
    d.surface
        .domain()
        .grid(grid[0], grid[1])
        .into_iter()
        .map(|p| {
            let x = d.surface.position().value(p);
            let lambda = d.pair.lambdas(p);
            let x = [x.x, x.y, x.z];
            let ok = x.iter().all(|c| c.is_finite())
                && lambda.0.is_finite()
                && lambda.1.is_finite()
                && (lambda.0 - lambda.1).abs() > UMBILIC_MARGIN;
            ok.then(|| Sample {
                p,
                x,
                lambda,
                omega: omega.value(p),
            })
        })
        .collect()
}

/// Renders the OBJ and CSV texts of a `grid[0] × grid[1]` sampling.
///
/// Vertices are row-major with `u₂` outer. Points that are umbilic or not
/// finite are dropped together with every face touching them.
pub fn render_mesh(d: &DupinSurface, grid: [usize; 2]) -> (String, String, MeshStats) {
    let samples = sample(d, grid);
    let mut obj = String::new();
    let mut csv = String::from("u1,u2,x,y,z,lambda1,lambda2,omega\n");
    let mut index = vec![0usize; samples.len()];
    let mut next = 1;
    for (k, s) in samples.iter().enumerate() {
        let Some(s) = s else { continue };
        index[k] = next;
        next += 1;
        let [x, y, z] = s.x.map(fmt_g17);
        writeln!(obj, "v {x} {y} {z}").unwrap();
        let row = [
            s.p[0], s.p[1], s.x[0], s.x[1], s.x[2], s.lambda.0, s.lambda.1, s.omega,
        ]
        .map(fmt_g17)
        .join(",");
        csv.push_str(&row);
        csv.push('\n');
    }
    let [n1, n2] = grid;
    let mut faces = 0;
    for j in 0..n2 - 1 {
        for i in 0..n1 - 1 {
            let corners = [
                j * n1 + i,
                j * n1 + i + 1,
                (j + 1) * n1 + i + 1,
                (j + 1) * n1 + i,
            ];
            if corners.iter().all(|&c| index[c] > 0) {
                let [a, b, c, e] = corners.map(|c| index[c]);
                writeln!(obj, "f {a} {b} {c} {e}").unwrap();
                faces += 1;
            }
        }
    }
    let stats = MeshStats {
        vertices: next - 1,
        faces,
        dropped: samples.len() - (next - 1),
    };
    (obj, csv, stats)
}

/// Writes the OBJ and, if requested, the CSV sibling.
pub fn export_mesh(
    d: &DupinSurface,
    grid: [usize; 2],
    obj_path: &Path,
    csv_path: Option<&Path>,
) -> Result<MeshStats, CliError> {
    let (obj, csv, stats) = render_mesh(d, grid);
    write_file(obj_path, &obj)?;
    if let Some(path) = csv_path {
        write_file(path, &csv)?;
    }
    Ok(stats)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
