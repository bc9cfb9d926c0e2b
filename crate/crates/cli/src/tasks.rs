//! One function per task. Each evaluates its grid points in parallel and
//! gathers rows in grid order, so output does not depend on the thread count.

use chiral_dicke::bogoliubov::{self, build_matrices, spectrum_matrix};
use chiral_dicke::criticality::{self, FitSide};
use chiral_dicke::ed::{self, BasisSpec};
use chiral_dicke::{meanfield, DickeError, ModelParams};
use rayon::prelude::*;

use crate::axis::Param;
use crate::config::{BaseParams, SweepSpec, Task};
use crate::table::{Cell, Table, STATUS};

const TUPLE: [&str; 6] = ["omega_c", "omega_z", "g1", "g2", "U", "N"];

/// Angles this close to the degeneracy line get the square-root reference amplitude.
const DEGENERACY_MATCH: f64 = 1e-9;

pub fn run(spec: &SweepSpec) -> Table {
    match spec.task {
        Task::PhaseMap => phase_map(spec),
        Task::SpectrumCut => spectrum_cut(spec),
        Task::CriticalLine => critical_line(spec),
        Task::GapScaling => gap_scaling(spec),
        Task::ExponentMap => exponent_map(spec),
        Task::EdCheck => ed_check(spec),
    }
}

fn tuple(b: &BaseParams) -> Vec<Cell> {
    let (g1, g2) = b.cartesian();
    let n = f64::from(b.n_atoms);
    vec![
        b.omega_c.into(),
        b.omega_z.into(),
        g1.into(),
        g2.into(),
        (b.un() / n).into(),
        b.n_atoms.into(),
    ]
}

fn table(spec: &SweepSpec, columns: &[&str]) -> Table {
    let mut all: Vec<&str> = TUPLE.to_vec();
    all.extend_from_slice(columns);
    all.push(STATUS);
    Table::new(spec.task.name(), spec.settings(), &all)
}

fn error_row(width: usize, e: impl std::fmt::Display) -> Vec<Cell> {
    let mut row = vec![Cell::Empty; width];
    row.push(format!("error: {e}").into());
    row
}

/// Tuple + task cells + status. `width` is the number of task cells.
fn finish(b: &BaseParams, width: usize, cells: Result<Vec<Cell>, String>) -> Vec<Cell> {
    let mut row = tuple(b);
    match cells {
        Ok(mut c) => {
            debug_assert_eq!(c.len(), width);
            row.append(&mut c);
            row.push("ok".into());
        }
        Err(e) => row.extend(error_row(width, e)),
    }
    row
}

/// A grid point. `invalid` holds the reason an axis value could not be applied.
#[derive(Clone)]
struct Point {
    base: BaseParams,
    x: Option<f64>,
    y: Option<f64>,
    invalid: Option<String>,
}

/// Points of the `axis1 x axis2` grid, axis2 varying fastest.
fn grid(base: BaseParams, spec: &SweepSpec) -> Vec<Point> {
    let Some(a1) = spec.axis1 else {
        return vec![Point { base, x: None, y: None, invalid: None }];
    };
    let mut out = Vec::new();
    for x in a1.values() {
        let mut b = base;
        let r1 = b.set(a1.param, x).err();
        match spec.axis2 {
            None => out.push(Point { base: b, x: Some(x), y: None, invalid: r1 }),
            Some(a2) => {
                for y in a2.values() {
                    let mut c = b;
                    let r2 = c.set(a2.param, y).err();
                    out.push(Point { base: c, x: Some(x), y: Some(y), invalid: r1.clone().or(r2) });
                }
            }
        }
    }
    out
}

fn model(b: &BaseParams) -> Result<ModelParams, String> {
    b.model().map_err(|e| e.to_string())
}

fn evaluate<F>(spec: &SweepSpec, points: Vec<Point>, columns: &[&str], f: F) -> Table
where
    F: Fn(&BaseParams) -> Result<Vec<Cell>, String> + Sync,
{
    let mut cols = Vec::new();
    if spec.axis1.is_some() {
        cols.push("axis1");
    }
    if spec.axis2.is_some() {
        cols.push("axis2");
    }
    cols.extend_from_slice(columns);
    let mut t = table(spec, &cols);
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|pt| {
            let mut row = tuple(&pt.base);
            if spec.axis1.is_some() {
                row.push(pt.x.into());
            }
            if spec.axis2.is_some() {
                row.push(pt.y.into());
            }
            let cells = match &pt.invalid {
                Some(e) => Err(e.clone()),
                None => f(&pt.base),
            };
            match cells {
                Ok(c) => {
                    row.extend(c);
                    row.push("ok".into());
                }
                Err(e) => row.extend(error_row(columns.len(), e)),
            }
            row
        })
        .collect();
    for r in rows {
        t.push(r);
    }
    t
}

/// Moves every point onto the boundary `g = g_c` along its own ray.
fn onto_boundary(points: Vec<Point>) -> Vec<Point> {
    points
        .into_iter()
        .map(|mut pt| {
            pt.base.set(Param::GRel, 1.0).expect("g_rel is always settable");
            pt
        })
        .collect()
}

fn phase_map(spec: &SweepSpec) -> Table {
    let columns = [
        "phase",
        "alpha3_abs2",
        "energy_per_atom",
        "eps1",
        "eps2",
        "eps3",
        "goldstone_count",
        "stable",
    ];
    evaluate(spec, grid(spec.base, spec), &columns, |b| {
        let p = model(b)?;
        let mf = meanfield::solve(&p).map_err(|e| e.to_string())?;
        let s = bogoliubov::spectrum_at(&p, &mf).map_err(|e| e.to_string())?;
        Ok(vec![
            mf.phase.label().into(),
            mf.alpha3_abs2.into(),
            mf.total_energy_per_atom(&p).into(),
            s.modes[0].into(),
            s.modes[1].into(),
            s.modes[2].into(),
            s.goldstone_count.into(),
            s.stable.into(),
        ])
    })
}

/// `slope (g_c - g)` below the boundary, where the slope is finite.
fn linear_gap_reference(p: &ModelParams, g: f64, phi: f64) -> Option<f64> {
    let gc = p.critical_coupling();
    if g >= gc {
        return None;
    }
    criticality::analytic_slope(p, phi).ok().map(|s| s * (gc - g))
}

fn spectrum_cut(spec: &SweepSpec) -> Table {
    let mut points = Vec::new();
    for &phi in &spec.phis {
        let mut base = spec.base;
        base.set(Param::Phi, phi).expect("phi is always settable");
        points.extend(grid(base, spec));
    }
    let columns = [
        "phi",
        "g_over_gc",
        "phase",
        "eps1",
        "eps2",
        "eps3",
        "goldstone_count",
        "stable",
        "linear_gap_ref",
    ];
    evaluate(spec, points, &columns, |b| {
        let p = model(b)?;
        let (g, phi) = b.polar();
        let mf = meanfield::solve(&p).map_err(|e| e.to_string())?;
        let s = bogoliubov::spectrum_at(&p, &mf).map_err(|e| e.to_string())?;
        Ok(vec![
            phi.into(),
            (g / p.critical_coupling()).into(),
            mf.phase.label().into(),
            s.modes[0].into(),
            s.modes[1].into(),
            s.modes[2].into(),
            s.goldstone_count.into(),
            s.stable.into(),
            linear_gap_reference(&p, g, phi).into(),
        ])
    })
}

fn critical_line(spec: &SweepSpec) -> Table {
    let columns = ["phi", "eps_lower", "eps_upper", "is_zero"];
    evaluate(spec, onto_boundary(grid(spec.base, spec)), &columns, |b| {
        let p = model(b)?;
        let phi = b.polar().1;
        let lower = criticality::lower_polariton_on_critical_line(&p, phi).map_err(|e| e.to_string())?;
        let (_, upper_sq) = bogoliubov::polariton_energies_squared(&p);
        Ok(vec![
            phi.into(),
            lower.into(),
            upper_sq.max(0.0).sqrt().into(),
            (lower < criticality::ZERO_TOL * p.energy_scale()).into(),
        ])
    })
}

fn sqrt_reference(p: &ModelParams, phi: f64) -> Option<f64> {
    let star = criticality::degeneracy_angle(p)?;
    if (phi - star).abs() > DEGENERACY_MATCH {
        return None;
    }
    criticality::analytic_sqrt_prefactor(p).ok()
}

fn gap_scaling(spec: &SweepSpec) -> Table {
    let columns = [
        "phi",
        "kind",
        "side",
        "distance",
        "gap",
        "z_nu",
        "prefactor",
        "r_squared",
        "poor_fit",
        "slope_ref",
        "sqrt_prefactor_ref",
    ];
    let mut t = table(spec, &columns);
    let blocks: Vec<Vec<Vec<Cell>>> = spec
        .phis
        .par_iter()
        .map(|&phi| gap_block(spec, phi, columns.len()))
        .collect();
    for r in blocks.into_iter().flatten() {
        t.push(r);
    }
    t
}

/// Sample rows, then one fit row, for the ray `phi`.
fn gap_block(spec: &SweepSpec, phi: f64, width: usize) -> Vec<Vec<Cell>> {
    let mut base = spec.base;
    base.set(Param::Phi, phi).expect("phi is always settable");
    base.set(Param::GRel, 1.0).expect("g_rel is always settable");
    let side = spec.side.label();
    let p = match model(&base) {
        Ok(p) => p,
        Err(e) => return vec![finish(&base, width, Err(e))],
    };
    let gc = p.critical_coupling();
    let fit = criticality::fit_exponent(&p, phi, spec.side, &spec.window);
    let samples = match &fit {
        Ok(f) => Ok(f.samples.clone()),
        Err(DickeError::NoVanishingBranch(_)) => {
            criticality::gap_samples(&p, phi, spec.side, &spec.window).map_err(|e| e.to_string())
        }
        Err(e) => Err(e.to_string()),
    };
    let mut rows = Vec::new();
    let samples = match samples {
        Ok(s) => s,
        Err(e) => return vec![finish(&base, width, Err(e))],
    };
    for (d, gap) in samples {
        let mut at = base;
        let g = match spec.side {
            FitSide::FromNormal => gc - d,
            FitSide::FromSuperradiant => gc + d,
        };
        at.set(Param::G, g).expect("g is always settable");
        let cells = vec![
            phi.into(),
            "sample".into(),
            side.into(),
            d.into(),
            gap.into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
        ];
        rows.push(finish(&at, width, Ok(cells)));
    }
    let fit_cells = fit.map_err(|e| e.to_string()).map(|f| {
        vec![
            phi.into(),
            "fit".into(),
            side.into(),
            Cell::Empty,
            Cell::Empty,
            f.z_nu.into(),
            f.prefactor.into(),
            f.r_squared.into(),
            f.poor_fit.into(),
            criticality::analytic_slope(&p, phi).ok().into(),
            sqrt_reference(&p, phi).into(),
        ]
    });
    rows.push(finish(&base, width, fit_cells));
    rows
}

fn exponent_map(spec: &SweepSpec) -> Table {
    let columns = ["phi", "z_nu", "prefactor", "r_squared", "poor_fit", "slope_ref"];
    // The tuple reports the boundary point each fit approaches.
    evaluate(spec, onto_boundary(grid(spec.base, spec)), &columns, |b| {
        let p = model(b)?;
        let phi = b.polar().1;
        let f = criticality::fit_exponent(&p, phi, spec.side, &spec.window).map_err(|e| e.to_string())?;
        Ok(vec![
            phi.into(),
            f.z_nu.into(),
            f.prefactor.into(),
            f.r_squared.into(),
            f.poor_fit.into(),
            criticality::analytic_slope(&p, phi).ok().into(),
        ])
    })
}

fn ed_check(spec: &SweepSpec) -> Table {
    let columns = [
        "ed_energy_per_atom",
        "mf_energy_per_atom",
        "gaussian_energy_per_atom",
        "delta_per_atom",
        "lz_expectation",
        "sector",
        "n_max1",
        "n_max2",
        "dimension",
        "doublings",
        "converged",
    ];
    let mut t = table(spec, &columns);
    let rows: Vec<Vec<Cell>> = spec
        .ed_atoms
        .par_iter()
        .map(|&n| {
            let mut b = spec.base;
            b.n_atoms = n;
            let cells = ed_cells(&b);
            let mut row = finish(&b, columns.len(), cells.clone());
            if let Ok(c) = cells {
                if c[columns.len() - 1] == Cell::Bool(false) {
                    *row.last_mut().expect("status") = "not_converged".into();
                }
            }
            row
        })
        .collect();
    for r in rows {
        t.push(r);
    }
    t
}

fn ed_cells(b: &BaseParams) -> Result<Vec<Cell>, String> {
    let p = model(b)?;
    let err = |e: DickeError| e.to_string();
    let mf = meanfield::solve(&p).map_err(err)?;
    let m = build_matrices(&p, &mf).map_err(err)?;
    let zp = bogoliubov::zero_point_energy(&m, &spectrum_matrix(&m).map_err(err)?);
    let r = ed::ground_state(&p, &BasisSpec::from_mean_field(&p).map_err(err)?).map_err(err)?;
    let mf_e = mf.total_energy_per_atom(&p);
    Ok(vec![
        r.ground_energy_per_atom.into(),
        mf_e.into(),
        (mf_e + zp / p.n()).into(),
        (r.ground_energy_per_atom - mf_e).into(),
        r.lz_expectation.into(),
        r.sector.into(),
        r.n_max1.into(),
        r.n_max2.into(),
        r.dimension.into(),
        r.doublings.into(),
        r.converged.into(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axis::Axis;
    use crate::config::{Cli, FileConfig};
    use clap::Parser;

    fn spec(args: &[&str]) -> SweepSpec {
        let mut full = vec!["chiral-dicke"];
        full.extend_from_slice(args);
        SweepSpec::resolve(&Cli::try_parse_from(full).unwrap(), &FileConfig::default()).unwrap()
    }

    fn col(t: &Table, name: &str) -> usize {
        t.columns.iter().position(|c| c == name).unwrap()
    }

    #[test]
    fn phase_map_grid_order_and_phases() {
        let s = spec(&["--task", "phase_map", "--axis1", "g1:0:3:4", "--axis2", "g2:0:3:4"]);
        let t = run(&s);
        assert_eq!(t.rows.len(), 16);
        assert_eq!(t.error_rows(), 0);
        let (g1, phase) = (col(&t, "g1"), col(&t, "phase"));
        assert_eq!(t.rows[4][g1], Cell::Float(1.0));
        assert_eq!(t.rows[0][phase], Cell::Text("normal".into()));
        assert_eq!(t.rows[15][phase], Cell::Text("superradiant".into()));
    }

    #[test]
    fn critical_line_rejects_dispersive_shift() {
        let s = spec(&["--task", "critical_line", "--axis1", "phi:0:1.5:3", "--UN", "0.2"]);
        let t = run(&s);
        assert_eq!(t.error_rows(), 3);
        let s = spec(&["--task", "critical_line", "--axis1", "phi:0:1.5:3"]);
        let t = run(&s);
        assert_eq!(t.error_rows(), 0);
        let g1 = col(&t, "g1");
        assert!(matches!(t.rows[0][g1], Cell::Float(x) if (x - 1.5f64.sqrt()).abs() < 1e-14));
    }

    #[test]
    fn gap_scaling_fit_rows_follow_samples() {
        let mut s = spec(&["--task", "gap_scaling", "--phis", "0.5", "--fit-points", "20"]);
        s.window.points = 20;
        let t = run(&s);
        assert_eq!(t.rows.len(), 21);
        let last = &t.rows[20];
        assert_eq!(last[col(&t, "kind")], Cell::Text("fit".into()));
        let Cell::Float(z) = last[col(&t, "z_nu")] else { panic!() };
        assert!((z - 1.0).abs() < 0.05);
    }

    #[test]
    fn bad_axis_value_becomes_error_row() {
        let mut s = spec(&["--task", "phase_map", "--axis1", "N:1:2:3"]);
        s.axis2 = Some(Axis::linear(Param::G, 0.0, 1.0, 2));
        let t = run(&s);
        // N = 1.5 cannot be applied.
        assert_eq!(t.error_rows(), 2);
    }
}
