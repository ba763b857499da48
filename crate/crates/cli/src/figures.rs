//! Presets reproducing the twelve figures.

use std::f64::consts::{FRAC_PI_2, PI};

use serde_json::{json, Value};

use crate::commands::{run_grid, run_pnd, run_scan, Grid2D, GridQuantity, Probe, Quantity, ScanSpec};
use crate::output::Table;
use crate::params::{Range, ScanVar, StateParams};
use crate::CliError;

/// Overrides accepted by every preset.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FigureOptions {
    pub oracle: Option<Option<usize>>,
    /// Scan range for curve figures, horizontal axis for grid figures.
    pub x: Option<Range>,
    pub y: Option<Range>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FigureOutput {
    Table(Table),
    /// Figure number and grid.
    Grid(u8, Grid2D),
}

impl FigureOutput {
    pub fn into_table(self) -> Table {
        match self {
            FigureOutput::Table(t) => t,
            FigureOutput::Grid(n, g) => {
                let mut t = g.into_table();
                t.meta("figure", json!(n));
                t
            }
        }
    }

    pub fn table(&self) -> Option<&Table> {
        match self {
            FigureOutput::Table(t) => Some(t),
            FigureOutput::Grid(..) => None,
        }
    }

    pub fn grid(&self) -> Option<&Grid2D> {
        match self {
            FigureOutput::Grid(_, g) => Some(g),
            FigureOutput::Table(_) => None,
        }
    }
}

/// One curve of a `|β|` scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub params: StateParams,
}

fn rng(min: f64, max: f64, n: usize) -> Range {
    Range::new(min, max, n).expect("preset ranges are valid")
}

/// `|β|` axis shared by the curve figures.
pub const BETA_AXIS: (f64, f64, usize) = (0.001, 3.0, 300);

pub const FIG3_R0: [f64; 6] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];
pub const FIG4_PSI0: [f64; 4] = [0.0, 0.1, 0.2, 0.4];
pub const FIG5_R0: [f64; 3] = [0.1, 0.3, 0.5];
pub const FIG6_R1: [f64; 3] = [0.25, 0.5, 1.0];
pub const FIG7_R0: [f64; 3] = [0.25, 0.5, 1.0];

/// Quantity and curves of figures 3 to 7.
pub fn curve_preset(figure: u8) -> Option<(Quantity, Vec<Curve>)> {
    let psi = |label: String, r0: f64, psi0: f64| Curve {
        label,
        params: StateParams::with_psi(0.0, r0, psi0, 0.0, 0.0),
    };
    let plain = |label: String, r: [f64; 2]| Curve {
        label,
        params: StateParams::with_angles(0.0, r, [0.0; 2]),
    };
    Some(match figure {
        3 => (Quantity::G2, FIG3_R0.iter().map(|&r| psi(format!("r0={r}"), r, 0.0)).collect()),
        4 => (
            Quantity::G2,
            FIG4_PSI0.iter().map(|&p| psi(format!("psi0={p}"), 0.05, p)).collect(),
        ),
        5 => {
            let mut c: Vec<Curve> = FIG5_R0.iter().map(|&r| psi(format!("pd_r0={r}"), r, 0.0)).collect();
            c.extend(FIG5_R0.iter().map(|&r| Curve {
                label: format!("ordinary_r={r}"),
                params: StateParams::with_psi(0.0, r, 0.0, r, 0.0),
            }));
            (Quantity::G2, c)
        }
        6 => (Quantity::VarX, FIG6_R1.iter().map(|&r| plain(format!("r1={r}"), [0.0, r])).collect()),
        7 => (
            Quantity::UncertaintyProduct,
            FIG7_R0.iter().map(|&r| plain(format!("r0={r}"), [r, 0.0])).collect(),
        ),
        _ => return None,
    })
}

/// State and default window of figures 8 to 12.
pub fn grid_preset(figure: u8) -> Option<(GridQuantity, StateParams, Range, Range)> {
    let st = |b: f64, r: [f64; 2], th: [f64; 2]| StateParams::with_angles(b, r, th);
    Some(match figure {
        8 => (
            GridQuantity::Q,
            st(1.0, [4.0, 0.0], [0.0, 0.0]),
            // the squeezed even component stretches far along Im α
            rng(-4.0, 4.0, 81),
            rng(-40.0, 40.0, 401),
        ),
        9 => (
            GridQuantity::Q,
            st(3.0, [3.0, 3.0], [0.0, PI]),
            rng(-15.0, 15.0, 121),
            rng(-15.0, 15.0, 121),
        ),
        10 => (
            GridQuantity::Q,
            st(5.0, [3.0, 3.0], [0.0, PI]),
            rng(-15.0, 15.0, 121),
            rng(-15.0, 15.0, 121),
        ),
        // second sector unsqueezed
        11 => (
            GridQuantity::Wigner,
            st(3.0, [3.0, 0.0], [PI, 0.0]),
            rng(-10.0, 10.0, 201),
            rng(-5.0, 5.0, 101),
        ),
        12 => (
            GridQuantity::Wigner,
            st(8.0, [3.0, 3.0], [0.0, PI]),
            rng(-5.0, 5.0, 201),
            rng(-5.0, 5.0, 201),
        ),
        _ => return None,
    })
}

/// Parameters of figures 1 and 2.
pub fn pnd_preset(figure: u8) -> Option<StateParams> {
    match figure {
        1 => Some(StateParams::with_psi(4.0, 0.5, FRAC_PI_2, 0.1, FRAC_PI_2)),
        2 => Some(StateParams::with_psi(4.0, 0.5, 0.0, 0.1, FRAC_PI_2)),
        _ => None,
    }
}

fn curves_table(figure: u8, quantity: Quantity, curves: &[Curve], opts: &FigureOptions) -> Result<Table, CliError> {
    let range = opts.x.unwrap_or_else(|| rng(BETA_AXIS.0, BETA_AXIS.1, BETA_AXIS.2));
    let mut out: Option<Table> = None;
    let mut meta_curves = Vec::new();
    let mut dims = Vec::new();
    for c in curves {
        let mut t = run_scan(&ScanSpec {
            quantity,
            base: c.params,
            var: ScanVar::BetaAbs,
            range,
            at: Probe::default(),
            oracle: opts.oracle,
        })?;
        t.columns[1] = c.label.clone();
        if t.columns.len() > 2 {
            t.columns[2] = format!("{}_oracle", c.label);
        }
        if let Some(d) = t.metadata.get("oracle_dim") {
            dims.push(json!({ "curve": c.label, "dim": d }));
        }
        meta_curves.push(json!({ "label": c.label, "params": c.params.to_json() }));
        match &mut out {
            None => out = Some(t),
            Some(acc) => acc.join(t, 1),
        }
    }
    let mut t = out.expect("every preset has at least one curve");
    t.metadata.clear();
    t.meta("figure", json!(figure))
        .meta("quantity", json!(quantity.name()))
        .meta("scan", json!({ "variable": "beta_abs", "range": range.to_json() }))
        .meta("curves", Value::Array(meta_curves));
    if !dims.is_empty() {
        t.meta("oracle_dim", Value::Array(dims));
    }
    Ok(t)
}

pub fn run_figure(figure: u8, opts: &FigureOptions) -> Result<FigureOutput, CliError> {
    if let Some(p) = pnd_preset(figure) {
        let mut t = run_pnd(&p, None, opts.oracle)?;
        t.meta("figure", json!(figure));
        return Ok(FigureOutput::Table(t));
    }
    if let Some((q, curves)) = curve_preset(figure) {
        return Ok(FigureOutput::Table(curves_table(figure, q, &curves, opts)?));
    }
    if let Some((q, p, x, y)) = grid_preset(figure) {
        let g = run_grid(q, &p, opts.x.unwrap_or(x), opts.y.unwrap_or(y), opts.oracle)?;
        return Ok(FigureOutput::Grid(figure, g));
    }
    Err(CliError::Usage(format!("figure must be in 1..=12, got {figure}")))
}
