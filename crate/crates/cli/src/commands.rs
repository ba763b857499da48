//! Table-producing runners behind each subcommand.

use pdsqueeze::analytic::{
    photon_distribution, photon_distributions, photon_moments, q_function, quadrature_moments, truncation_cutoff,
    wigner, PdState,
};
use pdsqueeze::dynamics::{corresponding_state, evolve, HamiltonianParams};
use pdsqueeze::fock::{
    coherent_vector, prepare_state, q_function_from_vector, vector_statistics, wigner_from_vector, FockVector,
};
use pdsqueeze::validation::{oracle_dim, run_validation, ValidationReport, CHECKS};
use pdsqueeze::C;
use rayon::prelude::*;
use serde_json::json;

use crate::output::{Cell, Table};
use crate::params::{Range, ScanVar, StateParams};
use crate::CliError;

/// Largest oracle dimension chosen automatically; larger states need `--dim`.
pub const MAX_DEFAULT_DIM: usize = 4096;

/// Q values below this are reported as an internal error.
pub const Q_NEGATIVITY_TOLERANCE: f64 = 1e-12;

/// Oracle dimension used when `--dim` is absent.
pub fn default_dim(s: &PdState<f64>) -> usize {
    oracle_dim(s).min(MAX_DEFAULT_DIM)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Quantity {
    Pnd,
    MeanN,
    G2,
    VarX,
    VarP,
    UncertaintyProduct,
    Q,
    Wigner,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Pnd => "pnd",
            Quantity::MeanN => "mean_n",
            Quantity::G2 => "g2",
            Quantity::VarX => "var_x",
            Quantity::VarP => "var_p",
            Quantity::UncertaintyProduct => "uncertainty_product",
            Quantity::Q => "q",
            Quantity::Wigner => "wigner",
        }
    }
}

/// Where a pointwise quantity is evaluated: the photon number for `pnd`,
/// `(Re α, Im α)` for `q` and `(x, p)` for `wigner`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Probe {
    pub n: usize,
    pub x: f64,
    pub y: f64,
}

fn analytic_value(q: Quantity, s: &PdState<f64>, at: Probe) -> Result<Option<f64>, CliError> {
    Ok(match q {
        Quantity::Pnd => Some(photon_distribution(s, at.n)),
        Quantity::MeanN => Some(photon_moments(s).mean_n),
        Quantity::G2 => photon_moments(s).g2.value(),
        Quantity::VarX => Some(quadrature_moments(s).var_x),
        Quantity::VarP => Some(quadrature_moments(s).var_p),
        Quantity::UncertaintyProduct => Some(quadrature_moments(s).uncertainty_product),
        Quantity::Q => Some(checked_q(q_function(s, C::new(at.x, at.y)))?),
        Quantity::Wigner => Some(wigner(s, at.x, at.y)?),
    })
}

fn oracle_value(q: Quantity, v: &FockVector<f64>, at: Probe) -> Result<Option<f64>, CliError> {
    Ok(match q {
        Quantity::Pnd => Some(if at.n < v.dim() { v.amplitude(at.n).norm_sqr() } else { 0.0 }),
        Quantity::MeanN => Some(vector_statistics(v).mean_n),
        Quantity::G2 => vector_statistics(v).g2,
        Quantity::VarX => Some(vector_statistics(v).var_x),
        Quantity::VarP => Some(vector_statistics(v).var_p),
        Quantity::UncertaintyProduct => {
            let st = vector_statistics(v);
            Some(st.var_x * st.var_p)
        }
        Quantity::Q => Some(q_function_from_vector(v, C::new(at.x, at.y))),
        Quantity::Wigner => Some(wigner_from_vector(v, at.x, at.y)?),
    })
}

fn checked_q(v: f64) -> Result<f64, CliError> {
    if v < -Q_NEGATIVITY_TOLERANCE {
        return Err(CliError::Numerical(format!("Q function evaluated to {v:e} < 0")));
    }
    Ok(v)
}

fn oracle_meta(t: &mut Table, dim: Option<usize>) {
    if let Some(d) = dim {
        t.meta("oracle_dim", json!(d));
    }
}

/// `P(n)` for `n = 0..=n_max`, with an oracle column when `oracle` is set.
/// `n_max` defaults to the truncation cutoff of the state.
pub fn run_pnd(p: &StateParams, n_max: Option<usize>, oracle: Option<Option<usize>>) -> Result<Table, CliError> {
    let s = p.state()?;
    let n_max = n_max.unwrap_or_else(|| truncation_cutoff(&s));
    let analytic = photon_distributions(&s, n_max);
    let mut columns = vec!["n".to_owned(), "P_analytic".to_owned()];
    let (dim, probs) = match oracle {
        Some(d) => {
            let dim = d.unwrap_or_else(|| default_dim(&s));
            columns.push("P_oracle".into());
            (Some(dim), Some(prepare_state(dim, &s)?.probabilities()))
        }
        None => (None, None),
    };
    let mut t = Table::new(columns);
    t.meta("quantity", json!("pnd")).meta("params", p.to_json());
    oracle_meta(&mut t, dim);
    for (n, pa) in analytic.into_iter().enumerate() {
        let mut row = vec![Cell::Num(n as f64), Cell::Num(pa)];
        if let Some(po) = &probs {
            row.push(po.get(n).copied().into());
        }
        t.rows.push(row);
    }
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub quantity: Quantity,
    pub base: StateParams,
    pub var: ScanVar,
    pub range: Range,
    pub at: Probe,
    /// `Some(None)` requests an oracle column at the default dimension.
    pub oracle: Option<Option<usize>>,
}

/// One row per scan point: `(scan value, analytic[, oracle])`.
pub fn run_scan(spec: &ScanSpec) -> Result<Table, CliError> {
    spec.base.state()?;
    let rows = spec
        .range
        .values()
        .into_par_iter()
        .map(|x| -> Result<(Vec<Cell>, Option<usize>), CliError> {
            let p = spec.var.apply(&spec.base, x);
            let s = p.state()?;
            let mut row = vec![Cell::Num(x), analytic_value(spec.quantity, &s, spec.at)?.into()];
            let mut dim = None;
            if let Some(d) = spec.oracle {
                let d = d.unwrap_or_else(|| default_dim(&s));
                let v = prepare_state(d, &s)?;
                row.push(oracle_value(spec.quantity, &v, spec.at)?.into());
                dim = Some(d);
            }
            Ok((row, dim))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns = vec![spec.var.name().to_owned(), spec.quantity.name().to_owned()];
    if spec.oracle.is_some() {
        columns.push(format!("{}_oracle", spec.quantity.name()));
    }
    let mut t = Table::new(columns);
    t.meta("quantity", json!(spec.quantity.name()))
        .meta("params", spec.base.to_json())
        .meta("scan", json!({ "variable": spec.var.name(), "range": spec.range.to_json() }));
    match spec.quantity {
        Quantity::Pnd => {
            t.meta("n", json!(spec.at.n));
        }
        Quantity::Q => {
            t.meta("alpha", json!([spec.at.x, spec.at.y]));
        }
        Quantity::Wigner => {
            t.meta("x_p", json!([spec.at.x, spec.at.y]));
        }
        _ => {}
    }
    let dims: Vec<usize> = rows.iter().filter_map(|r| r.1).collect();
    if let (Some(lo), Some(hi)) = (dims.iter().min(), dims.iter().max()) {
        if lo == hi {
            t.meta("oracle_dim", json!(lo));
        } else {
            t.meta("oracle_dim", json!({ "min": lo, "max": hi }));
        }
    }
    t.rows = rows.into_iter().map(|r| r.0).collect();
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GridQuantity {
    Q,
    Wigner,
}

impl GridQuantity {
    fn axes(self) -> [&'static str; 2] {
        match self {
            GridQuantity::Q => ["re_alpha", "im_alpha"],
            GridQuantity::Wigner => ["x", "p"],
        }
    }
}

/// Values on an `nx × ny` grid, stored row-major with `x` varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    pub quantity: GridQuantity,
    pub params: StateParams,
    pub x: Range,
    pub y: Range,
    pub values: Vec<f64>,
    pub oracle: Option<Vec<f64>>,
    pub oracle_dim: Option<usize>,
}

impl Grid2D {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.x.n + i]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Interior grid points larger than all eight neighbours and above
    /// `fraction` of the global maximum.
    pub fn local_maxima(&self, fraction: f64) -> Vec<(usize, usize)> {
        let floor = fraction * self.max();
        let mut out = Vec::new();
        for j in 1..self.y.n - 1 {
            for i in 1..self.x.n - 1 {
                let v = self.at(i, j);
                if v <= floor {
                    continue;
                }
                let top = (-1i64..=1).all(|dj| {
                    (-1i64..=1).all(|di| {
                        (di == 0 && dj == 0)
                            || v > self.at((i as i64 + di) as usize, (j as i64 + dj) as usize)
                    })
                });
                if top {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn into_table(self) -> Table {
        let [xn, yn] = self.quantity.axes();
        let mut columns = vec![xn.to_owned(), yn.to_owned(), "value".to_owned()];
        if self.oracle.is_some() {
            columns.push("oracle".into());
        }
        let mut t = Table::new(columns);
        let name = match self.quantity {
            GridQuantity::Q => "q",
            GridQuantity::Wigner => "wigner",
        };
        t.meta("quantity", json!(name))
            .meta("params", self.params.to_json())
            .meta("layout", json!("row-major, x fastest"))
            .meta("grid", json!({ "x": self.x.to_json(), "y": self.y.to_json() }));
        oracle_meta(&mut t, self.oracle_dim);
        let xs = self.x.values();
        let ys = self.y.values();
        for (j, y) in ys.iter().enumerate() {
            for (i, x) in xs.iter().enumerate() {
                let k = j * self.x.n + i;
                let mut row = vec![Cell::Num(*x), Cell::Num(*y), Cell::Num(self.values[k])];
                if let Some(o) = &self.oracle {
                    row.push(Cell::Num(o[k]));
                }
                t.rows.push(row);
            }
        }
        t
    }
}

pub fn run_grid(
    quantity: GridQuantity,
    p: &StateParams,
    x: Range,
    y: Range,
    oracle: Option<Option<usize>>,
) -> Result<Grid2D, CliError> {
    let s = p.state()?;
    let points: Vec<(f64, f64)> = y
        .values()
        .into_iter()
        .flat_map(|yv| x.values().into_iter().map(move |xv| (xv, yv)))
        .collect();
    let values = points
        .par_iter()
        .map(|&(a, b)| match quantity {
            GridQuantity::Q => checked_q(q_function(&s, C::new(a, b))),
            GridQuantity::Wigner => Ok(wigner(&s, a, b)?),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (oracle, oracle_dim) = match oracle {
        Some(d) => {
            let dim = d.unwrap_or_else(|| default_dim(&s));
            let v = prepare_state(dim, &s)?;
            let vals = points
                .par_iter()
                .map(|&(a, b)| match quantity {
                    GridQuantity::Q => Ok(q_function_from_vector(&v, C::new(a, b))),
                    GridQuantity::Wigner => wigner_from_vector(&v, a, b).map_err(CliError::from),
                })
                .collect::<Result<Vec<_>, _>>()?;
            (Some(vals), Some(dim))
        }
        None => (None, None),
    };
    Ok(Grid2D {
        quantity,
        params: *p,
        x,
        y,
        values,
        oracle,
        oracle_dim,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveSpec {
    pub omega: f64,
    pub g: [C<f64>; 2],
    pub beta: C<f64>,
    pub t: Range,
    pub dim: usize,
}

/// Evolves `|β⟩` to each sampled time. The fidelity column against the
/// closed-form state is present only for `ω = 0`.
pub fn run_evolve(spec: &EvolveSpec) -> Result<Table, CliError> {
    let h = HamiltonianParams::new(spec.omega, spec.g[0], spec.g[1])?;
    let start = coherent_vector(spec.dim, spec.beta)?;
    let with_fidelity = spec.omega == 0.0;
    let rows = spec
        .t
        .values()
        .into_par_iter()
        .map(|t| -> Result<Vec<Cell>, CliError> {
            let v = evolve(&h, t, &start)?;
            let st = vector_statistics(&v);
            let mut row = vec![Cell::Num(t)];
            if with_fidelity {
                let target = prepare_state(spec.dim, &corresponding_state(&h, t, spec.beta)?)?;
                row.push(Cell::Num(v.fidelity(&target)?));
            }
            row.extend([Cell::Num(st.mean_n), st.g2.into(), Cell::Num(st.var_x)]);
            Ok(row)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut columns = vec!["t".to_owned()];
    if with_fidelity {
        columns.push("fidelity".into());
    }
    columns.extend(["mean_n", "g2", "var_x"].map(String::from));
    let mut t = Table::new(columns);
    t.meta("quantity", json!("evolve"))
        .meta(
            "hamiltonian",
            json!({
                "omega": spec.omega,
                "g0": [spec.g[0].re, spec.g[0].im],
                "g1": [spec.g[1].re, spec.g[1].im],
            }),
        )
        .meta("beta", json!([spec.beta.re, spec.beta.im]))
        .meta("t", spec.t.to_json())
        .meta("oracle_dim", json!(spec.dim));
    t.rows = rows;
    Ok(t)
}

/// Runs the seeded suite and tabulates one row per check.
pub fn run_validate(seed: u64, n_cases: usize) -> Result<(Table, ValidationReport), CliError> {
    if n_cases == 0 {
        return Err(CliError::Usage("--cases must be at least 1".into()));
    }
    let report = run_validation(seed, n_cases)?;
    let mut t = Table::new(
        ["check", "measure", "tolerance", "max_deviation", "worst_case", "failures", "status"]
            .map(String::from)
            .to_vec(),
    );
    t.meta("quantity", json!("validate"))
        .meta("seed", json!(seed))
        .meta("cases", json!(n_cases));
    for c in &report.checks {
        t.rows.push(vec![
            c.spec.name.into(),
            format!("{:?}", c.spec.measure).to_lowercase().as_str().into(),
            Cell::Num(c.spec.tolerance),
            Cell::Num(c.max_deviation),
            Cell::Num(c.worst_case as f64),
            Cell::Num(c.failures as f64),
            if c.passed() { "PASS" } else { "FAIL" }.into(),
        ]);
    }
    Ok((t, report))
}

/// Human-readable lines naming every failing check and the states that
/// failed it.
pub fn failure_lines(report: &ValidationReport) -> Vec<String> {
    let mut out = Vec::new();
    for (k, spec) in CHECKS.iter().enumerate() {
        for (i, c) in report.cases.iter().enumerate() {
            let d = c.deviations[k];
            if d <= spec.tolerance {
                continue;
            }
            let s = &c.state;
            let [s0, s1] = s.sectors();
            out.push(format!(
                "{} failed on case {i}: deviation {d:e} > {:e}; beta = {} {:+}i, \
                 r0 = {}, theta0 = {}, lambda0 = {}, r1 = {}, theta1 = {}, lambda1 = {}, dim = {}",
                spec.name,
                spec.tolerance,
                s.beta().re,
                s.beta().im,
                s0.r(),
                s0.theta(),
                s0.lambda(),
                s1.r(),
                s1.theta(),
                s1.lambda(),
                c.dim
            ));
        }
    }
    out
}
