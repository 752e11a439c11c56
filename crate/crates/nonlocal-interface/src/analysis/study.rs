//! Convergence and jump studies with CSV/JSON reporting.
//!
//! Every study produces a [`StudyReport`]: a row per refinement level holding
//! the varied parameter(s), the measured quantity, and the observed order
//! relative to the previous row. Reports can be written as CSV (fixed header
//! `param1,param2,quantity,order`, six significant digits, empty fields where
//! a value does not apply), as JSON (full precision, including a snapshot of
//! the configuration), or as an aligned text table.

use super::{jump_magnitude, l2_distance, l2_error, observed_order};
use crate::problem::InterfaceProblem;
use crate::Result;
use serde::Serialize;
use std::io::{self, Write};

/// One refinement level of a study.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StudyRow {
    /// The primary varied parameter (`delta1` or `h`).
    pub param1: f64,
    /// The secondary varied parameter (`delta2`), when the study varies a
    /// pair.
    pub param2: Option<f64>,
    /// The measured quantity of this level.
    pub quantity: f64,
    /// Observed order against the previous level; absent on the first row.
    pub order: Option<f64>,
}

/// Configuration snapshot embedded in JSON reports. Fields that a given
/// study does not pin down are omitted.
#[derive(Debug, Clone, Serialize)]
pub struct StudySnapshot {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    pub kappa1: f64,
    pub kappa2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_fine: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_left: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_right: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 3]>,
}

impl StudySnapshot {
    /// Snapshot of everything an [`InterfaceProblem`] pins down (horizons
    /// included; studies that vary them clear the fields).
    pub fn for_problem(problem: &InterfaceProblem) -> Self {
        StudySnapshot {
            kernel: Some(problem.family.to_string()),
            kappa1: problem.material.kappa1,
            kappa2: problem.material.kappa2,
            delta1: Some(problem.layout.delta1),
            delta2: Some(problem.layout.delta2),
            h: None,
            h_fine: None,
            f_left: Some(problem.source.left),
            f_right: Some(problem.source.right),
            domain: Some([problem.layout.a, problem.layout.x_interface, problem.layout.b]),
        }
    }
}

/// A finished study: metadata plus one row per level.
#[derive(Debug, Clone, Serialize)]
pub struct StudyReport {
    /// Study kind: `delta`, `h`, `jump-h`, `jump-delta`, `operator-1d`, or
    /// `operator-2d`.
    pub kind: String,
    /// Name of the measured quantity.
    pub quantity: String,
    /// Names of the varied parameters (one or two).
    pub param_names: Vec<String>,
    pub config: StudySnapshot,
    pub rows: Vec<StudyRow>,
}

fn csv_field(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.5e}"),
        None => String::new(),
    }
}

impl StudyReport {
    /// Write the fixed-layout CSV: header `param1,param2,quantity,order`,
    /// six significant digits, empty fields where a value is absent.
    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "param1,param2,quantity,order")?;
        for row in &self.rows {
            writeln!(
                w,
                "{},{},{},{}",
                csv_field(Some(row.param1)),
                csv_field(row.param2),
                csv_field(Some(row.quantity)),
                csv_field(row.order),
            )?;
        }
        Ok(())
    }

    /// Write the full-precision JSON document (configuration plus rows).
    pub fn write_json(&self, w: &mut impl Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *w, self)?;
        writeln!(w)
    }

    /// Write an aligned, human-readable table.
    pub fn print_table(&self, w: &mut impl Write) -> io::Result<()> {
        write!(w, "{:<14}", self.param_names[0])?;
        if self.param_names.len() > 1 {
            write!(w, "{:<14}", self.param_names[1])?;
        }
        let qw = self.quantity.len().max(15) + 2;
        writeln!(w, "{:<qw$}order", self.quantity)?;
        for row in &self.rows {
            write!(w, "{:<14}", format!("{:.5e}", row.param1))?;
            if self.param_names.len() > 1 {
                let p2 = row.param2.map_or(String::new(), |v| format!("{v:.5e}"));
                write!(w, "{:<14}", p2)?;
            }
            let order = row.order.map_or("--".to_string(), |v| format!("{v:.3}"));
            writeln!(w, "{:<qw$}{order}", format!("{:.5e}", row.quantity))?;
        }
        Ok(())
    }
}

/// Successively halved horizon pairs starting from `(delta1, delta2)`.
pub fn halving_horizons(delta1: f64, delta2: f64, levels: usize) -> Vec<(f64, f64)> {
    (0..levels)
        .map(|k| {
            let s = 2f64.powi(-(k as i32));
            (delta1 * s, delta2 * s)
        })
        .collect()
}

/// Successively halved mesh spacings starting from `h`.
pub fn halving_spacings(h: f64, levels: usize) -> Vec<f64> {
    (0..levels).map(|k| h * 2f64.powi(-(k as i32))).collect()
}

fn attach_orders(mut rows: Vec<StudyRow>) -> Vec<StudyRow> {
    for i in 1..rows.len() {
        rows[i].order = Some(observed_order(rows[i - 1].quantity, rows[i].quantity));
    }
    rows
}

/// Horizon convergence at fixed `h`: the L² distance between the nonlocal
/// solution and the closed-form local solution for each horizon pair.
pub fn delta_study(
    problem: &InterfaceProblem,
    h: f64,
    horizons: &[(f64, f64)],
) -> Result<StudyReport> {
    let local = problem.local_solution();
    let mut rows = Vec::with_capacity(horizons.len());
    for &(d1, d2) in horizons {
        let sol = problem.with_horizons(d1, d2)?.solve(h)?;
        let err = l2_error(&sol, |x, side| local.eval(x, side));
        rows.push(StudyRow {
            param1: d1,
            param2: Some(d2),
            quantity: err,
            order: None,
        });
    }
    let mut config = StudySnapshot::for_problem(problem);
    config.delta1 = None;
    config.delta2 = None;
    config.h = Some(h);
    Ok(StudyReport {
        kind: "delta".to_string(),
        quantity: "l2_error_vs_local".to_string(),
        param_names: vec!["delta1".to_string(), "delta2".to_string()],
        config,
        rows: attach_orders(rows),
    })
}

/// Mesh convergence at fixed horizons: the L² distance between each coarse
/// solution and one fine reference solution at `h_fine`.
pub fn h_study(problem: &InterfaceProblem, spacings: &[f64], h_fine: f64) -> Result<StudyReport> {
    let fine = problem.solve(h_fine)?;
    let mut rows = Vec::with_capacity(spacings.len());
    for &h in spacings {
        let sol = problem.solve(h)?;
        let err = l2_distance(&sol, &fine)?;
        rows.push(StudyRow {
            param1: h,
            param2: None,
            quantity: err,
            order: None,
        });
    }
    let mut config = StudySnapshot::for_problem(problem);
    config.h_fine = Some(h_fine);
    Ok(StudyReport {
        kind: "h".to_string(),
        quantity: "l2_distance_to_fine".to_string(),
        param_names: vec!["h".to_string()],
        config,
        rows: attach_orders(rows),
    })
}

/// Interface jump under mesh refinement at fixed horizons: the jump does not
/// vanish with `h`, it saturates at its model value.
pub fn jump_study_vs_h(problem: &InterfaceProblem, spacings: &[f64]) -> Result<StudyReport> {
    let mut rows = Vec::with_capacity(spacings.len());
    for &h in spacings {
        let sol = problem.solve(h)?;
        rows.push(StudyRow {
            param1: h,
            param2: None,
            quantity: jump_magnitude(&sol),
            order: None,
        });
    }
    let config = StudySnapshot::for_problem(problem);
    Ok(StudyReport {
        kind: "jump-h".to_string(),
        quantity: "interface_jump".to_string(),
        param_names: vec!["h".to_string()],
        config,
        rows: attach_orders(rows),
    })
}

/// Interface jump as the horizons shrink at fixed `h`: first-order decay.
pub fn jump_study_vs_delta(
    problem: &InterfaceProblem,
    h: f64,
    horizons: &[(f64, f64)],
) -> Result<StudyReport> {
    let mut rows = Vec::with_capacity(horizons.len());
    for &(d1, d2) in horizons {
        let sol = problem.with_horizons(d1, d2)?.solve(h)?;
        rows.push(StudyRow {
            param1: d1,
            param2: Some(d2),
            quantity: jump_magnitude(&sol),
            order: None,
        });
    }
    let mut config = StudySnapshot::for_problem(problem);
    config.delta1 = None;
    config.delta2 = None;
    config.h = Some(h);
    Ok(StudyReport {
        kind: "jump-delta".to_string(),
        quantity: "interface_jump".to_string(),
        param_names: vec!["delta1".to_string(), "delta2".to_string()],
        config,
        rows: attach_orders(rows),
    })
}
