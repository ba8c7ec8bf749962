use std::io::{self, Write};
use std::path::Path;

use anyhow::Context;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use randers_core::reproduction::{connection_blocks, table1_rows};
use randers_core::verify::residual_suite;
use randers_core::{flag_curvature, sign_search, tolerance, Error, FlagReport, Vector};
use serde_json::{json, Value};

use crate::config::Model;

/// Failure modes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// A computed verdict or tolerance check failed (exit 1).
    Verdict(String),
    /// Bad arguments or config (exit 2).
    Usage(String),
    /// Reading or writing a file failed (exit 3).
    Io(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verdict(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Verdict(m) | CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e:#}"),
        }
    }
}

type CmdResult = Result<(), CliError>;

fn preset_params(model: &Model, command: &str) -> Result<(f64, f64, f64), CliError> {
    model
        .preset
        .ok_or_else(|| CliError::Usage(format!("{command} requires the heisenberg5 preset")))
}

fn vec_json(v: &Vector) -> Value {
    json!(v.as_slice())
}

fn flag_json(r: &FlagReport) -> Value {
    json!({
        "w": vec_json(&r.w),
        "x": vec_json(&r.x),
        "k": r.k,
        "denominator": r.denominator,
        "degenerate": r.degenerate,
    })
}

/// Writes `text` to `out`, or to stdout when `out` is `None`.
fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    let result = match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    };
    result.map_err(CliError::Io)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub const TABLE1_HEADER: [&str; 6] = [
    "case",
    "flag_pole",
    "transverse",
    "k_computed",
    "k_closed_form",
    "abs_err",
];

pub fn table1(model: &Model, out: Option<&Path>, seed: u64) -> CmdResult {
    let (lambda, mu, xi) = preset_params(model, "table1")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = table1_rows(lambda, mu, xi, &mut rng).map_err(|e| CliError::Usage(e.to_string()))?;

    let mut writer = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| CliError::Io(e.into());
    writer.write_record(TABLE1_HEADER).map_err(io_err)?;
    for r in &rows {
        writer
            .write_record([
                r.flag.id().to_string(),
                r.flag.pole_label().to_string(),
                r.flag.transverse_label().to_string(),
                r.computed.to_string(),
                r.closed_form.to_string(),
                format!("{:e}", r.abs_err()),
            ])
            .map_err(io_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Io(anyhow::anyhow!("{e}")))?;
    emit(out, &String::from_utf8(bytes).expect("CSV of ASCII fields"))?;

    let worst = rows.iter().map(|r| r.abs_err()).fold(0.0, f64::max);
    if worst > tolerance::FLAG_CLOSED_FORM {
        return Err(CliError::Verdict(format!(
            "table1: max abs_err {worst:e} exceeds {:e}",
            tolerance::FLAG_CLOSED_FORM
        )));
    }
    Ok(())
}

pub fn connection_tables(model: &Model, out: Option<&Path>, seed: u64) -> CmdResult {
    let (lambda, mu, xi) = preset_params(model, "connection-tables")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks =
        connection_blocks(lambda, mu, xi, &mut rng).map_err(|e| CliError::Usage(e.to_string()))?;
    let worst = blocks.iter().map(|b| b.max_defect()).fold(0.0, f64::max);
    let doc = json!({
        "lambda": lambda,
        "mu": mu,
        "xi": xi,
        "seed": seed,
        "tolerance": tolerance::TABLE_CELL,
        "max_defect": worst,
        "blocks": blocks.iter().map(|b| json!({
            "name": b.name,
            "pole": vec_json(&b.pole),
            "cells": b.cells.iter().map(|c| json!({
                "row": c.row,
                "column": c.column,
                "computed": vec_json(&c.computed),
                "closed_form": vec_json(&c.closed_form),
                "defect": c.defect(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    emit(out, &pretty(&doc))?;
    if worst > tolerance::TABLE_CELL {
        return Err(CliError::Verdict(format!(
            "connection-tables: max defect {worst:e} exceeds {:e}",
            tolerance::TABLE_CELL
        )));
    }
    Ok(())
}

pub fn flag(model: &Model, w: &[f64], x: &[f64]) -> CmdResult {
    let (w, x) = (Vector::from_column_slice(w), Vector::from_column_slice(x));
    let report = flag_curvature(&model.structure, &w, &x).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(None, &pretty(&flag_json(&report)))?;
    if report.degenerate {
        return Err(CliError::Verdict("flag is degenerate: x is parallel to w".into()));
    }
    Ok(())
}

pub fn search(model: &Model, seed: u64, max_samples: usize) -> CmdResult {
    match sign_search(&model.structure, seed, max_samples) {
        Ok(cert) => emit(
            None,
            &pretty(&json!({
                "seed": seed,
                "samples_tried": cert.samples_tried,
                "positive_witness": flag_json(&cert.positive_witness),
                "negative_witness": flag_json(&cert.negative_witness),
            })),
        ),
        Err(e @ Error::SearchExhausted { .. }) => Err(CliError::Verdict(e.to_string())),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

pub fn verify(model: &Model, seed: u64, samples: usize) -> CmdResult {
    let checks =
        residual_suite(&model.structure, seed, samples).map_err(|e| CliError::Usage(e.to_string()))?;
    let failing: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
    let doc = json!({
        "seed": seed,
        "samples": samples,
        "passed": failing.is_empty(),
        "checks": checks.iter().map(|c| json!({
            "name": c.name,
            "defect": c.defect,
            "tolerance": c.tolerance,
            "passed": c.passed(),
        })).collect::<Vec<_>>(),
    });
    emit(None, &pretty(&doc))?;
    if !failing.is_empty() {
        return Err(CliError::Verdict(format!("verify: failing checks: {}", failing.join(", "))));
    }
    Ok(())
}

pub fn read_config(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))
        .map_err(CliError::Io)
}
