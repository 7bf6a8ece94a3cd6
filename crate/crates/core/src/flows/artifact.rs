//! On-disk run artifacts: series CSV, snapshots, JSON manifest.
//!
//! Series columns: `t,dt,L,E,W,TC,T,omega2,A,diam,lambda,gradnorm,min_y2,
//! max_y2,status,dissip`. The trailing `dissip` column carries the
//! dissipation integral of the flow's energy identity so the dissipation
//! residual can be checked from the series alone.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::run::{RunConfig, RunOutput, SeriesRow};
use super::{FlowKind, FlowStatus};
use crate::error::{Error, Result};
use crate::geom::write_snapshot;

pub const SERIES_HEADER: &str =
    "t,dt,L,E,W,TC,T,omega2,A,diam,lambda,gradnorm,min_y2,max_y2,status,dissip";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub t: f64,
    pub file: String,
}

/// Run manifest: config echo, stop reason, wall time, counters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub flow: FlowKind,
    pub init: String,
    pub n: usize,
    pub config: RunConfig,
    pub stop_reason: FlowStatus,
    pub t_final: f64,
    pub accepted_steps: u64,
    pub rejected_steps: u64,
    pub wall_seconds: f64,
    pub series_file: String,
    pub snapshots: Vec<SnapshotEntry>,
}

pub fn series_row_csv(row: &SeriesRow) -> String {
    format!(
        "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e}",
        row.t,
        row.dt,
        row.l,
        row.e,
        row.w,
        row.tc,
        row.turning,
        row.omega2,
        row.area,
        row.diam,
        row.lambda,
        row.gradnorm,
        row.min_y2,
        row.max_y2,
        row.status.as_str(),
        row.dissip
    )
}

/// Write manifest, series and snapshots of a finished run into `dir`.
pub fn write_run_artifact(
    dir: &Path,
    flow: FlowKind,
    init: &str,
    cfg: &RunConfig,
    out: &RunOutput,
) -> Result<Manifest> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let mut series = String::with_capacity(128 * out.series.len());
    series.push_str(SERIES_HEADER);
    series.push('\n');
    for row in &out.series {
        series.push_str(&series_row_csv(row));
        series.push('\n');
    }
    let series_path = dir.join("series.csv");
    fs::write(&series_path, series).map_err(|e| Error::io(&series_path, e))?;

    let mut snapshots = Vec::new();
    for (i, (t, curve)) in out.snapshots.iter().enumerate() {
        let name = format!("snapshot_{i:04}.csv");
        write_snapshot(curve, &dir.join(&name))?;
        snapshots.push(SnapshotEntry { t: *t, file: name });
    }

    let manifest = Manifest {
        flow,
        init: init.to_string(),
        n: out.state.curve.len(),
        config: cfg.clone(),
        stop_reason: out.state.status,
        t_final: out.state.t,
        accepted_steps: out.state.accepted_steps,
        rejected_steps: out.state.rejected_steps,
        wall_seconds: out.wall_seconds,
        series_file: "series.csv".to_string(),
        snapshots,
    };
    let manifest_path = dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(&manifest_path, json).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest> {
    let path = dir.join("manifest.json");
    let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        what: format!("manifest {}", path.display()),
        detail: e.to_string(),
    })
}

/// Read a series CSV back into rows.
pub fn read_series(path: &Path) -> Result<Vec<SeriesRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == SERIES_HEADER => {}
        other => {
            return Err(Error::Parse {
                what: format!("series {}", path.display()),
                detail: format!("bad header {other:?}"),
            })
        }
    }
    let mut rows = Vec::new();
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 16 {
            return Err(Error::Parse {
                what: format!("series {}", path.display()),
                detail: format!("line {}: expected 16 columns, got {}", ln + 2, cols.len()),
            });
        }
        let f = |i: usize| -> Result<f64> {
            cols[i].trim().parse().map_err(|_| Error::Parse {
                what: format!("series {}", path.display()),
                detail: format!("line {}: bad number {:?}", ln + 2, cols[i]),
            })
        };
        let status = FlowStatus::parse(cols[14].trim()).ok_or_else(|| Error::Parse {
            what: format!("series {}", path.display()),
            detail: format!("line {}: unknown status {:?}", ln + 2, cols[14]),
        })?;
        rows.push(SeriesRow {
            t: f(0)?,
            dt: f(1)?,
            l: f(2)?,
            e: f(3)?,
            w: f(4)?,
            tc: f(5)?,
            turning: cols[6].trim().parse().map_err(|_| Error::Parse {
                what: format!("series {}", path.display()),
                detail: format!("line {}: bad turning number {:?}", ln + 2, cols[6]),
            })?,
            omega2: f(7)?,
            area: f(8)?,
            diam: f(9)?,
            lambda: f(10)?,
            gradnorm: f(11)?,
            min_y2: f(12)?,
            max_y2: f(13)?,
            status,
            dissip: f(15)?,
        });
    }
    Ok(rows)
}

/// Path of the series file inside a run directory.
pub fn series_path(dir: &Path) -> PathBuf {
    dir.join("series.csv")
}
