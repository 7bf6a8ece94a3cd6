//! Curve snapshot files: CSV with header `x,y1,y2`, one row per node,
//! full double precision.

use std::fs;
use std::path::Path;

use super::{DiscreteCurve, HPoint};
use crate::error::{Error, Result};
use crate::num::Real;

/// Serialize a curve to its snapshot CSV representation.
pub fn snapshot_string<R: Real>(curve: &DiscreteCurve<R>) -> String {
    let mut out = String::with_capacity(64 * curve.len());
    out.push_str("x,y1,y2\n");
    for (i, p) in curve.nodes().iter().enumerate() {
        let x = curve.param(i);
        out.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", x, p.y1, p.y2));
    }
    out
}

/// Write a snapshot CSV (LF endings, 17 significant digits).
pub fn write_snapshot<R: Real>(curve: &DiscreteCurve<R>, path: &Path) -> Result<()> {
    fs::write(path, snapshot_string(curve)).map_err(|e| Error::io(path, e))
}

/// Read a snapshot CSV back into a curve.
pub fn read_snapshot<R: Real>(path: &Path) -> Result<DiscreteCurve<R>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "x,y1,y2" => {}
        other => {
            return Err(Error::Parse {
                what: format!("snapshot {}", path.display()),
                detail: format!("bad header {:?}", other),
            })
        }
    }
    let mut nodes = Vec::new();
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut cols = line.split(',');
        let mut field = |name: &str| -> Result<R> {
            let raw = cols.next().ok_or_else(|| Error::Parse {
                what: format!("snapshot {}", path.display()),
                detail: format!("line {}: missing column {name}", ln + 2),
            })?;
            let v: f64 = raw.trim().parse().map_err(|_| Error::Parse {
                what: format!("snapshot {}", path.display()),
                detail: format!("line {}: bad {name} value {raw:?}", ln + 2),
            })?;
            R::from_f64(v).ok_or_else(|| Error::Parse {
                what: format!("snapshot {}", path.display()),
                detail: format!("line {}: unrepresentable {name}", ln + 2),
            })
        };
        let _x = field("x")?;
        let y1 = field("y1")?;
        let y2 = field("y2")?;
        nodes.push(HPoint::new(y1, y2));
    }
    DiscreteCurve::new(nodes)
}
