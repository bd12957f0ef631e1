//! Instance and tour files.
//!
//! An instance file is one JSON document:
//!
//! ```json
//! {"version":1,"metric":{"type":"lp","p":2},"points":[[0,0],[3,4],[1,1]]}
//! {"version":1,"metric":{"type":"lp","p":"inf"},"points":[...]}
//! {"version":1,"metric":{"type":"hamming"},"points":[[0,1,1],...]}
//! {"version":1,"metric":{"type":"explicit"},"matrix":[[0,1],[1,0]]}
//! ```
//!
//! Reals are written in shortest round-trip form, so write-then-read is exact.
//! Tours are plain 0-based index arrays.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScatterError};
use crate::instance::{Instance, LpNorm, Metric, Tour};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum MetricSpec {
    Lp { p: Exponent },
    Hamming,
    Explicit,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Exponent {
    Finite(f64),
    Named(String),
}

#[derive(Serialize)]
#[serde(untagged)]
enum PointsOut {
    Real(Vec<Vec<f64>>),
    Bits(Vec<Vec<u8>>),
}

#[derive(Serialize)]
struct InstanceOut {
    version: u32,
    metric: MetricSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<PointsOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceIn {
    version: u32,
    metric: MetricSpec,
    points: Option<Vec<Vec<f64>>>,
    matrix: Option<Vec<Vec<f64>>>,
}

/// Serializes an instance to its JSON document (with trailing newline).
pub fn instance_to_json(instance: &Instance) -> String {
    let n = instance.n();
    let (metric, points, matrix) = match instance.metric() {
        Metric::Lp(norm) => {
            let p = match norm {
                LpNorm::P(p) => Exponent::Finite(p),
                LpNorm::Infinity => Exponent::Named("inf".into()),
            };
            let pts = (0..n).map(|i| instance.coords(i).unwrap().to_vec()).collect();
            (MetricSpec::Lp { p }, Some(PointsOut::Real(pts)), None)
        }
        Metric::Hamming => {
            let pts = (0..n).map(|i| instance.bits(i).unwrap()).collect();
            (MetricSpec::Hamming, Some(PointsOut::Bits(pts)), None)
        }
        Metric::Explicit => {
            let rows = (0..n)
                .map(|i| instance.matrix_row(i).unwrap().to_vec())
                .collect();
            (MetricSpec::Explicit, None, Some(rows))
        }
    };
    let doc = InstanceOut {
        version: FORMAT_VERSION,
        metric,
        points,
        matrix,
    };
    let mut s = serde_json::to_string(&doc).expect("instance documents always serialize");
    s.push('\n');
    s
}

/// Parses an instance document. Error messages carry the JSON line/column
/// or the offending field path.
pub fn instance_from_json(text: &str) -> std::result::Result<Instance, String> {
    let doc: InstanceIn = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if doc.version != FORMAT_VERSION {
        return Err(format!(
            "version: expected {FORMAT_VERSION}, found {}",
            doc.version
        ));
    }
    let built = match doc.metric {
        MetricSpec::Lp { p } => {
            let norm = match p {
                Exponent::Finite(p) => LpNorm::new(p),
                Exponent::Named(s) if s == "inf" => Ok(LpNorm::Infinity),
                Exponent::Named(s) => return Err(format!("metric.p: expected a number or \"inf\", found \"{s}\"")),
            }
            .map_err(|e| format!("metric.p: {e}"))?;
            let points = doc.points.ok_or("points: missing for lp metric")?;
            if doc.matrix.is_some() {
                return Err("matrix: not allowed for lp metric".into());
            }
            Instance::lp(norm, points)
        }
        MetricSpec::Hamming => {
            let points = doc.points.ok_or("points: missing for hamming metric")?;
            if doc.matrix.is_some() {
                return Err("matrix: not allowed for hamming metric".into());
            }
            let mut bits = Vec::with_capacity(points.len());
            for (i, row) in points.iter().enumerate() {
                let mut out = Vec::with_capacity(row.len());
                for (k, &v) in row.iter().enumerate() {
                    if v == 0.0 {
                        out.push(0);
                    } else if v == 1.0 {
                        out.push(1);
                    } else {
                        return Err(format!(
                            "points[{i}][{k}]: hamming coordinate must be 0 or 1, found {v}"
                        ));
                    }
                }
                bits.push(out);
            }
            Instance::hamming(&bits)
        }
        MetricSpec::Explicit => {
            let matrix = doc.matrix.ok_or("matrix: missing for explicit metric")?;
            if doc.points.is_some() {
                return Err("points: not allowed for explicit metric".into());
            }
            Instance::explicit(matrix)
        }
    };
    built.map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReadOptions {
    /// Verify the triangle inequality on every triple after loading.
    pub strict_metric: bool,
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    read_instance_with(path, ReadOptions::default())
}

pub fn read_instance_with(path: impl AsRef<Path>, options: ReadOptions) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScatterError::Io {
        path: path.to_owned(),
        source,
    })?;
    let instance = instance_from_json(&text).map_err(|message| ScatterError::Parse {
        path: path.to_owned(),
        message,
    })?;
    if options.strict_metric {
        instance
            .check_triangle_inequality()
            .map_err(|e| ScatterError::Parse {
                path: path.to_owned(),
                message: e.to_string(),
            })?;
    }
    Ok(instance)
}

pub fn write_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &instance_to_json(instance))
}

pub fn write_tour(tour: &Tour, path: impl AsRef<Path>) -> Result<()> {
    let mut s = serde_json::to_string(tour).expect("tours always serialize");
    s.push('\n');
    write_text(path.as_ref(), &s)
}

pub fn read_tour(path: impl AsRef<Path>) -> Result<Tour> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScatterError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| ScatterError::Parse {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| ScatterError::Io {
        path: path.to_owned(),
        source,
    })
}
