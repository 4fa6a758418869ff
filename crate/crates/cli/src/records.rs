//! JSON parameter records for the cap, ball and spheroid conversions.
//!
//! A record file holds either a single object or an array of objects; the
//! output keeps the same shape.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use invsphere_core::{AxisAlignedSpheroid, Ball, Cap};

use crate::error::{CliError, Result};
use crate::io::write_atomic;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapRecord {
    pub p: Vec<f64>,
    pub b: f64,
    pub s: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallRecord {
    pub c: Vec<f64>,
    pub r: f64,
    pub s: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpheroidRecord {
    pub c: Vec<f64>,
    /// Unit direction of the short semi-axis.
    pub a1: Vec<f64>,
    /// Short semi-axis.
    pub r1: f64,
    /// Semi-axis shared by every direction orthogonal to `a1`.
    pub r2: f64,
    pub s: f64,
}

impl CapRecord {
    pub fn to_cap(&self) -> invsphere_core::Result<Cap> {
        Cap::new(self.p.clone(), self.b).map(|c| c.with_closed(self.closed))
    }

    pub fn from_cap(cap: &Cap, s: f64) -> Self {
        Self {
            p: cap.p().to_vec(),
            b: cap.b(),
            s,
            closed: cap.is_closed(),
        }
    }
}

impl BallRecord {
    pub fn to_ball(&self) -> invsphere_core::Result<Ball> {
        Ball::new(self.c.clone(), self.r).map(|b| b.with_closed(self.closed))
    }

    pub fn from_ball(ball: &Ball, s: f64) -> Self {
        Self {
            c: ball.c().to_vec(),
            r: ball.r(),
            s,
            closed: ball.is_closed(),
        }
    }
}

impl SpheroidRecord {
    pub fn from_spheroid(sph: &AxisAlignedSpheroid, s: f64) -> Self {
        Self {
            c: sph.center.clone(),
            a1: sph.axis.clone(),
            r1: sph.r_short,
            r2: sph.r_long,
            s,
        }
    }
}

/// Records read from a file, remembering whether it held a bare object.
#[derive(Debug, Clone, PartialEq)]
pub struct Records<T> {
    pub items: Vec<T>,
    pub single: bool,
}

pub fn parse_records<T: DeserializeOwned>(text: &str) -> std::result::Result<Records<T>, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    match value {
        serde_json::Value::Array(items) => {
            let items = items
                .into_iter()
                .enumerate()
                .map(|(i, v)| serde_json::from_value(v).map_err(|e| format!("record {i}: {e}")))
                .collect::<std::result::Result<Vec<T>, String>>()?;
            if items.is_empty() {
                return Err("no records".into());
            }
            Ok(Records { items, single: false })
        }
        other => {
            let item = serde_json::from_value(other).map_err(|e| format!("record 0: {e}"))?;
            Ok(Records {
                items: vec![item],
                single: true,
            })
        }
    }
}

pub fn read_records<T: DeserializeOwned>(path: &Path) -> Result<Records<T>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_records(&text).map_err(|m| CliError::parse(path, m))
}

pub fn write_records<T: Serialize>(path: &Path, items: &[T], single: bool) -> Result<()> {
    let text = if single {
        serde_json::to_string_pretty(&items[0])
    } else {
        serde_json::to_string_pretty(items)
    }
    .map_err(|e| CliError::Precondition(e.to_string()))?;
    write_atomic(path, format!("{text}\n").as_bytes())
}
