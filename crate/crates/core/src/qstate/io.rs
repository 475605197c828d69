//! JSON state files.
//!
//! ```json
//! { "layout": [{"label": "A", "dim": 2, "party": "alice"}, ...],
//!   "kind": "pure" | "density",
//!   "data": [[re, im], ...]            // pure: Π dims pairs
//!        | [[[re, im], ...], ...] }     // density: rows of pairs
//! ```

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};
use crate::scalar::{c, Real};

use super::density::DensityOperator;
use super::layout::{Party, Subsystem, SystemLayout};
use super::pure::PureState;

/// Either kind of state a file can hold.
#[derive(Clone, Debug)]
pub enum StateFile<T: Real> {
    Pure(PureState<T>),
    Density(DensityOperator<T>),
}

impl<T: Real> StateFile<T> {
    pub fn layout(&self) -> &SystemLayout {
        match self {
            StateFile::Pure(p) => p.layout(),
            StateFile::Density(d) => d.layout(),
        }
    }

    pub fn to_density(&self) -> DensityOperator<T> {
        match self {
            StateFile::Pure(p) => p.density(),
            StateFile::Density(d) => d.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let layout: Vec<Value> = self
            .layout()
            .subsystems()
            .iter()
            .map(|s| json!({"label": s.label, "dim": s.dim, "party": s.party}))
            .collect();
        let pair = |z: &crate::scalar::C<T>| json!([z.re.as_f64(), z.im.as_f64()]);
        match self {
            StateFile::Pure(p) => json!({
                "layout": layout,
                "kind": "pure",
                "data": p.amplitudes().iter().map(pair).collect::<Vec<_>>(),
            }),
            StateFile::Density(d) => {
                let m = d.matrix();
                let rows: Vec<Value> = (0..m.nrows())
                    .map(|i| Value::Array((0..m.ncols()).map(|j| pair(&m[(i, j)])).collect()))
                    .collect();
                json!({"layout": layout, "kind": "density", "data": rows})
            }
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
            field: format!("<document> (line {}, column {})", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_json(&value)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| parse_err("<document>", "expected an object"))?;
        let layout = parse_layout(obj.get("layout").ok_or_else(|| parse_err("layout", "missing"))?)?;
        let kind = obj
            .get("kind")
            .ok_or_else(|| parse_err("kind", "missing"))?
            .as_str()
            .ok_or_else(|| parse_err("kind", "expected a string"))?;
        let data = obj.get("data").ok_or_else(|| parse_err("data", "missing"))?;
        let d = layout.total_dim();
        match kind {
            "pure" => {
                let entries = data.as_array().ok_or_else(|| parse_err("data", "expected a list of [re, im] pairs"))?;
                if entries.len() != d {
                    return Err(parse_err("data", &format!("expected {d} amplitudes, found {}", entries.len())));
                }
                let amps = entries
                    .iter()
                    .enumerate()
                    .map(|(i, v)| parse_pair::<T>(v, &format!("data[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(StateFile::Pure(PureState::new(layout, Vector::from_vec(amps))?))
            }
            "density" => {
                let rows = data.as_array().ok_or_else(|| parse_err("data", "expected a list of rows"))?;
                if rows.len() != d {
                    return Err(parse_err("data", &format!("expected {d} rows, found {}", rows.len())));
                }
                let mut m = Mat::zeros(d, d);
                for (i, row) in rows.iter().enumerate() {
                    let row = row
                        .as_array()
                        .ok_or_else(|| parse_err(&format!("data[{i}]"), "expected a row of [re, im] pairs"))?;
                    if row.len() != d {
                        return Err(parse_err(&format!("data[{i}]"), &format!("expected {d} entries, found {}", row.len())));
                    }
                    for (j, v) in row.iter().enumerate() {
                        m[(i, j)] = parse_pair::<T>(v, &format!("data[{i}][{j}]"))?;
                    }
                }
                Ok(StateFile::Density(DensityOperator::new(layout, m)?))
            }
            other => Err(parse_err("kind", &format!("expected \"pure\" or \"density\", found {other:?}"))),
        }
    }
}

fn parse_err(field: &str, message: &str) -> Error {
    Error::Parse { field: field.to_string(), message: message.to_string() }
}

fn parse_layout(value: &Value) -> Result<SystemLayout> {
    let entries = value.as_array().ok_or_else(|| parse_err("layout", "expected a list"))?;
    let mut subsystems = Vec::with_capacity(entries.len());
    for (i, e) in entries.iter().enumerate() {
        let field = |name: &str| format!("layout[{i}].{name}");
        let label = e
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| parse_err(&field("label"), "expected a string"))?;
        let dim = e
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err(&field("dim"), "expected a positive integer"))?;
        let party: Party = serde_json::from_value(e.get("party").cloned().unwrap_or(Value::Null))
            .map_err(|_| parse_err(&field("party"), "expected one of alice, bob, referee, charlie, catalyst, register"))?;
        subsystems.push(Subsystem::new(label, dim as usize, party));
    }
    SystemLayout::new(subsystems).map_err(|e| parse_err("layout", &e.to_string()))
}

fn parse_pair<T: Real>(v: &Value, field: &str) -> Result<crate::scalar::C<T>> {
    let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err(field, "expected [re, im]"))?;
    let re = pair[0].as_f64().ok_or_else(|| parse_err(field, "real part is not a number"))?;
    let im = pair[1].as_f64().ok_or_else(|| parse_err(field, "imaginary part is not a number"))?;
    Ok(c(T::lit(re), T::lit(im)))
}
