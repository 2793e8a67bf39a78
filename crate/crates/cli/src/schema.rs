//! JSON documents describing quivers and representations.
//!
//! ```json
//! {"vertices": ["0", "1"],
//!  "arrows": [{"id": "a1", "tail": "0", "head": "1"}],
//!  "field": {"kind": "Fp", "p": 5},
//!  "dim": {"0": 1, "1": 1},
//!  "matrices": {"a1": [[1]]},
//!  "theta": {"0": -1, "1": 1}}
//! ```
//!
//! Matrices are `dim(head) x dim(tail)`; entries are integers or strings
//! such as `"-3/4"`. A `relations` list may be present (as emitted by
//! `gt quiver`).

use std::collections::BTreeMap;
use std::sync::Arc;

use chowres::{DimVector, ExactMatrix, Field, Quiver, Rational, Representation, Weight};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<BTreeMap<String, Vec<Vec<Scalar>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<BTreeMap<String, Scalar>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
}

pub fn parse_scalar(s: &Scalar) -> Result<Rational, CliError> {
    match s {
        Scalar::Int(n) => Ok(Rational::from_integer((*n).into())),
        Scalar::Text(t) => {
            let parsed: Rational = t.trim().parse().map_err(|_| CliError::Invalid(format!("not a rational number: {t:?}")))?;
            Ok(parsed)
        }
    }
}

/// `-1,1` or `1/2,-1/2`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|x| parse_scalar(&Scalar::Text(x.to_string()))).collect()
}

impl QuiverDoc {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("quiver document: {e}")))
    }

    pub fn quiver(&self) -> Result<Arc<Quiver>, CliError> {
        let arrows = self.arrows.iter().map(|a| (a.id.clone(), a.tail.clone(), a.head.clone()));
        Ok(Arc::new(Quiver::new(self.vertices.clone(), arrows)?))
    }

    pub fn field(&self) -> Result<Field, CliError> {
        match self.field.unwrap_or(FieldDoc::Q) {
            FieldDoc::Q => Ok(Field::Rational),
            FieldDoc::Fp { p } => Field::prime(p).map_err(|e| CliError::Invalid(e.to_string())),
        }
    }

    fn by_vertex<T: Clone>(&self, what: &str, map: &BTreeMap<String, T>) -> Result<Vec<T>, CliError> {
        if let Some(extra) = map.keys().find(|k| !self.vertices.contains(k)) {
            return Err(CliError::Invalid(format!("{what} names unknown vertex {extra:?}")));
        }
        self.vertices
            .iter()
            .map(|v| map.get(v).cloned().ok_or_else(|| CliError::Invalid(format!("{what} is missing vertex {v:?}"))))
            .collect()
    }

    pub fn dim_vector(&self) -> Result<DimVector, CliError> {
        let dim = self.dim.as_ref().ok_or_else(|| CliError::Invalid("document has no \"dim\"".into()))?;
        Ok(DimVector(self.by_vertex("dim", dim)?))
    }

    pub fn theta(&self) -> Result<Option<Weight>, CliError> {
        match &self.theta {
            None => Ok(None),
            Some(map) => {
                let values = self.by_vertex("theta", map)?;
                Ok(Some(Weight(values.iter().map(parse_scalar).collect::<Result<_, _>>()?)))
            }
        }
    }

    pub fn representation(&self) -> Result<Representation, CliError> {
        let quiver = self.quiver()?;
        let dim = self.dim_vector()?;
        let field = self.field()?;
        let matrices = self.matrices.as_ref().ok_or_else(|| CliError::Invalid("document has no \"matrices\"".into()))?;
        if let Some(extra) = matrices.keys().find(|k| !self.arrows.iter().any(|a| &a.id == *k)) {
            return Err(CliError::Invalid(format!("matrices name unknown arrow {extra:?}")));
        }
        let mut maps = Vec::new();
        for a in quiver.arrows() {
            let rows = matrices.get(&a.id).ok_or_else(|| CliError::Invalid(format!("missing matrix for arrow {:?}", a.id)))?;
            let (r, c) = (dim[a.head] as usize, dim[a.tail] as usize);
            // an empty list stands for any matrix with no entries
            let rows: &[Vec<Scalar>] = if rows.is_empty() && r * c == 0 { &[] } else { rows };
            if !rows.is_empty() && (rows.len() != r || rows.iter().any(|row| row.len() != c)) {
                return Err(CliError::Invalid(format!("arrow {:?}: expected a {r}x{c} matrix", a.id)));
            }
            let values: Vec<Rational> = rows.iter().flatten().map(parse_scalar).collect::<Result<_, _>>()?;
            maps.push(ExactMatrix::new(field, r, c, &values)?);
        }
        Ok(Representation::new(quiver, dim, field, maps)?)
    }
}

/// Quiver data in the input schema, with integer weights and a relation list.
pub fn quiver_value(q: &Quiver, dim: &DimVector, theta: &Weight, relations: &[String]) -> Value {
    let vertices = q.vertices();
    let arrows: Vec<Value> = q.arrows().iter().map(|a| json!({"id": a.id, "tail": vertices[a.tail], "head": vertices[a.head]})).collect();
    let dim: BTreeMap<&str, u64> = vertices.iter().map(String::as_str).zip(dim.0.iter().copied()).collect();
    let theta: BTreeMap<&str, Value> = vertices.iter().map(String::as_str).zip(theta.0.iter().map(crate::report::rational_value)).collect();
    json!({
        "vertices": vertices,
        "arrows": arrows,
        "field": {"kind": "Q"},
        "dim": dim,
        "theta": theta,
        "relations": relations,
    })
}
