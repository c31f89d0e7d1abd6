//! JSON form of operators:
//! `{"field": {"prime": 5} | "rationals", "leg_dims": [..], "codomain_leg_dims": [..], "entries": [["1", "0"], ..]}`.

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldSpec, PrimeField, Rationals};
use super::operator::{total_dim, LegOperator};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FieldJson {
    Rationals,
    Prime(u64),
}

impl From<FieldSpec> for FieldJson {
    fn from(s: FieldSpec) -> Self {
        match s {
            FieldSpec::Rationals => FieldJson::Rationals,
            FieldSpec::Prime(p) => FieldJson::Prime(p),
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldJson::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match FieldJson::deserialize(d)? {
            FieldJson::Rationals => FieldSpec::Rationals,
            FieldJson::Prime(p) => FieldSpec::Prime(p),
        })
    }
}

/// A scalar written either as a string (`"3"`, `"-1/2"`) or a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Text(String),
    Int(i64),
}

impl ScalarJson {
    fn parse<F: Field>(&self, f: &F) -> Result<F::Elem> {
        match self {
            ScalarJson::Text(s) => f.parse(s),
            ScalarJson::Int(v) => Ok(f.from_i64(*v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorJson {
    pub field: FieldSpec,
    pub leg_dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codomain_leg_dims: Option<Vec<usize>>,
    pub entries: Vec<Vec<ScalarJson>>,
}

impl OperatorJson {
    pub fn from_operator<F: Field>(op: &LegOperator<F>) -> Self {
        let f = op.field();
        let cols = op.ncols();
        let entries = op
            .entries()
            .chunks(cols)
            .map(|row| row.iter().map(|e| ScalarJson::Text(f.format(e))).collect())
            .collect();
        OperatorJson {
            field: f.spec(),
            leg_dims: op.domain_legs().to_vec(),
            codomain_leg_dims: Some(op.codomain_legs().to_vec()),
            entries,
        }
    }

    /// Builds the operator over `field`, which must match the declared field.
    pub fn to_operator<F: Field>(&self, field: &F) -> Result<LegOperator<F>> {
        if field.spec() != self.field {
            return Err(Error::RingMismatch(format!(
                "operator declared over {:?}, expected {:?}",
                self.field,
                field.spec()
            )));
        }
        let codomain = self.codomain_leg_dims.clone().unwrap_or_else(|| self.leg_dims.clone());
        let (rows, cols) = (total_dim(&codomain), total_dim(&self.leg_dims));
        if self.entries.len() != rows || self.entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "entries must be {rows} rows of {cols} for legs {:?} -> {codomain:?}",
                self.leg_dims
            )));
        }
        let entries = self
            .entries
            .iter()
            .flatten()
            .map(|s| s.parse(field))
            .collect::<Result<Vec<_>>>()?;
        LegOperator::new(field.clone(), self.leg_dims.clone(), codomain, entries)
    }
}

impl<F: Field> Serialize for LegOperator<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorJson::from_operator(self).serialize(s)
    }
}

/// An operator over whichever field its JSON declares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyOperator {
    Prime(LegOperator<PrimeField>),
    Rational(LegOperator<Rationals>),
}

impl AnyOperator {
    pub fn from_json(j: &OperatorJson) -> Result<Self> {
        match j.field {
            FieldSpec::Prime(p) => Ok(AnyOperator::Prime(j.to_operator(&PrimeField::new(p)?)?)),
            FieldSpec::Rationals => Ok(AnyOperator::Rational(j.to_operator(&Rationals)?)),
        }
    }

    pub fn to_json(&self) -> OperatorJson {
        match self {
            AnyOperator::Prime(op) => OperatorJson::from_operator(op),
            AnyOperator::Rational(op) => OperatorJson::from_operator(op),
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            AnyOperator::Prime(op) => op.field().spec(),
            AnyOperator::Rational(_) => FieldSpec::Rationals,
        }
    }
}

impl Serialize for AnyOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnyOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OperatorJson::deserialize(d)?;
        AnyOperator::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_shape() {
        let text = r#"{"field":{"prime":5},"leg_dims":[2],"codomain_leg_dims":[2],"entries":[["1","0"],["3","-1"]]}"#;
        let op: AnyOperator = serde_json::from_str(text).unwrap();
        let AnyOperator::Prime(p) = &op else { panic!("expected a prime-field operator") };
        assert_eq!(p.entries(), &[1, 0, 3, 4]);
        let back = serde_json::to_string(&op).unwrap();
        assert_eq!(back, r#"{"field":{"prime":5},"leg_dims":[2],"codomain_leg_dims":[2],"entries":[["1","0"],["3","4"]]}"#);
    }

    #[test]
    fn rationals_round_trip() {
        let text = r#"{"field":"rationals","leg_dims":[2],"entries":[["1/2",0],["-3/6","2"]]}"#;
        let op: AnyOperator = serde_json::from_str(text).unwrap();
        let j = serde_json::to_value(&op).unwrap();
        assert_eq!(j["entries"][1][0], "-1/2");
        let again: AnyOperator = serde_json::from_value(j).unwrap();
        assert_eq!(again, op);
    }

    #[test]
    fn rejects_bad_shapes() {
        for text in [
            r#"{"field":{"prime":4},"leg_dims":[1],"entries":[["1"]]}"#,
            r#"{"field":{"prime":5},"leg_dims":[2],"entries":[["1"]]}"#,
            r#"{"field":{"prime":5},"leg_dims":[1],"entries":[["x"]]}"#,
            r#"{"field":"reals","leg_dims":[1],"entries":[["1"]]}"#,
        ] {
            assert!(serde_json::from_str::<AnyOperator>(text).is_err(), "{text}");
        }
    }
}
