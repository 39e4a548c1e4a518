//! Serde glue: scalars as canonical literals, signatures in the table schema
//! `{"arity", "values": {bitstring: literal}, "default": literal}`.

use crate::literal::{format_scalar, parse_scalar};
use crate::scalar::{Field, Scalar};
use crate::signature::{bitstring, parse_bitstring, Signature, MAX_ARITY};
use crate::transforms::Mat2;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::Value;
use std::collections::{BTreeMap, HashMap};

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(self))
    }
}

/// Most frequent entry (ties broken by first occurrence) becomes the default.
fn default_entry(f: &Signature) -> String {
    let mut counts: HashMap<String, (usize, usize)> = HashMap::new();
    for (a, v) in f.table().iter().enumerate() {
        let e = counts.entry(format_scalar(v)).or_insert((0, a));
        e.0 += 1;
    }
    let zero = format_scalar(&Scalar::zero());
    // prefer zero on ties so sparse tables stay sparse
    let mut best: Option<(&String, &(usize, usize))> = None;
    for (k, v) in counts.iter() {
        best = match best {
            None => Some((k, v)),
            Some((bk, bv)) => {
                let better = v.0 > bv.0 || (v.0 == bv.0 && (*k == zero || (*bk != zero && v.1 < bv.1)));
                if better {
                    Some((k, v))
                } else {
                    Some((bk, bv))
                }
            }
        };
    }
    best.map(|(k, _)| k.clone()).unwrap_or(zero)
}

/// The `values`/`default` pair for a table.
pub fn table_entries(f: &Signature) -> (BTreeMap<String, String>, String) {
    let def = default_entry(f);
    let n = f.arity();
    let mut values = BTreeMap::new();
    for (a, v) in f.table().iter().enumerate() {
        let s = format_scalar(v);
        if s != def {
            values.insert(bitstring(a, n), s);
        }
    }
    (values, def)
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (values, def) = table_entries(self);
        let mut st = s.serialize_struct("Signature", 3)?;
        st.serialize_field("arity", &self.arity())?;
        st.serialize_field("default", &def)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.m.iter().map(|r| r.iter().map(format_scalar).collect()).collect();
        rows.serialize(s)
    }
}

/// Wrapper to serialize a list of (name, signature) as a JSON object.
pub struct Named<'a>(pub &'a [(String, Signature)]);

impl Serialize for Named<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum SchemaError {
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Literal(#[from] crate::literal::LiteralError),
}

fn shape<T>(msg: impl Into<String>) -> Result<T, SchemaError> {
    Err(SchemaError::Shape(msg.into()))
}

/// Parse a table object `{"arity", "values", "default"}`.
pub fn signature_from_value(v: &Value, field: Field) -> Result<Signature, SchemaError> {
    let Some(obj) = v.as_object() else {
        return shape("signature must be an object");
    };
    let Some(n) = obj.get("arity").and_then(Value::as_u64) else {
        return shape("signature needs a non-negative integer \"arity\"");
    };
    let n = n as usize;
    if n > MAX_ARITY {
        return shape(format!("arity {} exceeds {}", n, MAX_ARITY));
    }
    let def = match obj.get("default") {
        None => Scalar::zero().into_field(field),
        Some(Value::String(s)) => parse_scalar(s, field)?,
        Some(Value::Number(x)) => parse_scalar(&x.to_string(), field)?,
        Some(_) => return shape("\"default\" must be a scalar literal"),
    };
    let mut table = vec![def; 1 << n];
    if let Some(values) = obj.get("values") {
        let Some(values) = values.as_object() else {
            return shape("\"values\" must be an object");
        };
        for (k, lit) in values {
            if k.len() != n {
                return shape(format!("bitstring {:?} does not have length {}", k, n));
            }
            let Some(a) = parse_bitstring(k) else {
                return shape(format!("bad bitstring {:?}", k));
            };
            table[a] = match lit {
                Value::String(s) => parse_scalar(s, field)?,
                Value::Number(x) => parse_scalar(&x.to_string(), field)?,
                _ => return shape(format!("value at {:?} must be a scalar literal", k)),
            };
        }
    }
    Ok(Signature::from_table(table).expect("power of two"))
}
