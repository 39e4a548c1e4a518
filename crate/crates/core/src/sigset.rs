//! Named signature sets and their JSON schema
//! `{"field", "signatures": [{"name", "arity", "values", "default"}]}`.

use crate::literal::{format_scalar, parse_scalar};
use crate::scalar::{Field, Scalar};
use crate::ser::{signature_from_value, table_entries, SchemaError};
use crate::signature::Signature;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq)]
pub struct SigSet {
    pub field: Field,
    pub sigs: Vec<(String, Signature)>,
}

impl SigSet {
    pub fn new(field: Field) -> SigSet {
        SigSet { field, sigs: Vec::new() }
    }

    pub fn from_sigs(sigs: Vec<(String, Signature)>) -> SigSet {
        let field = sigs.iter().map(|(_, s)| s.field()).find(|f| !f.is_exact()).unwrap_or(Field::Cyclo24);
        SigSet { field, sigs }
    }

    pub fn get(&self, name: &str) -> Option<&Signature> {
        self.sigs.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Insert or replace.
    pub fn insert(&mut self, name: impl Into<String>, f: Signature) {
        let name = name.into();
        match self.sigs.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = f,
            None => self.sigs.push((name, f)),
        }
    }

    /// A name starting with `stem` that is not taken yet.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.get(stem).is_none() {
            return stem.to_string();
        }
        (1..)
            .map(|k| format!("{}_{}", stem, k))
            .find(|n| self.get(n).is_none())
            .expect("unbounded")
    }

    pub fn signatures(&self) -> Vec<Signature> {
        self.sigs.iter().map(|(_, s)| s.clone()).collect()
    }

    pub fn from_json(v: &Value, field_override: Option<Field>) -> Result<SigSet, SchemaError> {
        let obj = v
            .as_object()
            .ok_or_else(|| SchemaError::Shape("signature set must be an object".into()))?;
        let field = match (field_override, obj.get("field").and_then(Value::as_str)) {
            (Some(f), _) => f,
            (None, None) | (None, Some("cyclo24")) => Field::Cyclo24,
            (None, Some("approx")) => {
                let eps = obj.get("epsilon").and_then(Value::as_f64).unwrap_or(1e-9);
                Field::Approx { eps }
            }
            (None, Some(other)) => return Err(SchemaError::Shape(format!("unknown field {:?}", other))),
        };
        let list = obj
            .get("signatures")
            .and_then(Value::as_array)
            .ok_or_else(|| SchemaError::Shape("\"signatures\" must be an array".into()))?;
        let mut set = SigSet::new(field);
        for (k, item) in list.iter().enumerate() {
            let name = item
                .get("name")
                .and_then(Value::as_str)
                .ok_or_else(|| SchemaError::Shape(format!("signature {} needs a \"name\"", k)))?;
            if set.get(name).is_some() {
                return Err(SchemaError::Shape(format!("duplicate signature name {:?}", name)));
            }
            set.sigs.push((name.to_string(), signature_from_value(item, field)?));
        }
        Ok(set)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

struct Entry<'a>(&'a str, &'a Signature);

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (values, def) = table_entries(self.1);
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("arity", &self.1.arity())?;
        m.serialize_entry("default", &def)?;
        m.serialize_entry("name", self.0)?;
        m.serialize_entry("values", &values)?;
        m.end()
    }
}

impl Serialize for SigSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = self.sigs.iter().map(|(n, f)| Entry(n, f)).collect();
        let mut m = s.serialize_map(None)?;
        match self.field {
            Field::Cyclo24 => m.serialize_entry("field", "cyclo24")?,
            Field::Approx { eps } => {
                m.serialize_entry("epsilon", &eps)?;
                m.serialize_entry("field", "approx")?;
            }
        }
        m.serialize_entry("signatures", &entries)?;
        m.end()
    }
}

/// Seeded random set of `count` signatures `f0, f1, ...` with arities in
/// `0..=max_arity` and Gaussian-integer entries in `[-2, 2]`, about a third zero.
pub fn random_sigset(seed: u64, count: usize, max_arity: usize) -> SigSet {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut set = SigSet::new(Field::Cyclo24);
    for k in 0..count {
        let n = rng.gen_range(0..=max_arity);
        let table = (0..1usize << n)
            .map(|_| {
                if rng.gen_bool(0.35) {
                    Scalar::zero()
                } else {
                    &Scalar::int(rng.gen_range(-2..=2)) + &(&Scalar::int(rng.gen_range(-2..=2)) * &Scalar::i())
                }
            })
            .collect();
        set.sigs.push((format!("f{}", k), Signature::from_table(table).expect("power of two")));
    }
    set
}

/// Parse a scalar that may arrive as a JSON string or number.
pub fn scalar_from_value(v: &Value, field: Field) -> Result<Scalar, SchemaError> {
    match v {
        Value::String(s) => Ok(parse_scalar(s, field)?),
        Value::Number(x) => Ok(parse_scalar(&x.to_string(), field)?),
        _ => Err(SchemaError::Shape("expected a scalar literal".into())),
    }
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    Value::String(format_scalar(s))
}
