//! Rendering of serializable reports as `key=value` lines or JSON.

use serde::Serialize;
use serde_json::Value;

/// One `key=value` line per scalar leaf. Nested fields are joined with `.`,
/// list elements are indexed as `key.0`, `key.1`, and so on.
pub fn to_key_value<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize to JSON");
    let mut out = String::new();
    flatten("", &value, &mut out);
    out
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize to JSON")
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(items) => items.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::String(s) => push(out, prefix, s),
        Value::Null => push(out, prefix, "none"),
        other => push(out, prefix, &other.to_string()),
    }
}

fn push(out: &mut String, key: &str, value: &str) {
    out.push_str(key);
    out.push('=');
    out.push_str(value);
    out.push('\n');
}

/// Serde adapters that write big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    fn parse<E: serde::de::Error>(s: &str) -> Result<BigUint, E> {
        s.parse().map_err(|_| E::custom(format!("not a nonnegative integer: {s:?}")))
    }

    pub fn one<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn seq<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub mod rows {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
            let raw = Vec::<Vec<String>>::deserialize(d)?;
            raw.iter().map(|r| r.iter().map(|s| parse::<D::Error>(s)).collect()).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Inner {
        ok: bool,
        note: Option<String>,
    }

    #[derive(Serialize)]
    struct Outer {
        name: &'static str,
        values: Vec<u32>,
        inner: Inner,
    }

    #[test]
    fn flattens_nested_values() {
        let r = Outer { name: "tail", values: vec![3, 4], inner: Inner { ok: true, note: None } };
        assert_eq!(to_key_value(&r), "name=tail\nvalues.0=3\nvalues.1=4\ninner.ok=true\ninner.note=none\n");
        assert!(to_json(&r).contains("\"values\""));
    }

    #[derive(Serialize)]
    struct Big {
        #[serde(serialize_with = "decimal::one")]
        one: num_bigint::BigUint,
        #[serde(serialize_with = "decimal::seq")]
        many: Vec<num_bigint::BigUint>,
    }

    #[test]
    fn big_integers_are_decimal_strings() {
        let b = Big { one: num_traits::pow(num_bigint::BigUint::from(10u32), 30), many: vec![7u32.into()] };
        assert_eq!(to_key_value(&b), format!("one=1{}\nmany.0=7\n", "0".repeat(30)));
    }
}
