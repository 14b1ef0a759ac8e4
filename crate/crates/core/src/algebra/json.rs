//! The JSON exchange format:
//! `{"dim": n, "field": F, "one": [..], "table": [[[..]]]}` where F is
//! `"Q"`, `{"Fp": p}` or `{"Qp": {"N": N, "p": p}}`. Rational and p-adic
//! entries are `"num/den"` strings (plain integers are accepted on input),
//! F_p entries are integers. Normalized output has sorted keys, no
//! whitespace, and canonical entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{make_algebra, StructureConstantAlgebra, Table};
use crate::error::{Error, Result};
use crate::fields::{format_rational, parse_rational, Field, PrimeField, Rational, Rationals};
use crate::padic::{PadicContext, PadicNumber, Qp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    Q,
    Fp(u64),
    Qp { p: u64, precision: u32 },
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp(p) => write!(f, "F_{p}"),
            FieldTag::Qp { p, precision } => write!(f, "Q_{p} (precision {precision})"),
        }
    }
}

impl FieldTag {
    pub fn to_json(&self) -> Value {
        match *self {
            FieldTag::Q => json!("Q"),
            FieldTag::Fp(p) => json!({ "Fp": p }),
            FieldTag::Qp { p, precision } => json!({ "Qp": { "N": precision, "p": p } }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Malformed(format!("unknown field tag {v}"));
        if v.as_str() == Some("Q") {
            return Ok(FieldTag::Q);
        }
        let obj = v.as_object().filter(|o| o.len() == 1).ok_or_else(bad)?;
        if let Some(p) = obj.get("Fp") {
            return Ok(FieldTag::Fp(p.as_u64().ok_or_else(bad)?));
        }
        if let Some(q) = obj.get("Qp") {
            let p = q.get("p").and_then(Value::as_u64).ok_or_else(bad)?;
            let n = q.get("N").and_then(Value::as_u64).ok_or_else(bad)?;
            let precision = u32::try_from(n).map_err(|_| bad())?;
            return Ok(FieldTag::Qp { p, precision });
        }
        Err(bad())
    }
}

/// An algebra over one of the exchange-format fields.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyAlgebra {
    Q(StructureConstantAlgebra<Rationals>),
    Fp(StructureConstantAlgebra<PrimeField>),
    Qp(StructureConstantAlgebra<Qp>),
}

macro_rules! dispatch {
    ($self:expr, $a:ident => $body:expr) => {
        match $self {
            AnyAlgebra::Q($a) => $body,
            AnyAlgebra::Fp($a) => $body,
            AnyAlgebra::Qp($a) => $body,
        }
    };
}

impl AnyAlgebra {
    pub fn field_tag(&self) -> FieldTag {
        match self {
            AnyAlgebra::Q(_) => FieldTag::Q,
            AnyAlgebra::Fp(a) => FieldTag::Fp(a.field().p()),
            AnyAlgebra::Qp(a) => FieldTag::Qp {
                p: a.field().context().p(),
                precision: a.field().context().precision(),
            },
        }
    }

    pub fn dim(&self) -> usize {
        dispatch!(self, a => a.dim())
    }

    pub fn center_dim(&self) -> usize {
        dispatch!(self, a => a.center().dim())
    }

    pub fn enveloping_map_rank(&self) -> usize {
        dispatch!(self, a => a.enveloping_map_rank())
    }

    pub fn is_central_simple(&self) -> bool {
        dispatch!(self, a => a.is_central_simple())
    }

    pub fn to_json(&self) -> Value {
        let (one, table) = match self {
            AnyAlgebra::Q(a) => encode(a, |x| json!(format_rational(x))),
            AnyAlgebra::Fp(a) => encode(a, |x| json!(x)),
            AnyAlgebra::Qp(a) => encode(a, |x| json!(format_rational(&balanced(x)))),
        };
        json!({
            "dim": self.dim(),
            "field": self.field_tag().to_json(),
            "one": one,
            "table": table,
        })
    }

    /// The normalized serialization; parsing it back and normalizing again
    /// reproduces the same bytes.
    pub fn to_normalized_string(&self) -> String {
        self.to_json().to_string()
    }
}

impl From<StructureConstantAlgebra<Rationals>> for AnyAlgebra {
    fn from(a: StructureConstantAlgebra<Rationals>) -> Self {
        AnyAlgebra::Q(a)
    }
}

impl From<StructureConstantAlgebra<PrimeField>> for AnyAlgebra {
    fn from(a: StructureConstantAlgebra<PrimeField>) -> Self {
        AnyAlgebra::Fp(a)
    }
}

impl From<StructureConstantAlgebra<Qp>> for AnyAlgebra {
    fn from(a: StructureConstantAlgebra<Qp>) -> Self {
        AnyAlgebra::Qp(a)
    }
}

fn encode<F: Field>(a: &StructureConstantAlgebra<F>, f: impl Fn(&F::Elem) -> Value) -> (Value, Value) {
    let one: Vec<Value> = a.one().iter().map(&f).collect();
    let table: Vec<Vec<Vec<Value>>> = a
        .table()
        .iter()
        .map(|row| row.iter().map(|c| c.iter().map(&f).collect()).collect())
        .collect();
    (json!(one), json!(table))
}

/// The value p^v u with the unit taken in (-p^N/2, p^N/2].
fn balanced(x: &PadicNumber) -> Rational {
    let ctx = x.context();
    match (x.valuation(), x.unit()) {
        (Some(v), Some(u)) => {
            let m = ctx.modulus();
            let mut u = u.mod_floor(m);
            if &u * BigInt::from(2) > *m {
                u -= m;
            }
            Rational::from_integer(u) * pow_p(ctx, v)
        }
        _ => Rational::from_integer(0.into()),
    }
}

fn pow_p(ctx: &PadicContext, v: i64) -> Rational {
    let pv = Rational::from_integer(num_traits::pow(BigInt::from(ctx.p()), v.unsigned_abs() as usize));
    if v >= 0 {
        pv
    } else {
        pv.recip()
    }
}

fn parse_entry_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| Error::Malformed(format!("not an integer entry: {n}"))),
        _ => Err(Error::Malformed(format!("bad entry {v}"))),
    }
}

fn parse_entry_fp(fp: &PrimeField, v: &Value) -> Result<u64> {
    let r = parse_entry_rational(v)?;
    let p = BigInt::from(fp.p());
    let num = r.numer().mod_floor(&p).to_u64().expect("reduced");
    let den = r.denom().mod_floor(&p).to_u64().expect("reduced");
    fp.div(&num, &den)
        .ok_or_else(|| Error::Malformed(format!("entry {v} has denominator divisible by p")))
}

fn parse_vec<E>(v: &Value, n: usize, f: &impl Fn(&Value) -> Result<E>) -> Result<Vec<E>> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == n)
        .ok_or_else(|| Error::Malformed(format!("expected an array of length {n}")))?;
    arr.iter().map(f).collect()
}

fn parse_parts<E>(
    obj: &Value,
    n: usize,
    f: impl Fn(&Value) -> Result<E>,
) -> Result<(Table<E>, Vec<E>)> {
    let one = parse_vec(&obj["one"], n, &f)?;
    let table = parse_vec(&obj["table"], n, &|row: &Value| {
        parse_vec(row, n, &|cell: &Value| parse_vec(cell, n, &f))
    })?;
    Ok((table, one))
}

/// Parses and validates an algebra in the exchange format.
pub fn parse_algebra(text: &str) -> Result<AnyAlgebra> {
    let obj: Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    if !obj.is_object() {
        return Err(Error::Malformed("expected a JSON object".into()));
    }
    let n = obj
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Malformed("\"dim\" must be a positive integer".into()))? as usize;
    let tag = FieldTag::from_json(
        obj.get("field")
            .ok_or_else(|| Error::Malformed("missing \"field\"".into()))?,
    )?;
    match tag {
        FieldTag::Q => {
            let (t, one) = parse_parts(&obj, n, parse_entry_rational)?;
            Ok(AnyAlgebra::Q(make_algebra(Rationals, n, t, one)?))
        }
        FieldTag::Fp(p) => {
            let fp = PrimeField::new(p)?;
            let (t, one) = parse_parts(&obj, n, |v| parse_entry_fp(&fp, v))?;
            Ok(AnyAlgebra::Fp(make_algebra(fp, n, t, one)?))
        }
        FieldTag::Qp { p, precision } => {
            let ctx = PadicContext::new(p, precision)?;
            let (t, one) = parse_parts(&obj, n, |v| Ok(ctx.from_rational(&parse_entry_rational(v)?)))?;
            Ok(AnyAlgebra::Qp(make_algebra(Qp::new(&ctx), n, t, one)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{hamilton, matrix_algebra};

    #[test]
    fn round_trip_is_byte_exact() {
        let h: AnyAlgebra = hamilton(Rationals).into();
        let s = h.to_normalized_string();
        assert!(s.starts_with(r#"{"dim":4,"field":"Q","one":["1/1","0/1","0/1","0/1"]"#), "{s}");
        let back = parse_algebra(&s).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_normalized_string(), s);
    }

    #[test]
    fn accepts_integers_and_normalizes() {
        let text = r#"{"field":"Q","dim":1,"one":[1],"table":[[["2/2"]]]}"#;
        let a = parse_algebra(text).unwrap();
        assert_eq!(
            a.to_normalized_string(),
            r#"{"dim":1,"field":"Q","one":["1/1"],"table":[[["1/1"]]]}"#
        );
    }

    #[test]
    fn finite_and_padic_fields() {
        let m: AnyAlgebra = matrix_algebra(PrimeField::new(5).unwrap(), 2).unwrap().into();
        let s = m.to_normalized_string();
        assert!(s.contains(r#""field":{"Fp":5}"#));
        assert_eq!(parse_algebra(&s).unwrap().to_normalized_string(), s);

        let ctx = PadicContext::new(3, 6).unwrap();
        let h: AnyAlgebra = hamilton(Qp::new(&ctx)).into();
        let s = h.to_normalized_string();
        assert!(s.contains(r#""field":{"Qp":{"N":6,"p":3}}"#));
        assert!(s.contains(r#""-1/1""#));
        assert_eq!(parse_algebra(&s).unwrap().to_normalized_string(), s);
    }

    #[test]
    fn schema_errors() {
        for text in [
            "[]",
            r#"{"field":"Q","dim":0,"one":[],"table":[]}"#,
            r#"{"field":"R","dim":1,"one":[1],"table":[[[1]]]}"#,
            r#"{"field":"Q","dim":1,"one":[1,0],"table":[[[1]]]}"#,
            r#"{"field":"Q","dim":1,"one":[true],"table":[[[1]]]}"#,
            r#"{"field":{"Fp":6},"dim":1,"one":[1],"table":[[[1]]]}"#,
        ] {
            assert!(parse_algebra(text).is_err(), "{text}");
        }
        let bad_identity = r#"{"field":"Q","dim":1,"one":[2],"table":[[[1]]]}"#;
        assert!(matches!(parse_algebra(bad_identity), Err(Error::Identity(0))));
    }
}
