//! Versioned JSON documents for every public object.
//!
//! All top-level documents carry `"schema": "ordlab/1"`; on input the
//! tag may be omitted but must match when present. Integers in lattice
//! contexts (vectors, matrices, coefficients) are strings so that
//! arbitrary precision survives; element coordinates are emitted as
//! numbers when they fit and parsed from either form. Rationals are
//! `"p/q"` or `"n"` strings. Emission goes through `serde_json`'s
//! sorted object maps, so identical data yields identical bytes.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::groups::{
    Element, GroupDescriptor, GroupError, HeisenbergElement, LexGroupOrder, NElement,
    TriangularElement,
};
use crate::linear::{LinearError, UnimodularMatrix};
use crate::order::{LatticeOrder, OrderError};
use crate::probes::{
    AxiomReport, AxiomViolation, CondensationSample, DiscretenessCertificate, OrbitListing,
    VerifyOutcome,
};
use crate::scalar::{rational_from_str, ExactScalar, Radicands, Rational, ScalarError, Sign};

pub const SCHEMA_TAG: &str = "ordlab/1";

/// Errors raised while reading documents. `Schema` means the document
/// itself is malformed; the wrapped variants mean the document was well
/// formed but described an impossible object.
#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

fn schema_err(message: impl Into<String>) -> JsonError {
    JsonError::Schema(message.into())
}

/// Verifies the version tag when present. Every reader calls this on
/// its top-level value; nested objects carry no tag.
pub fn check_schema(value: &Value) -> Result<(), JsonError> {
    if let Some(object) = value.as_object() {
        if let Some(tag) = object.get("schema") {
            if tag.as_str() != Some(SCHEMA_TAG) {
                return Err(schema_err(format!(
                    "unsupported schema tag {tag}, expected \"{SCHEMA_TAG}\""
                )));
            }
        }
    }
    Ok(())
}

/// Adds the version tag to a finished top-level document.
pub fn with_schema(value: Value) -> Value {
    match value {
        Value::Object(mut map) => {
            map.insert("schema".to_string(), Value::String(SCHEMA_TAG.to_string()));
            Value::Object(map)
        }
        other => json!({ "schema": SCHEMA_TAG, "value": other }),
    }
}

/// Canonical textual form: sorted keys, two-space indent, one trailing
/// newline.
pub fn to_output_string(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    text.push('\n');
    text
}

fn field<'a>(object: &'a Map<String, Value>, name: &str) -> Result<&'a Value, JsonError> {
    object
        .get(name)
        .ok_or_else(|| schema_err(format!("missing field \"{name}\"")))
}

fn as_object(value: &Value, what: &str) -> Result<Map<String, Value>, JsonError> {
    value
        .as_object()
        .cloned()
        .ok_or_else(|| schema_err(format!("{what} must be a JSON object")))
}

fn as_array<'a>(value: &'a Value, what: &str) -> Result<&'a Vec<Value>, JsonError> {
    value
        .as_array()
        .ok_or_else(|| schema_err(format!("{what} must be a JSON array")))
}

/// Integers appear as JSON numbers or as decimal strings.
pub fn parse_bigint(value: &Value, what: &str) -> Result<BigInt, JsonError> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(schema_err(format!("{what} must be an integer, got {n}")))
            }
        }
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| schema_err(format!("{what} is not an integer: \"{s}\""))),
        other => Err(schema_err(format!(
            "{what} must be an integer number or string, got {other}"
        ))),
    }
}

fn parse_usize(value: &Value, what: &str) -> Result<usize, JsonError> {
    let n = parse_bigint(value, what)?;
    n.to_usize()
        .ok_or_else(|| schema_err(format!("{what} must be a nonnegative machine-size integer")))
}

fn parse_u64(value: &Value, what: &str) -> Result<u64, JsonError> {
    let n = parse_bigint(value, what)?;
    n.to_u64()
        .ok_or_else(|| schema_err(format!("{what} must be a nonnegative integer")))
}

fn parse_rational(value: &Value, what: &str) -> Result<Rational, JsonError> {
    match value {
        Value::String(s) => Ok(rational_from_str(s)?),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                Err(schema_err(format!(
                    "{what} must be an integer or a \"p/q\" string, got {n}"
                )))
            }
        }
        other => Err(schema_err(format!(
            "{what} must be a rational string, got {other}"
        ))),
    }
}

/// Emits an integer as a JSON number when it fits, else as a string.
pub fn bigint_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(i) => json!(i),
        None => json!(n.to_string()),
    }
}

fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn sign_str(sign: Sign) -> &'static str {
    match sign {
        Sign::Positive => "positive",
        Sign::Negative => "negative",
        Sign::Zero => "zero",
    }
}

/// Integer vectors are arrays of integer strings (numbers accepted).
pub fn parse_vector(value: &Value, what: &str) -> Result<Vec<BigInt>, JsonError> {
    as_array(value, what)?
        .iter()
        .map(|entry| parse_bigint(entry, what))
        .collect()
}

pub fn vector_value(vector: &[BigInt]) -> Value {
    Value::Array(vector.iter().map(|x| json!(x.to_string())).collect())
}

/// Square integer matrices are row-major arrays of integer strings,
/// either bare or wrapped in `{"rows": ...}`.
pub fn parse_matrix(value: &Value) -> Result<UnimodularMatrix, JsonError> {
    check_schema(value)?;
    let rows_value = match value {
        Value::Array(_) => value,
        Value::Object(map) => field(map, "rows")?,
        other => {
            return Err(schema_err(format!(
                "matrix must be an array of rows or an object with \"rows\", got {other}"
            )))
        }
    };
    let rows: Vec<Vec<BigInt>> = as_array(rows_value, "matrix rows")?
        .iter()
        .map(|row| parse_vector(row, "matrix row"))
        .collect::<Result<_, _>>()?;
    Ok(UnimodularMatrix::new(rows)?)
}

pub fn matrix_document(matrix: &UnimodularMatrix) -> Value {
    json!({ "rows": matrix.rows().iter().map(|row| vector_value(row)).collect::<Vec<_>>() })
}

/// Reads `{"rank", "radicands", "vectors"}`. With `permissive` set the
/// order may be partial; otherwise it must be total.
pub fn parse_order(value: &Value, permissive: bool) -> Result<LatticeOrder, JsonError> {
    check_schema(value)?;
    let object = as_object(value, "order document")?;
    let rank = parse_usize(field(&object, "rank")?, "rank")?;
    let radicand_values: Vec<u64> = as_array(field(&object, "radicands")?, "radicands")?
        .iter()
        .map(|d| parse_u64(d, "radicand"))
        .collect::<Result<_, _>>()?;
    let basis = Radicands::new(radicand_values)?;
    let width = basis.count() + 1;
    let mut vectors = Vec::new();
    for vector_value in as_array(field(&object, "vectors")?, "vectors")? {
        let mut vector = Vec::new();
        for scalar_value in as_array(vector_value, "order vector")? {
            let coeff_values = as_array(scalar_value, "scalar coefficients")?;
            if coeff_values.len() != width {
                return Err(schema_err(format!(
                    "scalar must list {width} coefficients (rational part first), got {}",
                    coeff_values.len()
                )));
            }
            let coeffs: Vec<Rational> = coeff_values
                .iter()
                .map(|c| parse_rational(c, "scalar coefficient"))
                .collect::<Result<_, _>>()?;
            vector.push(ExactScalar::new(basis.clone(), coeffs)?);
        }
        vectors.push(vector);
    }
    let order = if permissive {
        LatticeOrder::new_partial(rank, vectors)?
    } else {
        LatticeOrder::new(rank, vectors)?
    };
    Ok(order)
}

pub fn order_document(order: &LatticeOrder) -> Value {
    let radicands: Vec<Value> = order.basis().values().iter().map(|&d| json!(d)).collect();
    let vectors: Vec<Value> = order
        .vectors()
        .iter()
        .map(|vector| {
            Value::Array(
                vector
                    .iter()
                    .map(|scalar| {
                        Value::Array(
                            scalar
                                .coeffs()
                                .iter()
                                .map(|q| json!(rational_string(q)))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "rank": order.rank(),
        "radicands": radicands,
        "vectors": vectors,
    })
}

fn parse_descriptor(object: &Map<String, Value>) -> Result<GroupDescriptor, JsonError> {
    let group = field(object, "group")?
        .as_str()
        .ok_or_else(|| schema_err("\"group\" must be a string"))?;
    match group {
        "heisenberg" => {
            let n = parse_usize(field(object, "n")?, "n")?;
            Ok(GroupDescriptor::Heisenberg { n })
        }
        "N" => Ok(GroupDescriptor::NGroup),
        "triangular" => {
            let k = parse_usize(field(object, "k")?, "k")?;
            Ok(GroupDescriptor::Triangular { k })
        }
        other => Err(schema_err(format!(
            "unknown group \"{other}\" (expected \"heisenberg\", \"N\", or \"triangular\")"
        ))),
    }
}

fn descriptor_fields(descriptor: &GroupDescriptor, map: &mut Map<String, Value>) {
    match descriptor {
        GroupDescriptor::Heisenberg { n } => {
            map.insert("group".into(), json!("heisenberg"));
            map.insert("n".into(), json!(n));
        }
        GroupDescriptor::NGroup => {
            map.insert("group".into(), json!("N"));
        }
        GroupDescriptor::Triangular { k } => {
            map.insert("group".into(), json!("triangular"));
            map.insert("k".into(), json!(k));
        }
    }
}

/// Reads `{"group", ..., "factors"}` with factors listed top-down.
/// Factor orders are always read permissively: partial factors are part
/// of the design.
pub fn parse_lex_order(value: &Value) -> Result<LexGroupOrder, JsonError> {
    check_schema(value)?;
    let object = as_object(value, "group order document")?;
    let descriptor = parse_descriptor(&object)?;
    let factors: Vec<LatticeOrder> = as_array(field(&object, "factors")?, "factors")?
        .iter()
        .map(|factor| parse_order(factor, true))
        .collect::<Result<_, _>>()?;
    Ok(LexGroupOrder::new(descriptor, factors)?)
}

pub fn lex_order_document(order: &LexGroupOrder) -> Value {
    let mut map = Map::new();
    descriptor_fields(order.descriptor(), &mut map);
    map.insert(
        "factors".into(),
        Value::Array(order.factors().iter().map(order_document).collect()),
    );
    Value::Object(map)
}

/// Reads a group element document keyed by `"group"`.
pub fn parse_element(value: &Value) -> Result<Element, JsonError> {
    check_schema(value)?;
    let object = as_object(value, "element document")?;
    let descriptor = parse_descriptor(&object)?;
    match descriptor {
        GroupDescriptor::Heisenberg { n } => {
            let b = parse_vector(field(&object, "b")?, "b")?;
            let a = parse_vector(field(&object, "a")?, "a")?;
            let c = parse_bigint(field(&object, "c")?, "c")?;
            Ok(Element::Heisenberg(HeisenbergElement::new(n, b, a, c)?))
        }
        GroupDescriptor::NGroup => {
            let m = parse_vector(field(&object, "m")?, "m")?;
            let k = parse_vector(field(&object, "k")?, "k")?;
            if m.len() != 2 {
                return Err(schema_err(format!("\"m\" must have 2 entries, got {}", m.len())));
            }
            if k.len() != 3 {
                return Err(schema_err(format!("\"k\" must have 3 entries, got {}", k.len())));
            }
            let [m1, m2] = <[BigInt; 2]>::try_from(m).expect("length checked");
            let [k1, k2, k3] = <[BigInt; 3]>::try_from(k).expect("length checked");
            Ok(Element::N(NElement::new(m1, m2, k1, k2, k3)))
        }
        GroupDescriptor::Triangular { k } => {
            let entries: Vec<Vec<BigInt>> = as_array(field(&object, "entries")?, "entries")?
                .iter()
                .map(|row| parse_vector(row, "entries row"))
                .collect::<Result<_, _>>()?;
            let element = TriangularElement::new(entries)?;
            if element.size() != k {
                return Err(schema_err(format!(
                    "entries form a {0}x{0} matrix but k = {k}",
                    element.size()
                )));
            }
            Ok(Element::Triangular(element))
        }
    }
}

pub fn element_document(element: &Element) -> Value {
    let mut map = Map::new();
    descriptor_fields(&element.descriptor(), &mut map);
    match element {
        Element::Heisenberg(g) => {
            map.insert("b".into(), Value::Array(g.b().iter().map(bigint_value).collect()));
            map.insert("a".into(), Value::Array(g.a().iter().map(bigint_value).collect()));
            map.insert("c".into(), bigint_value(g.c()));
        }
        Element::N(g) => {
            map.insert(
                "m".into(),
                Value::Array(vec![bigint_value(g.m1()), bigint_value(g.m2())]),
            );
            map.insert(
                "k".into(),
                Value::Array(g.k().iter().map(|x| bigint_value(x)).collect()),
            );
        }
        Element::Triangular(g) => {
            map.insert(
                "entries".into(),
                Value::Array(
                    g.rows()
                        .iter()
                        .map(|row| Value::Array(row.iter().map(bigint_value).collect()))
                        .collect(),
                ),
            );
        }
    }
    Value::Object(map)
}

pub fn verdict_document(sign: Sign, level: Option<usize>) -> Value {
    json!({
        "verdict": sign_str(sign),
        "level": level.map(|l| json!(l)).unwrap_or(Value::Null),
    })
}

pub fn equality_document(equal: bool) -> Value {
    json!({ "equal": equal })
}

pub fn discreteness_document(certificate: &DiscretenessCertificate) -> Value {
    let log: Vec<Value> = certificate
        .log
        .iter()
        .map(|entry| {
            let mut map = Map::new();
            map.insert("last_row".into(), vector_value(&entry.last_row));
            match entry.outcome {
                VerifyOutcome::Fixed => {
                    map.insert("outcome".into(), json!("fixed"));
                }
                VerifyOutcome::Excluded { witness } => {
                    map.insert("outcome".into(), json!("excluded"));
                    map.insert("witness".into(), json!(witness));
                }
            }
            Value::Object(map)
        })
        .collect();
    json!({
        "kind": "discreteness",
        "base": order_document(&certificate.base),
        "witnesses": certificate.witnesses.iter().map(|w| vector_value(w)).collect::<Vec<_>>(),
        "scope": { "rank": certificate.scope.rank, "note": certificate.scope.note },
        "verify_box": certificate.verification_box,
        "log": log,
    })
}

pub fn condensation_document(sample: &CondensationSample) -> Value {
    json!({
        "kind": "condensation",
        "base": lex_order_document(&sample.base),
        "conjugator": element_document(&sample.conjugator),
        "neighborhood": sample
            .neighborhood
            .elements()
            .iter()
            .map(|w| vector_value(w))
            .collect::<Vec<_>>(),
        "transported": lex_order_document(&sample.transported),
        "k0": sample.k0,
        "t0": sample.t0,
        "epsilon": sample
            .epsilon
            .as_ref()
            .map(|e| json!(rational_string(e)))
            .unwrap_or(Value::Null),
        "pairs_examined": sample.pairs_examined,
    })
}

pub fn sequence_document(samples: &[CondensationSample]) -> Value {
    json!({
        "kind": "condensation-sequence",
        "count": samples.len(),
        "samples": samples.iter().map(condensation_document).collect::<Vec<_>>(),
    })
}

pub fn orbit_document(listing: &OrbitListing) -> Value {
    json!({
        "kind": "orbit",
        "radius": listing.radius,
        "count": listing.entries.len(),
        "distinct": true,
        "entries": listing
            .entries
            .iter()
            .map(|entry| {
                json!({
                    "conjugator": element_document(&entry.conjugator),
                    "order": lex_order_document(&entry.order),
                })
            })
            .collect::<Vec<_>>(),
    })
}

fn violation_value(violation: &AxiomViolation) -> Value {
    match violation {
        AxiomViolation::Trichotomy {
            point,
            forward,
            backward,
        } => json!({
            "axiom": "trichotomy",
            "point": vector_value(point),
            "forward": sign_str(*forward),
            "backward": sign_str(*backward),
        }),
        AxiomViolation::Closure {
            left,
            right,
            sum_sign,
        } => json!({
            "axiom": "closure",
            "left": vector_value(left),
            "right": vector_value(right),
            "sum": sign_str(*sum_sign),
        }),
        AxiomViolation::LexTrichotomy {
            element,
            forward,
            backward,
        } => json!({
            "axiom": "trichotomy",
            "element": element,
            "forward": sign_str(*forward),
            "backward": sign_str(*backward),
        }),
        AxiomViolation::LexClosure {
            left,
            right,
            product_sign,
        } => json!({
            "axiom": "closure",
            "left": left,
            "right": right,
            "product": sign_str(*product_sign),
        }),
    }
}

pub fn axiom_document(report: &AxiomReport) -> Value {
    json!({
        "kind": "axioms",
        "radius": report.radius,
        "points": report.points,
        "pairs": report.pairs,
        "passed": report.violations.is_empty(),
        "violations": report.violations.iter().map(violation_value).collect::<Vec<_>>(),
    })
}

pub fn error_document(kind: &str, message: &str) -> Value {
    json!({
        "schema": SCHEMA_TAG,
        "error": { "kind": kind, "message": message },
    })
}
