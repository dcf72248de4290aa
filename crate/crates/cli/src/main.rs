//! `ordlab` — command-line front end for `ordlab-core`.
//!
//! Every subcommand reads JSON documents (file paths, or inline JSON for
//! anything starting with `{` or `[`), runs one exact computation, and
//! prints a versioned JSON document to stdout; `--out` additionally
//! writes the same bytes to a file. Identical inputs produce
//! byte-identical output: objects serialize with sorted keys and listings
//! are deterministic.
//!
//! Failures print a machine-readable error document to stderr. The exit
//! code classifies what went wrong:
//!
//! * `0` — success;
//! * `2` — the input could not be read or did not match the schema;
//! * `3` — well-formed input describing an impossible or unsupported
//!   object (a domain precondition);
//! * `4` — a check ran to completion and found a genuine failure (axiom
//!   violations, a certificate that did not verify).

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use serde_json::Value;

use ordlab_core::json::{
    axiom_document, condensation_document, discreteness_document, element_document,
    equality_document, error_document, lex_order_document, order_document, orbit_document,
    parse_element, parse_lex_order, parse_matrix, parse_order, parse_vector, sequence_document,
    to_output_string, verdict_document, with_schema,
};
use ordlab_core::{
    axiom_check, axiom_check_lex, condensation_sequence, lift_and_condense, ln_smoothness_probe,
    orbit_enumerate, ExactScalar, GroupDescriptor, GroupError, JsonError, LatticeOrder,
    LexGroupOrder, OrderError, ProbeError, Radicands, ScalarError,
};

const EXIT_SCHEMA: i32 = 2;
const EXIT_DOMAIN: i32 = 3;
const EXIT_VERIFY: i32 = 4;

/// Exact computations with left-invariant orders: classification,
/// transport, certificates, orbit listings, and axiom checks, all over
/// JSON documents.
#[derive(Parser)]
#[command(name = "ordlab", version)]
struct Cli {
    /// Also write the output document to this file.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a lattice vector or a group element against an order.
    Classify {
        /// Order document — a lattice order, or a group order when it
        /// carries a "group" field (path or inline JSON).
        #[arg(long)]
        order: String,
        /// What to classify: a vector (JSON array) for lattice orders, an
        /// element document for group orders.
        #[arg(long)]
        point: String,
    },
    /// Transport a lattice order by a unimodular matrix.
    Act {
        /// Lattice order document.
        #[arg(long)]
        order: String,
        /// Matrix document: an array of rows, or `{"rows": [...]}`.
        #[arg(long)]
        matrix: String,
    },
    /// Decide whether two order documents define the same order.
    Equal {
        /// First order document (lattice or group).
        #[arg(long)]
        left: String,
        /// Second order document of the same kind.
        #[arg(long)]
        right: String,
    },
    /// Produce a discreteness or condensation certificate.
    #[command(subcommand)]
    Probe(Probe),
    /// List the distinct conjugates of a group order over a word ball.
    Orbit {
        /// Group order document.
        #[arg(long)]
        order: String,
        /// Word-ball radius for the conjugators.
        #[arg(long)]
        radius: usize,
        /// Restrict conjugators to these named generators
        /// (comma-separated, e.g. `y1` or `b1,b2`).
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
    },
    /// Check trichotomy and positive-cone closure over a ball.
    Axioms {
        /// Order document (lattice or group).
        #[arg(long)]
        order: String,
        /// Euclidean ball radius for lattice orders, word-ball radius for
        /// group orders.
        #[arg(long)]
        radius: u32,
        /// Vector whose classification is negated before checking — a
        /// control showing violations are caught. Lattice orders only;
        /// repeatable.
        #[arg(long, value_name = "VECTOR")]
        flip: Vec<String>,
    },
    /// Group element arithmetic.
    #[command(subcommand)]
    Group(Group),
}

#[derive(Subcommand)]
enum Probe {
    /// Witness set certifying the order is isolated under the shear
    /// family, with an exhaustively verified box log.
    Discrete {
        /// Lattice order document; partial orders are fine.
        #[arg(long)]
        order: String,
        /// Half-width of the verified box of shear parameters.
        #[arg(long, default_value_t = 3)]
        verify_box: i64,
    },
    /// Conjugates of a base group order that stay inside shrinking
    /// neighborhoods of it while remaining distinct.
    Condense {
        /// Group order document replacing the standard base order on N.
        #[arg(long, conflicts_with_all = ["kernel", "radicands"])]
        order: Option<String>,
        /// Lattice order document replacing only the kernel factor of the
        /// standard base order.
        #[arg(long, conflicts_with = "radicands")]
        kernel: Option<String>,
        /// Radicands `d1,d2` for the default kernel functional
        /// `(sqrt d1, sqrt d2, 1)`.
        #[arg(long, value_delimiter = ',')]
        radicands: Option<Vec<u64>>,
        /// Number of samples; sample `j` is verified against the norm
        /// ball of radius `j`.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Run the construction on the unitriangular group of this size
        /// instead of N.
        #[arg(long, value_name = "K", conflicts_with_all = ["order", "kernel", "radicands", "count"])]
        triangular_size: Option<usize>,
        /// Neighborhood radius for the unitriangular construction.
        #[arg(long, default_value_t = 1, requires = "triangular_size", value_parser = clap::value_parser!(u32).range(1..))]
        radius: u32,
    },
}

#[derive(Subcommand)]
enum Group {
    /// Multiply two elements of the same group.
    Mul {
        /// Left element document.
        #[arg(long)]
        left: String,
        /// Right element document.
        #[arg(long)]
        right: String,
    },
    /// Transport a group order along conjugation by an element.
    Conj {
        /// Group order document.
        #[arg(long)]
        order: String,
        /// Conjugating element document.
        #[arg(long)]
        by: String,
    },
}

/// A failed command: exit code plus the error document for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    document: Value,
}

impl Failure {
    fn new(code: i32, kind: &str, message: impl fmt::Display) -> Failure {
        Failure {
            code,
            document: error_document(kind, &message.to_string()),
        }
    }

    fn domain(message: impl fmt::Display) -> Failure {
        Failure::new(EXIT_DOMAIN, "domain", message)
    }

    fn io(message: impl fmt::Display) -> Failure {
        Failure::new(EXIT_SCHEMA, "io", message)
    }
}

impl From<JsonError> for Failure {
    fn from(error: JsonError) -> Failure {
        match error {
            JsonError::Schema(_) => Failure::new(EXIT_SCHEMA, "schema", error),
            // Well-formed documents describing impossible objects.
            _ => Failure::domain(error),
        }
    }
}

impl From<ProbeError> for Failure {
    fn from(error: ProbeError) -> Failure {
        match error {
            ProbeError::InternalVerification { .. } => {
                Failure::new(EXIT_VERIFY, "verification", error)
            }
            _ => Failure::domain(error),
        }
    }
}

impl From<OrderError> for Failure {
    fn from(error: OrderError) -> Failure {
        Failure::domain(error)
    }
}

impl From<GroupError> for Failure {
    fn from(error: GroupError) -> Failure {
        Failure::domain(error)
    }
}

impl From<ScalarError> for Failure {
    fn from(error: ScalarError) -> Failure {
        Failure::domain(error)
    }
}

/// A successful command: the output document plus the exit code — axiom
/// reports are well-formed output even when they exit `4`.
struct Outcome {
    document: Value,
    code: i32,
}

fn ok(document: Value) -> Result<Outcome, Failure> {
    Ok(Outcome {
        document: with_schema(document),
        code: 0,
    })
}

fn main() {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let outcome = run(cli).unwrap_or_else(|failure| {
        eprint!("{}", to_output_string(&failure.document));
        process::exit(failure.code);
    });
    let text = to_output_string(&outcome.document);
    if let Some(path) = out {
        if let Err(error) = fs::write(&path, &text) {
            let failure = Failure::io(format!("cannot write {}: {error}", path.display()));
            eprint!("{}", to_output_string(&failure.document));
            process::exit(failure.code);
        }
    }
    print!("{text}");
    if outcome.code != 0 {
        process::exit(outcome.code);
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Classify { order, point } => {
            let order_value = load_value(&order)?;
            let point_value = load_value(&point)?;
            let (sign, level) = if is_group_document(&order_value) {
                let base = parse_lex_order(&order_value)?;
                let element = parse_element(&point_value)?;
                base.classify_with_level(&element)?
            } else {
                let base = parse_order(&order_value, true)?;
                let vector = parse_vector(&point_value, "point")?;
                base.classify_with_level(&vector)?
            };
            ok(verdict_document(sign, level))
        }
        Command::Act { order, matrix } => {
            let order_value = load_value(&order)?;
            if is_group_document(&order_value) {
                return Err(Failure::domain(
                    "act transports lattice orders; use `group conj` for group orders",
                ));
            }
            let base = parse_order(&order_value, true)?;
            let matrix = parse_matrix(&load_value(&matrix)?)?;
            ok(order_document(&base.act(&matrix)?))
        }
        Command::Equal { left, right } => {
            let left_value = load_value(&left)?;
            let right_value = load_value(&right)?;
            let equal = match (
                is_group_document(&left_value),
                is_group_document(&right_value),
            ) {
                (true, true) => {
                    parse_lex_order(&left_value)?.orders_equal(&parse_lex_order(&right_value)?)
                }
                (false, false) => {
                    parse_order(&left_value, true)?.orders_equal(&parse_order(&right_value, true)?)
                }
                _ => {
                    return Err(Failure::domain(
                        "cannot compare a lattice order with a group order",
                    ))
                }
            };
            ok(equality_document(equal))
        }
        Command::Probe(Probe::Discrete { order, verify_box }) => {
            let base = parse_order(&load_value(&order)?, true)?;
            let certificate = ln_smoothness_probe(&base, verify_box)?;
            ok(discreteness_document(&certificate))
        }
        Command::Probe(Probe::Condense {
            order,
            kernel,
            radicands,
            count,
            triangular_size,
            radius,
        }) => {
            if let Some(k) = triangular_size {
                let (_, sample) = lift_and_condense(k, radius)?;
                return ok(condensation_document(&sample));
            }
            let base = match order {
                Some(spec) => parse_lex_order(&load_value(&spec)?)?,
                None => standard_n_order(kernel.as_deref(), radicands)?,
            };
            let samples = condensation_sequence(&base, count as usize)?;
            if samples.len() == 1 {
                ok(condensation_document(&samples[0]))
            } else {
                ok(sequence_document(&samples))
            }
        }
        Command::Orbit {
            order,
            radius,
            generators,
        } => {
            let base = parse_lex_order(&load_value(&order)?)?;
            let listing = orbit_enumerate(&base, radius, generators.as_deref())?;
            ok(orbit_document(&listing))
        }
        Command::Axioms {
            order,
            radius,
            flip,
        } => {
            let order_value = load_value(&order)?;
            let report = if is_group_document(&order_value) {
                if !flip.is_empty() {
                    return Err(Failure::domain(
                        "--flip is a lattice-order control; group orders take none",
                    ));
                }
                axiom_check_lex(&parse_lex_order(&order_value)?, radius as usize)?
            } else {
                let base = parse_order(&order_value, true)?;
                let flips = flip
                    .iter()
                    .map(|spec| Ok(parse_vector(&load_value(spec)?, "flip vector")?))
                    .collect::<Result<Vec<_>, Failure>>()?;
                axiom_check(&base, radius, &flips)?
            };
            let code = if report.violations.is_empty() {
                0
            } else {
                EXIT_VERIFY
            };
            Ok(Outcome {
                document: with_schema(axiom_document(&report)),
                code,
            })
        }
        Command::Group(Group::Mul { left, right }) => {
            let left = parse_element(&load_value(&left)?)?;
            let right = parse_element(&load_value(&right)?)?;
            ok(element_document(&left.mul(&right)?))
        }
        Command::Group(Group::Conj { order, by }) => {
            let base = parse_lex_order(&load_value(&order)?)?;
            let element = parse_element(&load_value(&by)?)?;
            ok(lex_order_document(&base.conjugate(&element)?))
        }
    }
}

/// Document arguments are file paths, or inline JSON when they start
/// with `{` or `[`.
fn load_value(spec: &str) -> Result<Value, Failure> {
    let text = if spec.trim_start().starts_with(['{', '[']) {
        spec.to_string()
    } else {
        fs::read_to_string(spec)
            .map_err(|error| Failure::io(format!("cannot read {spec}: {error}")))?
    };
    serde_json::from_str(&text)
        .map_err(|error| Failure::new(EXIT_SCHEMA, "schema", format!("invalid JSON: {error}")))
}

/// Group documents are distinguished from lattice ones by their "group"
/// field.
fn is_group_document(value: &Value) -> bool {
    value
        .as_object()
        .is_some_and(|map| map.contains_key("group"))
}

/// The standard base order on N: coordinatewise quotient order on `Z^2`
/// and the kernel functional `(sqrt d1, sqrt d2, 1)` over the chosen
/// radicands (default `2,3`). A kernel document replaces the kernel
/// factor wholesale.
fn standard_n_order(
    kernel: Option<&str>,
    radicands: Option<Vec<u64>>,
) -> Result<LexGroupOrder, Failure> {
    let kernel_order = match kernel {
        Some(spec) => parse_order(&load_value(spec)?, true)?,
        None => {
            let values = radicands.unwrap_or_else(|| vec![2, 3]);
            if values.len() != 2 {
                return Err(Failure::domain(format!(
                    "the default kernel functional (sqrt d1, sqrt d2, 1) needs exactly two radicands, got {}",
                    values.len()
                )));
            }
            let basis = Radicands::new(values.clone())?;
            LatticeOrder::new(
                3,
                vec![vec![
                    ExactScalar::radical(basis.clone(), values[0])?,
                    ExactScalar::radical(basis.clone(), values[1])?,
                    ExactScalar::from_integer(basis, 1),
                ]],
            )?
        }
    };
    let rationals = Radicands::rationals();
    let unit = |v: i64| ExactScalar::from_integer(rationals.clone(), v);
    let quotient = LatticeOrder::new(
        2,
        vec![vec![unit(1), unit(0)], vec![unit(0), unit(1)]],
    )?;
    Ok(LexGroupOrder::new(
        GroupDescriptor::NGroup,
        vec![quotient, kernel_order],
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_documents_are_detected() {
        assert!(load_value("[1, 2]").is_ok());
        assert!(load_value("  {\"rank\": 2}").is_ok());
        let missing = load_value("no/such/file.json").unwrap_err();
        assert_eq!(missing.code, EXIT_SCHEMA);
    }

    #[test]
    fn group_documents_are_distinguished() {
        let lex: Value = serde_json::json!({ "group": "N", "factors": [] });
        let lattice: Value = serde_json::json!({ "rank": 2, "vectors": [] });
        assert!(is_group_document(&lex));
        assert!(!is_group_document(&lattice));
        assert!(!is_group_document(&serde_json::json!([1, 2])));
    }

    #[test]
    fn error_classes_map_to_the_exit_contract() {
        let schema = Failure::from(JsonError::Schema("missing field".into()));
        assert_eq!(schema.code, EXIT_SCHEMA);
        let domain = Failure::from(OrderError::LengthMismatch { got: 2, want: 3 });
        assert_eq!(domain.code, EXIT_DOMAIN);
        let verify = Failure::from(ProbeError::InternalVerification {
            detail: "test".into(),
        });
        assert_eq!(verify.code, EXIT_VERIFY);
    }

    #[test]
    fn the_standard_base_order_has_the_documented_kernel() {
        let base = standard_n_order(None, None).unwrap();
        assert_eq!(*base.descriptor(), GroupDescriptor::NGroup);
        let kernel = base.kernel_order();
        assert_eq!(kernel.rank(), 3);
        assert!(kernel.is_total());
        assert_eq!(kernel.basis().values(), &[2, 3]);
        // Alternative radicands swap in, same shape.
        let other = standard_n_order(None, Some(vec![2, 5])).unwrap();
        assert_eq!(other.kernel_order().basis().values(), &[2, 5]);
        // One radicand cannot fill the two radical slots.
        assert!(standard_n_order(None, Some(vec![2])).is_err());
    }
}
