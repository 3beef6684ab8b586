//! The `p1` command-line front end.
//!
//! Every command prints one JSON document (or DOT for `hasse --emit dot`)
//! on standard output. Exit codes: 0 on success, 1 on domain errors, 2 on
//! usage errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::FieldSpec;
use crate::kron::{indec_rep, kron_decompose, kron_iso_check, DKronObject, KronRep};
use crate::lattice::{classify_generators, hasse, join, meet, GenObject, LocClass};
use crate::pureinj::{left_perp, right_perp_family, PureInj, PureInjFamily};
use crate::sheaf::{cech_oracle, hom_dims, support, tensor, DObject, OracleKind, OracleOutput};
use crate::text::parse_kron_object;
use crate::tilt::{from_kronecker, to_kronecker};

#[derive(Parser, Debug)]
#[command(
    name = "p1",
    version,
    about = "Exact computations on the projective line and the Kronecker quiver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// A prime p for F_p, or Q.
    #[arg(long)]
    field: String,
    /// Seed for randomized verification.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graded Hom dimensions.
    Hom {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
    },
    /// Derived tensor product.
    Tensor {
        #[command(flatten)]
        common: Common,
        x: String,
        y: String,
    },
    /// Support as a set of points.
    Support {
        #[command(flatten)]
        common: Common,
        x: String,
    },
    /// Decompose a Kronecker representation given as JSON (literal or file).
    Decompose {
        #[command(flatten)]
        common: Common,
        rep: String,
        /// Rebuild from the summands and check the isomorphism.
        #[arg(long)]
        verify: bool,
    },
    /// Send a sheaf object to the Kronecker side.
    Tilt {
        #[command(flatten)]
        common: Common,
        x: String,
    },
    /// Send a Kronecker object back to sheaves.
    Untilt {
        #[command(flatten)]
        common: Common,
        m: String,
    },
    /// Smallest class containing the generators (objects or "PI:..." terms).
    Classify {
        #[command(flatten)]
        common: Common,
        generators: Vec<String>,
    },
    /// Join or meet of two classes.
    Lattice {
        #[command(flatten)]
        common: Common,
        op: LatticeOp,
        a: String,
        b: String,
    },
    /// Perpendicular classes and families.
    Perp {
        #[command(subcommand)]
        side: PerpSide,
    },
    /// Hasse diagram over a finite universe of points.
    Hasse {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        max_degree: usize,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        twist_min: i64,
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        twist_max: i64,
        #[arg(long, value_enum, default_value_t = Emit::Dot)]
        emit: Emit,
    },
    /// Independent truncated-model computation.
    Oracle {
        #[command(flatten)]
        common: Common,
        kind: Kind,
        x: String,
        y: String,
    },
}

#[derive(Subcommand, Debug)]
enum PerpSide {
    /// Left perpendicular of a pure-injective family given as JSON.
    Left {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        family: String,
    },
    /// Pure-injectives right perpendicular to a class.
    Right {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        class: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LatticeOp {
    Join,
    Meet,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Emit {
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Hom,
    Tensor,
}

fn object_json(x: &DObject) -> Value {
    let summands: Vec<Value> = x
        .summands()
        .map(|(s, c, m)| json!({"shift": s, "sheaf": c.to_string(), "mult": m}))
        .collect();
    json!({"object": x.to_string(), "summands": summands})
}

fn kron_object_json(m: &DKronObject) -> Value {
    let summands: Vec<Value> = m
        .terms
        .iter()
        .map(|((s, k), mult)| json!({"shift": s, "module": k.to_string(), "mult": mult}))
        .collect();
    json!({"object": m.to_string(), "summands": summands})
}

/// Reads a JSON argument given either literally or as a file path.
fn json_arg(text: &str) -> Result<Value> {
    let body = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(text)
            .map_err(|e| Error::Domain(format!("cannot read {text}: {e}")))?
    };
    serde_json::from_str(&body).map_err(|e| Error::Parse {
        pos: e.column().saturating_sub(1),
        msg: format!("invalid JSON: {e}"),
    })
}

fn generator(field: FieldSpec, text: &str) -> Result<GenObject> {
    if text.trim_start().starts_with("PI:") {
        GenObject::pure_injective(field, PureInj::parse(field, text)?)
    } else {
        Ok(GenObject::Compact(DObject::parse(field, text)?))
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn execute(command: Command) -> Result<Output> {
    let field = |c: &Common| FieldSpec::parse(&c.field);
    let out = match command {
        Command::Hom { common, x, y } => {
            let f = field(&common)?;
            hom_dims(&DObject::parse(f, &x)?, &DObject::parse(f, &y)?)?.to_json()
        }
        Command::Tensor { common, x, y } => {
            let f = field(&common)?;
            object_json(&tensor(&DObject::parse(f, &x)?, &DObject::parse(f, &y)?)?)
        }
        Command::Support { common, x } => support(&DObject::parse(field(&common)?, &x)?).to_json(),
        Command::Decompose {
            common,
            rep,
            verify,
        } => {
            let f = field(&common)?;
            let m = KronRep::from_json(&json_arg(&rep)?)?;
            if m.field != f {
                return Err(Error::FieldMismatch(f, m.field));
            }
            let parts = kron_decompose(&m)?;
            let summands: Vec<Value> = parts.iter().map(|(k, n)| k.to_json(*n)).collect();
            let mut out = json!({"summands": summands});
            if verify {
                let mut blocks = Vec::new();
                for (k, n) in &parts {
                    let r = indec_rep(f, k)?;
                    blocks.extend(std::iter::repeat_n(r, *n));
                }
                let rebuilt = KronRep::direct_sum(f, &blocks);
                out["verified"] = json!(kron_iso_check(&m, &rebuilt, common.seed)?);
            }
            out
        }
        Command::Tilt { common, x } => {
            kron_object_json(&to_kronecker(&DObject::parse(field(&common)?, &x)?))
        }
        Command::Untilt { common, m } => {
            object_json(&from_kronecker(&parse_kron_object(field(&common)?, &m)?))
        }
        Command::Classify { common, generators } => {
            let f = field(&common)?;
            let gens = generators
                .iter()
                .map(|g| generator(f, g))
                .collect::<Result<Vec<_>>>()?;
            classify_generators(&gens)?.to_json()
        }
        Command::Lattice { common, op, a, b } => {
            let f = field(&common)?;
            let (a, b) = (LocClass::parse(f, &a)?, LocClass::parse(f, &b)?);
            match op {
                LatticeOp::Join => join(&a, &b),
                LatticeOp::Meet => meet(&a, &b),
            }
            .to_json()
        }
        Command::Perp {
            side: PerpSide::Left { common, family },
        } => {
            let fam = PureInjFamily::from_json(field(&common)?, &json_arg(&family)?)?;
            left_perp(&fam).to_json()
        }
        Command::Perp {
            side: PerpSide::Right { common, class },
        } => right_perp_family(&LocClass::parse(field(&common)?, &class)?).to_json(),
        Command::Hasse {
            common,
            max_degree,
            twist_min,
            twist_max,
            emit,
        } => {
            let g = hasse(field(&common)?, max_degree, twist_min, twist_max)?;
            match emit {
                Emit::Dot => return Ok(Output::Text(g.to_dot())),
                Emit::Json => g.to_json(),
            }
        }
        Command::Oracle { common, kind, x, y } => {
            let f = field(&common)?;
            let kind = match kind {
                Kind::Hom => OracleKind::Hom,
                Kind::Tensor => OracleKind::Tensor,
            };
            match cech_oracle(kind, &DObject::parse(f, &x)?, &DObject::parse(f, &y)?)? {
                OracleOutput::Dims(d) => d.to_json(),
                OracleOutput::Object(o) => object_json(&o),
            }
        }
    };
    Ok(Output::Json(out))
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command) {
        Ok(Output::Json(v)) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Ok(Output::Text(t)) => {
            let _ = write!(out, "{t}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
