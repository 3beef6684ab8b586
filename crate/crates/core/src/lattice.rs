//! The lattice of cohomological localizing subcategories of the derived
//! category of quasi-coherent sheaves on P^1: the tensor ideals, indexed by
//! arbitrary subsets of P^1 (here finite/cofinite ones), glued at top and
//! bottom to one extra class `Loc(O(i))` per integer `i`.
//!
//! Only this cohomological lattice is computed; whether every localizing
//! subcategory is cohomological is left open.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{
    enumerate_points, unify_fields, ClosedPoint, ClosedPoints, FieldSpec, PointSet,
};
use crate::pureinj::{supp_pi, PureInj};
use crate::sheaf::{support, CohIndec, DObject};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LocClass {
    /// `Loc(O(i))`, the only classes that are not tensor ideals.
    Twist(i64),
    /// Objects supported in the given set.
    Ideal(PointSet),
}

impl LocClass {
    pub fn zero() -> Self {
        LocClass::Ideal(PointSet::empty())
    }

    pub fn full() -> Self {
        LocClass::Ideal(PointSet::full())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LocClass::Ideal(v) if v.is_empty())
    }

    pub fn is_full(&self) -> bool {
        matches!(self, LocClass::Ideal(v) if v.is_full())
    }

    /// Inclusion order.
    pub fn le(&self, other: &LocClass) -> bool {
        use LocClass::*;
        match (self, other) {
            (Ideal(v), Ideal(w)) => v.is_subset(w),
            (Twist(i), Twist(j)) => i == j,
            (Twist(_), Ideal(w)) => w.is_full(),
            (Ideal(v), Twist(_)) => v.is_empty(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            LocClass::Twist(i) => json!({"kind": "twist", "i": i}),
            LocClass::Ideal(v) => {
                let mut obj = json!({"kind": "ideal", "points": v.to_json()});
                if self.is_zero() {
                    obj["note"] = json!("Zero");
                } else if self.is_full() {
                    obj["note"] = json!("Full");
                }
                obj
            }
        }
    }

    pub fn from_json(field: FieldSpec, v: &Value) -> Result<Self> {
        match v.get("kind").and_then(Value::as_str) {
            Some("twist") => v
                .get("i")
                .and_then(Value::as_i64)
                .map(LocClass::Twist)
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("bad twist class JSON {v}"),
                }),
            Some("ideal") => {
                let points = v.get("points").ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("bad ideal class JSON {v}"),
                })?;
                Ok(LocClass::Ideal(PointSet::from_json(field, points)?))
            }
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("bad class JSON {v}"),
            }),
        }
    }

    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        crate::text::parse_loc_class(field, text)
    }
}

impl fmt::Display for LocClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |pts: &[ClosedPoint]| {
            pts.iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            LocClass::Twist(i) => write!(f, "Twist({i})"),
            _ if self.is_zero() => write!(f, "Zero"),
            _ if self.is_full() => write!(f, "Full"),
            LocClass::Ideal(v) => {
                match &v.closed {
                    ClosedPoints::Finite(p) => write!(f, "Ideal{{{}}}", list(p))?,
                    ClosedPoints::Cofinite(p) if p.is_empty() => write!(f, "Ideal{{*}}")?,
                    ClosedPoints::Cofinite(p) => write!(f, "Ideal{{* - {}}}", list(p))?,
                }
                if v.eta {
                    write!(f, "+eta")?;
                }
                Ok(())
            }
        }
    }
}

pub fn join(a: &LocClass, b: &LocClass) -> LocClass {
    use LocClass::*;
    match (a, b) {
        (Ideal(v), Ideal(w)) => Ideal(v.union(w)),
        (Twist(i), Twist(j)) if i == j => Twist(*i),
        (Twist(_), Twist(_)) => LocClass::full(),
        (Twist(i), Ideal(v)) | (Ideal(v), Twist(i)) => {
            if v.is_empty() {
                Twist(*i)
            } else {
                LocClass::full()
            }
        }
    }
}

pub fn meet(a: &LocClass, b: &LocClass) -> LocClass {
    use LocClass::*;
    match (a, b) {
        (Ideal(v), Ideal(w)) => Ideal(v.intersect(w)),
        (Twist(i), Twist(j)) if i == j => Twist(*i),
        (Twist(_), Twist(_)) => LocClass::zero(),
        (Twist(i), Ideal(v)) | (Ideal(v), Twist(i)) => {
            if v.is_full() {
                Twist(*i)
            } else {
                LocClass::zero()
            }
        }
    }
}

pub fn is_ideal(l: &LocClass) -> bool {
    matches!(l, LocClass::Ideal(_))
}

/// Smashing classes: the twists, and the ideals of sets of closed points
/// together with the whole line.
pub fn is_smashing(l: &LocClass) -> bool {
    match l {
        LocClass::Twist(_) => true,
        LocClass::Ideal(v) => !v.eta || v.is_full(),
    }
}

/// The right orthogonal of a smashing class, which is again a class.
pub fn right_orthogonal_class(l: &LocClass) -> Result<LocClass> {
    match l {
        LocClass::Twist(i) => Ok(LocClass::Twist(i - 1)),
        LocClass::Ideal(v) if is_smashing(l) => Ok(LocClass::Ideal(v.complement())),
        _ => Err(Error::Unsupported(format!(
            "{l} is not smashing; its right orthogonal is a family of pure-injectives"
        ))),
    }
}

/// A generator of a localizing subcategory: a compact object, or one of
/// the non-coherent indecomposable pure-injectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GenObject {
    Compact(DObject),
    PI(PureInj),
}

impl GenObject {
    /// Wraps a pure-injective, sending coherent ones to the compact side.
    pub fn pure_injective(field: FieldSpec, y: PureInj) -> Result<Self> {
        match y {
            PureInj::CohPI(c) => Ok(GenObject::Compact(DObject::indec(field, c)?)),
            other => Ok(GenObject::PI(other)),
        }
    }

    fn field(&self) -> Option<FieldSpec> {
        match self {
            GenObject::Compact(x) => Some(x.field),
            GenObject::PI(y) => y.field(),
        }
    }

    pub fn class(&self) -> LocClass {
        match self {
            GenObject::Compact(x) => compact_class(x),
            GenObject::PI(y) => LocClass::Ideal(supp_pi(y)),
        }
    }
}

fn compact_class(x: &DObject) -> LocClass {
    let mut twist = None;
    for (_, c, _) in x.summands() {
        match (c, twist) {
            (CohIndec::Twist(i), None) => twist = Some(*i),
            (CohIndec::Twist(i), Some(j)) if *i == j => {}
            _ if twist.is_some() => return LocClass::full(),
            (CohIndec::Torsion(..), None) => {
                if x.summands()
                    .any(|(_, c, _)| matches!(c, CohIndec::Twist(_)))
                {
                    return LocClass::full();
                }
                return LocClass::Ideal(support(x));
            }
            _ => unreachable!(),
        }
    }
    match twist {
        Some(i) => LocClass::Twist(i),
        None => LocClass::zero(),
    }
}

/// The smallest class containing every generator.
pub fn classify_generators(gens: &[GenObject]) -> Result<LocClass> {
    unify_fields(gens.iter().filter_map(GenObject::field))?;
    Ok(gens
        .iter()
        .map(GenObject::class)
        .fold(LocClass::zero(), |acc, c| join(&acc, &c)))
}

pub fn member(x: &DObject, l: &LocClass) -> bool {
    match l {
        LocClass::Twist(i) => x.summands().all(|(_, c, _)| *c == CohIndec::Twist(*i)),
        LocClass::Ideal(v) => support(x).is_subset(v),
    }
}

/// Cover relations of the lattice over a finite universe of points,
/// with edges from the smaller to the larger class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HasseGraph {
    pub nodes: Vec<LocClass>,
    pub edges: Vec<(usize, usize)>,
}

/// Largest universe (closed points plus the generic point) for `hasse`.
pub const HASSE_MAX_ELEMENTS: usize = 16;

pub fn hasse(
    field: FieldSpec,
    max_degree: usize,
    twist_min: i64,
    twist_max: i64,
) -> Result<HasseGraph> {
    if field == FieldSpec::Rationals {
        return Err(Error::Unsupported(
            "Hasse diagrams need a finite field".into(),
        ));
    }
    let points = enumerate_points(field, max_degree)?;
    let n = points.len() + 1;
    if n > HASSE_MAX_ELEMENTS {
        return Err(Error::Unsupported(format!(
            "{n} points exceed the Hasse universe limit of {HASSE_MAX_ELEMENTS}"
        )));
    }
    // Bit k < n - 1 selects points[k]; the top bit is the generic point.
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut index = vec![0usize; 1 << n];
    let mut nodes = Vec::with_capacity(masks.len());
    for (i, m) in masks.iter().enumerate() {
        index[*m as usize] = i;
        let chosen = (0..n - 1)
            .filter(|k| m & (1 << k) != 0)
            .map(|k| points[k].clone());
        let set = PointSet::new(ClosedPoints::finite(chosen), m & (1 << (n - 1)) != 0);
        let all = *m == (1u32 << n) - 1;
        nodes.push(if all {
            LocClass::full()
        } else {
            LocClass::Ideal(set)
        });
    }
    let mut edges = Vec::new();
    for m in &masks {
        for k in 0..n {
            if m & (1 << k) == 0 {
                edges.push((index[*m as usize], index[(m | (1 << k)) as usize]));
            }
        }
    }
    let (bottom, top) = (index[0], index[(1usize << n) - 1]);
    for i in twist_min..=twist_max {
        let t = nodes.len();
        nodes.push(LocClass::Twist(i));
        edges.push((bottom, t));
        edges.push((t, top));
    }
    Ok(HasseGraph { nodes, edges })
}

impl HasseGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, c) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{c}\"];\n"));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nodes": self.nodes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }
}
