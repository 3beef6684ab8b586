//! Indecomposable pure-injective objects and the perpendicular calculus
//! between them and the localizing classes.
//!
//! The indecomposable pure-injectives are the indecomposable coherent
//! sheaves, the Prufer sheaves `E(x)`, the adic sheaves `A(x)` and the
//! sheaf of rational functions. There are no continuous ones, so families
//! of indecomposables describe every cohomological class.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ClosedPoint, ClosedPoints, FieldSpec, PointSet};
use crate::lattice::{meet, LocClass};
use crate::sheaf::{hom_dims, CohIndec, DObject};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PureInj {
    CohPI(CohIndec),
    Prufer(ClosedPoint),
    Adic(ClosedPoint),
    Generic,
}

impl PureInj {
    pub fn field(&self) -> Option<FieldSpec> {
        match self {
            PureInj::CohPI(c) => c.point().and_then(ClosedPoint::field),
            PureInj::Prufer(x) | PureInj::Adic(x) => x.field(),
            PureInj::Generic => None,
        }
    }

    pub fn parse(field: FieldSpec, text: &str) -> Result<Self> {
        crate::text::parse_pure_inj(field, text)
    }
}

impl fmt::Display for PureInj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PureInj::CohPI(c) => write!(f, "PI:{c}"),
            PureInj::Prufer(x) => write!(f, "PI:Prufer({x})"),
            PureInj::Adic(x) => write!(f, "PI:Adic({x})"),
            PureInj::Generic => write!(f, "PI:Generic"),
        }
    }
}

pub fn supp_pi(y: &PureInj) -> PointSet {
    match y {
        PureInj::CohPI(CohIndec::Twist(_)) => PointSet::full(),
        PureInj::CohPI(CohIndec::Torsion(x, _)) | PureInj::Prufer(x) => PointSet::single(x.clone()),
        PureInj::Adic(x) => PointSet::new(ClosedPoints::finite([x.clone()]), true),
        PureInj::Generic => PointSet::generic(),
    }
}

fn check_field(c: &DObject, y: &PureInj) -> Result<()> {
    match y.field() {
        Some(f) if f != c.field => Err(Error::FieldMismatch(c.field, f)),
        _ => Ok(()),
    }
}

fn indec_vanishes(field: FieldSpec, s: &CohIndec, y: &PureInj) -> Result<bool> {
    Ok(match (s, y) {
        (_, PureInj::CohPI(g)) => {
            let src = DObject::indec(field, s.clone())?;
            let tgt = DObject::indec(field, g.clone())?;
            hom_dims(&src, &tgt)?.is_zero()
        }
        (CohIndec::Twist(_), _) => false,
        (CohIndec::Torsion(p, _), PureInj::Prufer(x) | PureInj::Adic(x)) => p != x,
        (CohIndec::Torsion(..), PureInj::Generic) => true,
    })
}

/// Whether `Hom(C, S^j Y) = 0` for every `j`.
pub fn hom_vanishes(c: &DObject, y: &PureInj) -> Result<bool> {
    check_field(c, y)?;
    for (_, s, _) in c.summands() {
        if !indec_vanishes(c.field, s, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every object of the localizing subcategory generated by the
/// sheaf of rational functions has no maps to any suspension of `Y`.
fn generic_vanishes(y: &PureInj) -> bool {
    matches!(y, PureInj::CohPI(CohIndec::Torsion(..)) | PureInj::Adic(_))
}

/// Whether `Hom(G, S^j Y) = 0` for all `j` and every `G` in the localizing
/// subcategory generated by `g`. A Prufer sheaf generates the same
/// subcategory as the residue field at its point; an adic sheaf the same
/// as that residue field together with the rational functions.
pub fn loc_vanishes(field: FieldSpec, g: &PureInj, y: &PureInj) -> Result<bool> {
    let residue = |x: &ClosedPoint| DObject::torsion(field, x.clone(), 1);
    match g {
        PureInj::CohPI(c) => hom_vanishes(&DObject::indec(field, c.clone())?, y),
        PureInj::Prufer(x) => hom_vanishes(&residue(x)?, y),
        PureInj::Adic(x) => Ok(hom_vanishes(&residue(x)?, y)? && generic_vanishes(y)),
        PureInj::Generic => Ok(generic_vanishes(y)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LineBundles {
    Finite(BTreeSet<i64>),
    All,
}

impl LineBundles {
    pub fn contains(&self, i: i64) -> bool {
        match self {
            LineBundles::Finite(s) => s.contains(&i),
            LineBundles::All => true,
        }
    }

    pub fn is_subset(&self, other: &LineBundles) -> bool {
        match (self, other) {
            (_, LineBundles::All) => true,
            (LineBundles::All, LineBundles::Finite(_)) => false,
            (LineBundles::Finite(a), LineBundles::Finite(b)) => a.is_subset(b),
        }
    }
}

/// A possibly infinite set of indecomposable pure-injectives. Torsion
/// membership at a point covers every length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureInjFamily {
    pub line_bundles: LineBundles,
    pub torsion_at: ClosedPoints,
    pub prufer_at: ClosedPoints,
    pub adic_at: ClosedPoints,
    pub generic: bool,
}

impl PureInjFamily {
    pub fn empty() -> Self {
        PureInjFamily {
            line_bundles: LineBundles::Finite(BTreeSet::new()),
            torsion_at: ClosedPoints::empty(),
            prufer_at: ClosedPoints::empty(),
            adic_at: ClosedPoints::empty(),
            generic: false,
        }
    }

    /// Every indecomposable pure-injective.
    pub fn everything() -> Self {
        PureInjFamily {
            line_bundles: LineBundles::All,
            torsion_at: ClosedPoints::all(),
            prufer_at: ClosedPoints::all(),
            adic_at: ClosedPoints::all(),
            generic: true,
        }
    }

    pub fn line_bundle(i: i64) -> Self {
        PureInjFamily {
            line_bundles: LineBundles::Finite(BTreeSet::from([i])),
            ..PureInjFamily::empty()
        }
    }

    pub fn contains(&self, y: &PureInj) -> bool {
        match y {
            PureInj::CohPI(CohIndec::Twist(i)) => self.line_bundles.contains(*i),
            PureInj::CohPI(CohIndec::Torsion(x, _)) => self.torsion_at.contains(x),
            PureInj::Prufer(x) => self.prufer_at.contains(x),
            PureInj::Adic(x) => self.adic_at.contains(x),
            PureInj::Generic => self.generic,
        }
    }

    pub fn is_subset(&self, other: &PureInjFamily) -> bool {
        self.line_bundles.is_subset(&other.line_bundles)
            && self.torsion_at.is_subset(&other.torsion_at)
            && self.prufer_at.is_subset(&other.prufer_at)
            && self.adic_at.is_subset(&other.adic_at)
            && (!self.generic || other.generic)
    }

    pub fn to_json(&self) -> Value {
        let lines = match &self.line_bundles {
            LineBundles::Finite(s) => json!(s.iter().collect::<Vec<_>>()),
            LineBundles::All => json!("all"),
        };
        json!({
            "line_bundles": lines,
            "torsion_at": self.torsion_at.to_json(),
            "prufer_at": self.prufer_at.to_json(),
            "adic_at": self.adic_at.to_json(),
            "generic": self.generic,
        })
    }

    pub fn from_json(field: FieldSpec, v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse {
            pos: 0,
            msg: format!("family JSON: bad {what}"),
        };
        let line_bundles = match v.get("line_bundles") {
            None => LineBundles::Finite(BTreeSet::new()),
            Some(Value::String(s)) if s == "all" => LineBundles::All,
            Some(Value::Array(xs)) => LineBundles::Finite(
                xs.iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("line_bundles")))
                    .collect::<Result<_>>()?,
            ),
            Some(_) => return Err(bad("line_bundles")),
        };
        let points = |key: &str| match v.get(key) {
            None => Ok(ClosedPoints::empty()),
            Some(p) => ClosedPoints::from_json(field, p),
        };
        let generic = match v.get("generic") {
            None => false,
            Some(g) => g.as_bool().ok_or_else(|| bad("generic"))?,
        };
        Ok(PureInjFamily {
            line_bundles,
            torsion_at: points("torsion_at")?,
            prufer_at: points("prufer_at")?,
            adic_at: points("adic_at")?,
            generic,
        })
    }
}

/// The class of objects with no maps to any suspension of any member.
pub fn left_perp(f: &PureInjFamily) -> LocClass {
    let removed = f.torsion_at.union(&f.prufer_at).union(&f.adic_at);
    let drop_eta = f.generic || !f.prufer_at.is_empty();
    let ideal = LocClass::Ideal(PointSet::new(removed.complement(), !drop_eta));
    let twists = match &f.line_bundles {
        LineBundles::All => return LocClass::zero(),
        LineBundles::Finite(s) => s,
    };
    twists
        .iter()
        .map(|i| LocClass::Twist(i + 1))
        .fold(ideal, |acc, t| meet(&acc, &t))
}

/// The indecomposable pure-injectives right orthogonal to a class.
pub fn right_perp_family(l: &LocClass) -> PureInjFamily {
    match l {
        LocClass::Twist(i) => PureInjFamily::line_bundle(i - 1),
        _ if l.is_zero() => PureInjFamily::everything(),
        _ if l.is_full() => PureInjFamily::empty(),
        LocClass::Ideal(v) => {
            let outside = v.closed.complement();
            if v.eta {
                PureInjFamily {
                    torsion_at: outside.clone(),
                    adic_at: outside,
                    ..PureInjFamily::empty()
                }
            } else {
                PureInjFamily {
                    torsion_at: outside.clone(),
                    prufer_at: outside.clone(),
                    adic_at: outside,
                    generic: true,
                    ..PureInjFamily::empty()
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationVerdict {
    /// Every stage in the window has vanishing Hom in all degrees.
    pub verdict: bool,
    /// The vanishing pattern is constant across the window.
    pub stabilized: bool,
    /// The value of `hom_vanishes` for the same pair.
    pub rule: bool,
}

/// Approximates a Prufer or adic sheaf at `x` by the torsion sheaves
/// `T(x, n)`, `n <= stages`, and inspects Hom vanishing on the last three
/// stages. Advisory only: compact objects need not commute with the limits
/// involved in general.
pub fn truncation_oracle(c: &DObject, y: &PureInj, stages: u32) -> Result<TruncationVerdict> {
    let x = match y {
        PureInj::Prufer(x) | PureInj::Adic(x) => x,
        _ => return Err(Error::Domain(format!("{y} is not a Prufer or adic sheaf"))),
    };
    if stages < 2 {
        return Err(Error::Domain(format!("stage bound {stages} is below 2")));
    }
    check_field(c, y)?;
    let mut pattern = Vec::new();
    for n in 1..=stages {
        let stage = DObject::torsion(c.field, x.clone(), n)?;
        pattern.push(hom_dims(c, &stage)?.is_zero());
    }
    let lo = stages.saturating_sub(2).max(1) as usize;
    let window = &pattern[lo - 1..];
    Ok(TruncationVerdict {
        verdict: window.iter().all(|v| *v),
        stabilized: window.iter().all(|v| *v == window[0]),
        rule: hom_vanishes(c, y)?,
    })
}
