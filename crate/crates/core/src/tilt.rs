//! The tilting dictionary `RHom(O + O(1), -)` between sheaves on P^1 and
//! Kronecker representations.
//!
//! The source vertex carries `Hom(O(1), -)` and the target vertex
//! `Hom(O, -)`; the two arrows are the sections `u, v` of `O(1)`.
//! Line bundles `O(i)` with `i <= -1` only have `Ext^1` against the tilting
//! object and land one degree lower.

use std::collections::HashMap;

use crate::error::Result;
use crate::exact::{enumerate_points, FieldSpec};
use crate::kron::{indec_rep, kron_hom, DKronObject, KronIndec, KronRep};
use crate::sheaf::{hom_dims, CohIndec, DObject, GradedDims};

pub fn indec_to_kronecker(c: &CohIndec) -> (i64, KronIndec) {
    match c {
        CohIndec::Twist(i) if *i >= 0 => (0, KronIndec::Preproj(*i as u32)),
        CohIndec::Twist(i) => (-1, KronIndec::Preinj((-i - 1) as u32)),
        CohIndec::Torsion(x, l) => (0, KronIndec::Regular(x.clone(), *l)),
    }
}

pub fn indec_from_kronecker(k: &KronIndec) -> (i64, CohIndec) {
    match k {
        KronIndec::Preproj(n) => (0, CohIndec::Twist(*n as i64)),
        KronIndec::Preinj(n) => (1, CohIndec::Twist(-(*n as i64) - 1)),
        KronIndec::Regular(x, l) => (0, CohIndec::Torsion(x.clone(), *l)),
    }
}

pub fn to_kronecker(x: &DObject) -> DKronObject {
    let mut out = DKronObject::zero(x.field);
    for (s, c, m) in x.summands() {
        let (ds, k) = indec_to_kronecker(c);
        out.add(s + ds, k, m);
    }
    out
}

pub fn from_kronecker(m: &DKronObject) -> DObject {
    let mut out = DObject::zero(m.field);
    for ((s, k), mult) in &m.terms {
        let (ds, c) = indec_from_kronecker(k);
        out.add_term(s + ds, c, *mult)
            .expect("regular points carry the field of their representation");
    }
    out
}

/// Graded Hom dimensions between derived Kronecker objects, by solving the
/// intertwining systems of the canonical models.
pub fn kron_hom_dims(m: &DKronObject, n: &DKronObject) -> Result<GradedDims> {
    let mut cache: HashMap<&KronIndec, KronRep> = HashMap::new();
    for (_, k) in m.terms.keys().chain(n.terms.keys()) {
        if !cache.contains_key(k) {
            cache.insert(k, indec_rep(m.field, k)?);
        }
    }
    let mut out = GradedDims::default();
    for ((a, p), mp) in &m.terms {
        for ((b, q), mq) in &n.terms {
            let h = kron_hom(&cache[p], &cache[q])?;
            out.add(a - b, mp * mq * h.hom_dim);
            out.add(a - b + 1, mp * mq * h.ext1_dim);
        }
    }
    Ok(out)
}

/// A finite family of degree-zero indecomposable sheaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub field: FieldSpec,
    pub twists: Vec<i64>,
    pub max_length: u32,
    pub max_degree: usize,
}

impl Grid {
    pub fn new(field: FieldSpec, twist_bound: i64, max_length: u32, max_degree: usize) -> Self {
        Grid {
            field,
            twists: (-twist_bound..=twist_bound).collect(),
            max_length,
            max_degree,
        }
    }

    pub fn empty(field: FieldSpec) -> Self {
        Grid {
            field,
            twists: Vec::new(),
            max_length: 0,
            max_degree: 0,
        }
    }

    pub fn objects(&self) -> Result<Vec<CohIndec>> {
        let mut out: Vec<CohIndec> = self.twists.iter().map(|i| CohIndec::Twist(*i)).collect();
        if self.max_length > 0 && self.max_degree > 0 {
            for x in enumerate_points(self.field, self.max_degree)? {
                for l in 1..=self.max_length {
                    out.push(CohIndec::Torsion(x.clone(), l));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub source: CohIndec,
    pub target: CohIndec,
    pub sheaf_side: GradedDims,
    pub kronecker_side: GradedDims,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DictionaryReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

/// Compares the closed-form Hom table with Kronecker Hom spaces of the
/// images, for every ordered pair in the grid.
pub fn verify_dictionary(grid: &Grid) -> Result<DictionaryReport> {
    let objects = grid.objects()?;
    let mut report = DictionaryReport::default();
    let f = grid.field;
    let images: Vec<DKronObject> = objects
        .iter()
        .map(|c| DObject::indec(f, c.clone()).map(|x| to_kronecker(&x)))
        .collect::<Result<_>>()?;
    let reps: Vec<(i64, KronRep)> = images
        .iter()
        .map(|m| {
            let ((s, k), _) = m.terms.iter().next().unwrap();
            indec_rep(f, k).map(|r| (*s, r))
        })
        .collect::<Result<_>>()?;
    for (i, u) in objects.iter().enumerate() {
        for (j, v) in objects.iter().enumerate() {
            let x = DObject::indec(f, u.clone())?;
            let y = DObject::indec(f, v.clone())?;
            let sheaf_side = hom_dims(&x, &y)?;
            let ((a, p), (b, q)) = (&reps[i], &reps[j]);
            let h = kron_hom(p, q)?;
            let mut kronecker_side = GradedDims::default();
            kronecker_side.add(a - b, h.hom_dim);
            kronecker_side.add(a - b + 1, h.ext1_dim);
            report.pairs_checked += 1;
            if sheaf_side != kronecker_side {
                report.mismatches.push(Mismatch {
                    source: u.clone(),
                    target: v.clone(),
                    sheaf_side,
                    kronecker_side,
                });
            }
        }
    }
    Ok(report)
}
