use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{hom_basis, random_scalar, KronIndec, KronRep};
use crate::error::{Error, Result};
use crate::exact::{intersect, poly_factor, preimage, ClosedPoint, Matrix};

/// Stable limit of `V_0 = all, V_{i+1} = B^-1(A V_i)`; spans the source
/// spaces of the preinjective and finite regular blocks.
fn wong_down(m: &KronRep) -> Matrix {
    let mut v = Matrix::identity(m.field, m.d_src());
    loop {
        let next = preimage(&m.b, &m.a.mul(&v));
        if next.cols() == v.cols() {
            return v;
        }
        v = next;
    }
}

/// The chain `W_0 = 0, W_{i+1} = A^-1(B W_i)` up to its stable limit, which
/// spans the source spaces of the preinjective and infinite regular blocks.
fn wong_up(m: &KronRep) -> Vec<Matrix> {
    let mut chain = vec![Matrix::zeros(m.field, m.d_src(), 0)];
    loop {
        let last = chain.last().unwrap();
        let next = preimage(&m.a, &m.b.mul(last));
        if next.cols() == last.cols() {
            return chain;
        }
        chain.push(next);
    }
}

fn span_dim(a: &Matrix, b: &Matrix) -> usize {
    a.hstack(b).rank()
}

/// `dim Hom(P(n), M)`: length-`n` source sequences with `A v_i = B v_{i-1}`.
fn preproj_hom_dim(m: &KronRep, n: usize) -> usize {
    let (ds, dt) = m.dims();
    if n == 0 {
        return dt;
    }
    if n == 1 || ds == 0 {
        return n * ds;
    }
    let mut sys = Matrix::zeros(m.field, (n - 1) * dt, n * ds);
    let neg_b = m.b.scale(&-m.field.one());
    for i in 1..n {
        sys.paste((i - 1) * dt, i * ds, &m.a);
        sys.paste((i - 1) * dt, (i - 1) * ds, &neg_b);
    }
    n * ds - sys.rank()
}

/// Multiplicities of preprojective summands, read off the second
/// differences of `n -> dim Hom(P(n), M)`.
fn preproj_mults(m: &KronRep) -> Vec<(u32, usize)> {
    let down = wong_down(m);
    let up = wong_up(m);
    let other = span_dim(&down, up.last().unwrap());
    let src_dim = m.d_src() - other;
    let h: Vec<usize> = (0..=src_dim + 2).map(|n| preproj_hom_dim(m, n)).collect();
    (0..=src_dim)
        .filter_map(|n| {
            let d = h[n] as i64 - 2 * h[n + 1] as i64 + h[n + 2] as i64;
            (d > 0).then_some((n as u32, d as usize))
        })
        .collect()
}

/// Multiplicities from the counts `c[j-1] = #{blocks of length >= j}`.
fn lengths_from_counts(c: &[usize]) -> Vec<(u32, usize)> {
    (0..c.len())
        .filter_map(|j| {
            let next = c.get(j + 1).copied().unwrap_or(0);
            (c[j] > next).then_some((j as u32 + 1, c[j] - next))
        })
        .collect()
}

/// Matrices of `A` and `B` on the quotient of the subrepresentation
/// spanned by the preinjective and finite regular blocks by its preinjective
/// part. `A` is invertible there.
fn finite_regular_part(m: &KronRep, down: &Matrix, up_limit: &Matrix) -> Result<(Matrix, Matrix)> {
    let inj_src = intersect(down, up_limit);
    let img = m.a.mul(down).column_basis();
    let inj_tgt = m.a.mul(&inj_src).hstack(&m.b.mul(&inj_src)).column_basis();
    let src = inj_src.hstack(down).column_basis();
    let tgt = inj_tgt.hstack(&img).column_basis();
    let (s0, t0) = (inj_src.cols(), inj_tgt.cols());
    let comp = src.submatrix(0..src.rows(), s0..src.cols());
    let r = comp.cols();
    if tgt.cols() - t0 != r {
        return Err(Error::Internal("finite regular part is not square".into()));
    }
    let coords = |x: &Matrix| -> Result<Matrix> {
        let c = tgt
            .solve_matrix(x)?
            .ok_or_else(|| Error::Internal("image leaves the regular span".into()))?;
        Ok(c.submatrix(t0..tgt.cols(), 0..r))
    };
    Ok((coords(&m.a.mul(&comp))?, coords(&m.b.mul(&comp))?))
}

/// Decomposes a representation into indecomposables with multiplicities,
/// sorted canonically.
pub fn kron_decompose(m: &KronRep) -> Result<Vec<(KronIndec, usize)>> {
    let mut out: Vec<(KronIndec, usize)> = Vec::new();
    for (n, k) in preproj_mults(m) {
        out.push((KronIndec::Preproj(n), k));
    }
    let inj = preproj_mults(&m.dual());
    for (n, k) in &inj {
        out.push((KronIndec::Preinj(*n), *k));
    }

    // Infinite regular blocks: each preinjective I(n) adds one to the first
    // n + 1 steps of the upward chain, each R(inf, l) to the first l steps.
    let up = wong_up(m);
    let counts: Vec<usize> = (1..up.len())
        .map(|i| {
            let step = up[i].cols() - up[i - 1].cols();
            let from_inj: usize = inj
                .iter()
                .filter(|(n, _)| *n as usize + 1 >= i)
                .map(|(_, k)| k)
                .sum();
            step.checked_sub(from_inj)
                .ok_or_else(|| Error::Internal("inconsistent upward chain".into()))
        })
        .collect::<Result<_>>()?;
    for (l, k) in lengths_from_counts(&counts) {
        out.push((KronIndec::Regular(ClosedPoint::AtInfinity, l), k));
    }

    let down = wong_down(m);
    let (qa, qb) = finite_regular_part(m, &down, up.last().unwrap())?;
    if qa.rows() > 0 {
        let qa_inv = qa
            .inverse()
            .ok_or_else(|| Error::Internal("finite regular part has singular A".into()))?;
        let op = qa_inv.mul(&qb);
        let r = op.rows();
        for (p, e) in poly_factor(&op.charpoly())?.factors {
            let d = p.degree().unwrap();
            let base = op.eval_poly(&p);
            let mut power = base.clone();
            let mut prev = 0;
            let mut counts = Vec::with_capacity(e);
            for j in 1..=e {
                if j > 1 {
                    power = power.mul(&base);
                }
                let k = r - power.rank();
                counts.push((k - prev) / d);
                prev = k;
            }
            let x = ClosedPoint::Finite(p);
            for (l, k) in lengths_from_counts(&counts) {
                out.push((KronIndec::Regular(x.clone(), l), k));
            }
        }
    }

    out.sort();
    let (mut s, mut t) = (0, 0);
    for (k, mult) in &out {
        let (a, b) = k.dims();
        s += a * mult;
        t += b * mult;
    }
    if (s, t) != m.dims() {
        return Err(Error::Internal(format!(
            "decomposition accounts for {:?} of {:?}",
            (s, t),
            m.dims()
        )));
    }
    Ok(out)
}

/// Searches for an isomorphism `M -> N` among random elements of `Hom(M, N)`.
pub fn find_intertwiner(m: &KronRep, n: &KronRep, seed: u64) -> Result<Option<(Matrix, Matrix)>> {
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field, n.field));
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    let basis = hom_basis(m, n)?;
    let (ds, dt) = m.dims();
    let field = m.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let mut src = Matrix::zeros(field, ds, ds);
        let mut tgt = Matrix::zeros(field, dt, dt);
        for (bs, bt) in &basis {
            let c = random_scalar(field, &mut rng);
            if !c.is_zero() {
                src = src.add(&bs.scale(&c));
                tgt = tgt.add(&bt.scale(&c));
            }
        }
        if src.is_invertible() && tgt.is_invertible() {
            return Ok(Some((src, tgt)));
        }
    }
    Ok(None)
}

/// Decides `M ~= N`. An explicit intertwiner is searched for first; the
/// decomposition multisets are compared either way and must agree with it.
pub fn kron_iso_check(m: &KronRep, n: &KronRep, seed: u64) -> Result<bool> {
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field, n.field));
    }
    if m.dims() != n.dims() {
        return Ok(false);
    }
    let witness = find_intertwiner(m, n, seed)?.is_some();
    let same = kron_decompose(m)? == kron_decompose(n)?;
    if witness && !same {
        return Err(Error::Internal(
            "isomorphic representations decompose differently".into(),
        ));
    }
    Ok(same)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{FieldSpec, Poly};
    use crate::kron::indec_rep;

    const F2: FieldSpec = FieldSpec::Prime(2);
    const F5: FieldSpec = FieldSpec::Prime(5);

    #[test]
    fn small_examples() {
        assert!(kron_decompose(&KronRep::zero(F5)).unwrap().is_empty());
        let c = 3;
        let m = KronRep::new(
            Matrix::from_i64_rows(F5, &[&[1]]),
            Matrix::from_i64_rows(F5, &[&[c]]),
        )
        .unwrap();
        assert_eq!(
            kron_decompose(&m).unwrap(),
            vec![(KronIndec::Regular(ClosedPoint::rational(F5, c), 1), 1)]
        );
        let p1 = KronRep::new(
            Matrix::from_i64_rows(F5, &[&[1], &[0]]),
            Matrix::from_i64_rows(F5, &[&[0], &[1]]),
        )
        .unwrap();
        assert_eq!(
            kron_decompose(&p1).unwrap(),
            vec![(KronIndec::Preproj(1), 1)]
        );
        let one = KronRep::new(
            Matrix::from_i64_rows(F2, &[&[1]]),
            Matrix::from_i64_rows(F2, &[&[1]]),
        )
        .unwrap();
        let t1 = ClosedPoint::finite(Poly::parse(F2, "t+1").unwrap()).unwrap();
        assert_eq!(
            kron_decompose(&one).unwrap(),
            vec![(KronIndec::Regular(t1, 1), 1)]
        );
    }

    #[test]
    fn iso_examples() {
        let p1 = indec_rep(F5, &KronIndec::Preproj(1)).unwrap();
        let i1 = indec_rep(F5, &KronIndec::Preinj(1)).unwrap();
        assert!(kron_iso_check(&p1, &p1, 0).unwrap());
        assert!(!kron_iso_check(&p1, &i1, 0).unwrap());
        let m = KronRep::new(
            Matrix::from_i64_rows(F5, &[&[1]]),
            Matrix::from_i64_rows(F5, &[&[2]]),
        )
        .unwrap();
        let r = indec_rep(F5, &KronIndec::Regular(ClosedPoint::rational(F5, 2), 1)).unwrap();
        assert!(find_intertwiner(&m, &r, 1).unwrap().is_some());
        assert!(kron_iso_check(&m, &r, 1).unwrap());
    }

    #[test]
    fn every_indecomposable_decomposes_to_itself() {
        for f in [F2, FieldSpec::Prime(3), FieldSpec::Rationals] {
            let mut ks: Vec<KronIndec> = (0..6)
                .flat_map(|n| [KronIndec::Preproj(n), KronIndec::Preinj(n)])
                .collect();
            ks.push(KronIndec::Regular(ClosedPoint::AtInfinity, 1));
            ks.push(KronIndec::Regular(ClosedPoint::AtInfinity, 3));
            ks.push(KronIndec::Regular(ClosedPoint::rational(f, 0), 2));
            ks.push(KronIndec::Regular(ClosedPoint::rational(f, 1), 3));
            let quad = if f == FieldSpec::Rationals {
                "t^2+1"
            } else {
                "t^2+t+2"
            };
            if let Ok(x) = Poly::parse(f, quad).and_then(ClosedPoint::finite) {
                ks.push(KronIndec::Regular(x, 2));
            }
            for k in ks {
                let r = indec_rep(f, &k).unwrap();
                assert_eq!(
                    kron_decompose(&r).unwrap(),
                    vec![(k.clone(), 1)],
                    "{k} over {f}"
                );
            }
        }
    }

    #[test]
    fn mixed_sum_is_recovered() {
        let ks = [
            KronIndec::Preproj(0),
            KronIndec::Preproj(2),
            KronIndec::Preproj(2),
            KronIndec::Preinj(0),
            KronIndec::Preinj(3),
            KronIndec::Regular(ClosedPoint::AtInfinity, 1),
            KronIndec::Regular(ClosedPoint::AtInfinity, 2),
            KronIndec::Regular(ClosedPoint::rational(F5, 0), 1),
            KronIndec::Regular(ClosedPoint::rational(F5, 0), 3),
            KronIndec::Regular(ClosedPoint::rational(F5, 4), 1),
        ];
        let parts: Vec<KronRep> = ks.iter().map(|k| indec_rep(F5, k).unwrap()).collect();
        let m = KronRep::direct_sum(F5, &parts);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = random_invertible(F5, m.d_src(), &mut rng);
        let t = random_invertible(F5, m.d_tgt(), &mut rng);
        let mixed = m.conjugate(&s, &t).unwrap();
        let got = kron_decompose(&mixed).unwrap();
        let mut want: Vec<(KronIndec, usize)> = Vec::new();
        for k in ks {
            match want.iter_mut().find(|(x, _)| *x == k) {
                Some(e) => e.1 += 1,
                None => want.push((k, 1)),
            }
        }
        want.sort();
        assert_eq!(got, want);
    }

    fn random_invertible(f: FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        loop {
            let data = (0..n * n).map(|_| random_scalar(f, rng)).collect();
            let m = Matrix::new(f, n, n, data).unwrap();
            if m.is_invertible() {
                return m;
            }
        }
    }
}
