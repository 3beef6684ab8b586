use p1::exact::FieldSpec;
use p1::sheaf::{hom_dims, oracle_hom, oracle_tensor, support, tensor, twist, CohIndec, DObject};
use p1::tilt::{kron_hom_dims, to_kronecker, Grid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELDS: [FieldSpec; 2] = [FieldSpec::Prime(2), FieldSpec::Prime(3)];

fn grid_objects(f: FieldSpec) -> Vec<DObject> {
    Grid::new(f, 5, 3, 2)
        .objects()
        .unwrap()
        .into_iter()
        .map(|c| DObject::indec(f, c).unwrap())
        .collect()
}

#[test]
fn hom_table_matches_both_oracles() {
    for f in FIELDS {
        let objs = grid_objects(f);
        for x in &objs {
            for y in &objs {
                let table = hom_dims(x, y).unwrap();
                assert_eq!(table, oracle_hom(x, y).unwrap(), "{x} -> {y} over {f}");
                let kron = kron_hom_dims(&to_kronecker(x), &to_kronecker(y)).unwrap();
                assert_eq!(table, kron, "{x} -> {y} over {f}");
            }
        }
    }
}

#[test]
fn tensor_table_matches_graded_tor() {
    for f in FIELDS {
        let objs = grid_objects(f);
        for x in &objs {
            for y in &objs {
                assert_eq!(
                    tensor(x, y).unwrap(),
                    oracle_tensor(x, y).unwrap(),
                    "{x} (x) {y} over {f}"
                );
            }
        }
    }
}

#[test]
fn shifted_sums_match_oracles() {
    let f = FieldSpec::Prime(3);
    let objs = grid_objects(f);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random_object = |rng: &mut ChaCha8Rng| {
        let mut x = DObject::zero(f);
        for _ in 0..rng.gen_range(1..4) {
            let (s, c, _) = objs[rng.gen_range(0..objs.len())]
                .summands()
                .next()
                .unwrap();
            x.add_term(rng.gen_range(-2..=2) + s, c.clone(), rng.gen_range(1..3))
                .unwrap();
        }
        x
    };
    for _ in 0..60 {
        let x = random_object(&mut rng);
        let y = random_object(&mut rng);
        assert_eq!(hom_dims(&x, &y).unwrap(), oracle_hom(&x, &y).unwrap());
        assert_eq!(tensor(&x, &y).unwrap(), oracle_tensor(&x, &y).unwrap());
    }
}

#[test]
fn tensor_laws_and_support() {
    for f in FIELDS {
        let objs = grid_objects(f);
        for x in &objs {
            for y in &objs {
                let xy = tensor(x, y).unwrap();
                assert_eq!(xy, tensor(y, x).unwrap());
                assert_eq!(support(&xy), support(x).intersect(&support(y)), "{x} {y}");
            }
        }
        let sample: Vec<&DObject> = objs.iter().step_by(5).collect();
        for x in &sample {
            for y in &sample {
                for z in &sample {
                    let l = tensor(&tensor(x, y).unwrap(), z).unwrap();
                    let r = tensor(x, &tensor(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        for x in &objs {
            for m in -3..=3 {
                for n in -3..=3 {
                    assert_eq!(twist(&twist(x, m), n), twist(x, m + n));
                    assert_eq!(twist(x, n), tensor(x, &DObject::line(f, n)).unwrap());
                }
            }
        }
    }
}

#[test]
fn total_vanishing_between_line_bundles_only_for_the_next_lower_twist() {
    let f = FieldSpec::Prime(2);
    for i in -5..=5 {
        for j in -5..=5 {
            let vanish = hom_dims(&DObject::line(f, i), &DObject::line(f, j))
                .unwrap()
                .is_zero();
            assert_eq!(vanish, j == i - 1, "{i} {j}");
        }
    }
}

#[test]
fn support_detected_by_residue_fields() {
    let f = FieldSpec::Prime(2);
    let objs = grid_objects(f);
    let points = p1::exact::enumerate_points(f, 2).unwrap();
    for x in &objs {
        let s = support(x);
        for p in &points {
            let k = DObject::indec(f, CohIndec::Torsion(p.clone(), 1)).unwrap();
            let hit = !tensor(x, &k).unwrap().is_zero();
            assert_eq!(hit, s.closed.contains(p), "{x} at {p}");
        }
    }
}
