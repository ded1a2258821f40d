use qtopo::jacobi::*;
use qtopo::linalg::rat;

const P: i64 = 1_000_000_007;

fn inverse(a: i64) -> i64 {
    let (mut r, mut base, mut e) = (1i64, a.rem_euclid(P), P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` of the relation rows, rebuilt from the labelled terms.
fn rank_mod_p(q: &QuotientBasis) -> usize {
    let n = q.diagrams().len();
    let mut rows: Vec<Vec<i64>> = q
        .relations()
        .iter()
        .map(|r| {
            let mut v = vec![0i64; n];
            for (c, d) in &r.terms {
                let cf = d.canonical_form();
                let i = q.index_of(&cf.diagram).expect("closed under relations");
                v[i] = (v[i] + (*c * cf.sign) as i64).rem_euclid(P);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = inverse(rows[rank][col]);
        let pivot: Vec<i64> = rows[rank].iter().map(|x| x * inv % P).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(P);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[test]
fn quotient_dimensions_are_frozen() {
    let expected = [1, 1, 2, 3];
    for (degree, &dim) in expected.iter().enumerate() {
        let q = QuotientBasis::generate(degree, 3).unwrap();
        assert_eq!(q.dimension(), dim, "degree {degree}");
        assert_eq!(q.diagrams().len() - rank_mod_p(&q), dim, "oracle, degree {degree}");
    }
}

#[test]
fn theta_class_is_nonzero() {
    let alg = DiagramAlgebra::new(3);
    let theta = DiagramCombination::single(JacobiDiagram::theta(), 3);
    assert!(!alg.is_zero_class(&theta).unwrap());
    let coords = alg.reduce(&theta.add(&theta)).unwrap();
    let once = alg.reduce(&theta).unwrap();
    assert_eq!(coords[&1], once[&1].iter().map(|c| c * rat(2)).collect::<Vec<_>>());
}

#[test]
fn relations_vanish_under_both_weight_systems() {
    for degree in 0..=3 {
        let q = QuotientBasis::generate(degree, 3).unwrap();
        for w in [WeightData::epsilon(), WeightData::sl2()] {
            for r in q.relations() {
                let s = r
                    .terms
                    .iter()
                    .fold(rat(0), |acc, (c, d)| acc + rat(*c as i64) * weight_system(&w, d));
                assert_eq!(s, rat(0), "{} {:?} in degree {degree}", w.name(), r.kind);
            }
        }
    }
}

#[test]
fn degree_above_cap_is_refused() {
    assert!(matches!(
        QuotientBasis::generate(4, 3),
        Err(qtopo::Error::ResourceLimit(_))
    ));
}

#[test]
fn theta_weights_multiply() {
    let eps = WeightData::epsilon();
    assert_eq!(weight_system(&eps, &JacobiDiagram::theta()), rat(6));
    assert_eq!(weight_system(&eps, &JacobiDiagram::theta_power(2)), rat(36));
    assert_eq!(weight_system(&eps, &JacobiDiagram::empty()), rat(1));
}
