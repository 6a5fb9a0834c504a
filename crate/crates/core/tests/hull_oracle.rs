//! Exact LP answers against independent brute-force oracles.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tverberg_core::exact::{
    check_intersection, conv_intersection_point, lp_feasible, relint_intersection_point, Feasibility, LinearSystem,
};
use tverberg_core::{QVector, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn point() -> impl Strategy<Value = QVector> {
    (-6i64..=6, -6i64..=6).prop_map(|(x, y)| QVector::from_i64s(&[x, y]))
}

fn dot(a: &QVector, b: &QVector) -> Rational {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum()
}

/// Two compact convex polygons are disjoint iff some direction along or
/// perpendicular to a difference of input points separates them strictly.
fn hulls_meet_bruteforce(a: &[QVector], b: &[QVector]) -> bool {
    let all: Vec<&QVector> = a.iter().chain(b).collect();
    let mut directions = Vec::new();
    for p in &all {
        for r in &all {
            let d = *p - *r;
            if d.is_zero() {
                continue;
            }
            let perp = QVector::new(vec![-d[1].clone(), d[0].clone()]);
            directions.push(d);
            directions.push(perp);
        }
    }
    !directions.iter().any(|n| {
        let proj = |s: &[QVector]| -> (Rational, Rational) {
            let vals: Vec<Rational> = s.iter().map(|p| dot(n, p)).collect();
            (vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
        };
        let ((alo, ahi), (blo, bhi)) = (proj(a), proj(b));
        ahi < blo || bhi < alo
    })
}

/// Candidate extreme points of an intersection of planar hulls: the input
/// points and every crossing of two lines through input points.
fn candidates(points: &[&QVector]) -> Vec<QVector> {
    let mut lines = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for r in &points[i + 1..] {
            if p != r {
                lines.push(((*p).clone(), (*r).clone()));
            }
        }
    }
    let mut out: Vec<QVector> = points.iter().map(|p| (*p).clone()).collect();
    for (i, (a, b)) in lines.iter().enumerate() {
        for (c, e) in &lines[i + 1..] {
            let (u, v) = (b - a, e - c);
            let det = &u[0] * &v[1] - &u[1] * &v[0];
            if det.is_zero() {
                continue;
            }
            let w = c - a;
            let t = (&w[0] * &v[1] - &w[1] * &v[0]) / det;
            out.push(a + &u.scale(&t));
        }
    }
    out
}

fn three_hulls_meet_bruteforce(sets: &[Vec<QVector>]) -> bool {
    let all: Vec<&QVector> = sets.iter().flatten().collect();
    candidates(&all).into_iter().any(|z| sets.iter().all(|s| hulls_meet_bruteforce(std::slice::from_ref(&z), s)))
}

fn feasible_by_substitution(sys: &LinearSystem<Rational>, x: &QVector) -> bool {
    sys.equalities.iter().all(|(a, b)| dot(a, x) == *b) && sys.inequalities.iter().all(|(a, b)| dot(a, x) <= *b)
}

fn farkas_by_substitution(sys: &LinearSystem<Rational>, y: &QVector) -> bool {
    let neq = sys.equalities.len();
    let rows: Vec<&(QVector, Rational)> = sys.equalities.iter().chain(&sys.inequalities).collect();
    if y.coords()[neq..].iter().any(|v| v.is_negative()) {
        return false;
    }
    let combined: Vec<Rational> =
        (0..sys.dim).map(|k| rows.iter().zip(y.coords()).map(|((a, _), w)| &a[k] * w).sum()).collect();
    let bound: Rational = rows.iter().zip(y.coords()).map(|((_, b), w)| b * w).sum();
    combined.iter().all(Zero::is_zero) && bound.is_negative()
}

#[test]
fn crossing_segments_meet_at_center() {
    let sets = vec![
        vec![QVector::from_i64s(&[0, 0]), QVector::from_i64s(&[2, 0])],
        vec![QVector::from_i64s(&[1, -1]), QVector::from_i64s(&[1, 1])],
    ];
    let hit = conv_intersection_point(&sets, 2).unwrap().unwrap();
    assert_eq!(hit.point, QVector::from_i64s(&[1, 0]));
    assert!(check_intersection(&sets, &hit));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn two_hulls_agree_with_separating_axes(
        a in prop::collection::vec(point(), 1..5),
        b in prop::collection::vec(point(), 1..5),
    ) {
        let sets = vec![a.clone(), b.clone()];
        let found = conv_intersection_point(&sets, 2).unwrap();
        prop_assert_eq!(found.is_some(), hulls_meet_bruteforce(&a, &b));
        if let Some(hit) = found {
            prop_assert!(check_intersection(&sets, &hit));
        }
    }

    #[test]
    fn three_hulls_agree_with_vertex_enumeration(
        sets in prop::collection::vec(prop::collection::vec(point(), 1..4), 3),
    ) {
        let found = conv_intersection_point(&sets, 2).unwrap();
        prop_assert_eq!(found.is_some(), three_hulls_meet_bruteforce(&sets));
    }

    #[test]
    fn relint_points_have_positive_weights(
        sets in prop::collection::vec(prop::collection::vec(point(), 1..4), 2..4),
    ) {
        if let Some(hit) = relint_intersection_point(&sets, 2).unwrap() {
            prop_assert!(check_intersection(&sets, &hit));
            prop_assert!(hit.coeffs.iter().flatten().all(Signed::is_positive));
            prop_assert!(conv_intersection_point(&sets, 2).unwrap().is_some());
        }
    }

    #[test]
    fn lp_answers_carry_valid_certificates(
        rows in prop::collection::vec((prop::collection::vec(-4i64..=4, 3), -6i64..=6, any::<bool>()), 1..7),
    ) {
        let mut sys = LinearSystem::new(3);
        for (a, b, eq) in rows {
            let a = QVector::from_i64s(&a);
            sys = if eq { sys.equal(a, q(b)) } else { sys.at_most(a, q(b)) };
        }
        let answer = lp_feasible(&sys).unwrap();
        prop_assert_eq!(&answer, &lp_feasible(&sys).unwrap());
        match answer {
            Feasibility::Feasible { witness } => prop_assert!(feasible_by_substitution(&sys, &witness)),
            Feasibility::Infeasible { farkas } => prop_assert!(farkas_by_substitution(&sys, &farkas)),
        }
    }
}
