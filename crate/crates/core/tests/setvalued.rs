use fts_core::linalg::{dist, Matrix};
use fts_core::setvalued::*;
use proptest::prelude::*;

fn sorted(mut v: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn filippov_examples() {
    let sign = MonotoneScalarFunction::sign(1.0);
    assert_eq!(filippov_interval(&sign, 0.0), Interval::new(-1.0, 1.0));
    let cube = MonotoneScalarFunction::continuous(|x| x * x * x);
    assert_eq!(filippov_interval(&cube, 0.7), Interval::point(0.7f64.powi(3)));
    // sampled one-sided limits of floor at an integer
    let floor = MonotoneScalarFunction::estimated(f64::floor);
    let i = filippov_interval(&floor, 2.0);
    assert!((i.lo - 1.0).abs() < 1e-9 && (i.hi - 2.0).abs() < 1e-9, "{i:?}");
}

#[test]
fn declared_jumps_must_be_monotone() {
    let bad = MonotoneScalarFunction::new(|x| x, vec![Jump { at: 0.0, left: 1.0, right: -1.0 }]);
    assert!(bad.is_err());
}

#[test]
fn product_box_examples() {
    let b = product_box(&[Interval::new(-1.0, 1.0), Interval::point(0.0)]).unwrap();
    assert_eq!(b, ConvexSet::new_box(vec![-1.0, 0.0], vec![1.0, 0.0]).unwrap());
    assert_eq!(product_box(&[Interval::point(2.0)]).unwrap(), ConvexSet::singleton(vec![2.0]));
    let cube = product_box(&[Interval::new(0.0, 1.0); 3]).unwrap();
    assert_eq!(vertices(&cube).unwrap().len(), 8);
}

#[test]
fn vertices_examples() {
    let sq = ConvexSet::new_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
    assert_eq!(
        sorted(vertices(&sq).unwrap()),
        sorted(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]])
    );
    assert_eq!(vertices(&ConvexSet::singleton(vec![3.0, 4.0])).unwrap(), vec![vec![3.0, 4.0]]);
    let img = ConvexSet::affine_box(
        Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap(),
        vec![1.0, 0.0],
        vec![0.0, 0.0],
        vec![1.0, 1.0],
    )
    .unwrap();
    assert_eq!(
        sorted(vertices(&img).unwrap()),
        sorted(vec![vec![1.0, 0.0], vec![2.0, 0.0], vec![1.0, 2.0], vec![2.0, 2.0]])
    );
}

#[test]
fn vertex_cap_is_explicit() {
    let n = VERTEX_DIM_CAP + 1;
    let big = ConvexSet::new_box(vec![0.0; n], vec![1.0; n]).unwrap();
    assert!(matches!(vertices(&big), Err(fts_core::Error::DimensionOverflow { .. })));
}

#[test]
fn distance_examples() {
    let unit = ConvexSet::new_box(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
    assert_eq!(point_set_distance(&[0.5, 0.5], &unit).unwrap(), 0.0);
    assert!((point_set_distance(&[2.0, 0.0], &unit).unwrap() - 1.0).abs() < 1e-12);
    let seg = ConvexSet::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
    let d = point_set_distance(&[1.0, 1.0], &seg).unwrap();
    // dense parameterization of the segment
    let brute = (0..=10_000)
        .map(|k| dist(&[1.0, 1.0], &[k as f64 / 10_000.0, 0.0]))
        .fold(f64::INFINITY, f64::min);
    assert!((d - brute).abs() < 1e-9 && (d - 1.0).abs() < 1e-9);
}

#[test]
fn support_examples() {
    let sq = ConvexSet::new_box(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
    assert_eq!(support_value(&sq, &[1.0, 1.0]), 2.0);
    assert_eq!(support_value(&ConvexSet::singleton(vec![3.0, 4.0]), &[0.0, 1.0]), 4.0);
    let seg = ConvexSet::polytope(vec![vec![0.0, 0.0], vec![2.0, 1.0]]).unwrap();
    assert_eq!(support_value(&seg, &[1.0, -1.0]), 1.0);
}

#[test]
fn inverted_box_rejected() {
    assert!(matches!(
        ConvexSet::new_box(vec![1.0], vec![0.0]),
        Err(fts_core::Error::InvalidSet(_))
    ));
}

fn steps_fn(breaks: Vec<f64>, levels: Vec<f64>) -> MonotoneScalarFunction {
    let jumps: Vec<Jump> = breaks
        .iter()
        .enumerate()
        .map(|(i, &at)| Jump { at, left: levels[i], right: levels[i + 1] })
        .collect();
    let (b, l) = (breaks.clone(), levels.clone());
    MonotoneScalarFunction::new(
        move |x| {
            let k = b.iter().filter(|&&at| at < x).count();
            match b.iter().position(|&at| at == x) {
                Some(i) => 0.5 * (l[i] + l[i + 1]),
                None => l[k],
            }
        },
        jumps,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn filippov_brackets_value(
        mut breaks in proptest::collection::vec(-5.0f64..5.0, 1..5),
        incs in proptest::collection::vec(0.0f64..2.0, 5),
        x in -6.0f64..6.0,
        hit in any::<bool>(),
    ) {
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        let mut levels = vec![-1.0];
        for d in incs.iter().take(breaks.len()) {
            levels.push(levels.last().unwrap() + d);
        }
        let x = if hit { breaks[0] } else { x };
        let f = steps_fn(breaks, levels);
        let i = filippov_interval(&f, x);
        prop_assert!(i.lo <= f.eval(x) && f.eval(x) <= i.hi);
    }

    #[test]
    fn distance_zero_iff_member(lo in proptest::collection::vec(-2.0f64..0.0, 3),
                                width in proptest::collection::vec(0.0f64..2.0, 3),
                                p in proptest::collection::vec(-3.0f64..3.0, 3)) {
        let hi: Vec<f64> = lo.iter().zip(&width).map(|(l, w)| l + w).collect();
        let inside = p.iter().zip(lo.iter().zip(&hi)).all(|(x, (l, h))| l <= x && x <= h);
        let s = ConvexSet::new_box(lo, hi).unwrap();
        let d = point_set_distance(&p, &s).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d == 0.0, inside);
    }

    #[test]
    fn support_is_max_over_vertices(rows in proptest::collection::vec(proptest::collection::vec(-2.0f64..2.0, 3), 2),
                                    d in proptest::collection::vec(-1.0f64..1.0, 2)) {
        let a = Matrix::from_rows(rows).unwrap();
        let s = ConvexSet::affine_box(a, vec![0.1, -0.2], vec![-1.0, 0.0, -0.5], vec![1.0, 0.5, 0.5]).unwrap();
        let best = vertices(&s).unwrap().iter().map(|v| v[0] * d[0] + v[1] * d[1]).fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((support_value(&s, &d) - best).abs() < 1e-12);
    }
}
