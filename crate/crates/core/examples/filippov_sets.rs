//! Filippov intervals of monotone jumps and the convex sets built from them.

use fts_core::linalg::Matrix;
use fts_core::setvalued::{
    filippov_interval, point_set_distance, product_box, support_value, vertices, ConvexSet, Interval,
    MonotoneScalarFunction,
};

pub fn run() -> fts_core::Result<()> {
    let sign = MonotoneScalarFunction::sign(1.0);
    for x in [-1.0, 0.0, 0.5] {
        println!("Filippov[sign]({x}) = {:?}", filippov_interval(&sign, x));
    }
    // no declared jumps: one-sided limits are estimated by sampling
    let floor = MonotoneScalarFunction::estimated(f64::floor);
    println!("Filippov[floor](2) ~ {:?}", filippov_interval(&floor, 2.0));

    let cube = product_box(&[Interval::new(0.0, 1.0); 3])?;
    println!("unit cube has {} vertices", vertices(&cube)?.len());

    let image = ConvexSet::affine_box(
        Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 2.0]])?,
        vec![1.0, 0.0],
        vec![0.0, 0.0],
        vec![1.0, 1.0],
    )?;
    println!("A[0,1]^2 + b vertices: {:?}", vertices(&image)?);

    let segment = ConvexSet::polytope(vec![vec![0.0, 0.0], vec![1.0, 0.0]])?;
    println!("dist((1,1), segment) = {}", point_set_distance(&[1.0, 1.0], &segment)?);
    let square = product_box(&[Interval::new(-1.0, 1.0); 2])?;
    println!("support of [-1,1]^2 along (1,1) = {}", support_value(&square, &[1.0, 1.0]));
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
