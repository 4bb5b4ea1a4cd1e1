//! Contingent epi-/hypoderivatives: exact with a gradient, bracketed by
//! difference quotients without one.

use fts_core::certifier::{contingent_bounds, epiderivative, hypoderivative, LyapunovCandidate};

pub fn run() -> fts_core::Result<()> {
    let sq = LyapunovCandidate::norm_squared(1);
    println!("x^2 at x=1 along f=1: {}", epiderivative(&sq, 0.0, &[1.0], &[1.0])?);

    let abs = LyapunovCandidate::norm(1);
    println!(
        "|x| at 0 along -1: epi {:.6} hypo {:.6}",
        epiderivative(&abs, 0.0, &[0.0], &[-1.0])?,
        hypoderivative(&abs, 0.0, &[0.0], &[-1.0])?
    );

    // time-varying, no gradient supplied: quotients only
    let fading = LyapunovCandidate::new(1, |t, x: &[f64]| (-t).exp() * x[0].abs());
    let b = contingent_bounds(&fading, 0.3, &[2.0], &[0.0])?;
    println!(
        "e^-t |x| at (0.3, 2) along 0: [{:.6}, {:.6}] exact={} (closed form {:.6})",
        b.epi,
        b.hypo,
        b.exact,
        -2.0 * (-0.3f64).exp()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
