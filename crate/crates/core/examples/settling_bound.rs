//! Settling-time certificates and comparison solutions for `g(v) = v^α`.

use fts_core::comparison::{
    barrier_integral, comparison_solution, comparison_solution_numeric, settling_time_bound, ComparisonNonlinearity,
    GainFunction, RateSpec,
};

pub fn run() -> fts_core::Result<()> {
    let sqrt = ComparisonNonlinearity::power(0.5)?;
    println!("G(1) for g = sqrt: {}", barrier_integral(&sqrt, 1.0)?);

    // c ≡ 1: the certificate is T = 2 sqrt(v0)
    let unit = RateSpec::new(GainFunction::constant(1.0), sqrt.clone())?;
    let cert = settling_time_bound(&unit, 0.0, 1.0)?;
    println!("c = 1, v0 = 1: {}", serde_json::to_string(&cert).expect("serializes"));
    for t in [0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
        println!("  phi({t}) = {:.6}", comparison_solution(&unit, 0.0, 1.0, t)?);
    }

    // decaying gain with finite tail mass 0.4: small v0 settle, large do not
    let fading = RateSpec::new(GainFunction::exp(0.2, -0.5), sqrt)?;
    for v0 in [0.01, 0.03, 0.05] {
        let cert = settling_time_bound(&fading, 0.0, v0)?;
        println!("c = 0.2 e^(-t/2), v0 = {v0}: T_bound = {:?}", cert.t_bound);
    }
    let steps = RateSpec::new(
        GainFunction::steps(vec![0.0, 0.5, 1.0, 4.0], vec![2.0, 0.0, 1.0])?,
        ComparisonNonlinearity::power(0.75)?,
    )?;
    let (closed, numeric) = (
        comparison_solution(&steps, 0.0, 0.5, 1.2)?,
        comparison_solution_numeric(&steps, 0.0, 0.5, 1.2)?,
    );
    println!("piecewise gain: closed form {closed:.10} vs quadrature {numeric:.10}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> fts_core::Result<()> {
    run()
}
