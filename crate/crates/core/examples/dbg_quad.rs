// debug: per-k line integrals for 0G1
use num_complex::Complex64;
use hypc::*;

fn main() {
    let a = LambdaPoint::real(0, -0.2);
    let params = GParams::from_points(vec![a], vec![]);
    let z = Complex64::new(0.8, 0.5);
    let cfg = QuadConfig::default();
    for k in -6..=6i64 {
        let contour = separating_contour(&params, k).unwrap();
        match contour_integral_k(&params, z, &contour, &cfg) {
            Ok((v, e)) => println!("k={k:3}  I_k = {v:.6e}  err_est = {e:.3e}"),
            Err(err) => println!("k={k:3}  error: {err}"),
        }
    }
    let closed = 2.0 * double_power(z, a).unwrap() * (-z).exp() * z.conj().exp();
    println!("closed = {closed:.6e}");
    let total: Complex64 = (-30..=30i64).map(|k| {
        let contour = separating_contour(&params, k).unwrap();
        contour_integral_k(&params, z, &contour, &cfg).unwrap().0
    }).sum();
    println!("sum    = {total:.6e}");
}
