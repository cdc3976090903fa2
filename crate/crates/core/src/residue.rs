//! The residue-series engine: the sums over residues of the left (or
//! right) pole families, expressed through classical hypergeometric
//! series, and the `q` vs `p` dispatch between them.

use num_complex::Complex64;

use crate::error::Error;
use crate::gamma::gamma_c;
use crate::kernel::{classify_convergence, ConvergenceClass, GParams};
use crate::lambda::double_power;
use crate::series::{hyp_pfq_with, SeriesConfig, DELTA_CIRCLE};

/// Which machinery produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Engine {
    ResidueSeries,
    Quadrature,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Engine::ResidueSeries => write!(f, "series"),
            Engine::Quadrature => write!(f, "quad"),
        }
    }
}

/// Evaluation diagnostics. Fields not meaningful for an engine stay at
/// their defaults.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct EvalDiagnostics {
    /// Summands of the residue formula actually computed.
    pub j_summands: usize,
    /// Series terms used, per hypergeometric factor in order.
    pub series_terms: Vec<usize>,
    /// Range of the integer sum covered by the quadrature engine.
    pub k_range: Option<(i64, i64)>,
    /// Total Gauss–Kronrod panels spent (quadrature only).
    pub panels: usize,
    /// Convergence class of the defining integral for these parameters.
    pub convergence: Option<ConvergenceClass>,
}

/// A value with an error estimate and provenance.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub engine: Engine,
    pub diagnostics: EvalDiagnostics,
}

const RESONANCE_TOL: f64 = 1e-8;

fn near_int(x: Complex64, tol: f64) -> Option<f64> {
    let r = x.re.round();
    if (x.re - r).hypot(x.im) <= tol {
        Some(r)
    } else {
        None
    }
}

/// Check the two degeneracies of the residue formula: integer differences
/// between upper parameters (resonance), and gamma factors
/// `Γᶜ(b_β + a_j)` sitting on a pole (parameter collision of pole type).
fn check_degeneracies(params: &GParams) -> Result<(), Error> {
    let a = &params.a_list().points;
    for j in 0..a.len() {
        for i in 0..a.len() {
            if i == j {
                continue;
            }
            let d = a[i] - a[j];
            if near_int(d.a(), RESONANCE_TOL).is_some() && near_int(d.a_prime(), RESONANCE_TOL).is_some()
            {
                return Err(Error::ResonantParameters);
            }
        }
    }
    for &aj in a {
        for &b in params.b_list().iter() {
            let s = aj + b;
            let m = near_int(s.a(), RESONANCE_TOL);
            let mp = near_int(s.a_prime(), RESONANCE_TOL);
            if let (Some(m), Some(mp)) = (m, mp) {
                if m <= 0.0 && mp <= 0.0 {
                    return Err(Error::ParameterCollision);
                }
            }
        }
    }
    Ok(())
}

/// The sum over residues of the left pole family:
///
/// ```text
/// 2 Σ_j z^{a_j|a'_j} ∏_β Γᶜ(b_β+a_j | b'_β+a'_j) ∏_{α≠j} Γᶜ(a_α−a_j | a'_α−a'_j)
///     · pF_{q−1}[(b+a_j); (1−a+a_j)_{\j}; (−1)^q z]
///     · pF_{q−1}[(b'+a'_j); (1−a'+a'_j)_{\j}; (−1)^p z̄]
/// ```
pub fn sigma_plus(params: &GParams, z: Complex64) -> Result<EvalResult, Error> {
    sigma_plus_with(params, z, &SeriesConfig::default())
}

pub fn sigma_plus_with(
    params: &GParams,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<EvalResult, Error> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroBase);
    }
    let p = params.p();
    let q = params.q();
    if p == q && z.norm() >= 1.0 - DELTA_CIRCLE {
        return Err(Error::SeriesDivergent);
    }
    check_degeneracies(params)?;

    let a = &params.a_list().points;
    let b = &params.b_list().points;
    let arg1 = if q % 2 == 0 { z } else { -z };
    let arg2 = if p % 2 == 0 { z.conj() } else { -z.conj() };

    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    let mut diags = EvalDiagnostics { j_summands: q, ..Default::default() };

    for j in 0..q {
        let aj = a[j];
        let mut coeff = double_power(z, aj)?;
        let mut coeff_rel_err = 2.0 * f64::EPSILON;
        let mut zero_coeff = false;
        for &bb in b.iter() {
            let g = gamma_c(bb + aj);
            // collision check above leaves only finite values or zeros here
            let v = g.finite_or(Error::ParameterCollision)?;
            if v == Complex64::new(0.0, 0.0) {
                zero_coeff = true;
                break;
            }
            coeff *= v;
            coeff_rel_err += 4.0 * f64::EPSILON;
        }
        if zero_coeff {
            continue;
        }
        for (alpha, &aa) in a.iter().enumerate() {
            if alpha == j {
                continue;
            }
            let g = gamma_c(aa - aj);
            let v = g.finite_or(Error::ResonantParameters)?;
            coeff *= v;
            coeff_rel_err += 4.0 * f64::EPSILON;
        }

        let num1: Vec<Complex64> = b.iter().map(|&bb| (bb + aj).a()).collect();
        let den1: Vec<Complex64> = a
            .iter()
            .enumerate()
            .filter(|&(alpha, _)| alpha != j)
            .map(|(_, &aa)| 1.0 - (aa - aj).a())
            .collect();
        let f1 = hyp_pfq_with(&num1, &den1, arg1, cfg)?;

        let num2: Vec<Complex64> = b.iter().map(|&bb| (bb + aj).a_prime()).collect();
        let den2: Vec<Complex64> = a
            .iter()
            .enumerate()
            .filter(|&(alpha, _)| alpha != j)
            .map(|(_, &aa)| 1.0 - (aa - aj).a_prime())
            .collect();
        let f2 = hyp_pfq_with(&num2, &den2, arg2, cfg)?;

        diags.series_terms.push(f1.terms_used);
        diags.series_terms.push(f2.terms_used);

        let term = 2.0 * coeff * f1.value * f2.value;
        total += term;
        // factor errors accumulate linearly through the product
        let rel1 = f1.abs_error_estimate / f1.value.norm().max(1e-300);
        let rel2 = f2.abs_error_estimate / f2.value.norm().max(1e-300);
        err += term.norm() * (rel1 + rel2 + coeff_rel_err);
    }

    diags.convergence = Some(classify_convergence(params).class);
    Ok(EvalResult {
        value: total,
        abs_error_estimate: err + f64::EPSILON * total.norm() * 8.0,
        engine: Engine::ResidueSeries,
        diagnostics: diags,
    })
}

/// The mirror sum over the right pole family:
/// `Σ₋[(a|a')/(b|b'); z] = Σ₊[(b|b')/(a|a'); 1/z]`.
pub fn sigma_minus(params: &GParams, z: Complex64) -> Result<EvalResult, Error> {
    sigma_minus_with(params, z, &SeriesConfig::default())
}

pub fn sigma_minus_with(
    params: &GParams,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<EvalResult, Error> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroBase);
    }
    sigma_plus_with(&params.swapped(), 1.0 / z, cfg)
}

/// Evaluate `pGq(z)` by the residue series appropriate for `(p, q, |z|)`:
/// `Σ₊` for `q > p`, `Σ₋` for `q < p`, and for `p = q` the side of the
/// unit circle picks the sum. A band of width [`DELTA_CIRCLE`] around
/// `|z| = 1` is refused for `p = q`.
pub fn g_eval_series(params: &GParams, z: Complex64) -> Result<EvalResult, Error> {
    g_eval_series_with(params, z, &SeriesConfig::default())
}

pub fn g_eval_series_with(
    params: &GParams,
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<EvalResult, Error> {
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroBase);
    }
    let p = params.p();
    let q = params.q();
    if q > p {
        sigma_plus_with(params, z, cfg)
    } else if q < p {
        sigma_minus_with(params, z, cfg)
    } else {
        let r = z.norm();
        if r < 1.0 - DELTA_CIRCLE {
            sigma_plus_with(params, z, cfg)
        } else if r > 1.0 + DELTA_CIRCLE {
            sigma_minus_with(params, z, cfg)
        } else {
            Err(Error::OnUnitCircle)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{neg_one_power, LambdaPoint};
    use rand::Rng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    /// 0G1 closed form: 2 z^{a|a'} e^{−z} e^{z̄}
    fn g01_closed(a: LambdaPoint, z: Complex64) -> Complex64 {
        2.0 * double_power(z, a).unwrap() * (-z).exp() * z.conj().exp()
    }

    /// 1G1 closed form: 2 Γᶜ(a+b|a'+b') z^{a|a'} (1+z)^{−(a+b)|−(a'+b')}
    fn g11_closed(a: LambdaPoint, b: LambdaPoint, z: Complex64) -> Complex64 {
        2.0 * gamma_c(a + b).value
            * double_power(z, a).unwrap()
            * double_power(1.0 + z, -(a + b)).unwrap()
    }

    #[test]
    fn g01_example() {
        // a = a' = 1, z = 2: 2 z^{1|1} e^{−z} e^{z̄} = 2·4·1 = 8
        let a = LambdaPoint::real(0, 2.0);
        let p = GParams::from_points(vec![a], vec![]);
        let r = g_eval_series(&p, c(2.0, 0.0)).unwrap();
        assert!(rel(r.value, c(8.0, 0.0)) < 1e-12, "got {}", r.value);
        assert_eq!(r.engine, Engine::ResidueSeries);
        assert_eq!(r.diagnostics.j_summands, 1);
    }

    #[test]
    fn g11_examples() {
        // all entries 1/4, z inside the disk
        let a = LambdaPoint::real(0, 0.5);
        let p = GParams::from_points(vec![a], vec![a]);
        let z = c(0.4, 0.1);
        let r = g_eval_series(&p, z).unwrap();
        assert!(rel(r.value, g11_closed(a, a, z)) < 1e-12);

        // z = 3 through the Σ₋ branch: closed form gives √3/2
        let r = g_eval_series(&p, c(3.0, 0.0)).unwrap();
        assert!(rel(r.value, c(3.0_f64.sqrt() / 2.0, 0.0)) < 1e-12, "got {}", r.value);

        // the raw Σ₋ delegates bit-for-bit
        let direct = sigma_minus(&p, c(3.0, 0.0)).unwrap();
        let swapped = sigma_plus(&p.swapped(), c(1.0 / 3.0, 0.0)).unwrap();
        assert_eq!(direct.value, swapped.value);
    }

    #[test]
    fn unit_circle_band_is_refused() {
        let a = LambdaPoint::real(0, 0.5);
        let p = GParams::from_points(vec![a], vec![a]);
        assert!(matches!(g_eval_series(&p, c(1.0, 0.0)), Err(Error::OnUnitCircle)));
        assert!(matches!(g_eval_series(&p, c(0.0, 0.9999)), Err(Error::OnUnitCircle)));
        assert!(matches!(sigma_plus(&p, c(1.0, 0.0)), Err(Error::SeriesDivergent)));
    }

    #[test]
    fn resonant_parameters_are_refused() {
        // a2 − a1 = 1|1: the Γᶜ(a_α − a_j) factor sits on a lattice integer
        let a1 = LambdaPoint::real(0, 0.5);
        let a2 = a1 + LambdaPoint::from_integers(1, 1);
        let b = LambdaPoint::real(0, 0.7);
        let p = GParams::from_points(vec![a1, a2], vec![b]);
        assert!(matches!(g_eval_series(&p, c(0.3, 0.0)), Err(Error::ResonantParameters)));
    }

    #[test]
    fn pole_type_collision_is_refused() {
        // a + b = −1|−1 puts Γᶜ(b+a) on a pole
        let a = LambdaPoint::real(0, -1.0);
        let b = LambdaPoint::real(0, -1.0);
        let p = GParams::from_points(vec![a, LambdaPoint::real(1, 0.7)], vec![b]);
        assert!(matches!(g_eval_series(&p, c(0.3, 0.0)), Err(Error::ParameterCollision)));
    }

    #[test]
    fn closed_form_families_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        // 0G1 family
        for _ in 0..50 {
            let a = LambdaPoint::new(
                rng.gen_range(-2..=2),
                c(rng.gen_range(0.05..0.95), rng.gen_range(-0.5..0.5)),
            );
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() < 0.05 || z.norm() > 5.0 {
                continue;
            }
            let p = GParams::from_points(vec![a], vec![]);
            let r = g_eval_series(&p, z).unwrap();
            assert!(
                rel(r.value, g01_closed(a, z)) < 1e-10,
                "0G1 mismatch at a={a:?}, z={z}"
            );
        }
        // 1G1 family, both branches
        for _ in 0..50 {
            let a = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.9), rng.gen_range(-0.3..0.3)));
            let b = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.9), rng.gen_range(-0.3..0.3)));
            let r_abs = if rng.gen_bool(0.5) { rng.gen_range(0.15..0.85) } else { rng.gen_range(1.2..4.0) };
            let phi = rng.gen_range(-3.0..3.0);
            let z = Complex64::from_polar(r_abs, phi);
            if (z + 1.0).norm() < 0.1 {
                continue;
            }
            let p = GParams::from_points(vec![a], vec![b]);
            let r = g_eval_series(&p, z).unwrap();
            assert!(
                rel(r.value, g11_closed(a, b, z)) < 1e-9,
                "1G1 mismatch at a={a:?}, b={b:?}, z={z}"
            );
        }
    }

    #[test]
    fn conjugation_symmetry() {
        // reindexing the integer sum transposes every parameter pair:
        // G[(a|a');(b|b'); z̄] = (−1)^{Σk} G[(a'|a);(b'|b); (−1)^{p−q} z]
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let a1 = LambdaPoint::new(rng.gen_range(-2..=2), c(rng.gen_range(0.1..0.8), rng.gen_range(-0.3..0.3)));
            let a2 = LambdaPoint::new(rng.gen_range(-2..=2), c(rng.gen_range(0.1..0.8), 0.37 + rng.gen_range(0.0..0.2)));
            let b = LambdaPoint::new(rng.gen_range(-2..=2), c(rng.gen_range(0.1..0.8), rng.gen_range(-0.3..0.3)));
            let p = GParams::from_points(vec![a1, a2], vec![b]);
            let transposed = GParams::from_points(
                vec![LambdaPoint::new(-a1.k, a1.sigma), LambdaPoint::new(-a2.k, a2.sigma)],
                vec![LambdaPoint::new(-b.k, b.sigma)],
            );
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() < 0.1 {
                continue;
            }
            let lhs = match g_eval_series(&p, z.conj()) {
                Ok(r) => r.value,
                Err(_) => continue,
            };
            let flip = if (p.p() as i64 - p.q() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let rhs = match g_eval_series(&transposed, flip * z) {
                Ok(r) => r.value,
                Err(_) => continue,
            };
            let sign = if p.k_sum().rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            assert!(rel(lhs, sign * rhs) < 1e-10, "conjugation failed at z={z}");
        }
    }

    #[test]
    fn kummer_split_against_direct_1f1() {
        // 1G2 equals the two-term sum of products of confluent series;
        // the oracle is an independently coded plain 1F1 loop.
        fn hyp1f1_direct(a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = term;
            for m in 0..3000 {
                let mf = m as f64;
                term *= (a + mf) / (b + mf) * z / (mf + 1.0);
                sum += term;
                if term.norm() < 1e-16 * sum.norm() {
                    break;
                }
            }
            sum
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        for _ in 0..25 {
            let a1 = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.7), rng.gen_range(-0.2..0.2)));
            let a2 = a1 + LambdaPoint::new(0, c(rng.gen_range(0.21..0.6), rng.gen_range(0.05..0.3)));
            let b = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.7), rng.gen_range(-0.2..0.2)));
            let p = GParams::from_points(vec![a1, a2], vec![b]);
            let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            if z.norm() < 0.1 {
                continue;
            }
            let r = match g_eval_series(&p, z) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let mut expect = Complex64::new(0.0, 0.0);
            for (j, other) in [(a1, a2), (a2, a1)] {
                let coeff = 2.0
                    * gamma_c(b + j).value
                    * gamma_c(other - j).value
                    * double_power(z, j).unwrap();
                let one = Complex64::new(1.0, 0.0);
                let f1 = hyp1f1_direct((b + j).a(), one - (other - j).a(), z);
                let f2 = hyp1f1_direct((b + j).a_prime(), one - (other - j).a_prime(), -z.conj());
                expect += coeff * f1 * f2;
            }
            assert!(rel(r.value, expect) < 1e-9, "Kummer split failed at z={z}");
        }
    }

    #[test]
    fn bessel_split_against_direct_0f1() {
        fn hyp0f1_direct(b: Complex64, z: Complex64) -> Complex64 {
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = term;
            for m in 0..3000 {
                let mf = m as f64;
                term *= z / ((b + mf) * (mf + 1.0));
                sum += term;
                if term.norm() < 1e-16 * sum.norm() {
                    break;
                }
            }
            sum
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(44);
        for _ in 0..25 {
            let a1 = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.7), rng.gen_range(-0.2..0.2)));
            let a2 = a1 + LambdaPoint::new(1, c(rng.gen_range(0.21..0.6), rng.gen_range(0.05..0.3)));
            let p = GParams::from_points(vec![a1, a2], vec![]);
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() < 0.1 {
                continue;
            }
            let r = g_eval_series(&p, z).unwrap();
            let mut expect = Complex64::new(0.0, 0.0);
            for (j, other) in [(a1, a2), (a2, a1)] {
                let d = other - j;
                let coeff = 2.0 * gamma_c(d).value * double_power(z, j).unwrap();
                // (−1)^q z with q = 2 keeps the argument z; conjugate side gets z̄
                let f1 = hyp0f1_direct(1.0 - d.a(), z);
                let f2 = hyp0f1_direct(1.0 - d.a_prime(), z.conj());
                expect += coeff * f1 * f2;
            }
            assert!(rel(r.value, expect) < 1e-9, "Bessel split failed at z={z}");
        }
    }

    #[test]
    fn gauss_split_with_leading_factor_two() {
        // 2G2 inside the disk equals the two-term 2F1 product expression,
        // including the overall factor 2 of the residue sum.
        fn hyp2f1_direct(a: Complex64, b: Complex64, cc: Complex64, z: Complex64) -> Complex64 {
            let mut term = Complex64::new(1.0, 0.0);
            let mut sum = term;
            for m in 0..100_000 {
                let mf = m as f64;
                term *= (a + mf) * (b + mf) / ((cc + mf) * (mf + 1.0)) * z;
                sum += term;
                if term.norm() < 1e-16 * sum.norm() {
                    break;
                }
            }
            sum
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(45);
        for _ in 0..15 {
            let a1 = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.6), rng.gen_range(-0.2..0.2)));
            let a2 = a1 + LambdaPoint::new(0, c(rng.gen_range(0.21..0.5), rng.gen_range(0.05..0.3)));
            let b1 = LambdaPoint::new(rng.gen_range(-1..=1), c(rng.gen_range(0.1..0.6), rng.gen_range(-0.2..0.2)));
            let b2 = LambdaPoint::new(0, c(rng.gen_range(0.1..0.6), rng.gen_range(-0.2..0.2)));
            let p = GParams::from_points(vec![a1, a2], vec![b1, b2]);
            let z = Complex64::from_polar(rng.gen_range(0.1..0.8), rng.gen_range(-3.0..3.0));
            let r = match g_eval_series(&p, z) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let mut expect = Complex64::new(0.0, 0.0);
            for (j, other) in [(a1, a2), (a2, a1)] {
                let d = other - j;
                let coeff = 2.0
                    * gamma_c(d).value
                    * gamma_c(b1 + j).value
                    * gamma_c(b2 + j).value
                    * double_power(z, j).unwrap();
                let f1 = hyp2f1_direct((b1 + j).a(), (b2 + j).a(), 1.0 - d.a(), z);
                let f2 = hyp2f1_direct(
                    (b1 + j).a_prime(),
                    (b2 + j).a_prime(),
                    1.0 - d.a_prime(),
                    z.conj(),
                );
                expect += coeff * f1 * f2;
            }
            assert!(rel(r.value, expect) < 1e-9, "Gauss split failed at z={z}");
        }
    }

    #[test]
    fn conjugation_sign_uses_all_integer_components() {
        // 0G1 case against the closed form: G[a|a'; z̄] = −G[a'|a; −z]
        let a = LambdaPoint::new(1, c(0.5, 0.0));
        let p = GParams::from_points(vec![a], vec![]);
        let transposed = GParams::from_points(vec![LambdaPoint::new(-1, a.sigma)], vec![]);
        let z = c(0.7, 0.4);
        let lhs = g_eval_series(&p, z.conj()).unwrap().value;
        let rhs = neg_one_power(a) * g_eval_series(&transposed, -z).unwrap().value;
        assert!(rel(lhs, rhs) < 1e-11);
    }
}
