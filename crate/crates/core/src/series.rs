//! Classical generalized hypergeometric series `rFs` and Pochhammer
//! symbols, the building blocks of the residue engine.

use num_complex::Complex64;

use crate::error::Error;
use crate::lambda::LATTICE_TOL;

/// Evaluation of a series with the stopping rule applied: the limiting
/// value, a bound on the truncation tail, and the number of terms summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
}

/// Tolerances for the series loop.
#[derive(Debug, Clone, Copy)]
pub struct SeriesConfig {
    pub tol_rel: f64,
    pub tol_abs: f64,
    pub max_terms: usize,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { tol_rel: 1e-14, tol_abs: 1e-300, max_terms: 20_000 }
    }
}

/// Width of the refused annulus around `|z| = 1` for `r = s + 1` series.
/// Shared with the residue engine's unit-circle dispatch.
pub const DELTA_CIRCLE: f64 = 1e-3;

/// Pochhammer symbol `(a)_m = a (a+1) ⋯ (a+m−1)`; empty product is 1.
pub fn pochhammer(a: Complex64, m: u32) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for i in 0..m {
        v *= a + i as f64;
    }
    v
}

fn is_nonpos_int(x: Complex64) -> bool {
    let r = x.re.round();
    r < 0.5 && (x.re - r).hypot(x.im) <= LATTICE_TOL
}

/// `rFs[(num); (den); z]` with default tolerances.
pub fn hyp_pfq(num: &[Complex64], den: &[Complex64], z: Complex64) -> Result<SeriesResult, Error> {
    hyp_pfq_with(num, den, z, &SeriesConfig::default())
}

/// `rFs[(num); (den); z]` by direct summation with compensated
/// accumulation. Stops once two consecutive terms fall below
/// `tol_rel·|partial sum| + tol_abs`.
///
/// Refused outright when the series cannot converge: `r > s + 1`, or
/// `r = s + 1` with `|z| ≥ 1 − DELTA_CIRCLE`.
pub fn hyp_pfq_with(
    num: &[Complex64],
    den: &[Complex64],
    z: Complex64,
    cfg: &SeriesConfig,
) -> Result<SeriesResult, Error> {
    let r = num.len();
    let s = den.len();
    if den.iter().any(|&b| is_nonpos_int(b)) {
        return Err(Error::DenominatorPole);
    }
    if r > s + 1 {
        return Err(Error::SeriesDivergent);
    }
    if r == s + 1 && z.norm() >= 1.0 - DELTA_CIRCLE {
        return Err(Error::SeriesDivergent);
    }

    // Kahan-Babuska accumulation per component.
    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    let add = |acc: &mut Complex64, comp: &mut Complex64, t: Complex64| {
        let y = t - *comp;
        let u = *acc + y;
        *comp = (u - *acc) - y;
        *acc = u;
    };

    let mut term = Complex64::new(1.0, 0.0);
    add(&mut sum, &mut comp, term);
    let mut prev_small = false;
    let mut prev_abs = 1.0f64;
    for m in 0..cfg.max_terms {
        let mf = m as f64;
        let mut ratio = z / (mf + 1.0);
        for &a in num {
            ratio *= a + mf;
        }
        for &b in den {
            ratio /= b + mf;
        }
        term *= ratio;
        add(&mut sum, &mut comp, term);
        let t_abs = term.norm();
        let thresh = cfg.tol_rel * sum.norm() + cfg.tol_abs;
        if t_abs <= thresh {
            if prev_small {
                // geometric extrapolation of the tail from the last ratio
                let rho = if prev_abs > 0.0 { (t_abs / prev_abs).min(0.9) } else { 0.0 };
                let tail = t_abs * rho / (1.0 - rho);
                let rounding = f64::EPSILON * (m as f64).sqrt() * sum.norm();
                return Ok(SeriesResult {
                    value: sum,
                    abs_error_estimate: t_abs + tail + rounding,
                    terms_used: m + 2,
                });
            }
            prev_small = true;
        } else {
            prev_small = false;
        }
        prev_abs = t_abs;
    }
    Err(Error::BudgetExceeded { terms: cfg.max_terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(c(3.7, 1.0), 0), c(1.0, 0.0));
        assert_eq!(pochhammer(c(1.0, 0.0), 5), c(120.0, 0.0));
        assert!(rel(pochhammer(c(0.5, 0.0), 2), c(0.75, 0.0)) < 1e-15);
    }

    #[test]
    fn exp_series() {
        let r = hyp_pfq(&[], &[], c(1.0, 0.0)).unwrap();
        assert!(rel(r.value, c(std::f64::consts::E, 0.0)) < 1e-14);
    }

    #[test]
    fn geometric_series() {
        // 1F0[1; ; 1/2] = (1 - 1/2)^{-1} = 2
        let r = hyp_pfq(&[c(1.0, 0.0)], &[], c(0.5, 0.0)).unwrap();
        assert!(rel(r.value, c(2.0, 0.0)) < 1e-14);
    }

    #[test]
    fn log_series() {
        // 2F1[1,1;2; 1/2] = -ln(1-z)/z = 2 ln 2
        let r = hyp_pfq(&[c(1.0, 0.0), c(1.0, 0.0)], &[c(2.0, 0.0)], c(0.5, 0.0)).unwrap();
        assert!(rel(r.value, c(2.0 * std::f64::consts::LN_2, 0.0)) < 1e-13);
    }

    #[test]
    fn divergence_policy() {
        assert!(matches!(
            hyp_pfq(&[c(0.3, 0.0), c(0.4, 0.0)], &[c(1.5, 0.0)], c(1.0, 0.0)),
            Err(Error::SeriesDivergent)
        ));
        assert!(matches!(
            hyp_pfq(&[c(0.3, 0.0), c(0.4, 0.0)], &[], c(0.1, 0.0)),
            Err(Error::SeriesDivergent)
        ));
        assert!(matches!(
            hyp_pfq(&[c(0.3, 0.0)], &[c(-2.0, 0.0)], c(0.1, 0.0)),
            Err(Error::DenominatorPole)
        ));
    }

    #[test]
    fn derivative_at_zero_matches_parameter_ratio() {
        // d/dz rFs at 0 = ∏ a_i / ∏ b_j, by central differences
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let r = rng.gen_range(0..=2usize);
            let s = rng.gen_range(r.saturating_sub(1).max(1)..=3usize);
            let num: Vec<Complex64> =
                (0..r).map(|_| c(rng.gen_range(0.2..2.0), rng.gen_range(-0.5..0.5))).collect();
            let den: Vec<Complex64> =
                (0..s).map(|_| c(rng.gen_range(0.7..2.5), rng.gen_range(-0.5..0.5))).collect();
            let h = 1e-6;
            let fp = hyp_pfq(&num, &den, c(h, 0.0)).unwrap().value;
            let fm = hyp_pfq(&num, &den, c(-h, 0.0)).unwrap().value;
            let deriv = (fp - fm) / (2.0 * h);
            let mut expect = Complex64::new(1.0, 0.0);
            for &a in &num {
                expect *= a;
            }
            for &b in &den {
                expect /= b;
            }
            assert!(rel(deriv, expect) < 1e-6, "derivative check failed");
        }
    }

    #[test]
    fn tightening_tolerance_never_reduces_terms() {
        let num = [c(0.7, 0.1)];
        let den = [c(1.3, 0.0), c(0.9, -0.2)];
        let z = c(2.5, 1.0);
        let mut last = 0usize;
        for i in 0..5 {
            let cfg = SeriesConfig { tol_rel: 1e-6 * 0.1f64.powi(i), ..Default::default() };
            let r = hyp_pfq_with(&num, &den, z, &cfg).unwrap();
            assert!(r.terms_used >= last);
            last = r.terms_used;
        }
    }

    #[test]
    fn self_consistency_under_stricter_tolerance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for _ in 0..20 {
            let num = [c(rng.gen_range(0.2..1.5), rng.gen_range(-0.5..0.5))];
            let den = [c(rng.gen_range(0.8..2.0), 0.0), c(rng.gen_range(0.8..2.0), 0.2)];
            let z = c(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
            let loose = hyp_pfq_with(&num, &den, z, &SeriesConfig { tol_rel: 1e-12, ..Default::default() })
                .unwrap();
            let tight = hyp_pfq_with(&num, &den, z, &SeriesConfig { tol_rel: 2.5e-13, ..Default::default() })
                .unwrap();
            assert!(rel(loose.value, tight.value) < 1e-10);
        }
    }

    #[test]
    fn terminating_numerator_is_a_polynomial() {
        // upper parameter −3 terminates the series after 4 terms
        let r = hyp_pfq(&[c(-3.0, 0.0)], &[c(1.5, 0.0)], c(0.7, 0.0)).unwrap();
        let mut expect = Complex64::new(0.0, 0.0);
        for m in 0..=3u32 {
            expect += pochhammer(c(-3.0, 0.0), m) / pochhammer(c(1.5, 0.0), m)
                * c(0.7, 0.0).powu(m)
                / FACT[m as usize];
        }
        assert!(rel(r.value, expect) < 1e-14);
    }

    const FACT: [f64; 4] = [1.0, 1.0, 2.0, 6.0];
}
