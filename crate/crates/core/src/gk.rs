//! 15-point Gauss–Kronrod panels with adaptive bisection, for
//! complex-valued integrands over real parameter intervals.

use num_complex::Complex64;

// Kronrod abscissae (nonnegative half) and weights; embedded 7-point
// Gauss weights interleave at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_439_9,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_96,
    0.063_092_092_629_978_553_29,
    0.104_790_010_322_250_183_9,
    0.140_653_259_715_525_918_7,
    0.169_004_726_639_267_902_8,
    0.190_350_578_064_785_409_9,
    0.204_432_940_075_298_892_1,
    0.209_482_141_084_727_828_1,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_3,
    0.279_705_391_489_276_667_9,
    0.381_830_050_505_118_944_9,
    0.417_959_183_673_469_387_8,
];

/// One 15-point Gauss–Kronrod pass over `[a, b]`. Returns the Kronrod
/// value and an error estimate from the Gauss/Kronrod difference.
pub(crate) fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut resabs = fc.norm() * WGK[7];

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        let fsum = f1 + f2;
        kronrod += fsum * WGK[j];
        resabs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += fsum * WG[j / 2];
        }
    }

    let value = kronrod * half;
    let raw = ((kronrod - gauss) * half).norm();
    // QUADPACK-style sharpening of the raw difference
    let resabs = resabs * half.abs();
    let err = if resabs > 0.0 && raw > 0.0 {
        let scale = (200.0 * raw / resabs).powf(1.5);
        if scale < 1.0 {
            resabs * scale
        } else {
            raw
        }
    } else {
        raw
    };
    (value, err.max(f64::EPSILON * resabs))
}

/// Adaptive integration of `f` over `[a, b]`: start from `init_panels`
/// uniform panels, then repeatedly bisect the panel with the largest
/// error until the summed estimate meets `tol` or the panel budget runs
/// out. Returns (value, error estimate, panels used).
pub(crate) fn adaptive<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    init_panels: usize,
    max_panels: usize,
) -> (Complex64, f64, usize) {
    #[derive(Clone, Copy)]
    struct Panel {
        a: f64,
        b: f64,
        value: Complex64,
        err: f64,
    }

    let n0 = init_panels.max(1);
    let mut panels: Vec<Panel> = Vec::with_capacity(n0 * 2);
    for i in 0..n0 {
        let pa = a + (b - a) * i as f64 / n0 as f64;
        let pb = a + (b - a) * (i + 1) as f64 / n0 as f64;
        let (v, e) = gk15(f, pa, pb);
        panels.push(Panel { a: pa, b: pb, value: v, err: e });
    }

    loop {
        let total_err: f64 = panels.iter().map(|p| p.err).sum();
        if total_err <= tol || panels.len() >= max_panels {
            let value = panels.iter().map(|p| p.value).sum();
            return (value, total_err, panels.len());
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .map(|(i, p)| (i, p.err))
            .unwrap();
        let p = panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // interval at floating-point resolution; give up on it
            let value = panels.iter().map(|p| p.value).sum();
            return (value, total_err, panels.len());
        }
        let (v1, e1) = gk15(f, p.a, mid);
        let (v2, e2) = gk15(f, mid, p.b);
        panels[worst] = Panel { a: p.a, b: mid, value: v1, err: e1 };
        panels.push(Panel { a: mid, b: p.b, value: v2, err: e2 });
    }
}
