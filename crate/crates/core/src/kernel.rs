//! The Barnes-type integrand: the product of shifted gamma factors, its
//! pole geometry, convergence classification, collision detection and
//! separating-contour construction.

use num_complex::Complex64;

use crate::error::Error;
use crate::gamma::gamma_c;
use crate::lambda::{LambdaList, LambdaPoint, LATTICE_TOL};

/// Parameters of `pGq`: the `(a|a')` list has length `q`, the `(b|b')`
/// list length `p`. The convergence exponent
/// `υ = Σ Re(a+a') + Σ Re(b+b')` is cached at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GParams {
    a_list: LambdaList,
    b_list: LambdaList,
    upsilon: f64,
}

impl GParams {
    pub fn new(a_list: LambdaList, b_list: LambdaList) -> Self {
        let upsilon = a_list.re_sigma_sum() + b_list.re_sigma_sum();
        GParams { a_list, b_list, upsilon }
    }

    pub fn from_points(a: Vec<LambdaPoint>, b: Vec<LambdaPoint>) -> Self {
        Self::new(LambdaList::new(a), LambdaList::new(b))
    }

    pub fn a_list(&self) -> &LambdaList {
        &self.a_list
    }

    pub fn b_list(&self) -> &LambdaList {
        &self.b_list
    }

    /// Number of lower parameters (length of the `b`-list).
    pub fn p(&self) -> usize {
        self.b_list.len()
    }

    /// Number of upper parameters (length of the `a`-list).
    pub fn q(&self) -> usize {
        self.a_list.len()
    }

    pub fn upsilon(&self) -> f64 {
        self.upsilon
    }

    /// Whether every parameter satisfies `Re(a + a') > 0` (the condition
    /// under which the imaginary axis already separates the poles).
    pub fn positive_halfplane(&self) -> bool {
        self.a_list.iter().all(|p| p.sigma.re > 0.0)
            && self.b_list.iter().all(|p| p.sigma.re > 0.0)
    }

    /// Parameters with the two lists swapped (for the `z ↦ 1/z` symmetry).
    pub fn swapped(&self) -> GParams {
        GParams::new(self.b_list.clone(), self.a_list.clone())
    }

    /// Concatenated parameters (as in the convolution theorem).
    pub fn merged(&self, other: &GParams) -> GParams {
        let mut a = self.a_list.points.clone();
        a.extend_from_slice(&other.a_list.points);
        let mut b = self.b_list.points.clone();
        b.extend_from_slice(&other.b_list.points);
        GParams::from_points(a, b)
    }

    /// Sum of all integer components, which controls the conjugation
    /// symmetry `G(z̄) = (−1)^{Σk} G(z)`.
    pub fn k_sum(&self) -> i64 {
        self.a_list.k_sum() + self.b_list.k_sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ConvergenceClass {
    Divergent,
    Conditional,
    Absolute,
}

/// Convergence classification of the defining integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceReport {
    pub class: ConvergenceClass,
    /// Whether `Re(a+a') > 0` holds for every parameter.
    pub halfplane_positive: bool,
}

/// `Absolute` when `υ < p+q−1`, `Conditional` when `p+q−1 ≤ υ < p+q`,
/// `Divergent` otherwise.
pub fn classify_convergence(params: &GParams) -> ConvergenceReport {
    let pq = (params.p() + params.q()) as f64;
    let u = params.upsilon();
    let class = if u < pq - 1.0 {
        ConvergenceClass::Absolute
    } else if u < pq {
        ConvergenceClass::Conditional
    } else {
        ConvergenceClass::Divergent
    };
    ConvergenceReport { class, halfplane_positive: params.positive_halfplane() }
}

/// The integrand of the defining integral at a lattice point:
/// `∏_α Γᶜ(a_α ⊕ pt) · ∏_β Γᶜ(b_β ⊖ pt)`.
pub fn kernel_eval(params: &GParams, point: LambdaPoint) -> Result<Complex64, Error> {
    let mut prod = Complex64::new(1.0, 0.0);
    for &a in params.a_list.iter() {
        let g = gamma_c(a + point);
        prod *= g.finite_or(Error::PoleAtPoint)?;
    }
    for &b in params.b_list.iter() {
        let g = gamma_c(b - point);
        prod *= g.finite_or(Error::PoleAtPoint)?;
    }
    Ok(prod)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleSide {
    Left,
    Right,
}

/// One pole of the integrand in the `σ`-plane at fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolePoint {
    pub k: i64,
    pub sigma: Complex64,
    pub side: PoleSide,
    /// 1-based index of the originating parameter in its list.
    pub param_index: usize,
    pub m: u64,
    pub m_prime: u64,
}

/// Poles of the `a`-factors at fixed `k` within `|σ| ≤ sigma_window`:
/// the solutions of `a + (k+σ)/2 = −m`, `a' + (−k+σ)/2 = −m'`.
pub fn left_poles(params: &GParams, k: i64, sigma_window: f64) -> Vec<PolePoint> {
    let mut out = Vec::new();
    for (j, &aj) in params.a_list.iter().enumerate() {
        // m − m' = −(k + k_j); σ = −σ_j − (m + m')
        let d = -(k + aj.k);
        let mut t = 0i64;
        loop {
            let (m, mp) = if d >= 0 { (t + d, t) } else { (t, t - d) };
            if (m + mp) as f64 > sigma_window + aj.sigma.norm() + 1.0 {
                break;
            }
            let sigma = -aj.sigma - (m + mp) as f64;
            if sigma.norm() <= sigma_window {
                out.push(PolePoint {
                    k,
                    sigma,
                    side: PoleSide::Left,
                    param_index: j + 1,
                    m: m as u64,
                    m_prime: mp as u64,
                });
            }
            t += 1;
        }
    }
    out
}

/// Poles of the `b`-factors at fixed `k` (the mirror image of
/// [`left_poles`] under `(k, σ) ↦ (−k, −σ)` applied to each `b|b'`).
pub fn right_poles(params: &GParams, k: i64, sigma_window: f64) -> Vec<PolePoint> {
    let mut out = Vec::new();
    for (j, &bj) in params.b_list.iter().enumerate() {
        // m − m' = k − k_j; σ = σ_j + (m + m')
        let d = k - bj.k;
        let mut t = 0i64;
        loop {
            let (m, mp) = if d >= 0 { (t + d, t) } else { (t, t - d) };
            if (m + mp) as f64 > sigma_window + bj.sigma.norm() + 1.0 {
                break;
            }
            let sigma = bj.sigma + (m + mp) as f64;
            if sigma.norm() <= sigma_window {
                out.push(PolePoint {
                    k,
                    sigma,
                    side: PoleSide::Right,
                    param_index: j + 1,
                    m: m as u64,
                    m_prime: mp as u64,
                });
            }
            t += 1;
        }
    }
    out
}

/// A pair of parameters whose sums are integers, i.e. a point on one of
/// the singular hyperplanes where left and right pole families meet (or
/// where a gamma factor of the residue series degenerates).
///
/// Indices `alpha`, `beta` are 1-based. `m`, `m_prime` are the rounded
/// integer sums; both nonnegative for the spec's collision condition,
/// both nonpositive for the contour-breaking pole coincidences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Collision {
    pub alpha: usize,
    pub beta: usize,
    pub m: i64,
    pub m_prime: i64,
}

/// All index pairs with `a_α + b_β` and `a'_α + b'_β` within tolerance of
/// integers of equal sign (both ≥ 0, or both ≤ 0).
pub fn detect_collisions(params: &GParams) -> Vec<Collision> {
    let mut out = Vec::new();
    for (i, &a) in params.a_list.iter().enumerate() {
        for (j, &b) in params.b_list.iter().enumerate() {
            let s = a.a() + b.a();
            let sp = a.a_prime() + b.a_prime();
            let m = s.re.round();
            let mp = sp.re.round();
            let near = (s.re - m).hypot(s.im) <= LATTICE_TOL && (sp.re - mp).hypot(sp.im) <= LATTICE_TOL;
            if near && ((m >= 0.0 && mp >= 0.0) || (m <= 0.0 && mp <= 0.0)) {
                out.push(Collision {
                    alpha: i + 1,
                    beta: j + 1,
                    m: m as i64,
                    m_prime: mp as i64,
                });
            }
        }
    }
    out
}

/// A semicircular indentation of the contour around one misplaced pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detour {
    /// The pole being dodged.
    pub center: Complex64,
    pub radius: f64,
    /// Side of the pole the path passes: `Right` bulges into `Re σ > 0`.
    pub pass: PoleSide,
}

/// A contour for one `k`-summand: the imaginary axis plus finitely many
/// detours; it coincides with the axis outside a bounded region.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    pub k: i64,
    pub detours: Vec<Detour>,
}

/// Build a contour separating left from right poles at fixed `k`.
///
/// Left poles with `Re σ ≥ 0` get a detour passed on the right, right
/// poles with `Re σ ≤ 0` one passed on the left; the radius is half the
/// distance to the nearest other pole, capped at 0.25. When every
/// parameter has `Re(a+a') > 0` the plain axis comes back.
pub fn separating_contour(params: &GParams, k: i64) -> Result<ContourSpec, Error> {
    if !detect_collisions(params).is_empty() {
        return Err(Error::ParameterCollision);
    }

    // Misplaced poles are finite in number: enumerate within a window wide
    // enough to contain them all plus their nearest neighbours.
    let max_sig = params
        .a_list
        .iter()
        .chain(params.b_list.iter())
        .map(|p| p.sigma.norm())
        .fold(0.0f64, f64::max);
    let window = 2.0 * max_sig + 8.0;
    let lefts = left_poles(params, k, window);
    let rights = right_poles(params, k, window);

    let mut detours = Vec::new();
    let all: Vec<Complex64> =
        lefts.iter().map(|p| p.sigma).chain(rights.iter().map(|p| p.sigma)).collect();
    let mut add_detour = |sigma: Complex64, pass: PoleSide| {
        let mut gap = f64::INFINITY;
        for &other in &all {
            let d = (other - sigma).norm();
            if d > 1e-12 {
                gap = gap.min(d);
            }
        }
        let radius = (gap / 2.0).min(0.25);
        detours.push(Detour { center: sigma, radius, pass });
    };
    for p in &lefts {
        if p.sigma.re >= -1e-12 {
            add_detour(p.sigma, PoleSide::Right);
        }
    }
    for p in &rights {
        if p.sigma.re <= 1e-12 {
            add_detour(p.sigma, PoleSide::Left);
        }
    }

    resolve_detour_overlaps(&mut detours)?;
    detours.sort_by(|a, b| a.center.im.partial_cmp(&b.center.im).unwrap());
    Ok(ContourSpec { k, detours })
}

/// Merge same-side detours whose vertical extents overlap and shrink
/// opposite-side ones apart. Coincident opposite-side detours mean the
/// pole families cannot be separated.
fn resolve_detour_overlaps(detours: &mut Vec<Detour>) -> Result<(), Error> {
    loop {
        let mut changed = false;
        'outer: for i in 0..detours.len() {
            for j in (i + 1)..detours.len() {
                let (di, dj) = (detours[i], detours[j]);
                let dy = (di.center.im - dj.center.im).abs();
                if dy >= di.radius + dj.radius {
                    continue;
                }
                if di.pass == dj.pass {
                    // one bump around both poles
                    let lo = (di.center.im - di.radius).min(dj.center.im - dj.radius);
                    let hi = (di.center.im + di.radius).max(dj.center.im + dj.radius);
                    let x = match di.pass {
                        PoleSide::Right => di.center.re.max(dj.center.re),
                        PoleSide::Left => di.center.re.min(dj.center.re),
                    };
                    let center = Complex64::new(x, (lo + hi) / 2.0);
                    let radius = ((hi - lo) / 2.0)
                        .max((di.center - center).norm() + 0.05)
                        .max((dj.center - center).norm() + 0.05);
                    detours[i] = Detour { center, radius, pass: di.pass };
                    detours.remove(j);
                    changed = true;
                    break 'outer;
                } else {
                    if dy < 1e-9 {
                        return Err(Error::ParameterCollision);
                    }
                    let r = 0.45 * dy;
                    detours[i].radius = detours[i].radius.min(r);
                    detours[j].radius = detours[j].radius.min(r);
                }
            }
        }
        if !changed {
            return Ok(());
        }
    }
}
