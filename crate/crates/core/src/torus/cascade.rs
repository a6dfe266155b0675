use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

use super::DyadicGridFunction;

const NORMALIZED_TOL: f64 = 1e-9;

/// Largest odd `|r|` used for approach sequences `p e^{2 pi i r / 2^m}`.
pub const MAX_APPROACH_NUMERATOR: i64 = 15;

/// Solves `h(z^2) = h(z) psi(z)` on the grid with `h(1) = 1`, via
/// `h(z) = 1 / prod_{k<n} psi(z^{2^k})` for `z^{2^n} = 1`.
pub fn cascade_solve(psi: &DyadicGridFunction) -> Result<DyadicGridFunction> {
    let p0 = psi.values()[0];
    if (p0 - 1.0).norm() > NORMALIZED_TOL {
        return Err(Error::NotNormalized { re: p0.re, im: p0.im });
    }
    let size = psi.len();
    let mut h = vec![Complex64::new(1.0, 0.0); size];
    // h(z) = h(z^2) / psi(z); process points by increasing order
    for v in (0..psi.level()).rev() {
        let step = 1usize << v;
        for j in (step..size).step_by(2 * step) {
            h[j] = h[(2 * j) % size] / psi.values()[j];
        }
    }
    DyadicGridFunction::new(psi.level(), h)
}

/// Oscillation of a cascade solution near each grid point.
#[derive(Clone, Debug, Serialize)]
pub struct OscillationReport {
    pub level: u32,
    /// Character `z^k` divided out of `h` before measuring; `0` when `h` is not resolvable.
    pub character: i64,
    /// Index and value of the largest oscillation.
    pub worst_index: usize,
    pub max_oscillation: f64,
    pub oscillation_at_one: f64,
    #[serde(skip)]
    pub solution: DyadicGridFunction,
    #[serde(skip)]
    pub oscillations: Vec<f64>,
}

impl OscillationReport {
    /// No continuous solution at this resolution.
    pub fn is_obstructed(&self) -> bool {
        self.max_oscillation >= 1.0
    }

    pub fn at(&self, index: usize) -> f64 {
        self.oscillations[index]
    }

    fn from_solution(h: DyadicGridFunction) -> Self {
        let character = h.winding_number().unwrap_or(0);
        let corrected = h.twist(-character);
        let oscillations: Vec<f64> = (0..h.len()).map(|p| point_oscillation(&corrected, p)).collect();
        let (worst_index, max_oscillation) = oscillations
            .iter()
            .copied()
            .enumerate()
            .fold((0, 0.0), |acc, (i, o)| if o > acc.1 { (i, o) } else { acc });
        OscillationReport {
            level: h.level(),
            character,
            worst_index,
            max_oscillation,
            oscillation_at_one: oscillations[0],
            solution: h,
            oscillations,
        }
    }
}

/// Values of `h` along `p e^{2 pi i r / 2^m}` for the levels `m` the grid resolves.
pub fn approach_sequence(h: &DyadicGridFunction, p: usize, r: i64) -> Vec<(u32, Complex64)> {
    (1..=h.level())
        .map(|m| (m, h.at(p as i64 + r * (1i64 << (h.level() - m)))))
        .collect()
}

/// Largest distance between values of `h` on the fine half of all approach
/// sequences to grid point `p`.
fn point_oscillation(h: &DyadicGridFunction, p: usize) -> f64 {
    let n = h.level();
    let m_lo = n.div_ceil(2).max(1);
    let mut vals = Vec::new();
    for r in (-MAX_APPROACH_NUMERATOR..=MAX_APPROACH_NUMERATOR).filter(|r| r % 2 != 0) {
        for m in m_lo..=n {
            vals.push(h.at(p as i64 + r * (1i64 << (n - m))));
        }
    }
    diameter(&vals)
}

/// Largest pairwise distance. Points on the unit circle are handled by
/// sorting angles and pairing each with its nearest antipode.
fn diameter(vals: &[Complex64]) -> f64 {
    if vals.iter().any(|z| (z.norm() - 1.0).abs() > 1e-9) {
        let mut worst = 0.0f64;
        for (i, a) in vals.iter().enumerate() {
            for b in &vals[i + 1..] {
                worst = worst.max((a - b).norm());
            }
        }
        return worst;
    }
    let mut pts: Vec<(f64, Complex64)> = vals.iter().map(|z| (z.arg(), *z)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let n = pts.len();
    let mut worst = 0.0f64;
    for &(t, z) in &pts {
        let mut target = t + std::f64::consts::PI;
        if target > std::f64::consts::PI {
            target -= std::f64::consts::TAU;
        }
        let j = pts.partition_point(|p| p.0 < target);
        for k in [j + n - 1, j] {
            worst = worst.max((z - pts[k % n].1).norm());
        }
    }
    worst
}

/// Is `beta^f` grid-equivalent to a gauge automorphism?
/// Solves `conj(h(z)) h(z^2) = f(z) conj(f(1))`.
pub fn gauge_equiv_obstruction(f: &DyadicGridFunction) -> Result<OscillationReport> {
    if !f.is_t_valued() {
        return Err(Error::NotUnimodular);
    }
    let f1 = f.values()[0].conj();
    let psi = f.map(|_, z| z * f1);
    Ok(OscillationReport::from_solution(cascade_solve(&psi)?))
}

/// Does `beta^f` commute with the flip-flop up to `ad h(U)`?
/// Solves `h(z) conj(h(z^2)) = f(conj z) conj(f(z))`.
pub fn flipflop_commute_obstruction(f: &DyadicGridFunction) -> Result<OscillationReport> {
    if !f.is_t_valued() {
        return Err(Error::NotUnimodular);
    }
    let psi = f.reflect().conj().mul(f)?;
    Ok(OscillationReport::from_solution(cascade_solve(&psi)?))
}
