use std::f64::consts::{PI, TAU};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_scalar;

/// Largest supported grid level.
pub const MAX_GRID_LEVEL: u32 = 24;

const UNIT_TOL: f64 = 1e-9;

/// Samples `values[j] = f(e^{2 pi i j / 2^level})`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr", into = "GridRepr")]
pub struct DyadicGridFunction {
    level: u32,
    values: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    level: u32,
    values: Vec<[f64; 2]>,
}

impl TryFrom<GridRepr> for DyadicGridFunction {
    type Error = Error;
    fn try_from(r: GridRepr) -> Result<Self> {
        DyadicGridFunction::new(r.level, r.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<DyadicGridFunction> for GridRepr {
    fn from(g: DyadicGridFunction) -> Self {
        GridRepr { level: g.level, values: g.values.into_iter().map(|z| [z.re, z.im]).collect() }
    }
}

impl DyadicGridFunction {
    pub fn new(level: u32, values: Vec<Complex64>) -> Result<Self> {
        if level > MAX_GRID_LEVEL {
            return Err(Error::InvalidInput(format!("grid level {level} exceeds {MAX_GRID_LEVEL}")));
        }
        if values.len() != 1usize << level {
            return Err(Error::InvalidInput(format!(
                "level {level} needs {} values, got {}",
                1usize << level,
                values.len()
            )));
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite grid value".into()));
        }
        Ok(DyadicGridFunction { level, values })
    }

    /// Samples `f(theta)` at `theta = 2 pi j / 2^level`.
    pub fn from_angle_fn(level: u32, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let n = 1usize.checked_shl(level).filter(|_| level <= MAX_GRID_LEVEL).ok_or_else(|| {
            Error::InvalidInput(format!("grid level {level} exceeds {MAX_GRID_LEVEL}"))
        })?;
        DyadicGridFunction::new(level, (0..n).map(|j| f(TAU * j as f64 / n as f64)).collect())
    }

    pub fn constant(level: u32, c: Complex64) -> Result<Self> {
        DyadicGridFunction::from_angle_fn(level, |_| c)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at grid index `j`, taken mod `2^level`.
    pub fn at(&self, j: i64) -> Complex64 {
        self.values[j.rem_euclid(self.len() as i64) as usize]
    }

    /// The grid point `e^{2 pi i j / 2^level}`.
    pub fn point(&self, j: i64) -> Complex64 {
        Complex64::from_polar(1.0, TAU * j.rem_euclid(self.len() as i64) as f64 / self.len() as f64)
    }

    pub fn is_t_valued(&self) -> bool {
        self.values.iter().all(|z| (z.norm() - 1.0).abs() <= UNIT_TOL)
    }

    pub fn is_normalized(&self) -> bool {
        (self.values[0] - 1.0).norm() <= UNIT_TOL
    }

    pub fn map(&self, f: impl Fn(i64, Complex64) -> Complex64) -> DyadicGridFunction {
        let values = self.values.iter().enumerate().map(|(j, &z)| f(j as i64, z)).collect();
        DyadicGridFunction { level: self.level, values }
    }

    pub fn mul(&self, rhs: &DyadicGridFunction) -> Result<DyadicGridFunction> {
        if self.level != rhs.level {
            return Err(Error::InvalidInput(format!("grid levels {} and {} differ", self.level, rhs.level)));
        }
        Ok(self.map(|j, z| z * rhs.values[j as usize]))
    }

    /// `z -> f(conj z)`, i.e. index `j -> -j`.
    pub fn reflect(&self) -> DyadicGridFunction {
        self.map(|j, _| self.at(-j))
    }

    pub fn conj(&self) -> DyadicGridFunction {
        self.map(|_, z| z.conj())
    }

    /// Multiplies by the character `z^k`.
    pub fn twist(&self, k: i64) -> DyadicGridFunction {
        let n = self.len() as i64;
        self.map(|j, z| z * self.point((j * k.rem_euclid(n)).rem_euclid(n)))
    }

    /// Winding number from principal phase increments between adjacent samples.
    pub fn winding_number(&self) -> Result<i64> {
        if self.level < 3 {
            return Err(Error::InvalidInput(format!("winding number needs level >= 3, got {}", self.level)));
        }
        if !self.is_t_valued() {
            return Err(Error::NotUnimodular);
        }
        let mut total = 0.0;
        for j in 0..self.len() {
            let jump = (self.at(j as i64 + 1) / self.values[j]).arg();
            if jump.abs() >= PI - 0.1 {
                return Err(Error::Undersampled { index: j, jump });
            }
            total += jump;
        }
        Ok((total / TAU).round() as i64)
    }
}

/// Named sample functions: `step:eps`, `bump:value@center[,width]`, `char:n`.
#[derive(Clone, Debug, PartialEq)]
pub enum Preset {
    /// `1` on `[0, pi]`, `-1` on `[pi + eps, 2 pi - eps]`, phase interpolated between.
    Step { eps: f64 },
    /// `1` outside `|theta - center| < width`, reaching `value` at `center`.
    Bump { value: Complex64, center: f64, width: f64 },
    Char(i64),
}

const ENDPOINT_TOL: f64 = 1e-12;

impl Preset {
    pub fn eval(&self, theta: f64) -> Complex64 {
        let theta = theta.rem_euclid(TAU);
        match *self {
            Preset::Step { eps } => {
                let phase = if theta <= PI + ENDPOINT_TOL {
                    0.0
                } else if theta >= PI + eps - ENDPOINT_TOL && theta <= TAU - eps + ENDPOINT_TOL {
                    PI
                } else if theta < PI + eps {
                    PI * (theta - PI) / eps
                } else {
                    PI * (TAU - theta) / eps
                };
                Complex64::from_polar(1.0, phase)
            }
            Preset::Bump { value, center, width } => {
                let d = (theta - center + PI).rem_euclid(TAU) - PI;
                if d.abs() >= width {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, value.arg() * (1.0 - d.abs() / width))
                }
            }
            Preset::Char(n) => Complex64::from_polar(1.0, theta * n as f64),
        }
    }

    pub fn sample(&self, level: u32) -> Result<DyadicGridFunction> {
        match *self {
            // exact index arithmetic keeps characters free of angle rounding
            Preset::Char(n) => {
                let size = 1i64.checked_shl(level).filter(|_| level <= MAX_GRID_LEVEL).ok_or_else(|| {
                    Error::InvalidInput(format!("grid level {level} exceeds {MAX_GRID_LEVEL}"))
                })?;
                let k = n.rem_euclid(size);
                DyadicGridFunction::from_angle_fn(level, |_| Complex64::new(1.0, 0.0))
                    .map(|g| g.map(|j, _| g.point((j * k).rem_euclid(size))))
            }
            _ => DyadicGridFunction::from_angle_fn(level, |t| self.eval(t)),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("unknown preset {s:?}"));
        let (name, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        match name {
            "step" => {
                let eps = parse_angle(arg)?;
                if !(eps > 0.0 && eps <= PI / 4.0 + ENDPOINT_TOL) {
                    return Err(Error::InvalidInput(format!("step width must lie in (0, pi/4]: {arg}")));
                }
                Ok(Preset::Step { eps })
            }
            "bump" => {
                let (value, rest) = arg.split_once('@').ok_or_else(bad)?;
                let (center, width) = match rest.split_once(',') {
                    Some((c, w)) => (parse_angle(c)?, parse_angle(w)?),
                    None => (parse_angle(rest)?, PI / 16.0),
                };
                let value = parse_scalar(value)?.to_complex();
                if (value.norm() - 1.0).abs() > UNIT_TOL {
                    return Err(Error::NotUnimodular);
                }
                if !(width > 0.0 && width < PI) {
                    return Err(Error::InvalidInput(format!("bump width out of range: {rest}")));
                }
                Ok(Preset::Bump { value, center, width })
            }
            "char" => arg.trim().parse().map(Preset::Char).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Parses `pi`, `9pi/8`, `-pi/4`, `0.25` and the like.
pub fn parse_angle(s: &str) -> Result<f64> {
    let bad = || Error::InvalidInput(format!("cannot read angle {s:?}"));
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t, 1.0),
    };
    let value = match num.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.trim().trim_end_matches('*');
            let c = match coef {
                "" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            c * PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    let out = value / den;
    if out.is_finite() {
        Ok(out)
    } else {
        Err(bad())
    }
}
