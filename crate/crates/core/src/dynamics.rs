//! Trajectories in exact-rational and big-float arithmetic, and phase-portrait CSV.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::model::KopelParams;

pub type Float = FBig<HalfEven>;

pub const DEFAULT_CAP_BITS: u64 = 4096;
pub const DEFAULT_PRECISION: usize = 256;

/// Big floats beyond 2^(2^ESCAPE_LOG2) stop the iteration.
const ESCAPE_LOG2: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact rationals until a numerator exceeds `cap_bits`, then big
    /// floats at `fallback_precision`.
    Exact { cap_bits: u64, fallback_precision: usize },
    /// Round-to-nearest-even big floats with `precision` bits.
    Bigfloat { precision: usize },
}

impl Default for Mode {
    fn default() -> Self {
        Mode::Exact { cap_bits: DEFAULT_CAP_BITS, fallback_precision: DEFAULT_PRECISION }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Exact(Rational, Rational),
    Float { x: Float, y: Float, precision: usize },
}

fn bigint_to_ibig(n: &BigInt) -> IBig {
    IBig::from_str(&n.to_string()).expect("decimal integer")
}

fn ibig_to_bigint(n: &IBig) -> BigInt {
    BigInt::from_str(&n.to_string()).expect("decimal integer")
}

pub fn rational_to_float(r: &Rational, precision: usize) -> Float {
    let n = Float::from(bigint_to_ibig(r.numer())).with_precision(precision).value();
    let d = Float::from(bigint_to_ibig(r.denom())).with_precision(precision).value();
    n / d
}

/// The exact value of a binary float.
pub fn float_to_rational(f: &Float) -> Rational {
    let repr = f.repr();
    let s = Rational::from_integer(ibig_to_bigint(repr.significand()));
    let e = repr.exponent();
    s * rational::pow2(e as i64)
}

impl State {
    pub fn is_exact(&self) -> bool {
        matches!(self, State::Exact(..))
    }

    /// Exact value of the stored coordinates (a float's binary value in
    /// big-float mode).
    pub fn to_rationals(&self) -> (Rational, Rational) {
        match self {
            State::Exact(x, y) => (x.clone(), y.clone()),
            State::Float { x, y, .. } => (float_to_rational(x), float_to_rational(y)),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            State::Exact(x, y) => (rational::to_f64(x), rational::to_f64(y)),
            State::Float { x, y, .. } => (x.to_f64().value(), y.to_f64().value()),
        }
    }

    pub fn decimal(&self, digits: usize) -> (String, String) {
        let (x, y) = self.to_rationals();
        (rational::to_decimal(&x, digits), rational::to_decimal(&y, digits))
    }

    fn escaped(&self) -> bool {
        match self {
            State::Exact(..) => false,
            State::Float { x, y, .. } => {
                [x, y].iter().any(|v| v.repr().exponent().unsigned_abs() as u64 > 1u64 << ESCAPE_LOG2)
            }
        }
    }
}

impl Serialize for State {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (x, y) = self.decimal(17);
        let mut st = s.serialize_struct("State", 4)?;
        st.serialize_field("x", &x)?;
        st.serialize_field("y", &y)?;
        match self {
            State::Exact(ex, ey) => {
                st.serialize_field("exact", &Some([ex.to_string(), ey.to_string()]))?;
                st.serialize_field("precision", &None::<usize>)?;
            }
            State::Float { precision, .. } => {
                st.serialize_field("exact", &None::<[String; 2]>)?;
                st.serialize_field("precision", &Some(*precision))?;
            }
        }
        st.end()
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.decimal(9);
        write!(f, "({x}, {y})")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub params: KopelParams,
    #[serde(with = "rational::serde_rat_pair")]
    pub initial: (Rational, Rational),
    pub mode: Mode,
    /// `points[t]` is the state after t steps; `points[0]` is the initial state.
    pub points: Vec<State>,
    /// First step whose exact iterate exceeded the bit cap; later points are floats.
    pub overflow_index: Option<usize>,
    /// Step at which the orbit left every representable range; iteration stopped there.
    pub escape_index: Option<usize>,
}

struct FloatMap {
    a1: Float,
    b1: Float,
    a2: Float,
    b2: Float,
    one: Float,
}

impl FloatMap {
    fn new(p: &KopelParams, prec: usize) -> FloatMap {
        let f = |r: &Rational| rational_to_float(r, prec);
        FloatMap {
            a1: f(&(Rational::one() - &p.rho1)),
            b1: f(&(&p.rho1 * &p.mu1)),
            a2: f(&(Rational::one() - &p.rho2)),
            b2: f(&(&p.rho2 * &p.mu2)),
            one: f(&Rational::one()),
        }
    }

    fn step(&self, x: &Float, y: &Float) -> (Float, Float) {
        let nx = &self.a1 * x + &self.b1 * y * (&self.one - y);
        let ny = &self.a2 * y + &self.b2 * x * (&self.one - x);
        (nx, ny)
    }
}

/// One exact step of the map.
pub fn step_exact(p: &KopelParams, x: &Rational, y: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let nx = (&one - &p.rho1) * x + &p.rho1 * &p.mu1 * y * (&one - y);
    let ny = (&one - &p.rho2) * y + &p.rho2 * &p.mu2 * x * (&one - x);
    (nx, ny)
}

fn numer_bits(x: &Rational, y: &Rational) -> u64 {
    x.numer().bits().max(y.numer().bits())
}

/// Applies the map `n` times from `initial`.
pub fn iterate_trajectory(params: &KopelParams, initial: &(Rational, Rational), n: usize, mode: Mode) -> Trajectory {
    let mut t = Trajectory {
        params: params.clone(),
        initial: initial.clone(),
        mode,
        points: Vec::with_capacity(n + 1),
        overflow_index: None,
        escape_index: None,
    };
    let (mut state, precision) = match mode {
        Mode::Exact { fallback_precision, .. } => (State::Exact(initial.0.clone(), initial.1.clone()), fallback_precision),
        Mode::Bigfloat { precision } => (
            State::Float {
                x: rational_to_float(&initial.0, precision),
                y: rational_to_float(&initial.1, precision),
                precision,
            },
            precision,
        ),
    };
    let fm = FloatMap::new(params, precision);
    t.points.push(state.clone());
    for k in 1..=n {
        state = match &state {
            State::Exact(x, y) => {
                let (nx, ny) = step_exact(params, x, y);
                State::Exact(nx, ny)
            }
            State::Float { x, y, precision } => {
                let (nx, ny) = fm.step(x, y);
                State::Float { x: nx, y: ny, precision: *precision }
            }
        };
        if let (Mode::Exact { cap_bits, .. }, State::Exact(x, y)) = (mode, &state) {
            // the exact point is kept; iteration continues in floats
            if t.overflow_index.is_none() && numer_bits(x, y) > cap_bits {
                t.overflow_index = Some(k);
                t.points.push(state.clone());
                state = State::Float {
                    x: rational_to_float(x, precision),
                    y: rational_to_float(y, precision),
                    precision,
                };
                continue;
            }
        }
        if state.escaped() {
            t.escape_index = Some(k);
            break;
        }
        t.points.push(state.clone());
    }
    t
}

/// Writes `t,x,y` rows for t = transient_skip..=n (plus `x_exact,y_exact`
/// for exact points when `exact_columns` is set).
pub fn write_portrait_csv<W: Write>(
    traj: &Trajectory,
    transient_skip: usize,
    digits: usize,
    exact_columns: bool,
    mut w: W,
) -> Result<()> {
    if exact_columns {
        writeln!(w, "t,x,y,x_exact,y_exact")?;
    } else {
        writeln!(w, "t,x,y")?;
    }
    for (t, s) in traj.points.iter().enumerate().skip(transient_skip) {
        let (x, y) = s.decimal(digits);
        if exact_columns {
            let (ex, ey) = match s {
                State::Exact(a, b) => (a.to_string(), b.to_string()),
                State::Float { .. } => (String::new(), String::new()),
            };
            writeln!(w, "{t},{x},{y},{ex},{ey}")?;
        } else {
            writeln!(w, "{t},{x},{y}")?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct PortraitSpec {
    pub params: KopelParams,
    pub initial: (Rational, Rational),
    pub n: usize,
    pub transient_skip: usize,
    pub digits: usize,
    pub mode: Mode,
    pub exact_columns: bool,
}

/// Iterates and writes the portrait CSV to `path`.
pub fn emit_phase_portrait(spec: &PortraitSpec, path: &Path) -> Result<Trajectory> {
    if spec.transient_skip > spec.n {
        return Err(Error::Usage("transient skip exceeds the number of iterations".into()));
    }
    let traj = iterate_trajectory(&spec.params, &spec.initial, spec.n, spec.mode);
    let f = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(f);
    write_portrait_csv(&traj, spec.transient_skip, spec.digits, spec.exact_columns, &mut w)?;
    w.flush()?;
    Ok(traj)
}

/// Relative agreement of two values in significant decimal digits.
pub fn agreeing_digits(a: &Rational, b: &Rational) -> f64 {
    if a == b {
        return f64::INFINITY;
    }
    let scale = rational::max(&rational::abs(a), &rational::abs(b));
    if scale.is_zero() {
        return f64::INFINITY;
    }
    let rel = rational::abs(&(a - b)) / scale;
    let bits = rel.denom().bits() as f64 - rel.numer().bits() as f64;
    bits * std::f64::consts::LOG10_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn sym(rho: Rational, mu: Rational) -> KopelParams {
        crate::model::SymParams::new(mu, rho).unwrap().to_kopel()
    }

    #[test]
    fn zero_steps() {
        let t = iterate_trajectory(&sym(rat(1, 2), int(3)), &(rat(1, 3), rat(1, 4)), 0, Mode::default());
        assert_eq!(t.points, vec![State::Exact(rat(1, 3), rat(1, 4))]);
    }

    #[test]
    fn first_step_exact() {
        let t = iterate_trajectory(&sym(rat(5, 32), int(59)), &(rat(2, 5), rat(1, 100)), 1, Mode::default());
        // 0.428765625 exactly
        assert_eq!(t.points[1].to_rationals().0, rat(428765625, 1_000_000_000));
    }

    #[test]
    fn float_roundtrip() {
        let f = rational_to_float(&rat(3, 8), 64);
        assert_eq!(float_to_rational(&f), rat(3, 8));
        let g = rational_to_float(&rat(1, 3), 64);
        assert!(agreeing_digits(&float_to_rational(&g), &rat(1, 3)) > 18.0);
    }

    #[test]
    fn overflow_switches_mode() {
        let mode = Mode::Exact { cap_bits: 64, fallback_precision: 128 };
        let t = iterate_trajectory(&sym(rat(5, 32), int(59)), &(rat(2, 5), rat(1, 100)), 8, mode);
        let k = t.overflow_index.unwrap();
        assert!(t.points[k].is_exact());
        assert!(!t.points[k + 1].is_exact());
        assert_eq!(t.points.len(), 9);
    }

    #[test]
    fn fixed_point_rows_identical() {
        let p = sym(rat(1, 2), int(2));
        let t = iterate_trajectory(&p, &(rat(1, 2), rat(1, 2)), 5, Mode::default());
        assert!(t.points.iter().all(|s| *s == State::Exact(rat(1, 2), rat(1, 2))));
    }
}
