//! Scalar backends.
//!
//! Two implementations of [`Scalar`] are provided:
//!
//! * [`Exact`]: Gaussian rationals `re + im·i` with arbitrary precision
//!   numerators and denominators. Every field operation is exact and equality
//!   is decidable, so identity checks are real proofs on the given data.
//! * [`Float`]: complex doubles compared componentwise against a process-wide
//!   tolerance (default `1e-9`, see [`set_float_tolerance`]).
//!
//! Linear-algebra kernels that depend on the number system (rank, positive
//! definiteness) live on the trait so that the exact backend can use
//! fraction-free elimination.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Which arithmetic a computation ran with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

/// A complex number system the engine can compute over.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn imag_unit() -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_real(&self) -> bool;
    fn is_positive_real(&self) -> bool;

    /// Preference when choosing an elimination pivot; zero means unusable.
    fn pivot_weight(&self) -> f64;

    /// Rank of the row space spanned by `rows`.
    fn rank(rows: Vec<Vec<Self>>) -> usize;

    /// Sylvester's criterion on a Hermitian matrix: `Err(k)` names the first
    /// leading principal minor (1-based size `k`) that is not positive.
    fn leading_minors_positive(matrix: &[Vec<Self>]) -> std::result::Result<(), usize>;

    /// Parse from the `[re, im]` string pair used by the JSON formats.
    fn parse(re: &str, im: &str) -> Result<Self>;
    fn to_parts(&self) -> (String, String);

    /// `Some(tol)` for approximate backends.
    fn tolerance() -> Option<f64>;
    fn to_complex64(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = self.add(rhs);
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }

    fn is_one(&self) -> bool {
        self.approx_eq(&Self::one())
    }
}

// ---------------------------------------------------------------------------
// Exact backend

/// Gaussian rational number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exact {
    pub re: BigRational,
    pub im: BigRational,
}

impl Exact {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn complex(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Self {
            re: ratio(re_num, re_den),
            im: ratio(im_num, im_den),
        }
    }
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        // finite decimal, converted exactly
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut num: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -&self.im)
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Scalar for Exact {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    fn one() -> Self {
        Self::real(BigRational::one())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(ratio(num, den))
    }

    fn imag_unit() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        let re = if rhs.re.is_zero() {
            self.re.clone()
        } else {
            &self.re + &rhs.re
        };
        let im = if rhs.im.is_zero() {
            self.im.clone()
        } else {
            &self.im + &rhs.im
        };
        Self { re, im }
    }

    fn add_assign(&mut self, rhs: &Self) {
        if !rhs.re.is_zero() {
            self.re += &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // most values in this engine are real
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(&self.re * &rhs.re);
        }
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn neg(&self) -> Self {
        Self {
            re: -&self.re,
            im: -&self.im,
        }
    }

    fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Self::real(self.re.recip()));
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(Self {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn is_positive_real(&self) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn rank(rows: Vec<Vec<Self>>) -> usize {
        let mut m: Vec<Vec<GaussInt>> = rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| clear_denominators(r))
            .collect();
        bareiss_rank(&mut m)
    }

    fn leading_minors_positive(matrix: &[Vec<Self>]) -> std::result::Result<(), usize> {
        // Row scaling by positive integers keeps the sign of every leading
        // minor, and without pivoting the k-th Bareiss pivot is the k-th
        // leading minor of the scaled matrix.
        let mut m: Vec<Vec<GaussInt>> = matrix.iter().map(|r| clear_denominators(r)).collect();
        let n = m.len();
        let mut prev = GaussInt::one();
        for k in 0..n {
            let pivot = m[k][k].clone();
            if !(pivot.im.is_zero() && pivot.re.is_positive()) {
                return Err(k + 1);
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = v.exact_div(&prev);
                }
                m[i][k] = GaussInt::zero();
            }
            prev = pivot;
        }
        Ok(())
    }

    fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(Self::new(parse_rational(re)?, parse_rational(im)?))
    }

    fn to_parts(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }

    fn tolerance() -> Option<f64> {
        None
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Gaussian integer used by the fraction-free kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        Self {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        Self {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self {
                re: &self.re * &rhs.re,
                im: BigInt::zero(),
            };
        }
        Self {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    /// Division known to be exact in `Z[i]`.
    fn exact_div(&self, d: &Self) -> Self {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return Self {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let conj = Self {
            re: d.re.clone(),
            im: -&d.im,
        };
        let p = self.mul(&conj);
        debug_assert!((&p.re % &norm).is_zero() && (&p.im % &norm).is_zero());
        Self {
            re: &p.re / &norm,
            im: &p.im / &norm,
        }
    }
}

fn clear_denominators(row: &[Exact]) -> Vec<GaussInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.re.denom());
        lcm = lcm.lcm(x.im.denom());
    }
    row.iter()
        .map(|x| GaussInt {
            re: x.re.numer() * (&lcm / x.re.denom()),
            im: x.im.numer() * (&lcm / x.im.denom()),
        })
        .collect()
}

/// Fraction-free (Bareiss) row reduction returning the rank. Columns without
/// a pivot are skipped; every intermediate entry stays a minor of the input,
/// so each division is exact.
fn bareiss_rank(m: &mut [Vec<GaussInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = GaussInt::one();
    let mut k = 0;
    for col in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(k, p);
        let pivot = m[k][col].clone();
        let (head, tail) = m.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = if factor.is_zero() {
                    pivot.mul(&row[j])
                } else {
                    pivot.mul(&row[j]).sub(&factor.mul(&pivot_row[j]))
                };
                row[j] = v.exact_div(&prev);
            }
            row[col] = GaussInt::zero();
        }
        prev = pivot;
        k += 1;
    }
    k
}

// ---------------------------------------------------------------------------
// Float backend

static FLOAT_TOLERANCE: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Set the componentwise tolerance used by the [`Float`] backend.
pub fn set_float_tolerance(tol: f64) {
    FLOAT_TOLERANCE.store(tol.to_bits(), Ordering::Relaxed);
}

pub fn float_tolerance() -> f64 {
    f64::from_bits(FLOAT_TOLERANCE.load(Ordering::Relaxed))
}

/// Complex double with tolerance-based equality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Float(pub Complex64);

impl Float {
    pub fn new(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Self(Complex64::from_polar(r, theta))
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{}", self.0.re)
        } else {
            write!(f, "{}{:+}i", self.0.re, self.0.im)
        }
    }
}

fn parse_f64(text: &str) -> Result<f64> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: f64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
        let q: f64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
        return Ok(p / q);
    }
    t.parse().map_err(|_| Error::Parse(format!("bad number {text:?}")))
}

impl Scalar for Float {
    const BACKEND: Backend = Backend::Float;

    fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    fn one() -> Self {
        Self::new(1.0, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(num as f64 / den as f64, 0.0)
    }

    fn imag_unit() -> Self {
        Self::new(0.0, 1.0)
    }

    fn add(&self, rhs: &Self) -> Self {
        Self(self.0 + rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self(self.0 - rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }

    fn neg(&self) -> Self {
        Self(-self.0)
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self(self.0.inv()))
        }
    }

    fn is_zero(&self) -> bool {
        let tol = float_tolerance();
        self.0.re.abs() <= tol && self.0.im.abs() <= tol
    }

    fn is_real(&self) -> bool {
        self.0.im.abs() <= float_tolerance()
    }

    fn is_positive_real(&self) -> bool {
        self.is_real() && self.0.re > float_tolerance()
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            self.0.norm()
        }
    }

    fn rank(mut rows: Vec<Vec<Self>>) -> usize {
        let tol = float_tolerance();
        let nrows = rows.len();
        if nrows == 0 {
            return 0;
        }
        let cols = rows[0].len();
        let mut k = 0;
        for col in 0..cols {
            if k == nrows {
                break;
            }
            let (best, mag) = (k..nrows)
                .map(|r| (r, rows[r][col].0.norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if mag <= tol {
                continue;
            }
            rows.swap(k, best);
            let pivot = rows[k][col].0;
            let pivot_row = rows[k].clone();
            for row in rows.iter_mut().skip(k + 1) {
                let f = row[col].0 / pivot;
                for j in col..cols {
                    row[j].0 -= f * pivot_row[j].0;
                }
            }
            k += 1;
        }
        k
    }

    fn leading_minors_positive(matrix: &[Vec<Self>]) -> std::result::Result<(), usize> {
        let n = matrix.len();
        let mut m: Vec<Vec<Complex64>> = matrix.iter().map(|r| r.iter().map(|x| x.0).collect()).collect();
        let tol = float_tolerance();
        for k in 0..n {
            let pivot = m[k][k];
            if pivot.im.abs() > tol || pivot.re <= tol {
                return Err(k + 1);
            }
            for i in k + 1..n {
                let f = m[i][k] / pivot;
                for j in k..n {
                    let v = m[k][j];
                    m[i][j] -= f * v;
                }
            }
        }
        Ok(())
    }

    fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(Self::new(parse_f64(re)?, parse_f64(im)?))
    }

    fn to_parts(&self) -> (String, String) {
        (format!("{}", self.0.re), format!("{}", self.0.im))
    }

    fn tolerance() -> Option<f64> {
        Some(float_tolerance())
    }

    fn to_complex64(&self) -> Complex64 {
        self.0
    }
}
