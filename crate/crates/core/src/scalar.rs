//! Scalars and spectra.
//!
//! Verdicts are computed exactly over [`Rational`] (or `i64` for integer
//! inputs). `f64` is available for sampled spectra and compares against
//! [`FLOAT_TOLERANCE`].

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Absolute tolerance used by the `f64` scalar when classifying signs.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Sign under this scalar's comparison policy (exact except for `f64`).
    fn sign(&self) -> Ordering;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;
    fn render(&self) -> String;

    fn is_negative_strict(&self) -> bool {
        self.sign() == Ordering::Less
    }
    fn is_tight(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

/// Scalars closed under division.
pub trait FieldScalar: Scalar + Div<Output = Self> {}

impl Scalar for i64 {
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Rational {
    fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
impl FieldScalar for Rational {}

impl Scalar for f64 {
    fn sign(&self) -> Ordering {
        if self.abs() <= FLOAT_TOLERANCE {
            Ordering::Equal
        } else if *self > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn render(&self) -> String {
        format!("{self:?}")
    }
}
impl FieldScalar for f64 {}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"3/2"`, `"-4"` or a plain decimal such as `"0.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    let bad = || Error::Parse(format!("not a rational number: {t:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {t:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = int_part.abs() * &scale + frac_part;
        let numer = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(numer, scale));
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// A weakly decreasing list of eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T = Rational>(Vec<T>);

impl<T: Scalar> Spectrum<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        Self::for_factor(values, 0)
    }

    /// Like [`Spectrum::new`] but reports `factor` in the ordering error.
    pub fn for_factor(values: Vec<T>, factor: usize) -> Result<Self> {
        for (i, w) in values.windows(2).enumerate() {
            if w[0] < w[1] {
                return Err(Error::Unordered {
                    factor,
                    position: i + 2,
                });
            }
        }
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn into_values(self) -> Vec<T> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based access, matching index-set conventions.
    pub fn at(&self, index: u32) -> &T {
        &self.0[index as usize - 1]
    }

    pub fn total(&self) -> T {
        self.0.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Spectrum of `-A` given the spectrum of `A`.
    pub fn negate_reverse(&self) -> Self {
        Spectrum(self.0.iter().rev().map(|v| -v.clone()).collect())
    }

    pub fn shifted(&self, by: &T) -> Self {
        Spectrum(self.0.iter().map(|v| v.clone() + by.clone()).collect())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Spectrum<U> {
        Spectrum(self.0.iter().map(f).collect())
    }
}

impl Spectrum<i64> {
    pub fn to_rational(&self) -> Spectrum<Rational> {
        self.map(|v| Rational::from_i64(*v))
    }
}

impl Spectrum<Rational> {
    pub fn to_f64(&self) -> Spectrum<f64> {
        self.map(Scalar::to_f64)
    }

    /// Returns the integer spectrum if every entry is integral.
    pub fn to_integers(&self) -> Option<Spectrum<i64>> {
        let mut out = Vec::with_capacity(self.len());
        for v in &self.0 {
            if !v.is_integer() {
                return None;
            }
            out.push(v.to_integer().to_i64()?);
        }
        Some(Spectrum(out))
    }
}

/// Checks that every spectrum is ordered and all share one length.
pub fn validate_spectra<T: Scalar>(values: Vec<Vec<T>>) -> Result<Vec<Spectrum<T>>> {
    let n = values.first().map_or(0, Vec::len);
    values
        .into_iter()
        .enumerate()
        .map(|(s, v)| {
            if v.len() != n {
                return Err(Error::Dimension(format!(
                    "spectrum {} has length {}, expected {n}",
                    s + 1,
                    v.len()
                )));
            }
            Spectrum::for_factor(v, s + 1)
        })
        .collect()
}

pub fn parse_spectrum(text: &str, factor: usize) -> Result<Spectrum<Rational>> {
    let values = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Spectrum::for_factor(values, factor)
}

/// Parses `"1,1;1,0"` into one spectrum per `;`-separated factor.
pub fn parse_spectra(text: &str) -> Result<Vec<Spectrum<Rational>>> {
    let rows = text
        .split(';')
        .map(|f| {
            f.split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    validate_spectra(rows)
}

pub fn format_spectrum<T: Scalar>(spectrum: &Spectrum<T>) -> String {
    spectrum
        .values()
        .iter()
        .map(Scalar::render)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn format_spectra<T: Scalar>(spectra: &[Spectrum<T>]) -> String {
    spectra
        .iter()
        .map(format_spectrum)
        .collect::<Vec<_>>()
        .join(";")
}
