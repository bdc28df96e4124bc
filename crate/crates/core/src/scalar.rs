//! Exact scalars: Gaussian-rational Laurent polynomials in a formal symbol Π
//! standing for the transcendental π.
//!
//! Every coefficient appearing in the curvature formulas and the stationary
//! phase expansion is of this shape (e.g. `1/8 · π⁻¹`, `1/128 · π⁻²`), so the
//! whole pipeline can run with zero rounding.  A [`PiScalar`] is a finite map
//! from an integer Π-exponent to a complex number with rational real and
//! imaginary parts, kept in canonical form (no zero terms stored).
//!
//! Because π is transcendental, two `PiScalar`s are equal as complex numbers
//! iff they are structurally equal — equality testing is exact and decidable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{BtError, Result};

/// A complex number with exact rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }
    pub fn one() -> Self {
        GaussRat { re: BigRational::one(), im: BigRational::zero() }
    }
    pub fn from_re(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
    fn mul(&self, other: &Self) -> Self {
        GaussRat {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn add(&self, other: &Self) -> Self {
        GaussRat { re: &self.re + &other.re, im: &self.im + &other.im }
    }
    fn neg(&self) -> Self {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussRat { re: &self.re / &norm, im: -(&self.im / &norm) })
    }
}

/// Exact complex scalar: finite Laurent polynomial `Σ_m c_m Π^m` with
/// Gaussian-rational coefficients `c_m` and integer exponents `m`.
///
/// Invariant: no stored zero coefficient (canonical form is unique, so
/// structural equality is numeric equality).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiScalar {
    terms: BTreeMap<i64, GaussRat>,
}

impl PiScalar {
    // ----- constructors -----

    pub fn zero() -> Self {
        PiScalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `p/q` as a Π-free scalar. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::monomial(0, GaussRat::from_re(r))
    }

    /// The symbol Π itself.
    pub fn pi() -> Self {
        Self::pi_pow(1)
    }

    /// Π^m.
    pub fn pi_pow(m: i64) -> Self {
        Self::monomial(m, GaussRat::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::monomial(0, GaussRat { re: BigRational::zero(), im: BigRational::one() })
    }

    /// `c · Π^m` for a single coefficient.
    pub fn monomial(m: i64, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        PiScalar { terms }
    }

    /// `(p/q) · Π^m`.
    pub fn rational_pi(p: i64, q: i64, m: i64) -> Self {
        Self::monomial(m, GaussRat::from_re(BigRational::new(BigInt::from(p), BigInt::from(q))))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, GaussRat)>) -> Self {
        let mut s = Self::zero();
        for (m, c) in it {
            s.add_term(m, c);
        }
        s
    }

    // ----- inspectors -----

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self == &Self::one()
    }

    /// All coefficients have zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of Π^m (zero if absent).
    pub fn coeff(&self, m: i64) -> GaussRat {
        self.terms.get(&m).cloned().unwrap_or_else(GaussRat::zero)
    }

    // ----- arithmetic helpers -----

    fn add_term(&mut self, m: i64, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn conj(&self) -> Self {
        PiScalar { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// Real part as a PiScalar.
    pub fn re(&self) -> Self {
        PiScalar {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.re.is_zero())
                .map(|(m, c)| (*m, GaussRat::from_re(c.re.clone())))
                .collect(),
        }
    }

    /// Imaginary part (a real PiScalar).
    pub fn im(&self) -> Self {
        PiScalar {
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.im.is_zero())
                .map(|(m, c)| (*m, GaussRat::from_re(c.im.clone())))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact inverse. Only Π-monomials (single-term scalars) are invertible
    /// inside the Laurent ring; anything else is an error.
    pub fn try_inv(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(BtError::NotInvertible(format!("{self}")));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let ci = c.inv().ok_or_else(|| BtError::NotInvertible(format!("{self}")))?;
        Ok(Self::monomial(-m, ci))
    }

    /// Exact division by a Π-monomial.
    pub fn try_div(&self, d: &Self) -> Result<Self> {
        Ok(self * &d.try_inv()?)
    }

    /// Sign of a real PiScalar, decided exactly where possible.
    ///
    /// If every term has the same coefficient sign the scalar's sign follows
    /// (Π > 0). Otherwise the value is bracketed with a rational enclosure of
    /// π; an enclosure that straddles zero is reported as indeterminate.
    pub fn sign(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(BtError::NotReal(format!("{self}")));
        }
        if self.is_zero() {
            return Ok(0);
        }
        let mut pos = false;
        let mut neg = false;
        for c in self.terms.values() {
            if c.re.is_positive() {
                pos = true;
            } else {
                neg = true;
            }
        }
        if pos && !neg {
            return Ok(1);
        }
        if neg && !pos {
            return Ok(-1);
        }
        // Mixed signs: interval arithmetic with π ∈ [p_lo, p_hi].
        let p_lo = BigRational::new(BigInt::from(3141592653589793u64), BigInt::from(10u64.pow(15)));
        let p_hi = BigRational::new(BigInt::from(3141592653589794u64), BigInt::from(10u64.pow(15)));
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (m, c) in &self.terms {
            // Bounds for Π^m with m possibly negative.
            let (pm_lo, pm_hi) = if *m >= 0 {
                (pow_rat(&p_lo, *m as u32), pow_rat(&p_hi, *m as u32))
            } else {
                (
                    pow_rat(&p_hi, (-m) as u32).recip(),
                    pow_rat(&p_lo, (-m) as u32).recip(),
                )
            };
            if c.re.is_positive() {
                lo += &c.re * &pm_lo;
                hi += &c.re * &pm_hi;
            } else {
                lo += &c.re * &pm_hi;
                hi += &c.re * &pm_lo;
            }
        }
        if lo.is_positive() {
            Ok(1)
        } else if hi.is_negative() {
            Ok(-1)
        } else {
            Err(BtError::IndeterminateSign(format!("{self}")))
        }
    }

    // ----- numeric evaluation -----

    /// Approximate complex value with f64 π.
    pub fn to_f64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (m, c) in &self.terms {
            let p = std::f64::consts::PI.powi(*m as i32);
            re += c.re.to_f64().unwrap_or(f64::NAN) * p;
            im += c.im.to_f64().unwrap_or(f64::NAN) * p;
        }
        (re, im)
    }

    /// High-precision decimal rendering (30 significant digits), substituting
    /// a 40-digit rational approximation for π. Purely presentational.
    pub fn to_decimal_string(&self) -> String {
        let re = decimal_30(&self.eval_part(false));
        if self.is_real() {
            re
        } else {
            let im = decimal_30(&self.eval_part(true));
            format!("{re} + {im}i")
        }
    }

    fn eval_part(&self, imaginary: bool) -> BigRational {
        // π to 40 digits as a rational.
        let num: BigInt =
            "31415926535897932384626433832795028841972".parse().unwrap();
        let den: BigInt = BigInt::from(10u8).pow(40u32);
        let pi = BigRational::new(num, den);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let p = if *m >= 0 { pow_rat(&pi, *m as u32) } else { pow_rat(&pi, (-m) as u32).recip() };
            let coeff = if imaginary { &c.im } else { &c.re };
            acc += coeff * &p;
        }
        acc
    }
}

fn pow_rat(r: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

/// 30-significant-digit decimal string of an exact rational.
fn decimal_30(r: &BigRational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Scale so that we get 30 significant digits.
    let num = a.numer().clone();
    let den = a.denom().clone();
    // integer part digit count
    let int_part = &num / &den;
    let int_digits = if int_part.is_zero() { 0 } else { int_part.to_string().len() };
    let frac_digits = if int_digits >= 30 { 0 } else { 30 - int_digits };
    let scaled = &num * BigInt::from(10u8).pow(frac_digits as u32) / &den;
    let s = scaled.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if frac_digits == 0 {
        out.push_str(&s);
    } else if s.len() <= frac_digits {
        out.push_str("0.");
        out.push_str(&"0".repeat(frac_digits - s.len()));
        out.push_str(&s);
    } else {
        let (i, f) = s.split_at(s.len() - frac_digits);
        out.push_str(i);
        out.push('.');
        out.push_str(f);
    }
    // Trim trailing zeros after the decimal point (keep at least one digit).
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn fmt_gauss(c: &GaussRat) -> String {
    if c.im.is_zero() {
        fmt_rat(&c.re)
    } else if c.re.is_zero() {
        format!("{}i", fmt_rat(&c.im))
    } else if c.im.is_negative() {
        format!("({}{}i)", fmt_rat(&c.re), fmt_rat(&c.im))
    } else {
        format!("({}+{}i)", fmt_rat(&c.re), fmt_rat(&c.im))
    }
}

impl fmt::Display for PiScalar {
    /// Canonical symbolic form, e.g. `1/2 * pi^-2` or `1 + 4 * pi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = fmt_gauss(c);
            match *m {
                0 => write!(f, "{coeff}")?,
                1 => {
                    if coeff == "1" {
                        write!(f, "pi")?
                    } else {
                        write!(f, "{coeff} * pi")?
                    }
                }
                m => {
                    if coeff == "1" {
                        write!(f, "pi^{m}")?
                    } else {
                        write!(f, "{coeff} * pi^{m}")?
                    }
                }
            }
        }
        Ok(())
    }
}

// ----- operator impls (by reference; value impls delegate) -----

impl Add for &PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &PiScalar) -> PiScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: &PiScalar) -> PiScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.neg());
        }
        out
    }
}

impl Mul for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        let mut out = PiScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1 + m2, c1.mul(c2));
            }
        }
        out
    }
}

impl Neg for &PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }
}

macro_rules! forward_value_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for PiScalar {
            type Output = PiScalar;
            fn $m(self, rhs: PiScalar) -> PiScalar { (&self).$m(&rhs) }
        }
        impl $tr<&PiScalar> for PiScalar {
            type Output = PiScalar;
            fn $m(self, rhs: &PiScalar) -> PiScalar { (&self).$m(rhs) }
        }
        impl $tr<PiScalar> for &PiScalar {
            type Output = PiScalar;
            fn $m(self, rhs: PiScalar) -> PiScalar { self.$m(&rhs) }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        -&self
    }
}

impl AddAssign<&PiScalar> for PiScalar {
    fn add_assign(&mut self, rhs: &PiScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&PiScalar> for PiScalar {
    fn sub_assign(&mut self, rhs: &PiScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.neg());
        }
    }
}

impl MulAssign<&PiScalar> for PiScalar {
    fn mul_assign(&mut self, rhs: &PiScalar) {
        *self = &*self * rhs;
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Best rational approximation of an f64 with denominator growth bounded by
/// the continued-fraction expansion, stopping at absolute error `tol`.
pub fn rational_approx(x: f64, tol: f64) -> BigRational {
    if !x.is_finite() {
        return BigRational::zero();
    }
    let neg = x < 0.0;
    let mut x = x.abs();
    let mut coeffs = Vec::new();
    let target = x;
    for _ in 0..40 {
        let a = x.floor();
        coeffs.push(BigInt::from(a as i64));
        // value of the current convergent
        let mut conv = BigRational::zero();
        for c in coeffs.iter().rev() {
            conv = if conv.is_zero() {
                BigRational::from_integer(c.clone())
            } else {
                BigRational::from_integer(c.clone()) + conv.recip()
            };
        }
        if (conv.to_f64().unwrap_or(f64::NAN) - target).abs() <= tol {
            return if neg { -conv } else { conv };
        }
        let frac = x - a;
        if frac.abs() < 1e-18 {
            return if neg { -conv } else { conv };
        }
        x = 1.0 / frac;
    }
    let r = rational_approx_fallback(target);
    if neg {
        -r
    } else {
        r
    }
}

fn rational_approx_fallback(x: f64) -> BigRational {
    let den = BigInt::from(10u64.pow(15));
    let num = BigInt::from((x * 1e15).round() as i128);
    BigRational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: i64, q: i64, m: i64) -> PiScalar {
        PiScalar::rational_pi(p, q, m)
    }

    #[test]
    fn canonical_form_no_zero_terms() {
        let a = s(1, 2, -1);
        let b = s(-1, 2, -1);
        assert!((&a + &b).is_zero());
        assert_eq!((&a + &b).num_terms(), 0);
    }

    #[test]
    fn ring_laws_spot() {
        let a = &s(1, 3, 2) + &PiScalar::i();
        let b = &s(-7, 5, -1) + &PiScalar::int(4);
        let c = &s(2, 1, 1) + &(&PiScalar::i() * &s(3, 4, 0));
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        assert_eq!(&a * &(&b * &c), &(&a * &b) * &c);
        assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn inverse_of_monomial() {
        let a = s(2, 3, 5);
        let inv = a.try_inv().unwrap();
        assert!((&a * &inv).is_one());
        let not_mono = &s(1, 1, 0) + &s(1, 1, 1);
        assert!(not_mono.try_inv().is_err());
    }

    #[test]
    fn conj_is_anti_automorphism() {
        let a = &s(1, 3, 2) + &(&PiScalar::i() * &s(5, 7, -1));
        let b = &s(2, 9, 0) + &(&PiScalar::i() * &s(-1, 2, 3));
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn sign_detection() {
        assert_eq!(s(1, 2, 1).sign().unwrap(), 1);
        assert_eq!(s(-3, 1, -2).sign().unwrap(), -1);
        // π - 3 > 0, mixed signs forces interval evaluation
        let x = &PiScalar::pi() - &PiScalar::int(3);
        assert_eq!(x.sign().unwrap(), 1);
        // 22/7 - π > 0
        let y = &s(22, 7, 0) - &PiScalar::pi();
        assert_eq!(y.sign().unwrap(), 1);
    }

    #[test]
    fn display_and_decimal() {
        let x = s(1, 2, -2);
        assert_eq!(format!("{x}"), "1/2 * pi^-2");
        let d = x.to_decimal_string();
        assert!(d.starts_with("0.0506605918"), "{d}");
    }

    #[test]
    fn rational_sqrt_works() {
        assert_eq!(
            rational_sqrt(&BigRational::new(BigInt::from(9), BigInt::from(4))).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        assert!(rational_sqrt(&BigRational::new(BigInt::from(2), BigInt::from(1))).is_none());
    }

    #[test]
    fn rational_approx_roundtrip() {
        let r = rational_approx(0.333333333333333, 1e-12);
        assert!((r.to_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }
}
