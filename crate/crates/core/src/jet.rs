//! Truncated power-series germs ("jets") at the origin in `n` holomorphic and
//! `n` antiholomorphic variables, with exact [`PiScalar`] coefficients.
//!
//! A jet stores coefficients `c_{α,β}` of monomials `z^α z̄^β` for `|α| ≤ P`,
//! `|β| ≤ Q` where `(P,Q)` is the *bidegree truncation*: coefficients beyond
//! the truncation are unknown, not zero. Separately, a jet may carry a
//! guaranteed *vanishing bound* `low = (p,q)`: a promise that every term of
//! the underlying germ — including the unknown ones past the truncation — has
//! holomorphic degree ≥ p and antiholomorphic degree ≥ q.
//!
//! The vanishing bound is what keeps deep products exact. The weight
//! remainder φ₁ of a normal frame has `low = (2,2)`; consequently a product
//! like `φ₁² · W` is exact to bidegree `(4,4)` even when `W` is only known to
//! `(2,2)`, because unknown terms of `W` can only pair with φ₁²-terms of
//! degree ≥ 4. Multiplication computes the sharpest truncation this logic
//! permits and the Laplacian extractors refuse (with a hard error) to read a
//! coefficient that is not provably exact.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{BtError, Result};
use crate::scalar::PiScalar;

/// Degree type for truncations.
pub type Deg = u32;

/// Sentinel for "exact in this grading" (all higher coefficients known zero).
/// Large enough to dominate, small enough to never overflow when added.
pub const DEG_INF: Deg = 1_000_000;

fn deg_add(a: Deg, b: Deg) -> Deg {
    if a >= DEG_INF || b >= DEG_INF {
        DEG_INF
    } else {
        (a + b).min(DEG_INF)
    }
}

fn deg_sub1(a: Deg) -> Deg {
    if a >= DEG_INF {
        DEG_INF
    } else {
        a.saturating_sub(1)
    }
}

/// Multi-index over `n` variables.
pub type MIdx = Vec<u32>;

pub fn midx_total(a: &[u32]) -> Deg {
    a.iter().sum()
}

pub fn midx_zero(n: usize) -> MIdx {
    vec![0; n]
}

pub fn midx_unit(n: usize, j: usize) -> MIdx {
    let mut m = vec![0; n];
    m[j] = 1;
    m
}

fn midx_add(a: &[u32], b: &[u32]) -> MIdx {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// α! as an exact scalar.
pub fn midx_factorial(a: &[u32]) -> PiScalar {
    let mut v: i64 = 1;
    for &x in a {
        for k in 2..=(x as i64) {
            v *= k;
        }
    }
    PiScalar::int(v)
}

/// Truncated bigraded power series at 0.
#[derive(Clone, Debug)]
pub struct Jet {
    n: usize,
    trunc: (Deg, Deg),
    low: (Deg, Deg),
    coeffs: BTreeMap<(MIdx, MIdx), PiScalar>,
}

impl PartialEq for Jet {
    /// Structural equality on dimension, truncation and stored coefficients.
    /// The vanishing bound is bookkeeping, not part of the value.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.trunc == other.trunc && self.coeffs == other.coeffs
    }
}

impl Eq for Jet {}

impl Jet {
    // ----- constructors -----

    pub fn zero(n: usize, trunc: (Deg, Deg)) -> Self {
        Jet { n, trunc, low: (0, 0), coeffs: BTreeMap::new() }
    }

    /// The identically-zero germ, known exactly (truncation ∞).
    pub fn zero_exact(n: usize) -> Self {
        Jet { n, trunc: (DEG_INF, DEG_INF), low: (DEG_INF, DEG_INF), coeffs: BTreeMap::new() }
    }

    pub fn constant(n: usize, trunc: (Deg, Deg), c: PiScalar) -> Self {
        let mut j = Self::zero(n, trunc);
        j.set_coeff(&midx_zero(n), &midx_zero(n), c);
        j
    }

    pub fn one(n: usize, trunc: (Deg, Deg)) -> Self {
        Self::constant(n, trunc, PiScalar::one())
    }

    /// The coordinate `z_j`.
    pub fn var(n: usize, trunc: (Deg, Deg), j: usize) -> Self {
        let mut out = Self::zero(n, trunc);
        out.set_coeff(&midx_unit(n, j), &midx_zero(n), PiScalar::one());
        out
    }

    /// The conjugate coordinate `z̄_j`.
    pub fn var_bar(n: usize, trunc: (Deg, Deg), j: usize) -> Self {
        let mut out = Self::zero(n, trunc);
        out.set_coeff(&midx_zero(n), &midx_unit(n, j), PiScalar::one());
        out
    }

    /// `c · z^α z̄^β`.
    pub fn monomial(n: usize, trunc: (Deg, Deg), alpha: &[u32], beta: &[u32], c: PiScalar) -> Self {
        let mut out = Self::zero(n, trunc);
        out.set_coeff(alpha, beta, c);
        out
    }

    pub fn from_coeffs(
        n: usize,
        trunc: (Deg, Deg),
        coeffs: impl IntoIterator<Item = ((MIdx, MIdx), PiScalar)>,
    ) -> Self {
        let mut out = Self::zero(n, trunc);
        for ((a, b), c) in coeffs {
            out.add_coeff(&a, &b, &c);
        }
        out
    }

    // ----- inspectors -----

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trunc(&self) -> (Deg, Deg) {
        self.trunc
    }

    pub fn low(&self) -> (Deg, Deg) {
        self.low
    }

    pub fn coeff(&self, alpha: &[u32], beta: &[u32]) -> PiScalar {
        self.coeffs.get(&(alpha.to_vec(), beta.to_vec())).cloned().unwrap_or_else(PiScalar::zero)
    }

    pub fn value0(&self) -> PiScalar {
        self.coeff(&midx_zero(self.n), &midx_zero(self.n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(MIdx, MIdx), &PiScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `∂^α ∂̄^β (jet)(0) = α! β! c_{α,β}`, with an exactness check: the
    /// coefficient must lie within the proven truncation.
    pub fn deriv0(&self, alpha: &[u32], beta: &[u32]) -> Result<PiScalar> {
        let (p, q) = (midx_total(alpha), midx_total(beta));
        if p > self.trunc.0 || q > self.trunc.1 {
            return Err(BtError::InsufficientTruncation {
                need_p: p,
                need_q: q,
                have_p: self.trunc.0,
                have_q: self.trunc.1,
                context: "jet derivative at 0".into(),
            });
        }
        Ok(&(&midx_factorial(alpha) * &midx_factorial(beta)) * &self.coeff(alpha, beta))
    }

    /// "Real germ" predicate: `c_{β,α} = conj(c_{α,β})` for every stored pair
    /// whose mirror lies inside the truncation.
    pub fn is_real(&self) -> bool {
        for ((a, b), c) in &self.coeffs {
            if midx_total(b) <= self.trunc.0 && midx_total(a) <= self.trunc.1 {
                if self.coeff(b, a) != c.conj() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_holomorphic(&self) -> bool {
        self.coeffs.keys().all(|(_, b)| midx_total(b) == 0)
    }

    pub fn is_antiholomorphic(&self) -> bool {
        self.coeffs.keys().all(|(a, _)| midx_total(a) == 0)
    }

    // ----- mutation helpers -----

    pub fn set_coeff(&mut self, alpha: &[u32], beta: &[u32], c: PiScalar) {
        assert_eq!(alpha.len(), self.n);
        assert_eq!(beta.len(), self.n);
        let key = (alpha.to_vec(), beta.to_vec());
        if midx_total(alpha) > self.trunc.0 || midx_total(beta) > self.trunc.1 {
            return; // outside truncation: not stored
        }
        if c.is_zero() {
            self.coeffs.remove(&key);
        } else {
            // storing a nonzero term invalidates any stronger vanishing bound
            self.low.0 = self.low.0.min(midx_total(alpha));
            self.low.1 = self.low.1.min(midx_total(beta));
            self.coeffs.insert(key, c);
        }
    }

    pub fn add_coeff(&mut self, alpha: &[u32], beta: &[u32], c: &PiScalar) {
        let cur = self.coeff(alpha, beta);
        self.set_coeff(alpha, beta, &cur + c);
    }

    /// Declare a vanishing bound: a guarantee (from context the arithmetic
    /// cannot see, e.g. the normal-frame conditions on φ₁) that every term of
    /// the germ has bidegree ≥ (p, q). Stored coefficients must already
    /// respect it.
    pub fn assume_low(mut self, p: Deg, q: Deg) -> Result<Self> {
        for (a, b) in self.coeffs.keys() {
            if midx_total(a) < p || midx_total(b) < q {
                return Err(BtError::InvalidInput(format!(
                    "vanishing bound ({p},{q}) contradicted by stored term z^{a:?} zb^{b:?}"
                )));
            }
        }
        self.low.0 = self.low.0.max(p);
        self.low.1 = self.low.1.max(q);
        Ok(self)
    }

    /// Restrict to a smaller truncation, dropping now-out-of-range terms.
    pub fn truncate(&self, p: Deg, q: Deg) -> Self {
        let trunc = (self.trunc.0.min(p), self.trunc.1.min(q));
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((a, b), _)| midx_total(a) <= trunc.0 && midx_total(b) <= trunc.1)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Jet { n: self.n, trunc, low: self.low, coeffs }
    }

    // ----- arithmetic -----

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.check_dim(other)?;
        let trunc = (self.trunc.0.min(other.trunc.0), self.trunc.1.min(other.trunc.1));
        let mut out = Jet {
            n: self.n,
            trunc,
            low: (self.low.0.min(other.low.0), self.low.1.min(other.low.1)),
            coeffs: BTreeMap::new(),
        };
        for ((a, b), c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if midx_total(a) <= trunc.0 && midx_total(b) <= trunc.1 {
                out.add_coeff(a, b, c);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Jet {
        Jet {
            n: self.n,
            trunc: self.trunc,
            low: self.low,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn scale(&self, s: &PiScalar) -> Jet {
        if s.is_zero() {
            return Jet { n: self.n, trunc: self.trunc, low: self.low, coeffs: BTreeMap::new() };
        }
        Jet {
            n: self.n,
            trunc: self.trunc,
            low: self.low,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Truncated Cauchy product. The result truncation is the sharpest bound
    /// provable from the operands' truncations and vanishing bounds:
    /// `P = min(P_a + low_b.0, P_b + low_a.0)` (and likewise in z̄), because an
    /// unknown term of one factor can only disturb degrees beyond that.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.check_dim(other)?;
        let trunc = (
            deg_add(self.trunc.0, other.low.0).min(deg_add(other.trunc.0, self.low.0)),
            deg_add(self.trunc.1, other.low.1).min(deg_add(other.trunc.1, self.low.1)),
        );
        let low = (deg_add(self.low.0, other.low.0), deg_add(self.low.1, other.low.1));
        let mut out = Jet { n: self.n, trunc, low, coeffs: BTreeMap::new() };
        for ((a1, b1), c1) in &self.coeffs {
            for ((a2, b2), c2) in &other.coeffs {
                let a = midx_add(a1, a2);
                let b = midx_add(b1, b2);
                if midx_total(&a) <= trunc.0 && midx_total(&b) <= trunc.1 {
                    out.add_coeff(&a, &b, &(c1 * c2));
                }
            }
        }
        // add_coeff may have weakened `low`; restore the proven bound
        out.low = low;
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Jet> {
        let mut acc = Jet::one(self.n, (DEG_INF, DEG_INF));
        acc.low = (0, 0);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative ∂/∂z_j (holomorphic) or ∂/∂z̄_j.
    pub fn diff(&self, holomorphic: bool, j: usize) -> Jet {
        assert!(j < self.n);
        let trunc =
            if holomorphic { (deg_sub1(self.trunc.0), self.trunc.1) } else { (self.trunc.0, deg_sub1(self.trunc.1)) };
        let low = if holomorphic { (deg_sub1(self.low.0), self.low.1) } else { (self.low.0, deg_sub1(self.low.1)) };
        let mut out = Jet { n: self.n, trunc, low, coeffs: BTreeMap::new() };
        for ((a, b), c) in &self.coeffs {
            let idx = if holomorphic { &a[j] } else { &b[j] };
            if *idx == 0 {
                continue;
            }
            let factor = PiScalar::int(*idx as i64);
            let (mut a2, mut b2) = (a.clone(), b.clone());
            if holomorphic {
                a2[j] -= 1;
            } else {
                b2[j] -= 1;
            }
            if midx_total(&a2) <= trunc.0 && midx_total(&b2) <= trunc.1 {
                out.add_coeff(&a2, &b2, &(c * &factor));
            }
        }
        out.low = low;
        out
    }

    /// Complex conjugate germ: `c_{α,β} ↦ conj(c_{β,α})`.
    pub fn conj(&self) -> Jet {
        Jet {
            n: self.n,
            trunc: (self.trunc.1, self.trunc.0),
            low: (self.low.1, self.low.0),
            coeffs: self.coeffs.iter().map(|((a, b), c)| ((b.clone(), a.clone()), c.conj())).collect(),
        }
    }

    /// Pure holomorphic part: the sub-series `Σ c_{α,0} z^α`. The result is
    /// exact in the antiholomorphic grading (all z̄ coefficients known zero).
    pub fn pure_holomorphic(&self) -> Jet {
        let mut out = Jet { n: self.n, trunc: (self.trunc.0, DEG_INF), low: (self.low.0, 0), coeffs: BTreeMap::new() };
        for ((a, b), c) in &self.coeffs {
            if midx_total(b) == 0 {
                out.coeffs.insert((a.clone(), b.clone()), c.clone());
            }
        }
        out
    }

    /// Pure antiholomorphic part `Σ c_{0,β} z̄^β`.
    pub fn pure_antiholomorphic(&self) -> Jet {
        let mut out = Jet { n: self.n, trunc: (DEG_INF, self.trunc.1), low: (0, self.low.1), coeffs: BTreeMap::new() };
        for ((a, b), c) in &self.coeffs {
            if midx_total(a) == 0 {
                out.coeffs.insert((a.clone(), b.clone()), c.clone());
            }
        }
        out
    }

    /// Formal logarithm. Requires constant term exactly 1 (callers normalize
    /// by the constant first; the dropped `log c` constant is killed by every
    /// derivative the library takes).
    pub fn log(&self) -> Result<Jet> {
        let c0 = self.value0();
        if c0.is_zero() {
            return Err(BtError::SingularConstant("jet log of zero constant term".into()));
        }
        if !c0.is_one() {
            return Err(BtError::InvalidInput(format!(
                "jet log requires unit constant term (got {c0}); divide by the constant first"
            )));
        }
        self.require_finite_trunc("log")?;
        let one = Jet::one(self.n, self.trunc);
        let v = self.sub(&one)?;
        // log(1+v) = Σ (-1)^{i+1} v^i / i; v has no constant term, so the
        // series terminates at total degree P+Q.
        let imax = self.trunc.0 + self.trunc.1;
        let mut out = Jet::zero(self.n, self.trunc);
        let mut vp = Jet::one(self.n, (DEG_INF, DEG_INF));
        for i in 1..=imax.max(1) {
            vp = vp.mul(&v)?;
            if vp.is_zero() {
                break;
            }
            let sign = if i % 2 == 1 { 1 } else { -1 };
            out = out.add(&vp.scale(&PiScalar::ratio(sign, i as i64)))?;
        }
        Ok(out)
    }

    /// Formal exponential. Requires zero constant term.
    pub fn exp(&self) -> Result<Jet> {
        if !self.value0().is_zero() {
            return Err(BtError::NonzeroConstant("jet exp requires zero constant term".into()));
        }
        self.require_finite_trunc("exp")?;
        let imax = self.trunc.0 + self.trunc.1;
        let mut out = Jet::one(self.n, self.trunc);
        let mut term = Jet::one(self.n, (DEG_INF, DEG_INF));
        let mut fact: i64 = 1;
        for i in 1..=imax.max(1) {
            term = term.mul(self)?;
            if term.is_zero() {
                break;
            }
            fact *= i as i64;
            out = out.add(&term.scale(&PiScalar::ratio(1, fact)))?;
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be an invertible
    /// (monomial) scalar.
    pub fn inverse(&self) -> Result<Jet> {
        let c0 = self.value0();
        let c0i = c0
            .try_inv()
            .map_err(|_| BtError::SingularConstant(format!("jet inverse: constant term {c0}")))?;
        self.require_finite_trunc("inverse")?;
        let u = self.scale(&c0i); // unit constant term
        let one = Jet::one(self.n, self.trunc);
        let v = u.sub(&one)?;
        let imax = self.trunc.0 + self.trunc.1;
        let mut out = Jet::one(self.n, self.trunc);
        let mut vp = Jet::one(self.n, (DEG_INF, DEG_INF));
        for i in 1..=imax.max(1) {
            vp = vp.mul(&v)?;
            if vp.is_zero() {
                break;
            }
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out = out.add(&vp.scale(&PiScalar::int(sign)))?;
        }
        Ok(out.scale(&c0i))
    }

    /// Composition with a holomorphic coordinate map: `a ∘ (m, m̄)` where
    /// `map[j]` replaces `z_j` and its conjugate jet replaces `z̄_j`.
    ///
    /// The map components are treated as exact polynomials (our coordinate
    /// changes are constructed, not measured); each must be holomorphic with
    /// zero constant term, which makes composition well defined on jets.
    pub fn substitute(&self, map: &[Jet]) -> Result<Jet> {
        if map.len() != self.n {
            return Err(BtError::DimensionMismatch(format!(
                "substitution map has {} components, jet has {} variables",
                map.len(),
                self.n
            )));
        }
        for m in map {
            if !m.is_holomorphic() {
                return Err(BtError::NotHolomorphic("substitution map component".into()));
            }
            if !m.value0().is_zero() {
                return Err(BtError::NonzeroConstant("substitution map component".into()));
            }
        }
        let trunc = self.trunc;
        let conj_map: Vec<Jet> = map.iter().map(|m| m.conj()).collect();
        let mut out = Jet::zero(self.n, trunc);
        for ((a, b), c) in &self.coeffs {
            let mut term = Jet::constant(self.n, (DEG_INF, DEG_INF), c.clone());
            term.low = (0, 0);
            for j in 0..self.n {
                for _ in 0..a[j] {
                    term = term.mul(&map[j])?.truncate(trunc.0, trunc.1);
                }
                for _ in 0..b[j] {
                    term = term.mul(&conj_map[j])?.truncate(trunc.0, trunc.1);
                }
            }
            for ((ta, tb), tc) in &term.coeffs {
                out.add_coeff(ta, tb, tc);
            }
        }
        out.trunc = trunc;
        out.low = self.low;
        Ok(out)
    }

    // ----- misc -----

    fn check_dim(&self, other: &Jet) -> Result<()> {
        if self.n != other.n {
            return Err(BtError::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    fn require_finite_trunc(&self, ctx: &str) -> Result<()> {
        if self.trunc.0 >= DEG_INF || self.trunc.1 >= DEG_INF {
            return Err(BtError::InvalidInput(format!(
                "jet {ctx} requires a finite truncation (series termination)"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (j, &e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·z{}", j + 1)?,
                    e => write!(f, "·z{}^{}", j + 1, e)?,
                }
            }
            for (j, &e) in b.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·zb{}", j + 1)?,
                    e => write!(f, "·zb{}^{}", j + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

/// All multi-indices over `n` variables with total degree ≤ `d`.
pub fn midx_up_to(n: usize, d: Deg) -> Vec<MIdx> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        if midx_total(&cur) <= d {
            out.push(cur.clone());
        }
        // odometer increment bounded by d in each slot
        let mut j = 0;
        loop {
            if j == n {
                return out;
            }
            if cur[j] < d {
                cur[j] += 1;
                for c in cur.iter_mut().take(j) {
                    *c = 0;
                }
                break;
            }
            j += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize, t: (Deg, Deg)) -> Jet {
        Jet::var(n, t, 0)
    }
    fn zb(n: usize, t: (Deg, Deg)) -> Jet {
        Jet::var_bar(n, t, 0)
    }

    #[test]
    fn mul_binomial() {
        // (1 + z z̄)² = 1 + 2 z z̄ + z² z̄²
        let t = (2, 2);
        let a = Jet::one(1, t).add(&z(1, t).mul(&zb(1, t)).unwrap()).unwrap();
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.coeff(&[0], &[0]), PiScalar::int(1));
        assert_eq!(sq.coeff(&[1], &[1]), PiScalar::int(2));
        assert_eq!(sq.coeff(&[2], &[2]), PiScalar::int(1));
    }

    #[test]
    fn mul_truncates_to_min() {
        let a = z(1, (1, 1));
        let b = zb(1, (1, 1));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(&[1], &[1]), PiScalar::int(1));
        assert_eq!(p.trunc(), (1, 1));
    }

    #[test]
    fn vanishing_bound_extends_product_exactness() {
        // φ₁-like jet: z²z̄², trunc (3,3), guaranteed low (2,2)
        let t = (3, 3);
        let phi1 = Jet::monomial(1, t, &[2], &[2], PiScalar::one()).assume_low(2, 2).unwrap();
        let sq = phi1.mul(&phi1).unwrap();
        // exact to (3+2, 3+2) = (5,5); the (4,4) coefficient is provably 1
        assert_eq!(sq.trunc(), (5, 5));
        assert_eq!(sq.coeff(&[4], &[4]), PiScalar::int(1));
        assert_eq!(sq.low(), (4, 4));
    }

    #[test]
    fn diff_and_commutation() {
        let t = (3, 3);
        let a = Jet::monomial(1, t, &[2], &[1], PiScalar::one());
        let dz = a.diff(true, 0);
        assert_eq!(dz.coeff(&[1], &[1]), PiScalar::int(2));
        let d1 = a.diff(true, 0).diff(false, 0);
        let d2 = a.diff(false, 0).diff(true, 0);
        assert_eq!(d1.coeffs, d2.coeffs);
    }

    #[test]
    fn conj_involution_and_antimorphism() {
        let t = (2, 2);
        let a = Jet::monomial(1, t, &[1], &[0], PiScalar::i());
        assert_eq!(a.conj().coeff(&[0], &[1]), -PiScalar::i());
        assert_eq!(a.conj().conj(), a);
        let b = Jet::monomial(1, t, &[0], &[1], PiScalar::ratio(1, 2));
        assert_eq!(a.mul(&b).unwrap().conj(), a.conj().mul(&b.conj()).unwrap());
        // conj ∘ ∂_z = ∂_z̄ ∘ conj
        assert_eq!(a.diff(true, 0).conj(), a.conj().diff(false, 0));
    }

    #[test]
    fn log_mercator() {
        let t = (2, 2);
        let a = Jet::one(1, t).add(&z(1, t).mul(&zb(1, t)).unwrap()).unwrap();
        let l = a.log().unwrap();
        assert_eq!(l.coeff(&[1], &[1]), PiScalar::int(1));
        assert_eq!(l.coeff(&[2], &[2]), PiScalar::ratio(-1, 2));
        assert!(Jet::one(1, t).log().unwrap().is_zero());
    }

    #[test]
    fn exp_log_roundtrip() {
        let t = (3, 3);
        let a = Jet::one(1, t)
            .add(&z(1, t))
            .unwrap()
            .add(&zb(1, t))
            .unwrap();
        let back = a.log().unwrap().exp().unwrap();
        assert_eq!(back, a.truncate(3, 3));
    }

    #[test]
    fn inverse_geometric() {
        let t = (2, 2);
        let a = Jet::one(1, t).add(&z(1, t).mul(&zb(1, t)).unwrap()).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.coeff(&[1], &[1]), PiScalar::int(-1));
        assert_eq!(inv.coeff(&[2], &[2]), PiScalar::int(1));
        assert_eq!(a.mul(&inv).unwrap(), Jet::one(1, t));
    }

    #[test]
    fn substitute_scaling_and_identity() {
        let t = (2, 2);
        let prod = z(1, t).mul(&zb(1, t)).unwrap();
        let two_z = Jet::var(1, (DEG_INF, DEG_INF), 0).scale(&PiScalar::int(2));
        let sub = prod.substitute(&[two_z]).unwrap();
        assert_eq!(sub.coeff(&[1], &[1]), PiScalar::int(4));
        let id = Jet::var(1, (DEG_INF, DEG_INF), 0);
        assert_eq!(prod.substitute(&[id]).unwrap(), prod);
    }

    #[test]
    fn substitute_binomial() {
        // z² ∘ (z ↦ z + z²) = z² + 2z³ + z⁴, truncated at (3,0)
        let a = Jet::monomial(1, (3, 0), &[2], &[0], PiScalar::one());
        let m = Jet::var(1, (DEG_INF, DEG_INF), 0)
            .add(&Jet::monomial(1, (DEG_INF, DEG_INF), &[2], &[0], PiScalar::one()))
            .unwrap();
        let s = a.substitute(&[m]).unwrap();
        assert_eq!(s.coeff(&[2], &[0]), PiScalar::int(1));
        assert_eq!(s.coeff(&[3], &[0]), PiScalar::int(2));
        assert_eq!(s.coeff(&[4], &[0]), PiScalar::zero());
    }

    #[test]
    fn real_predicate() {
        let t = (2, 2);
        let mut a = Jet::zero(1, t);
        a.set_coeff(&[1], &[0], PiScalar::i());
        a.set_coeff(&[0], &[1], -PiScalar::i());
        assert!(a.is_real());
        a.set_coeff(&[0], &[1], PiScalar::i());
        assert!(!a.is_real());
    }

    #[test]
    fn deriv0_truncation_guard() {
        let a = Jet::monomial(1, (2, 2), &[2], &[2], PiScalar::one());
        assert!(a.deriv0(&[2], &[2]).is_ok());
        assert!(matches!(
            a.deriv0(&[3], &[2]),
            Err(BtError::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn midx_enumeration() {
        assert_eq!(midx_up_to(2, 2).len(), 6); // (0,0),(1,0),(0,1),(2,0),(1,1),(0,2)
    }
}
