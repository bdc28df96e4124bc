//! Matrices of jets: the metric data Θ, ω, h, h⁻¹, a of the geometry layer.

use crate::error::{BtError, Result};
use crate::jet::{Deg, Jet};
use crate::scalar::PiScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Jet>, // row-major
}

impl JetMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Jet) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        JetMatrix { rows, cols, entries }
    }

    pub fn identity(n: usize, jet_dim: usize, trunc: (Deg, Deg)) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                Jet::one(jet_dim, trunc)
            } else {
                Jet::zero(jet_dim, trunc)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &Jet {
        &self.entries[r * self.cols + c]
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Jet {
        &mut self.entries[r * self.cols + c]
    }

    /// Componentwise minimum truncation over all entries.
    pub fn uniform_trunc(&self) -> (Deg, Deg) {
        let mut t = (crate::jet::DEG_INF, crate::jet::DEG_INF);
        for e in &self.entries {
            t.0 = t.0.min(e.trunc().0);
            t.1 = t.1.min(e.trunc().1);
        }
        t
    }

    pub fn truncate(&self, p: Deg, q: Deg) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| self.entry(r, c).truncate(p, q))
    }

    pub fn mul(&self, other: &JetMatrix) -> Result<JetMatrix> {
        if self.cols != other.rows {
            return Err(BtError::DimensionMismatch(format!(
                "matrix product {}x{} · {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: Option<Jet> = None;
                for k in 0..self.cols {
                    let p = self.entry(r, k).mul(other.entry(k, c))?;
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.add(&p)?,
                    });
                }
                out.push(acc.unwrap());
            }
        }
        Ok(JetMatrix { rows: self.rows, cols: other.cols, entries: out })
    }

    pub fn add(&self, other: &JetMatrix) -> Result<JetMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(BtError::DimensionMismatch("matrix add".into()));
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            entries.push(a.add(b)?);
        }
        Ok(JetMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, s: &PiScalar) -> JetMatrix {
        JetMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(s)).collect(),
        }
    }

    /// Conjugate-transpose (entrywise conjugate germ, indices swapped).
    pub fn conj_transpose(&self) -> JetMatrix {
        JetMatrix::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).conj())
    }

    /// Hermitian predicate: entry(j,k) = conj-jet of entry(k,j), compared on
    /// the common truncation.
    pub fn is_hermitian(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let (p, q) = self.uniform_trunc();
        let (p, q) = (p.min(q), p.min(q));
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.entry(r, c).truncate(p, q);
                let b = self.entry(c, r).conj().truncate(p, q);
                if a != b {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant by cofactor expansion (dimensions here are ≤ 3 in
    /// practice; no pivoting/division needed).
    pub fn det(&self) -> Result<Jet> {
        if self.rows != self.cols {
            return Err(BtError::NotSquare { rows: self.rows, cols: self.cols });
        }
        self.det_rec(&(0..self.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>())
    }

    fn det_rec(&self, rs: &[usize], cs: &[usize]) -> Result<Jet> {
        let n = rs.len();
        if n == 1 {
            return Ok(self.entry(rs[0], cs[0]).clone());
        }
        let mut acc: Option<Jet> = None;
        for (i, &c) in cs.iter().enumerate() {
            let sub_cs: Vec<usize> = cs.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &v)| v).collect();
            let minor = self.det_rec(&rs[1..], &sub_cs)?;
            let mut term = self.entry(rs[0], c).mul(&minor)?;
            if i % 2 == 1 {
                term = term.neg();
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// Exact inverse: invert the constant-term scalar matrix by Gaussian
    /// elimination, then correct by a terminating Neumann series
    /// `M⁻¹ = (Σ (−C⁻¹N)^i)·C⁻¹` with `N = M − C` (no constant term).
    pub fn inverse(&self) -> Result<JetMatrix> {
        if self.rows != self.cols {
            return Err(BtError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let jet_dim = self.entries[0].n();
        let (p, q) = self.uniform_trunc();
        if p >= crate::jet::DEG_INF || q >= crate::jet::DEG_INF {
            return Err(BtError::InvalidInput("matrix inverse requires finite truncation".into()));
        }
        // constant part and its inverse over PiScalar
        let c: Vec<Vec<PiScalar>> =
            (0..n).map(|r| (0..n).map(|cc| self.entry(r, cc).value0()).collect()).collect();
        let cinv = scalar_mat_inverse(&c)?;
        // N = M - C as jets, then B = C⁻¹ N
        let cmat_jets = JetMatrix::from_fn(n, n, |r, cc| {
            Jet::constant(jet_dim, (p, q), c[r][cc].clone())
        });
        let nmat = self.truncate(p, q).add(&cmat_jets.scale(&-PiScalar::one()))?;
        let cinv_jets = JetMatrix::from_fn(n, n, |r, cc| {
            Jet::constant(jet_dim, (p, q), cinv[r][cc].clone())
        });
        let b = cinv_jets.mul(&nmat)?;
        let mut series = JetMatrix::identity(n, jet_dim, (p, q));
        let mut power = JetMatrix::identity(n, jet_dim, (p, q));
        for i in 1..=(p + q) {
            power = power.mul(&b)?;
            if power.entries.iter().all(|e| e.is_zero()) {
                break;
            }
            let signed = if i % 2 == 1 { power.scale(&-PiScalar::one()) } else { power.clone() };
            series = series.add(&signed)?;
        }
        series.mul(&cinv_jets)
    }
}

/// Gaussian elimination over the PiScalar Laurent ring; pivots must be
/// invertible (monomial) scalars, which holds for every metric constant term
/// this library produces (diagonal λ/π matrices, identity Θ(0)).
pub fn scalar_mat_inverse(m: &[Vec<PiScalar>]) -> Result<Vec<Vec<PiScalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<PiScalar>> = m.to_vec();
    let mut inv: Vec<Vec<PiScalar>> = (0..n)
        .map(|r| (0..n).map(|c| if r == c { PiScalar::one() } else { PiScalar::zero() }).collect())
        .collect();
    for col in 0..n {
        // find an invertible pivot
        let piv = (col..n)
            .find(|&r| a[r][col].try_inv().is_ok())
            .ok_or_else(|| BtError::SingularConstant(format!("no invertible pivot in column {col}")))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let pinv = a[col][col].try_inv()?;
        for cc in 0..n {
            a[col][cc] = &a[col][cc] * &pinv;
            inv[col][cc] = &inv[col][cc] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for cc in 0..n {
                let t = &factor * &a[col][cc];
                a[r][cc] = &a[r][cc] - &t;
                let t2 = &factor * &inv[col][cc];
                inv[r][cc] = &inv[r][cc] - &t2;
            }
        }
    }
    Ok(inv)
}

/// Exact determinant of a scalar matrix by cofactor expansion.
pub fn scalar_mat_det(m: &[Vec<PiScalar>]) -> PiScalar {
    let n = m.len();
    if n == 0 {
        return PiScalar::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = PiScalar::zero();
    for c in 0..n {
        let minor: Vec<Vec<PiScalar>> = (1..n)
            .map(|r| (0..n).filter(|&cc| cc != c).map(|cc| m[r][cc].clone()).collect())
            .collect();
        let term = &m[0][c] * &scalar_mat_det(&minor);
        if c % 2 == 0 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_identity_and_diag() {
        let id = JetMatrix::identity(2, 2, (2, 2));
        assert_eq!(id.det().unwrap(), Jet::one(2, (2, 2)));
        let d = JetMatrix::from_fn(2, 2, |r, c| {
            if r == c {
                Jet::constant(2, (2, 2), PiScalar::int((r + 2) as i64))
            } else {
                Jet::zero(2, (2, 2))
            }
        });
        assert_eq!(d.det().unwrap().value0(), PiScalar::int(6));
    }

    #[test]
    fn det_1x1_passthrough() {
        let t = (1, 1);
        let a = Jet::one(1, t)
            .add(&Jet::var(1, t, 0).mul(&Jet::var_bar(1, t, 0)).unwrap())
            .unwrap();
        let m = JetMatrix::from_fn(1, 1, |_, _| a.clone());
        assert_eq!(m.det().unwrap(), a);
    }

    #[test]
    fn inverse_diag_and_series() {
        let t = (2, 2);
        let two = JetMatrix::from_fn(1, 1, |_, _| Jet::constant(1, t, PiScalar::int(2)));
        let inv = two.inverse().unwrap();
        assert_eq!(inv.entry(0, 0).value0(), PiScalar::ratio(1, 2));

        let a = Jet::one(1, t)
            .add(&Jet::var(1, t, 0).mul(&Jet::var_bar(1, t, 0)).unwrap())
            .unwrap();
        let m = JetMatrix::from_fn(1, 1, |_, _| a.clone());
        let minv = m.inverse().unwrap();
        assert_eq!(minv.entry(0, 0).coeff(&[1], &[1]), PiScalar::int(-1));
        assert_eq!(minv.entry(0, 0).coeff(&[2], &[2]), PiScalar::int(1));
        assert_eq!(m.mul(&minv).unwrap(), JetMatrix::identity(1, 1, t));
    }

    #[test]
    fn inverse_2x2_with_offdiagonal_jets() {
        let t = (2, 2);
        let z1zb2 = Jet::var(2, t, 0).mul(&Jet::var_bar(2, t, 1)).unwrap();
        let m = JetMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) | (1, 1) => Jet::one(2, t),
            (0, 1) => z1zb2.clone(),
            _ => z1zb2.conj(),
        });
        let minv = m.inverse().unwrap();
        assert_eq!(m.mul(&minv).unwrap(), JetMatrix::identity(2, 2, t));
    }

    #[test]
    fn hermitian_predicate() {
        let t = (2, 2);
        let z1zb2 = Jet::var(2, t, 0).mul(&Jet::var_bar(2, t, 1)).unwrap();
        let m = JetMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) | (1, 1) => Jet::one(2, t),
            (0, 1) => z1zb2.clone(),
            _ => z1zb2.conj(),
        });
        assert!(m.is_hermitian());
        let bad = JetMatrix::from_fn(2, 2, |r, c| match (r, c) {
            (0, 1) => z1zb2.clone(),
            _ => Jet::zero(2, t),
        });
        assert!(!bad.is_hermitian());
    }
}
