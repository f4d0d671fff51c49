//! Dense square matrices over one [`ScalarKind`].
//!
//! Operators on `V⊗V` with `dim V = d` use the row-major pairing
//! `e_i⊗e_j ↦ i·d + j`; operators on `V⊗V⊗V` use `(i·d + j)·d + k`.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    kind: ScalarKind,
    entries: Vec<Scalar>,
}

/// Which two tensor legs of `V⊗V⊗V` a lifted operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Legs {
    L12,
    L23,
    L13,
}

impl Legs {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Legs::L12),
            "23" => Ok(Legs::L23),
            "13" => Ok(Legs::L13),
            other => Err(Error::parse("legs", format!("expected 12|23|13, got '{other}'"))),
        }
    }
}

impl Matrix {
    pub fn new(dim: usize, kind: ScalarKind, entries: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::OutOfRange {
                what: "matrix dimension",
                value: "0".into(),
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|s| s.kind() != kind) {
            return Err(Error::KindMismatch {
                left: kind,
                right: bad.kind(),
            });
        }
        Ok(Matrix { dim, kind, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let dim = rows.len();
        let kind = rows
            .first()
            .and_then(|r| r.first())
            .map(Scalar::kind)
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        Matrix::new(dim, kind, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(kind: ScalarKind, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_i64(kind, v)).collect())
                .collect(),
        )
    }

    pub fn zero(dim: usize, kind: ScalarKind) -> Self {
        Matrix {
            dim,
            kind,
            entries: vec![Scalar::zero(kind); dim * dim],
        }
    }

    pub fn identity(dim: usize, kind: ScalarKind) -> Self {
        let mut m = Matrix::zero(dim, kind);
        for i in 0..dim {
            m.entries[i * dim + i] = Scalar::one(kind);
        }
        m
    }

    pub fn diagonal(values: Vec<Scalar>) -> Result<Self> {
        let dim = values.len();
        let kind = values
            .first()
            .map(Scalar::kind)
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        let mut m = Matrix::zero(dim, kind);
        for (i, v) in values.into_iter().enumerate() {
            if v.kind() != kind {
                return Err(Error::KindMismatch {
                    left: kind,
                    right: v.kind(),
                });
            }
            m.entries[i * dim + i] = v;
        }
        Ok(m)
    }

    /// Matrix of the permutation `e_j ↦ e_{perm[j]}`.
    pub fn permutation(perm: &[usize], kind: ScalarKind) -> Self {
        let dim = perm.len();
        let mut m = Matrix::zero(dim, kind);
        for (j, &i) in perm.iter().enumerate() {
            m.entries[i * dim + j] = Scalar::one(kind);
        }
        m
    }

    /// The twist `v⊗w ↦ w⊗v` on `V⊗V`, `dim V = d`.
    pub fn twist(d: usize, kind: ScalarKind) -> Self {
        let perm: Vec<usize> = (0..d * d).map(|ij| (ij % d) * d + ij / d).collect();
        Matrix::permutation(&perm, kind)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) -> Result<()> {
        if value.kind() != self.kind {
            return Err(Error::KindMismatch {
                left: self.kind,
                right: value.kind(),
            });
        }
        self.entries[row * self.dim + col] = value;
        Ok(())
    }

    /// Adds `value` into entry `(row, col)`.
    pub fn accumulate(&mut self, row: usize, col: usize, value: &Scalar) -> Result<()> {
        let idx = row * self.dim + col;
        self.entries[idx] = self.entries[idx].add(value)?;
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.dim)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                left: self.kind,
                right: other.kind,
            });
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Matrix { entries, ..*self })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(Matrix { entries, ..*self })
    }

    pub fn scale(&self, c: &Scalar) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|a| c.mul(a))
            .collect::<Result<_>>()?;
        Ok(Matrix { entries, ..*self })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let n = self.dim;
        let mut out = Matrix::zero(n, self.kind);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Product of a sequence, applied left to right as written: `ms[0]·ms[1]·…`.
    pub fn chain(ms: &[&Matrix]) -> Result<Matrix> {
        let (first, rest) = ms
            .split_first()
            .ok_or(Error::DimensionMismatch { expected: 1, found: 0 })?;
        rest.iter().try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    /// Kronecker product: entry `((i,k),(j,l)) = a[i][j]·b[k][l]`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch {
                left: self.kind,
                right: other.kind,
            });
        }
        let (m, n) = (self.dim, other.dim);
        let dim = m * n;
        let mut out = Matrix::zero(dim, self.kind);
        for i in 0..m {
            for j in 0..m {
                let a = &self.entries[i * m + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        let b = &other.entries[k * n + l];
                        if b.is_zero() {
                            continue;
                        }
                        out.entries[(i * n + k) * dim + j * n + l] = a.mul(b)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Extends an operator on `V⊗V` to `V⊗V⊗V` acting on the given legs.
    /// `L13` is `(I⊗τ)(R⊗I)(I⊗τ)`.
    pub fn lift(&self, d: usize, legs: Legs) -> Result<Matrix> {
        if d == 0 || self.dim != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: self.dim,
            });
        }
        let id = Matrix::identity(d, self.kind);
        match legs {
            Legs::L12 => self.kron(&id),
            Legs::L23 => id.kron(self),
            Legs::L13 => {
                let swap23 = id.kron(&Matrix::twist(d, self.kind))?;
                let r12 = self.kron(&id)?;
                Matrix::chain(&[&swap23, &r12, &swap23])
            }
        }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(Scalar::is_finite)
    }

    /// Largest entry modulus, as `f64`.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(Scalar::abs_f64)
            .fold(0.0, f64::max)
    }

    /// Determinant over the entry field. Exact kinds only.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.kind.is_exact() {
            return Err(Error::WrongKind {
                expected: "exact",
                found: self.kind,
            });
        }
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut det = Scalar::one(self.kind);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(Scalar::zero(self.kind));
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pivot = a[col * n + col].clone();
            det = det.mul(&pivot)?;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].div(&pivot)?;
                for j in col..n {
                    let t = factor.mul(&a[col * n + j])?;
                    a[r * n + j] = a[r * n + j].sub(&t)?;
                }
            }
        }
        Ok(det)
    }

    /// Exact kinds: `det ≠ 0`. Float kinds: partial-pivot elimination with
    /// every pivot above `1e-12 · max|entry|`.
    pub fn is_invertible(&self) -> Result<bool> {
        if self.kind.is_exact() {
            return Ok(!self.determinant()?.is_zero());
        }
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.dim;
        let mut a: Vec<Complex64> = self.entries.iter().map(Scalar::to_complex64).collect();
        let scale = self.max_abs();
        if scale == 0.0 {
            return Ok(false);
        }
        let threshold = 1e-12 * scale;
        for col in 0..n {
            let p = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            if a[p * n + col].norm() <= threshold {
                return Ok(false);
            }
            for j in 0..n {
                a.swap(p * n + j, col * n + j);
            }
            let pivot = a[col * n + col];
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                for j in col..n {
                    let t = factor * a[col * n + j];
                    a[r * n + j] -= t;
                }
            }
        }
        Ok(true)
    }

    pub fn to_complex64(&self) -> Vec<Complex64> {
        self.entries.iter().map(Scalar::to_complex64).collect()
    }

    fn from_complex64(dim: usize, kind: ScalarKind, data: &[Complex64]) -> Matrix {
        let entries = data
            .iter()
            .map(|z| match kind {
                ScalarKind::Float => Scalar::Float(z.re),
                _ => Scalar::CFloat(*z),
            })
            .collect();
        Matrix { dim, kind, entries }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "scalar": self.kind.as_str(),
            "entries": self.rows().map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Matrix> {
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse("dim", "expected a positive integer"))? as usize;
        if dim == 0 {
            return Err(Error::parse("dim", "must be positive"));
        }
        let kind: ScalarKind = match value.get("scalar") {
            None => ScalarKind::Rational,
            Some(v) => v
                .as_str()
                .ok_or_else(|| Error::parse("scalar", "expected a string"))?
                .parse()?,
        };
        let rows = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("entries", "expected an array of rows"))?;
        if rows.len() != dim {
            return Err(Error::parse(
                "entries",
                format!("expected {dim} rows, found {}", rows.len()),
            ));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == dim)
                .ok_or_else(|| Error::parse(format!("entries[{i}]"), format!("expected {dim} entries")))?;
            for (j, v) in row.iter().enumerate() {
                entries.push(
                    Scalar::from_json(kind, v).map_err(|e| e.in_field(&format!("entries[{i}][{j}]")))?,
                );
            }
        }
        Matrix::new(dim, kind, entries)
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Size of a residual. Exact residuals never become a tolerance judgement:
/// they are either exactly zero or carry the first nonzero entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Norm {
    ExactlyZero,
    Witness { row: usize, col: usize, value: Scalar },
    Float(f64),
}

impl Norm {
    /// Residual of `a − b`.
    pub fn of_difference(a: &Matrix, b: &Matrix) -> Result<Norm> {
        Ok(Norm::of(&a.sub(b)?))
    }

    pub fn of(m: &Matrix) -> Norm {
        if m.kind.is_exact() {
            match m.entries.iter().position(|s| !s.is_zero()) {
                None => Norm::ExactlyZero,
                Some(idx) => Norm::Witness {
                    row: idx / m.dim,
                    col: idx % m.dim,
                    value: m.entries[idx].clone(),
                },
            }
        } else if !m.is_finite() {
            Norm::Float(f64::INFINITY)
        } else {
            Norm::Float(m.max_abs())
        }
    }

    pub fn is_exactly_zero(&self) -> bool {
        matches!(self, Norm::ExactlyZero)
    }

    pub fn value(&self) -> f64 {
        match self {
            Norm::ExactlyZero => 0.0,
            Norm::Witness { value, .. } => value.abs_f64(),
            Norm::Float(x) => *x,
        }
    }

    /// Float residuals below `tol`, or exact residuals that vanish.
    pub fn within(&self, tol: f64) -> bool {
        match self {
            Norm::ExactlyZero => true,
            Norm::Witness { .. } => false,
            Norm::Float(x) => *x < tol,
        }
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match self {
            Norm::Witness { row, col, .. } => Some((*row, *col)),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Norm::ExactlyZero => json!({"exact": true, "zero": true}),
            Norm::Witness { row, col, value } => json!({
                "exact": true,
                "zero": false,
                "witness": {"row": row, "col": col, "value": value.to_json()},
            }),
            Norm::Float(x) => json!({"exact": false, "max_abs": x}),
        }
    }
}

impl Serialize for Norm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Series tolerance used by [`mat_exp`] before squaring.
pub const EXPM_SERIES_TOL: f64 = 1e-12;

/// Matrix exponential by scaling and squaring around a truncated Taylor series.
pub fn mat_exp(a: &Matrix) -> Result<Matrix> {
    mat_exp_with_tol(a, EXPM_SERIES_TOL)
}

pub fn mat_exp_with_tol(a: &Matrix, series_tol: f64) -> Result<Matrix> {
    if a.kind.is_exact() {
        return Err(Error::WrongKind {
            expected: "float or cfloat",
            found: a.kind,
        });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = a.dim;
    let mut m = a.to_complex64();
    // infinity norm (max row sum) bounds every power
    let norm = m
        .chunks(n)
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let factor = 0.5f64.powi(squarings as i32);
    m.iter_mut().for_each(|z| *z *= factor);

    let mut sum = identity_c(n);
    let mut term = identity_c(n);
    for k in 1..=60 {
        term = mul_c(n, &term, &m);
        let inv_k = 1.0 / k as f64;
        term.iter_mut().for_each(|z| *z *= inv_k);
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
        let size = term.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if size < series_tol {
            break;
        }
    }
    for _ in 0..squarings {
        sum = mul_c(n, &sum, &sum);
    }
    Ok(Matrix::from_complex64(n, a.kind, &sum))
}

fn identity_c(n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        out[i * n + i] = Complex64::new(1.0, 0.0);
    }
    out
}

fn mul_c(n: usize, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    const Q: ScalarKind = ScalarKind::Rational;

    fn diag(vals: &[i64]) -> Matrix {
        Matrix::diagonal(vals.iter().map(|&v| Scalar::from_i64(Q, v)).collect()).unwrap()
    }

    #[test]
    fn kron_identities() {
        let i2 = Matrix::identity(2, Q);
        assert_eq!(i2.kron(&i2).unwrap(), Matrix::identity(4, Q));
    }

    #[test]
    fn kron_diagonals() {
        assert_eq!(diag(&[2, 3]).kron(&diag(&[5, 7])).unwrap(), diag(&[10, 14, 15, 21]));
    }

    #[test]
    fn kron_twist_is_r12() {
        let tau = Matrix::twist(2, Q);
        let r12 = tau.lift(2, Legs::L12).unwrap();
        assert_eq!(r12, tau.kron(&Matrix::identity(2, Q)).unwrap());
        assert_eq!(r12.dim(), 8);
    }

    #[test]
    fn kron_kind_mismatch() {
        let a = Matrix::identity(2, Q);
        let b = Matrix::identity(2, ScalarKind::Float);
        assert!(matches!(a.kron(&b), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn lift_identity_13() {
        assert_eq!(
            Matrix::identity(4, Q).lift(2, Legs::L13).unwrap(),
            Matrix::identity(8, Q)
        );
    }

    #[test]
    fn lift_twist_13_swaps_outer_legs() {
        // expected: e_a⊗e_b⊗e_c ↦ e_c⊗e_b⊗e_a, built index by index
        let d = 2;
        let perm: Vec<usize> = (0..8)
            .map(|idx| {
                let (a, b, c) = (idx / 4, (idx / 2) % 2, idx % 2);
                (c * d + b) * d + a
            })
            .collect();
        let expected = Matrix::permutation(&perm, Q);
        assert_eq!(Matrix::twist(2, Q).lift(2, Legs::L13).unwrap(), expected);
    }

    #[test]
    fn lift_twist_13_is_involution() {
        for d in [2, 3] {
            let t13 = Matrix::twist(d, Q).lift(d, Legs::L13).unwrap();
            assert_eq!(t13.mul(&t13).unwrap(), Matrix::identity(d * d * d, Q));
        }
    }

    #[test]
    fn lift_rejects_bad_dimension() {
        assert!(matches!(
            Matrix::identity(5, Q).lift(2, Legs::L12),
            Err(Error::DimensionMismatch { expected: 4, found: 5 })
        ));
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let e = mat_exp(&Matrix::zero(4, ScalarKind::Float)).unwrap();
        assert_eq!(e, Matrix::identity(4, ScalarKind::Float));
    }

    #[test]
    fn exp_of_nilpotent() {
        let n = Matrix::from_i64_rows(ScalarKind::Float, &[&[0, 1], &[0, 0]]).unwrap();
        let e = mat_exp(&n).unwrap();
        let expected = Matrix::from_i64_rows(ScalarKind::Float, &[&[1, 1], &[0, 1]]).unwrap();
        assert!(Norm::of_difference(&e, &expected).unwrap().within(1e-15));
    }

    #[test]
    fn exp_rejects_exact_and_nonfinite() {
        assert!(matches!(
            mat_exp(&Matrix::identity(2, Q)),
            Err(Error::WrongKind { .. })
        ));
        let mut m = Matrix::zero(2, ScalarKind::Float);
        m.set(0, 1, Scalar::Float(f64::NAN)).unwrap();
        assert_eq!(mat_exp(&m), Err(Error::NonFinite));
    }

    #[test]
    fn determinant_exact() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::Rational(rat(1, 2)), Scalar::Rational(int(3))],
            vec![Scalar::Rational(int(2)), Scalar::Rational(int(4))],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), Scalar::Rational(int(-4)));
        assert!(!Matrix::zero(3, Q).is_invertible().unwrap());
    }

    #[test]
    fn exact_residual_reports_witness() {
        let a = Matrix::identity(3, Q);
        let b = diag(&[1, 1, 4]);
        let n = Norm::of_difference(&a, &b).unwrap();
        assert_eq!(n.witness(), Some((2, 2)));
        assert!(!n.within(f64::MAX));
    }

    #[test]
    fn json_round_trip_is_exact() {
        let m = Matrix::from_rows(vec![
            vec![Scalar::Rational(rat(-1, 3)), Scalar::Rational(int(0))],
            vec![Scalar::Rational(rat(22, 7)), Scalar::Rational(int(5))],
        ])
        .unwrap();
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back = Matrix::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }

    #[test]
    fn json_errors_name_field() {
        let v = serde_json::json!({"dim": 2, "scalar": "rational", "entries": [["1","0"],["0","x"]]});
        match Matrix::from_json(&v) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "entries[1][1]"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
