//! Linear Yang-Baxter operators.
//!
//! Two construction families are provided: `a⊗b ↦ α ab⊗1 + β 1⊗ab − γ a⊗b`
//! over a unital associative algebra, and `x⊗y ↦ α[x,y]⊗z + (−1)^{|x||y|} y⊗x`
//! over a Lie superalgebra with an even central element `z`. Both are checked
//! with exact residuals of the braid relation or the QYBE.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Legs, Matrix, Norm};
use crate::scalar::{Scalar, ScalarKind};
use crate::Form;

/// Structure constants `c[i][j][k]` stored flat at `(i·dim + j)·dim + k`.
fn idx3(dim: usize, i: usize, j: usize, k: usize) -> usize {
    (i * dim + j) * dim + k
}

fn check_exact_kind(values: &[Scalar], kind: ScalarKind, what: &str) -> Result<()> {
    if !kind.is_exact() {
        return Err(Error::WrongKind {
            expected: "exact",
            found: kind,
        });
    }
    match values.iter().find(|v| v.kind() != kind) {
        Some(v) => Err(Error::InvalidAlgebra(format!(
            "{what} mixes {kind} with {}",
            v.kind()
        ))),
        None => Ok(()),
    }
}

/// A finite-dimensional unital associative algebra, validated on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    dim: usize,
    kind: ScalarKind,
    mul: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl FiniteAlgebra {
    /// Checks associativity on all basis triples and both unit laws.
    pub fn new(dim: usize, mul: Vec<Scalar>, unit: Vec<Scalar>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if mul.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: mul.len(),
            });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: unit.len(),
            });
        }
        let kind = unit[0].kind();
        check_exact_kind(&mul, kind, "structure constants")?;
        check_exact_kind(&unit, kind, "unit")?;
        let alg = FiniteAlgebra {
            dim,
            kind,
            mul,
            unit,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let ei = self.basis(i);
            if self.product(&self.unit, &ei)? != ei || self.product(&ei, &self.unit)? != ei {
                return Err(Error::InvalidAlgebra(format!("unit law fails on e{i}")));
            }
            for j in 0..n {
                let eij = self.product(&ei, &self.basis(j))?;
                for k in 0..n {
                    let ek = self.basis(k);
                    let left = self.product(&eij, &ek)?;
                    let right = self.product(&ei, &self.product(&self.basis(j), &ek)?)?;
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on (e{i}, e{j}, e{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mul[idx3(self.dim, i, j, k)]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| Scalar::from_i64(self.kind, (k == i) as i64))
            .collect()
    }

    /// Product of two coordinate vectors.
    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(self.kind); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].mul(&b[j])?;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.add(&ab.mul(c)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The ground field `k` itself.
    pub fn ground_field(kind: ScalarKind) -> Result<Self> {
        FiniteAlgebra::new(1, vec![Scalar::one(kind)], vec![Scalar::one(kind)])
    }

    /// `k[x]/(x²)` in the basis `(1, x)`.
    pub fn dual_numbers(kind: ScalarKind) -> Result<Self> {
        FiniteAlgebra::from_table(kind, 2, &[0], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
    }

    /// `k × k` with componentwise product.
    pub fn split_pair(kind: ScalarKind) -> Result<Self> {
        FiniteAlgebra::from_table(kind, 2, &[0, 1], &[(0, 0, 0, 1), (1, 1, 1, 1)])
    }

    /// `M_n(k)` in the matrix-unit basis `E_{ab} ↦ a·n + b`.
    pub fn matrix_algebra(kind: ScalarKind, n: usize) -> Result<Self> {
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    entries.push((a * n + b, b * n + c, a * n + c, 1));
                }
            }
        }
        let unit: Vec<usize> = (0..n).map(|a| a * n + a).collect();
        FiniteAlgebra::from_table(kind, n * n, &unit, &entries)
    }

    /// Builds from sparse `(i, j, k, c)` constants and the basis indices summing to 1.
    pub fn from_table(
        kind: ScalarKind,
        dim: usize,
        unit_support: &[usize],
        constants: &[(usize, usize, usize, i64)],
    ) -> Result<Self> {
        let mut mul = vec![Scalar::zero(kind); dim * dim * dim];
        for &(i, j, k, c) in constants {
            mul[idx3(dim, i, j, k)] = Scalar::from_i64(kind, c);
        }
        let mut unit = vec![Scalar::zero(kind); dim];
        for &u in unit_support {
            unit[u] = Scalar::one(kind);
        }
        FiniteAlgebra::new(dim, mul, unit)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "scalar": self.kind.as_str(),
            "unit": self.unit.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "mul": cube_json(self.dim, &self.mul),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (dim, kind) = dim_and_kind(value)?;
        let unit = vector_field(value, "unit", kind, dim)?;
        let mul = cube_field(value, "mul", kind, dim)?;
        FiniteAlgebra::new(dim, mul, unit)
    }
}

/// A finite-dimensional Lie superalgebra with a chosen even central element `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieSuperAlgebra {
    dim: usize,
    kind: ScalarKind,
    grading: Vec<u8>,
    bracket: Vec<Scalar>,
    z: Vec<Scalar>,
}

impl LieSuperAlgebra {
    /// Validates grading, graded antisymmetry, graded Jacobi, and that `z` is even and central.
    pub fn new(grading: Vec<u8>, bracket: Vec<Scalar>, z: Vec<Scalar>) -> Result<Self> {
        let dim = grading.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if bracket.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: bracket.len(),
            });
        }
        if z.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: z.len(),
            });
        }
        if let Some(i) = grading.iter().position(|&g| g > 1) {
            return Err(Error::Grading(format!("degree of e{i} must be 0 or 1")));
        }
        let kind = z[0].kind();
        check_exact_kind(&bracket, kind, "bracket constants")?;
        check_exact_kind(&z, kind, "z")?;
        let l = LieSuperAlgebra {
            dim,
            kind,
            grading,
            bracket,
            z,
        };
        l.validate()?;
        Ok(l)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = &self.bracket[idx3(n, i, j, k)];
                    if !c.is_zero() && self.grading[k] != self.grading[i] ^ self.grading[j] {
                        return Err(Error::Grading(format!(
                            "[e{i}, e{j}] has a component on e{k} of the wrong degree"
                        )));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xy = self.bracket_vec(&self.basis(i), &self.basis(j))?;
                let yx = self.bracket_vec(&self.basis(j), &self.basis(i))?;
                let sign = self.sign(i, j);
                let ok = xy
                    .iter()
                    .zip(&yx)
                    .all(|(a, b)| a.add(&b.mul(&sign).unwrap()).unwrap().is_zero());
                if !ok {
                    return Err(Error::InvalidAlgebra(format!(
                        "graded antisymmetry fails on (e{i}, e{j})"
                    )));
                }
            }
        }
        // [x,[y,w]] = [[x,y],w] + (−1)^{|x||y|} [y,[x,w]]
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, w) = (self.basis(i), self.basis(j), self.basis(k));
                    let lhs = self.bracket_vec(&x, &self.bracket_vec(&y, &w)?)?;
                    let a = self.bracket_vec(&self.bracket_vec(&x, &y)?, &w)?;
                    let b = self.bracket_vec(&y, &self.bracket_vec(&x, &w)?)?;
                    let sign = self.sign(i, j);
                    for t in 0..n {
                        let rhs = a[t].add(&sign.mul(&b[t])?)?;
                        if lhs[t] != rhs {
                            return Err(Error::InvalidAlgebra(format!(
                                "graded Jacobi identity fails on (e{i}, e{j}, e{k})"
                            )));
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| !self.z[i].is_zero() && self.grading[i] == 1) {
            return Err(Error::OddCentralElement { index: i });
        }
        for i in 0..n {
            if self
                .bracket_vec(&self.z, &self.basis(i))?
                .iter()
                .any(|c| !c.is_zero())
            {
                return Err(Error::NotCentral { index: i });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn grading(&self) -> &[u8] {
        &self.grading
    }

    pub fn z(&self) -> &[Scalar] {
        &self.z
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.bracket[idx3(self.dim, i, j, k)]
    }

    /// `(−1)^{|e_i||e_j|}`.
    pub fn sign(&self, i: usize, j: usize) -> Scalar {
        let odd = self.grading[i] & self.grading[j];
        Scalar::from_i64(self.kind, if odd == 1 { -1 } else { 1 })
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        (0..self.dim)
            .map(|k| Scalar::from_i64(self.kind, (k == i) as i64))
            .collect()
    }

    pub fn bracket_vec(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(self.kind); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].mul(&b[j])?;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.add(&ab.mul(c)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// An abelian, purely even algebra of dimension `dim` with `z = e_0`.
    pub fn abelian(kind: ScalarKind, dim: usize) -> Result<Self> {
        let mut z = vec![Scalar::zero(kind); dim];
        z[0] = Scalar::one(kind);
        LieSuperAlgebra::new(vec![0; dim], vec![Scalar::zero(kind); dim * dim * dim], z)
    }

    /// The 3-dimensional Heisenberg algebra `[e1, e2] = e3` with `z` the given basis vector.
    pub fn heisenberg(kind: ScalarKind, z_index: usize) -> Result<Self> {
        let mut bracket = vec![Scalar::zero(kind); 27];
        bracket[idx3(3, 0, 1, 2)] = Scalar::one(kind);
        bracket[idx3(3, 1, 0, 2)] = Scalar::from_i64(kind, -1);
        let mut z = vec![Scalar::zero(kind); 3];
        z[z_index] = Scalar::one(kind);
        LieSuperAlgebra::new(vec![0; 3], bracket, z)
    }

    /// `gl(1|1)`-style superalgebra: even `h, c`, odd `p, q` with `[p,q] = [q,p] = c`,
    /// `[h,p] = p`, `[h,q] = −q`; `z = c`.
    pub fn gl11(kind: ScalarKind) -> Result<Self> {
        // basis order: h, c, p, q
        let mut b = vec![Scalar::zero(kind); 64];
        let one = Scalar::one(kind);
        let neg = Scalar::from_i64(kind, -1);
        b[idx3(4, 2, 3, 1)] = one.clone();
        b[idx3(4, 3, 2, 1)] = one.clone();
        b[idx3(4, 0, 2, 2)] = one.clone();
        b[idx3(4, 2, 0, 2)] = neg.clone();
        b[idx3(4, 0, 3, 3)] = neg;
        b[idx3(4, 3, 0, 3)] = one.clone();
        let mut z = vec![Scalar::zero(kind); 4];
        z[1] = one;
        LieSuperAlgebra::new(vec![0, 0, 1, 1], b, z)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "scalar": self.kind.as_str(),
            "grading": self.grading,
            "bracket": cube_json(self.dim, &self.bracket),
            "z": self.z.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (dim, kind) = dim_and_kind(value)?;
        let grading = value
            .get("grading")
            .and_then(Value::as_array)
            .filter(|g| g.len() == dim)
            .ok_or_else(|| Error::parse("grading", format!("expected {dim} entries of 0|1")))?
            .iter()
            .enumerate()
            .map(|(i, g)| match g.as_u64() {
                Some(d @ (0 | 1)) => Ok(d as u8),
                _ => Err(Error::parse(format!("grading[{i}]"), "expected 0 or 1")),
            })
            .collect::<Result<Vec<u8>>>()?;
        let bracket = cube_field(value, "bracket", kind, dim)?;
        let z = vector_field(value, "z", kind, dim)?;
        LieSuperAlgebra::new(grading, bracket, z)
    }
}

pub(crate) fn cube_json(dim: usize, data: &[Scalar]) -> Value {
    Value::Array(
        (0..dim)
            .map(|i| {
                Value::Array(
                    (0..dim)
                        .map(|j| {
                            Value::Array(
                                (0..dim)
                                    .map(|k| data[idx3(dim, i, j, k)].to_json())
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    )
}

pub(crate) fn dim_and_kind(value: &Value) -> Result<(usize, ScalarKind)> {
    let dim = value
        .get("dim")
        .and_then(Value::as_u64)
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::parse("dim", "expected a positive integer"))? as usize;
    let kind = match value.get("scalar") {
        None => ScalarKind::Rational,
        Some(v) => v
            .as_str()
            .ok_or_else(|| Error::parse("scalar", "expected a string"))?
            .parse()?,
    };
    Ok((dim, kind))
}

pub(crate) fn vector_field(
    value: &Value,
    field: &str,
    kind: ScalarKind,
    dim: usize,
) -> Result<Vec<Scalar>> {
    let arr = value
        .get(field)
        .and_then(Value::as_array)
        .filter(|a| a.len() == dim)
        .ok_or_else(|| Error::parse(field, format!("expected an array of {dim} scalars")))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| Scalar::from_json(kind, v).map_err(|e| e.in_field(&format!("{field}[{i}]"))))
        .collect()
}

pub(crate) fn cube_field(
    value: &Value,
    field: &str,
    kind: ScalarKind,
    dim: usize,
) -> Result<Vec<Scalar>> {
    let shape_err = |path: String| Error::parse(path, format!("expected a {dim}×{dim}×{dim} array"));
    let outer = value
        .get(field)
        .and_then(Value::as_array)
        .filter(|a| a.len() == dim)
        .ok_or_else(|| shape_err(field.to_string()))?;
    let mut out = Vec::with_capacity(dim * dim * dim);
    for (i, plane) in outer.iter().enumerate() {
        let plane = plane
            .as_array()
            .filter(|a| a.len() == dim)
            .ok_or_else(|| shape_err(format!("{field}[{i}]")))?;
        for (j, row) in plane.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|a| a.len() == dim)
                .ok_or_else(|| shape_err(format!("{field}[{i}][{j}]")))?;
            for (k, v) in row.iter().enumerate() {
                out.push(
                    Scalar::from_json(kind, v)
                        .map_err(|e| e.in_field(&format!("{field}[{i}][{j}][{k}]")))?,
                );
            }
        }
    }
    Ok(out)
}

/// Matrix of `a⊗b ↦ α ab⊗1 + β 1⊗ab − γ a⊗b` in the basis `e_i⊗e_j ↦ i·d + j`.
pub fn build_r_assoc(a: &FiniteAlgebra, alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Result<Matrix> {
    let kind = a.kind();
    for s in [alpha, beta, gamma] {
        if s.kind() != kind {
            return Err(Error::KindMismatch {
                left: kind,
                right: s.kind(),
            });
        }
    }
    let d = a.dim();
    let mut r = Matrix::zero(d * d, kind);
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            for k in 0..d {
                let c = a.constant(i, j, k);
                if c.is_zero() {
                    continue;
                }
                for (l, u) in a.unit().iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    let cu = c.mul(u)?;
                    r.accumulate(k * d + l, col, &alpha.mul(&cu)?)?;
                    r.accumulate(l * d + k, col, &beta.mul(&cu)?)?;
                }
            }
            r.accumulate(col, col, &gamma.neg())?;
        }
    }
    Ok(r)
}

/// The parameter regions in which the associative-algebra operator is Yang-Baxter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamCase {
    /// `α = γ ≠ 0, β ≠ 0`
    CaseI,
    /// `β = γ ≠ 0, α ≠ 0`
    CaseII,
    /// `α = β = 0, γ ≠ 0`
    CaseIII,
    None,
}

pub fn yb_param_case(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> ParamCase {
    if alpha == gamma && !alpha.is_zero() && !beta.is_zero() {
        ParamCase::CaseI
    } else if beta == gamma && !beta.is_zero() && !alpha.is_zero() {
        ParamCase::CaseII
    } else if alpha.is_zero() && beta.is_zero() && !gamma.is_zero() {
        ParamCase::CaseIII
    } else {
        ParamCase::None
    }
}

/// Matrix of `x⊗y ↦ α[x,y]⊗z + (−1)^{|x||y|} y⊗x`.
pub fn build_r_lie(l: &LieSuperAlgebra, alpha: &Scalar) -> Result<Matrix> {
    let kind = l.kind();
    if alpha.kind() != kind {
        return Err(Error::KindMismatch {
            left: kind,
            right: alpha.kind(),
        });
    }
    let d = l.dim();
    let mut r = Matrix::zero(d * d, kind);
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            for k in 0..d {
                let b = l.constant(i, j, k);
                if b.is_zero() {
                    continue;
                }
                for (m, zm) in l.z().iter().enumerate() {
                    if !zm.is_zero() {
                        r.accumulate(k * d + m, col, &alpha.mul(&b.mul(zm)?)?)?;
                    }
                }
            }
            r.accumulate(j * d + i, col, &l.sign(i, j))?;
        }
    }
    Ok(r)
}

/// Outcome of a linear Yang-Baxter check.
#[derive(Clone, Debug, PartialEq)]
pub struct YBReport {
    pub form: Form,
    pub residual: Norm,
    pub invertible: bool,
    pub witness: Option<(usize, usize)>,
}

impl YBReport {
    /// Exact residual zero (or float residual below `tol`) and invertible.
    pub fn passes(&self, tol: f64) -> bool {
        self.residual.within(tol) && self.invertible
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": self.form,
            "residual": self.residual.to_json(),
            "invertible": self.invertible,
            "witness": self.witness.map(|(r, c)| json!({"row": r, "col": c})),
        })
    }
}

impl Serialize for YBReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Residual of `R¹²R²³R¹² − R²³R¹²R²³` (braid) or `R¹²R¹³R²³ − R²³R¹³R¹²` (QYBE).
pub fn yb_residual(r: &Matrix, d: usize, form: Form) -> Result<YBReport> {
    let r12 = r.lift(d, Legs::L12)?;
    let r23 = r.lift(d, Legs::L23)?;
    let (left, right) = match form {
        Form::Braid => (
            Matrix::chain(&[&r12, &r23, &r12])?,
            Matrix::chain(&[&r23, &r12, &r23])?,
        ),
        Form::Qybe => {
            let r13 = r.lift(d, Legs::L13)?;
            (
                Matrix::chain(&[&r12, &r13, &r23])?,
                Matrix::chain(&[&r23, &r13, &r12])?,
            )
        }
    };
    let residual = Norm::of_difference(&left, &right)?;
    Ok(YBReport {
        form,
        witness: residual.witness(),
        residual,
        invertible: r.is_invertible()?,
    })
}

/// `(R∘τ, τ∘R)`.
pub fn braid_qybe_transport(r: &Matrix, d: usize) -> Result<(Matrix, Matrix)> {
    if r.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: r.dim(),
        });
    }
    let tau = Matrix::twist(d, r.kind());
    Ok((r.mul(&tau)?, tau.mul(r)?))
}

/// The 4×4 braiding gate and CNOT, over the rationals.
pub fn gate_matrices() -> (Matrix, Matrix) {
    let q = ScalarKind::Rational;
    let gate = Matrix::from_i64_rows(
        q,
        &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]],
    )
    .expect("constant matrix");
    let cnot = Matrix::from_i64_rows(
        q,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]],
    )
    .expect("constant matrix");
    (gate, cnot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    const Q: ScalarKind = ScalarKind::Rational;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(Q, n)
    }

    #[test]
    fn gate_reproduced_from_dual_numbers() {
        let a = FiniteAlgebra::dual_numbers(Q).unwrap();
        let r = build_r_assoc(&a, &q(1), &q(1), &q(1)).unwrap();
        assert_eq!(r, gate_matrices().0);
    }

    #[test]
    fn ground_field_gives_scalar() {
        let a = FiniteAlgebra::ground_field(Q).unwrap();
        let r = build_r_assoc(&a, &q(1), &q(1), &q(1)).unwrap();
        assert_eq!(r, Matrix::identity(1, Q));
    }

    #[test]
    fn case_three_is_scaled_identity() {
        for a in [
            FiniteAlgebra::dual_numbers(Q).unwrap(),
            FiniteAlgebra::matrix_algebra(Q, 2).unwrap(),
        ] {
            let r = build_r_assoc(&a, &q(0), &q(0), &q(2)).unwrap();
            let n = r.dim();
            assert_eq!(r, Matrix::identity(n, Q).scale(&q(-2)).unwrap());
        }
    }

    #[test]
    fn assoc_kind_mismatch() {
        let a = FiniteAlgebra::dual_numbers(Q).unwrap();
        assert!(matches!(
            build_r_assoc(&a, &Scalar::Float(1.0), &q(1), &q(1)),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn param_cases() {
        assert_eq!(yb_param_case(&q(1), &q(2), &q(1)), ParamCase::CaseI);
        assert_eq!(yb_param_case(&q(3), &q(2), &q(2)), ParamCase::CaseII);
        assert_eq!(yb_param_case(&q(0), &q(0), &q(1)), ParamCase::CaseIII);
        assert_eq!(yb_param_case(&q(1), &q(2), &q(3)), ParamCase::None);
        assert_eq!(yb_param_case(&q(0), &q(2), &q(0)), ParamCase::None);
    }

    #[test]
    fn algebra_validation_rejects_nonassociative() {
        // e1·e1 = e0 + e1 with no unit relations fixed up
        let mut mul = vec![q(0); 8];
        mul[idx3(2, 0, 0, 0)] = q(1);
        mul[idx3(2, 0, 1, 1)] = q(1);
        mul[idx3(2, 1, 0, 1)] = q(1);
        mul[idx3(2, 1, 1, 1)] = q(1);
        mul[idx3(2, 1, 1, 0)] = q(1);
        assert!(FiniteAlgebra::new(2, mul.clone(), vec![q(1), q(0)]).is_ok());
        mul[idx3(2, 0, 1, 1)] = q(2);
        assert!(matches!(
            FiniteAlgebra::new(2, mul, vec![q(1), q(0)]),
            Err(Error::InvalidAlgebra(_))
        ));
    }

    #[test]
    fn algebra_rejects_float_constants() {
        let r = FiniteAlgebra::ground_field(ScalarKind::Float);
        assert!(matches!(r, Err(Error::WrongKind { .. })));
    }

    #[test]
    fn abelian_lie_gives_twist() {
        let l = LieSuperAlgebra::abelian(Q, 3).unwrap();
        let r = build_r_lie(&l, &q(5)).unwrap();
        assert_eq!(r, Matrix::twist(3, Q));
    }

    #[test]
    fn heisenberg_braid_is_exact() {
        let l = LieSuperAlgebra::heisenberg(Q, 2).unwrap();
        let r = build_r_lie(&l, &q(1)).unwrap();
        assert_eq!(r.dim(), 9);
        let report = yb_residual(&r, 3, Form::Braid).unwrap();
        assert!(report.residual.is_exactly_zero());
        assert!(report.invertible);
        assert_eq!(report.witness, None);
    }

    #[test]
    fn heisenberg_noncentral_z() {
        assert_eq!(
            LieSuperAlgebra::heisenberg(Q, 0),
            Err(Error::NotCentral { index: 1 })
        );
    }

    #[test]
    fn odd_z_is_rejected() {
        let mut z = vec![q(0); 4];
        z[2] = q(1);
        let base = LieSuperAlgebra::gl11(Q).unwrap();
        let err = LieSuperAlgebra::new(base.grading().to_vec(), base.bracket.clone(), z);
        assert_eq!(err, Err(Error::OddCentralElement { index: 2 }));
    }

    #[test]
    fn grading_violation_is_rejected() {
        let base = LieSuperAlgebra::heisenberg(Q, 2).unwrap();
        let err = LieSuperAlgebra::new(vec![1, 0, 0], base.bracket.clone(), base.z.clone());
        assert!(matches!(err, Err(Error::Grading(_))));
    }

    #[test]
    fn super_case_braid_is_exact() {
        let l = LieSuperAlgebra::gl11(Q).unwrap();
        for alpha in [q(1), q(-3), Scalar::Rational(rat(2, 7))] {
            let r = build_r_lie(&l, &alpha).unwrap();
            let report = yb_residual(&r, 4, Form::Braid).unwrap();
            assert!(report.residual.is_exactly_zero());
            assert!(report.invertible);
        }
    }

    #[test]
    fn twist_satisfies_both_forms() {
        let tau = Matrix::twist(2, Q);
        for form in [Form::Braid, Form::Qybe] {
            let rep = yb_residual(&tau, 2, form).unwrap();
            assert!(rep.residual.is_exactly_zero());
            assert!(rep.invertible);
        }
    }

    #[test]
    fn gate_braid_exact() {
        let rep = yb_residual(&gate_matrices().0, 2, Form::Braid).unwrap();
        assert!(rep.residual.is_exactly_zero());
    }

    #[test]
    fn negative_control_has_witness() {
        let a = FiniteAlgebra::dual_numbers(Q).unwrap();
        let r = build_r_assoc(&a, &q(1), &q(2), &q(3)).unwrap();
        let rep = yb_residual(&r, 2, Form::Braid).unwrap();
        assert!(!rep.residual.is_exactly_zero());
        assert!(rep.witness.is_some());
    }

    #[test]
    fn residual_dimension_mismatch() {
        assert!(matches!(
            yb_residual(&Matrix::identity(4, Q), 3, Form::Braid),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn transport_examples() {
        let tau = Matrix::twist(2, Q);
        let (a, b) = braid_qybe_transport(&tau, 2).unwrap();
        assert_eq!(a, Matrix::identity(4, Q));
        assert_eq!(b, Matrix::identity(4, Q));
        let (a, b) = braid_qybe_transport(&Matrix::identity(4, Q), 2).unwrap();
        assert_eq!((a, b), (tau.clone(), tau));
        let (a, b) = braid_qybe_transport(&gate_matrices().0, 2).unwrap();
        for m in [a, b] {
            assert!(yb_residual(&m, 2, Form::Qybe).unwrap().residual.is_exactly_zero());
        }
    }

    #[test]
    fn gates_are_involutions() {
        let (g, c) = gate_matrices();
        let id = Matrix::identity(4, Q);
        assert_eq!(g.mul(&g).unwrap(), id);
        assert_eq!(c.mul(&c).unwrap(), id);
    }

    #[test]
    fn algebra_json_round_trip() {
        let a = FiniteAlgebra::matrix_algebra(Q, 2).unwrap();
        assert_eq!(FiniteAlgebra::from_json(&a.to_json()).unwrap(), a);
        let l = LieSuperAlgebra::gl11(Q).unwrap();
        assert_eq!(LieSuperAlgebra::from_json(&l.to_json()).unwrap(), l);
    }
}
