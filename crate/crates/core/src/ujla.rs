//! UJLA structures: classification of bilinear products, deformations and the
//! functional and endomorphism constructions.
//!
//! Every identity checked here is homogeneous in the structure constants, so
//! the constants are first scaled to integers by the lcm of their
//! denominators. Evaluation runs in checked `i128` and falls back to `BigInt`
//! only when a value overflows.
//!
//! The multilinear identities (cyclic axiom, associativity, Jacobi,
//! (anti)commutativity) are decided on basis tuples. The four degree axioms
//! are cubic in `a` and linear in `b`: `b` ranges over basis vectors and `a`
//! over the grid `{0,1,2,3}^dim`, which decides a polynomial of degree ≤ 3 per
//! coordinate. For `dim > 6` the grid is replaced by `{0,1,2,3}³` on every
//! 3-element coordinate subset; a cubic form has at most three variables per
//! monomial, so vanishing on every such slice is again a decision procedure.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linear::{cube_field, dim_and_kind, FiniteAlgebra};
use crate::scalar::{format_rational, int, parse_rational, Scalar, ScalarKind};

/// Largest dimension for which the full `{0,1,2,3}^dim` grid is used.
pub const FULL_GRID_MAX_DIM: usize = 6;

#[inline]
fn idx3(dim: usize, i: usize, j: usize, k: usize) -> usize {
    (i * dim + j) * dim + k
}

/// Structure constants `e_i·e_j = Σ_k c[i][j][k] e_k` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearStructure {
    dim: usize,
    c: Vec<BigRational>,
}

impl BilinearStructure {
    pub fn new(dim: usize, c: Vec<BigRational>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim * dim,
                found: c.len(),
            });
        }
        Ok(BilinearStructure { dim, c })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        BilinearStructure::new(dim, vec![BigRational::zero(); dim * dim * dim])
    }

    /// Builds from sparse `(i, j, k, c)` triples; repeated positions accumulate.
    pub fn from_sparse(dim: usize, entries: &[(usize, usize, usize, BigRational)]) -> Result<Self> {
        let mut s = BilinearStructure::zero(dim)?;
        for (i, j, k, v) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::OutOfRange {
                    what: "structure constant index",
                    value: format!("({i}, {j}, {k}) with dim {dim}"),
                });
            }
            s.c[idx3(dim, *i, *j, *k)] += v;
        }
        Ok(s)
    }

    pub fn from_algebra(a: &FiniteAlgebra) -> Result<Self> {
        let dim = a.dim();
        let mut c = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let q = a.constant(i, j, k).as_rational().ok_or(Error::WrongKind {
                        expected: "rational",
                        found: a.kind(),
                    })?;
                    c.push(q.clone());
                }
            }
        }
        BilinearStructure::new(dim, c)
    }

    /// `M_n(ℚ)` in the matrix-unit basis `E_{ab} ↦ a·n + b`.
    pub fn matrix_algebra(n: usize) -> Result<Self> {
        BilinearStructure::from_algebra(&FiniteAlgebra::matrix_algebra(ScalarKind::Rational, n)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.c[idx3(self.dim, i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: BigRational) {
        let d = self.dim;
        self.c[idx3(d, i, j, k)] = v;
    }

    /// `ab` for coordinate vectors `a`, `b`.
    pub fn product(&self, a: &[BigRational], b: &[BigRational]) -> Result<Vec<BigRational>> {
        for v in [a, b] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let d = self.dim;
        let mut out = vec![BigRational::zero(); d];
        for i in (0..d).filter(|&i| !a[i].is_zero()) {
            for j in (0..d).filter(|&j| !b[j].is_zero()) {
                let ab = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[idx3(d, i, j, k)];
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim;
        let cube: Vec<Vec<Vec<String>>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| (0..d).map(|k| format_rational(self.constant(i, j, k))).collect())
                    .collect()
            })
            .collect();
        json!({"dim": d, "scalar": "rational", "mul": cube})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (dim, kind) = dim_and_kind(value)?;
        if kind != ScalarKind::Rational {
            return Err(Error::parse("scalar", "bilinear structures are rational"));
        }
        let c = cube_field(value, "mul", kind, dim)?
            .into_iter()
            .map(|s| match s {
                Scalar::Rational(q) => q,
                _ => unreachable!("cube_field returns the requested kind"),
            })
            .collect();
        BilinearStructure::new(dim, c)
    }
}

/// `c′[i][j][k] = α·c[i][j][k] + β·c[j][i][k]`, i.e. `a∘b = α·ab + β·ba`.
pub fn deform(b: &BilinearStructure, alpha: &BigRational, beta: &BigRational) -> BilinearStructure {
    let d = b.dim;
    let mut c = Vec::with_capacity(b.c.len());
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                c.push(alpha * b.constant(i, j, k) + beta * b.constant(j, i, k));
            }
        }
    }
    BilinearStructure { dim: d, c }
}

// ---------------------------------------------------------------------------
// integer evaluation engine

trait Ring: Clone + Send + Sync + PartialEq {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

struct Engine<T> {
    dim: usize,
    /// Nonzero `(i, j, k, c)` of the scaled constants, grouped by `i`.
    terms: Vec<Vec<(usize, usize, T)>>,
    dense: Vec<T>,
}

impl<T: Ring> Engine<T> {
    fn new(dim: usize, scaled: &[BigInt]) -> Option<Self> {
        let mut terms = vec![Vec::new(); dim];
        let mut dense = Vec::with_capacity(scaled.len());
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = T::from_big(&scaled[idx3(dim, i, j, k)])?;
                    if !v.is_zero() {
                        terms[i].push((j, k, v.clone()));
                    }
                    dense.push(v);
                }
            }
        }
        Some(Engine { dim, terms, dense })
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &T {
        &self.dense[idx3(self.dim, i, j, k)]
    }

    fn prod(&self, u: &[T], v: &[T]) -> Option<Vec<T>> {
        let mut out = vec![T::zero(); self.dim];
        for (i, row) in self.terms.iter().enumerate() {
            if u[i].is_zero() {
                continue;
            }
            for (j, k, c) in row {
                if v[*j].is_zero() {
                    continue;
                }
                let t = u[i].mul(&v[*j])?.mul(c)?;
                out[*k] = out[*k].add(&t)?;
            }
        }
        Some(out)
    }

    fn sum(&self, vs: &[&[T]]) -> Option<Vec<T>> {
        let mut out = vec![T::zero(); self.dim];
        for v in vs {
            for (o, x) in out.iter_mut().zip(v.iter()) {
                *o = o.add(x)?;
            }
        }
        Some(out)
    }

    fn basis(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim];
        v[i] = T::from_i64(1);
        v
    }
}

/// A point at which an identity fails, as rational coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: Option<Vec<BigRational>>,
}

impl Witness {
    fn basis(dim: usize, idx: &[usize]) -> Self {
        let e = |i: usize| {
            let mut v = vec![BigRational::zero(); dim];
            v[i] = BigRational::one();
            v
        };
        Witness {
            a: e(idx[0]),
            b: e(idx[1]),
            c: idx.get(2).map(|&k| e(k)),
        }
    }

    fn grid(dim: usize, a: &[i64], b: usize) -> Self {
        let mut bv = vec![BigRational::zero(); dim];
        bv[b] = BigRational::one();
        Witness {
            a: a.iter().map(|&x| int(x)).collect(),
            b: bv,
            c: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let v = |x: &Vec<BigRational>| x.iter().map(format_rational).collect::<Vec<_>>();
        let mut out = json!({"a": v(&self.a), "b": v(&self.b)});
        if let Some(c) = &self.c {
            out["c"] = json!(v(c));
        }
        out
    }
}

pub const FLAG_NAMES: [&str; 10] = [
    "cyclic_axiom",
    "degree_axiom_1",
    "degree_axiom_2",
    "degree_axiom_3",
    "degree_axiom_4",
    "commutative",
    "anticommutative",
    "associative",
    "jacobi",
    "jordan_identity",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomReport {
    pub dim: usize,
    pub cyclic_axiom: bool,
    /// `(a²b)a = a²(ba)`, `(ab)a² = a(ba²)`, `(ba²)a = (ba)a²`, `a²(ab) = a(a²b)`.
    pub degree_axioms: [bool; 4],
    pub commutative: bool,
    pub anticommutative: bool,
    pub associative: bool,
    pub jacobi: bool,
    /// `(a²b)a = a²(ba)`; the same polynomial identity as the first degree axiom.
    pub jordan_identity: bool,
    pub is_ujla: bool,
    pub is_lie: bool,
    pub is_jordan: bool,
    pub is_associative: bool,
    /// Number of points `a` used for the degree axioms.
    pub grid_points: usize,
    #[serde(skip)]
    pub witnesses: BTreeMap<&'static str, Witness>,
}

impl AxiomReport {
    pub fn flag(&self, name: &str) -> Option<bool> {
        Some(match name {
            "cyclic_axiom" => self.cyclic_axiom,
            "degree_axiom_1" => self.degree_axioms[0],
            "degree_axiom_2" => self.degree_axioms[1],
            "degree_axiom_3" => self.degree_axioms[2],
            "degree_axiom_4" => self.degree_axioms[3],
            "commutative" => self.commutative,
            "anticommutative" => self.anticommutative,
            "associative" => self.associative,
            "jacobi" => self.jacobi,
            "jordan_identity" => self.jordan_identity,
            "is_ujla" => self.is_ujla,
            "is_lie" => self.is_lie,
            "is_jordan" => self.is_jordan,
            "is_associative" => self.is_associative,
            _ => return None,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["witnesses"] = self
            .witnesses
            .iter()
            .map(|(k, w)| (k.to_string(), w.to_json()))
            .collect::<serde_json::Map<_, _>>()
            .into();
        v
    }
}

enum RawWitness {
    Basis(Vec<usize>),
    Grid(usize, usize),
}

struct Raw {
    /// In `FLAG_NAMES` order; `None` means the identity holds.
    failures: [Option<RawWitness>; 10],
}

fn grid_points(dim: usize) -> Vec<Vec<i64>> {
    if dim <= FULL_GRID_MAX_DIM {
        let total = 4usize.pow(dim as u32);
        (1..total)
            .map(|mut n| {
                let mut p = vec![0i64; dim];
                for x in p.iter_mut() {
                    *x = (n % 4) as i64;
                    n /= 4;
                }
                p
            })
            .collect()
    } else {
        let mut set = BTreeSet::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    for n in 1..64usize {
                        let mut p = vec![0i64; dim];
                        p[i] = (n % 4) as i64;
                        p[j] = (n / 4 % 4) as i64;
                        p[k] = (n / 16) as i64;
                        set.insert(p);
                    }
                }
            }
        }
        set.into_iter().collect()
    }
}

fn degree_sides<T: Ring>(e: &Engine<T>, a: &[T], b: &[T]) -> Option<[bool; 4]> {
    let a2 = e.prod(a, a)?;
    let a2b = e.prod(&a2, b)?;
    let ba = e.prod(b, a)?;
    let ab = e.prod(a, b)?;
    let ba2 = e.prod(b, &a2)?;
    Some([
        e.prod(&a2b, a)? == e.prod(&a2, &ba)?,
        e.prod(&ab, &a2)? == e.prod(a, &ba2)?,
        e.prod(&ba2, a)? == e.prod(&ba, &a2)?,
        e.prod(&a2, &ab)? == e.prod(a, &a2b)?,
    ])
}

fn evaluate<T: Ring>(e: &Engine<T>, grid: &[Vec<i64>]) -> Option<Raw> {
    let d = e.dim;
    let mut failures: [Option<RawWitness>; 10] = Default::default();
    let mut note = |slot: usize, w: RawWitness| {
        if failures[slot].is_none() {
            failures[slot] = Some(w);
        }
    };

    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let (ci, cj) = (e.c(i, j, k), e.c(j, i, k));
                if ci != cj {
                    note(5, RawWitness::Basis(vec![i, j]));
                }
                if !ci.add(cj)?.is_zero() {
                    note(6, RawWitness::Basis(vec![i, j]));
                }
            }
        }
    }

    let basis: Vec<Vec<T>> = (0..d).map(|i| e.basis(i)).collect();
    let triples: Vec<(usize, usize, usize)> = (0..d)
        .flat_map(|i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))))
        .collect();
    let multilinear: Vec<[bool; 3]> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let (a, b, c) = (&basis[i], &basis[j], &basis[k]);
            let (ab, bc, ca) = (e.prod(a, b)?, e.prod(b, c)?, e.prod(c, a)?);
            let (ab_c, bc_a, ca_b) = (e.prod(&ab, c)?, e.prod(&bc, a)?, e.prod(&ca, b)?);
            let (a_bc, b_ca, c_ab) = (e.prod(a, &bc)?, e.prod(b, &ca)?, e.prod(c, &ab)?);
            let cyclic = e.sum(&[&ab_c, &bc_a, &ca_b])? == e.sum(&[&a_bc, &b_ca, &c_ab])?;
            let assoc = ab_c == a_bc;
            let jacobi = e.sum(&[&ab_c, &bc_a, &ca_b])?.iter().all(Ring::is_zero);
            Some([cyclic, assoc, jacobi])
        })
        .collect::<Option<_>>()?;
    for (&(i, j, k), flags) in triples.iter().zip(&multilinear) {
        for (slot, ok) in [0usize, 7, 8].into_iter().zip(flags) {
            if !ok {
                note(slot, RawWitness::Basis(vec![i, j, k]));
            }
        }
    }

    let degree: Vec<Vec<[bool; 4]>> = grid
        .par_iter()
        .map(|p| {
            let a: Vec<T> = p.iter().map(|&x| T::from_i64(x)).collect();
            basis.iter().map(|b| degree_sides(e, &a, b)).collect::<Option<Vec<_>>>()
        })
        .collect::<Option<_>>()?;
    for (pi, per_b) in degree.iter().enumerate() {
        for (bj, flags) in per_b.iter().enumerate() {
            for (n, ok) in flags.iter().enumerate() {
                if !ok {
                    note(1 + n, RawWitness::Grid(pi, bj));
                    if n == 0 {
                        note(9, RawWitness::Grid(pi, bj));
                    }
                }
            }
        }
    }
    Some(Raw { failures })
}

fn scaled_constants(b: &BilinearStructure) -> Vec<BigInt> {
    let l = b
        .c
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    b.c.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

/// Computes every flag; there is no early exit.
pub fn classify(b: &BilinearStructure) -> AxiomReport {
    let scaled = scaled_constants(b);
    let grid = grid_points(b.dim);
    let raw = Engine::<i128>::new(b.dim, &scaled)
        .and_then(|e| evaluate(&e, &grid))
        .or_else(|| Engine::<BigInt>::new(b.dim, &scaled).and_then(|e| evaluate(&e, &grid)))
        .expect("BigInt evaluation cannot overflow");

    let ok = |slot: usize| raw.failures[slot].is_none();
    let mut witnesses = BTreeMap::new();
    for (slot, w) in raw.failures.iter().enumerate() {
        if let Some(w) = w {
            let w = match w {
                RawWitness::Basis(idx) => Witness::basis(b.dim, idx),
                RawWitness::Grid(p, bj) => Witness::grid(b.dim, &grid[*p], *bj),
            };
            witnesses.insert(FLAG_NAMES[slot], w);
        }
    }
    let degree_axioms = [ok(1), ok(2), ok(3), ok(4)];
    AxiomReport {
        dim: b.dim,
        cyclic_axiom: ok(0),
        degree_axioms,
        commutative: ok(5),
        anticommutative: ok(6),
        associative: ok(7),
        jacobi: ok(8),
        jordan_identity: ok(9),
        is_ujla: ok(0) && degree_axioms.iter().all(|&x| x),
        is_lie: ok(6) && ok(8),
        is_jordan: ok(5) && ok(9),
        is_associative: ok(7),
        grid_points: grid.len(),
        witnesses,
    }
}

/// `lhs − rhs` of the four degree axioms at arbitrary rational `a`, `b`.
pub fn degree_axiom_differences(
    s: &BilinearStructure,
    a: &[BigRational],
    b: &[BigRational],
) -> Result<[Vec<BigRational>; 4]> {
    let p = |x: &[BigRational], y: &[BigRational]| s.product(x, y);
    let diff = |x: Vec<BigRational>, y: Vec<BigRational>| -> Vec<BigRational> {
        x.into_iter().zip(y).map(|(u, v)| u - v).collect()
    };
    let a2 = p(a, a)?;
    let a2b = p(&a2, b)?;
    let ba = p(b, a)?;
    let ab = p(a, b)?;
    let ba2 = p(b, &a2)?;
    Ok([
        diff(p(&a2b, a)?, p(&a2, &ba)?),
        diff(p(&ab, &a2)?, p(a, &ba2)?),
        diff(p(&ba2, a)?, p(&ba, &a2)?),
        diff(p(&a2, &ab)?, p(a, &a2b)?),
    ])
}

// ---------------------------------------------------------------------------
// constructions

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FunctionalKind {
    /// `f(v)w + vf(w) − f(v)f(w)e`.
    Assoc,
    /// `f(v)w − vf(w)`.
    Lie,
    /// `f(v)w + vf(w)`.
    Jordan,
    /// `αf(v)w + βvf(w)`.
    Ujla,
}

impl std::str::FromStr for FunctionalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" => Ok(FunctionalKind::Assoc),
            "lie" => Ok(FunctionalKind::Lie),
            "jordan" => Ok(FunctionalKind::Jordan),
            "ujla" => Ok(FunctionalKind::Ujla),
            other => Err(Error::parse("kind", format!("expected assoc|lie|jordan|ujla, got '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalSpec {
    pub dim: usize,
    pub f: Vec<BigRational>,
    pub e: Option<Vec<BigRational>>,
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl FunctionalSpec {
    pub fn new(f: Vec<BigRational>) -> Self {
        FunctionalSpec {
            dim: f.len(),
            f,
            e: None,
            alpha: BigRational::one(),
            beta: BigRational::one(),
        }
    }

    pub fn with_unit(mut self, e: Vec<BigRational>) -> Self {
        self.e = Some(e);
        self
    }

    pub fn with_params(mut self, alpha: BigRational, beta: BigRational) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .filter(|&d| d > 0)
            .ok_or_else(|| Error::parse("dim", "expected a positive integer"))? as usize;
        let vector = |field: &str| -> Result<Option<Vec<BigRational>>> {
            let Some(v) = value.get(field) else {
                return Ok(None);
            };
            let arr = v
                .as_array()
                .filter(|a| a.len() == dim)
                .ok_or_else(|| Error::parse(field, format!("expected an array of {dim} rationals")))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| json_rational(x).map_err(|e| e.in_field(&format!("{field}[{i}]"))))
                .collect::<Result<Vec<_>>>()
                .map(Some)
        };
        let scalar = |field: &str| -> Result<BigRational> {
            match value.get(field) {
                None => Ok(BigRational::one()),
                Some(x) => json_rational(x).map_err(|e| e.in_field(field)),
            }
        };
        Ok(FunctionalSpec {
            dim,
            f: vector("f")?.ok_or_else(|| Error::parse("f", "missing"))?,
            e: vector("e")?,
            alpha: scalar("alpha")?,
            beta: scalar("beta")?,
        })
    }

    pub fn to_json(&self) -> Value {
        let v = |x: &Vec<BigRational>| x.iter().map(format_rational).collect::<Vec<_>>();
        let mut out = json!({
            "dim": self.dim,
            "f": v(&self.f),
            "alpha": format_rational(&self.alpha),
            "beta": format_rational(&self.beta),
        });
        if let Some(e) = &self.e {
            out["e"] = json!(v(e));
        }
        out
    }
}

pub(crate) fn json_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().expect("checked"))),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::parse("", "expected a rational")),
    }
}

/// The product of the chosen kind; for `Assoc` also returns the unit `e`.
pub fn from_functional(
    spec: &FunctionalSpec,
    kind: FunctionalKind,
) -> Result<(BilinearStructure, Option<Vec<BigRational>>)> {
    let d = spec.dim;
    if spec.f.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: spec.f.len(),
        });
    }
    let f = &spec.f;
    let mut entries = Vec::new();
    let mut unit = None;
    let (cw, cv) = match kind {
        FunctionalKind::Assoc | FunctionalKind::Jordan => (BigRational::one(), BigRational::one()),
        FunctionalKind::Lie => (BigRational::one(), -BigRational::one()),
        FunctionalKind::Ujla => (spec.alpha.clone(), spec.beta.clone()),
    };
    for i in 0..d {
        for j in 0..d {
            // e_i·e_j = cw·f_i e_j + cv·f_j e_i
            entries.push((i, j, j, &cw * &f[i]));
            entries.push((i, j, i, &cv * &f[j]));
        }
    }
    if kind == FunctionalKind::Assoc {
        let e = spec
            .e
            .as_ref()
            .ok_or_else(|| Error::parse("e", "assoc construction needs a unit vector"))?;
        if e.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: e.len(),
            });
        }
        let fe: BigRational = f.iter().zip(e).map(|(x, y)| x * y).sum();
        if !fe.is_one() {
            return Err(Error::Domain(format!("f(e) must be 1, got {}", format_rational(&fe))));
        }
        for i in 0..d {
            for j in 0..d {
                for (k, ek) in e.iter().enumerate() {
                    if !ek.is_zero() {
                        entries.push((i, j, k, -(&f[i] * &f[j] * ek)));
                    }
                }
            }
        }
        unit = Some(e.clone());
    }
    Ok((BilinearStructure::from_sparse(d, &entries)?, unit))
}

pub const MAX_ENDO_DIM: usize = 3;

/// `f ∗ g = p·f∘g − q·g∘f` on `End(k^d)` in the matrix-unit basis `E_{ab} ↦ a·d + b`.
pub fn endo_structure(p: &BigRational, q: &BigRational, d: usize) -> Result<BilinearStructure> {
    if d == 0 || d > MAX_ENDO_DIM {
        return Err(Error::OutOfRange {
            what: "endomorphism dimension",
            value: format!("{d} (supported: 1..={MAX_ENDO_DIM})"),
        });
    }
    let mut entries = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let (x, y) = (a * d + b, c * d + e);
                    if b == c {
                        entries.push((x, y, a * d + e, p.clone()));
                    }
                    if e == a {
                        entries.push((x, y, c * d + b, -q.clone()));
                    }
                }
            }
        }
    }
    BilinearStructure::from_sparse(d * d, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(n: i64) -> BigRational {
        int(n)
    }

    #[test]
    fn matrix_algebra_flags() {
        let r = classify(&BilinearStructure::matrix_algebra(2).unwrap());
        assert!(r.is_associative && r.is_ujla);
        assert!(!r.is_lie && !r.is_jordan);
        assert!(r.witnesses.contains_key("commutative"));
        assert!(!r.witnesses.contains_key("associative"));
    }

    #[test]
    fn zero_product_has_every_flag() {
        let r = classify(&BilinearStructure::zero(3).unwrap());
        for name in FLAG_NAMES {
            assert_eq!(r.flag(name), Some(true), "{name}");
        }
        assert!(r.is_ujla && r.is_lie && r.is_jordan && r.is_associative);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn matrix_algebra_deformations() {
        let m = BilinearStructure::matrix_algebra(2).unwrap();
        assert!(classify(&deform(&m, &rat(1, 2), &rat(1, 2))).is_jordan);
        assert!(classify(&deform(&m, &q(1), &q(-1))).is_lie);
        assert!(classify(&deform(&m, &q(0), &q(1))).is_associative);
    }

    #[test]
    fn identity_deformation_is_idempotent() {
        let m = BilinearStructure::matrix_algebra(2).unwrap();
        let d = deform(&m, &rat(2, 3), &q(-5));
        assert_eq!(deform(&d, &q(1), &q(0)), d);
    }

    #[test]
    fn functional_constructions() {
        let spec = FunctionalSpec::new(vec![q(1), q(0)]).with_unit(vec![q(1), q(0)]);
        let (s, e) = from_functional(&spec, FunctionalKind::Assoc).unwrap();
        let e = e.unwrap();
        for i in 0..2 {
            let mut x = vec![q(0), q(0)];
            x[i] = q(1);
            assert_eq!(s.product(&x, &e).unwrap(), x);
            assert_eq!(s.product(&e, &x).unwrap(), x);
        }
        assert!(classify(&s).is_associative);

        let f = FunctionalSpec::new(vec![q(1), q(2), q(3)]).with_params(q(2), q(5));
        assert!(classify(&from_functional(&f, FunctionalKind::Lie).unwrap().0).is_lie);
        assert!(classify(&from_functional(&f, FunctionalKind::Jordan).unwrap().0).is_jordan);
        assert!(classify(&from_functional(&f, FunctionalKind::Ujla).unwrap().0).is_ujla);
    }

    #[test]
    fn assoc_needs_normalized_unit() {
        let spec = FunctionalSpec::new(vec![q(1), q(1)]).with_unit(vec![q(1), q(1)]);
        assert!(matches!(from_functional(&spec, FunctionalKind::Assoc), Err(Error::Domain(_))));
        let spec = FunctionalSpec::new(vec![q(1), q(1)]);
        assert!(matches!(from_functional(&spec, FunctionalKind::Assoc), Err(Error::Parse { .. })));
    }

    #[test]
    fn endo_examples() {
        let comp = classify(&endo_structure(&q(1), &q(0), 2).unwrap());
        assert!(comp.is_associative && comp.is_ujla);
        let comm = classify(&endo_structure(&q(1), &q(1), 2).unwrap());
        assert!(comm.is_lie && comm.is_ujla);
        assert!(classify(&endo_structure(&q(2), &q(3), 2).unwrap()).is_ujla);
        assert!(matches!(endo_structure(&q(1), &q(1), 4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn endo_composition_is_matrix_algebra() {
        assert_eq!(
            endo_structure(&q(1), &q(0), 2).unwrap(),
            BilinearStructure::matrix_algebra(2).unwrap()
        );
    }

    #[test]
    fn perturbation_is_caught() {
        let mut m = BilinearStructure::matrix_algebra(2).unwrap();
        let v = m.constant(0, 0, 0) + q(1);
        m.set_constant(0, 0, 0, v);
        let r = classify(&m);
        assert!(!r.associative || !r.cyclic_axiom);
        assert!(r.witnesses.contains_key("associative") || r.witnesses.contains_key("cyclic_axiom"));
    }

    #[test]
    fn sliced_grid_for_large_dim() {
        let g = grid_points(9);
        assert!(g.iter().all(|p| p.iter().filter(|&&x| x != 0).count() <= 3));
        assert_eq!(grid_points(2).len(), 15);
    }

    #[test]
    fn huge_constants_use_bigint_path() {
        let big = BigRational::from_integer(BigInt::from(10).pow(30));
        let m = BilinearStructure::matrix_algebra(2).unwrap();
        let r = classify(&deform(&m, &big, &q(0)));
        assert!(r.is_associative && r.is_ujla);
    }

    #[test]
    fn json_round_trip() {
        let s = deform(&BilinearStructure::matrix_algebra(2).unwrap(), &rat(1, 3), &q(-2));
        assert_eq!(BilinearStructure::from_json(&s.to_json()).unwrap(), s);
        let f = FunctionalSpec::new(vec![q(1), rat(1, 2)]).with_unit(vec![q(1), q(0)]);
        assert_eq!(FunctionalSpec::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn signed_scaling_handles_negative_denominators() {
        let s = BilinearStructure::from_sparse(1, &[(0, 0, 0, rat(-3, 4))]).unwrap();
        assert!(num_traits::Signed::is_negative(&scaled_constants(&s)[0]));
        assert!(classify(&s).is_associative);
    }
}
