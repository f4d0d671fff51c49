//! Closed-form set-theoretic maps evaluated with exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::exponent::ExponentQuadruple;
use super::map::{check_triples, SetYBReport};
use crate::error::{Error, Result};
use crate::scalar::{format_gauss, Gauss, Scalar};
use crate::Form;

#[derive(Clone, Debug, PartialEq)]
pub enum ClosedFormFamily {
    /// `(x, y) ↦ (y^α, x^β y^{1−αβ})` on positive rationals, `α, β ≥ 1`.
    Power { alpha: u32, beta: u32 },
    /// `(x, y) ↦ (x^m y^n, x^p y^q)` on positive rationals.
    Monomial(ExponentQuadruple),
    /// `(z, w) ↦ (αw, βz + (1 − αβ)w)` on Gaussian rationals.
    Linear { alpha: Gauss, beta: Gauss },
    /// `(x, y) ↦ (x/y, x²)` on nonzero rationals.
    QuotientSquare,
    /// `(p, q) ↦ (p ∨ q, p ∧ q)` on `{0, 1}`.
    Logic,
    /// `(a, b) ↦ (min, max)` on integers.
    MinMax,
    /// `(a, b) ↦ (gcd, lcm)` on positive integers.
    GcdLcm,
}

fn rpow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn as_rational<'a>(s: &'a Scalar, what: &str) -> Result<&'a BigRational> {
    s.as_rational()
        .ok_or_else(|| Error::Domain(format!("{what} needs rational inputs, got {}", s.kind())))
}

impl ClosedFormFamily {
    pub fn power(alpha: u32, beta: u32) -> Result<Self> {
        if alpha == 0 || beta == 0 {
            return Err(Error::Domain(format!(
                "power family needs positive integer parameters, got ({alpha}, {beta})"
            )));
        }
        Ok(ClosedFormFamily::Power { alpha, beta })
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClosedFormFamily::Power { .. } => "power",
            ClosedFormFamily::Monomial(_) => "monomial",
            ClosedFormFamily::Linear { .. } => "linear",
            ClosedFormFamily::QuotientSquare => "quotient-square",
            ClosedFormFamily::Logic => "logic",
            ClosedFormFamily::MinMax => "minmax",
            ClosedFormFamily::GcdLcm => "gcdlcm",
        }
    }

    pub fn domain(&self) -> &'static str {
        match self {
            ClosedFormFamily::Power { .. } | ClosedFormFamily::Monomial(_) => "positive rationals",
            ClosedFormFamily::Linear { .. } => "Gaussian rationals",
            ClosedFormFamily::QuotientSquare => "nonzero rationals",
            ClosedFormFamily::Logic => "booleans {0, 1}",
            ClosedFormFamily::MinMax => "integer chain",
            ClosedFormFamily::GcdLcm => "positive integers (divisor lattice)",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"kind": self.name(), "domain": self.domain()});
        match self {
            ClosedFormFamily::Power { alpha, beta } => {
                v["alpha"] = json!(alpha);
                v["beta"] = json!(beta);
            }
            ClosedFormFamily::Monomial(e) => v["exponents"] = json!([e.m, e.n, e.p, e.q]),
            ClosedFormFamily::Linear { alpha, beta } => {
                v["alpha"] = json!(format_gauss(alpha));
                v["beta"] = json!(format_gauss(beta));
            }
            _ => {}
        }
        v
    }

    /// Rejects inputs outside the family's domain.
    pub fn check_domain(&self, x: &Scalar) -> Result<()> {
        let name = self.name();
        match self {
            ClosedFormFamily::Power { .. } | ClosedFormFamily::Monomial(_) => {
                if !as_rational(x, name)?.is_positive() {
                    return Err(Error::Domain(format!("{name} family needs positive inputs, got {x}")));
                }
            }
            ClosedFormFamily::Linear { .. } => {
                if x.as_gauss().is_none() {
                    return Err(Error::Domain(format!(
                        "linear family needs Gaussian rational inputs, got {}",
                        x.kind()
                    )));
                }
            }
            ClosedFormFamily::QuotientSquare => {
                if as_rational(x, name)?.is_zero() {
                    return Err(Error::Domain("quotient-square family needs nonzero inputs".into()));
                }
            }
            ClosedFormFamily::Logic => {
                let q = as_rational(x, name)?;
                if !(q.is_zero() || q.is_one()) {
                    return Err(Error::Domain(format!("logic family needs 0 or 1, got {x}")));
                }
            }
            ClosedFormFamily::MinMax => {
                if !as_rational(x, name)?.is_integer() {
                    return Err(Error::Domain(format!("minmax family needs integers, got {x}")));
                }
            }
            ClosedFormFamily::GcdLcm => {
                let q = as_rational(x, name)?;
                if !q.is_integer() || !q.is_positive() {
                    return Err(Error::Domain(format!(
                        "gcdlcm family needs positive integers, got {x}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, x: &Scalar, y: &Scalar) -> Result<(Scalar, Scalar)> {
        let name = self.name();
        match self {
            ClosedFormFamily::Power { alpha, beta } => {
                let e = ExponentQuadruple::power_family(*alpha as i64, *beta as i64);
                ClosedFormFamily::Monomial(e).apply(x, y)
            }
            ClosedFormFamily::Monomial(e) => {
                let (x, y) = (as_rational(x, name)?, as_rational(y, name)?);
                if x.is_zero() || y.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok((
                    Scalar::Rational(rpow(x, e.m) * rpow(y, e.n)),
                    Scalar::Rational(rpow(x, e.p) * rpow(y, e.q)),
                ))
            }
            ClosedFormFamily::Linear { alpha, beta } => {
                let z = x
                    .as_gauss()
                    .ok_or_else(|| Error::Domain("linear family needs Gaussian inputs".into()))?;
                let w = y
                    .as_gauss()
                    .ok_or_else(|| Error::Domain("linear family needs Gaussian inputs".into()))?;
                let one = Gauss::new(BigRational::one(), BigRational::zero());
                let first = alpha * w;
                let second = beta * z + (one - alpha * beta) * w;
                Ok((Scalar::Gauss(first), Scalar::Gauss(second)))
            }
            ClosedFormFamily::QuotientSquare => {
                let (x, y) = (as_rational(x, name)?, as_rational(y, name)?);
                if y.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok((Scalar::Rational(x / y), Scalar::Rational(x * x)))
            }
            ClosedFormFamily::Logic => {
                let (p, q) = (as_rational(x, name)?, as_rational(y, name)?);
                let (p, q) = (!p.is_zero(), !q.is_zero());
                let b = |v: bool| Scalar::Rational(BigRational::from_integer(BigInt::from(v as i64)));
                Ok((b(p || q), b(p && q)))
            }
            ClosedFormFamily::MinMax => {
                let (a, b) = (as_rational(x, name)?, as_rational(y, name)?);
                Ok((
                    Scalar::Rational(a.min(b).clone()),
                    Scalar::Rational(a.max(b).clone()),
                ))
            }
            ClosedFormFamily::GcdLcm => {
                let (a, b) = (as_rational(x, name)?.to_integer(), as_rational(y, name)?.to_integer());
                Ok((
                    Scalar::Rational(BigRational::from_integer(a.gcd(&b))),
                    Scalar::Rational(BigRational::from_integer(a.lcm(&b))),
                ))
            }
        }
    }
}

fn sample_rational(i: usize, salt: usize) -> BigRational {
    let num = 1 + (i * (2 * salt + 3) + salt) % 13;
    let den = 1 + (i / (salt + 1) + 2 * salt) % 7;
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `count` deterministic triples of positive rationals.
pub fn positive_rational_triples(count: usize) -> Vec<[Scalar; 3]> {
    (0..count)
        .map(|i| [0, 1, 2].map(|s| Scalar::Rational(sample_rational(i, s))))
        .collect()
}

/// `count` deterministic triples of Gaussian rationals with signed parts.
pub fn gaussian_triples(count: usize) -> Vec<[Scalar; 3]> {
    (0..count)
        .map(|i| {
            [0, 1, 2].map(|s| {
                let re = sample_rational(i, s) - BigRational::from_integer(BigInt::from(3));
                let im = sample_rational(i + 5, s + 3) - BigRational::from_integer(BigInt::from(2));
                Scalar::Gauss(Gauss::new(re, im))
            })
        })
        .collect()
}

/// Evaluates both composition chains exactly on every triple, in order.
pub fn check_family(f: &ClosedFormFamily, form: Form, triples: &[[Scalar; 3]]) -> Result<SetYBReport<Scalar>> {
    for t in triples {
        for x in t {
            f.check_domain(x)?;
        }
    }
    check_triples(&|a: &Scalar, b: &Scalar| f.apply(a, b), form, triples.iter().cloned())
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct MorphismSample {
    pub z: f64,
    pub w: f64,
    pub max_rel_error: f64,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ExpMorphismReport {
    pub alpha: u32,
    pub beta: u32,
    /// Exponent coefficients of `(z, w)` in each output, via `exp∘R`.
    pub exponents_via_linear: [[i64; 2]; 2],
    /// The same coefficients via `S∘(exp×exp)`.
    pub exponents_via_power: [[i64; 2]; 2],
    pub symbolic_pass: bool,
    pub samples: Vec<MorphismSample>,
    pub numeric_pass: bool,
    pub tolerance: f64,
}

impl ExpMorphismReport {
    pub fn passed(&self) -> bool {
        self.symbolic_pass && self.numeric_pass
    }
}

/// Checks `(exp×exp)∘R = S∘(exp×exp)` for the linear family `R` and the power family `S`
/// with the same `(α, β)`, on real inputs.
pub fn exp_morphism_check(alpha: u32, beta: u32, samples: &[(f64, f64)]) -> Result<ExpMorphismReport> {
    if alpha == 0 || beta == 0 {
        return Err(Error::Domain("exp morphism check needs positive α, β".into()));
    }
    let (a, b) = (alpha as i64, beta as i64);
    // R(z, w) = (αw, βz + (1−αβ)w) as linear forms in (z, w)
    let via_linear = [[0, a], [b, 1 - a * b]];
    // S(x, y) = (y^α, x^β y^{1−αβ}) with x = e^z, y = e^w: exponent of x contributes to z, of y to w
    let power = ExponentQuadruple::power_family(a, b);
    let via_power = [[power.m, power.n], [power.p, power.q]];
    let symbolic_pass = via_linear == via_power;

    let tol = 1e-12;
    let mut out = Vec::with_capacity(samples.len());
    for &(z, w) in samples {
        let lhs = [
            (a as f64 * w).exp(),
            (b as f64 * z + (1 - a * b) as f64 * w).exp(),
        ];
        let (x, y) = (z.exp(), w.exp());
        let rhs = [
            y.powi(alpha as i32),
            x.powi(beta as i32) * y.powi((1 - a * b) as i32),
        ];
        let err = lhs
            .iter()
            .zip(&rhs)
            .map(|(l, r)| ((l - r) / l.abs().max(r.abs()).max(f64::MIN_POSITIVE)).abs())
            .fold(0.0, f64::max);
        out.push(MorphismSample {
            z,
            w,
            max_rel_error: err,
        });
    }
    let numeric_pass = out.iter().all(|s| s.max_rel_error <= tol);
    Ok(ExpMorphismReport {
        alpha,
        beta,
        exponents_via_linear: via_linear,
        exponents_via_power: via_power,
        symbolic_pass,
        samples: out,
        numeric_pass,
        tolerance: tol,
    })
}
