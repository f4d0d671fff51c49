//! The parameterized family `R(x) = cos x·I₄ + sin x·J` and the two-color system.
//!
//! `J` is the antidiagonal matrix `(i/α, i, i, αi)`; `J² = −I₄` for every
//! nonzero `α`, so `R(x) = exp(xJ)`.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{mat_exp, Legs, Matrix, Norm};
use crate::scalar::{format_rational, int, parse_rational, Scalar, ScalarKind};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JSpec {
    alpha: f64,
}

impl JSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be a nonzero real, got {alpha}")));
        }
        Ok(JSpec { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

fn cfloat(re: f64, im: f64) -> Scalar {
    Scalar::CFloat(Complex64::new(re, im))
}

pub fn build_j(spec: &JSpec) -> Matrix {
    let a = spec.alpha;
    let mut j = Matrix::zero(4, ScalarKind::CFloat);
    for (row, col, im) in [(0, 3, 1.0 / a), (1, 2, 1.0), (2, 1, 1.0), (3, 0, a)] {
        j.set(row, col, cfloat(0.0, im)).expect("cfloat entry");
    }
    j
}

/// `cos x·I₄ + sin x·J`.
pub fn r_of_x(spec: &JSpec, x: f64) -> Matrix {
    let id = Matrix::identity(4, ScalarKind::CFloat);
    id.scale(&cfloat(x.cos(), 0.0))
        .and_then(|c| c.add(&build_j(spec).scale(&cfloat(x.sin(), 0.0))?))
        .expect("same-kind 4×4 arithmetic")
}

/// `‖exp(πJ) + I₄‖`.
pub fn euler_check(spec: &JSpec) -> Result<Norm> {
    let e = mat_exp(&build_j(spec).scale(&cfloat(std::f64::consts::PI, 0.0))?)?;
    Ok(Norm::of(&e.add(&Matrix::identity(4, ScalarKind::CFloat))?))
}

/// Max-entry norm of `R¹²(x)R²³(x+y)R¹²(y) − R²³(y)R¹²(x+y)R²³(x)`.
pub fn colored_residual(spec: &JSpec, x: f64, y: f64) -> Result<Norm> {
    let lift = |t: f64, legs| r_of_x(spec, t).lift(2, legs);
    let left = Matrix::chain(&[&lift(x, Legs::L12)?, &lift(x + y, Legs::L23)?, &lift(y, Legs::L12)?])?;
    let right = Matrix::chain(&[&lift(y, Legs::L23)?, &lift(x + y, Legs::L12)?, &lift(x, Legs::L23)?])?;
    Norm::of_difference(&left, &right)
}

/// `‖(R(x+h) − R(x−h))/(2h) − J·R(x)‖`.
pub fn ode_residual(spec: &JSpec, x: f64, h: f64) -> Result<Norm> {
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Domain(format!("step h must be positive, got {h}")));
    }
    let diff = r_of_x(spec, x + h)
        .sub(&r_of_x(spec, x - h))?
        .scale(&cfloat(1.0 / (2.0 * h), 0.0))?;
    let jr = build_j(spec).mul(&r_of_x(spec, x))?;
    Norm::of_difference(&diff, &jr)
}

/// Radical inverse in base `b`.
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let mut inv = 1.0 / b as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % b) as f64;
        i /= b;
        f *= inv;
    }
    inv = out;
    inv
}

/// Deterministic samples in `[−π, π]²`: a `grid × grid` lattice followed by
/// `extra` points of the (2, 3) Halton sequence.
pub fn colored_samples(grid: usize, extra: usize) -> Vec<(f64, f64)> {
    use std::f64::consts::PI;
    let mut out = Vec::with_capacity(grid * grid + extra);
    let node = |k: usize| {
        if grid == 1 {
            0.0
        } else {
            -PI + 2.0 * PI * k as f64 / (grid - 1) as f64
        }
    };
    for a in 0..grid {
        for b in 0..grid {
            out.push((node(a), node(b)));
        }
    }
    for i in 1..=extra as u64 {
        out.push((
            -PI + 2.0 * PI * radical_inverse(i, 2),
            -PI + 2.0 * PI * radical_inverse(i, 3),
        ));
    }
    out
}

/// Three two-color functions `α, β, γ`, evaluated exactly.
#[derive(Clone, Debug, PartialEq)]
pub enum ColorFunctionTriple {
    Constant {
        alpha: BigRational,
        beta: BigRational,
        gamma: BigRational,
    },
    Table(ColorTable),
    Named(NamedColorFamily),
}

/// Values on a finite set of colors; `alpha[i][j]` is `α(colors[i], colors[j])`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorTable {
    colors: Vec<BigRational>,
    alpha: Vec<Vec<BigRational>>,
    beta: Vec<Vec<BigRational>>,
    gamma: Vec<Vec<BigRational>>,
}

impl ColorTable {
    pub fn new(
        colors: Vec<BigRational>,
        alpha: Vec<Vec<BigRational>>,
        beta: Vec<Vec<BigRational>>,
        gamma: Vec<Vec<BigRational>>,
    ) -> Result<Self> {
        let k = colors.len();
        if k == 0 {
            return Err(Error::Domain("color table needs at least one color".into()));
        }
        for i in 0..k {
            if colors[..i].contains(&colors[i]) {
                return Err(Error::Domain(format!("duplicate color {}", format_rational(&colors[i]))));
            }
        }
        for (name, t) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
            if t.len() != k || t.iter().any(|r| r.len() != k) {
                return Err(Error::Domain(format!("{name} table must be {k}×{k}")));
            }
        }
        Ok(ColorTable {
            colors,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn colors(&self) -> &[BigRational] {
        &self.colors
    }

    fn index(&self, c: &BigRational) -> Result<usize> {
        self.colors
            .iter()
            .position(|x| x == c)
            .ok_or_else(|| Error::Domain(format!("color {} is not in the table", format_rational(c))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NamedColorFamily {
    /// `α = β = γ = 1`.
    Ones,
    /// `α = β = γ = u + 2v + 1`.
    EqualLinear,
}

impl NamedColorFamily {
    pub const ALL: [NamedColorFamily; 2] = [NamedColorFamily::Ones, NamedColorFamily::EqualLinear];

    pub fn name(self) -> &'static str {
        match self {
            NamedColorFamily::Ones => "ones",
            NamedColorFamily::EqualLinear => "equal-linear",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::parse("name", format!("unknown color family '{name}'")))
    }
}

impl ColorFunctionTriple {
    /// `(α(u,v), β(u,v), γ(u,v))`.
    pub fn eval(&self, u: &BigRational, v: &BigRational) -> Result<[BigRational; 3]> {
        match self {
            ColorFunctionTriple::Constant { alpha, beta, gamma } => {
                Ok([alpha.clone(), beta.clone(), gamma.clone()])
            }
            ColorFunctionTriple::Table(t) => {
                let (i, j) = (t.index(u)?, t.index(v)?);
                Ok([t.alpha[i][j].clone(), t.beta[i][j].clone(), t.gamma[i][j].clone()])
            }
            ColorFunctionTriple::Named(NamedColorFamily::Ones) => Ok([int(1), int(1), int(1)]),
            ColorFunctionTriple::Named(NamedColorFamily::EqualLinear) => {
                let g = u + v * int(2) + int(1);
                Ok([g.clone(), g.clone(), g])
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let r = |q: &BigRational| json!(format_rational(q));
        let grid = |t: &Vec<Vec<BigRational>>| -> Value {
            t.iter().map(|row| row.iter().map(r).collect::<Vec<_>>()).collect()
        };
        match self {
            ColorFunctionTriple::Constant { alpha, beta, gamma } => {
                json!({"kind": "constant", "alpha": r(alpha), "beta": r(beta), "gamma": r(gamma)})
            }
            ColorFunctionTriple::Table(t) => json!({
                "kind": "table",
                "colors": t.colors.iter().map(r).collect::<Vec<_>>(),
                "alpha": grid(&t.alpha),
                "beta": grid(&t.beta),
                "gamma": grid(&t.gamma),
            }),
            ColorFunctionTriple::Named(n) => json!({"kind": "named", "name": n.name()}),
        }
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let kind = value
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::parse("kind", "expected constant|table|named"))?;
        let rational = |v: &Value, field: &str| -> Result<BigRational> {
            match v {
                Value::String(s) => parse_rational(s).map_err(|e| e.in_field(field)),
                Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
                _ => Err(Error::parse(field, "expected an exact rational string")),
            }
        };
        let field = |name: &str| -> Result<&Value> {
            value
                .get(name)
                .ok_or_else(|| Error::parse(name, "missing"))
        };
        match kind {
            "constant" => Ok(ColorFunctionTriple::Constant {
                alpha: rational(field("alpha")?, "alpha")?,
                beta: rational(field("beta")?, "beta")?,
                gamma: rational(field("gamma")?, "gamma")?,
            }),
            "named" => {
                let name = field("name")?
                    .as_str()
                    .ok_or_else(|| Error::parse("name", "expected a string"))?;
                Ok(ColorFunctionTriple::Named(NamedColorFamily::parse(name)?))
            }
            "table" => {
                let colors = field("colors")?
                    .as_array()
                    .ok_or_else(|| Error::parse("colors", "expected an array"))?
                    .iter()
                    .enumerate()
                    .map(|(i, c)| rational(c, &format!("colors[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let grid = |name: &str| -> Result<Vec<Vec<BigRational>>> {
                    field(name)?
                        .as_array()
                        .ok_or_else(|| Error::parse(name, "expected a square array"))?
                        .iter()
                        .enumerate()
                        .map(|(i, row)| {
                            row.as_array()
                                .ok_or_else(|| Error::parse(format!("{name}[{i}]"), "expected an array"))?
                                .iter()
                                .enumerate()
                                .map(|(j, c)| rational(c, &format!("{name}[{i}][{j}]")))
                                .collect()
                        })
                        .collect()
                };
                Ok(ColorFunctionTriple::Table(ColorTable::new(
                    colors,
                    grid("alpha")?,
                    grid("beta")?,
                    grid("gamma")?,
                )?))
            }
            other => Err(Error::parse("kind", format!("unknown kind '{other}'"))),
        }
    }
}

/// The five left-hand sides (e1)–(e5) at colors `(u, v, w)`, transcribed term by term.
pub fn yb_system_residuals(
    fns: &ColorFunctionTriple,
    u: &BigRational,
    v: &BigRational,
    w: &BigRational,
) -> Result<[BigRational; 5]> {
    let [a_uv, b_uv, g_uv] = fns.eval(u, v)?;
    let [a_vw, b_vw, g_vw] = fns.eval(v, w)?;
    let [a_uw, b_uw, g_uw] = fns.eval(u, w)?;

    let e1 = (&b_vw - &g_vw) * (&a_uv * &b_uw - &a_uw * &b_uv)
        + (&a_uv - &g_uv) * (&a_vw * &b_uw - &a_uw * &b_vw);
    let e2 = &b_vw * (&b_uv - &g_uv) * (&a_uw - &g_uw)
        + (&a_vw - &g_vw) * (&b_uw * &g_uv - &b_uv * &g_uw);
    let e3 = &a_uv * &b_vw * (&a_uw - &g_uw)
        + &a_vw * &g_uw * (&g_uv - &a_uv)
        + &g_vw * (&a_uv * &g_uw - &a_uw * &g_uv);
    let e4 = &a_uv * &b_vw * (&b_uw - &g_uw)
        + &b_vw * &g_uw * (&g_uv - &b_uv)
        + &g_vw * (&b_uv * &g_uw - &b_uw * &g_uv);
    let e5 = &a_uv * (&a_vw - &g_vw) * (&b_uw - &g_uw)
        + (&b_uv - &g_uv) * (&a_uw * &g_vw - &a_vw * &g_uw);
    Ok([e1, e2, e3, e4, e5])
}

pub fn all_zero(residuals: &[BigRational; 5]) -> bool {
    residuals.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use std::f64::consts::PI;

    #[test]
    fn j_alpha_one_is_antidiagonal_i() {
        let j = build_j(&JSpec::new(1.0).unwrap());
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r + c == 3 { cfloat(0.0, 1.0) } else { cfloat(0.0, 0.0) };
                assert_eq!(j.get(r, c), &expected);
            }
        }
    }

    #[test]
    fn j_squares_to_minus_identity() {
        for a in [0.5, 1.0, 2.0, 5.0] {
            let j = build_j(&JSpec::new(a).unwrap());
            let n = Norm::of(&j.mul(&j).unwrap().add(&Matrix::identity(4, ScalarKind::CFloat)).unwrap());
            assert!(n.within(1e-13), "alpha={a}: {n:?}");
        }
    }

    #[test]
    fn alpha_zero_rejected() {
        assert!(matches!(JSpec::new(0.0), Err(Error::Domain(_))));
        assert!(matches!(JSpec::new(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_identity() {
        for a in [1.0, 2.0] {
            let n = euler_check(&JSpec::new(a).unwrap()).unwrap();
            assert!(n.within(1e-9), "{n:?}");
        }
        let zero = mat_exp(&build_j(&JSpec::new(1.0).unwrap()).scale(&cfloat(0.0, 0.0)).unwrap()).unwrap();
        let n = Norm::of_difference(&zero, &Matrix::identity(4, ScalarKind::CFloat)).unwrap();
        assert!(n.within(1e-15));
    }

    #[test]
    fn colored_at_origin() {
        let s = JSpec::new(1.0).unwrap();
        assert!(colored_residual(&s, 0.0, 0.0).unwrap().within(1e-15));
    }

    #[test]
    fn closed_form_matches_exponential() {
        let s = JSpec::new(1.0).unwrap();
        for x in [0.3, 1.0, 2.5] {
            let e = mat_exp(&build_j(&s).scale(&cfloat(x, 0.0)).unwrap()).unwrap();
            let n = Norm::of_difference(&r_of_x(&s, x), &e).unwrap();
            assert!(n.within(1e-12), "x={x}: {n:?}");
        }
    }

    #[test]
    fn ode_examples() {
        let s = JSpec::new(1.0).unwrap();
        assert!(ode_residual(&s, 0.0, 1e-4).unwrap().within(1e-7));
        assert!(ode_residual(&s, PI / 2.0, 1e-4).unwrap().within(1e-7));
        let coarse = ode_residual(&s, 1.0, 1e-3).unwrap().value();
        let fine = ode_residual(&s, 1.0, 5e-4).unwrap().value();
        assert!((coarse / fine - 4.0).abs() < 0.5, "ratio {}", coarse / fine);
        assert!(matches!(ode_residual(&s, 0.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn samples_are_deterministic() {
        let a = colored_samples(5, 7);
        assert_eq!(a.len(), 32);
        assert_eq!(a, colored_samples(5, 7));
        assert!(a.iter().all(|&(x, y)| x.abs() <= PI && y.abs() <= PI));
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(2, 3), 2.0 / 3.0);
    }

    #[test]
    fn equal_functions_give_zero() {
        let f = ColorFunctionTriple::Named(NamedColorFamily::EqualLinear);
        let r = yb_system_residuals(&f, &rat(1, 2), &int(3), &rat(-2, 7)).unwrap();
        assert!(all_zero(&r));
    }

    #[test]
    fn constants_give_e2_value() {
        let f = ColorFunctionTriple::Constant {
            alpha: int(2),
            beta: int(3),
            gamma: int(5),
        };
        let r = yb_system_residuals(&f, &int(0), &int(1), &int(2)).unwrap();
        assert!(r[0].is_zero());
        assert_eq!(r[1], int(18));
    }

    #[test]
    fn table_domain_violation() {
        let c = vec![int(0), int(1)];
        let t = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        let f = ColorFunctionTriple::Table(ColorTable::new(c, t.clone(), t.clone(), t).unwrap());
        assert!(yb_system_residuals(&f, &int(0), &int(1), &int(1)).is_ok());
        assert!(matches!(
            yb_system_residuals(&f, &int(0), &int(2), &int(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn ragged_table_rejected() {
        let c = vec![int(0), int(1)];
        let good = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        let ragged = vec![vec![int(1), int(2)], vec![int(3)]];
        assert!(matches!(ColorTable::new(c, good.clone(), ragged, good), Err(Error::Domain(_))));
    }

    #[test]
    fn color_json_round_trip() {
        let c = vec![int(0), rat(1, 2)];
        let t = vec![vec![int(1), rat(-2, 3)], vec![int(3), int(4)]];
        let f = ColorFunctionTriple::Table(ColorTable::new(c, t.clone(), t.clone(), t).unwrap());
        assert_eq!(ColorFunctionTriple::from_json(&f.to_json()).unwrap(), f);
        let n = ColorFunctionTriple::Named(NamedColorFamily::Ones);
        assert_eq!(ColorFunctionTriple::from_json(&n.to_json()).unwrap(), n);
    }
}
