use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Form;

/// A total map `X×X → X×X` on `X = {0..n−1}`, entry `(i,j)` stored at `i·n + j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMap {
    n: usize,
    table: Vec<(usize, usize)>,
}

impl FiniteMap {
    pub fn new(n: usize, table: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "set size",
                value: "0".into(),
            });
        }
        if table.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: table.len(),
            });
        }
        if let Some(idx) = table.iter().position(|&(a, b)| a >= n || b >= n) {
            return Err(Error::Domain(format!(
                "table entry {idx} = {:?} leaves {{0..{}}}",
                table[idx],
                n - 1
            )));
        }
        Ok(FiniteMap { n, table })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> (usize, usize)) -> Result<Self> {
        let table = (0..n * n).map(|ij| f(ij / n, ij % n)).collect();
        FiniteMap::new(n, table)
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap::from_fn(n, |i, j| (i, j)).expect("identity is total")
    }

    pub fn twist(n: usize) -> Self {
        FiniteMap::from_fn(n, |i, j| (j, i)).expect("twist is total")
    }

    /// `(a, b) ↦ (min, max)` on the chain `0 < 1 < … < n−1`.
    pub fn min_max(n: usize) -> Self {
        FiniteMap::from_fn(n, |i, j| (i.min(j), i.max(j))).expect("min/max is total")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[(usize, usize)] {
        &self.table
    }

    pub fn apply(&self, i: usize, j: usize) -> (usize, usize) {
        self.table[i * self.n + j]
    }

    /// `τ∘S`: swap the outputs.
    pub fn then_twist(&self) -> FiniteMap {
        FiniteMap {
            n: self.n,
            table: self.table.iter().map(|&(a, b)| (b, a)).collect(),
        }
    }

    /// `(σ×σ)∘S∘(σ×σ)⁻¹`.
    pub fn conjugate(&self, sigma: &[usize]) -> FiniteMap {
        let n = self.n;
        let mut table = vec![(0, 0); n * n];
        for i in 0..n {
            for j in 0..n {
                let (a, b) = self.apply(i, j);
                table[sigma[i] * n + sigma[j]] = (sigma[a], sigma[b]);
            }
        }
        FiniteMap { n, table }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "table": self.table.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::parse("n", "expected a positive integer"))? as usize;
        let rows = value
            .get("table")
            .and_then(Value::as_array)
            .filter(|t| t.len() == n * n)
            .ok_or_else(|| Error::parse("table", format!("expected {} pairs", n * n)))?;
        let table = rows
            .iter()
            .enumerate()
            .map(|(idx, pair)| {
                let p = pair
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::parse(format!("table[{idx}]"), "expected [a, b]"))?;
                let coord = |k: usize| {
                    p[k].as_u64()
                        .filter(|&v| (v as usize) < n)
                        .map(|v| v as usize)
                        .ok_or_else(|| {
                            Error::parse(format!("table[{idx}][{k}]"), format!("expected 0..{}", n - 1))
                        })
                };
                Ok((coord(0)?, coord(1)?))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteMap::new(n, table)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// A triple on which the two composition chains disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample<T> {
    pub input: [T; 3],
    pub left: [T; 3],
    pub right: [T; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetYBReport<T> {
    pub form: Form,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample<T>>,
    pub triples_checked: usize,
}

/// Values that can appear in a report payload.
pub trait ReportValue {
    fn to_json(&self) -> Value;
}

impl ReportValue for usize {
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl ReportValue for Scalar {
    fn to_json(&self) -> Value {
        Scalar::to_json(self)
    }
}

impl<T: ReportValue> SetYBReport<T> {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_json(&self) -> Value {
        let triple = |t: &[T; 3]| Value::Array(t.iter().map(ReportValue::to_json).collect());
        json!({
            "form": self.form,
            "verdict": self.verdict,
            "triples_checked": self.triples_checked,
            "counterexample": self.counterexample.as_ref().map(|c| json!({
                "input": triple(&c.input),
                "left": triple(&c.left),
                "right": triple(&c.right),
            })),
        })
    }
}

/// Evaluates both sides of the chosen equation on one triple.
/// `S¹² = S×I`, `S²³ = I×S`, `S¹³` acts on coordinates 1 and 3; the rightmost map applies first.
pub fn eval_chains<T, F>(s: &F, form: Form, t: &[T; 3]) -> Result<([T; 3], [T; 3])>
where
    T: Clone,
    F: Fn(&T, &T) -> Result<(T, T)>,
{
    let s12 = |[x, y, z]: [T; 3]| -> Result<[T; 3]> {
        let (a, b) = s(&x, &y)?;
        Ok([a, b, z])
    };
    let s23 = |[x, y, z]: [T; 3]| -> Result<[T; 3]> {
        let (a, b) = s(&y, &z)?;
        Ok([x, a, b])
    };
    let s13 = |[x, y, z]: [T; 3]| -> Result<[T; 3]> {
        let (a, b) = s(&x, &z)?;
        Ok([a, y, b])
    };
    Ok(match form {
        Form::Braid => (
            s12(s23(s12(t.clone())?)?)?,
            s23(s12(s23(t.clone())?)?)?,
        ),
        Form::Qybe => (
            s12(s13(s23(t.clone())?)?)?,
            s23(s13(s12(t.clone())?)?)?,
        ),
    })
}

/// Checks triples in order and stops at the first disagreement.
pub fn check_triples<T, F, I>(s: &F, form: Form, triples: I) -> Result<SetYBReport<T>>
where
    T: Clone + PartialEq,
    F: Fn(&T, &T) -> Result<(T, T)>,
    I: IntoIterator<Item = [T; 3]>,
{
    let mut checked = 0;
    for t in triples {
        checked += 1;
        let (left, right) = eval_chains(s, form, &t)?;
        if left != right {
            return Ok(SetYBReport {
                form,
                verdict: Verdict::Fail,
                counterexample: Some(Counterexample { input: t, left, right }),
                triples_checked: checked,
            });
        }
    }
    Ok(SetYBReport {
        form,
        verdict: Verdict::Pass,
        counterexample: None,
        triples_checked: checked,
    })
}

/// Exhaustive check over all `n³` triples in lexicographic order.
pub fn set_yb_check(s: &FiniteMap, form: Form) -> SetYBReport<usize> {
    let n = s.n();
    let triples = (0..n * n * n).map(|t| [t / (n * n), (t / n) % n, t % n]);
    check_triples(&|a: &usize, b: &usize| Ok(s.apply(*a, *b)), form, triples)
        .expect("finite map lookups are total")
}
