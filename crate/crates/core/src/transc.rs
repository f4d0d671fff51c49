//! The Basel-type bound `Σ_{k≤n} 1/k² < (2/3)((n+1)/n)^n` and the numerical
//! margins around `π` and `e`.
//!
//! Bound verdicts are exact. Each row is first decided with certified
//! fixed-point bounds (an upper bound of the sum against a lower bound of the
//! power, both rounded in the safe direction); the rare undecided row falls
//! back to a full rational comparison. The constants `π` and `e` are enclosed
//! in rational intervals with outward rounding.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, rat, rational_to_f64};

/// The rational cap `1.645` used in place of `π²/6` for `n ≥ 5`.
pub fn basel_cap() -> BigRational {
    rat(329, 200)
}

/// Rows below this size are decided directly in the proof replay.
pub const REPLAY_DIRECT_UPTO: u64 = 5;

/// Largest `n` handled with exact rows.
pub const MAX_EXACT_N: u64 = 1_000_000;

const FIXED_BITS: u64 = 256;

/// `Σ_{k=1..n} 1/k²`.
pub fn lhs_exact(n: u64) -> BigRational {
    (1..=n).fold(BigRational::zero(), |acc, k| {
        acc + BigRational::new(BigInt::one(), BigInt::from(k) * BigInt::from(k))
    })
}

/// `(2/3)·((n+1)/n)^n`.
pub fn rhs_exact(n: u64) -> BigRational {
    let num = BigInt::from(2) * BigInt::from(n + 1).pow(n as u32);
    let den = BigInt::from(3) * BigInt::from(n).pow(n as u32);
    BigRational::new(num, den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub n: u64,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub verdict: bool,
}

impl BoundRow {
    pub fn compute(n: u64) -> Self {
        let lhs = lhs_exact(n);
        let rhs = rhs_exact(n);
        let verdict = lhs < rhs;
        BoundRow { n, lhs, rhs, verdict }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "lhs": format_rational(&self.lhs),
            "rhs": format_rational(&self.rhs),
            "lhs_approx": rational_to_f64(&self.lhs),
            "rhs_approx": rational_to_f64(&self.rhs),
            "verdict": self.verdict,
        })
    }
}

/// Each step of the chain `Σ < π²/6 < 329/200 ≤ rhs(5) ≤ rhs(n)` for `n ≥ 5`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofReplay {
    pub direct_upto: u64,
    pub direct_holds: bool,
    pub cap: String,
    /// `π²/6 < 329/200`, from a 50-digit enclosure of `π`.
    pub pi_sq_over_6_below_cap: bool,
    pub rhs5_at_least_cap: bool,
    /// `rhs(n) < rhs(n+1)` checked exactly for `n` below this bound.
    pub rhs_monotone_checked_upto: u64,
    pub rhs_monotone: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm41Report {
    pub n_max: u64,
    /// The first rows, kept with exact values.
    pub rows: Vec<BoundRow>,
    pub checked: u64,
    pub passed: u64,
    /// First few `n` with a false verdict.
    pub failures: Vec<u64>,
    /// `lhs(n) < 329/200` for every checked `n`.
    pub lhs_below_cap: bool,
    /// Rows decided without the full rational fallback.
    pub fast_decided: u64,
    pub replay: ProofReplay,
    /// For `5 ≤ n ≤ min(n_max, 200)`, the direct verdict equals the replay verdict.
    pub replay_agrees: bool,
    pub runtime_ms: u64,
}

impl Thm41Report {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.passed == self.checked
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n_max": self.n_max,
            "rows": self.rows.iter().map(BoundRow::to_json).collect::<Vec<_>>(),
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
            "lhs_below_cap": self.lhs_below_cap,
            "fast_decided": self.fast_decided,
            "replay": self.replay,
            "replay_agrees": self.replay_agrees,
            "holds": self.holds(),
            "runtime_ms": self.runtime_ms,
        })
    }
}

/// `⌊2^FIXED_BITS · ((n+1)/n)^n⌋` lower bound by floored repeated squaring.
fn rhs_power_lower(n: u64) -> BigUint {
    let one = BigUint::one() << FIXED_BITS;
    let base = (BigUint::from(n + 1) << FIXED_BITS) / BigUint::from(n);
    let mul = |a: &BigUint, b: &BigUint| (a * b) >> FIXED_BITS;
    let (mut acc, mut sq, mut e) = (one, base, n);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mul(&sq, &sq);
        }
    }
    acc
}

/// `lhs(n) < rhs(n)` given `lhs = num/den`.
fn decide(n: u64, num: &BigUint, den: &BigUint) -> (bool, bool) {
    // lhs ≤ ceil(2^B·num/den)/2^B and rhs ≥ (2/3)·lower/2^B
    let lhs_hi = ((num << FIXED_BITS) + den - BigUint::one()) / den;
    let rhs_lo3 = rhs_power_lower(n) * 2u32;
    if lhs_hi.clone() * 3u32 < rhs_lo3 {
        return (true, true);
    }
    let lhs = BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
    (lhs < rhs_exact(n), false)
}

fn rhs_increasing(n: u64) -> bool {
    // (n+1)^{2n+1} < (n+2)^{n+1}·n^n
    let a = BigUint::from(n + 1).pow((2 * n + 1) as u32);
    let b = BigUint::from(n + 2).pow((n + 1) as u32) * BigUint::from(n).pow(n as u32);
    a < b
}

pub fn proof_replay(n_max: u64) -> ProofReplay {
    let direct_holds = (1..=REPLAY_DIRECT_UPTO).all(|n| BoundRow::compute(n).verdict);
    let cap = basel_cap();
    let pi = pi_interval(50);
    let pi_sq_over_6_below_cap = pi.mul(&pi).scale(&rat(1, 6)).hi < cap;
    let rhs5_at_least_cap = rhs_exact(REPLAY_DIRECT_UPTO) >= cap;
    let upto = n_max.clamp(REPLAY_DIRECT_UPTO, 2000);
    let rhs_monotone = (REPLAY_DIRECT_UPTO..upto)
        .into_par_iter()
        .all(rhs_increasing);
    ProofReplay {
        direct_upto: REPLAY_DIRECT_UPTO,
        direct_holds,
        cap: format_rational(&cap),
        pi_sq_over_6_below_cap,
        rhs5_at_least_cap,
        rhs_monotone_checked_upto: upto,
        rhs_monotone,
        holds: direct_holds && pi_sq_over_6_below_cap && rhs5_at_least_cap && rhs_monotone,
    }
}

/// The proof's verdict for `n`: direct comparison up to 5, the cap chain beyond.
pub fn replay_verdict(replay: &ProofReplay, n: u64) -> bool {
    if n <= replay.direct_upto {
        BoundRow::compute(n).verdict
    } else {
        replay.pi_sq_over_6_below_cap && replay.rhs5_at_least_cap && replay.rhs_monotone
    }
}

/// Checks every `n ≤ n_max` exactly, keeping the first `keep_rows` rows.
///
/// The sum is carried as `N / L²` with `L = lcm(1..n)`; rows are streamed in
/// blocks so memory stays proportional to one block.
pub fn thm41_check(n_max: u64, keep_rows: usize) -> Result<Thm41Report> {
    if n_max == 0 || n_max > MAX_EXACT_N {
        return Err(Error::OutOfRange {
            what: "n_max",
            value: format!("{n_max} (supported: 1..={MAX_EXACT_N})"),
        });
    }
    let start = Instant::now();
    const BLOCK: u64 = 128;
    let cap = basel_cap();
    let (cap_num, cap_den) = (
        cap.numer().to_biguint().expect("positive"),
        cap.denom().to_biguint().expect("positive"),
    );

    let mut l = BigUint::one();
    let mut l2 = BigUint::one();
    let mut num = BigUint::zero();
    let (mut checked, mut passed, mut fast) = (0u64, 0u64, 0u64);
    let mut failures = Vec::new();
    let mut lhs_below_cap = true;

    let mut n = 1u64;
    while n <= n_max {
        let end = (n + BLOCK - 1).min(n_max);
        let mut block = Vec::with_capacity((end - n + 1) as usize);
        for m in n..=end {
            let r = (&l % m).to_u64().expect("remainder below m");
            let f = m / r.gcd(&m);
            if f > 1 {
                l *= f;
                l2 *= f * f;
                num *= f * f;
            }
            let t = &l / m;
            num += &t * &t;
            block.push((m, num.clone(), l2.clone()));
        }
        let verdicts: Vec<(u64, bool, bool, bool)> = block
            .into_par_iter()
            .map(|(m, num, den)| {
                let (v, quick) = decide(m, &num, &den);
                let below = &num * &cap_den < &cap_num * &den;
                (m, v, quick, below)
            })
            .collect();
        for (m, v, quick, below) in verdicts {
            checked += 1;
            if v {
                passed += 1;
            } else if failures.len() < 16 {
                failures.push(m);
            }
            fast += quick as u64;
            lhs_below_cap &= below;
        }
        n = end + 1;
    }

    let rows = (1..=n_max.min(keep_rows as u64))
        .map(BoundRow::compute)
        .collect::<Vec<_>>();
    let replay = proof_replay(n_max);
    let agree_upto = n_max.min(200);
    let replay_agrees = (REPLAY_DIRECT_UPTO..=agree_upto)
        .all(|m| BoundRow::compute(m).verdict == replay_verdict(&replay, m));

    Ok(Thm41Report {
        n_max,
        rows,
        checked,
        passed,
        failures,
        lhs_below_cap,
        fast_decided: fast,
        replay,
        replay_agrees,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// The printed table: `(n, Σ, (2/3)((n+1)/n)^n)`, with `(d)` marking a repeated digit.
pub const PRINTED_TABLE: [(u64, Option<&str>, &str); 5] = [
    (1, Some("1"), "1.(3)"),
    (2, Some("1.25"), "1.5"),
    (3, Some("1.36(1)"), "1.58..."),
    (4, Some("1.4236(1)"), "1.6276..."),
    (5, None, "1.65(8)"),
];

/// `q` truncated toward zero to `digits` decimals.
pub fn truncated_decimal(q: &BigRational, digits: u32) -> String {
    let s = pow10(digits);
    let scaled = (q.abs() * BigRational::from_integer(s.clone())).floor().to_integer();
    let (int_part, frac) = scaled.div_rem(&s);
    let sign = if q.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

/// Whether `q` agrees with a printed value to the printed precision; a
/// repeated digit `(d)` counts once and a trailing `...` marks truncation.
pub fn matches_printed(q: &BigRational, printed: &str) -> bool {
    let digits: String = printed
        .trim_end_matches("...")
        .chars()
        .filter(|c| *c != '(' && *c != ')')
        .collect();
    let decimals = digits.split_once('.').map_or(0, |(_, f)| f.len()) as u32;
    truncated_decimal(q, decimals) == digits
}

// ---------------------------------------------------------------------------
// rational intervals

/// A closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow10(p: u32) -> BigInt {
    BigInt::from(10).pow(p)
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        Interval {
            lo: p.iter().min().expect("four").clone(),
            hi: p.iter().max().expect("four").clone(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Interval {
        self.mul(&Interval::point(q.clone()))
    }

    /// `1/x` for an interval not containing zero.
    pub fn recip(&self) -> Result<Interval> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// Widens to the grid `10^-p`.
    pub fn round_out(&self, p: u32) -> Interval {
        let s = BigRational::from_integer(pow10(p));
        Interval {
            lo: (&self.lo * &s).floor() / &s,
            hi: (&self.hi * &s).ceil() / &s,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

/// `q` rounded to `digits` decimals, half away from zero.
pub fn decimal_string(q: &BigRational, digits: u32) -> String {
    let s = pow10(digits);
    let scaled = (q.abs() * BigRational::from_integer(s.clone()) + rat(1, 2)).floor().to_integer();
    let (int_part, frac) = scaled.div_rem(&s);
    let sign = if q.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits as usize)
    }
}

/// `arctan(1/x)` in fixed point with scale `10^(p+10)`; each term is floored,
/// so the enclosure is widened by one unit per term plus the first omitted term.
fn arctan_recip(x: u64, p: u32) -> Interval {
    let scale = pow10(p + 10);
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut pw = &scale / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !pw.is_zero() {
        let term = &pw / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pw /= &x2;
        k += 1;
    }
    let slack = BigInt::from(2 * k + 2);
    let s = BigRational::from_integer(scale);
    Interval {
        lo: BigRational::from_integer(&sum - &slack) / &s,
        hi: BigRational::from_integer(&sum + &slack) / &s,
    }
}

/// `π` to width below `10^-p` via Machin's formula.
pub fn pi_interval(p: u32) -> Interval {
    let a = arctan_recip(5, p).scale(&int(16));
    let b = arctan_recip(239, p).scale(&int(4));
    a.sub(&b).round_out(p + 2)
}

/// `exp(x)` for rational `x`, absolute width about `10^-p` on `[0, ∞)` and
/// relative width about `10^-p` for negative `x`.
///
/// Terms `x^k/k!` are carried in fixed point twice, once floored and once
/// ceiled; once `k + 1 > 2x` the tail is at most twice the next term.
pub fn exp_rational(x: &BigRational, p: u32) -> Interval {
    if x.is_negative() {
        return exp_rational(&-x, p).recip().expect("exp is positive").round_out(p + 2);
    }
    let scale = pow10(p + 10);
    let (num, den) = (x.numer().clone(), x.denom().clone());
    let twice_x = x * int(2);
    let series = |ceil: bool| -> BigInt {
        let mut t = scale.clone();
        let mut sum = t.clone();
        let mut k = 1u64;
        loop {
            let d = &den * BigInt::from(k);
            let prod = &t * &num;
            t = if ceil { prod.div_ceil(&d) } else { prod.div_floor(&d) };
            let past_peak = BigRational::from_integer(BigInt::from(k + 1)) > twice_x;
            if past_peak && t <= BigInt::one() {
                return if ceil { sum + &t * 2 } else { sum };
            }
            sum += &t;
            k += 1;
        }
    };
    let s = BigRational::from_integer(scale.clone());
    Interval {
        lo: BigRational::from_integer(series(false)) / &s,
        hi: BigRational::from_integer(series(true) + 1) / &s,
    }
}

/// `exp` of an interval, using monotonicity.
pub fn exp_interval(x: &Interval, p: u32) -> Interval {
    Interval {
        lo: exp_rational(&x.lo, p).lo,
        hi: exp_rational(&x.hi, p).hi,
    }
}

pub fn e_interval(p: u32) -> Interval {
    exp_rational(&BigRational::one(), p)
}

// ---------------------------------------------------------------------------
// adaptive Simpson

pub const SIMPSON_TOL: f64 = 1e-12;
const SIMPSON_MAX_DEPTH: u32 = 48;

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::Quadrature(format!(
                "no convergence on [{a}, {b}]: error estimate {:e} exceeds {:e}",
                delta.abs() / 15.0,
                tol
            )));
        }
        Ok(step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature("non-finite bounds".into()));
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(&f, a, b, fa, fm, fb, whole, tol, SIMPSON_MAX_DEPTH)
}

// ---------------------------------------------------------------------------
// margins

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarginReport {
    pub name: String,
    pub statement: String,
    /// `"exact"` for closed constants, `"sampled evidence"` for explorers.
    pub evidence: &'static str,
    pub margin: f64,
    /// High-precision enclosure, rounded to `digits` decimals.
    pub margin_decimal: String,
    pub digits: u32,
    pub expected_sign: &'static str,
    /// The high-precision enclosure excludes zero with the expected sign.
    pub confirmed: bool,
    /// Sign and enclosure agree again at twice the precision.
    pub stable_under_doubling: bool,
    pub detail: Value,
}

impl MarginReport {
    pub fn passed(&self) -> bool {
        let float_sign = if self.expected_sign == "negative" {
            self.margin < 0.0
        } else {
            self.margin > 0.0
        };
        float_sign && self.confirmed && self.stable_under_doubling
    }
}

fn sign_ok(iv: &Interval, negative: bool) -> bool {
    iv.sign() == Some(if negative { Ordering::Less } else { Ordering::Greater })
}

/// Default `(a, b)` samples for the Gaussian-integral bound.
pub fn gaussian_samples() -> Vec<(f64, f64)> {
    vec![
        (0.0, 1.0),
        (-1.0, 1.0),
        (-2.0, 2.0),
        (0.5, 2.0),
        (1.0, 3.0),
        (-3.0, 0.0),
        (2.0, 4.0),
        (5.0, 6.0),
    ]
}

pub const COMPLEX_GRID: usize = 101;
pub const COMPLEX_RANGE: f64 = 3.0;

fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite sample")
}

/// Certified upper bound of `∫ₐᵇ e^{−x²} dx` by an upper Riemann sum.
fn gaussian_integral_upper(a: &BigRational, b: &BigRational, pieces: u32, p: u32) -> BigRational {
    let h = (b - a) / int(pieces as i64);
    (0..pieces)
        .map(|i| {
            let l = a + &h * int(i as i64);
            let r = &l + &h;
            let nearest = if l.is_positive() {
                l
            } else if r.is_negative() {
                r
            } else {
                BigRational::zero()
            };
            exp_rational(&-(&nearest * &nearest), p).hi * &h
        })
        .sum()
}

fn gaussian_gap_interval(a: &BigRational, b: &BigRational, p: u32) -> Interval {
    let pi = pi_interval(p);
    let ee = exp_interval(&e_interval(p), p);
    let coef = ee.mul(&pi.recip().expect("pi > 0"));
    let ea = exp_interval(&pi.scale(&-a.clone()), p);
    let eb = exp_interval(&pi.scale(&-b.clone()), p);
    let rhs = coef.mul(&ea.sub(&eb));
    let upper = gaussian_integral_upper(a, b, 64, p);
    Interval {
        lo: &rhs.lo - &upper,
        hi: rhs.hi.clone(),
    }
}

fn complex_margin_interval(x: &BigRational, p: u32) -> Interval {
    // |e^{1−z} + e^{z̄}| = e^{1−x} + e^{x}: both terms carry the phase e^{−iy}
    exp_rational(&(BigRational::one() - x), p)
        .add(&exp_rational(x, p))
        .sub(&pi_interval(p))
}

/// All margins at float precision, enclosed at `digits` and `2·digits` digits.
pub fn transcendental_margins(digits: u32) -> Result<Vec<MarginReport>> {
    use std::f64::consts::{E, PI};
    if digits == 0 || digits > 2000 {
        return Err(Error::OutOfRange {
            what: "digits",
            value: format!("{digits} (supported: 1..=2000)"),
        });
    }
    let mut out = Vec::new();
    let constants = |p: u32| (pi_interval(p + 5), e_interval(p + 5));

    let build = |name: &str,
                 statement: &str,
                 evidence: &'static str,
                 margin: f64,
                 negative: bool,
                 f: &dyn Fn(u32) -> Interval,
                 detail: Value| {
        let lo = f(digits);
        let hi = f(2 * digits);
        MarginReport {
            name: name.to_string(),
            statement: statement.to_string(),
            evidence,
            margin,
            margin_decimal: decimal_string(&lo.mid(), digits),
            digits,
            expected_sign: if negative { "negative" } else { "positive" },
            confirmed: sign_ok(&lo, negative),
            stable_under_doubling: sign_ok(&hi, negative)
                && decimal_string(&hi.mid(), digits.saturating_sub(2))
                    == decimal_string(&lo.mid(), digits.saturating_sub(2)),
            detail,
        }
    };

    out.push(build(
        "delta",
        "pi^2 - 4e < 0",
        "exact",
        PI * PI - 4.0 * E,
        true,
        &|p| {
            let (pi, e) = constants(p);
            pi.mul(&pi).sub(&e.scale(&int(4)))
        },
        json!({}),
    ));
    out.push(build(
        "area",
        "pi^3 - 4e^2 > 0",
        "exact",
        PI.powi(3) - 4.0 * E * E,
        false,
        &|p| {
            let (pi, e) = constants(p);
            pi.mul(&pi).mul(&pi).sub(&e.mul(&e).scale(&int(4)))
        },
        json!({}),
    ));
    out.push(build(
        "quadratic",
        "min over real x of x^2 - pi x + e, which is e - pi^2/4 > 0",
        "exact",
        E - PI * PI / 4.0,
        false,
        &|p| {
            let (pi, e) = constants(p);
            e.sub(&pi.mul(&pi).scale(&rat(1, 4)))
        },
        json!({}),
    ));

    // complex modulus over the grid
    let step = 2.0 * COMPLEX_RANGE / (COMPLEX_GRID - 1) as f64;
    let mut best = (f64::INFINITY, 0usize, 0usize);
    for i in 0..COMPLEX_GRID {
        for j in 0..COMPLEX_GRID {
            let z = num_complex::Complex64::new(-COMPLEX_RANGE + step * i as f64, -COMPLEX_RANGE + step * j as f64);
            let m = ((1.0 - z).exp() + z.conj().exp()).norm() - PI;
            if m < best.0 {
                best = (m, i, j);
            }
        }
    }
    let grid_x = rat(-300 + 6 * best.1 as i64, 100);
    let grid_y = rat(-300 + 6 * best.2 as i64, 100);
    out.push(build(
        "complex_modulus",
        "|e^(1-z) + e^(conj z)| - pi > 0 on the grid",
        "sampled evidence",
        best.0,
        false,
        &|p| complex_margin_interval(&grid_x, p),
        json!({
            "grid": COMPLEX_GRID,
            "range": [-COMPLEX_RANGE, COMPLEX_RANGE],
            "argmin": [rational_to_f64(&grid_x), rational_to_f64(&grid_y)],
        }),
    ));

    // Gaussian-integral bound over samples
    let mut samples = Vec::new();
    for (a, b) in gaussian_samples() {
        let integral = adaptive_simpson(|x| (-x * x).exp(), a, b, SIMPSON_TOL)?;
        let bound = E.powf(E) / PI * ((-PI * a).exp() - (-PI * b).exp());
        samples.push((a, b, integral, bound, bound - integral));
    }
    let (ma, mb, _, _, gap) = samples
        .iter()
        .copied()
        .min_by(|x, y| x.4.total_cmp(&y.4))
        .expect("samples");
    let (ra, rb) = (to_rational(ma), to_rational(mb));
    let all_certified = samples
        .iter()
        .all(|&(a, b, ..)| sign_ok(&gaussian_gap_interval(&to_rational(a), &to_rational(b), digits), false));
    let mut gauss = build(
        "gaussian_bound",
        "(e^e/pi)(e^(-pi a) - e^(-pi b)) - integral_a^b e^(-x^2) dx > 0 on samples",
        "sampled evidence",
        gap,
        false,
        &|p| gaussian_gap_interval(&ra, &rb, p),
        json!({
            "tolerance": SIMPSON_TOL,
            "argmin": [ma, mb],
            "samples": samples
                .iter()
                .map(|s| json!({"a": s.0, "b": s.1, "integral": s.2, "bound": s.3, "gap": s.4}))
                .collect::<Vec<_>>(),
        }),
    );
    // the certified interval is a lower bound only; report the float gap
    gauss.margin_decimal = format!("{gap:e}");
    gauss.stable_under_doubling = sign_ok(&gaussian_gap_interval(&ra, &rb, 2 * digits), false);
    gauss.confirmed &= all_certified;
    out.push(gauss);
    Ok(out)
}
