use serde::Serialize;

/// Exponents of the monomial map `(x, y) ↦ (x^m y^n, x^p y^q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentQuadruple {
    pub m: i64,
    pub n: i64,
    pub p: i64,
    pub q: i64,
}

impl ExponentQuadruple {
    pub fn new(m: i64, n: i64, p: i64, q: i64) -> Self {
        ExponentQuadruple { m, n, p, q }
    }

    /// The five polynomial conditions equivalent to the braid relation for
    /// the monomial map on positive reals:
    /// `mnq = 0, mpq = 0, mq² = m²q, m² + mnp = m, q² + npq = q`.
    pub fn satisfies_system(&self) -> bool {
        let ExponentQuadruple { m, n, p, q } = *self;
        m * n * q == 0
            && m * p * q == 0
            && m * q * q == m * m * q
            && m * m + m * n * p == m
            && q * q + n * p * q == q
    }

    /// The two-parameter power family `(y^α, x^β y^{1−αβ})`.
    pub fn power_family(alpha: i64, beta: i64) -> Self {
        ExponentQuadruple::new(0, alpha, beta, 1 - alpha * beta)
    }
}

/// All integer solutions with every coordinate in `[−bound, bound]`, sorted.
///
/// Works by cases on `m` and `q` instead of scanning all four coordinates:
/// * `m ≠ 0, q ≠ 0` forces `n = p = 0` and `m = q = 1`;
/// * `m = 0, q ≠ 0` leaves `q + np = 1`;
/// * `m ≠ 0, q = 0` leaves `m + np = 1`;
/// * `m = q = 0` leaves `n, p` free.
pub fn solve_exponent_system(bound: u32) -> Vec<ExponentQuadruple> {
    let b = bound as i64;
    let range = || -b..=b;
    let mut out = Vec::new();
    let push_np = |out: &mut Vec<ExponentQuadruple>, m: i64, q: i64, target: Option<i64>| {
        for n in range() {
            for p in range() {
                if target.is_none_or(|t| n * p == t) {
                    out.push(ExponentQuadruple::new(m, n, p, q));
                }
            }
        }
    };
    for m in range() {
        for q in range() {
            match (m != 0, q != 0) {
                (true, true) => {
                    if m == 1 && q == 1 {
                        out.push(ExponentQuadruple::new(1, 0, 0, 1));
                    }
                }
                (false, true) => push_np(&mut out, 0, q, Some(1 - q)),
                (true, false) => push_np(&mut out, m, 0, Some(1 - m)),
                (false, false) => push_np(&mut out, 0, 0, None),
            }
        }
    }
    out.sort();
    debug_assert!(out.iter().all(ExponentQuadruple::satisfies_system));
    out
}
