use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortMode {
    MinMax,
    GcdLcm,
}

impl std::str::FromStr for SortMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minmax" => Ok(SortMode::MinMax),
            "gcdlcm" => Ok(SortMode::GcdLcm),
            other => Err(Error::parse("mode", format!("expected minmax|gcdlcm, got '{other}'"))),
        }
    }
}

fn step(mode: SortMode, a: i64, b: i64) -> Result<(i64, i64)> {
    match mode {
        SortMode::MinMax => Ok((a.min(b), a.max(b))),
        SortMode::GcdLcm => {
            let g = a.gcd(&b);
            let l = (a / g).checked_mul(b).ok_or_else(|| Error::OutOfRange {
                what: "lcm",
                value: format!("lcm({a}, {b}) overflows i64"),
            })?;
            Ok((g, l))
        }
    }
}

/// Applies the chosen solution to adjacent pairs until nothing changes.
/// `minmax` sorts; `gcdlcm` ends with the gcd first and the lcm last.
pub fn yb_sort(values: &[i64], mode: SortMode) -> Result<Vec<i64>> {
    if mode == SortMode::GcdLcm {
        if let Some(v) = values.iter().find(|&&v| v <= 0) {
            return Err(Error::Domain(format!("gcdlcm mode needs positive integers, got {v}")));
        }
    }
    let mut s = values.to_vec();
    loop {
        let mut changed = false;
        for i in 0..s.len().saturating_sub(1) {
            let (a, b) = step(mode, s[i], s[i + 1])?;
            if (a, b) != (s[i], s[i + 1]) {
                s[i] = a;
                s[i + 1] = b;
                changed = true;
            }
        }
        if !changed {
            return Ok(s);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(yb_sort(&[3, 1, 2], SortMode::MinMax).unwrap(), vec![1, 2, 3]);
        assert_eq!(yb_sort(&[], SortMode::MinMax).unwrap(), Vec::<i64>::new());
        let g = yb_sort(&[4, 6, 10], SortMode::GcdLcm).unwrap();
        assert_eq!(g.first(), Some(&2));
        assert_eq!(g.last(), Some(&60));
    }

    #[test]
    fn gcdlcm_rejects_nonpositive() {
        assert!(matches!(yb_sort(&[4, 0], SortMode::GcdLcm), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn minmax_sorts(v in proptest::collection::vec(-50i64..50, 0..12)) {
            let out = yb_sort(&v, SortMode::MinMax).unwrap();
            let mut expected = v.clone();
            expected.sort();
            prop_assert_eq!(out, expected);
        }

        #[test]
        fn gcdlcm_ends(v in proptest::collection::vec(1i64..60, 1..7)) {
            let out = yb_sort(&v, SortMode::GcdLcm).unwrap();
            let g = v.iter().fold(0i64, |a, &b| a.gcd(&b));
            let l = v.iter().fold(1i64, |a, &b| a.lcm(&b));
            prop_assert_eq!(out[0], g);
            prop_assert_eq!(*out.last().unwrap(), l);
            // fixpoint is a divisibility chain
            prop_assert!(out.windows(2).all(|w| w[1] % w[0] == 0));
        }

        #[test]
        fn each_move_keeps_pair_invariants(a in 1i64..500, b in 1i64..500) {
            let (g, l) = step(SortMode::GcdLcm, a, b).unwrap();
            prop_assert_eq!(g * l, a * b);
            prop_assert_eq!(step(SortMode::GcdLcm, g, l).unwrap(), (g, l));
        }
    }
}
