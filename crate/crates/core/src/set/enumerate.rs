//! Exhaustive search for set-theoretic solutions on `{0..n−1}`, `n ≤ 3`.
//!
//! The table is filled cell by cell in index order. After each assignment every
//! triple whose two composition chains only touch assigned cells is evaluated;
//! a disagreement prunes the whole subtree. The first two cells are fanned out
//! over the rayon pool, and results are sorted, so output does not depend on
//! scheduling.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::map::FiniteMap;
use crate::error::{Error, Result};
use crate::Form;

const UNSET: u8 = u8::MAX;

pub const MAX_ENUM_SIZE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub n: usize,
    pub form: Form,
    pub count: usize,
    pub count_up_to_iso: usize,
    pub nodes: u64,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub up_to_iso: bool,
    /// All solutions, or one canonical representative per orbit when `up_to_iso`.
    pub maps: Vec<FiniteMap>,
    pub summary: EnumerationSummary,
}

struct Search {
    n: usize,
    form: Form,
}

impl Search {
    #[inline]
    fn get(&self, t: &[u8], i: u8, j: u8) -> Option<(u8, u8)> {
        let n = self.n as u8;
        match t[(i * n + j) as usize] {
            UNSET => None,
            v => Some((v / n, v % n)),
        }
    }

    fn sides(&self, t: &[u8], x: u8, y: u8, z: u8) -> (Option<[u8; 3]>, Option<[u8; 3]>) {
        let left = || -> Option<[u8; 3]> {
            match self.form {
                Form::Braid => {
                    let (a, b) = self.get(t, x, y)?;
                    let (c, d) = self.get(t, b, z)?;
                    let (e, f) = self.get(t, a, c)?;
                    Some([e, f, d])
                }
                Form::Qybe => {
                    let (a, b) = self.get(t, y, z)?;
                    let (c, d) = self.get(t, x, b)?;
                    let (e, f) = self.get(t, c, a)?;
                    Some([e, f, d])
                }
            }
        };
        let right = || -> Option<[u8; 3]> {
            match self.form {
                Form::Braid => {
                    let (a, b) = self.get(t, y, z)?;
                    let (c, d) = self.get(t, x, a)?;
                    let (e, f) = self.get(t, d, b)?;
                    Some([c, e, f])
                }
                Form::Qybe => {
                    let (a, b) = self.get(t, x, y)?;
                    let (c, d) = self.get(t, a, z)?;
                    let (e, f) = self.get(t, b, d)?;
                    Some([c, e, f])
                }
            }
        };
        (left(), right())
    }

    /// No fully determined triple disagrees.
    fn consistent(&self, t: &[u8]) -> bool {
        let n = self.n as u8;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if let (Some(l), Some(r)) = self.sides(t, x, y, z) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&self, t: &mut Vec<u8>, cell: usize, out: &mut Vec<Vec<u8>>, nodes: &mut u64) {
        *nodes += 1;
        if cell == t.len() {
            out.push(t.clone());
            return;
        }
        for v in 0..t.len() as u8 {
            t[cell] = v;
            if self.consistent(t) {
                self.dfs(t, cell + 1, out, nodes);
            }
        }
        t[cell] = UNSET;
    }
}

fn decode(n: usize, t: &[u8]) -> FiniteMap {
    let table = t
        .iter()
        .map(|&v| ((v as usize) / n, (v as usize) % n))
        .collect();
    FiniteMap::new(n, table).expect("search only emits in-range tables")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically least table among all relabelings `(σ×σ)∘S∘(σ×σ)⁻¹`.
pub fn canonical_form(s: &FiniteMap) -> FiniteMap {
    permutations(s.n())
        .iter()
        .map(|sigma| s.conjugate(sigma))
        .min()
        .expect("at least the identity permutation")
}

pub fn enumerate_solutions(n: usize, form: Form, up_to_iso: bool) -> Result<Enumeration> {
    if n == 0 || n > MAX_ENUM_SIZE {
        return Err(Error::OutOfRange {
            what: "enumeration size",
            value: format!("{n} (supported: 1..={MAX_ENUM_SIZE})"),
        });
    }
    let start = Instant::now();
    let search = Search { n, form };
    let cells = n * n;
    let fan = cells.min(2);

    // consistent prefixes of the first `fan` cells
    let mut prefixes: Vec<Vec<u8>> = vec![vec![UNSET; cells]];
    for cell in 0..fan {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..cells as u8).map(move |v| {
                    let mut q = p.clone();
                    q[cell] = v;
                    q
                })
            })
            .filter(|p| search.consistent(p))
            .collect();
    }

    let parts: Vec<(Vec<Vec<u8>>, u64)> = prefixes
        .into_par_iter()
        .map(|mut p| {
            let mut out = Vec::new();
            let mut nodes = 0;
            search.dfs(&mut p, fan, &mut out, &mut nodes);
            (out, nodes)
        })
        .collect();
    let nodes = parts.iter().map(|(_, k)| k).sum();
    let mut all: Vec<FiniteMap> = parts
        .into_iter()
        .flat_map(|(sols, _)| sols)
        .map(|t| decode(n, &t))
        .collect();
    all.sort();

    let canon: BTreeSet<FiniteMap> = all.iter().map(canonical_form).collect();
    let summary = EnumerationSummary {
        n,
        form,
        count: all.len(),
        count_up_to_iso: canon.len(),
        nodes,
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    let maps = if up_to_iso {
        canon.into_iter().collect()
    } else {
        all
    };
    Ok(Enumeration {
        up_to_iso,
        maps,
        summary,
    })
}
