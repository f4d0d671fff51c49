//! Reflections of ℝ³ through the origin, the coordinate axes and the coordinate planes.

use serde::Serialize;

/// A diagonal sign map `(a, b, c) ↦ (s₀a, s₁b, s₂c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignMap(pub [i8; 3]);

impl SignMap {
    pub fn compose(self, other: SignMap) -> SignMap {
        SignMap([
            self.0[0] * other.0[0],
            self.0[1] * other.0[1],
            self.0[2] * other.0[2],
        ])
    }

    pub fn apply(self, p: [f64; 3]) -> [f64; 3] {
        [
            self.0[0] as f64 * p[0],
            self.0[1] as f64 * p[1],
            self.0[2] as f64 * p[2],
        ]
    }
}

pub const NAMED: [(&str, SignMap); 8] = [
    ("I", SignMap([1, 1, 1])),
    ("S_OX", SignMap([1, -1, -1])),
    ("S_OY", SignMap([-1, 1, -1])),
    ("S_OZ", SignMap([-1, -1, 1])),
    ("S_XOY", SignMap([1, 1, -1])),
    ("S_XOZ", SignMap([1, -1, 1])),
    ("S_YOZ", SignMap([-1, 1, 1])),
    ("S_O", SignMap([-1, -1, -1])),
];

pub fn lookup(name: &str) -> SignMap {
    NAMED.iter().find(|(n, _)| *n == name).expect("known symmetry").1
}

fn name_of(m: SignMap) -> Option<&'static str> {
    NAMED.iter().find(|(_, s)| *s == m).map(|(n, _)| *n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetryReport {
    /// `table[i][j]` names `NAMED[i] ∘ NAMED[j]`.
    pub table: Vec<Vec<String>>,
    pub closed: bool,
    pub has_inverses: bool,
    pub klein_closed: bool,
    pub klein_is_v4: bool,
    /// `S_XOY∘S_XOZ∘S_YOZ` and the reverse order, both equal to `S_O`.
    pub planes_instance: bool,
    /// `S_OX∘S_OY∘S_OZ` and the reverse order, both equal to `I`.
    pub axes_instance: bool,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.closed
            && self.has_inverses
            && self.klein_closed
            && self.klein_is_v4
            && self.planes_instance
            && self.axes_instance
    }
}

pub fn symmetry_checks() -> SymmetryReport {
    let mut closed = true;
    let table: Vec<Vec<String>> = NAMED
        .iter()
        .map(|(_, a)| {
            NAMED
                .iter()
                .map(|(_, b)| match name_of(a.compose(*b)) {
                    Some(n) => n.to_string(),
                    None => {
                        closed = false;
                        "?".to_string()
                    }
                })
                .collect()
        })
        .collect();
    let id = lookup("I");
    let has_inverses = NAMED
        .iter()
        .all(|(_, a)| NAMED.iter().any(|(_, b)| a.compose(*b) == id));

    let klein: Vec<SignMap> = ["I", "S_OX", "S_OY", "S_OZ"].iter().map(|n| lookup(n)).collect();
    let klein_closed = klein
        .iter()
        .all(|a| klein.iter().all(|b| klein.contains(&a.compose(*b))));
    // V4: every element is an involution and the group is abelian of order 4
    let klein_is_v4 = klein.len() == 4
        && klein.iter().all(|a| a.compose(*a) == id)
        && klein
            .iter()
            .all(|a| klein.iter().all(|b| a.compose(*b) == b.compose(*a)));

    let chain = |names: [&str; 3]| {
        let [a, b, c] = names.map(lookup);
        a.compose(b).compose(c)
    };
    let s_o = lookup("S_O");
    let planes_instance = chain(["S_XOY", "S_XOZ", "S_YOZ"]) == s_o
        && chain(["S_YOZ", "S_XOZ", "S_XOY"]) == s_o;
    let axes_instance =
        chain(["S_OX", "S_OY", "S_OZ"]) == id && chain(["S_OZ", "S_OY", "S_OX"]) == id;

    SymmetryReport {
        table,
        closed,
        has_inverses,
        klein_closed,
        klein_is_v4,
        planes_instance,
        axes_instance,
    }
}
