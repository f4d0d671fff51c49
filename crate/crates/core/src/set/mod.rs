//! Set-theoretic Yang-Baxter maps.
//!
//! Every checker takes an explicit [`Form`](crate::Form). The monomial exponent
//! system and the closed-form families are exact solutions of the braid form;
//! [`DEFAULT_FORM`] is therefore braid.

mod enumerate;
mod exponent;
mod family;
mod map;
mod sort;
mod symmetry;

pub use enumerate::{canonical_form, enumerate_solutions, permutations, Enumeration, EnumerationSummary, MAX_ENUM_SIZE};
pub use exponent::{solve_exponent_system, ExponentQuadruple};
pub use family::{
    check_family, exp_morphism_check, gaussian_triples, positive_rational_triples, ClosedFormFamily, ExpMorphismReport, MorphismSample,
};
pub use map::{check_triples, eval_chains, set_yb_check, Counterexample, FiniteMap, ReportValue, SetYBReport, Verdict};
pub use sort::{yb_sort, SortMode};
pub use symmetry::{symmetry_checks, SignMap, SymmetryReport, NAMED as SYMMETRIES};

pub const DEFAULT_FORM: crate::Form = crate::Form::Braid;
