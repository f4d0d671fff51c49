//! Verification, construction and search for Yang-Baxter operators.
//!
//! * [`scalar`], [`matrix`]: exact/float numeric tower, Kronecker products,
//!   leg lifts to `V⊗V⊗V`, the matrix exponential.
//! * [`linear`]: operators built from associative algebras and Lie
//!   superalgebras, braid/QYBE residuals.
//! * [`set`]: set-theoretic solutions, closed-form families, the monomial
//!   exponent system, an exhaustive enumerator.
//! * [`colored`]: the `cos x·I + sin x·J` family and the two-color system.
//! * [`ujla`]: bilinear products classified as associative / Lie / Jordan / UJLA.
//! * [`transc`]: partial-sum bounds and margins involving `e` and `π`.
//! * [`audit`]: every claim check in one table against a checked-in manifest.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub mod audit;
pub mod colored;
pub mod error;
pub mod linear;
pub mod matrix;
pub mod scalar;
pub mod set;
pub mod transc;
pub mod ujla;

pub use error::{Error, Result};
pub use matrix::{mat_exp, Legs, Matrix, Norm};
pub use scalar::{Scalar, ScalarKind};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Which form of the Yang-Baxter equation a check evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `R¹²R²³R¹² = R²³R¹²R²³`
    Braid,
    /// `R¹²R¹³R²³ = R²³R¹³R¹²`
    Qybe,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::Braid => "braid",
            Form::Qybe => "qybe",
        }
    }

    /// Human-readable statement of the equation, used in report headers.
    pub fn convention(self) -> &'static str {
        match self {
            Form::Braid => "braid: R12 R23 R12 = R23 R12 R23 (compositions applied right to left)",
            Form::Qybe => "qybe: R12 R13 R23 = R23 R13 R12 (compositions applied right to left)",
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Form {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "braid" => Ok(Form::Braid),
            "qybe" => Ok(Form::Qybe),
            other => Err(Error::parse("form", format!("expected braid|qybe, got '{other}'"))),
        }
    }
}
