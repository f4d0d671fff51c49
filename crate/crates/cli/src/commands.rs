use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use ybx_core::audit::{audit_all, thm35_check};
use ybx_core::colored::{
    all_zero, colored_residual, colored_samples, euler_check, ode_residual, yb_system_residuals, ColorFunctionTriple,
    JSpec,
};
use ybx_core::linear::{build_r_assoc, build_r_lie, yb_param_case, yb_residual, FiniteAlgebra, LieSuperAlgebra};
use ybx_core::scalar::{format_rational, parse_rational};
use ybx_core::set::{
    check_family, enumerate_solutions, exp_morphism_check, gaussian_triples, positive_rational_triples,
    set_yb_check, solve_exponent_system, symmetry_checks, yb_sort, ClosedFormFamily, ExponentQuadruple, FiniteMap,
    SortMode,
};
use ybx_core::transc::{thm41_check, transcendental_margins};
use ybx_core::ujla::{classify, endo_structure, from_functional, BilinearStructure, FunctionalKind, FunctionalSpec};
use ybx_core::{Error, Form, Matrix, Scalar, ScalarKind};

const COLORED_CONVENTION: &str = "colored braid: R12(x) R23(x+y) R12(y) = R23(y) R12(x+y) R23(x)";
const UJLA_CONVENTION: &str = "bilinear product e_i e_j = sum_k c[i][j][k] e_k over the rationals";
const SYSTEM_CONVENTION: &str = "five-equation color system; residuals are left-hand sides at (u, v, w)";
const TRANSC_CONVENTION: &str = "exact rationals and directed-rounding intervals";

#[derive(Parser, Debug)]
#[command(name = "ybx", version, about = "Yang-Baxter verification toolkit")]
pub struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a candidate solution.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Construct an operator or structure and verify it.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Set-theoretic solutions.
    #[command(subcommand)]
    Set(SetCmd),
    /// Inequalities and numeric margins.
    #[command(subcommand)]
    Transc(TranscCmd),
    /// Run the claim manifest, or a single claim.
    Audit(AuditArgs),
}

#[derive(Subcommand, Debug)]
pub enum CheckCmd {
    /// Residual of a matrix on V⊗V.
    Linear {
        #[arg(long)]
        matrix: PathBuf,
        /// Dimension of V; inferred from the matrix size when omitted.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value = "braid")]
        form: Form,
        /// Residual tolerance for float matrices.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Exhaustive check of a finite set map.
    Set {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value = "braid")]
        form: Form,
    },
    /// Euler identity, colored equation and ODE for R(x) = cos x I + sin x J.
    Colored {
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Lattice points per axis on [-pi, pi].
        #[arg(long, default_value_t = 5)]
        grid: usize,
        /// Extra low-discrepancy samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Classify a bilinear structure.
    Ujla {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum, default_value = "ujla")]
        expect: Expect,
    },
    /// Evaluate the five-equation color system on a color grid.
    System {
        #[arg(long)]
        functions: PathBuf,
        /// Comma-separated rationals; defaults to the table colors or 0..4.
        #[arg(long, value_delimiter = ',')]
        colors: Vec<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Expect {
    Ujla,
    Lie,
    Jordan,
    Assoc,
}

impl Expect {
    fn flag(self) -> &'static str {
        match self {
            Expect::Ujla => "is_ujla",
            Expect::Lie => "is_lie",
            Expect::Jordan => "is_jordan",
            Expect::Assoc => "is_associative",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum NamedAssoc {
    Ground,
    Dual,
    Split,
    M2,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum NamedLie {
    Abelian,
    Heisenberg,
    Gl11,
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    /// alpha ab⊗1 + beta 1⊗ab − gamma a⊗b on an associative algebra.
    Assoc {
        #[arg(long, conflicts_with = "named", required_unless_present = "named")]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum)]
        named: Option<NamedAssoc>,
        #[arg(long, default_value = "rational")]
        scalar: ScalarKind,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "braid")]
        form: Form,
    },
    /// alpha [x,y]⊗z + (−1)^{|x||y|} y⊗x on a Lie superalgebra.
    Lie {
        #[arg(long, conflicts_with = "named", required_unless_present = "named")]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum)]
        named: Option<NamedLie>,
        #[arg(long, default_value = "rational")]
        scalar: ScalarKind,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "braid")]
        form: Form,
    },
    /// Product built from a linear functional.
    Functional {
        #[arg(long)]
        spec: PathBuf,
        /// assoc|lie|jordan|ujla
        #[arg(long)]
        kind: FunctionalKind,
    },
    /// p f∘g − q g∘f on End(V).
    Endo {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    Power,
    Monomial,
    Linear,
    QuotientSquare,
    Logic,
    Minmax,
    Gcdlcm,
}

#[derive(Subcommand, Debug)]
pub enum SetCmd {
    /// All solutions on {0..n-1}.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, default_value = "braid")]
        form: Form,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Integer solutions of the exponent system with entries in [-B, B].
    Exponents {
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Exact check of a closed-form family on deterministic triples.
    Family {
        #[arg(long, value_enum)]
        kind: FamilyKind,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        beta: String,
        /// m,n,p,q for the monomial family.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        exponents: Vec<i64>,
        #[arg(long, default_value = "braid")]
        form: Form,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Sort by repeated adjacent application of a solution.
    Sort {
        #[arg(long)]
        mode: SortMode,
        #[arg(allow_negative_numbers = true, required = true)]
        values: Vec<i64>,
    },
    /// Reflection symmetries of R^3.
    Symmetry,
    /// exp×exp as a morphism from the linear to the power family.
    ExpMorphism {
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = 1)]
        beta: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum TranscCmd {
    /// Exact verdicts for sum 1/k^2 < (2/3)((n+1)/n)^n, n = 1..N.
    Thm41 {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
        /// Number of leading rows reported in full.
        #[arg(long, default_value_t = 10)]
        rows: usize,
    },
    /// Certified signs of the transcendental margins.
    Margins {
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[command(subcommand)]
    pub claim: Option<AuditCmd>,
    /// Restrict to one group: linear|set|colored|transc|ujla|system.
    #[arg(long)]
    pub only: Option<String>,
    /// Also write the payload to this file.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum AuditCmd {
    /// Evaluate (x/y, x^2) exactly on one triple, in both forms.
    Thm35 {
        #[arg(long, value_delimiter = ',', default_value = "2,3,5", allow_hyphen_values = true)]
        triple: Vec<String>,
    },
}

/// Result of a command that ran to completion.
pub struct Outcome {
    pub convention: Value,
    pub payload: Value,
    pub passed: bool,
}

impl Outcome {
    fn new(convention: impl Into<Value>, payload: Value, passed: bool) -> Self {
        Outcome {
            convention: convention.into(),
            payload,
            passed,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    Io { path: PathBuf, message: String },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io { path, message } => write!(f, "{}: {message}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run = Result<Outcome, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::Io {
        path: path.to_path_buf(),
        message: format!("malformed JSON: {e}"),
    })
}

fn rational(field: &str, text: &str) -> Result<BigRational, Failure> {
    parse_rational(text).map_err(|e| Failure::Core(e.in_field(field)))
}

fn scalar(field: &str, kind: ScalarKind, text: &str) -> Result<Scalar, Failure> {
    Scalar::parse(kind, text).map_err(|e| Failure::Core(e.in_field(field)))
}

pub fn run(command: &Command) -> Run {
    match command {
        Command::Check(c) => check(c),
        Command::Build(c) => build(c),
        Command::Set(c) => set(c),
        Command::Transc(c) => transc(c),
        Command::Audit(a) => audit(a),
    }
}

fn check(cmd: &CheckCmd) -> Run {
    match cmd {
        CheckCmd::Linear { matrix, d, form, tol } => {
            let m = Matrix::from_json(&read_json(matrix)?).map_err(|e| e.in_field("matrix"))?;
            let d = match d {
                Some(d) => *d,
                None => {
                    let root = (m.dim() as f64).sqrt().round() as usize;
                    if root * root != m.dim() {
                        return Err(Failure::Core(Error::parse(
                            "d",
                            format!("matrix size {} is not a square; pass --d", m.dim()),
                        )));
                    }
                    root
                }
            };
            let report = yb_residual(&m, d, *form)?;
            let passed = report.passes(*tol);
            let payload = json!({"d": d, "scalar": m.kind(), "tolerance": tol, "report": report.to_json()});
            Ok(Outcome::new(form.convention(), payload, passed))
        }
        CheckCmd::Set { map, form } => {
            let s = FiniteMap::from_json(&read_json(map)?).map_err(|e| e.in_field("map"))?;
            let report = set_yb_check(&s, *form);
            let payload = json!({"n": s.n(), "report": report.to_json()});
            Ok(Outcome::new(form.convention(), payload, report.passed()))
        }
        CheckCmd::Colored {
            alpha,
            grid,
            samples,
            tol,
        } => {
            let spec = JSpec::new(*alpha).map_err(|e| e.in_field("alpha"))?;
            let euler = euler_check(&spec)?;
            let pts = colored_samples(*grid, *samples);
            let mut worst = 0.0f64;
            let mut worst_at = None;
            for &(x, y) in &pts {
                let r = colored_residual(&spec, x, y)?.value();
                if r > worst || worst_at.is_none() {
                    worst = worst.max(r);
                    worst_at = Some((x, y));
                }
            }
            let x0 = 0.7;
            let ode: Vec<Value> = [1e-2, 5e-3, 2.5e-3]
                .iter()
                .map(|&h| ode_residual(&spec, x0, h).map(|n| json!({"h": h, "residual": n.value()})))
                .collect::<Result<_, _>>()?;
            let passed = euler.within(*tol) && worst <= *tol;
            let payload = json!({
                "alpha": alpha,
                "euler_residual": euler.value(),
                "samples": pts.len(),
                "max_colored_residual": worst,
                "worst_sample": worst_at.map(|(x, y)| [x, y]),
                "ode": {"x": x0, "central_difference": ode},
                "tolerance": tol,
            });
            Ok(Outcome::new(COLORED_CONVENTION, payload, passed))
        }
        CheckCmd::Ujla { structure, expect } => {
            let b = BilinearStructure::from_json(&read_json(structure)?).map_err(|e| e.in_field("structure"))?;
            let report = classify(&b);
            let passed = report.flag(expect.flag()).unwrap_or(false);
            let payload = json!({"expect": expect.flag(), "classification": report.to_json()});
            Ok(Outcome::new(UJLA_CONVENTION, payload, passed))
        }
        CheckCmd::System { functions, colors } => {
            let fns = ColorFunctionTriple::from_json(&read_json(functions)?).map_err(|e| e.in_field("functions"))?;
            let colors: Vec<BigRational> = if !colors.is_empty() {
                colors
                    .iter()
                    .enumerate()
                    .map(|(i, c)| rational(&format!("colors[{i}]"), c.trim()))
                    .collect::<Result<_, _>>()?
            } else if let ColorFunctionTriple::Table(t) = &fns {
                t.colors().to_vec()
            } else {
                (0..5).map(|i| BigRational::from_integer(i.into())).collect()
            };
            let mut evaluated = 0usize;
            let mut nonzero = Vec::new();
            for u in &colors {
                for v in &colors {
                    for w in &colors {
                        let res = yb_system_residuals(&fns, u, v, w)?;
                        evaluated += 1;
                        if !all_zero(&res) {
                            nonzero.push(json!({
                                "colors": [format_rational(u), format_rational(v), format_rational(w)],
                                "residuals": res.iter().map(format_rational).collect::<Vec<_>>(),
                            }));
                        }
                    }
                }
            }
            let passed = nonzero.is_empty();
            let total_nonzero = nonzero.len();
            nonzero.truncate(10);
            let payload = json!({
                "functions": fns.to_json(),
                "colors": colors.iter().map(format_rational).collect::<Vec<_>>(),
                "evaluated": evaluated,
                "nonzero_count": total_nonzero,
                "nonzero": nonzero,
            });
            Ok(Outcome::new(SYSTEM_CONVENTION, payload, passed))
        }
    }
}

fn build(cmd: &BuildCmd) -> Run {
    match cmd {
        BuildCmd::Assoc {
            algebra,
            named,
            scalar: kind,
            alpha,
            beta,
            gamma,
            form,
        } => {
            let a = match (algebra, named) {
                (Some(path), _) => FiniteAlgebra::from_json(&read_json(path)?).map_err(|e| e.in_field("algebra"))?,
                (None, Some(NamedAssoc::Ground)) => FiniteAlgebra::ground_field(*kind)?,
                (None, Some(NamedAssoc::Dual)) => FiniteAlgebra::dual_numbers(*kind)?,
                (None, Some(NamedAssoc::Split)) => FiniteAlgebra::split_pair(*kind)?,
                (None, Some(NamedAssoc::M2)) => FiniteAlgebra::matrix_algebra(*kind, 2)?,
                (None, None) => unreachable!("clap requires --algebra or --named"),
            };
            let k = a.kind();
            let (al, be, ga) = (scalar("alpha", k, alpha)?, scalar("beta", k, beta)?, scalar("gamma", k, gamma)?);
            let r = build_r_assoc(&a, &al, &be, &ga)?;
            let report = yb_residual(&r, a.dim(), *form)?;
            let passed = report.passes(1e-9);
            let payload = json!({
                "algebra": a.to_json(),
                "parameters": [al.to_json(), be.to_json(), ga.to_json()],
                "case": yb_param_case(&al, &be, &ga),
                "matrix": r.to_json(),
                "report": report.to_json(),
            });
            Ok(Outcome::new(form.convention(), payload, passed))
        }
        BuildCmd::Lie {
            algebra,
            named,
            scalar: kind,
            alpha,
            form,
        } => {
            let l = match (algebra, named) {
                (Some(path), _) => LieSuperAlgebra::from_json(&read_json(path)?).map_err(|e| e.in_field("algebra"))?,
                (None, Some(NamedLie::Abelian)) => LieSuperAlgebra::abelian(*kind, 2)?,
                (None, Some(NamedLie::Heisenberg)) => LieSuperAlgebra::heisenberg(*kind, 2)?,
                (None, Some(NamedLie::Gl11)) => LieSuperAlgebra::gl11(*kind)?,
                (None, None) => unreachable!("clap requires --algebra or --named"),
            };
            let al = scalar("alpha", l.kind(), alpha)?;
            let r = build_r_lie(&l, &al)?;
            let report = yb_residual(&r, l.dim(), *form)?;
            let passed = report.passes(1e-9);
            let payload = json!({
                "algebra": l.to_json(),
                "alpha": al.to_json(),
                "matrix": r.to_json(),
                "report": report.to_json(),
            });
            Ok(Outcome::new(form.convention(), payload, passed))
        }
        BuildCmd::Functional { spec, kind } => {
            let s = FunctionalSpec::from_json(&read_json(spec)?).map_err(|e| e.in_field("spec"))?;
            let (b, unit) = from_functional(&s, *kind)?;
            let report = classify(&b);
            let flag = match kind {
                FunctionalKind::Assoc => "is_associative",
                FunctionalKind::Lie => "is_lie",
                FunctionalKind::Jordan => "is_jordan",
                FunctionalKind::Ujla => "is_ujla",
            };
            let passed = report.flag(flag).unwrap_or(false);
            let payload = json!({
                "kind": kind,
                "spec": s.to_json(),
                "structure": b.to_json(),
                "unit": unit.map(|u| u.iter().map(format_rational).collect::<Vec<_>>()),
                "claimed": flag,
                "classification": report.to_json(),
            });
            Ok(Outcome::new(UJLA_CONVENTION, payload, passed))
        }
        BuildCmd::Endo { p, q, d } => {
            let (p, q) = (rational("p", p)?, rational("q", q)?);
            let b = endo_structure(&p, &q, *d)?;
            let report = classify(&b);
            let payload = json!({
                "p": format_rational(&p),
                "q": format_rational(&q),
                "d": d,
                "structure": b.to_json(),
                "classification": report.to_json(),
            });
            Ok(Outcome::new(UJLA_CONVENTION, payload, report.is_ujla))
        }
    }
}

fn family_of(kind: FamilyKind, alpha: &str, beta: &str, exponents: &[i64]) -> Result<ClosedFormFamily, Failure> {
    let small = |field: &str, s: &str| -> Result<u32, Failure> {
        s.trim()
            .parse()
            .map_err(|_| Failure::Core(Error::parse(field, format!("expected a positive integer, got '{s}'"))))
    };
    Ok(match kind {
        FamilyKind::Power => ClosedFormFamily::power(small("alpha", alpha)?, small("beta", beta)?)?,
        FamilyKind::Monomial => {
            let [m, n, p, q] = <[i64; 4]>::try_from(exponents).map_err(|_| {
                Failure::Core(Error::parse("exponents", format!("expected m,n,p,q, got {} values", exponents.len())))
            })?;
            ClosedFormFamily::Monomial(ExponentQuadruple::new(m, n, p, q))
        }
        FamilyKind::Linear => {
            let g = |field: &str, s: &str| -> Result<_, Failure> {
                match scalar(field, ScalarKind::Gauss, s)? {
                    Scalar::Gauss(z) => Ok(z),
                    _ => unreachable!("parsed as Gaussian"),
                }
            };
            ClosedFormFamily::Linear {
                alpha: g("alpha", alpha)?,
                beta: g("beta", beta)?,
            }
        }
        FamilyKind::QuotientSquare => ClosedFormFamily::QuotientSquare,
        FamilyKind::Logic => ClosedFormFamily::Logic,
        FamilyKind::Minmax => ClosedFormFamily::MinMax,
        FamilyKind::Gcdlcm => ClosedFormFamily::GcdLcm,
    })
}

fn integer_triples(values: &[i64]) -> Vec<[Scalar; 3]> {
    let mut out = Vec::new();
    for &a in values {
        for &b in values {
            for &c in values {
                out.push([a, b, c].map(|v| Scalar::from_i64(ScalarKind::Rational, v)));
            }
        }
    }
    out
}

fn family_triples(kind: FamilyKind, count: usize) -> Vec<[Scalar; 3]> {
    match kind {
        FamilyKind::Power | FamilyKind::Monomial | FamilyKind::QuotientSquare => positive_rational_triples(count),
        FamilyKind::Linear => gaussian_triples(count),
        FamilyKind::Logic => integer_triples(&[0, 1]),
        FamilyKind::Minmax => integer_triples(&[-2, -1, 0, 1, 2, 3]),
        FamilyKind::Gcdlcm => integer_triples(&[1, 2, 3, 4, 6, 12]),
    }
}

fn set(cmd: &SetCmd) -> Run {
    match cmd {
        SetCmd::Enumerate { size, form, up_to_iso } => {
            let e = enumerate_solutions(*size, *form, *up_to_iso)?;
            let rechecked = e.maps.iter().all(|m| set_yb_check(m, *form).passed());
            let count = if e.up_to_iso {
                e.summary.count_up_to_iso
            } else {
                e.summary.count
            };
            let payload = json!({
                "up_to_iso": e.up_to_iso,
                "summary": e.summary,
                "count": count,
                "maps": e.maps.iter().map(FiniteMap::to_json).collect::<Vec<_>>(),
                "rechecked": rechecked,
            });
            Ok(Outcome::new(form.convention(), payload, rechecked))
        }
        SetCmd::Exponents { bound } => {
            let sols = solve_exponent_system(*bound);
            let passed = sols.iter().all(ExponentQuadruple::satisfies_system);
            let payload = json!({"bound": bound, "count": sols.len(), "solutions": sols});
            Ok(Outcome::new(Form::Braid.convention(), payload, passed))
        }
        SetCmd::Family {
            kind,
            alpha,
            beta,
            exponents,
            form,
            samples,
        } => {
            let f = family_of(*kind, alpha, beta, exponents)?;
            let triples = family_triples(*kind, *samples);
            let report = check_family(&f, *form, &triples)?;
            let payload = json!({"family": f.to_json(), "report": report.to_json()});
            Ok(Outcome::new(form.convention(), payload, report.passed()))
        }
        SetCmd::Sort { mode, values } => {
            let out = yb_sort(values, *mode)?;
            let payload = json!({"mode": mode, "input": values, "output": out});
            Ok(Outcome::new(Form::Braid.convention(), payload, true))
        }
        SetCmd::Symmetry => {
            let r = symmetry_checks();
            let passed = r.passed();
            let payload = serde_json::to_value(&r).expect("plain data");
            Ok(Outcome::new(Value::Null, payload, passed))
        }
        SetCmd::ExpMorphism { alpha, beta } => {
            let samples = [(0.0, 0.0), (0.5, -0.25), (-1.0, 0.75), (1.5, 1.0), (-0.3, -1.2)];
            let r = exp_morphism_check(*alpha, *beta, &samples)?;
            let passed = r.passed();
            let payload = serde_json::to_value(&r).expect("plain data");
            Ok(Outcome::new(Form::Braid.convention(), payload, passed))
        }
    }
}

fn transc(cmd: &TranscCmd) -> Run {
    match cmd {
        TranscCmd::Thm41 { n_max, rows } => {
            let r = thm41_check(*n_max, *rows)?;
            let passed = r.holds();
            Ok(Outcome::new(TRANSC_CONVENTION, r.to_json(), passed))
        }
        TranscCmd::Margins { digits } => {
            let ms = transcendental_margins(*digits)?;
            let passed = ms.iter().all(|m| m.passed());
            let payload = json!({"digits": digits, "margins": ms});
            Ok(Outcome::new(TRANSC_CONVENTION, payload, passed))
        }
    }
}

fn audit(args: &AuditArgs) -> Run {
    let outcome = match &args.claim {
        Some(AuditCmd::Thm35 { triple }) => {
            if triple.len() != 3 {
                return Err(Failure::Core(Error::parse(
                    "triple",
                    format!("expected three comma-separated rationals, got {}", triple.len()),
                )));
            }
            let parsed = triple
                .iter()
                .enumerate()
                .map(|(i, s)| rational(&format!("triple[{i}]"), s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let t: [BigRational; 3] = parsed.try_into().expect("length checked");
            let braid = thm35_check(&t, Form::Braid)?;
            let qybe = thm35_check(&t, Form::Qybe)?;
            let payload = json!({
                "map": "(x, y) -> (x/y, x^2)",
                "triple": t.iter().map(format_rational).collect::<Vec<_>>(),
                "braid": braid.to_json(),
                "qybe": qybe.to_json(),
            });
            let conv = json!([Form::Braid.convention(), Form::Qybe.convention()]);
            Outcome::new(conv, payload, braid.passed() && qybe.passed())
        }
        None => {
            let report = audit_all(args.only.as_deref())?;
            let conv = json!([Form::Braid.convention(), Form::Qybe.convention()]);
            Outcome::new(conv, report.to_json(), report.all_match)
        }
    };
    let mut outcome = outcome;
    crate::strip_runtime(&mut outcome.payload);
    if let Some(path) = &args.json {
        let text = serde_json::to_string_pretty(&outcome.payload).expect("plain JSON");
        std::fs::write(path, text + "\n").map_err(|e| Failure::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
    }
    Ok(outcome)
}
