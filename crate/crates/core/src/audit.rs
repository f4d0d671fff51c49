//! Runs every claim check and compares the outcome with a checked-in manifest
//! of expected statuses (`data/audit_manifest.json`).

use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::colored::{
    all_zero, colored_residual, colored_samples, euler_check, ode_residual, yb_system_residuals, ColorFunctionTriple,
    JSpec, NamedColorFamily,
};
use crate::error::{Error, Result};
use crate::linear::{
    build_r_assoc, build_r_lie, braid_qybe_transport, gate_matrices, yb_param_case, yb_residual, FiniteAlgebra,
    LieSuperAlgebra, ParamCase,
};
use crate::matrix::Matrix;
use crate::scalar::{gauss, int, rat, Scalar, ScalarKind};
use crate::set::{
    check_family, exp_morphism_check, gaussian_triples, positive_rational_triples, set_yb_check, solve_exponent_system,
    symmetry_checks, yb_sort, ClosedFormFamily, ExponentQuadruple, FiniteMap, SetYBReport, SortMode,
};
use crate::transc::{matches_printed, thm41_check, transcendental_margins, BoundRow, PRINTED_TABLE};
use crate::ujla::{classify, deform, endo_structure, from_functional, BilinearStructure, FunctionalKind, FunctionalSpec};
use crate::Form;

const MANIFEST: &str = include_str!("../data/audit_manifest.json");

pub const GROUPS: [&str; 6] = ["linear", "set", "colored", "transc", "ujla", "system"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Holds,
    FailsAsStated,
}

impl ClaimStatus {
    fn from_pass(pass: bool) -> Self {
        if pass {
            ClaimStatus::Holds
        } else {
            ClaimStatus::FailsAsStated
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub group: String,
    pub claim: String,
    pub expected: ClaimStatus,
}

#[derive(Deserialize)]
struct Manifest {
    claims: Vec<ManifestEntry>,
}

pub fn manifest() -> Result<Vec<ManifestEntry>> {
    serde_json::from_str::<Manifest>(MANIFEST)
        .map(|m| m.claims)
        .map_err(|e| Error::parse("audit_manifest", e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub id: String,
    pub group: String,
    pub claim: String,
    pub expected: ClaimStatus,
    pub observed: ClaimStatus,
    pub matches: bool,
    pub detail: Value,
    #[serde(skip)]
    pub runtime_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub rows: Vec<AuditRow>,
    pub all_match: bool,
}

impl AuditReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Runs the manifest's claims in order, optionally restricted to one group.
pub fn audit_all(only: Option<&str>) -> Result<AuditReport> {
    if let Some(g) = only {
        if !GROUPS.contains(&g) {
            return Err(Error::parse("only", format!("unknown group '{g}'; expected one of {}", GROUPS.join("|"))));
        }
    }
    let mut rows = Vec::new();
    for entry in manifest()? {
        if only.is_some_and(|g| g != entry.group) {
            continue;
        }
        let start = Instant::now();
        let (pass, detail) = run_claim(&entry.id)?;
        let observed = ClaimStatus::from_pass(pass);
        rows.push(AuditRow {
            matches: observed == entry.expected,
            id: entry.id,
            group: entry.group,
            claim: entry.claim,
            expected: entry.expected,
            observed,
            detail,
            runtime_ms: start.elapsed().as_millis() as u64,
        });
    }
    let all_match = rows.iter().all(|r| r.matches);
    Ok(AuditReport { rows, all_match })
}

/// Evaluates one claim: `(claim holds, evidence)`.
pub fn run_claim(id: &str) -> Result<(bool, Value)> {
    match id {
        "assoc-cases" => assoc_cases(),
        "assoc-negative" => assoc_negative(),
        "lie-operator" => lie_operator(),
        "gate-matrix" => gate_matrix(),
        "transport" => transport(),
        "symmetries" => {
            let r = symmetry_checks();
            Ok((r.passed(), serde_json::to_value(&r).expect("plain data")))
        }
        "power-braid" => power_family(Form::Braid),
        "power-qybe" => power_family(Form::Qybe),
        "linear-braid" => linear_family(Form::Braid),
        "linear-qybe" => linear_family(Form::Qybe),
        "exponent-system" => exponent_system(),
        "exp-morphism" => exp_morphism(),
        "quotient-square" => quotient_square(),
        "logic-map" => logic_map(),
        "chain-maps" => chain_maps(),
        "euler" => euler(),
        "colored-ybe" => colored_ybe(),
        "ode" => ode(),
        "basel-bound" => basel_bound(),
        "delta" | "area" | "quadratic" | "complex-modulus" | "gaussian-bound" => margin(id),
        "deformations" => deformations(),
        "functional-structures" => functional_structures(),
        "deformation-closure" => deformation_closure(),
        "endomorphisms" => endomorphisms(),
        "trivial-system" => trivial_system(),
        other => Err(Error::parse("id", format!("unknown claim '{other}'"))),
    }
}

fn q(n: i64) -> Scalar {
    Scalar::Rational(int(n))
}

fn qr(n: i64, d: i64) -> Scalar {
    Scalar::Rational(rat(n, d))
}

/// Four test algebras over the rationals with their names.
pub fn test_algebras() -> Result<Vec<(&'static str, FiniteAlgebra)>> {
    let k = ScalarKind::Rational;
    Ok(vec![
        ("k", FiniteAlgebra::ground_field(k)?),
        ("k[x]/(x^2)", FiniteAlgebra::dual_numbers(k)?),
        ("M2(k)", FiniteAlgebra::matrix_algebra(k, 2)?),
        ("k x k", FiniteAlgebra::split_pair(k)?),
    ])
}

/// 27 parameter triples, nine in each of cases (i), (ii), (iii).
pub fn assoc_parameter_triples() -> Vec<[Scalar; 3]> {
    let a = [q(1), q(-2), qr(1, 3)];
    let b = [q(1), q(2), qr(-1, 2)];
    let mut out = Vec::new();
    for x in &a {
        for y in &b {
            out.push([x.clone(), y.clone(), x.clone()]);
        }
    }
    for x in &a {
        for y in &b {
            out.push([x.clone(), y.clone(), y.clone()]);
        }
    }
    for g in [q(1), q(-1), q(2), q(-2), qr(1, 2), qr(-1, 2), q(3), qr(1, 3), q(-5)] {
        out.push([q(0), q(0), g]);
    }
    out
}

fn assoc_cases() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut failures = Vec::new();
    let triples = assoc_parameter_triples();
    for (name, alg) in test_algebras()? {
        for [a, b, g] in &triples {
            let in_case = yb_param_case(a, b, g) != ParamCase::None;
            let rep = yb_residual(&build_r_assoc(&alg, a, b, g)?, alg.dim(), Form::Braid)?;
            if !in_case || !rep.residual.is_exactly_zero() {
                pass = false;
                failures.push(json!({"algebra": name, "params": [a.to_json(), b.to_json(), g.to_json()]}));
            }
        }
    }
    Ok((pass, json!({"algebras": 4, "parameter_triples": triples.len(), "failures": failures})))
}

fn assoc_negative() -> Result<(bool, Value)> {
    let alg = FiniteAlgebra::dual_numbers(ScalarKind::Rational)?;
    let rep = yb_residual(&build_r_assoc(&alg, &q(1), &q(2), &q(3))?, 2, Form::Braid)?;
    Ok((!rep.residual.is_exactly_zero(), rep.to_json()))
}

fn lie_operator() -> Result<(bool, Value)> {
    let k = ScalarKind::Rational;
    let algebras = [("heisenberg", LieSuperAlgebra::heisenberg(k, 2)?), ("gl(1|1)", LieSuperAlgebra::gl11(k)?)];
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, l) in &algebras {
        for alpha in [q(1), q(-3), qr(2, 7)] {
            let rep = yb_residual(&build_r_lie(l, &alpha)?, l.dim(), Form::Braid)?;
            pass &= rep.residual.is_exactly_zero() && rep.invertible;
            rows.push(json!({"algebra": name, "alpha": alpha.to_json(), "report": rep.to_json()}));
        }
    }
    Ok((pass, json!(rows)))
}

fn gate_matrix() -> Result<(bool, Value)> {
    let alg = FiniteAlgebra::dual_numbers(ScalarKind::Rational)?;
    let r = build_r_assoc(&alg, &q(1), &q(1), &q(1))?;
    let (gate, _) = gate_matrices();
    let rep = yb_residual(&r, 2, Form::Braid)?;
    let equal = r == gate;
    Ok((
        equal && rep.residual.is_exactly_zero() && rep.invertible,
        json!({"equals_gate": equal, "report": rep.to_json()}),
    ))
}

/// Twenty operators `(name, d, R)` for transport and convention checks.
pub fn linear_corpus() -> Result<Vec<(String, usize, Matrix)>> {
    let k = ScalarKind::Rational;
    let (gate, cnot) = gate_matrices();
    let mut out = vec![
        ("twist2".to_string(), 2, Matrix::twist(2, k)),
        ("twist3".to_string(), 3, Matrix::twist(3, k)),
        ("identity2".to_string(), 2, Matrix::identity(4, k)),
        ("identity3".to_string(), 3, Matrix::identity(9, k)),
        ("gate".to_string(), 2, gate),
        ("cnot".to_string(), 2, cnot),
        ("diag1234".to_string(), 2, Matrix::diagonal((1..=4).map(q).collect())?),
        (
            "dense".to_string(),
            2,
            Matrix::from_i64_rows(k, &[&[1, 2, 0, 0], &[0, 1, 3, 0], &[0, 0, 1, 4], &[5, 0, 0, 1]])?,
        ),
    ];
    let params = [(1, 1, 1), (1, 2, 3), (2, 1, 2), (0, 0, 1)];
    for (name, alg) in test_algebras()?.into_iter().filter(|(n, _)| *n != "M2(k)") {
        for (a, b, g) in params {
            out.push((format!("assoc {name} ({a},{b},{g})"), alg.dim(), build_r_assoc(&alg, &q(a), &q(b), &q(g))?));
        }
    }
    out.truncate(18);
    out.push(("lie heisenberg 1".into(), 3, build_r_lie(&LieSuperAlgebra::heisenberg(k, 2)?, &q(1))?));
    out.push(("lie gl(1|1) 2".into(), 4, build_r_lie(&LieSuperAlgebra::gl11(k)?, &q(2))?));
    Ok(out)
}

fn transport() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = Vec::new();
    for (name, d, r) in linear_corpus()? {
        let (r_tau, _) = braid_qybe_transport(&r, d)?;
        let braid = yb_residual(&r, d, Form::Braid)?.residual.is_exactly_zero();
        let qybe = yb_residual(&r_tau, d, Form::Qybe)?.residual.is_exactly_zero();
        pass &= braid == qybe;
        rows.push(json!({"operator": name, "braid_zero": braid, "qybe_of_r_tau_zero": qybe}));
    }
    // set-theoretic version over all maps on two points
    let mut set_ok = true;
    for code in 0..256usize {
        let table = (0..4).map(|c| (code >> (2 * c)) & 3).map(|v| (v / 2, v % 2)).collect();
        let s = FiniteMap::new(2, table)?;
        set_ok &= set_yb_check(&s, Form::Braid).passed() == set_yb_check(&s.then_twist(), Form::Qybe).passed();
    }
    pass &= set_ok;
    Ok((pass, json!({"linear": rows, "set_maps_n2": 256, "set_agree": set_ok})))
}

fn family_json(r: &SetYBReport<Scalar>) -> Value {
    r.to_json()
}

fn power_family(form: Form) -> Result<(bool, Value)> {
    let triples = positive_rational_triples(100);
    let mut all = true;
    let mut rows = Vec::new();
    for alpha in 1..=3 {
        for beta in 1..=3 {
            let r = check_family(&ClosedFormFamily::power(alpha, beta)?, form, &triples)?;
            all &= r.passed();
            rows.push(json!({"alpha": alpha, "beta": beta, "report": family_json(&r)}));
        }
    }
    Ok((all, json!(rows)))
}

/// Five Gaussian-rational parameter pairs outside `{0, 1}²`.
pub fn linear_family_params() -> Vec<(crate::scalar::Gauss, crate::scalar::Gauss)> {
    vec![
        (gauss(int(2), int(0)), gauss(int(3), int(0))),
        (gauss(rat(1, 2), int(0)), gauss(int(-1), int(0))),
        (gauss(int(0), int(1)), gauss(int(1), int(1))),
        (gauss(int(-2), int(0)), gauss(rat(1, 3), int(1))),
        (gauss(int(3), int(-2)), gauss(int(2), rat(1, 2))),
    ]
}

fn linear_family(form: Form) -> Result<(bool, Value)> {
    let triples = gaussian_triples(100);
    let mut all = true;
    let mut rows = Vec::new();
    for (alpha, beta) in linear_family_params() {
        let fam = ClosedFormFamily::Linear { alpha, beta };
        let r = check_family(&fam, form, &triples)?;
        all &= r.passed();
        rows.push(json!({"family": fam.to_json(), "report": family_json(&r)}));
    }
    Ok((all, json!(rows)))
}

fn exponent_system() -> Result<(bool, Value)> {
    let sols = solve_exponent_system(2);
    let required = [
        ExponentQuadruple::new(1, 0, 0, 1),
        ExponentQuadruple::new(0, 1, 1, 0),
        ExponentQuadruple::new(0, 1, 2, -1),
    ];
    let contains = required.iter().all(|r| sols.contains(r));
    let triples = positive_rational_triples(50);
    let mut all = contains;
    for e in &sols {
        all &= check_family(&ClosedFormFamily::Monomial(*e), Form::Braid, &triples)?.passed();
    }
    Ok((all, json!({"bound": 2, "solutions": sols.len(), "contains_required": contains})))
}

fn exp_morphism() -> Result<(bool, Value)> {
    let samples = [(0.0, 0.0), (0.5, -0.25), (-1.0, 0.75), (0.3, 0.2), (1.0, -1.0)];
    let mut all = true;
    let mut rows = Vec::new();
    for alpha in 1..=2 {
        for beta in 1..=2 {
            let r = exp_morphism_check(alpha, beta, &samples)?;
            all &= r.passed();
            rows.push(serde_json::to_value(&r).expect("plain data"));
        }
    }
    Ok((all, json!(rows)))
}

/// Both forms of the quotient-square map on one triple.
pub fn thm35_check(triple: &[BigRational; 3], form: Form) -> Result<SetYBReport<Scalar>> {
    let t = triple.clone().map(Scalar::Rational);
    check_family(&ClosedFormFamily::QuotientSquare, form, &[t])
}

fn quotient_square() -> Result<(bool, Value)> {
    let t = [int(2), int(3), int(5)];
    let braid = thm35_check(&t, Form::Braid)?;
    let qybe = thm35_check(&t, Form::Qybe)?;
    Ok((
        braid.passed() && qybe.passed(),
        json!({"braid": braid.to_json(), "qybe": qybe.to_json()}),
    ))
}

fn logic_map() -> Result<(bool, Value)> {
    let triples: Vec<[Scalar; 3]> = (0..8).map(|t| [t >> 2, (t >> 1) & 1, t & 1].map(q)).collect();
    let r = check_family(&ClosedFormFamily::Logic, Form::Braid, &triples)?;
    Ok((r.passed(), r.to_json()))
}

fn chain_maps() -> Result<(bool, Value)> {
    let ints: Vec<[Scalar; 3]> = (0..125).map(|t| [t / 25 - 2, (t / 5) % 5 - 2, t % 5 - 2].map(q)).collect();
    let divisors = [1, 2, 3, 4, 6, 12];
    let divs: Vec<[Scalar; 3]> = (0..216).map(|t| [divisors[t / 36], divisors[(t / 6) % 6], divisors[t % 6]].map(q)).collect();
    let minmax = check_family(&ClosedFormFamily::MinMax, Form::Braid, &ints)?;
    let gcdlcm = check_family(&ClosedFormFamily::GcdLcm, Form::Braid, &divs)?;
    let sorted = yb_sort(&[5, -1, 3, 3, 0, 9, -7], SortMode::MinMax)? == vec![-7, -1, 0, 3, 3, 5, 9];
    let chain = yb_sort(&[12, 18, 8], SortMode::GcdLcm)?;
    let gl = chain.first() == Some(&2) && chain.last() == Some(&72);
    let finite = set_yb_check(&FiniteMap::min_max(3), Form::Braid).passed();
    Ok((
        minmax.passed() && gcdlcm.passed() && sorted && gl && finite,
        json!({
            "minmax": minmax.to_json(),
            "gcdlcm": gcdlcm.to_json(),
            "sort_minmax": sorted,
            "sort_gcdlcm": chain,
            "minmax_on_3_chain": finite,
        }),
    ))
}

fn euler() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = Vec::new();
    for a in [0.5, 1.0, 2.0, 5.0] {
        let n = euler_check(&JSpec::new(a)?)?;
        pass &= n.within(1e-9);
        rows.push(json!({"alpha": a, "norm": n.value()}));
    }
    Ok((pass, json!({"tolerance": 1e-9, "rows": rows})))
}

fn colored_ybe() -> Result<(bool, Value)> {
    let spec = JSpec::new(1.0)?;
    let samples = colored_samples(5, 0);
    let mut worst = 0.0f64;
    for &(x, y) in &samples {
        worst = worst.max(colored_residual(&spec, x, y)?.value());
    }
    Ok((worst < 1e-9, json!({"samples": samples.len(), "max_residual": worst, "tolerance": 1e-9})))
}

fn ode() -> Result<(bool, Value)> {
    let spec = JSpec::new(1.0)?;
    let coarse = ode_residual(&spec, 1.0, 1e-3)?.value();
    let fine = ode_residual(&spec, 1.0, 5e-4)?.value();
    let ratio = coarse / fine;
    Ok(((ratio - 4.0).abs() <= 0.5, json!({"h": [1e-3, 5e-4], "residuals": [coarse, fine], "ratio": ratio})))
}

fn basel_bound() -> Result<(bool, Value)> {
    let rep = thm41_check(2000, 5)?;
    let printed = PRINTED_TABLE.iter().all(|(n, lhs, rhs)| {
        let row = BoundRow::compute(*n);
        lhs.is_none_or(|p| matches_printed(&row.lhs, p)) && matches_printed(&row.rhs, rhs)
    });
    let mut detail = rep.to_json();
    detail["printed_table_matches"] = json!(printed);
    Ok((rep.holds() && rep.replay.holds && printed, detail))
}

fn margin(id: &str) -> Result<(bool, Value)> {
    let name = id.replace('-', "_");
    let ms = transcendental_margins(50)?;
    let m = ms
        .iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::parse("id", format!("no margin named {name}")))?;
    Ok((m.passed(), serde_json::to_value(m).expect("plain data")))
}

fn deformations() -> Result<(bool, Value)> {
    let m = BilinearStructure::matrix_algebra(2)?;
    let jordan = classify(&deform(&m, &rat(1, 2), &rat(1, 2))).is_jordan;
    let lie = classify(&deform(&m, &int(1), &int(-1))).is_lie;
    let opposite = classify(&deform(&m, &int(0), &int(1))).is_associative;
    let identity = deform(&m, &int(1), &int(0)) == m;
    Ok((
        jordan && lie && opposite && identity,
        json!({"jordan": jordan, "lie": lie, "opposite_associative": opposite, "identity": identity}),
    ))
}

/// Ten functionals on `ℚ³` with a unit `e` satisfying `f(e) = 1`.
pub fn sample_functionals() -> Vec<FunctionalSpec> {
    (0..10i64)
        .map(|i| {
            let f = vec![int(1 + i % 3), int(i - 4), rat(2 * i + 1, 3)];
            // e = e₀ / f₀
            let e = vec![rat(1, 1 + i % 3), int(0), int(0)];
            FunctionalSpec::new(f).with_unit(e).with_params(rat(i + 1, 2), int(3 - i))
        })
        .collect()
}

fn functional_structures() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut counts = [0usize; 4];
    for spec in sample_functionals() {
        let checks = [
            classify(&from_functional(&spec, FunctionalKind::Assoc)?.0).is_associative,
            classify(&from_functional(&spec, FunctionalKind::Lie)?.0).is_lie,
            classify(&from_functional(&spec, FunctionalKind::Jordan)?.0).is_jordan,
            classify(&from_functional(&spec, FunctionalKind::Ujla)?.0).is_ujla,
        ];
        for (c, ok) in counts.iter_mut().zip(checks) {
            *c += ok as usize;
            pass &= ok;
        }
    }
    Ok((
        pass,
        json!({"functionals": 10, "assoc": counts[0], "lie": counts[1], "jordan": counts[2], "ujla": counts[3]}),
    ))
}

/// Ten deformation parameters.
pub fn deformation_params() -> Vec<(BigRational, BigRational)> {
    (0..10i64).map(|i| (rat(i - 3, 2), rat(5 - 2 * i, 3))).collect()
}

/// Twenty UJLA structures built from functionals and deformations.
pub fn ujla_corpus() -> Result<Vec<BilinearStructure>> {
    let mut out = Vec::new();
    for (i, spec) in sample_functionals().into_iter().enumerate() {
        let kind = [FunctionalKind::Assoc, FunctionalKind::Lie, FunctionalKind::Jordan, FunctionalKind::Ujla][i % 4];
        out.push(from_functional(&spec, kind)?.0);
    }
    let m = BilinearStructure::matrix_algebra(2)?;
    for (a, b) in deformation_params() {
        out.push(deform(&m, &a, &b));
    }
    Ok(out)
}

fn deformation_closure() -> Result<(bool, Value)> {
    let corpus = ujla_corpus()?;
    let mut inputs_ujla = true;
    let mut failures = Vec::new();
    for (i, s) in corpus.iter().enumerate() {
        inputs_ujla &= classify(s).is_ujla;
        for (j, (a, b)) in deformation_params().iter().enumerate() {
            if !classify(&deform(s, a, b)).is_ujla {
                failures.push(json!([i, j]));
            }
        }
    }
    Ok((
        inputs_ujla && failures.is_empty(),
        json!({"structures": corpus.len(), "params": 10, "inputs_ujla": inputs_ujla, "failures": failures}),
    ))
}

fn endomorphisms() -> Result<(bool, Value)> {
    let mut pass = true;
    let mut rows = Vec::new();
    for p in 0..=3 {
        for qq in 0..=3 {
            let r = classify(&endo_structure(&int(p), &int(qq), 2)?);
            pass &= r.is_ujla;
            rows.push(json!({"p": p, "q": qq, "is_ujla": r.is_ujla}));
        }
    }
    Ok((pass, json!({"d": 2, "rows": rows})))
}

fn trivial_system() -> Result<(bool, Value)> {
    let colors: Vec<BigRational> = [rat(-1, 1), rat(0, 1), rat(1, 2), rat(2, 1), rat(-7, 3)].into();
    let fns = ColorFunctionTriple::Named(NamedColorFamily::EqualLinear);
    let mut pass = true;
    for u in &colors {
        for v in &colors {
            for w in &colors {
                pass &= all_zero(&yb_system_residuals(&fns, u, v, w)?);
            }
        }
    }
    Ok((pass, json!({"family": fns.to_json(), "grid": 125})))
}
