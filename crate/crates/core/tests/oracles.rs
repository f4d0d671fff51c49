//! Cross-checks of library routines against small independent oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ybx_core::audit::{sample_functionals, ujla_corpus};
use ybx_core::linear::{braid_qybe_transport, yb_residual};
use ybx_core::scalar::int;
use ybx_core::ujla::{classify, deform, degree_axiom_differences, from_functional, BilinearStructure, FunctionalKind};
use ybx_core::{Form, Legs, Matrix, Scalar, ScalarKind};

const Q: ScalarKind = ScalarKind::Rational;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=5)))
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BigRational> {
    (0..dim).map(|_| random_rational(rng)).collect()
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize, density: f64) -> Matrix {
    let entries = (0..dim * dim)
        .map(|_| {
            if rng.gen_bool(density) {
                Scalar::Rational(random_rational(rng))
            } else {
                Scalar::zero(Q)
            }
        })
        .collect();
    Matrix::new(dim, Q, entries).unwrap()
}

/// Entry `((i1,i2,i3),(j1,j2,j3))` of `R` lifted to legs `(a, b)`, computed from the definition.
fn lifted_entry(r: &Matrix, d: usize, legs: (usize, usize), row: usize, col: usize) -> Scalar {
    let digits = |x: usize| [x / (d * d), (x / d) % d, x % d];
    let (ri, ci) = (digits(row), digits(col));
    let other = 3 - legs.0 - legs.1;
    if ri[other] != ci[other] {
        return Scalar::zero(Q);
    }
    r.get(ri[legs.0] * d + ri[legs.1], ci[legs.0] * d + ci[legs.1]).clone()
}

#[test]
fn leg_lifts_match_index_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in 1..=3 {
        let r = random_matrix(&mut rng, d * d, 0.6);
        for (legs, pair) in [(Legs::L12, (0, 1)), (Legs::L23, (1, 2)), (Legs::L13, (0, 2))] {
            let lifted = r.lift(d, legs).unwrap();
            for row in 0..d * d * d {
                for col in 0..d * d * d {
                    assert_eq!(lifted.get(row, col), &lifted_entry(&r, d, pair, row, col), "{legs:?} d={d}");
                }
            }
        }
    }
}

#[test]
fn kron_matches_block_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let a = random_matrix(&mut rng, 3, 0.8);
    let b = random_matrix(&mut rng, 2, 0.8);
    let k = a.kron(&b).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let want = a.get(i / 2, j / 2).mul(b.get(i % 2, j % 2)).unwrap();
            assert_eq!(k.get(i, j), &want);
        }
    }
}

#[test]
fn transport_on_random_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut zeros = 0;
    for trial in 0..40 {
        let r = if trial % 4 == 0 {
            Matrix::twist(2, Q).scale(&Scalar::Rational(random_rational(&mut rng))).unwrap()
        } else {
            random_matrix(&mut rng, 4, 0.3)
        };
        let (r_tau, tau_r) = braid_qybe_transport(&r, 2).unwrap();
        let braid = yb_residual(&r, 2, Form::Braid).unwrap().residual.is_exactly_zero();
        let qybe_right = yb_residual(&r_tau, 2, Form::Qybe).unwrap().residual.is_exactly_zero();
        let qybe_left = yb_residual(&tau_r, 2, Form::Qybe).unwrap().residual.is_exactly_zero();
        assert_eq!(braid, qybe_right, "trial {trial}");
        assert_eq!(braid, qybe_left, "trial {trial}");
        zeros += braid as usize;
    }
    assert!(zeros >= 10);
}

/// The grid decision for the degree axioms agrees with 100 random rational points.
#[test]
fn degree_axioms_agree_with_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut structures = ujla_corpus().unwrap();
    for spec in sample_functionals().iter().take(3) {
        let (s, _) = from_functional(spec, FunctionalKind::Jordan).unwrap();
        let mut broken = s.clone();
        let dim = broken.dim();
        let v = broken.constant(0, dim - 1, 0) + int(3);
        broken.set_constant(0, dim - 1, 0, v);
        structures.push(broken);
    }
    let mut failures_seen = 0;
    for s in &structures {
        let report = classify(s);
        let mut random_fail = [false; 4];
        for _ in 0..100 {
            let a = random_vector(&mut rng, s.dim());
            let b = random_vector(&mut rng, s.dim());
            let diffs = degree_axiom_differences(s, &a, &b).unwrap();
            for (k, d) in diffs.iter().enumerate() {
                random_fail[k] |= d.iter().any(|x| !x.is_zero());
            }
        }
        for k in 0..4 {
            assert_eq!(report.degree_axioms[k], !random_fail[k], "axiom {k}");
            failures_seen += random_fail[k] as usize;
        }
    }
    assert!(failures_seen > 0);
}

fn random_structure(rng: &mut ChaCha8Rng, dim: usize) -> BilinearStructure {
    let mut entries = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                if rng.gen_bool(0.3) {
                    entries.push((i, j, k, random_rational(rng)));
                }
            }
        }
    }
    BilinearStructure::from_sparse(dim, &entries).unwrap()
}

#[test]
fn class_implications_on_random_structures() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let m2 = BilinearStructure::matrix_algebra(2).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    let mut seen = [0usize; 3];
    for trial in 0..60 {
        let s = match trial % 4 {
            0 => random_structure(&mut rng, 2),
            1 => deform(&m2, &half, &half),
            2 => deform(&m2, &int(1), &int(-1)),
            _ => deform(&random_structure(&mut rng, 2), &int(1), &int(-1)),
        };
        let r = classify(&s);
        if r.is_associative || r.is_lie || r.is_jordan {
            assert!(r.is_ujla, "trial {trial}");
        }
        seen[0] += r.is_associative as usize;
        seen[1] += r.is_lie as usize;
        seen[2] += r.is_jordan as usize;
        assert_eq!(r.is_associative, r.associative);
        assert_eq!(r.is_lie, r.anticommutative && r.jacobi);
        assert_eq!(r.is_jordan, r.commutative && r.jordan_identity);
    }
    assert!(seen.iter().all(|&n| n > 0), "{seen:?}");
}

#[test]
fn single_constant_perturbations_break_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let m2 = BilinearStructure::matrix_algebra(2).unwrap();
    assert!(classify(&m2).is_associative);
    let mut broken = 0;
    for _ in 0..20 {
        let (i, j, k) = (rng.gen_range(0..4), rng.gen_range(0..4), rng.gen_range(0..4));
        let mut s = m2.clone();
        let v = s.constant(i, j, k) + int(rng.gen_range(1..4));
        s.set_constant(i, j, k, v);
        let r = classify(&s);
        if !r.is_associative {
            broken += 1;
            assert!(r.witnesses.contains_key("associative"), "{:?}", r.witnesses.keys());
        }
    }
    assert!(broken > 0);
}
