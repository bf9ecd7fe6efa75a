//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hcv_core::identities::{
    catalan, catalan_alternating_sum, composition_sum, composition_sum_closed_form, compositions,
    expression_via_b_check,
};
use hcv_core::linalg;
use hcv_core::monomial::monomials_up_to;
use hcv_core::reduction::{
    is_in_vk, is_k_reduced, m_count, reduce, reduce_with, uk_dimension, uk_monomial_basis, vk_basis,
    vk_basis_by_reduction,
};
use hcv_core::symfun::{
    express_in_wk, express_in_wk_by_solve, newton_check, wk_basis_elements, wk_generator,
};
use hcv_core::vanishing::{
    build_psi_matrix, min_degree, min_degree_with_witness, multiplicity_at, multiplicity_profile,
    psi_data, MinDegreeOutcome, MinDegreeQuery,
};
use hcv_core::witness::{
    f2_counterexample, leading_coefficient, phi_p_direct, smallest_failing_k, witness_ell,
    witness_exact_kminus1, witness_main,
};
use hcv_core::{
    ExponentVector, Field, HypercubePoint, Multiplicity, OriginCondition, PrimeField, Rationals,
    SparsePolynomial,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn found_degree<F: Field>(outcome: &MinDegreeOutcome<F>) -> Option<u32> {
    outcome.degree()
}

fn within(limit: Duration, started: Instant) -> Check {
    let spent = started.elapsed();
    ensure!(spent <= limit, "took {spent:.1?}, limit {limit:?}");
    Ok(())
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for n in 1..=6 {
        let q = MinDegreeQuery::new(n, 1, OriginCondition::Nonzero, n as u32 + 1);
        let d = found_degree(&min_degree(&Rationals, q).map_err(err)?);
        ensure!(d == Some(n as u32), "n={n}: got {d:?}");
    }
    within(Duration::from_secs(30), start)
}

fn criterion_2() -> Check {
    let start = Instant::now();
    for n in 1..=5 {
        let q = MinDegreeQuery::new(n, 2, OriginCondition::Nonzero, n as u32 + 2);
        let d = found_degree(&min_degree(&Rationals, q).map_err(err)?);
        ensure!(d == Some(n as u32 + 1), "k=2, n={n}: got {d:?}");
    }
    for n in 3..=5 {
        let q = MinDegreeQuery::new(n, 3, OriginCondition::Nonzero, n as u32 + 4);
        let d = found_degree(&min_degree(&Rationals, q).map_err(err)?);
        ensure!(d == Some(n as u32 + 3), "k=3, n={n}: got {d:?}");
    }
    let gf = PrimeField::new(1_000_003).map_err(err)?;
    let q = MinDegreeQuery::new(5, 4, OriginCondition::Nonzero, 10);
    let d = found_degree(&min_degree(&gf, q).map_err(err)?);
    ensure!(d == Some(10), "k=4, n=5 over GF(1000003): got {d:?}");
    within(Duration::from_secs(600), start)
}

fn criterion_3() -> Check {
    for (n, k) in [(1usize, 2u32), (2, 2), (3, 2), (3, 3)] {
        let target = n as u32 + 2 * k - 2;
        let q = MinDegreeQuery::new(n, k, OriginCondition::ExactMultiplicity(k - 1), target + 1);
        let outcome = min_degree_with_witness(&Rationals, q).map_err(err)?;
        ensure!(outcome.degree() == Some(target), "({n},{k}): got {:?}", outcome.degree());
        let w = witness_exact_kminus1(&Rationals, n, k).map_err(err)?;
        ensure!(w.degree() == Some(target), "({n},{k}): witness degree {:?}", w.degree());
        let prof = multiplicity_profile(&w).map_err(err)?;
        ensure!(prof.origin() == Multiplicity::Finite(k - 1), "({n},{k}): origin {}", prof.origin());
        ensure!(prof.vanishes_off_origin(k), "({n},{k}): witness misses a nonzero point");
    }
    Ok(())
}

fn criterion_4() -> Check {
    for (n, k) in [(3usize, 3u32), (5, 4)] {
        for ell in 0..=k - 2 {
            let w = witness_ell(&Rationals, n, k, ell).map_err(err)?;
            let want = n as u32 + 2 * k - 3;
            ensure!(w.degree() == Some(want), "({n},{k},{ell}): degree {:?}", w.degree());
            let prof = multiplicity_profile(&w).map_err(err)?;
            ensure!(prof.origin() == Multiplicity::Finite(ell), "({n},{k},{ell}): origin {}", prof.origin());
            ensure!(prof.vanishes_off_origin(k), "({n},{k},{ell}): low multiplicity off the origin");
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    for n in 1..=5usize {
        for k in 2..=4u32 {
            let count = uk_monomial_basis(n, k).map_err(err)?.len() as u64;
            let formula = ((1u64 << n) - 1) * m_count(k, n).map_err(err)? + m_count(k - 1, n).map_err(err)?;
            ensure!(count == formula, "({n},{k}): {count} monomials, formula {formula}");
            ensure!(uk_dimension(n, k).map_err(err)? == formula, "({n},{k}): uk_dimension");
        }
    }
    for (n, k) in [(2usize, 2u32), (3, 2), (3, 3)] {
        let basis = uk_monomial_basis(n, k).map_err(err)?;
        let psi = build_psi_matrix(&Rationals, n, k, &basis).map_err(err)?;
        ensure!(psi.is_square(), "({n},{k}): shape {:?}", psi.shape());
        ensure!(psi.is_invertible(), "({n},{k}): psi_k singular");
    }
    Ok(())
}

/// Rank of the `phi_k` matrix: `W_k` coordinates of the top homogeneous
/// parts of a `V_k` basis.
fn phi_rank<F: Field>(field: &F, basis: &[SparsePolynomial<F>], n: usize, k: u32) -> Result<usize, String> {
    let top = n as u32 + 2 * k - 3;
    let mut rows = Vec::new();
    for p in basis {
        let h = p.homogeneous_component(top);
        rows.push(express_in_wk_by_solve(&h, n, k).map_err(err)?.values());
    }
    Ok(linalg::rank(field, wk_basis_elements(n, k).map_err(err)?.len(), &rows))
}

fn wk_generator_rank<F: Field>(field: &F, n: usize, k: u32) -> Result<usize, String> {
    let index = wk_basis_elements(n, k).map_err(err)?;
    let gens: Vec<_> = index.iter().map(|(m, d)| wk_generator(field, *m, d)).collect();
    let mut monomials: Vec<ExponentVector> = gens.iter().flat_map(|g| g.terms().map(|(e, _)| e.clone())).collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<_> = gens.iter().map(|g| monomials.iter().map(|e| g.coeff(e)).collect()).collect();
    Ok(linalg::rank(field, monomials.len(), &rows))
}

fn criterion_6() -> Check {
    for (n, k) in [(3usize, 2u32), (3, 3)] {
        let want = m_count(k - 1, n).map_err(err)? as usize;
        let basis = vk_basis(&Rationals, n, k).map_err(err)?;
        ensure!(basis.len() == want, "({n},{k}): dim V_k {} != {want}", basis.len());
        ensure!(wk_basis_elements(n, k).map_err(err)?.len() == want, "({n},{k}): W_k index count");
        ensure!(wk_generator_rank(&Rationals, n, k)? == want, "({n},{k}): W_k generators dependent");
        ensure!(phi_rank(&Rationals, &basis, n, k)? == want, "({n},{k}): phi_k singular");
    }

    // (5,4): the null space over GF(1000003) bounds dim V_k over Q from above
    // (integer evaluation matrix, rank can only drop mod p); the 21
    // independent reduction-route elements bound it from below.
    let (n, k) = (5usize, 4u32);
    let want = m_count(k - 1, n).map_err(err)? as usize;
    let gf = PrimeField::new(1_000_003).map_err(err)?;
    let modular = vk_basis(&gf, n, k).map_err(err)?;
    ensure!(modular.len() == want, "(5,4): dim V_k mod p {} != {want}", modular.len());
    let rational = vk_basis_by_reduction(&Rationals, n, k).map_err(err)?;
    for p in &rational {
        ensure!(is_in_vk(p, k).map_err(err)?, "(5,4): reduction-route element outside V_k");
    }
    let columns = monomials_up_to(n, n as u32 + 2 * k - 3);
    let vectors: Vec<Vec<_>> = rational.iter().map(|p| columns.iter().map(|e| p.coeff(e)).collect()).collect();
    ensure!(linalg::rank(&Rationals, columns.len(), &vectors) == want, "(5,4): reduction route dependent");
    ensure!(wk_basis_elements(n, k).map_err(err)?.len() == want, "(5,4): W_k index count");
    ensure!(wk_generator_rank(&Rationals, n, k)? == want, "(5,4): W_k generators dependent");
    ensure!(phi_rank(&Rationals, &rational, n, k)? == want, "(5,4): phi_k singular over Q");
    ensure!(phi_rank(&gf, &modular, n, k)? == want, "(5,4): phi_k singular mod p");
    Ok(())
}

fn criterion_7() -> Check {
    for (n, k, expect) in [(3usize, 2u32, -1i64), (3, 3, 1), (5, 4, -2)] {
        let w = witness_main(&Rationals, n, k).map_err(err)?;
        let top = w.homogeneous_component(n as u32 + 2 * k - 3);
        ensure!(top == phi_p_direct(&Rationals, n, k).map_err(err)?, "({n},{k}): top part differs from the direct sum");
        ensure!(
            top.divide_by_monomial(&ExponentVector::from(vec![1; n])).is_some(),
            "({n},{k}): top part not divisible by x_1...x_n"
        );
        let coords = express_in_wk(&top, n, k).map_err(err)?;
        let explicit = {
            let c = catalan(k - 2);
            if k % 2 == 0 { -c } else { c }
        };
        ensure!(explicit == BigInt::from(expect), "({n},{k}): signed Catalan {explicit}");
        ensure!(
            *coords.leading() == Rationals.from_bigint(&explicit),
            "({n},{k}): leading coordinate {}",
            Rationals.format(coords.leading())
        );
        ensure!(leading_coefficient(k).map_err(err)? == explicit, "({n},{k}): composition-sum value");
    }
    Ok(())
}

fn criterion_8() -> Check {
    let start = Instant::now();
    for s in 1..=30 {
        let v = catalan_alternating_sum(s);
        ensure!(v == BigInt::from(0), "alternating sum s={s} is {v}");
    }
    for l in 1..=16 {
        ensure!(
            composition_sum(l).map_err(err)? == composition_sum_closed_form(l),
            "composition sum l={l}"
        );
    }
    for n in 0..=10 {
        for m in 0..=10 {
            for s in 0..=5 {
                ensure!(expression_via_b_check(n, m, s), "via-b n={n} m={m} s={s}");
            }
        }
    }
    for w in 1..=7 {
        for c in compositions(w) {
            ensure!(
                newton_check(&Rationals, c.parts(), w as usize).map_err(err)?,
                "newton {:?}",
                c.parts()
            );
        }
    }
    within(Duration::from_secs(60), start)
}

fn criterion_9() -> Check {
    let p = f2_counterexample(5).map_err(err)?;
    ensure!(p.degree() == Some(9), "degree {:?}", p.degree());
    let g = *p.field();
    ensure!(g.is_one(&p.evaluate_at(&HypercubePoint::origin(5)).map_err(err)?), "origin value not 1");
    let prof = multiplicity_profile(&p).map_err(err)?;
    let off: Vec<_> = prof.entries().iter().filter(|(a, _)| !a.is_origin()).collect();
    ensure!(off.len() == 31, "{} nonzero points", off.len());
    ensure!(off.iter().all(|(_, m)| m.at_least(4)), "a nonzero point has multiplicity below 4");
    let q = MinDegreeQuery::new(5, 4, OriginCondition::Nonzero, 9);
    let d = min_degree(&g, q).map_err(err)?.degree();
    ensure!(d == Some(9), "min_degree over GF(2) returned {d:?}");
    ensure!(d.is_some_and(|d| d <= 5 + 2 * 4 - 4), "bound not beaten");
    Ok(())
}

fn criterion_10() -> Check {
    for (p, k) in [(2u64, 4u64), (3, 7), (5, 5), (7, 6)] {
        let got = smallest_failing_k(p).map_err(err)?;
        ensure!(got == k, "p={p}: got {got}, want {k}");
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> SparsePolynomial<Rationals> {
    let monomials = monomials_up_to(n, max_degree);
    let terms = rng.gen_range(1..=8);
    let mut p = SparsePolynomial::zero(Rationals, n);
    for _ in 0..terms {
        let e = monomials[rng.gen_range(0..monomials.len())].clone();
        p.add_term(e, Rationals.from_i64(rng.gen_range(-5..=5)));
    }
    p
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..200 {
        let n = rng.gen_range(1..=4usize);
        let k = rng.gen_range(2..=3u32);
        let p = random_poly(&mut rng, n, 8);
        let r = reduce(&p, k).map_err(err)?;
        ensure!(is_k_reduced(&r.reduced, k), "case {case}: output not reduced");
        let again = reduce(&r.reduced, k).map_err(err)?;
        ensure!(again.reduced == r.reduced && again.steps_taken == 0, "case {case}: not idempotent");
        let mut pick = ChaCha8Rng::seed_from_u64(case);
        let other = reduce_with(&p, k, |ws| pick.gen_range(0..ws.len())).map_err(err)?;
        ensure!(other.reduced == r.reduced, "case {case}: depends on reduction order");
        ensure!(
            psi_data(&p, k).map_err(err)? == psi_data(&r.reduced, k).map_err(err)?,
            "case {case}: psi data changed"
        );
        let q = random_poly(&mut rng, n, 8);
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let pq = p.checked_mul(&q).map_err(err)?;
        for a in hcv_core::hypercube::all_points(n) {
            let lhs = multiplicity_at(&pq, &a).map_err(err)?;
            let rhs = multiplicity_at(&p, &a).map_err(err)? + multiplicity_at(&q, &a).map_err(err)?;
            ensure!(lhs == rhs, "case {case}: multiplicity not additive at {a}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("min-degree, k = 1", criterion_1),
        ("min-degree, k = 2, 3, 4", criterion_2),
        ("exact origin multiplicity k - 1", criterion_3),
        ("witnesses with origin multiplicity l", criterion_4),
        ("U_k counts and psi_k invertibility", criterion_5),
        ("dim V_k = dim W_k and phi_k invertibility", criterion_6),
        ("top homogeneous part and leading W_k coordinate", criterion_7),
        ("identity suites", criterion_8),
        ("GF(2) counterexample", criterion_9),
        ("smallest failing k", criterion_10),
        ("reduction and multiplicity properties", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let spent = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({spent:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name} ({spent:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
