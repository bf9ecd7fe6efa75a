use hcv_core::hypercube::nonzero_points;
use hcv_core::identities::{catalan, composition_sum};
use hcv_core::linalg;
use hcv_core::reduction::{is_in_vk, uk_monomial_basis};
use hcv_core::symfun::{express_in_wk, express_in_wk_by_solve};
use hcv_core::vanishing::{build_psi_matrix, multiplicity_at, multiplicity_profile, psi_data};
use hcv_core::witness::{
    a_coefficients, a_coefficients_expansion_check, cover_verify, f2_counterexample, leading_coefficient,
    phi_p_direct, seed_q, smallest_failing_k, smallest_failing_k_by_recurrence, witness_ell, witness_main,
};
use hcv_core::{AffineForm, Field, HypercubePoint, Multiplicity, PrimeField, Rationals};
use num_bigint::BigInt;

/// Catalan numbers from the convolution recurrence, independent of the
/// binomial formula.
fn catalan_oracle(count: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(1)];
    for i in 1..count {
        let next = (0..i).map(|j| &c[j] * &c[i - 1 - j]).sum();
        c.push(next);
    }
    c
}

#[test]
fn main_witness_matches_psi_solve() {
    // psi_k is invertible on U_k, so the k-reduced polynomial with the
    // seed's Taylor data is the unique solution of a square system.
    for (n, k) in [(1usize, 2u32), (2, 2), (3, 2), (3, 3), (4, 3)] {
        let seed = seed_q(&Rationals, n, k).unwrap();
        let basis = uk_monomial_basis(n, k).unwrap();
        let psi = build_psi_matrix(&Rationals, n, k, &basis).unwrap();
        let data = psi_data(&seed, k).unwrap();
        let x = linalg::solve(&Rationals, psi.columns().len(), psi.entries(), &data).expect("consistent");
        let solved = psi.polynomial(&x, n);
        let w = witness_main(&Rationals, n, k).unwrap();
        assert_eq!(w, solved, "({n},{k})");
    }
}

#[test]
fn main_witness_shape() {
    for (n, k) in [(1usize, 2u32), (2, 2), (3, 2), (4, 2), (3, 3), (4, 3), (5, 3)] {
        let w = witness_main(&Rationals, n, k).unwrap();
        assert_eq!(w.degree(), Some(n as u32 + 2 * k - 3), "({n},{k})");
        assert!(w.is_symmetric());
        assert!(is_in_vk(&w, k).unwrap());
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(w.evaluate_at(&HypercubePoint::origin(n)).unwrap(), Rationals.from_i64(sign));
    }
}

#[test]
fn ell_witnesses_have_exact_origin_order() {
    for (n, k) in [(3usize, 3u32), (4, 3), (5, 4)] {
        for ell in 0..=k - 2 {
            let w = witness_ell(&Rationals, n, k, ell).unwrap();
            let prof = multiplicity_profile(&w).unwrap();
            assert_eq!(prof.origin(), Multiplicity::Finite(ell), "({n},{k},{ell})");
            assert!(prof.vanishes_off_origin(k));
        }
    }
}

#[test]
fn top_part_and_leading_coordinate() {
    let cat = catalan_oracle(8);
    for (n, k) in [(3usize, 2u32), (4, 2), (3, 3), (4, 3), (5, 3), (5, 4)] {
        let w = witness_main(&Rationals, n, k).unwrap();
        let top = w.homogeneous_component(n as u32 + 2 * k - 3);
        assert_eq!(top, phi_p_direct(&Rationals, n, k).unwrap(), "({n},{k})");
        let sym = express_in_wk(&top, n, k).unwrap();
        let solved = express_in_wk_by_solve(&top, n, k).unwrap();
        assert_eq!(sym, solved);
        let signed = if k % 2 == 0 { -&cat[k as usize - 2] } else { cat[k as usize - 2].clone() };
        assert_eq!(*sym.leading(), Rationals.from_bigint(&signed), "({n},{k})");
    }
}

#[test]
fn leading_coefficient_is_signed_catalan() {
    let cat = catalan_oracle(20);
    for k in 2..=20u32 {
        let signed = if k % 2 == 0 { -&cat[k as usize - 2] } else { cat[k as usize - 2].clone() };
        assert_eq!(leading_coefficient(k).unwrap(), signed, "k={k}");
        assert_eq!(composition_sum(k - 1).unwrap(), signed);
        assert_eq!(catalan(k - 2), cat[k as usize - 2]);
    }
}

#[test]
fn a_coefficients_follow_the_expansion() {
    for k in 2..=16 {
        assert!(a_coefficients_expansion_check(k).unwrap(), "k={k}");
        let a = a_coefficients(k).unwrap();
        assert_eq!(a.values().len(), k as usize);
    }
}

#[test]
fn gf2_counterexample_six_variables() {
    let p = f2_counterexample(6).unwrap();
    assert_eq!(p.degree(), Some(10));
    let g = *p.field();
    assert!(g.is_one(&p.evaluate_at(&HypercubePoint::origin(6)).unwrap()));
    for a in nonzero_points(6) {
        assert!(multiplicity_at(&p, &a).unwrap().at_least(4), "{a}");
    }
    // the same coefficients over Q do not vanish to order 4 everywhere
    let lifted = p.map_field(&Rationals).unwrap();
    assert!(!multiplicity_profile(&lifted).unwrap().vanishes_off_origin(4));
}

#[test]
fn failing_k_matches_brute_force() {
    let cat = catalan_oracle(120);
    for p in (2u64..60).filter(|&p| PrimeField::new(p).is_ok()) {
        let brute = (2u64..).find(|&k| (&cat[k as usize - 2] % BigInt::from(p)) == BigInt::from(0)).unwrap();
        assert_eq!(smallest_failing_k(p).unwrap(), brute, "p={p}");
        assert_eq!(smallest_failing_k_by_recurrence(p, 4 * p).unwrap(), Some(brute));
    }
    assert_eq!(smallest_failing_k(1_000_003).unwrap(), 500_004);
}

#[test]
fn cover_counts() {
    let n = 3;
    let coords: Vec<_> = (0..n).map(|i| AffineForm::coordinate_minus_one(Rationals, n, i)).collect();
    // each coordinate form twice: every nonzero point has a coordinate 1
    let doubled: Vec<_> = coords.iter().chain(&coords).cloned().collect();
    let r = cover_verify(&doubled, 2).unwrap();
    assert!(r.satisfies_hypotheses());
    assert_eq!(r.min_coverage_off_origin, Some(2));
    assert!(r.forms > r.lower_bound().unwrap());
    // coordinates plus x_1 + x_2 + x_3 - 1 meet the bound n + 1 exactly
    let mut tight = coords;
    tight.push(AffineForm::sum_minus_one(Rationals, n));
    let r = cover_verify(&tight, 2).unwrap();
    assert!(r.satisfies_hypotheses());
    assert_eq!(r.forms, r.lower_bound().unwrap());
    let expect: Vec<u32> = (1u64..8)
        .map(|bits| {
            let w = bits.count_ones();
            w + u32::from(w == 1)
        })
        .chain([0])
        .collect();
    assert_eq!(r.counts.iter().map(|(_, c)| *c).collect::<Vec<_>>(), expect);
}
