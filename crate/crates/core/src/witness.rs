//! Explicit extremal polynomials, the GF(2) counterexample, and hyperplane
//! cover checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::hypercube::{self, HypercubePoint, DEFAULT_ENUMERATION_LIMIT};
use crate::identities::{binomial, catalan, compositions, COMPOSITION_LIMIT};
use crate::monomial::{monomials_of_degree, ExponentVector};
use crate::poly::{product_of_affine_forms, AffineForm, SparsePolynomial};
use crate::reduction::{coordinate_product_power, reduce};

fn check_main_range(n: usize, k: u32) -> Result<()> {
    if k < 2 || n == 0 {
        return Err(Error::invalid(format!("need k >= 2 and n >= 1 (got n={n}, k={k})")));
    }
    if (n as u32) + 3 < 2 * k {
        return Err(Error::invalid(format!("need n >= 2k - 3 (got n={n}, k={k})")));
    }
    Ok(())
}

/// `(-1)^{(k-1)n} (x_1 - 1)^k ... (x_n - 1)^k`.
pub fn seed_q<F: Field>(field: &F, n: usize, k: u32) -> Result<SparsePolynomial<F>> {
    if k < 2 || n == 0 {
        return Err(Error::invalid(format!("need k >= 2 and n >= 1 (got n={n}, k={k})")));
    }
    let base = coordinate_product_power(field, n, k);
    Ok(if ((k - 1) as usize * n) % 2 == 1 { -base } else { base })
}

/// The reduced form of [`seed_q`]: symmetric, in `V_k`, of degree
/// `n + 2k - 3`, with value `(-1)^n` at the origin.
pub fn witness_main<F: Field>(field: &F, n: usize, k: u32) -> Result<SparsePolynomial<F>> {
    check_main_range(n, k)?;
    Ok(reduce(&seed_q(field, n, k)?, k)?.reduced)
}

/// The reduced form of `x_1^l (x_1 - 1)^k ... (x_n - 1)^k`, `0 <= l <= k - 2`.
pub fn witness_ell<F: Field>(field: &F, n: usize, k: u32, ell: u32) -> Result<SparsePolynomial<F>> {
    check_main_range(n, k)?;
    if ell + 2 > k {
        return Err(Error::invalid(format!("need 0 <= l <= k - 2 (got l={ell}, k={k})")));
    }
    let base = coordinate_product_power(field, n, k);
    let mut q = SparsePolynomial::zero(field.clone(), n);
    q.sub_scaled_shifted(&field.neg(&field.one()), &ExponentVector::zero(n).with(0, ell), &base);
    Ok(reduce(&q, k)?.reduced)
}

/// `x_1^{k-1} (x_1 - 1)^{k-1} (x_1 - 1) ... (x_n - 1)`, of degree `n + 2k - 2`
/// with origin multiplicity exactly `k - 1`.
pub fn witness_exact_kminus1<F: Field>(field: &F, n: usize, k: u32) -> Result<SparsePolynomial<F>> {
    if k == 0 || n == 0 {
        return Err(Error::invalid(format!("need k >= 1 and n >= 1 (got n={n}, k={k})")));
    }
    let x1 = SparsePolynomial::variable(field.clone(), n, 0);
    let x1_minus_one = x1.checked_sub(&SparsePolynomial::one(field.clone(), n))?;
    let front = x1.pow(k - 1).checked_mul(&x1_minus_one.pow(k - 1))?;
    let forms: Vec<AffineForm<F>> = (0..n)
        .map(|i| AffineForm::coordinate_minus_one(field.clone(), n, i))
        .collect();
    front.checked_mul(&product_of_affine_forms(field, n, &forms)?)
}

/// `a_0, ..., a_{k-1}` with `a_{2m} = C(k-1-m, m)`, `a_{2m-1} = -C(k-1-m, m-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ACoefficients {
    k: u32,
    values: Vec<BigInt>,
}

impl ACoefficients {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// `a_d`, zero for `d >= k`.
    pub fn get(&self, d: u32) -> BigInt {
        self.values.get(d as usize).cloned().unwrap_or_else(BigInt::zero)
    }
}

pub fn a_coefficients(k: u32) -> Result<ACoefficients> {
    if k < 2 {
        return Err(Error::invalid(format!("a_d needs k >= 2 (got {k})")));
    }
    let kk = k as i64;
    let values = (0..k as i64)
        .map(|d| {
            if d % 2 == 0 {
                let m = d / 2;
                binomial(kk - 1 - m, m).unwrap_or_else(|_| BigInt::zero())
            } else {
                let m = (d + 1) / 2;
                -binomial(kk - 1 - m, m - 1).unwrap_or_else(|_| BigInt::zero())
            }
        })
        .collect();
    Ok(ACoefficients { k, values })
}

/// Checks `(-1)^{l-1} (x - 1)^l = sum_m C(l-1-m, m) x^m (x-1)^{m+1}
/// - sum_m C(l-1-m, m-1) x^m (x-1)^m` in one variable at `l = k`, and that the
/// top-degree parts of the summands, `x^{2m+1}` and `x^{2m}`, carry exactly
/// `a_{2m}` and `a_{2m-1}`.
pub fn a_coefficients_expansion_check(k: u32) -> Result<bool> {
    let a = a_coefficients(k)?;
    let q = crate::field::Rationals;
    let x = SparsePolynomial::variable(q, 1, 0);
    let xm1 = x.checked_sub(&SparsePolynomial::one(q, 1))?;
    let lhs = {
        let p = xm1.pow(k);
        if k.is_multiple_of(2) { -p } else { p }
    };
    let kk = k as i64;
    let mut rhs = SparsePolynomial::zero(q, 1);
    let mut tops = vec![BigInt::zero(); k as usize];
    for m in 0..kk {
        let c = binomial(kk - 1 - m, m)?;
        if !c.is_zero() {
            let term = x.pow(m as u32).checked_mul(&xm1.pow(m as u32 + 1))?;
            rhs = rhs.checked_add(&term.scale(&q.from_bigint(&c)))?;
            tops[(2 * m) as usize] += &c;
        }
        let c = binomial(kk - 1 - m, m - 1)?;
        if m >= 1 && !c.is_zero() {
            let term = x.pow(m as u32).checked_mul(&xm1.pow(m as u32))?;
            rhs = rhs.checked_sub(&term.scale(&q.from_bigint(&c)))?;
            tops[(2 * m - 1) as usize] -= &c;
        }
    }
    Ok(lhs == rhs && tops == a.values)
}

/// `sum a_{d_1} ... a_{d_n} x_1^{d_1+1} ... x_n^{d_n+1}` over `d` with
/// `|d| = 2k - 3` and exactly one odd `d_i`.
pub fn phi_p_direct<F: Field>(field: &F, n: usize, k: u32) -> Result<SparsePolynomial<F>> {
    check_main_range(n, k)?;
    let a = a_coefficients(k)?;
    let a_field: Vec<F::Elem> = (0..2 * k).map(|d| field.from_bigint(&a.get(d))).collect();
    let mut out = SparsePolynomial::zero(field.clone(), n);
    for d in monomials_of_degree(n, 2 * k - 3) {
        if d.exps().iter().filter(|x| *x % 2 == 1).count() != 1 || d.exps().iter().any(|&x| x >= k) {
            continue;
        }
        let c = d
            .exps()
            .iter()
            .fold(field.one(), |acc, &x| field.mul(&acc, &a_field[x as usize]));
        let shifted: Vec<u32> = d.exps().iter().map(|x| x + 1).collect();
        out.add_term(ExponentVector::from(shifted), c);
    }
    Ok(out)
}

/// `sum (-1)^t (-a_{2m_1-1}) a_{2m_2} ... a_{2m_t}` over compositions
/// `(m_1, ..., m_t)` of `k - 1`; equal to
/// `sum (-1)^t C(k-1-m_1, m_1-1) C(k-1-m_2, m_2) ... C(k-1-m_t, m_t)`.
pub fn leading_coefficient(k: u32) -> Result<BigInt> {
    let a = a_coefficients(k)?;
    if k - 1 > COMPOSITION_LIMIT {
        return Err(Error::EnumerationLimit {
            nvars: (k - 1) as usize,
            limit: COMPOSITION_LIMIT as usize,
        });
    }
    Ok(compositions(k - 1)
        .map(|c| {
            let p = c.parts();
            let sign = if p.len() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            p[1..]
                .iter()
                .fold(sign * -a.get(2 * p[0] - 1), |acc, &m| acc * a.get(2 * m))
        })
        .sum())
}

/// `(-1)^{k-1} C_{k-2}`.
pub fn leading_coefficient_closed_form(k: u32) -> Result<BigInt> {
    if k < 2 {
        return Err(Error::invalid(format!("need k >= 2 (got {k})")));
    }
    let c = catalan(k - 2);
    Ok(if k.is_multiple_of(2) { -c } else { c })
}

/// Index pattern of one sum in the bracketed GF(2) factor: exponents
/// attached to index tuples that are either pairwise distinct in any order
/// or strictly increasing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexPattern {
    Distinct,
    Increasing,
}

/// The bracket `1 + sum_i (x_i^3 + x_i^2 + x_i) + sum_{i != j} (x_i^3 + x_i^2) x_j
/// + sum_{i<j} x_i x_j + sum_{i<j<k} x_i x_j x_k`, term by term.
pub const F2_BRACKET: &[(&[u32], IndexPattern)] = &[
    (&[], IndexPattern::Increasing),
    (&[3], IndexPattern::Increasing),
    (&[2], IndexPattern::Increasing),
    (&[1], IndexPattern::Increasing),
    (&[3, 1], IndexPattern::Distinct),
    (&[2, 1], IndexPattern::Distinct),
    (&[1, 1], IndexPattern::Increasing),
    (&[1, 1, 1], IndexPattern::Increasing),
];

fn expand_pattern<F: Field>(field: &F, n: usize, exps: &[u32], pattern: IndexPattern, out: &mut SparsePolynomial<F>) {
    fn rec<F: Field>(
        field: &F,
        exps: &[u32],
        pattern: IndexPattern,
        chosen: &mut Vec<usize>,
        n: usize,
        out: &mut SparsePolynomial<F>,
    ) {
        if chosen.len() == exps.len() {
            let mut e = vec![0u32; n];
            for (&i, &x) in chosen.iter().zip(exps) {
                e[i] += x;
            }
            out.add_term(ExponentVector::from(e), field.one());
            return;
        }
        let start = match (pattern, chosen.last()) {
            (IndexPattern::Increasing, Some(&last)) => last + 1,
            _ => 0,
        };
        for i in start..n {
            if chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            rec(field, exps, pattern, chosen, n, out);
            chosen.pop();
        }
    }
    rec(field, exps, pattern, &mut Vec::new(), n, out);
}

/// The GF(2) polynomial `prod (x_l + 1) * bracket` of degree `n + 4` with
/// multiplicity `>= 4` at every nonzero point of `{0,1}^n` and value 1 at
/// the origin.
pub fn f2_counterexample(n: usize) -> Result<SparsePolynomial<PrimeField>> {
    if n < 5 {
        return Err(Error::invalid(format!("the GF(2) counterexample needs n >= 5 (got {n})")));
    }
    let g = PrimeField::new(2)?;
    let mut bracket = SparsePolynomial::zero(g, n);
    for (exps, pattern) in F2_BRACKET {
        expand_pattern(&g, n, exps, *pattern, &mut bracket);
    }
    let forms: Vec<AffineForm<PrimeField>> = (0..n)
        .map(|i| AffineForm::coordinate_minus_one(g, n, i))
        .collect();
    // x + 1 = x - 1 over GF(2)
    product_of_affine_forms(&g, n, &forms)?.checked_mul(&bracket)
}

/// Smallest `k >= 2` with `p | C_{k-2}`, from the `p`-adic valuation
/// `v_p(C_m) = v_p((2m)!) - v_p(m!) - v_p((m+1)!)`; searched up to `k = 4p`.
pub fn smallest_failing_k(p: u64) -> Result<u64> {
    PrimeField::new(p)?;
    let legendre = |mut m: u64| {
        let mut v = 0;
        while m > 0 {
            m /= p;
            v += m;
        }
        v
    };
    (2..=4 * p)
        .find(|&k| {
            let m = k - 2;
            legendre(2 * m) > legendre(m) + legendre(m + 1)
        })
        .ok_or_else(|| Error::invalid(format!("no failing k <= {} for p = {p}", 4 * p)))
}

/// Same search via `C_i = C_{i-1} 2(2i-1)/(i+1)` in exact integers, reduced
/// mod `p` afterwards. Searched up to `k = bound`.
pub fn smallest_failing_k_by_recurrence(p: u64, bound: u64) -> Result<Option<u64>> {
    PrimeField::new(p)?;
    let mut c = BigInt::one();
    let pb = BigInt::from(p);
    for k in 2..=bound {
        let i = k - 2;
        if i > 0 {
            c = c * BigInt::from(2 * (2 * i - 1)) / BigInt::from(i + 1);
        }
        if (&c % &pb).is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Coverage of `{0,1}^n` by the zero sets of affine forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub nvars: usize,
    pub k: u32,
    pub forms: usize,
    /// Forms vanishing at each point, nonzero points first, origin last.
    pub counts: Vec<(HypercubePoint, u32)>,
    pub origin_covered: bool,
    /// `None` when `n = 0`.
    pub min_coverage_off_origin: Option<u32>,
}

impl CoverReport {
    /// No form vanishes at the origin and every nonzero point is covered at
    /// least `k` times.
    pub fn satisfies_hypotheses(&self) -> bool {
        !self.origin_covered && self.min_coverage_off_origin.is_some_and(|m| m >= self.k)
    }

    /// Lower bound on the number of forms for valid configurations: `n`
    /// for `k = 1`, `n + 2k - 3` for `k >= 2` and `n >= 2k - 3`.
    pub fn lower_bound(&self) -> Option<usize> {
        cover_lower_bound(self.nvars, self.k)
    }
}

pub fn cover_lower_bound(n: usize, k: u32) -> Option<usize> {
    match k {
        0 => None,
        1 => Some(n),
        _ if n + 3 >= 2 * k as usize => Some(n + 2 * k as usize - 3),
        _ => None,
    }
}

pub fn cover_verify<F: Field>(forms: &[AffineForm<F>], k: u32) -> Result<CoverReport> {
    cover_verify_with_limit(forms, k, DEFAULT_ENUMERATION_LIMIT)
}

pub fn cover_verify_with_limit<F: Field>(forms: &[AffineForm<F>], k: u32, limit: usize) -> Result<CoverReport> {
    let Some(first) = forms.first() else {
        return Err(Error::invalid("no forms given"));
    };
    let n = first.nvars();
    if let Some(bad) = forms.iter().find(|f| f.nvars() != n) {
        return Err(Error::VariableMismatch { left: n, right: bad.nvars() });
    }
    hypercube::check_enumeration(n, limit)?;
    let field = first.field();
    let counts: Vec<(HypercubePoint, u32)> = hypercube::all_points(n)
        .map(|a| {
            let c = forms.iter().filter(|f| field.is_zero(&f.evaluate_at(&a))).count() as u32;
            (a, c)
        })
        .collect();
    let origin_covered = counts.last().is_some_and(|(_, c)| *c > 0);
    let min_coverage_off_origin = counts[..counts.len() - 1].iter().map(|(_, c)| *c).min();
    Ok(CoverReport {
        nvars: n,
        k,
        forms: forms.len(),
        counts,
        origin_covered,
        min_coverage_off_origin,
    })
}
