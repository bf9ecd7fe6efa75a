//! Reduction to `k`-reduced form and the spaces `U_k`, `V_k`.
//!
//! A polynomial is *k-reduced* when its degree is at most `n + 2k - 3` and no
//! monomial is divisible by a product of `k` variable squares. A monomial is
//! *bad* when it is divisible by such a product (kind
//! [`BadKind::SquaresProduct`]) or equals `x_{i_1}^2 ... x_{i_{k-1}}^2 x_1 ... x_n`
//! (kind [`BadKind::SquaresTimesAllVars`]). Each rewriting step subtracts a
//! multiple of a polynomial vanishing to order `k` on the nonzero hypercube
//! points and to order `k - 1` at the origin whose top monomial is the bad
//! one and whose other monomials have lower degree, so the Taylor data
//! recorded by `psi_k` is unchanged.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hypercube;
use crate::linalg;
use crate::monomial::{monomials_up_to, orders_below, ExponentVector};
use crate::poly::SparsePolynomial;
use crate::vanishing::{derivative_indices, multiplicity_profile, EvaluationMatrix};

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2 (got {k})")));
    }
    Ok(())
}

fn binomial_u64(a: u64, b: u64) -> Result<u64> {
    if b > a {
        return Ok(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 1..=b as u128 {
        acc = acc * (a as u128 - b as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return Err(Error::invalid(format!("C({a}, {b}) overflows u64")));
        }
    }
    Ok(acc as u64)
}

/// `M_t(n)`: the number of `n`-tuples of non-negative integers with sum
/// `< t`, which is `C(n + t - 1, n)`.
pub fn m_count(t: u32, n: usize) -> Result<u64> {
    if t == 0 || n == 0 {
        return Err(Error::invalid(format!("M_t(n) needs t >= 1, n >= 1 (got t={t}, n={n})")));
    }
    binomial_u64(n as u64 + t as u64 - 1, n as u64)
}

/// `dim U_k = (2^n - 1) M_k(n) + M_{k-1}(n)`.
pub fn uk_dimension(n: usize, k: u32) -> Result<u64> {
    check_k(k)?;
    if n == 0 || n >= 64 {
        return Err(Error::invalid(format!("n must be in 1..64 (got {n})")));
    }
    ((1u64 << n) - 1)
        .checked_mul(m_count(k, n)?)
        .and_then(|a| a.checked_add(m_count(k - 1, n).ok()?))
        .ok_or_else(|| Error::invalid("dimension overflows u64"))
}

fn half_sum(e: &ExponentVector) -> u32 {
    e.exps().iter().map(|x| x / 2).sum()
}

/// Degree bound `n + 2k - 3` and no monomial with `sum floor(e_i / 2) >= k`.
pub fn is_k_reduced<F: Field>(p: &SparsePolynomial<F>, k: u32) -> bool {
    let bound = p.nvars() as u32 + 2 * k - 3;
    p.terms()
        .all(|(e, _)| e.degree() <= bound && half_sum(e) < k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BadKind {
    /// Divisible by `x_{i_1}^2 ... x_{i_k}^2`.
    SquaresProduct,
    /// Equal to `x_{i_1}^2 ... x_{i_{k-1}}^2 x_1 ... x_n`.
    SquaresTimesAllVars,
}

/// A bad monomial together with the squares used to rewrite it.
/// `square_indices` are 0-based, ascending, with repetition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BadMonomialWitness {
    pub monomial: ExponentVector,
    pub kind: BadKind,
    pub square_indices: Vec<usize>,
}

impl BadMonomialWitness {
    /// Number of squares taken from each variable.
    pub fn square_counts(&self) -> Vec<u32> {
        let mut c = vec![0; self.monomial.nvars()];
        for &i in &self.square_indices {
            c[i] += 1;
        }
        c
    }
}

fn indices_from_counts(counts: &[u32]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c as usize))
        .collect()
}

/// Classify one monomial; squares are taken greedily from the lowest index.
pub fn classify_monomial(e: &ExponentVector, k: u32) -> Option<BadMonomialWitness> {
    let halves: Vec<u32> = e.exps().iter().map(|x| x / 2).collect();
    let total: u32 = halves.iter().sum();
    if total >= k {
        let mut left = k;
        let counts: Vec<u32> = halves
            .iter()
            .map(|&h| {
                let take = h.min(left);
                left -= take;
                take
            })
            .collect();
        return Some(BadMonomialWitness {
            monomial: e.clone(),
            kind: BadKind::SquaresProduct,
            square_indices: indices_from_counts(&counts),
        });
    }
    if total == k - 1 && e.exps().iter().all(|x| x % 2 == 1) {
        return Some(BadMonomialWitness {
            monomial: e.clone(),
            kind: BadKind::SquaresTimesAllVars,
            square_indices: indices_from_counts(&halves),
        });
    }
    None
}

/// Every valid rewriting of `e`: each choice of `k` squares dividing it, or
/// the unique form-(b) decomposition.
fn all_witnesses(e: &ExponentVector, k: u32) -> Vec<BadMonomialWitness> {
    let Some(first) = classify_monomial(e, k) else {
        return Vec::new();
    };
    if first.kind == BadKind::SquaresTimesAllVars {
        return vec![first];
    }
    let halves: Vec<u32> = e.exps().iter().map(|x| x / 2).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u32; halves.len()];
    fn rec(i: usize, left: u32, halves: &[u32], counts: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == halves.len() {
            if left == 0 {
                out.push(counts.clone());
            }
            return;
        }
        for c in 0..=halves[i].min(left) {
            counts[i] = c;
            rec(i + 1, left - c, halves, counts, out);
        }
        counts[i] = 0;
    }
    rec(0, k, &halves, &mut counts, &mut out);
    out.into_iter()
        .map(|c| BadMonomialWitness {
            monomial: e.clone(),
            kind: BadKind::SquaresProduct,
            square_indices: indices_from_counts(&c),
        })
        .collect()
}

/// The bad monomial of maximum degree (graded-lex-largest among ties).
pub fn find_bad_monomial<F: Field>(p: &SparsePolynomial<F>, k: u32) -> Option<BadMonomialWitness> {
    p.terms().rev().find_map(|(e, _)| classify_monomial(e, k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult<F: Field> {
    pub reduced: SparsePolynomial<F>,
    pub steps_taken: usize,
}

/// Cached products subtracted by reduction steps, keyed by kind and square counts.
struct StepFactors<F: Field> {
    field: F,
    nvars: usize,
    cache: HashMap<(BadKind, Vec<u32>), SparsePolynomial<F>>,
}

impl<F: Field> StepFactors<F> {
    fn new(field: F, nvars: usize) -> Self {
        StepFactors {
            field,
            nvars,
            cache: HashMap::new(),
        }
    }

    /// `prod x_i^{c_i} (x_i - 1)^{c_i}`, times `prod (x_i - 1)` for kind (b).
    fn factor(&mut self, kind: BadKind, counts: Vec<u32>) -> &SparsePolynomial<F> {
        let (field, n) = (&self.field, self.nvars);
        self.cache.entry((kind, counts)).or_insert_with_key(|(kind, counts)| {
            let extra = (*kind == BadKind::SquaresTimesAllVars) as u32;
            let mut acc = SparsePolynomial::one(field.clone(), n);
            let mut pascal = crate::poly::PascalTable::new(field.clone());
            for (i, &c) in counts.iter().enumerate() {
                let m = c + extra;
                if m == 0 {
                    continue;
                }
                let terms = (0..=m).map(|j| {
                    let b = pascal.get(m, j);
                    let v = if (m - j) % 2 == 1 { field.neg(&b) } else { b };
                    (ExponentVector::zero(n).with(i, c + j), v)
                });
                let f = SparsePolynomial::from_terms(field.clone(), n, terms).expect("n entries");
                acc = &acc * &f;
            }
            acc
        })
    }

    fn apply(&mut self, p: &mut SparsePolynomial<F>, w: &BadMonomialWitness) {
        let c = p.coeff(&w.monomial);
        let counts = w.square_counts();
        let shift = match w.kind {
            BadKind::SquaresProduct => {
                let doubled: Vec<u32> = counts.iter().map(|c| 2 * c).collect();
                w.monomial
                    .checked_sub(&ExponentVector::from(doubled))
                    .expect("squares divide the monomial")
            }
            BadKind::SquaresTimesAllVars => ExponentVector::zero(self.nvars),
        };
        let f = self.factor(w.kind, counts).clone();
        p.sub_scaled_shifted(&c, &shift, &f);
    }
}

/// Rewrite bad monomials, largest first, until `q` is `k`-reduced.
pub fn reduce<F: Field>(q: &SparsePolynomial<F>, k: u32) -> Result<ReductionResult<F>> {
    check_k(k)?;
    let mut p = q.clone();
    let mut factors = StepFactors::new(q.field().clone(), q.nvars());
    let mut steps = 0;
    // every step replaces the current monomial by strictly smaller ones, so
    // one descending pass over the terms suffices
    let mut cursor: Option<ExponentVector> = None;
    while let Some((e, _)) = p.last_term_below(cursor.as_ref()) {
        let e = e.clone();
        if let Some(w) = classify_monomial(&e, k) {
            factors.apply(&mut p, &w);
            steps += 1;
        }
        cursor = Some(e);
    }
    Ok(ReductionResult {
        reduced: p,
        steps_taken: steps,
    })
}

/// Reduction with caller-chosen steps: at each step `select` picks among all
/// valid rewritings of all bad monomials of maximum degree (index taken
/// modulo the candidate count).
pub fn reduce_with<F: Field>(
    q: &SparsePolynomial<F>,
    k: u32,
    mut select: impl FnMut(&[BadMonomialWitness]) -> usize,
) -> Result<ReductionResult<F>> {
    check_k(k)?;
    let mut p = q.clone();
    let mut factors = StepFactors::new(q.field().clone(), q.nvars());
    let mut steps = 0;
    loop {
        let mut top: Option<u32> = None;
        let mut candidates = Vec::new();
        for (e, _) in p.terms().rev() {
            if top.is_some_and(|d| e.degree() < d) {
                break;
            }
            let ws = all_witnesses(e, k);
            if !ws.is_empty() {
                top = Some(e.degree());
                candidates.extend(ws);
            }
        }
        if candidates.is_empty() {
            break;
        }
        let i = select(&candidates) % candidates.len();
        factors.apply(&mut p, &candidates[i]);
        steps += 1;
    }
    Ok(ReductionResult {
        reduced: p,
        steps_taken: steps,
    })
}

/// Monomials spanning `U_k`: degree `<= n + 2k - 3`, fewer than `k` squares.
pub fn uk_monomial_basis(n: usize, k: u32) -> Result<Vec<ExponentVector>> {
    check_k(k)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    Ok(monomials_up_to(n, n as u32 + 2 * k - 3)
        .into_iter()
        .filter(|e| half_sum(e) < k)
        .collect())
}

/// `k`-reduced and multiplicity `>= k` at every nonzero hypercube point.
pub fn is_in_vk<F: Field>(p: &SparsePolynomial<F>, k: u32) -> Result<bool> {
    check_k(k)?;
    Ok(is_k_reduced(p, k) && multiplicity_profile(p)?.vanishes_off_origin(k))
}

/// Canonical basis of `V_k`: the null space of the off-origin `psi_k` rows on
/// `U_k`, in reduced row-echelon form over ascending graded-lex coordinates
/// (first nonzero coefficient 1).
pub fn vk_basis<F: Field>(field: &F, n: usize, k: u32) -> Result<Vec<SparsePolynomial<F>>> {
    let columns = uk_monomial_basis(n, k)?;
    hypercube::check_enumeration(n, hypercube::DEFAULT_ENUMERATION_LIMIT)?;
    let rows = hypercube::nonzero_points(n)
        .flat_map(|a| derivative_indices(a, k))
        .collect();
    let matrix = EvaluationMatrix::new(field.clone(), rows, columns);
    let kernel = matrix.null_space();
    let canonical = linalg::canonical_basis(field, matrix.columns().len(), &kernel);
    Ok(canonical.iter().map(|v| matrix.polynomial(v, n)).collect())
}

/// `V_k` elements `reduce(x^b (x_1 - 1)^k ... (x_n - 1)^k)` for `|b| < k - 1`.
/// Their origin Taylor data is unitriangular in `b`, so they are
/// independent; together with `dim V_k = M_{k-1}(n)` they form a basis.
pub fn vk_basis_by_reduction<F: Field>(field: &F, n: usize, k: u32) -> Result<Vec<SparsePolynomial<F>>> {
    check_k(k)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let base = coordinate_product_power(field, n, k);
    orders_below(n, k - 1)
        .into_iter()
        .map(|b| {
            let mut q = SparsePolynomial::zero(field.clone(), n);
            q.sub_scaled_shifted(&field.neg(&field.one()), &b, &base);
            reduce(&q, k).map(|r| r.reduced)
        })
        .collect()
}

/// `(x_1 - 1)^k ... (x_n - 1)^k`.
pub(crate) fn coordinate_product_power<F: Field>(field: &F, n: usize, k: u32) -> SparsePolynomial<F> {
    let mut factors = StepFactors::new(field.clone(), n);
    // kind (b) with zero squares is prod (x_i - 1)
    let linear = factors.factor(BadKind::SquaresTimesAllVars, vec![0; n]).clone();
    linear.pow(k)
}
