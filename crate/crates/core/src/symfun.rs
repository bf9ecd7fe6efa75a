//! Symmetric polynomials in the monomial basis `m_lambda`, power-sum
//! representations, and coordinates on the `W_k` generators
//! `x_1 ... x_n (x_1^m + ... + x_n^m) x^{2d}` with `m + 2|d| = 2k - 3`.
//!
//! Power-sum representations are only computed up to degree `n`, where
//! they are unique.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg;
use crate::monomial::{monomials_of_degree, ExponentVector};
use crate::poly::SparsePolynomial;

/// A weakly decreasing sequence of positive integers. Ordered
/// lexicographically, which refines the dominance order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition { parts })
    }

    /// Sort into a partition, dropping zeros.
    pub fn from_multiset(values: &[u32]) -> Self {
        let mut parts: Vec<u32> = values.iter().copied().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of odd parts.
    pub fn odd_parts(&self) -> usize {
        self.parts.iter().filter(|p| *p % 2 == 1).count()
    }

    /// `prod_v (multiplicity of v)!`.
    fn multiplicity_factorial(&self) -> u64 {
        let mut out = 1u64;
        let mut run = 0u64;
        for (i, p) in self.parts.iter().enumerate() {
            run = if i > 0 && self.parts[i - 1] == *p { run + 1 } else { 1 };
            out *= run;
        }
        out
    }

    fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(n, 0);
        v
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A symmetric polynomial as coordinates on the monomial symmetric
/// polynomials `m_lambda` (partitions with at most `n` parts).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPolynomial<F: Field> {
    field: F,
    nvars: usize,
    coeffs: BTreeMap<Partition, F::Elem>,
}

impl<F: Field> SymmetricPolynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        SymmetricPolynomial {
            field,
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(
        field: F,
        nvars: usize,
        coeffs: impl IntoIterator<Item = (Partition, F::Elem)>,
    ) -> Result<Self> {
        let mut s = Self::zero(field, nvars);
        for (p, c) in coeffs {
            if p.len() > nvars {
                return Err(Error::invalid(format!("partition {p} has more than {nvars} parts")));
            }
            s.add(p, c);
        }
        Ok(s)
    }

    fn add(&mut self, p: Partition, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        let f = &self.field;
        let entry = self.coeffs.entry(p).or_insert_with(|| f.zero());
        *entry = f.add(entry, &c);
        if f.is_zero(entry) {
            self.coeffs.retain(|_, v| !f.is_zero(v));
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, F::Elem> {
        &self.coeffs
    }

    pub fn coeff(&self, p: &Partition) -> F::Elem {
        self.coeffs.get(p).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(Partition::weight).max()
    }

    /// Full expansion over every orbit.
    pub fn expand(&self) -> SparsePolynomial<F> {
        let mut out = SparsePolynomial::zero(self.field.clone(), self.nvars);
        for (p, c) in &self.coeffs {
            let mut v = p.padded(self.nvars);
            v.sort_unstable();
            loop {
                out.add_term(ExponentVector::from(v.clone()), c.clone());
                if !next_permutation(&mut v) {
                    break;
                }
            }
        }
        out
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("successor exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Partition-indexed form of a symmetric polynomial.
pub fn to_symmetric<F: Field>(p: &SparsePolynomial<F>) -> Result<SymmetricPolynomial<F>> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut s = SymmetricPolynomial::zero(p.field().clone(), p.nvars());
    for (e, c) in p.terms() {
        let mut sorted = e.exps().to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted == e.exps() {
            s.add(Partition::from_multiset(&sorted), c.clone());
        }
    }
    Ok(s)
}

/// `p_r * m_lambda` in the monomial basis: the coefficient of `m_mu` is the
/// number of `i` with `mu_i >= r` and `sort(mu - r e_i) = lambda`.
fn times_power_sum(lambda: &Partition, r: u32, n: usize) -> Vec<(Partition, u64)> {
    let base = lambda.padded(n);
    let mut values: Vec<u32> = base.clone();
    values.dedup();
    let mut out = Vec::new();
    for v in values {
        let pos = base.iter().position(|&x| x == v).expect("value present");
        let mut mu = base.clone();
        mu[pos] += r;
        mu.sort_unstable_by(|a, b| b.cmp(a));
        let count = (0..n)
            .filter(|&i| {
                if mu[i] < r {
                    return false;
                }
                let mut back = mu.clone();
                back[i] -= r;
                back.sort_unstable_by(|a, b| b.cmp(a));
                back == base
            })
            .count() as u64;
        out.push((Partition::from_multiset(&mu), count));
    }
    out
}

/// `p_{m_1} ... p_{m_l}` in the monomial basis.
pub fn powersum_product_expand<F: Field>(field: &F, ms: &[u32], n: usize) -> Result<SymmetricPolynomial<F>> {
    if ms.contains(&0) {
        return Err(Error::invalid("power-sum indices must be positive"));
    }
    let mut cur = SymmetricPolynomial::zero(field.clone(), n);
    cur.add(Partition::empty(), field.one());
    for &r in ms {
        let mut next = SymmetricPolynomial::zero(field.clone(), n);
        for (lambda, c) in &cur.coeffs {
            for (mu, k) in times_power_sum(lambda, r, n) {
                next.add(mu, field.mul(c, &field.from_u64(k)));
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// Coefficients on products of power sums, keyed by the multiset of indices
/// (stored as a partition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumRepresentation<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Partition, F::Elem>,
}

impl<F: Field> PowerSumRepresentation<F> {
    pub fn from_terms(
        field: F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Partition, F::Elem)>,
    ) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        PowerSumRepresentation { field, nvars, terms }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, F::Elem> {
        &self.terms
    }

    pub fn coeff(&self, ms: &Partition) -> F::Elem {
        self.terms.get(ms).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn expand(&self) -> Result<SymmetricPolynomial<F>> {
        let mut out = SymmetricPolynomial::zero(self.field.clone(), self.nvars);
        for (ms, c) in &self.terms {
            for (p, v) in powersum_product_expand(&self.field, ms.parts(), self.nvars)?.coeffs {
                out.add(p, self.field.mul(c, &v));
            }
        }
        Ok(out)
    }
}

/// The unique power-sum representation of `s` (degree at most `n`),
/// eliminating the finest remaining partition first: `p_lambda` equals
/// `prod (multiplicity)! * m_lambda` plus coarser terms.
pub fn to_power_sums<F: Field>(s: &SymmetricPolynomial<F>) -> Result<PowerSumRepresentation<F>> {
    let (f, n) = (&s.field, s.nvars);
    if let Some(d) = s.degree() {
        if d as usize > n {
            return Err(Error::DegreeExceedsVariables { degree: d, nvars: n });
        }
    }
    let mut rest = s.clone();
    let mut cache: HashMap<Partition, SymmetricPolynomial<F>> = HashMap::new();
    let mut out = BTreeMap::new();
    while let Some((lambda, c)) = rest.coeffs.iter().next().map(|(p, c)| (p.clone(), c.clone())) {
        let diag = f.from_u64(lambda.multiplicity_factorial());
        let scale = f.div(&c, &diag).map_err(|_| f.characteristic_error())?;
        let expansion = match cache.get(&lambda) {
            Some(e) => e,
            None => {
                let e = powersum_product_expand(f, lambda.parts(), n)?;
                cache.entry(lambda.clone()).or_insert(e)
            }
        };
        for (mu, v) in &expansion.coeffs {
            rest.add(mu.clone(), f.neg(&f.mul(&scale, v)));
        }
        debug_assert!(!rest.coeffs.contains_key(&lambda));
        out.insert(lambda, scale);
    }
    Ok(PowerSumRepresentation {
        field: f.clone(),
        nvars: n,
        terms: out,
    })
}

/// `sum over distinct i_1, ..., i_t of x_{i_1}^{d_1} ... x_{i_t}^{d_t}`, which
/// is `prod (multiplicity)! * m_{sort(d)}` (zero when `t > n`).
pub fn distinct_index_sum<F: Field>(field: &F, d: &[u32], n: usize) -> Result<SymmetricPolynomial<F>> {
    if d.is_empty() || d.contains(&0) {
        return Err(Error::invalid("exponents must be positive and nonempty"));
    }
    let lambda = Partition::from_multiset(d);
    let mut s = SymmetricPolynomial::zero(field.clone(), n);
    if lambda.len() <= n {
        s.add(lambda.clone(), field.from_u64(lambda.multiplicity_factorial()));
    }
    Ok(s)
}

/// `t! (-1)^{t-1} / t = (t-1)! (-1)^{t-1}`, the coefficient of `p_{|d|}` in
/// the power-sum representation of a `t`-fold distinct-index sum.
pub fn newton_coefficient<F: Field>(field: &F, t: usize) -> Result<F::Elem> {
    if t == 0 {
        return Err(Error::invalid("newton_coefficient needs t >= 1"));
    }
    let fact = (1..t as u64).fold(field.one(), |acc, i| field.mul(&acc, &field.from_u64(i)));
    Ok(if t % 2 == 1 { fact } else { field.neg(&fact) })
}

/// Compare [`newton_coefficient`] with the `p_{|d|}` coefficient obtained by
/// decomposing the distinct-index sum.
pub fn newton_check<F: Field>(field: &F, d: &[u32], n: usize) -> Result<bool> {
    let w: u32 = d.iter().sum();
    if w as usize > n {
        return Err(Error::DegreeExceedsVariables { degree: w, nvars: n });
    }
    let rep = to_power_sums(&distinct_index_sum(field, d, n)?)?;
    Ok(rep.coeff(&Partition::from_multiset(&[w])) == newton_coefficient(field, d.len())?)
}

/// Whether the power-sum representation of the distinct-index sum for `d`
/// (exactly one odd entry, `sum d <= n`) only uses multisets of weight
/// `sum d` with exactly one odd part.
pub fn odd_exponent_decomposition_check<F: Field>(field: &F, d: &[u32], n: usize) -> Result<bool> {
    if d.iter().filter(|x| *x % 2 == 1).count() != 1 {
        return Err(Error::OddExponentCount(d.to_vec()));
    }
    let w: u32 = d.iter().sum();
    if w as usize > n {
        return Err(Error::DegreeExceedsVariables { degree: w, nvars: n });
    }
    let rep = to_power_sums(&distinct_index_sum(field, d, n)?)?;
    Ok(rep
        .terms()
        .keys()
        .all(|ms| ms.weight() == w && ms.odd_parts() == 1))
}

/// Index `(m, d)` of a `W_k` generator.
pub type WkIndex = (u32, ExponentVector);

/// The `W_k` generator indices: `m` odd, `m + 2|d| = 2k - 3`; the leading
/// index `(2k - 3, 0)` first, then `m` decreasing, `d` ascending.
pub fn wk_basis_elements(n: usize, k: u32) -> Result<Vec<WkIndex>> {
    if k < 2 || n == 0 {
        return Err(Error::invalid(format!("W_k needs k >= 2, n >= 1 (got n={n}, k={k})")));
    }
    if (n as u32) + 1 < k {
        return Err(Error::invalid(format!("W_k generators are independent only for n >= k - 1 (got n={n}, k={k})")));
    }
    let top = 2 * k - 3;
    Ok((0..=(top - 1) / 2)
        .flat_map(|half| {
            let m = top - 2 * half;
            monomials_of_degree(n, half).into_iter().map(move |d| (m, d))
        })
        .collect())
}

/// `x_1 ... x_n (x_1^m + ... + x_n^m) x^{2d}`.
pub fn wk_generator<F: Field>(field: &F, m: u32, d: &ExponentVector) -> SparsePolynomial<F> {
    let n = d.nvars();
    let base: Vec<u32> = d.exps().iter().map(|e| 2 * e + 1).collect();
    let mut p = SparsePolynomial::zero(field.clone(), n);
    for i in 0..n {
        let mut e = base.clone();
        e[i] += m;
        p.add_term(ExponentVector::from(e), field.one());
    }
    p
}

/// Coordinates on the `W_k` generators, including zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WkCoordinates<F: Field> {
    k: u32,
    coords: Vec<(WkIndex, F::Elem)>,
}

impl<F: Field> WkCoordinates<F> {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// In [`wk_basis_elements`] order.
    pub fn coords(&self) -> &[(WkIndex, F::Elem)] {
        &self.coords
    }

    pub fn values(&self) -> Vec<F::Elem> {
        self.coords.iter().map(|(_, c)| c.clone()).collect()
    }

    pub fn get(&self, m: u32, d: &ExponentVector) -> Option<&F::Elem> {
        self.coords.iter().find(|((mm, dd), _)| *mm == m && dd == d).map(|(_, c)| c)
    }

    /// The coordinate of `x_1 ... x_n (x_1^{2k-3} + ... + x_n^{2k-3})`.
    pub fn leading(&self) -> &F::Elem {
        &self.coords[0].1
    }
}

fn check_wk_input<F: Field>(h: &SparsePolynomial<F>, n: usize, k: u32) -> Result<SparsePolynomial<F>> {
    if h.nvars() != n {
        return Err(Error::VariableMismatch { left: h.nvars(), right: n });
    }
    let degree = n as u32 + 2 * k - 3;
    if !h.is_homogeneous(degree) {
        return Err(Error::NotHomogeneous { expected: degree });
    }
    h.divide_by_monomial(&ExponentVector::from(vec![1; n]))
        .ok_or(Error::NotDivisibleByVariableProduct)
}

/// `W_k` coordinates of a symmetric `h` through its power-sum
/// representation: `h / (x_1 ... x_n)` is a combination of `p_m prod p_{2e_j}`
/// with `m` the unique odd part, and `prod_j p_{2e_j}` expands to
/// `sum_d [x^d](prod_j p_{e_j}) x^{2d}`.
pub fn express_in_wk<F: Field>(h: &SparsePolynomial<F>, n: usize, k: u32) -> Result<WkCoordinates<F>> {
    let index = wk_basis_elements(n, k)?;
    if (n as u32) + 3 < 2 * k {
        return Err(Error::invalid(format!("express_in_wk needs n >= 2k - 3 (got n={n}, k={k})")));
    }
    let r = check_wk_input(h, n, k)?;
    for (e, _) in r.terms() {
        if e.exps().iter().filter(|x| *x % 2 == 1).count() != 1 {
            return Err(Error::OddExponentCount(e.exps().to_vec()));
        }
    }
    let f = h.field();
    let rep = to_power_sums(&to_symmetric(&r)?)?;
    let mut acc: BTreeMap<WkIndex, F::Elem> = BTreeMap::new();
    for (ms, c) in rep.terms() {
        let odd: Vec<u32> = ms.parts().iter().copied().filter(|p| p % 2 == 1).collect();
        if odd.len() != 1 {
            return Err(Error::OddExponentCount(ms.parts().to_vec()));
        }
        let halves: Vec<u32> = ms.parts().iter().filter(|p| *p % 2 == 0).map(|p| p / 2).collect();
        let mut prod = SparsePolynomial::one(f.clone(), n);
        for e in halves {
            let mut ps = SparsePolynomial::zero(f.clone(), n);
            for i in 0..n {
                ps.add_term(ExponentVector::zero(n).with(i, e), f.one());
            }
            prod = &prod * &ps;
        }
        for (d, v) in prod.terms() {
            let slot = acc.entry((odd[0], d.clone())).or_insert_with(|| f.zero());
            *slot = f.add(slot, &f.mul(c, v));
        }
    }
    let coords = index
        .into_iter()
        .map(|ix| {
            let v = acc.remove(&ix).unwrap_or_else(|| f.zero());
            (ix, v)
        })
        .collect();
    if acc.values().any(|v| !f.is_zero(v)) {
        return Err(Error::NotInWk);
    }
    Ok(WkCoordinates { k, coords })
}

/// `W_k` coordinates by solving the linear system on monomials; works for
/// any `h`, symmetric or not. Fails with [`Error::NotInWk`] outside `W_k`.
pub fn express_in_wk_by_solve<F: Field>(h: &SparsePolynomial<F>, n: usize, k: u32) -> Result<WkCoordinates<F>> {
    let index = wk_basis_elements(n, k)?;
    if !h.is_zero() {
        check_wk_input(h, n, k)?;
    }
    let f = h.field();
    let gens: Vec<SparsePolynomial<F>> = index.iter().map(|(m, d)| wk_generator(f, *m, d)).collect();
    let mut monomials: Vec<ExponentVector> = gens
        .iter()
        .flat_map(|g| g.terms().map(|(e, _)| e.clone()))
        .chain(h.terms().map(|(e, _)| e.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let rows: Vec<Vec<F::Elem>> = monomials
        .iter()
        .map(|e| gens.iter().map(|g| g.coeff(e)).collect())
        .collect();
    let rhs: Vec<F::Elem> = monomials.iter().map(|e| h.coeff(e)).collect();
    let x = linalg::solve(f, gens.len(), &rows, &rhs).ok_or(Error::NotInWk)?;
    Ok(WkCoordinates {
        k,
        coords: index.into_iter().zip(x).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    type QPoly = SparsePolynomial<Rationals>;

    fn q(v: i64) -> num_rational::BigRational {
        Rationals.from_i64(v)
    }

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> QPoly {
        QPoly::from_terms(
            Rationals,
            n,
            terms.iter().map(|(e, c)| (ExponentVector::from(e.to_vec()), q(*c))),
        )
        .unwrap()
    }

    #[test]
    fn to_symmetric_examples() {
        let s = to_symmetric(&poly(2, &[(&[1, 0], 1), (&[0, 1], 1)])).unwrap();
        assert_eq!(s.coeffs().len(), 1);
        assert_eq!(s.coeff(&part(&[1])), q(1));
        let s = to_symmetric(&poly(2, &[(&[1, 2], 1), (&[2, 1], 1)])).unwrap();
        assert_eq!(s.coeff(&part(&[2, 1])), q(1));
        assert!(matches!(
            to_symmetric(&poly(2, &[(&[1, 0], 1), (&[0, 1], -1)])),
            Err(Error::NotSymmetric)
        ));
    }

    #[test]
    fn power_sum_products() {
        let s = powersum_product_expand(&Rationals, &[1, 1], 3).unwrap();
        assert_eq!(s.coeff(&part(&[2])), q(1));
        assert_eq!(s.coeff(&part(&[1, 1])), q(2));
        let s = powersum_product_expand(&Rationals, &[3], 2).unwrap();
        assert_eq!(s.coeffs().len(), 1);
        let s = powersum_product_expand(&Rationals, &[1, 2], 3).unwrap();
        assert_eq!(s.coeff(&part(&[3])), q(1));
        assert_eq!(s.coeff(&part(&[2, 1])), q(1));
        assert_eq!(s.coeffs().len(), 2);
    }

    #[test]
    fn expansion_matches_direct_product() {
        let n = 3;
        for ms in [&[1u32, 1][..], &[2, 1], &[1, 1, 1], &[2, 2]] {
            let direct = ms.iter().fold(QPoly::one(Rationals, n), |acc, &r| {
                let ps = (0..n).fold(QPoly::zero(Rationals, n), |s, i| {
                    &s + &QPoly::monomial(Rationals, ExponentVector::zero(n).with(i, r), q(1))
                });
                &acc * &ps
            });
            assert_eq!(powersum_product_expand(&Rationals, ms, n).unwrap().expand(), direct);
        }
    }

    #[test]
    fn power_sum_representations() {
        let half = num_rational::BigRational::new(1.into(), 2.into());
        let s = SymmetricPolynomial::from_coeffs(Rationals, 2, [(part(&[1, 1]), q(1))]).unwrap();
        let rep = to_power_sums(&s).unwrap();
        assert_eq!(rep.coeff(&part(&[1, 1])), half);
        assert_eq!(rep.coeff(&part(&[2])), -half);
        let rep = to_power_sums(&powersum_product_expand(&Rationals, &[4], 5).unwrap()).unwrap();
        assert_eq!(rep.terms().len(), 1);
        let rep = to_power_sums(&distinct_index_sum(&Rationals, &[1, 2], 3).unwrap()).unwrap();
        assert_eq!(rep.coeff(&part(&[2, 1])), q(1));
        assert_eq!(rep.coeff(&part(&[3])), q(-1));
        assert_eq!(rep.terms().len(), 2);
        let big = SymmetricPolynomial::from_coeffs(Rationals, 2, [(part(&[2, 1]), q(1))]).unwrap();
        assert!(matches!(to_power_sums(&big), Err(Error::DegreeExceedsVariables { .. })));
    }

    #[test]
    fn small_characteristic_is_rejected() {
        let g = PrimeField::new(2).unwrap();
        let s = SymmetricPolynomial::from_coeffs(g, 2, [(part(&[1, 1]), 1)]).unwrap();
        assert!(matches!(to_power_sums(&s), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn newton_values() {
        assert_eq!(newton_coefficient(&Rationals, 1).unwrap(), q(1));
        assert_eq!(newton_coefficient(&Rationals, 2).unwrap(), q(-1));
        assert_eq!(newton_coefficient(&Rationals, 3).unwrap(), q(2));
        assert!(newton_check(&Rationals, &[1, 1, 1], 3).unwrap());
        assert!(odd_exponent_decomposition_check(&Rationals, &[1], 2).unwrap());
        assert!(odd_exponent_decomposition_check(&Rationals, &[1, 2], 3).unwrap());
        assert!(odd_exponent_decomposition_check(&Rationals, &[3, 2, 2], 7).unwrap());
        assert!(odd_exponent_decomposition_check(&Rationals, &[1, 1], 3).is_err());
    }

    #[test]
    fn wk_indices() {
        assert_eq!(wk_basis_elements(3, 2).unwrap(), vec![(1, ExponentVector::zero(3))]);
        let four = wk_basis_elements(3, 3).unwrap();
        assert_eq!(four.len(), 4);
        assert_eq!(four[0], (3, ExponentVector::zero(3)));
        assert!(four[1..].iter().all(|(m, d)| *m == 1 && d.degree() == 1));
        // M_3(5) = C(7, 5)
        assert_eq!(wk_basis_elements(5, 4).unwrap().len(), 21);
        for (n, k) in [(3, 2), (3, 3), (4, 3), (5, 4), (6, 4)] {
            let count = wk_basis_elements(n, k).unwrap().len() as u64;
            assert_eq!(count, crate::reduction::m_count(k - 1, n).unwrap());
        }
    }

    #[test]
    fn generators_have_unit_coordinates() {
        let (n, k) = (3, 3);
        for (m, d) in wk_basis_elements(n, k).unwrap() {
            let h = wk_generator(&Rationals, m, &d);
            let mut routes = vec![express_in_wk_by_solve(&h, n, k).unwrap()];
            if d.is_constant() {
                routes.push(express_in_wk(&h, n, k).unwrap());
            }
            for c in routes {
                for ((mm, dd), v) in c.coords() {
                    let expect = (*mm == m && *dd == d) as i64;
                    assert_eq!(*v, q(expect));
                }
            }
        }
    }

    #[test]
    fn symmetric_route_matches_solve_on_orbit_sums() {
        let (n, k) = (4, 3);
        let index = wk_basis_elements(n, k).unwrap();
        // sum of the generators with m = 1 is symmetric
        let h = index
            .iter()
            .enumerate()
            .fold(QPoly::zero(Rationals, n), |acc, (i, (m, d))| {
                let w = if *m == 1 { 1 } else { i as i64 + 2 };
                &acc + &wk_generator(&Rationals, *m, d).scale(&q(w))
            });
        let a = express_in_wk(&h, n, k).unwrap();
        let b = express_in_wk_by_solve(&h, n, k).unwrap();
        assert_eq!(a, b);
        assert_eq!(*a.leading(), q(2));
    }

    #[test]
    fn wk_input_validation() {
        let h = poly(3, &[(&[2, 1, 1], 1)]);
        assert!(matches!(express_in_wk(&h, 3, 2), Err(Error::NotSymmetric)));
        let h = poly(3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]);
        assert!(matches!(express_in_wk(&h, 3, 2), Err(Error::NotDivisibleByVariableProduct)));
        let h = poly(3, &[(&[1, 1, 1], 1)]);
        assert!(matches!(express_in_wk(&h, 3, 2), Err(Error::NotHomogeneous { .. })));
        let h = poly(3, &[(&[2, 2, 2], 1)]);
        assert!(matches!(express_in_wk(&h, 3, 3), Err(Error::OddExponentCount(_))));
        assert!(matches!(express_in_wk_by_solve(&poly(3, &[(&[3, 2, 1], 1)]), 3, 3), Err(Error::NotInWk)));
    }
}
