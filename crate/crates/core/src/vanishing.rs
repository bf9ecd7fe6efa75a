//! Vanishing multiplicities on `{0,1}^n`, the Taylor-data matrix of a
//! monomial basis, and a brute-force minimum-degree oracle.
//!
//! "Derivatives" are Taylor coefficients (Hasse derivatives): the entry for
//! a point `a` and multi-index `b` is the coefficient of `x^b` in `P(x + a)`.
//! Over characteristic 0 this is the classical derivative divided by
//! `b_1! ... b_n!`, so ranks and kernels agree with the classical notion.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hypercube::{self, HypercubePoint, DEFAULT_ENUMERATION_LIMIT};
use crate::linalg::{self, Echelon};
use crate::monomial::{monomials_up_to, orders_below, ExponentVector};
use crate::poly::{PascalTable, SparsePolynomial};

/// Vanishing multiplicity at a point; the zero polynomial vanishes to
/// infinite order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= k,
            Multiplicity::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }
}

impl Ord for Multiplicity {
    fn cmp(&self, other: &Self) -> Ordering {
        use Multiplicity::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Multiplicity {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for Multiplicity {
    type Output = Multiplicity;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

/// Lowest total degree of `P(x + a)`.
pub fn multiplicity_at<F: Field>(p: &SparsePolynomial<F>, a: &HypercubePoint) -> Result<Multiplicity> {
    let shifted = p.taylor_shift(a)?;
    Ok(match shifted.low_degree() {
        Some(d) => Multiplicity::Finite(d),
        None => Multiplicity::Infinite,
    })
}

/// Multiplicities at every point of `{0,1}^n`, nonzero points in
/// binary-counter order followed by the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityProfile {
    nvars: usize,
    entries: Vec<(HypercubePoint, Multiplicity)>,
}

impl MultiplicityProfile {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[(HypercubePoint, Multiplicity)] {
        &self.entries
    }

    pub fn at(&self, point: &HypercubePoint) -> Option<Multiplicity> {
        self.entries.iter().find(|(p, _)| p == point).map(|(_, m)| *m)
    }

    pub fn origin(&self) -> Multiplicity {
        self.entries.last().expect("profile includes the origin").1
    }

    /// Minimum over the nonzero points; `None` when `n = 0`.
    pub fn min_off_origin(&self) -> Option<Multiplicity> {
        self.entries[..self.entries.len() - 1].iter().map(|(_, m)| *m).min()
    }

    /// Multiplicity at least `k` at every nonzero point.
    pub fn vanishes_off_origin(&self, k: u32) -> bool {
        self.entries[..self.entries.len() - 1]
            .iter()
            .all(|(_, m)| m.at_least(k))
    }
}

pub fn multiplicity_profile<F: Field>(p: &SparsePolynomial<F>) -> Result<MultiplicityProfile> {
    multiplicity_profile_with_limit(p, DEFAULT_ENUMERATION_LIMIT)
}

pub fn multiplicity_profile_with_limit<F: Field>(
    p: &SparsePolynomial<F>,
    limit: usize,
) -> Result<MultiplicityProfile> {
    hypercube::check_enumeration(p.nvars(), limit)?;
    let entries = hypercube::all_points(p.nvars())
        .map(|a| multiplicity_at(p, &a).map(|m| (a, m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MultiplicityProfile {
        nvars: p.nvars(),
        entries,
    })
}

/// A Taylor-data functional: the coefficient of `x^order` in `P(x + point)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivativeIndex {
    pub point: HypercubePoint,
    pub order: ExponentVector,
}

/// Coefficient of `x^order` in `(x + point)^monomial`.
pub(crate) fn taylor_entry<F: Field>(
    pascal: &mut PascalTable<F>,
    monomial: &ExponentVector,
    index: &DerivativeIndex,
) -> F::Elem {
    let mut acc = pascal.field().one();
    for (i, (&e, &b)) in monomial.exps().iter().zip(index.order.exps()).enumerate() {
        if index.point.coord(i) {
            if b > e {
                return pascal.field().zero();
            }
            if b != 0 && b != e {
                let factor = pascal.get(e, b);
                acc = pascal.field().mul(&acc, &factor);
            }
        } else if e != b {
            return pascal.field().zero();
        }
    }
    acc
}

/// Taylor-data functionals of order `< bound` at `point`, orders ascending graded-lex.
pub fn derivative_indices(point: HypercubePoint, bound: u32) -> Vec<DerivativeIndex> {
    orders_below(point.nvars(), bound)
        .into_iter()
        .map(|order| DerivativeIndex { point, order })
        .collect()
}

/// Matrix of Taylor-data functionals (rows) evaluated on monomials (columns).
#[derive(Debug, Clone)]
pub struct EvaluationMatrix<F: Field> {
    field: F,
    rows: Vec<DerivativeIndex>,
    columns: Vec<ExponentVector>,
    entries: Vec<Vec<F::Elem>>,
}

impl<F: Field> EvaluationMatrix<F> {
    pub fn new(field: F, rows: Vec<DerivativeIndex>, columns: Vec<ExponentVector>) -> Self {
        let mut pascal = PascalTable::new(field.clone());
        let entries = rows
            .iter()
            .map(|r| columns.iter().map(|c| taylor_entry(&mut pascal, c, r)).collect())
            .collect();
        EvaluationMatrix {
            field,
            rows,
            columns,
            entries,
        }
    }

    pub fn rows(&self) -> &[DerivativeIndex] {
        &self.rows
    }

    pub fn columns(&self) -> &[ExponentVector] {
        &self.columns
    }

    pub fn entries(&self) -> &[Vec<F::Elem>] {
        &self.entries
    }

    pub fn entry(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r][c]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.columns.len())
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.columns.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, self.columns.len(), &self.entries)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.columns.len()
    }

    /// Right null space, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<F::Elem>> {
        linalg::null_space(&self.field, self.columns.len(), &self.entries)
    }

    /// The row functionals applied to `p` by Taylor-shifting `p` directly.
    /// Independent of the matrix entries.
    pub fn apply(&self, p: &SparsePolynomial<F>) -> Result<Vec<F::Elem>> {
        let mut shifted: Vec<(HypercubePoint, SparsePolynomial<F>)> = Vec::new();
        let mut out = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let pos = match shifted.iter().position(|(pt, _)| *pt == r.point) {
                Some(i) => i,
                None => {
                    shifted.push((r.point, p.taylor_shift(&r.point)?));
                    shifted.len() - 1
                }
            };
            out.push(shifted[pos].1.coeff(&r.order));
        }
        Ok(out)
    }

    /// Coefficient vector of `p` on the column monomials. Fails if `p` has a
    /// monomial outside the column set.
    pub fn coordinates(&self, p: &SparsePolynomial<F>) -> Result<Vec<F::Elem>> {
        for (e, _) in p.terms() {
            if self.columns.binary_search(e).is_err() {
                return Err(Error::invalid(format!("monomial {e} is not a column")));
            }
        }
        Ok(self.columns.iter().map(|c| p.coeff(c)).collect())
    }

    /// Polynomial with the given coefficients on the column monomials.
    pub fn polynomial(&self, coeffs: &[F::Elem], nvars: usize) -> SparsePolynomial<F> {
        SparsePolynomial::from_terms(
            self.field.clone(),
            nvars,
            self.columns.iter().cloned().zip(coeffs.iter().cloned()),
        )
        .expect("columns have nvars entries")
    }
}

/// The Taylor-data rows recorded by the map `psi_k`: orders `< k` at every
/// nonzero point and orders `< k - 1` at the origin.
pub fn psi_rows(nvars: usize, k: u32) -> Vec<DerivativeIndex> {
    let mut rows: Vec<DerivativeIndex> = hypercube::nonzero_points(nvars)
        .flat_map(|a| derivative_indices(a, k))
        .collect();
    rows.extend(derivative_indices(HypercubePoint::origin(nvars), k - 1));
    rows
}

/// `psi_k` restricted to the span of `basis`, as a matrix.
pub fn build_psi_matrix<F: Field>(
    field: &F,
    nvars: usize,
    k: u32,
    basis: &[ExponentVector],
) -> Result<EvaluationMatrix<F>> {
    if nvars == 0 || k < 2 {
        return Err(Error::invalid(format!("psi matrix needs n >= 1, k >= 2 (got n={nvars}, k={k})")));
    }
    hypercube::check_enumeration(nvars, DEFAULT_ENUMERATION_LIMIT)?;
    if basis.iter().any(|e| e.nvars() != nvars) {
        return Err(Error::invalid("basis monomial has the wrong variable count"));
    }
    let mut columns = basis.to_vec();
    columns.sort();
    columns.dedup();
    Ok(EvaluationMatrix::new(field.clone(), psi_rows(nvars, k), columns))
}

/// Values of the `psi_k` functionals on `p`, in [`psi_rows`] order.
pub fn psi_data<F: Field>(p: &SparsePolynomial<F>, k: u32) -> Result<Vec<F::Elem>> {
    if k < 2 {
        return Err(Error::invalid(format!("psi data needs k >= 2 (got {k})")));
    }
    hypercube::check_enumeration(p.nvars(), DEFAULT_ENUMERATION_LIMIT)?;
    let mut out = Vec::new();
    for a in hypercube::all_points(p.nvars()) {
        let bound = if a.is_origin() { k - 1 } else { k };
        let shifted = p.taylor_shift(&a)?;
        out.extend(orders_below(p.nvars(), bound).iter().map(|o| shifted.coeff(o)));
    }
    Ok(out)
}

/// Condition imposed at the origin by the minimum-degree problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginCondition {
    /// `P(0) != 0`.
    Nonzero,
    /// Multiplicity exactly `l` at the origin.
    ExactMultiplicity(u32),
}

impl OriginCondition {
    fn exact_order(self) -> u32 {
        match self {
            OriginCondition::Nonzero => 0,
            OriginCondition::ExactMultiplicity(l) => l,
        }
    }
}

impl fmt::Display for OriginCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OriginCondition::Nonzero => write!(f, "nonzero"),
            OriginCondition::ExactMultiplicity(l) => write!(f, "exact={l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinDegreeOutcome<F: Field> {
    Found {
        degree: u32,
        witness: Option<SparsePolynomial<F>>,
    },
    /// No polynomial of degree `<= max_degree` qualifies.
    Infeasible { max_degree: u32 },
}

impl<F: Field> MinDegreeOutcome<F> {
    pub fn degree(&self) -> Option<u32> {
        match self {
            MinDegreeOutcome::Found { degree, .. } => Some(*degree),
            MinDegreeOutcome::Infeasible { .. } => None,
        }
    }
}

/// Parameters of one minimum-degree search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinDegreeQuery {
    pub nvars: usize,
    pub k: u32,
    pub origin: OriginCondition,
    pub max_degree: u32,
    /// Largest `n` accepted by the hypercube guard.
    pub enumeration_limit: usize,
}

impl MinDegreeQuery {
    pub fn new(nvars: usize, k: u32, origin: OriginCondition, max_degree: u32) -> Self {
        MinDegreeQuery {
            nvars,
            k,
            origin,
            max_degree,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }

    pub fn with_enumeration_limit(mut self, limit: usize) -> Self {
        self.enumeration_limit = limit;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.nvars == 0 || self.k == 0 {
            return Err(Error::invalid("min_degree needs n >= 1 and k >= 1"));
        }
        if let OriginCondition::ExactMultiplicity(l) = self.origin {
            if l >= self.k {
                return Err(Error::invalid(format!(
                    "origin multiplicity {l} must be below k = {}",
                    self.k
                )));
            }
        }
        hypercube::check_enumeration(self.nvars, self.enumeration_limit)
    }
}

/// Smallest degree `d <= max_degree` admitting a polynomial with
/// multiplicity `>= k` at every nonzero hypercube point and the requested
/// origin behaviour, decided by exact rank comparisons.
pub fn min_degree<F: Field>(field: &F, query: MinDegreeQuery) -> Result<MinDegreeOutcome<F>> {
    search(field, query, false)
}

/// As [`min_degree`], also returning one qualifying polynomial.
pub fn min_degree_with_witness<F: Field>(
    field: &F,
    query: MinDegreeQuery,
) -> Result<MinDegreeOutcome<F>> {
    search(field, query, true)
}

fn search<F: Field>(field: &F, query: MinDegreeQuery, want_witness: bool) -> Result<MinDegreeOutcome<F>> {
    query.validate()?;
    for d in 0..=query.max_degree {
        if let Some(witness) = feasible_at(field, &query, d, want_witness) {
            return Ok(MinDegreeOutcome::Found { degree: d, witness });
        }
    }
    Ok(MinDegreeOutcome::Infeasible {
        max_degree: query.max_degree,
    })
}

/// Feasibility at degree `<= d`. `Some(witness)` when feasible; the witness
/// is only built on request.
pub fn feasible_at<F: Field>(
    field: &F,
    query: &MinDegreeQuery,
    d: u32,
    want_witness: bool,
) -> Option<Option<SparsePolynomial<F>>> {
    let n = query.nvars;
    let columns = monomials_up_to(n, d);
    let mut pascal = PascalTable::new(field.clone());
    let row_of = |pascal: &mut PascalTable<F>, idx: &DerivativeIndex| -> Vec<F::Elem> {
        columns.iter().map(|c| taylor_entry(pascal, c, idx)).collect()
    };

    let mut ech = Echelon::new(field.clone(), columns.len());
    for a in hypercube::nonzero_points(n) {
        for idx in derivative_indices(a, query.k) {
            ech.insert(&row_of(&mut pascal, &idx));
        }
    }
    let origin = HypercubePoint::origin(n);
    let ell = query.origin.exact_order();
    for idx in derivative_indices(origin, ell) {
        ech.insert(&row_of(&mut pascal, &idx));
    }
    // Feasible iff some order-`ell` functional at the origin is not
    // identically zero on the null space, i.e. escapes the row space.
    for order in crate::monomial::monomials_of_degree(n, ell) {
        let idx = DerivativeIndex { point: origin, order };
        let remainder = ech.reduce(&row_of(&mut pascal, &idx));
        let Some(free) = remainder.iter().position(|x| !field.is_zero(x)) else {
            continue;
        };
        if !want_witness {
            return Some(None);
        }
        // the remainder vanishes on pivot columns, so pairing it with the
        // null vector of `free` picks out its (nonzero) entry at `free`
        let x = ech.null_vector(free);
        let p = SparsePolynomial::from_terms(field.clone(), n, columns.iter().cloned().zip(x))
            .expect("columns have n entries");
        return Some(Some(p));
    }
    None
}
