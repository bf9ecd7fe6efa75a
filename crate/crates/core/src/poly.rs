//! Sparse multivariate polynomials over an exact [`Field`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::hypercube::HypercubePoint;
use crate::monomial::ExponentVector;

/// A polynomial in `nvars` variables stored as a map from exponent vectors to
/// nonzero coefficients. Terms iterate in ascending graded-lex order.
#[derive(Clone)]
pub struct SparsePolynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<ExponentVector, F::Elem>,
}

impl<F: Field> PartialEq for SparsePolynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for SparsePolynomial<F> {}

impl<F: Field> SparsePolynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        SparsePolynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::monomial(field, ExponentVector::zero(nvars), c)
    }

    pub fn one(field: F, nvars: usize) -> Self {
        let one = field.one();
        Self::constant(field, nvars, one)
    }

    pub fn monomial(field: F, exps: ExponentVector, c: F::Elem) -> Self {
        let nvars = exps.nvars();
        let mut terms = BTreeMap::new();
        if !field.is_zero(&c) {
            terms.insert(exps, c);
        }
        SparsePolynomial { field, nvars, terms }
    }

    /// The variable `x_{var+1}`.
    pub fn variable(field: F, nvars: usize, var: usize) -> Self {
        let one = field.one();
        Self::monomial(field, ExponentVector::unit(nvars, var), one)
    }

    /// Builds a polynomial from arbitrary terms: duplicates are summed and
    /// zero coefficients dropped.
    pub fn from_terms(
        field: F,
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, F::Elem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            if e.nvars() != nvars {
                return Err(Error::VariableMismatch {
                    left: nvars,
                    right: e.nvars(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).max()
    }

    /// Smallest total degree among the terms; `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::degree).min()
    }

    /// Graded-lex largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &F::Elem)> {
        self.terms.iter().next_back()
    }

    /// Largest term strictly below `bound` in graded-lex order, or the
    /// largest term overall when `bound` is `None`.
    pub fn last_term_below(&self, bound: Option<&ExponentVector>) -> Option<(&ExponentVector, &F::Elem)> {
        match bound {
            None => self.terms.iter().next_back(),
            Some(b) => self.terms.range(..b.clone()).next_back(),
        }
    }

    /// Add `c * x^e` in place.
    pub fn add_term(&mut self, e: ExponentVector, c: F::Elem) {
        debug_assert_eq!(e.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.descriptor(),
                right: other.field.descriptor(),
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field.clone(), self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.add(eb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    /// `self - c * x^shift * other`, the update used by reduction steps.
    pub fn sub_scaled_shifted(&mut self, c: &F::Elem, shift: &ExponentVector, other: &Self) {
        for (e, d) in &other.terms {
            let v = self.field.neg(&self.field.mul(c, d));
            self.add_term(e.add(shift), v);
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(self.field.clone(), self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, x)| {
                let v = self.field.mul(x, c);
                (!self.field.is_zero(&v)).then(|| (e.clone(), v))
            })
            .collect();
        SparsePolynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.clone(), self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        if point.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.exps()) {
                if k > 0 {
                    t = f.mul(&t, &f.pow(x, k));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn evaluate_at(&self, point: &HypercubePoint) -> Result<F::Elem> {
        self.check_point(point)?;
        // x^e at a 0/1 point is 1 iff every variable outside the support has exponent 0
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            if e.exps().iter().enumerate().all(|(i, &k)| k == 0 || point.coord(i)) {
                acc = f.add(&acc, c);
            }
        }
        Ok(acc)
    }

    fn check_point(&self, point: &HypercubePoint) -> Result<()> {
        if point.nvars() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: point.nvars(),
            });
        }
        Ok(())
    }

    /// `P(x_1 + s_1, ..., x_n + s_n)` for an arbitrary shift vector.
    pub fn translate(&self, shift: &[F::Elem]) -> Result<Self> {
        if shift.len() != self.nvars {
            return Err(Error::VariableMismatch {
                left: self.nvars,
                right: shift.len(),
            });
        }
        let f = &self.field;
        let mut cur = self.clone();
        let mut pascal = PascalTable::new(f.clone());
        for (var, s) in shift.iter().enumerate() {
            if f.is_zero(s) {
                continue;
            }
            let mut next = Self::zero(f.clone(), self.nvars);
            for (e, c) in &cur.terms {
                let top = e.exps()[var];
                // (x + s)^top = sum_j binom(top, j) s^(top-j) x^j
                let row = pascal.row(top).to_vec();
                let mut spow = f.one();
                for j in (0..=top).rev() {
                    let coeff = f.mul(&f.mul(c, &row[j as usize]), &spow);
                    next.add_term(e.with(var, j), coeff);
                    spow = f.mul(&spow, s);
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// `P(x + a)` for a hypercube point `a`; coordinates equal to 0 are skipped.
    pub fn taylor_shift(&self, point: &HypercubePoint) -> Result<Self> {
        self.check_point(point)?;
        let shift: Vec<F::Elem> = (0..self.nvars)
            .map(|i| if point.coord(i) { self.field.one() } else { self.field.zero() })
            .collect();
        self.translate(&shift)
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.degree() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        SparsePolynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.degree() == d)
    }

    /// Exact quotient by the monomial `x^m`, or `None` if some term is not divisible.
    pub fn divide_by_monomial(&self, m: &ExponentVector) -> Option<Self> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| e.checked_sub(m).map(|q| (q, c.clone())))
            .collect::<Option<BTreeMap<_, _>>>()?;
        Some(SparsePolynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        })
    }

    /// Rename variable `i` to `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.permuted(perm), c.clone()))
            .collect();
        SparsePolynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        }
    }

    /// Invariant under every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        if self.nvars < 2 {
            return true;
        }
        // the symmetric group is generated by one transposition and one n-cycle
        let mut swap: Vec<usize> = (0..self.nvars).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..self.nvars).map(|i| (i + 1) % self.nvars).collect();
        self.permute_variables(&swap) == *self && self.permute_variables(&cycle) == *self
    }

    /// Re-embed the coefficients into another field via their canonical
    /// rational representatives.
    pub fn map_field<G: Field>(&self, target: &G) -> Result<SparsePolynomial<G>> {
        let mut out = SparsePolynomial::zero(target.clone(), self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), target.from_ratio(&self.field.to_ratio(c))?);
        }
        Ok(out)
    }
}

/// Cached rows of Pascal's triangle, computed by addition in the field.
pub(crate) struct PascalTable<F: Field> {
    field: F,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> PascalTable<F> {
    pub(crate) fn new(field: F) -> Self {
        let one = field.one();
        PascalTable {
            field,
            rows: vec![vec![one]],
        }
    }

    pub(crate) fn row(&mut self, n: u32) -> &[F::Elem] {
        while self.rows.len() <= n as usize {
            let prev = self.rows.last().expect("nonempty");
            let mut next = Vec::with_capacity(prev.len() + 1);
            next.push(self.field.one());
            for w in prev.windows(2) {
                next.push(self.field.add(&w[0], &w[1]));
            }
            next.push(self.field.one());
            self.rows.push(next);
        }
        &self.rows[n as usize]
    }

    pub(crate) fn field(&self) -> &F {
        &self.field
    }

    pub(crate) fn get(&mut self, n: u32, k: u32) -> F::Elem {
        if k > n {
            return self.field.zero();
        }
        self.row(n)[k as usize].clone()
    }
}

impl<F: Field> fmt::Debug for SparsePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}; {} vars]", self, self.field.descriptor(), self.nvars)
    }
}

impl<F: Field> fmt::Display for SparsePolynomial<F> {
    /// Terms from the graded-lex largest down.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = self.field.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.is_constant() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{e}")?;
            } else {
                write!(f, "{mag}*{e}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Field> $tr<&SparsePolynomial<F>> for &SparsePolynomial<F> {
            type Output = SparsePolynomial<F>;

            /// Panics on field or variable-count mismatch; use the checked
            /// method for fallible arithmetic.
            fn $method(self, rhs: &SparsePolynomial<F>) -> SparsePolynomial<F> {
                self.$checked(rhs).expect("incompatible polynomials")
            }
        }

        impl<F: Field> $tr for SparsePolynomial<F> {
            type Output = SparsePolynomial<F>;

            fn $method(self, rhs: SparsePolynomial<F>) -> SparsePolynomial<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &SparsePolynomial<F> {
    type Output = SparsePolynomial<F>;

    fn neg(self) -> SparsePolynomial<F> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), self.field.neg(c)))
            .collect();
        SparsePolynomial {
            field: self.field.clone(),
            nvars: self.nvars,
            terms,
        }
    }
}

impl<F: Field> Neg for SparsePolynomial<F> {
    type Output = SparsePolynomial<F>;

    fn neg(self) -> SparsePolynomial<F> {
        -&self
    }
}

/// A polynomial `c_1 x_1 + ... + c_n x_n + c_0` whose zero set is a hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm<F: Field> {
    field: F,
    coefficients: Vec<F::Elem>,
    constant: F::Elem,
}

impl<F: Field> AffineForm<F> {
    pub fn new(field: F, coefficients: Vec<F::Elem>, constant: F::Elem) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("affine form needs at least one variable"));
        }
        if coefficients.iter().all(|c| field.is_zero(c)) && field.is_zero(&constant) {
            return Err(Error::invalid("affine form is identically zero"));
        }
        Ok(AffineForm {
            field,
            coefficients,
            constant,
        })
    }

    /// `x_{var+1} - 1`.
    pub fn coordinate_minus_one(field: F, nvars: usize, var: usize) -> Self {
        let mut coefficients = vec![field.zero(); nvars];
        coefficients[var] = field.one();
        let constant = field.neg(&field.one());
        AffineForm {
            field,
            coefficients,
            constant,
        }
    }

    /// `x_1 + ... + x_n - 1`.
    pub fn sum_minus_one(field: F, nvars: usize) -> Self {
        let coefficients = vec![field.one(); nvars];
        let constant = field.neg(&field.one());
        AffineForm {
            field,
            coefficients,
            constant,
        }
    }

    pub fn nvars(&self) -> usize {
        self.coefficients.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coefficients(&self) -> &[F::Elem] {
        &self.coefficients
    }

    pub fn constant(&self) -> &F::Elem {
        &self.constant
    }

    pub fn evaluate_at(&self, point: &HypercubePoint) -> F::Elem {
        let f = &self.field;
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(i, _)| point.coord(*i))
            .fold(self.constant.clone(), |acc, (_, c)| f.add(&acc, c))
    }

    pub fn to_polynomial(&self) -> SparsePolynomial<F> {
        let n = self.nvars();
        let mut p = SparsePolynomial::constant(self.field.clone(), n, self.constant.clone());
        for (i, c) in self.coefficients.iter().enumerate() {
            p.add_term(ExponentVector::unit(n, i), c.clone());
        }
        p
    }
}

/// Product of the given affine forms; the empty product is the constant 1.
pub fn product_of_affine_forms<F: Field>(
    field: &F,
    nvars: usize,
    forms: &[AffineForm<F>],
) -> Result<SparsePolynomial<F>> {
    let mut acc = SparsePolynomial::one(field.clone(), nvars);
    for form in forms {
        if form.field() != field {
            return Err(Error::FieldMismatch {
                left: field.descriptor(),
                right: form.field().descriptor(),
            });
        }
        acc = acc.checked_mul(&form.to_polynomial())?;
    }
    Ok(acc)
}
