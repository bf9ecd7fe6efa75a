use std::cmp::Ordering;
use std::fmt;

/// Exponents `(e_1, ..., e_n)` of a monomial `x_1^e_1 ... x_n^e_n`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x_1`, then `x_2`, and so on. Every map keyed by exponent vectors
/// therefore iterates from the constant monomial upwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Box<[u32]>);

impl ExponentVector {
    pub fn new(exps: impl Into<Box<[u32]>>) -> Self {
        ExponentVector(exps.into())
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars].into())
    }

    /// The exponent vector of the single variable `x_{var+1}` (0-based `var`).
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e.into())
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        ExponentVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(|v| ExponentVector(v.into()))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `⌊e_1/2⌋ + ... + ⌊e_n/2⌋`: the largest number of variable squares
    /// whose product divides this monomial.
    pub fn square_count(&self) -> u32 {
        self.0.iter().map(|e| e / 2).sum()
    }

    pub fn with(&self, var: usize, exp: u32) -> Self {
        let mut v = self.0.to_vec();
        v[var] = exp;
        ExponentVector(v.into())
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        // variable i is renamed to perm[i]
        let mut v = vec![0; self.nvars()];
        for (i, &e) in self.0.iter().enumerate() {
            v[perm[i]] = e;
        }
        ExponentVector(v.into())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v.into())
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `degree`,
/// in ascending graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill_compositions(&mut current, 0, degree, &mut out);
    // generated with x_1 descending; ascending order wants x_1 ascending
    out.reverse();
    out
}

fn fill_compositions(cur: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<ExponentVector>) {
    if pos + 1 == cur.len() {
        cur[pos] = remaining;
        out.push(ExponentVector::new(cur.to_vec()));
        return;
    }
    if cur.is_empty() {
        return;
    }
    for e in (0..=remaining).rev() {
        cur[pos] = e;
        fill_compositions(cur, pos + 1, remaining - e, out);
    }
}

/// All exponent vectors of total degree `<= max_degree`, ascending graded-lex.
pub fn monomials_up_to(nvars: usize, max_degree: u32) -> Vec<ExponentVector> {
    (0..=max_degree)
        .flat_map(|d| monomials_of_degree(nvars, d))
        .collect()
}

/// All exponent vectors of total degree `< bound` (the multi-indices counted
/// by `M_bound(nvars)`), ascending graded-lex. Empty when `bound == 0`.
pub fn orders_below(nvars: usize, bound: u32) -> Vec<ExponentVector> {
    match bound {
        0 => Vec::new(),
        b => monomials_up_to(nvars, b - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = ExponentVector::from(vec![0, 2]);
        let b = ExponentVector::from(vec![1, 1]);
        let c = ExponentVector::from(vec![3, 0]);
        assert!(a < b && b < c);
        assert!(ExponentVector::from(vec![5, 0]) < ExponentVector::from(vec![0, 6]));
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all = monomials_up_to(3, 4);
        assert_eq!(all.len(), 35); // binom(7, 3)
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomials_of_degree(1, 3), vec![ExponentVector::from(vec![3])]);
        assert_eq!(orders_below(3, 2).len(), 4);
        assert!(orders_below(2, 0).is_empty());
    }

    #[test]
    fn display() {
        assert_eq!(ExponentVector::from(vec![2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(ExponentVector::zero(2).to_string(), "1");
    }
}
