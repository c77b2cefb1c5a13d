//! Sparse Laurent polynomials in two families of variables `x1..xn` and
//! `y1..yn`, with arbitrary-precision integer coefficients.
//!
//! Exponents of the `x` variables may be negative; exponents of the `y`
//! variables are always nonnegative (coefficient monomials are genuine
//! monomials in the `y` generators). Terms are kept in a `BTreeMap` keyed by
//! exponent vectors, so iteration order — and therefore text rendering — is
//! canonical: lexicographic on the x-exponents, then the y-exponents.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a single term: `x1^xexp[0] … xn^xexp[n-1] *
/// y1^yexp[0] … yn^yexp[n-1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExpVector {
    pub xexp: Vec<i32>,
    pub yexp: Vec<u32>,
}

impl ExpVector {
    pub fn zero(nvars: usize) -> Self {
        ExpVector {
            xexp: vec![0; nvars],
            yexp: vec![0; nvars],
        }
    }

    /// `x_i` for a 1-based variable index.
    pub fn x(nvars: usize, i: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.xexp[i - 1] = 1;
        e
    }

    /// `y_i` for a 1-based variable index.
    pub fn y(nvars: usize, i: usize) -> Self {
        let mut e = Self::zero(nvars);
        e.yexp[i - 1] = 1;
        e
    }

    pub fn nvars(&self) -> usize {
        self.xexp.len()
    }

    fn mul(&self, other: &ExpVector) -> ExpVector {
        ExpVector {
            xexp: self
                .xexp
                .iter()
                .zip(&other.xexp)
                .map(|(a, b)| a + b)
                .collect(),
            yexp: self
                .yexp
                .iter()
                .zip(&other.yexp)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise quotient, `None` when a y-exponent would go negative.
    fn try_div(&self, other: &ExpVector) -> Option<ExpVector> {
        let yexp = self
            .yexp
            .iter()
            .zip(&other.yexp)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()?;
        Some(ExpVector {
            xexp: self
                .xexp
                .iter()
                .zip(&other.xexp)
                .map(|(a, b)| a - b)
                .collect(),
            yexp,
        })
    }

    fn is_identity(&self) -> bool {
        self.xexp.iter().all(|&e| e == 0) && self.yexp.iter().all(|&e| e == 0)
    }
}

/// The two families of variables attached to a single seed of rank `nvars`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExpVector, BigInt>,
}

/// Attempted arithmetic between polynomials over different variable counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimensionError {
    pub left: usize,
    pub right: usize,
}

impl fmt::Display for DimensionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "variable count mismatch: {} vs {}",
            self.left, self.right
        )
    }
}

impl core::error::Error for DimensionError {}

/// Exact division failed: the dividend is not a multiple of the divisor in
/// the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionError {
    DivisionByZero,
    NotDivisible,
}

impl fmt::Display for DivisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisionError::DivisionByZero => write!(f, "division by the zero polynomial"),
            DivisionError::NotDivisible => write!(f, "not divisible in the Laurent ring"),
        }
    }
}

impl core::error::Error for DivisionError {}

/// Result of grading a polynomial by `deg(x_i) = e_i`, `deg(y_j) = B e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multidegree {
    Homogeneous(Vec<i64>),
    Heterogeneous,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExpVector::zero(nvars), c.into());
        p
    }

    /// The cluster variable `x_i` (1-based).
    pub fn x_var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExpVector::x(nvars, i), BigInt::one())
    }

    /// The coefficient generator `y_i` (1-based).
    pub fn y_var(nvars: usize, i: usize) -> Self {
        Self::monomial(ExpVector::y(nvars, i), BigInt::one())
    }

    pub fn monomial(exp: ExpVector, coeff: BigInt) -> Self {
        let mut p = Self::zero(exp.nvars());
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExpVector, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.nvars(), nvars, "term exponent width mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.is_identity() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (ascending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVector) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, exp: ExpVector, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, DimensionError> {
        self.dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, DimensionError> {
        self.dims(other)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca * cb);
            }
        }
        Ok(out)
    }

    fn dims(&self, other: &Self) -> Result<(), DimensionError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(DimensionError {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    /// Divide every term by `x1^d1 … xn^dn`. Always exact in the Laurent
    /// ring.
    pub fn divide_by_x_monomial(&self, d: &[u32]) -> Self {
        assert_eq!(d.len(), self.nvars, "denominator width mismatch");
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                for (x, dk) in e.xexp.iter_mut().zip(d) {
                    *x -= *dk as i32;
                }
                (e, c.clone())
            })
            .collect();
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Set every `x_i` to 1, merging like terms in the `y` variables. This
    /// turns the expansion of a cluster variable into its F-polynomial.
    pub fn substitute_x_ones(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.xexp.iter_mut().for_each(|x| *x = 0);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Evaluate at `x_i = y_i = 1` for all i.
    pub fn eval_all_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Common degree vector under `deg(x_i) = e_i`, `deg(y_j) = B e_j`
    /// (column `j` of `b`), or [`Multidegree::Heterogeneous`] when the terms
    /// disagree. The zero polynomial counts as homogeneous of degree 0.
    pub fn multidegree(&self, b: &crate::surface::BMatrix) -> Multidegree {
        assert_eq!(b.size(), self.nvars, "matrix size mismatch");
        let mut common: Option<Vec<i64>> = None;
        for e in self.terms.keys() {
            let mut deg: Vec<i64> = e.xexp.iter().map(|&x| x as i64).collect();
            for (j, &yj) in e.yexp.iter().enumerate() {
                if yj != 0 {
                    for i in 0..self.nvars {
                        deg[i] += yj as i64 * b.get(i + 1, j + 1);
                    }
                }
            }
            match &common {
                None => common = Some(deg),
                Some(d) if *d == deg => {}
                Some(_) => return Multidegree::Heterogeneous,
            }
        }
        Multidegree::Homogeneous(common.unwrap_or_else(|| vec![0; self.nvars]))
    }

    fn leading(&self) -> Option<(&ExpVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division in `Z[y][x^{±1}]`. Fails when the quotient does not
    /// exist in the ring (nonzero remainder, fractional coefficient, or a
    /// y-exponent that would go negative).
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, DivisionError> {
        self.dims(divisor)
            .map_err(|_| DivisionError::NotDivisible)?;
        if divisor.is_zero() {
            return Err(DivisionError::DivisionByZero);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        let (lead_exp, lead_coeff) = {
            let (e, c) = divisor.leading().expect("nonzero divisor");
            (e.clone(), c.clone())
        };
        // Each round strips the leading term, so an exact quotient emits one
        // term per round; cap the rounds to fail cleanly on inexact input.
        let mut rounds = 0usize;
        let max_rounds = 16 * (self.terms.len() + divisor.terms.len() + 4);
        while !rem.is_zero() {
            rounds += 1;
            if rounds > max_rounds {
                return Err(DivisionError::NotDivisible);
            }
            let (re, rc) = rem.leading().expect("nonzero remainder");
            let exp = re.try_div(&lead_exp).ok_or(DivisionError::NotDivisible)?;
            let (q, r) = num_integer_div_rem(rc, &lead_coeff);
            if !r.is_zero() {
                return Err(DivisionError::NotDivisible);
            }
            let t = Self::monomial(exp, q);
            rem = rem.checked_add(&(&t * divisor).neg()).expect("same dims");
            quot = quot.checked_add(&t).expect("same dims");
        }
        Ok(quot)
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(&rhs.clone().neg())
            .expect("variable count mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

/// Canonical monomial rendering, e.g. `x1^-2*x2^3*y1^2*y3`. The empty
/// monomial renders as `1`.
pub fn monomial_string(exp: &ExpVector) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    let mut first = true;
    let push = |name: char, idx: usize, e: i64, s: &mut String, first: &mut bool| {
        if e == 0 {
            return;
        }
        if !*first {
            s.push('*');
        }
        *first = false;
        if e == 1 {
            let _ = write!(s, "{name}{idx}");
        } else {
            let _ = write!(s, "{name}{idx}^{e}");
        }
    };
    for (i, &e) in exp.xexp.iter().enumerate() {
        push('x', i + 1, e as i64, &mut s, &mut first);
    }
    for (j, &e) in exp.yexp.iter().enumerate() {
        push('y', j + 1, e as i64, &mut s, &mut first);
    }
    if first {
        s.push('1');
    }
    s
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{}", monomial_string(e))?;
            } else if e.is_identity() {
                write!(f, "{mag}")?;
            } else {
                write!(f, "{}*{}", mag, monomial_string(e))?;
            }
        }
        Ok(())
    }
}
