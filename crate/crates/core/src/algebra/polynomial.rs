use std::cmp::Ordering;
use std::fmt;

use super::{AlgebraError, Monomial};

/// An element of the free polynomial ring `ℤ[v_1, …, v_m]` with checked
/// `i64` coefficients. Terms are kept in canonical monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    // strictly increasing monomials, nonzero coefficients
    terms: Vec<(Monomial, i64)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(mono: Monomial, coef: i64) -> Self {
        let terms = if coef != 0 { vec![(mono, coef)] } else { Vec::new() };
        Polynomial { terms }
    }

    pub fn var(vertex: usize) -> Result<Self, AlgebraError> {
        Ok(Self::term(Monomial::var(vertex)?, 1))
    }

    /// Sums repeated monomials; zero results are dropped.
    pub fn from_terms<I>(terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        Self::from_unsorted(terms.into_iter().collect())
    }

    fn from_unsorted(mut raw: Vec<(Monomial, i64)>) -> Result<Self, AlgebraError> {
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Monomial, i64)> = Vec::with_capacity(raw.len());
        for (mono, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == mono => {
                    *acc = acc.checked_add(c).ok_or(AlgebraError::CoefficientOverflow)?;
                }
                _ => terms.push((mono, c)),
            }
        }
        terms.retain(|&(_, c)| c != 0);
        Ok(Polynomial { terms })
    }

    pub fn add_term(&mut self, mono: Monomial, coef: i64) -> Result<(), AlgebraError> {
        if coef == 0 {
            return Ok(());
        }
        match self.terms.binary_search_by(|(m, _)| m.cmp(&mono)) {
            Err(at) => self.terms.insert(at, (mono, coef)),
            Ok(at) => {
                let sum = self.terms[at]
                    .1
                    .checked_add(coef)
                    .ok_or(AlgebraError::CoefficientOverflow)?;
                if sum == 0 {
                    self.terms.remove(at);
                } else {
                    self.terms[at].1 = sum;
                }
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> i64 {
        self.terms
            .binary_search_by(|(m, _)| m.cmp(mono))
            .map_or(0, |at| self.terms[at].1)
    }

    /// Whether every term has cohomological degree `degree`. Zero is homogeneous.
    pub fn is_homogeneous(&self, degree: u64) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == degree)
    }

    /// The part of cohomological degree `degree`.
    pub fn homogeneous_part(&self, degree: u64) -> Polynomial {
        self.filtered(|m| m.degree() == degree)
    }

    fn filtered<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).cloned().collect(),
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a[i].1.checked_add(b[j].1).ok_or(AlgebraError::CoefficientOverflow)?;
                    if c != 0 {
                        terms.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a[i..]);
        terms.extend_from_slice(&b[j..]);
        Ok(Polynomial { terms })
    }

    pub fn checked_neg(&self) -> Result<Polynomial, AlgebraError> {
        self.checked_scale(-1)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Polynomial, AlgebraError> {
        if k == 0 {
            return Ok(Polynomial::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.checked_mul(k).ok_or(AlgebraError::CoefficientOverflow)?)))
            .collect::<Result<_, AlgebraError>>()?;
        Ok(Polynomial { terms })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.mul_filtered(other, |_| true)
    }

    /// Product keeping only monomials whose support mask passes `keep`.
    pub(crate) fn mul_filtered<F>(&self, other: &Polynomial, keep: F) -> Result<Polynomial, AlgebraError>
    where
        F: Fn(u64) -> bool,
    {
        let mut raw: Vec<(Monomial, i64)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if !keep(ma.support_mask() | mb.support_mask()) {
                    continue;
                }
                let c = ca.checked_mul(*cb).ok_or(AlgebraError::CoefficientOverflow)?;
                raw.push((ma.checked_mul(mb)?, c));
            }
        }
        Self::from_unsorted(raw)
    }

    /// Keeps the terms whose support mask passes `keep`.
    pub(crate) fn retain_support<F>(&self, keep: F) -> Polynomial
    where
        F: Fn(u64) -> bool,
    {
        self.filtered(|m| keep(m.support_mask()))
    }

    /// The linear coefficient of each vertex `1..=m`, or `None` if the
    /// polynomial is not homogeneous of cohomological degree 2.
    pub fn linear_coefficients(&self, m: usize) -> Option<Vec<i64>> {
        if !self.is_homogeneous(2) {
            return None;
        }
        let mut out = vec![0; m];
        for (mono, c) in self.terms() {
            let (v, _) = mono.exponents().next()?;
            *out.get_mut(v - 1)? = c;
        }
        Some(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                f.write_str(sign)?;
            }
            match (mag, m.is_one()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{m}")?,
                _ => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
