use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::eval::{Assignment, EvalError, Value};
use super::Rational;

/// Power product of named parameters. Variables are kept sorted by name and
/// every stored exponent is positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Arc<str>, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(Arc::from(name), 1)])
    }

    /// Builds a monomial from `(name, power)` pairs; zero powers are dropped
    /// and repeated names are merged.
    pub fn from_powers<'a, I>(powers: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut merged: BTreeMap<&str, u32> = BTreeMap::new();
        for (name, power) in powers {
            *merged.entry(name).or_default() += power;
        }
        Monomial(
            merged
                .into_iter()
                .filter(|&(_, p)| p > 0)
                .map(|(n, p)| (Arc::from(n), p))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, p)| u64::from(p)).sum()
    }

    pub fn power_of(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| &**n == name)
            .map_or(0, |&(_, p)| p)
    }

    pub fn powers(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(n, p)| (&**n, *p))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((na, pa)), Some((nb, pb))) => match na.cmp(nb) {
                    Ordering::Less => {
                        out.push((na.clone(), *pa));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((nb.clone(), *pb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((na.clone(), pa + pb));
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.extend(b.cloned());
                    break;
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    fn pow(&self, exp: u32) -> Monomial {
        Monomial(self.0.iter().map(|(n, p)| (n.clone(), p * exp)).collect())
    }

    /// Lexicographic comparison of exponent vectors over the sorted union of
    /// variable names.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((na, pa)), Some((nb, pb))) => match na.cmp(nb) {
                    // `self` uses an earlier variable that `other` lacks.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match pa.cmp(pb) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    },
                },
            }
        }
    }
}

/// Graded lexicographic order: total degree first, then [`Monomial::lex_cmp`].
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (name, power)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(name)?;
            if *power > 1 {
                write!(f, "^{power}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Multivariate polynomial with rational coefficients over named parameters.
///
/// The term map never holds a zero coefficient, so structural equality is
/// equality of polynomials. Terms are listed in descending graded-lex order,
/// which is also the order used by [`fmt::Display`] and [`PolyScalar::eval`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        PolyScalar::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(value: Rational) -> Self {
        Self::term(value, Monomial::one())
    }

    pub fn integer(value: i64) -> Self {
        Self::constant(Rational::from_integer(value))
    }

    pub fn var(name: &str) -> Self {
        Self::term(Rational::one(), Monomial::var(name))
    }

    pub fn term(coefficient: Rational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        PolyScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    /// The single `(monomial, coefficient)` pair when the polynomial has
    /// exactly one term.
    pub fn as_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Highest total degree among the terms; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(n, _)| n))
            .collect()
    }

    pub fn pow(&self, exp: u32) -> PolyScalar {
        if exp == 0 {
            return PolyScalar::one();
        }
        if let Some((m, c)) = self.as_term() {
            return PolyScalar::term(c.pow(exp), m.pow(exp));
        }
        let mut acc = self.clone();
        for _ in 1..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Product of a sequence of polynomials, stopping early at a zero factor.
    pub fn product<'a, I>(factors: I) -> PolyScalar
    where
        I: IntoIterator<Item = &'a PolyScalar>,
    {
        let mut iter = factors.into_iter();
        let Some(first) = iter.next() else {
            return PolyScalar::one();
        };
        let mut acc = first.clone();
        for factor in iter {
            if acc.is_zero() {
                break;
            }
            acc = &acc * factor;
        }
        acc
    }

    fn accumulate(&mut self, monomial: Monomial, coefficient: Rational) {
        match self.terms.entry(monomial) {
            Entry::Vacant(slot) => {
                if !coefficient.is_zero() {
                    slot.insert(coefficient);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &PolyScalar) {
        for (m, c) in &rhs.terms {
            self.accumulate(m.clone(), c.clone());
        }
    }

    /// Evaluates the polynomial, summing monomials in canonical term order.
    ///
    /// The result is exact when every parameter used is bound to a rational,
    /// and floating point as soon as one of them is bound to a float.
    pub fn eval(&self, assignment: &Assignment) -> Result<Value, EvalError> {
        let mut exact = true;
        for name in self.variables() {
            match assignment.get(name) {
                None => return Err(EvalError::UnboundParameter(name.to_string())),
                Some(Value::Float(_)) => exact = false,
                Some(Value::Exact(_)) => {}
            }
        }
        if exact {
            let mut sum = Rational::zero();
            for (m, c) in self.terms() {
                let mut term = c.clone();
                for (name, power) in m.powers() {
                    if let Some(Value::Exact(v)) = assignment.get(name) {
                        term *= &v.pow(power);
                    }
                }
                sum += &term;
            }
            Ok(Value::Exact(sum))
        } else {
            let mut sum = 0.0;
            for (m, c) in self.terms() {
                let mut term = c.to_f64();
                for (name, power) in m.powers() {
                    let v = assignment.get(name).map_or(f64::NAN, Value::to_f64);
                    term *= v.powi(power as i32);
                }
                sum += term;
            }
            Ok(Value::Float(sum))
        }
    }
}

impl From<Rational> for PolyScalar {
    fn from(value: Rational) -> Self {
        PolyScalar::constant(value)
    }
}

impl From<i64> for PolyScalar {
    fn from(value: i64) -> Self {
        PolyScalar::integer(value)
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        big.add_assign_ref(small);
        big
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(mut self, rhs: PolyScalar) -> PolyScalar {
        for (m, c) in rhs.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), -c);
        }
        out
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: PolyScalar) -> PolyScalar {
        &self - &rhs
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        if self.is_zero() || rhs.is_zero() {
            return PolyScalar::zero();
        }
        if let (Some((ma, ca)), Some((mb, cb))) = (self.as_term(), rhs.as_term()) {
            return PolyScalar::term(ca * cb, ma.mul(mb));
        }
        let mut out = PolyScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl fmt::Display for PolyScalar {
    /// Canonical text, re-readable by [`super::parse_expr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (monomial, coefficient)) in self.terms().enumerate() {
            let negative = coefficient.is_negative();
            let magnitude = coefficient.abs();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if monomial.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                // A leading unary minus binds to the first atom only, so
                // "-alpha^2" would read back as (-alpha)^2.
                let first_power = monomial.powers().next().map_or(1, |(_, p)| p);
                if i == 0 && negative && first_power > 1 {
                    f.write_str("1*")?;
                }
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude}*{monomial}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> PolyScalar {
        PolyScalar::var("alpha")
    }

    fn beta() -> PolyScalar {
        PolyScalar::var("beta")
    }

    #[test]
    fn additive_identity() {
        assert_eq!(&alpha() + &PolyScalar::zero(), alpha());
    }

    #[test]
    fn like_terms_collect() {
        let t = &alpha() * &beta().pow(2);
        let sum = &t + &t;
        assert_eq!(sum.to_string(), "2*alpha*beta^2");
    }

    #[test]
    fn cancellation_gives_canonical_zero() {
        let d = &alpha() - &alpha();
        assert!(d.is_zero());
        assert_eq!(d.len(), 0);
        assert_eq!(d, PolyScalar::zero());
    }

    #[test]
    fn monomial_products() {
        assert_eq!(&alpha() * &alpha().pow(2), alpha().pow(3));
        let abb = PolyScalar::product([&alpha(), &beta(), &beta()]);
        assert_eq!(abb.to_string(), "alpha*beta^2");
        assert!((&PolyScalar::var("x") * &PolyScalar::zero()).is_zero());
    }

    #[test]
    fn graded_lex_order() {
        let p = &(&PolyScalar::one() + &beta()) + &(&alpha() * &alpha());
        let q = &p + &(&alpha() * &beta());
        assert_eq!(q.to_string(), "alpha^2 + alpha*beta + beta + 1");
        let r = &(&alpha() * &beta().pow(2)) + &alpha().pow(2);
        assert_eq!(r.to_string(), "alpha*beta^2 + alpha^2");
    }

    #[test]
    fn negative_and_fractional_coefficients() {
        let p = &(-&alpha().pow(2)) + &PolyScalar::constant(Rational::ratio(1, 2));
        assert_eq!(p.to_string(), "-1*alpha^2 + 1/2");
        let q = &(-&alpha()) - &PolyScalar::constant(Rational::ratio(3, 4));
        assert_eq!(q.to_string(), "-alpha - 3/4");
        let r = &PolyScalar::constant(Rational::ratio(-2, 3)) * &(&alpha() * &beta());
        assert_eq!(r.to_string(), "-2/3*alpha*beta");
    }

    #[test]
    fn degree_and_variables() {
        let p = &alpha().pow(3) + &beta();
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.variables().into_iter().collect::<Vec<_>>(), ["alpha", "beta"]);
        assert_eq!(PolyScalar::zero().degree(), None);
    }
}
