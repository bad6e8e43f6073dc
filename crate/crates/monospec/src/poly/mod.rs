//! Sparse multivariate polynomials over the rationals.
//!
//! A `SparsePolynomial` owns an ordered list of variable names and a map
//! from exponent tuples to nonzero coefficients. The term map is keyed by
//! graded-lexicographic order so printing and matrix-column enumeration
//! are deterministic.

pub mod gcd;
pub mod resultant;
pub mod univariate;

use crate::rat::Rational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Exponent tuple with graded-lexicographic ordering (total degree first,
/// then lexicographic on the exponents, earlier variables weigh more).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Invariant: no zero coefficient is ever stored, and every exponent tuple
/// has length equal to the number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePolynomial {
    pub fn zero(vars: &[&str]) -> Self {
        SparsePolynomial {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_named(vars: Vec<String>) -> Self {
        SparsePolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial(vec![0; p.vars.len()]), c);
        p
    }

    /// The variable with index `i` as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut exps = vec![0; p.vars.len()];
        exps[i] = 1;
        p.add_term(Monomial(exps), Rational::one());
        p
    }

    /// A single term `c · x^exps`.
    pub fn monomial(vars: &[&str], exps: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len());
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_constant())
    }

    /// Coefficient of the given exponent tuple (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Adds `c · x^m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert_eq!(m.0.len(), self.vars.len(), "exponent arity mismatch");
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "mixed variable sets");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = Self::zero_named(self.vars.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_named(self.vars.clone());
        }
        SparsePolynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant_named(self.vars.clone(), Rational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    fn constant_named(vars: Vec<String>, c: Rational) -> Self {
        let n = vars.len();
        let mut p = Self::zero_named(vars);
        p.add_term(Monomial(vec![0; n]), c);
        p
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in a single variable (0 for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Minimal total degree of a term: the multiplicity of the polynomial
    /// at the origin. `None` for the zero polynomial.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    /// Minimal exponent of `var` over all terms (0 for zero polynomial).
    pub fn min_exponent(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).min().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.total_degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero_named(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[var] = e - 1;
                out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`. All images must share one
    /// variable set, which becomes the variable set of the result.
    pub fn substitute(&self, images: &[SparsePolynomial]) -> SparsePolynomial {
        assert_eq!(images.len(), self.vars.len());
        let out_vars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut out = Self::zero_named(out_vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant_named(out.vars.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a rational constant for one variable, keeping the rest.
    pub fn eval_var(&self, var: usize, value: &Rational) -> SparsePolynomial {
        let mut out = Self::zero_named(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut exps = m.0.clone();
            exps[var] = 0;
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Exact division by `var^e`; panics if some term has a smaller exponent.
    pub fn divide_by_var_power(&self, var: usize, e: u32) -> SparsePolynomial {
        let mut out = Self::zero_named(self.vars.clone());
        for (m, c) in &self.terms {
            assert!(m.0[var] >= e, "division by variable power not exact");
            let mut exps = m.0.clone();
            exps[var] -= e;
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Coefficients with respect to `var`, ascending from exponent zero;
    /// each entry is a polynomial in the same variable set with `var` absent.
    pub fn coeffs_in(&self, var: usize) -> Vec<SparsePolynomial> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero_named(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut exps = m.0.clone();
            exps[var] = 0;
            out[e].add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Rebuilds `Σ coeffs[e] · var^e`.
    pub fn from_coeffs_in(
        vars: &[String],
        var: usize,
        coeffs: &[SparsePolynomial],
    ) -> SparsePolynomial {
        let mut out = Self::zero_named(vars.to_vec());
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                let mut exps = m.0.clone();
                exps[var] += e as u32;
                out.add_term(Monomial(exps), k.clone());
            }
        }
        out
    }

    /// Renames the variable set without touching exponents.
    pub fn with_variables(&self, vars: &[&str]) -> SparsePolynomial {
        assert_eq!(vars.len(), self.vars.len());
        SparsePolynomial {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }

    /// Clears denominators and divides by the integer content: the unique
    /// (up to sign) integer-coefficient scalar multiple with content one.
    /// Sign is normalized so the graded-lex leading coefficient is positive.
    pub fn primitive_integer_scale(&self) -> SparsePolynomial {
        use num_bigint::BigInt;
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = BigInt::one();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * Rational::from_integer(lcm.clone());
            gcd = gcd.gcd(&scaled.to_integer());
        }
        let mut scale = Rational::new(lcm, gcd);
        let lead = self.terms.iter().next_back().unwrap().1;
        if (lead * &scale) < Rational::zero() {
            scale = -scale;
        }
        self.scale(&scale)
    }
}

fn format_coeff(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for SparsePolynomial {
    /// Canonical graded-lexicographic rendering, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_constant() {
                factors.push(format_coeff(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn xy() -> [&'static str; 2] {
        ["x", "y"]
    }

    #[test]
    fn no_zero_terms_stored() {
        let x = SparsePolynomial::var(&xy(), 0);
        let p = x.sub(&x);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn graded_lex_display() {
        let v = ["x", "y", "z"];
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        let z = SparsePolynomial::var(&v, 2);
        // y^2 z - x^3 prints with x^3 first (graded-lex descending).
        let p = y.pow(2).mul(&z).sub(&x.pow(3));
        assert_eq!(p.to_string(), "-x^3 + y^2*z");
        let q = x.pow(2).scale(&rat(1, 2)).add(&y).sub(&SparsePolynomial::constant(&v, rint(3)));
        assert_eq!(q.to_string(), "1/2*x^2 + y - 3");
    }

    #[test]
    fn substitution_composes() {
        let v = xy();
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        // blowup substitution (x, y) -> (x, x*y) applied to y^2 - x^3
        let p = y.pow(2).sub(&x.pow(3));
        let q = p.substitute(&[x.clone(), x.mul(&y)]);
        assert_eq!(q, x.pow(2).mul(&y.pow(2)).sub(&x.pow(3)));
        assert_eq!(q.min_exponent(0), 2);
    }

    #[test]
    fn homogeneity_and_orders() {
        let v = ["x", "y", "z"];
        let x = SparsePolynomial::var(&v, 0);
        let z = SparsePolynomial::var(&v, 2);
        let p = x.pow(3).add(&z.pow(3));
        assert!(p.is_homogeneous());
        assert_eq!(p.total_degree(), Some(3));
        let q = p.add(&x);
        assert!(!q.is_homogeneous());
        assert_eq!(q.order_at_origin(), Some(1));
    }

    #[test]
    fn eval_and_partial() {
        let v = xy();
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        let p = x.pow(2).mul(&y).add(&y.pow(3));
        assert_eq!(p.eval(&[rint(2), rint(3)]), rint(39));
        assert_eq!(p.partial(0), x.mul(&y).scale(&rint(2)));
        assert_eq!(p.partial(1), x.pow(2).add(&y.pow(2).scale(&rint(3))));
    }
}
