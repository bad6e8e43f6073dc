//! Truncated two-variable jets: the finite-dimensional model of a local
//! ring modulo a power of the maximal ideal.

use crate::poly::SparsePolynomial;
use crate::rat::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A jet of order `B`: coefficients on bidegrees `(a, b)` with `a + b ≤ B`.
/// Ring operations truncate at order `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet {
    order: u32,
    coeffs: BTreeMap<(u32, u32), Rational>,
}

/// Deterministic basis of the jet space of order `B`: bidegrees sorted by
/// total degree, then by descending first exponent (1, x, y, x², xy, y², …).
pub fn jet_basis(order: u32) -> Vec<(u32, u32)> {
    let mut basis = Vec::new();
    for total in 0..=order {
        for a in (0..=total).rev() {
            basis.push((a, total - a));
        }
    }
    basis
}

impl Jet {
    pub fn zero(order: u32) -> Self {
        Jet {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rational {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set_coeff(&mut self, a: u32, b: u32, c: Rational) {
        assert!(a + b <= self.order, "bidegree beyond truncation order");
        if c.is_zero() {
            self.coeffs.remove(&(a, b));
        } else {
            self.coeffs.insert((a, b), c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Truncation of a polynomial in two variables.
    pub fn from_polynomial(p: &SparsePolynomial, order: u32) -> Self {
        assert_eq!(p.variables().len(), 2);
        let mut jet = Jet::zero(order);
        for (m, c) in p.terms() {
            let (a, b) = (m.0[0], m.0[1]);
            if a + b <= order {
                jet.set_coeff(a, b, jet.coeff(a, b) + c);
            }
        }
        jet
    }

    pub fn to_polynomial(&self, vars: &[&str; 2]) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero(vars);
        for (&(a, b), c) in &self.coeffs {
            p.add_term(crate::poly::Monomial(vec![a, b]), c.clone());
        }
        p
    }

    pub fn add(&self, other: &Jet) -> Jet {
        assert_eq!(self.order, other.order);
        let mut out = self.clone();
        for (&(a, b), c) in &other.coeffs {
            out.set_coeff(a, b, out.coeff(a, b) + c);
        }
        out
    }

    /// Product truncated at the common order.
    pub fn mul(&self, other: &Jet) -> Jet {
        assert_eq!(self.order, other.order);
        let mut out = Jet::zero(self.order);
        for (&(a1, b1), c1) in &self.coeffs {
            for (&(a2, b2), c2) in &other.coeffs {
                let (a, b) = (a1 + a2, b1 + b2);
                if a + b <= self.order {
                    out.set_coeff(a, b, out.coeff(a, b) + c1 * c2);
                }
            }
        }
        out
    }

    /// Coefficient vector over `jet_basis(order)`.
    pub fn to_vector(&self) -> Vec<Rational> {
        jet_basis(self.order)
            .iter()
            .map(|&(a, b)| self.coeff(a, b))
            .collect()
    }

    pub fn from_vector(order: u32, v: &[Rational]) -> Jet {
        let basis = jet_basis(order);
        assert_eq!(v.len(), basis.len());
        let mut jet = Jet::zero(order);
        for (&(a, b), c) in basis.iter().zip(v) {
            if !c.is_zero() {
                jet.set_coeff(a, b, c.clone());
            }
        }
        jet
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    #[test]
    fn jet_multiplication_is_truncated_polynomial_multiplication() {
        let v = ["x", "y"];
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        // Deterministic sweep over small polynomials of degree ≤ 6.
        let polys = [
            x.pow(2).add(&y),
            y.pow(3).sub(&x).add(&SparsePolynomial::constant(&v, rint(2))),
            x.mul(&y).add(&x.pow(4)),
            x.pow(6).sub(&y.pow(5)).add(&x.mul(&y.pow(2))),
        ];
        for order in [2u32, 4, 6] {
            for p in &polys {
                for q in &polys {
                    let jp = Jet::from_polynomial(p, order);
                    let jq = Jet::from_polynomial(q, order);
                    let direct = Jet::from_polynomial(&p.mul(q), order);
                    assert_eq!(jp.mul(&jq), direct);
                }
            }
        }
    }

    #[test]
    fn basis_order_is_graded() {
        assert_eq!(
            jet_basis(2),
            vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
        );
    }
}
