//! Dense univariate helpers: exact division, gcd, rational roots,
//! cyclotomic polynomials.
//!
//! A univariate polynomial is a `Vec<Rational>` of coefficients in
//! ascending degree order with a nonzero last entry (empty = zero).

use crate::poly::{Monomial, SparsePolynomial};
use crate::rat::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type UniPoly = Vec<Rational>;

pub fn trim(mut p: UniPoly) -> UniPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn deg(p: &UniPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub fn uni_is_zero(p: &UniPoly) -> bool {
    p.is_empty()
}

pub fn uni_add(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(out)
}

pub fn uni_neg(a: &UniPoly) -> UniPoly {
    a.iter().map(|c| -c).collect()
}

pub fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    uni_add(a, &uni_neg(b))
}

pub fn uni_mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, c) in a.iter().enumerate() {
        for (j, d) in b.iter().enumerate() {
            out[i + j] += c * d;
        }
    }
    trim(out)
}

pub fn uni_scale(a: &UniPoly, c: &Rational) -> UniPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|k| k * c).collect()
}

/// Quotient and remainder of `a / b`; panics if `b` is zero.
pub fn uni_div_rem(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db {
        let dr = rem.len() - 1;
        let c = rem.last().unwrap() / &lead;
        quot[dr - db] = c.clone();
        for i in 0..=db {
            let t = &b[i] * &c;
            rem[dr - db + i] -= t;
        }
        rem = trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (trim(quot), rem)
}

/// Exact division; `None` if the remainder is nonzero.
pub fn uni_div_exact(a: &UniPoly, b: &UniPoly) -> Option<UniPoly> {
    let (q, r) = uni_div_rem(a, b);
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Monic gcd via Euclid; gcd(0, 0) = 0.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let (_, r) = uni_div_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lead) = a.last().cloned() {
        a = uni_scale(&a, &lead.recip());
    }
    a
}

pub fn uni_derivative(a: &UniPoly) -> UniPoly {
    if a.len() <= 1 {
        return Vec::new();
    }
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn uni_eval(a: &UniPoly, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Extracts the dense coefficient list of a polynomial that involves only
/// the variable `var` (all other exponents must be zero).
pub fn to_dense(p: &SparsePolynomial, var: usize) -> UniPoly {
    let mut out = vec![Rational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        for (i, &e) in m.0.iter().enumerate() {
            assert!(i == var || e == 0, "polynomial is not univariate in the chosen variable");
        }
        out[m.0[var] as usize] = c.clone();
    }
    trim(out)
}

/// Builds a sparse polynomial in the given variable set from dense
/// univariate coefficients.
pub fn from_dense(vars: &[&str], var: usize, coeffs: &UniPoly) -> SparsePolynomial {
    let mut p = SparsePolynomial::zero(vars);
    for (e, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            let mut exps = vec![0u32; vars.len()];
            exps[var] = e as u32;
            p.add_term(Monomial(exps), c.clone());
        }
    }
    p
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            large.push(&n / &d);
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small.dedup();
    small
}

/// All rational roots with multiplicities, ascending. Uses the rational
/// root test on the integer-scaled polynomial and deflates repeatedly.
pub fn rational_roots(p: &UniPoly) -> Vec<(Rational, usize)> {
    assert!(!p.is_empty(), "rational_roots of the zero polynomial");
    let mut p = p.clone();
    let mut roots: Vec<(Rational, usize)> = Vec::new();

    // Strip the root at zero first.
    let mut zero_mult = 0usize;
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if p.len() <= 1 {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        return roots;
    }

    // Clear denominators to apply the rational root test.
    let mut lcm = BigInt::one();
    for c in &p {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().unwrap();
    let an = ints.last().unwrap();

    let mut candidates: Vec<Rational> = Vec::new();
    for num in positive_divisors(a0) {
        for den in positive_divisors(an) {
            let q = Rational::new(num.clone(), den.clone());
            candidates.push(q.clone());
            candidates.push(-q);
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        let mut mult = 0usize;
        while p.len() > 1 && uni_eval(&p, &cand).is_zero() {
            // Deflate by (t - cand).
            let divisor = vec![-cand.clone(), Rational::one()];
            p = uni_div_exact(&p, &divisor).expect("deflation must be exact");
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

/// Flat ascending root list with repeats for multiplicities.
pub fn rational_roots_flat(p: &UniPoly) -> Vec<Rational> {
    rational_roots(p)
        .into_iter()
        .flat_map(|(r, m)| std::iter::repeat(r).take(m))
        .collect()
}

/// The part of `p` left after dividing out every rational root.
pub fn strip_rational_roots(p: &UniPoly) -> UniPoly {
    let mut q = p.clone();
    for (r, m) in rational_roots(p) {
        let divisor = vec![-r, Rational::one()];
        for _ in 0..m {
            q = uni_div_exact(&q, &divisor).expect("root division must be exact");
        }
    }
    q
}

/// The `e`-th cyclotomic polynomial, by exact division of `t^e − 1` by the
/// lower-order cyclotomics.
pub fn cyclotomic_dense(e: u32) -> UniPoly {
    assert!(e >= 1);
    // t^e - 1
    let mut num = vec![Rational::zero(); e as usize + 1];
    num[0] = -Rational::one();
    num[e as usize] = Rational::one();
    let mut num = trim(num);
    for d in 1..e {
        if e % d == 0 {
            let phi = cyclotomic_dense(d);
            num = uni_div_exact(&num, &phi).expect("cyclotomic division must be exact");
        }
    }
    num
}

/// The `e`-th cyclotomic polynomial as a sparse polynomial in `t`.
pub fn cyclotomic(e: u32) -> SparsePolynomial {
    from_dense(&["t"], 0, &cyclotomic_dense(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn upoly(coeffs: &[i64]) -> UniPoly {
        trim(coeffs.iter().map(|&c| rint(c)).collect())
    }

    #[test]
    fn roots_of_quadratics() {
        // t^2 - 1 -> {-1, 1}
        assert_eq!(
            rational_roots_flat(&upoly(&[-1, 0, 1])),
            vec![rint(-1), rint(1)]
        );
        // 2t^2 - 3t + 1 = (2t - 1)(t - 1) -> {1/2, 1}
        assert_eq!(
            rational_roots_flat(&upoly(&[1, -3, 2])),
            vec![rat(1, 2), rint(1)]
        );
        // t^2 + 1 -> {}
        assert!(rational_roots_flat(&upoly(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn roots_with_multiplicity_and_substitution_check() {
        // (t - 2)^2 (3t + 1) t
        let p = uni_mul(
            &uni_mul(&upoly(&[-2, 1]), &upoly(&[-2, 1])),
            &uni_mul(&upoly(&[1, 3]), &upoly(&[0, 1])),
        );
        let roots = rational_roots(&p);
        assert_eq!(
            roots,
            vec![(rat(-1, 3), 1), (rint(0), 1), (rint(2), 2)]
        );
        for (r, _) in roots {
            assert!(uni_eval(&p, &r).is_zero());
        }
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic(1).to_string(), "t - 1");
        assert_eq!(cyclotomic(4).to_string(), "t^2 + 1");
        assert_eq!(cyclotomic(6).to_string(), "t^2 - t + 1");
    }

    #[test]
    fn cyclotomic_product_property() {
        for n in 1..=30u32 {
            let mut prod = vec![Rational::one()];
            for e in 1..=n {
                if n % e == 0 {
                    prod = uni_mul(&prod, &cyclotomic_dense(e));
                }
            }
            let mut expect = vec![Rational::zero(); n as usize + 1];
            expect[0] = -Rational::one();
            expect[n as usize] = Rational::one();
            assert_eq!(prod, trim(expect), "product of cyclotomics at n={n}");
        }
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = uni_mul(&upoly(&[1, 1]), &upoly(&[-1, 0, 1]));
        let b = uni_mul(&upoly(&[1, 1]), &upoly(&[3, 1]));
        let g = uni_gcd(&a, &b);
        assert_eq!(g, upoly(&[1, 1]));
        assert_eq!(uni_div_exact(&a, &g).unwrap(), upoly(&[-1, 0, 1]));
        assert!(uni_div_exact(&a, &upoly(&[3, 1])).is_none());
    }
}
