//! Sylvester resultants for sparse polynomials in up to three variables.
//!
//! Convention: the Sylvester matrix holds coefficients in ascending degree
//! order with the rows of the first argument on top, so
//! `Res_x(x - a, x - b) = b - a`.
//!
//! The determinant is computed by evaluating the matrix entries on a
//! rational grid and interpolating, which sidesteps intermediate
//! expression swell; evaluation commutes with the determinant because the
//! matrix shape is fixed symbolically first.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::univariate::{trim, uni_scale, UniPoly};
use crate::poly::{Monomial, SparsePolynomial};
use crate::rat::{rint, Rational};
use num_traits::Zero;

/// Degenerate elimination: one side is constant in the eliminated variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialElimination {
    pub side: &'static str,
}

impl From<TrivialElimination> for Error {
    fn from(t: TrivialElimination) -> Error {
        Error::Input(format!(
            "trivial elimination: {} argument is constant in the eliminated variable",
            t.side
        ))
    }
}

/// Builds the Sylvester matrix of `p` and `q` with respect to `var`;
/// entries are polynomials in the remaining variables.
fn sylvester_matrix(
    p: &SparsePolynomial,
    q: &SparsePolynomial,
    var: usize,
) -> Vec<Vec<SparsePolynomial>> {
    let dp = p.degree_in(var) as usize;
    let dq = q.degree_in(var) as usize;
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let n = dp + dq;
    let zero = SparsePolynomial::zero_named(p.variables().to_vec());
    let mut m = vec![vec![zero; n]; n];
    for i in 0..dq {
        for (j, c) in pc.iter().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..dp {
        for (j, c) in qc.iter().enumerate() {
            m[dq + i][i + j] = c.clone();
        }
    }
    m
}

fn numeric_det(entries: &[Vec<Rational>]) -> Rational {
    let n = entries.len();
    let data: Vec<Rational> = entries.iter().flatten().cloned().collect();
    Matrix::from_flat(n, n, data).determinant()
}

/// Lagrange interpolation through `(x_i, y_i)` with distinct nodes.
pub fn lagrange(points: &[(Rational, Rational)]) -> UniPoly {
    let mut acc: UniPoly = Vec::new();
    for (i, (xi, yi)) in points.iter().enumerate() {
        // Basis polynomial for node i, scaled by y_i.
        let mut basis: UniPoly = vec![yi.clone()];
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            // multiply by (t - xj) / (xi - xj)
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = uni_scale(&next, &denom.recip());
        }
        let mut sum = vec![Rational::zero(); acc.len().max(basis.len())];
        for (k, c) in acc.iter().enumerate() {
            sum[k] += c;
        }
        for (k, c) in basis.iter().enumerate() {
            sum[k] += c;
        }
        acc = sum;
    }
    trim(acc)
}

/// Sylvester resultant of `p` and `q` eliminating `var`. Exact; returns the
/// trivial-elimination marker if either argument has degree zero in `var`.
pub fn resultant(
    p: &SparsePolynomial,
    q: &SparsePolynomial,
    var: usize,
) -> std::result::Result<SparsePolynomial, TrivialElimination> {
    assert_eq!(p.variables(), q.variables(), "mixed variable sets");
    if p.is_zero() || p.degree_in(var) == 0 {
        return Err(TrivialElimination { side: "first" });
    }
    if q.is_zero() || q.degree_in(var) == 0 {
        return Err(TrivialElimination { side: "second" });
    }
    let m = sylvester_matrix(p, q, var);
    let nvars = p.variables().len();
    let rest: Vec<usize> = (0..nvars).filter(|&v| v != var).collect();
    let live: Vec<usize> = rest
        .iter()
        .copied()
        .filter(|&v| m.iter().flatten().any(|e| e.degree_in(v) > 0))
        .collect();

    match live.len() {
        0 => {
            let entries: Vec<Vec<Rational>> = m
                .iter()
                .map(|row| row.iter().map(|e| e.constant_term()).collect())
                .collect();
            let det = numeric_det(&entries);
            Ok(SparsePolynomial::constant_named_vars(
                p.variables(),
                det,
            ))
        }
        1 => {
            let v = live[0];
            // Degree bound: sum over rows of the maximal degree in the row.
            let bound: usize = m
                .iter()
                .map(|row| row.iter().map(|e| e.degree_in(v) as usize).max().unwrap_or(0))
                .sum();
            let mut points = Vec::with_capacity(bound + 1);
            for t in 0..=bound {
                let x = rint(t as i64);
                let entries: Vec<Vec<Rational>> = m
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| e.eval_var(v, &x).constant_term())
                            .collect()
                    })
                    .collect();
                points.push((x, numeric_det(&entries)));
            }
            let dense = lagrange(&points);
            let mut out = SparsePolynomial::zero_named(p.variables().to_vec());
            for (e, c) in dense.iter().enumerate() {
                if !c.is_zero() {
                    let mut exps = vec![0u32; nvars];
                    exps[v] = e as u32;
                    out.add_term(Monomial(exps), c.clone());
                }
            }
            Ok(out)
        }
        2 => {
            let (v1, v2) = (live[0], live[1]);
            let b1: usize = m
                .iter()
                .map(|row| row.iter().map(|e| e.degree_in(v1) as usize).max().unwrap_or(0))
                .sum();
            let b2: usize = m
                .iter()
                .map(|row| row.iter().map(|e| e.degree_in(v2) as usize).max().unwrap_or(0))
                .sum();
            // Interpolate in v2 for each node of v1, then across v1.
            let mut slices: Vec<(Rational, UniPoly)> = Vec::with_capacity(b1 + 1);
            for s in 0..=b1 {
                let xs = rint(s as i64);
                let m1: Vec<Vec<SparsePolynomial>> = m
                    .iter()
                    .map(|row| row.iter().map(|e| e.eval_var(v1, &xs)).collect())
                    .collect();
                let mut points = Vec::with_capacity(b2 + 1);
                for t in 0..=b2 {
                    let xt = rint(t as i64);
                    let entries: Vec<Vec<Rational>> = m1
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|e| e.eval_var(v2, &xt).constant_term())
                                .collect()
                        })
                        .collect();
                    points.push((xt, numeric_det(&entries)));
                }
                slices.push((xs, lagrange(&points)));
            }
            let max_len = slices.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
            let mut out = SparsePolynomial::zero_named(p.variables().to_vec());
            for e2 in 0..max_len {
                let pts: Vec<(Rational, Rational)> = slices
                    .iter()
                    .map(|(x, poly)| {
                        (
                            x.clone(),
                            poly.get(e2).cloned().unwrap_or_else(Rational::zero),
                        )
                    })
                    .collect();
                let in_v1 = lagrange(&pts);
                for (e1, c) in in_v1.iter().enumerate() {
                    if !c.is_zero() {
                        let mut exps = vec![0u32; nvars];
                        exps[v1] = e1 as u32;
                        exps[v2] = e2 as u32;
                        out.add_term(Monomial(exps), c.clone());
                    }
                }
            }
            Ok(out)
        }
        _ => unreachable!("resultants are only taken in up to three variables"),
    }
}

impl SparsePolynomial {
    fn constant_named_vars(vars: &[String], c: Rational) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero_named(vars.to_vec());
        p.add_term(Monomial(vec![0; vars.len()]), c);
        p
    }
}

/// Resultant callers use when both inputs are genuinely bivariate; maps the
/// degenerate case to a library error.
pub fn resultant_strict(
    p: &SparsePolynomial,
    q: &SparsePolynomial,
    var: usize,
) -> Result<SparsePolynomial> {
    resultant(p, q, var).map_err(Error::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rint;

    #[test]
    fn circle_meets_line() {
        let v = ["x", "y"];
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        let one = SparsePolynomial::constant(&v, rint(1));
        let p = x.pow(2).add(&y.pow(2)).sub(&one);
        let q = x.sub(&y);
        let r = resultant(&p, &q, 0).unwrap();
        // 2y^2 - 1
        assert_eq!(r, y.pow(2).scale(&rint(2)).sub(&one));
    }

    #[test]
    fn common_factor_gives_zero() {
        let v = ["x", "y"];
        let x = SparsePolynomial::var(&v, 0);
        let r = resultant(&x, &x, 0).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn linear_sign_convention() {
        let v = ["x", "a", "b"];
        let x = SparsePolynomial::var(&v, 0);
        let a = SparsePolynomial::var(&v, 1);
        let b = SparsePolynomial::var(&v, 2);
        let r = resultant(&x.sub(&a), &x.sub(&b), 0).unwrap();
        assert_eq!(r, b.sub(&a));
    }

    #[test]
    fn constant_in_variable_is_trivial_elimination() {
        let v = ["x", "y"];
        let y = SparsePolynomial::var(&v, 1);
        let x = SparsePolynomial::var(&v, 0);
        assert!(resultant(&y, &x, 0).is_err());
    }
}
