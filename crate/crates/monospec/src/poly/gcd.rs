//! Bivariate gcds, squarefree tests, and gcd computations modulo a
//! squarefree univariate modulus.
//!
//! The modular part decides whether a polynomial system has common zeros
//! lying over the roots of a modulus w(x) without factoring w: whenever a
//! leading-coefficient inversion fails, the modulus splits and both
//! branches are pursued (dynamic evaluation).

use crate::error::{Error, Result};
use crate::poly::univariate::{
    deg, trim, uni_div_rem, uni_gcd, uni_is_zero, uni_mul, uni_scale, uni_sub, UniPoly,
};
use crate::poly::SparsePolynomial;
use crate::rat::Rational;
use num_traits::One;

/// Content of `p` with respect to `main`: the gcd of its `main`-coefficients,
/// each of which must be univariate in `other`.
pub fn content_in(p: &SparsePolynomial, main: usize, other: usize) -> UniPoly {
    let mut g: UniPoly = Vec::new();
    for c in p.coeffs_in(main) {
        if !c.is_zero() {
            g = uni_gcd(&g, &crate::poly::univariate::to_dense(&c, other));
        }
    }
    g
}

fn divide_content(p: &SparsePolynomial, main: usize, other: usize, cont: &UniPoly) -> SparsePolynomial {
    let coeffs = p.coeffs_in(main);
    let divided: Vec<SparsePolynomial> = coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                c.clone()
            } else {
                let dense = crate::poly::univariate::to_dense(c, other);
                let q = crate::poly::univariate::uni_div_exact(&dense, cont)
                    .expect("content division must be exact");
                crate::poly::univariate::from_dense(
                    &c.variables().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                    other,
                    &q,
                )
            }
        })
        .collect();
    SparsePolynomial::from_coeffs_in(p.variables(), main, &divided)
}

/// Fraction-free pseudo-remainder of `a` by `b` with respect to `main`.
fn pseudo_rem(a: &SparsePolynomial, b: &SparsePolynomial, main: usize) -> SparsePolynomial {
    let db = b.degree_in(main);
    let bc = b.coeffs_in(main);
    let lead_b = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(main) >= db && (r.degree_in(main) > 0 || db == 0) {
        let dr = r.degree_in(main);
        if dr < db {
            break;
        }
        let rc = r.coeffs_in(main);
        let lead_r = rc[dr as usize].clone();
        // r := lead_b * r - lead_r * main^(dr-db) * b
        let shift = {
            let mut exps = vec![0u32; a.variables().len()];
            exps[main] = dr - db;
            SparsePolynomial::monomial(
                &a.variables().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
                exps,
                Rational::one(),
            )
        };
        r = r.mul(&lead_b).sub(&b.mul(&lead_r).mul(&shift));
        if r.degree_in(main) == dr && !r.is_zero() {
            // Exact cancellation of the top coefficient is guaranteed.
            break;
        }
    }
    r
}

/// Gcd of two polynomials involving no variables beyond `{main, other}`,
/// via primitive pseudo-remainder sequences. The result is primitive with
/// integer coefficients and positive leading coefficient.
pub fn gcd_bivariate(
    p: &SparsePolynomial,
    q: &SparsePolynomial,
    main: usize,
    other: usize,
) -> SparsePolynomial {
    let vars: Vec<&str> = p.variables().iter().map(|s| s.as_str()).collect();
    if p.is_zero() {
        return q.primitive_integer_scale();
    }
    if q.is_zero() {
        return p.primitive_integer_scale();
    }
    if p.degree_in(main) == 0 && q.degree_in(main) == 0 {
        let g = uni_gcd(
            &crate::poly::univariate::to_dense(p, other),
            &crate::poly::univariate::to_dense(q, other),
        );
        return crate::poly::univariate::from_dense(&vars, other, &g).primitive_integer_scale();
    }
    let cont_p = content_in(p, main, other);
    let cont_q = content_in(q, main, other);
    let cont_gcd = uni_gcd(&cont_p, &cont_q);

    let pp_p = divide_content(p, main, other, &cont_p);
    let pp_q = divide_content(q, main, other, &cont_q);

    let (mut r0, mut r1) = if pp_p.degree_in(main) >= pp_q.degree_in(main) {
        (pp_p, pp_q)
    } else {
        (pp_q, pp_p)
    };
    while !r1.is_zero() && r1.degree_in(main) > 0 {
        let r = pseudo_rem(&r0, &r1, main);
        let r = if r.is_zero() {
            r
        } else {
            let c = content_in(&r, main, other);
            divide_content(&r, main, other, &c)
        };
        r0 = r1;
        r1 = r;
    }
    let pp_gcd = if r1.is_zero() {
        r0
    } else {
        // A nonzero remainder of main-degree zero makes the gcd trivial
        // in the main variable.
        SparsePolynomial::constant(&vars, Rational::one())
    };
    let cont_poly = crate::poly::univariate::from_dense(&vars, other, &cont_gcd);
    pp_gcd.mul(&cont_poly).primitive_integer_scale()
}

/// Squarefree test for a nonzero polynomial involving no variables beyond
/// `{main, other}`: gcd with both partials must be constant.
pub fn is_squarefree_bivariate(p: &SparsePolynomial, main: usize, other: usize) -> bool {
    assert!(!p.is_zero());
    if p.is_constant() {
        return true;
    }
    let mut g = gcd_bivariate(p, &p.partial(main), main, other);
    if !g.is_constant() {
        g = gcd_bivariate(&g, &p.partial(other), main, other);
    }
    g.is_constant()
}

/// Extended Euclid on dense univariate rationals: returns `(g, s, t)` with
/// `s·a + t·b = g` and `g` monic (or zero).
pub fn uni_ext_gcd(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0: UniPoly = vec![Rational::one()];
    let mut s1: UniPoly = Vec::new();
    let mut t0: UniPoly = Vec::new();
    let mut t1: UniPoly = vec![Rational::one()];
    while !uni_is_zero(&r1) {
        let (q, r) = uni_div_rem(&r0, &r1);
        let ns = uni_sub(&s0, &uni_mul(&q, &s1));
        let nt = uni_sub(&t0, &uni_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = ns;
        t0 = t1;
        t1 = nt;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        r0 = uni_scale(&r0, &inv);
        s0 = uni_scale(&s0, &inv);
        t0 = uni_scale(&t0, &inv);
    }
    (r0, s0, t0)
}

/// Polynomial in `y` with coefficients in `Q[x]/(w)`.
type ModPoly = Vec<UniPoly>;

fn mod_reduce(p: &ModPoly, w: &UniPoly) -> ModPoly {
    let mut out: ModPoly = p
        .iter()
        .map(|c| uni_div_rem(c, w).1)
        .collect();
    while out.last().map_or(false, uni_is_zero) {
        out.pop();
    }
    out
}

fn mod_is_zero(p: &ModPoly) -> bool {
    p.is_empty()
}

/// One Euclidean elimination of the leading term of `a` by `b`; the leading
/// coefficient of `b` must be invertible mod `w` (checked by the caller).
fn mod_eliminate(a: &ModPoly, b: &ModPoly, lead_inv: &UniPoly, w: &UniPoly) -> ModPoly {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let factor = uni_div_rem(&uni_mul(a.last().unwrap(), lead_inv), w).1;
    let mut out = a.clone();
    for (i, c) in b.iter().enumerate() {
        let sub = uni_div_rem(&uni_mul(&factor, c), w).1;
        let idx = da - db + i;
        out[idx] = uni_sub(&out[idx], &sub);
    }
    mod_reduce(&out, w)
}

/// Outcome on one branch of the dynamic-evaluation gcd: modulus of the
/// branch and the `y`-degree of the gcd there, or `None` when every input
/// polynomial vanished identically on the branch.
#[derive(Debug, Clone)]
pub struct BranchGcd {
    pub modulus: UniPoly,
    pub gcd_degree: Option<usize>,
}

fn gcd_pair_mod(a: ModPoly, b: ModPoly, w: UniPoly, out: &mut Vec<(UniPoly, ModPoly)>) {
    let a = mod_reduce(&a, &w);
    let b = mod_reduce(&b, &w);
    if mod_is_zero(&b) {
        out.push((w, a));
        return;
    }
    if mod_is_zero(&a) {
        out.push((w, b));
        return;
    }
    let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let lead = small.last().unwrap();
    let (g, s, _) = uni_ext_gcd(lead, &w);
    let gdeg = deg(&g).unwrap_or(0);
    if gdeg == 0 {
        // Leading coefficient invertible: one elimination step, recurse.
        let reduced = mod_eliminate(&big, &small, &s, &w);
        gcd_pair_mod(small, reduced, w, out);
    } else if gdeg == deg(&w).unwrap_or(0) {
        // Leading coefficient is identically zero on this branch.
        let mut stripped = small.clone();
        stripped.pop();
        let stripped = mod_reduce(&stripped, &w);
        gcd_pair_mod(big, stripped, w, out);
    } else {
        // Split the modulus and continue on both branches.
        let w2 = crate::poly::univariate::uni_div_exact(&w, &g)
            .expect("modulus split must be exact");
        gcd_pair_mod(big.clone(), small.clone(), g, out);
        gcd_pair_mod(big, small, w2, out);
    }
}

/// Gcd of a polynomial system in `Q[x]/(w)[y]` over all dynamic-evaluation
/// branches of the squarefree-free modulus `w`.
pub fn modular_system_gcd(system: &[ModPoly], w: &UniPoly) -> Vec<BranchGcd> {
    assert!(!system.is_empty());
    let mut branches: Vec<(UniPoly, ModPoly)> = vec![(w.clone(), mod_reduce(&system[0], w))];
    for f in &system[1..] {
        let mut next = Vec::new();
        for (m, g) in branches {
            gcd_pair_mod(g, mod_reduce(f, &m), m, &mut next);
        }
        branches = next;
    }
    branches
        .into_iter()
        .map(|(m, g)| BranchGcd {
            gcd_degree: if mod_is_zero(&g) {
                None
            } else {
                Some(g.len() - 1)
            },
            modulus: m,
        })
        .collect()
}

/// Converts a sparse polynomial into the `ModPoly` shape: `y`-coefficients
/// as dense univariates in `x`.
pub fn to_mod_poly(p: &SparsePolynomial, y: usize, x: usize) -> ModPoly {
    p.coeffs_in(y)
        .iter()
        .map(|c| {
            if c.is_zero() {
                Vec::new()
            } else {
                crate::poly::univariate::to_dense(c, x)
            }
        })
        .collect()
}

/// Certifies that a bivariate system has no common zeros whose `x`
/// coordinate is a root of `w`. Returns a witness factor of `w` if common
/// zeros exist over some branch, an internal error when the system
/// degenerates (all members vanish on a branch).
pub fn certify_no_solutions_over(
    system: &[SparsePolynomial],
    w: &UniPoly,
    y: usize,
    x: usize,
) -> Result<Option<UniPoly>> {
    if deg(w).unwrap_or(0) == 0 {
        return Ok(None);
    }
    let mods: Vec<ModPoly> = system.iter().map(|p| to_mod_poly(p, y, x)).collect();
    for branch in modular_system_gcd(&mods, w) {
        match branch.gcd_degree {
            None => {
                return Err(Error::Internal(
                    "singular system vanishes identically on a branch".into(),
                ))
            }
            Some(d) if d >= 1 => return Ok(Some(branch.modulus)),
            _ => {}
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::univariate::to_dense;
    use crate::rat::rint;

    fn xy() -> [&'static str; 2] {
        ["x", "y"]
    }

    #[test]
    fn bivariate_gcd_of_products() {
        let v = xy();
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        let common = y.pow(2).sub(&x.pow(3));
        let p = common.mul(&x.add(&y));
        let q = common.mul(&x.sub(&y));
        let g = gcd_bivariate(&p, &q, 1, 0);
        assert_eq!(g, common.primitive_integer_scale());
    }

    #[test]
    fn squarefree_detection() {
        let v = xy();
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        let cusp = y.pow(2).sub(&x.pow(3));
        assert!(is_squarefree_bivariate(&cusp, 1, 0));
        let sq = cusp.mul(&cusp);
        assert!(!is_squarefree_bivariate(&sq, 1, 0));
        let tac = y.pow(2).sub(&x.pow(4));
        assert!(is_squarefree_bivariate(&tac, 1, 0));
        let with_sq_line = x.pow(2).mul(&y.sub(&x));
        assert!(!is_squarefree_bivariate(&with_sq_line, 1, 0));
    }

    #[test]
    fn modular_gcd_finds_common_roots_over_irrational_locus() {
        let v = xy();
        let x = SparsePolynomial::var(&v, 0);
        let y = SparsePolynomial::var(&v, 1);
        let two = SparsePolynomial::constant(&v, rint(2));
        // y^2 - 2 and y - x share the zero (±√2, ±√2) over x^2 - 2.
        let p = y.pow(2).sub(&two);
        let q = y.sub(&x);
        let w = to_dense(&x.pow(2).sub(&two), 0);
        let witness = certify_no_solutions_over(&[p.clone(), q.clone()], &w, 1, 0).unwrap();
        assert!(witness.is_some());
        // y^2 - 3 and y - x have no common zeros over x^2 - 2.
        let three = SparsePolynomial::constant(&v, rint(3));
        let p2 = y.pow(2).sub(&three);
        let witness2 = certify_no_solutions_over(&[p2, q], &w, 1, 0).unwrap();
        assert!(witness2.is_none());
    }

    #[test]
    fn ext_gcd_bezout_identity() {
        let a: UniPoly = vec![rint(-1), rint(0), rint(1)]; // t^2 - 1
        let b: UniPoly = vec![rint(2), rint(1)]; // t + 2
        let (g, s, t) = uni_ext_gcd(&a, &b);
        let lhs = crate::poly::univariate::uni_add(&uni_mul(&s, &a), &uni_mul(&t, &b));
        assert_eq!(lhs, g);
        assert_eq!(deg(&g), Some(0));
    }
}
