//! Newton polyhedra of monomial ideals in up to three variables, and the
//! monomial multiplier-ideal machinery built on them: the ideal at a given
//! weight, the log canonical threshold, and jumping numbers.
//!
//! Facets are enumerated exhaustively from candidate normals spanned by
//! subsets of generator points and coordinate directions, then filtered by
//! support and dimension checks. At this scale no convex-hull dependency
//! is warranted.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rat::{rint, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeSet;

/// A monomial ideal given by its minimal generators' exponent tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    dim: usize,
    gens: Vec<Vec<u64>>,
}

impl MonomialIdeal {
    /// Builds an ideal in `dim ∈ {1,2,3}` variables; the generator list is
    /// minimalized (componentwise-dominated generators win, dominating
    /// ones are dropped), sorted and deduplicated.
    pub fn new(dim: usize, gens: Vec<Vec<u64>>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Input(format!(
                "monomial ideals support 1..3 variables, got {dim}"
            )));
        }
        if gens.is_empty() {
            return Err(Error::Input(
                "monomial ideal needs at least one generator".into(),
            ));
        }
        if gens.iter().any(|g| g.len() != dim) {
            return Err(Error::Input(
                "generator arity does not match dimension".into(),
            ));
        }
        let mut unique: Vec<Vec<u64>> = Vec::new();
        for g in gens {
            if !unique.contains(&g) {
                unique.push(g);
            }
        }
        let minimal: Vec<Vec<u64>> = unique
            .iter()
            .filter(|g| {
                !unique
                    .iter()
                    .any(|h| h != *g && h.iter().zip(g.iter()).all(|(a, b)| a <= b))
            })
            .cloned()
            .collect();
        let mut minimal = minimal;
        minimal.sort();
        Ok(MonomialIdeal { dim, gens: minimal })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.gens
    }

    /// The unit ideal is generated by the constant monomial.
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Membership of a monomial exponent vector.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.gens
            .iter()
            .any(|g| g.iter().zip(v).all(|(a, b)| a <= b))
    }
}

/// A supporting half-space `⟨normal, v⟩ ≥ offset` with a primitive
/// nonnegative integer normal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub offset: u64,
}

/// The Newton polyhedron `Γ(I)`: convex hull of the generators plus the
/// positive orthant, described by an irredundant facet list. Coordinate
/// half-spaces `v_i ≥ 0` are part of the list with offset zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub dim: usize,
    pub facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    /// Facets with positive offset, the ones that matter for interiority.
    pub fn positive_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.offset > 0)
    }
}

fn primitive_normal(kernel_vec: &[Rational]) -> Option<Vec<i64>> {
    use num_traits::One;
    let mut lcm = BigInt::one();
    for c in kernel_vec {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = kernel_vec
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    if g.is_zero() {
        return None;
    }
    let ints: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
    let mut out: Vec<i64> = ints
        .iter()
        .map(|v| i64::try_from(v.clone()).expect("normal entry out of range"))
        .collect();
    if out.iter().all(|&v| v <= 0) {
        for v in &mut out {
            *v = -*v;
        }
    }
    if out.iter().any(|&v| v < 0) {
        return None;
    }
    Some(out)
}

fn subsets(items: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(
        start: usize,
        items: usize,
        size: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items {
            cur.push(i);
            rec(i + 1, items, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, items, size, &mut Vec::new(), &mut out);
    out
}

/// Computes the Newton polyhedron of a monomial ideal: a complete,
/// irredundant facet list in lexicographic order on the normals.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> NewtonPolyhedron {
    let n = ideal.dim;
    let gens = ideal.generators();
    let mut found: BTreeSet<Facet> = BTreeSet::new();

    for s in 1..=n {
        let t = n - s;
        for gen_subset in subsets(gens.len(), s) {
            for axis_subset in subsets(n, t) {
                // Conditions: a ⊥ (g_i − g_0) and a_t = 0 on chosen axes.
                let mut rows: Vec<Vec<Rational>> = Vec::new();
                let g0 = &gens[gen_subset[0]];
                for &gi in &gen_subset[1..] {
                    rows.push(
                        (0..n)
                            .map(|j| rint(gens[gi][j] as i64 - g0[j] as i64))
                            .collect(),
                    );
                }
                for &ax in &axis_subset {
                    let mut row = vec![Rational::zero(); n];
                    row[ax] = rint(1);
                    rows.push(row);
                }
                let kernel = if rows.is_empty() {
                    vec![vec![rint(1); n]]
                } else {
                    Matrix::from_rows(rows).kernel_basis()
                };
                if kernel.len() != 1 {
                    continue;
                }
                let Some(normal) = primitive_normal(&kernel[0]) else {
                    continue;
                };
                if normal.iter().all(|&v| v == 0) {
                    continue;
                }
                let offset = gens
                    .iter()
                    .map(|g| {
                        normal
                            .iter()
                            .zip(g)
                            .map(|(&a, &v)| a * v as i64)
                            .sum::<i64>()
                    })
                    .min()
                    .unwrap();
                if offset <= 0 {
                    continue;
                }
                // Dimension check: tight generators plus recession
                // directions must span an affine space of dimension n−1.
                let tight: Vec<&Vec<u64>> = gens
                    .iter()
                    .filter(|g| {
                        normal
                            .iter()
                            .zip(g.iter())
                            .map(|(&a, &v)| a * v as i64)
                            .sum::<i64>()
                            == offset
                    })
                    .collect();
                if tight.is_empty() {
                    continue;
                }
                let t0 = tight[0];
                let mut span_rows: Vec<Vec<Rational>> = tight[1..]
                    .iter()
                    .map(|g| {
                        (0..n)
                            .map(|j| rint(g[j] as i64 - t0[j] as i64))
                            .collect()
                    })
                    .collect();
                for j in 0..n {
                    if normal[j] == 0 {
                        let mut row = vec![Rational::zero(); n];
                        row[j] = rint(1);
                        span_rows.push(row);
                    }
                }
                let span_rank = if span_rows.is_empty() {
                    0
                } else {
                    Matrix::from_rows(span_rows).rank()
                };
                if span_rank != n - 1 {
                    continue;
                }
                found.insert(Facet {
                    normal: normal.iter().map(|&v| v as u64).collect(),
                    offset: offset as u64,
                });
            }
        }
    }

    for i in 0..n {
        let mut normal = vec![0u64; n];
        normal[i] = 1;
        found.insert(Facet { normal, offset: 0 });
    }

    NewtonPolyhedron {
        dim: n,
        facets: found.into_iter().collect(),
    }
}

fn dot_plus_one(normal: &[u64], v: &[u64]) -> u64 {
    normal.iter().zip(v).map(|(&a, &x)| a * (x + 1)).sum()
}

/// Strict-interior membership of `v + 1⃗` in `α·Γ(I)`: strict inequality on
/// every positive facet, and positivity on coordinate facets (automatic
/// for `v + 1⃗`, still checked to match the statement being implemented).
pub fn interior_shifted(poly: &NewtonPolyhedron, v: &[u64], alpha: &Rational) -> bool {
    for f in &poly.facets {
        let lhs = rint(dot_plus_one(&f.normal, v) as i64);
        if f.offset > 0 {
            if lhs <= alpha * rint(f.offset as i64) {
                return false;
            }
        } else if lhs <= Rational::zero() {
            return false;
        }
    }
    true
}

fn search_bound(poly: &NewtonPolyhedron, ideal: &MonomialIdeal, alpha: &Rational) -> u64 {
    let maxcoord = ideal
        .generators()
        .iter()
        .flat_map(|g| g.iter())
        .copied()
        .max()
        .unwrap_or(0);
    let mut bound = (alpha * rint(maxcoord as i64)).ceil().to_integer() + 1;
    for f in poly.positive_facets() {
        for &a in &f.normal {
            if a > 0 {
                let b = (alpha * rint(f.offset as i64) / rint(a as i64))
                    .ceil()
                    .to_integer();
                if b > bound {
                    bound = b;
                }
            }
        }
    }
    u64::try_from(bound.max(BigInt::zero())).expect("search bound out of range")
}

fn minimal_elements(mut members: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    members.sort();
    let mut out: Vec<Vec<u64>> = Vec::new();
    for v in &members {
        if !out.iter().any(|m| m.iter().zip(v).all(|(a, b)| a <= b)) {
            out.push(v.clone());
        }
    }
    out
}

fn enumerate_box(dim: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; dim];
    loop {
        out.push(v.clone());
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            if v[i] < bound {
                v[i] += 1;
                for w in v.iter_mut().take(i) {
                    *w = 0;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Howald's multiplier ideal of `α·I`: the monomial ideal of all `x^v`
/// with `v + 1⃗` in the interior of `α·Γ(I)`.
pub fn multiplier_ideal(ideal: &MonomialIdeal, alpha: &Rational) -> Result<MonomialIdeal> {
    if alpha <= &Rational::zero() {
        return Err(Error::Input(
            "multiplier ideal weight must be positive".into(),
        ));
    }
    let poly = newton_polyhedron(ideal);
    multiplier_ideal_with(ideal, &poly, alpha, false)
}

/// Variant shared with jumping-number detection: when `closed` is set the
/// interior test uses non-strict inequalities on positive facets, which
/// computes the left limit of the family at `α`.
pub fn multiplier_ideal_with(
    ideal: &MonomialIdeal,
    poly: &NewtonPolyhedron,
    alpha: &Rational,
    closed: bool,
) -> Result<MonomialIdeal> {
    let bound = search_bound(poly, ideal, alpha);
    let mut members = Vec::new();
    for v in enumerate_box(ideal.dim, bound) {
        let inside = if closed {
            poly.facets.iter().all(|f| {
                let lhs = rint(dot_plus_one(&f.normal, &v) as i64);
                if f.offset > 0 {
                    lhs >= alpha * rint(f.offset as i64)
                } else {
                    lhs > Rational::zero()
                }
            })
        } else {
            interior_shifted(poly, &v, alpha)
        };
        if inside {
            members.push(v);
        }
    }
    if members.is_empty() {
        return Err(Error::Internal(
            "multiplier-ideal search box contained no members".into(),
        ));
    }
    MonomialIdeal::new(ideal.dim, minimal_elements(members))
}

/// Log canonical threshold of a proper monomial ideal: the minimum of
/// `⟨a, 1⃗⟩ / b` over positive facets. `None` means the unit ideal, whose
/// threshold is +∞.
pub fn lct(ideal: &MonomialIdeal) -> Option<Rational> {
    if ideal.is_unit() {
        return None;
    }
    let poly = newton_polyhedron(ideal);
    poly.positive_facets()
        .map(|f| {
            let num: i64 = f.normal.iter().map(|&a| a as i64).sum();
            Rational::new(BigInt::from(num), BigInt::from(f.offset))
        })
        .min()
}

/// All jumping numbers of the monomial ideal in `(0, bound]`, detected by
/// comparing minimal generator sets against the left limit at each member
/// of the finite candidate set `⟨a, v+1⟩ / b`.
pub fn jumping_numbers(ideal: &MonomialIdeal, bound: &Rational) -> Result<Vec<Rational>> {
    if ideal.is_unit() {
        return Err(Error::Input(
            "jumping numbers of the unit ideal are undefined".into(),
        ));
    }
    if bound <= &Rational::zero() {
        return Err(Error::Input("jumping-number bound must be positive".into()));
    }
    let poly = newton_polyhedron(ideal);
    let box_bound = search_bound(&poly, ideal, bound);
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    for v in enumerate_box(ideal.dim, box_bound) {
        for f in poly.positive_facets() {
            let t = Rational::new(
                BigInt::from(dot_plus_one(&f.normal, &v)),
                BigInt::from(f.offset),
            );
            if t > Rational::zero() && &t <= bound {
                candidates.insert(t);
            }
        }
    }
    let mut jumps = Vec::new();
    for t in candidates {
        let open = multiplier_ideal_with(ideal, &poly, &t, false)?;
        let left = multiplier_ideal_with(ideal, &poly, &t, true)?;
        if open != left {
            jumps.push(t);
        }
    }
    Ok(jumps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ideal(dim: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::new(dim, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    #[test]
    fn polyhedron_of_plane_cusp_ideal() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let p = newton_polyhedron(&i);
        let positive: Vec<_> = p.positive_facets().collect();
        assert_eq!(positive.len(), 1);
        assert_eq!(positive[0].normal, vec![3, 2]);
        assert_eq!(positive[0].offset, 6);
        // Coordinate half-spaces are part of the description.
        assert!(p
            .facets
            .iter()
            .any(|f| f.normal == vec![1, 0] && f.offset == 0));
        assert!(p
            .facets
            .iter()
            .any(|f| f.normal == vec![0, 1] && f.offset == 0));
    }

    #[test]
    fn polyhedron_one_variable_and_simplex() {
        let i = ideal(1, &[&[1]]);
        let p = newton_polyhedron(&i);
        assert!(p.facets.contains(&Facet {
            normal: vec![1],
            offset: 1
        }));

        let i3 = ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p3 = newton_polyhedron(&i3);
        let positive: Vec<_> = p3.positive_facets().collect();
        assert_eq!(positive.len(), 1);
        assert_eq!(positive[0].normal, vec![1, 1, 1]);
        assert_eq!(positive[0].offset, 1);
    }

    #[test]
    fn howald_multiplier_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let j = multiplier_ideal(&i, &rat(5, 6)).unwrap();
        assert_eq!(j.generators(), &[vec![0, 1], vec![1, 0]]);
        let j2 = multiplier_ideal(&i, &rat(1, 2)).unwrap();
        assert!(j2.is_unit());
        let j3 = multiplier_ideal(&i, &rat(1, 1000)).unwrap();
        assert!(j3.is_unit());
    }

    #[test]
    fn lct_examples() {
        assert_eq!(lct(&ideal(2, &[&[2, 0], &[0, 3]])), Some(rat(5, 6)));
        assert_eq!(lct(&ideal(2, &[&[1, 0], &[0, 1]])), Some(rat(2, 1)));
        assert_eq!(
            lct(&ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            Some(rat(3, 1))
        );
        assert_eq!(lct(&ideal(2, &[&[0, 0]])), None);
    }

    #[test]
    fn jumping_number_examples() {
        let cuspish = ideal(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(
            jumping_numbers(&cuspish, &rat(1, 1)).unwrap(),
            vec![rat(5, 6)]
        );

        let origin = ideal(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(
            jumping_numbers(&origin, &rat(3, 1)).unwrap(),
            vec![rat(2, 1), rat(3, 1)]
        );

        // Below the lct there is nothing.
        assert!(jumping_numbers(&cuspish, &rat(4, 5)).unwrap().is_empty());
    }

    #[test]
    fn lct_is_smallest_jumping_number() {
        let samples = [
            ideal(2, &[&[2, 0], &[0, 3]]),
            ideal(2, &[&[3, 0], &[1, 1], &[0, 4]]),
            ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]),
            ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]),
        ];
        for i in &samples {
            let jumps = jumping_numbers(i, &rat(3, 1)).unwrap();
            assert!(!jumps.is_empty());
            assert_eq!(Some(jumps[0].clone()), lct(i));
        }
    }

    #[test]
    fn monotonicity_in_alpha() {
        let i = ideal(2, &[&[3, 0], &[1, 1], &[0, 4]]);
        let alphas: Vec<Rational> = (1..=24).map(|k| rat(k, 12)).collect();
        let mut prev: Option<MonomialIdeal> = None;
        for a in alphas {
            let j = multiplier_ideal(&i, &a).unwrap();
            if let Some(p) = prev {
                for g in j.generators() {
                    assert!(p.contains(g), "monotonicity failed at {a}");
                }
            }
            prev = Some(j);
        }
    }

    #[test]
    fn minimality_of_generator_lists() {
        let i = ideal(2, &[&[2, 0], &[2, 1], &[0, 3], &[1, 3]]);
        assert_eq!(i.generators(), &[vec![0, 3], vec![2, 0]]);
    }
}
