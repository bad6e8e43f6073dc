//! Embedded resolution of plane curve germs by iterated point blowups.
//!
//! The resolver blows up points of the total transform until it is simple
//! normal crossing: strict transforms smooth and pairwise separated,
//! transverse to the exceptional curves, no point on three branches. Along
//! the way it records, per exceptional curve, the pullback multiplicity of
//! every component, the discrepancy, the pullback order of the base point,
//! the proximity relation, and the chart composition reaching the curve.
//!
//! # Conventions
//!
//! - A chart step of kind A with constant `c` is the substitution
//!   `(x, y) ↦ (x, x·(y + c))`: blow up the origin and center the next
//!   chart at the direction `y/x = c`; the new exceptional curve is
//!   `{x = 0}`.
//! - A chart step of kind B is `(x, y) ↦ (x·y, y)`: the chart at the
//!   vertical direction; the new exceptional curve is `{y = 0}`.
//! - A node's own chart is `chart of its base point + [A(0)]`, so its
//!   exceptional curve is always `{first coordinate = 0}` there.
//!
//! Only rational infinitely near points are handled automatically; germs
//! that branch at irrational directions are rejected with the offending
//! direction polynomial, and the manual-cluster path (see [`cluster`])
//! takes over for colength-only invariants.

pub mod cluster;

pub use cluster::{cluster_to_exceptional, ManualCluster};

use crate::error::{Error, Result};
use crate::jet::jet_basis;
use crate::matrix::Matrix;
use crate::poly::gcd::{gcd_bivariate, is_squarefree_bivariate};
use crate::poly::univariate::{
    rational_roots, strip_rational_roots, to_dense, uni_gcd, UniPoly,
};
use crate::poly::SparsePolynomial;
use crate::rat::Rational;
use num_traits::Zero;
use std::collections::VecDeque;

/// One elementary blowup substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartStep {
    /// `(x, y) ↦ (x, x·(y + c))`; exceptional curve `{x = 0}`.
    A { c: Rational },
    /// `(x, y) ↦ (x·y, y)`; exceptional curve `{y = 0}`.
    B,
}

impl ChartStep {
    fn apply(&self, g: &SparsePolynomial) -> SparsePolynomial {
        let vars: Vec<&str> = g.variables().iter().map(|s| s.as_str()).collect();
        let x = SparsePolynomial::var(&vars, 0);
        let y = SparsePolynomial::var(&vars, 1);
        match self {
            ChartStep::A { c } => {
                let shifted = y.add(&SparsePolynomial::constant(&vars, c.clone()));
                g.substitute(&[x.clone(), x.mul(&shifted)])
            }
            ChartStep::B => g.substitute(&[x.mul(&y), y.clone()]),
        }
    }
}

/// Pulls a germ back through a chart composition.
pub fn pull_back(g: &SparsePolynomial, chart: &[ChartStep]) -> SparsePolynomial {
    let mut out = g.clone();
    for step in chart {
        out = step.apply(&out);
    }
    out
}

/// Position of a point on an exceptional curve, in the charts of the
/// blowup that created it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointLoc {
    /// Direction `y/x = c`: the point `(0, c)` of the A-chart.
    Direction(Rational),
    /// The vertical direction: the origin of the B-chart.
    Vertical,
}

/// A curve germ at the origin of a two-variable affine chart.
#[derive(Debug, Clone)]
pub struct CurveGerm {
    components: Vec<(String, SparsePolynomial)>,
}

impl CurveGerm {
    /// Validates and builds a germ: every component must vanish at the
    /// origin, be squarefree, and be coprime to the others.
    pub fn new(components: Vec<(String, SparsePolynomial)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Input("germ needs at least one component".into()));
        }
        for (label, p) in &components {
            if p.variables().len() != 2 {
                return Err(Error::Input(format!(
                    "germ component {label} must be a two-variable polynomial"
                )));
            }
            if p.is_zero() {
                return Err(Error::Input(format!("germ component {label} is zero")));
            }
            if !p.constant_term().is_zero() {
                return Err(Error::Input(format!(
                    "germ component {label} does not vanish at the origin"
                )));
            }
            if !is_squarefree_bivariate(p, 1, 0) {
                return Err(Error::NonreducedComponent {
                    component: label.clone(),
                });
            }
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                let g = gcd_bivariate(&components[i].1, &components[j].1, 1, 0);
                if !g.is_constant() {
                    return Err(Error::Input(format!(
                        "germ components {} and {} share the factor {}",
                        components[i].0, components[j].0, g
                    )));
                }
            }
        }
        Ok(CurveGerm { components })
    }

    pub fn components(&self) -> &[(String, SparsePolynomial)] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// One exceptional curve of the resolution.
#[derive(Debug, Clone)]
pub struct Node {
    /// Nodes this one is proximate to: its base point lies on their curves.
    pub parents: Vec<usize>,
    /// Pullback multiplicity `N` of each component along this curve.
    pub mult_pullback: Vec<u64>,
    /// Multiplicity of each component's strict transform at the base point.
    pub mult_strict: Vec<u64>,
    /// Discrepancy `k`: coefficient in the relative canonical divisor.
    pub discrepancy: u64,
    /// Order of the maximal ideal of the germ's origin along this curve.
    pub point_order: u64,
    /// Chart of the blown-up base point (`None` in manual mode).
    pub chart_point: Option<Vec<ChartStep>>,
}

impl Node {
    /// Chart whose first coordinate cuts out this exceptional curve.
    pub fn chart(&self) -> Option<Vec<ChartStep>> {
        self.chart_point.as_ref().map(|c| {
            let mut chart = c.clone();
            chart.push(ChartStep::A {
                c: Rational::zero(),
            });
            chart
        })
    }
}

/// A surviving point of the final simple-normal-crossing arrangement.
#[derive(Debug, Clone)]
pub struct BoundaryPoint {
    /// The newest exceptional curve through the point.
    pub host: usize,
    pub loc: PointLoc,
    /// All exceptional curves through the point (one or two).
    pub excs: Vec<usize>,
    /// Components whose strict transforms pass through the point.
    pub comps: Vec<usize>,
}

/// Why a point was blown up; the data feeds the termination checks.
#[derive(Debug, Clone)]
pub struct BlowupRecord {
    pub node: usize,
    /// Total strict-transform multiplicity at the point.
    pub m_total: u64,
    /// Tangency excess: Σ over exceptionals through the point of
    /// (intersection multiplicity with the stricts − 1), when positive.
    pub tangency_excess: u64,
    pub is_triple: bool,
    pub forced: bool,
    pub children_m_totals: Vec<u64>,
    pub children_tangency_excess: u64,
    pub children_triples: usize,
}

/// The full divisorial record of an embedded resolution.
#[derive(Debug, Clone)]
pub struct ExceptionalData {
    /// Component labels and, in automatic mode, their local equations.
    pub component_labels: Vec<String>,
    pub component_polys: Option<Vec<SparsePolynomial>>,
    pub nodes: Vec<Node>,
    /// Pairs `(i, j)`, `i < j`, with `E_i · E_j = 1`.
    pub adjacency: Vec<(usize, usize)>,
    /// `E_i²`.
    pub self_intersections: Vec<i64>,
    /// `attachments[i][j]`: transverse crossings of component `j`'s strict
    /// transform with `E_i` in the final arrangement.
    pub attachments: Vec<Vec<u64>>,
    /// Surviving points (automatic mode only).
    pub boundary: Vec<BoundaryPoint>,
    pub blowup_trace: Vec<BlowupRecord>,
}

impl ExceptionalData {
    pub fn is_automatic(&self) -> bool {
        self.component_polys.is_some()
    }

    pub fn num_components(&self) -> usize {
        self.component_labels.len()
    }

    /// `E_i · E_j` for distinct final curves.
    pub fn intersection(&self, i: usize, j: usize) -> u64 {
        let key = (i.min(j), i.max(j));
        u64::from(self.adjacency.contains(&key))
    }

    /// Total pullback multiplicity of a weighted divisor along `E_i`.
    pub fn weighted_pullback(&self, i: usize, mults: &[u64]) -> u64 {
        self.nodes[i]
            .mult_pullback
            .iter()
            .zip(mults)
            .map(|(n, m)| n * m)
            .sum()
    }

    /// Extracts the proximity matrix and strict multiplicities, the data a
    /// manual cluster would carry.
    pub fn extract_cluster(&self) -> ManualCluster {
        ManualCluster {
            proximities: self.nodes.iter().map(|n| n.parents.clone()).collect(),
            multiplicities: self.nodes.iter().map(|n| n.mult_strict.clone()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Coord {
    X,
    Y,
}

#[derive(Debug, Clone)]
struct ActivePoint {
    chart: Vec<ChartStep>,
    excs: Vec<(usize, Coord)>,
    stricts: Vec<(usize, SparsePolynomial)>,
    is_base: bool,
    host_loc: Option<(usize, PointLoc)>,
}

enum SncStatus {
    Good,
    /// Total strict multiplicity ≥ 2.
    Multiplicity(u64),
    /// Smooth strict tangent to an exceptional curve.
    Tangency(u64),
    Triple,
}

fn restriction_order(g: &SparsePolynomial, coord: Coord) -> u64 {
    // Order of vanishing of g restricted to {x = 0} (resp. {y = 0}) at 0.
    let restricted = match coord {
        Coord::X => g.eval_var(0, &Rational::zero()),
        Coord::Y => g.eval_var(1, &Rational::zero()),
    };
    let var = match coord {
        Coord::X => 1,
        Coord::Y => 0,
    };
    assert!(!restricted.is_zero(), "strict transform contains an exceptional curve");
    restricted.min_exponent(var) as u64
}

fn point_status(p: &ActivePoint) -> SncStatus {
    let m_total: u64 = p
        .stricts
        .iter()
        .map(|(_, g)| g.order_at_origin().expect("nonzero strict") as u64)
        .sum();
    if m_total >= 2 {
        return SncStatus::Multiplicity(m_total);
    }
    if m_total == 1 {
        if p.excs.len() == 2 {
            return SncStatus::Triple;
        }
        if p.excs.len() == 1 {
            let (_, coord) = p.excs[0];
            let i: u64 = p
                .stricts
                .iter()
                .map(|(_, g)| restriction_order(g, coord))
                .sum();
            if i >= 2 {
                return SncStatus::Tangency(i);
            }
        }
    }
    SncStatus::Good
}

fn tangency_excess(p: &ActivePoint) -> u64 {
    let mut excess = 0;
    for &(_, coord) in &p.excs {
        let i: u64 = p
            .stricts
            .iter()
            .map(|(_, g)| restriction_order(g, coord))
            .sum();
        excess += i.saturating_sub(if p.stricts.is_empty() { 0 } else { 1 });
    }
    excess
}

struct Resolver {
    labels: Vec<String>,
    polys: Vec<SparsePolynomial>,
    nodes: Vec<Node>,
    boundary: Vec<BoundaryPoint>,
    trace: Vec<BlowupRecord>,
    worklist: VecDeque<ActivePoint>,
}

const NODE_CAP: usize = 4096;

impl Resolver {
    fn new(germ: &CurveGerm) -> Self {
        Resolver {
            labels: germ.components.iter().map(|(l, _)| l.clone()).collect(),
            polys: germ.components.iter().map(|(_, p)| p.clone()).collect(),
            nodes: Vec::new(),
            boundary: Vec::new(),
            trace: Vec::new(),
            worklist: VecDeque::new(),
        }
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.worklist.pop_front() {
            match point_status(&p) {
                SncStatus::Good => self.record_boundary(&p),
                status => {
                    self.blow_up(p, status, false)?;
                }
            }
        }
        Ok(())
    }

    fn record_boundary(&mut self, p: &ActivePoint) {
        if p.stricts.is_empty() && p.excs.len() < 2 {
            return;
        }
        if let Some((host, loc)) = &p.host_loc {
            self.boundary.push(BoundaryPoint {
                host: *host,
                loc: loc.clone(),
                excs: p.excs.iter().map(|&(n, _)| n).collect(),
                comps: p.stricts.iter().map(|&(j, _)| j).collect(),
            });
        }
    }

    /// Blows up the origin of `p`'s chart and enqueues every point of the
    /// new exceptional curve that carries structure.
    fn blow_up(&mut self, p: ActivePoint, status: SncStatus, forced: bool) -> Result<()> {
        if self.nodes.len() >= NODE_CAP {
            return Err(Error::Internal("blowup count exceeded the safety cap".into()));
        }
        let idx = self.nodes.len();
        let parents: Vec<usize> = p.excs.iter().map(|&(n, _)| n).collect();
        let ncomp = self.labels.len();

        let mut mult_strict = vec![0u64; ncomp];
        for (j, g) in &p.stricts {
            mult_strict[*j] = g.order_at_origin().expect("nonzero strict") as u64;
        }
        let mut mult_pullback = mult_strict.clone();
        let mut discrepancy = 1u64;
        let mut point_order = u64::from(p.is_base);
        for &q in &parents {
            for j in 0..ncomp {
                mult_pullback[j] += self.nodes[q].mult_pullback[j];
            }
            discrepancy += self.nodes[q].discrepancy;
            point_order += self.nodes[q].point_order;
        }

        // The blown point no longer exists on the surface.
        if let Some((host, loc)) = &p.host_loc {
            self.boundary
                .retain(|b| !(b.host == *host && b.loc == *loc));
        }

        self.nodes.push(Node {
            parents,
            mult_pullback,
            mult_strict,
            discrepancy,
            point_order,
            chart_point: Some(p.chart.clone()),
        });

        // Chart A: strict transforms and their directions on the new curve.
        let step_a0 = ChartStep::A {
            c: Rational::zero(),
        };
        let mut a_stricts: Vec<(usize, SparsePolynomial)> = Vec::new();
        for (j, g) in &p.stricts {
            let pulled = step_a0.apply(g);
            let m = pulled.min_exponent(0);
            a_stricts.push((*j, pulled.divide_by_var_power(0, m)));
        }

        let mut directions: std::collections::BTreeSet<Rational> = std::collections::BTreeSet::new();
        let mut stripped_parts: Vec<(usize, UniPoly)> = Vec::new();
        for (j, s) in &a_stricts {
            let u = to_dense(&s.eval_var(0, &Rational::zero()), 1);
            assert!(!u.is_empty(), "strict transform divisible by the exceptional curve");
            for (root, _) in rational_roots(&u) {
                directions.insert(root);
            }
            let leftover = strip_rational_roots(&u);
            if leftover.len() > 1 {
                stripped_parts.push((*j, leftover));
            }
        }
        // Irrational directions are fatal only where the arrangement fails
        // to be simple normal crossing: multiple roots or shared roots.
        for (j, u) in &stripped_parts {
            let du = crate::poly::univariate::uni_derivative(u);
            let g = uni_gcd(u, &du);
            if g.len() > 1 {
                return Err(Error::IrrationalInfinitelyNearPoint {
                    witness: format!(
                        "component {} branches at an irrational direction with multiplicity: {}",
                        self.labels[*j],
                        uni_string(&g)
                    ),
                });
            }
        }
        for a in 0..stripped_parts.len() {
            for b in a + 1..stripped_parts.len() {
                let g = uni_gcd(&stripped_parts[a].1, &stripped_parts[b].1);
                if g.len() > 1 {
                    return Err(Error::IrrationalInfinitelyNearPoint {
                        witness: format!(
                            "components {} and {} meet at an irrational direction: {}",
                            self.labels[stripped_parts[a].0],
                            self.labels[stripped_parts[b].0],
                            uni_string(&g)
                        ),
                    });
                }
            }
        }

        let old_y_exc = p.excs.iter().find(|&&(_, c)| c == Coord::Y).map(|&(n, _)| n);
        let old_x_exc = p.excs.iter().find(|&&(_, c)| c == Coord::X).map(|&(n, _)| n);
        if old_y_exc.is_some() {
            directions.insert(Rational::zero());
        }

        let mut children: Vec<ActivePoint> = Vec::new();
        for c in directions {
            let vars: Vec<&str> = self.polys[0].variables().iter().map(|s| s.as_str()).collect();
            let x = SparsePolynomial::var(&vars, 0);
            let y_shift = SparsePolynomial::var(&vars, 1)
                .add(&SparsePolynomial::constant(&vars, c.clone()));
            let mut stricts = Vec::new();
            for (j, s) in &a_stricts {
                let shifted = s.substitute(&[x.clone(), y_shift.clone()]);
                if shifted.constant_term().is_zero() {
                    stricts.push((*j, shifted));
                }
            }
            let mut excs = vec![(idx, Coord::X)];
            if c.is_zero() {
                if let Some(q) = old_y_exc {
                    excs.push((q, Coord::Y));
                }
            }
            let mut chart = p.chart.clone();
            chart.push(ChartStep::A { c: c.clone() });
            children.push(ActivePoint {
                chart,
                excs,
                stricts,
                is_base: false,
                host_loc: Some((idx, PointLoc::Direction(c))),
            });
        }

        // Chart B: the vertical direction.
        {
            let mut stricts = Vec::new();
            for (j, g) in &p.stricts {
                let pulled = ChartStep::B.apply(g);
                let m = pulled.min_exponent(1);
                let s = pulled.divide_by_var_power(1, m);
                if s.constant_term().is_zero() {
                    stricts.push((*j, s));
                }
            }
            let mut excs = vec![(idx, Coord::Y)];
            if let Some(q) = old_x_exc {
                excs.push((q, Coord::X));
            }
            if !stricts.is_empty() || old_x_exc.is_some() {
                let mut chart = p.chart.clone();
                chart.push(ChartStep::B);
                children.push(ActivePoint {
                    chart,
                    excs,
                    stricts,
                    is_base: false,
                    host_loc: Some((idx, PointLoc::Vertical)),
                });
            }
        }

        let (m_total, tang, triple) = match status {
            SncStatus::Multiplicity(m) => (m, tangency_excess(&p), false),
            SncStatus::Tangency(i) => (1, i - 1, false),
            SncStatus::Triple => (1, 0, true),
            SncStatus::Good => (
                p.stricts
                    .iter()
                    .map(|(_, g)| g.order_at_origin().unwrap() as u64)
                    .sum(),
                tangency_excess(&p),
                false,
            ),
        };
        self.trace.push(BlowupRecord {
            node: idx,
            m_total,
            tangency_excess: tang,
            is_triple: triple,
            forced,
            children_m_totals: children
                .iter()
                .map(|ch| {
                    ch.stricts
                        .iter()
                        .map(|(_, g)| g.order_at_origin().unwrap() as u64)
                        .sum()
                })
                .collect(),
            children_tangency_excess: children.iter().map(tangency_excess).sum(),
            children_triples: children
                .iter()
                .filter(|ch| matches!(point_status(ch), SncStatus::Triple))
                .count(),
        });

        for ch in children {
            self.worklist.push_back(ch);
        }
        Ok(())
    }

    fn finish(self) -> Result<ExceptionalData> {
        let n = self.nodes.len();
        let ncomp = self.labels.len();

        let mut self_intersections = Vec::with_capacity(n);
        for i in 0..n {
            let prox_count = self
                .nodes
                .iter()
                .filter(|node| node.parents.contains(&i))
                .count() as i64;
            self_intersections.push(-1 - prox_count);
        }

        let mut adjacency = Vec::new();
        for j in 0..n {
            for &i in &self.nodes[j].parents {
                let separated = self.nodes.iter().enumerate().any(|(l, node)| {
                    l > j && node.parents.contains(&i) && node.parents.contains(&j)
                });
                if !separated {
                    adjacency.push((i.min(j), i.max(j)));
                }
            }
        }
        adjacency.sort();

        let mut attachments = vec![vec![0u64; ncomp]; n];
        for i in 0..n {
            for j in 0..ncomp {
                let later: u64 = self
                    .nodes
                    .iter()
                    .filter(|node| node.parents.contains(&i))
                    .map(|node| node.mult_strict[j])
                    .sum();
                let m = self.nodes[i].mult_strict[j];
                if m < later {
                    return Err(Error::Internal(format!(
                        "proximity inequality violated at node {i} component {j}"
                    )));
                }
                attachments[i][j] = m - later;
            }
        }

        // Chart geometry must reproduce the proximity-derived adjacency.
        let mut crossings: Vec<(usize, usize)> = self
            .boundary
            .iter()
            .filter(|b| b.excs.len() == 2)
            .map(|b| (b.excs[0].min(b.excs[1]), b.excs[0].max(b.excs[1])))
            .collect();
        crossings.sort();
        if crossings != adjacency {
            return Err(Error::Internal(format!(
                "dual-graph adjacency {adjacency:?} disagrees with chart crossings {crossings:?}"
            )));
        }
        let mut chart_attach = vec![vec![0u64; ncomp]; n];
        for b in &self.boundary {
            for &j in &b.comps {
                for &e in &b.excs {
                    chart_attach[e][j] += 1;
                }
            }
        }
        // Attachment counts at rational points must not exceed the
        // proximity-derived totals (irrational transverse crossings make
        // up the difference).
        for i in 0..n {
            for j in 0..ncomp {
                if chart_attach[i][j] > attachments[i][j] {
                    return Err(Error::Internal(format!(
                        "chart attachments exceed proximity count at node {i} component {j}"
                    )));
                }
            }
        }

        Ok(ExceptionalData {
            component_labels: self.labels,
            component_polys: Some(self.polys),
            nodes: self.nodes,
            adjacency,
            self_intersections,
            attachments,
            boundary: self.boundary,
            blowup_trace: self.trace,
        })
    }
}

/// Resolves a plane curve germ at the origin. All infinitely near points
/// encountered must have rational coordinates.
pub fn resolve_germ(germ: &CurveGerm) -> Result<ExceptionalData> {
    let mut r = Resolver::new(germ);
    r.worklist.push_back(ActivePoint {
        chart: Vec::new(),
        excs: Vec::new(),
        stricts: germ
            .components
            .iter()
            .enumerate()
            .map(|(j, (_, p))| (j, p.clone()))
            .collect(),
        is_base: true,
        host_loc: None,
    });
    r.run()?;
    r.finish()
}

fn uni_string(p: &UniPoly) -> String {
    crate::poly::univariate::from_dense(&["t"], 0, p).to_string()
}

/// Order of vanishing along `E_node` of the pullback of `g`, read off the
/// chart composition.
pub fn val_on_germ(e: &ExceptionalData, node: usize, g: &SparsePolynomial) -> Result<u64> {
    let chart = e.nodes[node]
        .chart()
        .ok_or_else(|| Error::Unsupported("valuation evaluation unavailable in manual mode".into()))?;
    if g.is_zero() {
        return Err(Error::Input("valuation of the zero polynomial".into()));
    }
    Ok(pull_back(g, &chart).min_exponent(0) as u64)
}

/// Linear functionals on the jet space of order `B` whose common kernel is
/// the set of jets with valuation at least `c` along `E_node`.
pub fn jet_conditions(e: &ExceptionalData, node: usize, c: u64, order: u32) -> Result<Matrix> {
    assert!(u64::from(order) >= c, "truncation order below requested valuation");
    let chart = e.nodes[node]
        .chart()
        .ok_or_else(|| Error::Unsupported("jet conditions unavailable in manual mode".into()))?;
    let basis = jet_basis(order);
    let vars = ["x", "y"];
    let x = SparsePolynomial::var(&vars, 0);
    let y = SparsePolynomial::var(&vars, 1);
    let px = pull_back(&x, &chart);
    let py = pull_back(&y, &chart);

    let mut xpow = vec![SparsePolynomial::constant(&vars, crate::rat::rint(1))];
    let mut ypow = xpow.clone();
    for i in 1..=order as usize {
        xpow.push(xpow[i - 1].mul(&px));
        ypow.push(ypow[i - 1].mul(&py));
    }
    let pulled: Vec<SparsePolynomial> = basis
        .iter()
        .map(|&(a, b)| xpow[a as usize].mul(&ypow[b as usize]))
        .collect();

    let max_t = pulled.iter().map(|p| p.degree_in(1)).max().unwrap_or(0);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for s in 0..c as u32 {
        for t in 0..=max_t {
            let row: Vec<Rational> = pulled.iter().map(|p| p.coeff(&[s, t])).collect();
            if row.iter().any(|v| !v.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(Matrix::zero(0, basis.len()));
    }
    Ok(Matrix::from_rows(rows))
}

/// Point of the final arrangement to blow up when refining.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefinePoint {
    /// The germ's origin; valid only when no blowup has happened yet.
    Origin,
    /// A rational point of `E_node` in that node's charts.
    On { node: usize, loc: PointLoc },
}

/// Appends one blowup at the given point of the exceptional locus and
/// recomputes every derived field. Resolution invariants downstream must
/// not change under this operation.
pub fn refine(e: &ExceptionalData, target: &RefinePoint) -> Result<ExceptionalData> {
    let polys = e
        .component_polys
        .as_ref()
        .ok_or_else(|| Error::Unsupported("refine unavailable in manual mode".into()))?;
    let germ = CurveGerm::new(
        e.component_labels
            .iter()
            .cloned()
            .zip(polys.iter().cloned())
            .collect(),
    )?;
    let mut r = Resolver::new(&germ);
    r.nodes = e.nodes.clone();
    r.boundary = e.boundary.clone();
    r.trace = e.blowup_trace.clone();

    let point = match target {
        RefinePoint::Origin => {
            if !e.nodes.is_empty() {
                return Err(Error::Input(
                    "the origin is not a point of the exceptional locus once blown up".into(),
                ));
            }
            ActivePoint {
                chart: Vec::new(),
                excs: Vec::new(),
                stricts: germ
                    .components
                    .iter()
                    .enumerate()
                    .map(|(j, (_, p))| (j, p.clone()))
                    .collect(),
                is_base: true,
                host_loc: None,
            }
        }
        RefinePoint::On { node, loc } => {
            if *node >= e.nodes.len() {
                return Err(Error::Input(format!("no exceptional curve with index {node}")));
            }
            // The point must still exist on the surface: it must not be
            // the base point of a later blowup.
            let mut chart = e.nodes[*node].chart_point.clone().expect("automatic mode");
            chart.push(match loc {
                PointLoc::Direction(c) => ChartStep::A { c: c.clone() },
                PointLoc::Vertical => ChartStep::B,
            });
            if e.nodes.iter().any(|n| n.chart_point.as_ref() == Some(&chart)) {
                return Err(Error::Input(
                    "the requested point was already blown up".into(),
                ));
            }
            let record = e
                .boundary
                .iter()
                .find(|b| b.host == *node && &b.loc == loc);
            let excs: Vec<(usize, Coord)> = match (record, loc) {
                (Some(b), loc) => b
                    .excs
                    .iter()
                    .map(|&n| {
                        let coord = if n == *node {
                            match loc {
                                PointLoc::Direction(_) => Coord::X,
                                PointLoc::Vertical => Coord::Y,
                            }
                        } else {
                            match loc {
                                PointLoc::Direction(_) => Coord::Y,
                                PointLoc::Vertical => Coord::X,
                            }
                        };
                        (n, coord)
                    })
                    .collect(),
                (None, PointLoc::Direction(_)) => vec![(*node, Coord::X)],
                (None, PointLoc::Vertical) => vec![(*node, Coord::Y)],
            };
            let mut stricts = Vec::new();
            for (j, p) in polys.iter().enumerate() {
                let pulled = pull_back(p, &chart);
                let mx = pulled.min_exponent(0);
                let s = pulled.divide_by_var_power(0, mx);
                let my = s.min_exponent(1);
                let s = s.divide_by_var_power(1, my);
                if s.constant_term().is_zero() {
                    stricts.push((j, s));
                }
            }
            ActivePoint {
                chart,
                excs,
                stricts,
                is_base: false,
                host_loc: Some((*node, loc.clone())),
            }
        }
    };

    let status = point_status(&point);
    r.blow_up(point, status, true)?;
    r.run()?;
    r.finish()
}

/// Classical numerical data of the germ: per-component delta invariants,
/// the branch count, and the multiplicity sequence of the resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermNumerics {
    pub delta: Vec<u64>,
    pub branches: u64,
    pub multiplicity_sequence: Vec<u64>,
}

pub fn germ_numerics(e: &ExceptionalData) -> GermNumerics {
    let ncomp = e.num_components();
    let mut delta = vec![0u64; ncomp];
    for node in &e.nodes {
        for j in 0..ncomp {
            let m = node.mult_strict[j];
            delta[j] += m * (m.saturating_sub(1)) / 2;
        }
    }
    let branches = if e.nodes.is_empty() {
        ncomp as u64
    } else {
        e.attachments.iter().flatten().sum()
    };
    let multiplicity_sequence = e
        .nodes
        .iter()
        .map(|n| n.mult_strict.iter().sum())
        .collect();
    GermNumerics {
        delta,
        branches,
        multiplicity_sequence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn vars() -> [&'static str; 2] {
        ["x", "y"]
    }

    fn x() -> SparsePolynomial {
        SparsePolynomial::var(&vars(), 0)
    }

    fn y() -> SparsePolynomial {
        SparsePolynomial::var(&vars(), 1)
    }

    pub(crate) fn cusp_germ() -> CurveGerm {
        CurveGerm::new(vec![("cusp".into(), y().pow(2).sub(&x().pow(3)))]).unwrap()
    }

    pub(crate) fn node_germ() -> CurveGerm {
        CurveGerm::new(vec![("a".into(), x()), ("b".into(), y())]).unwrap()
    }

    pub(crate) fn tacnode_germ() -> CurveGerm {
        CurveGerm::new(vec![("tac".into(), y().pow(2).sub(&x().pow(4)))]).unwrap()
    }

    pub(crate) fn triple_germ() -> CurveGerm {
        CurveGerm::new(vec![
            ("a".into(), x()),
            ("b".into(), y()),
            ("c".into(), x().add(&y())),
        ])
        .unwrap()
    }

    #[test]
    fn cusp_resolution_matches_classical_data() {
        let e = resolve_germ(&cusp_germ()).unwrap();
        assert_eq!(e.nodes.len(), 3);
        let n: Vec<u64> = e.nodes.iter().map(|n| n.mult_pullback[0]).collect();
        assert_eq!(n, vec![2, 3, 6]);
        let k: Vec<u64> = e.nodes.iter().map(|n| n.discrepancy).collect();
        assert_eq!(k, vec![1, 2, 4]);
        assert_eq!(e.self_intersections, vec![-3, -2, -1]);
        assert_eq!(e.adjacency, vec![(0, 2), (1, 2)]);
        assert_eq!(e.attachments[2][0], 1);
        assert_eq!(e.attachments[0][0], 0);
        let rho: Vec<u64> = e.nodes.iter().map(|n| n.point_order).collect();
        assert_eq!(rho, vec![1, 1, 2]);
    }

    #[test]
    fn node_and_smooth_germs() {
        let e = resolve_germ(&node_germ()).unwrap();
        assert_eq!(e.nodes.len(), 1);
        assert_eq!(e.nodes[0].mult_pullback, vec![1, 1]);
        assert_eq!(e.nodes[0].discrepancy, 1);
        assert_eq!(e.self_intersections, vec![-1]);
        assert_eq!(e.attachments[0], vec![1, 1]);

        let smooth = CurveGerm::new(vec![("s".into(), y())]).unwrap();
        let es = resolve_germ(&smooth).unwrap();
        assert!(es.nodes.is_empty());
    }

    #[test]
    fn nonreduced_component_is_rejected() {
        let err = CurveGerm::new(vec![("sq".into(), x().pow(2))]).unwrap_err();
        assert!(matches!(err, Error::NonreducedComponent { .. }));
    }

    #[test]
    fn valuations_on_the_cusp_tree() {
        let e = resolve_germ(&cusp_germ()).unwrap();
        assert_eq!(val_on_germ(&e, 2, &x()).unwrap(), 2);
        assert_eq!(val_on_germ(&e, 2, &y()).unwrap(), 3);
        assert_eq!(val_on_germ(&e, 0, &x().add(&y())).unwrap(), 1);
        let f = y().pow(2).sub(&x().pow(3));
        assert_eq!(val_on_germ(&e, 2, &f).unwrap(), 6);
        // Pullback multiplicities agree with direct valuation everywhere.
        for (i, node) in e.nodes.iter().enumerate() {
            assert_eq!(val_on_germ(&e, i, &f).unwrap(), node.mult_pullback[0]);
        }
    }

    #[test]
    fn valuation_is_additive_on_products() {
        let e = resolve_germ(&cusp_germ()).unwrap();
        let samples = [x(), y(), x().mul(&y()), y().pow(2).sub(&x())];
        for i in 0..e.nodes.len() {
            for a in &samples {
                for b in &samples {
                    assert_eq!(
                        val_on_germ(&e, i, &a.mul(b)).unwrap(),
                        val_on_germ(&e, i, a).unwrap() + val_on_germ(&e, i, b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn jet_condition_examples() {
        // Node, c = 1: the single condition is vanishing at the point.
        let e = resolve_germ(&node_germ()).unwrap();
        let m = jet_conditions(&e, 0, 1, 2).unwrap();
        assert_eq!(m.rank(), 1);
        let kernel = m.kernel_basis();
        // Kernel = maximal ideal: the constant coordinate is cut out.
        for v in &kernel {
            assert!(v[0].is_zero());
        }

        // c = 0: no conditions.
        let m0 = jet_conditions(&e, 0, 0, 2).unwrap();
        assert_eq!(m0.rank(), 0);

        // Cusp, E_3, c = 5 in jets of order 3: codimension 4.
        let ec = resolve_germ(&cusp_germ()).unwrap();
        let m5 = jet_conditions(&ec, 2, 5, 3).unwrap();
        assert_eq!(m5.rank(), 4);
    }

    #[test]
    fn refine_at_free_point_extends_tree() {
        let e = resolve_germ(&node_germ()).unwrap();
        let refined = refine(
            &e,
            &RefinePoint::On {
                node: 0,
                loc: PointLoc::Direction(rat(5, 1)),
            },
        )
        .unwrap();
        assert_eq!(refined.nodes.len(), 2);
        assert_eq!(refined.nodes[1].mult_pullback, vec![1, 1]);
        assert_eq!(refined.nodes[1].discrepancy, 2);
        assert_eq!(refined.self_intersections, vec![-2, -1]);
    }

    #[test]
    fn refine_origin_of_smooth_germ() {
        let smooth = CurveGerm::new(vec![("s".into(), y().sub(&x().pow(2)))]).unwrap();
        let e = resolve_germ(&smooth).unwrap();
        assert!(e.nodes.is_empty());
        let refined = refine(&e, &RefinePoint::Origin).unwrap();
        assert_eq!(refined.nodes.len(), 1);
        assert_eq!(refined.nodes[0].mult_pullback, vec![1]);
        assert_eq!(refined.nodes[0].discrepancy, 1);
    }

    #[test]
    fn germ_numerics_examples() {
        let cusp = germ_numerics(&resolve_germ(&cusp_germ()).unwrap());
        assert_eq!(cusp.delta, vec![1]);
        assert_eq!(cusp.branches, 1);
        assert_eq!(cusp.multiplicity_sequence, vec![2, 1, 1]);

        let node = germ_numerics(&resolve_germ(&node_germ()).unwrap());
        assert_eq!(node.delta, vec![0, 0]);
        assert_eq!(node.branches, 2);

        let triple = germ_numerics(&resolve_germ(&triple_germ()).unwrap());
        assert_eq!(triple.branches, 3);
        // Three lines: pairwise intersections contribute the whole delta.
        let total_mult: u64 = triple.multiplicity_sequence.iter().sum();
        assert_eq!(total_mult, 3);
    }

    #[test]
    fn tacnode_resolution() {
        let e = resolve_germ(&tacnode_germ()).unwrap();
        assert_eq!(e.nodes.len(), 2);
        let n: Vec<u64> = e.nodes.iter().map(|n| n.mult_pullback[0]).collect();
        assert_eq!(n, vec![2, 4]);
        let k: Vec<u64> = e.nodes.iter().map(|n| n.discrepancy).collect();
        assert_eq!(k, vec![1, 2]);
        assert_eq!(e.attachments[1][0], 2);
        assert_eq!(e.self_intersections, vec![-2, -1]);
    }

    #[test]
    fn irrational_direction_is_rejected_with_witness() {
        // y^2 - x^2(x+1) branches at directions y/x = ±1 after one blowup;
        // those are rational. Use y^2 - 2x^2 instead: directions ±√2.
        let two = SparsePolynomial::constant(&vars(), rint(2));
        let g = CurveGerm::new(vec![(
            "irr".into(),
            y().pow(2).sub(&two.mul(&x().pow(2))),
        )])
        .unwrap();
        let err = resolve_germ(&g).unwrap_err();
        assert!(matches!(err, Error::IrrationalInfinitelyNearPoint { .. }));
    }

    #[test]
    fn blowup_trace_progresses_lexicographically() {
        for germ in [cusp_germ(), node_germ(), tacnode_germ(), triple_germ()] {
            let e = resolve_germ(&germ).unwrap();
            for rec in &e.blowup_trace {
                if rec.m_total >= 2 {
                    continue;
                }
                if rec.tangency_excess >= 1 {
                    assert!(rec.children_m_totals.iter().all(|&m| m <= 1));
                    assert!(rec.children_tangency_excess < rec.tangency_excess);
                    continue;
                }
                assert!(rec.is_triple, "blowup with no decreasing measure");
                assert!(rec.children_m_totals.iter().all(|&m| m <= 1));
                assert_eq!(rec.children_tangency_excess, 0);
                assert_eq!(rec.children_triples, 0);
            }
        }
    }
}
