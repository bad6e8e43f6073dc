//! Manual clusters: resolution data given directly by a proximity matrix
//! and strict multiplicities, for germs whose automatic resolution would
//! run into irrational infinitely near points. Chart maps are absent, so
//! only the colength-based invariants are available downstream.

use super::{ExceptionalData, Node};
use crate::error::{Error, Result};

/// Proximity relation and per-point, per-component strict multiplicities
/// of a weighted cluster of infinitely near points, in blowup order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManualCluster {
    /// `proximities[i]`: earlier points that point `i` is proximate to.
    /// The first point is the origin and is proximate to nothing.
    pub proximities: Vec<Vec<usize>>,
    /// `multiplicities[i][j]`: multiplicity of component `j`'s strict
    /// transform at point `i`.
    pub multiplicities: Vec<Vec<u64>>,
}

impl ManualCluster {
    pub fn len(&self) -> usize {
        self.proximities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.proximities.is_empty()
    }

    fn validate(&self) -> Result<usize> {
        let n = self.proximities.len();
        if n == 0 {
            return Err(Error::Input("manual cluster has no points".into()));
        }
        if self.multiplicities.len() != n {
            return Err(Error::Input(
                "cluster multiplicity table length does not match the point count".into(),
            ));
        }
        let ncomp = self.multiplicities[0].len();
        if ncomp == 0 {
            return Err(Error::Input("cluster needs at least one component column".into()));
        }
        if self.multiplicities.iter().any(|row| row.len() != ncomp) {
            return Err(Error::Input("ragged cluster multiplicity table".into()));
        }
        if !self.proximities[0].is_empty() {
            return Err(Error::Input("the first cluster point must be proximate to nothing".into()));
        }
        for (i, prox) in self.proximities.iter().enumerate().skip(1) {
            if prox.is_empty() || prox.len() > 2 {
                return Err(Error::Input(format!(
                    "cluster point {i} must be proximate to one or two earlier points"
                )));
            }
            if prox.iter().any(|&q| q >= i) {
                return Err(Error::Input(format!(
                    "cluster proximity at point {i} is not strictly lower triangular"
                )));
            }
            if prox.len() == 2 {
                let (a, b) = (prox[0].min(prox[1]), prox[0].max(prox[1]));
                if a == b {
                    return Err(Error::Input(format!(
                        "cluster point {i} lists a duplicate proximity"
                    )));
                }
                // A satellite sits on the crossing of two exceptional
                // curves, which requires the later one to be proximate to
                // the earlier one.
                if !self.proximities[b].contains(&a) {
                    return Err(Error::Input(format!(
                        "cluster point {i} is satellite over unrelated points {a} and {b}"
                    )));
                }
            }
        }
        Ok(ncomp)
    }
}

/// Runs the proximity recursions on a manual cluster and assembles the
/// same exceptional record the automatic resolver produces, minus charts.
pub fn cluster_to_exceptional(
    cluster: &ManualCluster,
    component_labels: Vec<String>,
) -> Result<ExceptionalData> {
    let ncomp = cluster.validate()?;
    if component_labels.len() != ncomp {
        return Err(Error::Input(
            "component label count does not match the cluster table".into(),
        ));
    }
    let n = cluster.len();
    let mut nodes: Vec<Node> = Vec::with_capacity(n);
    for i in 0..n {
        let parents = cluster.proximities[i].clone();
        let mult_strict = cluster.multiplicities[i].clone();
        let mut mult_pullback = mult_strict.clone();
        let mut discrepancy = 1u64;
        let mut point_order = u64::from(i == 0);
        for &q in &parents {
            for j in 0..ncomp {
                mult_pullback[j] += nodes[q].mult_pullback[j];
            }
            discrepancy += nodes[q].discrepancy;
            point_order += nodes[q].point_order;
        }
        nodes.push(Node {
            parents,
            mult_pullback,
            mult_strict,
            discrepancy,
            point_order,
            chart_point: None,
        });
    }

    let mut self_intersections = Vec::with_capacity(n);
    for i in 0..n {
        let prox_count = nodes.iter().filter(|node| node.parents.contains(&i)).count() as i64;
        self_intersections.push(-1 - prox_count);
    }

    let mut adjacency = Vec::new();
    for j in 0..n {
        for &i in &nodes[j].parents {
            let separated = nodes
                .iter()
                .enumerate()
                .any(|(l, node)| l > j && node.parents.contains(&i) && node.parents.contains(&j));
            if !separated {
                adjacency.push((i.min(j), i.max(j)));
            }
        }
    }
    adjacency.sort();

    let mut attachments = vec![vec![0u64; ncomp]; n];
    for i in 0..n {
        for j in 0..ncomp {
            let later: u64 = nodes
                .iter()
                .filter(|node| node.parents.contains(&i))
                .map(|node| node.mult_strict[j])
                .sum();
            let m = nodes[i].mult_strict[j];
            if m < later {
                return Err(Error::Input(format!(
                    "cluster multiplicities violate the proximity inequality at point {i}"
                )));
            }
            attachments[i][j] = m - later;
        }
    }

    Ok(ExceptionalData {
        component_labels,
        component_polys: None,
        nodes,
        adjacency,
        self_intersections,
        attachments,
        boundary: Vec::new(),
        blowup_trace: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cusp_cluster() -> ManualCluster {
        ManualCluster {
            proximities: vec![vec![], vec![0], vec![0, 1]],
            multiplicities: vec![vec![2], vec![1], vec![1]],
        }
    }

    #[test]
    fn cusp_cluster_recursions() {
        let e = cluster_to_exceptional(&cusp_cluster(), vec!["c".into()]).unwrap();
        let n: Vec<u64> = e.nodes.iter().map(|n| n.mult_pullback[0]).collect();
        assert_eq!(n, vec![2, 3, 6]);
        let k: Vec<u64> = e.nodes.iter().map(|n| n.discrepancy).collect();
        assert_eq!(k, vec![1, 2, 4]);
        assert_eq!(e.self_intersections, vec![-3, -2, -1]);
        assert_eq!(e.adjacency, vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn single_free_point_and_triple_point() {
        let single = ManualCluster {
            proximities: vec![vec![]],
            multiplicities: vec![vec![2]],
        };
        let e = cluster_to_exceptional(&single, vec!["g".into()]).unwrap();
        assert_eq!(e.nodes[0].mult_pullback, vec![2]);
        assert_eq!(e.nodes[0].discrepancy, 1);

        let triple = ManualCluster {
            proximities: vec![vec![]],
            multiplicities: vec![vec![3]],
        };
        let et = cluster_to_exceptional(&triple, vec!["t".into()]).unwrap();
        assert_eq!(et.nodes[0].mult_pullback, vec![3]);
        assert_eq!(et.nodes[0].discrepancy, 1);
    }

    #[test]
    fn invalid_proximity_is_rejected() {
        let bad = ManualCluster {
            proximities: vec![vec![], vec![0], vec![1, 0]],
            multiplicities: vec![vec![1], vec![1], vec![1]],
        };
        // Satellite over (0, 1) is fine since 1 is proximate to 0; but a
        // satellite over unrelated points is not.
        assert!(cluster_to_exceptional(&bad, vec!["c".into()]).is_ok());
        let bad2 = ManualCluster {
            proximities: vec![vec![], vec![0], vec![0], vec![1, 2]],
            multiplicities: vec![vec![1], vec![1], vec![1], vec![1]],
        };
        assert!(cluster_to_exceptional(&bad2, vec!["c".into()]).is_err());
        let forward = ManualCluster {
            proximities: vec![vec![], vec![2]],
            multiplicities: vec![vec![1], vec![1]],
        };
        assert!(cluster_to_exceptional(&forward, vec!["c".into()]).is_err());
    }

    #[test]
    fn automatic_cluster_round_trip() {
        use crate::resolve::tests::{cusp_germ, node_germ, tacnode_germ, triple_germ};
        use crate::resolve::resolve_germ;
        for germ in [cusp_germ(), node_germ(), tacnode_germ(), triple_germ()] {
            let auto = resolve_germ(&germ).unwrap();
            let cluster = auto.extract_cluster();
            let manual =
                cluster_to_exceptional(&cluster, auto.component_labels.clone()).unwrap();
            for (a, m) in auto.nodes.iter().zip(&manual.nodes) {
                assert_eq!(a.mult_pullback, m.mult_pullback);
                assert_eq!(a.discrepancy, m.discrepancy);
                assert_eq!(a.point_order, m.point_order);
            }
            assert_eq!(auto.adjacency, manual.adjacency);
            assert_eq!(auto.self_intersections, manual.self_intersections);
            assert_eq!(auto.attachments, manual.attachments);
        }
    }
}
