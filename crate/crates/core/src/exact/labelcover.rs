//! Label Cover (projection games) and its exhaustive oracles.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::cost::Rational;
use crate::error::{Error, Result};
use crate::subsets::{binomial, next_combination};

/// Default cap on the number of A-side assignments an oracle enumerates.
pub const DEFAULT_ASSIGNMENT_CAP: u128 = 1 << 24;

/// Bipartite projection game: every edge `(a, b)` carries a total map from
/// the A-alphabet to the B-alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelCoverInstance {
    a_count: usize,
    b_count: usize,
    sigma_a: usize,
    sigma_b: usize,
    edges: Vec<(usize, usize)>,
    projections: Vec<Vec<usize>>,
    // Per B-vertex edge indices in canonical order: ascending A id.
    b_edges: Vec<Vec<usize>>,
}

impl LabelCoverInstance {
    pub fn new(
        a_count: usize,
        b_count: usize,
        sigma_a: usize,
        sigma_b: usize,
        edges: Vec<(usize, usize)>,
        projections: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if a_count == 0 || b_count == 0 || sigma_a == 0 || sigma_b == 0 {
            return bad("vertex counts and alphabet sizes must be positive".into());
        }
        if sigma_b > 128 {
            return bad(format!("B-alphabet of size {sigma_b} exceeds 128"));
        }
        if edges.len() != projections.len() {
            return bad("one projection per edge required".into());
        }
        let mut seen = BTreeSet::new();
        for (i, (&(a, b), proj)) in edges.iter().zip(&projections).enumerate() {
            if a >= a_count || b >= b_count {
                return bad(format!("edge {i} = ({a}, {b}) out of range"));
            }
            if !seen.insert((a, b)) {
                return bad(format!("duplicate edge ({a}, {b})"));
            }
            if proj.len() != sigma_a {
                return bad(format!(
                    "projection of edge {i} is not total on the A-alphabet"
                ));
            }
            if let Some(&x) = proj.iter().find(|&&x| x >= sigma_b) {
                return bad(format!(
                    "projection of edge {i} maps to label {x} outside the B-alphabet"
                ));
            }
        }
        let mut b_edges = vec![Vec::new(); b_count];
        for (i, &(_, b)) in edges.iter().enumerate() {
            b_edges[b].push(i);
        }
        for list in &mut b_edges {
            list.sort_by_key(|&i| (edges[i].0, i));
        }
        Ok(LabelCoverInstance {
            a_count,
            b_count,
            sigma_a,
            sigma_b,
            edges,
            projections,
            b_edges,
        })
    }

    pub fn a_count(&self) -> usize {
        self.a_count
    }

    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn sigma_a(&self) -> usize {
        self.sigma_a
    }

    pub fn sigma_b(&self) -> usize {
        self.sigma_b
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn projection(&self, edge: usize) -> &[usize] {
        &self.projections[edge]
    }

    /// Edges into `b`, ordered by ascending A-vertex id; position `i` is the
    /// "i-th edge coming into b".
    pub fn edges_into(&self, b: usize) -> &[usize] {
        &self.b_edges[b]
    }

    /// Common B-degree, if every B-vertex has the same degree.
    pub fn b_degree(&self) -> Option<usize> {
        let d = self.b_edges[0].len();
        self.b_edges.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Common A-degree, if every A-vertex has the same degree.
    pub fn a_degree(&self) -> Option<usize> {
        let mut deg = vec![0usize; self.a_count];
        for &(a, _) in &self.edges {
            deg[a] += 1;
        }
        let d = deg[0];
        deg.iter().all(|&x| x == d).then_some(d)
    }

    pub fn is_bi_regular(&self) -> bool {
        self.a_degree().is_some() && self.b_degree().is_some()
    }

    /// Number of edges covered by a full labeling.
    pub fn covered_edges(&self, a_labels: &[usize], b_labels: &[usize]) -> usize {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(e, &(a, b))| self.projections[e][a_labels[a]] == b_labels[b])
            .count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelCoverValue {
    /// Maximum fraction of covered edges (1 for an edgeless instance).
    pub value: Rational,
    pub covered: usize,
    pub a_labels: Vec<usize>,
    pub b_labels: Vec<usize>,
}

fn power(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Advances a mixed-radix counter, last position fastest. Returns false on wrap.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Exact Label Cover value.
///
/// Only A-side labelings are enumerated: for a fixed A-labeling every
/// B-vertex independently takes the majority of its projected labels
/// (smallest label on ties), which is optimal.
pub fn bruteforce_labelcover(lc: &LabelCoverInstance) -> Result<LabelCoverValue> {
    bruteforce_labelcover_capped(lc, DEFAULT_ASSIGNMENT_CAP)
}

pub fn bruteforce_labelcover_capped(lc: &LabelCoverInstance, cap: u128) -> Result<LabelCoverValue> {
    let work = power(lc.sigma_a, lc.a_count);
    if work > cap {
        return Err(Error::Refused {
            what: "label cover A-assignments",
            estimate: work,
            cap,
        });
    }
    let mut a_labels = vec![0usize; lc.a_count];
    let mut best: Option<(usize, Vec<usize>, Vec<usize>)> = None;
    let mut votes = vec![0usize; lc.sigma_b];
    loop {
        let mut covered = 0;
        let mut b_labels = vec![0usize; lc.b_count];
        for (b, label) in b_labels.iter_mut().enumerate() {
            votes.iter_mut().for_each(|v| *v = 0);
            for &e in lc.edges_into(b) {
                votes[lc.projections[e][a_labels[lc.edges[e].0]]] += 1;
            }
            let (arg, &max) = votes
                .iter()
                .enumerate()
                .rev()
                .max_by_key(|&(_, v)| v)
                .expect("nonempty alphabet");
            *label = arg;
            covered += max;
        }
        if best.as_ref().map_or(true, |(c, _, _)| covered > *c) {
            let done = covered == lc.edges.len();
            best = Some((covered, a_labels.clone(), b_labels));
            if done {
                break;
            }
        }
        if !advance(&mut a_labels, lc.sigma_a) {
            break;
        }
    }
    let (covered, a_labels, b_labels) = best.expect("at least one labeling");
    let value = if lc.edges.is_empty() {
        Ratio::from_integer(1)
    } else {
        Ratio::new(covered as i64, lc.edges.len() as i64)
    };
    Ok(LabelCoverValue {
        value,
        covered,
        a_labels,
        b_labels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    /// Largest fraction of B-vertices not in total disagreement.
    pub eps_star: Rational,
    pub agreeing: usize,
    /// A list assignment attaining `eps_star` (each list sorted).
    pub witness: Vec<Vec<usize>>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..k).collect();
    let mut out = vec![cur.clone()];
    while next_combination(&mut cur, n) {
        out.push(cur.clone());
    }
    out
}

/// Maximum, over all assignments of `ell`-element label lists to A-vertices,
/// of the fraction of B-vertices on which the A-vertices do not totally
/// disagree. The instance has list-agreement soundness error `(ell, eps)`
/// exactly when the result is at most `eps`; `ell = 1` is plain agreement.
pub fn agreement_check(lc: &LabelCoverInstance, ell: usize) -> Result<AgreementReport> {
    agreement_check_capped(lc, ell, DEFAULT_ASSIGNMENT_CAP)
}

pub fn agreement_check_capped(
    lc: &LabelCoverInstance,
    ell: usize,
    cap: u128,
) -> Result<AgreementReport> {
    if ell == 0 || ell > lc.sigma_a {
        return Err(Error::Parameter(format!(
            "list size {ell} must lie in 1..={}",
            lc.sigma_a
        )));
    }
    let lists = combinations(lc.sigma_a, ell);
    let work = power(lists.len(), lc.a_count);
    debug_assert_eq!(lists.len() as u128, binomial(lc.sigma_a, ell));
    if work > cap {
        return Err(Error::Refused {
            what: "list assignments",
            estimate: work,
            cap,
        });
    }
    // image[e][l]: B-labels reachable from list l through edge e.
    let image: Vec<Vec<u128>> = (0..lc.edges.len())
        .map(|e| {
            lists
                .iter()
                .map(|l| {
                    l.iter()
                        .fold(0u128, |acc, &x| acc | 1u128 << lc.projections[e][x])
                })
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; lc.a_count];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let agreeing = (0..lc.b_count)
            .filter(|&b| {
                let incident = lc.edges_into(b);
                incident.iter().enumerate().any(|(i, &e1)| {
                    let m1 = image[e1][choice[lc.edges[e1].0]];
                    incident[i + 1..]
                        .iter()
                        .any(|&e2| m1 & image[e2][choice[lc.edges[e2].0]] != 0)
                })
            })
            .count();
        if best.as_ref().map_or(true, |(c, _)| agreeing > *c) {
            best = Some((agreeing, choice.clone()));
            if agreeing == lc.b_count {
                break;
            }
        }
        if !advance(&mut choice, lists.len()) {
            break;
        }
    }
    let (agreeing, choice) = best.expect("at least one assignment");
    Ok(AgreementReport {
        eps_star: Ratio::new(agreeing as i64, lc.b_count as i64),
        agreeing,
        witness: choice.into_iter().map(|c| lists[c].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lc(
        a: usize,
        b: usize,
        sa: usize,
        sb: usize,
        edges: Vec<((usize, usize), Vec<usize>)>,
    ) -> LabelCoverInstance {
        let (e, p) = edges.into_iter().unzip();
        LabelCoverInstance::new(a, b, sa, sb, e, p).unwrap()
    }

    #[test]
    fn rejects_partial_projections_and_duplicates() {
        assert!(LabelCoverInstance::new(1, 1, 2, 2, vec![(0, 0)], vec![vec![0]]).is_err());
        assert!(LabelCoverInstance::new(1, 1, 1, 2, vec![(0, 0)], vec![vec![2]]).is_err());
        assert!(
            LabelCoverInstance::new(1, 1, 1, 1, vec![(0, 0), (0, 0)], vec![vec![0], vec![0]])
                .is_err()
        );
    }

    #[test]
    fn single_edge_has_value_one() {
        let g = lc(1, 1, 3, 2, vec![((0, 0), vec![1, 0, 1])]);
        let v = bruteforce_labelcover(&g).unwrap();
        assert_eq!(v.value, Ratio::from_integer(1));
        assert_eq!(g.covered_edges(&v.a_labels, &v.b_labels), 1);
    }

    #[test]
    fn conflicting_projections_give_half() {
        let g = lc(2, 1, 1, 2, vec![((0, 0), vec![0]), ((1, 0), vec![1])]);
        let v = bruteforce_labelcover(&g).unwrap();
        assert_eq!(v.value, Ratio::new(1, 2));
        assert_eq!(v.b_labels, vec![0]);
    }

    #[test]
    fn cap_refuses() {
        let g = lc(
            2,
            1,
            3,
            2,
            vec![((0, 0), vec![0, 0, 1]), ((1, 0), vec![1, 0, 0])],
        );
        assert!(matches!(
            bruteforce_labelcover_capped(&g, 8),
            Err(Error::Refused { .. })
        ));
        assert!(matches!(
            agreement_check_capped(&g, 1, 8),
            Err(Error::Refused { .. })
        ));
        assert!(matches!(agreement_check(&g, 4), Err(Error::Parameter(_))));
        assert!(matches!(agreement_check(&g, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn agreement_on_satisfiable_instance_is_one() {
        // Labeling a -> 0 satisfies both edges into b.
        let g = lc(2, 1, 2, 2, vec![((0, 0), vec![1, 0]), ((1, 0), vec![1, 1])]);
        let r = agreement_check(&g, 1).unwrap();
        assert_eq!(r.eps_star, Ratio::from_integer(1));
    }

    #[test]
    fn full_lists_agree_where_images_overlap() {
        // Each b has two edges whose images {0,1} and {1} overlap.
        let g = lc(
            2,
            2,
            2,
            3,
            vec![
                ((0, 0), vec![0, 1]),
                ((1, 0), vec![1, 1]),
                ((0, 1), vec![2, 1]),
                ((1, 1), vec![1, 0]),
            ],
        );
        assert_eq!(
            agreement_check(&g, 2).unwrap().eps_star,
            Ratio::from_integer(1)
        );
        assert!(agreement_check(&g, 1).unwrap().eps_star <= Ratio::from_integer(1));
    }

    #[test]
    fn degree_one_vertices_always_disagree() {
        let g = lc(1, 2, 2, 2, vec![((0, 0), vec![0, 1]), ((0, 1), vec![0, 1])]);
        assert_eq!(
            agreement_check(&g, 2).unwrap().eps_star,
            Ratio::from_integer(0)
        );
    }

    #[test]
    fn combinations_enumerate_all_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(3, 1), vec![vec![0], vec![1], vec![2]]);
    }
}
