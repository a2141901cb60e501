//! Feasibility for edge selection: an attachment set combined with a degree
//! cap `b` and a component-size cap `c`, the classification of why a single
//! edge addition fails, and exhaustive verification of the attachment-set
//! axioms on small node counts.

use std::fmt;

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;

use crate::graph::{all_edges, Edge, EdgeSet};
use crate::{Error, Result};

/// A hereditary family of subgraphs in which any single-edge extension that
/// leaves the family must connect two already-connected nodes.
///
/// Further families (girth bounds, excluded minors, ...) would slot in as
/// new variants with a membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttachmentOracle {
    /// Every subgraph; annuls the attachment constraint.
    AllSubgraphs,
    /// Forests.
    Acyclic,
    /// Planar subgraphs.
    Planar,
    /// Subgraphs whose every cycle spans all `n` nodes.
    HamiltonianCyclesOnly { n: usize },
    /// Planar subgraphs in which no cycle passes through any of the given
    /// edges.
    PlanarWithAcyclicEdges { protected: Vec<Edge> },
    /// At most `max_edges` edges. Hereditary but *not* an attachment set;
    /// exists to exercise the axiom checker.
    EdgeCountCap { max_edges: usize },
}

impl AttachmentOracle {
    pub fn all_subgraphs() -> AttachmentOracle {
        AttachmentOracle::AllSubgraphs
    }

    pub fn acyclic() -> AttachmentOracle {
        AttachmentOracle::Acyclic
    }

    pub fn planar() -> AttachmentOracle {
        AttachmentOracle::Planar
    }

    /// Oracle for tours: a member may contain a cycle only if that cycle
    /// visits every one of the `n` nodes. Needs `n >= 3`.
    pub fn no_non_hamiltonian_cycle(n: usize) -> Result<AttachmentOracle> {
        if n < 3 {
            return Err(Error::arg(format!("tour oracle needs n >= 3, got {n}")));
        }
        Ok(AttachmentOracle::HamiltonianCyclesOnly { n })
    }

    /// Planar subgraphs where no cycle may pass through a protected edge.
    pub fn planar_with_acyclic_edges(protected: Vec<Edge>) -> AttachmentOracle {
        AttachmentOracle::PlanarWithAcyclicEdges { protected }
    }

    pub fn edge_count_cap(max_edges: usize) -> AttachmentOracle {
        AttachmentOracle::EdgeCountCap { max_edges }
    }

    pub fn name(&self) -> String {
        match self {
            AttachmentOracle::AllSubgraphs => "all".into(),
            AttachmentOracle::Acyclic => "acyclic".into(),
            AttachmentOracle::Planar => "planar".into(),
            AttachmentOracle::HamiltonianCyclesOnly { n } => format!("tsp({n})"),
            AttachmentOracle::PlanarWithAcyclicEdges { protected } => {
                let pairs: Vec<String> = protected.iter().map(|e| e.to_string()).collect();
                format!("planar_guard:{}", pairs.join(","))
            }
            AttachmentOracle::EdgeCountCap { max_edges } => format!("edge_cap({max_edges})"),
        }
    }

    pub fn is_member(&self, subgraph: &EdgeSet) -> bool {
        match self {
            AttachmentOracle::AllSubgraphs => true,
            AttachmentOracle::Acyclic => is_forest(subgraph),
            AttachmentOracle::Planar => planar_test(subgraph),
            AttachmentOracle::HamiltonianCyclesOnly { n } => {
                is_forest(subgraph) || is_single_spanning_cycle(subgraph, *n)
            }
            AttachmentOracle::PlanarWithAcyclicEdges { protected } => {
                planar_test(subgraph) && protected.iter().all(|&e| !on_cycle(subgraph, e))
            }
            AttachmentOracle::EdgeCountCap { max_edges } => subgraph.len() <= *max_edges,
        }
    }
}

fn is_forest(s: &EdgeSet) -> bool {
    // A graph is acyclic iff globally edges = nodes - components.
    let comps = s.components().len();
    s.len() + comps == s.n()
}

/// Exactly one cycle and it visits all `n` nodes: a Hamiltonian cycle.
fn is_single_spanning_cycle(s: &EdgeSet, n: usize) -> bool {
    s.len() == n && (0..n).all(|x| s.degree(x) == 2) && s.component_size_of(0) == n
}

/// Euler quick-reject, then the full test on the edge-incident nodes.
fn planar_test(s: &EdgeSet) -> bool {
    let nodes = s.incident_nodes();
    if nodes.len() >= 3 && s.len() > 3 * nodes.len() - 6 {
        return false;
    }
    if s.len() < 9 {
        // Fewer than 9 edges cannot contain a K5 or K3,3 subdivision.
        return true;
    }
    let g = UnGraph::<(), ()>::from_edges(s.iter().map(|e| (e.u() as u32, e.v() as u32)));
    is_planar(&g)
}

/// Is `e` (a member of `s`) on some cycle of `s`, i.e. do its endpoints stay
/// connected after removing it?
fn on_cycle(s: &EdgeSet, e: Edge) -> bool {
    if !s.contains(e) {
        return false;
    }
    let mut without = s.clone();
    without.remove(e);
    without.same_component(e.u(), e.v())
}

/// What happened to an edge at its critical iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EliminationCause {
    Added,
    ViolatesA,
    ViolatesB,
    ViolatesC,
}

impl fmt::Display for EliminationCause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EliminationCause::Added => "ADD",
            EliminationCause::ViolatesA => "ELIM_A",
            EliminationCause::ViolatesB => "ELIM_B",
            EliminationCause::ViolatesC => "ELIM_C",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for EliminationCause {
    type Err = Error;

    fn from_str(s: &str) -> Result<EliminationCause> {
        match s {
            "ADD" => Ok(EliminationCause::Added),
            "ELIM_A" => Ok(EliminationCause::ViolatesA),
            "ELIM_B" => Ok(EliminationCause::ViolatesB),
            "ELIM_C" => Ok(EliminationCause::ViolatesC),
            other => Err(Error::arg(format!("unknown trace cause `{other}`"))),
        }
    }
}

/// The full constraint triple over `n` nodes: attachment set membership,
/// per-node degree at most `b`, component size at most `c` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    attachment: AttachmentOracle,
    b: usize,
    c: usize,
    n: usize,
}

impl ConstraintSystem {
    pub fn new(
        attachment: AttachmentOracle,
        b: usize,
        c: usize,
        n: usize,
    ) -> Result<ConstraintSystem> {
        if !(1 <= b && b < c && c <= n) {
            return Err(Error::arg(format!(
                "constraint bounds must satisfy 1 <= b < c <= n, got b={b} c={c} n={n}"
            )));
        }
        Ok(ConstraintSystem { attachment, b, c, n })
    }

    /// Spanning-tree setting: acyclic, no effective degree or component cap.
    pub fn spanning_tree(n: usize) -> Result<ConstraintSystem> {
        ConstraintSystem::new(AttachmentOracle::acyclic(), n - 1, n, n)
    }

    /// Tour setting: degree cap 2, cycles must be Hamiltonian.
    pub fn tour(n: usize) -> Result<ConstraintSystem> {
        ConstraintSystem::new(AttachmentOracle::no_non_hamiltonian_cycle(n)?, 2, n, n)
    }

    /// Planar-subgraph setting: planar, no effective degree or component cap.
    pub fn planar_subgraph(n: usize) -> Result<ConstraintSystem> {
        ConstraintSystem::new(AttachmentOracle::planar(), n - 1, n, n)
    }

    /// Degree cap only.
    pub fn b_matching(n: usize, b: usize) -> Result<ConstraintSystem> {
        ConstraintSystem::new(AttachmentOracle::all_subgraphs(), b, n, n)
    }

    pub fn attachment(&self) -> &AttachmentOracle {
        &self.attachment
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Does the component-size cap bind at all (`c < n`)?
    pub fn component_cap_active(&self) -> bool {
        self.c < self.n
    }

    pub fn is_feasible(&self, s: &EdgeSet) -> bool {
        s.n() == self.n
            && (0..self.n).all(|x| s.degree(x) <= self.b)
            && (0..self.n).all(|x| s.component_size_of(x) <= self.c)
            && self.attachment.is_member(s)
    }

    /// Spec string accepted by the command line:
    /// `A=<acyclic|all|planar|tsp|planar_guard:i-j,...> b=<int|max> c=<int|n>`
    /// where `b=max` means `b = c - 1` and `c=n` leaves components unbounded.
    pub fn parse_spec(spec: &str, n: usize) -> Result<ConstraintSystem> {
        let mut a: Option<&str> = None;
        let mut b_tok: Option<&str> = None;
        let mut c_tok: Option<&str> = None;
        for tok in spec.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::arg(format!("bad constraint token `{tok}`")))?;
            match key {
                "A" => a = Some(val),
                "b" => b_tok = Some(val),
                "c" => c_tok = Some(val),
                other => return Err(Error::arg(format!("unknown constraint key `{other}`"))),
            }
        }
        let a = a.ok_or_else(|| Error::arg("constraint spec missing A="))?;
        let c = match c_tok.ok_or_else(|| Error::arg("constraint spec missing c="))? {
            "n" => n,
            v => v.parse::<usize>().map_err(|_| Error::arg(format!("bad c value `{v}`")))?,
        };
        let b = match b_tok.ok_or_else(|| Error::arg("constraint spec missing b="))? {
            "max" => c.saturating_sub(1),
            v => v.parse::<usize>().map_err(|_| Error::arg(format!("bad b value `{v}`")))?,
        };
        let attachment = match a {
            "all" => AttachmentOracle::all_subgraphs(),
            "acyclic" => AttachmentOracle::acyclic(),
            "planar" => AttachmentOracle::planar(),
            "tsp" => AttachmentOracle::no_non_hamiltonian_cycle(n)?,
            other => {
                if let Some(list) = other.strip_prefix("planar_guard:") {
                    let mut protected = Vec::new();
                    for part in list.split(',') {
                        protected.push(part.parse::<Edge>()?);
                    }
                    AttachmentOracle::planar_with_acyclic_edges(protected)
                } else {
                    return Err(Error::arg(format!("unknown attachment kind `{other}`")));
                }
            }
        };
        ConstraintSystem::new(attachment, b, c, n)
    }

    /// The spec string form of this system, re-parseable by `parse_spec`.
    pub fn spec_string(&self) -> String {
        let a = match &self.attachment {
            AttachmentOracle::AllSubgraphs => "all".to_string(),
            AttachmentOracle::Acyclic => "acyclic".to_string(),
            AttachmentOracle::Planar => "planar".to_string(),
            AttachmentOracle::HamiltonianCyclesOnly { .. } => "tsp".to_string(),
            AttachmentOracle::PlanarWithAcyclicEdges { .. } => self.attachment.name(),
            AttachmentOracle::EdgeCountCap { .. } => self.attachment.name(),
        };
        let b = if self.b + 1 == self.c { "max".to_string() } else { self.b.to_string() };
        let c = if self.c == self.n { "n".to_string() } else { self.c.to_string() };
        format!("A={a} b={b} c={c}")
    }
}

/// Classify adding `e` to the feasible set `current`: `Added` when all three
/// constraints still hold, otherwise the first violated constraint in
/// priority order C, then B, then A.
pub fn classify_edge(
    sys: &ConstraintSystem,
    current: &EdgeSet,
    e: Edge,
) -> Result<EliminationCause> {
    if current.contains(e) {
        return Err(Error::arg(format!("edge {e} already present")));
    }
    if e.v() >= sys.n() {
        return Err(Error::arg(format!("edge {e} out of range for n={}", sys.n())));
    }
    if !sys.is_feasible(current) {
        return Err(Error::arg("current edge set is not feasible"));
    }
    Ok(classify_edge_unchecked(sys, current, e))
}

/// Same classification without validating `current`; callers must hold a
/// feasible set.
pub(crate) fn classify_edge_unchecked(
    sys: &ConstraintSystem,
    current: &EdgeSet,
    e: Edge,
) -> EliminationCause {
    let (u, v) = e.endpoints();
    if !current.same_component(u, v)
        && current.component_size_of(u) + current.component_size_of(v) > sys.c()
    {
        return EliminationCause::ViolatesC;
    }
    if current.degree(u) >= sys.b() || current.degree(v) >= sys.b() {
        return EliminationCause::ViolatesB;
    }
    let mut with = current.clone();
    with.insert(e);
    if !sys.attachment().is_member(&with) {
        return EliminationCause::ViolatesA;
    }
    EliminationCause::Added
}

/// Which axiom a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomKind {
    Heredity,
    Attachment,
}

#[derive(Debug, Clone)]
pub struct AxiomCounterexample {
    pub axiom: AxiomKind,
    /// The member subgraph F witnessing the violation.
    pub subgraph: Vec<Edge>,
    /// For heredity: the edge whose removal leaves the family (None when the
    /// empty set itself is missing). For attachment: the edge whose addition
    /// leaves the family although its endpoints are disconnected.
    pub edge: Option<Edge>,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub heredity_ok: bool,
    pub attachment_ok: bool,
    pub heredity_counterexample: Option<AxiomCounterexample>,
    pub attachment_counterexample: Option<AxiomCounterexample>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.heredity_ok && self.attachment_ok
    }

    pub fn counterexample(&self) -> Option<&AxiomCounterexample> {
        self.heredity_counterexample.as_ref().or(self.attachment_counterexample.as_ref())
    }
}

pub const AXIOM_CHECK_MAX_NODES: usize = 6;

/// Exhaustively check heredity and attachment over every subgraph of the
/// complete graph on `n <= 6` nodes. Membership of the empty set is required
/// as part of heredity. Returns the first counterexample found per axiom.
pub fn verify_axioms(oracle: &AttachmentOracle, n: usize) -> Result<AxiomReport> {
    if n > AXIOM_CHECK_MAX_NODES {
        return Err(Error::arg(format!(
            "axiom check enumerates all subgraphs; n must be <= {AXIOM_CHECK_MAX_NODES}, got {n}"
        )));
    }
    let edges = all_edges(n);
    let m = edges.len();
    let member: Vec<bool> = (0u64..(1 << m))
        .map(|mask| {
            let set = EdgeSet::from_edges(
                n,
                edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e),
            );
            oracle.is_member(&set)
        })
        .collect();
    let edges_of = |mask: u64| -> Vec<Edge> {
        edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect()
    };

    let mut report = AxiomReport {
        heredity_ok: true,
        attachment_ok: true,
        heredity_counterexample: None,
        attachment_counterexample: None,
    };
    if !member[0] {
        report.heredity_ok = false;
        report.heredity_counterexample =
            Some(AxiomCounterexample { axiom: AxiomKind::Heredity, subgraph: vec![], edge: None });
    }
    for mask in 0u64..(1 << m) {
        if !member[mask as usize] {
            continue;
        }
        for (i, &e) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                // Heredity: removing any edge keeps membership.
                if report.heredity_ok && !member[(mask & !(1 << i)) as usize] {
                    report.heredity_ok = false;
                    report.heredity_counterexample = Some(AxiomCounterexample {
                        axiom: AxiomKind::Heredity,
                        subgraph: edges_of(mask),
                        edge: Some(e),
                    });
                }
            } else if report.attachment_ok && !member[(mask | (1 << i)) as usize] {
                // Attachment: a rejected extension must close a path.
                let set = EdgeSet::from_edges(n, edges_of(mask));
                if !set.same_component(e.u(), e.v()) {
                    report.attachment_ok = false;
                    report.attachment_counterexample = Some(AxiomCounterexample {
                        axiom: AxiomKind::Attachment,
                        subgraph: edges_of(mask),
                        edge: Some(e),
                    });
                }
            }
        }
        if !report.heredity_ok && !report.attachment_ok {
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, edges: &[(usize, usize)]) -> EdgeSet {
        EdgeSet::from_edges(n, edges.iter().map(|&(a, b)| Edge::new(a, b)))
    }

    #[test]
    fn acyclic_oracle_on_path() {
        let oracle = AttachmentOracle::acyclic();
        assert!(oracle.is_member(&set(3, &[(0, 1), (1, 2)])));
        assert!(!oracle.is_member(&set(3, &[(0, 1), (1, 2), (0, 2)])));
    }

    #[test]
    fn tour_oracle_rejects_short_cycle() {
        let oracle = AttachmentOracle::no_non_hamiltonian_cycle(4).unwrap();
        assert!(!oracle.is_member(&set(4, &[(0, 1), (1, 2), (0, 2)])));
        // A Hamiltonian cycle is fine, and so is any forest.
        assert!(oracle.is_member(&set(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])));
        assert!(oracle.is_member(&set(4, &[(0, 1), (1, 2), (2, 3)])));
        // Hamiltonian cycle plus a chord has a short cycle.
        assert!(!oracle.is_member(&set(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])));
        assert!(AttachmentOracle::no_non_hamiltonian_cycle(2).is_err());
    }

    #[test]
    fn planar_oracle_rejects_k5() {
        let oracle = AttachmentOracle::planar();
        let k5: Vec<(usize, usize)> =
            (0..5).flat_map(|u| ((u + 1)..5).map(move |v| (u, v))).collect();
        assert!(!oracle.is_member(&set(5, &k5)));
        assert!(oracle.is_member(&set(5, &k5[..9])));
    }

    #[test]
    fn planar_oracle_rejects_k33() {
        let edges: Vec<(usize, usize)> =
            (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        assert!(!AttachmentOracle::planar().is_member(&set(6, &edges)));
    }

    #[test]
    fn planar_guard_blocks_cycles_through_protected_edges() {
        let oracle = AttachmentOracle::planar_with_acyclic_edges(vec![Edge::new(0, 1)]);
        assert!(oracle.is_member(&set(4, &[(0, 1), (1, 2), (2, 3)])));
        assert!(!oracle.is_member(&set(4, &[(0, 1), (1, 2), (0, 2)])));
        // A cycle avoiding the protected edge is allowed.
        assert!(oracle.is_member(&set(4, &[(0, 1), (1, 2), (2, 3), (1, 3)])));
    }

    #[test]
    fn classify_respects_priority() {
        // Spanning-tree setting: a chord violates A.
        let sys = ConstraintSystem::spanning_tree(3).unwrap();
        let cur = set(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            classify_edge(&sys, &cur, Edge::new(0, 2)).unwrap(),
            EliminationCause::ViolatesA
        );

        // Degree cap: b = 1.
        let sys = ConstraintSystem::b_matching(4, 1).unwrap();
        let cur = set(4, &[(0, 1)]);
        assert_eq!(
            classify_edge(&sys, &cur, Edge::new(1, 2)).unwrap(),
            EliminationCause::ViolatesB
        );

        // Both B and C violated: C wins by priority.
        let sys = ConstraintSystem::new(AttachmentOracle::all_subgraphs(), 1, 2, 4).unwrap();
        let cur = set(4, &[(0, 1)]);
        assert_eq!(
            classify_edge(&sys, &cur, Edge::new(1, 2)).unwrap(),
            EliminationCause::ViolatesC
        );
    }

    #[test]
    fn classify_accepts_feasible_addition() {
        let sys = ConstraintSystem::spanning_tree(4).unwrap();
        let cur = set(4, &[(0, 1)]);
        assert_eq!(classify_edge(&sys, &cur, Edge::new(2, 3)).unwrap(), EliminationCause::Added);
    }

    #[test]
    fn classify_rejects_infeasible_current() {
        let sys = ConstraintSystem::spanning_tree(3).unwrap();
        let cur = set(3, &[(0, 1), (1, 2), (0, 2)]);
        assert!(classify_edge(&sys, &cur, Edge::new(0, 2)).is_err());
        let cur = set(3, &[(0, 1), (1, 2)]);
        assert!(classify_edge(&sys, &cur, Edge::new(0, 1)).is_err());
    }

    #[test]
    fn axioms_hold_for_acyclic_on_k4() {
        let report = verify_axioms(&AttachmentOracle::acyclic(), 4).unwrap();
        assert!(report.all_ok(), "{:?}", report.counterexample());
    }

    #[test]
    fn axioms_hold_for_planar_on_k5() {
        let report = verify_axioms(&AttachmentOracle::planar(), 5).unwrap();
        assert!(report.all_ok(), "{:?}", report.counterexample());
    }

    #[test]
    fn axioms_hold_for_tour_oracle_on_k5() {
        let report =
            verify_axioms(&AttachmentOracle::no_non_hamiltonian_cycle(5).unwrap(), 5).unwrap();
        assert!(report.all_ok(), "{:?}", report.counterexample());
    }

    #[test]
    fn edge_cap_fails_attachment_with_counterexample() {
        let oracle = AttachmentOracle::edge_count_cap(2);
        let report = verify_axioms(&oracle, 4).unwrap();
        assert!(report.heredity_ok);
        assert!(!report.attachment_ok);
        let ce = report.attachment_counterexample.as_ref().unwrap();
        // The returned counterexample is genuine...
        let f = EdgeSet::from_edges(4, ce.subgraph.iter().copied());
        let e = ce.edge.unwrap();
        assert!(oracle.is_member(&f));
        let mut fe = f.clone();
        fe.insert(e);
        assert!(!oracle.is_member(&fe));
        assert!(!f.same_component(e.u(), e.v()));
        // ...and the classic construction is one too.
        let f = set(4, &[(0, 1), (2, 3)]);
        assert!(oracle.is_member(&f));
        let mut fe = f.clone();
        fe.insert(Edge::new(0, 2));
        assert!(!oracle.is_member(&fe));
        assert!(!f.same_component(0, 2));
    }

    #[test]
    fn spec_string_round_trip() {
        for (spec, n) in [
            ("A=acyclic b=max c=n", 6),
            ("A=all b=2 c=4", 6),
            ("A=tsp b=2 c=n", 5),
            ("A=planar b=max c=n", 6),
            ("A=planar_guard:0-3,1-4,2-5 b=max c=n", 6),
        ] {
            let sys = ConstraintSystem::parse_spec(spec, n).unwrap();
            let again = ConstraintSystem::parse_spec(&sys.spec_string(), n).unwrap();
            assert_eq!(sys, again, "{spec}");
        }
        assert!(ConstraintSystem::parse_spec("A=all b=0 c=n", 4).is_err());
        assert!(ConstraintSystem::parse_spec("A=bogus b=1 c=n", 4).is_err());
        assert!(ConstraintSystem::parse_spec("b=1 c=n", 4).is_err());
    }
}
