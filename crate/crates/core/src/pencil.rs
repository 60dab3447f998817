//! Resolution data for the pencil attached to a nonnegative-type profile:
//! the extended center sequence, the dual graph on the exceptional curves,
//! and the dicritical report with its structural checks.

use serde::Serialize;
use thiserror::Error;

use crate::cusp::{proximity_matrix, CuspError, CuspProfile, MultiplicitySequence, ProximityMatrix};
use crate::graph::{GraphError, GraphOp, VertexId, WeightedGraph};

#[derive(Debug, Error)]
pub enum PencilError {
    #[error("genus check fails for degree {degree}: (d-1)(d-2) = {lhs}, sum r(r-1) = {rhs}")]
    GenusCheckFailed { degree: u64, lhs: i64, rhs: i64 },
    #[error("profile is of negative type (nu = {nu}); the pencil machinery needs nu >= 0")]
    NegativeType { nu: i64 },
    #[error("tree check requires positive type (nu = {nu})")]
    RequiresPositiveType { nu: i64 },
    #[error("THEOREM-VIOLATION: {0} (this falsifies the engine, not the theorems)")]
    TheoremViolation(String),
    #[error("engine invariant broken: {0}")]
    EngineInvariant(String),
    #[error(transparent)]
    Cusp(#[from] CuspError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Blow-up bookkeeping for the minimal resolution of the pencil's base
/// points: m = n + nu centers, the extended multiplicity sequence, and its
/// proximity matrix.
#[derive(Debug, Clone, Serialize)]
pub struct ResolutionPlan {
    pub profile: CuspProfile,
    pub m: usize,
    pub n: usize,
    /// length of the embedded resolution, n + r_n (0 when smooth)
    pub embedded_len: usize,
    pub full_seq: MultiplicitySequence,
    pub prox: ProximityMatrix,
}

pub fn plan(profile: &CuspProfile) -> Result<ResolutionPlan, PencilError> {
    if !profile.genus_zero_check() {
        let lhs = (profile.degree as i64 - 1) * (profile.degree as i64 - 2);
        let rhs: i64 = profile
            .minseq
            .entries()
            .iter()
            .map(|&r| (r * (r - 1)) as i64)
            .sum();
        return Err(PencilError::GenusCheckFailed {
            degree: profile.degree,
            lhs,
            rhs,
        });
    }
    let nu = profile.nu_tilde();
    if nu < 0 {
        return Err(PencilError::NegativeType { nu });
    }
    let n = profile.minseq.len();
    let m = n + nu as usize;
    let full_seq = MultiplicitySequence::new(profile.minseq.extended(m)?)?;
    let prox = proximity_matrix(&full_seq, m)?;

    let d = profile.degree;
    if full_seq.sum() != 3 * d - 2 {
        return Err(PencilError::TheoremViolation(format!(
            "sum of the extended sequence is {}, expected 3d-2 = {}",
            full_seq.sum(),
            3 * d - 2
        )));
    }
    if full_seq.sum_of_squares() != d * d {
        return Err(PencilError::TheoremViolation(format!(
            "square sum of the extended sequence is {}, expected d^2 = {}",
            full_seq.sum_of_squares(),
            d * d
        )));
    }
    let embedded_len = match profile.minseq.entries().last() {
        Some(&rn) => n + rn as usize,
        None => 0,
    };
    Ok(ResolutionPlan {
        profile: profile.clone(),
        m,
        n,
        embedded_len,
        full_seq,
        prox,
    })
}

/// Dual graph of the resolved configuration: exceptional vertices E_1..E_m
/// plus the curve vertex C of weight 0. Edges of the weighted graph join
/// exceptional curves only; the curve's intersection numbers (which may
/// exceed 1) live in `c_intersections`.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub graph: WeightedGraph,
    pub e_vertices: Vec<VertexId>,
    pub c_vertex: VertexId,
    /// c_intersections[i] = C . E_{i+1}, the proximity deficit
    pub c_intersections: Vec<u64>,
}

impl DualGraph {
    /// Exceptional subgraph, without the curve vertex.
    pub fn exceptional_subgraph(&self) -> WeightedGraph {
        self.graph.delete_vertex(self.c_vertex)
    }

    /// 1-based index pairs (i, j), i < j, of exceptional adjacencies.
    pub fn exceptional_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, b) in self.graph.edges() {
            if a == self.c_vertex || b == self.c_vertex {
                continue;
            }
            let ia = self.e_vertices.iter().position(|&v| v == a).unwrap() + 1;
            let ib = self.e_vertices.iter().position(|&v| v == b).unwrap() + 1;
            out.push((ia.min(ib), ia.max(ib)));
        }
        out.sort_unstable();
        out
    }
}

/// E_j meets E_i in the resolved surface iff j is proximate to i and no
/// later center separates them (a k proximate to both).
fn exceptional_adjacent(prox: &ProximityMatrix, i: usize, j: usize, m: usize) -> bool {
    // 0-based i < j
    if !prox.is_proximate(j, i) {
        return false;
    }
    !(j + 1..m).any(|k| prox.is_proximate(k, i) && prox.is_proximate(k, j))
}

pub fn dual_graph(plan: &ResolutionPlan) -> DualGraph {
    let m = plan.m;
    let entries = plan.full_seq.entries();
    let mut g = WeightedGraph::new();
    let e_vertices: Vec<VertexId> = (0..m)
        .map(|i| {
            let later = (i + 1..m).filter(|&j| plan.prox.is_proximate(j, i)).count();
            g.add_vertex(format!("E{}", i + 1), -1 - later as i64)
        })
        .collect();
    let c_vertex = g.add_vertex("C", 0);
    for i in 0..m {
        for j in i + 1..m {
            if exceptional_adjacent(&plan.prox, i, j, m) {
                g.add_edge(e_vertices[i], e_vertices[j]).expect("valid ids");
            }
        }
    }
    debug_assert_eq!(plan.prox.deficits.len(), entries.len());
    DualGraph {
        graph: g,
        e_vertices,
        c_vertex,
        c_intersections: plan.prox.deficits.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DicriticalReport {
    /// 1-based indices i with C . E_i > 0, ascending; contains m.
    pub horizontal: Vec<usize>,
    /// degree of each dicritical, aligned with `horizontal`
    pub degrees: Vec<u64>,
    pub has_degree_one: bool,
    /// Some(m) exactly when E_m has degree 1, i.e. positive type.
    pub section_index: Option<usize>,
}

pub fn dicriticals(plan: &ResolutionPlan) -> Result<DicriticalReport, PencilError> {
    let dg = dual_graph(plan);
    let m = plan.m;
    let horizontal: Vec<usize> = (1..=m)
        .filter(|&i| dg.c_intersections[i - 1] > 0)
        .collect();
    let degrees: Vec<u64> = horizontal
        .iter()
        .map(|&i| dg.c_intersections[i - 1])
        .collect();

    if horizontal.is_empty() || horizontal.len() > 2 {
        return Err(PencilError::TheoremViolation(format!(
            "expected 1 or 2 dicriticals, found {} ({:?})",
            horizontal.len(),
            horizontal
        )));
    }
    if !horizontal.contains(&m) {
        return Err(PencilError::TheoremViolation(format!(
            "the last exceptional curve E_{} is not horizontal",
            m
        )));
    }
    let has_degree_one = degrees.contains(&1);
    if !has_degree_one {
        return Err(PencilError::TheoremViolation(format!(
            "no dicritical of degree 1: degrees {:?} at {:?}",
            degrees, horizontal
        )));
    }
    let last_degree = dg.c_intersections[m - 1];
    let positive_type = plan.profile.nu_tilde() > 0;
    if (last_degree == 1) != positive_type {
        return Err(PencilError::TheoremViolation(format!(
            "degree of E_m is {} but nu = {}; a section there must mean positive type",
            last_degree,
            plan.profile.nu_tilde()
        )));
    }
    let section_index = (last_degree == 1).then_some(m);
    Ok(DicriticalReport {
        horizontal,
        degrees,
        has_degree_one,
        section_index,
    })
}

/// Contract the exceptional subgraph in reverse creation order (E_m first)
/// down to the empty graph, returning the blow-down witness.
pub fn verify_exceptional_contracts(plan: &ResolutionPlan) -> Result<Vec<GraphOp>, PencilError> {
    let dg = dual_graph(plan);
    let mut g = dg.exceptional_subgraph();
    let mut ops = Vec::new();
    for i in (0..plan.m).rev() {
        let v = dg.e_vertices[i];
        if !g.can_blow_down(v) {
            return Err(PencilError::EngineInvariant(format!(
                "E_{} cannot be contracted at its turn",
                i + 1
            )));
        }
        ops.push(GraphOp::BlowDown {
            at: g.label(v).to_owned(),
        });
        g = g.blow_down(v)?;
    }
    if !g.is_empty() {
        return Err(PencilError::EngineInvariant(
            "exceptional subgraph did not contract to the empty graph".into(),
        ));
    }
    Ok(ops)
}

/// For positive type: the configuration graph, with the curve joined to the
/// horizontals and the horizontal-horizontal adjacency rerouted through it,
/// is a connected tree.
///
/// When two exceptional curves are both horizontal they meet each other and
/// the curve at the next base point, so counting both their mutual edge and
/// the curve edges would double-count one intersection point.
pub fn tree_check(plan: &ResolutionPlan) -> Result<bool, PencilError> {
    let nu = plan.profile.nu_tilde();
    if nu <= 0 {
        return Err(PencilError::RequiresPositiveType { nu });
    }
    let dg = dual_graph(plan);
    let m = plan.m;
    let horizontal: Vec<usize> = (0..m).filter(|&i| dg.c_intersections[i] > 0).collect();

    if horizontal.len() == 2 {
        let (a, b) = (horizontal[0], horizontal[1]);
        if !dg.graph.has_edge(dg.e_vertices[a], dg.e_vertices[b]) {
            return Err(PencilError::TheoremViolation(format!(
                "two horizontals E_{} and E_{} should share the next base point",
                a + 1,
                b + 1
            )));
        }
    }

    // vertices 0..m are E's, m is C
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + 1];
    let mut edge_count = 0usize;
    for (x, y) in dg.graph.edges() {
        if x == dg.c_vertex || y == dg.c_vertex {
            continue;
        }
        let ix = dg.e_vertices.iter().position(|&v| v == x).unwrap();
        let iy = dg.e_vertices.iter().position(|&v| v == y).unwrap();
        if horizontal.len() == 2 && horizontal.contains(&ix) && horizontal.contains(&iy) {
            continue; // rerouted through C
        }
        adj[ix].push(iy);
        adj[iy].push(ix);
        edge_count += 1;
    }
    for &h in &horizontal {
        adj[h].push(m);
        adj[m].push(h);
        edge_count += 1;
    }

    // connected + acyclic
    let total = m + 1;
    let mut seen = vec![false; total];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                visited += 1;
                stack.push(w);
            }
        }
    }
    Ok(visited == total && edge_count == total - 1)
}

/// Machine-readable resolution report: plan data, dual graph, dicriticals
/// and every structural check. The boolean is true when all checks pass;
/// check failures are embedded rather than raised so callers can render
/// them.
pub fn resolve_report(profile: &CuspProfile) -> Result<(serde_json::Value, bool), PencilError> {
    use serde_json::json;
    let p = plan(profile)?;
    let dg = dual_graph(&p);
    let weights: Vec<i64> = dg
        .e_vertices
        .iter()
        .map(|&v| i64::try_from(dg.graph.weight(v)).unwrap_or(i64::MIN))
        .collect();
    let edges: Vec<serde_json::Value> = dg
        .exceptional_edges()
        .into_iter()
        .map(|(a, b)| json!([a, b]))
        .collect();
    let report = dicriticals(&p);
    let contracts = verify_exceptional_contracts(&p).is_ok();
    let tree = if profile.nu_tilde() > 0 {
        Some(tree_check(&p)?)
    } else {
        None
    };
    let (dicritical_value, degree_one, count, section) = match &report {
        Ok(r) => (
            json!({"indices": r.horizontal, "degrees": r.degrees}),
            r.has_degree_one,
            r.horizontal.len(),
            r.section_index.is_some(),
        ),
        Err(e) => (json!({"error": e.to_string()}), false, 0, false),
    };
    let all_ok = report.is_ok() && contracts && tree.unwrap_or(true);
    let d = profile.degree;
    let value = json!({
        "degree": d,
        "m": p.m,
        "n": p.n,
        "nu_tilde": profile.nu_tilde(),
        "full_seq": p.full_seq.entries(),
        "weights": weights,
        "edges": edges,
        "C_intersections": dg.c_intersections,
        "identities": {
            "sum": p.full_seq.sum(),
            "sum_target": 3 * d - 2,
            "sum_sq": p.full_seq.sum_of_squares(),
            "sum_sq_target": d * d,
        },
        "dicriticals": dicritical_value,
        "checks": {
            "degree_one": degree_one,
            "count": count,
            "section": section,
            "tree": tree,
            "contracts": contracts,
        },
    });
    Ok((value, all_ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(d: u64, seq: &[u64]) -> CuspProfile {
        CuspProfile::new(d, seq.to_vec()).unwrap()
    }

    #[test]
    fn plan_examples() {
        let p = plan(&profile(1, &[])).unwrap();
        assert_eq!((p.m, p.n), (1, 0));
        assert_eq!(p.full_seq.entries(), &[1]);

        let p = plan(&profile(3, &[2])).unwrap();
        assert_eq!(p.m, 6);
        assert_eq!(p.full_seq.entries(), &[2, 1, 1, 1, 1, 1]);

        let p = plan(&profile(5, &[2, 2, 2, 2, 2, 2])).unwrap();
        assert_eq!(p.m, 7);
        assert_eq!(p.full_seq.entries(), &[2, 2, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn plan_rejections() {
        assert!(matches!(
            plan(&profile(4, &[2])),
            Err(PencilError::GenusCheckFailed { .. })
        ));
        // degree 10, (4,4,4,4,4,3,2,2): genus-valid? make a definitely
        // negative-type genus-valid example instead: d=4 with (3,2,...)?
        // (3): genus 6 = 3*2 ok for d=4, nu = 16-9 = 7 >= 0; craft negative:
        // d=5, (4,2,2): genus (4)(3) = 12 = 12+2+2? 4*3+2*1+2*1 = 16 no.
        // d=6, (4,4,2): 4*3+4*3+2*1 = 26, (5)(4) = 20 no. use smooth d=3:
        assert!(matches!(
            plan(&CuspProfile::smooth(3).unwrap()),
            Err(PencilError::GenusCheckFailed { .. })
        ));
    }

    #[test]
    fn dual_graph_cuspidal_cubic() {
        let p = plan(&profile(3, &[2])).unwrap();
        let dg = dual_graph(&p);
        let weights: Vec<i64> = dg
            .e_vertices
            .iter()
            .map(|&v| i64::try_from(dg.graph.weight(v)).unwrap())
            .collect();
        assert_eq!(weights, vec![-3, -2, -2, -2, -2, -1]);
        assert_eq!(dg.c_intersections, vec![0, 0, 0, 0, 0, 1]);
        assert_eq!(
            dg.exceptional_edges(),
            vec![(1, 3), (2, 3), (3, 4), (4, 5), (5, 6)]
        );
        assert_eq!(*dg.graph.weight(dg.c_vertex), 0.into());
    }

    #[test]
    fn dual_graph_line_and_conic() {
        let p = plan(&profile(1, &[])).unwrap();
        let dg = dual_graph(&p);
        assert_eq!(dg.e_vertices.len(), 1);
        assert_eq!(*dg.graph.weight(dg.e_vertices[0]), (-1).into());
        assert_eq!(dg.c_intersections, vec![1]);

        let p = plan(&profile(2, &[])).unwrap();
        let dg = dual_graph(&p);
        let weights: Vec<i64> = dg
            .e_vertices
            .iter()
            .map(|&v| i64::try_from(dg.graph.weight(v)).unwrap())
            .collect();
        assert_eq!(weights, vec![-2, -2, -2, -1]);
        assert_eq!(dg.c_intersections, vec![0, 0, 0, 1]);
        assert_eq!(dg.exceptional_edges(), vec![(1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn dicritical_reports() {
        let rep = dicriticals(&plan(&profile(1, &[])).unwrap()).unwrap();
        assert_eq!(rep.horizontal, vec![1]);
        assert_eq!(rep.degrees, vec![1]);
        assert_eq!(rep.section_index, Some(1));

        let rep = dicriticals(&plan(&profile(3, &[2])).unwrap()).unwrap();
        assert_eq!(rep.horizontal, vec![6]);
        assert_eq!(rep.degrees, vec![1]);
        assert!(rep.has_degree_one);

        let rep = dicriticals(&plan(&profile(5, &[2, 2, 2, 2, 2, 2])).unwrap()).unwrap();
        assert_eq!(rep.horizontal, vec![6, 7]);
        assert_eq!(rep.degrees, vec![1, 1]);
        assert_eq!(rep.section_index, Some(7));
    }

    #[test]
    fn exceptional_contracts() {
        for (d, seq) in [(1u64, vec![]), (2, vec![]), (3, vec![2]), (5, vec![2; 6])] {
            let p = plan(&profile(d, &seq)).unwrap();
            let ops = verify_exceptional_contracts(&p).unwrap();
            assert_eq!(ops.len(), p.m, "d = {}", d);
        }
    }

    #[test]
    fn tree_checks() {
        assert!(tree_check(&plan(&profile(3, &[2])).unwrap()).unwrap());
        assert!(tree_check(&plan(&profile(2, &[])).unwrap()).unwrap());
        assert!(tree_check(&plan(&profile(5, &[2; 6])).unwrap()).unwrap());
        // restricted to positive type
        // (a nu = 0 profile would error; none is small enough to list here)
    }

    #[test]
    fn nu_zero_profile_has_an_early_degree_one_dicritical() {
        // (4,4,4,4,4,4,4,3) at degree 11: genus-valid, admissible, nu = 0;
        // the last exceptional curve is not a section, the degree-1
        // dicritical sits one step earlier
        let profile = profile(11, &[4, 4, 4, 4, 4, 4, 4, 3]);
        assert!(profile.genus_zero_check());
        assert_eq!(profile.nu_tilde(), 0);
        let p = plan(&profile).unwrap();
        assert_eq!(p.m, 8);
        let rep = dicriticals(&p).unwrap();
        assert_eq!(rep.horizontal, vec![7, 8]);
        assert_eq!(rep.degrees, vec![1, 3]);
        assert!(rep.has_degree_one);
        assert_eq!(rep.section_index, None);
        verify_exceptional_contracts(&p).unwrap();
        assert!(matches!(
            tree_check(&p),
            Err(PencilError::RequiresPositiveType { .. })
        ));
    }

    #[test]
    fn deficit_of_last_equals_last_multiplicity() {
        for (d, seq) in [(3u64, vec![2]), (4, vec![3]), (5, vec![2; 6]), (4, vec![2, 2, 2])] {
            let p = plan(&profile(d, &seq)).unwrap();
            let dg = dual_graph(&p);
            assert_eq!(
                dg.c_intersections[p.m - 1],
                *p.full_seq.entries().last().unwrap()
            );
        }
    }
}
