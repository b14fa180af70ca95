use std::collections::{BTreeMap, BTreeSet, HashMap};

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;

use crate::ast::{InitActivation, Lhs, Path};
use crate::program::{NodeKind, Program};

use super::graph::{PropGraph, Source, Vertex};
use super::sat::{sat_set, single_var, Sat};
use super::{Code, Diagnostic};

/// What one external source can reach, with the conditions guarding it.
pub(crate) struct SourceView<'g> {
    g: &'g PropGraph,
    pub source: NodeIndex,
    pub reach: BTreeSet<NodeIndex>,
    guards: Option<HashMap<NodeIndex, Vec<(Path, Sat)>>>,
}

impl<'g> SourceView<'g> {
    pub fn new(g: &'g PropGraph, source: NodeIndex) -> Self {
        SourceView { g, source, reach: g.reachable(source, None), guards: None }
    }

    // For each reached vertex, the understood conditions of the condition
    // bindings that every path to it passes through.
    fn guards(&mut self, prog: &Program) -> &HashMap<NodeIndex, Vec<(Path, Sat)>> {
        if self.guards.is_none() {
            let mut out: HashMap<NodeIndex, Vec<(Path, Sat)>> = HashMap::new();
            for &c in &self.reach {
                let Vertex::Binding(bp) = self.g.vertex_at(c) else { continue };
                let Some(NodeKind::Binding { lhs: Lhs::Cond(e), .. }) = prog.get(bp).map(|n| &n.kind) else {
                    continue;
                };
                let Some(q) = single_var(e) else { continue };
                let Some(s) = sat_set(e, &q) else { continue };
                let without = self.g.reachable(self.source, Some(c));
                for &u in self.reach.difference(&without) {
                    if u != c {
                        out.entry(u).or_default().push((q.clone(), s.clone()));
                    }
                }
            }
            self.guards = Some(out);
        }
        self.guards.as_ref().expect("computed above")
    }

    /// True when `u` and `w` can never both happen in one reaction.
    pub fn exclusive(&mut self, prog: &Program, u: NodeIndex, w: NodeIndex) -> bool {
        let guards = self.guards(prog);
        let (Some(gu), Some(gw)) = (guards.get(&u), guards.get(&w)) else {
            return false;
        };
        gu.iter().any(|(q1, s1)| gw.iter().any(|(q2, s2)| q1 == q2 && s1.disjoint(s2)))
    }
}

pub(crate) fn check_cycles(g: &PropGraph, views: &[SourceView], out: &mut Vec<Diagnostic>) {
    let mut seen: BTreeSet<Vec<NodeIndex>> = BTreeSet::new();
    for view in views {
        let mut sub: DiGraph<NodeIndex, ()> = DiGraph::new();
        let mut local = HashMap::new();
        for &v in &view.reach {
            local.insert(v, sub.add_node(v));
        }
        for e in g.graph().edge_references() {
            if let (Some(&a), Some(&b)) = (local.get(&e.source()), local.get(&e.target())) {
                sub.add_edge(a, b, ());
            }
        }
        for scc in tarjan_scc(&sub) {
            let cyclic = scc.len() > 1 || sub.contains_edge(scc[0], scc[0]);
            if !cyclic {
                continue;
            }
            let mut members: Vec<NodeIndex> = scc.iter().map(|&i| sub[i]).collect();
            members.sort();
            if !seen.insert(members.clone()) {
                continue;
            }
            let names: Vec<String> = members.iter().map(|&m| g.vertex_at(m).to_string()).collect();
            out.push(Diagnostic::error(
                Code::DepCycle,
                members.iter().map(|&m| g.vertex_at(m).path().clone()).collect(),
                format!("cyclic dependency on {}: {}", g.vertex_at(view.source), names.join(", ")),
            ));
        }
    }
}

fn producer_target(prog: &Program, v: &Vertex) -> Option<Path> {
    match v {
        Vertex::Source(Source::Assign(q)) => Some(q.clone()),
        Vertex::Assignment(a) => match prog.get(a).map(|n| &n.kind) {
            Some(NodeKind::Assignment { target, .. }) => Some(target.clone()),
            _ => None,
        },
        _ => None,
    }
}

pub(crate) fn check_rssa(prog: &Program, g: &PropGraph, views: &mut [SourceView], out: &mut Vec<Diagnostic>) {
    let mut seen = BTreeSet::new();
    for view in views.iter_mut() {
        let mut by_target: BTreeMap<Path, Vec<NodeIndex>> = BTreeMap::new();
        for &v in &view.reach {
            if let Some(q) = producer_target(prog, g.vertex_at(v)) {
                by_target.entry(q).or_default().push(v);
            }
        }
        for (q, ps) in by_target {
            for (i, &a) in ps.iter().enumerate() {
                for &b in &ps[i + 1..] {
                    if view.exclusive(prog, a, b) || !seen.insert((q.clone(), a, b)) {
                        continue;
                    }
                    out.push(Diagnostic::error(
                        Code::Rssa,
                        vec![q.clone()],
                        format!(
                            "may be assigned twice in one reaction to {}: by {} and by {}",
                            g.vertex_at(view.source),
                            g.vertex_at(a),
                            g.vertex_at(b)
                        ),
                    ));
                }
            }
        }
    }
}

pub(crate) fn check_activation_conflicts(
    prog: &Program,
    g: &PropGraph,
    views: &mut [SourceView],
    out: &mut Vec<Diagnostic>,
) {
    let mut seen = BTreeSet::new();
    for view in views.iter_mut() {
        let pairs: Vec<(Path, NodeIndex, NodeIndex)> = view
            .reach
            .iter()
            .filter_map(|&v| match g.vertex_at(v) {
                Vertex::Activate(q) => {
                    let d = g.index_of(&Vertex::Deactivate(q.clone()))?;
                    view.reach.contains(&d).then(|| (q.clone(), v, d))
                }
                _ => None,
            })
            .collect();
        for (q, a, d) in pairs {
            if view.exclusive(prog, a, d) || !seen.insert(q.clone()) {
                continue;
            }
            out.push(Diagnostic::error(
                Code::ActConflict,
                vec![q],
                format!("may be both activated and deactivated in one reaction to {}", g.vertex_at(view.source)),
            ));
        }
    }
}

pub(crate) fn check_dead_parent_assign(prog: &Program, g: &PropGraph, views: &[SourceView], out: &mut Vec<Diagnostic>) {
    let mut deactivated: BTreeSet<&Path> = BTreeSet::new();
    for view in views {
        for &v in &view.reach {
            if let Vertex::Deactivate(q) = g.vertex_at(v) {
                deactivated.insert(q);
            }
        }
    }
    for node in prog.nodes() {
        let NodeKind::Assignment { target, .. } = &node.kind else { continue };
        let mut cur = target.parent();
        let mut culprit = None;
        while let Some(c) = cur.filter(|c| !c.is_empty()) {
            let marked = prog.get(&c).and_then(|n| n.init_activation()) == Some(InitActivation::Inactive);
            if marked || deactivated.contains(&c) {
                culprit = Some((c.clone(), marked));
                break;
            }
            cur = c.parent();
        }
        if let Some((c, marked)) = culprit {
            let why = if marked { "starts inactive" } else { "may be deactivated" };
            out.push(Diagnostic::error(
                Code::DeadParentAssign,
                vec![node.path.clone(), target.clone()],
                format!("assigns {} but enclosing component {} {}", target, c, why),
            ));
        }
    }
}

pub(crate) fn check_unreachable(prog: &Program, g: &PropGraph, views: &[SourceView], out: &mut Vec<Diagnostic>) {
    let mut reached: BTreeSet<NodeIndex> = BTreeSet::new();
    for view in views {
        reached.extend(view.reach.iter().copied());
    }
    for node in prog.nodes() {
        let v = match node.kind {
            NodeKind::Assignment { .. } => Vertex::Assignment(node.path.clone()),
            NodeKind::Binding { .. } => Vertex::Binding(node.path.clone()),
            _ => continue,
        };
        let i = g.index_of(&v).expect("every binding and assignment has a vertex");
        if !reached.contains(&i) {
            out.push(Diagnostic::warning(
                Code::Unreachable,
                vec![node.path.clone()],
                "no external event can reach this".to_string(),
            ));
        }
    }
}
