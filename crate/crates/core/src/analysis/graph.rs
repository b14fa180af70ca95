//! The event propagation graph.
//!
//! Vertices stand for event-producing steps; propagation edges say which
//! produced event can satisfy which left-hand side. Dependency-only edges
//! (data, flag, enable) order steps without propagating events.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write};

use petgraph::graph::{DiGraph, EdgeIndex, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;

use crate::ast::{Lhs, Path, Rhs};
use crate::program::{NodeKind, Program};
use crate::semantics::init_activation;

/// An admissible external event, up to its value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    Trigger(Path),
    Assign(Path),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Trigger(p) => write!(f, "trigger {}", p),
            Source::Assign(p) => write!(f, "assign {}", p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Source(Source),
    Spike(Path),
    Binding(Path),
    Assignment(Path),
    Activate(Path),
    Deactivate(Path),
}

impl Vertex {
    pub fn path(&self) -> &Path {
        match self {
            Vertex::Source(Source::Trigger(p) | Source::Assign(p)) => p,
            Vertex::Spike(p)
            | Vertex::Binding(p)
            | Vertex::Assignment(p)
            | Vertex::Activate(p)
            | Vertex::Deactivate(p) => p,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Source(s) => write!(f, "external {}", s),
            Vertex::Spike(p) => write!(f, "spike {}", p),
            Vertex::Binding(p) => write!(f, "binding {}", p),
            Vertex::Assignment(p) => write!(f, "assignment {}", p),
            Vertex::Activate(p) => write!(f, "activate {}", p),
            Vertex::Deactivate(p) => write!(f, "deactivate {}", p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// A trigger reaching a `T?` binding, or a source reaching its spike.
    Trigger,
    /// An assignment (or external assign) reaching a `C?` or condition binding.
    Assign,
    /// An activation reaching an `A?` binding.
    Activate,
    /// A deactivation reaching a `D?` binding.
    Deactivate,
    /// A binding driving its right-hand side.
    Fire,
    /// Component activation or deactivation reaching a child.
    Closure,
    /// A write of a property that a later step reads.
    Data,
    /// A flag flip that a later step tests.
    Flag,
    /// Activation of an initially inactive ancestor of an external source.
    Enable,
}

impl EdgeKind {
    pub fn propagates(self) -> bool {
        !matches!(self, EdgeKind::Data | EdgeKind::Flag | EdgeKind::Enable)
    }

    fn label(self) -> &'static str {
        match self {
            EdgeKind::Trigger => "T",
            EdgeKind::Assign => "C",
            EdgeKind::Activate => "A",
            EdgeKind::Deactivate => "D",
            EdgeKind::Fire => "fire",
            EdgeKind::Closure => "closure",
            EdgeKind::Data => "data",
            EdgeKind::Flag => "flag",
            EdgeKind::Enable => "enable",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PropGraph {
    graph: DiGraph<Vertex, EdgeKind>,
    index: HashMap<Vertex, NodeIndex>,
    edge_set: HashSet<(NodeIndex, NodeIndex, EdgeKind)>,
}

impl PropGraph {
    fn new() -> Self {
        PropGraph { graph: DiGraph::new(), index: HashMap::new(), edge_set: HashSet::new() }
    }

    fn vertex(&mut self, v: Vertex) -> (NodeIndex, bool) {
        if let Some(&i) = self.index.get(&v) {
            return (i, false);
        }
        let i = self.graph.add_node(v.clone());
        self.index.insert(v, i);
        (i, true)
    }

    pub(crate) fn add_edge(&mut self, a: NodeIndex, b: NodeIndex, kind: EdgeKind) {
        if self.edge_set.insert((a, b, kind)) {
            self.graph.add_edge(a, b, kind);
        }
    }

    pub(crate) fn remove_edge(&mut self, e: EdgeIndex) {
        if let Some((a, b)) = self.graph.edge_endpoints(e) {
            let kind = self.graph[e];
            self.edge_set.remove(&(a, b, kind));
            self.graph.remove_edge(e);
        }
    }

    pub fn graph(&self) -> &DiGraph<Vertex, EdgeKind> {
        &self.graph
    }

    pub fn index_of(&self, v: &Vertex) -> Option<NodeIndex> {
        self.index.get(v).copied()
    }

    pub fn vertex_at(&self, i: NodeIndex) -> &Vertex {
        &self.graph[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn has_edge(&self, a: &Vertex, b: &Vertex, kind: EdgeKind) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.edge_set.contains(&(a, b, kind)),
            _ => false,
        }
    }

    /// Source vertices in creation order.
    pub fn sources(&self) -> Vec<NodeIndex> {
        self.graph.node_indices().filter(|&i| matches!(self.graph[i], Vertex::Source(_))).collect()
    }

    /// Propagation successors, sorted by creation order.
    pub fn propagate_successors(&self, i: NodeIndex) -> Vec<(NodeIndex, EdgeKind)> {
        let mut out: Vec<_> = self
            .graph
            .edges_directed(i, Direction::Outgoing)
            .filter(|e| e.weight().propagates())
            .map(|e| (e.target(), *e.weight()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Vertices reachable from `from` over propagation edges, never
    /// entering `blocked`.
    pub fn reachable(&self, from: NodeIndex, blocked: Option<NodeIndex>) -> BTreeSet<NodeIndex> {
        let mut seen = BTreeSet::new();
        if Some(from) == blocked {
            return seen;
        }
        let mut stack = vec![from];
        seen.insert(from);
        while let Some(v) = stack.pop() {
            for e in self.graph.edges_directed(v, Direction::Outgoing) {
                let t = e.target();
                if e.weight().propagates() && Some(t) != blocked && seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// Graphviz rendering with vertices in creation order and edges sorted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph propagation {\n  rankdir=LR;\n  node [fontname=\"monospace\"];\n");
        for i in self.graph.node_indices() {
            let v = &self.graph[i];
            let shape = match v {
                Vertex::Source(_) => "doubleoctagon",
                Vertex::Spike(_) => "ellipse",
                Vertex::Binding(_) => "box",
                Vertex::Assignment(_) => "parallelogram",
                Vertex::Activate(_) | Vertex::Deactivate(_) => "diamond",
            };
            let _ = writeln!(out, "  n{} [label=\"{}\", shape={}];", i.index(), v, shape);
        }
        let mut edges: Vec<_> =
            self.graph.edge_references().map(|e| (e.source().index(), e.target().index(), *e.weight())).collect();
        edges.sort();
        for (a, b, kind) in edges {
            let style = if kind.propagates() { "solid" } else { "dashed" };
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\", style={}];", a, b, kind.label(), style);
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the full (unpruned) propagation graph.
pub fn build_prop_graph(prog: &Program) -> PropGraph {
    let mut g = PropGraph::new();
    let mut trig: HashMap<&Path, Vec<&Path>> = HashMap::new();
    let mut act: HashMap<&Path, Vec<&Path>> = HashMap::new();
    let mut deact: HashMap<&Path, Vec<&Path>> = HashMap::new();
    let mut change: HashMap<Path, Vec<&Path>> = HashMap::new();
    let mut producers: HashMap<&Path, Vec<Vertex>> = HashMap::new();

    for node in prog.nodes() {
        let p = &node.path;
        match &node.kind {
            NodeKind::Spike => {
                let (s, _) = g.vertex(Vertex::Source(Source::Trigger(p.clone())));
                let (k, _) = g.vertex(Vertex::Spike(p.clone()));
                g.add_edge(s, k, EdgeKind::Trigger);
            }
            NodeKind::Property { .. } => {
                g.vertex(Vertex::Source(Source::Assign(p.clone())));
                producers.entry(p).or_default().push(Vertex::Source(Source::Assign(p.clone())));
            }
            _ => {}
        }
    }
    for node in prog.nodes() {
        let p = &node.path;
        match &node.kind {
            NodeKind::Binding { lhs, .. } => {
                g.vertex(Vertex::Binding(p.clone()));
                match lhs {
                    Lhs::TriggerOf(q) => trig.entry(q).or_default().push(p),
                    Lhs::ActivateOf(q) => act.entry(q).or_default().push(p),
                    Lhs::DeactivateOf(q) => deact.entry(q).or_default().push(p),
                    Lhs::ChangeOf(q) => change.entry(q.clone()).or_default().push(p),
                    Lhs::Cond(e) => {
                        for q in e.free_vars() {
                            change.entry(q).or_default().push(p);
                        }
                    }
                }
            }
            NodeKind::Assignment { target, .. } => {
                g.vertex(Vertex::Assignment(p.clone()));
                producers.entry(target).or_default().push(Vertex::Assignment(p.clone()));
            }
            _ => {}
        }
    }

    // Trigger and assign propagation.
    for node in prog.nodes() {
        let p = &node.path;
        let from = match &node.kind {
            NodeKind::Spike => Vertex::Spike(p.clone()),
            NodeKind::Assignment { .. } => Vertex::Assignment(p.clone()),
            _ => continue,
        };
        let fi = g.index[&from];
        for b in trig.get(p).into_iter().flatten() {
            let bi = g.index[&Vertex::Binding((*b).clone())];
            g.add_edge(fi, bi, EdgeKind::Trigger);
        }
    }
    for (q, vs) in &producers {
        for from in vs {
            let fi = g.index[from];
            for b in change.get(*q).into_iter().flatten() {
                let bi = g.index[&Vertex::Binding((*b).clone())];
                g.add_edge(fi, bi, EdgeKind::Assign);
            }
        }
    }

    // Right-hand sides, then activation closures to a fixed point.
    let mut work = Vec::new();
    for node in prog.nodes() {
        if let NodeKind::Binding { rhs, .. } = &node.kind {
            let bi = g.index[&Vertex::Binding(node.path.clone())];
            let to = match rhs {
                Rhs::DoTrigger(t) if prog.is_spike(t) => Vertex::Spike(t.clone()),
                Rhs::DoTrigger(t) => Vertex::Assignment(t.clone()),
                Rhs::DoActivate(t) => Vertex::Activate(t.clone()),
                Rhs::DoDeactivate(t) => Vertex::Deactivate(t.clone()),
            };
            let (ti, fresh) = g.vertex(to);
            g.add_edge(bi, ti, EdgeKind::Fire);
            if fresh {
                work.push(ti);
            }
        }
    }
    while let Some(vi) = work.pop() {
        let v = g.graph[vi].clone();
        let (q, activate) = match &v {
            Vertex::Activate(q) => (q.clone(), true),
            Vertex::Deactivate(q) => (q.clone(), false),
            _ => continue,
        };
        let listeners = if activate { &act } else { &deact };
        for b in listeners.get(&q).into_iter().flatten() {
            let bi = g.index[&Vertex::Binding((*b).clone())];
            g.add_edge(vi, bi, if activate { EdgeKind::Activate } else { EdgeKind::Deactivate });
        }
        let id = prog.id_of(&q).expect("activation target exists");
        let node = prog.node(id);
        if !node.is_component() {
            continue;
        }
        let children: Vec<Path> = if activate {
            let closure: BTreeSet<_> = prog.activation_closure(id).into_iter().collect();
            node.children.iter().filter(|c| closure.contains(c)).map(|&c| prog.node(c).path.clone()).collect()
        } else {
            node.children
                .iter()
                .filter(|&&c| prog.node(c).init_activation().is_some())
                .map(|&c| prog.node(c).path.clone())
                .collect()
        };
        for c in children {
            let to = if activate { Vertex::Activate(c) } else { Vertex::Deactivate(c) };
            let (ci, fresh) = g.vertex(to);
            g.add_edge(vi, ci, EdgeKind::Closure);
            if fresh {
                work.push(ci);
            }
        }
    }

    // Data edges: writers of a property before assignments reading it.
    for node in prog.nodes() {
        if let NodeKind::Assignment { expr, .. } = &node.kind {
            let ri = g.index[&Vertex::Assignment(node.path.clone())];
            for q in expr.free_vars() {
                for from in producers.get(&q).into_iter().flatten() {
                    let fi = g.index[from];
                    g.add_edge(fi, ri, EdgeKind::Data);
                }
            }
        }
    }

    // Flag edges: flag flips before the steps testing that flag.
    let mut flag_readers: HashMap<Path, Vec<Vertex>> = HashMap::new();
    for node in prog.nodes() {
        match &node.kind {
            NodeKind::Binding { rhs, .. } => {
                let b = Vertex::Binding(node.path.clone());
                flag_readers.entry(node.path.clone()).or_default().push(b.clone());
                if let Some(parent) = rhs.target().parent().filter(|p| !p.is_empty()) {
                    flag_readers.entry(parent).or_default().push(b);
                }
            }
            NodeKind::Assignment { target, .. } => {
                if let Some(parent) = target.parent().filter(|p| !p.is_empty()) {
                    flag_readers.entry(parent).or_default().push(Vertex::Assignment(node.path.clone()));
                }
            }
            _ => {}
        }
    }
    let flips: Vec<NodeIndex> =
        g.graph.node_indices().filter(|&i| matches!(g.graph[i], Vertex::Activate(_) | Vertex::Deactivate(_))).collect();
    for fi in flips {
        let q = g.graph[fi].path().clone();
        for r in flag_readers.get(&q).into_iter().flatten() {
            let ri = g.index[r];
            g.add_edge(fi, ri, EdgeKind::Flag);
        }
    }

    // Enable edges: an external event of a process waits on the activation
    // of any initially inactive ancestor.
    let initial = init_activation(prog);
    for si in g.sources() {
        let mut anc = g.graph[si].path().parent();
        while let Some(c) = anc.filter(|c| !c.is_empty()) {
            if !initial.contains(&c) {
                if let Some(&ai) = g.index.get(&Vertex::Activate(c.clone())) {
                    g.add_edge(ai, si, EdgeKind::Enable);
                }
            }
            anc = c.parent();
        }
    }
    g
}
