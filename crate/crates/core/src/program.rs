//! Flat, indexed view of a core process tree.
//!
//! Node ids follow pre-order document order, which is also the order in
//! which property initializers run.

use std::collections::HashMap;

use thiserror::Error;

use crate::ast::{Expr, InitActivation, Lhs, Path, Process, ProcessClass, Rhs, Ty};
use crate::ops;

pub type NodeId = usize;

#[derive(Clone, Debug)]
pub enum NodeKind {
    Property { ty: Ty, init: Expr },
    Spike,
    Assignment { expr: Expr, target: Path },
    Binding { lhs: Lhs, ia: InitActivation, rhs: Rhs },
    Component { ia: InitActivation },
}

#[derive(Clone, Debug)]
pub struct Node {
    pub path: Path,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    pub kind: NodeKind,
}

impl Node {
    pub fn class(&self) -> ProcessClass {
        match self.kind {
            NodeKind::Spike | NodeKind::Assignment { .. } => ProcessClass::Transient,
            NodeKind::Binding { .. } | NodeKind::Component { .. } => ProcessClass::Permanent,
            NodeKind::Property { .. } => ProcessClass::Property,
        }
    }

    pub fn is_component(&self) -> bool {
        matches!(self.kind, NodeKind::Component { .. })
    }

    pub fn init_activation(&self) -> Option<InitActivation> {
        match self.kind {
            NodeKind::Binding { ia, .. } | NodeKind::Component { ia } => Some(ia),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct ProgramError {
    pub path: Path,
    pub message: String,
}

impl ProgramError {
    fn new(path: &Path, message: impl Into<String>) -> Self {
        ProgramError { path: path.clone(), message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("`{0}` is not a property")]
    NotAProperty(Path),
    #[error("operator `{op}` is not defined on {operands}")]
    Operator { op: &'static str, operands: String },
}

/// Types `e` given the type of every property path.
pub fn typecheck_expr(e: &Expr, ty_of: &impl Fn(&Path) -> Option<Ty>) -> Result<Ty, TypeError> {
    match e {
        Expr::Const(v) => Ok(v.ty()),
        Expr::Var(p) | Expr::Last(p) => ty_of(p).ok_or_else(|| TypeError::NotAProperty(p.clone())),
        Expr::Unary(op, a) => {
            let t = typecheck_expr(a, ty_of)?;
            ops::unary_type(*op, t)
                .ok_or_else(|| TypeError::Operator { op: ops::unary_symbol(*op), operands: t.to_string() })
        }
        Expr::Binary(op, l, r) => {
            let lt = typecheck_expr(l, ty_of)?;
            let rt = typecheck_expr(r, ty_of)?;
            ops::binary_type(*op, lt, rt)
                .ok_or_else(|| TypeError::Operator { op: op.symbol(), operands: format!("{} and {}", lt, rt) })
        }
    }
}

#[derive(Clone, Debug)]
pub struct Program {
    root: Process,
    nodes: Vec<Node>,
    index: HashMap<Path, NodeId>,
}

impl Program {
    /// Indexes and validates a core tree: unique sibling names, reference
    /// kinds per binding form, expression types, and initializers reading
    /// only earlier properties.
    pub fn new(root: Process) -> Result<Program, ProgramError> {
        if !matches!(root, Process::Component { .. }) {
            return Err(ProgramError::new(&Path::from_segments([root.name()]), "the root process must be a component"));
        }
        let mut nodes = Vec::new();
        let mut index = HashMap::new();
        flatten(&root, &Path::root_anchor(), None, &mut nodes, &mut index)?;
        let prog = Program { root, nodes, index };
        prog.validate()?;
        Ok(prog)
    }

    pub fn root(&self) -> &Process {
        &self.root
    }

    pub fn root_path(&self) -> &Path {
        &self.nodes[0].path
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn id_of(&self, path: &Path) -> Option<NodeId> {
        self.index.get(path).copied()
    }

    pub fn get(&self, path: &Path) -> Option<&Node> {
        self.id_of(path).map(|id| &self.nodes[id])
    }

    pub fn class_of(&self, path: &Path) -> Option<ProcessClass> {
        self.get(path).map(Node::class)
    }

    pub fn property_ty(&self, path: &Path) -> Option<Ty> {
        match self.get(path)?.kind {
            NodeKind::Property { ty, .. } => Some(ty),
            _ => None,
        }
    }

    pub fn is_spike(&self, path: &Path) -> bool {
        matches!(self.get(path).map(|n| &n.kind), Some(NodeKind::Spike))
    }

    pub fn is_component(&self, path: &Path) -> bool {
        self.get(path).is_some_and(Node::is_component)
    }

    pub fn ids_where<'a>(&'a self, pred: impl Fn(&Node) -> bool + 'a) -> impl Iterator<Item = NodeId> + 'a {
        (0..self.nodes.len()).filter(move |&i| pred(&self.nodes[i]))
    }

    pub fn property_paths(&self) -> Vec<Path> {
        self.paths_of(ProcessClass::Property)
    }

    pub fn permanent_paths(&self) -> Vec<Path> {
        self.paths_of(ProcessClass::Permanent)
    }

    pub fn transient_paths(&self) -> Vec<Path> {
        self.paths_of(ProcessClass::Transient)
    }

    pub fn spike_paths(&self) -> Vec<Path> {
        self.nodes.iter().filter(|n| matches!(n.kind, NodeKind::Spike)).map(|n| n.path.clone()).collect()
    }

    fn paths_of(&self, class: ProcessClass) -> Vec<Path> {
        self.nodes.iter().filter(|n| n.class() == class).map(|n| n.path.clone()).collect()
    }

    /// Permanent descendants of `id` in document order, excluding `id`.
    pub fn permanent_descendants(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack: Vec<NodeId> = self.nodes[id].children.iter().rev().copied().collect();
        while let Some(n) = stack.pop() {
            if self.nodes[n].class() == ProcessClass::Permanent {
                out.push(n);
            }
            stack.extend(self.nodes[n].children.iter().rev().copied());
        }
        out
    }

    /// Permanents activated together with component `id` when it receives
    /// an activation: children marked active, recursively through active
    /// components. Empty unless `id` is itself an active-marked component.
    pub fn activation_closure(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        if let NodeKind::Component { ia: InitActivation::Active } = self.nodes[id].kind {
            self.collect_active_children(id, &mut out);
        }
        out
    }

    fn collect_active_children(&self, id: NodeId, out: &mut Vec<NodeId>) {
        for &c in &self.nodes[id].children {
            match self.nodes[c].kind {
                NodeKind::Binding { ia: InitActivation::Active, .. } => out.push(c),
                NodeKind::Component { ia: InitActivation::Active } => {
                    out.push(c);
                    self.collect_active_children(c, out);
                }
                _ => {}
            }
        }
    }

    pub fn typecheck(&self, e: &Expr) -> Result<Ty, TypeError> {
        typecheck_expr(e, &|p| self.property_ty(p))
    }

    fn validate(&self) -> Result<(), ProgramError> {
        for (id, node) in self.nodes.iter().enumerate() {
            let here = &node.path;
            match &node.kind {
                NodeKind::Property { ty, init } => {
                    let t = self.typecheck(init).map_err(|e| ProgramError::new(here, e.to_string()))?;
                    if t != *ty {
                        return Err(ProgramError::new(here, format!("initializer has type {}, expected {}", t, ty)));
                    }
                    if let Some(p) = init.last_vars().into_iter().next() {
                        return Err(ProgramError::new(
                            here,
                            format!("`last {}` in an initializer reads an empty environment", p),
                        ));
                    }
                    for p in init.free_vars() {
                        if self.id_of(&p).is_none_or(|other| other >= id) {
                            return Err(ProgramError::new(
                                here,
                                format!("initializer reads `{}`, which is not initialized before it", p),
                            ));
                        }
                    }
                }
                NodeKind::Spike | NodeKind::Component { .. } => {}
                NodeKind::Assignment { expr, target } => {
                    let tty = self.property_ty(target).ok_or_else(|| {
                        ProgramError::new(here, format!("assignment target `{}` is not a property", target))
                    })?;
                    let t = self.typecheck(expr).map_err(|e| ProgramError::new(here, e.to_string()))?;
                    if t != tty {
                        return Err(ProgramError::new(
                            here,
                            format!("assigns a {} to `{}` of type {}", t, target, tty),
                        ));
                    }
                }
                NodeKind::Binding { lhs, rhs, .. } => {
                    self.check_lhs(here, lhs)?;
                    self.check_rhs(here, rhs)?;
                }
            }
        }
        Ok(())
    }

    fn expect_class(&self, here: &Path, target: &Path, want: ProcessClass, form: &str) -> Result<(), ProgramError> {
        match self.class_of(target) {
            Some(c) if c == want => Ok(()),
            Some(c) => {
                Err(ProgramError::new(here, format!("{} needs a {:?} process but `{}` is {:?}", form, want, target, c)))
            }
            None => Err(ProgramError::new(here, format!("unknown path `{}`", target))),
        }
    }

    fn check_lhs(&self, here: &Path, lhs: &Lhs) -> Result<(), ProgramError> {
        match lhs {
            Lhs::TriggerOf(p) => self.expect_class(here, p, ProcessClass::Transient, "T?"),
            Lhs::ActivateOf(p) => self.expect_class(here, p, ProcessClass::Permanent, "A?"),
            Lhs::DeactivateOf(p) => self.expect_class(here, p, ProcessClass::Permanent, "D?"),
            Lhs::ChangeOf(p) => self.expect_class(here, p, ProcessClass::Property, "C?"),
            Lhs::Cond(e) => match self.typecheck(e) {
                Ok(Ty::Bool) => Ok(()),
                Ok(t) => Err(ProgramError::new(here, format!("condition has type {}, expected Bool", t))),
                Err(e) => Err(ProgramError::new(here, e.to_string())),
            },
        }
    }

    fn check_rhs(&self, here: &Path, rhs: &Rhs) -> Result<(), ProgramError> {
        match rhs {
            Rhs::DoTrigger(p) => self.expect_class(here, p, ProcessClass::Transient, "T!"),
            Rhs::DoActivate(p) => self.expect_class(here, p, ProcessClass::Permanent, "A!"),
            Rhs::DoDeactivate(p) => self.expect_class(here, p, ProcessClass::Permanent, "D!"),
        }
    }
}

fn flatten(
    p: &Process,
    anchor: &Path,
    parent: Option<NodeId>,
    nodes: &mut Vec<Node>,
    index: &mut HashMap<Path, NodeId>,
) -> Result<NodeId, ProgramError> {
    let path = anchor.child(p.name());
    if !crate::ast::is_identifier(p.name()) {
        return Err(ProgramError::new(&path, format!("`{}` is not an identifier", p.name())));
    }
    if index.contains_key(&path) {
        return Err(ProgramError::new(&path, "duplicate sibling name"));
    }
    let kind = match p {
        Process::Property { ty, init, .. } => NodeKind::Property { ty: *ty, init: init.clone() },
        Process::Spike { .. } => NodeKind::Spike,
        Process::Assignment { expr, target, .. } => NodeKind::Assignment { expr: expr.clone(), target: target.clone() },
        Process::Binding { lhs, ia, rhs, .. } => NodeKind::Binding { lhs: lhs.clone(), ia: *ia, rhs: rhs.clone() },
        Process::Component { ia, .. } => NodeKind::Component { ia: *ia },
    };
    let id = nodes.len();
    index.insert(path.clone(), id);
    nodes.push(Node { path: path.clone(), parent, children: Vec::new(), kind });
    for c in p.children() {
        let cid = flatten(c, &path, Some(id), nodes, index)?;
        nodes[id].children.push(cid);
    }
    Ok(id)
}
