//! Lowering of a checked program to an object with one method per
//! external event.
//!
//! `flatten` walks the pruned propagation graph from every source and
//! turns each reached step into a guarded instruction, the guard being the
//! conjunction of the tests met on the way. `schedule` orders each method
//! so that writes of a field or flag come before the reads of its current
//! value. `gen_ir` packages the result with the reset code.

mod c;
mod text;

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use thiserror::Error;

use crate::analysis::{analyze, Analysis, AnalysisOptions, EdgeKind, PropGraph, Source, Vertex};
use crate::ast::{Expr, Lhs, Path, Rhs, Ty};
use crate::program::{NodeKind, Program};
use crate::semantics::init_activation;

pub use c::emit_c;
pub use text::ir_to_string;

/// One primitive test of a guard.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Test {
    /// The current activation flag of a permanent.
    Flag(Path),
    /// The activation flag at method entry.
    WasActive(Path),
    WasInactive(Path),
    /// A boolean expression over current fields and the snapshot.
    Cond(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instr {
    /// Evaluate `expr`; store it into `target` only if `commit` holds.
    SetField {
        target: Path,
        expr: Expr,
        commit: Vec<Test>,
    },
    /// Store the method argument into `target`.
    SetParam {
        target: Path,
    },
    SetFlag {
        target: Path,
        on: bool,
    },
    EmitTrigger(Path),
    /// Evaluate a condition only to surface its evaluation errors.
    EvalGuardOnly(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GuardedInstr {
    pub guard: Vec<Test>,
    pub instr: Instr,
    /// Binding, assignment or process the instruction stems from.
    pub origin: Path,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Method {
    pub event: Source,
    /// Fields read under `last`, copied at method entry.
    pub snapshot_fields: Vec<Path>,
    /// Flags read by was-active tests, copied at method entry.
    pub snapshot_flags: Vec<Path>,
    pub body: Vec<GuardedInstr>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub path: Path,
    pub ty: Ty,
    /// Initializer, evaluated in field order by reset.
    pub init: Expr,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IrObject {
    pub name: String,
    pub fields: Vec<Field>,
    /// Activation flags with their reset values.
    pub flags: Vec<(Path, bool)>,
    pub methods: Vec<Method>,
}

impl IrObject {
    pub fn method(&self, ev: &Source) -> Option<&Method> {
        self.methods.iter().find(|m| &m.event == ev)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("program rejected by analysis:\n{0}")]
    Rejected(String),
    #[error("internal: propagation cycle through `{0}` while flattening")]
    FlattenCycle(Vertex),
    #[error("scheduling cycle in method for `{event}` through {}", instrs.join(", "))]
    ScheduleCycle { event: Source, instrs: Vec<String> },
}

/// Flat instruction sets per source, in discovery order.
pub type Flat = Vec<(Source, Vec<GuardedInstr>)>;

/// Compiles a program: analysis, flattening, scheduling, packaging.
pub fn compile(prog: &Program) -> Result<IrObject, CompileError> {
    let analysis = analyze(prog, AnalysisOptions::default());
    compile_analyzed(prog, &analysis)
}

pub fn compile_analyzed(prog: &Program, analysis: &Analysis) -> Result<IrObject, CompileError> {
    if analysis.has_errors() {
        let lines: Vec<String> = analysis.errors().map(|d| d.to_string()).collect();
        return Err(CompileError::Rejected(lines.join("\n")));
    }
    let flat = flatten(&analysis.graph, prog)?;
    let sched = schedule(flat, prog)?;
    Ok(gen_ir(prog, sched))
}

/// Compiles without rejecting programs that fail analysis. The object may
/// then detect conflicts at run time; meant for tests of the VM's checks.
pub fn compile_unchecked(prog: &Program) -> Result<IrObject, CompileError> {
    let analysis = analyze(prog, AnalysisOptions::default());
    let flat = flatten(&analysis.graph, prog)?;
    let sched = schedule(flat, prog)?;
    Ok(gen_ir(prog, sched))
}

// Flags that hold at reset and that nothing can clear.
fn constant_flags(g: &PropGraph, prog: &Program) -> BTreeSet<Path> {
    init_activation(prog).into_iter().filter(|p| g.index_of(&Vertex::Deactivate(p.clone())).is_none()).collect()
}

struct Flattener<'a> {
    g: &'a PropGraph,
    prog: &'a Program,
    always_on: BTreeSet<Path>,
    out: Vec<GuardedInstr>,
    seen: BTreeSet<(Vec<Test>, Path, u8)>,
    on_path: Vec<petgraph::graph::NodeIndex>,
}

impl Flattener<'_> {
    fn push_flag(&self, guard: &mut Vec<Test>, p: &Path) {
        if !p.is_empty() && !self.always_on.contains(p) {
            push_test(guard, Test::Flag(p.clone()));
        }
    }

    fn emit(&mut self, guard: &[Test], instr: Instr, origin: &Path) {
        let gi = GuardedInstr { guard: guard.to_vec(), instr, origin: origin.clone() };
        if !self.out.contains(&gi) {
            self.out.push(gi);
        }
    }

    fn visit(&mut self, v: petgraph::graph::NodeIndex, guard: Vec<Test>, top: bool) -> Result<(), CompileError> {
        let vertex = self.g.vertex_at(v).clone();
        if self.on_path.contains(&v) {
            return Err(CompileError::FlattenCycle(vertex));
        }
        let key_tag = match &vertex {
            Vertex::Source(_) => 0,
            Vertex::Spike(_) => 1,
            Vertex::Binding(_) => 2,
            Vertex::Assignment(_) => 3,
            Vertex::Activate(_) => 4,
            Vertex::Deactivate(_) => 5,
        };
        if !self.seen.insert((guard.clone(), vertex.path().clone(), key_tag)) {
            return Ok(());
        }
        self.on_path.push(v);
        let mut next = guard.clone();
        let mut assigned = None;
        match &vertex {
            Vertex::Source(Source::Trigger(_)) => {}
            Vertex::Source(Source::Assign(q)) => self.emit(&guard, Instr::SetParam { target: q.clone() }, q),
            Vertex::Spike(s) => {
                // The external trigger itself is echoed by the caller.
                if !top {
                    self.emit(&guard, Instr::EmitTrigger(s.clone()), s);
                }
            }
            Vertex::Binding(b) => {
                let Some(NodeKind::Binding { lhs, rhs, .. }) = self.prog.get(b).map(|n| &n.kind) else {
                    unreachable!("binding vertex for a binding")
                };
                self.push_flag(&mut next, b);
                if let Lhs::Cond(e) = lhs {
                    self.emit(&next, Instr::EvalGuardOnly(e.clone()), b);
                    push_test(&mut next, Test::Cond(e.clone()));
                }
                let target = rhs.target();
                if let Some(parent) = target.parent() {
                    self.push_flag(&mut next, &parent);
                }
                match rhs {
                    Rhs::DoActivate(t) => push_test(&mut next, Test::WasInactive(t.clone())),
                    Rhs::DoDeactivate(t) => push_test(&mut next, Test::WasActive(t.clone())),
                    Rhs::DoTrigger(_) => {}
                }
            }
            Vertex::Assignment(a) => {
                let Some(NodeKind::Assignment { expr, target }) = self.prog.get(a).map(|n| &n.kind) else {
                    unreachable!("assignment vertex for an assignment")
                };
                let mut commit = Vec::new();
                if let Some(parent) = target.parent() {
                    self.push_flag(&mut commit, &parent);
                }
                self.emit(
                    &guard,
                    Instr::SetField { target: target.clone(), expr: expr.clone(), commit: commit.clone() },
                    a,
                );
                let mut after = guard.clone();
                for t in commit {
                    push_test(&mut after, t);
                }
                assigned = Some(after);
            }
            Vertex::Activate(q) => self.emit(&guard, Instr::SetFlag { target: q.clone(), on: true }, q),
            Vertex::Deactivate(q) => self.emit(&guard, Instr::SetFlag { target: q.clone(), on: false }, q),
        }
        for (w, kind) in self.g.propagate_successors(v) {
            let g = match (kind, &assigned) {
                (EdgeKind::Assign, Some(after)) => after.clone(),
                _ => next.clone(),
            };
            let top_spike = matches!(vertex, Vertex::Source(Source::Trigger(_)));
            self.visit(w, g, top_spike)?;
        }
        self.on_path.pop();
        Ok(())
    }
}

fn push_test(guard: &mut Vec<Test>, t: Test) {
    if !guard.contains(&t) {
        guard.push(t);
    }
}

/// Guarded instructions reached from every source of `g`.
pub fn flatten(g: &PropGraph, prog: &Program) -> Result<Flat, CompileError> {
    let always_on = constant_flags(g, prog);
    let mut out = Vec::new();
    for s in g.sources() {
        let Vertex::Source(src) = g.vertex_at(s).clone() else { unreachable!() };
        let mut f = Flattener {
            g,
            prog,
            always_on: always_on.clone(),
            out: Vec::new(),
            seen: BTreeSet::new(),
            on_path: Vec::new(),
        };
        f.visit(s, Vec::new(), false)?;
        out.push((src, f.out));
    }
    Ok(out)
}

/// A flattened and ordered method body per source.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub methods: Vec<(Source, Vec<GuardedInstr>)>,
}

fn reads(gi: &GuardedInstr) -> (BTreeSet<Path>, BTreeSet<Path>) {
    let mut fields = BTreeSet::new();
    let mut flags = BTreeSet::new();
    let tests = gi.guard.iter().chain(match &gi.instr {
        Instr::SetField { commit, .. } => commit.as_slice(),
        _ => &[],
    });
    for t in tests {
        match t {
            Test::Flag(p) => {
                flags.insert(p.clone());
            }
            Test::Cond(e) => fields.extend(e.free_vars()),
            Test::WasActive(_) | Test::WasInactive(_) => {}
        }
    }
    match &gi.instr {
        Instr::SetField { expr: e, .. } | Instr::EvalGuardOnly(e) => fields.extend(e.free_vars()),
        _ => {}
    }
    (fields, flags)
}

fn writes(gi: &GuardedInstr) -> (Option<&Path>, Option<&Path>) {
    match &gi.instr {
        Instr::SetField { target, .. } | Instr::SetParam { target } => (Some(target), None),
        Instr::SetFlag { target, .. } => (None, Some(target)),
        _ => (None, None),
    }
}

/// Orders each method: writers before readers, then document order.
pub fn schedule(flat: Flat, prog: &Program) -> Result<Schedule, CompileError> {
    schedule_with(flat, prog, false)
}

pub(crate) fn schedule_with(flat: Flat, prog: &Program, ignore_data: bool) -> Result<Schedule, CompileError> {
    let mut methods = Vec::new();
    for (src, instrs) in flat {
        let n = instrs.len();
        let mut field_writers: HashMap<&Path, Vec<usize>> = HashMap::new();
        let mut flag_writers: HashMap<&Path, Vec<usize>> = HashMap::new();
        for (i, gi) in instrs.iter().enumerate() {
            match writes(gi) {
                (Some(p), _) => field_writers.entry(p).or_default().push(i),
                (_, Some(p)) => flag_writers.entry(p).or_default().push(i),
                _ => {}
            }
        }
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut indeg = vec![0usize; n];
        for (j, gi) in instrs.iter().enumerate() {
            let (fields, flags) = reads(gi);
            let mut deps = BTreeSet::new();
            if !ignore_data {
                for p in &fields {
                    deps.extend(field_writers.get(p).into_iter().flatten().copied());
                }
            }
            for p in &flags {
                deps.extend(flag_writers.get(p).into_iter().flatten().copied());
            }
            deps.remove(&j);
            for i in deps {
                if succ[i].insert(j) {
                    indeg[j] += 1;
                }
            }
        }
        let key = |i: usize| (prog.id_of(&instrs[i].origin).unwrap_or(usize::MAX), i);
        let mut ready: BinaryHeap<Reverse<(usize, usize)>> =
            (0..n).filter(|&i| indeg[i] == 0).map(|i| Reverse(key(i))).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, i))) = ready.pop() {
            order.push(i);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    ready.push(Reverse(key(j)));
                }
            }
        }
        if order.len() < n {
            let stuck: Vec<String> =
                (0..n).filter(|&i| indeg[i] > 0).map(|i| text::instr_to_string(&instrs[i])).collect();
            return Err(CompileError::ScheduleCycle { event: src, instrs: stuck });
        }
        let mut slots: Vec<Option<GuardedInstr>> = instrs.into_iter().map(Some).collect();
        let body = order.into_iter().map(|i| slots[i].take().expect("each index once")).collect();
        methods.push((src, body));
    }
    Ok(Schedule { methods })
}

fn last_reads(e: &Expr, out: &mut BTreeSet<Path>) {
    out.extend(e.last_vars());
}

/// Packages a schedule with fields, flags and snapshots.
pub fn gen_ir(prog: &Program, sched: Schedule) -> IrObject {
    let mut fields = Vec::new();
    let mut flag_init: BTreeMap<Path, bool> = BTreeMap::new();
    let initial = init_activation(prog);
    for node in prog.nodes() {
        match &node.kind {
            NodeKind::Property { ty, init } => {
                fields.push(Field { path: node.path.clone(), ty: *ty, init: init.clone() })
            }
            NodeKind::Binding { .. } | NodeKind::Component { .. } => {
                flag_init.insert(node.path.clone(), initial.contains(&node.path));
            }
            _ => {}
        }
    }
    let flags = prog
        .nodes()
        .iter()
        .filter(|n| n.init_activation().is_some())
        .map(|n| (n.path.clone(), flag_init[&n.path]))
        .collect();
    let methods = sched
        .methods
        .into_iter()
        .map(|(event, body)| {
            let mut snap = BTreeSet::new();
            let mut was = BTreeSet::new();
            for gi in &body {
                for t in &gi.guard {
                    match t {
                        Test::Cond(e) => last_reads(e, &mut snap),
                        Test::WasActive(p) | Test::WasInactive(p) => {
                            was.insert(p.clone());
                        }
                        Test::Flag(_) => {}
                    }
                }
                match &gi.instr {
                    Instr::SetField { expr: e, .. } | Instr::EvalGuardOnly(e) => last_reads(e, &mut snap),
                    _ => {}
                }
            }
            Method {
                event,
                snapshot_fields: snap.into_iter().collect(),
                snapshot_flags: was.into_iter().collect(),
                body,
            }
        })
        .collect();
    IrObject { name: prog.root_path().to_string(), fields, flags, methods }
}
