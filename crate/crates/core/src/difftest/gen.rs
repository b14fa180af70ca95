//! Random programs and traces.
//!
//! Programs are built directly as core trees with absolute paths, then
//! kept only if they pass every analysis check and compile.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::analysis::{analyze, AnalysisOptions};
use crate::ast::{BinOp, Event, Expr, InitActivation, Lhs, Path, Process, Rhs, Ty, UnOp, Value};
use crate::compiler::{compile_analyzed, IrObject};
use crate::program::{NodeKind, Program};
use crate::semantics::init_activation;

/// Relative weights of generated constructs.
#[derive(Clone, Debug, PartialEq)]
pub struct Weights {
    pub lhs_trigger: f64,
    pub lhs_change: f64,
    pub lhs_cond: f64,
    pub lhs_activate: f64,
    pub lhs_deactivate: f64,
    pub rhs_trigger: f64,
    pub rhs_activate: f64,
    pub rhs_deactivate: f64,
    /// Chance that a component starts inactive.
    pub inactive_component: f64,
    /// Chance that a binding starts inactive.
    pub inactive_binding: f64,
    /// Chance of `/` or `%` at an integer operator node.
    pub division: f64,
    /// Chance that an integer read goes through `last`.
    pub last_read: f64,
}

impl Default for Weights {
    fn default() -> Self {
        Weights {
            lhs_trigger: 0.45,
            lhs_change: 0.15,
            lhs_cond: 0.25,
            lhs_activate: 0.08,
            lhs_deactivate: 0.07,
            rhs_trigger: 0.7,
            rhs_activate: 0.15,
            rhs_deactivate: 0.15,
            inactive_component: 0.2,
            inactive_binding: 0.1,
            division: 0.1,
            last_read: 0.3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_depth: usize,
    pub components: usize,
    pub properties: usize,
    pub spikes: usize,
    pub bindings: usize,
    pub assignments: usize,
    /// Integer literals lie in `-int_bound..=int_bound`.
    pub int_bound: i64,
    pub expr_depth: usize,
    pub trace_len: usize,
    pub max_retries: usize,
    pub weights: Weights,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_depth: 2,
            components: 3,
            properties: 6,
            spikes: 4,
            bindings: 8,
            assignments: 4,
            int_bound: 4,
            expr_depth: 2,
            trace_len: 6,
            max_retries: 2000,
            weights: Weights::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("no acceptable program after {attempts} attempts")]
pub struct GenExhausted {
    pub attempts: usize,
}

/// A generated program that passed analysis, with its compiled object.
#[derive(Clone, Debug)]
pub struct Generated {
    pub program: Program,
    pub ir: IrObject,
    /// Candidates drawn, including this one.
    pub attempts: usize,
    /// Rejection codes of the discarded candidates.
    pub rejected: BTreeMap<&'static str, usize>,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Component(InitActivation),
    Property(Ty),
    Spike,
    Assignment,
    Binding,
}

struct Slot {
    name: String,
    path: Path,
    kind: Kind,
    children: Vec<usize>,
    depth: usize,
}

struct Builder<'a> {
    cfg: &'a GenConfig,
    slots: Vec<Slot>,
}

impl Builder<'_> {
    fn add(&mut self, parent: usize, name: String, kind: Kind) -> usize {
        let path = self.slots[parent].path.child(&name);
        let depth = self.slots[parent].depth + 1;
        self.slots.push(Slot { name, path, kind, children: Vec::new(), depth });
        let id = self.slots.len() - 1;
        self.slots[parent].children.push(id);
        id
    }

    fn of(&self, pred: impl Fn(Kind) -> bool) -> Vec<usize> {
        (0..self.slots.len()).filter(|&i| pred(self.slots[i].kind)).collect()
    }

    fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            out.push(i);
            stack.extend(self.slots[i].children.iter().rev());
        }
        out
    }
}

/// Which properties an expression may read.
struct Scope {
    now: BTreeMap<Ty, Vec<Path>>,
    last: BTreeMap<Ty, Vec<Path>>,
}

const DOUBLES: [f64; 5] = [0.0, 0.5, 1.5, -2.0, 3.25];
const STRINGS: [&str; 4] = ["", "a", "b", "ab"];

fn pick_weighted<R: Rng>(rng: &mut R, weights: &[f64]) -> usize {
    let total: f64 = weights.iter().sum();
    let mut x = rng.gen::<f64>() * total;
    for (i, w) in weights.iter().enumerate() {
        if x < *w {
            return i;
        }
        x -= w;
    }
    weights.len() - 1
}

struct ExprGen<'a, R> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
    scope: &'a Scope,
}

impl<R: Rng> ExprGen<'_, R> {
    fn constant(&mut self, ty: Ty) -> Expr {
        let b = self.cfg.int_bound;
        Expr::Const(match ty {
            Ty::Int => Value::Int(self.rng.gen_range(-b..=b)),
            Ty::Double => Value::Double(*DOUBLES.choose(self.rng).unwrap()),
            Ty::Bool => Value::Bool(self.rng.gen()),
            Ty::Str => Value::Str(STRINGS.choose(self.rng).unwrap().to_string()),
        })
    }

    fn read(&mut self, ty: Ty) -> Option<Expr> {
        let use_last = self.rng.gen_bool(self.cfg.weights.last_read);
        let (pool, wrap): (_, fn(Path) -> Expr) =
            if use_last { (self.scope.last.get(&ty), Expr::Last) } else { (self.scope.now.get(&ty), Expr::Var) };
        let p = pool.and_then(|v| v.choose(self.rng)).cloned()?;
        Some(wrap(p))
    }

    fn leaf(&mut self, ty: Ty) -> Expr {
        if self.rng.gen_bool(0.6) {
            if let Some(e) = self.read(ty) {
                return e;
            }
        }
        self.constant(ty)
    }

    fn expr(&mut self, ty: Ty, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.35) {
            return self.leaf(ty);
        }
        let d = depth - 1;
        match ty {
            Ty::Int => {
                if self.rng.gen_bool(0.1) {
                    return Expr::unary(UnOp::Neg, self.expr(Ty::Int, d));
                }
                let op = if self.rng.gen_bool(self.cfg.weights.division) {
                    *[BinOp::Div, BinOp::Mod].choose(self.rng).unwrap()
                } else {
                    *[BinOp::Add, BinOp::Sub, BinOp::Mul].choose(self.rng).unwrap()
                };
                Expr::binary(op, self.expr(Ty::Int, d), self.expr(Ty::Int, d))
            }
            Ty::Double => {
                if self.rng.gen_bool(0.1) {
                    return Expr::unary(UnOp::Neg, self.expr(Ty::Double, d));
                }
                let op = *[BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div].choose(self.rng).unwrap();
                Expr::binary(op, self.expr(Ty::Double, d), self.expr(Ty::Double, d))
            }
            Ty::Str => match self.rng.gen_range(0..3) {
                0 => Expr::binary(BinOp::Add, self.expr(Ty::Str, d), self.expr(Ty::Str, d)),
                _ => {
                    let inner = *[Ty::Int, Ty::Bool, Ty::Double].choose(self.rng).unwrap();
                    Expr::unary(UnOp::Str, self.expr(inner, d))
                }
            },
            Ty::Bool => match self.rng.gen_range(0..6) {
                0 => Expr::unary(UnOp::Not, self.expr(Ty::Bool, d)),
                1 => {
                    let op = *[BinOp::And, BinOp::Or].choose(self.rng).unwrap();
                    Expr::binary(op, self.expr(Ty::Bool, d), self.expr(Ty::Bool, d))
                }
                2 => {
                    let ty = *[Ty::Double, Ty::Str, Ty::Bool].choose(self.rng).unwrap();
                    let ops: &[BinOp] = if ty == Ty::Bool {
                        &[BinOp::Eq, BinOp::Ne]
                    } else {
                        &[BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Ge]
                    };
                    let op = *ops.choose(self.rng).unwrap();
                    Expr::binary(op, self.expr(ty, d), self.expr(ty, d))
                }
                _ => {
                    let op =
                        *[BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge].choose(self.rng).unwrap();
                    Expr::binary(op, self.expr(Ty::Int, d), self.expr(Ty::Int, d))
                }
            },
        }
    }

    /// A condition reading at least one property's current value.
    fn condition(&mut self) -> Option<Expr> {
        if let Some(q) = self.scope.now.get(&Ty::Int).and_then(|v| v.choose(self.rng)).cloned() {
            if self.rng.gen_bool(0.6) {
                let op = *[BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge].choose(self.rng).unwrap();
                let k = self.rng.gen_range(-self.cfg.int_bound..=self.cfg.int_bound);
                return Some(Expr::binary(op, Expr::Var(q), Expr::int(k)));
            }
        }
        for _ in 0..8 {
            let e = self.expr(Ty::Bool, self.cfg.expr_depth);
            if !e.free_vars().is_empty() {
                return Some(e);
            }
        }
        None
    }
}

fn random_ty<R: Rng>(rng: &mut R) -> Ty {
    [Ty::Int, Ty::Bool, Ty::Double, Ty::Str][pick_weighted(rng, &[0.5, 0.25, 0.1, 0.15])]
}

/// Draws one candidate program; it may fail analysis.
pub fn gen_candidate(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Process {
    let mut b = Builder {
        cfg,
        slots: vec![Slot {
            name: "root".into(),
            path: Path::root_anchor().child("root"),
            kind: Kind::Component(InitActivation::Active),
            children: Vec::new(),
            depth: 0,
        }],
    };
    for i in 0..cfg.components {
        let parents: Vec<usize> = b
            .of(|k| matches!(k, Kind::Component(_)))
            .into_iter()
            .filter(|&c| b.slots[c].depth < b.cfg.max_depth)
            .collect();
        let parent = *parents.choose(rng).unwrap();
        let ia = if rng.gen_bool(cfg.weights.inactive_component) {
            InitActivation::Inactive
        } else {
            InitActivation::Active
        };
        b.add(parent, format!("c{}", i), Kind::Component(ia));
    }
    let containers = b.of(|k| matches!(k, Kind::Component(_)));
    let place = |b: &mut Builder, rng: &mut ChaCha8Rng, name: String, kind: Kind, root_bias: f64| {
        let parent = if rng.gen_bool(root_bias) { 0 } else { *containers.choose(rng).unwrap() };
        b.add(parent, name, kind)
    };
    for i in 0..cfg.properties {
        let ty = random_ty(rng);
        place(&mut b, rng, format!("p{}", i), Kind::Property(ty), 0.4);
    }
    for i in 0..cfg.spikes {
        place(&mut b, rng, format!("s{}", i), Kind::Spike, 0.3);
    }
    for i in 0..cfg.assignments {
        place(&mut b, rng, format!("a{}", i), Kind::Assignment, 0.3);
    }
    for i in 0..cfg.bindings {
        place(&mut b, rng, format!("b{}", i), Kind::Binding, 0.3);
    }

    let order = b.preorder();
    let props: Vec<(Path, Ty)> = order
        .iter()
        .filter_map(|&i| match b.slots[i].kind {
            Kind::Property(ty) => Some((b.slots[i].path.clone(), ty)),
            _ => None,
        })
        .collect();
    let transients: Vec<Path> =
        b.of(|k| matches!(k, Kind::Spike | Kind::Assignment)).iter().map(|&i| b.slots[i].path.clone()).collect();
    let spikes: Vec<Path> = b.of(|k| k == Kind::Spike).iter().map(|&i| b.slots[i].path.clone()).collect();
    let assigns: Vec<Path> = b.of(|k| k == Kind::Assignment).iter().map(|&i| b.slots[i].path.clone()).collect();
    let components: Vec<Path> =
        b.of(|k| matches!(k, Kind::Component(_))).iter().skip(1).map(|&i| b.slots[i].path.clone()).collect();
    let bindings: Vec<Path> = b.of(|k| k == Kind::Binding).iter().map(|&i| b.slots[i].path.clone()).collect();
    let permanents: Vec<Path> = components.iter().chain(&bindings).cloned().collect();

    let all_scope = {
        let mut now: BTreeMap<Ty, Vec<Path>> = BTreeMap::new();
        for (p, ty) in &props {
            now.entry(*ty).or_default().push(p.clone());
        }
        Scope { last: now.clone(), now }
    };

    let mut procs: BTreeMap<usize, Process> = BTreeMap::new();
    let mut earlier: BTreeMap<Ty, Vec<Path>> = BTreeMap::new();
    for &i in &order {
        let slot = &b.slots[i];
        let p = match slot.kind {
            Kind::Component(_) => continue,
            Kind::Property(ty) => {
                let scope = Scope { now: earlier.clone(), last: BTreeMap::new() };
                let mut g = ExprGen { rng, cfg, scope: &scope };
                let init = if g.rng.gen_bool(0.7) { g.constant(ty) } else { g.expr(ty, 1) };
                earlier.entry(ty).or_default().push(slot.path.clone());
                Process::Property { name: slot.name.clone(), ty, init }
            }
            Kind::Spike => Process::Spike { name: slot.name.clone() },
            Kind::Assignment => {
                let (target, ty) = props.choose(rng).cloned().unwrap_or_else(|| {
                    // No property to write: degrade to a spike.
                    (Path::root_anchor(), Ty::Int)
                });
                if target.is_empty() {
                    Process::Spike { name: slot.name.clone() }
                } else {
                    // Reading the target's current value always cycles.
                    let mut scope = Scope { now: all_scope.now.clone(), last: all_scope.last.clone() };
                    for v in scope.now.values_mut() {
                        v.retain(|p| *p != target);
                    }
                    let mut g = ExprGen { rng, cfg, scope: &scope };
                    let expr = g.expr(ty, cfg.expr_depth);
                    Process::Assignment { name: slot.name.clone(), expr, target }
                }
            }
            Kind::Binding => {
                let w = &cfg.weights;
                let ia =
                    if rng.gen_bool(w.inactive_binding) { InitActivation::Inactive } else { InitActivation::Active };
                let lhs = loop {
                    let k = pick_weighted(
                        rng,
                        &[w.lhs_trigger, w.lhs_change, w.lhs_cond, w.lhs_activate, w.lhs_deactivate],
                    );
                    let lhs = match k {
                        0 => transients.choose(rng).cloned().map(Lhs::TriggerOf),
                        1 => props.choose(rng).map(|(p, _)| Lhs::ChangeOf(p.clone())),
                        2 => ExprGen { rng: &mut *rng, cfg, scope: &all_scope }.condition().map(Lhs::Cond),
                        3 => permanents.choose(rng).cloned().map(Lhs::ActivateOf),
                        _ => permanents.choose(rng).cloned().map(Lhs::DeactivateOf),
                    };
                    if let Some(l) = lhs {
                        break l;
                    }
                };
                let rhs = loop {
                    let k = pick_weighted(rng, &[w.rhs_trigger, w.rhs_activate, w.rhs_deactivate]);
                    let rhs = match k {
                        0 => {
                            let pool = if rng.gen_bool(0.6) && !assigns.is_empty() { &assigns } else { &spikes };
                            pool.choose(rng).cloned().map(Rhs::DoTrigger)
                        }
                        1 => permanents.choose(rng).cloned().map(Rhs::DoActivate),
                        _ => {
                            let pool = if rng.gen_bool(0.6) { &bindings } else { &components };
                            pool.choose(rng).cloned().map(Rhs::DoDeactivate)
                        }
                    };
                    if let Some(r) = rhs {
                        break r;
                    }
                };
                Process::Binding { name: slot.name.clone(), lhs, ia, rhs }
            }
        };
        procs.insert(i, p);
    }
    assemble(&b, 0, &mut procs)
}

fn assemble(b: &Builder, i: usize, procs: &mut BTreeMap<usize, Process>) -> Process {
    let slot = &b.slots[i];
    match slot.kind {
        Kind::Component(ia) => Process::Component {
            ia,
            name: slot.name.clone(),
            children: slot.children.iter().map(|&c| assemble(b, c, procs)).collect(),
        },
        _ => procs.remove(&i).expect("leaf generated"),
    }
}

/// Why a candidate was turned down: analysis error codes, or a stage name.
pub fn rejection(root: &Process) -> Result<(Program, IrObject), Vec<&'static str>> {
    let prog = Program::new(root.clone()).map_err(|_| vec!["invalid"])?;
    let analysis = analyze(&prog, AnalysisOptions::default());
    if analysis.has_errors() {
        let mut codes: Vec<&'static str> = analysis.errors().map(|d| d.code.as_str()).collect();
        codes.sort();
        codes.dedup();
        return Err(codes);
    }
    let ir = compile_analyzed(&prog, &analysis).map_err(|_| vec!["compile"])?;
    Ok((prog, ir))
}

/// Draws candidates until one passes analysis and compiles.
pub fn gen_program(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Result<Generated, GenExhausted> {
    let mut rejected = BTreeMap::new();
    for attempt in 1..=cfg.max_retries {
        let root = gen_candidate(rng, cfg);
        match rejection(&root) {
            Ok((program, ir)) => return Ok(Generated { program, ir, attempts: attempt, rejected }),
            Err(codes) => {
                for c in codes {
                    *rejected.entry(c).or_insert(0) += 1;
                }
            }
        }
    }
    Err(GenExhausted { attempts: cfg.max_retries })
}

/// Admissible-looking external events: spike triggers, and typed assigns
/// mostly into properties whose component starts active.
pub fn gen_trace(rng: &mut ChaCha8Rng, prog: &Program, cfg: &GenConfig) -> Vec<Event> {
    let spikes = prog.spike_paths();
    let initial = init_activation(prog);
    let mut live = Vec::new();
    let mut all = Vec::new();
    for n in prog.nodes() {
        if let NodeKind::Property { ty, .. } = &n.kind {
            all.push((n.path.clone(), *ty));
            if n.path.parent().is_some_and(|q| initial.contains(&q)) {
                live.push((n.path.clone(), *ty));
            }
        }
    }
    if spikes.is_empty() && all.is_empty() {
        return Vec::new();
    }
    let scope = Scope { now: BTreeMap::new(), last: BTreeMap::new() };
    let mut out = Vec::with_capacity(cfg.trace_len);
    for _ in 0..cfg.trace_len {
        let trigger = !spikes.is_empty() && (all.is_empty() || rng.gen_bool(0.6));
        if trigger {
            out.push(Event::Trigger(spikes.choose(rng).unwrap().clone()));
            continue;
        }
        let pool = if !live.is_empty() && rng.gen_bool(0.9) { &live } else { &all };
        let (p, ty) = pool.choose(rng).unwrap().clone();
        let Expr::Const(v) = (ExprGen { rng: &mut *rng, cfg, scope: &scope }).constant(ty) else { unreachable!() };
        out.push(Event::Assign(v, p));
    }
    out
}
