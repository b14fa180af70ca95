//! Reference interpreter: initialization, expression evaluation and the
//! reaction rule, computed as a fixed point over the event set.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ast::{Event, Expr, InitActivation, Lhs, Path, Rhs, Value};
use crate::ops::{self, EvalError};
use crate::program::{NodeId, NodeKind, Program};

pub type Environment = BTreeMap<Path, Value>;
pub type Activation = BTreeSet<Path>;
pub type EventSet = BTreeSet<Event>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReactState {
    pub env: Environment,
    pub activ: Activation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReactionOutcome {
    pub state: ReactState,
    /// The full event set of the reaction.
    pub events: EventSet,
    /// Triggers of spikes, the externally visible part of `events`.
    pub emitted: EventSet,
    /// Saturation rounds before the fixed point was reached.
    pub iterations: usize,
    /// Whether the settle phase was needed to satisfy the reaction equation.
    pub settled: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("initializing `{path}`: {error}")]
pub struct InitError {
    pub path: Path,
    pub error: EvalError,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReactError {
    #[error("inadmissible external event `{event}`: {reason}")]
    Inadmissible { event: Event, reason: String },
    #[error("conflicting assignments to `{0}`")]
    ConflictingAssign(Path),
    #[error("`{0}` is both activated and deactivated")]
    ConflictingActivation(Path),
    #[error("unsafe reaction at `{path}`: {cause}")]
    Unsafe { path: Path, cause: String },
    #[error("no causal event set: `{0}` breaks the reaction equation")]
    NonCausal(Event),
    #[error("event saturation exceeded {0} rounds")]
    Divergent(usize),
}

impl ReactError {
    /// Stable tag used in state dumps.
    pub fn kind(&self) -> &'static str {
        match self {
            ReactError::Inadmissible { .. } => "inadmissible",
            ReactError::ConflictingAssign(_) => "conflicting-assign",
            ReactError::ConflictingActivation(_) => "conflicting-activation",
            ReactError::Unsafe { .. } => "unsafe",
            ReactError::NonCausal(_) => "non-causal",
            ReactError::Divergent(_) => "divergent",
        }
    }
}

/// `last` paths read `last_env`, plain paths read `env`.
pub fn eval_expr(last_env: &Environment, env: &Environment, e: &Expr) -> Result<Value, EvalError> {
    match e {
        Expr::Const(v) => Ok(v.clone()),
        Expr::Var(p) => env.get(p).cloned().ok_or_else(|| EvalError::Unbound(p.to_string())),
        Expr::Last(p) => last_env.get(p).cloned().ok_or_else(|| EvalError::Unbound(format!("last {}", p))),
        Expr::Unary(op, a) => ops::apply_unary(*op, &eval_expr(last_env, env, a)?),
        Expr::Binary(op, l, r) => {
            let lv = eval_expr(last_env, env, l)?;
            let rv = eval_expr(last_env, env, r)?;
            ops::apply_binary(*op, &lv, &rv)
        }
    }
}

pub fn init_activation(prog: &Program) -> Activation {
    let mut out = Activation::new();
    let mut stack = vec![0];
    while let Some(id) = stack.pop() {
        let node = prog.node(id);
        if node.init_activation() == Some(InitActivation::Active) {
            out.insert(node.path.clone());
            if node.is_component() {
                stack.extend(node.children.iter().copied());
            }
        }
    }
    out
}

/// Sequential fold in document order, through inactive components too.
pub fn init_env(prog: &Program) -> Result<Environment, InitError> {
    let empty = Environment::new();
    let mut env = Environment::new();
    for node in prog.nodes() {
        if let NodeKind::Property { init, .. } = &node.kind {
            let v = eval_expr(&empty, &env, init).map_err(|error| InitError { path: node.path.clone(), error })?;
            env.insert(node.path.clone(), v);
        }
    }
    Ok(env)
}

pub fn init(prog: &Program) -> Result<ReactState, InitError> {
    Ok(ReactState { env: init_env(prog)?, activ: init_activation(prog) })
}

/// Applies the events of `t` to `(env, activ)`.
pub fn update_state(env: &Environment, activ: &Activation, t: &EventSet) -> Result<ReactState, ReactError> {
    let mut assigned: BTreeMap<&Path, &Value> = BTreeMap::new();
    let mut env2 = env.clone();
    let mut activ2 = activ.clone();
    for ev in t {
        match ev {
            Event::Assign(v, p) => {
                if let Some(prev) = assigned.insert(p, v) {
                    if prev != v {
                        return Err(ReactError::ConflictingAssign(p.clone()));
                    }
                }
                env2.insert(p.clone(), v.clone());
            }
            Event::Activate(p) => {
                if t.contains(&Event::Deactivate(p.clone())) {
                    return Err(ReactError::ConflictingActivation(p.clone()));
                }
                activ2.insert(p.clone());
            }
            Event::Deactivate(p) => {
                activ2.remove(p);
            }
            Event::Trigger(_) => {}
        }
    }
    Ok(ReactState { env: env2, activ: activ2 })
}

fn parent_active(activ: &Activation, p: &Path) -> bool {
    match p.parent() {
        Some(parent) if !parent.is_empty() => activ.contains(&parent),
        _ => true,
    }
}

/// One program, with the free variables of each condition cached.
pub struct Interpreter<'p> {
    prog: &'p Program,
    cond_vars: BTreeMap<NodeId, Vec<Path>>,
    bound: usize,
}

impl<'p> Interpreter<'p> {
    pub fn new(prog: &'p Program) -> Self {
        let mut cond_vars = BTreeMap::new();
        for (id, node) in prog.nodes().iter().enumerate() {
            if let NodeKind::Binding { lhs: Lhs::Cond(e), .. } = &node.kind {
                cond_vars.insert(id, e.free_vars().into_iter().collect());
            }
        }
        let bound = 3 * prog.permanent_paths().len() + prog.transient_paths().len() + prog.property_paths().len() + 1;
        Interpreter { prog, cond_vars, bound }
    }

    pub fn program(&self) -> &'p Program {
        self.prog
    }

    /// Upper bound on saturation rounds.
    pub fn iteration_bound(&self) -> usize {
        self.bound
    }

    pub fn init(&self) -> Result<ReactState, InitError> {
        init(self.prog)
    }

    /// Every event derivable by one application of a propagation rule.
    pub fn derive_events(&self, pre: &ReactState, t: &EventSet, post: &ReactState) -> EventSet {
        let assigned: BTreeSet<&Path> = t
            .iter()
            .filter_map(|ev| match ev {
                Event::Assign(_, p) => Some(p),
                _ => None,
            })
            .collect();
        let mut out = EventSet::new();
        for (id, node) in self.prog.nodes().iter().enumerate() {
            match &node.kind {
                NodeKind::Binding { lhs, rhs, .. } => {
                    if !post.activ.contains(&node.path) || !self.lhs_fires(id, lhs, pre, t, post, &assigned) {
                        continue;
                    }
                    if let Some(ev) = rhs_event(rhs, &pre.activ, &post.activ) {
                        out.insert(ev);
                    }
                }
                NodeKind::Assignment { expr, target } => {
                    if parent_active(&post.activ, &node.path)
                        && parent_active(&post.activ, target)
                        && t.contains(&Event::Trigger(node.path.clone()))
                    {
                        if let Ok(v) = eval_expr(&pre.env, &post.env, expr) {
                            out.insert(Event::Assign(v, target.clone()));
                        }
                    }
                }
                NodeKind::Component { .. } => {
                    if t.contains(&Event::Activate(node.path.clone())) {
                        for c in self.prog.activation_closure(id) {
                            out.insert(Event::Activate(self.prog.node(c).path.clone()));
                        }
                    }
                    if t.contains(&Event::Deactivate(node.path.clone())) {
                        for c in self.prog.permanent_descendants(id) {
                            out.insert(Event::Deactivate(self.prog.node(c).path.clone()));
                        }
                    }
                }
                NodeKind::Property { .. } | NodeKind::Spike => {}
            }
        }
        out
    }

    fn lhs_fires(
        &self,
        id: NodeId,
        lhs: &Lhs,
        pre: &ReactState,
        t: &EventSet,
        post: &ReactState,
        assigned: &BTreeSet<&Path>,
    ) -> bool {
        match lhs {
            Lhs::TriggerOf(p) => t.contains(&Event::Trigger(p.clone())),
            Lhs::ActivateOf(p) => t.contains(&Event::Activate(p.clone())),
            Lhs::DeactivateOf(p) => t.contains(&Event::Deactivate(p.clone())),
            Lhs::ChangeOf(p) => assigned.contains(p),
            Lhs::Cond(e) => {
                self.cond_vars[&id].iter().any(|x| assigned.contains(x))
                    && eval_expr(&pre.env, &post.env, e) == Ok(Value::Bool(true))
            }
        }
    }

    /// Every evaluation the reaction depends on must be defined.
    pub fn check_safety(&self, pre: &ReactState, t: &EventSet, post: &ReactState) -> Result<(), ReactError> {
        let assigned: BTreeSet<&Path> = t
            .iter()
            .filter_map(|ev| match ev {
                Event::Assign(_, p) => Some(p),
                _ => None,
            })
            .collect();
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            let node = self.prog.node(id);
            match &node.kind {
                NodeKind::Component { .. } => {
                    if post.activ.contains(&node.path) {
                        stack.extend(node.children.iter().rev().copied());
                    }
                }
                NodeKind::Binding { lhs: Lhs::Cond(e), .. } => {
                    if !post.activ.contains(&node.path) || !self.cond_vars[&id].iter().any(|x| assigned.contains(x)) {
                        continue;
                    }
                    match eval_expr(&pre.env, &post.env, e) {
                        Ok(Value::Bool(_)) => {}
                        Ok(v) => {
                            return Err(ReactError::Unsafe {
                                path: node.path.clone(),
                                cause: format!("condition evaluated to non-boolean {}", v),
                            })
                        }
                        Err(err) => return Err(ReactError::Unsafe { path: node.path.clone(), cause: err.to_string() }),
                    }
                }
                NodeKind::Assignment { expr, .. } if t.contains(&Event::Trigger(node.path.clone())) => {
                    if let Err(err) = eval_expr(&pre.env, &post.env, expr) {
                        return Err(ReactError::Unsafe { path: node.path.clone(), cause: err.to_string() });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn check_admissible(&self, s: &ReactState, ev: &Event) -> Result<(), ReactError> {
        let reject = |reason: &str| Err(ReactError::Inadmissible { event: ev.clone(), reason: reason.to_string() });
        match ev {
            Event::Trigger(p) if self.prog.is_spike(p) => Ok(()),
            Event::Trigger(_) => reject("only spikes can be triggered from outside"),
            Event::Assign(v, p) => match self.prog.property_ty(p) {
                None => reject("not a property"),
                Some(ty) if ty != v.ty() => reject("value has the wrong type"),
                Some(_) if !parent_active(&s.activ, p) => reject("the property's component is inactive"),
                Some(_) => Ok(()),
            },
            Event::Activate(_) | Event::Deactivate(_) => reject("activation events are internal"),
        }
    }

    /// Reacts to one external event.
    ///
    /// The event set is saturated from `{ev0}`, then checked against the
    /// reaction equation under the final state. If the saturated set
    /// overshoots, the equation is iterated from the derived set until it
    /// reproduces itself; failing that, the reaction is non-causal.
    pub fn react(&self, s: &ReactState, ev0: &Event) -> Result<ReactionOutcome, ReactError> {
        self.check_admissible(s, ev0)?;
        let mut t = EventSet::from([ev0.clone()]);
        let mut iterations = 0;
        // Assign events carry the value of the latest round only, so a
        // value computed from a not yet updated environment is dropped.
        let saturated = loop {
            iterations += 1;
            if iterations > self.bound {
                return Err(ReactError::Divergent(self.bound));
            }
            let post = match update_state(&s.env, &s.activ, &t) {
                Ok(post) => post,
                Err(ReactError::ConflictingAssign(_)) => break None,
                Err(e) => return Err(e),
            };
            let new = self.derive_events(s, &t, &post);
            let mut next: EventSet = t.iter().filter(|ev| !matches!(ev, Event::Assign(..))).cloned().collect();
            next.insert(ev0.clone());
            next.extend(new);
            if next == t {
                break Some(post);
            }
            t = next;
        };
        // A conflict between rounds restarts from `{ev0}` in the settle loop.
        let (mut post, mut derived) = match saturated {
            Some(post) => {
                let d = self.closure_of(s, ev0, &t, &post);
                (post, d)
            }
            None => {
                t = EventSet::new();
                (update_state(&s.env, &s.activ, &EventSet::new())?, EventSet::from([ev0.clone()]))
            }
        };
        let settled = derived != t;
        if settled {
            let witness = t.symmetric_difference(&derived).next().cloned().unwrap();
            let mut rounds = 0;
            loop {
                rounds += 1;
                if rounds > self.bound {
                    return Err(ReactError::NonCausal(witness));
                }
                let p = update_state(&s.env, &s.activ, &derived)?;
                let next = self.closure_of(s, ev0, &derived, &p);
                if next == derived {
                    t = derived;
                    post = p;
                    break;
                }
                derived = next;
            }
        }
        self.check_safety(s, &t, &post)?;
        let emitted = t.iter().filter(|ev| matches!(ev, Event::Trigger(p) if self.prog.is_spike(p))).cloned().collect();
        Ok(ReactionOutcome { state: post, events: t, emitted, iterations, settled })
    }

    /// `{ev0} ∪ derive(t)` under `post`.
    fn closure_of(&self, pre: &ReactState, ev0: &Event, t: &EventSet, post: &ReactState) -> EventSet {
        let mut d = self.derive_events(pre, t, post);
        d.insert(ev0.clone());
        d
    }

    /// Folds `react` over a trace, stopping at the first failure.
    pub fn run_trace(&self, events: &[Event]) -> Result<TraceRun, InitError> {
        let init = self.init()?;
        let mut state = init.clone();
        let mut steps = Vec::new();
        let mut failure = None;
        for (i, ev) in events.iter().enumerate() {
            match self.react(&state, ev) {
                Ok(out) => {
                    state = out.state.clone();
                    steps.push(out);
                }
                Err(e) => {
                    failure = Some((i, e));
                    break;
                }
            }
        }
        Ok(TraceRun { init, steps, failure })
    }
}

fn rhs_event(rhs: &Rhs, activ: &Activation, activ2: &Activation) -> Option<Event> {
    let target = rhs.target();
    if !parent_active(activ2, target) {
        return None;
    }
    match rhs {
        Rhs::DoTrigger(p) => Some(Event::Trigger(p.clone())),
        Rhs::DoActivate(p) => (!activ.contains(p)).then(|| Event::Activate(p.clone())),
        Rhs::DoDeactivate(p) => activ.contains(p).then(|| Event::Deactivate(p.clone())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRun {
    pub init: ReactState,
    pub steps: Vec<ReactionOutcome>,
    /// Index and cause of the reaction that aborted the trace.
    pub failure: Option<(usize, ReactError)>,
}

impl TraceRun {
    pub fn final_state(&self) -> &ReactState {
        self.steps.last().map(|s| &s.state).unwrap_or(&self.init)
    }
}
