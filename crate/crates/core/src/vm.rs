//! Executes compiled objects over event traces.
//!
//! The VM walks a method's instruction list once, in order. Its dumps use
//! the interpreter's format so the two can be compared byte for byte.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::analysis::Source;
use crate::ast::{Event, Path, Ty, Value};
use crate::compiler::{GuardedInstr, Instr, IrObject, Test};
use crate::ops::EvalError;
use crate::semantics::{eval_expr, Environment, EventSet, ReactState};
use crate::trace::Dump;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VmState {
    pub fields: BTreeMap<Path, Value>,
    pub flags: BTreeMap<Path, bool>,
}

impl VmState {
    pub fn to_react_state(&self) -> ReactState {
        ReactState {
            env: self.fields.clone(),
            activ: self.flags.iter().filter(|(_, &on)| on).map(|(p, _)| p.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VmError {
    #[error("reset of `{path}`: {error}")]
    Init { path: Path, error: EvalError },
    #[error("inadmissible external event `{event}`: {reason}")]
    Inadmissible { event: Event, reason: &'static str },
    #[error("evaluation failed in an instruction from `{origin}`: {error}")]
    Unsafe { origin: Path, error: EvalError },
    #[error("conflicting writes to `{0}`")]
    ConflictingAssign(Path),
    #[error("`{0}` is both switched on and off")]
    ConflictingActivation(Path),
}

impl VmError {
    /// Same tags as the interpreter's errors.
    pub fn kind(&self) -> &'static str {
        match self {
            VmError::Init { .. } => "init",
            VmError::Inadmissible { .. } => "inadmissible",
            VmError::Unsafe { .. } => "unsafe",
            VmError::ConflictingAssign(_) => "conflicting-assign",
            VmError::ConflictingActivation(_) => "conflicting-activation",
        }
    }
}

pub struct Vm<'ir> {
    ir: &'ir IrObject,
    methods: HashMap<&'ir Source, usize>,
    field_ty: HashMap<&'ir Path, Ty>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VmRun {
    pub init: VmState,
    /// State and emitted triggers after each successful reaction.
    pub steps: Vec<(VmState, EventSet)>,
    pub failure: Option<(usize, VmError)>,
}

struct Frame<'a> {
    fields: Environment,
    flags: BTreeMap<Path, bool>,
    last: Environment,
    was: HashMap<&'a Path, bool>,
    written: HashMap<&'a Path, Value>,
    flipped: HashMap<&'a Path, bool>,
    emitted: EventSet,
}

impl<'ir> Vm<'ir> {
    pub fn new(ir: &'ir IrObject) -> Self {
        Vm {
            ir,
            methods: ir.methods.iter().enumerate().map(|(i, m)| (&m.event, i)).collect(),
            field_ty: ir.fields.iter().map(|f| (&f.path, f.ty)).collect(),
        }
    }

    pub fn reset(&self) -> Result<VmState, VmError> {
        let empty = Environment::new();
        let mut fields = Environment::new();
        for f in &self.ir.fields {
            let v =
                eval_expr(&empty, &fields, &f.init).map_err(|error| VmError::Init { path: f.path.clone(), error })?;
            fields.insert(f.path.clone(), v);
        }
        let flags = self.ir.flags.iter().cloned().collect();
        Ok(VmState { fields, flags })
    }

    fn admit(&self, st: &VmState, ev: &Event) -> Result<(usize, Option<Value>), VmError> {
        let reject = |reason| VmError::Inadmissible { event: ev.clone(), reason };
        match ev {
            Event::Trigger(p) => {
                let m = self.methods.get(&Source::Trigger(p.clone())).ok_or_else(|| reject("not a spike"))?;
                Ok((*m, None))
            }
            Event::Assign(v, p) => {
                let m = self.methods.get(&Source::Assign(p.clone())).ok_or_else(|| reject("not a property"))?;
                if self.field_ty.get(p) != Some(&v.ty()) {
                    return Err(reject("value has the wrong type"));
                }
                let parent_on = p.parent().is_none_or(|q| q.is_empty() || st.flags.get(&q) == Some(&true));
                if !parent_on {
                    return Err(reject("the property's component is inactive"));
                }
                Ok((*m, Some(v.clone())))
            }
            Event::Activate(_) | Event::Deactivate(_) => Err(reject("activation events are internal")),
        }
    }

    pub fn react(&self, st: &VmState, ev: &Event) -> Result<(VmState, EventSet), VmError> {
        let (mi, arg) = self.admit(st, ev)?;
        let m = &self.ir.methods[mi];
        let mut fr = Frame {
            last: m.snapshot_fields.iter().map(|p| (p.clone(), st.fields[p].clone())).collect(),
            was: m.snapshot_flags.iter().map(|p| (p, st.flags[p])).collect(),
            fields: st.fields.clone(),
            flags: st.flags.clone(),
            written: HashMap::new(),
            flipped: HashMap::new(),
            emitted: EventSet::new(),
        };
        if let Event::Trigger(_) = ev {
            fr.emitted.insert(ev.clone());
        }
        for gi in &m.body {
            if self.holds(&fr, &gi.guard, gi)? {
                self.exec(&mut fr, gi, arg.as_ref())?;
            }
        }
        Ok((VmState { fields: fr.fields, flags: fr.flags }, fr.emitted))
    }

    fn holds(&self, fr: &Frame, guard: &[Test], gi: &GuardedInstr) -> Result<bool, VmError> {
        for t in guard {
            let ok = match t {
                Test::Flag(p) => fr.flags[p],
                Test::WasActive(p) => fr.was[p],
                Test::WasInactive(p) => !fr.was[p],
                Test::Cond(e) => match eval_expr(&fr.last, &fr.fields, e) {
                    Ok(Value::Bool(b)) => b,
                    Ok(_) => unreachable!("conditions are typed Bool"),
                    Err(error) => return Err(VmError::Unsafe { origin: gi.origin.clone(), error }),
                },
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn exec<'a>(&self, fr: &mut Frame<'a>, gi: &'a GuardedInstr, arg: Option<&Value>) -> Result<(), VmError> {
        let unsafe_at = |error| VmError::Unsafe { origin: gi.origin.clone(), error };
        match &gi.instr {
            Instr::SetField { target, expr, commit } => {
                let v = eval_expr(&fr.last, &fr.fields, expr).map_err(unsafe_at)?;
                if self.holds(fr, commit, gi)? {
                    write_field(fr, target, v)?;
                }
            }
            Instr::SetParam { target } => {
                write_field(fr, target, arg.expect("assign methods get an argument").clone())?;
            }
            Instr::SetFlag { target, on } => {
                if fr.flipped.insert(target, *on).is_some_and(|prev| prev != *on) {
                    return Err(VmError::ConflictingActivation(target.clone()));
                }
                fr.flags.insert(target.clone(), *on);
            }
            Instr::EmitTrigger(p) => {
                fr.emitted.insert(Event::Trigger(p.clone()));
            }
            Instr::EvalGuardOnly(e) => {
                eval_expr(&fr.last, &fr.fields, e).map_err(unsafe_at)?;
            }
        }
        Ok(())
    }

    pub fn run_trace(&self, events: &[Event]) -> Result<VmRun, VmError> {
        let init = self.reset()?;
        let mut state = init.clone();
        let mut steps = Vec::new();
        let mut failure = None;
        for (i, ev) in events.iter().enumerate() {
            match self.react(&state, ev) {
                Ok((next, emitted)) => {
                    state = next.clone();
                    steps.push((next, emitted));
                }
                Err(e) => {
                    failure = Some((i, e));
                    break;
                }
            }
        }
        Ok(VmRun { init, steps, failure })
    }
}

fn write_field<'a>(fr: &mut Frame<'a>, target: &'a Path, v: Value) -> Result<(), VmError> {
    if let Some(prev) = fr.written.get(target) {
        if *prev != v {
            return Err(VmError::ConflictingAssign(target.clone()));
        }
    }
    fr.written.insert(target, v.clone());
    fr.fields.insert(target.clone(), v);
    Ok(())
}

/// State dump of a VM run over `events`, in the interpreter's format.
pub fn vm_dump(ir: &IrObject, events: &[Event]) -> String {
    let mut d = Dump::new();
    match Vm::new(ir).run_trace(events) {
        Err(_) => d.init_error(),
        Ok(run) => {
            d.init(&run.init.to_react_state());
            for (i, (st, emitted)) in run.steps.iter().enumerate() {
                d.reaction(i, &events[i], &st.to_react_state(), emitted);
            }
            if let Some((i, e)) = &run.failure {
                d.failure(*i, &events[*i], e.kind());
            }
        }
    }
    d.finish()
}
