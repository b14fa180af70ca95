//! Interpreter against VM on one (program, trace) pair.

use std::collections::BTreeSet;

use crate::analysis::{analyze, AnalysisOptions};
use crate::ast::{Event, Path, Process};
use crate::compiler::{CompileError, IrObject};
use crate::print::core_to_string;
use crate::program::Program;
use crate::semantics::{Interpreter, ReactState, TraceRun};
use crate::trace::{dump_run, interp_dump, render_trace};
use crate::vm::vm_dump;

/// How a program is turned into an object; swapped out by mutation tests.
pub type Compiler = fn(&Program) -> Result<IrObject, CompileError>;

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    /// Core text of the program.
    pub program: String,
    pub trace: Vec<Event>,
    pub reason: String,
    pub interp: String,
    pub vm: String,
}

impl Counterexample {
    pub fn report(&self) -> String {
        let mut out =
            format!("reason: {}\n--- program\n{}--- trace\n{}", self.reason, self.program, render_trace(&self.trace));
        if self.interp != self.vm {
            out.push_str("--- first differing dump lines\n");
            let (a, b): (Vec<_>, Vec<_>) = (self.interp.lines().collect(), self.vm.lines().collect());
            let i = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
            out.push_str(&format!(
                "interp: {}\nvm:     {}\n",
                a.get(i).unwrap_or(&"<end>"),
                b.get(i).unwrap_or(&"<end>")
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    Fail(Box<Counterexample>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Interpreter-side invariants over one run. Returns the first violation.
pub fn check_invariants(prog: &Program, run: &TraceRun, events: &[Event]) -> Result<(), String> {
    let interp = Interpreter::new(prog);
    let keys: BTreeSet<&Path> = run.init.env.keys().collect();
    let permanents: BTreeSet<Path> = prog.permanent_paths().into_iter().collect();
    let mut pre: &ReactState = &run.init;
    for (i, step) in run.steps.iter().enumerate() {
        let post = &step.state;
        let at = |what: String| format!("reaction {}: {}", i, what);
        if post.env.keys().collect::<BTreeSet<_>>() != keys {
            return Err(at("environment keys changed".into()));
        }
        if let Some(p) = post.activ.iter().find(|p| !permanents.contains(*p)) {
            return Err(at(format!("`{}` is active but not permanent", p)));
        }
        if let Some(p) =
            post.activ.iter().find(|p| p.parent().is_some_and(|q| !q.is_empty() && !post.activ.contains(&q)))
        {
            return Err(at(format!("`{}` is active under an inactive parent", p)));
        }
        for ev in &step.events {
            match ev {
                Event::Activate(p) if pre.activ.contains(p) => {
                    return Err(at(format!("activation of already active `{}`", p)));
                }
                Event::Deactivate(p) if !pre.activ.contains(p) => {
                    let cascaded = step.events.iter().any(|e| matches!(e, Event::Deactivate(q) if q.is_ancestor_of(p)));
                    if !cascaded {
                        return Err(at(format!("deactivation of already inactive `{}`", p)));
                    }
                }
                _ => {}
            }
        }
        let mut expect = interp.derive_events(pre, &step.events, post);
        expect.insert(events[i].clone());
        if expect != step.events {
            return Err(at("event set is not a fixed point of the reaction".into()));
        }
        pre = post;
    }
    Ok(())
}

/// Runs both sides and compares their dumps.
pub fn diff_run_with(prog: &Program, trace: &[Event], compile: Compiler) -> Verdict {
    let program = core_to_string(prog.root());
    let fail = |reason: String, interp: String, vm: String| {
        Verdict::Fail(Box::new(Counterexample { program: program.clone(), trace: trace.to_vec(), reason, interp, vm }))
    };
    let interp_text = match Interpreter::new(prog).run_trace(trace) {
        Ok(run) => {
            if let Err(why) = check_invariants(prog, &run, trace) {
                return fail(format!("invariant: {}", why), dump_run(&run, trace), String::new());
            }
            dump_run(&run, trace)
        }
        Err(_) => interp_dump(prog, trace),
    };
    if interp_dump(prog, trace) != interp_text {
        return fail("interpreter is not deterministic".into(), interp_text, String::new());
    }
    let ir = match compile(prog) {
        Ok(ir) => ir,
        Err(e) => return fail(format!("compile: {}", e), interp_text, String::new()),
    };
    let vm_text = vm_dump(&ir, trace);
    if vm_dump(&ir, trace) != vm_text {
        return fail("vm is not deterministic".into(), interp_text, vm_text);
    }
    if vm_text != interp_text {
        return fail("dumps differ".into(), interp_text, vm_text);
    }
    Verdict::Pass
}

pub fn diff_run(prog: &Program, trace: &[Event]) -> Verdict {
    diff_run_with(prog, trace, crate::compiler::compile)
}

fn fails(root: &Process, trace: &[Event], compile: Compiler) -> bool {
    let Ok(prog) = Program::new(root.clone()) else { return false };
    if analyze(&prog, AnalysisOptions::default()).has_errors() {
        return false;
    }
    !diff_run_with(&prog, trace, compile).is_pass()
}

fn without(root: &Process, victim: &Path) -> Option<Process> {
    fn go(p: &Process, here: &Path, victim: &Path) -> Process {
        match p {
            Process::Component { ia, name, children } => Process::Component {
                ia: *ia,
                name: name.clone(),
                children: children
                    .iter()
                    .filter(|c| here.child(c.name()) != *victim)
                    .map(|c| go(c, &here.child(c.name()), victim))
                    .collect(),
            },
            other => other.clone(),
        }
    }
    (victim.len() > 1).then(|| go(root, &Path::root_anchor().child(root.name()), victim))
}

/// Shrinks a failing pair: shortest failing trace prefix, then single
/// events, then processes, each removal kept while the pair still fails.
pub fn shrink(root: &Process, trace: &[Event], compile: Compiler) -> (Process, Vec<Event>) {
    let mut root = root.clone();
    let mut trace = trace.to_vec();
    if let Some(n) = (0..=trace.len()).find(|&n| fails(&root, &trace[..n], compile)) {
        trace.truncate(n);
    }
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i < trace.len() {
            let mut t = trace.clone();
            t.remove(i);
            if fails(&root, &t, compile) {
                trace = t;
                changed = true;
            } else {
                i += 1;
            }
        }
        let paths: Vec<Path> = root.walk().into_iter().map(|(p, _)| p).collect();
        for p in paths {
            if let Some(smaller) = without(&root, &p) {
                if fails(&smaller, &trace, compile) {
                    root = smaller;
                    changed = true;
                    break;
                }
            }
        }
    }
    (root, trace)
}
