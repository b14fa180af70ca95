//! A pruned edge `a -> b` claims that `b`'s condition is false whenever
//! `a` has just written its literal. Checked on every reaction of the
//! counter scenario and of generated pairs.

use smalite::analysis::{analyze, AnalysisOptions, Vertex};
use smalite::ast::{Event, Expr, Lhs, Path, Value};
use smalite::difftest::{gen_program, gen_trace, pair_rng, GenConfig};
use smalite::program::{NodeKind, Program};
use smalite::semantics::{eval_expr, Interpreter};
use smalite::surface::elaborate_source;
use smalite::trace::parse_trace;

fn pruned_conditions(prog: &Program) -> Vec<(Path, Path, Expr)> {
    let a = analyze(prog, AnalysisOptions::default());
    a.pruned
        .iter()
        .filter_map(|(from, to)| {
            let (Vertex::Assignment(asg), Vertex::Binding(b)) = (from, to) else { return None };
            let node = prog.nodes().iter().find(|n| n.path == *b)?;
            match &node.kind {
                NodeKind::Binding { lhs: Lhs::Cond(e), .. } => Some((asg.clone(), b.clone(), e.clone())),
                _ => None,
            }
        })
        .collect()
}

/// Returns how many reactions exercised a pruned edge.
fn check(prog: &Program, trace: &[Event]) -> usize {
    let edges = pruned_conditions(prog);
    if edges.is_empty() {
        return 0;
    }
    let Ok(run) = Interpreter::new(prog).run_trace(trace) else { return 0 };
    let mut pre = &run.init;
    let mut exercised = 0;
    for step in &run.steps {
        for (asg, binding, cond) in &edges {
            if !step.events.contains(&Event::Trigger(asg.clone())) {
                continue;
            }
            exercised += 1;
            let v = eval_expr(&pre.env, &step.state.env, cond);
            assert_ne!(v, Ok(Value::Bool(true)), "{} fired while {} held", asg, binding);
        }
        pre = &step.state;
    }
    exercised
}

#[test]
fn counter_restart_never_satisfies_pruned_conditions() {
    let prog = elaborate_source(include_str!("../corpus/counter.smala")).unwrap();
    let trace = parse_trace(include_str!("../corpus/counter.evt")).unwrap();
    assert_eq!(pruned_conditions(&prog).len(), 2);
    assert_eq!(check(&prog, &trace), 2);
}

#[test]
fn generated_pairs_never_satisfy_pruned_conditions() {
    let cfg = GenConfig::default();
    let mut exercised = 0;
    for seed in 0..3 {
        for i in 0..1000 {
            let mut rng = pair_rng(seed, i);
            let g = gen_program(&mut rng, &cfg).unwrap();
            let trace = gen_trace(&mut rng, &g.program, &cfg);
            exercised += check(&g.program, &trace);
        }
    }
    assert!(exercised > 0, "no generated reaction went through a pruned edge");
    println!("{} reactions through pruned edges", exercised);
}
