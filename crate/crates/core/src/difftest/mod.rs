//! Differential testing of the compiler against the interpreter.
//!
//! Pair `i` of a campaign with seed `s` draws from a ChaCha8 stream keyed by
//! `(s, i)`, so any single pair can be replayed on its own.

pub mod gen;
pub mod harness;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::thread;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use gen::{gen_candidate, gen_program, gen_trace, rejection, GenConfig, GenExhausted, Generated, Weights};
pub use harness::{check_invariants, diff_run, diff_run_with, shrink, Compiler, Counterexample, Verdict};

use crate::analysis::{analyze, AnalysisOptions};
use crate::ast::{Event, Process};
use crate::compiler::{flatten, gen_ir, schedule_with, CompileError, IrObject};
use crate::program::Program;

/// Rng for pair `index` of the campaign keyed by `seed`.
pub fn pair_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub index: u64,
    pub attempts: usize,
    pub rejected: BTreeMap<&'static str, usize>,
    pub elapsed: Duration,
    /// `None` on pass.
    pub failure: Option<String>,
}

/// Generates and checks one pair.
pub fn run_pair(seed: u64, index: u64, cfg: &GenConfig, compile: Compiler) -> PairOutcome {
    let start = Instant::now();
    let mut rng = pair_rng(seed, index);
    let (attempts, rejected, failure) = match gen_program(&mut rng, cfg) {
        Err(e) => (e.attempts, BTreeMap::new(), Some(e.to_string())),
        Ok(g) => {
            let trace = gen_trace(&mut rng, &g.program, cfg);
            let failure = match diff_run_with(&g.program, &trace, compile) {
                Verdict::Pass => None,
                Verdict::Fail(_) => {
                    let (root, trace) = shrink(g.program.root(), &trace, compile);
                    let small = Program::new(root).expect("shrinking keeps programs valid");
                    match diff_run_with(&small, &trace, compile) {
                        Verdict::Fail(cx) => Some(cx.report()),
                        Verdict::Pass => unreachable!("shrunk pair still fails"),
                    }
                }
            };
            (g.attempts, g.rejected, failure)
        }
    };
    PairOutcome { index, attempts, rejected, elapsed: start.elapsed(), failure }
}

#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub seed: u64,
    pub outcomes: Vec<PairOutcome>,
    pub elapsed: Duration,
}

impl CampaignReport {
    pub fn pairs(&self) -> usize {
        self.outcomes.len()
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairOutcome> {
        self.outcomes.iter().filter(|o| o.failure.is_some())
    }

    pub fn passes(&self) -> usize {
        self.pairs() - self.failures().count()
    }

    pub fn attempts(&self) -> usize {
        self.outcomes.iter().map(|o| o.attempts).sum()
    }

    /// Accepted programs over candidates drawn.
    pub fn acceptance_rate(&self) -> f64 {
        let a = self.attempts();
        if a == 0 {
            return 1.0;
        }
        self.pairs() as f64 / a as f64
    }

    pub fn rejections(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for o in &self.outcomes {
            for (k, v) in &o.rejected {
                *out.entry(*k).or_insert(0) += v;
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "seed {}: {} pairs, {} pass, {} fail, acceptance {:.3} ({} candidates), {:.2?}\n",
            self.seed,
            self.pairs(),
            self.passes(),
            self.pairs() - self.passes(),
            self.acceptance_rate(),
            self.attempts(),
            self.elapsed
        );
        for (code, n) in self.rejections() {
            let _ = writeln!(s, "  rejected {} {}", code, n);
        }
        s
    }

    /// JUnit XML with one test case per pair.
    pub fn junit(&self) -> String {
        let fails = self.pairs() - self.passes();
        let mut s = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            s,
            "<testsuite name=\"difftest.seed{}\" tests=\"{}\" failures=\"{}\" errors=\"0\" time=\"{:.3}\">",
            self.seed,
            self.pairs(),
            fails,
            self.elapsed.as_secs_f64()
        );
        for o in &self.outcomes {
            let _ = write!(
                s,
                "  <testcase classname=\"difftest.seed{}\" name=\"pair{}\" time=\"{:.4}\"",
                self.seed,
                o.index,
                o.elapsed.as_secs_f64()
            );
            match &o.failure {
                None => s.push_str("/>\n"),
                Some(msg) => {
                    let first = msg.lines().next().unwrap_or("");
                    let _ = writeln!(
                        s,
                        ">\n    <failure message=\"{}\">{}</failure>\n  </testcase>",
                        xml_escape(first),
                        xml_escape(msg)
                    );
                }
            }
        }
        s.push_str("</testsuite>\n");
        s
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Runs pairs `0..count` of seed `seed` over `workers` threads.
pub fn run_campaign_with(seed: u64, count: u64, cfg: &GenConfig, compile: Compiler, workers: usize) -> CampaignReport {
    let start = Instant::now();
    let workers = workers.max(1) as u64;
    let mut outcomes: Vec<PairOutcome> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..count).step_by(workers as usize).map(|i| run_pair(seed, i, cfg, compile)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    outcomes.sort_by_key(|o| o.index);
    CampaignReport { seed, outcomes, elapsed: start.elapsed() }
}

pub fn run_campaign(seed: u64, count: u64, cfg: &GenConfig) -> CampaignReport {
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    run_campaign_with(seed, count, cfg, crate::compiler::compile, workers)
}

/// A broken compiler for exercising the harness: its scheduler ignores
/// data dependencies, so readers may run before writers.
pub fn compile_mutant(prog: &Program) -> Result<IrObject, CompileError> {
    let analysis = analyze(prog, AnalysisOptions::default());
    if analysis.has_errors() {
        return Err(CompileError::Rejected(String::new()));
    }
    let flat = flatten(&analysis.graph, prog)?;
    let sched = schedule_with(flat, prog, true)?;
    Ok(gen_ir(prog, sched))
}

/// Searches a campaign for a pair that `compile` gets wrong and shrinks it.
pub fn find_counterexample(seed: u64, count: u64, cfg: &GenConfig, compile: Compiler) -> Option<(Process, Vec<Event>)> {
    for i in 0..count {
        let mut rng = pair_rng(seed, i);
        let Ok(g) = gen_program(&mut rng, cfg) else { continue };
        let trace = gen_trace(&mut rng, &g.program, cfg);
        if !diff_run_with(&g.program, &trace, compile).is_pass() {
            return Some(shrink(g.program.root(), &trace, compile));
        }
    }
    None
}
