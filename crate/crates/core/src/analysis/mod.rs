//! Static checks over the event propagation graph.
//!
//! Every admissible external event is a source. From each source the
//! reachable part of the graph is checked for dependency cycles, for two
//! writes of one property, and for activating and deactivating one
//! process. Errors make a program unfit for compilation; warnings do not.

mod checks;
pub mod graph;
pub mod prune;
pub mod sat;

use std::fmt;

use crate::ast::Path;
use crate::program::Program;

pub use graph::{build_prop_graph, EdgeKind, PropGraph, Source, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    DepCycle,
    Rssa,
    ActConflict,
    DeadParentAssign,
    Unreachable,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::DepCycle => "DEP_CYCLE",
            Code::Rssa => "RSSA",
            Code::ActConflict => "ACT_CONFLICT",
            Code::DeadParentAssign => "DEAD_PARENT_ASSIGN",
            Code::Unreachable => "UNREACHABLE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    /// Offending paths, most relevant first. Never empty.
    pub paths: Vec<Path>,
    pub message: String,
}

impl Diagnostic {
    fn error(code: Code, paths: Vec<Path>, message: String) -> Self {
        Diagnostic { severity: Severity::Error, code, paths, message }
    }

    fn warning(code: Code, paths: Vec<Path>, message: String) -> Self {
        Diagnostic { severity: Severity::Warning, code, paths, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.code.as_str(), self.paths[0], self.message)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    /// Drop edges from literal assignments to conditions they falsify.
    pub prune: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { prune: true }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub graph: PropGraph,
    pub pruned: Vec<(Vertex, Vertex)>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Analysis {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.severity == Severity::Error)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn codes(&self) -> Vec<Code> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }
}

pub fn analyze(prog: &Program, opts: AnalysisOptions) -> Analysis {
    let mut graph = build_prop_graph(prog);
    let pruned = if opts.prune { prune::prune_constant_conditions(&mut graph, prog) } else { Vec::new() };
    let mut diagnostics = Vec::new();
    {
        let mut views: Vec<_> = graph.sources().into_iter().map(|s| checks::SourceView::new(&graph, s)).collect();
        checks::check_cycles(&graph, &views, &mut diagnostics);
        checks::check_rssa(prog, &graph, &mut views, &mut diagnostics);
        checks::check_activation_conflicts(prog, &graph, &mut views, &mut diagnostics);
        checks::check_dead_parent_assign(prog, &graph, &views, &mut diagnostics);
        checks::check_unreachable(prog, &graph, &views, &mut diagnostics);
    }
    diagnostics.sort_by(|a, b| (a.severity, a.code, &a.paths).cmp(&(b.severity, b.code, &b.paths)));
    Analysis { graph, pruned, diagnostics }
}
