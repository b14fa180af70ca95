use std::collections::{BTreeSet, HashMap};

use crate::ast::{Expr, Lhs, Path, Process, ProcessClass, Rhs, Ty};
use crate::program::{typecheck_expr, TypeError};

use super::{Arrow, CompKind, ElabError, Pos, SExpr, SKind, SLhs, SPath, SProcess};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphicalKind {
    Frame,
    Rectangle,
    FillColor,
    Text,
    Font,
    Exit,
}

pub struct GraphicalSpec {
    pub kind: GraphicalKind,
    pub keyword: &'static str,
    pub params: &'static [(&'static str, Ty)],
    pub spikes: &'static [&'static str],
}

pub const GRAPHICAL_KINDS: &[GraphicalSpec] = &[
    GraphicalSpec {
        kind: GraphicalKind::Frame,
        keyword: "Frame",
        params: &[("title", Ty::Str), ("width", Ty::Int), ("height", Ty::Int)],
        spikes: &["close"],
    },
    GraphicalSpec {
        kind: GraphicalKind::Rectangle,
        keyword: "Rectangle",
        params: &[("x", Ty::Int), ("y", Ty::Int), ("width", Ty::Int), ("height", Ty::Int)],
        spikes: &["press", "release"],
    },
    GraphicalSpec {
        kind: GraphicalKind::FillColor,
        keyword: "FillColor",
        params: &[("red", Ty::Int), ("green", Ty::Int), ("blue", Ty::Int)],
        spikes: &[],
    },
    GraphicalSpec {
        kind: GraphicalKind::Text,
        keyword: "Text",
        params: &[("text", Ty::Str), ("x", Ty::Int), ("y", Ty::Int)],
        spikes: &[],
    },
    GraphicalSpec {
        kind: GraphicalKind::Font,
        keyword: "Font",
        params: &[("family", Ty::Str), ("size", Ty::Int)],
        spikes: &[],
    },
    GraphicalSpec { kind: GraphicalKind::Exit, keyword: "Exit", params: &[("code", Ty::Int)], spikes: &["trigger"] },
];

impl GraphicalKind {
    pub fn spec(self) -> &'static GraphicalSpec {
        GRAPHICAL_KINDS.iter().find(|s| s.kind == self).unwrap()
    }

    pub fn from_keyword(s: &str) -> Option<GraphicalKind> {
        GRAPHICAL_KINDS.iter().find(|g| g.keyword == s).map(|g| g.kind)
    }
}

// ---- pass 1: names ----

/// Replaces every `_` with a fresh `_gN` (pre-order, skipping names the
/// program already uses) and rejects duplicate sibling names. Bindings
/// written without a name draw from a separate `_bN` sequence.
pub fn elaborate_names(sp: SProcess) -> Result<SProcess, ElabError> {
    let mut used = BTreeSet::new();
    collect_names(&sp, &mut used);
    let mut counters = [0usize; 2];
    let sp = fill_names(sp, &used, &mut counters);
    check_siblings(&sp)?;
    Ok(sp)
}

fn collect_names(sp: &SProcess, used: &mut BTreeSet<String>) {
    if let Some(n) = &sp.name {
        used.insert(n.clone());
    }
    for c in sp.children() {
        collect_names(c, used);
    }
}

fn fill_names(mut sp: SProcess, used: &BTreeSet<String>, counters: &mut [usize; 2]) -> SProcess {
    if sp.name.is_none() {
        let (prefix, counter) = match sp.kind {
            SKind::Binding { .. } => ("_b", &mut counters[1]),
            _ => ("_g", &mut counters[0]),
        };
        let name = loop {
            let candidate = format!("{}{}", prefix, *counter);
            *counter += 1;
            if !used.contains(&candidate) {
                break candidate;
            }
        };
        sp.name = Some(name);
    }
    if let SKind::Component { children, .. } = &mut sp.kind {
        let taken = std::mem::take(children);
        *children = taken.into_iter().map(|c| fill_names(c, used, counters)).collect();
    }
    sp
}

fn check_siblings(sp: &SProcess) -> Result<(), ElabError> {
    let mut seen: HashMap<&str, Pos> = HashMap::new();
    for c in sp.children() {
        let name = c.name.as_deref().unwrap_or("_");
        if let Some(first) = seen.insert(name, c.pos) {
            return Err(ElabError::new(
                c.pos,
                format!("duplicate sibling name `{}` (first declared at {})", name, first),
            ));
        }
        check_siblings(c)?;
    }
    Ok(())
}

// ---- pass 2: graphical sugar ----

/// Rewrites graphical components into generic components whose first
/// children are the parameter properties and predefined spikes.
pub fn expand_graphical(sp: SProcess) -> Result<SProcess, ElabError> {
    let SProcess { name, pos, kind } = sp;
    let SKind::Component { kind: ckind, ia, args, children } = kind else {
        return Ok(SProcess { name, pos, kind });
    };
    let children = children.into_iter().map(expand_graphical).collect::<Result<Vec<_>, _>>()?;
    let label = name.as_deref().unwrap_or("_");
    let g = match ckind {
        CompKind::Component => {
            if let Some(a) = args.first() {
                return Err(ElabError::new(a.pos(), format!("component `{}` takes no arguments", label)));
            }
            return Ok(SProcess { name, pos, kind: SKind::Component { kind: ckind, ia, args, children } });
        }
        CompKind::Graphical(g) => g.spec(),
    };
    if args.len() != g.params.len() {
        return Err(ElabError::new(
            pos,
            format!("{} `{}` expects {} argument(s), found {}", g.keyword, label, g.params.len(), args.len()),
        ));
    }
    let mut expanded = Vec::with_capacity(g.params.len() + g.spikes.len() + children.len());
    for ((pname, ty), arg) in g.params.iter().zip(args) {
        if let Some(t) = literal_type(&arg) {
            if t != *ty {
                return Err(ElabError::new(
                    arg.pos(),
                    format!("argument `{}` of {} has type {}, found {}", pname, g.keyword, ty, t),
                ));
            }
        }
        expanded.push(SProcess {
            name: Some(pname.to_string()),
            pos: arg.pos(),
            kind: SKind::Property { ty: *ty, init: arg, param: true },
        });
    }
    for s in g.spikes {
        expanded.push(SProcess { name: Some(s.to_string()), pos, kind: SKind::Spike });
    }
    for c in children {
        if let Some(clash) = expanded.iter().find(|e| e.name == c.name) {
            return Err(ElabError::new(
                c.pos,
                format!(
                    "`{}` clashes with the predefined member of {} `{}` (at {})",
                    c.name.as_deref().unwrap_or("_"),
                    g.keyword,
                    label,
                    clash.pos
                ),
            ));
        }
        expanded.push(c);
    }
    Ok(SProcess {
        name,
        pos,
        kind: SKind::Component { kind: CompKind::Component, ia, args: Vec::new(), children: expanded },
    })
}

fn literal_type(e: &SExpr) -> Option<Ty> {
    match e {
        SExpr::Const(v, _) => Some(v.ty()),
        SExpr::Paren(inner) => literal_type(inner),
        _ => None,
    }
}

// ---- pass 3: resolution, typing, classification ----

struct Entry {
    class: ProcessClass,
    ty: Option<Ty>,
    order: usize,
    children: Vec<String>,
}

struct Resolver {
    table: HashMap<Path, Entry>,
    root: Path,
}

/// Makes every path absolute, type-checks expressions and classifies each
/// binding's source and target into the core forms.
pub fn resolve_and_classify(sp: &SProcess) -> Result<Process, ElabError> {
    let Some(root_name) = sp.name.clone() else {
        return Err(ElabError::new(sp.pos, "unnamed process; run elaborate_names first"));
    };
    if !matches!(sp.kind, SKind::Component { .. }) {
        return Err(ElabError::new(sp.pos, "the top-level process must be a component"));
    }
    let mut r = Resolver { table: HashMap::new(), root: Path::from_segments([root_name.as_str()]) };
    let mut order = 0;
    r.index(sp, &Path::root_anchor(), &mut order)?;
    let mut scopes = Vec::new();
    r.convert(sp, &Path::root_anchor(), &mut scopes)
}

impl Resolver {
    fn index(&mut self, sp: &SProcess, parent: &Path, order: &mut usize) -> Result<(), ElabError> {
        let name =
            sp.name.as_deref().ok_or_else(|| ElabError::new(sp.pos, "unnamed process; run elaborate_names first"))?;
        let path = parent.child(name);
        let (class, ty) = match &sp.kind {
            SKind::Property { ty, .. } => (ProcessClass::Property, Some(*ty)),
            SKind::Spike | SKind::Assignment { .. } => (ProcessClass::Transient, None),
            SKind::Binding { .. } => (ProcessClass::Permanent, None),
            SKind::Component { kind, .. } => {
                if let CompKind::Graphical(g) = kind {
                    return Err(ElabError::new(
                        sp.pos,
                        format!("{} sugar not expanded; run expand_graphical first", g.spec().keyword),
                    ));
                }
                (ProcessClass::Permanent, None)
            }
        };
        let children = sp.children().iter().filter_map(|c| c.name.clone()).collect();
        self.table.insert(path.clone(), Entry { class, ty, order: *order, children });
        *order += 1;
        for c in sp.children() {
            self.index(c, &path, order)?;
        }
        Ok(())
    }

    fn convert(&self, sp: &SProcess, parent: &Path, scopes: &mut Vec<Path>) -> Result<Process, ElabError> {
        let name = sp.name.clone().unwrap_or_default();
        let here = parent.child(&name);
        let p = match &sp.kind {
            SKind::Property { ty, init, param } => {
                let lookup_scopes = if *param { &scopes[..scopes.len() - 1] } else { &scopes[..] };
                let e = self.expr(init, lookup_scopes)?;
                self.check_type(&e, *ty, init.pos(), "initializer")?;
                if !e.last_vars().is_empty() {
                    return Err(ElabError::new(init.pos(), "`last` is not allowed in an initializer"));
                }
                let mine = self.table[&here].order;
                if let Some(v) = e.free_vars().into_iter().find(|v| self.table[v].order >= mine) {
                    return Err(ElabError::new(
                        init.pos(),
                        format!("initializer of `{}` reads `{}`, which is not declared before it", here, v),
                    ));
                }
                Process::Property { name, ty: *ty, init: e }
            }
            SKind::Spike => Process::Spike { name },
            SKind::Assignment { expr, target } => {
                let target_path = self.resolve(target, scopes)?;
                let Some(ty) = self.table[&target_path].ty else {
                    return Err(ElabError::new(
                        target.pos,
                        format!("assignment target `{}` is not a property", target_path),
                    ));
                };
                let e = self.expr(expr, scopes)?;
                self.check_type(&e, ty, expr.pos(), "assigned value")?;
                Process::Assignment { name, expr: e, target: target_path }
            }
            SKind::Binding { lhs, arrow, ia, rhs } => {
                let lhs = self.classify_lhs(lhs, *arrow, scopes)?;
                let rhs = self.classify_rhs(rhs, *arrow, scopes)?;
                Process::Binding { name, lhs, ia: *ia, rhs }
            }
            SKind::Component { ia, children, .. } => {
                scopes.push(here.clone());
                let kids = children.iter().map(|c| self.convert(c, &here, scopes)).collect::<Result<Vec<_>, _>>();
                scopes.pop();
                Process::Component { ia: *ia, name, children: kids? }
            }
        };
        Ok(p)
    }

    fn resolve(&self, sp: &SPath, scopes: &[Path]) -> Result<Path, ElabError> {
        let head = &sp.segments[0];
        let mut base =
            scopes.iter().rev().find(|s| self.table[*s].children.iter().any(|c| c == head)).map(|s| s.child(head));
        if base.is_none() && *head == self.root.segments()[0] {
            base = Some(self.root.clone());
        }
        let Some(mut path) = base else {
            return Err(ElabError::new(sp.pos, format!("unresolved name `{}`", head)));
        };
        for seg in &sp.segments[1..] {
            let entry = &self.table[&path];
            if !entry.children.iter().any(|c| c == seg) {
                return Err(ElabError::new(sp.pos, format!("`{}` has no member `{}`", path, seg)));
            }
            path = path.child(seg);
        }
        Ok(path)
    }

    fn property(&self, sp: &SPath, scopes: &[Path]) -> Result<Path, ElabError> {
        let p = self.resolve(sp, scopes)?;
        if self.table[&p].ty.is_none() {
            return Err(ElabError::new(sp.pos, format!("`{}` is not a property", p)));
        }
        Ok(p)
    }

    fn expr(&self, e: &SExpr, scopes: &[Path]) -> Result<Expr, ElabError> {
        Ok(match e {
            SExpr::Const(v, _) => Expr::Const(v.clone()),
            SExpr::Path(p) => Expr::Var(self.property(p, scopes)?),
            SExpr::Last(p) => Expr::Last(self.property(p, scopes)?),
            SExpr::Unary(op, a, _) => Expr::Unary(*op, Box::new(self.expr(a, scopes)?)),
            SExpr::Binary(op, l, r, _) => {
                Expr::Binary(*op, Box::new(self.expr(l, scopes)?), Box::new(self.expr(r, scopes)?))
            }
            SExpr::Paren(inner) => self.expr(inner, scopes)?,
        })
    }

    fn check_type(&self, e: &Expr, expected: Ty, pos: Pos, what: &str) -> Result<(), ElabError> {
        let t = typecheck_expr(e, &|p| self.table.get(p).and_then(|en| en.ty)).map_err(|err| {
            let msg = match err {
                TypeError::NotAProperty(p) => format!("`{}` is not a property", p),
                other => other.to_string(),
            };
            ElabError::new(pos, msg)
        })?;
        if t != expected {
            return Err(ElabError::new(pos, format!("{} has type {}, expected {}", what, t, expected)));
        }
        Ok(())
    }

    fn classify_lhs(&self, lhs: &SLhs, arrow: Arrow, scopes: &[Path]) -> Result<Lhs, ElabError> {
        match lhs {
            SLhs::Cond(e) => {
                if arrow.lhs_deactivation() {
                    return Err(ElabError::new(e.pos(), "a condition cannot be deactivated (`!->`)"));
                }
                let core = self.expr(e, scopes)?;
                self.check_type(&core, Ty::Bool, e.pos(), "condition")?;
                Ok(Lhs::Cond(core))
            }
            SLhs::Path(sp) => {
                let p = self.resolve(sp, scopes)?;
                let class = self.table[&p].class;
                match (class, arrow.lhs_deactivation()) {
                    (ProcessClass::Transient, false) => Ok(Lhs::TriggerOf(p)),
                    (ProcessClass::Property, false) => Ok(Lhs::ChangeOf(p)),
                    (ProcessClass::Permanent, false) => Ok(Lhs::ActivateOf(p)),
                    (ProcessClass::Permanent, true) => Ok(Lhs::DeactivateOf(p)),
                    (c, true) => Err(ElabError::new(
                        sp.pos,
                        format!("`!->` needs a binding or component, `{}` is a {}", p, class_name(c)),
                    )),
                }
            }
        }
    }

    fn classify_rhs(&self, sp: &SPath, arrow: Arrow, scopes: &[Path]) -> Result<Rhs, ElabError> {
        let p = self.resolve(sp, scopes)?;
        let class = self.table[&p].class;
        match (class, arrow.rhs_deactivation()) {
            (ProcessClass::Transient, false) => Ok(Rhs::DoTrigger(p)),
            (ProcessClass::Permanent, false) => Ok(Rhs::DoActivate(p)),
            (ProcessClass::Permanent, true) => Ok(Rhs::DoDeactivate(p)),
            (ProcessClass::Property, _) => {
                Err(ElabError::new(sp.pos, format!("a binding cannot target property `{}`; use an assignment", p)))
            }
            (ProcessClass::Transient, true) => {
                Err(ElabError::new(sp.pos, format!("`->!` needs a binding or component, `{}` is transient", p)))
            }
        }
    }
}

fn class_name(c: ProcessClass) -> &'static str {
    match c {
        ProcessClass::Transient => "spike or assignment",
        ProcessClass::Permanent => "binding or component",
        ProcessClass::Property => "property",
    }
}
