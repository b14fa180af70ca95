//! Core abstract syntax: paths, values, expressions, events and processes.
//!
//! Every path in a core tree is absolute: its first segment is the name of
//! the root component, which is itself anchored at the empty path.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Absolute dotted identifier naming a process from the root.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Path(Vec<String>);

impl Path {
    /// The empty path, anchor of the root component.
    pub fn root_anchor() -> Self {
        Path(Vec::new())
    }

    pub fn from_segments<I, S>(segments: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Path(segments.into_iter().map(Into::into).collect())
    }

    /// Parses `a.b.c`. Returns `None` if any segment is not an identifier.
    pub fn parse(text: &str) -> Option<Self> {
        if text.is_empty() {
            return Some(Path::root_anchor());
        }
        let segs: Vec<String> = text.split('.').map(str::to_string).collect();
        if segs.iter().all(|s| is_identifier(s)) {
            Some(Path(segs))
        } else {
            None
        }
    }

    pub fn segments(&self) -> &[String] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, name: &str) -> Path {
        let mut segs = self.0.clone();
        segs.push(name.to_string());
        Path(segs)
    }

    /// The enclosing path; the root anchor has no parent.
    pub fn parent(&self) -> Option<Path> {
        if self.0.is_empty() {
            None
        } else {
            Some(Path(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.0.last().map(String::as_str)
    }

    /// True if `self` is a strict prefix of `other`.
    pub fn is_ancestor_of(&self, other: &Path) -> bool {
        self.0.len() < other.0.len() && other.0[..self.0.len()] == self.0[..]
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join("."))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Int,
    Double,
    Bool,
    Str,
}

impl Ty {
    pub fn keyword(self) -> &'static str {
        match self {
            Ty::Int => "Int",
            Ty::Double => "Double",
            Ty::Bool => "Bool",
            Ty::Str => "Str",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Ty> {
        match s {
            "Int" => Some(Ty::Int),
            "Double" => Some(Ty::Double),
            "Bool" => Some(Ty::Bool),
            "Str" => Some(Ty::Str),
            _ => None,
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A runtime value. Doubles compare by bit pattern, so equality, ordering
/// and hashing are total.
#[derive(Clone, Debug)]
pub enum Value {
    Int(i64),
    Double(f64),
    Bool(bool),
    Str(String),
}

impl Value {
    pub fn ty(&self) -> Ty {
        match self {
            Value::Int(_) => Ty::Int,
            Value::Double(_) => Ty::Double,
            Value::Bool(_) => Ty::Bool,
            Value::Str(_) => Ty::Str,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Int(_) => 0,
            Value::Double(_) => 1,
            Value::Bool(_) => 2,
            Value::Str(_) => 3,
        }
    }

    /// Source-literal rendering, shared by the core dump, the trace format
    /// and the state dump.
    pub fn literal(&self) -> String {
        self.to_string()
    }

    /// True for doubles that have no literal spelling (NaN, infinities).
    pub fn is_unprintable(&self) -> bool {
        matches!(self, Value::Double(d) if !d.is_finite())
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Value {}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Double(a), Value::Double(b)) => a.total_cmp(b),
            (Value::Bool(a), Value::Bool(b)) => a.cmp(b),
            (Value::Str(a), Value::Str(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Hash for Value {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match self {
            Value::Int(i) => i.hash(state),
            Value::Double(d) => d.to_bits().hash(state),
            Value::Bool(b) => b.hash(state),
            Value::Str(s) => s.hash(state),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{}", i),
            Value::Double(d) => write!(f, "{:?}", d),
            Value::Bool(b) => write!(f, "{}", b),
            Value::Str(s) => write_string_literal(f, s),
        }
    }
}

pub(crate) fn write_string_literal(f: &mut impl fmt::Write, s: &str) -> fmt::Result {
    f.write_char('"')?;
    for c in s.chars() {
        match c {
            '"' => f.write_str("\\\"")?,
            '\\' => f.write_str("\\\\")?,
            '\n' => f.write_str("\\n")?,
            '\t' => f.write_str("\\t")?,
            '\r' => f.write_str("\\r")?,
            c => f.write_char(c)?,
        }
    }
    f.write_char('"')
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnOp {
    Neg,
    Not,
    /// Conversion to string.
    Str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    pub fn is_comparison(self) -> bool {
        matches!(self, BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Const(Value),
    Var(Path),
    Last(Path),
    Unary(UnOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn int(i: i64) -> Expr {
        Expr::Const(Value::Int(i))
    }

    pub fn var(p: &Path) -> Expr {
        Expr::Var(p.clone())
    }

    pub fn unary(op: UnOp, e: Expr) -> Expr {
        Expr::Unary(op, Box::new(e))
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    /// Paths read at their current value.
    pub fn free_vars(&self) -> BTreeSet<Path> {
        let mut out = BTreeSet::new();
        self.collect(&mut out, false);
        out
    }

    /// Paths read through `last`.
    pub fn last_vars(&self) -> BTreeSet<Path> {
        let mut out = BTreeSet::new();
        self.collect(&mut out, true);
        out
    }

    fn collect(&self, out: &mut BTreeSet<Path>, want_last: bool) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(p) if !want_last => {
                out.insert(p.clone());
            }
            Expr::Last(p) if want_last => {
                out.insert(p.clone());
            }
            Expr::Var(_) | Expr::Last(_) => {}
            Expr::Unary(_, e) => e.collect(out, want_last),
            Expr::Binary(_, l, r) => {
                l.collect(out, want_last);
                r.collect(out, want_last);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Event {
    Trigger(Path),
    Assign(Value, Path),
    Activate(Path),
    Deactivate(Path),
}

impl Event {
    pub fn path(&self) -> &Path {
        match self {
            Event::Trigger(p) | Event::Assign(_, p) | Event::Activate(p) | Event::Deactivate(p) => p,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Trigger(p) => write!(f, "trigger {}", p),
            Event::Assign(v, p) => write!(f, "assign {} {}", v, p),
            Event::Activate(p) => write!(f, "activate {}", p),
            Event::Deactivate(p) => write!(f, "deactivate {}", p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InitActivation {
    Active,
    Inactive,
}

impl InitActivation {
    pub fn letter(self) -> char {
        match self {
            InitActivation::Active => 'a',
            InitActivation::Inactive => 'd',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Lhs {
    TriggerOf(Path),
    ActivateOf(Path),
    DeactivateOf(Path),
    ChangeOf(Path),
    Cond(Expr),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rhs {
    DoTrigger(Path),
    DoActivate(Path),
    DoDeactivate(Path),
}

impl Rhs {
    pub fn target(&self) -> &Path {
        match self {
            Rhs::DoTrigger(p) | Rhs::DoActivate(p) | Rhs::DoDeactivate(p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Process {
    Property { name: String, ty: Ty, init: Expr },
    Spike { name: String },
    Assignment { name: String, expr: Expr, target: Path },
    Binding { name: String, lhs: Lhs, ia: InitActivation, rhs: Rhs },
    Component { ia: InitActivation, name: String, children: Vec<Process> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProcessClass {
    Transient,
    Permanent,
    Property,
}

impl Process {
    pub fn name(&self) -> &str {
        match self {
            Process::Property { name, .. }
            | Process::Spike { name }
            | Process::Assignment { name, .. }
            | Process::Binding { name, .. }
            | Process::Component { name, .. } => name,
        }
    }

    pub fn classify(&self) -> ProcessClass {
        match self {
            Process::Spike { .. } | Process::Assignment { .. } => ProcessClass::Transient,
            Process::Binding { .. } | Process::Component { .. } => ProcessClass::Permanent,
            Process::Property { .. } => ProcessClass::Property,
        }
    }

    pub fn children(&self) -> &[Process] {
        match self {
            Process::Component { children, .. } => children,
            _ => &[],
        }
    }

    /// Finds the sub-process rooted at `target`, taking `self` as rooted at
    /// the empty path.
    pub fn lookup(&self, target: &Path) -> Option<&Process> {
        let (head, rest) = target.segments().split_first()?;
        if head != self.name() {
            return None;
        }
        let mut cur = self;
        for seg in rest {
            cur = cur.children().iter().find(|c| c.name() == seg)?;
        }
        Some(cur)
    }

    /// Pre-order traversal yielding every process with its absolute path.
    pub fn walk(&self) -> Vec<(Path, &Process)> {
        let mut out = Vec::new();
        walk_into(self, &Path::root_anchor(), &mut out);
        out
    }
}

fn walk_into<'a>(p: &'a Process, anchor: &Path, out: &mut Vec<(Path, &'a Process)>) {
    let path = anchor.child(p.name());
    out.push((path.clone(), p));
    for c in p.children() {
        walk_into(c, &path, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Path {
        Path::parse(s).unwrap()
    }

    fn counter_root() -> Process {
        Process::Component {
            ia: InitActivation::Active,
            name: "root".into(),
            children: vec![
                Process::Property { name: "count".into(), ty: Ty::Int, init: Expr::int(3) },
                Process::Spike { name: "zero".into() },
            ],
        }
    }

    #[test]
    fn lookup_direct_child_and_missing() {
        let root = counter_root();
        assert!(matches!(
            root.lookup(&p("root.count")),
            Some(Process::Property { name, .. }) if name == "count"
        ));
        let empty = Process::Component { ia: InitActivation::Active, name: "root".into(), children: vec![] };
        assert!(empty.lookup(&p("root.missing")).is_none());
        assert!(root.lookup(&p("other")).is_none());
    }

    #[test]
    fn lookup_agrees_with_walk() {
        let root = counter_root();
        for (path, proc_) in root.walk() {
            assert_eq!(root.lookup(&path), Some(proc_));
        }
    }

    #[test]
    fn classify_kinds() {
        assert_eq!(Process::Spike { name: "s".into() }.classify(), ProcessClass::Transient);
        assert_eq!(counter_root().classify(), ProcessClass::Permanent);
        assert_eq!(counter_root().children()[0].classify(), ProcessClass::Property);
    }

    #[test]
    fn free_and_last_vars() {
        assert!(Expr::int(3).free_vars().is_empty());
        let cmp = Expr::binary(BinOp::Eq, Expr::var(&p("root.count")), Expr::int(0));
        assert_eq!(cmp.free_vars(), BTreeSet::from([p("root.count")]));
        assert!(cmp.last_vars().is_empty());
        let dec = Expr::binary(BinOp::Sub, Expr::Last(p("root.count")), Expr::int(1));
        assert_eq!(dec.last_vars(), BTreeSet::from([p("root.count")]));
        assert!(dec.free_vars().is_empty());
    }

    #[test]
    fn double_equality_is_bitwise() {
        assert_eq!(Value::Double(f64::NAN), Value::Double(f64::NAN));
        assert_ne!(Value::Double(0.0), Value::Double(-0.0));
        assert_ne!(Value::Int(1), Value::Double(1.0));
    }

    #[test]
    fn path_helpers() {
        let q = p("root.f.btn1");
        assert_eq!(q.parent(), Some(p("root.f")));
        assert_eq!(p("root").parent(), Some(Path::root_anchor()));
        assert!(p("root").is_ancestor_of(&q));
        assert!(!q.is_ancestor_of(&q));
        assert!(Path::parse("root.1x").is_none());
        assert_eq!(q.to_string(), "root.f.btn1");
    }
}
