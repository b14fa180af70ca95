//! C99 text for an IR object.
//!
//! The translation unit holds a struct of fields and flags, a reset
//! function, one `react_<kind>_<path>` function per method and a `main`
//! that reads an event trace (file argument or stdin) and prints the same
//! state dump as the interpreter.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::analysis::Source;
use crate::ast::{BinOp, Expr, Path, Ty, UnOp, Value};
use crate::program::typecheck_expr;

use super::{GuardedInstr, Instr, IrObject, Test};

const PRELUDE: &str = r#"#include <errno.h>
#include <math.h>
#include <setjmp.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

static jmp_buf on_error;

static void fail(void) { longjmp(on_error, 1); }

static int64_t i_add(int64_t a, int64_t b) {
    if ((b > 0 && a > INT64_MAX - b) || (b < 0 && a < INT64_MIN - b)) fail();
    return a + b;
}
static int64_t i_sub(int64_t a, int64_t b) {
    if ((b < 0 && a > INT64_MAX + b) || (b > 0 && a < INT64_MIN + b)) fail();
    return a - b;
}
static int64_t i_mul(int64_t a, int64_t b) {
    if (a == 0 || b == 0) return 0;
    if ((a == -1 && b == INT64_MIN) || (b == -1 && a == INT64_MIN)) fail();
    if (a > 0 ? (b > 0 ? a > INT64_MAX / b : b < INT64_MIN / a)
              : (b > 0 ? a < INT64_MIN / b : a < INT64_MAX / b)) fail();
    return a * b;
}
static int64_t i_div(int64_t a, int64_t b) {
    if (b == 0 || (a == INT64_MIN && b == -1)) fail();
    return a / b;
}
static int64_t i_mod(int64_t a, int64_t b) {
    if (b == 0 || (a == INT64_MIN && b == -1)) fail();
    return a % b;
}
static int64_t i_neg(int64_t a) {
    if (a == INT64_MIN) fail();
    return -a;
}
static int b_and(int a, int b) { return a && b; }
static int b_or(int a, int b) { return a || b; }

static char *s_dup(const char *s) {
    size_t n = strlen(s) + 1;
    char *r = malloc(n);
    if (!r) abort();
    memcpy(r, s, n);
    return r;
}
static char *s_cat(const char *a, const char *b) {
    size_t n = strlen(a), m = strlen(b);
    char *r = malloc(n + m + 1);
    if (!r) abort();
    memcpy(r, a, n);
    memcpy(r + n, b, m + 1);
    return r;
}
static char *s_of_int(int64_t v) {
    char buf[32];
    sprintf(buf, "%lld", (long long)v);
    return s_dup(buf);
}
static char *s_of_bool(int v) { return s_dup(v ? "true" : "false"); }

/* Shortest round-trip digits, laid out like the interpreter prints doubles. */
static void fmt_double(char *out, double x) {
    char buf[64], digits[32];
    int p, n = 0, e, i;
    char *s, *q;
    if (isnan(x)) { strcpy(out, "NaN"); return; }
    if (isinf(x)) { strcpy(out, x > 0 ? "inf" : "-inf"); return; }
    if (x == 0) { strcpy(out, signbit(x) ? "-0.0" : "0.0"); return; }
    for (p = 1; p <= 17; p++) {
        sprintf(buf, "%.*e", p - 1, x);
        if (strtod(buf, NULL) == x) break;
    }
    s = buf;
    if (*s == '-') { *out++ = '-'; s++; }
    for (q = s; *q && *q != 'e'; q++)
        if (*q != '.') digits[n++] = *q;
    while (n > 1 && digits[n - 1] == '0') n--;
    digits[n] = 0;
    e = atoi(q + 1);
    if ((fabs(x) < 1e-4) || fabs(x) >= 1e16) {
        *out++ = digits[0];
        if (n > 1) { *out++ = '.'; memcpy(out, digits + 1, n - 1); out += n - 1; }
        sprintf(out, "e%d", e);
        return;
    }
    if (e >= 0) {
        for (i = 0; i <= e; i++) *out++ = i < n ? digits[i] : '0';
        *out++ = '.';
        if (n > e + 1) { memcpy(out, digits + e + 1, n - e - 1); out += n - e - 1; }
        else *out++ = '0';
    } else {
        *out++ = '0';
        *out++ = '.';
        for (i = 0; i < -e - 1; i++) *out++ = '0';
        memcpy(out, digits, n);
        out += n;
    }
    *out = 0;
}
static char *s_of_double(double v) {
    char buf[64];
    fmt_double(buf, v);
    return s_dup(buf);
}
static void put_str(const char *s) {
    putchar('"');
    for (; *s; s++) {
        switch (*s) {
        case '"': fputs("\\\"", stdout); break;
        case '\\': fputs("\\\\", stdout); break;
        case '\n': fputs("\\n", stdout); break;
        case '\t': fputs("\\t", stdout); break;
        case '\r': fputs("\\r", stdout); break;
        default: putchar(*s);
        }
    }
    putchar('"');
}
static void put_double(double v) {
    char buf[64];
    fmt_double(buf, v);
    fputs(buf, stdout);
}

enum { K_INT, K_DOUBLE, K_BOOL, K_STR };
typedef struct {
    int kind;
    int64_t i;
    double d;
    int b;
    char *s;
} lit_t;

static void put_lit(const lit_t *v) {
    switch (v->kind) {
    case K_INT: printf("%lld", (long long)v->i); break;
    case K_DOUBLE: put_double(v->d); break;
    case K_BOOL: fputs(v->b ? "true" : "false", stdout); break;
    default: put_str(v->s);
    }
}

static int parse_lit(const char *s, lit_t *v) {
    size_t n = strlen(s);
    const char *c;
    char *end;
    int digit = 0, numeric = 1;
    memset(v, 0, sizeof *v);
    if (!strcmp(s, "true") || !strcmp(s, "false")) { v->kind = K_BOOL; v->b = s[0] == 't'; return 1; }
    if (!strcmp(s, "NaN")) { v->kind = K_DOUBLE; v->d = NAN; return 1; }
    if (!strcmp(s, "inf")) { v->kind = K_DOUBLE; v->d = INFINITY; return 1; }
    if (!strcmp(s, "-inf")) { v->kind = K_DOUBLE; v->d = -INFINITY; return 1; }
    if (n >= 2 && s[0] == '"' && s[n - 1] == '"') {
        char *o = malloc(n);
        if (!o) abort();
        v->kind = K_STR;
        v->s = o;
        for (c = s + 1; c < s + n - 1; c++) {
            if (*c == '"') return 0;
            if (*c != '\\') { *o++ = *c; continue; }
            if (++c >= s + n - 1) return 0;
            switch (*c) {
            case 'n': *o++ = '\n'; break;
            case 't': *o++ = '\t'; break;
            case 'r': *o++ = '\r'; break;
            case '"': *o++ = '"'; break;
            case '\\': *o++ = '\\'; break;
            default: return 0;
            }
        }
        *o = 0;
        return 1;
    }
    c = s;
    if (*c == '+' || *c == '-') c++;
    if (*c) {
        const char *d = c;
        while (*d >= '0' && *d <= '9') d++;
        if (!*d) {
            errno = 0;
            v->i = strtoll(s, &end, 10);
            if (errno == 0 && !*end) { v->kind = K_INT; return 1; }
        }
    }
    for (c = s; *c; c++) {
        if (*c >= '0' && *c <= '9') digit = 1;
        else if (!strchr(".eE+-", *c)) numeric = 0;
    }
    if (numeric && digit) {
        v->d = strtod(s, &end);
        if (end != s && !*end) { v->kind = K_DOUBLE; return 1; }
    }
    return 0;
}
"#;

const MAIN: &str = r#"
static char *trim(char *s) {
    char *e;
    while (*s == ' ' || *s == '\t' || *s == '\r' || *s == '\n') s++;
    e = s + strlen(s);
    while (e > s && (e[-1] == ' ' || e[-1] == '\t' || e[-1] == '\r' || e[-1] == '\n')) *--e = 0;
    return s;
}

static void strip_comment(char *s) {
    int in_str = 0, esc = 0;
    for (; *s; s++) {
        if (esc) esc = 0;
        else if (*s == '\\' && in_str) esc = 1;
        else if (*s == '"') in_str = !in_str;
        else if (*s == '#' && !in_str) { *s = 0; return; }
    }
}

int main(int argc, char **argv) {
    static obj_t o;
    static char line[1 << 16];
    FILE *in = stdin;
    int idx = 0, lineno = 0;
    if (argc > 1 && !(in = fopen(argv[1], "r"))) { perror(argv[1]); return 2; }
    if (reset(&o)) { puts("init\nerror init"); return 0; }
    puts("init");
    dump(&o);
    while (fgets(line, sizeof line, in)) {
        char *s, *rest, *path;
        int rc;
        lineno++;
        strip_comment(line);
        s = trim(line);
        if (!*s) continue;
        rest = s + strcspn(s, " \t");
        if (*rest) *rest++ = 0;
        rest = trim(rest);
        memset(emitted, 0, sizeof emitted);
        if (!strcmp(s, "trigger")) {
            if (!*rest || strpbrk(rest, " \t")) { fprintf(stderr, "line %d: bad path\n", lineno); return 2; }
            printf("react %d trigger %s\n", idx, rest);
            rc = dispatch_trigger(&o, rest);
        } else if (!strcmp(s, "assign")) {
            lit_t v;
            path = rest + strlen(rest);
            while (path > rest && path[-1] != ' ' && path[-1] != '\t') path--;
            if (path == rest) { fprintf(stderr, "line %d: expected assign <value> <path>\n", lineno); return 2; }
            path[-1] = 0;
            if (!parse_lit(trim(rest), &v)) { fprintf(stderr, "line %d: bad value\n", lineno); return 2; }
            printf("react %d assign ", idx);
            put_lit(&v);
            printf(" %s\n", path);
            rc = dispatch_assign(&o, path, &v);
        } else {
            fprintf(stderr, "line %d: unknown event kind\n", lineno);
            return 2;
        }
        if (rc == 2) { puts("error inadmissible"); return 0; }
        if (rc == 1) { puts("error unsafe"); return 0; }
        dump(&o);
        idx++;
    }
    return 0;
}
"#;

fn mangle(p: &Path) -> String {
    p.to_string().replace('_', "__").replace('.', "_")
}

fn method_name(s: &Source) -> String {
    match s {
        Source::Trigger(p) => format!("react_trigger_{}", mangle(p)),
        Source::Assign(p) => format!("react_assign_{}", mangle(p)),
    }
}

fn c_type(ty: Ty) -> &'static str {
    match ty {
        Ty::Int => "int64_t",
        Ty::Double => "double",
        Ty::Bool => "int",
        Ty::Str => "char *",
    }
}

fn decl(ty: Ty, name: &str) -> String {
    let t = c_type(ty);
    if t.ends_with('*') {
        format!("{}{}", t, name)
    } else {
        format!("{} {}", t, name)
    }
}

fn c_string(s: &str) -> String {
    let mut out = String::from("\"");
    for b in s.bytes() {
        match b {
            b'"' => out.push_str("\\\""),
            b'\\' => out.push_str("\\\\"),
            b'\n' => out.push_str("\\n"),
            b'\t' => out.push_str("\\t"),
            b'\r' => out.push_str("\\r"),
            // Octal keeps a following digit from joining the escape.
            0x20..=0x7e if b != b'?' => out.push(b as char),
            _ => {
                let _ = write!(out, "\\{:03o}", b);
            }
        }
    }
    out.push('"');
    out
}

fn c_const(v: &Value) -> String {
    match v {
        Value::Int(i64::MIN) => "(-INT64_C(9223372036854775807) - 1)".to_string(),
        Value::Int(i) => format!("INT64_C({})", i),
        Value::Double(d) if d.is_nan() => "NAN".to_string(),
        Value::Double(d) if d.is_infinite() => (if *d > 0.0 { "INFINITY" } else { "(-INFINITY)" }).to_string(),
        Value::Double(d) => format!("{:e}", d),
        Value::Bool(b) => (if *b { "1" } else { "0" }).to_string(),
        Value::Str(s) => c_string(s),
    }
}

struct Gen<'a> {
    ir: &'a IrObject,
    field_ix: HashMap<&'a Path, usize>,
    flag_ix: HashMap<&'a Path, usize>,
    spike_ix: BTreeMap<Path, usize>,
}

impl Gen<'_> {
    fn ty(&self, e: &Expr) -> Ty {
        typecheck_expr(e, &|p| self.field_ix.get(p).map(|&i| self.ir.fields[i].ty)).expect("typed expression")
    }

    fn expr(&self, e: &Expr) -> String {
        match e {
            Expr::Const(v) => c_const(v),
            Expr::Var(p) => format!("o->f{}", self.field_ix[p]),
            Expr::Last(p) => format!("last_f{}", self.field_ix[p]),
            Expr::Unary(op, a) => {
                let x = self.expr(a);
                match (op, self.ty(a)) {
                    (UnOp::Neg, Ty::Int) => format!("i_neg({})", x),
                    (UnOp::Neg, _) => format!("(-{})", x),
                    (UnOp::Not, _) => format!("(!{})", x),
                    (UnOp::Str, Ty::Int) => format!("s_of_int({})", x),
                    (UnOp::Str, Ty::Double) => format!("s_of_double({})", x),
                    (UnOp::Str, Ty::Bool) => format!("s_of_bool({})", x),
                    (UnOp::Str, Ty::Str) => x,
                }
            }
            Expr::Binary(op, a, b) => {
                let (x, y, ty) = (self.expr(a), self.expr(b), self.ty(a));
                let f = |name: &str| format!("{}({}, {})", name, x, y);
                let infix = |sym: &str| format!("({} {} {})", x, sym, y);
                match (op, ty) {
                    (BinOp::Add, Ty::Int) => f("i_add"),
                    (BinOp::Sub, Ty::Int) => f("i_sub"),
                    (BinOp::Mul, Ty::Int) => f("i_mul"),
                    (BinOp::Div, Ty::Int) => f("i_div"),
                    (BinOp::Mod, Ty::Int) => f("i_mod"),
                    (BinOp::Mod, _) => f("fmod"),
                    (BinOp::Add, Ty::Str) => f("s_cat"),
                    (BinOp::And, _) => f("b_and"),
                    (BinOp::Or, _) => f("b_or"),
                    (op, Ty::Str) if op.is_comparison() => format!("(strcmp({}, {}) {} 0)", x, y, op.symbol()),
                    (op, _) => infix(op.symbol()),
                }
            }
        }
    }

    fn test(&self, t: &Test) -> String {
        match t {
            Test::Flag(p) => format!("o->a{}", self.flag_ix[p]),
            Test::WasActive(p) => format!("was_a{}", self.flag_ix[p]),
            Test::WasInactive(p) => format!("!was_a{}", self.flag_ix[p]),
            Test::Cond(e) => self.expr(e),
        }
    }

    fn conj(&self, ts: &[Test]) -> String {
        ts.iter().map(|t| self.test(t)).collect::<Vec<_>>().join(" && ")
    }

    fn instr(&self, out: &mut String, gi: &GuardedInstr) {
        let stmt = match &gi.instr {
            Instr::SetField { target, expr, commit } => {
                let i = self.field_ix[target];
                if commit.is_empty() {
                    format!("o->f{} = {};", i, self.expr(expr))
                } else {
                    format!(
                        "{{ {} = {}; if ({}) o->f{} = v; }}",
                        decl(self.ir.fields[i].ty, "v"),
                        self.expr(expr),
                        self.conj(commit),
                        i
                    )
                }
            }
            Instr::SetParam { target } => format!("o->f{} = arg;", self.field_ix[target]),
            Instr::SetFlag { target, on } => format!("o->a{} = {};", self.flag_ix[target], *on as u8),
            Instr::EmitTrigger(p) => format!("emitted[{}] = 1;", self.spike_ix[p]),
            Instr::EvalGuardOnly(e) => format!("(void)({});", self.expr(e)),
        };
        if gi.guard.is_empty() {
            let _ = writeln!(out, "    {}", stmt);
        } else {
            let _ = writeln!(out, "    if ({}) {}", self.conj(&gi.guard), stmt);
        }
    }
}

/// Emits the C99 translation unit for `ir`.
pub fn emit_c(ir: &IrObject) -> String {
    let field_ix = ir.fields.iter().enumerate().map(|(i, f)| (&f.path, i)).collect();
    let flag_ix = ir.flags.iter().enumerate().map(|(i, (p, _))| (p, i)).collect();
    let spike_ix = ir
        .methods
        .iter()
        .filter_map(|m| match &m.event {
            Source::Trigger(p) => Some(p.clone()),
            Source::Assign(_) => None,
        })
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let g = Gen { ir, field_ix, flag_ix, spike_ix };
    let mut out = String::new();
    let _ = writeln!(out, "/* reactive object {} */", ir.name);
    out.push_str(PRELUDE);

    out.push_str("\ntypedef struct {\n");
    for (i, f) in ir.fields.iter().enumerate() {
        let _ = writeln!(out, "    {} f{}; /* {} */", c_type(f.ty), i, f.path);
    }
    for (i, (p, _)) in ir.flags.iter().enumerate() {
        let _ = writeln!(out, "    int a{}; /* {} */", i, p);
    }
    if ir.fields.is_empty() && ir.flags.is_empty() {
        out.push_str("    int unused;\n");
    }
    out.push_str("} obj_t;\n\n");
    let _ = writeln!(out, "static int emitted[{}];\n", g.spike_ix.len().max(1));

    out.push_str("static int reset(obj_t *o) {\n    if (setjmp(on_error)) return 1;\n");
    for (i, f) in ir.fields.iter().enumerate() {
        let _ = writeln!(out, "    o->f{} = {};", i, g.expr(&f.init));
    }
    for (i, (_, on)) in ir.flags.iter().enumerate() {
        let _ = writeln!(out, "    o->a{} = {};", i, *on as u8);
    }
    out.push_str("    return 0;\n}\n");

    for m in &ir.methods {
        let arg = match &m.event {
            Source::Assign(p) => format!(", {}", decl(ir.fields[g.field_ix[p]].ty, "arg")),
            Source::Trigger(_) => String::new(),
        };
        let _ = writeln!(
            out,
            "\n/* {} */",
            match &m.event {
                Source::Trigger(p) => format!("trigger {}", p),
                Source::Assign(p) => format!("assign {}", p),
            }
        );
        let _ = writeln!(out, "static int {}(obj_t *o{}) {{", method_name(&m.event), arg);
        for p in &m.snapshot_fields {
            let i = g.field_ix[p];
            let _ = writeln!(out, "    {} = o->f{};", decl(ir.fields[i].ty, &format!("last_f{}", i)), i);
        }
        for p in &m.snapshot_flags {
            let i = g.flag_ix[p];
            let _ = writeln!(out, "    int was_a{} = o->a{};", i, i);
        }
        if let Source::Assign(p) = &m.event {
            if let Some(parent) = p.parent().filter(|q| !q.is_empty()) {
                let _ = writeln!(out, "    if (!o->a{}) return 2;", g.flag_ix[&parent]);
            }
        }
        out.push_str("    (void)o;\n    if (setjmp(on_error)) return 1;\n");
        for gi in &m.body {
            g.instr(&mut out, gi);
        }
        out.push_str("    return 0;\n}\n");
    }

    // Dispatch from trace paths to methods.
    out.push_str("\nstatic int dispatch_trigger(obj_t *o, const char *path) {\n");
    for (p, i) in &g.spike_ix {
        let _ = writeln!(
            out,
            "    if (!strcmp(path, {})) {{ emitted[{}] = 1; return {}(o); }}",
            c_string(&p.to_string()),
            i,
            method_name(&Source::Trigger(p.clone()))
        );
    }
    out.push_str("    (void)o;\n    return 2;\n}\n");
    out.push_str("\nstatic int dispatch_assign(obj_t *o, const char *path, const lit_t *v) {\n");
    for m in &ir.methods {
        let Source::Assign(p) = &m.event else { continue };
        let f = &ir.fields[g.field_ix[p]];
        let (kind, member) = match f.ty {
            Ty::Int => ("K_INT", "i"),
            Ty::Double => ("K_DOUBLE", "d"),
            Ty::Bool => ("K_BOOL", "b"),
            Ty::Str => ("K_STR", "s"),
        };
        let _ = writeln!(
            out,
            "    if (!strcmp(path, {})) return v->kind == {} ? {}(o, v->{}) : 2;",
            c_string(&p.to_string()),
            kind,
            method_name(&m.event),
            member
        );
    }
    out.push_str("    (void)o;\n    (void)v;\n    return 2;\n}\n");

    // Dump in path order.
    out.push_str("\nstatic void dump(const obj_t *o) {\n");
    let mut fields: Vec<(usize, &Path)> = ir.fields.iter().enumerate().map(|(i, f)| (i, &f.path)).collect();
    fields.sort_by(|a, b| a.1.cmp(b.1));
    for (i, p) in fields {
        let _ = write!(out, "    fputs(\"env {} = \", stdout); ", p);
        let _ = match ir.fields[i].ty {
            Ty::Int => writeln!(out, "printf(\"%lld\\n\", (long long)o->f{});", i),
            Ty::Double => writeln!(out, "put_double(o->f{}); putchar('\\n');", i),
            Ty::Bool => writeln!(out, "puts(o->f{} ? \"true\" : \"false\");", i),
            Ty::Str => writeln!(out, "put_str(o->f{}); putchar('\\n');", i),
        };
    }
    let mut flags: Vec<(usize, &Path)> = ir.flags.iter().enumerate().map(|(i, (p, _))| (i, p)).collect();
    flags.sort_by(|a, b| a.1.cmp(b.1));
    for (i, p) in flags {
        let _ = writeln!(out, "    if (o->a{}) puts(\"active {}\");", i, p);
    }
    for (p, i) in &g.spike_ix {
        let _ = writeln!(out, "    if (emitted[{}]) puts(\"emit trigger {}\");", i, p);
    }
    out.push_str("    (void)o;\n}\n");
    out.push_str(MAIN);
    out
}
