/* reactive object root */
#include <errno.h>
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

typedef struct {
    int64_t f0; /* root.count */
    char * f1; /* root.f.title */
    int64_t f2; /* root.f.width */
    int64_t f3; /* root.f.height */
    char * f4; /* root.f._g0.family */
    int64_t f5; /* root.f._g0.size */
    int64_t f6; /* root.f._g0.btn1.red */
    int64_t f7; /* root.f._g0.btn1.green */
    int64_t f8; /* root.f._g0.btn1.blue */
    int64_t f9; /* root.f._g0.btn1.r.x */
    int64_t f10; /* root.f._g0.btn1.r.y */
    int64_t f11; /* root.f._g0.btn1.r.width */
    int64_t f12; /* root.f._g0.btn1.r.height */
    int64_t f13; /* root.f._g0.btn1.r._g1.red */
    int64_t f14; /* root.f._g0.btn1.r._g1.green */
    int64_t f15; /* root.f._g0.btn1.r._g1.blue */
    char * f16; /* root.f._g0.btn1.r._g1._g2.text */
    int64_t f17; /* root.f._g0.btn1.r._g1._g2.x */
    int64_t f18; /* root.f._g0.btn1.r._g1._g2.y */
    int64_t f19; /* root.f._g0.btn2.red */
    int64_t f20; /* root.f._g0.btn2.green */
    int64_t f21; /* root.f._g0.btn2.blue */
    int64_t f22; /* root.f._g0.btn2.r.x */
    int64_t f23; /* root.f._g0.btn2.r.y */
    int64_t f24; /* root.f._g0.btn2.r.width */
    int64_t f25; /* root.f._g0.btn2.r.height */
    int64_t f26; /* root.f._g0.btn2.r._g3.red */
    int64_t f27; /* root.f._g0.btn2.r._g3.green */
    int64_t f28; /* root.f._g0.btn2.r._g3.blue */
    char * f29; /* root.f._g0.btn2.r._g3.t.text */
    int64_t f30; /* root.f._g0.btn2.r._g3.t.x */
    int64_t f31; /* root.f._g0.btn2.r._g3.t.y */
    int64_t f32; /* root.f._g0._g4.red */
    int64_t f33; /* root.f._g0._g4.green */
    int64_t f34; /* root.f._g0._g4.blue */
    char * f35; /* root.f._g0._g4.t.text */
    int64_t f36; /* root.f._g0._g4.t.x */
    int64_t f37; /* root.f._g0._g4.t.y */
    int64_t f38; /* root.e.code */
    int a0; /* root */
    int a1; /* root._b0 */
    int a2; /* root.f */
    int a3; /* root.f._g0 */
    int a4; /* root.f._g0.btn1 */
    int a5; /* root.f._g0.btn1.r */
    int a6; /* root.f._g0.btn1.r._g1 */
    int a7; /* root.f._g0.btn1.r._g1._g2 */
    int a8; /* root.f._g0.btn1._b1 */
    int a9; /* root.f._g0.btn1._b2 */
    int a10; /* root.f._g0._b3 */
    int a11; /* root.f._g0._b4 */
    int a12; /* root.f._g0._b5 */
    int a13; /* root.f._g0.btn2 */
    int a14; /* root.f._g0.btn2.r */
    int a15; /* root.f._g0.btn2.r._g3 */
    int a16; /* root.f._g0.btn2.r._g3.t */
    int a17; /* root.f._g0.btn2._b6 */
    int a18; /* root.f._g0.btn2._b7 */
    int a19; /* root.f._g0._b8 */
    int a20; /* root.f._g0._b9 */
    int a21; /* root.f._g0._b10 */
    int a22; /* root.f._g0._g4 */
    int a23; /* root.f._g0._g4.t */
    int a24; /* root.f._g0._g4.t._b11 */
    int a25; /* root.e */
    int a26; /* root.e._b12 */
} obj_t;

static int emitted[7];

static int reset(obj_t *o) {
    if (setjmp(on_error)) return 1;
    o->f0 = INT64_C(3);
    o->f1 = "ICE 2025";
    o->f2 = INT64_C(300);
    o->f3 = INT64_C(50);
    o->f4 = "arial.ttf";
    o->f5 = INT64_C(20);
    o->f6 = INT64_C(150);
    o->f7 = INT64_C(150);
    o->f8 = INT64_C(150);
    o->f9 = INT64_C(0);
    o->f10 = INT64_C(0);
    o->f11 = INT64_C(100);
    o->f12 = o->f3;
    o->f13 = INT64_C(0);
    o->f14 = INT64_C(0);
    o->f15 = INT64_C(0);
    o->f16 = "decr";
    o->f17 = i_add(o->f9, INT64_C(30));
    o->f18 = INT64_C(13);
    o->f19 = INT64_C(150);
    o->f20 = INT64_C(150);
    o->f21 = INT64_C(150);
    o->f22 = i_add(o->f11, INT64_C(10));
    o->f23 = INT64_C(0);
    o->f24 = INT64_C(100);
    o->f25 = o->f3;
    o->f26 = INT64_C(0);
    o->f27 = INT64_C(0);
    o->f28 = INT64_C(0);
    o->f29 = "restart";
    o->f30 = i_add(o->f22, INT64_C(20));
    o->f31 = INT64_C(13);
    o->f32 = INT64_C(255);
    o->f33 = INT64_C(255);
    o->f34 = INT64_C(255);
    o->f35 = s_cat("rem: ", s_of_int(o->f0));
    o->f36 = i_add(i_add(o->f22, o->f24), INT64_C(10));
    o->f37 = INT64_C(13);
    o->f38 = INT64_C(0);
    o->a0 = 1;
    o->a1 = 1;
    o->a2 = 1;
    o->a3 = 1;
    o->a4 = 1;
    o->a5 = 1;
    o->a6 = 1;
    o->a7 = 1;
    o->a8 = 1;
    o->a9 = 1;
    o->a10 = 1;
    o->a11 = 1;
    o->a12 = 1;
    o->a13 = 1;
    o->a14 = 0;
    o->a15 = 0;
    o->a16 = 0;
    o->a17 = 1;
    o->a18 = 1;
    o->a19 = 1;
    o->a20 = 1;
    o->a21 = 1;
    o->a22 = 1;
    o->a23 = 1;
    o->a24 = 1;
    o->a25 = 1;
    o->a26 = 1;
    return 0;
}

/* assign root.count */
static int react_assign_root_count(obj_t *o, int64_t arg) {
    int was_a5 = o->a5;
    int was_a14 = o->a14;
    if (!o->a0) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f0 = arg;
    if ((o->f0 == INT64_C(0))) emitted[6] = 1;
    (void)((o->f0 == INT64_C(0)));
    if ((o->f0 == INT64_C(0)) && was_a5) o->a5 = 0;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a5 = 1;
    if ((o->f0 == INT64_C(0)) && was_a5) o->a6 = 0;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a6 = 1;
    if ((o->f0 == INT64_C(0)) && was_a5) o->a7 = 0;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a7 = 1;
    (void)((o->f0 > INT64_C(0)));
    if ((o->f0 < INT64_C(3)) && !was_a14) o->a14 = 1;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a14 = 0;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a15 = 0;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a16 = 0;
    (void)((o->f0 < INT64_C(3)));
    (void)((o->f0 == INT64_C(3)));
    o->f35 = s_cat("rem: ", s_of_int(o->f0));
    return 0;
}

/* trigger root.zero */
static int react_trigger_root_zero(obj_t *o) {
    int was_a5 = o->a5;
    (void)o;
    if (setjmp(on_error)) return 1;
    if (was_a5) o->a5 = 0;
    if (was_a5) o->a6 = 0;
    if (was_a5) o->a7 = 0;
    return 0;
}

/* assign root.f.title */
static int react_assign_root_f_title(obj_t *o, char *arg) {
    if (!o->a2) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f1 = arg;
    return 0;
}

/* assign root.f.width */
static int react_assign_root_f_width(obj_t *o, int64_t arg) {
    if (!o->a2) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f2 = arg;
    return 0;
}

/* assign root.f.height */
static int react_assign_root_f_height(obj_t *o, int64_t arg) {
    if (!o->a2) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f3 = arg;
    return 0;
}

/* trigger root.f.close */
static int react_trigger_root_f_close(obj_t *o) {
    (void)o;
    if (setjmp(on_error)) return 1;
    emitted[0] = 1;
    return 0;
}

/* assign root.f._g0.family */
static int react_assign_root_f___g0_family(obj_t *o, char *arg) {
    if (!o->a3) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f4 = arg;
    return 0;
}

/* assign root.f._g0.size */
static int react_assign_root_f___g0_size(obj_t *o, int64_t arg) {
    if (!o->a3) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f5 = arg;
    return 0;
}

/* assign root.f._g0.btn1.red */
static int react_assign_root_f___g0_btn1_red(obj_t *o, int64_t arg) {
    if (!o->a4) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f6 = arg;
    return 0;
}

/* assign root.f._g0.btn1.green */
static int react_assign_root_f___g0_btn1_green(obj_t *o, int64_t arg) {
    if (!o->a4) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f7 = arg;
    return 0;
}

/* assign root.f._g0.btn1.blue */
static int react_assign_root_f___g0_btn1_blue(obj_t *o, int64_t arg) {
    if (!o->a4) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f8 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r.x */
static int react_assign_root_f___g0_btn1_r_x(obj_t *o, int64_t arg) {
    if (!o->a5) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f9 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r.y */
static int react_assign_root_f___g0_btn1_r_y(obj_t *o, int64_t arg) {
    if (!o->a5) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f10 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r.width */
static int react_assign_root_f___g0_btn1_r_width(obj_t *o, int64_t arg) {
    if (!o->a5) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f11 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r.height */
static int react_assign_root_f___g0_btn1_r_height(obj_t *o, int64_t arg) {
    if (!o->a5) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f12 = arg;
    return 0;
}

/* trigger root.f._g0.btn1.r.press */
static int react_trigger_root_f___g0_btn1_r_press(obj_t *o) {
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f7 = INT64_C(255);
    return 0;
}

/* trigger root.f._g0.btn1.r.release */
static int react_trigger_root_f___g0_btn1_r_release(obj_t *o) {
    int64_t last_f0 = o->f0;
    int was_a5 = o->a5;
    int was_a14 = o->a14;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f7 = INT64_C(150);
    o->f0 = i_sub(last_f0, INT64_C(1));
    if ((o->f0 == INT64_C(0))) emitted[6] = 1;
    (void)((o->f0 == INT64_C(0)));
    if ((o->f0 == INT64_C(0)) && was_a5) o->a5 = 0;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a5 = 1;
    if ((o->f0 == INT64_C(0)) && was_a5) o->a6 = 0;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a6 = 1;
    if ((o->f0 == INT64_C(0)) && was_a5) o->a7 = 0;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a7 = 1;
    (void)((o->f0 > INT64_C(0)));
    if ((o->f0 < INT64_C(3)) && !was_a14) o->a14 = 1;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a14 = 0;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a15 = 0;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a16 = 0;
    (void)((o->f0 < INT64_C(3)));
    (void)((o->f0 == INT64_C(3)));
    o->f35 = s_cat("rem: ", s_of_int(o->f0));
    return 0;
}

/* assign root.f._g0.btn1.r._g1.red */
static int react_assign_root_f___g0_btn1_r___g1_red(obj_t *o, int64_t arg) {
    if (!o->a6) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f13 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r._g1.green */
static int react_assign_root_f___g0_btn1_r___g1_green(obj_t *o, int64_t arg) {
    if (!o->a6) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f14 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r._g1.blue */
static int react_assign_root_f___g0_btn1_r___g1_blue(obj_t *o, int64_t arg) {
    if (!o->a6) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f15 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r._g1._g2.text */
static int react_assign_root_f___g0_btn1_r___g1___g2_text(obj_t *o, char *arg) {
    if (!o->a7) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f16 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r._g1._g2.x */
static int react_assign_root_f___g0_btn1_r___g1___g2_x(obj_t *o, int64_t arg) {
    if (!o->a7) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f17 = arg;
    return 0;
}

/* assign root.f._g0.btn1.r._g1._g2.y */
static int react_assign_root_f___g0_btn1_r___g1___g2_y(obj_t *o, int64_t arg) {
    if (!o->a7) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f18 = arg;
    return 0;
}

/* assign root.f._g0.btn2.red */
static int react_assign_root_f___g0_btn2_red(obj_t *o, int64_t arg) {
    if (!o->a13) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f19 = arg;
    return 0;
}

/* assign root.f._g0.btn2.green */
static int react_assign_root_f___g0_btn2_green(obj_t *o, int64_t arg) {
    if (!o->a13) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f20 = arg;
    return 0;
}

/* assign root.f._g0.btn2.blue */
static int react_assign_root_f___g0_btn2_blue(obj_t *o, int64_t arg) {
    if (!o->a13) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f21 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r.x */
static int react_assign_root_f___g0_btn2_r_x(obj_t *o, int64_t arg) {
    if (!o->a14) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f22 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r.y */
static int react_assign_root_f___g0_btn2_r_y(obj_t *o, int64_t arg) {
    if (!o->a14) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f23 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r.width */
static int react_assign_root_f___g0_btn2_r_width(obj_t *o, int64_t arg) {
    if (!o->a14) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f24 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r.height */
static int react_assign_root_f___g0_btn2_r_height(obj_t *o, int64_t arg) {
    if (!o->a14) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f25 = arg;
    return 0;
}

/* trigger root.f._g0.btn2.r.press */
static int react_trigger_root_f___g0_btn2_r_press(obj_t *o) {
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f20 = INT64_C(255);
    return 0;
}

/* trigger root.f._g0.btn2.r.release */
static int react_trigger_root_f___g0_btn2_r_release(obj_t *o) {
    int was_a5 = o->a5;
    int was_a14 = o->a14;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f20 = INT64_C(150);
    o->f0 = INT64_C(3);
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a5 = 1;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a6 = 1;
    if ((o->f0 > INT64_C(0)) && !was_a5) o->a7 = 1;
    (void)((o->f0 > INT64_C(0)));
    if ((o->f0 == INT64_C(3)) && was_a14) o->a14 = 0;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a15 = 0;
    if ((o->f0 == INT64_C(3)) && was_a14) o->a16 = 0;
    (void)((o->f0 == INT64_C(3)));
    o->f35 = s_cat("rem: ", s_of_int(o->f0));
    return 0;
}

/* assign root.f._g0.btn2.r._g3.red */
static int react_assign_root_f___g0_btn2_r___g3_red(obj_t *o, int64_t arg) {
    if (!o->a15) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f26 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r._g3.green */
static int react_assign_root_f___g0_btn2_r___g3_green(obj_t *o, int64_t arg) {
    if (!o->a15) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f27 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r._g3.blue */
static int react_assign_root_f___g0_btn2_r___g3_blue(obj_t *o, int64_t arg) {
    if (!o->a15) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f28 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r._g3.t.text */
static int react_assign_root_f___g0_btn2_r___g3_t_text(obj_t *o, char *arg) {
    if (!o->a16) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f29 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r._g3.t.x */
static int react_assign_root_f___g0_btn2_r___g3_t_x(obj_t *o, int64_t arg) {
    if (!o->a16) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f30 = arg;
    return 0;
}

/* assign root.f._g0.btn2.r._g3.t.y */
static int react_assign_root_f___g0_btn2_r___g3_t_y(obj_t *o, int64_t arg) {
    if (!o->a16) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f31 = arg;
    return 0;
}

/* assign root.f._g0._g4.red */
static int react_assign_root_f___g0___g4_red(obj_t *o, int64_t arg) {
    if (!o->a22) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f32 = arg;
    return 0;
}

/* assign root.f._g0._g4.green */
static int react_assign_root_f___g0___g4_green(obj_t *o, int64_t arg) {
    if (!o->a22) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f33 = arg;
    return 0;
}

/* assign root.f._g0._g4.blue */
static int react_assign_root_f___g0___g4_blue(obj_t *o, int64_t arg) {
    if (!o->a22) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f34 = arg;
    return 0;
}

/* assign root.f._g0._g4.t.text */
static int react_assign_root_f___g0___g4_t_text(obj_t *o, char *arg) {
    if (!o->a23) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f35 = arg;
    return 0;
}

/* assign root.f._g0._g4.t.x */
static int react_assign_root_f___g0___g4_t_x(obj_t *o, int64_t arg) {
    if (!o->a23) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f36 = arg;
    return 0;
}

/* assign root.f._g0._g4.t.y */
static int react_assign_root_f___g0___g4_t_y(obj_t *o, int64_t arg) {
    if (!o->a23) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f37 = arg;
    return 0;
}

/* assign root.e.code */
static int react_assign_root_e_code(obj_t *o, int64_t arg) {
    if (!o->a25) return 2;
    (void)o;
    if (setjmp(on_error)) return 1;
    o->f38 = arg;
    return 0;
}

/* trigger root.e.trigger */
static int react_trigger_root_e_trigger(obj_t *o) {
    (void)o;
    if (setjmp(on_error)) return 1;
    return 0;
}

static int dispatch_trigger(obj_t *o, const char *path) {
    if (!strcmp(path, "root.e.trigger")) { emitted[0] = 1; return react_trigger_root_e_trigger(o); }
    if (!strcmp(path, "root.f._g0.btn1.r.press")) { emitted[1] = 1; return react_trigger_root_f___g0_btn1_r_press(o); }
    if (!strcmp(path, "root.f._g0.btn1.r.release")) { emitted[2] = 1; return react_trigger_root_f___g0_btn1_r_release(o); }
    if (!strcmp(path, "root.f._g0.btn2.r.press")) { emitted[3] = 1; return react_trigger_root_f___g0_btn2_r_press(o); }
    if (!strcmp(path, "root.f._g0.btn2.r.release")) { emitted[4] = 1; return react_trigger_root_f___g0_btn2_r_release(o); }
    if (!strcmp(path, "root.f.close")) { emitted[5] = 1; return react_trigger_root_f_close(o); }
    if (!strcmp(path, "root.zero")) { emitted[6] = 1; return react_trigger_root_zero(o); }
    (void)o;
    return 2;
}

static int dispatch_assign(obj_t *o, const char *path, const lit_t *v) {
    if (!strcmp(path, "root.count")) return v->kind == K_INT ? react_assign_root_count(o, v->i) : 2;
    if (!strcmp(path, "root.f.title")) return v->kind == K_STR ? react_assign_root_f_title(o, v->s) : 2;
    if (!strcmp(path, "root.f.width")) return v->kind == K_INT ? react_assign_root_f_width(o, v->i) : 2;
    if (!strcmp(path, "root.f.height")) return v->kind == K_INT ? react_assign_root_f_height(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.family")) return v->kind == K_STR ? react_assign_root_f___g0_family(o, v->s) : 2;
    if (!strcmp(path, "root.f._g0.size")) return v->kind == K_INT ? react_assign_root_f___g0_size(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.red")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_red(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.green")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_green(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.blue")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_blue(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r.x")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r_x(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r.y")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r_y(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r.width")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r_width(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r.height")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r_height(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r._g1.red")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r___g1_red(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r._g1.green")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r___g1_green(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r._g1.blue")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r___g1_blue(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r._g1._g2.text")) return v->kind == K_STR ? react_assign_root_f___g0_btn1_r___g1___g2_text(o, v->s) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r._g1._g2.x")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r___g1___g2_x(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn1.r._g1._g2.y")) return v->kind == K_INT ? react_assign_root_f___g0_btn1_r___g1___g2_y(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.red")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_red(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.green")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_green(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.blue")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_blue(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r.x")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r_x(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r.y")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r_y(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r.width")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r_width(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r.height")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r_height(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r._g3.red")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r___g3_red(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r._g3.green")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r___g3_green(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r._g3.blue")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r___g3_blue(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r._g3.t.text")) return v->kind == K_STR ? react_assign_root_f___g0_btn2_r___g3_t_text(o, v->s) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r._g3.t.x")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r___g3_t_x(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0.btn2.r._g3.t.y")) return v->kind == K_INT ? react_assign_root_f___g0_btn2_r___g3_t_y(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0._g4.red")) return v->kind == K_INT ? react_assign_root_f___g0___g4_red(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0._g4.green")) return v->kind == K_INT ? react_assign_root_f___g0___g4_green(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0._g4.blue")) return v->kind == K_INT ? react_assign_root_f___g0___g4_blue(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0._g4.t.text")) return v->kind == K_STR ? react_assign_root_f___g0___g4_t_text(o, v->s) : 2;
    if (!strcmp(path, "root.f._g0._g4.t.x")) return v->kind == K_INT ? react_assign_root_f___g0___g4_t_x(o, v->i) : 2;
    if (!strcmp(path, "root.f._g0._g4.t.y")) return v->kind == K_INT ? react_assign_root_f___g0___g4_t_y(o, v->i) : 2;
    if (!strcmp(path, "root.e.code")) return v->kind == K_INT ? react_assign_root_e_code(o, v->i) : 2;
    (void)o;
    (void)v;
    return 2;
}

static void dump(const obj_t *o) {
    fputs("env root.count = ", stdout); printf("%lld\n", (long long)o->f0);
    fputs("env root.e.code = ", stdout); printf("%lld\n", (long long)o->f38);
    fputs("env root.f._g0._g4.blue = ", stdout); printf("%lld\n", (long long)o->f34);
    fputs("env root.f._g0._g4.green = ", stdout); printf("%lld\n", (long long)o->f33);
    fputs("env root.f._g0._g4.red = ", stdout); printf("%lld\n", (long long)o->f32);
    fputs("env root.f._g0._g4.t.text = ", stdout); put_str(o->f35); putchar('\n');
    fputs("env root.f._g0._g4.t.x = ", stdout); printf("%lld\n", (long long)o->f36);
    fputs("env root.f._g0._g4.t.y = ", stdout); printf("%lld\n", (long long)o->f37);
    fputs("env root.f._g0.btn1.blue = ", stdout); printf("%lld\n", (long long)o->f8);
    fputs("env root.f._g0.btn1.green = ", stdout); printf("%lld\n", (long long)o->f7);
    fputs("env root.f._g0.btn1.r._g1._g2.text = ", stdout); put_str(o->f16); putchar('\n');
    fputs("env root.f._g0.btn1.r._g1._g2.x = ", stdout); printf("%lld\n", (long long)o->f17);
    fputs("env root.f._g0.btn1.r._g1._g2.y = ", stdout); printf("%lld\n", (long long)o->f18);
    fputs("env root.f._g0.btn1.r._g1.blue = ", stdout); printf("%lld\n", (long long)o->f15);
    fputs("env root.f._g0.btn1.r._g1.green = ", stdout); printf("%lld\n", (long long)o->f14);
    fputs("env root.f._g0.btn1.r._g1.red = ", stdout); printf("%lld\n", (long long)o->f13);
    fputs("env root.f._g0.btn1.r.height = ", stdout); printf("%lld\n", (long long)o->f12);
    fputs("env root.f._g0.btn1.r.width = ", stdout); printf("%lld\n", (long long)o->f11);
    fputs("env root.f._g0.btn1.r.x = ", stdout); printf("%lld\n", (long long)o->f9);
    fputs("env root.f._g0.btn1.r.y = ", stdout); printf("%lld\n", (long long)o->f10);
    fputs("env root.f._g0.btn1.red = ", stdout); printf("%lld\n", (long long)o->f6);
    fputs("env root.f._g0.btn2.blue = ", stdout); printf("%lld\n", (long long)o->f21);
    fputs("env root.f._g0.btn2.green = ", stdout); printf("%lld\n", (long long)o->f20);
    fputs("env root.f._g0.btn2.r._g3.blue = ", stdout); printf("%lld\n", (long long)o->f28);
    fputs("env root.f._g0.btn2.r._g3.green = ", stdout); printf("%lld\n", (long long)o->f27);
    fputs("env root.f._g0.btn2.r._g3.red = ", stdout); printf("%lld\n", (long long)o->f26);
    fputs("env root.f._g0.btn2.r._g3.t.text = ", stdout); put_str(o->f29); putchar('\n');
    fputs("env root.f._g0.btn2.r._g3.t.x = ", stdout); printf("%lld\n", (long long)o->f30);
    fputs("env root.f._g0.btn2.r._g3.t.y = ", stdout); printf("%lld\n", (long long)o->f31);
    fputs("env root.f._g0.btn2.r.height = ", stdout); printf("%lld\n", (long long)o->f25);
    fputs("env root.f._g0.btn2.r.width = ", stdout); printf("%lld\n", (long long)o->f24);
    fputs("env root.f._g0.btn2.r.x = ", stdout); printf("%lld\n", (long long)o->f22);
    fputs("env root.f._g0.btn2.r.y = ", stdout); printf("%lld\n", (long long)o->f23);
    fputs("env root.f._g0.btn2.red = ", stdout); printf("%lld\n", (long long)o->f19);
    fputs("env root.f._g0.family = ", stdout); put_str(o->f4); putchar('\n');
    fputs("env root.f._g0.size = ", stdout); printf("%lld\n", (long long)o->f5);
    fputs("env root.f.height = ", stdout); printf("%lld\n", (long long)o->f3);
    fputs("env root.f.title = ", stdout); put_str(o->f1); putchar('\n');
    fputs("env root.f.width = ", stdout); printf("%lld\n", (long long)o->f2);
    if (o->a0) puts("active root");
    if (o->a1) puts("active root._b0");
    if (o->a25) puts("active root.e");
    if (o->a26) puts("active root.e._b12");
    if (o->a2) puts("active root.f");
    if (o->a3) puts("active root.f._g0");
    if (o->a21) puts("active root.f._g0._b10");
    if (o->a10) puts("active root.f._g0._b3");
    if (o->a11) puts("active root.f._g0._b4");
    if (o->a12) puts("active root.f._g0._b5");
    if (o->a19) puts("active root.f._g0._b8");
    if (o->a20) puts("active root.f._g0._b9");
    if (o->a22) puts("active root.f._g0._g4");
    if (o->a23) puts("active root.f._g0._g4.t");
    if (o->a24) puts("active root.f._g0._g4.t._b11");
    if (o->a4) puts("active root.f._g0.btn1");
    if (o->a8) puts("active root.f._g0.btn1._b1");
    if (o->a9) puts("active root.f._g0.btn1._b2");
    if (o->a5) puts("active root.f._g0.btn1.r");
    if (o->a6) puts("active root.f._g0.btn1.r._g1");
    if (o->a7) puts("active root.f._g0.btn1.r._g1._g2");
    if (o->a13) puts("active root.f._g0.btn2");
    if (o->a17) puts("active root.f._g0.btn2._b6");
    if (o->a18) puts("active root.f._g0.btn2._b7");
    if (o->a14) puts("active root.f._g0.btn2.r");
    if (o->a15) puts("active root.f._g0.btn2.r._g3");
    if (o->a16) puts("active root.f._g0.btn2.r._g3.t");
    if (emitted[0]) puts("emit trigger root.e.trigger");
    if (emitted[1]) puts("emit trigger root.f._g0.btn1.r.press");
    if (emitted[2]) puts("emit trigger root.f._g0.btn1.r.release");
    if (emitted[3]) puts("emit trigger root.f._g0.btn2.r.press");
    if (emitted[4]) puts("emit trigger root.f._g0.btn2.r.release");
    if (emitted[5]) puts("emit trigger root.f.close");
    if (emitted[6]) puts("emit trigger root.zero");
    (void)o;
}

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
