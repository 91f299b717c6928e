"""A small expression language for user-defined identities.

Expressions support integer literals, variables, + - * / ^ (integer
exponents, possibly negative, possibly variable-valued), unary minus, and
four call forms:

    rf(x, m)            rising factorial x (x+1) ... (x+m-1)
    qrf(a, q, m)        q-rising factorial (1-a)(1-aq)...(1-a q^(m-1))
    binom(a, b)         binomial coefficient a (a-1) ... (a-b+1) / b!
    prod(j, lo, hi, e)  product of e over j = lo..hi under the extended
                        range convention (empty -> 1, inverted -> reciprocal)

Precedence: ^  >  unary -  >  * /  >  + -, with ^ right-associative and the
binary operators left-associative.  Rational constants are written with /
(e.g. 2/3); the token grammar has integer literals only.

Identity config files are line-oriented UTF-8 text, one identity per file:

    name:   binomial            # required; an identifier
    params: x                   # optional; comma-separated identifiers
    require: x, 1 + x           # optional; exprs that must be nonzero
    lhs:    binom(n, k) * x^k   # required; summand in n, k, params
    range:  0 .. n              # required; summation bounds, exprs in n
    rhs:    (1 + x)^n           # required; closed form in n, params
    cert_u: x*(n - k + 1)       # optional; both cert_u and cert_v or neither
    cert_v: k

'#' starts a comment; blank lines are ignored; each section is one line.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .certify import Certificate
from .corpus import IdentityDef, Param, q_rising_factorial, rising_factorial
from .errors import DivisionByZero, VerifyError
from .rational import ONE, prod_range, rat_div, rat_pow


class ParseError(ValueError):
    """Syntax error with position and the expected-token set."""

    def __init__(self, message: str, line: int, column: int, expected: tuple[str, ...] = ()):
        self.line = line
        self.column = column
        self.expected = expected
        hint = f" (expected {', '.join(expected)})" if expected else ""
        super().__init__(f"{message} at line {line}, column {column}{hint}")


class SchemaError(ValueError):
    """A config file is missing or misusing a section."""


class UnboundVariable(VerifyError):
    pass


class NonIntegerExponent(VerifyError):
    """An integer-valued expression was required (exponent, count, bound)."""


# --- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


@dataclass(frozen=True)
class Call:
    func: str  # rf | qrf | binom
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Prod:
    var: str
    lo: "Expr"
    hi: "Expr"
    body: "Expr"


Expr = Lit | Var | Neg | Add | Sub | Mul | Div | Pow | Call | Prod

FUNCTIONS = {"rf": 2, "qrf": 3, "binom": 2}


# --- Tokenizer --------------------------------------------------------------

@dataclass(frozen=True)
class _Tok:
    kind: str  # int | name | op | end
    text: str
    line: int
    column: int


_OPS = set("+-*/^(),")


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            toks.append(_Tok("op", ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Tok("end", "", line, col))
    return toks


# --- Parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.pos = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.pos]

    def _take_op(self, *ops: str) -> str | None:
        if self.cur.kind == "op" and self.cur.text in ops:
            text = self.cur.text
            self.pos += 1
            return text
        return None

    def _expect_op(self, op: str) -> None:
        if not self._take_op(op):
            t = self.cur
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.column,
                             expected=(repr(op),))

    def expr(self) -> Expr:
        node = self.term()
        while (op := self._take_op("+", "-")) is not None:
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.factor()
        while (op := self._take_op("*", "/")) is not None:
            right = self.factor()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def factor(self) -> Expr:
        if self._take_op("-"):
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._take_op("^"):
            return Pow(base, self.factor())
        return base

    def atom(self) -> Expr:
        t = self.cur
        if t.kind == "int":
            self.pos += 1
            return Lit(Fraction(int(t.text)))
        if t.kind == "name":
            self.pos += 1
            if self.cur.kind == "op" and self.cur.text == "(":
                return self._call(t)
            return Var(t.text)
        if self._take_op("("):
            node = self.expr()
            self._expect_op(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.column,
                         expected=("a number", "a name", "'('"))

    def _call(self, name_tok: _Tok) -> Expr:
        name = name_tok.text
        self._expect_op("(")
        if name == "prod":
            binder = self.cur
            if binder.kind != "name":
                raise ParseError("prod binder must be a name", binder.line, binder.column,
                                 expected=("a name",))
            self.pos += 1
            self._expect_op(",")
            lo = self.expr()
            self._expect_op(",")
            hi = self.expr()
            self._expect_op(",")
            body = self.expr()
            self._expect_op(")")
            return Prod(binder.text, lo, hi, body)
        if name not in FUNCTIONS:
            raise ParseError(f"unknown function {name!r}", name_tok.line, name_tok.column,
                             expected=tuple(sorted(FUNCTIONS) + ["prod"]))
        args = [self.expr()]
        while self._take_op(","):
            args.append(self.expr())
        self._expect_op(")")
        if len(args) != FUNCTIONS[name]:
            raise ParseError(f"{name} takes {FUNCTIONS[name]} arguments, got {len(args)}",
                             name_tok.line, name_tok.column)
        return Call(name, tuple(args))


def parse(text: str) -> Expr:
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    tail = parser.cur
    if tail.kind != "end":
        raise ParseError(f"trailing input {tail.text!r}", tail.line, tail.column,
                         expected=("end of input",))
    return node


# --- Printing ----------------------------------------------------------------

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _PREC_ADD
    if isinstance(e, (Mul, Div)):
        return _PREC_MUL
    if isinstance(e, Neg):
        return _PREC_NEG
    if isinstance(e, Pow):
        return _PREC_POW
    return _PREC_ATOM


def to_source(e: Expr) -> str:
    """Minimal-parentheses rendering; parse(to_source(e)) == e structurally."""

    def wrap(child: Expr, minimum: int) -> str:
        text = to_source(child)
        return f"({text})" if _prec(child) < minimum else text

    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return "-" + wrap(e.arg, _PREC_NEG)
    if isinstance(e, Add):
        return f"{wrap(e.left, _PREC_ADD)} + {wrap(e.right, _PREC_MUL)}"
    if isinstance(e, Sub):
        return f"{wrap(e.left, _PREC_ADD)} - {wrap(e.right, _PREC_MUL)}"
    if isinstance(e, Mul):
        return f"{wrap(e.left, _PREC_MUL)}*{wrap(e.right, _PREC_NEG)}"
    if isinstance(e, Div):
        return f"{wrap(e.left, _PREC_MUL)}/{wrap(e.right, _PREC_NEG)}"
    if isinstance(e, Pow):
        return f"{wrap(e.base, _PREC_ATOM)}^{wrap(e.exponent, _PREC_NEG)}"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(to_source(a) for a in e.args)})"
    if isinstance(e, Prod):
        return f"prod({e.var}, {to_source(e.lo)}, {to_source(e.hi)}, {to_source(e.body)})"
    raise TypeError(f"not an Expr: {e!r}")


def free_vars(e: Expr) -> set[str]:
    if isinstance(e, Lit):
        return set()
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Neg):
        return free_vars(e.arg)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Pow):
        return free_vars(e.base) | free_vars(e.exponent)
    if isinstance(e, Call):
        out: set[str] = set()
        for a in e.args:
            out |= free_vars(a)
        return out
    if isinstance(e, Prod):
        return free_vars(e.lo) | free_vars(e.hi) | (free_vars(e.body) - {e.var})
    raise TypeError(f"not an Expr: {e!r}")


# --- Evaluation ---------------------------------------------------------------

def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegerExponent(f"{what} must be an integer, got {value}")
    return int(value)


def evaluate(e: Expr, env: Mapping[str, Fraction]) -> Fraction:
    """Exact evaluation; DivisionByZero marks the point inadmissible."""
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundVariable(e.name) from None
    if isinstance(e, Neg):
        return -evaluate(e.arg, env)
    if isinstance(e, Add):
        return evaluate(e.left, env) + evaluate(e.right, env)
    if isinstance(e, Sub):
        return evaluate(e.left, env) - evaluate(e.right, env)
    if isinstance(e, Mul):
        return evaluate(e.left, env) * evaluate(e.right, env)
    if isinstance(e, Div):
        return rat_div(evaluate(e.left, env), evaluate(e.right, env))
    if isinstance(e, Pow):
        exponent = _as_int(evaluate(e.exponent, env), "exponent")
        return rat_pow(evaluate(e.base, env), exponent)
    if isinstance(e, Call):
        args = [evaluate(a, env) for a in e.args]
        if e.func == "rf":
            m = _as_int(args[1], "rf count")
            if m < 0:
                raise NonIntegerExponent("rf count must be non-negative")
            return rising_factorial(args[0], m)
        if e.func == "qrf":
            m = _as_int(args[2], "qrf count")
            if m < 0:
                raise NonIntegerExponent("qrf count must be non-negative")
            return q_rising_factorial(args[0], args[1], m)
        if e.func == "binom":
            b = _as_int(args[1], "binom lower index")
            if b < 0:
                raise NonIntegerExponent("binom lower index must be non-negative")
            num = ONE
            for i in range(b):
                num *= args[0] - i
            return num / rising_factorial(ONE, b)
        raise TypeError(f"unknown function {e.func}")
    if isinstance(e, Prod):
        lo = _as_int(evaluate(e.lo, env), "prod lower bound")
        hi = _as_int(evaluate(e.hi, env), "prod upper bound")
        inner = dict(env)

        def body(j: int) -> Fraction:
            inner[e.var] = Fraction(j)
            return evaluate(e.body, inner)

        return prod_range(body, lo, hi)
    raise TypeError(f"not an Expr: {e!r}")


# --- Identity config files -----------------------------------------------------

_SECTIONS = ("name", "params", "require", "lhs", "range", "rhs", "cert_u", "cert_v")
_RESERVED = {"n", "k", "rf", "qrf", "prod", "binom"}


@dataclass(frozen=True)
class IdentityConfig:
    name: str
    params: tuple[str, ...]
    require: tuple[Expr, ...]
    lhs: Expr
    range_lo: Expr
    range_hi: Expr
    rhs: Expr
    cert_u: Expr | None
    cert_v: Expr | None


def parse_config(text: str) -> IdentityConfig:
    sections: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise SchemaError(f"line {lineno}: expected 'section: value'")
        key, value = line.split(":", 1)
        key = key.strip()
        if key not in _SECTIONS:
            raise SchemaError(f"line {lineno}: unknown section {key!r}")
        if key in sections:
            raise SchemaError(f"line {lineno}: duplicate section {key!r}")
        sections[key] = value.strip()

    for required in ("name", "lhs", "range", "rhs"):
        if required not in sections:
            raise SchemaError(f"missing required section {required!r}")
    if ("cert_u" in sections) != ("cert_v" in sections):
        raise SchemaError("cert_u and cert_v must be given together")

    name = sections["name"]
    if not name.isidentifier():
        raise SchemaError(f"name must be an identifier, got {name!r}")

    params: list[str] = []
    if sections.get("params"):
        for entry in sections["params"].split(","):
            pname = entry.strip()
            if not pname.isidentifier() or pname in _RESERVED:
                raise SchemaError(f"bad parameter name {pname!r}")
            if pname in params:
                raise SchemaError(f"duplicate parameter {pname!r}")
            params.append(pname)

    require = tuple(parse(chunk) for chunk in sections["require"].split(",")) \
        if sections.get("require") else ()

    if ".." not in sections["range"]:
        raise SchemaError("range must be 'LO .. HI'")
    lo_text, hi_text = sections["range"].split("..", 1)

    config = IdentityConfig(
        name=name,
        params=tuple(params),
        require=require,
        lhs=parse(sections["lhs"]),
        range_lo=parse(lo_text),
        range_hi=parse(hi_text),
        rhs=parse(sections["rhs"]),
        cert_u=parse(sections["cert_u"]) if "cert_u" in sections else None,
        cert_v=parse(sections["cert_v"]) if "cert_v" in sections else None,
    )

    scope_nk = set(params) | {"n", "k"}
    scope_n = set(params) | {"n"}
    checks = [("lhs", config.lhs, scope_nk), ("rhs", config.rhs, scope_n),
              ("range", config.range_lo, scope_n), ("range", config.range_hi, scope_n)]
    checks += [("require", e, scope_n) for e in config.require]
    if config.cert_u is not None:
        checks += [("cert_u", config.cert_u, scope_nk), ("cert_v", config.cert_v, scope_nk)]
    for where, expr, scope in checks:
        unbound = free_vars(expr) - scope
        if unbound:
            raise SchemaError(f"{where}: unbound variable(s) {sorted(unbound)}")
    return config


def config_to_identity(config: IdentityConfig, n_max: int = 10) -> IdentityDef:
    """An IdentityDef backed by config expressions, usable by every verifier."""

    def env_of(params: Mapping[str, object], **indices: int) -> dict[str, Fraction]:
        env = {name: value for name, value in params.items()}
        env.update({name: Fraction(value) for name, value in indices.items()})
        return env

    def term(n: int, k: int, params: Mapping[str, object]) -> Fraction:
        return evaluate(config.lhs, env_of(params, n=n, k=k))

    def rhs(n: int, params: Mapping[str, object]) -> Fraction:
        env = env_of(params, n=n)
        for expr in config.require:
            if evaluate(expr, env) == 0:
                raise DivisionByZero(f"requirement {to_source(expr)} = 0")
        return evaluate(config.rhs, env)

    def sum_range(n: int) -> tuple[int, int]:
        env = {"n": Fraction(n)}
        lo = evaluate(config.range_lo, env)
        hi = evaluate(config.range_hi, env)
        return _as_int(lo, "range bound"), _as_int(hi, "range bound")

    certificate = None
    if config.cert_u is not None and config.cert_v is not None:
        u_expr, v_expr = config.cert_u, config.cert_v
        certificate = Certificate(
            u=lambda n, k, params: evaluate(u_expr, env_of(params, n=n, k=k)),
            v=lambda n, k, params: evaluate(v_expr, env_of(params, n=n, k=k)),
        )

    return IdentityDef(
        key=config.name,
        citation=f"user-defined identity '{config.name}'",
        params=tuple(Param(p) for p in config.params),
        term=term,
        rhs=rhs,
        sum_range=sum_range,
        certificate=certificate,
        terminating=certificate is not None,
        n_max=n_max,
    )


def load_identity_config(path: str | Path, n_max: int = 10) -> IdentityDef:
    """Parse a config file into a corpus-compatible IdentityDef."""
    text = Path(path).read_text(encoding="utf-8")
    return config_to_identity(parse_config(text), n_max=n_max)
