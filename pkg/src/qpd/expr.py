"""Surface syntax for algebra elements: tokenizer, parser, printer, evaluator.

Grammar (whitespace and newlines are ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' ['-'] INT)?
    atom    := INT | NAME | NAME '[' INT ',' INT ']' | call | '(' expr ')'
    call    := FUNC ['[' INT ',' INT ']'] '(' expr ')'

Negative exponents are accepted only on ``rho`` and ``hb``.  Printing inserts
the fewest parentheses that reparse to the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from qpd.errors import EvaluationError, ParseError, UnknownGeneratorError
from qpd.ncalgebra import U2_EXT, AlgebraMismatch, NCPoly, gl
from qpd.scalars import GaussRational

GENERATORS = ("t", "x", "y", "z", "rho")
SCALARS = ("hb", "i")
DERIVATIVES = ("dt", "dt0", "dx", "dy", "dz")
MATRIX_FUNCS = tuple(f"D{i}{j}" for i in (1, 2) for j in (1, 2)) + tuple(
    f"H{i}{j}" for i in range(1, 5) for j in range(1, 5)
)
INDEXED_FUNCS = ("d", "dh")
FUNCS = DERIVATIVES + MATRIX_FUNCS + INDEXED_FUNCS + ("lim",)
NEG_EXP_OK = ("rho", "hb")


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Indexed:
    name: str
    i: int
    j: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"
    index: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


Node = Union[Num, Sym, Indexed, Call, Neg, BinOp, Pow]


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


@dataclass(frozen=True)
class Token:
    kind: str  # INT NAME OP END
    text: str
    line: int
    col: int


def tokenize(src: str) -> List[Token]:
    out = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(src):
        line += src.count("\n", line_start, m.start())
        nl = src.rfind("\n", 0, m.start())
        line_start = max(line_start, nl + 1)
        col = m.start() - line_start + 1
        if m.lastindex == 1:
            out.append(Token("INT", m.group(), line, col))
        elif m.lastindex == 2:
            out.append(Token("NAME", m.group(), line, col))
        else:
            ch = m.group()
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", line, col)
            out.append(Token("OP", ch, line, col))
    line += src.count("\n", line_start)
    nl = src.rfind("\n")
    out.append(Token("END", "", line, len(src) - (nl + 1) + 1))
    return out


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_ATOM_START = ("INT", "NAME", "(", "-")


class _Parser:
    def __init__(self, tokens: List[Token], symbols: Iterable[str]):
        self.toks = tokens
        self.k = 0
        self.symbols = set(GENERATORS) | set(SCALARS) | set(symbols)

    @property
    def cur(self) -> Token:
        return self.toks[self.k]

    def error(self, expected, tok: Optional[Token] = None):
        tok = tok or self.cur
        what = "end of input" if tok.kind == "END" else repr(tok.text)
        raise ParseError(f"unexpected {what}", tok.line, tok.col, expected)

    def accept(self, text: str) -> bool:
        if self.cur.kind == "OP" and self.cur.text == text:
            self.k += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error([text])

    def integer(self) -> int:
        if self.cur.kind != "INT":
            self.error(["INT"])
        v = int(self.cur.text)
        self.k += 1
        return v

    def parse(self) -> Node:
        if self.cur.kind == "END":
            self.error(_ATOM_START)
        node = self.expr()
        if self.cur.kind != "END":
            self.error(["+", "-", "*", "/", "^", "end of input"])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.cur.kind == "OP" and self.cur.text in "+-":
            op = self.cur.text
            self.k += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.cur.kind == "OP" and self.cur.text in "*/":
            op = self.cur.text
            self.k += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.accept("^"):
            tok = self.cur
            neg = self.accept("-")
            if self.cur.kind != "INT":
                self.error(["INT"] if neg else ["INT", "-"])
            e = self.integer()
            if neg and e:
                if not (isinstance(base, Sym) and base.name in NEG_EXP_OK):
                    raise ParseError("negative exponents are allowed only on rho and hb", tok.line, tok.col)
                e = -e
            return Pow(base, e)
        return base

    def index_pair(self) -> Tuple[int, int]:
        self.expect("[")
        i = self.integer()
        self.expect(",")
        j = self.integer()
        self.expect("]")
        return i, j

    def atom(self) -> Node:
        tok = self.cur
        if tok.kind == "INT":
            self.k += 1
            return Num(int(tok.text))
        if tok.kind == "NAME":
            self.k += 1
            name = tok.text
            if name in FUNCS:
                index = self.index_pair() if name in INDEXED_FUNCS else None
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg, index)
            if name == "l":
                i, j = self.index_pair()
                if i < 1 or j < 1:
                    raise ParseError("gl indices start at 1", tok.line, tok.col)
                return Indexed("l", i, j)
            if name not in self.symbols:
                raise UnknownGeneratorError(
                    f"unknown generator {name!r}", tok.line, tok.col,
                    sorted(self.symbols) + ["l[i,j]"] + list(FUNCS),
                )
            return Sym(name)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        self.error(_ATOM_START)


def parse(src: str, symbols: Iterable[str] = ()) -> Node:
    """Parse ``src``; ``symbols`` adds identifiers beyond the standard generators."""
    return _Parser(tokenize(src), symbols).parse()


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_text(node: Node, ctx: int = 0) -> str:
    p = _prec(node)
    if isinstance(node, Num):
        s = str(node.value)
    elif isinstance(node, Sym):
        s = node.name
    elif isinstance(node, Indexed):
        s = f"{node.name}[{node.i},{node.j}]"
    elif isinstance(node, Call):
        idx = f"[{node.index[0]},{node.index[1]}]" if node.index else ""
        s = f"{node.func}{idx}({to_text(node.arg)})"
    elif isinstance(node, Neg):
        s = "-" + to_text(node.arg, 3)
    elif isinstance(node, Pow):
        s = f"{to_text(node.base, 5)}^{node.exp}"
    else:
        sep = f" {node.op} " if p == 1 else node.op
        s = to_text(node.left, p) + sep + to_text(node.right, p + 1)
    return f"({s})" if p < ctx else s


def roundtrip(src: str, symbols: Iterable[str] = ()) -> bool:
    tree = parse(src, symbols)
    return parse(to_text(tree), symbols) == tree


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _walk(node: Node):
    yield node
    for attr in ("arg", "left", "right", "base"):
        child = getattr(node, attr, None)
        if child is not None:
            yield from _walk(child)


def gl_rank(node: Node) -> Optional[int]:
    """N for expressions written in l[i,j] (at least 2), else None."""
    idx = []
    for n in _walk(node):
        if isinstance(n, Indexed):
            idx += [n.i, n.j]
        elif isinstance(n, Call) and n.index:
            idx += list(n.index)
    return max(2, max(idx)) if idx else None


def _apply(func: str, index, a: NCPoly) -> NCPoly:
    from qpd import qpdmap
    from qpd.qdouble import SHIFTED, STANDARD, act

    if func in DERIVATIVES:
        if a.algebra.kind == "GL":
            raise EvaluationError(f"{func} acts on t, x, y, z, rho; use d[i,j] on l[i,j]")
        return qpdmap.extract_qpd(func, a)
    if func == "lim":
        return a.classical_limit()
    if func in MATRIX_FUNCS:
        i, j = int(func[1]) - 1, int(func[2]) - 1
        m = qpdmap.dmat2(a) if func[0] == "D" else qpdmap.hatt4(a)
        return m[i, j]
    # d[i,j], dh[i,j] on gl(N)
    if a.algebra.kind != "GL":
        raise EvaluationError(f"{func}[i,j] acts on l[i,j] expressions")
    N = a.algebra.N
    i, j = index
    if not (1 <= i <= N and 1 <= j <= N):
        raise EvaluationError(f"index out of range for gl({N})")
    return act([(i, j)], a, N, SHIFTED if func == "dh" else STANDARD)


def evaluate(node: Node, env: Optional[Dict[str, object]] = None, algebra=None) -> NCPoly:
    """Value of ``node`` as an NCPoly.

    ``env`` maps extra symbol names to NCPoly values or scalars.  Without an
    explicit ``algebra`` the target is U(gl(N)) when ``l[i,j]`` occurs and the
    extended U(u(2)) otherwise.
    """
    env = env or {}
    if algebra is None:
        n = gl_rank(node)
        algebra = gl(n) if n else U2_EXT

    def lift(v):
        return v if isinstance(v, NCPoly) else algebra.const(v)

    def ev(nd: Node) -> NCPoly:
        if isinstance(nd, Num):
            return algebra.const(nd.value)
        if isinstance(nd, Sym):
            if nd.name in env:
                return lift(env[nd.name])
            if nd.name == "i":
                return algebra.const(GaussRational(0, 1))
            if nd.name == "hb":
                return algebra.hbar(1)
            if nd.name == "rho":
                if not algebra.has_rho:
                    raise EvaluationError("rho is not available in this algebra")
                return algebra.rho(1)
            if algebra.kind == "GL":
                raise EvaluationError(f"{nd.name} is not a generator of gl({algebra.N})")
            return algebra.gen(nd.name)
        if isinstance(nd, Indexed):
            if algebra.kind != "GL":
                raise EvaluationError("l[i,j] cannot be mixed with t, x, y, z, rho")
            return algebra.gen(f"l[{nd.i},{nd.j}]")
        if isinstance(nd, Neg):
            return -ev(nd.arg)
        if isinstance(nd, Pow):
            if isinstance(nd.base, Sym) and nd.base.name == "rho" and nd.base.name not in env:
                return algebra.rho(nd.exp)
            if isinstance(nd.base, Sym) and nd.base.name == "hb" and nd.base.name not in env:
                return algebra.hbar(nd.exp)
            return ev(nd.base) ** nd.exp
        if isinstance(nd, Call):
            return _apply(nd.func, nd.index, ev(nd.arg))
        left, right = ev(nd.left), ev(nd.right)
        if nd.op == "+":
            return left + right
        if nd.op == "-":
            return left - right
        if nd.op == "*":
            return left * right
        try:
            return left / right
        except ZeroDivisionError as exc:
            raise EvaluationError(f"cannot divide by {right}: only c*hb^k*rho^r is invertible") from exc

    try:
        return ev(node)
    except AlgebraMismatch as exc:
        raise EvaluationError(str(exc)) from exc


def evaluate_text(src: str, env: Optional[Dict[str, object]] = None, algebra=None) -> NCPoly:
    return evaluate(parse(src, env or ()), env, algebra)


def normalize(src: str) -> NCPoly:
    return evaluate_text(src).canonical()


def evaluate_generic(node: Node, atoms: Dict[str, object], one) -> object:
    """Evaluate over any commutative ring: ``atoms`` gives every symbol, ``one`` the unit."""

    def ev(nd: Node):
        if isinstance(nd, Num):
            return one * nd.value
        if isinstance(nd, Sym):
            if nd.name not in atoms:
                raise EvaluationError(f"{nd.name} has no value here")
            return atoms[nd.name]
        if isinstance(nd, Neg):
            return -ev(nd.arg)
        if isinstance(nd, Pow):
            if nd.exp < 0:
                raise EvaluationError("negative powers are not available here")
            return ev(nd.base) ** nd.exp
        if isinstance(nd, BinOp) and nd.op != "/":
            a, b = ev(nd.left), ev(nd.right)
            return a + b if nd.op == "+" else a - b if nd.op == "-" else a * b
        raise EvaluationError(f"{to_text(nd)} is not a polynomial expression")

    return ev(node)
