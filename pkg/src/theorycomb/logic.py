"""Syntax layer: signatures, terms, literals, cubes, arrangements, builders,
an s-expression parser/printer, DNF expansion and purification."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import FormulaSyntaxError, LimitExceeded, TheoryCombError, UnknownSymbolError

# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class Signature:
    """Unary function symbols, constants and indexed nullary predicate families.

    Equality is implicit. A predicate family such as ``"P"`` stands for the
    infinite collection P_1, P_2, ...
    """

    name: str
    functions: frozenset = frozenset()
    constants: frozenset = frozenset()
    pred_families: frozenset = frozenset()

    def symbols(self) -> frozenset:
        return self.functions | self.constants | self.pred_families

    def disjoint(self, other: "Signature") -> bool:
        return not (self.symbols() & other.symbols())

    def __or__(self, other: "Signature") -> "Signature":
        return Signature(
            f"{self.name}+{other.name}",
            self.functions | other.functions,
            self.constants | other.constants,
            self.pred_families | other.pred_families,
        )


SIGMA_EMPTY = Signature("empty")
SIGMA_S = Signature("s", functions=frozenset({"s"}))
SIGMA_P = Signature("P", pred_families=frozenset({"P"}))
SIGMA_TA = Signature("ta", functions=frozenset({"t"}), constants=frozenset({"a"}))

# ---------------------------------------------------------------------------
# Terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    func: str
    arg: "Term"


Term = Union[Var, Const, App]


def iterate(func: str, n: int, base: Term) -> Term:
    """The term func^n(base); func^0(base) is base itself."""
    if n < 0:
        raise ValueError("iteration count must be non-negative")
    term = base
    for _ in range(n):
        term = App(func, term)
    return term


def peel(term: Term) -> tuple[Term, int]:
    """Split a term into its innermost variable/constant and the number of applications."""
    depth = 0
    while isinstance(term, App):
        term = term.arg
        depth += 1
    return term, depth


def term_funcs(term: Term) -> list[str]:
    out = []
    while isinstance(term, App):
        out.append(term.func)
        term = term.arg
    return out


# ---------------------------------------------------------------------------
# Atoms, literals and formulas


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Pred:
    index: int
    family: str = "P"

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("predicate index must be a positive integer")


Atom = Union[Eq, Pred]


@dataclass(frozen=True)
class Lit:
    atom: Atom
    positive: bool = True

    def negate(self) -> "Lit":
        return Lit(self.atom, not self.positive)


@dataclass(frozen=True)
class Cube:
    """Conjunction of literals; the empty cube is true."""

    literals: tuple = ()

    def __and__(self, other: "Cube") -> "Cube":
        return Cube(self.literals + as_cube(other).literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Lit]:
        return iter(self.literals)


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


@dataclass(frozen=True)
class Not:
    arg: "Formula"


Formula = Union[Lit, Cube, And, Or, Not]
TRUE = Cube(())


def eq(lhs: Term, rhs: Term) -> Lit:
    return Lit(Eq(lhs, rhs), True)


def neq(lhs: Term, rhs: Term) -> Lit:
    return Lit(Eq(lhs, rhs), False)


def pred(index: int, positive: bool = True, family: str = "P") -> Lit:
    return Lit(Pred(index, family), positive)


def as_cube(obj) -> Cube:
    if isinstance(obj, Cube):
        return obj
    if isinstance(obj, Lit):
        return Cube((obj,))
    if isinstance(obj, (list, tuple)):
        return Cube(tuple(obj))
    raise TypeError(f"not a cube: {obj!r}")


def conj(*parts) -> Cube:
    lits: list = []
    for p in parts:
        lits.extend(as_cube(p).literals)
    return Cube(tuple(lits))


def is_cube_like(phi) -> bool:
    return isinstance(phi, (Cube, Lit))


# ---------------------------------------------------------------------------
# Symbol collection


def _walk_term(term: Term, out_vars: list, funcs: set, consts: set) -> None:
    while isinstance(term, App):
        funcs.add(term.func)
        term = term.arg
    if isinstance(term, Var):
        if term.name not in out_vars:
            out_vars.append(term.name)
    else:
        consts.add(term.name)


def literals_of(phi: Formula) -> Iterator[Lit]:
    if isinstance(phi, Lit):
        yield phi
    elif isinstance(phi, Cube):
        yield from phi.literals
    elif isinstance(phi, (And, Or)):
        for a in phi.args:
            yield from literals_of(a)
    elif isinstance(phi, Not):
        yield from literals_of(phi.arg)
    else:
        raise TypeError(f"not a formula: {phi!r}")


@dataclass
class Symbols:
    variables: list = field(default_factory=list)
    functions: set = field(default_factory=set)
    constants: set = field(default_factory=set)
    predicates: set = field(default_factory=set)  # (family, index)


def symbols_of(phi: Formula) -> Symbols:
    s = Symbols()
    for lit in literals_of(phi):
        atom = lit.atom
        if isinstance(atom, Eq):
            _walk_term(atom.lhs, s.variables, s.functions, s.constants)
            _walk_term(atom.rhs, s.variables, s.functions, s.constants)
        else:
            s.predicates.add((atom.family, atom.index))
    return s


def vars_of(phi: Formula) -> tuple:
    """Variable names in order of first occurrence."""
    return tuple(symbols_of(phi).variables)


def term_vars(term: Term) -> list:
    out: list = []
    _walk_term(term, out, set(), set())
    return out


def check_signature(phi: Formula, sig: Signature) -> None:
    s = symbols_of(phi)
    for f in sorted(s.functions - sig.functions):
        raise UnknownSymbolError(f, f"not a function of signature {sig.name}")
    for c in sorted(s.constants - sig.constants):
        raise UnknownSymbolError(c, f"not a constant of signature {sig.name}")
    for fam, _ in sorted(s.predicates):
        if fam not in sig.pred_families:
            raise UnknownSymbolError(fam, f"not a predicate family of signature {sig.name}")


# ---------------------------------------------------------------------------
# Fresh variables

_fresh_counter = itertools.count(1)


def fresh_var() -> Var:
    return Var(f"_v{next(_fresh_counter)}")


def fresh_vars(n: int) -> list:
    return [fresh_var() for _ in range(n)]


def reset_fresh(start: int = 1) -> None:
    """Restart fresh-name numbering (used by the CLI for reproducible output)."""
    global _fresh_counter
    _fresh_counter = itertools.count(start)


# ---------------------------------------------------------------------------
# Builders


def build_distinct(variables: Sequence) -> Cube:
    """Pairwise disequalities between the given variables."""
    vs = [v if isinstance(v, (Var, Const, App)) else Var(v) for v in variables]
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate variable in distinctness constraint")
    return Cube(tuple(neq(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))))


def build_fixpoint_count(n: int, func: str = "s") -> Cube:
    """n fresh pairwise-distinct variables, each a fixpoint of ``func``."""
    if n < 1:
        raise ValueError("n must be positive")
    xs = fresh_vars(n)
    fix = tuple(eq(App(func, x), x) for x in xs)
    return Cube(build_distinct(xs).literals + fix)


def build_dif(n: int, base: Term, func: str = "t") -> Cube:
    if n < 2:
        raise ValueError("dif requires n >= 2")
    powers = [iterate(func, i, base) for i in range(n)]
    return Cube(tuple(neq(powers[i], powers[j]) for i in range(n) for j in range(i + 1, n)))


def build_orbit_formula(kind: str, n: int, base: Term, func: str = "t") -> Formula:
    """``dif`` or ``orb`` formulas describing the orbit of ``base`` under ``func``."""
    if kind == "dif":
        return build_dif(n, base, func)
    if kind != "orb":
        raise ValueError(f"unknown orbit formula kind {kind!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Cube((eq(App(func, base), base),))
    return And((build_dif(n, base, func), Not(build_dif(n + 1, base, func))))


def orb(n: int, base: Term | None = None, func: str = "t") -> Formula:
    return build_orbit_formula("orb", n, Const("a") if base is None else base, func)


# ---------------------------------------------------------------------------
# Arrangements

DEFAULT_ARRANGEMENT_LIMIT = 8


def restricted_growth_strings(n: int) -> Iterator[tuple]:
    """All restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, mx: int):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(mx + 2):
            rgs[i] = b
            yield from rec(i + 1, max(mx, b))

    rgs[0] = 0
    yield from rec(1, 0)


@dataclass(frozen=True)
class Arrangement:
    variables: tuple
    blocks: tuple  # tuple of tuples of variable names

    def __post_init__(self):
        flat = [v for b in self.blocks for v in b]
        if any(len(b) == 0 for b in self.blocks):
            raise ValueError("empty block")
        if sorted(flat) != sorted(self.variables) or len(set(flat)) != len(flat):
            raise ValueError("blocks must partition the variables")

    @classmethod
    def from_rgs(cls, variables: Sequence[str], rgs: Sequence[int]) -> "Arrangement":
        blocks: dict = {}
        for v, b in zip(variables, rgs):
            blocks.setdefault(b, []).append(v)
        return cls(tuple(variables), tuple(tuple(blocks[b]) for b in sorted(blocks)))

    def block_of(self, name: str) -> int:
        for i, b in enumerate(self.blocks):
            if name in b:
                return i
        raise KeyError(name)

    def __len__(self) -> int:
        return len(self.blocks)

    def to_cube(self) -> Cube:
        return arrangement_to_cube(self)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(b) + "}" for b in self.blocks) + "}"


def _names(variables: Iterable) -> tuple:
    out = []
    for v in variables:
        name = v.name if isinstance(v, Var) else v
        if name not in out:
            out.append(name)
    return tuple(out)


def enumerate_arrangements(variables: Iterable, limit: int = DEFAULT_ARRANGEMENT_LIMIT) -> Iterator[Arrangement]:
    """Every set partition of ``variables`` in restricted-growth-string order."""
    names = _names(variables)
    if len(names) > limit:
        raise LimitExceeded(f"{len(names)} variables exceed the arrangement limit {limit}")
    for rgs in restricted_growth_strings(len(names)):
        yield Arrangement.from_rgs(names, rgs)


def arrangement_to_cube(arr: Arrangement) -> Cube:
    vs = arr.variables
    block = {v: arr.block_of(v) for v in vs}
    lits = []
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            x, y = Var(vs[i]), Var(vs[j])
            lits.append(eq(x, y) if block[vs[i]] == block[vs[j]] else neq(x, y))
    return Cube(tuple(lits))


# ---------------------------------------------------------------------------
# Printing and parsing


def term_to_text(term: Term) -> str:
    if isinstance(term, App):
        return f"({term.func} {term_to_text(term.arg)})"
    return term.name


def _atom_text(atom: Atom) -> str:
    if isinstance(atom, Eq):
        return f"(= {term_to_text(atom.lhs)} {term_to_text(atom.rhs)})"
    return f"({atom.family} {atom.index})"


def to_text(phi: Formula) -> str:
    if isinstance(phi, Lit):
        a = _atom_text(phi.atom)
        return a if phi.positive else f"(not {a})"
    if isinstance(phi, Cube):
        if len(phi.literals) == 1:
            return to_text(phi.literals[0])
        return "(and" + "".join(" " + to_text(l) for l in phi.literals) + ")"
    if isinstance(phi, And):
        return "(and" + "".join(" " + to_text(a) for a in phi.args) + ")"
    if isinstance(phi, Or):
        return "(or" + "".join(" " + to_text(a) for a in phi.args) + ")"
    if isinstance(phi, Not):
        return f"(not {to_text(phi.arg)})"
    raise TypeError(f"not a formula: {phi!r}")


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")
_VAR_NAME = re.compile(r"[a-z][a-z0-9]*\Z")
_INTERNAL_VAR = re.compile(r"_v[0-9]+\Z")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:]
            if rest.strip():
                raise FormulaSyntaxError("unexpected character", pos)
            break
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature, allow_internal: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.sig = sig
        self.allow_internal = allow_internal

    def _peek(self):
        if self.i >= len(self.tokens):
            raise FormulaSyntaxError("unexpected end of input", len(self.text))
        return self.tokens[self.i]

    def _next(self):
        tok = self._peek()
        self.i += 1
        return tok

    def _expect(self, value: str):
        tok, pos = self._next()
        if tok != value:
            raise FormulaSyntaxError(f"expected {value!r}, found {tok!r}", pos)

    def parse_top(self) -> Formula:
        phi = self.formula()
        if self.i != len(self.tokens):
            raise FormulaSyntaxError("trailing input", self.tokens[self.i][1])
        return phi

    def formula(self) -> Formula:
        tok, pos = self._next()
        if tok == "true":
            return TRUE
        if tok != "(":
            raise FormulaSyntaxError(f"expected a formula, found {tok!r}", pos)
        head, hpos = self._next()
        if head == "=":
            lhs = self.term()
            rhs = self.term()
            self._expect(")")
            return Lit(Eq(lhs, rhs))
        if head in ("and", "or"):
            args = []
            while self._peek()[0] != ")":
                args.append(self.formula())
            self._next()
            if head == "or":
                return Or(tuple(args))
            if all(is_cube_like(a) for a in args):
                return conj(*args)
            return And(tuple(args))
        if head == "not":
            arg = self.formula()
            self._expect(")")
            if isinstance(arg, Cube) and len(arg.literals) == 1:
                arg = arg.literals[0]
            if isinstance(arg, Lit):
                return arg.negate()
            return Not(arg)
        if head in self.sig.pred_families:
            idx, ipos = self._next()
            if not idx.isdigit() or int(idx) < 1:
                raise FormulaSyntaxError(f"predicate index must be a positive integer, found {idx!r}", ipos)
            self._expect(")")
            return Lit(Pred(int(idx), head))
        if head in ("(", ")"):
            raise FormulaSyntaxError("expected a connective or atom", hpos)
        raise UnknownSymbolError(head, f"not a connective or predicate family of signature {self.sig.name}")

    def term(self) -> Term:
        tok, pos = self._next()
        if tok == "(":
            head, hpos = self._next()
            if head not in self.sig.functions:
                raise UnknownSymbolError(head, f"not a function of signature {self.sig.name}")
            arg = self.term()
            self._expect(")")
            return App(head, arg)
        if tok == ")":
            raise FormulaSyntaxError("expected a term", pos)
        if tok in self.sig.constants:
            return Const(tok)
        if tok in self.sig.functions:
            raise FormulaSyntaxError(f"function symbol {tok!r} used without argument", pos)
        if _VAR_NAME.match(tok) or (self.allow_internal and _INTERNAL_VAR.match(tok)):
            return Var(tok)
        raise FormulaSyntaxError(f"invalid variable name {tok!r}", pos)


def parse_formula(text: str, sig: Signature, allow_internal: bool = False) -> Formula:
    """Parse one s-expression formula over ``sig``."""
    return _Parser(text, sig, allow_internal).parse_top()


def parse_cube(text: str, sig: Signature, allow_internal: bool = False) -> Cube:
    phi = parse_formula(text, sig, allow_internal)
    if not is_cube_like(phi):
        raise FormulaSyntaxError("formula is not a conjunction of literals", 0)
    return as_cube(phi)


# ---------------------------------------------------------------------------
# DNF


def _nnf(phi: Formula, positive: bool) -> Formula:
    if isinstance(phi, Lit):
        return phi if positive else phi.negate()
    if isinstance(phi, Cube):
        lits = phi.literals
        if positive:
            return phi
        return Or(tuple(l.negate() for l in lits))
    if isinstance(phi, Not):
        return _nnf(phi.arg, not positive)
    if isinstance(phi, And):
        args = tuple(_nnf(a, positive) for a in phi.args)
        return And(args) if positive else Or(args)
    if isinstance(phi, Or):
        args = tuple(_nnf(a, positive) for a in phi.args)
        return Or(args) if positive else And(args)
    raise TypeError(f"not a formula: {phi!r}")


def _dnf_nnf(phi: Formula) -> list:
    if isinstance(phi, Lit):
        return [(phi,)]
    if isinstance(phi, Cube):
        return [phi.literals]
    if isinstance(phi, Or):
        out = []
        for a in phi.args:
            out.extend(_dnf_nnf(a))
        return out
    if isinstance(phi, And):
        parts = [_dnf_nnf(a) for a in phi.args]
        return [tuple(l for c in combo for l in c) for combo in itertools.product(*parts)]
    raise TypeError(f"unexpected node in NNF: {phi!r}")


def to_dnf(phi: Formula) -> list:
    """Disjunctive normal form as a list of cubes (empty list means false)."""
    return [Cube(c) for c in _dnf_nnf(_nnf(phi, True))]


# ---------------------------------------------------------------------------
# Purification


def _home(term: Term, sig1: Signature, sig2: Signature):
    """Which component owns the top symbol of ``term`` (None for variables)."""
    if isinstance(term, Var):
        return None
    sym = term.func if isinstance(term, App) else term.name
    if sym in sig1.functions or sym in sig1.constants:
        return 1
    if sym in sig2.functions or sym in sig2.constants:
        return 2
    raise UnknownSymbolError(sym, "belongs to neither signature")


def purify(mixed: Formula, sig1: Signature, sig2: Signature) -> tuple:
    """Split a mixed cube into two pure cubes sharing fresh abstraction variables.

    Pure-equality literals go to the first component.
    """
    if not sig1.disjoint(sig2):
        raise TheoryCombError("signatures are not disjoint")
    cube = as_cube(mixed)
    sides: dict = {1: [], 2: []}
    abstracted: dict = {}

    def pure(term: Term, side: int) -> Term:
        # Return a term pure in ``side`` equal to ``term``.
        h = _home(term, sig1, sig2)
        if h is None:
            return term
        if h != side:
            return name_of(term)
        if isinstance(term, App):
            return App(term.func, pure(term.arg, side))
        return term

    def name_of(term: Term) -> Var:
        if term in abstracted:
            return abstracted[term]
        h = _home(term, sig1, sig2)
        v = fresh_var()
        abstracted[term] = v
        sides[h].append(eq(v, pure(term, h)))
        return v

    for lit in cube.literals:
        atom = lit.atom
        if isinstance(atom, Pred):
            if atom.family in sig1.pred_families:
                sides[1].append(lit)
            elif atom.family in sig2.pred_families:
                sides[2].append(lit)
            else:
                raise UnknownSymbolError(atom.family, "belongs to neither signature")
            continue
        h1 = _home(atom.lhs, sig1, sig2)
        h2 = _home(atom.rhs, sig1, sig2)
        if h1 is None and h2 is None:
            side = 1
        elif h1 is None or h2 is None or h1 == h2:
            side = h1 or h2
        else:
            side = h1
        lhs = pure(atom.lhs, side)
        rhs = pure(atom.rhs, side)
        sides[side].append(Lit(Eq(lhs, rhs), lit.positive))

    phi1, phi2 = Cube(tuple(sides[1])), Cube(tuple(sides[2]))
    v2 = set(vars_of(phi2))
    shared = tuple(v for v in vars_of(phi1) if v in v2)
    return phi1, phi2, shared
