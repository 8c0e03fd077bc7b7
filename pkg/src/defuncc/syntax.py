"""Shared term syntax for the three calculi plus contexts and binding operations.

One node family covers all calculi; each kernel restricts the constructors it
accepts.  Source terms never contain Label; defunctionalized terms never
contain Lam or ESubst; the explicit-substitution calculus is the source
calculus plus ESubst nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Universe:
    level: int


@dataclass(frozen=True)
class Pi:
    binder: str
    domain: "Term"
    codomain: "Term"


@dataclass(frozen=True)
class Lam:
    binder: str
    domain: "Term"
    body: "Term"
    # Provenance only (parser position); never affects equality or typing.
    tag: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class NatType:
    pass


@dataclass(frozen=True)
class NatLit:
    value: int


@dataclass(frozen=True)
class Add:
    lhs: "Term"
    rhs: "Term"


@dataclass(frozen=True)
class Label:
    """A first-class function label applied to its closure arguments."""

    label_id: int
    args: tuple["Term", ...] = ()


@dataclass(frozen=True)
class SBind:
    """One entry of a suspended substitution: name, declared type, value.

    Within a suspension node, an entry's domain may mention the names of
    earlier entries (telescope scoping); every value lives in the scope
    outside the node.
    """

    name: str
    domain: "Term"
    value: "Term"


@dataclass(frozen=True)
class ESubst:
    """Suspended parallel substitution subject{x1:A1 |-> N1, ..., xk:Ak |-> Nk}.

    The names bind in the subject (and in later domains); they are distinct
    and never scope over the values.
    """

    subject: "Term"
    bindings: tuple[SBind, ...]


Term = Union[Var, Universe, Pi, Lam, App, NatType, NatLit, Add, Label, ESubst]

NAT = NatType()


def is_cc_term(t: Term) -> bool:
    """True if t uses only source-calculus constructors (no labels)."""
    match t:
        case Var() | Universe() | NatType() | NatLit():
            return True
        case Pi(_, a, b) | App(a, b) | Add(a, b):
            return is_cc_term(a) and is_cc_term(b)
        case Lam(_, a, b):
            return is_cc_term(a) and is_cc_term(b)
        case ESubst():
            return False
        case Label():
            return False
    raise TypeError(f"not a term: {t!r}")


def is_dcc_term(t: Term) -> bool:
    """True if t uses only target-calculus constructors (no lambdas)."""
    match t:
        case Var() | Universe() | NatType() | NatLit():
            return True
        case Pi(_, a, b) | App(a, b) | Add(a, b):
            return is_dcc_term(a) and is_dcc_term(b)
        case Label(_, args):
            return all(is_dcc_term(a) for a in args)
        case Lam() | ESubst():
            return False
    raise TypeError(f"not a term: {t!r}")


def has_esubst(t: Term) -> bool:
    match t:
        case ESubst():
            return True
        case Pi(_, a, b) | App(a, b) | Add(a, b) | Lam(_, a, b):
            return has_esubst(a) or has_esubst(b)
        case Label(_, args):
            return any(has_esubst(a) for a in args)
        case _:
            return False


# ---------------------------------------------------------------------------
# Free variables


def free_vars(t: Term) -> tuple[str, ...]:
    """Free variable names in first-occurrence (left-to-right) order."""
    out: list[str] = []
    seen: set[str] = set()

    def walk(t: Term, bound: frozenset[str]) -> None:
        match t:
            case Var(name):
                if name not in bound and name not in seen:
                    seen.add(name)
                    out.append(name)
            case Universe() | NatType() | NatLit():
                pass
            case Pi(binder, domain, codomain):
                walk(domain, bound)
                walk(codomain, bound | {binder})
            case Lam(binder, domain, body):
                walk(domain, bound)
                walk(body, bound | {binder})
            case App(fn, arg):
                walk(fn, bound)
                walk(arg, bound)
            case Add(lhs, rhs):
                walk(lhs, bound)
                walk(rhs, bound)
            case Label(_, args):
                for a in args:
                    walk(a, bound)
            case ESubst(subject, bindings):
                inner = bound
                for sb in bindings:
                    walk(sb.domain, inner)
                    walk(sb.value, bound)
                    inner = inner | {sb.name}
                walk(subject, inner)

    walk(t, frozenset())
    return tuple(out)


def free_var_set(t: Term) -> frozenset[str]:
    return frozenset(free_vars(t))


def fresh_name(base: str, avoid: set[str] | frozenset[str]) -> str:
    """base if unused, else base with primes appended until unused."""
    candidate = base
    while candidate in avoid:
        candidate += "'"
    return candidate


# ---------------------------------------------------------------------------
# Substitution

Mapping = dict[str, Term]


def _narrow(mapping: Mapping, t: Term) -> Mapping:
    """Restrict a substitution to the keys actually free in t."""
    fv = free_var_set(t)
    return {k: v for k, v in mapping.items() if k in fv}


def _under_binder(binder: str, body: Term, mapping: Mapping) -> tuple[str, Term]:
    """Apply mapping below a binder, freshening it to avoid capture."""
    inner = {k: v for k, v in mapping.items() if k != binder}
    inner = _narrow(inner, body)
    if not inner:
        return binder, body
    clash = any(binder in free_var_set(v) for v in inner.values())
    if clash:
        avoid = set().union(*(free_var_set(v) for v in inner.values()))
        avoid |= free_var_set(body)
        avoid |= set(inner)
        fresh = fresh_name(binder, avoid)
        body = _subst(body, {binder: Var(fresh)})
        binder = fresh
    return binder, _subst(body, inner)


def _subst_suspension(
    bindings: tuple[SBind, ...], subject: Term, mapping: Mapping
) -> tuple[tuple[SBind, ...], Term]:
    """Apply mapping to a suspension node: values see the outer scope in
    full; domains and the subject see it below the binding names."""
    vals2 = [_subst(sb.value, mapping) for sb in bindings]
    binds = list(bindings)
    subj = subject
    out: list[SBind] = []
    inner = dict(mapping)
    for i, _ in enumerate(binds):
        sb = binds[i]
        dom2 = _subst(sb.domain, inner)
        name = sb.name
        nxt = {k: v for k, v in inner.items() if k != name}
        if any(name in free_var_set(v) for v in nxt.values()):
            avoid = set().union(*(free_var_set(v) for v in nxt.values()))
            avoid |= free_var_set(subj) | set(nxt) | {name}
            for later in binds[i + 1 :]:
                avoid |= free_var_set(later.domain) | {later.name}
            fresh = fresh_name(name, avoid)
            ren = {name: Var(fresh)}
            for j in range(i + 1, len(binds)):
                binds[j] = SBind(
                    binds[j].name, _subst(binds[j].domain, ren), binds[j].value
                )
            subj = _subst(subj, ren)
            name = fresh
        out.append(SBind(name, dom2, vals2[i]))
        inner = nxt
    return tuple(out), _subst(subj, inner)


def _subst(t: Term, mapping: Mapping) -> Term:
    mapping = _narrow(mapping, t)
    if not mapping:
        return t
    match t:
        case Var(name):
            return mapping.get(name, t)
        case Universe() | NatType() | NatLit():
            return t
        case Pi(binder, domain, codomain):
            domain2 = _subst(domain, mapping)
            binder2, codomain2 = _under_binder(binder, codomain, mapping)
            return Pi(binder2, domain2, codomain2)
        case Lam(binder, domain, body, tag):
            domain2 = _subst(domain, mapping)
            binder2, body2 = _under_binder(binder, body, mapping)
            return Lam(binder2, domain2, body2, tag)
        case App(fn, arg):
            return App(_subst(fn, mapping), _subst(arg, mapping))
        case Add(lhs, rhs):
            return Add(_subst(lhs, mapping), _subst(rhs, mapping))
        case Label(label_id, args):
            return Label(label_id, tuple(_subst(a, mapping) for a in args))
        case ESubst(subject, bindings):
            bindings2, subject2 = _subst_suspension(bindings, subject, mapping)
            return ESubst(subject2, bindings2)
    raise TypeError(f"not a term: {t!r}")


def subst_many(t: Term, mapping: Mapping) -> Term:
    """Simultaneous capture-avoiding substitution of terms for free variables."""
    return _subst(t, dict(mapping))


def subst(t: Term, name: str, value: Term) -> Term:
    return subst_many(t, {name: value})


def rename_free(t: Term, old: str, new: str) -> Term:
    """Rename a free variable (a capture-avoiding substitution of a name)."""
    return _subst(t, {old: Var(new)})


# ---------------------------------------------------------------------------
# Alpha equivalence


def alpha_eq(a: Term, b: Term, pairs: tuple[tuple[str, str], ...] = ()) -> bool:
    """Structural equality modulo bound-variable names.

    `pairs` pre-identifies free names of the left term with free names of the
    right (used when comparing open components of label entries).
    """
    enva = {x: i for i, (x, _) in enumerate(pairs)}
    envb = {y: i for i, (_, y) in enumerate(pairs)}
    return _aeq(a, b, enva, envb, len(pairs))


def _aeq(a: Term, b: Term, enva: dict[str, int], envb: dict[str, int], depth: int) -> bool:
    match a, b:
        case Var(x), Var(y):
            if x in enva or y in envb:
                return enva.get(x) == envb.get(y) and enva.get(x) is not None
            return x == y
        case Universe(i), Universe(j):
            return i == j
        case NatType(), NatType():
            return True
        case NatLit(m), NatLit(n):
            return m == n
        case Pi(x, a1, b1), Pi(y, a2, b2):
            return _aeq(a1, a2, enva, envb, depth) and _aeq(
                b1, b2, {**enva, x: depth}, {**envb, y: depth}, depth + 1
            )
        case Lam(x, a1, b1), Lam(y, a2, b2):
            return _aeq(a1, a2, enva, envb, depth) and _aeq(
                b1, b2, {**enva, x: depth}, {**envb, y: depth}, depth + 1
            )
        case App(f1, x1), App(f2, x2):
            return _aeq(f1, f2, enva, envb, depth) and _aeq(x1, x2, enva, envb, depth)
        case Add(l1, r1), Add(l2, r2):
            return _aeq(l1, l2, enva, envb, depth) and _aeq(r1, r2, enva, envb, depth)
        case Label(i, args1), Label(j, args2):
            return (
                i == j
                and len(args1) == len(args2)
                and all(_aeq(p, q, enva, envb, depth) for p, q in zip(args1, args2))
            )
        case ESubst(m1, bs1), ESubst(m2, bs2):
            if len(bs1) != len(bs2):
                return False
            ea, eb, d = enva, envb, depth
            for sb1, sb2 in zip(bs1, bs2):
                if not _aeq(sb1.domain, sb2.domain, ea, eb, d):
                    return False
                if not _aeq(sb1.value, sb2.value, enva, envb, depth):
                    return False
                ea = {**ea, sb1.name: d}
                eb = {**eb, sb2.name: d}
                d += 1
            return _aeq(m1, m2, ea, eb, d)
        case _:
            return False


# ---------------------------------------------------------------------------
# Canonical (de Bruijn style) serialization; used for label identity


def canon(t: Term, env: dict[str, int] | None = None, depth: int = 0):
    """Hashable alpha-invariant shape of a term.

    Bound names become binding levels; free names stay nominal; labels stay
    nominal by id.
    """
    env = env or {}

    def go(t: Term, env: dict[str, int], depth: int):
        match t:
            case Var(name):
                if name in env:
                    return ("b", env[name])
                return ("f", name)
            case Universe(level):
                return ("U", level)
            case NatType():
                return ("nat",)
            case NatLit(value):
                return ("lit", value)
            case Pi(binder, domain, codomain):
                return (
                    "pi",
                    go(domain, env, depth),
                    go(codomain, {**env, binder: depth}, depth + 1),
                )
            case Lam(binder, domain, body):
                return (
                    "lam",
                    go(domain, env, depth),
                    go(body, {**env, binder: depth}, depth + 1),
                )
            case App(fn, arg):
                return ("app", go(fn, env, depth), go(arg, env, depth))
            case Add(lhs, rhs):
                return ("add", go(lhs, env, depth), go(rhs, env, depth))
            case Label(label_id, args):
                return ("label", label_id, tuple(go(a, env, depth) for a in args))
            case ESubst(subject, bindings):
                parts = []
                env2, d = env, depth
                for sb in bindings:
                    parts.append((go(sb.domain, env2, d), go(sb.value, env, depth)))
                    env2 = {**env2, sb.name: d}
                    d += 1
                return ("esub", tuple(parts), go(subject, env2, d))
        raise TypeError(f"not a term: {t!r}")

    return go(t, env, depth)


# ---------------------------------------------------------------------------
# Type contexts


@dataclass(frozen=True)
class Ctx:
    """An ordered telescope of (name, type) assumptions; names are distinct."""

    entries: tuple[tuple[str, Term], ...] = ()

    def lookup(self, name: str) -> Term | None:
        for n, ty in self.entries:
            if n == name:
                return ty
        return None

    def extend(self, name: str, ty: Term) -> "Ctx":
        if self.lookup(name) is not None:
            raise ValueError(f"context already binds {name!r}")
        return Ctx(self.entries + ((name, ty),))

    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.entries)

    def __contains__(self, name: str) -> bool:
        return self.lookup(name) is not None

    def __iter__(self) -> Iterator[tuple[str, Term]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


# ---------------------------------------------------------------------------
# Label contexts


@dataclass(frozen=True)
class LabelEntry:
    """l(x1:A1,...,xn:An, x:A -> M:B): a named function definition.

    The telescope binds the closure variables; arg_name binds the function
    argument in body and ret_type.
    """

    label_id: int
    telescope: tuple[tuple[str, Term], ...]
    arg_name: str
    arg_type: Term
    body: Term
    ret_type: Term

    def arity(self) -> int:
        return len(self.telescope)


def entry_alpha_eq(e1: LabelEntry, e2: LabelEntry) -> bool:
    """Entry equality modulo telescope and argument names (ids must agree)."""
    if e1.label_id != e2.label_id or e1.arity() != e2.arity():
        return False
    pairs: tuple[tuple[str, str], ...] = ()
    for (x1, a1), (x2, a2) in zip(e1.telescope, e2.telescope):
        if not alpha_eq(a1, a2, pairs):
            return False
        pairs += ((x1, x2),)
    if not alpha_eq(e1.arg_type, e2.arg_type, pairs):
        return False
    pairs += ((e1.arg_name, e2.arg_name),)
    return alpha_eq(e1.body, e2.body, pairs) and alpha_eq(e1.ret_type, e2.ret_type, pairs)


def entry_canon(e: LabelEntry):
    """Alpha-invariant shape of an entry, keyed for minting and comparison."""
    env: dict[str, int] = {}
    parts = []
    for i, (x, a) in enumerate(e.telescope):
        parts.append(canon(a, env, i))
        env[x] = i
    n = len(e.telescope)
    arg_ty = canon(e.arg_type, env, n)
    env2 = {**env, e.arg_name: n}
    return (
        tuple(parts),
        arg_ty,
        canon(e.body, env2, n + 1),
        canon(e.ret_type, env2, n + 1),
    )


@dataclass(frozen=True)
class LabelCtx:
    """Ordered label definitions; later entries may reference earlier labels."""

    entries: tuple[LabelEntry, ...] = ()

    def lookup(self, label_id: int) -> LabelEntry | None:
        for e in self.entries:
            if e.label_id == label_id:
                return e
        return None

    def ids(self) -> tuple[int, ...]:
        return tuple(e.label_id for e in self.entries)

    def __contains__(self, label_id: int) -> bool:
        return self.lookup(label_id) is not None

    def __iter__(self) -> Iterator[LabelEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)
