"""Constructors for the concrete group families.

Every constructor returns a :class:`~ncgraph.groups.FiniteGroup`. Groups given
by a cyclic-by-cyclic normal form are built by closure over that normal form;
matrix groups by closure inside GL(d, q); the two unitriangular-like families
``hanaki_theta`` and ``hanaki_p`` by enumerating their parameter tuples.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import GroupSizeError, ParameterError
from .fields import FieldSpec, find_irreducible, is_prime, prime_power
from .groups import (
    DEFAULT_ORDER_CAP,
    Context,
    FiniteGroup,
    closure_from_generators,
    direct_product,
    from_elements,
)


def _power_word(name: str, e: int) -> str:
    return "" if e == 0 else name if e == 1 else f"{name}^{e}"


def _word(*parts) -> str:
    return "".join(_power_word(n, e) for n, e in parts) or "1"


def _semidirect_cyclic(M: int, N: int, r: int, name: str, cap: int) -> FiniteGroup:
    """<a, b : a^M = b^N = 1, b a b^-1 = a^r>, elements a^i b^j as (i, j)."""
    if pow(r, N, M) != 1 % M:
        raise ParameterError(f"r={r} does not define an action of order dividing {N} mod {M}")
    rpow = [pow(r, j, M) for j in range(N)]

    def compose(x, y):
        return ((x[0] + rpow[x[1]] * y[0]) % M, (x[1] + y[1]) % N)

    ctx = Context((0, 0), compose, lambda e: _word(("a", e[0]), ("b", e[1])))
    gens = [(1 % M, 0), (0, 1 % N)]
    return closure_from_generators(ctx, gens, cap, name)


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise GroupSizeError(f"order {order} exceeds order cap {cap}")


@lru_cache(maxsize=None)
def dihedral(m: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if m < 3:
        raise ParameterError(f"dihedral group needs m >= 3, got {m}")
    _check_cap(2 * m, cap)
    return _semidirect_cyclic(m, 2, -1, f"D_{2 * m}", cap)


@lru_cache(maxsize=None)
def metacyclic_M(m: int, n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """<a, b : a^m = b^(2n) = 1, b a b^-1 = a^-1>."""
    if m <= 2 or n < 1:
        raise ParameterError(f"metacyclic M_2mn needs m > 2 and n >= 1, got m={m}, n={n}")
    _check_cap(2 * m * n, cap)
    return _semidirect_cyclic(m, 2 * n, -1, f"M_{2 * m * n}(m={m},n={n})", cap)


@lru_cache(maxsize=None)
def generalized_quaternion(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """<x, y : y^(2n) = 1, x^2 = y^n, x y x^-1 = y^-1>, elements y^i x^j as (i, j)."""
    if n < 2:
        raise ParameterError(f"generalized quaternion group needs n >= 2, got {n}")
    _check_cap(4 * n, cap)
    M = 2 * n

    def compose(u, v):
        i = u[0] + (v[0] if u[1] == 0 else -v[0])
        j = u[1] + v[1]
        if j == 2:
            i, j = i + n, 0
        return (i % M, j)

    ctx = Context((0, 0), compose, lambda e: _word(("y", e[0]), ("x", e[1])))
    return closure_from_generators(ctx, [(1, 0), (0, 1)], cap, f"Q_{4 * n}")


@lru_cache(maxsize=None)
def quasidihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """<a, b : a^(2^(n-1)) = b^2 = 1, b a b^-1 = a^(2^(n-2) - 1)>."""
    if n < 4:
        raise ParameterError(f"quasidihedral group needs n >= 4, got {n}")
    _check_cap(2**n, cap)
    return _semidirect_cyclic(2 ** (n - 1), 2, 2 ** (n - 2) - 1, f"QD_{2**n}", cap)


@lru_cache(maxsize=None)
def frobenius20(cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """<a, b : a^5 = b^4 = 1, b^-1 a b = a^2>, i.e. b a b^-1 = a^3."""
    _check_cap(20, cap)
    return _semidirect_cyclic(5, 4, 3, "F_20", cap)


@lru_cache(maxsize=None)
def order_pq(p: int, q: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Z_q x| Z_p with the generator acting by the smallest residue of order p mod q."""
    if not (is_prime(p) and is_prime(q)) or (q - 1) % p:
        raise ParameterError(f"order_pq needs primes p | q - 1, got p={p}, q={q}")
    _check_cap(p * q, cap)
    r = next(r for r in range(2, q) if pow(r, p, q) == 1)
    return _semidirect_cyclic(q, p, r, f"Z_{q}:Z_{p}", cap)


EXTRASPECIAL_TYPES = ("exponent-p", "exponent-p2")


@lru_cache(maxsize=None)
def extraspecial_p3(p: int, type: str = "exponent-p", cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if not is_prime(p):
        raise ParameterError(f"p must be prime, got {p}")
    if type not in EXTRASPECIAL_TYPES:
        raise ParameterError(f"type must be one of {EXTRASPECIAL_TYPES}, got {type!r}")
    _check_cap(p**3, cap)
    if type == "exponent-p":
        F = find_irreducible(p, 1)
        e12 = (1, 1, 0, 0, 1, 0, 0, 0, 1)
        e23 = (1, 0, 0, 0, 1, 1, 0, 0, 1)
        return closure_from_generators(_matrix_context(F, 3), [e12, e23], cap, f"Heis({p})")
    if p == 2:
        return generalized_quaternion(2, cap)
    return _semidirect_cyclic(p * p, p, 1 + p, f"M_{p}^3", cap)


def _identity_matrix(d: int) -> tuple:
    return tuple(int(i == j) for i in range(d) for j in range(d))


def _matrix_context(F: FieldSpec, d: int) -> Context:
    """d x d matrices over F as flat row-major tuples of element codes."""
    add = F.add_table.tolist()
    mul = F.mul_table.tolist()
    idx = range(d)

    def compose(x, y):
        out = []
        for i in idx:
            row = x[i * d : (i + 1) * d]
            for j in idx:
                s = 0
                for k in idx:
                    s = add[s][mul[row[k]][y[k * d + j]]]
                out.append(s)
        return tuple(out)

    def describe(m):
        rows = ("[" + " ".join(str(v) for v in m[i * d : (i + 1) * d]) + "]" for i in idx)
        return "[" + " ".join(rows) + "]"

    return Context(_identity_matrix(d), compose, describe)


def _field_of_order(q: int) -> FieldSpec:
    p, n = prime_power(q)
    return find_irreducible(p, n)


@lru_cache(maxsize=None)
def psl2_2k(k: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """PSL(2, 2^k), realized as SL(2, 2^k) (the center is trivial in characteristic 2)."""
    if k < 1:
        raise ParameterError(f"psl2_2k needs k >= 1, got {k}")
    q = 2**k
    _check_cap(q * (q * q - 1), cap)
    F = find_irreducible(2, k)
    w = int(F.primitive_element())
    w_inv = int(F.inv_table[w])
    gens = [(1, 1, 0, 1), (1, 0, 1, 1), (w, 0, 0, w_inv)]
    return closure_from_generators(_matrix_context(F, 2), gens, cap, f"PSL(2,{q})")


@lru_cache(maxsize=None)
def gl2(q: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    p, _ = prime_power(q)
    if q <= 2:
        raise ParameterError(f"gl2 needs q > 2, got {q}")
    _check_cap((q * q - 1) * (q * q - q), cap)
    F = _field_of_order(q)
    w = int(F.primitive_element())
    gens = [(w, 0, 0, 1), (1, 1, 0, 1), (1, 0, 1, 1)]
    return closure_from_generators(_matrix_context(F, 2), gens, cap, f"GL(2,{q})")


@lru_cache(maxsize=None)
def hanaki_theta(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """U(a, b) over GF(2^n) with U(a, b) U(a', b') = U(a + a', b + b' + a' a^2)."""
    if n < 2:
        raise ParameterError(f"hanaki_theta needs n >= 2, got {n}")
    _check_cap(4**n, cap)
    F = find_irreducible(2, n)
    add = F.add_table.tolist()
    mul = F.mul_table.tolist()
    frob = [mul[a][a] for a in range(F.order)]

    def compose(u, v):
        return (add[u[0]][v[0]], add[add[u[1]][v[1]]][mul[v[0]][frob[u[0]]]])

    elements = list(itertools.product(range(F.order), repeat=2))
    return from_elements(elements, compose, f"A({n},theta)", lambda e: f"U{e}", cap)


@lru_cache(maxsize=None)
def hanaki_p(n: int, p: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """V(a, b, c) over GF(p^n) with V(a,b,c) V(a',b',c') = V(a + a', b + b' + c a', c + c')."""
    if not is_prime(p) or n < 1:
        raise ParameterError(f"hanaki_p needs prime p and n >= 1, got n={n}, p={p}")
    _check_cap(p ** (3 * n), cap)
    F = find_irreducible(p, n)
    add = F.add_table.tolist()
    mul = F.mul_table.tolist()

    def compose(u, v):
        a, b, c = u
        a2, b2, c2 = v
        return (add[a][a2], add[add[b][b2]][mul[c][a2]], add[c][c2])

    elements = list(itertools.product(range(F.order), repeat=3))
    return from_elements(elements, compose, f"A({n},{p})", lambda e: f"V{e}", cap)


def _perm_context(degree: int) -> Context:
    def compose(x, y):
        return tuple(x[i] for i in y)  # apply y first, then x

    return Context(tuple(range(degree)), compose, _cycle_notation)


def _cycle_notation(perm) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i + 1)
            i = perm[i]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def _perm_from_cycle(degree: int, cycle) -> tuple:
    perm = list(range(degree))
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        perm[a - 1] = b - 1
    return tuple(perm)


@lru_cache(maxsize=None)
def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ParameterError("symmetric group needs n >= 1")
    ctx = _perm_context(n)
    gens = [ctx.identity] if n == 1 else [_perm_from_cycle(n, [1, 2]), _perm_from_cycle(n, list(range(1, n + 1)))]
    return closure_from_generators(ctx, gens, cap, f"S_{n}")


@lru_cache(maxsize=None)
def alternating5(cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    _check_cap(60, cap)
    gens = [_perm_from_cycle(5, [1, 2, 3]), _perm_from_cycle(5, [1, 2, 3, 4, 5])]
    return closure_from_generators(_perm_context(5), gens, cap, "A_5")


@lru_cache(maxsize=None)
def abelian(orders: tuple, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Z_{n1} x Z_{n2} x ... for the given cyclic orders."""
    orders = tuple(orders)
    if not orders or any(n < 1 for n in orders):
        raise ParameterError(f"cyclic orders must be >= 1, got {orders}")
    _check_cap(reduce(lambda a, b: a * b, orders, 1), cap)

    def compose(x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, orders))

    elements = list(itertools.product(*(range(n) for n in orders)))
    name = " x ".join(f"Z_{n}" for n in orders)
    return from_elements(elements, compose, name, str, cap)


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    return abelian((n,), cap)


# ---------------------------------------------------------------------------
# Family specs and their canonical text form, e.g. "family=dihedral;m=7".

_INT_KEYS = {"m", "n", "p", "q", "k"}
_FAMILIES = {
    "dihedral": (("m",), lambda P, cap: dihedral(P["m"], cap), lambda P: 2 * P["m"]),
    "generalized_quaternion": (("n",), lambda P, cap: generalized_quaternion(P["n"], cap), lambda P: 4 * P["n"]),
    "quasidihedral": (("n",), lambda P, cap: quasidihedral(P["n"], cap), lambda P: 2 ** P["n"]),
    "metacyclic_M": (("m", "n"), lambda P, cap: metacyclic_M(P["m"], P["n"], cap), lambda P: 2 * P["m"] * P["n"]),
    "frobenius20": ((), lambda P, cap: frobenius20(cap), lambda P: 20),
    "order_pq": (("p", "q"), lambda P, cap: order_pq(P["p"], P["q"], cap), lambda P: P["p"] * P["q"]),
    "extraspecial_p3": (
        ("p", "type"),
        lambda P, cap: extraspecial_p3(P["p"], P["type"], cap),
        lambda P: P["p"] ** 3,
    ),
    "psl2": (("k",), lambda P, cap: psl2_2k(P["k"], cap), lambda P: 2 ** P["k"] * (4 ** P["k"] - 1)),
    "gl2": (("q",), lambda P, cap: gl2(P["q"], cap), lambda P: (P["q"] ** 2 - 1) * (P["q"] ** 2 - P["q"])),
    "hanaki_theta": (("n",), lambda P, cap: hanaki_theta(P["n"], cap), lambda P: 4 ** P["n"]),
    "hanaki_p": (("n", "p"), lambda P, cap: hanaki_p(P["n"], P["p"], cap), lambda P: P["p"] ** (3 * P["n"])),
    "alternating5": ((), lambda P, cap: alternating5(cap), lambda P: 60),
    "symmetric": (("n",), lambda P, cap: symmetric(P["n"], cap), lambda P: _factorial(P["n"])),
    "cyclic": (("n",), lambda P, cap: cyclic(P["n"], cap), lambda P: P["n"]),
    "abelian_product": (("orders",), lambda P, cap: abelian(P["orders"], cap), lambda P: _prod(P["orders"])),
}
FAMILY_IDS = tuple(_FAMILIES) + ("direct_product",)


def _prod(xs) -> int:
    return reduce(lambda a, b: a * b, xs, 1)


def _factorial(n: int) -> int:
    return _prod(range(1, n + 1))


def _parse_value(key: str, value: str):
    if key in _INT_KEYS:
        try:
            return int(value)
        except ValueError:
            raise ParameterError(f"parameter {key} must be an integer, got {value!r}") from None
    if key in ("orders", "abelian"):
        try:
            return tuple(int(v) for v in value.split("x"))
        except ValueError:
            raise ParameterError(f"{key} must look like 2x3, got {value!r}") from None
    return value


def _format_value(value) -> str:
    if isinstance(value, tuple):
        return "x".join(str(v) for v in value)
    return str(value)


@dataclass(frozen=True)
class FamilySpec:
    """A family id plus its parameters.

    Direct products carry ``base`` (a family id), that family's own
    parameters and ``abelian`` (cyclic orders of the abelian factor).
    """

    family: str
    params: tuple = ()

    @classmethod
    def of(cls, family: str, **params) -> FamilySpec:
        if family not in FAMILY_IDS:
            raise ParameterError(f"unknown family {family!r}")
        clean = {k: v for k, v in params.items() if v is not None}
        for key in ("orders", "abelian"):
            if key in clean:
                clean[key] = tuple(clean[key]) if not isinstance(clean[key], str) else _parse_value(key, clean[key])
        return cls(family, tuple(sorted(clean.items())))

    @classmethod
    def parse(cls, text: str) -> FamilySpec:
        fields = {}
        for part in filter(None, (p.strip() for p in text.strip().split(";"))):
            key, sep, value = part.partition("=")
            if not sep:
                raise ParameterError(f"malformed spec component {part!r} (want key=value)")
            fields[key.strip()] = _parse_value(key.strip(), value.strip())
        family = fields.pop("family", None)
        if family is None:
            raise ParameterError(f"spec {text!r} has no family=...")
        return cls.of(family, **fields)

    @property
    def text(self) -> str:
        return ";".join([f"family={self.family}"] + [f"{k}={_format_value(v)}" for k, v in self.params])

    def __str__(self):
        return self.text

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    @property
    def base(self) -> FamilySpec:
        """The non-abelian factor of a direct product."""
        if self.family != "direct_product":
            return self
        P = dict(self.params)
        base_family = P.pop("base", None)
        if base_family is None:
            raise ParameterError("direct_product spec needs base=<family>")
        P.pop("abelian", None)
        return FamilySpec.of(base_family, **P)

    @property
    def abelian_orders(self) -> tuple:
        return tuple(self.get("abelian", ()))

    def _resolved(self):
        if self.family not in _FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        names, build, order = _FAMILIES[self.family]
        P = dict(self.params)
        if self.family == "extraspecial_p3":
            P.setdefault("type", "exponent-p")
        missing = [n for n in names if n not in P]
        if missing:
            raise ParameterError(f"family {self.family} needs parameters {missing}")
        extra = set(P) - set(names)
        if extra:
            raise ParameterError(f"family {self.family} does not take parameters {sorted(extra)}")
        return P, build, order

    def expected_order(self) -> int:
        if self.family == "direct_product":
            return self.base.expected_order() * _prod(self.abelian_orders)
        P, _, order = self._resolved()
        return order(P)

    def build(self, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
        if self.family == "direct_product":
            if not self.abelian_orders:
                raise ParameterError("direct_product spec needs abelian=<orders>, e.g. abelian=2x2")
            G = self.base.build(cap)
            return direct_product(G, abelian(self.abelian_orders, cap), cap)
        P, build, _ = self._resolved()
        return build(P, cap)


def default_grid() -> list[FamilySpec]:
    """The batch-verification grid."""
    S = FamilySpec.of
    grid = [S("dihedral", m=m) for m in range(3, 13)]
    grid += [S("generalized_quaternion", n=n) for n in range(2, 7)]
    grid += [S("quasidihedral", n=n) for n in (4, 5, 6)]
    grid += [S("metacyclic_M", m=m, n=n) for m in range(3, 9) for n in range(1, 4)]
    grid += [S("frobenius20")]
    grid += [S("order_pq", p=p, q=q) for p, q in [(2, 3), (2, 5), (3, 7), (2, 7), (5, 11)]]
    grid += [S("extraspecial_p3", p=p, type=t) for p in (2, 3, 5) for t in EXTRASPECIAL_TYPES]
    grid += [S("psl2", k=k) for k in (2, 3)]
    grid += [S("gl2", q=q) for q in (3, 4, 5)]
    grid += [S("hanaki_theta", n=n) for n in (2, 3)]
    grid += [S("hanaki_p", n=n, p=p) for n, p in [(1, 2), (1, 3), (1, 5), (2, 2)]]
    grid += [S("alternating5")]
    bases = [("dihedral", {"m": 3}), ("dihedral", {"m": 4}), ("generalized_quaternion", {"n": 2}),
             ("frobenius20", {}), ("alternating5", {})]
    for fam, params in bases:
        for orders in [(2,), (3,), (2, 2)]:
            grid.append(S("direct_product", base=fam, abelian=orders, **params))
    return grid
