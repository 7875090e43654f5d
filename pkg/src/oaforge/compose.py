"""Composition engines: strength-1 coset large sets, zero-sum index-1 arrays,
juxtaposition of large sets with matching tails, cyclic Kronecker pairing of
large sets (strengths add plus one), and recipe plans wiring the constructors
into reproducible composite artifacts.

The Kronecker pairing takes one block per s in [0, lcm(M1, M2)): the full row
product of member (s mod M1) with member (s mod M2).  Strength verification of
the result is mandatory, so a wrong pairing can never produce an accepted
artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

from .arrays import (
    LargeSet,
    LevelProfile,
    SymbolMatrix,
    verify_large_set,
    verify_strength,
)
from .errors import ConstraintError, VerificationError
from .expand import ResolvableProjection, check_resolvable_projection, expand_shift
from .gf import prime_power

MAX_MATERIALIZED = 1 << 24


# -- direct constructions -------------------------------------------------------


def cosets_strength1(profile: LevelProfile) -> LargeSet:
    """Partition of the full factorial into cosets of the cyclic subgroup
    generated by (1, ..., 1): each coset is a simple strength-1 array with
    N = lcm of the levels, members ordered by their smallest row."""
    levels = profile.levels
    n = 1
    for s in levels:
        n = lcm(n, s)
    universe = profile.universe_size
    if universe * profile.k > MAX_MATERIALIZED:
        raise ValueError(f"universe {universe} too large to materialize")
    base = np.empty((n, profile.k), dtype=np.int64)
    for j, s in enumerate(levels):
        base[:, j] = np.arange(n) % s
    weights = np.empty(profile.k, dtype=np.int64)
    acc = 1
    for j in range(profile.k - 1, -1, -1):
        weights[j] = acc
        acc *= levels[j]
    lv = np.asarray(levels, dtype=np.int64)
    covered = np.zeros(universe, dtype=bool)
    members = []
    for code in range(universe):
        if covered[code]:
            continue
        rep = np.empty(profile.k, dtype=np.int64)
        c = code
        for j in range(profile.k - 1, -1, -1):
            rep[j] = c % levels[j]
            c //= levels[j]
        rows = (base + rep[None, :]) % lv[None, :]
        covered[rows @ weights] = True
        members.append(SymbolMatrix(profile, rows, t=1))
    ls = LargeSet(profile, members, t=1)
    report = verify_large_set(ls, 1)
    if not report.ok:
        raise VerificationError("coset large set failed verification", report)
    return ls


def zero_sum_oa(s: int, t: int) -> tuple[SymbolMatrix, ResolvableProjection]:
    """OA(s^t, t+1, s, t) at index 1: every t-tuple extended by the negated
    coordinate sum mod s.  The first t columns project bijectively."""
    if s < 2 or t < 1:
        raise ValueError("need s >= 2 and t >= 1")
    if s**t > MAX_MATERIALIZED:
        raise ValueError(f"s^t = {s**t} too large to materialize")
    x = np.indices((s,) * t).reshape(t, -1).T
    last = (-x.sum(axis=1)) % s
    cells = np.hstack([x, last[:, None]])
    a = SymbolMatrix(LevelProfile([s] * (t + 1)), cells, t=t)
    report = verify_strength(a, t)
    if not report.ok:
        raise VerificationError("zero-sum array failed verification", report)
    return a, ResolvableProjection(tuple(range(t)), a.n)


def zero_sum_large_set(s: int, t: int) -> LargeSet:
    a, proj = zero_sum_oa(s, t)
    return expand_shift(a, proj)


# -- juxtaposition ----------------------------------------------------------------


def juxtapose(l1: LargeSet, l2: LargeSet) -> LargeSet:
    """Stack member i of l1 over member i of l2 with l2's column-0 symbols
    relabeled to a1..a1+b1-1; the tails (columns 1..k-1) must agree and
    N1/a1 = N2/b1.  Output verified at the common strength."""
    if l1.profile.levels[1:] != l2.profile.levels[1:]:
        raise ValueError(
            f"profiles differ beyond column 0: {l1.profile.format()} vs"
            f" {l2.profile.format()}"
        )
    a1 = l1.profile.levels[0]
    b1 = l2.profile.levels[0]
    if l1.n * b1 != l2.n * a1:
        raise ValueError(
            f"run/level ratio mismatch: {l1.n}/{a1} != {l2.n}/{b1}"
        )
    if l1.m != l2.m:
        raise ValueError(f"member counts differ: {l1.m} != {l2.m}")
    if l1.t is None or l2.t is None:
        raise ValueError("both large sets need a claimed strength")
    t = min(l1.t, l2.t)
    profile = LevelProfile((a1 + b1,) + l1.profile.levels[1:])
    members = []
    for m1, m2 in zip(l1.members, l2.members):
        shifted = m2.cells.copy()
        shifted[:, 0] += a1
        members.append(SymbolMatrix(profile, np.vstack([m1.cells, shifted]), t=t))
    ls = LargeSet(profile, members, t=t)
    report = verify_large_set(ls, t)
    if not report.ok:
        raise VerificationError("juxtaposed large set failed verification", report)
    return ls


# -- Kronecker pairing -------------------------------------------------------------


def kronecker(
    l1: LargeSet,
    l2: LargeSet,
    *,
    skip_input_check: bool = False,
) -> SymbolMatrix:
    """Union over s < lcm(M1, M2) of the row products of member (s mod M1)
    with member (s mod M2): an array on k1 + k2 columns with
    h * N1 * N2 rows and strength t1 + t2 + 1, verified before returning."""
    if l1.t is None or l2.t is None:
        raise ValueError("both large sets need a claimed strength")
    for ls, name in ((l1, "first"), (l2, "second")):
        if skip_input_check:
            continue
        report = verify_large_set(ls, ls.t)
        if not report.ok:
            raise VerificationError(
                f"{name} input is not a verified large set", report
            )
    m1, m2 = l1.m, l2.m
    h = lcm(m1, m2)
    t = l1.t + l2.t + 1
    n_out = h * l1.n * l2.n
    if n_out * (l1.profile.k + l2.profile.k) > MAX_MATERIALIZED * 8:
        raise ValueError(f"output with {n_out} rows too large to materialize")
    blocks = []
    for s in range(h):
        a = l1.members[s % m1].cells
        b = l2.members[s % m2].cells
        left = np.repeat(a, b.shape[0], axis=0)
        right = np.tile(b, (a.shape[0], 1))
        blocks.append(np.hstack([left, right]))
    profile = LevelProfile(l1.profile.levels + l2.profile.levels)
    out = SymbolMatrix(profile, np.vstack(blocks), t=t)
    report = verify_strength(out, t)
    if not report.ok:
        raise VerificationError(
            f"Kronecker pairing failed its strength-{t} check on subsets "
            f"{report.failing_subsets()[:4]}", report
        )
    return out


# -- construction plans -------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    n: int
    profile_counts: tuple[tuple[int, int], ...]  # sorted (level, count) multiset
    t: int


def _counts(levels_with_mult) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for level, count in levels_with_mult:
        if count:
            out[level] = out.get(level, 0) + count
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Leaf:
    kind: str
    params: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Expand:
    child: "PlanNode"


@dataclass(frozen=True)
class Project:
    child: "PlanNode"
    columns: tuple[int, ...]


@dataclass(frozen=True)
class Juxtapose:
    left: "PlanNode"
    right: "PlanNode"


@dataclass(frozen=True)
class Kronecker:
    left: "PlanNode"
    right: "PlanNode"


PlanNode = Leaf | Expand | Project | Juxtapose | Kronecker


@dataclass(frozen=True)
class ConstructionPlan:
    root: PlanNode
    claim: Claim
    theorem: str | None = None


def leaf(kind: str, **params) -> Leaf:
    return Leaf(kind, tuple(sorted(params.items())))


@dataclass
class _OAWithProjection:
    matrix: SymbolMatrix
    projection: ResolvableProjection


def _run_leaf(node: Leaf):
    from . import algebraic, diffmatrix  # deferred: heavy neighbors

    params = dict(node.params)
    kind = node.kind
    if kind == "fullfact":
        from .arrays import full_factorial

        a = full_factorial(LevelProfile([params["v"]] * params["k"]))
        return _OAWithProjection(a, ResolvableProjection(tuple(range(a.k)), a.n))
    if kind == "cosets":
        levels = [params["v"]] * params["k"]
        return cosets_strength1(LevelProfile(levels))
    if kind == "zerosum":
        return _OAWithProjection(*zero_sum_oa(params["s"], params["t"]))
    if kind == "sylvester2":
        return _OAWithProjection(*algebraic.sylvester_oa2(params["n"], params["k"]))
    if kind == "sylvester3":
        return _OAWithProjection(*algebraic.sylvester_oa3(params["n"], params["k"]))
    if kind == "projective":
        gc = algebraic.projective_columns(params["q"], params["n"])
        return _OAWithProjection(*algebraic.linear_oa(gc, params["k"]))
    if kind == "bush":
        gc = algebraic.bush_columns(params["q"], params["t"])
        return _OAWithProjection(*algebraic.linear_oa(gc, params["k"]))
    if kind == "q4t3":
        gc = algebraic.q4_matrix(params["q"])
        return _OAWithProjection(*algebraic.linear_oa(gc, params["k"]))
    if kind == "chai1":
        dm = diffmatrix.dm_for(params["v"])
        return _OAWithProjection(*diffmatrix.develop_chai1(dm))
    if kind == "chai2":
        dm = diffmatrix.dm_for(params["v"])
        a, proj, report = diffmatrix.develop_chai2(dm)
        if not report.ok:
            raise VerificationError(
                "29-column development failed its strength-2 self-check on pairs "
                f"{report.failing_subsets()}; the composite cannot be certified",
                report,
            )
        return _OAWithProjection(a, proj)
    raise ValueError(f"unknown leaf kind {kind!r}")


def _execute(node: PlanNode):
    from .arrays import project_columns  # local alias for clarity

    if isinstance(node, Leaf):
        return _run_leaf(node)
    if isinstance(node, Expand):
        child = _execute(node.child)
        if not isinstance(child, _OAWithProjection):
            raise VerificationError(f"expand needs an array with projection: {node}")
        return expand_shift(child.matrix, child.projection)
    if isinstance(node, Project):
        child = _execute(node.child)
        if not isinstance(child, _OAWithProjection):
            raise VerificationError(f"project needs an array with projection: {node}")
        old = set(child.projection.columns)
        if not old <= set(node.columns):
            raise VerificationError(
                f"projection {child.projection.columns} dropped by {node.columns}"
            )
        a = project_columns(child.matrix, node.columns)
        remap = tuple(node.columns.index(c) for c in child.projection.columns)
        ok, why = check_resolvable_projection(a, remap)
        if not ok:
            raise VerificationError(f"projection no longer resolvable: {why}")
        return _OAWithProjection(a, ResolvableProjection(remap, a.n))
    if isinstance(node, Juxtapose):
        return juxtapose(_as_large_set(node.left), _as_large_set(node.right))
    if isinstance(node, Kronecker):
        return kronecker(
            _as_large_set(node.left), _as_large_set(node.right),
            skip_input_check=True,
        )
    raise TypeError(f"unknown plan node {node!r}")


def _as_large_set(node: PlanNode) -> LargeSet:
    result = _execute(node)
    if isinstance(result, _OAWithProjection):
        result = expand_shift(result.matrix, result.projection)
    if not isinstance(result, LargeSet):
        raise VerificationError(f"node {node} did not produce a large set")
    return result


def execute_plan(plan: ConstructionPlan) -> SymbolMatrix | LargeSet:
    """Execute the tree and verify the claimed (N, profile, strength); any
    mismatch is a hard error naming the failing check."""
    result = _execute(plan.root)
    if isinstance(result, _OAWithProjection):
        result = result.matrix
    claim = plan.claim
    n = result.n
    counts = _counts((s, 1) for s in result.profile.levels)
    if n != claim.n:
        raise VerificationError(f"claimed N = {claim.n}, produced N = {n}")
    if counts != claim.profile_counts:
        raise VerificationError(
            f"claimed profile {claim.profile_counts}, produced {counts}"
        )
    if isinstance(result, LargeSet):
        report = verify_large_set(result, claim.t)
    else:
        report = verify_strength(result, claim.t)
    if not report.ok:
        raise VerificationError(
            f"claimed strength {claim.t} failed verification", report
        )
    return result


# -- theorem recipes -----------------------------------------------------------------


THEOREM_IDS = (
    "v1+v3-2", "doublev3-2", "v1+q4-3", "v12n-4", "qn2n-com", "qn2v32=5",
    "qn2q43=6", "qn3q43=7", "q3323=7", "t-1q43=t+3", "qt2n2-3", "tt-1n2-3",
    "qtp43",
)


def _need(params: dict, keys: list[str], theorem: str, defaults: dict | None = None):
    out = dict(defaults or {})
    out.update(params)
    missing = [key for key in keys if key not in out]
    if missing:
        raise ConstraintError(f"{theorem} needs parameters {missing}")
    allowed = set(keys) | set(defaults or {})
    extra = [key for key in out if key not in allowed]
    if extra:
        raise ConstraintError(f"{theorem} does not take parameters {extra}")
    return out


def _check(cond: bool, theorem: str, constraint: str):
    if not cond:
        raise ConstraintError(f"{theorem} requires {constraint}")


def _is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
        return True
    except ValueError:
        return False


def _dev_node(v: int, cols: int) -> PlanNode:
    """Large set over v^cols from the 13- or 29-column development, projected
    so the resolvable columns lead."""
    if cols <= 13:
        need, proj = 13, (0, 1, 6)
        base: PlanNode = leaf("chai1", v=v)
    else:
        need, proj = 29, (0, 1, 2, 3)
        base = leaf("chai2", v=v)
    keep = list(proj) + [c for c in range(need) if c not in proj]
    return Expand(Project(base, tuple(keep[:cols])))


def _binary_node(n: int, k: int, b: int) -> PlanNode:
    kind = "sylvester2" if b == 2 else "sylvester3"
    return Expand(leaf(kind, n=n, k=k))


def plan_theorem(theorem: str, params: dict) -> ConstructionPlan:
    """A plan tree reproducing one of the composite recipes, with the claimed
    (N, profile, strength) filled from the corresponding statement.  Requests
    outside a recipe's constraint block fail with the constraint echoed."""
    if theorem not in THEOREM_IDS:
        raise ConstraintError(
            f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}"
        )
    p = dict(params)

    if theorem == "v1+v3-2":
        p = _need(p, ["v", "k"], theorem)
        v, k = p["v"], p["k"]
        _check(v >= 4 and v % 4 != 2, theorem, "v >= 4 and v != 2 (mod 4)")
        _check(5 <= k <= 28, theorem, "5 <= k <= 13 (cube) or 14 <= k <= 28")
        left = Kronecker(leaf("cosets", v=v, k=k - 2), _dev_node(v, k if k <= 13 else k + 1))
        power = k + 1 if k <= 13 else k + 2
        width = 2 * k - 2 if k <= 13 else 2 * k - 1
        return ConstructionPlan(left, Claim(v**power, _counts([(v, width)]), 4), theorem)

    if theorem == "doublev3-2":
        p = _need(p, ["v", "k"], theorem)
        v, k = p["v"], p["k"]
        _check(v >= 4 and v % 4 != 2, theorem, "v >= 4 and v != 2 (mod 4)")
        _check(5 <= k <= 29, theorem, "5 <= k <= 13 (cube) or 14 <= k <= 29")
        node = Kronecker(_dev_node(v, k), _dev_node(v, k))
        power = k + 3 if k <= 13 else k + 4
        return ConstructionPlan(node, Claim(v**power, _counts([(v, 2 * k)]), 5), theorem)

    if theorem == "v1+q4-3":
        p = _need(p, ["v", "k1", "q", "k2"], theorem)
        v, k1, q, k2 = p["v"], p["k1"], p["q"], p["k2"]
        _check(v >= 2 and k1 >= 3, theorem, "v >= 2 and k1 >= 3")
        _check(_is_prime_power(q) and q >= 3, theorem, "q a prime power >= 3")
        _check(4 <= k2 <= q * q + 1, theorem, "4 <= k2 <= q^2 + 1")
        node = Kronecker(leaf("cosets", v=v, k=k1 - 2), Expand(leaf("q4t3", q=q, k=k2)))
        h = lcm(v ** (k1 - 3), q ** (k2 - 4))
        claim = Claim(v * q**4 * h, _counts([(v, k1 - 2), (q, k2)]), 5)
        return ConstructionPlan(node, claim, theorem)

    if theorem == "v12n-4":
        p = _need(p, ["v", "k1", "n", "k2"], theorem, {"b": 2})
        v, k1, n, k2, b = p["v"], p["k1"], p["n"], p["k2"], p["b"]
        _check(v >= 2 and k1 >= 3, theorem, "v >= 2 and k1 >= 3")
        _check(n >= 2 and b in (2, 3), theorem, "n >= 2 and b in {2, 3}")
        if b == 2:
            _check(n <= k2 <= 2**n - 1, theorem, "n <= k2 <= 2^n - 1")
            h = lcm(v ** (k1 - 3), 2 ** (k2 - n))
            claim = Claim(2**n * v * h, _counts([(v, k1 - 2), (2, k2)]), 4)
        else:
            _check(n + 1 <= k2 <= 2**n, theorem, "n + 1 <= k2 <= 2^n")
            h = lcm(v ** (k1 - 3), 2 ** (k2 - n - 1))
            claim = Claim(2 ** (n + 1) * v * h, _counts([(v, k1 - 2), (2, k2)]), 5)
        node = Kronecker(leaf("cosets", v=v, k=k1 - 2), _binary_node(n, k2, b))
        return ConstructionPlan(node, claim, theorem)

    if theorem == "qn2n-com":
        p = _need(p, ["q", "m", "k1", "n", "k2"], theorem, {"b": 2})
        q, m, k1, n, k2, b = p["q"], p["m"], p["k1"], p["n"], p["k2"], p["b"]
        _check(_is_prime_power(q), theorem, "q a prime power")
        _check(2 <= m <= k1 <= (q**m - 1) // (q - 1), theorem,
               "2 <= m <= k1 <= (q^m - 1)/(q - 1)")
        _check(n >= 2 and b in (2, 3), theorem, "n >= 2 and b in {2, 3}")
        if b == 2:
            _check(n <= k2 <= 2**n - 1, theorem, "n <= k2 <= 2^n - 1")
            h = lcm(q ** (k1 - m), 2 ** (k2 - n))
            claim = Claim(2**n * q**m * h, _counts([(q, k1), (2, k2)]), 5)
        else:
            _check(n + 1 <= k2 <= 2**n, theorem, "n + 1 <= k2 <= 2^n")
            h = lcm(q ** (k1 - m), 2 ** (k2 - n - 1))
            claim = Claim(2 ** (n + 1) * q**m * h, _counts([(q, k1), (2, k2)]), 6)
        node = Kronecker(
            Expand(leaf("projective", q=q, n=m, k=k1)), _binary_node(n, k2, b)
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "qn2v32=5":
        p = _need(p, ["q", "m", "k1", "v", "k2"], theorem, {"w": 3})
        q, m, k1, v, k2, w = p["q"], p["m"], p["k1"], p["v"], p["k2"], p["w"]
        _check(_is_prime_power(q), theorem, "q a prime power")
        _check(2 <= m <= k1 <= (q**m - 1) // (q - 1), theorem,
               "2 <= m <= k1 <= (q^m - 1)/(q - 1)")
        _check(v >= 4 and v % 4 != 2, theorem, "v >= 4 and v != 2 (mod 4)")
        _check(w in (3, 4), theorem, "w in {3, 4}")
        top = 13 if w == 3 else 29
        _check(4 <= k2 <= top, theorem, f"4 <= k2 <= {top}")
        h = lcm(q ** (k1 - m), v ** (k2 - w))
        claim = Claim(q**m * v**w * h, _counts([(q, k1), (v, k2)]), 5)
        node = Kronecker(
            Expand(leaf("projective", q=q, n=m, k=k1)),
            _dev_node(v, k2) if w == 3 else Expand(
                Project(leaf("chai2", v=v),
                        tuple([0, 1, 2, 3] + [c for c in range(4, 29)][: k2 - 4]))
            ),
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "qn2q43=6":
        p = _need(p, ["p", "k1", "q", "n", "k2"], theorem)
        pp, k1, q, n, k2 = p["p"], p["k1"], p["q"], p["n"], p["k2"]
        _check(_is_prime_power(pp) and pp >= 3, theorem, "p a prime power >= 3")
        _check(_is_prime_power(q) and q >= 3, theorem, "q a prime power >= 3")
        _check(4 <= k1 <= pp * pp + 1, theorem, "4 <= k1 <= p^2 + 1")
        _check(2 <= n <= k2 <= (q**n - 1) // (q - 1), theorem,
               "2 <= n <= k2 <= (q^n - 1)/(q - 1)")
        h = lcm(pp ** (k1 - 4), q ** (k2 - n))
        claim = Claim(pp**4 * q**n * h, _counts([(pp, k1), (q, k2)]), 6)
        node = Kronecker(
            Expand(leaf("q4t3", q=pp, k=k1)),
            Expand(leaf("projective", q=q, n=n, k=k2)),
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "qn3q43=7":
        p = _need(p, ["p", "k1", "q", "k2"], theorem)
        pp, k1, q, k2 = p["p"], p["k1"], p["q"], p["k2"]
        _check(_is_prime_power(pp) and pp >= 3, theorem, "p a prime power >= 3")
        _check(_is_prime_power(q) and q >= 3, theorem, "q a prime power >= 3")
        _check(4 <= k1 <= pp * pp + 1, theorem, "4 <= k1 <= p^2 + 1")
        _check(3 <= k2 <= q + 1, theorem, "3 <= k2 <= q + 1")
        h = lcm(pp ** (k1 - 4), q ** (k2 - 3))
        claim = Claim(pp**4 * q**3 * h, _counts([(pp, k1), (q, k2)]), 7)
        node = Kronecker(
            Expand(leaf("q4t3", q=pp, k=k1)),
            Expand(leaf("bush", q=q, t=3, k=k2)),
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "q3323=7":
        p = _need(p, ["q", "k1", "n", "k2"], theorem, {"b": 2})
        q, k1, n, k2, b = p["q"], p["k1"], p["n"], p["k2"], p["b"]
        _check(q >= 2 and q & (q - 1) == 0, theorem, "q a power of 2")
        _check(3 <= k1 <= q + 2, theorem, "3 <= k1 <= q + 2")
        _check(n >= 2 and b in (2, 3), theorem, "n >= 2 and b in {2, 3}")
        if b == 2:
            _check(n <= k2 <= 2**n - 1, theorem, "n <= k2 <= 2^n - 1")
            h = lcm(q ** (k1 - 3), 2 ** (k2 - n))
            claim = Claim(2**n * q**3 * h, _counts([(q, k1), (2, k2)]), 6)
        else:
            _check(n + 1 <= k2 <= 2**n, theorem, "n + 1 <= k2 <= 2^n")
            h = lcm(q ** (k1 - 3), 2 ** (k2 - n - 1))
            claim = Claim(2 ** (n + 1) * q**3 * h, _counts([(q, k1), (2, k2)]), 7)
        node = Kronecker(
            Expand(leaf("bush", q=q, t=3, k=k1)), _binary_node(n, k2, b)
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "t-1q43=t+3":
        p = _need(p, ["s", "t", "q", "k"], theorem)
        s, t, q, k = p["s"], p["t"], p["q"], p["k"]
        _check(s >= 2 and t >= 2, theorem, "s >= 2 and t >= 2")
        _check(_is_prime_power(q) and q >= 3, theorem, "q a prime power >= 3")
        _check(4 <= k <= q * q + 1, theorem, "4 <= k <= q^2 + 1")
        h = lcm(s, q ** (k - 4))
        claim = Claim(q**4 * s ** (t - 1) * h, _counts([(q, k), (s, t)]), t + 3)
        node = Kronecker(
            Expand(leaf("zerosum", s=s, t=t - 1)),
            Expand(leaf("q4t3", q=q, k=k)),
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "qt2n2-3":
        p = _need(p, ["q", "t", "k1", "n", "k2"], theorem, {"b": 2})
        q, t, k1, n, k2, b = p["q"], p["t"], p["k1"], p["n"], p["k2"], p["b"]
        _check(_is_prime_power(q), theorem, "q a prime power")
        _check(1 <= t <= k1 <= q + 1, theorem, "1 <= t <= k1 <= q + 1")
        _check(n >= 2 and b in (2, 3), theorem, "n >= 2 and b in {2, 3}")
        if t == 1:
            level_part: PlanNode = leaf("cosets", v=q, k=k1)
        else:
            level_part = Expand(leaf("bush", q=q, t=t, k=k1))
        if b == 2:
            _check(n <= k2 <= 2**n - 1, theorem, "n <= k2 <= 2^n - 1")
            h = lcm(q ** (k1 - t), 2 ** (k2 - n))
            claim = Claim(2**n * q**t * h, _counts([(q, k1), (2, k2)]), t + 3)
        else:
            _check(n + 1 <= k2 <= 2**n, theorem, "n + 1 <= k2 <= 2^n")
            h = lcm(q ** (k1 - t), 2 ** (k2 - n - 1))
            claim = Claim(2 ** (n + 1) * q**t * h, _counts([(q, k1), (2, k2)]), t + 4)
        node = Kronecker(level_part, _binary_node(n, k2, b))
        return ConstructionPlan(node, claim, theorem)

    if theorem == "tt-1n2-3":
        p = _need(p, ["s", "t", "n", "k1"], theorem, {"b": 2})
        s, t, n, k1, b = p["s"], p["t"], p["n"], p["k1"], p["b"]
        _check(s >= 2 and t >= 2 and n >= 2, theorem, "s, t, n >= 2")
        _check(b in (2, 3), theorem, "b in {2, 3}")
        if b == 2:
            _check(n <= k1 <= 2**n - 1, theorem, "n <= k1 <= 2^n - 1")
            h = lcm(s, 2 ** (k1 - n))
            claim = Claim(2**n * s ** (t - 1) * h, _counts([(2, k1), (s, t)]), t + 2)
        else:
            _check(n + 1 <= k1 <= 2**n, theorem, "n + 1 <= k1 <= 2^n")
            h = lcm(s, 2 ** (k1 - n - 1))
            claim = Claim(2 ** (n + 1) * s ** (t - 1) * h,
                          _counts([(2, k1), (s, t)]), t + 3)
        node = Kronecker(
            Expand(leaf("zerosum", s=s, t=t - 1)), _binary_node(n, k1, b)
        )
        return ConstructionPlan(node, claim, theorem)

    if theorem == "qtp43":
        p = _need(p, ["p", "k1", "q", "t", "k2"], theorem)
        pp, k1, q, t, k2 = p["p"], p["k1"], p["q"], p["t"], p["k2"]
        _check(_is_prime_power(pp) and pp >= 3, theorem, "p a prime power >= 3")
        _check(_is_prime_power(q) and q >= 3, theorem, "q a prime power >= 3")
        _check(4 <= k1 <= pp * pp + 1, theorem, "4 <= k1 <= p^2 + 1")
        _check(2 <= t <= k2 <= q + 1, theorem, "2 <= t <= k2 <= q + 1")
        h = lcm(pp ** (k1 - 4), q ** (k2 - t))
        claim = Claim(pp**4 * q**t * h, _counts([(pp, k1), (q, k2)]), t + 4)
        node = Kronecker(
            Expand(leaf("q4t3", q=pp, k=k1)),
            Expand(leaf("bush", q=q, t=t, k=k2)),
        )
        return ConstructionPlan(node, claim, theorem)

    raise AssertionError(theorem)  # unreachable
