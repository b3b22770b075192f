"""Mechanical verification of the defining relations of G(Z).

The twelve relation families (numbered R1-R12) are instantiated over the
nodes / node pairs of the diagram and checked as matrix identities in the
truncated representation.  Comparison happens on the joint validity window
of the two sides; R11 carries an unresolved structure-constant sign that is
determined by trying both candidates.

The kernel probe decides which elements h_S = prod_{i in S} h_i(-1) of the
finite diagonal subgroup act trivially, by a GF(2) parity criterion
cross-checked against the matrices themselves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cartan import GeneralizedCartanMatrix, gcm_to_json
from .groupgen import (
    GeneratorSymbol,
    WindowedMatrix,
    WindowEmpty,
    evaluate_word,
    h_element,
)
from .weightmod import DominantWeight, TruncatedModule


class SignAmbiguous(RuntimeError):
    """Both structure-constant signs verify; module too degenerate."""


class SignNone(RuntimeError):
    """Neither structure-constant sign verifies; indicates a bug."""


class OracleMismatch(RuntimeError):
    """Kernel parity criterion disagrees with the matrix oracle."""


RELATION_IDS = [f"R{n}" for n in range(1, 13)]

# Node patterns per relation family.
_PATTERN = {
    "R1": "each_i",
    "R2": "each_i",
    "R3": "each_i",
    "R4": "nonadjacent",
    "R5": "nonadjacent",
    "R6": "nonadjacent",
    "R7": "adjacent",
    "R8": "adjacent",
    "R9": "adjacent",
    "R10": "adjacent",
    "R11": "adjacent",
    "R12": "adjacent",
}


def _X(i, t=1):
    return GeneratorSymbol("X+", i, t)


def _S(i, e=1):
    return GeneratorSymbol("S", i, e)


def _inv(word):
    return [sym.inverse() for sym in reversed(word)]


def _comm(a, b):
    return list(a) + list(b) + _inv(a) + _inv(b)


def relation_words(rid: str, nodes, sign: int = 1):
    """(lhs, rhs) words of a relation instance.

    nodes is (i,) or (i, j); sign only affects R11.
    """
    if rid in ("R1", "R2", "R3"):
        (i,) = nodes
    else:
        i, j = nodes
    if rid == "R1":
        return [_S(i)] * 4, []
    if rid == "R2":
        return _comm([_S(i), _S(i)], [_X(i)]), []
    if rid == "R3":
        return [_S(i)], [_X(i), _S(i), _X(i), _S(i, -1), _X(i)]
    if rid == "R4":
        return [_S(i), _S(j)], [_S(j), _S(i)]
    if rid == "R5":
        return _comm([_S(i)], [_X(j)]), []
    if rid == "R6":
        return _comm([_X(i)], [_X(j)]), []
    if rid == "R7":
        return [_S(i), _S(j), _S(i)], [_S(j), _S(i), _S(j)]
    if rid == "R8":
        return [_S(i), _S(i), _S(j), _S(i, -1), _S(i, -1)], [_S(j, -1)]
    if rid == "R9":
        return [_X(i), _S(j), _S(i)], [_S(j), _S(i), _X(j)]
    if rid == "R10":
        return [_S(i), _S(i), _X(j), _S(i, -1), _S(i, -1)], [_X(j, -1)]
    if rid == "R11":
        return _comm([_X(i)], [_X(j)]), [_S(i), _X(j, sign), _S(i, -1)]
    if rid == "R12":
        return _comm([_X(i)], [_S(i), _X(j), _S(i, -1)]), []
    raise ValueError(f"unknown relation id {rid!r}")


@dataclass(frozen=True)
class RelationSchema:
    id: str
    pattern: str

    def instances(self, gcm: GeneralizedCartanMatrix):
        n = gcm.rank
        if self.pattern == "each_i":
            return [(i,) for i in range(n)]
        pairs = [
            (i, j) for i in range(n) for j in range(n) if i != j
        ]
        if self.pattern == "nonadjacent":
            return [(i, j) for i, j in pairs if not gcm.adjacent(i, j)]
        return [(i, j) for i, j in pairs if gcm.adjacent(i, j)]


def relation_schemas() -> list[RelationSchema]:
    return [RelationSchema(rid, _PATTERN[rid]) for rid in RELATION_IDS]


@dataclass
class RelationResult:
    id: str
    nodes: tuple[int, ...]
    status: str  # "verified" | "failed" | "window_empty"
    window: int | None = None
    columns: int | None = None
    sign: int | None = None
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "nodes": [n + 1 for n in self.nodes],
            "status": self.status,
        }
        if self.window is not None:
            out["window"] = self.window
        if self.columns is not None:
            out["columns"] = self.columns
        if self.sign is not None:
            out["sign"] = self.sign
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _compare(module, lhs_word, rhs_word, min_window):
    lhs = evaluate_word(module, lhs_word)
    rhs = evaluate_word(module, rhs_word)
    equal, window, compared = lhs.equal_on_window(rhs, min_window=min_window)
    witness = None
    if not equal:
        for k in module.weight_keys():
            for c in range(module.slices[k].rank):
                if (
                    lhs.exact[k][c]
                    and rhs.exact[k][c]
                    and lhs.column(k, c) != rhs.column(k, c)
                ):
                    witness = {
                        "column": {"depth_vector": list(k), "index": c},
                        "lhs_image": _col_json(lhs.column(k, c)),
                        "rhs_image": _col_json(rhs.column(k, c)),
                    }
                    break
            if witness:
                break
    return equal, window, compared, witness


def _col_json(col):
    return [
        {"depth_vector": list(k), "entries": list(v)}
        for k, v in sorted(col.items())
    ]


def verify_relation(
    module: TruncatedModule, rid: str, nodes, min_window: int = 0
) -> RelationResult:
    nodes = tuple(nodes)
    if rid == "R11":
        statuses = {}
        try:
            for sign in (1, -1):
                lhs, rhs = relation_words(rid, nodes, sign)
                statuses[sign] = _compare(module, lhs, rhs, min_window)
        except WindowEmpty:
            return RelationResult(rid, nodes, "window_empty")
        good = [s for s in (1, -1) if statuses[s][0]]
        if good:
            s = good[0] if len(good) == 1 else None
            _, window, compared, _ = statuses[good[0]]
            return RelationResult(
                rid, nodes, "verified", window, compared, sign=s
            )
        _, window, compared, witness = statuses[1]
        return RelationResult(
            rid, nodes, "failed", window, compared, witness=witness
        )
    lhs, rhs = relation_words(rid, nodes)
    try:
        equal, window, compared, witness = _compare(module, lhs, rhs, min_window)
    except WindowEmpty:
        return RelationResult(rid, nodes, "window_empty")
    status = "verified" if equal else "failed"
    return RelationResult(rid, nodes, status, window, compared, witness=witness)


def resolve_commutator_sign(module: TruncatedModule, i: int, j: int) -> int:
    """The unique sign in [X_i, X_j] = S_i X_j(sign) S_i^-1 for adjacent i, j."""
    if not module.gcm.adjacent(i, j):
        raise ValueError(f"nodes {i}, {j} are not adjacent")
    verdicts = {}
    for sign in (1, -1):
        lhs, rhs = relation_words("R11", (i, j), sign)
        equal, _, _, _ = _compare(module, lhs, rhs, min_window=0)
        verdicts[sign] = equal
    if verdicts[1] and verdicts[-1]:
        raise SignAmbiguous(f"both signs verify for pair ({i}, {j})")
    if not verdicts[1] and not verdicts[-1]:
        raise SignNone(f"neither sign verifies for pair ({i}, {j})")
    return 1 if verdicts[1] else -1


# ---------------------------------------------------------------------------
# Kernel probe


def kernel_membership(gcm: GeneralizedCartanMatrix, lam, subset) -> bool:
    """Does h_S = prod_{i in S} h_i(-1) act trivially on V^lambda?

    Parity criterion: sum_{i in S} <lambda, alpha_i^vee> even, and
    sum_{i in S} a_ij even for every j (the pairing of every weight of
    lambda + root lattice with sum_{i in S} alpha_i^vee is then even).
    """
    coords = lam.coords if isinstance(lam, DominantWeight) else tuple(lam)
    subset = sorted(set(subset))
    if any(not 0 <= i < gcm.rank for i in subset):
        raise ValueError("subset contains an invalid node")
    if sum(coords[i] for i in subset) % 2:
        return False
    return all(
        sum(gcm.a(i, j) for i in subset) % 2 == 0 for j in range(gcm.rank)
    )


def _oracle_trivial_on_truncation(module: TruncatedModule, subset) -> bool:
    """Diagonal oracle: every populated weight mu pairs evenly with the
    subset's coroot sum (h_S acts by that global sign on the slice)."""
    for k in module.weight_keys():
        if sum(module.coroot_pairing(k, i) for i in subset) % 2:
            return False
    return True


def _matrix_trivial(module: TruncatedModule, subset) -> bool | None:
    """Full matrix check h_S == identity; None when the window is empty."""
    mat = WindowedMatrix.identity(module)
    for i in subset:
        mat = mat @ h_element(module, i, -1)
    try:
        equal, _, _ = mat.equal_on_window(
            WindowedMatrix.identity(module), min_window=0
        )
    except WindowEmpty:
        return None
    return equal


def kernel_probe(module: TruncatedModule) -> dict:
    """Describe K^lambda cap H(Z) under the truncation oracle.

    Enumerates all 2^rank subsets, applies the parity criterion, and
    cross-checks: a criterion-positive subset must look trivial both to the
    diagonal oracle and to the assembled matrix (OracleMismatch otherwise).
    Criterion-negative subsets that the truncation cannot separate are
    listed under "not_separated" rather than treated as members.
    """
    gcm, lam = module.gcm, module.lam
    n = gcm.rank
    members = []
    not_separated = []
    for mask in range(1 << n):
        subset = [i for i in range(n) if mask >> i & 1]
        crit = kernel_membership(gcm, lam, subset)
        oracle = _oracle_trivial_on_truncation(module, subset)
        if crit:
            if not oracle:
                raise OracleMismatch(
                    f"criterion-trivial h_S for S={subset} acts nontrivially"
                )
            matrix_ok = _matrix_trivial(module, subset)
            if matrix_ok is False:
                raise OracleMismatch(
                    f"h_S matrix for S={subset} differs from the identity"
                )
            members.append(subset)
        elif oracle:
            not_separated.append(subset)
    # Members form a GF(2)-subspace; report a minimal generating set.
    generators = _gf2_generators(members, n)
    return {
        "subgroup_order": len(members),
        "members": members,
        "generators": generators,
        "not_separated": not_separated,
    }


def _gf2_generators(members, n):
    basis = []
    span = {0}
    for subset in sorted(members, key=len):
        mask = sum(1 << i for i in subset)
        if mask and mask not in span:
            basis.append(subset)
            span |= {v ^ mask for v in span}
    return basis


# ---------------------------------------------------------------------------
# Full verification run


@dataclass
class VerificationReport:
    gcm: GeneralizedCartanMatrix
    lam: DominantWeight
    depth: int
    results: list[RelationResult] = field(default_factory=list)
    kernel: dict | None = None

    @property
    def all_verified(self) -> bool:
        return all(r.status == "verified" for r in self.results)

    @property
    def any_window_empty(self) -> bool:
        return any(r.status == "window_empty" for r in self.results)

    def r11_signs(self) -> dict[tuple[int, int], int | None]:
        return {
            r.nodes: r.sign for r in self.results if r.id == "R11"
        }

    def to_json(self) -> dict:
        out = {
            "diagram": gcm_to_json(self.gcm),
            "lambda": list(self.lam.coords),
            "depth": self.depth,
            "relations": [r.to_json() for r in self.results],
        }
        if self.kernel is not None:
            out["kernel"] = self.kernel
        return out


def verify_all(
    module: TruncatedModule,
    min_window: int = 0,
    jobs: int = 1,
    with_kernel: bool = True,
) -> VerificationReport:
    """Verify every instance of R1-R12 on the module.

    Instances are independent; jobs > 1 runs them on a thread pool (useful
    mainly to overlap the generator-cache warmup).
    """
    tasks = [
        (schema.id, nodes)
        for schema in relation_schemas()
        for nodes in schema.instances(module.gcm)
    ]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(
                    lambda t: verify_relation(module, t[0], t[1], min_window),
                    tasks,
                )
            )
    else:
        results = [
            verify_relation(module, rid, nodes, min_window)
            for rid, nodes in tasks
        ]
    report = VerificationReport(module.gcm, module.lam, module.depth, results)
    if with_kernel:
        report.kernel = kernel_probe(module)
    return report
