"""Abstract realizability of a T-vector as a clique partition of K_d.

Dual view: lines become vertices 0..d-1 and each singular point becomes
the clique of lines through it.  A T-vector is combinatorially feasible
iff the edge set of K_d can be partitioned into cliques whose size
multiset is exactly the one T prescribes (t_k cliques of size k).

The search pre-allocates one fixed-size slot per point and assigns line
pairs to slots in lexicographic order.  An uncovered pair either joins a
slot already containing its first line or seeds the first empty slot of
some size (identical empty slots are interchangeable, which is the
isomorph rejection).  Pruning:

* per-line degree: a line in slots of sizes k_1, k_2, ... eventually has
  sum (k_i - 1) = d - 1, so the committed remainder must stay
  representable as a capped sum of parts (k - 1);
* two slots sharing a line must satisfy (k1 - 1)(k2 - 1) + 2 <= s;
* every partially filled slot must still have enough compatible lines
  left to reach its size.

Infeasible is only ever reported after the canonical tree is exhausted;
running out of node budget raises instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .tspace import TVector, check_combinatorial_identity

DEFAULT_NODE_BUDGET = 10**9


class SearchBudgetExceeded(RuntimeError):
    """Search gave up before exhausting the tree; the answer is unknown."""

    def __init__(self, nodes: int):
        super().__init__(f"node budget exceeded after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class CliquePartition:
    """Cliques of line indices covering every pair exactly once."""

    d: int
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        canonical = tuple(sorted(tuple(sorted(set(p))) for p in self.points))
        object.__setattr__(self, "points", canonical)

    def to_json(self) -> dict:
        return {"d": self.d, "points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "CliquePartition":
        return cls(int(data["d"]), tuple(tuple(p) for p in data["points"]))


@dataclass(frozen=True)
class SearchOutcome:
    feasible: bool
    witness: CliquePartition | None
    nodes_explored: int
    exhausted: bool

    def __post_init__(self) -> None:
        if not self.feasible and not self.exhausted:
            raise ValueError("infeasibility claims require an exhausted search")


def validate_partition(partition: CliquePartition, tv: TVector) -> bool:
    """Independent witness checker: pair-exactness, size counts, intersections."""
    d = partition.d
    if d != tv.d:
        return False
    seen_pairs: set[tuple[int, int]] = set()
    for clique in partition.points:
        if len(clique) < 2:
            return False
        if any(not 0 <= i < d for i in clique):
            return False
        for a_idx in range(len(clique)):
            for b_idx in range(a_idx + 1, len(clique)):
                pair = (clique[a_idx], clique[b_idx])
                if pair in seen_pairs:
                    return False
                seen_pairs.add(pair)
    if len(seen_pairs) != comb(d, 2):
        return False
    sizes: dict[int, int] = {}
    for clique in partition.points:
        sizes[len(clique)] = sizes.get(len(clique), 0) + 1
    if sizes != {k: tv.t(k) for k in range(2, d + 1) if tv.t(k) > 0}:
        return False
    # pair exactness already forces |A & B| <= 1; assert it independently
    for i in range(len(partition.points)):
        for j in range(i + 1, len(partition.points)):
            if len(set(partition.points[i]) & set(partition.points[j])) > 1:
                return False
    return True


def _representable_degrees(tv: TVector) -> list[bool]:
    """Which totals sum (k-1)*a_k with 0 <= a_k <= t_k can reach, up to d-1."""
    limit = tv.d - 1
    reachable = [False] * (limit + 1)
    reachable[0] = True
    for k in range(2, tv.d + 1):
        count, part = tv.t(k), k - 1
        if count == 0:
            continue
        for _ in range(count):
            for v in range(limit - part, -1, -1):
                if reachable[v]:
                    reachable[v + part] = True
    return reachable


def feasible_arrangement(tv: TVector, node_budget: int | None = None) -> SearchOutcome:
    """Decide whether T admits a clique partition of K_d; exhaustive search.

    Returns a feasible outcome with a witness, or infeasible with
    ``exhausted=True``.  Raises :class:`SearchBudgetExceeded` when the
    node budget runs out, so an unfinished search is never mistaken for
    a proof of infeasibility.
    """
    if not check_combinatorial_identity(tv):
        raise ValueError(f"not a solution of the pair-count identity: {tv}")
    budget = DEFAULT_NODE_BUDGET if node_budget is None else node_budget
    d, s = tv.d, tv.s

    sizes = tv.multiplicities()  # slot sizes, descending
    n_slots = len(sizes)
    members: list[list[int]] = [[] for _ in range(n_slots)]
    covered = [[False] * d for _ in range(d)]
    committed = [0] * d  # sum (size - 1) over slots containing the line
    line_slots: list[list[int]] = [[] for _ in range(d)]
    reachable = _representable_degrees(tv)
    max_deg = d - 1

    # two slots may share a line only if (k1-1)(k2-1) + 2 <= s
    share_ok = [[(k1 - 1) * (k2 - 1) + 2 <= s for k2 in range(d + 1)] for k1 in range(d + 1)]

    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    nodes = 0

    def may_join(line: int, slot: int) -> bool:
        size = sizes[slot]
        new_committed = committed[line] + size - 1
        if new_committed > max_deg or not reachable[max_deg - new_committed]:
            return False
        for other in line_slots[line]:
            if not share_ok[size][sizes[other]]:
                return False
        return all(not covered[m][line] for m in members[slot])

    def join(line: int, slot: int) -> None:
        for m in members[slot]:
            covered[m][line] = covered[line][m] = True
        members[slot].append(line)
        committed[line] += sizes[slot] - 1
        line_slots[line].append(slot)

    def unjoin(line: int, slot: int) -> None:
        line_slots[line].pop()
        committed[line] -= sizes[slot] - 1
        members[slot].pop()
        for m in members[slot]:
            covered[m][line] = covered[line][m] = False

    def slots_completable() -> bool:
        # every partially filled slot still needs enough joinable lines
        for slot in range(n_slots):
            have = len(members[slot])
            if have == 0 or have == sizes[slot]:
                continue
            need = sizes[slot] - have
            count = 0
            for line in range(d):
                if slot in line_slots[line]:
                    continue
                if may_join(line, slot):
                    count += 1
                    if count >= need:
                        break
            if count < need:
                return False
        return True

    def search(ptr: int) -> CliquePartition | None:
        nonlocal nodes
        while ptr < len(pairs) and covered[pairs[ptr][0]][pairs[ptr][1]]:
            ptr += 1
        if ptr == len(pairs):
            return CliquePartition(d, tuple(tuple(m) for m in members))
        i, j = pairs[ptr]

        candidates: list[int] = []
        for slot in line_slots[i]:
            if len(members[slot]) < sizes[slot] and may_join(j, slot):
                candidates.append(slot)
        seen_sizes: set[int] = set()
        for slot in range(n_slots):
            if members[slot]:
                continue
            size = sizes[slot]
            if size in seen_sizes:
                continue
            seen_sizes.add(size)
            if may_join(i, slot) and may_join(j, slot):
                # a seeded pair also needs the mutual share check after i joins
                candidates.append(slot)

        for slot in candidates:
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(nodes)
            seeded = not members[slot]
            if seeded:
                join(i, slot)
                if not may_join(j, slot):
                    unjoin(i, slot)
                    continue
                join(j, slot)
            else:
                join(j, slot)
            if slots_completable():
                witness = search(ptr)
                if witness is not None:
                    return witness
            if seeded:
                unjoin(j, slot)
                unjoin(i, slot)
            else:
                unjoin(j, slot)
        return None

    witness = search(0)
    if witness is None:
        return SearchOutcome(False, None, nodes, True)
    return SearchOutcome(True, witness, nodes, True)
