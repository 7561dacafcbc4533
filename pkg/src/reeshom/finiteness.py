"""Presentation audits and finiteness checks.

* deficiency lower bound |R| - |X| >= d(H_2(M)) - rk ab G(M) for a finite
  presentation <X | R> of a finite monoid M;
* Euler characteristic of the presentation complex;
* FP_1 for Rees matrix semigroups over finite groups via the connectivity of
  the graph made of |A| Cayley-graph copies joined by star edges;
* first Betti numbers of finite graphs (rank of the relation module).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotNormalizedError, RelationError, SchemaError, check_names
from .groups import DEFAULT_CELL_CAP, FiniteGroupTable, subgroup_generated
from .intlin import AbelianGroupStructure, IntMatrix, cokernel_structure, minimal_generators
from .rees import MonoidTable, ReesMatrixSemigroup, is_normalized, normalize

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Presentation:
    """Generators plus relations u = v.  Words are (generator, exponent) runs;
    negative exponents only make sense when the presentation is read as a
    group presentation."""

    generators: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise SchemaError("generator names must be distinct")
        for k, (u, v) in enumerate(self.relations):
            for word in (u, v):
                for x, _ in word:
                    if x not in gens:
                        raise SchemaError(f"relation {k} uses undeclared generator {x!r}")

    @classmethod
    def from_json(cls, obj) -> "Presentation":
        if not isinstance(obj, dict) or "generators" not in obj:
            raise SchemaError("presentation needs 'generators' and 'relations'")
        gens = check_names(obj["generators"], "'generators'")
        if not all(gens):
            raise SchemaError("generator names must be nonempty")
        raw = obj.get("relations", [])
        if not isinstance(raw, list):
            raise SchemaError("'relations' must be a list of [u, v] pairs")
        rels = []
        for k, pair in enumerate(raw):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise SchemaError(f"relation {k} must be a [u, v] pair")
            rels.append(tuple(parse_word(w, gens, where=f"relation {k}") for w in pair))
        return cls(gens, tuple(rels))

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [[format_word(u), format_word(v)] for u, v in self.relations],
        }


_EXP = re.compile(r"\^(-?\d+)")


def parse_word(word, generators: Sequence[str], where: str = "word") -> Word:
    """Parse "abba", "ab^-1" or ["a", ["b", -1]] into (generator, exponent) runs.

    String words are split by longest generator-name match; "" or "1" is the
    empty word.
    """
    runs: list[tuple[str, int]] = []
    if isinstance(word, str):
        if word in ("", "1") and "1" not in generators:
            return ()
        names = sorted(generators, key=len, reverse=True)
        pos = 0
        while pos < len(word):
            name = next((g for g in names if word.startswith(g, pos)), None)
            if name is None:
                raise SchemaError(f"{where}: cannot read a generator at {word[pos:]!r}")
            pos += len(name)
            exp = 1
            m = _EXP.match(word, pos)
            if m:
                exp = int(m.group(1))
                pos = m.end()
            runs.append((name, exp))
    elif isinstance(word, list):
        for letter in word:
            if isinstance(letter, str):
                runs.append((letter, 1))
            elif (isinstance(letter, list) and len(letter) == 2 and isinstance(letter[0], str)
                  and isinstance(letter[1], int)):
                runs.append((letter[0], letter[1]))
            else:
                raise SchemaError(f"{where}: bad letter {letter!r}")
        for name, _ in runs:
            if name not in generators:
                raise SchemaError(f"{where}: unknown generator {name!r}")
    else:
        raise SchemaError(f"{where}: a word is a string or a list, got {word!r}")
    return tuple((x, e) for x, e in runs if e)


def format_word(word: Word) -> str:
    if not word:
        return ""
    return "".join(x if e == 1 else f"{x}^{e}" for x, e in word)


def presentation_euler_characteristic(p: Presentation) -> int:
    return 1 - len(p.generators) + len(p.relations)


def gm_abelianization(p: Presentation) -> AbelianGroupStructure:
    """Abelianization of the group with the same presentation."""
    index = {x: i for i, x in enumerate(p.generators)}
    cols = []
    for u, v in p.relations:
        col = [0] * len(p.generators)
        for x, e in u:
            col[index[x]] += e
        for x, e in v:
            col[index[x]] -= e
        cols.append(col)
    k = len(p.generators)
    return cokernel_structure(IntMatrix.from_columns(cols, rows=k) if cols else IntMatrix.zeros(k, 0))


@dataclass(frozen=True)
class PrideReport:
    deficiency_excess: int
    d_h2: int
    rk_gm_ab: int
    h2: AbelianGroupStructure
    gm_ab: AbelianGroupStructure

    @property
    def bound(self) -> int:
        return self.d_h2 - self.rk_gm_ab

    @property
    def holds(self) -> bool:
        return self.deficiency_excess >= self.bound

    def to_json(self) -> dict:
        return {
            "deficiency_excess": self.deficiency_excess,
            "d_h2": self.d_h2,
            "rk_gm_ab": self.rk_gm_ab,
            "bound": self.bound,
            "holds": self.holds,
            "h2": self.h2.to_json(),
            "gm_ab": self.gm_ab.to_json(),
        }


def evaluate_word(monoid: MonoidTable, word: Word, assign: dict[str, int]) -> int:
    x = monoid.identity
    for g, e in word:
        if e < 0:
            raise RelationError(f"monoid words cannot contain inverse letters ({g}^{e})")
        for _ in range(e):
            x = monoid.mul(x, assign[g])
    return x


def check_relations(p: Presentation, monoid: MonoidTable, assign: dict[str, int]) -> list[str]:
    """Relations of ``p`` that fail in ``monoid`` under ``assign``."""
    missing = [x for x in p.generators if x not in assign]
    if missing:
        raise RelationError(f"no assignment for generators {missing}")
    failures = []
    for u, v in p.relations:
        lhs, rhs = evaluate_word(monoid, u, assign), evaluate_word(monoid, v, assign)
        if lhs != rhs:
            failures.append(
                f"{format_word(u) or '1'} = {format_word(v) or '1'} fails: "
                f"{monoid.names[lhs]} != {monoid.names[rhs]}"
            )
    return failures


def pride_check(
    p: Presentation,
    monoid: MonoidTable,
    assign: dict[str, int],
    cell_cap: int = DEFAULT_CELL_CAP,
) -> PrideReport:
    """Audit the deficiency bound for ``p`` against the finite monoid ``monoid``.

    Only checks that the relations hold under ``assign``; whether ``p``
    actually presents ``monoid`` is the caller's responsibility.
    """
    from .bar_oracle import monoid_homology

    failures = check_relations(p, monoid, assign)
    if failures:
        raise RelationError("; ".join(failures))
    h2 = monoid_homology(monoid, 2, cell_cap)
    gm_ab = gm_abelianization(p)
    return PrideReport(
        len(p.relations) - len(p.generators), minimal_generators(h2), gm_ab.free_rank, h2, gm_ab,
    )


# -- graphs -------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        n = len(self.vertices)
        for s, t, _ in self.edges:
            if not (0 <= s < n and 0 <= t < n):
                raise SchemaError(f"edge ({s}, {t}) has an endpoint out of range")

    def components(self) -> list[set[int]]:
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s, t, _ in self.edges:
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[rs] = rt
        groups: dict[int, set[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[s, t, label] for s, t, label in self.edges],
        }

    @classmethod
    def from_json(cls, obj) -> "LabeledGraph":
        if not isinstance(obj, dict) or "vertices" not in obj:
            raise SchemaError("graph needs 'vertices' and 'edges'")
        vertices = check_names(obj["vertices"], "'vertices'")
        raw = obj.get("edges", [])
        if not isinstance(raw, list):
            raise SchemaError("'edges' must be a list")
        edges = []
        for k, e in enumerate(raw):
            if not (isinstance(e, list) and len(e) in (2, 3)):
                raise SchemaError(f"edge {k} must be [source, target] or [source, target, label]")
            if any(isinstance(x, bool) or not isinstance(x, int) for x in e[:2]):
                raise SchemaError(f"edge {k}: endpoints must be vertex indices")
            label = e[2] if len(e) == 3 else ""
            if not isinstance(label, str):
                raise SchemaError(f"edge {k}: label must be a string")
            edges.append((e[0], e[1], label))
        return cls(vertices, tuple(edges))


def cayley_graph(group: FiniteGroupTable, gens: Iterable[int]) -> LabeledGraph:
    """Edge g -> g x labelled x for every g and every x in ``gens``."""
    gens = sorted(set(gens))
    edges = tuple(
        (g, group.mul(g, x), group.name(x)) for g in group.elements() for x in gens
    )
    return LabeledGraph(tuple(group.name(g) for g in group.elements()), edges)


def graph_first_betti(graph: LabeledGraph) -> tuple[int, int]:
    """(number of components, rank of H_1) = (c, E - V + c)."""
    c = len(graph.components())
    return c, len(graph.edges) - len(graph.vertices) + c


def _fp1_generators(s: ReesMatrixSemigroup, ys: Iterable) -> set:
    i0 = s.a_index(s.a0)
    out = set(ys)
    for j in range(len(s.B)):
        for i in range(len(s.A)):
            if i != i0:
                out.add(s.C[j][i])
    return out


def gamma_s_graph(s: ReesMatrixSemigroup, ys: Iterable) -> LabeledGraph:
    """|A| copies of the Cayley graph of G with respect to
    Y + {C[b][a] : a != a0}, joined by edges (a0, 1) -> (a, 1).

    Vertex (a, g) stands for the element (a, g, b0).
    """
    if not s.group.is_finite:
        raise SchemaError("gamma_s_graph needs a finite group")
    if s.a0 is None or s.b0 is None or not is_normalized(s, s.a0, s.b0):
        raise NotNormalizedError("gamma_s_graph needs a semigroup normalized at its designated (a0, b0)")
    G = s.group
    gens = sorted(_fp1_generators(s, ys))
    order = G.order
    vertices = tuple(f"({a},{G.name(g)},{s.b0})" for a in s.A for g in G.elements())
    edges = []
    for i in range(len(s.A)):
        for g in G.elements():
            for x in gens:
                edges.append((i * order + g, i * order + G.mul(g, x), G.name(x)))
    i0, e = s.a_index(s.a0), G.identity
    for i, a in enumerate(s.A):
        if i != i0:
            edges.append((i0 * order + e, i * order + e, f"eps:{a}"))
    return LabeledGraph(vertices, tuple(edges))


def fp1_check(s: ReesMatrixSemigroup, ys: Iterable) -> bool:
    """Whether Y together with the entries C[b][a], a != a0, generate G
    (for S normalized at its base pair; S is normalized first if needed)."""
    if not s.group.is_finite:
        raise SchemaError("fp1_check needs a finite group")
    a0, b0 = s.base_pair
    if not (s.a0 == a0 and s.b0 == b0 and is_normalized(s, a0, b0)):
        s = normalize(s, a0, b0)[0]
    return len(subgroup_generated(s.group, _fp1_generators(s, ys))) == s.group.order
