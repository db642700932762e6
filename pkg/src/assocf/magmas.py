"""Finite magmas and their equational structure.

A magma is a finite set with one binary operation, given as a table.  Binary
trees act as n-ary operations by recursive evaluation, laws are pairs of
trees with the same leaf count (variables are positional, occurring exactly
once per side and in order, so every law here is strongly regular by
construction), and the functions below decide law satisfaction exhaustively,
search for laws, detect solvability through the derived chain, and assemble
the associativity-spectrum classifier.

Sweeps over tuple spaces are vectorized with numpy and run blockwise in
canonical (lexicographic) order, so the first counterexample reported is
deterministic regardless of block size or worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cache, cached_property

import numpy as np

from . import thompson, trees
from .errors import BudgetExceeded, ParseError
from .trees import ExpansionWord, leaf_count

_BLOCK_ELEMENTS = 1 << 24


def _dtype_for(size):
    return np.uint8 if size <= 256 else np.uint16


class Magma:
    """Ordered element names plus the operation table (row op column)."""

    def __init__(self, elements, table):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element names")
        if not elements:
            raise ValueError("magma needs at least one element")
        arr = np.asarray(table)
        n = len(elements)
        if arr.shape != (n, n):
            raise ValueError(f"table must be {n}x{n}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError("table entries must be integer indices")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("table entry out of range")
        self.elements = elements
        self.table = arr.astype(_dtype_for(n))
        self.table.setflags(write=False)
        self._index = {name: i for i, name in enumerate(elements)}

    @classmethod
    def from_rows(cls, elements, rows):
        """Build from rows of element names instead of indices."""
        elements = tuple(elements)
        index = {name: i for i, name in enumerate(elements)}
        table = [[index[name] for name in row] for row in rows]
        return cls(elements, table)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, Magma):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(
            self.table, other.table
        )

    __hash__ = None

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown element {name!r}") from None

    def op(self, x, y):
        return self.elements[int(self.table[self.index(x), self.index(y)])]

    @cached_property
    def simply_perfect(self):
        # surjective operation: every element is some product
        return len(np.unique(self.table)) == len(self.elements)

    @cached_property
    def left_identities(self):
        ident = np.arange(len(self.elements))
        return tuple(
            self.elements[i]
            for i in range(len(self.elements))
            if np.array_equal(self.table[i, :], ident)
        )

    @cached_property
    def right_identities(self):
        ident = np.arange(len(self.elements))
        return tuple(
            self.elements[j]
            for j in range(len(self.elements))
            if np.array_equal(self.table[:, j], ident)
        )

    @property
    def two_sided_identity(self):
        both = set(self.left_identities) & set(self.right_identities)
        return min(both, key=self.index) if both else None

    @cached_property
    def associativity(self):
        return satisfies(self, associative_law())

    @property
    def is_associative(self):
        return bool(self.associativity)

    @cached_property
    def _derived(self):
        current = tuple(range(len(self.elements)))
        chain = [current]
        while True:
            sub = self.table[np.ix_(current, current)]
            nxt = tuple(int(v) for v in np.unique(sub))
            if nxt == current:
                break
            chain.append(nxt)
            current = nxt
        return DerivedChain(
            tuple(tuple(self.elements[i] for i in level) for level in chain)
        )

    def __repr__(self):
        return f"<Magma {len(self.elements)} elements>"


@dataclass(frozen=True)
class Law:
    """A strongly regular law: two trees over the same positional variables."""

    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        if leaf_count(self.lhs) != leaf_count(self.rhs):
            raise ValueError("law sides must have equal leaf counts")

    @property
    def arity(self):
        return leaf_count(self.lhs)

    @property
    def is_trivial(self):
        return self.lhs == self.rhs

    def expand_both(self, word):
        """Simultaneous expansion of both sides by the same word."""
        return Law(word.apply(self.lhs), word.apply(self.rhs))

    def __str__(self):
        return format_law(self)


def format_law(law):
    return f"{trees.format_tree(law.lhs)} = {trees.format_tree(law.rhs)}"


def parse_law(text):
    """Parse "TREE = TREE"."""
    if text.count("=") != 1:
        raise ParseError("law literal must contain exactly one '='")
    left, right = text.split("=")
    try:
        lhs = trees.parse_tree(left)
    except ParseError as exc:
        raise ParseError(exc.args[0]) from None
    offset = len(left) + 1
    try:
        rhs = trees.parse_tree(right)
    except ParseError as exc:
        loc = exc.location
        raise ParseError(
            "bad right side of law",
            location=None if loc is None else loc + offset,
        ) from None
    try:
        return Law(lhs, rhs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


@cache
def associative_law():
    return Law(trees.parse_tree("((. .) .)"), trees.parse_tree("(. (. .))"))


@cache
def five_variable_law():
    """The law whose two sides are the reduced tree pair of [x0, x1].

    Satisfying it eventually is exactly what puts the commutator subgroup
    inside the stable-associativity group of a magma; law satisfaction is
    symmetric in the two sides, so the pair's orientation does not matter.
    """
    c0 = thompson.generators()["c0"]
    return Law(c0.source, c0.target)


@dataclass(frozen=True)
class LawCheck:
    """Outcome of an exhaustive law check, falsy when a counterexample exists.

    The counterexample is the lexicographically first failing tuple in
    element order.
    """

    law: Law
    holds: bool
    counterexample: tuple = None
    lhs_value: str = None
    rhs_value: str = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class EventualResult:
    """Outcome of the bounded simultaneous-expansion search."""

    kind: str  # "holds" | "fails-up-to" | "decided-by-perfection"
    law: Law
    holds: bool
    witness: ExpansionWord = None
    budget: int = 0
    pairs_checked: int = 0


@dataclass(frozen=True)
class DerivedChain:
    """Subsets S = D_0 ⊇ D_1 ⊇ ... with D_{k+1} = op(D_k x D_k), to fixpoint."""

    subsets: tuple

    @property
    def sizes(self):
        return tuple(len(level) for level in self.subsets)

    @property
    def solvable_depth(self):
        for k, level in enumerate(self.subsets):
            if len(level) == 1:
                return k
        return None


@dataclass(frozen=True)
class SolvabilityWitness:
    """A zero element and a complete tree of the certified depth: evaluating
    that tree on any arguments lands on the zero."""

    zero: str
    depth: int
    tree: tuple


@dataclass(frozen=True)
class SearchBudgets:
    eventual_carets: int = 6
    law_arity_cap: int = 4
    prepass_samples: int = 100_000
    tuple_space_guard: int = 100_000_000

    @staticmethod
    def for_size(size):
        # small tables afford deeper arities
        cap = 6 if size <= 4 else 4 if size <= 60 else 3
        return SearchBudgets(law_arity_cap=cap)


@dataclass(frozen=True)
class AssocStatus:
    """Classifier verdict with machine-checkable evidence attached."""

    kind: str  # full_f | trivial_certified | contains_commutator | no_law_up_to | unknown
    reason: str
    evidence: dict = field(default_factory=dict)

    def as_payload(self):
        return {
            "kind": self.kind,
            "reason": self.reason,
            "evidence": {k: _payload_value(v) for k, v in self.evidence.items()},
        }


def _is_tree(v):
    if v == ():
        return True
    return (
        isinstance(v, tuple)
        and len(v) == 2
        and _is_tree(v[0])
        and _is_tree(v[1])
    )


def _payload_value(v):
    if isinstance(v, Law):
        return format_law(v)
    if isinstance(v, ExpansionWord):
        return str(v)
    if isinstance(v, tuple) and _is_tree(v):
        return trees.format_tree(v)
    if isinstance(v, (tuple, list)):
        return [_payload_value(x) for x in v]
    if isinstance(v, (frozenset, set)):
        return sorted(_payload_value(x) for x in v)
    return v


def evaluate(m, tree, args):
    """Value of the tree operation at a tuple of element names."""
    if len(args) != leaf_count(tree):
        raise ValueError("argument count must match leaf count")
    idx = [m.index(a) for a in args]
    table = m.table

    def rec(node, start):
        if trees.is_leaf(node):
            return idx[start], start + 1
        left, after = rec(node[0], start)
        right, after = rec(node[1], after)
        return int(table[left, right]), after

    value, _ = rec(tree, 0)
    return m.elements[value]


def _tree_values(table, tree, leaf_arrays):
    """Vectorized evaluation: leaf i reads leaf_arrays[i], nodes look up the
    table with broadcasting."""

    def rec(node, start):
        if trees.is_leaf(node):
            return leaf_arrays[start], start + 1
        left, after = rec(node[0], start)
        right, after = rec(node[1], after)
        return table[left, right], after

    value, _ = rec(tree, 0)
    return value


def _block_axes(size, prefix_vars, suffix_vars, dtype, lo, hi):
    """Axes for one block: prefix variables flattened into axis 0 as the
    combo range [lo, hi), suffix variables as full broadcast axes."""
    width = hi - lo
    lead = [1] * suffix_vars
    axes = []
    if prefix_vars:
        coords = np.unravel_index(np.arange(lo, hi), (size,) * prefix_vars)
        axes = [c.astype(dtype).reshape([width] + lead) for c in coords]
    for j in range(suffix_vars):
        shape = [1] * (1 + suffix_vars)
        shape[1 + j] = size
        axes.append(np.arange(size, dtype=dtype).reshape(shape))
    return axes


def _first_mismatch(m, lhs, rhs, threads=1):
    """First tuple (in lexicographic element order) where the trees disagree,
    or None.

    The trailing d variables get full broadcast axes with size^d bounded by
    the block budget, and the leading n-d variables are flattened onto axis 0
    in lexicographic combo order, so block memory stays bounded for any
    arity and C-order scanning is globally canonical.  With threads > 1
    blocks are dispatched in waves and read back in order, keeping the
    answer deterministic.
    """
    n = leaf_count(lhs)
    size = len(m)
    dtype = _dtype_for(size)
    table = m.table
    suffix_vars = 1
    while suffix_vars < n and size ** (suffix_vars + 1) <= _BLOCK_ELEMENTS:
        suffix_vars += 1
    prefix_vars = n - suffix_vars
    combos = size**prefix_vars
    per_block = max(1, _BLOCK_ELEMENTS // size**suffix_vars)
    blocks = [
        (lo, min(lo + per_block, combos)) for lo in range(0, combos, per_block)
    ]

    def run(block):
        lo, hi = block
        axes = _block_axes(size, prefix_vars, suffix_vars, dtype, lo, hi)
        mismatch = _tree_values(table, lhs, axes) != _tree_values(table, rhs, axes)
        if not mismatch.any():
            return None
        flat = int(np.argmax(mismatch))
        at = np.unravel_index(flat, mismatch.shape)
        prefix = (
            np.unravel_index(lo + int(at[0]), (size,) * prefix_vars)
            if prefix_vars
            else ()
        )
        return tuple(int(v) for v in prefix) + tuple(int(v) for v in at[1:])

    if threads <= 1:
        for block in blocks:
            found = run(block)
            if found is not None:
                return found
        return None
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(blocks), threads):
            for found in pool.map(run, blocks[start : start + threads]):
                if found is not None:
                    return found
    return None


def satisfies(m, law, *, threads=1):
    """Exhaustive check of a law over all |S|^n tuples, early exit."""
    found = _first_mismatch(m, law.lhs, law.rhs, threads=threads)
    if found is None:
        return LawCheck(law, True)
    names = tuple(m.elements[i] for i in found)
    return LawCheck(
        law,
        False,
        counterexample=names,
        lhs_value=evaluate(m, law.lhs, names),
        rhs_value=evaluate(m, law.rhs, names),
    )


def expansion_monotone_check(m, law, word, *, threads=1):
    """Holding laws stay true under simultaneous expansion; check one case.

    Requires the base law to hold; returns the expanded law's check, which
    is guaranteed true (a held law transfers to every simultaneous
    expansion, since the expanded sides evaluate through the originals).
    """
    if not satisfies(m, law, threads=threads):
        raise ValueError("expansion monotonicity requires a law that holds")
    return bool(satisfies(m, law.expand_both(word), threads=threads))


def satisfies_eventually(
    m,
    law,
    budget=6,
    *,
    use_perfection_shortcut=True,
    threads=1,
    tuple_space_guard=100_000_000,
):
    """Search simultaneous expansions of the law, at most `budget` added
    carets per side, breadth-first so witnesses are caret-minimal.

    For a simply perfect magma the search is unnecessary: some expansion
    holds iff the law itself does, and the answer is exact for all budgets.
    Every added caret multiplies the tuple space by |S|, so a deep search on
    a large table explodes; checks beyond tuple_space_guard raise
    BudgetExceeded instead of running for hours.
    """
    if use_perfection_shortcut and m.simply_perfect:
        ok = bool(satisfies(m, law, threads=threads))
        return EventualResult(
            "decided-by-perfection",
            law,
            ok,
            witness=ExpansionWord(()) if ok else None,
            budget=budget,
            pairs_checked=1,
        )
    size = len(m)
    seen = {(law.lhs, law.rhs)}
    frontier = [(law.lhs, law.rhs, ())]
    checked = 0
    for level in range(budget + 1):
        for lhs, rhs, applied in frontier:
            space = size ** leaf_count(lhs)
            if tuple_space_guard is not None and space > tuple_space_guard:
                raise BudgetExceeded(
                    f"eventual search at {level} added carets needs "
                    f"{space} tuples per check (guard {tuple_space_guard})"
                )
            checked += 1
            if satisfies(m, Law(lhs, rhs), threads=threads):
                return EventualResult(
                    "holds",
                    law,
                    True,
                    witness=ExpansionWord.from_applied(applied),
                    budget=budget,
                    pairs_checked=checked,
                )
        if level == budget:
            break
        grown = []
        for lhs, rhs, applied in frontier:
            for i in range(1, leaf_count(lhs) + 1):
                key = (trees.expand(lhs, i), trees.expand(rhs, i))
                if key not in seen:
                    seen.add(key)
                    grown.append((key[0], key[1], applied + (i,)))
        frontier = grown
    return EventualResult(
        "fails-up-to", law, False, budget=budget, pairs_checked=checked
    )


def derived_chain(m):
    return m._derived


def is_solvable(m):
    """Witness (zero, depth, complete tree) if some D_k is a singleton.

    The chain decides solvability because the image of any tree operation is
    sandwiched: D_{max leaf depth} ⊆ image ⊆ D_{min leaf depth}, so a
    constant-image tree exists iff the chain reaches a singleton, and then
    the complete tree of that depth is a witness.
    """
    chain = derived_chain(m)
    depth = chain.solvable_depth
    if depth is None:
        return None
    zero = chain.subsets[depth][0]
    return SolvabilityWitness(zero=zero, depth=depth, tree=trees.complete_tree(depth))


def restricted_image(m, tree, fixed):
    """Image of the tree operation with some leaf positions (1-based) pinned
    to fixed elements and the rest ranging over the whole magma."""
    n = leaf_count(tree)
    size = len(m)
    dtype = _dtype_for(size)
    for pos in fixed:
        if not 1 <= pos <= n:
            raise ValueError(f"leaf position {pos} out of range 1..{n}")
    free_axis = {}
    for j in range(1, n + 1):
        if j not in fixed:
            free_axis[j] = len(free_axis)
    nf = len(free_axis)
    leaf_arrays = []
    for j in range(1, n + 1):
        if j in fixed:
            leaf_arrays.append(np.asarray(m.index(fixed[j]), dtype=dtype))
        else:
            shape = [1] * nf
            shape[free_axis[j]] = size
            leaf_arrays.append(np.arange(size, dtype=dtype).reshape(shape))
    values = _tree_values(m.table, tree, leaf_arrays)
    return frozenset(m.elements[int(v)] for v in np.unique(values))


def centralizer(m, subset, zero):
    """Elements x with x op u = zero for every u in the subset."""
    z = m.index(zero)
    cols = [m.index(u) for u in subset]
    mask = (m.table[:, cols] == z).all(axis=1)
    return frozenset(m.elements[int(i)] for i in np.nonzero(mask)[0])


def search_laws(m, n, *, budgets=None, force=False, seed=0, threads=1):
    """All nontrivial laws of arity n that hold, exhaustively verified.

    Unordered pairs of distinct n-leaf trees are tried in enumeration order.
    When the tuple space dwarfs the sample budget, a randomized pre-pass
    evaluates every tree once on a shared sample matrix and only surviving
    pairs get the exhaustive sweep.  Guarded by tuple-space size unless
    forced.
    """
    budgets = budgets or SearchBudgets.for_size(len(m))
    size = len(m)
    space = size**n
    if space > budgets.tuple_space_guard and not force:
        raise BudgetExceeded(
            f"tuple space {size}^{n} = {space} exceeds guard "
            f"{budgets.tuple_space_guard} (force to override)"
        )
    shapes = trees.enumerate_trees(n)
    pairs = [
        (i, j) for i in range(len(shapes)) for j in range(i + 1, len(shapes))
    ]
    if budgets.prepass_samples * 4 < space:
        rng = np.random.default_rng(seed)
        sample = rng.integers(0, size, size=(n, budgets.prepass_samples))
        leaf_arrays = [sample[j] for j in range(n)]
        sampled = [_tree_values(m.table, t, leaf_arrays) for t in shapes]
        pairs = [
            (i, j) for i, j in pairs if np.array_equal(sampled[i], sampled[j])
        ]
    laws = []
    for i, j in pairs:
        law = Law(shapes[i], shapes[j])
        if satisfies(m, law, threads=threads):
            laws.append(law)
    return tuple(laws)


def assoc_status(m, budgets=None, *, seed=0, threads=1):
    """Cascade classifier for the stable-associativity group of a magma.

    Associative or solvable certifies the full group; a two-sided identity
    on a non-associative table certifies the trivial group; the five
    variable law (directly for simply perfect tables, else through bounded
    expansion search) certifies containing the commutator subgroup; failing
    all that, bounded law search reports either exhaustion bounds or the
    laws it found.  Unknown never claims triviality: that would need
    no-law-at-every-arity, which bounded search cannot certify.
    """
    budgets = budgets or SearchBudgets.for_size(len(m))
    assoc = m.associativity
    if assoc:
        return AssocStatus("full_f", "associative", {"law": assoc.law})
    witness = is_solvable(m)
    if witness is not None:
        return AssocStatus(
            "full_f",
            "solvable",
            {
                "zero": witness.zero,
                "depth": witness.depth,
                "tree": witness.tree,
                "chain_sizes": derived_chain(m).sizes,
            },
        )
    identity = m.two_sided_identity
    if identity is not None:
        return AssocStatus(
            "trivial_certified",
            "identity-theorem",
            {
                "identity": identity,
                "counterexample": assoc.counterexample,
                "lhs_value": assoc.lhs_value,
                "rhs_value": assoc.rhs_value,
            },
        )
    fvl = five_variable_law()
    notes = {}
    if m.simply_perfect:
        direct = satisfies(m, fvl, threads=threads)
        if direct:
            return AssocStatus(
                "contains_commutator", "fvl-on-the-nose", {"law": fvl}
            )
    else:
        # 13+ elements put deep expansion levels past any sane tuple budget;
        # an aborted search is inconclusive, not a failure, so fall through.
        try:
            eventual = satisfies_eventually(
                m,
                fvl,
                budgets.eventual_carets,
                threads=threads,
                tuple_space_guard=budgets.tuple_space_guard,
            )
        except BudgetExceeded as stop:
            notes["fvl_search"] = f"aborted: {stop}"
        else:
            if eventual.kind == "holds":
                return AssocStatus(
                    "contains_commutator",
                    "fvl-at-expansion",
                    {"law": fvl, "expansion": eventual.witness},
                )
    found = []
    searched_to = 2
    for arity in range(3, budgets.law_arity_cap + 1):
        found.extend(search_laws(m, arity, budgets=budgets, seed=seed, threads=threads))
        searched_to = arity
        if found:
            return AssocStatus(
                "unknown",
                "laws-found",
                {"laws": tuple(found), "searched_up_to": searched_to, **notes},
            )
    return AssocStatus(
        "no_law_up_to",
        "law-search-exhausted",
        {"arity": searched_to, **notes},
    )


def load_magma(text):
    """Parse the magma file format: a names line, then |S| rows of names.

    '#' starts a comment, blank lines are skipped, errors carry 1-based line
    numbers.
    """
    names = None
    rows = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        last_line = lineno
        if names is None:
            if len(set(parts)) != len(parts):
                raise ParseError("duplicate element names", location=lineno)
            names = parts
            continue
        if len(parts) != len(names):
            raise ParseError(
                f"expected {len(names)} entries per row, got {len(parts)}",
                location=lineno,
            )
        for name in parts:
            if name not in names:
                raise ParseError(f"unknown element {name!r}", location=lineno)
        rows.append(parts)
        if len(rows) > len(names):
            raise ParseError("too many table rows", location=lineno)
    if names is None:
        raise ParseError("empty magma file")
    if len(rows) != len(names):
        raise ParseError(
            f"expected {len(names)} table rows, got {len(rows)}",
            location=last_line,
        )
    return Magma.from_rows(names, rows)


def dump_magma(m):
    """Inverse of load_magma, bit-exact on round trip."""
    lines = [" ".join(m.elements)]
    for i in range(len(m)):
        lines.append(" ".join(m.elements[int(v)] for v in m.table[i]))
    return "\n".join(lines) + "\n"
