"""Equational rewriting for leaf-order-preserving laws.

Laws here keep every variable exactly once, in order, on both sides, so a
rewrite step never changes the leaf count of the host tree.  That makes
derivability at a fixed leaf count a finite breadth-first search, and
"derivable after some simultaneous expansion" a bounded outer search over
expanded pairs.  On top of that sit the shift operators and a bounded
closure generator for shift-invariant subgroups of F, which turn subgroup
membership questions into derivability questions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from . import thompson, trees
from .errors import BudgetExceeded, ParseError
from .magmas import Law, format_law, parse_law
from .trees import ExpansionWord, format_tree, leaf_count

# BFS state space at n leaves is the Catalan number C(n-1); 14 leaves
# (742900 trees) is the largest desk-sized slice.
LEAF_CAP = 14


@dataclass(frozen=True)
class VarietyPresentation:
    """A finite set of laws, fixed in presentation order."""

    laws: tuple

    def __post_init__(self):
        object.__setattr__(self, "laws", tuple(self.laws))
        for law in self.laws:
            if not isinstance(law, Law):
                raise TypeError(f"expected Law, got {type(law).__name__}")

    @staticmethod
    def from_elements(elements):
        """Laws read off the reduced tree pairs of group elements."""
        return VarietyPresentation(
            tuple(Law(g.source, g.target) for g in elements)
        )

    def __len__(self):
        return len(self.laws)


def load_variety(text):
    """One law per line; '#' comments and blank lines are skipped."""
    laws = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            laws.append(parse_law(line))
        except (ParseError, ValueError) as err:
            message = err.args[0] if err.args else str(err)
            raise ParseError(message, location=lineno) from err
    if not laws:
        raise ParseError("no laws in variety file")
    return VarietyPresentation(tuple(laws))


def dump_variety(v):
    return "".join(format_law(law) + "\n" for law in v.laws)


@dataclass(frozen=True)
class RewriteStep:
    """One application of a law at a vertex.

    substitution[i] is the subtree standing for the law's i-th variable;
    the step is self-contained (carries its Law), law_index names it in the
    presentation for display.
    """

    vertex: str
    law: Law
    law_index: int
    forward: bool
    substitution: tuple

    def __str__(self):
        arrow = "left-to-right" if self.forward else "right-to-left"
        where = self.vertex or "root"
        return f"at {where}: law #{self.law_index + 1} {arrow}"


def instantiate(pattern, substitution):
    """Graft substitution subtrees onto the pattern's leaves, in order."""

    def rec(node, start):
        if trees.is_leaf(node):
            if start >= len(substitution):
                raise ValueError(
                    f"pattern needs more than the {len(substitution)} "
                    "substitution subtrees given"
                )
            return substitution[start], start + 1
        left, after = rec(node[0], start)
        right, after = rec(node[1], after)
        return (left, right), after

    built, used = rec(pattern, 0)
    if used != len(substitution):
        raise ValueError(
            f"pattern has {used} variables, substitution has {len(substitution)}"
        )
    return built


def match(pattern, t):
    """Substitution making the pattern equal t, or None.

    Pattern leaves are variables and match any subtree; pattern carets
    require carets.  Left-to-right capture order matches instantiate.
    """
    captured = []

    def rec(node, sub):
        if trees.is_leaf(node):
            captured.append(sub)
            return True
        if trees.is_leaf(sub):
            return False
        return rec(node[0], sub[0]) and rec(node[1], sub[1])

    if not rec(pattern, t):
        return None
    return tuple(captured)


def apply_step(t, step):
    src, dst = (
        (step.law.lhs, step.law.rhs)
        if step.forward
        else (step.law.rhs, step.law.lhs)
    )
    here = trees.subtree_at(t, step.vertex)
    if here != instantiate(src, step.substitution):
        raise ValueError(f"law does not match at vertex {step.vertex!r}")
    return trees.replace_at(t, step.vertex, instantiate(dst, step.substitution))


def _root_split(t):
    if trees.is_leaf(t):
        return (1, 0)
    return (leaf_count(t[0]), leaf_count(t[1]))


def _preserves_root_split(variety):
    """True when no law application can change a root leaf split.

    A rewrite below the root never changes the split.  A rewrite at the
    root keeps it iff the law's sides put the same number of variables in
    their left subtrees (variables are positional, so substitution sizes
    transfer unchanged).
    """
    for law in variety.laws:
        if _root_split(law.lhs)[0] != _root_split(law.rhs)[0]:
            return False
    return True


def _neighbors(t, variety):
    """Rewrites of t in canonical order: vertex preorder, then law index,
    then forward before backward."""
    out = []
    for vertex in trees.vertices(t):
        sub = trees.subtree_at(t, vertex)
        for law_index, law in enumerate(variety.laws):
            if law.is_trivial:
                continue
            for forward in (True, False):
                src, dst = (law.lhs, law.rhs) if forward else (law.rhs, law.lhs)
                captured = match(src, sub)
                if captured is None:
                    continue
                step = RewriteStep(vertex, law, law_index, forward, captured)
                out.append((trees.replace_at(t, vertex, instantiate(dst, captured)), step))
    return out


def derivable(p, q, variety, *, leaf_cap=LEAF_CAP, root_split_pruning=False):
    """Proof (tuple of RewriteStep) rewriting p into q, or None.

    The search space is all trees with p's leaf count, so exhaustion of the
    reachable class certifies non-derivability at this leaf count (not at
    expansions; see eventually_derivable).
    """
    if leaf_count(p) != leaf_count(q):
        raise ValueError("derivability needs equal leaf counts")
    if leaf_count(p) > leaf_cap:
        raise BudgetExceeded(
            f"{leaf_count(p)} leaves exceeds the search cap {leaf_cap}"
        )
    if root_split_pruning:
        if not _preserves_root_split(variety):
            raise ValueError(
                "root-split pruning needs laws that fix the root leaf split"
            )
        if _root_split(p) != _root_split(q):
            return None
    if p == q:
        return ()
    parents = {p: None}
    frontier = deque([p])
    while frontier:
        t = frontier.popleft()
        for neighbor, step in _neighbors(t, variety):
            if neighbor in parents:
                continue
            parents[neighbor] = (t, step)
            if neighbor == q:
                steps = []
                at = neighbor
                while parents[at] is not None:
                    at, step = parents[at]
                    steps.append(step)
                return tuple(reversed(steps))
            frontier.append(neighbor)
    return None


def format_proof(p, steps):
    """Numbered steps with every intermediate tree."""
    lines = [f"start {format_tree(p)}"]
    t = p
    for k, step in enumerate(steps, 1):
        t = apply_step(t, step)
        lines.append(f"{k}. {step} -> {format_tree(t)}")
    return "\n".join(lines)


@dataclass(frozen=True)
class DerivabilityResult:
    """Outcome of the bounded eventual-derivability search.

    kind "holds": proof found for the pair expanded by `expansion`.
    kind "fails-up-to": every simultaneous expansion within the caret
    budget was exhausted without a proof.
    """

    kind: str
    expansion: object = None
    proof: object = None
    budget: int = 0
    pairs_checked: int = 0

    def __bool__(self):
        return self.kind == "holds"


def eventually_derivable(
    p, q, variety, budget=3, *, leaf_cap=LEAF_CAP, root_split_pruning=False
):
    """Run derivable on every simultaneous expansion of (p, q), breadth
    first by added carets, up to the budget."""
    if leaf_count(p) != leaf_count(q):
        raise ValueError("derivability needs equal leaf counts")
    seen = {(p, q)}
    frontier = [(p, q, ())]
    checked = 0
    for level in range(budget + 1):
        for lhs, rhs, applied in frontier:
            checked += 1
            proof = derivable(
                lhs,
                rhs,
                variety,
                leaf_cap=leaf_cap,
                root_split_pruning=root_split_pruning,
            )
            if proof is not None:
                return DerivabilityResult(
                    "holds",
                    expansion=ExpansionWord.from_applied(applied),
                    proof=proof,
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
    return DerivabilityResult("fails-up-to", budget=budget, pairs_checked=checked)


def shift_at_vertex(g, word):
    """Iterated shift endomorphism along a vertex word.

    The letters name nested halves of [0,1]; the innermost (last) letter is
    applied first, so the result is supported in the subinterval the whole
    word addresses.
    """
    out = g
    for ch in reversed(word):
        if ch not in "01":
            raise ParseError(f"bad vertex word character {ch!r}")
        out = thompson.shift_endo(out, "left" if ch == "0" else "right")
    return out


def _vertex_words(depth):
    for length in range(depth + 1):
        yield from ("".join(w) for w in product("01", repeat=length))


def closure_generate(generators, depth, *, word_cap=None):
    """Bounded slice of the smallest shift-invariant subgroup containing
    the generators.

    Seeds are sigma_w(g) and sigma_w(g^-1) for vertex words with |w| up to
    word_cap (default: depth); the result is every product of at most
    `depth` seeds, deduplicated by reduced pair.  Always contains the
    identity; an under-approximation that only grows with either bound.
    """
    cap = depth if word_cap is None else word_cap
    seeds = {thompson.IDENTITY}
    for g in generators:
        for word in _vertex_words(cap):
            seeds.add(shift_at_vertex(g, word))
            seeds.add(shift_at_vertex(thompson.invert(g), word))
    if depth < 1:
        return frozenset({thompson.IDENTITY})
    current = frozenset(seeds)
    for _ in range(depth - 1):
        current = frozenset(
            thompson.multiply(a, b) for a in current for b in seeds
        )
    return current


@dataclass(frozen=True)
class MembershipResult:
    """Semidecision for membership in a shift-invariant subgroup.

    kind "in" carries the expansion and rewrite proof; "not-derivable-up-to"
    is a bounded negative, never an absolute one.
    """

    kind: str
    element: object
    expansion: object = None
    proof: object = None
    budget: int = 0
    leaf_cap: int = LEAF_CAP

    def __bool__(self):
        return self.kind == "in"


def membership_semidecide(g, generators, *, budget=3, leaf_cap=LEAF_CAP):
    """Test g against the subgroup generated by `generators` under both
    shifts, via eventual derivability of g's reduced pair in the variety
    presented by the generators' pairs."""
    variety = VarietyPresentation.from_elements(generators)
    result = eventually_derivable(
        g.source, g.target, variety, budget, leaf_cap=leaf_cap
    )
    if result:
        return MembershipResult(
            "in",
            g,
            expansion=result.expansion,
            proof=result.proof,
            budget=budget,
            leaf_cap=leaf_cap,
        )
    return MembershipResult(
        "not-derivable-up-to", g, budget=budget, leaf_cap=leaf_cap
    )
