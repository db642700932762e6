"""Rooted ordered binary trees and the monoid of leaf expansions.

A tree is an immutable nested structure: the empty tuple ``()`` is the
single-leaf tree, and a pair ``(left, right)`` is an interior node with
two subtrees.  Leaves are numbered 1..n from left to right.  Vertices
are addressed by words over {0,1} ("" is the root, 0 = left child,
1 = right child), so the leaf addresses of a tree read in left-to-right
order are exactly its leaf numbering.

The text form of a tree is "." for a leaf and "(L R)" for a node, with
whitespace free between tokens: "((. .) .)" is the three-leaf tree whose
first two leaves hang off a common caret.

``ExpansionWord`` models words in the monoid generated by the elementary
expansions beta^i (replace leaf i by a caret, identity when i exceeds
the current leaf count), subject to

    beta^i beta^j = beta^{j+1} beta^i     for i < j,

where the right factor of a product acts first.
"""

import random

from .errors import BudgetExceeded, ParseError

# A leaf is (), a node is a 2-tuple of trees.
LEAF = ()

DEFAULT_TREE_CAP = 14


def is_leaf(t):
    return t == LEAF


def leaf_count(t):
    if t == LEAF:
        return 1
    return leaf_count(t[0]) + leaf_count(t[1])


def parse_tree(text):
    """Parse the "." / "(L R)" literal form. Whitespace is ignored."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise ParseError("unexpected end of tree literal", pos)
        ch = text[pos]
        if ch == ".":
            pos += 1
            return LEAF
        if ch == "(":
            pos += 1
            left = parse()
            right = parse()
            skip_ws()
            if pos >= n or text[pos] != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return (left, right)
        raise ParseError(f"unexpected character {ch!r}", pos)

    out = parse()
    skip_ws()
    if pos != n:
        raise ParseError("trailing input after tree literal", pos)
    return out


def format_tree(t):
    if t == LEAF:
        return "."
    return f"({format_tree(t[0])} {format_tree(t[1])})"


def expand(t, i):
    """Replace leaf i by a caret; identity when i exceeds the leaf count."""
    if i < 1:
        raise ParseError(f"leaf index must be >= 1, got {i}")
    if i > leaf_count(t):
        return t
    return _expand(t, i)


def _expand(t, i):
    if t == LEAF:
        return (LEAF, LEAF)
    left, right = t
    nl = leaf_count(left)
    if i <= nl:
        return (_expand(left, i), right)
    return (left, _expand(right, i - nl))


def shift(t, side):
    """Hang t under a fresh root caret, on the given side."""
    if side == "left":
        return (t, LEAF)
    if side == "right":
        return (LEAF, t)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def reflect(t):
    """Mirror image: swap children at every interior vertex."""
    if t == LEAF:
        return LEAF
    return (reflect(t[1]), reflect(t[0]))


def leaf_addresses(t):
    """Addresses of the leaves in left-to-right order."""
    out = []

    def walk(t, prefix):
        if t == LEAF:
            out.append(prefix)
        else:
            walk(t[0], prefix + "0")
            walk(t[1], prefix + "1")

    walk(t, "")
    return tuple(out)


def vertices(t):
    """All vertex addresses in preorder, which is lexicographic order."""
    out = []

    def walk(t, prefix):
        out.append(prefix)
        if t != LEAF:
            walk(t[0], prefix + "0")
            walk(t[1], prefix + "1")

    walk(t, "")
    return tuple(out)


def subtree_at(t, address):
    for ch in address:
        if t == LEAF:
            raise ValueError(f"no vertex {address!r} in tree")
        if ch == "0":
            t = t[0]
        elif ch == "1":
            t = t[1]
        else:
            raise ParseError(f"bad vertex word character {ch!r}")
    return t


def replace_at(t, address, sub):
    if address == "":
        return sub
    if t == LEAF:
        raise ValueError(f"no vertex {address!r} in tree")
    if address[0] == "0":
        return (replace_at(t[0], address[1:], sub), t[1])
    return (t[0], replace_at(t[1], address[1:], sub))


def free_carets(t):
    """Leaf indices i such that leaves i and i+1 are children of one node."""
    found = set()

    def walk(t, offset):
        if t == LEAF:
            return 1
        left, right = t
        if left == LEAF and right == LEAF:
            found.add(offset + 1)
            return 2
        nl = walk(left, offset)
        return nl + walk(right, offset + nl)

    walk(t, 0)
    return found


def remove_caret(t, i):
    """Collapse the caret whose leaves are i and i+1 back to a leaf."""
    if t == LEAF:
        raise ValueError("no caret to remove in a leaf")
    left, right = t
    if left == LEAF and right == LEAF:
        if i != 1:
            raise ValueError(f"leaves {i},{i + 1} do not form a caret")
        return LEAF
    nl = leaf_count(left)
    if i + 1 <= nl:
        return (remove_caret(left, i), right)
    if i > nl:
        return (left, remove_caret(right, i - nl))
    raise ValueError(f"leaves {i},{i + 1} do not form a caret")


def join(a, b):
    """Smallest common expansion: union of the two vertex sets."""
    if a == LEAF:
        return b
    if b == LEAF:
        return a
    return (join(a[0], b[0]), join(a[1], b[1]))


def is_expansion(big, small):
    """True when big can be obtained from small by expanding leaves."""
    if small == LEAF:
        return True
    if big == LEAF:
        return False
    return is_expansion(big[0], small[0]) and is_expansion(big[1], small[1])


def leftmost_leaf_depth(t):
    d = 0
    while t != LEAF:
        t = t[0]
        d += 1
    return d


def rightmost_leaf_depth(t):
    d = 0
    while t != LEAF:
        t = t[1]
        d += 1
    return d


def complete_tree(depth):
    t = LEAF
    for _ in range(depth):
        t = (t, t)
    return t


def right_comb(n):
    t = LEAF
    for _ in range(n - 1):
        t = (LEAF, t)
    return t


def random_tree(rng, n):
    """A random tree with n leaves (random splits, not uniform on shapes)."""
    if n == 1:
        return LEAF
    k = rng.randint(1, n - 1)
    return (random_tree(rng, k), random_tree(rng, n - k))


_TREE_LISTS = {1: (LEAF,)}


def enumerate_trees(n, cap=DEFAULT_TREE_CAP):
    """All trees with n leaves.

    Canonical order: by leaf count of the left subtree, then recursively
    by the same order on the left and the right subtree.
    """
    if n < 1:
        raise ValueError(f"leaf count must be >= 1, got {n}")
    if n > cap:
        raise BudgetExceeded(f"tree enumeration for n={n} exceeds cap {cap}")
    for m in range(2, n + 1):
        if m not in _TREE_LISTS:
            _TREE_LISTS[m] = tuple(
                (left, right)
                for k in range(1, m)
                for left in _TREE_LISTS[k]
                for right in _TREE_LISTS[m - k]
            )
    return list(_TREE_LISTS[n])


class ExpansionWord:
    """A word in the expansion monoid, kept in canonical form.

    ``letters`` are stored in composition order: the last letter of the
    tuple acts first.  Canonical form is reached by rewriting adjacent
    pairs with beta^i beta^j -> beta^{j+1} beta^i whenever i < j, so in
    a canonical word no letter is strictly smaller than its right
    neighbour.  The canonical word is independent of rewrite order.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        letters = tuple(letters)
        for x in letters:
            if not isinstance(x, int) or x < 1:
                raise ParseError(f"expansion index must be a positive integer, got {x!r}")
        object.__setattr__(self, "letters", _normal_form(letters))

    @classmethod
    def from_applied(cls, letters_in_application_order):
        return cls(tuple(reversed(tuple(letters_in_application_order))))

    @property
    def applied_order(self):
        return tuple(reversed(self.letters))

    def apply(self, t):
        for i in reversed(self.letters):
            t = expand(t, i)
        return t

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, ExpansionWord) and self.letters == other.letters

    def __hash__(self):
        return hash(("ExpansionWord", self.letters))

    def __repr__(self):
        return f"ExpansionWord({self.letters!r})"

    def __str__(self):
        return "b[" + ",".join(str(i) for i in self.letters) + "]"

    def __setattr__(self, name, value):
        raise AttributeError("ExpansionWord is immutable")


def _normal_form(letters):
    word = ()
    for x in reversed(letters):
        word = _prepend(x, word)
    return word


def _prepend(x, word):
    # Compose beta^x on the left of a canonical word.
    if not word or x >= word[0]:
        return (x,) + word
    return (word[0] + 1,) + _prepend(x, word[1:])


def parse_expansion_word(text):
    text = text.strip()
    if not (text.startswith("b[") and text.endswith("]")):
        raise ParseError("expansion word must look like b[4,2]", 0)
    body = text[2:-1].strip()
    if not body:
        return ExpansionWord()
    try:
        letters = tuple(int(part) for part in body.split(","))
    except ValueError:
        raise ParseError(f"bad expansion word body {body!r}", 2) from None
    return ExpansionWord(letters)


def monoid_compose(a, b):
    """The word acting as b first, then a."""
    return ExpansionWord(a.letters + b.letters)


def expansion_path(target, base):
    """Canonical word carrying base to target, or None.

    Greedy: always expand the lowest-index leaf of the current tree that
    is an interior vertex of the target.
    """
    if not is_expansion(target, base):
        return None
    applied = []
    t = base
    while t != target:
        for i, addr in enumerate(leaf_addresses(t), start=1):
            if subtree_at(target, addr) != LEAF:
                applied.append(i)
                t = expand(t, i)
                break
    return ExpansionWord.from_applied(applied)


def common_left_multiples(b1, b2):
    """Words (b3, b4) with b3 b1 = b4 b2 in the monoid.

    Realized on a right comb wide enough that every letter of b1 and b2
    expands an actual leaf, so no letter acts as the identity.
    """
    n = max([1, *b1.letters, *b2.letters])
    base = right_comb(n)
    t1 = b1.apply(base)
    t2 = b2.apply(base)
    j = join(t1, t2)
    return expansion_path(j, t1), expansion_path(j, t2)
