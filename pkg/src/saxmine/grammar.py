"""Sequitur grammar induction and depth unwrapping.

The inference follows the classic online construction: symbols live in
doubly linked lists (one circular list per rule, closed by a guard node) and
a digram index maps every adjacent pair to its first occurrence.  Each new
input token is appended to the top-level rule and the two constraints are
restored immediately:

* digram uniqueness -- a repeated digram is replaced by a rule;
* rule utility -- a rule referenced only once is inlined.

Terminals are non-negative integers.  In the finished :class:`Grammar` a rule
reference is a negative integer ``-(k + 1)`` for rule ``k``.
"""

from __future__ import annotations

import gc
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .exceptions import CorruptGrammarError, InvalidInputError


def rule_token(rule_id: int) -> int:
    return -(rule_id + 1)


def rule_of(token: int) -> int:
    """Rule id referenced by ``token`` (which must be negative)."""
    return -token - 1


@dataclass(frozen=True)
class Grammar:
    """A finished Sequitur grammar.

    Attributes
    ----------
    sequence : tuple of int
        Top-level (compressed) token string.
    rules : tuple of tuple of int
        ``rules[k]`` is the body of rule ``k``.
    use_count : tuple of int
        Number of references to each rule across ``sequence`` and all bodies.
    """

    sequence: tuple
    rules: tuple
    use_count: tuple

    def dump(self, vocab: Sequence[str] | None = None) -> str:
        """Text form: top-level sequence first, then one ``R<i> -> ...`` line
        per rule."""

        def name(tok):
            if tok < 0:
                return f"R{rule_of(tok)}"
            return vocab[tok] if vocab is not None else str(tok)

        lines = ["S -> " + " ".join(name(t) for t in self.sequence)]
        for k, body in enumerate(self.rules):
            lines.append(f"R{k} -> " + " ".join(name(t) for t in body))
        return "\n".join(lines) + "\n"


class _Symbol:
    __slots__ = ("value", "rule", "owner", "prev", "next")

    def __init__(self, value, rule=None):
        # value: terminal id (>= 0), a rule key (< 0), or None for a guard
        self.value = value
        self.rule = rule
        self.owner = None
        self.prev = None
        self.next = None


class _Rule:
    __slots__ = ("guard", "count", "key")

    def __init__(self, key):
        self.key = key
        self.count = 0
        guard = _Symbol(None)
        guard.owner = self
        guard.prev = guard.next = guard
        self.guard = guard

    def first(self):
        return self.guard.next

    def last(self):
        return self.guard.prev

    def symbols(self):
        sym = self.guard.next
        while sym is not self.guard:
            yield sym
            sym = sym.next


class _Builder:
    """Mutable state of one online Sequitur run."""

    def __init__(self):
        self.index = {}
        self.next_key = -1
        self.created = []
        self.start = self._new_rule()

    def _new_rule(self):
        rule = _Rule(self.next_key)
        self.next_key -= 1
        self.created.append(rule)
        return rule

    def release(self):
        """Break the link cycles so reference counting frees the build at once
        instead of leaving a large graph to a later cyclic collection."""
        self.index.clear()
        live = [r for r in self.created if r.count > 0 or r is self.start]
        for rule in live:
            sym = rule.guard.next
            while sym is not rule.guard:
                nxt = sym.next
                sym.prev = sym.next = None
                sym = nxt
        for rule in self.created:
            rule.guard.prev = rule.guard.next = rule.guard.owner = None
        self.created.clear()

    @staticmethod
    def _nonterminal(rule):
        rule.count += 1
        return _Symbol(rule.key, rule)

    def _copy(self, sym):
        if sym.rule is not None:
            return self._nonterminal(sym.rule)
        return _Symbol(sym.value)

    def _delete_digram(self, sym):
        if sym.value is None or sym.next.value is None:
            return
        key = (sym.value, sym.next.value)
        if self.index.get(key) is sym:
            del self.index[key]

    def _join(self, left, right):
        if left.next is not None:
            self._delete_digram(left)
            # Overlapping triples (xxx) only record the second digram; when
            # it goes away the first one must be re-registered.
            if (right.prev is not None and right.next is not None
                    and right.value is not None
                    and right.value == right.prev.value == right.next.value):
                self.index[(right.value, right.next.value)] = right
            if (left.prev is not None and left.next is not None
                    and left.value is not None
                    and left.value == left.next.value == left.prev.value):
                self.index[(left.prev.value, left.value)] = left.prev
        left.next = right
        right.prev = left

    def _insert_after(self, left, sym):
        self._join(sym, left.next)
        self._join(left, sym)

    def _remove(self, sym):
        """Unlink a non-guard symbol, releasing its digrams and rule use."""
        self._join(sym.prev, sym.next)
        self._delete_digram(sym)
        if sym.rule is not None:
            sym.rule.count -= 1

    def _check(self, sym):
        """Enforce digram uniqueness for the digram starting at ``sym``.

        Returns True when the digram was already known.
        """
        if sym.value is None or sym.next.value is None:
            return False
        key = (sym.value, sym.next.value)
        found = self.index.get(key)
        if found is None:
            self.index[key] = sym
            return False
        if found.next is not sym and sym.next is not found:
            self._match(sym, found)
        return True

    def _substitute(self, sym, rule):
        prev = sym.prev
        self._remove(prev.next)
        self._remove(prev.next)
        self._insert_after(prev, self._nonterminal(rule))
        if not self._check(prev):
            self._check(prev.next)

    def _match(self, new, old):
        if old.prev.value is None and old.next.next.value is None:
            # The earlier occurrence is a complete rule body: reuse it.
            rule = old.prev.owner
            self._substitute(new, rule)
        else:
            rule = self._new_rule()
            self._insert_after(rule.last(), self._copy(new))
            self._insert_after(rule.last(), self._copy(new.next))
            self._substitute(old, rule)
            self._substitute(new, rule)
            self.index[(rule.first().value, rule.first().next.value)] = rule.first()
        first = rule.first()
        if rule.count >= 2 and first.rule is not None and first.rule.count == 1:
            self._expand(first)
        last = rule.last()
        if rule.count >= 2 and last.rule is not None and last.rule.count == 1:
            self._expand(last)

    def _expand(self, sym):
        """Inline the body of the once-used rule referenced by ``sym``."""
        left, right = sym.prev, sym.next
        body = sym.rule
        first, last = body.first(), body.last()
        self._delete_digram(sym)
        self._delete_digram(left)
        body.count -= 1
        left.next = first
        first.prev = left
        last.next = right
        right.prev = last
        if right.value is not None:
            self._check(last)
        if left.value is not None and left.next is first:
            self._check(left)

    def feed(self, tokens):
        start = self.start
        for tok in tokens:
            self._insert_after(start.last(), _Symbol(tok))
            self._check(start.last().prev)

    def freeze(self) -> Grammar:
        """Renumber live rules in pre-order of first reference."""
        order = []
        seen = {self.start.key}
        pending = [self.start]
        while pending:
            rule = pending.pop()
            order.append(rule)
            children = [s.rule for s in rule.symbols() if s.rule is not None]
            for child in reversed(children):
                if child.key not in seen:
                    seen.add(child.key)
                    pending.append(child)
        numbering = {r.key: k for k, r in enumerate(order[1:])}

        def encode(sym):
            if sym.rule is not None:
                return rule_token(numbering[sym.rule.key])
            return sym.value

        sequence = tuple(encode(s) for s in self.start.symbols())
        bodies = tuple(tuple(encode(s) for s in r.symbols()) for r in order[1:])
        counts = [0] * len(bodies)
        for body in (sequence,) + bodies:
            for tok in body:
                if tok < 0:
                    counts[rule_of(tok)] += 1
        return Grammar(sequence, bodies, tuple(counts))


def infer_grammar(tokens: Iterable[int]) -> Grammar:
    """Build the Sequitur grammar of a stream of non-negative integer tokens."""
    toks = [int(t) for t in tokens]
    if not toks:
        raise InvalidInputError("cannot infer a grammar from an empty token stream")
    if min(toks) < 0:
        raise InvalidInputError("terminal tokens must be non-negative integers")
    builder = _Builder()
    # The linked lists hold no reference cycles worth collecting mid-build;
    # repeated full collections over a growing heap would break linearity.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        builder.feed(toks)
        return builder.freeze()
    finally:
        builder.release()
        if was_enabled:
            gc.enable()


def _body(g: Grammar, tok: int):
    k = rule_of(tok)
    if not 0 <= k < len(g.rules):
        raise CorruptGrammarError(f"reference to undefined rule R{k}")
    return g.rules[k]


def unwrap_grammar(g: Grammar) -> list[tuple[int, int]]:
    """Expand ``g`` into ``(terminal, depth)`` pairs.

    Terminals written directly in the top-level sequence have depth 0 and
    every rule indirection adds one.
    """
    out = []
    # Explicit stack of (token, depth); bodies are pushed in reverse.
    stack = [(tok, 0) for tok in reversed(g.sequence)]
    limit = len(g.rules) + 1
    while stack:
        tok, depth = stack.pop()
        if tok >= 0:
            out.append((tok, depth))
            continue
        if depth >= limit:
            raise CorruptGrammarError("cyclic rule reference")
        for child in reversed(_body(g, tok)):
            stack.append((child, depth + 1))
    return out


def expand_grammar(g: Grammar) -> list[int]:
    return [tok for tok, _ in unwrap_grammar(g)]


def rule_expansion_lengths(g: Grammar) -> list[int]:
    """Number of terminals each rule expands to."""
    lengths = [None] * len(g.rules)
    state = [0] * len(g.rules)  # 0 unvisited, 1 in progress, 2 done

    def resolve(root):
        stack = [root]
        while stack:
            k = stack[-1]
            if state[k] == 0:
                state[k] = 1
                for tok in g.rules[k]:
                    if tok < 0:
                        child = rule_of(tok)
                        if not 0 <= child < len(g.rules):
                            raise CorruptGrammarError(f"reference to undefined rule R{child}")
                        if state[child] == 1:
                            raise CorruptGrammarError("cyclic rule reference")
                        if state[child] == 0:
                            stack.append(child)
            else:
                stack.pop()
                if state[k] == 1:
                    lengths[k] = sum(1 if t >= 0 else lengths[rule_of(t)] for t in g.rules[k])
                    state[k] = 2

    for k in range(len(g.rules)):
        if state[k] == 0:
            resolve(k)
    return lengths


def rule_occurrences(g: Grammar) -> list[list[tuple[int, int]]]:
    """Where every rule lands in the expanded stream.

    Returns, per rule, the list of ``(start, depth)`` pairs: the terminal
    offset of each expansion and the depth of the reference producing it.
    """
    lengths = rule_expansion_lengths(g)
    occ = [[] for _ in g.rules]
    stack = []
    pos = 0
    for tok in g.sequence:
        if tok >= 0:
            pos += 1
            continue
        stack.append((tok, pos, 1))
        while stack:
            t, p, depth = stack.pop()
            k = rule_of(t)
            occ[k].append((p, depth))
            offset = p
            children = []
            for child in g.rules[k]:
                if child < 0:
                    children.append((child, offset, depth + 1))
                    offset += lengths[rule_of(child)]
                else:
                    offset += 1
            stack.extend(reversed(children))
        pos += lengths[rule_of(tok)]
    for lst in occ:
        lst.sort()
    return occ


def check_grammar(g: Grammar) -> list[str]:
    """Audit digram uniqueness, rule utility and acyclicity.

    Digram occurrences are counted without overlap, so ``x x x`` does not
    count ``x x`` twice.  Returns a list of violations (empty when valid).
    """
    problems = []
    try:
        rule_expansion_lengths(g)
    except CorruptGrammarError as exc:
        return [str(exc)]
    seen = {}
    for where, body in [("S", g.sequence)] + [(f"R{k}", b) for k, b in enumerate(g.rules)]:
        last_at = {}
        for i in range(len(body) - 1):
            dg = (body[i], body[i + 1])
            if dg in last_at and last_at[dg] == i - 1:
                continue  # overlapping repeat inside a run
            last_at[dg] = i
            if dg in seen:
                problems.append(f"digram {dg} repeated in {seen[dg]} and {where}")
            else:
                seen[dg] = where
    counts = [0] * len(g.rules)
    for body in (g.sequence,) + tuple(g.rules):
        for tok in body:
            if tok < 0:
                counts[rule_of(tok)] += 1
    for k, c in enumerate(counts):
        if c < 2:
            problems.append(f"rule R{k} used {c} time(s)")
        if len(g.rules[k]) < 2:
            problems.append(f"rule R{k} has a body shorter than 2")
    return problems


def depth_profile(tokens: Sequence[int] | np.ndarray) -> tuple[Grammar, np.ndarray]:
    """Infer a grammar and return it with the depth of every input token."""
    g = infer_grammar(tokens)
    depths = np.fromiter((d for _, d in unwrap_grammar(g)), dtype=np.int64)
    return g, depths
