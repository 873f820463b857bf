"""Enumeration of A*/rho_R for a finite monoid presentation.

This is Todd-Coxeter for two-sided monoid congruences: classes start from
the class of the empty word, every relation u = v is traced from every live
class c (forcing cu = cv), and forced coincidences are merged with a
union-find.  Tracing relations from every class, not just the start, is what
makes the resulting right congruence two-sided.  Definitions follow the HLT
order (classes by index, relations in list order, then letters in alphabet
order).  When the live class count exceeds the bound a lookahead pass
(relations traced without new definitions) runs before giving up.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .presentations import Presentation, Word

UNDEF = -1


class QuotientOverflow(RuntimeError):
    """More live classes than the bound allows.  Says nothing about finiteness."""


@dataclass(frozen=True)
class QuotientTable:
    alphabet: tuple[str, ...]
    representatives: tuple[Word, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.representatives)

    def __len__(self):
        return len(self.representatives)

    def trace(self, word) -> int:
        letter = {a: i for i, a in enumerate(self.alphabet)}
        c = 0
        for a in word:
            c = self.table[c][letter[a]]
        return c


class _Enumerator:
    def __init__(self, presentation: Presentation, bound: int):
        self.alphabet = presentation.alphabet
        letter = {a: i for i, a in enumerate(self.alphabet)}
        rels = []
        for rel in presentation.relations:
            u = tuple(letter[a] for a in rel.lhs)
            v = tuple(letter[a] for a in rel.rhs)
            if u == v:
                continue
            if len(u) < len(v):
                u, v = v, u
            rels.append((u, v))
        self.rels = rels
        self.ngens = len(self.alphabet)
        self.bound = bound
        self.table = [[UNDEF] * self.ngens]
        self.parent = [0]
        self.live = 1
        self.queue = deque()

    def find(self, c: int) -> int:
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, c: int, a: int) -> int:
        if self.live >= self.bound:
            self.lookahead()
            if self.live >= self.bound:
                raise QuotientOverflow(
                    f"more than {self.bound} classes; the quotient may be infinite "
                    "or merely larger than the bound")
        new = len(self.table)
        self.table.append([UNDEF] * self.ngens)
        self.parent.append(new)
        self.table[c][a] = new
        self.live += 1
        return new

    def coincidence(self, p: int, q: int):
        queue = self.queue
        queue.append((p, q))
        table = self.table
        while queue:
            p, q = queue.popleft()
            p, q = self.find(p), self.find(q)
            if p == q:
                continue
            keep, drop = (p, q) if p < q else (q, p)
            self.parent[drop] = keep
            self.live -= 1
            row_keep, row_drop = table[keep], table[drop]
            for a in range(self.ngens):
                t = row_drop[a]
                if t == UNDEF:
                    continue
                s = row_keep[a]
                if s == UNDEF:
                    row_keep[a] = t
                else:
                    queue.append((s, t))

    def trace(self, c: int, w, create: bool):
        table = self.table
        for a in w:
            c = self.find(c)
            t = table[c][a]
            if t == UNDEF:
                if not create:
                    return None
                t = self.define(c, a)
            c = t
        return self.find(c)

    def apply(self, c: int, u, v, create: bool):
        p = self.trace(c, u, create)
        if p is None:
            return
        if not v:
            self.coincidence(p, c)
            return
        q = self.trace(c, v[:-1], create)
        if q is None:
            return
        a = v[-1]
        t = self.table[q][a]
        if t == UNDEF:
            self.table[q][a] = p
        else:
            self.coincidence(t, p)

    def lookahead(self):
        for c in range(len(self.table)):
            for u, v in self.rels:
                if self.find(c) != c:
                    break
                self.apply(c, u, v, create=False)

    def run(self) -> QuotientTable:
        c = 0
        while c < len(self.table):
            for u, v in self.rels:
                if self.find(c) != c:
                    break
                self.apply(c, u, v, create=True)
            if self.find(c) == c:
                row = self.table[c]
                for a in range(self.ngens):
                    if row[a] == UNDEF:
                        self.define(c, a)
            c += 1
        return self.standardize()

    def standardize(self) -> QuotientTable:
        # breadth-first renumbering from the identity class gives shortlex-least
        # representatives and a canonical numbering
        number = {0: 0}
        reps = [()]
        order = [0]
        i = 0
        while i < len(order):
            c = order[i]
            for a in range(self.ngens):
                t = self.find(self.table[c][a])
                if t not in number:
                    number[t] = len(order)
                    order.append(t)
                    reps.append(reps[i] + (self.alphabet[a],))
            i += 1
        rows = tuple(
            tuple(number[self.find(self.table[c][a])] for a in range(self.ngens))
            for c in order)
        return QuotientTable(self.alphabet, tuple(reps), rows)


def quotient_enumerate(presentation: Presentation, bound: int) -> QuotientTable:
    """Classes of the monoid defined by ``presentation``, if there are at most ``bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    return _Enumerator(presentation, bound).run()
