"""Grothendieck-group combinatorics: weight order, cup-switch sets, K0 matrix.

The partial order on weights of one shape is suffix dominance (more
downs among the last i marks means larger), generated by turning an
adjacent up-down into down-up.  Switching both endpoint marks of cups of
m(w) produces the set Theta(w); the transformation matrix expands each
twisted class in the line-bundle basis over Theta(w) with alternating
signs.

Theta is taken over the cups of m(w), not of the completed matching
C(w): completing first would put both w' in Theta(w) and w in Theta(w')
for pairs like ^^vv / vv^^, destroying triangularity, and it would break
the pinned 2x2 case ([[1,-1],[0,1]] needs Theta(^v) = {^v}).  Every
m(w)-cup carries down-up, so each switch strictly increases the suffix
order: all of Theta(w) sits weakly above w, and the matrix is
unitriangular in any linear extension (the canonical enumeration lists
weights in decreasing order, making it lower unitriangular).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from . import _linalg
from .diagrams import (DOWN, Shape, ValidationError, Weight,
                       enumerate_weights, weight_sort_key, weight_to_m)


def weight_leq(w: Weight, v: Weight) -> bool:
    """Suffix dominance: w <= v iff every suffix of v has at least as many downs."""
    if w.n != v.n or w.k != v.k:
        raise ValidationError(f"weights {w} and {v} have different shapes")
    dw = dv = 0
    for cw, cv in zip(reversed(w.marks), reversed(v.marks)):
        dw += cw == DOWN
        dv += cv == DOWN
        if dv < dw:
            return False
    return True


def length(w: Weight) -> int:
    """Inversion count: pairs i < j with a down at i and an up at j."""
    total = downs = 0
    for c in w.marks:
        if c == DOWN:
            downs += 1
        else:
            total += downs
    return total


def _switch(w: Weight, cups) -> Weight:
    marks = list(w.marks)
    for a, b in cups:
        marks[a - 1], marks[b - 1] = marks[b - 1], marks[a - 1]
    return Weight("".join(marks))


def theta_set(w: Weight) -> tuple[Weight, ...]:
    """Weights obtained by switching the marks on any subset of m(w)'s cups."""
    cups = weight_to_m(w).cups
    out = []
    for r in range(len(cups) + 1):
        for subset in combinations(cups, r):
            out.append(_switch(w, subset))
    assert len(set(out)) == 2 ** len(cups)
    return tuple(sorted(out, key=weight_sort_key))


@dataclass
class K0Matrix:
    """Expansion of the twisted classes over the line-bundle basis.

    ``entries[i][j]`` is the coefficient of the j-th weight's line bundle
    in the i-th weight's twisted class; weights follow the canonical
    enumeration (a linear extension of decreasing suffix dominance), so
    the matrix is lower unitriangular.
    """

    shape: Shape
    weights: tuple[Weight, ...]
    entries: tuple[tuple[int, ...], ...]
    direction: str

    def entry(self, w: Weight, v: Weight) -> int:
        return self.entries[self.weights.index(w)][self.weights.index(v)]

    def det(self) -> int:
        return _linalg.det_int([list(r) for r in self.entries])

    def is_lower_unitriangular(self) -> bool:
        return all(self.entries[i][i] == 1 for i in range(len(self.weights))) and \
            all(self.entries[i][j] == 0
                for i in range(len(self.weights)) for j in range(i + 1, len(self.weights)))

    def to_json(self) -> str:
        return json.dumps({"shape": [self.shape.n, self.shape.k],
                           "weights": [str(w) for w in self.weights],
                           "entries": [list(r) for r in self.entries],
                           "direction": self.direction})

    def to_csv(self) -> str:
        lines = ["," + ",".join(str(w) for w in self.weights)]
        for w, row in zip(self.weights, self.entries):
            lines.append(str(w) + "," + ",".join(str(x) for x in row))
        return "\n".join(lines)


def k0_matrix(shape: Shape) -> K0Matrix:
    """entry(w, w') = (-1)**(length(w) - length(w')) on Theta(w), else 0."""
    weights = enumerate_weights(shape)
    index = {w: i for i, w in enumerate(weights)}
    entries = []
    for w in weights:
        row = [0] * len(weights)
        for wp in theta_set(w):
            row[index[wp]] = (-1) ** abs(length(w) - length(wp))
        entries.append(tuple(row))
    return K0Matrix(shape, tuple(weights), tuple(entries),
                    "theta moves increase the suffix-dominance order: "
                    "support of row w lies weakly above w (lower triangular "
                    "in the canonical enumeration)")
