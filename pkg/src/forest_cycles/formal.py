"""Formal Q-linear combinations over hashable terms."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Tuple


class FormalSum:
    """Finitely supported map term -> Fraction, no zero coefficients stored.

    The class is deliberately dumb about what a term is; canonicalization
    happens in the callers (forest and cycle modules) before insertion.
    """

    __slots__ = ("_terms",)

    def __init__(self, items: Iterable[Tuple[object, Fraction]] = ()):
        self._terms: dict = {}
        for t, c in items:
            self.add_term(t, c)

    @classmethod
    def zero(cls) -> "FormalSum":
        return cls()

    @classmethod
    def single(cls, term, coeff=1) -> "FormalSum":
        s = cls()
        s.add_term(term, coeff)
        return s

    def add_term(self, term, coeff) -> None:
        c = self._terms.get(term, _ZERO) + Fraction(coeff)
        if c:
            self._terms[term] = c
        else:
            self._terms.pop(term, None)

    def items(self) -> Iterator[Tuple[object, Fraction]]:
        return iter(self._terms.items())

    def terms(self):
        return list(self._terms.keys())

    def coeff(self, term) -> Fraction:
        return self._terms.get(term, _ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = self.copy()
        for t, c in other._terms.items():
            out.add_term(t, c)
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        out = self.copy()
        for t, c in other._terms.items():
            out.add_term(t, -c)
        return out

    def __neg__(self) -> "FormalSum":
        return self.scale(-1)

    def scale(self, k) -> "FormalSum":
        k = Fraction(k)
        out = FormalSum()
        if k:
            for t, c in self._terms.items():
                out._terms[t] = c * k
        return out

    def copy(self) -> "FormalSum":
        out = FormalSum()
        out._terms = dict(self._terms)
        return out

    def bind(self, f) -> "FormalSum":
        """Sum of f(term) scaled by the coefficients; f returns a FormalSum."""
        out = FormalSum()
        for t, c in self._terms.items():
            for t2, c2 in f(t):
                out.add_term(t2, c * c2)
        return out

    def __repr__(self) -> str:
        if not self._terms:
            return "FormalSum(0)"
        parts = [f"{c}*{t!r}" for t, c in self._terms.items()]
        return "FormalSum(" + " + ".join(parts) + ")"


_ZERO = Fraction(0)


def perm_parity(perm) -> int:
    """Sign of the permutation i -> perm[i], via cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
