"""Cut elimination for the non-well-founded calculus.

``eliminate_main_fragment`` removes the cuts of the main fragment with the
reducing mappings. ``step(U, p)`` normalizes the main fragment and then
defers ``U`` at every right premise of BoxInf. ``eliminate`` is the fixed
point of ``step``, unfolded on demand, and ``iterate`` is the n-th iterate
starting from the identity, kept as an independent oracle.
"""

from __future__ import annotations

from typing import Callable

from .proofs import CUT, InfProof, in_P_n, is_right_premise
from .reduction import reduce_unchecked

ProofTransformer = Callable[[InfProof], InfProof]


def identity(p: InfProof) -> InfProof:
    return p


def eliminate_main_fragment(p: InfProof) -> InfProof:
    """Cut-free main fragment; right premises are shared with the input."""
    memo: dict[int, InfProof] = {}
    keep: list[InfProof] = []

    def go(q: InfProof) -> InfProof:
        hit = memo.get(id(q))
        if hit is not None:
            return hit
        if q.is_leaf:
            out = q
        elif q.rule.tag == CUT:
            out = reduce_unchecked(q.rule.principal, go(q.child(0)), go(q.child(1)))
        else:
            out = InfProof(q.sequent, q.rule, [_kid(q, i, go) for i in range(q.arity)],
                           f"E*:{q.rule.tag}")
        memo[id(q)] = out
        keep.append(q)
        return out

    return go(p)


def _kid(q: InfProof, i: int, go: ProofTransformer):
    if is_right_premise(q, i):
        return lambda: q.child(i)
    return lambda: go(q.child(i))


def step(u: ProofTransformer, p: InfProof) -> InfProof:
    """One application of the contractive operator: ``F(u)(p)``."""
    q = p if in_P_n(p, 1) else eliminate_main_fragment(p)
    memo: dict[int, InfProof] = {}
    keep: list[InfProof] = []

    def rebuild(r: InfProof) -> InfProof:
        hit = memo.get(id(r))
        if hit is not None:
            return hit
        kids = []
        for i in range(r.arity):
            if is_right_premise(r, i):
                kids.append(lambda r=r, i=i: u(r.child(i)))
            else:
                kids.append(lambda r=r, i=i: rebuild(r.child(i)))
        out = InfProof(r.sequent, r.rule, kids, f"F:{r.rule.tag}")
        memo[id(r)] = out
        keep.append(r)
        return out

    return rebuild(q)


class _Eliminator:
    """``E = F(E)`` with one pending computation per input node."""

    def __init__(self):
        self.memo: dict[int, tuple[InfProof, InfProof]] = {}

    def __call__(self, p: InfProof) -> InfProof:
        hit = self.memo.get(id(p))
        if hit is not None:
            return hit[1]
        out = step(self, p)
        self.memo[id(p)] = (p, out)
        return out


def eliminate(p: InfProof) -> InfProof:
    return _Eliminator()(p)


def iterate(n: int, p: InfProof) -> InfProof:
    """``F^n(identity)(p)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    u: ProofTransformer = identity
    for _ in range(n):
        u = _stepped(u)
    return u(p)


def _stepped(u: ProofTransformer) -> ProofTransformer:
    return lambda p: step(u, p)
