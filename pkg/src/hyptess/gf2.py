"""Linear algebra over the two-element field with int bitsets.

A matrix is a list of rows; row ``i`` is an int whose bit ``j`` is the entry
``(i, j)``.  A vector is an int.  ``apply(rows, x)`` gives the image bits.
"""

from __future__ import annotations


def parity(x: int) -> int:
    return x.bit_count() & 1


def apply(rows: list[int], x: int) -> int:
    out = 0
    for i, r in enumerate(rows):
        if parity(r & x):
            out |= 1 << i
    return out


def rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [r for r in rows if r]
    pivots: list[int] = []
    done: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(work) if r & bit), None)
        if idx is None:
            continue
        p = work.pop(idx)
        work = [r ^ p if r & bit else r for r in work]
        done = [r ^ p if r & bit else r for r in done]
        done.append(p)
        pivots.append(col)
        work = [r for r in work if r]
    return done, pivots


def rank(rows: list[int], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel(rows: list[int], ncols: int) -> list[int]:
    """A basis of ``{x : apply(rows, x) == 0}``, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = 1 << free
        for r, p in zip(reduced, pivots):
            if r >> free & 1:
                v |= 1 << p
        basis.append(v)
    return basis
