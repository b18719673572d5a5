"""Integer model of the interwoven triangles along one axis.

Rows are the unit of height: one row is five isoclines, and a generation-0
trilateral is two rows tall.  Every trilateral is coaxial, with legs of unit
slope, so its half-width at row ``r`` is ``r - vertex_row``.

Generation ``n >= 1`` triangles have their vertex at ``2**n - 1 + k * 2**(n+2)``
and the phantom of the same index sits ``2**(n+1)`` rows lower.  Generation 0
alternates triangle/phantom every two rows starting with a triangle at row 0.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Optional

TRIANGLE = "triangle"
PHANTOM = "phantom"

Kind = Literal["triangle", "phantom"]


@dataclass(frozen=True, order=True)
class Trilateral:
    generation: int
    kind: str
    index: int

    def __post_init__(self):
        if self.generation < 0:
            raise ValueError("generation must be non-negative")
        if self.kind not in (TRIANGLE, PHANTOM):
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def height_rows(self) -> int:
        return 2 ** (self.generation + 1)

    @property
    def vertex_row(self) -> int:
        n, k = self.generation, self.index
        if n == 0:
            return 4 * k + (2 if self.kind == PHANTOM else 0)
        v = (2**n - 1) + k * 2 ** (n + 2)
        return v + 2 ** (n + 1) if self.kind == PHANTOM else v

    @property
    def basis_row(self) -> int:
        return self.vertex_row + self.height_rows

    @property
    def green_row(self) -> int:
        return self.vertex_row + self.height_rows // 2

    @property
    def color(self) -> str:
        if self.generation == 0:
            return "blue0"
        return "red" if self.generation % 2 else "blue"

    @property
    def family(self) -> str:
        """Blocking family for free rows: red against blue and blue-0."""
        return "red" if self.color == "red" else "blue"

    def half_width(self, row) -> int:
        if not self.vertex_row <= row <= self.basis_row:
            raise ValueError(f"row {row} outside {self}")
        return row - self.vertex_row

    def contains(self, other: "Trilateral") -> bool:
        """Area containment for coaxial trilaterals."""
        return self.vertex_row <= other.vertex_row and other.basis_row <= self.basis_row


def trilateral(generation: int, kind: str, index: int) -> Trilateral:
    return Trilateral(generation, kind, index)


def schedule_at_row(row: int) -> tuple[int, str, int]:
    """The unique (generation, kind, index) whose vertex lies on ``row``."""
    if row % 2 == 0:
        k, rem = divmod(row, 4)
        return 0, (TRIANGLE if rem == 0 else PHANTOM), k
    n = ((row + 1) & -(row + 1)).bit_length() - 1
    k, rem = divmod(row - (2**n - 1), 2 ** (n + 2))
    return n, (TRIANGLE if rem == 0 else PHANTOM), k


@dataclass(frozen=True)
class RowWindow:
    start_row: int
    end_row: int
    max_generation: int

    def __post_init__(self):
        if self.start_row > self.end_row:
            raise ValueError("start_row must not exceed end_row")
        if self.max_generation < 0:
            raise ValueError("max_generation must be non-negative")

    @property
    def empty(self) -> bool:
        return self.start_row >= self.end_row


def _period(n: int) -> int:
    return 4 if n == 0 else 2 ** (n + 2)


def _index_range(n: int, lo: int, hi: int) -> range:
    # every index whose trilaterals might have a vertex in [lo - height, hi]
    p = _period(n)
    return range((lo - 2 ** (n + 2)) // p - 1, hi // p + 2)


def enumerate_trilaterals(window: RowWindow, mode: str = "span") -> list[Trilateral]:
    """Trilaterals of generation <= max_generation meeting the window.

    ``mode`` selects the membership test:

    * ``span``: closed row span ``[vertex, basis]`` meets the closed window
      ``[start, end]``;
    * ``vertex``: vertex row lies in ``[start, end)``;
    * ``contained``: ``start <= vertex`` and ``basis <= end``.
    """
    if window.empty:
        return []
    s, e = window.start_row, window.end_row
    out = []
    for n in range(window.max_generation + 1):
        for k in _index_range(n, s, e):
            for kind in (TRIANGLE, PHANTOM):
                t = Trilateral(n, kind, k)
                v, b = t.vertex_row, t.basis_row
                if mode == "span":
                    ok = v <= e and b >= s
                elif mode == "vertex":
                    ok = s <= v < e
                elif mode == "contained":
                    ok = s <= v and b <= e
                else:
                    raise ValueError(f"unknown mode {mode!r}")
                if ok:
                    out.append(t)
    out.sort(key=lambda t: (t.generation, t.vertex_row))
    return out


def leg_crosses_basis(a: Trilateral, b: Trilateral) -> Optional[int]:
    """Row where a leg of ``a`` crosses the open basis segment of ``b``, if any."""
    if a == b:
        raise ValueError("a trilateral does not cross itself")
    if b.vertex_row < a.vertex_row < b.basis_row < a.basis_row:
        return b.basis_row
    return None


def crossing_oracle(a: Trilateral, b: Trilateral) -> Optional[int]:
    """Independent check of ``leg_crosses_basis`` with explicit rational segments.

    Points are (row, x).  The left leg of ``a`` runs from its vertex to the
    left end of its basis; the basis of ``b`` is the open horizontal segment
    at ``b.basis_row``.  By symmetry the right leg gives the same answer.
    """
    p0 = (Fraction(a.vertex_row), Fraction(0))
    p1 = (Fraction(a.basis_row), Fraction(-a.height_rows))
    q0 = (Fraction(b.basis_row), Fraction(-b.height_rows))
    q1 = (Fraction(b.basis_row), Fraction(b.height_rows))
    d1 = (p1[0] - p0[0], p1[1] - p0[1])
    d2 = (q1[0] - q0[0], q1[1] - q0[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    w = (q0[0] - p0[0], q0[1] - p0[1])
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    # leg: both endpoints allowed except the vertex itself; basis: open
    if 0 < t <= 1 and 0 < u < 1:
        row = p0[0] + t * d1[0]
        if row == a.basis_row:
            # basis-on-basis contact at a leg end is not a crossing
            return None
        return int(row)
    return None


def legs_intersect_oracle(a: Trilateral, b: Trilateral) -> bool:
    """Do any two legs of distinct trilaterals share a point?  Rational geometry."""
    def legs(t):
        v, bb, h = Fraction(t.vertex_row), Fraction(t.basis_row), Fraction(t.height_rows)
        return [((v, Fraction(0)), (bb, -h)), ((v, Fraction(0)), (bb, h))]

    for p0, p1 in legs(a):
        for q0, q1 in legs(b):
            d1 = (p1[0] - p0[0], p1[1] - p0[1])
            d2 = (q1[0] - q0[0], q1[1] - q0[1])
            den = d1[0] * d2[1] - d1[1] * d2[0]
            w = (q0[0] - p0[0], q0[1] - p0[1])
            if den == 0:
                # parallel: collinear overlap only if w is along d1
                if w[0] * d1[1] - w[1] * d1[0] != 0:
                    continue
                lo1, hi1 = sorted((p0[0], p1[0]))
                lo2, hi2 = sorted((q0[0], q1[0]))
                if max(lo1, lo2) <= min(hi1, hi2):
                    return True
                continue
            t = (w[0] * d2[1] - w[1] * d2[0]) / den
            u = (w[0] * d1[1] - w[1] * d1[0]) / den
            if 0 <= t <= 1 and 0 <= u <= 1:
                return True
    return False


def _inner_triangles(t: Trilateral, family: str) -> list[Trilateral]:
    window = RowWindow(t.vertex_row, t.basis_row, max(t.generation - 1, 0))
    out = []
    if t.generation == 0:
        return out
    for u in enumerate_trilaterals(window, mode="contained"):
        if u.kind == TRIANGLE and u.family == family and u.generation < t.generation:
            out.append(u)
    return out


def free_rows(t: Trilateral) -> list[int]:
    """Rows strictly inside triangle ``t`` meeting no inner triangle of its family."""
    if t.kind != TRIANGLE:
        raise ValueError("free rows are defined for triangles only")
    blocked = set()
    for u in _inner_triangles(t, t.family):
        blocked.update(range(u.vertex_row, u.basis_row + 1))
    return [r for r in range(t.vertex_row + 1, t.basis_row) if r not in blocked]


def towers(window: RowWindow) -> list[tuple[int, list[int]]]:
    """Phantoms grouped by shared green row, for green rows inside the window."""
    groups: dict[int, list[int]] = defaultdict(list)
    for t in enumerate_trilaterals(window):
        if t.kind == PHANTOM and window.start_row <= t.green_row < window.end_row:
            groups[t.green_row].append(t.generation)
    return [(g, sorted(gens)) for g, gens in sorted(groups.items())]


def shift_and_copy(max_generation: int, window: RowWindow) -> set[tuple[int, str, int]]:
    """Build the hierarchy generation by generation, without the closed form.

    Generation 0 is laid down directly.  From generation ``n`` we take the
    generation-``n`` triangle with the smallest non-negative vertex, put the
    vertex of a new triangle S of double height on its green row, put the
    phantom Q one S-height lower, and repeat the S+Q pattern with period
    twice the S-height.  Returns (generation, kind, vertex_row) triples whose
    closed span meets the window.
    """
    s, e = window.start_row, window.end_row
    pad = 2 ** (max_generation + 3)
    lo, hi = s - pad, e + pad
    layers: list[list[tuple[str, int, int]]] = []  # (kind, vertex, height)
    gen0 = []
    for v in range(lo - lo % 2, hi + 1, 2):
        gen0.append((TRIANGLE if v % 4 == 0 else PHANTOM, v, 2))
    layers.append(gen0)
    for _ in range(max_generation):
        prev = layers[-1]
        tri = min((v, h) for kind, v, h in prev if kind == TRIANGLE and v >= 0)
        sv, sh = tri[0] + tri[1] // 2, 2 * tri[1]
        period = 2 * sh
        nxt = []
        j0 = (lo - sv) // period - 1
        j1 = (hi - sv) // period + 1
        for j in range(j0, j1 + 1):
            nxt.append((TRIANGLE, sv + j * period, sh))
            nxt.append((PHANTOM, sv + sh + j * period, sh))
        layers.append(nxt)
    out = set()
    for n, layer in enumerate(layers):
        for kind, v, h in layer:
            if v <= e and v + h >= s:
                out.add((n, kind, v))
    return out


def closed_form_set(window: RowWindow) -> set[tuple[int, str, int]]:
    return {(t.generation, t.kind, t.vertex_row) for t in enumerate_trilaterals(window)}


def format_trilateral(t: Trilateral) -> str:
    return f"gen={t.generation} kind={t.kind} index={t.index} vertex_row={t.vertex_row}"


def parse_trilateral(line: str) -> Trilateral:
    fields = dict(part.split("=", 1) for part in line.split())
    return Trilateral(int(fields["gen"]), fields["kind"], int(fields["index"]))


def dump(trilaterals: Iterable[Trilateral]) -> str:
    return "".join(format_trilateral(t) + "\n" for t in trilaterals)


def _previous_generation_crossings(a: Trilateral, m: int) -> list[tuple[Trilateral, int]]:
    window = RowWindow(a.vertex_row - 2 ** (m + 1), a.basis_row, m)
    hits = []
    for b in enumerate_trilaterals(window):
        if b.generation != m or b == a:
            continue
        row = leg_crosses_basis(a, b)
        if row is not None:
            hits.append((b, row))
    return hits


def check_pair_properties(window: RowWindow) -> dict[str, list[str]]:
    """Brute-force check of the six interwoven-triangle properties.

    Returns one list of human-readable violations per property key
    (``i`` .. ``vi``); every list is empty when the properties hold.
    """
    ts = enumerate_trilaterals(window)
    violations: dict[str, list[str]] = {k: [] for k in ("i", "ii", "iii", "iv", "v", "vi")}
    tris = [t for t in ts if t.kind == TRIANGLE]

    by_color: dict[str, list[Trilateral]] = defaultdict(list)
    for t in tris:
        by_color[t.color].append(t)
    for group in by_color.values():
        group.sort(key=lambda t: t.vertex_row)
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if b.vertex_row >= a.basis_row:
                    break
                if not (a.contains(b) or b.contains(a)):
                    violations["i"].append(f"overlap {format_trilateral(a)} / {format_trilateral(b)}")

    by_row = sorted(ts, key=lambda t: t.vertex_row)
    for i, a in enumerate(by_row):
        for b in by_row[i + 1:]:
            if b.vertex_row > a.basis_row:
                break
            if legs_intersect_oracle(a, b):
                violations["ii"].append(f"legs meet {format_trilateral(a)} / {format_trilateral(b)}")

    for a in ts:
        lo = a.vertex_row - 2 ** (window.max_generation + 1)
        for b in enumerate_trilaterals(RowWindow(lo, a.basis_row, window.max_generation)):
            if b == a:
                continue
            row = leg_crosses_basis(a, b)
            if row is not None and not (row - a.vertex_row) * 2 <= a.height_rows:
                violations["iii"].append(f"low crossing row {row} of {format_trilateral(a)}")

    for a in ts:
        n = a.generation
        if n == 0:
            continue
        if a.kind == TRIANGLE:
            owners = [b for b, _ in _previous_generation_crossings(a, n - 1) if b.kind == TRIANGLE]
            if len(owners) != 1:
                violations["iv"].append(f"{format_trilateral(a)} crosses {len(owners)} previous triangles")
        else:
            for m in range(n):
                hits = _previous_generation_crossings(a, m)
                if len(hits) != 1:
                    violations["v"].append(f"{format_trilateral(a)} crosses {len(hits)} bases of gen {m}")
                    continue
                owner = hits[0][0]
                expected = TRIANGLE if m == n - 1 else PHANTOM
                if owner.kind != expected:
                    violations["v"].append(f"{format_trilateral(a)} gen-{m} owner is a {owner.kind}")

    for green, gens in towers(window):
        if gens != list(range(max(gens) + 1)):
            violations["vi"].append(f"tower at row {green} has generations {gens}")
    return violations


def check_free_rows(window: RowWindow) -> tuple[dict[int, set[int]], list[str]]:
    """Free-row counts per generation for triangles fully inside the window.

    Returns ``({generation: set of counts}, violations)``.
    """
    counts: dict[int, set[int]] = defaultdict(set)
    violations = []
    for t in enumerate_trilaterals(window, mode="contained"):
        if t.kind != TRIANGLE:
            continue
        rows = free_rows(t)
        counts[t.generation].add(len(rows))
        n = t.generation
        if t.color == "red":
            expected = 2 ** ((n - 1) // 2 + 1) + 1
            if len(rows) != expected:
                violations.append(f"{format_trilateral(t)} has {len(rows)} free rows, expected {expected}")
        else:
            want = [t.green_row] if n > 0 else [t.vertex_row + t.height_rows // 2]
            if rows != want:
                violations.append(f"{format_trilateral(t)} free rows {rows}, expected {want}")
    return dict(counts), violations
