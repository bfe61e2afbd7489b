# Copyright (c) 2024, The peakpack developers
#
# SPDX-License-Identifier: BSD-2-Clause
"""
Rectangle packing: Steinberg's condition and packer, NFDH, FFDH and a
packing verifier.

A job becomes a rectangle of width p and height e.  Schedulers only use
x-coordinates; `compact_left` makes them sums of widths so that packings
of integral jobs give integral start times.
"""

import logging
from fractions import Fraction
from typing import (
    Callable,
    Iterable,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from . import const
from .core import Instance, Job, Rational, Schedule, positive
from .errors import ConditionViolated, InternalInvariant, InvalidInput

LOG = logging.getLogger(__name__)


class Rect(NamedTuple):
    id: str
    w: Rational
    h: Rational


class Placement(NamedTuple):
    id: str
    x: Rational
    y: Rational


class Box(NamedTuple):
    width: Rational
    height: Rational


class PackingViolation(NamedTuple):
    kind: str
    ids: Tuple[str, ...]

    def __str__(self) -> str:
        return "{} {}".format(self.kind, ", ".join(self.ids))


Packer = Callable[[List[Rect], Rational, Rational, "_Budget"],
                  Optional[List[Placement]]]


def rects_of(jobs: Iterable[Job]) -> List[Rect]:
    return [Rect(j.id, j.p, j.e) for j in jobs]


def rect_area(rects: Iterable[Rect]) -> Rational:
    return sum((r.w * r.h for r in rects), Fraction(0))


def steinberg_condition(rects: Sequence[Rect], box: Box) -> bool:
    """
    Sufficient condition for `rects` to fit into `box`:

        h_max <= H, w_max <= W and
        2 * area <= W * H - (2 h_max - H)+ * (2 w_max - W)+
    """
    if not rects:
        return True
    h_max = max(r.h for r in rects)
    w_max = max(r.w for r in rects)
    if h_max > box.height or w_max > box.width:
        return False
    penalty = (positive(2 * h_max - box.height) *
               positive(2 * w_max - box.width))
    return 2 * rect_area(rects) <= box.width * box.height - penalty


def verify_packing(
        placements: Sequence[Placement],
        rects: Sequence[Rect],
        box: Box,
) -> List[PackingViolation]:
    violations = []  # type: List[PackingViolation]
    known = {r.id: r for r in rects}
    seen = {}  # type: dict

    for p in placements:
        if p.id not in known:
            violations.append(PackingViolation("unknown", (p.id,)))
        elif p.id in seen:
            violations.append(PackingViolation("duplicate", (p.id,)))
        else:
            seen[p.id] = p

    for r in rects:
        if r.id not in seen:
            violations.append(PackingViolation("missing", (r.id,)))

    placed = [(seen[r.id], r) for r in rects if r.id in seen]
    for p, r in placed:
        if (p.x < 0 or p.y < 0 or p.x + r.w > box.width
                or p.y + r.h > box.height):
            violations.append(PackingViolation("out-of-box", (r.id,)))

    for n, (p, r) in enumerate(placed):
        for q, s in placed[n + 1:]:
            if _overlap(p, r, q, s):
                violations.append(PackingViolation("overlap", (r.id, s.id)))

    return violations


def _overlap(p: Placement, r: Rect, q: Placement, s: Rect) -> bool:
    return (p.x < q.x + s.w and q.x < p.x + r.w and p.y < q.y + s.h
            and q.y < p.y + r.h)


def _shelf_order(rects: Iterable[Rect]) -> List[Rect]:
    return sorted(rects, key=lambda r: (-r.h, -r.w, r.id))


def _check_strip(rects: Iterable[Rect], strip_width: Rational) -> None:
    for r in rects:
        if r.w > strip_width:
            raise InvalidInput(
                "rectangle {!r} is wider than the strip".format(r.id)
            )


def nfdh(
        rects: Sequence[Rect],
        strip_width: Rational,
) -> Tuple[List[Placement], Rational]:
    """
    Next Fit Decreasing Height: a new shelf is opened whenever the next
    rectangle does not fit on the current one.
    """
    _check_strip(rects, strip_width)
    placements = []  # type: List[Placement]
    shelf_y = 0  # type: Rational
    shelf_h = 0  # type: Rational
    x = 0  # type: Rational

    for r in _shelf_order(rects):
        if not placements:
            shelf_h = r.h
        elif x + r.w > strip_width:
            shelf_y += shelf_h
            shelf_h = r.h
            x = 0
        placements.append(Placement(r.id, x, shelf_y))
        x += r.w

    return placements, shelf_y + shelf_h


def ffdh(
        rects: Sequence[Rect],
        strip_width: Rational,
) -> Tuple[List[Placement], Rational]:
    """
    First Fit Decreasing Height: each rectangle goes on the lowest shelf
    with room left, or on a new shelf on top.
    """
    _check_strip(rects, strip_width)
    placements = []  # type: List[Placement]
    shelves = []  # type: List[List[Rational]]
    top = 0  # type: Rational

    for r in _shelf_order(rects):
        for shelf in shelves:
            y, fill = shelf
            if fill + r.w <= strip_width:
                placements.append(Placement(r.id, fill, y))
                shelf[1] = fill + r.w
                break
        else:
            shelves.append([top, r.w])
            placements.append(Placement(r.id, 0, top))
            top += r.h

    return placements, top


def compact_left(
        placements: Sequence[Placement],
        rects: Sequence[Rect],
) -> List[Placement]:
    """
    Slide every rectangle left until it touches the box side or a
    rectangle it shares a horizontal band with.
    """
    sizes = {r.id: r for r in rects}
    done = []  # type: List[Tuple[Placement, Rect]]

    for p in sorted(placements, key=lambda p: (p.x, p.y, p.id)):
        r = sizes[p.id]
        x = 0  # type: Rational
        for q, s in done:
            if q.y < p.y + r.h and p.y < q.y + s.h:
                x = max(x, q.x + s.w)
        done.append((Placement(p.id, x, p.y), r))

    moved = {q.id: q for q, _ in done}
    return [moved[p.id] for p in placements]


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.nodes = 0

    def spend(self) -> bool:
        self.nodes += 1
        return self.nodes <= self.limit


def steinberg_pack(
        rects: Sequence[Rect],
        box: Box,
        max_nodes: int = const.PACKING_NODES,
) -> List[Placement]:
    """
    Pack `rects` into `box`, which must satisfy Steinberg's condition.

    The box is split recursively: a shelf packing is tried first, then
    a stack of the wide rectangles, a row of the tall ones, or a cut
    into two sub-boxes.  Each split is taken only when both parts
    satisfy the condition again, and each layout is verified before it
    is used.  A part that none of them handles is packed by a bottom-left
    search over subset-sum coordinates.

    This is not Steinberg's own procedure and has no polynomial bound.
    The search is complete but stops after `max_nodes` nodes; running
    out raises InternalInvariant although a packing exists.
    """
    rects = list(rects)
    if not steinberg_condition(rects, box):
        raise ConditionViolated(
            "Steinberg's condition fails for {} rectangles in {}x{}".format(
                len(rects), box.width, box.height
            )
        )

    budget = _Budget(max_nodes)
    placements = _pack(rects, box.width, box.height, budget)
    if placements is None:
        raise InternalInvariant(
            "packing search exhausted after {} nodes".format(budget.nodes)
        )

    violations = verify_packing(placements, rects, box)
    if violations:
        raise InternalInvariant(
            "packer produced an invalid packing: {}".format(violations[0])
        )
    return placements


def _shift(
        placements: Iterable[Placement],
        dx: Rational,
        dy: Rational,
) -> List[Placement]:
    return [Placement(p.id, p.x + dx, p.y + dy) for p in placements]


def _transpose_rects(rects: Iterable[Rect]) -> List[Rect]:
    return [Rect(r.id, r.h, r.w) for r in rects]


def _transpose(placements: Iterable[Placement]) -> List[Placement]:
    return [Placement(p.id, p.y, p.x) for p in placements]


def _pack(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    if not rects:
        return []
    if len(rects) == 1:
        return [Placement(rects[0].id, 0, 0)]

    box = Box(width, height)
    steps = (_shelves, _wide_stack, _tall_row, _split, _split_transposed)
    for step in steps:  # type: Packer
        placements = step(rects, width, height, budget)
        if placements is None:
            continue
        violations = verify_packing(placements, rects, box)
        if not violations:
            return placements
        LOG.debug("invalid layout (%s), trying the next step",
                  violations[0])

    LOG.debug("falling back to search for %d rectangles", len(rects))
    return _search(rects, width, height, budget)


def _sub(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    if not steinberg_condition(rects, Box(width, height)):
        return None
    return _pack(rects, width, height, budget)


def _shelves(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        _budget: _Budget,
) -> Optional[List[Placement]]:
    placements, used = ffdh(rects, width)
    if used <= height:
        return placements
    return None


def _wide_stack(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    wide = sorted((r for r in rects if 2 * r.w >= width),
                  key=lambda r: (-r.w, r.id))
    if not wide:
        return None

    stack = []  # type: List[Placement]
    y = 0  # type: Rational
    for r in wide:
        stack.append(Placement(r.id, 0, y))
        y += r.h
    if y > height:
        return None

    rest = [r for r in rects if 2 * r.w < width]
    above = None  # type: Optional[List[Placement]]
    if y < height or not rest:
        above = _sub(rest, width, height - y, budget)
    if above is not None:
        return stack + _shift(above, 0, y)

    # Everything right of the widest stacked rectangle is free over the
    # full height; rectangles too tall for the space above go there.  The
    # space above the stack is only as wide as the stack.
    stack_w = wide[0].w
    column_w = width - stack_w
    column = [r for r in rest if r.h > height - y]
    top = sorted((r for r in rest if r.h <= height - y),
                 key=lambda r: (-r.h, r.id))
    while True:
        if column_w > 0 or not column:
            right = _sub(column, column_w, height, budget) if column else []
            upper = _sub(top, stack_w, height - y, budget) if top else []
            if right is not None and upper is not None:
                return (stack + _shift(right, stack_w, 0) +
                        _shift(upper, 0, y))
        if not top:
            return None
        column.append(top.pop(0))


def _tall_row(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    placements = _wide_stack(_transpose_rects(rects), height, width, budget)
    if placements is None:
        return None
    return _transpose(placements)


def _split(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    if any(2 * r.w >= width or 2 * r.h >= height for r in rects):
        return None

    ordered = sorted(rects, key=lambda r: (-r.w, r.id))
    for k in range(1, len(ordered)):
        left, right = ordered[:k], ordered[k:]
        cut = max(left[0].w, 2 * rect_area(left) / height)
        if cut >= width:
            break
        if not (steinberg_condition(left, Box(cut, height))
                and steinberg_condition(right, Box(width - cut, height))):
            continue
        first = _pack(left, cut, height, budget)
        second = _pack(right, width - cut, height, budget)
        if first is not None and second is not None:
            return first + _shift(second, cut, 0)
    return None


def _split_transposed(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    placements = _split(_transpose_rects(rects), height, width, budget)
    if placements is None:
        return None
    return _transpose(placements)


def _subset_sums(
        values: Iterable[Rational],
        limit: Rational,
) -> List[Rational]:
    sums = {0}  # type: set
    for v in values:
        sums |= {s + v for s in sums if s + v <= limit}
    return sorted(sums)


def _search(
        rects: List[Rect],
        width: Rational,
        height: Rational,
        budget: _Budget,
) -> Optional[List[Placement]]:
    """
    Bottom-left backtracking.  Some packing exists in which every
    rectangle rests on the floor or on another rectangle and against the
    wall or another rectangle, so its coordinates are sums of other
    heights and widths.
    """
    order = sorted(rects, key=lambda r: (-r.w * r.h, -r.h, r.id))
    xs = _subset_sums((r.w for r in rects), width)
    ys = _subset_sums((r.h for r in rects), height)
    placed = []  # type: List[Tuple[Placement, Rect]]

    def place(n: int) -> Optional[bool]:
        if n == len(order):
            return True
        r = order[n]
        for y in ys:
            if y + r.h > height:
                break
            for x in xs:
                if x + r.w > width:
                    break
                if not budget.spend():
                    return None
                p = Placement(r.id, x, y)
                if any(_overlap(p, r, q, s) for q, s in placed):
                    continue
                placed.append((p, r))
                found = place(n + 1)
                if found is None or found:
                    return found
                placed.pop()
        return False

    if place(0):
        return [p for p, _ in placed]
    return None


def shelf_schedule(instance: Instance, kind: str = "ffdh") -> Schedule:
    """
    Schedule the jobs as a shelf packing on a strip of width D: a job
    starts at the x-coordinate of its rectangle.
    """
    packers = {"ffdh": ffdh, "nfdh": nfdh}
    if kind not in packers:
        raise InvalidInput("unknown shelf packer {!r}".format(kind))
    placements, used = packers[kind](rects_of(instance), instance.deadline)
    LOG.debug("%s shelves reach height %s", kind, used)
    return Schedule((p.id, int(p.x)) for p in placements)
