"""Line-oriented text format for digraphs, colourings and assignments.

    # comment lines and blank lines are ignored
    p dsa <vertex_count> <arc_count> <m>
    a <tail> <head> [<label>]          label omitted means 1
    c <arc_index> <colour>
    w <arc_index> <colour> <fibre_out> <fibre_in>
    i <vertex> <start> <k>             in-colour interval report

Arc index is the occurrence order of `a` lines starting at 0.  Problems
local to one line raise ParseError(line, reason); violations that only
show up across lines (duplicate triples, count mismatch, self-loops)
raise ValidateError.
"""

from __future__ import annotations

from typing import IO, Iterable

from .digraph import LabelledDigraph
from .errors import ParseError, ValidateError
from .intervals import CyclicInterval


def _ints(fields: list[str], lineno: int) -> list[int]:
    out = []
    for f in fields:
        try:
            out.append(int(f))
        except ValueError:
            raise ParseError(lineno, f"expected integer, got {f!r}") from None
    return out


def _content_lines(stream: Iterable[str]):
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def read_digraph(stream: Iterable[str]) -> LabelledDigraph:
    header = None
    arcs: list[tuple[int, int, int]] = []
    for lineno, fields in _content_lines(stream):
        kind = fields[0]
        if kind == "p":
            if header is not None:
                raise ParseError(lineno, "second problem line")
            if len(fields) != 5 or fields[1] != "dsa":
                raise ParseError(lineno, "problem line must be 'p dsa <n> <arcs> <m>'")
            n, arc_count, m = _ints(fields[2:], lineno)
            if n < 0 or arc_count < 0 or m < 1:
                raise ParseError(lineno, "bad problem-line counts")
            header = (n, arc_count, m)
        elif kind == "a":
            if header is None:
                raise ParseError(lineno, "arc line before problem line")
            if len(fields) not in (3, 4):
                raise ParseError(lineno, "arc line must be 'a <tail> <head> [<label>]'")
            nums = _ints(fields[1:], lineno)
            tail, head = nums[0], nums[1]
            label = nums[2] if len(nums) == 3 else 1
            n, _, m = header
            if not (0 <= tail < n and 0 <= head < n):
                raise ParseError(lineno, f"vertex id outside 0..{n - 1}")
            if not (1 <= label <= m):
                raise ParseError(lineno, f"label {label} outside 1..{m}")
            arcs.append((tail, head, label))
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    if header is None:
        raise ParseError(0, "missing problem line")
    n, arc_count, m = header
    if len(arcs) != arc_count:
        raise ValidateError(f"problem line promises {arc_count} arcs, file has {len(arcs)}")
    return LabelledDigraph(n, m, tuple(arcs))


def write_digraph(stream: IO[str], ld: LabelledDigraph,
                  comments: Iterable[str] = ()) -> None:
    for c in comments:
        stream.write(f"# {c}\n")
    stream.write(f"p dsa {ld.vertex_count} {ld.arc_count} {ld.label_count}\n")
    for tail, head, label in ld.arcs:
        stream.write(f"a {tail} {head} {label}\n")


def read_colouring(stream: Iterable[str], arc_count: int | None = None,
                   ) -> tuple[dict[int, int], dict[int, CyclicInterval]]:
    """Returns (arc colours, per-vertex interval reports)."""
    colours: dict[int, int] = {}
    intervals: dict[int, CyclicInterval] = {}
    for lineno, fields in _content_lines(stream):
        kind = fields[0]
        if kind == "c":
            if len(fields) != 3:
                raise ParseError(lineno, "colour line must be 'c <arc_index> <colour>'")
            arc, colour = _ints(fields[1:], lineno)
            if arc < 0 or (arc_count is not None and arc >= arc_count):
                raise ParseError(lineno, f"arc index {arc} out of range")
            if colour < 1:
                raise ParseError(lineno, "colours are positive")
            if arc in colours:
                raise ValidateError(f"arc {arc} coloured twice")
            colours[arc] = colour
        elif kind == "i":
            if len(fields) != 4:
                raise ParseError(lineno, "interval line must be 'i <vertex> <start> <k>'")
            vertex, start, k = _ints(fields[1:], lineno)
            if vertex < 0 or start < 1 or k < 1:
                raise ParseError(lineno, "bad interval line values")
            if vertex in intervals:
                raise ValidateError(f"vertex {vertex} has two interval lines")
            intervals[vertex] = CyclicInterval(modulus=2 * k, start=start, length=k)
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")
    return colours, intervals


def write_colouring(stream: IO[str], colours: dict[int, int],
                    intervals: dict[int, CyclicInterval] | None = None,
                    comments: Iterable[str] = ()) -> None:
    for c in comments:
        stream.write(f"# {c}\n")
    for arc in sorted(colours):
        stream.write(f"c {arc} {colours[arc]}\n")
    for vertex in sorted(intervals or {}):
        iv = intervals[vertex]
        stream.write(f"i {vertex} {iv.start} {iv.length}\n")


def read_wavelengths(stream: Iterable[str], arc_count: int | None = None,
                     ) -> dict[int, tuple[int, int, int]]:
    """Returns arc -> (wavelength, fibre_out, fibre_in)."""
    out: dict[int, tuple[int, int, int]] = {}
    for lineno, fields in _content_lines(stream):
        if fields[0] != "w":
            raise ParseError(lineno, f"unknown line type {fields[0]!r}")
        if len(fields) != 5:
            raise ParseError(lineno,
                             "wavelength line must be 'w <arc> <colour> <f_out> <f_in>'")
        arc, colour, f_out, f_in = _ints(fields[1:], lineno)
        if arc < 0 or (arc_count is not None and arc >= arc_count):
            raise ParseError(lineno, f"arc index {arc} out of range")
        if colour < 1 or f_out < 1 or f_in < 1:
            raise ParseError(lineno, "wavelength and fibres are positive")
        if arc in out:
            raise ValidateError(f"arc {arc} assigned twice")
        out[arc] = (colour, f_out, f_in)
    return out


def write_wavelengths(stream: IO[str], assignment: dict[int, tuple[int, int, int]],
                      comments: Iterable[str] = ()) -> None:
    for c in comments:
        stream.write(f"# {c}\n")
    for arc in sorted(assignment):
        colour, f_out, f_in = assignment[arc]
        stream.write(f"w {arc} {colour} {f_out} {f_in}\n")
