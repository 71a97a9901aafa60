"""JSON game files.

Two layouts are accepted::

    {"stars": [["1*", "0*"], ["0", "1"]]}
    {"entries": [[{"g": 0, "q": "1/2", "w": 2}]]}

Rationals are JSON integers or strings ``"p/q"``; floats are refused so that
game data stays exact.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .model import AbsorbingGame, from_star_matrix, validate

_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*")


class GameFileError(ValueError):
    def __init__(self, message: str, position: tuple[int, int] | None = None):
        where = f" at ({position[0]},{position[1]})" if position else ""
        super().__init__(message + where)
        self.position = position


def parse_rational(value, position=None) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise GameFileError(f"not an exact rational: {value!r}", position)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL.fullmatch(value)
        if match:
            num, den = match.groups()
            if den is not None and int(den) == 0:
                raise GameFileError(f"zero denominator in {value!r}", position)
            return Fraction(int(num), int(den) if den else 1)
    raise GameFileError(f"malformed rational {value!r}", position)


def _grid(doc, key):
    grid = doc[key]
    if not isinstance(grid, list) or not grid or not all(isinstance(r, list) for r in grid):
        raise GameFileError(f'"{key}" must be a non-empty list of rows')
    width = len(grid[0])
    for i, row in enumerate(grid, 1):
        if len(row) != width or not row:
            raise GameFileError(f"ragged grid: row {i} has {len(row)} cells, expected {width}", (i, 1))
    return grid


def parse_game_file(text: str) -> AbsorbingGame:
    """Parse a game document exactly, raising GameFileError with (row, col) on bad cells."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFileError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    if not isinstance(doc, dict) or len(doc.keys() & {"stars", "entries"}) != 1:
        raise GameFileError('expected an object with exactly one of "stars" or "entries"')

    if "stars" in doc:
        cells = []
        for i, row in enumerate(_grid(doc, "stars"), 1):
            out = []
            for j, cell in enumerate(row, 1):
                if not isinstance(cell, str):
                    cell = str(parse_rational(cell, (i, j)))
                starred = cell.rstrip().endswith("*")
                body = cell.rstrip()[:-1] if starred else cell
                out.append((parse_rational(body, (i, j)), starred))
            cells.append(out)
        game = from_star_matrix(cells)
    else:
        g, q, w = [], [], []
        for i, row in enumerate(_grid(doc, "entries"), 1):
            g.append([]), q.append([]), w.append([])
            for j, cell in enumerate(row, 1):
                if not isinstance(cell, dict) or set(cell) - {"g", "q", "w"} or "g" not in cell:
                    raise GameFileError('entry must be an object with "g" and optional "q", "w"', (i, j))
                qq = parse_rational(cell.get("q", 0), (i, j))
                if qq and "w" not in cell:
                    raise GameFileError('absorbing entry needs "w"', (i, j))
                g[-1].append(parse_rational(cell["g"], (i, j)))
                q[-1].append(qq)
                w[-1].append(parse_rational(cell.get("w", 0), (i, j)))
        game = AbsorbingGame(g, q, w)
        for i, row in enumerate(q, 1):
            for j, v in enumerate(row, 1):
                if not 0 <= v <= 1:
                    raise GameFileError(f"q out of range: {v}", (i, j))

    problems = validate(game)
    if problems:
        raise GameFileError("; ".join(problems))
    return game


def _fmt(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_document(game: AbsorbingGame) -> dict:
    cells = game.star_cells()
    if cells is not None:
        return {"stars": [[f"{_fmt(v)}*" if s else str(_fmt(v)) for v, s in row] for row in cells]}
    entries = []
    for i in range(game.m):
        row = []
        for j in range(game.n):
            row.append({"g": _fmt(game.g[i][j]), "q": _fmt(game.q[i][j]), "w": _fmt(game.w[i][j])})
        entries.append(row)
    return {"entries": entries}


def serialize(game: AbsorbingGame) -> str:
    return json.dumps(to_document(game))
