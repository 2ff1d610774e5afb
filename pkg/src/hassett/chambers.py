"""Walls and coarse chambers of the weight domain.

A weight is ``a = (a_1, ..., a_n)`` with ``0 < a_i <= 1`` and ``sum(a) > 2``.
The walls are the hyperplanes ``sum_{j in S} a_j = 1`` and a chamber is a
nonempty connected component of the domain with the walls removed, i.e. a
realizable sign vector over the walls.

Markings are 1-based throughout the public interface.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .arith import (
    LinearForm,
    ParseError,
    StrictSystem,
    format_rational,
    int_rows,
    parse_rational,
    strict_feasible,
    strict_witness,
    verify_point,
)

log = logging.getLogger(__name__)

MIN_N, MAX_N = 4, 8
TYPES = "ABCDEF"

Subset = tuple[int, ...]


class DomainError(ValueError):
    """Raised when a weight lies outside the weight domain."""


def _check_n(n: int, hi: int = MAX_N) -> None:
    if not isinstance(n, int) or not MIN_N <= n <= hi:
        raise ValueError(f"n must be an integer in [{MIN_N}, {hi}], got {n!r}")


def complement(n: int, subset: Iterable[int]) -> Subset:
    s = set(subset)
    return tuple(i for i in range(1, n + 1) if i not in s)


@dataclass(frozen=True)
class Weight:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        entries = tuple(Fraction(a) for a in self.entries)
        object.__setattr__(self, "entries", entries)
        for i, a in enumerate(entries, 1):
            if a <= 0:
                raise DomainError(f"a_{i} = {a} violates 0 < a_{i}")
            if a > 1:
                raise DomainError(f"a_{i} = {a} violates a_{i} <= 1")
        if sum(entries) <= 2:
            raise DomainError(f"sum of weights {sum(entries)} violates sum > 2")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __call__(self, subset: Iterable[int]) -> Fraction:
        """Total weight of a set of 1-based markings."""
        return sum((self.entries[i - 1] for i in subset), Fraction(0))


@dataclass(frozen=True)
class Wall:
    n: int
    subset: Subset

    @property
    def form(self) -> LinearForm:
        return wall_form(self.n, self.subset)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.subset)) + "}"


@lru_cache(maxsize=None)
def wall_form(n: int, subset: Subset) -> LinearForm:
    """``sum_{j in S} a_j - 1``."""
    return LinearForm.indicator(n, [i - 1 for i in subset], -1)


@lru_cache(maxsize=None)
def _domain_forms(n: int) -> tuple[LinearForm, ...]:
    # a_i <= 1 is entered as strict: an open sign region meeting the closed
    # cube also meets its interior, so nonemptiness is unaffected.
    forms = [LinearForm.indicator(n, [i]) for i in range(n)]
    forms.append(LinearForm.indicator(n, range(n), -2))
    forms.extend(LinearForm.indicator(n, [], 1) - LinearForm.indicator(n, [i]) for i in range(n))
    return tuple(forms)


def domain_system(n: int) -> StrictSystem:
    """The weight domain as a strict system (closed upper bounds kept weak)."""
    lower = [LinearForm.indicator(n, [i]) for i in range(n)]
    lower.append(LinearForm.indicator(n, range(n), -2))
    upper = [LinearForm.indicator(n, [], 1) - LinearForm.indicator(n, [i]) for i in range(n)]
    return StrictSystem(lower, upper)


@lru_cache(maxsize=None)
def generate_walls(n: int) -> tuple[Wall, ...]:
    """Walls that cut the domain, sorted by (|S|, S).

    ``|S| >= n - 1`` never cuts: ``|S| = n`` contradicts ``sum > 2`` and for
    ``|S| = n - 1`` the missing weight would have to exceed 1.  Every other
    candidate is kept iff both open sides meet the domain.
    """
    _check_n(n)
    dom = _domain_forms(n)
    walls = []
    for size in range(3, n - 1):
        for subset in combinations(range(1, n + 1), size):
            f = wall_form(n, subset)
            if strict_feasible(StrictSystem(dom + (f,))) and strict_feasible(StrictSystem(dom + (-f,))):
                walls.append(Wall(n, subset))
    return tuple(walls)


def wall_order_hash(n: int) -> str:
    text = ";".join(",".join(map(str, w.subset)) for w in generate_walls(n))
    return hashlib.sha256(f"{n}:{text}".encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Chamber:
    id: int
    n: int
    signs: tuple[int, ...]  # +1 / -1 per effective wall, canonical wall order
    representative: Weight
    d_set: frozenset[frozenset[int]] = field(compare=False)

    @property
    def d_value(self) -> int:
        return len(self.d_set)

    @property
    def sign_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def sorted_d_set(self) -> list[Subset]:
        return sorted(tuple(sorted(i)) for i in self.d_set)


def chamber_system(n: int, signs: Sequence[int]) -> StrictSystem:
    """Domain plus every wall on its assigned side, all strict.

    Row order (domain, then walls in canonical order) fixes the pivoting path,
    so ``interior_point`` of this system is the chamber's representative.
    """
    walls = generate_walls(n)
    if len(signs) != len(walls):
        raise ValueError("sign vector length does not match the wall list")
    forms = [w.form if s > 0 else -w.form for w, s in zip(walls, signs)]
    return StrictSystem(_domain_forms(n) + tuple(forms))


def d_set_of(n: int, signs: Sequence[int]) -> frozenset[frozenset[int]]:
    """Complements of the walls on their negative side: ``{I : a(I^c) < 1}``."""
    walls = generate_walls(n)
    return frozenset(frozenset(complement(n, w.subset)) for w, s in zip(walls, signs) if s < 0)


@lru_cache(maxsize=None)
def _implications(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]:
    """For each wall S, earlier walls whose sign can force the sign of S.

    With positive weights a superset of a positive wall is positive and a
    subset of a negative wall is negative.  If the complement of S sits inside
    a negative wall T then ``sum(S) > 2 - sum(T) > 1``.
    """
    sets = [frozenset(w.subset) for w in generate_walls(n)]
    full = frozenset(range(1, n + 1))
    out = []
    for idx, s in enumerate(sets):
        earlier = range(idx)
        plus_if_plus = tuple(k for k in earlier if sets[k] <= s)
        minus_if_minus = tuple(k for k in earlier if s <= sets[k])
        plus_if_minus = tuple(k for k in earlier if full - s <= sets[k])
        out.append((plus_if_plus, minus_if_minus, plus_if_minus))
    return tuple(out)


def _implied_sign(signs: Sequence[int], rules) -> int:
    plus_if_plus, minus_if_minus, plus_if_minus = rules
    if any(signs[k] > 0 for k in plus_if_plus) or any(signs[k] < 0 for k in plus_if_minus):
        return 1
    if any(signs[k] < 0 for k in minus_if_minus):
        return -1
    return 0


class _Region:
    __slots__ = ("signs", "free", "nums", "den")

    def __init__(self, signs, free, nums, den):
        self.signs = signs  # +1/-1 per wall inserted so far
        self.free = free  # walls whose sign was not implied; they carry the region
        self.nums = nums  # witness numerators
        self.den = den  # their common positive denominator


@lru_cache(maxsize=None)
def _row_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Domain rows, and signed wall rows: row k is wall k positive, row W+k negative."""
    walls = generate_walls(n)
    dom = int_rows(_domain_forms(n), 1)
    signed = [w.form for w in walls] + [-w.form for w in walls]
    table = int_rows(signed, 1) if signed else np.zeros((0, n + 2), dtype=np.int64)
    return dom, table


def _signed_index(k: int, sign: int, count: int) -> int:
    return k if sign > 0 else k + count


def _split(n: int, idx: int, regions: list[_Region]) -> list[list[_Region]]:
    """Refine each region by wall ``idx``; one list of nonempty children per region.

    An implied sign needs no LP.  Otherwise the witness already certifies one
    side and a single LP over the region's free walls settles the other.
    """
    walls = generate_walls(n)
    count = len(walls)
    rules = _implications(n)[idx]
    dom, table = _row_tables(n)
    subset = walls[idx].subset
    out = []
    for region in regions:
        forced = _implied_sign(region.signs, rules)
        if forced:
            out.append([_Region(region.signs + (forced,), region.free, region.nums, region.den)])
            continue
        value = sum(region.nums[i - 1] for i in subset) - region.den
        base = [_signed_index(k, region.signs[k], count) for k in region.free]
        free = region.free + (idx,)
        children = []
        for sign in (1, -1):
            if value * sign > 0:
                children.append(_Region(region.signs + (sign,), free, region.nums, region.den))
                continue
            rows = np.concatenate([dom, table[base + [_signed_index(idx, sign, count)]]])
            found = strict_witness(rows)
            if found is not None:
                children.append(_Region(region.signs + (sign,), free, *found))
        out.append(children)
    return out


def _split_job(args):
    return _split(*args)


def _enumerate_regions(n: int, threads: int = 1) -> list[_Region]:
    """Incremental wall insertion; the output order does not depend on ``threads``."""
    walls = generate_walls(n)
    dom, _ = _row_tables(n)
    regions = [_Region((), (), *strict_witness(dom))]
    pool = None
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        pool = ProcessPoolExecutor(max_workers=threads)
    try:
        for idx in range(len(walls)):
            if pool is None or len(regions) < 64:
                children = _split(n, idx, regions)
            else:
                size = -(-len(regions) // (threads * 4))
                jobs = [(n, idx, regions[i : i + size]) for i in range(0, len(regions), size)]
                children = [c for part in pool.map(_split_job, jobs) for c in part]
            regions = [c for group in children for c in group]
            log.debug("n=%d wall %d/%d: %d regions", n, idx + 1, len(walls), len(regions))
    finally:
        if pool is not None:
            pool.shutdown()
    return regions


def _sign_key(signs: Sequence[int]) -> tuple[int, ...]:
    # '+' sorts before '-'
    return tuple(0 if s > 0 else 1 for s in signs)


def build_chamber(n: int, cid: int, signs: tuple[int, ...]) -> Chamber:
    """Attach the slack-maximizing representative and the D-set to a sign vector."""
    dom, table = _row_tables(n)
    count = len(signs)
    rows = np.concatenate([dom, table[[_signed_index(k, s, count) for k, s in enumerate(signs)]]])
    found = strict_witness(rows)
    if found is None:
        raise ValueError(f"sign vector {signs} is not a nonempty chamber")
    nums, den = found
    rep = Weight(tuple(Fraction(v, den) for v in nums))
    return Chamber(cid, n, signs, rep, d_set_of(n, signs))


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> tuple[Chamber, ...]:
    return _enumerate(n, threads=1)


def _enumerate(n: int, threads: int = 1) -> tuple[Chamber, ...]:
    ordered = sorted((r.signs for r in _enumerate_regions(n, threads)), key=_sign_key)
    return tuple(build_chamber(n, cid, signs) for cid, signs in enumerate(ordered))


def enumerate_chambers(n: int, threads: int = 1) -> tuple[Chamber, ...]:
    """All nonempty coarse chambers, ids ranked by sign vector ('+' < '-')."""
    _check_n(n)
    if threads <= 1:
        return _enumerate_cached(n)
    return _enumerate(n, threads)


def chamber_index(chambers: Sequence[Chamber]) -> dict[tuple[int, ...], Chamber]:
    return {c.signs: c for c in chambers}


@dataclass(frozen=True)
class OnWall:
    walls: tuple[Wall, ...]


def weight_signs(w: Weight) -> tuple[tuple[int, ...], tuple[Wall, ...]]:
    """Sign vector of ``w`` over the walls, plus the walls it lies on."""
    signs, hits = [], []
    for wall in generate_walls(w.n):
        v = w(wall.subset)
        if v == 1:
            hits.append(wall)
            signs.append(0)
        else:
            signs.append(1 if v > 1 else -1)
    return tuple(signs), tuple(hits)


def classify_weight(w: Weight, chambers: Sequence[Chamber] | None = None) -> Chamber | OnWall:
    signs, hits = weight_signs(w)
    if hits:
        return OnWall(hits)
    if chambers is None:
        chambers = enumerate_chambers(w.n)
    found = chamber_index(chambers).get(signs)
    if found is None:
        raise AssertionError(f"weight {w.entries} has a sign vector missing from the enumeration")
    return found


def type_of(chamber: Chamber) -> str:
    """Type (A)-(F) of an n = 5 chamber."""
    if chamber.n != 5:
        raise ValueError("chamber types are defined for n = 5 only")
    d = chamber.d_value
    if d == 3:
        union = frozenset().union(*chamber.d_set)
        return "D" if len(union) == 4 else "E"
    return {0: "A", 1: "B", 2: "C", 4: "F"}[d]


def count_by_type(chambers: Iterable[Chamber]) -> dict[str, int]:
    counts = dict.fromkeys(TYPES, 0)
    for c in chambers:
        counts[type_of(c)] += 1
    return counts


# -- chamber cache ---------------------------------------------------------

CACHE_SCHEMA = "chambers/1"


class CacheError(ValueError):
    """Raised when a cache file is stale, malformed or fails validation."""


def default_cache_path(n: int) -> Path | None:
    root = os.environ.get("MODULI_CACHE_DIR")
    return Path(root) / f"chambers-n{n}.json" if root else None


def chambers_to_record(n: int, chambers: Sequence[Chamber]) -> dict:
    return {
        "schema": CACHE_SCHEMA,
        "n": n,
        "wall_order_hash": wall_order_hash(n),
        "walls": [list(w.subset) for w in generate_walls(n)],
        "chambers": [
            {
                "id": c.id,
                "signs": c.sign_string,
                "representative": [format_rational(a) for a in c.representative.entries],
                "d_set": [list(i) for i in c.sorted_d_set()],
            }
            for c in chambers
        ],
    }


def save_cache(path: str | os.PathLike, n: int, chambers: Sequence[Chamber]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(chambers_to_record(n, chambers), sort_keys=True, separators=(",", ":")))
    tmp.replace(path)


def load_cache(path: str | os.PathLike, n: int) -> tuple[Chamber, ...]:
    """Read a cache and re-check every representative against its sign vector."""
    try:
        record = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheError(f"cannot read cache {path}: {exc}") from exc
    if record.get("schema") != CACHE_SCHEMA or record.get("n") != n:
        raise CacheError("cache schema or n does not match")
    walls = generate_walls(n)
    if record.get("wall_order_hash") != wall_order_hash(n) or record.get("walls") != [
        list(w.subset) for w in walls
    ]:
        raise CacheError("cache wall ordering is stale")
    dom, table = _row_tables(n)
    count = len(walls)
    out = []
    seen = set()
    for cid, item in enumerate(record.get("chambers", [])):
        try:
            text = item["signs"]
            if len(text) != count or set(text) - {"+", "-"}:
                raise CacheError(f"chamber {cid}: bad sign string")
            signs = tuple(1 if ch == "+" else -1 for ch in text)
            entries = tuple(parse_rational(v) for v in item["representative"])
        except (KeyError, TypeError, ParseError) as exc:
            raise CacheError(f"chamber {cid}: malformed entry ({exc})") from exc
        if item.get("id") != cid or len(entries) != n or signs in seen:
            raise CacheError(f"chamber {cid}: bad id, dimension or duplicate")
        seen.add(signs)
        den = lcm(*(a.denominator for a in entries))
        nums = [int(a * den) for a in entries] + [0]
        rows = np.concatenate([dom, table[[_signed_index(k, s, count) for k, s in enumerate(signs)]]])
        if not verify_point(rows, nums, den, np.ones(len(rows), dtype=bool)):
            raise CacheError(f"chamber {cid}: representative fails its sign vector")
        d_set = d_set_of(n, signs)
        if sorted(tuple(sorted(i)) for i in d_set) != [tuple(i) for i in item.get("d_set", [])]:
            raise CacheError(f"chamber {cid}: d_set disagrees with signs")
        out.append(Chamber(cid, n, signs, Weight(entries), d_set))
    if [c.signs for c in out] != sorted((c.signs for c in out), key=_sign_key):
        raise CacheError("cache chambers are not in canonical order")
    return tuple(out)


def load_or_enumerate(n: int, cache: str | os.PathLike | None = None, threads: int = 1) -> tuple[Chamber, ...]:
    """Use a valid cache when present; otherwise enumerate and write it."""
    path = Path(cache) if cache else default_cache_path(n)
    if path is not None and path.exists():
        try:
            return load_cache(path, n)
        except CacheError as exc:
            log.warning("ignoring cache: %s", exc)
    chambers = enumerate_chambers(n, threads)
    if path is not None:
        save_cache(path, n, chambers)
    return chambers
