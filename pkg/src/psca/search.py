"""Isomorph-free catalogues of PSCAs built one symbol at a time.

Every PSCA(v, t, lambda) shrinks to a PSCA(v-1, t, lambda) when its largest
symbol is deleted, so a complete list of class representatives at order
``v - 1`` yields every class at order ``v`` by trying all insertion points of
a new symbol in every row.  Candidates are collected per level and then
deduplicated by canonical form.
"""

from __future__ import annotations

import json
import logging
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .core import InputError, PermArray, distribution_vectors, rank_sequence, symmetric_group, verify
from .distributions import filter_chain
from .iso import CanonicalForm, canonical_form

logger = logging.getLogger(__name__)

METHODS = ("fixed", "dynamic")

__all__ = [
    "Catalogue",
    "build_catalogue",
    "extend_catalogue",
    "extend_class",
    "group_flag_count",
    "read_catalogue",
    "realised_distributions",
    "seed_catalogue",
    "write_catalogue",
]


@dataclass
class Catalogue:
    v: int
    t: int
    lam: int
    classes: list[PermArray] = field(default_factory=list)
    complete: bool = True
    groups: list[bool] | None = None

    def __len__(self) -> int:
        return len(self.classes)

    def group_flags(self) -> list[bool]:
        if self.groups is None:
            from .groups import is_group

            self.groups = [is_group(x) for x in self.classes]
        return self.groups


class ResourceLimit(Exception):
    """A class-count or wall-clock cap was hit during extension."""


def seed_catalogue(t: int, lam: int) -> Catalogue:
    if t < 2 or lam < 1:
        raise InputError(f"need t >= 2 and lambda >= 1, got ({t}, {lam})")
    x = canonical_form(symmetric_group(t, lam)).array()
    return Catalogue(t, t, lam, [x], complete=True)


# -- one-symbol extension ----------------------------------------------------

class _Extender:
    """Backtracking over insertion positions of the new symbol ``v - 1``.

    Only t-sequences that contain the new symbol need tracking: they are
    indexed by ``(u, i)`` with ``u`` an ordered (t-1)-sequence of old symbols
    and ``i`` the slot the new symbol occupies.  Coverage counts are kept as
    threshold bit-planes: bit ``s`` of ``planes[j]`` is set once sequence
    ``s`` is covered more than ``j`` times.
    """

    def __init__(self, base: PermArray, t: int, lam: int, deadline: float | None = None):
        self.base = base
        self.t, self.lam = t, lam
        self.v = base.v + 1
        self.rows = base.rows
        self.deadline = deadline
        old = base.v
        combos = list(combinations(range(old), t - 1))
        self.masks: list[list[int]] = []
        for row in self.rows:
            keyed = [(rank_sequence([row[c] for c in combo], old) * t, combo) for combo in combos]
            per_pos = []
            for p in range(self.v):
                mask = 0
                for key, combo in keyed:
                    mask |= 1 << (key + sum(1 for c in combo if c < p))
                per_pos.append(mask)
            self.masks.append(per_pos)
        self.same_as_prev = [k > 0 and self.rows[k] == self.rows[k - 1] for k in range(len(self.rows))]

    def _expand(self, positions: Sequence[int]) -> PermArray:
        n = self.v - 1
        return PermArray(self.v, tuple(row[:p] + (n,) + row[p:] for row, p in zip(self.rows, positions)))

    def solutions(self, method: str, targets: Sequence[tuple[int, ...]]) -> Iterable[list[int]]:
        if method == "fixed":
            for target in targets:
                yield from self._search([target], narrow=False)
        elif method == "dynamic":
            yield from self._search(list(targets), narrow=True)
        else:
            raise InputError(f"unknown method {method!r}; choose from {METHODS}")

    def _search(self, live: list[tuple[int, ...]], narrow: bool) -> Iterable[list[int]]:
        """Depth-first assignment of insertion positions.

        With ``narrow`` the list of admissible column-count vectors shrinks
        as positions are fixed; otherwise ``live`` holds the single fixed
        target.  The next row is always one with the fewest legal positions;
        identical rows form a group whose positions are taken in
        nondecreasing order.
        """
        m, v, lam = len(self.rows), self.v, self.lam
        if not live:
            return
        masks = self.masks
        groups: list[list[int]] = []
        for k in range(m):
            if self.same_as_prev[k]:
                groups[-1].append(k)
            else:
                groups.append([k])
        ng = len(groups)
        filled = [0] * ng
        col = [0] * v
        pos = [0] * m
        deadline = self.deadline
        ticks = 0
        columns = range(v)

        def rec(depth: int, planes: tuple[int, ...], live: list[tuple[int, ...]]):
            nonlocal ticks
            if depth == m:
                yield list(pos)
                return
            ticks += 1
            if deadline is not None and not ticks & 0xFFF and time.monotonic() > deadline:
                raise ResourceLimit("time limit reached")
            full = planes[-1]
            if narrow:
                cap = [max(d[p] for d in live) for p in columns]
            else:
                cap = live[0]
            best = None
            best_opts = None
            for g in range(ng):
                rows = groups[g]
                f = filled[g]
                if f == len(rows):
                    continue
                k = rows[f]
                opts = masks[k]
                start = pos[rows[f - 1]] if f else 0
                choice = [p for p in range(start, v) if col[p] < cap[p] and not opts[p] & full]
                if not choice:
                    return
                if best_opts is None or len(choice) < len(best_opts):
                    best, best_opts = g, choice
                    if len(choice) == 1:
                        break
            rows = groups[best]
            k = rows[filled[best]]
            opts = masks[k]
            filled[best] += 1
            for p in best_opts:
                need = col[p] + 1
                if narrow:
                    narrowed = [d for d in live if d[p] >= need]
                    if not narrowed:
                        continue
                else:
                    narrowed = live
                M = opts[p]
                new = (planes[0] | M,) + tuple(planes[j] | (planes[j - 1] & M) for j in range(1, lam))
                col[p] = need
                pos[k] = p
                yield from rec(depth + 1, new, narrowed)
                col[p] = need - 1
            filled[best] -= 1

        yield from rec(0, (0,) * lam, live)


def _targets(v: int, t: int, lam: int, require: tuple[int, ...] | None) -> tuple[tuple[int, ...], ...]:
    survivors = filter_chain(v, t, lam).survivors
    if require is not None:
        return tuple(d for d in survivors if d == tuple(require))
    return survivors


def _extension_forms(base: PermArray, t: int, lam: int, method: str,
                     require: tuple[int, ...] | None = None,
                     deadline: float | None = None) -> set[CanonicalForm]:
    ext = _Extender(base, t, lam, deadline)
    targets = _targets(ext.v, t, lam, require)
    found: set[CanonicalForm] = set()
    for positions in ext.solutions(method, targets):
        x = ext._expand(positions)
        if require is not None and any(d != tuple(require) for d in distribution_vectors(x)):
            continue
        found.add(canonical_form(x))
    return found


def extend_class(x: PermArray, t: int, lam: int | None = None, method: str = "fixed",
                 require_distribution: Sequence[int] | None = None) -> list[PermArray]:
    """All pairwise non-isomorphic PSCA(v+1, t, lambda) containing ``x`` as
    the array left after deleting the new largest symbol."""
    res = verify(x, t)
    if not res.is_psca or (lam is not None and res.lam != lam):
        raise InputError(f"base array is not a PSCA({x.v},{t},{lam if lam is not None else '*'})")
    require = tuple(require_distribution) if require_distribution is not None else None
    forms = _extension_forms(x, t, res.lam, method, require)
    return [f.array() for f in sorted(forms)]


def _worker(args) -> tuple[set[CanonicalForm], bool]:
    rows, v, t, lam, method, require, deadline = args
    if deadline is not None and time.monotonic() > deadline:
        return set(), False
    base = PermArray(v, rows)
    try:
        return _extension_forms(base, t, lam, method, require, deadline), True
    except ResourceLimit:
        return set(), False


def extend_catalogue(cat: Catalogue, method: str = "fixed", jobs: int = 1,
                     limit_classes: int | None = None, deadline: float | None = None,
                     require_distribution: Sequence[int] | None = None) -> Catalogue:
    """Extend every class of ``cat`` by one symbol and deduplicate."""
    if method not in METHODS:
        raise InputError(f"unknown method {method!r}; choose from {METHODS}")
    t, lam, v = cat.t, cat.lam, cat.v + 1
    require = tuple(require_distribution) if require_distribution is not None else None
    forms: set[CanonicalForm] = set()
    complete = cat.complete
    tasks = [(x.rows, x.v, t, lam, method, require, deadline) for x in cat.classes]

    def absorb(result):
        nonlocal complete
        found, finished = result
        forms.update(found)
        if not finished:
            complete = False
        return limit_classes is not None and len(forms) > limit_classes

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(_worker, tasks, chunksize=max(1, len(tasks) // (8 * jobs))):
                if absorb(result):
                    complete = False
                    pool.shutdown(cancel_futures=True)
                    break
    else:
        for k, task in enumerate(tasks):
            if absorb(_worker(task)):
                complete = False
                break
            if k % 100 == 99:
                logger.info("level %d: %d/%d bases, %d classes", v, k + 1, len(tasks), len(forms))
    classes = [f.array() for f in sorted(forms)]
    if limit_classes is not None and len(classes) > limit_classes:
        classes = classes[:limit_classes]
    return Catalogue(v, t, lam, classes, complete=complete)


def _checkpoint_path(directory: Path, v: int, t: int, lam: int) -> Path:
    return directory / f"psca_{v}_{t}_{lam}.jsonl"


def build_catalogue(v: int, t: int, lam: int, method: str = "fixed", jobs: int = 1,
                    limit_classes: int | None = None, time_limit: float | None = None,
                    checkpoint_dir: str | Path | None = None,
                    require_distribution: Sequence[int] | None = None,
                    seed_class: str | None = None) -> Catalogue:
    """Catalogue PSCA(v, t, lambda) up to isomorphism.

    ``complete`` is false whenever a resource cap cut the search short or the
    catalogue was restricted to descendants of one pinned class.
    """
    if v < t:
        raise InputError(f"order {v} below strength {t}")
    deadline = time.monotonic() + time_limit if time_limit is not None else None
    cat = seed_catalogue(t, lam)
    directory = Path(checkpoint_dir) if checkpoint_dir is not None else None
    if directory is not None:
        directory.mkdir(parents=True, exist_ok=True)
        for u in range(v, t, -1):
            path = _checkpoint_path(directory, u, t, lam)
            if path.exists():
                stored = read_catalogue(path)
                if stored.complete:
                    cat = stored
                    break
    pinned = False
    while cat.v < v:
        if seed_class is not None and not pinned:
            chosen = [x for x in cat.classes if canonical_form(x).digest().startswith(seed_class)]
            if chosen:
                cat = Catalogue(cat.v, t, lam, chosen[:1], complete=False)
                pinned = True
        require = require_distribution if cat.v + 1 == v else None
        logger.info("extending %d classes of PSCA(%d,%d,%d)", len(cat), cat.v, t, lam)
        cat = extend_catalogue(cat, method, jobs, limit_classes, deadline, require)
        if directory is not None and cat.complete and not pinned and require is None:
            write_catalogue(_checkpoint_path(directory, cat.v, t, lam), cat)
        if not cat.classes:
            # nothing left to extend: every larger order is empty as well
            cat = Catalogue(v, t, lam, [], complete=cat.complete)
    if seed_class is not None and not pinned:
        raise InputError(f"no class with digest prefix {seed_class!r} below order {v}")
    return cat


# -- catalogue statistics ----------------------------------------------------

def realised_distributions(cat: Catalogue) -> tuple[set[tuple[int, ...]], bool]:
    """Distribution vectors occurring in the catalogue, closed under reversal.

    The flag is false when the catalogue is incomplete, in which case the set
    is only a lower bound.
    """
    found: set[tuple[int, ...]] = set()
    for x in cat.classes:
        for d in distribution_vectors(x):
            found.add(d)
            found.add(d[::-1])
    return found, cat.complete


def group_flag_count(cat: Catalogue) -> int:
    return sum(cat.group_flags())


# -- persistence ---------------------------------------------------------------

def write_catalogue(path: str | Path, cat: Catalogue) -> None:
    flags = cat.group_flags()
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".part")
    with tmp.open("w", encoding="utf-8") as fh:
        for x, g in zip(cat.classes, flags):
            fh.write(json.dumps({"v": cat.v, "t": cat.t, "lambda": cat.lam,
                                 "rows": [list(r) for r in x.rows], "is_group": g},
                                separators=(",", ":")) + "\n")
        fh.write(json.dumps({"complete": cat.complete, "count": len(cat.classes),
                             "v": cat.v, "t": cat.t, "lambda": cat.lam}) + "\n")
    os.replace(tmp, path)


def read_catalogue(path: str | Path) -> Catalogue:
    classes, flags = [], []
    params = None
    marker = None
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{lineno}: malformed JSON") from exc
            if "complete" in obj:
                marker = obj
                continue
            try:
                key = (obj["v"], obj["t"], obj["lambda"])
                x = PermArray(obj["v"], tuple(tuple(r) for r in obj["rows"]))
            except (KeyError, TypeError) as exc:
                raise InputError(f"{path}:{lineno}: malformed class record") from exc
            except InputError as exc:
                raise InputError(f"{path}:{lineno}: {exc}") from exc
            if params is None:
                params = key
            elif key != params:
                raise InputError(f"{path}:{lineno}: mixed parameters {key} vs {params}")
            classes.append(x)
            flags.append(bool(obj.get("is_group", False)))
    if marker is None:
        raise InputError(f"{path}: missing completeness marker")
    if marker.get("count") != len(classes):
        raise InputError(f"{path}: marker counts {marker.get('count')} classes, found {len(classes)}")
    if params is None:
        try:
            params = (marker["v"], marker["t"], marker["lambda"])
        except KeyError:
            raise InputError(f"{path}: empty catalogue without parameters") from None
    v, t, lam = params
    return Catalogue(v, t, lam, classes, complete=bool(marker["complete"]), groups=flags)
