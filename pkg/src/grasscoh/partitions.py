"""Partition and Young-diagram combinatorics.

Partitions are plain tuples of positive integers in weakly decreasing order;
the empty tuple is the empty partition.  Everything here is pure and the LR
cache is an ``lru_cache`` (safe for concurrent readers).
"""
from functools import lru_cache
from typing import Dict, Iterator, List, NamedTuple, Sequence, Tuple

Partition = Tuple[int, ...]


class BoxShape(NamedTuple):
    rows: int
    cols: int


def as_partition(parts: Sequence[int]) -> Partition:
    """Validate ``parts`` and return it as a canonical tuple (trailing zeros dropped)."""
    lam = tuple(int(p) for p in parts)
    while lam and lam[-1] == 0:
        lam = lam[:-1]
    for i, p in enumerate(lam):
        if p <= 0:
            raise ValueError(f"partition parts must be positive, got {tuple(parts)}")
        if i and p > lam[i - 1]:
            raise ValueError(f"partition parts must be weakly decreasing, got {lam}")
    return lam


def weight(lam: Partition) -> int:
    return sum(lam)


def fits(lam: Partition, box: BoxShape) -> bool:
    return len(lam) <= box.rows and (not lam or lam[0] <= box.cols)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


def parse_partition(text: str) -> Partition:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"partition text must look like [2,1], got {text!r}")
    body = body[1:-1].strip()
    if not body:
        return ()
    return as_partition(int(tok) for tok in body.split(","))


def _partitions(weight: int, max_part: int, max_len: int) -> Iterator[Partition]:
    # reverse-lexicographic: larger first parts come first
    if weight == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(weight, max_part), 0, -1):
        if first * max_len < weight:
            break
        for rest in _partitions(weight - first, first, max_len - 1):
            yield (first,) + rest


def partitions_in_box(box: BoxShape, weight: int) -> List[Partition]:
    """All partitions of ``weight`` fitting ``box``, in reverse-lex order."""
    if weight < 0 or weight > box.rows * box.cols:
        return []
    return list(_partitions(weight, box.cols, box.rows))


def complement(lam: Partition, box: BoxShape) -> Partition:
    """Complementary partition of ``lam`` inside ``box`` (an involution)."""
    if not fits(lam, box):
        raise ValueError(f"{lam} does not fit in a {box.rows}x{box.cols} box")
    padded = list(lam) + [0] * (box.rows - len(lam))
    mu = [box.cols - padded[box.rows - 1 - i] for i in range(box.rows)]
    while mu and mu[-1] == 0:
        mu.pop()
    return tuple(mu)


def gaussian_binomial(n: int, k: int) -> List[int]:
    """Coefficients of the Gaussian binomial [n choose k]_q.

    Counted directly as partitions in the k x (n-k) box, one entry per weight.
    """
    if not 0 < k < n:
        raise ValueError(f"need 0 < k < n, got n={n}, k={k}")
    box = BoxShape(k, n - k)
    counts = [0] * (k * (n - k) + 1)
    for w in range(len(counts)):
        counts[w] = sum(1 for _ in _partitions(w, box.cols, box.rows))
    return counts


def pieri_e(lam: Partition, r: int, row_limit: int = None) -> List[Partition]:
    """Partitions obtained from ``lam`` by adding a vertical strip of ``r`` boxes.

    ``row_limit`` caps the number of rows; ``None`` means unbounded.
    """
    if r < 1:
        raise ValueError("r must be positive")
    max_rows = len(lam) + r if row_limit is None else row_limit
    padded = list(lam) + [0] * max(0, max_rows - len(lam))
    out = []

    def rec(i: int, left: int, cur: List[int]):
        if left == 0:
            mu = cur + padded[i:]
            while mu and mu[-1] == 0:
                mu.pop()
            out.append(tuple(mu))
            return
        if i >= len(padded):
            return
        # add a box to row i if the result stays a partition
        if i == 0 or cur[i - 1] >= padded[i] + 1:
            rec(i + 1, left - 1, cur + [padded[i] + 1])
        rec(i + 1, left, cur + [padded[i]])

    rec(0, r, [])
    out.sort(reverse=True)
    return out


@lru_cache(maxsize=None)
def _lr(lam: Partition, mu: Partition, max_rows, max_cols) -> Tuple[Tuple[Partition, int], ...]:
    if not mu:
        if (max_rows is not None and len(lam) > max_rows) or (
            max_cols is not None and lam and lam[0] > max_cols
        ):
            return ()
        return ((lam, 1),)
    n_rows = len(lam) + len(mu)
    if max_rows is not None:
        n_rows = min(n_rows, max_rows)
    if len(lam) > n_rows:
        return ()
    base = list(lam) + [0] * (n_rows - len(lam))
    counts: Dict[Partition, int] = {}
    content = [0] * (len(mu) + 1)
    total = sum(mu)

    # Row-by-row filling of nu/lam.  Each row is read right to left (the
    # reverse reading word) and must keep the running content a lattice word.
    def fill(row: int, prev_len: int, prev_entries: Dict[int, int], shape: List[int], placed: int):
        if placed == total:
            nu = shape + base[row:]
            while nu and nu[-1] == 0:
                nu.pop()
            if all(content[i] == mu[i - 1] for i in range(1, len(mu) + 1)):
                key = tuple(nu)
                counts[key] = counts.get(key, 0) + 1
            return
        if row >= n_rows:
            return
        start = base[row]
        limit = prev_len if row > 0 else start + (total - placed)
        if max_cols is not None:
            limit = min(limit, max_cols)
        limit = min(limit, start + (total - placed))
        max_entry = min(row + 1, len(mu))
        for length in range(limit - start, -1, -1):
            if length == 0:
                fill(row + 1, start, {}, shape + [start], placed)
                continue
            entries = [0] * length

            def place(pos: int, cap: int):
                # pos runs right to left; entries weakly decrease leftwards
                if pos < 0:
                    row_entries = {start + j: entries[j] for j in range(length)}
                    fill(row + 1, start + length, row_entries, shape + [start + length], placed + length)
                    return
                col = start + pos
                lo = prev_entries.get(col, 0) + 1
                for e in range(min(cap, max_entry), lo - 1, -1):
                    if content[e] >= mu[e - 1]:
                        continue
                    if e > 1 and content[e] + 1 > content[e - 1]:
                        continue
                    content[e] += 1
                    entries[pos] = e
                    place(pos - 1, e)
                    content[e] -= 1

            place(length - 1, max_entry)

    fill(0, 0, {}, [], 0)
    return tuple(sorted(counts.items(), reverse=True))


def lr_coefficients(lam: Partition, mu: Partition, max_rows: int = None, max_cols: int = None) -> Dict[Partition, int]:
    """Littlewood-Richardson coefficients c^nu_{lam,mu} as ``{nu: c}``.

    Computed by enumerating LR skew tableaux of shape nu/lam and content mu.
    ``max_rows``/``max_cols`` prune to partitions fitting that bound, which is
    how quotient multiplication uses it.
    """
    return dict(_lr(tuple(lam), tuple(mu), max_rows, max_cols))
