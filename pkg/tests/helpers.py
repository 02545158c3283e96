"""Shared fixture builders and seeded generators for the tests.

Every generator takes an explicit rng; nothing here touches global state.
"""

from __future__ import annotations

from pathlib import Path

from bandlink import BandSpec, CombinatorialMap, derived_genus
from bandlink.errors import BandlinkError

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def circle_map(n: int) -> CombinatorialMap:
    """Circle with n 2-valent vertices; vertex i joins edges i-1 and i."""
    if n == 1:
        return CombinatorialMap.from_cycles(2, sigma="(1 2)", alpha="(1 2)")
    darts = 2 * n
    alpha = [0] * darts
    sigma = [0] * darts
    for i in range(1, n + 1):
        a, b = 2 * i - 1, 2 * i
        alpha[a - 1], alpha[b - 1] = b, a
        prev = 2 * (i - 1) if i > 1 else darts
        sigma[a - 1], sigma[prev - 1] = prev, a
    return CombinatorialMap(darts, tuple(alpha), tuple(sigma), 0)


def chain_spec(n: int) -> BandSpec:
    """Closed n-chain over the unknot: n clasps, no extra twists."""
    return BandSpec(circle_map(n), (0,) * n, ((0,),) * n)


def random_four_valent(rng, h: int, want_genus: int = 0) -> CombinatorialMap:
    """Connected map with h 4-valent vertices on a surface of the wanted genus."""
    while True:
        darts = 4 * h
        sigma = []
        for v in range(h):
            first = 4 * v
            rot = [first + 2, first + 3, first + 4]
            rng.shuffle(rot)
            cyc = [first + 1] + rot
            images = {cyc[i]: cyc[(i + 1) % 4] for i in range(4)}
            sigma.extend(images[d] for d in sorted(images))
        pool = list(range(1, darts + 1))
        rng.shuffle(pool)
        alpha = [0] * darts
        for i in range(0, darts, 2):
            a, b = pool[i], pool[i + 1]
            alpha[a - 1], alpha[b - 1] = b, a
        try:
            m = CombinatorialMap(darts, tuple(alpha), tuple(sigma), want_genus)
        except BandlinkError:
            continue
        if m.is_connected() and derived_genus(m) == want_genus:
            return m


def random_spec(rng, cap: int = 18, want_genus: int = 0) -> BandSpec:
    """Band spec with 0-2 four-valent base vertices and |V(D_L)| <= cap.

    The budget below equals cap minus the smallest diagram the base admits
    (all k = 1, no twists), so every k = 2 upgrade costs 2 and every twist
    costs 1 against it.
    """
    h = rng.choice([0, 1, 2]) if want_genus == 0 else rng.choice([1, 2])
    base = circle_map(1) if h == 0 else random_four_valent(rng, h, want_genus)
    e = base.edge_count
    two_valent = base.vertex_count if h == 0 else 0
    budget = cap - 4 * h - 2 * (e + two_valent)
    subs = []
    for _ in range(e):
        k = 2 if budget >= 2 and rng.random() < 0.4 else 1
        if k == 2:
            budget -= 2
        subs.append(k)
    twists = []
    for k in subs:
        row = []
        for _ in range(k + 1):
            t = min(rng.choice([0, 0, 1, 2, 3]), budget)
            budget -= t
            row.append(t)
        twists.append(tuple(row))
    return BandSpec(base, tuple(subs), tuple(twists))


def random_map(rng, max_edges: int = 10) -> CombinatorialMap:
    """Connected map of any valence profile, declared genus set to derived."""
    while True:
        e = rng.randint(1, max_edges)
        darts = 2 * e
        pool = list(range(1, darts + 1))
        rng.shuffle(pool)
        alpha = [0] * darts
        for i in range(0, darts, 2):
            a, b = pool[i], pool[i + 1]
            alpha[a - 1], alpha[b - 1] = b, a
        sigma = list(range(1, darts + 1))
        rng.shuffle(sigma)
        m = CombinatorialMap(darts, tuple(alpha), tuple(sigma), 0)
        if not m.is_connected():
            continue
        g = derived_genus(m)
        return CombinatorialMap(darts, tuple(alpha), tuple(sigma), g)


def relabel(rng, m: CombinatorialMap) -> CombinatorialMap:
    """Isomorphic copy of m under a random dart relabeling."""
    perm = list(range(1, m.dart_count + 1))
    rng.shuffle(perm)
    alpha = [0] * m.dart_count
    sigma = [0] * m.dart_count
    for d in range(1, m.dart_count + 1):
        alpha[perm[d - 1] - 1] = perm[m.alpha_of(d) - 1]
        sigma[perm[d - 1] - 1] = perm[m.sigma_of(d) - 1]
    return CombinatorialMap(
        m.dart_count, tuple(alpha), tuple(sigma), m.declared_genus
    )


def sequential_close(rng, faces_list, manual) -> set[int]:
    """One-vertex-per-step reference closure with a random schedule."""
    colored = set(manual)
    while True:
        candidates = set()
        for face in faces_list:
            left = [v for v in face.distinct_vertices if v not in colored]
            if len(left) == 1:
                candidates.add(left[0])
        if not candidates:
            return colored
        colored.add(rng.choice(sorted(candidates)))
