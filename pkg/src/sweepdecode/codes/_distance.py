"""Weight-limited brute-force code distances.

CSS codes admit single-type minimum-weight logicals, so the search
enumerates supports of one Pauli type with integer bitmask parity
tests.  Exponential in the weight limit; meant for small instances.
"""

from itertools import combinations

from ..pauli import CodeDefinition, stabiliser_basis


def _mask(bits) -> int:
    m = 0
    for i, b in enumerate(bits):
        if b:
            m |= 1 << i
    return m


def min_single_type_weight(n, even_masks, odd_mask, limit):
    """Smallest support size with even overlap against every mask in
    even_masks and odd overlap against odd_mask, or None."""
    even_masks = [m for m in set(even_masks) if m]
    for w in range(1, limit + 1):
        for support in combinations(range(n), w):
            s = 0
            for q in support:
                s |= 1 << q
            if (s & odd_mask).bit_count() % 2 == 0:
                continue
            if all((s & m).bit_count() % 2 == 0 for m in even_masks):
                return w
    return None


def brute_force_distances(code: CodeDefinition, limit, *,
                          dressed=False) -> tuple:
    """(X distance, Z distance) up to the weight limit; None when above.

    Requires CSS checks (each check a single Pauli type).  For
    subsystem codes the default counts bare logicals (commuting with
    every check); dressed=True quotients by the gauge group instead,
    constraining candidates only by the stabiliser centre.
    """
    for c in code.checks:
        if c.x.any() and c.z.any():
            raise ValueError("brute-force distances require CSS checks")
    constraints = code.checks
    if dressed:
        if not code.is_subsystem:
            raise ValueError("dressed distance applies to subsystem codes")
        constraints = stabiliser_basis(code)
    x_even = [_mask(c.z) for c in constraints]
    z_even = [_mask(c.x) for c in constraints]
    dx = min_single_type_weight(
        code.n, x_even, _mask(code.logical_z.z), limit)
    dz = min_single_type_weight(
        code.n, z_even, _mask(code.logical_x.x), limit)
    return dx, dz
