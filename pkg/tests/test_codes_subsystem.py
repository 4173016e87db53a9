import numpy as np
import pytest

from sweepdecode.codes._distance import brute_force_distances
from sweepdecode.codes.graphs import validate_patch
from sweepdecode.codes.subsystem import (
    dressed_distances,
    subsystem_code,
    subsystem_patch,
)
from sweepdecode.pauli import (
    commutes,
    format_code,
    gf2_rref,
    multiply,
    parse_code,
    stabiliser_basis,
    validate_code,
    weight,
)


def gauge_rank(code):
    rows = np.zeros((code.num_checks, 2 * code.n), dtype=np.uint8)
    for i, c in enumerate(code.checks):
        rows[i, : code.n] = c.x
        rows[i, code.n :] = c.z
    _, pivots, _ = gf2_rref(rows)
    return len(pivots)


class TestPatch:
    def test_windows_certified(self):
        for d in (2, 3, 4, 5):
            g = subsystem_patch(d)
            validate_patch(g)
            assert dressed_distances(g) == (d, d)

    def test_rejects_distance_below_two(self):
        with pytest.raises(ValueError):
            subsystem_patch(1)


class TestCode:
    def test_d3_parameters(self):
        code = subsystem_code(3)
        assert code.n == 19
        assert code.is_subsystem
        assert code.claimed_distance == 3
        rank = gauge_rank(code)
        s = len(stabiliser_basis(code))
        assert s == 16
        assert (rank - s) % 2 == 0
        assert (rank - s) // 2 == 2  # gauge qubits
        assert code.n - (rank + s) // 2 == 1  # one logical qubit

    def test_every_generator_is_a_triangle_or_truncation(self):
        for d in (2, 3, 4):
            code = subsystem_code(d)
            for c in code.checks:
                assert not (c.x.any() and c.z.any())
                if c.z.any():
                    assert weight(c) in (2, 3)
                else:
                    assert 2 <= weight(c) <= 6
            interior = [c for c in code.checks
                        if c.x.any() and weight(c) == 3]
            assert interior, "no split fans delivered"

    def test_gauge_group_is_noncommuting(self):
        code = subsystem_code(2)
        pairs = [(a, b)
                 for i, a in enumerate(code.checks)
                 for b in code.checks[i + 1:]
                 if not commutes(a, b)]
        assert pairs

    def test_paired_triangles_are_stabilisers(self):
        code = subsystem_code(3)
        fans = [c for c in code.checks if c.x.any() and weight(c) == 3]
        faces = [c for c in code.checks if c.z.any()]
        found_star = found_bowtie = 0
        for i, a in enumerate(fans):
            for b in fans[i + 1:]:
                prod = multiply(a, b)
                if weight(prod) == 6 and all(
                        commutes(prod, c) for c in code.checks):
                    found_star += 1
        for fan in fans:
            odd = [f for f in faces if not commutes(fan, f)]
            if not odd:
                continue
            assert len(odd) == 2  # the pair facing each other across the vertex
            prod = multiply(odd[0], odd[1])
            assert all(commutes(prod, c) for c in code.checks)
            found_bowtie += 1
        assert found_star >= 2
        assert found_bowtie >= 2

    def test_dressed_distance_brute_force(self):
        for d in (2, 3):
            code = subsystem_code(d)
            assert brute_force_distances(code, d, dressed=True) == (d, d)

    def test_bare_distances_do_not_undershoot(self):
        code = subsystem_code(3)
        bare = brute_force_distances(code, 2)
        assert bare == (None, None)

    @pytest.mark.slow
    def test_dressed_distance_brute_force_d4(self):
        code = subsystem_code(4)
        assert brute_force_distances(code, 4, dressed=True) == (4, 4)

    def test_logicals_commute_with_every_generator(self):
        code = subsystem_code(3)
        for c in code.checks:
            assert commutes(code.logical_x, c)
            assert commutes(code.logical_z, c)
        assert not commutes(code.logical_x, code.logical_z)

    def test_distinct_fan_coordinates(self):
        code = subsystem_code(3)
        assert len(set(code.check_coords)) == code.num_checks

    def test_round_trip(self):
        code = subsystem_code(2)
        again = parse_code(format_code(code))
        assert again.is_subsystem
        assert again.n == code.n
        assert format_code(again) == format_code(code)

    def test_deterministic(self):
        a = format_code(subsystem_code(3))
        subsystem_patch.cache_clear()
        b = format_code(subsystem_code(3))
        assert a == b

    def test_validate_accepts(self):
        validate_code(subsystem_code(4))
