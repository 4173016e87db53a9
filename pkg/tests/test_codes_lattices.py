import math

import pytest

from sweepdecode.codes._distance import brute_force_distances
from sweepdecode.codes.graphs import (
    code_distances,
    dual_patch,
    surface_code_from_graph,
    validate_patch,
)
from sweepdecode.codes.lattices import (
    DUAL_OF_PRIMAL,
    cut_window,
    regular_lattice,
    smallest_patch,
    template,
)
from sweepdecode.pauli import pauli_to_string, validate_code


def swap_xz(s):
    return s.translate(str.maketrans("XZ", "ZX"))


class TestTemplates:
    def test_per_cell_counts(self):
        expect = {
            "square": (1, 2, 1),
            "triangular": (1, 3, 2),
            "kagome": (3, 6, 3),
            "trunc_hex": (6, 9, 3),
        }
        for name, (nv, ne, nf) in expect.items():
            t = template(name)
            assert (len(t.sites), len(t.edges), len(t.faces)) == (nv, ne, nf)

    def test_unknown_template_rejected(self):
        with pytest.raises(ValueError):
            template("penrose")

    def test_cut_window_square_block(self):
        g = cut_window(template("square"), 0, 0, 2, 1)
        assert g is not None
        validate_patch(g, geometry=True)
        assert g.num_vertices == 6
        assert len(g.edges) == 7
        assert len(g.faces) == 2


class TestSmallestPatch:
    def test_square_sizes_match_standard_patch(self):
        for d in (2, 3, 4, 5):
            code = surface_code_from_graph(smallest_patch("square", d))
            assert code.n == d * d + (d - 1) * (d - 1)
            assert len(code.checks) == code.n - 1

    def test_square_d3_has_13_qubits(self):
        code = surface_code_from_graph(smallest_patch("square", 3))
        assert code.n == 13

    def test_distances_certified_small(self):
        for family, d in [
            ("square", 2), ("square", 3),
            ("triangular", 2), ("triangular", 3),
            ("kagome", 2), ("kagome", 3),
        ]:
            g = smallest_patch(family, d)
            assert code_distances(g) == (d, d)
            code = surface_code_from_graph(g, family=family)
            assert brute_force_distances(code, d) == (d, d)
            validate_code(code)

    def test_kagome_d2_brute_force(self):
        code = surface_code_from_graph(smallest_patch("kagome", 2))
        assert brute_force_distances(code, 2) == (2, 2)

    def test_triangular_even_distance_patch(self):
        g = smallest_patch("triangular", 4)
        assert code_distances(g) == (4, 4)
        code = surface_code_from_graph(g)
        assert brute_force_distances(code, 4) == (4, 4)

    def test_rejects_distance_below_two(self):
        with pytest.raises(ValueError):
            smallest_patch("square", 1)

    @pytest.mark.slow
    def test_trunc_hex_d3(self):
        g = smallest_patch("trunc_hex", 3)
        validate_patch(g, geometry=True)
        assert code_distances(g) == (3, 3)
        code = surface_code_from_graph(g, family="trunc_hex")
        assert brute_force_distances(code, 3) == (3, 3)

    def test_geometry_of_small_patches(self):
        for family in ("square", "triangular", "kagome"):
            validate_patch(smallest_patch(family, 3), geometry=True)


class TestRegularLattice:
    def test_unsupported_family(self):
        with pytest.raises(ValueError):
            regular_lattice("cairo", 3)

    def test_dual_families_dualize_the_primal(self):
        for primal, dual in DUAL_OF_PRIMAL.items():
            if primal == "trunc_hex":
                continue  # slow; covered separately
            gp = regular_lattice(primal, 3)
            gd = regular_lattice(dual, 3)
            validate_patch(gd)
            primal_code = surface_code_from_graph(gp)
            dual_code = surface_code_from_graph(gd)
            assert dual_code.n == primal_code.n
            assert sorted(pauli_to_string(c) for c in dual_code.checks) \
                == sorted(swap_xz(pauli_to_string(c))
                          for c in primal_code.checks)

    def test_hexagonal_is_triangular_swapped(self):
        tri = surface_code_from_graph(regular_lattice("triangular", 3))
        hexa = surface_code_from_graph(regular_lattice("hexagonal", 3))
        assert sorted(pauli_to_string(c) for c in hexa.checks) \
            == sorted(swap_xz(pauli_to_string(c)) for c in tri.checks)
        assert brute_force_distances(hexa, 3) == (3, 3)
