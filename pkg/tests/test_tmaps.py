"""T_p matrices: definition, functoriality, ranks, projections."""

from __future__ import annotations

from fractions import Fraction
from random import Random

import pytest

from easyqg import (
    ColoredPartition,
    ExactMatrix,
    IndexOutOfRange,
    MissingSubprojectives,
    NotProjective,
    ShapeMismatch,
    SizeOverflow,
    WHITE,
    check_functoriality,
    compose,
    cp1_witness_check,
    delta_p,
    family_category,
    four_block_wwbb,
    generate_category,
    identity,
    identity_power,
    intertwiner_dim,
    involute,
    lower_pair,
    matrix_rank,
    one_block,
    projective_projection,
    singleton,
    t_map,
    tensor,
)
from easyqg.tmaps import rank_of_vectors

import helpers


# -- delta and t_map ----------------------------------------------------------


def test_delta_examples():
    assert delta_p(identity(), (3,), (3,), 3) == 1
    assert delta_p(identity(), (1,), (3,), 3) == 0
    assert delta_p(lower_pair(WHITE, WHITE), (), (1, 2), 2) == 0
    assert delta_p(lower_pair(WHITE, WHITE), (), (2, 2), 2) == 1
    assert delta_p(one_block(0, 4, "", "wwww"), (), (2, 2, 2, 2), 3) == 1
    with pytest.raises(IndexOutOfRange):
        delta_p(identity(), (4,), (1,), 3)
    with pytest.raises(ShapeMismatch):
        delta_p(identity(), (1, 1), (1,), 3)


def test_t_map_identity():
    for n in (1, 2, 4):
        assert t_map(identity(), n) == ExactMatrix.identity(n)


def test_t_map_cup_vector():
    m = t_map(lower_pair(WHITE, WHITE), 2)
    assert m.rows == 4 and m.cols == 1
    assert m.entries == {(0, 0): 1, (3, 0): 1}  # e1(x)e1 + e2(x)e2


def test_t_map_ignores_colors():
    rng = Random(7)
    sample = family_category("S+", 5)
    members = list(sample.iter_members())
    for p in rng.sample(members, 80):
        assert t_map(p, 2) == t_map(p.uncolored(), 2)


def test_t_map_matches_delta_entrywise():
    p = ColoredPartition(1, 2, "w", "ww", [(1, 3), (2,)])
    n = 3
    m = t_map(p, n)
    import itertools

    for i in itertools.product(range(1, n + 1), repeat=p.k):
        for j in itertools.product(range(1, n + 1), repeat=p.l):
            row = 0
            for x in j:
                row = row * n + x - 1
            col = 0
            for x in i:
                col = col * n + x - 1
            assert m.entries.get((row, col), 0) == delta_p(p, i, j, n)


def test_size_overflow():
    with pytest.raises(SizeOverflow):
        t_map(identity_power(4), 10, cap=10**3)


def test_size_cap_env_override(monkeypatch):
    monkeypatch.setenv("EASYQG_MAX_TMAP_ENTRIES", "5")
    with pytest.raises(SizeOverflow):
        t_map(identity_power(2), 3)
    monkeypatch.setenv("EASYQG_MAX_TMAP_ENTRIES", "100")
    assert t_map(identity_power(2), 3).rows == 9


# -- functoriality -------------------------------------------------------------


def test_cap_cup_loop_factor():
    cup = lower_pair(WHITE, WHITE)
    cap = involute(cup)
    n = 2
    prod = t_map(cap, n) @ t_map(cup, n)
    qp, removed = compose(cap, cup)
    assert removed == 1
    assert prod == t_map(qp, n).scale(n**removed)
    assert check_functoriality(cup, cap, n)


def test_transpose_is_involution_image():
    rng = Random(8)
    sample = family_category("S+", 6)
    members = list(sample.iter_members(all_white=True))
    for p in rng.sample(members, 60):
        assert t_map(involute(p), 2) == t_map(p, 2).transpose()


def test_functoriality_small_exhaustive():
    structures = helpers.all_nc_structures(4)
    for n in (2, 3):
        for p in structures:
            for q in structures:
                if p.points + q.points <= 4:
                    assert check_functoriality(p, q, n)


def test_functoriality_propagates_color_mismatch():
    from easyqg import ColorMismatch

    cup_wb = lower_pair(WHITE, "b")
    cap_ww = involute(lower_pair(WHITE, WHITE))
    with pytest.raises(ColorMismatch):
        check_functoriality(cup_wb, cap_ww, 2)


def test_intertwiner_dim_bound_guard():
    sample = family_category("O+", 4)
    with pytest.raises(ShapeMismatch):
        intertwiner_dim(sample, 0, 6, 2)


# -- intertwiner dimensions ----------------------------------------------------


def test_o_plus_hom_spaces():
    sample = family_category("O+", 8)
    assert intertwiner_dim(sample, 0, 2, 2)[0] == 1
    assert intertwiner_dim(sample, 0, 4, 2)[0] == 2
    # odd point counts carry no all-white pairings at all
    assert intertwiner_dim(sample, 0, 3, 2)[0] == 0


def test_s_plus_hom_1_1():
    sample = family_category("S+", 4)
    dim, basis = intertwiner_dim(sample, 1, 1, 4)
    assert dim == 2
    assert identity() in basis
    assert ColoredPartition(1, 1, "w", "w", [(1,), (2,)]) in basis


def test_rank_matches_naive_oracle():
    rng = Random(9)
    for _ in range(30):
        dim = rng.randint(1, 6)
        vecs = [
            {i: rng.randint(-3, 3) for i in range(dim)} for _ in range(rng.randint(1, 6))
        ]
        vecs = [{k: v for k, v in vec.items() if v} for vec in vecs]
        assert rank_of_vectors(vecs) == helpers.naive_rank(vecs, dim)


# -- projections ---------------------------------------------------------------


def test_projection_of_identity_is_identity():
    sample = family_category("O+", 4)
    rep = projective_projection(identity(), sample, 3)
    assert rep.P_matrix == ExactMatrix.identity(3)
    assert rep.R_matrix.is_zero()
    assert rep.sub_projectives_used == []


def test_projection_rank_arithmetic_splus():
    sample = family_category("S+", 4)
    n = 4
    rep = projective_projection(identity_power(2), sample, n)
    assert rep.verify()
    rank_t = matrix_rank(t_map(identity_power(2), n))
    assert matrix_rank(rep.P_matrix) + matrix_rank(rep.R_matrix) == rank_t
    # the new block of u (x) u for S_n^+ is the SO(3) label u_4, dim 5 at n=4
    assert matrix_rank(rep.P_matrix) == 5


def test_projection_errors():
    sample = family_category("S+", 4)
    with pytest.raises(NotProjective):
        projective_projection(lower_pair(WHITE, WHITE), sample, 2)
    capped = generate_category([singleton(WHITE)], 4, max_members=5)
    assert not capped.saturated
    with pytest.raises(MissingSubprojectives):
        projective_projection(identity(), capped, 2)


def test_projection_word_dims_at_n4():
    """Ranks of P_p for H+ s=2 match the word-family dimension function."""
    from easyqg.fusion import get_ring

    sample = family_category("H+", 4, s=2)
    ring = get_ring("H+", 2)
    n = 4
    rep_id = projective_projection(identity_power(2), sample, n)
    rep_fb = projective_projection(one_block(2, 2, "ww", "ww"), sample, n)
    assert rep_id.verify() and rep_fb.verify()
    assert matrix_rank(rep_id.P_matrix) == ring.dim((1, 1), n)
    assert matrix_rank(rep_fb.P_matrix) == ring.dim((2,), n)


def test_cp1_witness_examples():
    o_sample = family_category("O+", 6)
    assert cp1_witness_check(
        identity(), identity(), lower_pair(WHITE, WHITE), 2, o_sample
    )
    nested = ColoredPartition(0, 4, "", "wwww", [(1, 4), (2, 3)])
    assert cp1_witness_check(
        identity_power(2), identity_power(2), nested, 2, o_sample
    )
    with pytest.raises(ShapeMismatch):
        cp1_witness_check(identity(), identity(), nested, 2, o_sample)


def test_zero_projection_gives_false():
    # a zero factor kills the product even with a valid witness r
    sample = family_category("O+", 6)
    rep = projective_projection(identity(), sample, 2)
    zero = rep.P_matrix - rep.P_matrix
    cup = t_map(lower_pair(WHITE, WHITE), 2)
    assert (zero.kron(rep.P_matrix) @ cup).is_zero()


# -- serialization ---------------------------------------------------------------


def test_matrix_json_round_trip():
    m = ExactMatrix(2, 3, {(0, 1): Fraction(3, 2), (1, 2): -2})
    data = m.to_json_dict()
    assert data["entries"] == [[0, 1, "3/2"], [1, 2, "-2"]]
    assert ExactMatrix.from_json_dict(data) == m
