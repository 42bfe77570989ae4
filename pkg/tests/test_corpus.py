import pytest

from adrkit.corpus import (
    GenerationExhaustedError,
    RandomLimits,
    builtin_entries,
    entry_ids,
    get_entry,
    nakayama_selfinjective,
    preprojective_a,
    random_admissible,
    run_invariant_suite,
    truncated_path_algebra,
    linear_quiver,
)
from adrkit.presentation import Arrow, Quiver
from adrkit.repmod import (
    injective,
    is_rigid,
    is_selfinjective,
    is_uniserial,
    loewy_length,
    projective,
)
from adrkit.theorems import check_theorem_a, ringel_selfdual_verdict


def test_builtin_ids_cover_families():
    ids = entry_ids()
    assert "nakayama-2-2" in ids
    assert "trunc-a2-2" in ids
    assert "preproj-a-2" in ids
    assert len(ids) == len(set(ids))


def test_builtin_entries_rebuild_identically():
    for entry in builtin_entries():
        again = get_entry(entry.id)
        assert again.presentation == entry.presentation


def test_expected_fixtures_match_recomputation():
    for entry in builtin_entries():
        if not entry.expected:
            continue
        alg = entry.build()
        exp = entry.expected
        if "dim" in exp:
            assert alg.dim == exp["dim"], entry.id
        if "loewy_length" in exp:
            assert alg.loewy_length == exp["loewy_length"], entry.id
        if "theorem_a" in exp:
            assert check_theorem_a(alg).holds == exp["theorem_a"], entry.id
        if "theorem_c" in exp:
            assert ringel_selfdual_verdict(alg).holds == exp["theorem_c"], entry.id
        if "rigid_p1" in exp:
            assert is_rigid(projective(alg, 1)) == exp["rigid_p1"], entry.id


def test_nakayama_generator_structure():
    entry = nakayama_selfinjective(3, 4)
    alg = entry.build()
    assert alg.dim == 12
    for i in range(1, 4):
        assert is_uniserial(projective(alg, i))
        assert loewy_length(projective(alg, i)) == 4
        assert is_uniserial(injective(alg, i))
    assert ringel_selfdual_verdict(alg).holds


def test_nakayama_generator_rejects_bad_params():
    with pytest.raises(ValueError):
        nakayama_selfinjective(0, 3)
    with pytest.raises(ValueError):
        nakayama_selfinjective(2, 1)


def test_truncated_path_algebra_a2():
    entry = truncated_path_algebra(linear_quiver(2), 2)
    alg = entry.build()
    assert alg.dim == 3
    assert loewy_length(projective(alg, 1)) == 2
    assert loewy_length(injective(alg, 1)) == 1


def test_truncated_a3_lengths():
    alg = truncated_path_algebra(linear_quiver(3), 3).build()
    assert loewy_length(projective(alg, 1)) == 3
    assert loewy_length(injective(alg, 1)) == 1


def test_truncated_two_loops_rigid():
    alg = get_entry("trunc-twoloop-2").build()
    assert all(is_rigid(projective(alg, i)) for i in range(1, alg.n + 1))


def test_truncated_acyclic_never_selfinjective():
    # acyclic quiver with at least one arrow, truncation beyond the longest
    # path: a selfinjective algebra here would have to be semisimple
    import random

    from adrkit.presentation import enumerate_paths

    cases = [
        (linear_quiver(2), 2),
        (linear_quiver(3), 3),
        (
            Quiver(
                ("1", "2", "3"),
                (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "1", "3")),
            ),
            3,
        ),
    ]
    rng = random.Random(17)
    while len(cases) < 15:
        n = rng.randint(2, 4)
        arrows = []
        for t in range(rng.randint(1, 4)):
            u, v = rng.randint(1, n), rng.randint(1, n)
            if u < v:
                arrows.append(Arrow(f"a{t}", str(u), str(v)))
        if not arrows:
            continue
        q = Quiver(tuple(str(i) for i in range(1, n + 1)), tuple(arrows))
        longest = max(
            d for d, layer in enumerate(enumerate_paths(q, n + 1)) if layer
        )
        cases.append((q, longest + 1))
    for q, big_l in cases:
        alg = truncated_path_algebra(q, big_l).build()
        assert not is_selfinjective(alg)


def test_preprojective_fixture_properties():
    for n in (2, 3):
        alg = preprojective_a(n).build()
        hyp_pass = check_theorem_a(alg).holds
        assert hyp_pass
        lengths_p = [loewy_length(projective(alg, i)) for i in range(1, n + 1)]
        lengths_q = [loewy_length(injective(alg, i)) for i in range(1, n + 1)]
        assert lengths_p == lengths_q == [n] * n


def test_random_admissible_deterministic():
    a = random_admissible(42)
    b = random_admissible(42)
    assert a.presentation == b.presentation
    assert a.build().dim == b.build().dim


def test_random_admissible_zero_relations_limit():
    limits = RandomLimits(max_relations=0)
    for seed in range(10):
        entry = random_admissible(seed, limits)
        for rel in entry.presentation.relations:
            # only the truncation monomials of full cap length remain
            assert len(rel.terms) == 1
            assert len(rel.terms[0][1]) == entry.presentation.cap


def test_random_admissible_exhaustion():
    with pytest.raises(GenerationExhaustedError):
        random_admissible(0, RandomLimits(retries=0))


def test_invariant_suite_clean_on_random_sample():
    for seed in range(40):
        entry = random_admissible(2000 + seed)
        fails = run_invariant_suite(entry.build())
        assert fails == [], f"seed {2000 + seed}: {fails}"


def test_invariant_suite_clean_on_builtins():
    for entry in builtin_entries():
        fails = run_invariant_suite(entry.build())
        assert fails == [], f"{entry.id}: {fails}"
