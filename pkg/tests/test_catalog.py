import json
from fractions import Fraction
from pathlib import Path

import pytest

from lierigid.catalog import NAMES, CatalogError, build, run
from lierigid.qlinalg import QMatrix
from lierigid.report import SCHEMA, Status, render

DERIVED = json.loads((Path(__file__).parent / "fixtures" / "derived.json").read_text())


@pytest.fixture(scope="module")
def reports():
    return {name: run(name) for name in NAMES}


def fixture_key(entry):
    if entry.name == "adjoint-sln":
        return f"adjoint-sln(n={entry.params['n']})"
    return entry.name


def test_names():
    assert list(NAMES) == sorted(NAMES)
    assert {"familia1", "codigoM2", "sl2-sym4", "exceptional-p3", "aff-so5-quadric", "adjoint-sln"} == set(NAMES)


@pytest.mark.parametrize("name", NAMES)
def test_all_claims_pass(reports, name):
    rep = reports[name]
    d = rep.as_dict()
    assert d["schema"] == SCHEMA
    bad = [(c.name, c.expected, c.computed) for c in rep.claims if c.status is not Status.PASS]
    assert not bad
    assert d["summary"]["literature_ok"]
    assert any(c.provenance == "literature" for c in rep.claims)


@pytest.mark.parametrize("name,params", [(n, {}) for n in NAMES] + [("adjoint-sln", {"n": 2})])
def test_derived_values_match_oracle_fixtures(name, params):
    entry = build(name, **params)
    for key, val in DERIVED.get(fixture_key(entry), {}).items():
        if key == "invariant_form":
            assert entry.quadric.B == QMatrix([[Fraction(x) for x in r] for r in val])
            continue
        assert entry.expected[key].value == val, key


def test_every_derived_number_has_a_fixture():
    for name in NAMES:
        entry = build(name)
        fx = DERIVED.get(fixture_key(entry), {})
        for key, exp in entry.expected.items():
            if exp.provenance == "derived" and not isinstance(exp.value, bool) or key == "f_preserves_hyperplane":
                assert key in fx, (name, key)


def test_build_errors():
    with pytest.raises(CatalogError):
        build("nonexistent")
    with pytest.raises(CatalogError):
        build("familia1", n=4)
    with pytest.raises(CatalogError):
        build("sl2-sym4", n=3)


def test_familia1_fiber_t0():
    rep = run("familia1", n=5, t=0)
    claims = {c.name: c for c in rep.claims}
    assert claims["fiber_t0_closed"].passed
    assert not rep.failed("literature")


@pytest.mark.parametrize("n", [5, 6, 7])
def test_familia1_larger_n_closed(n):
    rep = run("familia1", n=n, t=2)
    names = {c.name: c for c in rep.claims}
    assert names["family_closed"].passed and names["bracket_table"].passed


def test_adjoint_n2():
    rep = run("adjoint-sln", n=2)
    assert {c.name: c.computed for c in rep.claims}["kernel_dims"] == [1]
    assert not rep.failed()


def test_adjoint_n4_skips_cohomology():
    rep = run("adjoint-sln", n=4, samples=3)
    names = {c.name: c for c in rep.claims}
    assert names["kernel_dims"].computed == [3]
    assert "dim_Z1" not in names


def test_reports_deterministic():
    a = render(run("aff-so5-quadric", seed=4).as_dict())
    b = render(run("aff-so5-quadric", seed=4).as_dict())
    assert a == b
    assert "timing" not in a
    assert "timing" in run("aff-so5-quadric", timing=True).as_dict()
