import json

import numpy as np
import pytest

from fusionframes import (
    ComplexLineSet,
    DimensionError,
    FrameFormatError,
    GroupTooLarge,
    MatrixGroup,
    NotOrthogonal,
    SizeGuardExceeded,
    UnknownName,
    catalog,
    catalog_names,
    certify_tight,
    close_group,
    extend,
    haar_random,
    invariance_check,
    load_generators,
    load_line_set,
    make_subspace,
    mub_lines_c2,
    orbit_frame,
    projector,
    realify,
    save_generators,
    save_line_set,
    subspaces_equal,
    tightness_constant,
    weyl_a2_group,
)
from fusionframes.constructions import _reflection


def rotation(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


# ---------------------------------------------------------------------------
# groups

def test_close_group_orders():
    assert len(close_group([rotation(2 * np.pi / 3)])) == 3
    assert len(weyl_a2_group()) == 6
    assert len(close_group([np.eye(2)])) == 1


def test_close_group_closure_property():
    g = weyl_a2_group()
    assert np.array_equal(g.elements[0], np.eye(2))
    for a in g.elements:
        for b in g.elements:
            prod = a @ b
            assert any(np.abs(prod - e).max() <= 1e-8 for e in g.elements)


def test_close_group_errors():
    with pytest.raises(NotOrthogonal):
        close_group([np.array([[1.0, 1.0], [0.0, 1.0]])])
    with pytest.raises(GroupTooLarge):
        close_group([rotation(2 * np.pi / 360)], max_order=100)
    with pytest.raises(DimensionError):
        close_group([])


def test_invariance_check_examples():
    assert invariance_check(weyl_a2_group(), 2).invariant_dim == 1
    assert invariance_check(weyl_a2_group(), 2).passes
    assert not invariance_check(weyl_a2_group(), 3).passes

    refl = close_group([_reflection(0.0)])
    rep = invariance_check(refl, 1)
    assert rep.invariant_dim == 2 and not rep.passes

    triv = close_group([np.eye(2)])
    rep = invariance_check(triv, 1)
    assert rep.invariant_dim == 3 and not rep.passes

    big = MatrixGroup(12, (np.eye(12),), (np.eye(12),))
    with pytest.raises(SizeGuardExceeded):
        invariance_check(big, 5)


def test_orbit_frame(rng):
    w = weyl_a2_group()
    x_axis = make_subspace(np.array([[1.0], [0.0]]))
    orb = orbit_frame(w, x_axis)
    assert len(orb) == 3
    merc = catalog("mercedes")
    for s in orb.subspaces:
        assert any(subspaces_equal(s, t) for t in merc.subspaces)

    refl = close_group([_reflection(0.0)])
    assert len(orbit_frame(refl, x_axis)) == 1   # seed is group-invariant

    with pytest.raises(DimensionError):
        orbit_frame(w, haar_random(3, 1, rng))


def test_orbit_theorem_round_trip(rng):
    w = weyl_a2_group()
    for _ in range(5):
        seed = haar_random(2, 1, rng)
        assert certify_tight(orbit_frame(w, seed), 2).tight

    refl = close_group([_reflection(0.0)])
    failures = sum(
        not certify_tight(orbit_frame(refl, haar_random(2, 1, rng)), 1).tight
        for _ in range(50))
    assert failures >= 1


# ---------------------------------------------------------------------------
# extension

def test_extend_mercedes_into_mub(mercedes, mub_planes):
    big = extend(mercedes, mub_planes)
    assert big.ambient_dim == 4 and len(big) == 18
    assert set(big.dims) == {1}
    cert = certify_tight(big, 2)
    assert cert.tight
    product = tightness_constant(mercedes, 2) * tightness_constant(mub_planes, 2)
    assert cert.target_A == pytest.approx(product, abs=1e-9)
    assert np.allclose(big.weights, 1.0)         # unit weights multiply to 1


def test_extend_refinement_into_lines(mub_planes):
    ortho = catalog("cross-polytope-lines(2)")
    lines = extend(ortho, mub_planes)
    assert len(lines) == 12 and set(lines.dims) == {1}
    cert = certify_tight(lines, 1)
    assert cert.tight
    assert cert.target_A == pytest.approx(
        tightness_constant(ortho, 1) * tightness_constant(mub_planes, 1),
        abs=1e-9)


def test_extend_dimension_error(mercedes):
    with pytest.raises(DimensionError):
        extend(mub := catalog("mub-planes-r4"), mercedes)  # noqa: F841


# ---------------------------------------------------------------------------
# realification

def test_realify_mub(mub_planes):
    lines = mub_lines_c2()
    f = realify(lines)
    assert f.ambient_dim == 4 and len(f) == 6 and set(f.dims) == {2}
    assert certify_tight(f, 2).tight
    for a, b in zip(f.subspaces, mub_planes.subspaces):
        assert subspaces_equal(a, b)


def test_realify_projection_norm_identity(rng):
    lines = mub_lines_c2()
    f = realify(lines)
    zs = lines.as_complex()
    for _ in range(100):
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        x /= np.sqrt(float((x.conj() * x).real.sum()))
        kx = np.empty(4)
        kx[0::2], kx[1::2] = x.real, x.imag
        j = int(rng.integers(0, 6))
        h = complex((x.conj() * zs[j]).sum())
        norm_sq = float(((f.subspaces[j].basis.T @ kx) ** 2).sum())
        assert abs(norm_sq - abs(h) ** 2) < 1e-12


def test_realify_phase_invariance():
    z = np.array([0.6, 0.8j])
    for phase in (0.3, 1.1, 2.9):
        p1 = projector(realify(ComplexLineSet.from_complex([z])).subspaces[0])
        p2 = projector(realify(
            ComplexLineSet.from_complex([np.exp(1j * phase) * z])).subspaces[0])
        assert np.abs(p1 - p2).max() < 1e-12


def test_complex_line_set_validation():
    with pytest.raises(FrameFormatError):
        ComplexLineSet(2, (np.array([1.0, 0.0, 1.0, 0.0]),))
    with pytest.raises(DimensionError):
        ComplexLineSet(2, (np.array([1.0, 0.0]),))
    with pytest.raises(DimensionError):
        realify(ComplexLineSet(1, (np.array([1.0, 0.0]),)))


# ---------------------------------------------------------------------------
# catalog

def test_catalog_names_and_aliases():
    assert set(catalog_names()) == {
        "mercedes", "equispaced-lines", "mub-planes-r4",
        "cross-polytope-lines", "weyl-a2-orbit"}
    merc = catalog("mercedes")
    three = catalog("equispaced-lines(3)")
    for a, b in zip(merc.subspaces, three.subspaces):
        assert subspaces_equal(a, b)
    orb = catalog("weyl-a2-orbit(1)")
    for s in orb.subspaces:
        assert any(subspaces_equal(s, t) for t in merc.subspaces)


def test_equispaced_lines_tightness_sweep():
    # tight at p exactly when the number of lines exceeds p
    for n in range(2, 9):
        f = catalog(f"equispaced-lines({n})")
        for p in range(1, 6):
            assert certify_tight(f, p).tight == (n >= p + 1), (n, p)


def test_cross_polytope_tightness():
    for d in (2, 3, 4):
        f = catalog(f"cross-polytope-lines({d})")
        assert certify_tight(f, 1).tight
        assert not certify_tight(f, 2).tight


def test_mub_planes_tightness_order(mub_planes):
    assert certify_tight(mub_planes, 3).tight
    assert not certify_tight(mub_planes, 4).tight


def test_catalog_unknown_names():
    for bad in ("nope", "equispaced-lines", "equispaced-lines(1)",
                "mercedes(3)", "weyl-a2-orbit(2)", "cross-polytope-lines(1)"):
        with pytest.raises(UnknownName):
            catalog(bad)


# ---------------------------------------------------------------------------
# file formats

def test_generator_file_round_trip(tmp_path):
    path = tmp_path / "gens.json"
    save_generators(list(weyl_a2_group().generators), path)
    mats = load_generators(path)
    assert len(mats) == 2
    assert len(close_group(mats)) == 6
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([[1.0, 0.0]]))
    with pytest.raises(FrameFormatError):
        load_generators(bad)
    empty = tmp_path / "empty.json"
    empty.write_text("[]")
    with pytest.raises(FrameFormatError):
        load_generators(empty)


def test_line_set_file_round_trip(tmp_path):
    path = tmp_path / "lines.json"
    save_line_set(mub_lines_c2(), path)
    lines = load_line_set(path)
    assert lines.d_complex == 2 and len(lines.vectors) == 6
    assert certify_tight(realify(lines), 3).tight
    odd = tmp_path / "odd.json"
    odd.write_text(json.dumps([[1.0, 0.0, 0.0]]))
    with pytest.raises(FrameFormatError):
        load_line_set(odd)
