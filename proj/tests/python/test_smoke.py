import pathlib

import numpy as np
import pytest

import groupoidrep as gr

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_pair_groupoid():
    g = gr.make_pair(3)
    assert g.num_arrows == 9
    assert gr.validate_groupoid(g).ok
    assert gr.orbits(g) == [[0, 1, 2]]
    assert g.comp(0 * 3 + 1, 1 * 3 + 2) == 2
    assert g.comp(1, 1) is None


def test_haar_witness():
    g = gr.group_as_groupoid(gr.cyclic_group(2))
    r = gr.validate_haar(g, gr.HaarSystem([1.0, 2.0]))
    assert not r.ok
    assert len(r.witness) == 2
    with pytest.raises(gr.ValidationError):
        gr.validate_haar(g, gr.HaarSystem([1.0, 0.0]))


def test_decompose_s3_regular():
    g = gr.group_as_groupoid(gr.symmetric_group(3))
    reg = gr.left_regular(g, gr.counting_haar(g))
    dims = sorted(s.dims[0] for s in gr.decompose(g, reg, 7))
    assert dims == [1, 1, 2, 2]


def test_representation_from_numpy():
    g = gr.group_as_groupoid(gr.cyclic_group(2))
    sign = gr.Representation([1], [np.eye(1), -np.eye(1)], unitary=True)
    assert gr.validate_rep(g, sign).ok
    bad = gr.Representation([1], [np.eye(1), 2 * np.eye(1)])
    assert not gr.validate_rep(g, bad).ok


def test_peter_weyl_and_convolution():
    pb = gr.principal_bundle(4, gr.cyclic_group(2), gr.trivial_bundle_action(2, gr.cyclic_group(2)))
    g = pb.gauge
    w = gr.counting_haar(g)
    pw = gr.compute_pw_set(g, w)
    assert pw.complete()
    assert gr.pw_isomorphism(pw, g, w)["ok"]
    rt = gr.bijection_roundtrip(g, w, gr.left_regular(g, w))
    assert rt.ok and rt.extract_residual < 1e-10
    assert gr.is_morita(pb.gauge, pb.group, pb.bibundle)


def test_bisections_of_pair3():
    g = gr.make_pair(3)
    bis = gr.enumerate_bisections(g)
    assert len(bis.elements) == 6
    assert gr.find_isomorphism(bis.group, gr.symmetric_group(3)) is not None


def test_rep_ring():
    g = gr.group_as_groupoid(gr.symmetric_group(3))
    ring = gr.RepRing(g, gr.counting_haar(g), 1)
    assert ring.rank == 3
    assert ring.multiply([0, 0, 1], [0, 0, 1]) == [1, 1, 1]
    assert ring.classify(gr.left_regular(g, gr.counting_haar(g))) == [1, 1, 2]


def test_cli_in_process():
    status, report = gr.run("decompose", str(DATA / "s3.json"), seed=7)
    assert status == 0
    assert report["summand_dims"] == [1, 1, 2]
    status, report = gr.run("validate", "/nonexistent.json")
    assert status == 2
