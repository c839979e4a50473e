import logging

import numpy as np
import pytest

from data.sample_data import SAMPLE_GRAPHS
from subfree.errors import (
    Disconnected,
    DuplicateId,
    GraphFileError,
    NotBipartite,
    StarNotEven,
    UnknownVertex,
)
from subfree.services.graph_service import (
    distances_from_star,
    dump_graph,
    load_graph,
    path_graph,
    relabel,
    validate,
)


def _two_vertices(**overrides):
    raw = {
        "vertices": [{"id": "*", "parity": "even"}, {"id": "v", "parity": "odd"}],
        "edges": [{"id": "1", "ends": ["*", "v"]}],
        "star": "*",
    }
    raw.update(overrides)
    return raw


def test_path_graph_is_valid():
    g = path_graph(4)
    assert g.vertices == ["*", "v2", "v3", "v4"]
    assert [e.id for e in g.edges] == ["1", "2", "3"]
    assert g.even_vertices == ["*", "v3"]
    assert g.source("2") == "v3" and g.target("2") == "v2"


@pytest.mark.parametrize("name", sorted(SAMPLE_GRAPHS))
def test_sample_graphs_validate(name):
    g = validate(SAMPLE_GRAPHS[name])
    assert g.parity(g.star) == "even"


def test_edge_between_two_even_vertices_is_rejected():
    raw = _two_vertices(vertices=[{"id": "*", "parity": "even"}, {"id": "v", "parity": "even"}])
    with pytest.raises(NotBipartite):
        validate(raw)


def test_two_components_are_rejected():
    raw = _two_vertices()
    raw["vertices"] = raw["vertices"] + [{"id": "w", "parity": "even"}, {"id": "u", "parity": "odd"}]
    raw["edges"] = raw["edges"] + [{"id": "2", "ends": ["w", "u"]}]
    with pytest.raises(Disconnected):
        validate(raw)


def test_odd_star_is_rejected():
    with pytest.raises(StarNotEven):
        validate(_two_vertices(star="v"))


def test_duplicate_ids_are_rejected():
    raw = _two_vertices()
    raw["vertices"] = raw["vertices"] + [{"id": "v", "parity": "odd"}]
    with pytest.raises(DuplicateId):
        validate(raw)
    raw = _two_vertices()
    raw["edges"] = raw["edges"] * 2
    with pytest.raises(DuplicateId):
        validate(raw)


def test_unknown_endpoint_is_rejected():
    raw = _two_vertices(edges=[{"id": "1", "ends": ["*", "nowhere"]}])
    with pytest.raises(UnknownVertex):
        validate(raw)


def test_malformed_description_is_a_file_error():
    raw = _two_vertices()
    del raw["star"]
    with pytest.raises(GraphFileError):
        validate(raw)
    with pytest.raises(GraphFileError):
        validate(_two_vertices(vertices=[{"id": "*", "parity": "sideways"}]))


def test_unknown_fields_only_warn(graph_dir, caplog):
    with caplog.at_level(logging.WARNING):
        g = load_graph(graph_dir / "a3_annotated.json")
    assert len(g.vertices) == 3
    assert "ignoring unknown graph field 'name'" in caplog.text
    assert "vertices[0].label" in caplog.text


def test_missing_file_is_a_file_error(tmp_path):
    with pytest.raises(GraphFileError):
        load_graph(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(GraphFileError):
        load_graph(bad)


def test_dump_round_trip():
    g = validate(SAMPLE_GRAPHS["medge2"])
    again = validate(dump_graph(g))
    assert again.vertices == g.vertices
    assert again.edges == g.edges
    assert again.star == g.star


def test_parallel_edges_add_up_in_adjacency():
    g = validate(SAMPLE_GRAPHS["medge2"])
    A = g.adjacency(["*", "v"])
    assert np.array_equal(A, np.array([[0.0, 2.0], [2.0, 0.0]]))


def test_relabel_and_distances():
    g = validate(SAMPLE_GRAPHS["kac4"])
    assert distances_from_star(g) == {"*": 0, "h": 1, "l2": 2, "l3": 2, "l4": 2}
    r = relabel(g, {"*": "root", "h": "hub"})
    assert r.star == "root"
    assert distances_from_star(r)["hub"] == 1
    assert r.edge("1").tail == "root"
