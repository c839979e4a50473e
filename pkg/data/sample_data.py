SAMPLE_GRAPHS = {
    # A_4: delta = golden ratio, weights (1, phi, phi, 1)
    "a4": {
        "vertices": [
            {"id": "*", "parity": "even"},
            {"id": "v2", "parity": "odd"},
            {"id": "v3", "parity": "even"},
            {"id": "v4", "parity": "odd"},
        ],
        "edges": [
            {"id": "1", "ends": ["*", "v2"]},
            {"id": "2", "ends": ["v2", "v3"]},
            {"id": "3", "ends": ["v3", "v4"]},
        ],
        "star": "*",
    },
    # Kac algebra of a group of order 4: one odd hub, delta = 2
    "kac4": {
        "vertices": [
            {"id": "*", "parity": "even"},
            {"id": "h", "parity": "odd"},
            {"id": "l2", "parity": "even"},
            {"id": "l3", "parity": "even"},
            {"id": "l4", "parity": "even"},
        ],
        "edges": [
            {"id": "1", "ends": ["*", "h"]},
            {"id": "2", "ends": ["h", "l2"]},
            {"id": "3", "ends": ["h", "l3"]},
            {"id": "4", "ends": ["h", "l4"]},
        ],
        "star": "*",
    },
    # two parallel edges: delta = 2, global index 1
    "medge2": {
        "vertices": [
            {"id": "*", "parity": "even"},
            {"id": "v", "parity": "odd"},
        ],
        "edges": [
            {"id": "a", "ends": ["*", "v"]},
            {"id": "b", "ends": ["*", "v"]},
        ],
        "star": "*",
    },
    # A_3 carrying fields the loader ignores with a warning
    "a3_annotated": {
        "name": "A_3",
        "vertices": [
            {"id": "*", "parity": "even", "label": "trivial"},
            {"id": "x", "parity": "odd"},
            {"id": "y", "parity": "even"},
        ],
        "edges": [
            {"id": "1", "ends": ["*", "x"]},
            {"id": "2", "ends": ["x", "y"]},
        ],
        "star": "*",
    },
}
