"""Writes data/graphs/<name>.json for every graph in data/sample_data.py."""
import json
from pathlib import Path

from data.sample_data import SAMPLE_GRAPHS
from subfree.services.graph_service import validate

OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "graphs"


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, raw in SAMPLE_GRAPHS.items():
        graph = validate(raw)
        path = OUT_DIR / f"{name}.json"
        path.write_text(json.dumps(raw, indent=2) + "\n", encoding="utf-8")
        print(f"{path}: {len(graph.vertices)} vertices, {len(graph.edges)} edges")
    print("Done.")


if __name__ == '__main__':
    main()
