#!/usr/bin/env python3
"""Count a map extract independently of the C++ code and write manifest.json.

Usage: count_fixture.py MAP.osm [OUT.json]

Counts raw nodes and ways, the walkable graph (distinct nodes of walkable
ways, distinct undirected node pairs), and feature records per kind, using
the same tag rules as the ingest pipeline.
"""

import json
import sys
import xml.etree.ElementTree as ET

WALKABLE_HIGHWAY = {"footway", "path", "pedestrian", "living_street", "steps", "track"}
WALKABLE_SIDEWALK = {"left", "right", "both"}
WALKABLE_FOOT = {"yes", "designated"}


def tags_of(el):
    return {t.get("k"): t.get("v") for t in el.findall("tag")}


def walkable(tags):
    return (tags.get("highway") in WALKABLE_HIGHWAY
            or tags.get("sidewalk") in WALKABLE_SIDEWALK
            or tags.get("foot") in WALKABLE_FOOT)


def kinds(tags):
    out = []
    if tags.get("highway") == "footway" or "footway" in tags or "sidewalk" in tags:
        out.append("Sidewalk")
    if (tags.get("landuse") in {"grass", "forest", "meadow", "recreation_ground"}
            or tags.get("natural") in {"wood", "tree", "scrub"}
            or tags.get("leisure") in {"park", "garden"}):
        out.append("GreenArea")
    if tags.get("wheelchair") in {"yes", "designated"}:
        out.append("Accessibility")
    if tags.get("tourism"):
        out.append("POI")
    return out


def main():
    path = sys.argv[1]
    root = ET.parse(path).getroot()
    nodes = root.findall("node")
    ways = root.findall("way")

    graph_nodes = set()
    graph_edges = set()
    features = {"Sidewalk": 0, "GreenArea": 0, "Accessibility": 0, "POI": 0}
    for n in nodes:
        for k in kinds(tags_of(n)):
            features[k] += 1
    for w in ways:
        tags = tags_of(w)
        refs = [int(nd.get("ref")) for nd in w.findall("nd")]
        for k in kinds(tags):
            features[k] += 1
        if walkable(tags) and len(refs) >= 2:
            graph_nodes.update(refs)
            for a, b in zip(refs, refs[1:]):
                if a != b:
                    graph_edges.add((min(a, b), max(a, b)))

    manifest = {
        "nodes": len(nodes),
        "ways": len(ways),
        "graph_nodes": len(graph_nodes),
        "graph_edges": len(graph_edges),
        "features": features,
    }
    text = json.dumps(manifest, indent=2) + "\n"
    if len(sys.argv) > 2:
        with open(sys.argv[2], "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
