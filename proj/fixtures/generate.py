#!/usr/bin/env python3
"""Regenerates the synthetic scene fixtures.

All coordinates and timings are authored by hand to exercise specific
relations; none are measured from footage. Run from any directory:

    python3 fixtures/generate.py
"""
import json
from pathlib import Path

HERE = Path(__file__).resolve().parent


def write_tracks(path, records):
    with open(path, "w") as f:
        f.write(json.dumps({"schema": "vistalk.tracks", "version": 1}) + "\n")
        for r in records:
            f.write(json.dumps(r) + "\n")


def write_json(path, obj):
    with open(path, "w") as f:
        json.dump(obj, f, indent=2)
        f.write("\n")


def frange(start, stop, step):
    """Inclusive range on an exact decimal grid."""
    n = int(round((stop - start) / step))
    return [round(start + i * step, 6) for i in range(n + 1)]


# ---------------------------------------------------------------------------
# l1_quadrants: two faces in a 1920x1080 frame, y grows downward.

def l1():
    out = HERE / "l1_quadrants"
    out.mkdir(exist_ok=True)
    records = []
    for t in frange(0.0, 24.0, 0.5):
        if t < 10.0:
            irene = [800, 130, 1640, 1000]   # straddles the vertical split
        elif t <= 18.0:
            irene = [1040, 130, 1880, 1000]  # well inside the right half
        else:
            k = round((t - 18.0) / 0.5)      # close-up: grows every frame
            irene = [920 - 40 * k, 120 - 5 * k, 1900, 1010 + 5 * k]
        if 11.0 <= t <= 20.0:
            driver = [40, 130, 880, 1000]
        else:
            driver = [500, 130, 1340, 1000]
        records.append({"entity_id": "irene_face", "kind": "person", "t": t, "box": irene})
        records.append({"entity_id": "driver_face", "kind": "person", "t": t, "box": driver})
        # Camera-to-couple distance in metres, 2.0 m rising to 4.0 m.
        records.append({"entity_id": "couple", "kind": "person", "t": t, "point": [round(2.0 + t / 12.0, 6), 0.0]})
        records.append({"entity_id": "camera", "kind": "camera", "t": t, "point": [0.0, 0.0]})
    write_tracks(out / "tracks.jsonl", records)

    write_json(out / "regions.json", {
        "schema": "vistalk.regions", "version": 1,
        "regions": [
            {"name": "left_quadrant", "box": [0, 0, 960, 1080], "layer": "vertical_split"},
            {"name": "right_quadrant", "box": [960, 0, 1920, 1080], "layer": "vertical_split"},
            {"name": "top_quadrant", "box": [0, 0, 1920, 540], "layer": "horizontal_split"},
            {"name": "bottom_quadrant", "box": [0, 540, 1920, 1080], "layer": "horizontal_split"},
        ]})

    rel = lambda fam, *args: {"family": fam, "args": list(args)}
    write_json(out / "scene.json", {
        "schema": "vistalk.scene", "version": 1,
        "files": {
            "tracks": "tracks.jsonl",
            "regions": "regions.json",
            "vocab": "vocab.txt",
            "lexicon": ["../../data/core.lex", "domain.lex"],
            "grammar": "../../data/english.cfg",
        },
        "axis": {"vertical": "increasing", "horizontal": "increasing", "depth": "increasing"},
        "tolerances": {"dist": 0.0, "size": 0.05, "depth": 0.5, "motion": 0.01},
        "min_hold": 1,
        "max_gap": 0.5,
        "possessive": "plain",
        "relations": [
            rel("topology", "irene_face", "right_quadrant"),
            rel("topology", "irene_face", "left_quadrant"),
            rel("topology", "irene_face", "top_quadrant"),
            rel("topology", "driver_face", "left_quadrant"),
            rel("topology", "driver_face", "right_quadrant"),
            rel("position", "irene_face", "driver_face"),
            rel("relative_size", "irene_face", "driver_face"),
            rel("relative_distance", "irene_face", "driver_face", "right_quadrant"),
            rel("size_motion_horizontal", "irene_face"),
            rel("size_motion_vertical", "irene_face"),
            rel("move", "couple", "camera"),
        ],
        "schemas": {
            "containment": [
                {"entity": "irene_face", "container": "right_quadrant"},
                {"entity": "driver_face", "container": "left_quadrant"},
            ],
            "occupancy_threshold": 0.6,
        },
    })

    (out / "vocab.txt").write_text(
        "# entity -> lexicon keys\n"
        "irene_face      head=irene\n"
        "driver_face     head=the_driver\n"
        "couple          head=couple\n"
        "camera          head=camera\n"
        "left_quadrant   head=quadrant mods=left\n"
        "right_quadrant  head=quadrant mods=right\n"
        "top_quadrant    head=quadrant mods=top\n"
        "bottom_quadrant head=quadrant mods=bottom\n")
    (out / "domain.lex").write_text(
        "irene      | proper_noun | Irene      | tags=person\n"
        "the_driver | proper_noun | The Driver | tags=person\n"
        "couple     | noun        | couple     | tags=person\n"
        "camera     | noun        | camera     | tags=object\n"
        "quadrant   | noun        | quadrant   | tags=location\n"
        "left       | adjective   | left\n"
        "right      | adjective   | right\n"
        "top        | adjective   | top\n"
        "bottom     | adjective   | bottom\n")


# ---------------------------------------------------------------------------
# l2_wayfinding: a hospital floorplan in metres plus a 1280x720 view for gaze.

FLOOR = {
    "emergency": [0, 0, 10, 15],
    "corridor": [10, 0, 40, 15],
    "reception": [40, 0, 50, 15],
    "blue_elevators": [50, 0, 60, 15],
    "atrium_lobby": [0, 15, 60, 30],
    "bridge": [60, 20, 80, 25],
    "pharmacy": [80, 15, 90, 30],
}
VIEW = {
    "emergency_sign": [100, 100, 300, 200],
    "exit_sign": [500, 100, 700, 200],
    "elevator_sign": [900, 100, 1100, 200],
    "outside_view": [100, 400, 400, 700],
}
DT = 0.2
SPEED = 1.25  # m/s


def walk(points, t0):
    """Samples a polyline at SPEED on the DT grid starting at t0."""
    samples = []
    legs = list(zip(points, points[1:]))
    lengths = [((b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2) ** 0.5 for a, b in legs]
    total = sum(lengths)
    n = int(total / (SPEED * DT))
    for i in range(n + 1):
        d = i * SPEED * DT
        for (a, b), length in zip(legs, lengths):
            if d <= length or (a, b) == legs[-1]:
                f = min(d / length, 1.0)
                samples.append((round(t0 + i * DT, 6), [round(a[0] + (b[0] - a[0]) * f, 6), round(a[1] + (b[1] - a[1]) * f, 6)]))
                break
            d -= length
    return samples


def regions_at(p, regions):
    return [n for n, (x0, y0, x1, y1) in regions.items() if x0 <= p[0] <= x1 and y0 <= p[1] <= y1]


def l2():
    out = HERE / "l2_wayfinding"
    out.mkdir(exist_ok=True)
    # First walk: emergency -> atrium lobby -> blue elevators. Tracking is
    # lost afterwards and resumes at the emergency entrance for the long walk.
    walk1 = walk([(5.0, 7.1), (5.0, 22.1), (55.0, 22.1), (55.0, 7.1)], 0.0)
    walk2 = walk([(5.1, 7.1), (55.1, 7.1), (55.1, 22.1), (85.1, 22.1)], 80.0)
    barbara = walk1 + walk2
    for t, p in barbara:
        assert len(regions_at(p, FLOOR)) == 1, (t, p, regions_at(p, FLOOR))

    end = barbara[-1][0]
    rest = [640.0, 400.0]
    fixations = [
        (20.0, 21.0, [200.0, 150.0]),   # emergency sign
        (21.2, 21.2, [400.0, 150.0]),   # saccade
        (21.4, 22.4, [600.0, 150.0]),   # exit sign
        (22.6, 22.6, [800.0, 150.0]),   # saccade
        (22.8, 23.8, [1000.0, 150.0]),  # elevator sign
        (95.0, 99.0, [250.0, 550.0]),   # outside view, while in the corridor
    ]
    gaze = []
    for t in frange(0.0, end, DT):
        p = rest
        for a, b, q in fixations:
            if a - 1e-9 <= t <= b + 1e-9:
                p = q
        assert len(regions_at(p, VIEW)) <= 1
        gaze.append((t, p))

    records = [{"entity_id": "barbara", "kind": "person", "t": t, "point": p} for t, p in barbara]
    records += [{"entity_id": "barbara_gaze", "kind": "gaze", "t": t, "point": p} for t, p in gaze]
    write_tracks(out / "tracks.jsonl", records)

    regions = [{"name": n, "box": b, "layer": "floorplan"} for n, b in FLOOR.items()]
    regions += [{"name": n, "box": b, "layer": "view"} for n, b in VIEW.items()]
    write_json(out / "regions.json", {"schema": "vistalk.regions", "version": 1, "regions": regions})

    write_json(out / "route_graph.json", {
        "schema": "vistalk.route_graph", "version": 1,
        "nodes": [{"name": n, "region": n} for n in FLOOR],
        "edges": [["emergency", "corridor"], ["corridor", "reception"], ["reception", "blue_elevators"],
                  ["blue_elevators", "atrium_lobby"], ["atrium_lobby", "bridge"], ["bridge", "pharmacy"],
                  ["emergency", "atrium_lobby"]],
    })

    rel = lambda fam, *args: {"family": fam, "args": list(args)}
    write_json(out / "scene.json", {
        "schema": "vistalk.scene", "version": 1,
        "files": {
            "tracks": "tracks.jsonl",
            "regions": "regions.json",
            "route_graph": "route_graph.json",
            "vocab": "vocab.txt",
            "lexicon": ["../../data/core.lex", "domain.lex"],
            "grammar": "../../data/english.cfg",
        },
        "min_hold": 1,
        "max_gap": 0.5,
        "possessive": "plain",
        "relations": [
            rel("topology", "barbara_gaze", "emergency_sign"),
            rel("topology", "barbara_gaze", "exit_sign"),
            rel("topology", "barbara_gaze", "elevator_sign"),
            rel("topology", "barbara_gaze", "outside_view"),
            rel("topology", "barbara", "corridor"),
            rel("topology", "barbara", "atrium_lobby"),
        ],
        "localize": [
            {"entity": "barbara", "layer": "floorplan"},
            {"entity": "barbara_gaze", "layer": "view"},
        ],
        "schemas": {
            "source_path_goal": ["barbara", "barbara_gaze"],
            "attraction": [{"entity": "barbara_gaze", "attractors": list(VIEW)}],
            "attraction_threshold": 2.0,
            "max_transition_gap": 2.0,
        },
    })

    (out / "vocab.txt").write_text(
        "# entity -> lexicon keys\n"
        "barbara         head=barbara\n"
        "barbara_gaze    owner=barbara path_head=eye path_number=plural attention_head=attention\n"
        "emergency       head=emergency\n"
        "corridor        head=hallway\n"
        "reception       head=reception\n"
        "blue_elevators  head=elevator mods=blue number=plural\n"
        "atrium_lobby    head=lobby mods=atrium\n"
        "bridge          head=bridge\n"
        "pharmacy        head=pharmacy\n"
        "emergency_sign  head=sign mods=emergency\n"
        "exit_sign       head=sign mods=exit\n"
        "elevator_sign   head=sign mods=elevator\n"
        "outside_view    head=view mods=outside\n")
    (out / "domain.lex").write_text(
        "barbara   | proper_noun | Barbara   | tags=person\n"
        "eye       | noun        | eye       | tags=gaze\n"
        "attention | noun        | attention | tags=gaze\n"
        "emergency | noun        | emergency | tags=location\n"
        "hallway   | noun        | hallway   | tags=location\n"
        "reception | noun        | reception | tags=location\n"
        "elevator  | noun        | elevator  | tags=location\n"
        "lobby     | noun        | lobby     | tags=location\n"
        "atrium    | noun        | atrium    | tags=location\n"
        "bridge    | noun        | bridge    | tags=location\n"
        "pharmacy  | noun        | pharmacy  | tags=location\n"
        "sign      | noun        | sign      | tags=object\n"
        "exit      | noun        | exit      | tags=object\n"
        "view      | noun        | view      | tags=object\n"
        "blue      | adjective   | blue\n"
        "outside   | adjective   | outside\n")


if __name__ == "__main__":
    l1()
    l2()
