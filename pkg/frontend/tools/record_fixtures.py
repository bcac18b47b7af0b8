#!/usr/bin/env python3
"""Record test fixtures from a live backend.

Starts `matchkit serve` on a scratch port, captures raw response bodies for
the routes the editor exercises, and stores them under tests/fixtures/.
The CLI's text output of `corpus show` is captured too: it is the canonical
file-format byte sequence the client serializer must reproduce.

Run from the frontend/ directory with the backend package installed.
"""

import json
import pathlib
import subprocess
import sys
import time
import urllib.error
import urllib.request

PORT = 8771
BASE = f"http://127.0.0.1:{PORT}"
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"

TRIANGLE = {
    "id": "unit_triangle",
    "vertices": [["0", "0"], ["1", "0"], ["0.5", "0.8660254037844386"]],
    "edges": [[0, 1], [0, 2], [1, 2]],
    "red_edges": [],
}

SQUARE = {
    "id": "unit_square",
    "vertices": [["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"]],
    "edges": [[0, 1], [1, 2], [2, 3], [0, 3]],
    "red_edges": [],
}


def fetch(path: str, payload=None) -> bytes:
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(BASE + path, data=data,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req, timeout=120) as resp:
            return resp.read()
    except urllib.error.HTTPError as exc:
        return exc.read()


def get_doc(graph_id: str) -> dict:
    return json.loads(fetch(f"/api/corpus/{graph_id}"))


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    server = subprocess.Popen(
        ["matchkit", "serve", "--port", str(PORT)],
        stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL,
    )
    try:
        for _ in range(50):
            time.sleep(0.1)
            try:
                fetch("/api/corpus")
                break
            except OSError:
                continue
        else:
            print("server did not come up", file=sys.stderr)
            return 1

        recordings = {
            "corpus_index.json": fetch("/api/corpus"),
            "fig_60v_rot3.http.json": fetch("/api/corpus/fig_60v_rot3"),
            "eps_27_left.http.json": fetch("/api/corpus/eps_27_left"),
            "fig_60v_rot3_symmetry.json":
                fetch("/api/symmetry", {"graph": get_doc("fig_60v_rot3")}),
            "eps_27_left_flex.json":
                fetch("/api/flex", {"graph": get_doc("eps_27_left")}),
            "harborth_52_verify.json":
                fetch("/api/verify", {"graph": get_doc("harborth_52")}),
            "triangle_verify.json": fetch("/api/verify", {"graph": TRIANGLE}),
            "unit_square_rigidity.json":
                fetch("/api/rigidity", {"graph": SQUARE}),
            "error_404.json": fetch("/api/corpus/nope"),
            "error_422.json": fetch("/api/flex", {"graph": TRIANGLE}),
        }
        for name, body in recordings.items():
            (OUT / name).write_bytes(body)
            print(f"{name}: {len(body)} bytes")

        for graph_id in ("fig_60v_rot3", "eps_27_left"):
            file_bytes = subprocess.run(
                ["matchkit", "corpus", "show", graph_id],
                check=True, capture_output=True,
            ).stdout
            (OUT / f"{graph_id}.file.json").write_bytes(file_bytes)
            print(f"{graph_id}.file.json: {len(file_bytes)} bytes")
    finally:
        server.terminate()
        server.wait(timeout=10)
    return 0


if __name__ == "__main__":
    sys.exit(main())
