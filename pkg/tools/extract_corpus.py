#!/usr/bin/env python3
"""One-shot generator for the corpus data files shipped with matchkit.

Reads a LaTeX/TikZ source document whose figures carry coordinate blocks of
the form ``\\foreach \\i/\\x/\\y in {...}`` followed by an edge list
``\\foreach \\i/\\j in {...}`` and optional ``\\draw[red,thin]`` overdraws,
and emits one graph document (JSON) per figure plus an index file.

Coordinates are kept as the literal decimal strings found in the source so
no precision is lost in the data files. Duplicate figures (bit-identical
coordinates and edge sets) are stored once and recorded as aliases.

Usage:
    python tools/extract_corpus.py <tex-source> -o src/matchkit/corpus/data
"""

from __future__ import annotations

import argparse
import json
import math
import re
from pathlib import Path

COORD_BLOCK = re.compile(r"\\foreach \\i/\\x/\\y in \{")
EDGE_BLOCK = re.compile(r"\\foreach \\i/\\j in \{")
RED_DRAW = re.compile(r"\\draw\[red,thin\]\s*\(p-(\d+)\)\s*--\s*\(p-(\d+)\);")
CAPTION = re.compile(r"\\(?:captionof\{figure\}|subcaption\*|caption)\{")
PAR_CLAIMS = re.compile(r"\{\\par\\centering(.*?)\\par\}", re.DOTALL)
MATH_GROUP = re.compile(r"\$(.*?)\$", re.DOTALL)
# the source misprints one claim as "P43,38" (missing P), hence P? below
VERT_PAIR = re.compile(r"P(\d+)\s*,\s*P?(\d+)")
CLAIM_VALUE = re.compile(r"\\approx\s*([0-9]+\.[0-9]+)")

# Symmetry stated in the running text rather than in a figure caption.
PROSE_SYMMETRY = {
    "eps_27_left": "rotational(3)",
    "eps_27_right": "rotational(3)",
    "eps_42": "point",
    "eps_42_near_unit": "point",
}

SYMMETRY_SLUG = {
    "asymmetric": "asym",
    "point": "point",
    "mirror": "mirror",
}


def read_brace_group(text: str, open_pos: int) -> tuple[str, int]:
    """Return the content of the brace group opening at ``open_pos`` and the
    index just past its closing brace."""
    assert text[open_pos] == "{"
    depth = 0
    for i in range(open_pos, len(text)):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return text[open_pos + 1 : i], i + 1
    raise ValueError("unbalanced braces")


def parse_coords(body: str) -> tuple[list[tuple[str, str]], dict[int, int]]:
    """Parse vertex coordinates; return (coords, source-label -> index map).

    One figure skips a few vertex labels, so labels are remapped to a
    contiguous 0-based range in label order.
    """
    labeled: list[tuple[int, str, str]] = []
    for item in body.split(","):
        item = item.strip()
        if not item:
            continue
        idx, x, y = item.split("/")
        labeled.append((int(idx), x.strip(), y.strip()))
    labeled.sort()
    label_map = {label: i for i, (label, _, _) in enumerate(labeled)}
    return [(x, y) for _, x, y in labeled], label_map


def parse_edges(body: str, label_map: dict[int, int]) -> list[tuple[int, int]]:
    edges: set[tuple[int, int]] = set()
    for item in body.split(","):
        item = item.strip()
        if not item:
            continue
        i, j = (label_map[int(t)] for t in item.split("/"))
        assert i != j, f"self-loop {item}"
        e = (min(i, j), max(i, j))
        assert e not in edges, f"duplicate edge {item}"
        edges.add(e)
    return sorted(edges)


def parse_claims(
    text: str, red: list[tuple[int, int]], label_map: dict[int, int]
) -> list[dict]:
    """Parse claimed edge lengths out of caption/centering text.

    Handles chains like ``|P58,P60|=|P58,P59|\\approx1.088...`` (several
    edges sharing one value) and the bare ``red edges \\approx0.845`` form
    that applies to every red edge.
    """
    claims: dict[tuple[int, int], str] = {}
    for group in MATH_GROUP.findall(text):
        value = CLAIM_VALUE.search(group)
        if not value:
            continue
        pairs = VERT_PAIR.findall(group)
        if pairs:
            for a, b in pairs:
                u, v = label_map[int(a)], label_map[int(b)]
                claims[(min(u, v), max(u, v))] = value.group(1)
        elif "red edges" in text:
            for e in red:
                claims[e] = value.group(1)
    return [
        {"edge": list(e), "length": claims[e]} for e in sorted(claims)
    ]


def clean_caption(raw: str) -> str:
    text = re.sub(r"\\small\s*", "", raw)
    text = re.sub(r"\\vert\s*", "|", text)
    text = re.sub(r"\\approx\s*", "≈", text)
    text = re.sub(r"\\varepsilon", "ε", text)
    text = text.replace("$", "").replace("\\,", " ")
    return re.sub(r"\s+", " ", text).strip()


def extract_blocks(text: str) -> list[dict]:
    blocks = []
    pos = 0
    while True:
        m = COORD_BLOCK.search(text, pos)
        if not m:
            break
        coord_body, after = read_brace_group(text, m.end() - 1)
        em = EDGE_BLOCK.search(text, after)
        edge_body, after_edges = read_brace_group(text, em.end() - 1)

        cm = CAPTION.search(text, after_edges)
        caption_body, caption_end = read_brace_group(text, cm.end() - 1)

        # A subcaptioned block sits inside a figure whose \caption follows;
        # fold the figure caption (vertex count) into the block caption.
        if text[cm.start() : cm.start() + 12] == "\\subcaption*":
            fm = re.compile(r"\\caption\{").search(text, caption_end)
            figure_caption, _ = read_brace_group(text, fm.end() - 1)
            full_caption = f"{figure_caption}, {caption_body}"
        else:
            full_caption = caption_body

        coords, label_map = parse_coords(coord_body)
        edges = parse_edges(edge_body, label_map)
        red = sorted(
            {
                (min(label_map[int(a)], label_map[int(b)]), max(label_map[int(a)], label_map[int(b)]))
                for a, b in RED_DRAW.findall(text[after_edges : cm.start()])
            }
        )
        for e in red:
            assert e in set(edges), f"red edge {e} missing from edge list"

        claims_text = caption_body
        pm = PAR_CLAIMS.search(text, caption_end, caption_end + 400)
        if pm:
            claims_text += " " + pm.group(1)

        claims, rejected = validate_claims(
            parse_claims(claims_text, red, label_map), coords, red
        )
        blocks.append(
            {
                "pos": m.start(),
                "vertices": coords,
                "edges": edges,
                "red_edges": red,
                "caption": clean_caption(full_caption),
                "claimed_deviations": claims,
                "unverified_claims": rejected,
                "source_labels": sorted(label_map),
            }
        )
        pos = after_edges
    return blocks


def validate_claims(
    claims: list[dict], coords: list[tuple[str, str]], red: list[tuple[int, int]]
) -> tuple[list[dict], list[str]]:
    """Check each parsed claim against the block's own coordinates.

    A claim is kept only if it names a red edge and the recomputed length
    matches the printed value to half a unit in its last printed decimal
    (floored at 1e-9). A handful of source captions carry values that
    disagree with their own figure; those are returned separately so the
    index can record them verbatim instead of shipping false data.
    """
    kept: list[dict] = []
    rejected: list[str] = []
    red_set = set(red)
    for c in claims:
        u, v = c["edge"]
        text_form = f"|P{u + 1},P{v + 1}|~{c['length']}"
        length = math.dist(
            (float(coords[u][0]), float(coords[u][1])),
            (float(coords[v][0]), float(coords[v][1])),
        )
        decimals = len(c["length"].split(".")[1])
        tol = max(1e-9, 0.5 * 10.0 ** -decimals)
        if tuple(c["edge"]) not in red_set or abs(length - float(c["length"])) > tol:
            rejected.append(text_form)
        else:
            kept.append(c)
    return kept, rejected


def caption_symmetry(caption: str) -> str | None:
    if "asymmetric" in caption:
        return "asymmetric"
    if "point symmetry" in caption:
        return "point"
    if "mirror symmetry" in caption:
        return "mirror"
    m = re.search(r"rotational symmetry of order (\d+)", caption)
    if m:
        return f"rotational({m.group(1)})"
    return None


def assign_ids(blocks: list[dict], sec2_pos: int, sec3_pos: int) -> None:
    """Assign corpus ids: vertex count + descriptor, never figure numbers."""
    eps27_seen = 0
    base_ids: list[str] = []
    for b in blocks:
        n = len(b["vertices"])
        caption = b["caption"]
        sym = caption_symmetry(caption)
        if b["pos"] < sec2_pos:
            base = "title_51v" if "Harborth" not in caption else "harborth_52"
        elif b["pos"] < sec3_pos:
            if n == 27:
                base = "eps_27_left" if eps27_seen == 0 else "eps_27_right"
                eps27_seen += 1
            else:
                base = "eps_42" if "ε" not in caption else "eps_42_near_unit"
            sym = PROSE_SYMMETRY[base]
        elif sym is not None:
            slug = SYMMETRY_SLUG.get(sym) or re.sub(r"rotational\((\d+)\)", r"rot\1", sym)
            base = f"fig_{n}v_{slug}"
        else:
            base = f"fig_{n}v"
        b["base_id"] = base
        b["symmetry"] = sym
        base_ids.append(base)

    for base in set(base_ids):
        group = [b for b in blocks if b["base_id"] == base]
        if len(group) == 1:
            group[0]["id"] = base
        else:
            for b, letter in zip(group, "abcdefgh"):
                b["id"] = f"{base}_{letter}"


def dedupe(blocks: list[dict]) -> list[dict]:
    seen: dict[tuple, dict] = {}
    unique = []
    for b in blocks:
        key = (
            tuple(b["vertices"]),
            tuple(map(tuple, b["edges"])),
            tuple(map(tuple, b["red_edges"])),
        )
        if key in seen:
            canon = seen[key]
            canon.setdefault("aliases", []).append(b["id"])
            print(f"  duplicate block: {b['id']} -> alias of {canon['id']}")
        else:
            seen[key] = b
            unique.append(b)
    return unique


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("source", type=Path, help="TikZ source document")
    ap.add_argument("-o", "--out", type=Path, required=True, help="output directory")
    args = ap.parse_args()

    text = args.source.read_text(encoding="utf-8")
    section_starts = [m.start() for m in re.finditer(r"\\section\{", text)]
    sec2_pos, sec3_pos = section_starts[1], section_starts[2]

    blocks = extract_blocks(text)
    print(f"extracted {len(blocks)} coordinate blocks")
    assign_ids(blocks, sec2_pos, sec3_pos)

    # The title-page figure duplicates a later block; prefer the captioned
    # entry as canonical, so order title-page blocks last before deduping.
    blocks_sorted = sorted(blocks, key=lambda b: (b["base_id"] == "title_51v", b["pos"]))
    unique = dedupe(blocks_sorted)
    unique.sort(key=lambda b: b["pos"])

    args.out.mkdir(parents=True, exist_ok=True)
    index = []
    for b in unique:
        doc = {
            "id": b["id"],
            "caption": b["caption"],
            "symmetry": b["symmetry"],
            "vertices": [list(v) for v in b["vertices"]],
            "edges": [list(e) for e in b["edges"]],
            "red_edges": [list(e) for e in b["red_edges"]],
            "claimed_deviations": b["claimed_deviations"],
        }
        fname = f"{b['id']}.json"
        (args.out / fname).write_text(
            json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
        entry = {
            "id": b["id"],
            "file": fname,
            "caption": b["caption"],
            "aliases": b.get("aliases", []),
        }
        # Vertex labels in the source are 1-based; record them explicitly
        # where they are not simply 1..n (one figure skips three labels).
        if b["source_labels"] != list(range(1, len(b["vertices"]) + 1)):
            entry["source_labels"] = b["source_labels"]
        if b["unverified_claims"]:
            entry["unverified_claims"] = b["unverified_claims"]
            print(f"  NOTE {b['id']}: unverified caption values {b['unverified_claims']}")
        index.append(entry)
        print(
            f"  {b['id']}: {len(b['vertices'])}v {len(b['edges'])}e "
            f"{len(b['red_edges'])}r claims={len(b['claimed_deviations'])}"
        )

    (args.out / "index.json").write_text(
        json.dumps(index, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(unique)} graph documents to {args.out}")


if __name__ == "__main__":
    main()
