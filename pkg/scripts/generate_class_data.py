"""Regenerate src/lieorder/data/weyl_classes.json with GAP.

GAP computes the conjugacy classes of W as a permutation group on the
signed weights of the smallest faithful representation; each representative
is pulled back to a word in the simple reflections and replaced by a reduced
word for the same element.  The library never calls GAP; it validates the
shipped file instead.

    GAP_CMD="python -m sage.interfaces.gap" python scripts/generate_class_data.py

Any GAP 4 executable that reads a program on stdin works as GAP_CMD.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import subprocess
import sys
import time

from lieorder.rootdata import GROUP_TYPES, weight_system
from lieorder.weylgroup import (
    CLASS_DATA_VERSION,
    _data_path,
    conjugation_labels,
    enumerate_group,
    from_word,
    reduced_word,
    simple_reflection,
)

# representatives used in the published G2 tables: 1, n1, n2, n2 n1 and its powers
PREFERRED = {"G2": [[], [1], [2], [2, 1], [2, 1, 2, 1], [2, 1, 2, 1, 2, 1]]}


def point_index(ws, signed: int) -> int:
    """1-based GAP point for a signed weight index."""
    return signed if signed > 0 else ws.u - signed


def generator_images(name: str) -> list[list[int]]:
    ws = weight_system(name)
    npts = 2 * ws.u if ws.paired else ws.u
    gens = []
    for i in range(1, ws.rank + 1):
        sigma = simple_reflection(name, i).sigma
        img = [0] * npts
        for j in range(1, ws.u + 1):
            img[point_index(ws, j) - 1] = point_index(ws, sigma(j))
            if ws.paired:
                img[point_index(ws, -j) - 1] = point_index(ws, -sigma(j))
        gens.append(img)
    return gens


GAP_PROGRAM = """
gens := List({gens}, PermList);;
G := Group(gens);;
if Size(G) <> {order} then Error("wrong order"); fi;
hom := EpimorphismFromFreeGroup(G);;
cc := ConjugacyClasses(G);;
Print("BEGIN\\n");
for c in cc do
  w := LetterRepAssocWord(PreImagesRepresentative(hom, Representative(c)));
  Print("C ", Size(c), " ");
  for x in w do Print(AbsInt(x), " "); od;
  Print("\\n");
od;
Print("END\\n");
QUIT;
"""


def run_gap(name: str, gap_cmd: str) -> list[tuple[int, list[int]]]:
    prog = GAP_PROGRAM.format(gens=generator_images(name), order=GROUP_TYPES[name].weyl_order)
    out = subprocess.run(
        shlex.split(gap_cmd) + ["-q"], input=prog, capture_output=True, text=True, check=True
    ).stdout
    body = out.split("BEGIN", 1)[1].split("END", 1)[0]
    records = []
    for chunk in body.replace("\\\n", "").split("C ")[1:]:
        size, *word = chunk.split()
        records.append((int(size), [int(x) for x in word]))
    return records


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gap", default=os.environ.get("GAP_CMD", "gap"))
    ap.add_argument("--out", default=str(_data_path()))
    ap.add_argument("groups", nargs="*", default=list(GROUP_TYPES))
    args = ap.parse_args(argv)

    data = {"version": CLASS_DATA_VERSION, "groups": []}
    if os.path.exists(args.out):
        old = json.load(open(args.out))
        data["groups"] = [g for g in old["groups"] if g["group"] not in args.groups]
    for name in args.groups:
        t0 = time.time()
        classes = []
        for size, word in run_gap(name, args.gap):
            w = from_word(name, word)
            classes.append({"size": size, "word": list(reduced_word(name, w.kaction))})
        classes = apply_preferred(name, classes)
        classes.sort(key=lambda c: (c["size"], len(c["word"]), c["word"]))
        data["groups"].append({"group": name, "classes": classes})
        print(f"{name}: {len(classes)} classes in {time.time() - t0:.1f}s", file=sys.stderr)
    data["groups"].sort(key=lambda g: list(GROUP_TYPES).index(g["group"]))
    with open(args.out, "w") as fh:
        fh.write(format_class_data(data))


def apply_preferred(name, classes):
    if name not in PREFERRED:
        return classes
    grp = enumerate_group(name)
    labels = conjugation_labels(grp)
    want = {int(labels[grp.lookup(from_word(name, w).kaction)]): w for w in PREFERRED[name]}
    out = []
    for c in classes:
        cid = int(labels[grp.lookup(from_word(name, c["word"]).kaction)])
        out.append({"size": c["size"], "word": want.get(cid, c["word"])})
    return out


def format_class_data(data: dict) -> str:
    """One class per line, so diffs of the data file stay readable."""
    lines = ["{", f'  "version": {data["version"]},', '  "groups": [']
    for gi, g in enumerate(data["groups"]):
        lines.append(f'    {{"group": "{g["group"]}", "classes": [')
        for ci, c in enumerate(g["classes"]):
            sep = "," if ci < len(g["classes"]) - 1 else ""
            lines.append(f'      {{"size": {c["size"]}, "word": {json.dumps(c["word"])}}}{sep}')
        lines.append("    ]}" + ("," if gi < len(data["groups"]) - 1 else ""))
    lines += ["  ]", "}", ""]
    return "\n".join(lines)


if __name__ == "__main__":
    main()
