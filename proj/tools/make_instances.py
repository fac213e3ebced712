#!/usr/bin/env python3
"""Writes deterministic Chao-format instance files (header lines, then `x y score`).

The first data line is the depot and the last repeats it as the end depot,
as in the TOP distribution files. Coordinates have one decimal, scores are
multiples of 5.
"""
import argparse
import pathlib
import random


def make_file(rng, nodes):
    depot = (round(rng.uniform(8.0, 17.0), 1), round(rng.uniform(8.0, 17.0), 1))
    lines = [f"n {nodes}", "m 1", "tmax 60.0", f"{depot[0]:.1f}\t{depot[1]:.1f}\t0"]
    for _ in range(nodes - 2):
        x = round(rng.uniform(0.0, 25.0), 1)
        y = round(rng.uniform(0.0, 25.0), 1)
        score = 5 * rng.randint(1, 4)
        lines.append(f"{x:.1f}\t{y:.1f}\t{score}")
    lines.append(f"{depot[0]:.1f}\t{depot[1]:.1f}\t0")
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/chao_like")
    parser.add_argument("--count", type=int, default=30)
    parser.add_argument("--nodes", type=int, default=33)
    parser.add_argument("--seed", type=int, default=20240501)
    args = parser.parse_args()

    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)
    names = []
    for i in range(1, args.count + 1):
        name = f"c{args.nodes}_{i:02d}.txt"
        (out / name).write_text(make_file(rng, args.nodes))
        names.append(name)
    (out / "index.txt").write_text("\n".join(names) + "\n")


if __name__ == "__main__":
    main()
