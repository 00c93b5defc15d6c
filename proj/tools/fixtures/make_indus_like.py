#!/usr/bin/env python3
"""Generate a synthetic Indus-like sign corpus (Format C, space-delimited sign numbers).

Sequences are stored in right-to-left reading order, so the left terminal is
where a reading ends. One "jar" sign closes about a third of the sequences;
the most common opening sign starts about 6% of them. Deterministic for a
given --seed.
"""
import argparse
import random


def zipf_weights(n, exponent):
    return [1.0 / (rank ** exponent) for rank in range(1, n + 1)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1752)
    parser.add_argument("--sequences", type=int, default=1752)
    parser.add_argument("--signs", type=int, default=400)
    parser.add_argument("--out", default="data/synthetic/indus_like.txt")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    signs = list(range(1, args.signs + 1))
    rng.shuffle(signs)
    jar = 342
    opener = 267
    others = [s for s in signs if s not in (jar, opener)]

    interior_w = zipf_weights(len(others), 1.0)
    opening_w = zipf_weights(len(others), 0.55)
    opening_scale = 0.93 / sum(opening_w)

    def closing_sign():
        if rng.random() < 0.33:
            return jar
        return rng.choices(others, weights=interior_w)[0]

    def opening_sign():
        if rng.random() < 0.07:
            return opener
        return rng.choices(others, weights=[w * opening_scale for w in opening_w])[0]

    def length():
        n = 2
        while n < 13 and rng.random() < 0.71:
            n += 1
        return n

    seen = set()
    rows = []
    while len(rows) < args.sequences:
        n = length()
        body = [rng.choices(others, weights=interior_w)[0] for _ in range(n - 2)]
        seq = tuple([closing_sign()] + body + [opening_sign()])
        if seq in seen:
            continue
        seen.add(seq)
        rows.append(seq)

    with open(args.out, "w", encoding="utf-8") as fh:
        for seq in rows:
            fh.write(" ".join(str(s) for s in seq) + "\n")


if __name__ == "__main__":
    main()
