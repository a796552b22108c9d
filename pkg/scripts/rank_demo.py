#!/usr/bin/env python3
"""Demo: certify ranks of a few elements and print the refinement trail."""

from fractions import Fraction

from shiftrank import BINARY, QQ, auto_refine, parse_expr, rank_report


def show(text: str, level: int, budget: int = 3000):
    e = parse_expr(text, BINARY, QQ)
    print(f"== {text}  (level {level}) ==")
    for iv in auto_refine(e, level, width_target=Fraction(1, 10**4), word_budget=budget):
        print(f"  kmax={iv.kmax:>3}  words={iv.words_used:>6}  "
              f"[{float(iv.lower):.6f}, {float(iv.upper):.6f}]  width={float(iv.width):.2e}")


def main():
    show("chi(0;0)", 0)                 # a half-measure cylinder
    show("chi(0;0) * t", 0)             # the shift off the level-0 base
    show("t - 1", 0, budget=60)         # truncation error keeps this one wide
    print("\nper-word report for the level-1 base indicator, kmax=6:")
    doc = rank_report(parse_expr("chi(-1;111)", BINARY, QQ), 1, 6)
    for row in doc["per_word"]:
        print(f"  {row['content']:>12}  k={row['k']}  mu={row['measure']:>7}  rank={row['rank']}")
    print(f"  partial = {doc['partial']}, tail = {doc['tail']}")


if __name__ == "__main__":
    main()
