#!/usr/bin/env python3
"""Independent check of the similarity constants and reachability counts.

Reads the fixture files with regular expressions (no shared code with the C++
parser), computes Jaccard similarities over the four label sets and enumerates
reachable markings by brute force. Prints the values the C++ tests pin.
"""
import itertools
import re
import sys
from fractions import Fraction
from pathlib import Path

FIX = Path(__file__).resolve().parents[2] / "fixtures"


def norm(s):
    return " ".join(s.split()).lower()


def strip_comments(text):
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def read_proc(name):
    text = strip_comments((FIX / name).read_text())
    places = re.findall(r'place\s+(\S+)\s+"([^"]*)"\s*(start|exit)?\s*;', text)
    frags = re.findall(r'fragment\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s+strategy\s+"([^"]*)"', text)
    marking = dict((k, int(v)) for k, v in re.findall(r'(\w+)\s*:\s*(\d+)', re.search(r'marking\s*\{([^}]*)\}', text).group(1)))
    return {
        "places": [(p, l, r) for p, l, r in places],
        "fragments": [(f, [s], [t], st) for f, s, t, st in frags],
        "marking": marking,
    }


def read_goal_labels(name):
    text = strip_comments((FIX / name).read_text())
    return {norm(l) for _, l, rest in re.findall(r'node\s+(\S+)\s+goal\s+"([^"]*)"([^;]*);', text)
            if "erp" not in rest.split()}


def read_components(name):
    text = strip_comments((FIX / name).read_text())
    out = set()
    for line in text.splitlines():
        out.update(norm(c) for c in re.findall(r'"([^"]*)"', line))
    return out


def scenario(goals, tobe, cmap):
    m = read_proc(tobe)
    return {
        "goals": read_goal_labels(goals),
        "places": {norm(l) for _, l, _ in m["places"]},
        "strategies": {norm(f[3]) for f in m["fragments"]},
        "components": read_components(cmap),
    }


def jaccard(a, b):
    if not a and not b:
        return Fraction(1)
    return Fraction(len(a & b), len(a | b))


def similarity(x, y):
    return sum(Fraction(1, 4) * jaccard(x[k], y[k]) for k in ("goals", "places", "strategies", "components"))


def reachable(model):
    start = tuple(sorted(model["marking"].items()))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            d = dict(m)
            for _, srcs, tgts, _ in model["fragments"]:
                if all(d.get(s, 0) >= 1 for s in srcs):
                    e = dict(d)
                    for s in srcs:
                        e[s] -= 1
                    for t in tgts:
                        e[t] = e.get(t, 0) + 1
                    key = tuple(sorted((k, v) for k, v in e.items() if v))
                    if key not in seen:
                        seen.add(key)
                        nxt.append(key)
        frontier = nxt
    return seen


def main():
    et = scenario("electrotech.goals", "electrotech-tobe.proc", "electrotech.cmap")
    sd = scenario("alveo.goals", "alveo-sd-tobe.proc", "alveo-sd.cmap")
    lg = scenario("alveo.goals", "alveo-logistics-tobe.proc", "alveo-logistics.cmap")
    q = scenario("query-logistics.goals", "query-logistics-tobe.proc", "query-logistics.cmap")

    pinned = similarity(et, lg)
    print(f"similarity(ElectroTech, ALVEO_logistics) = {pinned} = {float(pinned):.17g}")
    cases = {"ElectroTech": et, "ALVEO_SD": sd, "ALVEO_logistics": lg}
    for a, b in itertools.combinations(cases, 2):
        assert similarity(cases[a], cases[b]) == similarity(cases[b], cases[a])
    ranking = sorted(cases, key=lambda k: (-similarity(q, cases[k]), k))
    for k in ranking:
        s = similarity(q, cases[k])
        print(f"query vs {k} = {s} = {float(s):.17g}")

    for name in sorted(p.name for p in FIX.glob("*.proc")):
        print(f"reachable({name}) = {len(reachable(read_proc(name)))}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
