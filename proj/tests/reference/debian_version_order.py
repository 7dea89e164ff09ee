#!/usr/bin/env python3
"""Reference implementation of the Debian version comparison algorithm
(Debian Policy 5.6.12), used to freeze expected orderings into the C++
unit tests. Every verdict printed here is cross-checked against
`dpkg --compare-versions` when dpkg is present on the machine.

Usage: debian_version_order.py            # print verdicts for the frozen pair list
       debian_version_order.py A B        # compare two versions
"""

import subprocess
import shutil
import sys


def split_version(v):
    epoch = 0
    rest = v
    if ":" in rest:
        e, rest = rest.split(":", 1)
        epoch = int(e)
    if "-" in rest:
        upstream, revision = rest.rsplit("-", 1)
    else:
        upstream, revision = rest, ""
    return epoch, upstream, revision


def char_order(c):
    # '~' sorts before everything, even the empty string; letters before
    # non-letters; otherwise ASCII.
    if c == "~":
        return -1
    if c.isalpha():
        return ord(c)
    return ord(c) + 256


def verrevcmp(a, b):
    ia = ib = 0
    while ia < len(a) or ib < len(b):
        # non-digit part
        while (ia < len(a) and not a[ia].isdigit()) or (ib < len(b) and not b[ib].isdigit()):
            ca = char_order(a[ia]) if ia < len(a) and not a[ia].isdigit() else 0
            cb = char_order(b[ib]) if ib < len(b) and not b[ib].isdigit() else 0
            if ca != cb:
                return -1 if ca < cb else 1
            if ia < len(a) and not a[ia].isdigit():
                ia += 1
            if ib < len(b) and not b[ib].isdigit():
                ib += 1
        # digit part
        na = 0
        while ia < len(a) and a[ia].isdigit():
            na = na * 10 + int(a[ia])
            ia += 1
        nb = 0
        while ib < len(b) and b[ib].isdigit():
            nb = nb * 10 + int(b[ib])
            ib += 1
        if na != nb:
            return -1 if na < nb else 1
    return 0


def compare(a, b):
    ea, ua, ra = split_version(a)
    eb, ub, rb = split_version(b)
    if ea != eb:
        return -1 if ea < eb else 1
    c = verrevcmp(ua, ub)
    if c != 0:
        return c
    return verrevcmp(ra, rb)


PAIRS = [
    ("1.0", "1.0"),
    ("2.7-1", "2.7-2"),
    ("1:0.9", "2.0"),
    ("1.0~rc1", "1.0"),
    ("1.0~~", "1.0~"),
    ("1.0", "1.0-0"),
    ("1.0-1", "1.0-1.1"),
    ("2.5.5-1.1", "2.5.5-1.1"),
    ("0.5", "0.5+b1"),
    ("1.2a", "1.2"),
    ("1.2a", "1.2b"),
    ("3.0.3", "3.0.12"),
    ("1.0-alpha", "1.0-1"),
    ("09", "9"),
    ("0.9.8f-5", "0.9.8g-1"),
    ("2:1.0", "1:9.9"),
    ("1.1.0", "1.1"),
    ("1.1a", "1.1"),
    ("1.1~a", "1.1"),
    ("7.6p2-4", "7.6-0"),
    ("1.0.5", "1.0.5+svn20090808"),
    ("4.3.2-1", "4.3.2"),
]


def dpkg_verdict(a, b):
    for op, name in (("lt", -1), ("eq", 0), ("gt", 1)):
        r = subprocess.run(["dpkg", "--compare-versions", a, op, b],
                           capture_output=True)
        if r.returncode == 0:
            return name
    raise RuntimeError(f"dpkg gave no verdict for {a} vs {b}")


def main():
    if len(sys.argv) == 3:
        print(compare(sys.argv[1], sys.argv[2]))
        return
    have_dpkg = shutil.which("dpkg") is not None
    names = {-1: "less", 0: "equal", 1: "greater"}
    for a, b in PAIRS:
        c = compare(a, b)
        if have_dpkg:
            d = dpkg_verdict(a, b)
            assert c == d, f"mismatch vs dpkg on ({a}, {b}): ref={c} dpkg={d}"
        print(f'{{"{a}", "{b}", Ordering::{names[c].capitalize()}}},')
    if have_dpkg:
        print("// all verdicts cross-checked against dpkg --compare-versions",
              file=sys.stderr)


if __name__ == "__main__":
    main()
