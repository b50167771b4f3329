#!/usr/bin/env python3
"""Regenerate the committed fixture datasets under data/fixtures/.

balance-scale is produced exactly from its defining rule (the label compares
left_weight*left_distance against right_weight*right_distance over the full
5^4 grid). seeds and vertebral-2c/3c are synthetic stand-ins that follow the
schema and class structure of the UCI originals so the pipeline can be
exercised offline; use `unarydt fetch` with a manifest pointing at the real
sources when reproducing published numbers matters.

Deterministic: fixed RNG seed, stable formatting. Run from the repo root:

    python3 scripts/make_fixtures.py
"""

import random
import zlib
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def write_csv(name, header, rows):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    text = "\n".join(lines) + "\n"
    path.write_text(text)
    crc = zlib.crc32(text.encode())
    print(f"{name}: {len(rows)} rows, crc32 0x{crc:08x}")
    return crc


def balance_scale():
    header = ["class", "left_weight", "left_distance", "right_weight",
              "right_distance"]
    rows = []
    for lw in range(1, 6):
        for ld in range(1, 6):
            for rw in range(1, 6):
                for rd in range(1, 6):
                    left = lw * ld
                    right = rw * rd
                    label = "B" if left == right else ("L" if left > right else "R")
                    rows.append([label, lw, ld, rw, rd])
    return write_csv("balance-scale.csv", header, rows)


def seeds(rng):
    header = ["area", "perimeter", "compactness", "kernel_length", "kernel_width",
              "asymmetry", "groove_length", "class"]
    # kernel size drives most features with heavy overlap between adjacent
    # varieties; shape and asymmetry carry weak independent signal, so a tree
    # has to combine several features
    profiles = {
        "Kama": dict(size=(14.5, 1.15), compact=(0.883, 0.017), asym=(2.55, 1.25),
                     width_off=0.0, groove_off=0.0),
        "Rosa": dict(size=(17.25, 1.3), compact=(0.886, 0.017), asym=(3.7, 1.3),
                     width_off=0.08, groove_off=0.3),
        "Canadian": dict(size=(12.4, 1.1), compact=(0.850, 0.017), asym=(5.0, 1.25),
                         width_off=-0.05, groove_off=0.0),
    }
    rows = []
    for variety, p in profiles.items():
        for _ in range(70):
            size = rng.gauss(*p["size"])
            area = round(size + rng.gauss(0.0, 0.4), 2)
            perimeter = round(8.05 + 0.472 * size + rng.gauss(0.0, 0.3), 2)
            compact = round(rng.gauss(*p["compact"]), 4)
            length = round(2.68 + 0.194 * size + rng.gauss(0.0, 0.22), 3)
            width = round(0.58 + 0.162 * size + p["width_off"] +
                          rng.gauss(0.0, 0.15), 3)
            asym = round(max(0.2, rng.gauss(*p["asym"])), 3)
            groove = round(2.25 + 0.188 * size + p["groove_off"] +
                           rng.gauss(0.0, 0.2), 3)
            rows.append([area, perimeter, compact, length, width, asym, groove,
                         variety])
    rng.shuffle(rows)
    return write_csv("seeds.csv", header, rows)


def vertebral(rng):
    header = ["pelvic_incidence", "pelvic_tilt", "lumbar_lordosis", "sacral_slope",
              "pelvic_radius", "spondylolisthesis_grade", "class"]
    # grade isolates SL; hernia vs normal is a radius threshold with a band
    # of cross-over cases, some of which only a high pelvic tilt gives away
    rows = []

    def clamp(v, lo, hi):
        return max(lo, min(hi, v))

    def dh_row():
        draw = rng.random()
        if draw < 0.15:  # normal-side radius, flagged by a high tilt
            radius = 121.5 + abs(rng.gauss(0.0, 5.0))
            tilt = 26.0 + abs(rng.gauss(0.0, 3.0))
            lord = rng.gauss(44.0, 11.0)
        elif draw < 0.30:  # normal-side radius, flagged by a high lordosis
            radius = 121.5 + abs(rng.gauss(0.0, 5.0))
            tilt = rng.gauss(16.0, 5.0)
            lord = 63.0 + abs(rng.gauss(0.0, 5.0))
        else:
            radius = 116.5 - abs(rng.gauss(0.0, 6.0))
            tilt = rng.gauss(16.0, 5.0)
            lord = rng.gauss(44.0, 11.0)
        return radius, tilt, lord, clamp(rng.gauss(2.5, 4.5), -8.0, 10.0)

    def no_row():
        flipped = rng.random() < 0.28
        if flipped:  # indistinguishable from a hernia case
            radius = 116.5 - abs(rng.gauss(0.0, 5.0))
            tilt = rng.gauss(16.0, 5.0)
        else:
            radius = 121.5 + abs(rng.gauss(0.0, 6.0))
            tilt = rng.gauss(14.0, 5.0)
        lord = rng.gauss(44.0, 11.0)
        return radius, tilt, lord, clamp(rng.gauss(2.2, 4.5), -8.0, 10.0)

    def sl_row():
        return (rng.gauss(114.5, 12.9), rng.gauss(26.6, 9.3),
                rng.gauss(64.1, 14.7),
                clamp(rng.gauss(51.9, 38.0), 20.0, 145.0))

    for label, n, make in (("DH", 60, dh_row), ("SL", 150, sl_row),
                           ("NO", 100, no_row)):
        for _ in range(n):
            radius, tilt, lord, grade = make()
            inc = rng.gauss(71.5, 14.4) if label == "SL" else rng.gauss(52.0, 12.0)
            slope = inc - tilt + rng.gauss(0.0, 6.0)
            rows.append([round(inc, 2), round(tilt, 2), round(lord, 2),
                         round(slope, 2), round(radius, 2), round(grade, 2), label])
    rng.shuffle(rows)
    crc3 = write_csv("vertebral-3c.csv", header, rows)
    two = [row[:-1] + ["AB" if row[-1] in ("DH", "SL") else "NO"] for row in rows]
    crc2 = write_csv("vertebral-2c.csv", header, two)
    return crc3, crc2


def main():
    rng = random.Random(20240811)
    balance_scale()
    seeds(rng)
    vertebral(rng)


if __name__ == "__main__":
    main()
