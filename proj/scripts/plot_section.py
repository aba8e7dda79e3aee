#!/usr/bin/env python3
# Copyright 2026 The safedoa Authors
# SPDX-License-Identifier: Apache-2.0
"""Contour plot of one or more section CSVs written by `doa section`."""

import argparse
import csv

import matplotlib.pyplot as plt
import numpy as np


def load(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    ni = max(int(r["i"]) for r in rows) + 1
    nj = max(int(r["j"]) for r in rows) + 1
    xi = np.array([float(r["x_i"]) for r in rows]).reshape(ni, nj)
    xj = np.array([float(r["x_j"]) for r in rows]).reshape(ni, nj)
    v = np.array([float(r["value"]) for r in rows]).reshape(ni, nj)
    return xi, xj, v


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", nargs="+")
    parser.add_argument("--out", default="section.png")
    args = parser.parse_args()

    fig, ax = plt.subplots()
    for path in args.csv:
        xi, xj, v = load(path)
        cs = ax.contour(xi, xj, np.minimum(v, 10.0), levels=[1.0])
        cs.collections[0].set_label(path)
    ax.set_xlabel("x_i")
    ax.set_ylabel("x_j")
    ax.legend()
    fig.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
