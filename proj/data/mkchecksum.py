#!/usr/bin/env python3
"""Wrap table bodies (*.body) with the versioned checksum header."""
import glob
import os
import sys


def fnv1a(data: bytes) -> int:
    h = 1469598103934665603
    for b in data:
        h ^= b
        h = (h * 1099511628211) % (1 << 64)
    return h


def main():
    here = os.path.dirname(os.path.abspath(__file__))
    for body in sorted(glob.glob(os.path.join(here, "*.body"))):
        name = os.path.basename(body)[: -len(".body")]
        with open(body, "rb") as f:
            data = f.read()
        out = os.path.join(here, name + ".dat")
        with open(out, "wb") as f:
            f.write(f"weylkit-table v1 {name}\n".encode())
            f.write(f"checksum fnv1a64:{fnv1a(data):016x}\n".encode())
            f.write(data)
        print("wrote", out)


if __name__ == "__main__":
    main()
