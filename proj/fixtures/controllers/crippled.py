#!/usr/bin/env python3
"""Deliberately weak controller: speaks the protocol correctly but caps its
forward speed at 0.2 m/s, so deadline-tight cases fail functionally."""
import math
import sys

V_CAP = 0.2


def main():
    state = None
    for line in sys.stdin:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "HELLO":
            print("READY", flush=True)
        elif parts[0] == "STATE":
            state = (float(parts[1]), float(parts[2]), float(parts[3]))
        elif parts[0] == "TARGET":
            tx, ty = float(parts[1]), float(parts[2])
            x, y, theta = state
            d = math.hypot(tx - x, ty - y)
            if d <= 0.1:
                print("CMD 0 0", flush=True)
                continue
            e = math.atan2(ty - y, tx - x) - theta
            e = math.atan2(math.sin(e), math.cos(e))
            v = min(V_CAP, 2.0 * d * max(0.0, math.cos(e)))
            print(f"CMD {v} {4.0 * e}", flush=True)


if __name__ == "__main__":
    main()
