#!/usr/bin/env python3
"""Reference external controller: the same proportional tracking law as the
built-in controller (k_v=2, k_omega=4, capture radius 0.1)."""
import math
import sys

K_V = 2.0
K_OMEGA = 4.0
CAPTURE = 0.1


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
            if d <= CAPTURE:
                print("CMD 0 0", flush=True)
                continue
            e = math.atan2(ty - y, tx - x) - theta
            e = math.atan2(math.sin(e), math.cos(e))
            v = K_V * d * max(0.0, math.cos(e))
            print(f"CMD {v} {K_OMEGA * e}", flush=True)


if __name__ == "__main__":
    main()
