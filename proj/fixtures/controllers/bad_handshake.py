#!/usr/bin/env python3
"""Protocol violator: answers the handshake with the wrong token."""
import sys

for line in sys.stdin:
    if line.split() and line.split()[0] == "HELLO":
        print("HI THERE", flush=True)
    else:
        print("CMD 0 0", flush=True)
