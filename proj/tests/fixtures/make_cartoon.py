"""Writes cartoon64.ppm: flat-colored shapes on a plain background, 64x64."""
import math
import sys

W = H = 64
BG = (238, 232, 213)
RED = (200, 30, 45)
NAVY = (20, 40, 110)
GOLD = (240, 180, 20)
GREEN = (40, 140, 70)
INK = (25, 25, 25)


def color_at(x, y):
    if 4 <= x < 12 and 6 <= y < 58:
        return RED
    if 16 <= x < 24 and 6 <= y < 40:
        return NAVY
    if 28 <= x < 36 and 6 <= y < 58:
        return RED
    if math.hypot(x - 50, y - 18) <= 10:
        return GOLD if math.hypot(x - 50, y - 18) > 5 else INK
    if y >= 40 and y < 58 and x >= 40 and (x - 40) <= (y - 40) * 1.2:
        return GREEN
    if 56 <= y < 60 and 2 <= x < 62:
        return INK
    return BG


def main(path):
    with open(path, "wb") as f:
        f.write(b"P6\n%d %d\n255\n" % (W, H))
        f.write(bytes(c for y in range(H) for x in range(W) for c in color_at(x, y)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "cartoon64.ppm")
