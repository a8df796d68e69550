"""Independent reference values for the built-in coefficient fixtures.

Brute-force dense scans and finite differences with numpy; no code is shared
with the C++ library. Output is frozen into the unit tests.
"""
import numpy as np

OFFLINE = {
    "OP": [-0.100, 2.082, -10.710, 25.300, -32.100, 22.620, -8.348, 1.258],
    "SP": [-0.516, 3.952, -12.800, 22.660, -23.610, 14.460, -4.807, 0.670],
    "OT": [-0.009, 0.076, -0.252, 0.446, -0.462, 0.281, -0.093, 0.013],
    "ST": [0.112, -0.837, 2.486, -4.048, 3.901, -2.222, 0.6925, -0.091],
}
ONLINE = {
    "OP": [-0.276, 1.463, -2.905, 2.783, -1.304, 0.241],
    "SP": [0.150, -0.866, 1.992, -2.256, 1.252, -0.272],
    "OT": [0.019, -0.090, 0.172, -0.167, 0.082, -0.016],
}


def first_crossing(c, a, lo, hi, step=1e-7):
    g = np.arange(lo, hi + step / 2, step)
    v = np.polyval(c, g)
    idx = np.nonzero(v >= a)[0]
    return None if len(idx) == 0 else g[idx[0]]


def main():
    d0, d1 = 0.8, 1.5
    for name, table in (("offline", OFFLINE), ("online", ONLINE)):
        for k, c in table.items():
            for a in (1e-3, 1.6e-3):
                x = first_crossing(c, a, d0, d1)
                print(f"{name} {k} a={a:g} crossing={x!r}")
    for k, c in OFFLINE.items():
        for d in (0.9837, 1.0857, 1.4385, 1.5, 1.528):
            print(f"offline {k} f({d})={np.polyval(c, d)!r}")
        d = 0.9837
        h = 1e-6
        fd = (np.polyval(c, d + h) - np.polyval(c, d - h)) / (2 * h) * (d1 - d0)
        print(f"offline {k} g_fd(0.9837)={fd!r}")


if __name__ == "__main__":
    main()
