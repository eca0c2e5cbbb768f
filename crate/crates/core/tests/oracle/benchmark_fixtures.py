"""Independent oracle for the benchmark regression fixtures.

Bi-fidelity values come from the MF2 package (pip install mf2); tri-fidelity
values from a direct numpy transcription of the closed forms. Prints Rust
fixture tuples `(id, dim, level, &[x...], value)` for tests/benchmark_fixtures.rs.
"""
import numpy as np
import mf2

PI = np.pi

BIF = {
    "forrester2f": (mf2.forrester, [[1 / 3], [0.0], [0.75], [0.1]]),
    "booth2f": (mf2.booth, [[1.0, 3.0], [-10.0, 10.0], [2.5, -4.0]]),
    "branin2f": (mf2.branin, [[0.0, 0.0], [-5.0, 15.0], [3.0, 2.5], [9.5, 7.25]]),
    "park91a2f": (mf2.park91a, [[0.5, 0.5, 0.5, 0.5], [1.0, 0.0, 1.0, 0.25], [0.1, 0.9, 0.3, 0.7]]),
    "hartmann6_2f": (mf2.hartmann6, [[0.2017, 0.15, 0.4769, 0.2753, 0.3117, 0.6573],
                                      [0.5] * 6, [0.1, 0.9, 0.3, 0.7, 0.0, 1.0]]),
    "borehole2f": (mf2.borehole, [[0.10, 25050, 89335, 1050, 89.55, 760, 1400, 10950],
                                  [0.05, 100, 63070, 990, 63.1, 700, 1120, 9855],
                                  [0.15, 50000, 115600, 1110, 116, 820, 1680, 12045]]),
}


def forrester3f(level, x):
    x = x[0]
    s = np.sin(12 * x - 4)
    return {"HF": (5.5 * x - 2.5) ** 2 * s,
            "MF": 0.75 * (6 * x - 2) ** 2 * s + 5 * (x - 0.5) - 2,
            "LF": 0.5 * (6 * x - 2) ** 2 * s + 10 * (x - 0.5) - 5}[level]


def rosenbrock3f(level, x):
    x = np.asarray(x, float)
    f1 = np.sum(100 * (x[1:] - x[:-1] ** 2) ** 2 + (1 - x[:-1]) ** 2)
    if level == "HF":
        return f1
    if level == "MF":
        return np.sum(50 * (x[1:] - x[:-1] ** 2) ** 2 + (-2 - x[:-1]) ** 2) - np.sum(0.5 * x)
    return (f1 - 4 - np.sum(0.5 * x)) / (10 + np.sum(0.25 * x))


def rotation(d, theta):
    r = np.eye(d)
    c, s = np.cos(theta), np.sin(theta)
    for k in range(d - 1):
        g = np.eye(d)
        g[k, k], g[k, k + 1], g[k + 1, k], g[k + 1, k + 1] = c, -s, s, c
        r = g @ r
    return r


def rastrigin3f(level, x):
    x = np.asarray(x, float)
    z = rotation(len(x), 0.2) @ (x - 0.1)
    phi = {"HF": 10000, "MF": 5000, "LF": 2500}[level]
    t = 1 - 0.0001 * phi
    base = np.sum(z ** 2 + 1 - np.cos(10 * PI * z))
    return base + np.sum(t * np.cos(10 * PI * t * z + 0.5 * PI * t + PI) ** 2)


TRI = {
    "forrester3f": (forrester3f, [[0.5], [0.0], [0.9]]),
    "rosenbrock3f": (rosenbrock3f, [[1.0, 1.0], [-2.0, 2.0], [0.5, -1.5],
                                    [1.0] * 5, [0.3, -0.7, 1.2, -1.9, 0.05]]),
    "rastrigin3f": (rastrigin3f, [[0.1, 0.1], [-0.1, 0.2], [0.05, 0.15],
                                  [0.1] * 5, [-0.05, 0.0, 0.12, 0.2, -0.1]]),
}


def fmt(v):
    return repr(float(v))


rows = []
for name, (fn, pts) in BIF.items():
    for p in pts:
        hi = fn.high(np.atleast_2d(p))[0]
        lo = fn.low(np.atleast_2d(p))[0]
        rows.append((name, len(p), "Hf", p, hi))
        rows.append((name, len(p), "Lf", p, lo))
for name, (fn, pts) in TRI.items():
    for p in pts:
        for lvl in ("HF", "MF", "LF"):
            rows.append((name, len(p), lvl.capitalize(), p, fn(lvl, p)))

for name, d, lvl, p, v in rows:
    xs = ", ".join(fmt(c) for c in p)
    print(f'    ("{name}", {d}, FidelityLevel::{lvl}, &[{xs}], {fmt(v)}),')
