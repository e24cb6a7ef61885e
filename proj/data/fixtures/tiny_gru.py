"""Writes tiny_gru.txt: weights of a V=5, E=H=3 GRU language model and the
distributions/bit costs it assigns to a fixed unit sequence.

Matrices are listed column-major, matching the C++ parameter layout.
Gates: z = sig(Wz x + Uz h + bz), r = sig(Wr x + Ur h + br),
n = tanh(Wn x + Un (r*h) + bn), h' = (1 - z) h + z n, p = softmax(Wo h + bo).
"""
import numpy as np

V, E, H = 5, 3, 3
SEQUENCE = [2, 0, 4, 1, 3]

shapes = [("embedding", (E, V)), ("w_update", (H, E)), ("u_update", (H, H)), ("b_update", (H,)),
          ("w_reset", (H, E)), ("u_reset", (H, H)), ("b_reset", (H,)), ("w_cand", (H, E)),
          ("u_cand", (H, H)), ("b_cand", (H,)), ("out_w", (V, H)), ("out_b", (V,))]

params = {}
k = 0
for name, shape in shapes:
    size = int(np.prod(shape))
    values = np.array([0.9 * np.sin(1.3 * (k + i) + 0.4) for i in range(size)])
    k += size
    params[name] = values.reshape(shape, order="F")

sig = lambda v: 1.0 / (1.0 + np.exp(-v))


def dist(h):
    logits = params["out_w"] @ h + params["out_b"]
    e = np.exp(logits - logits.max())
    return e / e.sum()


def step(h, u):
    x = params["embedding"][:, u]
    z = sig(params["w_update"] @ x + params["u_update"] @ h + params["b_update"])
    r = sig(params["w_reset"] @ x + params["u_reset"] @ h + params["b_reset"])
    n = np.tanh(params["w_cand"] @ x + params["u_cand"] @ (r * h) + params["b_cand"])
    return (1 - z) * h + z * n


h = np.zeros(H)
lines = [f"dims {V} {E} {H}"]
for name, _ in shapes:
    lines.append(name + " " + " ".join(repr(float(v)) for v in params[name].reshape(-1, order="F")))
lines.append("sequence " + " ".join(str(u) for u in SEQUENCE))
bits = []
for t, u in enumerate(SEQUENCE):
    p = dist(h)
    lines.append(f"dist{t} " + " ".join(repr(float(v)) for v in p))
    bits.append(-np.log2(p[u]))
    h = step(h, u)
lines.append("bits " + " ".join(repr(float(b)) for b in bits))
open("tiny_gru.txt", "w").write("\n".join(lines) + "\n")
