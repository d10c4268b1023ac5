"""
Phasor vectors: binding, unbinding, superposition
=================================================

Every value in this library is a vector of complex numbers on the unit
circle.  Two such vectors combine by elementwise multiplication (binding),
which is exactly invertible by multiplying with the conjugate.  Sums of
vectors (superpositions) stay recognizably similar to their parts.
"""

import numpy as np

from phasorlisp import (
    bind,
    new_rng,
    normalize,
    random_symbol,
    similarity,
    superpose,
    unbind,
)

D = 1000
rng = new_rng(0)

# two fresh random symbols are nearly orthogonal
u = random_symbol(rng, D)
v = random_symbol(rng, D)
print(f"similarity(u, u) = {similarity(u, u):+.4f}")
print(f"similarity(u, v) = {similarity(u, v):+.4f}")

# binding makes a vector dissimilar to both inputs
w = bind(u, v)
print(f"similarity(bind(u, v), u) = {similarity(w, u):+.4f}")
print(f"similarity(bind(u, v), v) = {similarity(w, v):+.4f}")

# unbinding is exact, not approximate
recovered = unbind(w, u)
print(f"max |unbind(bind(u, v), u) - v| = {np.max(np.abs(recovered - v)):.2e}")

# a bundle of five symbols still points at each of them
parts = [random_symbol(rng, D) for _ in range(5)]
bundle = parts[0]
for p in parts[1:]:
    bundle = superpose(bundle, p)
bundle = normalize(bundle)

stranger = random_symbol(rng, D)
print("bundle vs its five constituents:",
      " ".join(f"{similarity(bundle, p):+.3f}" for p in parts))
print(f"bundle vs a stranger:           {similarity(bundle, stranger):+.3f}")
