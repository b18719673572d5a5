"""
The xor automaton and injectivity
=================================

With a correct path layer every tile xors its bit with the bit of its
successor.  On a closed cycle the all-0 and all-1 configurations have the
same image, so the global map is not injective.  Frozen tiles and broken
tile layers change the verdict, and two deciders agree on it.
"""

import random

from hyptess.ca import (
    XorAutomaton, as_automaton, bit_choices, cycle_fixture, injectivity_exhaustive, injectivity_gf2,
    random_fixture, two_tile_tset, witness_pair, xor_step,
)
from hyptess.heptagrid import root

xa, cfg = cycle_fixture()
zero, ones = witness_pair(xa, cfg)
print("same image:", xor_step(xa, zero) == xor_step(xa, ones))

exh = injectivity_exhaustive(as_automaton(xa), cfg, bit_choices(cfg))
lin = injectivity_gf2(xa, cfg)
print(exh.injective, exh.checked, lin.injective, [len(k) for k in lin.kernel])

# breaking the T-layer at one tile cuts the cycle
broken = cfg.replace({root(3): cfg[root(3)]._replace(t="v")})
xb = XorAutomaton(xa.D, two_tile_tset())
print("broken cycle injective:", injectivity_gf2(xb, broken).injective)

rng = random.Random(1)
agree = 0
for _ in range(20):
    xr, cr = random_fixture(rng)
    agree += injectivity_gf2(xr, cr).injective == injectivity_exhaustive(
        as_automaton(xr), cr, bit_choices(cr)).injective
print(agree, "/ 20 random fixtures agree")
