"""
Carry-free integer arithmetic in phasor codes
=============================================

An integer is represented by one phasor per modulus in {3, 5, 7}, with
phases locked to roots of unity, all multiplied into a single vector.
Adding two integers is then a single elementwise multiply: the residues
advance independently per channel and never carry.  The representable
range is 3 * 5 * 7 = 105, so everything wraps modulo 105.
"""

from phasorlisp import (
    ModuliSet,
    add_bind,
    decode_residue,
    encode_residue,
    make_codebook,
    mod_inverse,
    mul_bind,
    negate,
    new_rng,
)

cb = make_codebook(ModuliSet((3, 5, 7)), dim=1000, rng=new_rng(42))
print(f"moduli {list(cb.moduli)}, range {cb.moduli.range}, dim {cb.dim}")

# addition without decoding either operand
a, b = 17, 25
v = add_bind(encode_residue(cb, a), encode_residue(cb, b))
print(f"{a} + {b} decodes to {decode_residue(cb, v)}")

# the sum wraps at 105
v = add_bind(encode_residue(cb, 100), encode_residue(cb, 10))
print(f"100 + 10 decodes to {decode_residue(cb, v)} (mod 105)")

# negation is the complex conjugate
v = negate(encode_residue(cb, 17))
print(f"-17 decodes to {decode_residue(cb, v)} (= 88 mod 105)")

# multiplication and division through the modular inverse
v = mul_bind(cb, encode_residue(cb, 6), encode_residue(cb, 7))
print(f"6 * 7 decodes to {decode_residue(cb, v)}")

inv4 = mod_inverse(cb, encode_residue(cb, 4))
print(f"inverse of 4 decodes to {decode_residue(cb, inv4)} (4 * 79 = 316 = 1 mod 105)")
v = mul_bind(cb, encode_residue(cb, 44), inv4)
print(f"44 / 4 decodes to {decode_residue(cb, v)}")

# both decoding strategies agree
v = encode_residue(cb, 93)
print("exhaustive decode:", decode_residue(cb, v, method="exhaustive"))
print("resonator decode: ", decode_residue(cb, v, method="resonator"))
