"""16-bit fixed-point export: what actually goes onto a microcontroller.

Quantizes the trained weights to Q12 (value * 4096 as int16), shows the
file format, and proves the integer-only inference path reproduces the
float decisions on every one of the 32 possible scan-bit inputs.

Run:  python3 demos/04_fixed_point.py
"""

from wallbot import (
    builtin_training_set,
    classify,
    classify_fixed,
    export_weights_fixed,
    quantize_network,
    train,
)

net = train(builtin_training_set())
FRAC_BITS = 12
qnet = quantize_network(net, FRAC_BITS)

print(f"Q{FRAC_BITS} quantization: integer = round(weight * 2^{FRAC_BITS})")
print(f"  float w1[0,0] = {net.w1[0, 0]:+.6f}")
print(f"  fixed w1[0,0] = {int(qnet.w1[0, 0]):+d}  (back to float: {qnet.w1[0, 0] / 4096:+.6f})")

text = export_weights_fixed(net, FRAC_BITS)
print("\nfixed-point weight file starts with:")
for line in text.splitlines()[:4]:
    print(f"  {line}")

# --- exhaustive agreement: float tanh network vs integer-only inference ----
print("\nall 32 inputs, float vs integer decisions:")
agree = 0
for value in range(32):
    bits = tuple((value >> (4 - i)) & 1 for i in range(5))
    f = classify(net, bits)
    q = classify_fixed(qnet, bits)
    match = f is q
    agree += match
    f_name = f.value if f else "undecided"
    q_name = q.value if q else "undecided"
    flag = "" if match else "   <-- MISMATCH"
    print(f"  {bits}  float={f_name:9s} fixed={q_name:9s}{flag}")
print(f"\n{agree}/32 inputs agree")

# worst-case quantization error is half an ulp of the Q format
ulp = 2.0 ** -FRAC_BITS
print(f"per-weight quantization error bound: {ulp / 2:.2e} (half of 2^-{FRAC_BITS})")
