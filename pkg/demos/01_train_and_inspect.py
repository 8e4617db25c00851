"""Train the decision network on the built-in table and look inside.

Walks through the full training story: the 14-row table, the descent of
the sum-squared error, and the per-row output activations of the finished
network against the 0.8 decision threshold.

Run:  python3 demos/01_train_and_inspect.py
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from wallbot import ann

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- the training data: 14 scan-bit patterns and their maneuvers ----------
data = ann.builtin_training_set()
print(f"training set: {len(data.rows)} rows")
for bits, decision in data.rows:
    print(f"  {bits} -> {decision.value}")

# --- train, recording the error curve --------------------------------------
hp = ann.Hyperparams()
net = ann._init_network(hp)
errors = []
for epoch in range(hp.max_epochs):
    net, sse = ann.backprop_step(net, data, hp.learning_rate)
    errors.append(sse)
    if sse <= hp.target_error and ann._classifies_all(net, data, ann.DecisionConfig()):
        break
print(f"\nconverged after {len(errors)} epochs, final sse {errors[-1]:.5f}")

plt.figure(figsize=(7, 4))
plt.semilogy(errors)
plt.xlabel("epoch")
plt.ylabel("sum-squared error")
plt.title("Full-batch gradient descent on the decision table")
plt.grid(True, which="both", alpha=0.3)
plt.tight_layout()
plt.savefig(OUT / "training_error.png", dpi=120)
print(f"wrote {OUT / 'training_error.png'}")

# --- inspect: every row should have exactly one output >= 0.8 --------------
print("\nper-row activations (hot class marked *):")
header = " ".join(f"{d.value:>9s}" for d in ann.OUTPUT_ORDER)
print(f"  {'bits':17s} {header}")
for bits, decision in data.rows:
    _, out = ann.forward(net, bits)
    cells = []
    for k, v in enumerate(out):
        mark = "*" if ann.OUTPUT_ORDER[k] is decision else " "
        cells.append(f"{v:+.3f}{mark}   ")
    print(f"  {str(bits):17s} {' '.join(cells)}")

decided = ann.classify(net, (1, 0, 0, 0, 1))
print(f"\nclassify((1,0,0,0,1)) -> {decided.value}")
