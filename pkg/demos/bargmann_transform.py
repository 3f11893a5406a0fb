"""Transform from node functions to Fock coefficients, and its unitarity.

Builds the kernel table once, pushes each normalized Hermite function
through the transform, and shows the coefficient images, the Gram
deviation from identity, and the coherent-state overlap against the
reproducing kernel.
"""
import numpy as np

from qcore import QContext
from qbargmann import (
    bargmann_basis_image,
    bargmann_unitarity_gram,
    build_kernel_table,
    coherent_overlap,
    tensor_unitarity_gram,
)
from qfock import kernel_eval


def main():
    ctx = QContext(q=0.5)
    table = build_kernel_table(ctx, modes=10)
    print(f"table: {table.modes + 1} modes on a ladder of {table.level + 1} levels")
    print()

    print("basis images: h_m maps to the single normalized monomial slot m")
    for m in (0, 1, 4, 8):
        img = bargmann_basis_image(m, table)
        mags = np.abs(np.asarray(img.coeffs))
        slot = int(np.argmax(mags))
        stray = float(np.max(np.delete(mags, slot)))
        print(f"  m = {m}: peak at slot {slot}, value {mags[slot]:.8f}, stray {stray:.2e}")
    print()

    g1 = bargmann_unitarity_gram(8, table)
    g2 = tensor_unitarity_gram(4, table)
    print(f"one-variable Gram (9 images):  max |G - I| = {g1.max_dev:.3e}")
    print(f"two-variable Gram (25 images): max |G - I| = {g2.max_dev:.3e}")
    print()

    print("coherent overlaps reproduce the kernel")
    gen = np.random.default_rng(9)
    for _ in range(4):
        z = complex(gen.uniform(-0.6, 0.6), gen.uniform(-0.6, 0.6))
        w = complex(gen.uniform(-0.6, 0.6), gen.uniform(-0.6, 0.6))
        lhs = coherent_overlap(z, w, table)
        rhs = kernel_eval(z, w, ctx).value
        print(f"  z = {z:.3f}, w = {w:.3f}: overlap {lhs:.8f}, kernel {rhs:.8f}")


if __name__ == "__main__":
    main()
