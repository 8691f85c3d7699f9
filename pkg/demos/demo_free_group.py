"""Negative control: the chain-level 2-form on a free group is not closed.

H^2 of a free group vanishes, so the cohomology-valued statement is vacuous
there; pairing the cup 2-cocycle against a fixed non-cycle bar chain instead
produces a chain-level 2-form whose exterior derivative is genuinely nonzero.
Pairing against an honest 2-cycle (necessarily a boundary) gives zero, which
separates the two phenomena.
"""

import numpy as np

from charforms import GroupSpec
from charforms.charts import free_group_demo


def main():
    report = free_group_demo(2, GroupSpec("SL", 2),
                             rng=np.random.default_rng(7))
    print("chain-level 2-form on Hom(F_2, SL(2)) with the Killing form:")
    print(f"  max |d omega| = {report['max_d']:.3f}")
    print(f"  coefficient scale = {report['scale']:.3f}")
    print(f"  ratio = {report['max_d'] / report['scale']:.3f} "
          "(>= 1e-3 confirms non-closedness)")
    print()
    print("same cocycles paired against an honest 2-cycle (a boundary):")
    print(f"  |pairing| = {report['cycle_pairing']:.2e} "
          f"(chain-level values have size {report['chain_pairing_scale']:.2f})")
    print()
    print(report["note"])


if __name__ == "__main__":
    main()
