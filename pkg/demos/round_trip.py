"""Build T from a random phi (or from chi, xi) and take it apart again.

    python3 demos/round_trip.py [seed]
"""

import sys

from rank2curv.curvature import make_T_phi
from rank2curv.exactlin import SignatureSpace, range_of
from rank2curv.reconstruct import decompose, line_of_image
from rank2curv.sampling import random_admissible_phi, random_linear_map


def show(label, T, phi, seed):
    d = decompose(T, seed=seed)
    agree = sum(line == line_of_image(d.phi, a) for a, line in d.probes)
    print(f"{label}: {d.variant}, eps = {d.epsilon}, mu = {d.mu}")
    print(f"  range(phi') == range(phi): {range_of(d.phi.matrix) == range_of(phi.matrix)}")
    print(f"  probe lines matching [phi'(a)]: {agree}/{len(d.probes)}")


def main(seed):
    phi = random_admissible_phi(1, 5, 1, seed)
    show("self-adjoint phi on (1,5), kernel dim 1", make_T_phi(phi), phi, seed)
    show("same phi, T scaled by -5/2", make_T_phi(phi).scaled("-5/2"), phi, seed)
    A, B = SignatureSpace.standard(0, 6), SignatureSpace.standard(2, 5)
    f = random_linear_map(A, B, seed)
    show("phi: (0,6) -> (2,5)", make_T_phi(f), f, seed)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 0)
