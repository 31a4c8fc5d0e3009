"""Build each operator family and look at the matrices and spectra.

Shows the three ways an initial operator can be described (Pauli terms,
projector shorthand, diagonal values), the text file format, and the
closed-form ground states next to their numerically computed versions.
"""

import numpy as np

from gapcert import (
    CaseParams,
    build_case,
    case_h_i,
    ground_state,
    ground_state_reference,
    serialize_instance,
    to_matrix,
)

np.set_printoptions(precision=4, suppress=True, linewidth=100)


def show(params, k=None):
    print("-" * 64)
    print(f"family: {params.family}  n = {params.n_qubits}")
    h = to_matrix(case_h_i(params))
    print("initial operator (real part):")
    print(h.entries.real)
    gs = ground_state(h)
    print(f"ground energy {gs.energy:.6f}, gap to next level {gs.degeneracy_gap:.6f}")
    if params.family in ("xy_hopping", "heisenberg"):
        print("(ground states live in fixed-weight blocks; showing k =", k, ")")
        reference = ground_state_reference(params, k=k)
    else:
        reference = ground_state_reference(params)
    print("closed-form ground state:", np.round(reference.real, 4))


def main():
    show(CaseParams("bit_rotation", 2, a0=0.5, ai=(-1.0, -0.5)))
    show(CaseParams("xy_hopping", 2), k=1)
    show(CaseParams("heisenberg", 2, aij=((0, 1, -1.0),)), k=1)
    show(CaseParams("projector_uniform", 2))
    show(CaseParams("transverse_positive", 2, g=1.0))

    print("=" * 64)
    print("every instance has a canonical text form:\n")
    instance = build_case(CaseParams("bit_rotation", 2, ai=(-1.0, -0.5)))
    print(serialize_instance(instance))


if __name__ == "__main__":
    main()
