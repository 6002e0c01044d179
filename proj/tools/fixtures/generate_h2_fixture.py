#!/usr/bin/env python3
"""Regenerate data/h2_sto3g_0.50.json.

H2, STO-3G, bond length 0.5 Angstrom, RHF molecular orbitals, Jordan-Wigner
encoding over 4 interleaved spin-orbitals (qubit 2k = alpha of MO k, qubit
2k+1 = beta of MO k). Qubit 0 is the leftmost character of every Pauli string.

Requires: pip install pyscf openfermion

Term order matters: the Trotter product applies terms in file order, so the
first-order error operator depends on it. The fermionic Hamiltonian is
accumulated as two-body terms (p, q, r, s in lexicographic order), then
one-body terms, then the nuclear repulsion constant; the qubit terms are
emitted in the order they first appear in the Jordan-Wigner image.

Usage: python3 tools/fixtures/generate_h2_fixture.py > data/h2_sto3g_0.50.json
"""
import json
import sys

import numpy as np
from openfermion import FermionOperator, jordan_wigner
from openfermion.chem.molecular_data import spinorb_from_spatial
from pyscf import ao2mo, gto, scf


def main():
    mol = gto.M(atom="H 0 0 0; H 0 0 0.5", basis="sto-3g", unit="Angstrom")
    mf = scf.RHF(mol).run(verbose=0)
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), c.shape[1])
    one_body, two_body = spinorb_from_spatial(
        h1, np.asarray(eri.transpose(0, 2, 3, 1), order="C"))

    n = one_body.shape[0]
    op = FermionOperator()
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    v = two_body[p, q, r, s]
                    if abs(v) > 1e-12:
                        op += FermionOperator(((p, 1), (q, 1), (r, 0), (s, 0)), 0.5 * v)
    for p in range(n):
        for q in range(n):
            if abs(one_body[p, q]) > 1e-12:
                op += FermionOperator(((p, 1), (q, 0)), one_body[p, q])
    op += FermionOperator((), mol.energy_nuc())

    qubit_op = jordan_wigner(op)
    qubit_op.compress(1e-12)
    terms = []
    for key, value in qubit_op.terms.items():
        axes = ["I"] * n
        for qubit, axis in key:
            axes[qubit] = axis
        terms.append({"coeff": float(np.real(value)), "pauli": "".join(axes)})

    json.dump({"n_qubits": n, "terms": terms}, sys.stdout, indent=2)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
