#!/usr/bin/env python3
# Copyright 2026 The rydgate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates the paired-electron (seniority-zero) qubit Hamiltonians in
data/fixtures from RHF integrals computed with pyscf.

Orbital p maps to qubit p, orbitals in ascending RHF energy. With
n_p = (I - Z_p) / 2 and b_p = (X_p + i Y_p) / 2 the pair Hamiltonian

    H = E_nuc + sum_p e_p n_p + sum_{p<q} K_pq (b_p^+ b_q + h.c.)
              + sum_{p<q} (4 J_pq - 2 K_pq) n_p n_q,
    e_p = 2 h_pp + (pp|pp),

is written as Pauli strings. Before writing, the script checks it against
the closed-shell block of the full configuration-interaction Hamiltonian.

Usage: python scripts/make_fixtures.py [output_dir]   (needs pyscf)
"""

import itertools
import json
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, scf
from pyscf.fci import cistring

MOLECULES = [
    {"name": "H2", "file": "h2_631g.json", "atom": "H 0 0 0; H 0 0 0.74", "basis": "6-31g"},
    {"name": "LiH", "file": "lih_sto3g.json", "atom": "Li 0 0 0; H 0 0 1.595", "basis": "sto-3g"},
]


def integrals(spec):
    mol = gto.M(atom=spec["atom"], basis=spec["basis"], unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    norb = h1.shape[0]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)  # chemist (pq|rs)
    return mol, mf, h1, eri


def pair_terms(h1, eri):
    n = h1.shape[0]
    e = np.array([2 * h1[p, p] + eri[p, p, p, p] for p in range(n)])
    K = np.array([[eri[p, q, p, q] for q in range(n)] for p in range(n)])
    J = np.array([[eri[p, p, q, q] for q in range(n)] for p in range(n)])
    return e, K, 4 * J - 2 * K


def pauli_form(e_nuc, e, hop, dd):
    n = len(e)
    const = e_nuc
    z = np.zeros(n)
    terms = []
    for p in range(n):  # e_p (I - Z_p) / 2
        const += e[p] / 2
        z[p] -= e[p] / 2
    for p, q in itertools.combinations(range(n), 2):
        # K (b_p^+ b_q + b_q^+ b_p) = K/2 (X X + Y Y)
        terms.append({"coeff": hop[p, q] / 2, "ops": [["X", p], ["X", q]]})
        terms.append({"coeff": hop[p, q] / 2, "ops": [["Y", p], ["Y", q]]})
        # W n_p n_q = W/4 (I - Z_p - Z_q + Z_p Z_q)
        w = dd[p, q]
        const += w / 4
        z[p] -= w / 4
        z[q] -= w / 4
        terms.append({"coeff": w / 4, "ops": [["Z", p], ["Z", q]]})
    for p in range(n):
        terms.insert(p, {"coeff": z[p], "ops": [["Z", p]]})
    return const, terms


def pauli_matrix(n, const, terms):
    paulis = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1.0, -1.0]),
    }
    dim = 1 << n
    H = const * np.eye(dim, dtype=complex)
    for t in terms:
        ops = {q: paulis[o] for o, q in t["ops"]}
        m = np.eye(1)
        for q in reversed(range(n)):  # qubit 0 is the least significant bit
            m = np.kron(m, ops.get(q, paulis["I"]))
        H += t["coeff"] * m
    return H


def closed_shell_block(h1, eri, e_nuc, n_pairs):
    n = h1.shape[0]
    nelec = (n_pairs, n_pairs)
    h2 = fci.direct_spin1.absorb_h1e(h1, eri, n, nelec, 0.5)
    masks = [sum(1 << p for p in occ) for occ in itertools.combinations(range(n), n_pairs)]
    addr = [cistring.str2addr(n, n_pairs, m) for m in masks]
    na = cistring.num_strings(n, n_pairs)
    block = np.zeros((len(masks), len(masks)))
    for j, aj in enumerate(addr):
        civec = np.zeros((na, na))
        civec[aj, aj] = 1.0
        hc = fci.direct_spin1.contract_2e(h2, civec, n, nelec)
        for i, ai in enumerate(addr):
            block[i, j] = hc[ai, ai]
    return masks, block + e_nuc * np.eye(len(masks))


def build(spec):
    mol, mf, h1, eri = integrals(spec)
    n = h1.shape[0]
    n_pairs = mol.nelectron // 2
    e, hop, dd = pair_terms(h1, eri)
    const, terms = pauli_form(mol.energy_nuc(), e, hop, dd)
    H = pauli_matrix(n, const, terms)

    masks, block = closed_shell_block(h1, eri, mol.energy_nuc(), n_pairs)
    ours = H[np.ix_(masks, masks)].real
    if np.max(np.abs(ours - block)) > 1e-9:
        raise SystemExit(f"{spec['name']}: pair Hamiltonian disagrees with the CI block")
    hf = (1 << n_pairs) - 1
    if abs(H[hf, hf].real - mf.e_tot) > 1e-9:
        raise SystemExit(f"{spec['name']}: Hartree-Fock energy mismatch")
    reference = float(np.linalg.eigvalsh(block)[0])
    return {
        "molecule": spec["name"],
        "basis": spec["basis"],
        "geometry": spec["atom"],
        "n_qubits": n,
        "n_pairs": n_pairs,
        "constant": float(const),
        "terms": [{"coeff": float(t["coeff"]), "ops": t["ops"]} for t in terms],
        "reference_energy": reference,
        "hartree_fock_energy": float(mf.e_tot),
        "provenance": "pyscf " + __import__("pyscf").__version__
        + " RHF integrals, seniority-zero projection (scripts/make_fixtures.py)",
    }


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    for spec in MOLECULES:
        fixture = build(spec)
        (out / spec["file"]).write_text(json.dumps(fixture, indent=2) + "\n")
        print(f"{spec['name']:4s} {fixture['n_qubits']} qubits  HF {fixture['hartree_fock_energy']:.8f}"
              f"  pair ground {fixture['reference_energy']:.8f}")


if __name__ == "__main__":
    main()
