"""Regenerate the FCIDUMP + sidecar fixtures used by the test suite.

Requires pyscf. Writes one `<name>.fcidump` and `<name>.meta.toml` pair per
structure plus `MANIFEST` with SHA-256 checksums.

    python3 generate.py
"""
import hashlib
import os

import numpy as np
from pyscf import gto, scf, mcscf, fci, ao2mo
from pyscf.tools import fcidump

HERE = os.path.dirname(os.path.abspath(__file__))
PLANE_DISTANCE = 0.372


def h3o_geometry(r):
    rho = np.sqrt(r * r - PLANE_DISTANCE**2)
    atoms = [("O", (0.0, 0.0, 0.0))]
    for k in range(3):
        phi = 2.0 * np.pi * k / 3.0
        atoms.append(("H", (rho * np.cos(phi), rho * np.sin(phi), -PLANE_DISTANCE)))
    return atoms


def write_fixture(name, atoms, charge, ncore, label):
    mol = gto.M(atom=atoms, basis="sto-3g", charge=charge, spin=0, unit="Angstrom",
                symmetry=False, verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    mf.kernel()
    if not mf.converged:
        mf = scf.newton(mf).run()
    if not mf.converged:
        print(f"{name}: SCF did not converge")
        return None
    norb = mol.nao - ncore
    nelec = mol.nelectron - 2 * ncore
    cas = mcscf.CASCI(mf, norb, nelec)
    h1, ecore = cas.get_h1eff()
    h2 = ao2mo.restore(1, cas.get_h2eff(), norb)
    e_fci, _ = fci.direct_spin1.kernel(h1, h2, norb, nelec, ecore=ecore, conv_tol=1e-13)
    nocc = nelec // 2
    e_hf = ecore + 2.0 * np.einsum("ii", h1[:nocc, :nocc]) \
        + sum(2.0 * h2[i, i, j, j] - h2[i, j, j, i] for i in range(nocc) for j in range(nocc))
    path = os.path.join(HERE, name + ".fcidump")
    fcidump.from_integrals(path, h1, ao2mo.restore(8, h2, norb), norb, nelec, nuc=ecore,
                           ms=0, tol=1e-15)
    bits = ["0"] * (2 * norb)
    for i in range(nocc):
        bits[i] = "1"
        bits[norb + i] = "1"
    # qubit 0 is the rightmost character
    occupation = "".join(reversed(bits))
    eps = mf.mo_energy[ncore:]
    meta = os.path.join(HERE, name + ".meta.toml")
    with open(meta, "w") as f:
        f.write(f"n_spatial_orbitals = {norb}\n")
        f.write(f"n_alpha = {nocc}\n")
        f.write(f"n_beta = {nocc}\n")
        f.write(f"hf_energy_ha = {e_hf:.15f}\n")
        f.write("orbital_energies_ha = [" + ", ".join(f"{e:.15f}" for e in eps) + "]\n")
        f.write(f'hf_occupation_bits = "{occupation}"\n')
        f.write(f"bond_length_angstrom = {label:.4f}\n")
        f.write(f"fci_energy_ha = {e_fci:.15f}\n")
        f.write(f"scf_hf_energy_ha = {mf.e_tot:.15f}\n")
    print(f"{name}: E_HF={e_hf:.10f} (scf {mf.e_tot:.10f}) E_FCI={e_fci:.10f}")
    return [path, meta]


def main():
    written = []
    for r in np.linspace(0.5, 2.0, 16):
        written += write_fixture(f"h3o+_r{r:.2f}", h3o_geometry(r), 1, 1, r) or []
    written += write_fixture("h2_r0.74", [("H", (0, 0, 0)), ("H", (0, 0, 0.74))], 0, 0, 0.74) or []
    with open(os.path.join(HERE, "MANIFEST"), "w") as f:
        for p in written:
            digest = hashlib.sha256(open(p, "rb").read()).hexdigest()
            f.write(f"{digest}  {os.path.basename(p)}\n")


if __name__ == "__main__":
    main()
