"""Regenerate the FCIDUMP fixtures in this directory.

Requires PySCF (tested with 2.14.0). Each file holds RHF molecular-orbital
integrals in the full STO-3G space. Reference energies are written to
reference_energies.txt for cross-checking.
"""
import os

from pyscf import fci, gto, scf
from pyscf.tools import fcidump

HERE = os.path.dirname(os.path.abspath(__file__))

MOLECULES = {
    "h2_sto3g.fcidump": "H 0 0 0; H 0 0 0.735",
    "h4_chain_sto3g.fcidump": "H 0 0 0; H 0 0 1.0; H 0 0 2.0; H 0 0 3.0",
    "lih_sto3g.fcidump": "Li 0 0 0; H 0 0 1.595",
    "h2_stretch/h2_r0.60.fcidump": "H 0 0 0; H 0 0 0.60",
    "h2_stretch/h2_r0.90.fcidump": "H 0 0 0; H 0 0 0.90",
    "h2_stretch/h2_r1.20.fcidump": "H 0 0 0; H 0 0 1.20",
}


def main():
    lines = []
    for name, atom in MOLECULES.items():
        mol = gto.M(atom=atom, basis="sto-3g", unit="Angstrom", symmetry=False)
        mf = scf.RHF(mol)
        mf.conv_tol = 1e-12
        mf.kernel()
        fcidump.from_scf(mf, os.path.join(HERE, name), tol=1e-14)
        cis = fci.FCI(mf)
        cis.nroots = 4
        cis.conv_tol = 1e-12
        e, _ = cis.kernel()
        roots = " ".join(f"{x:.12f}" for x in e)
        lines.append(f"{name}  atoms=[{atom}]  E_HF={mf.e_tot:.12f}  sz0_FCI_roots={roots}")
    with open(os.path.join(HERE, "reference_energies.txt"), "w") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
