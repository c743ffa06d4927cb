#!/usr/bin/env python3
"""Convert a PDB file to the line-based .mol input of pdfl.

Protein atoms come from ATOM records, ligand atoms from HETATM records whose
residue name matches --ligand. Ligand bonds come from CONECT records when the
file has them for the ligand, otherwise from a distance rule on heavy atoms.
Waters and other HETATM residues are dropped.

    scripts/pdb_to_mol.py 1a99.pdb --ligand PUT > 1a99.mol
"""

import argparse
import math
import sys


def parse(path, ligand):
    atoms, serial_to_index, conect = [], {}, []
    with open(path) as f:
        for line in f:
            rec = line[:6].strip()
            if rec in ("ATOM", "HETATM"):
                if line[16] not in (" ", "A"):
                    continue  # keep the first alternate location only
                resname = line[17:20].strip()
                if rec == "HETATM" and resname != ligand:
                    continue
                element = line[76:78].strip() or line[12:16].strip()[0]
                role = "ligand" if rec == "HETATM" else "protein"
                xyz = tuple(float(line[c : c + 8]) for c in (30, 38, 46))
                serial_to_index[int(line[6:11])] = len(atoms)
                atoms.append((element.capitalize(), xyz, role))
            elif rec == "CONECT":
                fields = [line[c : c + 5].strip() for c in range(6, 31, 5)]
                nums = [int(x) for x in fields if x]
                conect.extend((nums[0], other) for other in nums[1:])
            elif rec == "ENDMDL":
                break
    return atoms, serial_to_index, conect


def ligand_bonds(atoms, serial_to_index, conect, max_bond):
    is_lig = lambda i: atoms[i][2] == "ligand"
    bonds = set()
    for s, t in conect:
        i, j = serial_to_index.get(s), serial_to_index.get(t)
        if i is not None and j is not None and i != j and is_lig(i) and is_lig(j):
            bonds.add((min(i, j), max(i, j)))
    if bonds:
        return sorted(bonds)
    heavy = [i for i, a in enumerate(atoms) if is_lig(i) and a[0] != "H"]
    for x, i in enumerate(heavy):
        for j in heavy[x + 1 :]:
            if math.dist(atoms[i][1], atoms[j][1]) <= max_bond:
                bonds.add((i, j))
    return sorted(bonds)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("pdb")
    ap.add_argument("--ligand", required=True, help="ligand residue name")
    ap.add_argument("--max-bond", type=float, default=1.9, help="distance rule for bonds without CONECT (A)")
    args = ap.parse_args()

    atoms, serial_to_index, conect = parse(args.pdb, args.ligand)
    if not any(a[2] == "ligand" for a in atoms):
        sys.exit(f"no HETATM records with residue name {args.ligand}")
    out = sys.stdout
    out.write(f"# converted from {args.pdb}, ligand {args.ligand}\n")
    for element, (x, y, z), role in atoms:
        out.write(f"{element} {x:.3f} {y:.3f} {z:.3f} {role}\n")
    out.write("bonds:\n")
    for i, j in ligand_bonds(atoms, serial_to_index, conect, args.max_bond):
        out.write(f"{i} {j}\n")


if __name__ == "__main__":
    main()
