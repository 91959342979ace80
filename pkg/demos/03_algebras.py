#!/usr/bin/env python3
"""Algebras for the image factorisation are exactly the injections.

Brute-force enumeration of (co)algebra structure maps over the image
factorisation on finite sets of size <= 2: every injection carries
exactly one algebra structure, every surjection exactly one coalgebra
structure, and nothing else carries any.
"""

from fwfs import (FactorisationAssignment, LiftingStructure, awfs_from_lifting,
                  build_finset, dbl_from_class, enumerate_algebras,
                  enumerate_coalgebras, unique_filler_lifting)
from fwfs.fincat import finset_image_factorisation


def main():
    fs = build_finset(2)
    C = fs.category
    left = dbl_from_class(C, fs.epis)
    right = dbl_from_class(C, fs.monos)
    S = LiftingStructure(left, unique_filler_lifting(left, right), right)
    A = awfs_from_lifting(S, FactorisationAssignment(
        {f: finset_image_factorisation(f) for f in C.morphisms}))

    print(f"{'morphism':>8}  coalgebras  algebras  class")
    for f in C.morphisms:
        n_co = len(enumerate_coalgebras(A, f))
        n_al = len(enumerate_algebras(A, f))
        kinds = []
        if f in fs.epis:
            kinds.append("surjection")
        if f in fs.monos:
            kinds.append("injection")
        print(f"{f:>8}  {n_co:>10}  {n_al:>8}  {'+'.join(kinds) or '-'}")
        assert n_co == (1 if f in fs.epis else 0)
        assert n_al == (1 if f in fs.monos else 0)
    print("\ncoalgebras = surjections, algebras = injections, "
          "one structure each")


if __name__ == "__main__":
    main()
