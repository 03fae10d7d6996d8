#!/usr/bin/env python3
"""Print cohomology tables for every fixture algebra and morphism.

A quick survey at desk scale: adjoint cohomology in degrees 1..2 for each
battery algebra, and morphism cohomology for each fixture morphism,
including which vanishing-transfer hypotheses hold.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from homleibniz.algebra import adjoint_representation
from homleibniz.cochain import CochainComplex
from homleibniz.fixtures import battery_algebras, fixture_morphisms
from homleibniz.morphism_complex import MorphismComplex


def main():
    print("algebra cohomology (adjoint coefficients)")
    print(f"  {'algebra':<28} {'arity':>5} {'dim C^1':>8} {'H^1':>4} {'dim C^2':>8} {'H^2':>4}")
    names = [
        "aff1", "twisted_aff1(2)", "leibniz [f,f]=e", "twisted [f,f]=e (2)",
        "twisted [f,f]=e (4)", "abelian", "twisted [f,f,f]=e (2)", "[f,f,f]=e",
    ]
    for name, a in zip(names, battery_algebras()):
        c = CochainComplex(a, adjoint_representation(a))
        print(
            f"  {name:<28} {a.arity:>5} {c.space(1).dim:>8} {c.cohomology_dim(1):>4}"
            f" {c.space(2).dim:>8} {c.cohomology_dim(2):>4}"
        )

    print()
    print("morphism cohomology")
    mnames = [
        "id on [f,f]=e", "id on twisted [f,f]=e", "zero on [f,f]=e",
        "twist endomorphism", "id on abelian", "vanishing pair", "id on [f,f,f]=e",
    ]
    print(f"  {'morphism':<24} {'C^1':>4} {'H^1':>4} {'C^2':>4} {'H^2':>4}  transfer@2")
    for name, phi in zip(mnames, fixture_morphisms()):
        mc = MorphismComplex(phi)
        hyp = not (
            mc.left.cohomology_dim(2)
            or mc.right.cohomology_dim(2)
            or mc.mixed.cohomology_dim(1)
        )
        print(
            f"  {name:<24} {mc.total_dim(1):>4} {mc.cohomology_dim(1):>4}"
            f" {mc.total_dim(2):>4} {mc.cohomology_dim(2):>4}"
            f"  {'hypotheses hold' if hyp else '-'}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
