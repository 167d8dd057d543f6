"""Which subgroups of Z/4 carry an algebra Q(H, omega)?

For each standard 3-cocycle on Z/4 and each subgroup H we solve d omega = psi|_H,
count the solutions and their classes, and build Q for the first solution.
"""
from picardium.algebra_objects import build_Q, check_frobenius_special_symmetric
from picardium.cohomology import FiniteGroup, SubgroupEmbedding, solve_trivialisations, standard_cyclic_cocycle
from picardium.cohomology import trivialisation_classes
from picardium.pointed_category import CategoryContext

Z4 = FiniteGroup.cyclic(4)

for k in range(4):
    psi = standard_cyclic_cocycle(4, k)
    ctx = CategoryContext(Z4, psi)
    print(f"psi = standard cocycle with k = {k}")
    for els in sorted(Z4.subgroups(), key=len):
        emb = SubgroupEmbedding.from_elements(Z4, sorted(els))
        sols = solve_trivialisations(psi, emb).solutions
        line = f"  H = {sorted(els)}: {len(sols)} trivialisations"
        if sols:
            Q = build_Q(emb, sols[0], ctx)
            rep = check_frobenius_special_symmetric(Q)
            line += (f" in {len(trivialisation_classes(sols))} class(es); Q is"
                     f" {'symmetric' if rep.data['symmetric'] else 'not symmetric'},"
                     f" dim Q = {rep.data['dims']['left']}")
        print(line)
