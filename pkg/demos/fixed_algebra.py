"""Recovering Q(H, omega) as a fixed algebra.

A(H) = Q (x) Q^v carries an action of H by algebra automorphisms alpha_h built
from omega.  Averaging over H gives an idempotent whose image is again an
algebra; the maps i: Q -> A(H) and s: A(H) -> Q identify it with Q.
"""
from picardium.bimodule_morita import verify_thm_fixed_is_Q
from picardium.cohomology import FiniteGroup, SubgroupEmbedding, solve_trivialisations, standard_cyclic_cocycle
from picardium.pointed_category import CategoryContext

Z4 = FiniteGroup.cyclic(4)
ctx = CategoryContext(Z4, standard_cyclic_cocycle(4, 2))
emb = SubgroupEmbedding.from_elements(Z4, [0, 2])
for omega in solve_trivialisations(ctx.psi, emb).solutions:
    rep = verify_thm_fixed_is_Q(emb, omega, ctx)
    passed = sum(c.status == "pass" for c in rep.certificates)
    print(f"omega(1,1) = zeta_{omega.order}^{omega(1, 1)}: {passed}/{len(rep.certificates)} certificates pass;",
          "s o i = id:", rep.get("s o i = id_Q").status, "| i o s = P_H:", rep.get("i o s = P_H").status)
