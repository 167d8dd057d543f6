"""A Frobenius algebra that is special but not symmetric.

On Z/3 take psi = d theta with theta(2, 1) = zeta_3.  Then theta itself
trivialises psi, so Q(Z/3, theta) is a special Frobenius algebra, but the
simple objects have dimensions zeta_3^{-1} and zeta_3, dim Q = 0, and Q is not
symmetric.  Changing the pivotal structure makes every dimension 1.
"""
from picardium.algebra_objects import build_Q, check_frobenius_special_symmetric
from picardium.cohomology import Cochain, FiniteGroup, SubgroupEmbedding, coboundary
from picardium.pointed_category import CategoryContext

Z3 = FiniteGroup.cyclic(3)
theta = Cochain.trivial(Z3, 2, 3).with_value((2, 1), 1)
psi = coboundary(theta)
emb = SubgroupEmbedding.identity(Z3)

for label, pivot in (("trivial pivot", None), ("pivot zeta_3^2, zeta_3", Cochain(Z3, 1, 3, [0, 2, 1]))):
    ctx = CategoryContext(Z3, psi, pivot)
    dims = [ctx.dims(ctx.simple(g)) for g in Z3.elements()]
    Q = build_Q(emb, theta, ctx)
    rep = check_frobenius_special_symmetric(Q)
    print(label)
    print("  dims (left, right):", ", ".join(f"({l}, {r})" for l, r in dims))
    print("  dim Q =", rep.data["dims"]["left"], "| symmetric:", rep.data["symmetric"],
          "| special:", rep.get("special").passed)
