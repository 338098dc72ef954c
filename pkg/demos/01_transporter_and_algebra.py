"""Build S3 acting on its poset of 2-subgroups, the transporter category and
its category algebra over F_2; look at radical, blocks and projectives."""

from strata import blocks, build_algebra, build_sp_poset, build_transporter, primitive_idempotents
from strata.algebra import skew_iso
from strata.catalog import catalog_group
from strata.gposet import euler_characteristic
from strata.rep import indecomposable_projectives, simple_modules

G = catalog_group("S3")
P = build_sp_poset(G, 2)
print("poset objects:", P.labels)
print("chi(S_2(S3)) =", euler_characteristic(P), "(1 mod 2)")

C = build_transporter(G, P)
print(C, "Hom sizes:", [[len(C.hom[x][y]) for y in range(C.n_obj)] for x in range(C.n_obj)])

A = build_algebra(C, 2)
print("dim kC =", A.dim, " dim J =", A.radical.shape[0])
B = blocks(A)
print("blocks over F_2:", B.count, "dims", B.dims, "principal", B.principal)
print("primitive idempotents:", len(primitive_idempotents(A)))

iso = skew_iso(G, P, 2, C=C)
print("skew group algebra map checked on", iso.pairs_checked, "basis pairs")

for S, Q in zip(simple_modules(A), indecomposable_projectives(A)):
    print("simple", S.dims, "with projective cover", Q.dims)
