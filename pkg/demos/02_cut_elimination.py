"""
Eliminating cuts from a non-well-founded proof
==============================================

"""

from grz.corpus import schema_cut
from grz.cutelim import eliminate, iterate
from grz.formula import parse_formula
from grz.proofs import check_inf, cut_profile, distance, in_P_n

# a cut on []([](q -> []q) -> q) against the cyclic proof of the same formula
with_cut = schema_cut(parse_formula("q"))
print(with_cut.sequent, with_cut.rule)
print("cuts per level:", cut_profile(with_cut, 4))

# the result is produced on demand; asking for depth n forces only n levels
cut_free = eliminate(with_cut)
print("cut-free to depth 6:", all(in_P_n(cut_free, n) for n in range(1, 7)))
print(check_inf(cut_free, 6, "grz-inf"))

# finite iterates starting from the identity approach the fixed point
for n in range(6):
    approx = iterate(n, with_cut)
    print(n, "distance to the limit <=", distance(approx, cut_free, 8).upper,
          "cut-free levels:", max(k for k in range(9) if in_P_n(approx, k)))
