"""
Cut elimination for the finite calculus, by a detour
====================================================

"""

from grz.corpus import modus_ponens_cut
from grz.formula import parse_formula
from grz.proofs import CUT, check_finite
from grz.translate import cutelim_grzseq

# a proof of => [](q -> (p -> p)) that goes through => [](p -> p) with a cut
with_cut = modus_ponens_cut(parse_formula("[](p -> p)"), parse_formula("[](q -> (p -> p))"))
print(with_cut.sequent, "nodes:", with_cut.size(), "cuts:", with_cut.count(CUT))
print(check_finite(with_cut, "grz-seq-cut"))

# into the non-well-founded calculus, eliminate, and back
cut_free = cutelim_grzseq(with_cut)
print(cut_free.sequent, "nodes:", cut_free.size(), "cuts:", cut_free.count(CUT))
print(check_finite(cut_free, "grz-seq"))

for path, node in cut_free.walk():
    print("  " * path.count("."), node.rule.tag, node.sequent)
