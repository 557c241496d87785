"""
A cyclic proof and what it unfolds to
=====================================

"""

from grz.corpus import golden_proof
from grz.proofs import check_cyclic, expand, local_height, main_fragment, unfold
from grz.serialize import to_dot

# the bundled proof of []([](p -> []p) -> p) => p has nine nodes and one back-edge
cyclic = golden_proof()
for index, node in enumerate(cyclic.nodes):
    print(index, node.rule.tag, node.sequent)
print("back-edges:", cyclic.back_edges())

# the checker also verifies that the loop passes a box right premise
print(check_cyclic(cyclic, "grz-inf"))

# unfolding gives a lazy infinite tree
tree = unfold(cyclic)
print("local height:", local_height(tree))

# the main fragment stops at the first box right premise; the hole marks the cut-off point
for path, node in main_fragment(tree).walk():
    print(path, node)

# deeper expansions grow with every pass around the loop
for depth in range(1, 5):
    print(depth, expand(tree, depth).size())

print(to_dot(cyclic))
