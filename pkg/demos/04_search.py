"""
Proof search in both calculi
============================

"""

import time

from grz.corpus import hilbert_instances
from grz.formula import Sequent, parse_sequent
from grz.proofs import unfold
from grz.search import prove_inf, prove_seq
from grz.translate import inf_to_seq

# the finite calculus: search with a loop check decides provability
for text in ("=> []p -> p", "=> []p -> [][]p", "=> []([](p -> []p) -> p) -> []p", "=> p -> []p"):
    result = prove_seq(parse_sequent(text))
    print(f"{text:40} {result.status:12} {result.nodes} nodes")

# every instance of the axioms over p, q up to modal depth 2
start = time.perf_counter()
instances = hilbert_instances()
proved = sum(prove_seq(Sequent([], [formula])).proved for _, formula in instances)
print(f"{proved}/{len(instances)} axiom instances in {time.perf_counter() - start:.2f}s")

# the non-well-founded calculus: a cyclic proof closed by a back-edge
found = prove_inf(parse_sequent("[]([](p -> []p) -> p) => p"))
print(found.status, len(found.proof.nodes), "nodes, back-edges", found.proof.back_edges())

# and back to a finite proof
finite = inf_to_seq(unfold(found.proof))
print(finite.sequent, finite.size(), "nodes")
