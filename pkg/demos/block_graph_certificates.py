"""
Sparsity certificates on a random block graph
=============================================

Sample a block graph, certify the local sparsity events that drive the
independent-set arguments, then extract the independent sets they
guarantee.
"""

from fractions import Fraction

import numpy as np

from hallratio import (block_weight_lower_bound, check_claim42, check_property_A, chi_f_colgen,
                       extract_lemma31, extract_lemma41, param_profile, sample, verify_theorem13_weights)
from hallratio.graph import Subgraph, random_subgraph

prof = param_profile(2 * 10**4, 2, "0.08", 3)
bg = sample(prof, seed=4)
g = bg.graph
print("block sizes", [len(b) for b in bg.blocks], " n =", g.n, " m =", g.m)

# chi_f is bracketed by the block-weight ratio from below.
print("block-weight bound", block_weight_lower_bound(bg), "<= chi_f =", chi_f_colgen(g).value)

# Window event: no window-confined subgraph with at most s vertices and 3s edges.
print("window event:", check_property_A(bg).status)

# Prefix and tail events; the prefix one implies G[B_1..B_{i-1}] is 2-degenerate.
rep = check_claim42(bg)
print("prefix event:", rep.parts["statement1"].status, " tail event:", rep.parts["statement2"].status)

# Independent sets for the whole graph and a random subgraph.
h = random_subgraph(g, np.random.default_rng(0))
for sub in (Subgraph.whole(g), h):
    I, r31 = extract_lemma31(bg, sub)
    I4, J, r41 = extract_lemma41(bg, sub, Fraction(1, 2))
    print(f"|V(h)| = {len(sub.vertices):5d}  window extractor |I| = {len(I):4d}"
          f"  coloring extractor |I| = {len(I4):4d}, J touches {r41['J_touched']} of {len(sub.edges)} edges"
          f"  degree-weight bound holds: {verify_theorem13_weights(bg, sub, Fraction(1, 2))}")
