#include "metrilog/corpus.hpp"

namespace metrilog {

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = {
      {
          "dense_constants",
          "the indexed constants form a dense set: every point is at distance 0 from some c[i]",
          "signature\n"
          "  family c\n"
          "end\n",
          "inf x . Vee i . ~d(x, c[i])\n",
          // Three points at mutual distance 1/2; the family enumerates all
          // of them, so the sentence evaluates to exactly 1 at depth >= 3.
          "structure\n"
          "  signature\n"
          "    family c\n"
          "  end\n"
          "  points a b e\n"
          "  metric\n"
          "    a b 1/2\n"
          "    a e 1/2\n"
          "    b e 1/2\n"
          "  end\n"
          "  family c a b e tail e\n"
          "end\n",
      },
      {
          "basic_sequence_bound",
          "a basic-sequence bound: every initial partial combination is dominated by the scaled full one",
          "signature\n"
          "  predicate PartialNorm 2 linear 1/2\n"
          "  predicate ScaledNorm 2 linear 1/2\n"
          "  family b\n"
          "  family a\n"
          "end\n",
          "Wedge n . Wedge k . (PartialNorm(b[n], a[k]) -> ScaledNorm(b[n], a[k]))\n",
          "",
      },
      {
          "indecomposability_witness",
          "two subspaces stay uniformly apart: some enumerated gap ratio is met everywhere",
          "signature\n"
          "  predicate GapRatio 2 linear 1/2\n"
          "end\n",
          "Vee k . inf y . inf z . GapRatio(y, z) >= qenum[k]\n",
          "",
      },
      {
          "stability_failure",
          "an oscillation witness: some enumerated gap is attained over two constant families",
          "signature\n"
          "  predicate OscGap 2 linear 1/2\n"
          "  family c\n"
          "  family e\n"
          "end\n",
          "Vee k . Vee j . Vee i . OscGap(c[i], e[j]) >= qenum[k]\n",
          "",
      },
      {
          "non_reflexivity_witness",
          "a biorthogonal-style pattern: pairings vanish off the diagonal band and hit an enumerated level on it",
          "signature\n"
          "  predicate Pair 2 linear 1/2\n"
          "  family c\n"
          "  family s\n"
          "end\n",
          "Vee t . Wedge j . Wedge i . ((Pair(c[i], s[j+1]) <= 0) /\\ ((Pair(c[j], s[j]) >= qenum[t]) /\\ (Pair(c[j], "
          "s[j]) <= qenum[t])))\n",
          "",
      },
  };
  return entries;
}

}  // namespace metrilog
