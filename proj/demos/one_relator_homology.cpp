// Chain complexes and homology for a proper-power one-relator group, with the
// torsion decomposition of its relation module.

#include <iostream>

#include <clt/homology.hpp>
#include <clt/trees.hpp>
#include <clt/word.hpp>

using namespace clt;

int main() {
  Alphabet ab = Alphabet::standard(2);
  Word r = parse_word("ababab", ab);
  TreeModel m = TreeModel::cayley(2);

  ComplexPair complexes = build_complexes(m, {r});
  for (const ComplexSpec* c : {&complexes.coset, &complexes.flat}) {
    std::cout << c->name << " complex, module ranks:";
    for (const ChainGroup& g : c->modules) std::cout << " " << g.rank();
    std::cout << "\n";
  }

  HomologySummary h = homology_trivial_coeffs(complexes.coset);
  std::cout << "H0 = " << describe(h.h0) << ", H1 = " << describe(h.h1)
            << ", H2 = " << describe(h.h2) << "\n";
  std::cout << h.higher << "\n";

  bool certified = composites_vanish(complexes.coset, WordProblemOracle::bounded_search(3, 2));
  std::cout << "boundary composites " << (certified ? "vanish" : "not certified") << "\n";

  TorsionReport torsion = torsion_decomposition(2, {r});
  std::cout << torsion.statement << "\n";
  return 0;
}
