// Finds a staggering order for a relator set, then runs the descending chain
// construction and prints each step down to the bottom subgroup.

#include <iostream>

#include <clt/chain.hpp>
#include <clt/stagger.hpp>
#include <clt/trees.hpp>
#include <clt/word.hpp>

using namespace clt;

int main() {
  Alphabet ab = Alphabet::standard(2);
  TreeModel m = TreeModel::cayley(2);
  std::vector<Word> R = {parse_word("aabb", ab)};

  auto order = find_staggering(m, R);
  if (!order) {
    std::cout << "no staggering order\n";
    return 1;
  }
  StaggerReport sr = check_strongly_staggered(m, R, *order);
  std::cout << "staggered " << (sr.staggered() ? "yes" : "no") << ", strongly "
            << (sr.strongly_staggered() ? "yes" : "no") << "\n";

  ChainReport chain = build_chain(m, R, {});
  std::cout << "nu = " << chain.nu << "\n";
  for (std::size_t i = 0; i < chain.steps.size(); ++i) {
    const ChainStep& s = chain.steps[i];
    std::cout << "step " << i + 1 << ": " << (s.chose_dagger ? "dagger" : "kernel")
              << ", survivors " << s.survivors.size() << ", spanned rank " << s.dagger_rank
              << "\n";
  }
  std::cout << "bottom rank " << chain.bottom_rank() << ", basis:";
  for (const Word& w : chain.bottom.graph().basis_words()) std::cout << " " << print_word(w, ab);
  std::cout << "\n";
  return 0;
}
