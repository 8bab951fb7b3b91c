// Builds a coset transversal window for a one-relator normal closure and
// checks that the windowed conjugates are a free basis.

#include <iostream>

#include <clt/asphericity.hpp>
#include <clt/word.hpp>

using namespace clt;

int main() {
  Alphabet ab = Alphabet::standard(2);
  Word r = parse_word("abAB", ab);

  Transversal X = coset_transversal(2, r, WordProblemOracle::abelianized(), 2);
  std::cout << "relator " << print_word(r, ab) << ", root " << print_word(X.relator_root, ab)
            << "\n";
  std::cout << X.representatives.size() << " coset representatives at radius " << X.radius
            << (X.complete ? " (complete window)" : " (partial window)") << "\n";

  CLWindowReport rep = cl_basis_window(r, X);
  std::cout << rep.conjugates.size() << " conjugates fold to rank " << rep.rank << "\n";
  std::cout << (rep.independent ? "window is a free basis" : "window is dependent") << "\n";
  for (std::size_t i = 0; i < rep.conjugates.size() && i < 5; ++i)
    std::cout << "  " << print_word(rep.conjugates[i], ab) << "\n";
  return rep.independent ? 0 : 1;
}
