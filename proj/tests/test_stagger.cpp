#include <algorithm>
#include <set>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "clt/stagger.hpp"
#include "helpers.hpp"

using clt::are_conjugate;
using clt::axis_footprint;
using clt::check_staggered;
using clt::check_strongly_staggered;
using clt::find_staggering;
using clt::Staggering;
using clt::TreeModel;
using clt::Word;
using testutil::W;

namespace {

Staggering ord(std::vector<int> v) { return Staggering{std::move(v)}; }

TreeModel path_abc() {
  clt::GraphOfGroups g;
  g.vertices = {{"A", 1}, {"B", 0}, {"C", 1}};
  g.edges.push_back({0, 1, true, {}, {}});
  g.edges.push_back({1, 2, true, {}, {}});
  return TreeModel::gog(g);
}

// Decides existence of a staggering by brute force: every permutation of the
// used orbits, every distinct class pair tested for strict min and max
// separation in one direction. Shares no ranking plumbing with the library.
bool oracle_exists(const TreeModel& m, const std::vector<Word>& rel) {
  std::vector<Word> rs;
  for (const Word& r : rel)
    if (std::find(rs.begin(), rs.end(), r) == rs.end()) rs.push_back(r);
  std::vector<Word> reps;
  std::vector<std::set<int>> feet;
  for (const Word& r : rs) {
    bool seen = false;
    for (const Word& p : reps)
      if (are_conjugate(r, p)) {
        seen = true;
        break;
      }
    if (seen) continue;
    reps.push_back(r);
    feet.push_back(axis_footprint(m, r));
  }
  std::set<int> used_set;
  for (const auto& f : feet) used_set.insert(f.begin(), f.end());
  std::vector<int> used(used_set.begin(), used_set.end());

  std::vector<int> perm = used;
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<int> pos(m.num_orbits(), -1);
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = static_cast<int>(i);
    bool ok = true;
    for (std::size_t i = 0; i < feet.size() && ok; ++i)
      for (std::size_t j = i + 1; j < feet.size() && ok; ++j) {
        int lo_i = 1 << 20, hi_i = -1, lo_j = 1 << 20, hi_j = -1;
        for (int o : feet[i]) {
          lo_i = std::min(lo_i, pos[o]);
          hi_i = std::max(hi_i, pos[o]);
        }
        for (int o : feet[j]) {
          lo_j = std::min(lo_j, pos[o]);
          hi_j = std::max(hi_j, pos[o]);
        }
        bool fwd = lo_i < lo_j && hi_i < hi_j;
        bool bwd = lo_j < lo_i && hi_j < hi_i;
        if (!(fwd || bwd)) ok = false;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("chain relators on the rank three tree are staggered") {
  auto m = TreeModel::cayley(3);
  std::vector<Word> R{W("ab", 3), W("bc", 3)};
  auto rep = check_staggered(m, R, ord({0, 1, 2}));
  REQUIRE(rep.staggered());
  REQUIRE(rep.classes.size() == 2);
  CHECK(rep.classes[0].footprint == std::set<int>{0, 1});
  CHECK(rep.classes[1].footprint == std::set<int>{1, 2});
  CHECK(rep.classes[0].min_orbit == 0);
  CHECK(rep.classes[0].max_orbit == 1);
  CHECK(rep.classes[1].min_orbit == 1);
  CHECK(rep.classes[1].max_orbit == 2);
  CHECK(rep.witness == std::pair<int, int>{-1, -1});

  // The reversed order also separates the pair, in the other direction.
  CHECK(check_staggered(m, R, ord({2, 1, 0})).staggered());
}

TEST_CASE("overlapping footprints block every ordering") {
  auto m = TreeModel::cayley(2);
  std::vector<Word> R{W("ab"), W("aB")};
  for (auto& o : {ord({0, 1}), ord({1, 0})}) {
    auto rep = check_staggered(m, R, o);
    CHECK(rep.conditions[1].pass);
    CHECK(rep.conditions[2].evaluated);
    CHECK_FALSE(rep.conditions[2].pass);
    CHECK_FALSE(rep.staggered());
    CHECK(rep.witness == std::pair<int, int>{0, 1});
  }
  CHECK_FALSE(find_staggering(m, R).has_value());
  CHECK_FALSE(oracle_exists(m, R));
}

TEST_CASE("conjugate relators share a class and stagger trivially") {
  auto m = TreeModel::cayley(2);
  Word r = W("ab");
  std::vector<Word> R{r, clt::conjugate(W("a"), r)};
  auto rep = check_staggered(m, R, ord({0, 1}));
  REQUIRE(rep.staggered());
  REQUIRE(rep.classes.size() == 1);
  CHECK(rep.classes[0].members == std::vector<int>{0, 1});

  // Strong form fails: the two relators are distinct yet conjugate.
  auto strong = check_strongly_staggered(m, R, ord({0, 1}));
  CHECK(strong.staggered());
  CHECK_FALSE(strong.conditions[3].pass);
  CHECK_FALSE(strong.strongly_staggered());
  CHECK(strong.witness == std::pair<int, int>{0, 1});

  // Inverting only the first relator splits the class into two classes with
  // the same footprint, and no ordering separates them.
  std::vector<Word> split{r.inverse(), clt::conjugate(W("a"), r)};
  CHECK_FALSE(check_staggered(m, split, ord({0, 1})).staggered());
  CHECK_FALSE(find_staggering(m, split).has_value());
}

TEST_CASE("vertex fixers fail the second condition without an error") {
  auto m = path_abc();
  std::vector<Word> R{W("ab"), W("a")};  // gen 1 generates vertex C
  auto rep = check_staggered(m, R, ord({0, 1}));
  CHECK(rep.conditions[0].pass);
  CHECK(rep.conditions[1].evaluated);
  CHECK_FALSE(rep.conditions[1].pass);
  CHECK_FALSE(rep.conditions[2].evaluated);
  CHECK_FALSE(rep.staggered());
  CHECK(rep.witness.first == 1);
  CHECK(rep.witness.second == -1);
  CHECK_FALSE(find_staggering(m, R).has_value());
}

TEST_CASE("ordering validation") {
  auto m = TreeModel::cayley(2);
  std::vector<Word> R{W("ab")};
  CHECK_THROWS_AS(check_staggered(m, R, ord({0, 0, 1})), clt::invalid_input);
  CHECK_THROWS_AS(check_staggered(m, R, ord({2})), clt::invalid_input);
  CHECK_THROWS_AS(check_staggered(m, R, ord({-1})), clt::invalid_input);
  CHECK_THROWS_AS(check_staggered(m, R, ord({0})), clt::invalid_input);  // misses orbit 1
  CHECK_THROWS_AS(check_staggered(m, R, ord({})), clt::invalid_input);
  CHECK_NOTHROW(check_staggered(m, R, ord({1, 0})));
}

TEST_CASE("unused orbits are appended in ascending order") {
  auto m = TreeModel::cayley(4);
  std::vector<Word> R{W("ab", 4)};
  auto rep = check_staggered(m, R, ord({1, 0}));
  CHECK(rep.effective.ordering == std::vector<int>{1, 0, 2, 3});
  REQUIRE(rep.staggered());
}

TEST_CASE("search finds the least ordering and round trips") {
  auto m = TreeModel::cayley(4);
  std::vector<Word> R{W("ab", 4), W("bc", 4), W("cd", 4)};
  auto found = find_staggering(m, R);
  REQUIRE(found.has_value());
  CHECK(found->ordering == std::vector<int>{0, 1, 2, 3});
  CHECK(check_staggered(m, R, *found).staggered());

  auto single = find_staggering(TreeModel::cayley(2), {W("abaB")});
  REQUIRE(single.has_value());
  CHECK(check_staggered(TreeModel::cayley(2), {W("abaB")}, *single).staggered());
}

TEST_CASE("search agrees with the permutation oracle on random instances") {
  auto rng = testutil::rng();
  std::uniform_int_distribution<int> rank_d(2, 5), count_d(1, 4), len_d(1, 6);
  int found_count = 0, none_count = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int rank = rank_d(rng);
    auto m = TreeModel::cayley(rank);
    std::vector<Word> R;
    int count = count_d(rng);
    for (int i = 0; i < count; ++i) {
      Word w = testutil::random_word(rng, rank, len_d(rng));
      if (!clt::cyclically_reduce(w).first.empty()) R.push_back(w);
    }
    if (R.empty()) continue;
    auto found = find_staggering(m, R);
    bool exists = oracle_exists(m, R);
    CHECK(found.has_value() == exists);
    if (found) {
      ++found_count;
      CHECK(check_staggered(m, R, *found).staggered());
    } else {
      ++none_count;
    }
  }
  CHECK(found_count > 10);
  CHECK(none_count > 10);
}

TEST_CASE("verdicts are invariant under conjugation and global inversion") {
  auto rng = testutil::rng();
  std::uniform_int_distribution<int> pick(0, 2), len_d(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = TreeModel::cayley(3);
    std::vector<Word> R;
    for (int i = 0; i < 3; ++i) {
      Word w = testutil::random_word(rng, 3, len_d(rng));
      if (!clt::cyclically_reduce(w).first.empty()) R.push_back(w);
    }
    if (R.empty()) continue;
    bool base = find_staggering(m, R).has_value();

    // Conjugating one relator preserves its class, so the verdict holds.
    auto conj = R;
    Word c = testutil::random_word(rng, 3, len_d(rng));
    std::size_t at = static_cast<std::size_t>(pick(rng)) % conj.size();
    conj[at] = clt::conjugate(c, conj[at]);
    CHECK(find_staggering(m, conj).has_value() == base);

    // Inverting every relator maps the class partition across, footprints
    // unchanged. Inverting a single relator can split a class and genuinely
    // change the verdict, so only the global form is invariant.
    auto inv = R;
    for (Word& w : inv) w = w.inverse();
    CHECK(find_staggering(m, inv).has_value() == base);
  }
}

TEST_CASE("strong conditions on one vertex quotients hold automatically") {
  auto m = TreeModel::cayley(3);
  std::vector<Word> R{W("ab", 3), W("bc", 3)};
  auto rep = check_strongly_staggered(m, R, ord({0, 1, 2}));
  CHECK(rep.conditions[4].pass);  // wedge quotient: no non-loop edges
  CHECK(rep.conditions[5].pass);
  CHECK(rep.conditions[6].pass);  // all orbits share the single vertex
  CHECK(rep.strongly_staggered());
}

TEST_CASE("free product relator is strongly staggered") {
  auto m = TreeModel::free_product(1, 1);
  std::vector<Word> R{W("abab") * W("b")};
  auto found = find_staggering(m, R);
  REQUIRE(found.has_value());
  CHECK(found->ordering == std::vector<int>{0});
  auto rep = check_strongly_staggered(m, R, *found);
  CHECK(rep.strongly_staggered());
}

TEST_CASE("path quotient separates strong conditions from staggering") {
  auto m = path_abc();
  std::vector<Word> R{W("ab")};
  auto rep = check_strongly_staggered(m, R, ord({0, 1}));
  REQUIRE(rep.staggered());
  CHECK(rep.conditions[3].pass);
  CHECK(rep.conditions[4].pass);  // two tree edges on three vertices
  CHECK(rep.conditions[6].pass);  // consecutive orbits meet at B
  CHECK(rep.strongly_staggered());
}

TEST_CASE("heuristic regime handles many orbits") {
  auto m = TreeModel::cayley(9);
  std::vector<Word> R;
  for (int i = 0; i + 1 < 9; ++i)
    R.push_back(Word::generator(i) * Word::generator(i + 1));
  auto found = find_staggering(m, R);
  REQUIRE(found.has_value());
  CHECK(check_staggered(m, R, *found).staggered());
}

TEST_CASE("empty relator family is vacuously staggered") {
  auto m = TreeModel::cayley(2);
  auto rep = check_staggered(m, {}, ord({}));
  CHECK(rep.staggered());
  CHECK(rep.effective.ordering == std::vector<int>{0, 1});
}
