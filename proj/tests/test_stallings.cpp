#include <algorithm>
#include <set>

#include "catch2/catch_amalgamated.hpp"
#include "clt/stallings.hpp"
#include "helpers.hpp"

using clt::BasisExpression;
using clt::build_and_fold;
using clt::evaluate_expression;
using clt::graph_rank;
using clt::is_free_basis;
using clt::is_member;
using clt::Word;
using testutil::W;

namespace {

// Membership decided structurally: the folded graph is canonical, so w lies in
// the subgroup exactly when adding its loop changes nothing.
bool member_by_refold(const std::vector<Word>& gens, const Word& w) {
  std::vector<Word> ext = gens;
  ext.push_back(w);
  return build_and_fold(ext) == build_and_fold(gens);
}

// All words spelled by immersed base loops of length n. In a folded graph
// these are exactly the subgroup members of that reduced length.
void collect_loops(const clt::SubgroupGraph& g, int v, std::vector<clt::Letter>& prefix, int n,
                   std::set<Word>& out) {
  if (n == 0) {
    if (v == 0) out.insert(Word(prefix));
    return;
  }
  for (int gen = 0; gen < g.rank(); ++gen) {
    for (clt::Letter l : {clt::Letter(gen + 1), clt::Letter(-(gen + 1))}) {
      if (!prefix.empty() && prefix.back() == -l) continue;
      int nxt = g.trace(v, l);
      if (nxt < 0) continue;
      prefix.push_back(l);
      collect_loops(g, nxt, prefix, n - 1, out);
      prefix.pop_back();
    }
  }
}

std::set<Word> loops_of_length(const clt::SubgroupGraph& g, int n) {
  std::set<Word> out;
  std::vector<clt::Letter> prefix;
  collect_loops(g, 0, prefix, n, out);
  return out;
}

}  // namespace

TEST_CASE("folding small generator sets") {
  auto g1 = build_and_fold({W("a")});
  REQUIRE(graph_rank(g1) == 1);
  REQUIRE(g1.basis_words() == std::vector<Word>{W("a")});

  auto g0 = build_and_fold({});
  REQUIRE(graph_rank(g0) == 0);
  REQUIRE(is_member(Word(), g0).has_value());
  REQUIRE_FALSE(is_member(W("a"), g0).has_value());

  REQUIRE(graph_rank(build_and_fold({W("a"), W("a")})) == 1);
  REQUIRE(graph_rank(build_and_fold({W("a"), W("A")})) == 1);
  REQUIRE(graph_rank(build_and_fold({W("ab"), W("ba")})) == 2);
}

TEST_CASE("membership with basis expressions") {
  auto g = build_and_fold({W("a"), W("Bab")});
  REQUIRE(graph_rank(g) == 2);
  REQUIRE(g.basis_words() == std::vector<Word>{W("a"), W("Bab")});

  auto e = is_member(W("aa"), g);
  REQUIRE(e.has_value());
  REQUIRE(e->factors == std::vector<std::pair<int, int>>{{0, 1}, {0, 1}});
  REQUIRE(evaluate_expression(g, *e) == W("aa"));

  auto f = is_member(W("aBab"), g);
  REQUIRE(f.has_value());
  REQUIRE(f->factors == std::vector<std::pair<int, int>>{{0, 1}, {1, 1}});
  REQUIRE(evaluate_expression(g, *f) == W("aBab"));

  REQUIRE_FALSE(is_member(W("b"), g).has_value());
  REQUIRE_FALSE(is_member(W("ab"), g).has_value());
  REQUIRE_FALSE(is_member(W("Ba"), g).has_value());
  REQUIRE(is_member(Word(), g).has_value());
}

TEST_CASE("membership agrees with structural refold and loop enumeration") {
  auto rng = testutil::rng();
  std::vector<std::vector<Word>> sets = {
      {W("a")},
      {W("aa"), W("b")},
      {W("a"), W("Bab")},
      {W("ab"), W("aB")},
      {W("aabb"), W("ab")},
  };
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Word> gens;
    int k = 1 + int(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(testutil::random_word_up_to(rng, 2, 4));
    gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Word& w) { return w.empty(); }),
               gens.end());
    if (!gens.empty()) sets.push_back(gens);
  }

  for (const auto& gens : sets) {
    auto g = build_and_fold(gens);
    std::vector<std::set<Word>> loops(5);
    for (int n = 0; n < 5; ++n) loops[n] = loops_of_length(g, n);
    for (const Word& w : clt::enumerate_ball(2, 4)) {
      bool via_graph = is_member(w, g).has_value();
      REQUIRE(via_graph == member_by_refold(gens, w));
      REQUIRE(via_graph == (loops[w.size()].count(w) > 0));
      if (via_graph) REQUIRE(evaluate_expression(g, *is_member(w, g)) == w);
    }
  }
}

TEST_CASE("fold order does not matter") {
  auto rng = testutil::rng();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Word> gens;
    int k = 2 + int(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(testutil::random_word(rng, 3, 1 + int(rng() % 5)));
    auto ref = build_and_fold(gens);
    for (int s = 0; s < 20; ++s) {
      std::shuffle(gens.begin(), gens.end(), rng);
      auto g = build_and_fold(gens);
      REQUIRE(g == ref);
      REQUIRE(g.basis_words() == ref.basis_words());
    }
  }
}

TEST_CASE("abelianization over the graph basis") {
  auto g = build_and_fold({W("a"), W("Bab")});
  auto v = clt::abelianized_over_basis(g, W("a") * W("Bab") * W("a"));
  REQUIRE(v == std::vector<long long>{2, 1});

  auto rng = testutil::rng();
  for (int trial = 0; trial < 50; ++trial) {
    Word w;
    BasisExpression picked;
    for (int i = 0; i < 4; ++i) {
      int idx = int(rng() % g.basis_words().size());
      int sign = rng() % 2 ? 1 : -1;
      picked.factors.emplace_back(idx, sign);
      w = w * (sign > 0 ? g.basis_words()[idx] : g.basis_words()[idx].inverse());
    }
    auto over_basis = clt::abelianized_over_basis(g, w);
    std::vector<long long> ambient(2, 0), recombined(2, 0);
    for (int gen = 0; gen < 2; ++gen) ambient[gen] = clt::exponent_sum(w, gen);
    for (std::size_t i = 0; i < over_basis.size(); ++i)
      for (int gen = 0; gen < 2; ++gen)
        recombined[gen] += over_basis[i] * clt::exponent_sum(g.basis_words()[i], gen);
    REQUIRE(recombined == ambient);
  }
}

TEST_CASE("free basis recognition") {
  REQUIRE(is_free_basis({W("a"), W("b")}));
  REQUIRE(is_free_basis({W("aa"), W("bb")}));
  REQUIRE_FALSE(is_free_basis({W("a"), W("ab"), W("b")}));
  REQUIRE_FALSE(is_free_basis({W("ab"), W("ba"), W("abab")}));
  REQUIRE(is_free_basis({W("a"), W("a")}));

  std::vector<Word> conjugated;
  Word c = clt::commutator(W("a"), W("b"));
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      Word x = clt::pow(W("a"), i) * clt::pow(W("b"), j);
      conjugated.push_back(clt::conjugate(x, c));
    }
  REQUIRE(conjugated.size() == 9);
  REQUIRE(is_free_basis(conjugated));
  REQUIRE(graph_rank(build_and_fold(conjugated)) == 9);

  REQUIRE_THROWS_AS(is_free_basis({}), clt::invalid_input);
  REQUIRE_THROWS_AS(is_free_basis({W("a"), Word()}), clt::invalid_input);
}

TEST_CASE("subset subgroups stay inside") {
  auto rng = testutil::rng();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Word> small, big;
    for (int i = 0; i < 2; ++i) small.push_back(testutil::random_word(rng, 3, 1 + int(rng() % 4)));
    big = small;
    big.push_back(testutil::random_word(rng, 3, 1 + int(rng() % 4)));
    auto gs = build_and_fold(small);
    auto gb = build_and_fold(big);
    for (const Word& w : gs.basis_words()) REQUIRE(is_member(w, gb).has_value());
    for (int i = 0; i < 5; ++i) {
      Word w = small[rng() % small.size()] * small[rng() % small.size()].inverse() *
               small[rng() % small.size()];
      REQUIRE(is_member(w, gs).has_value());
      REQUIRE(is_member(w, gb).has_value());
    }
  }
}

TEST_CASE("unfolded graphs refuse rank and membership queries") {
  clt::GraphBuilder b;
  b.add_loop(W("ab"));
  b.add_loop(W("ab"));
  auto g = b.build_unfolded();
  REQUIRE_FALSE(g.folded());
  REQUIRE_THROWS_AS(graph_rank(g), clt::invalid_state);
  REQUIRE_THROWS_AS(is_member(W("ab"), g), clt::invalid_state);
}

TEST_CASE("dot export") {
  auto g = build_and_fold({W("a"), W("Bab")});
  std::string expected =
      "digraph stallings {\n"
      "  rankdir=LR;\n"
      "  0 [shape=doublecircle];\n"
      "  1 [shape=circle];\n"
      "  0 -> 0 [label=\"a\"];\n"
      "  1 -> 1 [label=\"a\"];\n"
      "  1 -> 0 [label=\"b\"];\n"
      "}\n";
  REQUIRE(clt::to_dot(g) == expected);
}
