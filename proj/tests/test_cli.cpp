#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <clt/cli.hpp>

#include "helpers.hpp"

using namespace clt;
using namespace clt::cli;
using testutil::W;

namespace {

struct RunResult {
  int code = -1;
  std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int c = run(args, o, e);
  return {c, o.str(), e.str()};
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

std::filesystem::path scratch_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "clt_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string staircase_string(int n) {
  std::string s;
  for (int k = 1; k <= n; ++k) {
    s += 'a';
    s.append(k, 'b');
  }
  return s;
}

GraphOfGroups sample_gog() {
  GraphOfGroups g;
  g.vertices = {{"U", 1}, {"V", 2}};
  g.edges.push_back({0, 1, true, {}, {}});
  g.edges.push_back({0, 0, false, {}, {}});
  g.validate();
  return g;
}

}  // namespace

TEST_CASE("clbasis window over the abelianized transversal") {
  auto res = run_cli({"clbasis", "--rank", "2", "--relator", "abAB", "--oracle", "abelianized",
                      "--L", "2", "--window", "9"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  ClBasisDoc parsed = j.get<ClBasisDoc>();
  CHECK(parsed.independent);
  CHECK(parsed.coset_certified);
  CHECK(parsed.conjugates == 9);
  CHECK(parsed.folded_rank == 9);
  CHECK(parsed.representatives.size() == 9);

  Word r = W("abAB", 2);
  Transversal t = coset_transversal(2, r, WordProblemOracle::abelianized(), 2);
  t.representatives.resize(9);
  CLWindowReport rep = cl_basis_window(r, t);
  ClBasisDoc direct = clbasis_doc(2, "abelianized", t, 9, rep);
  CHECK(parsed == direct);
  CHECK(nlohmann::json(parsed) == j);
}

TEST_CASE("stagger reports infeasible with exit one") {
  auto res = run_cli({"stagger", "--model", "cayley:2", "--relators", "ab,aB"});
  REQUIRE(res.code == 1);
  StaggerDoc d = nlohmann::json::parse(res.out).get<StaggerDoc>();
  CHECK_FALSE(d.feasible);
  CHECK(d.ordering.empty());
  CHECK(d.conditions.empty());
  CHECK(d.relators == std::vector<std::string>{"ab", "aB"});
}

TEST_CASE("stagger searches and checks an explicit order") {
  auto searched = run_cli({"stagger", "--model", "cayley:2", "--relators", "aabb"});
  REQUIRE(searched.code == 0);
  StaggerDoc d = nlohmann::json::parse(searched.out).get<StaggerDoc>();
  CHECK(d.feasible);
  CHECK(d.staggered);
  CHECK(d.strongly_staggered);
  REQUIRE(d.conditions.size() == 7);
  CHECK(d.conditions[0].name == "S1");
  CHECK(d.witness == std::vector<int>{-1, -1});

  auto ordered = run_cli({"stagger", "--model", "cayley:2", "--relators", "aabb", "--order", "0,1"});
  REQUIRE(ordered.code == 0);
  StaggerDoc e = nlohmann::json::parse(ordered.out).get<StaggerDoc>();

  TreeModel m = TreeModel::cayley(2);
  std::vector<Word> R = {W("aabb", 2)};
  Staggering ord;
  ord.ordering = {0, 1};
  StaggerReport rep = check_strongly_staggered(m, R, ord);
  StaggerDoc direct = stagger_doc(m, "cayley:2", R, &rep);
  CHECK(e == direct);
  CHECK(nlohmann::json(e) == nlohmann::json::parse(ordered.out));
}

TEST_CASE("chain run lands on the seed basis") {
  auto res = run_cli({"chain", "--rank", "2", "--S", "a"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  ChainDoc parsed = j.get<ChainDoc>();
  CHECK(parsed.basis == std::vector<std::string>{"a"});
  CHECK(parsed.bottom_rank == 1);
  CHECK(parsed.nu >= 1);
  CHECK(parsed.steps.size() <= static_cast<std::size_t>(parsed.nu));

  ChainReport rep = build_chain(TreeModel::cayley(2), {W("a", 2)}, {});
  CHECK(parsed == chain_doc(2, rep));
  CHECK(nlohmann::json(parsed) == j);
}

TEST_CASE("axis document and dot output") {
  TreeModel m = TreeModel::cayley(2);
  Word w = W("ab", 2);

  auto res = run_cli({"axis", "--model", "cayley:2", "--relator", "ab"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  AxisDoc parsed = j.get<AxisDoc>();
  CHECK(parsed == axis_doc(m, "cayley:2", w));
  CHECK(parsed.translation_length == translation_length(m, w));
  CHECK(nlohmann::json(parsed) == j);

  auto dot = run_cli({"axis", "--model", "cayley:2", "--relator", "ab", "--format", "dot",
                      "--window", "2"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out == with_newline(to_dot(m, axis_segment(m, w, 2))));
}

TEST_CASE("axis exits one on vertex fixers") {
  auto res = run_cli({"axis", "--model", "fp:1,1", "--relator", "a"});
  CHECK(res.code == 1);
  CHECK(res.out.find("no axis") != std::string::npos);
}

TEST_CASE("verify-basis certifies a conjugation family") {
  auto res = run_cli({"verify-basis", "--rank", "2", "--S", "a,baB,bbaBB"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  VerifyBasisDoc parsed = j.get<VerifyBasisDoc>();
  CHECK(parsed.certified);
  CHECK(parsed.unverified.empty());

  std::vector<Word> family = {W("a", 2), W("baB", 2), W("bbaBB", 2)};
  WhiteheadWindowReport rep = verify_whitehead_window(family, family, 2);
  CHECK(parsed == verify_basis_doc(2, family, family, rep));
  CHECK(nlohmann::json(parsed) == j);
}

TEST_CASE("verify-basis exits one on a dependent family") {
  auto res = run_cli({"verify-basis", "--rank", "2", "--S", "a,aa"});
  CHECK(res.code == 1);
  VerifyBasisDoc d = nlohmann::json::parse(res.out).get<VerifyBasisDoc>();
  CHECK_FALSE(d.certified);
}

TEST_CASE("gog document, file fixture, and dot output") {
  GraphOfGroups g = sample_gog();
  auto path = scratch_file("sample_gog.json");
  {
    std::ofstream f(path);
    f << to_json(g).dump(2);
  }

  auto res = run_cli({"gog", "--model", "gog:" + path.string(), "--relator", "u1 v2 z1"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  GogDoc parsed = j.get<GogDoc>();
  CHECK(parsed.rank == 4);
  CHECK(parsed.stable_count == 1);
  CHECK(parsed.cyclic_syllables == 3);
  CHECK(parsed.graph == to_json(g));
  CHECK(same_graph(gog_from_json(parsed.graph), g));

  Word w = parse_word("u1 v2 z1", g.alphabet());
  CHECK(parsed == gog_doc(g, &w));
  CHECK(nlohmann::json(parsed) == j);

  auto bare = run_cli({"gog", "--model", path.string()});
  REQUIRE(bare.code == 0);
  GogDoc plain = nlohmann::json::parse(bare.out).get<GogDoc>();
  CHECK(plain.word.empty());
  CHECK(plain.syllables.empty());
  CHECK(plain.cyclic_syllables == -1);

  auto dot = run_cli({"gog", "--model", path.string(), "--format", "dot"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out == with_newline(gog_to_dot(g)));
}

TEST_CASE("torsion document round-trips") {
  auto res = run_cli({"torsion", "--rank", "2", "--relators", "aa,bbb"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  TorsionDoc parsed = j.get<TorsionDoc>();
  REQUIRE(parsed.entries.size() == 2);
  CHECK(parsed.entries[0].exponent == 2);
  CHECK(parsed.entries[1].exponent == 3);
  CHECK_FALSE(parsed.torsion_free);

  TorsionDoc direct = torsion_doc(torsion_decomposition(2, {W("aa", 2), W("bbb", 2)}, {}, 1));
  CHECK(parsed == direct);
  CHECK(nlohmann::json(parsed) == j);
}

TEST_CASE("homology document with composite certification") {
  auto res = run_cli({"homology", "--rank", "2", "--relators", "ababab", "--oracle", "bounded:3,2"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  HomologyDoc parsed = j.get<HomologyDoc>();
  CHECK(parsed.h1 == GroupDoc{1, {3}});
  CHECK(parsed.h2 == GroupDoc{0, {}});
  CHECK(parsed.composites_checked);
  CHECK(parsed.composites_ok);

  TreeModel m = TreeModel::cayley(2);
  std::vector<Word> R = {W("ababab", 2)};
  ComplexPair p = build_complexes(m, R);
  HomologyDoc direct = homology_doc(2, R, p, homology_trivial_coeffs(p.coset));
  direct.composites_checked = true;
  direct.composites_ok = true;
  CHECK(parsed == direct);
  CHECK(nlohmann::json(parsed) == j);
}

TEST_CASE("rewrite document round-trips") {
  auto res = run_cli({"rewrite", "--model", "fp:1,2", "--relator", "aB", "--order", "3"});
  REQUIRE(res.code == 0);
  nlohmann::json j = nlohmann::json::parse(res.out);
  RewriteDoc parsed = j.get<RewriteDoc>();
  CHECK(parsed.rank_a == 1);
  CHECK(parsed.rank_b == 2);
  CHECK(parsed.offset == 3);
  CHECK(parsed.evaluates_back);

  FreeProductGrading g = FreeProductGrading::standard(1, 2);
  Word w = W("aB", 3);
  RewriteDoc direct = rewrite_doc(g, w, 3, z_cover_rewrite(g, w, 3));
  CHECK(parsed == direct);
  CHECK(nlohmann::json(parsed) == j);
}

TEST_CASE("dehn oracle works on a sixth relator and rejects others") {
  std::string stair = staircase_string(20);
  auto res = run_cli({"clbasis", "--rank", "2", "--relator", stair, "--oracle", "dehn", "--L", "1"});
  REQUIRE(res.code == 0);
  ClBasisDoc d = nlohmann::json::parse(res.out).get<ClBasisDoc>();
  CHECK(d.independent);
  CHECK(d.coset_certified);
  CHECK(d.conjugates == 5);

  auto rejected = run_cli({"clbasis", "--rank", "2", "--relator", "abAB", "--oracle", "dehn"});
  CHECK(rejected.code == 2);
  CHECK_FALSE(rejected.err.empty());
}

TEST_CASE("invalid inputs exit two with a diagnostic") {
  struct Scenario {
    const char* name;
    std::vector<std::string> args;
  };
  auto bad_gog = scratch_file("broken.json");
  {
    std::ofstream f(bad_gog);
    f << "{ not json";
  }
  const Scenario scenarios[] = {
      {"unknown subcommand", {"frobnicate"}},
      {"no subcommand", {}},
      {"bad model", {"axis", "--model", "klein:2", "--relator", "a"}},
      {"bad word", {"axis", "--model", "cayley:2", "--relator", "a$"}},
      {"missing required option", {"clbasis", "--rank", "2"}},
      {"bad oracle", {"clbasis", "--rank", "2", "--relator", "abAB", "--oracle", "magic"}},
      {"bad format", {"axis", "--model", "cayley:2", "--relator", "ab", "--format", "yaml"}},
      {"conjugate relator pair", {"torsion", "--rank", "2", "--relators", "ababab,bababa"}},
      {"relator not cyclically reduced", {"homology", "--rank", "2", "--relators", "abA"}},
      {"relator out of range", {"homology", "--rank", "2", "--relators", "abc"}},
      {"graded word not in the kernel", {"rewrite", "--model", "fp:1,1", "--relator", "ab"}},
      {"rewrite wants a free product", {"rewrite", "--model", "cayley:2", "--relator", "aB"}},
      {"missing graph file", {"gog", "--model", "gog:/nonexistent/g.json"}},
      {"malformed graph json", {"gog", "--model", bad_gog.string()}},
      {"dot format off a dot-less subcommand", {"chain", "--rank", "2", "--S", "a", "--format", "dot"}},
  };
  for (const Scenario& s : scenarios) {
    INFO(s.name);
    auto res = run_cli(s.args);
    CHECK(res.code == 2);
    CHECK_FALSE(res.err.empty());
  }
}

TEST_CASE("help exits zero") {
  auto top = run_cli({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("Subcommands") != std::string::npos);
  auto sub = run_cli({"axis", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--relator") != std::string::npos);
}

TEST_CASE("out flag writes the same document to a file") {
  auto path = scratch_file("chain_doc.json");
  std::filesystem::remove(path);
  auto to_file = run_cli({"chain", "--rank", "2", "--S", "a,bab", "--out", path.string()});
  REQUIRE(to_file.code == 0);
  CHECK(to_file.out.empty());
  auto to_stdout = run_cli({"chain", "--rank", "2", "--S", "a,bab"});
  REQUIRE(to_stdout.code == 0);
  CHECK(with_newline(slurp(path)) == to_stdout.out);
}

TEST_CASE("word lists load from token-form files") {
  auto path = scratch_file("seeds.txt");
  {
    std::ofstream f(path);
    f << "a a\n\n  b a b^-1\n";
  }
  auto from_file = run_cli({"chain", "--rank", "2", "--S", "@" + path.string()});
  REQUIRE(from_file.code == 0);
  auto inline_form = run_cli({"chain", "--rank", "2", "--S", "aa,baB"});
  REQUIRE(inline_form.code == 0);
  CHECK(from_file.out == inline_form.out);
}

TEST_CASE("text format renders every document") {
  const std::vector<std::vector<std::string>> runs = {
      {"axis", "--model", "cayley:2", "--relator", "ab", "--format", "text"},
      {"stagger", "--model", "cayley:2", "--relators", "aabb", "--format", "text"},
      {"chain", "--rank", "2", "--S", "a", "--format", "text"},
      {"clbasis", "--rank", "2", "--relator", "abAB", "--oracle", "abelianized", "--format", "text"},
      {"verify-basis", "--rank", "2", "--S", "a,baB", "--format", "text"},
      {"torsion", "--rank", "2", "--relators", "aa", "--format", "text"},
      {"homology", "--rank", "2", "--relators", "abAB", "--format", "text"},
      {"rewrite", "--model", "fp:1,1", "--relator", "aB", "--format", "text"},
  };
  for (const auto& args : runs) {
    INFO(args[0]);
    auto res = run_cli(args);
    CHECK(res.code == 0);
    CHECK_FALSE(res.out.empty());
  }
}

TEST_CASE("random axis documents agree with the library") {
  auto g = testutil::rng();
  TreeModel m = TreeModel::cayley(2);
  Alphabet a = Alphabet::standard(2);
  std::uniform_int_distribution<int> len(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    Word w = testutil::random_word(g, 2, len(g));
    auto res = run_cli({"axis", "--model", "cayley:2", "--relator", print_word(w, a)});
    REQUIRE(res.code == 0);
    nlohmann::json j = nlohmann::json::parse(res.out);
    AxisDoc parsed = j.get<AxisDoc>();
    CHECK(parsed == axis_doc(m, "cayley:2", w));
    CHECK(nlohmann::json(parsed) == j);
  }
}

TEST_CASE("random kernel words rewrite and evaluate back through the cli") {
  auto g = testutil::rng();
  FreeProductGrading grading = FreeProductGrading::standard(1, 1);
  Alphabet a = Alphabet::standard(2);
  int checked = 0;
  for (int trial = 0; trial < 40 && checked < 25; ++trial) {
    Word w0 = testutil::random_word_up_to(g, 2, 8);
    auto ev = exponent_vector(w0, 2);
    long long grade = ev[0] + ev[1];
    Word w = w0 * pow(Word::generator(0), static_cast<int>(-grade));
    if (w.empty()) continue;
    ++checked;
    auto res = run_cli({"rewrite", "--model", "fp:1,1", "--relator", print_word(w, a)});
    REQUIRE(res.code == 0);
    RewriteDoc parsed = nlohmann::json::parse(res.out).get<RewriteDoc>();
    CHECK(parsed.evaluates_back);
    CHECK(parsed == rewrite_doc(grading, w, 0, z_cover_rewrite(grading, w, 0)));
  }
  CHECK(checked >= 10);
}
