#pragma once

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <clt/asphericity.hpp>
#include <clt/chain.hpp>
#include <clt/error.hpp>
#include <clt/gog.hpp>
#include <clt/homology.hpp>
#include <clt/stagger.hpp>
#include <clt/stallings.hpp>
#include <clt/trees.hpp>
#include <clt/word.hpp>

namespace clt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_property = 1;  // a checked property failed
inline constexpr int exit_invalid = 2;   // unusable input

// ---- argument helpers --------------------------------------------------------

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline long long parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw invalid_input("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw invalid_input("expected an integer, got '" + s + "'");
  return v;
}

inline std::vector<long long> parse_int_list(const std::string& s) {
  std::vector<long long> out;
  for (const std::string& t : split_on(s, ',')) out.push_back(parse_int(t));
  return out;
}

// Inline values use the uppercase-inverse convention; a value "@path" names a
// file holding one token-form word per line.
inline std::vector<Word> parse_word_list(const std::string& value, const Alphabet& a) {
  std::vector<Word> out;
  if (!value.empty() && value[0] == '@') {
    std::ifstream f(value.substr(1));
    if (!f) throw invalid_input("cannot open word file: " + value.substr(1));
    std::string line;
    while (std::getline(f, line)) {
      std::string trimmed = line;
      trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
      trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
      if (trimmed.empty()) continue;
      out.push_back(parse_word(trimmed, a));
    }
    return out;
  }
  for (const std::string& t : split_on(value, ',')) out.push_back(parse_word(t, a));
  return out;
}

inline GraphOfGroups load_gog(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw invalid_input("cannot open graph file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw invalid_input(std::string("graph json: ") + e.what());
  }
  return gog_from_json(j);
}

// Model grammar: cayley:<rank>, fp:<rank_a>,<rank_b>, gog:<file.json>.
inline TreeModel parse_model(const std::string& spec) {
  if (spec.rfind("cayley:", 0) == 0)
    return TreeModel::cayley(static_cast<int>(parse_int(spec.substr(7))));
  if (spec.rfind("fp:", 0) == 0) {
    auto parts = split_on(spec.substr(3), ',');
    if (parts.size() != 2) throw invalid_input("model: fp wants fp:<rank_a>,<rank_b>");
    return TreeModel::free_product(static_cast<int>(parse_int(parts[0])),
                                   static_cast<int>(parse_int(parts[1])));
  }
  if (spec.rfind("gog:", 0) == 0) return TreeModel::gog(load_gog(spec.substr(4)));
  throw invalid_input("model: expected cayley:<rank>, fp:<ra>,<rb>, or gog:<path>");
}

// Oracle grammar: abelianized, dehn, bounded, bounded:<factors>,<conjugator>.
inline WordProblemOracle parse_oracle(const std::string& spec) {
  if (spec == "abelianized") return WordProblemOracle::abelianized();
  if (spec == "dehn") return WordProblemOracle::dehn();
  if (spec == "bounded") return WordProblemOracle::bounded_search(4, 2);
  if (spec.rfind("bounded:", 0) == 0) {
    auto parts = split_on(spec.substr(8), ',');
    if (parts.size() != 2) throw invalid_input("oracle: bounded wants bounded:<factors>,<conjugator>");
    return WordProblemOracle::bounded_search(static_cast<int>(parse_int(parts[0])),
                                             static_cast<int>(parse_int(parts[1])));
  }
  throw invalid_input("oracle: expected abelianized, dehn, bounded, or bounded:<k>,<m>");
}

inline void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw invalid_input("format '" + format + "' is not available for this subcommand");
}

inline void emit(const std::string& doc, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << doc;
    if (doc.empty() || doc.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw invalid_input("cannot open output file: " + out_path);
  f << doc;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2); }

// ---- report documents --------------------------------------------------------
// In-memory shapes of everything the CLI prints; JSON output parses back to
// the same document.

struct AxisDoc {
  std::string model;
  std::string word;
  int translation_length = 0;
  std::vector<int> footprint;
  std::vector<std::string> orbits;
  bool operator==(const AxisDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const AxisDoc& d) {
  j = {{"model", d.model},
       {"word", d.word},
       {"translation_length", d.translation_length},
       {"footprint", d.footprint},
       {"orbits", d.orbits}};
}
inline void from_json(const nlohmann::json& j, AxisDoc& d) {
  j.at("model").get_to(d.model);
  j.at("word").get_to(d.word);
  j.at("translation_length").get_to(d.translation_length);
  j.at("footprint").get_to(d.footprint);
  j.at("orbits").get_to(d.orbits);
}

struct ConditionDoc {
  std::string name;
  bool evaluated = false;
  bool pass = false;
  std::string detail;
  bool operator==(const ConditionDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const ConditionDoc& d) {
  j = {{"name", d.name}, {"evaluated", d.evaluated}, {"pass", d.pass}, {"detail", d.detail}};
}
inline void from_json(const nlohmann::json& j, ConditionDoc& d) {
  j.at("name").get_to(d.name);
  j.at("evaluated").get_to(d.evaluated);
  j.at("pass").get_to(d.pass);
  j.at("detail").get_to(d.detail);
}

struct StaggerDoc {
  std::string model;
  std::vector<std::string> relators;
  bool feasible = false;
  std::vector<int> ordering;
  bool staggered = false;
  bool strongly_staggered = false;
  std::vector<ConditionDoc> conditions;
  std::vector<int> witness;
  bool operator==(const StaggerDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const StaggerDoc& d) {
  j = {{"model", d.model},
       {"relators", d.relators},
       {"feasible", d.feasible},
       {"ordering", d.ordering},
       {"staggered", d.staggered},
       {"strongly_staggered", d.strongly_staggered},
       {"conditions", d.conditions},
       {"witness", d.witness}};
}
inline void from_json(const nlohmann::json& j, StaggerDoc& d) {
  j.at("model").get_to(d.model);
  j.at("relators").get_to(d.relators);
  j.at("feasible").get_to(d.feasible);
  j.at("ordering").get_to(d.ordering);
  j.at("staggered").get_to(d.staggered);
  j.at("strongly_staggered").get_to(d.strongly_staggered);
  j.at("conditions").get_to(d.conditions);
  j.at("witness").get_to(d.witness);
}

struct ChainStepDoc {
  bool chose_dagger = false;
  int dagger_rank = 0;
  int survivors = 0;
  bool operator==(const ChainStepDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const ChainStepDoc& d) {
  j = {{"chose_dagger", d.chose_dagger}, {"dagger_rank", d.dagger_rank}, {"survivors", d.survivors}};
}
inline void from_json(const nlohmann::json& j, ChainStepDoc& d) {
  j.at("chose_dagger").get_to(d.chose_dagger);
  j.at("dagger_rank").get_to(d.dagger_rank);
  j.at("survivors").get_to(d.survivors);
}

struct ChainDoc {
  int rank = 0;
  std::vector<std::string> S, Phi, glue;
  int nu = 0;
  std::vector<ChainStepDoc> steps;
  std::vector<std::string> basis;
  int bottom_rank = 0;
  bool operator==(const ChainDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const ChainDoc& d) {
  j = {{"rank", d.rank}, {"S", d.S},         {"Phi", d.Phi},
       {"glue", d.glue}, {"nu", d.nu},       {"steps", d.steps},
       {"basis", d.basis}, {"bottom_rank", d.bottom_rank}};
}
inline void from_json(const nlohmann::json& j, ChainDoc& d) {
  j.at("rank").get_to(d.rank);
  j.at("S").get_to(d.S);
  j.at("Phi").get_to(d.Phi);
  j.at("glue").get_to(d.glue);
  j.at("nu").get_to(d.nu);
  j.at("steps").get_to(d.steps);
  j.at("basis").get_to(d.basis);
  j.at("bottom_rank").get_to(d.bottom_rank);
}

struct ClBasisDoc {
  int rank = 0;
  std::string relator, root, oracle;
  int L = 0;
  int window = 0;
  std::vector<std::string> representatives;
  int conjugates = 0;
  int folded_rank = 0;
  bool independent = false;
  bool coset_certified = false;
  bool operator==(const ClBasisDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const ClBasisDoc& d) {
  j = {{"rank", d.rank},
       {"relator", d.relator},
       {"root", d.root},
       {"oracle", d.oracle},
       {"L", d.L},
       {"window", d.window},
       {"representatives", d.representatives},
       {"conjugates", d.conjugates},
       {"folded_rank", d.folded_rank},
       {"independent", d.independent},
       {"coset_certified", d.coset_certified}};
}
inline void from_json(const nlohmann::json& j, ClBasisDoc& d) {
  j.at("rank").get_to(d.rank);
  j.at("relator").get_to(d.relator);
  j.at("root").get_to(d.root);
  j.at("oracle").get_to(d.oracle);
  j.at("L").get_to(d.L);
  j.at("window").get_to(d.window);
  j.at("representatives").get_to(d.representatives);
  j.at("conjugates").get_to(d.conjugates);
  j.at("folded_rank").get_to(d.folded_rank);
  j.at("independent").get_to(d.independent);
  j.at("coset_certified").get_to(d.coset_certified);
}

struct VerifyBasisDoc {
  int rank = 0;
  std::vector<std::string> family, gens;
  int bound = 0;
  std::vector<std::string> transversal, unverified;
  bool basis_certified = false;
  bool certified = false;
  bool operator==(const VerifyBasisDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const VerifyBasisDoc& d) {
  j = {{"rank", d.rank},
       {"family", d.family},
       {"gens", d.gens},
       {"bound", d.bound},
       {"transversal", d.transversal},
       {"unverified", d.unverified},
       {"basis_certified", d.basis_certified},
       {"certified", d.certified}};
}
inline void from_json(const nlohmann::json& j, VerifyBasisDoc& d) {
  j.at("rank").get_to(d.rank);
  j.at("family").get_to(d.family);
  j.at("gens").get_to(d.gens);
  j.at("bound").get_to(d.bound);
  j.at("transversal").get_to(d.transversal);
  j.at("unverified").get_to(d.unverified);
  j.at("basis_certified").get_to(d.basis_certified);
  j.at("certified").get_to(d.certified);
}

struct GogSyllableDoc {
  int vertex = -1;
  int edge = -1;
  int sign = 0;
  std::string part;
  bool operator==(const GogSyllableDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const GogSyllableDoc& d) {
  j = {{"vertex", d.vertex}, {"edge", d.edge}, {"sign", d.sign}, {"part", d.part}};
}
inline void from_json(const nlohmann::json& j, GogSyllableDoc& d) {
  j.at("vertex").get_to(d.vertex);
  j.at("edge").get_to(d.edge);
  j.at("sign").get_to(d.sign);
  j.at("part").get_to(d.part);
}

struct GogDoc {
  nlohmann::json graph;
  int rank = 0;
  int stable_count = 0;
  std::vector<std::string> generators;
  std::string word;
  std::vector<GogSyllableDoc> syllables;
  int cyclic_syllables = -1;
  bool operator==(const GogDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const GogDoc& d) {
  j = {{"graph", d.graph},
       {"rank", d.rank},
       {"stable_count", d.stable_count},
       {"generators", d.generators},
       {"word", d.word},
       {"syllables", d.syllables},
       {"cyclic_syllables", d.cyclic_syllables}};
}
inline void from_json(const nlohmann::json& j, GogDoc& d) {
  d.graph = j.at("graph");
  j.at("rank").get_to(d.rank);
  j.at("stable_count").get_to(d.stable_count);
  j.at("generators").get_to(d.generators);
  j.at("word").get_to(d.word);
  j.at("syllables").get_to(d.syllables);
  j.at("cyclic_syllables").get_to(d.cyclic_syllables);
}

struct TorsionEntryDoc {
  std::string relator, root;
  long long exponent = 1;
  std::string subgroup;
  std::vector<std::string> window;
  bool complete = false;
  bool operator==(const TorsionEntryDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const TorsionEntryDoc& d) {
  j = {{"relator", d.relator}, {"root", d.root},     {"exponent", d.exponent},
       {"subgroup", d.subgroup}, {"window", d.window}, {"complete", d.complete}};
}
inline void from_json(const nlohmann::json& j, TorsionEntryDoc& d) {
  j.at("relator").get_to(d.relator);
  j.at("root").get_to(d.root);
  j.at("exponent").get_to(d.exponent);
  j.at("subgroup").get_to(d.subgroup);
  j.at("window").get_to(d.window);
  j.at("complete").get_to(d.complete);
}

struct TorsionDoc {
  int rank = 0;
  std::vector<TorsionEntryDoc> entries;
  bool torsion_free = false;
  std::string statement;
  bool operator==(const TorsionDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const TorsionDoc& d) {
  j = {{"rank", d.rank},
       {"entries", d.entries},
       {"torsion_free", d.torsion_free},
       {"statement", d.statement}};
}
inline void from_json(const nlohmann::json& j, TorsionDoc& d) {
  j.at("rank").get_to(d.rank);
  j.at("entries").get_to(d.entries);
  j.at("torsion_free").get_to(d.torsion_free);
  j.at("statement").get_to(d.statement);
}

struct RingTermDoc {
  long long c = 0;
  std::string w;
  bool operator==(const RingTermDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const RingTermDoc& d) {
  j = {{"c", d.c}, {"w", d.w}};
}
inline void from_json(const nlohmann::json& j, RingTermDoc& d) {
  j.at("c").get_to(d.c);
  j.at("w").get_to(d.w);
}

using RingEntryDoc = std::vector<RingTermDoc>;

struct SummandDoc {
  std::string label;
  std::string stabilizer;
  long long order = 1;
  bool operator==(const SummandDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const SummandDoc& d) {
  j = {{"label", d.label}, {"stabilizer", d.stabilizer}, {"order", d.order}};
}
inline void from_json(const nlohmann::json& j, SummandDoc& d) {
  j.at("label").get_to(d.label);
  j.at("stabilizer").get_to(d.stabilizer);
  j.at("order").get_to(d.order);
}

struct ComplexDoc {
  std::string name;
  std::vector<std::vector<SummandDoc>> modules;
  std::vector<std::vector<std::vector<RingEntryDoc>>> boundaries;
  std::string note;
  bool operator==(const ComplexDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const ComplexDoc& d) {
  j = {{"name", d.name}, {"modules", d.modules}, {"boundaries", d.boundaries}, {"note", d.note}};
}
inline void from_json(const nlohmann::json& j, ComplexDoc& d) {
  j.at("name").get_to(d.name);
  j.at("modules").get_to(d.modules);
  j.at("boundaries").get_to(d.boundaries);
  j.at("note").get_to(d.note);
}

struct GroupDoc {
  long long free_rank = 0;
  std::vector<long long> torsion;
  bool operator==(const GroupDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const GroupDoc& d) {
  j = {{"free_rank", d.free_rank}, {"torsion", d.torsion}};
}
inline void from_json(const nlohmann::json& j, GroupDoc& d) {
  j.at("free_rank").get_to(d.free_rank);
  j.at("torsion").get_to(d.torsion);
}

struct HomologyDoc {
  int rank = 0;
  std::vector<std::string> relators;
  GroupDoc h0, h1, h2;
  std::string higher;
  ComplexDoc coset, flat;
  bool composites_checked = false;
  bool composites_ok = false;
  bool operator==(const HomologyDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const HomologyDoc& d) {
  j = {{"rank", d.rank},
       {"relators", d.relators},
       {"h0", d.h0},
       {"h1", d.h1},
       {"h2", d.h2},
       {"higher", d.higher},
       {"coset", d.coset},
       {"flat", d.flat},
       {"composites_checked", d.composites_checked},
       {"composites_ok", d.composites_ok}};
}
inline void from_json(const nlohmann::json& j, HomologyDoc& d) {
  j.at("rank").get_to(d.rank);
  j.at("relators").get_to(d.relators);
  j.at("h0").get_to(d.h0);
  j.at("h1").get_to(d.h1);
  j.at("h2").get_to(d.h2);
  j.at("higher").get_to(d.higher);
  j.at("coset").get_to(d.coset);
  j.at("flat").get_to(d.flat);
  j.at("composites_checked").get_to(d.composites_checked);
  j.at("composites_ok").get_to(d.composites_ok);
}

struct RewriteSyllableDoc {
  std::string kind;
  std::string word;
  long long index = 0;
  int sign = +1;
  bool operator==(const RewriteSyllableDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const RewriteSyllableDoc& d) {
  j = {{"kind", d.kind}, {"word", d.word}, {"index", d.index}, {"sign", d.sign}};
}
inline void from_json(const nlohmann::json& j, RewriteSyllableDoc& d) {
  j.at("kind").get_to(d.kind);
  j.at("word").get_to(d.word);
  j.at("index").get_to(d.index);
  j.at("sign").get_to(d.sign);
}

struct RewriteDoc {
  int rank_a = 0, rank_b = 0;
  std::vector<long long> phi;
  std::string word;
  long long offset = 0;
  std::vector<RewriteSyllableDoc> syllables;
  std::vector<long long> indices;
  bool evaluates_back = false;
  bool operator==(const RewriteDoc&) const = default;
};

inline void to_json(nlohmann::json& j, const RewriteDoc& d) {
  j = {{"rank_a", d.rank_a},   {"rank_b", d.rank_b}, {"phi", d.phi},
       {"word", d.word},       {"offset", d.offset}, {"syllables", d.syllables},
       {"indices", d.indices}, {"evaluates_back", d.evaluates_back}};
}
inline void from_json(const nlohmann::json& j, RewriteDoc& d) {
  j.at("rank_a").get_to(d.rank_a);
  j.at("rank_b").get_to(d.rank_b);
  j.at("phi").get_to(d.phi);
  j.at("word").get_to(d.word);
  j.at("offset").get_to(d.offset);
  j.at("syllables").get_to(d.syllables);
  j.at("indices").get_to(d.indices);
  j.at("evaluates_back").get_to(d.evaluates_back);
}

// ---- document builders ---------------------------------------------------------

inline std::vector<std::string> word_strings(const std::vector<Word>& ws, const Alphabet& a) {
  std::vector<std::string> out;
  out.reserve(ws.size());
  for (const Word& w : ws) out.push_back(print_word(w, a));
  return out;
}

inline AxisDoc axis_doc(const TreeModel& m, const std::string& model_spec, const Word& w) {
  AxisDoc d;
  d.model = model_spec;
  d.word = print_word(w, m.alphabet());
  d.translation_length = translation_length(m, w);
  std::set<int> fp = axis_footprint(m, w);
  d.footprint.assign(fp.begin(), fp.end());
  d.orbits = orbit_names(m, fp);
  return d;
}

inline StaggerDoc stagger_doc(const TreeModel& m, const std::string& model_spec,
                              const std::vector<Word>& R, const StaggerReport* rep) {
  StaggerDoc d;
  d.model = model_spec;
  d.relators = word_strings(R, m.alphabet());
  if (rep == nullptr) return d;
  d.feasible = true;
  d.ordering = rep->effective.ordering;
  d.staggered = rep->staggered();
  d.strongly_staggered = rep->strongly_staggered();
  for (int k = 0; k < 7; ++k)
    d.conditions.push_back({"S" + std::to_string(k + 1), rep->conditions[k].evaluated,
                            rep->conditions[k].pass, rep->conditions[k].detail});
  d.witness = {rep->witness.first, rep->witness.second};
  return d;
}

inline ChainDoc chain_doc(int rank, const ChainReport& rep) {
  Alphabet a = Alphabet::standard(rank);
  ChainDoc d;
  d.rank = rank;
  d.S = word_strings(rep.S, a);
  d.Phi = word_strings(rep.Phi, a);
  d.glue = word_strings(rep.glue, a);
  d.nu = rep.nu;
  for (const ChainStep& s : rep.steps)
    d.steps.push_back({s.chose_dagger, s.dagger_rank, static_cast<int>(s.survivors.size())});
  d.basis = word_strings(rep.bottom.graph().basis_words(), a);
  d.bottom_rank = rep.bottom_rank();
  return d;
}

inline ClBasisDoc clbasis_doc(int rank, const std::string& oracle_spec, const Transversal& t,
                              int window, const CLWindowReport& rep) {
  Alphabet a = Alphabet::standard(rank);
  ClBasisDoc d;
  d.rank = rank;
  d.relator = print_word(t.relator, a);
  d.root = print_word(t.relator_root, a);
  d.oracle = oracle_spec;
  d.L = t.radius;
  d.window = window;
  d.representatives = word_strings(t.representatives, a);
  d.conjugates = static_cast<int>(rep.conjugates.size());
  d.folded_rank = rep.rank;
  d.independent = rep.independent;
  d.coset_certified = rep.coset_certified;
  return d;
}

inline VerifyBasisDoc verify_basis_doc(int rank, const std::vector<Word>& family,
                                       const std::vector<Word>& gens,
                                       const WhiteheadWindowReport& rep) {
  Alphabet a = Alphabet::standard(rank);
  VerifyBasisDoc d;
  d.rank = rank;
  d.family = word_strings(family, a);
  d.gens = word_strings(gens, a);
  d.bound = rep.bound;
  d.transversal = word_strings(rep.transversal, a);
  d.unverified = word_strings(rep.unverified, a);
  d.basis_certified = rep.basis_certified;
  d.certified = rep.certified();
  return d;
}

inline GogDoc gog_doc(const GraphOfGroups& g, const Word* word) {
  GogDoc d;
  d.graph = to_json(g);
  FundamentalPresentation fp = fundamental_presentation(g);
  d.rank = fp.rank;
  d.stable_count = fp.stable_count;
  d.generators = fp.generators;
  if (word != nullptr) {
    d.word = print_word(*word, fp.alphabet);
    for (const GogSyllable& s : normal_form(g, *word))
      d.syllables.push_back({s.vertex, s.edge, s.sign, print_word(s.part, fp.alphabet)});
    d.cyclic_syllables = cyclic_syllable_length(g, *word);
  }
  return d;
}

inline TorsionDoc torsion_doc(const TorsionReport& rep) {
  Alphabet a = Alphabet::standard(rep.rank);
  TorsionDoc d;
  d.rank = rep.rank;
  for (const TorsionEntry& e : rep.entries)
    d.entries.push_back({print_word(e.relator, a), print_word(e.root, a), e.exponent, e.subgroup,
                         word_strings(e.window, a), e.window_complete});
  d.torsion_free = rep.torsion_free;
  d.statement = rep.statement;
  return d;
}

inline ComplexDoc complex_doc(const ComplexSpec& c, const Alphabet& a) {
  ComplexDoc d;
  d.name = c.name;
  d.note = c.note;
  for (const ChainGroup& g : c.modules) {
    std::vector<SummandDoc> mod;
    for (const ModuleSummand& s : g.summands)
      mod.push_back({s.label, print_word(s.stabilizer, a), s.stabilizer_order});
    d.modules.push_back(std::move(mod));
  }
  for (const RingMatrix& m : c.boundaries) {
    std::vector<std::vector<RingEntryDoc>> rows;
    for (const auto& row : m) {
      std::vector<RingEntryDoc> cells;
      for (const GroupRingElement& e : row) {
        RingEntryDoc cell;
        for (const auto& [w, coeff] : e.terms()) cell.push_back({coeff, print_word(w, a)});
        cells.push_back(std::move(cell));
      }
      rows.push_back(std::move(cells));
    }
    d.boundaries.push_back(std::move(rows));
  }
  return d;
}

inline GroupDoc group_doc(const AbelianGroup& g) { return {g.free_rank, g.torsion}; }

inline HomologyDoc homology_doc(int rank, const std::vector<Word>& relators,
                                const ComplexPair& p, const HomologySummary& s) {
  Alphabet a = Alphabet::standard(rank);
  HomologyDoc d;
  d.rank = rank;
  d.relators = word_strings(relators, a);
  d.h0 = group_doc(s.h0);
  d.h1 = group_doc(s.h1);
  d.h2 = group_doc(s.h2);
  d.higher = s.higher;
  d.coset = complex_doc(p.coset, a);
  d.flat = complex_doc(p.flat, a);
  return d;
}

inline RewriteDoc rewrite_doc(const FreeProductGrading& g, const Word& w, long long offset,
                              const ZCoverExpression& e) {
  Alphabet a = Alphabet::standard(g.rank());
  RewriteDoc d;
  d.rank_a = g.rank_a;
  d.rank_b = g.rank_b;
  d.phi = g.values;
  d.word = print_word(w, a);
  d.offset = offset;
  for (const ZSyllable& s : e.syllables) {
    const char* kind = s.kind == ZSyllable::Kind::factor_a   ? "factor_a"
                       : s.kind == ZSyllable::Kind::factor_b ? "factor_b"
                                                             : "stable";
    d.syllables.push_back({kind, print_word(s.word, a), s.index, s.sign});
  }
  d.indices.assign(e.indices.begin(), e.indices.end());
  d.evaluates_back = evaluate_z_cover(g, e) == w;
  return d;
}

// ---- text renderers ------------------------------------------------------------

inline std::string axis_text(const AxisDoc& d) {
  std::ostringstream s;
  s << "word " << d.word << " on " << d.model << "\n"
    << "translation length " << d.translation_length << "\n"
    << "footprint orbits:";
  for (const std::string& o : d.orbits) s << " " << o;
  s << "\n";
  return s.str();
}

inline std::string stagger_text(const StaggerDoc& d) {
  std::ostringstream s;
  if (!d.feasible) {
    s << "no staggering order exists\n";
    return s.str();
  }
  s << "ordering:";
  for (int o : d.ordering) s << " " << o;
  s << "\nstaggered " << (d.staggered ? "yes" : "no") << ", strongly "
    << (d.strongly_staggered ? "yes" : "no") << "\n";
  for (const ConditionDoc& c : d.conditions) {
    s << c.name << ": " << (!c.evaluated ? "skipped" : c.pass ? "pass" : "fail");
    if (!c.detail.empty()) s << " (" << c.detail << ")";
    s << "\n";
  }
  return s.str();
}

inline std::string chain_text(const ChainDoc& d) {
  std::ostringstream s;
  s << "nu = " << d.nu << ", steps = " << d.steps.size() << "\n"
    << "final rank " << d.bottom_rank << ", basis:";
  for (const std::string& b : d.basis) s << " " << b;
  s << "\n";
  return s.str();
}

inline std::string clbasis_text(const ClBasisDoc& d) {
  std::ostringstream s;
  s << d.conjugates << " conjugates of " << d.relator << " fold to rank " << d.folded_rank << "\n"
    << "independent " << (d.independent ? "yes" : "no") << ", coset window "
    << (d.coset_certified ? "certified" : "not certified") << "\n";
  return s.str();
}

inline std::string verify_basis_text(const VerifyBasisDoc& d) {
  std::ostringstream s;
  s << "transversal size " << d.transversal.size() << ", basis "
    << (d.basis_certified ? "certified" : "not certified") << "\n"
    << "unverified members: " << d.unverified.size() << "\n"
    << (d.certified ? "certified" : "not certified") << "\n";
  return s.str();
}

inline std::string gog_text(const GogDoc& d) {
  std::ostringstream s;
  s << "fundamental group free of rank " << d.rank << " (" << d.stable_count
    << " stable letters)\ngenerators:";
  for (const std::string& g : d.generators) s << " " << g;
  s << "\n";
  if (!d.word.empty() || !d.syllables.empty())
    s << "word " << d.word << " has " << d.syllables.size() << " syllables, cyclically "
      << d.cyclic_syllables << "\n";
  return s.str();
}

inline std::string torsion_text(const TorsionDoc& d) {
  std::ostringstream s;
  for (const TorsionEntryDoc& e : d.entries)
    s << e.relator << " = (" << e.root << ")^" << e.exponent << ", subgroup " << e.subgroup
      << ", window " << e.window.size() << (e.complete ? " (complete)" : " (partial)") << "\n";
  s << (d.torsion_free ? "torsion-free" : "has torsion") << "\n" << d.statement << "\n";
  return s.str();
}

inline std::string describe(const GroupDoc& d) {
  AbelianGroup g;
  g.free_rank = d.free_rank;
  g.torsion = d.torsion;
  return clt::describe(g);
}

inline std::string homology_text(const HomologyDoc& d) {
  std::ostringstream s;
  s << "H0 = " << describe(d.h0) << "\nH1 = " << describe(d.h1) << "\nH2 = " << describe(d.h2)
    << "\n"
    << d.higher << "\n";
  if (d.composites_checked)
    s << "boundary composites " << (d.composites_ok ? "vanish" : "not certified") << "\n";
  return s.str();
}

inline std::string rewrite_text(const RewriteDoc& d) {
  std::ostringstream s;
  s << d.word << " rewrites to " << d.syllables.size() << " syllables at offset " << d.offset
    << "\nstable indices:";
  for (long long i : d.indices) s << " " << i;
  s << "\nround trip " << (d.evaluates_back ? "ok" : "failed") << "\n";
  return s.str();
}

// ---- subcommand drivers ----------------------------------------------------------

namespace detail {

struct Options {
  std::string model = "cayley:2";
  int rank = 2;
  std::string relator;
  std::string relators;
  std::string S;
  std::string Phi;
  std::string gens;
  std::string oracle;
  int L = -1;
  int window = 0;
  std::string order;
  std::string out_path;
  std::string format = "json";
};

inline int run_axis(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "dot", "text"});
  TreeModel m = parse_model(o.model);
  Word w = parse_word(o.relator, m.alphabet());
  if (w.empty() || fixes_vertex(m, w)) {
    emit("word fixes a vertex: no axis", o.out_path, out);
    return exit_property;
  }
  if (o.format == "dot") {
    int window = o.window > 0 ? o.window : 2;
    emit(to_dot(m, axis_segment(m, w, window)), o.out_path, out);
    return exit_ok;
  }
  AxisDoc d = axis_doc(m, o.model, w);
  emit(o.format == "text" ? axis_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return exit_ok;
}

inline int run_stagger(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  TreeModel m = parse_model(o.model);
  std::vector<Word> R = parse_word_list(o.relators, m.alphabet());
  StaggerDoc d;
  if (!o.order.empty()) {
    Staggering ord;
    for (long long v : parse_int_list(o.order)) ord.ordering.push_back(static_cast<int>(v));
    StaggerReport rep = check_strongly_staggered(m, R, ord);
    d = stagger_doc(m, o.model, R, &rep);
  } else {
    std::optional<Staggering> found = find_staggering(m, R);
    if (!found) {
      d = stagger_doc(m, o.model, R, nullptr);
    } else {
      StaggerReport rep = check_strongly_staggered(m, R, *found);
      d = stagger_doc(m, o.model, R, &rep);
    }
  }
  emit(o.format == "text" ? stagger_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return d.feasible && d.staggered ? exit_ok : exit_property;
}

inline int run_chain(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  Alphabet a = Alphabet::standard(o.rank);
  std::vector<Word> S = parse_word_list(o.S, a);
  std::vector<Word> Phi = o.Phi.empty() ? std::vector<Word>{} : parse_word_list(o.Phi, a);
  ChainReport rep = build_chain(TreeModel::cayley(o.rank), S, Phi);
  ChainDoc d = chain_doc(o.rank, rep);
  emit(o.format == "text" ? chain_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return exit_ok;
}

inline int run_clbasis(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  Alphabet a = Alphabet::standard(o.rank);
  Word r = parse_word(o.relator, a);
  WordProblemOracle oracle = parse_oracle(o.oracle.empty() ? "bounded" : o.oracle);
  int L = o.L >= 0 ? o.L : 2;
  Transversal t = coset_transversal(o.rank, r, oracle, L);
  if (o.window > 0 && static_cast<int>(t.representatives.size()) > o.window)
    t.representatives.resize(o.window);
  CLWindowReport rep = cl_basis_window(r, t);
  ClBasisDoc d = clbasis_doc(o.rank, o.oracle.empty() ? "bounded" : o.oracle, t, o.window, rep);
  emit(o.format == "text" ? clbasis_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return d.independent ? exit_ok : exit_property;
}

inline int run_verify_basis(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  Alphabet a = Alphabet::standard(o.rank);
  std::vector<Word> family = parse_word_list(o.S, a);
  std::vector<Word> gens = o.gens.empty() ? family : parse_word_list(o.gens, a);
  int bound = o.window > 0 ? o.window : 2;
  WhiteheadWindowReport rep = verify_whitehead_window(family, gens, bound);
  VerifyBasisDoc d = verify_basis_doc(o.rank, family, gens, rep);
  emit(o.format == "text" ? verify_basis_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return d.certified ? exit_ok : exit_property;
}

inline int run_gog(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "dot", "text"});
  std::string path = o.model.rfind("gog:", 0) == 0 ? o.model.substr(4) : o.model;
  GraphOfGroups g = load_gog(path);
  if (o.format == "dot") {
    emit(gog_to_dot(g), o.out_path, out);
    return exit_ok;
  }
  Word w;
  bool has_word = !o.relator.empty();
  if (has_word) w = parse_word(o.relator, g.alphabet());
  GogDoc d = gog_doc(g, has_word ? &w : nullptr);
  emit(o.format == "text" ? gog_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return exit_ok;
}

inline int run_torsion(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  Alphabet a = Alphabet::standard(o.rank);
  std::vector<Word> R = parse_word_list(o.relators, a);
  std::vector<WordProblemOracle> oracles;
  if (!o.oracle.empty()) oracles.push_back(parse_oracle(o.oracle));
  int radius = o.L >= 0 ? o.L : 1;
  TorsionDoc d = torsion_doc(torsion_decomposition(o.rank, R, oracles, radius));
  emit(o.format == "text" ? torsion_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return exit_ok;
}

inline int run_homology(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  Alphabet a = Alphabet::standard(o.rank);
  std::vector<Word> R = o.relators.empty() ? std::vector<Word>{} : parse_word_list(o.relators, a);
  ComplexPair p = build_complexes(TreeModel::cayley(o.rank), R);
  HomologyDoc d = homology_doc(o.rank, R, p, homology_trivial_coeffs(p.coset));
  if (!o.oracle.empty()) {
    WordProblemOracle oracle = parse_oracle(o.oracle);
    d.composites_checked = true;
    d.composites_ok = composites_vanish(p.coset, oracle) && composites_vanish(p.flat, oracle);
  }
  emit(o.format == "text" ? homology_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return !d.composites_checked || d.composites_ok ? exit_ok : exit_property;
}

inline int run_rewrite(const Options& o, std::ostream& out) {
  check_format(o.format, {"json", "text"});
  if (o.model.rfind("fp:", 0) != 0)
    throw invalid_input("rewrite: model must be fp:<rank_a>,<rank_b>");
  auto parts = split_on(o.model.substr(3), ',');
  if (parts.size() != 2) throw invalid_input("rewrite: model must be fp:<rank_a>,<rank_b>");
  int ra = static_cast<int>(parse_int(parts[0]));
  int rb = static_cast<int>(parse_int(parts[1]));
  FreeProductGrading g = o.Phi.empty() ? FreeProductGrading::standard(ra, rb)
                                       : FreeProductGrading(ra, rb, parse_int_list(o.Phi));
  Word w = parse_word(o.relator, Alphabet::standard(g.rank()));
  long long offset = o.order.empty() ? 0 : parse_int(o.order);
  ZCoverExpression e = z_cover_rewrite(g, w, offset);
  RewriteDoc d = rewrite_doc(g, w, offset, e);
  emit(o.format == "text" ? rewrite_text(d) : dump(nlohmann::json(d)), o.out_path, out);
  return exit_ok;
}

}  // namespace detail

// ---- entry point -----------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"relator toolkit: trees, staggered sets, normal-closure bases, homology"};
  app.name("clt");
  app.require_subcommand(1);

  detail::Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "write the document to a file instead of stdout");
    sub->add_option("--format", o.format, "output format: json, dot, or text")
        ->default_str("json");
  };

  CLI::App* axis = app.add_subcommand("axis", "axis footprint and translation length of a word");
  axis->add_option("--model", o.model, "cayley:<rank>, fp:<ra>,<rb>, or gog:<file.json>");
  axis->add_option("--relator", o.relator, "the word acting on the tree")->required();
  axis->add_option("--window", o.window, "axis segment radius for dot output");
  add_common(axis);

  CLI::App* stagger = app.add_subcommand("stagger", "search or check a staggering order");
  stagger->add_option("--model", o.model, "tree model");
  stagger->add_option("--relators", o.relators, "comma list or @file of relators")->required();
  stagger->add_option("--order", o.order, "orbit order to check instead of searching");
  add_common(stagger);

  CLI::App* chain = app.add_subcommand("chain", "descending subgroup chain from a relator set");
  chain->add_option("--rank", o.rank, "ambient free rank");
  chain->add_option("--S", o.S, "comma list or @file of chain seeds")->required();
  chain->add_option("--Phi", o.Phi, "extra words carried along the chain");
  add_common(chain);

  CLI::App* clbasis = app.add_subcommand("clbasis", "normal-closure basis window over a transversal");
  clbasis->add_option("--rank", o.rank, "ambient free rank");
  clbasis->add_option("--relator", o.relator, "the relator")->required();
  clbasis->add_option("--oracle", o.oracle, "abelianized, dehn, bounded, bounded:<k>,<m>");
  clbasis->add_option("--L", o.L, "transversal search radius");
  clbasis->add_option("--window", o.window, "keep only the first N representatives");
  add_common(clbasis);

  CLI::App* verify = app.add_subcommand("verify-basis", "certify a conjugation family as a basis");
  verify->add_option("--rank", o.rank, "ambient free rank");
  verify->add_option("--S", o.S, "comma list or @file: the family")->required();
  verify->add_option("--relators", o.gens, "members to verify against the window (default: the family)");
  verify->add_option("--window", o.window, "conjugator length bound");
  add_common(verify);

  CLI::App* gog = app.add_subcommand("gog", "inspect a graph of groups");
  gog->add_option("--model", o.model, "gog:<file.json> or a bare path")->required();
  gog->add_option("--relator", o.relator, "optional word to put in normal form");
  add_common(gog);

  CLI::App* torsion = app.add_subcommand("torsion", "torsion structure of the quotient");
  torsion->add_option("--rank", o.rank, "ambient free rank");
  torsion->add_option("--relators", o.relators, "comma list or @file of relators")->required();
  torsion->add_option("--oracle", o.oracle, "oracle for the transversal windows");
  torsion->add_option("--L", o.L, "window radius");
  add_common(torsion);

  CLI::App* homology = app.add_subcommand("homology", "chain complexes and trivial-coefficient homology");
  homology->add_option("--rank", o.rank, "ambient free rank");
  homology->add_option("--relators", o.relators, "comma list or @file of relators");
  homology->add_option("--oracle", o.oracle, "also certify boundary composites with this oracle");
  add_common(homology);

  CLI::App* rewrite = app.add_subcommand("rewrite", "rewrite a kernel word over the z-cover");
  rewrite->add_option("--model", o.model, "fp:<rank_a>,<rank_b>")->required();
  rewrite->add_option("--relator", o.relator, "graded-zero word to rewrite")->required();
  rewrite->add_option("--Phi", o.Phi, "grading values, one per generator");
  rewrite->add_option("--order", o.order, "junction offset");
  add_common(rewrite);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid;
  }

  try {
    if (app.got_subcommand(axis)) return detail::run_axis(o, out);
    if (app.got_subcommand(stagger)) return detail::run_stagger(o, out);
    if (app.got_subcommand(chain)) return detail::run_chain(o, out);
    if (app.got_subcommand(clbasis)) return detail::run_clbasis(o, out);
    if (app.got_subcommand(verify)) return detail::run_verify_basis(o, out);
    if (app.got_subcommand(gog)) return detail::run_gog(o, out);
    if (app.got_subcommand(torsion)) return detail::run_torsion(o, out);
    if (app.got_subcommand(homology)) return detail::run_homology(o, out);
    if (app.got_subcommand(rewrite)) return detail::run_rewrite(o, out);
  } catch (const clt::error& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }
  err << "error: no subcommand\n";
  return exit_invalid;
}

}  // namespace clt::cli
