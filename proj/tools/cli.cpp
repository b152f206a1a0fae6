#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "construction.hpp"
#include "json.hpp"
#include "qgrp/area.hpp"
#include "qgrp/checker.hpp"
#include "qgrp/errors.hpp"
#include "qgrp/qcompletion.hpp"
#include "qgrp/stallings.hpp"

namespace qgrp::cli {

using Json = nlohmann::ordered_json;

namespace {

struct Result {
  int exit = Exit::decided;
  Json data;
  std::string human;
};

struct Options {
  bool json = false;
  int max_level = 3;
  std::optional<std::size_t> k_bound;
  std::size_t area_bound = 6;
  std::string alphabet;
  std::string base = "ab";
  int n = 1;
  std::string file;
  std::vector<std::string> args;
  std::vector<std::string> gens;
  std::vector<std::string> relators;
};

std::filesystem::path cache_dir() {
  const char* dir = std::getenv(kCacheEnv);
  return dir ? std::filesystem::path(dir) : std::filesystem::path();
}

// "@path" arguments expand to the nonempty lines of the file.
std::vector<std::string> expand(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const std::string& a : args) {
    if (a.empty() || a[0] != '@') {
      out.push_back(a);
      continue;
    }
    std::ifstream in(a.substr(1));
    if (!in) throw FileError("cannot open " + a.substr(1));
    for (std::string line; std::getline(in, line);) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
      if (!line.empty()) out.push_back(line);
    }
  }
  return out;
}

Alphabet alphabet_for(const Options& o, const std::vector<std::string>& texts) {
  if (!o.alphabet.empty()) return Alphabet(o.alphabet);
  Alphabet a = infer_alphabet(texts);
  return a.size() == 0 ? Alphabet("a") : a;
}

std::vector<std::string> all_texts(const Options& o) {
  std::vector<std::string> t = o.args;
  t.insert(t.end(), o.gens.begin(), o.gens.end());
  t.insert(t.end(), o.relators.begin(), o.relators.end());
  return t;
}

void require_count(const std::vector<std::string>& args, std::size_t n, const char* what) {
  if (args.size() != n) throw CLI::ValidationError(std::string(what) + " expects " + std::to_string(n) + " argument(s)");
}

std::vector<Word> words(const Alphabet& a, const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const std::string& t : texts) out.push_back(parse_word(a, t));
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

// --- word ---

Result word_reduce(const Options& o) {
  require_count(o.args, 1, "word reduce");
  Alphabet a = alphabet_for(o, o.args);
  Word w = parse_word(a, o.args[0]);
  CyclicWord c = cyclic_reduce(w);
  Result r;
  r.data = {{"alphabet", a.names()},
            {"input", o.args[0]},
            {"reduced", format_word(a, w)},
            {"cyclically_reduced", is_cyclically_reduced(w)},
            {"cyclic_core", format_word(a, c.core)},
            {"conjugator", format_word(a, c.conjugator)}};
  r.human = format_word(a, w);
  return r;
}

Result word_conj(const Options& o) {
  require_count(o.args, 2, "word conj");
  Alphabet a = alphabet_for(o, o.args);
  auto c = find_conjugator(parse_word(a, o.args[0]), parse_word(a, o.args[1]));
  Result r;
  r.data = {{"alphabet", a.names()}, {"u", o.args[0]}, {"v", o.args[1]}, {"conjugate", c.has_value()}};
  r.data["conjugator"] = c ? Json(format_word(a, *c)) : Json(nullptr);
  r.exit = c ? Exit::decided : Exit::negative;
  r.human = c ? "conjugate " + format_word(a, *c) : "not conjugate";
  return r;
}

Result word_root(const Options& o) {
  require_count(o.args, 1, "word root");
  Alphabet a = alphabet_for(o, o.args);
  Word w = parse_word(a, o.args[0]);
  if (w.empty()) throw DomainError("the identity has no root");
  CyclicWord c = cyclic_reduce(w);
  Root root = extract_root(c.core);
  Result r;
  r.data = {{"alphabet", a.names()},
            {"input", o.args[0]},
            {"cyclic_core", format_word(a, c.core)},
            {"conjugator", format_word(a, c.conjugator)},
            {"root", format_word(a, root.root)},
            {"exponent", root.exponent},
            {"primitive", root.exponent == 1}};
  r.human = "root " + format_word(a, root.root) + ", exponent " + std::to_string(root.exponent);
  return r;
}

Result word_area(const Options& o) {
  require_count(o.args, 1, "word area");
  Alphabet a = alphabet_for(o, all_texts(o));
  Presentation p(a, words(a, o.relators));
  Word w = parse_word(a, o.args[0]);
  auto area = dehn_area(p, w, o.area_bound);
  Result r;
  Json rels = Json::array();
  for (const Word& x : p.relators()) rels.push_back(format_word(a, x));
  r.data = {{"alphabet", a.names()}, {"relators", rels}, {"word", format_word(a, w)}, {"area_bound", o.area_bound}};
  r.data["area"] = area ? Json(*area) : Json(nullptr);
  r.exit = area ? Exit::decided : Exit::absent;
  r.human = area ? "area " + std::to_string(*area) : "no diagram with at most " + std::to_string(o.area_bound) + " faces";
  return r;
}

// --- subgroup ---

Json words_json(const Alphabet& a, const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const Word& w : ws) out.push_back(format_word(a, w));
  return out;
}

Result subgroup_build(const Options& o) {
  Alphabet a = alphabet_for(o, o.args);
  std::vector<Word> gens = words(a, o.args);
  CoreGraph g = build_core(a, gens);
  Json edges = Json::array();
  for (const CoreGraph::Edge& e : g.edges())
    edges.push_back(Json::array({e.source, std::string(1, a.name(e.generator)), e.target}));
  Result r;
  r.data = {{"alphabet", a.names()},   {"generators", words_json(a, gens)}, {"rank", g.rank()},
            {"vertices", g.vertex_count()}, {"edges", edges},                  {"basis", words_json(a, g.basis())}};
  r.human = g.to_text();
  if (!r.human.empty() && r.human.back() == '\n') r.human.pop_back();
  return r;
}

Result subgroup_member(const Options& o) {
  require_count(o.args, 1, "subgroup member");
  Alphabet a = alphabet_for(o, all_texts(o));
  std::vector<Word> gens = words(a, o.gens);
  Word w = parse_word(a, o.args[0]);
  bool in = contains(build_core(a, gens), w);
  Result r;
  r.data = {{"alphabet", a.names()}, {"generators", words_json(a, gens)}, {"word", format_word(a, w)}, {"member", in}};
  r.exit = in ? Exit::decided : Exit::negative;
  r.human = in ? "member" : "not a member";
  return r;
}

Json separation_json(const Alphabet& a, const std::optional<SeparationWitness>& w) {
  if (!w) return nullptr;
  return Json{{"x", format_word(a, w->x)}, {"u", format_word(a, w->u)}};
}

Result subgroup_malnormal(const Options& o) {
  Alphabet a = alphabet_for(o, o.args);
  std::vector<Word> gens = words(a, o.args);
  auto w = conjugate_separation_witness(build_core(a, gens));
  Result r;
  r.data = {{"alphabet", a.names()}, {"generators", words_json(a, gens)}, {"malnormal", !w}};
  r.data["witness"] = separation_json(a, w);
  r.exit = w ? Exit::negative : Exit::decided;
  r.human = w ? "not malnormal: x = " + format_word(a, w->x) + ", u = " + format_word(a, w->u) : "malnormal";
  return r;
}

Result subgroup_qc(const Options& o) {
  Alphabet a = alphabet_for(o, o.args);
  std::vector<Word> gens = words(a, o.args);
  std::size_t c = quasiconvexity_constant(build_core(a, gens));
  Result r;
  r.data = {{"alphabet", a.names()}, {"generators", words_json(a, gens)}, {"constant", c}};
  r.human = std::to_string(c);
  return r;
}

// --- constructions ---

Result verdict_result(const Verdict& v, const char* kind, const Alphabet& left, const Alphabet& right) {
  Result r;
  r.data = {{"kind", kind}, {"outcome", to_string(v.outcome)}, {"citation", v.citation},
            {"u_separated", v.u_separated}, {"v_separated", v.v_separated}};
  if (std::string(kind) == "hnn") r.data["intersections_finite"] = v.intersections_finite;
  Json w = {{"u", separation_json(left, v.u_witness)}, {"v", separation_json(right, v.v_witness)}};
  if (std::string(kind) == "hnn")
    w["intersection"] = v.intersection ? Json{{"g", format_word(left, v.intersection->g)},
                                              {"u", format_word(left, v.intersection->u)}}
                                       : Json(nullptr);
  r.data["witnesses"] = w;
  if (v.relation) {
    const RelationWitness& rel = *v.relation;
    r.data["relation"] = {{"x", rel.x}, {"y", rel.y}, {"n", rel.n}, {"m", rel.m},
                          {"free_abelian", rel.free_abelian}, {"steps", rel.steps}};
  } else {
    r.data["relation"] = nullptr;
  }
  r.data["unavailable"] = v.unavailable;
  switch (v.outcome) {
    case Outcome::hyperbolic: r.exit = Exit::decided; break;
    case Outcome::not_hyperbolic: r.exit = Exit::negative; break;
    case Outcome::inconclusive: r.exit = Exit::absent; break;
  }
  r.human = to_string(v.outcome) + (v.citation.empty() ? "" : " (" + v.citation + ")");
  return r;
}

Result check_hnn(const Options& o) {
  Construction c = load_construction(o.file);
  auto* d = std::get_if<HNNData>(&c);
  if (!d) throw SchemaError("/kind", "check-hnn expects kind \"hnn\"");
  return verdict_result(check_separated_hnn(*d), "hnn", d->base, d->base);
}

Result check_amalgam_cmd(const Options& o) {
  Construction c = load_construction(o.file);
  auto* d = std::get_if<AmalgamData>(&c);
  if (!d) throw SchemaError("/kind", "check-amalgam expects kind \"amalgam\"");
  return verdict_result(check_amalgam(*d), "amalgam", d->left, d->right);
}

Result show_tower(const Tower& t, Json head) {
  Result r;
  r.data = std::move(head);
  r.data["generators"] = t.generator_names();
  r.data["relations"] = t.relations();
  r.human = "generators: " + join(t.generator_names(), " ");
  for (const std::string& rel : t.relations()) r.human += "\n" + rel;
  return r;
}

Result tower_show(const Options& o) {
  if (!o.file.empty()) {
    Construction c = load_construction(o.file);
    auto* spec = std::get_if<TowerSpec>(&c);
    if (!spec) throw SchemaError("/kind", "tower show expects kind \"tower\"");
    return show_tower(spec->build(), Json{{"base", spec->alphabet.names()}});
  }
  FiniteTower p(Alphabet(o.base), o.max_level, cache_dir());
  return show_tower(p.level(o.n), Json{{"base", o.base}, {"level", o.n}});
}

Result vn_list(const Options& o) {
  if (o.n < 1) throw CLI::ValidationError("--n must be at least 1");
  FiniteTower p(Alphabet(o.base), o.max_level, cache_dir());
  const auto& entries = p.vn(o.n);
  const Tower& prev = p.level(o.n - 1);
  Json list = Json::array();
  std::vector<std::string> lines;
  for (const VnEntry& e : entries) {
    std::string f = prev.format(e.element);
    list.push_back({{"element", f}, {"word", e.generators}, {"root", e.root}});
    lines.push_back(f);
  }
  Result r;
  r.data = {{"base", o.base}, {"n", o.n}, {"count", entries.size()}, {"entries", list}};
  r.human = join(lines, "\n");
  return r;
}

// --- qword ---

Result qword_normalize(const Options& o) {
  std::vector<std::string> exprs = expand(o.args);
  if (exprs.empty()) throw CLI::ValidationError("qword normalize expects at least one expression");
  QCompletion q(alphabet_for(o, exprs), o.max_level, cache_dir());
  Json results = Json::array();
  std::vector<std::string> lines;
  for (const std::string& text : exprs) {
    QWord w = parse_qword(q.base(), text);
    Elem e = q.normalize(w);
    Json item = {{"input", text}, {"normal_form", q.format(e)}, {"depth", depth(w)}};
    std::string level;
    try {
      int n = q.locate(e);
      item["level"] = n;
      level = std::to_string(n);
    } catch (const ResourceError&) {
      item["level"] = nullptr;
      level = "> " + std::to_string(o.max_level);
    }
    results.push_back(item);
    lines.push_back(q.format(e) + "\tlevel " + level);
  }
  Result r;
  r.data = {{"base", q.base().names()}, {"max_level", o.max_level}, {"results", results}};
  r.human = join(lines, "\n");
  return r;
}

Result qword_equal(const Options& o) {
  std::vector<std::string> exprs = expand(o.args);
  require_count(exprs, 2, "qword equal");
  QCompletion q(alphabet_for(o, exprs), o.max_level, cache_dir());
  Elem a = q.normalize(exprs[0]), b = q.normalize(exprs[1]);
  bool eq = a == b;
  Result r;
  r.data = {{"base", q.base().names()}, {"equal", eq}, {"normal_forms", Json::array({q.format(a), q.format(b)})}};
  r.exit = eq ? Exit::decided : Exit::negative;
  r.human = eq ? "equal" : "not equal";
  return r;
}

const char* status_name(ConjStatus s) {
  switch (s) {
    case ConjStatus::conjugate: return "conjugate";
    case ConjStatus::distinct: return "distinct";
    case ConjStatus::unknown: return "unknown";
  }
  return "";
}

// Without --k-bound: exact decision in the Q-model. With it: the bounded
// search in the finite tower T_n holding both elements.
Result qword_conj(const Options& o) {
  std::vector<std::string> exprs = expand(o.args);
  require_count(exprs, 2, "qword conj");
  QCompletion q(alphabet_for(o, exprs), o.max_level, cache_dir());
  Elem a = q.normalize(exprs[0]), b = q.normalize(exprs[1]);
  Result r;
  r.data = {{"base", q.base().names()}, {"normal_forms", Json::array({q.format(a), q.format(b)})}};
  ConjugacyResult c;
  std::string conj;
  if (!o.k_bound) {
    c = q.conjugate(parse_qword(q.base(), exprs[0]), parse_qword(q.base(), exprs[1]));
    r.data["method"] = "exact";
    if (c.conjugator) conj = q.format(*c.conjugator);
  } else {
    int n = std::max(q.locate(a), q.locate(b));
    const Tower& t = q.levels().level(n);
    c = t.conjugate_in_tower(*q.in_level(a, n), *q.in_level(b, n), o.k_bound);
    r.data["method"] = "bounded";
    r.data["level"] = n;
    r.data["k_bound"] = *o.k_bound;
    if (c.conjugator) conj = t.format(*c.conjugator);
  }
  r.data["status"] = status_name(c.status);
  r.data["conjugator"] = c.conjugator ? Json(conj) : Json(nullptr);
  r.exit = c.status == ConjStatus::conjugate ? Exit::decided
           : c.status == ConjStatus::distinct ? Exit::negative
                                              : Exit::absent;
  r.human = std::string(status_name(c.status)) + (c.conjugator ? " " + conj : "");
  return r;
}

Json error_json(const char* code, const std::string& message) {
  return Json{{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Free groups, their HNN-extensions and amalgams, and Q-completions.", "qgrp");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print results as JSON");
  app.add_option("--max-level", o.max_level, "Cap on the tower level T_n")->check(CLI::Range(0, 16));
  app.add_option("--k-bound", o.k_bound, "Bound on v^j conjugation in the tower conjugacy search");
  app.add_option("--area-bound", o.area_bound, "Bound on the number of faces in area searches");

  std::function<Result(const Options&)> action;
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, Result (*fn)(const Options&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto with_alphabet = [&](CLI::App* sub) {
    sub->add_option("--alphabet", o.alphabet, "Generator letters (default: letters in the input)");
    return sub;
  };

  CLI::App* word = app.add_subcommand("word", "Free-group words")->require_subcommand(1);
  with_alphabet(leaf(word, "reduce", "Free and cyclic reduction", word_reduce))->add_option("word", o.args)->required();
  with_alphabet(leaf(word, "conj", "Conjugacy of two words", word_conj))->add_option("words", o.args)->required();
  with_alphabet(leaf(word, "root", "Primitive root", word_root))->add_option("word", o.args)->required();
  CLI::App* area = with_alphabet(leaf(word, "area", "Dehn area in a finite presentation", word_area));
  area->add_option("word", o.args)->required();
  area->add_option("-r,--relator", o.relators, "Relator (repeatable)");

  CLI::App* sub = app.add_subcommand("subgroup", "Finitely generated subgroups")->require_subcommand(1);
  with_alphabet(leaf(sub, "build", "Stallings core graph", subgroup_build))->add_option("generators", o.args)->required();
  CLI::App* member = with_alphabet(leaf(sub, "member", "Membership", subgroup_member));
  member->add_option("word", o.args)->required();
  member->add_option("-g,--gen", o.gens, "Subgroup generator (repeatable)")->required();
  with_alphabet(leaf(sub, "malnormal", "Malnormality", subgroup_malnormal))->add_option("generators", o.args)->required();
  with_alphabet(leaf(sub, "qc-const", "Quasiconvexity constant", subgroup_qc))->add_option("generators", o.args)->required();

  leaf(&app, "check-hnn", "Hyperbolicity of an HNN-extension", check_hnn)->add_option("file", o.file)->required();
  leaf(&app, "check-amalgam", "Hyperbolicity of an amalgam", check_amalgam_cmd)->add_option("file", o.file)->required();

  CLI::App* tower = app.add_subcommand("tower", "Towers of centralizer extensions")->require_subcommand(1);
  CLI::App* show = leaf(tower, "show", "Generators and relations of a tower", tower_show);
  show->add_option("file", o.file, "Construction file of kind tower");
  show->add_option("--base", o.base, "Base alphabet of the tower T_n");
  show->add_option("--n", o.n, "Level of T_n")->check(CLI::NonNegativeNumber);

  CLI::App* vn = app.add_subcommand("vn", "V_n tables")->require_subcommand(1);
  CLI::App* list = leaf(vn, "list", "Elements of V_n", vn_list);
  list->add_option("--base", o.base, "Base alphabet");
  list->add_option("--n", o.n, "n")->required();

  CLI::App* qword = app.add_subcommand("qword", "Q-completion of a free group")->require_subcommand(1);
  auto qleaf = [&](const char* name, const char* help, Result (*fn)(const Options&)) {
    CLI::App* s = leaf(qword, name, help, fn);
    s->add_option("--base", o.alphabet, "Base alphabet (default: letters in the input)");
    s->add_option("expressions", o.args, "Q-words, or @file for one per line")->required();
  };
  qleaf("normalize", "Normal form and tower level", qword_normalize);
  qleaf("equal", "Word problem", qword_equal);
  qleaf("conj", "Conjugacy problem", qword_conj);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  auto fail = [&](const char* code, int exit, const std::string& message, Json extra = Json::object()) {
    if (o.json) {
      Json e = error_json(code, message);
      for (auto& [k, v] : extra.items()) e["error"][k] = v;
      out << e.dump(2) << "\n";
    } else {
      err << "error [" << code << "]: " << message;
      if (extra.contains("position")) err << " (at position " << extra["position"].get<std::size_t>() << ")";
      err << "\n";
    }
    return exit;
  };
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::decided;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::decided;
  } catch (const CLI::ParseError& e) {
    o.json = std::find(args.begin(), args.end(), "--json") != args.end();
    return fail("usage", Exit::input, e.what());
  }

  try {
    Result r = action(o);
    if (o.json)
      out << r.data.dump(2) << "\n";
    else if (!r.human.empty())
      out << r.human << "\n";
    return r.exit;
  } catch (const CLI::ValidationError& e) {
    return fail("usage", Exit::input, e.what());
  } catch (const SchemaError& e) {
    return fail("schema", Exit::input, e.what(), Json{{"pointer", e.pointer()}});
  } catch (const FileError& e) {
    return fail("file", Exit::input, e.what());
  } catch (const InputError& e) {
    Json extra = Json::object();
    if (e.position() != InputError::npos) extra["position"] = e.position();
    return fail("parse", Exit::input, e.what(), extra);
  } catch (const DomainError& e) {
    return fail("domain", Exit::input, e.what());
  } catch (const ResourceError& e) {
    return fail("resource", Exit::absent, e.what());
  }
}

}  // namespace qgrp::cli
