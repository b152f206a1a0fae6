#include "construction.hpp"

#include <cctype>
#include <fstream>
#include <set>

namespace qgrp::cli {

using nlohmann::json;

namespace {

const json& field(const json& obj, const std::string& at, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(at, std::string("missing required key \"") + key + "\"");
  return *it;
}

void only_keys(const json& obj, const std::string& at, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) throw SchemaError(at + "/" + it.key(), "unknown key");
  }
}

std::string string_at(const json& v, const std::string& at) {
  if (!v.is_string()) throw SchemaError(at, "expected a string");
  return v.get<std::string>();
}

Alphabet alphabet_at(const json& v, const std::string& at) {
  std::string s = string_at(v, at);
  if (s.empty()) throw SchemaError(at, "alphabet must be nonempty");
  std::set<char> seen;
  for (char c : s)
    if (!std::islower(static_cast<unsigned char>(c)) || !seen.insert(c).second)
      throw SchemaError(at, "alphabet must be distinct lowercase letters");
  return Alphabet(s);
}

Word word_at(const Alphabet& a, const json& v, const std::string& at) {
  std::string s = string_at(v, at);
  try {
    return parse_word(a, s);
  } catch (const InputError& e) {
    throw InputError(at + ": " + e.what(), e.position());
  }
}

std::vector<Word> words_at(const Alphabet& a, const json& v, const std::string& at) {
  if (!v.is_array()) throw SchemaError(at, "expected an array of words");
  std::vector<Word> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(word_at(a, v[i], at + "/" + std::to_string(i)));
  return out;
}

// Pairs [u, v]; defaults to u_i -> v_i when absent.
std::vector<std::pair<Word, Word>> iso_at(const json& doc, const Alphabet& left, const Alphabet& right,
                                          const std::vector<Word>& u, const std::vector<Word>& v) {
  std::vector<std::pair<Word, Word>> out;
  auto it = doc.find("iso");
  if (it == doc.end()) {
    if (u.size() != v.size()) throw SchemaError("/iso", "required when u and v have different lengths");
    for (std::size_t i = 0; i < u.size(); ++i) out.emplace_back(u[i], v[i]);
    return out;
  }
  if (!it->is_array()) throw SchemaError("/iso", "expected an array of [u, v] pairs");
  for (std::size_t i = 0; i < it->size(); ++i) {
    std::string at = "/iso/" + std::to_string(i);
    const json& p = (*it)[i];
    if (!p.is_array() || p.size() != 2) throw SchemaError(at, "expected a pair [u, v]");
    out.emplace_back(word_at(left, p[0], at + "/0"), word_at(right, p[1], at + "/1"));
  }
  return out;
}

HNNData parse_hnn(const json& doc) {
  only_keys(doc, "", {"kind", "alphabet", "stable_letter", "u", "v", "iso"});
  HNNData d{alphabet_at(field(doc, "", "alphabet"), "/alphabet"), {}, {}, {}};
  if (auto it = doc.find("stable_letter"); it != doc.end()) {
    std::string s = string_at(*it, "/stable_letter");
    if (s.size() != 1 || !std::islower(static_cast<unsigned char>(s[0])))
      throw SchemaError("/stable_letter", "expected one lowercase letter");
    d.stable_letter = s[0];
  }
  d.u_generators = words_at(d.base, field(doc, "", "u"), "/u");
  d.v_generators = words_at(d.base, field(doc, "", "v"), "/v");
  d.iso = iso_at(doc, d.base, d.base, d.u_generators, d.v_generators);
  return d;
}

AmalgamData parse_amalgam(const json& doc) {
  only_keys(doc, "", {"kind", "left", "right", "u", "v", "iso"});
  AmalgamData d{alphabet_at(field(doc, "", "left"), "/left"), alphabet_at(field(doc, "", "right"), "/right"), {}, {}, {}};
  d.u_generators = words_at(d.left, field(doc, "", "u"), "/u");
  d.v_generators = words_at(d.right, field(doc, "", "v"), "/v");
  d.iso = iso_at(doc, d.left, d.right, d.u_generators, d.v_generators);
  return d;
}

TowerSpec parse_tower(const json& doc) {
  only_keys(doc, "", {"kind", "alphabet", "steps"});
  TowerSpec t{alphabet_at(field(doc, "", "alphabet"), "/alphabet"), {}};
  const json& steps = field(doc, "", "steps");
  if (!steps.is_array()) throw SchemaError("/steps", "expected an array");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string at = "/steps/" + std::to_string(i);
    const json& s = steps[i];
    if (!s.is_object()) throw SchemaError(at, "expected an object");
    only_keys(s, at, {"v", "m", "name"});
    TowerStep step;
    step.v = string_at(field(s, at, "v"), at + "/v");
    const json& m = field(s, at, "m");
    if (!m.is_number_integer() || m.get<std::int64_t>() < 1) throw SchemaError(at + "/m", "expected an integer >= 1");
    step.m = m.get<std::int64_t>();
    if (auto it = s.find("name"); it != s.end()) step.name = string_at(*it, at + "/name");
    t.steps.push_back(std::move(step));
  }
  return t;
}

}  // namespace

Tower TowerSpec::build() const {
  Tower t(alphabet);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string at = "/steps/" + std::to_string(i) + "/v";
    Elem v;
    try {
      v = t.evaluate(t.parse_raw(steps[i].v));
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what(), e.position());
    }
    t.extend_centralizer(v, steps[i].m, steps[i].name);
  }
  return t;
}

Construction parse_construction(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  std::string kind = string_at(field(doc, "", "kind"), "/kind");
  if (kind == "hnn") return parse_hnn(doc);
  if (kind == "amalgam") return parse_amalgam(doc);
  if (kind == "tower") return parse_tower(doc);
  throw SchemaError("/kind", "expected \"hnn\", \"amalgam\" or \"tower\"");
}

Construction load_construction(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  return parse_construction(doc);
}

}  // namespace qgrp::cli
