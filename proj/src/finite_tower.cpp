#include "qgrp/finite_tower.hpp"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qgrp/errors.hpp"

namespace qgrp {

namespace {

// Words over generators as (index, inverted) letters, shortlex with g < G
// and generators in tower order.
struct GenLetter {
  std::size_t gen;
  bool inv;
};

void words_of_length(std::size_t gens, std::size_t len, std::vector<GenLetter>& prefix,
                     std::vector<std::vector<GenLetter>>& out) {
  if (prefix.size() == len) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t g = 0; g < gens; ++g)
    for (bool inv : {false, true}) {
      if (!prefix.empty() && prefix.back().gen == g && prefix.back().inv != inv) continue;
      prefix.push_back({g, inv});
      words_of_length(gens, len, prefix, out);
      prefix.pop_back();
    }
}

Elem core_of(const Tower& t, const Elem& x) { return t.is_cyclically_minimal(x) ? x : t.cyclic_reduce(x).core; }

std::string root_name(int n, int index) { return "w" + std::to_string(n) + "_" + std::to_string(index); }

constexpr const char* kCacheHeader = "qgrp-vn 1";

}  // namespace

std::vector<VnEntry> enumerate_vn(const Tower& t, int n) {
  std::vector<Elem> gens = t.generators();
  std::vector<std::string> names = t.generator_names();
  std::vector<Elem> inverses;
  for (const Elem& g : gens) inverses.push_back(t.inverse(g));

  std::vector<VnEntry> out;
  std::set<std::string> classes;
  int index = 0;
  for (std::size_t len = 1; len <= static_cast<std::size_t>(n); ++len) {
    std::vector<std::vector<GenLetter>> words;
    std::vector<GenLetter> prefix;
    words_of_length(gens.size(), len, prefix, words);
    for (const auto& w : words) {
      Elem x;
      std::string text;
      for (const GenLetter& l : w) {
        x = t.multiply(x, l.inv ? inverses[l.gen] : gens[l.gen]);
        if (!text.empty()) text += " ";
        text += names[l.gen] + (l.inv ? "^-1" : "");
      }
      if (x.is_identity()) continue;
      Decomposition d = t.decompose(x);
      Rational e = d.exponent < Rational(0) ? -d.exponent : d.exponent;
      if (e != t.chain_unit(d.base)) continue;
      if (!classes.insert(t.format(d.base)).second) continue;
      out.push_back(VnEntry{core_of(t, x), text, root_name(n, ++index)});
    }
  }
  return out;
}

FiniteTower::FiniteTower(Alphabet base, int max_level, std::filesystem::path cache_dir)
    : base_(std::move(base)), max_level_(max_level), cache_dir_(std::move(cache_dir)) {
  levels_.push_back(std::make_unique<Tower>(base_));
}

void FiniteTower::build_to(int n) {
  if (n > max_level_)
    throw ResourceError("tower level " + std::to_string(n) + " exceeds the cap " + std::to_string(max_level_));
  while (static_cast<int>(levels_.size()) <= n) {
    int k = static_cast<int>(levels_.size());
    const Tower& prev = *levels_.back();
    std::vector<VnEntry> entries;
    if (auto cached = load_vn(prev, k)) {
      entries = std::move(*cached);
    } else {
      entries = enumerate_vn(prev, k);
      store_vn(k, entries);
    }
    auto next = std::make_unique<Tower>(prev);
    for (const VnEntry& e : entries) next->extend_centralizer(e.element, k, e.root);
    vn_.push_back(std::move(entries));
    levels_.push_back(std::move(next));
  }
}

std::filesystem::path FiniteTower::cache_file(int n) const {
  return cache_dir_ / ("V" + std::to_string(n) + "-" + base_.names() + ".txt");
}

// One defining word per line. Entries are re-evaluated in T_{n-1}.
std::optional<std::vector<VnEntry>> FiniteTower::load_vn(const Tower& prev, int n) const {
  if (cache_dir_.empty()) return std::nullopt;
  std::ifstream in(cache_file(n));
  std::string line;
  if (!in || !std::getline(in, line) || line != std::string(kCacheHeader) + " " + base_.names() + " " + std::to_string(n))
    return std::nullopt;
  std::vector<VnEntry> out;
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Elem x = prev.evaluate(prev.parse_raw(line));
      if (x.is_identity() || !prev.is_primitive(x)) return std::nullopt;
      out.push_back(VnEntry{core_of(prev, x), line, root_name(n, static_cast<int>(out.size()) + 1)});
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

void FiniteTower::store_vn(int n, const std::vector<VnEntry>& entries) const {
  if (cache_dir_.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(cache_dir_, ec);
  std::filesystem::path target = cache_file(n), tmp = target;
  tmp += ".tmp" + std::to_string(std::random_device()());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << kCacheHeader << " " << base_.names() << " " << n << "\n";
    for (const VnEntry& e : entries) out << e.generators << "\n";
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
}

const Tower& FiniteTower::level(int n) {
  std::lock_guard<std::mutex> lock(mu_);
  build_to(n);
  return *levels_[static_cast<std::size_t>(n)];
}

const std::vector<VnEntry>& FiniteTower::vn(int n) {
  if (n < 1) throw InputError("V_n is defined for n >= 1");
  std::lock_guard<std::mutex> lock(mu_);
  build_to(n);
  return vn_[static_cast<std::size_t>(n - 1)];
}

}  // namespace qgrp
