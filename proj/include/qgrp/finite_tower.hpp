#pragma once

// The effective tower T_0 < T_1 < ... whose union is the Q-completion of a
// free group: T_n adjoins n-th roots of every element of V_n.

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qgrp/tower.hpp"

namespace qgrp {

struct VnEntry {
  Elem element;            // canonical form in T_{n-1}
  std::string generators;  // the defining word over the generators of T_{n-1}
  std::string root;        // name of the root symbol adjoined in T_n
};

/// Greedy shortlex choice of V_n: primitive elements of T_{n-1} of length at
/// most n over its generators, one per centralizer class.
std::vector<VnEntry> enumerate_vn(const Tower& t, int n);

class FiniteTower {
 public:
  /// With a nonempty `cache_dir`, V_n tables are read from and written to
  /// files there; unreadable or stale files are ignored and rewritten.
  explicit FiniteTower(Alphabet base, int max_level = 3, std::filesystem::path cache_dir = {});

  const Alphabet& base() const { return base_; }
  int max_level() const { return max_level_; }
  /// T_n; throws ResourceError when n exceeds the level cap.
  const Tower& level(int n);
  const std::vector<VnEntry>& vn(int n);

 private:
  void build_to(int n);
  std::filesystem::path cache_file(int n) const;
  std::optional<std::vector<VnEntry>> load_vn(const Tower& prev, int n) const;
  void store_vn(int n, const std::vector<VnEntry>& entries) const;

  Alphabet base_;
  int max_level_;
  std::filesystem::path cache_dir_;
  std::vector<std::unique_ptr<Tower>> levels_;
  std::vector<std::vector<VnEntry>> vn_;  // vn_[n-1] = V_n
  std::mutex mu_;
};

}  // namespace qgrp
