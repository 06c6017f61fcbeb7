#pragma once

// Partitions, integer vectors and the straightening rule
//
//   T_alpha = sgn(sigma) * T_lambda   where  alpha - rho = sigma(lambda - rho),
//   rho_i = i - 1,
//
// realized as: gamma_i = alpha_i - i; a repeated gamma value kills the vector;
// otherwise sort gamma strictly decreasing by a permutation sigma and set
// lambda_i = gamma_sorted_i + i; any negative part kills the vector.  Trailing
// zeros of alpha are significant (they change the length l and hence rho), so
// vectors are straightened exactly as given.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace topr {

using IntegerVector = std::vector<int>;

class Partition {
 public:
  Partition() = default;
  // Accepts any weakly decreasing list of non-negative ints; trailing zeros
  // are stripped so equal partitions compare equal.
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i + 1 < parts_.size(); ++i)
      if (parts_[i] < parts_[i + 1]) throw std::invalid_argument("Partition: parts must be weakly decreasing");
    if (!parts_.empty() && parts_.back() < 0) throw std::invalid_argument("Partition: negative part");
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  long weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0L); }
  // part(i) is 1-indexed and returns 0 beyond the length.
  int part(int i) const { return (i >= 1 && i <= length()) ? parts_[i - 1] : 0; }
  bool empty() const { return parts_.empty(); }

  friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

 private:
  std::vector<int> parts_;
};

// lambda'_j = #{ i : lambda_i >= j }.
inline Partition conjugate(const Partition& p) {
  std::vector<int> c;
  for (int j = 1; j <= p.part(1); ++j) {
    int cnt = 0;
    for (int v : p.parts())
      if (v >= j) ++cnt;
    c.push_back(cnt);
  }
  return Partition(std::move(c));
}

// Straightening result: either Zero or (sign, partition).  The partition keeps
// no memory of the original length (trailing zeros are stripped).
struct SignedPartition {
  bool zero = true;
  int sign = 0;  // +1 or -1 when !zero
  Partition partition;

  static SignedPartition make_zero() { return {}; }
  static SignedPartition make(int sign, Partition p) { return {false, sign, std::move(p)}; }
  friend bool operator==(const SignedPartition& a, const SignedPartition& b) {
    if (a.zero != b.zero) return false;
    if (a.zero) return true;
    return a.sign == b.sign && a.partition == b.partition;
  }
};

inline SignedPartition straighten(const IntegerVector& alpha) {
  const int l = static_cast<int>(alpha.size());
  std::vector<long> gamma(l);
  for (int i = 0; i < l; ++i) gamma[i] = static_cast<long>(alpha[i]) - (i + 1);

  std::vector<int> order(l);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return gamma[x] > gamma[y]; });
  for (int i = 0; i + 1 < l; ++i)
    if (gamma[order[i]] == gamma[order[i + 1]]) return SignedPartition::make_zero();

  // Parity of the sorting permutation via cycle count.
  std::vector<bool> seen(l, false);
  int transpositions = 0;
  for (int i = 0; i < l; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = order[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  const int sign = (transpositions % 2 == 0) ? 1 : -1;

  std::vector<int> lam(l);
  for (int i = 0; i < l; ++i) {
    long v = gamma[order[i]] + (i + 1);
    if (v < 0) return SignedPartition::make_zero();
    lam[i] = static_cast<int>(v);
  }
  return SignedPartition::make(sign, Partition(std::move(lam)));
}

struct ChargedPartition {
  int charge = 0;
  Partition partition;

  friend bool operator==(const ChargedPartition& a, const ChargedPartition& b) {
    return a.charge == b.charge && a.partition == b.partition;
  }
  friend bool operator<(const ChargedPartition& a, const ChargedPartition& b) {
    if (a.charge != b.charge) return a.charge < b.charge;
    return a.partition < b.partition;
  }
  std::string str() const { return "z^" + std::to_string(charge) + " " + partition.str(); }
};

// All partitions of weight exactly w with at most max_len parts.
inline void partitions_of(int w, int max_len, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (w == 0) {
    out.emplace_back(cur);
    return;
  }
  if (max_len == 0) return;
  for (int p = std::min(w, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of(w - p, max_len - 1, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Partition> partitions_up_to_weight(int max_weight, int max_len = 1 << 20) {
  std::vector<Partition> out;
  std::vector<int> cur;
  for (int w = 0; w <= max_weight; ++w) partitions_of(w, max_len, w, cur, out);
  return out;
}

inline std::vector<Partition> partitions_of_weight(int w, int max_len = 1 << 20) {
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_of(w, max_len, w, cur, out);
  return out;
}

}  // namespace topr
