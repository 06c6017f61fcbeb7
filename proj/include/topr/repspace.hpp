#pragma once

// Finite-dimensional gl(N) representations presented concretely: a dimension,
// generator matrices gen(i,j) realizing E_ij, and a group-element map
// group(g).  Generators of Sym^k and Lambda^k have exact integer entries and
// group(g) is polynomial in the entries of g, so both work over any field.

#include "topr/matrix.hpp"
#include "topr/partition.hpp"
#include "topr/ppoly.hpp"

#include <functional>
#include <map>

namespace topr {

template <class F>
struct RepSpace {
  int N = 0;
  int dim = 0;
  // gens[(i-1)*N + (j-1)] realizes E_ij.
  std::vector<Matrix<F>> gens;
  std::function<Matrix<F>(const Matrix<F>&)> group;
  // Basis bookkeeping: exponent vectors for Sym^k, index tuples for Lambda^k.
  std::vector<std::vector<int>> labels;

  const Matrix<F>& gen(int i, int j) const { return gens[static_cast<size_t>(i - 1) * N + (j - 1)]; }
};

namespace detail {

// Compositions of k into N parts, descending lexicographic order, so that
// e.g. N=2, k=2 lists x1^2, x1 x2, x2^2.
inline std::vector<std::vector<int>> compositions_desc(int N, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(N, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == N - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  if (N == 0) {
    if (k == 0) out.push_back({});
    return out;
  }
  rec(0, k);
  return out;
}

inline std::vector<std::vector<int>> increasing_tuples(int N, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= N; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

}  // namespace detail

// Sym^k(C^N) on monomials x^mu; E_ij acts as x_i d/dx_j and group elements by
// the substitution x_q -> sum_p g_{pq} x_p.
template <class F>
RepSpace<F> sym_rep(int N, int k) {
  if (N < 1 || k < 0) throw std::invalid_argument("sym_rep: bad N or k");
  RepSpace<F> rep;
  rep.N = N;
  rep.labels = detail::compositions_desc(N, k);
  rep.dim = static_cast<int>(rep.labels.size());
  std::map<std::vector<int>, int> index;
  for (int t = 0; t < rep.dim; ++t) index[rep.labels[t]] = t;

  rep.gens.assign(static_cast<size_t>(N) * N, Matrix<F>(rep.dim, rep.dim));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      Matrix<F>& m = rep.gens[static_cast<size_t>(i - 1) * N + (j - 1)];
      for (int col = 0; col < rep.dim; ++col) {
        const auto& mu = rep.labels[col];
        if (mu[j - 1] == 0) continue;
        std::vector<int> nu = mu;
        nu[j - 1] -= 1;
        nu[i - 1] += 1;
        m.at(index.at(nu), col) = FieldOps<F>::from_int(mu[j - 1]);
      }
    }

  auto labels = rep.labels;
  auto idx = index;
  rep.group = [N, labels, idx, dim = rep.dim](const Matrix<F>& g) {
    Matrix<F> out(dim, dim);
    for (int col = 0; col < dim; ++col) {
      const auto& mu = labels[col];
      // Expand prod_q (sum_p g_{pq} x_p)^{mu_q}.
      std::map<std::vector<int>, F> poly;
      poly[std::vector<int>(N, 0)] = FieldOps<F>::one();
      for (int q = 1; q <= N; ++q)
        for (int rep_cnt = 0; rep_cnt < mu[q - 1]; ++rep_cnt) {
          std::map<std::vector<int>, F> next;
          for (const auto& [e, c] : poly)
            for (int p = 1; p <= N; ++p) {
              const F& gpq = g.at(p - 1, q - 1);
              if (FieldOps<F>::is_zero(gpq)) continue;
              std::vector<int> e2 = e;
              e2[p - 1] += 1;
              auto [it, ins] = next.try_emplace(std::move(e2), FieldOps<F>::zero());
              it->second += c * gpq;
            }
          poly = std::move(next);
        }
      for (const auto& [e, c] : poly) out.at(idx.at(e), col) = c;
    }
    return out;
  };
  return rep;
}

// Lambda^k(C^N) on e_{s1} ^ ... ^ e_{sk}, s1 < ... < sk; group elements act by
// k x k minors det g[T, S].
template <class F>
RepSpace<F> wedge_rep(int N, int k) {
  if (N < 1 || k < 0 || k > N) throw std::invalid_argument("wedge_rep: need 0 <= k <= N");
  RepSpace<F> rep;
  rep.N = N;
  rep.labels = detail::increasing_tuples(N, k);
  rep.dim = static_cast<int>(rep.labels.size());
  std::map<std::vector<int>, int> index;
  for (int t = 0; t < rep.dim; ++t) index[rep.labels[t]] = t;

  rep.gens.assign(static_cast<size_t>(N) * N, Matrix<F>(rep.dim, rep.dim));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      Matrix<F>& m = rep.gens[static_cast<size_t>(i - 1) * N + (j - 1)];
      for (int col = 0; col < rep.dim; ++col) {
        const auto& s = rep.labels[col];
        auto jt = std::find(s.begin(), s.end(), j);
        if (jt == s.end()) continue;
        if (i == j) {
          m.at(col, col) = FieldOps<F>::one();
          continue;
        }
        if (std::find(s.begin(), s.end(), i) != s.end()) continue;
        std::vector<int> t = s;
        t[jt - s.begin()] = i;
        // Sort back to increasing order, tracking the sign.
        int sign = 1;
        for (size_t a = 1; a < t.size(); ++a)
          for (size_t b = a; b > 0 && t[b - 1] > t[b]; --b) {
            std::swap(t[b - 1], t[b]);
            sign = -sign;
          }
        m.at(index.at(t), col) = sign > 0 ? FieldOps<F>::one() : -FieldOps<F>::one();
      }
    }

  auto labels = rep.labels;
  rep.group = [k, labels, dim = rep.dim](const Matrix<F>& g) {
    Matrix<F> out(dim, dim);
    for (int row = 0; row < dim; ++row)
      for (int col = 0; col < dim; ++col) {
        std::vector<std::vector<F>> minor(k, std::vector<F>(k, FieldOps<F>::zero()));
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) minor[a][b] = g.at(labels[row][a] - 1, labels[col][b] - 1);
        out.at(row, col) = detail::subset_det(minor, FieldOps<F>::zero(), FieldOps<F>::one());
      }
    return out;
  };
  return rep;
}

}  // namespace topr
