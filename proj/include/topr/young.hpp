#pragma once

// General-lambda irreducible gl(N) modules, built the slow, unimpeachable way:
// image of the Young symmetrizer c = P Q inside (C^N)^{tensor d}, orthonormal
// basis extracted by rank-revealing Jacobi SVD (cutoff 1e-10 relative),
// generators and group action compressed to that basis.  Quarantined to |lambda| <= 5,
// N <= 4, and used as the independent oracle for the determinant formulas.

#include "topr/matrix.hpp"
#include "topr/partition.hpp"
#include "topr/repspace.hpp"

#include <Eigen/Dense>

#include <memory>

namespace topr {

namespace detail {

inline Eigen::MatrixXcd eigen_from(const Matrix<Complex>& m) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m.at(i, j);
  return r;
}

inline Matrix<Complex> eigen_to(const Eigen::MatrixXcd& m) {
  Matrix<Complex> r(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = m(i, j);
  return r;
}

// All permutations (as slot maps of size d) preserving the given blocks.
inline std::vector<std::vector<int>> block_permutations(const std::vector<std::vector<int>>& blocks, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> id(d);
  std::iota(id.begin(), id.end(), 0);
  out.push_back(id);
  for (const auto& block : blocks) {
    std::vector<int> perm(block.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> next;
    do {
      for (const auto& base : out) {
        std::vector<int> s = base;
        for (size_t t = 0; t < block.size(); ++t) s[block[t]] = base[block[perm[t]]];
        next.push_back(std::move(s));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out = std::move(next);
  }
  return out;
}

inline int perm_sign(std::vector<int> s) {
  int sign = 1;
  for (size_t a = 1; a < s.size(); ++a)
    for (size_t b = a; b > 0 && s[b - 1] > s[b]; --b) {
      std::swap(s[b - 1], s[b]);
      sign = -sign;
    }
  return sign;
}

// P_sigma (v_1 x ... x v_d) = v_{sigma^{-1}(1)} x ... x v_{sigma^{-1}(d)},
// slot 1 most significant in the flattening.
inline Eigen::MatrixXd perm_matrix(const std::vector<int>& sigma, int N, int d) {
  int dim = 1;
  for (int s = 0; s < d; ++s) dim *= N;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<int> digits(d);
  for (int col = 0; col < dim; ++col) {
    int v = col;
    for (int t = d - 1; t >= 0; --t) {
      digits[t] = v % N;
      v /= N;
    }
    // J[sigma[s]] = I[s], i.e. J[t] = I[sigma^{-1}(t)].
    int row = 0;
    std::vector<int> out_digits(d);
    for (int s = 0; s < d; ++s) out_digits[sigma[s]] = digits[s];
    for (int t = 0; t < d; ++t) row = row * N + out_digits[t];
    m(row, col) = 1.0;
  }
  return m;
}

}  // namespace detail

inline long hook_content_dimension(int N, const Partition& lam) {
  Rational dim(1);
  Partition conj = conjugate(lam);
  for (int i = 1; i <= lam.length(); ++i)
    for (int j = 1; j <= lam.part(i); ++j) {
      long content = N + j - i;
      long hook = lam.part(i) - j + conj.part(j) - i + 1;
      dim *= Rational(content, hook);
    }
  return dim.convert_to<long>();
}

inline RepSpace<Complex> young_rep(int N, const Partition& lam) {
  if (lam.weight() > 5 || N > 4) throw std::invalid_argument("young_rep: quarantined to |lambda| <= 5, N <= 4");
  const int d = static_cast<int>(lam.weight());
  int dim_t = 1;
  for (int s = 0; s < d; ++s) dim_t *= N;
  if (dim_t > 1024) throw std::invalid_argument("young_rep: tensor space larger than 1024");
  const long target_dim = hook_content_dimension(N, lam);

  // Row-filling tableau: row i holds consecutive numbers.
  std::vector<std::vector<int>> rows, cols;
  {
    int next = 0;
    std::vector<std::vector<int>> grid(lam.length());
    for (int i = 0; i < lam.length(); ++i)
      for (int j = 0; j < lam.part(i + 1); ++j) grid[i].push_back(next++);
    rows = grid;
    Partition conj = conjugate(lam);
    cols.resize(conj.length());
    for (int j = 0; j < conj.length(); ++j)
      for (int i = 0; i < conj.part(j + 1); ++i) cols[j].push_back(grid[i][j]);
  }

  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(dim_t, dim_t);
  for (const auto& s : detail::block_permutations(rows, d)) P += detail::perm_matrix(s, N, d);
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(dim_t, dim_t);
  for (const auto& s : detail::block_permutations(cols, d)) Q += detail::perm_sign(s) * detail::perm_matrix(s, N, d);
  Eigen::MatrixXd c = P * Q;

  // JacobiSVD, not BDCSVD: the divide-and-conquer kernel misranks this kind
  // of highly structured integer matrix (spurious ~1e-3 singular values).
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  double cutoff = sv.size() > 0 ? 1e-10 * sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  if (rank != target_dim)
    throw std::runtime_error("young_rep: symmetrizer rank " + std::to_string(rank) + " != hook-content dimension " +
                             std::to_string(target_dim));

  auto U = std::make_shared<Eigen::MatrixXcd>(svd.matrixU().leftCols(rank).cast<Complex>());

  RepSpace<Complex> rep;
  rep.N = N;
  rep.dim = rank;
  rep.gens.assign(static_cast<size_t>(N) * N, Matrix<Complex>(rank, rank));
  for (int i = 1; i <= N; ++i)
    for (int j = 1; j <= N; ++j) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim_t, dim_t);
      // E_ij acting on slot s.
      for (int col = 0; col < dim_t; ++col) {
        int v = col;
        std::vector<int> digits(d);
        for (int t = d - 1; t >= 0; --t) {
          digits[t] = v % N;
          v /= N;
        }
        for (int s = 0; s < d; ++s) {
          if (digits[s] != j - 1) continue;
          std::vector<int> out = digits;
          out[s] = i - 1;
          int row = 0;
          for (int t = 0; t < d; ++t) row = row * N + out[t];
          a(row, col) += 1.0;
        }
      }
      Eigen::MatrixXcd compressed = U->adjoint() * a.cast<Complex>() * (*U);
      rep.gens[static_cast<size_t>(i - 1) * N + (j - 1)] = detail::eigen_to(compressed);
    }

  rep.group = [U, N, d](const Matrix<Complex>& g) {
    Eigen::MatrixXcd ge = detail::eigen_from(g);
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Ones(1, 1);
    for (int s = 0; s < d; ++s) {
      Eigen::MatrixXcd next(big.rows() * N, big.cols() * N);
      for (int i = 0; i < big.rows(); ++i)
        for (int j = 0; j < big.cols(); ++j) next.block(i * N, j * N, N, N) = big(i, j) * ge;
      big = std::move(next);
    }
    return detail::eigen_to(U->adjoint() * big * (*U));
  };
  return rep;
}

}  // namespace topr
