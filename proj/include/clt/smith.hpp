#pragma once

#include <cstdlib>
#include <vector>

#include "clt/error.hpp"

namespace clt {

using Matrix = std::vector<std::vector<long long>>;

inline Matrix identity_matrix(int n) {
  Matrix m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix matrix_product(const Matrix& a, const Matrix& b) {
  int m = static_cast<int>(a.size());
  int k = m ? static_cast<int>(a[0].size()) : 0;
  int n = k && !b.empty() ? static_cast<int>(b[0].size()) : (b.empty() ? 0 : static_cast<int>(b[0].size()));
  Matrix c(m, std::vector<long long>(n, 0));
  for (int i = 0; i < m; ++i)
    for (int t = 0; t < k; ++t)
      if (a[i][t])
        for (int j = 0; j < n; ++j) c[i][j] += a[i][t] * b[t][j];
  return c;
}

// u * input * v = d with u, v unimodular and d diagonal, each entry dividing
// the next.
struct SmithForm {
  Matrix d, u, v;

  std::vector<long long> diagonal() const {
    std::vector<long long> out;
    for (std::size_t i = 0; i < d.size() && i < (d.empty() ? 0 : d[0].size()); ++i) out.push_back(d[i][i]);
    return out;
  }
  int rank() const {
    int r = 0;
    for (long long x : diagonal()) r += (x != 0);
    return r;
  }
};

inline SmithForm smith_normal_form(Matrix a) {
  int m = static_cast<int>(a.size());
  int n = m ? static_cast<int>(a[0].size()) : 0;
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw invalid_input("smith_normal_form: ragged matrix");

  SmithForm s;
  s.u = identity_matrix(m);
  s.v = identity_matrix(n);

  auto row_add = [&](int dst, int src, long long k) {  // row dst += k * row src
    for (int j = 0; j < n; ++j) a[dst][j] += k * a[src][j];
    for (int j = 0; j < m; ++j) s.u[dst][j] += k * s.u[src][j];
  };
  auto col_add = [&](int dst, int src, long long k) {
    for (int i = 0; i < m; ++i) a[i][dst] += k * a[i][src];
    for (int i = 0; i < n; ++i) s.v[i][dst] += k * s.v[i][src];
  };
  auto row_swap = [&](int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(s.u[i], s.u[j]);
  };
  auto col_swap = [&](int i, int j) {
    for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < n; ++r) std::swap(s.v[r][i], s.v[r][j]);
  };
  auto row_negate = [&](int i) {
    for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
    for (int j = 0; j < m; ++j) s.u[i][j] = -s.u[i][j];
  };

  int bound = std::min(m, n);
  for (int t = 0; t < bound; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < m; ++i)
        for (int j = t; j < n; ++j)
          if (a[i][j] != 0 &&
              (pi < 0 || std::llabs(a[i][j]) < std::llabs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        bound = t;  // remaining block is zero
        break;
      }
      if (pi != t) row_swap(pi, t);
      if (pj != t) col_swap(pj, t);

      bool clean = true;
      for (int i = t + 1; i < m; ++i)
        if (a[i][t] != 0) {
          row_add(i, t, -(a[i][t] / a[t][t]));
          if (a[i][t] != 0) clean = false;
        }
      for (int j = t + 1; j < n; ++j)
        if (a[t][j] != 0) {
          col_add(j, t, -(a[t][j] / a[t][t]));
          if (a[t][j] != 0) clean = false;
        }
      if (!clean) continue;

      bool divides = true;
      for (int i = t + 1; i < m && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_add(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (bound == t) break;
    if (a[t][t] < 0) row_negate(t);
  }

  s.d = std::move(a);
  return s;
}

// Rank over the rationals via fraction-free elimination; an independent check
// against the smith rank.
inline int bareiss_rank(Matrix a) {
  int m = static_cast<int>(a.size());
  int n = m ? static_cast<int>(a[0].size()) : 0;
  int rank = 0;
  long long prev = 1;
  for (int col = 0; col < n && rank < m; ++col) {
    int piv = -1;
    for (int i = rank; i < m; ++i)
      if (a[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int i = rank + 1; i < m; ++i) {
      for (int j = col + 1; j < n; ++j)
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace clt
