#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "psybracket/psybracket.hpp"

namespace testing_support {

inline std::string data_path(const std::string& rel) { return std::string(PSY_DATA_DIR) + "/" + rel; }

inline psy::PsyBracket structure(const std::string& name) {
  return psy::load_psybracket(data_path("psybrackets/" + name + ".psy"));
}

/// The six printed three-element structures, in printed order.
inline std::vector<psy::PsyBracket> printed_six() {
  std::vector<psy::PsyBracket> out;
  for (int i = 1; i <= 6; ++i) out.push_back(structure("X" + std::to_string(i)));
  return out;
}

inline psy::Diagram corpus(const std::string& name) {
  return psy::load_diagram(data_path("corpus/" + name + ".pkd"));
}

inline std::vector<std::filesystem::path> pkd_files(const std::string& rel) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(data_path(rel)))
    if (e.path().extension() == ".pkd") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// Every shipped diagram: the named ones plus all precrossing masks.
inline std::vector<psy::Diagram> full_corpus() {
  std::vector<psy::Diagram> out;
  for (const auto& p : pkd_files("corpus")) out.push_back(psy::load_diagram(p.string()));
  for (const auto& p : pkd_files("corpus/masks")) out.push_back(psy::load_diagram(p.string()));
  return out;
}

/// Z_n element k (1..n, n for zero) as a residue.
inline int residue(int k, int n) { return k % n; }
inline int label(long long r, int n) {
  const int m = static_cast<int>(((r % n) + n) % n);
  return m == 0 ? n : m;
}

/// Tensor of the affine map p*a + q*b + r*c + k over Z_n.
inline psy::TernaryTensor affine(int n, int p, int q, int r, int k = 0) {
  return psy::TernaryTensor::from_function(n, [&](int a, int b, int c) {
    return label(static_cast<long long>(p) * a + static_cast<long long>(q) * b +
                     static_cast<long long>(r) * c + k,
                 n);
  });
}

/// Counts assignments of all regions by brute force.
inline std::uint64_t brute_force_count(const psy::Diagram& d, const psy::PsyBracket& x) {
  const auto regions = psy::faces(d);
  const auto table = psy::corner_regions(d, regions);
  const int f = static_cast<int>(regions.size());
  const int n = x.size();
  std::vector<int> val(f, 1);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (int c = 0; c < d.crossing_count() && ok; ++c) {
      const auto& r = table[c];
      ok = psy::crossing_constraint(d.crossings[c].kind, x, val[r[psy::kL]], val[r[psy::kB]],
                                    val[r[psy::kR]], val[r[psy::kT]]);
    }
    count += ok;
    int i = f;
    while (i > 0 && val[i - 1] == n) val[--i] = 1;
    if (i == 0) break;
    ++val[i - 1];
  }
  return count;
}

/// Number of solutions in (Z_n)^cols of the homogeneous system A x = 0 over Z_n,
/// via Smith normal form over the integers.
inline std::uint64_t count_linear_solutions(std::vector<std::vector<long long>> a, int cols, int n) {
  // diagonalize over Z_n; unimodular integer steps stay invertible mod n
  const int rows = static_cast<int>(a.size());
  const long long mod = n;
  auto reduce = [mod](long long v) { return ((v % mod) + mod) % mod; };
  for (auto& row : a)
    for (auto& v : row) v = reduce(v);
  int rank = 0;
  std::uint64_t count = 1;
  auto col_op = [&](int j, int k, long long x, long long y, long long u, long long v) {
    // (col j, col k) <- (x*col j + y*col k, u*col j + v*col k)
    for (int i = 0; i < rows; ++i) {
      const long long p = a[i][j], q = a[i][k];
      a[i][j] = reduce(x * p + y * q);
      a[i][k] = reduce(u * p + v * q);
    }
  };
  auto row_op = [&](int i, int k, long long x, long long y, long long u, long long v) {
    for (int j = 0; j < cols; ++j) {
      const long long p = a[i][j], q = a[k][j];
      a[i][j] = reduce(x * p + y * q);
      a[k][j] = reduce(u * p + v * q);
    }
  };
  auto ext_gcd = [](long long p, long long q, long long& s, long long& t) {
    if (q % p == 0) {
      s = 1;
      t = 0;
      return p;
    }
    long long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (q != 0) {
      const long long m = p / q;
      std::tie(p, q) = std::pair{q, p - m * q};
      std::tie(s0, s1) = std::pair{s1, s0 - m * s1};
      std::tie(t0, t1) = std::pair{t1, t0 - m * t1};
    }
    s = s0;
    t = t0;
    return p;
  };
  for (int t = 0; t < std::min(rows, cols); ++t) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows && pi < 0; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (auto& row : a) std::swap(row[t], row[pj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        long long s, u;
        const long long g = ext_gcd(a[t][t], a[i][t], s, u);
        const long long x = a[t][t] / g, y = a[i][t] / g;
        row_op(t, i, s, u, -y, x);
        clean = false;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        long long s, u;
        const long long g = ext_gcd(a[t][t], a[t][j], s, u);
        const long long x = a[t][t] / g, y = a[t][j] / g;
        col_op(t, j, s, u, -y, x);
        clean = false;
      }
    }
    ++rank;
    count *= static_cast<std::uint64_t>(std::gcd(a[t][t], mod));
  }
  for (int j = rank; j < cols; ++j) count *= static_cast<std::uint64_t>(n);
  return count;
}

/// Linear oracle for a psybracket whose operations are p*a+q*b+r*c over Z_n.
struct LinearForm {
  int p, q, r;
};

inline std::uint64_t linear_oracle(const psy::Diagram& d, int n, LinearForm classical, LinearForm pre) {
  const auto regions = psy::faces(d);
  const auto table = psy::corner_regions(d, regions);
  const int f = static_cast<int>(regions.size());
  std::vector<std::vector<long long>> a;
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& r = table[c];
    std::vector<long long> row(f, 0);
    // out - (p*L + q*mid + r*R) = 0
    int out = r[psy::kT], mid = r[psy::kB];
    LinearForm form = classical;
    if (d.crossings[c].kind == psy::CrossingKind::Negative) std::swap(out, mid);
    if (d.crossings[c].kind == psy::CrossingKind::Pre) form = pre;
    row[out] += 1;
    row[r[psy::kL]] -= form.p;
    row[mid] -= form.q;
    row[r[psy::kR]] -= form.r;
    a.push_back(row);
  }
  return count_linear_solutions(a, f, n);
}

}  // namespace testing_support
