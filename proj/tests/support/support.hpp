#pragma once

#include "jnum/model.hpp"
#include "jnum/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace jnum::testing {

inline std::string data_file(const std::string& name) { return std::string(JNUM_DATA_DIR) + "/" + name; }

inline Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(BigInt(p), BigInt(d)); }

// A surface resolution built from a blow-up sequence, kept in matrix form so
// tests can check library results against direct intersection arithmetic.
struct Surface {
  std::vector<std::string> exc;
  std::vector<std::vector<std::int64_t>> M;
  std::vector<std::int64_t> aff;  // one curvette
  std::vector<std::int64_t> e;    // exceptional multiplicities
  std::vector<std::int64_t> k;

  ResolutionData data() const {
    Divisor de, dk;
    de.set("C", 1);
    for (std::size_t i = 0; i < exc.size(); ++i) {
      de.set(exc[i], e[i]);
      dk.set(exc[i], k[i]);
    }
    return from_intersection_matrix(exc, M, {{"C", aff}}, de, dk);
  }

  // D . E_i for a divisor given on exceptional labels plus the curvette.
  std::int64_t dot(const Divisor& D, std::size_t i) const {
    std::int64_t s = D["C"] * aff[i];
    for (std::size_t j = 0; j < exc.size(); ++j) s += D[exc[j]] * M[j][i];
    return s;
  }

  // Classical antinef closure: raise any E_i with D . E_i > 0 until none is left.
  Divisor antinef_closure(Divisor D) const {
    for (;;) {
      bool changed = false;
      for (std::size_t i = 0; i < exc.size(); ++i) {
        if (dot(D, i) > 0) {
          D.add(exc[i], 1);
          changed = true;
        }
      }
      if (!changed) return D;
    }
  }
};

// Solves M x = b exactly (M square, nonsingular).
inline std::vector<Rational> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t n = A.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A[p][c].sign() == 0) ++p;
    if (p == n) throw std::runtime_error("singular matrix");
    std::swap(A[p], A[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c].sign() == 0) continue;
      Rational f = A[r][c] / A[c][c];
      for (std::size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

// Random sequence of point blow-ups: each new curve is centred either at a
// free point of an existing curve or at the intersection of two. A curvette
// through the last curve makes F = pi^*C with F . E_i = 0.
inline Surface random_surface(std::mt19937_64& rng, std::size_t max_curves = 6,
                              std::int64_t entry_bound = 10) {
  for (;;) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_curves)(rng);
    Surface s;
    s.exc = {"E1"};
    s.M = {{-1}};
    s.k = {1};
    bool ok = true;
    for (std::size_t step = 1; step < n && ok; ++step) {
      std::vector<std::pair<std::size_t, std::size_t>> meets;
      for (std::size_t i = 0; i < step; ++i) {
        for (std::size_t j = i + 1; j < step; ++j) {
          if (s.M[i][j] > 0) meets.emplace_back(i, j);
        }
      }
      std::size_t m = step;
      for (auto& row : s.M) row.push_back(0);
      s.M.push_back(std::vector<std::int64_t>(m + 1, 0));
      s.M[m][m] = -1;
      s.exc.push_back("E" + std::to_string(m + 1));
      bool satellite = !meets.empty() && std::bernoulli_distribution(0.4)(rng);
      if (satellite) {
        auto [i, j] = meets[std::uniform_int_distribution<std::size_t>(0, meets.size() - 1)(rng)];
        s.M[i][j] = s.M[j][i] = 0;
        for (std::size_t x : {i, j}) {
          s.M[x][x] -= 1;
          s.M[x][m] = s.M[m][x] = 1;
        }
        s.k.push_back(s.k[i] + s.k[j] + 1);
      } else {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, step - 1)(rng);
        s.M[i][i] -= 1;
        s.M[i][m] = s.M[m][i] = 1;
        s.k.push_back(s.k[i] + 1);
      }
      for (std::size_t x = 0; x <= m; ++x) ok &= s.M[x][x] >= -entry_bound;
    }
    if (!ok) continue;
    const std::size_t N = s.exc.size();
    s.aff.assign(N, 0);
    s.aff[N - 1] = 1;
    std::vector<std::vector<Rational>> A(N, std::vector<Rational>(N));
    std::vector<Rational> b(N);
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) A[i][j] = Rational(s.M[i][j]);
      b[i] = Rational(-s.aff[i]);
    }
    auto x = solve(A, b);
    s.e.clear();
    for (const auto& v : x) {
      if (!v.is_integer() || v.sign() < 0) {
        ok = false;
        break;
      }
      s.e.push_back(to_int64(v.num()));
    }
    if (!ok) continue;
    return s;
  }
}

// Random divisor on the exceptional primes with coefficients in [lo, hi].
inline Divisor random_divisor(std::mt19937_64& rng, const ResolutionData& r, std::int64_t lo,
                              std::int64_t hi) {
  Divisor d;
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  for (const auto& label : r.exceptional_labels()) d.set(label, dist(rng));
  return d;
}

// Change points of the antinef closure of floor(cF) - K over all candidates,
// computed with matrix arithmetic only.
inline std::vector<Rational> surface_jumps(const Surface& s, const Rational& bound) {
  std::vector<std::pair<std::int64_t, std::int64_t>> ek = {{1, 0}};
  for (std::size_t i = 0; i < s.exc.size(); ++i) ek.emplace_back(s.e[i], s.k[i]);
  std::vector<Rational> cands;
  for (auto [e, k] : ek) {
    if (e < 1) continue;
    for (std::int64_t n = 1; Rational(BigInt(k + n), BigInt(e)) <= bound; ++n)
      cands.push_back(Rational(BigInt(k + n), BigInt(e)));
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  auto at = [&](const Rational& c) {
    Divisor d;
    d.set("C", to_int64((c * Rational(1)).floor()));
    for (std::size_t i = 0; i < s.exc.size(); ++i)
      d.set(s.exc[i], to_int64((c * Rational(s.e[i])).floor()) - s.k[i]);
    return s.antinef_closure(d);
  };
  std::vector<Rational> out;
  Divisor prev = at(Rational(0));
  for (const auto& c : cands) {
    Divisor d = at(c);
    if (!(d == prev)) out.push_back(c);
    prev = d;
  }
  return out;
}

}  // namespace jnum::testing
