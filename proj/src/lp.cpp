#include "jnum/lp.hpp"

#include "jnum/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace jnum::lp {

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> x) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].sign() != 0 && x[i].sign() != 0) s += a[i] * x[i];
  }
  return s;
}

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.sign() == 0; });
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin
// ---------------------------------------------------------------------------

struct Row {
  std::vector<Rational> a;  // a . x >= b
  Rational b;

  // Scale so the first nonzero coefficient has magnitude one.
  void normalize() {
    for (const auto& c : a) {
      if (c.sign() != 0) {
        Rational s = c.sign() > 0 ? c : -c;
        if (s != Rational(1)) {
          for (auto& x : a) x /= s;
          b /= s;
        }
        return;
      }
    }
  }

  friend bool operator==(const Row&, const Row&) = default;
};

bool row_less(const Row& l, const Row& r) {
  if (l.a != r.a) {
    return std::lexicographical_compare(l.a.begin(), l.a.end(), r.a.begin(), r.a.end());
  }
  return l.b < r.b;
}

struct Substitution {
  std::size_t var;
  std::vector<Rational> coeffs;  // x_var = rhs - sum coeffs_j x_j (coeffs_var == 0)
  Rational rhs;
};

struct Elimination {
  std::size_t var;
  std::vector<Row> rows;  // rows mentioning var at the time it was eliminated
};

Feasibility fourier_motzkin(std::span<const AffineConstraint> system, std::size_t n) {
  std::vector<Row> ineq;
  std::vector<Row> eq;
  for (const auto& c : system) {
    Row r{c.coeffs, c.rhs};
    (c.equality ? eq : ineq).push_back(std::move(r));
  }

  // Equalities: Gaussian substitution.
  std::vector<Substitution> subs;
  for (std::size_t i = 0; i < eq.size(); ++i) {
    Row& r = eq[i];
    auto piv = std::find_if(r.a.begin(), r.a.end(), [](const Rational& c) { return c.sign() != 0; });
    if (piv == r.a.end()) {
      if (r.b.sign() != 0) return {};
      continue;
    }
    std::size_t p = static_cast<std::size_t>(piv - r.a.begin());
    Rational ap = r.a[p];
    Substitution s{p, std::vector<Rational>(n), r.b / ap};
    for (std::size_t j = 0; j < n; ++j) {
      if (j != p) s.coeffs[j] = r.a[j] / ap;
    }
    auto apply = [&](Row& other) {
      Rational f = other.a[p];
      if (f.sign() == 0) return;
      other.a[p] = Rational();
      for (std::size_t j = 0; j < n; ++j) {
        if (s.coeffs[j].sign() != 0) other.a[j] -= f * s.coeffs[j];
      }
      other.b -= f * s.rhs;
    };
    for (std::size_t k = i + 1; k < eq.size(); ++k) apply(eq[k]);
    for (auto& row : ineq) apply(row);
    subs.push_back(std::move(s));
  }

  std::vector<bool> eliminated(n, false);
  for (const auto& s : subs) eliminated[s.var] = true;

  auto prune = [](std::vector<Row>& rows) -> bool {
    std::vector<Row> kept;
    kept.reserve(rows.size());
    for (auto& r : rows) {
      if (all_zero(r.a)) {
        if (r.b.sign() > 0) return false;
        continue;
      }
      r.normalize();
      kept.push_back(std::move(r));
    }
    std::sort(kept.begin(), kept.end(), row_less);
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    rows = std::move(kept);
    return true;
  };
  if (!prune(ineq)) return {};

  std::vector<Elimination> history;
  for (;;) {
    // Pick the variable whose elimination creates the fewest rows.
    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : ineq) {
        int s = r.a[v].sign();
        pos += s > 0;
        neg += s < 0;
      }
      if (pos + neg == 0) continue;
      std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = v;
        best_cost = cost;
      }
    }
    if (best == n) break;

    std::vector<Row> lower, upper, rest;
    for (auto& r : ineq) {
      int s = r.a[best].sign();
      if (s > 0) lower.push_back(r);
      else if (s < 0) upper.push_back(r);
      else rest.push_back(std::move(r));
    }
    for (const auto& lo : lower) {
      for (const auto& up : upper) {
        // lo: a x_v + ... >= b (a > 0); up: c x_v + ... >= d (c < 0)
        Rational wl = -up.a[best];
        Rational wu = lo.a[best];
        Row combined{std::vector<Rational>(n), wl * lo.b + wu * up.b};
        for (std::size_t j = 0; j < n; ++j) {
          if (j == best) continue;
          combined.a[j] = wl * lo.a[j] + wu * up.a[j];
        }
        rest.push_back(std::move(combined));
      }
    }
    Elimination e{best, {}};
    e.rows.reserve(lower.size() + upper.size());
    for (auto& r : lower) e.rows.push_back(std::move(r));
    for (auto& r : upper) e.rows.push_back(std::move(r));
    history.push_back(std::move(e));
    eliminated[best] = true;
    ineq = std::move(rest);
    if (!prune(ineq)) return {};
  }

  // Back substitution.
  std::vector<Rational> x(n);
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    const std::size_t v = it->var;
    std::optional<Rational> lo, hi;
    for (const auto& r : it->rows) {
      Rational rest = r.b;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != v && r.a[j].sign() != 0) rest -= r.a[j] * x[j];
      }
      Rational bound = rest / r.a[v];
      if (r.a[v].sign() > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    x[v] = lo ? *lo : (hi ? *hi : Rational());
  }
  for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
    Rational v = it->rhs;
    for (std::size_t j = 0; j < n; ++j) {
      if (it->coeffs[j].sign() != 0) v -= it->coeffs[j] * x[j];
    }
    x[it->var] = v;
  }
  return {true, std::move(x)};
}

// ---------------------------------------------------------------------------
// Phase-one simplex, Bland's rule.
// ---------------------------------------------------------------------------

Feasibility simplex(std::span<const AffineConstraint> system, std::size_t n) {
  const std::size_t m = system.size();
  std::size_t slacks = 0;
  for (const auto& c : system) slacks += !c.equality;

  // Columns: u_0..u_{n-1}, v_0..v_{n-1}, slacks, artificials.
  const std::size_t structural = 2 * n + slacks;
  const std::size_t cols = structural + m;
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);

  std::size_t slack_col = 2 * n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = system[i];
    auto& row = t[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c.coeffs[j];
      row[n + j] = -c.coeffs[j];
    }
    if (!c.equality) row[slack_col++] = Rational(-1);
    row[cols] = c.rhs;
    if (row[cols].sign() < 0) {
      for (auto& v : row) v = -v;
    }
    row[structural + i] = Rational(1);
    basis[i] = structural + i;
  }
  // Objective: minimize the sum of artificials; reduced costs in row m.
  auto& obj = t[m];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < structural; ++j) obj[j] -= t[i][j];
    obj[cols] -= t[i][cols];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for phase one

    Rational p = t[leave][enter];
    for (auto& v : t[leave]) v /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      Rational f = t[i][enter];
      if (f.sign() == 0) continue;
      for (std::size_t j = 0; j <= cols; ++j) {
        if (t[leave][j].sign() != 0) t[i][j] -= f * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  if (obj[cols].sign() != 0) return {};

  std::vector<Rational> vals(cols);
  for (std::size_t i = 0; i < m; ++i) vals[basis[i]] = t[i][cols];
  std::vector<Rational> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = vals[j] - vals[n + j];
  return {true, std::move(x)};
}

}  // namespace

bool satisfies(const Constraint& c, std::span<const Rational> x) {
  Rational v = dot(c.covector, x);
  switch (c.relation) {
    case Relation::GreaterEqual:
      return v.sign() >= 0;
    case Relation::Greater:
      return v.sign() > 0;
    case Relation::Equal:
      return v.sign() == 0;
  }
  return false;
}

bool satisfies(const AffineConstraint& c, std::span<const Rational> x) {
  Rational v = dot(c.coeffs, x);
  return c.equality ? v == c.rhs : v >= c.rhs;
}

Feasibility solve_affine(std::span<const AffineConstraint> system, std::size_t unknowns,
                         Method method) {
  for (const auto& c : system) {
    if (c.coeffs.size() != unknowns)
      throw DimensionMismatch("constraint has " + std::to_string(c.coeffs.size()) +
                              " coefficients, expected " + std::to_string(unknowns));
  }
  if (method == Method::Auto)
    method = unknowns <= kFourierMotzkinMaxUnknowns ? Method::FourierMotzkin : Method::Simplex;
  Feasibility f = method == Method::FourierMotzkin ? fourier_motzkin(system, unknowns)
                                                   : simplex(system, unknowns);
  if (f.feasible) {
    for (const auto& c : system) {
      if (!satisfies(c, f.witness)) throw std::logic_error("lp witness failed re-verification");
    }
  }
  return f;
}

Feasibility lp_feasible(std::span<const Constraint> system, std::size_t unknowns, Method method) {
  std::vector<AffineConstraint> rows;
  rows.reserve(system.size());
  for (const auto& c : system) {
    if (c.covector.size() != unknowns)
      throw DimensionMismatch("covector has " + std::to_string(c.covector.size()) +
                              " entries, expected " + std::to_string(unknowns));
    AffineConstraint a{c.covector, c.relation == Relation::Equal,
                       c.relation == Relation::Greater ? Rational(1) : Rational(0)};
    rows.push_back(std::move(a));
  }
  Feasibility f = solve_affine(rows, unknowns, method);
  if (f.feasible) {
    for (const auto& c : system) {
      if (!satisfies(c, f.witness)) throw std::logic_error("lp witness failed re-verification");
    }
  }
  return f;
}

}  // namespace jnum::lp
