#pragma once

#include "jnum/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace jnum::lp {

enum class Relation { GreaterEqual, Greater, Equal };

// Homogeneous constraint `covector . x  (relation)  0`.
struct Constraint {
  std::vector<Rational> covector;
  Relation relation = Relation::GreaterEqual;
};

// Affine constraint `coeffs . x  (>= or ==)  rhs`.
struct AffineConstraint {
  std::vector<Rational> coeffs;
  bool equality = false;
  Rational rhs;
};

enum class Method { Auto, FourierMotzkin, Simplex };

struct Feasibility {
  bool feasible = false;
  std::vector<Rational> witness;  // empty when infeasible
};

// Largest system (in unknowns) that Method::Auto sends to Fourier-Motzkin.
inline constexpr std::size_t kFourierMotzkinMaxUnknowns = 8;

// Exact feasibility of a homogeneous system over `unknowns` rational
// variables. Strict rows are decided by scaling (x feasible => t*x feasible),
// i.e. `>0` is replaced by `>=1`; no epsilon is involved.
Feasibility lp_feasible(std::span<const Constraint> system, std::size_t unknowns,
                        Method method = Method::Auto);

// Exact feasibility of an affine system; the building block for the above.
Feasibility solve_affine(std::span<const AffineConstraint> system, std::size_t unknowns,
                         Method method = Method::Auto);

bool satisfies(const Constraint& c, std::span<const Rational> x);
bool satisfies(const AffineConstraint& c, std::span<const Rational> x);

}  // namespace jnum::lp
