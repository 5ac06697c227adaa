#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlab/monomial.hpp"

namespace qlab {

struct UnknownIdentity : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// First coefficient where the two sides disagree. For two-variable cases the
/// ζ-exponent of the first differing ζ-coefficient is included.
struct Mismatch {
  long q_exponent = 0;
  std::optional<int> zeta_exponent;
  std::string lhs;
  std::string rhs;
};

struct Comparison {
  long checked_order = 0;
  std::optional<Mismatch> mismatch;
};

enum class Status { Pass, Fail };

struct VerificationReport {
  std::string id;
  long order = 0;
  bool bivariate = false;
  Status status = Status::Fail;
  std::optional<Mismatch> mismatch;
  std::string error;  // set when evaluation threw or was under-certified

  bool passed() const { return status == Status::Pass; }
};

struct IdentityCase {
  std::string id;
  std::string description;
  bool bivariate = false;
  long default_order = 100;
  /// Compares both sides through q^order (order is the requested target).
  std::function<Comparison(long order)> compare;
};

/// Free parameters of a lemma, each a monomial ±ζ^a q^b (ζ kept symbolic
/// makes the case two-variable), plus the base q^k the lemma is applied in.
struct LemmaParams {
  std::map<std::string, Monomial> values;
  long base = 1;
};

/// Lemma families accepted by register_parametrized.
const std::vector<std::string>& lemma_families();

/// One case per parameter set. Every case is evaluated at a small order
/// first, so ill-posed substitutions raise ValuationViolation (or
/// DivergentProduct) here rather than during verification.
std::vector<IdentityCase> register_parametrized(const std::string& lemma_id,
                                                const std::vector<LemmaParams>& substitutions);

class IdentityRegistry {
 public:
  void add(IdentityCase c);
  void add(std::vector<IdentityCase> cs);
  const std::vector<IdentityCase>& cases() const { return cases_; }
  /// Resolves an id or one of its aliases; throws UnknownIdentity.
  const IdentityCase& find(const std::string& id) const;
  void alias(const std::string& name, const std::string& target) { aliases_[name] = target; }

  VerificationReport verify(const std::string& id, long order) const;
  /// Runs every case; two-variable cases run at bivariate_order, or at
  /// min(order, 60) when it is not given. Reports come back in registry order.
  std::vector<VerificationReport> verify_all(long order,
                                             std::optional<long> bivariate_order = std::nullopt,
                                             unsigned workers = 0) const;

 private:
  std::vector<IdentityCase> cases_;
  std::map<std::string, std::string> aliases_;
};

/// The full registry of identities and lemma specializations.
const IdentityRegistry& default_registry();

VerificationReport run_case(const IdentityCase& c, long order);

inline VerificationReport verify(const std::string& id, long order) {
  return default_registry().verify(id, order);
}
inline std::vector<VerificationReport> verify_all(long order,
                                                  std::optional<long> bivariate_order = {}) {
  return default_registry().verify_all(order, bivariate_order);
}

}  // namespace qlab
