#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motivic/kring/motivic_element.hpp"
#include "motivic/numeric.hpp"

namespace motivic::kring {

// One factor of a certificate part, always the class of a variety:
//   cyclotomic  : L^k - 1, the class of A^k minus the origin;
//   complement  : L^k - [Y] for a constructible Y inside A^k, recorded by a
//                 constructor that knows Y (never produced by the decomposer).
struct CertificateFactor {
  enum class Kind { cyclotomic, complement };

  Kind kind = Kind::cyclotomic;
  std::int64_t k = 1;
  std::shared_ptr<const MotivicElement> removed;

  static CertificateFactor cyclotomic(std::int64_t k) { return {Kind::cyclotomic, k, nullptr}; }
  static CertificateFactor complement(std::int64_t ambient_dim, MotivicElement removed);

  MotivicElement value() const;
  bool operator==(const CertificateFactor& other) const;
};

// multiplicity * atom(a) * prod(factors) * L^shift * prod_P sum_{m>=0} L^{-P m}
struct CertificatePart {
  std::int64_t atom = 1;
  std::vector<CertificateFactor> factors;
  std::int64_t shift = 0;
  Integer multiplicity = 1;
  std::vector<std::int64_t> periods;

  MotivicElement value() const;
  bool is_finite() const { return periods.empty(); }
};

class EffectivityCertificate {
 public:
  EffectivityCertificate() = default;
  explicit EffectivityCertificate(std::vector<CertificatePart> parts) : parts_(std::move(parts)) {}

  const std::vector<CertificatePart>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  // Closed-form sum of all parts.
  MotivicElement value() const;

  EffectivityCertificate shifted(std::int64_t k) const;
  // Turns the certified element x into x / (1 - L^{-period}).
  EffectivityCertificate with_period(std::int64_t period) const;

  friend EffectivityCertificate operator+(const EffectivityCertificate& a, const EffectivityCertificate& b);
  friend EffectivityCertificate operator*(const EffectivityCertificate& a, const EffectivityCertificate& b);

  std::string to_string() const;

 private:
  std::vector<CertificatePart> parts_;
};

enum class Truth { yes, unknown, no };
std::string to_string(Truth t);

struct EffectivityResult {
  enum class Status { certified, unknown, negative };

  Status status = Status::unknown;
  std::optional<EffectivityCertificate> certificate;
  // For a negative verdict: (p, f) with count(x, p, f) < 0.
  std::optional<std::pair<std::uint64_t, std::int64_t>> witness;
};

// Sound, incomplete. Uses an attached certificate if present; otherwise
// decomposes each atom coefficient greedily into {L^j, (L^k - 1) L^j} parts
// over its eventually periodic expansion (also after factoring out up to
// three copies of L - 1); then writes the coefficient as
// P(L) / (L^a prod (L^k - 1)) and looks for L^b P with nonnegative
// coefficients in powers of L - 1. Failing both, probes point counts at p in
// {2, 3, 5, 7}, f <= 4 for a negative value.
EffectivityResult certify_effective(const MotivicElement& x);

// L^k - removed, certified as the class of the complement of a constructible
// subset of A^k whose class is `removed`. The caller vouches for the subset.
MotivicElement complement_class(std::int64_t k, const MotivicElement& removed);

// Returns x with a certificate attached, or throws uncertified-coefficient.
MotivicElement certified(const MotivicElement& x);

// y - x effective?
Truth leq(const MotivicElement& x, const MotivicElement& y);

}  // namespace motivic::kring
