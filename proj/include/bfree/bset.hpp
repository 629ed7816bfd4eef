#pragma once

#include "bfree/arith.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bfree {

enum class Tri { yes, no, unknown };

// Set of gcd values {gcd(b, modulus) : b in B}. When `exact` the set is the
// full profile over all of B (structural oracle), not a truncation; otherwise
// it was computed over B up to `horizon`.
struct GcdProfile {
  Nat modulus;
  FiniteSet gcds;
  bool exact = false;
  uint64_t horizon = 0;
};

struct FamilyDescriptor {
  std::string id;
  std::string params;
  std::string description;
};

std::vector<FamilyDescriptor> family_catalog();

struct FamilyParams {
  uint64_t count = 0;          // family-specific size parameter; 0 = default
  std::vector<uint64_t> list;  // explicit elements / odd parts, where accepted
};

// Model of the set B: an explicit finite list or a generated family from the
// catalog. Values are immutable; enumeration is memoized behind a lock so
// concurrent readers see consistent prefixes.
class BSet {
 public:
  static BSet explicit_set(FiniteSet elems);
  static BSet make(const std::string& family_id, const FamilyParams& params = {});

  const std::string& family_id() const { return id_; }
  std::string describe() const;
  Tri primitive_flag() const;
  bool is_finite() const;

  // Exactly B ∩ [1,x], strictly increasing.
  FiniteSet elements_up_to(const Nat& x) const;
  std::vector<uint64_t> elements_up_to_u64(uint64_t x) const;

  // Membership probe; structural for most catalog families, otherwise by
  // enumeration up to a budget cap.
  bool contains(const Nat& x) const;

  // Structural oracle when the family has one, else truncated at the default
  // horizon with exact=false.
  GcdProfile gcd_profile(const Nat& m) const;
  GcdProfile gcd_profile_truncated(const Nat& m, uint64_t horizon) const;

  // Stage structure the family was defined with (e.g. level sets); used as
  // the default filtration for generated families.
  bool has_native_stages() const;
  FiniteSet native_stage(size_t k) const;  // 1-based

  // Structural evidence that B contains a scaled Behrend subset.
  bool declares_scaled_behrend() const;

  uint64_t default_horizon() const { return 10000000ull; }

  struct Impl;

 private:
  explicit BSet(std::shared_ptr<const Impl> impl);
  std::string id_;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace bfree
