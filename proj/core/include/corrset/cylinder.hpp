#ifndef CORRSET_CYLINDER_HPP
#define CORRSET_CYLINDER_HPP

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace corrset {

// The event [w_{n_1} = i_1, ..., w_{n_r} = i_r]: finitely many pinned
// coordinates, strictly increasing positions. Empty list = full space.
class Cylinder {
 public:
  struct Constraint {
    std::uint64_t pos;
    bool symbol;
    bool operator==(const Constraint&) const = default;
  };

  Cylinder() = default;
  explicit Cylinder(std::vector<Constraint> constraints);
  Cylinder(std::initializer_list<Constraint> constraints)
      : Cylinder(std::vector<Constraint>(constraints)) {}

  // All coordinates pinned to 1 at the given positions (sorted, deduplicated).
  static Cylinder all_ones(std::vector<std::uint64_t> positions);

  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool is_full_space() const { return constraints_.empty(); }

  // 1 + max pinned position; 0 for the full space.
  std::uint64_t order() const {
    return constraints_.empty() ? 0 : constraints_.back().pos + 1;
  }

  Cylinder shifted(std::uint64_t delta) const;
  // This cylinder with position m additionally pinned to the given symbol;
  // m must not already be pinned.
  Cylinder refined(std::uint64_t m, bool symbol) const;

  // Matching-block masks for order <= k (blocks in lexicographic id
  // convention): block B matches iff (B & mask) == value.
  std::uint64_t block_mask(int k) const;
  std::uint64_t block_value(int k) const;

  std::string to_string() const;
  bool operator==(const Cylinder&) const = default;

 private:
  std::vector<Constraint> constraints_;
};

// All cylinders with positions inside {0,...,k-1}; 3^k of them, full space
// included. Intended for tests and small-order sweeps.
std::vector<Cylinder> all_cylinders(int k);
// The 2^k fully specified cylinders of order k, indexed by block id.
std::vector<Cylinder> fully_specified_cylinders(int k);
// The fully specified cylinder matching block id b at order k.
Cylinder block_cylinder(int k, std::uint64_t block_id);

}  // namespace corrset

#endif
