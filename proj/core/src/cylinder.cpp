#include "corrset/cylinder.hpp"

#include <algorithm>

#include "corrset/errors.hpp"

namespace corrset {

Cylinder::Cylinder(std::vector<Constraint> constraints)
    : constraints_(std::move(constraints)) {
  for (std::size_t i = 1; i < constraints_.size(); ++i) {
    if (constraints_[i - 1].pos >= constraints_[i].pos)
      throw ValidationError("Cylinder: positions must be strictly increasing");
  }
}

Cylinder Cylinder::all_ones(std::vector<std::uint64_t> positions) {
  if (positions.empty())
    throw ValidationError("Cylinder::all_ones: at least one position required");
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  std::vector<Constraint> cs;
  cs.reserve(positions.size());
  for (auto p : positions) cs.push_back({p, true});
  return Cylinder(std::move(cs));
}

Cylinder Cylinder::shifted(std::uint64_t delta) const {
  std::vector<Constraint> cs = constraints_;
  for (auto& c : cs) c.pos += delta;
  return Cylinder(std::move(cs));
}

Cylinder Cylinder::refined(std::uint64_t m, bool symbol) const {
  std::vector<Constraint> cs = constraints_;
  auto it = std::lower_bound(cs.begin(), cs.end(), m,
                             [](const Constraint& c, std::uint64_t p) { return c.pos < p; });
  if (it != cs.end() && it->pos == m)
    throw ValidationError("Cylinder::refined: position already pinned");
  cs.insert(it, {m, symbol});
  return Cylinder(std::move(cs));
}

std::uint64_t Cylinder::block_mask(int k) const {
  std::uint64_t mask = 0;
  for (const auto& c : constraints_) {
    if (c.pos >= static_cast<std::uint64_t>(k))
      throw ValidationError("Cylinder: order exceeds block length");
    mask |= 1ull << (k - 1 - c.pos);
  }
  return mask;
}

std::uint64_t Cylinder::block_value(int k) const {
  std::uint64_t value = 0;
  for (const auto& c : constraints_) {
    if (c.pos >= static_cast<std::uint64_t>(k))
      throw ValidationError("Cylinder: order exceeds block length");
    if (c.symbol) value |= 1ull << (k - 1 - c.pos);
  }
  return value;
}

std::string Cylinder::to_string() const {
  if (constraints_.empty()) return "[]";
  std::string s = "[";
  for (std::size_t i = 0; i < constraints_.size(); ++i) {
    if (i) s += ",";
    s += "w" + std::to_string(constraints_[i].pos) + "=" +
         (constraints_[i].symbol ? "1" : "0");
  }
  return s + "]";
}

std::vector<Cylinder> all_cylinders(int k) {
  if (k < 0 || k > 18) throw ValidationError("all_cylinders: order out of range");
  std::vector<Cylinder> out;
  // ternary counter: per position free / 0 / 1
  std::vector<int> digit(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::vector<Cylinder::Constraint> cs;
    for (int i = 0; i < k; ++i) {
      if (digit[i] == 1) cs.push_back({static_cast<std::uint64_t>(i), false});
      if (digit[i] == 2) cs.push_back({static_cast<std::uint64_t>(i), true});
    }
    out.emplace_back(std::move(cs));
    int i = 0;
    while (i < k && digit[i] == 2) digit[i++] = 0;
    if (i == k) break;
    ++digit[i];
  }
  return out;
}

std::vector<Cylinder> fully_specified_cylinders(int k) {
  std::vector<Cylinder> out;
  out.reserve(std::size_t(1) << k);
  for (std::uint64_t b = 0; b < (1ull << k); ++b) out.push_back(block_cylinder(k, b));
  return out;
}

Cylinder block_cylinder(int k, std::uint64_t block_id) {
  std::vector<Cylinder::Constraint> cs;
  cs.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t)
    cs.push_back({static_cast<std::uint64_t>(t),
                  ((block_id >> (k - 1 - t)) & 1u) != 0});
  return Cylinder(std::move(cs));
}

}  // namespace corrset
