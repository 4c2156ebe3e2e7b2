#ifndef CORRSET_FOLNER_HPP
#define CORRSET_FOLNER_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace corrset {

// A sequence of finite subsets F_N of the naturals, N >= 1, used to evaluate
// densities. The Folner property itself is never enforced, only measured
// (folner_defect).
class FolnerSequence {
 public:
  enum class Kind { initial_intervals, shifted_intervals, custom };

  // F_N = {0, ..., N-1}
  static FolnerSequence initial_intervals();
  // F_N = {offset(N), ..., offset(N) + length(N) - 1}, length(N) >= 1
  static FolnerSequence shifted_intervals(std::function<std::uint64_t(int)> offset,
                                          std::function<std::uint64_t(int)> length);
  // arbitrary generator; sets are sorted and deduplicated
  static FolnerSequence custom(std::function<std::vector<std::uint64_t>(int)> generator);

  Kind kind() const { return kind_; }
  bool is_interval() const { return kind_ != Kind::custom; }

  // [first, past-the-end) when is_interval()
  std::pair<std::uint64_t, std::uint64_t> interval(int N) const;
  std::vector<std::uint64_t> set(int N) const;
  std::uint64_t size(int N) const;

 private:
  FolnerSequence() = default;
  Kind kind_ = Kind::initial_intervals;
  std::function<std::uint64_t(int)> offset_, length_;
  std::function<std::vector<std::uint64_t>(int)> generator_;
};

}  // namespace corrset

#endif
