#ifndef CORRSET_EMPIRICAL_HPP
#define CORRSET_EMPIRICAL_HPP

#include <cstdint>
#include <vector>

#include "corrset/cylinder.hpp"
#include "corrset/folner.hpp"
#include "corrset/numbers.hpp"
#include "corrset/word.hpp"

namespace corrset {

enum class EmpiricalMode { cyclic, truncated };

// Number of start positions i in [0, n_starts) at which w satisfies C,
// reading w cyclically. Requires |w| >= 1.
std::uint64_t count_matches_cyclic(const Word& w, const Cylinder& c,
                                   std::uint64_t n_starts);
// Same with flat reads; every probed position i + pos must be < |w|,
// i.e. |w| >= n_starts - 1 + max position.
std::uint64_t count_matches_window(const Word& w, const Cylinder& c,
                                   std::uint64_t n_starts);

// Fraction of start positions satisfying C.
// cyclic: i in [0,|w|), positions read mod |w|.
// truncated: only i with i + order(C) <= |w| count; denominator stays |w|.
Rat empirical_measure(const Word& w, const Cylinder& c, EmpiricalMode mode);

// (1/N) * #{ i in [0,N) : w[i + n_j] = 1 for all shifts n_j }.
// Requires |w| >= N + max(shifts): windows overhanging the prefix are not
// guessed, the prefix must be over-provisioned.
Rat intersection_density(const Word& w, const std::vector<std::uint64_t>& shifts,
                         std::uint64_t N);

// |E cap F_N| / |F_N| for N = 1..N_max, with E given by its indicator prefix
// w. The full trajectory is returned; limsup judgment is left to the caller.
std::vector<std::pair<int, Rat>> upper_density(const Word& w, const FolnerSequence& F,
                                               int N_max);

// |F_N symdiff (F_N + t)| / |F_N|, exact.
Rat folner_defect(const FolnerSequence& F, std::uint64_t t, int N);

}  // namespace corrset

#endif
