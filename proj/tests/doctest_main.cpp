#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corrset/numbers.hpp"

namespace {

struct PrecisionInit {
  PrecisionInit() { corrset::set_real_precision(corrset::kDefaultRealDigits); }
};
PrecisionInit precision_init;

}  // namespace
