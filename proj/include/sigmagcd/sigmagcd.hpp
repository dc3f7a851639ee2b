#pragma once

#include "sigmagcd/bigint.hpp"
#include "sigmagcd/champions.hpp"
#include "sigmagcd/density.hpp"
#include "sigmagcd/errors.hpp"
#include "sigmagcd/factored_integer.hpp"
#include "sigmagcd/lemma_lab.hpp"
#include "sigmagcd/lemma_report.hpp"
#include "sigmagcd/multiplicative.hpp"
#include "sigmagcd/parallel.hpp"
#include "sigmagcd/primality.hpp"
#include "sigmagcd/report.hpp"
#include "sigmagcd/spf_table.hpp"

namespace sigmagcd {
inline constexpr const char* kVersion = "0.1.0";
}
