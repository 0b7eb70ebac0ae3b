#pragma once

// Umbrella header for the mild library: combinatorics on words and word
// orders, truncated Magnus expansions over F_p, exact linear algebra with
// operation logs, presentation handling, and the mildness criteria with
// their Hilbert-series cross-check.

#include "mild/alphabet.hpp"
#include "mild/fp.hpp"
#include "mild/linalg.hpp"
#include "mild/mildness.hpp"
#include "mild/order.hpp"
#include "mild/presentation.hpp"
#include "mild/series.hpp"
#include "mild/words.hpp"
