#pragma once

#include "pa/formula.hpp"

#include <ostream>

namespace pa {

// Readable gtest failure messages.
inline void PrintTo(const Formula& f, std::ostream* os) { *os << to_string(f); }
inline void PrintTo(const LinearTerm& t, std::ostream* os) { *os << t.str(); }

}  // namespace pa
