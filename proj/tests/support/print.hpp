#pragma once

#include <ostream>

#include "motivic/kring/motivic_element.hpp"

namespace motivic::kring {

inline void PrintTo(const MotivicElement& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const LaurentRational& x, std::ostream* os) { *os << x.to_string(); }

}  // namespace motivic::kring
