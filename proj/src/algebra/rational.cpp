#include "n32/rational.hpp"

#include <stdexcept>

namespace n32 {

Rational parse_rational(const std::string& text)
{
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

} // namespace n32
