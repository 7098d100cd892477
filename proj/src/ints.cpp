#include "solcrys/ints.hpp"

#include <ostream>
#include <sstream>

namespace solcrys {

std::string to_string(const Vec2& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string to_string(const Mat2& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
  return os << "(" << v.x << "," << v.y << ")";
}

std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

}  // namespace solcrys
