#include "mforge/theta.hpp"

namespace mforge {

std::string ThetaDims::str() const {
  auto s = [](size_t v) { return std::to_string(v); };
  return "(" + s(n1) + "," + s(n2) + "," + s(m1) + "," + s(m2) + "," + s(a0) + "," + s(b0) + "," + s(m) + "," + s(n) + ")";
}

}  // namespace mforge
