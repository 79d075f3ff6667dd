// SPDX-License-Identifier: Apache-2.0
#include "freemoe/algebra.hpp"

namespace freemoe {

template class AlgebraElement<Complex>;
template class AlgebraElement<ComplexRational>;

FloatElement to_float(const ExactElement& f) {
  FloatElement out(f.arity());
  for (const auto& [key, c] : f.terms()) {
    out.add_term(key, c.to_complex());
  }
  return out;
}

}  // namespace freemoe
