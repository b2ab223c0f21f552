// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/errors.hpp"

#include <sstream>

namespace hopfcert {

namespace {
std::string resonance_message(int l, double alpha, double beta) {
  std::ostringstream os;
  os.precision(10);
  os << "restricted Delta_" << l << " is singular at alpha = " << alpha << ", beta = " << beta;
  return os.str();
}
}  // namespace

ResonanceError::ResonanceError(int l, double alpha, double beta)
    : Error(resonance_message(l, alpha, beta)), l_(l), alpha_(alpha), beta_(beta) {}

}  // namespace hopfcert
