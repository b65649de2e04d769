#include "lptorsion/error.hpp"

namespace lpt {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse: return "parse";
    case Errc::domain: return "domain";
    case Errc::degree_out_of_range: return "degree_out_of_range";
    case Errc::field_mismatch: return "field_mismatch";
    case Errc::mode_mismatch: return "mode_mismatch";
    case Errc::division_by_zero: return "division_by_zero";
    case Errc::nonabelian: return "nonabelian";
    case Errc::not_determined: return "not_determined";
    case Errc::numerical_blowup: return "numerical_blowup";
    case Errc::quadrature: return "quadrature";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

}  // namespace lpt
