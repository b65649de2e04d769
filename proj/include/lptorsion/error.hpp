#pragma once

#include <stdexcept>
#include <string>

namespace lpt {

enum class Errc {
  parse = 1,
  domain,
  degree_out_of_range,
  field_mismatch,
  mode_mismatch,
  division_by_zero,
  nonabelian,
  not_determined,
  numerical_blowup,
  quadrature,
  internal,
};

const char* errc_name(Errc code);

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto lpt_status values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class BlowUpError : public Error {
 public:
  BlowUpError(double time, const std::string& what)
      : Error(Errc::numerical_blowup, what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace lpt
