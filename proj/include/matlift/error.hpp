#pragma once

#include <stdexcept>
#include <string>

namespace matlift {

// Failure categories. These map one-to-one onto the C API status codes,
// so the order here is load-bearing: append only.
enum class errc : int {
  ok = 0,
  invalid_argument,
  asymmetric_input,
  nonzero_diagonal,
  not_centered,
  continuous_support,
  not_scalar,
  dimension_mismatch,
  too_large,
  not_symmetric,
  span_exceeds_n,
  sigma_star_too_large,
  budget_exceeded,
  eps_out_of_range,
  config_error,
  io_error,
  not_converged,
  internal,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace matlift
