#pragma once

#include <stdexcept>
#include <string>

namespace mbook {

enum class ErrorCode {
  invalid_order,      // generator argument out of range (e.g. cycle with n < 3)
  malformed_input,    // structurally broken graph/layout/coloring
  precondition,       // operation called outside its domain
  not_extensible,     // extension requested on a non-extensible embedding
  not_a_seed,         // requested seed block fails (a) or (b)
  bad_replication,    // replication count r odd or non-positive
  construction_failed,  // every alternation phase produced an invalid embedding
  too_large,          // brute force refused
  parse,              // JSON / DIMACS parse failure
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mbook
