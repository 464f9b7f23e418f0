#pragma once

#include <stdexcept>
#include <string>

namespace stk {

// Error categories map onto CLI exit codes: parse=2, validation=3, bound=4.
enum class ErrorKind { parse, validation, bound };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline Error parse_error(const std::string& msg) { return Error(ErrorKind::parse, msg); }
inline Error validation_error(const std::string& msg) { return Error(ErrorKind::validation, msg); }
inline Error bound_error(const std::string& msg) { return Error(ErrorKind::bound, msg); }

}  // namespace stk
