#ifndef RESIDUAL_ERROR_HPP
#define RESIDUAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace residual {

// Domain errors carry the name of the module that raised them, so messages
// read "exact-algebra: ..." or "prony-reconstruct: ...".
class Error : public std::runtime_error {
public:
  Error(std::string module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

private:
  std::string module_;
};

// Malformed input documents (JSON schema violations).
class SchemaError : public std::runtime_error {
public:
  SchemaError(std::string field, const std::string& what)
      : std::runtime_error("schema: field \"" + field + "\": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

namespace detail {

[[noreturn]] inline void fail(const char* module, const std::string& what) {
  throw Error(module, what);
}

} // namespace detail
} // namespace residual

#endif
