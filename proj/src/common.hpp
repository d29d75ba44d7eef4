#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace dbm {

enum class errc {
  invalid_parameter,
  io,
  degenerate_cover,
  nonregular_cover,
  internal,
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

// Runs fn(i) for i in [0, n). Worker count comes from the DBMAPPER_WORKERS
// environment variable (defaults to hardware concurrency). fn must only write
// to per-index state; iteration order is unspecified.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dbm
