#pragma once

#include <stdexcept>
#include <string>

namespace kslab {

// Error categories used across the library.  `cap` means a configured
// resource bound was hit (variable count, expansion size, matrix size);
// `domain` means a precondition on the mathematical input was violated;
// `io` covers parse/serialization problems; `infeasible` is reserved for
// generators that cannot produce an object with the requested shape.
enum class errc { cap, domain, io, infeasible };

class error : public std::runtime_error {
public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

private:
  errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace kslab
