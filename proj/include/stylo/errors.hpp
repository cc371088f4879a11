#pragma once

#include <stdexcept>

namespace stylo {

// Unreadable or unparseable input (missing file, malformed stream).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A contract or configuration violation detected before a stage runs.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested record does not exist.
struct NotFoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A stored record is present but damaged.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace stylo
