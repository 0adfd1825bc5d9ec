#pragma once

#include <stdexcept>
#include <string>

namespace metaloop {

/// Malformed input: bad indices, unreadable files, out-of-range table entries.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation undefined for the given structure (e.g. division in a bare magma).
struct StructureError : std::runtime_error {
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// A checked precondition failed; the message carries the witness.
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size bound was exceeded.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metaloop
