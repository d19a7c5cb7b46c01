#pragma once

#include <stdexcept>
#include <string>

namespace edss {

/// Malformed or out-of-range input: bad files, invalid configs, values that
/// violate a load-time invariant.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// An object refers to something that does not exist (dangling task or
/// window reference, a non-permutation genotype). Distinct from a
/// constraint violation, which is reported rather than thrown.
class StructuralError : public std::logic_error {
public:
    explicit StructuralError(const std::string& what) : std::logic_error(what) {}
};

} // namespace edss
