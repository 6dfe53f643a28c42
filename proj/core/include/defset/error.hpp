#pragma once

#include <stdexcept>
#include <string>

namespace defset {

enum class Errc {
    parse,
    dimension_mismatch,
    total_mismatch,
    out_of_range,
    side_mismatch,
    inconsistent_partial,
    invalid_permutation,
    cap_exceeded,
    not_defining,
    empty_class,
    domain,
    too_large,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the Errc kinds so that
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace defset
