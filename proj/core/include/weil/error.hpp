#pragma once

#include <stdexcept>
#include <string>

namespace weil {

enum class ErrorCode {
    config_invalid,
    too_large,
    not_found_within_bound,
    invalid_characteristic,
    field_mismatch,
    zero_input,
    bad_tower,
    cocycle_violation,
    identity_failure,
    datum_invalid,
    rank_deficiency,
    not_irreducible,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(error_name(c)) + ": " + what), code_(c) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace weil
