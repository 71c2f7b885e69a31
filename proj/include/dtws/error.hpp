#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtws {

enum class Errc {
    constant_vector,
    length_mismatch,
    no_flat_shapelet,
    duplicate_flat,
    insufficient_rank,
    invalid_shapelet,
    series_too_short,
    empty_training_set,
    empty_sequence,
    infeasible_window,
    sequence_too_long,
    bad_k,
    single_cluster,
    bad_base_index,
    parse_error,
    empty_file,
    invalid_argument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every library failure surfaces as this exception; code() identifies the
/// condition so callers (and the CLI) can map it without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace dtws
