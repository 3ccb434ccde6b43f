#include "holo/errors.hpp"

namespace holo {

namespace {

std::string describe_parse_error(std::size_t position, const std::vector<std::string>& expected,
                                 const std::string& detail) {
    std::string msg = "parse error at position " + std::to_string(position);
    if (!detail.empty()) msg += ": " + detail;
    if (!expected.empty()) {
        msg += detail.empty() ? ": expected " : "; expected ";
        if (expected.size() > 1) msg += "one of ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += ", ";
            msg += expected[i];
        }
    }
    return msg;
}

} // namespace

DimensionMismatch::DimensionMismatch(std::size_t expected_dim, std::size_t actual_dim, const std::string& where)
    : InvalidArgument("dimension mismatch in " + where + ": expected " + std::to_string(expected_dim) +
                      ", got " + std::to_string(actual_dim)),
      expected(expected_dim), actual(actual_dim) {}

ParseError::ParseError(std::size_t pos, std::vector<std::string> exp, const std::string& detail)
    : InvalidArgument(describe_parse_error(pos, exp, detail)), position(pos), expected(std::move(exp)) {}

} // namespace holo
