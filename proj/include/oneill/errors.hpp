#pragma once

#include <stdexcept>
#include <string>

namespace oneill {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user input: unknown variable, malformed scenario, incompatible charts.
struct input_error : error {
    using error::error;
};

struct chart_mismatch : input_error {
    using input_error::input_error;
};

/// Evaluation hit a pole (denominator vanished at the point).
struct eval_error : error {
    explicit eval_error(const std::string& what, std::string point = {})
        : error(what), point_repr(std::move(point)) {}
    std::string point_repr;
};

/// Linear-algebra input had lower rank than required.
struct rank_error : error {
    rank_error(const std::string& what, int detected)
        : error(what + " (detected rank " + std::to_string(detected) + ")"),
          detected_rank(detected) {}
    int detected_rank;
};

/// Expression or scenario syntax error with 1-based position.
struct parse_error : input_error {
    parse_error(const std::string& what, int line_, int col_)
        : input_error(what + " at line " + std::to_string(line_) + ", column " +
                      std::to_string(col_)),
          line(line_), col(col_) {}
    int line;
    int col;
};

}  // namespace oneill
