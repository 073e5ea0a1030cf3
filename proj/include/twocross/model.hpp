#pragma once

#include <map>
#include <string>

#include "twocross/field.hpp"

namespace twocross {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelFile {
    PiecewiseField field;
    std::map<std::string, double> params;
};

/// Line-oriented model format:
///   # comment
///   param <name> = <number>
///   field ++ : <expr> , <expr> , <expr>
/// All four quadrant labels {++, +-, -+, --} must appear exactly once.
/// Parameters may be used in the field expressions declared on later lines.
ModelFile parse_model_text(const std::string& text, const std::string& origin = "<string>");

ModelFile parse_model(const std::string& path);

}  // namespace twocross
