#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace exle::cli::detail {

/// Reads a config file: a JSON object whose values are scalars.  Throws
/// IoError when unreadable and ConfigError when malformed.
nlohmann::json load_config(const std::string& path);

/// Writes `text` to `path`, replacing it.  Throws IoError on failure.
void write_file(const std::string& path, const std::string& text);

/// Stderr note printed when the caller supplied p > theta.
void note_canonical_order(double p, double theta, std::ostream& err);

}  // namespace exle::cli::detail
