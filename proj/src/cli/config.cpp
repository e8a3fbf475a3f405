#include <fstream>
#include <sstream>

#include "exle/cli.hpp"
#include "exle/errors.hpp"
#include "internal.hpp"

namespace exle::cli::detail {

nlohmann::json load_config(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& ex) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + ex.what());
    }
    if (!doc.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (value.is_object() || value.is_array() || value.is_null()) {
            throw ConfigError("config key '" + key + "' must be a number, string or boolean");
        }
    }
    return doc;
}

}  // namespace exle::cli::detail
