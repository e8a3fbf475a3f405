#include <cstdio>
#include <fstream>
#include <ostream>

#include "exle/cli.hpp"
#include "internal.hpp"

namespace exle::cli {

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    // The C locale is never changed by this program, so the decimal point is '.'.
    return buf;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) row += ',';
        row += fields[i];
    }
    return row;
}

namespace detail {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    os.flush();
    if (!os) throw IoError("failed writing '" + path + "'");
}

void note_canonical_order(double p, double theta, std::ostream& err) {
    if (p > theta) {
        err << "note: p > theta; L, s0 and t0 are evaluated in the canonical order (p, theta) = ("
            << format_number(theta) << ", " << format_number(p) << ")\n";
    }
}

}  // namespace detail

}  // namespace exle::cli
