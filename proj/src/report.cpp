#include "irdecoh/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace irdecoh {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) {
    n_columns_ = columns.size();
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != n_columns_)
        throw std::runtime_error("csv row width mismatch in " + path_);
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "");
    out_ << "\n";
}

}  // namespace irdecoh
