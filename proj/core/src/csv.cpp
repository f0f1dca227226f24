#include "phonoline/csv.hpp"

#include <cmath>
#include <cstdio>

namespace phonoline {

std::string csv_field(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), path_(path), width_(header.size()) {
    if (!out_) throw IoError("csv: cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != width_)
        throw std::logic_error("csv: row width " + std::to_string(values.size()) +
                               " does not match header width " + std::to_string(width_));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_field(values[i]);
    }
    out_ << '\n';
    if (!out_) throw IoError("csv: write failure on '" + path_ + "'");
}

void CsvWriter::close() {
    if (closed_) return;
    out_.flush();
    if (!out_) throw IoError("csv: flush failure on '" + path_ + "'");
    out_.close();
    closed_ = true;
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // Destructor swallows I/O failures; call close() to observe them.
    }
}

}  // namespace phonoline
