// Deterministic CSV emission: '.' decimal, %.12g, NaN spelled "nan".
#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "phonoline/types.hpp"

namespace phonoline {

std::string csv_field(double v);

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void close();
    ~CsvWriter();

  private:
    std::ofstream out_;
    std::string path_;
    std::size_t width_;
    bool closed_ = false;
};

}  // namespace phonoline
