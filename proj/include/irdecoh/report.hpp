#pragma once

#include <fstream>
#include <string>
#include <vector>

// CSV emission: one '#'-prefixed comment block (config hash, column units),
// one header row, then numeric rows printed with %.17g so that identical
// inputs yield byte-identical files.

namespace irdecoh {

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& text);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);

  private:
    std::ofstream out_;
    std::size_t n_columns_ = 0;
    std::string path_;
};

std::string format_double(double v);  // %.17g

}  // namespace irdecoh
