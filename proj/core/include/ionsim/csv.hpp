#pragma once

#include <complex>
#include <fstream>
#include <string>
#include <vector>

namespace ionsim {

// Shortest round-trip decimal form (std::to_chars), so identical runs emit
// byte-identical files.
std::string format_double(double x);

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(const std::vector<std::string>& columns);

    CsvWriter& field(double x);
    CsvWriter& field(long x);
    CsvWriter& field(int x);
    CsvWriter& field(const std::string& s);
    CsvWriter& field(std::complex<double> z); // two fields: re, im
    void end_row();

    const std::string& path() const { return path_; }

private:
    void sep();
    std::ofstream out_;
    std::string path_;
    bool row_open_ = false;
};

} // namespace ionsim
