#include "ionsim/csv.hpp"

#include <charconv>
#include <system_error>

#include "ionsim/errors.hpp"

namespace ionsim {

std::string format_double(double x) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw numerical_error("format_double failed");
    return std::string(buf, p);
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
    if (!out_) throw config_error("cannot open output file: " + path);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::sep() {
    if (row_open_) out_ << ',';
    row_open_ = true;
}

CsvWriter& CsvWriter::field(double x) {
    sep();
    out_ << format_double(x);
    return *this;
}

CsvWriter& CsvWriter::field(long x) {
    sep();
    out_ << x;
    return *this;
}

CsvWriter& CsvWriter::field(int x) {
    sep();
    out_ << x;
    return *this;
}

CsvWriter& CsvWriter::field(const std::string& s) {
    sep();
    out_ << s;
    return *this;
}

CsvWriter& CsvWriter::field(std::complex<double> z) {
    field(z.real());
    field(z.imag());
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_open_ = false;
}

} // namespace ionsim
