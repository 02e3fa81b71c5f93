#include "ppide/csv.hpp"

#include "ppide/errors.hpp"

#include <cstdio>
#include <fstream>

namespace ppide {

void CsvWriter::comment(const std::string& text) {
    if (text.find('\n') != std::string::npos) {
        throw config_error("csv comment must be a single line");
    }
    text_ += "# ";
    text_ += text;
    text_ += '\n';
}

void CsvWriter::header(const std::vector<std::string>& cols) { line(cols); }

void CsvWriter::row(const std::vector<std::string>& cells) { line(cells); }

void CsvWriter::line(const std::vector<std::string>& cells) {
    if (cells.empty()) {
        throw config_error("csv line must have at least one cell");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string& c = cells[i];
        if (c.find_first_of(",\"\n\r") != std::string::npos) {
            throw config_error("csv cell must not contain separators or quotes: '" + c + "'");
        }
        if (i != 0) {
            text_ += ',';
        }
        text_ += c;
    }
    text_ += '\n';
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string CsvWriter::integer(long long v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%lld", v);
    return buf;
}

void CsvWriter::write_file(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw config_error("cannot open output file: " + path.string());
    }
    out.write(text_.data(), static_cast<std::streamsize>(text_.size()));
    if (!out) {
        throw numeric_error("short write to " + path.string());
    }
}

} // namespace ppide
